//! The benchmark harness: runs the small example suite and prints CSV with oracle ratios.

use multipartite_sched::bench::{records_to_csv, run_suite, Suite};

pub fn run() -> multipartite_sched::error::Result<()> {
    let records = run_suite(Suite::PaperExamples, 1, 1)?;
    print!("{}", records_to_csv(&records));
    Ok(())
}

fn main() {
    run().unwrap();
}
