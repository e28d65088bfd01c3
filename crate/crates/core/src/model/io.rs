//! Plain-text instance and schedule files.
//!
//! Instance:
//! ```text
//! # comment
//! machines 2
//! 1 3/2
//! partitions 1
//! 2 1 1
//! ```
//! Schedule, one line per machine, 0-based indices, jobs as `partition.index`:
//! ```text
//! 0 0 0.1 0.0
//! 1 -
//! ```

use std::fmt::Write;

use num_traits::Signed;

use super::instance::{Instance, JobId};
use super::schedule::{MachineLoad, Schedule};
use crate::error::{Error, Result};
use crate::rational::{exact, parse_rational, Rational};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn header(line: Option<(usize, &str)>, keyword: &str, last_line: usize) -> Result<(usize, usize)> {
    let (no, text) = line.ok_or_else(|| parse_err(last_line, format!("expected `{keyword} <count>`")))?;
    let mut tokens = text.split_whitespace();
    if tokens.next() != Some(keyword) {
        return Err(parse_err(no, format!("expected `{keyword} <count>`")));
    }
    let count = tokens
        .next()
        .and_then(|t| t.parse::<usize>().ok())
        .ok_or_else(|| parse_err(no, format!("bad {keyword} count")))?;
    if tokens.next().is_some() {
        return Err(parse_err(no, "trailing tokens"));
    }
    Ok((no, count))
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let last_line = text.lines().count().max(1);
    let mut lines = content_lines(text).peekable();
    let (mut line_no, m) = header(lines.next(), "machines", last_line)?;

    let mut speeds: Vec<Rational> = Vec::with_capacity(m);
    while speeds.len() < m {
        let Some((no, text)) = lines.next() else {
            return Err(parse_err(last_line, format!("expected {m} speeds, found {}", speeds.len())));
        };
        line_no = no;
        for token in text.split_whitespace() {
            if speeds.len() == m {
                return Err(parse_err(no, "more speeds than machines"));
            }
            let s = parse_rational(token).ok_or_else(|| parse_err(no, format!("bad speed `{token}`")))?;
            if !s.is_positive() {
                return Err(parse_err(no, format!("speed `{token}` is not positive")));
            }
            speeds.push(s);
        }
    }

    let (hdr_no, k) = header(lines.next(), "partitions", line_no)?;
    if k == 0 {
        return Err(parse_err(hdr_no, "instance needs at least one partition"));
    }
    line_no = hdr_no;
    let mut partitions = Vec::with_capacity(k);
    for j in 0..k {
        let Some((no, text)) = lines.next() else {
            return Err(parse_err(line_no, format!("missing partition {}", j + 1)));
        };
        line_no = no;
        let mut numbers = Vec::new();
        for token in text.split_whitespace() {
            let v = token
                .parse::<u64>()
                .map_err(|_| parse_err(no, format!("bad integer `{token}` in partition {}", j + 1)))?;
            numbers.push(v);
        }
        let (&count, jobs) = numbers
            .split_first()
            .ok_or_else(|| parse_err(no, format!("partition {} is blank", j + 1)))?;
        if count == 0 {
            return Err(parse_err(no, format!("partition {} is empty", j + 1)));
        }
        if jobs.len() as u64 != count {
            return Err(parse_err(no, format!("partition {} declares {count} jobs, lists {}", j + 1, jobs.len())));
        }
        if jobs.contains(&0) {
            return Err(parse_err(no, format!("partition {} has a zero processing time", j + 1)));
        }
        partitions.push(jobs.to_vec());
    }
    if let Some((no, _)) = lines.next() {
        return Err(parse_err(no, "unexpected content after partitions"));
    }
    Instance::new(partitions, speeds)
}

pub fn serialize_instance(instance: &Instance) -> String {
    let mut out = String::new();
    writeln!(out, "machines {}", instance.m()).unwrap();
    let speeds: Vec<String> = instance.speeds().iter().map(exact).collect();
    writeln!(out, "{}", speeds.join(" ")).unwrap();
    writeln!(out, "partitions {}", instance.k()).unwrap();
    for part in instance.partitions() {
        write!(out, "{}", part.len()).unwrap();
        for p in part {
            write!(out, " {p}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn serialize_schedule(schedule: &Schedule) -> String {
    let mut out = String::new();
    for (i, load) in schedule.machines.iter().enumerate() {
        match load {
            MachineLoad::Unused => writeln!(out, "{i} -").unwrap(),
            MachineLoad::Used { partition, jobs } => {
                write!(out, "{i} {partition}").unwrap();
                for job in jobs {
                    write!(out, " {}.{}", job.partition, job.index).unwrap();
                }
                out.push('\n');
            }
        }
    }
    out
}

/// Parses a schedule file; structural checks only, use `validate_schedule` against an instance.
pub fn parse_schedule(text: &str) -> Result<Schedule> {
    let mut machines: Vec<Option<MachineLoad>> = Vec::new();
    for (no, line) in content_lines(text) {
        let mut tokens = line.split_whitespace();
        let index: usize = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(no, "bad machine index"))?;
        let part_token = tokens.next().ok_or_else(|| parse_err(no, "missing partition field"))?;
        let load = if part_token == "-" {
            if tokens.next().is_some() {
                return Err(parse_err(no, "unused machine lists jobs"));
            }
            MachineLoad::Unused
        } else {
            let partition: usize = part_token.parse().map_err(|_| parse_err(no, "bad partition index"))?;
            let mut jobs = Vec::new();
            for token in tokens {
                let (p, i) = token.split_once('.').ok_or_else(|| parse_err(no, format!("bad job `{token}`")))?;
                let p = p.parse().map_err(|_| parse_err(no, format!("bad job `{token}`")))?;
                let i = i.parse().map_err(|_| parse_err(no, format!("bad job `{token}`")))?;
                jobs.push(JobId::new(p, i));
            }
            MachineLoad::Used { partition, jobs }
        };
        if index >= machines.len() {
            machines.resize(index + 1, None);
        }
        if machines[index].is_some() {
            return Err(parse_err(no, format!("machine {index} listed twice")));
        }
        machines[index] = Some(load);
    }
    let machines = machines
        .into_iter()
        .enumerate()
        .map(|(i, m)| m.ok_or_else(|| parse_err(0, format!("machine {i} missing"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Schedule { machines })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn parses_reference_example() {
        let inst = parse_instance("machines 2\n1 3/2\npartitions 1\n2 1 1\n").unwrap();
        assert_eq!(inst.k(), 1);
        assert_eq!(inst.speeds(), &[int(1), ratio(3, 2)]);
        assert_eq!(inst.partitions(), &[vec![1, 1]]);
        assert!(inst.unit_jobs());
    }

    #[test]
    fn speeds_may_wrap_and_comments_are_skipped() {
        let text = "# header\nmachines 3\n1\n# mid\n2 3\npartitions 2\n1 4\n2 1 2\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.m(), 3);
        assert_eq!(inst.partitions(), &[vec![4], vec![1, 2]]);
    }

    #[test]
    fn rejects_zero_speed_with_line_number() {
        let err = parse_instance("machines 1\n0\npartitions 1\n1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn reports_partitions_one_based() {
        let err = parse_instance("machines 1\n1\npartitions 2\n1 1\n0\n").unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 5);
                assert!(message.contains("partition 2"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_count_mismatch_and_zero_jobs() {
        assert!(parse_instance("machines 1\n1\npartitions 1\n2 1\n").is_err());
        assert!(parse_instance("machines 1\n1\npartitions 1\n1 0\n").is_err());
        assert!(parse_instance("machines 2\n1\npartitions 1\n1 1\n").is_err());
    }

    #[test]
    fn schedule_round_trip() {
        let s = Schedule {
            machines: vec![
                MachineLoad::Used { partition: 1, jobs: vec![JobId::new(1, 2), JobId::new(1, 0)] },
                MachineLoad::Unused,
            ],
        };
        let text = serialize_schedule(&s);
        assert_eq!(text, "0 1 1.2 1.0\n1 -\n");
        assert_eq!(parse_schedule(&text).unwrap(), s);
    }
}
