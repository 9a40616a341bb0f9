//! Trajectory CSV: header `t,a1,a2,a3`, one row per accepted step, every
//! value with 17 significant digits so rows parse back to the same doubles.

use std::io::{self, BufRead, Write};

use super::Sample;
use crate::error::{Error, Result};

pub const TRAJECTORY_CSV_HEADER: &str = "t,a1,a2,a3";

pub fn write_trajectory_csv<W: Write>(samples: &[Sample], mut out: W) -> io::Result<()> {
    writeln!(out, "{TRAJECTORY_CSV_HEADER}")?;
    for s in samples {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e}",
            s.t, s.state[0], s.state[1], s.state[2]
        )?;
    }
    Ok(())
}

pub fn read_trajectory_csv<R: BufRead>(input: R) -> Result<Vec<Sample>> {
    let mut lines = input.lines().enumerate();
    match lines.next() {
        Some((_, Ok(h))) if h.trim() == TRAJECTORY_CSV_HEADER => {}
        Some((_, Ok(h))) => {
            return Err(Error::Csv {
                line: 1,
                reason: format!("expected header `{TRAJECTORY_CSV_HEADER}`, got `{h}`"),
            })
        }
        Some((_, Err(e))) => {
            return Err(Error::Csv {
                line: 1,
                reason: e.to_string(),
            })
        }
        None => {
            return Err(Error::Csv {
                line: 1,
                reason: "empty input".into(),
            })
        }
    }
    let mut samples = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::Csv {
            line: line_no,
            reason: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<f64> = line
            .split(',')
            .map(|f| f.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Csv {
                line: line_no,
                reason: e.to_string(),
            })?;
        let [t, a1, a2, a3] = fields[..] else {
            return Err(Error::Csv {
                line: line_no,
                reason: format!("expected 4 fields, got {}", fields.len()),
            });
        };
        samples.push(Sample {
            t,
            state: [a1, a2, a3],
        });
    }
    Ok(samples)
}
