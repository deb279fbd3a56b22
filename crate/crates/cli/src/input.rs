//! Parsing of numeric CSV files and list/grid flags.

use std::path::Path;

use num_complex::Complex64;
use singint_core::dcov::SampleMatrix;

use crate::report::Failure;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Reads a comma-separated numeric matrix. A first row that does not parse
/// as numbers is taken as a header.
pub fn read_matrix(path: &Path) -> Result<SampleMatrix, Failure> {
    let name = path.display();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| usage(format!("{name}: {e}")))?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (index, record) in reader.records().enumerate() {
        let record = record.map_err(|e| usage(format!("{name}: {e}")))?;
        let line = record.position().map_or(index as u64 + 1, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        let parsed: Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        let row = match parsed {
            Ok(row) => row,
            Err(_) if index == 0 => continue,
            Err(_) => {
                let bad = record
                    .iter()
                    .find(|f| f.parse::<f64>().is_err())
                    .unwrap_or("");
                return Err(usage(format!("{name}: line {line}: not a number: {bad:?}")));
            }
        };
        if let Some(bad) = row.iter().find(|v| !v.is_finite()) {
            return Err(usage(format!(
                "{name}: line {line}: non-finite value {bad}"
            )));
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(usage(format!(
                    "{name}: line {line}: expected {} columns, found {}",
                    first.len(),
                    row.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(usage(format!("{name}: no data rows")));
    }
    SampleMatrix::from_rows(&rows).map_err(|e| usage(format!("{name}: {e}")))
}

pub fn parse_list<T: std::str::FromStr>(flag: &str, text: &str) -> Result<Vec<T>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<T>()
                .map_err(|_| usage(format!("--{flag}: cannot parse {s:?}")))
        })
        .collect()
}

pub fn parse_point(text: Option<&str>, d: usize) -> Result<Vec<f64>, Failure> {
    let Some(text) = text else {
        let mut e1 = vec![0.0; d];
        if let Some(first) = e1.first_mut() {
            *first = 1.0;
        }
        return Ok(e1);
    };
    let x: Vec<f64> = parse_list("x", text)?;
    if x.len() != d {
        return Err(usage(format!(
            "--x has {} coordinates, expected d = {d}",
            x.len()
        )));
    }
    Ok(x)
}

/// `start:stop:step`, inclusive of `stop` up to rounding. An empty string or
/// `start > stop` gives no points.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, Failure> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let parts: Vec<f64> = text
        .split(':')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| {
            usage(format!(
                "--alpha-grid: expected start:stop:step, got {text:?}"
            ))
        })?;
    let [start, stop, step] = parts[..] else {
        return Err(usage(format!(
            "--alpha-grid: expected start:stop:step, got {text:?}"
        )));
    };
    if !(start.is_finite() && stop.is_finite() && step.is_finite() && step > 0.0) {
        return Err(usage(
            "--alpha-grid: bounds must be finite and step positive",
        ));
    }
    if start > stop {
        return Ok(Vec::new());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| start + k as f64 * step).collect())
}

pub fn alpha_grid(re: &[f64], im: &[f64]) -> Vec<Complex64> {
    re.iter()
        .flat_map(|&r| im.iter().map(move |&i| Complex64::new(r, i)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_grid("0.5:3.5:1.0").unwrap(), vec![0.5, 1.5, 2.5, 3.5]);
        assert_eq!(parse_grid("0.1:0.3:0.1").unwrap().len(), 3);
        assert!(parse_grid("").unwrap().is_empty());
        assert!(parse_grid("3:1:1").unwrap().is_empty());
        assert!(parse_grid("1:2:0").is_err());
        assert!(parse_grid("1:2").is_err());
    }

    #[test]
    fn lists_and_points() {
        assert_eq!(
            parse_list::<usize>("d-list", "1, 2,3").unwrap(),
            vec![1, 2, 3]
        );
        assert!(parse_list::<u32>("m-list", "1,x").is_err());
        assert_eq!(parse_point(None, 3).unwrap(), vec![1.0, 0.0, 0.0]);
        assert_eq!(parse_point(Some("-1,2"), 2).unwrap(), vec![-1.0, 2.0]);
        assert!(parse_point(Some("1,2"), 3).is_err());
    }
}
