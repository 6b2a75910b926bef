//! Orbit CSV files: header `index,value`, one row per state, indices `0, 1, …`.

use std::io::{Read, Write};
use std::path::Path;

use super::{OrbitSequence, Provenance};
use crate::error::{Error, Result};

pub fn read_orbit_csv(reader: impl Read) -> Result<OrbitSequence> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers().map_err(|e| csv_error(&e, 1))?;
    if headers.iter().collect::<Vec<_>>() != ["index", "value"] {
        return Err(Error::Parse {
            line: 1,
            message: format!(
                "expected header `index,value`, found `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    let mut states = Vec::new();
    for (expected, row) in rdr.records().enumerate() {
        let row = row.map_err(|e| csv_error(&e, expected as u64 + 2))?;
        let line = row.position().map_or(expected as u64 + 2, |p| p.line());
        let bad = |message: String| Error::Parse { line, message };
        if row.len() != 2 {
            return Err(bad(format!("expected 2 fields, found {}", row.len())));
        }
        let index: usize = row[0].parse().map_err(|_| bad(format!("bad index `{}`", &row[0])))?;
        if index != expected {
            return Err(bad(format!("index {index} out of sequence, expected {expected}")));
        }
        let value: f64 = row[1].parse().map_err(|_| bad(format!("bad value `{}`", &row[1])))?;
        if !value.is_finite() {
            return Err(bad(format!("non-finite value `{}`", &row[1])));
        }
        states.push(value);
    }
    if states.is_empty() {
        return Err(Error::Parse {
            line: 2,
            message: "orbit file has no states".into(),
        });
    }
    OrbitSequence::new(states, Provenance::File)
}

fn csv_error(e: &csv::Error, fallback_line: u64) -> Error {
    let line = e.position().map_or(fallback_line, |p| p.line());
    Error::Parse {
        line,
        message: e.to_string(),
    }
}

pub fn load_orbit(path: &Path) -> Result<OrbitSequence> {
    read_orbit_csv(std::fs::File::open(path)?)
}

pub fn write_orbit_csv(seq: &OrbitSequence, mut out: impl Write) -> Result<()> {
    writeln!(out, "index,value")?;
    for (i, v) in seq.states.iter().enumerate() {
        writeln!(out, "{i},{v}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects() {
        let ok = read_orbit_csv("index,value\n0,0.25\n1,0.5\n".as_bytes()).unwrap();
        assert_eq!(ok.states, vec![0.25, 0.5]);
        assert_eq!(ok.provenance, Provenance::File);

        let err = read_orbit_csv("index,value\n0,0.25\n1,abc\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = read_orbit_csv("index,value\n0,0.25\n2,0.3\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = read_orbit_csv("i,v\n0,0.25\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        assert!(read_orbit_csv("index,value\n".as_bytes()).is_err());
        let err = read_orbit_csv("index,value\n0,0.1,9\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn write_then_read() {
        let seq = OrbitSequence::new(vec![0.1, 1.0 / 3.0, 0.9999999999], Provenance::Constructed).unwrap();
        let mut buf = Vec::new();
        write_orbit_csv(&seq, &mut buf).unwrap();
        assert_eq!(read_orbit_csv(buf.as_slice()).unwrap().states, seq.states);
    }
}
