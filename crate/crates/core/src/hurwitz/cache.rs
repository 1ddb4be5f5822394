//! JSON-lines cache of Hurwitz numbers.
//!
//! ```text
//! {"format":"hurwitz-cache","version":1}
//! {"g":0,"mu":[2],"h":"1/2"}
//! ```

use std::cmp::Ordering;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::HurwitzKey;
use crate::error::{Error, Result};
use crate::exact_core::{factorial, format_rational, int, parse_rational, Rational};
use num_traits::Signed;
use crate::partitions::Partition;

pub const CACHE_FORMAT: &str = "hurwitz-cache";
pub const CACHE_VERSION: u64 = 1;

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    version: u64,
}

#[derive(Serialize, Deserialize)]
struct Record {
    g: u32,
    mu: Vec<u32>,
    h: String,
}

/// Sort order used for every listing: genus, degree, then parts descending.
pub fn key_order(a: &HurwitzKey, b: &HurwitzKey) -> Ordering {
    (a.g, a.mu.size(), a.mu.len())
        .cmp(&(b.g, b.mu.size(), b.mu.len()))
        .then_with(|| b.mu.parts().cmp(a.mu.parts()))
}

fn header_line() -> String {
    serde_json::to_string(&Header {
        format: CACHE_FORMAT.to_string(),
        version: CACHE_VERSION,
    })
    .unwrap()
}

fn record_line(key: &HurwitzKey, value: &Rational) -> String {
    serde_json::to_string(&Record {
        g: key.g,
        mu: key.mu.parts().to_vec(),
        h: format_rational(value),
    })
    .unwrap()
}

pub fn append_record(w: &mut impl Write, key: &HurwitzKey, value: &Rational) -> Result<()> {
    writeln!(w, "{}", record_line(key, value))?;
    Ok(())
}

pub fn write_records<'a>(
    path: &Path,
    records: impl IntoIterator<Item = (&'a HurwitzKey, &'a Rational)>,
) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{}", header_line())?;
    for (k, v) in records {
        append_record(&mut w, k, v)?;
    }
    w.flush()?;
    Ok(())
}

pub fn load_records(path: &Path) -> Result<Vec<(HurwitzKey, Rational)>> {
    let reader = BufReader::new(File::open(path)?);
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::MalformedCache("empty file".into()))??;
    let header: Header = serde_json::from_str(&header)
        .map_err(|e| Error::MalformedCache(format!("header: {e}")))?;
    if header.format != CACHE_FORMAT {
        return Err(Error::MalformedCache(format!(
            "unexpected format {:?}",
            header.format
        )));
    }
    if header.version != CACHE_VERSION {
        return Err(Error::CacheVersion {
            found: header.version,
            expected: CACHE_VERSION,
        });
    }
    let mut out = Vec::new();
    for (n, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: Record = serde_json::from_str(&line)
            .map_err(|e| Error::MalformedCache(format!("line {}: {e}", n + 2)))?;
        if rec.mu.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::MalformedCache(format!(
                "line {}: parts not weakly decreasing",
                n + 2
            )));
        }
        let mu = Partition::new(rec.mu)?;
        let h = parse_rational(&rec.h)?;
        // |mu|! H counts covers, so it is a nonnegative integer
        let scaled = &h * int(factorial(mu.size()));
        if !scaled.is_integer() || scaled.is_negative() {
            return Err(Error::MalformedCache(format!(
                "line {}: {} is not a Hurwitz number for |mu| = {}",
                n + 2,
                rec.h,
                mu.size()
            )));
        }
        out.push((HurwitzKey::new(rec.g, mu), h));
    }
    Ok(out)
}
