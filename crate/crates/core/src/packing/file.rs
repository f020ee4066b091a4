//! Plain-text packing files.
//!
//! ```text
//! n=2 r=1 s=8 count=25
//! -4 -4
//! -4 -2
//! ...
//! sha256=<64 hex digits>
//! ```
//!
//! The checksum covers every preceding line including its trailing newline.

use std::fmt::Write as _;
use std::io::{Read, Write};

use sha2::{Digest, Sha256};

use super::Packing;
use crate::error::{Error, Result};
use crate::lattice_graph::Points;
use crate::params::PackingParams;

pub const CHECKSUM_PREFIX: &str = "sha256=";

impl Packing {
    /// Header and center lines, each newline-terminated.
    pub fn canonical_body(&self) -> String {
        let p = &self.params;
        let mut body = format!("n={} r={} s={} count={}\n", p.n, p.r, p.s, self.len());
        for c in self.centers.iter() {
            let mut first = true;
            for x in c {
                if !first {
                    body.push(' ');
                }
                first = false;
                write!(body, "{x}").unwrap();
            }
            body.push('\n');
        }
        body
    }

    pub fn checksum(&self) -> String {
        checksum(&self.canonical_body())
    }

    pub fn export<W: Write>(&self, mut w: W) -> Result<()> {
        let body = self.canonical_body();
        w.write_all(body.as_bytes())?;
        writeln!(w, "{CHECKSUM_PREFIX}{}", checksum(&body))?;
        w.flush()?;
        Ok(())
    }

    /// Reads, checksums and verifies a packing. The result does not carry the
    /// paper-regime flag since the file does not record it.
    pub fn import<R: Read>(r: R) -> Result<Packing> {
        let doc = PackingDocument::read(r)?;
        if !doc.checksum_ok() {
            return Err(Error::Verification(format!(
                "checksum mismatch: file says {}, contents hash to {}",
                doc.declared_checksum, doc.computed_checksum
            )));
        }
        let report = doc.packing.verify();
        if let Some(o) = report.overlaps.first() {
            return Err(Error::Verification(format!(
                "centers {} and {} are at squared distance {} < {}",
                o.first,
                o.second,
                o.squared_distance,
                4 * doc.packing.radius() * doc.packing.radius()
            )));
        }
        if let Some(&i) = report.outside.first() {
            return Err(Error::Verification(format!(
                "center {} lies outside the inner cube",
                i
            )));
        }
        Ok(doc.packing)
    }
}

fn checksum(body: &str) -> String {
    hex::encode(Sha256::digest(body.as_bytes()))
}

/// A syntactically valid packing file whose checksum and geometry have not
/// been judged yet.
#[derive(Debug, Clone)]
pub struct PackingDocument {
    pub packing: Packing,
    pub declared_checksum: String,
    pub computed_checksum: String,
}

impl PackingDocument {
    pub fn checksum_ok(&self) -> bool {
        self.declared_checksum.eq_ignore_ascii_case(&self.computed_checksum)
    }

    pub fn read<R: Read>(mut r: R) -> Result<Self> {
        let mut text = String::new();
        r.read_to_string(&mut text).map_err(|e| match e.kind() {
            std::io::ErrorKind::InvalidData => Error::parse(0, "file is not valid UTF-8"),
            _ => Error::Io(e),
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
        let (params, count) = parse_header(header)?;
        params
            .validate()
            .map_err(|e| Error::parse(1, e.to_string()))?;

        let mut centers = Points::with_capacity(params.n, count.min(1 << 20));
        let mut row = Vec::with_capacity(params.n);
        for k in 0..count {
            let (no, line) = lines.next().ok_or_else(|| {
                Error::parse(
                    k + 2,
                    format!("expected {count} center lines, found only {k}"),
                )
            })?;
            row.clear();
            for (f, tok) in line.split_whitespace().enumerate() {
                let x: i64 = tok.parse().map_err(|_| {
                    Error::parse(no, format!("field {}: '{tok}' is not an integer", f + 1))
                })?;
                row.push(x);
            }
            if row.len() != params.n {
                return Err(Error::parse(
                    no,
                    format!("expected {} coordinates, found {}", params.n, row.len()),
                ));
            }
            centers.push(&row);
        }

        let (no, line) = lines
            .next()
            .ok_or_else(|| Error::parse(count + 2, "missing checksum line"))?;
        let declared = line
            .trim()
            .strip_prefix(CHECKSUM_PREFIX)
            .ok_or_else(|| {
                Error::parse(no, format!("expected '{CHECKSUM_PREFIX}<hex>' after {count} centers"))
            })?;
        if declared.len() != 64 || !declared.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(Error::parse(no, "checksum must be 64 hexadecimal digits"));
        }
        if let Some((no, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(Error::parse(no, "unexpected content after checksum"));
        }

        let packing = Packing::new(params, centers)?;
        let computed_checksum = packing.checksum();
        Ok(PackingDocument {
            packing,
            declared_checksum: declared.to_string(),
            computed_checksum,
        })
    }
}

fn parse_header(line: &str) -> Result<(PackingParams, usize)> {
    const KEYS: [&str; 4] = ["n", "r", "s", "count"];
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != KEYS.len() {
        return Err(Error::parse(
            1,
            format!("header must be 'n=<n> r=<r> s=<s> count=<k>', got {} fields", fields.len()),
        ));
    }
    let mut values = [0u64; 4];
    for (i, (field, key)) in fields.iter().zip(KEYS).enumerate() {
        let value = field
            .strip_prefix(key)
            .and_then(|v| v.strip_prefix('='))
            .ok_or_else(|| Error::parse(1, format!("field {}: expected '{key}=<integer>'", i + 1)))?;
        values[i] = value.parse().map_err(|_| {
            Error::parse(1, format!("field {}: '{value}' is not a non-negative integer", i + 1))
        })?;
    }
    let [n, r, s, count] = values;
    let n = usize::try_from(n).map_err(|_| Error::parse(1, "dimension too large"))?;
    let count = usize::try_from(count).map_err(|_| Error::parse(1, "count too large"))?;
    Ok((
        PackingParams {
            n,
            r,
            s,
            paper_regime: false,
        },
        count,
    ))
}
