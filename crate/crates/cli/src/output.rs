//! Report rendering: aligned text with 6 significant digits, or full-precision JSON.

use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::args::Format;
use crate::exit::Outcome;

#[derive(Debug, Clone, Copy)]
pub struct Output {
    pub format: Format,
    pub deterministic: bool,
}

impl Output {
    /// Seconds since the Unix epoch, or `None` in deterministic mode.
    pub fn timestamp(&self) -> Option<u64> {
        if self.deterministic {
            return None;
        }
        SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs())
    }

    /// Wall-clock seconds, suppressed in deterministic mode.
    pub fn timing(&self, seconds: f64) -> Option<f64> {
        (!self.deterministic).then_some(seconds)
    }

    pub fn emit<T: Serialize>(&self, report: &T, table: &Table) -> Outcome {
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        match self.format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, report)?;
                writeln!(out)?;
            }
            Format::Text => table.write(&mut out)?,
        }
        out.flush()?;
        Ok(())
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(report: &T) -> Outcome<String> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}

/// Key/value rows grouped under section headings.
#[derive(Debug, Default)]
pub struct Table {
    lines: Vec<Line>,
}

#[derive(Debug)]
enum Line {
    Heading(String),
    Row(String, String),
}

impl Table {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn heading(&mut self, h: impl Into<String>) -> &mut Self {
        self.lines.push(Line::Heading(h.into()));
        self
    }

    pub fn row(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.lines.push(Line::Row(key.into(), value.to_string()));
        self
    }

    pub fn num(&mut self, key: impl Into<String>, value: f64) -> &mut Self {
        self.row(key, sig(value))
    }

    pub fn opt(&mut self, key: impl Into<String>, value: Option<f64>, missing: &str) -> &mut Self {
        let v = value.map_or_else(|| missing.to_string(), sig);
        self.row(key, v)
    }

    fn write(&self, w: &mut impl Write) -> std::io::Result<()> {
        let width = self
            .lines
            .iter()
            .filter_map(|l| match l {
                Line::Row(k, _) => Some(k.len()),
                Line::Heading(_) => None,
            })
            .max()
            .unwrap_or(0);
        for line in &self.lines {
            match line {
                Line::Heading(h) => writeln!(w, "{h}")?,
                Line::Row(k, v) => writeln!(w, "  {k:<width$}  {v}")?,
            }
        }
        Ok(())
    }
}

/// `x` rounded to 6 significant digits, `%g` style.
pub fn sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
