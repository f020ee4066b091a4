use std::fs::File;

use packing_forge::oracle::McEstimate;
use packing_forge::packing::{PackingDocument, VerificationReport};
use packing_forge::{Error, PackingParams};
use serde::Serialize;

use crate::args::VerifyArgs;
use crate::commands::build::{mc_density, packing_summary, PackingSummary};
use crate::exit::{Failure, Outcome};
use crate::output::{sig, Output, Table};

#[derive(Debug, Serialize)]
struct VerifyOutput {
    command: &'static str,
    file: String,
    params: PackingParams,
    checksum_ok: bool,
    declared_checksum: String,
    packing: PackingSummary,
    verification: VerificationReport,
    mc_density: Option<McEstimate>,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

fn coords(c: &[i64]) -> String {
    let parts: Vec<String> = c.iter().map(i64::to_string).collect();
    format!("({})", parts.join(", "))
}

pub fn run(args: &VerifyArgs, out: &Output, seed: u64) -> Outcome {
    let path = args.file.display().to_string();
    let file = File::open(&args.file).map_err(|e| Failure::Usage(format!("cannot open {path}: {e}")))?;
    // a file that does not even parse is a failed packing, not a usage error
    let doc = PackingDocument::read(file).map_err(|e| match e {
        Error::Parse { .. } => Failure::Verification(format!("{path}: {e}")),
        e => e.into(),
    })?;
    let pk = &doc.packing;
    let verification = pk.verify();
    let checksum_ok = doc.checksum_ok();
    let passed = checksum_ok && verification.passed;
    let mc = if passed { mc_density(pk, args.mc_samples, seed)? } else { None };

    let report = VerifyOutput {
        command: "verify",
        file: path.clone(),
        params: *pk.params(),
        checksum_ok,
        declared_checksum: doc.declared_checksum.clone(),
        packing: packing_summary(pk),
        verification,
        mc_density: mc,
        passed,
        timestamp: out.timestamp(),
    };

    let v = &report.verification;
    let p = &report.params;
    let mut t = Table::new();
    t.heading(format!("verify {path}"));
    t.row("n, r, s", format!("{}, {}, {}", p.n, p.r, p.s))
        .row("centers", report.packing.centers)
        .row("checksum", if checksum_ok { "ok" } else { "MISMATCH" })
        .row("separation", if v.separation_ok { "ok" } else { "FAIL" })
        .row("containment", if v.containment_ok { "ok" } else { "FAIL" })
        .row("min_squared_distance", v.min_squared_distance.map_or("n/a".to_string(), |d| d.to_string()))
        .num("density", report.packing.density)
        .row("density/V_n", &report.packing.density_over_ball_volume);
    if let Some(m) = &report.mc_density {
        t.row("mc_density", format!("{} ± {} ({} samples)", sig(m.mean), sig(m.std_error), m.samples));
    }
    t.row("result", if passed { "pass" } else { "FAIL" });
    if let Some(ts) = report.timestamp {
        t.row("timestamp", ts);
    }
    out.emit(&report, &t)?;

    if passed {
        return Ok(());
    }
    let mut problems = Vec::new();
    if !checksum_ok {
        problems.push(format!(
            "checksum mismatch (file says {}, contents hash to {})",
            doc.declared_checksum, doc.computed_checksum
        ));
    }
    if let Some(o) = v.overlaps.first() {
        let c = pk.centers();
        problems.push(format!(
            "centers {} {} and {} {} are at squared distance {} < {} ({} overlapping pairs)",
            o.first,
            coords(c.get(o.first)),
            o.second,
            coords(c.get(o.second)),
            o.squared_distance,
            4 * p.r * p.r,
            v.overlaps.len()
        ));
    }
    if let Some(&i) = v.outside.first() {
        problems.push(format!(
            "center {i} {} lies outside the inner cube |x_i| <= {} ({} centers outside)",
            coords(pk.centers().get(i)),
            p.s / 2,
            v.outside.len()
        ));
    }
    Err(Failure::Verification(format!("{path}: {}", problems.join("; "))))
}
