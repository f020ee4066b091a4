pub mod bench;
pub mod bounds;
pub mod build;
pub mod check;
pub mod verify;

use packing_forge::bounds::FormulaParams;
use packing_forge::lattice_graph::{build_graph, LatticeGraph};
use packing_forge::{Budget, Error, PackingParams};

use crate::args::ParamArgs;
use crate::exit::{Failure, Outcome};

fn dimension(a: &ParamArgs) -> Outcome<usize> {
    if a.dim == 0 {
        return Err(Failure::Usage("dimension must be at least 1".into()));
    }
    usize::try_from(a.dim).map_err(|_| Failure::Usage(format!("dimension {} too large", a.dim)))
}

/// Integer `(r, s)`, from the flags or the reference curve `r = 2n^2, s = 2n^4`.
fn integer_radius_and_side(a: &ParamArgs) -> Outcome<(u64, u64)> {
    if !a.paper_curve {
        return Ok((a.r.expect("clap requires --r"), a.s.expect("clap requires --s")));
    }
    let n = a.dim;
    let r = n.checked_mul(n).and_then(|m| m.checked_mul(2));
    let s = r.and_then(|r| r.checked_mul(n)).and_then(|m| m.checked_mul(n));
    match (r, s) {
        (Some(r), Some(s)) => Ok((r, s)),
        _ => Err(Failure::Budget(format!(
            "reference-curve parameters for n = {n} do not fit in 64 bits"
        ))),
    }
}

/// Parameters for a construction, refusing instances over the vertex budget
/// before anything is allocated.
pub fn construction_params(a: &ParamArgs, budget: &Budget) -> Outcome<PackingParams> {
    let n = dimension(a)?;
    let (r, s) = integer_radius_and_side(a)?;
    let predicted = u32::try_from(n)
        .ok()
        .and_then(|e| u128::from(s).checked_add(1)?.checked_pow(e));
    budget.check_vertices(predicted)?;
    let p = if a.paper_curve {
        PackingParams::paper_regime(n, r, s)?
    } else {
        PackingParams::new(n, r, s)?
    };
    Ok(p)
}

/// Parameters for formula-only evaluation; any dimension.
pub fn formula_params(a: &ParamArgs) -> Outcome<FormulaParams> {
    dimension(a)?;
    let p = if a.paper_curve {
        FormulaParams::paper_curve(a.dim)?
    } else {
        FormulaParams::new(a.dim, a.r.expect("clap requires --r") as f64, a.s.expect("clap requires --s") as f64)?
    };
    Ok(p)
}

pub fn graph(p: &PackingParams, budget: &Budget) -> Outcome<LatticeGraph> {
    build_graph(p, budget).map_err(|e| match e {
        Error::BudgetExceeded { .. } => Failure::Budget(format!(
            "{e}; (n, r, s) = ({}, {}, {}) is not constructible within the budget",
            p.n, p.r, p.s
        )),
        e => e.into(),
    })
}
