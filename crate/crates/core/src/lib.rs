//! Verified sphere packings from independent sets of integer-lattice graphs.
//!
//! Centers are integer points of the cube `K0 = [-s/2, s/2]^n`; two centers
//! conflict when they are closer than `2r`. Any independent set of that
//! conflict graph gives non-overlapping spheres inside `K1 = [-s/2 - r, s/2 + r]^n`,
//! and since `K1` tiles space the packing density is `|I| V_n r^n / (s + 2r)^n`.
//!
//! * [`geometry`]: ball volumes and two-ball intersection volumes.
//! * [`lattice_graph`]: the conflict graph and its degree/triangle statistics.
//! * [`independence`]: independent-set extraction and independence lower bounds.
//! * [`bounds`]: closed-form density, degree and neighbourhood-edge bounds.
//! * [`packing`]: assembly, verification and the packing file format.
//! * [`oracle`]: Monte Carlo and brute-force reference implementations.

pub mod bounds;
pub mod error;
pub mod geometry;
pub mod independence;
pub mod lattice_graph;
pub mod oracle;
pub mod packing;
pub mod params;

pub use error::{Error, Result};
pub use params::{Budget, PackingParams};
