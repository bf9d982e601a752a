//! Exact combinatorics over small finite fields: arithmetic in `F_q` for odd
//! prime powers, structured variety families and their incidence graphs,
//! integer-exact walk identities on biregular bipartite graphs, spectral
//! estimates, and the counting experiments built on top of them (pinned
//! values, distinct circles/spheres, point–line distances).
//!
//! Everything combinatorial is computed exactly over the integers; floating
//! point only enters when a bound involves a square root, and every such
//! comparison carries an explicit slack so rounding can never flip a
//! verdict. All randomized experiments run from an explicit 64-bit seed.

pub mod beck;
pub mod bigraph;
pub mod distances;
pub mod error;
pub mod ffield;
pub mod incidence;
pub mod pldist;
pub mod report;
pub mod rng;
pub mod varieties;

pub(crate) mod linalg;

pub use error::{Error, Result};
pub use ffield::{FieldCtx, FieldElem};
pub use report::ClaimReport;
pub use rng::SeededRng;

/// Additive slack applied to every real-valued right-hand side before an
/// exact integer/rational left-hand side is compared against it, so that a
/// true inequality is never reported as violated due to `sqrt` rounding.
pub const RHS_SLACK: f64 = 8.673617379884035e-13; // 2^-40

/// Default cap on bitset adjacency storage, in bytes. Overridable through
/// the CLI `--budget` flag and the `FQLAB_BUDGET_BYTES` environment variable.
pub const DEFAULT_BUDGET_BYTES: u64 = 1 << 28;
