//! Biregular bipartite graphs with bitset adjacency, exact integer walk
//! algebra, the expander mixing checker, and third-eigenvalue estimation.
//!
//! The adjacency matrix is `M = [[0, N], [N^T, 0]]` with `N` the `nA x nB`
//! biadjacency 0-1 matrix, stored as one bitset row per A-vertex. Walk
//! identities of the shape `M^3 = alpha M + beta K + gamma M_aux` (with `K`
//! the all-ones block matrix) are verified entrywise over 128-bit integers
//! with checked arithmetic: a violated identity is reported, an overflow
//! aborts, nothing ever wraps.

use base64::engine::general_purpose::STANDARD as BASE64;
use base64::Engine;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{exact_ratio_string, ClaimReport, Timer};
use crate::rng::SeededRng;
use crate::RHS_SLACK;

pub const EIGEN_TOL: f64 = 1e-6;
pub const EIGEN_MAX_ITERS: usize = 100_000;
/// Entry cap up to which walk identities must be verified in full mode.
pub const FULL_VERIFY_ENTRY_CAP: u64 = 10_000_000;
/// Minimum column count for sampled-mode verification.
pub const MIN_SAMPLED_COLUMNS: usize = 64;

const EIGEN_START_SEED: u64 = 0x517cc1b727220a95;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    n_a: usize,
    n_b: usize,
    words: usize,
    rows: Vec<u64>,
}

impl BipartiteGraph {
    pub fn new(n_a: usize, n_b: usize, budget_bytes: u64) -> Result<BipartiteGraph> {
        let words = n_b.div_ceil(64);
        let needed = (n_a as u64)
            .checked_mul(words as u64)
            .and_then(|w| w.checked_mul(8))
            .ok_or(Error::BudgetExceeded {
                needed: u64::MAX,
                budget: budget_bytes,
            })?;
        if needed > budget_bytes {
            return Err(Error::BudgetExceeded {
                needed,
                budget: budget_bytes,
            });
        }
        Ok(BipartiteGraph {
            n_a,
            n_b,
            words,
            rows: vec![0u64; n_a * words],
        })
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    pub fn n_b(&self) -> usize {
        self.n_b
    }

    pub fn set_edge(&mut self, a: usize, b: usize) {
        debug_assert!(a < self.n_a && b < self.n_b);
        self.rows[a * self.words + b / 64] |= 1u64 << (b % 64);
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        debug_assert!(a < self.n_a && b < self.n_b);
        self.rows[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    pub fn row_words(&self, a: usize) -> &[u64] {
        &self.rows[a * self.words..(a + 1) * self.words]
    }

    pub fn row_degree(&self, a: usize) -> u64 {
        self.row_words(a)
            .iter()
            .map(|w| w.count_ones() as u64)
            .sum()
    }

    pub fn col_degrees(&self) -> Vec<u64> {
        let mut cols = vec![0u64; self.n_b];
        for a in 0..self.n_a {
            for b in self.neighbors(a) {
                cols[b] += 1;
            }
        }
        cols
    }

    pub fn edge_count(&self) -> u64 {
        self.rows.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn neighbors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(a).iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + bit)
                }
            })
        })
    }

    pub fn common_neighbors(&self, a1: usize, a2: usize) -> u64 {
        self.row_words(a1)
            .iter()
            .zip(self.row_words(a2))
            .map(|(x, y)| (x & y).count_ones() as u64)
            .sum()
    }

    /// Verifies both parts have constant degree and returns `(deg_a, deg_b)`.
    pub fn degrees(&self) -> Result<(u64, u64)> {
        if self.n_a == 0 || self.n_b == 0 {
            return Ok((0, 0));
        }
        let deg_a = self.row_degree(0);
        for a in 1..self.n_a {
            let d = self.row_degree(a);
            if d != deg_a {
                return Err(Error::NotBiregular(format!(
                    "row 0 has degree {deg_a}, row {a} has degree {d}"
                )));
            }
        }
        let cols = self.col_degrees();
        let deg_b = cols[0];
        for (b, &d) in cols.iter().enumerate() {
            if d != deg_b {
                return Err(Error::NotBiregular(format!(
                    "column 0 has degree {deg_b}, column {b} has degree {d}"
                )));
            }
        }
        if deg_a * self.n_a as u64 != deg_b * self.n_b as u64 {
            return Err(Error::NotBiregular("edge count mismatch".into()));
        }
        Ok((deg_a, deg_b))
    }

    /// Exact `e(X, Y)` for `X ⊆ A`, `Y ⊆ B`.
    pub fn edges_between(&self, x: &[u64], y: &[u64]) -> Result<u64> {
        let mut mask = vec![0u64; self.words];
        for &b in y {
            if b >= self.n_b as u64 {
                return Err(Error::ElementOutOfRange {
                    index: b,
                    q: self.n_b as u64,
                });
            }
            mask[b as usize / 64] |= 1u64 << (b % 64);
        }
        let mut total = 0u64;
        for &a in x {
            if a >= self.n_a as u64 {
                return Err(Error::ElementOutOfRange {
                    index: a,
                    q: self.n_a as u64,
                });
            }
            total += self
                .row_words(a as usize)
                .iter()
                .zip(&mask)
                .map(|(r, m)| (r & m).count_ones() as u64)
                .sum::<u64>();
        }
        Ok(total)
    }

    pub fn to_dump(&self) -> GraphDump {
        let (deg_a, deg_b) = self.degrees().unwrap_or((0, 0));
        GraphDump {
            n_a: self.n_a,
            n_b: self.n_b,
            deg_a,
            deg_b,
            rows: (0..self.n_a)
                .map(|a| {
                    let bytes: Vec<u8> = self
                        .row_words(a)
                        .iter()
                        .flat_map(|w| w.to_le_bytes())
                        .collect();
                    BASE64.encode(bytes)
                })
                .collect(),
        }
    }

    pub fn from_dump(dump: &GraphDump) -> Result<BipartiteGraph> {
        let mut g = BipartiteGraph::new(dump.n_a, dump.n_b, u64::MAX)?;
        if dump.rows.len() != dump.n_a {
            return Err(Error::Parse(format!(
                "expected {} rows, got {}",
                dump.n_a,
                dump.rows.len()
            )));
        }
        for (a, row) in dump.rows.iter().enumerate() {
            let bytes = BASE64
                .decode(row)
                .map_err(|e| Error::Parse(format!("row {a}: {e}")))?;
            if bytes.len() != g.words * 8 {
                return Err(Error::Parse(format!("row {a}: wrong length")));
            }
            for (wi, chunk) in bytes.chunks_exact(8).enumerate() {
                g.rows[a * g.words + wi] = u64::from_le_bytes(chunk.try_into().unwrap());
            }
        }
        Ok(g)
    }
}

/// Serializable graph dump: part sizes, degrees, base64 row bitsets
/// (little-endian 64-bit words).
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct GraphDump {
    pub n_a: usize,
    pub n_b: usize,
    pub deg_a: u64,
    pub deg_b: u64,
    pub rows: Vec<String>,
}

/// Right-hand side of a cubic walk identity
/// `M^3 = alpha M + beta K + gamma M_aux` (A-to-B block form
/// `N N^T N = alpha N + beta J + gamma N_aux`).
#[derive(Clone, Debug)]
pub struct WalkIdentitySpec<'a> {
    pub alpha: i128,
    pub beta: i128,
    pub gamma: i128,
    pub aux: Option<&'a BipartiteGraph>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Full,
    Sampled { columns: usize, seed: u64 },
}

/// Entrywise integer verification of the A-to-B block of `M^3` against
/// `alpha N + beta J + gamma N_aux`. Returns a report whose `lhs` is the
/// maximum absolute entry deviation (0 when the identity holds).
pub fn verify_walk_identity(
    g: &BipartiteGraph,
    spec: &WalkIdentitySpec,
    mode: VerifyMode,
) -> Result<ClaimReport> {
    let timer = Timer::start();
    if spec.gamma != 0 && spec.aux.is_none() {
        return Err(Error::MissingAuxGraph);
    }
    if let Some(aux) = spec.aux {
        if aux.n_a() != g.n_a() || aux.n_b() != g.n_b() {
            return Err(Error::AuxShapeMismatch(
                aux.n_a(),
                aux.n_b(),
                g.n_a(),
                g.n_b(),
            ));
        }
    }

    let (max_dev, checked_cols, mode_name) = match mode {
        VerifyMode::Full => {
            let dev = full_deviation(g, spec)?;
            (dev, g.n_b(), "full")
        }
        VerifyMode::Sampled { columns, seed } => {
            let columns = columns.max(MIN_SAMPLED_COLUMNS).min(g.n_b());
            let mut rng = SeededRng::new(seed);
            let cols = rng.sample_distinct(g.n_b() as u64, columns as u64);
            let mut dev: i128 = 0;
            for &col in &cols {
                dev = dev.max(column_deviation(g, spec, col as usize)?);
            }
            (dev, columns, "sampled")
        }
    };

    let mut report = ClaimReport::new("walk_identity")
        .param("n_a", g.n_a())
        .param("n_b", g.n_b())
        .param("alpha", spec.alpha)
        .param("beta", spec.beta)
        .param("gamma", spec.gamma)
        .param("mode", mode_name)
        .param("columns_checked", checked_cols)
        .lhs(max_dev)
        .rhs(0)
        .satisfied(max_dev == 0);
    if let VerifyMode::Sampled { seed, .. } = mode {
        report = report.seed(seed);
    }
    Ok(timer.stamp(report))
}

/// Max deviation over all entries. The triple product associates through
/// whichever Gram matrix is smaller: `(N N^T) N` when `nA <= nB`, else
/// `N (N^T N)`.
fn full_deviation(g: &BipartiteGraph, spec: &WalkIdentitySpec) -> Result<i128> {
    let (n_a, n_b) = (g.n_a(), g.n_b());
    if n_a == 0 || n_b == 0 {
        return Ok(0);
    }
    let mut max_dev: i128 = 0;
    if n_a <= n_b {
        // gram[t] = (N N^T)[i][t] for the current i
        for i in 0..n_a {
            let mut cube = vec![0i128; n_b];
            for t in 0..n_a {
                let c = g.common_neighbors(i, t) as i128;
                if c == 0 {
                    continue;
                }
                for j in g.neighbors(t) {
                    cube[j] = cube[j].checked_add(c).ok_or(Error::Overflow)?;
                }
            }
            row_deviation(g, spec, i, &cube, &mut max_dev)?;
        }
    } else {
        let mut gram = vec![0i128; n_b * n_b];
        for a in 0..n_a {
            let nbrs: Vec<usize> = g.neighbors(a).collect();
            for (idx, &j1) in nbrs.iter().enumerate() {
                for &j2 in &nbrs[idx..] {
                    gram[j1 * n_b + j2] =
                        gram[j1 * n_b + j2].checked_add(1).ok_or(Error::Overflow)?;
                    if j1 != j2 {
                        gram[j2 * n_b + j1] += 1;
                    }
                }
            }
        }
        for i in 0..n_a {
            let mut cube = vec![0i128; n_b];
            for t in g.neighbors(i) {
                for j in 0..n_b {
                    cube[j] = cube[j]
                        .checked_add(gram[t * n_b + j])
                        .ok_or(Error::Overflow)?;
                }
            }
            row_deviation(g, spec, i, &cube, &mut max_dev)?;
        }
    }
    Ok(max_dev)
}

fn row_deviation(
    g: &BipartiteGraph,
    spec: &WalkIdentitySpec,
    i: usize,
    cube_row: &[i128],
    max_dev: &mut i128,
) -> Result<()> {
    for (j, &got) in cube_row.iter().enumerate() {
        let expected = expected_entry(g, spec, i, j)?;
        *max_dev = (*max_dev).max((got - expected).abs());
    }
    Ok(())
}

fn expected_entry(g: &BipartiteGraph, spec: &WalkIdentitySpec, i: usize, j: usize) -> Result<i128> {
    let mut v = spec.beta;
    if g.has_edge(i, j) {
        v = v.checked_add(spec.alpha).ok_or(Error::Overflow)?;
    }
    if spec.gamma != 0 && spec.aux.expect("checked").has_edge(i, j) {
        v = v.checked_add(spec.gamma).ok_or(Error::Overflow)?;
    }
    Ok(v)
}

/// Column `j` of the M^3 block via three matrix-vector products.
#[allow(clippy::needless_range_loop)]
fn column_deviation(g: &BipartiteGraph, spec: &WalkIdentitySpec, j: usize) -> Result<i128> {
    let (n_a, n_b) = (g.n_a(), g.n_b());
    let mut v_a = vec![0i128; n_a];
    for i in 0..n_a {
        if g.has_edge(i, j) {
            v_a[i] = 1;
        }
    }
    let mut v_b = vec![0i128; n_b];
    for i in 0..n_a {
        if v_a[i] == 0 {
            continue;
        }
        for t in g.neighbors(i) {
            v_b[t] = v_b[t].checked_add(v_a[i]).ok_or(Error::Overflow)?;
        }
    }
    let mut dev: i128 = 0;
    for i in 0..n_a {
        let mut acc: i128 = 0;
        for t in g.neighbors(i) {
            acc = acc.checked_add(v_b[t]).ok_or(Error::Overflow)?;
        }
        let expected = expected_entry(g, spec, i, j)?;
        dev = dev.max((acc - expected).abs());
    }
    Ok(dev)
}

/// Expander-mixing check for one `(X, Y)` pair against a given third
/// eigenvalue bound: the plain inequality and the refined one with the
/// `(1 - |X|/|A|)(1 - |Y|/|B|)` factor. Left-hand sides are exact
/// rationals; right-hand sides are floats with [`RHS_SLACK`] added.
pub fn mixing_bound_check(
    g: &BipartiteGraph,
    x: &[u64],
    y: &[u64],
    lambda3: f64,
) -> Result<Vec<ClaimReport>> {
    let timer = Timer::start();
    let (deg_a, _) = g.degrees()?;
    let e_xy = g.edges_between(x, y)?;
    let n_a = g.n_a() as u64;
    let n_b = g.n_b() as u64;
    let (sx, sy) = (x.len() as u64, y.len() as u64);

    // |e(X,Y) - (a/|B|) |X||Y|| = |nB e - a |X||Y|| / nB, exact
    let scaled_e = (n_b as u128) * (e_xy as u128);
    let scaled_exp = (deg_a as u128) * (sx as u128) * (sy as u128);
    let lhs_num = scaled_e.abs_diff(scaled_exp);
    let lhs = lhs_num as f64 / n_b as f64;
    let lhs_str = exact_ratio_string(lhs_num, n_b as u128);

    let product = (sx as f64) * (sy as f64);
    let rhs_basic = lambda3 * product.sqrt();
    let factor = (1.0 - sx as f64 / n_a as f64) * (1.0 - sy as f64 / n_b as f64);
    let rhs_refined = lambda3 * (product * factor).sqrt();

    let base = |name: &str| {
        ClaimReport::new(name)
            .param("x_size", sx)
            .param("y_size", sy)
            .param("lambda3", lambda3)
            .param("edges", e_xy)
            .lhs(&lhs_str)
    };
    Ok(vec![
        timer.stamp(
            base("mixing_bound")
                .rhs(rhs_basic)
                .satisfied(lhs <= rhs_basic + RHS_SLACK),
        ),
        timer.stamp(
            base("mixing_bound_refined")
                .rhs(rhs_refined)
                .satisfied(lhs <= rhs_refined + RHS_SLACK),
        ),
    ])
}

#[derive(Clone, Copy, Debug)]
pub struct EigenEstimate {
    pub value: f64,
    pub iterations: usize,
    /// Set when the estimate lands at the deflated top eigenvalue
    /// `sqrt(ab)` itself, which signals multiplicity the two-vector
    /// deflation cannot see; such a value must not be trusted as lambda_3.
    pub suspect: bool,
}

/// Largest-magnitude eigenvalue of the adjacency operator orthogonal to the
/// two forced top eigenvectors `sqrt(a) 1_A ± sqrt(b) 1_B`, with relative
/// tolerance `tol`.
///
/// Power iteration on `M^2` (so the paired `±lambda` spectrum cannot make
/// the iterate oscillate), re-projecting both block components away from
/// the all-ones vectors at every step. Deterministic seeded start vector.
pub fn third_eigenvalue_estimate(g: &BipartiteGraph, tol: f64) -> Result<EigenEstimate> {
    let (deg_a, deg_b) = g.degrees()?;
    let (n_a, n_b) = (g.n_a(), g.n_b());
    if n_a + n_b <= 2 || g.edge_count() == 0 {
        return Ok(EigenEstimate {
            value: 0.0,
            iterations: 0,
            suspect: false,
        });
    }
    let top = ((deg_a as f64) * (deg_b as f64)).sqrt();
    let n = n_a + n_b;

    let project = |v: &mut [f64]| {
        let mean_a: f64 = v[..n_a].iter().sum::<f64>() / n_a as f64;
        for t in v[..n_a].iter_mut() {
            *t -= mean_a;
        }
        let mean_b: f64 = v[n_a..].iter().sum::<f64>() / n_b as f64;
        for t in v[n_a..].iter_mut() {
            *t -= mean_b;
        }
    };
    let apply = |v: &[f64], out: &mut [f64]| {
        // out_A = N v_B, out_B = N^T v_A
        out.fill(0.0);
        for a in 0..n_a {
            let va = v[a];
            let mut acc = 0.0;
            for b in g.neighbors(a) {
                acc += v[n_a + b];
                out[n_a + b] += va;
            }
            out[a] = acc;
        }
    };

    let mut rng = SeededRng::new(EIGEN_START_SEED);
    let mut v: Vec<f64> = (0..n).map(|_| rng.next_f64() - 0.5).collect();
    project(&mut v);
    let norm = l2(&v);
    if norm < 1e-30 {
        return Ok(EigenEstimate {
            value: 0.0,
            iterations: 0,
            suspect: false,
        });
    }
    scale(&mut v, 1.0 / norm);

    let mut tmp = vec![0.0; n];
    let mut next = vec![0.0; n];
    let mut prev_estimate = f64::INFINITY;
    let mut stable = 0usize;
    for iteration in 1..=EIGEN_MAX_ITERS {
        apply(&v, &mut tmp);
        project(&mut tmp);
        apply(&tmp, &mut next);
        project(&mut next);
        // Rayleigh quotient of M^2 at v (||v|| = 1) = lambda^2 estimate
        let rq: f64 = v.iter().zip(&next).map(|(a, b)| a * b).sum();
        let estimate = rq.max(0.0).sqrt();
        let nrm = l2(&next);
        if nrm < 1e-250 {
            // operator vanishes on the complement, e.g. complete bipartite
            return Ok(EigenEstimate {
                value: 0.0,
                iterations: iteration,
                suspect: false,
            });
        }
        std::mem::swap(&mut v, &mut next);
        scale(&mut v, 1.0 / nrm);

        if (estimate - prev_estimate).abs() <= tol * estimate.max(f64::MIN_POSITIVE) {
            stable += 1;
            if stable >= 8 {
                return Ok(EigenEstimate {
                    value: estimate,
                    iterations: iteration,
                    suspect: estimate > top * (1.0 - 1e-9),
                });
            }
        } else {
            stable = 0;
        }
        prev_estimate = estimate;
    }
    Err(Error::NonConvergence {
        iterations: EIGEN_MAX_ITERS,
    })
}

fn l2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn scale(v: &mut [f64], s: f64) {
    for x in v {
        *x *= s;
    }
}
