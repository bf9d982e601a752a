//! The point-line distance graph `PL(F_q^2)`, its companion incidence
//! graph, and the distance-set experiments built on them.
//!
//! Part A of `PL` is every quadruple `(a, b, c, lambda)` with
//! `lambda (a^2 + b^2)` a nonzero square; part B is `F_q^2`. A quadruple
//! and a point are adjacent when `(a x + b y + c)^2 = lambda (a^2 + b^2)`,
//! i.e. when the point lies at distance `lambda` from the line
//! `a x + b y + c = 0`. Proportional coefficient triples `(ka, kb, kc)`
//! give distinct A-vertices on purpose: that multiplicity is exactly the
//! blow-up the distance-set argument needs.

use rayon::prelude::*;

use crate::bigraph::{
    third_eigenvalue_estimate, verify_walk_identity, BipartiteGraph, VerifyMode, WalkIdentitySpec,
};
use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, FieldElem};
use crate::report::{ClaimReport, Timer};
use crate::rng::SeededRng;
use crate::varieties::index_point;

/// A line `a x + b y + c = 0` with `(a, b) != (0, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LineRep {
    pub a: FieldElem,
    pub b: FieldElem,
    pub c: FieldElem,
}

impl LineRep {
    pub fn new(ctx: &FieldCtx, a: FieldElem, b: FieldElem, c: FieldElem) -> Result<LineRep> {
        if a == ctx.zero() && b == ctx.zero() {
            return Err(Error::ZeroDirection);
        }
        Ok(LineRep { a, b, c })
    }

    /// Degenerate lines have `a^2 + b^2 = 0`; no distance is defined to them.
    pub fn is_degenerate(&self, ctx: &FieldCtx) -> bool {
        self.norm_coeff(ctx) == ctx.zero()
    }

    fn norm_coeff(&self, ctx: &FieldCtx) -> FieldElem {
        ctx.add(ctx.square(self.a), ctx.square(self.b))
    }

    pub fn value_at(&self, ctx: &FieldCtx, x: FieldElem, y: FieldElem) -> FieldElem {
        ctx.add(ctx.add(ctx.mul(self.a, x), ctx.mul(self.b, y)), self.c)
    }

    pub fn contains(&self, ctx: &FieldCtx, x: FieldElem, y: FieldElem) -> bool {
        self.value_at(ctx, x, y) == ctx.zero()
    }

    /// Scales so the first nonzero coefficient in `(a, b, c)` order is 1.
    pub fn normalized(&self, ctx: &FieldCtx) -> LineRep {
        let lead = if self.a != ctx.zero() {
            self.a
        } else if self.b != ctx.zero() {
            self.b
        } else {
            self.c
        };
        let inv = ctx.inv(lead).expect("lead coefficient is nonzero");
        LineRep {
            a: ctx.mul(self.a, inv),
            b: ctx.mul(self.b, inv),
            c: ctx.mul(self.c, inv),
        }
    }
}

/// A hyperplane `a_1 x_1 + ... + a_d x_d + a_{d+1} = 0` in `F_q^d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HyperplaneRep {
    /// `d + 1` coefficients, constant term last.
    pub coeffs: Vec<FieldElem>,
}

impl HyperplaneRep {
    pub fn new(ctx: &FieldCtx, coeffs: Vec<FieldElem>) -> Result<HyperplaneRep> {
        if coeffs.len() < 3 {
            return Err(Error::InvalidParameter("hyperplane needs d >= 2".into()));
        }
        let d = coeffs.len() - 1;
        if coeffs[..d].iter().all(|&c| c == ctx.zero()) {
            return Err(Error::ZeroDirection);
        }
        Ok(HyperplaneRep { coeffs })
    }

    pub fn d(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_degenerate(&self, ctx: &FieldCtx) -> bool {
        self.norm_coeff(ctx) == ctx.zero()
    }

    fn norm_coeff(&self, ctx: &FieldCtx) -> FieldElem {
        self.coeffs[..self.d()]
            .iter()
            .fold(ctx.zero(), |acc, &c| ctx.add(acc, ctx.square(c)))
    }

    pub fn value_at(&self, ctx: &FieldCtx, p: &[FieldElem]) -> FieldElem {
        let d = self.d();
        let mut acc = self.coeffs[d];
        for (&a, &x) in self.coeffs[..d].iter().zip(p) {
            acc = ctx.add(acc, ctx.mul(a, x));
        }
        acc
    }
}

/// `d(p, l) = (a x_p + b y_p + c)^2 / (a^2 + b^2)`.
pub fn point_line_distance(
    ctx: &FieldCtx,
    p: (FieldElem, FieldElem),
    l: &LineRep,
) -> Result<FieldElem> {
    let norm = l.norm_coeff(ctx);
    if norm == ctx.zero() {
        return Err(Error::DegenerateLine(l.a.index(), l.b.index(), l.c.index()));
    }
    let num = l.value_at(ctx, p.0, p.1);
    Ok(ctx.mul(ctx.square(num), ctx.inv(norm)?))
}

/// `d(p, h) = (a_1 x_1 + ... + a_d x_d + a_{d+1})^2 / (a_1^2 + ... + a_d^2)`.
pub fn point_hyperplane_distance(
    ctx: &FieldCtx,
    p: &[FieldElem],
    h: &HyperplaneRep,
) -> Result<FieldElem> {
    if p.len() != h.d() {
        return Err(Error::DimensionMismatch {
            expected: h.d(),
            got: p.len(),
        });
    }
    let norm = h.norm_coeff(ctx);
    if norm == ctx.zero() {
        return Err(Error::DegenerateHyperplane);
    }
    let num = h.value_at(ctx, p);
    Ok(ctx.mul(ctx.square(num), ctx.inv(norm)?))
}

/// An A-vertex of `PL(F_q^2)`: `lambda (a^2 + b^2)` is a nonzero square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DistQuadruple {
    pub a: FieldElem,
    pub b: FieldElem,
    pub c: FieldElem,
    pub lambda: FieldElem,
}

impl DistQuadruple {
    pub fn new(
        ctx: &FieldCtx,
        a: FieldElem,
        b: FieldElem,
        c: FieldElem,
        lambda: FieldElem,
    ) -> Result<DistQuadruple> {
        let quad = DistQuadruple { a, b, c, lambda };
        if !quad.is_valid(ctx) {
            return Err(Error::InvalidQuadruple);
        }
        Ok(quad)
    }

    fn is_valid(&self, ctx: &FieldCtx) -> bool {
        let norm = ctx.add(ctx.square(self.a), ctx.square(self.b));
        ctx.is_nonzero_square(ctx.mul(self.lambda, norm))
    }

    /// Edge predicate of `PL`: `(a x + b y + c)^2 = lambda (a^2 + b^2)`.
    pub fn adjacent(&self, ctx: &FieldCtx, x: FieldElem, y: FieldElem) -> bool {
        let lhs = ctx.square(ctx.add(ctx.add(ctx.mul(self.a, x), ctx.mul(self.b, y)), self.c));
        let rhs = ctx.mul(self.lambda, ctx.add(ctx.square(self.a), ctx.square(self.b)));
        lhs == rhs
    }

    pub fn line(&self) -> LineRep {
        LineRep {
            a: self.a,
            b: self.b,
            c: self.c,
        }
    }
}

/// All A-vertices in lexicographic `(a, b, c, lambda)` order. This is the
/// canonical row order of [`build_pl_graph`] and [`build_in_graph`].
pub fn dist_quadruples(ctx: &FieldCtx) -> Vec<DistQuadruple> {
    let mut out = Vec::new();
    for a in ctx.elements() {
        for b in ctx.elements() {
            let norm = ctx.add(ctx.square(a), ctx.square(b));
            for c in ctx.elements() {
                for lambda in ctx.elements() {
                    if ctx.is_nonzero_square(ctx.mul(lambda, norm)) {
                        out.push(DistQuadruple { a, b, c, lambda });
                    }
                }
            }
        }
    }
    out
}

/// Exhaustive `|S|`, `S = {(a, b, lambda) : lambda (a^2 + b^2) in SQ}`.
pub fn s_set_count(ctx: &FieldCtx) -> u64 {
    let mut count = 0u64;
    for a in ctx.elements() {
        for b in ctx.elements() {
            let norm = ctx.add(ctx.square(a), ctx.square(b));
            for lambda in ctx.elements() {
                count += ctx.is_nonzero_square(ctx.mul(lambda, norm)) as u64;
            }
        }
    }
    count
}

/// Exhaustive `|S|` against the closed form: `(q-1)^2 (q+1) / 2` when `-1`
/// is a non-square, `(q-1)(q^2 - 2q + 1) / 2` when it is a square.
pub fn s_set_size_report(ctx: &FieldCtx) -> ClaimReport {
    let timer = Timer::start();
    let count = s_set_count(ctx);
    let q = ctx.q();
    let formula = if ctx.minus_one_is_square() {
        (q - 1) * (q * q - 2 * q + 1) / 2
    } else {
        (q - 1) * (q - 1) * (q + 1) / 2
    };
    timer.stamp(
        ClaimReport::new("pl_s_size")
            .param("q", q)
            .param("minus_one_square", ctx.minus_one_is_square())
            .param("cube_bound_ok", count <= q * q * q)
            .lhs(count)
            .rhs(formula)
            .satisfied(count == formula && count <= q * q * q),
    )
}

/// Builds `PL(F_q^2)` and audits the degrees `(2q, 2|S|)`.
pub fn build_pl_graph(ctx: &FieldCtx, budget_bytes: u64) -> Result<BipartiteGraph> {
    let quads = dist_quadruples(ctx);
    let g = build_quad_point_graph(ctx, &quads, budget_bytes, |quad, ctx, x, y| {
        quad.adjacent(ctx, x, y)
    })?;
    let (deg_a, deg_b) = g.degrees()?;
    let s = s_set_count(ctx);
    if deg_a != 2 * ctx.q() || deg_b != 2 * s {
        return Err(Error::NotBiregular(format!(
            "PL graph degrees ({deg_a}, {deg_b}) differ from (2q, 2|S|) = ({}, {})",
            2 * ctx.q(),
            2 * s
        )));
    }
    Ok(g)
}

/// Builds the incidence companion on the same vertex parts: a quadruple is
/// joined to the points of its underlying line. Degrees are `(q, |S|)`.
pub fn build_in_graph(ctx: &FieldCtx, budget_bytes: u64) -> Result<BipartiteGraph> {
    let quads = dist_quadruples(ctx);
    let g = build_quad_point_graph(ctx, &quads, budget_bytes, |quad, ctx, x, y| {
        quad.line().contains(ctx, x, y)
    })?;
    let (deg_a, deg_b) = g.degrees()?;
    let s = s_set_count(ctx);
    if deg_a != ctx.q() || deg_b != s {
        return Err(Error::NotBiregular(format!(
            "IN graph degrees ({deg_a}, {deg_b}) differ from (q, |S|) = ({}, {s})",
            ctx.q()
        )));
    }
    Ok(g)
}

fn build_quad_point_graph(
    ctx: &FieldCtx,
    quads: &[DistQuadruple],
    budget_bytes: u64,
    edge: impl Fn(&DistQuadruple, &FieldCtx, FieldElem, FieldElem) -> bool,
) -> Result<BipartiteGraph> {
    let q = ctx.q();
    let n_b = (q * q) as usize;
    let mut g = BipartiteGraph::new(quads.len(), n_b, budget_bytes)?;
    let points: Vec<(FieldElem, FieldElem)> = (0..q * q)
        .map(|i| {
            let p = index_point(ctx, i, 2);
            (p[0], p[1])
        })
        .collect();
    for (row, quad) in quads.iter().enumerate() {
        for (col, &(x, y)) in points.iter().enumerate() {
            if edge(quad, ctx, x, y) {
                g.set_edge(row, col);
            }
        }
    }
    Ok(g)
}

/// The common-neighbor case split for two distinct A-vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommonCase {
    /// `(d, e) = k (a, b)` but `f != k c`: parallel distinct lines, `q`.
    ParallelDistinctLine,
    /// `(d, e, f) = k (a, b, c)` with `lambda != beta`: `0`.
    SameLineDifferentLambda,
    /// `(d, e, f) = k (a, b, c)` with `lambda = beta`: full degree `2q`.
    SameLineSameLambda,
    /// Independent directions: `4`.
    Independent,
}

/// Predicted common-neighbor count of two distinct quadruples, by case
/// analysis on the coefficient triples.
pub fn common_neighbors_case(
    ctx: &FieldCtx,
    v1: &DistQuadruple,
    v2: &DistQuadruple,
) -> Result<(u64, CommonCase)> {
    if v1 == v2 {
        return Err(Error::EqualQuadruples);
    }
    if !v1.is_valid(ctx) || !v2.is_valid(ctx) {
        return Err(Error::InvalidQuadruple);
    }
    let q = ctx.q();
    // (d, e) = k (a, b) for the unique candidate k, if any
    let k = if v1.a != ctx.zero() {
        let k = ctx.mul(v2.a, ctx.inv(v1.a)?);
        (v2.b == ctx.mul(k, v1.b)).then_some(k)
    } else if v2.a == ctx.zero() {
        // a = d = 0 forces b, e nonzero
        Some(ctx.mul(v2.b, ctx.inv(v1.b)?))
    } else {
        None
    };
    let Some(k) = k.filter(|&k| k != ctx.zero()) else {
        return Ok((4, CommonCase::Independent));
    };
    if v2.c == ctx.mul(k, v1.c) {
        if v1.lambda == v2.lambda {
            Ok((2 * q, CommonCase::SameLineSameLambda))
        } else {
            Ok((0, CommonCase::SameLineDifferentLambda))
        }
    } else {
        Ok((q, CommonCase::ParallelDistinctLine))
    }
}

/// Exact common-neighbor count of two distinct quadruples.
///
/// The q/0/2q/4 case table over-counts the parallel-distinct-line case:
/// the two lines of `v1` (`u = +-m1`) meet the two lines of `v2`
/// (`k u + (f - kc) = +-m2`) only when the sign system is consistent, i.e.
/// when `m2^2` equals `(k m1 + g)^2` or `(k m1 - g)^2` for `g = f - kc`.
/// Squaring that disjunction removes the square roots:
/// `(beta k^2 n - k^2 lambda n - g^2)^2 = 4 k^2 lambda n g^2` with
/// `n = a^2 + b^2`. When it fails the true count is 0, not `q`. For `q = 3`
/// the condition always holds (there is a single nonzero square), which is
/// the one case where the table is exact.
pub fn common_neighbors_count(
    ctx: &FieldCtx,
    v1: &DistQuadruple,
    v2: &DistQuadruple,
) -> Result<u64> {
    let (predicted, case) = common_neighbors_case(ctx, v1, v2)?;
    if case != CommonCase::ParallelDistinctLine {
        return Ok(predicted);
    }
    let k = if v1.a != ctx.zero() {
        ctx.mul(v2.a, ctx.inv(v1.a)?)
    } else {
        ctx.mul(v2.b, ctx.inv(v1.b)?)
    };
    let n = ctx.add(ctx.square(v1.a), ctx.square(v1.b));
    let g = ctx.sub(v2.c, ctx.mul(k, v1.c));
    let k2n = ctx.mul(ctx.square(k), n);
    let t = ctx.sub(
        ctx.mul(v2.lambda, k2n),
        ctx.add(ctx.mul(v1.lambda, k2n), ctx.square(g)),
    );
    let lhs = ctx.square(t);
    let rhs = ctx.mul(
        ctx.mul(ctx.from_int(4), ctx.mul(v1.lambda, k2n)),
        ctx.square(g),
    );
    Ok(if lhs == rhs { ctx.q() } else { 0 })
}

/// Brute-force comparator for [`common_neighbors_case`]: scans all of
/// `F_q^2` with the raw edge predicate.
pub fn common_neighbors_exhaustive(ctx: &FieldCtx, v1: &DistQuadruple, v2: &DistQuadruple) -> u64 {
    let mut count = 0u64;
    for x in ctx.elements() {
        for y in ctx.elements() {
            count += (v1.adjacent(ctx, x, y) && v2.adjacent(ctx, x, y)) as u64;
        }
    }
    count
}

#[derive(Clone, Copy, Debug)]
pub enum PairMode {
    AllPairs,
    Sampled { pairs: u64, seed: u64 },
}

/// Compares the case-table classifier against exhaustive counts over
/// A-vertex pairs; `lhs` is the number of mismatching pairs. Expect zero
/// at q = 3 and genuine mismatches from q = 5 on.
pub fn case_table_comparison(ctx: &FieldCtx, mode: PairMode) -> Result<ClaimReport> {
    compare_predictor(ctx, mode, "pl_common_neighbors", |ctx, v1, v2| {
        common_neighbors_case(ctx, v1, v2).map(|(predicted, _)| predicted)
    })
}

/// Same comparison for the corrected rule [`common_neighbors_count`];
/// zero mismatches expected everywhere.
pub fn corrected_case_comparison(ctx: &FieldCtx, mode: PairMode) -> Result<ClaimReport> {
    compare_predictor(
        ctx,
        mode,
        "pl_common_neighbors_corrected",
        common_neighbors_count,
    )
}

fn compare_predictor(
    ctx: &FieldCtx,
    mode: PairMode,
    claim_name: &str,
    predictor: impl Fn(&FieldCtx, &DistQuadruple, &DistQuadruple) -> Result<u64> + Sync,
) -> Result<ClaimReport> {
    let timer = Timer::start();
    let quads = dist_quadruples(ctx);
    let n = quads.len();
    let (mismatches, pairs_checked, seed) = match mode {
        PairMode::AllPairs => {
            let mismatches: u64 = (0..n)
                .into_par_iter()
                .map(|i| {
                    let mut local = 0u64;
                    for j in i + 1..n {
                        let predicted =
                            predictor(ctx, &quads[i], &quads[j]).expect("distinct pair");
                        if predicted != common_neighbors_exhaustive(ctx, &quads[i], &quads[j]) {
                            local += 1;
                        }
                    }
                    local
                })
                .sum();
            (mismatches, (n as u64) * (n as u64 - 1) / 2, None)
        }
        PairMode::Sampled { pairs, seed } => {
            let mut rng = SeededRng::new(seed);
            let mut mismatches = 0u64;
            for _ in 0..pairs {
                let i = rng.below(n as u64) as usize;
                let j = loop {
                    let j = rng.below(n as u64) as usize;
                    if j != i {
                        break j;
                    }
                };
                let predicted = predictor(ctx, &quads[i], &quads[j])?;
                if predicted != common_neighbors_exhaustive(ctx, &quads[i], &quads[j]) {
                    mismatches += 1;
                }
            }
            (mismatches, pairs, Some(seed))
        }
    };
    let mut report = ClaimReport::new(claim_name)
        .param("q", ctx.q())
        .param("pairs_checked", pairs_checked)
        .lhs(mismatches)
        .rhs(0)
        .satisfied(mismatches == 0);
    if let Some(s) = seed {
        report = report.seed(s);
    }
    Ok(timer.stamp(report))
}

/// Walk-identity coefficients of `PL(F_q^2)` given `|S|`:
/// `M^3 = alpha M + beta K + gamma M_IN`.
pub fn pl_identity_coefficients(q: u64, s: u64) -> (i128, i128, i128) {
    let (q, s) = (q as i128, s as i128);
    let alpha = 2 * q * (q - 1);
    let beta = 4 * (2 * s - (q - 1) * (q - 1)) + q * ((q - 1) * (q - 1) - (q - 1));
    let gamma = q * (q - 1);
    (alpha, beta, gamma)
}

/// Entrywise integer verification of the `PL` cubic identity, with the
/// incidence graph as the auxiliary term.
pub fn verify_pl_identity(ctx: &FieldCtx, budget_bytes: u64) -> Result<ClaimReport> {
    let pl = build_pl_graph(ctx, budget_bytes)?;
    let incidence = build_in_graph(ctx, budget_bytes)?;
    let s = s_set_count(ctx);
    let (alpha, beta, gamma) = pl_identity_coefficients(ctx.q(), s);
    let spec = WalkIdentitySpec {
        alpha,
        beta,
        gamma,
        aux: Some(&incidence),
    };
    let mut report = verify_walk_identity(&pl, &spec, VerifyMode::Full)?;
    report.claim_name = "pl_walk_identity".into();
    report.params.insert("q".into(), ctx.q().to_string());
    report.params.insert("s_size".into(), s.to_string());
    Ok(report)
}

/// Structural audit reports: PL degrees, IN degrees, `|S|` formula, and
/// edge-set disjointness of the two graphs.
pub fn pl_structure_reports(ctx: &FieldCtx, budget_bytes: u64) -> Result<Vec<ClaimReport>> {
    let timer = Timer::start();
    let q = ctx.q();
    let s = s_set_count(ctx);
    let pl = build_pl_graph(ctx, budget_bytes)?;
    let incidence = build_in_graph(ctx, budget_bytes)?;
    let (pl_a, pl_b) = pl.degrees()?;
    let (in_a, in_b) = incidence.degrees()?;

    let mut overlap = 0u64;
    for row in 0..pl.n_a() {
        overlap += pl
            .row_words(row)
            .iter()
            .zip(incidence.row_words(row))
            .map(|(x, y)| (x & y).count_ones() as u64)
            .sum::<u64>();
    }

    Ok(vec![
        timer.stamp(
            ClaimReport::new("pl_degrees")
                .param("q", q)
                .param("n_a", pl.n_a())
                .param("n_b", pl.n_b())
                .lhs(format!("({pl_a},{pl_b})"))
                .rhs(format!("({},{})", 2 * q, 2 * s))
                .satisfied(pl_a == 2 * q && pl_b == 2 * s),
        ),
        timer.stamp(
            ClaimReport::new("in_degrees")
                .param("q", q)
                .lhs(format!("({in_a},{in_b})"))
                .rhs(format!("({q},{s})"))
                .satisfied(in_a == q && in_b == s),
        ),
        s_set_size_report(ctx),
        timer.stamp(
            ClaimReport::new("pl_in_disjoint")
                .param("q", q)
                .lhs(overlap)
                .rhs(0)
                .satisfied(overlap == 0),
        ),
    ])
}

/// Third-eigenvalue check for `PL(F_q^2)`: estimate `<= 2 q^{4/3} (1 + tol)`.
pub fn pl_lambda3_check(ctx: &FieldCtx, tol: f64, budget_bytes: u64) -> Result<ClaimReport> {
    let timer = Timer::start();
    let pl = build_pl_graph(ctx, budget_bytes)?;
    let estimate = third_eigenvalue_estimate(&pl, tol)?;
    let bound = 2.0 * (ctx.q() as f64).powf(4.0 / 3.0);
    Ok(timer.stamp(
        ClaimReport::new("pl_lambda3")
            .param("q", ctx.q())
            .param("iterations", estimate.iterations)
            .param("suspect", estimate.suspect)
            .lhs(estimate.value)
            .rhs(bound * (1.0 + tol))
            .satisfied(!estimate.suspect && estimate.value <= bound * (1.0 + tol)),
    ))
}

/// `Delta(P, l) = {d(p, l) : p in P}` as a sorted element list; `P` is
/// given by canonical `F_q^2` point indices.
pub fn line_distance_set(ctx: &FieldCtx, points: &[u64], l: &LineRep) -> Result<Vec<FieldElem>> {
    let mut present = vec![false; ctx.q() as usize];
    for &p_idx in points {
        let p = index_point(ctx, p_idx, 2);
        let dist = point_line_distance(ctx, (p[0], p[1]), l)?;
        present[dist.index() as usize] = true;
    }
    Ok(present
        .iter()
        .enumerate()
        .filter(|(_, &s)| s)
        .map(|(i, _)| ctx.elem(i as u64).expect("index < q"))
        .collect())
}

fn distance_set_size(
    ctx: &FieldCtx,
    decoded: &[(FieldElem, FieldElem)],
    norm_inv: FieldElem,
    line: &LineRep,
) -> u64 {
    let mut present = vec![false; ctx.q() as usize];
    let mut count = 0u64;
    for &(x, y) in decoded {
        let num = line.value_at(ctx, x, y);
        let dist = ctx.mul(ctx.square(num), norm_inv);
        if !present[dist.index() as usize] {
            present[dist.index() as usize] = true;
            count += 1;
        }
    }
    count
}

/// Point-line distance theorem check. Two inequivalent premise constants
/// are in circulation for this statement; both are evaluated and reported,
/// and the verdict gates on the larger one:
/// `4(1-c^2) / (1/2 - 2(1-c^2))^2 * q^{8/3}`.
pub fn pl_distance_theorem_check(
    ctx: &FieldCtx,
    points: &[u64],
    lines: &[LineRep],
    c: f64,
) -> Result<ClaimReport> {
    let timer = Timer::start();
    let s = 1.0 - c * c;
    if !(0.0 < c && c < 1.0 && s < 0.25) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < c < 1 with 1 - c^2 < 1/4, got c = {c}"
        )));
    }
    for l in lines {
        if l.is_degenerate(ctx) {
            return Err(Error::DegenerateLine(l.a.index(), l.b.index(), l.c.index()));
        }
    }
    let q = ctx.q() as f64;
    let product = points.len() as f64 * lines.len() as f64;
    let threshold_statement = 4.0 * s / (0.5 - s).powi(2) * q.powf(8.0 / 3.0);
    let threshold_proof = 4.0 * s / (0.5 - 2.0 * s).powi(2) * q.powf(8.0 / 3.0);
    let premise = product >= threshold_proof;

    let decoded: Vec<(FieldElem, FieldElem)> = points
        .iter()
        .map(|&i| {
            let p = index_point(ctx, i, 2);
            (p[0], p[1])
        })
        .collect();
    let cutoff = (1.0 - c) * q;
    let good: u64 = lines
        .par_iter()
        .map(|l| {
            let norm_inv = ctx.inv(l.norm_coeff(ctx)).expect("non-degenerate");
            (distance_set_size(ctx, &decoded, norm_inv, l) as f64 > cutoff) as u64
        })
        .sum();
    let needed = (1.0 - c) * lines.len() as f64;
    Ok(timer.stamp(
        ClaimReport::new("pl_distance_theorem")
            .param("q", ctx.q())
            .param("c", c)
            .param("points", points.len())
            .param("lines", lines.len())
            .param("premise_lhs", product)
            .param("premise_rhs_statement", threshold_statement)
            .param("premise_rhs_proof", threshold_proof)
            .param("premise_statement_holds", product >= threshold_statement)
            .lhs(good)
            .rhs(needed)
            .premise(premise)
            .satisfied(!premise || good as f64 >= needed),
    ))
}

/// d-dimensional analogue with threshold `q^{4d/3}` over non-degenerate
/// hyperplanes.
pub fn hyperplane_distance_theorem_check(
    ctx: &FieldCtx,
    d: usize,
    points: &[u64],
    hyperplanes: &[HyperplaneRep],
    c: f64,
) -> Result<ClaimReport> {
    let timer = Timer::start();
    let s = 1.0 - c * c;
    if !(0.0 < c && c < 1.0 && s < 0.25) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < c < 1 with 1 - c^2 < 1/4, got c = {c}"
        )));
    }
    if d < 2 {
        return Err(Error::InvalidParameter(
            "hyperplane distances need d >= 2".into(),
        ));
    }
    for h in hyperplanes {
        if h.d() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: h.d(),
            });
        }
        if h.is_degenerate(ctx) {
            return Err(Error::DegenerateHyperplane);
        }
    }
    let q = ctx.q() as f64;
    let product = points.len() as f64 * hyperplanes.len() as f64;
    let threshold_statement = 4.0 * s / (0.5 - s).powi(2) * q.powf(4.0 * d as f64 / 3.0);
    let threshold_proof = 4.0 * s / (0.5 - 2.0 * s).powi(2) * q.powf(4.0 * d as f64 / 3.0);
    let premise = product >= threshold_proof;

    let decoded: Vec<Vec<FieldElem>> = points.iter().map(|&i| index_point(ctx, i, d)).collect();
    let cutoff = (1.0 - c) * q;
    let good: u64 = hyperplanes
        .par_iter()
        .map(|h| {
            let mut present = vec![false; ctx.q() as usize];
            let mut size = 0u64;
            let norm_inv = ctx.inv(h.norm_coeff(ctx)).expect("non-degenerate");
            for p in &decoded {
                let num = h.value_at(ctx, p);
                let dist = ctx.mul(ctx.square(num), norm_inv);
                if !present[dist.index() as usize] {
                    present[dist.index() as usize] = true;
                    size += 1;
                }
            }
            (size as f64 > cutoff) as u64
        })
        .sum();
    let needed = (1.0 - c) * hyperplanes.len() as f64;
    Ok(timer.stamp(
        ClaimReport::new("hyperplane_distance_theorem")
            .param("q", ctx.q())
            .param("d", d)
            .param("c", c)
            .param("points", points.len())
            .param("hyperplanes", hyperplanes.len())
            .param("premise_lhs", product)
            .param("premise_rhs_statement", threshold_statement)
            .param("premise_rhs_proof", threshold_proof)
            .lhs(good)
            .rhs(needed)
            .premise(premise)
            .satisfied(!premise || good as f64 >= needed),
    ))
}

#[derive(Clone, Debug)]
pub struct SpannedLines {
    /// Distinct lines through at least two points, normalized.
    pub lines: Vec<LineRep>,
    pub degenerate: u64,
}

/// All distinct lines spanned by pairs of `P` (canonical point indices),
/// normalized so the first nonzero coefficient is 1.
pub fn spanned_lines(ctx: &FieldCtx, points: &[u64]) -> Result<SpannedLines> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: points.len(),
        });
    }
    let decoded: Vec<(FieldElem, FieldElem)> = points
        .iter()
        .map(|&i| {
            let p = index_point(ctx, i, 2);
            (p[0], p[1])
        })
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    for (i, &(x1, y1)) in decoded.iter().enumerate() {
        for &(x2, y2) in &decoded[i + 1..] {
            if (x1, y1) == (x2, y2) {
                continue;
            }
            // normal (dy, -dx), offset through the first point
            let a = ctx.sub(y2, y1);
            let b = ctx.sub(x1, x2);
            let c = ctx.neg(ctx.add(ctx.mul(a, x1), ctx.mul(b, y1)));
            let line = LineRep { a, b, c }.normalized(ctx);
            seen.insert(line);
        }
    }
    let degenerate = seen.iter().filter(|l| l.is_degenerate(ctx)).count() as u64;
    Ok(SpannedLines {
        lines: seen.into_iter().collect(),
        degenerate,
    })
}

/// Spanned-line reports: the Beck-type count bound (`>= q^2/3` once
/// `|P| >= 3q`) and the degenerate ceiling (`<= 2q`, unconditional).
pub fn spanned_lines_check(ctx: &FieldCtx, points: &[u64]) -> Result<Vec<ClaimReport>> {
    let timer = Timer::start();
    let spanned = spanned_lines(ctx, points)?;
    let q = ctx.q();
    let premise = points.len() as u64 >= 3 * q;
    let count = spanned.lines.len() as u64;
    Ok(vec![
        timer.stamp(
            ClaimReport::new("spanned_lines_count")
                .param("q", q)
                .param("points", points.len())
                .lhs(count)
                .rhs(format!("{}/3", q * q))
                .premise(premise)
                .satisfied(!premise || 3 * count >= q * q),
        ),
        timer.stamp(
            ClaimReport::new("spanned_lines_degenerate")
                .param("q", q)
                .lhs(spanned.degenerate)
                .rhs(2 * q)
                .satisfied(spanned.degenerate <= 2 * q),
        ),
    ])
}

/// Every non-degenerate line, in normalized lexicographic order.
pub fn all_nondegenerate_lines(ctx: &FieldCtx) -> Vec<LineRep> {
    let mut out = Vec::new();
    for b in ctx.elements() {
        for c in ctx.elements() {
            let l = LineRep { a: ctx.one(), b, c };
            if !l.is_degenerate(ctx) {
                out.push(l);
            }
        }
    }
    for c in ctx.elements() {
        let l = LineRep {
            a: ctx.zero(),
            b: ctx.one(),
            c,
        };
        if !l.is_degenerate(ctx) {
            out.push(l);
        }
    }
    out
}

/// Every non-degenerate hyperplane of `F_q^d`, normalized (first nonzero
/// direction coefficient is 1).
pub fn all_nondegenerate_hyperplanes(ctx: &FieldCtx, d: usize) -> Vec<HyperplaneRep> {
    let mut out = Vec::new();
    for lead in 0..d {
        let free = d - lead - 1;
        let combos = ctx.q().pow(free as u32);
        for tail_idx in 0..combos {
            let tail = index_point(ctx, tail_idx, free);
            for constant in ctx.elements() {
                let mut coeffs = vec![ctx.zero(); lead];
                coeffs.push(ctx.one());
                coeffs.extend_from_slice(&tail);
                coeffs.push(constant);
                let h = HyperplaneRep { coeffs };
                if !h.is_degenerate(ctx) {
                    out.push(h);
                }
            }
        }
    }
    out
}
