//! Circle and sphere solvers plus distinct-object counting.
//!
//! A circle (center, r) in `F_q^2` or sphere (center, r) in `F_q^3` is the
//! zero set of `||x - center|| = r`; `r` is a field value, not a length, and
//! `r = 0` objects are legitimate (they are nonempty varieties). A circle
//! or sphere counts as *determined* by a point set `P` when it passes
//! through at least `min_points` points of `P` that do not all lie on one
//! line (resp. plane); both thresholds are configurable because weaker
//! readings of "determined" exist.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, FieldElem};
use crate::linalg;
use crate::varieties::index_point;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circle {
    pub center: [FieldElem; 2],
    pub r: FieldElem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sphere3 {
    pub center: [FieldElem; 3],
    pub r: FieldElem,
}

impl Circle {
    pub fn contains(&self, ctx: &FieldCtx, p: &[FieldElem]) -> bool {
        norm_to(ctx, &self.center, p) == self.r
    }
}

impl Sphere3 {
    pub fn contains(&self, ctx: &FieldCtx, p: &[FieldElem]) -> bool {
        norm_to(ctx, &self.center, p) == self.r
    }
}

fn norm_to(ctx: &FieldCtx, center: &[FieldElem], p: &[FieldElem]) -> FieldElem {
    debug_assert_eq!(center.len(), p.len());
    let mut acc = ctx.zero();
    for (&c, &x) in center.iter().zip(p) {
        acc = ctx.add(acc, ctx.square(ctx.sub(x, c)));
    }
    acc
}

/// The unique circle through three non-collinear points, by solving the
/// linear system in `(-2 e_1, -2 e_2, e_1^2 + e_2^2 - r)`.
pub fn circle_through(
    ctx: &FieldCtx,
    p1: &[FieldElem],
    p2: &[FieldElem],
    p3: &[FieldElem],
) -> Result<Circle> {
    let sol = solve_object(ctx, &[p1, p2, p3], 2).map_err(|e| match e {
        Error::SingularMatrix => Error::CollinearPoints,
        other => other,
    })?;
    Ok(Circle {
        center: [sol.center[0], sol.center[1]],
        r: sol.r,
    })
}

/// The unique sphere through four non-coplanar points.
pub fn sphere_through(
    ctx: &FieldCtx,
    p1: &[FieldElem],
    p2: &[FieldElem],
    p3: &[FieldElem],
    p4: &[FieldElem],
) -> Result<Sphere3> {
    let sol = solve_object(ctx, &[p1, p2, p3, p4], 3).map_err(|e| match e {
        Error::SingularMatrix => Error::CoplanarPoints,
        other => other,
    })?;
    Ok(Sphere3 {
        center: [sol.center[0], sol.center[1], sol.center[2]],
        r: sol.r,
    })
}

struct CenterRadius {
    center: Vec<FieldElem>,
    r: FieldElem,
}

/// Shared d+1 x d+1 solve: rows `(p_1, ..., p_d, 1)`, right-hand side
/// `-sum p_i^2`; unknowns `(-2 e_1, ..., -2 e_d, sum e_i^2 - r)`.
fn solve_object(ctx: &FieldCtx, pts: &[&[FieldElem]], dim: usize) -> Result<CenterRadius> {
    for p in pts {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.len(),
            });
        }
    }
    let n = dim + 1;
    let mut matrix: Vec<Vec<FieldElem>> = Vec::with_capacity(n);
    let mut rhs: Vec<FieldElem> = Vec::with_capacity(n);
    for p in pts {
        let mut row: Vec<FieldElem> = p.to_vec();
        row.push(ctx.one());
        matrix.push(row);
        let mut sq = ctx.zero();
        for &c in *p {
            sq = ctx.add(sq, ctx.square(c));
        }
        rhs.push(ctx.neg(sq));
    }
    let sol = linalg::solve(ctx, &mut matrix, &mut rhs)?;
    let half_neg = ctx.neg(
        ctx.inv(ctx.from_int(2))
            .expect("2 != 0 in odd characteristic"),
    );
    let center: Vec<FieldElem> = sol[..dim].iter().map(|&v| ctx.mul(v, half_neg)).collect();
    let mut c2 = ctx.zero();
    for &c in &center {
        c2 = ctx.add(c2, ctx.square(c));
    }
    Ok(CenterRadius {
        center,
        r: ctx.sub(c2, sol[dim]),
    })
}

/// What counts as a determined object.
#[derive(Clone, Copy, Debug)]
pub struct DeterminedConfig {
    /// Minimum incident points of `P` (3 for circles, 4 for spheres).
    pub min_points: usize,
    /// Additionally require the incident points not to be contained in a
    /// line (circles) / plane (spheres).
    pub require_witness: bool,
}

impl DeterminedConfig {
    pub fn circles() -> Self {
        DeterminedConfig {
            min_points: 3,
            require_witness: true,
        }
    }

    pub fn spheres() -> Self {
        DeterminedConfig {
            min_points: 4,
            require_witness: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinctCount {
    pub objects: u64,
    pub radii: u64,
}

/// Scans all `q^{d+1}` candidate (center, r) objects of dimension `dim`
/// against `P`, counting determined objects and their distinct radii.
pub fn distinct_objects(
    ctx: &FieldCtx,
    dim: usize,
    points: &[Vec<FieldElem>],
    cfg: DeterminedConfig,
    budget_bytes: u64,
) -> Result<DistinctCount> {
    if dim != 2 && dim != 3 {
        return Err(Error::InvalidParameter(
            "object dimension must be 2 or 3".into(),
        ));
    }
    for p in points {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.len(),
            });
        }
    }
    let q = ctx.q();
    let candidates = q.pow(dim as u32 + 1);
    let needed = candidates.saturating_mul(8);
    if needed > budget_bytes {
        return Err(Error::BudgetExceeded {
            needed,
            budget: budget_bytes,
        });
    }
    let centers = q.pow(dim as u32);
    let (objects, radii_mask) = (0..centers)
        .into_par_iter()
        .map(|c_idx| {
            let center = index_point(ctx, c_idx, dim);
            let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); q as usize];
            for (pi, p) in points.iter().enumerate() {
                let r = norm_to(ctx, &center, p);
                buckets[r.index() as usize].push(pi);
            }
            let mut local_count = 0u64;
            let mut local_radii = vec![false; q as usize];
            for (r, bucket) in buckets.iter().enumerate() {
                if is_determined(ctx, dim, points, bucket, cfg) {
                    local_count += 1;
                    local_radii[r] = true;
                }
            }
            (local_count, local_radii)
        })
        .reduce(
            || (0u64, vec![false; q as usize]),
            |(ca, mut ra), (cb, rb)| {
                for (a, b) in ra.iter_mut().zip(rb) {
                    *a |= b;
                }
                (ca + cb, ra)
            },
        );
    Ok(DistinctCount {
        objects,
        radii: radii_mask.iter().filter(|&&x| x).count() as u64,
    })
}

fn is_determined(
    ctx: &FieldCtx,
    dim: usize,
    points: &[Vec<FieldElem>],
    incident: &[usize],
    cfg: DeterminedConfig,
) -> bool {
    if incident.len() < cfg.min_points {
        return false;
    }
    if !cfg.require_witness {
        return true;
    }
    // affine rank dim <=> some dim+1 incident points are affinely independent
    let base = &points[incident[0]];
    let diffs: Vec<Vec<FieldElem>> = incident[1..]
        .iter()
        .map(|&pi| {
            points[pi]
                .iter()
                .zip(base)
                .map(|(&a, &b)| ctx.sub(a, b))
                .collect()
        })
        .collect();
    linalg::rank(ctx, &diffs) >= dim
}

/// Number of circles in `F_q^2` determined by `P`.
pub fn distinct_circles(
    ctx: &FieldCtx,
    points: &[Vec<FieldElem>],
    cfg: DeterminedConfig,
    budget_bytes: u64,
) -> Result<u64> {
    Ok(distinct_objects(ctx, 2, points, cfg, budget_bytes)?.objects)
}

/// Number of spheres in `F_q^3` determined by `P`.
pub fn distinct_spheres(
    ctx: &FieldCtx,
    points: &[Vec<FieldElem>],
    cfg: DeterminedConfig,
    budget_bytes: u64,
) -> Result<u64> {
    Ok(distinct_objects(ctx, 3, points, cfg, budget_bytes)?.objects)
}

/// Number of distinct radii among the determined objects of `P`.
pub fn distinct_radii(
    ctx: &FieldCtx,
    dim: usize,
    points: &[Vec<FieldElem>],
    cfg: DeterminedConfig,
    budget_bytes: u64,
) -> Result<u64> {
    Ok(distinct_objects(ctx, dim, points, cfg, budget_bytes)?.radii)
}

/// Exhaustive scan of all `q^4` candidate spheres for those containing all
/// four given points. Independent of the linear solver.
pub fn exhaustive_spheres_containing(ctx: &FieldCtx, pts: &[&[FieldElem]; 4]) -> Vec<Sphere3> {
    let q = ctx.q();
    let mut out = Vec::new();
    for c_idx in 0..q.pow(3) {
        let center = index_point(ctx, c_idx, 3);
        for r_idx in 0..q {
            let sphere = Sphere3 {
                center: [center[0], center[1], center[2]],
                r: ctx.elem(r_idx).expect("< q"),
            };
            if pts.iter().all(|p| sphere.contains(ctx, p)) {
                out.push(sphere);
            }
        }
    }
    out
}
