//! The point-variety incidence graph and its bound experiments.
//!
//! For a family with parameters `(d, k)` the graph has the `q^{d+k}` ambient
//! points as part A (canonical lexicographic order) and the `q^{(d+1)k}`
//! coefficient tuples as part B; a point and a tuple are joined exactly when
//! the point lies on the tuple's `V`-form variety. The graph is biregular
//! with degrees `(q^{dk}, q^d)` and satisfies the exact cube identity
//! `M^3 = q^{dk} M + (q^d - 1) q^{k(d-1)} K`, which is what pins its third
//! eigenvalue to `q^{dk/2}`.

use crate::bigraph::BipartiteGraph;
use crate::error::{Error, Result};
use crate::ffield::FieldCtx;
use crate::report::{exact_ratio_string, ClaimReport, Timer};
use crate::rng::SeededRng;
use crate::varieties::{index_point, membership_v, membership_w, ParamTuple, VarietyFamily};
use crate::RHS_SLACK;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IncidenceMode {
    /// Points live in `F_q^{d+k}`, varieties are the graph-shaped `V` form.
    V,
    /// Points live in `F_q^d`, varieties are the zero-set `W` form.
    W,
}

/// One incidence experiment: a point subset and a tuple subset, both as
/// sorted canonical indices.
#[derive(Clone, Debug)]
pub struct IncidenceExperiment {
    pub mode: IncidenceMode,
    pub points: Vec<u64>,
    pub tuples: Vec<u64>,
}

impl IncidenceExperiment {
    /// Index space the points are drawn from.
    pub fn point_space(&self, ctx: &FieldCtx, family: &VarietyFamily) -> u64 {
        match self.mode {
            IncidenceMode::V => family.ambient_point_count(ctx),
            IncidenceMode::W => family.base_point_count(ctx),
        }
    }
}

/// Builds the full point-variety graph and audits its degrees.
pub fn build_point_variety_graph(
    ctx: &FieldCtx,
    family: &VarietyFamily,
    budget_bytes: u64,
) -> Result<BipartiteGraph> {
    let n_a = family.ambient_point_count(ctx);
    let n_b = family.tuple_count(ctx);
    let mut g = BipartiteGraph::new(n_a as usize, n_b as usize, budget_bytes)?;
    let base = family.base_point_count(ctx);
    let q_k = ctx.q().pow(family.k() as u32);
    for t in 0..n_b {
        let params = ParamTuple::from_index(ctx, family, t);
        for x_idx in 0..base {
            let x = index_point(ctx, x_idx, family.d());
            // ambient index of (x, f_1(x), ..., f_k(x))
            let mut idx = x_idx * q_k;
            let mut scale = q_k;
            for i in 0..family.k() {
                let fi = crate::varieties::eval_f(ctx, family, i, &x, params.vector(i))?;
                scale /= ctx.q();
                idx += fi.index() * scale;
            }
            g.set_edge(idx as usize, t as usize);
        }
    }
    let (deg_a, deg_b) = g.degrees()?;
    let want_a = ctx.q().pow((family.d() * family.k()) as u32);
    let want_b = base;
    if deg_a != want_a || deg_b != want_b {
        return Err(Error::NotBiregular(format!(
            "expected degrees ({want_a}, {want_b}), got ({deg_a}, {deg_b})"
        )));
    }
    Ok(g)
}

/// Exact `|{(p, v) in P x V : p in v}|` by direct membership testing.
pub fn count_incidences(
    ctx: &FieldCtx,
    family: &VarietyFamily,
    exp: &IncidenceExperiment,
) -> Result<u64> {
    let n = match exp.mode {
        IncidenceMode::V => family.d() + family.k(),
        IncidenceMode::W => family.d(),
    };
    let space = exp.point_space(ctx, family);
    let tuple_space = family.tuple_count(ctx);
    let points: Vec<_> = exp
        .points
        .iter()
        .map(|&i| {
            if i >= space {
                Err(Error::ElementOutOfRange { index: i, q: space })
            } else {
                Ok(index_point(ctx, i, n))
            }
        })
        .collect::<Result<_>>()?;
    let mut total = 0u64;
    for &t in &exp.tuples {
        if t >= tuple_space {
            return Err(Error::ElementOutOfRange {
                index: t,
                q: tuple_space,
            });
        }
        let params = ParamTuple::from_index(ctx, family, t);
        for p in &points {
            let hit = match exp.mode {
                IncidenceMode::V => membership_v(ctx, family, &params, p)?,
                IncidenceMode::W => membership_w(ctx, family, &params, p)?,
            };
            total += hit as u64;
        }
    }
    Ok(total)
}

/// Checks `|I - |P||V| / q^k| <= q^{dk/2} sqrt(|P||V|)` plus the existence
/// threshold (`|P||V| >= 2 q^{k(d+2)}` forces at least one incidence).
/// Returns the bound report followed by the existence report.
pub fn verify_incidence_bound(
    ctx: &FieldCtx,
    family: &VarietyFamily,
    exp: &IncidenceExperiment,
    seed: Option<u64>,
) -> Result<Vec<ClaimReport>> {
    let timer = Timer::start();
    let incidences = count_incidences(ctx, family, exp)?;
    let (d, k) = (family.d() as u32, family.k() as u32);
    let q = ctx.q();
    let q_k = q.pow(k) as u128;
    let product = exp.points.len() as u128 * exp.tuples.len() as u128;

    let lhs_num = (incidences as u128 * q_k).abs_diff(product);
    let lhs = lhs_num as f64 / q_k as f64;
    let rhs = (q as f64).powi((d * k) as i32).sqrt() * (product as f64).sqrt();

    let mut bound = ClaimReport::new("incidence_bound")
        .param("q", q)
        .param("d", d)
        .param("k", k)
        .param("mode", format!("{:?}", exp.mode))
        .param("points", exp.points.len())
        .param("varieties", exp.tuples.len())
        .param("incidences", incidences)
        .lhs(exact_ratio_string(lhs_num, q_k))
        .rhs(rhs)
        .satisfied(lhs <= rhs + RHS_SLACK);

    let threshold = 2.0 * (q as f64).powi((k * (d + 2)) as i32);
    let premise = product as f64 >= threshold;
    let mut existence = ClaimReport::new("incidence_existence")
        .param("q", q)
        .param("d", d)
        .param("k", k)
        .param("product", product)
        .param("threshold", threshold)
        .lhs(incidences)
        .rhs(1)
        .premise(premise)
        .satisfied(!premise || incidences >= 1);
    if let Some(s) = seed {
        bound = bound.seed(s);
        existence = existence.seed(s);
    }
    Ok(vec![timer.stamp(bound), timer.stamp(existence)])
}

/// Lifts a `W`-form experiment to the `V` form over `F_q^{d+k}` by sending
/// each base point `p` to `p x (0, ..., 0)`; incidence counts agree.
pub fn lift_w_to_v(
    ctx: &FieldCtx,
    family: &VarietyFamily,
    exp: &IncidenceExperiment,
) -> Result<IncidenceExperiment> {
    if exp.mode != IncidenceMode::W {
        return Err(Error::InvalidParameter(
            "lift expects a W-form experiment".into(),
        ));
    }
    let q_k = ctx.q().pow(family.k() as u32);
    Ok(IncidenceExperiment {
        mode: IncidenceMode::V,
        points: exp.points.iter().map(|&i| i * q_k).collect(),
        tuples: exp.tuples.clone(),
    })
}

/// Seeded random experiment: nonempty subsets of the point and tuple spaces.
pub fn sample_experiment(
    ctx: &FieldCtx,
    family: &VarietyFamily,
    mode: IncidenceMode,
    rng: &mut SeededRng,
) -> IncidenceExperiment {
    let point_space = match mode {
        IncidenceMode::V => family.ambient_point_count(ctx),
        IncidenceMode::W => family.base_point_count(ctx),
    };
    let tuple_space = family.tuple_count(ctx);
    IncidenceExperiment {
        mode,
        points: rng.nonempty_subset(point_space),
        tuples: rng.nonempty_subset(tuple_space),
    }
}

/// Walk-identity coefficients forced by the graph structure:
/// `alpha = q^{dk}`, `beta = (q^d - 1) q^{k(d-1)}`.
pub fn cube_identity_coefficients(ctx: &FieldCtx, family: &VarietyFamily) -> (i128, i128) {
    let q = ctx.q() as i128;
    let (d, k) = (family.d() as u32, family.k() as u32);
    let alpha = q.pow(d * k);
    let beta = (q.pow(d) - 1) * q.pow(k * (d - 1));
    (alpha, beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::{verify_walk_identity, VerifyMode, WalkIdentitySpec};
    use crate::varieties::sphere_as_w;

    fn f(p: u64) -> FieldCtx {
        FieldCtx::new(p, 1).unwrap()
    }

    #[test]
    fn graph_shapes_and_degrees() {
        let f3 = f(3);
        for (d, k, na, nb, da, db) in [
            (1usize, 1usize, 9usize, 9usize, 3u64, 3u64),
            (2, 1, 27, 27, 9, 9),
            (1, 2, 27, 81, 9, 3),
        ] {
            let fam = VarietyFamily::flats(&f3, d, k).unwrap();
            let g = build_point_variety_graph(&f3, &fam, u64::MAX).unwrap();
            assert_eq!((g.n_a(), g.n_b()), (na, nb), "d={d} k={k}");
            assert_eq!(g.degrees().unwrap(), (da, db), "d={d} k={k}");
        }
    }

    #[test]
    fn cube_identity_on_line_graph() {
        let f3 = f(3);
        let fam = VarietyFamily::flats(&f3, 1, 1).unwrap();
        let g = build_point_variety_graph(&f3, &fam, u64::MAX).unwrap();
        let (alpha, beta) = cube_identity_coefficients(&f3, &fam);
        assert_eq!((alpha, beta), (3, 2));
        let spec = WalkIdentitySpec {
            alpha,
            beta,
            gamma: 0,
            aux: None,
        };
        let report = verify_walk_identity(&g, &spec, VerifyMode::Full).unwrap();
        assert!(report.satisfied, "{report:?}");
    }

    #[test]
    fn incidence_counts() {
        let f3 = f(3);
        let fam = VarietyFamily::flats(&f3, 1, 1).unwrap();
        let all = IncidenceExperiment {
            mode: IncidenceMode::V,
            points: (0..9).collect(),
            tuples: (0..9).collect(),
        };
        assert_eq!(count_incidences(&f3, &fam, &all).unwrap(), 27);
        let one_point = IncidenceExperiment {
            mode: IncidenceMode::V,
            points: vec![4],
            tuples: (0..9).collect(),
        };
        assert_eq!(count_incidences(&f3, &fam, &one_point).unwrap(), 3);
        let empty = IncidenceExperiment {
            mode: IncidenceMode::V,
            points: (0..9).collect(),
            tuples: vec![],
        };
        assert_eq!(count_incidences(&f3, &fam, &empty).unwrap(), 0);
    }

    #[test]
    fn counts_match_graph_edges() {
        let f5 = f(5);
        let fam = VarietyFamily::spheres(&f5, 2).unwrap();
        let g = build_point_variety_graph(&f5, &fam, u64::MAX).unwrap();
        let mut rng = SeededRng::new(99);
        for _ in 0..20 {
            let exp = sample_experiment(&f5, &fam, IncidenceMode::V, &mut rng);
            let direct = count_incidences(&f5, &fam, &exp).unwrap();
            let via_graph = g.edges_between(&exp.points, &exp.tuples).unwrap();
            assert_eq!(direct, via_graph);
        }
    }

    #[test]
    fn full_sets_have_zero_deviation() {
        let f3 = f(3);
        let fam = VarietyFamily::flats(&f3, 1, 1).unwrap();
        let all = IncidenceExperiment {
            mode: IncidenceMode::V,
            points: (0..9).collect(),
            tuples: (0..9).collect(),
        };
        let reports = verify_incidence_bound(&f3, &fam, &all, None).unwrap();
        assert_eq!(reports[0].lhs, "0");
        assert!(reports[0].satisfied);
        // 81 >= 2 * 3^3 = 54, so the existence premise is active and I >= 1
        assert_eq!(reports[1].premise_satisfied, Some(true));
        assert!(reports[1].satisfied);
    }

    #[test]
    fn lift_preserves_counts() {
        let f5 = f(5);
        let (fam, params) =
            sphere_as_w(&f5, &[f5.elem(1).unwrap(), f5.elem(2).unwrap()], f5.one()).unwrap();
        let tuple_idx = params.to_index(&f5);
        let w_exp = IncidenceExperiment {
            mode: IncidenceMode::W,
            points: (0..25).collect(),
            tuples: vec![tuple_idx],
        };
        let v_exp = lift_w_to_v(&f5, &fam, &w_exp).unwrap();
        assert_eq!(
            count_incidences(&f5, &fam, &w_exp).unwrap(),
            count_incidences(&f5, &fam, &v_exp).unwrap()
        );

        let empty = IncidenceExperiment {
            mode: IncidenceMode::W,
            points: vec![],
            tuples: vec![tuple_idx],
        };
        let lifted = lift_w_to_v(&f5, &fam, &empty).unwrap();
        assert_eq!(count_incidences(&f5, &fam, &lifted).unwrap(), 0);

        // a single point on a single sphere lifts to a single incidence
        let on_sphere = IncidenceExperiment {
            mode: IncidenceMode::W,
            points: vec![crate::varieties::point_index(
                &f5,
                &[f5.elem(2).unwrap(), f5.elem(2).unwrap()],
            )],
            tuples: vec![tuple_idx],
        };
        assert_eq!(count_incidences(&f5, &fam, &on_sphere).unwrap(), 1);
        let lifted = lift_w_to_v(&f5, &fam, &on_sphere).unwrap();
        assert_eq!(count_incidences(&f5, &fam, &lifted).unwrap(), 1);
    }

    #[test]
    fn lift_rejects_v_mode() {
        let f3 = f(3);
        let fam = VarietyFamily::flats(&f3, 1, 1).unwrap();
        let exp = IncidenceExperiment {
            mode: IncidenceMode::V,
            points: vec![],
            tuples: vec![],
        };
        assert!(lift_w_to_v(&f3, &fam, &exp).is_err());
    }

    #[test]
    fn sampled_bounds_hold_on_small_config() {
        let f3 = f(3);
        let fam = VarietyFamily::flats(&f3, 2, 1).unwrap();
        let mut rng = SeededRng::new(2024);
        for i in 0..50 {
            let exp = sample_experiment(&f3, &fam, IncidenceMode::V, &mut rng);
            let reports = verify_incidence_bound(&f3, &fam, &exp, Some(2024)).unwrap();
            assert!(reports[0].satisfied, "sample {i}: {:?}", reports[0]);
            assert!(reports[1].satisfied, "sample {i}: {:?}", reports[1]);
        }
    }
}
