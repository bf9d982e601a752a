//! Distance and form evaluation plus the pinned-value experiments.
//!
//! A non-degenerate form is `F(x, y) = g1(x) + g2(y) + x^b M y^c` with `M`
//! invertible and the `c_i` coprime to `q - 1`. Pinning `y` and collecting
//! `F(p, y)` over a point set `P` yields the pinned value set; the checks
//! here verify that large `P` forces most pins to see almost all of `F_q`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, FieldElem};
use crate::linalg;
use crate::report::{ClaimReport, Timer};
use crate::varieties::{index_point, point_index, sum_of_squares_table};

/// `F(x, y) = g1(x) + g2(y) + (x_1^{b_1}, ..., x_d^{b_d}) M (y_1^{c_1}, ..., y_d^{c_d})^T`.
#[derive(Clone, Debug)]
pub struct NonDegenerateForm {
    d: usize,
    g1: Vec<FieldElem>,
    g2: Vec<FieldElem>,
    b: Vec<u32>,
    c: Vec<u32>,
    /// Row-major `d x d`, verified invertible at construction.
    m: Vec<FieldElem>,
}

impl NonDegenerateForm {
    pub fn new(
        ctx: &FieldCtx,
        d: usize,
        g1: Vec<FieldElem>,
        g2: Vec<FieldElem>,
        b: Vec<u32>,
        c: Vec<u32>,
        m: Vec<FieldElem>,
    ) -> Result<NonDegenerateForm> {
        if d == 0 {
            return Err(Error::InvalidParameter("form needs d >= 1".into()));
        }
        let table_len = ctx.q().pow(d as u32) as usize;
        for table in [&g1, &g2] {
            if table.len() != table_len {
                return Err(Error::DimensionMismatch {
                    expected: table_len,
                    got: table.len(),
                });
            }
        }
        if b.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: b.len(),
            });
        }
        if c.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: c.len(),
            });
        }
        let q1 = ctx.q() - 1;
        for &exp in &c {
            if exp == 0 || gcd(exp as u64, q1) != 1 {
                return Err(Error::ExponentNotCoprime {
                    exponent: exp,
                    q_minus_one: q1,
                });
            }
        }
        if b.contains(&0) {
            return Err(Error::InvalidParameter(
                "b exponents must be positive".into(),
            ));
        }
        if m.len() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                got: m.len(),
            });
        }
        let rows: Vec<Vec<FieldElem>> = m.chunks(d).map(|r| r.to_vec()).collect();
        if !linalg::is_invertible(ctx, &rows) {
            return Err(Error::SingularMatrix);
        }
        Ok(NonDegenerateForm { d, g1, g2, b, c, m })
    }

    /// The distance form `F(x, y) = ||x - y||`: `g1 = g2 = sum of squares`,
    /// `b = c = (1, ..., 1)`, `M = -2 I`.
    pub fn distance(ctx: &FieldCtx, d: usize) -> Result<NonDegenerateForm> {
        let sos = sum_of_squares_table(ctx, d);
        let minus_two = ctx.from_int(-2);
        let mut m = vec![ctx.zero(); d * d];
        for i in 0..d {
            m[i * d + i] = minus_two;
        }
        NonDegenerateForm::new(ctx, d, sos.clone(), sos, vec![1; d], vec![1; d], m)
    }

    pub fn d(&self) -> usize {
        self.d
    }
}

/// `||x - y|| = (x_1 - y_1)^2 + ... + (x_d - y_d)^2` (a value, not a metric).
pub fn norm_distance(ctx: &FieldCtx, x: &[FieldElem], y: &[FieldElem]) -> Result<FieldElem> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    let mut acc = ctx.zero();
    for (&a, &b) in x.iter().zip(y) {
        acc = ctx.add(acc, ctx.square(ctx.sub(a, b)));
    }
    Ok(acc)
}

#[allow(clippy::needless_range_loop)]
pub fn eval_form(
    ctx: &FieldCtx,
    form: &NonDegenerateForm,
    x: &[FieldElem],
    y: &[FieldElem],
) -> Result<FieldElem> {
    let d = form.d;
    if x.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: x.len(),
        });
    }
    if y.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: y.len(),
        });
    }
    let mut acc = ctx.add(
        form.g1[point_index(ctx, x) as usize],
        form.g2[point_index(ctx, y) as usize],
    );
    let y_pow: Vec<FieldElem> = y
        .iter()
        .zip(&form.c)
        .map(|(&yi, &ci)| ctx.pow(yi, ci as u64))
        .collect();
    for i in 0..d {
        let xi = ctx.pow(x[i], form.b[i] as u64);
        if xi == ctx.zero() {
            continue;
        }
        let mut row = ctx.zero();
        for j in 0..d {
            row = ctx.add(row, ctx.mul(form.m[i * d + j], y_pow[j]));
        }
        acc = ctx.add(acc, ctx.mul(xi, row));
    }
    Ok(acc)
}

/// `Delta_F(P, y) = {F(p, y) : p in P}` as a sorted element list.
pub fn pinned_set(
    ctx: &FieldCtx,
    form: &NonDegenerateForm,
    points: &[u64],
    y: &[FieldElem],
) -> Result<Vec<FieldElem>> {
    let mut present = vec![false; ctx.q() as usize];
    for &p_idx in points {
        let p = index_point(ctx, p_idx, form.d);
        let v = eval_form(ctx, form, &p, y)?;
        present[v.index() as usize] = true;
    }
    Ok(present
        .iter()
        .enumerate()
        .filter(|(_, &s)| s)
        .map(|(i, _)| ctx.elem(i as u64).expect("index < q"))
        .collect())
}

fn pinned_size(
    ctx: &FieldCtx,
    form: &NonDegenerateForm,
    points: &[Vec<FieldElem>],
    y: &[FieldElem],
) -> Result<u64> {
    let mut present = vec![false; ctx.q() as usize];
    let mut count = 0u64;
    for p in points {
        let v = eval_form(ctx, form, p, y)?;
        if !present[v.index() as usize] {
            present[v.index() as usize] = true;
            count += 1;
        }
    }
    Ok(count)
}

/// Pinned-value theorem check: if `|P| >= (sqrt(1-c^2)/c^2) q^{(d+1)/2}`
/// then the pins `y` with `|Delta_F(P, y)| > (1-c) q` number at least
/// `(1-c)|P|`. Membership in the good-pin set uses the strict inequality;
/// the non-strict count is reported alongside.
pub fn pinned_theorem_check(
    ctx: &FieldCtx,
    form: &NonDegenerateForm,
    points: &[u64],
    c: f64,
) -> Result<ClaimReport> {
    let timer = Timer::start();
    if !(0.0 < c && c < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "c must lie in (0,1), got {c}"
        )));
    }
    let q = ctx.q() as f64;
    let d = form.d as f64;
    let premise_rhs = ((1.0 - c * c).sqrt() / (c * c)) * q.powf((d + 1.0) / 2.0);
    let premise = points.len() as f64 >= premise_rhs;

    let decoded: Vec<Vec<FieldElem>> = points
        .iter()
        .map(|&i| index_point(ctx, i, form.d))
        .collect();
    let cutoff = (1.0 - c) * q;
    let mut strict = 0u64;
    let mut loose = 0u64;
    for y in &decoded {
        let size = pinned_size(ctx, form, &decoded, y)? as f64;
        strict += (size > cutoff) as u64;
        loose += (size >= cutoff) as u64;
    }
    let needed = (1.0 - c) * points.len() as f64;
    let conclusion = strict as f64 >= needed;
    Ok(timer.stamp(
        ClaimReport::new("pinned_values")
            .param("q", ctx.q())
            .param("d", form.d)
            .param("c", c)
            .param("points", points.len())
            .param("premise_lhs", points.len())
            .param("premise_rhs", premise_rhs)
            .param("pins_strict", strict)
            .param("pins_loose", loose)
            .lhs(strict)
            .rhs(needed)
            .premise(premise)
            .satisfied(!premise || conclusion),
    ))
}

/// Two-set pinned check: if `|P||Q| >= 2 sqrt(3) q^{d+1}` then at least
/// `|P|/2` pins `y` in `P` have `|Delta_F(Q, y)| >= q/2`.
pub fn two_set_pinned_check(
    ctx: &FieldCtx,
    form: &NonDegenerateForm,
    points_p: &[u64],
    points_q: &[u64],
) -> Result<ClaimReport> {
    let timer = Timer::start();
    let q = ctx.q() as f64;
    let d = form.d;
    let premise_rhs = 2.0 * 3f64.sqrt() * q.powi(d as i32 + 1);
    let product = points_p.len() as f64 * points_q.len() as f64;
    let d_ok = d >= 2;
    let premise = d_ok && product >= premise_rhs;

    let decoded_q: Vec<Vec<FieldElem>> = points_q.iter().map(|&i| index_point(ctx, i, d)).collect();
    let mut good = 0u64;
    for &p_idx in points_p {
        let y = index_point(ctx, p_idx, d);
        let size = pinned_size(ctx, form, &decoded_q, &y)? as f64;
        good += (size >= q / 2.0) as u64;
    }
    let needed = points_p.len() as f64 / 2.0;
    let mut report = ClaimReport::new("two_set_pinned")
        .param("q", ctx.q())
        .param("d", d)
        .param("p_size", points_p.len())
        .param("q_size", points_q.len())
        .param("premise_lhs", product)
        .param("premise_rhs", premise_rhs)
        .lhs(good)
        .rhs(needed)
        .premise(premise)
        .satisfied(!premise || good as f64 >= needed);
    if !d_ok {
        report = report.param("d_below_2", true);
    }
    Ok(timer.stamp(report))
}

/// A quadratic form in diagonal normal shape: alternating `+1, -1` signs
/// with `epsilon` (either `1` or the canonical non-square) replacing the
/// last sign magnitude.
#[derive(Clone, Debug)]
pub struct QuadraticForm {
    d: usize,
    diag: Vec<FieldElem>,
    epsilon: FieldElem,
}

impl QuadraticForm {
    pub fn eval(&self, ctx: &FieldCtx, x: &[FieldElem]) -> Result<FieldElem> {
        if x.len() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: x.len(),
            });
        }
        let mut acc = ctx.zero();
        for (&xi, &coef) in x.iter().zip(&self.diag) {
            acc = ctx.add(acc, ctx.mul(coef, ctx.square(xi)));
        }
        Ok(acc)
    }

    pub fn epsilon(&self) -> FieldElem {
        self.epsilon
    }

    pub fn diagonal(&self) -> &[FieldElem] {
        &self.diag
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Epsilon {
    One,
    /// The canonical (smallest-index) non-square of the field.
    NonSquare,
}

/// Builds the normal-form quadratic `x_1^2 - x_2^2 + ...` (with the epsilon
/// factor on the final square) together with the non-degenerate form of
/// `Q(x - y)`: `g1 = Q(x)`, `g2 = Q(y)`, `M = -2 diag(signs)`.
pub fn quadratic_form(
    ctx: &FieldCtx,
    d: usize,
    epsilon: Epsilon,
) -> Result<(QuadraticForm, NonDegenerateForm)> {
    if d == 0 {
        return Err(Error::InvalidParameter(
            "quadratic form needs d >= 1".into(),
        ));
    }
    let eps = match epsilon {
        Epsilon::One => ctx.one(),
        Epsilon::NonSquare => ctx.smallest_nonsquare(),
    };
    let mut diag = Vec::with_capacity(d);
    for i in 0..d {
        let sign_plus = i % 2 == 0;
        let last = i == d - 1;
        let coef = match (sign_plus, last) {
            (true, false) => ctx.one(),
            (false, false) => ctx.neg(ctx.one()),
            // d odd ends on a +eps term, d even on a -eps term
            (true, true) => eps,
            (false, true) => ctx.neg(eps),
        };
        diag.push(coef);
    }
    let quad = QuadraticForm {
        d,
        diag: diag.clone(),
        epsilon: eps,
    };

    let n = ctx.q().pow(d as u32);
    let mut table = Vec::with_capacity(n as usize);
    for idx in 0..n {
        let x = index_point(ctx, idx, d);
        table.push(quad.eval(ctx, &x)?);
    }
    let minus_two = ctx.from_int(-2);
    let mut m = vec![ctx.zero(); d * d];
    for (i, &coef) in diag.iter().enumerate() {
        m[i * d + i] = ctx.mul(minus_two, coef);
    }
    let form = NonDegenerateForm::new(ctx, d, table.clone(), table, vec![1; d], vec![1; d], m)?;
    Ok((quad, form))
}

/// Histogram of pinned set sizes over all pins in P, for reporting.
pub fn pinned_size_histogram(
    ctx: &FieldCtx,
    form: &NonDegenerateForm,
    points: &[u64],
) -> Result<BTreeMap<u64, u64>> {
    let decoded: Vec<Vec<FieldElem>> = points
        .iter()
        .map(|&i| index_point(ctx, i, form.d))
        .collect();
    let mut hist = BTreeMap::new();
    for y in &decoded {
        let size = pinned_size(ctx, form, &decoded, y)?;
        *hist.entry(size).or_insert(0) += 1;
    }
    Ok(hist)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::varieties::zero_table;

    fn f(p: u64) -> FieldCtx {
        FieldCtx::new(p, 1).unwrap()
    }

    fn els(ctx: &FieldCtx, v: &[u64]) -> Vec<FieldElem> {
        v.iter().map(|&x| ctx.elem(x).unwrap()).collect()
    }

    #[test]
    fn norm_distance_examples() {
        let f5 = f(5);
        let v = norm_distance(&f5, &els(&f5, &[0, 0]), &els(&f5, &[1, 2])).unwrap();
        assert_eq!(v.index(), 0);
        let v = norm_distance(&f5, &els(&f5, &[3, 4]), &els(&f5, &[3, 4])).unwrap();
        assert_eq!(v.index(), 0);
        let f7 = f(7);
        let v = norm_distance(&f7, &els(&f7, &[1, 2, 3]), &els(&f7, &[0, 0, 0])).unwrap();
        assert_eq!(v.index(), 0); // 1 + 4 + 9 = 14 = 0 mod 7
        assert!(norm_distance(&f7, &els(&f7, &[1]), &els(&f7, &[1, 2])).is_err());
    }

    #[test]
    fn eval_form_identity_matrix() {
        let f5 = f(5);
        // g = 0, M = I, b = c = (1,1): F(x,y) = x . y
        let mut m = vec![f5.zero(); 4];
        m[0] = f5.one();
        m[3] = f5.one();
        let form = NonDegenerateForm::new(
            &f5,
            2,
            zero_table(&f5, 2),
            zero_table(&f5, 2),
            vec![1, 1],
            vec![1, 1],
            m,
        )
        .unwrap();
        let v = eval_form(&f5, &form, &els(&f5, &[1, 2]), &els(&f5, &[3, 4])).unwrap();
        assert_eq!(v.index(), 1); // 3 + 8 = 11 = 1 mod 5
    }

    #[test]
    fn distance_form_matches_norm_distance() {
        for (p, d) in [(3u64, 2usize), (5, 2), (3, 3), (7, 2)] {
            let ctx = f(p);
            let form = NonDegenerateForm::distance(&ctx, d).unwrap();
            let n = ctx.q().pow(d as u32);
            for xi in 0..n {
                let x = index_point(&ctx, xi, d);
                for yi in 0..n {
                    let y = index_point(&ctx, yi, d);
                    assert_eq!(
                        eval_form(&ctx, &form, &x, &y).unwrap(),
                        norm_distance(&ctx, &x, &y).unwrap(),
                        "q={p} d={d} x={xi} y={yi}"
                    );
                }
            }
        }
    }

    #[test]
    fn singular_matrix_rejected() {
        let f5 = f(5);
        let m = vec![f5.one(), f5.one(), f5.one(), f5.one()];
        let err = NonDegenerateForm::new(
            &f5,
            2,
            zero_table(&f5, 2),
            zero_table(&f5, 2),
            vec![1, 1],
            vec![1, 1],
            m,
        )
        .unwrap_err();
        assert_eq!(err, Error::SingularMatrix);
    }

    #[test]
    fn c_exponent_gcd_rejected() {
        let f5 = f(5);
        let mut m = vec![f5.zero(); 4];
        m[0] = f5.one();
        m[3] = f5.one();
        let err = NonDegenerateForm::new(
            &f5,
            2,
            zero_table(&f5, 2),
            zero_table(&f5, 2),
            vec![1, 1],
            vec![2, 1], // gcd(2, 4) = 2
            m,
        )
        .unwrap_err();
        assert!(matches!(err, Error::ExponentNotCoprime { .. }));
    }

    #[test]
    fn pinned_set_examples() {
        let f3 = f(3);
        let form = NonDegenerateForm::distance(&f3, 2).unwrap();
        let all: Vec<u64> = (0..9).collect();
        let origin = els(&f3, &[0, 0]);
        let delta = pinned_set(&f3, &form, &all, &origin).unwrap();
        assert_eq!(delta.len(), 3); // all of F_3
        let self_only = vec![crate::varieties::point_index(&f3, &origin)];
        let delta = pinned_set(&f3, &form, &self_only, &origin).unwrap();
        assert_eq!(delta, vec![f3.zero()]);
        let delta = pinned_set(&f3, &form, &[], &origin).unwrap();
        assert!(delta.is_empty());
    }

    #[test]
    fn pinned_theorem_vacuous_at_small_q() {
        let f7 = f(7);
        let form = NonDegenerateForm::distance(&f7, 2).unwrap();
        let all: Vec<u64> = (0..49).collect();
        // premise: 49 >= (sqrt(0.75)/0.25) * 7^1.5 = 64.2 -> false
        let report = pinned_theorem_check(&f7, &form, &all, 0.5).unwrap();
        assert_eq!(report.premise_satisfied, Some(false));
        assert!(report.satisfied);
        // conclusion still holds here: every pin sees all of F_7
        assert_eq!(report.params["pins_strict"], "49");
    }

    #[test]
    fn pinned_theorem_c_sweep() {
        // the standard sweep hits both premise branches at reachable q
        let mut premise_true = 0;
        let mut premise_false = 0;
        for q in [7u64, 13] {
            let ctx = f(q);
            let form = NonDegenerateForm::distance(&ctx, 2).unwrap();
            let all: Vec<u64> = (0..q * q).collect();
            for c in [0.5, 0.75, 0.9] {
                let report = pinned_theorem_check(&ctx, &form, &all, c).unwrap();
                assert!(report.satisfied, "q={q} c={c}: {report:?}");
                match report.premise_satisfied {
                    Some(true) => premise_true += 1,
                    Some(false) => premise_false += 1,
                    None => unreachable!(),
                }
            }
        }
        assert!(premise_true >= 1 && premise_false >= 1);
    }

    #[test]
    fn pinned_theorem_rejects_bad_c() {
        let f5 = f(5);
        let form = NonDegenerateForm::distance(&f5, 2).unwrap();
        assert!(pinned_theorem_check(&f5, &form, &[], 0.0).is_err());
        assert!(pinned_theorem_check(&f5, &form, &[], 1.0).is_err());
    }

    #[test]
    fn two_set_pinned_examples() {
        let f3 = f(3);
        let form = NonDegenerateForm::distance(&f3, 2).unwrap();
        let all: Vec<u64> = (0..9).collect();
        // premise 81 >= 2 sqrt(3) * 27 = 93.5 -> vacuous
        let report = two_set_pinned_check(&f3, &form, &all, &all).unwrap();
        assert_eq!(report.premise_satisfied, Some(false));
        assert!(report.satisfied);

        // d = 1 is flagged and vacuous
        let form1 = NonDegenerateForm::distance(&f3, 1).unwrap();
        let p: Vec<u64> = (0..3).collect();
        let report = two_set_pinned_check(&f3, &form1, &p, &p).unwrap();
        assert_eq!(
            report.params.get("d_below_2").map(String::as_str),
            Some("true")
        );
        assert_eq!(report.premise_satisfied, Some(false));

        // q = 5: premise 625 >= 2 sqrt(3) * 125 = 433 -> checked exhaustively
        let f5 = f(5);
        let form = NonDegenerateForm::distance(&f5, 2).unwrap();
        let all: Vec<u64> = (0..25).collect();
        let report = two_set_pinned_check(&f5, &form, &all, &all).unwrap();
        assert_eq!(report.premise_satisfied, Some(true));
        assert!(report.satisfied, "{report:?}");
        assert_eq!(report.lhs, "25"); // every pin sees all 5 values >= 2.5
    }

    #[test]
    fn quadratic_form_normal_shapes() {
        let f5 = f(5);
        // d = 2, eps = 1: Q(x) = x1^2 - x2^2
        let (quad, _) = quadratic_form(&f5, 2, Epsilon::One).unwrap();
        let v = quad.eval(&f5, &els(&f5, &[1, 0])).unwrap();
        assert_eq!(v.index(), 1);
        // d = 3, eps = lambda = 2 (smallest non-square mod 5): Q(e3) = 2
        let (quad, _) = quadratic_form(&f5, 3, Epsilon::NonSquare).unwrap();
        assert_eq!(quad.epsilon().index(), 2);
        let v = quad.eval(&f5, &els(&f5, &[0, 0, 1])).unwrap();
        assert_eq!(v.index(), 2);
        let diag: Vec<u64> = quad.diagonal().iter().map(|e| e.index()).collect();
        assert_eq!(diag, vec![1, 4, 2]); // +1, -1, +lambda
    }

    #[test]
    fn quadratic_expansion_agrees_with_direct_eval() {
        let f5 = f(5);
        for eps in [Epsilon::One, Epsilon::NonSquare] {
            let (quad, form) = quadratic_form(&f5, 2, eps).unwrap();
            for xi in 0..25 {
                let x = index_point(&f5, xi, 2);
                for yi in 0..25 {
                    let y = index_point(&f5, yi, 2);
                    let diff: Vec<FieldElem> =
                        x.iter().zip(&y).map(|(&a, &b)| f5.sub(a, b)).collect();
                    assert_eq!(
                        eval_form(&f5, &form, &x, &y).unwrap(),
                        quad.eval(&f5, &diff).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn pinned_map_not_constant_for_invertible_m() {
        let f5 = f(5);
        let form = NonDegenerateForm::distance(&f5, 2).unwrap();
        let all: Vec<u64> = (0..25).collect();
        for &y_idx in &all {
            let y = index_point(&f5, y_idx, 2);
            let delta = pinned_set(&f5, &form, &all, &y).unwrap();
            assert!(delta.len() > 1, "pin {y_idx} saw a constant map");
        }
    }
}
