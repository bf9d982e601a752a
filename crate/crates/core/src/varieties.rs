//! Structured variety families over `F_q`.
//!
//! A family is the data `(d, k, h_1..h_k, b_1..b_k)`: shift polynomials
//! `h_i` (stored as full evaluation tables over `F_q^d`) and exponent
//! vectors `b_i` whose entries are coprime to `q - 1`. A coefficient tuple
//! `(a_1, ..., a_k)` with `a_i` in `F_q^{d+1}` then selects one member:
//! the graph-shaped variety `V` in `F_q^{d+k}` cut out by
//! `x_{d+i} = f_i(x, a_i)`, or its zero-set form `W` in `F_q^d`, where
//! `f_i(x, a_i) = h_i(x) + sum_j a_{ij} x_j^{b_ij} + a_{i(d+1)}`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, FieldElem};
use crate::rng::SeededRng;

/// Default cap for the exhaustive pairwise-distinctness scan.
pub const DISTINCTNESS_CAP: u64 = 10_000;

#[derive(Clone, Debug)]
pub struct VarietyFamily {
    d: usize,
    k: usize,
    /// `k` evaluation tables, each of length `q^d`, indexed by base point.
    h: Vec<Vec<FieldElem>>,
    /// `k` exponent vectors of length `d`, entries coprime to `q - 1`.
    /// Exponents are used exactly as given, with no reduction mod `q - 1`:
    /// congruent exponents agree on `F_q \ {0}` but `x^b` and `x^(b mod
    /// q-1)` can differ at `x = 0` when the reduction reaches 0, so two
    /// families with congruent `b` are not interchangeable.
    b: Vec<Vec<u32>>,
}

impl VarietyFamily {
    pub fn new(
        ctx: &FieldCtx,
        d: usize,
        k: usize,
        h: Vec<Vec<FieldElem>>,
        b: Vec<Vec<u32>>,
    ) -> Result<VarietyFamily> {
        if d == 0 || k == 0 {
            return Err(Error::InvalidParameter(
                "variety family needs d >= 1 and k >= 1".into(),
            ));
        }
        if h.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: h.len(),
            });
        }
        if b.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: b.len(),
            });
        }
        let table_len = ctx.q().pow(d as u32) as usize;
        for table in &h {
            if table.len() != table_len {
                return Err(Error::DimensionMismatch {
                    expected: table_len,
                    got: table.len(),
                });
            }
        }
        let q1 = ctx.q() - 1;
        for row in &b {
            if row.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: row.len(),
                });
            }
            for &exp in row {
                if exp == 0 || gcd(exp as u64, q1) != 1 {
                    return Err(Error::ExponentNotCoprime {
                        exponent: exp,
                        q_minus_one: q1,
                    });
                }
            }
        }
        Ok(VarietyFamily { d, k, h, b })
    }

    /// The k-flat family: `h_i = 0`, `b_i = (1, ..., 1)`.
    pub fn flats(ctx: &FieldCtx, d: usize, k: usize) -> Result<VarietyFamily> {
        let h = vec![zero_table(ctx, d); k];
        let b = vec![vec![1; d]; k];
        VarietyFamily::new(ctx, d, k, h, b)
    }

    /// The sphere family in `F_q^d`: `k = 1`, `h = sum of squares`, `b = 1`.
    pub fn spheres(ctx: &FieldCtx, d: usize) -> Result<VarietyFamily> {
        VarietyFamily::new(
            ctx,
            d,
            1,
            vec![sum_of_squares_table(ctx, d)],
            vec![vec![1; d]],
        )
    }

    /// A deliberately non-flat family exercising both degrees of freedom:
    /// `h_i = (sum of squares) + i` and one exponent per row raised to the
    /// smallest value >= 2 coprime to `q - 1`.
    pub fn twisted(ctx: &FieldCtx, d: usize, k: usize) -> Result<VarietyFamily> {
        let exp = coprime_exponent(ctx.q());
        let sos = sum_of_squares_table(ctx, d);
        let mut h = Vec::with_capacity(k);
        for i in 0..k {
            let shift = ctx.from_int(i as i64);
            h.push(sos.iter().map(|&v| ctx.add(v, shift)).collect());
        }
        let mut b = vec![vec![1u32; d]; k];
        for (i, row) in b.iter_mut().enumerate() {
            row[i % d] = exp;
        }
        VarietyFamily::new(ctx, d, k, h, b)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn h_table(&self, i: usize) -> &[FieldElem] {
        &self.h[i]
    }

    pub fn exponents(&self, i: usize) -> &[u32] {
        &self.b[i]
    }

    /// `q^d`, the number of base points (= points of every single variety).
    pub fn base_point_count(&self, ctx: &FieldCtx) -> u64 {
        ctx.q().pow(self.d as u32)
    }

    /// `q^{d+k}`, the number of ambient points of the `V` form.
    pub fn ambient_point_count(&self, ctx: &FieldCtx) -> u64 {
        ctx.q().pow((self.d + self.k) as u32)
    }

    /// `q^{(d+1)k}`, the number of coefficient tuples.
    pub fn tuple_count(&self, ctx: &FieldCtx) -> u64 {
        ctx.q().pow(((self.d + 1) * self.k) as u32)
    }
}

/// One coefficient tuple `(a_1, ..., a_k)`, each `a_i` of length `d + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamTuple(Vec<Vec<FieldElem>>);

impl ParamTuple {
    pub fn new(family: &VarietyFamily, vectors: Vec<Vec<FieldElem>>) -> Result<ParamTuple> {
        if vectors.len() != family.k {
            return Err(Error::DimensionMismatch {
                expected: family.k,
                got: vectors.len(),
            });
        }
        for v in &vectors {
            if v.len() != family.d + 1 {
                return Err(Error::DimensionMismatch {
                    expected: family.d + 1,
                    got: v.len(),
                });
            }
        }
        Ok(ParamTuple(vectors))
    }

    /// Decodes the lexicographic tuple index (first coefficient of `a_1`
    /// most significant).
    pub fn from_index(ctx: &FieldCtx, family: &VarietyFamily, index: u64) -> ParamTuple {
        let width = family.d + 1;
        let coords = index_point(ctx, index, family.k * width);
        let vectors = coords.chunks(width).map(|c| c.to_vec()).collect();
        ParamTuple(vectors)
    }

    pub fn to_index(&self, ctx: &FieldCtx) -> u64 {
        let flat: Vec<FieldElem> = self.0.iter().flatten().copied().collect();
        point_index(ctx, &flat)
    }

    pub fn vector(&self, i: usize) -> &[FieldElem] {
        &self.0[i]
    }

    pub fn vectors(&self) -> &[Vec<FieldElem>] {
        &self.0
    }
}

/// `f_i(x, a_i) = h_i(x) + sum_j a_ij x_j^{b_ij} + a_{i(d+1)}`.
pub fn eval_f(
    ctx: &FieldCtx,
    family: &VarietyFamily,
    i: usize,
    x: &[FieldElem],
    a_i: &[FieldElem],
) -> Result<FieldElem> {
    if x.len() != family.d {
        return Err(Error::DimensionMismatch {
            expected: family.d,
            got: x.len(),
        });
    }
    if a_i.len() != family.d + 1 {
        return Err(Error::DimensionMismatch {
            expected: family.d + 1,
            got: a_i.len(),
        });
    }
    let mut acc = family.h[i][point_index(ctx, x) as usize];
    for j in 0..family.d {
        let pw = ctx.pow(x[j], family.b[i][j] as u64);
        acc = ctx.add(acc, ctx.mul(a_i[j], pw));
    }
    Ok(ctx.add(acc, a_i[family.d]))
}

/// Membership of `p` in `F_q^{d+k}` in the `V`-form variety.
pub fn membership_v(
    ctx: &FieldCtx,
    family: &VarietyFamily,
    params: &ParamTuple,
    p: &[FieldElem],
) -> Result<bool> {
    let n = family.d + family.k;
    if p.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: p.len(),
        });
    }
    let base = &p[..family.d];
    for i in 0..family.k {
        if eval_f(ctx, family, i, base, params.vector(i))? != p[family.d + i] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership of `x` in `F_q^d` in the `W`-form variety (all `f_i` vanish).
pub fn membership_w(
    ctx: &FieldCtx,
    family: &VarietyFamily,
    params: &ParamTuple,
    x: &[FieldElem],
) -> Result<bool> {
    if x.len() != family.d {
        return Err(Error::DimensionMismatch {
            expected: family.d,
            got: x.len(),
        });
    }
    for i in 0..family.k {
        if eval_f(ctx, family, i, x, params.vector(i))? != ctx.zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The sphere `||x - center|| = r` as a `W`-form member of the sphere
/// family: `a = (-2 c_1, ..., -2 c_d, sum c_i^2 - r)`.
pub fn sphere_as_w(
    ctx: &FieldCtx,
    center: &[FieldElem],
    r: FieldElem,
) -> Result<(VarietyFamily, ParamTuple)> {
    let d = center.len();
    let family = VarietyFamily::spheres(ctx, d)?;
    let minus_two = ctx.from_int(-2);
    let mut a: Vec<FieldElem> = center.iter().map(|&c| ctx.mul(minus_two, c)).collect();
    let mut c2 = ctx.zero();
    for &c in center {
        c2 = ctx.add(c2, ctx.square(c));
    }
    a.push(ctx.sub(c2, r));
    let params = ParamTuple::new(&family, vec![a])?;
    Ok((family, params))
}

/// A k-flat in `F_q^{d+k}` as a `V`-form member of the flat family.
pub fn flat_as_v(
    ctx: &FieldCtx,
    d: usize,
    k: usize,
    coefficients: Vec<Vec<FieldElem>>,
) -> Result<(VarietyFamily, ParamTuple)> {
    let family = VarietyFamily::flats(ctx, d, k)?;
    let params = ParamTuple::new(&family, coefficients)?;
    Ok((family, params))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeroCount {
    pub zeros: u64,
    /// `k * q^{d-1}`, the degree-k Schwartz-Zippel ceiling.
    pub bound: u64,
}

/// Exhaustive zero count of a polynomial given by its evaluation table
/// over `F_q^d`, against the declared total degree `k`.
pub fn schwartz_zippel_count(
    ctx: &FieldCtx,
    d: usize,
    table: &[FieldElem],
    degree: u32,
) -> Result<ZeroCount> {
    let expected = ctx.q().pow(d as u32) as usize;
    if table.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            got: table.len(),
        });
    }
    if degree == 0 {
        return Err(Error::InvalidParameter(
            "declared degree must be >= 1".into(),
        ));
    }
    let zeros = table.iter().filter(|&&v| v == ctx.zero()).count() as u64;
    if zeros == table.len() as u64 {
        return Err(Error::IdenticallyZero);
    }
    Ok(ZeroCount {
        zeros,
        bound: degree as u64 * ctx.q().pow(d as u32 - 1),
    })
}

/// Exhaustively verifies that all `q^{(d+1)k}` coefficient tuples induce
/// pairwise distinct `V`-form point sets.
pub fn distinct_varieties_check(ctx: &FieldCtx, family: &VarietyFamily, cap: u64) -> Result<bool> {
    let tuples = family.tuple_count(ctx);
    if tuples > cap {
        return Err(Error::ThresholdExceeded {
            needed: tuples,
            cap,
        });
    }
    // V is the graph of x -> (f_1(x), ..., f_k(x)), so two tuples give the
    // same point set exactly when their joint f-tables agree.
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    let base = family.base_point_count(ctx);
    for t in 0..tuples {
        let params = ParamTuple::from_index(ctx, family, t);
        let mut signature = Vec::with_capacity(family.k * base as usize);
        for i in 0..family.k {
            for x_idx in 0..base {
                let x = index_point(ctx, x_idx, family.d);
                let v = eval_f(ctx, family, i, &x, params.vector(i))?;
                signature.push(v.index() as u32);
            }
        }
        if !seen.insert(signature) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lexicographic index of a coordinate vector (first coordinate most
/// significant).
pub fn point_index(ctx: &FieldCtx, coords: &[FieldElem]) -> u64 {
    coords.iter().fold(0u64, |acc, c| acc * ctx.q() + c.index())
}

/// Inverse of [`point_index`] for vectors of length `n`.
pub fn index_point(ctx: &FieldCtx, mut index: u64, n: usize) -> Vec<FieldElem> {
    let mut out = vec![FieldElem::default(); n];
    for slot in out.iter_mut().rev() {
        *slot = ctx.elem(index % ctx.q()).expect("digit < q");
        index /= ctx.q();
    }
    out
}

pub fn zero_table(ctx: &FieldCtx, d: usize) -> Vec<FieldElem> {
    vec![ctx.zero(); ctx.q().pow(d as u32) as usize]
}

/// Evaluation table of `x_1^2 + ... + x_d^2`.
pub fn sum_of_squares_table(ctx: &FieldCtx, d: usize) -> Vec<FieldElem> {
    let n = ctx.q().pow(d as u32);
    (0..n)
        .map(|idx| {
            let x = index_point(ctx, idx, d);
            x.iter()
                .fold(ctx.zero(), |acc, &c| ctx.add(acc, ctx.square(c)))
        })
        .collect()
}

/// Seeded random polynomial of total degree exactly `degree` over
/// `F_q[x_1..x_d]`, returned as an evaluation table. Guaranteed to have at
/// least one nonzero top-degree coefficient and a not-identically-zero
/// table (functional zeros are resampled).
pub fn random_poly_table(
    ctx: &FieldCtx,
    d: usize,
    degree: u32,
    rng: &mut SeededRng,
) -> Vec<FieldElem> {
    let monomials = monomials_up_to(d, degree);
    let top: Vec<usize> = monomials
        .iter()
        .enumerate()
        .filter(|(_, m)| m.iter().sum::<u32>() == degree)
        .map(|(i, _)| i)
        .collect();
    loop {
        let mut coeffs: Vec<FieldElem> = (0..monomials.len())
            .map(|_| ctx.elem(rng.below(ctx.q())).expect("sampled below q"))
            .collect();
        let forced = top[rng.below(top.len() as u64) as usize];
        if coeffs[forced] == ctx.zero() {
            coeffs[forced] = ctx.elem(1 + rng.below(ctx.q() - 1)).expect("nonzero");
        }
        let n = ctx.q().pow(d as u32);
        let mut table = Vec::with_capacity(n as usize);
        let mut all_zero = true;
        for idx in 0..n {
            let x = index_point(ctx, idx, d);
            let mut acc = ctx.zero();
            for (coef, mono) in coeffs.iter().zip(&monomials) {
                if *coef == ctx.zero() {
                    continue;
                }
                let mut term = *coef;
                for (xi, &e) in x.iter().zip(mono) {
                    if e > 0 {
                        term = ctx.mul(term, ctx.pow(*xi, e as u64));
                    }
                }
                acc = ctx.add(acc, term);
            }
            all_zero &= acc == ctx.zero();
            table.push(acc);
        }
        if !all_zero {
            return table;
        }
    }
}

fn monomials_up_to(d: usize, degree: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; d];
    fill(&mut out, &mut current, 0, degree);
    return out;

    fn fill(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, pos: usize, left: u32) {
        if pos == current.len() {
            out.push(current.clone());
            return;
        }
        for e in 0..=left {
            current[pos] = e;
            fill(out, current, pos + 1, left - e);
        }
        current[pos] = 0;
    }
}

/// Smallest exponent >= 2 coprime to `q - 1` (always exists for odd q > 3
/// at 3 or 5; for q = 3 it is 3).
pub fn coprime_exponent(q: u64) -> u32 {
    (2u32..)
        .find(|&e| gcd(e as u64, q - 1) == 1)
        .expect("some exponent is coprime")
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
