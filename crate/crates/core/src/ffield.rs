//! Exact arithmetic in `F_q` for odd prime powers `q = p^e`.
//!
//! Elements are canonical indices in `[0, q)`: the base-`p` digits of the
//! index are the coefficients of the residue polynomial, low degree first,
//! so `0` is the additive identity and `1` the multiplicative identity.
//! For `e > 1` the modulus is the lexicographically smallest monic
//! irreducible polynomial of degree `e` (coefficients compared low-to-high
//! degree), which makes encodings reproducible across runs.

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// Full multiplication/inverse tables are precomputed up to this order;
/// larger extension fields multiply by on-the-fly polynomial arithmetic.
pub const TABLE_THRESHOLD: u64 = 4096;

/// One element of a fixed `FieldCtx`, stored as its canonical index.
/// Indices are only meaningful together with the context that made them.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct FieldElem(pub(crate) u32);

impl FieldElem {
    pub fn index(self) -> u64 {
        self.0 as u64
    }
}

impl std::fmt::Display for FieldElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u64,
    e: u32,
    q: u64,
    /// Coefficients of the monic degree-`e` modulus, low degree first,
    /// length `e + 1`; empty for prime fields.
    modulus: Vec<u64>,
    mul_table: Option<Vec<u16>>,
    inv_table: Option<Vec<u16>>,
    nonzero_square: Vec<bool>,
}

impl FieldCtx {
    /// Builds `F_{p^e}` for an odd prime `p`, verifying primality, the
    /// order cap, and (for `e > 1`) irreducibility of the chosen modulus.
    pub fn new(p: u64, e: u32) -> Result<FieldCtx> {
        if e < 1 {
            return Err(Error::InvalidDegree);
        }
        if p % 2 == 0 {
            return Err(Error::EvenCharacteristic(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut q: u64 = 1;
        for _ in 0..e {
            q = q.checked_mul(p).ok_or(Error::FieldTooLarge {
                q: u64::MAX,
                max: MAX_ORDER,
            })?;
            if q > MAX_ORDER {
                return Err(Error::FieldTooLarge { q, max: MAX_ORDER });
            }
        }

        let modulus = if e == 1 {
            Vec::new()
        } else {
            smallest_irreducible(p, e)
        };

        let mut ctx = FieldCtx {
            p,
            e,
            q,
            modulus,
            mul_table: None,
            inv_table: None,
            nonzero_square: Vec::new(),
        };

        if ctx.e > 1 && ctx.q <= TABLE_THRESHOLD {
            let n = ctx.q as usize;
            let mut table = vec![0u16; n * n];
            for a in 0..n {
                for b in a..n {
                    let v = ctx.mul_raw(a as u64, b as u64) as u16;
                    table[a * n + b] = v;
                    table[b * n + a] = v;
                }
            }
            ctx.mul_table = Some(table);
        }
        if ctx.q <= TABLE_THRESHOLD {
            let mut table = vec![0u16; ctx.q as usize];
            for a in 1..ctx.q {
                table[a as usize] = ctx.pow_raw(a, ctx.q - 2) as u16;
            }
            ctx.inv_table = Some(table);
        }

        let mut sq = vec![false; ctx.q as usize];
        for a in 1..ctx.q {
            sq[ctx.mul_index(a, a) as usize] = true;
        }
        ctx.nonzero_square = sq;
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients, low degree first (empty for prime fields).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn elem(&self, index: u64) -> Result<FieldElem> {
        if index < self.q {
            Ok(FieldElem(index as u32))
        } else {
            Err(Error::ElementOutOfRange { index, q: self.q })
        }
    }

    /// Image of an integer under `Z -> F_p ⊆ F_q`.
    pub fn from_int(&self, n: i64) -> FieldElem {
        let r = n.rem_euclid(self.p as i64) as u64;
        FieldElem(r as u32)
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q).map(|i| FieldElem(i as u32))
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        debug_assert!((a.index()) < self.q && (b.index()) < self.q);
        if self.e == 1 {
            FieldElem(((a.index() + b.index()) % self.p) as u32)
        } else {
            let mut out = 0u64;
            let (mut x, mut y) = (a.index(), b.index());
            let mut scale = 1u64;
            for _ in 0..self.e {
                out += ((x % self.p + y % self.p) % self.p) * scale;
                x /= self.p;
                y /= self.p;
                scale *= self.p;
            }
            FieldElem(out as u32)
        }
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.e == 1 {
            FieldElem(((self.p - a.index()) % self.p) as u32)
        } else {
            let mut out = 0u64;
            let mut x = a.index();
            let mut scale = 1u64;
            for _ in 0..self.e {
                out += ((self.p - x % self.p) % self.p) * scale;
                x /= self.p;
                scale *= self.p;
            }
            FieldElem(out as u32)
        }
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        debug_assert!((a.index()) < self.q && (b.index()) < self.q);
        FieldElem(self.mul_index(a.index(), b.index()) as u32)
    }

    pub fn square(&self, a: FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        if let Some(table) = &self.inv_table {
            return Ok(FieldElem(table[a.0 as usize] as u32));
        }
        Ok(FieldElem(self.pow_raw(a.index(), self.q - 2) as u32))
    }

    /// `a^n` by square-and-multiply; `a^0 = 1` including for `a = 0`.
    pub fn pow(&self, a: FieldElem, n: u64) -> FieldElem {
        FieldElem(self.pow_raw(a.index(), n) as u32)
    }

    /// `SQ`: the nonzero squares, in index order. Always `(q - 1) / 2` many.
    pub fn nonzero_squares(&self) -> Vec<FieldElem> {
        self.nonzero_square
            .iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| FieldElem(i as u32))
            .collect()
    }

    pub fn is_nonzero_square(&self, a: FieldElem) -> bool {
        self.nonzero_square[a.0 as usize]
    }

    pub fn minus_one_is_square(&self) -> bool {
        self.is_nonzero_square(self.neg(self.one()))
    }

    /// Smallest canonical index that is a non-square (and nonzero).
    pub fn smallest_nonsquare(&self) -> FieldElem {
        for i in 1..self.q {
            if !self.nonzero_square[i as usize] {
                return FieldElem(i as u32);
            }
        }
        unreachable!("every field of odd order has a non-square")
    }

    fn mul_index(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            (a * b) % self.p
        } else if let Some(table) = &self.mul_table {
            table[a as usize * self.q as usize + b as usize] as u64
        } else {
            self.mul_raw(a, b)
        }
    }

    /// Polynomial multiplication modulo the field modulus, operating on
    /// canonical indices. Used to seed the tables and as the fallback path.
    fn mul_raw(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            return (a * b) % self.p;
        }
        let e = self.e as usize;
        let da = index_digits(a, self.p, e);
        let db = index_digits(b, self.p, e);
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce by the monic modulus
        for d in (e..prod.len()).rev() {
            let lead = prod[d];
            if lead == 0 {
                continue;
            }
            prod[d] = 0;
            for (k, &m) in self.modulus.iter().enumerate().take(e) {
                let pos = d - e + k;
                prod[pos] = (prod[pos] + (self.p - (lead * m) % self.p)) % self.p;
            }
        }
        digits_index(&prod[..e], self.p)
    }

    fn pow_raw(&self, mut base: u64, mut n: u64) -> u64 {
        let mut acc = 1u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul_index(acc, base);
            }
            base = self.mul_index(base, base);
            n >>= 1;
        }
        acc
    }
}

fn index_digits(mut v: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for slot in out.iter_mut() {
        *slot = v % p;
        v /= p;
    }
    out
}

fn digits_index(digits: &[u64], p: u64) -> u64 {
    let mut out = 0u64;
    for &d in digits.iter().rev() {
        out = out * p + d;
    }
    out
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// First monic irreducible polynomial of degree `e` over `F_p`, where the
/// coefficient tuple `(c_0, c_1, ..., c_{e-1})` is minimized in
/// lexicographic order with `c_0` most significant.
fn smallest_irreducible(p: u64, e: u32) -> Vec<u64> {
    let e = e as usize;
    let count = p.pow(e as u32);
    for m in 0..count {
        // digit j of m, from the top, is coefficient c_j
        let mut coeffs = vec![0u64; e + 1];
        let mut rest = m;
        for j in (0..e).rev() {
            coeffs[j] = rest % p;
            rest /= p;
        }
        coeffs[e] = 1;
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("monic irreducibles of every degree exist over F_p")
}

/// Trial division by every monic polynomial of degree 1..=e/2.
fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let e = poly.len() - 1;
    for deg in 1..=e / 2 {
        let count = p.pow(deg as u32);
        for m in 0..count {
            let mut div = index_digits(m, p, deg);
            div.push(1);
            if poly_rem_is_zero(poly, &div, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(poly: &[u64], div: &[u64], p: u64) -> bool {
    let mut rem: Vec<u64> = poly.to_vec();
    let dd = div.len() - 1;
    for d in (dd..rem.len()).rev() {
        let lead = rem[d];
        if lead == 0 {
            continue;
        }
        rem[d] = 0;
        for (k, &m) in div.iter().enumerate().take(dd) {
            let pos = d - dd + k;
            rem[pos] = (rem[pos] + (p - (lead * m) % p)) % p;
        }
    }
    rem.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(f5.q(), 5);
        let three = f5.elem(3).unwrap();
        let four = f5.elem(4).unwrap();
        assert_eq!(f5.add(three, four).index(), 2);
        let f7 = FieldCtx::new(7, 1).unwrap();
        let a = f7.elem(3).unwrap();
        let b = f7.elem(5).unwrap();
        assert_eq!(f7.mul(a, b).index(), 1);
    }

    #[test]
    fn f9_modulus_is_t2_plus_1() {
        let f9 = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        // t has index 3 (digits 0,1); t*t = -1 = 2
        let t = f9.elem(3).unwrap();
        assert_eq!(f9.mul(t, t).index(), 2);
    }

    #[test]
    fn construction_rejections() {
        assert_eq!(
            FieldCtx::new(2, 3).unwrap_err(),
            Error::EvenCharacteristic(2)
        );
        assert_eq!(FieldCtx::new(9, 1).unwrap_err(), Error::NotPrime(9));
        assert_eq!(FieldCtx::new(5, 0).unwrap_err(), Error::InvalidDegree);
        assert!(matches!(
            FieldCtx::new(3, 11).unwrap_err(),
            Error::FieldTooLarge { .. }
        ));
    }

    #[test]
    fn square_sets() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        let sq: Vec<u64> = f5.nonzero_squares().iter().map(|e| e.index()).collect();
        assert_eq!(sq, vec![1, 4]);
        let f7 = FieldCtx::new(7, 1).unwrap();
        let sq: Vec<u64> = f7.nonzero_squares().iter().map(|e| e.index()).collect();
        assert_eq!(sq, vec![1, 2, 4]);
        let f3 = FieldCtx::new(3, 1).unwrap();
        let sq: Vec<u64> = f3.nonzero_squares().iter().map(|e| e.index()).collect();
        assert_eq!(sq, vec![1]);
    }

    #[test]
    fn minus_one_squareness() {
        assert!(FieldCtx::new(5, 1).unwrap().minus_one_is_square());
        assert!(!FieldCtx::new(7, 1).unwrap().minus_one_is_square());
        assert!(FieldCtx::new(3, 2).unwrap().minus_one_is_square());
        // prime fields: -1 is a square exactly when q = 1 mod 4
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let f = FieldCtx::new(p, 1).unwrap();
            assert_eq!(f.minus_one_is_square(), p % 4 == 1, "p = {p}");
        }
    }

    #[test]
    fn sq_has_half_the_nonzero_elements() {
        for (p, e) in [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3), (11, 1)] {
            let f = FieldCtx::new(p, e).unwrap();
            assert_eq!(
                f.nonzero_squares().len() as u64,
                (f.q() - 1) / 2,
                "F_{}^{}",
                p,
                e
            );
        }
    }

    #[test]
    fn fermat_exhaustive() {
        for (p, e) in [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3), (7, 3)] {
            let f = FieldCtx::new(p, e).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(f.pow(a, f.q() - 1), f.one());
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
        }
    }

    #[test]
    fn coprime_power_map_is_bijective() {
        for (p, e) in [(5, 1), (7, 1), (3, 2), (11, 1)] {
            let f = FieldCtx::new(p, e).unwrap();
            for r in 1..f.q() {
                if gcd(r, f.q() - 1) != 1 {
                    continue;
                }
                let mut seen = vec![false; f.q() as usize];
                for a in f.elements() {
                    let img = f.pow(a, r);
                    assert!(!seen[img.index() as usize]);
                    seen[img.index() as usize] = true;
                }
            }
        }
    }

    #[test]
    fn inv_of_zero_fails() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(f5.inv(f5.zero()).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn untabled_extension_field_agrees_on_subfield() {
        // 3^8 = 6561 > 4096 exercises the on-the-fly polynomial path
        let big = FieldCtx::new(3, 8).unwrap();
        assert!(big.mul_table.is_none());
        let a = big.from_int(2);
        assert_eq!(big.mul(a, a).index(), 1);
        assert_eq!(big.pow(a, big.q() - 1), big.one());
        let t = big.elem(3).unwrap();
        assert_eq!(big.mul(t, big.inv(t).unwrap()), big.one());
    }

    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a
    }
}
