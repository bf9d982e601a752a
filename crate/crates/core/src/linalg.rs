//! Gaussian elimination over `F_q`. Arithmetic is exact, so pivoting only
//! has to find any nonzero entry.

use crate::error::{Error, Result};
use crate::ffield::{FieldCtx, FieldElem};

/// Solves the square system `A x = b` in place. `A` is row-major, `n x n`.
#[allow(clippy::needless_range_loop)]
pub fn solve(
    ctx: &FieldCtx,
    a: &mut [Vec<FieldElem>],
    b: &mut [FieldElem],
) -> Result<Vec<FieldElem>> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n) && b.len() == n);
    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| a[r][col] != ctx.zero())
            .ok_or(Error::SingularMatrix)?;
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        let pivot_inv = ctx.inv(a[col][col])?;
        for j in col..n {
            a[col][j] = ctx.mul(a[col][j], pivot_inv);
        }
        b[col] = ctx.mul(b[col], pivot_inv);
        for r in 0..n {
            if r == col || a[r][col] == ctx.zero() {
                continue;
            }
            let factor = a[r][col];
            for j in col..n {
                let t = ctx.mul(factor, a[col][j]);
                a[r][j] = ctx.sub(a[r][j], t);
            }
            let t = ctx.mul(factor, b[col]);
            b[r] = ctx.sub(b[r], t);
        }
    }
    Ok(b.to_vec())
}

/// Rank of an arbitrary list of row vectors.
#[allow(clippy::needless_range_loop)]
pub fn rank(ctx: &FieldCtx, rows: &[Vec<FieldElem>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<FieldElem>> = rows.to_vec();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != ctx.zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = ctx.inv(m[rank][col]).expect("pivot is nonzero");
        for j in col..cols {
            m[rank][j] = ctx.mul(m[rank][j], inv);
        }
        for r in 0..m.len() {
            if r == rank || m[r][col] == ctx.zero() {
                continue;
            }
            let factor = m[r][col];
            for j in col..cols {
                let t = ctx.mul(factor, m[rank][j]);
                m[r][j] = ctx.sub(m[r][j], t);
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Whether the square matrix is invertible, via rank.
pub fn is_invertible(ctx: &FieldCtx, m: &[Vec<FieldElem>]) -> bool {
    let n = m.len();
    n == 0 || rank(ctx, m) == n
}
