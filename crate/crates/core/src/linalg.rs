//! Row reduction over `F_p` and `F_q`.

use crate::field::{Elem, FieldCtx};

/// Rank over `F_p` of integer vectors with entries in `0..p`.
pub fn fp_rank(p: u32, mut rows: Vec<Vec<u32>>) -> usize {
    let p = p as u64;
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col] as u64, p);
        for x in rows[rank].iter_mut() {
            *x = ((*x as u64 * inv) % p) as u32;
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[col] != 0 {
                let c = row[col] as u64;
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = ((*x as u64 + (p - c) * y as u64) % p) as u32;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn inv_mod(x: u64, p: u64) -> u64 {
    crate::field::pow_mod(x, p - 2, p)
}

/// Reduced row echelon form over `F_q`; zero rows are dropped and pivots
/// increase left to right.
pub fn rref(ctx: &FieldCtx, mut rows: Vec<Vec<Elem>>) -> Vec<Vec<Elem>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = ctx.inv(rows[rank][col]).expect("pivot is nonzero");
        for x in rows[rank].iter_mut() {
            *x = ctx.mul(*x, inv);
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let c = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = ctx.sub(*x, ctx.mul(c, y));
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rows
}

pub fn rank(ctx: &FieldCtx, rows: Vec<Vec<Elem>>) -> usize {
    rref(ctx, rows).len()
}

/// Whether `v` lies in the row space spanned by `rows`.
pub fn in_row_space(ctx: &FieldCtx, rows: &[Vec<Elem>], v: &[Elem]) -> bool {
    let base = rank(ctx, rows.to_vec());
    let mut ext = rows.to_vec();
    ext.push(v.to_vec());
    rank(ctx, ext) == base
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_rank_examples() {
        assert_eq!(fp_rank(3, vec![vec![1, 2], vec![2, 1]]), 1);
        assert_eq!(fp_rank(5, vec![vec![1, 2], vec![2, 1]]), 2);
        assert_eq!(fp_rank(2, vec![vec![0, 0, 0]]), 0);
        assert_eq!(fp_rank(2, vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]), 2);
        assert_eq!(fp_rank(7, Vec::new()), 0);
    }

    #[test]
    fn rref_examples() {
        let f9 = FieldCtx::new(3, 2).unwrap();
        let x = f9.xi();
        let rows = vec![
            vec![x, Elem::ONE, Elem::ZERO],
            vec![f9.mul(x, x), x, Elem::ZERO],
            vec![Elem::ZERO, Elem::ZERO, x],
        ];
        let red = rref(&f9, rows.clone());
        assert_eq!(red.len(), 2);
        assert_eq!(red[0][0], Elem::ONE);
        assert_eq!(red[1], vec![Elem::ZERO, Elem::ZERO, Elem::ONE]);
        assert!(in_row_space(&f9, &rows, &[Elem::ONE, f9.inv(x).unwrap(), x]));
        assert!(!in_row_space(&f9, &rows, &[Elem::ONE, Elem::ZERO, Elem::ZERO]));
    }
}
