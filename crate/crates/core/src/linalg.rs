//! Dense exact Gaussian elimination over ℚ.

use num_traits::Zero;

use crate::polynomial::Rational;

/// Brings `rows` into reduced row-echelon form in place, considering only the
/// first `pivot_columns` columns as pivot candidates. The pivot in each
/// column is the first nonzero entry at or below the current row. Returns
/// the pivot column of each leading row; rows past the rank are zero in the
/// pivot columns.
pub fn rref(rows: &mut [Vec<Rational>], pivot_columns: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..pivot_columns {
        if row == rows.len() {
            break;
        }
        let Some(found) = (row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, found);
        let inv = rows[row][col].recip();
        for v in rows[row].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[row].clone();
        for (r, other) in rows.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for (v, p) in other.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    #[test]
    fn reduces_to_identity_on_regular_matrix() {
        let mut m = vec![vec![q(0), q(2)], vec![q(3), q(1)]];
        let pivots = rref(&mut m, 2);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m, vec![vec![q(1), q(0)], vec![q(0), q(1)]]);
    }

    #[test]
    fn detects_rank_deficiency() {
        let mut m = vec![vec![q(1), q(2), q(5)], vec![q(2), q(4), q(7)]];
        let pivots = rref(&mut m, 2);
        assert_eq!(pivots, vec![0]);
        assert!(!m[1][2].is_zero());
    }
}
