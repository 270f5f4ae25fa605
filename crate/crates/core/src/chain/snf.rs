//! Smith normal form over the integers.
//!
//! Pivoting always picks the nonzero entry of least absolute value in the
//! active submatrix (ties: lowest row, then lowest column), so the transforms
//! are deterministic. Inverses of both transforms are tracked alongside them;
//! homology needs `V^-1` to read off kernel coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal, `d1 | d2 | ...`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    rank: usize,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct Reducer {
    m: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.m.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.m.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    // row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.m.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
        self.u_inv.add_col_multiple(src, dst, &-c);
    }

    // col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.m.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
        self.v_inv.add_row_multiple(src, dst, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.m.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Smallest nonzero |entry| in rows/cols >= t.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t..self.m.rows() {
            for j in t..self.m.cols() {
                let x = self.m.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let a = x.abs();
                if best.as_ref().map_or(true, |(b, _, _)| a < *b) {
                    best = Some((a, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Clears row t and column t outside the pivot. Returns false when a
    /// nonzero remainder was left behind and a new pivot is needed.
    fn clear_cross(&mut self, t: usize) -> bool {
        let p = self.m.get(t, t).clone();
        let mut clean = true;
        for i in t + 1..self.m.rows() {
            let x = self.m.get(i, t);
            if x.is_zero() {
                continue;
            }
            let q = x.div_floor(&p);
            self.add_row(i, t, &-q);
            if !self.m.get(i, t).is_zero() {
                clean = false;
            }
        }
        for j in t + 1..self.m.cols() {
            let x = self.m.get(t, j);
            if x.is_zero() {
                continue;
            }
            let q = x.div_floor(&p);
            self.add_col(j, t, &-q);
            if !self.m.get(t, j).is_zero() {
                clean = false;
            }
        }
        clean
    }

    fn run(&mut self) -> usize {
        let (rows, cols) = self.m.shape();
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((i, j)) = self.min_pivot(t) else {
                break;
            };
            self.swap_rows(t, i);
            self.swap_cols(t, j);
            loop {
                if !self.clear_cross(t) {
                    let (i, j) = self.min_pivot(t).expect("nonzero remainder");
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                    continue;
                }
                // Divisibility: every remaining entry must be a multiple of the pivot.
                let p = self.m.get(t, t).clone();
                let bad = (t + 1..rows).find(|&r| {
                    (t + 1..cols).any(|c| !self.m.get(r, c).is_multiple_of(&p))
                });
                match bad {
                    Some(r) => self.add_row(t, r, &BigInt::from(1)),
                    None => break,
                }
            }
            if self.m.get(t, t).is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        t
    }
}

/// Computes the Smith normal form together with both unimodular transforms
/// and their inverses. Total: every integer matrix has one.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (rows, cols) = m.shape();
    let mut r = Reducer {
        m: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let rank = r.run();
    Snf {
        u: r.u,
        u_inv: r.u_inv,
        d: r.m,
        v: r.v,
        v_inv: r.v_inv,
        rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(m: &IntMatrix) -> Snf {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d);
        assert_eq!(&s.u * &s.u_inv, IntMatrix::identity(m.rows()));
        assert_eq!(&s.v * &s.v_inv, IntMatrix::identity(m.cols()));
        s
    }

    #[test]
    fn zero_matrix() {
        let s = check(&IntMatrix::zeros(2, 3));
        assert_eq!(s.d, IntMatrix::zeros(2, 3));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
        assert_eq!(s.u, IntMatrix::identity(3));
        assert_eq!(s.v, IntMatrix::identity(3));
    }

    #[test]
    fn two_by_two_example() {
        // gcd of entries is 2, |det| = 8, so diag(2, 4).
        let s = check(&IntMatrix::from_rows(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn divisibility_fixup() {
        // diag(2, 3) is not in normal form: expect diag(1, 6).
        let s = check(&IntMatrix::from_rows(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::one(), BigInt::from(6)]);
    }

    #[test]
    fn empty_dimensions() {
        check(&IntMatrix::zeros(0, 4));
        check(&IntMatrix::zeros(4, 0));
        check(&IntMatrix::zeros(0, 0));
    }

    #[test]
    fn negative_pivot_is_normalized() {
        let s = check(&IntMatrix::from_rows(&[&[-3]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(3)]);
    }
}
