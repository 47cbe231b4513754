use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `U · M · V = S` with `U`, `V` unimodular and `S` diagonal,
/// `d_1 | d_2 | … | d_r`, all `d_k > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// Nonzero diagonal entries of `S`.
    pub diagonal: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

struct Work {
    m: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn rows(&mut self, i: usize, j: usize, a: [BigInt; 4]) {
        let det = &a[0] * &a[3] - &a[1] * &a[2];
        self.m.combine_rows(i, j, &a);
        self.u.combine_rows(i, j, &a);
        let [p, q, r, s] = a;
        let inv = [&det * &s, -(&det * &r), -(&det * &q), &det * &p];
        self.u_inv.combine_cols(i, j, &inv);
    }

    fn cols(&mut self, i: usize, j: usize, a: [BigInt; 4]) {
        let det = &a[0] * &a[3] - &a[1] * &a[2];
        self.m.combine_cols(i, j, &a);
        self.v.combine_cols(i, j, &a);
        let [p, q, r, s] = a;
        let inv = [&det * &s, -(&det * &r), -(&det * &q), &det * &p];
        self.v_inv.combine_rows(i, j, &inv);
    }

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

    fn negate_row(&mut self, i: usize) {
        self.m.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// A unimodular 2×2 step sending `(a, b)` to `(gcd, 0)`.
    fn reducer(a: &BigInt, b: &BigInt) -> [BigInt; 4] {
        if (b % a).is_zero() {
            return [BigInt::one(), BigInt::zero(), -(b / a), BigInt::one()];
        }
        let e = a.extended_gcd(b);
        let g = e.gcd;
        [e.x, e.y, -(b / &g), a / &g]
    }
}

/// Smith normal form by gcd-driven elimination, smallest pivot first.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows(), m.cols());
    let mut w = Work {
        m: m.clone(),
        u: IntMatrix::identity(r),
        u_inv: IntMatrix::identity(r),
        v: IntMatrix::identity(c),
        v_inv: IntMatrix::identity(c),
    };
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < r.min(c) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..r {
            for j in t..c {
                let x = w.m.get(i, j);
                if !x.is_zero() && best.as_ref().is_none_or(|(_, _, b)| x.abs() < *b) {
                    best = Some((i, j, x.abs()));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            loop {
                for i in t + 1..r {
                    if !w.m.get(i, t).is_zero() {
                        let a = Work::reducer(w.m.get(t, t), w.m.get(i, t));
                        w.rows(t, i, a);
                    }
                }
                for j in t + 1..c {
                    if !w.m.get(t, j).is_zero() {
                        let a = Work::reducer(w.m.get(t, t), w.m.get(t, j));
                        w.cols(t, j, a);
                    }
                }
                if (t + 1..r).all(|i| w.m.get(i, t).is_zero()) {
                    break;
                }
            }
            let d = w.m.get(t, t).clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !(w.m.get(i, j) % &d).is_zero()));
            match bad {
                Some(i) => w.rows(t, i, [BigInt::one(), BigInt::one(), BigInt::zero(), BigInt::one()]),
                None => break,
            }
        }
        if w.m.get(t, t).is_negative() {
            w.negate_row(t);
        }
        diagonal.push(w.m.get(t, t).clone());
        t += 1;
    }
    SmithForm { u: w.u, u_inv: w.u_inv, s: w.m, v: w.v, v_inv: w.v_inv, diagonal }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SmithForm {
        let f = smith_normal_form(m);
        assert_eq!(f.u.mul(m).unwrap().mul(&f.v).unwrap(), f.s);
        assert_eq!(f.u.mul(&f.u_inv).unwrap(), IntMatrix::identity(m.rows()));
        assert_eq!(f.v.mul(&f.v_inv).unwrap(), IntMatrix::identity(m.cols()));
        for i in 0..f.s.rows() {
            for j in 0..f.s.cols() {
                if i != j || i >= f.rank() {
                    assert!(f.s.get(i, j).is_zero());
                }
            }
        }
        for w in f.diagonal.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        f
    }

    #[test]
    fn two_by_two() {
        let m = IntMatrix::from_rows(&[vec![2i64, 4], vec![6, 8]]).unwrap();
        assert_eq!(check(&m).diagonal, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn identity_and_zero() {
        let f = check(&IntMatrix::identity(3));
        assert_eq!(f.diagonal, vec![BigInt::one(); 3]);
        let f = check(&IntMatrix::zeros(2, 3));
        assert!(f.diagonal.is_empty());
        assert_eq!(f.u, IntMatrix::identity(2));
        assert_eq!(f.v, IntMatrix::identity(3));
        check(&IntMatrix::zeros(0, 4));
    }

    #[test]
    fn divisibility_fixup() {
        let m = IntMatrix::from_rows(&[vec![2i64, 0], vec![0, 3]]).unwrap();
        assert_eq!(check(&m).diagonal, vec![BigInt::from(1), BigInt::from(6)]);
        let m = IntMatrix::from_rows(&[vec![4i64, 0, 0], vec![0, 6, 0], vec![0, 0, 10]]).unwrap();
        assert_eq!(check(&m).diagonal, vec![BigInt::from(2), BigInt::from(2), BigInt::from(60)]);
    }
}
