//! Smith normal form over the integers.

use super::matrix::Matrix;
use crate::scalar::Coeff;

/// `s * m * t = d` with `s`, `t` unimodular and `d` diagonal with
/// non-negative entries `d_1 | d_2 | ... `, zeros last.
#[derive(Clone, Debug)]
pub struct Smith<R> {
    pub s: Matrix<R>,
    pub d: Matrix<R>,
    pub t: Matrix<R>,
}

impl<R: Coeff> Smith<R> {
    pub fn diagonal(&self) -> Vec<R> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

struct Reducer<R> {
    a: Matrix<R>,
    s: Option<Matrix<R>>,
    t: Option<Matrix<R>>,
}

impl<R: Coeff> Reducer<R> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(s) = &mut self.s {
            s.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(t) = &mut self.t {
            t.swap_cols(i, j);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, f: &R) {
        self.a.add_row(dst, src, f);
        if let Some(s) = &mut self.s {
            s.add_row(dst, src, f);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &R) {
        self.a.add_col(dst, src, f);
        if let Some(t) = &mut self.t {
            t.add_col(dst, src, f);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(s) = &mut self.s {
            s.negate_row(i);
        }
    }

    fn min_abs(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, R)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = self.a.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let av = v.abs();
                if best.as_ref().is_none_or(|b| av < b.2) {
                    let one = av.is_one();
                    best = Some((i, j, av));
                    if one {
                        let b = best.unwrap();
                        return Some((b.0, b.1));
                    }
                }
            }
        }
        best.map(|b| (b.0, b.1))
    }

    fn run(&mut self) {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        for t in 0..rows.min(cols) {
            loop {
                let Some((pi, pj)) = self.min_abs(t) else {
                    return;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let p = self.a.get(t, t).clone();
                let mut dirty = false;
                for i in t + 1..rows {
                    let v = self.a.get(i, t).clone();
                    if v.is_zero() {
                        continue;
                    }
                    let q = v.div_floor(&p);
                    self.add_row(i, t, &-q);
                    dirty |= !self.a.get(i, t).is_zero();
                }
                for j in t + 1..cols {
                    let v = self.a.get(t, j).clone();
                    if v.is_zero() {
                        continue;
                    }
                    let q = v.div_floor(&p);
                    self.add_col(j, t, &-q);
                    dirty |= !self.a.get(t, j).is_zero();
                }
                if dirty {
                    continue;
                }
                // divisibility: pull a non-multiple into the pivot row
                let bad = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !self.a.get(i, j).is_multiple_of(&p)));
                match bad {
                    Some(i) => self.add_row(t, i, &R::one()),
                    None => break,
                }
            }
            if self.a.get(t, t).is_negative() {
                self.negate_row(t);
            }
        }
    }
}

/// Smith normal form with both transforms.
pub fn smith_normal_form<R: Coeff>(m: &Matrix<R>) -> Smith<R> {
    let mut r = Reducer {
        a: m.clone(),
        s: Some(Matrix::identity(m.rows())),
        t: Some(Matrix::identity(m.cols())),
    };
    r.run();
    Smith {
        s: r.s.unwrap(),
        d: r.a,
        t: r.t.unwrap(),
    }
}

/// Nonzero diagonal entries of the Smith normal form, without transforms.
pub fn invariant_factors<R: Coeff>(m: &Matrix<R>) -> Vec<R> {
    let mut r = Reducer {
        a: m.clone(),
        s: None,
        t: None,
    };
    r.run();
    (0..m.rows().min(m.cols()))
        .map(|i| r.a.get(i, i).clone())
        .filter(|x| !x.is_zero())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{Signed, Zero};
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let m = Matrix::<BigInt>::from_i64(&[&[2, 4], &[6, 8]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(s.s.mul(&m).mul(&s.t), s.d);
        let id = Matrix::<BigInt>::identity(3);
        assert_eq!(smith_normal_form(&id).d, id);
        let z = Matrix::<BigInt>::zeros(2, 3);
        assert!(smith_normal_form(&z).d.is_zero());
        assert!(invariant_factors(&z).is_empty());
    }

    proptest! {
        #[test]
        fn unimodular_and_divisible(
            rows in 1usize..6,
            cols in 1usize..6,
            seed in proptest::collection::vec(-9i64..10, 36)
        ) {
            let m = Matrix::<BigInt>::from_rows(
                (0..rows).map(|i| (0..cols).map(|j| BigInt::from(seed[i * 6 + j])).collect()).collect(),
            );
            let s = smith_normal_form(&m);
            prop_assert_eq!(s.s.mul(&m).mul(&s.t), s.d.clone());
            prop_assert_eq!(s.s.determinant().abs(), BigInt::from(1));
            prop_assert_eq!(s.t.determinant().abs(), BigInt::from(1));
            for i in 0..rows {
                for j in 0..cols {
                    if i != j {
                        prop_assert!(s.d.get(i, j).is_zero());
                    }
                }
            }
            let diag = s.diagonal();
            let nz: Vec<_> = diag.iter().filter(|x| !x.is_zero()).cloned().collect();
            prop_assert!(diag.iter().skip(nz.len()).all(|x| x.is_zero()));
            for w in nz.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            prop_assert!(nz.iter().all(|x| x.is_positive()));
            prop_assert_eq!(invariant_factors(&m), nz);
        }
    }
}
