//! Dense polynomials in `h` with exact coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Coeff;

/// A polynomial `c0 + c1 h + c2 h^2 + ...`; trailing zeros are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HPoly<R> {
    coeffs: Vec<R>,
}

impl<R: Coeff> HPoly<R> {
    pub fn zero() -> Self {
        HPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn int(c: i64) -> Self {
        Self::constant(R::from(c))
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    /// `c * h^k`
    pub fn monomial(c: R, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    pub fn h() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        HPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `h`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Some(k) if the polynomial is a single monomial `c h^k`.
    pub fn monomial_degree(&self) -> Option<usize> {
        let mut found = None;
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                if found.is_some() {
                    return None;
                }
                found = Some(k);
            }
        }
        found
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// Multiply by `h^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        HPoly { coeffs }
    }

    pub fn eval(&self, h: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * h.clone() + c.clone();
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn map<S: Coeff>(&self, f: impl Fn(&R) -> S) -> HPoly<S> {
        HPoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl<R: Coeff> Default for HPoly<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a, R: Coeff> Add<&'a HPoly<R>> for &'a HPoly<R> {
    type Output = HPoly<R>;
    fn add(self, o: &HPoly<R>) -> HPoly<R> {
        let n = self.coeffs.len().max(o.coeffs.len());
        HPoly::from_coeffs((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<'a, R: Coeff> Sub<&'a HPoly<R>> for &'a HPoly<R> {
    type Output = HPoly<R>;
    fn sub(self, o: &HPoly<R>) -> HPoly<R> {
        let n = self.coeffs.len().max(o.coeffs.len());
        HPoly::from_coeffs((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<'a, R: Coeff> Mul<&'a HPoly<R>> for &'a HPoly<R> {
    type Output = HPoly<R>;
    fn mul(self, o: &HPoly<R>) -> HPoly<R> {
        if self.is_zero() || o.is_zero() {
            return HPoly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        HPoly::from_coeffs(out)
    }
}

impl<R: Coeff> Neg for &HPoly<R> {
    type Output = HPoly<R>;
    fn neg(self) -> HPoly<R> {
        HPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<R: Coeff> fmt::Display for HPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if k == 1 {
                        write!(f, "h")?;
                    } else {
                        write!(f, "h^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = HPoly<i64>;

    #[test]
    fn arithmetic() {
        let a = P::from_coeffs(vec![1, 2]);
        let b = P::from_coeffs(vec![-1, 2]);
        assert_eq!(&a * &b, P::from_coeffs(vec![-1, 0, 4]));
        assert_eq!(&a + &b, P::from_coeffs(vec![0, 4]));
        assert!((&a - &a).is_zero());
        assert_eq!(a.eval(&3), 7);
        assert_eq!(P::h().pow(3), P::monomial(1, 3));
    }

    #[test]
    fn display() {
        assert_eq!(
            P::from_coeffs(vec![-1, 2, 0, -1]).to_string(),
            "-1 + 2h - h^3"
        );
        assert_eq!(P::zero().to_string(), "0");
        assert_eq!(P::h().to_string(), "h");
    }

    #[test]
    fn monomial_detection() {
        assert_eq!(P::monomial(5, 2).monomial_degree(), Some(2));
        assert_eq!(P::from_coeffs(vec![1, 1]).monomial_degree(), None);
        assert_eq!(P::zero().monomial_degree(), None);
    }
}
