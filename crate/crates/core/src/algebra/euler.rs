//! Laurent polynomials in `q` with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Laurent {
    terms: BTreeMap<i64, i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: i64, e: i64) -> Self {
        let mut l = Self::zero();
        l.add_term(e, c);
        l
    }

    /// `q + q^{-1}`
    pub fn circle() -> Self {
        let mut l = Self::monomial(1, 1);
        l.add_term(-1, 1);
        l
    }

    pub fn add_term(&mut self, e: i64, c: i64) {
        let v = self.terms.entry(e).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: i64) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut l = self.clone();
        for (e, c) in o.terms() {
            l.add_term(e, c);
        }
        l
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut l = Self::zero();
        for (e, x) in self.terms() {
            l.add_term(e, x * c);
        }
        l
    }

    pub fn shift(&self, s: i64) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e + s, *c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut l = Self::zero();
        for (a, x) in self.terms() {
            for (b, y) in o.terms() {
                l.add_term(a + b, x * y);
            }
        }
        l
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms().enumerate() {
            let mag = c.abs();
            if n == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            let body = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
            match (mag, body.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (1, false) => write!(f, "{body}")?,
                _ => write!(f, "{mag}{body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unlink_polynomial() {
        let c = Laurent::circle().pow(3);
        assert_eq!(c.to_string(), "q^-3 + 3q^-1 + 3q + q^3");
        assert_eq!(Laurent::zero().to_string(), "0");
        assert_eq!(Laurent::monomial(-2, 0).to_string(), "-2");
        assert!(c.add(&c.scale(-1)).is_zero());
        assert_eq!(
            Laurent::circle().shift(1),
            Laurent::monomial(1, 0).add(&Laurent::monomial(1, 2))
        );
    }
}
