//! Closing a three-strand complex into a complex of free graded modules over
//! `A = Z[h][X]/(X^2 - hX)`.
//!
//! The left strand is closed first (`C_L`), then the right one (`C_R`); the
//! surviving arc is the middle strand, which therefore carries the basepoint
//! for the module structure and for reduced homology.

use crate::braid::BraidWord;
use crate::cobordism::tangle::{self, Cycles};
use crate::cobordism::{AElem, CobLinComb};
use crate::complex::{close_left, close_right, scan_word, Complex, Entry, Object, TangleComplex};
use crate::poly::HPoly;
use crate::scalar::Coeff;

/// A copy of `A` shifted so that its unit sits in q-degree `q + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AObj {
    pub q: i64,
}

impl Object for AObj {
    fn qshift(&self) -> i64 {
        self.q
    }
}

impl<R: Coeff> Entry for AElem<R> {
    fn is_zero(&self) -> bool {
        AElem::is_zero(self)
    }
    fn unit_sign(&self) -> Option<i64> {
        if !AElem::is_unit(self) {
            return None;
        }
        Some(if self.p.coeff(0).is_positive() { 1 } else { -1 })
    }
    fn then(&self, next: &Self) -> Self {
        self.mul(next)
    }
    fn add(&self, other: &Self) -> Self {
        AElem::add(self, other)
    }
    fn neg(&self) -> Self {
        AElem::neg(self)
    }
}

/// A bounded complex of shifted free `A`-modules.
pub type AComplex<R> = Complex<AObj, AElem<R>>;

impl<R: Coeff> AComplex<R> {
    /// An entry `x -> y` with `X^a h^b` terms must satisfy `q_y = q_x + 2(a + b)`.
    pub fn check_gradings(&self) -> Result<(), String> {
        for (f, t, e) in self.entries() {
            let dq = self.object(t).q - self.object(f).q;
            for (k, c) in e.p.coeffs().iter().enumerate() {
                if !c.is_zero() && dq != 2 * k as i64 {
                    return Err(format!(
                        "entry {f}->{t}: h^{k} term with shift difference {dq}"
                    ));
                }
            }
            for (k, c) in e.q.coeffs().iter().enumerate() {
                if !c.is_zero() && dq != 2 * (k as i64 + 1) {
                    return Err(format!(
                        "entry {f}->{t}: X h^{k} term with shift difference {dq}"
                    ));
                }
            }
        }
        Ok(())
    }

    /// Generators as `(homdeg, q)`, sorted.
    pub fn generators(&self) -> Vec<(i64, i64)> {
        let mut v: Vec<_> = self
            .ids()
            .iter()
            .map(|&id| (self.homdeg(id), self.object(id).q))
            .collect();
        v.sort();
        v
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut c = self.clone();
        let mut idmap = std::collections::BTreeMap::new();
        for id in other.ids() {
            idmap.insert(id, c.add_object(other.homdeg(id), *other.object(id)));
        }
        for (f, t, e) in other.entries() {
            c.set_entry(idmap[&f], idmap[&t], e.clone());
        }
        c
    }
}

/// The value of an endomorphism of the arc in `D^1_1` as an element of `A`.
pub fn arc_morphism_to_a<R: Coeff>(e: &CobLinComb<R>) -> AElem<R> {
    let a = tangle::arc();
    assert!(
        *e.source() == a && *e.target() == a,
        "expected an endomorphism of the arc"
    );
    debug_assert_eq!(Cycles::of(&a, &a).len(), 1);
    let get = |m: u64| e.terms().get(&m).cloned().unwrap_or_else(HPoly::zero);
    AElem::new(get(0), get(1))
}

/// Identify a complex of shifted arcs with a complex of free `A`-modules.
pub fn arcs_to_a<R: Coeff>(c: &TangleComplex<R>) -> AComplex<R> {
    c.map(
        |o| {
            assert_eq!(o.tangle, tangle::arc(), "closure left a non-arc object");
            AObj { q: o.q }
        },
        arc_morphism_to_a,
    )
}

/// `G`: close the right strand of a `D^2_2` complex and read it over `A`,
/// cancelling unit entries.
pub fn close_right_to_a<R: Coeff>(c: &TangleComplex<R>) -> AComplex<R> {
    let mut a = arcs_to_a(&close_right(c));
    a.eliminate_units();
    a
}

/// `G` applied to a single endomorphism of a `D^2_2` tangle that closes to
/// one arc and no circles (α̃), as an element of `A`.
pub fn close_right_morphism<R: Coeff>(e: &CobLinComb<R>) -> AElem<R> {
    arc_morphism_to_a(&e.close(1, 3))
}

/// The braid closure as an `A`-complex with the basepoint on the middle strand.
pub fn full_pipeline<R: Coeff>(w: &BraidWord) -> AComplex<R> {
    let scanned = scan_word(w);
    close_right_to_a(&close_left(&scanned))
}

/// `u^i q^j A(k)`: `q^j A` in degree `i` mapping to `q^{j+2k} A` in degree
/// `i+1` by `(2X - h)^k`.
pub fn build_aj<R: Coeff>(k: u32, i: i64, j: i64) -> AComplex<R> {
    assert!(k >= 1, "A(k) needs k >= 1");
    let mut c = Complex::new();
    let x = c.add_object(i, AObj { q: j });
    let y = c.add_object(
        i + 1,
        AObj {
            q: j + 2 * k as i64,
        },
    );
    c.set_entry(x, y, AElem::theta().pow(k));
    c
}

/// `u^i q^j A` with zero differential.
pub fn build_a<R: Coeff>(i: i64, j: i64) -> AComplex<R> {
    let mut c = Complex::new();
    c.add_object(i, AObj { q: j });
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_word;
    use crate::cobordism::tangle::*;
    use crate::cobordism::{dot_difference, dot_sum_minus_h};
    use crate::complex::TangleObj;

    type AC = AComplex<i64>;

    #[test]
    fn named_morphisms_under_g() {
        let t = alpha_tilde();
        // caps at bottom points 0,1 and cups at top points 2,3
        let c = dot_difference::<i64>(t, 0, 2);
        let d = dot_sum_minus_h::<i64>(t, 0, 2);
        assert!(close_right_morphism(&c).is_zero());
        assert_eq!(close_right_morphism(&d), AElem::theta());
        assert_eq!(
            close_right_morphism(&CobLinComb::<i64>::identity(t)),
            AElem::one()
        );
    }

    #[test]
    fn closing_omega_and_alpha() {
        let mut c: TangleComplex<i64> = Complex::new();
        c.add_object(0, TangleObj::new(omega(), 0));
        let l = close_left(&c);
        assert_eq!(
            l.grading_multiset(),
            vec![(0, -1, "ω̃".to_string()), (0, 1, "ω̃".to_string())]
        );
        let mut c: TangleComplex<i64> = Complex::new();
        c.add_object(0, TangleObj::new(alpha(), 0));
        assert_eq!(
            close_left(&c).grading_multiset(),
            vec![(0, 0, "ω̃".to_string())]
        );
        let mut c: TangleComplex<i64> = Complex::new();
        c.add_object(0, TangleObj::new(beta(), 0));
        assert_eq!(
            close_left(&c).grading_multiset(),
            vec![(0, -1, "α̃".to_string()), (0, 1, "α̃".to_string())]
        );
        for g in [gamma(), delta()] {
            let mut c: TangleComplex<i64> = Complex::new();
            c.add_object(0, TangleObj::new(g, 0));
            assert_eq!(
                close_left(&c).grading_multiset(),
                vec![(0, 0, "α̃".to_string())]
            );
        }
    }

    #[test]
    fn unlink() {
        let a: AC = full_pipeline(&BraidWord::empty());
        assert_eq!(a.generators(), vec![(0, -2), (0, 0), (0, 0), (0, 2)]);
        assert_eq!(a.entry_count(), 0);
    }

    #[test]
    fn trefoil() {
        let a: AC = full_pipeline(&parse_word("abab").unwrap());
        a.check_d2().unwrap();
        a.check_gradings().unwrap();
        // q^2 A ⊕ u^2 q^6 A(1)
        assert_eq!(a.generators(), vec![(0, 2), (2, 6), (3, 8)]);
        let (x, y) = (a.level(2)[0], a.level(3)[0]);
        assert_eq!(
            a.entry(x, y).unwrap().neg().neg(),
            AElem::theta().neg().neg()
        );
        let e = a.entry(x, y).unwrap();
        assert!(*e == AElem::theta() || *e == AElem::theta().neg());
    }

    #[test]
    fn aj_complexes() {
        let a: AC = build_aj(1, 2, 6);
        assert_eq!(a.generators(), vec![(2, 6), (3, 8)]);
        let a2: AC = build_aj(2, 0, 0);
        let (x, y) = (a2.level(0)[0], a2.level(1)[0]);
        assert_eq!(
            *a2.entry(x, y).unwrap(),
            AElem::new(HPoly::monomial(1, 2), HPoly::zero())
        );
        a2.check_gradings().unwrap();
    }
}
