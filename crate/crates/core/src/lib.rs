//! Khovanov and Bar-Natan homology of closed three-strand braids.
//!
//! Braid words are turned into complexes over the dotted cobordism category
//! one letter at a time, simplified by delooping and Gaussian elimination,
//! closed up into complexes of free modules over `A = Z[h][X]/(X^2 - hX)`, and
//! finally specialized to integer complexes whose homology is computed with
//! the Smith normal form.
//!
//! Everything is generic over the integer type; the aliases below fix it to
//! `i64`, which is ample for braids of desk-scale length.

pub mod algebra;
pub mod analysis;
pub mod braid;
pub mod closure;
pub mod cobordism;
pub mod complex;
pub mod oracle;
pub mod poly;
pub mod scalar;

pub use braid::{
    closure_meta, murasugi_word, parse_word, BraidLetter, BraidWord, ClosureMeta, MurasugiClass,
    MurasugiSpec,
};
pub use scalar::{Coeff, Field, Fp, F2};

pub type HPoly = poly::HPoly<i64>;
pub type CobLinComb = cobordism::CobLinComb<i64>;
pub type AElem = cobordism::AElem<i64>;

pub type TangleComplex = complex::TangleComplex<i64>;
pub type AComplex = closure::AComplex<i64>;
pub type IntComplex = algebra::IntComplex<i64>;

pub use algebra::{BigradedGroups, Group, Laurent};

/// The closure of `w` as a complex of free `A`-modules, basepoint on the middle strand.
pub fn bar_natan_complex(w: &BraidWord) -> AComplex {
    closure::full_pipeline(w)
}

/// Integral Khovanov homology of the closure of `w`, unreduced or reduced.
pub fn khovanov_homology(w: &BraidWord, reduced: bool) -> BigradedGroups {
    let a = bar_natan_complex(w);
    if reduced {
        algebra::homology(&algebra::specialize_reduced(&a))
    } else {
        algebra::homology(&algebra::specialize_unreduced(&a))
    }
}
