//! Explicit model complexes: the quotients `C_∞/C_{n,∞}` over `D^2_2`, the
//! periodic complex `B` over `D^3_3` with its truncations, and `B̃`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::report::Report;
use crate::algebra::{homology, specialize_reduced, specialize_unreduced, BigradedGroups};
use crate::braid::{ab_power, BraidLetter, BraidWord};
use crate::closure::close_right_to_a;
use crate::cobordism::tangle::{self, FlatTangle};
use crate::cobordism::{dot_difference, dot_sum_minus_h, CobLinComb};
use crate::complex::{close_left, scan_word, simplify, stack, Complex, TangleComplex, TangleObj};
use crate::scalar::Coeff;

/// Which truncation of `B` (or `B̃`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BVariant {
    /// `B_m`
    M(u32),
    /// `B^a_{3k+1}`, indexed by `k`
    A(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Fixture {
    CinfQuotient(u32),
    B(BVariant),
    Btilde(BVariant),
}

impl fmt::Display for BVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BVariant::M(m) => write!(f, "{m}"),
            BVariant::A(k) => write!(f, "a{}", 3 * k + 1),
        }
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fixture::CinfQuotient(n) => write!(f, "C{n}"),
            Fixture::B(v) => write!(f, "B{v}"),
            Fixture::Btilde(v) => write!(f, "Bt{v}"),
        }
    }
}

/// A bottom point on the cap and a top point on the cup of a circle-free
/// tangle with one cap and one cup.
fn cap_cup(t: &FlatTangle) -> (usize, usize) {
    let (m, arcs) = (t.bottom(), t.arcs());
    let cap = arcs
        .iter()
        .find(|&&(a, b)| a < m && b < m)
        .expect("tangle has a cap")
        .0;
    let cup = arcs
        .iter()
        .find(|&&(a, b)| a >= m && b >= m)
        .expect("tangle has a cup")
        .0;
    (cap, cup)
}

/// `c = X_cap - X_cup`
pub fn morph_c<R: Coeff>(t: FlatTangle) -> CobLinComb<R> {
    let (a, b) = cap_cup(&t);
    dot_difference(t, a, b)
}

/// `d = X_cap + X_cup - h`
pub fn morph_d<R: Coeff>(t: FlatTangle) -> CobLinComb<R> {
    let (a, b) = cap_cup(&t);
    dot_sum_minus_h(t, a, b)
}

/// `q^n C_∞/C_{n,∞}` without the `q^n`: `ω̃` in degree 0 and `q^{2k-1} α̃` in
/// degree `k` for `1 <= k <= n`; `d_0` is the saddle, `d_{2k-1} = c`,
/// `d_{2k} = d`.
pub fn cinf_quotient<R: Coeff>(n: u32) -> TangleComplex<R> {
    let (w, a) = (tangle::omega_tilde(), tangle::alpha_tilde());
    let mut c = Complex::new();
    let mut prev = c.add_object(0, TangleObj::new(w, 0));
    for k in 1..=n as i64 {
        let x = c.add_object(k, TangleObj::new(a, 2 * k - 1));
        let e = match k {
            1 => CobLinComb::disks(w, a),
            _ if k % 2 == 0 => morph_c(a),
            _ => morph_d(a),
        };
        c.set_entry(prev, x, e);
        prev = x;
    }
    c
}

/// Objects of `B` in homological degree `i >= 1`, with their `q` shift.
fn b_level(i: i64) -> [(FlatTangle, i64); 2] {
    let (m, r) = ((i - 1).div_euclid(4), (i - 1).rem_euclid(4));
    let (ab, gd) = (
        [tangle::alpha(), tangle::beta()],
        [tangle::gamma(), tangle::delta()],
    );
    let (pair, q) = match r {
        0 => (ab, 1),
        1 => (gd, 2),
        2 => (gd, 4),
        _ => (ab, 5),
    };
    [(pair[0], q + 6 * m), (pair[1], q + 6 * m)]
}

/// `B` cut off above homological degree `top`; with `drop_delta` the `δ`
/// object in degree `top` is left out as well.
fn b_truncated<R: Coeff>(top: i64, drop_delta: bool) -> TangleComplex<R> {
    let mut c = Complex::new();
    let w = c.add_object(0, TangleObj::new(tangle::omega(), 0));
    let mut prev: Vec<usize> = vec![w];
    for i in 1..=top {
        let objs = b_level(i);
        let keep = if i == top && drop_delta && objs[1].0 == tangle::delta() {
            1
        } else {
            2
        };
        let ids: Vec<usize> = objs[..keep]
            .iter()
            .map(|&(t, q)| c.add_object(i, TangleObj::new(t, q)))
            .collect();
        let r = (i - 1).rem_euclid(4);
        for (s, &from) in prev.iter().enumerate() {
            for (t, &to) in ids.iter().enumerate() {
                let (src, dst) = (c.object(from).tangle, c.object(to).tangle);
                let e = if i == 1 {
                    CobLinComb::disks(src, dst)
                } else if s == t {
                    // straight arrows: -S into degrees 4m+2 and 4m+4, d otherwise
                    if r == 1 || r == 3 {
                        CobLinComb::disks(src, dst).neg()
                    } else {
                        morph_d(src)
                    }
                } else {
                    CobLinComb::disks(src, dst)
                };
                c.set_entry(from, to, e);
            }
        }
        prev = ids;
    }
    c
}

/// `B_m` or `B^a_{3k+1}`.
pub fn b_fixture<R: Coeff>(v: BVariant) -> TangleComplex<R> {
    match v {
        BVariant::M(m) => {
            let k = (m / 3) as i64;
            match m % 3 {
                0 => b_truncated(4 * k, false),
                1 => b_truncated(4 * k + 2, true),
                _ => b_truncated(4 * k + 3, true),
            }
        }
        BVariant::A(k) => b_truncated(4 * k as i64 + 2, false),
    }
}

/// `B̃` truncations, obtained as `C_L` of the matching `B` truncation.
pub fn btilde_fixture<R: Coeff>(v: BVariant) -> TangleComplex<R> {
    close_left(&b_fixture(v))
}

pub fn build_fixture<R: Coeff>(f: Fixture) -> TangleComplex<R> {
    match f {
        Fixture::CinfQuotient(n) => cinf_quotient(n),
        Fixture::B(v) => b_fixture(v),
        Fixture::Btilde(v) => btilde_fixture(v),
    }
}

/// Unreduced and reduced integral homology of the closure of a `D^3_3`
/// complex.
pub fn closure_homology<R: Coeff>(c: &TangleComplex<R>) -> (BigradedGroups, BigradedGroups) {
    let a = close_right_to_a(&close_left(c));
    (
        homology(&specialize_unreduced(&a)),
        homology(&specialize_reduced(&a)),
    )
}

/// Stack a single object `t` on top of `c` and simplify.
pub fn tensor_object<R: Coeff>(c: &TangleComplex<R>, t: FlatTangle) -> TangleComplex<R> {
    let mut one = Complex::new();
    one.add_object(0, TangleObj::new(t, 0));
    simplify(&stack(c, &one))
}

fn strip_tilde(v: Vec<(i64, i64, String)>) -> Vec<(i64, i64, String)> {
    v.into_iter()
        .map(|(i, q, n)| (i, q, n.replace('\u{303}', "")))
        .collect()
}

fn multiset_report(
    name: &str,
    claim: &str,
    got: Vec<(i64, i64, String)>,
    want: Vec<(i64, i64, String)>,
) -> Report {
    if got == want {
        Report::pass(name, claim)
    } else {
        Report::fail_with(name, claim, format!("objects {got:?}, expected {want:?}"))
    }
}

/// Every fixture comparison: `a^n` against `q^n C_∞/C_{n,∞}` for `n <= nmax`,
/// the contraction `C_∞/C_{n,∞} ⊗ α̃ ≃ q^{2n} α̃` (and the same for the
/// scanned `a^n` against `α`), and `(ab)^m` against `q^{2m} B_m` for
/// `m <= mmax` together with `(ab)^{3k+1}a` against `q^{6k+3} B^a_{3k+1}`,
/// both as object multisets and by closure homology.
pub fn fixture_reports(nmax: u32, mmax: u32) -> Vec<Report> {
    let mut out = Vec::new();
    for n in 1..=nmax {
        let name = format!("a^{n}");
        let s: TangleComplex<i64> = scan_word(&BraidWord::new(vec![
            BraidLetter::from_char('a')
                .unwrap();
            n as usize
        ]));
        let want = strip_tilde(
            cinf_quotient::<i64>(n)
                .shifted(0, n as i64)
                .grading_multiset(),
        );
        out.push(multiset_report(
            &name,
            "two-strand-torus-tangle",
            s.grading_multiset(),
            want,
        ));
        let t = tensor_object(&cinf_quotient::<i64>(n), tangle::alpha_tilde());
        let want = vec![(n as i64, 2 * n as i64, tangle::alpha_tilde().name())];
        out.push(multiset_report(
            &name,
            "contraction-quotient",
            t.grading_multiset(),
            want,
        ));
        let t = tensor_object(&s, tangle::alpha());
        let want = vec![(n as i64, 3 * n as i64, tangle::alpha().name())];
        out.push(multiset_report(
            &name,
            "contraction-scanned",
            t.grading_multiset(),
            want,
        ));
    }
    let mut torus = |name: String, w: BraidWord, b: TangleComplex<i64>| {
        let s: TangleComplex<i64> = scan_word(&w);
        let claim = "torus-tangle-model";
        let r = multiset_report(&name, claim, s.grading_multiset(), b.grading_multiset());
        out.push(if !r.pass {
            r
        } else if closure_homology(&s) != closure_homology(&b) {
            Report::fail_with(&name, claim, "closure homology differs")
        } else {
            r
        });
    };
    for m in 0..=mmax {
        torus(
            format!("(ab)^{m}"),
            ab_power(m as i64),
            b_fixture(BVariant::M(m)).shifted(0, 2 * m as i64),
        );
    }
    for k in 0..=(mmax.saturating_sub(1) / 3) {
        let w = ab_power(3 * k as i64 + 1)
            .concat(&BraidWord::new(vec![BraidLetter::from_char('a').unwrap()]));
        torus(
            format!("(ab)^{}a", 3 * k + 1),
            w,
            b_fixture(BVariant::A(k)).shifted(0, 6 * k as i64 + 3),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_word;

    type T = TangleComplex<i64>;

    fn names(c: &T) -> Vec<(i64, i64, String)> {
        c.grading_multiset()
    }

    #[test]
    fn fixtures_are_complexes() {
        for n in 0..6 {
            let c: T = cinf_quotient(n);
            c.check_d2().unwrap();
            c.check_gradings().unwrap();
        }
        for m in 0..10 {
            let c: T = b_fixture(BVariant::M(m));
            c.check_d2().unwrap();
            c.check_gradings().unwrap();
        }
        for k in 0..3 {
            let c: T = b_fixture(BVariant::A(k));
            c.check_d2().unwrap();
            c.check_gradings().unwrap();
        }
    }

    #[test]
    fn b3_top_objects() {
        let c: T = b_fixture(BVariant::M(3));
        assert_eq!(c.len(), 9);
        let top: Vec<_> = names(&c).into_iter().filter(|x| x.0 == 4).collect();
        assert_eq!(top, vec![(4, 5, "α".into()), (4, 5, "β".into())]);
        let b4: T = b_fixture(BVariant::M(4));
        let top: Vec<_> = names(&b4).into_iter().filter(|x| x.0 == 6).collect();
        assert_eq!(top, vec![(6, 8, "γ".into())]);
    }

    #[test]
    fn btilde_endings() {
        let top = |v: BVariant| {
            let c: T = btilde_fixture(v);
            let h = *c.homdegs().iter().max().unwrap();
            strip_tilde(names(&c).into_iter().filter(|x| x.0 == h).collect())
        };
        assert_eq!(
            strip_tilde(names(&btilde_fixture(BVariant::M(0)))),
            vec![(0, -1, "ω".into()), (0, 1, "ω".into())]
        );
        for k in 1..3 {
            assert_eq!(
                top(BVariant::M(3 * k)),
                vec![
                    (4 * k as i64, 6 * k as i64 - 1, "ω".into()),
                    (4 * k as i64, 6 * k as i64, "α".into())
                ]
            );
            assert_eq!(
                top(BVariant::M(3 * k + 1)),
                vec![
                    (4 * k as i64 + 1, 6 * k as i64, "α".into()),
                    (4 * k as i64 + 1, 6 * k as i64 + 1, "ω".into())
                ]
            );
            assert_eq!(
                top(BVariant::A(k)),
                vec![(4 * k as i64 + 2, 6 * k as i64 + 2, "α".into())]
            );
            assert_eq!(
                top(BVariant::M(3 * k + 2)),
                vec![(4 * k as i64 + 3, 6 * k as i64 + 4, "α".into())]
            );
        }
    }

    #[test]
    fn short_quotient() {
        let c: T = cinf_quotient(2);
        assert_eq!(
            names(&c),
            vec![(0, 0, "ω̃".into()), (1, 1, "α̃".into()), (2, 3, "α̃".into())]
        );
    }

    #[test]
    fn two_crossing_tangle() {
        let s: T = scan_word(&parse_word("aa").unwrap());
        let f: T = cinf_quotient::<i64>(2);
        let want: Vec<_> = names(&f)
            .into_iter()
            .map(|(i, q, n)| (i, q + 2, n.replace('\u{303}', "")))
            .collect();
        assert_eq!(names(&s), want);
    }

    #[test]
    fn torus_tangle_matches_b() {
        for m in 0..5 {
            let s: T = scan_word(&ab_power(m as i64));
            let b: T = b_fixture(BVariant::M(m));
            assert_eq!(names(&s), names(&b.shifted(0, 2 * m as i64)), "m = {m}");
            assert_eq!(
                closure_homology(&s),
                closure_homology(&b.shifted(0, 2 * m as i64)),
                "m = {m}"
            );
        }
    }
}
