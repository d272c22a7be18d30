//! Complexes of flat tangles: letter complexes, stacking, delooping and the
//! scanning simplifier.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{Complex, Entry, Object};
use crate::braid::{BraidLetter, BraidWord, Generator};
use crate::cobordism::tangle::{self, Cycles, FlatTangle};
use crate::cobordism::CobLinComb;
use crate::poly::HPoly;
use crate::scalar::Coeff;

/// A q-shifted flat tangle `q^q T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TangleObj {
    pub tangle: FlatTangle,
    pub q: i64,
}

impl TangleObj {
    pub fn new(tangle: FlatTangle, q: i64) -> Self {
        TangleObj { tangle, q }
    }
}

impl Object for TangleObj {
    fn qshift(&self) -> i64 {
        self.q
    }
}

impl<R: Coeff> Entry for CobLinComb<R> {
    fn is_zero(&self) -> bool {
        CobLinComb::is_zero(self)
    }
    fn unit_sign(&self) -> Option<i64> {
        CobLinComb::unit_sign(self)
    }
    fn then(&self, next: &Self) -> Self {
        CobLinComb::then(self, next).expect("composable entries")
    }
    fn add(&self, other: &Self) -> Self {
        CobLinComb::add(self, other)
    }
    fn neg(&self) -> Self {
        CobLinComb::neg(self)
    }
}

pub type TangleComplex<R> = Complex<TangleObj, CobLinComb<R>>;

impl<R: Coeff> TangleComplex<R> {
    /// Every nonzero entry must be a degree-zero map of shifted objects.
    pub fn check_gradings(&self) -> Result<(), String> {
        for (f, t, e) in self.entries() {
            let (of, ot) = (self.object(f), self.object(t));
            if *e.source() != of.tangle || *e.target() != ot.tangle {
                return Err(format!("entry {f}->{t} has wrong endpoints"));
            }
            match e.q_degree() {
                Ok(Some(d)) if d + ot.q - of.q == 0 => {}
                Ok(d) => {
                    return Err(format!(
                        "entry {f}->{t} has degree {d:?}, shifts {} -> {}",
                        of.q, ot.q
                    ))
                }
                Err(err) => return Err(format!("entry {f}->{t}: {err}")),
            }
        }
        Ok(())
    }

    pub fn has_circles(&self) -> bool {
        self.ids()
            .iter()
            .any(|&id| self.object(id).tangle.circles() > 0)
    }

    /// Multiset of `(homdeg, qshift, tangle name)`.
    pub fn grading_multiset(&self) -> Vec<(i64, i64, String)> {
        let mut v: Vec<_> = self
            .ids()
            .iter()
            .map(|&id| {
                (
                    self.homdeg(id),
                    self.object(id).q,
                    self.object(id).tangle.name(),
                )
            })
            .collect();
        v.sort();
        v
    }

    /// Shift every object by `u^i q^j`.
    pub fn shifted(&self, i: i64, j: i64) -> Self {
        let mut c = Complex::new();
        let mut idmap = BTreeMap::new();
        for id in self.ids() {
            let o = self.object(id);
            idmap.insert(
                id,
                c.add_object(self.homdeg(id) + i, TangleObj::new(o.tangle, o.q + j)),
            );
        }
        for (f, t, e) in self.entries() {
            c.set_entry(idmap[&f], idmap[&t], e.clone());
        }
        c
    }
}

/// The identity three-strand tangle at bidegree (0, 0).
pub fn unit_complex<R: Coeff>() -> TangleComplex<R> {
    let mut c = Complex::new();
    c.add_object(0, TangleObj::new(tangle::omega(), 0));
    c
}

/// `a: qω → q²α`, `b: qω → q²β`, `a⁻¹: q⁻²α → q⁻¹ω`, `b⁻¹: q⁻²β → q⁻¹ω`,
/// each with the saddle as differential.
pub fn letter_complex<R: Coeff>(l: BraidLetter) -> TangleComplex<R> {
    let smooth = match l.generator {
        Generator::A => tangle::alpha(),
        Generator::B => tangle::beta(),
    };
    let w = tangle::omega();
    let mut c = Complex::new();
    if l.is_positive() {
        let x = c.add_object(0, TangleObj::new(w, 1));
        let y = c.add_object(1, TangleObj::new(smooth, 2));
        c.set_entry(x, y, CobLinComb::disks(w, smooth));
    } else {
        let x = c.add_object(-1, TangleObj::new(smooth, -2));
        let y = c.add_object(0, TangleObj::new(w, -1));
        c.set_entry(x, y, CobLinComb::disks(smooth, w));
    }
    c
}

/// Tensor product with `upper` stacked on top of `lower`; the differential of
/// the upper factor carries the Koszul sign of the lower degree.
pub fn stack<R: Coeff>(lower: &TangleComplex<R>, upper: &TangleComplex<R>) -> TangleComplex<R> {
    let mut c = Complex::new();
    let mut idmap = BTreeMap::new();
    for x in lower.ids() {
        for y in upper.ids() {
            let (ox, oy) = (lower.object(x), upper.object(y));
            let (t, _) = ox.tangle.glue(&oy.tangle).expect("stackable tangles");
            let id = c.add_object(
                lower.homdeg(x) + upper.homdeg(y),
                TangleObj::new(t, ox.q + oy.q),
            );
            idmap.insert((x, y), id);
        }
    }
    for (x1, x2, e) in lower.entries() {
        for y in upper.ids() {
            let id = CobLinComb::identity(upper.object(y).tangle);
            let g = e.glue(&id).expect("glue");
            c.set_entry(idmap[&(x1, y)], idmap[&(x2, y)], g);
        }
    }
    for (y1, y2, e) in upper.entries() {
        for x in lower.ids() {
            let id = CobLinComb::identity(lower.object(x).tangle);
            let mut g = id.glue(e).expect("glue");
            if lower.homdeg(x).rem_euclid(2) == 1 {
                g = g.neg();
            }
            c.set_entry(idmap[&(x, y1)], idmap[&(x, y2)], g);
        }
    }
    c
}

/// Replace every object containing circles by its `2^c` circle-free
/// summands `q^{±1±…±1} T'`, conjugating the differential by the delooping
/// isomorphism.
pub fn deloop<R: Coeff>(c: &TangleComplex<R>) -> TangleComplex<R> {
    if !c.has_circles() {
        return c.clone();
    }
    let mut out = Complex::new();
    // old id -> list of (new id, sign mask) where bit i set means "+" on circle i
    let mut split: BTreeMap<usize, Vec<(usize, u32)>> = BTreeMap::new();
    for id in c.ids() {
        let o = c.object(id);
        let k = o.tangle.circles();
        let base = o.tangle.circle_free();
        let mut parts = Vec::new();
        for sigma in 0..(1u32 << k) {
            let plus = sigma.count_ones() as i64;
            let q = o.q + plus - (k as i64 - plus);
            parts.push((out.add_object(c.homdeg(id), TangleObj::new(base, q)), sigma));
        }
        split.insert(id, parts);
    }
    for (f, t, e) in c.entries() {
        let (sf, st) = (c.object(f).tangle, c.object(t).tangle);
        let (bf, bt) = (sf.circle_free(), st.circle_free());
        let cyc = Cycles::of(&sf, &st);
        let arc_mask = (1u64 << cyc.arc_cycles()) - 1;
        for &(nf, sigma) in &split[&f] {
            for &(nt, tau) in &split[&t] {
                let mut terms: BTreeMap<u64, HPoly<R>> = BTreeMap::new();
                'term: for (mask, coeff) in e.terms() {
                    let mut hpow = 0;
                    for i in 0..sf.circles() {
                        let dotted = mask >> cyc.source_circle(i) & 1 == 1;
                        if sigma >> i & 1 == 1 {
                            // birth: keeps only dotted disks, which cap to 1
                            if !dotted {
                                continue 'term;
                            }
                        } else if dotted {
                            // dotted birth capping a dotted disk gives h
                            hpow += 1;
                        }
                    }
                    for j in 0..st.circles() {
                        let dotted = mask >> cyc.target_circle(j) & 1 == 1;
                        let plus = tau >> j & 1 == 1;
                        // Φ₊ kills dotted disks, Φ₋ kills undotted ones
                        if plus == dotted {
                            continue 'term;
                        }
                    }
                    let v = coeff.shift(hpow);
                    let entry = terms.entry(mask & arc_mask).or_insert_with(HPoly::zero);
                    *entry = &*entry + &v;
                }
                let comb = CobLinComb::from_terms(bf, bt, terms);
                if !comb.is_zero() {
                    out.set_entry(nf, nt, comb);
                }
            }
        }
    }
    out
}

/// Deloop, then cancel every `±identity` entry.
pub fn simplify<R: Coeff>(c: &TangleComplex<R>) -> TangleComplex<R> {
    let mut d = deloop(c);
    d.eliminate_units();
    d
}

/// Fold the word letter by letter, simplifying after every step.
pub fn scan_word<R: Coeff>(w: &BraidWord) -> TangleComplex<R> {
    scan_word_checked(w, false)
}

/// As [`scan_word`], optionally asserting `d∘d = 0` and homogeneity after
/// every stacking and simplification.
pub fn scan_word_checked<R: Coeff>(w: &BraidWord, check: bool) -> TangleComplex<R> {
    let mut c = unit_complex();
    for &l in &w.letters {
        let s = stack(&c, &letter_complex(l));
        if check {
            verify(&s, "stack");
        }
        let d = deloop(&s);
        if check {
            verify(&d, "deloop");
        }
        c = d;
        c.eliminate_units();
        if check {
            verify(&c, "eliminate");
        }
    }
    c
}

fn verify<R: Coeff>(c: &TangleComplex<R>, stage: &str) {
    c.check_d2().unwrap_or_else(|e| panic!("{stage}: {e}"));
    c.check_gradings()
        .unwrap_or_else(|e| panic!("{stage}: {e}"));
}

fn close_with<R: Coeff>(c: &TangleComplex<R>, b: usize, t: usize) -> TangleComplex<R> {
    let closed = c.map(
        |o| TangleObj::new(o.tangle.close(b, t).0, o.q),
        |e| e.close(b, t),
    );
    simplify(&closed)
}

/// `C_L`: join the leftmost bottom and top points of a `D^3_3` complex and
/// simplify the resulting `D^2_2` complex.
pub fn close_left<R: Coeff>(c: &TangleComplex<R>) -> TangleComplex<R> {
    close_with(c, 0, 3)
}

/// `C_R`: join the rightmost points of a `D^2_2` complex, leaving a complex
/// of shifted arcs in `D^1_1`.
pub fn close_right<R: Coeff>(c: &TangleComplex<R>) -> TangleComplex<R> {
    close_with(c, 1, 3)
}

/// Text dump: one line per object, `i=<homdeg> q=<shift> <name>`, followed by
/// the differential entries `(<row>,<col>): <coefficient>·<cobordism>` where
/// the row indexes the target level and the column the source level.
pub fn dump<R: Coeff>(c: &TangleComplex<R>) -> String {
    let mut s = String::new();
    for h in c.homdegs() {
        let level = c.level(h);
        for &id in &level {
            let o = c.object(id);
            let _ = writeln!(s, "i={h} q={} {}", o.q, o.tangle.name());
        }
        let next = c.level(h + 1);
        for (col, &x) in level.iter().enumerate() {
            for (y, e) in c.outgoing(x) {
                let row = next
                    .iter()
                    .position(|&n| n == y)
                    .expect("target in next level");
                let _ = writeln!(s, "({row},{col}): {}", e.descriptor());
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_word;
    use crate::cobordism::tangle::*;

    type TC = TangleComplex<i64>;

    #[test]
    fn letters_are_complexes() {
        for l in [
            BraidLetter::A,
            BraidLetter::A_INV,
            BraidLetter::B,
            BraidLetter::B_INV,
        ] {
            let c: TC = letter_complex(l);
            assert_eq!(c.len(), 2);
            c.check_d2().unwrap();
            c.check_gradings().unwrap();
        }
        let c: TC = letter_complex(BraidLetter::B_INV);
        assert_eq!(
            c.grading_multiset(),
            vec![(-1, -2, "β".to_string()), (0, -1, "ω".to_string())]
        );
    }

    #[test]
    fn stack_ab() {
        let c: TC = stack(
            &letter_complex(BraidLetter::A),
            &letter_complex(BraidLetter::B),
        );
        c.check_d2().unwrap();
        c.check_gradings().unwrap();
        let names: Vec<_> = c.grading_multiset();
        assert_eq!(
            names,
            vec![
                (0, 2, "ω".to_string()),
                (1, 3, "α".to_string()),
                (1, 3, "β".to_string()),
                (2, 4, "γ".to_string())
            ]
        );
    }

    #[test]
    fn reidemeister_two() {
        for w in ["aA", "Aa", "bB", "Bb"] {
            let c: TC = scan_word_checked(&parse_word(w).unwrap(), true);
            assert_eq!(c.grading_multiset(), vec![(0, 0, "ω".to_string())], "{w}");
        }
    }

    #[test]
    fn unit_is_neutral() {
        let a: TC = letter_complex(BraidLetter::A);
        let s = simplify(&stack(&unit_complex(), &a));
        assert_eq!(s.grading_multiset(), a.grading_multiset());
    }

    #[test]
    fn deloop_single_circle() {
        let t = alpha().glue(&epsilon()).unwrap().0;
        let mut c: TC = Complex::new();
        c.add_object(0, TangleObj::new(t, 0));
        let d = deloop(&c);
        let mut g = d.grading_multiset();
        g.sort();
        assert_eq!(g, vec![(0, -1, "ε".to_string()), (0, 1, "ε".to_string())]);
    }

    #[test]
    fn deloop_dotting_the_circle() {
        // endomorphism "dot the circle" of circle ⊔ arc in D^1_1
        let t = arc().with_circles(1);
        // build a two-term complex t --(dotted cylinder)--> t and deloop it
        let dotted_cyl = crate::cobordism::DottedCobordism {
            source: t,
            target: t,
            pieces: vec![
                crate::cobordism::RawPiece {
                    cycles: vec![0],
                    genus: 0,
                    dots: 0,
                },
                crate::cobordism::RawPiece {
                    cycles: vec![1, 2],
                    genus: 0,
                    dots: 1,
                },
            ],
        }
        .reduce_canonical::<i64>();
        let mut c: TC = Complex::new();
        let x = c.add_object(0, TangleObj::new(t, 0));
        let y = c.add_object(1, TangleObj::new(t, 2));
        c.set_entry(x, y, dotted_cyl);
        c.check_gradings().unwrap();
        let d = deloop(&c);
        d.check_gradings().unwrap();
        // matrix of X on A = {1 (q+1), X (q-1)}: 1 -> X, X -> hX
        let by_shift = |h: i64, q: i64| {
            d.level(h)
                .into_iter()
                .find(|&id| d.object(id).q == q)
                .unwrap()
        };
        let (x_plus, x_minus) = (by_shift(0, 1), by_shift(0, -1));
        let (y_plus, y_minus) = (by_shift(1, 3), by_shift(1, 1));
        assert!(d.entry(x_plus, y_plus).is_none());
        assert_eq!(d.entry(x_plus, y_minus).unwrap().unit_sign(), Some(1));
        assert_eq!(
            d.entry(x_minus, y_minus).unwrap().terms().get(&0),
            Some(&HPoly::h())
        );
        assert!(d.entry(x_minus, y_plus).is_none());
    }

    #[test]
    fn dump_format() {
        let c: TC = letter_complex(BraidLetter::A);
        let s = dump(&c);
        assert!(
            s.starts_with("i=0 q=1 ω\n(0,0): (1)·disks\ni=1 q=2 α\n"),
            "{s}"
        );
    }
}
