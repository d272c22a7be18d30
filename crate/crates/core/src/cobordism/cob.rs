//! Morphisms of the dotted cobordism category over `Z[h]`.

use std::collections::BTreeMap;
use std::fmt;

use super::surface::{assemble, Piece};
use super::tangle::{Cycles, FlatTangle, TangleError};
use crate::poly::HPoly;
use crate::scalar::Coeff;

/// A `Z[h]`-linear combination of cobordisms `source -> target`.
///
/// Each basis element is a union of disks, one per boundary cycle of the pair
/// (see [`Cycles`]); bit `c` of the key says whether the disk on cycle `c`
/// carries a dot.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CobLinComb<R> {
    source: FlatTangle,
    target: FlatTangle,
    terms: BTreeMap<u64, HPoly<R>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CobError {
    #[error("middle tangles differ: {0} vs {1}")]
    Mismatch(FlatTangle, FlatTangle),
    #[error(transparent)]
    Tangle(#[from] TangleError),
    #[error("inhomogeneous combination: degrees {0} and {1}")]
    Inhomogeneous(i64, i64),
}

/// A cobordism given piece by piece, before reduction: every boundary cycle
/// of the pair belongs to exactly one piece, pieces may have any genus and
/// number of dots, and pieces without boundary are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DottedCobordism {
    pub source: FlatTangle,
    pub target: FlatTangle,
    pub pieces: Vec<RawPiece>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawPiece {
    pub cycles: Vec<usize>,
    pub genus: u32,
    pub dots: u32,
}

impl DottedCobordism {
    /// Apply the dot, neck-cutting and sphere relations and collect terms.
    pub fn reduce_canonical<R: Coeff>(&self) -> CobLinComb<R> {
        let cyc = Cycles::of(&self.source, &self.target);
        let mut owners = vec![usize::MAX; cyc.len()];
        let pieces: Vec<Piece> = self
            .pieces
            .iter()
            .enumerate()
            .map(|(i, p)| {
                for &c in &p.cycles {
                    assert_eq!(owners[c], usize::MAX, "cycle {c} in two pieces");
                    owners[c] = i;
                }
                Piece {
                    chi: 2 - 2 * p.genus as i32 - p.cycles.len() as i32,
                    dots: p.dots,
                }
            })
            .collect();
        assert!(
            owners.iter().all(|&o| o != usize::MAX),
            "every cycle needs a piece"
        );
        CobLinComb {
            source: self.source,
            target: self.target,
            terms: assemble(&pieces, &[], &owners),
        }
    }
}

impl<R: Coeff> CobLinComb<R> {
    pub fn zero(source: FlatTangle, target: FlatTangle) -> Self {
        CobLinComb {
            source,
            target,
            terms: BTreeMap::new(),
        }
    }

    pub fn source(&self) -> &FlatTangle {
        &self.source
    }

    pub fn target(&self) -> &FlatTangle {
        &self.target
    }

    pub fn terms(&self) -> &BTreeMap<u64, HPoly<R>> {
        &self.terms
    }

    pub fn from_terms(
        source: FlatTangle,
        target: FlatTangle,
        terms: BTreeMap<u64, HPoly<R>>,
    ) -> Self {
        let mut c = CobLinComb {
            source,
            target,
            terms,
        };
        c.terms.retain(|_, v| !v.is_zero());
        c
    }

    /// A single basis element with coefficient `coeff`.
    pub fn basis(source: FlatTangle, target: FlatTangle, mask: u64, coeff: HPoly<R>) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mask, coeff);
        }
        CobLinComb {
            source,
            target,
            terms,
        }
    }

    /// Undotted disks on every cycle. Between circle-free tangles that differ
    /// by one or two saddles this is the surgery `S` or the double surgery `D`.
    pub fn disks(source: FlatTangle, target: FlatTangle) -> Self {
        Self::basis(source, target, 0, HPoly::one())
    }

    pub fn identity(t: FlatTangle) -> Self {
        let cyc = Cycles::of(&t, &t);
        let arcs = cyc.arc_cycles();
        let mut pieces = vec![Piece::DISK; arcs];
        let mut owners: Vec<usize> = (0..arcs).collect();
        owners.resize(cyc.len(), 0);
        for i in 0..t.circles() {
            owners[cyc.source_circle(i)] = pieces.len();
            owners[cyc.target_circle(i)] = pieces.len();
            pieces.push(Piece { chi: 0, dots: 0 });
        }
        CobLinComb {
            source: t,
            target: t,
            terms: assemble(&pieces, &[], &owners),
        }
    }

    /// The identity with one extra dot on the sheet through boundary point `p`.
    pub fn dotted_identity(t: FlatTangle, p: usize) -> Self {
        assert_eq!(
            t.circles(),
            0,
            "dotted_identity expects a circle-free tangle"
        );
        let cyc = Cycles::of(&t, &t);
        Self::basis(t, t, 1u64 << cyc.at_point(p), HPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_same(&self, o: &Self) {
        assert!(
            self.source == o.source && self.target == o.target,
            "adding cobordisms with different boundaries"
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_same(o);
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            let e = terms.entry(*m).or_insert_with(HPoly::zero);
            *e = &*e + c;
        }
        terms.retain(|_, v| !v.is_zero());
        CobLinComb {
            source: self.source,
            target: self.target,
            terms,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, s: &HPoly<R>) -> Self {
        let mut c = self.map_coeffs(|c| c * s);
        c.terms.retain(|_, v| !v.is_zero());
        c
    }

    pub fn scale_int(&self, s: i64) -> Self {
        self.scale(&HPoly::int(s))
    }

    fn map_coeffs(&self, f: impl Fn(&HPoly<R>) -> HPoly<R>) -> Self {
        CobLinComb {
            source: self.source,
            target: self.target,
            terms: self.terms.iter().map(|(m, c)| (*m, f(c))).collect(),
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Self) -> Result<Self, CobError> {
        if self.target != next.source {
            return Err(CobError::Mismatch(self.target, next.source));
        }
        let (s, t, u) = (self.source, self.target, next.target);
        let mut out = CobLinComb::zero(s, u);
        if self.is_zero() || next.is_zero() {
            return Ok(out);
        }
        let cf = Cycles::of(&s, &t);
        let cg = Cycles::of(&t, &u);
        let cr = Cycles::of(&s, &u);
        let nf = cf.len();
        let mut joins = Vec::new();
        for (p, q) in t.arcs() {
            debug_assert_eq!(cf.at_point(p), cf.at_point(q));
            joins.push((cf.at_point(p), nf + cg.at_point(p), -1));
        }
        for i in 0..t.circles() {
            joins.push((cf.target_circle(i), nf + cg.source_circle(i), 0));
        }
        let mut owners: Vec<usize> = cr
            .representatives()
            .iter()
            .map(|&p| cf.at_point(p))
            .collect();
        owners.extend((0..s.circles()).map(|i| cf.source_circle(i)));
        owners.extend((0..u.circles()).map(|i| nf + cg.target_circle(i)));
        let ng = cg.len();
        for (mf, pf) in &self.terms {
            for (mg, pg) in &next.terms {
                let pieces: Vec<Piece> = (0..nf)
                    .map(|c| Piece::disk(mf >> c & 1 == 1))
                    .chain((0..ng).map(|c| Piece::disk(mg >> c & 1 == 1)))
                    .collect();
                let coeff = pf * pg;
                out.accumulate(assemble(&pieces, &joins, &owners), &coeff);
            }
        }
        Ok(out)
    }

    fn accumulate(&mut self, terms: BTreeMap<u64, HPoly<R>>, coeff: &HPoly<R>) {
        for (m, c) in terms {
            let e = self.terms.entry(m).or_insert_with(HPoly::zero);
            *e = &*e + &(&c * coeff);
            if e.is_zero() {
                self.terms.remove(&m);
            }
        }
    }

    /// Horizontal gluing: `self` lives in `D^n_m` and sits below `upper` in `D^p_n`.
    pub fn glue(&self, upper: &Self) -> Result<Self, CobError> {
        let (s, info_s) = self.source.glue(&upper.source)?;
        let (t, info_t) = self.target.glue(&upper.target)?;
        let mut out = CobLinComb::zero(s, t);
        if self.is_zero() || upper.is_zero() {
            return Ok(out);
        }
        let m = self.source.bottom();
        let n = self.source.top();
        let cf = Cycles::of(&self.source, &self.target);
        let cg = Cycles::of(&upper.source, &upper.target);
        let cr = Cycles::of(&s, &t);
        let nf = cf.len();
        let ng = cg.len();
        let joins: Vec<(usize, usize, i32)> = (0..n)
            .map(|i| (cf.at_point(m + i), nf + cg.at_point(i), -1))
            .collect();
        let mut owners: Vec<usize> = cr
            .representatives()
            .iter()
            .map(|&p| {
                if p < m {
                    cf.at_point(p)
                } else {
                    nf + cg.at_point(n + p - m)
                }
            })
            .collect();
        owners.extend((0..self.source.circles()).map(|i| cf.source_circle(i)));
        owners.extend((0..upper.source.circles()).map(|i| nf + cg.source_circle(i)));
        owners.extend(
            info_s
                .new_loops
                .iter()
                .map(|&i| cf.at_point(m + i as usize)),
        );
        owners.extend((0..self.target.circles()).map(|i| cf.target_circle(i)));
        owners.extend((0..upper.target.circles()).map(|i| nf + cg.target_circle(i)));
        owners.extend(
            info_t
                .new_loops
                .iter()
                .map(|&i| cf.at_point(m + i as usize)),
        );
        for (mf, pf) in &self.terms {
            for (mg, pg) in &upper.terms {
                let pieces: Vec<Piece> = (0..nf)
                    .map(|c| Piece::disk(mf >> c & 1 == 1))
                    .chain((0..ng).map(|c| Piece::disk(mg >> c & 1 == 1)))
                    .collect();
                let coeff = pf * pg;
                out.accumulate(assemble(&pieces, &joins, &owners), &coeff);
            }
        }
        Ok(out)
    }

    /// Close bottom point `b` to top point `t` on both source and target; the
    /// cobordism gains a strip along the closing arc.
    pub fn close(&self, b: usize, t: usize) -> Self {
        let (s2, new_s) = self.source.close(b, t);
        let (t2, new_t) = self.target.close(b, t);
        let mut out = CobLinComb::zero(s2, t2);
        if self.is_zero() {
            return out;
        }
        let cf = Cycles::of(&self.source, &self.target);
        let cr = Cycles::of(&s2, &t2);
        let nf = cf.len();
        let strip = nf;
        let joins = [(cf.at_point(b), strip, -1), (cf.at_point(t), strip, -1)];
        let orig = |p: usize| -> usize {
            // inverse of the renumbering done by FlatTangle::close
            let mut q = p;
            if q >= b {
                q += 1;
            }
            if q >= t {
                q += 1;
            }
            q
        };
        let mut owners: Vec<usize> = cr
            .representatives()
            .iter()
            .map(|&p| cf.at_point(orig(p)))
            .collect();
        owners.extend((0..self.source.circles()).map(|i| cf.source_circle(i)));
        if new_s {
            owners.push(cf.at_point(b));
        }
        owners.extend((0..self.target.circles()).map(|i| cf.target_circle(i)));
        if new_t {
            owners.push(cf.at_point(b));
        }
        for (mf, pf) in &self.terms {
            let mut pieces: Vec<Piece> = (0..nf).map(|c| Piece::disk(mf >> c & 1 == 1)).collect();
            pieces.push(Piece::DISK);
            out.accumulate(assemble(&pieces, &joins, &owners), pf);
        }
        out
    }

    /// Degree of a single basis term with coefficient `c h^k`.
    pub fn term_degree(&self, mask: u64, hdeg: usize) -> i64 {
        let cyc = Cycles::of(&self.source, &self.target);
        cyc.len() as i64
            - (self.source.points() / 2) as i64
            - 2 * mask.count_ones() as i64
            - 2 * hdeg as i64
    }

    /// Common q-degree of all terms; `Ok(None)` for the zero map.
    pub fn q_degree(&self) -> Result<Option<i64>, CobError> {
        let mut deg = None;
        for (m, c) in &self.terms {
            for (k, a) in c.coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let d = self.term_degree(*m, k);
                match deg {
                    None => deg = Some(d),
                    Some(e) if e != d => return Err(CobError::Inhomogeneous(e, d)),
                    _ => {}
                }
            }
        }
        Ok(deg)
    }

    /// `±identity` between circle-free tangles: the only invertible entries.
    pub fn unit_sign(&self) -> Option<i64> {
        if self.source != self.target || self.source.circles() != 0 || self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        if *m != 0 || !c.is_constant() {
            return None;
        }
        let a = c.coeff(0);
        if a.is_one() {
            Some(1)
        } else if (-a).is_one() {
            Some(-1)
        } else {
            None
        }
    }

    /// Text description: `coeff·[dotted cycles]` summands.
    pub fn descriptor(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let dots: Vec<String> = (0..64)
                    .filter(|b| m >> b & 1 == 1)
                    .map(|b| b.to_string())
                    .collect();
                let body = if dots.is_empty() {
                    "disks".to_string()
                } else {
                    format!("dots{{{}}}", dots.join(","))
                };
                format!("({c})·{body}")
            })
            .collect();
        parts.join(" + ")
    }

    pub fn map_scalars<S: Coeff>(&self, f: impl Fn(&R) -> S + Copy) -> CobLinComb<S> {
        CobLinComb::from_terms(
            self.source,
            self.target,
            self.terms.iter().map(|(m, c)| (*m, c.map(f))).collect(),
        )
    }
}

impl<R: Coeff> fmt::Debug for CobLinComb<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {}: {}",
            self.source,
            self.target,
            self.descriptor()
        )
    }
}

/// `X_cap - X_cup` on a circle-free tangle with a cap at `cap` and a cup at `cup`.
pub fn dot_difference<R: Coeff>(t: FlatTangle, cap: usize, cup: usize) -> CobLinComb<R> {
    CobLinComb::dotted_identity(t, cap).sub(&CobLinComb::dotted_identity(t, cup))
}

/// `X_cap + X_cup - h` on a circle-free tangle.
pub fn dot_sum_minus_h<R: Coeff>(t: FlatTangle, cap: usize, cup: usize) -> CobLinComb<R> {
    CobLinComb::dotted_identity(t, cap)
        .add(&CobLinComb::dotted_identity(t, cup))
        .sub(&CobLinComb::identity(t).scale(&HPoly::h()))
}

#[cfg(test)]
mod tests {
    use super::super::tangle::*;
    use super::*;

    type C = CobLinComb<i64>;

    fn raw(s: FlatTangle, t: FlatTangle, pieces: Vec<(Vec<usize>, u32, u32)>) -> C {
        DottedCobordism {
            source: s,
            target: t,
            pieces: pieces
                .into_iter()
                .map(|(cycles, genus, dots)| RawPiece {
                    cycles,
                    genus,
                    dots,
                })
                .collect(),
        }
        .reduce_canonical()
    }

    #[test]
    fn closed_evaluations() {
        let e = FlatTangle::circles_only(0);
        assert!(raw(e, e, vec![(vec![], 0, 0)]).is_zero());
        assert_eq!(raw(e, e, vec![(vec![], 0, 1)]), C::identity(e));
        assert_eq!(raw(e, e, vec![(vec![], 1, 0)]), C::identity(e).scale_int(2));
        // two dots on a sphere: X^2 = hX gives h
        assert_eq!(
            raw(e, e, vec![(vec![], 0, 2)]),
            C::identity(e).scale(&HPoly::h())
        );
    }

    #[test]
    fn reduction_is_idempotent_on_disks() {
        let c = raw(omega(), alpha(), vec![(vec![0], 0, 1), (vec![1], 0, 0)]);
        assert_eq!(c.terms().len(), 1);
        assert_eq!(c.terms().get(&1), Some(&HPoly::one()));
        // three dots on one disk reduce to h^2 X
        let c = raw(omega(), alpha(), vec![(vec![0], 0, 3), (vec![1], 0, 0)]);
        assert_eq!(c.terms().get(&1), Some(&HPoly::monomial(1, 2)));
    }

    #[test]
    fn identity_composition() {
        for t in [
            omega(),
            alpha(),
            gamma(),
            alpha().with_circles(1),
            alpha_tilde().with_circles(2),
        ] {
            let id = C::identity(t);
            assert_eq!(id.then(&id).unwrap(), id);
        }
        let s = C::disks(omega(), alpha());
        assert_eq!(C::identity(omega()).then(&s).unwrap(), s);
        assert_eq!(s.then(&C::identity(alpha())).unwrap(), s);
    }

    #[test]
    fn split_then_death_is_identity() {
        let a = arc();
        let ao = arc().with_circles(1);
        let split = raw(a, ao, vec![(vec![0, 1], 0, 0)]);
        assert_eq!(split.q_degree().unwrap(), Some(-1));
        let death = raw(ao, a, vec![(vec![0], 0, 0), (vec![1], 0, 0)]);
        assert_eq!(split.then(&death).unwrap(), C::identity(a));
        // birth, dot, death leaves the identity on the rest
        let birth = raw(a, ao, vec![(vec![0], 0, 0), (vec![1], 0, 0)]);
        let dot = C::identity(ao)
            .then(&raw(ao, ao, vec![(vec![0], 0, 0), (vec![1, 2], 0, 1)]))
            .unwrap();
        assert_eq!(
            birth.then(&dot).unwrap().then(&death).unwrap(),
            C::identity(a)
        );
        assert!(birth.then(&death).unwrap().is_zero());
    }

    #[test]
    fn degrees() {
        assert_eq!(C::identity(omega()).q_degree().unwrap(), Some(0));
        assert_eq!(C::disks(omega(), alpha()).q_degree().unwrap(), Some(-1));
        assert_eq!(C::disks(alpha(), beta()).q_degree().unwrap(), Some(-2));
        assert_eq!(C::dotted_identity(alpha(), 0).q_degree().unwrap(), Some(-2));
        let bad = C::identity(alpha()).add(&C::dotted_identity(alpha(), 0));
        assert!(bad.q_degree().is_err());
    }

    #[test]
    fn horizontal_gluing_of_identities() {
        let g = C::identity(epsilon())
            .glue(&C::identity(epsilon_star()))
            .unwrap();
        assert_eq!(g, C::identity(alpha()));
        let g = C::identity(alpha()).glue(&C::identity(epsilon())).unwrap();
        assert_eq!(g, C::identity(epsilon().with_circles(1)));
    }

    #[test]
    fn closing_identity() {
        assert_eq!(C::identity(alpha()).close(0, 3), C::identity(omega_tilde()));
        assert_eq!(
            C::identity(omega()).close(0, 3),
            C::identity(omega_tilde().with_circles(1))
        );
    }

    #[test]
    fn unit_detection() {
        assert_eq!(C::identity(alpha()).unit_sign(), Some(1));
        assert_eq!(C::identity(alpha()).neg().unit_sign(), Some(-1));
        assert_eq!(C::identity(alpha()).scale_int(2).unit_sign(), None);
        assert_eq!(C::disks(omega(), alpha()).unit_sign(), None);
    }
}
