//! Integer complexes with a `(i, j)` bigrading and their homology.
//!
//! Each quantum degree is handled separately. Invertible entries are first
//! cancelled sparsely in `i64` with checked arithmetic (falling back to
//! `BigInt` on overflow); the residual differentials are dense and small and
//! go through the Smith normal form over `BigInt`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use super::groups::{BigradedGroups, Group};
use super::matrix::Matrix;
use super::smith::invariant_factors;
use crate::closure::AComplex;
use crate::scalar::{c_mul, c_sub, Coeff, Field, Fp, Overflow};

/// Free abelian groups on bigraded generators with a differential of
/// bidegree `(1, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntComplex<R> {
    gens: Vec<(i64, i64)>,
    d: BTreeMap<usize, BTreeMap<usize, R>>,
}

impl<R> Default for IntComplex<R> {
    fn default() -> Self {
        IntComplex {
            gens: Vec::new(),
            d: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error("d∘d ≠ 0 from generator {0} to generator {1}")]
    NotAComplex(usize, usize),
    #[error("unsupported field characteristic {0}")]
    Characteristic(u32),
}

impl<R: Coeff> IntComplex<R> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_gen(&mut self, i: i64, j: i64) -> usize {
        self.gens.push((i, j));
        self.gens.len() - 1
    }

    /// Add `v` to the coefficient of `to` in `d(from)`.
    pub fn add_entry(&mut self, from: usize, to: usize, v: R) {
        if v.is_zero() {
            return;
        }
        let (a, b) = (self.gens[from], self.gens[to]);
        assert!(
            b.0 == a.0 + 1 && b.1 == a.1,
            "entry {a:?} -> {b:?} is not of bidegree (1,0)"
        );
        let row = self.d.entry(from).or_default();
        let nv = row.get(&to).cloned().unwrap_or_else(R::zero) + v;
        if nv.is_zero() {
            row.remove(&to);
        } else {
            row.insert(to, nv);
        }
    }

    pub fn gens(&self) -> &[(i64, i64)] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &R)> {
        self.d
            .iter()
            .flat_map(|(f, m)| m.iter().map(move |(t, v)| (*f, *t, v)))
    }

    /// Generator counts per bidegree.
    pub fn generator_counts(&self) -> BTreeMap<(i64, i64), usize> {
        let mut m = BTreeMap::new();
        for g in &self.gens {
            *m.entry(*g).or_default() += 1;
        }
        m
    }

    pub fn check_d2(&self) -> Result<(), HomologyError> {
        for (&x, row) in &self.d {
            let mut acc: BTreeMap<usize, R> = BTreeMap::new();
            for (y, a) in row {
                if let Some(r2) = self.d.get(y) {
                    for (z, b) in r2 {
                        let e = acc.entry(*z).or_insert_with(R::zero);
                        *e = e.clone() + a.clone() * b.clone();
                    }
                }
            }
            if let Some((z, _)) = acc.iter().find(|(_, v)| !v.is_zero()) {
                return Err(HomologyError::NotAComplex(x, *z));
            }
        }
        Ok(())
    }

    pub fn shifted(&self, di: i64, dj: i64) -> Self {
        IntComplex {
            gens: self.gens.iter().map(|&(i, j)| (i + di, j + dj)).collect(),
            d: self.d.clone(),
        }
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        let mut c = self.clone();
        let off = c.gens.len();
        c.gens.extend_from_slice(&o.gens);
        for (f, t, v) in o.entries() {
            c.add_entry(f + off, t + off, v.clone());
        }
        c
    }

    /// Split by quantum degree into (generator bidegrees, local entries).
    fn blocks(&self) -> Vec<Block<R>> {
        let mut by_j: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (k, g) in self.gens.iter().enumerate() {
            by_j.entry(g.1).or_default().push(k);
        }
        let mut local = vec![0usize; self.gens.len()];
        for ids in by_j.values() {
            for (n, &k) in ids.iter().enumerate() {
                local[k] = n;
            }
        }
        by_j.into_iter()
            .map(|(j, ids)| {
                let entries = ids
                    .iter()
                    .flat_map(|&f| {
                        self.d
                            .get(&f)
                            .into_iter()
                            .flat_map(move |row| row.iter().map(move |(t, v)| (f, *t, v)))
                    })
                    .map(|(f, t, v)| (local[f], local[t], v.clone()))
                    .collect();
                Block {
                    j,
                    degs: ids.iter().map(|&k| self.gens[k].0).collect(),
                    entries,
                }
            })
            .collect()
    }
}

struct Block<R> {
    j: i64,
    degs: Vec<i64>,
    entries: Vec<(usize, usize, R)>,
}

/// Coefficients admitted by sparse elimination.
trait Pivot: Clone + Send + Sync {
    fn is_zero(&self) -> bool;
    fn inverse(&self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Result<Self, Overflow>;
    fn sub(&self, o: &Self) -> Result<Self, Overflow>;
    fn neg(&self) -> Result<Self, Overflow>;
}

#[derive(Clone)]
struct Ring<R>(R);

impl<R: Coeff> Pivot for Ring<R> {
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn inverse(&self) -> Option<Self> {
        self.0.is_unit().then(|| self.clone())
    }
    fn mul(&self, o: &Self) -> Result<Self, Overflow> {
        c_mul(&self.0, &o.0).map(Ring)
    }
    fn sub(&self, o: &Self) -> Result<Self, Overflow> {
        c_sub(&self.0, &o.0).map(Ring)
    }
    fn neg(&self) -> Result<Self, Overflow> {
        c_sub(&R::zero(), &self.0).map(Ring)
    }
}

#[derive(Clone)]
struct Fld<F>(F);

impl<F: Field + Send + Sync> Pivot for Fld<F> {
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn inverse(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| Fld(F::one() / self.0.clone()))
    }
    fn mul(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(Fld(self.0.clone() * o.0.clone()))
    }
    fn sub(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(Fld(self.0.clone() - o.0.clone()))
    }
    fn neg(&self) -> Result<Self, Overflow> {
        Ok(Fld(-self.0.clone()))
    }
}

/// What survives sparse elimination: alive generators and the entries among them.
struct Residual<P> {
    alive: Vec<bool>,
    out: Vec<BTreeMap<usize, P>>,
}

fn eliminate<P: Pivot>(
    n: usize,
    entries: impl Iterator<Item = (usize, usize, P)>,
) -> Result<Residual<P>, Overflow> {
    let mut out: Vec<BTreeMap<usize, P>> = vec![BTreeMap::new(); n];
    let mut inc: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (f, t, v) in entries {
        if !v.is_zero() {
            out[f].insert(t, v);
            inc[t].insert(f);
        }
    }
    let mut alive = vec![true; n];
    loop {
        let mut changed = false;
        for x in 0..n {
            if !alive[x] {
                continue;
            }
            // invertible entry with the least fill-in
            let best = out[x]
                .iter()
                .filter_map(|(&y, v)| v.inverse().map(|inv| (inc[y].len(), y, inv)))
                .min_by_key(|c| (c.0, c.1));
            let Some((_, y, inv)) = best else { continue };
            let gammas: Vec<(usize, P)> = out[x]
                .iter()
                .filter(|(w, _)| **w != y)
                .map(|(w, v)| (*w, v.clone()))
                .collect();
            let zs: Vec<usize> = inc[y].iter().copied().filter(|&z| z != x).collect();
            for z in zs {
                let f = out[z][&y].mul(&inv)?;
                for (w, g) in &gammas {
                    let prod = f.mul(g)?;
                    let cur = out[z].get(w).cloned();
                    let nv = match cur {
                        Some(c) => c.sub(&prod)?,
                        None => prod.neg()?,
                    };
                    if nv.is_zero() {
                        out[z].remove(w);
                        inc[*w].remove(&z);
                    } else {
                        out[z].insert(*w, nv);
                        inc[*w].insert(z);
                    }
                }
            }
            for v in [x, y] {
                for t in std::mem::take(&mut out[v]).into_keys() {
                    inc[t].remove(&v);
                }
                for f in std::mem::take(&mut inc[v]) {
                    out[f].remove(&v);
                }
                alive[v] = false;
            }
            changed = true;
        }
        if !changed {
            return Ok(Residual { alive, out });
        }
    }
}

fn block_homology_with<R: Coeff>(
    b: &Block<R>,
    ring_entries: Vec<(usize, usize, R)>,
) -> Result<Vec<(i64, Group)>, Overflow> {
    let res = eliminate(
        b.degs.len(),
        ring_entries.into_iter().map(|(f, t, v)| (f, t, Ring(v))),
    )?;
    let mut by_deg: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (k, &a) in res.alive.iter().enumerate() {
        if a {
            by_deg.entry(b.degs[k]).or_default().push(k);
        }
    }
    // invariant factors of d^i : C^i -> C^{i+1}
    let mut factors: BTreeMap<i64, Vec<BigInt>> = BTreeMap::new();
    for (&i, src) in &by_deg {
        let Some(dst) = by_deg.get(&(i + 1)) else {
            continue;
        };
        let pos: BTreeMap<usize, usize> = dst.iter().enumerate().map(|(n, &k)| (k, n)).collect();
        let mut m = Matrix::<BigInt>::zeros(dst.len(), src.len());
        let mut any = false;
        for (c, &k) in src.iter().enumerate() {
            for (t, v) in &res.out[k] {
                m.set(pos[t], c, v.0.to_bigint());
                any = true;
            }
        }
        if any {
            factors.insert(i, invariant_factors(&m));
        }
    }
    let empty = Vec::new();
    Ok(by_deg
        .iter()
        .map(|(&i, src)| {
            let out_rank = factors.get(&i).unwrap_or(&empty).len();
            let inc = factors.get(&(i - 1)).unwrap_or(&empty);
            let tors: Vec<u64> = inc
                .iter()
                .filter(|d| !d.is_one())
                .map(|d| d.to_u64().expect("torsion order beyond u64"))
                .collect();
            (
                i,
                Group::from_cyclic(src.len() - out_rank - inc.len(), &tors),
            )
        })
        .collect())
}

fn block_homology<R: Coeff>(b: &Block<R>) -> Vec<(i64, Group)> {
    let small: Option<Vec<(usize, usize, i64)>> = b
        .entries
        .iter()
        .map(|(f, t, v)| v.to_i64().map(|x| (*f, *t, x)))
        .collect();
    if let Some(small) = small {
        let bb = Block {
            j: b.j,
            degs: b.degs.clone(),
            entries: Vec::new(),
        };
        if let Ok(g) = block_homology_with::<i64>(&bb, small) {
            return g;
        }
    }
    let big = b
        .entries
        .iter()
        .map(|(f, t, v)| (*f, *t, v.to_bigint()))
        .collect();
    let bb = Block {
        j: b.j,
        degs: b.degs.clone(),
        entries: Vec::new(),
    };
    block_homology_with::<BigInt>(&bb, big).expect("BigInt arithmetic cannot overflow")
}

/// Integral homology.
pub fn homology<R: Coeff>(c: &IntComplex<R>) -> BigradedGroups {
    let blocks = c.blocks();
    let parts: Vec<(i64, Vec<(i64, Group)>)> = blocks
        .par_iter()
        .map(|b| (b.j, block_homology(b)))
        .collect();
    let mut out = BigradedGroups::new();
    for (j, gs) in parts {
        for (i, g) in gs {
            out.insert(i, j, g);
        }
    }
    out
}

/// Homology dimensions over the field `F`.
pub fn field_dims<F: Field + Send + Sync, R: Coeff>(
    c: &IntComplex<R>,
) -> BTreeMap<(i64, i64), usize> {
    let blocks = c.blocks();
    let parts: Vec<Vec<((i64, i64), usize)>> = blocks
        .par_iter()
        .map(|b| {
            let res = eliminate(
                b.degs.len(),
                b.entries
                    .iter()
                    .map(|(f, t, v)| (*f, *t, Fld(F::from_int(&v.to_bigint())))),
            )
            .expect("field arithmetic cannot overflow");
            let mut m: BTreeMap<(i64, i64), usize> = BTreeMap::new();
            for (k, &a) in res.alive.iter().enumerate() {
                if a {
                    debug_assert!(res.out[k].is_empty());
                    *m.entry((b.degs[k], b.j)).or_default() += 1;
                }
            }
            m.into_iter().collect()
        })
        .collect();
    parts.into_iter().flatten().collect()
}

/// Field dimensions by characteristic: 0 for `Q`, or one of the primes 2, 3, 5, 7.
pub fn field_dims_char<R: Coeff>(
    c: &IntComplex<R>,
    p: u32,
) -> Result<BTreeMap<(i64, i64), usize>, HomologyError> {
    match p {
        0 => Ok(field_dims::<BigRational, R>(c)),
        2 => Ok(field_dims::<Fp<2>, R>(c)),
        3 => Ok(field_dims::<Fp<3>, R>(c)),
        5 => Ok(field_dims::<Fp<5>, R>(c)),
        7 => Ok(field_dims::<Fp<7>, R>(c)),
        _ => Err(HomologyError::Characteristic(p)),
    }
}

/// `A ⊗ Z` with `h ↦ 0`: each `A` becomes `Z{1, X}` with `1` in q-degree
/// `q + 1` and `X` in `q - 1`.
pub fn specialize_unreduced<R: Coeff>(c: &AComplex<R>) -> IntComplex<R> {
    let mut out = IntComplex::new();
    let mut one = BTreeMap::new();
    let mut x = BTreeMap::new();
    for id in c.ids() {
        let (i, q) = (c.homdeg(id), c.object(id).q);
        one.insert(id, out.add_gen(i, q + 1));
        x.insert(id, out.add_gen(i, q - 1));
    }
    for (f, t, e) in c.entries() {
        let (p0, q0) = (e.p.coeff(0), e.q.coeff(0));
        // 1 ↦ p0 + q0 X, X ↦ p0 X
        out.add_entry(one[&f], one[&t], p0.clone());
        out.add_entry(one[&f], x[&t], q0);
        out.add_entry(x[&f], x[&t], p0);
    }
    out
}

/// `q^{-1} A ⊗ Z` with `X, h ↦ 0`: one generator per `A`, in q-degree `q`.
pub fn specialize_reduced<R: Coeff>(c: &AComplex<R>) -> IntComplex<R> {
    let mut out = IntComplex::new();
    let mut g = BTreeMap::new();
    for id in c.ids() {
        g.insert(id, out.add_gen(c.homdeg(id), c.object(id).q));
    }
    for (f, t, e) in c.entries() {
        out.add_entry(g[&f], g[&t], e.p.coeff(0));
    }
    out
}

/// Euler characteristic `Σ (-1)^i q^j` over generators.
pub fn euler_characteristic<R: Coeff>(c: &IntComplex<R>) -> super::Laurent {
    let mut l = super::Laurent::zero();
    for &(i, j) in &c.gens {
        l.add_term(j, if i.rem_euclid(2) == 0 { 1 } else { -1 });
    }
    l
}

/// Euler characteristic computed from homology ranks.
pub fn euler_of_groups(g: &BigradedGroups) -> super::Laurent {
    let mut l = super::Laurent::zero();
    for (&(i, j), grp) in g.iter() {
        let r = grp.free as i64;
        l.add_term(j, if i.rem_euclid(2) == 0 { r } else { -r });
    }
    l
}

/// `true` if some nonzero integer matrix entry is not `±1`; used in tests.
#[doc(hidden)]
pub fn has_non_unit_entry<R: Coeff>(c: &IntComplex<R>) -> bool {
    c.entries().any(|(_, _, v)| v.abs() > R::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_word;
    use crate::closure::{build_a, build_aj, full_pipeline};

    fn g(free: usize, tors: &[u64]) -> Group {
        Group::from_cyclic(free, tors)
    }

    #[test]
    fn a1_and_a2_unreduced() {
        let h = homology(&specialize_unreduced(&build_aj::<i64>(1, 0, 0)));
        let want: BigradedGroups = [
            ((0, -1), g(1, &[])),
            ((1, 3), g(1, &[])),
            ((1, 1), g(0, &[2])),
        ]
        .into_iter()
        .collect();
        assert_eq!(h, want);
        let h = homology(&specialize_unreduced(&build_aj::<i64>(2, 0, 0)));
        let want: BigradedGroups = [
            ((0, -1), g(1, &[])),
            ((0, 1), g(1, &[])),
            ((1, 3), g(1, &[])),
            ((1, 5), g(1, &[])),
        ]
        .into_iter()
        .collect();
        assert_eq!(h, want);
    }

    #[test]
    fn aj_reduced_has_zero_differential() {
        for k in 1..4 {
            let c = specialize_reduced(&build_aj::<i64>(k, 0, 0));
            assert_eq!(c.entries().count(), 0);
            assert_eq!(homology(&c).total_rank(), 2);
        }
    }

    #[test]
    fn trefoil() {
        let a = full_pipeline::<i64>(&parse_word("abab").unwrap());
        let kh = homology(&specialize_unreduced(&a));
        let want: BigradedGroups = [
            ((0, 1), g(1, &[])),
            ((0, 3), g(1, &[])),
            ((2, 5), g(1, &[])),
            ((3, 9), g(1, &[])),
            ((3, 7), g(0, &[2])),
        ]
        .into_iter()
        .collect();
        assert_eq!(kh, want);
        let rkh = homology(&specialize_reduced(&a));
        let want: BigradedGroups = [
            ((0, 2), g(1, &[])),
            ((2, 6), g(1, &[])),
            ((3, 8), g(1, &[])),
        ]
        .into_iter()
        .collect();
        assert_eq!(rkh, want);
        assert_eq!(
            euler_characteristic(&specialize_unreduced(&a)).to_string(),
            "q + q^3 + q^5 - q^9"
        );
        let f2 = field_dims_char(&specialize_unreduced(&a), 2).unwrap();
        assert_eq!(f2, kh.mod_p_dims(2));
        let q = field_dims_char(&specialize_unreduced(&a), 0).unwrap();
        assert_eq!(q, kh.ranks());
    }

    #[test]
    fn zero_differential() {
        let c = build_a::<i64>(0, 0).direct_sum(&build_a(1, 4));
        let kh = homology(&specialize_unreduced(&c));
        assert_eq!(kh.total_rank(), 4);
        assert!(kh.is_free());
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        // cancelling x -> y leaves z -> w with 2^62 + 1 - 2 * 2^62, which
        // overflows i64 in the intermediate product
        let mut c = IntComplex::<i64>::new();
        let x = c.add_gen(0, 0);
        let z = c.add_gen(0, 0);
        let y = c.add_gen(1, 0);
        let w = c.add_gen(1, 0);
        c.add_entry(x, y, 1);
        c.add_entry(x, w, 1 << 62);
        c.add_entry(z, y, 2);
        c.add_entry(z, w, (1 << 62) + 1);
        let h = homology(&c);
        assert_eq!(h.get(1, 0), g(0, &[(1 << 62) - 1]));
        assert!(h.get(0, 0).is_zero());
        assert!(has_non_unit_entry(&c));
    }

    #[test]
    fn d2_check() {
        let mut c = IntComplex::<i64>::new();
        let a = c.add_gen(0, 0);
        let b = c.add_gen(1, 0);
        let d = c.add_gen(2, 0);
        c.add_entry(a, b, 1);
        c.add_entry(b, d, 1);
        assert!(c.check_d2().is_err());
    }
}
