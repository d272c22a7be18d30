//! The filtered BLT complex and the pages of its spectral sequence.
//!
//! The filtration is by quantum degree: `F^s` is spanned by generators with
//! `q >= q_min + 2s`, and `d` never lowers `q`. Pages use the subquotient
//! formula `E_r^s = Z_r^s / (Z_{r-1}^{s+1} + d Z_{r-1}^{s-r+1})` with
//! `Z_r^s = {x ∈ F^s : dx ∈ F^{s+r}}`, so `E_1` is the homology of the
//! associated graded complex and `d_r` raises `q` by `2r`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::groups::{BigradedGroups, Group};
use super::homology::{homology, IntComplex};
use super::matrix::Matrix;
use super::smith::{invariant_factors, smith_normal_form};
use crate::closure::AComplex;
use crate::scalar::Coeff;

/// An integer complex whose generators carry a homological degree and a
/// filtration degree `q`; entries go from degree `i` to `i + 1` and never
/// lower `q`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FilteredComplex {
    gens: Vec<(i64, i64)>,
    d: BTreeMap<(usize, usize), BigInt>,
}

/// One page `E_k` of the spectral sequence, placed at `(i, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPage {
    pub k: usize,
    pub groups: BigradedGroups,
}

impl FilteredComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_gen(&mut self, i: i64, q: i64) -> usize {
        self.gens.push((i, q));
        self.gens.len() - 1
    }

    pub fn add_entry(&mut self, from: usize, to: usize, v: BigInt) {
        let (a, b) = (self.gens[from], self.gens[to]);
        assert!(
            b.0 == a.0 + 1,
            "entry must raise the homological degree by one"
        );
        assert!(b.1 >= a.1, "entry lowers the filtration");
        let e = self.d.entry((from, to)).or_insert_with(BigInt::zero);
        *e += v;
        if e.is_zero() {
            self.d.remove(&(from, to));
        }
    }

    pub fn gens(&self) -> &[(i64, i64)] {
        &self.gens
    }

    /// The associated graded complex, bigraded by `(i, q)`.
    pub fn associated_graded(&self) -> IntComplex<BigInt> {
        let mut c = IntComplex::new();
        for &(i, q) in &self.gens {
            c.add_gen(i, q);
        }
        for (&(f, t), v) in &self.d {
            if self.gens[f].1 == self.gens[t].1 {
                c.add_entry(f, t, v.clone());
            }
        }
        c
    }

    /// Homology of the complex with the filtration forgotten, indexed by `i`.
    pub fn total_homology(&self) -> BTreeMap<i64, Group> {
        let mut c = IntComplex::new();
        for &(i, _) in &self.gens {
            c.add_gen(i, 0);
        }
        for (&(f, t), v) in &self.d {
            c.add_entry(f, t, v.clone());
        }
        homology(&c)
            .iter()
            .map(|(&(i, _), g)| (i, g.clone()))
            .collect()
    }

    /// Filtration length: pages from `E_{span+1}` on are `E_∞`.
    pub fn span(&self) -> usize {
        let lo = self.gens.iter().map(|g| g.1).min().unwrap_or(0);
        let hi = self.gens.iter().map(|g| g.1).max().unwrap_or(0);
        ((hi - lo) / 2) as usize
    }

    /// `E_r` for `r = 1..=upto`.
    pub fn pages(&self, upto: usize) -> Vec<SpectralPage> {
        (1..=upto)
            .map(|r| SpectralPage {
                k: r,
                groups: self.page(r),
            })
            .collect()
    }

    pub fn e_infinity(&self) -> BigradedGroups {
        self.page(self.span() + 1)
    }

    /// The page `E_r`, `r >= 1`.
    pub fn page(&self, r: usize) -> BigradedGroups {
        assert!(r >= 1, "pages start at E_1");
        let mut out = BigradedGroups::new();
        // the differential preserves q mod 2, so each parity is its own complex
        for parity in [0, 1] {
            let sub = Parity::new(self, parity);
            if sub.idx.is_empty() {
                continue;
            }
            let smax = sub.s.iter().copied().max().unwrap();
            let degs: std::collections::BTreeSet<i64> = sub.deg.iter().copied().collect();
            for &i in &degs {
                for s in 0..=smax {
                    let g = sub.term(i, s, r as i64);
                    out.insert(i, sub.qmin + 2 * s, g);
                }
            }
        }
        out
    }
}

/// One parity class of generators, with local filtration index `s`.
struct Parity {
    idx: Vec<usize>,
    deg: Vec<i64>,
    s: Vec<i64>,
    qmin: i64,
    by_deg: BTreeMap<i64, Vec<usize>>,
    d: BTreeMap<(usize, usize), BigInt>,
}

impl Parity {
    fn new(f: &FilteredComplex, parity: i64) -> Self {
        let idx: Vec<usize> = (0..f.gens.len())
            .filter(|&k| f.gens[k].1.rem_euclid(2) == parity)
            .collect();
        let qmin = idx.iter().map(|&k| f.gens[k].1).min().unwrap_or(0);
        let local: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(n, &k)| (k, n)).collect();
        let deg: Vec<i64> = idx.iter().map(|&k| f.gens[k].0).collect();
        let s: Vec<i64> = idx.iter().map(|&k| (f.gens[k].1 - qmin) / 2).collect();
        let mut by_deg: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (n, &dg) in deg.iter().enumerate() {
            by_deg.entry(dg).or_default().push(n);
        }
        let d =
            f.d.iter()
                .filter_map(|(&(a, b), v)| Some(((*local.get(&a)?, *local.get(&b)?), v.clone())))
                .collect();
        Parity {
            idx,
            deg,
            s,
            qmin,
            by_deg,
            d,
        }
    }

    fn level(&self, i: i64) -> &[usize] {
        self.by_deg.get(&i).map_or(&[], |v| v.as_slice())
    }

    /// `d^i` as a matrix (rows: degree `i+1`, columns: degree `i`).
    fn dmat(&self, i: i64) -> Matrix<BigInt> {
        let (src, dst) = (self.level(i), self.level(i + 1));
        let mut m = Matrix::zeros(dst.len(), src.len());
        for (c, &a) in src.iter().enumerate() {
            for (r, &b) in dst.iter().enumerate() {
                if let Some(v) = self.d.get(&(a, b)) {
                    m.set(r, c, v.clone());
                }
            }
        }
        m
    }

    /// Basis of `Z_r^s` in degree `i`, as columns in the coordinates of `C^i`.
    fn z(&self, i: i64, s: i64, r: i64) -> Vec<Vec<BigInt>> {
        let src = self.level(i);
        let dst = self.level(i + 1);
        let cols: Vec<usize> = (0..src.len()).filter(|&c| self.s[src[c]] >= s).collect();
        let rows: Vec<usize> = (0..dst.len()).filter(|&q| self.s[dst[q]] < s + r).collect();
        let d = self.dmat(i);
        let embed = |v: &[BigInt]| {
            let mut full = vec![BigInt::zero(); src.len()];
            for (k, &c) in cols.iter().enumerate() {
                full[c] = v[k].clone();
            }
            full
        };
        if cols.is_empty() {
            return Vec::new();
        }
        let mut m = Matrix::<BigInt>::zeros(rows.len(), cols.len());
        for (a, &q) in rows.iter().enumerate() {
            for (b, &c) in cols.iter().enumerate() {
                m.set(a, b, d.get(q, c).clone());
            }
        }
        let snf = smith_normal_form(&m);
        let rank = snf.rank();
        (rank..cols.len())
            .map(|k| embed(&snf.t.column(k)))
            .collect()
    }

    /// `E_r^s` in homological degree `i`.
    fn term(&self, i: i64, s: i64, r: i64) -> Group {
        let n = self.level(i).len();
        let num = self.z(i, s, r);
        if num.is_empty() {
            return Group::default();
        }
        let mut den = self.z(i, s + 1, r - 1);
        let below = self.z(i - 1, s - r + 1, r - 1);
        if !below.is_empty() {
            let d = self.dmat(i - 1);
            let bm = Matrix::from_columns(self.level(i - 1).len(), &below);
            let img = d.mul(&bm);
            den.extend((0..img.cols()).map(|c| img.column(c)));
        }
        let nm = Matrix::from_columns(n, &num);
        let snf = smith_normal_form(&nm);
        let k = num.len();
        debug_assert!(
            snf.diagonal().iter().all(|x| x.is_one()),
            "cycle lattice is saturated"
        );
        let mut coords = Vec::with_capacity(den.len());
        for v in &den {
            let u = snf.s.mul(&Matrix::from_columns(n, std::slice::from_ref(v)));
            assert!(
                (k..n).all(|r| u.get(r, 0).is_zero()),
                "boundary outside cycle lattice"
            );
            let head = Matrix::from_columns(k, &[(0..k).map(|r| u.get(r, 0).clone()).collect()]);
            coords.push(snf.t.mul(&head).column(0));
        }
        if coords.is_empty() {
            return Group::free(k);
        }
        let f = invariant_factors(&Matrix::from_columns(k, &coords));
        let tors: Vec<u64> = f
            .iter()
            .filter(|x| !x.is_one())
            .map(|x| x.to_u64().expect("torsion order beyond u64"))
            .collect();
        Group::from_cyclic(k - f.len(), &tors)
    }
}

/// `A ⊗ Z` with `h ↦ 1`, `X ↦ 0`, filtered by quantum degree.
pub fn specialize_blt<R: Coeff>(c: &AComplex<R>) -> FilteredComplex {
    let mut out = FilteredComplex::new();
    let mut g = BTreeMap::new();
    for id in c.ids() {
        g.insert(id, out.add_gen(c.homdeg(id), c.object(id).q));
    }
    for (f, t, e) in c.entries() {
        out.add_entry(g[&f], g[&t], e.p.eval(&R::one()).to_bigint());
    }
    out
}

/// Pages `E_1..=E_upto` of the BLT spectral sequence.
pub fn spectral_pages(f: &FilteredComplex, upto: usize) -> Vec<SpectralPage> {
    f.pages(upto)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::homology::specialize_reduced;
    use crate::braid::parse_word;
    use crate::closure::full_pipeline;

    #[test]
    fn trefoil_pages() {
        let a = full_pipeline::<i64>(&parse_word("abab").unwrap());
        let f = specialize_blt(&a);
        let e1 = f.page(1);
        assert_eq!(e1, homology(&specialize_reduced(&a)).shifted(0, 0));
        let einf = f.e_infinity();
        assert_eq!(einf.total_rank(), 1);
        assert!(einf.is_free());
        let tot: usize = f.total_homology().values().map(|g| g.free).sum();
        assert_eq!(tot, 1);
    }

    #[test]
    fn zero_differential_pages_agree() {
        let mut f = FilteredComplex::new();
        f.add_gen(0, 0);
        f.add_gen(1, 4);
        f.add_gen(1, 2);
        let pages = spectral_pages(&f, 4);
        assert!(pages.iter().all(|p| p.groups == pages[0].groups));
        assert_eq!(pages[0].groups.total_rank(), 3);
    }

    #[test]
    fn multiplication_by_two_survives_to_torsion() {
        // x (q=0) -> y (q=4) by 2: E_1 = E_2 = Z ⊕ Z, E_3 = Z/2 at y
        let mut f = FilteredComplex::new();
        let x = f.add_gen(0, 0);
        let y = f.add_gen(1, 4);
        f.add_entry(x, y, BigInt::from(2));
        assert_eq!(f.page(1).total_rank(), 2);
        assert_eq!(f.page(2).total_rank(), 2);
        let e3 = f.page(3);
        assert_eq!(e3.total_rank(), 0);
        assert_eq!(e3.get(1, 4), Group::from_cyclic(0, &[2]));
        assert_eq!(f.e_infinity(), e3);
    }
}
