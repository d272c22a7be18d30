//! Evaluation of glued surfaces in the neck-cut basis.
//!
//! A cobordism between circle-carrying tangles is stored as a combination of
//! products of disks, one disk per boundary cycle, each disk carrying at most
//! one dot. A connected surface with `r` boundary cycles, genus `g` and `d`
//! dots equals `Δ^{r-1}(X^d θ^g)` with `θ = 2X - h`, where the tensor factors
//! `1`, `X` stand for an undotted and a dotted disk. A closed surface evaluates
//! to the coefficient of `X` in `X^d θ^g`.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;

use crate::poly::HPoly;
use crate::scalar::Coeff;

/// An element `p + qX` of `A = Z[h][X]/(X^2 - hX)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AElem<R> {
    pub p: HPoly<R>,
    pub q: HPoly<R>,
}

impl<R: Coeff> AElem<R> {
    pub fn new(p: HPoly<R>, q: HPoly<R>) -> Self {
        AElem { p, q }
    }

    pub fn zero() -> Self {
        AElem {
            p: HPoly::zero(),
            q: HPoly::zero(),
        }
    }

    pub fn one() -> Self {
        AElem {
            p: HPoly::one(),
            q: HPoly::zero(),
        }
    }

    pub fn int(c: i64) -> Self {
        AElem {
            p: HPoly::int(c),
            q: HPoly::zero(),
        }
    }

    pub fn x() -> Self {
        AElem {
            p: HPoly::zero(),
            q: HPoly::one(),
        }
    }

    pub fn h() -> Self {
        AElem {
            p: HPoly::h(),
            q: HPoly::zero(),
        }
    }

    /// `θ = 2X - h`, the value of a handle.
    pub fn theta() -> Self {
        AElem {
            p: -&HPoly::h(),
            q: HPoly::int(2),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        AElem {
            p: &self.p + &o.p,
            q: &self.q + &o.q,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        AElem {
            p: &self.p - &o.p,
            q: &self.q - &o.q,
        }
    }

    pub fn neg(&self) -> Self {
        AElem {
            p: -&self.p,
            q: -&self.q,
        }
    }

    /// `(p1 + q1 X)(p2 + q2 X) = p1 p2 + (p1 q2 + q1 p2 + h q1 q2) X`.
    pub fn mul(&self, o: &Self) -> Self {
        let p = &self.p * &o.p;
        let cross = &(&self.p * &o.q) + &(&self.q * &o.p);
        let sq = (&self.q * &o.q).shift(1);
        AElem { p, q: &cross + &sq }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: &HPoly<R>) -> Self {
        AElem {
            p: &self.p * c,
            q: &self.q * c,
        }
    }

    /// The counit: coefficient of `X`.
    pub fn counit(&self) -> HPoly<R> {
        self.q.clone()
    }

    /// Units of `A` in degree zero are `±1`.
    pub fn is_unit(&self) -> bool {
        self.q.is_zero() && self.p.is_constant() && self.p.coeff(0).is_unit()
    }
}

/// `Δ^{r-1}(a)` as a map from `r`-bit masks (bit set = `X`) to coefficients.
pub fn comultiply<R: Coeff>(a: &AElem<R>, r: usize) -> Vec<HPoly<R>> {
    assert!(r >= 1);
    let mut cur: Vec<HPoly<R>> = vec![a.p.clone(), a.q.clone()];
    for k in 1..r {
        // split factor k-1 into factors k-1 and k
        let mut next = vec![HPoly::zero(); 1 << (k + 1)];
        let last = 1usize << (k - 1);
        let new = 1usize << k;
        for (mask, c) in cur.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if mask & last == 0 {
                next[mask | last] = &next[mask | last] + c;
                next[mask | new] = &next[mask | new] + c;
                let hc = c.shift(1);
                next[mask] = &next[mask] - &hc;
            } else {
                next[mask | new] = &next[mask | new] + c;
            }
        }
        cur = next;
    }
    cur
}

/// A surface piece before gluing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Piece {
    pub chi: i32,
    pub dots: u32,
}

impl Piece {
    pub const DISK: Piece = Piece { chi: 1, dots: 0 };
    pub const DOTTED_DISK: Piece = Piece { chi: 1, dots: 1 };

    pub fn disk(dotted: bool) -> Piece {
        Piece {
            chi: 1,
            dots: dotted as u32,
        }
    }
}

/// Glue `pieces` along `joins` (piece, piece, Euler characteristic change)
/// and express the result in the neck-cut basis of the final boundary cycles;
/// `owners[c]` is a piece whose component carries final cycle `c`.
pub fn assemble<R: Coeff>(
    pieces: &[Piece],
    joins: &[(usize, usize, i32)],
    owners: &[usize],
) -> BTreeMap<u64, HPoly<R>> {
    let mut uf = UnionFind::<usize>::new(pieces.len());
    for &(a, b, _) in joins {
        uf.union(a, b);
    }
    let mut comps: BTreeMap<usize, (i32, u32, Vec<usize>)> = BTreeMap::new();
    for (i, pc) in pieces.iter().enumerate() {
        let e = comps.entry(uf.find(i)).or_insert((0, 0, Vec::new()));
        e.0 += pc.chi;
        e.1 += pc.dots;
    }
    for &(a, _, loss) in joins {
        comps.get_mut(&uf.find(a)).expect("component").0 += loss;
    }
    for (c, &o) in owners.iter().enumerate() {
        comps
            .get_mut(&uf.find(o))
            .expect("owner component")
            .2
            .push(c);
    }
    let mut result: BTreeMap<u64, HPoly<R>> = BTreeMap::new();
    result.insert(0, HPoly::one());
    for (chi, dots, boundary) in comps.values() {
        let r = boundary.len() as i32;
        let twice_genus = 2 - chi - r;
        assert!(
            twice_genus >= 0 && twice_genus % 2 == 0,
            "inconsistent surface: chi={chi}, boundary={r}"
        );
        let genus = (twice_genus / 2) as u32;
        let value = AElem::<R>::x().pow(*dots).mul(&AElem::theta().pow(genus));
        if r == 0 {
            let c = value.counit();
            if c.is_zero() {
                return BTreeMap::new();
            }
            for v in result.values_mut() {
                *v = &*v * &c;
            }
            continue;
        }
        let local = comultiply(&value, r as usize);
        let mut next = BTreeMap::new();
        for (mask, c) in &result {
            for (lm, lc) in local.iter().enumerate() {
                if lc.is_zero() {
                    continue;
                }
                let mut gm = *mask;
                for (bit, &cyc) in boundary.iter().enumerate() {
                    if lm >> bit & 1 == 1 {
                        gm |= 1u64 << cyc;
                    }
                }
                let prod = c * lc;
                let e: &mut HPoly<R> = next.entry(gm).or_insert_with(HPoly::zero);
                *e = &*e + &prod;
            }
        }
        next.retain(|_, v: &mut HPoly<R>| !v.is_zero());
        result = next;
        if result.is_empty() {
            return result;
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    type E = AElem<i64>;

    #[test]
    fn algebra_relations() {
        let x = E::x();
        assert_eq!(x.mul(&x), E::new(HPoly::zero(), HPoly::h()));
        // θ^2 = h^2
        assert_eq!(
            E::theta().pow(2),
            E::new(HPoly::monomial(1, 2), HPoly::zero())
        );
        assert!(E::int(-1).is_unit());
        assert!(!E::x().is_unit());
        assert!(!E::int(2).is_unit());
    }

    #[test]
    fn comultiplication() {
        let d = comultiply(&E::one(), 2);
        assert_eq!(
            d,
            vec![-&HPoly::h(), HPoly::one(), HPoly::one(), HPoly::zero()]
        );
        let d = comultiply(&E::x(), 3);
        assert_eq!(d.iter().filter(|c| !c.is_zero()).count(), 1);
        assert_eq!(d[7], HPoly::one());
        // multiplying back the factors of Δ(1) gives θ
        let back = d_mult(&comultiply(&E::one(), 2));
        assert_eq!(back, E::theta());
    }

    fn d_mult(v: &[HPoly<i64>]) -> E {
        let basis = [E::one(), E::x()];
        let mut acc = E::zero();
        for (mask, c) in v.iter().enumerate() {
            let t = basis[mask & 1].mul(&basis[mask >> 1 & 1]).scale(c);
            acc = acc.add(&t);
        }
        acc
    }

    #[test]
    fn closed_surfaces() {
        let sphere = assemble::<i64>(&[Piece { chi: 2, dots: 0 }], &[], &[]);
        assert!(sphere.is_empty());
        let dotted = assemble::<i64>(&[Piece { chi: 2, dots: 1 }], &[], &[]);
        assert_eq!(dotted.get(&0), Some(&HPoly::one()));
        let torus = assemble::<i64>(&[Piece { chi: 0, dots: 0 }], &[], &[]);
        assert_eq!(torus.get(&0), Some(&HPoly::int(2)));
        // two disks glued along their boundary circle form a sphere
        let glued = assemble::<i64>(&[Piece::DISK, Piece::DOTTED_DISK], &[(0, 1, 0)], &[]);
        assert_eq!(glued.get(&0), Some(&HPoly::one()));
    }

    #[test]
    fn cylinder_is_neck_cut() {
        let cyl = assemble::<i64>(&[Piece { chi: 0, dots: 0 }], &[], &[0, 0]);
        assert_eq!(cyl.get(&0b01), Some(&HPoly::one()));
        assert_eq!(cyl.get(&0b10), Some(&HPoly::one()));
        assert_eq!(cyl.get(&0b00), Some(&-&HPoly::h()));
        assert_eq!(cyl.len(), 3);
    }
}
