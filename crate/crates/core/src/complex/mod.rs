//! Bounded cochain complexes over an additive category, stored sparsely, and
//! Gaussian elimination of invertible differential entries.

pub mod tangle;

use std::collections::{BTreeMap, BTreeSet};

pub use tangle::{
    close_left, close_right, deloop, dump, letter_complex, scan_word, simplify, stack,
    unit_complex, TangleComplex, TangleObj,
};

/// A morphism between two objects of a complex.
pub trait Entry: Clone {
    fn is_zero(&self) -> bool;
    /// `Some(±1)` if the entry is plus or minus an identity.
    fn unit_sign(&self) -> Option<i64>;
    /// Composition, `self` first.
    fn then(&self, next: &Self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

/// Objects carry a q-shift, used to order elimination candidates.
pub trait Object: Clone {
    fn qshift(&self) -> i64;
}

/// A cochain complex: objects with homological degrees and a sparse
/// differential. Object ids are stable under elimination; iteration is by
/// homological degree and then by id.
#[derive(Clone, Debug)]
pub struct Complex<O, E> {
    objects: BTreeMap<usize, (i64, O)>,
    out: BTreeMap<usize, BTreeMap<usize, E>>,
    inc: BTreeMap<usize, BTreeSet<usize>>,
    next_id: usize,
}

impl<O, E> Default for Complex<O, E> {
    fn default() -> Self {
        Complex {
            objects: BTreeMap::new(),
            out: BTreeMap::new(),
            inc: BTreeMap::new(),
            next_id: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("entry {0} -> {1} is not invertible")]
    NotInvertible(usize, usize),
    #[error("no entry {0} -> {1}")]
    Missing(usize, usize),
    #[error("d∘d ≠ 0 at {0} -> {1}")]
    NotAComplex(usize, usize),
}

impl<O: Object, E: Entry> Complex<O, E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_object(&mut self, homdeg: i64, obj: O) -> usize {
        let id = self.next_id;
        self.next_id += 1;
        self.objects.insert(id, (homdeg, obj));
        self.out.insert(id, BTreeMap::new());
        self.inc.insert(id, BTreeSet::new());
        id
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.objects.contains_key(&id)
    }

    pub fn object(&self, id: usize) -> &O {
        &self.objects[&id].1
    }

    pub fn homdeg(&self, id: usize) -> i64 {
        self.objects[&id].0
    }

    /// Object ids ordered by homological degree, then id.
    pub fn ids(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.objects.keys().copied().collect();
        v.sort_by_key(|id| (self.objects[id].0, *id));
        v
    }

    /// Objects of one homological degree, in id order.
    pub fn level(&self, homdeg: i64) -> Vec<usize> {
        self.objects
            .iter()
            .filter(|(_, (h, _))| *h == homdeg)
            .map(|(id, _)| *id)
            .collect()
    }

    pub fn homdegs(&self) -> BTreeSet<i64> {
        self.objects.values().map(|(h, _)| *h).collect()
    }

    pub fn entry(&self, from: usize, to: usize) -> Option<&E> {
        self.out.get(&from)?.get(&to)
    }

    /// Outgoing entries of one object, by target id.
    pub fn outgoing(&self, from: usize) -> impl Iterator<Item = (usize, &E)> {
        self.out[&from].iter().map(|(t, e)| (*t, e))
    }

    pub fn incoming(&self, to: usize) -> impl Iterator<Item = usize> + '_ {
        self.inc[&to].iter().copied()
    }

    /// All entries as `(from, to, entry)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &E)> {
        self.out
            .iter()
            .flat_map(|(f, m)| m.iter().map(move |(t, e)| (*f, *t, e)))
    }

    pub fn entry_count(&self) -> usize {
        self.out.values().map(|m| m.len()).sum()
    }

    /// Set the entry `from -> to`, removing it if zero.
    pub fn set_entry(&mut self, from: usize, to: usize, e: E) {
        debug_assert_eq!(
            self.homdeg(from) + 1,
            self.homdeg(to),
            "differential must raise degree by one"
        );
        if e.is_zero() {
            self.out.get_mut(&from).expect("object").remove(&to);
            self.inc.get_mut(&to).expect("object").remove(&from);
        } else {
            self.out.get_mut(&from).expect("object").insert(to, e);
            self.inc.get_mut(&to).expect("object").insert(from);
        }
    }

    pub fn add_to_entry(&mut self, from: usize, to: usize, e: E) {
        let sum = match self.entry(from, to) {
            Some(old) => old.add(&e),
            None => e,
        };
        self.set_entry(from, to, sum);
    }

    pub fn remove_object(&mut self, id: usize) {
        if let Some(outs) = self.out.remove(&id) {
            for t in outs.keys() {
                if let Some(s) = self.inc.get_mut(t) {
                    s.remove(&id);
                }
            }
        }
        if let Some(ins) = self.inc.remove(&id) {
            for f in ins {
                if let Some(m) = self.out.get_mut(&f) {
                    m.remove(&id);
                }
            }
        }
        self.objects.remove(&id);
    }

    /// Cancel the invertible entry `x -> y`: remove both objects and replace
    /// every entry `z -> w` by `d(z,w) - d(x,w) d(x,y)^{-1} d(z,y)`.
    pub fn eliminate(&mut self, x: usize, y: usize) -> Result<(), ComplexError> {
        let phi = self.entry(x, y).ok_or(ComplexError::Missing(x, y))?;
        let sign = phi.unit_sign().ok_or(ComplexError::NotInvertible(x, y))?;
        let deltas: Vec<(usize, E)> = self.inc[&y]
            .iter()
            .filter(|&&z| z != x)
            .map(|&z| (z, self.out[&z][&y].clone()))
            .collect();
        let gammas: Vec<(usize, E)> = self.out[&x]
            .iter()
            .filter(|(w, _)| **w != y)
            .map(|(w, e)| (*w, e.clone()))
            .collect();
        for (z, delta) in &deltas {
            let d = if sign == 1 {
                delta.neg()
            } else {
                delta.clone()
            };
            for (w, gamma) in &gammas {
                self.add_to_entry(*z, *w, d.then(gamma));
            }
        }
        self.remove_object(x);
        self.remove_object(y);
        Ok(())
    }

    /// Repeatedly cancel `±identity` entries. Sources are scanned by lowest
    /// homological degree, then smallest q-shift, then id; targets by id.
    pub fn eliminate_units(&mut self) -> usize {
        let mut count = 0;
        loop {
            let mut order: Vec<usize> = self.objects.keys().copied().collect();
            order.sort_by_key(|id| {
                let (h, o) = &self.objects[id];
                (*h, o.qshift(), *id)
            });
            let mut changed = false;
            for x in order {
                if !self.contains(x) {
                    continue;
                }
                let target = self.out[&x]
                    .iter()
                    .find(|(_, e)| e.unit_sign().is_some())
                    .map(|(y, _)| *y);
                if let Some(y) = target {
                    self.eliminate(x, y).expect("unit entry");
                    count += 1;
                    changed = true;
                }
            }
            if !changed {
                return count;
            }
        }
    }

    /// Check `d∘d = 0` exactly.
    pub fn check_d2(&self) -> Result<(), ComplexError> {
        for (&x, outs) in &self.out {
            let mut acc: BTreeMap<usize, E> = BTreeMap::new();
            for (&y, e1) in outs {
                for (&z, e2) in &self.out[&y] {
                    let c = e1.then(e2);
                    let s = match acc.remove(&z) {
                        Some(old) => old.add(&c),
                        None => c,
                    };
                    acc.insert(z, s);
                }
            }
            if let Some((&z, _)) = acc.iter().find(|(_, e)| !e.is_zero()) {
                return Err(ComplexError::NotAComplex(x, z));
            }
        }
        Ok(())
    }

    /// Rebuild with transformed objects and entries; entries mapped to zero are dropped.
    pub fn map<O2: Object, E2: Entry>(
        &self,
        mut fo: impl FnMut(&O) -> O2,
        mut fe: impl FnMut(&E) -> E2,
    ) -> Complex<O2, E2> {
        let mut c = Complex::new();
        let mut idmap = BTreeMap::new();
        for id in self.ids() {
            let (h, o) = &self.objects[&id];
            idmap.insert(id, c.add_object(*h, fo(o)));
        }
        for (f, t, e) in self.entries() {
            c.set_entry(idmap[&f], idmap[&t], fe(e));
        }
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Clone, Debug, PartialEq)]
    struct Int(i64);

    impl Entry for Int {
        fn is_zero(&self) -> bool {
            self.0 == 0
        }
        fn unit_sign(&self) -> Option<i64> {
            (self.0.abs() == 1).then_some(self.0)
        }
        fn then(&self, n: &Self) -> Self {
            Int(self.0 * n.0)
        }
        fn add(&self, o: &Self) -> Self {
            Int(self.0 + o.0)
        }
        fn neg(&self) -> Self {
            Int(-self.0)
        }
    }

    #[derive(Clone, Debug)]
    struct Q(i64);
    impl Object for Q {
        fn qshift(&self) -> i64 {
            self.0
        }
    }

    #[test]
    fn contractible_pair() {
        let mut c = Complex::<Q, Int>::new();
        let x = c.add_object(0, Q(0));
        let y = c.add_object(1, Q(0));
        c.set_entry(x, y, Int(1));
        assert_eq!(c.eliminate_units(), 1);
        assert!(c.is_empty());
    }

    #[test]
    fn elimination_updates_zigzag() {
        // z -> y <- x -> w with d(x,y) = 1: z -> w picks up -d(x,w) d(z,y)
        let mut c = Complex::<Q, Int>::new();
        let z = c.add_object(0, Q(0));
        let x = c.add_object(0, Q(0));
        let y = c.add_object(1, Q(0));
        let w = c.add_object(1, Q(0));
        c.set_entry(z, y, Int(3));
        c.set_entry(x, y, Int(-1));
        c.set_entry(x, w, Int(2));
        c.eliminate(x, y).unwrap();
        assert_eq!(c.entry(z, w), Some(&Int(6)));
        assert!(c.eliminate(z, w).is_err());
    }

    #[test]
    fn d2_detection() {
        let mut c = Complex::<Q, Int>::new();
        let a = c.add_object(0, Q(0));
        let b = c.add_object(1, Q(0));
        let d = c.add_object(2, Q(0));
        c.set_entry(a, b, Int(2));
        c.set_entry(b, d, Int(3));
        assert!(c.check_d2().is_err());
        c.set_entry(b, d, Int(0));
        assert!(c.check_d2().is_ok());
        assert_eq!(c.entry_count(), 1);
    }
}
