//! Bigraded abelian groups: free rank plus torsion invariant factors per `(i, j)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A finitely generated abelian group `Z^free ⊕ Z/d_1 ⊕ ... ⊕ Z/d_r` with
/// `d_1 | d_2 | ... | d_r` and every `d_k >= 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Group {
    pub free: usize,
    pub torsion: Vec<u64>,
}

impl Group {
    pub fn free(n: usize) -> Self {
        Group {
            free: n,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }

    /// Put an arbitrary list of cyclic orders into invariant-factor form.
    pub fn from_cyclic(free: usize, orders: &[u64]) -> Self {
        // primary decomposition, then recombine
        let mut primes: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &o in orders {
            let mut n = o;
            let mut p = 2;
            while n > 1 {
                if p * p > n {
                    p = n;
                }
                if n % p == 0 {
                    let mut pk = 1;
                    while n % p == 0 {
                        n /= p;
                        pk *= p;
                    }
                    primes.entry(p).or_default().push(pk);
                }
                p += 1;
            }
        }
        let len = primes.values().map(|v| v.len()).max().unwrap_or(0);
        let mut inv = vec![1u64; len];
        for v in primes.values_mut() {
            v.sort_unstable();
            let off = len - v.len();
            for (k, pk) in v.iter().enumerate() {
                inv[off + k] *= pk;
            }
        }
        Group { free, torsion: inv }
    }

    pub fn direct_sum(&self, o: &Group) -> Group {
        let mut all = self.torsion.clone();
        all.extend_from_slice(&o.torsion);
        Group::from_cyclic(self.free + o.free, &all)
    }

    /// Number of cyclic summands of order divisible by the prime `p`.
    pub fn p_torsion_count(&self, p: u64) -> usize {
        self.torsion.iter().filter(|&&d| d % p == 0).count()
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z{}", superscript(n))),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = self.torsion[i];
            let n = self.torsion[i..].iter().take_while(|&&x| x == d).count();
            parts.push(if n == 1 {
                format!("Z/{d}")
            } else {
                format!("(Z/{d}){}", superscript(n))
            });
            i += n;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

/// Groups indexed by homological degree `i` and quantum degree `j`; zero
/// groups are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BigradedGroups {
    cells: BTreeMap<(i64, i64), Group>,
}

#[derive(Serialize, Deserialize)]
struct Cell {
    i: i64,
    j: i64,
    free: usize,
    torsion: Vec<u64>,
}

impl BigradedGroups {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, i: i64, j: i64, g: Group) {
        if g.is_zero() {
            self.cells.remove(&(i, j));
        } else {
            self.cells.insert((i, j), g);
        }
    }

    /// Add `g` as a direct summand at `(i, j)`.
    pub fn add(&mut self, i: i64, j: i64, g: &Group) {
        let cur = self.get(i, j);
        self.insert(i, j, cur.direct_sum(g));
    }

    pub fn get(&self, i: i64, j: i64) -> Group {
        self.cells.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &Group)> {
        self.cells.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn total_rank(&self) -> usize {
        self.cells.values().map(|g| g.free).sum()
    }

    pub fn is_free(&self) -> bool {
        self.cells.values().all(|g| g.torsion.is_empty())
    }

    /// All invariant factors, with multiplicity.
    pub fn torsion_orders(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self
            .cells
            .values()
            .flat_map(|g| g.torsion.iter().copied())
            .collect();
        v.sort_unstable();
        v
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), g) in o.iter() {
            out.add(i, j, g);
        }
        out
    }

    pub fn shifted(&self, di: i64, dj: i64) -> Self {
        BigradedGroups {
            cells: self
                .cells
                .iter()
                .map(|(&(i, j), g)| ((i + di, j + dj), g.clone()))
                .collect(),
        }
    }

    /// Free ranks as a plain table.
    pub fn ranks(&self) -> BTreeMap<(i64, i64), usize> {
        self.cells
            .iter()
            .filter(|(_, g)| g.free > 0)
            .map(|(&k, g)| (k, g.free))
            .collect()
    }

    /// Dimensions over `F_p` by the universal coefficient theorem
    /// (cohomological grading: torsion of `H^i` also contributes to `i - 1`).
    pub fn mod_p_dims(&self, p: u64) -> BTreeMap<(i64, i64), usize> {
        let mut out: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        for (&(i, j), g) in &self.cells {
            *out.entry((i, j)).or_default() += g.free + g.p_torsion_count(p);
            let t = g.p_torsion_count(p);
            if t > 0 {
                *out.entry((i - 1, j)).or_default() += t;
            }
        }
        out.retain(|_, v| *v > 0);
        out
    }

    /// The first bidegree where the two tables differ.
    pub fn first_difference(&self, o: &Self) -> Option<(i64, i64)> {
        let keys: std::collections::BTreeSet<_> =
            self.cells.keys().chain(o.cells.keys()).copied().collect();
        keys.into_iter()
            .find(|&(i, j)| self.get(i, j) != o.get(i, j))
    }

    pub fn to_json(&self) -> String {
        let cells: Vec<Cell> = self
            .cells
            .iter()
            .map(|(&(i, j), g)| Cell {
                i,
                j,
                free: g.free,
                torsion: g.torsion.clone(),
            })
            .collect();
        serde_json::to_string(&cells).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        let cells: Vec<Cell> = serde_json::from_str(s)?;
        let mut out = BigradedGroups::new();
        for c in cells {
            out.add(c.i, c.j, &Group::from_cyclic(c.free, &c.torsion));
        }
        Ok(out)
    }

    /// An aligned table with homological degree across and quantum degree down.
    pub fn table(&self) -> String {
        render_table(
            &self
                .cells
                .iter()
                .map(|(k, g)| (*k, g.to_string()))
                .collect(),
        )
    }
}

/// Rank tables over a field, `F²`-style cells with the given field symbol.
pub fn dims_table(dims: &BTreeMap<(i64, i64), usize>, field: &str) -> String {
    let cells = dims
        .iter()
        .filter(|(_, &n)| n > 0)
        .map(|(k, &n)| {
            (
                *k,
                if n == 1 {
                    field.to_string()
                } else {
                    format!("{field}{}", superscript(n))
                },
            )
        })
        .collect();
    render_table(&cells)
}

/// Lay out `(i, j)` cells with `i` across and `j` down, empty cells as `.`.
pub fn render_table(cells: &BTreeMap<(i64, i64), String>) -> String {
    if cells.is_empty() {
        return "0\n".to_string();
    }
    let is: std::collections::BTreeSet<i64> = cells.keys().map(|k| k.0).collect();
    let js: std::collections::BTreeSet<i64> = cells.keys().map(|k| k.1).collect();
    let cols: Vec<i64> = (*is.first().unwrap()..=*is.last().unwrap()).collect();
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut header = vec!["j\\i".to_string()];
    header.extend(cols.iter().map(|i| i.to_string()));
    rows.push(header);
    for &j in js.iter().rev() {
        let mut r = vec![j.to_string()];
        for &i in &cols {
            r.push(
                cells
                    .get(&(i, j))
                    .cloned()
                    .unwrap_or_else(|| ".".to_string()),
            );
        }
        rows.push(r);
    }
    let ncol = rows[0].len();
    let widths: Vec<usize> = (0..ncol)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap())
        .collect();
    let mut s = String::new();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(x, &w)| format!("{}{}", " ".repeat(w - x.chars().count()), x))
            .collect();
        s.push_str(cells.join("  ").trim_end());
        s.push('\n');
    }
    s
}

impl FromIterator<((i64, i64), Group)> for BigradedGroups {
    fn from_iter<T: IntoIterator<Item = ((i64, i64), Group)>>(iter: T) -> Self {
        let mut out = BigradedGroups::new();
        for ((i, j), g) in iter {
            out.add(i, j, &g);
        }
        out
    }
}

impl fmt::Display for BigradedGroups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .cells
            .iter()
            .map(|((i, j), g)| format!("({i},{j}): {g}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factor_form() {
        assert_eq!(Group::from_cyclic(0, &[2, 3]).torsion, vec![6]);
        assert_eq!(Group::from_cyclic(0, &[2, 4, 2]).torsion, vec![2, 2, 4]);
        assert_eq!(Group::from_cyclic(0, &[6, 4]).torsion, vec![2, 12]);
        assert_eq!(Group::from_cyclic(1, &[1, 1]).torsion, Vec::<u64>::new());
    }

    #[test]
    fn display_and_json() {
        let mut g = BigradedGroups::new();
        g.insert(0, 1, Group::free(2));
        g.insert(3, 7, Group::from_cyclic(0, &[2]));
        g.insert(1, 1, Group::default());
        assert_eq!(g.len(), 2);
        assert_eq!(g.get(0, 1).to_string(), "Z²");
        assert_eq!(g.get(3, 7).to_string(), "Z/2");
        let js = g.to_json();
        assert_eq!(
            js,
            r#"[{"i":0,"j":1,"free":2,"torsion":[]},{"i":3,"j":7,"free":0,"torsion":[2]}]"#
        );
        assert_eq!(BigradedGroups::from_json(&js).unwrap(), g);
        assert!(g.table().contains("Z/2"));
    }

    #[test]
    fn universal_coefficients() {
        let mut g = BigradedGroups::new();
        g.insert(3, 7, Group::from_cyclic(0, &[2]));
        let d = g.mod_p_dims(2);
        assert_eq!(d.get(&(3, 7)), Some(&1));
        assert_eq!(d.get(&(2, 7)), Some(&1));
        assert!(g.mod_p_dims(3).is_empty());
    }
}
