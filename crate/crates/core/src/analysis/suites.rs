//! Parameter grids and the batch runs behind `kh3 verify` and the acceptance
//! test. Cases run in parallel on the rayon pool.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks::{
    alternating_exponents, knight_move_check, omega4_check, omega6_identity_check,
};
use super::report::{Mismatch, Report};
use super::summands::verify_spec;
use crate::algebra::{field_dims_char, homology, specialize_reduced, specialize_unreduced};
use crate::braid::{
    closure_meta, murasugi_word, BraidLetter, BraidWord, MurasugiClass, MurasugiSpec,
};
use crate::closure::full_pipeline;
use crate::oracle::cube_khovanov;

/// Bounds of the verification grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    /// Ω0–Ω3: `0 <= k <= torus_kmax`
    pub torus_kmax: i64,
    /// Ω4, Ω5: `1 <= k <= kl_kmax`
    pub kl_kmax: i64,
    /// Ω4: `1 <= l <= lmax`; Ω5: both `2l - 1` and `2l` up to this `l`
    pub lmax: u32,
    /// Ω6: `1 <= k <= alt_kmax`
    pub alt_kmax: i64,
    /// Ω6: exponent lists with `n(w) + m(w) <= alt_total`
    pub alt_total: u32,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            torus_kmax: 3,
            kl_kmax: 2,
            lmax: 4,
            alt_kmax: 2,
            alt_total: 5,
        }
    }
}

impl Grid {
    pub fn torus_specs(&self) -> Vec<MurasugiSpec> {
        use MurasugiClass::*;
        [Omega0, Omega1, Omega2, Omega3]
            .into_iter()
            .flat_map(|c| (0..=self.torus_kmax).map(move |k| MurasugiSpec::new(c, k)))
            .collect()
    }

    pub fn omega4_specs(&self) -> Vec<MurasugiSpec> {
        (1..=self.kl_kmax)
            .flat_map(|k| {
                (1..=self.lmax).map(move |l| MurasugiSpec::with_l(MurasugiClass::Omega4, k, l))
            })
            .collect()
    }

    /// `l` here is the literal exponent of `b`, so it runs to `2 * lmax`.
    pub fn omega5_specs(&self) -> Vec<MurasugiSpec> {
        (1..=self.kl_kmax)
            .flat_map(|k| {
                (1..=2 * self.lmax).map(move |l| MurasugiSpec::with_l(MurasugiClass::Omega5, k, l))
            })
            .collect()
    }

    pub fn omega6_specs(&self) -> Vec<MurasugiSpec> {
        let alts = alternating_exponents(self.alt_total);
        (1..=self.alt_kmax)
            .flat_map(|k| alts.iter().map(move |a| MurasugiSpec::omega6(k, a.clone())))
            .collect()
    }

    pub fn all_specs(&self) -> Vec<MurasugiSpec> {
        let mut v = self.torus_specs();
        v.extend(self.omega4_specs());
        v.extend(self.omega5_specs());
        v.extend(self.omega6_specs());
        v
    }
}

fn bad_spec(spec: &MurasugiSpec, claim: &str, e: impl ToString) -> Report {
    Report::fail_with(&spec.to_string(), claim, e.to_string())
}

pub fn torus_suite(grid: &Grid) -> Vec<Report> {
    grid.torus_specs()
        .par_iter()
        .map(|s| verify_spec(s).unwrap_or_else(|e| bad_spec(s, "torus-decomposition", e)))
        .collect()
}

pub fn omega5_suite(grid: &Grid) -> Vec<Report> {
    grid.omega5_specs()
        .par_iter()
        .map(|s| verify_spec(s).unwrap_or_else(|e| bad_spec(s, "omega5-decomposition", e)))
        .collect()
}

pub fn omega4_suite(grid: &Grid) -> Vec<Report> {
    grid.omega4_specs()
        .par_iter()
        .map(|s| {
            omega4_check(s.k, s.l)
                .map(|o| o.report)
                .unwrap_or_else(|e| bad_spec(s, "omega4-splitting", e))
        })
        .collect()
}

pub fn omega6_suite(grid: &Grid) -> Vec<Report> {
    grid.omega6_specs()
        .par_iter()
        .map(|s| {
            omega6_identity_check(s.k, &s.alt)
                .unwrap_or_else(|e| bad_spec(s, "omega6-reduced-identity", e))
        })
        .collect()
}

/// Unreduced integral torsion of every grid link has order 2 only.
pub fn torsion_suite(grid: &Grid) -> Vec<Report> {
    grid.all_specs()
        .par_iter()
        .map(|s| {
            let claim = "torsion-order-two";
            let w = match murasugi_word(s) {
                Ok(w) => w,
                Err(e) => return bad_spec(s, claim, e),
            };
            let g = homology(&specialize_unreduced(&full_pipeline::<i64>(&w)));
            let bad = g
                .iter()
                .find(|(_, x)| x.torsion.iter().any(|&d| d != 2))
                .map(|(k, x)| (*k, x.clone()));
            match bad {
                None => Report::pass(&s.to_string(), claim),
                Some(((i, j), x)) => {
                    let m = Mismatch {
                        theory: "unreduced Z".into(),
                        i,
                        j,
                        expected: "only Z/2".into(),
                        found: x.to_string(),
                    };
                    Report::fail(&s.to_string(), claim, m)
                }
            }
        })
        .collect()
}

/// Rational unreduced homology of every grid link splits into pawns and
/// knight moves.
pub fn knight_suite(grid: &Grid) -> Vec<Report> {
    grid.all_specs()
        .par_iter()
        .map(|s| {
            let claim = "knight-move";
            let w = match murasugi_word(s) {
                Ok(w) => w,
                Err(e) => return bad_spec(s, claim, e),
            };
            let dims = field_dims_char(&specialize_unreduced(&full_pipeline::<i64>(&w)), 0)
                .expect("rational dims");
            match knight_move_check(&dims, closure_meta(&w).components) {
                Some(wit) => Report::pass(&s.to_string(), claim)
                    .with_detail(format!("pawns {:?} knights {:?}", wit.pawns, wit.knights)),
                None => Report::fail_with(
                    &s.to_string(),
                    claim,
                    format!("no pawn/knight cover of {dims:?}"),
                ),
            }
        })
        .collect()
}

/// Every word of length `<= maxlen` up to cyclic rotation, then `random`
/// words of length `1..=randlen` drawn with a fixed seed.
pub fn oracle_corpus(maxlen: usize, random: usize, randlen: usize, seed: u64) -> Vec<BraidWord> {
    let letters = [
        BraidLetter::A,
        BraidLetter::A_INV,
        BraidLetter::B,
        BraidLetter::B_INV,
    ];
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut level = vec![BraidWord::empty()];
    for len in 0..=maxlen {
        for w in &level {
            if seen.insert(w.canonical_rotation()) {
                out.push(w.clone());
            }
        }
        if len == maxlen {
            break;
        }
        level = level
            .iter()
            .flat_map(|w| {
                letters
                    .iter()
                    .map(move |&l| w.concat(&BraidWord::new(vec![l])))
            })
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        let n = rng.gen_range(1..=randlen);
        out.push(BraidWord::new(
            (0..n).map(|_| letters[rng.gen_range(0..4)]).collect(),
        ));
    }
    out
}

/// Pipeline against the cube of resolutions, unreduced and reduced.
pub fn oracle_check(w: &BraidWord) -> Report {
    let claim = "oracle-equivalence";
    let a = full_pipeline::<i64>(w);
    for (reduced, theory) in [(false, "unreduced Z"), (true, "reduced Z")] {
        let ours = homology(&if reduced {
            specialize_reduced(&a)
        } else {
            specialize_unreduced(&a)
        });
        let cube = match cube_khovanov(w, reduced) {
            Ok(g) => g,
            Err(e) => return Report::fail_with(&w.to_string(), claim, e.to_string()),
        };
        if let Some((i, j)) = ours.first_difference(&cube) {
            let m = Mismatch {
                theory: theory.into(),
                i,
                j,
                expected: cube.get(i, j).to_string(),
                found: ours.get(i, j).to_string(),
            };
            return Report::fail(&w.to_string(), claim, m);
        }
    }
    Report::pass(&w.to_string(), claim)
}

pub fn oracle_suite(words: &[BraidWord]) -> Vec<Report> {
    words.par_iter().map(oracle_check).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_dedups_rotations() {
        let c = oracle_corpus(2, 0, 0, 1);
        // empty, 4 letters, 16 two-letter words of which 6 pairs coincide
        assert_eq!(c.len(), 1 + 4 + 10);
        let r = oracle_corpus(0, 5, 3, 7);
        assert_eq!(r.len(), 6);
        assert!(r.iter().skip(1).all(|w| (1..=3).contains(&w.len())));
        assert_eq!(r, oracle_corpus(0, 5, 3, 7));
    }

    #[test]
    fn grid_sizes() {
        let g = Grid::default();
        assert_eq!(g.torus_specs().len(), 16);
        assert_eq!(g.omega4_specs().len(), 8);
        assert_eq!(g.omega5_specs().len(), 16);
        assert_eq!(g.omega6_specs().len(), 2 * 15);
    }

    #[test]
    fn small_suites() {
        let g = Grid {
            torus_kmax: 1,
            kl_kmax: 1,
            lmax: 1,
            alt_kmax: 1,
            alt_total: 2,
        };
        for r in [
            torus_suite(&g),
            omega5_suite(&g),
            omega4_suite(&g),
            omega6_suite(&g),
            torsion_suite(&g),
            knight_suite(&g),
        ]
        .concat()
        {
            assert!(r.pass, "{r:?}");
        }
        assert!(oracle_suite(&oracle_corpus(3, 3, 5, 0))
            .iter()
            .all(|r| r.pass));
    }
}
