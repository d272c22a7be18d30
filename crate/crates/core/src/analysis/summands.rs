//! Closed-form direct sum decompositions of torus-type closures into shifted
//! copies of `A` and `A(j)`, and their comparison with computed homology.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::report::{Mismatch, Report};
use crate::algebra::{
    field_dims_char, homology, specialize_blt, specialize_reduced, specialize_unreduced,
    BigradedGroups,
};
use crate::braid::{murasugi_word, BraidWord, MurasugiClass, MurasugiSpec};
use crate::closure::{build_a, build_aj, full_pipeline, AComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SummandKind {
    /// a single copy of `A`
    A,
    /// `A(j)`: `A --(2X - h)^j--> A`
    AJ(u32),
}

/// `u^i q^q A` or `u^i q^q A(j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Summand {
    pub kind: SummandKind,
    pub i: i64,
    pub q: i64,
}

impl Summand {
    pub fn a(i: i64, q: i64) -> Self {
        Summand {
            kind: SummandKind::A,
            i,
            q,
        }
    }

    pub fn aj(j: u32, i: i64, q: i64) -> Self {
        Summand {
            kind: SummandKind::AJ(j),
            i,
            q,
        }
    }

    pub fn complex(&self) -> AComplex<i64> {
        match self.kind {
            SummandKind::A => build_a(self.i, self.q),
            SummandKind::AJ(j) => build_aj(j, self.i, self.q),
        }
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SummandKind::A => write!(f, "u^{}q^{}A", self.i, self.q),
            SummandKind::AJ(j) => write!(f, "u^{}q^{}A({j})", self.i, self.q),
        }
    }
}

/// A multiset of summands, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SummandList(Vec<Summand>);

impl SummandList {
    pub fn new(mut v: Vec<Summand>) -> Self {
        v.sort();
        SummandList(v)
    }

    pub fn items(&self) -> &[Summand] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, s: Summand) {
        self.0.push(s);
        self.0.sort();
    }

    pub fn count(&self, kind: SummandKind) -> usize {
        self.0.iter().filter(|s| s.kind == kind).count()
    }

    pub fn shifted(&self, di: i64, dq: i64) -> Self {
        SummandList::new(
            self.0
                .iter()
                .map(|s| Summand {
                    i: s.i + di,
                    q: s.q + dq,
                    ..*s
                })
                .collect(),
        )
    }

    pub fn union(&self, o: &Self) -> Self {
        SummandList::new(self.0.iter().chain(&o.0).copied().collect())
    }

    /// The direct sum as an `A`-complex.
    pub fn complex(&self) -> AComplex<i64> {
        self.0
            .iter()
            .fold(AComplex::new(), |acc, s| acc.direct_sum(&s.complex()))
    }
}

impl fmt::Display for SummandList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("no closed-form decomposition for {0}")]
    Uncovered(String),
    #[error("invalid parameters: {0}")]
    BadSpec(String),
}

fn torus_3k(k: i64) -> Vec<Summand> {
    if k == 0 {
        return vec![
            Summand::a(0, 2),
            Summand::a(0, 0),
            Summand::a(0, 0),
            Summand::a(0, -2),
        ];
    }
    let mut v = vec![
        Summand::a(0, 6 * k - 2),
        Summand::a(4 * k, 12 * k),
        Summand::a(4 * k, 12 * k),
        Summand::a(4 * k, 12 * k - 2),
    ];
    v.extend((0..k).map(|m| Summand::aj(1, 4 * m + 2, 6 * (k + m) + 2)));
    v.extend((1..k).map(|m| Summand::aj(2, 4 * m, 6 * (k + m) - 2)));
    v
}

fn omega5_odd(k: i64, l: i64) -> Vec<Summand> {
    let mut v = vec![
        Summand::a(0, 6 * k + 2 * l - 3),
        Summand::a(4 * k, 12 * k + 2 * l - 3),
    ];
    v.extend((0..k).map(|m| Summand::aj(1, 4 * m + 2, 6 * (k + m) + 2 * l + 1)));
    v.extend((1..k).map(|m| Summand::aj(2, 4 * m, 6 * (k + m) + 2 * l - 3)));
    v.extend((0..l).map(|m| Summand::aj(1, 4 * k + 2 * m, 12 * k + 2 * l + 4 * m - 1)));
    v.extend((1..l).map(|m| Summand::aj(1, 4 * k + 2 * m, 12 * k + 2 * l + 4 * m - 3)));
    v
}

/// The decomposition predicted for the closure of a positive torus-type word.
///
/// Covered: `(ab)^{3k}` (k >= 0), `(ab)^{3k+1}`, `(ab)^{3k+1}a`, `(ab)^{3k+2}`
/// (k >= 0) and `(ab)^{3k}b^l` (k, l >= 1).
pub fn predicted_summands(spec: &MurasugiSpec) -> Result<SummandList, AnalysisError> {
    use MurasugiClass::*;
    let k = spec.k;
    if k < 0 {
        return Err(AnalysisError::Uncovered(spec.to_string()));
    }
    let v = match spec.class {
        Omega0 => torus_3k(k),
        Omega1 => {
            let mut v = vec![Summand::a(0, 6 * k)];
            v.extend((0..k).map(|m| Summand::aj(1, 4 * m + 2, 6 * (k + m) + 4)));
            v.extend((1..=k).map(|m| Summand::aj(2, 4 * m, 6 * (k + m))));
            v
        }
        Omega3 => {
            let mut v = vec![Summand::a(0, 6 * k + 1), Summand::a(4 * k + 2, 12 * k + 5)];
            v.extend((0..k).map(|m| Summand::aj(1, 4 * m + 2, 6 * (k + m) + 5)));
            v.extend((1..=k).map(|m| Summand::aj(2, 4 * m, 6 * (k + m) + 1)));
            v
        }
        Omega2 => {
            let mut v = vec![Summand::a(0, 6 * k + 2)];
            v.extend((0..=k).map(|m| Summand::aj(1, 4 * m + 2, 6 * (k + m + 1))));
            v.extend((1..=k).map(|m| Summand::aj(2, 4 * m, 6 * (k + m) + 2)));
            v
        }
        Omega5 => {
            if k < 1 || spec.l < 1 {
                return Err(AnalysisError::BadSpec(format!("{spec}: needs k, l >= 1")));
            }
            let e = spec.l as i64;
            if e % 2 == 1 {
                omega5_odd(k, (e + 1) / 2)
            } else {
                // w b with w = (ab)^{3k} b^{2l-1}: q C(L_w) plus two copies of A
                // where the complex ends, in homological degree 4k + 2l
                let l = e / 2;
                let mut v: Vec<Summand> = omega5_odd(k, l)
                    .into_iter()
                    .map(|s| Summand { q: s.q + 1, ..s })
                    .collect();
                let i = 4 * k + 2 * l;
                v.push(Summand::a(i, 12 * k + 6 * l));
                v.push(Summand::a(i, 12 * k + 6 * l - 2));
                v
            }
        }
        Omega4 | Omega6 => return Err(AnalysisError::Uncovered(spec.to_string())),
    };
    Ok(SummandList::new(v))
}

/// Homology of a complex in every specialization compared by `verify_summands`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specializations {
    pub unreduced: BigradedGroups,
    pub reduced: BigradedGroups,
    /// BLT spectral sequence pages `E_1, ..., E_∞`
    pub blt_pages: Vec<BigradedGroups>,
}

impl Specializations {
    pub fn of(c: &AComplex<i64>) -> Self {
        Specializations {
            unreduced: homology(&specialize_unreduced(c)),
            reduced: homology(&specialize_reduced(c)),
            blt_pages: {
                let f = specialize_blt(c);
                (1..=f.span() + 1).map(|r| f.page(r)).collect()
            },
        }
    }
}

/// Compare the homology of `w`'s closure with that of the predicted
/// decomposition: unreduced and reduced over `Z`, then unreduced over `F_2`
/// and `Q` computed directly from the complexes.
pub fn verify_summands(w: &BraidWord, predicted: &SummandList, claim: &str) -> Report {
    let actual_c = full_pipeline::<i64>(w);
    let pred_c = predicted.complex();
    compare_complexes(&w.to_string(), claim, &actual_c, &pred_c)
}

pub(crate) fn compare_complexes(
    subject: &str,
    claim: &str,
    actual: &AComplex<i64>,
    predicted: &AComplex<i64>,
) -> Report {
    let a = Specializations::of(actual);
    let p = Specializations::of(predicted);
    let mut checks = vec![
        ("unreduced Z".to_string(), &a.unreduced, &p.unreduced),
        ("reduced Z".to_string(), &a.reduced, &p.reduced),
    ];
    let empty = BigradedGroups::new();
    let pages = a.blt_pages.len().max(p.blt_pages.len());
    for r in 0..pages {
        let x = a.blt_pages.get(r).or(a.blt_pages.last()).unwrap_or(&empty);
        let y = p.blt_pages.get(r).or(p.blt_pages.last()).unwrap_or(&empty);
        checks.push((format!("BLT E_{}", r + 1), x, y));
    }
    for (what, x, y) in checks {
        if let Some((i, j)) = x.first_difference(y) {
            return Report::fail(
                subject,
                claim,
                Mismatch {
                    theory: what,
                    i,
                    j,
                    expected: y.get(i, j).to_string(),
                    found: x.get(i, j).to_string(),
                },
            );
        }
    }
    for p_char in [2u32, 0] {
        let x = field_dims_char(&specialize_unreduced(actual), p_char).expect("supported field");
        let y = field_dims_char(&specialize_unreduced(predicted), p_char).expect("supported field");
        let keys: std::collections::BTreeSet<_> = x.keys().chain(y.keys()).copied().collect();
        if let Some((i, j)) = keys.into_iter().find(|k| x.get(k) != y.get(k)) {
            let name = if p_char == 0 {
                "unreduced Q"
            } else {
                "unreduced F2"
            };
            return Report::fail(
                subject,
                claim,
                Mismatch {
                    theory: name.to_string(),
                    i,
                    j,
                    expected: y.get(&(i, j)).copied().unwrap_or(0).to_string(),
                    found: x.get(&(i, j)).copied().unwrap_or(0).to_string(),
                },
            );
        }
    }
    Report::pass(subject, claim)
}

/// `verify_summands` on the word of a normal-form spec.
pub fn verify_spec(spec: &MurasugiSpec) -> Result<Report, AnalysisError> {
    let w = murasugi_word(spec).map_err(|e| AnalysisError::BadSpec(e.to_string()))?;
    let p = predicted_summands(spec)?;
    let mut r = verify_summands(&w, &p, &claim_id(spec));
    r.spec = spec.to_string();
    Ok(r)
}

fn claim_id(spec: &MurasugiSpec) -> String {
    match spec.class {
        MurasugiClass::Omega5 => "omega5-decomposition".to_string(),
        c => format!("torus-decomposition-{c}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_lists() {
        let t33 = predicted_summands(&MurasugiSpec::new(MurasugiClass::Omega0, 1)).unwrap();
        let want = SummandList::new(vec![
            Summand::a(0, 4),
            Summand::a(4, 12),
            Summand::a(4, 12),
            Summand::a(4, 10),
            Summand::aj(1, 2, 8),
        ]);
        assert_eq!(t33, want);
        let t34 = predicted_summands(&MurasugiSpec::new(MurasugiClass::Omega1, 1)).unwrap();
        assert_eq!(
            t34,
            SummandList::new(vec![
                Summand::a(0, 6),
                Summand::aj(1, 2, 10),
                Summand::aj(2, 4, 12)
            ])
        );
        assert!(predicted_summands(&MurasugiSpec::with_l(MurasugiClass::Omega4, 1, 1)).is_err());
        let o5 = predicted_summands(&MurasugiSpec::with_l(MurasugiClass::Omega5, 1, 1)).unwrap();
        let want = SummandList::new(vec![
            Summand::a(0, 5),
            Summand::a(4, 11),
            Summand::aj(1, 2, 9),
            Summand::aj(1, 4, 13),
        ]);
        assert_eq!(o5, want);
    }

    #[test]
    fn trefoil_passes_and_perturbation_fails() {
        let spec = MurasugiSpec::new(MurasugiClass::Omega2, 0);
        let r = verify_spec(&spec).unwrap();
        assert!(r.pass, "{r:?}");
        let w = murasugi_word(&spec).unwrap();
        let bad = predicted_summands(&spec).unwrap().shifted(0, 2);
        let r = verify_summands(&w, &bad, "perturbed");
        assert!(!r.pass);
        assert!(r.first_mismatch.is_some());
    }
}
