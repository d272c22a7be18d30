//! Checks of structural claims on computed homology: torsion orders, the
//! knight move pattern, the `(ab)^{3k}a^{-l}` splitting and the
//! `(ab)^{3k}w` reduced homology identity for proper alternating `w`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::report::{Mismatch, Report};
use super::summands::{AnalysisError, Summand, SummandList};
use crate::algebra::{
    field_dims_char, homology, specialize_blt, specialize_reduced, specialize_unreduced,
    BigradedGroups, Group,
};
use crate::braid::{ab_power, closure_meta, murasugi_word, BraidWord, MurasugiClass, MurasugiSpec};
use crate::closure::full_pipeline;

/// Every invariant factor equals 2.
pub fn torsion_only_two(g: &BigradedGroups) -> bool {
    g.iter().all(|(_, grp)| grp.torsion.iter().all(|&d| d == 2))
}

/// A decomposition of rational ranks into pawn and knight pieces.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnightWitness {
    /// lower corner `(i, j)` of each pawn `q^{j}Q ⊕ q^{j+2}Q` in degree `i`
    pub pawns: Vec<(i64, i64)>,
    /// lower corner `(i, j)` of each knight `u^i q^j Q ⊕ u^{i+1} q^{j+4} Q`
    pub knights: Vec<(i64, i64)>,
}

/// Search for an exact cover of the rank table by `2^{c-1}` pawn pieces and
/// any number of knight pieces. For knots the pawn must sit in degree 0.
pub fn knight_move_check(
    dims: &BTreeMap<(i64, i64), usize>,
    components: usize,
) -> Option<KnightWitness> {
    let pawns = 1usize << components.saturating_sub(1);
    let mut left: BTreeMap<(i64, i64), usize> = dims
        .iter()
        .filter(|(_, &v)| v > 0)
        .map(|(k, v)| (*k, *v))
        .collect();
    let mut w = KnightWitness::default();
    if cover(&mut left, pawns, components <= 1, &mut w) {
        Some(w)
    } else {
        None
    }
}

fn take(left: &mut BTreeMap<(i64, i64), usize>, cell: (i64, i64)) -> bool {
    match left.get_mut(&cell) {
        Some(v) if *v > 0 => {
            *v -= 1;
            if *v == 0 {
                left.remove(&cell);
            }
            true
        }
        _ => false,
    }
}

fn give(left: &mut BTreeMap<(i64, i64), usize>, cell: (i64, i64)) {
    *left.entry(cell).or_default() += 1;
}

fn cover(
    left: &mut BTreeMap<(i64, i64), usize>,
    pawns: usize,
    knot: bool,
    w: &mut KnightWitness,
) -> bool {
    let Some((&first, _)) = left.iter().next() else {
        return pawns == 0;
    };
    // the smallest remaining cell can only be the lower corner of a piece
    let (i, j) = first;
    take(left, first);
    if pawns > 0 && (!knot || i == 0) && take(left, (i, j + 2)) {
        w.pawns.push(first);
        if cover(left, pawns - 1, knot, w) {
            give(left, first);
            return true;
        }
        w.pawns.pop();
        give(left, (i, j + 2));
    }
    if take(left, (i + 1, j + 4)) {
        w.knights.push(first);
        if cover(left, pawns, knot, w) {
            give(left, first);
            return true;
        }
        w.knights.pop();
        give(left, (i + 1, j + 4));
    }
    give(left, first);
    false
}

/// Unreduced `Z` homology of each summand type, as used to read off a
/// decomposition: `A` gives `Z` at `q ± 1`; `A(1)` gives `Z` at `(i, q-1)`,
/// `(i+1, q+3)` and `Z/2` at `(i+1, q+1)`; `A(2)` gives `Z` at `(i, q ± 1)`,
/// `(i+1, q+3)`, `(i+1, q+5)`.
fn unreduced_pattern(s: &Summand) -> Vec<((i64, i64), Group)> {
    let (i, q) = (s.i, s.q);
    match s.kind {
        super::summands::SummandKind::A => {
            vec![((i, q - 1), Group::free(1)), ((i, q + 1), Group::free(1))]
        }
        super::summands::SummandKind::AJ(1) => vec![
            ((i, q - 1), Group::free(1)),
            ((i + 1, q + 1), Group::from_cyclic(0, &[2])),
            ((i + 1, q + 3), Group::free(1)),
        ],
        super::summands::SummandKind::AJ(_) => vec![
            ((i, q - 1), Group::free(1)),
            ((i, q + 1), Group::free(1)),
            ((i + 1, q + 3), Group::free(1)),
            ((i + 1, q + 5), Group::free(1)),
        ],
    }
}

/// Find summands `A`, `A(1)`, `A(2)` whose unreduced and reduced integral
/// homology add up to the given groups, with exactly `a_copies` copies of
/// `A`. `A(1)` pieces are forced by the `Z/2` summands; the rest is an
/// exact-cover search. Homology alone cannot tell `A(2)` from `A ⊕ u q^4 A`,
/// hence the fixed count.
pub fn decompose_homology(
    unreduced: &BigradedGroups,
    reduced: &BigradedGroups,
    a_copies: usize,
) -> Option<SummandList> {
    let mut free: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    let mut found = Vec::new();
    for (&(i, j), g) in unreduced.iter() {
        if g.torsion.iter().any(|&d| d != 2) {
            return None;
        }
        if g.free > 0 {
            free.insert((i, j), g.free);
        }
    }
    for (&(i, j), g) in unreduced.iter() {
        for _ in 0..g.torsion.len() {
            let s = Summand::aj(1, i - 1, j - 1);
            for (cell, grp) in unreduced_pattern(&s) {
                if grp.free == 1 && !take(&mut free, cell) {
                    return None;
                }
            }
            found.push(s);
        }
    }
    fn search(
        free: &mut BTreeMap<(i64, i64), usize>,
        a_left: usize,
        found: &mut Vec<Summand>,
    ) -> bool {
        let Some((&(i, j), _)) = free.iter().next() else {
            return a_left == 0;
        };
        for s in [Summand::aj(2, i, j + 1), Summand::a(i, j + 1)] {
            let is_a = s.kind == super::summands::SummandKind::A;
            if is_a && a_left == 0 {
                continue;
            }
            let cells: Vec<(i64, i64)> =
                unreduced_pattern(&s).into_iter().map(|(c, _)| c).collect();
            let mut taken = Vec::new();
            let ok = cells.iter().all(|&c| {
                let t = take(free, c);
                if t {
                    taken.push(c);
                }
                t
            });
            if ok {
                found.push(s);
                if search(free, a_left - usize::from(is_a), found) {
                    return true;
                }
                found.pop();
            }
            for c in taken {
                give(free, c);
            }
        }
        false
    }
    let mut rest = Vec::new();
    if !search(&mut free, a_copies, &mut rest) {
        return None;
    }
    found.extend(rest);
    let list = SummandList::new(found);
    let predicted_reduced = homology(&specialize_reduced(&list.complex()));
    (predicted_reduced == *reduced).then_some(list)
}

/// Outcome of the `(ab)^{3k}a^{-l}` check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Omega4Outcome {
    pub report: Report,
    pub decomposition: Option<SummandList>,
}

/// `(ab)^{3k}a^{-l}`: torsion of order 2 only, BLT homology of rank 2 for odd
/// `l` and 4 for even `l`, and integral homology that splits into the
/// patterns of two (or four) copies of `A` plus `A(1)`s and `A(2)`s.
pub fn omega4_check(k: i64, l: u32) -> Result<Omega4Outcome, AnalysisError> {
    let spec = MurasugiSpec::with_l(MurasugiClass::Omega4, k, l);
    if k < 1 || l < 1 {
        return Err(AnalysisError::BadSpec(format!("{spec}: needs k, l >= 1")));
    }
    let w = murasugi_word(&spec).map_err(|e| AnalysisError::BadSpec(e.to_string()))?;
    let a = full_pipeline::<i64>(&w);
    let kh = homology(&specialize_unreduced(&a));
    let rkh = homology(&specialize_reduced(&a));
    let name = spec.to_string();
    let claim = "omega4-splitting";
    let copies = if l % 2 == 1 { 2 } else { 4 };
    if !torsion_only_two(&kh) {
        let bad = kh
            .iter()
            .find(|(_, g)| g.torsion.iter().any(|&d| d != 2))
            .map(|(k, _)| *k)
            .unwrap();
        let m = Mismatch {
            theory: "unreduced Z torsion".into(),
            i: bad.0,
            j: bad.1,
            expected: "only Z/2".into(),
            found: kh.get(bad.0, bad.1).to_string(),
        };
        return Ok(Omega4Outcome {
            report: Report::fail(&name, claim, m),
            decomposition: None,
        });
    }
    let blt_rank: usize = specialize_blt(&a)
        .total_homology()
        .values()
        .map(|g| g.free)
        .sum();
    if blt_rank != copies {
        let r = Report::fail_with(
            &name,
            claim,
            format!("BLT homology rank {blt_rank}, expected {copies}"),
        );
        return Ok(Omega4Outcome {
            report: r,
            decomposition: None,
        });
    }
    let dec = decompose_homology(&kh, &rkh, copies);
    let report = match &dec {
        None => Report::fail_with(
            &name,
            claim,
            "no A/A(1)/A(2) splitting of the integral homology",
        ),
        Some(d) if d.count(super::summands::SummandKind::A) != copies => Report::fail_with(
            &name,
            claim,
            format!(
                "{} copies of A in the splitting, expected {copies}",
                d.count(super::summands::SummandKind::A)
            ),
        ),
        Some(d) => {
            let q = field_dims_char(&specialize_unreduced(&a), 0).expect("Q");
            let want: usize = d
                .items()
                .iter()
                .map(|s| match s.kind {
                    super::summands::SummandKind::A => 2,
                    super::summands::SummandKind::AJ(1) => 2,
                    super::summands::SummandKind::AJ(_) => 4,
                })
                .sum();
            let got: usize = q.values().sum();
            if got == want {
                Report::pass(&name, claim).with_detail(d.to_string())
            } else {
                Report::fail_with(
                    &name,
                    claim,
                    format!("rational rank {got}, splitting accounts for {want}"),
                )
            }
        }
    };
    Ok(Omega4Outcome {
        report,
        decomposition: dec,
    })
}

/// `rKh(T(3,3k))` and `rKh(L_w)` combined as the identity for `(ab)^{3k}w`
/// predicts, `t = m(w) - n(w)`.
pub fn omega6_predicted(
    torus: &BigradedGroups,
    lw: &BigradedGroups,
    k: i64,
    t: i64,
) -> BigradedGroups {
    let mut out = torus.shifted(0, t).direct_sum(&lw.shifted(4 * k, 12 * k));
    out.insert(4 * k, 12 * k - 2 + t, Group::default());
    out.insert(4 * k, 12 * k + t, lw.get(0, t));
    out.insert(
        4 * k + 1,
        12 * k + 2 + t,
        lw.get(1, 2 + t).direct_sum(&Group::free(1)),
    );
    out
}

/// The reduced homology identity for `(ab)^{3k}w` and the shape of its BLT
/// spectral sequence: `E_1`, `E_2`, `E_3` free, `E_3 = E_∞`, and `E_2 = E_∞`
/// when `k = 1`. Also checks that `rKh(L_w)` is free on the line `j = 2i + t`.
pub fn omega6_identity_check(k: i64, alt: &[u32]) -> Result<Report, AnalysisError> {
    let spec = MurasugiSpec::omega6(k, alt.to_vec());
    if k < 1 {
        return Err(AnalysisError::BadSpec(format!("{spec}: needs k >= 1")));
    }
    let w = murasugi_word(&spec).map_err(|e| AnalysisError::BadSpec(e.to_string()))?;
    let name = spec.to_string();
    let claim = "omega6-reduced-identity";
    let t = spec.alt_m() - spec.alt_n();
    let rkh = |w: &BraidWord| homology(&specialize_reduced(&full_pipeline::<i64>(w)));
    let lw = rkh(&spec.alt_word());
    for (&(i, j), g) in lw.iter() {
        if !g.torsion.is_empty() || j != 2 * i + t {
            let m = Mismatch {
                theory: "rKh(L_w)".into(),
                i,
                j,
                expected: "free, on j = 2i + t".into(),
                found: g.to_string(),
            };
            return Ok(Report::fail(&name, claim, m));
        }
    }
    let torus = rkh(&ab_power(3 * k));
    let actual = rkh(&w);
    let predicted = omega6_predicted(&torus, &lw, k, t);
    if let Some((i, j)) = actual.first_difference(&predicted) {
        let m = Mismatch {
            theory: "reduced Z".into(),
            i,
            j,
            expected: predicted.get(i, j).to_string(),
            found: actual.get(i, j).to_string(),
        };
        return Ok(Report::fail(&name, claim, m));
    }
    let f = specialize_blt(&full_pipeline::<i64>(&w));
    let einf = f.e_infinity();
    let pages: Vec<BigradedGroups> = (1..=3).map(|r| f.page(r)).collect();
    if pages[0] != actual {
        return Ok(Report::fail_with(
            &name,
            claim,
            "BLT E_1 differs from reduced homology",
        ));
    }
    for (r, p) in pages.iter().enumerate() {
        if !p.is_free() {
            return Ok(Report::fail_with(
                &name,
                claim,
                format!("BLT E_{} has torsion", r + 1),
            ));
        }
    }
    if pages[2] != einf {
        return Ok(Report::fail_with(&name, claim, "BLT E_3 differs from E_∞"));
    }
    if k == 1 && pages[1] != einf {
        return Ok(Report::fail_with(
            &name,
            claim,
            "BLT E_2 differs from E_∞ for k = 1",
        ));
    }
    let c = closure_meta(&w).components;
    if einf.total_rank() != 1 << (c - 1) {
        return Ok(Report::fail_with(
            &name,
            claim,
            format!("E_∞ rank {} for {c} components", einf.total_rank()),
        ));
    }
    Ok(Report::pass(&name, claim))
}

/// Proper alternating exponent lists `[n1, m1, ..., nj, mj]` with all
/// entries >= 1 and total at most `max_total`.
pub fn alternating_exponents(max_total: u32) -> Vec<Vec<u32>> {
    fn rec(left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if !cur.is_empty() && cur.len().is_multiple_of(2) {
            out.push(cur.clone());
        }
        for x in 1..=left {
            cur.push(x);
            rec(left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(max_total, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| {
        (a.iter().sum::<u32>(), a.len(), a).cmp(&(b.iter().sum::<u32>(), b.len(), b))
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_word;

    #[test]
    fn torsion_predicate() {
        let mut g = BigradedGroups::new();
        g.insert(0, 0, Group::from_cyclic(0, &[2, 2]));
        assert!(torsion_only_two(&g));
        g.insert(1, 0, Group::from_cyclic(0, &[4]));
        assert!(!torsion_only_two(&g));
    }

    #[test]
    fn knight_moves() {
        let tre = homology(&specialize_unreduced(&full_pipeline::<i64>(
            &parse_word("abab").unwrap(),
        )));
        let w = knight_move_check(&tre.ranks(), 1).unwrap();
        assert_eq!(w.pawns, vec![(0, 1)]);
        assert_eq!(w.knights, vec![(2, 5)]);
        let unknot: BTreeMap<_, _> = [((0, -1), 1), ((0, 1), 1)].into_iter().collect();
        assert!(knight_move_check(&unknot, 1).is_some());
        let lone: BTreeMap<_, _> = [((0, 1), 1)].into_iter().collect();
        assert!(knight_move_check(&lone, 1).is_none());
    }

    #[test]
    fn exponent_lists() {
        let v = alternating_exponents(3);
        assert_eq!(v, vec![vec![1, 1], vec![1, 2], vec![2, 1]]);
        assert_eq!(alternating_exponents(4).len(), 3 + 3 + 1);
    }

    #[test]
    fn omega6_negative_control() {
        let spec = MurasugiSpec::omega6(1, vec![1, 1]);
        let w = murasugi_word(&spec).unwrap();
        let r = omega6_identity_check(1, &[1, 1]).unwrap();
        assert!(r.pass, "{r:?}");
        let rkh = |w: &BraidWord| homology(&specialize_reduced(&full_pipeline::<i64>(w)));
        let mut pred = omega6_predicted(&rkh(&ab_power(3)), &rkh(&spec.alt_word()), 1, 0);
        assert_eq!(pred, rkh(&w));
        pred.insert(5, 14, rkh(&spec.alt_word()).get(1, 2));
        assert_ne!(pred, rkh(&w));
    }
}
