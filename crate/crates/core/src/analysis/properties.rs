//! Invariance and consistency properties of the pipeline, one word at a time.

use super::report::{Mismatch, Report};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::algebra::{
    euler_characteristic, field_dims_char, homology, smith_normal_form, specialize_reduced,
    specialize_unreduced, Group, Matrix,
};
use crate::braid::{closure_meta, BraidWord};
use crate::closure::{close_right_to_a, full_pipeline};
use crate::complex::close_left;
use crate::complex::tangle::scan_word_checked;
use crate::oracle::kauffman_bracket;

fn name(w: &BraidWord) -> String {
    if w.is_empty() {
        "(empty)".into()
    } else {
        w.to_string()
    }
}

/// `d∘d = 0` and homogeneity after every stack, deloop and elimination, and
/// for both closures.
pub fn d_squared_everywhere(w: &BraidWord) -> Report {
    let claim = "d-squared-zero";
    let run = std::panic::catch_unwind(|| {
        let t = scan_word_checked::<i64>(w, true);
        let l = close_left(&t);
        l.check_d2().map_err(|e| format!("left closure: {e}"))?;
        let a = close_right_to_a(&l);
        a.check_d2().map_err(|e| format!("right closure: {e}"))?;
        specialize_unreduced(&a)
            .check_d2()
            .map_err(|e| format!("unreduced: {e}"))?;
        specialize_reduced(&a)
            .check_d2()
            .map_err(|e| format!("reduced: {e}"))
    });
    match run {
        Ok(Ok(())) => Report::pass(&name(w), claim),
        Ok(Err(e)) => Report::fail_with(&name(w), claim, e),
        Err(_) => Report::fail_with(&name(w), claim, "a simplification step broke d∘d = 0"),
    }
}

/// Over `F_2`: `dim Kh^{i,j} = dim rKh^{i,j-1} + dim rKh^{i,j+1}`.
pub fn f2_splitting(w: &BraidWord) -> Report {
    let claim = "f2-reduced-splitting";
    let a = full_pipeline::<i64>(w);
    let kh = field_dims_char(&specialize_unreduced(&a), 2).expect("F2");
    let rkh = field_dims_char(&specialize_reduced(&a), 2).expect("F2");
    let r = |i: i64, j: i64| rkh.get(&(i, j)).copied().unwrap_or(0);
    let mut cells: Vec<(i64, i64)> = kh.keys().copied().collect();
    cells.extend(rkh.keys().flat_map(|&(i, j)| [(i, j - 1), (i, j + 1)]));
    cells.sort_unstable();
    cells.dedup();
    for (i, j) in cells {
        let (lhs, rhs) = (
            kh.get(&(i, j)).copied().unwrap_or(0),
            r(i, j - 1) + r(i, j + 1),
        );
        if lhs != rhs {
            let m = Mismatch {
                theory: "F2".into(),
                i,
                j,
                expected: rhs.to_string(),
                found: lhs.to_string(),
            };
            return Report::fail(&name(w), claim, m);
        }
    }
    Report::pass(&name(w), claim)
}

/// The graded Euler characteristic of the pipeline complex equals the
/// Kauffman bracket state sum.
pub fn euler_matches_kauffman(w: &BraidWord) -> Report {
    let claim = "euler-equals-kauffman";
    let chi = euler_characteristic(&specialize_unreduced(&full_pipeline::<i64>(w)));
    let kb = kauffman_bracket(w);
    if chi == kb {
        Report::pass(&name(w), claim)
    } else {
        Report::fail_with(&name(w), claim, format!("euler {chi}, bracket {kb}"))
    }
}

/// Every cyclic rotation has the same unreduced homology, and for knots the
/// same reduced homology. For links the reduced theory depends on which
/// component carries the basepoint, and a rotation can move it.
pub fn conjugation_invariance(w: &BraidWord) -> Report {
    let claim = "conjugation-invariance";
    let knot = closure_meta(w).components == 1;
    let groups = |v: &BraidWord| {
        let a = full_pipeline::<i64>(v);
        let r = knot.then(|| homology(&specialize_reduced(&a)));
        (homology(&specialize_unreduced(&a)), r)
    };
    let base = groups(w);
    for r in 1..w.len() {
        let v = w.cyclic_rotate(r);
        if groups(&v) != base {
            return Report::fail_with(&name(w), claim, format!("rotation {v} differs"));
        }
    }
    Report::pass(&name(w), claim)
}

/// For the mirror image: free rank at `(i, j)` equals that of `(-i, -j)`, and
/// torsion at `(i, j)` equals that of `(1 - i, -j)`.
pub fn mirror_duality(w: &BraidWord) -> Report {
    let claim = "mirror-duality";
    let kh = homology(&specialize_unreduced(&full_pipeline::<i64>(w)));
    let mk = homology(&specialize_unreduced(&full_pipeline::<i64>(&w.mirror())));
    let mut cells: Vec<(i64, i64)> = mk.iter().map(|(k, _)| *k).collect();
    cells.extend(kh.iter().flat_map(|(&(i, j), _)| [(-i, -j), (1 - i, -j)]));
    cells.sort_unstable();
    cells.dedup();
    for (i, j) in cells {
        let got = mk.get(i, j);
        let want = Group::from_cyclic(kh.get(-i, -j).free, &kh.get(1 - i, -j).torsion);
        if got != want {
            let m = Mismatch {
                theory: "mirror".into(),
                i,
                j,
                expected: want.to_string(),
                found: got.to_string(),
            };
            return Report::fail(&name(w), claim, m);
        }
    }
    Report::pass(&name(w), claim)
}

/// `s * m * t = d` with `s`, `t` of determinant `±1`, `d` diagonal, and the
/// nonzero diagonal positive with each entry dividing the next.
pub fn smith_unimodular(m: &Matrix<BigInt>) -> Report {
    let claim = "smith-unimodular";
    let spec = format!("{}x{}", m.rows(), m.cols());
    let sm = smith_normal_form(m);
    let one = BigInt::from(1);
    if sm.s.mul(m).mul(&sm.t) != sm.d {
        return Report::fail_with(&spec, claim, "s m t != d");
    }
    if sm.s.determinant().abs() != one || sm.t.determinant().abs() != one {
        return Report::fail_with(&spec, claim, "transform not unimodular");
    }
    let off = (0..m.rows()).any(|i| (0..m.cols()).any(|j| i != j && !sm.d.get(i, j).is_zero()));
    if off {
        return Report::fail_with(&spec, claim, "d not diagonal");
    }
    let diag = sm.diagonal();
    let nz: Vec<&BigInt> = diag.iter().take_while(|x| !x.is_zero()).collect();
    if diag[nz.len()..].iter().any(|x| !x.is_zero()) || nz.iter().any(|x| !x.is_positive()) {
        return Report::fail_with(&spec, claim, "diagonal out of order");
    }
    if nz.windows(2).any(|w| !w[1].is_multiple_of(w[0])) {
        return Report::fail_with(&spec, claim, "divisibility chain broken");
    }
    Report::pass(&spec, claim)
}

/// All property checks for one word.
pub fn property_reports(w: &BraidWord) -> Vec<Report> {
    vec![
        d_squared_everywhere(w),
        f2_splitting(w),
        euler_matches_kauffman(w),
        conjugation_invariance(w),
        mirror_duality(w),
    ]
}
