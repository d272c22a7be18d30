use kh3::algebra::Matrix;
use kh3::analysis::{
    conjugation_invariance, d_squared_everywhere, euler_matches_kauffman, f2_splitting,
    mirror_duality, smith_unimodular, Report,
};
use kh3::{parse_word, BraidWord};
use num_bigint::BigInt;
use proptest::prelude::*;

fn word(max: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec(prop::sample::select(vec!['a', 'A', 'b', 'B']), 0..=max)
        .prop_map(|cs| parse_word(&cs.into_iter().collect::<String>()).expect("letters are valid"))
}

fn holds(r: Report) -> Result<(), TestCaseError> {
    prop_assert!(r.pass, "{}", r.to_json());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_squared_zero(w in word(9)) {
        holds(d_squared_everywhere(&w))?;
    }

    #[test]
    fn f2_reduced_splitting(w in word(9)) {
        holds(f2_splitting(&w))?;
    }

    #[test]
    fn euler_is_kauffman(w in word(14)) {
        holds(euler_matches_kauffman(&w))?;
    }

    #[test]
    fn rotations_agree(w in word(8)) {
        holds(conjugation_invariance(&w))?;
    }

    #[test]
    fn mirror_relations(w in word(9)) {
        holds(mirror_duality(&w))?;
    }

    #[test]
    fn smith_form(rows in 1usize..7, cols in 1usize..7, seed in prop::collection::vec(-12i64..13, 36)) {
        let m = Matrix::<BigInt>::from_rows(
            (0..rows).map(|i| (0..cols).map(|j| BigInt::from(seed[i * 6 + j])).collect()).collect(),
        );
        holds(smith_unimodular(&m))?;
    }
}

#[test]
fn figure_eight_and_hopf() {
    for text in ["aBaB", "aa", "AAA", "abAB", ""] {
        let w = parse_word(text).unwrap();
        for r in [
            d_squared_everywhere(&w),
            f2_splitting(&w),
            euler_matches_kauffman(&w),
            conjugation_invariance(&w),
            mirror_duality(&w),
        ] {
            assert!(r.pass, "{}", r.to_json());
        }
    }
}
