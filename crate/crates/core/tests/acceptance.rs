//! One line per acceptance criterion, then a nonzero exit if any failed.
//! Runs without the libtest harness so the lines are never captured.

use std::process::ExitCode;
use std::time::Instant;

use kh3::algebra::Matrix;
use kh3::analysis::{
    fixture_reports, knight_suite, omega4_suite, omega5_suite, omega6_suite, oracle_corpus,
    oracle_suite, property_reports, smith_unimodular, torsion_suite, torus_suite, Grid, Report,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    cases: usize,
    failed: Vec<Report>,
}

fn tally(reports: Vec<Report>) -> Outcome {
    let cases = reports.len();
    Outcome {
        cases,
        failed: reports.into_iter().filter(|r| !r.pass).collect(),
    }
}

fn oracle() -> Outcome {
    tally(oracle_suite(&oracle_corpus(8, 200, 10, 2024)))
}

fn torus() -> Outcome {
    tally(torus_suite(&Grid::default()))
}

fn omega5() -> Outcome {
    tally(omega5_suite(&Grid::default()))
}

fn omega4() -> Outcome {
    tally(omega4_suite(&Grid::default()))
}

fn omega6() -> Outcome {
    tally(omega6_suite(&Grid::default()))
}

fn torsion_and_knight() -> Outcome {
    let g = Grid::default();
    let mut r = torsion_suite(&g);
    r.extend(knight_suite(&g));
    tally(r)
}

fn fixtures() -> Outcome {
    tally(fixture_reports(6, 9))
}

fn random_matrix(rng: &mut ChaCha8Rng) -> Matrix<BigInt> {
    let (rows, cols) = (rng.gen_range(1..=7), rng.gen_range(1..=7));
    Matrix::from_rows(
        (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| BigInt::from(rng.gen_range(-12i64..=12)))
                    .collect()
            })
            .collect(),
    )
}

fn properties() -> Outcome {
    // every word up to length 6 plus 50 random words of length <= 14
    let mut words = oracle_corpus(6, 0, 0, 0);
    words.extend(oracle_corpus(0, 50, 14, 1404).into_iter().skip(1));
    let mut r: Vec<Report> = words.par_iter().flat_map(property_reports).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    r.extend((0..200).map(|_| smith_unimodular(&random_matrix(&mut rng))));
    tally(r)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "oracle equivalence, words <= 8 plus 200 random <= 10",
            oracle,
        ),
        ("torus families k <= 3, three specializations", torus),
        ("omega5 k <= 2, l <= 4", omega5),
        ("omega4 k <= 2, l <= 4, Z/2 torsion and A copies", omega4),
        (
            "omega6 k <= 2, n + m <= 5, reduced identity and BLT pages",
            omega6,
        ),
        (
            "torsion order two and knight move over the grid",
            torsion_and_knight,
        ),
        ("tangle fixtures a^n n <= 6, (ab)^m m <= 9", fixtures),
        ("property suites", properties),
    ];
    let mut all = true;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        let ok = o.failed.is_empty();
        all &= ok;
        println!(
            "criterion {}: {} [{}] {} cases, {} failed, {:.1}s",
            n + 1,
            if ok { "PASS" } else { "FAIL" },
            name,
            o.cases,
            o.failed.len(),
            t.elapsed().as_secs_f64()
        );
        for r in o.failed.iter().take(5) {
            println!("    {}", r.to_json());
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
