use clap::ValueEnum;
use kh3::analysis::{
    fixture_reports, knight_suite, omega4_suite, omega5_suite, omega6_suite, oracle_corpus,
    oracle_suite, torsion_suite, torus_suite, Grid, Report,
};

use crate::{Suite, VerifyArgs, EXIT_CLAIM};

pub fn grid(a: &VerifyArgs) -> Grid {
    let mut g = Grid::default();
    if let Some(k) = a.kmax {
        g.torus_kmax = k;
        g.kl_kmax = k;
        g.alt_kmax = k;
    }
    if let Some(l) = a.lmax {
        g.lmax = l;
    }
    if let Some(t) = a.alt_total {
        g.alt_total = t;
    }
    g
}

pub fn run(a: &VerifyArgs) -> u8 {
    let g = grid(a);
    let reports: Vec<Report> = match a.suite {
        Suite::Torus => torus_suite(&g),
        Suite::Omega4 => omega4_suite(&g),
        Suite::Omega5 => omega5_suite(&g),
        Suite::Omega6 => omega6_suite(&g),
        Suite::Torsion => torsion_suite(&g),
        Suite::Knight => knight_suite(&g),
        Suite::Oracle => oracle_suite(&oracle_corpus(a.maxlen, a.random, a.randlen, a.seed)),
        Suite::Fixtures => fixture_reports(6, 9),
    };
    for r in &reports {
        println!("{}", r.to_json());
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    let name = a.suite.to_possible_value().expect("named suite");
    eprintln!(
        "{}: {} cases, {} failed",
        name.get_name(),
        reports.len(),
        failed
    );
    if failed > 0 {
        EXIT_CLAIM
    } else {
        0
    }
}
