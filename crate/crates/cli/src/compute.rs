use std::collections::BTreeMap;

use kh3::algebra::{
    dims_table, field_dims_char, homology, specialize_reduced, specialize_unreduced,
};
use kh3::closure::full_pipeline;
use kh3::oracle::cube_khovanov;
use kh3::{murasugi_word, parse_word, BraidWord, MurasugiClass, MurasugiSpec};
use serde::Serialize;

use crate::{ComputeArgs, Output, Ring, EXIT_ORACLE, EXIT_PARSE};

#[derive(Serialize)]
struct DimCell {
    i: i64,
    j: i64,
    dim: usize,
}

pub fn dims_json(dims: &BTreeMap<(i64, i64), usize>) -> String {
    let cells: Vec<DimCell> = dims
        .iter()
        .map(|(&(i, j), &dim)| DimCell { i, j, dim })
        .collect();
    serde_json::to_string(&cells).expect("serializable")
}

fn input_word(a: &ComputeArgs) -> Result<BraidWord, String> {
    if let Some(w) = &a.word {
        return parse_word(w).map_err(|e| e.to_string());
    }
    let class = a.class.expect("clap requires word or class");
    let spec = match class {
        MurasugiClass::Omega4 | MurasugiClass::Omega5 => MurasugiSpec::with_l(class, a.k, a.l),
        MurasugiClass::Omega6 => MurasugiSpec::omega6(a.k, a.alt.clone()),
        _ => MurasugiSpec::new(class, a.k),
    };
    murasugi_word(&spec).map_err(|e| e.to_string())
}

pub fn run(a: &ComputeArgs) -> u8 {
    let w = match input_word(a) {
        Ok(w) => w,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_PARSE;
        }
    };
    let complex = full_pipeline::<i64>(&w);
    let ic = if a.reduced {
        specialize_reduced(&complex)
    } else {
        specialize_unreduced(&complex)
    };
    let groups = homology(&ic);
    match a.ring {
        Ring::Z => match a.output {
            Output::Table => print!("{}", groups.table()),
            Output::Json => println!("{}", groups.to_json()),
        },
        Ring::Q | Ring::F2 => {
            let (p, sym) = if a.ring == Ring::Q {
                (0, "Q")
            } else {
                (2, "F2")
            };
            let dims = field_dims_char(&ic, p).expect("supported characteristic");
            match a.output {
                Output::Table => print!("{}", dims_table(&dims, sym)),
                Output::Json => println!("{}", dims_json(&dims)),
            }
        }
    }
    if a.oracle {
        let cube = match cube_khovanov(&w, a.reduced) {
            Ok(g) => g,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_PARSE;
            }
        };
        let verdict = if cube == groups { "MATCH" } else { "MISMATCH" };
        if a.output == Output::Json {
            eprintln!("oracle: {verdict}");
        } else {
            println!("oracle: {verdict}");
        }
        if cube != groups {
            return EXIT_ORACLE;
        }
    }
    0
}
