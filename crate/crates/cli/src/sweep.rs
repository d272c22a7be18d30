use std::fs;
use std::path::Path;

use kh3::algebra::{field_dims_char, homology, specialize_reduced, specialize_unreduced};
use kh3::analysis::knight_move_check;
use kh3::closure::full_pipeline;
use kh3::{closure_meta, parse_word};
use rayon::prelude::*;
use serde::Serialize;

use crate::SweepArgs;

#[derive(Serialize)]
struct WordResult {
    word: String,
    components: usize,
    unreduced: serde_json::Value,
    reduced: serde_json::Value,
    knight_move: bool,
}

#[derive(Serialize)]
struct Row {
    line: usize,
    word: String,
    components: Option<usize>,
    total_rank: Option<usize>,
    torsion_orders: String,
    knight_move: Option<bool>,
    error: String,
}

fn process(line: usize, text: &str, dir: &Path) -> Row {
    let mut row = Row {
        line,
        word: text.to_string(),
        components: None,
        total_rank: None,
        torsion_orders: String::new(),
        knight_move: None,
        error: String::new(),
    };
    let w = match parse_word(text) {
        Ok(w) => w,
        Err(e) => {
            row.error = e.to_string();
            return row;
        }
    };
    let a = full_pipeline::<i64>(&w);
    let ic = specialize_unreduced(&a);
    let kh = homology(&ic);
    let rkh = homology(&specialize_reduced(&a));
    let comps = closure_meta(&w).components;
    let knight = field_dims_char(&ic, 0)
        .map(|d| knight_move_check(&d, comps).is_some())
        .unwrap_or(false);
    let mut orders = kh.torsion_orders();
    orders.dedup();
    row.components = Some(comps);
    row.total_rank = Some(kh.total_rank());
    row.torsion_orders = orders
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(";");
    row.knight_move = Some(knight);
    let res = WordResult {
        word: w.to_string(),
        components: comps,
        unreduced: serde_json::from_str(&kh.to_json()).expect("valid json"),
        reduced: serde_json::from_str(&rkh.to_json()).expect("valid json"),
        knight_move: knight,
    };
    let path = dir.join(format!("line{line:04}.json"));
    if let Err(e) = fs::write(
        &path,
        serde_json::to_string_pretty(&res).expect("serializable"),
    ) {
        row.error = format!("{}: {e}", path.display());
    }
    row
}

pub fn run(a: &SweepArgs) -> u8 {
    let text = match fs::read_to_string(&a.word_file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", a.word_file.display());
            return 1;
        }
    };
    if let Err(e) = fs::create_dir_all(&a.output_dir) {
        eprintln!("error: {}: {e}", a.output_dir.display());
        return 1;
    }
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let rows: Vec<Row> = lines
        .par_iter()
        .map(|&(n, l)| process(n, l, &a.output_dir))
        .collect();
    for r in rows.iter().filter(|r| !r.error.is_empty()) {
        eprintln!("line {}: {}", r.line, r.error);
    }
    let path = a.output_dir.join("summary.csv");
    let written = csv::WriterBuilder::new()
        .has_headers(false)
        .from_path(&path)
        .and_then(|mut w| {
            w.write_record([
                "line",
                "word",
                "components",
                "total_rank",
                "torsion_orders",
                "knight_move",
                "error",
            ])?;
            for r in &rows {
                w.serialize(r)?;
            }
            w.flush()?;
            Ok(())
        });
    if let Err(e) = written {
        eprintln!("error: {}: {e}", path.display());
        return 1;
    }
    0
}
