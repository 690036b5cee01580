//! Answering many query lines at once, optionally on a worker pool.

use std::io::{self, BufRead};

use qpi_core::Index;
use rayon::prelude::*;

use crate::protocol::answer_line;

/// Answers `lines` in order. `threads == 0` lets rayon pick; `1` runs on the
/// calling thread. Output line `t` always answers input line `t`.
pub fn answer_all(index: &Index, lines: &[String], as_json: bool, threads: usize) -> Vec<String> {
    if threads == 1 {
        return lines.iter().map(|l| answer_line(index, l, as_json)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("failed to start worker pool");
    pool.install(|| lines.par_iter().map(|l| answer_line(index, l, as_json)).collect())
}

/// Query lines from a reader, skipping blank lines and `#` comments.
pub fn read_queries(input: impl BufRead) -> io::Result<Vec<String>> {
    let mut out = Vec::new();
    for line in input.lines() {
        let line = line?;
        let t = line.trim();
        if !t.is_empty() && !t.starts_with('#') {
            out.push(t.to_string());
        }
    }
    Ok(out)
}
