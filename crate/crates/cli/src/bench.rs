//! Latency table for `qpi bench`.

use std::time::{Duration, Instant};

use qpi_core::{FactorRef, Index};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::selftest::random_text;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

impl Profile {
    pub fn sizes(self) -> &'static [usize] {
        match self {
            Profile::Quick => &[1 << 10, 1 << 12, 1 << 14],
            Profile::Full => &[1 << 10, 1 << 12, 1 << 14, 1 << 16, 1 << 18],
        }
    }
}

#[derive(Debug, Clone)]
pub struct Row {
    pub n: usize,
    pub build: Duration,
    pub min_cover: Duration,
    pub all_covers: Duration,
    pub is_cover: Duration,
    pub covered_pref: Duration,
}

pub fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort_unstable();
    xs.get(xs.len() / 2).copied().unwrap_or_default()
}

/// Median latency of `op` over `queries` random factors of `index`.
pub fn median_latency(
    index: &Index,
    queries: usize,
    rng: &mut StdRng,
    mut op: impl FnMut(&Index, FactorRef) -> usize,
) -> Duration {
    let n = index.n();
    let mut times = Vec::with_capacity(queries);
    let mut sink = 0usize;
    for _ in 0..queries {
        let i = rng.gen_range(1..=n);
        let j = rng.gen_range(i..=n);
        let t = Instant::now();
        sink = sink.wrapping_add(op(index, FactorRef::new(i, j)));
        times.push(t.elapsed());
    }
    std::hint::black_box(sink);
    median(times)
}

pub fn run(profile: Profile, queries: usize, seed: u64) -> Vec<Row> {
    let mut rng = StdRng::seed_from_u64(seed);
    profile
        .sizes()
        .iter()
        .map(|&n| {
            let s = random_text(&mut rng, n, b"ab");
            let t = Instant::now();
            let idx = Index::build(s).expect("nonempty text");
            let build = t.elapsed();
            log::info!("built index for n = {n} in {build:?}");
            Row {
                n,
                build,
                min_cover: median_latency(&idx, queries, &mut rng, |x, f| x.min_cover(f).unwrap()),
                all_covers: median_latency(&idx, queries, &mut rng, |x, f| {
                    x.all_covers(f).unwrap().progressions.len()
                }),
                is_cover: median_latency(&idx, queries, &mut rng, |x, f| {
                    let l = x.min_cover(f).unwrap();
                    x.is_cover(l, f).unwrap() as usize
                }),
                covered_pref: median_latency(&idx, queries, &mut rng, |x, f| {
                    x.covered_pref(f.len().div_ceil(3), f).unwrap()
                }),
            }
        })
        .collect()
}

fn micros(d: Duration) -> f64 {
    d.as_secs_f64() * 1e6
}

pub fn render_table(rows: &[Row]) -> String {
    let mut out = format!(
        "{:>8} {:>12} {:>14} {:>14} {:>14} {:>14}\n",
        "n", "build ms", "mincover us", "allcovers us", "iscover us", "coveredpref us"
    );
    for r in rows {
        out.push_str(&format!(
            "{:>8} {:>12.1} {:>14.2} {:>14.2} {:>14.2} {:>14.2}\n",
            r.n,
            r.build.as_secs_f64() * 1e3,
            micros(r.min_cover),
            micros(r.all_covers),
            micros(r.is_cover),
            micros(r.covered_pref)
        ));
    }
    out
}

pub fn render_csv(rows: &[Row]) -> String {
    let mut out = String::from("n,build_ms,mincover_us,allcovers_us,iscover_us,coveredpref_us\n");
    for r in rows {
        out.push_str(&format!(
            "{},{:.3},{:.3},{:.3},{:.3},{:.3}\n",
            r.n,
            r.build.as_secs_f64() * 1e3,
            micros(r.min_cover),
            micros(r.all_covers),
            micros(r.is_cover),
            micros(r.covered_pref)
        ));
    }
    out
}
