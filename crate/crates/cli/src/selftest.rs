//! Oracle-equivalence checks shared by `qpi selftest` and the acceptance
//! suite.

use std::fmt;

use qpi_core::oracle::Oracle;
use qpi_core::{FactorRef, Index};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    MinCover,
    AllCovers,
    Borders,
    Periods,
    IsCover,
    CoveredPref,
}

impl Op {
    pub const ALL: [Op; 6] = [
        Op::MinCover,
        Op::AllCovers,
        Op::Borders,
        Op::Periods,
        Op::IsCover,
        Op::CoveredPref,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub text: Vec<u8>,
    pub factor: FactorRef,
    pub op: Op,
    pub got: String,
    pub want: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = String::from_utf8_lossy(&self.text);
        let shown: String = text.chars().take(80).collect();
        write!(
            f,
            "{:?} on {} of {shown:?}: got {}, want {}",
            self.op, self.factor, self.got, self.want
        )
    }
}

/// Compares every operation in `ops` on factor `f` of `s` against the
/// oracle. `l` is the prefix length used by `IsCover` and `CoveredPref`.
pub fn check_factor(
    index: &Index,
    oracle: &Oracle,
    s: &[u8],
    f: FactorRef,
    l: usize,
    ops: &[Op],
    out: &mut Vec<Mismatch>,
) {
    let sub = &s[f.i - 1..f.j];
    let mut report = |op: Op, got: String, want: String| {
        if got != want {
            out.push(Mismatch {
                text: s.to_vec(),
                factor: f,
                op,
                got,
                want,
            });
        }
    };
    let covers = || oracle.naive_covers(sub).map_err(|e| e.to_string());
    for &op in ops {
        match op {
            Op::MinCover => report(
                op,
                format!("{:?}", index.min_cover(f).map_err(|e| e.to_string())),
                format!("{:?}", covers().map(|c| c[0])),
            ),
            Op::AllCovers => report(
                op,
                format!(
                    "{:?}",
                    index
                        .all_covers(f)
                        .map(|a| a.lengths().collect::<Vec<_>>())
                        .map_err(|e| e.to_string())
                ),
                format!("{:?}", covers()),
            ),
            Op::Borders => report(
                op,
                format!(
                    "{:?}",
                    index
                        .borders(f)
                        .map(|b| b.lengths().collect::<Vec<_>>())
                        .map_err(|e| e.to_string())
                ),
                format!("{:?}", oracle.naive_borders(sub).map_err(|e| e.to_string())),
            ),
            Op::Periods => report(
                op,
                format!(
                    "{:?}",
                    index
                        .periods(f)
                        .map(|ps| ps.iter().flat_map(|p| p.iter().collect::<Vec<_>>()).collect::<Vec<_>>())
                        .map_err(|e| e.to_string())
                ),
                format!("{:?}", oracle.naive_periods(sub).map_err(|e| e.to_string())),
            ),
            Op::IsCover => report(
                op,
                format!("{:?}", index.is_cover(l, f).map_err(|e| e.to_string())),
                format!("{:?}", oracle.naive_is_cover(sub, l).map_err(|e| e.to_string())),
            ),
            Op::CoveredPref => report(
                op,
                format!("{:?}", index.covered_pref(l, f).map_err(|e| e.to_string())),
                format!("{:?}", oracle.naive_covered_pref(sub, l).map_err(|e| e.to_string())),
            ),
        }
    }
}

/// Prefix length to test on a factor of length `m`: half the time a border
/// (where covers live), otherwise uniform.
fn pick_length(rng: &mut StdRng, oracle: &Oracle, sub: &[u8]) -> usize {
    if rng.gen_bool(0.5) {
        let b = oracle.naive_borders(sub).unwrap_or_default();
        if !b.is_empty() {
            return b[rng.gen_range(0..b.len())];
        }
    }
    rng.gen_range(1..=sub.len())
}

#[derive(Debug, Clone)]
pub struct SelftestConfig {
    /// Every binary string up to this length, every factor.
    pub exhaustive_len: usize,
    pub random_strings: usize,
    pub random_len: usize,
    pub factors_per_string: usize,
    pub seed: u64,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            exhaustive_len: 8,
            random_strings: 20,
            random_len: 300,
            factors_per_string: 200,
            seed: 1,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SelftestReport {
    pub strings: usize,
    pub factors: usize,
    pub mismatches: Vec<Mismatch>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// All binary strings of length exactly `n`.
pub fn binary_strings(n: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..1u64 << n).map(move |mask| (0..n).map(|b| if mask >> b & 1 == 1 { b'b' } else { b'a' }).collect())
}

/// Every factor of every binary string of length `1..=max_len`, checking
/// `MinCover` and `AllCovers`.
pub fn exhaustive(max_len: usize, report: &mut SelftestReport) {
    let oracle = Oracle::default();
    for n in 1..=max_len {
        for s in binary_strings(n) {
            let idx = Index::build(s.clone()).expect("nonempty text");
            report.strings += 1;
            for i in 1..=n {
                for j in i..=n {
                    let f = FactorRef::new(i, j);
                    check_factor(
                        &idx,
                        &oracle,
                        &s,
                        f,
                        1,
                        &[Op::MinCover, Op::AllCovers],
                        &mut report.mismatches,
                    );
                    report.factors += 1;
                }
            }
        }
    }
}

pub fn random_text(rng: &mut StdRng, n: usize, alphabet: &[u8]) -> Vec<u8> {
    (0..n).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect()
}

/// `count` random texts of length `n`, each with `factors` random factors
/// checked on all operations. Alphabets alternate between binary and
/// ternary; every fourth text is a perturbed repetition, which is where the
/// interesting border structure is.
pub fn randomized(count: usize, n: usize, factors: usize, seed: u64, report: &mut SelftestReport) {
    let oracle = Oracle::default();
    let mut rng = StdRng::seed_from_u64(seed);
    for t in 0..count {
        let alphabet: &[u8] = if t % 2 == 0 { b"ab" } else { b"abc" };
        let s = if t % 4 == 3 {
            let p = rng.gen_range(1..8);
            let root = random_text(&mut rng, p, alphabet);
            let mut s: Vec<u8> = (0..n).map(|x| root[x % root.len()]).collect();
            for _ in 0..rng.gen_range(0..4) {
                let at = rng.gen_range(0..n);
                s[at] = alphabet[rng.gen_range(0..alphabet.len())];
            }
            s
        } else {
            random_text(&mut rng, n, alphabet)
        };
        let idx = Index::build(s.clone()).expect("nonempty text");
        report.strings += 1;
        for _ in 0..factors {
            let i = rng.gen_range(1..=n);
            let j = rng.gen_range(i..=n);
            let l = pick_length(&mut rng, &oracle, &s[i - 1..j]);
            check_factor(
                &idx,
                &oracle,
                &s,
                FactorRef::new(i, j),
                l,
                &Op::ALL,
                &mut report.mismatches,
            );
            report.factors += 1;
        }
    }
}

pub fn run(cfg: &SelftestConfig) -> SelftestReport {
    let mut report = SelftestReport::default();
    exhaustive(cfg.exhaustive_len, &mut report);
    randomized(
        cfg.random_strings,
        cfg.random_len,
        cfg.factors_per_string,
        cfg.seed,
        &mut report,
    );
    report
}
