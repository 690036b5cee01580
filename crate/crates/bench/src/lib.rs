//! Workloads shared by the benchmarks.

use qpi_core::FactorRef;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[derive(Debug, Clone, Copy)]
pub enum Kind {
    /// Uniform over `{a, b}`.
    Binary,
    /// A short root repeated, with a few substitutions; long border
    /// progressions and many covers.
    Periodic,
}

pub fn text(kind: Kind, n: usize, seed: u64) -> Vec<u8> {
    let mut rng = StdRng::seed_from_u64(seed);
    match kind {
        Kind::Binary => (0..n).map(|_| b"ab"[rng.gen_range(0..2)]).collect(),
        Kind::Periodic => {
            let root: Vec<u8> = (0..rng.gen_range(2..6)).map(|_| b"ab"[rng.gen_range(0..2)]).collect();
            let mut s: Vec<u8> = (0..n).map(|x| root[x % root.len()]).collect();
            for _ in 0..(n / 1000).max(1) {
                let at = rng.gen_range(0..n);
                s[at] = b'c';
            }
            s
        }
    }
}

/// `count` random factors of a text of length `n`.
pub fn factors(n: usize, count: usize, seed: u64) -> Vec<FactorRef> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let i = rng.gen_range(1..=n);
            FactorRef::new(i, rng.gen_range(i..=n))
        })
        .collect()
}

/// Factors that start at position 1, long enough to have covers in
/// periodic texts.
pub fn long_prefixes(n: usize, count: usize, seed: u64) -> Vec<FactorRef> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| FactorRef::new(1, rng.gen_range(n / 2..=n)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_are_valid_and_reproducible() {
        let s = text(Kind::Periodic, 5000, 3);
        assert_eq!(s, text(Kind::Periodic, 5000, 3));
        assert!(s.contains(&b'c'));
        for f in factors(5000, 100, 1).into_iter().chain(long_prefixes(5000, 100, 2)) {
            assert!(f.validate(5000).is_ok());
        }
    }
}
