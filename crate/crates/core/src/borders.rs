//! Period and border queries on factors.
//!
//! Borders with lengths in `[2^k, 2^(k+1))` start at occurrences of the
//! length-`2^k` prefix inside the last `2^(k+1) - 1` positions of the factor,
//! so a single IPM query per level yields a progression of candidates. Each
//! progression is trimmed with two LCE queries: inside a progression of
//! difference `q`, validity depends only on how far the `q`-periodicity of
//! the prefix and of the candidate region extend.

use crate::error::Result;
use crate::ipm::ArithProg;
use crate::text::FactorRef;
use crate::Index;

/// All border lengths of a factor `S` (including `|S|`), ascending, split into
/// progressions such that every element other than the minimum of its
/// progression is periodic with shortest period equal to the difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorderDecomposition {
    pub progressions: Vec<ArithProg>,
}

impl BorderDecomposition {
    pub fn lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.progressions.iter().flat_map(|p| p.iter())
    }

    pub fn contains(&self, b: usize) -> bool {
        self.progressions.iter().any(|p| p.contains(b))
    }

    /// Longest border shorter than the factor itself, 0 if there is none.
    pub fn longest_proper(&self) -> usize {
        let mut it = self.progressions.iter().rev();
        let Some(last) = it.next() else { return 0 };
        if last.count >= 2 {
            return last.last().unwrap() - last.diff;
        }
        it.next().and_then(|p| p.last()).unwrap_or(0)
    }
}

/// Builds the normalized decomposition from ascending, disjoint runs of
/// consecutive borders. A border `e` extends the current progression when
/// its gap `g` to the previous border matches the difference and `e >= 2g`.
struct Normalizer {
    out: Vec<ArithProg>,
    prev: usize,
}

impl Normalizer {
    fn new() -> Self {
        Normalizer {
            out: Vec::new(),
            prev: 0,
        }
    }

    fn push(&mut self, e: usize) {
        let gap = e - self.prev;
        self.prev = e;
        if let Some(cur) = self.out.last_mut() {
            if e >= 2 * gap && (cur.count == 1 || cur.diff == gap) {
                *cur = ArithProg::new(cur.start, gap, cur.count + 1);
                return;
            }
        }
        self.out.push(ArithProg::single(e));
    }

    fn push_prog(&mut self, ap: ArithProg) {
        // after the first two elements, every further element has gap
        // `diff` and is at least twice it, so the tail extends in bulk
        let head = ap.count.min(2);
        for t in 0..head {
            self.push(ap.start + t * ap.diff);
        }
        if ap.count > 2 {
            let cur = self.out.last_mut().unwrap();
            debug_assert_eq!(cur.diff, ap.diff);
            *cur = ArithProg::new(cur.start, cur.diff, cur.count + ap.count - 2);
            self.prev = ap.last().unwrap();
        }
    }
}

impl Index {
    /// Border lengths of `s` in `[2^k, 2^(k+1))`, excluding `|s|`, as one
    /// progression (ascending).
    fn borders_at_level(&self, s: FactorRef, k: u32) -> ArithProg {
        let m = s.len();
        let plen = 1usize << k;
        // relative starts of the suffix border, s_rel in [lo, hi]
        let lo = (m + 2).saturating_sub(2 * plen).max(2);
        let hi = m + 1 - plen;
        if lo > hi {
            return ArithProg::EMPTY;
        }
        let cand = self.occurrences(s.i, plen, s.i + lo - 1, s.i + hi - 1);
        if cand.is_empty() {
            return ArithProg::EMPTY;
        }
        // candidate periods pi_t = start_t - s.i, ascending
        let pi0 = cand.start - s.i;
        let is_period = |pi: usize| self.text.lcp_unchecked(s.i, s.i + pi) >= m - pi;
        let periods = if cand.count == 1 {
            if is_period(pi0) {
                ArithProg::single(pi0)
            } else {
                ArithProg::EMPTY
            }
        } else {
            let q = cand.diff;
            let count = cand.count;
            let pi_last = pi0 + (count - 1) * q;
            // longest q-periodic prefix of s
            let r = (q + self.text.lcp_unchecked(s.i, s.i + q)).min(m);
            // end (relative) of the q-periodic stretch starting at pi0 + 1
            let e = (pi0 + q + self.text.lcp_unchecked(s.i + pi0, s.i + pi0 + q)).min(m);
            if e >= m {
                // valid iff m - pi <= r
                let min_pi = m.saturating_sub(r);
                let t0 = if min_pi <= pi0 { 0 } else { (min_pi - pi0).div_ceil(q) };
                if t0 >= count {
                    ArithProg::EMPTY
                } else {
                    ArithProg::new(pi0 + t0 * q, q, count - t0)
                }
            } else if e >= r {
                let pi = e - r;
                if pi >= pi0 && pi <= pi_last && (pi - pi0).is_multiple_of(q) && is_period(pi) {
                    ArithProg::single(pi)
                } else {
                    ArithProg::EMPTY
                }
            } else {
                ArithProg::EMPTY
            }
        };
        match periods.last() {
            Some(p_last) => ArithProg::new(m - p_last, periods.diff, periods.count),
            None => ArithProg::EMPTY,
        }
    }

    /// `Borders(S)`: all border lengths including `|S|`.
    pub fn borders(&self, s: FactorRef) -> Result<BorderDecomposition> {
        self.check(s)?;
        Ok(self.borders_unchecked(s))
    }

    pub(crate) fn borders_unchecked(&self, s: FactorRef) -> BorderDecomposition {
        let m = s.len();
        let mut norm = Normalizer::new();
        let mut k = 0u32;
        while (1usize << k) < m {
            let level = self.borders_at_level(s, k);
            if !level.is_empty() {
                norm.push_prog(level);
            }
            k += 1;
        }
        norm.push(m);
        BorderDecomposition { progressions: norm.out }
    }

    /// All periods of `s` (including `|s|`), ascending, as progressions.
    pub fn periods(&self, s: FactorRef) -> Result<Vec<ArithProg>> {
        self.check(s)?;
        let m = s.len();
        let b = self.borders_unchecked(s);
        let mut out: Vec<ArithProg> = b
            .progressions
            .iter()
            .rev()
            .map(|ap| ap.clip(1, m - 1))
            .filter(|ap| !ap.is_empty())
            .map(|ap| ArithProg::new(m - ap.last().unwrap(), ap.diff, ap.count))
            .collect();
        out.push(ArithProg::single(m));
        Ok(out)
    }

    /// Shortest period of `s`.
    pub fn per(&self, s: FactorRef) -> Result<usize> {
        self.check(s)?;
        Ok(self.per_unchecked(s))
    }

    pub(crate) fn per_unchecked(&self, s: FactorRef) -> usize {
        s.len() - self.borders_unchecked(s).longest_proper()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn naive_borders(s: &[u8]) -> Vec<usize> {
        (1..=s.len()).filter(|&b| s[..b] == s[s.len() - b..]).collect()
    }

    fn naive_per(s: &[u8]) -> usize {
        (1..=s.len())
            .find(|&p| (0..s.len() - p).all(|x| s[x] == s[x + p]))
            .unwrap()
    }

    fn check_factor(idx: &Index, s: &[u8], f: FactorRef) {
        let sub = &s[f.i - 1..f.j];
        let dec = idx.borders(f).unwrap();
        let got: Vec<usize> = dec.lengths().collect();
        assert_eq!(got, naive_borders(sub), "borders of {:?}", String::from_utf8_lossy(sub));
        for ap in &dec.progressions {
            if ap.count >= 2 {
                for b in ap.iter().skip(1) {
                    let p = naive_per(&sub[..b]);
                    assert_eq!(p, ap.diff);
                    assert!(b >= 2 * p);
                }
            }
        }
        let m = sub.len();
        let bound = 2 * (usize::BITS - m.leading_zeros()) as usize + 2;
        assert!(dec.progressions.len() <= bound);
        let periods: Vec<usize> = idx
            .periods(f)
            .unwrap()
            .iter()
            .flat_map(|p| p.iter().collect::<Vec<_>>())
            .collect();
        let want: Vec<usize> = (1..=m).filter(|&p| (0..m - p).all(|x| sub[x] == sub[x + p])).collect();
        assert_eq!(periods, want);
        assert_eq!(idx.per(f).unwrap(), naive_per(sub));
    }

    #[test]
    fn fixtures() {
        let idx = Index::build(b"abaababaababa").unwrap();
        let dec = idx.borders(idx.whole()).unwrap();
        assert_eq!(dec.lengths().collect::<Vec<_>>(), vec![1, 3, 8, 13]);
        let idx = Index::build(b"aaaa").unwrap();
        let dec = idx.borders(idx.whole()).unwrap();
        assert_eq!(dec.progressions, vec![ArithProg::new(1, 1, 4)]);
        let per: Vec<usize> = idx
            .periods(idx.whole())
            .unwrap()
            .iter()
            .flat_map(|p| p.iter().collect::<Vec<_>>())
            .collect();
        assert_eq!(per, vec![1, 2, 3, 4]);
        let idx = Index::build(b"abaab").unwrap();
        let per: Vec<usize> = idx
            .periods(idx.whole())
            .unwrap()
            .iter()
            .flat_map(|p| p.iter().collect::<Vec<_>>())
            .collect();
        assert_eq!(per, vec![3, 5]);
        let idx = Index::build(b"ab").unwrap();
        assert_eq!(idx.borders(idx.whole()).unwrap().lengths().collect::<Vec<_>>(), vec![2]);
        assert_eq!(idx.periods(idx.whole()).unwrap(), vec![ArithProg::single(2)]);
    }

    #[test]
    fn exhaustive_binary_small() {
        for n in 1..=11 {
            for mask in 0..(1u32 << n) {
                let s: Vec<u8> = (0..n).map(|b| if mask >> b & 1 == 1 { b'b' } else { b'a' }).collect();
                let idx = Index::build(s.clone()).unwrap();
                for i in 1..=n {
                    for j in i..=n {
                        check_factor(&idx, &s, FactorRef::new(i, j));
                    }
                }
            }
        }
    }

    #[test]
    fn random_factors() {
        let mut rng = StdRng::seed_from_u64(9);
        for round in 0..40 {
            let n = if round % 2 == 0 { 64 } else { rng.gen_range(100..2000) };
            let sigma = rng.gen_range(1..=3);
            // periodic-ish texts exercise long progressions
            let s: Vec<u8> = if round % 3 == 0 {
                let root: Vec<u8> = (0..rng.gen_range(1..6)).map(|_| b"ab"[rng.gen_range(0..2)]).collect();
                (0..n)
                    .map(|x| {
                        if rng.gen_ratio(1, 200) {
                            b'c'
                        } else {
                            root[x % root.len()]
                        }
                    })
                    .collect()
            } else {
                (0..n).map(|_| b"abc"[rng.gen_range(0..sigma)]).collect()
            };
            let idx = Index::build(s.clone()).unwrap();
            let tries = if n == 64 { 2080 } else { 300 };
            for _ in 0..tries {
                let i = rng.gen_range(1..=n);
                let j = rng.gen_range(i..=n);
                check_factor(&idx, &s, FactorRef::new(i, j));
            }
        }
    }

    #[test]
    fn invalid_factor_is_an_error() {
        let idx = Index::build(b"abc").unwrap();
        assert!(idx.borders(FactorRef::new(2, 4)).is_err());
        assert!(idx.periods(FactorRef::new(0, 1)).is_err());
    }
}
