//! Internal pattern matching.
//!
//! Occurrences of a factor inside a window at most twice its length form a
//! single arithmetic progression. They are located with a binary search on
//! the suffix array (giving the rank range of the pattern) followed by range
//! successor queries on a wavelet matrix over suffix-array positions.

use std::fmt;

use crate::error::{Error, Result};
use crate::text::FactorRef;
use crate::Index;

/// `start, start + diff, ..., start + (count - 1) * diff`.
///
/// Normalized so that singletons have `diff == 0` and the empty progression
/// is `(0, 0, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ArithProg {
    pub start: usize,
    pub diff: usize,
    pub count: usize,
}

impl ArithProg {
    pub const EMPTY: ArithProg = ArithProg {
        start: 0,
        diff: 0,
        count: 0,
    };

    pub fn new(start: usize, diff: usize, count: usize) -> Self {
        match count {
            0 => Self::EMPTY,
            1 => ArithProg { start, diff: 0, count },
            _ => {
                assert!(
                    diff > 0,
                    "progression with {count} elements needs a positive difference"
                );
                ArithProg { start, diff, count }
            }
        }
    }

    pub fn single(x: usize) -> Self {
        ArithProg {
            start: x,
            diff: 0,
            count: 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn first(&self) -> Option<usize> {
        (self.count > 0).then_some(self.start)
    }

    pub fn last(&self) -> Option<usize> {
        (self.count > 0).then(|| self.start + (self.count - 1) * self.diff)
    }

    pub fn get(&self, t: usize) -> Option<usize> {
        (t < self.count).then(|| self.start + t * self.diff)
    }

    pub fn contains(&self, x: usize) -> bool {
        match self.count {
            0 => false,
            1 => x == self.start,
            _ => {
                x >= self.start
                    && (x - self.start).is_multiple_of(self.diff)
                    && (x - self.start) / self.diff < self.count
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.count).map(move |t| self.start + t * self.diff)
    }

    /// Elements within `[lo, hi]`.
    pub fn clip(&self, lo: usize, hi: usize) -> ArithProg {
        let (Some(first), Some(last)) = (self.first(), self.last()) else {
            return Self::EMPTY;
        };
        if hi < lo || hi < first || lo > last {
            return Self::EMPTY;
        }
        if self.count == 1 {
            return *self;
        }
        let t0 = if lo <= first {
            0
        } else {
            (lo - first).div_ceil(self.diff)
        };
        let t1 = if hi >= last {
            self.count - 1
        } else {
            (hi - first) / self.diff
        };
        if t0 > t1 {
            return Self::EMPTY;
        }
        ArithProg::new(first + t0 * self.diff, self.diff, t1 - t0 + 1)
    }
}

impl fmt::Display for ArithProg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.diff, self.count)
    }
}

/// Positions of a factor `F` covered by occurrences of a string inside `F`,
/// as sorted, disjoint, non-adjacent intervals, 1-based relative to `F`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoverageSet {
    pub intervals: Vec<(usize, usize)>,
}

impl CoverageSet {
    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, pos: usize) -> bool {
        let k = self.intervals.partition_point(|&(_, hi)| hi < pos);
        self.intervals.get(k).is_some_and(|&(lo, _)| lo <= pos)
    }

    /// Total number of covered positions.
    pub fn covered(&self) -> usize {
        self.intervals.iter().map(|&(lo, hi)| hi - lo + 1).sum()
    }
}

/// Appends `[lo, hi]` to a sorted list of maximal intervals, merging it with
/// the last one when they overlap or touch.
pub(crate) fn push_interval(out: &mut Vec<(usize, usize)>, lo: usize, hi: usize) {
    if let Some(last) = out.last_mut() {
        if lo <= last.1 + 1 {
            last.1 = last.1.max(hi);
            return;
        }
    }
    out.push((lo, hi));
}

impl Index {
    /// Rank range (1-based, inclusive) of the suffixes having `T[f]` as a
    /// prefix.
    pub fn sa_interval(&self, f: FactorRef) -> Result<(usize, usize)> {
        self.check(f)?;
        let (lo, hi) = self.sa_range0(f.i, f.len());
        Ok((lo + 1, hi + 1))
    }

    /// 0-based inclusive rank range of suffixes starting with `T[p..p+len)`.
    pub(crate) fn sa_range0(&self, p: usize, len: usize) -> (usize, usize) {
        let sa = self.text.forward().sa();
        let r0 = self.text.forward().isa()[p - 1] as usize;
        let matches = |r: usize| self.text.lcp_unchecked(sa[r] as usize + 1, p) >= len;
        // first matching rank in [0, r0]
        let (mut lo, mut hi) = (0usize, r0);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if matches(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let first = lo;
        // last matching rank in [r0, n-1]
        let (mut lo, mut hi) = (r0, sa.len() - 1);
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if matches(mid) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        (first, lo)
    }

    /// Occurrences of `T[p..p+len)` starting within `[s_lo, s_hi]`. The start
    /// window must not exceed `len + 1` positions, which makes the result an
    /// arithmetic progression.
    pub(crate) fn occurrences(&self, p: usize, len: usize, s_lo: usize, s_hi: usize) -> ArithProg {
        debug_assert!(s_hi < s_lo || s_hi - s_lo <= len);
        if s_hi < s_lo || s_lo == 0 || s_lo > self.n() {
            return ArithProg::EMPTY;
        }
        let (lo, hi) = self.sa_range0(p, len);
        let (l, r) = (lo, hi + 1);
        // suffix-array values are 0-based starts
        let (v_lo, v_hi) = (s_lo as u64 - 1, s_hi as u64);
        let count = self.occ.count_range(l, r, v_lo, v_hi);
        if count == 0 {
            return ArithProg::EMPTY;
        }
        let first = self.occ.next_value(l, r, v_lo).expect("count > 0") as usize + 1;
        if count == 1 {
            return ArithProg::single(first);
        }
        let last = self.occ.prev_value(l, r, v_hi).expect("count > 0") as usize + 1;
        let diff = if count == 2 {
            last - first
        } else {
            let second = self.occ.next_value(l, r, first as u64).expect("count > 2") as usize + 1;
            second - first
        };
        assert_eq!(
            last - first,
            diff * (count - 1),
            "occurrences of a pattern in a short window must be an arithmetic progression"
        );
        ArithProg::new(first, diff, count)
    }

    /// Start positions of occurrences of `pattern` lying entirely inside
    /// `window`, where `|window| <= 2 |pattern|`.
    pub fn ipm(&self, pattern: FactorRef, window: FactorRef) -> Result<ArithProg> {
        self.check(pattern)?;
        self.check(window)?;
        let (m, w) = (pattern.len(), window.len());
        if w > 2 * m {
            return Err(Error::WindowTooLong { pattern: m, window: w });
        }
        if m > w {
            return Ok(ArithProg::EMPTY);
        }
        Ok(self.occurrences(pattern.i, m, window.i, window.j + 1 - m))
    }

    /// Absolute intervals of `[fi..fj]` covered by occurrences of
    /// `T[cp..cp+clen)` that lie inside `[fi..fj]`.
    pub(crate) fn cov_abs(&self, cp: usize, clen: usize, fi: usize, fj: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        if fj < fi || fj + 1 - fi < clen {
            return out;
        }
        let last_start = fj + 1 - clen;
        let mut s = fi;
        while s <= last_start {
            let hi = (s + clen).min(last_start);
            let ap = self.occurrences(cp, clen, s, hi);
            if let (Some(a), Some(b)) = (ap.first(), ap.last()) {
                push_interval(&mut out, a, b + clen - 1);
            }
            s += clen;
        }
        out
    }

    /// `Cov(C, F)`: positions of `F` covered by occurrences of the string
    /// `T[c]` inside `F`, relative to `F`. Cost grows with `|F| / |C|`.
    pub fn cov(&self, c: FactorRef, f: FactorRef) -> Result<CoverageSet> {
        self.check(c)?;
        self.check(f)?;
        let intervals = self
            .cov_abs(c.i, c.len(), f.i, f.j)
            .into_iter()
            .map(|(lo, hi)| (lo + 1 - f.i, hi + 1 - f.i))
            .collect();
        Ok(CoverageSet { intervals })
    }

    /// End of the maximal covered interval of `[fi..fj]` that starts at
    /// `from`, or `None` if `from` is not covered.
    pub(crate) fn covered_run_from(&self, cp: usize, clen: usize, fi: usize, fj: usize, from: usize) -> Option<usize> {
        self.cov_abs(cp, clen, fi, fj)
            .into_iter()
            .find(|&(lo, hi)| lo <= from && from <= hi)
            .map(|(_, hi)| hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    const SAMPLE: &[u8] = b"abaababaababa";

    fn naive_occ(s: &[u8], pat: &[u8], lo: usize, hi: usize) -> Vec<usize> {
        (lo..=hi)
            .filter(|&p| p + pat.len() - 1 <= s.len() && &s[p - 1..p - 1 + pat.len()] == pat)
            .collect()
    }

    #[test]
    fn progression_basics() {
        let ap = ArithProg::new(3, 2, 4);
        assert_eq!(ap.iter().collect::<Vec<_>>(), vec![3, 5, 7, 9]);
        assert!(ap.contains(7) && !ap.contains(8) && !ap.contains(11));
        assert_eq!(ap.clip(4, 8), ArithProg::new(5, 2, 2));
        assert_eq!(ap.clip(10, 20), ArithProg::EMPTY);
        assert_eq!(ArithProg::new(5, 9, 1), ArithProg::single(5));
        assert_eq!(ap.to_string(), "3:2:4");
    }

    #[test]
    fn sa_interval_fixtures() {
        let idx = Index::build(SAMPLE).unwrap();
        let (lo, hi) = idx.sa_interval(FactorRef::new(1, 1)).unwrap();
        assert_eq!(hi - lo + 1, 8);
        let (lo, hi) = idx.sa_interval(FactorRef::new(1, 13)).unwrap();
        assert_eq!(lo, hi);
        let (lo, hi) = idx.sa_interval(FactorRef::new(2, 2)).unwrap();
        assert_eq!(hi - lo + 1, 5);
    }

    #[test]
    fn ipm_fixtures() {
        let idx = Index::build(SAMPLE).unwrap();
        let f = FactorRef::new;
        assert_eq!(idx.ipm(f(1, 3), f(1, 6)).unwrap(), ArithProg::new(1, 3, 2));
        assert_eq!(idx.ipm(f(1, 13), f(1, 13)).unwrap(), ArithProg::new(1, 0, 1));
        assert_eq!(idx.ipm(f(3, 5), f(1, 5)).unwrap(), ArithProg::new(3, 0, 1));
        assert!(matches!(idx.ipm(f(1, 2), f(1, 5)), Err(Error::WindowTooLong { .. })));
    }

    #[test]
    fn cov_fixtures() {
        // "ababa" with C = "aba" at the front
        let idx = Index::build(b"ababa").unwrap();
        let c = idx.cov(FactorRef::new(1, 3), FactorRef::new(1, 5)).unwrap();
        assert_eq!(c.intervals, vec![(1, 5)]);
        let c = idx.cov(FactorRef::new(2, 4), FactorRef::new(2, 4)).unwrap();
        assert_eq!(c.intervals, vec![(1, 3)]);
        let idx = Index::build(b"aaab").unwrap();
        assert!(idx.cov(FactorRef::new(4, 4), FactorRef::new(1, 3)).unwrap().is_empty());
        // |C| > |F|
        assert!(idx.cov(FactorRef::new(1, 3), FactorRef::new(1, 2)).unwrap().is_empty());
    }

    #[test]
    fn ipm_exhaustive_against_naive_matcher() {
        let mut rng = StdRng::seed_from_u64(3);
        for round in 0..34 {
            let n = if round < 30 { rng.gen_range(1..=24) } else { 64 };
            let sigma = rng.gen_range(1..=3);
            let s: Vec<u8> = (0..n).map(|_| b"abc"[rng.gen_range(0..sigma)]).collect();
            let idx = Index::build(s.clone()).unwrap();
            for pi in 1..=n {
                for pj in pi..=n {
                    let m = pj - pi + 1;
                    let pat = &s[pi - 1..pj];
                    // every window of length in [m, 2m]
                    for wi in 1..=n {
                        for w in m..=(2 * m).min(n + 1 - wi) {
                            let wj = wi + w - 1;
                            let got = idx.ipm(FactorRef::new(pi, pj), FactorRef::new(wi, wj)).unwrap();
                            let want = naive_occ(&s, pat, wi, wj + 1 - m);
                            assert_eq!(got.iter().collect::<Vec<_>>(), want);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cov_against_naive_and_maximal() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.gen_range(1..=40);
            let s: Vec<u8> = (0..n).map(|_| b"ab"[rng.gen_range(0..2)]).collect();
            let idx = Index::build(s.clone()).unwrap();
            for _ in 0..40 {
                let ci = rng.gen_range(1..=n);
                let cj = rng.gen_range(ci..=n.min(ci + 4));
                let fi = rng.gen_range(1..=n);
                let fj = rng.gen_range(fi..=n);
                let pat = &s[ci - 1..cj];
                let mut covered = vec![false; fj - fi + 1];
                if pat.len() <= fj - fi + 1 {
                    for p in naive_occ(&s, pat, fi, fj + 1 - pat.len()) {
                        for q in p..p + pat.len() {
                            covered[q - fi] = true;
                        }
                    }
                }
                let got = idx.cov(FactorRef::new(ci, cj), FactorRef::new(fi, fj)).unwrap();
                for (k, &c) in covered.iter().enumerate() {
                    assert_eq!(got.contains(k + 1), c);
                }
                for w in got.intervals.windows(2) {
                    assert!(w[0].1 + 1 < w[1].0, "intervals must be maximal");
                }
            }
        }
    }
}
