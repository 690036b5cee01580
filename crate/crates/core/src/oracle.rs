//! Brute-force reference implementations, written directly from the
//! definitions. Only raw byte slices go in; nothing here touches the index.
//! Prefix occurrences are found with a Z-array so the cover oracles stay
//! usable on strings of a few thousand symbols.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Naive reference queries on a plain string, refusing inputs longer than
/// `cap` so a stray call cannot stall a test run.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { cap: 4096 }
    }
}

fn has_period(s: &[u8], p: usize) -> bool {
    (p..s.len()).all(|x| s[x] == s[x - p])
}

/// `z[x]` = length of the longest common prefix of `s` and `s[x..]`.
fn z_array(s: &[u8]) -> Vec<usize> {
    let n = s.len();
    let mut z = vec![0; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut l, mut r) = (0, 0);
    for x in 1..n {
        let mut k = if x < r { z[x - l].min(r - x) } else { 0 };
        while x + k < n && s[k] == s[x + k] {
            k += 1;
        }
        z[x] = k;
        if x + k > r {
            (l, r) = (x, x + k);
        }
    }
    z
}

fn occurrences(s: &[u8], c: &[u8]) -> Vec<usize> {
    if c.is_empty() || c.len() > s.len() {
        return Vec::new();
    }
    (0..=s.len() - c.len()).filter(|&x| &s[x..x + c.len()] == c).collect()
}

/// Positions of `s` covered by occurrences of the prefix `s[..l]`.
fn prefix_coverage(s: &[u8], z: &[usize], l: usize) -> Vec<bool> {
    let mut covered = vec![false; s.len()];
    let mut reach = 0;
    for x in 0..s.len() {
        if z[x] >= l {
            reach = x + l;
        }
        covered[x] = x < reach;
    }
    covered
}

impl Oracle {
    pub fn new(cap: usize) -> Self {
        Oracle { cap }
    }

    fn check(&self, s: &[u8]) -> Result<()> {
        if s.len() > self.cap {
            Err(Error::OracleCap {
                len: s.len(),
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    /// Whether `s[..l]` covers `s`.
    pub fn naive_is_cover(&self, s: &[u8], l: usize) -> Result<bool> {
        self.check(s)?;
        if l == 0 || l > s.len() {
            return Ok(false);
        }
        Ok(prefix_coverage(s, &z_array(s), l).iter().all(|&b| b))
    }

    /// Lengths `c` such that `s[..c]` is a cover of `s`, ascending.
    pub fn naive_covers(&self, s: &[u8]) -> Result<Vec<usize>> {
        self.check(s)?;
        let z = z_array(s);
        // a cover is in particular a border
        Ok(self
            .naive_borders(s)?
            .into_iter()
            .filter(|&c| prefix_coverage(s, &z, c).iter().all(|&b| b))
            .collect())
    }

    pub fn naive_min_cover(&self, s: &[u8]) -> Result<usize> {
        self.check(s)?;
        self.naive_covers(s)?
            .first()
            .copied()
            .ok_or(Error::Precondition("empty string has no cover".into()))
    }

    /// Length of the longest prefix of `s` covered by occurrences of
    /// `s[..l]` inside `s`.
    pub fn naive_covered_pref(&self, s: &[u8], l: usize) -> Result<usize> {
        self.check(s)?;
        if l == 0 || l > s.len() {
            return Err(Error::LengthOutOfRange { len: l, max: s.len() });
        }
        Ok(prefix_coverage(s, &z_array(s), l).iter().take_while(|&&b| b).count())
    }

    /// Border lengths of `s`, including `|s|`.
    pub fn naive_borders(&self, s: &[u8]) -> Result<Vec<usize>> {
        self.check(s)?;
        let z = z_array(s);
        let m = s.len();
        Ok((1..=m).filter(|&b| z[m - b] == b).collect())
    }

    /// Periods of `s`, including `|s|`.
    pub fn naive_periods(&self, s: &[u8]) -> Result<Vec<usize>> {
        self.check(s)?;
        let z = z_array(s);
        let m = s.len();
        Ok((1..=m).filter(|&p| p == m || z[p] == m - p).collect())
    }

    pub fn naive_per(&self, s: &[u8]) -> Result<usize> {
        self.check(s)?;
        Ok(self.naive_periods(s)?.first().copied().unwrap_or(0))
    }

    /// Whether `c` is a seed of `u`: a factor of `u` covering some
    /// superstring of `u`. Occurrences may hang over either end of `u` as
    /// long as they agree with `u` on the overlap.
    pub fn naive_is_seed(&self, u: &[u8], c: &[u8]) -> Result<bool> {
        self.check(u)?;
        if c.is_empty() || occurrences(u, c).is_empty() {
            return Ok(false);
        }
        let (n, m) = (u.len() as isize, c.len() as isize);
        let mut covered = vec![false; u.len()];
        for start in (1 - m)..n {
            let agrees = (0..m).all(|t| {
                let x = start + t;
                x < 0 || x >= n || u[x as usize] == c[t as usize]
            });
            if agrees {
                for x in start.max(0)..(start + m).min(n) {
                    covered[x as usize] = true;
                }
            }
        }
        Ok(covered.iter().all(|&b| b))
    }

    /// Distinct seeds of `u` of length at most `max_len`.
    pub fn naive_seeds(&self, u: &[u8], max_len: usize) -> Result<BTreeSet<Vec<u8>>> {
        self.check(u)?;
        let mut out = BTreeSet::new();
        for len in 1..=max_len.min(u.len()) {
            let distinct: BTreeSet<&[u8]> = u.windows(len).collect();
            for c in distinct {
                if self.naive_is_seed(u, c)? {
                    out.insert(c.to_vec());
                }
            }
        }
        Ok(out)
    }

    /// All runs `(a, b, p)` of `s`, 1-based and inclusive, sorted.
    pub fn naive_runs(&self, s: &[u8]) -> Result<Vec<(usize, usize, usize)>> {
        self.check(s)?;
        let n = s.len();
        let mut out = Vec::new();
        for p in 1..=n / 2 {
            // maximal stretches of x with s[x] == s[x + p]
            let mut x = 0;
            while x + p < n {
                if s[x] != s[x + p] {
                    x += 1;
                    continue;
                }
                let start = x;
                while x + p < n && s[x] == s[x + p] {
                    x += 1;
                }
                let (a, b) = (start, x - 1 + p);
                let f = &s[a..=b];
                if f.len() >= 2 * p && (1..p).all(|q| !has_period(f, q)) {
                    out.push((a + 1, b + 1, p));
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_fixtures() {
        let o = Oracle::default();
        assert_eq!(o.naive_min_cover(b"abaababaababa").unwrap(), 3);
        assert_eq!(o.naive_min_cover(b"baababaababa").unwrap(), 7);
        assert_eq!(o.naive_covers(b"aaaa").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(o.naive_covers(b"abaababaababa").unwrap(), vec![3, 8, 13]);
        let seeds = o.naive_seeds(b"abab", 2).unwrap();
        assert_eq!(seeds, [b"ab".to_vec(), b"ba".to_vec()].into_iter().collect());
        assert!(o.naive_seeds(b"aaba", 2).unwrap().is_empty());
        assert_eq!(o.naive_seeds(b"aa", 1).unwrap(), [b"a".to_vec()].into_iter().collect());
    }

    #[test]
    fn seeds_with_overhang() {
        let o = Oracle::default();
        assert!(o.naive_is_seed(b"bababa", b"aba").unwrap());
        assert!(o.naive_is_seed(b"babab", b"ab").unwrap());
        assert!(!o.naive_is_seed(b"abba", b"ab").unwrap());
        assert!(!o.naive_is_seed(b"abab", b"c").unwrap());
    }

    #[test]
    fn small_definitions() {
        let o = Oracle::default();
        assert_eq!(o.naive_periods(b"abaab").unwrap(), vec![3, 5]);
        assert_eq!(o.naive_borders(b"abaababaababa").unwrap(), vec![1, 3, 8, 13]);
        assert_eq!(o.naive_covered_pref(b"aab", 1).unwrap(), 2);
        assert_eq!(o.naive_runs(b"aaaa").unwrap(), vec![(1, 4, 1)]);
        assert_eq!(o.naive_runs(b"aabaa").unwrap(), vec![(1, 2, 1), (4, 5, 1)]);
        assert_eq!(
            o.naive_runs(b"abaabaaba").unwrap(),
            vec![(1, 9, 3), (3, 4, 1), (6, 7, 1)]
        );
    }

    #[test]
    fn z_based_checks_match_direct_scans() {
        let o = Oracle::default();
        for mask in 0..(1u32 << 10) {
            let s: Vec<u8> = (0..10).map(|b| if mask >> b & 1 == 1 { b'b' } else { b'a' }).collect();
            let borders: Vec<usize> = (1..=10).filter(|&b| s[..b] == s[10 - b..]).collect();
            assert_eq!(o.naive_borders(&s).unwrap(), borders);
            let periods: Vec<usize> = (1..=10).filter(|&p| has_period(&s, p)).collect();
            assert_eq!(o.naive_periods(&s).unwrap(), periods);
            for l in 1..=10 {
                let mut covered = [false; 10];
                for x in occurrences(&s, &s[..l]) {
                    covered[x..x + l].fill(true);
                }
                assert_eq!(o.naive_is_cover(&s, l).unwrap(), covered.iter().all(|&b| b));
                assert_eq!(
                    o.naive_covered_pref(&s, l).unwrap(),
                    covered.iter().take_while(|&&b| b).count()
                );
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let o = Oracle::new(4);
        assert_eq!(
            o.naive_covers(b"aaaaa").unwrap_err(),
            Error::OracleCap { len: 5, cap: 4 }
        );
    }
}
