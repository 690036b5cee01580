//! Cover queries on factors: `IsCover`, `MinCover` and `AllCovers`.

use crate::error::{Error, Result};
use crate::ipm::ArithProg;
use crate::runs::cut_progression;
use crate::seeds::{ceil_log2, decompose};
use crate::text::FactorRef;
use crate::Index;

/// Cover lengths of a factor as disjoint ascending progressions. Always
/// contains the length of the factor itself.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoverAnswer {
    pub progressions: Vec<ArithProg>,
}

impl CoverAnswer {
    pub fn lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.progressions.iter().flat_map(|p| p.iter())
    }

    pub fn contains(&self, c: usize) -> bool {
        self.progressions.iter().any(|p| p.contains(c))
    }

    pub fn min(&self) -> Option<usize> {
        self.progressions.first().and_then(|p| p.first())
    }
}

/// Partition of an ascending list of border lengths into maximal chains,
/// where each element's prefix covers the next element's prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainPartition {
    pub chains: Vec<Vec<usize>>,
}

impl ChainPartition {
    /// Previous element in the chain of `b`.
    pub fn prev(&self, b: usize) -> Option<usize> {
        self.chains.iter().find_map(|ch| {
            let t = ch.iter().position(|&x| x == b)?;
            (t > 0).then(|| ch[t - 1])
        })
    }

    fn is_single(&self) -> bool {
        self.chains.len() == 1
    }
}

/// Smallest element of the sorted slice `c` greater than `b`.
fn next_in(c: &[usize], b: usize) -> Option<usize> {
    c.get(c.partition_point(|&x| x <= b)).copied()
}

impl Index {
    /// `IsCover(ℓ, S)`: whether `S[1..ℓ]` is a cover of `S`.
    pub fn is_cover(&self, l: usize, s: FactorRef) -> Result<bool> {
        self.check(s)?;
        if l == 0 || l > s.len() {
            return Err(Error::LengthOutOfRange { len: l, max: s.len() });
        }
        Ok(self.is_cover_unchecked(l, s))
    }

    pub(crate) fn is_cover_unchecked(&self, l: usize, s: FactorRef) -> bool {
        let m = s.len();
        if l == m {
            return true;
        }
        if self.text.lcs_unchecked(s.i + l - 1, s.j) < l {
            return false;
        }
        let cp = s.i;
        let block = 1usize << (ceil_log2(l) + 1);
        let i2 = (s.i - 1).div_ceil(block) * block + 1;
        let j2 = s.j / block * block;
        if i2 > j2 {
            return self.covered_run_from(cp, l, s.i, s.j, s.i) == Some(s.j);
        }
        let parts = decompose(i2, j2);
        if !parts.iter().all(|b| self.seeded_basic_unchecked(cp, l, b.a, b.k)) {
            return false;
        }
        if !parts[..parts.len() - 1]
            .iter()
            .all(|b| self.test_concat_unchecked(cp, l, b.end()))
        {
            return false;
        }
        // the ends: everything up to the first ℓ positions of the middle
        let left_hi = (i2 + l - 1).min(s.j);
        let left_win = (i2 + 2 * l - 2).min(s.j);
        if self
            .covered_run_from(cp, l, s.i, left_win, s.i)
            .is_none_or(|e| e < left_hi)
        {
            return false;
        }
        let right_lo = (j2 + 1).saturating_sub(l).max(s.i);
        let right_win = (j2 + 2).saturating_sub(2 * l).max(s.i);
        self.cov_abs(cp, l, right_win, s.j)
            .last()
            .is_some_and(|&(a, b)| a <= right_lo && b == s.j)
    }

    /// Minimum of each border progression plus `|S|`, ascending.
    fn active_candidates(&self, s: FactorRef) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .borders_unchecked(s)
            .progressions
            .iter()
            .filter_map(|p| p.first())
            .collect();
        if out.last() != Some(&s.len()) {
            out.push(s.len());
        }
        out
    }

    /// `MinCover(S)`: length of the shortest cover of `S`.
    pub fn min_cover(&self, s: FactorRef) -> Result<usize> {
        self.check(s)?;
        let m = s.len();
        let cands = self.active_candidates(s);
        let mut t = 0;
        loop {
            let c = cands[t];
            let p = self.covered_pref_unchecked(c, s);
            if p == m {
                return Ok(c);
            }
            // borders up to |P| are seeded by the active one, hence not covers
            while cands[t] <= p {
                t += 1;
            }
        }
    }

    /// Shortest cover by testing the minimum of each border progression
    /// with `IsCover`; a slower cross-check of [`Index::min_cover`].
    pub fn min_cover_simple(&self, s: FactorRef) -> Result<usize> {
        self.check(s)?;
        let cands = self.active_candidates(s);
        Ok(cands
            .into_iter()
            .find(|&c| self.is_cover_unchecked(c, s))
            .unwrap_or(s.len()))
    }

    /// Splits the ascending border lengths `b` of `S` into chains.
    pub fn chains(&self, b: &[usize], s: FactorRef) -> Result<ChainPartition> {
        self.check(s)?;
        self.check_candidates(b, s)?;
        Ok(self.chains_unchecked(b, s))
    }

    fn chains_unchecked(&self, b: &[usize], s: FactorRef) -> ChainPartition {
        let mut chains: Vec<Vec<usize>> = Vec::new();
        for (t, &x) in b.iter().enumerate() {
            let extends = t > 0 && self.is_cover_unchecked(b[t - 1], s.prefix(x));
            match chains.last_mut() {
                Some(ch) if extends => ch.push(x),
                _ => chains.push(vec![x]),
            }
        }
        ChainPartition { chains }
    }

    fn check_candidates(&self, b: &[usize], s: FactorRef) -> Result<()> {
        let m = s.len();
        if b.last() != Some(&m) || !b.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Precondition(
                "candidates must be ascending and end with |S|".into(),
            ));
        }
        for &x in b {
            if x == 0 || self.text.lcs_unchecked(s.i + x - 1, s.j) < x {
                return Err(Error::NotABorder(x));
            }
        }
        Ok(())
    }

    /// `covers(B)`: the elements `b` of the ascending border list `B`
    /// (ending with `|S|`) for which `S[1..b]` covers `S`.
    pub fn covers_of_candidates(&self, b: &[usize], s: FactorRef) -> Result<Vec<usize>> {
        self.check(s)?;
        self.check_candidates(b, s)?;
        let depth_cap = ceil_log2(ceil_log2(self.n()).max(1) as usize) as usize + 2;
        self.covers_rec(b, s, depth_cap)
    }

    fn covers_rec(&self, b: &[usize], s: FactorRef, depth_left: usize) -> Result<Vec<usize>> {
        let m = s.len();
        let chains = self.chains_unchecked(b, s);
        if chains.is_single() {
            return Ok(b.to_vec());
        }
        let covers = if depth_left == 0 {
            b.iter().copied().filter(|&x| self.is_cover_unchecked(x, s)).collect()
        } else {
            // drop every chain's last element and every second element
            let refined: Vec<usize> = chains
                .chains
                .iter()
                .flat_map(|ch| {
                    let last = ch.len() - 1;
                    ch.iter()
                        .enumerate()
                        .filter(move |&(t, &x)| x == m || (t != last && t % 2 == 0))
                        .map(|(_, &x)| x)
                })
                .collect();
            let c = self.covers_rec(&refined, s, depth_left - 1)?;
            let mut out = c.clone();
            for ch in &chains.chains {
                for t in 1..ch.len() {
                    let x = ch[t];
                    if refined.binary_search(&x).is_ok() || c.binary_search(&ch[t - 1]).is_err() {
                        continue;
                    }
                    // covers are closed under being covered, so testing
                    // against the next known cover suffices
                    let nx = next_in(&c, x).expect("|S| is always a cover");
                    if self.is_cover_unchecked(x, s.prefix(nx)) {
                        out.push(x);
                    }
                }
            }
            out.sort_unstable();
            out
        };
        for ch in &chains.chains {
            let k = ch.iter().take_while(|x| covers.binary_search(x).is_ok()).count();
            if ch[k..].iter().any(|x| covers.binary_search(x).is_ok()) {
                return Err(Error::Invariant("covers within a chain do not form a prefix".into()));
            }
        }
        Ok(covers)
    }

    /// `AllCovers(S)`: all cover lengths of `S`, including `|S|`.
    pub fn all_covers(&self, s: FactorRef) -> Result<CoverAnswer> {
        self.check(s)?;
        let m = s.len();
        let borders = self.borders_unchecked(s);
        let mut per_prog: Vec<Vec<usize>> = Vec::with_capacity(borders.progressions.len());
        let mut cands: Vec<usize> = Vec::new();
        for &a in &borders.progressions {
            let c = self.periodic_candidates(s, a)?;
            cands.extend(&c);
            per_prog.push(c);
        }
        cands.push(m);
        cands.sort_unstable();
        cands.dedup();
        let covers = self.covers_of_candidates(&cands, s)?;
        let is_cov = |x: usize| covers.binary_search(&x).is_ok();

        let mut out: Vec<ArithProg> = Vec::new();
        for (a, tested) in borders.progressions.iter().zip(&per_prog) {
            let first = a.first().expect("border progressions are nonempty");
            let rest = a.clip(first + 1, usize::MAX);
            let verdicts: Vec<(usize, bool)> = tested
                .iter()
                .filter(|&&x| x != first)
                .map(|&x| (x, is_cov(x)))
                .collect();
            let tail = cut_progression(rest, &verdicts)?;
            let piece = match (is_cov(first), tail.count) {
                (true, 0) => ArithProg::single(first),
                (true, c) => ArithProg::new(first, a.diff, c + 1),
                (false, _) => tail,
            };
            if !piece.is_empty() {
                push_prog(&mut out, piece);
            }
        }
        Ok(CoverAnswer { progressions: out })
    }
}

/// Appends `p`, merging it into the previous progression when it continues
/// that progression exactly.
fn push_prog(out: &mut Vec<ArithProg>, p: ArithProg) {
    if let Some(prev) = out.last_mut() {
        let (pl, pf) = (prev.last().unwrap(), p.first().unwrap());
        let continues = match (prev.count, p.count) {
            (1, 1) => false,
            (1, _) => pf - pl == p.diff,
            (_, 1) => pf - pl == prev.diff,
            _ => pf - pl == prev.diff && p.diff == prev.diff,
        };
        if continues {
            let diff = if prev.count == 1 { p.diff } else { prev.diff };
            *prev = ArithProg::new(prev.start, diff, prev.count + p.count);
            return;
        }
    }
    out.push(p);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Oracle;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    const SAMPLE: &[u8] = b"abaababaababa";

    #[test]
    fn sample_covers() {
        let idx = Index::build(SAMPLE).unwrap();
        assert_eq!(idx.min_cover(FactorRef::new(1, 13)).unwrap(), 3);
        assert_eq!(idx.min_cover(FactorRef::new(2, 13)).unwrap(), 7);
        assert_eq!(idx.min_cover_simple(FactorRef::new(2, 13)).unwrap(), 7);
        assert!(idx.is_cover(3, idx.whole()).unwrap());
        assert!(idx.is_cover(13, idx.whole()).unwrap());
        assert!(!idx.is_cover(2, idx.whole()).unwrap());
        assert!(idx.is_cover(0, idx.whole()).is_err());
        let all: Vec<usize> = idx.all_covers(idx.whole()).unwrap().lengths().collect();
        assert_eq!(all, vec![3, 8, 13]);
    }

    #[test]
    fn small_fixtures() {
        let idx = Index::build(b"aaaa").unwrap();
        assert_eq!(
            idx.all_covers(idx.whole()).unwrap().progressions,
            vec![ArithProg::new(1, 1, 4)]
        );
        let idx = Index::build(b"ab").unwrap();
        assert_eq!(
            idx.all_covers(idx.whole()).unwrap().progressions,
            vec![ArithProg::single(2)]
        );
        let idx = Index::build(b"abcdef").unwrap();
        assert_eq!(idx.min_cover(FactorRef::new(2, 5)).unwrap(), 4);
    }

    #[test]
    fn chains_and_candidates() {
        let idx = Index::build(SAMPLE).unwrap();
        let s = idx.whole();
        let ch = idx.chains(&[1, 3, 8, 13], s).unwrap();
        assert_eq!(ch.chains, vec![vec![1], vec![3, 8, 13]]);
        assert_eq!(ch.prev(8), Some(3));
        assert_eq!(ch.prev(3), None);
        assert_eq!(idx.covers_of_candidates(&[1, 3, 8, 13], s).unwrap(), vec![3, 8, 13]);
        assert_eq!(idx.covers_of_candidates(&[13], s).unwrap(), vec![13]);
        assert_eq!(idx.covers_of_candidates(&[2, 13], s), Err(Error::NotABorder(2)));
        assert!(idx.covers_of_candidates(&[3, 8], s).is_err());
    }

    #[test]
    fn two_chain_configuration() {
        // borders 1..=17 form one chain and |S| = 35 another
        let s = b"aaaaaaaaaaaaaaaaabaaaaaaaaaaaaaaaaa";
        let idx = Index::build(&s[..]).unwrap();
        let o = Oracle::default();
        let f = idx.whole();
        let borders: Vec<usize> = idx.borders(f).unwrap().lengths().collect();
        let got = idx.covers_of_candidates(&borders, f).unwrap();
        let want: Vec<usize> = borders
            .iter()
            .copied()
            .filter(|&b| o.naive_is_cover(s, b).unwrap())
            .collect();
        assert_eq!(got, want);
    }

    fn check_all(idx: &Index, s: &[u8], f: FactorRef, o: &Oracle) {
        let sub = &s[f.i - 1..f.j];
        let want = o.naive_covers(sub).unwrap();
        assert_eq!(
            idx.min_cover(f).unwrap(),
            want[0],
            "min_cover {}",
            String::from_utf8_lossy(sub)
        );
        let ans = idx.all_covers(f).unwrap();
        assert_eq!(
            ans.lengths().collect::<Vec<_>>(),
            want,
            "all_covers {}",
            String::from_utf8_lossy(sub)
        );
        let bound = 2 * ceil_log2(sub.len()) as usize + 2;
        assert!(ans.progressions.len() <= bound);
    }

    #[test]
    fn exhaustive_binary_up_to_ten() {
        let o = Oracle::default();
        for n in 1..=10 {
            for mask in 0..(1u32 << n) {
                let s: Vec<u8> = (0..n).map(|b| if mask >> b & 1 == 1 { b'b' } else { b'a' }).collect();
                let idx = Index::build(s.clone()).unwrap();
                for i in 1..=n {
                    for j in i..=n {
                        check_all(&idx, &s, FactorRef::new(i, j), &o);
                    }
                }
            }
        }
    }

    #[test]
    fn is_cover_and_simple_against_oracle() {
        let o = Oracle::default();
        let mut rng = StdRng::seed_from_u64(61);
        for round in 0..200 {
            let n = rng.gen_range(1..=200);
            let s: Vec<u8> = if round % 2 == 0 {
                let root: Vec<u8> = (0..rng.gen_range(1..6)).map(|_| b"ab"[rng.gen_range(0..2)]).collect();
                (0..n)
                    .map(|x| {
                        if rng.gen_ratio(1, 60) {
                            b'b'
                        } else {
                            root[x % root.len()]
                        }
                    })
                    .collect()
            } else {
                (0..n).map(|_| b"ab"[rng.gen_range(0..2)]).collect()
            };
            let idx = Index::build(s.clone()).unwrap();
            for _ in 0..60 {
                let i = rng.gen_range(1..=n);
                let j = rng.gen_range(i..=n);
                let sub = &s[i - 1..j];
                let f = FactorRef::new(i, j);
                for l in o.naive_borders(sub).unwrap() {
                    assert_eq!(idx.is_cover(l, f).unwrap(), o.naive_is_cover(sub, l).unwrap());
                }
                let l = rng.gen_range(1..=sub.len());
                assert_eq!(idx.is_cover(l, f).unwrap(), o.naive_is_cover(sub, l).unwrap());
                assert_eq!(idx.min_cover_simple(f).unwrap(), o.naive_min_cover(sub).unwrap());
                check_all(&idx, &s, f, &o);
            }
        }
    }

    #[test]
    fn min_cover_is_aperiodic_and_transitive() {
        let mut rng = StdRng::seed_from_u64(67);
        for _ in 0..100 {
            let n = rng.gen_range(1..=120);
            let root: Vec<u8> = (0..rng.gen_range(1..8)).map(|_| b"ab"[rng.gen_range(0..2)]).collect();
            let s: Vec<u8> = (0..n)
                .map(|x| {
                    if rng.gen_ratio(1, 50) {
                        b'b'
                    } else {
                        root[x % root.len()]
                    }
                })
                .collect();
            let idx = Index::build(s.clone()).unwrap();
            for _ in 0..30 {
                let i = rng.gen_range(1..=n);
                let j = rng.gen_range(i..=n);
                let f = FactorRef::new(i, j);
                let c = idx.min_cover(f).unwrap();
                assert!(2 * idx.per(f.prefix(c)).unwrap() > c);
                let outer = idx.all_covers(f).unwrap();
                for c in outer.lengths() {
                    for c2 in idx.all_covers(f.prefix(c)).unwrap().lengths() {
                        assert!(outer.contains(c2));
                    }
                }
            }
        }
    }
}
