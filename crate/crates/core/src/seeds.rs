//! Seeds of basic factors and the covered-prefix queries built on them.
//!
//! For every basic factor `B = T[a..a+2^k)` with `k >= 1` we store, for each
//! node of the (implicit) suffix tree of `B`, the lengths on its edge that
//! spell seeds of `B` no longer than `|B| / 2`. Nodes are addressed by their
//! rank interval in the local suffix array of `B`.
//!
//! A string `C` of length `c` with occurrences `f = o_1 < ... < o_r = e` in
//! `B` (1-based, local) is a seed of `B` iff the gaps `o_{t+1} - o_t` are at
//! most `c`, the positions before `f` are covered by an occurrence hanging
//! over the left end, and the positions after `e + c - 1` by one hanging over
//! the right end. A left-hanging occurrence shifted by `P` exists iff
//! `B[1..f+c-1-P] = B[P+1..f+c-1]` for some `P` in `[f, c]`, i.e. iff
//! `max_{P in [f, c]} (lcp_B(1, P+1) + P) >= f + c - 1`; the right end is
//! symmetric with suffix comparisons.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::ipm::push_interval;
use crate::rmq::RangeMin;
use crate::text::{FactorRef, TextIndex};
use crate::Index;

/// `[a .. a + 2^k)` with `2^k` dividing `a - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasicInterval {
    pub a: usize,
    pub k: u32,
}

impl BasicInterval {
    pub fn new(a: usize, k: u32) -> Result<Self> {
        if a == 0 || k >= usize::BITS - 1 || !(a - 1).is_multiple_of(1usize << k) {
            return Err(Error::Precondition(format!("[{a}..{a}+2^{k}) is not a basic interval")));
        }
        Ok(BasicInterval { a, k })
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        1 << self.k
    }

    pub fn end(&self) -> usize {
        self.a + self.len() - 1
    }

    pub fn factor(&self) -> FactorRef {
        FactorRef::new(self.a, self.end())
    }
}

/// Seed lengths stored for one suffix-tree node of a basic factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Locus {
    /// Rank interval (0-based, inclusive) in the local suffix array.
    pub lo: u32,
    pub hi: u32,
    /// Disjoint, sorted, inclusive intervals of seed lengths.
    pub lengths: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedSetNode {
    pub interval: BasicInterval,
    /// Local suffix array of the basic factor (0-based offsets).
    pub local_sa: Vec<u32>,
    local_isa: Vec<u32>,
    /// Sorted by `(lo, hi)`.
    pub loci: Vec<Locus>,
}

impl SeedSetNode {
    pub(crate) fn from_parts(interval: BasicInterval, local_sa: Vec<u32>, loci: Vec<Locus>) -> Result<Self> {
        let len = interval.len();
        if local_sa.len() != len {
            return Err(Error::Format(format!(
                "local suffix array of length {} for a block of {len}",
                local_sa.len()
            )));
        }
        let mut local_isa = vec![u32::MAX; len];
        for (r, &x) in local_sa.iter().enumerate() {
            match local_isa.get_mut(x as usize) {
                Some(slot) if *slot == u32::MAX => *slot = r as u32,
                _ => return Err(Error::Format("local suffix array is not a permutation".into())),
            }
        }
        if !loci.windows(2).all(|w| (w[0].lo, w[0].hi) < (w[1].lo, w[1].hi))
            || loci.iter().any(|l| l.lo > l.hi || l.hi as usize >= len)
        {
            return Err(Error::Format("seed loci out of order or out of range".into()));
        }
        Ok(SeedSetNode {
            interval,
            local_sa,
            local_isa,
            loci,
        })
    }

    fn locus(&self, lo: usize, hi: usize) -> Option<&Locus> {
        self.loci
            .binary_search_by(|l| (l.lo as usize, l.hi as usize).cmp(&(lo, hi)))
            .ok()
            .map(|t| &self.loci[t])
    }
}

/// Seed sets of all basic factors of length at least 2.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SeedSets {
    n: usize,
    // levels[k][(a - 1) >> k]; level 0 is empty
    levels: Vec<Vec<SeedSetNode>>,
}

/// Occurrence positions with a multiset of gaps, merged small-to-large.
#[derive(Default)]
struct OccSet {
    pos: BTreeSet<u32>,
    gaps: BTreeMap<u32, u32>,
}

impl OccSet {
    fn single(x: u32) -> Self {
        let mut s = OccSet::default();
        s.pos.insert(x);
        s
    }

    fn add_gap(&mut self, g: u32) {
        *self.gaps.entry(g).or_insert(0) += 1;
    }

    fn remove_gap(&mut self, g: u32) {
        if let Some(c) = self.gaps.get_mut(&g) {
            *c -= 1;
            if *c == 0 {
                self.gaps.remove(&g);
            }
        }
    }

    fn insert(&mut self, x: u32) {
        let pred = self.pos.range(..x).next_back().copied();
        let succ = self.pos.range(x + 1..).next().copied();
        if let (Some(p), Some(s)) = (pred, succ) {
            self.remove_gap(s - p);
        }
        if let Some(p) = pred {
            self.add_gap(x - p);
        }
        if let Some(s) = succ {
            self.add_gap(s - x);
        }
        self.pos.insert(x);
    }

    fn merge(mut self, mut other: OccSet) -> OccSet {
        if self.pos.len() < other.pos.len() {
            std::mem::swap(&mut self, &mut other);
        }
        for x in other.pos {
            self.insert(x);
        }
        self
    }

    fn first(&self) -> usize {
        *self.pos.first().unwrap() as usize
    }

    fn last(&self) -> usize {
        *self.pos.last().unwrap() as usize
    }

    fn max_gap(&self) -> usize {
        self.gaps.last_key_value().map_or(0, |(&g, _)| g as usize)
    }
}

struct NodeBuilder<'a> {
    text: &'a TextIndex,
    a: usize,
    len: usize,
    // lcp_B(1, P+1) + P and lcs_B(len, len-P) + P, for shifts P in 1..len
    left: RangeMin<Reverse<usize>>,
    right: RangeMin<Reverse<usize>>,
    loci: Vec<Locus>,
}

impl<'a> NodeBuilder<'a> {
    fn new(text: &'a TextIndex, a: usize, len: usize) -> Self {
        let end = a + len - 1;
        let left = (0..len)
            .map(|p| {
                Reverse(if p == 0 {
                    0
                } else {
                    text.lcp_unchecked(a, a + p).min(len - p) + p
                })
            })
            .collect();
        let right = (0..len)
            .map(|p| {
                Reverse(if p == 0 {
                    0
                } else {
                    text.lcs_unchecked(end, end - p).min(len - p) + p
                })
            })
            .collect();
        NodeBuilder {
            text,
            a,
            len,
            left: RangeMin::new(left),
            right: RangeMin::new(right),
            loci: Vec::new(),
        }
    }

    /// Truncated LCE of two 0-based offsets inside the block.
    fn lce(&self, x: usize, y: usize) -> usize {
        self.text
            .lcp_unchecked(self.a + x, self.a + y)
            .min(self.len - x)
            .min(self.len - y)
    }

    fn local_sa(&self) -> Vec<u32> {
        let mut sa: Vec<u32> = (0..self.len as u32).collect();
        sa.sort_unstable_by(|&x, &y| {
            let (x, y) = (x as usize, y as usize);
            let l = self.lce(x, y);
            if l == self.len - x || l == self.len - y {
                (self.len - x).cmp(&(self.len - y))
            } else {
                self.text.byte(self.a + x + l).cmp(&self.text.byte(self.a + y + l))
            }
        });
        sa
    }

    fn is_seed_len(&self, f: usize, e: usize, c: usize) -> bool {
        let len = self.len;
        if f > 1 && (f > c || self.left.min(f, c).0 < f + c - 1) {
            return false;
        }
        if e + c - 1 < len {
            let g = len + 2 - e - c;
            if g > c || self.right.min(g, c).0 < len + 1 - e {
                return false;
            }
        }
        true
    }

    /// Records the seed lengths in `(pd, d]` for a node with occurrence set
    /// `occ` (0-based offsets) and rank interval `[lo, hi]`.
    fn emit(&mut self, lo: usize, hi: usize, pd: usize, d: usize, occ: &OccSet) {
        let (f, e) = (occ.first() + 1, occ.last() + 1);
        let half = self.len / 2;
        let from = (pd + 1).max(occ.max_gap()).max(1);
        let to = d.min(half);
        let mut lengths = Vec::new();
        for c in from..=to {
            if self.is_seed_len(f, e, c) {
                push_interval(&mut lengths, c, c);
            }
        }
        if !lengths.is_empty() {
            self.loci.push(Locus {
                lo: lo as u32,
                hi: hi as u32,
                lengths: lengths.into_iter().map(|(x, y)| (x as u32, y as u32)).collect(),
            });
        }
    }

    fn build(mut self, interval: BasicInterval) -> SeedSetNode {
        let len = self.len;
        let sa = self.local_sa();
        let lcp: Vec<usize> = (0..=len)
            .map(|r| {
                if r == 0 || r == len {
                    0
                } else {
                    self.lce(sa[r - 1] as usize, sa[r] as usize)
                }
            })
            .collect();
        // bottom-up traversal of lcp intervals: (depth, left bound, occurrences)
        let mut stack: Vec<(usize, usize, OccSet)> = vec![(0, 0, OccSet::default())];
        for r in 0..len {
            let x = sa[r] as usize;
            let leaf = OccSet::single(x as u32);
            self.emit(r, r, lcp[r].max(lcp[r + 1]), len - x, &leaf);
            let h = lcp[r + 1];
            let (mut cur, mut lb) = (leaf, r);
            while stack.last().unwrap().0 > h {
                let (th, tlb, tset) = stack.pop().unwrap();
                let merged = tset.merge(cur);
                let pd = h.max(stack.last().unwrap().0);
                self.emit(tlb, r, pd, th, &merged);
                cur = merged;
                lb = tlb;
            }
            let top = stack.last_mut().unwrap();
            if top.0 == h {
                let prev = std::mem::take(&mut top.2);
                top.2 = prev.merge(cur);
            } else {
                stack.push((h, lb, cur));
            }
        }
        let mut loci = self.loci;
        loci.sort_unstable_by_key(|l| (l.lo, l.hi));
        let mut local_isa = vec![0u32; len];
        for (r, &x) in sa.iter().enumerate() {
            local_isa[x as usize] = r as u32;
        }
        SeedSetNode {
            interval,
            local_sa: sa,
            local_isa,
            loci,
        }
    }
}

impl SeedSets {
    pub fn build(text: &TextIndex) -> SeedSets {
        let n = text.n();
        let mut levels = vec![Vec::new()];
        let mut k = 1;
        while (1usize << k) <= n {
            let len = 1usize << k;
            let level = (0..n / len)
                .map(|t| {
                    let interval = BasicInterval { a: t * len + 1, k };
                    NodeBuilder::new(text, interval.a, len).build(interval)
                })
                .collect();
            levels.push(level);
            k += 1;
        }
        SeedSets { n, levels }
    }

    pub(crate) fn from_parts(n: usize, nodes: Vec<SeedSetNode>) -> Result<SeedSets> {
        let mut sets = SeedSets {
            n,
            levels: vec![Vec::new()],
        };
        let mut k = 1;
        while (1usize << k) <= n {
            sets.levels.push(Vec::with_capacity(n >> k));
            k += 1;
        }
        for node in nodes {
            let BasicInterval { a, k } = node.interval;
            let level = sets
                .levels
                .get_mut(k as usize)
                .filter(|_| k >= 1)
                .ok_or_else(|| Error::Format(format!("seed node at level {k}")))?;
            if (a - 1) >> k != level.len() || node.interval.end() > n {
                return Err(Error::Format(format!("seed node [{a}..+2^{k}) out of order")));
            }
            level.push(node);
        }
        for (k, level) in sets.levels.iter().enumerate().skip(1) {
            if level.len() != n >> k {
                return Err(Error::Format(format!(
                    "level {k} has {} seed nodes, expected {}",
                    level.len(),
                    n >> k
                )));
            }
        }
        Ok(sets)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn node(&self, b: BasicInterval) -> Option<&SeedSetNode> {
        self.levels.get(b.k as usize)?.get((b.a - 1) >> b.k)
    }

    pub fn nodes(&self) -> impl Iterator<Item = &SeedSetNode> {
        self.levels.iter().flatten()
    }

    /// Total number of stored length intervals.
    pub fn stored_intervals(&self) -> usize {
        self.nodes().flat_map(|nd| &nd.loci).map(|l| l.lengths.len()).sum()
    }
}

pub(crate) fn ceil_log2(x: usize) -> u32 {
    if x <= 1 {
        0
    } else {
        usize::BITS - (x - 1).leading_zeros()
    }
}

impl Index {
    /// Seeds of `B` of length at most `|B| / 2`, one factor per distinct
    /// string.
    pub fn seeds_of(&self, b: BasicInterval) -> Result<Vec<FactorRef>> {
        let node = self.basic_node(b)?;
        let mut out = Vec::new();
        for locus in &node.loci {
            let start = b.a + node.local_sa[locus.lo as usize] as usize;
            for &(lo, hi) in &locus.lengths {
                out.extend((lo..=hi).map(|c| FactorRef::new(start, start + c as usize - 1)));
            }
        }
        Ok(out)
    }

    fn basic_node(&self, b: BasicInterval) -> Result<&SeedSetNode> {
        BasicInterval::new(b.a, b.k)?;
        if b.k == 0 || b.end() > self.n() {
            return Err(Error::Precondition(format!("no stored basic factor {}", b.factor())));
        }
        self.seeds
            .node(b)
            .ok_or_else(|| Error::Precondition(format!("no stored basic factor {}", b.factor())))
    }

    /// `SeededBasic(C, B)`: whether `T[c]` is a seed of the basic factor `B`.
    pub fn seeded_basic(&self, c: FactorRef, b: BasicInterval) -> Result<bool> {
        self.check(c)?;
        let node = self.basic_node(b)?;
        if 2 * c.len() > b.len() {
            return Err(Error::Precondition(format!(
                "2|C| = {} exceeds |B| = {}",
                2 * c.len(),
                b.len()
            )));
        }
        Ok(self.seeded_node(node, c.i, c.len()))
    }

    pub(crate) fn seeded_basic_unchecked(&self, cp: usize, clen: usize, a: usize, k: u32) -> bool {
        let node = self
            .seeds
            .node(BasicInterval { a, k })
            .expect("basic factor inside the text");
        self.seeded_node(node, cp, clen)
    }

    fn seeded_node(&self, node: &SeedSetNode, cp: usize, clen: usize) -> bool {
        let a = node.interval.a;
        let len = node.interval.len();
        // a seed occurs in every window of length 2|C|
        let Some(g) = self.occurrences(cp, clen, a, a + clen).first() else {
            return false;
        };
        let x = g - a;
        let sa = &node.local_sa;
        let reaches = |r: usize| {
            let y = sa[r] as usize;
            y + clen <= len && self.text.lcp_unchecked(a + y, g) >= clen
        };
        let rk = node.local_isa[x] as usize;
        let (mut lo, mut hi) = (0, rk);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if reaches(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let first = lo;
        let (mut lo, mut hi) = (rk, len - 1);
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if reaches(mid) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let c = clen as u32;
        node.locus(first, lo)
            .is_some_and(|l| l.lengths.iter().any(|&(x, y)| x <= c && c <= y))
    }

    /// `TestConcat(C, i, j, k)`: given that `T[c]` is a seed of `T[i..j]` and
    /// of `T[j+1..k]`, whether it is a seed of `T[i..k]`.
    pub fn test_concat(&self, c: FactorRef, i: usize, j: usize, k: usize) -> Result<bool> {
        self.check(c)?;
        let clen = c.len();
        if i == 0 || i > j || j >= k || k > self.n() || 2 * clen > j + 1 - i || 2 * clen > k - j {
            return Err(Error::Precondition(format!(
                "TestConcat needs 2|C| <= |T[{i}..{j}]|, |T[{}..{k}]|",
                j + 1
            )));
        }
        Ok(self.test_concat_unchecked(c.i, clen, j))
    }

    pub(crate) fn test_concat_unchecked(&self, cp: usize, clen: usize, j: usize) -> bool {
        let (lo, hi) = (j + 1 - clen, j + clen);
        self.cov_abs(cp, clen, j + 1 - 2 * clen, j + 2 * clen)
            .iter()
            .any(|&(x, y)| x <= lo && hi <= y)
    }

    /// `rank(i)`: the largest `k` such that `[i .. i + 2^k)` is a basic
    /// interval of the text padded to a power of two.
    pub fn rank(&self, i: usize) -> Result<u32> {
        if i == 0 || i > self.n() {
            return Err(Error::PositionOutOfRange { pos: i, n: self.n() });
        }
        Ok(self.rank_unchecked(i))
    }

    pub(crate) fn rank_unchecked(&self, i: usize) -> u32 {
        let top = ceil_log2(self.n());
        if i == 1 {
            top
        } else {
            (i - 1).trailing_zeros().min(top)
        }
    }

    fn test_extend(&self, cp: usize, clen: usize, last: usize, k: u32, end: usize) -> bool {
        let step = 1usize << k;
        last + step <= end
            && self.seeded_basic_unchecked(cp, clen, last + 1, k)
            && self.test_concat_unchecked(cp, clen, last)
    }

    /// `SeededBasicPref(C, ℓ, S)` where `S` is a concatenation of basic
    /// factors of length `2^p`, `p = 1 + ⌈log ℓ⌉`: the length of the longest
    /// prefix of `S` made of whole blocks of which `T[c]` is a seed.
    pub fn seeded_basic_pref(&self, c: FactorRef, l: usize, s: FactorRef) -> Result<usize> {
        self.check(c)?;
        self.check(s)?;
        if c.len() != l {
            return Err(Error::Precondition(format!("|C| = {} but ℓ = {l}", c.len())));
        }
        let block = 1usize << (1 + ceil_log2(l));
        if !(s.i - 1).is_multiple_of(block) || !s.len().is_multiple_of(block) {
            return Err(Error::Precondition(format!("{s} is not aligned to blocks of {block}")));
        }
        Ok(self.seeded_basic_pref_unchecked(c.i, l, s.i, s.j))
    }

    pub(crate) fn seeded_basic_pref_unchecked(&self, cp: usize, l: usize, start: usize, end: usize) -> usize {
        let p = 1 + ceil_log2(l);
        if !self.seeded_basic_unchecked(cp, l, start, p) {
            return 0;
        }
        let mut last = start + (1 << p) - 1;
        let mut k = p;
        // doubling phase
        loop {
            debug_assert!(last + 1 - start >= 1 << k);
            #[cfg(debug_assertions)]
            if last + 1 - start <= 64 {
                let u = self.text.factor_bytes(FactorRef::new(start, last));
                let c = self.text.factor_bytes(FactorRef::new(cp, cp + l - 1));
                debug_assert!(crate::oracle::Oracle::default().naive_is_seed(u, c).unwrap_or(false));
            }
            debug_assert!(last >= end || self.rank_unchecked(last + 1) >= k);
            if last >= end {
                return end + 1 - start;
            }
            if !self.test_extend(cp, l, last, k, end) {
                break;
            }
            last += 1 << k;
            if last < end && self.rank_unchecked(last + 1) > k {
                k += 1;
            }
        }
        // binary search phase
        while k > p {
            k -= 1;
            if last >= end {
                return end + 1 - start;
            }
            if self.test_extend(cp, l, last, k, end) {
                last += 1 << k;
            }
        }
        last + 1 - start
    }

    /// Longest prefix of `[fi..fj]` covered by occurrences of `T[cp..cp+clen)`
    /// inside `[fi..fj]`, by direct coverage computation.
    fn covered_pref_direct(&self, cp: usize, clen: usize, fi: usize, fj: usize) -> usize {
        self.covered_run_from(cp, clen, fi, fj, fi).map_or(0, |e| e + 1 - fi)
    }

    /// `CoveredPref(ℓ, S)`: length of the longest prefix of `S` covered by
    /// occurrences of `S[1..ℓ]` within `S`.
    pub fn covered_pref(&self, l: usize, s: FactorRef) -> Result<usize> {
        self.check(s)?;
        if l == 0 || l > s.len() {
            return Err(Error::LengthOutOfRange { len: l, max: s.len() });
        }
        Ok(self.covered_pref_unchecked(l, s))
    }

    pub(crate) fn covered_pref_unchecked(&self, l: usize, s: FactorRef) -> usize {
        let m = s.len();
        let cp = s.i;
        if m <= 6 * l {
            return self.covered_pref_direct(cp, l, s.i, s.j);
        }
        // short answers are decided by the first 6ℓ positions alone
        let quick = self.covered_pref_direct(cp, l, s.i, s.i + 6 * l - 1);
        if quick <= 5 * l {
            return quick;
        }
        let p = 1 + ceil_log2(l);
        let block = 1usize << p;
        let i2 = (s.i - 1).div_ceil(block) * block + 1;
        let j2 = s.j / block * block;
        if i2 > j2 {
            return self.covered_pref_direct(cp, l, s.i, s.j);
        }
        let d = self.seeded_basic_pref_unchecked(cp, l, i2, j2);
        // the covered prefix ends within 2^p of i2 + d - 1
        let lo = (i2 + d).saturating_sub(block).max(s.i);
        let hi = (i2 + d + block - 1).min(s.j);
        let wlo = lo.saturating_sub(l - 1).max(s.i);
        let whi = (hi + l - 1).min(s.j);
        let cov = self.cov_abs(cp, l, wlo, whi);
        let first_gap = {
            let mut x = lo;
            for &(a, b) in &cov {
                if b < x {
                    continue;
                }
                if a > x {
                    break;
                }
                x = b + 1;
            }
            x
        };
        if first_gap <= hi {
            return first_gap - s.i;
        }
        if hi == s.j {
            return m;
        }
        self.covered_pref_direct(cp, l, s.i, s.j)
    }

    /// Canonical decomposition of `[i..j]` into maximal basic intervals.
    pub fn decompose(&self, i: usize, j: usize) -> Result<Vec<BasicInterval>> {
        FactorRef::new(i, j).validate(self.n())?;
        Ok(decompose(i, j))
    }
}

pub(crate) fn decompose(i: usize, j: usize) -> Vec<BasicInterval> {
    let mut out = Vec::new();
    let mut x = i;
    while x <= j {
        let mut k = if x == 1 {
            usize::BITS - 1
        } else {
            (x - 1).trailing_zeros()
        };
        while x + (1usize << k) - 1 > j {
            k -= 1;
        }
        out.push(BasicInterval { a: x, k });
        x += 1 << k;
    }
    out
}
