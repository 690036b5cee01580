//! Runs (maximal repetitions), grouped by Lyndon root, and the queries that
//! select periodic cover candidates from a border progression.
//!
//! Runs are found with the Lyndon-array method: for both the usual and the
//! reversed alphabet order, the longest Lyndon word starting at each
//! position gives a candidate period, which is then extended in both
//! directions with LCE queries. Every run has its Lyndon root as the longest
//! Lyndon word at some position under one of the two orders.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ipm::ArithProg;
use crate::rmq::RangeMin;
use crate::text::{FactorRef, TextIndex};
use crate::Index;

/// A run `T[a..b]` with shortest period `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RunRecord {
    pub a: usize,
    pub b: usize,
    pub p: usize,
    pub root_id: usize,
    /// Index of this run inside its root group.
    pub root_pos: usize,
}

impl RunRecord {
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.b + 1 - self.a
    }
}

/// All runs sharing one Lyndon root, ordered by start.
#[derive(Debug, Clone)]
pub struct RootGroup {
    pub root_id: usize,
    pub p: usize,
    pub starts: Vec<usize>,
    lens: RangeMin<usize>,
}

impl RootGroup {
    pub fn lens(&self) -> &[usize] {
        self.lens.values()
    }

    /// Shortest run among positions `l..=r` of the group (0-based).
    pub fn min_len(&self, l: usize, r: usize) -> usize {
        self.lens.min(l, r)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Runs {
    records: Vec<RunRecord>,
    groups: Vec<RootGroup>,
    by_start: HashMap<(usize, usize), usize>,
}

/// Next smaller suffix (in `less` order) for every position, `n` if none.
fn next_smaller(n: usize, less: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    let mut nss = vec![n; n];
    let mut stack: Vec<usize> = Vec::new();
    for i in (0..n).rev() {
        while let Some(&top) = stack.last() {
            if less(top, i) {
                break;
            }
            stack.pop();
        }
        nss[i] = stack.last().copied().unwrap_or(n);
        stack.push(i);
    }
    nss
}

impl Runs {
    pub fn compute(text: &TextIndex) -> Runs {
        let n = text.n();
        let isa = text.forward().isa();
        let sym = text.text().symbols();
        // 0-based suffix comparison under the reversed alphabet; a proper
        // prefix is smaller in both orders
        let less_rev = |x: usize, y: usize| -> bool {
            let l = text.lcp_unchecked(x + 1, y + 1);
            match (x + l == n, y + l == n) {
                (true, _) => true,
                (_, true) => false,
                _ => sym[x + l] > sym[y + l],
            }
        };
        let less_fwd = |x: usize, y: usize| isa[x] < isa[y];

        let mut found: HashMap<(usize, usize), usize> = HashMap::new();
        let mut raw: Vec<(usize, usize, usize)> = Vec::new();
        for nss in [next_smaller(n, less_fwd), next_smaller(n, less_rev)] {
            for (x, &end) in nss.iter().enumerate() {
                let p = end - x;
                if end >= n {
                    continue;
                }
                // 1-based from here on
                let i = x + 1;
                let right = i + p - 1 + text.lcp_unchecked(i, i + p);
                let left = i - text.lcs_unchecked(i - 1, i + p - 1);
                if right + 1 - left >= 2 * p && !found.contains_key(&(left, p)) {
                    found.insert((left, p), raw.len());
                    raw.push((left, right, p));
                }
            }
        }
        raw.sort_unstable();

        // Lyndon root: the smallest suffix starting in [a, a + p)
        let isa_min = RangeMin::new(isa.to_vec());
        let mut keyed: Vec<(usize, u32, usize, usize)> = raw
            .iter()
            .enumerate()
            .map(|(r, &(a, _, p))| {
                let k = isa_min.argmin(a - 1, a + p - 2);
                (p, isa[k], k + 1, r)
            })
            .collect();
        keyed.sort_unstable();
        let mut root_of = vec![0usize; raw.len()];
        let mut next_id = 0;
        for t in 0..keyed.len() {
            let (p, _, k, r) = keyed[t];
            if t > 0 {
                let (pp, _, pk, _) = keyed[t - 1];
                if pp != p || text.lcp_unchecked(pk, k) < p {
                    next_id += 1;
                }
            }
            root_of[r] = next_id;
        }
        let group_count = if raw.is_empty() { 0 } else { next_id + 1 };

        let mut starts: Vec<Vec<usize>> = vec![Vec::new(); group_count];
        let mut lens: Vec<Vec<usize>> = vec![Vec::new(); group_count];
        let mut periods = vec![0; group_count];
        let mut records = Vec::with_capacity(raw.len());
        let mut by_start = HashMap::with_capacity(raw.len());
        for (r, &(a, b, p)) in raw.iter().enumerate() {
            let g = root_of[r];
            let root_pos = starts[g].len();
            starts[g].push(a);
            lens[g].push(b + 1 - a);
            periods[g] = p;
            by_start.insert((a, p), records.len());
            records.push(RunRecord {
                a,
                b,
                p,
                root_id: g,
                root_pos,
            });
        }
        let groups = starts
            .into_iter()
            .zip(lens)
            .zip(periods)
            .enumerate()
            .map(|(root_id, ((starts, lens), p))| RootGroup {
                root_id,
                p,
                starts,
                lens: RangeMin::new(lens),
            })
            .collect();
        Runs {
            records,
            groups,
            by_start,
        }
    }

    /// Runs sorted by `(a, p)`.
    pub fn records(&self) -> &[RunRecord] {
        &self.records
    }

    pub fn groups(&self) -> &[RootGroup] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn group(&self, root_id: usize) -> Result<&RootGroup> {
        self.groups.get(root_id).ok_or(Error::UnknownRoot(root_id))
    }

    /// The run starting at `a` with period `p`.
    pub fn find(&self, a: usize, p: usize) -> Option<&RunRecord> {
        self.by_start.get(&(a, p)).map(|&r| &self.records[r])
    }
}

/// Keeps the prefix `A ∩ [1..c]` of a border progression, where `c` is the
/// largest tested candidate that turned out to be a cover. Cover lengths in
/// a progression always form a prefix, so a rejected candidate below `c` is
/// reported as an error.
pub fn cut_progression(a: ArithProg, verdicts: &[(usize, bool)]) -> Result<ArithProg> {
    let Some(c) = verdicts.iter().filter(|v| v.1).map(|v| v.0).max() else {
        return Ok(ArithProg::EMPTY);
    };
    if verdicts.iter().any(|&(x, ok)| !ok && x <= c) {
        return Err(Error::NotAPrefix);
    }
    Ok(a.clip(1, c))
}

impl Index {
    /// Start of the run with period `p` through the periodic factor
    /// `T[x..y]` (which must have period `p`).
    fn run_start(&self, x: usize, p: usize) -> usize {
        x - self.text.lcs_unchecked(x - 1, x + p - 1)
    }

    fn run_record(&self, x: usize, p: usize) -> Result<&RunRecord> {
        let a = self.run_start(x, p);
        self.runs
            .find(a, p)
            .ok_or_else(|| Error::Invariant(format!("no run with period {p} starting at {a}")))
    }

    /// The run with period `per(S)` containing `S`, if `S` is periodic.
    pub fn run_of(&self, s: FactorRef) -> Result<Option<RunRecord>> {
        self.check(s)?;
        let p = self.per_unchecked(s);
        if s.len() < 2 * p {
            return Ok(None);
        }
        self.run_record(s.i, p).map(|r| Some(*r))
    }

    /// Minimum length of a run of `S` with period `p` and the given Lyndon
    /// root, measuring the runs touching either end of `S` only within `S`.
    /// `S` must start with such a run. `None` when `S` does not also end
    /// with one.
    pub fn min_run_length_x(&self, s: FactorRef, p: usize, root_id: usize) -> Result<Option<usize>> {
        self.check(s)?;
        let group = self.runs.group(root_id)?;
        if group.p != p {
            return Err(Error::Precondition(format!(
                "root {root_id} has period {}, not {p}",
                group.p
            )));
        }
        let m = s.len();
        if p == 0 || m < 2 * p {
            return Err(Error::Precondition("factor too short for a prefix run".into()));
        }
        let ell = (p + self.text.lcp_unchecked(s.i, s.i + p)).min(m);
        if ell < 2 * p {
            return Err(Error::Precondition(format!("no prefix run with period {p}")));
        }
        let first = self.run_record(s.i, p)?;
        if first.root_id != root_id {
            return Err(Error::Precondition(format!(
                "prefix run has root {}, not {root_id}",
                first.root_id
            )));
        }
        if ell == m {
            return Ok(Some(m));
        }
        let ell_s = (p + self.text.lcs_unchecked(s.j, s.j - p)).min(m);
        if ell_s < 2 * p {
            return Ok(None);
        }
        // the suffix may have a shorter period than p, in which case no run
        // with period p ends there
        let Some(last) = self.runs.find(self.run_start(s.j + 1 - ell_s, p), p) else {
            return Ok(None);
        };
        if last.root_id != root_id || last.root_pos <= first.root_pos {
            return Ok(None);
        }
        let mut best = ell.min(ell_s);
        if last.root_pos > first.root_pos + 1 {
            best = best.min(group.min_len(first.root_pos + 1, last.root_pos - 1));
        }
        Ok(Some(best))
    }

    /// Up to four lengths of the border progression `a` of `S` that decide
    /// which elements of `a` are covers: the two smallest elements and the
    /// elements in `(r - 2p, r]`, where `r` is the shortest run length with
    /// the matching Lyndon root inside `S`.
    pub fn periodic_candidates(&self, s: FactorRef, a: ArithProg) -> Result<Vec<usize>> {
        self.check(s)?;
        let m = s.len();
        for b in [a.first(), a.get(1), a.last()].into_iter().flatten() {
            if b == 0 || b > m || self.text.lcs_unchecked(s.i + b - 1, s.j) < b {
                return Err(Error::NotABorder(b));
            }
        }
        let Some(first) = a.first() else {
            return Ok(Vec::new());
        };
        if a.count == 1 {
            return Ok(vec![first]);
        }
        let p = a.diff;
        let mut out = vec![first, first + p];
        if m >= 2 * p && self.text.lcp_unchecked(s.i, s.i + p) >= p {
            let root = self.run_record(s.i, p)?.root_id;
            if let Some(r) = self.min_run_length_x(s, p, root)? {
                let lo = (r + 1).saturating_sub(2 * p).max(1);
                out.extend(a.clip(lo, r).iter().filter(|&x| x > first + p));
            }
        }
        Ok(out)
    }
}
