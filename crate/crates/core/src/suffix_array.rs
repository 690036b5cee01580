//! Suffix array by prefix doubling with radix sorting, and Kasai's LCP.

/// Sorts the suffixes of `s` (symbols in `0..sigma`). Returns 0-based
/// starting positions in lexicographic order; a proper prefix sorts first.
pub fn suffix_array(s: &[u32], sigma: usize) -> Vec<u32> {
    let n = s.len();
    if n == 0 {
        return Vec::new();
    }
    let mut sa: Vec<u32> = vec![0; n];
    let mut rank: Vec<u32> = s.to_vec();
    let mut tmp: Vec<u32> = vec![0; n];
    let mut second: Vec<u32> = Vec::with_capacity(n);
    let mut count: Vec<u32> = vec![0; sigma.max(n) + 1];

    // initial counting sort by symbol
    for &c in s {
        count[c as usize + 1] += 1;
    }
    for c in 1..count.len() {
        count[c] += count[c - 1];
    }
    for (i, &c) in s.iter().enumerate() {
        let slot = &mut count[c as usize];
        sa[*slot as usize] = i as u32;
        *slot += 1;
    }

    let mut classes = sigma.max(1);
    let mut k = 1usize;
    loop {
        // order by second key: suffixes without a second half come first
        second.clear();
        second.extend((n.saturating_sub(k)..n).map(|i| i as u32));
        second.extend(sa.iter().filter(|&&p| p as usize >= k).map(|&p| p - k as u32));

        // stable counting sort by first key
        count[..=classes].iter_mut().for_each(|c| *c = 0);
        for &r in &rank {
            count[r as usize + 1] += 1;
        }
        for c in 1..=classes {
            count[c] += count[c - 1];
        }
        for &p in &second {
            let slot = &mut count[rank[p as usize] as usize];
            sa[*slot as usize] = p;
            *slot += 1;
        }

        let key = |p: usize, rank: &[u32]| {
            let hi = rank[p];
            let lo = if p + k < n { rank[p + k] as i64 } else { -1 };
            (hi, lo)
        };
        tmp[sa[0] as usize] = 0;
        let mut cls = 0u32;
        for w in 1..n {
            if key(sa[w] as usize, &rank) != key(sa[w - 1] as usize, &rank) {
                cls += 1;
            }
            tmp[sa[w] as usize] = cls;
        }
        std::mem::swap(&mut rank, &mut tmp);
        classes = cls as usize + 1;
        if classes == n {
            break;
        }
        k *= 2;
    }
    sa
}

/// Kasai et al.: `lcp[r]` is the longest common prefix of suffixes
/// `sa[r-1]` and `sa[r]`; `lcp[0] = 0`.
pub fn lcp_array(s: &[u32], sa: &[u32], isa: &[u32]) -> Vec<u32> {
    let n = s.len();
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = isa[i] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1] as usize;
        while i + h < n && j + h < n && s[i + h] == s[j + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

pub fn inverse(sa: &[u32]) -> Vec<u32> {
    let mut isa = vec![0u32; sa.len()];
    for (r, &p) in sa.iter().enumerate() {
        isa[p as usize] = r as u32;
    }
    isa
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn naive(s: &[u32]) -> Vec<u32> {
        let mut v: Vec<u32> = (0..s.len() as u32).collect();
        v.sort_by(|&a, &b| s[a as usize..].cmp(&s[b as usize..]));
        v
    }

    #[test]
    fn matches_naive_sort() {
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..500 {
            let n = rng.gen_range(1..80);
            let sigma = rng.gen_range(1..4);
            let s: Vec<u32> = (0..n).map(|_| rng.gen_range(0..sigma)).collect();
            let sa = suffix_array(&s, sigma as usize);
            assert_eq!(sa, naive(&s), "{s:?}");
            let isa = inverse(&sa);
            let lcp = lcp_array(&s, &sa, &isa);
            for r in 1..n {
                let (a, b) = (sa[r - 1] as usize, sa[r] as usize);
                let l = s[a..].iter().zip(&s[b..]).take_while(|(x, y)| x == y).count();
                assert_eq!(lcp[r] as usize, l);
            }
        }
    }

    #[test]
    fn unary_and_two_letters() {
        assert_eq!(suffix_array(&[0, 0], 1), vec![1, 0]);
        assert_eq!(suffix_array(&[0, 1], 2), vec![0, 1]);
        assert_eq!(suffix_array(&[0], 1), vec![0]);
    }
}
