//! Wavelet matrix over a sequence of small integers: range counting and
//! k-th smallest in `O(log σ)`.

#[derive(Debug, Clone)]
struct RankBits {
    words: Vec<u64>,
    // ones before each word
    prefix: Vec<u32>,
}

impl RankBits {
    fn from_bits(bits: &[bool]) -> Self {
        let mut words = vec![0u64; bits.len() / 64 + 1];
        for (i, &b) in bits.iter().enumerate() {
            if b {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        let mut prefix = Vec::with_capacity(words.len());
        let mut acc = 0u32;
        for w in &words {
            prefix.push(acc);
            acc += w.count_ones();
        }
        RankBits { words, prefix }
    }

    #[inline]
    fn rank1(&self, i: usize) -> usize {
        let (w, b) = (i / 64, i % 64);
        let mask = if b == 0 { 0 } else { u64::MAX >> (64 - b) };
        self.prefix[w] as usize + (self.words[w] & mask).count_ones() as usize
    }

    #[inline]
    fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }
}

#[derive(Debug, Clone)]
pub struct WaveletMatrix {
    len: usize,
    bits: usize,
    // most significant level first
    levels: Vec<RankBits>,
    zeros: Vec<usize>,
}

impl WaveletMatrix {
    pub fn new(values: &[u32]) -> Self {
        let max = values.iter().copied().max().unwrap_or(0);
        let bits = (u32::BITS - max.leading_zeros()).max(1) as usize;
        let mut cur: Vec<u32> = values.to_vec();
        let mut levels = Vec::with_capacity(bits);
        let mut zeros = Vec::with_capacity(bits);
        for level in (0..bits).rev() {
            let flags: Vec<bool> = cur.iter().map(|&v| v >> level & 1 == 1).collect();
            let (lo, hi): (Vec<u32>, Vec<u32>) = cur.iter().partition(|&&v| v >> level & 1 == 0);
            zeros.push(lo.len());
            levels.push(RankBits::from_bits(&flags));
            cur = lo;
            cur.extend(hi);
        }
        WaveletMatrix {
            len: values.len(),
            bits,
            levels,
            zeros,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn access(&self, mut i: usize) -> u32 {
        let mut v = 0u32;
        for (d, bv) in self.levels.iter().enumerate() {
            if bv.get(i) {
                v |= 1 << (self.bits - 1 - d);
                i = self.zeros[d] + bv.rank1(i);
            } else {
                i = bv.rank0(i);
            }
        }
        v
    }

    /// Number of values `< x` among positions `l..r`.
    pub fn count_less(&self, mut l: usize, mut r: usize, x: u64) -> usize {
        if l >= r {
            return 0;
        }
        if x >= 1u64 << self.bits {
            return r - l;
        }
        let mut res = 0;
        for (d, bv) in self.levels.iter().enumerate() {
            let bit = x >> (self.bits - 1 - d) & 1;
            let (l0, r0) = (bv.rank0(l), bv.rank0(r));
            if bit == 1 {
                res += r0 - l0;
                l = self.zeros[d] + (l - l0);
                r = self.zeros[d] + (r - r0);
            } else {
                l = l0;
                r = r0;
            }
        }
        res
    }

    /// Number of values in `[lo, hi)` among positions `l..r`.
    pub fn count_range(&self, l: usize, r: usize, lo: u64, hi: u64) -> usize {
        if lo >= hi {
            return 0;
        }
        self.count_less(l, r, hi) - self.count_less(l, r, lo)
    }

    /// The `k`-th smallest (0-based) value among positions `l..r`.
    pub fn kth_smallest(&self, mut l: usize, mut r: usize, mut k: usize) -> u32 {
        assert!(k < r.saturating_sub(l));
        let mut v = 0u32;
        for (d, bv) in self.levels.iter().enumerate() {
            let (l0, r0) = (bv.rank0(l), bv.rank0(r));
            let z = r0 - l0;
            if k < z {
                l = l0;
                r = r0;
            } else {
                k -= z;
                v |= 1 << (self.bits - 1 - d);
                l = self.zeros[d] + (l - l0);
                r = self.zeros[d] + (r - r0);
            }
        }
        v
    }

    /// Smallest value `>= x` among positions `l..r`.
    pub fn next_value(&self, l: usize, r: usize, x: u64) -> Option<u32> {
        let c = self.count_less(l, r, x);
        (c < r.saturating_sub(l)).then(|| self.kth_smallest(l, r, c))
    }

    /// Largest value `< x` among positions `l..r`.
    pub fn prev_value(&self, l: usize, r: usize, x: u64) -> Option<u32> {
        let c = self.count_less(l, r, x);
        (c > 0).then(|| self.kth_smallest(l, r, c - 1))
    }
}
