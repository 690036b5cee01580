//! Sparse-table range minimum queries.
//!
//! `O(n log n)` preprocessing, `O(1)` per query. Ties resolve to the leftmost
//! position. Wrap values in [`std::cmp::Reverse`] to get range maxima.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct RangeMin<T> {
    values: Vec<T>,
    // table[k][i] = argmin of values[i .. i + 2^k]
    table: Vec<Vec<u32>>,
}

impl<T: Ord + Copy> RangeMin<T> {
    pub fn new(values: Vec<T>) -> Self {
        assert!(values.len() <= u32::MAX as usize);
        let n = values.len();
        let mut table: Vec<Vec<u32>> = Vec::new();
        if n > 0 {
            table.push((0..n as u32).collect());
        }
        let mut k = 1;
        while (1usize << k) <= n {
            let half = 1usize << (k - 1);
            let prev = &table[k - 1];
            let row: Vec<u32> = (0..=n - (1 << k))
                .map(|i| {
                    let a = prev[i];
                    let b = prev[i + half];
                    if values[b as usize] < values[a as usize] {
                        b
                    } else {
                        a
                    }
                })
                .collect();
            table.push(row);
            k += 1;
        }
        RangeMin { values, table }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Position of the minimum of `values[l..=r]` (0-based, inclusive).
    /// The caller guarantees `l <= r < len`.
    #[inline]
    pub fn argmin(&self, l: usize, r: usize) -> usize {
        debug_assert!(l <= r && r < self.values.len());
        let k = usize::BITS as usize - 1 - (r - l + 1).leading_zeros() as usize;
        let a = self.table[k][l] as usize;
        let b = self.table[k][r + 1 - (1 << k)] as usize;
        if self.values[b] < self.values[a] {
            b
        } else {
            a
        }
    }

    #[inline]
    pub fn min(&self, l: usize, r: usize) -> T {
        self.values[self.argmin(l, r)]
    }

    /// Checked query over the 1-based inclusive range `[l..r]`; returns the
    /// minimum and its 1-based position.
    pub fn query(&self, l: usize, r: usize) -> Result<(T, usize)> {
        if l == 0 || l > r || r > self.values.len() {
            return Err(Error::EmptyRange {
                l,
                r,
                len: self.values.len(),
            });
        }
        let p = self.argmin(l - 1, r - 1);
        Ok((self.values[p], p + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};
    use std::cmp::Reverse;

    #[test]
    fn singleton_and_small() {
        let r = RangeMin::new(vec![5]);
        assert_eq!(r.query(1, 1).unwrap(), (5, 1));
        let r = RangeMin::new(vec![3, 1, 2]);
        assert_eq!(r.query(1, 3).unwrap(), (1, 2));
        assert_eq!(r.query(3, 3).unwrap(), (2, 3));
    }

    #[test]
    fn empty_ranges_are_errors() {
        let r = RangeMin::new(vec![3, 1, 2]);
        assert!(r.query(0, 1).is_err());
        assert!(r.query(3, 2).is_err());
        assert!(r.query(1, 4).is_err());
        let e: RangeMin<u32> = RangeMin::new(vec![]);
        assert!(e.query(1, 1).is_err());
    }

    #[test]
    fn ties_resolve_leftmost() {
        let r = RangeMin::new(vec![4, 2, 7, 2, 2]);
        assert_eq!(r.query(1, 5).unwrap(), (2, 2));
        assert_eq!(r.query(3, 5).unwrap(), (2, 4));
    }

    #[test]
    fn agrees_with_linear_scan() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..10_000 {
            let n = rng.gen_range(1..60);
            let v: Vec<i32> = (0..n).map(|_| rng.gen_range(-5..5)).collect();
            let table = RangeMin::new(v.clone());
            let l = rng.gen_range(1..=n);
            let r = rng.gen_range(l..=n);
            let mut best = (v[l - 1], l);
            for p in l..=r {
                if v[p - 1] < best.0 {
                    best = (v[p - 1], p);
                }
            }
            assert_eq!(table.query(l, r).unwrap(), best);
        }
    }

    #[test]
    fn reverse_gives_maxima() {
        let r = RangeMin::new(vec![Reverse(1), Reverse(9), Reverse(3)]);
        assert_eq!(r.min(0, 2).0, 9);
    }
}
