//! The text, factor references and the suffix-array based LCE index.
//!
//! Positions in the public API are 1-based and inclusive, matching the way
//! factors `T[i..j]` are usually written. Internally everything is 0-based.

use std::fmt;

use crate::error::{Error, Result};
use crate::rmq::RangeMin;
use crate::suffix_array::{inverse, lcp_array, suffix_array};

/// Raw bytes plus their renumbering onto a dense alphabet `0..sigma`.
#[derive(Debug, Clone)]
pub struct Text {
    bytes: Vec<u8>,
    symbols: Vec<u32>,
    sigma: usize,
}

impl Text {
    pub fn new(bytes: impl Into<Vec<u8>>) -> Result<Self> {
        let bytes = bytes.into();
        if bytes.is_empty() {
            return Err(Error::EmptyText);
        }
        if bytes.len() >= u32::MAX as usize / 2 {
            return Err(Error::TextTooLong(bytes.len()));
        }
        let mut present = [false; 256];
        for &b in &bytes {
            present[b as usize] = true;
        }
        let mut code = [0u32; 256];
        let mut sigma = 0;
        for b in 0..256 {
            if present[b] {
                code[b] = sigma as u32;
                sigma += 1;
            }
        }
        let symbols = bytes.iter().map(|&b| code[b as usize]).collect();
        Ok(Text { bytes, symbols, sigma })
    }

    pub fn len(&self) -> usize {
        self.bytes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bytes.is_empty()
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }
}

/// A factor `T[i..j]`, 1-based and inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorRef {
    pub i: usize,
    pub j: usize,
}

impl FactorRef {
    pub const fn new(i: usize, j: usize) -> Self {
        FactorRef { i, j }
    }

    #[allow(clippy::len_without_is_empty)]
    pub const fn len(&self) -> usize {
        self.j + 1 - self.i
    }

    /// The prefix of length `len`.
    pub const fn prefix(&self, len: usize) -> FactorRef {
        FactorRef {
            i: self.i,
            j: self.i + len - 1,
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.i == 0 || self.i > self.j || self.j > n {
            Err(Error::InvalidFactor {
                i: self.i,
                j: self.j,
                n,
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for FactorRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}..{}]", self.i, self.j)
    }
}

/// Suffix array, its inverse and LCP array for one direction of the text,
/// with an RMQ over the LCP array for constant-time LCE.
#[derive(Debug, Clone)]
pub struct SuffixIndex {
    pub(crate) sa: Vec<u32>,
    pub(crate) isa: Vec<u32>,
    pub(crate) lcp: RangeMin<u32>,
}

impl SuffixIndex {
    fn build(s: &[u32], sigma: usize) -> Self {
        let sa = suffix_array(s, sigma);
        let isa = inverse(&sa);
        let lcp = lcp_array(s, &sa, &isa);
        SuffixIndex {
            sa,
            isa,
            lcp: RangeMin::new(lcp),
        }
    }

    pub(crate) fn from_parts(sa: Vec<u32>, isa: Vec<u32>, lcp: Vec<u32>) -> Self {
        SuffixIndex {
            sa,
            isa,
            lcp: RangeMin::new(lcp),
        }
    }

    pub fn sa(&self) -> &[u32] {
        &self.sa
    }

    pub fn isa(&self) -> &[u32] {
        &self.isa
    }

    pub fn lcp_values(&self) -> &[u32] {
        self.lcp.values()
    }

    /// LCE of the 0-based suffixes `a` and `b`.
    #[inline]
    fn lce(&self, a: usize, b: usize) -> usize {
        if a == b {
            return self.sa.len() - a;
        }
        let (ra, rb) = (self.isa[a] as usize, self.isa[b] as usize);
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.lcp.min(lo + 1, hi) as usize
    }
}

/// Immutable per-text structure answering LCE queries in both directions.
#[derive(Debug, Clone)]
pub struct TextIndex {
    text: Text,
    fwd: SuffixIndex,
    rev: SuffixIndex,
}

impl TextIndex {
    pub fn build(text: Text) -> Self {
        let fwd = SuffixIndex::build(text.symbols(), text.sigma());
        let reversed: Vec<u32> = text.symbols().iter().rev().copied().collect();
        let rev = SuffixIndex::build(&reversed, text.sigma());
        TextIndex { text, fwd, rev }
    }

    pub(crate) fn from_parts(text: Text, fwd: SuffixIndex, rev: SuffixIndex) -> Self {
        TextIndex { text, fwd, rev }
    }

    pub fn text(&self) -> &Text {
        &self.text
    }

    pub fn n(&self) -> usize {
        self.text.len()
    }

    pub fn forward(&self) -> &SuffixIndex {
        &self.fwd
    }

    pub fn reversed(&self) -> &SuffixIndex {
        &self.rev
    }

    /// 1-based suffix array (`sa[r-1]` is the start of the `r`-th suffix).
    pub fn sa(&self) -> Vec<usize> {
        self.fwd.sa.iter().map(|&p| p as usize + 1).collect()
    }

    /// 1-based inverse suffix array.
    pub fn isa(&self) -> Vec<usize> {
        self.fwd.isa.iter().map(|&r| r as usize + 1).collect()
    }

    pub fn lcp_arr(&self) -> &[u32] {
        self.fwd.lcp.values()
    }

    fn check_pos(&self, pos: usize) -> Result<()> {
        if pos == 0 || pos > self.n() {
            Err(Error::PositionOutOfRange { pos, n: self.n() })
        } else {
            Ok(())
        }
    }

    /// Longest common prefix of `T[i..n]` and `T[j..n]`.
    pub fn lcp(&self, i: usize, j: usize) -> Result<usize> {
        self.check_pos(i)?;
        self.check_pos(j)?;
        Ok(self.fwd.lce(i - 1, j - 1))
    }

    /// Longest common suffix of `T[1..i]` and `T[1..j]`.
    pub fn lcs(&self, i: usize, j: usize) -> Result<usize> {
        self.check_pos(i)?;
        self.check_pos(j)?;
        Ok(self.lcs_unchecked(i, j))
    }

    /// `lcp` with 1-based positions; positions past the end yield 0.
    #[inline]
    pub(crate) fn lcp_unchecked(&self, i: usize, j: usize) -> usize {
        let n = self.n();
        if i == 0 || j == 0 || i > n || j > n {
            return 0;
        }
        self.fwd.lce(i - 1, j - 1)
    }

    /// `lcs` with 1-based positions; position 0 (or past the end) yields 0.
    #[inline]
    pub(crate) fn lcs_unchecked(&self, i: usize, j: usize) -> usize {
        let n = self.n();
        if i == 0 || j == 0 || i > n || j > n {
            return 0;
        }
        self.rev.lce(n - i, n - j)
    }

    /// Byte at 1-based position `pos`.
    #[inline]
    pub fn byte(&self, pos: usize) -> u8 {
        self.text.bytes()[pos - 1]
    }

    pub fn factor_bytes(&self, f: FactorRef) -> &[u8] {
        &self.text.bytes()[f.i - 1..f.j]
    }

    /// Whether the factors `a` and `b` spell the same string.
    #[inline]
    pub fn equal(&self, a: FactorRef, b: FactorRef) -> bool {
        a.len() == b.len() && self.lcp_unchecked(a.i, b.i) >= a.len()
    }
}
