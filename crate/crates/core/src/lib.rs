//! Internal quasiperiodicity queries.
//!
//! A text `T` is preprocessed once into an [`Index`]; afterwards covers of
//! any factor `T[i..j]` can be queried: the shortest cover
//! ([`Index::min_cover`]), all covers as arithmetic progressions
//! ([`Index::all_covers`]), whether a prefix of given length is a cover
//! ([`Index::is_cover`]) and the longest prefix covered by a short prefix
//! ([`Index::covered_pref`]). The supporting queries (LCE, internal pattern
//! matching, periods, borders, runs, seeds of basic factors) are public too.
//!
//! ```
//! use qpi_core::{Index, FactorRef};
//!
//! let index = Index::build(b"abaababaababa").unwrap();
//! assert_eq!(index.min_cover(FactorRef::new(1, 13)).unwrap(), 3);
//! assert_eq!(index.min_cover(FactorRef::new(2, 13)).unwrap(), 7);
//! let covers: Vec<usize> = index.all_covers(FactorRef::new(1, 13)).unwrap().lengths().collect();
//! assert_eq!(covers, vec![3, 8, 13]);
//! ```
//!
//! Positions are 1-based and inclusive throughout the public API. After
//! construction an [`Index`] is immutable and can be shared across threads.

pub mod borders;
pub mod error;
pub mod ipm;
pub mod oracle;
pub mod persist;
pub mod quasiperiod;
pub mod rmq;
pub mod runs;
pub mod seeds;
pub mod suffix_array;
pub mod text;
pub mod wavelet;

pub use borders::BorderDecomposition;
pub use error::{Error, Result};
pub use ipm::{ArithProg, CoverageSet};
pub use quasiperiod::{ChainPartition, CoverAnswer};
pub use rmq::RangeMin;
pub use runs::{RootGroup, RunRecord, Runs};
pub use seeds::{BasicInterval, SeedSetNode, SeedSets};
pub use text::{FactorRef, Text, TextIndex};

use wavelet::WaveletMatrix;

/// Everything needed to answer queries about factors of one text.
#[derive(Debug, Clone)]
pub struct Index {
    text: TextIndex,
    // suffix-array positions, for range successor queries
    occ: WaveletMatrix,
    runs: Runs,
    seeds: SeedSets,
}

impl Index {
    pub fn build(bytes: impl Into<Vec<u8>>) -> Result<Self> {
        let text = TextIndex::build(Text::new(bytes)?);
        Ok(Self::from_text_index(text))
    }

    pub(crate) fn from_text_index(text: TextIndex) -> Self {
        let seeds = SeedSets::build(&text);
        Self::assemble(text, seeds)
    }

    pub(crate) fn assemble(text: TextIndex, seeds: SeedSets) -> Self {
        let occ = WaveletMatrix::new(text.forward().sa());
        let runs = Runs::compute(&text);
        Index { text, occ, runs, seeds }
    }

    pub fn text_index(&self) -> &TextIndex {
        &self.text
    }

    pub fn runs(&self) -> &Runs {
        &self.runs
    }

    pub fn seed_sets(&self) -> &SeedSets {
        &self.seeds
    }

    pub fn n(&self) -> usize {
        self.text.n()
    }

    pub fn text(&self) -> &[u8] {
        self.text.text().bytes()
    }

    pub fn lcp(&self, i: usize, j: usize) -> Result<usize> {
        self.text.lcp(i, j)
    }

    pub fn lcs(&self, i: usize, j: usize) -> Result<usize> {
        self.text.lcs(i, j)
    }

    /// The whole text as a factor.
    pub fn whole(&self) -> FactorRef {
        FactorRef::new(1, self.n())
    }

    pub(crate) fn check(&self, f: FactorRef) -> Result<()> {
        f.validate(self.n())
    }
}
