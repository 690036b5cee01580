//! Binary serialization of an [`Index`].
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! "QPI1"  version:u8
//! text:       u64 length, bytes
//! forward:    sa, isa, lcp    each as u64 length + u64 values
//! reversed:   sa, isa, lcp
//! seed nodes: u64 count, then per node
//!             a:u64 k:u64 local_sa (u64 length + values)
//!             u64 locus count, per locus lo:u64 hi:u64
//!             and the length intervals (u64 count + pairs)
//! ```
//!
//! Runs, the wavelet matrix and RMQ tables are rebuilt on load.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::seeds::{BasicInterval, Locus, SeedSetNode, SeedSets};
use crate::text::{SuffixIndex, Text, TextIndex};
use crate::Index;

const MAGIC: &[u8; 4] = b"QPI1";
const VERSION: u8 = 1;

struct Writer<W: Write>(W);

impl<W: Write> Writer<W> {
    fn u64(&mut self, x: usize) -> Result<()> {
        Ok(self.0.write_all(&(x as u64).to_le_bytes())?)
    }

    fn u32s(&mut self, v: &[u32]) -> Result<()> {
        self.u64(v.len())?;
        for &x in v {
            self.u64(x as usize)?;
        }
        Ok(())
    }
}

struct Reader<R: Read> {
    inner: R,
    // upper bound on any stored length, to reject garbage before allocating
    limit: usize,
}

impl<R: Read> Reader<R> {
    fn u64(&mut self) -> Result<usize> {
        let mut buf = [0u8; 8];
        self.inner
            .read_exact(&mut buf)
            .map_err(|e| Error::Format(format!("truncated index: {e}")))?;
        usize::try_from(u64::from_le_bytes(buf)).map_err(|_| Error::Format("value does not fit in usize".into()))
    }

    fn len(&mut self) -> Result<usize> {
        let len = self.u64()?;
        if len > self.limit {
            return Err(Error::Format(format!("length {len} exceeds {}", self.limit)));
        }
        Ok(len)
    }

    fn u32(&mut self) -> Result<u32> {
        let x = self.u64()?;
        u32::try_from(x).map_err(|_| Error::Format(format!("value {x} does not fit in u32")))
    }

    fn u32s(&mut self) -> Result<Vec<u32>> {
        let len = self.len()?;
        (0..len).map(|_| self.u32()).collect()
    }
}

fn write_suffix_index<W: Write>(w: &mut Writer<W>, s: &SuffixIndex) -> Result<()> {
    w.u32s(s.sa())?;
    w.u32s(s.isa())?;
    w.u32s(s.lcp_values())
}

fn read_suffix_index<R: Read>(r: &mut Reader<R>, n: usize) -> Result<SuffixIndex> {
    let sa = r.u32s()?;
    let isa = r.u32s()?;
    let lcp = r.u32s()?;
    if sa.len() != n || isa.len() != n || lcp.len() != n {
        return Err(Error::Format("suffix array lengths do not match the text".into()));
    }
    let inverse_ok = sa
        .iter()
        .enumerate()
        .all(|(rk, &x)| isa.get(x as usize) == Some(&(rk as u32)));
    if !inverse_ok {
        return Err(Error::Format("stored inverse suffix array does not match".into()));
    }
    if lcp.iter().enumerate().any(|(rk, &v)| v as usize > n - sa[rk] as usize) {
        return Err(Error::Format("lcp value out of range".into()));
    }
    Ok(SuffixIndex::from_parts(sa, isa, lcp))
}

impl Index {
    pub fn write_to<W: Write>(&self, out: W) -> Result<()> {
        let mut w = Writer(out);
        w.0.write_all(MAGIC)?;
        w.0.write_all(&[VERSION])?;
        let bytes = self.text();
        w.u64(bytes.len())?;
        w.0.write_all(bytes)?;
        write_suffix_index(&mut w, self.text.forward())?;
        write_suffix_index(&mut w, self.text.reversed())?;
        let nodes: Vec<&SeedSetNode> = self.seeds.nodes().collect();
        w.u64(nodes.len())?;
        for nd in nodes {
            w.u64(nd.interval.a)?;
            w.u64(nd.interval.k as usize)?;
            w.u32s(&nd.local_sa)?;
            w.u64(nd.loci.len())?;
            for l in &nd.loci {
                w.u64(l.lo as usize)?;
                w.u64(l.hi as usize)?;
                w.u64(l.lengths.len())?;
                for &(x, y) in &l.lengths {
                    w.u64(x as usize)?;
                    w.u64(y as usize)?;
                }
            }
        }
        w.0.flush()?;
        Ok(())
    }

    pub fn read_from<R: Read>(input: R) -> Result<Index> {
        let mut r = Reader {
            inner: input,
            limit: u32::MAX as usize,
        };
        let mut head = [0u8; 5];
        r.inner
            .read_exact(&mut head)
            .map_err(|_| Error::Format("missing header".into()))?;
        if &head[..4] != MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        if head[4] != VERSION {
            return Err(Error::Format(format!("unsupported version {}", head[4])));
        }
        let n = r.len()?;
        let mut bytes = vec![0u8; n];
        r.inner
            .read_exact(&mut bytes)
            .map_err(|_| Error::Format("truncated text".into()))?;
        let text = Text::new(bytes)?;
        r.limit = n.max(1);
        let fwd = read_suffix_index(&mut r, n)?;
        let rev = read_suffix_index(&mut r, n)?;
        let text = TextIndex::from_parts(text, fwd, rev);

        r.limit = n * 2 + 64;
        let count = r.len()?;
        let mut nodes = Vec::with_capacity(count);
        for _ in 0..count {
            let a = r.u64()?;
            let k = r.u32()?;
            let interval = BasicInterval::new(a, k).map_err(|e| Error::Format(e.to_string()))?;
            let local_sa = r.u32s()?;
            let locus_count = r.len()?;
            let mut loci = Vec::with_capacity(locus_count);
            for _ in 0..locus_count {
                let lo = r.u32()?;
                let hi = r.u32()?;
                let pairs = r.len()?;
                let lengths = (0..pairs)
                    .map(|_| Ok((r.u32()?, r.u32()?)))
                    .collect::<Result<Vec<_>>>()?;
                loci.push(Locus { lo, hi, lengths });
            }
            nodes.push(SeedSetNode::from_parts(interval, local_sa, loci)?);
        }
        let seeds = SeedSets::from_parts(n, nodes)?;
        let mut rest = [0u8; 1];
        if r.inner.read(&mut rest)? != 0 {
            return Err(Error::Format("trailing bytes after index".into()));
        }
        Ok(Index::assemble(text, seeds))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_to(BufWriter::new(File::create(path)?))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Index> {
        Index::read_from(BufReader::new(File::open(path)?))
    }
}
