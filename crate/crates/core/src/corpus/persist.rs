//! Binary index layout (all integers little-endian):
//!
//! ```text
//! magic        8 bytes   "ADRANKIX"
//! version      u32       FORMAT_VERSION
//! payload_len  u64
//! payload      payload_len bytes
//! checksum     32 bytes  SHA-256 of payload
//!
//! payload:
//!   num_docs   u64
//!   num_docs × { id_len u32, id UTF-8 bytes, length u64 }
//!   num_terms  u64
//!   num_terms × { term_len u32, term UTF-8 bytes, f_tC u64, n_t u64,
//!                 n_t × { doc u32, f_td u32 } }
//! ```
//!
//! Documents appear in id order and terms in lexicographic order; postings
//! are sorted by document index.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use sha2::{Digest, Sha256};

use super::index::{InvertedIndex, Posting, TermEntry, TermStats};
use crate::{Error, Result};

pub const MAGIC: &[u8; 8] = b"ADRANKIX";
pub const FORMAT_VERSION: u32 = 1;

pub fn write_index(index: &InvertedIndex, out: &mut impl Write) -> Result<()> {
    let mut p = Vec::new();
    p.extend_from_slice(&(index.num_docs() as u64).to_le_bytes());
    for (id, len) in index.doc_ids().iter().zip(index.doc_lengths()) {
        put_str(&mut p, id)?;
        p.extend_from_slice(&len.to_le_bytes());
    }
    p.extend_from_slice(&(index.terms().len() as u64).to_le_bytes());
    for t in index.terms() {
        put_str(&mut p, &t.stats.term)?;
        p.extend_from_slice(&t.stats.collection_freq.to_le_bytes());
        p.extend_from_slice(&t.stats.doc_freq.to_le_bytes());
        for post in &t.postings {
            p.extend_from_slice(&post.doc.to_le_bytes());
            p.extend_from_slice(&post.tf.to_le_bytes());
        }
    }
    out.write_all(MAGIC)?;
    out.write_all(&FORMAT_VERSION.to_le_bytes())?;
    out.write_all(&(p.len() as u64).to_le_bytes())?;
    out.write_all(&p)?;
    out.write_all(&Sha256::digest(&p))?;
    Ok(())
}

fn put_str(p: &mut Vec<u8>, s: &str) -> Result<()> {
    let len = u32::try_from(s.len()).map_err(|_| Error::Format("string too long to store".into()))?;
    p.extend_from_slice(&len.to_le_bytes());
    p.extend_from_slice(s.as_bytes());
    Ok(())
}

/// Parse a serialized index. Any truncation, checksum mismatch or
/// inconsistent count is a format error; nothing partial is returned.
pub fn read_index(input: &mut impl Read) -> Result<InvertedIndex> {
    let mut bytes = Vec::new();
    input.read_to_end(&mut bytes)?;
    let mut r = Reader { buf: &bytes, pos: 0 };
    if r.take(8)? != MAGIC {
        return Err(Error::Format("not an index file (bad magic)".into()));
    }
    let version = r.u32()?;
    if version != FORMAT_VERSION {
        return Err(Error::Format(format!(
            "index format version {version}, this build reads version {FORMAT_VERSION}"
        )));
    }
    let len = usize::try_from(r.u64()?).map_err(|_| Error::Format("payload too large".into()))?;
    let payload = r.take(len)?;
    let checksum = r.take(32)?;
    if r.pos != bytes.len() {
        return Err(Error::Format("trailing bytes after index".into()));
    }
    if Sha256::digest(payload).as_slice() != checksum {
        return Err(Error::Format("index checksum mismatch".into()));
    }

    let mut r = Reader { buf: payload, pos: 0 };
    let num_docs = r.count()?;
    let mut doc_ids = Vec::with_capacity(num_docs.min(1 << 20));
    let mut doc_lengths = Vec::with_capacity(num_docs.min(1 << 20));
    for _ in 0..num_docs {
        doc_ids.push(r.string()?);
        doc_lengths.push(r.u64()?);
    }
    let num_terms = r.count()?;
    let mut terms = Vec::with_capacity(num_terms.min(1 << 20));
    for _ in 0..num_terms {
        let term = r.string()?;
        let collection_freq = r.u64()?;
        let doc_freq = r.u64()?;
        let n = usize::try_from(doc_freq).map_err(|_| Error::Format("bad posting count".into()))?;
        if n > r.remaining() / 8 {
            return Err(Error::Format("truncated postings".into()));
        }
        let mut postings = Vec::with_capacity(n);
        for _ in 0..n {
            postings.push(Posting { doc: r.u32()?, tf: r.u32()? });
        }
        terms.push(TermEntry { stats: TermStats { term, collection_freq, doc_freq }, postings });
    }
    if r.remaining() != 0 {
        return Err(Error::Format("unread bytes in index payload".into()));
    }
    InvertedIndex::from_parts(doc_ids, doc_lengths, terms)
}

pub fn save_index(index: &InvertedIndex, path: &Path) -> Result<()> {
    let mut buf = Vec::new();
    write_index(index, &mut buf)?;
    fs::write(path, buf)?;
    Ok(())
}

pub fn load_index(path: &Path) -> Result<InvertedIndex> {
    let mut f = fs::File::open(path)?;
    read_index(&mut f)
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn remaining(&self) -> usize {
        self.buf.len() - self.pos
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if n > self.remaining() {
            return Err(Error::Format("index file is truncated".into()));
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn count(&mut self) -> Result<usize> {
        let n = self.u64()?;
        usize::try_from(n).ok().filter(|&n| n <= self.remaining()).ok_or_else(|| Error::Format(format!("implausible count {n}")))
    }

    fn string(&mut self) -> Result<String> {
        let len = self.u32()? as usize;
        let bytes = self.take(len)?;
        String::from_utf8(bytes.to_vec()).map_err(|_| Error::Format("invalid UTF-8 in index".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{build_index, TokenizerConfig};

    fn two_docs() -> InvertedIndex {
        build_index([("d1", "a b a"), ("d2", "b c")], &TokenizerConfig::default()).unwrap()
    }

    #[test]
    fn round_trip() {
        let idx = two_docs();
        let mut buf = Vec::new();
        write_index(&idx, &mut buf).unwrap();
        let back = read_index(&mut buf.as_slice()).unwrap();
        assert_eq!(back, idx);
        assert_eq!(back.stats(), idx.stats());
        assert_eq!(back.term_stats("b").unwrap(), idx.term_stats("b").unwrap());
    }

    #[test]
    fn corruption_is_detected() {
        let mut buf = Vec::new();
        write_index(&two_docs(), &mut buf).unwrap();
        for cut in [0, 5, 12, buf.len() - 1] {
            assert!(matches!(read_index(&mut &buf[..cut]), Err(Error::Format(_))), "cut {cut}");
        }
        let mut flipped = buf.clone();
        flipped[30] ^= 0x40;
        assert!(matches!(read_index(&mut flipped.as_slice()), Err(Error::Format(_))));
        let mut version = buf.clone();
        version[8] = 9;
        let err = read_index(&mut version.as_slice()).unwrap_err();
        assert!(err.to_string().contains("version"));
        let mut magic = buf;
        magic[0] = b'X';
        assert!(matches!(read_index(&mut magic.as_slice()), Err(Error::Format(_))));
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("idx.bin");
        save_index(&two_docs(), &p).unwrap();
        assert_eq!(load_index(&p).unwrap(), two_docs());
    }
}
