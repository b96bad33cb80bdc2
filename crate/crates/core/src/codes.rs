//! Packed binary codes, Hamming distance and linear-scan retrieval.
//!
//! Bit `j` of an item lives in word `j / 64`, position `j % 64` (LSB first).
//! A set bit means the code value `+1`; padding bits past `r` are always 0.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

pub const CODES_MAGIC: &[u8; 4] = b"DLDH";
pub const CODES_FORMAT_VERSION: u32 = 1;

pub fn words_per_code(bits: usize) -> usize {
    bits.div_ceil(64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryCodes {
    bits: usize,
    words: Vec<u64>,
    ids: Vec<u64>,
}

impl BinaryCodes {
    pub fn new(bits: usize, words: Vec<u64>, ids: Vec<u64>) -> Result<Self> {
        if bits == 0 {
            return Err(Error::InvalidParameter(
                "code length must be ≥ 1 bit".into(),
            ));
        }
        let wpc = words_per_code(bits);
        if words.len() != ids.len() * wpc {
            return Err(Error::CodesFormat(format!(
                "{} items of {bits} bits need {} words, got {}",
                ids.len(),
                ids.len() * wpc,
                words.len()
            )));
        }
        let pad_mask = padding_mask(bits);
        if pad_mask != 0 {
            for (i, chunk) in words.chunks(wpc).enumerate() {
                if chunk[wpc - 1] & pad_mask != 0 {
                    return Err(Error::CodesFormat(format!(
                        "item {i} has nonzero padding bits"
                    )));
                }
            }
        }
        Ok(Self { bits, words, ids })
    }

    /// Builds codes from `±1` sign vectors, one per item.
    pub fn from_signs(signs: &[Vec<i8>], ids: Vec<u64>) -> Result<Self> {
        let bits = signs.first().map(Vec::len).unwrap_or(0);
        let wpc = words_per_code(bits);
        let mut words = vec![0u64; signs.len() * wpc];
        for (i, s) in signs.iter().enumerate() {
            if s.len() != bits {
                return Err(Error::Dimension(format!(
                    "item {i} has {} bits, expected {bits}",
                    s.len()
                )));
            }
            for (j, &v) in s.iter().enumerate() {
                if v > 0 {
                    words[i * wpc + j / 64] |= 1 << (j % 64);
                }
            }
        }
        Self::new(bits, words, ids)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn words_per_code(&self) -> usize {
        words_per_code(self.bits)
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn code(&self, item: usize) -> &[u64] {
        let wpc = self.words_per_code();
        &self.words[item * wpc..(item + 1) * wpc]
    }

    pub fn bit(&self, item: usize, j: usize) -> bool {
        assert!(j < self.bits);
        (self.code(item)[j / 64] >> (j % 64)) & 1 == 1
    }

    /// Sign vector (`+1`/`-1`) of one item.
    pub fn signs(&self, item: usize) -> Vec<i8> {
        (0..self.bits)
            .map(|j| if self.bit(item, j) { 1 } else { -1 })
            .collect()
    }

    pub fn with_ids(mut self, ids: Vec<u64>) -> Result<Self> {
        if ids.len() != self.len() {
            return Err(Error::Dimension(format!(
                "{} codes but {} ids",
                self.len(),
                ids.len()
            )));
        }
        self.ids = ids;
        Ok(self)
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(CODES_MAGIC)?;
        w.write_all(&CODES_FORMAT_VERSION.to_le_bytes())?;
        w.write_all(&(self.len() as u64).to_le_bytes())?;
        w.write_all(&(self.bits as u32).to_le_bytes())?;
        for word in &self.words {
            w.write_all(&word.to_le_bytes())?;
        }
        for id in &self.ids {
            w.write_all(&id.to_le_bytes())?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != CODES_MAGIC {
            return Err(Error::CodesFormat(format!("bad magic {magic:?}")));
        }
        let version = read_u32(&mut r)?;
        if version != CODES_FORMAT_VERSION {
            return Err(Error::CodesFormat(format!(
                "unsupported format version {version}"
            )));
        }
        let n = read_u64(&mut r)? as usize;
        let bits = read_u32(&mut r)? as usize;
        let wpc = words_per_code(bits);
        let mut words = Vec::with_capacity(n * wpc);
        for _ in 0..n * wpc {
            words.push(read_u64(&mut r)?);
        }
        let mut ids = Vec::with_capacity(n);
        for _ in 0..n {
            ids.push(read_u64(&mut r)?);
        }
        let mut rest = [0u8; 1];
        if r.read(&mut rest)? != 0 {
            return Err(Error::CodesFormat("trailing bytes after item ids".into()));
        }
        Self::new(bits, words, ids)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_to(BufWriter::new(File::create(path)?))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::read_from(BufReader::new(File::open(path)?))
    }
}

fn padding_mask(bits: usize) -> u64 {
    match bits % 64 {
        0 => 0,
        used => !((1u64 << used) - 1),
    }
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b).map_err(truncated)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b).map_err(truncated)?;
    Ok(u64::from_le_bytes(b))
}

fn truncated(e: std::io::Error) -> Error {
    if e.kind() == std::io::ErrorKind::UnexpectedEof {
        Error::CodesFormat("file is truncated".into())
    } else {
        Error::Io(e)
    }
}

/// Quantizes each column of an `r × n` matrix: `v ≥ 0 → +1`, `v < 0 → −1`.
/// Items get ids `0..n`.
pub fn sign_quantize(values: &DenseMatrix) -> Result<BinaryCodes> {
    if !values.all_finite() {
        return Err(Error::NonFinite("values to quantize".into()));
    }
    let (bits, n) = values.shape();
    let wpc = words_per_code(bits);
    let mut words = vec![0u64; n * wpc];
    for j in 0..bits {
        let (word, shift) = (j / 64, j % 64);
        for (i, &v) in values.row(j).iter().enumerate() {
            if v >= 0.0 {
                words[i * wpc + word] |= 1 << shift;
            }
        }
    }
    BinaryCodes::new(bits, words, (0..n as u64).collect())
}

/// Number of differing bits.
pub fn hamming(a: &[u64], b: &[u64]) -> Result<u32> {
    if a.len() != b.len() {
        return Err(Error::Dimension(format!(
            "codes of {} and {} words",
            a.len(),
            b.len()
        )));
    }
    Ok(hamming_unchecked(a, b))
}

#[inline]
fn hamming_unchecked(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones()).sum()
}

/// Exhaustive Hamming index over an immutable gallery.
#[derive(Debug, Clone)]
pub struct HammingIndex {
    gallery: BinaryCodes,
}

impl HammingIndex {
    pub fn new(gallery: BinaryCodes) -> Self {
        Self { gallery }
    }

    pub fn gallery(&self) -> &BinaryCodes {
        &self.gallery
    }

    fn check_query(&self, query: &[u64]) -> Result<()> {
        if query.len() != self.gallery.words_per_code() {
            return Err(Error::Dimension(format!(
                "query has {} words, gallery codes have {}",
                query.len(),
                self.gallery.words_per_code()
            )));
        }
        Ok(())
    }

    /// Distance from `query` to every gallery item, in gallery order.
    pub fn distances(&self, query: &[u64]) -> Result<Vec<u32>> {
        self.check_query(query)?;
        let wpc = self.gallery.words_per_code();
        Ok(self
            .gallery
            .words
            .chunks(wpc)
            .map(|c| hamming_unchecked(c, query))
            .collect())
    }

    /// Gallery positions sorted by `(distance, item_id)`, with distances.
    pub fn ranked_positions(&self, query: &[u64]) -> Result<Vec<(u32, usize)>> {
        let dist = self.distances(query)?;
        let ids = &self.gallery.ids;
        let mut order: Vec<(u32, usize)> = dist.into_iter().zip(0..).collect();
        order.sort_unstable_by_key(|&(d, pos)| (d, ids[pos], pos));
        Ok(order)
    }

    /// Every gallery id ordered by `(distance, item_id)`.
    pub fn rank_by_hamming(&self, query: &[u64]) -> Result<Vec<u64>> {
        Ok(self
            .ranked_positions(query)?
            .into_iter()
            .map(|(_, p)| self.gallery.ids[p])
            .collect())
    }

    /// Ids within `radius` of `query`, ordered by `(distance, item_id)`.
    /// A radius at or above the code length returns the whole gallery.
    pub fn lookup_radius(&self, query: &[u64], radius: u32) -> Result<Vec<u64>> {
        let dist = self.distances(query)?;
        let ids = &self.gallery.ids;
        let mut hits: Vec<(u32, u64, usize)> = dist
            .into_iter()
            .enumerate()
            .filter(|&(_, d)| d <= radius)
            .map(|(p, d)| (d, ids[p], p))
            .collect();
        hits.sort_unstable();
        Ok(hits.into_iter().map(|(_, id, _)| id).collect())
    }
}
