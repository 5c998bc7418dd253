use std::collections::{BTreeMap, HashMap};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::corpus::word_tokens;
use crate::error::{Error, Result};

pub const DENSE_FORMAT: &str = "causalmt-emb/1";
pub const SPARSE_FORMAT: &str = "causalmt-sparse-emb/1";
pub const HASH_BITS: u32 = 20;
pub const HASH_DIM: u32 = 1 << HASH_BITS;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(FNV_OFFSET, |h, &b| (h ^ u64::from(b)).wrapping_mul(FNV_PRIME))
}

/// XOR-folds a 64-bit hash down to `HASH_BITS` bits.
pub fn fold(h: u64) -> u32 {
    let mask = u64::from(HASH_DIM - 1);
    let mut x = h;
    let mut out = 0u64;
    while x != 0 {
        out ^= x & mask;
        x >>= HASH_BITS;
    }
    out as u32
}

fn unigram_dim(tok: &str) -> u32 {
    let mut key = Vec::with_capacity(tok.len() + 2);
    key.extend_from_slice(b"u:");
    key.extend_from_slice(tok.as_bytes());
    fold(fnv1a64(&key))
}

fn bigram_dim(a: &str, b: &str) -> u32 {
    let mut key = Vec::with_capacity(a.len() + b.len() + 3);
    key.extend_from_slice(b"b:");
    key.extend_from_slice(a.as_bytes());
    key.push(b' ');
    key.extend_from_slice(b.as_bytes());
    fold(fnv1a64(&key))
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct SparseVector {
    entries: Vec<(u32, f64)>,
    norm: f64,
}

impl SparseVector {
    /// Builds from arbitrary entries, summing repeated indices.
    pub fn from_entries(entries: impl IntoIterator<Item = (u32, f64)>) -> Self {
        let mut acc: BTreeMap<u32, f64> = BTreeMap::new();
        for (i, w) in entries {
            *acc.entry(i).or_default() += w;
        }
        let entries: Vec<(u32, f64)> = acc.into_iter().filter(|&(_, w)| w != 0.0).collect();
        let norm = entries.iter().map(|(_, w)| w * w).sum::<f64>().sqrt();
        SparseVector { entries, norm }
    }

    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        SparseVector {
            entries: self.entries.iter().map(|&(i, w)| (i, w / self.norm)).collect(),
            norm: 1.0,
        }
    }

    pub fn dot(&self, other: &SparseVector) -> f64 {
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        let mut sum = 0.0;
        while let (Some(&&(i, x)), Some(&&(j, y))) = (a.peek(), b.peek()) {
            match i.cmp(&j) {
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    b.next();
                }
                std::cmp::Ordering::Equal => {
                    sum += x * y;
                    a.next();
                    b.next();
                }
            }
        }
        sum
    }

    pub fn cosine(&self, other: &SparseVector) -> f64 {
        if self.is_zero() || other.is_zero() {
            return 0.0;
        }
        self.dot(other) / (self.norm * other.norm)
    }
}

/// Hashed unigram + bigram bag over lowercased word tokens, weighted by
/// `ln(1 + tf)` and L2-normalized. Empty text gives the zero vector.
pub fn embed_builtin(text: &str) -> SparseVector {
    let toks: Vec<String> = word_tokens(text).map(str::to_lowercase).collect();
    let mut tf: HashMap<u32, u32> = HashMap::new();
    for t in &toks {
        *tf.entry(unigram_dim(t)).or_default() += 1;
    }
    for w in toks.windows(2) {
        *tf.entry(bigram_dim(&w[0], &w[1])).or_default() += 1;
    }
    SparseVector::from_entries(tf.into_iter().map(|(i, n)| (i, f64::from(n).ln_1p()))).normalized()
}

/// A sentence vector. Cosine is only defined between vectors of the same kind.
#[derive(Clone, Debug, PartialEq)]
pub enum Embedding {
    Sparse(SparseVector),
    Dense(Vec<f64>),
}

impl Embedding {
    pub fn cosine(&self, other: &Embedding) -> f64 {
        match (self, other) {
            (Embedding::Sparse(a), Embedding::Sparse(b)) => a.cosine(b),
            (Embedding::Dense(a), Embedding::Dense(b)) => a.iter().zip(b).map(|(x, y)| x * y).sum(),
            _ => 0.0,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Embedding::Sparse(v) => v.is_zero(),
            Embedding::Dense(v) => v.iter().all(|&x| x == 0.0),
        }
    }
}

/// Externally computed vectors keyed by pair id.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EmbeddingTable {
    pub dim: usize,
    pub vectors: HashMap<String, Embedding>,
}

impl EmbeddingTable {
    pub fn get(&self, id: &str) -> Option<&Embedding> {
        self.vectors.get(id)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

fn parse_header(line: &str, name: &str) -> Result<(String, usize, usize)> {
    let bad = || Error::parse(name, 1, format!("bad embedding header {line:?}"));
    let mut parts = line.split_whitespace();
    let format = parts.next().ok_or_else(bad)?.to_string();
    let mut dim = None;
    let mut count = None;
    for p in parts {
        match p.split_once('=') {
            Some(("dim", v)) => dim = Some(v.parse().map_err(|_| bad())?),
            Some(("count", v)) => count = Some(v.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        }
    }
    Ok((format, dim.ok_or_else(bad)?, count.ok_or_else(bad)?))
}

/// Reads a dense (`causalmt-emb/1`) or sparse (`causalmt-sparse-emb/1`)
/// embedding file. Vectors are L2-normalized on load.
pub fn load_embeddings_from<R: BufRead>(input: R, name: &str) -> Result<EmbeddingTable> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::parse(name, 1, "missing header"))?
        .map_err(|e| Error::io(name, e))?;
    let (format, dim, count) = parse_header(&header, name)?;
    let sparse = match format.as_str() {
        DENSE_FORMAT => false,
        SPARSE_FORMAT => true,
        _ => return Err(Error::parse(name, 1, format!("unsupported format {format:?}"))),
    };
    if dim == 0 {
        return Err(Error::parse(name, 1, "dimension must be positive"));
    }
    let mut vectors = HashMap::with_capacity(count);
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        let line = line.map_err(|e| Error::io(name, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let (id, body) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(name, lineno, "expected id<TAB>values"))?;
        let value = |s: &str| -> Result<f64> {
            let x: f64 = s
                .parse()
                .map_err(|_| Error::parse(name, lineno, format!("bad number {s:?}")))?;
            if !x.is_finite() {
                return Err(Error::parse(name, lineno, format!("non-finite value {s:?}")));
            }
            Ok(x)
        };
        let emb = if sparse {
            let mut entries = Vec::new();
            for item in body.split_whitespace() {
                let (k, v) = item
                    .split_once(':')
                    .ok_or_else(|| Error::parse(name, lineno, format!("bad entry {item:?}")))?;
                let k: u32 = k
                    .parse()
                    .ok()
                    .filter(|&k: &u32| (k as usize) < dim)
                    .ok_or_else(|| Error::parse(name, lineno, format!("index out of range in {item:?}")))?;
                entries.push((k, value(v)?));
            }
            let v = SparseVector::from_entries(entries);
            if v.is_zero() {
                return Err(Error::parse(name, lineno, format!("zero vector for {id:?}")));
            }
            Embedding::Sparse(v.normalized())
        } else {
            let xs: Vec<f64> = body.split_whitespace().map(value).collect::<Result<_>>()?;
            if xs.len() != dim {
                return Err(Error::parse(
                    name,
                    lineno,
                    format!("dimension mismatch: expected {dim}, found {}", xs.len()),
                ));
            }
            let norm = xs.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm == 0.0 {
                return Err(Error::parse(name, lineno, format!("zero vector for {id:?}")));
            }
            Embedding::Dense(xs.into_iter().map(|x| x / norm).collect())
        };
        if vectors.insert(id.to_string(), emb).is_some() {
            return Err(Error::parse(name, lineno, format!("duplicate id {id:?}")));
        }
    }
    if vectors.len() != count {
        return Err(Error::parse(
            name,
            1,
            format!("header declares {count} vectors, found {}", vectors.len()),
        ));
    }
    Ok(EmbeddingTable { dim, vectors })
}

pub fn load_embeddings(path: &Path) -> Result<EmbeddingTable> {
    let f = File::open(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    load_embeddings_from(BufReader::new(f), &path.display().to_string())
}

pub fn write_sparse_embeddings_to<W: Write>(items: &[(String, SparseVector)], mut out: W) -> Result<()> {
    let io = |e| Error::io("writing embeddings", e);
    writeln!(out, "{SPARSE_FORMAT} dim={HASH_DIM} count={}", items.len()).map_err(io)?;
    for (id, v) in items {
        let body: Vec<String> = v.entries().iter().map(|(i, w)| format!("{i}:{w:.6}")).collect();
        writeln!(out, "{id}\t{}", body.join(" ")).map_err(io)?;
    }
    out.flush().map_err(io)
}

pub fn write_sparse_embeddings(items: &[(String, SparseVector)], path: &Path) -> Result<()> {
    let f = File::create(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    write_sparse_embeddings_to(items, BufWriter::new(f))
}
