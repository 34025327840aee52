//! The spherically homogeneous rooted tree: its defining prime sequence,
//! level sizes and vertex addressing.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};

/// Where a sequence entry came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Provenance {
    Explicit,
    AutoExtended,
}

#[derive(Debug)]
struct Inner {
    primes: RwLock<Vec<BigUint>>,
    explicit_len: usize,
    auto_extend: bool,
}

/// The defining valencies l_0, l_1, ... of the tree. Entries are validated
/// on construction (pairwise distinct primes >= 7). When auto-extension is
/// on, missing levels are filled deterministically with `next_prime` of the
/// last known entry, so a sequence behaves like a memoized infinite list.
#[derive(Debug, Clone)]
pub struct PrimeSequence {
    inner: Arc<Inner>,
}

impl PrimeSequence {
    pub fn new(values: Vec<BigUint>) -> Result<Self> {
        let report = arith::validate_sequence(&values);
        if !report.pass {
            let first_bad = report
                .entries
                .iter()
                .find(|e| !e.ok())
                .map(|e| {
                    if !e.prime {
                        format!("entry {} = {} is not prime", e.index, e.value)
                    } else if !e.at_least_seven {
                        format!("entry {} = {} is below 7", e.index, e.value)
                    } else {
                        format!("entry {} = {} duplicates entry {:?}", e.index, e.value, e.duplicate_of)
                    }
                })
                .unwrap_or_else(|| "sequence is empty".into());
            return Err(Error::InvalidSequence(first_bad));
        }
        Ok(Self {
            inner: Arc::new(Inner {
                explicit_len: values.len(),
                primes: RwLock::new(values),
                auto_extend: false,
            }),
        })
    }

    pub fn from_u64(values: &[u64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| BigUint::from(v)).collect())
    }

    /// Return a copy of this sequence with auto-extension switched.
    pub fn auto_extended(&self, on: bool) -> Self {
        let primes = self.inner.primes.read().unwrap().clone();
        Self {
            inner: Arc::new(Inner {
                explicit_len: self.inner.explicit_len,
                primes: RwLock::new(primes),
                auto_extend: on,
            }),
        }
    }

    pub fn auto_extend(&self) -> bool {
        self.inner.auto_extend
    }

    pub fn explicit_len(&self) -> usize {
        self.inner.explicit_len
    }

    /// Number of levels whose prime is already materialized.
    pub fn known_len(&self) -> usize {
        self.inner.primes.read().unwrap().len()
    }

    pub fn provenance(&self, level: usize) -> Option<Provenance> {
        if level < self.inner.explicit_len {
            Some(Provenance::Explicit)
        } else if level < self.known_len() {
            Some(Provenance::AutoExtended)
        } else {
            None
        }
    }

    /// The prime l_level, extending the sequence when permitted.
    pub fn prime_at(&self, level: usize) -> Result<BigUint> {
        {
            let primes = self.inner.primes.read().unwrap();
            if level < primes.len() {
                return Ok(primes[level].clone());
            }
        }
        if !self.inner.auto_extend {
            return Err(Error::SequenceExhausted { level });
        }
        let mut primes = self.inner.primes.write().unwrap();
        while primes.len() <= level {
            let next = arith::next_prime(primes.last().expect("sequence is nonempty"));
            primes.push(next);
        }
        Ok(primes[level].clone())
    }

    /// m_n, the number of level-n vertices: the product of l_0 .. l_{n-1},
    /// with m_0 = 1.
    pub fn level_size(&self, n: usize) -> Result<BigUint> {
        let mut m = BigUint::one();
        for level in 0..n {
            m *= self.prime_at(level)?;
        }
        Ok(m)
    }

    pub fn explicit_values(&self) -> Vec<BigUint> {
        self.inner.primes.read().unwrap()[..self.inner.explicit_len].to_vec()
    }
}

/// A vertex as the 1-based path of child indices from the root; coordinate
/// k ranges over [1, l_k].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexPath {
    coords: Vec<BigUint>,
}

impl VertexPath {
    pub fn root() -> Self {
        Self { coords: Vec::new() }
    }

    pub fn new(coords: Vec<BigUint>) -> Self {
        Self { coords }
    }

    pub fn from_u64(coords: &[u64]) -> Self {
        Self {
            coords: coords.iter().map(|&c| BigUint::from(c)).collect(),
        }
    }

    pub fn level(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigUint] {
        &self.coords
    }

    pub fn child(&self, index: BigUint) -> Self {
        let mut coords = self.coords.clone();
        coords.push(index);
        Self { coords }
    }

    pub fn parent(&self) -> Option<Self> {
        if self.coords.is_empty() {
            None
        } else {
            Some(Self {
                coords: self.coords[..self.coords.len() - 1].to_vec(),
            })
        }
    }

    pub fn is_prefix_of(&self, other: &VertexPath) -> bool {
        other.coords.len() >= self.coords.len()
            && other.coords[..self.coords.len()] == self.coords[..]
    }

    /// Check each coordinate against its level's valency.
    pub fn validate(&self, seq: &PrimeSequence) -> Result<()> {
        for (level, coordinate) in self.coords.iter().enumerate() {
            let valency = seq.prime_at(level)?;
            if coordinate.is_zero() || *coordinate > valency {
                return Err(Error::InvalidVertex {
                    coordinate: coordinate.clone(),
                    level,
                    valency,
                });
            }
        }
        Ok(())
    }

    /// Parse the CLI form "2.1" (dot-separated, 1-based).
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Self::root());
        }
        let mut coords = Vec::new();
        for (i, part) in text.split('.').enumerate() {
            let coord: BigUint = part.trim().parse().map_err(|_| Error::Parse {
                position: i,
                message: format!("bad vertex coordinate {part:?}"),
            })?;
            coords.push(coord);
        }
        Ok(Self { coords })
    }
}

impl fmt::Display for VertexPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "");
        }
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("."))
    }
}

impl Serialize for VertexPath {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

/// Lexicographic comparison of two same-level vertices.
pub fn vertex_order(u: &VertexPath, v: &VertexPath) -> Result<Ordering> {
    if u.level() != v.level() {
        return Err(Error::PathLengthMismatch {
            left: u.level(),
            right: v.level(),
        });
    }
    Ok(u.coords.cmp(&v.coords))
}

/// All vertices of level n, in lexicographic order. Guarded: refuses levels
/// whose size does not fit the cap, since consumers must otherwise stay
/// sparse.
pub fn enumerate_level(seq: &PrimeSequence, n: usize, cap: u64) -> Result<Vec<VertexPath>> {
    let size = seq.level_size(n)?;
    let size = size
        .to_u64()
        .filter(|&s| s <= cap)
        .ok_or_else(|| Error::EnumerationTooLarge(format!("level {n} has {size} vertices")))?;
    let mut out = Vec::with_capacity(size as usize);
    let mut stack = vec![VertexPath::root()];
    // Depth-first with ordered children yields lexicographic order.
    while let Some(path) = stack.pop() {
        if path.level() == n {
            out.push(path);
            continue;
        }
        let valency = seq.prime_at(path.level())?.to_u64().ok_or_else(|| {
            Error::EnumerationTooLarge(format!("valency at level {} too large", path.level()))
        })?;
        for child in (1..=valency).rev() {
            stack.push(path.child(BigUint::from(child)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_sizes() {
        let seq = PrimeSequence::from_u64(&[7, 11, 13]).unwrap();
        assert_eq!(seq.level_size(0).unwrap(), BigUint::from(1u32));
        assert_eq!(seq.level_size(2).unwrap(), BigUint::from(77u32));
        assert_eq!(seq.level_size(3).unwrap(), BigUint::from(1001u32));
    }

    #[test]
    fn construction_rejects_bad_sequences() {
        assert!(PrimeSequence::from_u64(&[7, 7, 11]).is_err());
        assert!(PrimeSequence::from_u64(&[5, 11]).is_err());
        assert!(PrimeSequence::from_u64(&[]).is_err());
        assert!(PrimeSequence::from_u64(&[9, 11]).is_err());
    }

    #[test]
    fn auto_extension_is_deterministic_and_opt_in() {
        let seq = PrimeSequence::from_u64(&[7, 11]).unwrap();
        assert!(matches!(seq.prime_at(2), Err(Error::SequenceExhausted { level: 2 })));
        let seq = seq.auto_extended(true);
        assert_eq!(seq.prime_at(2).unwrap(), BigUint::from(13u32));
        assert_eq!(seq.prime_at(4).unwrap(), BigUint::from(19u32));
        assert_eq!(seq.provenance(1), Some(Provenance::Explicit));
        assert_eq!(seq.provenance(3), Some(Provenance::AutoExtended));
    }

    #[test]
    fn vertex_ordering() {
        let u = VertexPath::from_u64(&[1, 2]);
        let v = VertexPath::from_u64(&[1, 3]);
        let w = VertexPath::from_u64(&[2, 1]);
        let x = VertexPath::from_u64(&[1, 9]);
        assert_eq!(vertex_order(&u, &v).unwrap(), Ordering::Less);
        assert_eq!(vertex_order(&w, &x).unwrap(), Ordering::Greater);
        assert_eq!(vertex_order(&u, &u).unwrap(), Ordering::Equal);
        assert!(vertex_order(&u, &VertexPath::from_u64(&[1])).is_err());
    }

    #[test]
    fn enumeration_matches_level_size_and_prefixes_are_valid() {
        let seq = PrimeSequence::from_u64(&[7, 11]).unwrap();
        let level2 = enumerate_level(&seq, 2, 10_000).unwrap();
        assert_eq!(level2.len(), 77);
        for v in &level2 {
            v.validate(&seq).unwrap();
            // Subtree closure: every prefix of a valid path is valid.
            let prefix = v.parent().unwrap();
            prefix.validate(&seq).unwrap();
        }
        let mut sorted = level2.clone();
        sorted.sort();
        assert_eq!(level2, sorted);
    }

    #[test]
    fn vertex_parse_round_trip() {
        let v = VertexPath::parse("2.1").unwrap();
        assert_eq!(v, VertexPath::from_u64(&[2, 1]));
        assert_eq!(v.to_string(), "2.1");
        assert!(VertexPath::parse("2.x").is_err());
    }
}
