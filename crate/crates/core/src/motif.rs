//! Binary motif vectors and populations of them.

use serde::{Deserialize, Serialize};

use crate::error::{EvoError, Result};

/// A point of `{0,1}^d`: one bit per motif site.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MotifVector {
    bits: Vec<u8>,
}

impl MotifVector {
    /// Builds a vector from explicit 0/1 entries.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if bits.is_empty() {
            return Err(EvoError::ZeroDimension);
        }
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(EvoError::InvalidBit(b));
        }
        Ok(Self {
            bits: bits.to_vec(),
        })
    }

    pub fn from_bools(bits: impl IntoIterator<Item = bool>) -> Result<Self> {
        let bits: Vec<u8> = bits.into_iter().map(u8::from).collect();
        Self::from_bits(&bits)
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::from_bits(&vec![0; dim])
    }

    pub fn ones(dim: usize) -> Result<Self> {
        Self::from_bits(&vec![1; dim])
    }

    pub fn dim(&self) -> usize {
        self.bits.len()
    }

    /// Bit at `site`; panics when out of range, like slice indexing.
    pub fn get(&self, site: usize) -> u8 {
        self.bits[site]
    }

    pub fn is_set(&self, site: usize) -> bool {
        self.bits[site] == 1
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub(crate) fn set(&mut self, site: usize, value: bool) {
        self.bits[site] = u8::from(value);
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }
}

/// An ordered multiset of equal-length motif vectors.
///
/// Order only matters for iteration and serialization; every statistic
/// computed over a population is invariant to it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Population {
    members: Vec<MotifVector>,
}

impl Population {
    pub fn new(members: Vec<MotifVector>) -> Result<Self> {
        let first = members.first().ok_or(EvoError::EmptyPopulation)?;
        let dim = first.dim();
        if let Some(bad) = members.iter().find(|m| m.dim() != dim) {
            return Err(EvoError::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(Self { members })
    }

    /// `size` copies of `member`.
    pub fn uniform_copies(member: MotifVector, size: usize) -> Result<Self> {
        Self::new(vec![member; size])
    }

    pub fn zeros(dim: usize, size: usize) -> Result<Self> {
        Self::uniform_copies(MotifVector::zeros(dim)?, size)
    }

    pub fn from_rows(rows: &[&[u8]]) -> Result<Self> {
        let members = rows
            .iter()
            .map(|r| MotifVector::from_bits(r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(members)
    }

    pub fn dim(&self) -> usize {
        self.members[0].dim()
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[MotifVector] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, MotifVector> {
        self.members.iter()
    }

    pub fn into_members(self) -> Vec<MotifVector> {
        self.members
    }

    /// Fraction of members carrying a 1 at each site.
    pub fn ones_fraction(&self) -> Vec<f64> {
        let mut counts = vec![0usize; self.dim()];
        for m in &self.members {
            for (c, &b) in counts.iter_mut().zip(m.bits()) {
                *c += usize::from(b);
            }
        }
        let size = self.size() as f64;
        counts.into_iter().map(|c| c as f64 / size).collect()
    }
}

impl<'a> IntoIterator for &'a Population {
    type Item = &'a MotifVector;
    type IntoIter = std::slice::Iter<'a, MotifVector>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}
