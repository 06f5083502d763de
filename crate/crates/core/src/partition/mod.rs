//! Set partitions, partition stabilizers and bases for the action of `S_n`
//! on uniform partitions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub mod base;
pub mod construct;
pub mod refine;

pub use base::{base_size_partitions, construct_theorem2_base, theorem2_value, Ambient, BaseCertificate, Mode};
pub use construct::{construct_bcd_equal, construct_bcd_plus1, construct_bcd_plus2, GridCase, GridCoords};
pub use refine::{partition_stabilizer, Parity};

/// A partition of `{0..ground_size-1}` into disjoint blocks. Block order is
/// kept as given; equality compares blocks as lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SetPartition {
    ground_size: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Checks that the blocks are non-empty, disjoint and cover the ground set.
    /// Each block is sorted.
    pub fn new(ground_size: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; ground_size];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidParameters("empty block".into()));
            }
            block.sort_unstable();
            for &p in block.iter() {
                if p >= ground_size {
                    return Err(Error::PointOutOfRange {
                        point: p + 1,
                        degree: ground_size,
                    });
                }
                if seen[p] {
                    return Err(Error::InvalidParameters(format!("point {} lies in two blocks", p + 1)));
                }
                seen[p] = true;
            }
        }
        if let Some(p) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidParameters(format!("point {} is in no block", p + 1)));
        }
        Ok(Self { ground_size, blocks })
    }

    /// The partition whose `k`-th block is `{k*b .. (k+1)*b - 1}`.
    pub fn consecutive(a: usize, b: usize) -> Self {
        Self {
            ground_size: a * b,
            blocks: (0..a).map(|k| (k * b..(k + 1) * b).collect()).collect(),
        }
    }

    /// Builds the partition from a block label per point.
    pub fn from_labels(labels: &[usize]) -> Self {
        let count = labels.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); count];
        for (p, &l) in labels.iter().enumerate() {
            blocks[l].push(p);
        }
        blocks.retain(|b| !b.is_empty());
        Self {
            ground_size: labels.len(),
            blocks,
        }
    }

    /// Parses `{1,2,3}|{4,5,6}` (1-based points). The ground size is the
    /// number of points listed.
    pub fn parse(text: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for part in text.trim().split('|') {
            let body = part
                .trim()
                .strip_prefix('{')
                .and_then(|s| s.strip_suffix('}'))
                .ok_or_else(|| Error::Syntax(format!("block {part:?} is not braced")))?;
            let mut block = Vec::new();
            for tok in body.split(',') {
                let tok = tok.trim();
                let p: usize = tok.parse().map_err(|_| Error::Syntax(format!("bad point {tok:?}")))?;
                if p == 0 {
                    return Err(Error::Syntax("points are 1-based".into()));
                }
                block.push(p - 1);
            }
            blocks.push(block);
        }
        let n = blocks.iter().map(Vec::len).sum();
        Self::new(n, blocks)
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Common block size, if all blocks have the same size.
    pub fn uniform_size(&self) -> Option<usize> {
        let b = self.blocks.first()?.len();
        self.blocks.iter().all(|x| x.len() == b).then_some(b)
    }

    /// Block index of every point.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.ground_size];
        for (k, block) in self.blocks.iter().enumerate() {
            for &p in block {
                labels[p] = k;
            }
        }
        labels
    }

    /// Labels renumbered by first appearance; equal exactly when the two
    /// partitions have the same blocks.
    pub fn canonical_labels(&self) -> Vec<u8> {
        canonicalize(&self.labels())
    }

    pub fn same_partition(&self, other: &Self) -> bool {
        self.ground_size == other.ground_size && self.canonical_labels() == other.canonical_labels()
    }

    /// Image of the partition under `g`.
    pub fn apply(&self, g: &Permutation) -> Self {
        Self {
            ground_size: self.ground_size,
            blocks: self
                .blocks
                .iter()
                .map(|b| {
                    let mut img: Vec<usize> = b.iter().map(|&p| g.image(p)).collect();
                    img.sort_unstable();
                    img
                })
                .collect(),
        }
    }

    /// Does `g` map every block onto a block?
    pub fn is_stabilized_by(&self, g: &Permutation) -> bool {
        let labels = self.labels();
        self.blocks.iter().all(|b| {
            let target = labels[g.image(b[0])];
            b.iter().all(|&p| labels[g.image(p)] == target)
        })
    }
}

pub(crate) fn canonicalize(labels: &[usize]) -> Vec<u8> {
    let mut map = vec![u8::MAX; labels.len().max(1)];
    let mut next = 0u8;
    labels
        .iter()
        .map(|&l| {
            if map[l] == u8::MAX {
                map[l] = next;
                next += 1;
            }
            map[l]
        })
        .collect()
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, block) in self.blocks.iter().enumerate() {
            if k > 0 {
                f.write_str("|")?;
            }
            f.write_str("{")?;
            for (i, p) in block.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p = SetPartition::parse("{1,2,3}|{4,5,6}").unwrap();
        assert_eq!(p.ground_size(), 6);
        assert_eq!(p.uniform_size(), Some(3));
        assert_eq!(p.to_string(), "{1,2,3}|{4,5,6}");
        assert_eq!(p, SetPartition::consecutive(2, 3));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(SetPartition::parse("{1,2}|{2,3}").is_err());
        assert!(SetPartition::parse("{1,2}|{4,5}").is_err());
        assert!(SetPartition::parse("1,2|{3,4}").is_err());
        assert!(SetPartition::parse("{0,1}").is_err());
    }

    #[test]
    fn canonical_labels_ignore_block_order() {
        let p = SetPartition::parse("{4,5,6}|{1,2,3}").unwrap();
        let q = SetPartition::consecutive(2, 3);
        assert_ne!(p, q);
        assert!(p.same_partition(&q));
        assert_eq!(p.canonical_labels(), vec![0, 0, 0, 1, 1, 1]);
    }

    #[test]
    fn stabilized_by() {
        let p = SetPartition::consecutive(2, 2);
        assert!(p.is_stabilized_by(&Permutation::parse("(1,3)(2,4)", 4).unwrap()));
        assert!(p.is_stabilized_by(&Permutation::parse("(1,2)", 4).unwrap()));
        assert!(!p.is_stabilized_by(&Permutation::parse("(2,3)", 4).unwrap()));
        let g = Permutation::parse("(2,3)", 4).unwrap();
        assert_eq!(p.apply(&g).to_string(), "{1,3}|{2,4}");
    }
}
