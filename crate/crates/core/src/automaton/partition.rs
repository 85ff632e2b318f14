use std::collections::BTreeMap;

use super::AutomatonError;

/// An equivalence relation over the states `0..n`, stored as blocks.
///
/// Blocks are kept in canonical order: members ascending, blocks ordered by
/// their smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, AutomatonError> {
        let mut seen = vec![false; n];
        for block in &blocks {
            if block.is_empty() {
                return Err(AutomatonError::InvalidPartition("empty block".into()));
            }
            for &q in block {
                if q >= n {
                    return Err(AutomatonError::InvalidPartition(format!(
                        "state {q} out of range 0..{n}"
                    )));
                }
                if seen[q] {
                    return Err(AutomatonError::InvalidPartition(format!(
                        "state {q} appears in two blocks"
                    )));
                }
                seen[q] = true;
            }
        }
        if let Some(q) = seen.iter().position(|s| !s) {
            return Err(AutomatonError::InvalidPartition(format!(
                "state {q} is not covered"
            )));
        }
        Ok(Self::canonical(n, blocks))
    }

    fn canonical(n: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        let mut block_of = vec![0; n];
        for (i, b) in blocks.iter().enumerate() {
            for &q in b {
                block_of[q] = i;
            }
        }
        Partition { blocks, block_of }
    }

    /// States with equal keys share a block.
    pub fn from_key<K: Ord>(n: usize, key: impl Fn(usize) -> K) -> Self {
        let mut groups: BTreeMap<K, Vec<usize>> = BTreeMap::new();
        for q in 0..n {
            groups.entry(key(q)).or_default().push(q);
        }
        Self::canonical(n, groups.into_values().collect())
    }

    pub fn discrete(n: usize) -> Self {
        Self::canonical(n, (0..n).map(|q| vec![q]).collect())
    }

    /// The partition obtained by fusing the blocks of `p` and `q`.
    pub fn merge(&self, p: usize, q: usize) -> Self {
        let (bp, bq) = (self.block_of[p], self.block_of[q]);
        if bp == bq {
            return self.clone();
        }
        let mut blocks = Vec::with_capacity(self.blocks.len() - 1);
        let mut fused = Vec::new();
        for (i, b) in self.blocks.iter().enumerate() {
            if i == bp || i == bq {
                fused.extend_from_slice(b);
            } else {
                blocks.push(b.clone());
            }
        }
        blocks.push(fused);
        Self::canonical(self.block_of.len(), blocks)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, q: usize) -> usize {
        self.block_of[q]
    }

    pub fn num_states(&self) -> usize {
        self.block_of.len()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn same_block(&self, p: usize, q: usize) -> bool {
        self.block_of[p] == self.block_of[q]
    }
}
