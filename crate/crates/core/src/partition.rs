//! Partitions of `0..n` in canonical form: blocks are numbered by their least
//! member, in ascending order of that least member.

use std::fmt;

/// An equivalence relation on `0..n`, stored as the block id of every element.
///
/// The numbering is canonical (block 0 contains element 0, the next block is
/// the one containing the least element outside block 0, and so on), so two
/// partitions are equal as values exactly when they are equal as relations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Canonicalize an arbitrary block assignment (`assign[x]` = any label).
    pub fn from_assignment(assign: &[usize]) -> Partition {
        let mut seen: Vec<(usize, usize)> = Vec::new(); // (label, block id)
        let mut block_of = vec![0; assign.len()];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (x, &label) in assign.iter().enumerate() {
            // first occurrence of a label opens the next block
            let id = match seen.iter().find(|(l, _)| *l == label) {
                Some(&(_, id)) => id,
                None => {
                    blocks.push(Vec::new());
                    seen.push((label, blocks.len() - 1));
                    blocks.len() - 1
                }
            };
            block_of[x] = id;
            blocks[id].push(x);
        }
        Partition { block_of, blocks }
    }

    /// The discrete partition: every element alone in its block.
    pub fn discrete(n: usize) -> Partition {
        Partition::from_assignment(&(0..n).collect::<Vec<_>>())
    }

    /// The total partition: one block containing everything.
    pub fn total(n: usize) -> Partition {
        Partition::from_assignment(&vec![0; n])
    }

    /// Least partition containing every pair in `pairs` (reflexive closure of
    /// the generated equivalence; no operation compatibility is involved).
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Partition {
        let mut uf = UnionFind::new(n);
        for &(x, y) in pairs {
            assert!(x < n && y < n, "pair ({x},{y}) outside carrier 0..{n}");
            uf.union(x, y);
        }
        uf.into_partition()
    }

    pub fn size(&self) -> usize {
        self.block_of.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    /// Members of block `b`, ascending.
    pub fn block(&self, b: usize) -> &[usize] {
        &self.blocks[b]
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Least member of block `b` (its canonical representative).
    pub fn representative(&self, b: usize) -> usize {
        self.blocks[b][0]
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    /// Does every block of `self` lie inside a block of `other`?
    pub fn refines(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        self.blocks
            .iter()
            .all(|blk| blk.iter().all(|&x| other.block_of[x] == other.block_of[blk[0]]))
    }

    /// Meet of two partitions (intersection of the relations).
    pub fn meet(&self, other: &Partition) -> Partition {
        assert_eq!(self.size(), other.size());
        let n = self.size();
        let stride = other.num_blocks().max(1);
        let assign: Vec<usize> = (0..n)
            .map(|x| self.block_of[x] * stride + other.block_of[x])
            .collect();
        Partition::from_assignment(&assign)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, blk) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            for (j, x) in blk.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

/// Union-find with path halving; small enough not to need ranks.
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when the two classes were distinct.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        // keep the smaller root so representatives stay least elements
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }

    pub fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let assign: Vec<usize> = (0..n).map(|x| self.find(x)).collect();
        Partition::from_assignment(&assign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_numbering() {
        let p = Partition::from_assignment(&[7, 3, 7, 1]);
        assert_eq!(p.block_of, vec![0, 1, 0, 2]);
        assert_eq!(p.blocks(), &[vec![0, 2], vec![1], vec![3]]);
        assert_eq!(p.representative(0), 0);
    }

    #[test]
    fn from_pairs_closure() {
        let p = Partition::from_pairs(4, &[(0, 1), (1, 2)]);
        assert_eq!(p.num_blocks(), 2);
        assert!(p.related(0, 2));
        assert!(!p.related(0, 3));
    }

    #[test]
    fn discrete_and_total() {
        assert_eq!(Partition::discrete(3).num_blocks(), 3);
        assert_eq!(Partition::total(3).num_blocks(), 1);
        assert_eq!(Partition::total(0).num_blocks(), 0);
        assert!(Partition::discrete(3).refines(&Partition::total(3)));
        assert!(!Partition::total(3).refines(&Partition::discrete(3)));
    }

    #[test]
    fn meet_is_intersection() {
        let p = Partition::from_pairs(4, &[(0, 1), (2, 3)]);
        let q = Partition::from_pairs(4, &[(1, 2), (0, 1)]);
        let m = p.meet(&q);
        assert!(m.related(0, 1));
        assert!(!m.related(2, 3));
        assert!(!m.related(1, 2));
    }
}
