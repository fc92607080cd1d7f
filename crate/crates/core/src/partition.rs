//! Partitions of a finite index set `{0, ..., kappa - 1}` and the
//! partition lattice ordered by refinement.
//!
//! A partition is stored as its restricted growth string: position `i`
//! carries the number of its block, blocks numbered by first occurrence.
//! This is a canonical form, and the lexicographic order on these strings
//! is the canonical enumeration order.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    labels: Vec<usize>,
}

impl Partition {
    /// All singletons.
    pub fn bottom(index_size: usize) -> Self {
        Partition {
            labels: (0..index_size).collect(),
        }
    }

    /// One block.
    pub fn top(index_size: usize) -> Self {
        Partition {
            labels: vec![0; index_size],
        }
    }

    /// Positions grouped by equal label; labels may be arbitrary.
    pub fn kernel_of<T: PartialEq>(values: &[T]) -> Self {
        let mut labels = Vec::with_capacity(values.len());
        let mut firsts: Vec<usize> = Vec::new();
        for (i, v) in values.iter().enumerate() {
            match firsts.iter().position(|&f| values[f] == *v) {
                Some(block) => labels.push(block),
                None => {
                    labels.push(firsts.len());
                    firsts.push(i);
                }
            }
        }
        Partition { labels }
    }

    pub fn from_blocks(index_size: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        if index_size == 0 {
            return Err(Error::argument("partition index set must be nonempty"));
        }
        let mut owner = vec![usize::MAX; index_size];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::argument("partition blocks must be nonempty"));
            }
            for &i in block {
                if i >= index_size {
                    return Err(Error::argument(format!(
                        "element {i} outside index set of size {index_size}"
                    )));
                }
                if owner[i] != usize::MAX {
                    return Err(Error::argument(format!("element {i} appears in two blocks")));
                }
                owner[i] = b;
            }
        }
        if let Some(missing) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::argument(format!("element {missing} is in no block")));
        }
        Ok(Partition::kernel_of(&owner))
    }

    /// Accepts restricted growth strings only.
    pub(crate) fn from_rgs(labels: Vec<usize>) -> Self {
        debug_assert!(is_rgs(&labels));
        Partition { labels }
    }

    pub fn index_size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn block_count(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }

    /// Blocks sorted by minimum element, elements ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (i, &b) in self.labels.iter().enumerate() {
            blocks[b].push(i);
        }
        blocks
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.labels[i] == self.labels[j]
    }

    /// `self <= other`: every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        if self.index_size() != other.index_size() {
            return false;
        }
        // the block of `other` containing each block of `self`
        let mut image = vec![usize::MAX; self.block_count()];
        self.labels.iter().zip(&other.labels).all(|(&a, &b)| {
            if image[a] == usize::MAX {
                image[a] = b;
            }
            image[a] == b
        })
    }

    pub fn meet(&self, other: &Partition) -> Partition {
        assert_eq!(self.index_size(), other.index_size());
        let pairs: Vec<(usize, usize)> = self.labels.iter().copied().zip(other.labels.iter().copied()).collect();
        Partition::kernel_of(&pairs)
    }

    pub fn join(&self, other: &Partition) -> Partition {
        assert_eq!(self.index_size(), other.index_size());
        let n = self.index_size();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for p in [self, other] {
            let mut first = vec![usize::MAX; p.block_count()];
            for i in 0..n {
                let b = p.labels[i];
                if first[b] == usize::MAX {
                    first[b] = i;
                } else {
                    let (x, y) = (find(&mut parent, first[b]), find(&mut parent, i));
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
        let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
        Partition::kernel_of(&roots)
    }
}

fn is_rgs(labels: &[usize]) -> bool {
    let mut next = 0;
    labels.iter().all(|&l| {
        if l > next {
            false
        } else {
            if l == next {
                next += 1;
            }
            true
        }
    })
}

impl fmt::Display for Partition {
    /// `0,1|2`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (b, block) in self.blocks().iter().enumerate() {
            if b > 0 {
                f.write_str("|")?;
            }
            for (i, x) in block.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `0,1|2`; the index set is `0..=max element`.
    fn from_str(s: &str) -> Result<Self> {
        let blocks = s
            .split('|')
            .map(|block| {
                block
                    .split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::argument(format!("bad partition element `{}`", x.trim())))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let size = blocks.iter().flatten().max().map_or(0, |m| m + 1);
        Partition::from_blocks(size, &blocks)
    }
}

/// All partitions of `{0, ..., kappa - 1}` in canonical order.
#[derive(Debug, Clone)]
pub struct PartitionLattice {
    kappa: usize,
    elements: Vec<Partition>,
}

impl PartitionLattice {
    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Partition] {
        &self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Partition> {
        self.elements.iter()
    }

    pub fn bottom(&self) -> Partition {
        Partition::bottom(self.kappa)
    }

    pub fn top(&self) -> Partition {
        Partition::top(self.kappa)
    }

    pub fn leq(&self, a: &Partition, b: &Partition) -> bool {
        a.refines(b)
    }

    pub fn join(&self, a: &Partition, b: &Partition) -> Partition {
        a.join(b)
    }

    pub fn meet(&self, a: &Partition, b: &Partition) -> Partition {
        a.meet(b)
    }

    /// Everything below `p`.
    pub fn downset(&self, p: &Partition) -> Vec<Partition> {
        self.elements.iter().filter(|q| q.refines(p)).cloned().collect()
    }
}

/// Enumerates restricted growth strings by successor steps.
pub fn partition_lattice(kappa: usize, limits: &Limits) -> Result<PartitionLattice> {
    if kappa == 0 {
        return Err(Error::argument("partition lattice needs kappa >= 1"));
    }
    if kappa > limits.max_kappa {
        return Err(Error::resource(
            "partition lattice index size",
            kappa as u128,
            limits.max_kappa as u128,
        ));
    }
    let mut elements = Vec::new();
    let mut labels = vec![0usize; kappa];
    // running maximum of labels[..=i]
    let mut maxes = vec![0usize; kappa];
    loop {
        elements.push(Partition::from_rgs(labels.clone()));
        // rightmost position that may still grow
        let Some(i) = (1..kappa).rev().find(|&i| labels[i] <= maxes[i - 1]) else {
            break;
        };
        labels[i] += 1;
        maxes[i] = maxes[i - 1].max(labels[i]);
        for j in i + 1..kappa {
            labels[j] = 0;
            maxes[j] = maxes[i];
        }
    }
    Ok(PartitionLattice { kappa, elements })
}
