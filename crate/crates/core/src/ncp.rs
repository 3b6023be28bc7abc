//! Partitions of cluster boundaries.
//!
//! A [`BoundaryPartition`] stores its ground set sorted ascending together
//! with a restricted-growth string: block labels are numbered in order of
//! first appearance along the ground, which is the same as sorting blocks by
//! their smallest member. Crossing tests take a separate cyclic order; the
//! two orders are never mixed.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryPartition {
    ground: Vec<usize>,
    labels: Vec<u8>,
}

/// Relabels `labels` into restricted-growth form.
pub fn canonical_labels(labels: &[u8]) -> Vec<u8> {
    let mut map = [u8::MAX; 256];
    let mut next = 0u8;
    labels
        .iter()
        .map(|&l| {
            let slot = &mut map[l as usize];
            if *slot == u8::MAX {
                *slot = next;
                next += 1;
            }
            *slot
        })
        .collect()
}

impl BoundaryPartition {
    pub fn empty() -> Self {
        BoundaryPartition {
            ground: Vec::new(),
            labels: Vec::new(),
        }
    }

    /// Builds a partition from disjoint nonempty blocks.
    pub fn from_blocks<B: AsRef<[usize]>>(blocks: &[B]) -> Result<Self> {
        let mut pairs: Vec<(usize, u8)> = Vec::new();
        for (b, block) in blocks.iter().enumerate() {
            let block = block.as_ref();
            if block.is_empty() {
                return Err(Error::Format("partition block is empty".into()));
            }
            pairs.extend(block.iter().map(|&x| (x, b as u8)));
        }
        pairs.sort_unstable();
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Format("partition blocks overlap".into()));
        }
        let ground = pairs.iter().map(|p| p.0).collect();
        let labels: Vec<u8> = pairs.iter().map(|p| p.1).collect();
        Ok(BoundaryPartition {
            ground,
            labels: canonical_labels(&labels),
        })
    }

    /// `ground` must be sorted and duplicate free; labels are canonicalised.
    pub fn from_labels(ground: Vec<usize>, labels: &[u8]) -> Self {
        debug_assert!(ground.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(ground.len(), labels.len());
        BoundaryPartition {
            ground,
            labels: canonical_labels(labels),
        }
    }

    pub fn singletons(ground: &[usize]) -> Self {
        let mut ground = ground.to_vec();
        ground.sort_unstable();
        ground.dedup();
        let labels = (0..ground.len()).map(|i| i as u8).collect();
        BoundaryPartition { ground, labels }
    }

    pub fn single_block(ground: &[usize]) -> Self {
        let mut ground = ground.to_vec();
        ground.sort_unstable();
        ground.dedup();
        let labels = vec![0; ground.len()];
        BoundaryPartition { ground, labels }
    }

    pub fn ground(&self) -> &[usize] {
        &self.ground
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.labels
            .iter()
            .map(|&l| l as usize + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn block_of(&self, x: usize) -> Option<u8> {
        self.ground.binary_search(&x).ok().map(|i| self.labels[i])
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (&x, &l) in self.ground.iter().zip(&self.labels) {
            blocks[l as usize].push(x);
        }
        blocks
    }

    /// Smallest member of each block, blocks in canonical order.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = Vec::with_capacity(self.num_blocks());
        for (&x, &l) in self.ground.iter().zip(&self.labels) {
            if l as usize == reps.len() {
                reps.push(x);
            }
        }
        reps
    }

    /// Restricted-growth key over the ground order.
    pub fn encode(&self) -> Vec<u8> {
        self.labels.clone()
    }

    pub fn encode_string(&self) -> String {
        encode_labels(&self.labels)
    }

    pub fn decode(ground: &[usize], code: &[u8]) -> Result<Self> {
        if ground.len() != code.len() {
            return Err(Error::Format(format!(
                "code of length {} for ground of size {}",
                code.len(),
                ground.len()
            )));
        }
        if canonical_labels(code) != code {
            return Err(Error::Format(
                "code is not a restricted-growth string".into(),
            ));
        }
        let mut sorted = ground.to_vec();
        sorted.sort_unstable();
        if sorted != ground {
            return Err(Error::Format("ground must be sorted".into()));
        }
        Ok(BoundaryPartition {
            ground: sorted,
            labels: code.to_vec(),
        })
    }

    /// Partition induced on `subset`, which must lie inside the ground set.
    pub fn restrict(&self, subset: &[usize]) -> Self {
        let mut sub = subset.to_vec();
        sub.sort_unstable();
        sub.dedup();
        let labels: Vec<u8> = sub
            .iter()
            .map(|&x| self.block_of(x).expect("restriction outside ground set"))
            .collect();
        BoundaryPartition::from_labels(sub, &labels)
    }

    /// `self` is finer than or equal to `other` on a shared ground set.
    pub fn refines(&self, other: &Self) -> bool {
        if self.ground != other.ground {
            return false;
        }
        let mut image = vec![u8::MAX; self.num_blocks()];
        for (&a, &b) in self.labels.iter().zip(&other.labels) {
            let slot = &mut image[a as usize];
            if *slot == u8::MAX {
                *slot = b;
            } else if *slot != b {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for BoundaryPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                b.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{{{}}}", blocks.join("|"))
    }
}

pub fn encode_labels(labels: &[u8]) -> String {
    labels
        .iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Small union-find over `0..n`.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn reset(&mut self, n: usize) {
        self.parent.clear();
        self.parent.extend(0..n);
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            // keep the smaller root so roots are deterministic
            if ra < rb {
                self.parent[rb] = ra;
            } else {
                self.parent[ra] = rb;
            }
        }
    }
}

/// Least common coarsening of two partitions, over the union of their
/// ground sets.
pub fn join(p1: &BoundaryPartition, p2: &BoundaryPartition) -> BoundaryPartition {
    let mut ground: Vec<usize> = p1.ground.iter().chain(&p2.ground).copied().collect();
    ground.sort_unstable();
    ground.dedup();
    let mut uf = UnionFind::new(ground.len());
    for p in [p1, p2] {
        let mut first: Vec<Option<usize>> = vec![None; p.num_blocks()];
        for (&x, &l) in p.ground.iter().zip(&p.labels) {
            let i = ground.binary_search(&x).unwrap();
            match first[l as usize] {
                None => first[l as usize] = Some(i),
                Some(j) => uf.union(i, j),
            }
        }
    }
    let roots: Vec<u8> = (0..ground.len()).map(|i| uf.find(i) as u8).collect();
    BoundaryPartition::from_labels(ground, &roots)
}

/// True iff no two blocks interleave along the cyclic `order`.
pub fn is_noncrossing(p: &BoundaryPartition, order: &[usize]) -> Result<bool> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != p.ground {
        return Err(Error::Format(
            "order is not a permutation of the partition's ground set".into(),
        ));
    }
    let seq: Vec<u8> = order.iter().map(|&x| p.block_of(x).unwrap()).collect();
    Ok(labels_noncrossing(&seq))
}

/// Crossing test on a label sequence read along the cyclic order.
pub fn labels_noncrossing(seq: &[u8]) -> bool {
    let mut last = [usize::MAX; 256];
    for (i, &l) in seq.iter().enumerate() {
        last[l as usize] = i;
    }
    let mut seen = [false; 256];
    let mut stack: Vec<u8> = Vec::new();
    for (i, &l) in seq.iter().enumerate() {
        if stack.last() == Some(&l) {
            // continuing the innermost open block
        } else if seen[l as usize] {
            return false;
        } else {
            seen[l as usize] = true;
            stack.push(l);
        }
        if last[l as usize] == i {
            stack.pop();
        }
    }
    true
}

/// Every noncrossing partition of the cyclic sequence `order`, each once.
/// There are Catalan(`order.len()`) of them.
pub fn enumerate_noncrossing(order: &[usize]) -> Vec<BoundaryPartition> {
    let m = order.len();
    let mut ground = order.to_vec();
    ground.sort_unstable();
    let pos_in_ground: Vec<usize> = order
        .iter()
        .map(|x| ground.binary_search(x).unwrap())
        .collect();
    let mut out = Vec::new();
    let mut labels = vec![0u8; m];
    let items: Vec<usize> = (0..m).collect();
    nc_recurse(&[items], 0, &mut labels, &mut |labels| {
        let mut by_ground = vec![0u8; m];
        for (i, &l) in labels.iter().enumerate() {
            by_ground[pos_in_ground[i]] = l;
        }
        out.push(BoundaryPartition::from_labels(ground.clone(), &by_ground));
    });
    out
}

// Partitions each segment in `pending` (positions along the cycle)
// noncrossingly, one segment after another.
fn nc_recurse(
    pending: &[Vec<usize>],
    next_label: u8,
    labels: &mut Vec<u8>,
    emit: &mut dyn FnMut(&[u8]),
) {
    let Some((segment, others)) = pending.split_first() else {
        emit(labels);
        return;
    };
    if segment.is_empty() {
        nc_recurse(others, next_label, labels, emit);
        return;
    }
    let first = segment[0];
    let rest = &segment[1..];
    for mask in 0u64..(1u64 << rest.len()) {
        labels[first] = next_label;
        let mut gaps: Vec<Vec<usize>> = vec![Vec::new()];
        for (i, &x) in rest.iter().enumerate() {
            if mask >> i & 1 == 1 {
                labels[x] = next_label;
                gaps.push(Vec::new());
            } else {
                gaps.last_mut().unwrap().push(x);
            }
        }
        gaps.retain(|g| !g.is_empty());
        gaps.extend(others.iter().cloned());
        nc_recurse(&gaps, next_label + 1, labels, emit);
    }
}

/// Every set partition of `ground` (Bell many), in restricted-growth order.
pub fn enumerate_all(ground: &[usize]) -> Vec<BoundaryPartition> {
    let mut sorted = ground.to_vec();
    sorted.sort_unstable();
    let m = sorted.len();
    let mut out = Vec::new();
    let mut rgs = vec![0u8; m];
    fn rec(
        i: usize,
        max: u8,
        rgs: &mut Vec<u8>,
        ground: &[usize],
        out: &mut Vec<BoundaryPartition>,
    ) {
        if i == rgs.len() {
            out.push(BoundaryPartition {
                ground: ground.to_vec(),
                labels: rgs.clone(),
            });
            return;
        }
        let top = if i == 0 { 0 } else { max + 1 };
        for l in 0..=top {
            rgs[i] = l;
            rec(i + 1, max.max(l), rgs, ground, out);
        }
    }
    if m == 0 {
        out.push(BoundaryPartition::empty());
    } else {
        rec(0, 0, &mut rgs, &sorted, &mut out);
    }
    out
}
