use crate::ncp::{canonical_labels, UnionFind};
use crate::problem::ProblemSpec;

use super::table::WeightKey;

/// Boundary sets of a parent cluster and its two children, as positions
/// inside their sorted union `omega = theta_1 ∪ theta_2`.
#[derive(Clone, Debug)]
pub struct Frame {
    pub omega: Vec<usize>,
    pub pos: [Vec<usize>; 3],
}

impl Frame {
    pub fn new(theta0: &[usize], theta1: &[usize], theta2: &[usize]) -> Self {
        let mut omega: Vec<usize> = theta1.iter().chain(theta2).copied().collect();
        omega.sort_unstable();
        omega.dedup();
        let locate = |theta: &[usize]| -> Vec<usize> {
            theta
                .iter()
                .map(|x| {
                    omega
                        .binary_search(x)
                        .expect("parent boundary inside children's")
                })
                .collect()
        };
        let pos = [locate(theta0), locate(theta1), locate(theta2)];
        Frame { omega, pos }
    }
}

fn union_labels(uf: &mut UnionFind, pos: &[usize], labels: &[u8]) {
    let mut first = [usize::MAX; 256];
    for (&p, &l) in pos.iter().zip(labels) {
        let slot = &mut first[l as usize];
        if *slot == usize::MAX {
            *slot = p;
        } else {
            uf.union(*slot, p);
        }
    }
}

fn restrict(uf: &mut UnionFind, pos: &[usize]) -> Vec<u8> {
    let roots: Vec<u8> = pos.iter().map(|&p| uf.find(p) as u8).collect();
    canonical_labels(&roots)
}

/// The consistent completion of one `(pi_out_0, pi_in_1, pi_in_2)` triple,
/// with the slot maps that align child weight vectors.
///
/// `mu = pi_in_1 ∨ pi_in_2 ∨ pi_out_0` over `omega` describes the districts
/// as seen from the parent. Each active slot of a child, and each active slot
/// of the parent, is one block of `mu`; blocks of `mu` that miss the parent
/// boundary are districts completed inside the parent.
#[derive(Clone, Debug)]
pub struct Junction {
    pub pi_in0: Vec<u8>,
    pub pi_out1: Vec<u8>,
    pub pi_out2: Vec<u8>,
    slot1: Vec<usize>,
    slot2: Vec<usize>,
    parent_slot: Vec<Option<usize>>,
    num_parent: usize,
}

impl Junction {
    /// `None` when `mu` has more than `k` blocks.
    pub fn new(frame: &Frame, out0: &[u8], in1: &[u8], in2: &[u8], k: usize) -> Option<Junction> {
        let n = frame.omega.len();
        let [p0, p1, p2] = &frame.pos;

        let mut uf = UnionFind::new(n);
        union_labels(&mut uf, p1, in1);
        union_labels(&mut uf, p2, in2);
        let pi_in0 = restrict(&mut uf, p0);
        union_labels(&mut uf, p0, out0);
        let mu: Vec<usize> = (0..n).map(|i| uf.find(i)).collect();
        let mut block_id = vec![usize::MAX; n];
        let mut blocks = 0;
        for &r in &mu {
            if block_id[r] == usize::MAX {
                block_id[r] = blocks;
                blocks += 1;
            }
        }
        if blocks > k {
            return None;
        }

        let mut uf1 = UnionFind::new(n);
        union_labels(&mut uf1, p0, out0);
        union_labels(&mut uf1, p2, in2);
        let pi_out1 = restrict(&mut uf1, p1);
        let mut uf2 = UnionFind::new(n);
        union_labels(&mut uf2, p0, out0);
        union_labels(&mut uf2, p1, in1);
        let pi_out2 = restrict(&mut uf2, p2);

        let slots = |pos: &[usize]| {
            let mut seen = vec![false; blocks];
            let mut order = Vec::new();
            for &p in pos {
                let b = block_id[mu[p]];
                if !seen[b] {
                    seen[b] = true;
                    order.push(b);
                }
            }
            order
        };
        let slot1 = slots(p1);
        let slot2 = slots(p2);
        let mut parent_slot = vec![None; blocks];
        let parent_order = slots(p0);
        for (s, &b) in parent_order.iter().enumerate() {
            parent_slot[b] = Some(s);
        }
        Some(Junction {
            pi_in0,
            pi_out1,
            pi_out2,
            slot1,
            slot2,
            parent_slot,
            num_parent: parent_order.len(),
        })
    }

    pub fn num_blocks(&self) -> usize {
        self.parent_slot.len()
    }

    /// Child 1 (`which = 0`) or child 2 active weights spread over the blocks
    /// of `mu`, followed by the cost.
    pub fn align(&self, which: usize, w: &WeightKey) -> Vec<u64> {
        let slot = if which == 0 { &self.slot1 } else { &self.slot2 };
        debug_assert_eq!(slot.len(), w.active.len());
        let mut coord = vec![0u64; self.num_blocks() + 1];
        for (&b, &x) in slot.iter().zip(&w.active) {
            coord[b] = x;
        }
        coord[self.num_blocks()] = w.cost;
        coord
    }

    /// Parent key from summed block weights and cost, plus both children's
    /// finished districts. Newly finished blocks must be admissible district
    /// weights; `None` drops the contribution.
    pub fn finish(
        &self,
        coord: &[u64],
        finished1: &[u64],
        finished2: &[u64],
        spec: &ProblemSpec,
    ) -> Option<WeightKey> {
        let nb = self.num_blocks();
        let mut active = vec![0u64; self.num_parent];
        let mut finished: Vec<u64> = Vec::with_capacity(finished1.len() + finished2.len() + nb);
        finished.extend_from_slice(finished1);
        finished.extend_from_slice(finished2);
        for b in 0..nb {
            let w = coord[b];
            match self.parent_slot[b] {
                Some(s) => {
                    if w >= spec.upper {
                        return None;
                    }
                    active[s] = w;
                }
                None => {
                    if !spec.admits_weight(w) {
                        return None;
                    }
                    finished.push(w);
                }
            }
        }
        if active.len() + finished.len() > spec.k {
            return None;
        }
        finished.sort_unstable();
        Some(WeightKey {
            cost: coord[nb],
            active,
            finished,
        })
    }

    /// Direct combination of one pair of child keys.
    pub fn merge(
        &self,
        w1: &WeightKey,
        w2: &WeightKey,
        spec: &ProblemSpec,
        cost_in_key: bool,
    ) -> Option<WeightKey> {
        let mut coord = self.align(0, w1);
        for (c, x) in coord.iter_mut().zip(self.align(1, w2)) {
            *c += x;
        }
        let cost = coord[self.num_blocks()];
        if cost_in_key && cost >= spec.max_cost {
            return None;
        }
        self.finish(&coord, &w1.finished, &w2.finished, spec)
    }
}
