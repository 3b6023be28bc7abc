use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::decomp::Cluster;
use crate::error::{Error, Result};
use crate::ncp::{enumerate_all, enumerate_noncrossing};
use crate::problem::ProblemSpec;

use super::convolve::{convolve_direct, SparseArray};
use super::junction::{Frame, Junction};
use super::semiring::Semiring;
use super::table::{ClusterTable, Entries, TopoKey};
use super::{CombineStrategy, Mode};

/// Whether `cluster` enumerates only noncrossing partitions under `mode`.
pub fn uses_noncrossing(cluster: &Cluster, mode: Mode) -> Result<bool> {
    match mode {
        Mode::General => Ok(false),
        Mode::Auto => Ok(cluster.theta.is_some()),
        Mode::Noncrossing => match cluster.theta {
            Some(_) => Ok(true),
            None => Err(Error::MissingTheta {
                cluster: cluster.id,
            }),
        },
    }
}

/// Candidate `pi_out` labels over the sorted boundary of `cluster`.
pub fn outside_partitions(cluster: &Cluster, mode: Mode) -> Result<Vec<Vec<u8>>> {
    let parts = if uses_noncrossing(cluster, mode)? {
        enumerate_noncrossing(cluster.theta.as_ref().unwrap())
    } else {
        enumerate_all(&cluster.boundary)
    };
    Ok(parts.into_iter().map(|p| p.labels().to_vec()).collect())
}

/// Fills the parent table from its children's tables: for every
/// `(pi_out_0, pi_in_1, pi_in_2)` the consistent completion is derived and
/// the matching child entries are convolved.
pub fn combine<S: Semiring>(
    parent: &Cluster,
    t1: &ClusterTable<S::Value>,
    t2: &ClusterTable<S::Value>,
    spec: &ProblemSpec,
    mode: Mode,
    strategy: CombineStrategy,
) -> Result<ClusterTable<S::Value>> {
    let frame = Frame::new(&parent.boundary, &t1.ground, &t2.ground);
    let in1s = t1.pi_in_keys();
    let in2s = t2.pi_in_keys();
    let outs = outside_partitions(parent, mode)?;

    let parts: Vec<Vec<(TopoKey, Entries<S::Value>)>> = outs
        .par_iter()
        .map(|out0| {
            let mut local: BTreeMap<Vec<u8>, Entries<S::Value>> = BTreeMap::new();
            for in1 in &in1s {
                for in2 in &in2s {
                    let Some(j) = Junction::new(&frame, out0, in1, in2, spec.k) else {
                        continue;
                    };
                    let Some(e1) = t1.entries.get(&(in1.clone(), j.pi_out1.clone())) else {
                        continue;
                    };
                    let Some(e2) = t2.entries.get(&(in2.clone(), j.pi_out2.clone())) else {
                        continue;
                    };
                    let acc = local.entry(j.pi_in0.clone()).or_default();
                    match strategy {
                        CombineStrategy::Direct => accumulate_direct::<S>(&j, e1, e2, spec, acc),
                        CombineStrategy::Transform => {
                            accumulate_transform::<S>(&j, e1, e2, spec, acc)
                        }
                    }
                }
            }
            local
                .into_iter()
                .filter(|(_, e)| !e.is_empty())
                .map(|(in0, e)| ((in0, out0.clone()), e))
                .collect()
        })
        .collect();

    let mut table = ClusterTable::new(parent.id, parent.boundary.clone());
    table.entries = parts.into_iter().flatten().collect();
    Ok(table)
}

fn add_to<S: Semiring>(acc: &mut Entries<S::Value>, key: super::WeightKey, v: S::Value) {
    match acc.get_mut(&key) {
        Some(slot) => S::add_assign(slot, v),
        None => {
            acc.insert(key, v);
        }
    }
}

fn accumulate_direct<S: Semiring>(
    j: &Junction,
    e1: &Entries<S::Value>,
    e2: &Entries<S::Value>,
    spec: &ProblemSpec,
    acc: &mut Entries<S::Value>,
) {
    for (w1, v1) in e1 {
        for (w2, v2) in e2 {
            let Some(key) = j.merge(w1, w2, spec, S::COST_IN_KEY) else {
                continue;
            };
            let v = S::times(v1, v2);
            if S::admissible(&v, spec) {
                add_to::<S>(acc, key, v);
            }
        }
    }
}

/// Groups each child's entries by finished multiset, convolves the aligned
/// weight/cost arrays of every pair of groups, then closes off finished
/// blocks. Uses the semiring's fast convolution when it has one.
fn accumulate_transform<S: Semiring>(
    j: &Junction,
    e1: &Entries<S::Value>,
    e2: &Entries<S::Value>,
    spec: &ProblemSpec,
    acc: &mut Entries<S::Value>,
) {
    let group = |which: usize, entries: &Entries<S::Value>| {
        let mut groups: BTreeMap<Vec<u64>, SparseArray<S::Value>> = BTreeMap::new();
        for (w, v) in entries {
            groups
                .entry(w.finished.clone())
                .or_default()
                .insert(j.align(which, w), v.clone());
        }
        groups
    };
    let g1 = group(0, e1);
    let g2 = group(1, e2);
    let mut caps = vec![spec.upper; j.num_blocks()];
    caps.push(if S::COST_IN_KEY { spec.max_cost } else { 1 });
    for (f1, a) in &g1 {
        for (f2, b) in &g2 {
            if a.len() + b.len() == 0 {
                continue;
            }
            let conv =
                S::convolve_fast(a, b, &caps).unwrap_or_else(|| convolve_direct::<S>(a, b, &caps));
            for (coord, v) in conv {
                if !S::admissible(&v, spec) {
                    continue;
                }
                if let Some(key) = j.finish(&coord, f1, f2, spec) {
                    add_to::<S>(acc, key, v);
                }
            }
        }
    }
}
