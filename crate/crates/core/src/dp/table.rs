use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::ncp::encode_labels;

/// Weight/cost part of a configuration. `active` holds the weights of the
/// parts of `pi_in ∨ pi_out` in representative order; `finished` holds the
/// weights of districts closed off inside the cluster, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightKey {
    pub cost: u64,
    pub active: Vec<u64>,
    pub finished: Vec<u64>,
}

impl WeightKey {
    /// The k-vector: active slots, then finished slots, then zeros.
    pub fn weight_vector(&self, k: usize) -> Vec<u64> {
        let mut w = Vec::with_capacity(k.max(self.parts()));
        w.extend_from_slice(&self.active);
        w.extend_from_slice(&self.finished);
        w.resize(k.max(w.len()), 0);
        w
    }

    pub fn parts(&self) -> usize {
        self.active.len() + self.finished.len()
    }
}

/// Restricted-growth labels of `pi_in` and `pi_out` over the sorted boundary.
pub type TopoKey = (Vec<u8>, Vec<u8>);

pub type Entries<V> = BTreeMap<WeightKey, V>;

#[derive(Clone, Debug, PartialEq)]
pub struct ClusterTable<V> {
    pub cluster: usize,
    /// Sorted boundary vertex indices; the ground set of both partitions.
    pub ground: Vec<usize>,
    pub entries: BTreeMap<TopoKey, Entries<V>>,
}

impl<V> ClusterTable<V> {
    pub fn new(cluster: usize, ground: Vec<usize>) -> Self {
        ClusterTable {
            cluster,
            ground,
            entries: BTreeMap::new(),
        }
    }

    /// Number of (topological, weight/cost) entries.
    pub fn len(&self) -> usize {
        self.entries.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, pi_in: &[u8], pi_out: &[u8], key: &WeightKey) -> Option<&V> {
        self.entries
            .get(&(pi_in.to_vec(), pi_out.to_vec()))
            .and_then(|e| e.get(key))
    }

    /// Distinct `pi_in` labels present, in sorted order.
    pub fn pi_in_keys(&self) -> Vec<Vec<u8>> {
        let mut keys: Vec<Vec<u8>> = self.entries.keys().map(|(i, _)| i.clone()).collect();
        keys.dedup();
        keys
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TopoKey, &WeightKey, &V)> {
        self.entries
            .iter()
            .flat_map(|(t, e)| e.iter().map(move |(w, v)| (t, w, v)))
    }
}

impl<V: std::fmt::Display> ClusterTable<V> {
    /// One line per entry: `pi_in | pi_out | weights | cost | value`.
    pub fn dump(&self, k: usize) -> String {
        let mut out = String::new();
        for ((pi_in, pi_out), w, v) in self.iter() {
            let weights: Vec<String> = w.weight_vector(k).iter().map(u64::to_string).collect();
            let _ = writeln!(
                out,
                "{} | {} | {} | {} | {}",
                encode_labels(pi_in),
                encode_labels(pi_out),
                weights.join(" "),
                w.cost,
                v
            );
        }
        out
    }
}
