use std::collections::BTreeMap;

use serde_json::json;

use super::{from_straight_line, Point};
use crate::error::{Error, Result};
use crate::graph::{EdgeRecord, EmbeddedGraph, VertexId};
use crate::plan::Plan;
use crate::problem::ProblemSpec;

/// Bin Packing with `bins` bins of capacity `capacity`, padded with unit
/// values so that the values sum to exactly `bins · capacity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinPackingInstance {
    pub values: Vec<u64>,
    pub bins: usize,
    pub capacity: u64,
    /// Number of unit values appended by padding.
    pub padding: usize,
}

impl BinPackingInstance {
    pub fn new(values: Vec<u64>, bins: usize, capacity: u64) -> Result<Self> {
        if bins == 0 || capacity == 0 {
            return Err(Error::Gadget("bins and capacity must be positive".into()));
        }
        if values.contains(&0) {
            return Err(Error::Gadget("values must be positive".into()));
        }
        let target = bins as u64 * capacity;
        let sum: u64 = values.iter().sum();
        if sum > target {
            return Err(Error::Gadget(format!(
                "values sum to {sum}, more than {bins} bins of capacity {capacity}"
            )));
        }
        let padding = (target - sum) as usize;
        let mut values = values;
        values.extend(std::iter::repeat_n(1, padding));
        Ok(BinPackingInstance {
            values,
            bins,
            capacity,
            padding,
        })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Finds a packing by exhaustive search (value `i` goes to bin
    /// `result[i]`, 0-based), or `None` when there is none.
    pub fn solve(&self) -> Option<Vec<usize>> {
        let mut load = vec![0u64; self.bins];
        let mut assign = vec![0usize; self.n()];
        fn rec(
            inst: &BinPackingInstance,
            i: usize,
            load: &mut [u64],
            assign: &mut [usize],
        ) -> bool {
            if i == inst.n() {
                return load.iter().all(|&l| l == inst.capacity);
            }
            for b in 0..inst.bins {
                if load[b] + inst.values[i] > inst.capacity {
                    continue;
                }
                // empty bins are interchangeable
                if load[b] == 0 && load[..b].contains(&0) {
                    continue;
                }
                load[b] += inst.values[i];
                assign[i] = b;
                if rec(inst, i + 1, load, assign) {
                    return true;
                }
                load[b] -= inst.values[i];
            }
            false
        }
        rec(self, 0, &mut load, &mut assign).then_some(assign)
    }

    pub fn is_feasible(&self) -> bool {
        self.solve().is_some()
    }
}

#[derive(Clone, Debug)]
pub struct GadgetInstance {
    pub graph: EmbeddedGraph,
    pub spec: ProblemSpec,
    /// `(row, column)`, both 1-based, to vertex id.
    pub labels: BTreeMap<(usize, usize), VertexId>,
    /// Factor applied to every weight to make them integral.
    pub scale: u64,
    pub instance: BinPackingInstance,
}

impl GadgetInstance {
    pub fn rows(&self) -> usize {
        2 * self.instance.n() + 1
    }

    pub fn row_len(&self, row: usize) -> usize {
        if row % 2 == 1 {
            self.instance.bins
        } else {
            self.instance.bins + 1
        }
    }

    /// Sidecar document mapping `s_i^j` to vertex ids.
    pub fn labels_json(&self) -> serde_json::Value {
        let labels: Vec<serde_json::Value> = self
            .labels
            .iter()
            .map(|(&(row, col), &id)| json!({ "row": row, "col": col, "vertex": id }))
            .collect();
        json!({
            "bins": self.instance.bins,
            "capacity": self.instance.capacity,
            "values": self.instance.values,
            "scale": self.scale,
            "labels": labels,
        })
    }
}

fn checked(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b)
        .ok_or_else(|| Error::Gadget("gadget weights overflow 64 bits".into()))
}

/// Builds the row gadget for `bp`: rows `1..=2n+1`, odd rows with `k`
/// vertices, even rows with `k + 1`. Odd-row vertex `j` is joined to
/// vertices `j` and `j + 1` of both neighbouring rows. All weights are
/// multiplied by `2(n − 1)` so the odd interior rows weigh 1, and every
/// district must weigh exactly the scaled `T + B`.
pub fn binpacking_gadget(bp: &BinPackingInstance) -> Result<GadgetInstance> {
    let n = bp.n();
    if n < 2 {
        return Err(Error::Gadget(
            "the gadget needs at least two values; a single value is decided directly".into(),
        ));
    }
    let k = bp.bins;
    let kb = k as u64 * bp.capacity;
    let scale = 2 * (n as u64 - 1);
    let kb2 = checked(kb, kb)?;
    let kb4 = checked(kb2, kb2)?;
    let rows = 2 * n + 1;
    let row_len = |i: usize| if i % 2 == 1 { k } else { k + 1 };

    let mut labels = BTreeMap::new();
    let mut points = Vec::new();
    let mut next_id: VertexId = 0;
    for i in 1..=rows {
        let weight = if i == 1 {
            checked(scale, kb2)?
        } else if i == rows {
            checked(scale, kb4)?
        } else if i % 2 == 1 {
            1
        } else {
            checked(scale, bp.values[i / 2 - 1])?
        };
        for j in 1..=row_len(i) {
            // odd-row vertex j sits between even-row vertices j and j + 1
            let x = if i % 2 == 1 { 2 * j } else { 2 * j - 1 } as f64;
            points.push(Point {
                id: next_id,
                weight,
                x,
                y: -(i as f64),
            });
            labels.insert((i, j), next_id);
            next_id += 1;
        }
    }
    let mut edges = Vec::new();
    for i in (1..=rows).step_by(2) {
        for j in 1..=k {
            for adj in [i.wrapping_sub(1), i + 1] {
                if adj == 0 || adj > rows {
                    continue;
                }
                for jj in [j, j + 1] {
                    edges.push(EdgeRecord {
                        id: edges.len() as u32,
                        u: labels[&(i, j)],
                        v: labels[&(adj, jj)],
                        cost: 1,
                    });
                }
            }
        }
    }
    let mut raw = from_straight_line(&points, &edges);
    raw.meta = Some(json!({
        "generator": "binpacking",
        "bins": k,
        "capacity": bp.capacity,
        "values": bp.values,
        "scale": scale,
    }));
    let graph = EmbeddedGraph::from_file(&raw)?;

    // scale · (T + B) with T = (kB)^2 + (kB)^4 + 1/2 + kB
    let lower = checked(scale, kb2 + kb4 + kb + bp.capacity)? + (n as u64 - 1);
    let spec = ProblemSpec::with_auto_cost(&graph, k, lower, lower + 1)?;
    Ok(GadgetInstance {
        graph,
        spec,
        labels,
        scale,
        instance: bp.clone(),
    })
}

/// Completeness construction: odd rows go column by column, and in even row
/// `2i` the bin `u` holding value `i` takes both vertices `u` and `u + 1`.
/// `bins[i]` is the 0-based bin of value `i`.
pub fn bins_to_plan(gi: &GadgetInstance, bins: &[usize]) -> Result<Plan> {
    let k = gi.instance.bins;
    if bins.len() != gi.instance.n() || bins.iter().any(|&b| b >= k) {
        return Err(Error::Gadget(
            "bin assignment does not match the instance".into(),
        ));
    }
    let g = &gi.graph;
    let mut district = vec![0usize; g.num_vertices()];
    for (&(row, col), &id) in &gi.labels {
        let d = if row % 2 == 1 {
            col
        } else {
            let u = bins[row / 2 - 1] + 1;
            if col <= u {
                col
            } else {
                col - 1
            }
        };
        district[g.vertex_index(id).unwrap()] = d;
    }
    Ok(Plan::from_labels(g, &district))
}

/// Soundness direction: reads a packing off a feasible plan. Returns, for
/// each bin (numbered by the row-1 vertex of its district), the 0-based
/// indices of the values it holds.
pub fn plan_to_bins(gi: &GadgetInstance, plan: &Plan) -> Result<Vec<Vec<usize>>> {
    let k = gi.instance.bins;
    let rows = gi.rows();
    let district_of = |row: usize, col: usize| -> Result<usize> {
        let id = gi.labels[&(row, col)];
        plan.assignment
            .get(&id)
            .copied()
            .ok_or_else(|| Error::Gadget(format!("vertex {id} is unassigned")))
    };
    let mut bin_of_district: BTreeMap<usize, usize> = BTreeMap::new();
    for col in 1..=k {
        let d = district_of(1, col)?;
        if bin_of_district.insert(d, col - 1).is_some() {
            return Err(Error::Gadget(format!(
                "district {d} holds two first-row vertices"
            )));
        }
    }
    let mut last: Vec<usize> = (1..=k)
        .map(|col| district_of(rows, col))
        .collect::<Result<_>>()?;
    last.sort_unstable();
    last.dedup();
    if last.len() != k || last.iter().any(|d| !bin_of_district.contains_key(d)) {
        return Err(Error::Gadget(
            "districts do not each hold exactly one last-row vertex".into(),
        ));
    }

    let mut bins = vec![Vec::new(); k];
    for i in 1..=gi.instance.n() {
        let mut per: BTreeMap<usize, usize> = BTreeMap::new();
        for col in 1..=k + 1 {
            *per.entry(district_of(2 * i, col)?).or_default() += 1;
        }
        let doubled: Vec<usize> = per
            .iter()
            .filter(|&(_, &c)| c == 2)
            .map(|(&d, _)| d)
            .collect();
        if per.len() != k || doubled.len() != 1 {
            return Err(Error::Gadget(format!(
                "row {} is not split as one pair plus singletons",
                2 * i
            )));
        }
        let bin = *bin_of_district.get(&doubled[0]).ok_or_else(|| {
            Error::Gadget(format!("district {} has no first-row vertex", doubled[0]))
        })?;
        bins[bin].push(i - 1);
    }
    for (b, members) in bins.iter().enumerate() {
        let sum: u64 = members.iter().map(|&i| gi.instance.values[i]).sum();
        if sum != gi.instance.capacity {
            return Err(Error::Gadget(format!(
                "bin {} sums to {sum}, expected {}",
                b + 1,
                gi.instance.capacity
            )));
        }
    }
    Ok(bins)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plan::validate_plan;

    #[test]
    fn padding_fills_to_k_times_b() {
        let bp = BinPackingInstance::new(vec![2, 1], 2, 3).unwrap();
        assert_eq!(bp.values, vec![2, 1, 1, 1, 1]);
        assert_eq!(bp.padding, 3);
        assert!(BinPackingInstance::new(vec![4, 3], 2, 3).is_err());
    }

    #[test]
    fn exhaustive_packing() {
        assert!(BinPackingInstance::new(vec![1, 1], 2, 1)
            .unwrap()
            .is_feasible());
        assert!(!BinPackingInstance::new(vec![3, 1], 2, 2)
            .unwrap()
            .is_feasible());
        assert!(!BinPackingInstance::new(vec![2, 2, 2], 2, 3)
            .unwrap()
            .is_feasible());
        assert!(BinPackingInstance::new(vec![2, 1, 2, 1], 2, 3)
            .unwrap()
            .is_feasible());
    }

    #[test]
    fn smallest_gadget_shape_and_weights() {
        let bp = BinPackingInstance::new(vec![1, 1], 2, 1).unwrap();
        let gi = binpacking_gadget(&bp).unwrap();
        let sizes: Vec<usize> = (1..=gi.rows()).map(|i| gi.row_len(i)).collect();
        assert_eq!(sizes, vec![2, 3, 2, 3, 2]);
        let w = |row, col| {
            gi.graph
                .weight(gi.graph.vertex_index(gi.labels[&(row, col)]).unwrap())
        };
        assert_eq!(gi.scale, 2);
        assert_eq!(w(1, 1), 8);
        assert_eq!(w(3, 2), 1);
        assert_eq!(w(5, 1), 2 * 16);
        assert_eq!(w(2, 3), 2);
        // 2 (4 + 16 + 2 + 1) + 1
        assert_eq!(gi.spec.lower, 47);
        assert_eq!(gi.spec.upper, 48);
    }

    #[test]
    fn one_vertex_per_row_weighs_scaled_t() {
        let bp = BinPackingInstance::new(vec![2, 1, 1], 2, 2).unwrap();
        let gi = binpacking_gadget(&bp).unwrap();
        let kb = 4u64;
        let t_scaled = gi.scale * (kb * kb + kb.pow(4) + kb) + (bp.n() as u64 - 1);
        for pick in [1usize, 2] {
            let total: u64 = (1..=gi.rows())
                .map(|row| {
                    let col = pick.min(gi.row_len(row));
                    gi.graph
                        .weight(gi.graph.vertex_index(gi.labels[&(row, col)]).unwrap())
                })
                .sum();
            assert_eq!(total, t_scaled);
        }
    }

    #[test]
    fn completeness_construction_round_trips() {
        let bp = BinPackingInstance::new(vec![2, 1, 1], 2, 2).unwrap();
        let gi = binpacking_gadget(&bp).unwrap();
        let assign = bp.solve().unwrap();
        let plan = bins_to_plan(&gi, &assign).unwrap();
        validate_plan(&gi.graph, &gi.spec, &plan).unwrap();
        let bins = plan_to_bins(&gi, &plan).unwrap();
        for (b, members) in bins.iter().enumerate() {
            for &i in members {
                assert_eq!(assign[i], b);
            }
        }
    }

    #[test]
    fn single_value_is_refused() {
        let bp = BinPackingInstance::new(vec![3], 1, 3).unwrap();
        assert!(binpacking_gadget(&bp).is_err());
    }
}
