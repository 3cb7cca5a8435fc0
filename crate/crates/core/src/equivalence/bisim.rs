use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::formula::Symbol;
use crate::kripke::PointedModel;
use crate::worldset::World;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BisimResult {
    pub bisimilar: bool,
    /// The largest bisimulation, as (left world, right world) names.
    pub relation: Vec<(String, String)>,
}

/// Standard bisimilarity by partition refinement on the disjoint union.
pub fn standard_bisim(left: &PointedModel, right: &PointedModel) -> BisimResult {
    let (m1, m2) = (&left.model, &right.model);
    let n1 = m1.len();
    let total = n1 + m2.len();
    let mut atoms: Vec<Symbol> = m1.atoms().iter().chain(m2.atoms()).cloned().collect();
    atoms.sort();
    atoms.dedup();
    let succ: Vec<Vec<usize>> = m1
        .worlds()
        .map(|w| m1.succ(w).iter().map(|v| v.0).collect())
        .chain(m2.worlds().map(|w| m2.succ(w).iter().map(|v| v.0 + n1).collect()))
        .collect();
    let label = |i: usize| -> Vec<bool> {
        let (m, w) = if i < n1 { (m1, World(i)) } else { (m2, World(i - n1)) };
        atoms.iter().map(|a| m.valuation(a).contains(w)).collect()
    };
    let mut block = renumber((0..total).map(label).collect::<Vec<_>>());
    loop {
        let keys: Vec<(usize, Vec<usize>)> = (0..total)
            .map(|i| {
                let mut s: Vec<usize> = succ[i].iter().map(|&j| block[j]).collect();
                s.sort_unstable();
                s.dedup();
                (block[i], s)
            })
            .collect();
        let next = renumber(keys);
        let stable = next.iter().max() == block.iter().max();
        block = next;
        if stable {
            break;
        }
    }
    let relation = (0..n1)
        .flat_map(|i| (n1..total).map(move |j| (i, j)))
        .filter(|&(i, j)| block[i] == block[j])
        .map(|(i, j)| (m1.name(World(i)).to_string(), m2.name(World(j - n1)).to_string()))
        .collect();
    BisimResult {
        bisimilar: block[left.point.0] == block[n1 + right.point.0],
        relation,
    }
}

fn renumber<K: std::hash::Hash + Eq>(keys: Vec<K>) -> Vec<usize> {
    let mut ids: FxHashMap<K, usize> = FxHashMap::default();
    keys.into_iter()
        .map(|k| {
            let next = ids.len();
            *ids.entry(k).or_insert(next)
        })
        .collect()
}
