//! Cyclic classes of the critical graph and the access relations between
//! them.
//!
//! Two critical nodes of one component are in the same class when a path of
//! length divisible by the component's cyclicity connects them. Classes are
//! labelled by a shift s in 0..gamma_mu, anchored so the smallest node of
//! each component sits at shift 0; every critical edge advances the shift
//! by one.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{MpError, Result};
use crate::spectral::{bfs_levels, SpectralData};

/// The partition of the critical nodes into cyclic classes.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicClasses {
    /// classes[mu][s] = nodes of component mu at shift s, ascending.
    classes: Vec<Vec<Vec<usize>>>,
    /// node -> (component, shift); None off the critical graph.
    shift: Vec<Option<(usize, u64)>>,
    /// cyclicity per component.
    cyclicities: Vec<u64>,
}

impl CyclicClasses {
    pub fn component_count(&self) -> usize {
        self.classes.len()
    }

    pub fn cyclicity(&self, mu: usize) -> u64 {
        self.cyclicities[mu]
    }

    /// All classes of a component, indexed by shift.
    pub fn component_classes(&self, mu: usize) -> &[Vec<usize>] {
        &self.classes[mu]
    }

    /// The class at a given shift (reduced modulo the cyclicity).
    pub fn class_at(&self, mu: usize, shift: u64) -> &[usize] {
        let g = self.cyclicities[mu];
        &self.classes[mu][(shift % g) as usize]
    }

    /// (component, shift) of a critical node.
    pub fn shift_of(&self, node: usize) -> Result<(usize, u64)> {
        self.shift
            .get(node)
            .copied()
            .flatten()
            .ok_or(MpError::NonCriticalNode(node))
    }

    /// The class containing a node.
    pub fn class_of(&self, node: usize) -> Result<&[usize]> {
        let (mu, s) = self.shift_of(node)?;
        Ok(&self.classes[mu][s as usize])
    }

    /// Flat list of (component, shift, nodes) in canonical order.
    pub fn iter_classes(&self) -> impl Iterator<Item = (usize, u64, &[usize])> {
        self.classes.iter().enumerate().flat_map(|(mu, cls)| {
            cls.iter()
                .enumerate()
                .map(move |(s, nodes)| (mu, s as u64, nodes.as_slice()))
        })
    }

    /// Total number of cyclic classes.
    pub fn total_classes(&self) -> usize {
        self.cyclicities.iter().map(|&g| g as usize).sum()
    }
}

/// Builds the cyclic classes from spectral data: BFS levels modulo the
/// component cyclicity, anchored at the component's smallest node.
pub fn cyclic_classes(sd: &SpectralData) -> CyclicClasses {
    let mut adj = vec![Vec::new(); sd.n];
    for &(i, j) in &sd.critical_edges {
        adj[i].push(j);
    }
    let mut classes = Vec::with_capacity(sd.components.len());
    let mut shift = vec![None; sd.n];
    for (mu, comp) in sd.components.iter().enumerate() {
        let g = sd.cyclicities[mu];
        let levels = bfs_levels(comp, &adj);
        let mut cls = vec![Vec::new(); g as usize];
        for &v in comp {
            let s = levels[&v] % g;
            shift[v] = Some((mu, s));
            cls[s as usize].push(v);
        }
        for c in &mut cls {
            c.sort_unstable();
        }
        classes.push(cls);
    }
    CyclicClasses {
        classes,
        shift,
        cyclicities: sd.cyclicities.clone(),
    }
}

/// Residue t with [i] ->_t [j] when i and j are in the same component;
/// None across components.
pub fn access(cc: &CyclicClasses, i: usize, j: usize) -> Result<Option<u64>> {
    let (mu_i, s_i) = cc.shift_of(i)?;
    let (mu_j, s_j) = cc.shift_of(j)?;
    if mu_i != mu_j {
        return Ok(None);
    }
    let g = cc.cyclicities[mu_i];
    Ok(Some((s_j + g - s_i % g) % g))
}

/// The class [j] with [j] ->_m [i], i.e. the class m steps before [i].
/// Negative m walks forward.
pub fn class_shift(cc: &CyclicClasses, i: usize, m: i64) -> Result<&[usize]> {
    let (mu, s) = cc.shift_of(i)?;
    let g = cc.cyclicities[mu] as i64;
    let target = (s as i64 - m).rem_euclid(g);
    Ok(&cc.classes[mu][target as usize])
}

/// Digraph condensation route to the same partition: repeatedly merge all
/// successors of a node into a single super-node until every super-node has
/// one successor; the super-nodes are the cyclic classes.
///
/// Returns the partition as a sorted set of sorted node sets, for comparison
/// against the BFS labelling.
pub fn condensation_classes(comp: &[usize], edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let members: BTreeSet<usize> = comp.iter().copied().collect();
    let local: Vec<(usize, usize)> = edges
        .iter()
        .copied()
        .filter(|&(u, v)| members.contains(&u) && members.contains(&v))
        .collect();

    // union-find over the component's nodes
    let mut parent: BTreeMap<usize, usize> = members.iter().map(|&v| (v, v)).collect();
    fn find(parent: &mut BTreeMap<usize, usize>, v: usize) -> usize {
        let p = parent[&v];
        if p == v {
            v
        } else {
            let root = find(parent, p);
            parent.insert(v, root);
            root
        }
    }

    loop {
        let mut changed = false;
        let reps: BTreeSet<usize> = members.iter().map(|&v| find(&mut parent, v)).collect();
        for &rep in &reps {
            // successors of the whole super-node
            let mut succ = BTreeSet::new();
            for &(u, v) in &local {
                if find(&mut parent, u) == rep {
                    succ.insert(find(&mut parent, v));
                }
            }
            let mut it = succ.into_iter();
            if let Some(first) = it.next() {
                for other in it {
                    let a = find(&mut parent, first);
                    let b = find(&mut parent, other);
                    if a != b {
                        parent.insert(a.max(b), a.min(b));
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &v in &members {
        groups.entry(find(&mut parent, v)).or_default().push(v);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    for g in &mut out {
        g.sort_unstable();
    }
    out.sort();
    out
}

/// Checks that the condensation partition agrees with the BFS labelling on
/// every component.
pub fn partitions_agree(sd: &SpectralData, cc: &CyclicClasses) -> bool {
    for (mu, comp) in sd.components.iter().enumerate() {
        let edges = sd.component_edges(mu);
        let mut bfs: Vec<Vec<usize>> = cc.component_classes(mu).to_vec();
        bfs.sort();
        let cond = condensation_classes(comp, &edges);
        if bfs != cond {
            return false;
        }
    }
    true
}

/// Cyclicity of a plain strongly connected edge list, from the condensation
/// route (number of super-nodes). Exposed for cross-checks in tests.
pub fn condensation_cyclicity(comp: &[usize], edges: &[(usize, usize)]) -> u64 {
    condensation_classes(comp, edges).len() as u64
}
