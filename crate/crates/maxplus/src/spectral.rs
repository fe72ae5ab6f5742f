//! Spectral layer: maximum cycle mean, Kleene star, critical graph,
//! eigencone bases, the spectral projector and visualization scalings.
//!
//! Everything here works in max-plus form, where a matrix is *definite*
//! when its maximum cycle mean is 0 and *visualized* when additionally all
//! entries are <= 0 with equality exactly met on the critical edges.
//! An edge (i,j) of a definite matrix is critical iff a_{ij} + a*_{ji} = 0,
//! i.e. the edge closes a cycle of maximal mean through an optimal path back.

use crate::error::{MpError, Result};
use crate::graph::{checked_lcm, gcd, tarjan_scc};
use crate::matrix::{MpMatrix, MpVector};
use crate::scalar::MpScalar;

/// Adjacency list of the digraph D(A): an edge wherever the entry is finite.
pub(crate) fn adjacency(a: &MpMatrix) -> Vec<Vec<usize>> {
    let n = a.dim();
    (0..n)
        .map(|i| (0..n).filter(|&j| !a.get(i, j).is_zero()).collect())
        .collect()
}

/// Maximum cycle mean lambda(A) over all cycles of D(A); -inf when acyclic.
///
/// Karp's algorithm on each strongly connected component, O(n m) total.
pub fn max_cycle_mean(a: &MpMatrix) -> MpScalar {
    let adj = adjacency(a);
    let mut best = MpScalar::ZERO;
    for comp in tarjan_scc(&adj) {
        if let Some(lam) = karp_component(a, &comp) {
            best = best.oplus(MpScalar::finite(lam));
        }
    }
    best
}

/// Karp on one strongly connected component; None when it carries no cycle
/// (a single node without a self-loop).
fn karp_component(a: &MpMatrix, comp: &[usize]) -> Option<f64> {
    let m = comp.len();
    if m == 1 {
        let v = comp[0];
        return a.get(v, v).as_finite();
    }
    let mut local = vec![usize::MAX; a.dim()];
    for (idx, &v) in comp.iter().enumerate() {
        local[v] = idx;
    }
    // edges inside the component, as (source, target, weight) in local indices
    let mut edges = Vec::new();
    for (ui, &u) in comp.iter().enumerate() {
        for &v in comp {
            if let Some(w) = a.get(u, v).as_finite() {
                edges.push((ui, local[v], w));
            }
        }
    }

    // d[k][v] = max weight of a length-k walk from comp[0] to v
    let neg = f64::NEG_INFINITY;
    let mut d = vec![vec![neg; m]; m + 1];
    d[0][0] = 0.0;
    for k in 1..=m {
        for &(u, v, w) in &edges {
            if d[k - 1][u] != neg {
                let cand = d[k - 1][u] + w;
                if cand > d[k][v] {
                    d[k][v] = cand;
                }
            }
        }
    }

    let mut lambda: Option<f64> = None;
    for v in 0..m {
        if d[m][v] == neg {
            continue;
        }
        let mut inner: Option<f64> = None;
        for k in 0..m {
            if d[k][v] == neg {
                continue;
            }
            let mean = (d[m][v] - d[k][v]) / (m - k) as f64;
            inner = Some(match inner {
                Some(cur) => cur.min(mean),
                None => mean,
            });
        }
        if let Some(val) = inner {
            lambda = Some(match lambda {
                Some(cur) => cur.max(val),
                None => val,
            });
        }
    }
    lambda
}

/// True iff D(A) is strongly connected.
pub fn is_irreducible(a: &MpMatrix) -> bool {
    tarjan_scc(&adjacency(a)).len() == 1
}

/// Subtracts lambda(A) from every finite entry, so the result is definite.
pub fn definite_form(a: &MpMatrix) -> Result<MpMatrix> {
    match max_cycle_mean(a).as_finite() {
        None => Err(MpError::AcyclicMatrix),
        Some(lam) => Ok(a.shift(-lam)),
    }
}

/// The Kleene star A* = I ⊕ A ⊕ ... ⊕ A^{n-1}.
#[derive(Debug, Clone, PartialEq)]
pub struct KleeneStar {
    pub star: MpMatrix,
}

/// Computes A* by a Floyd-Warshall closure; requires lambda(A) <= 0 (+eps).
///
/// The entry a*_{ij} for i != j is the maximal weight of a path from i to j,
/// and the diagonal carries the unit.
pub fn kleene_star(a: &MpMatrix, eps: f64) -> Result<KleeneStar> {
    let lambda = max_cycle_mean(a);
    if let Some(lam) = lambda.as_finite() {
        if lam > eps {
            return Err(MpError::DivergentStar { lambda: lam });
        }
    }
    Ok(KleeneStar {
        star: closure(a),
    })
}

fn closure(a: &MpMatrix) -> MpMatrix {
    let n = a.dim();
    let mut d = a.clone();
    for k in 0..n {
        for i in 0..n {
            let dik = d.get(i, k);
            if dik.is_zero() {
                continue;
            }
            for j in 0..n {
                let cand = dik.otimes(d.get(k, j));
                if cand > d.get(i, j) {
                    d.set(i, j, cand);
                }
            }
        }
    }
    for i in 0..n {
        let v = d.get(i, i).oplus(MpScalar::UNIT);
        d.set(i, i, v);
    }
    d
}

/// The spectral structure of a matrix with finite cycle mean:
/// critical nodes and edges, strongly connected components of the critical
/// graph, their cyclicities and the global cyclicity.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData {
    /// Maximum cycle mean lambda(A).
    pub lambda: MpScalar,
    /// Critical nodes, ascending.
    pub critical_nodes: Vec<usize>,
    /// Critical edges, sorted lexicographically.
    pub critical_edges: Vec<(usize, usize)>,
    /// Node sets of the s.c.c. of the critical graph, each ascending,
    /// ordered by smallest node.
    pub components: Vec<Vec<usize>>,
    /// Cyclicity of each component: gcd of its cycle lengths.
    pub cyclicities: Vec<u64>,
    /// Global cyclicity: lcm of the component cyclicities.
    pub gamma: u64,
    /// Dimension of the underlying matrix.
    pub n: usize,
    /// component index per node, None for non-critical nodes.
    component_of: Vec<Option<usize>>,
}

impl SpectralData {
    /// Number of critical nodes.
    pub fn c(&self) -> usize {
        self.critical_nodes.len()
    }

    /// Number of non-critical nodes.
    pub fn cbar(&self) -> usize {
        self.n - self.critical_nodes.len()
    }

    /// Non-critical nodes, ascending.
    pub fn noncritical_nodes(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&v| self.component_of[v].is_none())
            .collect()
    }

    pub fn component_of(&self, node: usize) -> Option<usize> {
        self.component_of.get(node).copied().flatten()
    }

    pub fn is_critical(&self, node: usize) -> bool {
        self.component_of(node).is_some()
    }

    /// Critical edges inside one component.
    pub fn component_edges(&self, mu: usize) -> Vec<(usize, usize)> {
        self.critical_edges
            .iter()
            .copied()
            .filter(|&(i, _)| self.component_of(i) == Some(mu))
            .collect()
    }
}

/// Computes the critical graph of a matrix with finite lambda(A).
///
/// The matrix is brought to definite form internally; criticality is the
/// test |a_{ij} + a*_{ji}| <= eps on that form.
pub fn critical_graph(a: &MpMatrix, eps: f64) -> Result<SpectralData> {
    let lambda = max_cycle_mean(a);
    let lam = lambda.as_finite().ok_or(MpError::AcyclicMatrix)?;
    let d = a.shift(-lam);
    let star = closure(&d);
    let n = a.dim();

    let mut critical_edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let dij = d.get(i, j);
            if dij.is_zero() {
                continue;
            }
            if dij.otimes(star.get(j, i)).approx_eq(MpScalar::UNIT, eps) {
                critical_edges.push((i, j));
            }
        }
    }

    let mut is_node = vec![false; n];
    for &(i, j) in &critical_edges {
        is_node[i] = true;
        is_node[j] = true;
    }
    let critical_nodes: Vec<usize> = (0..n).filter(|&v| is_node[v]).collect();

    // s.c.c. of the critical graph; every critical node lies on a critical
    // cycle, so no trivial components appear among critical nodes.
    let mut crit_adj = vec![Vec::new(); n];
    for &(i, j) in &critical_edges {
        crit_adj[i].push(j);
    }
    let mut components: Vec<Vec<usize>> = tarjan_scc(&crit_adj)
        .into_iter()
        .filter(|comp| comp.iter().any(|&v| is_node[v]))
        .collect();
    components.sort_by_key(|comp| comp[0]);

    let mut component_of = vec![None; n];
    for (idx, comp) in components.iter().enumerate() {
        for &v in comp {
            component_of[v] = Some(idx);
        }
    }

    let mut cyclicities = Vec::with_capacity(components.len());
    for comp in &components {
        cyclicities.push(component_cyclicity(comp, &crit_adj));
    }
    let mut gamma: u64 = 1;
    for &g in &cyclicities {
        gamma = checked_lcm(gamma, g).ok_or(MpError::GammaOverflow)?;
    }

    Ok(SpectralData {
        lambda,
        critical_nodes,
        critical_edges,
        components,
        cyclicities,
        gamma,
        n,
        component_of,
    })
}

/// Cyclicity of one strongly connected component as the gcd over its edges
/// of level(u) + 1 - level(v), levels from a BFS rooted at the smallest node.
fn component_cyclicity(comp: &[usize], adj: &[Vec<usize>]) -> u64 {
    let levels = bfs_levels(comp, adj);
    let mut g: u64 = 0;
    for &u in comp {
        for &v in &adj[u] {
            let diff = levels[&u] as i64 + 1 - levels[&v] as i64;
            g = gcd(g, diff.unsigned_abs());
        }
    }
    // a strongly connected component of a critical graph always has a cycle
    debug_assert!(g >= 1);
    g.max(1)
}

/// BFS levels from the component's smallest node along its directed edges.
pub(crate) fn bfs_levels(
    comp: &[usize],
    adj: &[Vec<usize>],
) -> std::collections::HashMap<usize, u64> {
    use std::collections::{HashMap, VecDeque};
    let in_comp: std::collections::HashSet<usize> = comp.iter().copied().collect();
    let root = *comp.iter().min().unwrap();
    let mut levels = HashMap::new();
    levels.insert(root, 0u64);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let lu = levels[&u];
        for &v in &adj[u] {
            if in_comp.contains(&v) && !levels.contains_key(&v) {
                levels.insert(v, lu + 1);
                queue.push_back(v);
            }
        }
    }
    debug_assert_eq!(levels.len(), comp.len());
    levels
}

/// Spectral projector Q(A) of a definite matrix:
/// q_{ij} = max over critical k of (a*_{ik} + a*_{kj}).
pub fn spectral_projector(a: &MpMatrix, eps: f64) -> Result<MpMatrix> {
    let sd = require_definite(a, eps)?;
    let star = closure(a);
    Ok(projector_from_star(&star, &sd.critical_nodes))
}

pub(crate) fn projector_from_star(star: &MpMatrix, critical: &[usize]) -> MpMatrix {
    let n = star.dim();
    MpMatrix::from_fn(n, |i, j| {
        let mut acc = MpScalar::ZERO;
        for &k in critical {
            acc = acc.oplus(star.get(i, k).otimes(star.get(k, j)));
        }
        acc
    })
}

fn require_definite(a: &MpMatrix, eps: f64) -> Result<SpectralData> {
    let lambda = max_cycle_mean(a);
    match lambda.as_finite() {
        None => Err(MpError::AcyclicMatrix),
        Some(lam) if lam > eps => Err(MpError::DivergentStar { lambda: lam }),
        Some(lam) if lam < -eps => Err(MpError::NotDefinite { lambda: lam }),
        Some(_) => critical_graph(a, eps),
    }
}

/// Basis of the eigencone of a definite matrix: one star column per
/// critical component, representative chosen as the component's smallest node.
pub fn eigencone_basis(a: &MpMatrix, eps: f64) -> Result<Vec<MpVector>> {
    let sd = require_definite(a, eps)?;
    let star = closure(a);
    Ok(sd.components.iter().map(|comp| star.column(comp[0])).collect())
}

/// Basis of the subeigencone of a definite matrix: the eigencone
/// representatives plus every non-critical star column, ascending by index.
pub fn subeigencone_basis(a: &MpMatrix, eps: f64) -> Result<Vec<MpVector>> {
    let sd = require_definite(a, eps)?;
    let star = closure(a);
    let mut idx: Vec<usize> = sd.components.iter().map(|comp| comp[0]).collect();
    idx.extend(sd.noncritical_nodes());
    idx.sort_unstable();
    Ok(idx.into_iter().map(|i| star.column(i)).collect())
}

/// A matrix scaled so all entries are <= 0 and critical edges sit at 0,
/// together with the scaling vector that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct VisualizedMatrix {
    pub matrix: MpMatrix,
    /// Diagonal of the similarity X, as additive offsets.
    pub scaling: MpVector,
    pub strict: bool,
}

/// Checks the visualization invariants: entries <= eps and every critical
/// edge within eps of the unit.
pub fn is_visualized(a: &MpMatrix, sd: &SpectralData, eps: f64) -> bool {
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            if let Some(v) = a.get(i, j).as_finite() {
                if v > eps {
                    return false;
                }
            }
        }
    }
    sd.critical_edges
        .iter()
        .all(|&(i, j)| a.get(i, j).approx_eq(MpScalar::UNIT, eps))
}

/// Diagonal similarity scaling of a definite matrix onto visualized form:
/// b_{ij} = a_{ij} - x_i + x_j.
///
/// The plain scaling takes x as the elementwise maximum of the star columns;
/// the strict scaling takes the conventional (max-times) sum of the star
/// columns, evaluated as a max-shifted log-sum-exp so only the critical
/// edges stay at 0.
pub fn visualize(a: &MpMatrix, strict: bool, eps: f64) -> Result<VisualizedMatrix> {
    require_definite(a, eps)?;
    let star = closure(a);
    let n = a.dim();
    let mut x = Vec::with_capacity(n);
    for i in 0..n {
        let row = star.row(i);
        let m = row.iter().map(|s| s.value()).fold(f64::NEG_INFINITY, f64::max);
        // the diagonal of the star is 0, so m is finite
        let xi = if strict {
            let sum: f64 = row
                .iter()
                .filter_map(|s| s.as_finite())
                .map(|v| (v - m).exp())
                .sum();
            m + sum.ln()
        } else {
            m
        };
        x.push(xi);
    }
    let matrix = MpMatrix::from_fn(n, |i, j| a.get(i, j).shift(x[j] - x[i]));
    Ok(VisualizedMatrix {
        matrix,
        scaling: MpVector::from_values(&x).expect("finite scaling"),
        strict,
    })
}
