//! Periodic powers of an irreducible visualized matrix without transient
//! search.
//!
//! The engine squares the matrix up to one exponent r0 >= n^2 (a power of
//! two). From that single cached power every periodic power A^r, r >= T(A),
//! is reconstructed: critical rows and columns move by a cyclic-class
//! permutation, and the non-critical block is a max combination of critical
//! columns with coefficients taken from the residue-0 power. The transient
//! T(A) itself is never computed on this path; `transient_oracle` exists
//! only as the brute-force reference.

use crate::cyclic::{cyclic_classes, CyclicClasses};
use crate::error::{MpError, Result};
use crate::matrix::{mp_power_residues, MpMatrix, MpRect, MpVector};
use crate::scalar::MpScalar;
use crate::spectral::{critical_graph, is_irreducible, is_visualized, SpectralData};
use crate::{graph, spectral};

/// Periodicity engine over one irreducible, definite, visualized matrix.
///
/// Construction costs ceil(log2 n^2) matrix multiplications (the squaring
/// chain) plus the O(n^3) spectral analysis; every query afterwards is free
/// of matrix multiplications.
#[derive(Debug, Clone)]
pub struct PeriodicPowerEngine {
    a: MpMatrix,
    spectral: SpectralData,
    classes: CyclicClasses,
    /// A^{r0} for the cached exponent r0 (a power of two >= n^2).
    cache: MpMatrix,
    r0: u64,
    eps: f64,
    matmuls: usize,
}

impl PeriodicPowerEngine {
    pub fn new(a: MpMatrix, eps: f64) -> Result<Self> {
        if !is_irreducible(&a) {
            return Err(MpError::NotIrreducible);
        }
        let spectral = critical_graph(&a, eps)?;
        let lam = spectral.lambda.value();
        if lam.abs() > eps {
            return Err(MpError::NotDefinite { lambda: lam });
        }
        if !is_visualized(&a, &spectral, eps) {
            return Err(MpError::NotVisualized);
        }
        let classes = cyclic_classes(&spectral);
        let n = a.dim();
        let table = mp_power_residues(&a, (n * n).max(1) as u64);
        Ok(PeriodicPowerEngine {
            a,
            spectral,
            classes,
            cache: table.power,
            r0: table.exponent,
            eps,
            matmuls: table.multiplications,
        })
    }

    pub fn matrix(&self) -> &MpMatrix {
        &self.a
    }

    pub fn spectral(&self) -> &SpectralData {
        &self.spectral
    }

    pub fn classes(&self) -> &CyclicClasses {
        &self.classes
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Matrix multiplications spent building the engine.
    pub fn matmul_count(&self) -> usize {
        self.matmuls
    }

    /// The cached exponent r0.
    pub fn cached_exponent(&self) -> u64 {
        self.r0
    }

    /// Representative node of the class at `shift` in component `mu`.
    fn class_rep(&self, mu: usize, shift: u64) -> usize {
        self.classes.class_at(mu, shift)[0]
    }

    /// Source node in the cache whose row equals row `i` of the periodic
    /// power at residue k: rows shift forward by (k - r0) class steps.
    fn row_source(&self, i: usize, k: u64) -> usize {
        let (mu, s) = self.classes.shift_of(i).expect("critical node");
        let g = self.classes.cyclicity(mu);
        let l = (k % g + g - self.r0 % g) % g;
        self.class_rep(mu, (s + l) % g)
    }

    /// Source node in the cache whose column equals column `j` of the
    /// periodic power at residue k: columns shift backward.
    fn column_source(&self, j: usize, k: u64) -> usize {
        let (mu, s) = self.classes.shift_of(j).expect("critical node");
        let g = self.classes.cyclicity(mu);
        let l = (k % g + g - self.r0 % g) % g;
        self.class_rep(mu, (s + g - l) % g)
    }

    /// The periodic power A^r for any r >= T(A) with r ≡ k (mod gamma).
    ///
    /// k is reduced modulo gamma. No matrix multiplication is performed:
    /// critical rows and columns are permuted copies of the cache, and the
    /// non-critical block is rebuilt from the linear dependence of
    /// non-critical columns on critical ones.
    pub fn periodic_power(&self, k: u64) -> MpMatrix {
        let n = self.a.dim();
        let critical = &self.spectral.critical_nodes;
        let mut out = MpMatrix::zero(n);

        // critical rows
        for &i in critical {
            let src = self.row_source(i, k);
            for j in 0..n {
                out.set(i, j, self.cache.get(src, j));
            }
        }
        // critical columns
        for &j in critical {
            let src = self.column_source(j, k);
            for i in 0..n {
                out.set(i, j, self.cache.get(i, src));
            }
        }

        // non-critical block: column v of A^r is the max combination of the
        // critical columns of A^r with coefficients from the residue-0 rows.
        let noncritical = self.spectral.noncritical_nodes();
        if !noncritical.is_empty() {
            let coeff: Vec<usize> = critical.iter().map(|&i| self.row_source(i, 0)).collect();
            for &u in &noncritical {
                for &v in &noncritical {
                    let mut acc = MpScalar::ZERO;
                    for (ci, &i) in critical.iter().enumerate() {
                        // coefficient a^{(r_0-residue)}_{iv} times entry (u,i)
                        let c = self.cache.get(coeff[ci], v);
                        acc = acc.oplus(c.otimes(out.get(u, i)));
                    }
                    out.set(u, v, acc);
                }
            }
        }
        out
    }

    /// Ultimate period of the orbit {A^r ⊗ x : r >= T(A)}: the least alpha
    /// with A^{r+alpha} ⊗ x = A^r ⊗ x for all periodic r.
    ///
    /// Only the critical coordinates of one cached product are needed; the
    /// period per component is read off the class-value cycle and the
    /// result is the lcm over components.
    pub fn orbit_period(&self, x: &MpVector) -> Result<u64> {
        let values = self.class_values(x)?;
        let mut period = 1u64;
        for vals in &values {
            let p = cyclic_min_period(vals, self.eps);
            period = graph::checked_lcm(period, p).ok_or(MpError::GammaOverflow)?;
        }
        Ok(period)
    }

    /// Membership in the attraction cone Attr(A, t): does the orbit of x
    /// ultimately have period dividing t?  Verified on the critical
    /// subsystem, which is equivalent to the full system.
    pub fn attraction_member(&self, x: &MpVector, t: u64) -> Result<bool> {
        assert!(t >= 1, "t must be at least 1");
        let values = self.class_values(x)?;
        for vals in &values {
            let g = vals.len() as u64;
            for s in 0..vals.len() {
                if !vals[(s + (t % g) as usize) % vals.len()].approx_eq(vals[s], self.eps) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Per component: the value of (A^{r0} ⊗ x) on each cyclic class,
    /// indexed by shift. Values agree across one class because class rows
    /// coincide in every power past the critical transient.
    fn class_values(&self, x: &MpVector) -> Result<Vec<Vec<MpScalar>>> {
        if x.len() != self.a.dim() {
            return Err(MpError::DimensionMismatch {
                expected: self.a.dim(),
                found: x.len(),
            });
        }
        let y = self.cache.apply(x)?;
        let mut out = Vec::with_capacity(self.spectral.components.len());
        for mu in 0..self.spectral.components.len() {
            let g = self.classes.cyclicity(mu);
            let mut vals = Vec::with_capacity(g as usize);
            for s in 0..g {
                let nodes = self.classes.class_at(mu, s);
                let v = y.get(nodes[0]);
                debug_assert!(nodes.iter().all(|&u| y.get(u).approx_eq(v, self.eps)));
                vals.push(v);
            }
            out.push(vals);
        }
        Ok(out)
    }

    /// The core matrix: one index per critical component plus one per
    /// non-critical node; each entry is the maximal matrix entry of the
    /// corresponding block. Its Kleene star supplies every coefficient of
    /// the attraction systems.
    pub fn core_matrix(&self) -> CoreMatrix {
        let groups = core_groups(&self.spectral);
        let alpha = core_alpha(&self.a, &groups);
        let alpha_star = spectral::kleene_star(&alpha, self.eps)
            .expect("core matrix of a visualized matrix has nonpositive cycle means")
            .star;
        CoreMatrix {
            alpha,
            alpha_star,
            groups,
            critical_components: self.spectral.components.len(),
        }
    }

    /// CSR decomposition: C and R are the critical columns and rows of the
    /// residue-0 periodic power (the spectral projector of A^gamma), S is
    /// the Boolean critical matrix.
    pub fn csr(&self) -> CsrDecomposition {
        let pi0 = self.periodic_power(0);
        let critical = self.spectral.critical_nodes.clone();
        let n = self.a.dim();
        let c = critical.len();
        let mut c_factor = MpRect::zero(n, c);
        let mut r_factor = MpRect::zero(c, n);
        for (q, &node) in critical.iter().enumerate() {
            for u in 0..n {
                c_factor.set(u, q, pi0.get(u, node));
                r_factor.set(q, u, pi0.get(node, u));
            }
        }
        let mut s_factor = MpMatrix::zero(c.max(1));
        for (p, &u) in critical.iter().enumerate() {
            for (q, &v) in critical.iter().enumerate() {
                if self.spectral.critical_edges.contains(&(u, v)) {
                    s_factor.set(p, q, MpScalar::UNIT);
                }
            }
        }
        CsrDecomposition {
            c_factor,
            s_factor,
            r_factor,
            critical_nodes: critical,
            gamma: self.spectral.gamma,
        }
    }

    /// The reduced periodic power at residue k: one index per cyclic class
    /// plus one per non-critical node; expanding every entry to its
    /// class-sized constant block reproduces `periodic_power(k)`.
    pub fn reduced_power(&self, k: u64) -> ReducedPower {
        let full = self.periodic_power(k);
        let groups = reduced_groups(&self.spectral, &self.classes);
        let m = groups.len();
        let eps = self.eps;
        let matrix = MpMatrix::from_fn(m, |gi, gj| {
            let v = full.get(groups[gi][0], groups[gj][0]);
            debug_assert!(groups[gi].iter().all(|&u| {
                groups[gj].iter().all(|&w| full.get(u, w).approx_eq(v, eps))
            }));
            v
        });
        ReducedPower { matrix, groups }
    }
}

/// Least cyclic period of a value sequence; always divides its length.
/// Equality of values within eps, which is exact on integer-valued data.
fn cyclic_min_period(vals: &[MpScalar], eps: f64) -> u64 {
    let g = vals.len();
    for p in 1..=g {
        if !g.is_multiple_of(p) {
            continue;
        }
        if (0..g).all(|s| vals[(s + p) % g].approx_eq(vals[s], eps)) {
            return p as u64;
        }
    }
    g as u64
}

/// Index groups of the core matrix: critical components first (by smallest
/// node), then each non-critical node as a singleton.
pub(crate) fn core_groups(sd: &SpectralData) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = sd.components.clone();
    groups.extend(sd.noncritical_nodes().into_iter().map(|v| vec![v]));
    groups
}

/// Blockwise maxima of `a` over the given index groups.
pub(crate) fn core_alpha(a: &MpMatrix, groups: &[Vec<usize>]) -> MpMatrix {
    MpMatrix::from_fn(groups.len(), |gi, gj| {
        let mut acc = MpScalar::ZERO;
        for &u in &groups[gi] {
            for &v in &groups[gj] {
                acc = acc.oplus(a.get(u, v));
            }
        }
        acc
    })
}

/// Index groups of the reduced power: cyclic classes in (component, shift)
/// order, then non-critical singletons.
fn reduced_groups(sd: &SpectralData, cc: &CyclicClasses) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = cc
        .iter_classes()
        .map(|(_, _, nodes)| nodes.to_vec())
        .collect();
    groups.extend(sd.noncritical_nodes().into_iter().map(|v| vec![v]));
    groups
}

/// Component-level matrix of maximal block entries and its Kleene star.
#[derive(Debug, Clone, PartialEq)]
pub struct CoreMatrix {
    /// alpha_{mu,nu}: maximal entry of block (mu, nu).
    pub alpha: MpMatrix,
    /// Kleene star of alpha.
    pub alpha_star: MpMatrix,
    /// Core index -> node set: critical components, then non-critical
    /// singletons.
    pub groups: Vec<Vec<usize>>,
    /// Number of leading indices that are critical components.
    pub critical_components: usize,
}

impl CoreMatrix {
    /// Core index of a node.
    pub fn index_of(&self, node: usize) -> Option<usize> {
        self.groups.iter().position(|g| g.contains(&node))
    }
}

/// The factors of A^r = C ⊗ S^l ⊗ R for periodic r ≡ l (mod gamma).
#[derive(Debug, Clone, PartialEq)]
pub struct CsrDecomposition {
    /// n × c: critical columns of the residue-0 periodic power.
    pub c_factor: MpRect,
    /// c × c Boolean critical matrix (unit on critical edges).
    pub s_factor: MpMatrix,
    /// c × n: critical rows of the residue-0 periodic power.
    pub r_factor: MpRect,
    /// The critical nodes the factor indices refer to, ascending.
    pub critical_nodes: Vec<usize>,
    pub gamma: u64,
}

/// Reassembles the periodic power at residue l from the CSR factors.
pub fn csr_reconstruct(d: &CsrDecomposition, l: u64) -> MpMatrix {
    let s_l = d.s_factor.power(l % d.gamma);
    let cs = d
        .c_factor
        .matmul(&MpRect::from_square(&s_l))
        .expect("factor dimensions agree");
    cs.matmul(&d.r_factor)
        .expect("factor dimensions agree")
        .into_square()
}

/// A periodic power collapsed to one index per cyclic class.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedPower {
    pub matrix: MpMatrix,
    /// Reduced index -> node group (cyclic class or non-critical singleton).
    pub groups: Vec<Vec<usize>>,
}

impl ReducedPower {
    /// Expands every entry back to its constant block.
    pub fn expand(&self) -> MpMatrix {
        let n: usize = self.groups.iter().map(|g| g.len()).sum();
        let mut of = vec![0usize; n];
        for (gi, group) in self.groups.iter().enumerate() {
            for &u in group {
                of[u] = gi;
            }
        }
        MpMatrix::from_fn(n, |u, v| self.matrix.get(of[u], of[v]))
    }
}

/// Brute-force transient: the least T >= 1 with A^{T+gamma} = A^T, by
/// iterated multiplication. Exponential-free but linear in T; exists as the
/// reference oracle, never on the fast path.
pub fn transient_oracle(a: &MpMatrix, cap: u64, eps: f64) -> Result<u64> {
    if !is_irreducible(a) {
        return Err(MpError::NotIrreducible);
    }
    let sd = critical_graph(a, eps)?;
    let lam = sd.lambda.value();
    if lam.abs() > eps {
        return Err(MpError::NotDefinite { lambda: lam });
    }
    let gamma = sd.gamma;
    // sliding window of the last gamma powers; at step r the window front
    // holds A^{r-gamma}, so a hit certifies T = r - gamma.
    let mut window: std::collections::VecDeque<MpMatrix> =
        std::collections::VecDeque::with_capacity(gamma as usize);
    let mut current = a.clone();
    let mut r = 1u64;
    loop {
        if window.len() == gamma as usize {
            if *window.front().unwrap() == current {
                return Ok(r - gamma);
            }
            if r - gamma >= cap {
                return Err(MpError::CapExceeded(cap));
            }
            window.pop_front();
        }
        window.push_back(current.clone());
        current = current.matmul(a)?;
        r += 1;
    }
}
