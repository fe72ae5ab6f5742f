//! Equation systems for attraction cones and their extremal solutions.
//!
//! The t-attraction cone of a visualized irreducible matrix is the solution
//! set of A^r ⊗ x = A^{r+t} ⊗ x for periodic r. Its critical subsystem is a
//! union of chains of max-linear equations, one chain per strongly connected
//! component of the critical graph of A^t, with one side per cyclic class.
//! Chain cancellation drops every dominated term; what survives are the
//! class variables at the unit plus cross-component and non-critical terms
//! whose coefficients are entries of the Kleene star of the core matrix.

use crate::cyclic::CyclicClasses;
use crate::error::{MpError, Result};
use crate::matrix::{MpMatrix, MpVector};
use crate::periodic::{core_alpha, PeriodicPowerEngine};
use crate::scalar::MpScalar;
use crate::spectral::kleene_star;

/// A cross-component term of one side: the variables of M_nu(i) under a
/// shared coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct MTerm {
    /// Index into `AttractionSystem::components`.
    pub component: usize,
    /// Variable indices, ascending.
    pub nodes: Vec<usize>,
    pub coeff: MpScalar,
}

/// A non-critical term of one side: one variable of K(i) with its
/// coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct KTerm {
    pub node: usize,
    pub coeff: MpScalar,
}

/// One side of a chain: the cyclic-class variables at the unit, plus the
/// cancelled cross-component and non-critical terms.
#[derive(Debug, Clone, PartialEq)]
pub struct Side {
    pub class_nodes: Vec<usize>,
    pub m_terms: Vec<MTerm>,
    pub k_terms: Vec<KTerm>,
}

impl Side {
    /// Flattened (variable, coefficient) pairs, ascending by variable.
    pub fn terms(&self) -> Vec<(usize, MpScalar)> {
        let mut out: Vec<(usize, MpScalar)> = self
            .class_nodes
            .iter()
            .map(|&v| (v, MpScalar::UNIT))
            .chain(
                self.m_terms
                    .iter()
                    .flat_map(|m| m.nodes.iter().map(move |&v| (v, m.coeff))),
            )
            .chain(self.k_terms.iter().map(|k| (k.node, k.coeff)))
            .collect();
        out.sort_by_key(|&(v, _)| v);
        out
    }

    /// Value of the side at x.
    pub fn eval(&self, x: &MpVector) -> MpScalar {
        self.terms()
            .into_iter()
            .fold(MpScalar::ZERO, |acc, (v, c)| acc.oplus(c.otimes(x.get(v))))
    }
}

/// One chain of equations: sides in access order; adjacent sides (and the
/// wrap-around pair) are equal.
#[derive(Debug, Clone, PartialEq)]
pub struct Chain {
    /// Index into `AttractionSystem::components`.
    pub component: usize,
    pub sides: Vec<Side>,
}

/// The cancelled equation system describing Attr(A, t).
#[derive(Debug, Clone, PartialEq)]
pub struct AttractionSystem {
    pub t: u64,
    /// Dimension of the underlying matrix.
    pub n: usize,
    /// Node sets of the critical components of C(A^t), by smallest node.
    pub components: Vec<Vec<usize>>,
    pub chains: Vec<Chain>,
}

impl AttractionSystem {
    /// Does x satisfy every chain? Exact equality of side values.
    pub fn satisfied_by(&self, x: &MpVector) -> bool {
        self.chains.iter().all(|chain| {
            let mut values = chain.sides.iter().map(|s| s.eval(x));
            match values.next() {
                None => true,
                Some(first) => values.all(|v| v == first),
            }
        })
    }

    /// Renders chains the way the worked examples print them:
    /// `x1 (+) (x5 - 5) = x2 (+) (x6 - 3) = ...`, one chain per line,
    /// variables 1-based.
    pub fn render_text(&self) -> String {
        let mut lines = Vec::new();
        for chain in &self.chains {
            let sides: Vec<String> = chain
                .sides
                .iter()
                .map(|side| {
                    let terms: Vec<String> = side
                        .terms()
                        .into_iter()
                        .map(|(v, c)| render_term(v, c))
                        .collect();
                    terms.join(" (+) ")
                })
                .collect();
            lines.push(sides.join(" = "));
        }
        lines.join("\n")
    }
}

fn render_term(v: usize, c: MpScalar) -> String {
    let var = format!("x{}", v + 1);
    match c.as_finite() {
        Some(0.0) => var,
        Some(w) if w < 0.0 => format!("({} - {})", var, -w),
        Some(w) => format!("({} + {})", var, w),
        None => format!("({} - inf)", var),
    }
}

/// One side of the raw (uncancelled) critical subsystem: the class it
/// represents and the full coefficient row from a periodic power.
#[derive(Debug, Clone, PartialEq)]
pub struct RawSide {
    pub class_nodes: Vec<usize>,
    pub coeffs: Vec<MpScalar>,
}

/// One chain of the raw critical subsystem with its per-variable coefficient
/// bounds (core-star entries).
#[derive(Debug, Clone, PartialEq)]
pub struct RawChain {
    /// Index into `RawCriticalSystem::components`.
    pub component: usize,
    pub bounds: Vec<MpScalar>,
    pub sides: Vec<RawSide>,
}

/// The two-sided critical subsystem of A^r ⊗ x = A^{r+t} ⊗ x before chain
/// cancellation.
#[derive(Debug, Clone, PartialEq)]
pub struct RawCriticalSystem {
    pub t: u64,
    pub n: usize,
    pub eps: f64,
    /// Critical components of C(A^t), by smallest node.
    pub components: Vec<Vec<usize>>,
    /// Non-critical nodes, ascending.
    pub noncritical: Vec<usize>,
    pub chains: Vec<RawChain>,
}

/// Applies chain cancellation to a raw critical subsystem: on every side
/// only the terms attaining their per-variable bound survive, which leaves
/// the solution set unchanged.
pub fn chain_cancel(raw: &RawCriticalSystem) -> Result<AttractionSystem> {
    // variable -> component index (None for non-critical)
    let mut comp_of: Vec<Option<usize>> = vec![None; raw.n];
    for (idx, comp) in raw.components.iter().enumerate() {
        for &v in comp {
            comp_of[v] = Some(idx);
        }
    }

    let mut chains = Vec::with_capacity(raw.chains.len());
    for chain in &raw.chains {
        // bounds must dominate every coefficient and be attained somewhere
        let mut attained = vec![false; raw.n];
        for side in &chain.sides {
            for v in 0..raw.n {
                let coeff = side.coeffs[v];
                let bound = chain.bounds[v];
                if coeff.value() > bound.value() + raw.eps {
                    return Err(MpError::CoverageGap { variable: v });
                }
                if !bound.is_zero() && coeff.approx_eq(bound, raw.eps) {
                    attained[v] = true;
                }
            }
        }
        for v in 0..raw.n {
            if !chain.bounds[v].is_zero() && !attained[v] {
                return Err(MpError::CoverageGap { variable: v });
            }
        }

        let mut sides = Vec::with_capacity(chain.sides.len());
        for side in &chain.sides {
            let mut class_nodes = Vec::new();
            let mut m_groups: Vec<(usize, Vec<usize>, MpScalar)> = Vec::new();
            let mut k_terms = Vec::new();
            for v in 0..raw.n {
                let bound = chain.bounds[v];
                if bound.is_zero() || !side.coeffs[v].approx_eq(bound, raw.eps) {
                    continue;
                }
                match comp_of[v] {
                    Some(c) if c == chain.component => class_nodes.push(v),
                    Some(c) => match m_groups.iter_mut().find(|(gc, _, _)| *gc == c) {
                        Some((_, nodes, _)) => nodes.push(v),
                        None => m_groups.push((c, vec![v], bound)),
                    },
                    None => k_terms.push(KTerm {
                        node: v,
                        coeff: bound,
                    }),
                }
            }
            m_groups.sort_by_key(|&(c, _, _)| c);
            sides.push(Side {
                class_nodes,
                m_terms: m_groups
                    .into_iter()
                    .map(|(component, nodes, coeff)| MTerm {
                        component,
                        nodes,
                        coeff,
                    })
                    .collect(),
                k_terms,
            });
        }
        chains.push(Chain {
            component: chain.component,
            sides,
        });
    }

    Ok(AttractionSystem {
        t: raw.t,
        n: raw.n,
        components: raw.components.clone(),
        chains,
    })
}

/// The critical structure of A^t derived from the cyclic classes of A:
/// each component of C(A) splits into gcd(t, gamma_mu) components whose
/// classes are connected by t-step access.
struct SubComponent {
    /// component of C(A) this piece came from
    mu: usize,
    /// class shifts in t-step order, starting at the class of the smallest
    /// node of the piece
    shifts: Vec<u64>,
    /// node set, ascending
    nodes: Vec<usize>,
}

fn subcomponents(classes: &CyclicClasses, t: u64) -> Vec<SubComponent> {
    let mut subs = Vec::new();
    for mu in 0..classes.component_count() {
        let g = classes.cyclicity(mu);
        let d = crate::graph::gcd(t % g, g);
        // classes {s : s ≡ rho (mod d)} form one component of C(A^t)
        for rho in 0..d {
            let mut nodes: Vec<usize> = (0..g)
                .filter(|s| s % d == rho)
                .flat_map(|s| classes.class_at(mu, s).iter().copied())
                .collect();
            nodes.sort_unstable();
            // start the t-step walk at the class of the smallest node
            let (_, s0) = classes
                .shift_of(nodes[0])
                .expect("class member is critical");
            let count = g / d;
            let shifts: Vec<u64> = (0..count).map(|i| (s0 + i * t) % g).collect();
            debug_assert_eq!(
                {
                    let mut sorted: Vec<u64> = shifts.clone();
                    sorted.sort_unstable();
                    sorted
                },
                (0..g).filter(|s| s % d == rho).collect::<Vec<u64>>()
            );
            subs.push(SubComponent {
                mu,
                shifts,
                nodes,
            });
        }
    }
    subs.sort_by_key(|s| s.nodes[0]);
    subs
}

/// Builds the raw critical subsystem of A^r ⊗ x = A^{r+t} ⊗ x at a
/// multiple-of-gamma residue, with coefficient bounds from the core star of
/// A^t.
pub fn raw_attraction_system(engine: &PeriodicPowerEngine, t: u64) -> Result<RawCriticalSystem> {
    assert!(t >= 1, "t must be at least 1");
    let n = engine.matrix().dim();
    let eps = engine.eps();
    let classes = engine.classes();
    let sd = engine.spectral();
    let noncritical = sd.noncritical_nodes();

    let subs = subcomponents(classes, t);
    let components: Vec<Vec<usize>> = subs.iter().map(|s| s.nodes.clone()).collect();

    // core matrix of A^t over the components of C(A^t)
    let b = if t == 1 {
        engine.matrix().clone()
    } else {
        engine.matrix().power(t)
    };
    let mut groups: Vec<Vec<usize>> = components.clone();
    groups.extend(noncritical.iter().map(|&v| vec![v]));
    let alpha = core_alpha(&b, &groups);
    let alpha_star = kleene_star(&alpha, eps)?.star;

    // core index per variable
    let mut core_idx = vec![usize::MAX; n];
    for (gi, group) in groups.iter().enumerate() {
        for &v in group {
            core_idx[v] = gi;
        }
    }

    let pi0 = engine.periodic_power(0);

    let mut chains = Vec::with_capacity(subs.len());
    for (omega, sub) in subs.iter().enumerate() {
        let bounds: Vec<MpScalar> = (0..n)
            .map(|v| {
                if core_idx[v] == omega {
                    MpScalar::UNIT
                } else {
                    alpha_star.get(omega, core_idx[v])
                }
            })
            .collect();
        let sides: Vec<RawSide> = sub
            .shifts
            .iter()
            .map(|&s| {
                let class_nodes = classes.class_at(sub.mu, s).to_vec();
                let rep = class_nodes[0];
                RawSide {
                    class_nodes,
                    coeffs: pi0.row(rep).to_vec(),
                }
            })
            .collect();
        chains.push(RawChain {
            component: omega,
            bounds,
            sides,
        });
    }

    Ok(RawCriticalSystem {
        t,
        n,
        eps,
        components,
        noncritical,
        chains,
    })
}

/// The cancelled equation system for Attr(A, t), built from periodic powers.
pub fn attraction_system(engine: &PeriodicPowerEngine, t: u64) -> Result<AttractionSystem> {
    chain_cancel(&raw_attraction_system(engine, t)?)
}

/// Intermediates of the strongly-connected fast path: the boundary vectors
/// of the core matrix, the star of the non-critical block with its optimal
/// path lengths, and the derived membership indicators.
#[derive(Debug, Clone, PartialEq)]
pub struct BorderingTrace {
    /// Best edge weight from the critical part into each non-critical node.
    pub from_critical: MpVector,
    /// Best edge weight from each non-critical node into the critical part.
    pub to_critical: MpVector,
    /// Principal non-critical submatrix B (None when every node is critical).
    pub noncritical_block: Option<MpMatrix>,
    /// Kleene star of B.
    pub noncritical_star: Option<MpMatrix>,
    /// Optimal path lengths per entry of B*: all m with (B^m)_{st} = b*_{st}.
    pub length_sets: Vec<Vec<Vec<u64>>>,
    /// Per non-critical node: which critical nodes start an edge attaining
    /// `from_critical`, shifted one class forward.
    pub start_indicators: Vec<Vec<bool>>,
    /// Per non-critical node: the winning intermediate nodes of h ⊗ B*.
    pub winners: Vec<Vec<usize>>,
    /// Membership indicators: membership[t][i] <=> node t ∈ K(i).
    pub membership: Vec<Vec<bool>>,
    /// K(i) per critical node, as non-critical node lists.
    pub kept_sets: Vec<Vec<usize>>,
    /// h ⊗ B*: the non-critical coefficients of the system.
    pub coefficients: MpVector,
}

/// Computes the Attr(A, 1) system for a strongly connected critical graph
/// without touching periodic powers: coefficients come from h ⊗ B* via the
/// bordering identity for the core star, and the index sets from Boolean
/// indicator shifts. O(cbar^3 · n) in place of the squaring chain.
pub fn attraction_system_bordering(
    engine: &PeriodicPowerEngine,
) -> Result<(AttractionSystem, BorderingTrace)> {
    let sd = engine.spectral();
    if sd.components.len() != 1 {
        return Err(MpError::NotStronglyConnectedCritical);
    }
    let eps = engine.eps();
    let a = engine.matrix();
    let classes = engine.classes();
    let gamma = classes.cyclicity(0);
    let critical = &sd.critical_nodes;
    let noncrit = sd.noncritical_nodes();
    let cbar = noncrit.len();

    // h, g and their argmax sets
    let mut h = Vec::with_capacity(cbar);
    let mut g = Vec::with_capacity(cbar);
    let mut argmax_h: Vec<Vec<usize>> = Vec::with_capacity(cbar);
    for &t_node in &noncrit {
        let mut best = MpScalar::ZERO;
        for &k in critical {
            best = best.oplus(a.get(k, t_node));
        }
        argmax_h.push(
            critical
                .iter()
                .copied()
                .filter(|&k| a.get(k, t_node).approx_eq(best, eps))
                .collect(),
        );
        h.push(best);
        let mut back = MpScalar::ZERO;
        for &k in critical {
            back = back.oplus(a.get(t_node, k));
        }
        g.push(back);
    }

    // B, its star, and the optimal path length sets
    let (b_block, b_star, length_sets) = if cbar == 0 {
        (None, None, Vec::new())
    } else {
        let b = MpMatrix::from_fn(cbar, |s, t| a.get(noncrit[s], noncrit[t]));
        let mut powers = vec![MpMatrix::identity(cbar)];
        for m in 1..cbar {
            powers.push(powers[m - 1].matmul(&b).expect("same dimension"));
        }
        let mut star = MpMatrix::zero(cbar);
        for p in &powers {
            star = star.oplus(p).expect("same dimension");
        }
        let mut lengths = vec![vec![Vec::new(); cbar]; cbar];
        for s in 0..cbar {
            for t in 0..cbar {
                let target = star.get(s, t);
                if target.is_zero() {
                    continue;
                }
                for (m, p) in powers.iter().enumerate() {
                    if p.get(s, t).approx_eq(target, eps) {
                        lengths[s][t].push(m as u64);
                    }
                }
            }
        }
        (Some(b), Some(star), lengths)
    };

    // membership indicator of a class shifted m+1 steps back against the
    // argmax set of column s
    let indicator = |argmax: &[usize], back: u64| -> Vec<bool> {
        critical
            .iter()
            .map(|&i| {
                let (_, si) = classes.shift_of(i).expect("critical");
                let cls = classes.class_at(0, (si + gamma - back % gamma) % gamma);
                argmax.iter().any(|k| cls.contains(k))
            })
            .collect()
    };

    let start_indicators: Vec<Vec<bool>> = (0..cbar).map(|t| indicator(&argmax_h[t], 1)).collect();

    // h ⊗ B*, winners, and the combined membership
    let mut coefficients = Vec::with_capacity(cbar);
    let mut winners: Vec<Vec<usize>> = Vec::with_capacity(cbar);
    let mut membership: Vec<Vec<bool>> = Vec::with_capacity(cbar);
    for t in 0..cbar {
        let star = b_star.as_ref().expect("cbar > 0");
        let mut best = MpScalar::ZERO;
        for s in 0..cbar {
            best = best.oplus(h[s].otimes(star.get(s, t)));
        }
        let wins: Vec<usize> = (0..cbar)
            .filter(|&s| h[s].otimes(star.get(s, t)).approx_eq(best, eps) && !best.is_zero())
            .collect();
        let mut member = vec![false; critical.len()];
        for &s in &wins {
            for &m in &length_sets[s][t] {
                for (ci, flag) in indicator(&argmax_h[s], m + 1).into_iter().enumerate() {
                    member[ci] = member[ci] || flag;
                }
            }
        }
        coefficients.push(best);
        winners.push(wins.iter().map(|&s| noncrit[s]).collect());
        membership.push(member);
    }

    let kept_sets: Vec<Vec<usize>> = (0..critical.len())
        .map(|ci| {
            (0..cbar)
                .filter(|&t| membership[t][ci])
                .map(|t| noncrit[t])
                .collect()
        })
        .collect();

    // assemble the single chain, one side per cyclic class
    let crit_index: std::collections::HashMap<usize, usize> = critical
        .iter()
        .enumerate()
        .map(|(ci, &v)| (v, ci))
        .collect();
    let sides: Vec<Side> = (0..gamma)
        .map(|s| {
            let class_nodes = classes.class_at(0, s).to_vec();
            let rep_ci = crit_index[&class_nodes[0]];
            let mut k_terms: Vec<KTerm> = (0..cbar)
                .filter(|&t| membership[t][rep_ci])
                .map(|t| KTerm {
                    node: noncrit[t],
                    coeff: coefficients[t],
                })
                .collect();
            k_terms.sort_by_key(|k| k.node);
            Side {
                class_nodes,
                m_terms: Vec::new(),
                k_terms,
            }
        })
        .collect();

    let system = AttractionSystem {
        t: 1,
        n: a.dim(),
        components: vec![critical.clone()],
        chains: vec![Chain {
            component: 0,
            sides,
        }],
    };
    let trace = BorderingTrace {
        from_critical: MpVector::from_scalars(h),
        to_critical: MpVector::from_scalars(g),
        noncritical_block: b_block,
        noncritical_star: b_star,
        length_sets,
        start_indicators,
        winners,
        membership,
        kept_sets,
        coefficients: MpVector::from_scalars(coefficients),
    };
    Ok((system, trace))
}

/// The scaled covering form of a single-chain system: side l keeps variable
/// set rows[l], and scale[v] is the coefficient of v anywhere in the chain.
#[derive(Debug, Clone, PartialEq)]
pub struct CoveringProblem {
    pub rows: Vec<Vec<usize>>,
    pub scale: Vec<MpScalar>,
    pub n: usize,
}

impl CoveringProblem {
    /// Extracts the covering problem from a single-chain system.
    pub fn from_system(sys: &AttractionSystem) -> Result<CoveringProblem> {
        if sys.chains.len() != 1 {
            return Err(MpError::NotStronglyConnectedCritical);
        }
        let chain = &sys.chains[0];
        let mut scale = vec![MpScalar::ZERO; sys.n];
        let mut rows = Vec::with_capacity(chain.sides.len());
        for side in &chain.sides {
            let mut row = Vec::new();
            for (v, c) in side.terms() {
                debug_assert!(scale[v].is_zero() || scale[v] == c);
                scale[v] = c;
                row.push(v);
            }
            rows.push(row);
        }
        Ok(CoveringProblem {
            rows,
            scale,
            n: sys.n,
        })
    }

    /// Variables appearing in some row, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        for row in &self.rows {
            for &v in row {
                seen[v] = true;
            }
        }
        (0..self.n).filter(|&v| seen[v]).collect()
    }
}

/// Every nonempty covering of the rows with at most one proper subcovering,
/// enumerated over the given variable set. Exponential in `vars`; fine for
/// desk-scale chains.
pub fn nearly_minimal_coverings(rows: &[Vec<usize>], vars: &[usize]) -> Vec<Vec<usize>> {
    let m = vars.len();
    assert!(m <= 24, "covering enumeration limited to 24 variables");
    let pos: std::collections::HashMap<usize, usize> =
        vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let row_masks: Vec<u32> = rows
        .iter()
        .map(|row| {
            row.iter()
                .filter_map(|v| pos.get(v))
                .fold(0u32, |acc, &i| acc | (1 << i))
        })
        .collect();
    let covers = |mask: u32| row_masks.iter().all(|&rm| rm & mask != 0);

    let mut out = Vec::new();
    for mask in 1u32..(1 << m) {
        if !covers(mask) {
            continue;
        }
        let mut removable = 0;
        let mut bits = mask;
        while bits != 0 {
            let bit = bits & bits.wrapping_neg();
            bits ^= bit;
            if covers(mask ^ bit) {
                removable += 1;
                if removable > 1 {
                    break;
                }
            }
        }
        if removable <= 1 {
            out.push(
                (0..m)
                    .filter(|&i| mask & (1 << i) != 0)
                    .map(|i| vars[i])
                    .collect(),
            );
        }
    }
    out
}

/// Extremal solutions of a single-chain system: the scaled 0/-inf vectors of
/// the nearly minimal coverings, mapped back through x_v = -a_v.
pub fn extremals(cp: &CoveringProblem) -> Vec<MpVector> {
    let vars = cp.support();
    nearly_minimal_coverings(&cp.rows, &vars)
        .into_iter()
        .map(|cover| {
            let mut x = MpVector::zero(cp.n);
            for v in cover {
                let a = cp.scale[v].as_finite().expect("chain coefficients are finite");
                x.set(v, MpScalar::finite(-a));
            }
            x
        })
        .collect()
}
