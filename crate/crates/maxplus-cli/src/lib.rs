//! Report-building core of the `maxplus` binary.
//!
//! Every subcommand is a thin wrapper: it loads inputs, calls the library,
//! and renders the result through one shared serializer. The binary prints
//! either the text rendering or the JSON report; tests call [`run`] directly
//! and compare against the binary's output.
//!
//! Exit-code contract: 0 success, 1 domain error, 2 usage or parse error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use maxplus::{
    attraction_system, attraction_system_bordering, critical_graph, csr_reconstruct, cyclic_classes,
    definite_form, extremals, is_visualized, kleene_star, max_cycle_mean, transient_oracle,
    visualize, AttractionSystem, CoveringProblem, MpError, MpMatrix, MpScalar, MpVector,
    PeriodicPowerEngine, Semiring, DEFAULT_EPS,
};

#[derive(Debug, Parser)]
#[command(
    name = "maxplus",
    about = "Max-plus (tropical) matrix analysis",
    version
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Tolerance for path-weight equality tests (criticality, argmax sets).
    #[arg(long, global = true, default_value_t = DEFAULT_EPS)]
    pub eps: f64,

    /// Trust the input to be visualized; skip the automatic scaling.
    #[arg(long, global = true, default_value_t = false)]
    pub assume_visualized: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Auto,
    Algorithm1,
    Periodic,
}

#[derive(Debug, Args)]
pub struct MatrixArg {
    /// Matrix file (see the README for the format).
    pub matrix: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximum cycle mean of the matrix digraph.
    Lambda(MatrixArg),
    /// Kleene star I ⊕ A ⊕ ... ⊕ A^{n-1}.
    Star(MatrixArg),
    /// Critical graph: nodes, edges, components, cyclicities.
    Critical(MatrixArg),
    /// Cyclic classes of the critical graph.
    Classes(MatrixArg),
    /// Visualization scaling of the definite form.
    Visualize {
        #[command(flatten)]
        matrix: MatrixArg,
        /// Strict scaling: non-critical entries end strictly below the unit.
        #[arg(long, default_value_t = false)]
        strict: bool,
    },
    /// Periodic power at a residue class mod gamma.
    Power {
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long)]
        residue: u64,
    },
    /// Ultimate period of the orbit A^k ⊗ x.
    OrbitPeriod {
        #[command(flatten)]
        matrix: MatrixArg,
        /// Vector file.
        #[arg(long)]
        vec: String,
    },
    /// Membership of x in the attraction cone Attr(A, t).
    AttrMember {
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long)]
        vec: String,
        #[arg(long, default_value_t = 1)]
        t: u64,
    },
    /// Equation system of the attraction cone Attr(A, t).
    AttrSystem {
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long, default_value_t = 1)]
        t: u64,
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
    },
    /// Extremal solutions of the Attr(A, 1) system (strongly connected
    /// critical graph only).
    Extremals(MatrixArg),
    /// CSR decomposition of the periodic powers.
    Csr {
        #[command(flatten)]
        matrix: MatrixArg,
        /// Also reconstruct the periodic power at this residue.
        #[arg(long)]
        residue: Option<u64>,
    },
    /// Core matrix over critical components and its Kleene star.
    Core(MatrixArg),
    /// Brute-force transient: least T with A^{T+gamma} = A^T.
    Transient {
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long, default_value_t = 10_000)]
        cap: u64,
    },
}

/// Failure modes with their exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Exit 2: bad invocation or unparsable input.
    Usage(String),
    /// Exit 1: the input is outside an operation's domain.
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => m,
        }
    }
}

fn domain(e: MpError) -> CliError {
    CliError::Domain(e.to_string())
}

/// Parse failures while loading files are usage errors; everything else is
/// a domain error.
fn load_error(path: &str, e: MpError) -> CliError {
    match e {
        MpError::Parse { .. }
        | MpError::DimensionMismatch { .. }
        | MpError::InvalidScalar(_)
        | MpError::NegativeEntry(_) => CliError::Usage(format!("{path}: {e}")),
        other => CliError::Domain(format!("{path}: {other}")),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// The stable report envelope printed as JSON.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub eps: f64,
    pub semiring: String,
    pub result: serde_json::Value,
    #[serde(skip)]
    pub text: String,
}

struct Loaded {
    matrix: MpMatrix,
    semiring: Semiring,
    digest: InputDigest,
}

fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn load_matrix(path: &str) -> Result<Loaded, CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CliError::Usage(format!("{path}: not valid UTF-8")))?;
    let (matrix, semiring) = maxplus::read_matrix(&text).map_err(|e| load_error(path, e))?;
    Ok(Loaded {
        matrix,
        semiring,
        digest: InputDigest {
            path: path.to_string(),
            sha256: sha256_hex(&bytes),
        },
    })
}

fn load_vector(path: &str, n: usize) -> Result<(MpVector, InputDigest), CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CliError::Usage(format!("{path}: not valid UTF-8")))?;
    let (v, _) = maxplus::read_vector(&text).map_err(|e| load_error(path, e))?;
    if v.len() != n {
        return Err(CliError::Usage(format!(
            "{path}: vector length {} does not match matrix dimension {n}",
            v.len()
        )));
    }
    Ok((
        v,
        InputDigest {
            path: path.to_string(),
            sha256: sha256_hex(&bytes),
        },
    ))
}

/// Scalar rendering shared by the text and JSON paths: max-plus values, or
/// their exp images when the input file was max-times.
fn scalar_string(s: MpScalar, semiring: Semiring) -> String {
    match semiring {
        Semiring::MaxPlus => s.to_string(),
        Semiring::MaxTimes => format!("{}", s.to_maxtimes()),
    }
}

fn scalar_value(s: MpScalar, semiring: Semiring) -> serde_json::Value {
    serde_json::Value::String(scalar_string(s, semiring))
}

fn matrix_rows(m: &MpMatrix, semiring: Semiring) -> Vec<Vec<serde_json::Value>> {
    (0..m.dim())
        .map(|i| m.row(i).iter().map(|&s| scalar_value(s, semiring)).collect())
        .collect()
}

fn matrix_text(m: &MpMatrix, semiring: Semiring) -> String {
    (0..m.dim())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|&s| scalar_string(s, semiring))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn vector_values(v: &MpVector, semiring: Semiring) -> Vec<serde_json::Value> {
    v.iter().map(|s| scalar_value(s, semiring)).collect()
}

fn one_based(nodes: &[usize]) -> Vec<usize> {
    nodes.iter().map(|&v| v + 1).collect()
}

/// A matrix prepared for the periodicity layer: visualized form, the
/// scaling that produced it, and the cycle mean that was removed.
struct Prepared {
    engine: PeriodicPowerEngine,
    /// Additive scaling vector x (zero when the input was already
    /// visualized); outputs are mapped back through it.
    scaling: Vec<f64>,
    lambda: f64,
}

fn prepare(loaded: &Loaded, eps: f64, assume_visualized: bool) -> Result<Prepared, CliError> {
    let a = &loaded.matrix;
    if assume_visualized {
        let engine = PeriodicPowerEngine::new(a.clone(), eps).map_err(domain)?;
        return Ok(Prepared {
            engine,
            scaling: vec![0.0; a.dim()],
            lambda: 0.0,
        });
    }
    let lambda = max_cycle_mean(a)
        .as_finite()
        .ok_or_else(|| domain(MpError::AcyclicMatrix))?;
    let d = if lambda == 0.0 { a.clone() } else { a.shift(-lambda) };
    let sd = critical_graph(&d, eps).map_err(domain)?;
    if is_visualized(&d, &sd, eps) {
        let engine = PeriodicPowerEngine::new(d, eps).map_err(domain)?;
        Ok(Prepared {
            engine,
            scaling: vec![0.0; a.dim()],
            lambda,
        })
    } else {
        let vis = visualize(&d, true, eps).map_err(domain)?;
        let scaling = vis.scaling.iter().map(|s| s.value()).collect();
        let engine = PeriodicPowerEngine::new(vis.matrix, eps).map_err(domain)?;
        Ok(Prepared {
            engine,
            scaling,
            lambda,
        })
    }
}

impl Prepared {
    /// Maps a matrix computed in visualized coordinates back to the
    /// definite form of the input: entry (i, j) gains x_i - x_j.
    fn unscale_matrix(&self, m: &MpMatrix) -> MpMatrix {
        MpMatrix::from_fn(m.dim(), |i, j| {
            m.get(i, j).shift(self.scaling[i] - self.scaling[j])
        })
    }

    /// Maps an input-coordinates vector into visualized coordinates.
    fn scale_vector(&self, v: &MpVector) -> MpVector {
        MpVector::from_scalars(
            v.iter()
                .enumerate()
                .map(|(i, s)| s.shift(-self.scaling[i]))
                .collect(),
        )
    }
}

fn system_value(sys: &AttractionSystem, semiring: Semiring) -> serde_json::Value {
    let chains: Vec<serde_json::Value> = sys
        .chains
        .iter()
        .map(|chain| {
            let sides: Vec<serde_json::Value> = chain
                .sides
                .iter()
                .map(|side| {
                    let terms: Vec<serde_json::Value> = side
                        .terms()
                        .into_iter()
                        .map(|(v, c)| {
                            serde_json::json!({
                                "variable": v + 1,
                                "coefficient": scalar_value(c, semiring),
                            })
                        })
                        .collect();
                    serde_json::Value::Array(terms)
                })
                .collect();
            serde_json::json!({
                "component": one_based(&sys.components[chain.component]),
                "sides": sides,
            })
        })
        .collect();
    serde_json::json!({
        "t": sys.t,
        "chains": chains,
    })
}

/// Maps a system built in visualized coordinates back to input coordinates:
/// the coefficient of variable v drops by the scaling offset x_v. The
/// per-variable offsets break the shared-coefficient term groups, so each
/// side is rebuilt from singleton terms.
fn unscale_system(sys: &AttractionSystem, scaling: &[f64]) -> AttractionSystem {
    if scaling.iter().all(|&x| x == 0.0) {
        return sys.clone();
    }
    let mut rebuilt = sys.clone();
    for chain in &mut rebuilt.chains {
        for side in &mut chain.sides {
            let k_terms: Vec<maxplus::KTerm> = side
                .terms()
                .into_iter()
                .map(|(v, c)| maxplus::KTerm {
                    node: v,
                    coeff: c.shift(-scaling[v]),
                })
                .collect();
            side.class_nodes = Vec::new();
            side.m_terms = Vec::new();
            side.k_terms = k_terms;
        }
    }
    rebuilt
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let eps = cli.eps;
    match &cli.command {
        Command::Lambda(arg) => {
            let loaded = load_matrix(&arg.matrix)?;
            let lambda = max_cycle_mean(&loaded.matrix);
            let text = format!("lambda: {}", scalar_string(lambda, loaded.semiring));
            Ok(report(
                "lambda",
                vec![loaded.digest.clone()],
                eps,
                loaded.semiring,
                serde_json::json!({ "lambda": scalar_value(lambda, loaded.semiring) }),
                text,
            ))
        }
        Command::Star(arg) => {
            let loaded = load_matrix(&arg.matrix)?;
            let star = kleene_star(&loaded.matrix, eps).map_err(domain)?.star;
            let text = matrix_text(&star, loaded.semiring);
            Ok(report(
                "star",
                vec![loaded.digest.clone()],
                eps,
                loaded.semiring,
                serde_json::json!({
                    "n": star.dim(),
                    "rows": matrix_rows(&star, loaded.semiring),
                }),
                text,
            ))
        }
        Command::Critical(arg) => {
            let loaded = load_matrix(&arg.matrix)?;
            let sd = critical_graph(&loaded.matrix, eps).map_err(domain)?;
            let comps: Vec<serde_json::Value> = sd
                .components
                .iter()
                .zip(&sd.cyclicities)
                .map(|(nodes, &g)| {
                    serde_json::json!({ "nodes": one_based(nodes), "cyclicity": g })
                })
                .collect();
            let mut text = format!(
                "lambda: {}\ncritical nodes: {}\ncritical edges:",
                scalar_string(sd.lambda, loaded.semiring),
                one_based(&sd.critical_nodes)
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            for &(i, j) in &sd.critical_edges {
                text.push_str(&format!(" {}->{}", i + 1, j + 1));
            }
            for (idx, (nodes, g)) in sd.components.iter().zip(&sd.cyclicities).enumerate() {
                text.push_str(&format!(
                    "\ncomponent {}: nodes {:?} cyclicity {}",
                    idx + 1,
                    one_based(nodes),
                    g
                ));
            }
            text.push_str(&format!("\ngamma: {}", sd.gamma));
            Ok(report(
                "critical",
                vec![loaded.digest.clone()],
                eps,
                loaded.semiring,
                serde_json::json!({
                    "lambda": scalar_value(sd.lambda, loaded.semiring),
                    "critical_nodes": one_based(&sd.critical_nodes),
                    "critical_edges": sd.critical_edges.iter()
                        .map(|&(i, j)| vec![i + 1, j + 1]).collect::<Vec<_>>(),
                    "components": comps,
                    "gamma": sd.gamma,
                }),
                text,
            ))
        }
        Command::Classes(arg) => {
            let loaded = load_matrix(&arg.matrix)?;
            let sd = critical_graph(&loaded.matrix, eps).map_err(domain)?;
            let cc = cyclic_classes(&sd);
            let mut comps = Vec::new();
            let mut text = String::new();
            for mu in 0..cc.component_count() {
                let classes: Vec<Vec<usize>> = cc
                    .component_classes(mu)
                    .iter()
                    .map(|c| one_based(c))
                    .collect();
                if !text.is_empty() {
                    text.push('\n');
                }
                text.push_str(&format!(
                    "component {} (cyclicity {}): {}",
                    mu + 1,
                    cc.cyclicity(mu),
                    classes
                        .iter()
                        .map(|c| format!("{{{}}}", c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
                        .collect::<Vec<_>>()
                        .join(" ")
                ));
                comps.push(serde_json::json!({
                    "cyclicity": cc.cyclicity(mu),
                    "classes": classes,
                }));
            }
            Ok(report(
                "classes",
                vec![loaded.digest.clone()],
                eps,
                loaded.semiring,
                serde_json::json!({ "components": comps }),
                text,
            ))
        }
        Command::Visualize { matrix, strict } => {
            let loaded = load_matrix(&matrix.matrix)?;
            let d = definite_form(&loaded.matrix).map_err(domain)?;
            let vis = visualize(&d, *strict, eps).map_err(domain)?;
            let text = format!(
                "scaling: {}\n{}",
                vis.scaling
                    .iter()
                    .map(|s| scalar_string(s, loaded.semiring))
                    .collect::<Vec<_>>()
                    .join(" "),
                matrix_text(&vis.matrix, loaded.semiring)
            );
            Ok(report(
                "visualize",
                vec![loaded.digest.clone()],
                eps,
                loaded.semiring,
                serde_json::json!({
                    "strict": vis.strict,
                    "scaling": vector_values(&vis.scaling, loaded.semiring),
                    "rows": matrix_rows(&vis.matrix, loaded.semiring),
                }),
                text,
            ))
        }
        Command::Power { matrix, residue } => {
            let loaded = load_matrix(&matrix.matrix)?;
            let prep = prepare(&loaded, eps, cli.assume_visualized)?;
            let power = prep.unscale_matrix(&prep.engine.periodic_power(*residue));
            let gamma = prep.engine.spectral().gamma;
            let text = format!(
                "residue: {}\ngamma: {}\nlambda: {}\n{}",
                residue % gamma.max(1),
                gamma,
                prep.lambda,
                matrix_text(&power, loaded.semiring)
            );
            Ok(report(
                "power",
                vec![loaded.digest.clone()],
                eps,
                loaded.semiring,
                serde_json::json!({
                    "residue": residue % gamma.max(1),
                    "gamma": gamma,
                    "lambda": prep.lambda,
                    "rows": matrix_rows(&power, loaded.semiring),
                }),
                text,
            ))
        }
        Command::OrbitPeriod { matrix, vec } => {
            let loaded = load_matrix(&matrix.matrix)?;
            let prep = prepare(&loaded, eps, cli.assume_visualized)?;
            let (x, vec_digest) = load_vector(vec, loaded.matrix.dim())?;
            let period = prep
                .engine
                .orbit_period(&prep.scale_vector(&x))
                .map_err(domain)?;
            let text = format!("period: {period}");
            Ok(report(
                "orbit-period",
                vec![loaded.digest.clone(), vec_digest],
                eps,
                loaded.semiring,
                serde_json::json!({ "period": period }),
                text,
            ))
        }
        Command::AttrMember { matrix, vec, t } => {
            if *t == 0 {
                return Err(CliError::Usage("--t must be at least 1".into()));
            }
            let loaded = load_matrix(&matrix.matrix)?;
            let prep = prepare(&loaded, eps, cli.assume_visualized)?;
            let (x, vec_digest) = load_vector(vec, loaded.matrix.dim())?;
            let member = prep
                .engine
                .attraction_member(&prep.scale_vector(&x), *t)
                .map_err(domain)?;
            let text = format!("member: {member}");
            Ok(report(
                "attr-member",
                vec![loaded.digest.clone(), vec_digest],
                eps,
                loaded.semiring,
                serde_json::json!({ "t": t, "member": member }),
                text,
            ))
        }
        Command::AttrSystem { matrix, t, algo } => {
            if *t == 0 {
                return Err(CliError::Usage("--t must be at least 1".into()));
            }
            let loaded = load_matrix(&matrix.matrix)?;
            let prep = prepare(&loaded, eps, cli.assume_visualized)?;
            let strongly_connected = prep.engine.spectral().components.len() == 1;
            let (sys, algo_used) = match algo {
                Algo::Periodic => (attraction_system(&prep.engine, *t).map_err(domain)?, "periodic"),
                Algo::Algorithm1 => {
                    if *t != 1 {
                        return Err(CliError::Usage(
                            "--algo algorithm1 only applies to t = 1".into(),
                        ));
                    }
                    let (sys, _) = attraction_system_bordering(&prep.engine).map_err(domain)?;
                    (sys, "algorithm1")
                }
                Algo::Auto => {
                    if *t == 1 && strongly_connected {
                        let (sys, _) = attraction_system_bordering(&prep.engine).map_err(domain)?;
                        (sys, "algorithm1")
                    } else {
                        (attraction_system(&prep.engine, *t).map_err(domain)?, "periodic")
                    }
                }
            };
            let sys = unscale_system(&sys, &prep.scaling);
            let text = sys.render_text();
            Ok(report(
                "attr-system",
                vec![loaded.digest.clone()],
                eps,
                loaded.semiring,
                serde_json::json!({
                    "algo": algo_used,
                    "system": system_value(&sys, loaded.semiring),
                }),
                text,
            ))
        }
        Command::Extremals(arg) => {
            let loaded = load_matrix(&arg.matrix)?;
            if loaded.matrix.dim() > 24 {
                return Err(CliError::Domain(
                    "extremal enumeration is exponential and limited to 24 variables".into(),
                ));
            }
            let prep = prepare(&loaded, eps, cli.assume_visualized)?;
            let sys = attraction_system(&prep.engine, 1).map_err(domain)?;
            let cp = CoveringProblem::from_system(&sys).map_err(domain)?;
            let vectors: Vec<MpVector> = extremals(&cp)
                .into_iter()
                .map(|v| {
                    MpVector::from_scalars(
                        v.iter()
                            .enumerate()
                            .map(|(i, s)| s.shift(prep.scaling[i]))
                            .collect(),
                    )
                })
                .collect();
            let text = vectors
                .iter()
                .map(|v| {
                    v.iter()
                        .map(|s| scalar_string(s, loaded.semiring))
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(report(
                "extremals",
                vec![loaded.digest.clone()],
                eps,
                loaded.semiring,
                serde_json::json!({
                    "count": vectors.len(),
                    "vectors": vectors.iter().map(|v| vector_values(v, loaded.semiring))
                        .collect::<Vec<_>>(),
                }),
                text,
            ))
        }
        Command::Csr { matrix, residue } => {
            let loaded = load_matrix(&matrix.matrix)?;
            let prep = prepare(&loaded, eps, cli.assume_visualized)?;
            let d = prep.engine.csr();
            let n = loaded.matrix.dim();
            let c = d.critical_nodes.len();
            // map the factors back to input coordinates: C rows gain x_i,
            // R columns lose x_j
            let c_rows: Vec<Vec<serde_json::Value>> = (0..n)
                .map(|u| {
                    (0..c)
                        .map(|q| {
                            scalar_value(
                                d.c_factor.get(u, q).shift(prep.scaling[u]),
                                loaded.semiring,
                            )
                        })
                        .collect()
                })
                .collect();
            let r_rows: Vec<Vec<serde_json::Value>> = (0..c)
                .map(|q| {
                    (0..n)
                        .map(|u| {
                            scalar_value(
                                d.r_factor.get(q, u).shift(-prep.scaling[u]),
                                loaded.semiring,
                            )
                        })
                        .collect()
                })
                .collect();
            let s_rows = matrix_rows(&d.s_factor, loaded.semiring);
            let mut result = serde_json::json!({
                "gamma": d.gamma,
                "critical_nodes": one_based(&d.critical_nodes),
                "c": c_rows,
                "s": s_rows,
                "r": r_rows,
            });
            let mut text = format!(
                "gamma: {}\ncritical nodes: {}",
                d.gamma,
                one_based(&d.critical_nodes)
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            if let Some(l) = residue {
                let rec = prep.unscale_matrix(&csr_reconstruct(&d, *l));
                text.push_str(&format!(
                    "\nreconstructed residue {}:\n{}",
                    l % d.gamma,
                    matrix_text(&rec, loaded.semiring)
                ));
                result["reconstructed"] = serde_json::json!({
                    "residue": l % d.gamma,
                    "rows": matrix_rows(&rec, loaded.semiring),
                });
            }
            Ok(report(
                "csr",
                vec![loaded.digest.clone()],
                eps,
                loaded.semiring,
                result,
                text,
            ))
        }
        Command::Core(arg) => {
            let loaded = load_matrix(&arg.matrix)?;
            let prep = prepare(&loaded, eps, cli.assume_visualized)?;
            let core = prep.engine.core_matrix();
            let groups: Vec<Vec<usize>> = core.groups.iter().map(|g| one_based(g)).collect();
            let text = format!(
                "groups: {}\nalpha:\n{}\nalpha star:\n{}",
                groups
                    .iter()
                    .map(|g| format!("{{{}}}", g.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
                    .collect::<Vec<_>>()
                    .join(" "),
                matrix_text(&core.alpha, loaded.semiring),
                matrix_text(&core.alpha_star, loaded.semiring)
            );
            Ok(report(
                "core",
                vec![loaded.digest.clone()],
                eps,
                loaded.semiring,
                serde_json::json!({
                    "groups": groups,
                    "critical_components": core.critical_components,
                    "alpha": matrix_rows(&core.alpha, loaded.semiring),
                    "alpha_star": matrix_rows(&core.alpha_star, loaded.semiring),
                }),
                text,
            ))
        }
        Command::Transient { matrix, cap } => {
            let loaded = load_matrix(&matrix.matrix)?;
            let t = transient_oracle(&loaded.matrix, *cap, eps).map_err(domain)?;
            let text = format!("transient: {t}");
            Ok(report(
                "transient",
                vec![loaded.digest.clone()],
                eps,
                loaded.semiring,
                serde_json::json!({ "transient": t }),
                text,
            ))
        }
    }
}

fn report(
    command: &str,
    inputs: Vec<InputDigest>,
    eps: f64,
    semiring: Semiring,
    result: serde_json::Value,
    text: String,
) -> Report {
    Report {
        command: command.to_string(),
        inputs,
        eps,
        semiring: semiring.as_str().to_string(),
        result,
        text,
    }
}
