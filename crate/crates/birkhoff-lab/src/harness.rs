//! Deterministic experiment orchestration.
//!
//! This module turns the model builders and brute-force oracles into a
//! reproducible laboratory: it generates seeded corpora of NP-problem
//! instances, runs a chosen set of models against the ground-truth oracle
//! on every instance, and persists one [`VerdictRecord`] per (instance,
//! model) as JSON-lines.  On top of that sit the counterexample hunt —
//! which filters for sufficiency breaches (model says yes, oracle says no)
//! and re-verifies each one twice before persisting it — and the report
//! generator that aggregates agreement tables.
//!
//! Everything here is deterministic by construction: instance seeds derive
//! from the base seed through a fixed mixing function, effort is measured
//! in pivot and node counts rather than wall-clock time, record order is
//! sorted, and rerunning the same configuration reproduces the output
//! byte for byte.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::bvn::bvn_decompose;
use crate::incidence::incidence_decompose;
use crate::mat::{PermMatrix, RatMatrix};
use crate::models::{
    anchored_accepts, build_asymmetric_model, build_factored_system, build_incidence_convex,
    build_incidence_exact, build_incidence_symmetric, build_relaxation, build_symmetric_lp,
    clique_depletion, convex_cover_decision, cut_loop, incidence_convex_decision,
    BasisGenerator, CutVerdict, ModelCaps, ModelError, Side, SymObjective,
};
use crate::oracle::{subgi_oracle, subgi_oracle_slow, OracleCaps, OracleError, OracleVerdict};
use crate::problems::{
    gen_random_cnf, gen_random_digraph, gen_random_symmetric_digraph, seeded_rng, CnfFormula,
    DigraphInstance,
};
use crate::rat::{fmt_rat, int, rat_string, rat_string_vec, Rat};
use crate::reductions::{
    build_clique_pair, build_gi_pair, build_hc_pair, build_hp_pair, build_ksat_pair,
    build_matching_pair, build_perfect_matching_pair, build_sat_pair, build_subgi_pair,
    InstancePair, Provenance, Relation,
};
use crate::solve::norm::{NormVerdict, NormWitness};
use crate::solve::{lp_solve, LpOutcome};

/// Errors from orchestration: everything that should stop a run outright.
/// Per-instance model failures (caps, shapes) never surface here — they are
/// recorded as `error` verdicts and the run continues.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid experiment config: {0}")]
    Config(String),
    #[error("oracle failed on {id}: {source}")]
    Oracle {
        id: String,
        #[source]
        source: OracleError,
    },
    #[error("instance generation failed for {id}: {message}")]
    Generate { id: String, message: String },
    #[error("finding failed re-verification: {0}")]
    Reverify(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

// ---------------------------------------------------------------------------
// Model and claim identifiers
// ---------------------------------------------------------------------------

/// Every decision procedure the harness can run against the oracle.
///
/// The verdict semantics differ by model and are recorded per run:
///
/// - `relaxation`, `symmetric`, `incidence-symmetric`,
///   `incidence-relaxation`, `asymmetric`: feasibility/compatibility taken
///   as a YES claim.  The no-direction is sound (a yes instance always
///   yields a feasible system), the yes-direction is the audited claim.
/// - `convex`, `incidence-convex`, `anchored`, `cutloop` (when conclusive):
///   exact verdicts, confirmed by search or substitution.
/// - `factored`: a soundness-checked certificate; feasible proves yes, while
///   infeasible proves nothing and is recorded as `unknown`.
/// - `depletion`: clique corpora only; an emptied graph proves no, a
///   surviving graph proves nothing.
/// - `bvn`: decomposes the full-mass relaxation optimum; the recorded
///   iteration count is the number of decomposition terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    Relaxation,
    Convex,
    Anchored,
    Factored,
    Symmetric,
    IncidenceSymmetric,
    IncidenceRelaxation,
    IncidenceConvex,
    Asymmetric,
    Cutloop,
    Depletion,
    Bvn,
}

impl ModelKind {
    pub const ALL: [ModelKind; 12] = [
        ModelKind::Relaxation,
        ModelKind::Convex,
        ModelKind::Anchored,
        ModelKind::Factored,
        ModelKind::Symmetric,
        ModelKind::IncidenceSymmetric,
        ModelKind::IncidenceRelaxation,
        ModelKind::IncidenceConvex,
        ModelKind::Asymmetric,
        ModelKind::Cutloop,
        ModelKind::Depletion,
        ModelKind::Bvn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Relaxation => "relaxation",
            ModelKind::Convex => "convex",
            ModelKind::Anchored => "anchored",
            ModelKind::Factored => "factored",
            ModelKind::Symmetric => "symmetric",
            ModelKind::IncidenceSymmetric => "incidence-symmetric",
            ModelKind::IncidenceRelaxation => "incidence-relaxation",
            ModelKind::IncidenceConvex => "incidence-convex",
            ModelKind::Asymmetric => "asymmetric",
            ModelKind::Cutloop => "cutloop",
            ModelKind::Depletion => "depletion",
            ModelKind::Bvn => "bvn",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ModelKind::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown model '{s}'"))
    }
}

/// How a model decided an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelVerdict {
    Yes,
    No,
    /// The model ran but proves nothing in this direction (one-way filters,
    /// exhausted budgets).
    Unknown,
    /// The model could not run (cap exceeded, inapplicable shape); the note
    /// carries the reason.
    Error,
}

impl fmt::Display for ModelVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelVerdict::Yes => "yes",
            ModelVerdict::No => "no",
            ModelVerdict::Unknown => "unknown",
            ModelVerdict::Error => "error",
        })
    }
}

/// The audited sufficiency claims: each maps to the model whose YES verdict
/// the claim asserts to be trustworthy.  The no-direction of each model is
/// proved; the hunt searches for counterexamples to the yes-direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// Feasibility of the doubly-stochastic-face relaxation taken as YES.
    ConvexSufficiency,
    /// Compatibility of the centered span system taken as YES.
    AsymmetricSufficiency,
    /// Feasibility of the coupled vertex/arc system taken as YES.
    IncidenceConvexSufficiency,
}

impl Claim {
    pub const ALL: [Claim; 3] = [
        Claim::ConvexSufficiency,
        Claim::AsymmetricSufficiency,
        Claim::IncidenceConvexSufficiency,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Claim::ConvexSufficiency => "convex-sufficiency",
            Claim::AsymmetricSufficiency => "asymmetric-sufficiency",
            Claim::IncidenceConvexSufficiency => "incidence-convex-sufficiency",
        }
    }

    /// The model whose YES verdicts this claim stands behind.
    pub fn model(self) -> ModelKind {
        match self {
            Claim::ConvexSufficiency => ModelKind::Relaxation,
            Claim::AsymmetricSufficiency => ModelKind::Asymmetric,
            Claim::IncidenceConvexSufficiency => ModelKind::IncidenceRelaxation,
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Claim {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Claim::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown claim '{s}'"))
    }
}

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

/// All brute-force and model caps in one serializable bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapsConfig {
    pub max_vertices: usize,
    pub max_vars: usize,
    pub max_slow_leaves: usize,
    pub max_symmetric_n: usize,
    pub max_pair_product: usize,
    pub max_pair_sum: usize,
}

impl Default for CapsConfig {
    fn default() -> Self {
        let o = OracleCaps::default();
        let m = ModelCaps::default();
        CapsConfig {
            max_vertices: o.max_vertices,
            max_vars: o.max_vars,
            max_slow_leaves: o.max_slow_leaves,
            max_symmetric_n: m.max_symmetric_n,
            max_pair_product: m.max_pair_product,
            max_pair_sum: m.max_pair_sum,
        }
    }
}

impl CapsConfig {
    pub fn oracle_caps(&self) -> OracleCaps {
        OracleCaps {
            max_vertices: self.max_vertices,
            max_vars: self.max_vars,
            max_slow_leaves: self.max_slow_leaves,
        }
    }

    pub fn model_caps(&self) -> ModelCaps {
        ModelCaps {
            max_symmetric_n: self.max_symmetric_n,
            max_pair_product: self.max_pair_product,
            max_pair_sum: self.max_pair_sum,
        }
    }
}

/// Environment variables that override cap fields, checked in this order.
pub const CAP_ENV_VARS: [(&str, &str); 6] = [
    ("BIRKHOFF_MAX_VERTICES", "max_vertices"),
    ("BIRKHOFF_MAX_VARS", "max_vars"),
    ("BIRKHOFF_MAX_SLOW_LEAVES", "max_slow_leaves"),
    ("BIRKHOFF_MAX_SYMMETRIC_N", "max_symmetric_n"),
    ("BIRKHOFF_MAX_PAIR_PRODUCT", "max_pair_product"),
    ("BIRKHOFF_MAX_PAIR_SUM", "max_pair_sum"),
];

/// Applies any `BIRKHOFF_MAX_*` environment overrides to `caps`, returning
/// the list of `(variable, value)` pairs that took effect.  A set but
/// unparsable variable is a configuration error, never silently ignored.
pub fn apply_env_caps(caps: &mut CapsConfig) -> Result<Vec<(String, usize)>, HarnessError> {
    let mut applied = Vec::new();
    for (var, field) in CAP_ENV_VARS {
        let Ok(text) = std::env::var(var) else { continue };
        let value: usize = text
            .trim()
            .parse()
            .map_err(|_| HarnessError::Config(format!("{var}={text:?} is not a size")))?;
        match field {
            "max_vertices" => caps.max_vertices = value,
            "max_vars" => caps.max_vars = value,
            "max_slow_leaves" => caps.max_slow_leaves = value,
            "max_symmetric_n" => caps.max_symmetric_n = value,
            "max_pair_product" => caps.max_pair_product = value,
            "max_pair_sum" => caps.max_pair_sum = value,
            _ => unreachable!(),
        }
        applied.push((var.to_string(), value));
    }
    Ok(applied)
}

fn default_cut_iters() -> u32 {
    25
}

fn default_lp_rounds() -> u32 {
    crate::solve::norm::DEFAULT_LP_ROUNDS
}

/// A full experiment description; serializing this struct is the config
/// file format.
///
/// Sizes are host vertex counts for graph problems and variable counts for
/// formula problems.  Densities apply to graph corpora; formula corpora
/// ignore them and are generated only for the first density slot, so that a
/// density sweep does not duplicate identical formulas.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub problems: Vec<Provenance>,
    /// Inclusive `(low, high)` size range.
    pub sizes: (usize, usize),
    #[serde(with = "rat_string_vec")]
    pub densities: Vec<Rat>,
    /// Number of seeded instances per (problem, size, density) cell.
    pub seeds: u64,
    #[serde(default)]
    pub base_seed: u64,
    pub models: Vec<ModelKind>,
    #[serde(default)]
    pub caps: CapsConfig,
    /// Pattern size for clique (default 3) and pair count for matching
    /// (default half the host), clamped to fit the host.
    #[serde(default)]
    pub m: Option<usize>,
    /// Clause count for formula corpora (default 4).
    #[serde(default)]
    pub sat_clauses: Option<usize>,
    #[serde(default = "default_cut_iters")]
    pub max_cut_iters: u32,
    #[serde(default = "default_lp_rounds")]
    pub lp_rounds: u32,
    /// Where the CLI writes records; ignored by the library functions.
    #[serde(default)]
    pub output: Option<String>,
}

impl ExperimentConfig {
    /// A minimal valid config over the given problems and models.
    pub fn new(problems: Vec<Provenance>, sizes: (usize, usize), models: Vec<ModelKind>) -> Self {
        ExperimentConfig {
            problems,
            sizes,
            densities: vec![crate::rat::frac(1, 2)],
            seeds: 10,
            base_seed: 0,
            models,
            caps: CapsConfig::default(),
            m: None,
            sat_clauses: None,
            max_cut_iters: default_cut_iters(),
            lp_rounds: default_lp_rounds(),
            output: None,
        }
    }

    /// Checks that every instance the config describes fits the caps.
    pub fn validate(&self) -> Result<(), HarnessError> {
        let (lo, hi) = self.sizes;
        if lo < 2 || lo > hi {
            return Err(HarnessError::Config(format!(
                "size range ({lo}, {hi}) must satisfy 2 <= low <= high"
            )));
        }
        if self.densities.is_empty() {
            return Err(HarnessError::Config("at least one density is required".into()));
        }
        for d in &self.densities {
            if d < &int(0) || d > &int(1) {
                return Err(HarnessError::Config(format!(
                    "density {} outside [0, 1]",
                    fmt_rat(d)
                )));
            }
        }
        let clauses = self.sat_clauses.unwrap_or(4);
        for &p in &self.problems {
            let pair_vertices = match p {
                Provenance::TwoSat => clauses * 4,
                Provenance::ThreeSat => clauses * 8,
                Provenance::Sat => clauses * 8,
                _ => hi,
            };
            if pair_vertices > self.caps.max_vertices {
                return Err(HarnessError::Config(format!(
                    "{} instances reach {pair_vertices} pair vertices, above the oracle cap {}; \
                     raise caps.max_vertices",
                    provenance_slug(p),
                    self.caps.max_vertices
                )));
            }
            if matches!(p, Provenance::TwoSat | Provenance::ThreeSat | Provenance::Sat)
                && hi > self.caps.max_vars
            {
                return Err(HarnessError::Config(format!(
                    "{} variable count {hi} above the oracle cap {}",
                    provenance_slug(p),
                    self.caps.max_vars
                )));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Seeding and instance identity
// ---------------------------------------------------------------------------

/// The 64-bit finalizer of the splitmix generator: a fixed bijective mixer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the RNG seed of instance number `counter` from the base seed.
pub fn instance_seed(base_seed: u64, counter: u64) -> u64 {
    splitmix64(base_seed ^ splitmix64(counter))
}

/// The stable lowercase name of a problem kind, as used in instance ids,
/// config files, and command lines.
pub fn provenance_slug(p: Provenance) -> &'static str {
    match p {
        Provenance::SubGi => "subgi",
        Provenance::Gi => "gi",
        Provenance::Clique => "clique",
        Provenance::Hc => "hc",
        Provenance::Hp => "hp",
        Provenance::Matching => "matching",
        Provenance::PerfectMatching => "perfect-matching",
        Provenance::TwoSat => "2sat",
        Provenance::ThreeSat => "3sat",
        Provenance::Sat => "sat",
    }
}

/// Inverse of [`provenance_slug`].
pub fn parse_provenance(s: &str) -> Result<Provenance, String> {
    const ALL: [Provenance; 10] = [
        Provenance::SubGi,
        Provenance::Gi,
        Provenance::Clique,
        Provenance::Hc,
        Provenance::Hp,
        Provenance::Matching,
        Provenance::PerfectMatching,
        Provenance::TwoSat,
        Provenance::ThreeSat,
        Provenance::Sat,
    ];
    ALL.into_iter()
        .find(|&p| provenance_slug(p) == s)
        .ok_or_else(|| format!("unknown problem '{s}'"))
}

fn density_slug(d: &Rat) -> String {
    fmt_rat(d).replace('/', "of").replace('-', "neg")
}

/// Everything needed to regenerate one corpus instance.
#[derive(Clone, Debug)]
pub struct InstanceSpec {
    pub problem: Provenance,
    pub n: usize,
    pub density: Rat,
    /// Seed slot within the (problem, size, density) cell.
    pub slot: u64,
    /// The derived RNG seed; generation depends only on this and the config
    /// knobs, so a record reproduces from its own fields.
    pub seed: u64,
}

impl InstanceSpec {
    /// Sortable, filesystem-safe identity string.
    pub fn id(&self) -> String {
        format!(
            "{}-n{:02}-d{}-s{:04}",
            provenance_slug(self.problem),
            self.n,
            density_slug(&self.density),
            self.slot
        )
    }
}

// ---------------------------------------------------------------------------
// Corpus generation
// ---------------------------------------------------------------------------

fn random_permutation(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut image: Vec<usize> = (0..n).collect();
    image.shuffle(rng);
    image
}

/// The graph with every arc `u -> v` renamed to `image[u] -> image[v]`
/// (0-based image over 1-based vertices).
fn relabel_graph(g: &DigraphInstance, image: &[usize]) -> DigraphInstance {
    let mut out = DigraphInstance::new(g.n);
    for u in 1..=g.n {
        for v in 1..=g.n {
            let mult = g.multiplicity(u, v);
            if mult > 0 {
                out.add_arc(image[u - 1] + 1, image[v - 1] + 1, mult)
                    .expect("bijective relabeling cannot collide");
            }
        }
    }
    out
}

fn mixed_width_cnf(rng: &mut rand_chacha::ChaCha8Rng, nvars: usize, nclauses: usize) -> CnfFormula {
    let max_w = nvars.min(3);
    let mut codes: Vec<Vec<i64>> = Vec::with_capacity(nclauses);
    for _ in 0..nclauses {
        let width = rng.gen_range(1..=max_w);
        let clause = gen_random_cnf(rng, nvars, 1, width);
        let lits: Vec<i64> = clause.clauses[0]
            .iter()
            .map(|l| if l.negated { -(l.var as i64) } else { l.var as i64 })
            .collect();
        codes.push(lits);
    }
    let views: Vec<&[i64]> = codes.iter().map(|c| c.as_slice()).collect();
    CnfFormula::from_codes(nvars, &views).expect("generated codes are valid")
}

/// Deterministically generates the instance a spec describes.
///
/// Graph corpora draw a host (and, for the two-sided problems, a pattern)
/// at the spec's density.  `gi` corpora alternate: even slots relabel the
/// host by a random permutation (an isomorphic pattern), odd slots draw an
/// independent graph.  Formula corpora interpret the size as the variable
/// count.
pub fn generate_instance(
    cfg: &ExperimentConfig,
    spec: &InstanceSpec,
) -> Result<InstancePair, HarnessError> {
    let mut rng = seeded_rng(spec.seed);
    let gen_err = |message: String| HarnessError::Generate { id: spec.id(), message };
    let clauses = cfg.sat_clauses.unwrap_or(4);
    let pair = match spec.problem {
        Provenance::SubGi => {
            let host = gen_random_digraph(&mut rng, spec.n, &spec.density, true);
            let m = (spec.n + 1) / 2;
            let pattern = gen_random_digraph(&mut rng, m.max(1), &spec.density, true);
            build_subgi_pair(&host, &pattern)
        }
        Provenance::Gi => {
            let host = gen_random_digraph(&mut rng, spec.n, &spec.density, true);
            let pattern = if spec.slot % 2 == 0 {
                relabel_graph(&host, &random_permutation(&mut rng, spec.n))
            } else {
                gen_random_digraph(&mut rng, spec.n, &spec.density, true)
            };
            build_gi_pair(&host, &pattern)
        }
        Provenance::Clique => {
            let host = gen_random_symmetric_digraph(&mut rng, spec.n, &spec.density);
            let m = cfg.m.unwrap_or(3).clamp(2, spec.n);
            build_clique_pair(&host, m)
        }
        Provenance::Hc => {
            let host = gen_random_digraph(&mut rng, spec.n, &spec.density, false);
            build_hc_pair(&host)
        }
        Provenance::Hp => {
            let host = gen_random_digraph(&mut rng, spec.n, &spec.density, false);
            build_hp_pair(&host)
        }
        Provenance::Matching => {
            let host = gen_random_symmetric_digraph(&mut rng, spec.n, &spec.density);
            let pairs = cfg.m.unwrap_or(spec.n / 2).clamp(1, spec.n / 2);
            build_matching_pair(&host, pairs)
        }
        Provenance::PerfectMatching => {
            let host = gen_random_symmetric_digraph(&mut rng, spec.n, &spec.density);
            build_perfect_matching_pair(&host)
        }
        Provenance::TwoSat => {
            let nv = spec.n.max(2);
            let f = gen_random_cnf(&mut rng, nv, clauses, 2);
            build_ksat_pair(&f, 2)
        }
        Provenance::ThreeSat => {
            let nv = spec.n.max(3);
            let f = gen_random_cnf(&mut rng, nv, clauses, 3);
            build_ksat_pair(&f, 3)
        }
        Provenance::Sat => {
            let nv = spec.n.max(2);
            let f = mixed_width_cnf(&mut rng, nv, clauses);
            build_sat_pair(&f)
        }
    };
    pair.map_err(|e| gen_err(e.to_string()))
}

// ---------------------------------------------------------------------------
// Running one model on one instance
// ---------------------------------------------------------------------------

/// The outcome of one model on one instance, with deterministic effort
/// counters in place of wall-clock timing.
#[derive(Clone, Debug, Serialize)]
pub struct ModelRun {
    pub model: ModelKind,
    pub verdict: ModelVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pivots: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ModelRun {
    fn bare(model: ModelKind, verdict: ModelVerdict) -> Self {
        ModelRun {
            model,
            verdict,
            witness_digest: None,
            pivots: None,
            nodes: None,
            iterations: None,
            note: None,
        }
    }
}

/// Instance-side inputs shared by every model arm.
pub struct ModelInputs<'a> {
    /// The pair as reduced (possibly unpadded).
    pub pair: &'a InstancePair,
    /// The same pair with the pattern zero-padded to the host size.
    pub padded: &'a InstancePair,
    pub model_caps: &'a ModelCaps,
    pub lp_rounds: u32,
    pub max_cut_iters: u32,
}

/// Largest host for which the anchored model sweeps all permutations.
pub const ANCHORED_SWEEP_CAP: usize = 5;
/// Fixpoint budget for the depletion filter.
pub const DEPLETION_MAX_ROUNDS: usize = 64;

fn digest(tag: &str, payload: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(payload.as_bytes());
    let sum = hasher.finalize();
    let hex: String = sum.iter().take(8).map(|b| format!("{b:02x}")).collect();
    format!("{tag}:{hex}")
}

fn perm_payload(p: &PermMatrix) -> String {
    (0..p.n()).map(|r| p.col_of_row(r).to_string()).collect::<Vec<_>>().join(",")
}

fn digest_perm(p: &PermMatrix) -> String {
    digest("perm", &perm_payload(p))
}

fn digest_point(x: &[Rat]) -> String {
    let payload: Vec<String> = x.iter().map(fmt_rat).collect();
    digest("point", &payload.join(","))
}

fn mat_mass(m: &RatMatrix) -> Rat {
    m.entries().iter().sum()
}

/// Arithmetic shortcut shared by the arc-relabeling models: a cover needs at
/// least as many host arcs as pattern arcs, and an equality exactly as many.
/// Returns the sound verdict when the counts already decide the instance.
fn arc_count_gate(pair: &InstancePair) -> Option<(ModelVerdict, String)> {
    let k = mat_mass(&pair.g);
    let l = mat_mass(&pair.s);
    match pair.relation {
        Relation::Cover if l > k => Some((
            ModelVerdict::No,
            format!("pattern has {} arcs, host only {}", fmt_rat(&l), fmt_rat(&k)),
        )),
        Relation::Equal if l != k => Some((
            ModelVerdict::No,
            format!("arc counts differ ({} vs {})", fmt_rat(&l), fmt_rat(&k)),
        )),
        _ => None,
    }
}

/// Whether a model produces a record for this instance at all.  Inapplicable
/// combinations are skipped rather than recorded as errors: the depletion
/// filter is defined on clique instances, and the factored certificate's
/// yes-implication is proved for the covering relation only.
pub fn model_applies(kind: ModelKind, pair: &InstancePair) -> bool {
    match kind {
        ModelKind::Depletion => pair.provenance == Provenance::Clique,
        ModelKind::Factored => pair.relation == Relation::Cover,
        _ => true,
    }
}

/// Runs one model on one instance, mapping every model-layer failure into
/// an `error` verdict with the reason in the note.
pub fn run_model(kind: ModelKind, inp: &ModelInputs<'_>) -> ModelRun {
    let result = match kind {
        ModelKind::Relaxation => run_relaxation(inp),
        ModelKind::Convex => run_convex(inp),
        ModelKind::Anchored => run_anchored(inp),
        ModelKind::Factored => run_factored(inp),
        ModelKind::Symmetric => run_symmetric(inp),
        ModelKind::IncidenceSymmetric => run_incidence_symmetric(inp),
        ModelKind::IncidenceRelaxation => run_incidence_relaxation(inp),
        ModelKind::IncidenceConvex => run_incidence_convex(inp),
        ModelKind::Asymmetric => run_asymmetric(inp),
        ModelKind::Cutloop => run_cutloop(inp),
        ModelKind::Depletion => run_depletion(inp),
        ModelKind::Bvn => run_bvn(inp),
    };
    result.unwrap_or_else(|e| {
        let mut run = ModelRun::bare(kind, ModelVerdict::Error);
        run.note = Some(e.to_string());
        run
    })
}

fn feasibility_verdict(
    kind: ModelKind,
    outcome: &LpOutcome,
) -> (ModelVerdict, Option<String>, Option<String>) {
    match outcome {
        LpOutcome::Optimal { x, .. } | LpOutcome::Feasible { x, .. } => {
            (ModelVerdict::Yes, Some(digest_point(x)), None)
        }
        LpOutcome::Infeasible { .. } => (ModelVerdict::No, None, None),
        LpOutcome::Unbounded { .. } => {
            (ModelVerdict::Error, None, Some(format!("{kind}: unbounded feasibility system")))
        }
        LpOutcome::IterationLimit { .. } => {
            (ModelVerdict::Unknown, None, Some(format!("{kind}: pivot budget exhausted")))
        }
    }
}

fn run_relaxation(inp: &ModelInputs<'_>) -> Result<ModelRun, ModelError> {
    let sys = build_relaxation(inp.padded, Side::Left)?;
    let out = lp_solve(&sys, None)?;
    let (verdict, witness_digest, note) = feasibility_verdict(ModelKind::Relaxation, &out);
    Ok(ModelRun {
        pivots: Some(out.stats().pivots()),
        witness_digest,
        note,
        ..ModelRun::bare(ModelKind::Relaxation, verdict)
    })
}

fn run_convex(inp: &ModelInputs<'_>) -> Result<ModelRun, ModelError> {
    let d = convex_cover_decision(inp.padded, inp.lp_rounds)?;
    let (verdict, witness_digest) = match d.verdict {
        NormVerdict::ReachesTarget => {
            let digest = match &d.witness {
                Some(NormWitness::Vertex { assignment }) => Some(digest_perm(assignment)),
                _ => None,
            };
            (ModelVerdict::Yes, digest)
        }
        NormVerdict::BelowTarget => (ModelVerdict::No, None),
        NormVerdict::HeuristicOnly => (ModelVerdict::Unknown, None),
    };
    Ok(ModelRun {
        witness_digest,
        nodes: Some(d.nodes),
        iterations: Some(d.lp_rounds as u64),
        ..ModelRun::bare(ModelKind::Convex, verdict)
    })
}

fn run_anchored(inp: &ModelInputs<'_>) -> Result<ModelRun, ModelError> {
    let n = inp.padded.n();
    if n > ANCHORED_SWEEP_CAP {
        return Err(ModelError::CapExceeded {
            what: "anchored permutation sweep",
            size: n,
            cap: ANCHORED_SWEEP_CAP,
        });
    }
    let mut tried: u64 = 0;
    for r in PermMatrix::all(n) {
        tried += 1;
        if anchored_accepts(inp.padded, &r)? {
            return Ok(ModelRun {
                witness_digest: Some(digest_perm(&r)),
                nodes: Some(tried),
                ..ModelRun::bare(ModelKind::Anchored, ModelVerdict::Yes)
            });
        }
    }
    Ok(ModelRun {
        nodes: Some(tried),
        ..ModelRun::bare(ModelKind::Anchored, ModelVerdict::No)
    })
}

fn run_factored(inp: &ModelInputs<'_>) -> Result<ModelRun, ModelError> {
    if let Some((verdict, why)) = arc_count_gate(inp.pair) {
        return Ok(ModelRun { note: Some(why), ..ModelRun::bare(ModelKind::Factored, verdict) });
    }
    let s_bar = &inp.padded.s;
    if !s_bar.is_01() {
        return Err(ModelError::Hypothesis(
            "factored certificate needs a 0/1 pattern".into(),
        ));
    }
    let n = inp.padded.n();
    let gi = incidence_decompose(&inp.padded.g)?;
    let si = incidence_decompose(s_bar)?;
    let k = gi.arcs();
    let g1 = gi.o.clone();
    let g2 = gi.i.transpose();
    let s1 = si.o.pad_to(n, k)?;
    let s2 = si.i.transpose().pad_to(k, n)?;
    let fm = build_factored_system(inp.padded, &g1, &g2, &s1, &s2)?;
    let out = lp_solve(&fm.system, None)?;
    let (verdict, witness_digest, note) = match (&out, fm.sound) {
        (LpOutcome::Optimal { x, .. } | LpOutcome::Feasible { x, .. }, true) => {
            (ModelVerdict::Yes, Some(digest_point(x)), None)
        }
        (LpOutcome::Optimal { .. } | LpOutcome::Feasible { .. }, false) => (
            ModelVerdict::Unknown,
            None,
            Some("feasible but the factor hypotheses are not in the sound direction".to_string()),
        ),
        // The certificate is one-way: its absence proves nothing.
        (LpOutcome::Infeasible { .. }, _) => (
            ModelVerdict::Unknown,
            None,
            Some("no certificate under the canonical incidence factors".to_string()),
        ),
        (LpOutcome::Unbounded { .. }, _) => {
            (ModelVerdict::Error, None, Some("factored: unbounded feasibility system".to_string()))
        }
        (LpOutcome::IterationLimit { .. }, _) => {
            (ModelVerdict::Unknown, None, Some("factored: pivot budget exhausted".to_string()))
        }
    };
    Ok(ModelRun {
        witness_digest,
        pivots: Some(out.stats().pivots()),
        note,
        ..ModelRun::bare(ModelKind::Factored, verdict)
    })
}

fn run_symmetric(inp: &ModelInputs<'_>) -> Result<ModelRun, ModelError> {
    let lp = build_symmetric_lp(inp.padded, SymObjective::Feasibility, inp.model_caps)?;
    let out = lp_solve(&lp.system, None)?;
    let (verdict, witness_digest, note) = feasibility_verdict(ModelKind::Symmetric, &out);
    Ok(ModelRun {
        witness_digest,
        pivots: Some(out.stats().pivots()),
        note,
        ..ModelRun::bare(ModelKind::Symmetric, verdict)
    })
}

fn run_incidence_symmetric(inp: &ModelInputs<'_>) -> Result<ModelRun, ModelError> {
    if let Some((verdict, why)) = arc_count_gate(inp.pair) {
        return Ok(ModelRun {
            note: Some(why),
            ..ModelRun::bare(ModelKind::IncidenceSymmetric, verdict)
        });
    }
    let model = build_incidence_exact(inp.pair)?;
    let lp = build_incidence_symmetric(&model, inp.model_caps)?;
    let out = lp_solve(&lp.system, None)?;
    let (verdict, witness_digest, note) = feasibility_verdict(ModelKind::IncidenceSymmetric, &out);
    Ok(ModelRun {
        witness_digest,
        pivots: Some(out.stats().pivots()),
        note,
        ..ModelRun::bare(ModelKind::IncidenceSymmetric, verdict)
    })
}

fn run_incidence_relaxation(inp: &ModelInputs<'_>) -> Result<ModelRun, ModelError> {
    if let Some((verdict, why)) = arc_count_gate(inp.pair) {
        return Ok(ModelRun {
            note: Some(why),
            ..ModelRun::bare(ModelKind::IncidenceRelaxation, verdict)
        });
    }
    let built = build_incidence_convex(inp.padded)?;
    let out = lp_solve(&built.system, None)?;
    let (verdict, witness_digest, note) = feasibility_verdict(ModelKind::IncidenceRelaxation, &out);
    Ok(ModelRun {
        witness_digest,
        pivots: Some(out.stats().pivots()),
        note,
        ..ModelRun::bare(ModelKind::IncidenceRelaxation, verdict)
    })
}

fn run_incidence_convex(inp: &ModelInputs<'_>) -> Result<ModelRun, ModelError> {
    if let Some((verdict, why)) = arc_count_gate(inp.pair) {
        return Ok(ModelRun {
            note: Some(why),
            ..ModelRun::bare(ModelKind::IncidenceConvex, verdict)
        });
    }
    let out = incidence_convex_decision(inp.padded, inp.lp_rounds)?;
    let d = out.decision;
    let (verdict, witness_digest) = match d.verdict {
        NormVerdict::ReachesTarget => {
            let digest = match &d.witness {
                Some(NormWitness::VertexArc { assignment, arc }) => Some(digest(
                    "perm-arc",
                    &format!("{};{}", perm_payload(assignment), perm_payload(arc)),
                )),
                _ => None,
            };
            (ModelVerdict::Yes, digest)
        }
        NormVerdict::BelowTarget => (ModelVerdict::No, None),
        NormVerdict::HeuristicOnly => (ModelVerdict::Unknown, None),
    };
    Ok(ModelRun {
        witness_digest,
        nodes: Some(d.nodes),
        iterations: Some(d.lp_rounds as u64),
        ..ModelRun::bare(ModelKind::IncidenceConvex, verdict)
    })
}

fn run_asymmetric(inp: &ModelInputs<'_>) -> Result<ModelRun, ModelError> {
    if let Some((verdict, why)) = arc_count_gate(inp.pair) {
        return Ok(ModelRun { note: Some(why), ..ModelRun::bare(ModelKind::Asymmetric, verdict) });
    }
    let model = build_asymmetric_model(inp.padded, BasisGenerator::GreedyPoly, inp.model_caps)?;
    let decision = model.decide();
    let verdict = if decision.compatible { ModelVerdict::Yes } else { ModelVerdict::No };
    Ok(ModelRun {
        nodes: Some(model.basis.len() as u64),
        ..ModelRun::bare(ModelKind::Asymmetric, verdict)
    })
}

fn run_cutloop(inp: &ModelInputs<'_>) -> Result<ModelRun, ModelError> {
    let report = cut_loop(inp.padded, inp.max_cut_iters)?;
    let (verdict, witness_digest, note) = match &report.verdict {
        CutVerdict::Yes(psi) => (ModelVerdict::Yes, Some(digest_perm(psi)), None),
        CutVerdict::No => (ModelVerdict::No, None, None),
        CutVerdict::Inconclusive => {
            (ModelVerdict::Unknown, None, Some("cut budget exhausted".to_string()))
        }
    };
    Ok(ModelRun {
        witness_digest,
        pivots: Some(report.pivots),
        iterations: Some(report.iterations.len() as u64),
        note,
        ..ModelRun::bare(ModelKind::Cutloop, verdict)
    })
}

fn run_depletion(inp: &ModelInputs<'_>) -> Result<ModelRun, ModelError> {
    if inp.pair.provenance != Provenance::Clique {
        return Err(ModelError::Hypothesis(
            "depletion filters clique instances only".into(),
        ));
    }
    let m = inp.pair.m;
    let report = clique_depletion(&inp.pair.g, m, DEPLETION_MAX_ROUNDS)?;
    let (verdict, note) = if report.emptied {
        (ModelVerdict::No, None)
    } else {
        (ModelVerdict::Unknown, Some("graph survived depletion".to_string()))
    };
    Ok(ModelRun {
        iterations: Some(report.rounds.len() as u64),
        note,
        ..ModelRun::bare(ModelKind::Depletion, verdict)
    })
}

fn run_bvn(inp: &ModelInputs<'_>) -> Result<ModelRun, ModelError> {
    let mut sys = build_relaxation(inp.padded, Side::Left)?;
    sys.set_total_mass_objective();
    let out = lp_solve(&sys, None)?;
    let n = inp.padded.n();
    match out {
        LpOutcome::Optimal { ref x, ref objective, ref stats } if *objective == int(n as i64) => {
            let block = sys.block_id("x").expect("relaxation has x block");
            let point = sys.block_matrix(block, x);
            let terms = bvn_decompose(&point)?;
            let mut rebuilt = RatMatrix::zeros(n, n);
            let mut total = Rat::from_integer(0.into());
            for (coeff, perm) in &terms {
                rebuilt = rebuilt.add(&perm.to_matrix().scale(coeff))?;
                total += coeff;
            }
            if rebuilt != point || total != int(1) {
                return Ok(ModelRun {
                    note: Some("decomposition failed to reconstruct the optimum".to_string()),
                    pivots: Some(stats.pivots()),
                    ..ModelRun::bare(ModelKind::Bvn, ModelVerdict::Error)
                });
            }
            let payload: Vec<String> = terms.iter().map(|(c, _)| fmt_rat(c)).collect();
            Ok(ModelRun {
                witness_digest: Some(digest("terms", &payload.join(","))),
                pivots: Some(stats.pivots()),
                iterations: Some(terms.len() as u64),
                ..ModelRun::bare(ModelKind::Bvn, ModelVerdict::Yes)
            })
        }
        LpOutcome::Optimal { ref stats, .. } => Ok(ModelRun {
            pivots: Some(stats.pivots()),
            note: Some("optimum mass below the host size; no doubly stochastic point".to_string()),
            ..ModelRun::bare(ModelKind::Bvn, ModelVerdict::Unknown)
        }),
        LpOutcome::Infeasible { ref stats } => Ok(ModelRun {
            pivots: Some(stats.pivots()),
            note: Some("relaxation infeasible".to_string()),
            ..ModelRun::bare(ModelKind::Bvn, ModelVerdict::Unknown)
        }),
        _ => Ok(ModelRun {
            note: Some("mass maximization did not reach an optimum".to_string()),
            ..ModelRun::bare(ModelKind::Bvn, ModelVerdict::Unknown)
        }),
    }
}

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

/// One (instance, model) outcome.  The agreement flag is always computed
/// from the two verdicts at construction, never stored independently.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub id: String,
    pub seed: u64,
    pub slot: u64,
    pub problem: Provenance,
    pub n: usize,
    #[serde(with = "rat_string")]
    pub density: Rat,
    pub model: ModelKind,
    pub model_verdict: ModelVerdict,
    pub oracle_verdict: bool,
    /// `Some(model == oracle)` when the model decided, `None` otherwise.
    pub agree: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_digest: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model_pivots: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model_nodes: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<u64>,
    pub oracle_nodes: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerdictRecord {
    pub fn new(spec: &InstanceSpec, run: ModelRun, oracle: &OracleVerdict) -> Self {
        let agree = match run.verdict {
            ModelVerdict::Yes => Some(oracle.yes),
            ModelVerdict::No => Some(!oracle.yes),
            ModelVerdict::Unknown | ModelVerdict::Error => None,
        };
        VerdictRecord {
            id: spec.id(),
            seed: spec.seed,
            slot: spec.slot,
            problem: spec.problem,
            n: spec.n,
            density: spec.density.clone(),
            model: run.model,
            model_verdict: run.verdict,
            oracle_verdict: oracle.yes,
            agree,
            witness_digest: run.witness_digest,
            model_pivots: run.pivots,
            model_nodes: run.nodes,
            iterations: run.iterations,
            oracle_nodes: oracle.nodes,
            note: run.note,
        }
    }
}

/// Serializes records as JSON-lines, one record per line, in input order.
pub fn records_to_jsonl(records: &[VerdictRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("record serialization cannot fail"));
        out.push('\n');
    }
    out
}

/// Parses JSON-lines, returning the records and the number of malformed
/// lines skipped.
pub fn parse_jsonl(text: &str) -> (Vec<VerdictRecord>, usize) {
    let mut records = Vec::new();
    let mut malformed = 0;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        match serde_json::from_str::<VerdictRecord>(line) {
            Ok(r) => records.push(r),
            Err(_) => malformed += 1,
        }
    }
    (records, malformed)
}

// ---------------------------------------------------------------------------
// The experiment loop
// ---------------------------------------------------------------------------

/// Runs every configured model against the oracle on every generated
/// instance and returns the records sorted by instance id (model order
/// within an instance follows the config).
///
/// Determinism: the instance counter walks the configuration in a fixed
/// nesting (problems, sizes, densities, seed slots), each instance's RNG
/// seed derives from the base seed and that counter alone, and every model
/// measures effort in pivots or nodes.  Two runs of the same config produce
/// identical bytes.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<VerdictRecord>, HarnessError> {
    cfg.validate()?;
    let ocaps = cfg.caps.oracle_caps();
    let mcaps = cfg.caps.model_caps();
    let mut records = Vec::new();
    let mut counter: u64 = 0;
    for &problem in &cfg.problems {
        for n in cfg.sizes.0..=cfg.sizes.1 {
            for density in &cfg.densities {
                for slot in 0..cfg.seeds {
                    let seed = instance_seed(cfg.base_seed, counter);
                    counter += 1;
                    let formula_kind = matches!(
                        problem,
                        Provenance::TwoSat | Provenance::ThreeSat | Provenance::Sat
                    );
                    if formula_kind && density != &cfg.densities[0] {
                        continue; // densities do not vary formula corpora
                    }
                    if problem == Provenance::PerfectMatching && n % 2 == 1 {
                        continue; // no perfect matching exists on odd sizes
                    }
                    let spec = InstanceSpec { problem, n, density: density.clone(), slot, seed };
                    let pair = generate_instance(cfg, &spec)?;
                    let oracle = subgi_oracle(&pair, &ocaps)
                        .map_err(|source| HarnessError::Oracle { id: spec.id(), source })?;
                    let padded = pair.pad();
                    let inputs = ModelInputs {
                        pair: &pair,
                        padded: &padded,
                        model_caps: &mcaps,
                        lp_rounds: cfg.lp_rounds,
                        max_cut_iters: cfg.max_cut_iters,
                    };
                    for &kind in &cfg.models {
                        if !model_applies(kind, &pair) {
                            continue;
                        }
                        let run = run_model(kind, &inputs);
                        records.push(VerdictRecord::new(&spec, run, &oracle));
                    }
                }
            }
        }
    }
    records.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(records)
}

// ---------------------------------------------------------------------------
// Counterexample hunting
// ---------------------------------------------------------------------------

/// A doubly re-verified sufficiency breach: the model claimed yes, the
/// pruned oracle said no, the unpruned oracle confirmed the no, and the
/// model's feasible point survived exact substitution.
#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub record: VerdictRecord,
    pub pair: InstancePair,
    pub slow_oracle_no: bool,
    pub substitution_ok: bool,
}

/// Outcome of one hunt: the sweep description plus every verified breach.
#[derive(Clone, Debug, Serialize)]
pub struct HuntReport {
    pub claim: Claim,
    pub model: ModelKind,
    pub sizes: (usize, usize),
    #[serde(with = "rat_string_vec")]
    pub densities: Vec<Rat>,
    pub seeds: u64,
    pub base_seed: u64,
    /// Instances the claim model produced a record for.
    pub instances: u64,
    pub breaches: usize,
    pub findings: Vec<Finding>,
}

/// Re-solves the claim model on the pair and checks its feasible point by
/// exact substitution (for the span model: re-decides, over the exhaustive
/// generating family when it fits the caps).
fn reverify_substitution(
    model: ModelKind,
    pair: &InstancePair,
    caps: &ModelCaps,
) -> Result<bool, HarnessError> {
    let padded = pair.pad();
    let ok = match model {
        ModelKind::Relaxation => {
            let sys = build_relaxation(&padded, Side::Left)
                .map_err(|e| HarnessError::Reverify(e.to_string()))?;
            let out = lp_solve(&sys, None).map_err(|e| HarnessError::Reverify(e.to_string()))?;
            out.point().is_some_and(|x| sys.check_point(x).ok())
        }
        ModelKind::IncidenceRelaxation => {
            let built = build_incidence_convex(&padded)
                .map_err(|e| HarnessError::Reverify(e.to_string()))?;
            let out = lp_solve(&built.system, None)
                .map_err(|e| HarnessError::Reverify(e.to_string()))?;
            out.point().is_some_and(|x| built.system.check_point(x).ok())
        }
        ModelKind::Asymmetric => {
            let mut product: usize = 1;
            let mut fits = true;
            for size in [padded.n(), incidence_decompose(&padded.g)
                .map_err(|e| HarnessError::Reverify(e.to_string()))?
                .arcs()]
            {
                for i in 2..=size {
                    product = product.saturating_mul(i);
                }
                fits = fits && product <= caps.max_pair_product;
            }
            let generator =
                if fits { BasisGenerator::Exhaustive } else { BasisGenerator::GreedyPoly };
            let model = build_asymmetric_model(&padded, generator, caps)
                .map_err(|e| HarnessError::Reverify(e.to_string()))?;
            model.decide().compatible
        }
        other => {
            return Err(HarnessError::Reverify(format!(
                "claim re-verification not defined for model {other}"
            )))
        }
    };
    Ok(ok)
}

/// Audits one claim over the configured corpus.
///
/// Runs the experiment (forcing the claim's model into the model list),
/// filters for model-YES/oracle-NO records, and re-verifies each candidate
/// twice — through the unpruned slow oracle and through exact substitution
/// of the model's feasible point — before it is admitted as a finding.  A
/// candidate that fails either re-verification aborts the hunt with an
/// error: that would mean the lab contradicts itself, which must never be
/// silently recorded as science.
pub fn hunt_counterexamples(
    cfg: &ExperimentConfig,
    claim: Claim,
) -> Result<HuntReport, HarnessError> {
    let (_, report) = hunt_with_records(cfg, claim)?;
    Ok(report)
}

/// Like [`hunt_counterexamples`], but also returns the full record set the
/// sweep produced, so callers can persist it for later aggregation.
pub fn hunt_with_records(
    cfg: &ExperimentConfig,
    claim: Claim,
) -> Result<(Vec<VerdictRecord>, HuntReport), HarnessError> {
    let mut cfg = cfg.clone();
    let model = claim.model();
    if !cfg.models.contains(&model) {
        cfg.models.push(model);
    }
    let records = run_experiment(&cfg)?;
    let report = hunt_over_records(&cfg, claim, &records)?;
    Ok((records, report))
}

/// The filtering and re-verification half of the hunt, over records that
/// were produced by `run_experiment` on the same config.
fn hunt_over_records(
    cfg: &ExperimentConfig,
    claim: Claim,
    records: &[VerdictRecord],
) -> Result<HuntReport, HarnessError> {
    let model = claim.model();
    let ocaps = cfg.caps.oracle_caps();
    let mcaps = cfg.caps.model_caps();
    let mut findings = Vec::new();
    let mut instances: u64 = 0;
    for record in records {
        if record.model != model {
            continue;
        }
        instances += 1;
        if record.model_verdict != ModelVerdict::Yes || record.oracle_verdict {
            continue;
        }
        let spec = InstanceSpec {
            problem: record.problem,
            n: record.n,
            density: record.density.clone(),
            slot: record.slot,
            seed: record.seed,
        };
        let pair = generate_instance(cfg, &spec)?;
        let slow = subgi_oracle_slow(&pair, &ocaps)
            .map_err(|source| HarnessError::Oracle { id: record.id.clone(), source })?;
        if slow.yes {
            return Err(HarnessError::Reverify(format!(
                "{}: pruned oracle said no but the unpruned oracle found a witness",
                record.id
            )));
        }
        if !reverify_substitution(model, &pair, &mcaps)? {
            return Err(HarnessError::Reverify(format!(
                "{}: the claimed feasible point failed exact substitution",
                record.id
            )));
        }
        findings.push(Finding {
            record: record.clone(),
            pair,
            slow_oracle_no: true,
            substitution_ok: true,
        });
    }
    Ok(HuntReport {
        claim,
        model,
        sizes: cfg.sizes,
        densities: cfg.densities.clone(),
        seeds: cfg.seeds,
        base_seed: cfg.base_seed,
        instances,
        breaches: findings.len(),
        findings,
    })
}

/// Writes one pair file and one reproduction snippet per finding, returning
/// the paths written.
pub fn write_findings(report: &HuntReport, dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for finding in &report.findings {
        let pair_path = dir.join(format!("{}.pair.json", finding.record.id));
        let mut pair_text = serde_json::to_string_pretty(&finding.pair)?;
        pair_text.push('\n');
        std::fs::write(&pair_path, pair_text)?;
        let repro_path = dir.join(format!("{}.repro.json", finding.record.id));
        let snippet = serde_json::json!({
            "claim": report.claim,
            "model": finding.record.model,
            "problem": finding.record.problem,
            "n": finding.record.n,
            "density": fmt_rat(&finding.record.density),
            "slot": finding.record.slot,
            "seed": finding.record.seed,
            "base_seed": report.base_seed,
            "record": finding.record,
        });
        let mut repro_text = serde_json::to_string_pretty(&snippet)?;
        repro_text.push('\n');
        std::fs::write(&repro_path, repro_text)?;
        written.push(pair_path);
        written.push(repro_path);
    }
    Ok(written)
}

/// Human-readable hunt summary; states the swept ranges even when no breach
/// was found.
pub fn render_hunt_summary(report: &HuntReport) -> String {
    let densities: Vec<String> = report.densities.iter().map(fmt_rat).collect();
    let mut out = String::new();
    out.push_str(&format!("claim:      {}\n", report.claim));
    out.push_str(&format!("model:      {}\n", report.model));
    out.push_str(&format!("sizes:      {}..={}\n", report.sizes.0, report.sizes.1));
    out.push_str(&format!("densities:  {}\n", densities.join(", ")));
    out.push_str(&format!("seeds/cell: {}\n", report.seeds));
    out.push_str(&format!("instances:  {}\n", report.instances));
    out.push_str(&format!("breaches:   {}\n", report.breaches));
    for finding in &report.findings {
        out.push_str(&format!(
            "  {}  model=yes oracle=no  slow-oracle-confirmed={} substitution-checked={}\n",
            finding.record.id, finding.slow_oracle_no, finding.substitution_ok
        ));
    }
    if report.findings.is_empty() {
        out.push_str("no sufficiency breach in the swept range\n");
    }
    out
}

// ---------------------------------------------------------------------------
// Reporting
// ---------------------------------------------------------------------------

/// Per-model aggregation over a record set.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ModelAgg {
    pub model: String,
    pub total: u64,
    pub yes: u64,
    pub no: u64,
    pub unknown: u64,
    pub error: u64,
    /// Model yes, oracle no.
    pub false_yes: u64,
    /// Model no, oracle yes.
    pub false_no: u64,
    /// Decided records (yes or no).
    pub decided: u64,
    /// Decided records agreeing with the oracle.
    pub agreements: u64,
}

/// Depletion-specific effectiveness numbers.
#[derive(Clone, Debug, Default, Serialize)]
pub struct DepletionAgg {
    pub total: u64,
    pub emptied: u64,
    pub survived: u64,
    /// Oracle-no instances among the depletion records.
    pub oracle_no: u64,
    /// Emptied graphs whose instance was actually a yes — must stay zero.
    pub false_empties: u64,
}

/// Cut-loop iteration statistics.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CutloopAgg {
    pub total: u64,
    pub yes: u64,
    pub no: u64,
    pub inconclusive: u64,
    pub min_iterations: Option<u64>,
    pub max_iterations: Option<u64>,
    pub total_iterations: u64,
}

/// Everything the `report` operation prints.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ReportSummary {
    /// Agreement rows, sorted by model name; the decomposition pseudo-model
    /// is summarized separately.
    pub models: Vec<ModelAgg>,
    /// Decomposition term-count histogram: terms -> frequency.
    pub bvn_terms: BTreeMap<u64, u64>,
    pub bvn_samples: u64,
    /// Records whose term count exceeded `(n - 1)^2 + 1` — must stay zero.
    pub bvn_bound_violations: u64,
    pub depletion: DepletionAgg,
    pub cutloop: CutloopAgg,
    pub malformed: usize,
}

/// Aggregates records into the report summary.
pub fn summarize(records: &[VerdictRecord], malformed: usize) -> ReportSummary {
    let mut by_model: BTreeMap<&'static str, ModelAgg> = BTreeMap::new();
    let mut summary = ReportSummary { malformed, ..ReportSummary::default() };
    for r in records {
        if r.model == ModelKind::Bvn {
            summary.bvn_samples += 1;
            if let Some(terms) = r.iterations {
                *summary.bvn_terms.entry(terms).or_insert(0) += 1;
                let bound = ((r.n - 1) * (r.n - 1) + 1) as u64;
                if terms > bound {
                    summary.bvn_bound_violations += 1;
                }
            }
            continue;
        }
        let agg = by_model.entry(r.model.name()).or_insert_with(|| ModelAgg {
            model: r.model.name().to_string(),
            ..ModelAgg::default()
        });
        agg.total += 1;
        match r.model_verdict {
            ModelVerdict::Yes => {
                agg.yes += 1;
                agg.decided += 1;
                if r.oracle_verdict {
                    agg.agreements += 1;
                } else {
                    agg.false_yes += 1;
                }
            }
            ModelVerdict::No => {
                agg.no += 1;
                agg.decided += 1;
                if r.oracle_verdict {
                    agg.false_no += 1;
                } else {
                    agg.agreements += 1;
                }
            }
            ModelVerdict::Unknown => agg.unknown += 1,
            ModelVerdict::Error => agg.error += 1,
        }
        if r.model == ModelKind::Depletion {
            summary.depletion.total += 1;
            if !r.oracle_verdict {
                summary.depletion.oracle_no += 1;
            }
            match r.model_verdict {
                ModelVerdict::No => {
                    summary.depletion.emptied += 1;
                    if r.oracle_verdict {
                        summary.depletion.false_empties += 1;
                    }
                }
                ModelVerdict::Unknown => summary.depletion.survived += 1,
                _ => {}
            }
        }
        if r.model == ModelKind::Cutloop {
            summary.cutloop.total += 1;
            match r.model_verdict {
                ModelVerdict::Yes => summary.cutloop.yes += 1,
                ModelVerdict::No => summary.cutloop.no += 1,
                _ => summary.cutloop.inconclusive += 1,
            }
            if let Some(iters) = r.iterations {
                summary.cutloop.total_iterations += iters;
                summary.cutloop.min_iterations =
                    Some(summary.cutloop.min_iterations.map_or(iters, |m| m.min(iters)));
                summary.cutloop.max_iterations =
                    Some(summary.cutloop.max_iterations.map_or(iters, |m| m.max(iters)));
            }
        }
    }
    summary.models = by_model.into_values().collect();
    summary
}

/// Parses a JSONL text and aggregates it.
pub fn report_from_jsonl(text: &str) -> ReportSummary {
    let (records, malformed) = parse_jsonl(text);
    summarize(&records, malformed)
}

/// Plain-text rendering of the summary.
pub fn render_text(summary: &ReportSummary) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<22} {:>6} {:>5} {:>5} {:>5} {:>5} {:>6} {:>6} {:>9}\n",
        "model", "total", "yes", "no", "unk", "err", "f-yes", "f-no", "agree"
    ));
    for m in &summary.models {
        let rate = if m.decided > 0 {
            format!("{}/{}", m.agreements, m.decided)
        } else {
            "-".to_string()
        };
        out.push_str(&format!(
            "{:<22} {:>6} {:>5} {:>5} {:>5} {:>5} {:>6} {:>6} {:>9}\n",
            m.model, m.total, m.yes, m.no, m.unknown, m.error, m.false_yes, m.false_no, rate
        ));
    }
    if summary.bvn_samples > 0 {
        out.push_str(&format!(
            "\ndecomposition terms over {} samples (bound violations: {}):\n",
            summary.bvn_samples, summary.bvn_bound_violations
        ));
        for (terms, count) in &summary.bvn_terms {
            out.push_str(&format!("  {terms:>3} terms: {count}\n"));
        }
    }
    if summary.depletion.total > 0 {
        let d = &summary.depletion;
        out.push_str(&format!(
            "\ndepletion: {} runs, emptied {} (oracle-no {}), survived {}, false empties {}\n",
            d.total, d.emptied, d.oracle_no, d.survived, d.false_empties
        ));
    }
    if summary.cutloop.total > 0 {
        let c = &summary.cutloop;
        out.push_str(&format!(
            "\ncut loop: {} runs ({} yes, {} no, {} inconclusive), iterations min {} max {} mean {:.2}\n",
            c.total,
            c.yes,
            c.no,
            c.inconclusive,
            c.min_iterations.map_or("-".to_string(), |v| v.to_string()),
            c.max_iterations.map_or("-".to_string(), |v| v.to_string()),
            c.total_iterations as f64 / c.total as f64
        ));
    }
    if summary.malformed > 0 {
        out.push_str(&format!("\nmalformed records skipped: {}\n", summary.malformed));
    }
    out
}

/// CSV rendering: one `section` column distinguishes the table blocks.
pub fn render_csv(summary: &ReportSummary) -> String {
    let mut out = String::new();
    out.push_str("section,key,total,yes,no,unknown,error,false_yes,false_no,decided,agreements\n");
    for m in &summary.models {
        out.push_str(&format!(
            "agreement,{},{},{},{},{},{},{},{},{},{}\n",
            m.model,
            m.total,
            m.yes,
            m.no,
            m.unknown,
            m.error,
            m.false_yes,
            m.false_no,
            m.decided,
            m.agreements
        ));
    }
    for (terms, count) in &summary.bvn_terms {
        out.push_str(&format!("bvn_terms,{terms},{count},,,,,,,,\n"));
    }
    if summary.bvn_samples > 0 {
        out.push_str(&format!(
            "bvn_bound,violations,{},,,,,,,,\n",
            summary.bvn_bound_violations
        ));
    }
    if summary.depletion.total > 0 {
        let d = &summary.depletion;
        out.push_str(&format!(
            "depletion,summary,{},{},{},{},,,{},,\n",
            d.total, d.emptied, d.survived, d.oracle_no, d.false_empties
        ));
    }
    if summary.cutloop.total > 0 {
        let c = &summary.cutloop;
        out.push_str(&format!(
            "cutloop,summary,{},{},{},{},,,,{},\n",
            c.total, c.yes, c.no, c.inconclusive, c.total_iterations
        ));
    }
    out.push_str(&format!("meta,malformed,{},,,,,,,,\n", summary.malformed));
    out
}

// ---------------------------------------------------------------------------
// One-off entry points shared with the CLI
// ---------------------------------------------------------------------------

/// Runs one model on one externally supplied pair (the `solve` entry
/// point): pads as needed and returns the full run outcome.
pub fn solve_pair(
    pair: &InstancePair,
    kind: ModelKind,
    caps: &CapsConfig,
    lp_rounds: u32,
    max_cut_iters: u32,
) -> ModelRun {
    let mcaps = caps.model_caps();
    let padded = pair.pad();
    let inputs = ModelInputs {
        pair,
        padded: &padded,
        model_caps: &mcaps,
        lp_rounds,
        max_cut_iters,
    };
    run_model(kind, &inputs)
}

/// Checks whether a single pair breaches a claim: the claim model says yes,
/// both oracles say no, and the feasible point substitutes exactly.  Used
/// to confirm known counterexamples end to end.
pub fn verify_breach(
    pair: &InstancePair,
    claim: Claim,
    caps: &CapsConfig,
) -> Result<bool, HarnessError> {
    let run = solve_pair(pair, claim.model(), caps, default_lp_rounds(), default_cut_iters());
    if run.verdict != ModelVerdict::Yes {
        return Ok(false);
    }
    let ocaps = caps.oracle_caps();
    let fast = subgi_oracle(pair, &ocaps)
        .map_err(|source| HarnessError::Oracle { id: "ad-hoc pair".into(), source })?;
    if fast.yes {
        return Ok(false);
    }
    let slow = subgi_oracle_slow(pair, &ocaps)
        .map_err(|source| HarnessError::Oracle { id: "ad-hoc pair".into(), source })?;
    if slow.yes {
        return Err(HarnessError::Reverify(
            "pruned and unpruned oracles disagree on the candidate pair".into(),
        ));
    }
    reverify_substitution(claim.model(), pair, &caps.model_caps())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::frac;

    fn small_cfg(problems: Vec<Provenance>, models: Vec<ModelKind>) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::new(problems, (3, 4), models);
        cfg.seeds = 3;
        cfg.base_seed = 1;
        cfg.densities = vec![frac(1, 2)];
        cfg
    }

    #[test]
    fn model_and_claim_names_round_trip() {
        for kind in ModelKind::ALL {
            assert_eq!(kind.name().parse::<ModelKind>().unwrap(), kind);
            let json = serde_json::to_string(&kind).unwrap();
            assert_eq!(json, format!("\"{}\"", kind.name()));
        }
        for claim in Claim::ALL {
            assert_eq!(claim.name().parse::<Claim>().unwrap(), claim);
        }
    }

    #[test]
    fn instance_seeds_disperse() {
        let a = instance_seed(1, 0);
        let b = instance_seed(1, 1);
        let c = instance_seed(2, 0);
        assert_ne!(a, b);
        assert_ne!(a, c);
        // Fixed values pin the derivation so corpora stay stable.
        assert_eq!(a, instance_seed(1, 0));
    }

    #[test]
    fn zero_seeds_give_empty_output() {
        let mut cfg = small_cfg(vec![Provenance::Clique], vec![ModelKind::Relaxation]);
        cfg.seeds = 0;
        let records = run_experiment(&cfg).unwrap();
        assert!(records.is_empty());
        assert_eq!(records_to_jsonl(&records), "");
    }

    #[test]
    fn same_config_twice_is_byte_identical() {
        let cfg = small_cfg(
            vec![Provenance::Clique, Provenance::Hc],
            vec![ModelKind::Relaxation, ModelKind::Cutloop, ModelKind::Bvn],
        );
        let first = records_to_jsonl(&run_experiment(&cfg).unwrap());
        let second = records_to_jsonl(&run_experiment(&cfg).unwrap());
        assert!(!first.is_empty());
        assert_eq!(first, second);
    }

    #[test]
    fn records_round_trip_through_jsonl() {
        let cfg = small_cfg(vec![Provenance::Clique], vec![ModelKind::Relaxation]);
        let records = run_experiment(&cfg).unwrap();
        let text = records_to_jsonl(&records);
        let (back, malformed) = parse_jsonl(&text);
        assert_eq!(malformed, 0);
        assert_eq!(back, records);
        let (_, bad) = parse_jsonl("not json\n");
        assert_eq!(bad, 1);
    }

    #[test]
    fn exact_models_always_agree_with_the_oracle() {
        let cfg = small_cfg(
            vec![Provenance::Clique, Provenance::Hc],
            vec![ModelKind::Convex, ModelKind::Anchored, ModelKind::Cutloop],
        );
        let records = run_experiment(&cfg).unwrap();
        assert!(!records.is_empty());
        for r in &records {
            match r.model_verdict {
                ModelVerdict::Yes | ModelVerdict::No => {
                    assert_eq!(r.agree, Some(true), "{} {} disagreed", r.id, r.model);
                }
                _ => assert_eq!(r.agree, None),
            }
        }
    }

    #[test]
    fn necessity_models_never_say_no_on_yes_instances() {
        let mut cfg = small_cfg(
            vec![Provenance::SubGi, Provenance::Clique],
            vec![
                ModelKind::Relaxation,
                ModelKind::Symmetric,
                ModelKind::IncidenceSymmetric,
                ModelKind::IncidenceRelaxation,
                ModelKind::Asymmetric,
            ],
        );
        cfg.densities = vec![frac(1, 3)];
        cfg.sizes = (3, 3);
        cfg.seeds = 6;
        let records = run_experiment(&cfg).unwrap();
        assert!(!records.is_empty());
        for r in &records {
            if r.oracle_verdict && r.model_verdict == ModelVerdict::No {
                panic!("{} {}: sound no-direction produced a false no", r.id, r.model);
            }
        }
    }

    #[test]
    fn depletion_records_never_empty_a_yes_instance() {
        let mut cfg = small_cfg(vec![Provenance::Clique], vec![ModelKind::Depletion]);
        cfg.seeds = 8;
        cfg.densities = vec![frac(2, 5), frac(3, 5)];
        let records = run_experiment(&cfg).unwrap();
        assert!(records.iter().any(|r| r.model_verdict == ModelVerdict::No));
        for r in &records {
            if r.model_verdict == ModelVerdict::No {
                assert!(!r.oracle_verdict, "{}: depletion emptied a yes instance", r.id);
            }
        }
    }

    #[test]
    fn formula_corpora_skip_repeated_densities() {
        let mut cfg = small_cfg(vec![Provenance::TwoSat], vec![ModelKind::Relaxation]);
        cfg.densities = vec![frac(1, 2), frac(3, 4)];
        cfg.sizes = (3, 3);
        cfg.seeds = 2;
        cfg.sat_clauses = Some(2);
        cfg.caps.max_vertices = 16;
        let records = run_experiment(&cfg).unwrap();
        assert_eq!(records.len(), 2, "one record per formula, no density duplicates");
    }

    #[test]
    fn oversize_config_is_rejected() {
        let mut cfg = small_cfg(vec![Provenance::Clique], vec![ModelKind::Relaxation]);
        cfg.sizes = (3, 40);
        assert!(matches!(run_experiment(&cfg), Err(HarnessError::Config(_))));
        let mut sat = small_cfg(vec![Provenance::ThreeSat], vec![ModelKind::Relaxation]);
        sat.sat_clauses = Some(5);
        assert!(matches!(sat.validate(), Err(HarnessError::Config(_))));
    }

    #[test]
    fn hunt_reverifies_every_breach_and_is_deterministic() {
        let mut cfg = small_cfg(vec![Provenance::SubGi], vec![]);
        cfg.sizes = (2, 3);
        cfg.seeds = 12;
        cfg.densities = vec![frac(1, 2)];
        let first = hunt_counterexamples(&cfg, Claim::ConvexSufficiency).unwrap();
        let second = hunt_counterexamples(&cfg, Claim::ConvexSufficiency).unwrap();
        assert_eq!(first.instances, second.instances);
        assert_eq!(first.breaches, second.breaches);
        assert!(first.instances > 0);
        for f in &first.findings {
            assert!(f.slow_oracle_no && f.substitution_ok);
            assert_eq!(f.record.model_verdict, ModelVerdict::Yes);
            assert!(!f.record.oracle_verdict);
        }
        let summary = render_hunt_summary(&first);
        assert!(summary.contains("sizes:      2..=3"));
    }

    #[test]
    fn documented_pair_breaches_the_relaxation_claim() {
        // The half-sum point keeps the relaxation feasible although the
        // instance answer is no: the canonical sufficiency counterexample.
        let g = RatMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        let s = RatMatrix::from_ints(&[&[1, 0], &[0, 0]]);
        let pair = InstancePair::new(g, s, Relation::Cover, Provenance::SubGi).unwrap();
        let caps = CapsConfig::default();
        assert!(verify_breach(&pair, Claim::ConvexSufficiency, &caps).unwrap());
    }

    #[test]
    fn report_counts_are_consistent() {
        let cfg = small_cfg(
            vec![Provenance::Clique],
            vec![ModelKind::Relaxation, ModelKind::Cutloop, ModelKind::Depletion, ModelKind::Bvn],
        );
        let records = run_experiment(&cfg).unwrap();
        let summary = summarize(&records, 0);
        for m in &summary.models {
            assert_eq!(m.total, m.yes + m.no + m.unknown + m.error, "{}", m.model);
            assert_eq!(m.decided, m.yes + m.no, "{}", m.model);
            assert_eq!(m.decided, m.agreements + m.false_yes + m.false_no, "{}", m.model);
        }
        assert_eq!(summary.bvn_bound_violations, 0);
        assert_eq!(summary.depletion.false_empties, 0);
        let text = render_text(&summary);
        assert!(text.contains("relaxation"));
        let csv = render_csv(&summary);
        assert!(csv.lines().count() >= summary.models.len() + 1);
        let reparsed = report_from_jsonl(&records_to_jsonl(&records));
        assert_eq!(reparsed.models.len(), summary.models.len());
    }

    #[test]
    fn env_caps_override_and_reject_garbage() {
        let mut caps = CapsConfig::default();
        std::env::set_var("BIRKHOFF_MAX_VERTICES", "14");
        let applied = apply_env_caps(&mut caps).unwrap();
        assert_eq!(caps.max_vertices, 14);
        assert!(applied.iter().any(|(var, v)| var == "BIRKHOFF_MAX_VERTICES" && *v == 14));
        std::env::set_var("BIRKHOFF_MAX_VERTICES", "many");
        assert!(apply_env_caps(&mut caps).is_err());
        std::env::remove_var("BIRKHOFF_MAX_VERTICES");
    }

    #[test]
    fn gi_corpora_mix_isomorphic_and_independent_patterns() {
        let mut cfg = small_cfg(vec![Provenance::Gi], vec![ModelKind::Anchored]);
        cfg.sizes = (3, 3);
        cfg.seeds = 6;
        let records = run_experiment(&cfg).unwrap();
        let yes = records.iter().filter(|r| r.oracle_verdict).count();
        assert!(yes >= 3, "even slots relabel the host, so at least half are yes");
        for r in &records {
            if let Some(agree) = r.agree {
                assert!(agree, "{}: anchored sweep is exact", r.id);
            }
        }
    }
}
