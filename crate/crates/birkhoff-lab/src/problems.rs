//! Problem instances: digraphs, CNF formulas, and random generators.

use crate::mat::RatMatrix;
use crate::rat::Rat;
use num_traits::Signed;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("vertex index {0} out of range 1..={1}")]
    VertexRange(usize, usize),
    #[error("arc multiplicity must be positive")]
    ZeroMultiplicity,
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("weight count {got} does not match arc count {want}")]
    WeightCount { got: usize, want: usize },
    #[error("cnf: {0}")]
    Cnf(String),
}

/// A directed multigraph on vertices `1..=n` (loops allowed), stored as an
/// arc list with multiplicities.  Indices are 1-based in this struct and in
/// its JSON form; matrix views are 0-based.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DigraphInstance {
    pub n: usize,
    /// `[from, to, multiplicity]`, 1-based endpoints.
    pub arcs: Vec<[usize; 3]>,
}

impl DigraphInstance {
    pub fn new(n: usize) -> Self {
        DigraphInstance { n, arcs: Vec::new() }
    }

    /// Builds from 1-based `(from, to)` pairs, each with multiplicity 1.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self, ProblemError> {
        let mut g = DigraphInstance::new(n);
        for &(u, v) in arcs {
            g.add_arc(u, v, 1)?;
        }
        Ok(g)
    }

    /// Adds `mult` parallel copies of the arc `from -> to` (1-based).
    pub fn add_arc(&mut self, from: usize, to: usize, mult: usize) -> Result<(), ProblemError> {
        if from == 0 || from > self.n {
            return Err(ProblemError::VertexRange(from, self.n));
        }
        if to == 0 || to > self.n {
            return Err(ProblemError::VertexRange(to, self.n));
        }
        if mult == 0 {
            return Err(ProblemError::ZeroMultiplicity);
        }
        if self.arcs.iter().any(|a| a[0] == from && a[1] == to) {
            return Err(ProblemError::DuplicateArc(from, to));
        }
        self.arcs.push([from, to, mult]);
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ProblemError> {
        let mut seen = BTreeSet::new();
        for a in &self.arcs {
            if a[0] == 0 || a[0] > self.n {
                return Err(ProblemError::VertexRange(a[0], self.n));
            }
            if a[1] == 0 || a[1] > self.n {
                return Err(ProblemError::VertexRange(a[1], self.n));
            }
            if a[2] == 0 {
                return Err(ProblemError::ZeroMultiplicity);
            }
            if !seen.insert((a[0], a[1])) {
                return Err(ProblemError::DuplicateArc(a[0], a[1]));
            }
        }
        Ok(())
    }

    /// Total number of arcs counting multiplicities.
    pub fn arc_count(&self) -> usize {
        self.arcs.iter().map(|a| a[2]).sum()
    }

    /// Adjacency matrix: entry `(u-1, v-1)` is the multiplicity of `u -> v`.
    pub fn adjacency_matrix(&self) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.n, self.n);
        for a in &self.arcs {
            m.set(a[0] - 1, a[1] - 1, Rat::from_integer((a[2] as i64).into()));
        }
        m
    }

    /// Multiplicity of `u -> v` (1-based), 0 if absent.
    pub fn multiplicity(&self, from: usize, to: usize) -> usize {
        self.arcs.iter().find(|a| a[0] == from && a[1] == to).map_or(0, |a| a[2])
    }

    /// Whether every arc has a reverse partner of equal multiplicity.
    pub fn is_symmetric(&self) -> bool {
        self.arcs.iter().all(|a| self.multiplicity(a[1], a[0]) == a[2])
    }
}

/// A digraph with a rational weight per arc (in arc-list order); parallel
/// copies of an arc share the weight.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct WeightedDigraph {
    #[serde(flatten)]
    pub graph: DigraphInstance,
    #[serde(with = "crate::rat::rat_string_vec")]
    pub weights: Vec<Rat>,
}

impl WeightedDigraph {
    pub fn new(graph: DigraphInstance, weights: Vec<Rat>) -> Result<Self, ProblemError> {
        if weights.len() != graph.arcs.len() {
            return Err(ProblemError::WeightCount { got: weights.len(), want: graph.arcs.len() });
        }
        Ok(WeightedDigraph { graph, weights })
    }

    /// Weight matrix: entry `(u-1, v-1)` is the arc weight (0 if absent).
    pub fn weight_matrix(&self) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.graph.n, self.graph.n);
        for (a, w) in self.graph.arcs.iter().zip(&self.weights) {
            m.set(a[0] - 1, a[1] - 1, w.clone());
        }
        m
    }
}

/// A literal: variable index `1..=nvars`, negated or not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    /// Value under an assignment (`assignment[var - 1]` is the variable value).
    pub fn eval(&self, assignment: &[bool]) -> bool {
        assignment[self.var - 1] ^ self.negated
    }

    /// The complementary literal.
    pub fn complement(&self) -> Literal {
        Literal { var: self.var, negated: !self.negated }
    }
}

/// A CNF formula: clauses of literals over variables `1..=nvars`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    pub nvars: usize,
    pub clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    /// Builds from signed 1-based variable codes (DIMACS convention:
    /// negative means negated).
    pub fn from_codes(nvars: usize, clauses: &[&[i64]]) -> Result<Self, ProblemError> {
        let mut out = Vec::with_capacity(clauses.len());
        for clause in clauses {
            let mut lits = Vec::with_capacity(clause.len());
            for &code in *clause {
                if code == 0 {
                    return Err(ProblemError::Cnf("literal code 0".into()));
                }
                let var = code.unsigned_abs() as usize;
                if var > nvars {
                    return Err(ProblemError::Cnf(format!(
                        "variable {var} exceeds declared count {nvars}"
                    )));
                }
                lits.push(Literal { var, negated: code < 0 });
            }
            if lits.is_empty() {
                return Err(ProblemError::Cnf("empty clause".into()));
            }
            out.push(lits);
        }
        Ok(CnfFormula { nvars, clauses: out })
    }

    /// Parses DIMACS CNF text (`c` comments, `p cnf <vars> <clauses>`, then
    /// 0-terminated clauses; clauses may span lines).
    pub fn parse_dimacs(text: &str) -> Result<Self, ProblemError> {
        let mut nvars = None;
        let mut declared_clauses = 0usize;
        let mut clauses: Vec<Vec<Literal>> = Vec::new();
        let mut current: Vec<Literal> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                if nvars.is_some() {
                    return Err(ProblemError::Cnf("duplicate problem line".into()));
                }
                let mut parts = rest.split_whitespace();
                if parts.next() != Some("cnf") {
                    return Err(ProblemError::Cnf("problem line is not 'p cnf'".into()));
                }
                let v = parts
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| ProblemError::Cnf("bad variable count".into()))?;
                declared_clauses = parts
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| ProblemError::Cnf("bad clause count".into()))?;
                nvars = Some(v);
                continue;
            }
            let Some(v) = nvars else {
                return Err(ProblemError::Cnf("clause before problem line".into()));
            };
            for tok in line.split_whitespace() {
                let code: i64 = tok
                    .parse()
                    .map_err(|_| ProblemError::Cnf(format!("bad literal token {tok:?}")))?;
                if code == 0 {
                    if current.is_empty() {
                        return Err(ProblemError::Cnf("empty clause".into()));
                    }
                    clauses.push(std::mem::take(&mut current));
                } else {
                    let var = code.unsigned_abs() as usize;
                    if var > v {
                        return Err(ProblemError::Cnf(format!(
                            "variable {var} exceeds declared count {v}"
                        )));
                    }
                    current.push(Literal { var, negated: code < 0 });
                }
            }
        }
        if !current.is_empty() {
            return Err(ProblemError::Cnf("unterminated clause".into()));
        }
        let nvars = nvars.ok_or_else(|| ProblemError::Cnf("missing problem line".into()))?;
        if declared_clauses != clauses.len() {
            return Err(ProblemError::Cnf(format!(
                "declared {declared_clauses} clauses, found {}",
                clauses.len()
            )));
        }
        Ok(CnfFormula { nvars, clauses })
    }

    /// Renders DIMACS CNF text.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.nvars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                let code = lit.var as i64 * if lit.negated { -1 } else { 1 };
                out.push_str(&code.to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }

    /// Maximum clause width.
    pub fn max_width(&self) -> usize {
        self.clauses.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Evaluates under `assignment` (`assignment[v - 1]` is variable `v`).
    pub fn eval(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| l.eval(assignment)))
    }
}

/// Deterministic RNG for instance generation, seeded explicitly.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random digraph on `n` vertices: each ordered pair (no loops unless
/// `loops`) gets an arc independently with exact probability `density`.
pub fn gen_random_digraph(
    rng: &mut ChaCha8Rng,
    n: usize,
    density: &Rat,
    loops: bool,
) -> DigraphInstance {
    assert!(
        !density.is_negative() && density <= &Rat::from_integer(1.into()),
        "density must lie in [0, 1]"
    );
    let numer: u64 = density.numer().try_into().expect("density numerator fits u64");
    let denom: u64 = density.denom().try_into().expect("density denominator fits u64");
    let mut g = DigraphInstance::new(n);
    for u in 1..=n {
        for v in 1..=n {
            if u == v && !loops {
                continue;
            }
            if rng.gen_range(0..denom) < numer {
                g.add_arc(u, v, 1).expect("fresh arc");
            }
        }
    }
    g
}

/// Random symmetric digraph (undirected view): each unordered pair gets the
/// arc pair with exact probability `density`.
pub fn gen_random_symmetric_digraph(
    rng: &mut ChaCha8Rng,
    n: usize,
    density: &Rat,
) -> DigraphInstance {
    assert!(
        !density.is_negative() && density <= &Rat::from_integer(1.into()),
        "density must lie in [0, 1]"
    );
    let numer: u64 = density.numer().try_into().expect("density numerator fits u64");
    let denom: u64 = density.denom().try_into().expect("density denominator fits u64");
    let mut g = DigraphInstance::new(n);
    for u in 1..=n {
        for v in (u + 1)..=n {
            if rng.gen_range(0..denom) < numer {
                g.add_arc(u, v, 1).expect("fresh arc");
                g.add_arc(v, u, 1).expect("fresh arc");
            }
        }
    }
    g
}

/// Random CNF with `nclauses` clauses of exactly `width` distinct variables.
pub fn gen_random_cnf(
    rng: &mut ChaCha8Rng,
    nvars: usize,
    nclauses: usize,
    width: usize,
) -> CnfFormula {
    assert!(width >= 1 && width <= nvars, "clause width must fit the variable count");
    let mut clauses = Vec::with_capacity(nclauses);
    for _ in 0..nclauses {
        let mut vars = BTreeSet::new();
        while vars.len() < width {
            vars.insert(rng.gen_range(1..=nvars));
        }
        let clause = vars
            .into_iter()
            .map(|var| Literal { var, negated: rng.gen_bool(0.5) })
            .collect();
        clauses.push(clause);
    }
    CnfFormula { nvars, clauses }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::frac;

    #[test]
    fn digraph_adjacency_and_json() {
        let mut g = DigraphInstance::new(3);
        g.add_arc(1, 2, 1).unwrap();
        g.add_arc(2, 1, 2).unwrap();
        g.add_arc(3, 3, 1).unwrap();
        let m = g.adjacency_matrix();
        assert_eq!(m.at(0, 1), &int(1));
        assert_eq!(m.at(1, 0), &int(2));
        assert_eq!(m.at(2, 2), &int(1));
        assert_eq!(g.arc_count(), 4);

        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"n":3,"arcs":[[1,2,1],[2,1,2],[3,3,1]]}"#);
        let back: DigraphInstance = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn digraph_rejects_bad_arcs() {
        let mut g = DigraphInstance::new(2);
        assert!(g.add_arc(0, 1, 1).is_err());
        assert!(g.add_arc(1, 3, 1).is_err());
        assert!(g.add_arc(1, 2, 0).is_err());
        g.add_arc(1, 2, 1).unwrap();
        assert!(matches!(g.add_arc(1, 2, 1), Err(ProblemError::DuplicateArc(1, 2))));
    }

    #[test]
    fn weighted_digraph_round_trips() {
        let g = DigraphInstance::from_arcs(2, &[(1, 2), (2, 1)]).unwrap();
        let w = WeightedDigraph::new(g, vec![frac(1, 2), int(3)]).unwrap();
        let json = serde_json::to_string(&w).unwrap();
        let back: WeightedDigraph = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
        assert_eq!(w.weight_matrix().at(0, 1), &frac(1, 2));
    }

    use crate::rat::int;

    #[test]
    fn dimacs_round_trip() {
        let text = "c sample\np cnf 3 2\n1 -2 3 0\n-1 2 0\n";
        let f = CnfFormula::parse_dimacs(text).unwrap();
        assert_eq!(f.nvars, 3);
        assert_eq!(f.clauses.len(), 2);
        assert_eq!(f.clauses[0], vec![Literal::pos(1), Literal::neg(2), Literal::pos(3)]);
        let again = CnfFormula::parse_dimacs(&f.to_dimacs()).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn dimacs_rejects_malformed() {
        assert!(CnfFormula::parse_dimacs("1 2 0\n").is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 2 1\n1 3 0\n").is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 2 2\n1 0\n").is_err());
        assert!(CnfFormula::parse_dimacs("p cnf 2 1\n1 2\n").is_err());
    }

    #[test]
    fn cnf_eval() {
        let f = CnfFormula::from_codes(2, &[&[1, 2], &[-1, 2]]).unwrap();
        assert!(f.eval(&[true, true]));
        assert!(f.eval(&[false, true]));
        assert!(!f.eval(&[true, false]));
    }

    #[test]
    fn generators_are_deterministic() {
        let mut r1 = seeded_rng(7);
        let mut r2 = seeded_rng(7);
        let g1 = gen_random_digraph(&mut r1, 5, &frac(1, 2), false);
        let g2 = gen_random_digraph(&mut r2, 5, &frac(1, 2), false);
        assert_eq!(g1, g2);
        g1.validate().unwrap();
        assert!(g1.arcs.iter().all(|a| a[0] != a[1]));

        let c1 = gen_random_cnf(&mut r1, 4, 6, 3);
        c1.clauses.iter().for_each(|c| {
            assert_eq!(c.len(), 3);
            let vars: BTreeSet<_> = c.iter().map(|l| l.var).collect();
            assert_eq!(vars.len(), 3);
        });
    }

    #[test]
    fn symmetric_generator_is_symmetric() {
        let mut rng = seeded_rng(11);
        let g = gen_random_symmetric_digraph(&mut rng, 6, &frac(2, 3));
        assert!(g.is_symmetric());
        assert!(g.arcs.iter().all(|a| a[0] != a[1]));
    }
}
