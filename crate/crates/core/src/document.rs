//! Problem and result documents for the command-line front end.
//!
//! A problem document is JSON. Integers inside matrices may be written as
//! JSON numbers or as decimal strings; results always use decimal strings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::cohomology::{cohomology_group, CohomologyError};
use crate::group::{FinGroup, GroupError};
use crate::linalg::{AbelianGroupStructure, IntMatrix};
use crate::module::{GModule, ModuleError, TwoTermComplex};
use crate::oracle::{oracle_cohomology, oracle_hypercohomology_h1, OracleBudget, OracleError};
use crate::presentation::{abelianize_presentation, PresentationError};
use crate::sha::{brauer_group, sha1_omega_alg, Hypotheses, ShaError, ShaResult, SubgroupSelection};

/// An integer written either as a JSON number or a decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(n) => Ok(Int(BigInt::from(n))),
            Raw::Str(s) => s
                .trim()
                .parse()
                .map(Int)
                .map_err(|_| serde::de::Error::custom(format!("{s:?} is not a decimal integer"))),
        }
    }
}

pub type Matrix = Vec<Vec<Int>>;

fn matrix_out(m: &IntMatrix) -> Matrix {
    m.to_rows().into_iter().map(|r| r.into_iter().map(Int).collect()).collect()
}

fn vector_out(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    /// `table[a][b]` is the index of `a·b`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    /// generator indices for a table; chosen automatically if absent
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<usize>>,
    /// one list of 1-based cycles per generator
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutations: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub ambient_rank: usize,
    /// each entry is one relation, a vector of length `ambient_rank`
    #[serde(default)]
    pub relations: Matrix,
    /// one `ambient_rank × ambient_rank` matrix per group generator
    pub action: Vec<Matrix>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub a: String,
    pub b: String,
    /// `rank(B) × rank(A)`
    #[serde(default)]
    pub map: Matrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationSpec {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relators: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypotheses: Option<Hypotheses>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<PresentationSpec>,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("oracle disagrees with the computation: {0}")]
    OracleMismatch(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Schema(_) => 2,
            RunError::Precondition(_) => 3,
            RunError::Budget(_) => 4,
            RunError::OracleMismatch(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            RunError::Schema(_) => "schema",
            RunError::Precondition(_) => "precondition",
            RunError::Budget(_) => "budget",
            RunError::OracleMismatch(_) => "oracle_mismatch",
        }
    }
}

impl From<GroupError> for RunError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::OrderBoundExceeded { .. } => RunError::Budget(format!("group: {e}")),
            GroupError::InvalidPermutation(_) | GroupError::InvalidGenerator(_) => {
                RunError::Schema(format!("group: {e}"))
            }
            _ => RunError::Precondition(format!("group: {e}")),
        }
    }
}

impl From<CohomologyError> for RunError {
    fn from(e: CohomologyError) -> Self {
        RunError::Precondition(e.to_string())
    }
}

impl From<ShaError> for RunError {
    fn from(e: ShaError) -> Self {
        match e {
            ShaError::Module(m) => module_error("complex", m),
            other => RunError::Precondition(other.to_string()),
        }
    }
}

impl From<OracleError> for RunError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::BudgetExceeded { .. } => RunError::Budget(e.to_string()),
            other => RunError::Precondition(format!("oracle: {other}")),
        }
    }
}

impl From<PresentationError> for RunError {
    fn from(e: PresentationError) -> Self {
        RunError::Schema(format!("presentation: {e}"))
    }
}

fn module_error(context: &str, e: ModuleError) -> RunError {
    match e {
        ModuleError::Group(g) => g.into(),
        ModuleError::NotFinite | ModuleError::NotAHomomorphism { .. } => {
            RunError::Precondition(format!("{context}: {e}"))
        }
        _ => RunError::Schema(format!("{context}: {e}")),
    }
}

/// Hex SHA-256 of the raw input bytes.
pub fn input_digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn parse_document(text: &str) -> Result<ProblemDocument, RunError> {
    serde_json::from_str(text)
        .map_err(|e| RunError::Schema(format!("line {}, column {}: {e}", e.line(), e.column())))
}

fn to_matrix(rows: &Matrix, cols: usize, context: &str) -> Result<IntMatrix, RunError> {
    let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect();
    IntMatrix::try_from_rows(&rows, cols).map_err(|e| RunError::Schema(format!("{context}: {e}")))
}

/// The resolved objects of a document.
pub struct Problem {
    pub group: Arc<FinGroup>,
    pub modules: BTreeMap<String, GModule>,
    pub document: ProblemDocument,
}

impl Problem {
    pub fn from_document(document: ProblemDocument, max_order: usize) -> Result<Self, RunError> {
        let spec = document.group.clone().ok_or_else(|| RunError::Schema("missing section `group`".into()))?;
        let group = match (&spec.table, &spec.permutations) {
            (Some(_), Some(_)) => {
                return Err(RunError::Schema("group: give either `table` or `permutations`, not both".into()))
            }
            (Some(table), None) => {
                if table.len() > max_order {
                    return Err(GroupError::OrderBoundExceeded { bound: max_order }.into());
                }
                match &spec.generators {
                    Some(g) => FinGroup::from_table_with_generators(table, g.clone())?,
                    None => FinGroup::from_table(table)?,
                }
            }
            (None, Some(perms)) => {
                if spec.generators.is_some() {
                    return Err(RunError::Schema(
                        "group: `generators` applies to `table`; permutations are the generators".into(),
                    ));
                }
                FinGroup::from_cycles(perms, spec.degree, max_order)?
            }
            (None, None) => return Err(RunError::Schema("group: needs `table` or `permutations`".into())),
        };
        let group = Arc::new(group);
        let mut modules = BTreeMap::new();
        for (name, m) in &document.modules {
            let context = format!("module {name:?}");
            let relations = to_matrix(&m.relations, m.ambient_rank, &format!("{context}, relations"))?.transpose();
            let action = m
                .action
                .iter()
                .enumerate()
                .map(|(k, a)| to_matrix(a, m.ambient_rank, &format!("{context}, action of generator {k}")))
                .collect::<Result<Vec<_>, _>>()?;
            for (k, a) in action.iter().enumerate() {
                if a.rows() != m.ambient_rank {
                    return Err(RunError::Schema(format!(
                        "{context}, action of generator {k}: {} rows, expected {}",
                        a.rows(),
                        m.ambient_rank
                    )));
                }
            }
            let module =
                GModule::new(group.clone(), relations, action).map_err(|e| module_error(&context, e))?;
            module.validate().map_err(|v| RunError::Precondition(format!("{context}: {v}")))?;
            modules.insert(name.clone(), module);
        }
        Ok(Problem { group, modules, document })
    }

    pub fn module(&self, name: &str) -> Result<&GModule, RunError> {
        self.modules.get(name).ok_or_else(|| RunError::Schema(format!("no module named {name:?}")))
    }

    pub fn complex(&self) -> Result<TwoTermComplex, RunError> {
        let spec = self.document.complex.as_ref().ok_or_else(|| RunError::Schema("missing section `complex`".into()))?;
        let a = self.module(&spec.a)?.clone();
        let b = self.module(&spec.b)?.clone();
        let map = to_matrix(&spec.map, a.ambient_rank(), "complex map")?;
        let c = TwoTermComplex::new(a, b, map).map_err(|e| module_error("complex", e))?;
        c.validate().map_err(|v| RunError::Precondition(format!("complex: {v}")))?;
        Ok(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub method: String,
    pub structure: AbelianGroupStructure,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorOut {
    pub order: Int,
    /// cocycle values, one vector per argument tuple
    pub cocycle: Vec<Vec<Int>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyOut {
    pub module: String,
    pub degree: usize,
    pub structure: AbelianGroupStructure,
    pub generators: Vec<GeneratorOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupOut {
    /// element indices, ascending
    pub elements: Vec<usize>,
    pub h1: AbelianGroupStructure,
    pub restriction: Matrix,
    pub kernel: AbelianGroupStructure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShaOut {
    pub h1: AbelianGroupStructure,
    pub structure: AbelianGroupStructure,
    /// generators in coordinates of the `h1` generators
    pub generators: Vec<Vec<Int>>,
    pub generator_orders: Vec<Int>,
    pub subgroups: Vec<SubgroupOut>,
    pub restrictions_vanish: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrauerOut {
    pub sha: ShaOut,
    pub interpretation: String,
    pub statement: String,
    pub target: crate::sha::BrauerTarget,
    pub identification: crate::sha::Identification,
    pub hypotheses: Hypotheses,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianizeOut {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
    pub exponent_matrix: Matrix,
    pub structure: AbelianGroupStructure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateOut {
    pub group_order: usize,
    pub group_generators: Vec<usize>,
    pub modules: BTreeMap<String, AbelianGroupStructure>,
    pub complex_valid: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "command")]
pub enum Output {
    Cohomology(CohomologyOut),
    Sha(ShaOut),
    Brauer(BrauerOut),
    Abelianize(AbelianizeOut),
    Validate(ValidateOut),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorOut {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub input_digest: String,
    pub exit_status: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<Output>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorOut>,
}

impl ResultDocument {
    pub fn from_outcome(digest: String, outcome: Result<Output, RunError>) -> Self {
        match outcome {
            Ok(output) => ResultDocument { input_digest: digest, exit_status: 0, output: Some(output), error: None },
            Err(e) => ResultDocument {
                input_digest: digest,
                exit_status: e.exit_code(),
                output: None,
                error: Some(ErrorOut { kind: e.kind().into(), message: e.to_string() }),
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub oracle: bool,
    pub max_order: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { oracle: false, max_order: crate::group::DEFAULT_ORDER_BOUND }
    }
}

impl RunOptions {
    fn budget(&self) -> OracleBudget {
        OracleBudget { max_group_order: self.max_order.min(OracleBudget::default().max_group_order), ..Default::default() }
    }
}

fn oracle_report(
    structure: &AbelianGroupStructure,
    result: Result<AbelianGroupStructure, OracleError>,
    method: &str,
) -> Result<Option<OracleReport>, RunError> {
    let oracle = match result {
        Ok(s) => s,
        Err(OracleError::Unsupported(_) | OracleError::NotFinite | OracleError::NotLattice) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    if &oracle != structure {
        return Err(RunError::OracleMismatch(format!("{method} gives {oracle}, computation gives {structure}")));
    }
    Ok(Some(OracleReport { method: method.into(), structure: oracle, agrees: true }))
}

pub fn cmd_cohomology(problem: &Problem, module: &str, degree: usize, opts: &RunOptions) -> Result<Output, RunError> {
    let m = problem.module(module)?;
    let h = cohomology_group(m, degree)?;
    let generators = h
        .generators()
        .iter()
        .zip(h.generator_orders())
        .map(|(g, d)| GeneratorOut {
            order: Int(d.clone()),
            cocycle: h.as_table(g).iter().map(|v| vector_out(v)).collect(),
        })
        .collect();
    let oracle = if opts.oracle {
        let method = if m.structure().is_finite() { "brute force" } else { "dimension shift" };
        oracle_report(h.structure(), oracle_cohomology(m, degree, &opts.budget()), method)?
    } else {
        None
    };
    Ok(Output::Cohomology(CohomologyOut {
        module: module.into(),
        degree,
        structure: h.structure().clone(),
        generators,
        oracle,
    }))
}

fn sha_out(r: &ShaResult) -> Result<ShaOut, RunError> {
    let mut subgroups: Vec<SubgroupOut> = r
        .per_subgroup
        .iter()
        .map(|s| SubgroupOut {
            elements: s.elements.clone(),
            h1: s.target.clone(),
            restriction: matrix_out(&s.restriction),
            kernel: s.kernel.clone(),
        })
        .collect();
    // subgroups by minimal element index, then lexicographically
    subgroups.sort_by(|a, b| a.elements.iter().skip(1).cmp(b.elements.iter().skip(1)));
    Ok(ShaOut {
        h1: r.h1.structure().clone(),
        structure: r.structure.clone(),
        generators: r.generator_coordinates.iter().map(|c| vector_out(c)).collect(),
        generator_orders: vector_out(&r.generator_orders),
        subgroups,
        restrictions_vanish: r.verify_vanishing()?,
        oracle: None,
    })
}

pub fn cmd_sha(problem: &Problem, opts: &RunOptions) -> Result<Output, RunError> {
    let c = problem.complex()?;
    let r = sha1_omega_alg(&c, SubgroupSelection::MaximalUpToConjugacy)?;
    let mut out = sha_out(&r)?;
    if opts.oracle {
        out.oracle = oracle_report(
            r.h1.structure(),
            oracle_hypercohomology_h1(&c, &opts.budget()),
            "degenerate complex reduced to module cohomology",
        )?;
    }
    Ok(Output::Sha(out))
}

pub fn cmd_brauer(problem: &Problem, opts: &RunOptions) -> Result<Output, RunError> {
    let c = problem.complex()?;
    let hypotheses =
        problem.document.hypotheses.clone().ok_or_else(|| RunError::Schema("missing section `hypotheses`".into()))?;
    let report = brauer_group(c.a(), c.b(), c.map(), &hypotheses)?;
    let mut sha = sha_out(&report.sha)?;
    if opts.oracle {
        sha.oracle = oracle_report(
            &sha.h1,
            oracle_hypercohomology_h1(&c, &opts.budget()),
            "degenerate complex reduced to module cohomology",
        )?;
    }
    Ok(Output::Brauer(BrauerOut {
        sha,
        interpretation: report.interpretation.to_string(),
        statement: report.statement,
        target: report.target,
        identification: report.identification,
        hypotheses: report.hypotheses,
    }))
}

pub fn cmd_abelianize(generators: &[String], relators: &[String]) -> Result<Output, RunError> {
    let (structure, matrix) = abelianize_presentation(generators, relators)?;
    Ok(Output::Abelianize(AbelianizeOut {
        generators: generators.to_vec(),
        relators: relators.to_vec(),
        exponent_matrix: matrix_out(&matrix),
        structure,
    }))
}

pub fn cmd_validate(problem: &Problem) -> Result<Output, RunError> {
    let complex_valid = match &problem.document.complex {
        Some(_) => Some(problem.complex().map(|_| true)?),
        None => None,
    };
    Ok(Output::Validate(ValidateOut {
        group_order: problem.group.order(),
        group_generators: problem.group.generators().to_vec(),
        modules: problem.modules.iter().map(|(k, m)| (k.clone(), m.structure())).collect(),
        complex_valid,
    }))
}

fn structure_line(s: &AbelianGroupStructure) -> String {
    if s.is_trivial() {
        "0".into()
    } else {
        s.to_string()
    }
}

/// Plain-text rendering of a result.
pub fn render_text(doc: &ResultDocument) -> String {
    let mut out = String::new();
    if let Some(e) = &doc.error {
        let _ = writeln!(out, "error ({}): {}", e.kind, e.message);
        return out;
    }
    let oracle_line = |out: &mut String, o: &Option<OracleReport>| {
        if let Some(o) = o {
            let _ = writeln!(out, "oracle ({}): {} [{}]", o.method, structure_line(&o.structure), if o.agrees { "agrees" } else { "DISAGREES" });
        }
    };
    let sha_lines = |out: &mut String, s: &ShaOut| {
        let _ = writeln!(out, "H^1(C) = {}", structure_line(&s.h1));
        for sub in &s.subgroups {
            let _ = writeln!(out, "  restriction to {:?}: H^1 = {}, kernel {}", sub.elements, structure_line(&sub.h1), structure_line(&sub.kernel));
        }
        let _ = writeln!(out, "Sha^1_omega,alg = {}", structure_line(&s.structure));
        let _ = writeln!(out, "generators restrict to zero: {}", s.restrictions_vanish);
        oracle_line(out, &s.oracle);
    };
    match &doc.output {
        Some(Output::Cohomology(c)) => {
            let _ = writeln!(out, "H^{}(G, {}) = {}", c.degree, c.module, structure_line(&c.structure));
            for (i, g) in c.generators.iter().enumerate() {
                let cells: Vec<String> = g
                    .cocycle
                    .iter()
                    .map(|v| format!("({})", v.iter().map(|x| x.0.to_string()).collect::<Vec<_>>().join(",")))
                    .collect();
                let _ = writeln!(out, "  generator {i} of order {}: {}", g.order.0, cells.join(" "));
            }
            oracle_line(&mut out, &c.oracle);
        }
        Some(Output::Sha(s)) => sha_lines(&mut out, s),
        Some(Output::Brauer(b)) => {
            sha_lines(&mut out, &b.sha);
            let _ = writeln!(out, "interpretation: {}", b.interpretation);
            let _ = writeln!(out, "{}", b.statement);
            let ident = match &b.identification {
                crate::sha::Identification::Established(why) => format!("finite level equals field level ({why})"),
                crate::sha::Identification::EmbeddingOnly => {
                    "finite level only embeds into the field-level group".into()
                }
            };
            let _ = writeln!(out, "{ident}");
        }
        Some(Output::Abelianize(a)) => {
            let _ = writeln!(out, "abelianization = {}", structure_line(&a.structure));
        }
        Some(Output::Validate(v)) => {
            let _ = writeln!(out, "group of order {} with generators {:?}", v.group_order, v.group_generators);
            for (name, s) in &v.modules {
                let _ = writeln!(out, "module {name}: {} (valid)", structure_line(s));
            }
            if let Some(ok) = v.complex_valid {
                let _ = writeln!(out, "complex valid: {ok}");
            }
        }
        None => {}
    }
    out
}
