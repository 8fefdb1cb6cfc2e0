//! Case-file loading, command implementations, and report/graph emitters
//! for the foliation-invariant engine.

pub mod parser;

use serde::{Deserialize, Serialize};

use folinv::algebra::{Poly2, Vars};
use folinv::divisors::SeparatrixDivisor;
use folinv::error::Error as EngineError;
use folinv::foliation::OneForm;
use folinv::invariants::{analyze, AnalysisOptions, InvariantReport, RowStatus};
use folinv::localring::{intersection_number, QuotientDim};
use folinv::resolution::{reduce, ChiMode, ReduceOptions, ReductionTree, SingularityClass};

pub use parser::{parse_poly, render_poly, ParseError};

/// Errors surfaced to the command line, tagged with the process exit code:
/// 1 input error, 2 identity failure, 3 internal inconsistency.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("identity check failed: {0}")]
    IdentityFailure(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::IdentityFailure(_) => 2,
            CliError::Inconsistency(_) => 3,
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Inconsistency(msg) => CliError::Inconsistency(msg),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

// ---- case files ---------------------------------------------------------

#[derive(Clone, Debug, Deserialize)]
pub struct CaseFile {
    pub form: FormSpec,
    #[serde(default)]
    pub curves: Vec<CurveSpec>,
    #[serde(default)]
    pub probes: Vec<ProbeSpec>,
    #[serde(default)]
    pub options: CaseOptions,
}

#[derive(Clone, Debug, Deserialize)]
pub struct FormSpec {
    pub p: String,
    pub q: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct CurveSpec {
    pub name: String,
    pub equation: String,
    pub weight: i64,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ProbeSpec {
    pub name: String,
    pub equation: String,
}

#[derive(Clone, Debug, Deserialize, Default)]
pub struct CaseOptions {
    pub chi_mode: Option<String>,
    pub seed: Option<u64>,
    pub max_depth: Option<usize>,
    pub checks: Option<Vec<String>>,
}

/// Options resolved from the case file and command-line flags (flags win).
#[derive(Clone, Debug)]
pub struct RunOptions {
    pub chi_mode: ChiMode,
    pub seed: u64,
    pub max_depth: usize,
    pub checks: Vec<String>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            chi_mode: ChiMode::Polar,
            seed: 0,
            max_depth: 64,
            checks: vec!["all".into()],
        }
    }
}

pub fn parse_chi_mode(s: &str) -> Result<ChiMode, CliError> {
    match s {
        "literal" => Ok(ChiMode::Literal),
        "polar" => Ok(ChiMode::Polar),
        other => Err(CliError::Input(format!(
            "unknown chi mode '{other}' (expected literal or polar)"
        ))),
    }
}

impl CaseFile {
    pub fn from_json(text: &str) -> Result<CaseFile, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("bad case file: {e}")))
    }

    pub fn resolve_options(
        &self,
        mode_flag: Option<&str>,
        seed_flag: Option<u64>,
        depth_flag: Option<usize>,
        checks_flag: Option<&str>,
    ) -> Result<RunOptions, CliError> {
        let mut opts = RunOptions::default();
        if let Some(m) = &self.options.chi_mode {
            opts.chi_mode = parse_chi_mode(m)?;
        }
        if let Some(s) = self.options.seed {
            opts.seed = s;
        }
        if let Some(d) = self.options.max_depth {
            opts.max_depth = d;
        }
        if let Some(c) = &self.options.checks {
            opts.checks = c.clone();
        }
        if let Some(m) = mode_flag {
            opts.chi_mode = parse_chi_mode(m)?;
        }
        if let Some(s) = seed_flag {
            opts.seed = s;
        }
        if let Some(d) = depth_flag {
            opts.max_depth = d;
        }
        if let Some(c) = checks_flag {
            opts.checks = c.split(',').map(|s| s.trim().to_string()).collect();
        }
        Ok(opts)
    }

    pub fn build_form(&self) -> Result<OneForm, CliError> {
        let p = parse_poly(&self.form.p)?;
        let q = parse_poly(&self.form.q)?;
        Ok(OneForm::new(p, q)?)
    }

    pub fn build_divisor(&self) -> Result<Option<SeparatrixDivisor>, CliError> {
        if self.curves.is_empty() {
            return Ok(None);
        }
        let entries = self
            .curves
            .iter()
            .map(|c| Ok((c.name.clone(), parse_poly(&c.equation)?, c.weight)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(Some(SeparatrixDivisor::new(Vars::xy(), entries)?))
    }

    pub fn build_probes(&self) -> Result<Vec<(String, Poly2)>, CliError> {
        self.probes
            .iter()
            .map(|p| Ok((p.name.clone(), parse_poly(&p.equation)?)))
            .collect()
    }
}

// ---- commands -------------------------------------------------------------

/// Intersection number of two curves given as expressions.
pub fn cmd_intersect(f_text: &str, g_text: &str) -> Result<String, CliError> {
    let f = parse_poly(f_text)?;
    let g = parse_poly(g_text)?;
    match intersection_number(&f, &g)? {
        QuotientDim::Finite(n) => Ok(n.to_string()),
        QuotientDim::Infinite => Ok("infinite".to_string()),
    }
}

/// Full analysis as a JSON report.
pub fn cmd_analyze(case: &CaseFile, opts: &RunOptions) -> Result<InvariantReport, CliError> {
    let form = case.build_form()?;
    let divisor = case.build_divisor()?;
    let probes = case.build_probes()?;
    let report = analyze(
        &form,
        divisor.as_ref(),
        &probes,
        &AnalysisOptions {
            seed: opts.seed,
            max_depth: opts.max_depth,
            chi_mode: opts.chi_mode,
        },
    )?;
    Ok(report)
}

pub fn report_to_json(report: &InvariantReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

// ---- reduction tree emitters ----------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct TreeNodeJson {
    pub id: usize,
    pub parent: Option<usize>,
    pub depth: usize,
    pub class: String,
    pub nu: u32,
    pub orbit_weight: u64,
    pub incident_components: Vec<usize>,
    pub children: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blowup_dicritical: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub created_component: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tangent_saddle_node_index: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentJson {
    pub id: usize,
    pub created_at_node: usize,
    pub dicritical: bool,
    pub multiplicity: u64,
    pub valence: u32,
    pub adjacent: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeJson {
    pub depth: usize,
    pub nodes: Vec<TreeNodeJson>,
    pub components: Vec<ComponentJson>,
}

pub fn tree_to_json(tree: &ReductionTree) -> TreeJson {
    let nodes = tree
        .nodes
        .iter()
        .map(|n| {
            let tsn = match &n.class {
                SingularityClass::SaddleNode {
                    weak_component: Some(_),
                    ind_weak,
                    ..
                } => *ind_weak,
                _ => None,
            };
            TreeNodeJson {
                id: n.id.0,
                parent: n.parent.map(|p| p.0),
                depth: n.depth,
                class: n.class.short_name().to_string(),
                nu: n.nu,
                orbit_weight: n.orbit_weight,
                incident_components: n.incident.iter().map(|(c, _)| c.0).collect(),
                children: n.children.iter().map(|c| c.0).collect(),
                blowup_dicritical: n.blowup.as_ref().map(|b| b.dicritical),
                created_component: n.blowup.as_ref().map(|b| b.comp.0),
                tangent_saddle_node_index: tsn,
            }
        })
        .collect();
    let components = tree
        .comps
        .iter()
        .map(|c| {
            let mut adjacent: Vec<usize> = c.adjacent.iter().map(|a| a.0).collect();
            adjacent.sort_unstable();
            ComponentJson {
                id: c.id.0,
                created_at_node: c.created_at.0,
                dicritical: c.dicritical,
                multiplicity: c.multiplicity,
                valence: c.valence(),
                adjacent,
            }
        })
        .collect();
    TreeJson {
        depth: tree.depth,
        nodes,
        components,
    }
}

/// DOT rendering: one ellipse node per infinitely near point, one box node
/// per divisor component.
pub fn tree_to_dot(tree: &ReductionTree) -> String {
    let mut out = String::from("digraph reduction {\n  rankdir=TB;\n");
    for n in &tree.nodes {
        out.push_str(&format!(
            "  q{} [label=\"q{}\\nnu={} {}\\norbit weight {}\"];\n",
            n.id.0,
            n.id.0,
            n.nu,
            n.class.short_name(),
            n.orbit_weight
        ));
    }
    for n in &tree.nodes {
        if let Some(p) = n.parent {
            out.push_str(&format!("  q{} -> q{};\n", p.0, n.id.0));
        }
    }
    for c in &tree.comps {
        let style = if c.dicritical {
            "style=\"filled,dashed\", fillcolor=lightyellow"
        } else {
            "style=filled, fillcolor=lightgrey"
        };
        out.push_str(&format!(
            "  D{} [shape=box, {}, label=\"D{}\\nnu(D)={} Val={}{}\"];\n",
            c.id.0,
            style,
            c.id.0,
            c.multiplicity,
            c.valence(),
            if c.dicritical { " dicritical" } else { "" }
        ));
        out.push_str(&format!(
            "  q{} -> D{} [style=dotted, arrowhead=none];\n",
            c.created_at.0, c.id.0
        ));
    }
    out.push_str("}\n");
    out
}

/// Reduction command: the tree as JSON plus a DOT rendering.
pub fn cmd_reduce(case: &CaseFile, opts: &RunOptions) -> Result<(TreeJson, String), CliError> {
    let form = case.build_form()?;
    let tree = reduce(
        &form,
        &ReduceOptions {
            max_depth: opts.max_depth,
            split_hints: vec![],
        },
    )?;
    Ok((tree_to_json(&tree), tree_to_dot(&tree)))
}

// ---- identity check command -------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub report: InvariantReport,
    pub selected: Vec<String>,
    pub failed: Vec<String>,
    pub passed: bool,
}

/// Run the identity table and decide the exit verdict. A row counts when
/// the checks selection includes it (or "all") and its mode matches the
/// selected chi mode (mode-free rows always count).
pub fn cmd_check(case: &CaseFile, opts: &RunOptions) -> Result<CheckOutcome, CliError> {
    let report = cmd_analyze(case, opts)?;
    if report.route_disagreement {
        return Err(CliError::Inconsistency(
            "GSV routes disagree (polar vs Tjurina difference)".into(),
        ));
    }
    let all = opts.checks.iter().any(|c| c == "all");
    let mut selected = Vec::new();
    let mut failed = Vec::new();
    for row in &report.identities {
        if !all && !opts.checks.iter().any(|c| c == row.id) {
            continue;
        }
        if row.mode.is_some() && row.mode != Some(opts.chi_mode) {
            continue;
        }
        selected.push(row.id.to_string());
        if row.status == RowStatus::Fail {
            failed.push(row.id.to_string());
        }
    }
    let passed = failed.is_empty();
    Ok(CheckOutcome {
        report,
        selected,
        failed,
        passed,
    })
}

/// Human-readable verdict table.
pub fn render_check_table(outcome: &CheckOutcome, mode: ChiMode) -> String {
    let mut out = String::new();
    for row in &outcome.report.identities {
        if row.mode.is_some() && row.mode != Some(mode) {
            continue;
        }
        let status = match row.status {
            RowStatus::Pass => "PASS",
            RowStatus::Fail => "FAIL",
            RowStatus::Skipped => "skip",
        };
        let sides = match (row.lhs, row.rhs) {
            (Some(l), Some(r)) => format!("{l} vs {r}"),
            _ => row.note.clone().unwrap_or_default(),
        };
        out.push_str(&format!("{status:4}  {:40} {sides}\n", row.id));
    }
    out.push_str(&format!(
        "result: {}\n",
        if outcome.passed {
            "all selected identities pass"
        } else {
            "FAILURES present"
        }
    ));
    out
}
