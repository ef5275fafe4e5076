//! Runs the checks on a parsed `.alg` spec and assembles the report.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{Algebra, Element};
use crate::bstar::{check_bstar, represent, trace_form};
use crate::check::{derived_rng, Verdict};
use crate::error::{Error, Result};
use crate::ideal::{is_annihilator_algebra, is_dual, IdealReport};
use crate::idempotent::{matrix_degree, peirce, structure, StructureReport};
use crate::radical::{core_radical, radical, verify_radical};
use crate::spec::AlgebraSpec;
use crate::star::check_involution;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Every check, in execution order.
pub const CHECKS: [&str; 11] = [
    "radical",
    "core-radical",
    "idempotents",
    "peirce",
    "matrix-units",
    "structure",
    "annihilator",
    "dual",
    "star",
    "bstar",
    "represent",
];

#[derive(Clone, Debug)]
pub struct Options {
    pub checks: Vec<String>,
    pub seed: u64,
    pub precision: u32,
    pub budget: usize,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            checks: CHECKS.iter().map(|s| s.to_string()).collect(),
            seed: 0,
            precision: crate::field::DEFAULT_PRECISION,
            budget: 200,
        }
    }
}

/// A coordinate vector with the valuation of each entry (`null` for zero).
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub label: String,
    pub coords: Vec<String>,
    pub valuations: Vec<Option<String>>,
}

impl Witness {
    pub fn of(label: impl Into<String>, x: &Element) -> Witness {
        Witness {
            label: label.into(),
            coords: x.coords().iter().map(ToString::to_string).collect(),
            valuations: x
                .coords()
                .iter()
                .map(|c| c.valuation().map(|v| v.to_string()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub verdict: Verdict,
    pub details: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    precision_exhausted: bool,
}

impl CheckResult {
    fn new(name: &str, verdict: Verdict, details: Value) -> CheckResult {
        CheckResult {
            name: name.into(),
            verdict,
            details,
            witnesses: vec![],
            error: None,
            precision_exhausted: false,
        }
    }

    fn from_error(name: &str, e: &Error) -> CheckResult {
        let verdict = match e {
            Error::NotSemisimple(_)
            | Error::NoUnit
            | Error::NoInvolution
            | Error::NoRealization
            | Error::NotTransposeClosed
            | Error::NotBstar(_) => Verdict::NotApplicable,
            Error::PrecisionExhausted(_) => Verdict::Inconclusive,
            _ => Verdict::Fail,
        };
        let mut r = CheckResult::new(name, verdict, Value::Null);
        r.error = Some(e.to_string());
        r.precision_exhausted = matches!(e, Error::PrecisionExhausted(_));
        if let Error::NotQuasiInvertible { witness } | Error::NonInvertibleWitness { witness } = e {
            r.witnesses.push(Witness {
                label: "witness".into(),
                coords: witness.clone(),
                valuations: vec![],
            });
        }
        r
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub radical_dim: Option<usize>,
    pub block_dims: Option<Vec<usize>>,
    pub idempotent_count: Option<usize>,
    pub corner_types: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub tool_version: String,
    pub algebra: String,
    pub prime: u32,
    pub dim: usize,
    pub precision: u32,
    pub seed: u64,
    /// Basis shift `e_i -> p^rescale e_i` applied for integrality.
    pub rescale: i64,
    pub basis: Vec<String>,
    pub summary: Summary,
    pub checks: Vec<CheckResult>,
    pub verdict: Verdict,
}

impl AnalysisReport {
    /// 0 all pass, 1 a violation, 3 precision exhausted, 4 inconclusive only.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.precision_exhausted) {
            3
        } else {
            match self.verdict {
                Verdict::Fail => 1,
                Verdict::Inconclusive => 4,
                Verdict::Pass | Verdict::NotApplicable => 0,
            }
        }
    }

    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("reports serialise");
        let mut s = String::new();
        crate::spec::write_compact(&v, 0, &mut s);
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} over Q_{} (dim {}, precision {}, seed {})",
            self.algebra, self.prime, self.dim, self.precision, self.seed
        );
        if self.rescale != 0 {
            let _ = writeln!(out, "basis rescaled by p^{}", self.rescale);
        }
        let s = &self.summary;
        if let Some(r) = s.radical_dim {
            let _ = writeln!(out, "radical dimension: {r}");
        }
        if let Some(b) = &s.block_dims {
            let _ = writeln!(out, "block dimensions: {b:?}");
        }
        if let Some(n) = s.idempotent_count {
            let _ = writeln!(out, "irreducible idempotents: {n}");
        }
        if let Some(c) = &s.corner_types {
            let _ = writeln!(out, "corners: {}", c.join(", "));
        }
        for c in &self.checks {
            let _ = write!(out, "{:<14}{}", c.name, c.verdict);
            if let Some(e) = &c.error {
                let _ = write!(out, "  ({e})");
            }
            out.push('\n');
            for w in &c.witnesses {
                let _ = writeln!(out, "  {}: ({})", w.label, w.coords.join(", "));
            }
        }
        let _ = writeln!(out, "verdict: {}", self.verdict);
        out
    }
}

fn space_strings(basis: &[crate::linalg::UltraVector]) -> Vec<Vec<String>> {
    basis
        .iter()
        .map(|v| v.iter().map(ToString::to_string).collect())
        .collect()
}

fn ideal_check(name: &str, r: IdealReport) -> CheckResult {
    let mut c = CheckResult::new(
        name,
        r.verdict,
        json!({
            "left_annihilator_dim": r.left_annihilator_dim,
            "right_annihilator_dim": r.right_annihilator_dim,
            "ideals_checked": r.ideals_checked,
            "failures": r.failures,
        }),
    );
    if let Some(f) = r.failures.first() {
        for (k, v) in f.ideal.iter().enumerate() {
            c.witnesses.push(Witness {
                label: format!("ideal basis {}", k + 1),
                coords: v.clone(),
                valuations: vec![],
            });
        }
    }
    c
}

fn corner_type(dim: usize, commutative: bool) -> String {
    match (dim, commutative) {
        (1, _) => "base field".into(),
        (d, true) => format!("field of degree {d}"),
        (d, false) => format!("division algebra of dimension {d}"),
    }
}

struct Runner<'a> {
    a: &'a Algebra,
    opts: &'a Options,
    structure: Option<Result<StructureReport>>,
}

impl Runner<'_> {
    fn structure(&mut self) -> Result<&StructureReport> {
        if self.structure.is_none() {
            let mut rng = derived_rng(self.opts.seed, "structure");
            self.structure = Some(structure(self.a, &mut rng));
        }
        self.structure
            .as_ref()
            .expect("just set")
            .as_ref()
            .map_err(Clone::clone)
    }

    fn run(&mut self, name: &str, summary: &mut Summary) -> CheckResult {
        match self.run_inner(name, summary) {
            Ok(c) => c,
            Err(e) => CheckResult::from_error(name, &e),
        }
    }

    fn run_inner(&mut self, name: &str, summary: &mut Summary) -> Result<CheckResult> {
        let a = self.a;
        let budget = self.opts.budget;
        let mut rng = derived_rng(self.opts.seed, name);
        Ok(match name {
            "radical" => {
                let r = radical(a)?;
                summary.radical_dim = Some(r.dim());
                let verdict = verify_radical(a, &r, budget.min(50), &mut rng);
                CheckResult::new(
                    name,
                    verdict,
                    json!({
                        "dim": r.dim(),
                        "quotient_dim": r.quotient_dim,
                        "basis": space_strings(r.ideal.space.basis()),
                    }),
                )
            }
            "core-radical" => {
                let r = core_radical(a)?;
                CheckResult::new(
                    name,
                    if r.agree {
                        Verdict::Pass
                    } else {
                        Verdict::Fail
                    },
                    json!({
                        "dim": r.dim(),
                        "agree": r.agree,
                        "per_field": r.per_field,
                    }),
                )
            }
            "idempotents" => {
                let s = self.structure()?;
                let count: usize = s.details.iter().map(|d| d.family.len()).sum();
                let certified: usize = s
                    .details
                    .iter()
                    .map(|d| d.family.certified.iter().filter(|&&c| c).count())
                    .sum();
                let ok = s
                    .details
                    .iter()
                    .all(|d| d.family.maximal && d.family.is_orthogonal(a));
                summary.idempotent_count = Some(count);
                let mut c = CheckResult::new(
                    name,
                    if ok { Verdict::Pass } else { Verdict::Fail },
                    json!({ "count": count, "certified": certified }),
                );
                for (k, w) in s.details.iter().flat_map(|d| &d.family.members).enumerate() {
                    c.witnesses.push(Witness::of(format!("w{}", k + 1), w));
                }
                c
            }
            "peirce" => {
                let s = self.structure()?;
                let members: Vec<Element> = s
                    .details
                    .iter()
                    .flat_map(|d| d.family.members.clone())
                    .collect();
                let p = peirce(a, &members)?;
                let total = p.total_dim();
                CheckResult::new(
                    name,
                    if total == a.dim() {
                        Verdict::Pass
                    } else {
                        Verdict::Fail
                    },
                    json!({ "dims": p.dims(), "total": total }),
                )
            }
            "matrix-units" => {
                let s = self.structure()?;
                let mut c = CheckResult::new(name, Verdict::Pass, Value::Null);
                let mut sizes = Vec::new();
                for d in &s.details {
                    sizes.push(d.units.size());
                    if let Some((j, k, l, m)) = d.units.check(a) {
                        c.verdict = Verdict::Fail;
                        c.error = Some(format!(
                            "w_({},{}) w_({},{}) breaks the relations",
                            j + 1,
                            k + 1,
                            l + 1,
                            m + 1
                        ));
                    }
                }
                c.details = json!({ "sizes": sizes });
                c
            }
            "structure" => {
                let s = self.structure()?;
                let dims = s.block_dims();
                let corners: Vec<String> = s
                    .details
                    .iter()
                    .map(|d| corner_type(d.corner_dim, d.corner_commutative))
                    .collect();
                let degrees: Vec<Option<usize>> = s
                    .details
                    .iter()
                    .zip(&dims)
                    .map(|(d, &b)| matrix_degree(b, d.corner_dim))
                    .collect();
                let ok = dims.iter().sum::<usize>() == a.dim()
                    && degrees.iter().all(Option::is_some)
                    && s.blocks.iter().all(|b| b.simple_probe);
                summary.block_dims = Some(dims.clone());
                summary.corner_types = Some(corners.clone());
                CheckResult::new(
                    name,
                    if ok { Verdict::Pass } else { Verdict::Fail },
                    json!({ "block_dims": dims, "matrix_degrees": degrees, "corners": corners }),
                )
            }
            "annihilator" => ideal_check(name, is_annihilator_algebra(a, budget, &mut rng)?),
            "dual" => ideal_check(name, is_dual(a, budget, &mut rng)?),
            "star" => {
                let inv = a.involution().ok_or(Error::NoInvolution)?;
                let r = check_involution(a, inv);
                CheckResult::new(
                    name,
                    r.verdict,
                    serde_json::to_value(&r).expect("serialisable"),
                )
            }
            "bstar" => {
                let form = trace_form(a, None)?;
                let r = check_bstar(a, &form, budget, &mut rng)?;
                let mut c = CheckResult::new(
                    name,
                    r.verdict(),
                    json!({
                        "q": r.q,
                        "axioms": r.axioms,
                        "certified": r.positivity.certified,
                        "probes": r.positivity.probes,
                    }),
                );
                if let Some(x) = &r.positivity.element {
                    c.witnesses.push(Witness::of("x with x x* = 0", x));
                }
                c
            }
            "represent" => {
                let s = self.structure()?;
                let mut c = CheckResult::new(name, Verdict::Pass, Value::Null);
                let mut degrees = Vec::new();
                for (b, d) in s.blocks.iter().zip(&s.details) {
                    let rep = represent(a, &d.units)?;
                    degrees.push((rep.degree(), rep.corner_dim()));
                    for _ in 0..budget.min(20) {
                        let x = a.mul(&b.central_idempotent, &a.random_integral(&mut rng));
                        let y = a.mul(&b.central_idempotent, &a.random_integral(&mut rng));
                        let lhs = rep.matrix(a, &a.mul(&x, &y))?;
                        let rhs = rep.matrix(a, &x)?.mul(&rep.matrix(a, &y)?);
                        if lhs != rhs {
                            c.verdict = Verdict::Fail;
                            c.witnesses.push(Witness::of("x", &x));
                            c.witnesses.push(Witness::of("y", &y));
                            break;
                        }
                    }
                }
                c.details = json!({ "degree_and_corner_dim": degrees });
                c
            }
            other => return Err(Error::Validation(format!("unknown check {other:?}"))),
        })
    }
}

/// Runs the requested checks in the fixed order of [`CHECKS`].
pub fn run_analysis(spec: &AlgebraSpec, opts: &Options) -> Result<AnalysisReport> {
    for c in &opts.checks {
        if !CHECKS.contains(&c.as_str()) {
            return Err(Error::Validation(format!("unknown check {c:?}")));
        }
    }
    let a = spec.build(Some(opts.precision))?;
    let mut runner = Runner {
        a: &a,
        opts,
        structure: None,
    };
    let mut summary = Summary::default();
    let mut checks = Vec::new();
    for name in CHECKS {
        if opts.checks.iter().any(|c| c == name) {
            checks.push(runner.run(name, &mut summary));
        }
    }
    let verdict = checks
        .iter()
        .fold(Verdict::NotApplicable, |v, c| v.and(c.verdict));
    Ok(AnalysisReport {
        schema: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.into(),
        algebra: spec.name.clone(),
        prime: spec.prime,
        dim: spec.dim,
        precision: opts.precision,
        seed: opts.seed,
        rescale: a.rescale(),
        basis: (0..spec.dim).map(|i| spec.label(i)).collect(),
        summary,
        checks,
        verdict,
    })
}
