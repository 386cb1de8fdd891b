//! One entry point from a classified system to a verdict, and the
//! serializable [`Report`] shared by the library and the command line.
//!
//! Every certificate placed in a report is re-verified against the input
//! before the report is returned; a certificate that fails is dropped and
//! the status falls back to `UNKNOWN`.

use std::time::Instant;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{MultiPoly, UniPoly};
use crate::model::{EquationClass, GeneralSystem, LinearSystem, TwoVarSystem};
use crate::polyexp::{
    decide_polyexp_pr, diagonalize, ABConstants, ConstantSolution, DominanceCertificate,
    HypothesisReport, ModularCertificate, PolyExpEquation, PolyExpError, PolyExpOptions,
    PolyExpStatus, SolutionBound,
};
use crate::rado::{decide_linear, ConstantWitness, LinearStatus, OrderedPartition, RadoError, DEFAULT_COLUMN_CAP};
use crate::ramsey::{
    enumerate_solutions, filter_injectivity, verify_coloring, RamseyError, SearchOutcome,
    DEFAULT_ENUM_BUDGET,
};
use crate::sunit::{decide_sunit_3var, subgroup_rank, GroupSpec, SUnitError, SUnitStatus, SUnitVerdict};
use crate::twovar::{decide_infinitely_pr, decide_twovar, TwoVarError, TwoVarStatus, Witnesses};
use crate::{Domain, Int, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PR")]
    Pr,
    #[serde(rename = "PR_CONSTANT")]
    PrConstant,
    #[serde(rename = "NOT_PR")]
    NotPr,
    #[serde(rename = "UNKNOWN")]
    Unknown,
}

impl Status {
    /// 0 for a decided verdict, 2 for `UNKNOWN`.
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Unknown => 2,
            _ => 0,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pr => "PR",
            Status::PrConstant => "PR_CONSTANT",
            Status::NotPr => "NOT_PR",
            Status::Unknown => "UNKNOWN",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `(a, .., a)` solves every equation.
    ConstantSolution {
        #[serde(with = "crate::model::serde_num::int")]
        value: Int,
    },
    /// Every constant tuple is a solution.
    AllConstants,
    /// Ordered column partition satisfying the columns condition, with the
    /// integer constant solution that accompanies it.
    ColumnsPartition {
        partition: OrderedPartition,
        integer_constant: ConstantWitness,
    },
    Dominance(DominanceCertificate),
    Modular(ModularCertificate),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyExpDetails {
    pub diagonal: String,
    pub constants: ABConstants,
    pub solution_bound: SolutionBound,
    pub solution: ConstantSolution,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SUnitDetails {
    pub group: GroupSpec,
    pub verdict: SUnitVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub status: Status,
    pub class: String,
    pub domain: Domain,
    pub vars: Vec<String>,
    pub equation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Witnesses>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub infinitely_pr: Option<bool>,
    pub certificates: Vec<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypothesis: Option<HypothesisReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polyexp: Option<PolyExpDetails>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sunit: Option<SUnitDetails>,
    pub notes: Vec<String>,
    pub timing_us: u64,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Least witness, if the report lists any.
    pub fn witness(&self) -> Option<Int> {
        self.witnesses.as_ref().and_then(|w| w.least(self.domain))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error(transparent)]
    Rado(#[from] RadoError),
    #[error(transparent)]
    TwoVar(#[from] TwoVarError),
    #[error(transparent)]
    PolyExp(#[from] PolyExpError),
    #[error(transparent)]
    SUnit(#[from] SUnitError),
    #[error(transparent)]
    Ramsey(#[from] RamseyError),
    #[error("{0}")]
    Unsupported(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    /// `None` picks the class default: the naturals, except the integers
    /// for polynomial-exponential equations.
    pub domain: Option<Domain>,
    pub column_cap: usize,
    pub polyexp: PolyExpOptions,
    /// Generators of a subgroup of `Q^x`; the variables of a homogeneous
    /// three-variable linear equation then range over that subgroup.
    pub group: Option<Vec<Rat>>,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            domain: None,
            column_cap: DEFAULT_COLUMN_CAP,
            polyexp: PolyExpOptions::default(),
            group: None,
        }
    }
}

pub fn default_domain(class: &EquationClass) -> Domain {
    match class {
        EquationClass::PolyExp(_) => Domain::Integers,
        _ => Domain::Naturals,
    }
}

/// Human-readable form of a classified system.
pub fn describe_class(class: &EquationClass) -> String {
    let polys = |ps: &[MultiPoly]| {
        ps.iter()
            .map(|p| format!("{p} = 0"))
            .collect::<Vec<_>>()
            .join(" ; ")
    };
    match class {
        EquationClass::Linear(s) => polys(&(0..s.a.rows()).map(|i| s.row_poly(i)).collect::<Vec<_>>()),
        EquationClass::TwoVar(s) => polys(&s.polys),
        EquationClass::General(s) => polys(&s.polys),
        EquationClass::PolyExp(e) => {
            let terms: Vec<String> = e
                .terms()
                .iter()
                .map(|t| {
                    let mut s = format!("({})", t.poly);
                    if t.f.is_some() {
                        s.push_str(&format!("*f({})", e.parameter().unwrap_or("y")));
                    }
                    for (v, a) in e.exponent_vars().iter().zip(&t.character) {
                        if !a.is_one() {
                            s.push_str(&format!("*{a}^{v}"));
                        }
                    }
                    s
                })
                .collect();
            format!("{} = 0", terms.join(" + "))
        }
    }
}

fn new_report(class: &EquationClass, domain: Domain, equation: Option<&str>) -> Report {
    Report {
        status: Status::Unknown,
        class: class.name().to_string(),
        domain,
        vars: class.vars(),
        equation: equation.map_or_else(|| describe_class(class), str::to_string),
        witnesses: None,
        infinitely_pr: None,
        certificates: vec![],
        hypothesis: None,
        polyexp: None,
        sunit: None,
        notes: vec![],
        timing_us: 0,
    }
}

/// Decides a classified system and returns a report with verified
/// certificates. `equation` is the text shown in the report.
pub fn decide(
    class: &EquationClass,
    opts: &DecideOptions,
    equation: Option<&str>,
) -> Result<Report, DecideError> {
    let start = Instant::now();
    let domain = opts.domain.unwrap_or_else(|| default_domain(class));
    let mut report = new_report(class, domain, equation);
    match (class, &opts.group) {
        (EquationClass::Linear(s), Some(gens)) => decide_sunit_class(s, gens, &mut report)?,
        (_, Some(_)) => {
            return Err(DecideError::Unsupported(
                "a subgroup applies only to homogeneous linear equations in three variables".into(),
            ))
        }
        (EquationClass::Linear(s), None) => decide_linear_class(s, opts, &mut report)?,
        (EquationClass::TwoVar(s), None) => decide_twovar_class(s, &mut report)?,
        (EquationClass::General(s), None) => decide_general_class(s, &mut report),
        (EquationClass::PolyExp(e), None) => decide_polyexp_class(e, opts, &mut report)?,
    }
    recheck(class, &mut report);
    report.timing_us = start.elapsed().as_micros() as u64;
    Ok(report)
}

fn witnesses_from(w: &ConstantWitness) -> Witnesses {
    match w {
        ConstantWitness::All => Witnesses::All,
        ConstantWitness::Unique(a) => Witnesses::Finite(vec![a.clone()]),
    }
}

fn constant_certificate(w: &Witnesses, domain: Domain) -> Certificate {
    match w {
        Witnesses::All => Certificate::AllConstants,
        Witnesses::Finite(_) => Certificate::ConstantSolution {
            value: w.least(domain).expect("nonempty witnesses"),
        },
    }
}

fn decide_linear_class(s: &LinearSystem, opts: &DecideOptions, r: &mut Report) -> Result<(), DecideError> {
    let v = decide_linear(&s.a, &s.b, r.domain, opts.column_cap)?;
    r.notes.extend(v.notes.iter().cloned());
    match v.status {
        LinearStatus::PrConstant => {
            let w = witnesses_from(v.witness.as_ref().expect("constant verdict has a witness"));
            r.certificates.push(constant_certificate(&w, r.domain));
            r.witnesses = Some(w);
            r.status = Status::PrConstant;
        }
        LinearStatus::PrColumns => {
            r.certificates.push(Certificate::ColumnsPartition {
                partition: v.partition.expect("columns verdict has a partition"),
                integer_constant: v.witness.expect("columns verdict has an integer constant"),
            });
            r.status = Status::Pr;
        }
        LinearStatus::NotPr => r.status = Status::NotPr,
    }
    if s.vars.len() <= 2 {
        let polys: Vec<MultiPoly> = (0..s.a.rows())
            .map(|i| s.row_poly(i))
            .filter(|p| !p.is_zero())
            .collect();
        let sys = TwoVarSystem {
            vars: s.vars.clone(),
            polys,
        };
        r.infinitely_pr = decide_infinitely_pr(&sys).ok();
    }
    Ok(())
}

fn decide_twovar_class(s: &TwoVarSystem, r: &mut Report) -> Result<(), DecideError> {
    let v = decide_twovar(s, r.domain)?;
    r.infinitely_pr = Some(v.infinitely_pr);
    match v.status {
        TwoVarStatus::PrConstant => {
            r.certificates.push(constant_certificate(&v.witnesses, r.domain));
            r.status = Status::PrConstant;
        }
        TwoVarStatus::NotPr => {
            let diags: Vec<String> = s.polys.iter().map(|p| format!("{}", p.diagonal())).collect();
            r.notes.push(format!(
                "no common root of the diagonals {} in {}",
                diags.join(", "),
                r.domain
            ));
            r.status = Status::NotPr;
        }
    }
    r.witnesses = Some(v.witnesses);
    Ok(())
}

fn decide_general_class(s: &GeneralSystem, r: &mut Report) {
    if let Some(p) = s.polys.iter().find(|p| p.is_constant()) {
        r.notes.push(format!("the equation {p} = 0 has no solutions"));
        r.status = Status::NotPr;
        return;
    }
    let diags: Vec<UniPoly> = s.polys.iter().map(MultiPoly::diagonal).collect();
    let witnesses = match diags.iter().find(|d| !d.is_zero()) {
        None => Some(Witnesses::All),
        Some(first) => match first.integer_roots() {
            Ok(roots) => Some(Witnesses::Finite(
                roots
                    .into_iter()
                    .filter(|a| r.domain.contains(a))
                    .filter(|a| diags.iter().all(|d| d.eval_int(a).is_zero()))
                    .collect(),
            )),
            Err(e) => {
                r.notes.push(format!("root search failed: {e}"));
                None
            }
        },
    };
    match witnesses {
        Some(w) if !w.is_empty() => {
            r.certificates.push(constant_certificate(&w, r.domain));
            r.witnesses = Some(w);
            r.status = Status::PrConstant;
        }
        Some(w) => {
            r.witnesses = Some(w);
            r.notes.push(
                "no constant solution; partition regularity of this class is not decided without one"
                    .into(),
            );
        }
        None => {}
    }
}

fn decide_polyexp_class(e: &PolyExpEquation, opts: &DecideOptions, r: &mut Report) -> Result<(), DecideError> {
    let v = decide_polyexp_pr(e, r.domain, &opts.polyexp)?;
    r.notes.extend(v.notes.iter().cloned());
    r.hypothesis = v.hypothesis.clone();
    r.status = match v.status {
        PolyExpStatus::PrConstant => Status::PrConstant,
        PolyExpStatus::NotPr => Status::NotPr,
        PolyExpStatus::Unknown => Status::Unknown,
    };
    match &v.solution {
        ConstantSolution::Found { all_integers: true, .. } => {
            r.certificates.push(Certificate::AllConstants);
            r.witnesses = Some(Witnesses::All);
        }
        ConstantSolution::Found { .. } => {
            if let Some(w) = &v.witness {
                r.certificates.push(Certificate::ConstantSolution { value: w.clone() });
                r.witnesses = Some(Witnesses::Finite(vec![w.clone()]));
            }
        }
        ConstantSolution::None { dominance, modular } => {
            r.certificates.push(Certificate::Dominance(dominance.clone()));
            if let Some(m) = modular {
                r.certificates.push(Certificate::Modular(m.clone()));
            }
        }
        ConstantSolution::Unknown { reason } => r.notes.push(reason.clone()),
    }
    r.polyexp = Some(PolyExpDetails {
        diagonal: v.diagonal,
        constants: v.constants,
        solution_bound: v.bound,
        solution: v.solution,
    });
    Ok(())
}

fn decide_sunit_class(s: &LinearSystem, gens: &[Rat], r: &mut Report) -> Result<(), DecideError> {
    if s.a.rows() != 1 || s.vars.len() != 3 || !s.is_homogeneous() {
        return Err(DecideError::Unsupported(
            "a subgroup applies only to homogeneous linear equations in three variables".into(),
        ));
    }
    let group = subgroup_rank(gens, crate::algebra::DEFAULT_FACTOR_BUDGET)?;
    let row = s.a.row(0);
    let v = decide_sunit_3var(&row[0], &row[1], &row[2], &group)?;
    r.class = "sunit".into();
    r.status = match v.status {
        SUnitStatus::PrConstant => {
            r.certificates.push(Certificate::AllConstants);
            r.witnesses = Some(Witnesses::All);
            Status::PrConstant
        }
        SUnitStatus::NotPr => {
            r.notes.push(format!(
                "coefficients sum to {}; a subgroup of rank {} has at most {} nonconstant projective solutions",
                v.sum, group.rank, v.bound
            ));
            Status::NotPr
        }
    };
    r.sunit = Some(SUnitDetails { group, verdict: v });
    Ok(())
}

fn constant_point(class: &EquationClass, a: &Int) -> Vec<Int> {
    vec![a.clone(); class.vars().len()]
}

/// Checks a certificate against the system it claims to be about.
pub fn verify_certificate(class: &EquationClass, cert: &Certificate) -> Result<(), String> {
    match cert {
        Certificate::ConstantSolution { value } => {
            if crate::ramsey::is_solution(class, &constant_point(class, value)) {
                Ok(())
            } else {
                Err(format!("{value} is not a constant solution"))
            }
        }
        Certificate::AllConstants => {
            let ok = match class {
                EquationClass::Linear(s) => (0..s.a.rows()).all(|i| s.row_poly(i).diagonal().is_zero()),
                EquationClass::TwoVar(s) => s.polys.iter().all(|p| p.diagonal().is_zero()),
                EquationClass::General(s) => s.polys.iter().all(|p| p.diagonal().is_zero()),
                EquationClass::PolyExp(e) => diagonalize(e).is_zero(),
            };
            if ok {
                Ok(())
            } else {
                Err("some constant tuple is not a solution".into())
            }
        }
        Certificate::ColumnsPartition {
            partition,
            integer_constant,
        } => {
            let EquationClass::Linear(s) = class else {
                return Err("columns partition for a nonlinear system".into());
            };
            partition.verify(&s.a)?;
            let w = match integer_constant {
                ConstantWitness::All => Int::zero(),
                ConstantWitness::Unique(w) => w.clone(),
            };
            if crate::rado::constant_residual(&s.a, &s.b, &w).iter().all(Zero::is_zero) {
                Ok(())
            } else {
                Err(format!("{w} is not an integer constant solution"))
            }
        }
        Certificate::Dominance(d) => match class {
            EquationClass::PolyExp(e) => d.verify(&diagonalize(e)),
            _ => Err("dominance certificate for a non-exponential equation".into()),
        },
        Certificate::Modular(m) => match class {
            EquationClass::PolyExp(e) => m.verify(&diagonalize(e)),
            _ => Err("modular certificate for a non-exponential equation".into()),
        },
    }
}

fn recheck(class: &EquationClass, r: &mut Report) {
    if r.sunit.is_some() {
        // The subgroup verdict is checked by the group spec itself.
        if let Some(s) = &r.sunit {
            if let Err(e) = s.group.verify() {
                r.notes.push(format!("group spec failed to re-verify: {e}"));
                r.status = Status::Unknown;
            }
        }
        return;
    }
    let mut kept = Vec::new();
    for c in std::mem::take(&mut r.certificates) {
        match verify_certificate(class, &c) {
            Ok(()) => kept.push(c),
            Err(e) => {
                r.notes.push(format!("dropped a certificate that failed to re-verify: {e}"));
                r.status = Status::Unknown;
            }
        }
    }
    r.certificates = kept;
}

/// Result of a coloring search over `[1..n]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub class: String,
    pub equation: String,
    pub vars: Vec<String>,
    pub n: u64,
    pub colors: u32,
    /// Solutions with fewer distinct values are ignored.
    pub min_injectivity: usize,
    pub solutions: usize,
    pub outcome: SearchOutcome,
    pub notes: Vec<String>,
    pub timing_us: u64,
}

impl SearchReport {
    pub fn exit_code(&self) -> i32 {
        match self.outcome {
            SearchOutcome::Unknown { .. } => 2,
            _ => 0,
        }
    }
}

/// Enumerates solutions in `[1..n]`, drops those with fewer than
/// `min_injectivity` distinct values and searches for an avoiding coloring.
pub fn run_search(
    class: &EquationClass,
    n: u64,
    colors: u32,
    min_injectivity: usize,
    budget: u64,
    equation: Option<&str>,
) -> Result<SearchReport, DecideError> {
    let start = Instant::now();
    let all = enumerate_solutions(class, n, DEFAULT_ENUM_BUDGET)?;
    let sols = if min_injectivity > 1 {
        filter_injectivity(&all, min_injectivity)?
    } else {
        all
    };
    let outcome = crate::ramsey::search_avoiding_coloring(&sols, colors, budget)?;
    let mut notes = vec![if min_injectivity > 1 {
        format!("solutions with fewer than {min_injectivity} distinct values are ignored")
    } else {
        "constant solutions are included".to_string()
    }];
    if let SearchOutcome::Avoiding { coloring, .. } = &outcome {
        let check = verify_coloring(coloring, &sols)?;
        if !check.avoids {
            return Err(DecideError::Unsupported(
                "search returned a coloring with a monochromatic solution".into(),
            ));
        }
        notes.push("an avoiding coloring is finite evidence only".into());
    }
    Ok(SearchReport {
        class: class.name().to_string(),
        equation: equation.map_or_else(|| describe_class(class), str::to_string),
        vars: sols.vars.clone(),
        n,
        colors,
        min_injectivity,
        solutions: sols.len(),
        outcome,
        notes,
        timing_us: start.elapsed().as_micros() as u64,
    })
}
