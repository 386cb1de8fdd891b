use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::characters::{check_hypothesis, HypothesisReport};
use super::dominance::{dominance_bound, DominanceCertificate};
use super::equation::{rat_pow, PolyExpEquation};
use super::expsum::{diagonalize, ExpSum};
use super::modular::{modular_certificate_search, ModularCertificate, DEFAULT_MMAX};
use super::partitions::{bell_numbers, DEFAULT_PARTITION_CAP};
use super::PolyExpError;
use crate::algebra::integer::{big_pow, binomial};
use crate::algebra::DEFAULT_FACTOR_BUDGET;
use crate::{Domain, Int, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyExpOptions {
    /// Largest modulus tried for a modular certificate; 0 or 1 disables it.
    pub mmax: u64,
    /// Search window `[-b, b]` used when no dominance threshold is available.
    pub user_bound: Option<u64>,
    pub partition_cap: usize,
    pub factor_budget: u64,
    /// Degree `d` of the number field in the solution-count bound.
    pub field_degree: u64,
}

impl Default for PolyExpOptions {
    fn default() -> Self {
        PolyExpOptions {
            mmax: DEFAULT_MMAX,
            user_bound: None,
            partition_cap: DEFAULT_PARTITION_CAP,
            factor_budget: DEFAULT_FACTOR_BUDGET,
            field_degree: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ABConstants {
    #[serde(with = "crate::model::serde_num::int")]
    pub a: Int,
    #[serde(with = "crate::model::serde_num::int")]
    pub b: Int,
}

/// `A = sum_l binom(n + d_l, n)` with `d_l` the degree of `P_l` in the
/// exponent variables, and `B = max(n, A)`.
pub fn compute_constants(eq: &PolyExpEquation) -> ABConstants {
    let n = eq.n() as u64;
    let idx: Vec<usize> = (0..eq.n()).collect();
    let a: Int = eq
        .terms()
        .iter()
        .map(|t| binomial(n + t.poly.degree_in(&idx).max(0) as u64, n))
        .sum();
    let b = a.clone().max(Int::from(n));
    ABConstants { a, b }
}

/// `Bell(m) * 2^(35 B^3) * d^(6 B^2)`, kept in factored form. The exact
/// value is included when it has at most [`SolutionBound::EXACT_BITS`] bits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionBound {
    #[serde(with = "crate::model::serde_num::int")]
    pub bell: Int,
    #[serde(with = "crate::model::serde_num::int")]
    pub b: Int,
    pub d: u64,
    pub formula: String,
    pub exact: Option<String>,
}

impl SolutionBound {
    pub const EXACT_BITS: u64 = 1 << 16;

    pub fn new(m: usize, b: &Int, d: u64) -> SolutionBound {
        let bell = bell_numbers(m)[m].clone();
        let e2: Int = Int::from(35) * b * b * b;
        let ed: Int = Int::from(6) * b * b;
        let formula = format!("{bell} * 2^{e2} * {d}^{ed}");
        let d_bits = 64 - d.leading_zeros() as u64;
        let exact = match (e2.to_u64(), ed.to_u64()) {
            (Some(x), Some(y)) if x.saturating_add(y.saturating_mul(d_bits)) <= Self::EXACT_BITS => {
                Some((&bell * big_pow(&Int::from(2), x) * big_pow(&Int::from(d), y)).to_string())
            }
            _ => None,
        };
        SolutionBound {
            bell,
            b: b.clone(),
            d,
            formula,
            exact,
        }
    }

    pub fn value(&self) -> Option<Int> {
        self.exact.as_ref().map(|s| s.parse().expect("decimal"))
    }
}

pub fn solution_count_bound(eq: &PolyExpEquation, d: u64) -> SolutionBound {
    SolutionBound::new(eq.m(), &compute_constants(eq).b, d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum ConstantSolution {
    Found {
        /// Least `|s|`, nonnegative first on ties.
        #[serde(with = "crate::model::serde_num::int")]
        least: Int,
        /// Every zero in `[window_from, window_to]`.
        #[serde(with = "crate::model::serde_num::int_vec")]
        solutions: Vec<Int>,
        #[serde(with = "crate::model::serde_num::int")]
        window_from: Int,
        #[serde(with = "crate::model::serde_num::int")]
        window_to: Int,
        /// `g` vanishes identically.
        all_integers: bool,
        /// Parities `q` with `g(s) = 0` for every `s = q (mod 2)`.
        all_of_parity: Vec<u8>,
    },
    None {
        dominance: DominanceCertificate,
        modular: Option<ModularCertificate>,
    },
    Unknown {
        reason: String,
    },
}

impl ConstantSolution {
    /// Least witness lying in `domain`, if any is known.
    pub fn witness_in(&self, domain: Domain) -> Option<Int> {
        let ConstantSolution::Found {
            least,
            solutions,
            all_integers,
            all_of_parity,
            ..
        } = self
        else {
            return None;
        };
        match domain {
            Domain::Integers => Some(least.clone()),
            Domain::Naturals => {
                let mut cands: Vec<Int> = solutions.iter().filter(|s| s.is_positive()).cloned().collect();
                if *all_integers {
                    cands.push(Int::from(1));
                }
                cands.extend(all_of_parity.iter().map(|&q| Int::from(if q == 0 { 2 } else { 1 })));
                cands.into_iter().min()
            }
        }
    }
}

fn least_abs(cands: impl IntoIterator<Item = Int>) -> Option<Int> {
    cands.into_iter().min_by(|a, b| {
        a.abs()
            .cmp(&b.abs())
            .then_with(|| a.is_negative().cmp(&b.is_negative()))
    })
}

fn scan(eval: impl Fn(&Int) -> Rat, from: &Int, to: &Int) -> Vec<Int> {
    let mut out = Vec::new();
    let mut s = from.clone();
    while &s <= to {
        if eval(&s).is_zero() {
            out.push(s.clone());
        }
        s += 1;
    }
    out
}

/// Zeros of `g` over the integers: exhaustive exact evaluation on the
/// dominance window, or a proof that there are none.
pub fn decide_constant_solution(
    g: &ExpSum,
    opts: &PolyExpOptions,
) -> Result<ConstantSolution, PolyExpError> {
    if g.is_zero() {
        return Ok(ConstantSolution::Found {
            least: Int::zero(),
            solutions: vec![Int::zero()],
            window_from: Int::zero(),
            window_to: Int::zero(),
            all_integers: true,
            all_of_parity: vec![0, 1],
        });
    }
    let dominance = match dominance_bound(g) {
        Ok(d) => d,
        Err(PolyExpError::ThresholdTooLarge(limit)) => {
            return Ok(match opts.user_bound {
                Some(b) => window_only(|s| g.eval(s), b, format!(
                    "no dominance threshold below {limit}"
                )),
                None => ConstantSolution::Unknown {
                    reason: format!(
                        "no dominance threshold below {limit}; pass a search bound to scan a window"
                    ),
                },
            });
        }
        Err(e) => return Err(e),
    };
    let from = -dominance.s_minus().clone();
    let to = dominance.s_plus().clone();
    let solutions = scan(|s| g.eval(s), &from, &to);
    let all_of_parity = dominance.vanishing_parities();
    let reps = all_of_parity.iter().map(|&q| Int::from(q));
    if let Some(least) = least_abs(solutions.iter().cloned().chain(reps)) {
        return Ok(ConstantSolution::Found {
            least,
            solutions,
            window_from: from,
            window_to: to,
            all_integers: false,
            all_of_parity,
        });
    }
    if let Err(e) = dominance.verify(g) {
        return Ok(ConstantSolution::Unknown {
            reason: format!("dominance certificate failed to re-verify: {e}"),
        });
    }
    let modular = modular_certificate_search(g, opts.mmax).filter(|c| c.verify(g).is_ok());
    Ok(ConstantSolution::None { dominance, modular })
}

fn window_only(eval: impl Fn(&Int) -> Rat, bound: u64, why: String) -> ConstantSolution {
    let from = -Int::from(bound);
    let to = Int::from(bound);
    let solutions = scan(eval, &from, &to);
    match least_abs(solutions.iter().cloned()) {
        Some(least) => ConstantSolution::Found {
            least,
            solutions,
            window_from: from,
            window_to: to,
            all_integers: false,
            all_of_parity: vec![],
        },
        None => ConstantSolution::Unknown {
            reason: format!("{why}; no zero in [-{bound}, {bound}]"),
        },
    }
}

/// `a^s * coeff(s)` with an arbitrary integer function as coefficient.
pub struct OpaqueTerm {
    pub base: Int,
    pub coeff: Box<dyn Fn(&Int) -> Rat>,
}

/// Window scan for sums whose coefficient functions are not polynomials.
/// Nothing is claimed outside `[-bound, bound]`.
pub fn decide_opaque_constant_solution(terms: &[OpaqueTerm], bound: u64) -> ConstantSolution {
    let eval = |s: &Int| -> Rat {
        terms
            .iter()
            .map(|t| rat_pow(&t.base, s) * (t.coeff)(s))
            .sum()
    };
    window_only(eval, bound, "coefficients are not polynomials".to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PolyExpStatus {
    #[serde(rename = "PR_CONSTANT")]
    PrConstant,
    #[serde(rename = "NOT_PR")]
    NotPr,
    #[serde(rename = "UNKNOWN")]
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyExpVerdict {
    pub status: PolyExpStatus,
    #[serde(with = "crate::model::serde_num::opt_int")]
    pub witness: Option<Int>,
    pub hypothesis: Option<HypothesisReport>,
    pub constants: ABConstants,
    pub bound: SolutionBound,
    /// The diagonal sum `g(s)`.
    pub diagonal: String,
    pub solution: ConstantSolution,
    pub notes: Vec<String>,
}

/// Partition regularity of a polynomial-exponential equation.
pub fn decide_polyexp_pr(
    eq: &PolyExpEquation,
    domain: Domain,
    opts: &PolyExpOptions,
) -> Result<PolyExpVerdict, PolyExpError> {
    let mut notes = Vec::new();
    let hypothesis = if eq.m() > opts.partition_cap {
        notes.push(
            PolyExpError::PartitionCap {
                m: eq.m(),
                cap: opts.partition_cap,
            }
            .to_string(),
        );
        None
    } else {
        match check_hypothesis(&eq.characters(), opts.factor_budget) {
            Ok(h) => Some(h),
            Err(e @ PolyExpError::Algebra(_)) => {
                notes.push(format!("character check skipped: {e}"));
                None
            }
            Err(e) => return Err(e),
        }
    };
    if let Some(h) = &hypothesis {
        if !h.holds {
            let (i, j) = h.failing_pair.expect("failing pair");
            notes.push(format!(
                "terms {i} and {j} have a nontrivial character group; the constant-solution \
                 criterion does not apply"
            ));
        }
    }
    if eq.terms().iter().all(|t| !t.poly.is_constant()) {
        notes.push(
            "solutions where every coefficient polynomial vanishes are not analysed".to_string(),
        );
    }
    let constants = compute_constants(eq);
    let bound = SolutionBound::new(eq.m(), &constants.b, opts.field_degree);
    let g = diagonalize(eq);
    let solution = decide_constant_solution(&g, opts)?;
    let witness = solution.witness_in(domain);
    let holds = hypothesis.as_ref().is_some_and(|h| h.holds);
    let status = match (&solution, &witness) {
        (_, Some(_)) => PolyExpStatus::PrConstant,
        (ConstantSolution::Found { .. }, None) => {
            notes.push("every constant solution is outside the naturals".to_string());
            PolyExpStatus::Unknown
        }
        (ConstantSolution::None { .. }, None) if holds => PolyExpStatus::NotPr,
        _ => PolyExpStatus::Unknown,
    };
    Ok(PolyExpVerdict {
        status,
        witness,
        hypothesis,
        constants,
        bound,
        diagonal: g.to_string(),
        solution,
        notes,
    })
}
