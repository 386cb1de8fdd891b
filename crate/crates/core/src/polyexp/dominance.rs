//! Thresholds beyond which one exponential term outweighs all others.
//!
//! `g(s)` is split by the parity of `s`: with `s = 2t + q`, the terms with
//! bases `a` and `-a` merge into one term with base `a^2`, so every part has
//! pairwise distinct positive bases. For `t >= 1` and `b_k` the largest base,
//! `|B_i(t)| <= C_i t^D`, and past the largest integer root of `B_k` its
//! value is a nonzero integer; so `b_k^t > C t^D b_{k-1}^t` forces `h(t) != 0`. The
//! ratio `b_k^t / (b_{k-1}^t t^D)` is increasing from `t0` on, which makes
//! the inequality persist. Negative `s` go through [`ExpSum::negated`].

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::expsum::ExpSum;
use super::PolyExpError;
use crate::algebra::integer::big_pow;
use crate::algebra::UniPoly;
use crate::{Int, Rat};

/// Largest threshold the doubling search will try.
const T_LIMIT: u64 = 1 << 17;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ParityBound {
    /// Every `s` of this parity is a zero.
    Vanishes { parity: u8 },
    /// One base: zeros at `t >= 0` are the integer roots of its polynomial.
    Single {
        parity: u8,
        #[serde(with = "crate::model::serde_num::int")]
        base: Int,
        #[serde(with = "crate::model::serde_num::int_vec")]
        roots: Vec<Int>,
    },
    /// `b_k^t > C t^D b_{k-1}^t` for every `t >= t_dominant`.
    Dominant {
        parity: u8,
        #[serde(with = "crate::model::serde_num::int")]
        dominant_base: Int,
        #[serde(with = "crate::model::serde_num::int")]
        next_base: Int,
        degree: u32,
        #[serde(with = "crate::model::serde_num::int")]
        others_coeff_sum: Int,
        /// `B_k(t) != 0` for integers `t > root_bound`.
        #[serde(with = "crate::model::serde_num::int")]
        root_bound: Int,
        t0: u64,
        t_dominant: u64,
    },
}

impl ParityBound {
    pub fn parity(&self) -> u8 {
        match self {
            ParityBound::Vanishes { parity }
            | ParityBound::Single { parity, .. }
            | ParityBound::Dominant { parity, .. } => *parity,
        }
    }

    /// Largest `t >= 0` at which this part may vanish.
    fn last_zero_t(&self) -> Option<Int> {
        match self {
            ParityBound::Vanishes { .. } => None,
            ParityBound::Single { roots, .. } => {
                roots.iter().filter(|r| !r.is_negative()).max().cloned()
            }
            ParityBound::Dominant { t_dominant, .. } => {
                (*t_dominant > 0).then(|| Int::from(t_dominant - 1))
            }
        }
    }
}

/// Bounds for one direction: `s > bound` (with `s` of a non-vanishing
/// parity) is never a zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionBound {
    pub parts: Vec<ParityBound>,
    #[serde(with = "crate::model::serde_num::int")]
    pub bound: Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominanceCertificate {
    /// `g(s) != 0` for `s > s_plus`.
    pub plus: DirectionBound,
    /// `g(-u) != 0` for `u > s_minus`, via `g(-u) (prod |a_i|)^u`.
    pub minus: DirectionBound,
}

impl DominanceCertificate {
    pub fn s_plus(&self) -> &Int {
        &self.plus.bound
    }

    pub fn s_minus(&self) -> &Int {
        &self.minus.bound
    }

    /// Parities `q` such that every `s = q (mod 2)` is a zero.
    pub fn vanishing_parities(&self) -> Vec<u8> {
        self.plus
            .parts
            .iter()
            .filter(|p| matches!(p, ParityBound::Vanishes { .. }))
            .map(ParityBound::parity)
            .collect()
    }

    /// Recomputes every ingredient from `g` and checks the inequalities.
    pub fn verify(&self, g: &ExpSum) -> Result<(), String> {
        verify_direction(&self.plus, g).map_err(|e| format!("positive direction: {e}"))?;
        verify_direction(&self.minus, &g.negated())
            .map_err(|e| format!("negative direction: {e}"))?;
        let vanish = self.vanishing_parities();
        for k in 1..=2u32 {
            let s = self.s_plus() + Int::from(k);
            if !vanish.contains(&parity_of(&s)) && g.eval(&s).is_zero() {
                return Err(format!("g({s}) = 0 beyond the positive threshold"));
            }
            let s = -(self.s_minus() + Int::from(k));
            if !vanish.contains(&parity_of(&s)) && g.eval(&s).is_zero() {
                return Err(format!("g({s}) = 0 beyond the negative threshold"));
            }
        }
        Ok(())
    }
}

fn parity_of(s: &Int) -> u8 {
    if (s % 2u32).is_zero() {
        0
    } else {
        1
    }
}

/// `h_q(t) = g(2t + q)` as a sum over positive bases `a^2`, ascending.
fn parity_part(g: &ExpSum, q: u8) -> Vec<(Int, UniPoly)> {
    let mut parts: Vec<(Int, UniPoly)> = Vec::new();
    let two = Rat::from_integer(Int::from(2));
    let shift = Rat::from_integer(Int::from(q));
    for (a, p) in g.terms() {
        let b = a * a;
        let mut poly = p.compose_affine(&two, &shift);
        if q == 1 {
            poly = poly.scale(&Rat::from_integer(a.clone()));
        }
        match parts.iter_mut().find(|(c, _)| *c == b) {
            Some(slot) => slot.1 = &slot.1 + &poly,
            None => parts.push((b, poly)),
        }
    }
    parts.retain(|(_, p)| !p.is_zero());
    parts.sort_by(|x, y| x.0.cmp(&y.0));
    parts
}

/// Largest nonnegative integer root of `p` (0 if none); the Cauchy bound
/// when the constant term cannot be factored within budget.
fn root_bound(p: &UniPoly) -> Int {
    match p.integer_roots() {
        Ok(roots) => roots.into_iter().max().unwrap_or_else(Int::zero).max(Int::zero()),
        Err(_) => p.cauchy_bound(),
    }
}

fn int_coeff_sum(p: &UniPoly) -> Int {
    p.abs_coeff_sum().to_integer()
}

fn monotone_at(bk: &Int, bprev: &Int, d: u32, t: u64) -> bool {
    bk * big_pow(&Int::from(t), d as u64) >= bprev * big_pow(&Int::from(t + 1), d as u64)
}

fn dominates_at(bk: &Int, bprev: &Int, c: &Int, d: u32, t: u64) -> bool {
    big_pow(bk, t) > c * big_pow(&Int::from(t), d as u64) * big_pow(bprev, t)
}

/// Least `t >= lo` with `pred(t)`, for a predicate that stays true once true.
fn least_true(lo: u64, pred: impl Fn(u64) -> bool) -> Result<u64, PolyExpError> {
    if pred(lo) {
        return Ok(lo);
    }
    let mut bad = lo;
    let mut step = 1u64;
    let good = loop {
        let t = lo + step;
        if t > T_LIMIT {
            return Err(PolyExpError::ThresholdTooLarge(T_LIMIT));
        }
        if pred(t) {
            break t;
        }
        bad = t;
        step *= 2;
    };
    let (mut bad, mut good) = (bad, good);
    while good - bad > 1 {
        let mid = bad + (good - bad) / 2;
        if pred(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    Ok(good)
}

fn bound_part(q: u8, part: &[(Int, UniPoly)]) -> Result<ParityBound, PolyExpError> {
    match part {
        [] => Ok(ParityBound::Vanishes { parity: q }),
        [(b, p)] => Ok(ParityBound::Single {
            parity: q,
            base: b.clone(),
            roots: p.integer_roots()?,
        }),
        _ => {
            let (bk, pk) = part.last().expect("nonempty");
            let others = &part[..part.len() - 1];
            let bprev = &others.last().expect("k >= 2").0;
            let d = others.iter().map(|(_, p)| p.degree()).max().expect("k >= 2") as u32;
            let c: Int = others.iter().map(|(_, p)| int_coeff_sum(p)).sum();
            let r = root_bound(pk);
            let t0 = least_true(1, |t| monotone_at(bk, bprev, d, t))?;
            let r1 = (r.clone() + Int::one())
                .to_u64()
                .filter(|&x| x <= T_LIMIT)
                .ok_or(PolyExpError::ThresholdTooLarge(T_LIMIT))?;
            let lo = t0.max(r1).max(1);
            let t_dominant = least_true(lo, |t| dominates_at(bk, bprev, &c, d, t))?;
            Ok(ParityBound::Dominant {
                parity: q,
                dominant_base: bk.clone(),
                next_base: bprev.clone(),
                degree: d,
                others_coeff_sum: c,
                root_bound: r,
                t0,
                t_dominant,
            })
        }
    }
}

fn direction_bound(g: &ExpSum) -> Result<DirectionBound, PolyExpError> {
    let parts = (0..2u8)
        .map(|q| bound_part(q, &parity_part(g, q)))
        .collect::<Result<Vec<_>, _>>()?;
    let bound = parts
        .iter()
        .filter_map(|p| p.last_zero_t().map(|t| 2 * t + Int::from(p.parity())))
        .max()
        .unwrap_or_else(Int::zero);
    Ok(DirectionBound { parts, bound })
}

fn verify_direction(dir: &DirectionBound, g: &ExpSum) -> Result<(), String> {
    let mut bound = Int::zero();
    if dir.parts.len() != 2 {
        return Err("expected one bound per parity".into());
    }
    for (q, claimed) in (0..2u8).zip(&dir.parts) {
        let part = parity_part(g, q);
        if claimed.parity() != q {
            return Err(format!("parity {q} out of order"));
        }
        match (claimed, part.as_slice()) {
            (ParityBound::Vanishes { .. }, []) => {}
            (ParityBound::Single { base, roots, .. }, [(b, p)]) => {
                if base != b {
                    return Err(format!("parity {q}: base mismatch"));
                }
                let actual = p.integer_roots().map_err(|e| e.to_string())?;
                if &actual != roots {
                    return Err(format!("parity {q}: roots mismatch"));
                }
            }
            (
                ParityBound::Dominant {
                    dominant_base,
                    next_base,
                    degree,
                    others_coeff_sum,
                    root_bound: claimed_root_bound,
                    t0,
                    t_dominant,
                    ..
                },
                [.., (bprev, _), (bk, pk)],
            ) => {
                let others = &part[..part.len() - 1];
                let d = others.iter().map(|(_, p)| p.degree()).max().unwrap_or(0) as u32;
                let c: Int = others.iter().map(|(_, p)| int_coeff_sum(p)).sum();
                if dominant_base != bk || next_base != bprev {
                    return Err(format!("parity {q}: bases mismatch"));
                }
                if *degree != d || *others_coeff_sum != c || *claimed_root_bound != root_bound(pk) {
                    return Err(format!("parity {q}: constants mismatch"));
                }
                if *t0 < 1 || !monotone_at(bk, bprev, d, *t0) {
                    return Err(format!("parity {q}: monotonicity fails at t0 = {t0}"));
                }
                if Int::from(*t_dominant) <= *claimed_root_bound || t_dominant < t0 {
                    return Err(format!("parity {q}: threshold below t0 or the root bound"));
                }
                for k in 0..3 {
                    if !dominates_at(bk, bprev, &c, d, t_dominant + k) {
                        return Err(format!("parity {q}: inequality fails at {}", t_dominant + k));
                    }
                }
            }
            _ => return Err(format!("parity {q}: wrong number of terms")),
        }
        if let Some(t) = claimed.last_zero_t() {
            bound = bound.max(2 * t + Int::from(q));
        }
    }
    if bound != dir.bound {
        return Err(format!("bound {} does not match the parts ({bound})", dir.bound));
    }
    Ok(())
}

/// Thresholds `S+` and `S-` outside which `g` has no zeros (except on a
/// parity class where it vanishes identically).
pub fn dominance_bound(g: &ExpSum) -> Result<DominanceCertificate, PolyExpError> {
    if g.is_zero() {
        return Err(PolyExpError::IdenticallyZero);
    }
    Ok(DominanceCertificate {
        plus: direction_bound(g)?,
        minus: direction_bound(&g.negated())?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_minus_three() {
        let g = ExpSum::from_ints(&[(2, &[1]), (3, &[-1])]);
        let c = dominance_bound(&g).unwrap();
        assert!(c.s_plus() <= &Int::from(2) && c.s_minus() <= &Int::from(2));
        c.verify(&g).unwrap();
    }

    #[test]
    fn single_term_roots() {
        let g = ExpSum::from_ints(&[(5, &[-4, 0, 1])]);
        let c = dominance_bound(&g).unwrap();
        assert_eq!(c.s_plus(), &Int::from(2));
        assert_eq!(c.s_minus(), &Int::from(2));
        c.verify(&g).unwrap();
    }

    #[test]
    fn opposite_bases_vanish_on_odd() {
        let g = ExpSum::from_ints(&[(2, &[1]), (-2, &[1])]);
        let c = dominance_bound(&g).unwrap();
        assert_eq!(c.vanishing_parities(), vec![1]);
        c.verify(&g).unwrap();
    }

    #[test]
    fn example_bases_finite() {
        let g = ExpSum::from_ints(&[(6, &[2, -1, 1]), (35, &[2, 2]), (143, &[3, -1, 1])]);
        let c = dominance_bound(&g).unwrap();
        c.verify(&g).unwrap();
        assert!(c.s_plus() < &Int::from(100));
        assert!(c.s_minus() < &Int::from(100));
    }

    #[test]
    fn tampered_certificate_rejected() {
        let g = ExpSum::from_ints(&[(2, &[1, 1]), (3, &[-5])]);
        let mut c = dominance_bound(&g).unwrap();
        c.verify(&g).unwrap();
        if let ParityBound::Dominant { t_dominant, .. } = &mut c.plus.parts[0] {
            *t_dominant = 1;
        }
        assert!(c.verify(&g).is_err());
        assert!(dominance_bound(&ExpSum::from_ints(&[])).is_err());
    }
}
