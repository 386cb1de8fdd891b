use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::expsum::ExpSum;
use crate::algebra::integer::{lcm_u64, multiplicative_order};
use crate::Int;

pub const DEFAULT_MMAX: u64 = 200;

/// `g(s) mod M` is never zero. Because every base is a unit mod `M`, the
/// residue is defined for negative `s` too and has period `period`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularCertificate {
    pub modulus: u64,
    pub period: u64,
    /// `g(s) mod M` for `s = 0..period`.
    pub residues: Vec<u64>,
}

fn residue(x: &Int, m: u64) -> u64 {
    x.mod_floor(&Int::from(m)).to_u64().expect("below modulus")
}

struct Reduced {
    m: u64,
    bases: Vec<u64>,
    coeffs: Vec<Vec<u64>>,
}

impl Reduced {
    fn new(g: &ExpSum, m: u64) -> Option<Reduced> {
        let bases: Vec<u64> = g.bases().iter().map(|a| residue(a, m)).collect();
        if bases.iter().any(|&a| a.gcd(&m) != 1) {
            return None;
        }
        let coeffs = g
            .int_coeffs()
            .iter()
            .map(|c| c.iter().map(|x| residue(x, m)).collect())
            .collect();
        Some(Reduced { m, bases, coeffs })
    }

    fn period(&self, g: &ExpSum) -> u64 {
        let poly_period = if self.coeffs.iter().all(|c| c.len() <= 1) { 1 } else { self.m };
        g.bases().iter().fold(poly_period, |acc, a| {
            lcm_u64(acc, multiplicative_order(a, self.m).expect("unit"))
        })
    }

    /// Residues of `g(s)` for `s = 0..len`.
    fn table(&self, len: u64) -> impl Iterator<Item = u64> + '_ {
        let m = self.m as u128;
        let mut powers: Vec<u128> = vec![1 % m; self.bases.len()];
        (0..len).map(move |s| {
            let s_mod = (s as u128) % m;
            let mut total = 0u128;
            for (i, c) in self.coeffs.iter().enumerate() {
                let mut v = 0u128;
                for &x in c.iter().rev() {
                    v = (v * s_mod + x as u128) % m;
                }
                total = (total + v * powers[i]) % m;
                powers[i] = powers[i] * self.bases[i] as u128 % m;
            }
            total as u64
        })
    }
}

/// First `M` in `2..=mmax`, ascending, with every base a unit mod `M` and
/// `g(s) mod M != 0` over a full period.
pub fn modular_certificate_search(g: &ExpSum, mmax: u64) -> Option<ModularCertificate> {
    for m in 2..=mmax {
        let Some(red) = Reduced::new(g, m) else {
            continue;
        };
        let period = red.period(g);
        let mut residues = Vec::with_capacity(period as usize);
        for r in red.table(period) {
            if r == 0 {
                break;
            }
            residues.push(r);
        }
        if residues.len() as u64 == period {
            return Some(ModularCertificate {
                modulus: m,
                period,
                residues,
            });
        }
    }
    None
}

impl ModularCertificate {
    /// Recomputes two full periods and checks units, periodicity and that
    /// no residue is zero.
    pub fn verify(&self, g: &ExpSum) -> Result<(), String> {
        let red = Reduced::new(g, self.modulus)
            .ok_or_else(|| format!("a base is not a unit mod {}", self.modulus))?;
        if self.period == 0 || self.residues.len() as u64 != self.period {
            return Err("residue table length differs from the period".into());
        }
        if self.period % red.period(g) != 0 {
            return Err("period is not a multiple of the base orders".into());
        }
        for (s, r) in red.table(2 * self.period).enumerate() {
            if r == 0 {
                return Err(format!("g({s}) = 0 mod {}", self.modulus));
            }
            if r != self.residues[s % self.period as usize] {
                return Err(format!("residue mismatch at s = {s}"));
            }
        }
        Ok(())
    }
}
