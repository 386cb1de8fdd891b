use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{RamseyError, SolutionSet};

/// A coloring of `[1..n]`; `colors[i]` is the color of `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub r: u32,
    pub colors: Vec<u32>,
}

impl Coloring {
    pub fn n(&self) -> u64 {
        self.colors.len() as u64
    }

    pub fn color(&self, v: u64) -> Option<u32> {
        v.checked_sub(1).and_then(|i| self.colors.get(i as usize)).copied()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CanonicalColoring {
    /// `v mod 2`.
    Parity,
    /// `v mod p`.
    ModP(u64),
    /// `floor(log2 v) mod r`.
    DyadicBlock(u32),
}

impl CanonicalColoring {
    pub fn colors(&self) -> u32 {
        match *self {
            CanonicalColoring::Parity => 2,
            CanonicalColoring::ModP(p) => p as u32,
            CanonicalColoring::DyadicBlock(r) => r,
        }
    }

    pub fn color_of(&self, v: u64) -> u32 {
        match *self {
            CanonicalColoring::Parity => (v % 2) as u32,
            CanonicalColoring::ModP(p) => (v % p) as u32,
            CanonicalColoring::DyadicBlock(r) => (63 - v.leading_zeros()) % r,
        }
    }
}

impl fmt::Display for CanonicalColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalColoring::Parity => write!(f, "parity"),
            CanonicalColoring::ModP(p) => write!(f, "mod_p:{p}"),
            CanonicalColoring::DyadicBlock(r) => write!(f, "dyadic_block:{r}"),
        }
    }
}

impl FromStr for CanonicalColoring {
    type Err = RamseyError;

    /// `parity`, `mod_p:<p>` or `dyadic_block:<r>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RamseyError::InvalidParameter(format!("unknown coloring `{s}`"));
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a.trim())),
            None => (s.trim(), None),
        };
        let num = |a: Option<&str>| -> Result<u64, RamseyError> {
            a.and_then(|a| a.parse::<u64>().ok()).filter(|&k| k >= 1).ok_or_else(bad)
        };
        match name {
            "parity" if arg.is_none() => Ok(CanonicalColoring::Parity),
            "mod_p" => Ok(CanonicalColoring::ModP(num(arg)?)),
            "dyadic_block" => Ok(CanonicalColoring::DyadicBlock(
                u32::try_from(num(arg)?).map_err(|_| bad())?,
            )),
            _ => Err(bad()),
        }
    }
}

pub fn canonical_coloring(kind: CanonicalColoring, n: u64) -> Result<Coloring, RamseyError> {
    if kind.colors() == 0 {
        return Err(RamseyError::InvalidParameter("zero colors".into()));
    }
    Ok(Coloring {
        r: kind.colors(),
        colors: (1..=n).map(|v| kind.color_of(v)).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringCheck {
    /// No solution is monochromatic.
    pub avoids: bool,
    pub monochromatic: Vec<Vec<u64>>,
}

/// Lists the monochromatic solutions. Fails when a solution uses a value
/// the coloring does not cover.
pub fn verify_coloring(c: &Coloring, sols: &SolutionSet) -> Result<ColoringCheck, RamseyError> {
    let mut mono = Vec::new();
    for t in &sols.tuples {
        let mut first = None;
        let mut same = true;
        for &v in t {
            let col = c.color(v).ok_or(RamseyError::CoverageGap(v))?;
            if col >= c.r {
                return Err(RamseyError::InvalidParameter(format!(
                    "value {v} has color {col}, but only {} colors are allowed",
                    c.r
                )));
            }
            match first {
                None => first = Some(col),
                Some(f) if f != col => same = false,
                _ => {}
            }
        }
        if same {
            mono.push(t.clone());
        }
    }
    Ok(ColoringCheck {
        avoids: mono.is_empty(),
        monochromatic: mono,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: u64, tuples: Vec<Vec<u64>>) -> SolutionSet {
        SolutionSet {
            n,
            vars: vec!["x".into(), "y".into()],
            tuples,
        }
    }

    #[test]
    fn canonical_values() {
        assert_eq!(CanonicalColoring::ModP(3).color_of(7), 1);
        assert_eq!(CanonicalColoring::Parity.color_of(6), 0);
        assert_eq!(CanonicalColoring::DyadicBlock(2).color_of(1), 0);
        assert_eq!(CanonicalColoring::DyadicBlock(2).color_of(3), 1);
        assert_eq!(CanonicalColoring::DyadicBlock(2).color_of(4), 0);
        assert_eq!(canonical_coloring(CanonicalColoring::Parity, 4).unwrap().colors, vec![1, 0, 1, 0]);
    }

    #[test]
    fn parse_names() {
        assert_eq!("parity".parse::<CanonicalColoring>().unwrap(), CanonicalColoring::Parity);
        assert_eq!("mod_p:5".parse::<CanonicalColoring>().unwrap(), CanonicalColoring::ModP(5));
        assert_eq!(
            "dyadic_block:2".parse::<CanonicalColoring>().unwrap(),
            CanonicalColoring::DyadicBlock(2)
        );
        assert!("mod_p".parse::<CanonicalColoring>().is_err());
        assert!("mod_p:0".parse::<CanonicalColoring>().is_err());
        assert!("stripes".parse::<CanonicalColoring>().is_err());
        for k in [CanonicalColoring::Parity, CanonicalColoring::ModP(7), CanonicalColoring::DyadicBlock(3)] {
            assert_eq!(k.to_string().parse::<CanonicalColoring>().unwrap(), k);
        }
    }

    #[test]
    fn dyadic_avoids_doubling() {
        let n = 1u64 << 16;
        let c = canonical_coloring(CanonicalColoring::DyadicBlock(2), n).unwrap();
        let tuples = (1..=n / 2).map(|x| vec![x, 2 * x]).collect();
        let check = verify_coloring(&c, &set(n, tuples)).unwrap();
        assert!(check.avoids);
    }

    #[test]
    fn monochromatic_listed() {
        let c = canonical_coloring(CanonicalColoring::Parity, 6).unwrap();
        let check = verify_coloring(&c, &set(6, vec![vec![1, 3], vec![1, 2], vec![2, 6]])).unwrap();
        assert_eq!(check.monochromatic, vec![vec![1, 3], vec![2, 6]]);
    }

    #[test]
    fn coverage_gap() {
        let c = canonical_coloring(CanonicalColoring::Parity, 3).unwrap();
        assert_eq!(
            verify_coloring(&c, &set(5, vec![vec![1, 5]])),
            Err(RamseyError::CoverageGap(5))
        );
    }
}
