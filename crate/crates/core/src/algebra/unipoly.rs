use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::integer::{positive_divisors, DEFAULT_FACTOR_BUDGET};
use super::AlgebraError;

/// Dense univariate polynomial `c_0 + c_1 w + ... + c_d w^d`.
///
/// The leading coefficient is nonzero unless the polynomial is zero, in
/// which case `coeffs` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

// Cauchy bounds above this are not scanned when the constant term cannot be
// factored.
const SCAN_FALLBACK_LIMIT: u64 = 10_000_000;

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `w`
    pub fn identity() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(
            c.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect(),
        )
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        Self::new(c.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with -1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigRational {
        self.eval(&BigRational::from_integer(x.clone()))
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, if every coefficient is an integer.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Integer coefficient vector of `lcm(denominators) * self`.
    pub fn cleared(&self) -> Vec<BigInt> {
        let l = BigRational::from_integer(self.denominator_lcm());
        self.coeffs.iter().map(|c| (c * &l).to_integer()).collect()
    }

    pub fn scale(&self, c: &BigRational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `self(a*t + b)`
    pub fn compose_affine(&self, a: &BigRational, b: &BigRational) -> UniPoly {
        let inner = UniPoly::new(vec![b.clone(), a.clone()]);
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// Sum of absolute values of the coefficients.
    pub fn abs_coeff_sum(&self) -> BigRational {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Smallest nonnegative integer `R` such that every real root has
    /// absolute value at most `R` (Cauchy's bound, rounded up). Zero for
    /// constant polynomials.
    pub fn cauchy_bound(&self) -> BigInt {
        let Some(lead) = self.leading() else {
            return BigInt::zero();
        };
        if self.coeffs.len() == 1 {
            return BigInt::zero();
        }
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| (c / lead).abs())
            .max()
            .unwrap_or_else(BigRational::zero);
        (m + BigRational::one()).ceil().to_integer()
    }

    /// Every integer root, sorted ascending.
    ///
    /// Denominators are cleared, the factor `w^k` is split off, and the
    /// divisors of the remaining constant term are checked by exact
    /// evaluation.
    pub fn integer_roots(&self) -> Result<Vec<BigInt>, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let ints = self.cleared();
        let k = ints.iter().position(|c| !c.is_zero()).expect("nonzero");
        let reduced = &ints[k..];
        let mut roots = Vec::new();
        if k > 0 {
            roots.push(BigInt::zero());
        }
        if reduced.len() == 1 {
            return Ok(roots);
        }
        let bound = UniPoly::from_bigints(reduced).cauchy_bound();
        let candidates = match positive_divisors(&reduced[0], DEFAULT_FACTOR_BUDGET) {
            Ok(divs) => divs.into_iter().filter(|d| d <= &bound).collect::<Vec<_>>(),
            Err(AlgebraError::IncompleteFactorization { .. })
                if bound.to_u64().is_some_and(|b| b <= SCAN_FALLBACK_LIMIT) =>
            {
                let c0 = reduced[0].abs();
                let b = bound.to_u64().unwrap();
                (1..=b)
                    .map(BigInt::from)
                    .filter(|d| (&c0 % d).is_zero())
                    .collect()
            }
            Err(e) => return Err(e),
        };
        for d in candidates {
            for r in [-d.clone(), d] {
                if eval_int_coeffs(reduced, &r).is_zero() {
                    roots.push(r);
                }
            }
        }
        roots.sort();
        roots.dedup();
        Ok(roots)
    }
}

fn eval_int_coeffs(c: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for a in c.iter().rev() {
        acc = acc * x + a;
    }
    acc
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        UniPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_in("w", f)
    }
}

impl UniPoly {
    /// Render with the given variable name, e.g. `s^2 - s + 2`.
    pub fn display_in(&self, var: &str) -> String {
        struct D<'a>(&'a UniPoly, &'a str);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_in(self.1, f)
            }
        }
        D(self, var).to_string()
    }

    fn fmt_in(&self, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}
