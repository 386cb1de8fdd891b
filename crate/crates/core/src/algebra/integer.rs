//! Integer helpers: trial-division factorization, divisor enumeration,
//! binomials and a few conversions shared by the deciders.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgebraError;

/// Default trial-division bound.
pub const DEFAULT_FACTOR_BUDGET: u64 = 1_000_000;

/// Factorization of a nonzero integer: `sign * prod(p^e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub sign: Sign,
    /// Primes in increasing order, exponents all positive.
    pub factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn recompose(&self) -> BigInt {
        let mut acc = BigInt::one();
        for (p, e) in &self.factors {
            acc *= num_traits::pow(p.clone(), *e as usize);
        }
        if self.sign == Sign::Minus {
            -acc
        } else {
            acc
        }
    }

    /// p-adic valuation of the factored integer.
    pub fn valuation(&self, p: &BigInt) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }
}

/// Factor `n` by trial division with divisors up to `budget`.
///
/// Any cofactor left after trial division that is at most `budget^2` is
/// prime. A larger cofactor is reported as [`AlgebraError::IncompleteFactorization`].
pub fn factor_integer(n: &BigInt, budget: u64) -> Result<Factorization, AlgebraError> {
    if n.is_zero() {
        return Err(AlgebraError::FactorZero);
    }
    let sign = if n.is_negative() { Sign::Minus } else { Sign::Plus };
    let mut rest = n.abs();
    let mut factors = Vec::new();

    if let Some(small) = rest.to_u64() {
        let (fs, cofactor) = trial_divide_u64(small, budget);
        factors.extend(fs.into_iter().map(|(p, e)| (BigInt::from(p), e)));
        rest = BigInt::from(cofactor);
    } else {
        let mut d: u64 = 2;
        while d <= budget {
            let bd = BigInt::from(d);
            if &bd * &bd > rest {
                break;
            }
            let mut e = 0u32;
            loop {
                let (q, r) = rest.div_rem(&bd);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                e += 1;
            }
            if e > 0 {
                factors.push((bd, e));
                if let Some(small) = rest.to_u64() {
                    let (fs, cofactor) = trial_divide_u64_from(small, d + 1, budget);
                    factors.extend(fs.into_iter().map(|(p, e)| (BigInt::from(p), e)));
                    rest = BigInt::from(cofactor);
                    break;
                }
            }
            d = if d == 2 { 3 } else { d + 2 };
        }
    }

    if !rest.is_one() {
        let b = BigInt::from(budget);
        if rest > &b * &b {
            return Err(AlgebraError::IncompleteFactorization {
                n: n.clone(),
                cofactor: rest,
            });
        }
        factors.push((rest, 1));
    }
    factors.sort();
    Ok(Factorization { sign, factors })
}

fn trial_divide_u64(n: u64, budget: u64) -> (Vec<(u64, u32)>, u64) {
    trial_divide_u64_from(n, 2, budget)
}

// Returns the factors found below `budget` and the remaining cofactor. A
// cofactor whose square root is below the last tried divisor is prime and
// is returned as a factor.
fn trial_divide_u64_from(mut n: u64, start: u64, budget: u64) -> (Vec<(u64, u32)>, u64) {
    let mut out = Vec::new();
    let mut d = start.max(2);
    while d <= budget && (d as u128) * (d as u128) <= n as u128 {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d = if d == 2 { 3 } else if d % 2 == 0 { d + 1 } else { d + 2 };
    }
    if n > 1 && ((d as u128) * (d as u128) > n as u128) {
        out.push((n, 1));
        n = 1;
    }
    (out, n)
}

/// All positive divisors of `|n|`, sorted ascending.
pub fn positive_divisors(n: &BigInt, budget: u64) -> Result<Vec<BigInt>, AlgebraError> {
    let f = factor_integer(n, budget)?;
    let mut divs = vec![BigInt::one()];
    for (p, e) in &f.factors {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..*e {
                pk *= p;
                next.push(pk.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn big_pow(base: &BigInt, exp: u64) -> BigInt {
    num_traits::pow(base.clone(), exp as usize)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

/// Multiplicative order of `a` modulo `m`; `None` if `gcd(a, m) != 1`.
pub fn multiplicative_order(a: &BigInt, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    let r = a.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits");
    if r.gcd(&m) != 1 {
        return None;
    }
    let mut x = r % m;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * r as u128) % m as u128) as u64;
        k += 1;
    }
    Some(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn factors_143() {
        let f = factor_integer(&b(143), DEFAULT_FACTOR_BUDGET).unwrap();
        assert_eq!(f.factors, vec![(b(11), 1), (b(13), 1)]);
        assert_eq!(f.sign, Sign::Plus);
    }

    #[test]
    fn factors_negative_eight() {
        let f = factor_integer(&b(-8), DEFAULT_FACTOR_BUDGET).unwrap();
        assert_eq!(f.sign, Sign::Minus);
        assert_eq!(f.factors, vec![(b(2), 3)]);
        assert_eq!(f.recompose(), b(-8));
    }

    #[test]
    fn factors_one_is_empty() {
        let f = factor_integer(&b(1), DEFAULT_FACTOR_BUDGET).unwrap();
        assert!(f.factors.is_empty());
    }

    #[test]
    fn zero_is_rejected() {
        assert!(matches!(
            factor_integer(&b(0), 10),
            Err(AlgebraError::FactorZero)
        ));
    }

    #[test]
    fn large_prime_cofactor_is_incomplete_under_small_budget() {
        // 1_000_003 is prime; with budget 100 the cofactor exceeds 100^2
        let n = b(1_000_003) * b(4);
        match factor_integer(&n, 100) {
            Err(AlgebraError::IncompleteFactorization { cofactor, .. }) => {
                assert_eq!(cofactor, b(1_000_003))
            }
            other => panic!("unexpected {other:?}"),
        }
        let f = factor_integer(&n, DEFAULT_FACTOR_BUDGET).unwrap();
        assert_eq!(f.factors, vec![(b(2), 2), (b(1_000_003), 1)]);
    }

    #[test]
    fn cofactor_below_budget_squared_is_prime() {
        // 9797 = 97 * 101 has no factor <= 10 and exceeds 10^2
        assert!(factor_integer(&b(97 * 101), 10).is_err());
        let f = factor_integer(&b(2 * 97), 10).unwrap();
        assert_eq!(f.factors, vec![(b(2), 1), (b(97), 1)]);
    }

    #[test]
    fn big_input_factors() {
        let n = big_pow(&b(6), 40) * b(143);
        let f = factor_integer(&n, DEFAULT_FACTOR_BUDGET).unwrap();
        assert_eq!(
            f.factors,
            vec![(b(2), 40), (b(3), 40), (b(11), 1), (b(13), 1)]
        );
    }

    #[test]
    fn divisors_of_12() {
        let d = positive_divisors(&b(-12), 100).unwrap();
        let want: Vec<BigInt> = [1, 2, 3, 4, 6, 12].iter().map(|&x| b(x)).collect();
        assert_eq!(d, want);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), b(6));
        assert_eq!(binomial(3, 1), b(3));
        assert_eq!(binomial(2, 5), b(0));
        assert_eq!(binomial(30, 15), b(155117520));
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(&b(4), 5), Some(2));
        assert_eq!(multiplicative_order(&b(2), 3), Some(2));
        assert_eq!(multiplicative_order(&b(-1), 7), Some(2));
        assert_eq!(multiplicative_order(&b(6), 9), None);
    }

    proptest::proptest! {
        #[test]
        fn factorization_recomposes(n in -5_000_000i64..5_000_000i64) {
            proptest::prop_assume!(n != 0);
            let f = factor_integer(&b(n), DEFAULT_FACTOR_BUDGET).unwrap();
            proptest::prop_assert_eq!(f.recompose(), b(n));
            for (p, _) in &f.factors {
                // every reported factor is prime
                let pf = factor_integer(p, DEFAULT_FACTOR_BUDGET).unwrap();
                proptest::prop_assert_eq!(pf.factors.len(), 1);
                proptest::prop_assert_eq!(pf.factors[0].1, 1);
            }
        }
    }
}
