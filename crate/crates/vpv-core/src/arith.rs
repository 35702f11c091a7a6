//! Exact scalar arithmetic: rationals, vector gcd, generalized binomials and
//! the multiplicative sieves.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{arg, domain, Result, VpvError};

/// Arbitrary-precision rational; always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn big(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Parses `p`, `-p`, `p/q` or `-p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || VpvError::Parse(format!("not a rational: `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(VpvError::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// gcd of the absolute values; the all-zero vector has gcd 0.
pub fn gcd_vector(v: &[i64]) -> Result<u64> {
    if v.is_empty() {
        return arg("gcd of an empty vector");
    }
    Ok(v.iter().fold(0u64, |g, &x| g.gcd(&x.unsigned_abs())))
}

/// `alpha (alpha-1) ... (alpha-i+1) / i!`
pub fn rational_binomial(alpha: &Rational, i: u32) -> Rational {
    let mut acc = Rational::one();
    for k in 0..i {
        acc *= alpha - int(k as i64);
        acc /= int(k as i64 + 1);
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `base^e` for a signed exponent; `0^0 = 1`, `0^e` with `e < 0` is a domain error.
pub fn pow_i(base: &Rational, e: i64) -> Result<Rational> {
    if e >= 0 {
        return Ok(num_traits::pow(base.clone(), e as usize));
    }
    if base.is_zero() {
        return domain("zero raised to a negative power");
    }
    Ok(num_traits::pow(base.recip(), e.unsigned_abs() as usize))
}

/// Integer power of an integer as a rational, used for lattice weights.
pub fn ipow(base: i64, e: u32) -> Rational {
    Rational::from_integer(num_traits::pow(BigInt::from(base), e as usize))
}

/// Linear sieve producing Euler's totient and the Möbius function on `1..=n`.
#[derive(Debug, Clone)]
pub struct Sieve {
    phi: Vec<u64>,
    mu: Vec<i8>,
}

impl Sieve {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return arg("sieve bound must be at least 1");
        }
        let mut phi = vec![0u64; n + 1];
        let mut mu = vec![0i8; n + 1];
        let mut composite = vec![false; n + 1];
        let mut primes: Vec<usize> = Vec::new();
        phi[1] = 1;
        mu[1] = 1;
        for i in 2..=n {
            if !composite[i] {
                primes.push(i);
                phi[i] = (i - 1) as u64;
                mu[i] = -1;
            }
            for &p in &primes {
                let ip = i * p;
                if ip > n {
                    break;
                }
                composite[ip] = true;
                if i % p == 0 {
                    phi[ip] = phi[i] * p as u64;
                    mu[ip] = 0;
                    break;
                }
                phi[ip] = phi[i] * (p as u64 - 1);
                mu[ip] = -mu[i];
            }
        }
        Ok(Self { phi, mu })
    }

    pub fn phi(&self, k: usize) -> u64 {
        self.phi[k]
    }

    pub fn mu(&self, k: usize) -> i8 {
        self.mu[k]
    }

    pub fn len(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `[φ(1), ..., φ(n)]`
pub fn totient_sieve(n: usize) -> Result<Vec<u64>> {
    let s = Sieve::new(n)?;
    Ok(s.phi[1..].to_vec())
}

/// `[μ(1), ..., μ(n)]`
pub fn mobius_sieve(n: usize) -> Result<Vec<i8>> {
    let s = Sieve::new(n)?;
    Ok(s.mu[1..].to_vec())
}

/// Converts an integral rational to a `BigInt`, failing otherwise.
pub fn to_integer(r: &Rational) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.numer().clone())
    } else {
        Err(VpvError::Integrity(format!(
            "expected an integer, found {}",
            format_rational(r)
        )))
    }
}

/// Lossy conversion for reporting only.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale down huge operands before dividing.
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(900);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            if d == 0.0 {
                if r.is_negative() {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                }
            } else {
                n / d
            }
        }
    }
}
