//! The alpha and beta sequences with exponential generating functions
//! `exp(z/(z-1))` and `exp(z/(1-z^2))`, and the totient products behind them.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorial, int, to_integer, Rational, Sieve};
use crate::error::{arg, Result, VpvError};
use crate::identity::recipe::multiply_binomial_in_place;
use crate::poly::ONE_MONO;
use crate::series::GradedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceName {
    Alpha,
    Beta,
}

impl FromStr for SequenceName {
    type Err = VpvError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha" => Ok(SequenceName::Alpha),
            "beta" => Ok(SequenceName::Beta),
            _ => Err(VpvError::Parse(format!("unknown sequence `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceTable {
    pub name: SequenceName,
    #[serde(with = "bigint_strings")]
    pub values: Vec<BigInt>,
}

mod bigint_strings {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|b| b.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// `k! [z^k] exp(g)` for `k = 0..=n`.
fn egf_integers(g: &GradedSeries, n: usize) -> Result<Vec<BigInt>> {
    let e = g.exp0()?;
    (0..=n)
        .map(|k| to_integer(&(e.coeff_z(k) * Rational::from_integer(factorial(k as u32)))))
        .collect()
}

pub fn alpha_sequence(n: usize) -> Result<SequenceTable> {
    let order = n.max(1);
    let coeffs: Vec<Rational> = (0..=order)
        .map(|k| if k == 0 { Rational::zero() } else { int(-1) })
        .collect();
    Ok(SequenceTable {
        name: SequenceName::Alpha,
        values: egf_integers(&GradedSeries::univariate(order, &coeffs), order)?
            .into_iter()
            .take(n + 1)
            .collect(),
    })
}

pub fn beta_sequence(n: usize) -> Result<SequenceTable> {
    let order = n.max(1);
    let coeffs: Vec<Rational> = (0..=order)
        .map(|k| if k % 2 == 1 { int(1) } else { Rational::zero() })
        .collect();
    Ok(SequenceTable {
        name: SequenceName::Beta,
        values: egf_integers(&GradedSeries::univariate(order, &coeffs), order)?
            .into_iter()
            .take(n + 1)
            .collect(),
    })
}

pub fn sequence(name: SequenceName, n: usize) -> Result<SequenceTable> {
    match name {
        SequenceName::Alpha => alpha_sequence(n),
        SequenceName::Beta => beta_sequence(n),
    }
}

/// `alpha(k) = (2k-3) alpha(k-1) - (k-1)(k-2) alpha(k-2)` from `alpha(0) = 1`,
/// `alpha(1) = -1`.
pub fn alpha_by_recurrence(n: usize) -> Vec<BigInt> {
    let mut a: Vec<BigInt> = vec![BigInt::one(), -BigInt::one()];
    for k in 2..=n {
        let k = k as i64;
        let next = BigInt::from(2 * k - 3) * &a[k as usize - 1]
            - BigInt::from((k - 1) * (k - 2)) * &a[k as usize - 2];
        a.push(next);
    }
    a.truncate(n + 1);
    a
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KCheck {
    pub k: usize,
    pub value: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaReport {
    pub n: usize,
    pub recurrence_holds: bool,
    pub recurrence_failures: Vec<usize>,
    /// `gcd(alpha(k), k!)` for `k <= min(n, 34)`.
    pub gcd_with_factorial: Vec<KCheck>,
    pub gcd_failures: Vec<usize>,
    /// `alpha(k) mod 10` for every `k <= n`.
    pub last_digit: Vec<KCheck>,
    pub last_digit_failures: Vec<usize>,
}

pub fn check_alpha_properties(n: usize) -> Result<AlphaReport> {
    if n < 2 {
        return arg("n must be at least 2");
    }
    let a = alpha_sequence(n)?.values;
    let recurrence_failures: Vec<usize> = (2..=n)
        .filter(|&k| {
            let ki = k as i64;
            &a[k] + BigInt::from((ki - 1) * (ki - 2)) * &a[k - 2]
                != BigInt::from(2 * ki - 3) * &a[k - 1]
        })
        .collect();
    let gcd_with_factorial: Vec<KCheck> = (0..=n.min(34))
        .map(|k| {
            let g = a[k].gcd(&factorial(k as u32));
            KCheck {
                k,
                ok: g.is_one(),
                value: g.to_string(),
            }
        })
        .collect();
    let last_digit: Vec<KCheck> = (0..=n)
        .map(|k| {
            let d = (a[k].abs() % BigInt::from(10)).to_string();
            KCheck {
                k,
                ok: d == "1" || d == "9",
                value: d,
            }
        })
        .collect();
    Ok(AlphaReport {
        n,
        recurrence_holds: recurrence_failures.is_empty(),
        recurrence_failures,
        gcd_failures: gcd_with_factorial.iter().filter(|c| !c.ok).map(|c| c.k).collect(),
        gcd_with_factorial,
        last_digit_failures: last_digit.iter().filter(|c| !c.ok).map(|c| c.k).collect(),
        last_digit,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TotientKind {
    /// `prod (1 - z^k)^{phi(k)/k}`
    OneMinus,
    /// `prod (1 + z^k)^{phi(k)/k}`
    OnePlus,
    /// `prod (1 + z^k)^{phi(k) z^k / k}`, the exponent as typeset.
    OnePlusSelfPower,
}

impl FromStr for TotientKind {
    type Err = VpvError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one_minus" => Ok(TotientKind::OneMinus),
            "one_plus" => Ok(TotientKind::OnePlus),
            "one_plus_selfpower" => Ok(TotientKind::OnePlusSelfPower),
            _ => Err(VpvError::Parse(format!("unknown totient product `{s}`"))),
        }
    }
}

pub fn totient_product(kind: TotientKind, order: usize) -> Result<GradedSeries> {
    if order < 1 {
        return arg("order must be at least 1");
    }
    let sieve = Sieve::new(order)?;
    let phi_over_k = |k: usize| Rational::new((sieve.phi(k) as i64).into(), (k as i64).into());
    match kind {
        TotientKind::OneMinus | TotientKind::OnePlus => {
            let c = if kind == TotientKind::OneMinus {
                Rational::one()
            } else {
                -Rational::one()
            };
            let mut acc = GradedSeries::one(1, order);
            for k in 1..=order {
                multiply_binomial_in_place(&mut acc, &c, &ONE_MONO, k as i64, &phi_over_k(k))?;
            }
            Ok(acc)
        }
        TotientKind::OnePlusSelfPower => {
            let mut log = GradedSeries::zero(1, order);
            for k in 1..=order {
                let base = GradedSeries::one(1, order)
                    .add(&GradedSeries::monomial(1, order, Rational::one(), ONE_MONO, k))?;
                let zk = GradedSeries::monomial(1, order, phi_over_k(k), ONE_MONO, k);
                log = log.add(&base.log1()?.mul(&zk)?)?;
            }
            log.exp0()
        }
    }
}

/// The exponential the product is claimed to equal, where one exists.
pub fn totient_closed_form(kind: TotientKind, order: usize) -> Result<GradedSeries> {
    let coeffs: Vec<Rational> = (0..=order)
        .map(|k| match (kind, k) {
            (_, 0) => Rational::zero(),
            (TotientKind::OneMinus, _) => int(-1),
            (_, k) if k % 2 == 1 => int(1),
            _ => Rational::zero(),
        })
        .collect();
    GradedSeries::univariate(order, &coeffs).exp0()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn printed_values() {
        let a = alpha_sequence(13).unwrap().values;
        assert_eq!(a[0], BigInt::from(1));
        assert_eq!(a[10], BigInt::from(396271));
        assert_eq!(a[13], BigInt::from(-145269541));
        let b = beta_sequence(8).unwrap().values;
        assert_eq!(b[4], BigInt::from(25));
        assert_eq!(b[8], BigInt::from(97777));
    }

    #[test]
    fn recurrence_matches_series() {
        assert_eq!(alpha_by_recurrence(40), alpha_sequence(40).unwrap().values);
    }

    #[test]
    fn totient_products() {
        let m = totient_product(TotientKind::OneMinus, 6).unwrap();
        assert_eq!(m.coeff_z(6), rat(151, 720));
        assert_eq!(m, totient_closed_form(TotientKind::OneMinus, 6).unwrap());
        let p = totient_product(TotientKind::OnePlus, 6).unwrap();
        assert_eq!(p.coeff_z(3), rat(7, 6));
        assert_eq!(p, totient_closed_form(TotientKind::OnePlus, 6).unwrap());
        let s = totient_product(TotientKind::OnePlusSelfPower, 3).unwrap();
        assert_eq!(s.coeff_z(0), rat(1, 1));
        assert_eq!(s.coeff_z(1), rat(0, 1));
        assert_eq!(s.coeff_z(3), rat(-1, 2));
    }

    #[test]
    fn alpha_report_small() {
        let r = check_alpha_properties(10).unwrap();
        assert!(r.recurrence_holds);
        assert!(r.gcd_failures.is_empty());
        assert!(r.last_digit_failures.is_empty());
        assert!(check_alpha_properties(1).is_err());
    }
}
