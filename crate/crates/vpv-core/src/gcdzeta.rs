//! Lambert-type sums over visible points and their zeta-quotient analogues.
//!
//! The series sums are exact. The zeta sums are `f64` with explicit error
//! bounds.

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, gcd_vector, int, pow_i, rat, to_f64, Rational, Sieve};
use crate::error::{arg, domain, Result};
use crate::lattice::{for_each_box_point, visible_points, ConeKind, ConeRegion};
use crate::poly::{geometric_block, mono_from_slice, Poly, ONE_MONO};
use crate::series::{Difference, GradedSeries};

const MAX_DIM: usize = 7;

/// Both sides of the visible-point Lambert sum in `dim` variables.
///
/// In 2D the sum runs over `0 <= a < b` and the closed form is
/// `z / ((1 - z)(1 - yz))`. In higher dimensions every coordinate but the
/// last is unrestricted, so the series is truncated to the box with all
/// non-graded exponents at most `order`; the closed form is
/// `z / prod (1 - q_i)` on that box.
#[derive(Clone, Debug)]
pub struct GcdSumSides {
    pub dim: usize,
    pub order: usize,
    pub lhs: GradedSeries,
    pub rhs: GradedSeries,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcdSumReport {
    pub dim: usize,
    pub order: usize,
    pub closed_form: String,
    pub visible_points: usize,
    pub terms: usize,
    pub equal: bool,
    pub first_difference: Option<Difference>,
}

pub fn gcd_sum_series(dim: usize, order: usize) -> Result<GcdSumSides> {
    if !(2..=MAX_DIM).contains(&dim) {
        return arg(format!("dimension must be in 2..={MAX_DIM}"));
    }
    if order < 1 {
        return arg("order must be at least 1");
    }
    let n = order as i64;
    let mut lhs = GradedSeries::zero(dim, order);
    let mut rhs = GradedSeries::zero(dim, order);
    let points: Vec<Vec<i64>> = if dim == 2 {
        visible_points(&ConeRegion::new(ConeKind::TriangleStrict2D, 2)?, n)?
    } else {
        let mut pts = Vec::new();
        for c in 1..=n {
            for_each_box_point(dim - 1, 0..=n, |p| {
                let mut v = p.to_vec();
                v.push(c);
                if gcd_vector(&v) == Ok(1) {
                    pts.push(v);
                }
            });
        }
        pts
    };
    for p in &points {
        let bound = if dim == 2 { p[1] } else { *p.iter().max().unwrap_or(&1) };
        let last = dim - 1;
        for h in 1..=n / bound.max(1) {
            let scaled: Vec<i64> = p.iter().map(|a| a * h).collect();
            if scaled[last] > n {
                break;
            }
            lhs.add_term(mono_from_slice(&scaled[..last])?, scaled[last] as usize, Rational::one());
        }
    }
    if dim == 2 {
        let mut geometric_yz = GradedSeries::zero(2, order);
        let mut geometric_z = GradedSeries::zero(2, order);
        for k in 0..=order {
            geometric_yz.add_term(mono_from_slice(&[k as i64])?, k, Rational::one());
            if k >= 1 {
                geometric_z.add_term(ONE_MONO, k, Rational::one());
            }
        }
        rhs = geometric_z.mul(&geometric_yz)?;
    } else {
        let mut block = Poly::one();
        for v in 0..dim - 1 {
            block = block.mul(&geometric_block(v, 0, order as i16));
        }
        for k in 1..=order {
            *rhs.layer_mut(k) = block.clone();
        }
    }
    Ok(GcdSumSides {
        dim,
        order,
        lhs,
        rhs,
    })
}

pub fn gcd_sum_report(dim: usize, order: usize) -> Result<GcdSumReport> {
    let sides = gcd_sum_series(dim, order)?;
    let names = crate::poly::var_names(dim);
    let closed_form = if dim == 2 {
        "z/((1-z)(1-yz))".to_string()
    } else {
        let den: String = names.iter().map(|c| format!("(1-{c})")).collect();
        format!("z/({den})")
    };
    let visible = if dim == 2 {
        visible_points(&ConeRegion::new(ConeKind::TriangleStrict2D, 2)?, order as i64)?.len()
    } else {
        sides
            .lhs
            .terms()
            .iter()
            .filter(|(e, _)| gcd_vector(e) == Ok(1))
            .count()
    };
    let first_difference = sides.lhs.first_difference(&sides.rhs);
    Ok(GcdSumReport {
        dim,
        order,
        closed_form,
        visible_points: visible,
        terms: sides.lhs.term_count(),
        equal: first_difference.is_none(),
        first_difference,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZetaValue {
    pub s: f64,
    pub value: f64,
    pub error_bound: f64,
}

/// Rounding allowance for sums of a few thousand `f64` terms of size `O(1)`.
const ROUNDING: f64 = 1e-13;

/// `zeta(s)` for real `s > 1` from the alternating eta series with the
/// Chebyshev acceleration of Borwein. With `n` terms the truncation error
/// of `eta` is below `3 / (3 + sqrt 8)^n`.
pub fn zeta(s: f64, tol: f64) -> Result<ZetaValue> {
    if s.is_nan() || s <= 1.0 {
        return domain(format!("zeta needs s > 1, got {s}"));
    }
    if tol.is_nan() || tol <= 0.0 {
        return arg("tolerance must be positive");
    }
    let scale = 1.0 / (1.0 - 2f64.powf(1.0 - s));
    let rate = 3.0 + 8f64.sqrt();
    let mut n = 1usize;
    while 3.0 / rate.powi(n as i32) * scale > tol / 2.0 && n < 60 {
        n += 1;
    }
    // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0 / n as f64;
    let mut acc = term;
    d.push(acc);
    for i in 1..=n {
        let fi = i as f64;
        let fnn = n as f64;
        term *= (fnn + fi - 1.0) * (fnn - fi + 1.0) * 4.0 / ((2.0 * fi - 1.0) * (2.0 * fi));
        acc += term;
        d.push(acc);
    }
    let dn = d[n];
    let mut eta = 0.0;
    for k in 0..n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        eta += sign * (dn - d[k]) / ((k + 1) as f64).powf(s);
    }
    eta /= dn;
    let trunc = 3.0 / rate.powi(n as i32) * scale;
    Ok(ZetaValue {
        s,
        value: eta * scale,
        error_bound: trunc + ROUNDING * scale,
    })
}

/// Result of comparing a truncated coprime sum with its zeta quotient.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoprimeSumReport {
    pub exponents: Vec<f64>,
    pub truncation: u64,
    /// Sum over coprime tuples with every coordinate at most the truncation.
    pub direct: f64,
    /// How far the full sum can exceed the truncated one.
    pub direct_tail_bound: f64,
    /// `sum_{d <= T} mu(d) d^{-sum s} prod zeta(s_i)`.
    pub mobius: f64,
    pub mobius_tail_bound: f64,
    /// `prod zeta(s_i) / zeta(sum s_i)`.
    pub zeta_quotient: f64,
    pub zeta_quotient_error: f64,
    pub combined_bound: f64,
    pub agrees: bool,
    pub mobius_agrees: bool,
}

/// `sum_{a <= m} a^{-s}` for `m = 0..=t`.
fn harmonic_prefix(s: f64, t: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(t + 1);
    let mut acc = 0.0;
    out.push(acc);
    for a in 1..=t {
        acc += (a as f64).powf(-s);
        out.push(acc);
    }
    out
}

/// Direct summation is used when the box has at most this many points;
/// larger boxes use the exact finite Mobius inversion of the same sum.
const DIRECT_LIMIT: u64 = 20_000_000;

fn direct_coprime_sum(s: &[f64], t: u64, sieve: &Sieve) -> f64 {
    let total = (t as f64).powi(s.len() as i32);
    if s.len() == 2 && total <= DIRECT_LIMIT as f64 {
        return (1..=t)
            .into_par_iter()
            .map(|a| {
                let fa = (a as f64).powf(-s[0]);
                let mut row = 0.0;
                for b in 1..=t {
                    if a.gcd(&b) == 1 {
                        row += (b as f64).powf(-s[1]);
                    }
                }
                fa * row
            })
            .sum();
    }
    let prefixes: Vec<Vec<f64>> = s.iter().map(|&si| harmonic_prefix(si, t as usize)).collect();
    let sum_s: f64 = s.iter().sum();
    (1..=t as usize)
        .filter(|&d| sieve.mu(d) != 0)
        .map(|d| {
            let m = t as usize / d;
            let prod: f64 = prefixes.iter().map(|p| p[m]).product();
            f64::from(sieve.mu(d)) * (d as f64).powf(-sum_s) * prod
        })
        .sum()
}

pub fn coprime_power_sum(exponents: &[f64], truncation: u64) -> Result<CoprimeSumReport> {
    if exponents.len() < 2 {
        return arg("need at least two exponents");
    }
    if let Some(s) = exponents.iter().find(|s| s.is_nan() || **s <= 1.0) {
        return domain(format!("exponent {s} does not give a convergent sum"));
    }
    if truncation < 10 {
        return arg("truncation must be at least 10");
    }
    let tol = 1e-12;
    let zetas: Vec<ZetaValue> = exponents
        .iter()
        .map(|&s| zeta(s, tol))
        .collect::<Result<_>>()?;
    let sum_s: f64 = exponents.iter().sum();
    let zeta_total = zeta(sum_s, tol)?;
    let prod: f64 = zetas.iter().map(|z| z.value).product();
    let quotient = prod / zeta_total.value;
    // first-order propagation of the relative errors, doubled for safety
    let rel: f64 = zetas.iter().map(|z| z.error_bound / z.value).sum::<f64>()
        + zeta_total.error_bound / zeta_total.value;
    let quotient_err = 2.0 * rel * quotient;

    let sieve = Sieve::new(truncation as usize)?;
    let t = truncation as f64;
    let direct = direct_coprime_sum(exponents, truncation, &sieve);
    // tuples with some coordinate above T
    let direct_tail: f64 = (0..exponents.len())
        .map(|i| {
            let others: f64 = zetas
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, z)| z.value)
                .product();
            others * t.powf(1.0 - exponents[i]) / (exponents[i] - 1.0)
        })
        .sum();
    let mobius: f64 = (1..=truncation as usize)
        .filter(|&d| sieve.mu(d) != 0)
        .map(|d| f64::from(sieve.mu(d)) * (d as f64).powf(-sum_s))
        .sum::<f64>()
        * prod;
    let mobius_tail = prod * t.powf(1.0 - sum_s) / (sum_s - 1.0);
    let combined = direct_tail + quotient_err + ROUNDING * quotient.max(1.0);
    let mobius_bound = mobius_tail + quotient_err + ROUNDING * quotient.max(1.0);
    Ok(CoprimeSumReport {
        exponents: exponents.to_vec(),
        truncation,
        direct,
        direct_tail_bound: direct_tail,
        mobius,
        mobius_tail_bound: mobius_tail,
        zeta_quotient: quotient,
        zeta_quotient_error: quotient_err,
        combined_bound: combined,
        agrees: (quotient - direct).abs() <= combined,
        mobius_agrees: (quotient - mobius).abs() <= mobius_bound,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParticularCase {
    /// The two-variable sum at `y = 1/3`, `z = 1/2`.
    Rational,
    /// `y = 3^{-n}`, `z = 2^{-n}` at `n = 2`.
    PowersOfTwoAndThree,
    /// `y = z`.
    DiagonalSeries,
    /// `tan^2(theta)` at `theta = pi / 6`.
    Tangent,
}

impl ParticularCase {
    pub const ALL: [ParticularCase; 4] = [
        ParticularCase::Rational,
        ParticularCase::PowersOfTwoAndThree,
        ParticularCase::DiagonalSeries,
        ParticularCase::Tangent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ParticularCase::Rational => "rational",
            ParticularCase::PowersOfTwoAndThree => "powers-of-two-and-three",
            ParticularCase::DiagonalSeries => "diagonal-series",
            ParticularCase::Tangent => "tangent",
        }
    }
}

impl std::str::FromStr for ParticularCase {
    type Err = crate::error::VpvError;

    fn from_str(s: &str) -> Result<Self> {
        ParticularCase::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| crate::error::VpvError::Parse(format!("unknown particular case `{s}`")))
    }
}

/// One side of a particular case: an expression and its value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseSide {
    pub expression: String,
    pub exact: Option<String>,
    pub value: f64,
    pub agrees_with_sum: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub case: ParticularCase,
    pub parameters: String,
    /// Partial sum of the left side, or `None` for series cases.
    pub sum: Option<f64>,
    pub sum_tail_bound: Option<f64>,
    /// First differing coefficient against the printed form, for series cases.
    pub series_difference: Option<Difference>,
    pub printed: CaseSide,
    pub derived: CaseSide,
    pub flagged: bool,
}

/// `sum_{0 <= a < b <= bmax, gcd = 1} m / (1 - m)` with `m = y^a z^b`.
fn lambert_partial(y: &Rational, z: &Rational, bmax: i64) -> Result<Rational> {
    let mut acc = Rational::zero();
    for b in 1..=bmax {
        for a in 0..b {
            if a.gcd(&b) != 1 {
                continue;
            }
            let m = pow_i(y, a)? * pow_i(z, b)?;
            acc += &m / (Rational::one() - &m);
        }
    }
    Ok(acc)
}

/// For `0 < y, z < 1` the terms with `b > bmax` total at most
/// `z^{bmax+1} / ((1 - y)(1 - z)^2)`.
fn lambert_tail(y: f64, z: f64, bmax: i64) -> f64 {
    z.powi(bmax as i32 + 1) / ((1.0 - y) * (1.0 - z) * (1.0 - z))
}

fn closed_form(y: &Rational, z: &Rational) -> Rational {
    z / ((Rational::one() - z) * (Rational::one() - y * z))
}

fn side(expression: &str, exact: Rational, sum: f64, bound: f64) -> CaseSide {
    let value = to_f64(&exact);
    CaseSide {
        expression: expression.to_string(),
        exact: Some(format_rational(&exact)),
        value,
        agrees_with_sum: (value - sum).abs() <= bound,
    }
}

pub fn particular_case_eval(case: ParticularCase) -> Result<CaseReport> {
    const BMAX: i64 = 40;
    match case {
        ParticularCase::Rational => {
            let (y, z) = (rat(1, 3), rat(1, 2));
            let sum = to_f64(&lambert_partial(&y, &z, BMAX)?);
            let tail = lambert_tail(1.0 / 3.0, 0.5, BMAX) + ROUNDING;
            let rhs = closed_form(&y, &z);
            let printed = side("z/((1-z)(1-yz))", rhs.clone(), sum, tail);
            let derived = side("z/((1-z)(1-yz))", rhs, sum, tail);
            Ok(CaseReport {
                case,
                parameters: "y=1/3, z=1/2".into(),
                sum: Some(sum),
                sum_tail_bound: Some(tail),
                series_difference: None,
                flagged: !printed.agrees_with_sum,
                printed,
                derived,
            })
        }
        ParticularCase::PowersOfTwoAndThree => {
            let (y, z) = (rat(1, 9), rat(1, 4));
            let sum = to_f64(&lambert_partial(&y, &z, BMAX)?);
            let tail = lambert_tail(1.0 / 9.0, 0.25, BMAX) + ROUNDING;
            let printed_value =
                &z / ((Rational::one() - rat(1, 9)) * (Rational::one() - &z));
            let printed = side("2^-n/((1-3^-n)(1-2^-n))", printed_value, sum, tail);
            let derived = side("2^-n/((1-2^-n)(1-6^-n))", closed_form(&y, &z), sum, tail);
            Ok(CaseReport {
                case,
                parameters: "n=2 (y=1/9, z=1/4)".into(),
                sum: Some(sum),
                sum_tail_bound: Some(tail),
                series_difference: None,
                flagged: !printed.agrees_with_sum,
                printed,
                derived,
            })
        }
        ParticularCase::DiagonalSeries => {
            let order = 8;
            let sides = gcd_sum_series(2, order)?;
            let diagonal = diagonalize(&sides.lhs, order)?;
            let printed_series = univariate(order, |n| int(n as i64));
            let derived_series = univariate(order, |n| int(n.div_ceil(2) as i64));
            let series_difference = diagonal.first_difference(&printed_series);
            let derived_ok = diagonal.first_difference(&derived_series).is_none();
            Ok(CaseReport {
                case,
                parameters: format!("y=z, order {order}"),
                sum: None,
                sum_tail_bound: None,
                flagged: series_difference.is_some(),
                series_difference,
                printed: CaseSide {
                    expression: "z/(1-z)^2".into(),
                    exact: None,
                    value: f64::NAN,
                    agrees_with_sum: diagonal == printed_series,
                },
                derived: CaseSide {
                    expression: "z/((1-z)(1-z^2))".into(),
                    exact: None,
                    value: f64::NAN,
                    agrees_with_sum: derived_ok,
                },
            })
        }
        ParticularCase::Tangent => {
            // tan^2(pi/6) = 1/3
            let t = rat(1, 3);
            let mut literal = Rational::zero();
            for b in 1..=BMAX {
                for a in 0..b {
                    if a.gcd(&b) == 1 {
                        literal += pow_i(&t, a + b)?;
                    }
                }
            }
            let sum = to_f64(&literal);
            // sum_{b > B} b t^b <= (B+1) t^{B+1} / (1-t)^2
            let tail = (BMAX + 1) as f64 * (1.0f64 / 3.0).powi(BMAX as i32 + 1) / (4.0 / 9.0)
                + ROUNDING;
            let printed = side("1/cos^2(theta)", rat(4, 3), sum, tail);
            let derived = side(
                "tan^2/((1-tan^2)(1-tan^4))",
                closed_form(&t, &t),
                sum,
                tail,
            );
            Ok(CaseReport {
                case,
                parameters: "theta=pi/6 (tan^2 = 1/3)".into(),
                sum: Some(sum),
                sum_tail_bound: Some(tail),
                series_difference: None,
                flagged: !printed.agrees_with_sum,
                printed,
                derived,
            })
        }
    }
}

fn univariate(order: usize, f: impl Fn(usize) -> Rational) -> GradedSeries {
    let coeffs: Vec<Rational> = (0..=order).map(f).collect();
    GradedSeries::univariate(order, &coeffs)
}

/// Sets `y = z` in a two-variable series, keeping total degree at most `order`.
fn diagonalize(s: &GradedSeries, order: usize) -> Result<GradedSeries> {
    let mut out = GradedSeries::zero(1, order);
    for (e, c) in s.terms() {
        let deg = e.iter().sum::<i64>().to_usize();
        match deg {
            Some(d) if d <= order => out.add_term(ONE_MONO, d, c),
            Some(_) => {}
            None => return arg("negative total degree"),
        }
    }
    Ok(out)
}
