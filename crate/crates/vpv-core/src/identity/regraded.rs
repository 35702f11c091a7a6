//! Entries evaluated at a rational `z = q`, graded by powers of `y`.
//!
//! Only the weak triangle with weights `(1, 0)` is supported: each column
//! `j` sums in closed form because `gcd(j, k) = 1` is periodic in `k`.

use num_integer::Integer;
use num_traits::{One, Zero};

use super::{IdentitySpec, SignVariant, Sides};
use crate::arith::{int, pow_i, Rational};
use crate::error::{arg, domain, Result};
use crate::lattice::ConeKind;
use crate::poly::ONE_MONO;
use crate::series::GradedSeries;

/// `sum_{k >= j, gcd(k, j) = 1} t^k`
fn column_sum(j: i64, t: &Rational) -> Result<Rational> {
    let tj = pow_i(t, j)?;
    let den = Rational::one() - tj;
    if den.is_zero() {
        return domain("column sum diverges at this value of z");
    }
    let mut num = Rational::zero();
    for r in j..2 * j {
        if r.gcd(&j) == 1 {
            num += pow_i(t, r)?;
        }
    }
    Ok(num / den)
}

/// Logarithm of the reciprocal product with every variable raised to `d`.
fn product_log(q: &Rational, d: usize, order: usize) -> Result<GradedSeries> {
    let mut s = GradedSeries::zero(1, order);
    for j in 1..=order / d {
        for h in 1..=order / (d * j) {
            let t = pow_i(q, (d * h) as i64)?;
            let c = column_sum(j as i64, &t)? / int((j * h) as i64);
            s.add_term(ONE_MONO, d * j * h, c);
        }
    }
    Ok(s)
}

/// The lattice sum `sum_{1 <= m <= n} y^m q^n / m` with every variable raised to `d`.
fn lattice_log(q: &Rational, d: usize, order: usize) -> Result<GradedSeries> {
    let qd = pow_i(q, d as i64)?;
    let den = Rational::one() - &qd;
    if den.is_zero() {
        return domain("lattice sum diverges at this value of z");
    }
    let mut s = GradedSeries::zero(1, order);
    for m in 1..=order / d {
        let c = pow_i(&qd, m as i64)? / (int(m as i64) * &den);
        s.add_term(ONE_MONO, d * m, c);
    }
    Ok(s)
}

fn signed_exp(
    f: impl Fn(usize) -> Result<GradedSeries>,
    sign: SignVariant,
) -> Result<GradedSeries> {
    match sign {
        SignVariant::ReciprocalProduct => f(1)?.exp0(),
        SignVariant::PlainProduct => f(1)?.neg().exp0(),
        SignVariant::PlusProduct => f(1)?.sub(&f(2)?)?.exp0(),
    }
}

pub(super) fn build_sides(spec: &IdentitySpec, q: &Rational, order: usize) -> Result<Sides> {
    if spec.region.kind != ConeKind::TriangleWeak2D || spec.weights != [1, 0] {
        return arg(format!(
            "{}: z can only be fixed for the weak triangle with weights (1, 0)",
            spec.id
        ));
    }
    if !spec.substitutions.is_empty() || !spec.excluded.is_empty() || spec.longhand.is_some() {
        return arg(format!("{}: z = q cannot be combined with other adjustments", spec.id));
    }
    let lhs = signed_exp(|d| product_log(q, d, order), spec.sign)?;
    let middle = signed_exp(|d| lattice_log(q, d, order), spec.sign)?;
    let rhs = match &spec.rhs {
        Some(cf) => Some(cf.evaluate_at_z(q, order)?),
        None => None,
    };
    Ok(Sides {
        lhs,
        middle,
        rhs,
        longhand: None,
        variables: vec!['y'],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn column_sums_by_brute_force() {
        let t = rat(1, 3);
        for j in 1..6i64 {
            let mut direct = Rational::zero();
            for k in j..200 {
                if k.gcd(&j) == 1 {
                    direct += pow_i(&t, k).unwrap();
                }
            }
            let exact = column_sum(j, &t).unwrap();
            let err = crate::arith::to_f64(&(exact - direct)).abs();
            assert!(err < 1e-60, "j={j} err={err}");
        }
    }
}
