//! Closed forms written as `exp` of a sum of logarithm groups.
//!
//! A group contributes
//! `prod_k 1/(1 - z^k) * [sum_t c_t * log(1 - m_t) + sum_p p] / prod_d (1 - x^d)`
//! where each `c_t` is a Laurent polynomial free of `z`. The division by the
//! `(1 - x^d)` factors is performed exactly on every z-layer.

use num_traits::{One, Zero};

use crate::arith::{pow_i, Rational};
use crate::error::{arg, domain, Result, VpvError};
use crate::poly::{mono_scale, parse_poly, parse_term, Mono, Poly, Term, ONE_MONO};
use crate::series::GradedSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogTerm {
    pub coeff: Poly,
    /// The `m` in `log(1 - m)`; may carry a rational scalar.
    pub arg: Term,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LogGroup {
    pub divisors: Vec<Mono>,
    pub z_divisors: Vec<usize>,
    pub logs: Vec<LogTerm>,
    pub plain: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub nvars: usize,
    pub groups: Vec<LogGroup>,
}

impl ClosedForm {
    pub fn new(nvars: usize) -> Self {
        Self {
            nvars,
            groups: Vec::new(),
        }
    }

    /// Adds a group from text: divisor monomials, `z`-power divisors,
    /// `(coefficient, log argument)` pairs and plain terms.
    pub fn group(
        mut self,
        divisors: &[&str],
        z_divisors: &[usize],
        logs: &[(&str, &str)],
        plain: &[&str],
    ) -> Result<Self> {
        let mut g = LogGroup {
            z_divisors: z_divisors.to_vec(),
            ..LogGroup::default()
        };
        for d in divisors {
            let t = parse_term(d, self.nvars)?;
            if t.zexp != 0 || !t.coeff.is_one() {
                return Err(VpvError::Parse(format!(
                    "divisor `{d}` must be a bare monomial free of z"
                )));
            }
            g.divisors.push(t.mono);
        }
        for (c, a) in logs {
            let arg = parse_term(a, self.nvars)?;
            if arg.zexp < 1 {
                return Err(VpvError::Parse(format!(
                    "log argument `{a}` needs positive z-degree"
                )));
            }
            g.logs.push(LogTerm {
                coeff: parse_poly(c, self.nvars)?,
                arg,
            });
        }
        for p in plain {
            let t = parse_term(p, self.nvars)?;
            if t.zexp < 1 {
                return Err(VpvError::Parse(format!(
                    "plain term `{p}` needs positive z-degree"
                )));
            }
            g.plain.push(t);
        }
        self.groups.push(g);
        Ok(self)
    }

    pub fn concat(mut self, other: &ClosedForm) -> Self {
        self.groups.extend(other.groups.iter().cloned());
        self
    }

    pub fn negate(&self) -> Self {
        let mut out = self.clone();
        for g in out.groups.iter_mut() {
            for t in g.logs.iter_mut() {
                t.coeff = t.coeff.neg();
            }
            for p in g.plain.iter_mut() {
                p.coeff = -p.coeff.clone();
            }
        }
        out
    }

    /// Replaces every variable `v` by `v^k`.
    pub fn dilate(&self, k: usize) -> Self {
        let dil = |t: &Term| Term {
            coeff: t.coeff.clone(),
            mono: mono_scale(&t.mono, k as i16),
            zexp: t.zexp * k as i64,
        };
        let mut out = self.clone();
        for g in out.groups.iter_mut() {
            g.divisors = g.divisors.iter().map(|d| mono_scale(d, k as i16)).collect();
            g.z_divisors = g.z_divisors.iter().map(|z| z * k).collect();
            for t in g.logs.iter_mut() {
                t.coeff = t.coeff.dilate(k as i16);
                t.arg = dil(&t.arg);
                t.arg.coeff = num_traits::pow(t.arg.coeff.clone(), k);
            }
            for p in g.plain.iter_mut() {
                *p = Term {
                    coeff: p.coeff.clone(),
                    ..dil(p)
                };
            }
        }
        out
    }

    /// The closed form of the `(1 + m)` product built from the closed form
    /// of the reciprocal `1/(1 - m)` product.
    pub fn plus_from_reciprocal(&self) -> Self {
        self.clone().concat(&self.dilate(2).negate())
    }

    /// The logarithm of the closed form as a series.
    pub fn log_series(&self, order: usize) -> Result<GradedSeries> {
        let mut total = GradedSeries::zero(self.nvars, order);
        for g in &self.groups {
            let mut acc = GradedSeries::zero(self.nvars, order);
            for t in &g.logs {
                let base = GradedSeries::one(self.nvars, order).sub(&GradedSeries::monomial(
                    self.nvars,
                    order,
                    t.arg.coeff.clone(),
                    t.arg.mono,
                    t.arg.zexp as usize,
                ))?;
                acc = acc.add(&base.log1()?.mul_poly(&t.coeff))?;
            }
            for p in &g.plain {
                acc.add_term(p.mono, p.zexp as usize, p.coeff.clone());
            }
            let mut acc = acc.div_layers(&g.divisors)?;
            for &k in &g.z_divisors {
                acc = acc.div_one_minus_z(k);
            }
            total = total.add(&acc)?;
        }
        Ok(total)
    }

    pub fn evaluate(&self, order: usize) -> Result<GradedSeries> {
        self.log_series(order)?.exp0()
    }

    /// Evaluates a two-variable form at `z = q`, regraded by powers of `y`.
    pub fn evaluate_at_z(&self, q: &Rational, order: usize) -> Result<GradedSeries> {
        if self.nvars != 2 {
            return arg("regrading needs a two-variable closed form");
        }
        let mut total = GradedSeries::zero(1, order);
        for g in &self.groups {
            if !g.divisors.is_empty() {
                return arg("regrading does not support divisors in y");
            }
            let mut acc = GradedSeries::zero(1, order);
            for t in &g.logs {
                let a = t.arg.mono[0];
                if a < 1 {
                    return domain("regraded log argument needs a positive power of y");
                }
                let c = &t.arg.coeff * pow_i(q, t.arg.zexp)?;
                let base = GradedSeries::one(1, order).sub(&GradedSeries::monomial(
                    1,
                    order,
                    c,
                    ONE_MONO,
                    a as usize,
                ))?;
                acc = acc.add(&base.log1()?.mul(&poly_in_y(&t.coeff, order)?)?)?;
            }
            for p in &g.plain {
                let a = p.mono[0];
                if a < 1 {
                    return domain("regraded plain term needs a positive power of y");
                }
                acc.add_term(ONE_MONO, a as usize, &p.coeff * pow_i(q, p.zexp)?);
            }
            for &k in &g.z_divisors {
                let f = (Rational::one() - pow_i(q, k as i64)?).recip();
                acc = acc.scale(&f);
            }
            total = total.add(&acc)?;
        }
        total.exp0()
    }
}

/// A polynomial in `y` reread as a univariate series graded by `y`.
fn poly_in_y(p: &Poly, order: usize) -> Result<GradedSeries> {
    let mut s = GradedSeries::zero(1, order);
    for (m, c) in p.iter() {
        if m[0] < 0 {
            return domain("negative power of y while regrading");
        }
        s.add_term(ONE_MONO, m[0] as usize, c.clone());
    }
    Ok(s)
}

/// `prod (1 - c m)^{e}` over a factor list, multiplied in place layer by layer.
pub fn product_of_factors(
    nvars: usize,
    order: usize,
    factors: &[(Term, Rational)],
) -> Result<GradedSeries> {
    let mut acc = GradedSeries::one(nvars, order);
    for (t, e) in factors {
        multiply_binomial_in_place(&mut acc, &t.coeff, &t.mono, t.zexp, e)?;
    }
    Ok(acc)
}

/// `acc *= (1 - c x^mono z^k)^alpha`, truncated; layers are updated from the
/// top down so each step reads only unmodified lower layers.
pub fn multiply_binomial_in_place(
    acc: &mut GradedSeries,
    c: &Rational,
    mono: &Mono,
    k: i64,
    alpha: &Rational,
) -> Result<()> {
    if k < 1 {
        return domain("factor needs positive z-degree");
    }
    let k = k as usize;
    let order = acc.order();
    if k > order || alpha.is_zero() {
        return Ok(());
    }
    let imax = order / k;
    let mut coeffs = Vec::with_capacity(imax + 1);
    let mut binom = Rational::one();
    let neg_c = -c.clone();
    let mut pow = Rational::one();
    for i in 0..=imax {
        coeffs.push(&binom * &pow);
        binom = binom * (alpha - Rational::from_integer((i as i64).into()))
            / Rational::from_integer((i as i64 + 1).into());
        pow *= &neg_c;
    }
    let shifts: Vec<Mono> = (0..=imax).map(|i| mono_scale(mono, i as i16)).collect();
    for n in (k..=order).rev() {
        let mut add = Poly::zero();
        for i in 1..=n / k {
            add.add_scaled_shifted(acc.layer(n - i * k), &coeffs[i], &shifts[i]);
        }
        acc.layer_mut(n).add_assign(&add);
    }
    Ok(())
}
