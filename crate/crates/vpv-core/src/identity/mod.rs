//! Identity catalog and the three builders: the product over visible points,
//! the exponential of the weighted lattice sum, and the closed form.

pub mod catalog;
pub mod recipe;
mod regraded;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, int, pow_i, Rational};
use crate::error::{arg, integrity, Result};
use crate::lattice::{visible_points, Bounds, ConeKind, ConeRegion};
use crate::poly::{mono_from_slice, parse_term, var_names, Mono, Poly, Term};
use crate::series::{Difference, GradedSeries, SeriesTerm};

pub use catalog::{catalog, lookup};
pub use recipe::ClosedForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignVariant {
    /// `prod (1 - m)^{-w}`
    #[serde(rename = "reciprocal")]
    ReciprocalProduct,
    /// `prod (1 - m)^{w}`
    #[serde(rename = "plain")]
    PlainProduct,
    /// `prod (1 + m)^{w}`
    #[serde(rename = "plus")]
    PlusProduct,
}

impl SignVariant {
    pub fn name(self) -> &'static str {
        match self {
            SignVariant::ReciprocalProduct => "reciprocal",
            SignVariant::PlainProduct => "plain",
            SignVariant::PlusProduct => "plus",
        }
    }

    /// Turns the closed form of the reciprocal product into this variant's.
    pub fn transform(self, reciprocal: &ClosedForm) -> ClosedForm {
        match self {
            SignVariant::ReciprocalProduct => reciprocal.clone(),
            SignVariant::PlainProduct => reciprocal.negate(),
            SignVariant::PlusProduct => reciprocal.plus_from_reciprocal(),
        }
    }
}

/// Where the closed form of an entry comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RhsSource {
    /// Transcribed from the printed identity.
    Printed,
    /// Derived from the cone by inclusion-exclusion over the box corners.
    Generic,
    /// No closed form is available for these weights.
    None,
}

/// Printed coefficients to compare against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GoldenSeries {
    /// Series text in the variables left after substitution.
    Text(String),
    /// `sum_n p_n(vars) z^n / n!` with the numerators as text.
    Egf(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Golden {
    pub label: String,
    pub series: GoldenSeries,
    /// Highest graded degree covered by the printed values; `None` means the
    /// printed value is exact to every order.
    pub order: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentitySpec {
    pub id: String,
    pub description: String,
    pub region: ConeRegion,
    pub weights: Vec<i64>,
    pub sign: SignVariant,
    pub rhs: Option<ClosedForm>,
    pub rhs_source: RhsSource,
    pub substitutions: Vec<(char, Rational)>,
    /// Evaluate at `z = q` and grade by `y` instead.
    pub regrade: Option<Rational>,
    pub excluded: Vec<Vec<i64>>,
    /// Explicit factors `(monomial, k)` standing for `(1 - monomial)^{1/k}`.
    pub longhand: Option<Vec<(String, i64)>>,
    pub goldens: Vec<Golden>,
    pub default_order: usize,
    pub notes: Vec<String>,
}

impl IdentitySpec {
    pub fn nvars(&self) -> usize {
        self.region.dim
    }

    pub fn validate(&self) -> Result<()> {
        if self.weights.len() != self.region.dim {
            return arg(format!(
                "{}: {} weights for a {}-dimensional region",
                self.id,
                self.weights.len(),
                self.region.dim
            ));
        }
        if self.weights.iter().sum::<i64>() != 1 {
            return arg(format!("{}: weights must sum to 1", self.id));
        }
        if let Some(rhs) = &self.rhs {
            if rhs.nvars != self.nvars() {
                return integrity(format!("{}: closed form has the wrong arity", self.id));
            }
        }
        for p in &self.excluded {
            if !self.region.contains(p) {
                return integrity(format!("{}: excluded point {p:?} is not in the region", self.id));
            }
        }
        Ok(())
    }

    /// Weight `prod a_i^{-b_i}` of a lattice point.
    pub fn point_weight(&self, p: &[i64]) -> Result<Rational> {
        let mut w = Rational::one();
        for (&a, &b) in p.iter().zip(&self.weights) {
            w *= component_weight(a, b)?;
        }
        Ok(w)
    }

    /// Applies user overrides and returns the adjusted entry.
    pub fn with_options(&self, opts: &VerifyOptions) -> Result<IdentitySpec> {
        let mut spec = self.clone();
        if let Some(d) = opts.dim {
            if d != spec.region.dim {
                spec.region = ConeRegion::new(spec.region.kind, d)?;
                spec.weights = unit_weights(d);
                spec.rhs = None;
                spec.rhs_source = RhsSource::None;
                spec.excluded.clear();
                spec.longhand = None;
                spec.goldens.clear();
            }
        }
        if let Some(w) = &opts.weights {
            if *w != spec.weights {
                spec.weights = w.clone();
                spec.rhs = None;
                spec.rhs_source = RhsSource::None;
                spec.goldens.clear();
            }
        }
        if spec.rhs.is_none() {
            if let Some(g) = generic_closed_form(&spec.region, &spec.weights, spec.sign)? {
                spec.rhs = Some(g);
                spec.rhs_source = RhsSource::Generic;
            }
        }
        let names = var_names(spec.nvars());
        let z = names[names.len() - 1];
        if !opts.substitutions.is_empty() {
            // printed series were taken at the entry's own values
            spec.goldens.clear();
        }
        for (c, v) in &opts.substitutions {
            if *c == z {
                spec.regrade = Some(v.clone());
            } else {
                spec.substitutions.retain(|(d, _)| d != c);
                spec.substitutions.push((*c, v.clone()));
            }
        }
        spec.validate()?;
        Ok(spec)
    }
}

/// `a^{-b}` with `0^0 = 1`; a zero coordinate with negative `b` weighs 0.
pub fn component_weight(a: i64, b: i64) -> Result<Rational> {
    match (a, b.signum()) {
        (0, 1) => integrity("a zero coordinate carries a positive weight exponent"),
        (0, 0) => Ok(Rational::one()),
        (0, _) => Ok(Rational::zero()),
        _ => pow_i(&int(a), -b),
    }
}

/// `(0, ..., 0, 1)`
pub fn unit_weights(dim: usize) -> Vec<i64> {
    let mut w = vec![0; dim];
    w[dim - 1] = 1;
    w
}

fn point_mono(p: &[i64]) -> Result<(Mono, usize)> {
    let n = p.len();
    Ok((mono_from_slice(&p[..n - 1])?, p[n - 1] as usize))
}

/// The product side over the visible points of the region, before any
/// substitution.
pub fn build_lhs_product(spec: &IdentitySpec, order: usize) -> Result<GradedSeries> {
    if order < 1 {
        return arg("order must be at least 1");
    }
    spec.validate()?;
    let mut acc = GradedSeries::one(spec.nvars(), order);
    for p in visible_points(&spec.region, order as i64)? {
        if spec.excluded.contains(&p) {
            continue;
        }
        let w = spec.point_weight(&p)?;
        if w.is_zero() {
            continue;
        }
        let (mono, k) = point_mono(&p)?;
        let (c, alpha) = match spec.sign {
            SignVariant::ReciprocalProduct => (Rational::one(), -w),
            SignVariant::PlainProduct => (Rational::one(), w),
            SignVariant::PlusProduct => (-Rational::one(), w),
        };
        recipe::multiply_binomial_in_place(&mut acc, &c, &mono, k as i64, &alpha)?;
    }
    acc.into_cone()
}

/// `sum_p w(p) x^p` over all lattice points of the region, which is the
/// logarithm of the reciprocal product.
pub fn lattice_log_sum(spec: &IdentitySpec, order: usize) -> Result<GradedSeries> {
    spec.validate()?;
    let dim = spec.nvars();
    let bounds = spec.region.bounds();
    let mut m = GradedSeries::zero(dim, order);
    for n in 1..=order as i64 {
        let mut layer = Poly::constant(component_weight(n, spec.weights[dim - 1])?);
        for i in 0..dim - 1 {
            let mut block = Poly::zero();
            for j in bounds.range(n) {
                let c = component_weight(j, spec.weights[i])?;
                if c.is_zero() {
                    continue;
                }
                let mut e = vec![0i64; dim - 1];
                e[i] = j;
                block.add_term(mono_from_slice(&e)?, c);
            }
            layer = layer.mul(&block);
        }
        *m.layer_mut(n as usize) = layer;
    }
    for p in &spec.excluded {
        let w = spec.point_weight(p)?;
        let (mono, k) = point_mono(p)?;
        for h in 1..=order / k {
            let hm = crate::poly::mono_scale(&mono, h as i16);
            m.add_term(hm, h * k, -(&w / int(h as i64)));
        }
    }
    Ok(m)
}

fn apply_sign(log_recip: &GradedSeries, sign: SignVariant) -> Result<GradedSeries> {
    match sign {
        SignVariant::ReciprocalProduct => log_recip.exp0(),
        SignVariant::PlainProduct => log_recip.neg().exp0(),
        SignVariant::PlusProduct => log_recip.sub(&log_recip.dilate(2))?.exp0(),
    }
}

/// The exponential of the weighted lattice sum.
pub fn build_middle_exp_form(spec: &IdentitySpec, order: usize) -> Result<GradedSeries> {
    if order < 1 {
        return arg("order must be at least 1");
    }
    apply_sign(&lattice_log_sum(spec, order)?, spec.sign)?.into_cone()
}

/// The closed form adjusted for excluded points, if the entry has one.
pub fn effective_closed_form(spec: &IdentitySpec) -> Result<Option<ClosedForm>> {
    let Some(rhs) = &spec.rhs else {
        return Ok(None);
    };
    if spec.excluded.is_empty() {
        return Ok(Some(rhs.clone()));
    }
    let names = var_names(spec.nvars());
    let mut adj = ClosedForm::new(spec.nvars());
    for p in &spec.excluded {
        let w = spec.point_weight(p)?;
        let mut text = String::new();
        for (i, &e) in p.iter().enumerate() {
            if e != 0 {
                text.push_str(&format!("{}^{}", names[i], e));
            }
        }
        adj = adj.group(&[], &[], &[(&format_rational(&w), &text)], &[])?;
    }
    Ok(Some(rhs.clone().concat(&spec.sign.transform(&adj))))
}

/// The closed form side, before any substitution.
pub fn build_rhs_closed_form(spec: &IdentitySpec, order: usize) -> Result<GradedSeries> {
    if order < 1 {
        return arg("order must be at least 1");
    }
    match effective_closed_form(spec)? {
        Some(cf) => cf.evaluate(order),
        None => arg(format!("{} has no closed form for these weights", spec.id)),
    }
}

/// The explicit factor list, if the entry has one.
pub fn build_longhand(spec: &IdentitySpec, order: usize) -> Result<Option<GradedSeries>> {
    let Some(list) = &spec.longhand else {
        return Ok(None);
    };
    let mut factors = Vec::with_capacity(list.len());
    for (m, k) in list {
        let t: Term = parse_term(m, spec.nvars())?;
        factors.push((t, Rational::new(1.into(), (*k).into())));
    }
    Ok(Some(recipe::product_of_factors(spec.nvars(), order, &factors)?))
}

/// Closed form for weights `(0, ..., 0, 1)` from the corner expansion of
/// `prod_i sum_{j in range(n)} x_i^j`.
pub fn generic_closed_form(
    region: &ConeRegion,
    weights: &[i64],
    sign: SignVariant,
) -> Result<Option<ClosedForm>> {
    let dim = region.dim;
    let k = dim - 1;
    let names = var_names(dim);
    let mono_text = |mask: usize, pow: i64| -> String {
        let mut s = String::new();
        for (i, name) in names.iter().take(k).enumerate() {
            if mask & (1 << i) != 0 && pow != 0 {
                s.push_str(&format!("{name}^{pow}"));
            }
        }
        s
    };
    let all = (1usize << k) - 1;
    let recip = if weights == unit_weights(dim).as_slice() {
        let divisors: Vec<String> = names[..k].iter().map(|c| c.to_string()).collect();
        let mut logs: Vec<(String, String)> = Vec::new();
        for mask in 0..=all {
            let sign = if mask.count_ones() % 2 == 1 { "" } else { "-" };
            let (coef, arg) = match region.bounds() {
                Bounds::Strict => ("1".to_string(), format!("{}z", mono_text(mask, 1))),
                Bounds::Weak => (mono_text(all, 1), format!("{}z", mono_text(mask, 1))),
                Bounds::Symmetric => {
                    let num = mono_text(mask, 1);
                    let den = mono_text(all & !mask, 1);
                    let arg = if den.is_empty() {
                        format!("{num}z")
                    } else {
                        format!("{num}z/{den}")
                    };
                    (if num.is_empty() { "1".into() } else { num }, arg)
                }
            };
            let coef = if coef.is_empty() { "1".into() } else { coef };
            logs.push((format!("{sign}{coef}"), arg));
        }
        let d: Vec<&str> = divisors.iter().map(String::as_str).collect();
        let l: Vec<(&str, &str)> = logs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        ClosedForm::new(dim).group(&d, &[], &l, &[])?
    } else if region.kind == ConeKind::TriangleWeak2D && weights == [1, 0] {
        ClosedForm::new(2).group(&[], &[1], &[("-1", "yz")], &[])?
    } else {
        return Ok(None);
    };
    Ok(Some(sign.transform(&recip)))
}

/// Caller-supplied overrides for a verification run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    pub order: Option<usize>,
    pub substitutions: Vec<(char, Rational)>,
    pub weights: Option<Vec<i64>>,
    pub dim: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    /// The three sides agree but a printed value does not.
    Flagged,
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDifference {
    pub pair: String,
    #[serde(flatten)]
    pub difference: Difference,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenCheck {
    pub label: String,
    pub order: usize,
    pub matches: bool,
    pub first_difference: Option<Difference>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub description: String,
    pub region: String,
    pub weights: Vec<i64>,
    pub sign: SignVariant,
    pub order: usize,
    /// Variable names of the reported series, graded variable last.
    pub variables: Vec<String>,
    pub substitutions: Vec<(String, String)>,
    pub rhs_source: RhsSource,
    pub lhs: Vec<SeriesTerm>,
    pub middle: Vec<SeriesTerm>,
    pub rhs: Option<Vec<SeriesTerm>>,
    pub longhand: Option<Vec<SeriesTerm>>,
    pub lhs_eq_middle: bool,
    pub middle_eq_rhs: Option<bool>,
    pub lhs_eq_rhs: Option<bool>,
    pub lhs_eq_longhand: Option<bool>,
    pub all_equal: bool,
    pub first_difference: Option<PairDifference>,
    pub goldens: Vec<GoldenCheck>,
    pub status: Status,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub series: Option<GradedSeries>,
}

pub fn verify_identity(spec: &IdentitySpec, order: usize) -> Result<VerificationReport> {
    verify_with(
        spec,
        &VerifyOptions {
            order: Some(order),
            ..VerifyOptions::default()
        },
    )
}

/// The four sides of an entry after substitution or regrading.
pub struct Sides {
    pub lhs: GradedSeries,
    pub middle: GradedSeries,
    pub rhs: Option<GradedSeries>,
    pub longhand: Option<GradedSeries>,
    pub variables: Vec<char>,
}

pub fn build_sides(spec: &IdentitySpec, order: usize) -> Result<Sides> {
    if let Some(q) = &spec.regrade {
        return regraded::build_sides(spec, q, order);
    }
    let subs = &spec.substitutions;
    let lhs = build_lhs_product(spec, order)?.substitute_named(subs)?;
    let middle = build_middle_exp_form(spec, order)?.substitute_named(subs)?;
    let rhs = match &spec.rhs {
        Some(_) => Some(build_rhs_closed_form(spec, order)?.substitute_named(subs)?),
        None => None,
    };
    let longhand = match build_longhand(spec, order)? {
        Some(s) => Some(s.substitute_named(subs)?),
        None => None,
    };
    let variables = var_names(spec.nvars())
        .into_iter()
        .filter(|c| !subs.iter().any(|(d, _)| d == c))
        .collect();
    Ok(Sides {
        lhs,
        middle,
        rhs,
        longhand,
        variables,
    })
}

fn golden_series(g: &Golden, nvars: usize, order: usize, rename: &[(char, char)]) -> Result<GradedSeries> {
    let fix = |s: &str| -> String {
        s.chars()
            .map(|c| rename.iter().find(|(a, _)| *a == c).map_or(c, |(_, b)| *b))
            .collect()
    };
    match &g.series {
        GoldenSeries::Text(t) => GradedSeries::parse(&fix(t), nvars, order),
        GoldenSeries::Egf(nums) => {
            let mut s = GradedSeries::zero(nvars, order);
            let mut fact = Rational::one();
            for (n, num) in nums.iter().enumerate().take(order + 1) {
                if n > 0 {
                    fact *= int(n as i64);
                }
                let p = crate::poly::parse_poly(&fix(num), nvars)?;
                *s.layer_mut(n) = p.scale(&fact.recip());
            }
            Ok(s)
        }
    }
}

pub fn verify_with(spec: &IdentitySpec, opts: &VerifyOptions) -> Result<VerificationReport> {
    let spec = spec.with_options(opts)?;
    let order = opts.order.unwrap_or(spec.default_order);
    if order < 1 {
        return arg("order must be at least 1");
    }
    let sides = build_sides(&spec, order)?;
    let mut first: Option<PairDifference> = None;
    let mut cmp = |label: &str, a: &GradedSeries, b: &GradedSeries| -> bool {
        match a.first_difference(b) {
            None => true,
            Some(d) => {
                if first.is_none() {
                    first = Some(PairDifference {
                        pair: label.into(),
                        difference: d,
                    });
                }
                false
            }
        }
    };
    let lhs_eq_middle = cmp("lhs-middle", &sides.lhs, &sides.middle);
    let middle_eq_rhs = sides.rhs.as_ref().map(|r| cmp("middle-rhs", &sides.middle, r));
    let lhs_eq_rhs = sides.rhs.as_ref().map(|r| cmp("lhs-rhs", &sides.lhs, r));
    let lhs_eq_longhand = sides.longhand.as_ref().map(|l| cmp("lhs-longhand", &sides.lhs, l));
    let all_equal = lhs_eq_middle
        && middle_eq_rhs.unwrap_or(true)
        && lhs_eq_rhs.unwrap_or(true)
        && lhs_eq_longhand.unwrap_or(true);

    let nv = sides.lhs.nvars();
    // Printed series use their own variable names; map them onto the
    // names of the remaining slots.
    let rename: Vec<(char, char)> = sides
        .variables
        .iter()
        .zip(var_names(nv))
        .filter(|(a, b)| *a != b)
        .map(|(a, b)| (*a, b))
        .collect();
    let mut goldens = Vec::new();
    for g in &spec.goldens {
        let go = g.order.unwrap_or(order).min(order);
        let printed = golden_series(g, nv, go, &rename)?;
        let diff = sides.lhs.truncate(go).first_difference(&printed);
        goldens.push(GoldenCheck {
            label: g.label.clone(),
            order: go,
            matches: diff.is_none(),
            first_difference: diff,
        });
    }
    let status = if !all_equal {
        Status::Mismatch
    } else if goldens.iter().any(|g| !g.matches) {
        Status::Flagged
    } else {
        Status::Pass
    };
    Ok(VerificationReport {
        id: spec.id.clone(),
        description: spec.description.clone(),
        region: spec.region.to_string(),
        weights: spec.weights.clone(),
        sign: spec.sign,
        order,
        variables: sides.variables.iter().map(|c| c.to_string()).collect(),
        substitutions: spec
            .substitutions
            .iter()
            .map(|(c, v)| (c.to_string(), format_rational(v)))
            .chain(spec.regrade.iter().map(|q| ("z".to_string(), format_rational(q))))
            .collect(),
        rhs_source: spec.rhs_source,
        lhs: sides.lhs.to_terms(),
        middle: sides.middle.to_terms(),
        rhs: sides.rhs.as_ref().map(GradedSeries::to_terms),
        longhand: sides.longhand.as_ref().map(GradedSeries::to_terms),
        lhs_eq_middle,
        middle_eq_rhs,
        lhs_eq_rhs,
        lhs_eq_longhand,
        all_equal,
        first_difference: first,
        goldens,
        status,
        notes: spec.notes.clone(),
        series: Some(sides.lhs),
    })
}
