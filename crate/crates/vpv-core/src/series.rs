//! Truncated multivariate Laurent series graded by the last variable `z`.
//!
//! Layer `n` holds the coefficient of `z^n` as a [`Poly`] in the remaining
//! variables. Truncation is by z-degree only.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, int, parse_rational, rational_binomial, Rational};
use crate::error::{arg, domain, integrity, Result, VpvError};
use crate::poly::{parse_term, var_names, Mono, Poly, MAX_VARS, ONE_MONO};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSeries {
    nvars: usize,
    order: usize,
    layers: Vec<Poly>,
    cone: bool,
}

/// One coefficient in canonical serialized form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub exponents: Vec<i64>,
    pub coeff: String,
}

/// First coefficient at which two series disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Difference {
    pub exponents: Vec<i64>,
    pub left: String,
    pub right: String,
}

impl GradedSeries {
    pub fn zero(nvars: usize, order: usize) -> Self {
        assert!(
            (1..=MAX_VARS + 1).contains(&nvars),
            "unsupported variable count {nvars}"
        );
        Self {
            nvars,
            order,
            layers: vec![Poly::zero(); order + 1],
            cone: false,
        }
    }

    pub fn one(nvars: usize, order: usize) -> Self {
        let mut s = Self::zero(nvars, order);
        s.layers[0] = Poly::one();
        s
    }

    /// `c * x^mono * z^zexp`, dropped if `zexp > order`.
    pub fn monomial(nvars: usize, order: usize, c: Rational, mono: Mono, zexp: usize) -> Self {
        let mut s = Self::zero(nvars, order);
        if zexp <= order {
            s.layers[zexp].add_term(mono, c);
        }
        s
    }

    /// Parses a sum of monomials such as `1 - yz + y^2z^2/2`.
    pub fn parse(text: &str, nvars: usize, order: usize) -> Result<Self> {
        let mut s = Self::zero(nvars, order);
        for piece in crate::poly::split_terms(text) {
            let t = parse_term(&piece, nvars)?;
            if t.zexp < 0 {
                return Err(VpvError::Parse(format!("negative z-degree in `{piece}`")));
            }
            s.add_term(t.mono, t.zexp as usize, t.coeff);
        }
        Ok(s)
    }

    /// Builds from per-layer polynomials; missing layers are zero.
    pub fn from_layers(nvars: usize, order: usize, layers: Vec<Poly>) -> Self {
        let mut s = Self::zero(nvars, order);
        for (n, p) in layers.into_iter().enumerate().take(order + 1) {
            s.layers[n] = p;
        }
        s
    }

    /// A univariate series from its coefficient list.
    pub fn univariate(order: usize, coeffs: &[Rational]) -> Self {
        let mut s = Self::zero(1, order);
        for (n, c) in coeffs.iter().enumerate().take(order + 1) {
            s.layers[n].add_term(ONE_MONO, c.clone());
        }
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn layer(&self, n: usize) -> &Poly {
        &self.layers[n]
    }

    pub fn layers(&self) -> &[Poly] {
        &self.layers
    }

    pub fn layer_mut(&mut self, n: usize) -> &mut Poly {
        &mut self.layers[n]
    }

    pub fn is_cone(&self) -> bool {
        self.cone
    }

    pub fn coeff(&self, mono: &Mono, zexp: usize) -> Rational {
        if zexp > self.order {
            return Rational::zero();
        }
        self.layers[zexp].coeff(mono)
    }

    /// Coefficient of a univariate series.
    pub fn coeff_z(&self, zexp: usize) -> Rational {
        self.coeff(&ONE_MONO, zexp)
    }

    pub fn add_term(&mut self, mono: Mono, zexp: usize, c: Rational) {
        if zexp <= self.order {
            self.layers[zexp].add_term(mono, c);
        }
    }

    pub fn term_count(&self) -> usize {
        self.layers.iter().map(Poly::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.layers.iter().all(Poly::is_zero)
    }

    /// True if every term satisfies `|e_i| <= e_z`.
    pub fn satisfies_cone(&self) -> bool {
        self.layers
            .iter()
            .enumerate()
            .all(|(n, p)| p.max_abs_exponent() as usize <= n)
    }

    /// Marks the series as cone-constrained after checking the bound.
    pub fn into_cone(mut self) -> Result<Self> {
        if !self.satisfies_cone() {
            return integrity("series violates the cone bound |e_i| <= e_z");
        }
        self.cone = true;
        Ok(self)
    }

    pub fn without_cone(mut self) -> Self {
        self.cone = false;
        self
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars || self.order != other.order {
            return arg(format!(
                "shape mismatch: ({} vars, order {}) vs ({} vars, order {})",
                self.nvars, self.order, other.nvars, other.order
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.layers.iter_mut().zip(&other.layers) {
            a.add_assign(b);
        }
        out.cone = self.cone && other.cone;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (a, b) in out.layers.iter_mut().zip(&other.layers) {
            a.sub_assign(b);
        }
        out.cone = self.cone && other.cone;
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        for p in out.layers.iter_mut() {
            *p = p.scale(c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    /// Multiplies every layer by a polynomial free of `z`.
    pub fn mul_poly(&self, p: &Poly) -> Self {
        let mut out = self.clone();
        for l in out.layers.iter_mut() {
            *l = l.mul(p);
        }
        out.cone = false;
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = Self::zero(self.nvars, self.order);
        for (i, a) in self.layers.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.layers.iter().enumerate().take(self.order + 1 - i) {
                if !b.is_zero() {
                    a.mul_add_into(b, &Rational::one(), &mut out.layers[i + j]);
                }
            }
        }
        if self.cone && other.cone {
            if !out.satisfies_cone() {
                return integrity("cone bound lost in multiplication");
            }
            out.cone = true;
        }
        Ok(out)
    }

    fn constant_term(&self) -> Option<Rational> {
        self.layers[0].as_constant()
    }

    /// `log(a)` for `a` with constant term 1, via `n L_n = n a_n - sum k L_k a_{n-k}`.
    pub fn log1(&self) -> Result<Self> {
        if self.constant_term() != Some(Rational::one()) {
            return domain("log1 needs constant term 1");
        }
        let mut out = Self::zero(self.nvars, self.order);
        for n in 1..=self.order {
            let mut acc = self.layers[n].scale(&int(n as i64));
            for k in 1..n {
                out.layers[k].mul_add_into(&self.layers[n - k], &int(-(k as i64)), &mut acc);
            }
            out.layers[n] = acc.scale(&Rational::new(1.into(), (n as i64).into()));
        }
        Ok(out)
    }

    /// `exp(a)` for `a` with zero constant term, via `n c_n = sum k a_k c_{n-k}`.
    pub fn exp0(&self) -> Result<Self> {
        if !self.layers[0].is_zero() {
            return domain("exp0 needs zero constant term");
        }
        let mut out = Self::one(self.nvars, self.order);
        for n in 1..=self.order {
            let mut acc = Poly::zero();
            for k in 1..=n {
                if self.layers[k].is_zero() {
                    continue;
                }
                self.layers[k].mul_add_into(&out.layers[n - k], &int(k as i64), &mut acc);
            }
            out.layers[n] = acc.scale(&Rational::new(1.into(), (n as i64).into()));
        }
        Ok(out)
    }

    /// Multiplicative inverse; the constant term must be a nonzero scalar.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = match self.constant_term() {
            Some(c) if !c.is_zero() => c,
            _ => return domain("inverse needs a nonzero scalar constant term"),
        };
        let inv0 = c0.recip();
        let mut out = Self::zero(self.nvars, self.order);
        out.layers[0] = Poly::constant(inv0.clone());
        for n in 1..=self.order {
            let mut acc = Poly::zero();
            for k in 1..=n {
                self.layers[k].mul_add_into(&out.layers[n - k], &-inv0.clone(), &mut acc);
            }
            out.layers[n] = acc;
        }
        out.cone = self.cone;
        Ok(out)
    }

    pub fn pow_rational(&self, alpha: &Rational) -> Result<Self> {
        let log = self.log1()?;
        let mut out = log.scale(alpha).exp0()?;
        out.cone = self.cone;
        Ok(out)
    }

    /// `exp(g * log(a) / prod (1 - x^d))` with each layer divided exactly.
    pub fn pow_series(&self, g: &Self, divisors: &[Mono]) -> Result<Self> {
        let prod = g.mul(&self.log1()?)?;
        prod.div_layers(divisors)?.exp0()
    }

    /// Divides every layer exactly by `prod (1 - x^d)`.
    pub fn div_layers(&self, divisors: &[Mono]) -> Result<Self> {
        let mut out = self.clone();
        out.cone = false;
        for d in divisors {
            for l in out.layers.iter_mut() {
                *l = l.div_one_minus(d)?;
            }
        }
        Ok(out)
    }

    /// Multiplies by `1 / (1 - z^k)`.
    pub fn div_one_minus_z(&self, k: usize) -> Self {
        assert!(k >= 1);
        let mut out = self.clone();
        for n in k..=self.order {
            let prev = out.layers[n - k].clone();
            out.layers[n].add_assign(&prev);
        }
        out.cone = false;
        out
    }

    /// Replaces `x_i -> x_i^k` for every variable including `z`.
    pub fn dilate(&self, k: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.order);
        for (n, p) in self.layers.iter().enumerate() {
            if n * k <= self.order {
                out.layers[n * k] = p.dilate(k as i16);
            }
        }
        out
    }

    /// Sets non-graded variable `var` to `value` and drops it.
    pub fn substitute(&self, var: usize, value: &Rational) -> Result<Self> {
        if var + 1 >= self.nvars {
            return arg(format!(
                "variable index {var} is not a non-graded variable of a {}-variable series",
                self.nvars
            ));
        }
        let mut out = Self::zero(self.nvars - 1, self.order);
        for (n, p) in self.layers.iter().enumerate() {
            out.layers[n] = p.substitute(var, value)?;
        }
        out.cone = self.cone;
        Ok(out)
    }

    /// Applies several substitutions given as `(name, value)`; indices are
    /// resolved against the original variable names.
    pub fn substitute_named(&self, subs: &[(char, Rational)]) -> Result<Self> {
        let mut names = var_names(self.nvars);
        let mut out = self.clone();
        for (name, value) in subs {
            let Some(pos) = names.iter().position(|c| c == name) else {
                return arg(format!("no variable `{name}` in this series"));
            };
            if pos + 1 == names.len() {
                return arg("the graded variable cannot be substituted here");
            }
            out = out.substitute(pos, value)?;
            names.remove(pos);
        }
        Ok(out)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut out = Self::zero(self.nvars, order);
        for n in 0..=order.min(self.order) {
            out.layers[n] = self.layers[n].clone();
        }
        out.cone = self.cone;
        out
    }

    /// All terms, sorted lexicographically by full exponent vector with `z` last.
    pub fn terms(&self) -> Vec<(Vec<i64>, Rational)> {
        let k = self.nvars - 1;
        let mut v: Vec<(Vec<i64>, Rational)> = Vec::with_capacity(self.term_count());
        for (n, p) in self.layers.iter().enumerate() {
            for (m, c) in p.iter() {
                let mut e: Vec<i64> = m[..k].iter().map(|&x| x as i64).collect();
                e.push(n as i64);
                v.push((e, c.clone()));
            }
        }
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn to_terms(&self) -> Vec<SeriesTerm> {
        self.terms()
            .into_iter()
            .map(|(exponents, c)| SeriesTerm {
                exponents,
                coeff: format_rational(&c),
            })
            .collect()
    }

    pub fn from_terms(nvars: usize, order: usize, terms: &[SeriesTerm]) -> Result<Self> {
        let mut s = Self::zero(nvars, order);
        for t in terms {
            if t.exponents.len() != nvars {
                return arg("term has the wrong number of exponents");
            }
            let z = t.exponents[nvars - 1];
            if z < 0 {
                return arg("negative z-degree");
            }
            let m = crate::poly::mono_from_slice(&t.exponents[..nvars - 1])?;
            s.add_term(m, z as usize, parse_rational(&t.coeff)?);
        }
        Ok(s)
    }

    /// Lexicographically first exponent vector where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<Difference> {
        let a = self.terms();
        let b = other.terms();
        let (mut i, mut j) = (0, 0);
        let zero = Rational::zero();
        loop {
            let (ea, eb) = (a.get(i), b.get(j));
            let (key, ca, cb) = match (ea, eb) {
                (None, None) => return None,
                (Some((ka, va)), None) => (ka.clone(), va, &zero),
                (None, Some((kb, vb))) => (kb.clone(), &zero, vb),
                (Some((ka, va)), Some((kb, vb))) => match ka.cmp(kb) {
                    std::cmp::Ordering::Less => (ka.clone(), va, &zero),
                    std::cmp::Ordering::Greater => (kb.clone(), &zero, vb),
                    std::cmp::Ordering::Equal => {
                        i += 1;
                        j += 1;
                        if va == vb {
                            continue;
                        }
                        (ka.clone(), va, vb)
                    }
                },
            };
            if ca.is_zero() && !cb.is_zero() {
                return Some(Difference {
                    exponents: key,
                    left: "0".into(),
                    right: format_rational(cb),
                });
            }
            if cb.is_zero() && !ca.is_zero() {
                return Some(Difference {
                    exponents: key,
                    left: format_rational(ca),
                    right: "0".into(),
                });
            }
            return Some(Difference {
                exponents: key,
                left: format_rational(ca),
                right: format_rational(cb),
            });
        }
    }

    /// Human-readable form, lowest z-degree first.
    pub fn pretty(&self) -> String {
        self.pretty_named(&var_names(self.nvars))
    }

    /// Like [`pretty`](Self::pretty) with caller-chosen variable names,
    /// graded variable last.
    pub fn pretty_named(&self, names: &[char]) -> String {
        assert_eq!(names.len(), self.nvars, "one name per variable");
        let inner = &names[..self.nvars - 1];
        let z = names[self.nvars - 1];
        let mut parts = Vec::new();
        for (n, p) in self.layers.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let zpart = match n {
                0 => String::new(),
                1 => z.to_string(),
                _ => format!("{z}^{n}"),
            };
            let body = p.pretty(inner);
            let piece = match (n, p.len(), p.as_constant()) {
                (0, _, _) => body,
                (_, _, Some(c)) if c.is_one() => zpart,
                (_, _, Some(c)) if c == int(-1) => format!("-{zpart}"),
                (_, 1, _) => format!("{body}*{zpart}"),
                _ => format!("({body})*{zpart}"),
            };
            parts.push(piece);
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut s = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(rest);
            } else {
                s.push_str(" + ");
                s.push_str(p);
            }
        }
        s
    }
}

/// `(1 - c x^m z^k)^alpha` by the binomial series.
pub fn binomial_power(
    nvars: usize,
    order: usize,
    c: &Rational,
    mono: &Mono,
    zexp: usize,
    alpha: &Rational,
) -> Result<GradedSeries> {
    if zexp == 0 {
        return domain("binomial base must have positive z-degree");
    }
    let mut s = GradedSeries::zero(nvars, order);
    let mut i = 0usize;
    while i * zexp <= order {
        let coeff = rational_binomial(alpha, i as u32) * num_traits::pow(-c.clone(), i);
        s.add_term(crate::poly::mono_scale(mono, i as i16), i * zexp, coeff);
        i += 1;
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn ser(t: &str, nvars: usize, order: usize) -> GradedSeries {
        GradedSeries::parse(t, nvars, order).unwrap()
    }

    #[test]
    fn small_products() {
        let a = ser("1 + yz", 2, 4);
        let b = ser("1 - yz", 2, 4);
        assert_eq!(a.mul(&b).unwrap(), ser("1 - y^2z^2", 2, 4));
        let g = ser("1 + z + z^2 + z^3", 1, 3);
        assert_eq!(g.mul(&ser("1 - z", 1, 3)).unwrap(), GradedSeries::one(1, 3));
        let p = ser("1 + z + z^2", 1, 2).mul(&ser("1 + z", 1, 2)).unwrap();
        assert_eq!(p, ser("1 + 2z + 2z^2", 1, 2));
        assert!(a.mul(&ser("1", 3, 4)).is_err());
    }

    #[test]
    fn mercator_log() {
        let l = ser("1 - z", 1, 4).log1().unwrap();
        assert_eq!(l, ser("-z - z^2/2 - z^3/3 - z^4/4", 1, 4));
        assert!(GradedSeries::one(2, 3).log1().unwrap().is_zero());
        assert!(ser("2 + z", 1, 3).log1().is_err());
    }

    #[test]
    fn log_of_ratio_second_layer() {
        let a = ser("1 - yz", 2, 3)
            .mul(&ser("1 - z", 2, 3).inverse().unwrap())
            .unwrap();
        let l = a.log1().unwrap();
        assert_eq!(l.layer(2), ser("1/2 - y^2/2", 2, 0).layer(0));
    }

    #[test]
    fn exp_basics() {
        assert_eq!(GradedSeries::zero(2, 3).exp0().unwrap(), GradedSeries::one(2, 3));
        assert!(GradedSeries::one(1, 3).exp0().is_err());
        // exp(-z/(1-z))
        let e = ser("-z", 1, 5).div_one_minus_z(1).exp0().unwrap();
        assert_eq!(e.coeff_z(5), rat(19, 120));
        // exp(z/(1-z^2))
        let e = ser("z", 1, 4).div_one_minus_z(2).exp0().unwrap();
        assert_eq!(e.coeff_z(4), rat(25, 24));
    }

    #[test]
    fn rational_powers() {
        let g = ser("1 - z", 1, 5).pow_rational(&int(-1)).unwrap();
        assert_eq!(g, ser("1 + z + z^2 + z^3 + z^4 + z^5", 1, 5));
        let h = ser("1 - yz^2", 2, 4).pow_rational(&rat(1, 2)).unwrap();
        assert_eq!(h.layer(2), ser("-y/2", 2, 0).layer(0));
        assert_eq!(
            ser("1 - z", 1, 3).pow_rational(&int(2)).unwrap(),
            ser("1 - 2z + z^2", 1, 3)
        );
    }

    #[test]
    fn series_exponent_with_exact_division() {
        // ((1 - yz)/(1 - z))^(1/(1-y))
        let base = ser("1 - yz", 2, 3)
            .mul(&ser("1 - z", 2, 3).inverse().unwrap())
            .unwrap();
        let d = crate::poly::mono_from_slice(&[1]).unwrap();
        let r = base.pow_series(&GradedSeries::one(2, 3), &[d]).unwrap();
        assert_eq!(r, ser("1 + z + z^2 + yz^2/2 + z^3 + 5yz^3/6 + y^2z^3/3", 2, 3));
        let r0 = base.pow_series(&GradedSeries::zero(2, 3), &[]).unwrap();
        assert_eq!(r0, GradedSeries::one(2, 3));
        // y/(1-y) exponent: linear coefficient y
        let ry = base.pow_series(&ser("y", 2, 3), &[d]).unwrap();
        assert_eq!(ry.layer(1), ser("y", 2, 0).layer(0));
    }

    #[test]
    fn inexact_exponent_division_is_integrity_error() {
        let base = ser("1 - z", 2, 3);
        let d = crate::poly::mono_from_slice(&[1]).unwrap();
        assert!(matches!(
            base.pow_series(&GradedSeries::one(2, 3), &[d]),
            Err(VpvError::Integrity(_))
        ));
    }

    #[test]
    fn cone_flag_checked_on_mul() {
        let a = ser("1 + yz + z/y", 2, 3).into_cone().unwrap();
        let b = a.mul(&a).unwrap();
        assert!(b.is_cone());
        assert!(ser("1 + y^2z", 2, 3).into_cone().is_err());
    }

    #[test]
    fn substitution_and_json() {
        let s = ser("1 + yz + y^2z^2", 2, 2);
        let t = s.substitute_named(&[('y', rat(1, 2))]).unwrap();
        assert_eq!(t, ser("1 + z/2 + z^2/4", 1, 2));
        let terms = s.to_terms();
        assert_eq!(terms[1].exponents, vec![1, 1]);
        assert_eq!(GradedSeries::from_terms(2, 2, &terms).unwrap(), s);
    }

    #[test]
    fn first_difference_reports_both_sides() {
        let a = ser("1 + z + 2z^2", 1, 3);
        let b = ser("1 + z + z^2", 1, 3);
        let d = a.first_difference(&b).unwrap();
        assert_eq!(d.exponents, vec![2]);
        assert_eq!((d.left.as_str(), d.right.as_str()), ("2", "1"));
        assert!(a.first_difference(&a).is_none());
    }

    #[test]
    fn binomial_route_matches_log_route() {
        let m = crate::poly::mono_from_slice(&[2, -1]).unwrap();
        let alpha = rat(-2, 3);
        let direct = binomial_power(3, 6, &int(1), &m, 2, &alpha).unwrap();
        let base = GradedSeries::one(3, 6)
            .sub(&GradedSeries::monomial(3, 6, int(1), m, 2))
            .unwrap();
        assert_eq!(direct, base.pow_rational(&alpha).unwrap());
    }

    #[test]
    fn pretty_form() {
        let s = ser("1 + yz - y^2z^2/2 + z^2", 2, 2);
        assert_eq!(s.pretty(), "1 + y*z + (-1/2*y^2 + 1)*z^2");
    }
}
