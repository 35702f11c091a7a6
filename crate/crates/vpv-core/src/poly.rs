//! Sparse Laurent polynomials in the non-graded variables.
//!
//! A [`GradedSeries`](crate::series::GradedSeries) stores one `Poly` per
//! z-degree, so the graded variable never appears in a `Mono`.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{format_rational, int, parse_rational, pow_i, Rational};
use crate::error::{domain, integrity, Result, VpvError};

/// Maximum number of non-graded variables.
pub const MAX_VARS: usize = 6;

/// Exponents of the non-graded variables; unused slots stay zero.
pub type Mono = [i16; MAX_VARS];

pub const ONE_MONO: Mono = [0; MAX_VARS];

pub fn mono_add(a: &Mono, b: &Mono) -> Mono {
    let mut r = *a;
    for (x, y) in r.iter_mut().zip(b) {
        *x += *y;
    }
    r
}

pub fn mono_scale(a: &Mono, k: i16) -> Mono {
    let mut r = *a;
    for x in r.iter_mut() {
        *x *= k;
    }
    r
}

pub fn mono_from_slice(e: &[i64]) -> Result<Mono> {
    if e.len() > MAX_VARS {
        return Err(VpvError::Argument(format!(
            "at most {MAX_VARS} non-graded variables are supported"
        )));
    }
    let mut m = ONE_MONO;
    for (slot, &x) in m.iter_mut().zip(e) {
        *slot = i16::try_from(x)
            .map_err(|_| VpvError::Argument(format!("exponent {x} out of range")))?;
    }
    Ok(m)
}

/// Variable names for an `n`-variable ring, graded variable last.
pub fn var_names(nvars: usize) -> Vec<char> {
    const POOL: [char; 7] = ['t', 'u', 'v', 'w', 'x', 'y', 'z'];
    let n = nvars.clamp(1, POOL.len());
    POOL[POOL.len() - n..].to_vec()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: HashMap<Mono, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(ONE_MONO, c)
    }

    pub fn term(m: Mono, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The scalar value if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&ONE_MONO).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(*m, c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(*m, -c.clone());
        }
    }

    /// `self += c * x^shift * other`
    pub fn add_scaled_shifted(&mut self, other: &Poly, c: &Rational, shift: &Mono) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(mono_add(m, shift), a * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, -a.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        self.mul_add_into(other, &Rational::one(), &mut out);
        out
    }

    /// `out += c * self * other`
    pub fn mul_add_into(&self, other: &Poly, c: &Rational, out: &mut Poly) {
        if c.is_zero() {
            return;
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (ma, a) in &small.terms {
            let ac = a * c;
            for (mb, b) in &large.terms {
                let m = mono_add(ma, mb);
                let v = &ac * b;
                match out.terms.get_mut(&m) {
                    Some(slot) => *slot += v,
                    None => {
                        out.terms.insert(m, v);
                    }
                }
            }
        }
        out.terms.retain(|_, v| !v.is_zero());
    }

    /// Exact quotient by `1 - x^d`.
    ///
    /// Terms are grouped into lines parallel to `d`; along each line the
    /// quotient is a running sum, which must return to zero past the last term.
    pub fn div_one_minus(&self, d: &Mono) -> Result<Poly> {
        let Some(pivot) = d.iter().position(|&x| x != 0) else {
            return domain("division by 1 - 1");
        };
        let step = d[pivot] as i32;
        let mut lines: HashMap<Mono, Vec<(i32, &Rational)>> = HashMap::new();
        for (m, c) in &self.terms {
            let k = (m[pivot] as i32).div_euclid(step);
            let base = sub_mult(m, d, k);
            lines.entry(base).or_default().push((k, c));
        }
        let mut out = Poly::zero();
        for (base, mut pts) in lines {
            pts.sort_by_key(|p| p.0);
            let mut acc = Rational::zero();
            let mut idx = 0;
            let (lo, hi) = (pts[0].0, pts[pts.len() - 1].0);
            for k in lo..=hi {
                if idx < pts.len() && pts[idx].0 == k {
                    acc += pts[idx].1;
                    idx += 1;
                }
                if !acc.is_zero() {
                    out.terms.insert(add_mult(&base, d, k), acc.clone());
                }
            }
            if !acc.is_zero() {
                return integrity(format!(
                    "polynomial not divisible by 1 - {}",
                    fmt_mono(d, &var_names(MAX_VARS + 1))
                ));
            }
        }
        Ok(out)
    }

    /// Sets variable `var` to `value` and removes its slot, shifting later
    /// variables down.
    pub fn substitute(&self, var: usize, value: &Rational) -> Result<Poly> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let f = pow_i(value, m[var] as i64)?;
            let mut nm = ONE_MONO;
            let mut j = 0;
            for (i, &e) in m.iter().enumerate() {
                if i != var {
                    nm[j] = e;
                    j += 1;
                }
            }
            out.add_term(nm, c * f);
        }
        Ok(out)
    }

    /// Replaces every exponent `e` by `k e`.
    pub fn dilate(&self, k: i16) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (mono_scale(m, k), c.clone()))
                .collect(),
        }
    }

    /// Terms sorted by exponent vector.
    pub fn sorted_terms(&self) -> Vec<(Mono, Rational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by_key(|a| a.0);
        v
    }

    pub fn max_abs_exponent(&self) -> i16 {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|e| e.abs()))
            .max()
            .unwrap_or(0)
    }

    pub fn min_exponent(&self) -> i16 {
        self.terms
            .keys()
            .flat_map(|m| m.iter().copied())
            .min()
            .unwrap_or(0)
    }

    /// Formats with the given variable names (graded variable excluded).
    pub fn pretty(&self, names: &[char]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = self.sorted_terms();
        terms.reverse();
        let mut s = String::new();
        for (i, (m, c)) in terms.iter().enumerate() {
            let body = fmt_mono(m, names);
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            match (body.as_str(), mag.is_one()) {
                ("1", _) => s.push_str(&format_rational(&mag)),
                (b, true) => s.push_str(b),
                (b, false) => {
                    s.push_str(&format_rational(&mag));
                    s.push('*');
                    s.push_str(b);
                }
            }
        }
        s
    }
}

fn add_mult(m: &Mono, d: &Mono, k: i32) -> Mono {
    let mut r = *m;
    for (x, y) in r.iter_mut().zip(d) {
        *x = (*x as i32 + k * *y as i32) as i16;
    }
    r
}

fn sub_mult(m: &Mono, d: &Mono, k: i32) -> Mono {
    add_mult(m, d, -k)
}

/// Formats a monomial such as `x*y^2/w`; the empty monomial is `1`.
pub fn fmt_mono(m: &Mono, names: &[char]) -> String {
    let mut num = Vec::new();
    let mut den = Vec::new();
    for (i, &e) in m.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = names.get(i).copied().unwrap_or('?');
        let part = if e.abs() == 1 {
            name.to_string()
        } else {
            format!("{name}^{}", e.abs())
        };
        if e > 0 {
            num.push(part);
        } else {
            den.push(part);
        }
    }
    let n = if num.is_empty() {
        "1".to_string()
    } else {
        num.join("*")
    };
    match den.len() {
        0 => n,
        1 => format!("{n}/{}", den[0]),
        _ => format!("{n}/({})", den.join("*")),
    }
}

/// A signed monomial with a rational coefficient, including the graded
/// exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    pub mono: Mono,
    pub zexp: i64,
}

/// Parses monomial text like `xz/y`, `z/xy`, `-2y^2z^2`, `1/2` or `y/4`.
///
/// Everything after a `/` is denominator. Variable names come from
/// [`var_names`]; the last name is the graded variable.
pub fn parse_term(s: &str, nvars: usize) -> Result<Term> {
    let names = var_names(nvars);
    let bad = |why: &str| VpvError::Parse(format!("monomial `{s}`: {why}"));
    let mut text = s.trim();
    let mut coeff = Rational::one();
    if let Some(rest) = text.strip_prefix('-') {
        coeff = -coeff;
        text = rest.trim_start();
    } else if let Some(rest) = text.strip_prefix('+') {
        text = rest.trim_start();
    }
    let mut exps = vec![0i64; names.len()];
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (text, None),
    };
    for (part, sign) in [(num, 1i64), (den.unwrap_or(""), -1)] {
        let part = part.trim().trim_start_matches('(').trim_end_matches(')');
        let chars: Vec<char> = part.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                let v = parse_rational(&lit)?;
                if sign > 0 {
                    coeff *= v;
                } else {
                    if v.is_zero() {
                        return Err(bad("zero denominator"));
                    }
                    coeff /= v;
                }
            } else if let Some(pos) = names.iter().position(|&n| n == c) {
                i += 1;
                let mut e = 1i64;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let lit: String = chars[start..i].iter().collect();
                    e = lit.parse().map_err(|_| bad("bad exponent"))?;
                }
                exps[pos] += sign * e;
            } else {
                return Err(bad(&format!("unexpected `{c}`")));
            }
        }
    }
    let zexp = exps.pop().unwrap_or(0);
    Ok(Term {
        coeff,
        mono: mono_from_slice(&exps)?,
        zexp,
    })
}

/// Parses a sum of terms such as `y - y^2 + xy/2`; the graded variable
/// must not appear.
pub fn parse_poly(s: &str, nvars: usize) -> Result<Poly> {
    let mut out = Poly::zero();
    for piece in split_terms(s) {
        let t = parse_term(&piece, nvars)?;
        if t.zexp != 0 {
            return Err(VpvError::Parse(format!(
                "graded variable not allowed in coefficient `{s}`"
            )));
        }
        out.add_term(t.mono, t.coeff);
    }
    Ok(out)
}

/// Splits on top-level `+`/`-`, keeping the sign with each piece.
pub fn split_terms(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for c in s.chars() {
        if (c == '+' || c == '-') && !cur.trim().is_empty() && !cur.trim_end().ends_with('/') {
            out.push(cur.trim().to_string());
            cur.clear();
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty(&var_names(MAX_VARS + 1)[..MAX_VARS]))
    }
}

/// `(1 + v + ... + v^r)` in variable slot `var`.
pub fn geometric_block(var: usize, lo: i16, hi: i16) -> Poly {
    let mut p = Poly::zero();
    for j in lo..=hi {
        let mut m = ONE_MONO;
        m[var] = j;
        p.add_term(m, int(1));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn m(e: &[i64]) -> Mono {
        mono_from_slice(e).unwrap()
    }

    #[test]
    fn exact_division_by_one_minus() {
        // (1 - y^3) / (1 - y) = 1 + y + y^2
        let mut p = Poly::one();
        p.add_term(m(&[3]), int(-1));
        let q = p.div_one_minus(&m(&[1])).unwrap();
        assert_eq!(q, geometric_block(0, 0, 2));
    }

    #[test]
    fn laurent_division() {
        // (y^-2 - y^2) / (1 - y) = y^-2 + y^-1 + 1 + y
        let mut p = Poly::zero();
        p.add_term(m(&[-2]), int(1));
        p.add_term(m(&[2]), int(-1));
        let q = p.div_one_minus(&m(&[1])).unwrap();
        assert_eq!(q, geometric_block(0, -2, 1));
    }

    #[test]
    fn negative_direction_division() {
        // (1 - x/y) divides 1 - x^2/y^2
        let d = m(&[1, -1]);
        let mut p = Poly::one();
        p.add_term(m(&[2, -2]), int(-1));
        let q = p.div_one_minus(&d).unwrap();
        let mut expect = Poly::one();
        expect.add_term(d, int(1));
        assert_eq!(q, expect);
    }

    #[test]
    fn inexact_division_fails() {
        let p = Poly::one();
        assert!(matches!(
            p.div_one_minus(&m(&[1])),
            Err(VpvError::Integrity(_))
        ));
    }

    #[test]
    fn term_parsing() {
        let t = parse_term("xz/y", 3).unwrap();
        assert_eq!((t.mono, t.zexp), (m(&[1, -1]), 1));
        let t = parse_term("z/xy", 3).unwrap();
        assert_eq!((t.mono, t.zexp), (m(&[-1, -1]), 1));
        let t = parse_term("-2y^2z^2", 2).unwrap();
        assert_eq!((t.coeff, t.mono, t.zexp), (int(-2), m(&[2]), 2));
        let t = parse_term("z^2/4", 2).unwrap();
        assert_eq!((t.coeff, t.zexp), (rat(1, 4), 2));
        let t = parse_term("1", 4).unwrap();
        assert_eq!((t.coeff, t.mono, t.zexp), (int(1), ONE_MONO, 0));
        assert!(parse_term("q", 2).is_err());
    }

    #[test]
    fn poly_parsing() {
        let p = parse_poly("y - y^2", 2).unwrap();
        assert_eq!(p.coeff(&m(&[1])), int(1));
        assert_eq!(p.coeff(&m(&[2])), int(-1));
        let p = parse_poly("-xy", 3).unwrap();
        assert_eq!(p.coeff(&m(&[1, 1])), int(-1));
        assert!(parse_poly("z", 2).is_err());
    }

    #[test]
    fn substitution_drops_slot() {
        // x y^2 + x^-1 at x = 2 -> 2 y^2 + 1/2
        let mut p = Poly::zero();
        p.add_term(m(&[1, 2]), int(1));
        p.add_term(m(&[-1]), int(1));
        let q = p.substitute(0, &int(2)).unwrap();
        assert_eq!(q.coeff(&m(&[2])), int(2));
        assert_eq!(q.coeff(&ONE_MONO), rat(1, 2));
        assert!(p.substitute(0, &int(0)).is_err());
    }

    #[test]
    fn pretty_output() {
        let p = parse_poly("6y^3 + 17y^2 + 26y + 24", 2).unwrap();
        assert_eq!(p.pretty(&['y']), "6*y^3 + 17*y^2 + 26*y + 24");
        let names = var_names(4);
        let t = parse_term("w/xy", 4).unwrap();
        assert_eq!(fmt_mono(&t.mono, &names), "w/(x*y)");
    }
}
