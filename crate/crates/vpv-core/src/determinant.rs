//! Lower-Hessenberg determinants giving `n!` times the Taylor coefficients
//! of the square pyramid closed forms.
//!
//! The `n x n` matrix has `g_0` on the diagonal, `-1, -2, ..., -(n-1)` on the
//! superdiagonal and `g_{i-j}` below it, where `sum_r g_r z^r` is the
//! derivative of the logarithm of the closed form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{factorial, int, Rational};
use crate::error::{arg, Result, VpvError};
use crate::identity::lookup;
use crate::poly::{geometric_block, Poly};
use crate::series::GradedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Strict 2D triangle.
    F17i,
    /// Strict 3D square pyramid.
    F18i,
    /// Strict 4D square hyperpyramid.
    F19i,
    /// Strict 5D square hyperpyramid.
    F20,
    /// Right square 4D hyperpyramid.
    F11r1,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::F17i,
        Family::F18i,
        Family::F19i,
        Family::F20,
        Family::F11r1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::F17i => "17i",
            Family::F18i => "18i",
            Family::F19i => "19i",
            Family::F20 => "20",
            Family::F11r1 => "11r1",
        }
    }

    /// Variable count including `z`.
    pub fn nvars(self) -> usize {
        match self {
            Family::F17i => 2,
            Family::F18i => 3,
            Family::F19i | Family::F11r1 => 4,
            Family::F20 => 5,
        }
    }

    /// Catalog entry whose closed form this family expands.
    pub fn identity_id(self) -> &'static str {
        match self {
            Family::F17i => "COR-21.17",
            Family::F18i => "COR-21.18",
            Family::F19i => "COR-21.19",
            Family::F20 => "COR-21.20",
            Family::F11r1 => "COR-21.11r1",
        }
    }

    /// The entry `g_r`.
    pub fn generator(self, r: usize) -> Poly {
        let k = self.nvars() - 1;
        let r = r as i16;
        let (lo, hi) = match self {
            Family::F11r1 => (-(r + 1), r + 1),
            _ => (0, r),
        };
        let mut g = Poly::one();
        for v in 0..k {
            g = g.mul(&geometric_block(v, lo, hi));
        }
        g
    }
}

impl FromStr for Family {
    type Err = VpvError;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| VpvError::Parse(format!("unknown determinant family `{s}`")))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HessenbergSpec {
    pub family: Family,
    pub size: usize,
}

impl HessenbergSpec {
    /// Entry in row `i`, column `j`, both 0-based.
    pub fn entry(&self, i: usize, j: usize) -> Poly {
        if j > i + 1 {
            Poly::zero()
        } else if j == i + 1 {
            Poly::constant(int(-(j as i64)))
        } else {
            self.family.generator(i - j)
        }
    }

    pub fn matrix(&self) -> Vec<Vec<Poly>> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.entry(i, j)).collect())
            .collect()
    }
}

/// Determinant of a lower-Hessenberg matrix by expansion along the last row:
/// `D_k = sum_j (-1)^{k-j} h_{k,j} prod_{m=j}^{k-1} h_{m,m+1} D_{j-1}`.
pub fn hessenberg_determinant(h: &[Vec<Poly>]) -> Result<Poly> {
    let n = h.len();
    if h.iter().any(|row| row.len() != n) {
        return arg("matrix must be square");
    }
    for (i, row) in h.iter().enumerate() {
        if row.iter().skip(i + 2).any(|p| !p.is_zero()) {
            return arg("matrix is not lower-Hessenberg");
        }
    }
    let mut d: Vec<Poly> = vec![Poly::one()];
    for k in 1..=n {
        let mut acc = Poly::zero();
        let mut chain = Poly::one();
        for j in (1..=k).rev() {
            if j < k {
                chain = chain.mul(&h[j - 1][j]).neg();
            }
            let term = h[k - 1][j - 1].mul(&chain);
            term.mul_add_into(&d[j - 1], &Rational::from_integer(1.into()), &mut acc);
        }
        d.push(acc);
    }
    Ok(d.pop().unwrap_or_else(Poly::one))
}

/// `det` of the family's `n x n` matrix; `n = 0` gives 1.
pub fn hessenberg_coefficient(spec: &HessenbergSpec) -> Result<Poly> {
    hessenberg_determinant(&spec.matrix())
}

/// `n! [z^n]` of the family's closed form for `n = 0..=nmax`.
pub fn taylor_numerators(family: Family, nmax: usize) -> Result<Vec<Poly>> {
    let spec = lookup(family.identity_id())?;
    let series = crate::identity::build_rhs_closed_form(&spec, nmax.max(1))?;
    Ok((0..=nmax)
        .map(|n| {
            series
                .layer(n)
                .scale(&Rational::from_integer(factorial(n as u32)))
        })
        .collect())
}

/// The first `n` where determinant and closed form disagree, if any.
pub fn compare_with_closed_form(family: Family, nmax: usize) -> Result<Option<usize>> {
    let t = taylor_numerators(family, nmax)?;
    for (n, tn) in t.iter().enumerate() {
        let d = hessenberg_coefficient(&HessenbergSpec { family, size: n })?;
        if &d != tn {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Checks `n y c_n + (n+2) c_{n+2} = (2 + n + y + n y) c_{n+1}` for the
/// coefficients of `((1-yz)/(1-z))^{1/(1-y)}` with `n <= order - 2`.
pub fn check_taylor_recurrence(order: usize) -> Result<bool> {
    if order < 2 {
        return arg("order must be at least 2");
    }
    let spec = lookup(Family::F17i.identity_id())?;
    let s: GradedSeries = crate::identity::build_rhs_closed_form(&spec, order)?;
    let y = geometric_block(0, 1, 1);
    for n in 0..=order - 2 {
        let ni = int(n as i64);
        let mut left = y.scale(&ni).mul(s.layer(n));
        left.add_assign(&s.layer(n + 2).scale(&int(n as i64 + 2)));
        let mut factor = Poly::constant(int(2 + n as i64));
        factor.add_assign(&y.scale(&int(1 + n as i64)));
        if left != factor.mul(s.layer(n + 1)) {
            return Ok(false);
        }
    }
    Ok(true)
}
