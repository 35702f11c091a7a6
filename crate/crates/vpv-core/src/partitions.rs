//! Vector partitions into parts on radial lines and into visible points.

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{gcd_vector, Rational};
use crate::error::{arg, domain, Result, VpvError};
use crate::identity::recipe::multiply_binomial_in_place;
use crate::lattice::{visible_points, ConeKind, ConeRegion};
use crate::poly::{mono_from_slice, ONE_MONO};
use crate::series::{binomial_power, GradedSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MultiplicityRule {
    Unrestricted,
    /// Each part used at most once.
    Distinct,
}

impl MultiplicityRule {
    pub fn name(self) -> &'static str {
        match self {
            MultiplicityRule::Unrestricted => "unrestricted",
            MultiplicityRule::Distinct => "distinct",
        }
    }
}

impl FromStr for MultiplicityRule {
    type Err = VpvError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unrestricted" => Ok(MultiplicityRule::Unrestricted),
            "distinct" => Ok(MultiplicityRule::Distinct),
            _ => Err(VpvError::Parse(format!("unknown multiplicity rule `{s}`"))),
        }
    }
}

/// Parts are all positive multiples of the primitive generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartSet {
    generators: Vec<Vec<i64>>,
    rule: MultiplicityRule,
}

/// Named generators: `s1 = (1,2)`, `s2 = (1,3)`, `s3 = (1,2,3)`, `s4 = (1,3,4)`.
pub fn named_generator(name: &str) -> Result<Vec<i64>> {
    match name {
        "s1" => Ok(vec![1, 2]),
        "s2" => Ok(vec![1, 3]),
        "s3" => Ok(vec![1, 2, 3]),
        "s4" => Ok(vec![1, 3, 4]),
        _ => Err(VpvError::Parse(format!("unknown part set `{name}`"))),
    }
}

impl PartSet {
    pub fn new(generators: Vec<Vec<i64>>, rule: MultiplicityRule) -> Result<Self> {
        let Some(first) = generators.first() else {
            return arg("a part set needs at least one generator");
        };
        let dim = first.len();
        for g in &generators {
            if g.len() != dim {
                return arg("generators must share one dimension");
            }
            if g.iter().any(|&c| c < 0) {
                return arg(format!("generator {g:?} has a negative coordinate"));
            }
            if gcd_vector(g)? != 1 {
                return arg(format!("generator {g:?} is not primitive"));
            }
        }
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return arg(format!("generator {g:?} is repeated"));
            }
        }
        Ok(Self { generators, rule })
    }

    /// Parses a comma list of names such as `s1,s2`.
    pub fn named(list: &str, rule: MultiplicityRule) -> Result<Self> {
        let gens = list
            .split(',')
            .map(|s| named_generator(s.trim()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(gens, rule)
    }

    pub fn dim(&self) -> usize {
        self.generators[0].len()
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn rule(&self) -> MultiplicityRule {
        self.rule
    }

    /// Every part that fits under `bound` coordinatewise.
    pub fn parts_under(&self, bound: &[i64]) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for g in &self.generators {
            let mut k = 1;
            loop {
                let p: Vec<i64> = g.iter().map(|c| c * k).collect();
                if p.iter().zip(bound).any(|(a, b)| a > b) {
                    break;
                }
                out.push(p);
                k += 1;
            }
        }
        out
    }
}

fn box_index(v: &[i64], bound: &[i64]) -> usize {
    let mut idx = 0usize;
    for (c, b) in v.iter().zip(bound) {
        idx = idx * (*b as usize + 1) + *c as usize;
    }
    idx
}

fn box_size(bound: &[i64]) -> usize {
    bound.iter().map(|b| *b as usize + 1).product()
}

fn box_vector(mut idx: usize, bound: &[i64]) -> Vec<i64> {
    let mut v = vec![0i64; bound.len()];
    for i in (0..bound.len()).rev() {
        let r = bound[i] as usize + 1;
        v[i] = (idx % r) as i64;
        idx /= r;
    }
    v
}

/// Counts for every vector in the box `0 <= v <= bound` by knapsack DP.
fn dp_table(bound: &[i64], parts: &[Vec<i64>], rule: MultiplicityRule) -> Result<Vec<u128>> {
    let size = box_size(bound);
    let mut dp = vec![0u128; size];
    dp[0] = 1;
    let order: Vec<Vec<i64>> = (0..size).map(|i| box_vector(i, bound)).collect();
    for p in parts {
        let shift = box_index(p, bound);
        let fits = |v: &[i64]| v.iter().zip(p).zip(bound).all(|((a, b), c)| a + b <= *c);
        let step = |i: usize, dp: &mut [u128]| -> Result<()> {
            if dp[i] != 0 && fits(&order[i]) {
                let j = i + shift;
                dp[j] = dp[j]
                    .checked_add(dp[i])
                    .ok_or_else(|| VpvError::Domain("partition count overflow".into()))?;
            }
            Ok(())
        };
        match rule {
            MultiplicityRule::Unrestricted => {
                for i in 0..size {
                    step(i, &mut dp)?;
                }
            }
            MultiplicityRule::Distinct => {
                for i in (0..size).rev() {
                    step(i, &mut dp)?;
                }
            }
        }
    }
    Ok(dp)
}

/// Number of multisets (or sets) of parts summing to `target`.
pub fn count_vector_partitions(target: &[i64], parts: &PartSet) -> Result<u128> {
    if target.len() != parts.dim() {
        return arg("target and parts have different dimensions");
    }
    if target.iter().any(|&c| c < 0) {
        return arg("target coordinates must be non-negative");
    }
    let dp = dp_table(target, &parts.parts_under(target), parts.rule)?;
    Ok(dp[box_index(target, target)])
}

/// Generating function of the part set graded by the last coordinate.
pub fn partition_series(parts: &PartSet, order: usize) -> Result<GradedSeries> {
    let dim = parts.dim();
    if parts.generators.iter().any(|g| g[dim - 1] < 1) {
        return arg("the graded coordinate of every generator must be positive");
    }
    let bound: Vec<i64> = vec![i64::MAX / 4; dim - 1]
        .into_iter()
        .chain(std::iter::once(order as i64))
        .collect();
    let mut acc = GradedSeries::one(dim, order);
    for p in parts.parts_under(&bound) {
        let mono = mono_from_slice(&p[..dim - 1])?;
        let k = p[dim - 1];
        match parts.rule {
            MultiplicityRule::Unrestricted => {
                multiply_binomial_in_place(&mut acc, &Rational::one(), &mono, k, &-Rational::one())?
            }
            MultiplicityRule::Distinct => {
                multiply_binomial_in_place(&mut acc, &-Rational::one(), &mono, k, &Rational::one())?
            }
        }
    }
    Ok(acc)
}

fn as_count(c: &Rational) -> Result<u128> {
    if !c.is_integer() {
        return domain("generating function coefficient is not an integer");
    }
    c.to_integer()
        .to_u128()
        .ok_or_else(|| VpvError::Domain("coefficient out of range".into()))
}

/// Dense 2D table, `counts[z][y]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionGrid {
    pub max_y: usize,
    pub max_z: usize,
    pub rule: MultiplicityRule,
    pub counts: Vec<Vec<u128>>,
}

impl PartitionGrid {
    pub fn get(&self, y: usize, z: usize) -> u128 {
        self.counts[z][y]
    }

    /// Rows from `max_z` down to 0, as the grid is drawn.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("z/y");
        for y in 0..=self.max_y {
            let _ = write!(s, "\t{y}");
        }
        s.push('\n');
        for z in (0..=self.max_z).rev() {
            let _ = write!(s, "{z}");
            for y in 0..=self.max_y {
                let _ = write!(s, "\t{}", self.counts[z][y]);
            }
            s.push('\n');
        }
        s
    }
}

/// Grid of counts from the generating function.
pub fn partition_grid(parts: &PartSet, max_y: usize, max_z: usize) -> Result<PartitionGrid> {
    if parts.dim() != 2 {
        return arg("grids are two-dimensional");
    }
    let s = partition_series(parts, max_z)?;
    let mut counts = vec![vec![0u128; max_y + 1]; max_z + 1];
    for (z, row) in counts.iter_mut().enumerate() {
        for (y, cell) in row.iter_mut().enumerate() {
            let mut m = ONE_MONO;
            m[0] = y as i16;
            *cell = as_count(&s.coeff(&m, z))?;
        }
    }
    Ok(PartitionGrid {
        max_y,
        max_z,
        rule: parts.rule,
        counts,
    })
}

/// Same grid by direct DP for every cell.
pub fn partition_grid_dp(parts: &PartSet, max_y: usize, max_z: usize) -> Result<PartitionGrid> {
    if parts.dim() != 2 {
        return arg("grids are two-dimensional");
    }
    let bound = [max_y as i64, max_z as i64];
    let dp = dp_table(&bound, &parts.parts_under(&bound), parts.rule)?;
    let mut counts = vec![vec![0u128; max_y + 1]; max_z + 1];
    for (z, row) in counts.iter_mut().enumerate() {
        for (y, cell) in row.iter_mut().enumerate() {
            *cell = dp[box_index(&[y as i64, z as i64], &bound)];
        }
    }
    Ok(PartitionGrid {
        max_y,
        max_z,
        rule: parts.rule,
        counts,
    })
}

/// `p(0..=n)` by the classical coin DP.
pub fn partition_numbers(n: usize) -> Vec<u128> {
    let mut p = vec![0u128; n + 1];
    p[0] = 1;
    for k in 1..=n {
        for m in k..=n {
            p[m] += p[m - k];
        }
    }
    p
}

/// `D(0..=n)`, partitions into distinct parts.
pub fn distinct_partition_numbers(n: usize) -> Vec<u128> {
    let mut d = vec![0u128; n + 1];
    d[0] = 1;
    for k in 1..=n {
        for m in (k..=n).rev() {
            d[m] += d[m - k];
        }
    }
    d
}

/// Count for a target on a single radial line, `p(g)` or `D(g)` with
/// `g = gcd(target)`.
pub fn radial_line_count(target: &[i64], rule: MultiplicityRule) -> Result<u128> {
    if target.is_empty() || target.iter().any(|&c| c <= 0) {
        return arg("target must have all coordinates positive");
    }
    let g = gcd_vector(target)? as usize;
    Ok(match rule {
        MultiplicityRule::Unrestricted => partition_numbers(g)[g],
        MultiplicityRule::Distinct => distinct_partition_numbers(g)[g],
    })
}

/// Which parts the upper product allows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UpperParts {
    /// Every lattice point `1 <= a <= b`: the product runs over visible
    /// points and all their multiples.
    AllMultiples,
    /// Visible points only.
    VisibleOnly,
}

/// `prod 1/(1 - y^a z^b)` over the weak triangle.
pub fn expand_upper_vpv_coefficients(order: usize, parts: UpperParts) -> Result<GradedSeries> {
    if order < 1 {
        return arg("order must be at least 1");
    }
    let region = ConeRegion::new(ConeKind::TriangleWeak2D, 2)?;
    let pts = match parts {
        UpperParts::AllMultiples => region.lattice_points(order as i64),
        UpperParts::VisibleOnly => visible_points(&region, order as i64)?,
    };
    let mut acc = GradedSeries::one(2, order);
    for p in pts {
        let mono = mono_from_slice(&p[..1])?;
        multiply_binomial_in_place(&mut acc, &Rational::one(), &mono, p[1], &-Rational::one())?;
    }
    Ok(acc)
}

/// Part set for the upper product as explicit generators, for DP checks.
pub fn upper_vpv_part_set(order: usize, parts: UpperParts) -> Result<Vec<Vec<i64>>> {
    let region = ConeRegion::new(ConeKind::TriangleWeak2D, 2)?;
    Ok(match parts {
        UpperParts::AllMultiples => region.lattice_points(order as i64),
        UpperParts::VisibleOnly => visible_points(&region, order as i64)?,
    })
}

/// Counts partitions of `target` into any of the given parts.
pub fn count_with_parts(target: &[i64], parts: &[Vec<i64>], rule: MultiplicityRule) -> Result<u128> {
    if target.iter().any(|&c| c < 0) {
        return arg("target coordinates must be non-negative");
    }
    let fitting: Vec<Vec<i64>> = parts
        .iter()
        .filter(|p| p.len() == target.len() && p.iter().zip(target).all(|(a, b)| a <= b))
        .filter(|p| p.iter().any(|&c| c != 0))
        .cloned()
        .collect();
    let dp = dp_table(target, &fitting, rule)?;
    Ok(dp[box_index(target, target)])
}

/// Coefficients `V_n` of the binomial-series product over the strict
/// hyperpyramid, multiplying each factor's full binomial series.
pub fn brute_force_vn(order: usize, dim: usize) -> Result<GradedSeries> {
    if !(2..=4).contains(&dim) {
        return arg("dimension must be 2, 3 or 4");
    }
    if order < 1 {
        return arg("order must be at least 1");
    }
    let kind = if dim == 2 {
        ConeKind::TriangleStrict2D
    } else {
        ConeKind::HyperpyramidStrict
    };
    let region = ConeRegion::new(kind, dim)?;
    let mut acc = GradedSeries::one(dim, order);
    for p in visible_points(&region, order as i64)? {
        let c = p[dim - 1];
        let alpha = -Rational::new(1.into(), c.into());
        let f = binomial_power(
            dim,
            order,
            &Rational::one(),
            &mono_from_slice(&p[..dim - 1])?,
            c as usize,
            &alpha,
        )?;
        acc = acc.mul(&f)?;
    }
    Ok(acc)
}

/// Integer coefficient of a series at `(exponents..., z)`.
pub fn coefficient_count(s: &GradedSeries, target: &[i64]) -> Result<u128> {
    let n = target.len();
    let z = target[n - 1];
    if z < 0 || z as usize > s.order() {
        return arg("target outside the series order");
    }
    let c = s.coeff(&mono_from_slice(&target[..n - 1])?, z as usize);
    if c.is_zero() {
        return Ok(0);
    }
    as_count(&c)
}
