//! Lattice cones and their visible points.

use std::collections::HashSet;
use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::arith::gcd_vector;
use crate::error::{arg, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConeKind {
    /// `1 <= j <= k`
    TriangleWeak2D,
    /// `0 <= a < b`
    TriangleStrict2D,
    /// `1 <= l, m <= n`
    Pyramid3DWeak,
    /// `0 <= a_i < a_n`
    HyperpyramidStrict,
    /// `1 <= a_i <= a_n`
    HyperpyramidWeakND,
    /// `|j| <= k`
    SymmetricTriangle2D,
    /// `|a_i| <= a_n`
    RightPyramidND,
}

/// Range of each non-graded coordinate at z-degree `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Bounds {
    Weak,
    Strict,
    Symmetric,
}

impl Bounds {
    pub fn range(self, n: i64) -> RangeInclusive<i64> {
        match self {
            Bounds::Weak => 1..=n,
            Bounds::Strict => 0..=n - 1,
            Bounds::Symmetric => -n..=n,
        }
    }
}

impl ConeKind {
    pub fn bounds(self) -> Bounds {
        use ConeKind::*;
        match self {
            TriangleWeak2D | Pyramid3DWeak | HyperpyramidWeakND => Bounds::Weak,
            TriangleStrict2D | HyperpyramidStrict => Bounds::Strict,
            SymmetricTriangle2D | RightPyramidND => Bounds::Symmetric,
        }
    }

    /// The fixed dimension of this kind, if it has one.
    pub fn fixed_dim(self) -> Option<usize> {
        use ConeKind::*;
        match self {
            TriangleWeak2D | TriangleStrict2D | SymmetricTriangle2D => Some(2),
            Pyramid3DWeak => Some(3),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        use ConeKind::*;
        match self {
            TriangleWeak2D => "triangle-weak-2d",
            TriangleStrict2D => "triangle-strict-2d",
            Pyramid3DWeak => "pyramid-weak-3d",
            HyperpyramidStrict => "hyperpyramid-strict",
            HyperpyramidWeakND => "hyperpyramid-weak",
            SymmetricTriangle2D => "triangle-symmetric-2d",
            RightPyramidND => "right-pyramid",
        }
    }

    pub const ALL: [ConeKind; 7] = [
        ConeKind::TriangleWeak2D,
        ConeKind::TriangleStrict2D,
        ConeKind::Pyramid3DWeak,
        ConeKind::HyperpyramidStrict,
        ConeKind::HyperpyramidWeakND,
        ConeKind::SymmetricTriangle2D,
        ConeKind::RightPyramidND,
    ];
}

impl std::str::FromStr for ConeKind {
    type Err = crate::error::VpvError;

    fn from_str(s: &str) -> Result<Self> {
        ConeKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| crate::error::VpvError::Parse(format!("unknown cone kind `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConeRegion {
    pub kind: ConeKind,
    pub dim: usize,
}

impl ConeRegion {
    pub fn new(kind: ConeKind, dim: usize) -> Result<Self> {
        if dim < 2 {
            return arg("cone dimension must be at least 2");
        }
        if dim > crate::poly::MAX_VARS + 1 {
            return arg(format!(
                "cone dimension {dim} exceeds the supported maximum {}",
                crate::poly::MAX_VARS + 1
            ));
        }
        if let Some(d) = kind.fixed_dim() {
            if d != dim {
                return arg(format!("{} requires dimension {d}", kind.name()));
            }
        }
        Ok(Self { kind, dim })
    }

    pub fn bounds(&self) -> Bounds {
        self.kind.bounds()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        if p.len() != self.dim {
            return false;
        }
        let n = p[self.dim - 1];
        n >= 1 && p[..self.dim - 1].iter().all(|a| self.bounds().range(n).contains(a))
    }

    /// Every lattice point of the region with `1 <= z <= max_z`, in
    /// lexicographic order.
    pub fn lattice_points(&self, max_z: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for n in 1..=max_z {
            for_each_box_point(self.dim - 1, self.bounds().range(n), |p| {
                let mut v = p.to_vec();
                v.push(n);
                out.push(v);
            });
        }
        out.sort();
        out
    }
}

impl fmt::Display for ConeRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.kind.name(), self.dim)
    }
}

/// Calls `f` on every point of `range^k`.
pub fn for_each_box_point(k: usize, range: RangeInclusive<i64>, mut f: impl FnMut(&[i64])) {
    let (lo, hi) = (*range.start(), *range.end());
    if lo > hi && k > 0 {
        return;
    }
    let mut p = vec![lo; k];
    loop {
        f(&p);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if p[i] < hi {
                p[i] += 1;
                break;
            }
            p[i] = lo;
        }
    }
}

/// Visible points (gcd 1) of the region with z-coordinate at most `max_z`.
pub fn visible_points(region: &ConeRegion, max_z: i64) -> Result<Vec<Vec<i64>>> {
    if max_z < 1 {
        return arg("max_z must be at least 1");
    }
    let mut out = Vec::new();
    for p in region.lattice_points(max_z) {
        if gcd_vector(&p)? == 1 {
            out.push(p);
        }
    }
    Ok(out)
}

/// Checks that each nonzero lattice point of the region is a positive
/// multiple of exactly one visible point.
pub fn multiples_cover_check(region: &ConeRegion, max_z: i64) -> bool {
    let Ok(vis) = visible_points(region, max_z) else {
        return false;
    };
    let vis: HashSet<Vec<i64>> = vis.into_iter().collect();
    region.lattice_points(max_z).into_iter().all(|p| {
        let n = p[p.len() - 1];
        let reps = (1..=n)
            .filter(|&h| p.iter().all(|a| a % h == 0))
            .filter(|&h| vis.contains(&p.iter().map(|a| a / h).collect::<Vec<_>>()))
            .count();
        reps == 1
    })
}
