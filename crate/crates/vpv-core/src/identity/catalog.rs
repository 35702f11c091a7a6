//! Catalog of identities with their regions, weights and closed forms.

use crate::arith::{rat, Rational};
use crate::error::{Result, VpvError};
use crate::lattice::{ConeKind, ConeRegion};

use super::{
    generic_closed_form, unit_weights, ClosedForm, Golden, GoldenSeries, IdentitySpec, RhsSource,
    SignVariant,
};

use ConeKind::*;
use SignVariant::*;

pub fn default_order(dim: usize) -> usize {
    match dim {
        2 => 12,
        3 => 8,
        4 => 6,
        _ => 5,
    }
}

struct E(IdentitySpec);

fn entry(id: &str, desc: &str, kind: ConeKind, dim: usize, sign: SignVariant) -> E {
    E(IdentitySpec {
        id: id.into(),
        description: desc.into(),
        region: ConeRegion::new(kind, dim).expect("catalog region"),
        weights: unit_weights(dim),
        sign,
        rhs: None,
        rhs_source: RhsSource::None,
        substitutions: Vec::new(),
        regrade: None,
        excluded: Vec::new(),
        longhand: None,
        goldens: Vec::new(),
        default_order: default_order(dim),
        notes: Vec::new(),
    })
}

impl E {
    fn weights(mut self, w: &[i64]) -> Self {
        self.0.weights = w.to_vec();
        self
    }
    fn rhs(mut self, cf: Result<ClosedForm>) -> Self {
        self.0.rhs = Some(cf.expect("catalog closed form"));
        self.0.rhs_source = RhsSource::Printed;
        self
    }
    fn generic(mut self) -> Self {
        let s = &self.0;
        self.0.rhs = generic_closed_form(&s.region, &s.weights, s.sign).expect("generic form");
        self.0.rhs_source = RhsSource::Generic;
        self
    }
    fn sub(mut self, var: char, v: Rational) -> Self {
        self.0.substitutions.push((var, v));
        self
    }
    fn regrade(mut self, q: Rational) -> Self {
        self.0.regrade = Some(q);
        self.0.default_order = 8;
        self
    }
    fn exclude(mut self, p: &[i64]) -> Self {
        self.0.excluded.push(p.to_vec());
        self
    }
    fn golden(mut self, label: &str, text: &str, order: Option<usize>) -> Self {
        self.0.goldens.push(Golden {
            label: label.into(),
            series: GoldenSeries::Text(text.into()),
            order,
        });
        self
    }
    fn egf(mut self, label: &str, nums: &[&str]) -> Self {
        self.0.goldens.push(Golden {
            label: label.into(),
            series: GoldenSeries::Egf(nums.iter().map(|s| s.to_string()).collect()),
            order: Some(nums.len() - 1),
        });
        self
    }
    fn order(mut self, n: usize) -> Self {
        self.0.default_order = n;
        self
    }
    fn note(mut self, n: &str) -> Self {
        self.0.notes.push(n.into());
        self
    }
}

fn cf(nvars: usize) -> ClosedForm {
    ClosedForm::new(nvars)
}

// ((1-yz)/(1-z))^{y/(1-y)}
fn f2_02() -> Result<ClosedForm> {
    cf(2).group(&["y"], &[], &[("y", "yz"), ("-y", "z")], &[])
}

fn f2_03() -> Result<ClosedForm> {
    cf(2).group(&["y"], &[], &[("-y", "yz"), ("y", "z")], &[])
}

fn f2_04() -> Result<ClosedForm> {
    f2_02()?.group(&["y^2"], &[], &[("y^2", "z^2"), ("-y^2", "y^2z^2")], &[])
}

fn f2_07() -> Result<ClosedForm> {
    cf(2).group(&[], &[1], &[("-1", "yz")], &[])
}

fn f2_08() -> Result<ClosedForm> {
    cf(2).group(&[], &[1], &[("1", "yz")], &[])
}

fn f2_09() -> Result<ClosedForm> {
    cf(2)
        .group(&[], &[2], &[("1", "y^2z^2")], &[])?
        .group(&[], &[1], &[("-1", "yz")], &[])
}

// ((1-yz)/(1-z))^{1/(1-y)}
fn f2_17() -> Result<ClosedForm> {
    cf(2).group(&["y"], &[], &[("1", "yz"), ("-1", "z")], &[])
}

fn f3_11() -> Result<ClosedForm> {
    cf(3).group(
        &["x", "y"],
        &[],
        &[("xy", "xz"), ("xy", "yz"), ("-xy", "z"), ("-xy", "xyz")],
        &[],
    )
}

fn f3_12() -> Result<ClosedForm> {
    cf(3).group(
        &["x", "y"],
        &[],
        &[("-xy", "xz"), ("-xy", "yz"), ("xy", "z"), ("xy", "xyz")],
        &[],
    )
}

fn f3_18() -> Result<ClosedForm> {
    cf(3).group(
        &["x", "y"],
        &[],
        &[("1", "xz"), ("1", "yz"), ("-1", "z"), ("-1", "xyz")],
        &[],
    )
}

fn f4_19() -> Result<ClosedForm> {
    cf(4).group(
        &["w", "x", "y"],
        &[],
        &[
            ("1", "wz"),
            ("1", "xz"),
            ("1", "yz"),
            ("1", "wxyz"),
            ("-1", "z"),
            ("-1", "wxz"),
            ("-1", "wyz"),
            ("-1", "xyz"),
        ],
        &[],
    )
}

fn f5_20() -> Result<ClosedForm> {
    cf(5).group(
        &["v", "w", "x", "y"],
        &[],
        &[
            ("1", "vz"),
            ("1", "wz"),
            ("1", "xz"),
            ("1", "yz"),
            ("1", "vwxz"),
            ("1", "vwyz"),
            ("1", "vxyz"),
            ("1", "wxyz"),
            ("-1", "z"),
            ("-1", "vwz"),
            ("-1", "vxz"),
            ("-1", "vyz"),
            ("-1", "wxz"),
            ("-1", "wyz"),
            ("-1", "xyz"),
            ("-1", "vwxyz"),
        ],
        &[],
    )
}

// ((1-yz)^y/(1-z/y))^{1/(1-y)}
fn f2_02r() -> Result<ClosedForm> {
    cf(2).group(&["y"], &[], &[("y", "yz"), ("-1", "z/y")], &[])
}

fn f2_03r() -> Result<ClosedForm> {
    cf(2).group(&["y"], &[], &[("-y", "yz"), ("1", "z/y")], &[])
}

fn f2_04r() -> Result<ClosedForm> {
    f2_02r()?.group(&["y^2"], &[], &[("1", "z^2/y^2"), ("-y^2", "y^2z^2")], &[])
}

fn f3_11r() -> Result<ClosedForm> {
    cf(3).group(
        &["x", "y"],
        &[],
        &[("x", "xz/y"), ("y", "yz/x"), ("-xy", "xyz"), ("-1", "z/xy")],
        &[],
    )
}

fn f3_12r() -> Result<ClosedForm> {
    cf(3).group(
        &["x", "y"],
        &[],
        &[("-x", "xz/y"), ("-y", "yz/x"), ("xy", "xyz"), ("1", "z/xy")],
        &[],
    )
}

fn f4_11r1_logs(s: &str) -> Vec<(String, String)> {
    let neg = |c: &str| {
        if s == "-" {
            match c.strip_prefix('-') {
                Some(r) => r.to_string(),
                None => format!("-{c}"),
            }
        } else {
            c.to_string()
        }
    };
    [
        ("wxy", "wxyz"),
        ("w", "wz/xy"),
        ("x", "xz/wy"),
        ("y", "yz/wx"),
        ("-wx", "wxz/y"),
        ("-wy", "wyz/x"),
        ("-xy", "xyz/w"),
        ("-1", "z/wxy"),
    ]
    .iter()
    .map(|(c, a)| (neg(c), a.to_string()))
    .collect()
}

fn f4_11r1(sign: &str) -> Result<ClosedForm> {
    let logs = f4_11r1_logs(sign);
    let l: Vec<(&str, &str)> = logs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    cf(4).group(&["w", "x", "y"], &[], &l, &[])
}

const ALPHA_PRINTED: [&str; 11] = [
    "1", "-1", "-1", "-1", "1", "19", "151", "1091", "7841", "56519", "396271",
];
const BETA_PRINTED: [&str; 10] = [
    "1", "1", "1", "7", "25", "181", "1201", "10291", "97777", "202709",
];

/// The printed longhand expansion of the plain weak 3D pyramid product,
/// as `(monomial, k)` for `(1 - monomial)^{1/k}`, copied row by row.
const LONGHAND: [(&str, i64); 47] = [
    ("xyz", 1),
    ("xyz^2", 2),
    ("xy^2z^2", 2),
    ("x^2yz^2", 2),
    ("xyz^3", 3),
    ("x^2yz^3", 3),
    ("x^3yz^3", 3),
    ("x^2yz^3", 3),
    ("x^2y^2z^3", 3),
    ("x^2y^3z^3", 3),
    ("x^3yz^3", 3),
    ("x^3y^2z^3", 3),
    ("xyz^4", 4),
    ("x^2yz^4", 4),
    ("x^3yz^4", 4),
    ("x^4yz^4", 4),
    ("xy^2z^4", 4),
    ("x^3y^2z^4", 4),
    ("xy^3z^4", 4),
    ("x^2y^3z^4", 4),
    ("x^3y^3z^4", 4),
    ("x^4y^3z^4", 4),
    ("xy^4z^4", 4),
    ("x^3y^4z^4", 4),
    ("xyz^5", 5),
    ("x^2yz^5", 5),
    ("x^3yz^5", 5),
    ("x^4yz^5", 5),
    ("x^5yz^5", 5),
    ("xy^2z^5", 5),
    ("x^2y^2z^5", 5),
    ("x^3y^2z^5", 5),
    ("x^4y^2z^5", 5),
    ("x^5y^2z^5", 5),
    ("xy^3z^5", 5),
    ("x^2y^3z^5", 5),
    ("x^3y^3z^5", 5),
    ("x^4y^3z^5", 5),
    ("x^5y^3z^5", 5),
    ("xy^4z^5", 5),
    ("x^2y^4z^5", 5),
    ("x^3y^4z^5", 5),
    ("x^4y^4z^5", 5),
    ("xy^5z^5", 5),
    ("x^2y^5z^5", 5),
    ("x^3y^5z^5", 5),
    ("x^4y^5z^5", 5),
];

fn adjusted_y_two_golden() -> String {
    let mut s = String::from("1");
    for n in 1..=10 {
        s.push_str(&format!(" - {n}z^{}", n + 1));
    }
    s
}

/// Every catalog entry, in a fixed order.
pub fn catalog() -> Vec<IdentitySpec> {
    let half = || rat(1, 2);
    let one = || rat(1, 1);
    let entries: Vec<E> = vec![
        // Statements on the strict square pyramids
        entry("STMT-1", "strict 2D triangle, weights (0,1)", TriangleStrict2D, 2, ReciprocalProduct)
            .rhs(f2_17()),
        entry("STMT-2", "strict 3D square pyramid, weights (0,0,1)", HyperpyramidStrict, 3, ReciprocalProduct)
            .rhs(f3_18()),
        entry("STMT-3", "strict 4D square hyperpyramid, weights (0,0,0,1)", HyperpyramidStrict, 4, ReciprocalProduct)
            .rhs(f4_19()),
        // First quadrant triangle
        entry("THM-21.01", "weak 2D triangle, general weights; default (0,1)", TriangleWeak2D, 2, ReciprocalProduct)
            .rhs(f2_02()),
        entry("COR-21.02", "weak 2D triangle, reciprocal product", TriangleWeak2D, 2, ReciprocalProduct)
            .rhs(f2_02()),
        entry("COR-21.03", "weak 2D triangle, plain product", TriangleWeak2D, 2, PlainProduct)
            .rhs(f2_03()),
        entry("COR-21.04", "weak 2D triangle, plus product", TriangleWeak2D, 2, PlusProduct)
            .rhs(f2_04()),
        entry("COR-21.03-y-half", "plain product at y = 1/2", TriangleWeak2D, 2, PlainProduct)
            .rhs(f2_03())
            .sub('y', half())
            .golden("printed series", "1 - z/2 - z^2/4 - z^3/8 - z^4/16 - z^5/32", Some(5)),
        entry("COR-21.04-y-half", "plus product at y = 1/2", TriangleWeak2D, 2, PlusProduct)
            .rhs(f2_04())
            .sub('y', half())
            .golden("printed series", "1 + z/2 + z^2/4 + 3z^3/8 + z^4/4 + 5z^5/16", Some(5)),
        entry(
            "COR-21.03-y-two-adjusted",
            "plain product at y = 2 over 1 <= j < k, equal to 1 - z^2/(1-z)^2",
            TriangleWeak2D,
            2,
            PlainProduct,
        )
        .rhs(f2_03())
        .sub('y', rat(2, 1))
        .exclude(&[1, 1])
        .golden("printed series", &adjusted_y_two_golden(), Some(11)),
        entry("COR-21.05", "totient product prod (1 - z^k)^{phi(k)/k}", TriangleWeak2D, 2, PlainProduct)
            .rhs(cf(2).group(&[], &[1], &[], &["-z"]))
            .sub('y', one())
            .egf("printed alpha(k)/k!", &ALPHA_PRINTED),
        entry("COR-21.06", "totient product prod (1 + z^k)^{phi(k)/k}", TriangleWeak2D, 2, PlusProduct)
            .rhs(cf(2).group(&[], &[2], &[], &["z"]))
            .sub('y', one())
            .egf("printed beta(k)/k!", &BETA_PRINTED)
            .note("the exponent is read as phi(k)/k; the printed phi(k) z^k / k does not give this series"),
        entry("COR-21.07", "weak 2D triangle, weights (1,0), reciprocal product", TriangleWeak2D, 2, ReciprocalProduct)
            .weights(&[1, 0])
            .rhs(f2_07()),
        entry("COR-21.08", "weak 2D triangle, weights (1,0), plain product", TriangleWeak2D, 2, PlainProduct)
            .weights(&[1, 0])
            .rhs(f2_08()),
        entry("COR-21.09", "weak 2D triangle, weights (1,0), plus product", TriangleWeak2D, 2, PlusProduct)
            .weights(&[1, 0])
            .rhs(f2_09()),
        entry("COR-21.08-z-half", "plain product, weights (1,0), at z = 1/2", TriangleWeak2D, 2, PlainProduct)
            .weights(&[1, 0])
            .rhs(f2_08())
            .regrade(half())
            .golden("printed closed form (1 - y/2)^2", "1 - y + y^2/4", None)
            .golden("printed expansion", "1 - y/4 + y^2/4", None),
        entry("COR-21.09-z-half", "plus product, weights (1,0), at z = 1/2", TriangleWeak2D, 2, PlusProduct)
            .weights(&[1, 0])
            .rhs(f2_09())
            .regrade(half())
            .golden("printed series", "1 + y + 5y^2/12 + y^3/6 + 11y^4/144 + 5y^5/144", Some(5)),
        // First hyperquadrant pyramid
        entry("THM-21.10", "weak 3D pyramid, general weights; default (0,0,1)", Pyramid3DWeak, 3, ReciprocalProduct)
            .rhs(f3_11()),
        entry("COR-21.11", "weak 3D pyramid, reciprocal product", Pyramid3DWeak, 3, ReciprocalProduct)
            .rhs(f3_11()),
        entry("COR-21.12", "weak 3D pyramid, plain product", Pyramid3DWeak, 3, PlainProduct)
            .rhs(f3_12()),
        E(IdentitySpec {
            longhand: Some(
                LONGHAND
                    .iter()
                    .map(|(m, k)| (m.to_string(), *k))
                    .collect(),
            ),
            ..entry("COR-21.12-longhand", "weak 3D pyramid plain product against its printed factor list", Pyramid3DWeak, 3, PlainProduct)
                .rhs(f3_12())
                .order(5)
                .0
        }),
        // nD hyperpyramids
        entry("THM-21.13", "weak nD hyperpyramid, default 4D weights (0,0,0,1)", HyperpyramidWeakND, 4, ReciprocalProduct)
            .generic(),
        entry("COR-21.15", "strict 2D triangle, weights (0,1)", TriangleStrict2D, 2, ReciprocalProduct)
            .rhs(f2_17()),
        entry("COR-21.16", "strict 3D square pyramid, weights (0,0,1)", HyperpyramidStrict, 3, ReciprocalProduct)
            .rhs(f3_18()),
        entry("COR-21.16a", "strict 4D square hyperpyramid, weights (0,0,0,1)", HyperpyramidStrict, 4, ReciprocalProduct)
            .rhs(f4_19()),
        entry("COR-21.17", "strict 2D triangle closed form", TriangleStrict2D, 2, ReciprocalProduct)
            .rhs(f2_17())
            .egf(
                "printed Taylor coefficients",
                &[
                    "1",
                    "1",
                    "y + 2",
                    "2y^2 + 5y + 6",
                    "6y^3 + 17y^2 + 26y + 24",
                    "24y^4 + 74y^3 + 129y^2 + 154y + 120",
                ],
            ),
        entry("COR-21.18", "strict 3D square pyramid closed form", HyperpyramidStrict, 3, ReciprocalProduct)
            .rhs(f3_18()),
        entry("COR-21.19", "strict 4D square hyperpyramid closed form", HyperpyramidStrict, 4, ReciprocalProduct)
            .rhs(f4_19()),
        entry("COR-21.20", "strict 5D square hyperpyramid closed form", HyperpyramidStrict, 5, ReciprocalProduct)
            .rhs(f5_20()),
        // Vertically symmetric triangle
        entry("THM-21.01r", "symmetric 2D triangle, default weights (0,1)", SymmetricTriangle2D, 2, ReciprocalProduct)
            .rhs(f2_02r()),
        entry("COR-21.02r", "symmetric 2D triangle, reciprocal product", SymmetricTriangle2D, 2, ReciprocalProduct)
            .rhs(f2_02r()),
        entry("COR-21.03r", "symmetric 2D triangle, plain product", SymmetricTriangle2D, 2, PlainProduct)
            .rhs(f2_03r()),
        entry("COR-21.04r", "symmetric 2D triangle, plus product", SymmetricTriangle2D, 2, PlusProduct)
            .rhs(f2_04r()),
        entry("COR-21.02r-y-half", "symmetric reciprocal product at y = 1/2", SymmetricTriangle2D, 2, ReciprocalProduct)
            .rhs(f2_02r())
            .sub('y', half())
            .golden(
                "printed first series",
                "1 + 7z/2 + 19z^2/4 + 61z^3/8 + 117z^4/8 + 423z^5/16 + 4861z^6/96",
                Some(6),
            )
            .note("the printed first series is the plus product at y = 1/2, see COR-21.04r-y-half"),
        entry("COR-21.04r-y-half", "symmetric plus product at y = 1/2", SymmetricTriangle2D, 2, PlusProduct)
            .rhs(f2_04r())
            .sub('y', half())
            .golden(
                "printed first series",
                "1 + 7z/2 + 19z^2/4 + 61z^3/8 + 117z^4/8 + 423z^5/16 + 4861z^6/96",
                Some(6),
            )
            .golden(
                "printed second series",
                "1 + z/2 + 3z^2/4 + 5z^3/8 + 13z^4/16 + 23z^5/32 + 167z^6/192",
                Some(6),
            ),
        entry("COR-21.05r", "totient product, as printed for the symmetric case", TriangleWeak2D, 2, PlainProduct)
            .rhs(cf(2).group(&[], &[1], &[], &["-z"]))
            .sub('y', one())
            .egf("printed alpha(k)/k!", &ALPHA_PRINTED)
            .note("the printed product is the first quadrant one and duplicates COR-21.05"),
        entry("COR-21.06r", "totient product, as printed for the symmetric case", TriangleWeak2D, 2, PlusProduct)
            .rhs(cf(2).group(&[], &[2], &[], &["z"]))
            .sub('y', one())
            .egf("printed beta(k)/k!", &BETA_PRINTED)
            .note("the printed product is the first quadrant one and duplicates COR-21.06"),
        entry("LIM-21.03r", "symmetric plain product at y = 1, (1 - z) exp(-2z/(1-z))", SymmetricTriangle2D, 2, PlainProduct)
            .rhs(cf(2).group(&[], &[1], &[], &["-2z"]).and_then(|c| c.group(&[], &[], &[("1", "z")], &[])))
            .sub('y', one()),
        entry("LIM-21.04r", "symmetric plus product at y = 1, (1 + z) exp(2z/(1-z^2))", SymmetricTriangle2D, 2, PlusProduct)
            .rhs(cf(2).group(&[], &[2], &[], &["2z"]).and_then(|c| c.group(&[], &[], &[("1", "-z")], &[])))
            .sub('y', one()),
        entry("COR-21.07r", "weak 2D triangle, weights (1,0), reciprocal product", TriangleWeak2D, 2, ReciprocalProduct)
            .weights(&[1, 0])
            .rhs(f2_07())
            .note("printed over the first quadrant triangle; duplicates COR-21.07"),
        entry("COR-21.08r", "weak 2D triangle, weights (1,0), plain product", TriangleWeak2D, 2, PlainProduct)
            .weights(&[1, 0])
            .rhs(f2_08())
            .note("printed over the first quadrant triangle; duplicates COR-21.08"),
        entry("COR-21.09r", "weak 2D triangle, weights (1,0), plus product", TriangleWeak2D, 2, PlusProduct)
            .weights(&[1, 0])
            .rhs(f2_09())
            .note("printed over the first quadrant triangle; duplicates COR-21.09"),
        // Right square pyramid
        entry("THM-21.10r", "right square pyramid, default weights (0,0,1)", RightPyramidND, 3, ReciprocalProduct)
            .rhs(f3_11r()),
        entry("COR-21.11r", "right square pyramid, reciprocal product", RightPyramidND, 3, ReciprocalProduct)
            .rhs(f3_11r()),
        entry("COR-21.12r", "right square pyramid, plain product", RightPyramidND, 3, PlainProduct)
            .rhs(f3_12r()),
        // Right square hyperpyramid
        entry("THM-21.13r", "right square hyperpyramid, default 4D weights (0,0,0,1)", RightPyramidND, 4, ReciprocalProduct)
            .rhs(f4_11r1("+")),
        entry("COR-21.16ar", "right square 4D hyperpyramid function", RightPyramidND, 4, ReciprocalProduct)
            .rhs(f4_11r1("+")),
        entry("COR-21.11r1", "right square 4D hyperpyramid, reciprocal product", RightPyramidND, 4, ReciprocalProduct)
            .rhs(f4_11r1("+")),
        entry("COR-21.12r1", "right square 4D hyperpyramid, plain product", RightPyramidND, 4, PlainProduct)
            .rhs(f4_11r1("-")),
    ];
    entries.into_iter().map(|e| e.0).collect()
}

pub fn lookup(id: &str) -> Result<IdentitySpec> {
    catalog()
        .into_iter()
        .find(|s| s.id == id)
        .ok_or_else(|| VpvError::UnknownId(id.to_string()))
}

pub fn ids() -> Vec<String> {
    catalog().into_iter().map(|s| s.id).collect()
}
