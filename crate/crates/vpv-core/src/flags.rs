//! Printed values that disagree with what the engine computes.
//!
//! Every flag is recomputed on each run; a flag disappears if the
//! disagreement does.

use serde::{Deserialize, Serialize};

use crate::arith::format_rational;
use crate::error::Result;
use crate::gcdzeta::{particular_case_eval, ParticularCase};
use crate::identity::{Status, VerificationReport};
use crate::partitions::{count_vector_partitions, partition_grid, MultiplicityRule, PartSet};
use crate::sequences::{check_alpha_properties, totient_product, TotientKind};

/// Golden `1 - y/4 + y^2/4` printed for `(1 - y/2)^2`.
pub const SQUARE_EXPANSION: &str = "golden:COR-21.08-z-half:printed-expansion";
/// The interpretation list printed under the distinct grid.
pub const DISTINCT_LIST: &str = "distinct-interpretation-list";
/// The tangent particular case of the two-variable Lambert sum.
pub const TANGENT_CASE: &str = "particular-case:tangent";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flag {
    pub id: String,
    pub subject: String,
    pub printed: String,
    pub computed: String,
    pub detail: String,
}

/// Nonzero cells `(z, y, count)` of the printed grids for the parts
/// `<1,2>` and `<1,3>`, window `0 <= y <= 7`, `0 <= z <= 15`.
pub const PRINTED_UNRESTRICTED_GRID: &[(usize, usize, u128)] = &[
    (0, 0, 1),
    (2, 1, 1),
    (3, 1, 1),
    (4, 2, 2),
    (5, 2, 1),
    (6, 2, 2),
    (6, 3, 3),
    (7, 3, 2),
    (8, 3, 2),
    (8, 4, 5),
    (9, 3, 3),
    (9, 4, 3),
    (10, 4, 4),
    (10, 5, 7),
    (11, 4, 3),
    (11, 5, 5),
    (12, 4, 5),
    (12, 5, 6),
    (12, 6, 11),
    (13, 5, 6),
    (13, 6, 7),
    (14, 5, 5),
    (14, 6, 10),
    (14, 7, 14),
    (15, 5, 7),
    (15, 6, 9),
    (15, 7, 11),
];

pub const PRINTED_DISTINCT_GRID: &[(usize, usize, u128)] = &[
    (0, 0, 1),
    (2, 1, 1),
    (3, 1, 1),
    (4, 2, 1),
    (5, 2, 1),
    (6, 2, 1),
    (6, 3, 2),
    (7, 3, 1),
    (8, 3, 1),
    (8, 4, 2),
    (9, 3, 2),
    (9, 4, 2),
    (10, 4, 1),
    (10, 5, 3),
    (11, 4, 2),
    (11, 5, 2),
    (12, 4, 2),
    (12, 5, 2),
    (12, 6, 4),
    (13, 5, 2),
    (13, 6, 3),
    (14, 5, 2),
    (14, 6, 2),
    (14, 7, 4),
    (15, 5, 3),
    (15, 6, 4),
    (15, 7, 4),
];

pub const GRID_WINDOW: (usize, usize) = (7, 15);

/// `(y, z, printed count)` from the list printed under the distinct grid.
pub const PRINTED_DISTINCT_LIST: [(i64, i64, u128); 4] = [(7, 15, 11), (5, 10, 7), (4, 9, 3), (4, 7, 0)];

fn slug(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c.to_ascii_lowercase() } else { '-' })
        .collect::<String>()
        .split('-')
        .filter(|p| !p.is_empty())
        .collect::<Vec<_>>()
        .join("-")
}

/// Flags for printed goldens that differ and for entries whose sides differ.
pub fn report_flags(reports: &[VerificationReport]) -> Vec<Flag> {
    let mut out = Vec::new();
    for r in reports {
        for g in r.goldens.iter().filter(|g| !g.matches) {
            let Some(d) = &g.first_difference else { continue };
            out.push(Flag {
                id: format!("golden:{}:{}", r.id, slug(&g.label)),
                subject: format!("{} {}", r.id, g.label),
                printed: d.right.clone(),
                computed: d.left.clone(),
                detail: format!("first difference at exponents {:?}", d.exponents),
            });
        }
        if r.status == Status::Mismatch {
            if let Some(pd) = &r.first_difference {
                out.push(Flag {
                    id: format!("mismatch:{}", r.id),
                    subject: format!("{} {}", r.id, r.description),
                    printed: pd.difference.right.clone(),
                    computed: pd.difference.left.clone(),
                    detail: format!(
                        "{} differs at exponents {:?}",
                        pd.pair, pd.difference.exponents
                    ),
                });
            }
        }
    }
    out
}

fn grid_flags(rule: MultiplicityRule, printed: &[(usize, usize, u128)]) -> Result<Vec<Flag>> {
    let parts = PartSet::named("s1,s2", rule)?;
    let (my, mz) = GRID_WINDOW;
    let grid = partition_grid(&parts, my, mz)?;
    let mut out = Vec::new();
    for z in 0..=mz {
        for y in 0..=my {
            let p = printed
                .iter()
                .find(|(pz, py, _)| *pz == z && *py == y)
                .map_or(0, |c| c.2);
            let c = grid.get(y, z);
            if p != c {
                out.push(Flag {
                    id: format!("grid:{}:<{y},{z}>", rule.name()),
                    subject: format!("{} grid cell <{y},{z}>", rule.name()),
                    printed: p.to_string(),
                    computed: c.to_string(),
                    detail: "partitions into <1,2> and <1,3>".into(),
                });
            }
        }
    }
    Ok(out)
}

fn distinct_list_flag() -> Result<Option<Flag>> {
    let parts = PartSet::named("s1,s2", MultiplicityRule::Distinct)?;
    let mut printed = Vec::new();
    let mut computed = Vec::new();
    for (y, z, p) in PRINTED_DISTINCT_LIST {
        printed.push(format!("<{y},{z}>={p}"));
        computed.push(format!("<{y},{z}>={}", count_vector_partitions(&[y, z], &parts)?));
    }
    if printed == computed {
        return Ok(None);
    }
    Ok(Some(Flag {
        id: DISTINCT_LIST.into(),
        subject: "interpretation list for the distinct grid".into(),
        printed: printed.join(", "),
        computed: computed.join(", "),
        detail: "the printed counts are the unrestricted ones".into(),
    }))
}

fn case_flags() -> Result<Vec<Flag>> {
    let mut out = Vec::new();
    for case in ParticularCase::ALL {
        let r = particular_case_eval(case)?;
        if !r.flagged {
            continue;
        }
        let value = |s: &crate::gcdzeta::CaseSide| {
            s.exact.clone().unwrap_or_else(|| s.expression.clone())
        };
        let computed = match (r.sum, &r.series_difference) {
            (Some(sum), _) => format!("{sum:.12} (sum), derived {} = {}", r.derived.expression, value(&r.derived)),
            (None, Some(d)) => format!("coefficient {} at {:?}, derived {}", d.left, d.exponents, r.derived.expression),
            (None, None) => r.derived.expression.clone(),
        };
        let printed = match &r.series_difference {
            Some(d) => format!("{} (coefficient {})", r.printed.expression, d.right),
            None => format!("{} = {}", r.printed.expression, value(&r.printed)),
        };
        out.push(Flag {
            id: format!("particular-case:{}", case.name()),
            subject: format!("particular case {}", case.name()),
            printed,
            computed,
            detail: r.parameters.clone(),
        });
    }
    Ok(out)
}

fn sequence_flags() -> Result<Vec<Flag>> {
    let mut out = Vec::new();
    let report = check_alpha_properties(34)?;
    for c in report.gcd_with_factorial.iter().filter(|c| !c.ok) {
        out.push(Flag {
            id: format!("alpha-gcd-factorial:{}", c.k),
            subject: format!("gcd(alpha({}), {}!)", c.k, c.k),
            printed: "1".into(),
            computed: c.value.clone(),
            detail: "claimed to be 1 for every k up to 34".into(),
        });
    }
    for c in report.last_digit.iter().filter(|c| !c.ok && c.k <= 30) {
        out.push(Flag {
            id: format!("alpha-last-digit:{}", c.k),
            subject: format!("alpha({}) mod 10", c.k),
            printed: "1 or 9".into(),
            computed: c.value.clone(),
            detail: String::new(),
        });
    }
    let selfpower = totient_product(TotientKind::OnePlusSelfPower, 3)?.coeff_z(3);
    let plain = totient_product(TotientKind::OnePlus, 3)?.coeff_z(3);
    if selfpower != plain {
        out.push(Flag {
            id: "totient-self-power-exponent".into(),
            subject: "z^3 coefficient of prod (1 + z^k)^(phi(k) z^k / k)".into(),
            printed: "7/6".into(),
            computed: format_rational(&selfpower),
            detail: format!(
                "the exponent phi(k)/k gives {}, matching exp(z/(1-z^2))",
                format_rational(&plain)
            ),
        });
    }
    Ok(out)
}

/// Flags that do not depend on a suite run.
pub fn standalone_flags() -> Result<Vec<Flag>> {
    let mut out = grid_flags(MultiplicityRule::Unrestricted, PRINTED_UNRESTRICTED_GRID)?;
    out.extend(grid_flags(MultiplicityRule::Distinct, PRINTED_DISTINCT_GRID)?);
    out.extend(distinct_list_flag()?);
    out.extend(case_flags()?);
    out.extend(sequence_flags()?);
    Ok(out)
}

pub fn all_flags(reports: &[VerificationReport]) -> Result<Vec<Flag>> {
    let mut out = report_flags(reports);
    out.extend(standalone_flags()?);
    Ok(out)
}
