//! Acceptance run: one PASS/FAIL line per criterion, with the sub-checks
//! indented beneath. Printed values are transcribed here and compared with
//! independently computed ones. A few printed values are known to be wrong;
//! those sub-checks are listed in `KNOWN_RED` and must fail. Any other
//! failure, or a known red that starts passing, makes the run exit nonzero.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vpv_core::arith::{gcd_vector, rat, Rational};
use vpv_core::determinant::{compare_with_closed_form, Family};
use vpv_core::flags::{DISTINCT_LIST, SQUARE_EXPANSION, TANGENT_CASE};
use vpv_core::gcdzeta::{coprime_power_sum, gcd_sum_report};
use vpv_core::identity::{Status, VerificationReport};
use vpv_core::partitions::{
    coefficient_count, count_vector_partitions, partition_grid, partition_grid_dp,
    partition_series, MultiplicityRule, PartSet,
};
use vpv_core::poly::{mono_from_slice, parse_poly};
use vpv_core::sequences::{alpha_sequence, beta_sequence};
use vpv_core::series::GradedSeries;
use vpv_core::suite::{run_suite, summarize};

const KNOWN_RED: &[&str] = &[
    "3:longhand-factor-list",
    "4:symmetric-second-series",
    "5:beta-through-9",
    "5:gcd-alpha-factorial",
    "6:unrestricted-grid",
    "6:distinct-grid",
];

struct Check {
    id: String,
    ok: bool,
    detail: String,
}

#[derive(Default)]
struct Run {
    criteria: Vec<(u8, &'static str, Vec<Check>)>,
}

impl Run {
    fn criterion(&mut self, n: u8, title: &'static str, checks: Vec<Check>) {
        self.criteria.push((n, title, checks));
    }
}

fn check(criterion: u8, name: &str, ok: bool, detail: impl Into<String>) -> Check {
    Check {
        id: format!("{criterion}:{name}"),
        ok,
        detail: detail.into(),
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn time_check(criterion: u8, elapsed: Duration, limit: Duration) -> Check {
    check(
        criterion,
        "time",
        elapsed <= limit,
        format!("{:.2?} (limit {:.0?})", elapsed, limit),
    )
}

fn fact(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, b| a * b)
}

// ---------------------------------------------------------------- 1

/// `((1 - yz)/(1 - z))^{1/(1-y)}` as `exp(sum_k (1 + y + ... + y^{k-1}) z^k / k)`.
fn taylor_closed_form(order: usize) -> GradedSeries {
    let mut log = GradedSeries::zero(2, order);
    for k in 1..=order {
        for j in 0..k {
            log.add_term(mono_from_slice(&[j as i64]).unwrap(), k, rat(1, k as i64));
        }
    }
    log.exp0().unwrap()
}

fn criterion_1(run: &mut Run) {
    // Printed numerators of the z^k coefficient, each over k!.
    let printed = [
        "1",
        "1",
        "y + 2",
        "2y^2 + 5y + 6",
        "6y^3 + 17y^2 + 26y + 24",
        "24y^4 + 74y^3 + 129y^2 + 154y + 120",
    ];
    let (series, elapsed) = timed(|| taylor_closed_form(5));
    let mut bad = Vec::new();
    for (k, text) in printed.iter().enumerate() {
        let expected = parse_poly(text, 2)
            .unwrap()
            .scale(&Rational::new(BigInt::one(), fact(k as u64)));
        if series.layer(k) != &expected {
            bad.push(k);
        }
    }
    run.criterion(
        1,
        "closed-form Taylor coefficients to z^5",
        vec![
            check(1, "coefficients", bad.is_empty(), format!("differing degrees {bad:?}")),
            time_check(1, elapsed, Duration::from_secs(1)),
        ],
    );
}

// ---------------------------------------------------------------- 2

fn criterion_2(run: &mut Run) {
    let (results, elapsed) = timed(|| {
        [(Family::F17i, 8), (Family::F18i, 6), (Family::F19i, 6)]
            .map(|(f, n)| (f, n, compare_with_closed_form(f, n)))
    });
    let mut checks: Vec<Check> = results
        .into_iter()
        .map(|(f, n, r)| {
            let ok = matches!(r, Ok(None));
            check(2, &format!("family-{f}"), ok, format!("n <= {n}: {r:?}"))
        })
        .collect();
    checks.push(time_check(2, elapsed, Duration::from_secs(10)));
    run.criterion(2, "Hessenberg determinants equal n! times Taylor coefficients", checks);
}

// ---------------------------------------------------------------- 3, 4, 9

const REQUIRED_IDS: &[&str] = &[
    "THM-21.01", "COR-21.02", "COR-21.03", "COR-21.04", "COR-21.05", "COR-21.06", "COR-21.07",
    "COR-21.08", "COR-21.09", "THM-21.10", "COR-21.11", "COR-21.12", "COR-21.12-longhand",
    "COR-21.15", "COR-21.16", "COR-21.16a", "COR-21.17", "COR-21.18", "COR-21.19", "COR-21.20",
    "THM-21.01r", "COR-21.02r", "COR-21.03r", "COR-21.04r", "COR-21.05r", "COR-21.06r",
    "COR-21.07r", "COR-21.08r", "COR-21.09r", "THM-21.10r", "COR-21.11r", "COR-21.12r",
    "COR-21.11r1", "COR-21.12r1",
];

fn criterion_3(run: &mut Run, reports: &[VerificationReport], elapsed: Duration) {
    let ids: BTreeSet<&str> = reports.iter().map(|r| r.id.as_str()).collect();
    let missing: Vec<&str> = REQUIRED_IDS.iter().copied().filter(|i| !ids.contains(i)).collect();
    let unequal: Vec<&str> = reports
        .iter()
        .filter(|r| {
            !r.lhs_eq_middle || r.middle_eq_rhs != Some(true) || r.lhs_eq_rhs != Some(true)
        })
        .map(|r| r.id.as_str())
        .collect();
    let longhand: Vec<&VerificationReport> =
        reports.iter().filter(|r| r.lhs_eq_longhand.is_some()).collect();
    let longhand_bad: Vec<String> = longhand
        .iter()
        .filter(|r| r.lhs_eq_longhand != Some(true))
        .map(|r| {
            let d = r.first_difference.as_ref().map(|d| {
                format!(
                    "{} at {:?}: {} vs {}",
                    d.pair, d.difference.exponents, d.difference.left, d.difference.right
                )
            });
            format!("{} ({})", r.id, d.unwrap_or_default())
        })
        .collect();
    run.criterion(
        3,
        "product = exp-sum = closed form for every catalog entry",
        vec![
            check(3, "catalog-coverage", missing.is_empty(), format!("missing {missing:?}")),
            check(
                3,
                "three-way-equality",
                unequal.is_empty(),
                format!("{} entries, unequal {unequal:?}", reports.len()),
            ),
            check(
                3,
                "longhand-factor-list",
                !longhand.is_empty() && longhand_bad.is_empty(),
                if longhand_bad.is_empty() {
                    "printed factor list equals the product".to_string()
                } else {
                    format!(
                        "{}; the printed z^3 row repeats <2,1,3> and <3,1,3> and omits <1,2,3> and <1,3,3>",
                        longhand_bad.join(", ")
                    )
                },
            ),
            time_check(3, elapsed, Duration::from_secs(120)),
        ],
    );
}

/// Compares the first `upto + 1` graded layers of `series` with printed text.
/// Printed text in `y` is read with `y` as the graded variable.
fn prefix_matches(series: &GradedSeries, printed: &str, upto: usize) -> (bool, String) {
    let text = printed.replace('y', "z");
    let expected = GradedSeries::parse(&text, 1, upto).unwrap();
    for k in 0..=upto {
        if series.layer(k) != expected.layer(k) {
            return (
                false,
                format!(
                    "degree {k}: computed {} vs printed {}",
                    series.layer(k).pretty(&['z']),
                    expected.layer(k).pretty(&['z'])
                ),
            );
        }
    }
    (true, format!("{} coefficients equal", upto + 1))
}

fn series_of<'a>(reports: &'a [VerificationReport], id: &str) -> &'a GradedSeries {
    reports
        .iter()
        .find(|r| r.id == id)
        .and_then(|r| r.series.as_ref())
        .unwrap_or_else(|| panic!("no series for {id}"))
}

fn criterion_4(run: &mut Run, reports: &[VerificationReport]) {
    let mut checks = Vec::new();
    let cases: [(&str, &str, &str, usize); 4] = [
        ("plain-y-half", "COR-21.03-y-half", "1 - z/2 - z^2/4 - z^3/8 - z^4/16 - z^5/32", 5),
        ("plus-y-half", "COR-21.04-y-half", "1 + z/2 + z^2/4 + 3z^3/8 + z^4/4 + 5z^5/16", 5),
        (
            "plus-z-half",
            "COR-21.09-z-half",
            "1 + y + 5y^2/12 + y^3/6 + 11y^4/144 + 5y^5/144",
            5,
        ),
        (
            "symmetric-first-series",
            "COR-21.04r-y-half",
            "1 + 7z/2 + 19z^2/4 + 61z^3/8 + 117z^4/8 + 423z^5/16 + 4861z^6/96",
            6,
        ),
    ];
    for (name, id, printed, upto) in cases {
        let (ok, detail) = prefix_matches(series_of(reports, id), printed, upto);
        checks.push(check(4, name, ok, format!("{id}: {detail}")));
    }

    let adjusted = series_of(reports, "COR-21.03-y-two-adjusted");
    let bad: Vec<usize> = (1..=10)
        .filter(|&n| adjusted.coeff_z(n + 1) != rat(-(n as i64), 1))
        .collect();
    checks.push(check(
        4,
        "y-two-adjusted",
        adjusted.order() >= 11 && bad.is_empty() && adjusted.coeff_z(1).is_zero(),
        format!("coefficient -n at z^(n+1), failing n {bad:?}"),
    ));

    // The second printed symmetric series matches neither symmetric product at y = 1/2.
    let second = "1 + z/2 + 3z^2/4 + 5z^3/8 + 13z^4/16 + 23z^5/32 + 167z^6/192";
    let mut detail = Vec::new();
    let mut any = false;
    for id in ["COR-21.02r-y-half", "COR-21.04r-y-half"] {
        let (ok, d) = prefix_matches(series_of(reports, id), second, 6);
        any |= ok;
        detail.push(format!("{id}: {d}"));
    }
    checks.push(check(4, "symmetric-second-series", any, detail.join("; ")));
    run.criterion(4, "printed particular-case series", checks);
}

fn criterion_9(run: &mut Run, reports: &[VerificationReport]) {
    let ids: BTreeSet<String> = flag_ids(reports).into_iter().collect();
    let mut checks: Vec<Check> = [
        ("square-expansion", SQUARE_EXPANSION),
        ("distinct-list", DISTINCT_LIST),
        ("tangent-case", TANGENT_CASE),
    ]
    .into_iter()
    .map(|(name, id)| check(9, name, ids.contains(id), format!("flag `{id}`")))
    .collect();
    let z_half = reports.iter().find(|r| r.id == "COR-21.08-z-half").unwrap();
    checks.push(check(
        9,
        "flag-is-not-failure",
        z_half.status == Status::Flagged,
        format!("COR-21.08-z-half status {:?}", z_half.status),
    ));
    run.criterion(9, "flagged discrepancies are reported", checks);
}

fn flag_ids(reports: &[VerificationReport]) -> Vec<String> {
    vpv_core::flags::all_flags(reports)
        .unwrap()
        .into_iter()
        .map(|f| f.id)
        .collect()
}

// ---------------------------------------------------------------- 5

const ALPHA_PRINTED: [&str; 31] = [
    "1",
    "-1",
    "-1",
    "-1",
    "1",
    "19",
    "151",
    "1091",
    "7841",
    "56519",
    "396271",
    "2442439",
    "7701409",
    "-145269541",
    "-4833158329",
    "-104056218421",
    "-2002667085119",
    "-37109187217649",
    "-679877731030049",
    "-12440309297451121",
    "-227773259993414719",
    "-4155839606711748061",
    "-74724654677947488521",
    "-1293162252850914402221",
    "-20381626111249718908319",
    "-244110863655032038665001",
    "267543347653261450406351",
    "172316772106087159102974551",
    "8944973491570029894272392801",
    "361702062324149751903132843499",
    "13353699077321671584329389125031",
];

/// Printed numerators of the `z^k / k!` coefficients of the beta series.
const BETA_PRINTED: [i64; 10] = [1, 1, 1, 7, 25, 181, 1201, 10291, 97777, 202709];

fn criterion_5(run: &mut Run) {
    let ((alpha, beta), elapsed) =
        timed(|| (alpha_sequence(40).unwrap().values, beta_sequence(9).unwrap().values));
    let mut checks = Vec::new();

    let table_bad: Vec<usize> = (0..=30)
        .filter(|&k| alpha[k].to_string() != ALPHA_PRINTED[k])
        .collect();
    checks.push(check(5, "alpha-table", table_bad.is_empty(), format!("31 values, differing k {table_bad:?}")));

    let beta_bad: Vec<String> = (0..=9)
        .filter(|&k| beta[k] != BigInt::from(BETA_PRINTED[k]))
        .map(|k| {
            let reduced = Rational::new(beta[k].clone(), fact(k as u64));
            format!(
                "k={k}: computed {} (= {}/{}!, reduced {}), printed {}/{}!",
                beta[k], beta[k], k, reduced, BETA_PRINTED[k], k
            )
        })
        .collect();
    checks.push(check(
        5,
        "beta-through-9",
        beta_bad.is_empty(),
        if beta_bad.is_empty() {
            "10 values equal".to_string()
        } else {
            format!("{}; the printed numerator is that of the reduced fraction", beta_bad.join("; "))
        },
    ));

    let rec_bad: Vec<usize> = (2..=40)
        .filter(|&n| {
            let nn = BigInt::from(n as i64);
            &alpha[n] + (&nn - 1) * (&nn - 2) * &alpha[n - 2] != (2 * &nn - 3) * &alpha[n - 1]
        })
        .collect();
    checks.push(check(5, "recurrence", rec_bad.is_empty(), format!("n <= 40, failing {rec_bad:?}")));

    let gcd_bad: Vec<String> = (0..=34u64)
        .filter_map(|k| {
            let g = alpha[k as usize].gcd(&fact(k));
            (!g.is_one()).then(|| format!("k={k}: gcd {g}"))
        })
        .collect();
    checks.push(check(5, "gcd-alpha-factorial", gcd_bad.is_empty(), format!("k <= 34, {gcd_bad:?}")));

    let digit_bad: Vec<usize> = (0..=30)
        .filter(|&k| {
            let d = alpha[k].mod_floor(&BigInt::from(10));
            d != BigInt::from(1) && d != BigInt::from(9)
        })
        .collect();
    checks.push(check(5, "last-digit", digit_bad.is_empty(), format!("k <= 30, failing {digit_bad:?}")));
    checks.push(time_check(5, elapsed, Duration::from_secs(5)));
    run.criterion(5, "alpha and beta sequences", checks);
}

// ---------------------------------------------------------------- 6

/// Printed grids for the parts <1,2> and <1,3>: row z, columns y = 0..=7.
const UNRESTRICTED_ROWS: [&str; 16] = [
    "1 0 0 0 0 0 0 0",
    "0 0 0 0 0 0 0 0",
    "0 1 0 0 0 0 0 0",
    "0 1 0 0 0 0 0 0",
    "0 0 2 0 0 0 0 0",
    "0 0 1 0 0 0 0 0",
    "0 0 2 3 0 0 0 0",
    "0 0 0 2 0 0 0 0",
    "0 0 0 2 5 0 0 0",
    "0 0 0 3 3 0 0 0",
    "0 0 0 0 4 7 0 0",
    "0 0 0 0 3 5 0 0",
    "0 0 0 0 5 6 11 0",
    "0 0 0 0 0 6 7 0",
    "0 0 0 0 0 5 10 14",
    "0 0 0 0 0 7 9 11",
];

const DISTINCT_ROWS: [&str; 16] = [
    "1 0 0 0 0 0 0 0",
    "0 0 0 0 0 0 0 0",
    "0 1 0 0 0 0 0 0",
    "0 1 0 0 0 0 0 0",
    "0 0 1 0 0 0 0 0",
    "0 0 1 0 0 0 0 0",
    "0 0 1 2 0 0 0 0",
    "0 0 0 1 0 0 0 0",
    "0 0 0 1 2 0 0 0",
    "0 0 0 2 2 0 0 0",
    "0 0 0 0 1 3 0 0",
    "0 0 0 0 2 2 0 0",
    "0 0 0 0 2 2 4 0",
    "0 0 0 0 0 2 3 0",
    "0 0 0 0 0 2 2 4",
    "0 0 0 0 0 3 4 4",
];

fn grid_check(name: &str, rows: &[&str; 16], rule: MultiplicityRule) -> Check {
    let parts = PartSet::named("s1,s2", rule).unwrap();
    let grid = partition_grid(&parts, 7, 15).unwrap();
    let mut bad = Vec::new();
    for (z, row) in rows.iter().enumerate() {
        for (y, cell) in row.split_whitespace().enumerate() {
            let printed: u128 = cell.parse().unwrap();
            let direct = count_vector_partitions(&[y as i64, z as i64], &parts).unwrap();
            if grid.get(y, z) != printed {
                bad.push(format!("<{y},{z}> printed {printed}, computed {} (brute force {direct})", grid.get(y, z)));
            }
        }
    }
    check(6, name, bad.is_empty(), format!("128 cells, {}", if bad.is_empty() { "all equal".into() } else { bad.join("; ") }))
}

fn criterion_6(run: &mut Run) {
    let mut checks = vec![
        grid_check("unrestricted-grid", &UNRESTRICTED_ROWS, MultiplicityRule::Unrestricted),
        grid_check("distinct-grid", &DISTINCT_ROWS, MultiplicityRule::Distinct),
    ];
    let mut bad = Vec::new();
    for rule in [MultiplicityRule::Unrestricted, MultiplicityRule::Distinct] {
        let parts = PartSet::named("s1,s2", rule).unwrap();
        let gf = partition_grid(&parts, 12, 12).unwrap();
        let dp = partition_grid_dp(&parts, 12, 12).unwrap();
        for z in 0..=12 {
            for y in 0..=12 {
                let direct = count_vector_partitions(&[y as i64, z as i64], &parts).unwrap();
                if gf.get(y, z) != dp.get(y, z) || gf.get(y, z) != direct {
                    bad.push(format!("{rule:?} <{y},{z}>"));
                }
            }
        }
    }
    checks.push(check(6, "gf-equals-dp", bad.is_empty(), format!("z, y <= 12, differing {bad:?}")));
    run.criterion(6, "partition grids", checks);
}

// ---------------------------------------------------------------- 7

/// `p(n)` by the pentagonal number recurrence and `D(n)` as odd-part counts.
fn classical(n: usize) -> (Vec<u128>, Vec<u128>) {
    let mut p = vec![0i128; n + 1];
    p[0] = 1;
    for m in 1..=n as i64 {
        let mut acc = 0i128;
        for k in 1i64.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[(m - g1) as usize];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                acc += sign * p[(m - g2) as usize];
            }
        }
        p[m as usize] = acc;
    }
    let mut d = vec![0u128; n + 1];
    d[0] = 1;
    for k in (1..=n).step_by(2) {
        for m in k..=n {
            d[m] += d[m - k];
        }
    }
    (p.into_iter().map(|v| v as u128).collect(), d)
}

fn criterion_7(run: &mut Run) {
    let (p, d) = classical(30);
    let mut rng = ChaCha8Rng::seed_from_u64(0x0acc_e97a);
    let mut bad = Vec::new();
    let mut checked = 0;
    while checked < 200 {
        let dim = rng.gen_range(2..=4);
        let line: Vec<i64> = (0..dim).map(|_| rng.gen_range(0..=5)).collect();
        if line[dim - 1] == 0 || gcd_vector(&line).unwrap() != 1 {
            continue;
        }
        let k = rng.gen_range(1..=if dim == 4 { 10 } else { 16 });
        let target: Vec<i64> = line.iter().map(|c| c * k).collect();
        let rule = if rng.gen_bool(0.5) {
            MultiplicityRule::Unrestricted
        } else {
            MultiplicityRule::Distinct
        };
        let parts = PartSet::new(vec![line.clone()], rule).unwrap();
        let series = partition_series(&parts, target[dim - 1] as usize).unwrap();
        let count = coefficient_count(&series, &target).unwrap();
        let expected = match rule {
            MultiplicityRule::Unrestricted => p[k as usize],
            MultiplicityRule::Distinct => d[k as usize],
        };
        if count != expected {
            bad.push(format!("{line:?} x {k} {rule:?}: {count} vs {expected}"));
        }
        checked += 1;
    }
    run.criterion(
        7,
        "radial-line law",
        vec![check(7, "random-targets", bad.is_empty(), format!("{checked} targets, failing {bad:?}"))],
    );
}

// ---------------------------------------------------------------- 8

const ZETA3: f64 = 1.202_056_903_159_594_3;
const ZETA5: f64 = 1.036_927_755_143_37;

fn criterion_8(run: &mut Run) {
    let mut checks = Vec::new();
    for (dim, order) in [(2, 12), (3, 12), (4, 8), (5, 8)] {
        let r = gcd_sum_report(dim, order).unwrap();
        checks.push(check(
            8,
            &format!("gcd-sum-{dim}d"),
            r.equal,
            format!("order {order}, {} terms, {:?}", r.terms, r.first_difference),
        ));
    }

    let r = coprime_power_sum(&[2.0, 2.0], 2000).unwrap();
    let err = (r.direct - 2.5).abs();
    checks.push(check(
        8,
        "coprime-2-2",
        err <= r.direct_tail_bound && r.direct_tail_bound < 2e-2,
        format!("|{:.12} - 2.5| = {err:.3e}, bound {:.3e}", r.direct, r.direct_tail_bound),
    ));

    let zeta2 = PI * PI / 6.0;
    let zeta8 = PI.powi(8) / 9450.0;
    for (name, s, expected) in [
        ("coprime-2-3", [2.0, 3.0], zeta2 * ZETA3 / ZETA5),
        ("coprime-3-5", [3.0, 5.0], ZETA3 * ZETA5 / zeta8),
    ] {
        let r = coprime_power_sum(&s, 2000).unwrap();
        let err = (r.direct - expected).abs();
        let quotient_err = (r.zeta_quotient - expected).abs();
        checks.push(check(
            8,
            name,
            r.agrees && err <= r.combined_bound && quotient_err <= r.zeta_quotient_error + 1e-15,
            format!(
                "sum {:.12}, expected {expected:.12}, |diff| {err:.3e}, combined bound {:.3e}",
                r.direct, r.combined_bound
            ),
        ));
    }
    run.criterion(8, "gcd sums and zeta quotients", checks);
}

// ---------------------------------------------------------------- main

fn main() -> ExitCode {
    let mut run = Run::default();
    criterion_1(&mut run);
    criterion_2(&mut run);
    let (suite, elapsed) = timed(|| run_suite(1.0).expect("suite runs"));
    // Building the summary exercises the same path as the command line.
    summarize(&suite).expect("summary builds");
    criterion_3(&mut run, &suite.reports, elapsed);
    criterion_4(&mut run, &suite.reports);
    criterion_5(&mut run);
    criterion_6(&mut run);
    criterion_7(&mut run);
    criterion_8(&mut run);
    criterion_9(&mut run, &suite.reports);
    run.criteria.sort_by_key(|c| c.0);

    let known: BTreeSet<&str> = KNOWN_RED.iter().copied().collect();
    let mut unexpected = Vec::new();
    for (n, title, checks) in &run.criteria {
        let ok = checks.iter().all(|c| c.ok);
        println!("{} criterion {n}: {title}", if ok { "PASS" } else { "FAIL" });
        for c in checks {
            let red = known.contains(c.id.as_str());
            let tag = match (c.ok, red) {
                (true, false) => "pass",
                (false, true) => "fail (known)",
                (false, false) => "FAIL (unexpected)",
                (true, true) => "PASS (expected to fail)",
            };
            println!("    {tag:<24} {:<28} {}", c.id, c.detail);
            if c.ok == red {
                unexpected.push(c.id.clone());
            }
        }
    }
    let seen: BTreeSet<&str> = run
        .criteria
        .iter()
        .flat_map(|c| c.2.iter().map(|k| k.id.as_str()))
        .collect();
    for id in &known {
        if !seen.contains(id) {
            unexpected.push(format!("{id} (not run)"));
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: failing sub-checks are exactly the known discrepancies");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected results {unexpected:?}");
        ExitCode::FAILURE
    }
}
