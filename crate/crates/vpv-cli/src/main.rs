use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use vpv_core::arith::parse_rational;
use vpv_core::determinant::{compare_with_closed_form, hessenberg_coefficient, Family, HessenbergSpec};
use vpv_core::gcdzeta::{coprime_power_sum, gcd_sum_report, particular_case_eval, ParticularCase};
use vpv_core::identity::{lookup, verify_with, Status, VerifyOptions};
use vpv_core::lattice::visible_points;
use vpv_core::partitions::{partition_grid, MultiplicityRule, PartSet};
use vpv_core::poly::var_names;
use vpv_core::sequences::{check_alpha_properties, sequence, SequenceName};
use vpv_core::suite::{order_scale_from_env, run_suite, summarize};
use vpv_core::{ConeKind, ConeRegion, Rational};

#[derive(Parser, Debug)]
#[command(name = "vpv", version, about = "Verify visible point vector identities")]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Pretty,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check one catalog entry three ways.
    Verify {
        #[arg(long)]
        id: String,
        #[arg(long)]
        order: Option<usize>,
        /// Substitution such as `y=1/2`; `z=q` evaluates at a fixed z.
        #[arg(long = "sub", value_name = "VAR=VALUE")]
        subs: Vec<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Option<Vec<i64>>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run every catalog entry at its default order.
    Suite {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Vector partition counts on a window of the (y, z) grid.
    Grid {
        #[arg(long, default_value = "s1,s2")]
        parts: String,
        #[arg(long, default_value = "unrestricted")]
        rule: MultiplicityRule,
        #[arg(long, default_value_t = 7)]
        max_y: usize,
        #[arg(long, default_value_t = 15)]
        max_z: usize,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
    /// Hessenberg determinant for n! times a Taylor coefficient.
    DetCoeff {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Also compare every size up to n with the closed form.
        #[arg(long)]
        check: bool,
    },
    /// The alpha or beta sequence.
    Seq {
        #[arg(long)]
        name: SequenceName,
        #[arg(long)]
        n: usize,
        /// Add the recurrence, gcd and last-digit report (alpha only).
        #[arg(long)]
        check: bool,
    },
    /// Lambert sums over visible points against their closed forms.
    Gcdsum {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 8)]
        order: usize,
        /// Evaluate a particular case instead.
        #[arg(long)]
        case: Option<ParticularCase>,
    },
    /// Coprime power sums against zeta quotients.
    Zetasum {
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<f64>,
        #[arg(long, default_value_t = 2000)]
        trunc: u64,
    },
    /// Lattice points of a cone.
    Points {
        #[arg(long)]
        region: ConeKind,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long)]
        max_z: i64,
        /// Keep only points with gcd 1.
        #[arg(long)]
        visible: bool,
    },
}

fn parse_sub(s: &str) -> Result<(char, Rational)> {
    let (var, val) = s
        .split_once('=')
        .with_context(|| format!("substitution `{s}` is not VAR=VALUE"))?;
    let mut chars = var.trim().chars();
    let (Some(c), None) = (chars.next(), chars.next()) else {
        bail!("substitution variable `{var}` must be one letter");
    };
    Ok((c, parse_rational(val.trim())?))
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

struct Outcome {
    text: String,
    ok: bool,
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Verify {
            id,
            order,
            subs,
            weights,
            dim,
            format,
        } => {
            let spec = lookup(id)?;
            let opts = VerifyOptions {
                order: *order,
                substitutions: subs.iter().map(|s| parse_sub(s)).collect::<Result<_>>()?,
                weights: weights.clone(),
                dim: *dim,
            };
            let report = verify_with(&spec, &opts)?;
            let ok = report.status != Status::Mismatch;
            let text = match format {
                Format::Json => json(&report)?,
                Format::Tsv => bail!("verify has no tsv output"),
                Format::Pretty => {
                    let names: Vec<char> = report.variables.iter().filter_map(|v| v.chars().next()).collect();
                    let series = report
                        .series
                        .as_ref()
                        .map(|s| s.pretty_named(&names))
                        .unwrap_or_default();
                    let mut t = format!("{} {:?} order {}\n{}\n", report.id, report.status, report.order, series);
                    if let Some(d) = &report.first_difference {
                        t.push_str(&format!(
                            "{} differs at {:?}: {} vs {}\n",
                            d.pair, d.difference.exponents, d.difference.left, d.difference.right
                        ));
                    }
                    for g in report.goldens.iter().filter(|g| !g.matches) {
                        t.push_str(&format!("printed value differs: {}\n", g.label));
                    }
                    t
                }
            };
            Ok(Outcome { text, ok })
        }
        Command::Suite { format } => {
            let run = run_suite(order_scale_from_env()?)?;
            for (r, t) in run.reports.iter().zip(&run.timings) {
                eprintln!("{}\t{}\t{:?}\t{:.3}s", r.id, r.order, r.status, t.as_secs_f64());
            }
            let summary = summarize(&run)?;
            let text = match format {
                Format::Json => json(&summary)?,
                Format::Tsv | Format::Pretty => {
                    let mut t = String::from("id\torder\tstatus\n");
                    for r in &summary.rows {
                        t.push_str(&format!("{}\t{}\t{}\n", r.id, r.order, status_name(r.status)));
                    }
                    t
                }
            };
            Ok(Outcome {
                text,
                ok: summary.all_passed(),
            })
        }
        Command::Grid {
            parts,
            rule,
            max_y,
            max_z,
            format,
        } => {
            let set = PartSet::named(parts, *rule)?;
            if set.dim() != 2 {
                bail!("grid needs two-dimensional parts");
            }
            let grid = partition_grid(&set, *max_y, *max_z)?;
            let text = match format {
                Format::Json => json(&grid)?,
                _ => grid.to_tsv(),
            };
            Ok(Outcome { text, ok: true })
        }
        Command::DetCoeff { family, n, check } => {
            let p = hessenberg_coefficient(&HessenbergSpec {
                family: *family,
                size: *n,
            })?;
            let names = var_names(family.nvars());
            let first_disagreement = if *check {
                compare_with_closed_form(*family, *n)?
            } else {
                None
            };
            let out = DetOutput {
                family: family.name(),
                n: *n,
                coefficient: p.pretty(&names[..names.len() - 1]),
                checked: *check,
                first_disagreement,
            };
            Ok(Outcome {
                text: json(&out)?,
                ok: first_disagreement.is_none(),
            })
        }
        Command::Seq { name, n, check } => {
            let table = sequence(*name, *n)?;
            let report = match (check, name) {
                (true, SequenceName::Alpha) => Some(check_alpha_properties(*n)?),
                (true, SequenceName::Beta) => bail!("--check applies to alpha only"),
                _ => None,
            };
            let ok = report.as_ref().is_none_or(|r| {
                r.recurrence_holds && r.gcd_failures.is_empty() && r.last_digit_failures.is_empty()
            });
            Ok(Outcome {
                text: json(&SeqOutput { table, report })?,
                ok,
            })
        }
        Command::Gcdsum { dim, order, case } => match case {
            Some(c) => {
                let r = particular_case_eval(*c)?;
                Ok(Outcome {
                    text: json(&r)?,
                    ok: !r.flagged,
                })
            }
            None => {
                let r = gcd_sum_report(*dim, *order)?;
                Ok(Outcome {
                    text: json(&r)?,
                    ok: r.equal,
                })
            }
        },
        Command::Zetasum { exponents, trunc } => {
            let r = coprime_power_sum(exponents, *trunc)?;
            Ok(Outcome {
                text: json(&r)?,
                ok: r.agrees && r.mobius_agrees,
            })
        }
        Command::Points {
            region,
            dim,
            max_z,
            visible,
        } => {
            let r = ConeRegion::new(*region, *dim)?;
            let points = if *visible {
                visible_points(&r, *max_z)?
            } else {
                if *max_z < 1 {
                    bail!("max-z must be at least 1");
                }
                r.lattice_points(*max_z)
            };
            Ok(Outcome {
                text: json(&points)?,
                ok: true,
            })
        }
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Flagged => "flagged",
        Status::Mismatch => "mismatch",
    }
}

#[derive(Serialize)]
struct DetOutput {
    family: &'static str,
    n: usize,
    coefficient: String,
    checked: bool,
    first_disagreement: Option<usize>,
}

#[derive(Serialize)]
struct SeqOutput {
    table: vpv_core::sequences::SequenceTable,
    report: Option<vpv_core::sequences::AlphaReport>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.output {
                Some(path) => fs::write(path, &out.text)
                    .with_context(|| format!("writing {}", path.display())),
                None => std::io::stdout()
                    .write_all(out.text.as_bytes())
                    .context("writing stdout"),
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
