//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use crate::casson::{lambda_pair, lambda_surgery_s3, PairDescription};
use crate::knotdata::{Catalog, KnotRecord};
use crate::rational::{dedekind_paper, dedekind_standard, format_rational, parse_rational, Rational};
use crate::slopes::{
    check_exceptional_bounds, divisor_family, BoundsReport, Hypotheses, Slope, SlopeClaim, SlopeKind,
};
use crate::sympoly::{cyclotomic_lift, termwise_power_lift};

#[derive(Parser, Debug)]
#[command(
    name = "casson-cover",
    about = "Exact Casson-Walker invariants of cyclic covering pairs",
    disable_version_flag = true,
    allow_negative_numbers = true
)]
struct Args {
    /// Print the version and the built-in catalog fingerprint.
    #[arg(long, global = true)]
    version: bool,
    /// Knot catalog to use instead of the built-in one.
    #[arg(long, global = true, value_name = "FILE")]
    catalog: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Kv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Alexander polynomial of the lift to the k-fold branched cyclic cover.
    Lift {
        #[arg(long)]
        knot: String,
        #[arg(long)]
        k: u32,
        /// Also print the termwise k-th power variant.
        #[arg(long = "paper-eq10")]
        termwise: bool,
    },
    /// Dedekind sum s(x, y).
    Dedekind {
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
        #[arg(long, allow_hyphen_values = true)]
        y: i64,
        /// Sum over j = 1..|x| instead of j = 1..|y|.
        #[arg(long)]
        paper_form: bool,
    },
    /// lambda of a/b surgery on a knot in S^3.
    LambdaSurgery {
        #[arg(long)]
        knot: String,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    /// lambda of the k-fold cover in a pairwise surgery description.
    LambdaPair {
        #[arg(long)]
        knot: String,
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        #[arg(long, allow_hyphen_values = true, value_name = "A/B")]
        lambda_x: String,
        #[arg(long, allow_hyphen_values = true, value_name = "A/B")]
        lambda_branched: Option<String>,
        /// Comma-separated +-1 surgery coefficients of the link.
        #[arg(long, allow_hyphen_values = true, value_name = "CSV")]
        link: Option<String>,
    },
    /// Cover orders and lifted slopes for every divisor of the numerator.
    SlopesFamily {
        #[arg(long, allow_hyphen_values = true, value_name = "P/Q")]
        slope: String,
    },
    /// Check claimed finite and cyclic slopes against the distance bounds.
    SlopesCheck {
        #[arg(long)]
        k: u64,
        #[arg(long, value_name = "FILE")]
        claims: String,
        #[arg(long, default_value = "", value_name = "CSV")]
        flags: String,
    },
    /// List and validate the knot catalog.
    Catalog,
}

enum CliError {
    Parse(String),
    Domain(String),
}

impl CliError {
    fn status(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Domain(m) => m,
        }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn parse_err(e: impl std::fmt::Display) -> CliError {
    CliError::Parse(e.to_string())
}

/// Runs the command line and returns the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if status == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return status;
        }
    };
    let mut buf = Vec::new();
    match dispatch(&args, &mut buf) {
        Ok(()) => {
            let _ = out.write_all(&buf);
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.status()
        }
    }
}

fn dispatch(args: &Args, out: &mut Vec<u8>) -> Result<(), CliError> {
    if args.version {
        writeln!(
            out,
            "casson-cover {} catalog {}",
            env!("CARGO_PKG_VERSION"),
            Catalog::builtin_fingerprint()
        )
        .map_err(domain)?;
        return Ok(());
    }
    let Some(command) = &args.command else {
        return Err(CliError::Parse("no subcommand given, see --help".into()));
    };
    let owned;
    let catalog = match &args.catalog {
        Some(path) => {
            let source = std::fs::read_to_string(path).map_err(|e| domain(format!("{path}: {e}")))?;
            owned = Catalog::parse(&source).map_err(|e| parse_err(format!("{path}: {e}")))?;
            &owned
        }
        None => Catalog::builtin(),
    };
    let kv = args.format == Format::Kv;
    let mut lines = Vec::new();
    match command {
        Command::Lift { knot, k, termwise } => {
            let record = lookup(catalog, knot)?;
            let lift = cyclotomic_lift(&record.alexander, *k).map_err(domain)?;
            let variant = if *termwise {
                Some(termwise_power_lift(&record.alexander, *k).map_err(domain)?)
            } else {
                None
            };
            if kv {
                let mut line = format!("knot={knot} k={k} lift={}", lift.to_compact_text('u'));
                if let Some(v) = &variant {
                    line += &format!(
                        " termwise={} unit_equivalent={}",
                        v.to_compact_text('u'),
                        v.unit_equivalent(&lift)
                    );
                }
                lines.push(line);
            } else if let Some(v) = &variant {
                lines.push(format!("lift:     {}", lift.to_text('u')));
                lines.push(format!("termwise: {}", v.to_text('u')));
                lines.push(if v.unit_equivalent(&lift) {
                    "note: the termwise k-th power agrees with the lift up to units".into()
                } else {
                    "note: the termwise k-th power diverges from the lift; it drops the cross terms of the product over k-th roots of unity".into()
                });
            } else {
                lines.push(lift.to_text('u'));
            }
        }
        Command::Dedekind { x, y, paper_form } => {
            let (bx, by) = ((*x).into(), (*y).into());
            let value = if *paper_form {
                dedekind_paper(&bx, &by)
            } else {
                dedekind_standard(&bx, &by)
            }
            .map_err(domain)?;
            lines.push(if kv {
                let form = if *paper_form { "truncated" } else { "standard" };
                format!("x={x} y={y} form={form} value={}", format_rational(&value))
            } else {
                format_rational(&value)
            });
        }
        Command::LambdaSurgery { knot, a, b } => {
            let record = lookup(catalog, knot)?;
            let value = lambda_surgery_s3(&record.alexander, *a, *b).map_err(domain)?;
            lines.push(if kv {
                format!("knot={knot} a={a} b={b} lambda={}", format_rational(&value))
            } else {
                format_rational(&value)
            });
        }
        Command::LambdaPair { knot, k, p, q, lambda_x, lambda_branched, link } => {
            let record = lookup(catalog, knot)?;
            let mut desc = PairDescription::new(record, *k, *p, *q).with_lambda_x(rational_arg(lambda_x)?);
            if let Some(b) = lambda_branched {
                desc = desc.with_lambda_branched(rational_arg(b)?);
            }
            if let Some(csv) = link {
                desc.link_coefficients = csv
                    .split(',')
                    .map(|c| c.trim().parse::<i64>().map_err(|_| parse_err(format!("invalid link coefficient '{c}'"))))
                    .collect::<Result<_, _>>()?;
            }
            let value = lambda_pair(&desc).map_err(domain)?;
            lines.push(if kv {
                let head = format!("knot={knot} k={k} p={p} q={q}");
                match value.resolved() {
                    Some(v) => format!("{head} lambda={}", format_rational(v)),
                    None => format!(
                        "{head} lambda_minus_branched={} branched=unresolved",
                        format_rational(&value.value)
                    ),
                }
            } else {
                value.to_string()
            });
        }
        Command::SlopesFamily { slope } => {
            let base: Slope = slope.parse().map_err(parse_err)?;
            let family = divisor_family(&base).map_err(domain)?;
            if !kv {
                lines.push("cover_order  slope".into());
            }
            for e in family {
                lines.push(if kv {
                    format!("cover_order={} slope={} trivial={}", e.cover_order, e.slope, e.trivial)
                } else {
                    let tag = if e.trivial { "  (trivial)" } else { "" };
                    format!("{:>11}  {}{tag}", e.cover_order, e.slope)
                });
            }
        }
        Command::SlopesCheck { k, claims, flags } => {
            let flags = Hypotheses::from_csv(flags).map_err(parse_err)?;
            let source =
                std::fs::read_to_string(claims).map_err(|e| domain(format!("{claims}: {e}")))?;
            let parsed = parse_claims(&source, *k).map_err(|e| parse_err(format!("{claims}: {e}")))?;
            let report = check_exceptional_bounds(&parsed, *k, &flags).map_err(domain)?;
            render_report(&report, kv, &mut lines);
        }
        Command::Catalog => {
            for r in catalog.records() {
                lines.push(render_record(r, kv));
            }
            for w in catalog.warnings() {
                lines.push(if kv { format!("warning={}", w.replace(' ', "_")) } else { format!("warning: {w}") });
            }
            if args.catalog.is_none() {
                lines.push(if kv {
                    format!("fingerprint={}", Catalog::builtin_fingerprint())
                } else {
                    format!("fingerprint: {}", Catalog::builtin_fingerprint())
                });
            }
        }
    }
    for line in lines {
        writeln!(out, "{line}").map_err(domain)?;
    }
    Ok(())
}

fn lookup<'c>(catalog: &'c Catalog, name: &str) -> Result<&'c KnotRecord, CliError> {
    catalog
        .get(name)
        .ok_or_else(|| CliError::Domain(format!("unknown knot '{name}'")))
}

fn rational_arg(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(parse_err)
}

fn render_record(r: &KnotRecord, kv: bool) -> String {
    let lambdas: Vec<String> = r
        .branched_cover_lambda
        .iter()
        .map(|(k, v)| format!("{k}:{}", format_rational(v)))
        .collect();
    if kv {
        let mut line = format!("name={} alexander={}", r.name, r.alexander.to_compact_text('t'));
        if let Some(v) = &r.seifert {
            line += &format!(" seifert={v}");
        }
        if !lambdas.is_empty() {
            line += &format!(" lambda_cover={}", lambdas.join(","));
        }
        line
    } else {
        let mut line = format!("{}: {}", r.name, r.alexander);
        if let Some(v) = &r.seifert {
            line += &format!("  seifert {v}");
        }
        if !lambdas.is_empty() {
            line += &format!("  lambda_cover {}", lambdas.join(", "));
        }
        line
    }
}

fn render_report(report: &BoundsReport, kv: bool, lines: &mut Vec<String>) {
    let hyps = |b: &crate::slopes::Bound| {
        b.hypotheses().iter().map(|h| h.as_str()).collect::<Vec<_>>().join(",")
    };
    let limit = |b: &crate::slopes::Bound| b.limit(report.k).map(|l| format_rational(&l));
    for (status, bounds) in [("applied", &report.applied), ("skipped", &report.skipped)] {
        for b in bounds {
            lines.push(if kv {
                format!("record=bound name={} status={status} hypotheses={}", b.as_str(), hyps(b))
            } else {
                format!("{status}: {} (assumes {})", b.as_str(), hyps(b).replace(',', ", "))
            });
        }
    }
    for v in &report.violations {
        let slopes: Vec<String> = v.slopes.iter().map(Slope::to_string).collect();
        lines.push(match (kv, v.distance, limit(&v.bound)) {
            (true, Some(d), Some(l)) => format!(
                "record=violation bound={} slopes={} distance={d} limit={l}",
                v.bound.as_str(),
                slopes.join(",")
            ),
            (true, _, _) => format!(
                "record=violation bound={} slopes={}",
                v.bound.as_str(),
                slopes.join(",")
            ),
            (false, Some(d), Some(l)) => format!(
                "violation: {}: {} at distance {d} > {l}",
                v.bound.as_str(),
                slopes.join(" and ")
            ),
            (false, _, _) => format!(
                "violation: {}: {} cyclic slopes with numerator other than +-1: {}",
                v.bound.as_str(),
                v.slopes.len(),
                slopes.join(", ")
            ),
        });
    }
    let n = report.violations.len();
    lines.push(if kv {
        format!("record=summary k={} violations={n} consistent={}", report.k, report.is_consistent())
    } else if n == 0 {
        format!("k = {}: consistent", report.k)
    } else {
        format!("k = {}: {n} violation(s)", report.k)
    });
}

/// Reads `[claim]` records with `slope`, `kind` and optional `cover_order`
/// fields. Fields may share a line when separated by commas.
pub fn parse_claims(source: &str, default_order: u64) -> Result<Vec<SlopeClaim>, String> {
    struct Draft {
        line: usize,
        slope: Option<Slope>,
        kind: Option<SlopeKind>,
        cover_order: Option<u64>,
    }
    let mut drafts: Vec<Draft> = Vec::new();
    for (idx, raw) in source.lines().enumerate() {
        let line = idx + 1;
        let mut text = raw.split('#').next().unwrap_or("").trim();
        if let Some(rest) = text.strip_prefix("[claim]") {
            drafts.push(Draft { line, slope: None, kind: None, cover_order: None });
            text = rest.trim();
        }
        for field in text.split(',').map(str::trim).filter(|f| !f.is_empty()) {
            let (key, value) = field
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| format!("line {line}: expected `key = value`"))?;
            let draft = drafts
                .last_mut()
                .ok_or_else(|| format!("line {line}: field outside of a [claim] record"))?;
            let dup = || format!("line {line}: field {key:?} given twice");
            match key {
                "slope" => {
                    let s = value.parse().map_err(|e| format!("line {line}: {e}"))?;
                    if draft.slope.replace(s).is_some() {
                        return Err(dup());
                    }
                }
                "kind" => {
                    let k = value.parse().map_err(|e| format!("line {line}: {e}"))?;
                    if draft.kind.replace(k).is_some() {
                        return Err(dup());
                    }
                }
                "cover_order" => {
                    let k = value
                        .parse::<u64>()
                        .ok()
                        .filter(|&k| k >= 1)
                        .ok_or_else(|| format!("line {line}: invalid cover_order {value:?}"))?;
                    if draft.cover_order.replace(k).is_some() {
                        return Err(dup());
                    }
                }
                other => return Err(format!("line {line}: unknown field {other:?}")),
            }
        }
    }
    drafts
        .into_iter()
        .map(|d| {
            Ok(SlopeClaim {
                slope: d.slope.ok_or_else(|| format!("line {}: claim is missing a slope", d.line))?,
                kind: d.kind.ok_or_else(|| format!("line {}: claim is missing a kind", d.line))?,
                cover_order: d.cover_order.unwrap_or(default_order),
            })
        })
        .collect()
}
