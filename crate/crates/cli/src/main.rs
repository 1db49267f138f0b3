//! Command-line front end: reductions, point enumeration, coordinate maps,
//! duality, lifting, the Hopf identity checker and module-definition export.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use a2var::duality::hopf::{hopf_identity_check, Profile};
use a2var::duality::{dual_point, duality_map, self_dual_points};
use a2var::moddef::{export_moddef, literature_actions};
use a2var::published::check_published;
use a2var::variety::{project, sq8_fibers, TableStyle};
use a2var::{reduction, Case, CoordinateMap, Error, Exec, Point, Reduction, Variety};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "a2var",
    version,
    about = "Varieties of Steenrod-algebra actions on A(2) and B(2)"
)]
struct Cli {
    /// Evaluate sequentially instead of on the thread pool.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    Sym,
    Gen,
    B,
}

impl From<CaseArg> for Case {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::Sym => Case::Symmetric,
            CaseArg::Gen => Case::General,
            CaseArg::B => Case::BOnly,
        }
    }
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Sq8,
    Sq16,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum LogFormat {
    Json,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "sym")]
    case: CaseArg,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Fail with exit status 1 unless every published count is reproduced.
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the reduction and print the step counts, free variables and relations.
    Pipeline {
        #[command(flatten)]
        common: Common,
        /// Also write each step record to stderr, one JSON object per line.
        #[arg(long, value_enum)]
        log: Option<LogFormat>,
    },
    /// List the points of the variety or of its Sq^8 or Sq^16 part.
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "all")]
        what: What,
    },
    /// Print the coordinate maps leaving the case's variety.
    Maps {
        #[command(flatten)]
        common: Common,
    },
    /// List the points fixed by the duality.
    SelfDual {
        #[command(flatten)]
        common: Common,
    },
    /// Image of a point under the duality.
    DualPoint {
        #[command(flatten)]
        common: Common,
        /// Comma-separated 0/1 values of the free coordinates.
        #[arg(long)]
        point: Point,
    },
    /// Symmetric Sq^8 actions inducing each Sq^8 action on B(2).
    Lift {
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        /// Restrict to one B(2) Sq^8 point (a1,a2,a13,a23).
        #[arg(long)]
        point: Option<Point>,
    },
    /// Check the coproduct identity on a truncated dual Steenrod algebra.
    HopfCheck {
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        /// Truncation heights, e.g. 3,2,1.
        #[arg(long)]
        profile: Profile,
    },
    /// Write the module-definition file of a point.
    Moddef {
        #[arg(long, value_enum, default_value = "sym")]
        case: CaseArg,
        #[arg(long)]
        point: Point,
        /// Output file; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The two published actions, their duals, and their compatibility.
    Literature {
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

/// Failure of a command, carrying its exit status.
enum Failure {
    Usage(Error),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::PointLength { .. }
            | Error::PointValue(_)
            | Error::MalformedPoint { .. }
            | Error::OffVariety
            | Error::Profile(_)
            | Error::UnknownCase(_) => Failure::Usage(e),
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn json<T: Serialize>(value: &T) -> Outcome {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Failure::Internal(e.to_string()))
}

fn strict_check(red: &Reduction, strict: bool, exec: Exec) -> Result<(), Failure> {
    if !strict {
        return Ok(());
    }
    let mismatches = check_published(red, exec)?;
    if mismatches.is_empty() {
        return Ok(());
    }
    let lines: Vec<String> = mismatches
        .iter()
        .map(|m| format!("{}: expected {}, got {}", m.what, m.expected, m.got))
        .collect();
    Err(Failure::Internal(format!(
        "published values not reproduced:\n  {}",
        lines.join("\n  ")
    )))
}

/// Bits of a point split at the Sq^8/Sq^16 boundary, e.g. `0 1 1 0 0 | 1 0 0 0`.
fn split_bits(v: &Variety, p: &Point) -> String {
    let k = v.sq8().dim();
    let bits: Vec<String> = p.bits().iter().map(u8::to_string).collect();
    format!("{} | {}", bits[..k].join(" "), bits[k..].join(" "))
}

#[derive(Serialize)]
struct PipelineReport<'a> {
    case: &'a str,
    steps: &'a [a2var::pipeline::StepLog],
    eliminations: &'a [a2var::pipeline::Elimination],
    free: Vec<&'a str>,
    relations: Vec<String>,
    dictionary: Vec<DictionaryRow>,
}

#[derive(Serialize)]
struct DictionaryRow {
    index: usize,
    name: String,
    value: String,
}

fn pipeline(common: &Common, log: Option<LogFormat>, exec: Exec) -> Outcome {
    let red = reduction(common.case.into())?;
    if log.is_some() {
        let mut err = io::stderr().lock();
        for step in &red.log {
            writeln!(
                err,
                "{}",
                serde_json::to_string(step).map_err(|e| Failure::Internal(e.to_string()))?
            )?;
        }
    }
    strict_check(red, common.strict, exec)?;
    let relations: Vec<String> = red
        .relations
        .iter()
        .map(|r| red.table.canonical(r).to_string())
        .collect();
    if common.format == Format::Json {
        return json(&PipelineReport {
            case: red.case.name(),
            steps: &red.log,
            eliminations: &red.eliminations,
            free: red.free_names(),
            relations,
            dictionary: red
                .dictionary_rows()
                .into_iter()
                .map(|(index, name, value)| DictionaryRow { index, name, value })
                .collect(),
        });
    }
    let mut out = format!("case {}\n", red.case.name());
    for s in &red.log {
        out += &format!(
            "{:<12} raw {:>5} nonzero {:>5} distinct {:>4} linear {:>4} basis {:>4}\n",
            s.label, s.raw_entries, s.raw_nonzero, s.distinct, s.linear, s.rref
        );
    }
    for e in &red.eliminations {
        out += &format!("eliminate {} using r{}\n", e.var, e.relation);
    }
    out += &format!("free [{}]\n", red.free_names().join(","));
    for r in &relations {
        out += &format!("relation {r} = 0\n");
    }
    Ok(out)
}

fn enumerate(common: &Common, what: What, exec: Exec) -> Outcome {
    let red = reduction(common.case.into())?;
    strict_check(red, common.strict, exec)?;
    let full = Variety::of(red);
    let v = match what {
        What::Sq8 => full.sq8(),
        What::Sq16 => full.sq16(),
        What::All => full,
    };
    let points = v.points(exec);
    match common.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Listing<'a> {
                names: Vec<&'a str>,
                points: &'a [Point],
            }
            json(&Listing {
                names: v.names(),
                points: &points,
            })
        }
        Format::Table => Ok(v.table(&points, TableStyle::for_case(red.case))),
    }
}

#[derive(Serialize)]
struct MapReport {
    name: &'static str,
    source: &'static str,
    target: &'static str,
    images: Vec<(String, String)>,
}

fn maps(common: &Common, exec: Exec) -> Outcome {
    let case: Case = common.case.into();
    let red = reduction(case)?;
    strict_check(red, common.strict, exec)?;
    let mut list = vec![duality_map(red)?];
    match case {
        Case::Symmetric => list.push(CoordinateMap::sym_to_gen(red)?),
        Case::General => list.extend([CoordinateMap::q(red)?, CoordinateMap::s(red)?]),
        Case::BOnly => {}
    }
    let reports: Vec<MapReport> = list
        .iter()
        .map(|m| MapReport {
            name: m.name,
            source: m.source.name(),
            target: m.target.name(),
            images: m
                .targets
                .iter()
                .zip(&m.images)
                .map(|(t, p)| (t.to_string(), red.table.magma(p).to_string()))
                .collect(),
        })
        .collect();
    if common.format == Format::Json {
        return json(&reports);
    }
    let mut out = String::new();
    for r in &reports {
        out += &format!("{}: {} -> {}\n", r.name, r.source, r.target);
        for (t, p) in &r.images {
            out += &format!("  {t} -> {p}\n");
        }
    }
    Ok(out)
}

fn self_dual(common: &Common, exec: Exec) -> Outcome {
    let red = reduction(common.case.into())?;
    strict_check(red, common.strict, exec)?;
    let v = Variety::of(red);
    let points = self_dual_points(&v, &duality_map(red)?, exec);
    match common.format {
        Format::Json => json(&points),
        Format::Table => Ok(points.iter().map(|p| split_bits(&v, p) + "\n").collect()),
    }
}

fn dual(common: &Common, p: &Point, exec: Exec) -> Outcome {
    let red = reduction(common.case.into())?;
    strict_check(red, common.strict, exec)?;
    let v = Variety::of(red);
    let d = dual_point(&v, &duality_map(red)?, p)?;
    match common.format {
        Format::Json => json(&d),
        Format::Table => Ok(format!("{d}\n")),
    }
}

fn lift(format: Format, point: Option<&Point>, exec: Exec) -> Outcome {
    let (sym, gen, b) = (
        reduction(Case::Symmetric)?,
        reduction(Case::General)?,
        reduction(Case::BOnly)?,
    );
    let mut fibers = sq8_fibers(sym, gen, b, exec)?;
    if let Some(p) = point {
        let vb8 = Variety::of(b).sq8();
        if p.len() != vb8.dim() {
            return Err(Error::PointLength {
                expected: vb8.dim(),
                got: p.len(),
            }
            .into());
        }
        fibers.retain(|f| &f.b == p);
        if fibers.is_empty() {
            return Err(Error::OffVariety.into());
        }
    }
    if format == Format::Json {
        return json(&fibers);
    }
    let mut out = String::new();
    for f in &fibers {
        let lifts: Vec<String> = f.lifts.iter().map(|l| format!("({l})")).collect();
        let shown = if lifts.is_empty() {
            "none".to_string()
        } else {
            lifts.join(" ")
        };
        out += &format!("({}) <- {}\n", f.b, shown);
    }
    Ok(out)
}

fn hopf(format: Format, profile: &Profile) -> Outcome {
    let report = hopf_identity_check(profile);
    match format {
        Format::Json => json(&report),
        Format::Table => {
            let mut out = format!("{}\n", report.holds);
            for term in &report.difference {
                out += &format!("  differs at {term}\n");
            }
            Ok(out)
        }
    }
}

fn moddef(case: CaseArg, p: &Point, out: Option<&PathBuf>) -> Outcome {
    let text = export_moddef(reduction(case.into())?, p)?.to_string();
    match out {
        Some(path) => {
            fs::write(path, text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn literature(format: Format) -> Outcome {
    let report = literature_actions()?;
    if format == Format::Json {
        return json(&report);
    }
    let sym = Variety::of(reduction(Case::Symmetric)?);
    let b = Variety::of(reduction(Case::BOnly)?);
    let b_sq8 = b.sq8();
    let b_split = |p: &Point| -> Result<String, Error> {
        let head = project(&b, &b_sq8, p)?;
        let bits = |q: &Point| {
            q.bits()
                .iter()
                .map(u8::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        Ok(format!(
            "{} | {}",
            bits(&head),
            bits(&Point(p.0[head.len()..].to_vec()))
        ))
    };
    Ok(format!(
        "symmetric zero        {}\nits dual              {}\nB(2) zero             {}\nits dual              {}\nq of symmetric zero   {}\nequals B(2) zero      {}\n",
        split_bits(&sym, &report.symmetric_zero),
        split_bits(&sym, &report.symmetric_zero_dual),
        b_split(&report.b_zero)?,
        b_split(&report.b_zero_dual)?,
        b_split(&report.q_of_symmetric_zero)?,
        report.q_of_symmetric_zero_is_b_zero,
    ))
}

fn run(cli: &Cli) -> Outcome {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    match &cli.command {
        Command::Pipeline { common, log } => pipeline(common, *log, exec),
        Command::Enumerate { common, what } => enumerate(common, *what, exec),
        Command::Maps { common } => maps(common, exec),
        Command::SelfDual { common } => self_dual(common, exec),
        Command::DualPoint { common, point } => dual(common, point, exec),
        Command::Lift { format, point } => lift(*format, point.as_ref(), exec),
        Command::HopfCheck { format, profile } => hopf(*format, profile),
        Command::Moddef { case, point, out } => moddef(*case, point, out.as_ref()),
        Command::Literature { format } => literature(*format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
