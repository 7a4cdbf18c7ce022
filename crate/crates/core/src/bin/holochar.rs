use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use holochar::classify::{enumerate_candidates, special_cases, EnumOptions, SemisimpleCandidate};
use holochar::lattice::{construct, identify_root_system, roots, LatticeDesc, LatticeName};
use holochar::liealg::{sugawara_c, AffinePair, SimpleType};
use holochar::modforms::{character, theta_of};
use holochar::qseries::QExpansion;
use holochar::verify::{run_suite, Report, Suite};
use holochar::{parse_rational, Rational};

#[derive(Parser)]
#[command(name = "holochar")]
#[command(
    about = "Exact characters, theta series, root systems and weight-one Lie algebra candidates"
)]
#[command(version)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for enumeration (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// q-expansion of the character for central charge 8, 16 or 24
    Character {
        #[arg(long = "c", allow_hyphen_values = true)]
        c: i64,
        /// Constant term added to J when c = 24
        #[arg(long = "const", default_value_t = 0, allow_hyphen_values = true)]
        const24: i64,
        /// Number of integral q-powers to show, starting at the leading term
        #[arg(long, conflicts_with = "trunc")]
        terms: Option<i64>,
        /// Exclusive upper exponent in q^(1/24) units (default 50)
        #[arg(long, allow_hyphen_values = true)]
        trunc: Option<i64>,
    },
    /// Theta series of a named lattice or a Gram matrix file
    Theta {
        #[arg(long)]
        lattice: String,
        /// Number of q-powers, q^0 .. q^(terms-1)
        #[arg(long, default_value_t = 3)]
        terms: i64,
    },
    /// Root count and root system type of a lattice
    Roots {
        #[arg(long)]
        lattice: String,
    },
    /// Sugawara central charge k dim g / (k + h∨)
    Sugawara {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, default_value = "1")]
        level: String,
    },
    /// Candidate semisimple weight-one Lie algebras for central charge 24
    Enumerate {
        #[arg(long, default_value_t = 24)]
        rank_max: u32,
        #[arg(long)]
        rank_exact: Option<u32>,
        /// Restrict to positive integer levels (the default)
        #[arg(long, conflicts_with = "rational_levels")]
        integer_levels: bool,
        /// Allow rational levels; requires --level-cap
        #[arg(long)]
        rational_levels: bool,
        #[arg(long)]
        level_cap: Option<u64>,
    },
    /// Run a named check suite
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: holochar::verify::UnknownSuite| {
        let names: Vec<_> = Suite::EACH
            .iter()
            .map(|s| s.name())
            .chain(["all"])
            .collect();
        format!("{e}; expected one of {}", names.join(", "))
    })
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
    #[error("cannot write output: {0}")]
    Csv(#[from] csv::Error),
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn load_lattice(arg: &str) -> Result<LatticeDesc, CliError> {
    if let Ok(name) = arg.parse::<LatticeName>() {
        return construct(name).map_err(usage);
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(CliError::Usage(format!(
            "{arg:?} is neither a known lattice nor a file"
        )));
    }
    let text = fs::read_to_string(path)?;
    LatticeDesc::parse_gram(&text, Some(arg.to_string())).map_err(usage)
}

fn json_text(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn csv_text(
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| io::Error::other(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("utf-8"))
}

fn series_output(
    s: &QExpansion,
    format: Format,
    extra: serde_json::Value,
) -> Result<String, CliError> {
    Ok(match format {
        Format::Text => format!("{s}\n"),
        Format::Json => {
            let mut v = json!({ "series": s.to_json(), "display": s.to_string() });
            if let (Some(obj), serde_json::Value::Object(more)) = (v.as_object_mut(), extra) {
                obj.extend(more);
            }
            json_text(&v)
        }
        Format::Csv => csv_text(
            &["exponent", "coefficient"],
            (s.base()..s.trunc())
                .map(|e| (e, s.coeff(e).unwrap_or_default()))
                .filter(|(_, c)| *c != Rational::default())
                .map(|(e, c)| vec![e.to_string(), c.to_string()]),
        )?,
    })
}

fn cmd_character(
    c: i64,
    const24: i64,
    terms: Option<i64>,
    trunc: Option<i64>,
    format: Format,
) -> Result<String, CliError> {
    let trunc = match (terms, trunc) {
        (Some(n), _) if n < 1 => return Err(CliError::Usage("--terms must be at least 1".into())),
        (Some(n), _) => -c + 24 * n,
        (None, Some(t)) => t,
        (None, None) => 50,
    };
    let ch = character(c, const24, trunc).map_err(usage)?;
    series_output(&ch, format, json!({ "c": c, "const": const24 }))
}

fn cmd_theta(lattice: &str, terms: i64, format: Format) -> Result<String, CliError> {
    if terms < 1 {
        return Err(CliError::Usage("--terms must be at least 1".into()));
    }
    let l = load_lattice(lattice)?;
    let theta = theta_of(&l, 24 * terms).map_err(usage)?;
    series_output(&theta, format, json!({ "lattice": lattice }))
}

fn cmd_roots(lattice: &str, format: Format) -> Result<String, CliError> {
    let l = load_lattice(lattice)?;
    let count = roots(&l).map_err(usage)?.count_int(2);
    let system = identify_root_system(&l).map_err(usage)?;
    Ok(match format {
        Format::Text => format!("{count} roots, root system {system}\n"),
        Format::Json => json_text(&json!({
            "lattice": lattice,
            "rank": l.rank(),
            "roots": count,
            "root_system": system.to_string(),
        })),
        Format::Csv => csv_text(
            &["lattice", "rank", "roots", "root_system"],
            [vec![
                lattice.to_string(),
                l.rank().to_string(),
                count.to_string(),
                system.to_string(),
            ]],
        )?,
    })
}

fn cmd_sugawara(ty: &str, level: &str, format: Format) -> Result<String, CliError> {
    let ty: SimpleType = ty.parse().map_err(usage)?;
    let level =
        parse_rational(level).ok_or_else(|| CliError::Usage(format!("bad level {level:?}")))?;
    let pair = AffinePair::new(ty, level).map_err(usage)?;
    let c = sugawara_c(&pair);
    Ok(match format {
        Format::Text => format!("{c}\n"),
        Format::Json => json_text(&json!({
            "type": ty.to_string(),
            "level": pair.level().to_string(),
            "c": c.to_string(),
        })),
        Format::Csv => csv_text(
            &["type", "level", "c"],
            [vec![
                ty.to_string(),
                pair.level().to_string(),
                c.to_string(),
            ]],
        )?,
    })
}

fn cmd_enumerate(opts: &EnumOptions, format: Format) -> Result<String, CliError> {
    let found = enumerate_candidates(opts).map_err(usage)?;
    Ok(match format {
        Format::Text => {
            let mut s = String::new();
            for c in &found {
                s.push_str(&format!(
                    "d={} rank={} r={}  {c}\n",
                    c.dim(),
                    c.rank(),
                    c.ratio()
                ));
            }
            for sc in special_cases() {
                s.push_str(&format!("special case d={}: {}\n", sc.dim, sc.description));
            }
            s.push_str(&format!("{} candidates\n", found.len()));
            s
        }
        Format::Json => json_text(&json!({
            "count": found.len(),
            "candidates": found.iter().map(SemisimpleCandidate::to_json).collect::<Vec<_>>(),
            "special_cases": special_cases(),
        })),
        Format::Csv => csv_text(
            &["pairs", "dim", "rank", "ratio", "charges"],
            found.iter().map(|c| {
                let j = c.to_json();
                vec![
                    j.pairs
                        .iter()
                        .map(|p| format!("{}:{}", p.ty, p.level))
                        .collect::<Vec<_>>()
                        .join(" "),
                    j.dim.to_string(),
                    j.rank.to_string(),
                    j.ratio,
                    j.charges.join(" "),
                ]
            }),
        )?,
    })
}

fn cmd_verify(suite: Suite, format: Format) -> Result<(String, bool), CliError> {
    let report: Report = run_suite(suite);
    let passed = report.passed();
    let text = match format {
        Format::Text => format!("{report}\n"),
        Format::Json => json_text(&json!({
            "suite": report.suite,
            "passed": passed,
            "checks": report.checks,
        })),
        Format::Csv => csv_text(
            &["name", "expected", "actual", "pass"],
            report.checks.iter().map(|c| {
                vec![
                    c.name.clone(),
                    c.expected.clone(),
                    c.actual.clone(),
                    c.pass.to_string(),
                ]
            }),
        )?,
    };
    Ok((text, passed))
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let format = cli.format;
    let (text, ok) = match cli.command {
        Command::Character {
            c,
            const24,
            terms,
            trunc,
        } => (cmd_character(c, const24, terms, trunc, format)?, true),
        Command::Theta { lattice, terms } => (cmd_theta(&lattice, terms, format)?, true),
        Command::Roots { lattice } => (cmd_roots(&lattice, format)?, true),
        Command::Sugawara { ty, level } => (cmd_sugawara(&ty, &level, format)?, true),
        Command::Enumerate {
            rank_max,
            rank_exact,
            integer_levels: _,
            rational_levels,
            level_cap,
        } => {
            let opts = EnumOptions {
                rank_max,
                rank_exact,
                integer_levels: !rational_levels,
                level_cap,
            };
            (cmd_enumerate(&opts, format)?, true)
        }
        Command::Verify { suite } => cmd_verify(suite, format)?,
    };
    match &cli.out {
        Some(path) => fs::write(path, &text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    if ok {
        Ok(())
    } else {
        Err(CliError::Failed("verification failed".into()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(CliError::Failed(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
