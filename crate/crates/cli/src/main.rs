use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use knotoid_bracket::biquandle::{self, BiquandleError, FiniteBiquandle, Verbosity};
use knotoid_bracket::bracket::{self, BiquandleBracket, BracketError};
use knotoid_bracket::coloring::{coloring_matrix, enumerate_colorings};
use knotoid_bracket::diagram::{self, KinkOrder, KnotoidCode, R2Variant, Sign};
use knotoid_bracket::invariant::{
    bracket_matrix_with, bracket_polynomial, BracketMatrix, EvalConfig,
};
use knotoid_bracket::ring::Modulus;

/// Largest crossing count evaluated without `--force`.
const MAX_CROSSINGS: usize = 24;

#[derive(Parser)]
#[command(
    name = "knotoid-bracket",
    version,
    about = "Biquandle bracket invariants of knotoids"
)]
struct Cli {
    /// Evaluation setting, e.g. `open-arc-delta=off`.
    #[arg(long = "config", global = true, value_name = "KEY=VALUE", value_parser = parse_config)]
    config: Vec<ConfigItem>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy)]
enum ConfigItem {
    OpenArcDelta(bool),
}

fn parse_config(s: &str) -> Result<ConfigItem, String> {
    let (key, value) = s.split_once('=').ok_or("expected KEY=VALUE")?;
    let flag = match value {
        "on" => true,
        "off" => false,
        _ => return Err(format!("`{key}` takes on|off, got `{value}`")),
    };
    match key {
        "open-arc-delta" => Ok(ConfigItem::OpenArcDelta(flag)),
        _ => Err(format!("unknown setting `{key}`")),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a structure file against its axioms.
    #[command(subcommand)]
    Verify(VerifyKind),
    /// Print the coloring matrix of a knotoid.
    Color {
        biquandle: PathBuf,
        knotoid: PathBuf,
        /// Also list every coloring.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        guard: Guard,
    },
    /// Print the bracket matrix of a knotoid.
    Bracket {
        biquandle: PathBuf,
        bracket: PathBuf,
        knotoid: PathBuf,
        #[command(flatten)]
        guard: Guard,
    },
    /// Group the knotoids of a table by bracket matrix.
    Table {
        biquandle: PathBuf,
        bracket: PathBuf,
        table: PathBuf,
        #[command(flatten)]
        guard: Guard,
    },
    /// Compare the bracket matrices of two knotoids (exit 0 equal, 1 different).
    Distinguish {
        biquandle: PathBuf,
        bracket: PathBuf,
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        guard: Guard,
    },
    /// Write the Alexander biquandle on Z_m with units t and s.
    Alexander {
        m: u64,
        #[arg(allow_negative_numbers = true)]
        t: i64,
        #[arg(allow_negative_numbers = true)]
        s: i64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write the connected sum of two knotoids.
    Connect {
        first: PathBuf,
        second: PathBuf,
        /// Name of the result (default `<first>#<second>`).
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Apply Reidemeister insertions and mirroring.
    ///
    /// Moves run in the order: every --r1, then every --r2, then --mirror.
    Moves {
        knotoid: PathBuf,
        /// `AT:SIGN:ORDER`, e.g. `0:+:uo` (ORDER is uo or ou).
        #[arg(long, value_parser = parse_r1)]
        r1: Vec<R1Spec>,
        /// `A:B:VARIANT:FIRST:SIGN`, e.g. `0:3:parallel:over:-`.
        #[arg(long, value_parser = parse_r2)]
        r2: Vec<R2Spec>,
        #[arg(long)]
        mirror: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Search for brackets on a biquandle over Z_m.
    Search {
        biquandle: PathBuf,
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        limit: Option<usize>,
        /// Directory receiving one file per bracket.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerifyKind {
    Biquandle {
        path: PathBuf,
        /// Report every witness instead of the first per axiom.
        #[arg(long)]
        all: bool,
    },
    Bracket {
        biquandle: PathBuf,
        bracket: PathBuf,
    },
}

#[derive(Args, Clone, Copy)]
struct Guard {
    /// Evaluate diagrams with more than 24 crossings.
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy)]
struct R1Spec {
    at: usize,
    sign: Sign,
    order: KinkOrder,
}

#[derive(Clone, Copy)]
struct R2Spec {
    a: usize,
    b: usize,
    variant: R2Variant,
    over_first: bool,
    sign: Sign,
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+" => Ok(Sign::Positive),
        "-" => Ok(Sign::Negative),
        _ => Err(format!("sign must be + or -, got `{s}`")),
    }
}

fn parse_index(s: &str) -> Result<usize, String> {
    s.parse()
        .map_err(|_| format!("expected a semiarc index, got `{s}`"))
}

fn parse_r1(s: &str) -> Result<R1Spec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [at, sign, order] = parts[..] else {
        return Err("expected AT:SIGN:ORDER".into());
    };
    let order = match order {
        "uo" => KinkOrder::UnderOver,
        "ou" => KinkOrder::OverUnder,
        _ => return Err(format!("order must be uo or ou, got `{order}`")),
    };
    Ok(R1Spec {
        at: parse_index(at)?,
        sign: parse_sign(sign)?,
        order,
    })
}

fn parse_r2(s: &str) -> Result<R2Spec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, variant, first, sign] = parts[..] else {
        return Err("expected A:B:VARIANT:FIRST:SIGN".into());
    };
    let variant = match variant {
        "parallel" => R2Variant::Parallel,
        "antiparallel" => R2Variant::Antiparallel,
        _ => {
            return Err(format!(
                "variant must be parallel or antiparallel, got `{variant}`"
            ))
        }
    };
    let over_first = match first {
        "over" => true,
        "under" => false,
        _ => return Err(format!("first role must be over or under, got `{first}`")),
    };
    Ok(R2Spec {
        a: parse_index(a)?,
        b: parse_index(b)?,
        variant,
        over_first,
        sign: parse_sign(sign)?,
    })
}

/// Failure classes mapped onto exit codes.
#[derive(Debug)]
enum Failure {
    /// Invalid structure or distinct invariants (exit 1).
    Negative(String),
    /// Unreadable input, parse error or refused request (exit 2).
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> Outcome {
    match output {
        Some(p) => {
            fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))?;
            Ok(format!("wrote {}\n", p.display()))
        }
        None => Ok(text.to_string()),
    }
}

fn load_biquandle(path: &Path) -> Result<FiniteBiquandle, Failure> {
    match biquandle::parse(&read(path)?) {
        Ok(b) => Ok(b),
        Err(BiquandleError::Invalid(report)) => Err(Failure::Negative(format!(
            "{}: not a biquandle\n{report}",
            path.display()
        ))),
        Err(e) => Err(Failure::Usage(anyhow::anyhow!("{}: {e}", path.display()))),
    }
}

fn load_bracket(bq: Arc<FiniteBiquandle>, path: &Path) -> Result<BiquandleBracket, Failure> {
    let coeffs = bracket::parse_coefficients(&read(path)?)
        .map_err(|e| Failure::Usage(anyhow::anyhow!("{}: {e}", path.display())))?;
    BiquandleBracket::new(bq, &coeffs).map_err(|e| match e {
        BracketError::Parse(p) => Failure::Usage(anyhow::anyhow!("{}: {p}", path.display())),
        other => Failure::Negative(format!(
            "{}: not a biquandle bracket: {other}",
            path.display()
        )),
    })
}

fn load_knotoid(path: &Path, guard: Option<Guard>) -> Result<KnotoidCode, Failure> {
    let code = diagram::parse(&read(path)?)
        .map_err(|e| Failure::Usage(anyhow::anyhow!("{}: {e}", path.display())))?;
    check_size(&code, guard)?;
    Ok(code)
}

fn check_size(code: &KnotoidCode, guard: Option<Guard>) -> Result<(), Failure> {
    if let Some(g) = guard {
        if !g.force && code.crossing_count() > MAX_CROSSINGS {
            return Err(Failure::Usage(anyhow::anyhow!(
                "knotoid `{}` has {} crossings; evaluation is exponential, pass --force to continue",
                code.name(),
                code.crossing_count()
            )));
        }
    }
    Ok(())
}

fn header(bracket: &BiquandleBracket) -> String {
    format!(
        "delta={} w={} mod={}\n",
        bracket.delta(),
        bracket.w(),
        bracket.modulus()
    )
}

fn matrix_block(phi: &BracketMatrix) -> String {
    format!(
        "{phi}json: {}\npolynomial: {}\n",
        phi.to_json_line(),
        bracket_polynomial(phi)
    )
}

fn run(cli: Cli) -> Outcome {
    let mut config = EvalConfig::default();
    for item in &cli.config {
        match *item {
            ConfigItem::OpenArcDelta(on) => config.open_arc_delta = on,
        }
    }
    match cli.command {
        Command::Verify(VerifyKind::Biquandle { path, all }) => {
            let tables = biquandle::parse_tables(&read(&path)?)
                .map_err(|e| Failure::Usage(anyhow::anyhow!("{}: {e}", path.display())))?;
            let verbosity = if all {
                Verbosity::AllWitnesses
            } else {
                Verbosity::FirstWitness
            };
            let report = biquandle::validate_with(&tables, verbosity)
                .map_err(|e| Failure::Usage(anyhow::anyhow!("{}: {e}", path.display())))?;
            let text = format!("{report}\n");
            if report.passed() {
                Ok(text)
            } else {
                Err(Failure::Negative(text))
            }
        }
        Command::Verify(VerifyKind::Bracket { biquandle, bracket }) => {
            let bq = load_biquandle(&biquandle)?;
            let coeffs = bracket::parse_coefficients(&read(&bracket)?)
                .map_err(|e| Failure::Usage(anyhow::anyhow!("{}: {e}", bracket.display())))?;
            let report = bracket::validate(&bq, &coeffs).map_err(|e| {
                Failure::Negative(format!("{}: {e}\nresult: invalid\n", bracket.display()))
            })?;
            if report.passed() {
                Ok(format!("{report}\ndelta={} w={}\n", report.delta, report.w))
            } else {
                Err(Failure::Negative(format!("{report}\n")))
            }
        }
        Command::Color {
            biquandle,
            knotoid,
            list,
            guard,
        } => {
            let bq = load_biquandle(&biquandle)?;
            let code = load_knotoid(&knotoid, Some(guard))?;
            let m = coloring_matrix(&bq, &code);
            let mut out = format!(
                "knotoid {}\n{m}line: {}\ncolorings: {}\n",
                code.name(),
                m.to_line(),
                m.total()
            );
            if list {
                for c in enumerate_colorings(&bq, &code) {
                    writeln!(out, "tail {} head {}: {c}", c.tail() + 1, c.head() + 1).unwrap();
                }
            }
            Ok(out)
        }
        Command::Bracket {
            biquandle,
            bracket,
            knotoid,
            guard,
        } => {
            let bq = Arc::new(load_biquandle(&biquandle)?);
            let br = load_bracket(bq, &bracket)?;
            let code = load_knotoid(&knotoid, Some(guard))?;
            let phi = bracket_matrix_with(&br, &code, config);
            Ok(format!(
                "knotoid {}\n{}{}",
                code.name(),
                header(&br),
                matrix_block(&phi)
            ))
        }
        Command::Table {
            biquandle,
            bracket,
            table,
            guard,
        } => {
            let bq = Arc::new(load_biquandle(&biquandle)?);
            let br = load_bracket(bq, &bracket)?;
            let codes = diagram::parse_table(&read(&table)?)
                .map_err(|e| Failure::Usage(anyhow::anyhow!("{}: {e}", table.display())))?;
            for c in &codes {
                check_size(c, Some(guard))?;
            }
            let phis: Vec<BracketMatrix> = codes
                .par_iter()
                .map(|c| bracket_matrix_with(&br, c, config))
                .collect();
            let mut groups: Vec<(&BracketMatrix, Vec<&str>)> = Vec::new();
            for (code, phi) in codes.iter().zip(&phis) {
                match groups.iter_mut().find(|(key, _)| *key == phi) {
                    Some((_, names)) => names.push(code.name()),
                    None => groups.push((phi, vec![code.name()])),
                }
            }
            let mut out = header(&br);
            for (phi, names) in groups {
                write!(out, "\n{phi}{}\n", names.join(", ")).unwrap();
            }
            Ok(out)
        }
        Command::Distinguish {
            biquandle,
            bracket,
            first,
            second,
            guard,
        } => {
            let bq = Arc::new(load_biquandle(&biquandle)?);
            let br = load_bracket(bq, &bracket)?;
            let k1 = load_knotoid(&first, Some(guard))?;
            let k2 = load_knotoid(&second, Some(guard))?;
            let (p1, p2) = (
                bracket_matrix_with(&br, &k1, config),
                bracket_matrix_with(&br, &k2, config),
            );
            let mut out = format!(
                "{}:\n{}\n{}:\n{}\n",
                k1.name(),
                matrix_block(&p1),
                k2.name(),
                matrix_block(&p2)
            );
            if p1 == p2 {
                out.push_str("equal\n");
                Ok(out)
            } else {
                out.push_str("different\n");
                Err(Failure::Negative(out))
            }
        }
        Command::Alexander { m, t, s, output } => {
            let bq = biquandle::alexander(m, t, s).map_err(|e| Failure::Usage(e.into()))?;
            emit(output.as_deref(), &bq.to_text())
        }
        Command::Connect {
            first,
            second,
            name,
            output,
        } => {
            let k1 = load_knotoid(&first, None)?;
            let k2 = load_knotoid(&second, None)?;
            let mut sum = diagram::connected_sum(&k1, &k2);
            if let Some(n) = name {
                sum = sum.with_name(n);
            }
            emit(output.as_deref(), &sum.to_text())
        }
        Command::Moves {
            knotoid,
            r1,
            r2,
            mirror,
            output,
        } => {
            let mut code = load_knotoid(&knotoid, None)?;
            for m in r1 {
                code = diagram::r1_insert(&code, m.at, m.sign, m.order)
                    .map_err(|e| Failure::Usage(e.into()))?;
            }
            for m in r2 {
                code = diagram::r2_insert(&code, m.a, m.b, m.variant, m.over_first, m.sign)
                    .map_err(|e| Failure::Usage(e.into()))?;
            }
            if mirror {
                code = diagram::mirror(&code);
            }
            emit(output.as_deref(), &code.to_text())
        }
        Command::Search {
            biquandle,
            modulus,
            limit,
            output,
        } => {
            let bq = Arc::new(load_biquandle(&biquandle)?);
            let m = Modulus::new(modulus).map_err(|e| Failure::Usage(e.into()))?;
            let found = bracket::search(&bq, m, limit);
            match output {
                Some(dir) => {
                    fs::create_dir_all(&dir)
                        .with_context(|| format!("cannot create {}", dir.display()))?;
                    for (i, b) in found.iter().enumerate() {
                        let path = dir.join(format!("bracket-{:03}.txt", i + 1));
                        fs::write(&path, b.to_text())
                            .with_context(|| format!("cannot write {}", path.display()))?;
                    }
                    Ok(format!(
                        "found {} brackets, wrote {}\n",
                        found.len(),
                        dir.display()
                    ))
                }
                None => {
                    let mut out = format!("found {} brackets\n", found.len());
                    for b in &found {
                        write!(out, "\n{}", b.to_text()).unwrap();
                    }
                    Ok(out)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Negative(text)) => {
            print!("{text}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
