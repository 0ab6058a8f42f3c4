use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use affine_schur::engine::evaluate_word;
use affine_schur::json::{coordinates_to_json, PbwCoordinateJson};
use affine_schur::pbw::NormalForm;
use affine_schur::presentation::{closed_form_sweep, verify_with, Bounds, Evaluator, SweepReport, VerifyReport};
use affine_schur::{AlgebraElement, Error, Generator};

const EXIT_FAILURE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "affine-schur", about = "Exact computations in the rational affine Schur algebra")]
struct Cli {
    /// Period n (at least 2).
    #[arg(long, global = true, default_value_t = 2)]
    n: usize,
    /// Degree r.
    #[arg(long, global = true, default_value_t = 1)]
    r: u64,
    /// Largest |m| for loop generators in sweeps.
    #[arg(long, global = true, default_value_t = 2)]
    mmax: u64,
    /// Longest loop list in sweeps.
    #[arg(long, global = true, default_value_t = 3)]
    tmax: usize,
    /// Band width for matrix enumeration; defaults to 2n.
    #[arg(long, global = true)]
    band: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiply a generator word, or a pair {"left": element, "right": element}.
    Multiply {
        /// Inline JSON, a file path, or `-` for stdin.
        #[arg(long)]
        input: String,
    },
    /// PBW coordinates of an element, with a round-trip check.
    NormalForm {
        #[arg(long)]
        input: String,
    },
    /// Check the defining relations within the sweep bounds.
    Verify {
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Compare the loop recursion with its closed form.
    ClosedFormCheck {
        /// Restrict to these row indices (default: all).
        #[arg(long, value_delimiter = ',')]
        i: Vec<i64>,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Mismatch { .. } => Failure::Mismatch(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MultiplyInput {
    Word(Vec<String>),
    Tagged { word: Vec<String> },
    Pair { left: AlgebraElement, right: AlgebraElement },
}

#[derive(Serialize)]
struct NormalFormOutput {
    n: usize,
    r: u64,
    coordinates: Vec<PbwCoordinateJson>,
    round_trip: bool,
}

fn read_input(source: &str) -> Result<String, Failure> {
    let trimmed = source.trim_start();
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        return Ok(source.to_string());
    }
    if source == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        return Ok(buf);
    }
    fs::read_to_string(source).map_err(|e| Failure::Input(format!("{source}: {e}")))
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, Failure> {
    // Parse to a value first so syntax errors and schema errors both carry a position.
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Failure::Input(format!("input:{}:{}: {e}", e.line(), e.column())))?;
    serde_json::from_value(value).map_err(|e| {
        let msg = e.to_string();
        if msg.contains("algebra mismatch") {
            Failure::Mismatch(msg)
        } else {
            Failure::Input(format!("input: {msg}"))
        }
    })
}

fn check_algebra(x: &AlgebraElement, n: usize, r: u64) -> Result<(), Failure> {
    if x.n() != n || x.r() != r {
        return Err(Error::Mismatch {
            expected: (n, r),
            found: (x.n(), x.r()),
        }
        .into());
    }
    Ok(())
}

fn parse_word(word: &[String], n: usize) -> Result<Vec<Generator>, Failure> {
    word.iter()
        .map(|s| {
            let g: Generator = s.parse()?;
            g.validate(n)?;
            Ok(g)
        })
        .collect()
}

fn emit_element(x: &AlgebraElement, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(x).expect("serializable"),
        Format::Text => x.serialize(),
    }
}

fn multiply(cli: &Cli, input: &str) -> Result<String, Failure> {
    let text = read_input(input)?;
    let product = match parse_json::<MultiplyInput>(&text)? {
        MultiplyInput::Word(word) | MultiplyInput::Tagged { word } => {
            evaluate_word(&parse_word(&word, cli.n)?, cli.n, cli.r)
        }
        MultiplyInput::Pair { left, right } => {
            check_algebra(&left, cli.n, cli.r)?;
            check_algebra(&right, cli.n, cli.r)?;
            NormalForm::new().general_product(&left, &right)?
        }
    };
    Ok(emit_element(&product, cli.format))
}

fn normal_form(cli: &Cli, input: &str) -> Result<(String, bool), Failure> {
    let x: AlgebraElement = parse_json(&read_input(input)?)?;
    check_algebra(&x, cli.n, cli.r)?;
    let mut nf = NormalForm::new();
    let coords = nf.normal_form(&x);
    let round_trip = nf.expand(&coords, cli.n, cli.r) == x;
    let out = NormalFormOutput {
        n: cli.n,
        r: cli.r,
        coordinates: coordinates_to_json(&coords),
        round_trip,
    };
    let text = match cli.format {
        Format::Json => serde_json::to_string(&out).expect("serializable"),
        Format::Text => {
            let mut lines: Vec<String> = out
                .coordinates
                .iter()
                .map(|c| format!("{}  A+={}  lambda={}  A-={}", c.coeff, c.a_plus, c.lambda, c.a_minus))
                .collect();
            lines.push(format!("round trip: {}", if round_trip { "ok" } else { "FAILED" }));
            lines.join("\n")
        }
    };
    Ok((text, round_trip))
}

fn render_verify(report: &VerifyReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(report).expect("serializable"),
        Format::Text => {
            let mut lines = vec![format!(
                "n={} r={} mmax={} tmax={} band={}",
                report.n, report.r, report.bounds.mmax, report.bounds.tmax, report.bounds.band
            )];
            for rel in &report.relations {
                lines.push(format!(
                    "{:<5} instances={:<6} failures={:<4} flagged={}",
                    rel.id,
                    rel.instances,
                    rel.failures.len(),
                    rel.flagged.len()
                ));
                for f in &rel.failures {
                    lines.push(format!("  {}: {}", f.instance, f.residual));
                }
            }
            lines.push(format!("result: {}", if report.passed { "pass" } else { "FAIL" }));
            lines.join("\n")
        }
    }
}

fn render_sweep(report: &SweepReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(report).expect("serializable"),
        Format::Text => {
            let mut lines = vec![format!(
                "n={} r={} instances={} failures={}",
                report.n,
                report.r,
                report.instances,
                report.failures.len()
            )];
            for f in &report.failures {
                lines.push(format!("  {}: {}", f.instance, f.residual));
            }
            lines.push(format!("result: {}", if report.passed { "pass" } else { "FAIL" }));
            lines.join("\n")
        }
    }
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    if cli.n < 2 {
        return Err(Error::InvalidPeriod(cli.n).into());
    }
    let band = cli.band.unwrap_or(2 * cli.n as u64);
    match &cli.command {
        Command::Multiply { input } => Ok((multiply(cli, input)?, true)),
        Command::NormalForm { input } => normal_form(cli, input),
        Command::Verify { inject_fault } => {
            let ev = if *inject_fault {
                Evaluator::with_fault(cli.n, cli.r)
            } else {
                Evaluator::new(cli.n, cli.r)
            };
            let bounds = Bounds {
                mmax: cli.mmax,
                tmax: cli.tmax,
                band,
            };
            let report = verify_with(&ev, &bounds);
            Ok((render_verify(&report, cli.format), report.passed))
        }
        Command::ClosedFormCheck { i } => {
            let rows: Vec<i64> = if i.is_empty() {
                (1..=cli.n as i64).collect()
            } else {
                i.clone()
            };
            if let Some(&bad) = rows.iter().find(|&&i| !(1..=cli.n as i64).contains(&i)) {
                return Err(Error::IndexOutOfRange { index: bad, n: cli.n }.into());
            }
            let report = closed_form_sweep(cli.n, cli.r, &rows, cli.tmax, cli.mmax);
            Ok((render_sweep(&report, cli.format), report.passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, ok)) => {
            println!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILURE)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_MISMATCH)
        }
    }
}
