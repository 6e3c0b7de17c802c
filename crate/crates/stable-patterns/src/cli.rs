//! Command-line frontend.
//!
//! Every library operation is reachable as a subcommand; patterns, reports
//! and oracles travel as JSON files in the formats fixed by the library
//! types. Output is human-readable by default and a machine envelope
//! `{"command", "result", "failures"}` under `--json`.
//!
//! Exit codes: 0 for success or a verified statement, 1 for a negative
//! verdict or failed verification (the counterexample is in the output),
//! 2 for usage, input, and budget errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::family::{self, FamilyParams, PatternFamily};
use crate::pattern::{count_patterns, Pattern};
use crate::ramsey::{find_stabilizing_partition, sdr, DrOracle};
use crate::stability::{
    enumerate_stable, hereditary_up_to, is_k_stable, stable_lifts, usl_up_to, EnumerationMethod,
    LiftChainReport,
};
use crate::standard::{classify, standard_catalog, Classification};
use crate::verify::{run_suite, SuiteId};
use crate::{Error, Result};

/// Exit code and buffered output of one invocation.
#[derive(Debug)]
pub struct CliOutcome {
    pub code: i32,
    pub output: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "stable-patterns",
    about = "Stable collections of subsets of a finite set: catalogs, lifts, searches.",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum MethodArg {
    Brute,
    Lift,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the exact number of patterns at the given size.
    Count {
        #[arg(long)]
        m: u8,
        #[arg(long)]
        n: u8,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate all stable patterns at one level.
    EnumerateStable {
        #[arg(long)]
        m: u8,
        #[arg(long, default_value_t = 1)]
        n: u8,
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Write the patterns to a JSON file as well.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Candidate budget for the brute-force method.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Check k-stability of a pattern file.
    Check {
        #[arg(long)]
        k: u8,
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Classify a pattern against the standard catalog.
    Classify {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compute the stable lifts of a pattern one level up.
    Lifts {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        #[arg(long)]
        count_only: bool,
        /// Refuse unstable bases instead of filtering their survivors.
        #[arg(long)]
        require_stable_base: bool,
        #[arg(long)]
        json: bool,
    },
    /// Decide survival through stable lifts up to a level.
    Hereditary {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        #[arg(long)]
        depth: u8,
        #[arg(long)]
        json: bool,
    },
    /// Decide uniqueness of stable lifts up to a level.
    Usl {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        #[arg(long)]
        depth: u8,
        #[arg(long)]
        json: bool,
    },
    /// Scan for a partition whose induced pattern is stable.
    Stabilizer {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        #[arg(long)]
        target_m: u8,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Run the threshold recursion against an oracle file.
    Sdr {
        #[arg(long)]
        m: u8,
        /// Comma-separated color counts for levels 2..=m-1.
        #[arg(long)]
        colors: String,
        #[arg(long, value_name = "FILE")]
        oracle: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate or coherence-check one of the eighteen families.
    Family {
        #[arg(long)]
        id: u8,
        /// Comma-separated parameters, e.g. q=1,l=2.
        #[arg(long)]
        params: Option<String>,
        /// Print the family's pattern at this level.
        #[arg(long, conflicts_with = "coherence")]
        level: Option<u8>,
        /// Check level consistency instead of printing one level.
        #[arg(long)]
        coherence: bool,
        #[arg(long, requires = "coherence")]
        max_level: Option<u8>,
        #[arg(long)]
        json: bool,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max_m: Option<u8>,
        #[arg(long)]
        json: bool,
    },
}

/// Parses and executes one invocation; never panics, never exits.
pub fn run(args: &[String]) -> CliOutcome {
    let argv = std::iter::once("stable-patterns".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return CliOutcome {
                code,
                output: err.to_string(),
            };
        }
    };
    match dispatch(cli.command) {
        Ok((code, output)) => CliOutcome { code, output },
        Err(err) => CliOutcome {
            code: 2,
            output: format!("error: {err}\n"),
        },
    }
}

fn read_pattern(path: &Path) -> Result<Pattern> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Input(format!("malformed pattern in {}: {e}", path.display())))
}

fn envelope(command: &str, result: serde_json::Value, failures: serde_json::Value) -> String {
    let mut out = serde_json::to_string_pretty(&json!({
        "command": command,
        "result": result,
        "failures": failures,
    }))
    .expect("serializable");
    out.push('\n');
    out
}

fn render_chain_report(report: &LiftChainReport, word: &str) -> String {
    let mut out = String::new();
    if report.verdict {
        let _ = writeln!(out, "{word} up to level {}: yes", report.target_level);
        for node in &report.chain {
            let _ = writeln!(out, "  level {}: {}", node.depth, node.pattern);
        }
    } else {
        let _ = writeln!(
            out,
            "{word} up to level {}: no ({report})",
            report.target_level
        );
    }
    out
}

fn dispatch(command: Command) -> Result<(i32, String)> {
    match command {
        Command::Count { m, n, json } => {
            let count = count_patterns(m, n)?;
            let output = if json {
                envelope(
                    "count",
                    json!({ "m": m, "n": n, "count": count.to_string() }),
                    json!([]),
                )
            } else {
                format!("{count}\n")
            };
            Ok((0, output))
        }
        Command::EnumerateStable {
            m,
            n,
            method,
            out,
            budget,
            json,
        } => {
            let method = match method {
                MethodArg::Brute => EnumerationMethod::Brute,
                MethodArg::Lift => EnumerationMethod::Lift,
            };
            let patterns = enumerate_stable(m, n, method, budget)?;
            let listed: Vec<&Pattern> = patterns.iter().collect();
            if let Some(path) = &out {
                let text = serde_json::to_string_pretty(&listed).expect("serializable");
                std::fs::write(path, text)
                    .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?;
            }
            let output = if json {
                envelope(
                    "enumerate-stable",
                    json!({ "m": m, "n": n, "count": patterns.len(), "patterns": listed }),
                    json!([]),
                )
            } else {
                let mut text = String::new();
                for p in &patterns {
                    let _ = writeln!(text, "{p}");
                }
                let _ = writeln!(text, "total: {}", patterns.len());
                if let Some(path) = &out {
                    let _ = writeln!(text, "written to {}", path.display());
                }
                text
            };
            Ok((0, output))
        }
        Command::Check { k, r#in, json } => {
            let pattern = read_pattern(&r#in)?;
            let report = is_k_stable(&pattern, k)?;
            let code = i32::from(!report.verdict);
            let output = if json {
                envelope("check", serde_json::to_value(&report).unwrap(), json!([]))
            } else if report.verdict {
                format!("stable up to {k} blocks\n")
            } else {
                let (bad, reference) = report.witness.as_ref().unwrap();
                format!("not stable: {bad} and {reference} induce different patterns\n")
            };
            Ok((code, output))
        }
        Command::Classify { r#in, json } => {
            let pattern = read_pattern(&r#in)?;
            let verdict = classify(&pattern)?;
            let code = i32::from(matches!(verdict, Classification::Nonstandard));
            let output = if json {
                envelope(
                    "classify",
                    serde_json::to_value(&verdict).unwrap(),
                    json!([]),
                )
            } else {
                match &verdict {
                    Classification::Standard(class) => format!("{class}\n"),
                    Classification::Nonstandard => "nonstandard\n".to_string(),
                }
            };
            Ok((code, output))
        }
        Command::Lifts {
            r#in,
            count_only,
            require_stable_base,
            json,
        } => {
            let pattern = read_pattern(&r#in)?;
            let lifts = stable_lifts(&pattern, require_stable_base)?;
            let output = if json {
                envelope(
                    "lifts",
                    json!({ "count": lifts.len(), "lifts": if count_only { json!(null) } else { json!(lifts) } }),
                    json!([]),
                )
            } else if count_only {
                format!("{}\n", lifts.len())
            } else {
                let mut text = String::new();
                for p in &lifts {
                    let _ = writeln!(text, "{p}");
                }
                let _ = writeln!(text, "total: {}", lifts.len());
                text
            };
            Ok((0, output))
        }
        Command::Hereditary { r#in, depth, json } => {
            let pattern = read_pattern(&r#in)?;
            let report = hereditary_up_to(&pattern, depth)?;
            let code = i32::from(!report.verdict);
            let output = if json {
                envelope(
                    "hereditary",
                    serde_json::to_value(&report).unwrap(),
                    json!([]),
                )
            } else {
                render_chain_report(&report, "survives lifting")
            };
            Ok((code, output))
        }
        Command::Usl { r#in, depth, json } => {
            let pattern = read_pattern(&r#in)?;
            let report = usl_up_to(&pattern, depth)?;
            let code = i32::from(!report.verdict);
            let output = if json {
                envelope("usl", serde_json::to_value(&report).unwrap(), json!([]))
            } else {
                render_chain_report(&report, "lifts uniquely")
            };
            Ok((code, output))
        }
        Command::Stabilizer {
            r#in,
            target_m,
            budget,
            json,
        } => {
            let pattern = read_pattern(&r#in)?;
            let result = find_stabilizing_partition(&pattern, target_m, budget)?;
            let code = i32::from(result.exhausted);
            let output = if json {
                envelope(
                    "stabilizer",
                    serde_json::to_value(&result).unwrap(),
                    json!([]),
                )
            } else {
                match (&result.partition, &result.induced) {
                    (Some(alpha), Some(induced)) => format!(
                        "stabilizing partition: {alpha}\ninduced pattern: {induced}\n\
                         candidates tested: {}\n",
                        result.candidates_tested
                    ),
                    _ => format!(
                        "exhausted: no stabilizing partition among {} candidates\n",
                        result.candidates_tested
                    ),
                }
            };
            Ok((code, output))
        }
        Command::Sdr {
            m,
            colors,
            oracle,
            json,
        } => {
            let colors: Vec<u128> = colors
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse()
                        .map_err(|e| Error::Input(format!("bad color count {c}: {e}")))
                })
                .collect::<Result<_>>()?;
            let text = std::fs::read_to_string(&oracle)
                .map_err(|e| Error::Input(format!("cannot read {}: {e}", oracle.display())))?;
            let oracle: DrOracle = serde_json::from_str(&text)
                .map_err(|e| Error::Input(format!("malformed oracle: {e}")))?;
            let outcome = sdr(m, &colors, &oracle)?;
            let output = if json {
                envelope("sdr", serde_json::to_value(&outcome).unwrap(), json!([]))
            } else {
                let mut text = String::new();
                for q in &outcome.trace {
                    let _ = writeln!(
                        text,
                        "level {}: ground {} with {} colors -> {}",
                        q.k, q.m, q.r, q.n
                    );
                }
                let _ = writeln!(text, "threshold: {}", outcome.value);
                text
            };
            Ok((0, output))
        }
        Command::Family {
            id,
            params,
            level,
            coherence,
            max_level,
            json,
        } => {
            let family = PatternFamily::new(id, parse_family_params(params.as_deref())?)?;
            if coherence {
                let report = family::check_coherence(&family, max_level.unwrap_or(7))?;
                let code = i32::from(!report.coherent);
                let output = if json {
                    envelope(
                        "family",
                        serde_json::to_value(&report).unwrap(),
                        serde_json::to_value(&report.failures).unwrap(),
                    )
                } else if report.coherent {
                    format!(
                        "{family}: coherent up to level {} ({} projection checks)\n",
                        report.max_level, report.projection_checks
                    )
                } else {
                    format!(
                        "{family}: {} coherence failures up to level {}\n",
                        report.failures.len(),
                        report.max_level
                    )
                };
                return Ok((code, output));
            }
            let level = level.ok_or_else(|| {
                Error::usage("family needs either --level M or --coherence".into())
            })?;
            let pattern = family::family_pattern(&family, level)?;
            let output = if json {
                envelope(
                    "family",
                    json!({ "family": family, "level": level, "pattern": pattern }),
                    json!([]),
                )
            } else {
                format!("{pattern}\n")
            };
            Ok((0, output))
        }
        Command::Verify { suite, max_m, json } => {
            let id = SuiteId::parse(&suite)?;
            let result = run_suite(id, max_m)?;
            let code = i32::from(!result.passed());
            let output = if json {
                envelope(
                    "verify",
                    serde_json::to_value(&result).unwrap(),
                    serde_json::to_value(&result.failures).unwrap(),
                )
            } else {
                let mut text = String::new();
                let _ = writeln!(
                    text,
                    "suite {}: {} checks, {} failures ({} ms)",
                    result.suite,
                    result.checks_run,
                    result.failures.len(),
                    result.elapsed.as_millis()
                );
                for f in &result.failures {
                    let _ = writeln!(text, "  FAIL {}", f.statement);
                    let _ = writeln!(text, "       {}", f.counterexample);
                }
                if id == SuiteId::Prop213 && result.passed() {
                    let _ = writeln!(text, "the 20 stable patterns at level 3:");
                    for (pattern, class) in standard_catalog(3)?.entries() {
                        let _ = writeln!(text, "  {pattern}  [{class}]");
                    }
                }
                text
            };
            Ok((code, output))
        }
    }
}

fn parse_family_params(text: Option<&str>) -> Result<FamilyParams> {
    let mut params = FamilyParams::default();
    let Some(text) = text else {
        return Ok(params);
    };
    for piece in text.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        let (key, value) = piece.split_once('=').ok_or_else(|| {
            Error::usage(format!("parameter {piece} is not of the form name=value"))
        })?;
        let value: u8 = value
            .trim()
            .parse()
            .map_err(|e| Error::usage(format!("bad value in {piece}: {e}")))?;
        match key.trim() {
            "q" => params.q = Some(value),
            "l" => params.l = Some(value),
            "j" => params.j = Some(value),
            "j_prime" | "j'" => params.j_prime = Some(value),
            other => return Err(Error::usage(format!("unknown parameter {other}"))),
        }
    }
    Ok(params)
}
