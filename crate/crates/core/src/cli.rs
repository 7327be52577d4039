//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::checks::{self, CHECKS};
use crate::dsl::{parse_any, ParseError};
use crate::enumerate::{perm_distribution, perm_multi_avoiders, word_distribution, word_multi_avoiders, Limits};
use crate::matcher::{occurrences, PermSequence, Sequence, WordSequence};
use crate::pattern::{Mode, Pdvp};
use crate::problems::{default_max_size, problem_report};
use crate::transfer::{dp_series, solve_transfer_system, StatPattern, TransferError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "pdvp", version, about = "Place-difference-value patterns on permutations and words")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the occurrences of a pattern in one permutation or word.
    Match(MatchArgs),
    /// Distribution of the number of occurrences over all objects of one length.
    Dist(DistArgs),
    /// Count the objects of one length avoiding every given pattern.
    Avoid(AvoidArgs),
    /// Bivariate generating function of a windowed word statistic.
    Gf(GfArgs),
    /// Run named verification checks.
    Verify(VerifyArgs),
    /// Compare the two sides of a conjectured equinumerosity.
    Problem(ProblemArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("input").required(true).args(["perm", "word"])))]
struct MatchArgs {
    /// Pattern as `base|places|triples|values`, or `gp:` plus dashed notation.
    #[arg(long)]
    pattern: String,
    /// Permutation as whitespace- or comma-separated integers.
    #[arg(long)]
    perm: Option<String>,
    /// Word as whitespace- or comma-separated integers.
    #[arg(long, requires = "alphabet")]
    word: Option<String>,
    /// Alphabet size `t` for words over `{1..t}`.
    #[arg(long)]
    alphabet: Option<u32>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("size").required(true).args(["perm_n", "word_n"])))]
struct DistArgs {
    #[arg(long)]
    pattern: String,
    /// Length of the permutations to scan.
    #[arg(long)]
    perm_n: Option<usize>,
    /// Length of the words to scan.
    #[arg(long, requires = "alphabet")]
    word_n: Option<usize>,
    #[arg(long)]
    alphabet: Option<u32>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("size").required(true).args(["perm_n", "word_n"])))]
#[command(group(ArgGroup::new("source").required(true).multiple(true).args(["pattern", "patterns"])))]
struct AvoidArgs {
    /// A pattern to avoid; may be repeated.
    #[arg(long)]
    pattern: Vec<String>,
    /// File with one pattern per line; blank lines and `#` comments are skipped.
    #[arg(long)]
    patterns: Option<PathBuf>,
    #[arg(long)]
    perm_n: Option<usize>,
    #[arg(long, requires = "alphabet")]
    word_n: Option<usize>,
    #[arg(long)]
    alphabet: Option<u32>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("method").required(true).args(["dp", "solve"])))]
struct GfArgs {
    /// Word pattern with finite interior place sets.
    #[arg(long)]
    pattern: String,
    #[arg(long)]
    alphabet: u32,
    /// Expand the series by dynamic programming.
    #[arg(long)]
    dp: bool,
    /// Highest power of `q` for `--dp`.
    #[arg(long, default_value_t = 10, requires = "dp")]
    max_n: usize,
    /// Solve the transfer system for the rational generating function.
    #[arg(long)]
    solve: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Check id, or `all`.
    #[arg(long, default_value = "all")]
    check: String,
}

#[derive(Args, Debug)]
struct ProblemArgs {
    /// Which comparison, 1 to 4.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=4))]
    which: u32,
    /// Largest size computed on each side.
    #[arg(long)]
    max_size: Option<usize>,
}

/// A failure reported on the error stream with exit code 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

/// What a command produced: the rendered output and whether checks passed.
struct Output {
    text: String,
    ok: bool,
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let result = Limits::from_env().map_err(Failure::from).and_then(|limits| execute(&cli, &limits));
    match result {
        Ok(output) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &output.text),
                None => out.write_all(output.text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: cannot write output: {e}");
                return EXIT_USAGE;
            }
            if output.ok {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: &Cli, limits: &Limits) -> Result<Output, Failure> {
    let json = cli.format == Format::Json;
    let render = |text: String, value: Value| Output {
        text: if json { format!("{}\n", serde_json::to_string_pretty(&value).expect("serialisable")) } else { text },
        ok: true,
    };
    match &cli.command {
        Command::Match(a) => {
            let (seq, mode) = match (&a.perm, &a.word) {
                (Some(p), _) => (Sequence::from(PermSequence::new(parse_ints(p)?)?), Mode::Permutation),
                (None, Some(w)) => {
                    let t = a.alphabet.expect("clap enforces --alphabet");
                    (Sequence::from(WordSequence::new(parse_ints(w)?, t)?), Mode::Word)
                }
                (None, None) => unreachable!("clap enforces one input"),
            };
            let pat = pattern(&a.pattern, mode)?;
            let occ = occurrences(&pat, &seq)?;
            let mut text = String::new();
            let mut entries = Vec::new();
            for o in &occ {
                let values: Vec<u32> = o.indices().iter().map(|&i| seq.values()[i - 1]).collect();
                text.push_str(&format!("{o} {}\n", tuple(&values)));
                entries.push(json!({ "indices": o.indices(), "values": values }));
            }
            Ok(render(text, json!({ "n": seq.values().len(), "entries": entries })))
        }
        Command::Dist(a) => {
            let table = match (a.perm_n, a.word_n) {
                (Some(n), _) => perm_distribution(&pattern(&a.pattern, Mode::Permutation)?, n, limits)?,
                (None, Some(n)) => {
                    word_distribution(&pattern(&a.pattern, Mode::Word)?, a.alphabet.expect("required"), n, limits)?
                }
                (None, None) => unreachable!("clap enforces one size"),
            };
            let mut text = format!("n = {}\noccurrences count\n", table.n());
            for (m, c) in table.entries() {
                text.push_str(&format!("{m} {c}\n"));
            }
            Ok(render(text, table.to_json()))
        }
        Command::Avoid(a) => {
            let mut sources = a.pattern.clone();
            if let Some(path) = &a.patterns {
                let body = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
                sources.extend(
                    body.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(String::from),
                );
            }
            let (n, count) = match (a.perm_n, a.word_n) {
                (Some(n), _) => {
                    let pats = patterns(&sources, Mode::Permutation)?;
                    (n, perm_multi_avoiders(&pats, n, limits)?)
                }
                (None, Some(n)) => {
                    let pats = patterns(&sources, Mode::Word)?;
                    (n, word_multi_avoiders(&pats, a.alphabet.expect("required"), n, limits)?)
                }
                (None, None) => unreachable!("clap enforces one size"),
            };
            Ok(render(format!("{count}\n"), json!({ "n": n, "count": count.to_string() })))
        }
        Command::Gf(a) => {
            let sp = StatPattern::new(pattern(&a.pattern, Mode::Word)?).map_err(transfer_failure)?;
            if a.dp {
                let table = dp_series(&sp, a.alphabet, a.max_n).map_err(transfer_failure)?;
                Ok(render(table.to_string(), table.to_json()))
            } else {
                let gf = solve_transfer_system(&sp, a.alphabet).map_err(transfer_failure)?;
                Ok(render(format!("{gf}\n"), gf.to_json()))
            }
        }
        Command::Verify(a) => {
            let selected: Vec<_> = if a.check == "all" {
                CHECKS.iter().collect()
            } else {
                let check = checks::find(&a.check).ok_or_else(|| {
                    Failure(format!("unknown check `{}`; known checks: all, {}", a.check, checks::ids().join(", ")))
                })?;
                vec![check]
            };
            let results: Vec<_> = selected.iter().map(|c| c.run(limits)).collect();
            let ok = results.iter().all(|r| r.passed);
            let mut text = String::new();
            for r in &results {
                let status = if r.passed { "PASS" } else { "FAIL" };
                text.push_str(&format!("{status} {} (criterion {}): {}\n", r.id, r.criterion, r.title));
                for d in &r.details {
                    text.push_str(&format!("    {d}\n"));
                }
            }
            let passed = results.iter().filter(|r| r.passed).count();
            text.push_str(&format!("{passed}/{} checks passed\n", results.len()));
            let value = json!({ "passed": ok, "checks": results.iter().map(|r| r.to_json()).collect::<Vec<_>>() });
            Ok(Output { ok, ..render(text, value) })
        }
        Command::Problem(a) => {
            let size = a.max_size.unwrap_or_else(|| default_max_size(a.which));
            let report = problem_report(a.which, size, limits)?;
            Ok(render(report.to_string(), report.to_json()))
        }
    }
}

fn transfer_failure(e: TransferError) -> Failure {
    match e {
        TransferError::Parse(p) => parse_failure("", &p),
        other => Failure(other.to_string()),
    }
}

fn parse_failure(text: &str, e: &ParseError) -> Failure {
    if text.is_empty() {
        return Failure(e.to_string());
    }
    Failure(format!("{e}\n  {text}\n  {}^", " ".repeat(e.position)))
}

fn pattern(text: &str, mode: Mode) -> Result<Pdvp, Failure> {
    parse_any(text, mode).map_err(|e| parse_failure(text, &e))
}

fn patterns(texts: &[String], mode: Mode) -> Result<Vec<Pdvp>, Failure> {
    texts.iter().map(|t| pattern(t, mode)).collect()
}

fn parse_ints(text: &str) -> Result<Vec<u32>, Failure> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u32>().map_err(|_| Failure(format!("`{s}` is not a non-negative integer"))))
        .collect()
}

fn tuple(values: &[u32]) -> String {
    format!("({})", values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("pdvp").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn worked_example() {
        let (code, out, _) = call(&["match", "--pattern", "12|{1},{3,4},{1,2,3}|(1,2,E)|E,P", "--perm", "2 3 1 5 4"]);
        assert_eq!(code, 0);
        assert_eq!(out, "(1,5) (2,4)\n");
    }

    #[test]
    fn malformed_pattern() {
        let (code, out, err) = call(&["match", "--pattern", "12|P|P", "--perm", "1 2"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(err.contains("position 5"), "{err}");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["match", "--pattern", "1|P,P|-|P"]).0, 2);
        assert_eq!(call(&["match", "--pattern", "1|P,P|-|P", "--word", "1 2"]).0, 2);
        assert_eq!(call(&["verify", "--check", "nope"]).0, 2);
        assert_eq!(call(&["problem", "--which", "5"]).0, 2);
        assert_eq!(call(&["match", "--pattern", "1|P,P|-|P", "--perm", "1 1"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn ints_accept_commas_and_spaces() {
        assert_eq!(parse_ints("10, 2 3,,4").ok(), Some(vec![10, 2, 3, 4]));
        assert!(parse_ints("1 x").is_err());
    }

    #[test]
    fn verify_single_check() {
        let (code, out, _) = call(&["verify", "--check", "b3"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("PASS b3"));
    }
}
