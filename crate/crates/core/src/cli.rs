//! Command-line front end.
//!
//! [`run`] parses arguments and returns what the process should print and
//! its exit status, so the binary is a thin shell and tests can drive the
//! commands in-process. With `--json` every command prints one JSON object
//! per line, ending in a `"record": "summary"` line that echoes the seed.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::adversary::{run_scenario, Scenario};
use crate::bellalg::{collapse_table, BellLabel, OperatedQubit, Pauli};
use crate::error::{Error, Result};
use crate::neqr::{reconstruct_image, reconstruct_pixel, share_image_with, Tamper};
use crate::pgm::{read_pgm, write_pgm};
use crate::protocol::{share_secret, BitString, QubitPolicy, RoundResult, RoundTranscript, TranscriptRecord, TwoBits};
use crate::verify::run_checks;

/// Seed used when neither `--seed` nor `--entropy` is given.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Parser)]
#[command(name = "bellshare", version, about = "Three-party quantum secret sharing simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct RunFlags {
    /// Base seed; every random draw derives from it.
    #[arg(long)]
    seed: Option<u64>,
    /// Draw the seed from OS entropy instead (it is still echoed).
    #[arg(long, conflicts_with = "seed")]
    entropy: bool,
    /// How the dealer picks the operated qubit: one, four or random.
    #[arg(long, default_value = "random")]
    qubit_policy: QubitPolicy,
    /// Line-delimited JSON records instead of text.
    #[arg(long)]
    json: bool,
}

impl RunFlags {
    fn seed(&self) -> u64 {
        if self.entropy {
            rand::random()
        } else {
            self.seed.unwrap_or(DEFAULT_SEED)
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Share a secret round by round and reconstruct it.
    Share {
        /// A string of 0/1 is taken as bits; anything else as a decimal
        /// integer written in whole bytes (55 -> 00110111).
        #[arg(long)]
        secret: String,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// Run an adversary scenario and report reconstruction statistics.
    Attack {
        /// eve-forgery, lying-dealer-state, lying-dealer-qubit, lying-p1 or
        /// withheld-share.
        #[arg(long)]
        scenario: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Two bits the dealer shares in every trial.
        #[arg(long, default_value = "10")]
        secret: TwoBits,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// Share every pixel of a PGM image and write the reconstruction.
    Image {
        #[arg(long)]
        input: PathBuf,
        /// Defaults to `<input stem>.reconstructed.pgm` beside the input.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Make P1 lie in the first round of the first pixel.
        #[arg(long, value_parser = ["lying-p1"])]
        inject: Option<String>,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// Print the collapse table for an operated qubit.
    Table {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=4))]
        operated_qubit: u8,
        #[arg(long)]
        json: bool,
    },
    /// Run the invariant self-checks.
    Verify {
        #[arg(long)]
        json: bool,
    },
}

/// What the process should emit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(stdout: String, success: bool) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            exit_code: if success { 0 } else { 1 },
        }
    }

    fn failure(err: &Error) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
            exit_code: 2,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome::ok(rendered, true)
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: rendered,
                    exit_code: code,
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Share { secret, flags } => cmd_share(secret, flags),
        Command::Attack {
            scenario,
            trials,
            secret,
            flags,
        } => cmd_attack(scenario, *trials, *secret, flags),
        Command::Image {
            input,
            output,
            inject,
            flags,
        } => cmd_image(input, output.as_deref(), inject.is_some(), flags),
        Command::Table { operated_qubit, json } => cmd_table(*operated_qubit, *json),
        Command::Verify { json } => Ok(cmd_verify(*json)),
    };
    result.unwrap_or_else(|e| Outcome::failure(&e))
}

/// Bits if the text is all `0`/`1`, otherwise a decimal integer.
pub fn parse_secret(text: &str) -> Result<BitString> {
    let text = text.trim();
    if !text.is_empty() && text.chars().all(|c| c == '0' || c == '1') {
        return text.parse();
    }
    text.parse::<u64>()
        .map(BitString::from_decimal)
        .map_err(|_| Error::MalformedBits(text.to_string()))
}

fn json_line(out: &mut String, value: &impl Serialize) {
    out.push_str(&serde_json::to_string(value).expect("records serialize"));
    out.push('\n');
}

fn describe_round(r: &RoundTranscript) -> String {
    let label = |o: Option<BellLabel>| o.map_or("--", |l| l.symbol());
    let a = &r.announcements;
    let result = match &r.reconstructed {
        RoundResult::Bits(b) => format!("{b}{}", if r.is_consistent() { "" } else { "  MISMATCH" }),
        RoundResult::Aborted(reason) => format!("aborted ({reason})"),
    };
    format!(
        "round {}: dealer {} (bits {})  P1 {}  P2 {}  P3 {}  -> {}",
        r.round_index,
        r.true_op,
        r.true_bits(),
        label(a.p1),
        label(a.p2),
        label(a.p3),
        result
    )
}

fn cmd_share(secret: &str, flags: &RunFlags) -> Result<Outcome> {
    let secret = parse_secret(secret)?;
    let seed = flags.seed();
    let session = share_secret(&secret, flags.qubit_policy, seed)?;
    let reconstructed = session
        .reconstructed()
        .map_or_else(|| "aborted".to_string(), |b| b.to_string());
    let consistent = session.is_consistent();
    let mut out = String::new();
    if flags.json {
        for r in &session.rounds {
            json_line(&mut out, &r.record());
        }
        json_line(
            &mut out,
            &json!({
                "record": "summary",
                "command": "share",
                "seed": seed,
                "secret": session.secret.to_string(),
                "rounds": session.rounds.len(),
                "reconstructed": reconstructed,
                "consistent": consistent,
            }),
        );
    } else {
        writeln!(out, "seed: {seed}").unwrap();
        for r in &session.rounds {
            writeln!(out, "{}", describe_round(r)).unwrap();
        }
        writeln!(out, "secret:        {}", session.secret).unwrap();
        writeln!(out, "reconstructed: {reconstructed}").unwrap();
        writeln!(out, "{}", if consistent { "match" } else { "MISMATCH" }).unwrap();
    }
    Ok(Outcome::ok(out, consistent))
}

fn cmd_attack(name: &str, trials: usize, secret: TwoBits, flags: &RunFlags) -> Result<Outcome> {
    let scenario = Scenario::from_name(name)?;
    let seed = flags.seed();
    let report = run_scenario(&scenario, secret, flags.qubit_policy, trials, seed)?;
    let mut out = String::new();
    if flags.json {
        json_line(
            &mut out,
            &json!({
                "record": "summary",
                "command": "attack",
                "scenario": name,
                "secret": secret.to_string(),
                "seed": seed,
                "report": report,
            }),
        );
    } else {
        writeln!(out, "scenario: {scenario}").unwrap();
        writeln!(out, "secret bits: {secret}  seed: {seed}").unwrap();
        writeln!(out, "{report}").unwrap();
    }
    Ok(Outcome::ok(out, true))
}

fn default_output(input: &Path) -> PathBuf {
    let stem = input
        .file_stem()
        .map_or_else(|| "image".into(), |s| s.to_string_lossy().into_owned());
    input.with_file_name(format!("{stem}.reconstructed.pgm"))
}

#[derive(Serialize)]
struct PixelRoundRecord {
    x: usize,
    y: usize,
    #[serde(flatten)]
    round: TranscriptRecord,
}

fn cmd_image(input: &Path, output: Option<&Path>, inject: bool, flags: &RunFlags) -> Result<Outcome> {
    let img = read_pgm(input)?;
    let seed = flags.seed();
    let tamper = inject.then_some(Tamper {
        pixel_index: 0,
        round_index: 0,
    });
    let bundles = share_image_with(&img, flags.qubit_policy, seed, tamper)?;
    let got = reconstruct_image(img.n(), &bundles)?;
    let output = output.map_or_else(|| default_output(input), Path::to_path_buf);
    write_pgm(&output, &got)?;
    let diff = img.diff(&got)?;
    // A lie can also move a pixel, so positions are checked per bundle.
    let moved: Vec<_> = bundles
        .iter()
        .filter_map(|b| {
            let (x, y, _) = reconstruct_pixel(b).ok()?;
            (b.position() != (x, y)).then_some((b.position(), (x, y)))
        })
        .collect();
    let identical = diff.is_empty() && moved.is_empty();
    let rounds: usize = bundles.iter().map(|b| b.rounds.len()).sum();
    let mut out = String::new();
    if flags.json {
        for b in &bundles {
            let (x, y) = b.position();
            for r in &b.rounds {
                json_line(
                    &mut out,
                    &PixelRoundRecord {
                        x,
                        y,
                        round: r.record(),
                    },
                );
            }
        }
        json_line(
            &mut out,
            &json!({
                "record": "summary",
                "command": "image",
                "seed": seed,
                "side": img.side(),
                "pixels": bundles.len(),
                "rounds": rounds,
                "output": output.display().to_string(),
                "identical": identical,
                "diff": diff,
                "moved": moved,
            }),
        );
    } else {
        writeln!(out, "seed: {seed}").unwrap();
        writeln!(out, "input:  {0}x{0} from {1}", img.side(), input.display()).unwrap();
        writeln!(out, "shared {} pixels in {rounds} rounds", bundles.len()).unwrap();
        writeln!(out, "output: {}", output.display()).unwrap();
        for (x, y, want, have) in &diff {
            writeln!(out, "pixel ({x},{y}): input {want}, reconstructed {have}").unwrap();
        }
        for (from, to) in &moved {
            writeln!(out, "pixel {from:?} reconstructed at {to:?}").unwrap();
        }
        writeln!(out, "{}", if identical { "identical" } else { "MISMATCH" }).unwrap();
    }
    Ok(Outcome::ok(out, identical))
}

/// Renders a cell as `±1/2 · l23(2,3) ⊗ l56(5,6)`.
pub fn format_cell(sign: i8, pair23: BellLabel, pair56: BellLabel) -> String {
    let coefficient = if sign < 0 { "\u{2212}1/2" } else { "1/2" };
    format!(
        "{coefficient} \u{b7} {}(2,3) \u{2297} {}(5,6)",
        pair23.symbol(),
        pair56.symbol()
    )
}

fn cmd_table(qubit: u8, json: bool) -> Result<Outcome> {
    let qubit = OperatedQubit::from_label(qubit as usize)?;
    let mut out = String::new();
    if !json {
        writeln!(
            out,
            "operated qubit {qubit}; P1 outcome on (1,4) -> state of (2,3), (5,6)"
        )
        .unwrap();
    }
    for op in Pauli::ALL {
        for outcome in BellLabel::ALL {
            let cell = collapse_table(op, qubit, outcome);
            if json {
                json_line(
                    &mut out,
                    &json!({
                        "record": "cell",
                        "operated_qubit": qubit.label(),
                        "op": op.name(),
                        "p1_outcome": outcome.name(),
                        "sign": cell.sign,
                        "pair23": cell.pair23.name(),
                        "pair56": cell.pair56.name(),
                    }),
                );
            } else {
                let rendered = format_cell(cell.sign, cell.pair23, cell.pair56);
                writeln!(out, "{:<3}{:<4}{rendered}", op.name(), outcome.symbol()).unwrap();
            }
        }
    }
    if json {
        json_line(
            &mut out,
            &json!({"record": "summary", "command": "table", "operated_qubit": qubit.label()}),
        );
    }
    Ok(Outcome::ok(out, true))
}

fn cmd_verify(json: bool) -> Outcome {
    let checks = run_checks();
    let failed = checks.iter().filter(|c| !c.passed).count();
    let mut out = String::new();
    for c in &checks {
        if json {
            json_line(
                &mut out,
                &json!({"record": "check", "name": c.name, "passed": c.passed, "detail": c.detail}),
            );
        } else {
            writeln!(out, "{c}").unwrap();
        }
    }
    if json {
        json_line(
            &mut out,
            &json!({"record": "summary", "command": "verify", "checks": checks.len(), "failed": failed}),
        );
    } else {
        writeln!(out, "{} checks, {failed} failed", checks.len()).unwrap();
    }
    Outcome::ok(out, failed == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn secret_parsing() {
        assert_eq!(parse_secret("55").unwrap().to_string(), "00110111");
        assert_eq!(parse_secret("0").unwrap().to_string(), "0");
        assert_eq!(parse_secret("0110").unwrap().to_string(), "0110");
        assert!(parse_secret("5x").is_err());
        assert!(parse_secret("").is_err());
    }

    #[test]
    fn cell_rendering() {
        let c = collapse_table(Pauli::X, OperatedQubit::One, BellLabel::AlphaMinus);
        assert_eq!(
            format_cell(c.sign, c.pair23, c.pair56),
            "\u{2212}1/2 \u{b7} \u{3b2}\u{2212}(2,3) \u{2297} \u{3b1}+(5,6)"
        );
    }

    #[test]
    fn bad_qubit_is_rejected() {
        assert_eq!(run(["bellshare", "table", "--operated-qubit", "2"]).exit_code, 2);
    }
}
