//! Command-line front end. Every command prints one JSON envelope on stdout;
//! `--pretty` switches to plain text. Exit codes: 0 success, 1 domain error,
//! 2 usage or parse error.

use std::ffi::OsString;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bms::{complete_sl2_rel, in_sl2_rel, r_of_ideal, sk1_invariant, Mat2};
use crate::error::{Error, Result};
use crate::exact_arith::factor_int;
use crate::finite_rings::{
    check_stable_row_lemma, e2_decompose, e2_decompose_mod, sl2_lift, stable_rank, IntMat2,
    LemmaConfig, ZnMat2,
};
use crate::intpoly::{unimodular_certificate, PolyRow, Unimodularity};
use crate::quad::{factor, PrincipalIdeal, QuadInt, RingKind};
use crate::residue::power_residue_symbol;
use crate::stability::{obstruction, obstruction_auto, search_stabilizer, StabilizerSearch};

pub const SCHEMA: &str = "stablerank/1";

#[derive(Debug, Parser)]
#[command(name = "stablerank", version, about = "Exact stable-rank computations", disable_help_subcommand = true)]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FactorRing {
    Integer,
    Gaussian,
    Eisenstein,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Power residue symbol (num / den)_m.
    Symbol {
        #[arg(long, default_value = "gaussian")]
        ring: String,
        #[arg(long)]
        num: String,
        #[arg(long)]
        den: String,
        #[arg(long)]
        m: u32,
    },
    /// Factor an integer or a ring element.
    Factor {
        #[arg(long, value_enum, default_value = "integer")]
        ring: FactorRing,
        #[arg(long, allow_hyphen_values = true)]
        value: String,
    },
    /// The divisor r(I) of the number of roots of unity.
    BmsR {
        #[arg(long, default_value = "gaussian")]
        ring: String,
        #[arg(long)]
        ideal: String,
    },
    /// Complete a first row (a, b) to a matrix of SL2(S, I).
    Complete {
        #[arg(long, default_value = "gaussian")]
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        ideal: String,
    },
    /// Invariant of a matrix of SL2(S, I).
    Sk1 {
        #[arg(long, default_value = "gaussian")]
        ring: String,
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        ideal: String,
    },
    /// Bézout certificate or obstruction for a row in Z[x].
    Unimodular {
        #[arg(long, allow_hyphen_values = true)]
        row: String,
    },
    /// Non-stability obstruction; without --theta the roots of c are searched.
    Stability {
        #[arg(long, allow_hyphen_values = true)]
        row: String,
        #[arg(long, default_value = "gaussian")]
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
        /// Defaults to the content of theta.
        #[arg(long)]
        conductor: Option<String>,
    },
    /// Bounded search for a stabilizing pair (s1, s2).
    StabilitySearch {
        #[arg(long, allow_hyphen_values = true)]
        row: String,
        #[arg(long, default_value_t = 1)]
        deg: usize,
        #[arg(long, default_value_t = 3)]
        coeff: i64,
    },
    /// Stable rank of Z/n by exhaustion.
    Sr {
        #[arg(long)]
        modulus: u64,
    },
    /// Lift a matrix of SL2(Z/n) to SL2(Z).
    Sl2Lift {
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        matrix: String,
    },
    /// Elementary decomposition of one matrix, or of all of SL2(Z/n).
    Ge2 {
        #[arg(long)]
        modulus: Option<u64>,
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long)]
        exhaustive: bool,
    },
    /// Stable rows versus lifting of quotient matrices over Z/n.
    LemmaCheck {
        #[arg(long)]
        modulus: u64,
        /// Restrict to rows with this last entry.
        #[arg(long)]
        c: Option<u64>,
        #[arg(long, default_value_t = 8)]
        max_modulus: u64,
    },
    /// Recompute the unstable row certificate chain end to end.
    ReproducePaper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandResult {
    pub schema: String,
    pub command: String,
    pub status: Status,
    pub exit_code: i32,
    pub payload: Value,
    pub diagnostics: Vec<String>,
    /// Absent for deterministic commands.
    pub elapsed_ms: Option<u64>,
    #[serde(skip)]
    pub text: String,
}

impl CommandResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// What the binary writes to stdout.
    pub fn render(&self, pretty: bool) -> String {
        if pretty {
            self.text.clone()
        } else {
            self.to_json()
        }
    }
}

struct Outcome {
    payload: Value,
    text: String,
    diagnostics: Vec<String>,
    ok: bool,
}

impl Outcome {
    fn ok(payload: Value, text: String) -> Self {
        Outcome { payload, text, diagnostics: Vec::new(), ok: true }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn ring(text: &str) -> Result<RingKind> {
    text.parse()
}

fn element(kind: RingKind, text: &str) -> Result<QuadInt> {
    QuadInt::parse(kind, text)
}

fn ideal(kind: RingKind, text: &str) -> Result<PrincipalIdeal> {
    Ok(PrincipalIdeal::new(&element(kind, text)?))
}

fn integer(text: &str) -> Result<BigInt> {
    text.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("`{text}` is not an integer")))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Symbol { .. } => "symbol",
        Command::Factor { .. } => "factor",
        Command::BmsR { .. } => "bms-r",
        Command::Complete { .. } => "complete",
        Command::Sk1 { .. } => "sk1",
        Command::Unimodular { .. } => "unimodular",
        Command::Stability { .. } => "stability",
        Command::StabilitySearch { .. } => "stability-search",
        Command::Sr { .. } => "sr",
        Command::Sl2Lift { .. } => "sl2-lift",
        Command::Ge2 { .. } => "ge2",
        Command::LemmaCheck { .. } => "lemma-check",
        Command::ReproducePaper => "reproduce-paper",
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn dispatch<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    dispatch_with_mode(argv).0
}

/// Like [`dispatch`], also reporting whether `--pretty` was given.
pub fn dispatch_with_mode<I, T>(argv: I) -> (CommandResult, bool)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            let result = CommandResult {
                schema: SCHEMA.into(),
                command: String::new(),
                status: if informational { Status::Ok } else { Status::Error },
                exit_code: if informational { 0 } else { 2 },
                payload: if informational { json!({ "help": text }) } else { Value::Null },
                diagnostics: if informational { Vec::new() } else { vec![text.clone()] },
                elapsed_ms: None,
                text,
            };
            return (result, true);
        }
    };
    let name = command_name(&cli.command);
    let deterministic = matches!(cli.command, Command::ReproducePaper);
    let start = Instant::now();
    let outcome = run(&cli.command);
    let elapsed_ms = (!deterministic).then(|| start.elapsed().as_millis() as u64);
    let result = match outcome {
        Ok(o) => CommandResult {
            schema: SCHEMA.into(),
            command: name.into(),
            status: if o.ok { Status::Ok } else { Status::Error },
            exit_code: if o.ok { 0 } else { 1 },
            payload: o.payload,
            diagnostics: o.diagnostics,
            elapsed_ms,
            text: o.text,
        },
        Err(e) => CommandResult {
            schema: SCHEMA.into(),
            command: name.into(),
            status: Status::Error,
            exit_code: if e.is_usage() { 2 } else { 1 },
            payload: Value::Null,
            diagnostics: vec![e.to_string()],
            elapsed_ms,
            text: format!("error: {e}"),
        },
    };
    (result, cli.pretty)
}

fn run(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Symbol { ring: r, num, den, m } => {
            let kind = ring(r)?;
            let (b, a) = (element(kind, num)?, element(kind, den)?);
            let value = power_residue_symbol(&b, &a, *m)?;
            let embed = value.embed(kind)?;
            Ok(Outcome::ok(
                json!({ "order": value.order, "exponent": value.exponent, "embed": embed.to_string() }),
                format!("({b} / {a})_{m} = {embed}"),
            ))
        }
        Command::Factor { ring: r, value } => match r {
            FactorRing::Integer => {
                let n = integer(value)?;
                let f = factor_int(&n)?;
                let parts: Vec<String> = f.factors.iter().map(|p| format!("{}^{}", p.prime, p.exponent)).collect();
                let sign = if f.sign < 0 { "-" } else { "" };
                Ok(Outcome::ok(to_value(&f), format!("{n} = {sign}{}", parts.join(" * "))))
            }
            FactorRing::Gaussian | FactorRing::Eisenstein => {
                let kind = if matches!(r, FactorRing::Gaussian) { RingKind::Gaussian } else { RingKind::Eisenstein };
                let x = element(kind, value)?;
                let f = factor(&x)?;
                let parts: Vec<String> = f.factors.iter().map(|p| format!("({})^{}", p.prime, p.exponent)).collect();
                Ok(Outcome::ok(to_value(&f), format!("{x} = ({}) * {}", f.unit, parts.join(" * "))))
            }
        },
        Command::BmsR { ring: r, ideal: i } => {
            let kind = ring(r)?;
            let id = ideal(kind, i)?;
            let d = r_of_ideal(kind, &id)?;
            Ok(Outcome::ok(to_value(&d), format!("r({id}) = {} (of m = {})", d.r, d.m)))
        }
        Command::Complete { ring: r, a, b, ideal: i } => {
            let kind = ring(r)?;
            let id = ideal(kind, i)?;
            let m = complete_sl2_rel(&element(kind, a)?, &element(kind, b)?, &id)?;
            let member = in_sl2_rel(&m, &id);
            Ok(Outcome::ok(
                json!({ "matrix": to_value(&m), "matrix_text": m.to_string(), "membership": to_value(&member) }),
                format!("{m} in SL2(S, {id}): {}", member.member),
            ))
        }
        Command::Sk1 { ring: r, matrix, ideal: i } => {
            let kind = ring(r)?;
            let id = ideal(kind, i)?;
            let m = Mat2::parse(kind, matrix)?;
            let cert = sk1_invariant(&m, &id)?;
            let embed = cert.value.embed(kind)?;
            let mut payload = to_value(&cert);
            payload["embed"] = json!(embed.to_string());
            Ok(Outcome::ok(payload, format!("invariant of {m} over {id}: {embed} (r = {})", cert.r)))
        }
        Command::Unimodular { row } => {
            let row = PolyRow::parse(row)?;
            let u = unimodular_certificate(&row)?;
            let text = match &u {
                Unimodularity::Certified(c) => {
                    let w: Vec<String> = c.witnesses.iter().map(|w| w.to_string()).collect();
                    format!("{row} is unimodular; witnesses ({})", w.join(", "))
                }
                Unimodularity::Obstructed(o) => format!("{row} is not unimodular: {o}"),
            };
            Ok(Outcome::ok(to_value(&u), text))
        }
        Command::Stability { row, ring: r, theta, conductor } => {
            let row = PolyRow::parse(row)?;
            let report = match theta {
                None => obstruction_auto(&row)?,
                Some(t) => {
                    let kind = ring(r)?;
                    let theta = element(kind, t)?;
                    let f = match conductor {
                        Some(c) => integer(c)?,
                        None => num_integer::Integer::gcd(&theta.a, &theta.b),
                    };
                    obstruction(&row, kind, &theta, &f)?
                }
            };
            let embed = report.value.embed(report.ring)?;
            let text = format!(
                "{}: x -> {} over {}, I = {}, r = {}, invariant {embed}, verdict {}",
                report.row, report.theta, report.ring, report.ideal, report.r, report.verdict
            );
            Ok(Outcome::ok(to_value(&report), text))
        }
        Command::StabilitySearch { row, deg, coeff } => {
            let row = PolyRow::parse(row)?;
            let out = search_stabilizer(&row, *deg, *coeff)?;
            let text = match &out {
                StabilizerSearch::Found { witness, searched } => format!(
                    "stabilizer s = ({}, {}) after {searched} pairs",
                    witness.s1, witness.s2
                ),
                StabilizerSearch::NotFound { searched } => format!(
                    "no stabilizer among {searched} pairs (deg <= {deg}, |coeff| <= {coeff}); this does not prove instability"
                ),
            };
            Ok(Outcome::ok(to_value(&out), text))
        }
        Command::Sr { modulus } => {
            let rep = stable_rank(*modulus)?;
            Ok(Outcome::ok(
                to_value(&rep),
                format!("sr(Z/{modulus}) = {} ({} rows checked)", rep.stable_rank, rep.rows_checked),
            ))
        }
        Command::Sl2Lift { modulus, matrix } => {
            let m = ZnMat2::parse(*modulus, matrix)?;
            let lift = sl2_lift(&m)?;
            Ok(Outcome::ok(
                json!({ "input": to_value(&m), "lift": to_value(&lift), "det": lift.det().to_string() }),
                format!("{m} lifts to {lift}"),
            ))
        }
        Command::Ge2 { modulus, matrix, exhaustive } => ge2(*modulus, matrix.as_deref(), *exhaustive),
        Command::LemmaCheck { modulus, c, max_modulus } => {
            let rep = check_stable_row_lemma(*modulus, &LemmaConfig { max_modulus: *max_modulus, c_filter: *c })?;
            let text = format!(
                "Z/{modulus}: {} rows, {} stable, {} quotient matrices, equivalence {}",
                rep.rows_checked,
                rep.stable_rows,
                rep.matrices_checked,
                if rep.holds { "holds" } else { "FAILS" }
            );
            let ok = rep.holds;
            let mut o = Outcome::ok(to_value(&rep), text);
            if !ok {
                o.ok = false;
                o.diagnostics.push("counterexample found".into());
            }
            Ok(o)
        }
        Command::ReproducePaper => reproduce(),
    }
}

fn ge2(modulus: Option<u64>, matrix: Option<&str>, exhaustive: bool) -> Result<Outcome> {
    match (modulus, matrix, exhaustive) {
        (Some(n), _, true) => {
            let group = ZnMat2::sl2(n)?;
            let mut verified = 0u64;
            let mut longest = 0usize;
            for m in &group {
                let w = e2_decompose_mod(m)?;
                longest = longest.max(w.len());
                verified += (w.recompose_mod(n) == *m) as u64;
            }
            let ok = verified == group.len() as u64;
            let mut o = Outcome::ok(
                json!({ "modulus": n, "matrices": group.len(), "verified": verified, "longest_word": longest }),
                format!("SL2(Z/{n}): {verified} of {} matrices decomposed, longest word {longest}", group.len()),
            );
            if !ok {
                o.ok = false;
                o.diagnostics.push("some decompositions failed to recompose".into());
            }
            Ok(o)
        }
        (Some(n), Some(text), false) => {
            let m = ZnMat2::parse(n, text)?;
            let w = e2_decompose_mod(&m)?;
            Ok(Outcome::ok(
                json!({ "matrix": to_value(&m), "word": to_value(&w), "word_text": w.to_string() }),
                format!("{m} = {w}"),
            ))
        }
        (None, Some(text), false) => {
            let m = IntMat2::parse(text)?;
            let w = e2_decompose(&m)?;
            Ok(Outcome::ok(
                json!({ "matrix": to_value(&m), "word": to_value(&w), "word_text": w.to_string() }),
                format!("{m} = {w}"),
            ))
        }
        (None, _, true) => Err(Error::Parse("--exhaustive needs --modulus".into())),
        (_, None, false) => Err(Error::Parse("ge2 needs --matrix or --exhaustive".into())),
    }
}

fn reproduce() -> Result<Outcome> {
    let kind = RingKind::Gaussian;
    let g = |a: i64, b: i64| QuadInt::new(kind, a, b);
    let mut table: Vec<[String; 3]> = Vec::new();
    let mut ok = true;
    let mut check = |step: &str, value: String, pass: bool| {
        ok &= pass;
        table.push([step.to_string(), value, if pass { "ok" } else { "FAIL" }.to_string()]);
    };

    let row = PolyRow::parse("1+x,12,x^2+16")?;
    let cert = unimodular_certificate(&row)?.into_certificate()?;
    let w: Vec<String> = cert.witnesses.iter().map(|w| w.to_string()).collect();
    check("row (1+x, 12, x^2+16) unimodular", format!("witnesses ({})", w.join(", ")), cert.verify());

    let four = PrincipalIdeal::new(&g(4, 0));
    let divisor = r_of_ideal(kind, &four)?;
    check("r(4Z[i])", divisor.r.to_string(), divisor.r == 2);

    let completion = complete_sl2_rel(&g(1, 4), &g(12, 0), &four)?;
    let member = in_sl2_rel(&completion, &four).member;
    check("completion of (1+4i, 12) in SL2(Z[i], 4Z[i])", completion.to_string(), member);

    let fixed = Mat2::new(g(1, 4), g(12, 0), g(24, 0), g(17, -68));
    let fixed_member = in_sl2_rel(&fixed, &four).member;
    check("[[1+4i,12],[24,17-68i]] in SL2(Z[i], 4Z[i])", format!("det {}", fixed.det()), fixed_member);

    let inv = sk1_invariant(&completion, &four)?;
    let inv_fixed = sk1_invariant(&fixed, &four)?;
    let embed = inv.value.embed(kind)?;
    check(
        "invariant (12 / 1+4i)_2",
        embed.to_string(),
        inv.value.as_sign() == Some(-1) && inv_fixed.value == inv.value,
    );

    let report = obstruction(&row, kind, &g(0, 4), &BigInt::from(4))?;
    let verdict_ok = report.verdict == crate::stability::Verdict::NotStable
        && crate::stability::verify_report(&report);
    check("verdict at x -> 4i, f = 4", report.verdict.to_string(), verdict_ok);

    let width = table.iter().map(|r| r[0].chars().count()).max().unwrap_or(0);
    let vwidth = table.iter().map(|r| r[1].chars().count()).max().unwrap_or(0);
    let text: Vec<String> = table
        .iter()
        .map(|[s, v, p]| {
            let pad = width - s.chars().count();
            let vpad = vwidth - v.chars().count();
            format!("{s}{}  {v}{}  {p}", " ".repeat(pad), " ".repeat(vpad))
        })
        .collect();
    let payload = json!({
        "table": table.iter().map(|[s, v, p]| json!({ "step": s, "value": v, "result": p })).collect::<Vec<_>>(),
        "bezout": to_value(&cert),
        "divisor": to_value(&divisor),
        "completion": to_value(&completion),
        "invariant": to_value(&inv),
        "report": to_value(&report),
    });
    let mut o = Outcome::ok(payload, text.join("\n"));
    if !ok {
        o.ok = false;
        o.diagnostics.push("a reproduction step failed".into());
    }
    Ok(o)
}
