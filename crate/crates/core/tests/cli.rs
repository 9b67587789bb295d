use std::process::Command;

use serde_json::Value;
use stablerank::cli::{dispatch, CommandResult, Status};

fn call(args: &[&str]) -> CommandResult {
    dispatch(std::iter::once("stablerank").chain(args.iter().copied()))
}

fn binary(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_stablerank")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

const SAMPLES: &[&[&str]] = &[
    &["symbol", "--num", "12", "--den", "1+4i", "--m", "2"],
    &["symbol", "--ring", "eisenstein", "--num", "2", "--den", "7", "--m", "3"],
    &["factor", "--value", "-360"],
    &["factor", "--ring", "gaussian", "--value", "5+15i"],
    &["factor", "--ring", "eisenstein", "--value", "7"],
    &["bms-r", "--ideal", "8"],
    &["bms-r", "--ring", "eisenstein", "--ideal", "6"],
    &["complete", "--a", "1+4i", "--b", "12", "--ideal", "4"],
    &["sk1", "--matrix", "[[1+4i,12],[24,17-68i]]", "--ideal", "4"],
    &["unimodular", "--row", "1+x,12,x^2+16"],
    &["unimodular", "--row", "x,2"],
    &["stability", "--row", "1+x,12,x^2+16", "--theta", "4i", "--conductor", "4"],
    &["stability", "--row", "1+x,12,x^2+16"],
    &["stability-search", "--row", "x,0,1", "--deg", "0", "--coeff", "1"],
    &["sr", "--modulus", "12"],
    &["sl2-lift", "--modulus", "12", "--matrix", "[[5,0],[0,5]]"],
    &["ge2", "--modulus", "6", "--matrix", "[[5,0],[0,5]]"],
    &["lemma-check", "--modulus", "6"],
    &["reproduce-paper"],
];

#[test]
fn every_subcommand_answers_with_the_envelope() {
    for args in SAMPLES {
        let r = call(args);
        assert_eq!(r.status, Status::Ok, "{args:?}: {:?}", r.diagnostics);
        assert_eq!(r.exit_code, 0);
        assert_eq!(r.schema, "stablerank/1");
        assert_eq!(r.command, args[0]);
        assert!(!r.payload.is_null());
    }
}

#[test]
fn json_output_round_trips() {
    for args in SAMPLES {
        let text = call(args).to_json();
        let parsed: CommandResult = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.to_json(), text, "{args:?}");
        let generic: Value = serde_json::from_str(&text).unwrap();
        let again: Value = serde_json::from_str(&serde_json::to_string(&generic).unwrap()).unwrap();
        assert_eq!(again, generic);
    }
}

#[test]
fn payloads_deserialize_into_library_types() {
    use stablerank::intpoly::Unimodularity;
    use stablerank::stability::ObstructionReport;
    let u: Unimodularity = serde_json::from_value(call(SAMPLES[9]).payload).unwrap();
    assert!(u.certificate().is_some_and(|c| c.verify()));
    let o: Unimodularity = serde_json::from_value(call(SAMPLES[10]).payload).unwrap();
    assert!(!o.is_unimodular());
    let rep: ObstructionReport = serde_json::from_value(call(SAMPLES[11]).payload).unwrap();
    assert!(stablerank::stability::verify_report(&rep));
}

#[test]
fn reproduction_is_byte_identical() {
    let (code1, out1, _) = binary(&["reproduce-paper"]);
    let (code2, out2, _) = binary(&["reproduce-paper"]);
    assert_eq!((code1, code2), (0, 0));
    assert_eq!(out1, out2);
    let v: Value = serde_json::from_str(&out1).unwrap();
    assert!(v["elapsed_ms"].is_null());
    let table = v["payload"]["table"].as_array().unwrap();
    assert!(table.len() >= 6);
    assert!(table.iter().all(|row| row["result"] == "ok"));
    let (_, pretty, _) = binary(&["reproduce-paper", "--pretty"]);
    assert!(pretty.contains("not stable"));
}

#[test]
fn exit_codes() {
    assert_eq!(binary(&["sr", "--modulus", "10"]).0, 0);
    assert_eq!(binary(&["--help"]).0, 0);
    // usage errors
    let (code, stdout, stderr) = binary(&["no-such-command"]);
    assert_eq!(code, 2);
    assert!(stdout.is_empty() && !stderr.is_empty());
    assert_eq!(binary(&["symbol", "--num", "12"]).0, 2);
    assert_eq!(binary(&["unimodular", "--row", "x+"]).0, 2);
    // well-formed input outside the domain
    let (code, stdout, _) = binary(&["symbol", "--num", "2", "--den", "1+i", "--m", "2"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["status"], "error");
    let (code, stdout, _) = binary(&["stability", "--row", "21+2x,12,x^2+20"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("no root in supported rings"));
    let (code, stdout, _) = binary(&["stability", "--row", "1+x,12,x^2+16", "--theta", "4", "--conductor", "4"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("eval(c, θ) = 0"));
}
