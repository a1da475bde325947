use std::process::{Command, Output};

use geospec_core::format::{parse_rational, parse_surd};
use geospec_core::spectrum::integer;
use geospec_core::words::EpWord;
use geospec_core::BigRational;
use serde_json::Value;

fn geospec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geospec"))
        .args(args)
        .env_remove("GEOSPEC_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = geospec(&all);
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn base_two_table() {
    let o = geospec(&["spectrum", "integer", "--base", "2", "--count", "3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let values: Vec<&str> = out
        .lines()
        .skip(1)
        .take(3)
        .map(|l| l.split('\t').nth(1).unwrap())
        .collect();
    assert_eq!(values, ["1/3", "2/5", "7/17"]);
    let limit = out.lines().find(|l| l.starts_with("limit")).unwrap();
    assert!(limit.contains("0.4124540"), "{limit}");
}

#[test]
fn integer_json_round_trips() {
    for a in [2u64, 3, 7] {
        let doc = json(&[
            "spectrum",
            "integer",
            "--base",
            &a.to_string(),
            "--count",
            "4",
        ]);
        assert_eq!(doc["status"], "ok");
        let x = BigRational::new(1.into(), a.into());
        for p in doc["payload"]["points"].as_array().unwrap() {
            let k = p["index"].as_u64().unwrap() as u32;
            let value = parse_rational(p["value"].as_str().unwrap()).unwrap();
            let digits: Vec<u8> = p["witness"]
                .as_str()
                .unwrap()
                .bytes()
                .map(|c| c - b'0')
                .collect();
            let w = EpWord::new(vec![], digits).unwrap();
            // p_k = f(A_k^inf; 1/a) / a
            assert_eq!(&x * integer::f_eval(&w, &x).unwrap(), value);
            assert_eq!(&x * integer::e_k(&x, k), value);
        }
        let mid = parse_rational(doc["payload"]["limit"]["ball"]["mid"].as_str().unwrap()).unwrap();
        let last = parse_rational(doc["payload"]["points"][3]["value"].as_str().unwrap()).unwrap();
        assert!(mid > last);
    }
}

#[test]
fn quadratic_json_round_trips() {
    let doc = json(&[
        "spectrum",
        "quadratic",
        "--b",
        "3",
        "--sign",
        "minus",
        "--count",
        "5",
    ]);
    assert_eq!(doc["status"], "ok");
    let got: Vec<String> = doc["payload"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["value"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(got, ["0", "3/13", "1/4", "36/143", "33/131"]);
    for r in doc["payload"]["rows"].as_array().unwrap() {
        let pq = format!("{}/{}", r["p"].as_str().unwrap(), r["q"].as_str().unwrap());
        assert_eq!(
            parse_rational(&pq).unwrap(),
            parse_rational(r["value"].as_str().unwrap()).unwrap()
        );
    }
    let limit = parse_surd(doc["payload"]["limit"].as_str().unwrap()).unwrap();
    assert!((limit.to_f64() - doc["payload"]["limit_approx"].as_f64().unwrap()).abs() < 1e-15);
}

#[test]
fn csv_table() {
    let o = geospec(&[
        "spectrum",
        "quadratic",
        "--b",
        "4",
        "--sign",
        "plus",
        "--count",
        "5",
        "--csv",
    ]);
    assert!(o.status.success());
    let values: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(3).unwrap().to_string())
        .collect();
    assert_eq!(values, ["0", "1/6", "1/5", "5/24", "4/19"]);
}

#[test]
fn balanced_check_message() {
    let o = geospec(&["words", "balanced-check", "1010010001"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).lines().next().unwrap(),
        "unbalanced; no F-factor"
    );
    let o = geospec(&["words", "balanced-check", "0100101"]);
    assert_eq!(stdout(&o).lines().next().unwrap(), "balanced; no F-factor");
}

#[test]
fn limsup_of_a_third() {
    let doc = json(&[
        "limsup", "--alpha", "int:2", "--xi", "1/3", "--iters", "1000",
    ]);
    assert_eq!(doc["payload"]["limsup_exact"], "1/3");
    let doc = json(&[
        "limsup", "--alpha", "int:2", "--xi", "0.4", "--iters", "200",
    ]);
    assert_eq!(doc["payload"]["limsup_exact"], "2/5");
}

#[test]
fn dimension_example() {
    let doc = json(&["dim", "--case", "int:2", "--t", "2/5"]);
    let i = &doc["payload"]["integer"];
    assert_eq!(i["threshold_ell"], 4);
    assert_eq!(i["below_one_at_threshold"], true);
    assert!(i["bound"]["value"].as_f64().unwrap() <= 26f64.ln() / 32f64.ln() + 1e-15);
}

#[test]
fn interval_single_eta() {
    let o = geospec(&[
        "interval", "--b", "4", "--sign", "plus", "--eta", "0.495", "--window", "60",
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("g = eta: true"));
}

#[test]
fn betasym_boundary_matches_map() {
    let o = geospec(&["betasym", "boundary", "--b", "5", "--sign", "minus"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("matches the map (50 digits)\ttrue"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["spectrum", "integer", "--base", "1"][..],
        &["limsup", "--alpha", "int:x", "--xi", "1/3"],
        &["limsup", "--alpha", "int:2", "--xi", "1/0"],
        &["words", "balanced-check", "10a1"],
        &["verify", "no-such-suite"],
        &["frobnicate"],
    ] {
        assert_eq!(geospec(args).status.code(), Some(2), "{args:?}");
    }
    let o = Command::new(env!("CARGO_BIN_EXE_geospec"))
        .args(["spectrum", "integer", "--base", "2"])
        .env("GEOSPEC_PRECISION", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_reports_per_criterion() {
    let o = geospec(&["verify", "words"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS  6 words"));
    // the interval criterion is red for two minus units, so verify must say so
    let o = geospec(&["verify", "interval"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("quad:3:minus: Key5 fails"));
}
