//! Golden outputs, determinism, re-parse round trips and schema conformance
//! for every fixture listed in `fixtures/cases.json`.

use std::path::{Path, PathBuf};
use std::process::Command;

use kottwitz::cli::run_with_io;
use regex::Regex;
use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap_or_else(|e| panic!("{}: {e}", p.display())))
        .unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("kottwitz").chain(args.iter().copied());
    let code = run_with_io(argv, &mut std::io::empty(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Validator for the JSON Schema keywords the published schemas use.
/// Unknown keywords fail loudly so the subset cannot silently shrink.
struct Validator<'a> {
    root: &'a Value,
}

impl Validator<'_> {
    fn check(&self, s: &Value, v: &Value, path: &str) -> Result<(), String> {
        let s = s.as_object().ok_or_else(|| format!("{path}: schema is not an object"))?;
        for (k, kw) in s {
            match k.as_str() {
                "$schema" | "$id" | "title" | "$defs" => {}
                "$ref" => {
                    let name = kw.as_str().unwrap().strip_prefix("#/$defs/").expect("local ref");
                    self.check(&self.root["$defs"][name], v, path)?;
                }
                "type" => {
                    let types: Vec<&str> = match kw {
                        Value::String(t) => vec![t.as_str()],
                        Value::Array(ts) => ts.iter().map(|t| t.as_str().unwrap()).collect(),
                        _ => panic!("bad type keyword"),
                    };
                    let ok = types.iter().any(|t| match *t {
                        "object" => v.is_object(),
                        "array" => v.is_array(),
                        "string" => v.is_string(),
                        "integer" => v.is_i64() || v.is_u64(),
                        "boolean" => v.is_boolean(),
                        "null" => v.is_null(),
                        other => panic!("unsupported type {other}"),
                    });
                    if !ok {
                        return Err(format!("{path}: {v} is not of type {types:?}"));
                    }
                }
                "properties" => {
                    if let Some(o) = v.as_object() {
                        for (name, sub) in kw.as_object().unwrap() {
                            if let Some(x) = o.get(name) {
                                self.check(sub, x, &format!("{path}.{name}"))?;
                            }
                        }
                    }
                }
                "required" => {
                    if let Some(o) = v.as_object() {
                        for name in kw.as_array().unwrap() {
                            if !o.contains_key(name.as_str().unwrap()) {
                                return Err(format!("{path}: missing {name}"));
                            }
                        }
                    }
                }
                "additionalProperties" => {
                    if let Some(o) = v.as_object() {
                        let known = s.get("properties").and_then(Value::as_object);
                        for (name, x) in o {
                            if known.is_some_and(|p| p.contains_key(name)) {
                                continue;
                            }
                            match kw {
                                Value::Bool(true) => {}
                                Value::Bool(false) => return Err(format!("{path}: unexpected key {name}")),
                                sub => self.check(sub, x, &format!("{path}.{name}"))?,
                            }
                        }
                    }
                }
                "items" => {
                    if let Some(a) = v.as_array() {
                        for (i, x) in a.iter().enumerate() {
                            self.check(kw, x, &format!("{path}[{i}]"))?;
                        }
                    }
                }
                "minItems" | "maxItems" => {
                    if let Some(a) = v.as_array() {
                        let n = kw.as_u64().unwrap() as usize;
                        if (k == "minItems" && a.len() < n) || (k == "maxItems" && a.len() > n) {
                            return Err(format!("{path}: {k} {n} violated"));
                        }
                    }
                }
                "minimum" => {
                    if let Some(x) = v.as_i64() {
                        if x < kw.as_i64().unwrap() {
                            return Err(format!("{path}: {x} below minimum"));
                        }
                    }
                }
                "pattern" => {
                    if let Some(x) = v.as_str() {
                        if !Regex::new(kw.as_str().unwrap()).unwrap().is_match(x) {
                            return Err(format!("{path}: {x:?} does not match {kw}"));
                        }
                    }
                }
                "enum" => {
                    if !kw.as_array().unwrap().contains(v) {
                        return Err(format!("{path}: {v} not in {kw}"));
                    }
                }
                "const" => {
                    if kw != v {
                        return Err(format!("{path}: {v} is not {kw}"));
                    }
                }
                "allOf" => {
                    for sub in kw.as_array().unwrap() {
                        self.check(sub, v, path)?;
                    }
                }
                "oneOf" => {
                    let n = kw.as_array().unwrap().iter().filter(|sub| self.check(sub, v, path).is_ok()).count();
                    if n != 1 {
                        return Err(format!("{path}: {n} branches of oneOf match {v}"));
                    }
                }
                other => panic!("unsupported schema keyword {other}"),
            }
        }
        Ok(())
    }
}

fn validate(schema_file: &str, v: &Value) -> Result<(), String> {
    let schema = read_json(&root().join("schemas").join(schema_file));
    Validator { root: &schema }.check(&schema, v, "$")
}

fn cases() -> Vec<Value> {
    read_json(&root().join("fixtures/cases.json"))["cases"].as_array().unwrap().clone()
}

#[test]
fn golden_outputs_are_reproduced_byte_for_byte() {
    for c in cases() {
        let name = c["name"].as_str().unwrap();
        let args: Vec<&str> = c["args"].as_array().unwrap().iter().map(|a| a.as_str().unwrap()).collect();
        let input = root().join("fixtures").join(format!("{}.json", c["fixture"].as_str().unwrap()));
        let input = input.to_str().unwrap();
        let argv: Vec<&str> = args.iter().copied().chain(["--input", input]).collect();
        let (code, out, err) = call(&argv);
        let golden = std::fs::read_to_string(root().join("fixtures/golden").join(format!("{name}.json"))).unwrap();
        assert_eq!(code as i64, c["exit"].as_i64().unwrap(), "{name}: exit code; stderr {err}");
        let produced = if out.is_empty() { &err } else { &out };
        assert_eq!(produced, &golden, "{name}: output differs from golden");
        assert_eq!(call(&argv), (code, out, err), "{name}: not deterministic");
    }
}

#[test]
fn outputs_reparse_and_match_their_schemas() {
    for c in cases() {
        let name = c["name"].as_str().unwrap();
        let golden = std::fs::read_to_string(root().join("fixtures/golden").join(format!("{name}.json"))).unwrap();
        let v: Value = serde_json::from_str(&golden).unwrap();
        assert_eq!(format!("{v}\n"), golden, "{name}: re-serialization is not byte-identical");
        let args: Vec<&str> = c["args"].as_array().unwrap().iter().map(|a| a.as_str().unwrap()).collect();
        let cmd = format!("{}-{}", args[0], args[1]);
        if matches!(c["exit"].as_i64(), Some(0 | 2)) {
            let input = read_json(&root().join("fixtures").join(format!("{}.json", c["fixture"].as_str().unwrap())));
            validate(&format!("{cmd}.input.json"), &input).unwrap_or_else(|e| panic!("{name} input: {e}"));
            validate(&format!("{cmd}.output.json"), &v).unwrap_or_else(|e| panic!("{name} output: {e}"));
        } else {
            validate("error.json", &v).unwrap_or_else(|e| panic!("{name} error: {e}"));
        }
    }
}

#[test]
fn every_subcommand_has_schemas_and_a_golden_case() {
    let groups: [(&str, &[&str]); 7] = [
        ("isocrystal", &["slopes", "decompose", "hom", "tensor"]),
        ("rep", &["validate", "to-isocrystal"]),
        ("arch", &["validate", "decompose", "h2"]),
        ("phispace", &["pair", "classify", "localize", "tensor"]),
        ("kottwitz", &["conditions", "transition", "bks", "localclass", "adelic", "inflation"]),
        ("weil", &["check", "omega", "localize", "sequence"]),
        ("cyclo", &["order", "search", "split-check"]),
    ];
    let cases = cases();
    for (g, cmds) in groups {
        for cmd in cmds {
            for side in ["input", "output"] {
                assert!(root().join(format!("schemas/{g}-{cmd}.{side}.json")).is_file(), "{g} {cmd} {side} schema");
            }
            assert!(
                cases.iter().any(|c| c["args"][0] == g && c["args"][1] == *cmd && c["exit"] == 0),
                "no successful golden case for {g} {cmd}"
            );
        }
    }
}

#[test]
fn schema_validator_rejects_malformed_documents() {
    let bad = serde_json::json!({ "slopes": [{ "slope": "1/0", "mult": 2 }] });
    assert!(validate("isocrystal-slopes.output.json", &bad).is_err());
    let extra = serde_json::json!({ "order": 2, "note": "x" });
    assert!(validate("kottwitz-bks.output.json", &extra).is_err());
    assert!(validate("kottwitz-bks.output.json", &serde_json::json!({ "order": 2 })).is_ok());
}

#[test]
fn binary_honours_fixture_directory_and_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_kottwitz");
    let run = |args: &[&str]| {
        let o = Command::new(bin).args(args).env("KOTTWITZ_FIXTURES", root().join("fixtures")).output().unwrap();
        (o.status.code().unwrap(), String::from_utf8(o.stdout).unwrap())
    };
    assert_eq!(
        run(&["isocrystal", "slopes", "--fixture", "e-half"]),
        (0, "{\"slopes\":[{\"slope\":\"1/2\",\"mult\":2}]}\n".into())
    );
    assert_eq!(run(&["kottwitz", "bks", "--degrees", "2,4,6"]), (0, "{\"order\":2}\n".into()));
    let (code, out) = run(&["cyclo", "search", "--s", "2", "--r", "4", "--c", "1", "--bound", "100"]);
    assert_eq!(code, 0);
    let qs: Vec<u64> = serde_json::from_str::<Vec<Value>>(&out).unwrap().iter().map(|h| h["q"].as_u64().unwrap()).collect();
    assert!(qs.contains(&5) && qs.contains(&13));
    assert_eq!(run(&["isocrystal", "slopes", "--fixture", "bad-modulus"]).0, 3);
    assert_eq!(run(&["isocrystal", "slopes", "--fixture", "malformed"]).0, 65);
    assert_eq!(run(&["nonsense"]).0, 64);
}
