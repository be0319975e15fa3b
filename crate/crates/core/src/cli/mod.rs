//! JSON command-line front end.
//!
//! Each subcommand reads one JSON document (from `--input`, from
//! `--fixture` resolved against the fixture directory, or from stdin),
//! writes one compact JSON document, and exits with
//! `0` success, `2` validation failure, `3` out of scope, `4` internal error,
//! `64` usage error, `65` malformed JSON. Commands with scalar arguments also
//! accept them as flags, in which case no document is read.

mod commands;
pub mod wire;

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

pub use commands::DEFAULT_MAX_N;

use crate::Error;

/// Environment variable overriding the fixture directory.
pub const FIXTURE_ENV: &str = "KOTTWITZ_FIXTURES";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_OUT_OF_SCOPE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_BAD_JSON: i32 = 65;

#[derive(Parser, Debug)]
#[command(name = "kottwitz", version, about = "Exact invariants of isocrystals, φ-spaces, place modules and Weil germs")]
struct Cli {
    #[command(subcommand)]
    group: Group,
}

#[derive(Args, Debug, Clone, Default)]
struct Io {
    /// Read the input document from this file ("-" for stdin).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Read the input document from the fixture directory.
    #[arg(long, global = true, conflicts_with = "input")]
    fixture: Option<String>,
    /// Write the output document here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Isocrystals as semilinear operators.
    Isocrystal {
        #[command(subcommand)]
        cmd: IsoCmd,
    },
    /// Graded representations of the local gerbe.
    Rep {
        #[command(subcommand)]
        cmd: RepCmd,
    },
    /// Graded complex spaces with a conjugate-linear structure.
    Arch {
        #[command(subcommand)]
        cmd: ArchCmd,
    },
    /// φ-spaces over F_q(t) and φ-pairs.
    Phispace {
        #[command(subcommand)]
        cmd: PhiCmd,
    },
    /// Galois place modules and Q/Z classes.
    Kottwitz {
        #[command(subcommand)]
        cmd: KtCmd,
    },
    /// Weil-number germs of CM fields.
    Weil {
        #[command(subcommand)]
        cmd: WeilCmd,
    },
    /// Multiplicative orders and auxiliary prime search.
    Cyclo {
        #[command(subcommand)]
        cmd: CycloCmd,
    },
}

#[derive(Subcommand, Debug)]
enum IsoCmd {
    /// Newton slopes with multiplicities.
    Slopes(Io),
    /// Split the isoclinic space of slope m/n into simple blocks.
    Decompose(Io),
    /// Dimension of the Hom space between two operators.
    Hom(Io),
    /// Tensor product and its slopes.
    Tensor(Io),
}

#[derive(Subcommand, Debug)]
enum RepCmd {
    /// Check a graded representation against its Frobenius action.
    Validate(Io),
    /// Slopes of the isocrystal attached to a valid representation.
    ToIsocrystal(Io),
}

#[derive(Subcommand, Debug)]
enum ArchCmd {
    /// Check the parity condition on every graded piece.
    Validate(Io),
    /// Split into real lines and planes.
    Decompose(Io),
    /// Class of a nonzero rational in the real Brauer group.
    H2 {
        #[command(flatten)]
        io: Io,
        /// Nonzero rational; its class in the real Brauer group is its sign.
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum PhiCmd {
    /// φ-pair of a φ-space given by a matrix.
    Pair {
        #[command(flatten)]
        io: Io,
        /// Largest N tried when stabilizing F[Π^N].
        #[arg(long)]
        max_n: Option<u64>,
    },
    /// Validate a φ-pair and report its invariants.
    Classify(Io),
    /// Local isocrystal data of a φ-pair at a place.
    Localize(Io),
    /// Tensor product of two single-component φ-pairs.
    Tensor(Io),
}

#[derive(Subcommand, Debug)]
enum KtCmd {
    /// Check the place-set conditions for a finite Galois group.
    Conditions(Io),
    /// Push a character along a tower and compare local classes.
    Transition(Io),
    /// Order of the finite local-global obstruction group.
    Bks {
        #[command(flatten)]
        io: Io,
        /// Local degrees over the places of S.
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<u64>>,
    },
    /// Local Q/Z invariant of a character at one place.
    Localclass {
        #[command(flatten)]
        io: Io,
        /// Coefficient n_w of the character at the place.
        #[arg(long, allow_hyphen_values = true)]
        coeff: Option<i64>,
        /// Local degree at the place.
        #[arg(long)]
        degree: Option<u64>,
    },
    /// Local invariants of a character at every place.
    Adelic(Io),
    /// Compatibility of local invariants under inflation.
    Inflation {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        nk: Option<u64>,
        #[arg(long)]
        nl: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
enum WeilCmd {
    /// Validate a Weil germ.
    Check(Io),
    /// Image of a germ under the divisor map.
    Omega(Io),
    /// Local Q/Z component of a germ at a place.
    Localize(Io),
    /// Exactness certificate for a CM place table.
    Sequence(Io),
}

#[derive(Subcommand, Debug)]
enum CycloCmd {
    /// Multiplicative order of a modulo q.
    Order {
        #[command(flatten)]
        io: Io,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<i64>,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Auxiliary primes below a bound.
    Search {
        #[command(flatten)]
        io: Io,
        /// Primes of S.
        #[arg(long, value_delimiter = ',')]
        s: Option<Vec<u64>>,
        #[arg(long)]
        r: Option<u64>,
        /// Omit to scan for the least c dividing r that yields a prime.
        #[arg(long)]
        c: Option<u64>,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Check required local degrees in a cyclotomic field.
    SplitCheck {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        q: Option<u64>,
        /// Required local degrees as p:d pairs.
        #[arg(long, value_delimiter = ',')]
        require: Option<Vec<String>>,
    },
}

/// Subcommand path, IO options, and a document built from flags if any.
struct Job {
    group: &'static str,
    cmd: &'static str,
    io: Io,
    flags: Option<Value>,
    /// Keys merged into the document read from input.
    extra: Option<Value>,
}

fn job(cli: Cli) -> Result<Job, String> {
    let plain = |group, cmd, io| Ok(Job { group, cmd, io, flags: None, extra: None });
    match cli.group {
        Group::Isocrystal { cmd } => match cmd {
            IsoCmd::Slopes(io) => plain("isocrystal", "slopes", io),
            IsoCmd::Decompose(io) => plain("isocrystal", "decompose", io),
            IsoCmd::Hom(io) => plain("isocrystal", "hom", io),
            IsoCmd::Tensor(io) => plain("isocrystal", "tensor", io),
        },
        Group::Rep { cmd } => match cmd {
            RepCmd::Validate(io) => plain("rep", "validate", io),
            RepCmd::ToIsocrystal(io) => plain("rep", "to-isocrystal", io),
        },
        Group::Arch { cmd } => match cmd {
            ArchCmd::Validate(io) => plain("arch", "validate", io),
            ArchCmd::Decompose(io) => plain("arch", "decompose", io),
            ArchCmd::H2 { io, x } => Ok(Job { group: "arch", cmd: "h2", io, flags: x.map(|x| json!({ "x": x })), extra: None }),
        },
        Group::Phispace { cmd } => match cmd {
            PhiCmd::Pair { io, max_n } => {
                Ok(Job { group: "phispace", cmd: "pair", io, flags: None, extra: max_n.map(|n| json!({ "maxN": n })) })
            }
            PhiCmd::Classify(io) => plain("phispace", "classify", io),
            PhiCmd::Localize(io) => plain("phispace", "localize", io),
            PhiCmd::Tensor(io) => plain("phispace", "tensor", io),
        },
        Group::Kottwitz { cmd } => match cmd {
            KtCmd::Conditions(io) => plain("kottwitz", "conditions", io),
            KtCmd::Transition(io) => plain("kottwitz", "transition", io),
            KtCmd::Bks { io, degrees } => {
                Ok(Job { group: "kottwitz", cmd: "bks", io, flags: degrees.map(|d| json!({ "degrees": d })), extra: None })
            }
            KtCmd::Localclass { io, coeff, degree } => {
                let flags = match (coeff, degree) {
                    (Some(n), Some(d)) => Some(json!({ "character": [n, -n], "place": 0, "degree": d })),
                    (None, None) => None,
                    _ => return Err("--coeff and --degree go together".into()),
                };
                Ok(Job { group: "kottwitz", cmd: "localclass", io, flags, extra: None })
            }
            KtCmd::Adelic(io) => plain("kottwitz", "adelic", io),
            KtCmd::Inflation { io, nk, nl } => {
                let flags = match (nk, nl) {
                    (Some(a), Some(b)) => Some(json!({ "nK": a, "nL": b })),
                    (None, None) => None,
                    _ => return Err("--nk and --nl go together".into()),
                };
                Ok(Job { group: "kottwitz", cmd: "inflation", io, flags, extra: None })
            }
        },
        Group::Weil { cmd } => match cmd {
            WeilCmd::Check(io) => plain("weil", "check", io),
            WeilCmd::Omega(io) => plain("weil", "omega", io),
            WeilCmd::Localize(io) => plain("weil", "localize", io),
            WeilCmd::Sequence(io) => plain("weil", "sequence", io),
        },
        Group::Cyclo { cmd } => match cmd {
            CycloCmd::Order { io, a, q } => {
                let flags = match (a, q) {
                    (Some(a), Some(q)) => Some(json!({ "a": a, "q": q })),
                    (None, None) => None,
                    _ => return Err("--a and --q go together".into()),
                };
                Ok(Job { group: "cyclo", cmd: "order", io, flags, extra: None })
            }
            CycloCmd::Search { io, s, r, c, bound } => {
                let flags = match (s, r, bound) {
                    (Some(s), Some(r), Some(bound)) => {
                        let mut d = json!({ "s": s, "r": r, "bound": bound });
                        if let Some(c) = c {
                            d["c"] = json!(c);
                        }
                        Some(d)
                    }
                    (None, None, None) if c.is_none() => None,
                    _ => return Err("--s, --r and --bound go together".into()),
                };
                Ok(Job { group: "cyclo", cmd: "search", io, flags, extra: None })
            }
            CycloCmd::SplitCheck { io, q, require } => {
                let flags = match (q, require) {
                    (Some(q), Some(req)) => {
                        let mut m = serde_json::Map::new();
                        for item in req {
                            let (p, d) = item.split_once(':').ok_or_else(|| format!("expected p:d, got {item:?}"))?;
                            let d: u64 = d.parse().map_err(|_| format!("bad degree in {item:?}"))?;
                            m.insert(p.to_string(), json!(d));
                        }
                        Some(json!({ "q": q, "required": m }))
                    }
                    (None, None) => None,
                    _ => return Err("--q and --require go together".into()),
                };
                Ok(Job { group: "cyclo", cmd: "split-check", io, flags, extra: None })
            }
        },
    }
}

/// Directory searched by `--fixture`.
pub fn fixture_dir() -> PathBuf {
    if let Some(d) = std::env::var_os(FIXTURE_ENV) {
        return PathBuf::from(d);
    }
    let local = PathBuf::from("fixtures");
    if local.is_dir() {
        return local;
    }
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture_path(name: &str) -> PathBuf {
    let dir = fixture_dir();
    let direct = dir.join(name);
    if direct.is_file() {
        direct
    } else {
        dir.join(format!("{name}.json"))
    }
}

enum Failure {
    Usage(String),
    BadJson(String),
    Lib(Error),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::BadJson(_) => EXIT_BAD_JSON,
            Failure::Lib(Error::Invalid(_)) => EXIT_INVALID,
            Failure::Lib(Error::OutOfScope(_)) => EXIT_OUT_OF_SCOPE,
            Failure::Lib(Error::Internal(_)) => EXIT_INTERNAL,
        }
    }

    fn report(&self) -> Value {
        let (kind, msg) = match self {
            Failure::Usage(m) => ("usage", m.clone()),
            Failure::BadJson(m) => ("malformed-json", m.clone()),
            Failure::Lib(Error::Invalid(m)) => ("invalid", m.clone()),
            Failure::Lib(Error::OutOfScope(m)) => ("out-of-scope", m.clone()),
            Failure::Lib(Error::Internal(m)) => ("internal", m.clone()),
        };
        json!({ "error": { "kind": kind, "message": msg } })
    }
}

fn read_document(io: &Io, stdin: &mut dyn Read) -> Result<Value, Failure> {
    let text = match (&io.input, &io.fixture) {
        (Some(p), _) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))?
        }
        (None, Some(name)) => {
            let p = fixture_path(name);
            std::fs::read_to_string(&p).map_err(|e| Failure::Usage(format!("cannot read fixture {}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| Failure::BadJson(e.to_string()))
}

/// Runs one subcommand and returns its output document, or `None` for an
/// unknown subcommand path.
pub fn execute(group: &str, cmd: &str, doc: &Value) -> Option<crate::Result<(Value, bool)>> {
    commands::handler(group, cmd).map(|h| h(doc).map(|o| (o.value, o.rejected)))
}

fn dispatch(job: &Job, stdin: &mut dyn Read) -> Result<(Value, bool), Failure> {
    let doc = match &job.flags {
        Some(d) => d.clone(),
        None => read_document(&job.io, stdin)?,
    };
    let doc = match (&job.extra, doc) {
        (Some(Value::Object(extra)), Value::Object(mut d)) => {
            d.extend(extra.clone());
            Value::Object(d)
        }
        (_, d) => d,
    };
    execute(job.group, job.cmd, &doc)
        .ok_or_else(|| Failure::Usage(format!("unknown subcommand {} {}", job.group, job.cmd)))?
        .map_err(Failure::Lib)
}

/// Entry point for the binary: process arguments and standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_io(argv, &mut std::io::stdin(), &mut std::io::stdout(), &mut std::io::stderr())
}

pub fn run_with_io<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let job = match job(cli) {
        Ok(j) => j,
        Err(msg) => {
            let f = Failure::Usage(msg);
            let _ = writeln!(stderr, "{}", f.report());
            return f.code();
        }
    };
    match dispatch(&job, stdin) {
        Ok((value, rejected)) => {
            let text = format!("{value}\n");
            let written = match &job.io.output {
                Some(p) => std::fs::write(p, &text).map_err(|e| e.to_string()),
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "{}", Failure::Usage(format!("cannot write output: {e}")).report());
                return EXIT_USAGE;
            }
            if rejected {
                EXIT_INVALID
            } else {
                EXIT_OK
            }
        }
        Err(f) => {
            let _ = writeln!(stderr, "{}", f.report());
            f.code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("kottwitz").chain(args.iter().copied());
        let code = run_with_io(argv, &mut input.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn flag_forms() {
        assert_eq!(call(&["kottwitz", "bks", "--degrees", "2,4,6"], ""), (0, "{\"order\":2}\n".into()));
        let (code, out) = call(&["cyclo", "search", "--s", "2", "--r", "4", "--c", "1", "--bound", "100"], "");
        assert_eq!(code, 0);
        let hits: Vec<Value> = serde_json::from_str(&out).unwrap();
        let qs: Vec<u64> = hits.iter().map(|h| h["q"].as_u64().unwrap()).collect();
        assert!(qs.contains(&5) && qs.contains(&13));
        assert_eq!(call(&["arch", "h2", "--x", "-3/2"], "").1, "{\"sign\":-1,\"invariant\":\"1/2\"}\n");
    }

    #[test]
    fn slopes_from_stdin() {
        let doc = r#"{"field":{"p":2},"standard":{"s":1,"r":2}}"#;
        assert_eq!(call(&["isocrystal", "slopes"], doc), (0, "{\"slopes\":[{\"slope\":\"1/2\",\"mult\":2}]}\n".into()));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["isocrystal", "frobnicate"], "").0, EXIT_USAGE);
        assert_eq!(call(&["isocrystal", "slopes"], "{not json").0, EXIT_BAD_JSON);
        assert_eq!(call(&["isocrystal", "slopes"], r#"{"field":{"p":4}}"#).0, EXIT_INVALID);
        assert_eq!(call(&["cyclo", "order", "--a", "5", "--q", "5"], "").0, EXIT_INVALID);
        let bad = r#"{"components":[{"degree":1,"alpha":[["1"]]}]}"#;
        assert_eq!(call(&["arch", "validate"], bad), (EXIT_INVALID, "{\"valid\":false,\"wrongSquareDegree\":1}\n".into()));
        assert_eq!(call(&["--help"], "").0, EXIT_OK);
    }
}
