use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kunzkit::io::{parametric_json, poset_json, search_json, trades_json, Input};
use kunzkit::oracle::run_checks;
use kunzkit::presentation::{
    betti_matrix, dimension, enumerate_cardinalities, m_centric_presentation, min_pres_poset, outer_betti,
    parametric_presentation,
};
use kunzkit::{find_semigroup_on_face, Error, Trade};

#[derive(Parser)]
#[command(name = "kunzkit", version, about = "Numerical semigroups and faces of the Kunz polyhedron")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Accepted for reproducibility scripts; every algorithm is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Apéry set with respect to the multiplicity.
    Apery(Source),
    /// Kunz coordinates.
    Kunz(Source),
    /// Kunz poset (cover relations, atoms, subgroup).
    Poset(Source),
    /// Poset factorizations of one class, or of every class.
    Factorizations {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        element_class: Option<usize>,
    },
    /// Minimal presentation of the Kunz poset.
    MinpresPoset(Source),
    /// Outer Betti elements of the Kunz poset.
    OuterBetti(Source),
    /// Presentation matrix of the Kunz poset, columns indexed by atoms.
    BettiMatrix(Source),
    /// Dimension of the face.
    Dimension(Source),
    /// m-centric minimal presentation of a numerical semigroup.
    Minpres(Source),
    /// Presentation valid on the whole face, affine in the Kunz coordinates.
    Parametric(Source),
    /// Search for a numerical semigroup in the relative interior of the face.
    FindSemigroup {
        #[command(flatten)]
        source: Source,
        /// Largest coefficient magnitude along the face lattice.
        #[arg(long, default_value_t = 5)]
        bound: u32,
    },
    /// Compare every computation against the reference implementations.
    Check(Source),
    /// Presentation cardinalities over faces met by Kunz tuples in a box.
    EnumerateCardinalities {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        max_coord: u64,
    },
}

/// Exactly one input: generator shorthand, inline JSON, a JSON file, or `--m`
/// with one coordinate description.
#[derive(Args)]
struct Source {
    /// Generators, e.g. 6,7,8,9.
    #[arg(value_delimiter = ',')]
    generators: Vec<u64>,
    #[arg(long)]
    json: Option<String>,
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long)]
    m: Option<usize>,
    /// JSON array of rows.
    #[arg(long, visible_alias = "equalities")]
    hyperplanes: Option<String>,
    #[arg(long, value_delimiter = ',')]
    kunz: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',')]
    apery: Option<Vec<u64>>,
    /// JSON array of [a, b] pairs.
    #[arg(long)]
    covers: Option<String>,
    #[arg(long, value_delimiter = ',')]
    subgroup: Option<Vec<usize>>,
}

enum Failure {
    Usage(String),
    Domain(Error),
    /// Report printed, but some reference checks failed.
    Checks(String, Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<String, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

impl Source {
    fn read(&self) -> Result<Input, Failure> {
        let described = self.hyperplanes.is_some() || self.kunz.is_some() || self.apery.is_some() || self.covers.is_some();
        let count = [
            !self.generators.is_empty(),
            self.json.is_some(),
            self.file.is_some(),
            self.m.is_some() || described,
        ]
        .iter()
        .filter(|&&b| b)
        .count();
        if count != 1 {
            return Err(usage(
                "give exactly one input: generators, --json, --file, or --m with a coordinate description",
            ));
        }
        if self.subgroup.is_some() && self.covers.is_none() {
            return Err(usage("--subgroup requires --covers"));
        }
        if !self.generators.is_empty() {
            return Ok(Input::Semigroup(kunzkit::NumericalSemigroup::new(&self.generators)?));
        }
        let text = match (&self.json, &self.file) {
            (Some(j), _) => Some(j.clone()),
            (_, Some(path)) => Some(
                std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?,
            ),
            _ => None,
        };
        if let Some(text) = text {
            return Input::parse(&text).map_err(|e| match e {
                Error::InvalidInput(msg) => usage(msg),
                other => Failure::Domain(other),
            });
        }
        let m = self.m.ok_or_else(|| usage("--m is required with a coordinate description"))?;
        let mut obj = serde_json::Map::new();
        obj.insert("m".into(), json!(m));
        let parse_json = |flag: &str, text: &str| -> Result<Value, Failure> {
            serde_json::from_str(text).map_err(|e| usage(format!("{flag} is not valid JSON: {e}")))
        };
        if let Some(h) = &self.hyperplanes {
            obj.insert("hyperplanes".into(), parse_json("--hyperplanes", h)?);
        }
        if let Some(k) = &self.kunz {
            obj.insert("kunz".into(), json!(k));
        }
        if let Some(a) = &self.apery {
            obj.insert("apery".into(), json!(a));
        }
        if let Some(c) = &self.covers {
            obj.insert("covers".into(), parse_json("--covers", c)?);
        }
        if let Some(s) = &self.subgroup {
            obj.insert("subgroup".into(), json!(s));
        }
        Input::parse(&Value::Object(obj).to_string()).map_err(|e| match e {
            Error::InvalidInput(msg) => usage(msg),
            other => Failure::Domain(other),
        })
    }
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values serialize")
}

fn trades_text(trades: &[Trade]) -> String {
    let mut out = String::new();
    for t in trades {
        let _ = writeln!(out, "{}: {} ~ {}", t.at, t.left, t.right);
    }
    out
}

fn render(format: Format, value: Value, text: impl FnOnce() -> String) -> Outcome {
    match format {
        Format::Json => Ok(compact(&value)),
        Format::Text => Ok(text().trim_end().to_string()),
        Format::Dot => Err(usage("dot output is only available for the poset command")),
    }
}

fn run(cli: &Cli) -> Outcome {
    let format = cli.format;
    match &cli.command {
        Command::Apery(src) => {
            let input = src.read()?;
            let s = input.semigroup()?;
            let ap = s.apery_set().to_vec();
            render(format, json!({ "m": s.multiplicity(), "apery": ap }), || {
                ap.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
            })
        }
        Command::Kunz(src) => {
            let input = src.read()?;
            let x = input.semigroup()?.kunz_tuple();
            render(format, json!({ "m": x.m(), "kunz": x.values() }), || {
                x.values().iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
            })
        }
        Command::Poset(src) => {
            let p = src.read()?.poset()?;
            match format {
                Format::Dot => Ok(p.to_dot().trim_end().to_string()),
                _ => render(format, poset_json(&p), || {
                    p.covers()
                        .iter()
                        .map(|(a, b, l)| format!("{a} < {b} (+{l})"))
                        .collect::<Vec<_>>()
                        .join("\n")
                }),
            }
        }
        Command::Factorizations { source, element_class } => {
            let p = source.read()?.poset()?;
            match element_class {
                Some(q) => {
                    let facts = p.factorizations(*q)?;
                    render(format, json!(facts), || {
                        facts.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
                    })
                }
                None => {
                    let mut table = serde_json::Map::new();
                    let mut text = String::new();
                    for &q in p.ground() {
                        let facts = p.factorizations(q)?;
                        table.insert(q.to_string(), json!(facts));
                        let shown: Vec<String> = facts.iter().map(ToString::to_string).collect();
                        let _ = writeln!(text, "{q}: {}", shown.join(" "));
                    }
                    render(format, Value::Object(table), || text)
                }
            }
        }
        Command::MinpresPoset(src) => {
            let trades = min_pres_poset(&src.read()?.poset()?);
            render(format, trades_json(&trades), || trades_text(&trades))
        }
        Command::OuterBetti(src) => {
            let betti = outer_betti(&src.read()?.poset()?);
            render(format, json!(betti), || {
                betti
                    .iter()
                    .map(|b| {
                        let shown: Vec<String> = b.members.iter().map(ToString::to_string).collect();
                        format!("{}: {{{}}}", b.class, shown.join(", "))
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            })
        }
        Command::BettiMatrix(src) => {
            let matrix = betti_matrix(&src.read()?.poset()?).matrix;
            let rows = matrix.to_i64_rows();
            render(format, json!(rows), || {
                rows.iter()
                    .map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")))
                    .collect::<Vec<_>>()
                    .join("\n")
            })
        }
        Command::Dimension(src) => {
            let d = dimension(&src.read()?.poset()?);
            render(format, json!(d), || d.to_string())
        }
        Command::Minpres(src) => {
            let input = src.read()?;
            let trades = m_centric_presentation(input.semigroup()?);
            render(format, trades_json(&trades), || trades_text(&trades))
        }
        Command::Parametric(src) => {
            let p = src.read()?.poset()?;
            let trades = parametric_presentation(&p)?;
            render(format, parametric_json(&p, &trades), || {
                trades
                    .iter()
                    .map(|t| {
                        let terms: Vec<String> = p
                            .atoms()
                            .iter()
                            .zip(&t.ell_coeffs)
                            .filter(|(_, &c)| c != 0)
                            .map(|(a, c)| format!("{c}*x{a}"))
                            .collect();
                        format!("{}: ell = {} + {}; {} ~ {}", t.class, terms.join(" + "), t.ell_const, t.left, t.right)
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            })
        }
        Command::FindSemigroup { source, bound } => {
            let face = source.read()?.face()?;
            let result = find_semigroup_on_face(&face, *bound)?;
            let value = search_json(&result);
            render(format, value.clone(), || compact(&value))
        }
        Command::Check(src) => {
            let input = src.read()?;
            let lines = run_checks(input.semigroup()?);
            let failed: Vec<&str> = lines.iter().filter(|l| !l.passed).map(|l| l.name).collect();
            let out = render(format, json!(lines), || {
                lines
                    .iter()
                    .map(|l| format!("{} {}", if l.passed { "PASS" } else { "FAIL" }, l.name))
                    .collect::<Vec<_>>()
                    .join("\n")
            })?;
            if failed.is_empty() {
                Ok(out)
            } else {
                Err(Failure::Checks(
                    out,
                    Error::InvalidInput(format!("reference checks failed: {}", failed.join(", "))),
                ))
            }
        }
        Command::EnumerateCardinalities { m, max_coord } => {
            let spectrum = enumerate_cardinalities(*m, *max_coord)?;
            render(format, json!(spectrum), || {
                let c: Vec<String> = spectrum.cardinalities.iter().map(usize::to_string).collect();
                format!("{{{}}} over {} faces", c.join(", "), spectrum.faces)
            })
        }
    }
}

/// Runs one invocation, returning the exit status and the text for stdout
/// and stderr.
fn execute<I, T>(args: I) -> (u8, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => return (2, String::new(), e.render().to_string()),
        Err(e) => return (0, e.render().to_string(), String::new()),
    };
    match run(&cli) {
        Ok(out) => (0, out, String::new()),
        Err(Failure::Domain(e)) => (1, String::new(), format!("error: {e}")),
        Err(Failure::Checks(out, e)) => (1, out, format!("error: {e}")),
        Err(Failure::Usage(msg)) => (2, String::new(), format!("usage error: {msg}")),
    }
}

fn main() -> ExitCode {
    let (code, out, err) = execute(std::env::args_os());
    if !out.is_empty() {
        println!("{}", out.trim_end());
    }
    if !err.is_empty() {
        eprintln!("{}", err.trim_end());
    }
    ExitCode::from(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    const M8: &str = "[[0,0,2,0,0,-1,0],[0,-1,1,0,0,0,1],[-1,0,0,1,1,0,0],[0,0,0,0,0,-1,2],[-1,0,1,0,0,1,0],[-1,1,0,0,0,0,1]]";

    fn ok(args: &[&str]) -> String {
        let (code, out, err) = execute(std::iter::once("kunzkit").chain(args.iter().copied()));
        assert_eq!(code, 0, "{args:?}: {err}");
        out
    }

    fn json_out(args: &[&str]) -> Value {
        serde_json::from_str(&ok(args)).unwrap()
    }

    fn code(args: &[&str]) -> u8 {
        execute(std::iter::once("kunzkit").chain(args.iter().copied())).0
    }

    #[test]
    fn session_on_hyperplane_input() {
        assert_eq!(ok(&["dimension", "--m", "8", "--hyperplanes", M8]), "2");
        assert_eq!(
            json_out(&["betti-matrix", "--m", "8", "--hyperplanes", M8]),
            json!([[3, -1, -1, 0], [2, 0, 0, -2]])
        );
        assert_eq!(
            json_out(&["factorizations", "--m", "8", "--hyperplanes", M8, "--element-class", "1"]),
            json!([[3, 0, 0, 0], [1, 0, 0, 2], [0, 1, 1, 0]])
        );
        assert_eq!(
            ok(&["betti-matrix", "--m", "8", "--hyperplanes", M8, "--format", "text"]),
            "[3 -1 -1 0]\n[2 0 0 -2]"
        );
    }

    #[test]
    fn generator_shorthand() {
        assert_eq!(
            json_out(&["factorizations", "6,7,8,9", "--element-class", "4"]),
            json!([[1, 0, 1], [0, 2, 0]])
        );
        assert_eq!(json_out(&["apery", "6,19,26,33"])["apery"], json!([0, 19, 26, 33, 52, 59]));
        assert_eq!(json_out(&["kunz", "9,20,30,35"])["kunz"], json!([6, 2, 3, 4, 5, 6, 7, 3]));
        assert_eq!(json_out(&["minpres", "9,20,30,35"]).as_array().unwrap().len(), 6);
        assert_eq!(json_out(&["minpres-poset", "6,7,8,9"]), json!([{"at": 4, "left": [1, 0, 1], "right": [0, 2, 0]}]));
        assert_eq!(json_out(&["outer-betti", "6,7,8,9"]).as_array().unwrap().len(), 3);
    }

    #[test]
    fn inputs_agree() {
        let from_json = ok(&["poset", "--json", r#"{"m": 6, "kunz": [1, 1, 1, 2, 2]}"#]);
        assert_eq!(from_json, ok(&["poset", "6,7,8,9"]));
        assert_eq!(from_json, ok(&["poset", "--m", "6", "--apery", "7,8,9,16,17"]));
        assert_eq!(from_json, ok(&["poset", "--m", "6", "--kunz", "1,1,1,2,2"]));
        let p = json_out(&["poset", "--m", "4", "--covers", "[[0,1],[0,3],[1,2],[3,2]]"]);
        assert_eq!(p["atoms"], json!([1, 3]));
        assert_eq!(p["covers"], json!([[0, 1, 1], [0, 3, 3], [1, 2, 1], [3, 2, 3]]));
    }

    #[test]
    fn dot_output() {
        let dot = ok(&["poset", "6,7,8,9", "--format", "dot"]);
        assert!(dot.starts_with("digraph kunz_poset {"));
        assert!(dot.contains("2 -> 4 [label=\"+2\"];"));
        assert_eq!(code(&["dimension", "6,7,8,9", "--format", "dot"]), 2);
    }

    #[test]
    fn find_semigroup_verdicts() {
        let none = json_out(&["find-semigroup", "--m", "8", "--hyperplanes", M8]);
        assert_eq!(none["verdict"], "provably_none");
        assert_eq!(none["obstruction"]["witness"], json!([0, 0, 1, 0, 0, 0, -1]));
        let found = json_out(&["find-semigroup", "6,7,8,9", "--bound", "3"]);
        assert_eq!(found["verdict"], "found");
        assert_eq!(found["kunz"], json!([1, 1, 1, 2, 2]));
    }

    #[test]
    fn parametric_output() {
        let trades = json_out(&["parametric", "9,20,30,35"]);
        let b = trades
            .as_array()
            .unwrap()
            .iter()
            .find(|t| t["right"] == json!([0, 1, 1]))
            .unwrap();
        assert_eq!(b["ell_coeffs"], json!({"2": -1, "3": 1, "8": 1}));
        assert_eq!(b["ell_const"], "1");
    }

    #[test]
    fn check_and_spectrum() {
        let lines = ok(&["check", "9,20,30,35", "--format", "text"]);
        assert!(lines.lines().count() >= 10);
        assert!(lines.lines().all(|l| l.starts_with("PASS ")));
        let out = json_out(&["enumerate-cardinalities", "--m", "4", "--max-coord", "8"]);
        assert_eq!(out["cardinalities"], json!([1, 2, 3, 6]));
    }

    #[test]
    fn exit_codes() {
        let (c, _, err) = execute(["kunzkit", "apery", "4,6"]);
        assert_eq!(c, 1);
        assert!(err.contains("gcd"));
        assert_eq!(code(&["dimension", "--m", "5", "--hyperplanes", "[[2,-1,0,0],[0,2,0,-1]]"]), 1);
        assert_eq!(code(&["minpres", "--m", "8", "--hyperplanes", M8]), 1);
        assert_eq!(code(&["kunz", "--m", "4", "--kunz", "0,0,0"]), 1);
        assert_eq!(code(&["apery"]), 2);
        assert_eq!(code(&["apery", "6,7", "--json", "{}"]), 2);
        assert_eq!(code(&["no-such-command"]), 2);
        assert_eq!(code(&["poset", "--json", "{not json"]), 2);
        assert_eq!(code(&["poset", "--m", "4", "--hyperplanes", "[[1"]), 2);
        assert_eq!(code(&["--help"]), 0);
    }

    #[test]
    fn seed_does_not_change_output() {
        for args in [&["minpres", "9,20,30,35"][..], &["find-semigroup", "6,7,8,9"]] {
            let seeded: Vec<&str> = args.iter().copied().chain(["--seed", "17"]).collect();
            assert_eq!(ok(args), ok(&seeded));
        }
    }
}
