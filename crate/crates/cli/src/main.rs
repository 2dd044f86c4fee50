use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use homlie_core::catalog;
use homlie_core::cohomology::{self, central_extension, Cochain, SignConvention};
use homlie_core::derivations::{alphak_derivations, inner_derivations};
use homlie_core::homlie::{CheckReport, SuperBasis};
use homlie_core::io;
use homlie_core::qwitt::{self, BandSolution, Window, WittIndex};
use homlie_core::repr::Representation;
use homlie_core::scalars::{FieldSpec, Scalar};
use homlie_core::{Error, Parity};

#[derive(Parser)]
#[command(
    name = "homlie",
    version,
    about = "Exact Hom-Lie superalgebra computations"
)]
struct Cli {
    /// Coboundary sign convention.
    #[arg(long, global = true, env = SignConvention::ENV_VAR, default_value = "standard")]
    sign_convention: SignConvention,
    /// Report rendering.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Super skew-symmetry, Hom-Jacobi and multiplicativity of an algebra file.
    Check {
        file: PathBuf,
        /// Also fail when the twist is not multiplicative.
        #[arg(long)]
        require_multiplicative: bool,
    },
    /// Checks a representation file.
    RepCheck { file: PathBuf },
    /// Homogeneous alpha^k-derivations.
    Derivations {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, value_parser = parse_parity)]
        parity: Parity,
    },
    /// Cocycles, coboundaries and cohomology in one degree.
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, value_parser = parse_parity, default_value = "0")]
        parity: Parity,
        /// `trivial` or `adjoint:S`.
        #[arg(long, default_value = "trivial")]
        coefficients: String,
    },
    /// Central extension by a scalar 2-cochain.
    Extension {
        file: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Computations on a window of the q-deformed Witt superalgebra.
    Qwitt {
        #[arg(long = "N")]
        n: i64,
        /// A rational value, or `q` to keep it symbolic.
        #[arg(long, default_value = "2")]
        q: String,
        #[arg(long, value_enum)]
        task: Task,
        /// Twist exponent for `derivations`.
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        smin: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        smax: Option<i64>,
    },
    /// Built-in algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Task {
    Derivations,
    Qderivations,
    H2,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Prints an entry as an algebra file.
    Export { name: String },
}

fn parse_parity(s: &str) -> Result<Parity, String> {
    match s {
        "0" | "even" => Ok(Parity::Even),
        "1" | "odd" => Ok(Parity::Odd),
        _ => Err(format!("parity must be 0, 1, even or odd, got {s:?}")),
    }
}

/// A finished command: the report and whether its mathematical checks passed.
struct Outcome {
    body: Map<String, Value>,
    passed: bool,
    raw: bool,
}

impl Outcome {
    fn new(body: Value, passed: bool) -> Self {
        let Value::Object(body) = body else {
            unreachable!("reports are objects")
        };
        Outcome {
            body,
            passed,
            raw: false,
        }
    }
}

fn status(passed: bool) -> &'static str {
    if passed {
        "passed"
    } else {
        "failed"
    }
}

fn violations(report: &CheckReport) -> Value {
    Value::Array(
        report
            .violations
            .iter()
            .map(|v| {
                json!({
                    "identity": v.identity,
                    "witness": v.witness,
                    "residual": v.residual.iter().map(|(l, c)| (l.clone(), Value::String(c.to_string()))).collect::<Map<_, _>>(),
                })
            })
            .collect(),
    )
}

fn identity_status(report: &CheckReport, identity: &str) -> &'static str {
    status(!report.violations.iter().any(|v| v.identity == identity))
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let conv = cli.sign_convention;
    match &cli.command {
        Command::Check {
            file,
            require_multiplicative,
        } => {
            let a = io::algebra_from_file(file)?;
            let hl = a.check_hom_lie();
            let mult = a.check_multiplicative();
            let passed = hl.passed() && (!require_multiplicative || mult.passed());
            Ok(Outcome::new(
                json!({
                    "command": "check",
                    "dim": a.dim(),
                    "super_skew_symmetry": identity_status(&hl, "super-skew-symmetry"),
                    "hom_jacobi": identity_status(&hl, "hom-jacobi"),
                    "multiplicativity": status(mult.passed()),
                    "evaluated": hl.evaluated + mult.evaluated,
                    "violations": violations(&hl.clone().merge(mult)),
                }),
                passed,
            ))
        }
        Command::RepCheck { file } => {
            let rep = io::representation_from_file(file)?;
            let r = rep.check();
            Ok(Outcome::new(
                json!({
                    "command": "rep-check",
                    "dim": rep.dim(),
                    "twist_compatibility": identity_status(&r, "twist-compatibility"),
                    "hom_module": identity_status(&r, "hom-module"),
                    "evaluated": r.evaluated,
                    "violations": violations(&r),
                }),
                r.passed(),
            ))
        }
        Command::Derivations { file, k, parity } => {
            let a = io::algebra_from_file(file)?;
            let d = alphak_derivations(&a, *k, *parity)?;
            let inner = if *k >= 0 {
                Some(inner_derivations(&a, *k, *parity)?.dim())
            } else {
                None
            };
            let basis: Vec<Value> = d.basis_maps().iter().map(matrix_json).collect();
            Ok(Outcome::new(
                json!({
                    "command": "derivations",
                    "k": k,
                    "parity": parity.bit(),
                    "dim": d.dim(),
                    "dim_inner": inner,
                    "basis": basis,
                }),
                true,
            ))
        }
        Command::Cohomology {
            file,
            k,
            r,
            parity,
            coefficients,
        } => {
            let a = io::algebra_from_file(file)?;
            let rep = coefficient_module(&a, coefficients)?;
            let c = cohomology::cohomology(&a, &rep, *k, *r, *parity, conv);
            let c = match c {
                Ok(c) => c,
                Err(Error::Precondition(msg)) => {
                    return Ok(Outcome::new(
                        json!({"command": "cohomology", "k": k, "r": r, "parity": parity.bit(), "convention": conv.name(), "error": msg}),
                        false,
                    ))
                }
                Err(e) => return Err(e),
            };
            let reps: Vec<Value> = c
                .representatives
                .iter()
                .map(|f| cochain_json(f, a.basis(), rep.space()))
                .collect();
            Ok(Outcome::new(
                json!({
                    "command": "cohomology",
                    "k": k,
                    "r": r,
                    "parity": parity.bit(),
                    "coefficients": coefficients,
                    "convention": conv.name(),
                    "dim_Z": c.dim_z(),
                    "dim_B": c.dim_b(),
                    "dim_H": c.dim_h(),
                    "representatives": reps,
                }),
                true,
            ))
        }
        Command::Extension { file, cocycle } => {
            let a = io::algebra_from_file(file)?;
            let module = Representation::trivial_scalar(&a);
            let theta = io::cochain_from_value(
                &io::parse_json(&io::read(cocycle)?)?,
                a.field(),
                a.basis(),
                module.space(),
            )?;
            if theta.degree() != 2 {
                return Err(Error::Input("the cocycle must have degree 2".into()));
            }
            let d = cohomology::Coboundary::new(&a, &module, 1, conv)?;
            let delta = d.apply(&theta);
            let is_cocycle = delta.is_zero();
            let ext = central_extension(&a, &theta)?;
            let hl = ext.check_hom_lie();
            Ok(Outcome::new(
                json!({
                    "command": "extension",
                    "convention": conv.name(),
                    "is_cocycle": is_cocycle,
                    "coboundary": cochain_json(&delta, a.basis(), module.space()),
                    "extension_hom_lie": status(hl.passed()),
                    "violations": violations(&hl),
                    "extension": io::algebra_to_value(&ext),
                }),
                is_cocycle && hl.passed(),
            ))
        }
        Command::Qwitt {
            n,
            q,
            task,
            k,
            smin,
            smax,
        } => {
            let field = if q == "q" {
                FieldSpec::symbolic()
            } else {
                FieldSpec::specialized(q.parse()?)
            };
            let w = qwitt::build_window(*n, field)?;
            let header = json!({"N": n, "q": q, "command": "qwitt"});
            let mut body = match header {
                Value::Object(m) => m,
                _ => unreachable!(),
            };
            let passed = match task {
                Task::Derivations | Task::Qderivations => {
                    let q_task = matches!(task, Task::Qderivations);
                    let default = if q_task { 2 } else { 3 };
                    let (lo, hi) = (smin.unwrap_or(-default), smax.unwrap_or(default));
                    if lo > hi {
                        return Err(Error::Input("smin exceeds smax".into()));
                    }
                    let mut bands = Vec::new();
                    for parity in Parity::BOTH {
                        for s in lo..=hi {
                            let b = if q_task {
                                qwitt::q_derivation_solve(&w, parity, s)?
                            } else {
                                qwitt::graded_derivation_solve(&w, *k, parity, s)?
                            };
                            let mut entry = band_json(&b);
                            if q_task {
                                let inner = b.is_line_through(|x| {
                                    qwitt::inner_coefficient(&w, parity, s, x)
                                });
                                entry.insert("matches_inner".into(), Value::Bool(inner));
                            }
                            bands.push(Value::Object(entry));
                        }
                    }
                    body.insert(
                        "task".into(),
                        Value::String(
                            if q_task {
                                "qderivations"
                            } else {
                                "derivations"
                            }
                            .into(),
                        ),
                    );
                    if !q_task {
                        body.insert("k".into(), json!(k));
                    }
                    body.insert("bands".into(), Value::Array(bands));
                    true
                }
                Task::H2 => {
                    let h = qwitt::scalar_two_cocycles(&w, conv)?;
                    let phi = qwitt::verify_phi_pair(&w, None)?;
                    let matches_b = representatives_match_b(&w, &h)?;
                    body.insert("task".into(), json!("h2"));
                    body.insert("convention".into(), json!(conv.name()));
                    body.insert("interior_margin".into(), json!(h.margin));
                    body.insert("dim_H2".into(), json!(h.dim));
                    body.insert("dim_H2_window".into(), json!(h.window_dim));
                    body.insert("dim_Z".into(), json!(h.dim_z));
                    body.insert("dim_B".into(), json!(h.dim_b));
                    body.insert(
                        "coboundaries_are_cocycles".into(),
                        json!(h.coboundaries_are_cocycles),
                    );
                    body.insert("gg_vanishes".into(), json!(h.gg_vanishes));
                    body.insert("matches_b".into(), json!(matches_b));
                    body.insert("phi_check".into(), json!(status(phi.passed())));
                    let reps: Vec<Value> = h
                        .representatives
                        .iter()
                        .map(|r| {
                            Value::Object(
                                r.iter()
                                    .map(|((x, y), c)| {
                                        (format!("{x},{y}"), Value::String(c.to_string()))
                                    })
                                    .collect(),
                            )
                        })
                        .collect();
                    body.insert("representatives".into(), Value::Array(reps));
                    h.coboundaries_are_cocycles && phi.passed()
                }
            };
            Ok(Outcome {
                body,
                passed,
                raw: false,
            })
        }
        Command::Catalog {
            action: CatalogAction::Export { name },
        } => {
            let e = catalog::entry(name)?;
            let Value::Object(body) = io::algebra_to_value(&e.algebra) else {
                unreachable!()
            };
            Ok(Outcome {
                body,
                passed: true,
                raw: true,
            })
        }
    }
}

fn coefficient_module(
    a: &homlie_core::homlie::SuperAlgebra,
    spec: &str,
) -> Result<Representation, Error> {
    if spec == "trivial" {
        return Ok(Representation::trivial_scalar(a));
    }
    if let Some(s) = spec.strip_prefix("adjoint:") {
        let s: i64 = s
            .parse()
            .map_err(|_| Error::Input(format!("bad adjoint shift {s:?}")))?;
        return Representation::adjoint(a, s);
    }
    Err(Error::Input(format!(
        "coefficients must be trivial or adjoint:S, got {spec:?}"
    )))
}

fn matrix_json(m: &homlie_core::linalg::Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols())
                        .map(|j| Value::String(m.get(i, j).to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn cochain_json(f: &Cochain, domain: &SuperBasis, codomain: &SuperBasis) -> Value {
    io::cochain_to_value(f, domain, codomain)
}

fn band_json(b: &BandSolution) -> Map<String, Value> {
    let tables: Vec<Value> = b
        .tables()
        .into_iter()
        .map(|t| {
            Value::Object(
                t.into_iter()
                    .map(|(src, c)| {
                        let src: WittIndex = src.parse().expect("index labels round-trip");
                        (
                            format!("{src}->{}", b.target(src)),
                            Value::String(c.to_string()),
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    let Value::Object(m) = json!({
        "parity": b.parity.bit(),
        "s": b.s,
        "interior_margin": b.margin,
        "dim": b.dim(),
        "dim_window": b.window_dim,
        "basis": tables,
    }) else {
        unreachable!()
    };
    m
}

/// The first representative agrees with `b_n` on `(L_n, L_-n)` and the second on
/// `(L_n, G_{-1-n})` at every interior `n`.
fn representatives_match_b(w: &Window, h: &qwitt::TwoCocycles) -> Result<bool, Error> {
    if h.representatives.len() != 2 {
        return Ok(false);
    }
    let lim = w.n_max() - h.margin;
    for n in -lim..=lim {
        let b = qwitt::b_coefficient(w.field(), n)?;
        let zero = Scalar::zero(w.mode());
        let v1 = h
            .value(0, WittIndex::l(n), WittIndex::l(-n))
            .unwrap_or_else(|| zero.clone());
        if v1 != b {
            return Ok(false);
        }
        if (-1 - n).abs() <= lim {
            let v2 = h
                .value(1, WittIndex::l(n), WittIndex::g(-1 - n))
                .unwrap_or(zero);
            if v2 != b {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if x.is_object() || x.is_array() {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_text(x, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar_text(x)));
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if x.is_object() || x.is_array() {
                    out.push_str(&format!("{pad}-\n"));
                    render_text(x, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}- {}\n", scalar_text(x)));
                }
            }
        }
        x => out.push_str(&format!("{pad}{}\n", scalar_text(x))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let value = if outcome.raw {
                Value::Object(outcome.body)
            } else {
                io::report(outcome.body)
            };
            match cli.format {
                Format::Json => print!("{}", io::to_canonical_string(&value)),
                Format::Text => {
                    let mut s = String::new();
                    render_text(&value, 0, &mut s);
                    print!("{s}");
                }
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let value = io::report(
                [("error".to_string(), Value::String(e.to_string()))]
                    .into_iter()
                    .collect(),
            );
            eprint!("{}", io::to_canonical_string(&value));
            ExitCode::from(2)
        }
    }
}
