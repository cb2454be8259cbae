use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nuniv_core::json::{
    class_to_json, element_from_lit, ext_to_json, invariants_to_json, lattice_from_spec, parse_field,
    parse_lattice, testing_entry_to_json, ElementLit,
};
use nuniv_core::represent::represents;
use nuniv_core::sample::crosscheck;
use nuniv_core::universal::{by_testing_set, is_n_universal, testing_set, Method};
use nuniv_core::{BongLattice, Error, FieldContext, FieldSpec, Result};

#[derive(Parser)]
#[command(name = "nuniv", version, about = "n-universality of lattices over dyadic local fields")]
struct Cli {
    /// Field as a JSON file, inline JSON, `q2`, or `e,f` (default Eisenstein polynomial x^e - 2).
    #[arg(long, global = true, default_value = "q2")]
    field: String,

    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,

    /// Relative precision in pi-adic digits.
    #[arg(long, global = true)]
    prec: Option<i64>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// R_i, alpha_i and the underlying space of a lattice.
    Invariants { lattice: String },
    /// Decide n-universality.
    Universal {
        lattice: String,
        #[arg(long)]
        n: usize,
        /// A method name, or `all` for every method applicable to n.
        #[arg(long, default_value = "closed-form")]
        method: String,
    },
    /// Whether lattice M represents lattice N.
    Represents { n_lattice: String, m_lattice: String },
    /// The minimal testing set for n-universality.
    TestingSet {
        #[arg(long)]
        n: usize,
    },
    /// Compare all methods on a seeded random corpus.
    Crosscheck {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The square-class table.
    Classes,
    /// Quadratic defect order of an element.
    #[command(allow_negative_numbers = true)]
    Defect { element: String },
    /// Hilbert symbol (a, b).
    #[command(allow_negative_numbers = true)]
    Hilbert { a: String, b: String },
}

/// Reads a file if `arg` names one, otherwise returns `arg` itself.
fn read_arg(arg: &str) -> Result<String> {
    if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn field_spec(arg: &str, prec: Option<i64>) -> Result<FieldSpec> {
    let text = read_arg(arg)?;
    let trimmed = text.trim();
    let mut spec = if trimmed.eq_ignore_ascii_case("q2") {
        FieldSpec::new(1, 1)
    } else if trimmed.starts_with('{') {
        parse_field(trimmed)?
    } else {
        let parts: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        match parts.as_slice() {
            [e, f] => FieldSpec::new(
                e.parse().map_err(|_| Error::Parse(format!("bad e in {trimmed:?}")))?,
                f.parse().map_err(|_| Error::Parse(format!("bad f in {trimmed:?}")))?,
            ),
            _ => return Err(Error::Parse(format!("unrecognized field {trimmed:?}"))),
        }
    };
    if prec.is_some() {
        spec.prec = prec;
    }
    Ok(spec)
}

fn lattice(ctx: &Arc<FieldContext>, arg: &str) -> Result<BongLattice> {
    lattice_from_spec(ctx, &parse_lattice(&read_arg(arg)?)?)
}

fn element(ctx: &FieldContext, arg: &str) -> Result<nuniv_core::FieldElement> {
    let lit: ElementLit = serde_json::from_str(&read_arg(arg)?)
        .map_err(|e| Error::Parse(format!("element: {e}")))?;
    element_from_lit(ctx, &lit)
}

macro_rules! to_value {
    ($x:expr) => {
        serde_json::to_value($x).map_err(|e| Error::Internal(e.to_string()))
    };
}

fn run(cli: &Cli) -> Result<(Value, String)> {
    let ctx = FieldContext::new(field_spec(&cli.field, cli.prec)?)?;
    Ok(match &cli.cmd {
        Cmd::Invariants { lattice: arg } => {
            let l = lattice(&ctx, arg)?;
            let v = invariants_to_json(&ctx, &l);
            let space = l.space();
            let alpha: Vec<String> = l.alphas().iter().map(|a| a.to_string()).collect();
            let text = format!(
                "R = {:?}\nalpha = [{}]\nspace: dim {}, det {}, hasse {}",
                l.r_vec(),
                alpha.join(", "),
                space.dim,
                ctx.class_label(space.det),
                space.hasse
            );
            (v, text)
        }
        Cmd::Universal { lattice: arg, n, method } => {
            let l = lattice(&ctx, arg)?;
            let methods = if method == "all" {
                Method::for_n(*n)
            } else {
                vec![Method::from_name(method).ok_or_else(|| Error::Parse(format!("unknown method {method:?}")))?]
            };
            let mut out = Vec::new();
            let mut text = Vec::new();
            for m in methods {
                let v = if m == Method::TestingSet {
                    by_testing_set(&l, &testing_set(&ctx, *n)?)?
                } else {
                    is_n_universal(&l, *n, m)?
                };
                text.push(match &v.witness {
                    Some(w) => format!("{}: {} ({w})", m.name(), v.universal),
                    None => format!("{}: {}", m.name(), v.universal),
                });
                out.push(to_value!(&v)?);
            }
            let v = if out.len() == 1 { out.pop().unwrap() } else { Value::Array(out) };
            (v, text.join("\n"))
        }
        Cmd::Represents { n_lattice, m_lattice } => {
            let nl = lattice(&ctx, n_lattice)?;
            let ml = lattice(&ctx, m_lattice)?;
            let v = represents(&nl, &ml)?;
            let text = match &v.witness {
                Some(w) => format!("false: condition {} at i = {}: {}", w.condition, w.index, w.detail),
                None => "true".to_string(),
            };
            (to_value!(&v)?, text)
        }
        Cmd::TestingSet { n } => {
            let set = testing_set(&ctx, *n)?;
            let text = set
                .iter()
                .map(|t| format!("N_{}({}): {}  R = {:?}", t.nu, ctx.class_label(t.c), t.jordan, t.lattice.r_vec()))
                .collect::<Vec<_>>()
                .join("\n");
            (Value::Array(set.iter().map(|t| testing_entry_to_json(&ctx, t)).collect()), text)
        }
        Cmd::Crosscheck { n, count, seed } => {
            let report = crosscheck(&ctx, *n, *count, *seed)?;
            let text = format!(
                "n = {}, count = {}, seed = {}: {} universal, {} disagreements",
                report.n,
                report.count,
                report.seed,
                report.universal,
                report.disagreements.len()
            );
            let mut v = to_value!(&report)?;
            v["disagreement_count"] = json!(report.disagreements.len());
            (v, text)
        }
        Cmd::Classes => {
            let classes = ctx.all_classes();
            let text = classes
                .iter()
                .map(|&c| {
                    let (val, digits) = ctx.class_digits(c);
                    format!("{:>6}  d = {:<4} rep = pi^{val} {:?}", ctx.class_label(c), c.dval().to_string(), digits)
                })
                .collect::<Vec<_>>()
                .join("\n");
            (Value::Array(classes.iter().map(|&c| class_to_json(&ctx, c)).collect()), text)
        }
        Cmd::Defect { element: arg } => {
            let x = element(&ctx, arg)?;
            let d = ctx.defect_order(&x)?;
            let c = ctx.square_class_of(&x)?;
            (json!({"d": ext_to_json(d), "class": class_to_json(&ctx, c)}), format!("d = {d}"))
        }
        Cmd::Hilbert { a, b } => {
            let h = ctx.hilbert(&element(&ctx, a)?, &element(&ctx, b)?)?;
            (json!({"hilbert": h}), h.to_string())
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((v, text)) => {
            let body = match cli.output {
                Output::Json => serde_json::to_string_pretty(&v).expect("json output"),
                Output::Text => text,
            };
            let _ = writeln!(std::io::stdout(), "{body}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
