//! The `tdual` command line: argument parsing, dispatch and rendering.
//!
//! Exit codes: 0 success, 1 a verification suite failed, 2 usage or
//! validation error (message on stderr).

mod template;
pub mod verify;

use std::ffi::OsString;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::gysin::{gysin_cohomology, CircleBundle};
use crate::pair::{dualize, make_pair};
use crate::space::{make_space, GradedClass, SpaceKind, SpaceModel};
use crate::torus::{iterated_dual, orbit_equivalent, zero_splittings, OrbitAnswer, Splitting, TorusBundleClass, TwistMatrix};
use crate::twistk::{k_cpr, k_of_bundle, k_twisted_3manifold, t_admissibility, Theory};

pub use template::{eval, expand, holds, Expected, Vars};

/// Seed used by the randomized suites when `TDUAL_SEED` is unset.
pub const DEFAULT_SEED: u64 = 0x7d0a1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "tdual", version, about = "T-duality of circle bundles with H-flux")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum TheoryArg {
    K,
    Hr,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dual of the pair (c, t, b) over a base.
    Dualize {
        #[arg(long)]
        base: String,
        #[arg(long = "c", visible_alias = "chern", allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long = "t", visible_alias = "twist", allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
    },
    /// K-groups of the total space, twisted by t.
    Kgroups {
        #[arg(long)]
        base: String,
        #[arg(long = "c", visible_alias = "chern", allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long = "t", visible_alias = "twist", allow_hyphen_values = true)]
        t: Option<String>,
    },
    /// Cohomology of the base, or of the circle bundle when --c is given.
    Cohomology {
        #[arg(long)]
        base: String,
        #[arg(long = "c", visible_alias = "chern", allow_hyphen_values = true)]
        c: Option<String>,
    },
    /// T^2-bundles with h = 0: splittings, iterated duals and orbit comparison.
    ClassifyTorus {
        #[arg(long)]
        base: String,
        #[arg(long, allow_hyphen_values = true)]
        c0: String,
        #[arg(long, allow_hyphen_values = true)]
        c1: String,
        /// Compare against the bundle (d0, d1) instead.
        #[arg(long, allow_hyphen_values = true, requires = "d1")]
        d0: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "d0")]
        d1: Option<String>,
    },
    /// Whether the basic pair transform is an isomorphism for degree g.
    Admissibility {
        #[arg(long, value_enum)]
        theory: TheoryArg,
        #[arg(long, allow_hyphen_values = true)]
        g: i64,
    },
    /// Run the embedded verification suites.
    Verify {
        #[arg(long = "suite", value_delimiter = ',')]
        suites: Vec<String>,
    },
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let seed = match std::env::var("TDUAL_SEED") {
        Ok(s) => match s.trim().parse::<u64>() {
            Ok(v) => v,
            Err(_) => return usage_error(format!("TDUAL_SEED must be an unsigned integer, got `{s}`")),
        },
        Err(_) => DEFAULT_SEED,
    };
    match dispatch(&cli.command, seed) {
        Ok((value, ok)) => {
            let stdout = match cli.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable")),
                Format::Text => render_text(&value),
            };
            Outcome { code: if ok { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(e) => usage_error(format!("{}: {e}", e.kind())),
    }
}

fn usage_error(msg: String) -> Outcome {
    Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
}

fn dispatch(cmd: &Command, seed: u64) -> Result<(Value, bool)> {
    match cmd {
        Command::Dualize { base, c, t, b } => {
            let base = Arc::new(make_space(base)?);
            let pair = make_pair(
                base.clone(),
                parse_class(&base, 2, c.as_deref())?,
                parse_class(&base, 2, t.as_deref())?,
                parse_class(&base, 3, b.as_deref())?,
            )?;
            let dual = dualize(&pair);
            let residual = pair.residual_group().to_string();
            Ok((json!({"input": pair.to_json(), "dual": dual.to_json(), "b_modulo": residual}), true))
        }
        Command::Kgroups { base, c, t } => {
            let model = make_space(base)?;
            let base = Arc::new(model.clone());
            let c = parse_class(&base, 2, c.as_deref())?;
            let t = parse_class(&base, 2, t.as_deref())?;
            make_pair(base.clone(), c.clone(), t.clone(), base.zero(3))?;
            let k = kgroups(model, &c, &t)?;
            let mut out = Map::new();
            out.insert("base".into(), json!(base.descriptor()));
            out.insert("c".into(), c.to_json());
            out.insert("t".into(), t.to_json());
            if let Value::Object(m) = k.to_json() {
                out.extend(m);
            }
            Ok((Value::Object(out), true))
        }
        Command::Cohomology { base, c } => {
            let model = make_space(base)?;
            match c {
                None => Ok((model.to_json(), true)),
                Some(c) => {
                    let c = parse_class(&model, 2, Some(c))?;
                    Ok((gysin_cohomology(&CircleBundle::new(model, c)?).to_json(), true))
                }
            }
        }
        Command::ClassifyTorus { base, c0, c1, d0, d1 } => {
            let base = Arc::new(make_space(base)?);
            let f = TorusBundleClass::new(base.clone(), parse_class(&base, 2, Some(c0))?, parse_class(&base, 2, Some(c1))?)?;
            if let (Some(d0), Some(d1)) = (d0, d1) {
                let g = TorusBundleClass::new(base.clone(), parse_class(&base, 2, Some(d0))?, parse_class(&base, 2, Some(d1))?)?;
                let answer = orbit_equivalent(&base, &f, &g)?;
                return Ok((json!({"f": f.to_json(), "g": g.to_json(), "orbit_equivalent": orbit_json(&answer)}), true));
            }
            classify_torus(&f).map(|v| (v, true))
        }
        Command::Admissibility { theory, g } => {
            let theory = match theory {
                TheoryArg::K => Theory::K,
                TheoryArg::Hr => Theory::HR,
            };
            Ok((t_admissibility(theory, *g).to_json(), true))
        }
        Command::Verify { suites } => {
            let ids: Vec<&str> = if suites.is_empty() { verify::SUITES.to_vec() } else { suites.iter().map(String::as_str).collect() };
            let report = verify::run_suites(&ids, seed)?;
            Ok((report.to_json(), report.pass()))
        }
    }
}

/// K-groups of the total space of `c`, twisted by `t`.
fn kgroups(model: SpaceModel, c: &GradedClass, t: &GradedClass) -> Result<crate::twistk::KGroups> {
    let scalar = |x: &GradedClass| -> Result<i64> {
        match x.coords() {
            [v] => i64::try_from(v).map_err(|_| Error::BadParameters("coefficient out of range".into())),
            _ => Err(Error::UnsupportedTwist(format!("{} has rank H^2 != 1", model.descriptor()))),
        }
    };
    if let SpaceKind::ProjectiveSpace { r } = model.kind() {
        return k_cpr(scalar(c)?, scalar(t)?, r);
    }
    if t.is_zero() {
        return k_of_bundle(&gysin_cohomology(&CircleBundle::new(model, c.clone())?));
    }
    if model.dimension() == 2 && model.group(2) == crate::abgroup::AbGroup::free(1) {
        let n = scalar(t)?;
        let k = k_of_bundle(&gysin_cohomology(&CircleBundle::new(model, c.clone())?))?;
        return k_twisted_3manifold(&k, n);
    }
    Err(Error::UnsupportedTwist(format!("twisted K-theory over {} is not implemented", model.descriptor())))
}

fn classify_torus(f: &TorusBundleClass) -> Result<Value> {
    let base = f.base();
    let splittings = zero_splittings(f)?;
    let trivial = Splitting { h0: f.factor(0).class(3, zeros(&f.factor(0), 3))?, h1: f.factor(1).class(3, zeros(&f.factor(1), 3))? };
    let reference = iterated_dual(f, &trivial)?;
    let ref_class = TorusBundleClass::new(base.clone(), reference.c_hat0.clone(), reference.c_hat1.clone())?;
    let mut duals = vec![json!({"splitting": trivial.to_json(), "dual": reference.to_json(), "orbit_equivalent_to_trivial": orbit_json(&OrbitAnswer::Yes(TwistMatrix::identity()))})];
    let mut unique = true;
    for s in &splittings {
        let d = iterated_dual(f, s)?;
        let class = TorusBundleClass::new(base.clone(), d.c_hat0.clone(), d.c_hat1.clone())?;
        let answer = orbit_equivalent(base, &ref_class, &class)?;
        if answer == OrbitAnswer::No {
            unique = false;
        }
        duals.push(json!({"splitting": s.to_json(), "dual": d.to_json(), "orbit_equivalent_to_trivial": orbit_json(&answer)}));
    }
    Ok(json!({
        "class": f.to_json(),
        "zero_splittings": splittings.iter().map(Splitting::to_json).collect::<Vec<_>>(),
        "iterated_duals": duals,
        "dual_bundle_unique": unique,
    }))
}

fn zeros(e: &crate::gysin::GysinResult, n: usize) -> Vec<BigInt> {
    vec![BigInt::zero(); e.group(n).map_or(0, |g| g.num_generators())]
}

fn orbit_json(a: &OrbitAnswer) -> Value {
    match a {
        OrbitAnswer::Yes(m) => json!({"answer": "yes", "witness": m.to_json()}),
        OrbitAnswer::No => json!({"answer": "no"}),
        OrbitAnswer::Unknown => json!({"answer": "unknown"}),
    }
}

/// Comma-separated integers in generator order. A missing flag is the zero
/// class, and so is an all-zero list when the group has no generators.
fn parse_class(base: &SpaceModel, degree: usize, s: Option<&str>) -> Result<GradedClass> {
    let Some(s) = s else {
        return Ok(base.zero(degree));
    };
    let coords = s
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<BigInt>().map_err(|_| Error::Parse(format!("`{x}` is not an integer"))))
        .collect::<Result<Vec<_>>>()?;
    if base.group(degree).num_generators() == 0 && coords.iter().all(Zero::is_zero) {
        return Ok(base.zero(degree));
    }
    base.class(degree, coords)
}

/// Indented `key: value` lines.
fn render_text(v: &Value) -> String {
    let mut out = String::new();
    text_into(v, 0, &mut out);
    out
}

fn text_into(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_scalar_like(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    text_into(x, indent + 1, out);
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                if is_scalar_like(x) {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    text_into(x, indent + 1, out);
                }
            }
        }
        x => out.push_str(&format!("{pad}{}\n", inline(x))),
    }
}

fn is_scalar_like(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(inline).collect::<Vec<_>>().join(", ")),
        x => x.to_string(),
    }
}
