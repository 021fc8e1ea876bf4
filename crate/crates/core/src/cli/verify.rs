//! Embedded verification suites. Each suite recomputes one table from the
//! data files under `data/` and diffs it against the stored expectation.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::template::{eval, expand, holds, Vars};
use crate::abgroup::ExtensionResult;
use crate::error::{Error, Result};
use crate::gysin::{gysin_cohomology, CircleBundle};
use crate::pair::{act_h3, dualize, make_pair, pairs_isomorphic, Pair};
use crate::space::{make_space, GradedClass, SpaceModel};
use crate::torus::{iterated_dual, orbit_equivalent, zero_splittings, OrbitAnswer, Splitting, TorusBundleClass};
use crate::twistk::{k_cpr, k_of_bundle, k_surface_bundle, t_admissibility, torsion_example, verify_tduality_k, KGroups, Theory};

pub const SUITES: [&str; 6] = ["4.1", "4.2", "4.3", "4.4", "admissibility", "involution"];

/// Descriptive names accepted in place of the numeric suite ids.
pub const ALIASES: [(&str, &str); 4] = [("surface-bundles", "4.1"), ("line-bundles", "4.2"), ("torsion", "4.3"), ("torus", "4.4")];

fn canonical(id: &str) -> &str {
    ALIASES.iter().find(|(a, _)| *a == id).map_or(id, |(_, c)| c)
}

const SURFACE_BUNDLES: &str = include_str!("../../data/surface_bundles.json");
const LINE_BUNDLES: &str = include_str!("../../data/line_bundles.json");
const TORSION_EXAMPLE: &str = include_str!("../../data/torsion_example.json");
const ITERATED_DUAL: &str = include_str!("../../data/iterated_dual.json");
const ADMISSIBILITY: &str = include_str!("../../data/admissibility.json");
const INVOLUTION: &str = include_str!("../../data/involution.json");

/// The stored expectation for a suite.
pub fn expected_table(id: &str) -> Result<Value> {
    let text = match canonical(id) {
        "4.1" => SURFACE_BUNDLES,
        "4.2" => LINE_BUNDLES,
        "4.3" => TORSION_EXAMPLE,
        "4.4" => ITERATED_DUAL,
        "admissibility" => ADMISSIBILITY,
        "involution" => INVOLUTION,
        _ => return Err(Error::BadParameters(format!("unknown suite `{id}`; known: {}", SUITES.join(", ")))),
    };
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("data file for {id}: {e}")))
}

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub id: String,
    pub expected: Value,
    pub computed: Value,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.id,
            "pass": self.pass(),
            "checks": self.checks,
            "failures": self.failures,
            "expected": self.expected,
            "computed": self.computed,
        })
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.suites.iter().all(SuiteResult::pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pass": self.pass(),
            "seed": self.seed,
            "suites": self.suites.iter().map(SuiteResult::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Runs the given suites in order. Unknown ids are a usage error.
pub fn run_suites(ids: &[&str], seed: u64) -> Result<VerifyReport> {
    for id in ids {
        expected_table(id)?;
    }
    let suites = ids.iter().map(|id| run_suite(id, seed)).collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport { seed, suites })
}

pub fn run_suite(id: &str, seed: u64) -> Result<SuiteResult> {
    let id = canonical(id);
    let expected = expected_table(id)?;
    let mut s = Checker::default();
    let computed = match id {
        "4.1" => surface_bundles(&expected, &mut s)?,
        "4.2" => line_bundles(&expected, &mut s)?,
        "4.3" => torsion(&expected, &mut s)?,
        "4.4" => torus_duals(&expected, &mut s)?,
        "admissibility" => admissibility(&expected, &mut s)?,
        _ => involution(&expected, seed, &mut s)?,
    };
    Ok(SuiteResult { id: id.to_string(), expected, computed, checks: s.checks, failures: s.failures })
}

#[derive(Default)]
struct Checker {
    checks: usize,
    failures: Vec<String>,
}

impl Checker {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Records a computation error as a failure.
    fn attempt<T>(&mut self, label: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{label}: {}: {e}", e.kind()));
                None
            }
        }
    }

    fn group(&mut self, label: &str, template: &str, vars: &Vars, got: &ExtensionResult) -> Result<()> {
        let want = expand(template, vars)?;
        self.check(want.matches(got), || format!("{label}: expected {template} {vars:?}, computed {got}"));
        Ok(())
    }

    fn kgroups(&mut self, label: &str, table: &Value, vars: &Vars, got: &KGroups) -> Result<()> {
        for key in ["k0", "k1"] {
            let t = str_field(table, key)?;
            self.group(&format!("{label} {key}"), t, vars, got.degree(if key == "k0" { 0 } else { 1 }))?;
        }
        Ok(())
    }
}

const META_KEYS: [&str; 3] = ["applies_to", "description", "note"];

/// First entry of a condition-keyed table whose condition holds.
fn select<'a>(table: &'a Value, vars: &Vars) -> Result<&'a Value> {
    let obj = table.as_object().ok_or_else(|| Error::Parse("condition table must be an object".into()))?;
    for (cond, v) in obj {
        if META_KEYS.contains(&cond.as_str()) {
            continue;
        }
        if holds(cond, vars)? {
            return Ok(v);
        }
    }
    Err(Error::Parse(format!("no condition matches {vars:?}")))
}

fn str_field<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    v.get(key).and_then(Value::as_str).ok_or_else(|| Error::Parse(format!("missing string field `{key}`")))
}

fn int_list(v: &Value, key: &str) -> Result<Vec<i64>> {
    v.get(key)
        .and_then(Value::as_array)
        .and_then(|xs| xs.iter().map(Value::as_i64).collect::<Option<Vec<_>>>())
        .ok_or_else(|| Error::Parse(format!("missing integer list `{key}`")))
}

fn vars(pairs: &[(char, i64)]) -> Vars {
    pairs.iter().copied().collect()
}

fn strings(rs: impl IntoIterator<Item = ExtensionResult>) -> Vec<String> {
    rs.into_iter().map(|r| r.to_string()).collect()
}

fn surface_bundles(data: &Value, s: &mut Checker) -> Result<Value> {
    let grid = &data["grid"];
    let (gs, ks, ns) = (int_list(grid, "g")?, int_list(grid, "k")?, int_list(grid, "n")?);
    let twisted = &data["twisted_k_theory"];
    let applies = str_field(twisted, "applies_to")?;
    let mut computed = Vec::new();
    for &g in &gs {
        let base = make_space(&format!("surface:g={g}"))?;
        for &k in &ks {
            let v = vars(&[('g', g), ('k', k)]);
            let label = format!("g={g} k={k}");
            let Some(e) = s.attempt(&label, CircleBundle::new(base.clone(), base.class(2, [k])?)) else { continue };
            let e = gysin_cohomology(&e);
            let rows = select(&data["cohomology"], &v)?.as_array().ok_or_else(|| Error::Parse("cohomology rows".into()))?;
            for (i, t) in rows.iter().enumerate() {
                let t = t.as_str().ok_or_else(|| Error::Parse("cohomology row".into()))?;
                s.group(&format!("{label} H^{i}"), t, &v, &e.assembled(i))?;
            }
            s.check(rows.len() == e.total_dimension() + 1, || format!("{label}: table covers {} degrees", rows.len()));
            let cohomology = strings((0..=e.total_dimension()).map(|i| e.assembled(i)));
            let Some(kg) = s.attempt(&label, k_of_bundle(&e)) else { continue };
            s.kgroups(&format!("{label} K"), select(&data["k_theory"], &v)?, &v, &kg)?;
            let mut twisted_out = Vec::new();
            for &n in &ns {
                let v = vars(&[('g', g), ('k', k), ('n', n)]);
                let label = format!("g={g} k={k} n={n}");
                if holds(applies, &v)? {
                    if let Some(kt) = s.attempt(&label, k_surface_bundle(g as u32, k, n)) {
                        s.kgroups(&format!("{label} K"), select(twisted, &v)?, &v, &kt)?;
                        twisted_out.push(json!({"n": n, "k0": kt.k0.to_string(), "k1": kt.k1.to_string()}));
                    }
                }
                s.check(verify_tduality_k(g as u32, k, n), || format!("{label}: T-duality isomorphism fails"));
            }
            computed.push(json!({
                "g": g, "k": k,
                "cohomology": cohomology,
                "k0": kg.k0.to_string(), "k1": kg.k1.to_string(),
                "twisted": twisted_out,
            }));
        }
    }
    Ok(Value::Array(computed))
}

fn line_bundles(data: &Value, s: &mut Checker) -> Result<Value> {
    let grid = &data["grid"];
    let (rs, ns, ks) = (int_list(grid, "r")?, int_list(grid, "n")?, int_list(grid, "k")?);
    let mut computed = Vec::new();
    for &r in &rs {
        let base = make_space(&format!("cp:r={r}"))?;
        for &n in &ns {
            let v = vars(&[('r', r), ('n', n)]);
            let label = format!("r={r} n={n}");
            let e = gysin_cohomology(&CircleBundle::new(base.clone(), base.class(2, [n])?)?);
            let rows = select(&data["cohomology"], &v)?.as_array().ok_or_else(|| Error::Parse("cohomology rows".into()))?;
            let mut covered = vec![0usize; e.total_dimension() + 1];
            for row in rows {
                let (lo, hi) = match row.get("l").and_then(Value::as_array) {
                    Some(l) if l.len() == 2 => {
                        let b = |x: &Value| -> Result<i64> {
                            let t = x.as_str().ok_or_else(|| Error::Parse("range bound".into()))?;
                            i64::try_from(eval(t, &v)?).map_err(|_| Error::Parse("range bound".into()))
                        };
                        (b(&l[0])?, b(&l[1])?)
                    }
                    _ => (0, 0),
                };
                for l in lo..=hi {
                    let mut w = v.clone();
                    w.insert('l', l);
                    let d = eval(str_field(row, "degree")?, &w)?;
                    let d = usize::try_from(d).map_err(|_| Error::Parse("negative degree".into()))?;
                    if d < covered.len() {
                        covered[d] += 1;
                    }
                    s.group(&format!("{label} H^{d}"), str_field(row, "group")?, &w, &e.assembled(d))?;
                }
            }
            s.check(covered.iter().all(|&c| c == 1), || format!("{label}: table coverage {covered:?}"));
            let cohomology = strings((0..=e.total_dimension()).map(|i| e.assembled(i)));
            let Some(kg) = s.attempt(&label, k_cpr(n, 0, r as u32)) else { continue };
            s.kgroups(&format!("{label} K"), select(&data["k_theory"], &v)?, &v, &kg)?;
            computed.push(json!({
                "r": r, "n": n,
                "cohomology": cohomology,
                "k0": kg.k0.to_string(), "k1": kg.k1.to_string(),
                "assumptions": kg.assumptions,
            }));
        }
    }
    let twisted = &data["twisted_k_theory"];
    let applies = str_field(twisted, "applies_to")?;
    let mut twisted_out = Vec::new();
    for &r in &rs {
        for &k in &ks {
            let v = vars(&[('r', r), ('n', 0), ('k', k)]);
            if !holds(applies, &v)? {
                continue;
            }
            let label = format!("r={r} n=0 k={k}");
            let Some(kt) = s.attempt(&label, k_cpr(0, k, r as u32)) else { continue };
            s.kgroups(&format!("{label} K"), select(twisted, &v)?, &v, &kt)?;
            twisted_out.push(json!({"r": r, "k": k, "k0": kt.k0.to_string(), "k1": kt.k1.to_string(), "assumptions": kt.assumptions}));
        }
    }
    Ok(json!({"bundles": computed, "twisted": twisted_out}))
}

fn torsion(data: &Value, s: &mut Checker) -> Result<Value> {
    let grid = &data["grid"];
    let want_distinct = data.get("distinct").and_then(Value::as_bool).ok_or_else(|| Error::Parse("distinct".into()))?;
    let mut computed = Vec::new();
    for &k in &int_list(grid, "k")? {
        for &r in &int_list(grid, "r")? {
            let v = vars(&[('k', k), ('r', r)]);
            let label = format!("k={k} r={r}");
            let Some(rep) = s.attempt(&label, torsion_example(k, r)) else { continue };
            s.kgroups(&format!("{label} K(F_c)"), &data["k_fc"], &v, &rep.k_fc)?;
            s.kgroups(&format!("{label} K(F_0)"), &data["k_f0"], &v, &rep.k_f0)?;
            s.kgroups(&format!("{label} K(F_0, twisted)"), &data["k_f0_twisted"], &v, &rep.k_f0_twisted)?;
            s.check(rep.distinct == want_distinct, || format!("{label}: distinct = {}", rep.distinct));
            computed.push(json!({"k": k, "r": r, "report": rep.to_json()}));
        }
    }
    Ok(Value::Array(computed))
}

fn gcd_of(xs: &[&GradedClass]) -> BigInt {
    xs.iter().flat_map(|x| x.coords()).fold(BigInt::zero(), |a, b| a.gcd(b))
}

fn torus_duals(data: &Value, s: &mut Checker) -> Result<Value> {
    let base = Arc::new(make_space(str_field(data, "base")?)?);
    let f = TorusBundleClass::from_coords(base.clone(), &int_list(data, "c0")?, &int_list(data, "c1")?)?;
    let splittings = zero_splittings(&f)?;
    let trivial = Splitting { h0: f.factor(0).class(3, zeros3(&f, 0))?, h1: f.factor(1).class(3, zeros3(&f, 1))? };
    s.check(!splittings.is_empty(), || "no nontrivial splitting of h = 0".into());
    let Some(nontrivial) = splittings.first().cloned() else {
        return Ok(json!({"zero_splittings": []}));
    };
    let d0 = iterated_dual(&f, &trivial)?;
    let d1 = iterated_dual(&f, &nontrivial)?;
    let (g0, g1) = (gcd_of(&[&d0.c_hat0, &d0.c_hat1]), gcd_of(&[&d1.c_hat0, &d1.c_hat1]));
    let want0 = BigInt::from(data["trivial_splitting_dual_gcd"].as_i64().ok_or_else(|| Error::Parse("gcd".into()))?);
    let want1 = BigInt::from(data["nontrivial_splitting_dual_gcd"].as_i64().ok_or_else(|| Error::Parse("gcd".into()))?);
    s.check(g0 == want0, || format!("trivial splitting dual gcd {g0}"));
    s.check(g1 == want1, || format!("nontrivial splitting dual gcd {g1}"));
    let a = TorusBundleClass::new(base.clone(), d0.c_hat0.clone(), d0.c_hat1.clone())?;
    let b = TorusBundleClass::new(base.clone(), d1.c_hat0.clone(), d1.c_hat1.clone())?;
    let answer = match orbit_equivalent(&base, &a, &b)? {
        OrbitAnswer::Yes(_) => "yes",
        OrbitAnswer::No => "no",
        OrbitAnswer::Unknown => "unknown",
    };
    let want = str_field(data, "orbit_equivalent")?;
    s.check(answer == want, || format!("orbit_equivalent = {answer}"));
    Ok(json!({
        "zero_splittings": splittings.iter().map(Splitting::to_json).collect::<Vec<_>>(),
        "trivial_dual": d0.to_json(),
        "nontrivial_dual": d1.to_json(),
        "trivial_splitting_dual_gcd": g0.to_string(),
        "nontrivial_splitting_dual_gcd": g1.to_string(),
        "orbit_equivalent": answer,
    }))
}

fn zeros3(f: &TorusBundleClass, i: usize) -> Vec<BigInt> {
    vec![BigInt::zero(); f.factor(i).group(3).map_or(0, |g| g.num_generators())]
}

fn admissibility(data: &Value, s: &mut Checker) -> Result<Value> {
    let range = int_list(data, "g")?;
    let (lo, hi) = (range[0], range[1]);
    let mut computed = BTreeMap::new();
    for (theory, key) in [(Theory::K, "K"), (Theory::HR, "HR")] {
        let cond = str_field(&data[key], "iso_exactly_for")?;
        let mut isos = Vec::new();
        for g in lo..=hi {
            let rep = t_admissibility(theory, g);
            let want = holds(cond, &vars(&[('g', g)]))?;
            s.check(rep.is_iso == want, || format!("{key} g={g}: is_iso = {}", rep.is_iso));
            if rep.is_iso {
                isos.push(g);
            }
        }
        computed.insert(key, json!({"iso_for": isos}));
    }
    Ok(json!(computed))
}

fn random_class(rng: &mut ChaCha8Rng, base: &SpaceModel, degree: usize, lo: i64, hi: i64) -> GradedClass {
    let n = base.group(degree).num_generators();
    base.class(degree, (0..n).map(|_| rng.gen_range(lo..=hi))).expect("right length")
}

/// A random pair with `c ∪ t = 0`; falls back to `t = 0` after a few draws.
pub fn random_pair(rng: &mut ChaCha8Rng, base: &Arc<SpaceModel>, lo: i64, hi: i64) -> Pair {
    let c = random_class(rng, base, 2, lo, hi);
    let b = random_class(rng, base, 3, lo, hi);
    for _ in 0..8 {
        let t = random_class(rng, base, 2, lo, hi);
        if let Ok(p) = make_pair(base.clone(), c.clone(), t, b.clone()) {
            return p;
        }
    }
    make_pair(base.clone(), c, base.zero(2), b).expect("t = 0 is unobstructed")
}

fn involution(data: &Value, seed: u64, s: &mut Checker) -> Result<Value> {
    let pairs = data["pairs"].as_u64().ok_or_else(|| Error::Parse("pairs".into()))?;
    let range = int_list(data, "coefficient_range")?;
    let (lo, hi) = (range[0], range[1]);
    let bases = data["bases"]
        .as_array()
        .ok_or_else(|| Error::Parse("bases".into()))?
        .iter()
        .map(|d| d.as_str().ok_or_else(|| Error::Parse("base".into())).and_then(make_space).map(Arc::new))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut per_base: BTreeMap<String, u64> = BTreeMap::new();
    for i in 0..pairs {
        let base = &bases[rng.gen_range(0..bases.len())];
        *per_base.entry(base.descriptor().to_string()).or_default() += 1;
        let p = random_pair(&mut rng, base, lo, hi);
        let d = dualize(&p);
        let label = || format!("pair {i} {}", p.to_json());
        s.check(dualize(&d) == p, || format!("{}: dualize twice is not the identity", label()));
        s.check(make_pair(base.clone(), d.c().clone(), d.t().clone(), d.b().clone()).is_ok(), || {
            format!("{}: dual violates c t = 0", label())
        });
        let beta = random_class(&mut rng, base, 3, lo, hi);
        let lhs = dualize(&act_h3(&p, &beta)?);
        let rhs = act_h3(&d, &beta)?;
        s.check(lhs == rhs, || format!("{}: dualize does not commute with the H^3 action", label()));
        let mut shift = base.zero(3);
        for g in p.indeterminacy() {
            shift = base.add(&shift, &base.scale(&g, rng.gen_range(lo..=hi)))?;
        }
        let q = act_h3(&p, &shift)?;
        s.check(pairs_isomorphic(&p, &q)? && pairs_isomorphic(&d, &dualize(&q))?, || {
            format!("{}: dual depends on the representative", label())
        });
    }
    Ok(json!({"seed": seed, "pairs": pairs, "per_base": per_base}))
}
