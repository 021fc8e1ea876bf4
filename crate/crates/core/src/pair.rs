//! Pairs `(E, h)` in normal form and their T-duals.
//!
//! A pair over `B` is stored as `(c, t, b)`: `c` is the Chern class of `E`,
//! `t = π_! h`, and `b ∈ H^3 B` records the rest of `h` as `h = h_t + π^* b`.
//! Changing the splitting moves `b` inside `c ∪ H^1 B + t ∪ H^1 B`, so
//! classes are compared modulo that subgroup.

use std::sync::Arc;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::abgroup::{analyze_hom, AbGroup, Homomorphism, IntMatrix};
use crate::error::{Error, Result};
use crate::json;
use crate::space::{make_space, GradedClass, SpaceModel};

#[derive(Clone, Debug)]
pub struct Pair {
    base: Arc<SpaceModel>,
    c: GradedClass,
    t: GradedClass,
    b: GradedClass,
}

impl PartialEq for Pair {
    /// Equality of triples, not of classes; see [`pairs_isomorphic`].
    fn eq(&self, other: &Self) -> bool {
        self.base.descriptor() == other.base.descriptor() && self.c == other.c && self.t == other.t && self.b == other.b
    }
}

impl Eq for Pair {}

/// Validates degrees and the constraint `c ∪ t = 0`.
pub fn make_pair(base: Arc<SpaceModel>, c: GradedClass, t: GradedClass, b: GradedClass) -> Result<Pair> {
    for (name, x, deg) in [("c", &c, 2), ("t", &t, 2), ("b", &b, 3)] {
        if x.degree() != deg {
            return Err(Error::InvalidClass(format!("{name} must have degree {deg}, got {}", x.degree())));
        }
        base.validate(x)?;
    }
    let ct = base.cup_total(&c, &t)?;
    if !ct.is_zero() {
        return Err(Error::ObstructionNonzero(format!("c ∪ t = {ct:?} on {}", base.descriptor())));
    }
    Ok(Pair { base, c, t, b })
}

impl Pair {
    /// Convenience constructor from coordinate lists.
    pub fn from_coords(base: Arc<SpaceModel>, c: &[i64], t: &[i64], b: &[i64]) -> Result<Pair> {
        let c = base.class(2, c.iter().copied())?;
        let t = base.class(2, t.iter().copied())?;
        let b = base.class(3, b.iter().copied())?;
        make_pair(base, c, t, b)
    }

    pub fn base(&self) -> &Arc<SpaceModel> {
        &self.base
    }

    pub fn c(&self) -> &GradedClass {
        &self.c
    }

    pub fn t(&self) -> &GradedClass {
        &self.t
    }

    pub fn b(&self) -> &GradedClass {
        &self.b
    }

    /// Generators of `c ∪ H^1 + t ∪ H^1` as classes in `H^3`.
    pub fn indeterminacy(&self) -> Vec<GradedClass> {
        let h1 = self.base.group(1).num_generators();
        let mut out = Vec::with_capacity(2 * h1);
        for x in [&self.c, &self.t] {
            for i in 0..h1 {
                let v = self.base.cup_total(x, &self.base.generator(1, i)).expect("validated classes");
                out.push(v);
            }
        }
        out
    }

    /// `H^3 B / I`, the group in which the residual class lives.
    pub fn residual_group(&self) -> AbGroup {
        self.residual_map().cokernel.group().clone()
    }

    fn residual_map(&self) -> crate::abgroup::HomAnalysis {
        let gens = self.indeterminacy();
        let h3 = self.base.group(3);
        let cols: Vec<_> = gens.iter().map(|g| g.coords().to_vec()).collect();
        let f = Homomorphism::new(
            AbGroup::free(cols.len()),
            h3.clone(),
            IntMatrix::from_columns(h3.num_generators(), &cols),
        )
        .expect("maps out of a free group are well defined");
        analyze_hom(&f).expect("well-defined map")
    }

    /// Whether `β ∈ c ∪ H^1 + t ∪ H^1`.
    pub fn in_indeterminacy(&self, beta: &GradedClass) -> bool {
        let proj = self.residual_map().cokernel;
        let v = proj.coords_of(beta.coords()).expect("cokernel projection is total");
        v.iter().all(Zero::is_zero)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "base": self.base.descriptor(),
            "c": self.c.to_json(),
            "t": self.t.to_json(),
            "b": self.b.to_json(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Pair> {
        let parse = |msg: &str| Error::Parse(msg.to_string());
        let base = v.get("base").and_then(Value::as_str).ok_or_else(|| parse("missing \"base\""))?;
        let base = Arc::new(make_space(base)?);
        let field = |name: &str, deg: usize| -> Result<GradedClass> {
            let coords = v.get(name).and_then(json::read_ints).ok_or_else(|| parse(&format!("missing or non-integer \"{name}\"")))?;
            base.class(deg, coords)
        };
        let (c, t, b) = (field("c", 2)?, field("t", 2)?, field("b", 3)?);
        make_pair(base.clone(), c, t, b)
    }
}

/// `(c, t, b) ↦ (-t, -c, b)`.
pub fn dualize(p: &Pair) -> Pair {
    Pair { base: p.base.clone(), c: p.base.neg(&p.t), t: p.base.neg(&p.c), b: p.b.clone() }
}

fn same_base(p: &Pair, q: &Pair) -> Result<()> {
    if p.base.descriptor() != q.base.descriptor() {
        return Err(Error::BaseMismatch(p.base.descriptor().into(), q.base.descriptor().into()));
    }
    Ok(())
}

/// Equal `c` and `t`, and `b - b'` in the indeterminacy subgroup.
pub fn pairs_isomorphic(p: &Pair, q: &Pair) -> Result<bool> {
    same_base(p, q)?;
    if p.c != q.c || p.t != q.t {
        return Ok(false);
    }
    let diff = p.base.sub(&p.b, &q.b)?;
    Ok(p.in_indeterminacy(&diff))
}

/// The `H^3 B` action `(c, t, b) ↦ (c, t, b + β)`.
pub fn act_h3(p: &Pair, beta: &GradedClass) -> Result<Pair> {
    if beta.degree() != 3 {
        return Err(Error::InvalidClass(format!("expected a degree-3 class, got degree {}", beta.degree())));
    }
    if p.base.validate(beta).is_err() {
        return Err(Error::BaseMismatch(p.base.descriptor().into(), format!("{beta:?}")));
    }
    Ok(Pair { base: p.base.clone(), c: p.c.clone(), t: p.t.clone(), b: p.base.add(&p.b, beta)? })
}

/// A pair up to isomorphism.
#[derive(Clone, Debug)]
pub struct PairClass {
    pair: Pair,
}

impl PairClass {
    pub fn new(pair: Pair) -> Self {
        PairClass { pair }
    }

    pub fn representative(&self) -> &Pair {
        &self.pair
    }

    pub fn indeterminacy(&self) -> Vec<GradedClass> {
        self.pair.indeterminacy()
    }

    pub fn dual(&self) -> PairClass {
        PairClass::new(dualize(&self.pair))
    }
}

impl PartialEq for PairClass {
    fn eq(&self, other: &Self) -> bool {
        pairs_isomorphic(&self.pair, &other.pair).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(d: &str) -> Arc<SpaceModel> {
        Arc::new(make_space(d).unwrap())
    }

    #[test]
    fn surface_pairs_and_duals() {
        let b = base("surface:g=2");
        let p = Pair::from_coords(b.clone(), &[3], &[5], &[]).unwrap();
        let d = dualize(&p);
        assert_eq!(d.c().coords(), [(-5).into()]);
        assert_eq!(d.t().coords(), [(-3).into()]);
        assert_eq!(dualize(&d), p);
    }

    #[test]
    fn obstruction_on_projective_plane() {
        let b = base("cp:r=2");
        assert!(matches!(Pair::from_coords(b, &[1], &[1], &[]), Err(Error::ObstructionNonzero(_))));
    }

    #[test]
    fn lens_base_pure_torsion_twist() {
        let b = Arc::new(crate::space::lens_like_model(3, 2).unwrap());
        let p = Pair::from_coords(b, &[2], &[0], &[]).unwrap();
        let d = dualize(&p);
        assert!(d.c().is_zero());
        assert_eq!(d.t().coords(), [1.into()]); // -2 mod 3
    }

    #[test]
    fn three_sphere_has_no_indeterminacy() {
        let b = base("s3");
        let p = Pair::from_coords(b.clone(), &[], &[], &[2]).unwrap();
        let q = Pair::from_coords(b.clone(), &[], &[], &[3]).unwrap();
        assert!(!pairs_isomorphic(&p, &q).unwrap());
        assert!(pairs_isomorphic(&p, &p).unwrap());
        let beta = b.class(3, [1]).unwrap();
        assert_eq!(act_h3(&p, &beta).unwrap(), q);
    }

    #[test]
    fn torus_indeterminacy_is_the_volume_lattice() {
        let b = base("torus:n=3");
        let p = Pair::from_coords(b.clone(), &[1, 0, 0], &[0, 0, 0], &[0]).unwrap();
        for k in [-3, 1, 7] {
            let q = Pair::from_coords(b.clone(), &[1, 0, 0], &[0, 0, 0], &[k]).unwrap();
            assert!(pairs_isomorphic(&p, &q).unwrap());
        }
        assert!(p.residual_group().is_trivial());
    }

    #[test]
    fn base_mismatch() {
        let p = Pair::from_coords(base("s3"), &[], &[], &[0]).unwrap();
        let q = Pair::from_coords(base("torus:n=3"), &[0, 0, 0], &[0, 0, 0], &[0]).unwrap();
        assert!(matches!(pairs_isomorphic(&p, &q), Err(Error::BaseMismatch(..))));
        let beta = q.base().class(3, [1]).unwrap();
        assert!(act_h3(&p, &beta).is_ok()); // same shape
        let wrong = GradedClass::raw(3, vec![1.into(), 2.into()]);
        assert!(matches!(act_h3(&p, &wrong), Err(Error::BaseMismatch(..))));
    }

    #[test]
    fn json_round_trip() {
        let p = Pair::from_coords(base("surface:g=1"), &[2], &[-3], &[]).unwrap();
        let v = p.to_json();
        assert_eq!(v.to_string(), r#"{"base":"surface:g=1","c":[2],"t":[-3],"b":[]}"#);
        assert_eq!(Pair::from_json(&v).unwrap(), p);
        assert!(matches!(Pair::from_json(&json!({"base": "s3"})), Err(Error::Parse(_))));
    }
}
