//! Principal `T^2`-bundles up to twisted isomorphism and iterated T-duality.
//!
//! A `T^2`-bundle `F = E_0 ×_B E_1` is recorded by its Chern classes
//! `(c_0, c_1)`. Automorphisms `φ ∈ GL(2, Z)` of the torus act on the pair
//! through `σ(φ)`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::abgroup::{analyze_hom, AbGroup, Homomorphism, IntMatrix};
use crate::error::{Error, Result};
use crate::gysin::{gysin_cohomology, CircleBundle, GysinResult};
use crate::pair::{dualize, make_pair};
use crate::space::{GradedClass, SpaceModel};

const ORBIT_SEARCH_DEPTH: usize = 12;
const ORBIT_SEARCH_STATES: usize = 200_000;

/// An element of `GL(2, Z)`, rows `[[a, b], [c, d]]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TwistMatrix {
    m: [[BigInt; 2]; 2],
}

impl TwistMatrix {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let t = TwistMatrix { m: [[a.into(), b.into()], [c.into(), d.into()]] };
        if !t.det().abs().is_one() {
            return Err(Error::BadParameters(format!("{t:?} is not invertible over Z")));
        }
        Ok(t)
    }

    fn raw(a: i64, b: i64, c: i64, d: i64) -> Self {
        TwistMatrix::new(a, b, c, d).expect("unimodular")
    }

    pub fn identity() -> Self {
        Self::raw(1, 0, 0, 1)
    }

    pub fn swap() -> Self {
        Self::raw(0, 1, 1, 0)
    }

    pub fn negate_first() -> Self {
        Self::raw(-1, 0, 0, 1)
    }

    pub fn shear() -> Self {
        Self::raw(1, 1, 0, 1)
    }

    pub fn shear_inverse() -> Self {
        Self::raw(1, -1, 0, 1)
    }

    /// Generators used by the orbit search.
    pub fn generators() -> [TwistMatrix; 4] {
        [Self::swap(), Self::negate_first(), Self::shear(), Self::shear_inverse()]
    }

    pub fn entries(&self) -> &[[BigInt; 2]; 2] {
        &self.m
    }

    pub fn det(&self) -> BigInt {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    pub fn mul(&self, other: &TwistMatrix) -> TwistMatrix {
        let e = |i: usize, j: usize| &self.m[i][0] * &other.m[0][j] + &self.m[i][1] * &other.m[1][j];
        TwistMatrix { m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    /// Composition under which the action is a left action:
    /// `act(φ ⋆ ψ) = act(φ) ∘ act(ψ)`. Since `σ` reverses products this is
    /// `ψ·φ`.
    pub fn compose_twisted(&self, other: &TwistMatrix) -> TwistMatrix {
        other.mul(self)
    }

    pub fn to_json(&self) -> Value {
        json!([[crate::json::int(&self.m[0][0]), crate::json::int(&self.m[0][1])], [crate::json::int(&self.m[1][0]), crate::json::int(&self.m[1][1])]])
    }
}

impl fmt::Debug for TwistMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1])
    }
}

/// `σ(φ) = det φ · [[a, -c], [-b, d]]`, an involution of `GL(2, Z)`.
pub fn sigma(phi: &TwistMatrix) -> TwistMatrix {
    let det = phi.det();
    let [[a, b], [c, d]] = &phi.m;
    TwistMatrix { m: [[&det * a, -(&det * c)], [-(&det * b), &det * d]] }
}

#[derive(Clone, Debug)]
pub struct TorusBundleClass {
    base: Arc<SpaceModel>,
    c0: GradedClass,
    c1: GradedClass,
}

impl PartialEq for TorusBundleClass {
    fn eq(&self, other: &Self) -> bool {
        self.base.descriptor() == other.base.descriptor() && self.c0 == other.c0 && self.c1 == other.c1
    }
}

impl TorusBundleClass {
    pub fn new(base: Arc<SpaceModel>, c0: GradedClass, c1: GradedClass) -> Result<Self> {
        for c in [&c0, &c1] {
            if c.degree() != 2 {
                return Err(Error::InvalidClass(format!("Chern classes have degree 2, got {}", c.degree())));
            }
            base.validate(c)?;
        }
        Ok(TorusBundleClass { base, c0, c1 })
    }

    pub fn from_coords(base: Arc<SpaceModel>, c0: &[i64], c1: &[i64]) -> Result<Self> {
        let c0 = base.class(2, c0.iter().copied())?;
        let c1 = base.class(2, c1.iter().copied())?;
        Self::new(base, c0, c1)
    }

    pub fn base(&self) -> &Arc<SpaceModel> {
        &self.base
    }

    pub fn c0(&self) -> &GradedClass {
        &self.c0
    }

    pub fn c1(&self) -> &GradedClass {
        &self.c1
    }

    /// The circle bundle `E_i` with Chern class `c_i`.
    pub fn factor(&self, i: usize) -> GysinResult {
        let c = if i == 0 { &self.c0 } else { &self.c1 };
        gysin_cohomology(&CircleBundle::new((*self.base).clone(), c.clone()).expect("validated class"))
    }

    pub fn to_json(&self) -> Value {
        json!({"base": self.base.descriptor(), "c0": self.c0.to_json(), "c1": self.c1.to_json()})
    }
}

/// `(c_0, c_1) ↦ σ(φ)·(c_0, c_1)`.
pub fn act_twist(phi: &TwistMatrix, f: &TorusBundleClass) -> TorusBundleClass {
    let m = sigma(phi).m;
    let b = &f.base;
    let row = |i: usize| {
        let x = b.scale(&f.c0, m[i][0].clone());
        let y = b.scale(&f.c1, m[i][1].clone());
        b.add(&x, &y).expect("same degree")
    };
    TorusBundleClass { base: f.base.clone(), c0: row(0), c1: row(1) }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitAnswer {
    /// With a twist `φ` such that `act_twist(φ, f) = g`.
    Yes(TwistMatrix),
    No,
    Unknown,
}

/// Decides whether `f` and `g` lie in the same `GL(2, Z)`-orbit.
///
/// Exact when `H^2 B` is `0` or `Z` (gcd of the coefficient pair). Otherwise
/// the span of `c_0, c_1` separates some orbits, and a bounded word search
/// finds witnesses or exhausts finite orbits; failing both the answer is
/// `Unknown`.
pub fn orbit_equivalent(base: &SpaceModel, f: &TorusBundleClass, g: &TorusBundleClass) -> Result<OrbitAnswer> {
    for x in [f, g] {
        if x.base.descriptor() != base.descriptor() {
            return Err(Error::BaseMismatch(base.descriptor().into(), x.base.descriptor().into()));
        }
    }
    let h2 = base.group(2);
    if h2.is_trivial() {
        return Ok(OrbitAnswer::Yes(TwistMatrix::identity()));
    }
    if h2 == AbGroup::free(1) {
        let pair = |x: &TorusBundleClass| [x.c0.coords()[0].clone(), x.c1.coords()[0].clone()];
        return Ok(match gcd_witness(&pair(f), &pair(g)) {
            Some(m) => {
                // σ is an involution, so σ(m) acts as m
                let phi = sigma(&m);
                debug_assert!(act_twist(&phi, f) == *g);
                OrbitAnswer::Yes(phi)
            }
            None => OrbitAnswer::No,
        });
    }
    if !same_span(base, f, g) {
        return Ok(OrbitAnswer::No);
    }
    Ok(word_search(f, g))
}

/// `M ∈ GL(2, Z)` with `M·u = v`, if the gcds agree.
fn gcd_witness(u: &[BigInt; 2], v: &[BigInt; 2]) -> Option<TwistMatrix> {
    let to_axis = |w: &[BigInt; 2]| -> (BigInt, TwistMatrix) {
        let e = w[0].extended_gcd(&w[1]);
        let g = e.gcd;
        if g.is_zero() {
            return (g, TwistMatrix::identity());
        }
        // [[x, y], [-w1/g, w0/g]] has determinant 1 and sends w to (g, 0)
        let m = TwistMatrix { m: [[e.x, e.y], [-(&w[1] / &g), &w[0] / &g]] };
        (g, m)
    };
    let (gu, a) = to_axis(u);
    let (gv, b) = to_axis(v);
    if gu != gv {
        return None;
    }
    let [[p, q], [r, s]] = &b.m;
    let b_inv = TwistMatrix { m: [[s.clone(), -q.clone()], [-r.clone(), p.clone()]] };
    Some(b_inv.mul(&a))
}

fn same_span(base: &SpaceModel, f: &TorusBundleClass, g: &TorusBundleClass) -> bool {
    let h2 = base.group(2);
    let span = |x: &TorusBundleClass| {
        let cols = vec![x.c0.coords().to_vec(), x.c1.coords().to_vec()];
        let m = IntMatrix::from_columns(h2.num_generators(), &cols);
        analyze_hom(&Homomorphism::new(AbGroup::free(2), h2.clone(), m).expect("free domain")).expect("well defined")
    };
    let contains = |x: &TorusBundleClass, y: &TorusBundleClass| {
        let proj = span(x).cokernel;
        [&y.c0, &y.c1].iter().all(|c| proj.coords_of(c.coords()).expect("total").iter().all(Zero::is_zero))
    };
    contains(f, g) && contains(g, f)
}

fn word_search(f: &TorusBundleClass, g: &TorusBundleClass) -> OrbitAnswer {
    let key = |x: &TorusBundleClass| (x.c0.coords().to_vec(), x.c1.coords().to_vec());
    let mut seen = HashSet::new();
    seen.insert(key(f));
    let mut queue = VecDeque::from([(f.clone(), TwistMatrix::identity(), 0usize)]);
    let mut truncated = false;
    while let Some((x, word, depth)) = queue.pop_front() {
        if x == *g {
            return OrbitAnswer::Yes(word);
        }
        if depth == ORBIT_SEARCH_DEPTH {
            truncated = true;
            continue;
        }
        for s in TwistMatrix::generators() {
            // act(w·s) = act(s) ∘ act(w)
            let y = act_twist(&s, &x);
            if seen.len() >= ORBIT_SEARCH_STATES {
                truncated = true;
                break;
            }
            if seen.insert(key(&y)) {
                queue.push_back((y, word.mul(&s), depth + 1));
            }
        }
    }
    if truncated {
        OrbitAnswer::Unknown
    } else {
        OrbitAnswer::No
    }
}

/// Classes `h_0 ∈ H^3 E_0`, `h_1 ∈ H^3 E_1` with `h = p_0^* h_0 + p_1^* h_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub h0: GradedClass,
    pub h1: GradedClass,
}

impl Splitting {
    pub fn to_json(&self) -> Value {
        json!({"h0": self.h0.to_json(), "h1": self.h1.to_json()})
    }
}

#[derive(Clone, Debug)]
pub struct IteratedDual {
    pub c_hat0: GradedClass,
    pub c_hat1: GradedClass,
    pub split_hat: Splitting,
}

impl IteratedDual {
    pub fn to_json(&self) -> Value {
        json!({"c0": self.c_hat0.to_json(), "c1": self.c_hat1.to_json(), "splitting": self.split_hat.to_json()})
    }
}

/// Dualizes each circle factor: `ĉ_i = -π_{i!} h_i`, and `ĥ_i` is the dual
/// class of `(c_i, π_{i!} h_i, b_i)` on the dual circle bundle.
pub fn iterated_dual(f: &TorusBundleClass, split: &Splitting) -> Result<IteratedDual> {
    let base = f.base.clone();
    let mut c_hat = Vec::new();
    let mut h_hat = Vec::new();
    for (i, h) in [&split.h0, &split.h1].into_iter().enumerate() {
        let e = f.factor(i);
        if h.degree() != 3 || e.class(3, h.coords().iter().cloned()).as_ref() != Ok(h) {
            return Err(Error::NotDualizable(format!("h_{i} is not a reduced class in H^3 of E_{i}")));
        }
        let (t, b) = e.decompose(h)?;
        let c = if i == 0 { &f.c0 } else { &f.c1 };
        let dual = dualize(&make_pair(base.clone(), c.clone(), t, b)?);
        let e_hat = gysin_cohomology(&CircleBundle::new((*base).clone(), dual.c().clone())?);
        h_hat.push(e_hat.lift(dual.t(), dual.b())?);
        c_hat.push(dual.c().clone());
    }
    let h1 = h_hat.pop().expect("two factors");
    let h0 = h_hat.pop().expect("two factors");
    let c_hat1 = c_hat.pop().expect("two factors");
    let c_hat0 = c_hat.pop().expect("two factors");
    Ok(IteratedDual { c_hat0, c_hat1, split_hat: Splitting { h0, h1 } })
}

/// Generators of the lattice of splittings `(r_0, r_1)` of `h = 0`, i.e.
/// `p_0^* r_0 + p_1^* r_1 = 0`. Requires `c_0 ∪ c_1 = 0`.
///
/// They come from `H^3 B` pulled back to both factors with opposite signs,
/// and from the lifts of `-c_1` to `E_0` and of `-c_0` to `E_1`, which pull
/// back to the same class on `F`. Zero generators are dropped and each one
/// is normalized so that its first nonzero coordinate is positive.
pub fn zero_splittings(f: &TorusBundleClass) -> Result<Vec<Splitting>> {
    let base = &f.base;
    let chi = base.cup_total(&f.c0, &f.c1)?;
    if !chi.is_zero() {
        return Err(Error::ObstructionNonzero(format!("c0 ∪ c1 = {chi:?}")));
    }
    let (e0, e1) = (f.factor(0), f.factor(1));
    let mut out = Vec::new();
    for j in 0..base.group(3).num_generators() {
        let x = base.generator(3, j);
        let r0 = e0.apply_pullback(&x)?;
        let r1 = e1.apply_pullback(&x)?;
        out.push((r0, negate(&e1, &r1)?));
    }
    let zero3 = base.zero(3);
    let r0 = e0.lift(&base.neg(&f.c1), &zero3)?;
    let r1 = e1.lift(&base.neg(&f.c0), &zero3)?;
    out.push((r0, negate(&e1, &r1)?));

    let mut result: Vec<Splitting> = Vec::new();
    for (h0, h1) in out {
        if h0.is_zero() && h1.is_zero() {
            continue;
        }
        let first = h0.coords().iter().chain(h1.coords()).find(|x| !x.is_zero()).expect("nonzero");
        let s = if first.is_negative() {
            Splitting { h0: negate(&e0, &h0)?, h1: negate(&e1, &h1)? }
        } else {
            Splitting { h0, h1 }
        };
        if !result.contains(&s) {
            result.push(s);
        }
    }
    Ok(result)
}

fn negate(e: &GysinResult, x: &GradedClass) -> Result<GradedClass> {
    e.class(x.degree(), x.coords().iter().map(|v| -v))
}
