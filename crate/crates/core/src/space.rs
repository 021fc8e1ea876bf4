//! Cohomology-ring models of the supported base and total spaces.
//!
//! Every model lists, per degree, a canonical [`AbGroup`] with named
//! generators and stores the cup product of each pair of generators. All
//! catalog spaces are closed oriented manifolds; the ring axioms and the
//! orientation pairing are checked when a model is built.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::abgroup::{AbGroup, Homomorphism, IntMatrix};
use crate::error::{Error, Result};
use crate::json;

/// A cohomology class: degree plus coordinates in the canonical generators
/// of that degree. Torsion coordinates are kept reduced.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedClass {
    degree: usize,
    coords: Vec<BigInt>,
}

impl GradedClass {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn to_json(&self) -> Value {
        json::ints(&self.coords)
    }

    pub(crate) fn raw(degree: usize, coords: Vec<BigInt>) -> Self {
        GradedClass { degree, coords }
    }
}

impl fmt::Debug for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "H^{}[{}]", self.degree, c.join(", "))
    }
}

/// The space family behind a model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    Point,
    Circle,
    TwoSphere,
    ThreeSphere,
    Surface { genus: u32 },
    ProjectiveSpace { r: u32 },
    Torus { n: u32 },
    /// Total space of the circle bundle over `CP^r` with Chern class `k·z`.
    Lens { k: u32, r: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeGroup {
    pub group: AbGroup,
    pub names: Vec<String>,
}

type ProductTable = Vec<Vec<Vec<BigInt>>>;

/// A graded cohomology ring with integral coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceModel {
    descriptor: String,
    kind: SpaceKind,
    dimension: usize,
    groups: Vec<DegreeGroup>,
    products: BTreeMap<(usize, usize), ProductTable>,
    oriented: bool,
    ring_structure_extrapolated: bool,
}

/// Parses a descriptor and builds its model.
///
/// Grammar: `pt | s1 | s2 | s3 | surface:g=<int≥0> | cp:r=<int≥1> |
/// torus:n=<1|2|3> | lens:k=<int≥2>,r=<int≥1>`.
pub fn make_space(descriptor: &str) -> Result<SpaceModel> {
    let unknown = || Error::UnknownDescriptor(descriptor.to_string());
    let param = |s: &str, key: &str| -> Result<u32> {
        let v = s.strip_prefix(key).and_then(|v| v.strip_prefix('=')).ok_or_else(unknown)?;
        if v.is_empty() || !v.bytes().all(|b| b.is_ascii_digit()) {
            return Err(unknown());
        }
        v.parse::<u32>().map_err(|_| unknown())
    };
    let kind = match descriptor {
        "pt" => SpaceKind::Point,
        "s1" => SpaceKind::Circle,
        "s2" => SpaceKind::TwoSphere,
        "s3" => SpaceKind::ThreeSphere,
        d => {
            let (family, rest) = d.split_once(':').ok_or_else(unknown)?;
            match family {
                "surface" => SpaceKind::Surface { genus: param(rest, "g")? },
                "cp" => SpaceKind::ProjectiveSpace { r: param(rest, "r")? },
                "torus" => SpaceKind::Torus { n: param(rest, "n")? },
                "lens" => {
                    let (k, r) = rest.split_once(',').ok_or_else(unknown)?;
                    SpaceKind::Lens { k: param(k, "k")?, r: param(r, "r")? }
                }
                _ => return Err(unknown()),
            }
        }
    };
    match kind {
        SpaceKind::ProjectiveSpace { r } if r < 1 => return Err(unknown()),
        SpaceKind::Torus { n } if !(1..=3).contains(&n) => return Err(unknown()),
        SpaceKind::Lens { k, r } if k < 2 || r < 1 => return Err(unknown()),
        _ => {}
    }
    build(kind)
}

/// The circle bundle over `CP^r` with Chern class `k·z`, as a base space.
pub fn lens_like_model(k: i64, r: i64) -> Result<SpaceModel> {
    if k < 2 || r < 1 || k > u32::MAX as i64 || r > u32::MAX as i64 {
        return Err(Error::BadParameters(format!("lens model needs k ≥ 2 and r ≥ 1, got k={k}, r={r}")));
    }
    build(SpaceKind::Lens { k: k as u32, r: r as u32 })
}

fn build(kind: SpaceKind) -> Result<SpaceModel> {
    let model = match kind {
        SpaceKind::Point => Builder::new("pt", kind, 0).finish(|_, _, _, _| None),
        SpaceKind::Circle => torus_model("s1", kind, 1),
        SpaceKind::Torus { n } => torus_model(&format!("torus:n={n}"), kind, n as usize),
        SpaceKind::TwoSphere => surface_model("s2", kind, 0),
        SpaceKind::Surface { genus } => surface_model(&format!("surface:g={genus}"), kind, genus),
        SpaceKind::ThreeSphere => {
            let mut b = Builder::new("s3", kind, 3);
            b.set(3, AbGroup::free(1), vec!["vol".into()]);
            b.finish(|_, _, _, _| None)
        }
        SpaceKind::ProjectiveSpace { r } => {
            let r = r as usize;
            let mut b = Builder::new(&format!("cp:r={r}"), kind, 2 * r);
            for l in 1..=r {
                b.set(2 * l, AbGroup::free(1), vec![power_name("z", l)]);
            }
            b.finish(move |p, _, q, _| {
                (p % 2 == 0 && q % 2 == 0 && p + q <= 2 * r).then(|| vec![BigInt::one()])
            })
        }
        SpaceKind::Lens { k, r } => {
            let r = r as usize;
            let top = 2 * r + 1;
            let mut b = Builder::new(&format!("lens:k={k},r={r}"), kind, top);
            for l in 1..=r {
                b.set(2 * l, AbGroup::cyclic(k), vec![power_name("x", l)]);
            }
            b.set(top, AbGroup::free(1), vec!["vol".into()]);
            let mut m = b.finish(move |p, _, q, _| {
                let even = p % 2 == 0 && q % 2 == 0 && p + q <= 2 * r;
                let with_unit = (p == 0 || q == 0) && p + q == top;
                (even || with_unit).then(|| vec![BigInt::one()])
            });
            m.ring_structure_extrapolated = !is_prime(k);
            m
        }
    };
    model.check_invariants()?;
    Ok(model)
}

fn power_name(base: &str, l: usize) -> String {
    if l == 1 {
        base.to_string()
    } else {
        format!("{base}^{l}")
    }
}

fn is_prime(k: u32) -> bool {
    k >= 2 && (2..).take_while(|d| d * d <= k).all(|d| !k.is_multiple_of(d))
}

fn surface_model(descriptor: &str, kind: SpaceKind, genus: u32) -> SpaceModel {
    let g = genus as usize;
    let mut b = Builder::new(descriptor, kind, 2);
    let names = (1..=g).flat_map(|i| [format!("a_{i}"), format!("b_{i}")]).collect();
    b.set(1, AbGroup::free(2 * g), names);
    b.set(2, AbGroup::free(1), vec!["z".into()]);
    b.finish(|p, i, q, j| match (p, q) {
        (0, _) | (_, 0) => Some(vec![BigInt::one()]),
        (1, 1) if i / 2 == j / 2 && i != j => {
            // a_i b_i = z, b_i a_i = -z
            Some(vec![BigInt::from(if i % 2 == 0 { 1 } else { -1 })])
        }
        (1, 1) => Some(vec![BigInt::zero()]),
        _ => None,
    })
}

fn torus_model(descriptor: &str, kind: SpaceKind, n: usize) -> SpaceModel {
    let mut b = Builder::new(descriptor, kind, n);
    let mut bases: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n + 1];
    for mask in 0u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        bases[set.len()].push(set);
    }
    for basis in &mut bases {
        basis.sort();
    }
    for (p, basis) in bases.iter().enumerate().skip(1) {
        let names = basis
            .iter()
            .map(|s| s.iter().map(|i| format!("u_{}", i + 1)).collect::<Vec<_>>().join("*"))
            .collect();
        b.set(p, AbGroup::free(basis.len()), names);
    }
    b.finish(move |p, i, q, j| {
        let s = &bases[p][i];
        let t = &bases[q][j];
        let mut out = vec![BigInt::zero(); bases[p + q].len()];
        if s.iter().any(|x| t.contains(x)) {
            return Some(out);
        }
        let inversions = s.iter().map(|x| t.iter().filter(|y| *y < x).count()).sum::<usize>();
        let mut u: Vec<usize> = s.iter().chain(t).copied().collect();
        u.sort();
        let pos = bases[p + q].iter().position(|b| *b == u).expect("basis element");
        out[pos] = if inversions % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        Some(out)
    })
}

struct Builder {
    descriptor: String,
    kind: SpaceKind,
    dimension: usize,
    groups: Vec<DegreeGroup>,
}

impl Builder {
    fn new(descriptor: &str, kind: SpaceKind, dimension: usize) -> Self {
        let mut groups = vec![DegreeGroup { group: AbGroup::trivial(), names: Vec::new() }; dimension + 1];
        groups[0] = DegreeGroup { group: AbGroup::free(1), names: vec!["1".into()] };
        Builder { descriptor: descriptor.into(), kind, dimension, groups }
    }

    fn set(&mut self, degree: usize, group: AbGroup, names: Vec<String>) {
        assert_eq!(group.num_generators(), names.len());
        self.groups[degree] = DegreeGroup { group, names };
    }

    /// `product(p, i, q, j)` gives coordinates of `gen_p,i ∪ gen_q,j`; a
    /// single coordinate may be returned for one-generator targets, and
    /// `None` means zero.
    fn finish(self, product: impl Fn(usize, usize, usize, usize) -> Option<Vec<BigInt>>) -> SpaceModel {
        let mut products = BTreeMap::new();
        for p in 0..=self.dimension {
            for q in 0..=self.dimension - p {
                let (gp, gq, gt) = (&self.groups[p], &self.groups[q], &self.groups[p + q]);
                if gp.names.is_empty() || gq.names.is_empty() || gt.names.is_empty() {
                    continue;
                }
                let table: ProductTable = (0..gp.names.len())
                    .map(|i| {
                        (0..gq.names.len())
                            .map(|j| {
                                let mut v = if p == 0 && q == 0 {
                                    vec![BigInt::one()]
                                } else if p == 0 || q == 0 {
                                    // unit law
                                    let idx = if p == 0 { j } else { i };
                                    let mut e = vec![BigInt::zero(); gt.names.len()];
                                    e[idx] = BigInt::one();
                                    e
                                } else {
                                    product(p, i, q, j).unwrap_or_else(|| vec![BigInt::zero(); gt.names.len()])
                                };
                                if v.len() != gt.names.len() {
                                    v.resize(gt.names.len(), BigInt::zero());
                                }
                                gt.group.reduce(&mut v);
                                v
                            })
                            .collect()
                    })
                    .collect();
                products.insert((p, q), table);
            }
        }
        SpaceModel {
            descriptor: self.descriptor,
            kind: self.kind,
            dimension: self.dimension,
            groups: self.groups,
            products,
            oriented: true,
            ring_structure_extrapolated: false,
        }
    }
}

impl SpaceModel {
    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn oriented(&self) -> bool {
        self.oriented
    }

    /// Degree of the fundamental class; equals the dimension for every
    /// catalog space.
    pub fn fundamental_degree(&self) -> usize {
        self.dimension
    }

    /// Set when the ring structure was extended beyond the cases where it is
    /// known to hold (lens models with composite `k`).
    pub fn ring_structure_extrapolated(&self) -> bool {
        self.ring_structure_extrapolated
    }

    /// `H^degree`; trivial above the dimension.
    pub fn group(&self, degree: usize) -> AbGroup {
        self.groups.get(degree).map(|g| g.group.clone()).unwrap_or_else(AbGroup::trivial)
    }

    pub fn generator_names(&self, degree: usize) -> &[String] {
        self.groups.get(degree).map(|g| g.names.as_slice()).unwrap_or(&[])
    }

    pub fn class<T: Into<BigInt>>(&self, degree: usize, coords: impl IntoIterator<Item = T>) -> Result<GradedClass> {
        let mut coords: Vec<BigInt> = coords.into_iter().map(Into::into).collect();
        let group = self.group(degree);
        if coords.len() != group.num_generators() {
            return Err(Error::InvalidClass(format!(
                "H^{degree}({}) has {} generators, got {} coordinates",
                self.descriptor,
                group.num_generators(),
                coords.len()
            )));
        }
        group.reduce(&mut coords);
        Ok(GradedClass { degree, coords })
    }

    pub fn zero(&self, degree: usize) -> GradedClass {
        GradedClass { degree, coords: vec![BigInt::zero(); self.group(degree).num_generators()] }
    }

    pub fn unit(&self) -> GradedClass {
        GradedClass { degree: 0, coords: vec![BigInt::one()] }
    }

    pub fn generator(&self, degree: usize, index: usize) -> GradedClass {
        let mut c = self.zero(degree);
        c.coords[index] = BigInt::one();
        c
    }

    pub fn generator_by_name(&self, degree: usize, name: &str) -> Option<GradedClass> {
        let idx = self.generator_names(degree).iter().position(|n| n == name)?;
        Some(self.generator(degree, idx))
    }

    /// Checks that `x` has the right number of coordinates for its degree.
    pub fn validate(&self, x: &GradedClass) -> Result<()> {
        let n = self.group(x.degree).num_generators();
        if x.coords.len() != n {
            return Err(Error::InvalidClass(format!(
                "class of degree {} has {} coordinates, H^{}({}) has {} generators",
                x.degree,
                x.coords.len(),
                x.degree,
                self.descriptor,
                n
            )));
        }
        Ok(())
    }

    pub fn add(&self, x: &GradedClass, y: &GradedClass) -> Result<GradedClass> {
        self.validate(x)?;
        self.validate(y)?;
        if x.degree != y.degree {
            return Err(Error::InvalidClass(format!("adding degrees {} and {}", x.degree, y.degree)));
        }
        self.class(x.degree, x.coords.iter().zip(&y.coords).map(|(a, b)| a + b))
    }

    pub fn scale(&self, x: &GradedClass, k: impl Into<BigInt>) -> GradedClass {
        let k = k.into();
        self.class(x.degree, x.coords.iter().map(|a| a * &k)).expect("validated shape")
    }

    pub fn neg(&self, x: &GradedClass) -> GradedClass {
        self.scale(x, -1)
    }

    pub fn sub(&self, x: &GradedClass, y: &GradedClass) -> Result<GradedClass> {
        self.add(x, &self.neg(y))
    }

    /// Cup product; fails when the degrees add up past the dimension.
    pub fn cup(&self, x: &GradedClass, y: &GradedClass) -> Result<GradedClass> {
        if x.degree + y.degree > self.dimension {
            return Err(Error::DegreeOverflow(x.degree, y.degree, self.dimension));
        }
        self.cup_total(x, y)
    }

    /// Cup product extended by zero above the dimension.
    pub fn cup_total(&self, x: &GradedClass, y: &GradedClass) -> Result<GradedClass> {
        self.validate(x)?;
        self.validate(y)?;
        let target = x.degree + y.degree;
        let mut out = vec![BigInt::zero(); self.group(target).num_generators()];
        if let Some(table) = self.products.get(&(x.degree, y.degree)) {
            for (i, a) in x.coords.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in y.coords.iter().enumerate() {
                    if b.is_zero() {
                        continue;
                    }
                    let ab = a * b;
                    for (o, t) in out.iter_mut().zip(&table[i][j]) {
                        *o += &ab * t;
                    }
                }
            }
        }
        self.class(target, out)
    }

    /// `x ↦ c ∪ x` as a homomorphism `H^degree → H^(degree + deg c)`.
    pub fn cup_map(&self, c: &GradedClass, degree: usize) -> Result<Homomorphism> {
        let dom = self.group(degree);
        let cod = self.group(degree + c.degree);
        let cols: Vec<Vec<BigInt>> = (0..dom.num_generators())
            .map(|i| Ok(self.cup_total(c, &self.generator(degree, i))?.coords))
            .collect::<Result<_>>()?;
        Homomorphism::new(dom, cod.clone(), IntMatrix::from_columns(cod.num_generators(), &cols))
    }

    pub fn to_json(&self) -> Value {
        let degrees: Vec<Value> = self
            .groups
            .iter()
            .enumerate()
            .map(|(d, g)| json!({"degree": d, "group": g.group.to_string(), "generators": g.names}))
            .collect();
        json!({
            "descriptor": self.descriptor,
            "dimension": self.dimension,
            "oriented": self.oriented,
            "ring_structure_extrapolated": self.ring_structure_extrapolated,
            "cohomology": degrees,
        })
    }

    /// Ring axioms, torsion compatibility and Poincaré duality modulo
    /// torsion.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |what: String| Err(Error::BadParameters(format!("{}: {what}", self.descriptor)));
        let gens = |p: usize| -> Vec<GradedClass> {
            (0..self.group(p).num_generators()).map(|i| self.generator(p, i)).collect()
        };
        let dim = self.dimension;
        for p in 0..=dim {
            for x in gens(p) {
                if self.cup_total(&self.unit(), &x)? != x || self.cup_total(&x, &self.unit())? != x {
                    return fail(format!("unit law fails for {x:?}"));
                }
                let order = self.group(p).generator_order(x.coords.iter().position(|c| !c.is_zero()).unwrap());
                for q in 0..=dim - p {
                    for y in gens(q) {
                        let xy = self.cup_total(&x, &y)?;
                        let yx = self.cup_total(&y, &x)?;
                        let sign = if (p * q) % 2 == 0 { 1 } else { -1 };
                        if xy != self.scale(&yx, sign) {
                            return fail(format!("graded commutativity fails for {x:?}, {y:?}"));
                        }
                        if !order.is_zero() && !self.scale(&xy, order.clone()).is_zero() {
                            return fail(format!("torsion incompatibility for {x:?}, {y:?}"));
                        }
                        for r in 0..=dim - p - q {
                            for z in gens(r) {
                                let left = self.cup_total(&xy, &z)?;
                                let right = self.cup_total(&x, &self.cup_total(&y, &z)?)?;
                                if left != right {
                                    return fail(format!("associativity fails for {x:?}, {y:?}, {z:?}"));
                                }
                            }
                        }
                    }
                }
            }
        }
        if self.oriented {
            let top = self.group(dim);
            if top != AbGroup::free(1) {
                return fail("top cohomology is not Z".into());
            }
            for p in 0..=dim {
                let (a, b) = (self.group(p), self.group(dim - p));
                if a.rank() != b.rank() {
                    return fail(format!("Betti numbers in degrees {p} and {} differ", dim - p));
                }
                let n = a.rank();
                let mut m = IntMatrix::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        m[(i, j)] = self.cup_total(&self.generator(p, i), &self.generator(dim - p, j))?.coords[0].clone();
                    }
                }
                if !m.determinant().abs().is_one() {
                    return fail(format!("pairing in degree {p} is not unimodular"));
                }
            }
        }
        Ok(())
    }
}

/// Degreewise Künneth formula `H^n(X × Y) = ⊕ H^p ⊗ H^q ⊕ ⊕ Tor(H^p, H^q')`
/// with `p + q = n` and `p + q' = n + 1`.
pub fn kunneth_groups(x: &SpaceModel, y: &SpaceModel) -> Vec<AbGroup> {
    let dim = x.dimension() + y.dimension();
    (0..=dim)
        .map(|n| {
            let mut acc = AbGroup::trivial();
            for p in 0..=n {
                acc = acc.direct_sum(&x.group(p).tensor(&y.group(n - p)));
            }
            for p in 0..=n + 1 {
                acc = acc.direct_sum(&x.group(p).tor(&y.group(n + 1 - p)));
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn groups(s: &SpaceModel) -> Vec<String> {
        (0..=s.dimension()).map(|d| s.group(d).to_string()).collect()
    }

    #[test]
    fn catalog_builds() {
        for d in ["pt", "s1", "s2", "s3", "surface:g=0", "surface:g=3", "cp:r=1", "cp:r=4", "torus:n=1", "torus:n=2", "torus:n=3", "lens:k=2,r=1", "lens:k=6,r=3"] {
            let s = make_space(d).unwrap();
            assert_eq!(s.descriptor(), d);
        }
    }

    #[test]
    fn unknown_descriptors() {
        for d in ["", "s4", "surface", "surface:g=-1", "surface:g=x", "cp:r=0", "torus:n=4", "lens:k=1,r=1", "lens:k=2", "lens:r=1,k=2", "cp:r=+2"] {
            assert!(matches!(make_space(d), Err(Error::UnknownDescriptor(_))), "{d}");
        }
    }

    #[test]
    fn surface_genus_two() {
        let s = make_space("surface:g=2").unwrap();
        assert_eq!(groups(&s), ["Z", "Z^4", "Z"]);
        let a1 = s.generator_by_name(1, "a_1").unwrap();
        let b1 = s.generator_by_name(1, "b_1").unwrap();
        let a2 = s.generator_by_name(1, "a_2").unwrap();
        let z = s.generator_by_name(2, "z").unwrap();
        assert_eq!(s.cup(&a1, &b1).unwrap(), z);
        assert_eq!(s.cup(&b1, &a1).unwrap(), s.neg(&z));
        assert!(s.cup(&a1, &a2).unwrap().is_zero());
    }

    #[test]
    fn projective_space() {
        let s = make_space("cp:r=3").unwrap();
        assert_eq!(groups(&s), ["Z", "0", "Z", "0", "Z", "0", "Z"]);
        let z = s.generator_by_name(2, "z").unwrap();
        assert_eq!(s.cup(&z, &z).unwrap(), s.generator_by_name(4, "z^2").unwrap());
        let x = s.generator(4, 0);
        assert_eq!(s.cup(&x, &s.unit()).unwrap(), x);
    }

    #[test]
    fn torus_is_exterior_algebra() {
        let t = make_space("torus:n=3").unwrap();
        assert_eq!(groups(&t), ["Z", "Z^3", "Z^3", "Z"]);
        assert_eq!(t.generator_names(2), ["u_1*u_2", "u_1*u_3", "u_2*u_3"]);
        let u: Vec<_> = (0..3).map(|i| t.generator(1, i)).collect();
        assert!(t.cup(&u[0], &u[0]).unwrap().is_zero());
        let u12 = t.cup(&u[0], &u[1]).unwrap();
        assert_eq!(u12, t.generator(2, 0));
        assert_eq!(t.cup(&u[1], &u[0]).unwrap(), t.neg(&u12));
        let vol = t.cup(&u12, &u[2]).unwrap();
        assert_eq!(vol, t.generator(3, 0));
        assert_eq!(t.cup(&t.cup(&u[1], &u[2]).unwrap(), &u[0]).unwrap(), vol);
    }

    #[test]
    fn lens_models() {
        let l = lens_like_model(2, 1).unwrap();
        assert_eq!(groups(&l), ["Z", "0", "Z/2", "Z"]);
        let l = lens_like_model(5, 2).unwrap();
        assert_eq!(groups(&l), ["Z", "0", "Z/5", "0", "Z/5", "Z"]);
        let x = l.generator_by_name(2, "x").unwrap();
        assert_eq!(l.cup(&x, &x).unwrap(), l.generator_by_name(4, "x^2").unwrap());
        assert!(!l.ring_structure_extrapolated());
        assert!(lens_like_model(6, 2).unwrap().ring_structure_extrapolated());
        assert!(matches!(lens_like_model(1, 2), Err(Error::BadParameters(_))));
        assert!(matches!(lens_like_model(3, 0), Err(Error::BadParameters(_))));
    }

    #[test]
    fn degree_overflow() {
        let s = make_space("s2").unwrap();
        let z = s.generator(2, 0);
        assert!(matches!(s.cup(&z, &z), Err(Error::DegreeOverflow(2, 2, 2))));
        let zz = s.cup_total(&z, &z).unwrap();
        assert_eq!(zz.degree(), 4);
        assert!(zz.is_zero());
    }

    #[test]
    fn torus_matches_product_of_circles() {
        let s1 = make_space("s1").unwrap();
        let t2 = make_space("torus:n=2").unwrap();
        let prod = kunneth_groups(&s1, &s1);
        assert_eq!(prod, (0..=2).map(|d| t2.group(d)).collect::<Vec<_>>());
    }

    #[test]
    fn kunneth_with_torsion() {
        // L(2,1) × S^1
        let l = lens_like_model(2, 1).unwrap();
        let s1 = make_space("s1").unwrap();
        let g: Vec<String> = kunneth_groups(&l, &s1).iter().map(ToString::to_string).collect();
        assert_eq!(g, ["Z", "Z", "Z/2", "Z + Z/2", "Z"]);
    }
}
