//! Cohomology of circle bundles from the Gysin sequence.
//!
//! In degree `n` the sequence gives
//! `0 → coker(∪c: H^{n-2}B → H^nB) → H^nE → ker(∪c: H^{n-1}B → H^{n+1}B) → 0`,
//! the first map being `π^*` and the second `π_!`. Each degree is solved as an
//! extension problem and, when the middle group is pinned down, realized by
//! an explicit presentation so that `π^*` and `π_!` are honest matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::abgroup::{
    analyze_hom, resolve_extension, AbGroup, ExtensionResult, Homomorphism, IntMatrix, Subquotient,
};
use crate::error::{Error, Result};
use crate::space::{GradedClass, SpaceModel};

/// Largest number of extension cocycles tried when realizing a known group.
const EPSILON_SEARCH_LIMIT: u64 = 100_000;

#[derive(Clone, Debug)]
pub struct CircleBundle {
    base: SpaceModel,
    c: GradedClass,
}

impl CircleBundle {
    pub fn new(base: SpaceModel, c: GradedClass) -> Result<Self> {
        if c.degree() != 2 {
            return Err(Error::InvalidClass(format!("Chern class must have degree 2, got {}", c.degree())));
        }
        base.validate(&c)?;
        Ok(CircleBundle { base, c })
    }

    pub fn base(&self) -> &SpaceModel {
        &self.base
    }

    pub fn chern_class(&self) -> &GradedClass {
        &self.c
    }

    /// Dimension of the total space.
    pub fn total_dimension(&self) -> usize {
        self.base.dimension() + 1
    }
}

/// Explicit model of `H^nE` as an extension.
#[derive(Clone, Debug)]
struct Realization {
    /// Extension cocycle: for each torsion generator of the kernel part, the
    /// image of `order · lift` in cokernel coordinates.
    epsilon: Vec<Vec<BigInt>>,
    total: Subquotient,
    pullback: Homomorphism,
    pushforward: Homomorphism,
}

#[derive(Clone, Debug)]
pub struct GysinDegree {
    degree: usize,
    coker: Subquotient,
    kernel: Subquotient,
    /// ±1 per kernel generator; only the top degree is ever flipped.
    kernel_signs: Vec<BigInt>,
    assembled: ExtensionResult,
    realization: Option<Realization>,
}

impl GysinDegree {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `coker(∪c)`, the image of `π^*`.
    pub fn coker_part(&self) -> &AbGroup {
        self.coker.group()
    }

    /// `ker(∪c)`, the image of `π_!`.
    pub fn ker_part(&self) -> &AbGroup {
        self.kernel.group()
    }

    pub fn assembled(&self) -> &ExtensionResult {
        &self.assembled
    }

    pub fn pullback(&self) -> Option<&Homomorphism> {
        self.realization.as_ref().map(|r| &r.pullback)
    }

    pub fn pushforward(&self) -> Option<&Homomorphism> {
        self.realization.as_ref().map(|r| &r.pushforward)
    }

    /// Whether the realized extension is the split one.
    pub fn is_split(&self) -> Option<bool> {
        self.realization.as_ref().map(|r| r.epsilon.iter().flatten().all(Zero::is_zero))
    }

    fn signed_kernel_coords(&self, t: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut q = self.kernel.coords_of(t)?;
        for (x, s) in q.iter_mut().zip(&self.kernel_signs) {
            *x *= s;
        }
        self.kernel.group().reduce(&mut q);
        Some(q)
    }
}

#[derive(Clone, Debug)]
pub struct GysinResult {
    bundle: CircleBundle,
    degrees: Vec<GysinDegree>,
}

/// Solves the Gysin sequence in every degree `0..=dim B + 1`.
pub fn gysin_cohomology(bundle: &CircleBundle) -> GysinResult {
    let base = &bundle.base;
    let c = &bundle.c;
    let top = bundle.total_dimension();
    let mut degrees: Vec<GysinDegree> = (0..=top)
        .map(|n| {
            let into = if n >= 2 {
                base.cup_map(c, n - 2).expect("validated class")
            } else {
                Homomorphism::zero(AbGroup::trivial(), base.group(n))
            };
            let coker = analyze_hom(&into).expect("well-defined map").cokernel;
            let out = if n >= 1 {
                base.cup_map(c, n - 1).expect("validated class")
            } else {
                Homomorphism::zero(AbGroup::trivial(), AbGroup::trivial())
            };
            let kernel = analyze_hom(&out).expect("well-defined map").kernel;
            let assembled = resolve_extension(coker.group(), kernel.group());
            let kernel_signs = vec![BigInt::one(); kernel.group().num_generators()];
            GysinDegree { degree: n, coker, kernel, kernel_signs, assembled, realization: None }
        })
        .collect();

    if c.is_zero() {
        // E = B × S^1
        for d in &mut degrees {
            d.assembled = ExtensionResult::Resolved(d.coker_part().direct_sum(d.ker_part()));
        }
    }
    if base.oriented() {
        apply_duality(&mut degrees, top);
    }

    // fundamental class normalization: π_! o_E is the top generator of B
    let last = &mut degrees[top];
    if last.kernel.group().num_generators() == 1
        && last.kernel.ambient_dim() == 1
        && last.kernel.generators()[(0, 0)].is_negative()
    {
        last.kernel_signs[0] = -BigInt::one();
    }

    for d in &mut degrees {
        if let ExtensionResult::Resolved(target) = d.assembled.clone() {
            d.realization = realize(base, d, &target);
        }
    }
    GysinResult { bundle: bundle.clone(), degrees }
}

/// Torsion linking on the closed oriented total space: the torsion of
/// `H^n E` and of `H^{d-n+1} E` agree. Candidates are filtered against the
/// partner degree until nothing changes.
fn apply_duality(degrees: &mut [GysinDegree], top: usize) {
    loop {
        let mut changed = false;
        for n in 1..=top {
            let partner = top + 1 - n;
            let ExtensionResult::Ambiguous(a) = &degrees[n].assembled else { continue };
            let allowed: Vec<AbGroup> =
                degrees[partner].assembled.candidates().iter().map(AbGroup::torsion_subgroup).collect();
            let kept: Vec<AbGroup> =
                a.candidates.iter().filter(|g| allowed.contains(&g.torsion_subgroup())).cloned().collect();
            if kept.is_empty() || kept.len() == a.candidates.len() {
                continue;
            }
            changed = true;
            degrees[n].assembled = if kept.len() == 1 {
                ExtensionResult::Resolved(kept[0].clone())
            } else {
                let mut a = a.clone();
                a.candidates = kept;
                ExtensionResult::Ambiguous(a)
            };
        }
        if !changed {
            break;
        }
    }
}

/// Finds an extension cocycle whose middle group is `target`, trying the
/// split one first, and builds `π^*` and `π_!` from it.
fn realize(base: &SpaceModel, d: &GysinDegree, target: &AbGroup) -> Option<Realization> {
    let a = d.coker.group();
    let q = d.kernel.group();
    let torsion_q: Vec<(usize, BigInt)> =
        (0..q.num_generators()).map(|j| (j, q.generator_order(j))).filter(|(_, e)| !e.is_zero()).collect();
    // ε_j ranges over A / e_j A
    let ranges: Vec<Vec<BigInt>> = torsion_q
        .iter()
        .map(|(_, e)| (0..a.num_generators()).map(|i| a.generator_order(i).gcd(e)).collect())
        .collect();
    let mut total_count = BigInt::one();
    for r in ranges.iter().flatten() {
        total_count *= r;
    }
    if total_count > BigInt::from(EPSILON_SEARCH_LIMIT) {
        return None;
    }
    let flat: Vec<BigInt> = ranges.iter().flatten().cloned().collect();
    let mut counter = vec![BigInt::zero(); flat.len()];
    loop {
        let epsilon: Vec<Vec<BigInt>> = match a.num_generators() {
            0 => vec![Vec::new(); torsion_q.len()],
            na => counter.chunks(na).map(<[BigInt]>::to_vec).collect(),
        };
        let total = presentation(a, q, &torsion_q, &epsilon);
        if total.group() == target {
            return Some(build_maps(base, d, epsilon, total));
        }
        // odometer step
        let mut i = 0;
        loop {
            if i == flat.len() {
                return None;
            }
            counter[i] += 1;
            if counter[i] < flat[i] {
                break;
            }
            counter[i] = BigInt::zero();
            i += 1;
        }
    }
}

/// `A ⊕ Q`-coordinates modulo the relations of `A` and `e_j q_j - ε_j`.
fn presentation(a: &AbGroup, q: &AbGroup, torsion_q: &[(usize, BigInt)], epsilon: &[Vec<BigInt>]) -> Subquotient {
    let na = a.num_generators();
    let n = na + q.num_generators();
    let mut rels: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..na {
        let o = a.generator_order(i);
        if !o.is_zero() {
            let mut v = vec![BigInt::zero(); n];
            v[i] = o;
            rels.push(v);
        }
    }
    for ((j, e), eps) in torsion_q.iter().zip(epsilon) {
        let mut v = vec![BigInt::zero(); n];
        v[na + j] = e.clone();
        for (i, x) in eps.iter().enumerate() {
            v[i] = -x;
        }
        rels.push(v);
    }
    Subquotient::new(&IntMatrix::identity(n), &IntMatrix::from_columns(n, &rels)).expect("relations lie in the ambient lattice")
}

fn build_maps(base: &SpaceModel, d: &GysinDegree, epsilon: Vec<Vec<BigInt>>, total: Subquotient) -> Realization {
    let n = d.degree;
    let na = d.coker.group().num_generators();
    let nq = d.kernel.group().num_generators();
    let hb = base.group(n);
    let cols: Vec<Vec<BigInt>> = (0..hb.num_generators())
        .map(|i| {
            let mut e = vec![BigInt::zero(); hb.num_generators()];
            e[i] = BigInt::one();
            let mut v = d.coker.coords_of(&e).expect("cokernel projection is total");
            v.resize(na + nq, BigInt::zero());
            total.coords_of(&v).expect("ambient vector")
        })
        .collect();
    let pullback = Homomorphism::new(hb, total.group().clone(), IntMatrix::from_columns(total.group().num_generators(), &cols))
        .expect("pullback is well defined");

    let below = if n >= 1 { base.group(n - 1) } else { AbGroup::trivial() };
    let k = d.kernel.generators();
    let gens = total.generators();
    let cols: Vec<Vec<BigInt>> = (0..gens.cols())
        .map(|g| {
            let col = gens.column(g);
            let qpart: Vec<BigInt> = col[na..].iter().zip(&d.kernel_signs).map(|(x, s)| x * s).collect();
            k.mul_vec(&qpart)
        })
        .collect();
    let pushforward = Homomorphism::new(total.group().clone(), below.clone(), IntMatrix::from_columns(below.num_generators(), &cols))
        .expect("pushforward is well defined");
    Realization { epsilon, total, pullback, pushforward }
}

impl GysinResult {
    pub fn bundle(&self) -> &CircleBundle {
        &self.bundle
    }

    pub fn total_dimension(&self) -> usize {
        self.bundle.total_dimension()
    }

    pub fn degrees(&self) -> &[GysinDegree] {
        &self.degrees
    }

    /// Degree data; degrees above the total dimension have none.
    pub fn degree(&self, n: usize) -> Result<&GysinDegree> {
        self.degrees.get(n).ok_or(Error::DegreeOutOfRange(n))
    }

    /// `H^n E` when resolved; trivial above the dimension.
    pub fn group(&self, n: usize) -> Option<AbGroup> {
        match self.degrees.get(n) {
            Some(d) => d.assembled.resolved().cloned(),
            None => Some(AbGroup::trivial()),
        }
    }

    pub fn assembled(&self, n: usize) -> ExtensionResult {
        self.degrees.get(n).map(|d| d.assembled.clone()).unwrap_or(ExtensionResult::Resolved(AbGroup::trivial()))
    }

    pub fn is_fully_resolved(&self) -> bool {
        self.degrees.iter().all(|d| d.realization.is_some())
    }

    fn realized(&self, n: usize) -> Result<&Realization> {
        let d = self.degree(n)?;
        d.realization.as_ref().ok_or(Error::Unresolved(n))
    }

    /// A class on `E` in the canonical generators of the realized `H^n E`.
    pub fn class<T: Into<BigInt>>(&self, n: usize, coords: impl IntoIterator<Item = T>) -> Result<GradedClass> {
        let g = self.realized(n)?.total.group();
        let mut coords: Vec<BigInt> = coords.into_iter().map(Into::into).collect();
        if coords.len() != g.num_generators() {
            return Err(Error::InvalidClass(format!("H^{n}(E) has {} generators, got {}", g.num_generators(), coords.len())));
        }
        g.reduce(&mut coords);
        Ok(GradedClass::raw(n, coords))
    }

    pub fn apply_pullback(&self, x: &GradedClass) -> Result<GradedClass> {
        self.bundle.base.validate(x)?;
        let r = self.realized(x.degree())?;
        Ok(GradedClass::raw(x.degree(), r.pullback.apply(x.coords())))
    }

    /// `π_!: H^n E → H^{n-1} B`.
    pub fn pushforward(&self, h: &GradedClass) -> Result<GradedClass> {
        if h.degree() == 0 || h.degree() >= self.degrees.len() {
            return Err(Error::DegreeOutOfRange(h.degree()));
        }
        let r = self.realized(h.degree())?;
        if h.coords().len() != r.total.group().num_generators() {
            return Err(Error::InvalidClass(format!("class does not live in H^{}(E)", h.degree())));
        }
        self.bundle.base.class(h.degree() - 1, r.pushforward.apply(h.coords()))
    }

    /// A class `h ∈ H^n E` with `π_! h = t` whose image in the cokernel part
    /// is the class of `b`; for the split extension this is `h_t + π^* b`
    /// with `h_t` the lift of `t` along the chosen splitting.
    pub fn lift(&self, t: &GradedClass, b: &GradedClass) -> Result<GradedClass> {
        let n = b.degree();
        if t.degree() + 1 != n {
            return Err(Error::InvalidClass(format!("lift needs degrees n-1 and n, got {} and {n}", t.degree())));
        }
        self.bundle.base.validate(t)?;
        self.bundle.base.validate(b)?;
        let d = self.degree(n)?;
        let r = self.realized(n)?;
        let q = d.signed_kernel_coords(t.coords()).ok_or_else(|| {
            Error::InvalidClass(format!("{t:?} is not in the kernel of cup with the Chern class"))
        })?;
        let mut v = d.coker.coords_of(b.coords()).expect("cokernel projection is total");
        v.extend(q);
        Ok(GradedClass::raw(n, r.total.coords_of(&v).expect("ambient vector")))
    }

    /// Inverse of [`lift`](Self::lift) for split degrees: returns `(t, b)`
    /// with `b` a representative in the chosen cokernel generators.
    pub fn decompose(&self, h: &GradedClass) -> Result<(GradedClass, GradedClass)> {
        let n = h.degree();
        let d = self.degree(n)?;
        let r = self.realized(n)?;
        if d.is_split() != Some(true) {
            return Err(Error::Unresolved(n));
        }
        let amb = r.total.generators().mul_vec(h.coords());
        let na = d.coker.group().num_generators();
        let b = self.bundle.base.class(n, d.coker.generators().mul_vec(&amb[..na]))?;
        let t = if n == 0 { self.bundle.base.zero(0) } else { self.pushforward(h)? };
        Ok((t, b))
    }

    pub fn to_json(&self) -> Value {
        let degrees: Vec<Value> = self
            .degrees
            .iter()
            .map(|d| {
                json!({
                    "degree": d.degree,
                    "coker_part": d.coker_part().to_string(),
                    "ker_part": d.ker_part().to_string(),
                    "group": d.assembled.to_string(),
                    "resolved": d.assembled.is_resolved(),
                })
            })
            .collect();
        json!({
            "base": self.bundle.base.descriptor(),
            "c": self.bundle.c.to_json(),
            "dimension": self.total_dimension(),
            "cohomology": degrees,
        })
    }
}

/// `χ = c ∪ ĉ ∈ H^4 B`; the sphere bundle admits a Thom class iff `χ = 0`.
pub fn euler_obstruction(base: &SpaceModel, c: &GradedClass, c_hat: &GradedClass) -> Result<(GradedClass, bool)> {
    for x in [c, c_hat] {
        if x.degree() != 2 {
            return Err(Error::InvalidClass(format!("expected a degree-2 class, got degree {}", x.degree())));
        }
    }
    let chi = base.cup_total(c, c_hat)?;
    let exists = chi.is_zero();
    Ok((chi, exists))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{lens_like_model, make_space};

    fn solve(desc: &str, c: &[i64]) -> GysinResult {
        let base = make_space(desc).unwrap();
        let c = base.class(2, c.iter().copied()).unwrap();
        gysin_cohomology(&CircleBundle::new(base, c).unwrap())
    }

    fn table(r: &GysinResult) -> Vec<String> {
        (0..=r.total_dimension()).map(|n| r.assembled(n).to_string()).collect()
    }

    #[test]
    fn hopf_bundle_is_the_three_sphere() {
        let r = solve("s2", &[1]);
        assert_eq!(table(&r), ["Z", "0", "0", "Z"]);
        let o = r.class(3, [1]).unwrap();
        assert_eq!(r.pushforward(&o).unwrap(), r.bundle().base().class(2, [1]).unwrap());
        let r = solve("s2", &[-1]);
        let o = r.class(3, [1]).unwrap();
        assert_eq!(r.pushforward(&o).unwrap().coords(), [BigInt::one()]);
    }

    #[test]
    fn bundles_over_surfaces() {
        for (g, k) in [(0, 3), (2, 2), (3, -5)] {
            let r = solve(&format!("surface:g={g}"), &[k]);
            let tg = AbGroup::free(2 * g);
            let expected = [
                AbGroup::free(1),
                tg.clone(),
                tg.direct_sum(&AbGroup::cyclic(k)),
                AbGroup::free(1),
            ];
            for (n, e) in expected.iter().enumerate() {
                assert_eq!(r.group(n).as_ref(), Some(e), "g={g} k={k} n={n}");
            }
            let base = r.bundle().base();
            let n = r.class(3, [4]).unwrap();
            assert_eq!(r.pushforward(&n).unwrap(), base.class(2, [4]).unwrap());
        }
    }

    #[test]
    fn lens_spaces_over_projective_space() {
        let r = solve("cp:r=2", &[3]);
        assert_eq!(table(&r), ["Z", "0", "Z/3", "0", "Z/3", "Z"]);
        let r = solve("cp:r=1", &[2]);
        assert_eq!(table(&r), ["Z", "0", "Z/2", "Z"]);
        assert_eq!(table(&solve("cp:r=3", &[-4])), ["Z", "0", "Z/4", "0", "Z/4", "0", "Z/4", "Z"]);
    }

    #[test]
    fn trivial_bundle_is_a_product() {
        let r = solve("surface:g=1", &[0]);
        assert_eq!(table(&r), ["Z", "Z^3", "Z^3", "Z"]);
        let r = solve("cp:r=2", &[0]);
        assert_eq!(table(&r), ["Z", "Z", "Z", "Z", "Z", "Z"]);
    }

    #[test]
    fn nonsplit_top_extension_over_lens_model() {
        for (k, rr) in [(3, 2), (2, 2), (5, 3)] {
            let base = lens_like_model(k, rr).unwrap();
            let x = base.class(2, [1]).unwrap();
            let res = gysin_cohomology(&CircleBundle::new(base, x).unwrap());
            let top = 2 * rr as usize + 1;
            let d = res.degree(top).unwrap();
            assert_eq!(d.coker_part(), &AbGroup::free(1));
            assert_eq!(d.ker_part(), &AbGroup::cyclic(k));
            assert_eq!(res.group(top), Some(AbGroup::free(1)));
            assert_eq!(d.is_split(), Some(false));
            assert!(res.is_fully_resolved());
        }
    }

    #[test]
    fn pushforward_kills_pullbacks() {
        for (desc, c) in [("surface:g=2", vec![3]), ("cp:r=2", vec![2]), ("torus:n=3", vec![1, 0, 2]), ("s2", vec![5])] {
            let r = solve(desc, &c);
            for d in r.degrees().iter().skip(1) {
                let (Some(pb), Some(pf)) = (d.pullback(), d.pushforward()) else { panic!("unrealized") };
                assert!(pf.compose(pb).unwrap().is_zero(), "{desc} degree {}", d.degree());
            }
        }
    }

    #[test]
    fn lift_round_trip() {
        let r = solve("torus:n=3", &[1, 0, 0]);
        let base = r.bundle().base().clone();
        // c = u_1 u_2; t = u_1 u_3 satisfies c ∪ t = 0
        let t = base.class(2, [0, 1, 0]).unwrap();
        let b = base.class(3, [0]).unwrap();
        let h = r.lift(&t, &b).unwrap();
        assert_eq!(r.pushforward(&h).unwrap(), t);
        let (t2, _) = r.decompose(&h).unwrap();
        assert_eq!(t2, t);
        assert!(r.lift(&base.class(1, [0, 0, 1]).unwrap(), &base.class(2, [0, 0, 0]).unwrap()).is_err());
    }

    #[test]
    fn euler_class() {
        let s2 = make_space("s2").unwrap();
        let z = s2.class(2, [1]).unwrap();
        assert!(euler_obstruction(&s2, &z, &z).unwrap().1);
        let cp2 = make_space("cp:r=2").unwrap();
        let z = cp2.class(2, [1]).unwrap();
        let (chi, ok) = euler_obstruction(&cp2, &z, &z).unwrap();
        assert!(!ok);
        assert_eq!(chi, cp2.generator_by_name(4, "z^2").unwrap());
    }

    #[test]
    fn out_of_range() {
        let r = solve("s2", &[1]);
        let h = GradedClass::raw(5, vec![]);
        assert!(matches!(r.pushforward(&h), Err(Error::DegreeOutOfRange(5))));
    }
}
