//! K-theory at desk scale: degenerate Atiyah–Hirzebruch assembly, the
//! twisted formula for 3-manifolds, line bundles over `CP^r` and the
//! admissibility checks on the basic pair.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::abgroup::{AbGroup, ExtensionResult};
use crate::error::{Error, Result};
use crate::gysin::{gysin_cohomology, CircleBundle, GysinResult};
use crate::pair::{dualize, Pair};
use crate::space::{lens_like_model, make_space, SpaceModel};

pub const AHSS_DEGENERATE: &str = "AHSS-degenerate";
pub const EXTENSION_SPLIT: &str = "extension-split";
pub const EXTENSION_UNIQUE: &str = "extension-unique";
pub const EXTENSION_AMBIGUOUS: &str = "extension-ambiguous";
pub const COMPLETION_THEOREM: &str = "A_{2^r} cyclic (completion theorem)";
pub const THREE_MANIFOLD_TWIST: &str = "twisted 3-manifold formula";
pub const VIA_T_DUALITY: &str = "via T-duality";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KGroups {
    pub k0: ExtensionResult,
    pub k1: ExtensionResult,
    pub assumptions: Vec<String>,
}

impl KGroups {
    fn flag(&mut self, f: &str) {
        if !self.assumptions.iter().any(|a| a == f) {
            self.assumptions.push(f.to_string());
        }
    }

    /// Degree shift by one.
    pub fn shifted(&self) -> KGroups {
        KGroups { k0: self.k1.clone(), k1: self.k0.clone(), assumptions: self.assumptions.clone() }
    }

    pub fn degree(&self, i: usize) -> &ExtensionResult {
        if i.is_multiple_of(2) {
            &self.k0
        } else {
            &self.k1
        }
    }

    /// Componentwise isomorphism as far as decidable.
    pub fn is_isomorphic(&self, other: &KGroups) -> Option<bool> {
        match (self.k0.is_isomorphic(&other.k0), self.k1.is_isomorphic(&other.k1)) {
            (Some(false), _) | (_, Some(false)) => Some(false),
            (Some(true), Some(true)) => Some(true),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"k0": self.k0.to_string(), "k1": self.k1.to_string(), "assumptions": self.assumptions})
    }
}

impl fmt::Display for KGroups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K0 = {}, K1 = {}", self.k0, self.k1)
    }
}

/// Untwisted K-theory from a cohomology table `H^0..H^d` of a connected
/// space, assuming the spectral sequence collapses.
///
/// Differentials are rationally zero, so `d_r: H^p → H^{p+r}` vanishes when
/// the target is torsion-free; on `H^1` and `H^2` the first one, `d_3`, is
/// an integral Steenrod operation of too high degree and vanishes as well.
/// Sources in degree 0 survive because a point splits off. If any
/// differential escapes these arguments the result is `UnsupportedDimension`.
pub fn k_untwisted(table: &[ExtensionResult]) -> Result<KGroups> {
    let top = table.len().saturating_sub(1);
    let torsion_free = |n: usize| table[n].candidates().iter().all(AbGroup::is_free);
    let nonzero = |n: usize| table[n].candidates().iter().any(|g| !g.is_trivial());
    for p in 1..=top {
        if !nonzero(p) {
            continue;
        }
        for r in (3..=top - p).step_by(2) {
            let steenrod = r == 3 && p <= 2;
            if !steenrod && !torsion_free(p + r) {
                return Err(Error::UnsupportedDimension(format!(
                    "cannot rule out d_{r}: H^{p} → H^{} in a space of dimension {top}",
                    p + r
                )));
            }
        }
    }

    let mut groups = KGroups {
        k0: ExtensionResult::Resolved(AbGroup::trivial()),
        k1: ExtensionResult::Resolved(AbGroup::trivial()),
        assumptions: vec![AHSS_DEGENERATE.to_string()],
    };
    let mut all_split = true;
    for parity in 0..2 {
        // filtration quotients from the top degree down
        let mut acc = ExtensionResult::Resolved(AbGroup::trivial());
        for p in (0..=top).rev().filter(|p| p % 2 == parity) {
            let sub_trivial = acc.candidates().iter().all(AbGroup::is_trivial);
            let quot_free = table[p].candidates().iter().all(AbGroup::is_free);
            all_split &= sub_trivial || quot_free;
            acc = acc.extend_by_result(&table[p]);
        }
        if parity == 0 {
            groups.k0 = acc;
        } else {
            groups.k1 = acc;
        }
    }
    if all_split {
        groups.flag(EXTENSION_SPLIT);
    } else if groups.k0.is_resolved() && groups.k1.is_resolved() {
        groups.flag(EXTENSION_UNIQUE);
    }
    if !(groups.k0.is_resolved() && groups.k1.is_resolved()) {
        groups.flag(EXTENSION_AMBIGUOUS);
    }
    Ok(groups)
}

pub fn k_of_space(space: &SpaceModel) -> Result<KGroups> {
    let table: Vec<ExtensionResult> =
        (0..=space.dimension()).map(|n| ExtensionResult::Resolved(space.group(n))).collect();
    k_untwisted(&table)
}

pub fn k_of_bundle(result: &GysinResult) -> Result<KGroups> {
    let table: Vec<ExtensionResult> = (0..=result.total_dimension()).map(|n| result.assembled(n)).collect();
    k_untwisted(&table)
}

/// `K^*(E, n)` for a closed oriented 3-manifold `E` and a twist `n` times
/// the generator of `H^3`: the reduced `K^0`, and `K^1` with one free
/// summand replaced by `Z/n`. A zero twist returns the input unchanged.
pub fn k_twisted_3manifold(k_of_e: &KGroups, n: i64) -> Result<KGroups> {
    if n == 0 {
        return Ok(k_of_e.clone());
    }
    let k0 = k_of_e
        .k0
        .drop_free_rank(1)
        .ok_or_else(|| Error::BadParameters(format!("K^0 = {} has no free summand", k_of_e.k0)))?;
    let k1 = match &k_of_e.k1 {
        ExtensionResult::Resolved(g) if g.is_free() && g.rank() >= 1 => {
            ExtensionResult::Resolved(AbGroup::free(g.rank() - 1).direct_sum(&AbGroup::cyclic(n)))
        }
        other => {
            return Err(Error::BadParameters(format!("K^1 = {other} is not that of a closed oriented 3-manifold")))
        }
    };
    let mut out = KGroups { k0, k1, assumptions: k_of_e.assumptions.clone() };
    out.flag(THREE_MANIFOLD_TWIST);
    Ok(out)
}

fn bundle_over(base: SpaceModel, c: i64) -> Result<GysinResult> {
    let c = base.class(2, [c])?;
    Ok(gysin_cohomology(&CircleBundle::new(base, c)?))
}

/// `K(E_{n,r})` for the circle bundle of `n·z` over `CP^r`, with `A_{2^r}`
/// made cyclic.
fn k_line_bundle(n: i64, r: u32) -> Result<KGroups> {
    let mut k = k_of_bundle(&bundle_over(make_space(&format!("cp:r={r}"))?, n)?)?;
    if n.abs() == 2 {
        if let ExtensionResult::Ambiguous(a) = &k.k0 {
            let cyclic = AbGroup::free(a.rank).direct_sum(&AbGroup::cyclic(num_traits::pow(BigInt::from(2), r as usize)));
            if !a.candidates.contains(&cyclic) {
                return Err(Error::BadParameters(format!("{cyclic} is not a candidate for K^0")));
            }
            k.k0 = ExtensionResult::Resolved(cyclic);
            k.assumptions.retain(|f| f != EXTENSION_AMBIGUOUS);
            k.flag(COMPLETION_THEOREM);
        }
    }
    Ok(k)
}

/// Twisted K-theory of `E_{n,r} → CP^r` with twist `k`.
///
/// For `r = 1` the total space is a 3-manifold and the twisted formula
/// applies. For `r > 1` only `E_{0,r}` carries twists, handled by passing to
/// the dual pair.
pub fn k_cpr(n: i64, k: i64, r: u32) -> Result<KGroups> {
    if r < 1 {
        return Err(Error::BadParameters("r must be at least 1".into()));
    }
    if r == 1 {
        let untwisted = k_line_bundle(n, 1)?;
        return k_twisted_3manifold(&untwisted, k);
    }
    match (n, k) {
        (_, 0) => k_line_bundle(n, r),
        (0, _) => {
            let base = Arc::new(make_space(&format!("cp:r={r}"))?);
            let pair = Pair::from_coords(base, &[0], &[k], &[])?;
            let dual = dualize(&pair);
            debug_assert!(dual.t().is_zero());
            let c_hat = dual.c().coords()[0].clone();
            let c_hat: i64 = c_hat.try_into().map_err(|_| Error::BadParameters("twist out of range".into()))?;
            let mut out = k_line_bundle(c_hat, r)?.shifted();
            out.flag(VIA_T_DUALITY);
            Ok(out)
        }
        _ => Err(Error::UnsupportedTwist(format!(
            "E_{{{n},{r}}} has H^3 = 0 for r > 1, so the twist {k} does not exist"
        ))),
    }
}

/// Twisted K-theory of the circle bundle of degree `k` over a genus `g`
/// surface with twist `n`.
pub fn k_surface_bundle(g: u32, k: i64, n: i64) -> Result<KGroups> {
    let untwisted = k_of_bundle(&bundle_over(make_space(&format!("surface:g={g}"))?, k)?)?;
    k_twisted_3manifold(&untwisted, n)
}

/// Checks `K^i(E_k, n) ≅ K^{i+1}` of the dual pair over a genus `g` surface.
pub fn verify_tduality_k(g: u32, k: i64, n: i64) -> bool {
    let check = || -> Result<bool> {
        let base = Arc::new(make_space(&format!("surface:g={g}"))?);
        let pair = Pair::from_coords(base, &[k], &[n], &[])?;
        let dual = dualize(&pair);
        let to_i64 = |x: &BigInt| -> Result<i64> { x.try_into().map_err(|_| Error::BadParameters("out of range".into())) };
        let lhs = k_surface_bundle(g, k, n)?;
        let rhs = k_surface_bundle(g, to_i64(&dual.c().coords()[0])?, to_i64(&dual.t().coords()[0])?)?;
        Ok(lhs.is_isomorphic(&rhs.shifted()) == Some(true))
    };
    check().unwrap_or(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theory {
    /// Complex K-theory, coefficients `Z[B, B^{-1}]`.
    K,
    /// Periodized real cohomology, coefficients `R[z, z^{-1}]`.
    HR,
}

impl Theory {
    pub fn name(self) -> &'static str {
        match self {
            Theory::K => "K",
            Theory::HR => "HR",
        }
    }

    /// The periodicity element appearing in the transform.
    fn periodicity(self) -> &'static str {
        match self {
            Theory::K => "B",
            Theory::HR => "z",
        }
    }

    /// Units of the degree-zero coefficient ring.
    fn is_unit(self, x: i64) -> bool {
        match self {
            Theory::K => x.abs() == 1,
            Theory::HR => x != 0,
        }
    }
}

/// Coefficient of a transform entry: `coeff · periodicity^power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymbolicEntry {
    pub coeff: i64,
    pub power: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub theory: Theory,
    pub g: i64,
    /// Rows are the images of `1` and `u` in the basis `(1, u)`.
    pub matrix: [[SymbolicEntry; 2]; 2],
    pub is_iso: bool,
}

impl AdmissibilityReport {
    pub fn render_entry(&self, e: SymbolicEntry) -> String {
        match (e.coeff, e.power) {
            (0, _) => "0".into(),
            (c, 0) => c.to_string(),
            (1, p) => power(self.theory.periodicity(), p),
            (c, p) => format!("{c}{}", power(self.theory.periodicity(), p)),
        }
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<String>> =
            self.matrix.iter().map(|row| row.iter().map(|&e| self.render_entry(e)).collect()).collect();
        json!({"theory": self.theory.name(), "g": self.g, "matrix": rows, "is_iso": self.is_iso})
    }
}

fn power(sym: &str, p: u32) -> String {
    if p == 1 {
        sym.into()
    } else {
        format!("{sym}^{p}")
    }
}

/// The transform `p̂_! ∘ g^* ∘ p^*` on the theory of a circle, for the
/// automorphism of the trivial bundle over the point given by `g`.
/// It sends `1 ↦ g·P(u)` and `u ↦ 1` with `P` the periodicity element, so
/// it is invertible exactly when `g` is a unit in the coefficients.
pub fn t_admissibility(theory: Theory, g: i64) -> AdmissibilityReport {
    let zero = SymbolicEntry { coeff: 0, power: 0 };
    let matrix = [[zero, SymbolicEntry { coeff: g, power: 1 }], [SymbolicEntry { coeff: 1, power: 0 }, zero]];
    // det = -g·P; P is invertible in both theories
    let det = matrix[0][0].coeff * matrix[1][1].coeff - matrix[0][1].coeff * matrix[1][0].coeff;
    AdmissibilityReport { theory, g, matrix, is_iso: theory.is_unit(det) }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionReport {
    pub k_fc: KGroups,
    pub k_f0: KGroups,
    pub k_f0_twisted: KGroups,
    pub distinct: bool,
}

impl TorsionReport {
    pub fn to_json(&self) -> Value {
        json!({
            "k_fc": self.k_fc.to_json(),
            "k_f0": self.k_f0.to_json(),
            "k_f0_twisted": self.k_f0_twisted.to_json(),
            "distinct": self.distinct,
        })
    }
}

/// Over `B = E_{k,r}`: the bundle `F_c` with `c` the generator, the trivial
/// bundle `F_0`, and `F_0` with the torsion twist dual to `(F_c, 0)`.
pub fn torsion_example(k: i64, r: i64) -> Result<TorsionReport> {
    if k < 2 || !(2..).take_while(|d| d * d <= k).all(|d| k % d != 0) || r <= 1 {
        return Err(Error::BadParameters(format!("need k prime and r > 1, got k={k}, r={r}")));
    }
    let base = lens_like_model(k, r)?;
    let k_fc = k_of_bundle(&bundle_over(base.clone(), 1)?)?;

    let pair = Pair::from_coords(Arc::new(base), &[1], &[0], &[])?;
    let dual = dualize(&pair);
    if !dual.c().is_zero() || dual.t().is_zero() {
        return Err(Error::NotDualizable("expected a trivial dual bundle with torsion twist".into()));
    }
    let mut k_f0_twisted = k_fc.shifted();
    k_f0_twisted.flag(VIA_T_DUALITY);

    // F_0 = B × S^1: K^i(F_0) = K^i(B) ⊕ K^{i+1}(B)
    let kb = k_line_bundle(k, r as u32)?;
    let k_f0 = KGroups {
        k0: direct_sum(&kb.k0, &kb.k1),
        k1: direct_sum(&kb.k1, &kb.k0),
        assumptions: kb.assumptions.clone(),
    };
    let distinct = k_f0.is_isomorphic(&k_f0_twisted) == Some(false)
        || torsion_order(&k_f0.k0) != torsion_order(&k_f0_twisted.k0);
    Ok(TorsionReport { k_fc, k_f0, k_f0_twisted, distinct })
}

fn torsion_order(r: &ExtensionResult) -> BigInt {
    match r {
        ExtensionResult::Resolved(g) => g.torsion_order(),
        ExtensionResult::Ambiguous(a) => a.order.clone(),
    }
}

fn direct_sum(a: &ExtensionResult, b: &ExtensionResult) -> ExtensionResult {
    match (a, b) {
        (_, ExtensionResult::Resolved(g)) => a.direct_sum(g),
        (ExtensionResult::Resolved(g), _) => b.direct_sum(g),
        _ => unreachable!("at most one side of K(B) is ambiguous"),
    }
}
