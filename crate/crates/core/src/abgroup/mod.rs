//! Finitely generated abelian groups and the integer linear algebra behind them.
//!
//! Groups are kept in invariant-factor form `Z^r ⊕ Z/d_1 ⊕ … ⊕ Z/d_m` with
//! `d_i ≥ 2` and `d_i | d_{i+1}`. Canonical generators are ordered with the
//! free generators first, then the torsion generators in the order of their
//! invariant factors. Every homomorphism in the crate is written against
//! that ordering.

mod extension;
mod hom;
mod lr;
mod matrix;
mod snf;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use extension::{resolve_extension, ExtensionResult};
pub use hom::{analyze_hom, HomAnalysis, Homomorphism, Subquotient};
pub use lr::lr_coefficient;
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, Smith};

/// A finitely generated abelian group in invariant-factor normal form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl AbGroup {
    pub fn trivial() -> Self {
        AbGroup { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbGroup { rank, torsion: Vec::new() }
    }

    /// `Z/n`. `n = 0` gives `Z`, `n = ±1` the trivial group.
    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::from_orders(0, [n.into()])
    }

    /// `Z^rank` plus one cyclic summand per entry of `orders`, in any order.
    /// Zero entries count as free summands; units are dropped.
    pub fn new<T: Into<BigInt>>(rank: usize, orders: impl IntoIterator<Item = T>) -> Self {
        Self::from_orders(rank, orders.into_iter().map(Into::into))
    }

    fn from_orders(rank: usize, orders: impl IntoIterator<Item = BigInt>) -> Self {
        let mut rank = rank;
        let mut diag = Vec::new();
        for d in orders {
            let d = d.abs();
            if d.is_zero() {
                rank += 1;
            } else if !d.is_one() {
                diag.push(d);
            }
        }
        AbGroup { rank, torsion: invariant_factors(diag) }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Number of canonical generators.
    pub fn num_generators(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// Order of generator `i`: zero for free generators.
    pub fn generator_order(&self, i: usize) -> BigInt {
        if i < self.rank {
            BigInt::zero()
        } else {
            self.torsion[i - self.rank].clone()
        }
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    pub fn torsion_subgroup(&self) -> AbGroup {
        AbGroup { rank: 0, torsion: self.torsion.clone() }
    }

    pub fn direct_sum(&self, other: &AbGroup) -> AbGroup {
        Self::from_orders(self.rank + other.rank, self.torsion.iter().chain(&other.torsion).cloned())
    }

    pub fn tensor(&self, other: &AbGroup) -> AbGroup {
        let mut orders = Vec::new();
        for d in &self.torsion {
            orders.extend(std::iter::repeat_n(d.clone(), other.rank));
            for e in &other.torsion {
                orders.push(d.gcd(e));
            }
        }
        for e in &other.torsion {
            orders.extend(std::iter::repeat_n(e.clone(), self.rank));
        }
        Self::from_orders(self.rank * other.rank, orders)
    }

    pub fn tor(&self, other: &AbGroup) -> AbGroup {
        let orders = self
            .torsion
            .iter()
            .flat_map(|d| other.torsion.iter().map(move |e| d.gcd(e)))
            .collect::<Vec<_>>();
        Self::from_orders(0, orders)
    }

    /// Primary decomposition: `(p, exponents)` per prime, exponents sorted
    /// descending. Factors must fit in `u64`.
    pub fn primary_decomposition(&self) -> Result<Vec<(u64, Vec<u32>)>> {
        let mut out: Vec<(u64, Vec<u32>)> = Vec::new();
        for d in &self.torsion {
            let d = d
                .to_u64()
                .ok_or_else(|| Error::BadParameters(format!("torsion factor {d} too large to factor")))?;
            for (p, e) in factorize(d) {
                match out.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, v)) => v.push(e),
                    None => out.push((p, vec![e])),
                }
            }
        }
        out.sort_by_key(|(p, _)| *p);
        for (_, v) in &mut out {
            v.sort_unstable_by(|a, b| b.cmp(a));
        }
        Ok(out)
    }

    /// Reduces a coordinate vector in canonical generators: torsion
    /// coordinates are taken into `[0, d)`.
    pub fn reduce(&self, coords: &mut [BigInt]) {
        assert_eq!(coords.len(), self.num_generators(), "coordinate length mismatch");
        for (i, d) in self.torsion.iter().enumerate() {
            let x = &mut coords[self.rank + i];
            *x = x.mod_floor(d);
        }
    }

    pub fn is_zero_element(&self, coords: &[BigInt]) -> bool {
        let mut c = coords.to_vec();
        self.reduce(&mut c);
        c.iter().all(Zero::is_zero)
    }

    /// Relation matrix of the canonical presentation (one column per
    /// torsion generator).
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.num_generators();
        let mut m = IntMatrix::zeros(n, self.torsion.len());
        for (i, d) in self.torsion.iter().enumerate() {
            m[(self.rank + i, i)] = d.clone();
        }
        m
    }
}

/// Invariant factors of the group `⊕ Z/d_i` for positive `d_i`.
fn invariant_factors(orders: Vec<BigInt>) -> Vec<BigInt> {
    if orders.is_empty() {
        return orders;
    }
    // diagonal SNF by repeated gcd/lcm exchange
    let mut d = orders;
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d.retain(|x| !x.is_one());
    d
}

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `true` iff the two groups are isomorphic. Both are canonical, so this is
/// structural equality; callers holding raw cyclic decompositions should
/// build them through [`AbGroup::new`].
pub fn is_isomorphic(a: &AbGroup, b: &AbGroup) -> bool {
    a == b
}

impl fmt::Display for AbGroup {
    /// Canonical text form: `0`, or terms `Z`, `Z^r`, `Z/d` joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        match self.rank {
            0 => {}
            1 => terms.push("Z".to_string()),
            r => terms.push(format!("Z^{r}")),
        }
        terms.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbGroup({self})")
    }
}

impl FromStr for AbGroup {
    type Err = Error;

    /// Accepts the canonical grammar and any non-canonical sum of the same
    /// terms (`Z/2 + Z/3` parses to `Z/6`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(AbGroup::trivial());
        }
        let mut rank = 0usize;
        let mut orders = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            let bad = || Error::Parse(format!("bad group term `{term}` in `{s}`"));
            if term == "Z" {
                rank += 1;
            } else if let Some(e) = term.strip_prefix("Z^") {
                rank += e.parse::<usize>().map_err(|_| bad())?;
            } else if let Some(d) = term.strip_prefix("Z/") {
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if !d.is_positive() {
                    return Err(bad());
                }
                orders.push(d);
            } else if term == "0" {
            } else {
                return Err(bad());
            }
        }
        Ok(AbGroup::from_orders(rank, orders))
    }
}
