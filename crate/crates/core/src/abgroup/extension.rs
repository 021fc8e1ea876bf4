//! Short exact sequences `0 → sub → X → quot → 0` and what can be said about `X`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::lr::{lr_coefficient, partitions, subpartitions};
use super::AbGroup;

/// Outcome of an extension problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionResult {
    Resolved(AbGroup),
    Ambiguous(Ambiguity),
}

/// An undetermined middle group, described by what is known about it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambiguity {
    /// Free rank, common to every candidate.
    pub rank: usize,
    /// Product of the torsion orders of the filtration quotients. Equals the
    /// torsion order of every candidate unless a free part of a
    /// subquotient can absorb torsion, in which case it is an upper bound.
    pub order: BigInt,
    /// Subquotients of the known filtration, bottom first.
    pub factors: Vec<AbGroup>,
    /// Every group compatible with the filtration, sorted.
    pub candidates: Vec<AbGroup>,
}

impl Ambiguity {
    /// Distinct torsion factors, in order of first appearance.
    pub fn distinct_torsion_factors(&self) -> Vec<AbGroup> {
        let mut out: Vec<AbGroup> = Vec::new();
        for f in &self.factors {
            let t = f.torsion_subgroup();
            if !t.is_trivial() && !out.contains(&t) {
                out.push(t);
            }
        }
        out
    }
}

impl ExtensionResult {
    pub fn resolved(&self) -> Option<&AbGroup> {
        match self {
            ExtensionResult::Resolved(g) => Some(g),
            ExtensionResult::Ambiguous(_) => None,
        }
    }

    pub fn is_resolved(&self) -> bool {
        matches!(self, ExtensionResult::Resolved(_))
    }

    pub fn rank(&self) -> usize {
        match self {
            ExtensionResult::Resolved(g) => g.rank(),
            ExtensionResult::Ambiguous(a) => a.rank,
        }
    }

    /// Groups this result may stand for.
    pub fn candidates(&self) -> Vec<AbGroup> {
        match self {
            ExtensionResult::Resolved(g) => vec![g.clone()],
            ExtensionResult::Ambiguous(a) => a.candidates.clone(),
        }
    }

    /// `Some(answer)` when the isomorphism question is decided by the
    /// candidate sets, `None` otherwise.
    pub fn is_isomorphic(&self, other: &ExtensionResult) -> Option<bool> {
        let mine = self.candidates();
        let theirs = other.candidates();
        if mine.len() == 1 && theirs.len() == 1 {
            return Some(mine[0] == theirs[0]);
        }
        if mine.iter().all(|g| !theirs.contains(g)) {
            return Some(false);
        }
        None
    }

    /// The extension `0 → self → X → quot → 0`.
    pub fn extend_by(&self, quot: &AbGroup) -> ExtensionResult {
        match self {
            ExtensionResult::Resolved(g) => resolve_extension(g, quot),
            ExtensionResult::Ambiguous(a) => {
                if quot.is_trivial() {
                    return self.clone();
                }
                let mut set = BTreeSet::new();
                for c in &a.candidates {
                    set.extend(extension_candidates(c, quot));
                }
                let candidates: Vec<AbGroup> = set.into_iter().collect();
                if candidates.len() == 1 {
                    return ExtensionResult::Resolved(candidates[0].clone());
                }
                let mut factors = a.factors.clone();
                factors.push(quot.clone());
                ExtensionResult::Ambiguous(Ambiguity {
                    rank: a.rank + quot.rank(),
                    order: &a.order * quot.torsion_order(),
                    factors,
                    candidates,
                })
            }
        }
    }

    /// Like [`extend_by`](Self::extend_by) with a quotient that may itself
    /// be undetermined.
    pub fn extend_by_result(&self, quot: &ExtensionResult) -> ExtensionResult {
        let ExtensionResult::Ambiguous(q) = quot else {
            return self.extend_by(quot.resolved().expect("resolved"));
        };
        let mut set = BTreeSet::new();
        for g in &q.candidates {
            set.extend(self.extend_by(g).candidates());
        }
        let candidates: Vec<AbGroup> = set.into_iter().collect();
        if candidates.len() == 1 {
            return ExtensionResult::Resolved(candidates[0].clone());
        }
        let (rank, order, mut factors) = match self {
            ExtensionResult::Resolved(g) => (g.rank(), g.torsion_order(), vec![g.clone()]),
            ExtensionResult::Ambiguous(a) => (a.rank, a.order.clone(), a.factors.clone()),
        };
        factors.extend(q.factors.iter().cloned());
        ExtensionResult::Ambiguous(Ambiguity { rank: rank + q.rank, order: order * &q.order, factors, candidates })
    }

    /// Adds a direct summand.
    pub fn direct_sum(&self, other: &AbGroup) -> ExtensionResult {
        match self {
            ExtensionResult::Resolved(g) => ExtensionResult::Resolved(g.direct_sum(other)),
            ExtensionResult::Ambiguous(a) => ExtensionResult::Ambiguous(Ambiguity {
                rank: a.rank + other.rank(),
                order: &a.order * other.torsion_order(),
                factors: a.factors.iter().cloned().chain(std::iter::once(other.clone())).collect(),
                candidates: sorted(a.candidates.iter().map(|c| c.direct_sum(other))),
            }),
        }
    }

    /// Removes `n` free summands (e.g. passing to reduced K-theory).
    /// Returns `None` when the rank is too small.
    pub fn drop_free_rank(&self, n: usize) -> Option<ExtensionResult> {
        let drop = |g: &AbGroup| -> Option<AbGroup> {
            (g.rank() >= n).then(|| AbGroup::new(g.rank() - n, g.torsion().iter().cloned()))
        };
        Some(match self {
            ExtensionResult::Resolved(g) => ExtensionResult::Resolved(drop(g)?),
            ExtensionResult::Ambiguous(a) => {
                if a.rank < n {
                    return None;
                }
                ExtensionResult::Ambiguous(Ambiguity {
                    rank: a.rank - n,
                    order: a.order.clone(),
                    factors: a.factors.clone(),
                    candidates: sorted(a.candidates.iter().filter_map(drop)),
                })
            }
        })
    }
}

fn sorted(it: impl Iterator<Item = AbGroup>) -> Vec<AbGroup> {
    it.collect::<BTreeSet<_>>().into_iter().collect()
}

impl fmt::Display for ExtensionResult {
    /// Resolved groups use the canonical group grammar; ambiguous ones render
    /// as `[Z^r + ]order=<N>, factors=<G>[; <G>…]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionResult::Resolved(g) => write!(f, "{g}"),
            ExtensionResult::Ambiguous(a) => {
                if a.rank > 0 {
                    write!(f, "{} + ", AbGroup::free(a.rank))?;
                }
                let factors: Vec<String> =
                    a.distinct_torsion_factors().iter().map(ToString::to_string).collect();
                write!(f, "order={}, factors={}", a.order, factors.join("; "))
            }
        }
    }
}

/// Solves `0 → sub → X → quot → 0` as far as the data allows.
///
/// Free quotients split; a trivial end gives the other end; when exactly one
/// group fits (e.g. coprime torsion) it is returned. Anything else is
/// `Ambiguous` with the full candidate list.
pub fn resolve_extension(sub: &AbGroup, quot: &AbGroup) -> ExtensionResult {
    if quot.is_free() || sub.is_trivial() {
        return ExtensionResult::Resolved(sub.direct_sum(quot));
    }
    if quot.is_trivial() {
        return ExtensionResult::Resolved(sub.clone());
    }
    let candidates = extension_candidates(sub, quot);
    if candidates.len() == 1 {
        return ExtensionResult::Resolved(candidates[0].clone());
    }
    ExtensionResult::Ambiguous(Ambiguity {
        rank: sub.rank() + quot.rank(),
        order: sub.torsion_order() * quot.torsion_order(),
        factors: vec![sub.clone(), quot.clone()],
        candidates,
    })
}

/// Every middle group of an extension of `quot` by `sub`, sorted.
///
/// A free quotient part always splits off. With `sub = Z^b ⊕ S` and a
/// finite quotient `Q`, the torsion of the middle group is an extension of
/// some `Q' ≤ Q` by `S` where `Q/Q'` needs at most `b` generators; this is
/// checked one prime at a time through Littlewood–Richardson coefficients.
pub(crate) fn extension_candidates(sub: &AbGroup, quot: &AbGroup) -> Vec<AbGroup> {
    let rank = sub.rank() + quot.rank();
    let b = sub.rank();
    let sub_p = sub.primary_decomposition().expect("torsion too large for candidate enumeration");
    let quot_p = quot.primary_decomposition().expect("torsion too large for candidate enumeration");
    let primes: BTreeSet<u64> = sub_p.iter().chain(&quot_p).map(|(p, _)| *p).collect();

    let part = |list: &[(u64, Vec<u32>)], p: u64| -> Vec<u32> {
        list.iter().find(|(q, _)| *q == p).map(|(_, v)| v.clone()).unwrap_or_default()
    };

    let mut per_prime: Vec<(u64, Vec<Vec<u32>>)> = Vec::new();
    for &p in &primes {
        let mu = part(&sub_p, p);
        let nu = part(&quot_p, p);
        let mut lambdas = BTreeSet::new();
        let kappas: Vec<Vec<u32>> = if b == 0 {
            vec![nu.clone()]
        } else {
            subpartitions(&nu)
                .into_iter()
                .filter(|kappa| {
                    let rest = nu.iter().sum::<u32>() - kappa.iter().sum::<u32>();
                    partitions(rest)
                        .iter()
                        .any(|rho| rho.len() <= b && lr_coefficient(&nu, kappa, rho) > 0)
                })
                .collect()
        };
        for kappa in kappas {
            let n = mu.iter().sum::<u32>() + kappa.iter().sum::<u32>();
            for lambda in partitions(n) {
                if lr_coefficient(&lambda, &mu, &kappa) > 0 {
                    lambdas.insert(lambda);
                }
            }
        }
        per_prime.push((p, lambdas.into_iter().collect()));
    }

    let mut out: Vec<Vec<BigInt>> = vec![Vec::new()];
    for (p, lambdas) in &per_prime {
        let mut next = Vec::new();
        for orders in &out {
            for lambda in lambdas {
                let mut o = orders.clone();
                o.extend(lambda.iter().map(|&e| num_traits::pow(BigInt::from(*p), e as usize)));
                next.push(o);
            }
        }
        out = next;
    }
    sorted(out.into_iter().map(|orders| {
        let orders: Vec<BigInt> = orders.into_iter().filter(|o| !o.is_one()).collect();
        AbGroup::new(rank, orders)
    }))
}
