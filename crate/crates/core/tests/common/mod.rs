//! Helpers shared by the integration tests. Nothing here calls the Smith
//! normal form code, so it can serve as an oracle for it.
#![allow(dead_code)]

use num_bigint::BigInt;
use tdual_core::abgroup::{AbGroup, IntMatrix};

/// Every descriptor family with small parameters.
pub const CATALOG: [&str; 16] = [
    "pt",
    "s1",
    "s2",
    "s3",
    "surface:g=0",
    "surface:g=1",
    "surface:g=2",
    "cp:r=1",
    "cp:r=2",
    "cp:r=3",
    "torus:n=1",
    "torus:n=2",
    "torus:n=3",
    "lens:k=2,r=1",
    "lens:k=3,r=2",
    "lens:k=5,r=3",
];

/// Bareiss elimination; exact for the small entries used in tests.
pub fn det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Determinantal divisors `Δ_k = gcd of all k×k minors`, for `k = 1..` up
/// to the rank.
pub fn determinantal_divisors(m: &[Vec<i128>], cols: usize) -> Vec<i128> {
    let rows = m.len();
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = 0;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                g = gcd(g, det(minor));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g);
    }
    out
}

/// Invariant factors `Δ_k / Δ_{k-1}`.
pub fn invariant_factors(m: &[Vec<i128>], cols: usize) -> Vec<i128> {
    let dd = determinantal_divisors(m, cols);
    let mut prev = 1;
    dd.iter()
        .map(|&d| {
            let f = d / prev;
            prev = d;
            f
        })
        .collect()
}

/// `Z^cols` modulo the row span of `rels`.
pub fn group_from_relations(rels: &[Vec<i128>], cols: usize) -> AbGroup {
    let f = invariant_factors(rels, cols);
    AbGroup::new(cols - f.len(), f.into_iter().map(BigInt::from))
}

pub fn to_rows(m: &IntMatrix) -> Vec<Vec<i128>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| i128::try_from(x).expect("small entry")).collect()).collect()
}

pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows.iter().map(|r| r.iter().copied()))
}
