//! Littlewood–Richardson coefficients for small partitions.
//!
//! A finite abelian p-group of type `λ` has a subgroup of type `μ` with
//! quotient of type `ν` exactly when `c^λ_{μν} > 0`. Extension candidates are
//! enumerated prime by prime with this test.

/// Number of LR tableaux of skew shape `λ/μ` with content `ν`. Partitions are
/// weakly decreasing part lists; trailing zeros are ignored.
pub fn lr_coefficient(lambda: &[u32], mu: &[u32], nu: &[u32]) -> u64 {
    let lambda = trim(lambda);
    let mu = trim(mu);
    let nu = trim(nu);
    let size = |p: &[u32]| p.iter().map(|&x| x as u64).sum::<u64>();
    if size(&lambda) != size(&mu) + size(&nu) || mu.len() > lambda.len() {
        return 0;
    }
    if mu.iter().zip(&lambda).any(|(m, l)| m > l) {
        return 0;
    }
    let mu_at = |i: usize| mu.get(i).copied().unwrap_or(0) as usize;
    // cells in reading order: rows top to bottom, right to left
    let mut cells = Vec::new();
    for (i, &l) in lambda.iter().enumerate() {
        for j in (mu_at(i)..l as usize).rev() {
            cells.push((i, j));
        }
    }
    let mut grid: Vec<Vec<u32>> = lambda.iter().map(|&l| vec![0; l as usize]).collect();
    let mut counts = vec![0u32; nu.len() + 1];
    let mut ctx = Ctx { lambda: &lambda, mu: &mu, nu: &nu, cells: &cells };
    ctx.fill(0, &mut grid, &mut counts)
}

fn trim(p: &[u32]) -> Vec<u32> {
    p.iter().copied().filter(|&x| x > 0).collect()
}

struct Ctx<'a> {
    lambda: &'a [u32],
    mu: &'a [u32],
    nu: &'a [u32],
    cells: &'a [(usize, usize)],
}

impl Ctx<'_> {
    fn in_skew(&self, i: usize, j: usize) -> bool {
        let m = self.mu.get(i).copied().unwrap_or(0) as usize;
        i < self.lambda.len() && j >= m && j < self.lambda[i] as usize
    }

    fn fill(&mut self, k: usize, grid: &mut Vec<Vec<u32>>, counts: &mut Vec<u32>) -> u64 {
        if k == self.cells.len() {
            return 1;
        }
        let (i, j) = self.cells[k];
        let mut total = 0;
        for v in 1..=self.nu.len() as u32 {
            let vi = v as usize;
            if counts[vi] >= self.nu[vi - 1] {
                continue;
            }
            if v > 1 && counts[vi] + 1 > counts[vi - 1] {
                continue;
            }
            if self.in_skew(i, j + 1) && v > grid[i][j + 1] {
                continue;
            }
            if i > 0 && self.in_skew(i - 1, j) && v <= grid[i - 1][j] {
                continue;
            }
            grid[i][j] = v;
            counts[vi] += 1;
            total += self.fill(k + 1, grid, counts);
            counts[vi] -= 1;
            grid[i][j] = 0;
        }
        total
    }
}

/// All partitions of `n`, parts weakly decreasing.
pub(crate) fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions contained in `lambda` (including the empty one).
pub(crate) fn subpartitions(lambda: &[u32]) -> Vec<Vec<u32>> {
    fn go(lambda: &[u32], i: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        if i == lambda.len() {
            return;
        }
        for p in 1..=lambda[i].min(max) {
            cur.push(p);
            go(lambda, i + 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(lambda, 0, u32::MAX, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_coefficients() {
        // s_1 * s_1 = s_2 + s_11
        assert_eq!(lr_coefficient(&[2], &[1], &[1]), 1);
        assert_eq!(lr_coefficient(&[1, 1], &[1], &[1]), 1);
        // s_21 * s_21 contains s_321 with multiplicity 2
        assert_eq!(lr_coefficient(&[3, 2, 1], &[2, 1], &[2, 1]), 2);
        assert_eq!(lr_coefficient(&[4, 2], &[2, 1], &[2, 1]), 1);
        assert_eq!(lr_coefficient(&[2, 2], &[2], &[1, 1]), 0);
        assert_eq!(lr_coefficient(&[2, 2], &[2], &[2]), 1);
        assert_eq!(lr_coefficient(&[3, 1], &[2], &[2]), 1);
        assert_eq!(lr_coefficient(&[1, 1, 1], &[2], &[1]), 0);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(subpartitions(&[2, 1]).len(), 5); // (), 1, 2, 11, 21
    }
}
