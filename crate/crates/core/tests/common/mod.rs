//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;
use orbigerbe::groupoid::FiniteGroup;

/// Rank over Q by fraction-free elimination.
pub fn rank_rational(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in 0..a.len() {
            if r != rank && !a[r][c].is_zero() {
                let (f, g) = (a[r][c].clone(), a[rank][c].clone());
                for k in 0..cols {
                    a[r][k] = &a[r][k] * &g - &a[rank][k] * &f;
                }
                let content = a[r].iter().fold(BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
                if !content.is_zero() {
                    for x in a[r].iter_mut() {
                        *x /= &content;
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over the field with `p` elements.
pub fn rank_mod(rows: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p)).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let inv = |x: i64| (1..p).find(|y| x * y % p == 1).unwrap();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        let s = inv(a[rank][c]);
        for k in 0..cols {
            a[rank][k] = a[rank][k] * s % p;
        }
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for k in 0..cols {
                    a[r][k] = (a[r][k] - f * a[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Normalized `(1/N)`-valued cochains on a group of order `N`, values stored
/// as numerators modulo `N`, plus the coboundary group they are taken modulo.
pub struct TorsionOracle {
    pub n: usize,
    pub group: FiniteGroup,
    pub cocycles: Vec<Vec<u32>>,
    pub coboundaries: HashSet<Vec<u32>>,
}

impl TorsionOracle {
    /// Enumerates all normalized 2-cocycles with values in `(1/N)Z/Z` by
    /// backtracking, and all coboundaries `δμ` landing there. Such `μ` have
    /// `Nμ` a homomorphism, so `μ = χ/N + ν` with `χ` a `(1/N)`-valued
    /// homomorphism lifted to `(1/N²)` and `ν` any `(1/N)`-valued cochain.
    pub fn new(group: &FiniteGroup) -> Self {
        let n = group.order();
        let e = group.identity();
        let nt: Vec<usize> = (0..n).filter(|&g| g != e).collect();
        let pos = |g: usize, h: usize| g * n + h;
        // 2-cocycles
        let free: Vec<(usize, usize)> = nt.iter().flat_map(|&g| nt.iter().map(move |&h| (g, h))).collect();
        let mut cocycles = Vec::new();
        let mut theta = vec![0u32; n * n];
        let mut assigned = vec![false; n * n];
        for g in 0..n {
            assigned[pos(e, g)] = true;
            assigned[pos(g, e)] = true;
        }
        let nn = n as u32;
        fn consistent(group: &FiniteGroup, theta: &[u32], assigned: &[bool], n: usize, nn: u32, touched: (usize, usize)) -> bool {
            let (a, b) = touched;
            // any identity involving the cell (a, b)
            let check = |g: usize, h: usize, k: usize| {
                let gh = group.mul(g, h);
                let hk = group.mul(h, k);
                let cells = [g * n + h, gh * n + k, h * n + k, g * n + hk];
                if cells.iter().all(|&c| assigned[c]) {
                    (theta[cells[0]] + theta[cells[1]]) % nn == (theta[cells[2]] + theta[cells[3]]) % nn
                } else {
                    true
                }
            };
            for x in 0..n {
                // (a,b) as (g,h), (gh,k), (h,k), (g,hk)
                if !check(a, b, x) || !check(x, a, b) {
                    return false;
                }
                for y in 0..n {
                    if group.mul(x, y) == a && !check(x, y, b) {
                        return false;
                    }
                    if group.mul(x, y) == b && !check(a, x, y) {
                        return false;
                    }
                }
            }
            true
        }
        fn go(
            i: usize,
            free: &[(usize, usize)],
            group: &FiniteGroup,
            theta: &mut Vec<u32>,
            assigned: &mut Vec<bool>,
            n: usize,
            nn: u32,
            out: &mut Vec<Vec<u32>>,
        ) {
            if i == free.len() {
                out.push(theta.clone());
                return;
            }
            let (g, h) = free[i];
            assigned[g * n + h] = true;
            for v in 0..nn {
                theta[g * n + h] = v;
                if consistent(group, theta, assigned, n, nn, (g, h)) {
                    go(i + 1, free, group, theta, assigned, n, nn, out);
                }
            }
            assigned[g * n + h] = false;
            theta[g * n + h] = 0;
        }
        go(0, &free, group, &mut theta, &mut assigned, n, nn, &mut cocycles);

        // normalized 1-cochains with values in (1/N)
        let mut c1: Vec<Vec<u32>> = vec![vec![0; n]];
        for &g in &nt {
            c1 = c1
                .into_iter()
                .flat_map(|m| {
                    (0..nn).map(move |v| {
                        let mut m = m.clone();
                        m[g] = v;
                        m
                    })
                })
                .collect();
        }
        let homs: Vec<&Vec<u32>> = c1
            .iter()
            .filter(|m| (0..n).all(|g| (0..n).all(|h| (m[g] + m[h]) % nn == m[group.mul(g, h)])))
            .collect();
        let n2 = nn * nn;
        let mut coboundaries = HashSet::new();
        for chi in &homs {
            for nu in &c1 {
                // μ in units of 1/N²: χ/N + ν
                let mu: Vec<u32> = (0..n).map(|g| (chi[g] + nn * nu[g]) % n2).collect();
                let d: Vec<u32> = (0..n * n)
                    .map(|c| {
                        let (g, h) = (c / n, c % n);
                        let v = (mu[h] + n2 - mu[group.mul(g, h)] + mu[g]) % n2;
                        assert_eq!(v % nn, 0, "coboundary leaves (1/N)");
                        v / nn
                    })
                    .collect();
                coboundaries.insert(d);
            }
        }
        Self { n, group: group.clone(), cocycles, coboundaries }
    }

    pub fn class_count(&self) -> usize {
        assert_eq!(self.cocycles.len() % self.coboundaries.len(), 0);
        self.cocycles.len() / self.coboundaries.len()
    }

    /// Whether two `(1/N)`-valued cocycles, given as numerators, are cohomologous.
    pub fn cohomologous(&self, a: &[u32], b: &[u32]) -> bool {
        let nn = self.n as u32;
        let diff: Vec<u32> = a.iter().zip(b).map(|(x, y)| (x + nn - y) % nn).collect();
        self.coboundaries.contains(&diff)
    }
}
