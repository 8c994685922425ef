//! Brute-force reference implementations, independent of the library's
//! group arithmetic and lattice code. Sets are bitmasks over element indices.

#![allow(dead_code)]

use pollard::{GSet, GroupSpec};
use std::sync::Arc;

pub struct Oracle {
    pub factors: Vec<usize>,
    pub n: usize,
    add: Vec<Vec<usize>>,
}

impl Oracle {
    pub fn new(factors: &[usize]) -> Self {
        let n: usize = factors.iter().product();
        assert!(n <= 64, "oracle works on bitmasks");
        let digits = |mut x: usize| {
            let mut d = vec![0; factors.len()];
            for (i, &m) in factors.iter().enumerate().rev() {
                d[i] = x % m;
                x /= m;
            }
            d
        };
        let undigits = |d: &[usize]| d.iter().zip(factors).fold(0, |acc, (&x, &m)| acc * m + x);
        let add = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let s: Vec<usize> = digits(x)
                            .iter()
                            .zip(digits(y))
                            .zip(factors)
                            .map(|((a, b), m)| (a + b) % m)
                            .collect();
                        undigits(&s)
                    })
                    .collect()
            })
            .collect();
        Oracle {
            factors: factors.to_vec(),
            n,
            add,
        }
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x][y]
    }

    pub fn neg(&self, x: usize) -> usize {
        (0..self.n).find(|&y| self.add[x][y] == 0).unwrap()
    }

    pub fn members(&self, m: u64) -> Vec<usize> {
        (0..self.n).filter(|&i| m >> i & 1 == 1).collect()
    }

    pub fn sumset(&self, a: u64, b: u64) -> u64 {
        let mut out = 0;
        for x in self.members(a) {
            for y in self.members(b) {
                out |= 1 << self.add(x, y);
            }
        }
        out
    }

    pub fn translate(&self, a: u64, z: usize) -> u64 {
        self.members(a).into_iter().fold(0, |m, x| m | 1 << self.add(x, z))
    }

    /// Every subset closed under addition and containing 0.
    pub fn subgroups(&self) -> Vec<u64> {
        let n = self.n;
        let mut out = Vec::new();
        for rest in 0u64..(1u64 << (n - 1)) {
            let m = 1 | rest << 1;
            let els = self.members(m);
            let closed = els
                .iter()
                .all(|&x| els.iter().all(|&y| m >> self.add(x, y) & 1 == 1));
            if closed {
                out.push(m);
            }
        }
        out
    }

    pub fn r(&self, a: u64, b: u64) -> Vec<u32> {
        let mut r = vec![0; self.n];
        for x in self.members(a) {
            for y in self.members(b) {
                r[self.add(x, y)] += 1;
            }
        }
        r
    }

    pub fn n_t(&self, a: u64, b: u64, t: u32) -> u64 {
        self.r(a, b)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c >= t)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn s_t(&self, a: u64, b: u64, t: u32) -> u64 {
        self.r(a, b).iter().map(|&c| c.min(t) as u64).sum()
    }

    /// Largest `|H|` such that some coset of `H` lies inside `x`.
    pub fn largest_coset_in(&self, subgroups: &[u64], x: u64) -> usize {
        let mut best = 0;
        for &h in subgroups {
            for z in 0..self.n {
                let c = self.translate(h, z);
                if c & x == c {
                    best = best.max(h.count_ones() as usize);
                }
            }
        }
        best
    }

    pub fn alpha(&self, subgroups: &[u64], a: u64, b: u64) -> usize {
        self.largest_coset_in(subgroups, self.sumset(a, b))
    }

    /// `{g : x + g = x}`.
    pub fn period(&self, x: u64) -> u64 {
        (0..self.n)
            .filter(|&g| self.translate(x, g) == x)
            .fold(0, |m, g| m | 1 << g)
    }

    pub fn main_rhs(&self, ca: usize, cb: usize, t: usize, alpha: usize) -> i64 {
        let w = if alpha >= 2 { 1 } else { 0 };
        let (ca, cb, t, alpha, w) = (ca as i64, cb as i64, t as i64, alpha as i64, w as i64);
        t * (ca + cb - t - alpha + 1 + w) - w
    }
}

pub fn group(literal: &str) -> Arc<GroupSpec> {
    GroupSpec::parse(literal).unwrap()
}

pub fn oracle_for(g: &GroupSpec) -> Oracle {
    Oracle::new(g.factors())
}

pub fn to_mask(s: &GSet) -> u64 {
    s.iter().fold(0, |m, x| m | 1 << x)
}

pub fn from_mask(g: &Arc<GroupSpec>, m: u64) -> GSet {
    GSet::from_indices(g, (0..g.order()).filter(|&i| m >> i & 1 == 1)).unwrap()
}

pub fn set(g: &Arc<GroupSpec>, xs: &[usize]) -> GSet {
    GSet::from_indices(g, xs.iter().copied()).unwrap()
}
