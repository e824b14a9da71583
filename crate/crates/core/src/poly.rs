//! Homogeneous polynomials in `k[Y_0, .., Y_{h-1}]` with monomials ranked
//! within each degree.
//!
//! A degree-`d` monomial is its nondecreasing variable sequence `a_1 <= .. <= a_d`
//! and has rank `Σ C(a_k + k - 1, k)` (colex order). A smaller rank means a larger
//! monomial in graded reverse lexicographic order with `Y_0 > .. > Y_{h-1}`, so the
//! leading term of a polynomial is its smallest-rank term.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;

/// Ranking tables for monomials of degree `<= max_degree` in `nvars` variables.
#[derive(Debug, Clone)]
pub struct MonomialIndex {
    nvars: usize,
    max_degree: usize,
    // binom[n][k] = C(n, k), saturating
    binom: Vec<Vec<u64>>,
}

impl MonomialIndex {
    pub fn new(nvars: usize, max_degree: usize) -> Self {
        let top = nvars + max_degree + 1;
        let mut binom = vec![vec![0u64; max_degree + 2]; top + 1];
        for n in 0..=top {
            binom[n][0] = 1;
            for k in 1..=(max_degree + 1).min(n) {
                binom[n][k] = binom[n - 1][k - 1].saturating_add(binom[n - 1][k]);
            }
        }
        MonomialIndex {
            nvars,
            max_degree,
            binom,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Number of monomials of degree `d` (saturating at `u64::MAX`).
    pub fn count(&self, d: usize) -> u64 {
        if self.nvars == 0 {
            return (d == 0) as u64;
        }
        self.binom[self.nvars + d - 1][d]
    }

    /// Rank of a nondecreasing variable sequence.
    #[inline]
    pub fn rank(&self, vars: &[u8]) -> usize {
        let mut r = 0u64;
        for (k, &a) in vars.iter().enumerate() {
            r += self.binom[a as usize + k][k + 1];
        }
        r as usize
    }

    /// Rank of `vars * Y_i`.
    #[inline]
    pub fn rank_times(&self, vars: &[u8], i: u8) -> usize {
        let mut r = 0u64;
        let mut k = 0;
        let mut placed = false;
        for &a in vars {
            if !placed && i <= a {
                r += self.binom[i as usize + k][k + 1];
                k += 1;
                placed = true;
            }
            r += self.binom[a as usize + k][k + 1];
            k += 1;
        }
        if !placed {
            r += self.binom[i as usize + k][k + 1];
        }
        r as usize
    }

    /// Rank of `vars` with the entry at `skip` removed.
    #[inline]
    pub fn rank_without(&self, vars: &[u8], skip: usize) -> usize {
        let mut r = 0u64;
        let mut k = 0;
        for (p, &a) in vars.iter().enumerate() {
            if p == skip {
                continue;
            }
            r += self.binom[a as usize + k][k + 1];
            k += 1;
        }
        r as usize
    }

    /// Rank of `vars` with the entries at `p < q` removed.
    #[inline]
    pub fn rank_without_two(&self, vars: &[u8], p: usize, q: usize) -> usize {
        let mut r = 0u64;
        let mut k = 0;
        for (x, &a) in vars.iter().enumerate() {
            if x == p || x == q {
                continue;
            }
            r += self.binom[a as usize + k][k + 1];
            k += 1;
        }
        r as usize
    }

    /// Writes the degree-`d` monomial of rank `r` into `out`.
    pub fn unrank(&self, d: usize, mut r: usize, out: &mut Vec<u8>) {
        out.clear();
        out.resize(d, 0);
        for k in (1..=d).rev() {
            // largest b with C(b, k) <= r
            let mut lo = k - 1;
            let mut hi = self.nvars + k - 2;
            while lo < hi {
                let mid = (lo + hi).div_ceil(2);
                if self.binom[mid][k] as usize <= r {
                    lo = mid;
                } else {
                    hi = mid - 1;
                }
            }
            r -= self.binom[lo][k] as usize;
            out[k - 1] = (lo + 1 - k) as u8;
        }
    }
}

/// Homogeneous polynomial stored as sorted `(rank, coefficient)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly<F> {
    pub degree: usize,
    pub terms: Vec<(u32, F)>,
}

impl<F: Field> SparsePoly<F> {
    pub fn from_dense(degree: usize, dense: &[F]) -> Self {
        SparsePoly {
            degree,
            terms: dense
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(r, c)| (r as u32, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, index: &MonomialIndex) -> Vec<F> {
        let mut v = vec![F::zero(); index.count(self.degree) as usize];
        for (r, c) in &self.terms {
            v[*r as usize] = c.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading monomial rank (smallest rank present).
    pub fn leading_rank(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0)
    }
}

/// Dense degree-`d` polynomial times a linear form, giving degree `d + 1`.
pub fn times_linear<F: Field>(index: &MonomialIndex, d: usize, poly: &[F], lin: &[F]) -> Vec<F> {
    let mut out = vec![F::zero(); index.count(d + 1) as usize];
    let mut vars = Vec::with_capacity(d);
    for (r, c) in poly.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        index.unrank(d, r, &mut vars);
        for (i, l) in lin.iter().enumerate() {
            if !l.is_zero() {
                let w = index.rank_times(&vars, i as u8);
                out[w] = out[w].clone() + c.clone() * l.clone();
            }
        }
    }
    out
}

/// Product of linear forms.
pub fn product_of_linear<F: Field>(index: &MonomialIndex, forms: &[&[F]]) -> Vec<F> {
    let mut acc = vec![F::one()];
    for (d, lin) in forms.iter().enumerate() {
        acc = times_linear(index, d, &acc, lin);
    }
    acc
}

/// Determinant of a square matrix of linear forms (`entries[r][c]` is a
/// coefficient vector), expanded along rows by memoising column subsets.
pub fn determinant_of_linear<F: Field>(
    index: &MonomialIndex,
    entries: &[Vec<&[F]>],
) -> Result<Vec<F>> {
    let t = entries.len();
    if t == 0 || t > 16 || entries.iter().any(|r| r.len() != t) {
        return Err(Error::param(
            "determinant needs a nonempty square matrix of size <= 16",
        ));
    }
    // minors[mask] = det of rows (t - |mask|).. with column set mask
    let mut minors: HashMap<u32, Vec<F>> = HashMap::new();
    minors.insert(0, vec![F::one()]);
    for size in 1..=t {
        let row = t - size;
        for mask in 0u32..1 << t {
            if mask.count_ones() as usize != size {
                continue;
            }
            let mut acc = vec![F::zero(); index.count(size) as usize];
            for (pos, c) in (0..t).filter(|c| mask >> c & 1 == 1).enumerate() {
                let sub = &minors[&(mask & !(1 << c))];
                let mut term = times_linear(index, size - 1, sub, entries[row][c]);
                if pos % 2 == 1 {
                    for x in term.iter_mut() {
                        *x = -x.clone();
                    }
                }
                for (a, b) in acc.iter_mut().zip(term) {
                    *a = a.clone() + b;
                }
            }
            minors.insert(mask, acc);
        }
    }
    Ok(minors.remove(&((1u32 << t) - 1)).unwrap())
}
