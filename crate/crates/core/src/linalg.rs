//! Sparse and dense matrices over exact fields, rank, and seeded random forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, RATIONAL_SAMPLE_RANGE};

/// Matrix stored as `(row, col, value)` triplets with no duplicates and no zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, F)>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    /// Builds from triplets; duplicate positions are summed and zeros dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        mut triplets: Vec<(usize, usize, F)>,
    ) -> Result<Self> {
        if let Some(&(r, c, _)) = triplets.iter().find(|(r, c, _)| *r >= rows || *c >= cols) {
            return Err(Error::param(format!(
                "entry ({r}, {c}) outside a {rows}x{cols} matrix"
            )));
        }
        triplets.sort_by_key(|&(r, c, _)| (r, c));
        let mut entries: Vec<(usize, usize, F)> = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 = last.2.clone() + v,
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|e| !e.2.is_zero());
        Ok(SparseMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, F)] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<_> = self
            .entries
            .iter()
            .map(|(r, c, v)| (*c, *r, v.clone()))
            .collect();
        entries.sort_by_key(|&(r, c, _)| (r, c));
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn to_dense(&self) -> DenseMatrix<F> {
        let mut d = DenseMatrix::zeros(self.rows, self.cols);
        for (r, c, v) in &self.entries {
            d.set(*r, *c, v.clone());
        }
        d
    }

    fn sparse_rows(&self) -> Vec<Vec<(usize, F)>> {
        let mut out = vec![Vec::new(); self.rows];
        for (r, c, v) in &self.entries {
            out[*r].push((*c, v.clone()));
        }
        out
    }

    pub fn rank(&self) -> usize {
        F::rank_rows(self.sparse_rows(), self.cols)
    }
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> DenseMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        DenseMatrix {
            rows: r,
            cols,
            data,
        }
    }

    pub fn from_columns(columns: &[Vec<F>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                m.data[r * m.cols + c] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [F] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &DenseMatrix<F>) -> DenseMatrix<F> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = DenseMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let (lhs_row, out_row) = (self.row(i), &mut out.data[i * rhs.cols..(i + 1) * rhs.cols]);
            for (k, a) in lhs_row.iter().enumerate() {
                F::axpy(out_row, a, rhs.row(k));
            }
        }
        out
    }

    pub fn add_scaled(&mut self, c: &F, other: &DenseMatrix<F>) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        F::axpy(&mut self.data, c, &other.data);
    }

    pub fn to_sparse_rows(&self) -> Vec<Vec<(usize, F)>> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        if F::characteristic() == 0 {
            F::rank_rows(self.to_sparse_rows(), self.cols)
        } else {
            dense_rank(self.clone())
        }
    }
}

/// Gaussian elimination in place; returns the rank.
pub fn dense_rank<F: Field>(mut m: DenseMatrix<F>) -> usize {
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m.get(r, c).is_zero()) else {
            continue;
        };
        if p != rank {
            for k in c..cols {
                m.data.swap(p * cols + k, rank * cols + k);
            }
        }
        let inv = m.get(rank, c).inv();
        let pivot: Vec<F> = m.row(rank)[c..]
            .iter()
            .map(|x| x.clone() * inv.clone())
            .collect();
        for r in rank + 1..rows {
            let f = m.get(r, c).clone();
            if !f.is_zero() {
                F::axpy(&mut m.row_mut(r)[c..], &(-f), &pivot);
            }
        }
        rank += 1;
    }
    rank
}

/// Column permutation putting sparse columns first, so they become pivots early.
fn sparsity_order<T>(rows: &[Vec<(usize, T)>], cols: usize) -> Vec<usize> {
    let mut count = vec![0usize; cols];
    for row in rows {
        for (c, _) in row {
            count[*c] += 1;
        }
    }
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by_key(|&c| (count[c], c));
    let mut relabel = vec![0; cols];
    for (new, &old) in order.iter().enumerate() {
        relabel[old] = new;
    }
    relabel
}

/// Sparse row echelon over a field, with column sparsity pivoting.
pub fn sparse_rank<F: Field>(rows: Vec<Vec<(usize, F)>>, cols: usize) -> usize {
    let relabel = sparsity_order(&rows, cols);
    let mut rows: Vec<Vec<(usize, F)>> = rows
        .into_iter()
        .map(|row| {
            let mut r: Vec<(usize, F)> = row
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (relabel[c], v))
                .collect();
            r.sort_by_key(|e| e.0);
            r
        })
        .filter(|r| !r.is_empty())
        .collect();
    rows.sort_by_key(|r| r.len());

    let mut pivots: Vec<Option<Vec<(usize, F)>>> = vec![None; cols];
    let mut rank = 0;
    for mut row in rows {
        while let Some((lead, coef)) = row.first().cloned() {
            match &pivots[lead] {
                Some(p) => row = merge_sub(&row, &coef, p),
                None => {
                    let inv = coef.inv();
                    for e in row.iter_mut() {
                        e.1 = e.1.clone() * inv.clone();
                    }
                    pivots[lead] = Some(row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// `a - c * b` for sorted sparse rows.
fn merge_sub<F: Field>(a: &[(usize, F)], c: &F, b: &[(usize, F)]) -> Vec<(usize, F)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(c.clone() * b[j].1.clone())));
            j += 1;
        } else {
            let v = a[i].1.clone() - c.clone() * b[j].1.clone();
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn primitive(row: &mut [(usize, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for e in row.iter_mut() {
            e.1 = &e.1 / &g;
        }
    }
}

/// Rank over Q without fractions: rows are scaled to primitive integer vectors
/// and eliminated by cross-multiplication.
pub fn fraction_free_rank(rows: Vec<Vec<(usize, BigRational)>>, cols: usize) -> usize {
    let int_rows: Vec<Vec<(usize, BigInt)>> = rows
        .into_iter()
        .map(|row| {
            let row: Vec<_> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
            row.into_iter()
                .map(|(c, v)| (c, (v * BigRational::from_integer(l.clone())).to_integer()))
                .collect()
        })
        .collect();
    integer_rank(int_rows, cols)
}

/// Rank over Q of an integer matrix given as sparse rows.
pub fn integer_rank(rows: Vec<Vec<(usize, BigInt)>>, cols: usize) -> usize {
    let relabel = sparsity_order(&rows, cols);
    let mut rows: Vec<Vec<(usize, BigInt)>> = rows
        .into_iter()
        .map(|row| {
            let mut r: Vec<_> = row
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (relabel[c], v))
                .collect();
            r.sort_by_key(|e| e.0);
            primitive(&mut r);
            r
        })
        .filter(|r| !r.is_empty())
        .collect();
    rows.sort_by_key(|r| r.len());

    let mut pivots: Vec<Option<Vec<(usize, BigInt)>>> = vec![None; cols];
    let mut rank = 0;
    for mut row in rows {
        while let Some((lead, coef)) = row.first().cloned() {
            match &pivots[lead] {
                Some(p) => {
                    // row <- p0 * row - coef * p, then strip the content
                    let p0 = &p[0].1;
                    let g = p0.gcd(&coef);
                    let (sa, sb) = (p0 / &g, &coef / &g);
                    let mut out = Vec::with_capacity(row.len() + p.len());
                    let (mut i, mut j) = (0, 0);
                    while i < row.len() || j < p.len() {
                        let take_a = j == p.len() || (i < row.len() && row[i].0 < p[j].0);
                        let take_b = i == row.len() || (j < p.len() && p[j].0 < row[i].0);
                        if take_a {
                            out.push((row[i].0, &sa * &row[i].1));
                            i += 1;
                        } else if take_b {
                            out.push((p[j].0, -(&sb * &p[j].1)));
                            j += 1;
                        } else {
                            let v = &sa * &row[i].1 - &sb * &p[j].1;
                            if !v.is_zero() {
                                out.push((row[i].0, v));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                    primitive(&mut out);
                    row = out;
                }
                None => {
                    if row[0].1.is_negative() {
                        for e in row.iter_mut() {
                            e.1 = -&e.1;
                        }
                    }
                    pivots[lead] = Some(row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Row echelon form built one row at a time; pivot rows are normalised and
/// kept sorted by pivot column.
#[derive(Debug, Clone)]
pub struct Echelon<F> {
    cols: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.cols
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `row` against the current pivots; true if it added a pivot.
    pub fn insert(&mut self, mut row: Vec<F>) -> bool {
        debug_assert_eq!(row.len(), self.cols);
        for (k, &p) in self.pivots.iter().enumerate() {
            if !row[p].is_zero() {
                let c = -row[p].clone();
                F::axpy(&mut row[p..], &c, &self.rows[k][p..]);
            }
        }
        let Some(q) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[q].inv();
        for x in row[q..].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let at = self.pivots.partition_point(|&p| p < q);
        self.pivots.insert(at, q);
        self.rows.insert(at, row);
        true
    }

    /// Back-substitutes to reduced row echelon form and returns
    /// `(pivot column, row)` pairs; each row is zero at the other pivots.
    pub fn into_reduced(mut self) -> Vec<(usize, Vec<F>)> {
        for k in (0..self.rows.len()).rev() {
            let p = self.pivots[k];
            let (above, rest) = self.rows.split_at_mut(k);
            let pivot_row = &rest[0];
            for r in above.iter_mut() {
                if !r[p].is_zero() {
                    let c = -r[p].clone();
                    F::axpy(&mut r[p..], &c, &pivot_row[p..]);
                }
            }
        }
        self.pivots.into_iter().zip(self.rows).collect()
    }
}

/// SplitMix64 mixing of a base seed with a stream index, so independent tasks
/// get independent, schedule-free seeds.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Maximum number of redraws before a degenerate draw becomes an error.
pub const MAX_REDRAWS: u64 = 8;

/// `count x vars` coefficient matrix of random linear forms, redrawn until it
/// has full rank `min(count, vars)`.
pub fn random_linear_forms<F: Field>(
    count: usize,
    vars: usize,
    seed: u64,
    nonzero: bool,
) -> Result<DenseMatrix<F>> {
    draw_forms(count, vars, seed, |rng| {
        if nonzero {
            F::sample_nonzero(rng)
        } else {
            F::sample(rng)
        }
    })
}

/// Like [`random_linear_forms`], but the coefficients are the integers a
/// rational draw with the same seed produces, mapped into `F`.
pub fn integer_linear_forms<F: Field>(
    count: usize,
    vars: usize,
    seed: u64,
) -> Result<DenseMatrix<F>> {
    draw_forms(count, vars, seed, integer_draw)
}

pub(crate) fn integer_draw<F: Field>(rng: &mut ChaCha8Rng) -> F {
    F::from_i64(rng.gen_range(-RATIONAL_SAMPLE_RANGE..=RATIONAL_SAMPLE_RANGE))
}

fn draw_forms<F: Field>(
    count: usize,
    vars: usize,
    seed: u64,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> F,
) -> Result<DenseMatrix<F>> {
    for attempt in 0..MAX_REDRAWS {
        let mut rng = seeded_rng(derive_seed(seed, attempt));
        let rows: Vec<Vec<F>> = (0..count)
            .map(|_| (0..vars).map(|_| draw(&mut rng)).collect())
            .collect();
        let m = DenseMatrix::from_rows(rows, vars);
        if m.rank() == count.min(vars) {
            return Ok(m);
        }
    }
    Err(Error::Degenerate(format!(
        "no full-rank {count}x{vars} draw after {MAX_REDRAWS} attempts"
    )))
}
