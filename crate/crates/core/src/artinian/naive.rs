//! Reference computations straight from the definitions, for small models:
//! a graded piece of `S/J` has dimension `dim S_d - dim J_d`, with `J_d` spanned
//! by all monomial multiples of the generators.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::SparseMatrix;
use crate::poly::{times_linear, MonomialIndex, SparsePoly};

/// Dense spanning set of `J_d`.
fn ideal_span<F: Field>(index: &MonomialIndex, gens: &[SparsePoly<F>], d: usize) -> Vec<Vec<F>> {
    let h = index.nvars();
    let mut layer: Vec<Vec<F>> = gens
        .iter()
        .filter(|g| g.degree <= d)
        .map(|g| g.to_dense(index))
        .collect();
    let Some(t) = gens.first().map(|g| g.degree) else {
        return Vec::new();
    };
    if t > d {
        return Vec::new();
    }
    for e in t..d {
        let mut next = Vec::with_capacity(layer.len() * h);
        for p in &layer {
            for i in 0..h {
                let mut lin = vec![F::zero(); h];
                lin[i] = F::one();
                next.push(times_linear(index, e, p, &lin));
            }
        }
        layer = next;
    }
    layer
}

fn rank_of<F: Field>(rows: &[Vec<F>], cols: usize) -> usize {
    let trip = rows
        .iter()
        .enumerate()
        .flat_map(|(r, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(move |(c, v)| (r, c, v.clone()))
        })
        .collect();
    SparseMatrix::from_triplets(rows.len(), cols, trip)
        .unwrap()
        .rank()
}

/// `dim (S/J)_d` for `d = 0..=max_degree`, by Macaulay matrices.
pub fn hilbert_function<F: Field>(
    nvars: usize,
    gens: &[SparsePoly<F>],
    max_degree: usize,
) -> Result<Vec<usize>> {
    let index = MonomialIndex::new(nvars, max_degree + 1);
    let mut out = Vec::new();
    for d in 0..=max_degree {
        let cols = index.count(d) as usize;
        if cols > 20_000 {
            return Err(Error::budget(
                "naive Hilbert function",
                cols as u128,
                20_000,
            ));
        }
        out.push(cols - rank_of(&ideal_span(&index, gens, d), cols));
    }
    Ok(out)
}

/// Rank of `×lin^s : (S/J)_j -> (S/J)_{j+s}` as
/// `dim(J_{j+s} + lin^s S_j) - dim J_{j+s}`.
pub fn multiplication_rank<F: Field>(
    nvars: usize,
    gens: &[SparsePoly<F>],
    lin: &[F],
    j: usize,
    s: usize,
) -> Result<usize> {
    let index = MonomialIndex::new(nvars, j + s + 1);
    let cols = index.count(j + s) as usize;
    let span = ideal_span(&index, gens, j + s);
    let base = rank_of(&span, cols);
    let mut rows = span;
    for r in 0..index.count(j) as usize {
        let mut p = vec![F::zero(); index.count(j) as usize];
        p[r] = F::one();
        for e in 0..s {
            p = times_linear(&index, j + e, &p, lin);
        }
        rows.push(p);
    }
    Ok(rank_of(&rows, cols) - base)
}
