//! Graded Betti numbers of `R/in(I_t)` through Hochster's formula
//! `β_{i,j} = Σ_{|U| = j} dim H̃_{j-i-1}(Δ_U)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldKind};
use crate::grid::{vertex_region, GridShape};
use crate::simplicial::{reduced_homology_dim, GridSubcomplex, DEFAULT_FACE_BUDGET};
use crate::vertex_set::{RevolvingDoor, VertexSet};
use crate::with_field;
use crate::{Fp61, Rational};

/// Default cap on the number of vertex subsets visited by a Hochster sum.
pub const DEFAULT_SUBSET_BUDGET: u64 = 10_000_000;

const CHUNK: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BettiKind {
    Exact,
    LowerBound,
}

/// A vertex subset contributing `dim` to a homology sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub subset: VertexSet,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiResult {
    pub i: usize,
    pub j: usize,
    pub value: u64,
    pub kind: BettiKind,
    pub field: FieldKind,
    pub subsets_examined: u64,
    /// Contributing subsets, in enumeration order.
    pub witnesses: Vec<Witness>,
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Exact `β_{i,j}(R/in(I_t))` over the given field.
///
/// Subsets containing a cone vertex of `Δ` (a vertex in no minimal nonface)
/// are skipped: their restrictions are cones and hence acyclic.
pub fn hochster_betti(
    shape: GridShape,
    i: usize,
    j: usize,
    field: FieldKind,
    budget: u64,
) -> Result<BettiResult> {
    let field = field.validate()?;
    let (examined, witnesses) = match field {
        // H̃(Δ_U; Q) never exceeds H̃(Δ_U; GF(p)), so only the subsets with
        // homology mod p need the slower rational pass.
        FieldKind::Rational => {
            let (examined, candidates) = homology_sum::<Fp61>(shape, i, j, budget)?;
            let k = j as isize - i as isize - 1;
            let mut exact = Vec::new();
            for w in candidates {
                let dim = reduced_homology_dim::<Rational, _>(
                    &GridSubcomplex::new(shape, w.subset),
                    k,
                    DEFAULT_FACE_BUDGET,
                )?;
                if dim > 0 {
                    exact.push(Witness {
                        subset: w.subset,
                        dim,
                    });
                }
            }
            (examined, exact)
        }
        FieldKind::Prime(_) => with_field!(field, F => homology_sum::<F>(shape, i, j, budget))?,
    };
    Ok(BettiResult {
        i,
        j,
        value: witnesses.iter().map(|w| w.dim as u64).sum(),
        kind: BettiKind::Exact,
        field,
        subsets_examined: examined,
        witnesses,
    })
}

/// Number of subsets a Hochster sum for `β_{i,j}` visits.
pub fn hochster_cost(shape: GridShape, j: usize) -> u128 {
    let ground = shape.vertex_count() - shape.cone_vertices().len();
    binom(ground, j)
}

fn homology_sum<F: Field>(
    shape: GridShape,
    i: usize,
    j: usize,
    budget: u64,
) -> Result<(u64, Vec<Witness>)> {
    if i > j || j > shape.vertex_count() {
        return Ok((0, Vec::new()));
    }
    let k = j as isize - i as isize - 1;
    let cone = shape.cone_vertices();
    let ground: Vec<usize> = shape.all_vertices().difference(cone).to_vec();
    let cost = binom(ground.len(), j);
    if cost > budget as u128 {
        return Err(Error::budget(
            "Hochster subset enumeration",
            cost,
            budget as u128,
        ));
    }
    let mut doors = RevolvingDoor::new(&ground, j);
    let mut witnesses = Vec::new();
    let mut examined = 0u64;
    loop {
        let chunk: Vec<VertexSet> = doors.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        examined += chunk.len() as u64;
        let dims: Vec<Result<usize>> = chunk
            .par_iter()
            .map(|u| {
                reduced_homology_dim::<F, _>(
                    &GridSubcomplex::new(shape, *u),
                    k,
                    DEFAULT_FACE_BUDGET,
                )
            })
            .collect();
        for (u, d) in chunk.iter().zip(dims) {
            let d = d?;
            if d > 0 {
                witnesses.push(Witness { subset: *u, dim: d });
            }
        }
    }
    Ok((examined, witnesses))
}

/// `Σ_a dim H̃_{t-2}(Ω_a)`, a lower bound for `β_{h, h+t-1}`.
pub fn omega_lower_bound(shape: GridShape, field: FieldKind) -> Result<BettiResult> {
    let field = field.validate()?;
    let (t, h) = (shape.t(), shape.height());
    let mut witnesses = Vec::new();
    for a in 0..t {
        let v = vertex_region(shape, a)?;
        let d = with_field!(field, F => reduced_homology_dim::<F, _>(
            &GridSubcomplex::new(shape, v),
            t as isize - 2,
            DEFAULT_FACE_BUDGET,
        ))?;
        witnesses.push(Witness { subset: v, dim: d });
    }
    Ok(BettiResult {
        i: h,
        j: h + t - 1,
        value: witnesses.iter().map(|w| w.dim as u64).sum(),
        kind: BettiKind::LowerBound,
        field,
        subsets_examined: witnesses.len() as u64,
        witnesses,
    })
}

/// For `t = 2`: every `U` with `|U| = (m-1)(n-1)+1` whose restriction is
/// disconnected, with `dim H̃_0(Δ_U)`. Their sum is `β_{h, h+1}`.
pub fn classify_h0_subcomplexes(
    m: usize,
    n: usize,
    field: FieldKind,
    budget: u64,
) -> Result<Vec<Witness>> {
    let shape = GridShape::new(2, m, n)?;
    let h = shape.height();
    Ok(hochster_betti(shape, h, h + 1, field, budget)?.witnesses)
}
