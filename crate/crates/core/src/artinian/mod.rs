//! Generic Artinian reductions of `R/in(I_t)` and `R/I_t`.
//!
//! Substituting general linear forms in `h` new variables for the `mn` grid
//! variables kills a general linear system of parameters; the result is the
//! quotient `S/J` of `S = k[Y_0..Y_{h-1}]` by the images of the generators.

mod lefschetz;
pub mod naive;
mod quotient;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldKind};
use crate::grid::{initial_ideal_generators, GridShape};
use crate::linalg::{
    derive_seed, integer_draw, integer_linear_forms, random_linear_forms, seeded_rng, DenseMatrix,
    SparseMatrix,
};
use crate::poly::{determinant_of_linear, product_of_linear, MonomialIndex, SparsePoly};

pub use lefschetz::{
    expected_hilbert, failure_certificate_for, lefschetz_verdict, BettiSource, Certificate,
    LefschetzVerdict, Obstruction, Outcome, Property, RankCheck, Trial, VerdictConfig,
    DEFAULT_SEED,
};
pub use quotient::{GradedQuotient, QuotientLimits};

/// Which ring is reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ring {
    /// `R / in(I_t)`, the Stanley-Reisner ring of `Δ(t,m,n)`.
    Initial,
    /// `R / I_t`, the determinantal ring itself.
    Minors,
}

impl Ring {
    pub fn name(self) -> &'static str {
        match self {
            Ring::Initial => "initial",
            Ring::Minors => "minors",
        }
    }
}

/// The coefficient field of `F` as a runtime tag.
pub fn field_kind<F: Field>() -> FieldKind {
    match F::characteristic() {
        0 => FieldKind::Rational,
        p => FieldKind::Prime(p),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertFunction {
    pub values: Vec<usize>,
}

impl HilbertFunction {
    pub fn top_degree(&self) -> usize {
        self.values.iter().rposition(|&v| v != 0).unwrap_or(0)
    }

    pub fn get(&self, j: usize) -> usize {
        self.values.get(j).copied().unwrap_or(0)
    }
}

/// Generators of the ideal after the substitution `X_{rc} -> Σ_k a_{rc,k} Y_k`.
#[derive(Debug, Clone)]
pub struct ReductionModel<F> {
    pub shape: GridShape,
    pub ring: Ring,
    pub seed: u64,
    /// `mn x h`; row `(r-1)n + (c-1)` is the image of `X_{rc}`.
    pub substitution: DenseMatrix<F>,
    /// One degree-`t` form per generator, in generator order.
    pub generator_images: Vec<SparsePoly<F>>,
    index: MonomialIndex,
}

/// Draws the substitution from `seed` and expands the generator images.
pub fn build_reduction<F: Field>(
    shape: GridShape,
    ring: Ring,
    seed: u64,
) -> Result<ReductionModel<F>> {
    let substitution = random_linear_forms::<F>(shape.vertex_count(), shape.height(), seed, false)?;
    reduction_from(shape, ring, seed, substitution)
}

/// The reduction by the integer substitution `build_reduction::<Rational>`
/// draws for `seed`, with coefficients taken in `F`.
pub fn build_integer_reduction<F: Field>(
    shape: GridShape,
    ring: Ring,
    seed: u64,
) -> Result<ReductionModel<F>> {
    let substitution = integer_linear_forms::<F>(shape.vertex_count(), shape.height(), seed)?;
    reduction_from(shape, ring, seed, substitution)
}

fn reduction_from<F: Field>(
    shape: GridShape,
    ring: Ring,
    seed: u64,
    substitution: DenseMatrix<F>,
) -> Result<ReductionModel<F>> {
    let t = shape.t();
    let h = shape.height();
    let index = MonomialIndex::new(h, t);
    let row = |v: usize| substitution.row(v);
    let generator_images = match ring {
        Ring::Initial => initial_ideal_generators(shape)
            .generators
            .iter()
            .map(|g| {
                let forms: Vec<&[F]> = g.iter().map(row).collect();
                SparsePoly::from_dense(t, &product_of_linear(&index, &forms))
            })
            .collect(),
        Ring::Minors => {
            let mut out = Vec::new();
            for g in &initial_ideal_generators(shape).generators {
                // the main diagonal picks out the row and column sets of the minor
                let cells = shape.cells(*g);
                let entries: Vec<Vec<&[F]>> = cells
                    .iter()
                    .map(|&(r, _)| cells.iter().map(|&(_, c)| row(shape.index(r, c))).collect())
                    .collect();
                out.push(SparsePoly::from_dense(
                    t,
                    &determinant_of_linear(&index, &entries)?,
                ));
            }
            out
        }
    };
    Ok(ReductionModel {
        shape,
        ring,
        seed,
        substitution,
        generator_images,
        index,
    })
}

impl<F: Field> ReductionModel<F> {
    pub fn field(&self) -> FieldKind {
        field_kind::<F>()
    }

    pub fn nvars(&self) -> usize {
        self.shape.height()
    }

    pub fn quotient(&self, limits: QuotientLimits) -> Result<GradedQuotient<F>> {
        let q = GradedQuotient::build(self.nvars(), &self.generator_images, limits)?;
        if !q.is_complete() {
            return Err(Error::Degenerate(format!(
                "quotient not zero by degree {}: substitution is not a system of parameters",
                limits.max_degree
            )));
        }
        Ok(q)
    }

    /// Whether the generator images span all of `S_t`.
    pub fn power_ideal_check(&self) -> bool {
        let t = self.shape.t();
        let cols = self.index.count(t) as usize;
        let trip = self
            .generator_images
            .iter()
            .enumerate()
            .flat_map(|(r, g)| {
                g.terms
                    .iter()
                    .map(move |(c, v)| (r, *c as usize, v.clone()))
            })
            .collect();
        let m = SparseMatrix::from_triplets(self.generator_images.len(), cols, trip)
            .expect("terms are in range");
        m.rank() == cols
    }
}

impl<F: Field> GradedQuotient<F> {
    pub fn hilbert(&self) -> HilbertFunction {
        HilbertFunction {
            values: self.hilbert_function(),
        }
    }

    /// Socle dimension in every degree up to the top.
    pub fn socle_dimensions(&self) -> Result<Vec<usize>> {
        (0..self.hilbert_function().len())
            .map(|j| self.socle_dimension(j))
            .collect()
    }
}

/// A linear form with nonzero coefficients (over prime fields) drawn from `seed`.
pub fn random_lefschetz_element<F: Field>(nvars: usize, seed: u64) -> Vec<F> {
    let mut rng = seeded_rng(derive_seed(seed, 0x4c));
    let nonzero = F::characteristic() != 0;
    (0..nvars)
        .map(|_| {
            if nonzero {
                F::sample_nonzero(&mut rng)
            } else {
                F::sample(&mut rng)
            }
        })
        .collect()
}

/// The integer linear form `random_lefschetz_element::<Rational>` draws for
/// `seed`, with coefficients taken in `F`.
pub fn integer_lefschetz_element<F: Field>(nvars: usize, seed: u64) -> Vec<F> {
    let mut rng = seeded_rng(derive_seed(seed, 0x4c));
    (0..nvars).map(|_| integer_draw(&mut rng)).collect()
}

/// `(dim_j, dim_{j+s}, rank of ×L^s)`.
pub fn multiplication_rank<F: Field>(
    quotient: &GradedQuotient<F>,
    lin: &[F],
    s: usize,
    j: usize,
) -> Result<(usize, usize, usize)> {
    if s == 0 {
        return Err(Error::param("s must be at least 1"));
    }
    let dj = quotient.dimension(j).unwrap_or(0);
    let djs = quotient.dimension(j + s).unwrap_or(0);
    if dj == 0 || djs == 0 {
        return Ok((dj, djs, 0));
    }
    Ok((dj, djs, quotient.power_rank(lin, j, s)?))
}

/// Convenience: Hilbert function of a reduction over `F` with default limits.
pub fn hilbert_function<F: Field>(model: &ReductionModel<F>) -> Result<HilbertFunction> {
    Ok(model.quotient(QuotientLimits::default())?.hilbert())
}
