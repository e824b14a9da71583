//! Finite simplicial complexes on at most 128 vertices and their reduced
//! simplicial homology over an exact field.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::grid::GridShape;
use crate::linalg::SparseMatrix;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// Default cap on faces materialised by a single face enumeration.
pub const DEFAULT_FACE_BUDGET: u64 = 5_000_000;

/// Complex given by its facets, kept in canonical (lexicographic) order with
/// no facet contained in another. The complex `{∅}` has the single facet `∅`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicialComplex {
    ambient: usize,
    facets: Vec<VertexSet>,
}

fn maximalize(mut sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| s.is_subset(*k)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

impl SimplicialComplex {
    /// Builds a complex from any generating family; non-maximal sets are dropped.
    /// An empty family gives `{∅}`.
    pub fn from_facets(ambient: usize, facets: Vec<VertexSet>) -> Result<Self> {
        if ambient > MAX_VERTICES {
            return Err(Error::param(format!(
                "ambient vertex count {ambient} exceeds {MAX_VERTICES}"
            )));
        }
        let full = VertexSet::full(ambient);
        if let Some(bad) = facets.iter().find(|f| !f.is_subset(full)) {
            return Err(Error::param(format!(
                "facet {bad:?} uses vertices outside 0..{ambient}"
            )));
        }
        let facets = if facets.is_empty() {
            vec![VertexSet::EMPTY]
        } else {
            maximalize(facets)
        };
        Ok(SimplicialComplex { ambient, facets })
    }

    /// The full simplex on `vertices`.
    pub fn simplex(ambient: usize, vertices: VertexSet) -> Result<Self> {
        Self::from_facets(ambient, vec![vertices])
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    /// Dimension; `-1` for `{∅}`.
    pub fn dimension(&self) -> isize {
        self.facets.iter().map(|f| f.len()).max().unwrap_or(0) as isize - 1
    }

    pub fn vertices(&self) -> VertexSet {
        self.facets
            .iter()
            .fold(VertexSet::EMPTY, |acc, f| acc.union(*f))
    }

    pub fn is_face(&self, s: VertexSet) -> bool {
        self.facets.iter().any(|f| s.is_subset(*f))
    }

    pub fn is_pure(&self) -> bool {
        let d = self.facets[0].len();
        self.facets.iter().all(|f| f.len() == d)
    }

    /// Induced subcomplex `{σ ∈ Δ : σ ⊆ U}`.
    pub fn restriction(&self, u: VertexSet) -> SimplicialComplex {
        SimplicialComplex {
            ambient: self.ambient,
            facets: maximalize(self.facets.iter().map(|f| f.intersection(u)).collect()),
        }
    }

    /// `lk(σ) = {τ : τ ∩ σ = ∅, τ ∪ σ ∈ Δ}`.
    pub fn link(&self, sigma: VertexSet) -> Result<SimplicialComplex> {
        if !self.is_face(sigma) {
            return Err(Error::param(format!("{sigma:?} is not a face")));
        }
        let facets = self
            .facets
            .iter()
            .filter(|f| sigma.is_subset(**f))
            .map(|f| f.difference(sigma))
            .collect();
        Ok(SimplicialComplex {
            ambient: self.ambient,
            facets: maximalize(facets),
        })
    }

    /// Faces of dimension at most `k`.
    pub fn skeleton(&self, k: isize, budget: u64) -> Result<SimplicialComplex> {
        if k >= self.dimension() {
            return Ok(self.clone());
        }
        if k < 0 {
            return Self::from_facets(self.ambient, vec![]);
        }
        let faces = self.faces_of_size(k as usize + 1, budget)?;
        let mut small: Vec<VertexSet> = self
            .facets
            .iter()
            .filter(|f| f.len() <= k as usize)
            .copied()
            .collect();
        small.extend(faces);
        Self::from_facets(self.ambient, small)
    }

    /// Renames vertices; `map` must be injective on the vertex set.
    pub fn relabel(
        &self,
        ambient: usize,
        map: impl Fn(usize) -> Option<usize>,
    ) -> Result<SimplicialComplex> {
        let mut facets = Vec::with_capacity(self.facets.len());
        for f in &self.facets {
            let mut g = VertexSet::EMPTY;
            for v in f.iter() {
                match map(v) {
                    Some(w) if w < ambient => g.insert(w),
                    _ => return Err(Error::param(format!("vertex {v} has no image"))),
                }
            }
            if g.len() != f.len() {
                return Err(Error::param("relabelling is not injective"));
            }
            facets.push(g);
        }
        Self::from_facets(ambient, facets)
    }

    /// Face numbers: entry `k` counts faces with `k` vertices.
    ///
    /// Faces are generated once each by extending with vertices larger than
    /// their maximum while some facet still contains them.
    pub fn f_vector(&self, budget: u64) -> Result<Vec<u128>> {
        let nf = self.facets.len();
        let words = nf.div_ceil(64);
        let mut incidence = vec![vec![0u64; words]; self.ambient];
        for (i, f) in self.facets.iter().enumerate() {
            for v in f.iter() {
                incidence[v][i / 64] |= 1 << (i % 64);
            }
        }
        let mut counts = vec![0u128; self.dimension().max(-1) as usize + 2];
        let mut seen = 0u64;
        let mut all = vec![0u64; words];
        for i in 0..nf {
            all[i / 64] |= 1 << (i % 64);
        }
        let mut stack: Vec<(usize, Vec<u64>, usize)> = vec![(0, all, 0)];
        while let Some((next, mask, size)) = stack.pop() {
            seen += 1;
            if seen > budget {
                return Err(Error::budget(
                    "f-vector enumeration",
                    seen as u128,
                    budget as u128,
                ));
            }
            counts[size] += 1;
            for v in next..self.ambient {
                let m: Vec<u64> = mask.iter().zip(&incidence[v]).map(|(a, b)| a & b).collect();
                if m.iter().any(|w| *w != 0) {
                    stack.push((v + 1, m, size + 1));
                }
            }
        }
        Ok(counts)
    }

    fn faces_from_facets(&self, s: usize, budget: u64) -> Result<Vec<VertexSet>> {
        let mut out: HashSet<VertexSet> = HashSet::new();
        let mut work = 0u64;
        for f in &self.facets {
            if f.len() < s {
                continue;
            }
            let verts = f.to_vec();
            for sub in crate::vertex_set::RevolvingDoor::new(&verts, s) {
                work += 1;
                if work > budget {
                    return Err(Error::budget(
                        "face enumeration",
                        work as u128,
                        budget as u128,
                    ));
                }
                out.insert(sub);
            }
        }
        let mut v: Vec<_> = out.into_iter().collect();
        v.sort();
        Ok(v)
    }
}

/// Anything that can list its faces of a given size in canonical order.
pub trait FaceSource {
    fn ambient(&self) -> usize;

    /// Faces with exactly `size` vertices, sorted lexicographically.
    fn faces_of_size(&self, size: usize, budget: u64) -> Result<Vec<VertexSet>>;
}

impl FaceSource for SimplicialComplex {
    fn ambient(&self) -> usize {
        self.ambient
    }

    fn faces_of_size(&self, size: usize, budget: u64) -> Result<Vec<VertexSet>> {
        self.faces_from_facets(size, budget)
    }
}

/// `Δ(t,m,n)` restricted to a vertex set, answered through the chain oracle
/// instead of a facet list.
#[derive(Debug, Clone, Copy)]
pub struct GridSubcomplex {
    pub shape: GridShape,
    pub support: VertexSet,
}

impl GridSubcomplex {
    pub fn new(shape: GridShape, support: VertexSet) -> Self {
        GridSubcomplex { shape, support }
    }

    pub fn full(shape: GridShape) -> Self {
        GridSubcomplex {
            shape,
            support: shape.all_vertices(),
        }
    }
}

impl FaceSource for GridSubcomplex {
    fn ambient(&self) -> usize {
        self.shape.vertex_count()
    }

    fn faces_of_size(&self, size: usize, budget: u64) -> Result<Vec<VertexSet>> {
        // every subset of a face is a face, so extend only through faces
        fn rec(
            g: &GridSubcomplex,
            verts: &[usize],
            from: usize,
            cur: VertexSet,
            left: usize,
            work: &mut u64,
            budget: u64,
            out: &mut Vec<VertexSet>,
        ) -> Result<()> {
            if left == 0 {
                out.push(cur);
                return Ok(());
            }
            for i in from..verts.len() {
                if verts.len() - i < left {
                    break;
                }
                *work += 1;
                if *work > budget {
                    return Err(Error::budget(
                        "face enumeration",
                        *work as u128,
                        budget as u128,
                    ));
                }
                let next = cur.with(verts[i]);
                if g.shape.is_face(next) {
                    rec(g, verts, i + 1, next, left - 1, work, budget, out)?;
                }
            }
            Ok(())
        }
        let verts = self.support.to_vec();
        let mut out = Vec::new();
        let mut work = 0;
        rec(
            self,
            &verts,
            0,
            VertexSet::EMPTY,
            size,
            &mut work,
            budget,
            &mut out,
        )?;
        Ok(out)
    }
}

/// Boundary map from faces with `size` vertices to faces with `size - 1`
/// vertices; rows index the smaller faces. Also returns the column count.
pub fn boundary_matrix<F: Field, S: FaceSource + ?Sized>(
    complex: &S,
    size: usize,
    budget: u64,
) -> Result<SparseMatrix<F>> {
    if size == 0 {
        return SparseMatrix::from_triplets(0, 1, vec![]);
    }
    let upper = complex.faces_of_size(size, budget)?;
    let lower = complex.faces_of_size(size - 1, budget)?;
    boundary_between(&upper, &lower)
}

fn boundary_between<F: Field>(upper: &[VertexSet], lower: &[VertexSet]) -> Result<SparseMatrix<F>> {
    let index: HashMap<VertexSet, usize> = lower.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut trip = Vec::with_capacity(upper.len() * upper.first().map_or(0, |f| f.len()));
    for (col, face) in upper.iter().enumerate() {
        for (pos, v) in face.iter().enumerate() {
            let row = index[&face.without(v)];
            let sign = if pos % 2 == 0 { F::one() } else { -F::one() };
            trip.push((row, col, sign));
        }
    }
    SparseMatrix::from_triplets(lower.len(), upper.len(), trip)
}

/// `dim H̃_k(Δ; F)` for `k >= -1`, where `H̃_{-1}({∅}) = F`.
pub fn reduced_homology_dim<F: Field, S: FaceSource + ?Sized>(
    complex: &S,
    k: isize,
    budget: u64,
) -> Result<usize> {
    if k < -1 {
        return Ok(0);
    }
    let size = (k + 1) as usize;
    let below = if size == 0 {
        Vec::new()
    } else {
        complex.faces_of_size(size - 1, budget)?
    };
    let here = complex.faces_of_size(size, budget)?;
    if here.is_empty() {
        return Ok(0);
    }
    let above = complex.faces_of_size(size + 1, budget)?;
    let rank_down = if size == 0 {
        0
    } else {
        boundary_between::<F>(&here, &below)?.rank()
    };
    let rank_up = if above.is_empty() {
        0
    } else {
        boundary_between::<F>(&above, &here)?.rank()
    };
    Ok(here.len() - rank_down - rank_up)
}

/// All reduced Betti numbers `dim H̃_k`, `k = -1 ..= dim`.
pub fn reduced_homology<F: Field>(complex: &SimplicialComplex, budget: u64) -> Result<Vec<usize>> {
    let mut faces: Vec<Vec<VertexSet>> = Vec::new();
    for s in 0..=(complex.dimension() + 1) as usize {
        faces.push(complex.faces_of_size(s, budget)?);
    }
    faces.push(Vec::new());
    let mut ranks = vec![0usize; faces.len()];
    for s in 1..faces.len() {
        if !faces[s].is_empty() {
            ranks[s] = boundary_between::<F>(&faces[s], &faces[s - 1])?.rank();
        }
    }
    Ok((0..faces.len() - 1)
        .map(|s| faces[s].len() - ranks[s] - ranks[s + 1])
        .collect())
}

/// Reduced Euler characteristic `Σ (-1)^k f_k`, `k >= -1`.
pub fn reduced_euler_characteristic(f: &[u128]) -> i128 {
    f.iter()
        .enumerate()
        .map(|(s, &c)| if s % 2 == 0 { -(c as i128) } else { c as i128 })
        .sum()
}

/// h-vector of a `(d - 1)`-dimensional complex from its face numbers
/// (`f[k]` = faces with `k` vertices).
pub fn h_vector(f: &[u128], d: usize) -> Vec<i128> {
    let binom = |n: usize, k: usize| -> i128 {
        if k > n {
            return 0;
        }
        (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
    };
    (0..=d)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let fi = f.get(i).copied().unwrap_or(0) as i128;
                    let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                    sign * binom(d - i, k - i) * fi
                })
                .sum()
        })
        .collect()
}
