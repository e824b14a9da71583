//! The `m x n` grid, the diagonal initial ideal of the `t`-minors, and the
//! Stanley-Reisner complex `Δ(t,m,n)` whose facets are families of
//! nonintersecting lattice paths.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::bareiss_determinant;
use crate::simplicial::SimplicialComplex;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// Default cap on the number of facets enumerated.
pub const DEFAULT_FACET_BUDGET: u64 = 1_000_000;

/// `(t, m, n)` with `2 <= t <= min(m, n)`, `t < max(m, n)` and `m n <= 128`.
///
/// Vertex `(r, c)` (1-based) has index `(r - 1) n + (c - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridShape {
    t: usize,
    m: usize,
    n: usize,
}

/// Checks `2 <= t <= min(m, n)` and `t < max(m, n)`, without the vertex limit
/// that [`GridShape::new`] also enforces.
pub fn validate_parameters(t: usize, m: usize, n: usize) -> Result<()> {
    if t < 2 {
        return Err(Error::param(format!("t = {t} must be at least 2")));
    }
    if t > m.min(n) {
        return Err(Error::param(format!(
            "t = {t} exceeds min(m, n) = {}",
            m.min(n)
        )));
    }
    if t >= m.max(n) {
        return Err(Error::param(format!(
            "t = {t} must be smaller than max(m, n) = {}",
            m.max(n)
        )));
    }
    Ok(())
}

impl GridShape {
    pub fn new(t: usize, m: usize, n: usize) -> Result<Self> {
        validate_parameters(t, m, n)?;
        if m * n > MAX_VERTICES {
            return Err(Error::param(format!(
                "grid {m}x{n} has more than {MAX_VERTICES} vertices"
            )));
        }
        Ok(GridShape { t, m, n })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Height of the ideal of `t`-minors: `(m - t + 1)(n - t + 1)`.
    pub fn height(&self) -> usize {
        (self.m - self.t + 1) * (self.n - self.t + 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.m * self.n
    }

    pub fn transpose(&self) -> GridShape {
        GridShape {
            t: self.t,
            m: self.n,
            n: self.m,
        }
    }

    /// Index of the 1-based cell `(r, c)`.
    pub fn index(&self, r: usize, c: usize) -> usize {
        debug_assert!((1..=self.m).contains(&r) && (1..=self.n).contains(&c));
        (r - 1) * self.n + (c - 1)
    }

    /// 1-based cell of a vertex index.
    pub fn coords(&self, v: usize) -> (usize, usize) {
        (v / self.n + 1, v % self.n + 1)
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn set_from_cells(&self, cells: &[(usize, usize)]) -> Result<VertexSet> {
        let mut s = VertexSet::EMPTY;
        for &(r, c) in cells {
            if !(1..=self.m).contains(&r) || !(1..=self.n).contains(&c) {
                return Err(Error::param(format!("cell ({r}, {c}) outside the grid")));
            }
            s.insert(self.index(r, c));
        }
        Ok(s)
    }

    pub fn cells(&self, s: VertexSet) -> Vec<(usize, usize)> {
        s.iter().map(|v| self.coords(v)).collect()
    }

    /// Transposition `(r, c) -> (c, r)` as a map between vertex sets.
    pub fn transpose_set(&self, s: VertexSet) -> VertexSet {
        let tr = self.transpose();
        s.iter()
            .map(|v| {
                let (r, c) = self.coords(v);
                tr.index(c, r)
            })
            .collect()
    }

    fn row_mask(&self, s: VertexSet, r: usize) -> u32 {
        ((s.bits() >> ((r - 1) * self.n)) & ((1u128 << self.n) - 1)) as u32
    }

    /// Longest chain in `s` with strictly increasing rows and columns.
    pub fn longest_chain(&self, s: VertexSet) -> usize {
        // best[c] = longest chain in earlier rows using columns <= c (0-based)
        let mut best = vec![0usize; self.n];
        let mut ends = vec![0usize; self.n];
        for r in 1..=self.m {
            let mask = self.row_mask(s, r);
            if mask == 0 {
                continue;
            }
            for c in 0..self.n {
                ends[c] = if mask >> c & 1 == 1 {
                    1 + if c > 0 { best[c - 1] } else { 0 }
                } else {
                    0
                };
            }
            let mut run = 0;
            for c in 0..self.n {
                run = run.max(best[c]).max(ends[c]);
                best[c] = run;
            }
        }
        best[self.n - 1]
    }

    /// Face test for `Δ(t,m,n)`: no `t` cells in strictly increasing position.
    pub fn is_face(&self, s: VertexSet) -> bool {
        self.longest_chain(s) < self.t
    }

    /// Vertices lying in no minimal nonface; every face extends by them.
    pub fn cone_vertices(&self) -> VertexSet {
        let t = self.t;
        (0..self.vertex_count())
            .filter(|&v| {
                let (r, c) = self.coords(v);
                // a diagonal through (r, c) needs k-1 cells up-left, t-k down-right
                !(1..=t).any(|k| r >= k && c >= k && self.m - r >= t - k && self.n - c >= t - k)
            })
            .collect()
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Squarefree monomial ideal on the grid variables, one vertex set per generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialIdeal {
    pub shape: GridShape,
    pub generators: Vec<VertexSet>,
}

impl MonomialIdeal {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Whether the squarefree monomial `s` lies in the ideal.
    pub fn contains(&self, s: VertexSet) -> bool {
        self.generators.iter().any(|g| g.is_subset(s))
    }
}

/// Main diagonals `x_{r1 c1} ... x_{rt ct}` with `r1 < .. < rt`, `c1 < .. < ct`:
/// the initial ideal of the `t`-minors for a diagonal term order.
/// Ordered lexicographically by (row tuple, column tuple).
pub fn initial_ideal_generators(shape: GridShape) -> MonomialIdeal {
    let t = shape.t;
    let rows = combinations(shape.m, t);
    let cols = combinations(shape.n, t);
    let mut generators = Vec::with_capacity(rows.len() * cols.len());
    for r in &rows {
        for c in &cols {
            generators.push((0..t).map(|k| shape.index(r[k] + 1, c[k] + 1)).collect());
        }
    }
    MonomialIdeal { shape, generators }
}

/// Facets of `Δ(t,m,n)`: unions of `t - 1` nonintersecting paths from `(i, n)`
/// to `(m, i)` using steps down `(1, 0)` and left `(0, -1)`.
///
/// Output follows the lexicographic order of the concatenated step strings
/// (down before left). Fails once more than `budget` facets are found.
pub fn enumerate_facets(shape: GridShape, budget: u64) -> Result<Vec<VertexSet>> {
    struct Walk<'a> {
        shape: &'a GridShape,
        budget: u64,
        seen: HashSet<VertexSet>,
        out: Vec<VertexSet>,
    }

    impl Walk<'_> {
        fn path(&mut self, i: usize, r: usize, c: usize, occ: VertexSet) -> Result<()> {
            let (m, t) = (self.shape.m, self.shape.t);
            if r == m && c == i {
                if i + 1 == t {
                    if self.seen.insert(occ) {
                        if self.out.len() as u64 >= self.budget {
                            return Err(Error::budget(
                                "facet enumeration",
                                self.out.len() as u128 + 1,
                                self.budget as u128,
                            ));
                        }
                        self.out.push(occ);
                    }
                    return Ok(());
                }
                let start = self.shape.index(i + 1, self.shape.n);
                if occ.contains(start) {
                    return Ok(());
                }
                return self.path(i + 1, i + 1, self.shape.n, occ.with(start));
            }
            if r < m {
                let v = self.shape.index(r + 1, c);
                if !occ.contains(v) {
                    self.path(i, r + 1, c, occ.with(v))?;
                }
            }
            if c > i {
                let v = self.shape.index(r, c - 1);
                if !occ.contains(v) {
                    self.path(i, r, c - 1, occ.with(v))?;
                }
            }
            Ok(())
        }
    }

    let mut w = Walk {
        shape: &shape,
        budget,
        seen: HashSet::new(),
        out: Vec::new(),
    };
    let start = shape.index(1, shape.n);
    w.path(1, 1, shape.n, VertexSet::singleton(start))?;
    Ok(w.out)
}

/// Number of facets by the Lindström-Gessel-Viennot determinant.
pub fn facet_count_lgv(shape: GridShape) -> BigInt {
    let (m, n, k) = (shape.m, shape.n, shape.t - 1);
    let binom = |a: usize, b: usize| -> BigInt {
        let mut acc = BigInt::from(1);
        for i in 0..b {
            acc = acc * BigInt::from(a - i) / BigInt::from(i + 1);
        }
        acc
    };
    let a: Vec<Vec<BigInt>> = (1..=k)
        .map(|i| (1..=k).map(|j| binom((m - i) + (n - j), m - i)).collect())
        .collect();
    bareiss_determinant(a)
}

/// Dimension of `Δ(t,m,n)`: facets have `(t - 1)(m + n - t + 1)` vertices.
pub fn delta_dimension(shape: GridShape) -> usize {
    (shape.t - 1) * (shape.m + shape.n - shape.t + 1) - 1
}

/// `Δ(t,m,n)` as a complex given by its facets.
pub fn delta(shape: GridShape, budget: u64) -> Result<SimplicialComplex> {
    SimplicialComplex::from_facets(shape.vertex_count(), enumerate_facets(shape, budget)?)
}

/// The vertex set `V_a`, `0 <= a <= t - 1`, of size `h + t - 1`: the first `a`
/// diagonal cells, the last `t - a - 1` diagonal cells from `(m, n)` backwards,
/// and the `(m - t + 1) x (n - t + 1)` block starting at `(a + 1, a + 1)`.
pub fn vertex_region(shape: GridShape, a: usize) -> Result<VertexSet> {
    let (t, m, n) = (shape.t, shape.m, shape.n);
    if a >= t {
        return Err(Error::param(format!(
            "a = {a} must satisfy 0 <= a <= t - 1 = {}",
            t - 1
        )));
    }
    let mut s = VertexSet::EMPTY;
    for i in 1..=a {
        s.insert(shape.index(i, i));
    }
    for i in 0..(t - a - 1) {
        s.insert(shape.index(m - i, n - i));
    }
    for i in (a + 1)..=(m + a + 1 - t) {
        for j in (a + 1)..=(n + a + 1 - t) {
            s.insert(shape.index(i, j));
        }
    }
    Ok(s)
}

/// `Ω_a = Δ(t,m,n)` restricted to `V_a`.
pub fn omega(shape: GridShape, a: usize, budget: u64) -> Result<SimplicialComplex> {
    let region = vertex_region(shape, a)?;
    Ok(delta(shape, budget)?.restriction(region))
}

/// Closed form for `dim Ω_a` (independent of `a`), with `l = min(m, n) - t + 1`:
/// `h - (m - 2t + 2)(n - 2t + 2) - 1` when `l >= t - 1`, else `h + t - l - 2`.
pub fn omega_dimension_formula(shape: GridShape) -> usize {
    let (t, m, n, h) = (shape.t, shape.m, shape.n, shape.height());
    let l = m.min(n) - t + 1;
    if l + 1 >= t {
        h - (m + 2 - 2 * t) * (n + 2 - 2 * t) - 1
    } else {
        h + t - l - 2
    }
}

/// Face numbers of `Δ(t,m,n)` by a row-by-row transfer over chain profiles;
/// entry `k` counts faces with `k` vertices (so entry 0 is the empty face).
///
/// Fails if the transfer would touch more than `budget` (profile, row subset) pairs.
pub fn face_counts(shape: GridShape, budget: u64) -> Result<Vec<u128>> {
    let (t, m, n) = (shape.t, shape.m, shape.n);
    // profile[c]: longest strict chain so far among cells in columns <= c
    let mut states: BTreeMap<Vec<u8>, Vec<u128>> = BTreeMap::new();
    let mut zero = vec![0u128; m * n + 1];
    zero[0] = 1;
    states.insert(vec![0u8; n], zero);
    let masks = 1u64 << n;
    let mut work = 0u64;
    for _row in 0..m {
        work = work.saturating_add(states.len() as u64 * masks);
        if work > budget {
            return Err(Error::budget(
                "face count transfer",
                work as u128,
                budget as u128,
            ));
        }
        let mut next: BTreeMap<Vec<u8>, Vec<u128>> = BTreeMap::new();
        for (prof, poly) in &states {
            'mask: for mask in 0..masks {
                let mut new = prof.clone();
                let mut run = 0u8;
                for c in 0..n {
                    if mask >> c & 1 == 1 {
                        let e = 1 + if c > 0 { prof[c - 1] } else { 0 };
                        if e as usize >= t {
                            continue 'mask;
                        }
                        run = run.max(e);
                    }
                    run = run.max(prof[c]);
                    new[c] = run;
                }
                let k = mask.count_ones() as usize;
                let slot = next.entry(new).or_insert_with(|| vec![0; m * n + 1]);
                for (s, &v) in poly.iter().enumerate() {
                    if v != 0 {
                        slot[s + k] += v;
                    }
                }
            }
        }
        states = next;
    }
    let mut f = vec![0u128; m * n + 1];
    for poly in states.values() {
        for (s, &v) in poly.iter().enumerate() {
            f[s] += v;
        }
    }
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
    Ok(f)
}
