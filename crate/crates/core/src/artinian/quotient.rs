//! Degree-by-degree normal forms for `S / J`, with `S = k[Y_0..Y_{h-1}]` and `J`
//! generated by forms of a single degree `t`.
//!
//! Each degree keeps its standard monomials (those outside the grevlex initial
//! ideal) and, for every variable `Y_i` and standard monomial `b`, the normal
//! form of `Y_i b` in the next degree. Degree `d + 1` is obtained from degree `d`:
//!
//! 1. `N = S_1 · B_d` are the only monomials that can carry a standard monomial of
//!    degree `d + 1`. A monomial of `N` divisible by a nonstandard `u` of degree
//!    `d` is rewritten through `Y_i NF(u)`; processing from the smallest monomial
//!    up makes this triangular.
//! 2. Two such rewritings of the same monomial must agree; their differences,
//!    together with the generators in degree `t`, are the only new relations.
//!    A pair `Y_i, Y_j` with `w / (Y_i Y_j)` itself nonstandard yields a relation
//!    already implied by smaller ones and is skipped.
//! 3. An echelon form of the relations decides which monomials of `N` stay standard.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{DenseMatrix, Echelon};
use crate::poly::{MonomialIndex, SparsePoly};

const NONE: u32 = u32::MAX;

/// Work limits for [`GradedQuotient::build`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuotientLimits {
    /// Stop after this degree even if the quotient is not yet zero.
    pub max_degree: usize,
    /// Largest number of monomials allowed in a single degree.
    pub max_monomials: u64,
}

impl Default for QuotientLimits {
    fn default() -> Self {
        QuotientLimits {
            max_degree: 48,
            max_monomials: 20_000_000,
        }
    }
}

#[derive(Debug, Clone)]
struct Piece<F> {
    /// Ranks of the standard monomials, increasing.
    basis: Vec<u32>,
    /// Monomial rank to basis position, or `NONE`.
    pos: Vec<u32>,
    /// `prod[i][c]`: index into `images` of `Y_i * basis[c]`.
    prod: Vec<Vec<u32>>,
    /// Normal forms in the next degree's basis.
    images: Vec<Vec<F>>,
}

impl<F> Piece<F> {
    fn standard(&self, rank: usize) -> bool {
        self.pos[rank] != NONE
    }
}

/// A graded quotient `S / J` computed up to some degree.
#[derive(Debug, Clone)]
pub struct GradedQuotient<F> {
    index: MonomialIndex,
    gen_degree: Option<usize>,
    pieces: Vec<Piece<F>>,
    complete: bool,
}

type Memo<F> = HashMap<(usize, usize), Vec<F>>;

fn unit<F: Field>(len: usize, at: usize) -> Vec<F> {
    let mut v = vec![F::zero(); len];
    v[at] = F::one();
    v
}

/// Positions holding the first occurrence of each distinct variable.
fn distinct_positions(vars: &[u8], out: &mut Vec<usize>) {
    out.clear();
    for p in 0..vars.len() {
        if p == 0 || vars[p] != vars[p - 1] {
            out.push(p);
        }
    }
}

impl<F: Field> GradedQuotient<F> {
    /// Computes `S / (gens)` degree by degree until a degree vanishes or the
    /// degree limit is reached. All generators must share one positive degree.
    pub fn build(nvars: usize, gens: &[SparsePoly<F>], limits: QuotientLimits) -> Result<Self> {
        if nvars > u8::MAX as usize {
            return Err(Error::param(format!("{nvars} variables is too many")));
        }
        let gen_degree = match gens.first() {
            None => None,
            Some(g) => {
                if g.degree == 0 || gens.iter().any(|x| x.degree != g.degree) {
                    return Err(Error::param("generators must share one positive degree"));
                }
                Some(g.degree)
            }
        };
        let index = MonomialIndex::new(nvars, limits.max_degree + 1);
        let mut q = GradedQuotient {
            index,
            gen_degree,
            pieces: vec![Piece {
                basis: vec![0],
                pos: vec![0],
                prod: Vec::new(),
                images: Vec::new(),
            }],
            complete: false,
        };
        if nvars == 0 {
            q.pieces[0].prod = Vec::new();
            q.pieces.push(Piece {
                basis: Vec::new(),
                pos: vec![NONE],
                prod: Vec::new(),
                images: Vec::new(),
            });
            q.complete = true;
            return Ok(q);
        }
        let mut d = 0;
        loop {
            if q.pieces[d].basis.is_empty() {
                q.complete = true;
                break;
            }
            if d == limits.max_degree {
                break;
            }
            q.step(d, gens, limits)?;
            d += 1;
        }
        Ok(q)
    }

    pub fn nvars(&self) -> usize {
        self.index.nvars()
    }

    /// Whether the quotient is known to vanish from some degree on.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Highest degree whose piece has been computed.
    pub fn computed_degree(&self) -> usize {
        self.pieces.len() - 1
    }

    /// `dim` of the degree-`d` piece; `None` when not computed.
    pub fn dimension(&self, d: usize) -> Option<usize> {
        match self.pieces.get(d) {
            Some(p) => Some(p.basis.len()),
            None if self.complete => Some(0),
            None => None,
        }
    }

    /// Hilbert function up to the last nonzero degree (or the computed degree).
    pub fn hilbert_function(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.pieces.iter().map(|p| p.basis.len()).collect();
        if self.complete {
            while v.len() > 1 && *v.last().unwrap() == 0 {
                v.pop();
            }
        }
        v
    }

    /// Standard monomials of degree `d`, as variable sequences.
    pub fn standard_monomials(&self, d: usize) -> Vec<Vec<u8>> {
        let mut buf = Vec::new();
        self.pieces[d]
            .basis
            .iter()
            .map(|&r| {
                self.index.unrank(d, r as usize, &mut buf);
                buf.clone()
            })
            .collect()
    }

    fn check_mult_degree(&self, j: usize) -> Result<()> {
        if j + 1 > self.computed_degree() && !(self.complete && j + 1 >= self.pieces.len()) {
            return Err(Error::budget(
                "quotient degree",
                j as u128 + 1,
                self.computed_degree() as u128,
            ));
        }
        Ok(())
    }

    /// Matrix of multiplication by the linear form `lin` from degree `j` to `j + 1`.
    pub fn multiplication_matrix(&self, lin: &[F], j: usize) -> Result<DenseMatrix<F>> {
        assert_eq!(lin.len(), self.nvars());
        self.check_mult_degree(j)?;
        let (dj, dn) = (self.dimension(j).unwrap(), self.dimension(j + 1).unwrap());
        if dj == 0 || dn == 0 {
            return Ok(DenseMatrix::zeros(dn, dj));
        }
        let piece = &self.pieces[j];
        let mut cols = vec![vec![F::zero(); dn]; dj];
        for (c, col) in cols.iter_mut().enumerate() {
            for (i, l) in lin.iter().enumerate() {
                F::axpy(col, l, &piece.images[piece.prod[i][c] as usize]);
            }
        }
        Ok(DenseMatrix::from_columns(&cols, dn))
    }

    /// Rank of multiplication by `lin^s` from degree `j` to `j + s`.
    pub fn power_rank(&self, lin: &[F], j: usize, s: usize) -> Result<usize> {
        Ok(self.power_ranks(lin, j, s)?[s - 1])
    }

    /// Ranks of `×lin^k : A_j -> A_{j+k}` for `k = 1..=s`.
    pub fn power_ranks(&self, lin: &[F], j: usize, s: usize) -> Result<Vec<usize>> {
        assert!(s >= 1);
        let mut out = Vec::with_capacity(s);
        let mut acc: Option<DenseMatrix<F>> = None;
        for k in 0..s {
            if self.dimension(j + k + 1) == Some(0) || self.dimension(j) == Some(0) {
                out.push(0);
                acc = Some(DenseMatrix::zeros(0, self.dimension(j).unwrap_or(0)));
                continue;
            }
            let m = self.multiplication_matrix(lin, j + k)?;
            let next = match acc {
                None => m,
                Some(a) if a.rows() == 0 => a,
                Some(a) => m.mul(&a),
            };
            out.push(next.rank());
            acc = Some(next);
        }
        Ok(out)
    }

    /// Dimension of the socle in degree `j`: elements killed by every variable.
    pub fn socle_dimension(&self, j: usize) -> Result<usize> {
        self.check_mult_degree(j)?;
        let dj = self.dimension(j).unwrap();
        let dn = self.dimension(j + 1).unwrap();
        if dj == 0 || dn == 0 {
            return Ok(dj);
        }
        let piece = &self.pieces[j];
        let mut ech = Echelon::new(dj);
        'outer: for i in 0..self.nvars() {
            for r in 0..dn {
                let row: Vec<F> = (0..dj)
                    .map(|c| piece.images[piece.prod[i][c] as usize][r].clone())
                    .collect();
                ech.insert(row);
                if ech.is_full() {
                    break 'outer;
                }
            }
        }
        Ok(dj - ech.rank())
    }

    fn normal_form(&self, d: usize, u: usize, memo: &mut Memo<F>) -> Vec<F> {
        let piece = &self.pieces[d];
        if piece.standard(u) {
            return unit(piece.basis.len(), piece.pos[u] as usize);
        }
        if let Some(v) = memo.get(&(d, u)) {
            return v.clone();
        }
        let prev = &self.pieces[d - 1];
        let mut vars = Vec::with_capacity(d);
        self.index.unrank(d, u, &mut vars);
        let mut dp = Vec::new();
        distinct_positions(&vars, &mut dp);
        for &p in &dp {
            let c = self.index.rank_without(&vars, p);
            if prev.standard(c) {
                let i = vars[p] as usize;
                return prev.images[prev.prod[i][prev.pos[c] as usize] as usize].clone();
            }
        }
        let i = vars[d - 1] as usize;
        let v = self.index.rank_without(&vars, d - 1);
        let nv = self.normal_form(d - 1, v, memo);
        let mut out = vec![F::zero(); piece.basis.len()];
        for (c, x) in nv.iter().enumerate() {
            F::axpy(&mut out, x, &prev.images[prev.prod[i][c] as usize]);
        }
        memo.insert((d, u), out.clone());
        out
    }

    fn step(&mut self, d: usize, gens: &[SparsePoly<F>], limits: QuotientLimits) -> Result<()> {
        let h = self.nvars();
        let count = self.index.count(d + 1);
        if count > limits.max_monomials || count >= NONE as u64 {
            return Err(Error::budget(
                format!("monomials of degree {}", d + 1),
                count as u128,
                limits.max_monomials as u128,
            ));
        }
        let count = count as usize;
        let index = &self.index;
        let cur = &self.pieces[d];
        let hd = cur.basis.len();

        // N = S_1 * B_d, sorted by rank
        let mut npos = vec![NONE; count];
        let mut nlist: Vec<u32> = Vec::new();
        let mut prod = vec![vec![0u32; hd]; h];
        let mut vars = Vec::with_capacity(d + 1);
        for (c, &b) in cur.basis.iter().enumerate() {
            index.unrank(d, b as usize, &mut vars);
            for (i, row) in prod.iter_mut().enumerate() {
                let w = index.rank_times(&vars, i as u8);
                if npos[w] == NONE {
                    npos[w] = 0;
                    nlist.push(w as u32);
                }
                row[c] = w as u32;
            }
        }
        nlist.sort_unstable();
        for (k, &w) in nlist.iter().enumerate() {
            npos[w as usize] = k as u32;
        }
        for row in prod.iter_mut() {
            for x in row.iter_mut() {
                *x = npos[*x as usize];
            }
        }

        // monomials of N with a nonstandard divisor get rewritten
        let mut fa = vec![NONE; nlist.len()];
        let mut designated: Vec<(u8, u32)> = vec![(0, 0); nlist.len()];
        let mut nfa = 0usize;
        let mut dp = Vec::new();
        for (k, &w) in nlist.iter().enumerate() {
            index.unrank(d + 1, w as usize, &mut vars);
            distinct_positions(&vars, &mut dp);
            let hit = dp.iter().find_map(|&p| {
                let u = index.rank_without(&vars, p);
                (!cur.standard(u)).then_some((vars[p], u as u32))
            });
            match hit {
                Some(x) => designated[k] = x,
                None => {
                    fa[k] = nfa as u32;
                    nfa += 1;
                }
            }
        }

        let mut memo: Memo<F> = HashMap::new();
        let mut reduced: Vec<Vec<F>> = vec![Vec::new(); nlist.len()];
        let lift = |i: usize, nfu: &[F], reduced: &[Vec<F>]| -> Vec<F> {
            let mut acc = vec![F::zero(); nfa];
            for (c, x) in nfu.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let w = prod[i][c] as usize;
                if fa[w] != NONE {
                    let slot = &mut acc[fa[w] as usize];
                    *slot = slot.clone() + x.clone();
                } else {
                    F::axpy(&mut acc, x, &reduced[w]);
                }
            }
            acc
        };
        for k in (0..nlist.len()).rev() {
            if fa[k] != NONE {
                continue;
            }
            let (i, u) = designated[k];
            let nfu = self.normal_form(d, u as usize, &mut memo);
            reduced[k] = lift(i as usize, &nfu, &reduced);
        }

        let mut ech = Echelon::new(nfa);
        if Some(d + 1) == self.gen_degree {
            for g in gens {
                let mut row = vec![F::zero(); nfa];
                for (r, c) in &g.terms {
                    let k = npos[*r as usize];
                    debug_assert!(k != NONE && fa[k as usize] != NONE);
                    row[fa[k as usize] as usize] = c.clone();
                }
                ech.insert(row);
                if ech.is_full() {
                    break;
                }
            }
        } else if self.gen_degree.is_some_and(|t| d + 1 > t) {
            let prev = &self.pieces[d - 1];
            let mut comp: Vec<usize> = Vec::new();
            let mut members: Vec<(usize, usize)> = Vec::new();
            // a relation needs a pair Y_i, Y_j with w / (Y_i Y_j) standard
            let mut candidates: Vec<u32> = Vec::new();
            let mut cvars = Vec::with_capacity(d + 1);
            for &c in &prev.basis {
                index.unrank(d - 1, c as usize, &mut cvars);
                for i in 0..h as u8 {
                    let pos = cvars.partition_point(|&x| x < i);
                    cvars.insert(pos, i);
                    for j in i + 1..h as u8 {
                        candidates.push(index.rank_times(&cvars, j) as u32);
                    }
                    cvars.remove(pos);
                }
            }
            candidates.sort_unstable();
            candidates.dedup();
            for w in candidates {
                if ech.is_full() {
                    break;
                }
                let w = w as usize;
                index.unrank(d + 1, w, &mut vars);
                distinct_positions(&vars, &mut dp);
                members.clear();
                for &p in &dp {
                    let u = index.rank_without(&vars, p);
                    if !cur.standard(u) {
                        members.push((p, u));
                    }
                }
                if members.len() < 2 {
                    continue;
                }
                comp.clear();
                comp.extend(0..members.len());
                fn find(c: &mut [usize], x: usize) -> usize {
                    let mut r = x;
                    while c[r] != r {
                        r = c[r];
                    }
                    let mut y = x;
                    while c[y] != r {
                        let n = c[y];
                        c[y] = r;
                        y = n;
                    }
                    r
                }
                for a in 0..members.len() {
                    for b in a + 1..members.len() {
                        let u2 = index.rank_without_two(&vars, members[a].0, members[b].0);
                        if !prev.standard(u2) {
                            let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
                            if ra != rb {
                                comp[ra.max(rb)] = ra.min(rb);
                            }
                        }
                    }
                }
                let reps: Vec<usize> = (0..members.len())
                    .filter(|&a| find(&mut comp, a) == a)
                    .collect();
                if reps.len() < 2 {
                    continue;
                }
                let lifted = |a: usize, memo: &mut Memo<F>| {
                    let (p, u) = members[a];
                    let nfu = self.normal_form(d, u, memo);
                    lift(vars[p] as usize, &nfu, &reduced)
                };
                let base = lifted(reps[0], &mut memo);
                for &r in &reps[1..] {
                    let other = lifted(r, &mut memo);
                    let row: Vec<F> = base.iter().zip(other).map(|(a, b)| a.clone() - b).collect();
                    ech.insert(row);
                }
            }
        }
        drop(memo);

        // standard monomials of degree d+1 are the non-pivot columns
        let reduced_rows = ech.into_reduced();
        let mut bidx = vec![NONE; nfa];
        let mut is_pivot = vec![false; nfa];
        for (q, _) in &reduced_rows {
            is_pivot[*q] = true;
        }
        let fa_rank: Vec<u32> = nlist
            .iter()
            .zip(&fa)
            .filter(|(_, f)| **f != NONE)
            .map(|(w, _)| *w)
            .collect();
        let mut basis = Vec::new();
        for col in 0..nfa {
            if !is_pivot[col] {
                bidx[col] = basis.len() as u32;
                basis.push(fa_rank[col]);
            }
        }
        let hb = basis.len();
        // coordinates over B of every F_A column
        let mut to_basis: Vec<Vec<F>> = (0..nfa)
            .map(|col| {
                if bidx[col] != NONE {
                    unit(hb, bidx[col] as usize)
                } else {
                    Vec::new()
                }
            })
            .collect();
        for (q, row) in reduced_rows {
            let mut v = vec![F::zero(); hb];
            for (col, x) in row.into_iter().enumerate() {
                if bidx[col] != NONE && !x.is_zero() {
                    v[bidx[col] as usize] = -x;
                }
            }
            to_basis[q] = v;
        }
        let images: Vec<Vec<F>> = (0..nlist.len())
            .map(|k| {
                if fa[k] != NONE {
                    return to_basis[fa[k] as usize].clone();
                }
                let mut out = vec![F::zero(); hb];
                for (col, x) in reduced[k].iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    if bidx[col] != NONE {
                        let slot = &mut out[bidx[col] as usize];
                        *slot = slot.clone() + x.clone();
                    } else {
                        F::axpy(&mut out, x, &to_basis[col]);
                    }
                }
                out
            })
            .collect();

        let mut pos = vec![NONE; count];
        for (k, &b) in basis.iter().enumerate() {
            pos[b as usize] = k as u32;
        }
        let piece = &mut self.pieces[d];
        piece.prod = prod;
        piece.images = images;
        self.pieces.push(Piece {
            basis,
            pos,
            prod: Vec::new(),
            images: Vec::new(),
        });
        Ok(())
    }
}
