//! Test-side oracles written without the library's enumeration or rank code.
#![allow(dead_code)]

pub const P: u64 = 1_000_000_007;

/// Cells `(r, c)` with `1 <= r <= m`, `1 <= c <= n` in row-major order.
pub fn grid(m: usize, n: usize) -> Vec<(usize, usize)> {
    (1..=m).flat_map(|r| (1..=n).map(move |c| (r, c))).collect()
}

/// A set of cells is a face of Δ(t,m,n) iff it has no chain of length t that
/// increases strictly in both coordinates.
pub fn is_face(t: usize, cells: &[(usize, usize)]) -> bool {
    let mut best = vec![1usize; cells.len()];
    for i in 0..cells.len() {
        for j in 0..cells.len() {
            if cells[j].0 < cells[i].0 && cells[j].1 < cells[i].1 {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.iter().all(|&b| b < t)
}

pub fn subsets<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let n = items.len();
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        if idx[i] == i + n - k {
            return out;
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// Rank modulo `P` by plain Gaussian elimination.
pub fn rank_mod(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = pow(rows[rank][c], P - 2);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % P;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for k in 0..cols {
                    rows[r][k] = (rows[r][k] + P - f * rows[rank][k] % P) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Faces with `size` vertices of the complex given by a face predicate on `support`.
pub fn faces<T: Copy>(support: &[T], size: usize, face: &dyn Fn(&[T]) -> bool) -> Vec<Vec<T>> {
    subsets(support, size)
        .into_iter()
        .filter(|s| face(s))
        .collect()
}

fn boundary_rank<T: Copy + PartialEq>(upper: &[Vec<T>], lower: &[Vec<T>]) -> usize {
    if upper.is_empty() || lower.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<u64>> = upper
        .iter()
        .map(|f| {
            let mut row = vec![0u64; lower.len()];
            for drop in 0..f.len() {
                let g: Vec<T> = f
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != drop)
                    .map(|(_, &v)| v)
                    .collect();
                let at = lower
                    .iter()
                    .position(|l| *l == g)
                    .expect("boundary face present");
                row[at] = if drop % 2 == 0 { 1 } else { P - 1 };
            }
            row
        })
        .collect();
    rank_mod(rows)
}

/// `dim H̃_k` modulo `P` of the complex `{σ ⊆ support : face(σ)}`.
pub fn reduced_homology<T: Copy + PartialEq>(
    support: &[T],
    k: isize,
    face: &dyn Fn(&[T]) -> bool,
) -> usize {
    if k < -1 {
        return 0;
    }
    let size = (k + 1) as usize;
    let here = faces(support, size, face);
    if here.is_empty() {
        return 0;
    }
    let below = if size == 0 {
        Vec::new()
    } else {
        faces(support, size - 1, face)
    };
    let above = faces(support, size + 1, face);
    here.len() - boundary_rank(&here, &below) - boundary_rank(&above, &here)
}

/// `β_{i,j}` of `R/in(I_t)` by Hochster's formula over every `j`-subset of the grid.
pub fn betti(t: usize, m: usize, n: usize, i: usize, j: usize) -> usize {
    let face = move |s: &[(usize, usize)]| is_face(t, s);
    subsets(&grid(m, n), j)
        .iter()
        .map(|u| reduced_homology(u, j as isize - i as isize - 1, &face))
        .sum()
}
