use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest ambient vertex count supported by [`VertexSet`].
pub const MAX_VERTICES: usize = 128;

/// Subset of `{0, .., 127}` stored as a bit mask.
///
/// Sets are ordered lexicographically by their sorted element lists.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u128) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 128 {
            VertexSet(u128::MAX)
        } else {
            VertexSet((1u128 << n) - 1)
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 128 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn union(self, o: Self) -> Self {
        VertexSet(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        VertexSet(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        VertexSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 127 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

pub struct Iter(u128);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if let Some(bad) = v.iter().find(|&&x| x >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!(
                "vertex {bad} out of range"
            )));
        }
        Ok(v.into_iter().collect())
    }
}

/// Combinations of size `k` from a ground list, in revolving-door order:
/// consecutive combinations differ by exchanging a single element.
pub struct RevolvingDoor<'a> {
    ground: &'a [usize],
    c: Vec<usize>,
    k: usize,
    done: bool,
}

impl<'a> RevolvingDoor<'a> {
    pub fn new(ground: &'a [usize], k: usize) -> Self {
        let n = ground.len();
        let mut c: Vec<usize> = (0..k).collect();
        c.push(n);
        RevolvingDoor {
            ground,
            c,
            k,
            done: k > n,
        }
    }

    fn current(&self) -> VertexSet {
        self.c[..self.k].iter().map(|&i| self.ground[i]).collect()
    }

    /// Knuth's Algorithm R; `c[j - 1]` holds the 1-based `c_j`.
    fn advance(&mut self) {
        let (k, c) = (self.k, &mut self.c);
        if k == 0 {
            self.done = true;
            return;
        }
        let mut decrease;
        if k % 2 == 1 {
            if c[0] + 1 < c[1] {
                c[0] += 1;
                return;
            }
            decrease = true;
        } else {
            if c[0] > 0 {
                c[0] -= 1;
                return;
            }
            decrease = false;
        }
        let mut j = 2;
        loop {
            if j > k {
                self.done = true;
                return;
            }
            if decrease {
                if c[j - 1] >= j {
                    c[j - 1] = c[j - 2];
                    c[j - 2] = j - 2;
                    return;
                }
                j += 1;
                decrease = false;
            } else {
                if c[j - 1] + 1 < c[j] {
                    c[j - 2] = c[j - 1];
                    c[j - 1] += 1;
                    return;
                }
                j += 1;
                decrease = true;
            }
        }
    }
}

impl Iterator for RevolvingDoor<'_> {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.done {
            return None;
        }
        let out = self.current();
        self.advance();
        Some(out)
    }
}
