mod common;

use lefforge::grid::{delta, enumerate_facets, facet_count_lgv, omega, vertex_region, GridShape};
use lefforge::simplicial::{
    boundary_matrix, h_vector, reduced_euler_characteristic, reduced_homology,
    reduced_homology_dim, GridSubcomplex, SimplicialComplex,
};
use lefforge::{Field, Fp61, Fp62, Rational, VertexSet};
use num_bigint::BigInt;
use proptest::prelude::*;

const BUDGET: u64 = 1 << 22;

fn shape(t: usize, m: usize, n: usize) -> GridShape {
    GridShape::new(t, m, n).unwrap()
}

fn complex_strategy() -> impl Strategy<Value = SimplicialComplex> {
    (3usize..=8).prop_flat_map(|n| {
        prop::collection::vec(1u128..(1u128 << n), 1..6).prop_map(move |fs| {
            let facets = fs.into_iter().map(VertexSet::from_bits).collect();
            SimplicialComplex::from_facets(n, facets).unwrap()
        })
    })
}

fn oracle_homology(c: &SimplicialComplex, k: isize) -> usize {
    let verts = c.vertices().to_vec();
    let face = |s: &[usize]| c.is_face(s.iter().copied().collect());
    common::reduced_homology(&verts, k, &face)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundary_of_boundary_vanishes(c in complex_strategy()) {
        for size in 2..=c.dimension() as usize + 1 {
            let outer = boundary_matrix::<Fp61, _>(&c, size, BUDGET).unwrap().to_dense();
            let inner = boundary_matrix::<Fp61, _>(&c, size - 1, BUDGET).unwrap().to_dense();
            if outer.rows() == 0 || inner.cols() == 0 {
                continue;
            }
            let prod = inner.mul(&outer);
            for r in 0..prod.rows() {
                prop_assert!(prod.row(r).iter().all(|x| *x == Fp61::from_i64(0)));
            }
        }
    }

    #[test]
    fn euler_characteristic_is_alternating_homology(c in complex_strategy()) {
        let f = c.f_vector(BUDGET).unwrap();
        let hom = reduced_homology::<Fp61>(&c, BUDGET).unwrap();
        let alt: i128 = hom
            .iter()
            .enumerate()
            .map(|(s, &d)| if s % 2 == 0 { -(d as i128) } else { d as i128 })
            .sum();
        prop_assert_eq!(reduced_euler_characteristic(&f), alt);
    }

    #[test]
    fn homology_matches_oracle_and_other_fields(c in complex_strategy()) {
        let hom = reduced_homology::<Fp61>(&c, BUDGET).unwrap();
        prop_assert_eq!(&hom, &reduced_homology::<Fp62>(&c, BUDGET).unwrap());
        prop_assert_eq!(&hom, &reduced_homology::<Rational>(&c, BUDGET).unwrap());
        for (s, &d) in hom.iter().enumerate() {
            prop_assert_eq!(d, oracle_homology(&c, s as isize - 1));
        }
    }

    #[test]
    fn links_and_restrictions_are_subcomplexes(c in complex_strategy(), mask in any::<u8>()) {
        let u = VertexSet::from_bits(mask as u128 & c.vertices().bits());
        let r = c.restriction(u);
        for f in r.facets() {
            prop_assert!(c.is_face(*f) && f.is_subset(u));
        }
        let v = c.facets()[0].iter().next().unwrap();
        let lk = c.link(VertexSet::EMPTY.with(v)).unwrap();
        for f in lk.facets() {
            prop_assert!(c.is_face(f.with(v)) && !f.contains(v));
        }
    }
}

#[test]
fn small_complexes() {
    let s = SimplicialComplex::simplex(4, VertexSet::from_bits(0b1111)).unwrap();
    assert_eq!(reduced_homology::<Fp61>(&s, BUDGET).unwrap(), vec![0; 5]);
    let sphere = s.skeleton(2, BUDGET).unwrap();
    assert_eq!(
        reduced_homology::<Fp61>(&sphere, BUDGET).unwrap(),
        vec![0, 0, 0, 1]
    );
    let void = SimplicialComplex::from_facets(3, vec![]).unwrap();
    assert_eq!(
        reduced_homology_dim::<Fp61, _>(&void, -1, BUDGET).unwrap(),
        1
    );
    assert_eq!(s.link(VertexSet::EMPTY).unwrap(), s);
    assert_eq!(
        h_vector(&sphere.f_vector(BUDGET).unwrap(), 3),
        vec![1, 1, 1, 1]
    );
}

#[test]
fn lgv_counts_facets_for_small_t() {
    for t in 2..=3 {
        for m in t..=6 {
            for n in t..=6 {
                let Ok(s) = GridShape::new(t, m, n) else {
                    continue;
                };
                let facets = enumerate_facets(s, 1 << 22).unwrap();
                assert_eq!(BigInt::from(facets.len()), facet_count_lgv(s), "{s:?}");
            }
        }
    }
}

fn cell_map(from: GridShape, to: GridShape, shift: usize) -> impl Fn(usize) -> Option<usize> {
    move |v| {
        let (r, c) = from.coords(v);
        (r > shift && c > shift).then(|| to.index(r - shift, c - shift))
    }
}

/// The link of a corner vertex in Ω_a(t,m,n) is a copy of a smaller Ω.
#[test]
fn corner_links_are_smaller_regions() {
    for t in [3, 4] {
        for m in t + 1..=6 {
            for n in t + 1..=6 {
                let big = shape(t, m, n);
                let small = shape(t - 1, m - 1, n - 1);
                for a in 0..t {
                    let om = omega(big, a, 1 << 22).unwrap();
                    let (corner, b, shift) = if a == t - 1 {
                        (big.index(1, 1), t - 2, 1)
                    } else {
                        (big.index(m, n), a, 0)
                    };
                    let lk = om.link(VertexSet::EMPTY.with(corner)).unwrap();
                    let expect = omega(small, b, 1 << 22).unwrap();
                    let moved = lk
                        .relabel(small.vertex_count(), cell_map(big, small, shift))
                        .unwrap();
                    assert_eq!(moved, expect, "t={t} m={m} n={n} a={a}");
                }
            }
        }
    }
}

/// Deleting the corner vertex from Ω_a leaves no homology in degree t - 3.
#[test]
fn corner_deletion_is_acyclic_below() {
    for t in [3, 4] {
        for m in t + 1..=6 {
            for n in t + 1..=6 {
                let s = shape(t, m, n);
                for a in 0..t {
                    let corner = if a == t - 1 {
                        s.index(1, 1)
                    } else {
                        s.index(m, n)
                    };
                    let support = vertex_region(s, a).unwrap().without(corner);
                    let gamma = GridSubcomplex::new(s, support);
                    let d =
                        reduced_homology_dim::<Fp61, _>(&gamma, t as isize - 3, BUDGET).unwrap();
                    assert_eq!(d, 0, "t={t} m={m} n={n} a={a}");
                }
            }
        }
    }
}

#[test]
fn regions_carry_homology_in_degree_t_minus_2() {
    let s = shape(3, 4, 5);
    for a in 0..3 {
        let d = reduced_homology_dim::<Rational, _>(
            &GridSubcomplex::new(s, vertex_region(s, a).unwrap()),
            1,
            BUDGET,
        )
        .unwrap();
        assert!(d >= 1);
    }
    let d = delta(shape(2, 3, 3), 100).unwrap();
    assert_eq!(
        reduced_homology::<Fp61>(&d, BUDGET)
            .unwrap()
            .iter()
            .sum::<usize>(),
        0
    );
}
