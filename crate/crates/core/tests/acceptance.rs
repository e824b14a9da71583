//! The acceptance suite. Each criterion prints one PASS or FAIL line; the
//! test fails if any criterion does.

mod common;

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use lefforge::artinian::{
    build_integer_reduction, build_reduction, expected_hilbert, hilbert_function,
    integer_lefschetz_element, lefschetz_verdict, multiplication_rank, Outcome, Property,
    QuotientLimits, Ring, VerdictConfig,
};
use lefforge::betti::{classify_h0_subcomplexes, hochster_betti, omega_lower_bound};
use lefforge::criteria::{f_value, f_value_of};
use lefforge::grid::{delta, enumerate_facets, facet_count_lgv, omega, vertex_region, GridShape};
use lefforge::linalg::SparseMatrix;
use lefforge::simplicial::{
    boundary_matrix, reduced_euler_characteristic, reduced_homology, reduced_homology_dim,
    GridSubcomplex,
};
use lefforge::{Field, FieldKind, Fp61, Fp62, VertexSet};
use num_bigint::BigInt;

const BUDGET: u64 = 1 << 24;

fn shape(t: usize, m: usize, n: usize) -> GridShape {
    GridShape::new(t, m, n).unwrap()
}

fn corner(s: GridShape, field: FieldKind) -> u64 {
    let h = s.height();
    hochster_betti(s, h, h + s.t() - 1, field, BUDGET)
        .unwrap()
        .value
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn criterion_1() -> Result<(), String> {
    for (m, n) in [(3, 3), (3, 4), (4, 4), (3, 5)] {
        let b = corner(shape(2, m, n), FieldKind::default());
        check(b == 2, || {
            format!("β corner of (2,{m},{n}) is {b}, expected 2")
        })?;
    }
    for n in 3..=6 {
        let b = corner(shape(2, 2, n), FieldKind::default());
        check(b == n as u64 - 1, || {
            format!("β corner of (2,2,{n}) is {b}")
        })?;
    }
    Ok(())
}

fn criterion_2() -> Result<(), String> {
    for (m, n, total) in [(3, 3, 126), (3, 4, 792)] {
        let s = shape(2, m, n);
        let want = vec![vertex_region(s, 0).unwrap(), vertex_region(s, 1).unwrap()];

        // brute force over every subset of size h + 1, cone vertices included
        let cells = common::grid(m, n);
        let face = |u: &[(usize, usize)]| common::is_face(2, u);
        let subsets = common::subsets(&cells, s.height() + 1);
        check(subsets.len() == total, || {
            format!("{} subsets at ({m},{n})", subsets.len())
        })?;
        let mut hits = Vec::new();
        for u in &subsets {
            let d = common::reduced_homology(u, 0, &face);
            if d >= 1 {
                check(d == 1, || format!("H̃_0 = {d} on {u:?}"))?;
                hits.push(s.set_from_cells(u).unwrap());
            }
        }
        hits.sort();
        let mut sorted = want.clone();
        sorted.sort();
        check(hits == sorted, || {
            format!("oracle found {hits:?} at ({m},{n})")
        })?;

        let mut lib: Vec<_> = classify_h0_subcomplexes(m, n, FieldKind::default(), BUDGET)
            .unwrap()
            .into_iter()
            .map(|w| (w.subset, w.dim))
            .collect();
        lib.sort();
        let expect: Vec<_> = sorted.iter().map(|&u| (u, 1)).collect();
        check(lib == expect, || {
            format!("library found {lib:?} at ({m},{n})")
        })?;
    }
    Ok(())
}

fn criterion_3() -> Result<(), String> {
    for t in 2..=4 {
        for m in t + 1..=7 {
            for n in t + 1..=7 {
                let b = omega_lower_bound(shape(t, m, n), FieldKind::default())
                    .unwrap()
                    .value;
                check(b >= t as u64, || {
                    format!("Ω bound {b} < t at ({t},{m},{n})")
                })?;
            }
        }
    }
    let s = shape(3, 4, 4);
    let bound = omega_lower_bound(s, FieldKind::Rational).unwrap().value;
    let full = hochster_betti(s, 4, 6, FieldKind::Rational, BUDGET)
        .unwrap()
        .value;
    check(full >= bound && bound >= 3, || {
        format!("β_4,6 = {full}, bound {bound}")
    })
}

fn criterion_4() -> Result<(), String> {
    let mut shapes = vec![(2, 3, 3), (2, 3, 4), (2, 4, 4), (2, 3, 5), (3, 4, 4)];
    shapes.extend((3..=6).map(|n| (2, 2, n)));
    for (t, m, n) in shapes {
        let s = shape(t, m, n);
        let q = build_reduction::<Fp61>(s, Ring::Initial, 7)
            .unwrap()
            .quotient(QuotientLimits::default())
            .unwrap();
        let soc = q.socle_dimensions().unwrap();
        let top = soc.get(t - 1).copied().unwrap_or(0) as u64;
        let b = corner(s, FieldKind::default());
        check(top == b, || {
            format!("socle {soc:?} vs β = {b} at ({t},{m},{n})")
        })?;
        if (t, m, n) == (2, 3, 3) {
            check(top == 2, || format!("socle {soc:?} at (2,3,3)"))?;
        }
    }
    Ok(())
}

fn criterion_5() -> Result<(), String> {
    for t in 2..=3 {
        for m in t..=6 {
            for n in t..=6 {
                let Ok(s) = GridShape::new(t, m, n) else {
                    continue;
                };
                let hv = expected_hilbert(s).unwrap();
                for ring in [Ring::Initial, Ring::Minors] {
                    let hf =
                        hilbert_function(&build_reduction::<Fp61>(s, ring, 3).unwrap()).unwrap();
                    check(hf.values == hv, || {
                        format!(
                            "{ring:?} HF {:?} vs h-vector {hv:?} at ({t},{m},{n})",
                            hf.values
                        )
                    })?;
                }
            }
        }
    }
    let hv = expected_hilbert(shape(2, 3, 3)).unwrap();
    check(hv == [1, 4, 1], || format!("h-vector of (2,3,3) is {hv:?}"))
}

fn verdict(t: usize, m: usize, n: usize, ring: Ring, p: Property) -> Outcome {
    lefschetz_verdict(shape(t, m, n), ring, p, &VerdictConfig::default())
        .unwrap()
        .outcome
}

fn expect_outcome(
    t: usize,
    m: usize,
    n: usize,
    ring: Ring,
    p: Property,
    want: Outcome,
) -> Result<(), String> {
    let got = verdict(t, m, n, ring, p);
    check(got == want, || {
        format!("{ring:?} {p:?} at ({t},{m},{n}) is {got:?}")
    })
}

fn criterion_6() -> Result<(), String> {
    use Outcome::*;
    use Property::*;
    use Ring::*;

    for (m, n) in [
        (3, 3),
        (3, 4),
        (3, 5),
        (2, 3),
        (2, 4),
        (2, 5),
        (2, 6),
        (2, 7),
    ] {
        expect_outcome(2, m, n, Initial, Slp, HoldsCertified)?;
    }

    let v = lefschetz_verdict(shape(2, 4, 4), Initial, Wlp, &VerdictConfig::default()).unwrap();
    check(v.outcome == FailsCertified, || {
        format!("(2,4,4) WLP is {:?}", v.outcome)
    })?;
    let c = v.certificate.ok_or("no certificate for (2,4,4)")?;
    check(c.f_value == 0.into() && c.betti_lower_bound >= 2, || {
        format!("{c:?}")
    })?;

    expect_outcome(3, 4, 4, Initial, Slp, HoldsCertified)?;
    expect_outcome(3, 4, 5, Initial, Wlp, HoldsCertified)?;
    check(verdict(3, 4, 5, Initial, Slp).fails(), || {
        "(3,4,5) initial SLP does not fail".into()
    })?;
    expect_outcome(3, 4, 5, Minors, Slp, HoldsCertified)?;
    check(verdict(3, 4, 6, Initial, Wlp).fails(), || {
        "(3,4,6) initial WLP does not fail".into()
    })?;
    expect_outcome(3, 4, 6, Minors, Slp, HoldsCertified)?;

    // F_4(5,6) < 0 rules out the F certificate; the failure rests on the
    // Betti floor and a rank deficiency seen in every trial over both primes
    let s = shape(4, 5, 6);
    check(f_value(s) < 0.into(), || "F_4(5,6) is not negative".into())?;
    let floor = omega_lower_bound(s, FieldKind::default()).unwrap().value;
    check(floor >= 4, || format!("Betti floor {floor} at (4,5,6)"))?;
    let v = lefschetz_verdict(s, Initial, Wlp, &VerdictConfig::default()).unwrap();
    check(v.outcome.fails(), || {
        format!("(4,5,6) WLP is {:?}", v.outcome)
    })?;
    let primes: std::collections::BTreeSet<_> =
        v.trials.iter().map(|t| t.field.characteristic()).collect();
    check(primes.len() == 2 && v.trials.len() >= 3, || {
        format!("trials over {primes:?}")
    })?;
    check(v.trials.iter().all(|t| t.deficient == [(3, 1)]), || {
        format!(
            "deficient sets {:?}",
            v.trials.iter().map(|t| &t.deficient).collect::<Vec<_>>()
        )
    })?;

    for (t, m, n) in [
        (2, 2, 3),
        (2, 2, 4),
        (2, 2, 5),
        (2, 2, 6),
        (3, 3, 4),
        (3, 3, 5),
    ] {
        let model = build_reduction::<Fp61>(shape(t, m, n), Initial, 1).unwrap();
        check(model.power_ideal_check(), || {
            format!("power ideal check fails at ({t},{m},{n})")
        })?;
        expect_outcome(t, m, n, Initial, Slp, HoldsCertified)?;
    }
    Ok(())
}

fn criterion_7() -> Result<(), String> {
    let f = |t, m, n| f_value_of(t, m, n).unwrap();
    check(f(2, 3, 6) == 0.into(), || "F_2(3,6) != 0".into())?;
    for t in 2..=6i64 {
        let want = BigInt::from(-t * (t + 1) / 2);
        let got = f(t as usize, t as usize + 1, t as usize + 1);
        check(got == want, || format!("F_{t}(t+1,t+1) = {got}"))?;
    }
    for t in 2..=8i64 {
        let want = BigInt::from((t + 1) * (t + 2) * t * (t - 5) / 24);
        let got = f(t as usize, t as usize + 1, t as usize + 2);
        check(got == want, || format!("F_{t}(t+1,t+2) = {got}"))?;
    }
    for t in 2..=5 {
        for m in t..=12 {
            for n in t..=12 {
                if (m - t) * (n - t) < 2 {
                    continue;
                }
                check(f(t, m + 1, n) > f(t, m, n), || {
                    format!("F not increasing in m at ({t},{m},{n})")
                })?;
            }
        }
    }
    Ok(())
}

fn sparse_product(a: &SparseMatrix<Fp61>, b: &SparseMatrix<Fp61>) -> HashMap<(usize, usize), Fp61> {
    let mut rows_of_b: HashMap<usize, Vec<(usize, Fp61)>> = HashMap::new();
    for (r, c, v) in b.entries() {
        rows_of_b.entry(*r).or_default().push((*c, *v));
    }
    let mut out: HashMap<(usize, usize), Fp61> = HashMap::new();
    for (i, k, w) in a.entries() {
        for (j, v) in rows_of_b.get(k).into_iter().flatten() {
            let e = out.entry((*i, *j)).or_insert_with(|| Fp61::from_i64(0));
            *e += *w * *v;
        }
    }
    out
}

fn criterion_8() -> Result<(), String> {
    let suite: Vec<GridShape> = [
        (2, 3, 3),
        (2, 3, 4),
        (3, 4, 4),
        (3, 4, 5),
        (2, 2, 5),
        (4, 5, 5),
    ]
    .into_iter()
    .map(|(t, m, n)| shape(t, m, n))
    .collect();

    // boundary of boundary, Euler characteristic and dual-prime ranks on Δ and every Ω_a
    for &s in &suite {
        // the full complex only where its face poset stays small
        let full = delta(s, BUDGET).unwrap();
        let mut complexes = Vec::new();
        if full.dimension() < 12 {
            complexes.push(full);
        }
        complexes.extend((0..s.t()).map(|a| omega(s, a, BUDGET).unwrap()));
        for c in &complexes {
            let top = c.dimension() as usize + 1;
            for size in 1..=top {
                let outer = boundary_matrix::<Fp61, _>(c, size, BUDGET).unwrap();
                let other = boundary_matrix::<Fp62, _>(c, size, BUDGET).unwrap();
                check(outer.rank() == other.rank(), || {
                    format!("boundary ranks differ on {s:?}")
                })?;
                if size < 2 {
                    continue;
                }
                let inner = boundary_matrix::<Fp61, _>(c, size - 1, BUDGET).unwrap();
                let zero = sparse_product(&inner, &outer)
                    .values()
                    .all(|x| *x == Fp61::from_i64(0));
                check(zero, || format!("∂∘∂ != 0 on {s:?} size {size}"))?;
            }
            let f = c.f_vector(BUDGET).unwrap();
            let hom = reduced_homology::<Fp61>(c, BUDGET).unwrap();
            let alt: i128 = hom
                .iter()
                .enumerate()
                .map(|(k, &d)| if k % 2 == 0 { -(d as i128) } else { d as i128 })
                .sum();
            check(alt == reduced_euler_characteristic(&f), || {
                format!("Euler mismatch on {s:?}")
            })?;
            check(hom == reduced_homology::<Fp62>(c, BUDGET).unwrap(), || {
                format!("homology differs on {s:?}")
            })?;
        }
    }

    for t in 2..=3 {
        for m in t..=6 {
            for n in t..=6 {
                let Ok(s) = GridShape::new(t, m, n) else {
                    continue;
                };
                let count = enumerate_facets(s, BUDGET).unwrap().len();
                check(BigInt::from(count) == facet_count_lgv(s), || {
                    format!("LGV mismatch at {s:?}")
                })?;
            }
        }
    }

    // the link of the corner vertex of Ω_a(3,m,n) is Ω_b(2,m-1,n-1)
    for m in 4..=6 {
        for n in 4..=6 {
            let big = shape(3, m, n);
            let small = shape(2, m - 1, n - 1);
            for a in 0..3 {
                let (corner, b, shift) = if a == 2 {
                    (big.index(1, 1), 1, 1)
                } else {
                    (big.index(m, n), a, 0)
                };
                let lk = omega(big, a, BUDGET)
                    .unwrap()
                    .link(VertexSet::EMPTY.with(corner))
                    .unwrap();
                let moved = lk
                    .relabel(small.vertex_count(), |v| {
                        let (r, c) = big.coords(v);
                        (r > shift && c > shift).then(|| small.index(r - shift, c - shift))
                    })
                    .unwrap();
                check(moved == omega(small, b, BUDGET).unwrap(), || {
                    format!("link mismatch at (3,{m},{n}) a={a}")
                })?;
                let rest = GridSubcomplex::new(big, vertex_region(big, a).unwrap().without(corner));
                let d = reduced_homology_dim::<Fp61, _>(&rest, 0, BUDGET).unwrap();
                check(d == 0, || {
                    format!("corner deletion not connected at (3,{m},{n}) a={a}")
                })?;
            }
        }
    }

    // an initial ring with a property forces it on the minors
    for &s in &suite {
        for p in [Property::Wlp, Property::Slp] {
            let cfg = VerdictConfig::default();
            let a = lefschetz_verdict(s, Ring::Initial, p, &cfg)
                .unwrap()
                .outcome;
            let b = lefschetz_verdict(s, Ring::Minors, p, &cfg).unwrap().outcome;
            check(!(a.holds() && b.fails()), || {
                format!("initial holds but minors fail: {s:?} {p:?}")
            })?;
        }
    }

    // one integer reduction read in both prime fields
    for &s in &suite {
        let q61 = build_integer_reduction::<Fp61>(s, Ring::Initial, 11).unwrap();
        let q62 = build_integer_reduction::<Fp62>(s, Ring::Initial, 11).unwrap();
        let q61 = q61.quotient(QuotientLimits::default()).unwrap();
        let q62 = q62.quotient(QuotientLimits::default()).unwrap();
        check(q61.hilbert_function() == q62.hilbert_function(), || {
            format!("HF differs on {s:?}")
        })?;
        let l61 = integer_lefschetz_element::<Fp61>(s.height(), 11);
        let l62 = integer_lefschetz_element::<Fp62>(s.height(), 11);
        let top = q61.hilbert_function().len();
        for j in 0..top {
            for k in 1..top - j {
                let r61 = multiplication_rank(&q61, &l61, k, j).unwrap();
                let r62 = multiplication_rank(&q62, &l62, k, j).unwrap();
                check(r61 == r62, || {
                    format!("×L^{k} ranks differ at degree {j} on {s:?}")
                })?;
            }
        }
    }
    Ok(())
}

type Criterion = fn() -> Result<(), String>;

#[test]
fn acceptance() {
    let criteria: [(&str, Criterion, Duration); 8] = [
        (
            "betti corner for t = 2",
            criterion_1,
            Duration::from_secs(60),
        ),
        (
            "disconnected restrictions by brute force",
            criterion_2,
            Duration::from_secs(30),
        ),
        (
            "Ω lower bound reaches t",
            criterion_3,
            Duration::from_secs(300),
        ),
        (
            "socle equals the last Betti column",
            criterion_4,
            Duration::from_secs(300),
        ),
        (
            "Hilbert functions equal the h-vector",
            criterion_5,
            Duration::from_secs(120),
        ),
        (
            "Lefschetz verdict table",
            criterion_6,
            Duration::from_secs(900),
        ),
        ("closed forms of F", criterion_7, Duration::from_secs(10)),
        ("invariant suites", criterion_8, Duration::from_secs(600)),
    ];
    let mut failed = Vec::new();
    for (k, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = match catch_unwind(AssertUnwindSafe(run)) {
            Ok(r) => r,
            Err(_) => Err("panicked".into()),
        };
        let took = start.elapsed();
        let result = result.and_then(|()| {
            check(took <= limit, || {
                format!("took {took:.1?}, limit {limit:?}")
            })
        });
        match result {
            Ok(()) => println!("criterion {}: PASS  {name} ({took:.1?})", k + 1),
            Err(e) => {
                println!("criterion {}: FAIL  {name} ({took:.1?}): {e}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
