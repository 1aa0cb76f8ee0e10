//! Closed-form results against known weight tables and hand-derived values.

mod common;

use common::*;
use toric_poisson::engine::{cohomology, h0, symmetry_orbits};
use toric_poisson::report::{CohomologyReport, Dimension};
use toric_poisson::toric::{cyclic_shift, PoissonStructure, Weight};
use toric_poisson::Error;

fn weights_at(r: &CohomologyReport, k: usize) -> Vec<(Vec<i64>, u64)> {
    r.degree(k)
        .unwrap()
        .weights
        .as_ref()
        .unwrap()
        .iter()
        .map(|e| (e.weight.full(r.space), e.mult))
        .collect()
}

fn sorted(mut v: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    v.sort();
    v
}

#[test]
fn cp2_standard_weights() {
    let r = cohomology(cp(2), &PoissonStructure::standard(2), 4, None, false).unwrap();
    assert_eq!(r.finite_dims().unwrap(), vec![1, 2, 4, 0, 0]);
    assert_eq!(weights_at(&r, 1), vec![(vec![0, 0, 0], 2)]);
    assert_eq!(
        weights_at(&r, 2),
        vec![
            (vec![-1, -1, 2], 1),
            (vec![-1, 2, -1], 1),
            (vec![0, 0, 0], 1),
            (vec![2, -1, -1], 1)
        ]
    );
}

#[test]
fn cp3_standard_tables() {
    let r = cohomology(cp(3), &PoissonStructure::standard(3), 3, None, true).unwrap();
    assert_eq!(r.finite_dims().unwrap(), vec![1, 3, 9, 11]);

    // H²: v_i∧v_j at weight 0, then two triples of weight-one frames.
    let h2 = weights_at(&r, 2);
    assert!(h2.contains(&(vec![0, 0, 0, 0], 3)));
    let rest: Vec<Vec<i64>> = h2
        .iter()
        .filter(|(_, m)| *m == 1)
        .map(|(w, _)| w.clone())
        .collect();
    assert_eq!(
        sorted(rest),
        sorted(vec![
            vec![-1, 1, -1, 1],
            vec![-1, 2, -1, 0],
            vec![-1, 0, -1, 2],
            vec![1, -1, 1, -1],
            vec![2, -1, 0, -1],
            vec![0, -1, 2, -1],
        ])
    );

    let h3: Vec<Vec<i64>> = weights_at(&r, 3)
        .into_iter()
        .map(|(w, m)| {
            assert_eq!(m, 1);
            w
        })
        .collect();
    assert_eq!(
        sorted(h3),
        sorted(vec![
            vec![0, 0, 0, 0],
            vec![-1, 1, -1, 1],
            vec![-1, 2, -1, 0],
            vec![-1, 0, -1, 2],
            vec![1, -1, 1, -1],
            vec![2, -1, 0, -1],
            vec![0, -1, 2, -1],
            vec![-1, -1, -1, 3],
            vec![-1, -1, 3, -1],
            vec![-1, 3, -1, -1],
            vec![3, -1, -1, -1],
        ])
    );

    let basis = r.basis.unwrap();
    let top: Vec<&str> = basis
        .iter()
        .filter(|b| b.k == 3)
        .map(|b| b.text.as_str())
        .collect();
    assert_eq!(top.len(), 11);
    assert!(top
        .iter()
        .all(|t| t.ends_with("v1^v2^v3") || t.ends_with("v1^v2^v3)")));
    assert!(top.contains(&"z0^3 z1^-1 z2^-1 z3^-1 · v1^v2^v3"));
}

#[test]
fn h1_equals_n_for_standard() {
    for n in 2..=6 {
        let r = cohomology(cp(n), &PoissonStructure::standard(n), 1, None, false).unwrap();
        assert_eq!(r.degrees[1].dim, Dimension::Finite(n as u64), "n = {n}");
    }
}

#[test]
fn zero_structure_counts_sections() {
    let r = cohomology(cp(2), &PoissonStructure::zero(2), 2, None, false).unwrap();
    assert_eq!(r.finite_dims().unwrap(), vec![1, 8, 10]);
    // H⁰(CP³, T) = sl_4.
    let r = cohomology(cp(3), &PoissonStructure::zero(3), 1, None, false).unwrap();
    assert_eq!(r.degrees[1].dim, Dimension::Finite(15));
}

#[test]
fn c2_examples() {
    let a = PoissonStructure::standard(2);
    let b = a.scale(&toric_poisson::exterior::Scalar::gaussian(2, 1, 1, 1));
    for pi in [a, b] {
        let r = cohomology(cn(2), &pi, 2, None, false).unwrap();
        assert_eq!(r.finite_dims().unwrap(), vec![1, 2, 2]);
        assert!(r.degrees.iter().all(|d| !d.truncated));
    }
    assert_eq!(
        h0(cn(2), &PoissonStructure::standard(2)).unwrap(),
        Dimension::Finite(1)
    );
}

#[test]
fn c2_zero_is_infinite_everywhere() {
    let err = cohomology(cn(2), &PoissonStructure::zero(2), 2, None, false).unwrap_err();
    assert!(matches!(err, Error::MissingDegreeBound { k: 0, .. }));
    let r = cohomology(cn(2), &PoissonStructure::zero(2), 2, Some(3), false).unwrap();
    for d in &r.degrees {
        assert_eq!(d.dim, Dimension::Infinite);
        assert!(d.truncated);
        assert!(d.witness_patterns.contains(&vec![]));
    }
}

#[test]
fn cyclic_symmetry_and_orbit_sums() {
    for n in 2..=3 {
        let st = PoissonStructure::standard(n);
        let r = cohomology(cp(n), &st, n, None, false).unwrap();
        for k in 0..=n {
            let orbits = symmetry_orbits(cp(n), &st, k).unwrap();
            let entry = r.degree(k).unwrap();
            let mult = |w: &Weight| {
                entry
                    .weights
                    .as_ref()
                    .unwrap()
                    .iter()
                    .find(|e| e.weight == *w)
                    .unwrap()
                    .mult
            };
            let total: u64 = orbits.iter().flatten().map(mult).sum();
            assert_eq!(Dimension::Finite(total), entry.dim);
            for w in orbits.iter().flatten() {
                let shifted = cyclic_shift(cp(n), w).unwrap();
                assert!(orbits.iter().flatten().any(|x| *x == shifted));
            }
        }
    }
}
