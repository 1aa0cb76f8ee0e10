//! Closed-form cohomology: `H^k = ⊕_{I ∈ S_k(π)} V_I^k` with
//! `V_I^k = χ^I · 𝒱_I ∧ W^{k-|I|}`.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::exterior::{ExactMatrix, ExtElement, Scalar};
use crate::report::{
    BasisDescriptor, CohomologyReport, DegreeEntry, Dimension, ReportSource, WeightEntry,
};
use crate::solver::{enumerate_affine, enumerate_s_pi};
use crate::toric::{
    cyclic_shift, frame, frame_vectors, profile, sort_canonical, weight_space_dim,
    PoissonStructure, Space, Weight,
};

/// Computes `H^0..H^{k_max}`.
///
/// On Cⁿ, `degree_bound` limits the explicit listing of infinite families; it
/// is required whenever such a family contributes.
pub fn cohomology(
    space: Space,
    pi: &PoissonStructure,
    k_max: usize,
    degree_bound: Option<u64>,
    with_basis: bool,
) -> Result<CohomologyReport> {
    if pi.n() != space.n {
        return Err(Error::DimensionMismatch {
            expected: space.n,
            found: pi.n(),
        });
    }
    let mut degrees = Vec::with_capacity(k_max + 1);
    let top = k_max.min(space.n);
    if space.is_projective() {
        // S_k(π) ⊆ S_top(π) is the subset with |I| <= k.
        let all = enumerate_s_pi(space, top, pi)?;
        let mut sized = Vec::with_capacity(all.len());
        for w in all {
            let size = profile(space, &w)?.size;
            sized.push((w, size));
        }
        for k in 0..=top {
            let weights: Vec<Weight> = sized
                .iter()
                .filter(|(_, s)| *s <= k)
                .map(|(w, _)| w.clone())
                .collect();
            degrees.push(finite_entry(space, k, &weights, false, Vec::new())?);
        }
    } else {
        let enumeration = enumerate_affine(space, top, pi, degree_bound)?;
        for k in 0..=top {
            let families: Vec<_> = enumeration
                .families
                .iter()
                .filter(|f| f.pattern.len() <= k)
                .collect();
            let infinite: Vec<Vec<usize>> = families
                .iter()
                .filter(|f| !f.finite)
                .map(|f| f.pattern.clone())
                .collect();
            if !infinite.is_empty() && degree_bound.is_none() {
                return Err(Error::MissingDegreeBound {
                    k,
                    patterns: infinite,
                });
            }
            let mut weights: Vec<Weight> = families
                .iter()
                .flat_map(|f| f.particular.iter().cloned())
                .collect();
            sort_canonical(space, &mut weights);
            let truncated = !infinite.is_empty();
            let mut entry = finite_entry(space, k, &weights, truncated, infinite)?;
            if truncated {
                entry.dim = Dimension::Infinite;
            }
            degrees.push(entry);
        }
    }
    for k in top + 1..=k_max {
        degrees.push(DegreeEntry {
            k,
            dim: Dimension::Finite(0),
            weights: Some(Vec::new()),
            truncated: false,
            witness_patterns: Vec::new(),
        });
    }
    let basis = if with_basis {
        let mut out = Vec::new();
        for d in &degrees {
            for e in d.weights.iter().flatten() {
                out.extend(basis_elements(space, &e.weight, d.k)?);
            }
        }
        Some(out)
    } else {
        None
    };
    Ok(CohomologyReport {
        space,
        poisson: pi.clone(),
        source: ReportSource::Closed,
        degree_bound: if space.is_projective() {
            None
        } else {
            degree_bound
        },
        degrees,
        basis,
    })
}

fn finite_entry(
    space: Space,
    k: usize,
    weights: &[Weight],
    truncated: bool,
    witness_patterns: Vec<Vec<usize>>,
) -> Result<DegreeEntry> {
    let mut dim = 0;
    let mut entries = Vec::with_capacity(weights.len());
    for w in weights {
        let mult = weight_space_dim(space, w, k)?;
        dim += mult;
        entries.push(WeightEntry {
            weight: w.clone(),
            mult,
        });
    }
    Ok(DegreeEntry {
        k,
        dim: Dimension::Finite(dim),
        weights: Some(entries),
        truncated,
        witness_patterns,
    })
}

/// `dim H^0`. Always 1 on CPⁿ; on Cⁿ the number of Casimir weights, or
/// `Infinite` when the `T = ∅` family is unbounded.
pub fn h0(space: Space, pi: &PoissonStructure) -> Result<Dimension> {
    if space.is_projective() {
        return Ok(cohomology(space, pi, 0, None, false)?.degrees[0].dim);
    }
    let fam = crate::solver::affine_pattern_solve(space.n, &[], pi, None)?;
    Ok(if fam.finite {
        Dimension::Finite(fam.particular.len() as u64)
    } else {
        Dimension::Infinite
    })
}

/// Checks `dim H^k = Σ_{I ∈ S_{k-1}(π)} C(n-|I|, k-|I|) + |S(k, π)|`.
pub fn recursion_check(space: Space, pi: &PoissonStructure, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::Engine("recursion starts at k = 1".into()));
    }
    let report = cohomology(space, pi, k, None, false)?;
    report
        .recursion_holds(k)
        .ok_or_else(|| Error::Engine(format!("recursion undefined at k = {k}")))
}

/// Orbits of `Z_{n+1}` acting on `S_k(π_st)` by cyclic shift, each sorted with
/// its lexicographically least member first. Only defined for `π_st` on CPⁿ.
pub fn symmetry_orbits(space: Space, pi: &PoissonStructure, k: usize) -> Result<Vec<Vec<Weight>>> {
    if !space.is_projective() {
        return Err(Error::Unsupported(format!("cyclic symmetry on {space}")));
    }
    if *pi != PoissonStructure::standard(space.n) {
        return Err(Error::Unsupported(
            "cyclic symmetry for a non-standard structure".into(),
        ));
    }
    let members = enumerate_s_pi(space, k, pi)?;
    let mut seen = std::collections::BTreeSet::new();
    let mut orbits = Vec::new();
    for w in &members {
        if seen.contains(w) {
            continue;
        }
        let mut orbit = vec![w.clone()];
        let mut cur = cyclic_shift(space, w)?;
        while cur != *w {
            if members
                .binary_search_by(|m| crate::toric::canonical_cmp(space, m, &cur))
                .is_err()
            {
                return Err(Error::Engine(format!(
                    "orbit of {:?} leaves S_{k}",
                    w.full(space)
                )));
            }
            orbit.push(cur.clone());
            cur = cyclic_shift(space, &cur)?;
        }
        sort_canonical(space, &mut orbit);
        orbit.dedup();
        seen.extend(orbit.iter().cloned());
        orbits.push(orbit);
    }
    orbits.sort_by(|a, b| crate::toric::canonical_cmp(space, &a[0], &b[0]));
    Ok(orbits)
}

/// Indices available for the `W^{k-|I|}` factor: `{1..n} \ T`, dropping the
/// least index outside `T` when `0 ∈ T` so that `e_0` is not duplicated.
fn complement_pool(space: Space, minus_set: &[usize]) -> Vec<usize> {
    let mut pool: Vec<usize> = (1..=space.n).filter(|i| !minus_set.contains(i)).collect();
    if minus_set.contains(&0) && !pool.is_empty() {
        pool.remove(0);
    }
    pool
}

/// Basis of `V_I^k`: `χ^I · 𝓔_I ∧ e_C` for `C` a `(k-|I|)`-subset of the pool.
pub fn basis_elements(space: Space, weight: &Weight, k: usize) -> Result<Vec<BasisDescriptor>> {
    let p = profile(space, weight)?;
    if p.size > k {
        return Ok(Vec::new());
    }
    let pool = complement_pool(space, &p.minus_set);
    let mut generators = frame_vectors(space, &p);
    let frame_count = generators.len();
    generators.extend(
        pool.iter()
            .map(|&i| crate::exterior::ExtVector::basis(space.n, i)),
    );
    let columns: Vec<Vec<Scalar>> = generators.iter().map(|v| v.coords().to_vec()).collect();
    let rank = ExactMatrix::from_columns(space.n, &columns)?.rank();
    if rank != frame_count + pool.len() || rank != space.n {
        return Err(Error::Engine(format!(
            "complement of {:?} is not independent",
            p.full
        )));
    }
    let frame_el = frame(space, &p)?;
    let chi = chi_text(space, &p.chi_exponents);
    pool.iter()
        .copied()
        .combinations(k - p.size)
        .map(|c| {
            let el = frame_el.wedge(&ExtElement::monomial(space.n, &c)?)?;
            Ok(BasisDescriptor {
                k,
                weight: weight.clone(),
                chi_exponents: p.chi_exponents.clone(),
                frame_indices: p.minus_set.clone(),
                complement: c,
                text: format!("{chi} · {}", element_text(&el)),
            })
        })
        .collect()
}

fn chi_text(space: Space, exps: &[i64]) -> String {
    let first = space.first_index();
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("z{}", i + first)
            } else {
                format!("z{}^{e}", i + first)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

/// Renders an exterior element in the `v_i` basis, e.g. `-v1^v2 + v2^v3`.
pub fn element_text(el: &ExtElement) -> String {
    let word = |idx: &[usize]| {
        if idx.is_empty() {
            "1".to_string()
        } else {
            idx.iter().map(|i| format!("v{i}")).join("^")
        }
    };
    let terms: BTreeMap<&Vec<usize>, &Scalar> = el.terms().iter().collect();
    if terms.is_empty() {
        return "0".into();
    }
    let one = Scalar::from_int(1);
    let mut out = String::new();
    for (pos, (idx, c)) in terms.into_iter().enumerate() {
        let w = word(idx);
        let neg = -c.clone();
        let (sign, body) = if *c == one {
            ("+", w)
        } else if neg == one {
            ("-", w)
        } else if c.is_real() && c.re() < &num::BigRational::from_integer(0.into()) {
            ("-", format!("({neg})·{w}"))
        } else {
            ("+", format!("({c})·{w}"))
        };
        match (pos, sign) {
            (0, "+") => out.push_str(&body),
            (0, _) => out.push_str(&format!("-{body}")),
            (_, s) => out.push_str(&format!(" {s} {body}")),
        }
    }
    if el.terms().len() > 1 || out.starts_with('-') {
        format!("({out})")
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(n: usize) -> Space {
        Space::projective(n).unwrap()
    }

    fn dims(r: &CohomologyReport) -> Vec<u64> {
        r.finite_dims().unwrap()
    }

    #[test]
    fn cp2_standard() {
        let r = cohomology(cp(2), &PoissonStructure::standard(2), 3, None, true).unwrap();
        assert_eq!(dims(&r), vec![1, 2, 4, 0]);
        let basis = r.basis.unwrap();
        let h2: Vec<&str> = basis
            .iter()
            .filter(|b| b.k == 2)
            .map(|b| b.text.as_str())
            .collect();
        assert_eq!(h2.len(), 4);
        assert!(h2.contains(&"z0^-1 z1^-1 z2^2 · v1^v2"));
        assert!(h2.contains(&"1 · v1^v2"));
    }

    #[test]
    fn cp3_standard() {
        let r = cohomology(cp(3), &PoissonStructure::standard(3), 3, None, false).unwrap();
        assert_eq!(dims(&r), vec![1, 3, 9, 11]);
    }

    #[test]
    fn zero_structure_gives_polyvector_fields() {
        // H^k = H^0(CP², ∧^k T) for Π = 0.
        let r = cohomology(cp(2), &PoissonStructure::zero(2), 2, None, false).unwrap();
        assert_eq!(dims(&r), vec![1, 8, 10]);
    }

    #[test]
    fn c2_symplectic_torus() {
        let c2 = Space::affine(2).unwrap();
        let r = cohomology(c2, &PoissonStructure::standard(2), 2, None, true).unwrap();
        assert_eq!(dims(&r), vec![1, 2, 2]);
        let texts: Vec<&str> = r
            .basis
            .as_ref()
            .unwrap()
            .iter()
            .map(|b| b.text.as_str())
            .collect();
        assert!(texts.contains(&"z1^-1 z2^-1 · v1^v2"));
    }

    #[test]
    fn affine_zero_needs_a_bound() {
        let c2 = Space::affine(2).unwrap();
        let err = cohomology(c2, &PoissonStructure::zero(2), 1, None, false).unwrap_err();
        assert_eq!(
            err,
            Error::MissingDegreeBound {
                k: 0,
                patterns: vec![vec![]]
            }
        );
        let r = cohomology(c2, &PoissonStructure::zero(2), 1, Some(2), false).unwrap();
        assert_eq!(r.degrees[0].dim, Dimension::Infinite);
        assert!(r.degrees[0].truncated);
        assert_eq!(r.degrees[0].weights.as_ref().unwrap().len(), 6);
    }

    #[test]
    fn h0_values() {
        assert_eq!(
            h0(cp(3), &PoissonStructure::standard(3)).unwrap(),
            Dimension::Finite(1)
        );
        let c2 = Space::affine(2).unwrap();
        assert_eq!(
            h0(c2, &PoissonStructure::standard(2)).unwrap(),
            Dimension::Finite(1)
        );
        assert_eq!(
            h0(c2, &PoissonStructure::zero(2)).unwrap(),
            Dimension::Infinite
        );
    }

    #[test]
    fn recursion_on_cp3() {
        for k in 1..=3 {
            assert!(recursion_check(cp(3), &PoissonStructure::standard(3), k).unwrap());
        }
        assert!(recursion_check(cp(3), &PoissonStructure::standard(3), 0).is_err());
    }

    #[test]
    fn orbits_cp2() {
        let st = PoissonStructure::standard(2);
        let orbits = symmetry_orbits(cp(2), &st, 2).unwrap();
        let full: Vec<Vec<Vec<i64>>> = orbits
            .iter()
            .map(|o| o.iter().map(|w| w.full(cp(2))).collect())
            .collect();
        assert_eq!(
            full,
            vec![
                vec![vec![-1, -1, 2], vec![-1, 2, -1], vec![2, -1, -1]],
                vec![vec![0, 0, 0]]
            ]
        );
        assert!(symmetry_orbits(cp(2), &PoissonStructure::zero(2), 2).is_err());
    }

    #[test]
    fn orbits_cp3_top_degree() {
        let orbits = symmetry_orbits(cp(3), &PoissonStructure::standard(3), 3).unwrap();
        let mut sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 4, 4]);
    }

    #[test]
    fn element_text_forms() {
        let a = ExtElement::monomial(3, &[1, 2]).unwrap();
        let b = ExtElement::monomial(3, &[2, 3]).unwrap();
        let sum = a.scale(&Scalar::from_int(-1)).add(&b).unwrap();
        assert_eq!(element_text(&sum), "(-v1^v2 + v2^v3)");
        assert_eq!(element_text(&ExtElement::one(3)), "1");
        assert_eq!(element_text(&a.scale(&Scalar::from_int(-1))), "(-v1^v2)");
        assert_eq!(element_text(&a.scale(&Scalar::from_int(3))), "(3)·v1^v2");
    }
}
