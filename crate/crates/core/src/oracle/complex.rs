//! Section bases of `H^0(∧^k T)` and matrices of `d_π = [π̃, ·]`.

use std::collections::HashMap;

use itertools::Itertools;
use num::Zero;

use super::multivector::{PolyMultivector, Term};
use crate::error::{Error, Result};
use crate::exterior::{ExactMatrix, Scalar};
use crate::toric::{PoissonStructure, Space, Weight};

/// Coset representatives of degree-`k` multivector sections.
///
/// Projective: monomials of `F_k` (degree-`k` coefficients on `z_0..z_n`)
/// not chosen as RREF pivots of `ē ∧ F_{k-1}`, so they complete the Euler
/// subspace to all of `F_k`. Affine: every monomial of a weight range.
#[derive(Clone, Debug)]
pub struct SectionBasis {
    space: Space,
    k: usize,
    /// Set for affine single-weight blocks.
    weight: Option<Weight>,
    monomials: Vec<Term>,
    index: HashMap<Term, usize>,
    /// Sparse nonzero RREF rows of the Euler subspace: `(pivot, entries)`.
    reducer: Vec<(usize, Vec<(usize, Scalar)>)>,
    reps: Vec<usize>,
}

impl SectionBasis {
    pub fn space(&self) -> Space {
        self.space
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn weight(&self) -> Option<&Weight> {
        self.weight.as_ref()
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Size of the ambient monomial space before quotienting.
    pub fn ambient_len(&self) -> usize {
        self.monomials.len()
    }

    pub fn representatives(&self) -> Vec<PolyMultivector> {
        let amb = ambient(self.space);
        self.reps
            .iter()
            .map(|&r| {
                let t = &self.monomials[r];
                PolyMultivector::monomial(amb, &t.exponents, &t.derivs, Scalar::from_int(1))
                    .expect("basis monomials are canonical")
            })
            .collect()
    }

    /// Coordinates of `v` in the representatives, after reduction modulo the
    /// Euler subspace.
    pub fn coordinates(&self, v: &PolyMultivector) -> Result<Vec<Scalar>> {
        let mut dense = vec![Scalar::zero(); self.monomials.len()];
        for (t, c) in v.terms() {
            let &i = self.index.get(t).ok_or_else(|| {
                Error::Oracle(format!(
                    "term {t:?} outside the degree-{} section space{}",
                    self.k,
                    self.weight.as_ref().map_or(String::new(), |w| format!(
                        " of weight {:?} (weight preservation violated)",
                        w.coords()
                    ))
                ))
            })?;
            dense[i] = c.clone();
        }
        for (p, row) in &self.reducer {
            if dense[*p].is_zero() {
                continue;
            }
            let f = dense[*p].clone();
            for (j, x) in row {
                dense[*j] -= &f * x;
            }
        }
        Ok(self.reps.iter().map(|&r| dense[r].clone()).collect())
    }
}

pub(crate) fn ambient(space: Space) -> usize {
    if space.is_projective() {
        space.n + 1
    } else {
        space.n
    }
}

/// Exponent vectors of total degree `d` on `vars` variables, lexicographically.
fn exponent_vectors(vars: usize, d: usize) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = (0..vars)
        .combinations_with_replacement(d)
        .map(|c| {
            let mut e = vec![0u32; vars];
            for i in c {
                e[i] += 1;
            }
            e
        })
        .collect();
    out.sort();
    out
}

fn homogeneous_monomials(vars: usize, k: usize) -> Vec<Term> {
    let mut out: Vec<Term> = exponent_vectors(vars, k)
        .into_iter()
        .cartesian_product((0..vars).combinations(k).collect_vec())
        .map(|(exponents, derivs)| Term { exponents, derivs })
        .collect();
    out.sort();
    out
}

fn index_of(monomials: &[Term]) -> HashMap<Term, usize> {
    monomials
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, t)| (t, i))
        .collect()
}

/// Projective: `0 <= k <= n + 1` (degree `n + 1` is the zero quotient).
/// Affine: all monomials of multivector degree `k` whose weight has total
/// positive degree at most `degree_bound`.
pub fn section_basis(space: Space, k: usize, degree_bound: Option<u64>) -> Result<SectionBasis> {
    if space.is_projective() {
        projective_basis(space, k)
    } else {
        let bound = degree_bound
            .ok_or_else(|| Error::Oracle("affine section basis needs a degree bound".into()))?;
        if k > space.n {
            return Err(Error::Oracle(format!("degree {k} exceeds n = {}", space.n)));
        }
        let monomials: Vec<Term> = affine_weights(space.n, bound)
            .iter()
            .flat_map(|w| block_monomials(space.n, w, k))
            .sorted()
            .collect();
        Ok(plain_basis(space, k, None, monomials))
    }
}

fn plain_basis(
    space: Space,
    k: usize,
    weight: Option<Weight>,
    monomials: Vec<Term>,
) -> SectionBasis {
    let index = index_of(&monomials);
    let reps = (0..monomials.len()).collect();
    SectionBasis {
        space,
        k,
        weight,
        monomials,
        index,
        reducer: Vec::new(),
        reps,
    }
}

fn projective_basis(space: Space, k: usize) -> Result<SectionBasis> {
    let vars = space.n + 1;
    if k > vars {
        return Err(Error::Oracle(format!("degree {k} exceeds n + 1 = {vars}")));
    }
    let monomials = homogeneous_monomials(vars, k);
    let index = index_of(&monomials);
    let euler = PolyMultivector::euler(vars);
    let mut rows = Vec::new();
    if k > 0 {
        for t in homogeneous_monomials(vars, k - 1) {
            let m = PolyMultivector::monomial(vars, &t.exponents, &t.derivs, Scalar::from_int(1))?;
            let img = euler.wedge(&m)?;
            let mut row = vec![Scalar::zero(); monomials.len()];
            for (term, c) in img.terms() {
                row[index[term]] = c.clone();
            }
            rows.push(row);
        }
    }
    let (reducer, pivots) = if rows.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        let rref = ExactMatrix::from_rows(rows)?.rref();
        let reducer = rref
            .pivots
            .iter()
            .enumerate()
            .map(|(r, &p)| {
                let entries = rref
                    .matrix
                    .row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect();
                (p, entries)
            })
            .collect();
        (reducer, rref.pivots)
    };
    let reps: Vec<usize> = (0..monomials.len())
        .filter(|j| !pivots.contains(j))
        .collect();
    let basis = SectionBasis {
        space,
        k,
        weight: None,
        monomials,
        index,
        reducer,
        reps,
    };
    verify_independence(&basis)?;
    Ok(basis)
}

/// Euler rows plus unit vectors at the representatives must be independent.
fn verify_independence(b: &SectionBasis) -> Result<()> {
    let cols = b.monomials.len();
    let mut rows: Vec<Vec<Scalar>> = b
        .reducer
        .iter()
        .map(|(_, entries)| {
            let mut row = vec![Scalar::zero(); cols];
            for (j, x) in entries {
                row[*j] = x.clone();
            }
            row
        })
        .collect();
    for &r in &b.reps {
        let mut row = vec![Scalar::zero(); cols];
        row[r] = Scalar::from_int(1);
        rows.push(row);
    }
    let expected = rows.len();
    if expected == 0 {
        return Ok(());
    }
    if ExactMatrix::from_rows(rows)?.rank() != expected || expected != cols {
        return Err(Error::Oracle(format!(
            "degree-{} representatives are dependent",
            b.k
        )));
    }
    Ok(())
}

/// Affine weights `m ∈ {-1, 0, 1, ...}^n` with `Σ max(m_j, 0) <= bound`, in
/// lexicographic order.
pub fn affine_weights(n: usize, bound: u64) -> Vec<Weight> {
    let b = bound as i64;
    (0..n)
        .map(|_| -1..=b)
        .multi_cartesian_product()
        .filter(|m| m.iter().filter(|&&x| x > 0).sum::<i64>() <= b)
        .map(Weight::new)
        .collect()
}

/// Monomials `z^{m + 1_S} ξ_S` with `|S| = k`, `S ⊇ {j : m_j = -1}`.
fn block_monomials(n: usize, weight: &Weight, k: usize) -> Vec<Term> {
    let m = weight.coords();
    (0..n)
        .combinations(k)
        .filter_map(|s| {
            let exponents: Option<Vec<u32>> = (0..n)
                .map(|j| u32::try_from(m[j] + i64::from(s.contains(&j))).ok())
                .collect();
            exponents.map(|exponents| Term {
                exponents,
                derivs: s,
            })
        })
        .collect()
}

/// The degree-`k` monomials of a single affine weight.
pub fn affine_block(space: Space, weight: &Weight, k: usize) -> Result<SectionBasis> {
    if space.is_projective() {
        return Err(Error::Oracle("weight blocks are affine only".into()));
    }
    if weight.dim() != space.n {
        return Err(Error::DimensionMismatch {
            expected: space.n,
            found: weight.dim(),
        });
    }
    if weight.coords().iter().any(|&m| m < -1) {
        return Err(Error::Oracle(format!(
            "weight {:?} has no sections",
            weight.coords()
        )));
    }
    Ok(plain_basis(
        space,
        k,
        Some(weight.clone()),
        block_monomials(space.n, weight, k),
    ))
}

/// `π̃ = Σ_{i<j} A_ij z_i z_j ∂_i ∧ ∂_j` in the space's polynomial model.
pub fn lift(space: Space, pi: &PoissonStructure) -> Result<PolyMultivector> {
    if pi.n() != space.n {
        return Err(Error::DimensionMismatch {
            expected: space.n,
            found: pi.n(),
        });
    }
    let amb = ambient(space);
    let offset = if space.is_projective() { 0 } else { 1 };
    let mut out = PolyMultivector::zero(amb);
    for (i, j, a) in pi.upper_entries() {
        let (pi_, pj) = (i - offset, j - offset);
        let mut e = vec![0; amb];
        e[pi_] = 1;
        e[pj] = 1;
        out = out.add(&PolyMultivector::monomial(amb, &e, &[pi_, pj], a)?)?;
    }
    Ok(out)
}

/// Matrix of `v ↦ [π̃, v]` from `source` (degree `k`) to `target` (degree `k + 1`).
pub fn d_pi_matrix(
    space: Space,
    pi: &PoissonStructure,
    k: usize,
    source: &SectionBasis,
    target: &SectionBasis,
) -> Result<ExactMatrix> {
    if source.space != space
        || target.space != space
        || source.k != k
        || target.k != k + 1
        || source.weight != target.weight
    {
        return Err(Error::Oracle(format!(
            "inconsistent bases for d^{k} on {space}"
        )));
    }
    let lifted = lift(space, pi)?;
    let columns = source
        .representatives()
        .iter()
        .map(|v| target.coordinates(&lifted.schouten(v)?))
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::from_columns(target.len(), &columns)
}
