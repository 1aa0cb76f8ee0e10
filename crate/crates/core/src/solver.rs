//! Enumeration of the weight sets `S_k` and `S_k(π)`.
//!
//! On CPⁿ the sets are finite and found by a box search over `[-1, n]^n`.
//! On Cⁿ every minus-set pattern `T` gives a linear system in the remaining
//! coordinates; its nonnegative integer solutions are found exactly by
//! enumerating the vertices and extreme rays of the solution polyhedron.

use itertools::Itertools;
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exterior::{ExactMatrix, Scalar};
use crate::toric::{
    admissible, cocycle_condition, sort_canonical, PoissonStructure, Space, Weight,
};

fn check_degree(space: Space, k: usize) -> Result<()> {
    if k > space.n {
        return Err(Error::DegreeOutOfRange { k, n: space.n });
    }
    Ok(())
}

fn require_projective(space: Space) -> Result<()> {
    if !space.is_projective() {
        return Err(Error::Unsupported(format!(
            "projective enumeration on {space}"
        )));
    }
    Ok(())
}

/// `S_k` on CPⁿ: all weights whose full profile is `>= -1` with `|I| <= k`,
/// in canonical order. With every entry `>= -1` and total zero no entry can
/// exceed `n`, so the box `[-1, n]^n` is exhaustive.
pub fn enumerate_s(space: Space, k: usize) -> Result<Vec<Weight>> {
    require_projective(space)?;
    check_degree(space, k)?;
    let n = space.n as i64;
    let mut out: Vec<Weight> = (0..space.n)
        .map(|_| -1..=n)
        .multi_cartesian_product()
        .map(Weight::new)
        .filter(|w| admissible(space, w, k))
        .collect();
    sort_canonical(space, &mut out);
    Ok(out)
}

/// `S_k(π)`: the weights of `S_k` satisfying the cocycle condition.
pub fn enumerate_s_pi(space: Space, k: usize, pi: &PoissonStructure) -> Result<Vec<Weight>> {
    let mut out = Vec::new();
    for w in enumerate_s(space, k)? {
        if cocycle_condition(space, &w, pi)? {
            out.push(w);
        }
    }
    Ok(out)
}

/// Solutions of one minus-set pattern on Cⁿ: weights with `m_t = -1` for
/// `t ∈ T`, `m_j >= 0` otherwise, and `ι_I Π ∈ span{e_t : t ∈ T}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionFamily {
    /// The forced `-1` coordinates (1-based).
    pub pattern: Vec<usize>,
    /// Explicit solutions: all of them when `finite`, otherwise those within
    /// the scan bound (or a set of witnesses when no bound was given).
    pub particular: Vec<Weight>,
    /// Extreme rays of the recession cone as primitive integer vectors of
    /// length `n`, zero on the pattern. Empty when `finite`.
    pub free_directions: Vec<Vec<i64>>,
    pub finite: bool,
    /// True when the explicit list is known to be incomplete.
    pub truncated: bool,
}

/// Total positive degree `Σ max(m_j, 0)` of `χ^I`.
pub fn positive_degree(w: &Weight) -> u64 {
    w.coords()
        .iter()
        .filter(|&&m| m > 0)
        .map(|&m| m as u64)
        .sum()
}

fn rat(v: &Scalar) -> BigRational {
    v.re().clone()
}

fn real(v: BigRational) -> Scalar {
    Scalar::from(v)
}

/// The pattern system `B x = b` over the free coordinates, complex equations
/// split into real and imaginary rows.
struct PatternSystem {
    free: Vec<usize>,
    b_mat: ExactMatrix,
    rhs: Vec<Scalar>,
}

impl PatternSystem {
    fn new(n: usize, pattern: &[usize], pi: &PoissonStructure) -> Self {
        let free: Vec<usize> = (1..=n).filter(|j| !pattern.contains(j)).collect();
        let mut b_mat = ExactMatrix::zeros(2 * free.len(), free.len());
        let mut rhs = Vec::with_capacity(2 * free.len());
        for (r, &j) in free.iter().enumerate() {
            for (c, &i) in free.iter().enumerate() {
                let a = pi.entry(i, j);
                b_mat[(2 * r, c)] = real(a.re().clone());
                b_mat[(2 * r + 1, c)] = real(a.im().clone());
            }
            let shift: Scalar = pattern.iter().map(|&t| pi.entry(t, j).clone()).sum();
            rhs.push(real(shift.re().clone()));
            rhs.push(real(shift.im().clone()));
        }
        Self { free, b_mat, rhs }
    }

    fn columns(&self, subset: &[usize]) -> ExactMatrix {
        let cols: Vec<Vec<Scalar>> = subset.iter().map(|&c| self.b_mat.column(c)).collect();
        ExactMatrix::from_columns(self.b_mat.rows(), &cols).expect("consistent column length")
    }

    /// Vertices of `{x >= 0 : B x = b}` (basic feasible solutions).
    fn vertices(&self) -> Vec<Vec<BigRational>> {
        let f = self.free.len();
        let mut out: Vec<Vec<BigRational>> = Vec::new();
        for size in 0..=f {
            for subset in (0..f).combinations(size) {
                let m = self.columns(&subset);
                if m.rank() != size {
                    continue;
                }
                let Some(y) = m.solve(&self.rhs).expect("shapes agree") else {
                    continue;
                };
                if y.iter().any(|v| v.re().is_negative()) {
                    continue;
                }
                let mut x = vec![BigRational::zero(); f];
                for (&c, v) in subset.iter().zip(&y) {
                    x[c] = rat(v);
                }
                if !out.contains(&x) {
                    out.push(x);
                }
            }
        }
        out
    }

    /// Extreme rays of `{y >= 0 : B y = 0}` as primitive integer vectors.
    fn rays(&self) -> Vec<Vec<BigInt>> {
        let f = self.free.len();
        let mut out: Vec<Vec<BigInt>> = Vec::new();
        for size in 1..=f {
            for subset in (0..f).combinations(size) {
                let mut m = self.columns(&subset);
                let mut rows: Vec<Vec<Scalar>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
                rows.push(vec![Scalar::one(); size]);
                m = ExactMatrix::from_rows(rows).expect("rectangular");
                if m.rank() != size {
                    continue;
                }
                let mut target = vec![Scalar::zero(); m.rows()];
                *target.last_mut().expect("normalization row") = Scalar::one();
                let Some(y) = m.solve(&target).expect("shapes agree") else {
                    continue;
                };
                if y.iter().any(|v| v.re().is_negative()) {
                    continue;
                }
                let mut ray = vec![BigRational::zero(); f];
                for (&c, v) in subset.iter().zip(&y) {
                    ray[c] = rat(v);
                }
                let ray = primitive(&ray);
                if !out.contains(&ray) {
                    out.push(ray);
                }
            }
        }
        out
    }

    /// Integer points `x >= 0` of `B x = b` with `x_c <= upper[c]` and,
    /// when given, `Σ x <= total`.
    fn integer_points(&self, upper: &[BigInt], total: Option<u64>) -> Vec<Vec<BigInt>> {
        let f = self.free.len();
        let mut aug = ExactMatrix::zeros(self.b_mat.rows(), f + 1);
        for i in 0..self.b_mat.rows() {
            for j in 0..f {
                aug[(i, j)] = self.b_mat[(i, j)].clone();
            }
            aug[(i, f)] = self.rhs[i].clone();
        }
        let rref = aug.rref();
        if rref.pivots.last() == Some(&f) {
            return Vec::new();
        }
        let non_pivots: Vec<usize> = (0..f).filter(|c| !rref.pivots.contains(c)).collect();
        let mut out = Vec::new();
        let mut assignment = vec![BigInt::zero(); f];
        let search = IntegerSearch {
            rref: &rref.matrix,
            pivots: &rref.pivots,
            non_pivots: &non_pivots,
            upper,
            total,
            f,
        };
        search.recurse(0, &mut assignment, &mut out);
        out.sort();
        out
    }
}

struct IntegerSearch<'a> {
    rref: &'a ExactMatrix,
    pivots: &'a [usize],
    non_pivots: &'a [usize],
    upper: &'a [BigInt],
    total: Option<u64>,
    f: usize,
}

impl IntegerSearch<'_> {
    fn recurse(&self, depth: usize, x: &mut Vec<BigInt>, out: &mut Vec<Vec<BigInt>>) {
        let used: BigInt = self.non_pivots[..depth].iter().map(|&c| x[c].clone()).sum();
        if let Some(t) = self.total {
            if used > BigInt::from(t) {
                return;
            }
        }
        if depth == self.non_pivots.len() {
            if let Some(full) = self.complete(x) {
                out.push(full);
            }
            return;
        }
        let c = self.non_pivots[depth];
        let mut cap = self.upper[c].clone();
        if let Some(t) = self.total {
            cap = cap.min(BigInt::from(t) - &used);
        }
        let mut v = BigInt::zero();
        while v <= cap {
            x[c] = v.clone();
            self.recurse(depth + 1, x, out);
            v += 1;
        }
        x[c] = BigInt::zero();
    }

    /// Fills in the pivot coordinates and keeps the point if it is integral,
    /// nonnegative and within bounds.
    fn complete(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut full = x.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let mut value = rat(&self.rref[(r, self.f)]);
            for &c in self.non_pivots {
                let coef = rat(&self.rref[(r, c)]);
                if !coef.is_zero() {
                    value -= coef * BigRational::from_integer(x[c].clone());
                }
            }
            if !value.is_integer() || value.is_negative() {
                return None;
            }
            let v = value.to_integer();
            if v > self.upper[p] {
                return None;
            }
            full[p] = v;
        }
        if let Some(t) = self.total {
            if full.iter().sum::<BigInt>() > BigInt::from(t) {
                return None;
            }
        }
        Some(full)
    }
}

/// Scales a nonzero rational vector to the primitive integer vector on the
/// same ray.
fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

fn ceil_int(v: &BigRational) -> BigInt {
    v.ceil().to_integer()
}

fn to_weight(n: usize, pattern: &[usize], free: &[usize], x: &[BigInt]) -> Result<Weight> {
    let mut coords = vec![0i64; n];
    for &t in pattern {
        coords[t - 1] = -1;
    }
    for (&j, v) in free.iter().zip(x) {
        coords[j - 1] = v
            .to_i64()
            .ok_or_else(|| Error::Engine(format!("weight coordinate {v} exceeds i64")))?;
    }
    Ok(Weight::new(coords))
}

/// Solves one minus-set pattern `T ⊆ {1..n}` exactly.
///
/// Finite families are listed completely. For infinite ones, `scan_bound`
/// limits the listing to `Σ max(m_j, 0) <= scan_bound`; without a bound a
/// set of witness solutions is returned instead.
pub fn affine_pattern_solve(
    n: usize,
    pattern: &[usize],
    pi: &PoissonStructure,
    scan_bound: Option<u64>,
) -> Result<SolutionFamily> {
    if pi.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: pi.n(),
        });
    }
    let mut pattern = pattern.to_vec();
    pattern.sort_unstable();
    pattern.dedup();
    if pattern.iter().any(|&t| t == 0 || t > n) {
        return Err(Error::Toric(format!(
            "pattern {pattern:?} not inside 1..={n}"
        )));
    }
    let system = PatternSystem::new(n, &pattern, pi);
    let f = system.free.len();
    let vertices = system.vertices();
    let rays = system.rays();

    // Every integer point is a point of the bounded region
    // conv(vertices) + Σ [0, 1)·ray plus a nonnegative integer combination of
    // primitive rays, so that region decides integer feasibility.
    let upper: Vec<BigInt> = (0..f)
        .map(|c| {
            let v_max = vertices
                .iter()
                .map(|v| ceil_int(&v[c]))
                .max()
                .unwrap_or_else(BigInt::zero);
            v_max + rays.iter().map(|r| r[c].clone()).sum::<BigInt>()
        })
        .collect();
    let witnesses = if vertices.is_empty() {
        Vec::new()
    } else {
        system.integer_points(&upper, None)
    };

    let finite = rays.is_empty() || witnesses.is_empty();
    let weight_of = |x: &Vec<BigInt>| to_weight(n, &pattern, &system.free, x);

    let particular: Vec<Weight> = if finite {
        witnesses.iter().map(weight_of).collect::<Result<_>>()?
    } else if let Some(bound) = scan_bound {
        let cap = vec![BigInt::from(bound); f];
        system
            .integer_points(&cap, Some(bound))
            .iter()
            .map(weight_of)
            .collect::<Result<_>>()?
    } else {
        witnesses.iter().map(weight_of).collect::<Result<_>>()?
    };

    let free_directions = if finite {
        Vec::new()
    } else {
        rays.iter()
            .map(|r| {
                let mut full = vec![0i64; n];
                for (&j, v) in system.free.iter().zip(r) {
                    full[j - 1] = v.to_i64().unwrap_or(i64::MAX);
                }
                full
            })
            .collect()
    };

    let mut particular = particular;
    let space = Space::affine(n)?;
    sort_canonical(space, &mut particular);
    Ok(SolutionFamily {
        pattern,
        particular,
        free_directions,
        finite,
        truncated: !finite,
    })
}

/// `S_k(π)` on Cⁿ, family by family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineEnumeration {
    pub families: Vec<SolutionFamily>,
    /// Union of the explicit solutions, in canonical order.
    pub weights: Vec<Weight>,
}

impl AffineEnumeration {
    pub fn all_finite(&self) -> bool {
        self.families.iter().all(|f| f.finite)
    }

    pub fn infinite_patterns(&self) -> Vec<Vec<usize>> {
        self.families
            .iter()
            .filter(|f| !f.finite)
            .map(|f| f.pattern.clone())
            .collect()
    }
}

/// Union over all patterns with `|T| <= k`. Solutions of infinite families
/// are listed up to `degree_bound`.
pub fn enumerate_affine(
    space: Space,
    k: usize,
    pi: &PoissonStructure,
    degree_bound: Option<u64>,
) -> Result<AffineEnumeration> {
    if space.is_projective() {
        return Err(Error::Unsupported(format!("affine enumeration on {space}")));
    }
    check_degree(space, k)?;
    let mut families = Vec::new();
    for size in 0..=k {
        for pattern in (1..=space.n).combinations(size) {
            families.push(affine_pattern_solve(space.n, &pattern, pi, degree_bound)?);
        }
    }
    let mut weights: Vec<Weight> = families
        .iter()
        .flat_map(|f| f.particular.iter().cloned())
        .collect();
    sort_canonical(space, &mut weights);
    Ok(AffineEnumeration { families, weights })
}
