//! The two toric spaces (CPⁿ and Cⁿ), torus weights and their profiles, toric
//! Poisson structures and the cocycle condition `(ι_I Π) ∧ 𝓔_I = 0`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{contract, ExtElement, ExtVector, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    Projective,
    Affine,
}

/// `Projective(n)` is CPⁿ with homogeneous coordinates `z_0..z_n`;
/// `Affine(n)` is Cⁿ with coordinates `z_1..z_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Space {
    pub kind: SpaceKind,
    pub n: usize,
}

impl Space {
    pub fn new(kind: SpaceKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Toric("torus dimension must be at least 1".into()));
        }
        Ok(Self { kind, n })
    }

    pub fn projective(n: usize) -> Result<Self> {
        Self::new(SpaceKind::Projective, n)
    }

    pub fn affine(n: usize) -> Result<Self> {
        Self::new(SpaceKind::Affine, n)
    }

    pub fn is_projective(&self) -> bool {
        self.kind == SpaceKind::Projective
    }

    /// First index of the full profile: 0 for CPⁿ, 1 for Cⁿ.
    pub fn first_index(&self) -> usize {
        match self.kind {
            SpaceKind::Projective => 0,
            SpaceKind::Affine => 1,
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SpaceKind::Projective => write!(f, "CP^{}", self.n),
            SpaceKind::Affine => write!(f, "C^{}", self.n),
        }
    }
}

/// A character `I = (m_1, ..., m_n)` of the torus. `m_0` is never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    coords: Vec<i64>,
}

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Self { coords }
    }

    pub fn zero(n: usize) -> Self {
        Self { coords: vec![0; n] }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&m| m == 0)
    }

    /// Recovers `(m_1..m_n)` from a full projective profile `(m_0..m_n)`.
    pub fn from_full(space: Space, full: &[i64]) -> Result<Self> {
        match space.kind {
            SpaceKind::Projective => {
                if full.len() != space.n + 1 {
                    return Err(Error::DimensionMismatch {
                        expected: space.n + 1,
                        found: full.len(),
                    });
                }
                if full.iter().sum::<i64>() != 0 {
                    return Err(Error::Toric(format!(
                        "profile {full:?} does not sum to zero"
                    )));
                }
                Ok(Self::new(full[1..].to_vec()))
            }
            SpaceKind::Affine => {
                if full.len() != space.n {
                    return Err(Error::DimensionMismatch {
                        expected: space.n,
                        found: full.len(),
                    });
                }
                Ok(Self::new(full.to_vec()))
            }
        }
    }

    /// Full profile: `(m_0, m_1, ..., m_n)` with `m_0 = -Σ m_i` on CPⁿ,
    /// the coordinates themselves on Cⁿ.
    pub fn full(&self, space: Space) -> Vec<i64> {
        match space.kind {
            SpaceKind::Projective => {
                let mut full = Vec::with_capacity(self.coords.len() + 1);
                full.push(-self.coords.iter().sum::<i64>());
                full.extend_from_slice(&self.coords);
                full
            }
            SpaceKind::Affine => self.coords.clone(),
        }
    }
}

/// Canonical report order: lexicographic on the full profile.
pub fn canonical_cmp(space: Space, a: &Weight, b: &Weight) -> Ordering {
    a.full(space).cmp(&b.full(space))
}

pub fn sort_canonical(space: Space, weights: &mut [Weight]) {
    weights.sort_by_cached_key(|w| w.full(space));
}

/// Derived data of a weight relative to a space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightProfile {
    pub space: Space,
    /// `(m_0..m_n)` for CPⁿ, `(m_1..m_n)` for Cⁿ.
    pub full: Vec<i64>,
    /// Indices `i` (0-based on CPⁿ, 1-based on Cⁿ) where `m_i = -1`.
    pub minus_set: Vec<usize>,
    pub size: usize,
    /// Exponents of `χ^I` on the space's coordinates.
    pub chi_exponents: Vec<i64>,
}

impl WeightProfile {
    /// Value of the profile at coordinate index `i`.
    pub fn at(&self, i: usize) -> i64 {
        self.full[i - self.space.first_index()]
    }
}

fn check_weight(space: Space, weight: &Weight) -> Result<()> {
    if weight.dim() != space.n {
        return Err(Error::DimensionMismatch {
            expected: space.n,
            found: weight.dim(),
        });
    }
    Ok(())
}

pub fn profile(space: Space, weight: &Weight) -> Result<WeightProfile> {
    check_weight(space, weight)?;
    let full = weight.full(space);
    let offset = space.first_index();
    let minus_set: Vec<usize> = full
        .iter()
        .enumerate()
        .filter(|(_, &m)| m == -1)
        .map(|(p, _)| p + offset)
        .collect();
    Ok(WeightProfile {
        space,
        size: minus_set.len(),
        chi_exponents: full.clone(),
        full,
        minus_set,
    })
}

/// Every profile entry is `>= -1` and `|I| <= k`.
pub fn admissible(space: Space, weight: &Weight, k: usize) -> bool {
    match profile(space, weight) {
        Ok(p) => p.full.iter().all(|&m| m >= -1) && p.size <= k,
        Err(_) => false,
    }
}

/// `e_i` in the basis `e_1..e_n`, with `e_0 = -Σ e_i`.
fn lattice_generator(n: usize, index: usize) -> ExtElement {
    if index == 0 {
        ExtElement::from_vector(&ExtVector::new(vec![-Scalar::one(); n]))
    } else {
        ExtElement::from_vector(&ExtVector::basis(n, index))
    }
}

/// `𝓔_I`: wedge of the generators indexed by the minus-set, in increasing
/// index order (`e_0` first when present).
pub fn frame(space: Space, profile: &WeightProfile) -> Result<ExtElement> {
    if profile.space != space {
        return Err(Error::Toric(format!(
            "profile built for {} used with {space}",
            profile.space
        )));
    }
    profile
        .minus_set
        .iter()
        .try_fold(ExtElement::one(space.n), |acc, &i| {
            acc.wedge(&lattice_generator(space.n, i))
        })
}

/// The frame vectors `e_i, i ∈ T` as elements of `N_C`.
pub fn frame_vectors(space: Space, profile: &WeightProfile) -> Vec<ExtVector> {
    profile
        .minus_set
        .iter()
        .map(|&i| {
            if i == 0 {
                ExtVector::new(vec![-Scalar::one(); space.n])
            } else {
                ExtVector::basis(space.n, i)
            }
        })
        .collect()
}

/// `(ι_I Π) ∧ 𝓔_I = 0`. Total: defined for every weight of the right length.
pub fn cocycle_condition(space: Space, weight: &Weight, pi: &PoissonStructure) -> Result<bool> {
    if pi.n() != space.n {
        return Err(Error::DimensionMismatch {
            expected: space.n,
            found: pi.n(),
        });
    }
    let p = profile(space, weight)?;
    let contraction = ExtElement::from_vector(&contract(weight, pi)?);
    Ok(contraction.wedge(&frame(space, &p)?)?.is_zero())
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

/// `dim V_I^k = C(n - |I|, k - |I|)`, zero when `|I| > k`.
pub fn weight_space_dim(space: Space, weight: &Weight, k: usize) -> Result<u64> {
    let p = profile(space, weight)?;
    if p.size > k {
        return Ok(0);
    }
    Ok(binomial(space.n.saturating_sub(p.size), k - p.size))
}

/// `σ([z_0, ..., z_n]) = [z_1, ..., z_n, z_0]` acting on full profiles by a
/// left rotation.
pub fn cyclic_shift(space: Space, weight: &Weight) -> Result<Weight> {
    if !space.is_projective() {
        return Err(Error::Unsupported(format!("cyclic shift on {space}")));
    }
    check_weight(space, weight)?;
    let mut full = weight.full(space);
    full.rotate_left(1);
    Weight::from_full(space, &full)
}

/// A toric Poisson structure `Π = Σ_{i<j} A_ij e_i ∧ e_j`, stored as the full
/// antisymmetric matrix `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PoissonStructure {
    n: usize,
    a: Vec<Scalar>,
}

impl PoissonStructure {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            a: vec![Scalar::zero(); n * n],
        }
    }

    /// All `A_ij = 1` for `i < j`.
    pub fn standard(n: usize) -> Self {
        let mut pi = Self::zero(n);
        for i in 1..=n {
            for j in i + 1..=n {
                pi.set(i, j, Scalar::one());
            }
        }
        pi
    }

    /// Builds `Π` from `(i, j, a)` triples with `1 <= i, j <= n`, `i != j`.
    /// The antisymmetric completion is implied; listing a pair twice, in
    /// either orientation, is an error.
    pub fn from_upper(n: usize, entries: &[(usize, usize, Scalar)]) -> Result<Self> {
        let mut pi = Self::zero(n);
        let mut seen = BTreeSet::new();
        for (i, j, a) in entries {
            let (i, j) = (*i, *j);
            if i == j {
                return Err(Error::Toric(format!(
                    "diagonal entry ({i},{j}) in a bivector"
                )));
            }
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::Toric(format!("entry ({i},{j}) outside 1..={n}")));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::Toric(format!(
                    "entry ({i},{j}) given more than once"
                )));
            }
            pi.set(i, j, a.clone());
        }
        Ok(pi)
    }

    /// Accepts a full square matrix, checking `A = -Aᵀ` exactly.
    pub fn from_matrix(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let mut a = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            a.extend(row.iter().cloned());
        }
        let pi = Self { n, a };
        for i in 1..=n {
            for j in 1..=n {
                if pi.entry(i, j) != &-pi.entry(j, i) {
                    return Err(Error::Toric(format!(
                        "matrix is not antisymmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(pi)
    }

    /// Random structure with real and imaginary parts `p/q`, `|p| <= bound`,
    /// `1 <= q <= bound`.
    pub fn random<R: Rng + ?Sized>(n: usize, bound: i64, rng: &mut R) -> Self {
        let part = |rng: &mut R| (rng.gen_range(-bound..=bound), rng.gen_range(1..=bound));
        let mut pi = Self::zero(n);
        for i in 1..=n {
            for j in i + 1..=n {
                let (p, q) = part(rng);
                let (r, s) = part(rng);
                pi.set(i, j, Scalar::gaussian(p, q, r, s));
            }
        }
        pi
    }

    fn set(&mut self, i: usize, j: usize, v: Scalar) {
        let n = self.n;
        self.a[(j - 1) * n + (i - 1)] = -&v;
        self.a[(i - 1) * n + (j - 1)] = v;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `A_ij`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.a[(i - 1) * self.n + (j - 1)]
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self {
            n: self.n,
            a: self.a.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(Self {
            n: self.n,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
        })
    }

    /// Nonzero `(i, j, A_ij)` with `i < j`, in lexicographic order.
    pub fn upper_entries(&self) -> Vec<(usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                let a = self.entry(i, j);
                if !a.is_zero() {
                    out.push((i, j, a.clone()));
                }
            }
        }
        out
    }

    /// `Π` as an element of `Λ² N_C`.
    pub fn bivector(&self) -> ExtElement {
        ExtElement::from_terms(
            self.n,
            2,
            self.upper_entries()
                .into_iter()
                .map(|(i, j, a)| (vec![i, j], a)),
        )
        .expect("indices in range")
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PoissonEntryJson {
    pub i: usize,
    pub j: usize,
    pub a: Scalar,
}

#[derive(Serialize, Deserialize)]
struct PoissonJson {
    n: usize,
    entries: Vec<PoissonEntryJson>,
}

impl PoissonStructure {
    pub fn entries_json(&self) -> Vec<PoissonEntryJson> {
        self.upper_entries()
            .into_iter()
            .map(|(i, j, a)| PoissonEntryJson { i, j, a })
            .collect()
    }

    pub fn from_entries_json(n: usize, entries: &[PoissonEntryJson]) -> Result<Self> {
        let triples: Vec<_> = entries.iter().map(|e| (e.i, e.j, e.a.clone())).collect();
        Self::from_upper(n, &triples)
    }
}

impl Serialize for PoissonStructure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PoissonJson {
            n: self.n,
            entries: self.entries_json(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PoissonStructure {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PoissonJson::deserialize(d)?;
        Self::from_entries_json(raw.n, &raw.entries).map_err(serde::de::Error::custom)
    }
}
