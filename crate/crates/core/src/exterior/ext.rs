//! Vectors of `N_C` and homogeneous elements of its exterior algebra, in the
//! basis `e_1, ..., e_n` (indices are 1-based).

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{matrix, Scalar};
use crate::error::{Error, Result};
use crate::toric::{PoissonStructure, Weight};

/// A vector `Σ c_j e_j` of `N_C`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtVector {
    coords: Vec<Scalar>,
}

impl ExtVector {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Self { coords }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            coords: vec![Scalar::zero(); n],
        }
    }

    /// The basis vector `e_index` (1-based).
    pub fn basis(n: usize, index: usize) -> Self {
        let mut v = Self::zero(n);
        v.coords[index - 1] = Scalar::one();
        v
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn in_span(&self, spanning: &[ExtVector]) -> Result<bool> {
        for s in spanning {
            check_dim(self.dim(), s.dim())?;
        }
        let cols: Vec<Vec<Scalar>> = spanning.iter().map(|s| s.coords.clone()).collect();
        matrix::in_span(&self.coords, &cols)
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Sorts `indices` in place and returns the sign of the sorting permutation,
/// or `None` when an index repeats.
pub(crate) fn sort_with_sign(indices: &mut [usize]) -> Option<i8> {
    let mut sign = 1i8;
    for i in 1..indices.len() {
        let mut j = i;
        while j > 0 && indices[j - 1] > indices[j] {
            indices.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if indices.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// A homogeneous element of `Λ^d N_C`, stored as a sparse map from strictly
/// increasing index tuples to nonzero coefficients. Equality compares the
/// ambient dimension and the term map only, so zeros of any degree agree.
#[derive(Clone, Debug)]
pub struct ExtElement {
    n: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl PartialEq for ExtElement {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.terms == other.terms
    }
}

impl Eq for ExtElement {}

impl std::hash::Hash for ExtElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.terms.hash(state);
    }
}

impl ExtElement {
    pub fn zero(n: usize, degree: usize) -> Self {
        Self {
            n,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The degree-0 unit.
    pub fn one(n: usize) -> Self {
        Self::scalar(n, Scalar::one())
    }

    pub fn scalar(n: usize, c: Scalar) -> Self {
        let mut e = Self::zero(n, 0);
        e.add_term(Vec::new(), c);
        e
    }

    /// `e_{i_1} ∧ ... ∧ e_{i_d}` for indices in any order.
    pub fn monomial(n: usize, indices: &[usize]) -> Result<Self> {
        let mut e = Self::zero(n, indices.len());
        e.add_term_unsorted(indices.to_vec(), Scalar::one())?;
        Ok(e)
    }

    pub fn from_vector(v: &ExtVector) -> Self {
        let mut e = Self::zero(v.dim(), 1);
        for (j, c) in v.coords().iter().enumerate() {
            e.add_term(vec![j + 1], c.clone());
        }
        e
    }

    /// Builds an element from `(indices, coefficient)` pairs; indices may be
    /// unsorted and are normalized with the permutation sign.
    pub fn from_terms(
        n: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, Scalar)>,
    ) -> Result<Self> {
        let mut e = Self::zero(n, degree);
        for (idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::Exterior(format!(
                    "term {idx:?} has degree {} but element has degree {degree}",
                    idx.len()
                )));
            }
            e.add_term_unsorted(idx, c)?;
        }
        Ok(e)
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, indices: &[usize]) -> Scalar {
        self.terms
            .get(indices)
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    fn add_term(&mut self, idx: Vec<usize>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += &c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn add_term_unsorted(&mut self, mut idx: Vec<usize>, c: Scalar) -> Result<()> {
        if let Some(&bad) = idx.iter().find(|&&i| i == 0 || i > self.n) {
            return Err(Error::Exterior(format!(
                "index {bad} outside 1..={}",
                self.n
            )));
        }
        if let Some(sign) = sort_with_sign(&mut idx) {
            let c = if sign < 0 { -c } else { c };
            self.add_term(idx, c);
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.n, self.degree);
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), v * c);
        }
        out
    }

    /// Sum of two elements; a zero element of any degree is accepted as the
    /// additive identity.
    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.n, other.n)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.degree != other.degree {
            return Err(Error::Exterior(format!(
                "cannot add degree {} and degree {} elements",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    /// Exterior product with canonical sign normalization.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        check_dim(self.n, other.n)?;
        let mut out = Self::zero(self.n, self.degree + other.degree);
        if out.degree > self.n {
            return Ok(out);
        }
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut idx = a.clone();
                idx.extend_from_slice(b);
                if let Some(sign) = sort_with_sign(&mut idx) {
                    let c = x * y;
                    out.add_term(idx, if sign < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ExtElement {
    /// Renders as `c·e1^e2 + ...`, with `0` for the empty sum.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(idx, c)| {
                let word = if idx.is_empty() {
                    "1".to_string()
                } else {
                    idx.iter()
                        .map(|i| format!("e{i}"))
                        .collect::<Vec<_>>()
                        .join("^")
                };
                format!("({c})·{word}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct ExtTermJson {
    idx: Vec<usize>,
    c: Scalar,
}

#[derive(Serialize, Deserialize)]
struct ExtElementJson {
    n: usize,
    degree: usize,
    terms: Vec<ExtTermJson>,
}

impl Serialize for ExtElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExtElementJson {
            n: self.n,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(idx, c)| ExtTermJson {
                    idx: idx.clone(),
                    c: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExtElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ExtElementJson::deserialize(d)?;
        ExtElement::from_terms(
            raw.n,
            raw.degree,
            raw.terms.into_iter().map(|t| (t.idx, t.c)),
        )
        .map_err(serde::de::Error::custom)
    }
}

/// `ι_I Π` with the convention `ι_I(e_i∧e_j) = ⟨I,e_i⟩e_j − ⟨I,e_j⟩e_i`, i.e.
/// `c_j = Σ_i m_i A_ij`.
pub fn contract(weight: &Weight, pi: &PoissonStructure) -> Result<ExtVector> {
    let n = pi.n();
    check_dim(n, weight.dim())?;
    let coords = (0..n)
        .map(|j| {
            weight
                .coords()
                .iter()
                .enumerate()
                .filter(|&(_, &m)| m != 0)
                .map(|(i, &m)| &Scalar::from_int(m) * pi.entry(i + 1, j + 1))
                .sum()
        })
        .collect();
    Ok(ExtVector::new(coords))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, idx: &[usize]) -> ExtElement {
        ExtElement::monomial(n, idx).unwrap()
    }

    #[test]
    fn wedge_of_basis_vectors() {
        let w = e(2, &[1]).wedge(&e(2, &[2])).unwrap();
        assert_eq!(w.terms().len(), 1);
        assert_eq!(w.coefficient(&[1, 2]), Scalar::one());
        assert!(e(2, &[1]).wedge(&e(2, &[1])).unwrap().is_zero());
    }

    #[test]
    fn wedge_of_sums() {
        let plus = ExtElement::from_vector(&ExtVector::from_ints(&[1, 1]));
        let minus = ExtElement::from_vector(&ExtVector::from_ints(&[1, -1]));
        let w = plus.wedge(&minus).unwrap();
        assert_eq!(w, e(2, &[1, 2]).scale(&Scalar::from_int(-2)));
    }

    #[test]
    fn monomial_sign_normalization() {
        assert_eq!(e(3, &[2, 1]), e(3, &[1, 2]).scale(&Scalar::from_int(-1)));
        assert_eq!(e(3, &[3, 1, 2]), e(3, &[1, 2, 3]));
        assert!(e(3, &[2, 2]).is_zero());
        assert!(ExtElement::monomial(3, &[4]).is_err());
    }

    #[test]
    fn wedge_dimension_mismatch() {
        assert_eq!(
            e(2, &[1]).wedge(&e(3, &[1])),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn add_cancels_to_canonical_zero() {
        let x = e(3, &[1, 2]);
        let sum = x.add(&x.scale(&Scalar::from_int(-1))).unwrap();
        assert!(sum.is_zero());
        assert_eq!(sum, ExtElement::zero(3, 2));
    }

    #[test]
    fn contract_examples() {
        let pi = PoissonStructure::from_upper(2, &[(1, 2, Scalar::one())]).unwrap();
        assert!(contract(&Weight::new(vec![0, 0]), &pi).unwrap().is_zero());
        assert_eq!(
            contract(&Weight::new(vec![1, 0]), &pi).unwrap(),
            ExtVector::from_ints(&[0, 1])
        );
        // c_1 = m_2 A_21 = 2·(-1), c_2 = m_1 A_12 = -1.
        assert_eq!(
            contract(&Weight::new(vec![-1, 2]), &pi).unwrap(),
            ExtVector::from_ints(&[-2, -1])
        );
    }

    #[test]
    fn json_round_trip() {
        let x = e(3, &[1, 3]).scale(&"1/2-i".parse().unwrap());
        let text = serde_json::to_string(&x).unwrap();
        let back: ExtElement = serde_json::from_str(&text).unwrap();
        assert_eq!(back, x);
    }
}
