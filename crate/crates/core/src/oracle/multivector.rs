//! Polynomial multivector fields `Σ c · z^a ∂_{i_1}∧…∧∂_{i_k}` and the
//! Schouten–Nijenhuis bracket, written in odd coordinates `ξ_i = ∂_i`.

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::exterior::{sort_with_sign, Scalar};

/// A monomial `z^exponents ξ_derivs` with strictly increasing `derivs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub exponents: Vec<u32>,
    pub derivs: Vec<usize>,
}

impl Term {
    pub fn degree(&self) -> usize {
        self.derivs.len()
    }

    pub fn poly_degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// Torus weight `a_i - [i ∈ derivs]` of the monomial, per variable.
    pub fn weight(&self) -> Vec<i64> {
        let mut w: Vec<i64> = self.exponents.iter().map(|&a| i64::from(a)).collect();
        for &d in &self.derivs {
            w[d] -= 1;
        }
        w
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMultivector {
    ambient: usize,
    terms: BTreeMap<Term, Scalar>,
}

fn parity_sign(e: i64) -> Scalar {
    if e.rem_euclid(2) == 0 {
        Scalar::from_int(1)
    } else {
        Scalar::from_int(-1)
    }
}

impl PolyMultivector {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    /// `c · z^exponents ξ_{derivs}`; `derivs` may be unsorted, and repeats give
    /// zero.
    pub fn monomial(
        ambient: usize,
        exponents: &[u32],
        derivs: &[usize],
        c: Scalar,
    ) -> Result<Self> {
        if exponents.len() != ambient {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: exponents.len(),
            });
        }
        if let Some(&bad) = derivs.iter().find(|&&d| d >= ambient) {
            return Err(Error::Oracle(format!(
                "derivative index {bad} outside 0..{ambient}"
            )));
        }
        let mut out = Self::zero(ambient);
        let mut sorted = derivs.to_vec();
        if let Some(sign) = sort_with_sign(&mut sorted) {
            let c = if sign < 0 { -c } else { c };
            out.add_term(
                Term {
                    exponents: exponents.to_vec(),
                    derivs: sorted,
                },
                c,
            );
        }
        Ok(out)
    }

    /// `Σ z_i ξ_i`.
    pub fn euler(ambient: usize) -> Self {
        let mut out = Self::zero(ambient);
        for i in 0..ambient {
            let mut e = vec![0; ambient];
            e[i] = 1;
            out.add_term(
                Term {
                    exponents: e,
                    derivs: vec![i],
                },
                Scalar::from_int(1),
            );
        }
        out
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn terms(&self) -> &BTreeMap<Term, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multivector degree when all terms share one.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(Term::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    fn add_term(&mut self, t: Term, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(t) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Oracle(format!(
                "ambient mismatch: {} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.ambient);
        for (t, v) in &self.terms {
            out.add_term(t.clone(), v * c);
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.ambient);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((t, sign)) = wedge_terms(a, b) {
                    let c = ca * cb;
                    out.add_term(t, if sign < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// `[P, Q] = Σ_i (P ←∂_{ξ_i})(∂_{z_i} Q) − (−1)^{(p−1)(q−1)} (Q ←∂_{ξ_i})(∂_{z_i} P)`,
    /// expanded term by term.
    pub fn schouten(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.ambient);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let coeff = ca * cb;
                let (p, q) = (a.degree() as i64, b.degree() as i64);
                half_bracket(&mut out, a, b, &coeff);
                let swap = -(parity_sign((p - 1) * (q - 1)) * &coeff);
                half_bracket(&mut out, b, a, &swap);
            }
        }
        Ok(out)
    }
}

/// Adds `c · Σ_i (a ←∂_{ξ_i}) ∧ ∂_{z_i} b` to `out`.
fn half_bracket(out: &mut PolyMultivector, a: &Term, b: &Term, c: &Scalar) {
    let p = a.derivs.len();
    for (pos, &i) in a.derivs.iter().enumerate() {
        let power = b.exponents[i];
        if power == 0 {
            continue;
        }
        let mut left_derivs = a.derivs.clone();
        left_derivs.remove(pos);
        let left = Term {
            exponents: a.exponents.clone(),
            derivs: left_derivs,
        };
        let mut right_exps = b.exponents.clone();
        right_exps[i] -= 1;
        let right = Term {
            exponents: right_exps,
            derivs: b.derivs.clone(),
        };
        if let Some((t, sign)) = wedge_terms(&left, &right) {
            // Moving ξ_i from slot `pos` to the end passes p − pos − 1 factors.
            let mut v = c * &Scalar::from_int(i64::from(power));
            if (p - pos - 1) % 2 == 1 {
                v = -v;
            }
            if sign < 0 {
                v = -v;
            }
            out.add_term(t, v);
        }
    }
}

fn wedge_terms(a: &Term, b: &Term) -> Option<(Term, i8)> {
    let mut derivs = a.derivs.clone();
    derivs.extend_from_slice(&b.derivs);
    let sign = sort_with_sign(&mut derivs)?;
    let exponents = a
        .exponents
        .iter()
        .zip(&b.exponents)
        .map(|(x, y)| x + y)
        .collect();
    Some((Term { exponents, derivs }, sign))
}

impl fmt::Display for PolyMultivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (t, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, &a) in t.exponents.iter().enumerate() {
                match a {
                    0 => {}
                    1 => write!(f, "·x{i}")?,
                    _ => write!(f, "·x{i}^{a}")?,
                }
            }
            for d in &t.derivs {
                write!(f, "·∂{d}")?;
            }
        }
        Ok(())
    }
}
