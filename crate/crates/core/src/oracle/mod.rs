//! Brute-force Schouten-complex cohomology, independent of the closed form.
//!
//! Projective: `F_k / ē∧F_{k-1}` on `z_0..z_n`, differential `[π̃, ·]`, and
//! `dim H^k = dim Q_k - rank d^k - rank d^{k-1}`. Affine: the same per torus
//! weight block, for every weight up to a degree bound.

mod complex;
mod multivector;

use std::collections::BTreeMap;
use std::fmt;

pub use complex::{affine_block, affine_weights, d_pi_matrix, lift, section_basis, SectionBasis};
pub use multivector::{PolyMultivector, Term};

use crate::error::{Error, Result};
use crate::exterior::ExactMatrix;
use crate::report::{CohomologyReport, DegreeEntry, Dimension, ReportSource, WeightEntry};
use crate::toric::{sort_canonical, PoissonStructure, Space, Weight};

/// Matrices `d^0..d^n` of one complex, together with its basis sizes.
#[derive(Clone, Debug)]
pub struct Complex {
    pub sizes: Vec<usize>,
    pub differentials: Vec<ExactMatrix>,
}

impl Complex {
    /// `dim ker d^k - rank d^{k-1}` for `k = 0..=n`.
    pub fn cohomology_dims(&self) -> Vec<u64> {
        let ranks: Vec<usize> = self.differentials.iter().map(ExactMatrix::rank).collect();
        (0..self.sizes.len())
            .map(|k| {
                let out = ranks.get(k).copied().unwrap_or(0);
                let inc = if k == 0 { 0 } else { ranks[k - 1] };
                (self.sizes[k] - out - inc) as u64
            })
            .collect()
    }

    /// Checks `d^{k+1} d^k = 0` for every consecutive pair.
    pub fn check_square_zero(&self) -> Result<()> {
        for (k, pair) in self.differentials.windows(2).enumerate() {
            if !pair[1].mul(&pair[0])?.is_zero() {
                return Err(Error::Oracle(format!("d^{} ∘ d^{k} is nonzero", k + 1)));
            }
        }
        Ok(())
    }
}

fn assemble(space: Space, pi: &PoissonStructure, bases: &[SectionBasis]) -> Result<Complex> {
    let differentials = bases
        .windows(2)
        .enumerate()
        .map(|(k, pair)| d_pi_matrix(space, pi, k, &pair[0], &pair[1]))
        .collect::<Result<Vec<_>>>()?;
    Ok(Complex {
        sizes: bases
            .iter()
            .map(SectionBasis::len)
            .take(space.n + 1)
            .collect(),
        differentials,
    })
}

/// The global complex on CPⁿ, degrees `0..=n` (plus the zero degree `n + 1`).
pub fn projective_complex(space: Space, pi: &PoissonStructure) -> Result<Complex> {
    if !space.is_projective() {
        return Err(Error::Oracle(format!(
            "global complex on {space} is infinite"
        )));
    }
    let bases = (0..=space.n + 1)
        .map(|k| section_basis(space, k, None))
        .collect::<Result<Vec<_>>>()?;
    assemble(space, pi, &bases)
}

/// The complex of one torus weight on Cⁿ, degrees `0..=n`.
pub fn weight_complex(space: Space, pi: &PoissonStructure, weight: &Weight) -> Result<Complex> {
    let bases = (0..=space.n)
        .map(|k| affine_block(space, weight, k))
        .collect::<Result<Vec<_>>>()?;
    assemble(space, pi, &bases)
}

/// Cohomology by exact ranks. Projective reports carry dimensions only.
/// Affine reports list every weight of positive degree at most
/// `degree_bound` with nonzero cohomology, and are marked truncated.
pub fn cohomology_oracle(
    space: Space,
    pi: &PoissonStructure,
    k_max: usize,
    degree_bound: Option<u64>,
) -> Result<CohomologyReport> {
    if pi.n() != space.n {
        return Err(Error::DimensionMismatch {
            expected: space.n,
            found: pi.n(),
        });
    }
    let dims_at = |dims: &[u64], k: usize| dims.get(k).copied().unwrap_or(0);
    let degrees = if space.is_projective() {
        let complex = projective_complex(space, pi)?;
        complex.check_square_zero()?;
        let dims = complex.cohomology_dims();
        (0..=k_max)
            .map(|k| DegreeEntry {
                k,
                dim: Dimension::Finite(dims_at(&dims, k)),
                weights: None,
                truncated: false,
                witness_patterns: Vec::new(),
            })
            .collect()
    } else {
        let bound = degree_bound
            .ok_or_else(|| Error::Oracle("affine oracle needs a degree bound".into()))?;
        let mut per_k: BTreeMap<usize, Vec<WeightEntry>> = BTreeMap::new();
        for w in affine_weights(space.n, bound) {
            let complex = weight_complex(space, pi, &w)?;
            complex.check_square_zero()?;
            for (k, d) in complex.cohomology_dims().into_iter().enumerate() {
                if d > 0 && k <= k_max {
                    per_k.entry(k).or_default().push(WeightEntry {
                        weight: w.clone(),
                        mult: d,
                    });
                }
            }
        }
        (0..=k_max)
            .map(|k| {
                let mut entries = per_k.remove(&k).unwrap_or_default();
                let mut order: Vec<Weight> = entries.iter().map(|e| e.weight.clone()).collect();
                sort_canonical(space, &mut order);
                entries.sort_by_key(|e| order.iter().position(|w| *w == e.weight));
                DegreeEntry {
                    k,
                    dim: Dimension::Finite(entries.iter().map(|e| e.mult).sum()),
                    weights: Some(entries),
                    truncated: true,
                    witness_patterns: Vec::new(),
                }
            })
            .collect()
    };
    Ok(CohomologyReport {
        space,
        poisson: pi.clone(),
        source: ReportSource::Oracle,
        degree_bound: if space.is_projective() {
            None
        } else {
            degree_bound
        },
        degrees,
        basis: None,
    })
}

/// Disagreements between two reports; empty means agreement.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diff {
    pub entries: Vec<String>,
}

impl Diff {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for Diff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "no differences");
        }
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

fn positive_degree(w: &Weight) -> u64 {
    w.coords()
        .iter()
        .filter(|&&m| m > 0)
        .map(|&m| m as u64)
        .sum()
}

/// Compares an engine report with an oracle report.
///
/// Finite dimensions must match. On Cⁿ, per-weight multiplicities must match
/// on every weight both sides explored; total dimensions are compared only
/// when the engine's listing is complete and lies inside the oracle's bound;
/// an infinite engine dimension requires a truncated oracle listing.
pub fn compare(engine: &CohomologyReport, oracle: &CohomologyReport) -> Diff {
    let mut out = Vec::new();
    if engine.space != oracle.space {
        out.push(format!("space: {} vs {}", engine.space, oracle.space));
        return Diff { entries: out };
    }
    if engine.poisson != oracle.poisson {
        out.push("poisson structures differ".into());
    }
    let space = engine.space;
    for e in &engine.degrees {
        let Some(o) = oracle.degree(e.k) else {
            out.push(format!("H^{}: missing from oracle", e.k));
            continue;
        };
        if space.is_projective() {
            if e.dim != o.dim {
                out.push(format!("H^{}: dim {} vs {}", e.k, e.dim, o.dim));
            }
            continue;
        }
        let oracle_bound = oracle.degree_bound.unwrap_or(0);
        let engine_bound = if e.truncated {
            engine.degree_bound
        } else {
            None
        };
        let limit = engine_bound.map_or(oracle_bound, |b| b.min(oracle_bound));
        let within = |ws: &Option<Vec<WeightEntry>>| -> BTreeMap<Weight, u64> {
            ws.iter()
                .flatten()
                .filter(|w| positive_degree(&w.weight) <= limit)
                .map(|w| (w.weight.clone(), w.mult))
                .collect()
        };
        let (ew, ow) = (within(&e.weights), within(&o.weights));
        for (w, m) in &ew {
            match ow.get(w) {
                Some(x) if x == m => {}
                Some(x) => out.push(format!(
                    "H^{}: weight {:?} mult {m} vs {x}",
                    e.k,
                    w.coords()
                )),
                None => out.push(format!(
                    "H^{}: weight {:?} missing from oracle",
                    e.k,
                    w.coords()
                )),
            }
        }
        for w in ow.keys().filter(|w| !ew.contains_key(w)) {
            out.push(format!(
                "H^{}: weight {:?} missing from engine",
                e.k,
                w.coords()
            ));
        }
        match e.dim {
            Dimension::Infinite if !o.truncated => {
                out.push(format!(
                    "H^{}: engine infinite but oracle listing complete",
                    e.k
                ));
            }
            Dimension::Finite(d) => {
                let complete = !e.truncated
                    && e.weights
                        .iter()
                        .flatten()
                        .all(|w| positive_degree(&w.weight) <= oracle_bound);
                if complete && o.dim != Dimension::Finite(d) {
                    out.push(format!("H^{}: dim {d} vs {}", e.k, o.dim));
                }
            }
            Dimension::Infinite => {}
        }
    }
    for o in &oracle.degrees {
        if engine.degree(o.k).is_none() {
            out.push(format!("H^{}: missing from engine", o.k));
        }
    }
    Diff { entries: out }
}
