//! Cohomology reports shared by the closed-form engine and the oracle, with
//! their JSON and table renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::toric::{profile, PoissonEntryJson, PoissonStructure, Space, SpaceKind, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dimension {
    Finite(u64),
    Infinite,
}

impl Dimension {
    pub fn finite(&self) -> Option<u64> {
        match self {
            Dimension::Finite(d) => Some(*d),
            Dimension::Infinite => None,
        }
    }
}

impl std::fmt::Display for Dimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dimension::Finite(d) => write!(f, "{d}"),
            Dimension::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportSource {
    Closed,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEntry {
    pub weight: Weight,
    pub mult: u64,
}

/// One basis element `χ^I · 𝒱_I ∧ v_C` of `V_I^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisDescriptor {
    pub k: usize,
    pub weight: Weight,
    pub chi_exponents: Vec<i64>,
    /// The minus-set `T`.
    pub frame_indices: Vec<usize>,
    /// Indices `C` of the `W^{k-|I|}` factor.
    pub complement: Vec<usize>,
    /// Rendering such as `z0^-1 z1^-1 z2^2 · v1^v2`.
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeEntry {
    pub k: usize,
    pub dim: Dimension,
    /// Contributing weights; `None` when the producer does not resolve weights.
    pub weights: Option<Vec<WeightEntry>>,
    /// True when the weight list is known to be incomplete.
    pub truncated: bool,
    /// Minus-set patterns of infinite families contributing at this degree.
    pub witness_patterns: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub space: Space,
    pub poisson: PoissonStructure,
    pub source: ReportSource,
    /// Affine only: the bound on `Σ max(m_j, 0)` used for explicit listings.
    pub degree_bound: Option<u64>,
    pub degrees: Vec<DegreeEntry>,
    pub basis: Option<Vec<BasisDescriptor>>,
}

impl CohomologyReport {
    pub fn degree(&self, k: usize) -> Option<&DegreeEntry> {
        self.degrees.iter().find(|d| d.k == k)
    }

    pub fn dims(&self) -> Vec<Dimension> {
        self.degrees.iter().map(|d| d.dim).collect()
    }

    /// Finite dimensions, or `None` if any degree is infinite.
    pub fn finite_dims(&self) -> Option<Vec<u64>> {
        self.degrees.iter().map(|d| d.dim.finite()).collect()
    }

    pub fn k_max(&self) -> usize {
        self.degrees.iter().map(|d| d.k).max().unwrap_or(0)
    }

    /// `dim H^k = Σ_{I ∈ S_{k-1}(π)} C(n-|I|, k-|I|) + |S(k, π)|`, read off the
    /// weight lists. `None` when either degree is infinite or unresolved.
    pub fn recursion_holds(&self, k: usize) -> Option<bool> {
        if k == 0 {
            return None;
        }
        let prev = self.degree(k - 1)?;
        let cur = self.degree(k)?;
        let (Dimension::Finite(dim), Dimension::Finite(_)) = (cur.dim, prev.dim) else {
            return None;
        };
        let n = self.space.n;
        if k > n {
            return Some(dim == 0);
        }
        let size = |w: &Weight| profile(self.space, w).map(|p| p.size).ok();
        let mut total = 0u64;
        for e in prev.weights.as_ref()? {
            let s = size(&e.weight)?;
            total += crate::toric::binomial(n - s, k - s);
        }
        for e in cur.weights.as_ref()? {
            if size(&e.weight)? == k {
                total += 1;
            }
        }
        Some(total == dim)
    }

    /// Same report with the Poisson structure field ignored, for scale
    /// invariance comparisons.
    pub fn same_cohomology(&self, other: &Self) -> bool {
        self.space == other.space
            && self.degrees == other.degrees
            && self.basis == other.basis
            && self.degree_bound == other.degree_bound
    }
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Serialize, Deserialize)]
struct SpaceJson {
    kind: SpaceKind,
    n: usize,
}

#[derive(Serialize, Deserialize)]
struct WeightJson {
    full: Vec<i64>,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
struct DegreeJson {
    k: usize,
    dim: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<WeightJson>>,
    truncated: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    witness_patterns: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct BasisJson {
    k: usize,
    full: Vec<i64>,
    chi: Vec<i64>,
    frame: Vec<usize>,
    complement: Vec<usize>,
    text: String,
}

#[derive(Serialize, Deserialize)]
struct ReportJson {
    space: SpaceJson,
    poisson: Vec<PoissonEntryJson>,
    source: ReportSource,
    cohomology: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degree_bound: Option<u64>,
    #[serde(rename = "H")]
    h: Vec<DegreeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<BasisJson>>,
}

fn cohomology_label(space: Space) -> &'static str {
    match space.kind {
        SpaceKind::Projective => "holomorphic",
        SpaceKind::Affine => "algebraic (direct sum over weights) / formal (product over weights)",
    }
}

impl CohomologyReport {
    fn to_json_struct(&self) -> ReportJson {
        let full = |w: &Weight| w.full(self.space);
        ReportJson {
            space: SpaceJson {
                kind: self.space.kind,
                n: self.space.n,
            },
            poisson: self.poisson.entries_json(),
            source: self.source,
            cohomology: cohomology_label(self.space).to_string(),
            degree_bound: self.degree_bound,
            h: self
                .degrees
                .iter()
                .map(|d| DegreeJson {
                    k: d.k,
                    dim: match d.dim {
                        Dimension::Finite(v) => Value::from(v),
                        Dimension::Infinite => Value::from("infinite"),
                    },
                    weights: d.weights.as_ref().map(|ws| {
                        ws.iter()
                            .map(|e| WeightJson {
                                full: full(&e.weight),
                                mult: e.mult,
                            })
                            .collect()
                    }),
                    truncated: d.truncated,
                    witness_patterns: d.witness_patterns.clone(),
                })
                .collect(),
            basis: self.basis.as_ref().map(|bs| {
                bs.iter()
                    .map(|b| BasisJson {
                        k: b.k,
                        full: full(&b.weight),
                        chi: b.chi_exponents.clone(),
                        frame: b.frame_indices.clone(),
                        complement: b.complement.clone(),
                        text: b.text.clone(),
                    })
                    .collect()
            }),
        }
    }

    /// Canonical pretty-printed JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_struct()).expect("report serializes")
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(self.to_json_struct()).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ReportJson =
            serde_json::from_str(text).map_err(|e| Error::Report(format!("invalid JSON: {e}")))?;
        let space = Space::new(raw.space.kind, raw.space.n)?;
        let poisson = PoissonStructure::from_entries_json(space.n, &raw.poisson)?;
        let weight = |full: &[i64]| Weight::from_full(space, full);
        let mut degrees = Vec::with_capacity(raw.h.len());
        for d in raw.h {
            let dim = match &d.dim {
                Value::Number(v) => Dimension::Finite(
                    v.as_u64()
                        .ok_or_else(|| Error::Report(format!("bad dimension {v}")))?,
                ),
                Value::String(s) if s == "infinite" => Dimension::Infinite,
                other => return Err(Error::Report(format!("bad dimension {other}"))),
            };
            let weights = match d.weights {
                Some(ws) => Some(
                    ws.into_iter()
                        .map(|w| {
                            Ok(WeightEntry {
                                weight: weight(&w.full)?,
                                mult: w.mult,
                            })
                        })
                        .collect::<Result<Vec<_>>>()?,
                ),
                None => None,
            };
            degrees.push(DegreeEntry {
                k: d.k,
                dim,
                weights,
                truncated: d.truncated,
                witness_patterns: d.witness_patterns,
            });
        }
        let basis = match raw.basis {
            Some(bs) => Some(
                bs.into_iter()
                    .map(|b| {
                        Ok(BasisDescriptor {
                            k: b.k,
                            weight: weight(&b.full)?,
                            chi_exponents: b.chi,
                            frame_indices: b.frame,
                            complement: b.complement,
                            text: b.text,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        Ok(Self {
            space,
            poisson,
            source: raw.source,
            degree_bound: raw.degree_bound,
            degrees,
            basis,
        })
    }

    // -----------------------------------------------------------------------
    // Table

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let pi: Vec<String> = self
            .poisson
            .upper_entries()
            .iter()
            .map(|(i, j, a)| format!("a{i}{j}={a}"))
            .collect();
        let pi = if pi.is_empty() {
            "0".to_string()
        } else {
            pi.join(", ")
        };
        let _ = writeln!(
            out,
            "space: {}  poisson: {}  source: {}",
            self.space,
            pi,
            match self.source {
                ReportSource::Closed => "closed",
                ReportSource::Oracle => "oracle",
            }
        );
        let _ = writeln!(out, "cohomology: {}", cohomology_label(self.space));
        if let Some(b) = self.degree_bound {
            let _ = writeln!(out, "degree bound: {b}");
        }
        let profile_name = if self.space.is_projective() {
            "(m0..mn)"
        } else {
            "(m1..mn)"
        };
        let _ = writeln!(out, "k\tdim\tweights {profile_name}:mult");
        for d in &self.degrees {
            let weights = match &d.weights {
                None => "-".to_string(),
                Some(ws) if ws.is_empty() => "".to_string(),
                Some(ws) => ws
                    .iter()
                    .map(|e| format!("{}:{}", fmt_tuple(&e.weight.full(self.space)), e.mult))
                    .collect::<Vec<_>>()
                    .join(" "),
            };
            let mut dim = d.dim.to_string();
            if !d.witness_patterns.is_empty() {
                let pats: Vec<String> = d
                    .witness_patterns
                    .iter()
                    .map(|p| format!("T={p:?}"))
                    .collect();
                dim = format!("{dim} [{}]", pats.join(", "));
            }
            if d.truncated {
                dim.push_str(" (truncated)");
            }
            let _ = writeln!(out, "{}\t{}\t{}", d.k, dim, weights);
        }
        if let Some(basis) = &self.basis {
            let mut by_k: BTreeMap<usize, Vec<&BasisDescriptor>> = BTreeMap::new();
            for b in basis {
                by_k.entry(b.k).or_default().push(b);
            }
            for (k, items) in by_k {
                let _ = writeln!(out, "basis H^{k} ({} elements):", items.len());
                for b in items {
                    let _ = writeln!(out, "  {}", b.text);
                }
            }
        }
        out
    }
}

fn fmt_tuple(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}
