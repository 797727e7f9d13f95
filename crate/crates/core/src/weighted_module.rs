//! Weight systems of modules: graded pieces, filtrations, and restriction to
//! the orthogonal Levi `M_μ^⊥`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_geometry::GramForm;
use crate::rational::{Rational, RationalVector};
use crate::root_datum::{ReductiveGroup, RootDatum};

/// A multiset of characters. Weights are kept in first-seen order with
/// equal characters merged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedModule {
    rank: usize,
    weights: Vec<(RationalVector, u32)>,
}

impl WeightedModule {
    pub fn new(rank: usize, weights: Vec<(RationalVector, u32)>) -> Result<Self> {
        let mut merged: Vec<(RationalVector, u32)> = Vec::new();
        for (w, m) in weights {
            if w.len() != rank {
                return Err(Error::LengthMismatch {
                    expected: rank,
                    got: w.len(),
                });
            }
            if m == 0 {
                continue;
            }
            match merged.iter_mut().find(|(x, _)| *x == w) {
                Some((_, k)) => *k += m,
                None => merged.push((w, m)),
            }
        }
        Ok(Self {
            rank,
            weights: merged,
        })
    }

    /// Each listed character with multiplicity one (repeats add up).
    pub fn from_weights(rank: usize, weights: &[RationalVector]) -> Result<Self> {
        Self::new(rank, weights.iter().map(|w| (w.clone(), 1)).collect())
    }

    pub fn empty(rank: usize) -> Self {
        Self {
            rank,
            weights: vec![],
        }
    }

    /// Roots with their multiplicities plus the zero weight with
    /// multiplicity equal to the rank.
    pub fn adjoint(datum: &RootDatum) -> Self {
        let mut weights = datum.roots();
        if datum.rank() > 0 {
            weights.push((RationalVector::zeros(datum.rank()), datum.rank() as u32));
        }
        Self::new(datum.rank(), weights).expect("roots have the datum's rank")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn weights(&self) -> &[(RationalVector, u32)] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.iter().map(|(_, m)| *m as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// One entry per basis vector: the weight repeated by multiplicity.
    pub fn basis_weights(&self) -> Vec<RationalVector> {
        self.weights
            .iter()
            .flat_map(|(w, m)| std::iter::repeat_n(w.clone(), *m as usize))
            .collect()
    }

    /// Distinct nonzero weights.
    pub fn nonzero_weights(&self) -> Vec<RationalVector> {
        self.weights
            .iter()
            .filter(|(w, _)| !w.is_zero())
            .map(|(w, _)| w.clone())
            .collect()
    }

    /// Weights with `⟨χ, λ⟩ = k`.
    pub fn graded_piece(&self, lambda: &RationalVector, k: &Rational) -> Self {
        self.filter(|w| w.dot(lambda) == *k)
    }

    /// Weights with `⟨χ, μ⟩ ≥ r`, i.e. `V_{μ,r}`.
    pub fn at_least(&self, mu: &RationalVector, r: &Rational) -> Self {
        self.filter(|w| w.dot(mu) >= *r)
    }

    fn filter(&self, keep: impl Fn(&RationalVector) -> bool) -> Self {
        Self {
            rank: self.rank,
            weights: self.weights.iter().filter(|(w, _)| keep(w)).cloned().collect(),
        }
    }

    /// `dim V_{μ,r}` at every jump `r ≥ 0` (and at `r = 0`).
    pub fn filtration_dims(&self, mu: &RationalVector) -> BTreeMap<Rational, usize> {
        let mut jumps: BTreeMap<Rational, usize> = BTreeMap::new();
        jumps.insert(Rational::zero(), 0);
        for (w, _) in &self.weights {
            let p = w.dot(mu);
            if !p.is_negative() {
                jumps.insert(p, 0);
            }
        }
        for (r, d) in jumps.iter_mut() {
            *d = self.at_least(mu, r).dim();
        }
        jumps
    }

    /// Graded dimensions `dim V_λ(k)` for every `k` that occurs.
    pub fn grading(&self, lambda: &RationalVector) -> BTreeMap<Rational, usize> {
        let mut out = BTreeMap::new();
        for (w, m) in &self.weights {
            *out.entry(w.dot(lambda)).or_insert(0) += *m as usize;
        }
        out
    }
}

/// The orthogonal Levi at a virtual cocharacter `μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviData {
    pub mu: RationalVector,
    /// Roots with `⟨α, μ⟩ = 0`, with multiplicities.
    pub levi_roots: Vec<(RationalVector, u32)>,
    /// Primitive integral basis of `μ^⊥`.
    pub perp_basis: Vec<RationalVector>,
    /// The form restricted to `μ^⊥`, in `perp_basis` coordinates.
    pub perp_gram: GramForm,
}

impl LeviData {
    pub fn new(group: &ReductiveGroup, mu: &RationalVector) -> Result<Self> {
        if mu.is_zero() {
            return Err(Error::ZeroCocharacter);
        }
        if mu.len() != group.rank() {
            return Err(Error::LengthMismatch {
                expected: group.rank(),
                got: mu.len(),
            });
        }
        let levi_roots = group
            .roots
            .iter()
            .filter(|(r, _)| r.dot(mu).is_zero())
            .cloned()
            .collect();
        let perp_basis = group.gram.orthogonal_complement(std::slice::from_ref(mu));
        let perp_gram = group.gram.restrict(&perp_basis)?;
        Ok(Self {
            mu: mu.clone(),
            levi_roots,
            perp_basis,
            perp_gram,
        })
    }

    pub fn perp_rank(&self) -> usize {
        self.perp_basis.len()
    }

    /// A character restricted to `μ^⊥`, in `perp_basis` coordinates.
    pub fn project(&self, chi: &RationalVector) -> RationalVector {
        RationalVector::new(self.perp_basis.iter().map(|b| chi.dot(b)).collect())
    }

    /// Cocharacter of `μ^⊥` (in `perp_basis` coordinates) back in the
    /// ambient coordinates.
    pub fn lift(&self, nu: &RationalVector) -> RationalVector {
        let n = self.mu.len();
        self.perp_basis
            .iter()
            .zip(nu.coords())
            .fold(RationalVector::zeros(n), |mut acc, (b, c)| {
                acc.axpy(c, b);
                acc
            })
    }

    pub fn project_module(&self, module: &WeightedModule) -> WeightedModule {
        WeightedModule::new(
            self.perp_rank(),
            module
                .weights()
                .iter()
                .map(|(w, m)| (self.project(w), *m))
                .collect(),
        )
        .expect("projection has the perp rank")
    }

    /// `M_μ^⊥` as a group on `μ^⊥`.
    pub fn group(&self, relative: bool) -> ReductiveGroup {
        ReductiveGroup {
            gram: self.perp_gram.clone(),
            roots: self
                .levi_roots
                .iter()
                .map(|(r, m)| (self.project(r), *m))
                .collect(),
            relative,
        }
    }
}

/// `levi_perp` on a root datum.
pub fn levi_perp(datum: &RootDatum, mu: &RationalVector) -> Result<LeviData> {
    LeviData::new(&datum.group(), mu)
}
