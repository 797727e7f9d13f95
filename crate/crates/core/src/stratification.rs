//! Stratum tables of the adjoint module, plus isogeny and norm invariance
//! reports.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::instability::{candidate_labels, kn_trace, torus_optimal, Budget, KnTrace};
use crate::rational::{Rational, RationalVector};
use crate::root_datum::{mu_p, LatticeKind, ParabolicSpec, RootDatum};
use crate::weighted_module::WeightedModule;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumLabel {
    /// Dominant normalised label; zero for the trivial stratum.
    pub mu: RationalVector,
    /// Primitive integral multiple of `mu` (zero for the trivial stratum).
    pub lambda: RationalVector,
    /// Level, `lambda = m * mu` (zero for the trivial stratum).
    pub m: u64,
    pub q2: Rational,
    pub parabolic: ParabolicSpec,
    /// `dim V_{μ,1}`.
    pub dim_saturation: usize,
    /// `dim G - dim P_μ + dim V_{μ,1}`.
    pub dim_stratum: usize,
    /// The Kirwan–Ness trace that certified nonemptiness.
    pub certificate: Option<KnTrace>,
}

impl StratumLabel {
    pub fn is_trivial(&self) -> bool {
        self.mu.is_zero()
    }
}

/// A candidate label whose stratum turned out empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RejectedCandidate {
    pub mu: RationalVector,
    pub q2: Rational,
    pub trace: KnTrace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataTable {
    pub datum: String,
    /// Nonempty strata by decreasing `q2`; the trivial stratum is last.
    pub rows: Vec<StratumLabel>,
    pub rejected: Vec<RejectedCandidate>,
}

impl StrataTable {
    pub fn nontrivial(&self) -> impl Iterator<Item = &StratumLabel> {
        self.rows.iter().filter(|r| !r.is_trivial())
    }

    pub fn find(&self, mu: &RationalVector) -> Option<&StratumLabel> {
        self.rows.iter().find(|r| r.mu == *mu)
    }
}

/// Fills in level, dimensions, and parabolic for a dominant label.
pub fn complete_label(
    datum: &RootDatum,
    module: &WeightedModule,
    mu: &RationalVector,
    certificate: Option<KnTrace>,
) -> Result<StratumLabel> {
    if mu.is_zero() {
        return Ok(trivial_label(datum));
    }
    let (lambda, m) = datum.lattice().primitivize(mu)?;
    let parabolic = datum.parabolic_of(mu);
    let dim_saturation = module.at_least(mu, &Rational::one()).dim();
    let dim_stratum = datum.dim() - datum.group().parabolic_dim(mu) + dim_saturation;
    Ok(StratumLabel {
        q2: datum.gram().norm2(mu),
        mu: mu.clone(),
        lambda,
        m,
        parabolic,
        dim_saturation,
        dim_stratum,
        certificate,
    })
}

pub fn trivial_label(datum: &RootDatum) -> StratumLabel {
    let k = datum.simple_roots().len();
    StratumLabel {
        mu: RationalVector::zeros(datum.rank()),
        lambda: RationalVector::zeros(datum.rank()),
        m: 0,
        q2: Rational::zero(),
        parabolic: ParabolicSpec {
            levi: (0..k).collect(),
        },
        dim_saturation: 0,
        dim_stratum: 0,
        certificate: None,
    }
}

pub fn enumerate_strata(datum: &RootDatum) -> Result<StrataTable> {
    enumerate_strata_with_budget(datum, &mut Budget::default())
}

pub fn enumerate_strata_with_budget(datum: &RootDatum, budget: &mut Budget) -> Result<StrataTable> {
    let module = WeightedModule::adjoint(datum);
    let group = datum.group();
    let mut rows = Vec::new();
    let mut rejected = Vec::new();
    for mu in candidate_labels(&module, datum)? {
        let trace = kn_trace(&group, &module, &mu, budget)?;
        if trace.nonempty() {
            rows.push(complete_label(datum, &module, &mu, Some(trace))?);
        } else {
            rejected.push(RejectedCandidate {
                q2: datum.gram().norm2(&mu),
                mu,
                trace,
            });
        }
    }
    rows.sort_by(|a, b| b.q2.cmp(&a.q2).then_with(|| a.mu.cmp(&b.mu)));
    rows.push(trivial_label(datum));
    Ok(StrataTable {
        datum: datum.label().to_string(),
        rows,
        rejected,
    })
}

/// The stratum of a generic element with full simple support.
///
/// Computed as the torus optimum of all positive roots and checked against
/// `μ_{P_0}`.
pub fn regular_label(datum: &RootDatum) -> Result<StratumLabel> {
    let module = WeightedModule::adjoint(datum);
    if datum.positive_roots().is_empty() {
        return Ok(trivial_label(datum));
    }
    let kd = torus_optimal(datum.positive_roots(), datum)?;
    let (mu, _) = datum.dominantize(&kd.mu);
    let (expected, _) = datum.dominantize(&mu_p(&datum.minimal_parabolic(), datum)?);
    if mu != expected {
        return Err(Error::RouteMismatch {
            what: "regular label",
            left: mu.to_string(),
            right: expected.to_string(),
        });
    }
    let trace = kn_trace(&datum.group(), &module, &mu, &mut Budget::default())?;
    if !trace.nonempty() {
        return Err(Error::RouteMismatch {
            what: "regular stratum nonemptiness",
            left: "empty".into(),
            right: "nonempty".into(),
        });
    }
    complete_label(datum, &module, &mu, Some(trace))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelChange {
    pub mu: RationalVector,
    pub base: (RationalVector, u64),
    pub variant: (RationalVector, u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsogenyReport {
    pub variant: LatticeKind,
    /// Same normalised labels and `q2` values in both lattices.
    pub invariant: bool,
    /// Labels whose `(λ, m)` differ between the lattices.
    pub level_changes: Vec<LevelChange>,
}

/// Recomputes the table in another cocharacter lattice and compares.
pub fn isogeny_invariance_check(datum: &RootDatum, variant: LatticeKind) -> Result<IsogenyReport> {
    let other = datum.with_lattice(variant)?;
    let a = enumerate_strata(datum)?;
    let b = enumerate_strata(&other)?;
    let key = |t: &StrataTable| -> Vec<(RationalVector, Rational)> {
        t.rows.iter().map(|r| (r.mu.clone(), r.q2.clone())).collect()
    };
    let invariant = key(&a) == key(&b);
    let level_changes = a
        .rows
        .iter()
        .filter_map(|r| {
            let s = b.find(&r.mu)?;
            ((r.lambda.clone(), r.m) != (s.lambda.clone(), s.m)).then(|| LevelChange {
                mu: r.mu.clone(),
                base: (r.lambda.clone(), r.m),
                variant: (s.lambda.clone(), s.m),
            })
        })
        .collect();
    Ok(IsogenyReport {
        variant,
        invariant,
        level_changes,
    })
}

/// A stratum up to the choice of norm: its saturation and level.
pub type PartitionEntry = (Vec<RationalVector>, u64);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormReport {
    pub left: Vec<PartitionEntry>,
    pub right: Vec<PartitionEntry>,
    pub invariant: bool,
}

/// Compares the stratum partitions for two per-factor Gram scalings.
pub fn norm_invariance_check(datum: &RootDatum, s: &[Rational], s_prime: &[Rational]) -> Result<NormReport> {
    let partition = |scales: &[Rational]| -> Result<Vec<PartitionEntry>> {
        let d = datum.with_factor_scales(scales)?;
        let module = WeightedModule::adjoint(&d);
        let mut out: Vec<PartitionEntry> = enumerate_strata(&d)?
            .rows
            .iter()
            .map(|r| {
                let mut sat: Vec<RationalVector> = if r.is_trivial() {
                    vec![]
                } else {
                    module.at_least(&r.mu, &Rational::one()).basis_weights()
                };
                sat.sort();
                (sat, r.m)
            })
            .collect();
        out.sort();
        Ok(out)
    };
    let left = partition(s)?;
    let right = partition(s_prime)?;
    Ok(NormReport {
        invariant: left == right,
        left,
        right,
    })
}
