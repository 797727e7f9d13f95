//! Parabolic induction of strata from Levi subgroups.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exact_geometry::min_norm_point;
use crate::instability::{kn_trace_graded, Budget, KnTrace, DEFAULT_BUDGET};
use crate::rational::{Rational, RationalVector};
use crate::realization::{sampling_fallback, FallbackResult, SamplingOptions};
use crate::root_datum::{mu_p, ParabolicSpec, RootDatum};
use crate::stratification::{complete_label, trivial_label, StratumLabel};
use crate::weighted_module::{LeviData, WeightedModule};

/// The Levi stratum being induced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeviStratum {
    Trivial,
    /// A label of the Levi, in ambient coordinates.
    Label(RationalVector),
}

impl LeviStratum {
    pub fn label(&self, rank: usize) -> RationalVector {
        match self {
            Self::Trivial => RationalVector::zeros(rank),
            Self::Label(x) => x.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Primary,
    SamplingFallback,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Induced {
    Certified(StratumLabel),
    /// The blade test did not certify `η`. `fallback` holds the sampler's
    /// best-effort label when a matrix realization exists.
    Flagged { fallback: Option<FallbackResult> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionResult {
    /// Min-norm point of the union support.
    pub eta: RationalVector,
    pub induced: Induced,
    pub blade_nonempty: bool,
    pub method: Method,
    /// Weights of `Z·U_P`: saturated Levi roots and the roots of `U_P`.
    pub w_sub: Vec<(RationalVector, u32)>,
    pub blade_trace: Option<KnTrace>,
    pub diagnostics: Vec<String>,
}

impl InductionResult {
    pub fn is_flagged(&self) -> bool {
        matches!(self.induced, Induced::Flagged { .. })
    }

    pub fn certified(&self) -> Option<&StratumLabel> {
        match &self.induced {
            Induced::Certified(l) => Some(l),
            Induced::Flagged { .. } => None,
        }
    }

    /// The certified label, or else the fallback's best effort.
    pub fn best_label(&self) -> Option<&RationalVector> {
        match &self.induced {
            Induced::Certified(l) => Some(&l.mu),
            Induced::Flagged { fallback } => fallback.as_ref().map(|f| &f.mu),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InductionOptions {
    pub sampling: SamplingOptions,
    pub budget: u64,
}

impl Default for InductionOptions {
    fn default() -> Self {
        Self {
            sampling: SamplingOptions::default(),
            budget: DEFAULT_BUDGET,
        }
    }
}

pub fn induce(
    datum: &RootDatum,
    parabolic: &ParabolicSpec,
    levi_stratum: &LeviStratum,
    options: &InductionOptions,
) -> Result<InductionResult> {
    let parabolic = datum.parabolic(&parabolic.levi)?;
    let rank = datum.rank();
    let xi = levi_stratum.label(rank);
    if xi.len() != rank {
        return Err(Error::LengthMismatch {
            expected: rank,
            got: xi.len(),
        });
    }
    let mut w_sub: Vec<(RationalVector, u32)> = datum
        .levi_roots(&parabolic)
        .into_iter()
        .filter(|(r, _)| r.dot(&xi) >= Rational::one())
        .collect();
    w_sub.extend(datum.unipotent_roots(&parabolic));
    let mut diagnostics = Vec::new();
    let adjoint = WeightedModule::adjoint(datum);

    if w_sub.is_empty() {
        return Ok(InductionResult {
            eta: RationalVector::zeros(rank),
            induced: Induced::Certified(trivial_label(datum)),
            blade_nonempty: true,
            method: Method::Primary,
            w_sub,
            blade_trace: None,
            diagnostics,
        });
    }

    let support: Vec<RationalVector> = w_sub.iter().map(|(r, _)| r.clone()).collect();
    let eta = min_norm_point(&support, datum.gram())?.point;

    if !xi.is_zero() {
        let formula = &xi + &mu_p(&parabolic, datum)?;
        if formula != eta {
            diagnostics.push(format!(
                "xi + mu_P = {formula} differs from the min-norm point {eta} of the union support"
            ));
        }
    }

    let graded = WeightedModule::new(
        rank,
        w_sub
            .iter()
            .filter(|(r, _)| r.dot(&eta).is_one())
            .cloned()
            .collect(),
    )?;
    let levi = LeviData::new(&datum.group(), &eta)?;
    let torus_levi = levi.group(datum.is_relative()).is_torus();
    let full_piece = adjoint.graded_piece(&eta, &Rational::one());
    let decidable = torus_levi || same_weights(&graded, &full_piece);

    let mut budget = Budget::new(options.budget);
    let (blade_nonempty, blade_trace) = if decidable {
        let trace = kn_trace_graded(&datum.group(), &graded, &eta, &mut budget)?;
        (trace.nonempty(), Some(trace))
    } else {
        diagnostics.push(format!(
            "graded support at {eta} is a proper subspace of a Levi-module with roots; \
             the weights-only blade test is inconclusive"
        ));
        (false, None)
    };

    if blade_nonempty {
        let (mu, _) = datum.dominantize(&eta);
        let label = complete_label(datum, &adjoint, &mu, blade_trace.clone())?;
        return Ok(InductionResult {
            eta,
            induced: Induced::Certified(label),
            blade_nonempty,
            method: Method::Primary,
            w_sub,
            blade_trace,
            diagnostics,
        });
    }

    if decidable {
        diagnostics.push(format!("the blade at {eta} is empty"));
    }
    let (fallback, method) = match sampling_fallback(&support, datum, options.sampling) {
        Ok(f) => {
            diagnostics.push(format!(
                "best-effort label {} from {} samples (seed {}); not certified",
                f.mu, f.samples, f.seed
            ));
            (Some(f), Method::SamplingFallback)
        }
        Err(Error::NoRealization(t)) => {
            diagnostics.push(format!("no matrix realization for {t}; no fallback label"));
            (None, Method::Primary)
        }
        Err(e) => return Err(e),
    };
    Ok(InductionResult {
        eta,
        induced: Induced::Flagged { fallback },
        blade_nonempty,
        method,
        w_sub,
        blade_trace,
        diagnostics,
    })
}

fn same_weights(a: &WeightedModule, b: &WeightedModule) -> bool {
    let mut x = a.weights().to_vec();
    let mut y = b.weights().to_vec();
    x.sort();
    y.sort();
    x == y
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Holds,
    Fails { left: RationalVector, right: RationalVector },
    /// A step was flagged. `fallback_agree` compares the best-effort labels
    /// when all of them exist.
    Skipped { reason: String, fallback_agree: Option<bool> },
}

impl CheckOutcome {
    pub fn passed_or_skipped(&self) -> bool {
        !matches!(self, Self::Fails { .. })
    }
}

/// Compares induction in stages, `Q ⊂ P ⊂ G`, with direct induction from
/// `Q`, starting from the trivial stratum.
pub fn transitivity_check(
    datum: &RootDatum,
    q: &ParabolicSpec,
    p: &ParabolicSpec,
    options: &InductionOptions,
) -> Result<CheckOutcome> {
    if let Some(&bad) = q.levi.iter().find(|i| !p.contains(**i)) {
        return Err(Error::BadParabolic(bad));
    }
    let direct = induce(datum, q, &LeviStratum::Trivial, options)?;
    let levi = datum.levi_datum(p);
    let inner_p = ParabolicSpec {
        levi: q
            .levi
            .iter()
            .map(|i| p.levi.iter().position(|j| j == i).expect("checked above"))
            .collect(),
    };
    let inner = induce(&levi, &inner_p, &LeviStratum::Trivial, options)?;
    let Some(xi) = inner.certified().map(|l| l.mu.clone()) else {
        return Ok(CheckOutcome::Skipped {
            reason: "induction inside the Levi is flagged".into(),
            fallback_agree: None,
        });
    };
    let outer = induce(datum, p, &LeviStratum::Label(xi), options)?;
    match (direct.certified(), outer.certified()) {
        (Some(a), Some(b)) if a.mu == b.mu => Ok(CheckOutcome::Holds),
        (Some(a), Some(b)) => Ok(CheckOutcome::Fails {
            left: b.mu.clone(),
            right: a.mu.clone(),
        }),
        _ => Ok(CheckOutcome::Skipped {
            reason: "a step of the chain is flagged".into(),
            fallback_agree: match (direct.best_label(), outer.best_label()) {
                (Some(a), Some(b)) => Some(a == b),
                _ => None,
            },
        }),
    }
}

/// Induces the same Levi stratum through two parabolics whose Levis are
/// Weyl-conjugate and compares the results.
pub fn independence_check(
    datum: &RootDatum,
    p1: &ParabolicSpec,
    p2: &ParabolicSpec,
    stratum: &LeviStratum,
    options: &InductionOptions,
) -> Result<CheckOutcome> {
    let mut l1: Vec<RationalVector> = datum.levi_roots(p1).into_iter().map(|(r, _)| r).collect();
    let mut l2: Vec<RationalVector> = datum.levi_roots(p2).into_iter().map(|(r, _)| r).collect();
    l1.sort();
    l2.sort();
    let w = datum
        .weyl_group()?
        .into_iter()
        .find(|w| {
            let mut img: Vec<RationalVector> = l1.iter().map(|r| w.character.mul_vec(r)).collect();
            img.sort();
            img == l2
        })
        .ok_or(Error::NotConjugate)?;
    let moved = match stratum {
        LeviStratum::Trivial => LeviStratum::Trivial,
        LeviStratum::Label(x) => LeviStratum::Label(w.cocharacter.mul_vec(x)),
    };
    let a = induce(datum, p1, stratum, options)?;
    let b = induce(datum, p2, &moved, options)?;
    match (a.certified(), b.certified()) {
        (Some(x), Some(y)) if x.mu == y.mu => Ok(CheckOutcome::Holds),
        (Some(x), Some(y)) => Ok(CheckOutcome::Fails {
            left: x.mu.clone(),
            right: y.mu.clone(),
        }),
        _ => Ok(CheckOutcome::Skipped {
            reason: "an induction is flagged".into(),
            fallback_agree: match (a.best_label(), b.best_label()) {
                (Some(x), Some(y)) => Some(x == y),
                _ => None,
            },
        }),
    }
}

/// Whether inducing `levi_stratum` through `parabolic` certifiably lands on
/// `target`.
pub fn xi_indicator(
    datum: &RootDatum,
    parabolic: &ParabolicSpec,
    levi_stratum: &LeviStratum,
    target: &RationalVector,
    options: &InductionOptions,
) -> Result<bool> {
    let res = induce(datum, parabolic, levi_stratum, options)?;
    Ok(res.certified().is_some_and(|l| l.mu == *target))
}
