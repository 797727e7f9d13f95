//! Kempf data, candidate labels, and the Kirwan–Ness semistability
//! recursion.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_geometry::{min_norm_point, origin_in_hull, GramForm, MinNormCertificate};
use crate::rational::{binomial, Combinations, Rational, RationalMatrix, RationalVector};
use crate::root_datum::{Lattice, ReductiveGroup, RootDatum};
use crate::weighted_module::{LeviData, WeightedModule};

pub const DEFAULT_BUDGET: u64 = 100_000;
const MAX_CANDIDATE_SUBSETS: u128 = 5_000_000;

/// Normalised optimal cocharacter of a support, with its integral form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KempfDatum {
    pub mu: RationalVector,
    pub lambda: RationalVector,
    pub m: u64,
    pub q2: Rational,
    pub certificate: MinNormCertificate,
}

/// Counts semistability calls; exceeding the limit is an error.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Self { limit, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    fn spend(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::BudgetExceeded { limit: self.limit });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::new(DEFAULT_BUDGET)
    }
}

/// How a semistability question was answered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemistabilityTrace {
    Torus {
        origin_in_hull: bool,
    },
    Reductive {
        /// Every candidate whose stratum could fill the module, in the order
        /// tried. The module is unstable iff one of them is nonempty.
        candidates: Vec<CandidateCheck>,
    },
}

impl SemistabilityTrace {
    pub fn semistable(&self) -> bool {
        match self {
            Self::Torus { origin_in_hull } => *origin_in_hull,
            Self::Reductive { candidates } => !candidates
                .iter()
                .any(|c| c.stratum_dim == c.module_dim && c.nonempty.as_ref().is_some_and(|t| t.nonempty())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateCheck {
    pub label: RationalVector,
    pub stratum_dim: usize,
    pub module_dim: usize,
    /// Present when the dimension count allowed the stratum to be dense.
    pub nonempty: Option<Box<KnTrace>>,
}

/// Record of one Kirwan–Ness nonemptiness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnTrace {
    pub label: RationalVector,
    pub graded_dim: usize,
    pub levi_roots: usize,
    pub perp_rank: usize,
    pub projected: Vec<(RationalVector, u32)>,
    pub semistability: SemistabilityTrace,
}

impl KnTrace {
    pub fn nonempty(&self) -> bool {
        self.graded_dim > 0 && self.semistability.semistable()
    }
}

/// Optimal cocharacter of a support over the torus, primitivised in
/// `lattice`.
pub fn torus_optimal_in(
    support: &[RationalVector],
    gram: &GramForm,
    lattice: &Lattice,
) -> Result<KempfDatum> {
    if support.is_empty() {
        return Err(Error::EmptySupport);
    }
    let certificate = min_norm_point(support, gram)?;
    let mu = certificate.point.clone();
    let (lambda, m) = lattice.primitivize(&mu)?;
    Ok(KempfDatum {
        q2: gram.norm2(&mu),
        mu,
        lambda,
        m,
        certificate,
    })
}

pub fn torus_optimal(support: &[RationalVector], datum: &RootDatum) -> Result<KempfDatum> {
    torus_optimal_in(support, datum.gram(), datum.lattice())
}

/// Min-norm points of every linearly independent set of at most `rank`
/// distinct nonzero weights with nonnegative multipliers. Not dominantised.
pub fn raw_candidates(weights: &[RationalVector], gram: &GramForm) -> Result<Vec<RationalVector>> {
    let rank = gram.rank();
    let mut distinct: Vec<RationalVector> = Vec::new();
    for w in weights {
        if !w.is_zero() && !distinct.contains(w) {
            distinct.push(w.clone());
        }
    }
    let total: u128 = (1..=rank.min(distinct.len()))
        .map(|k| binomial(distinct.len(), k))
        .sum();
    if total > MAX_CANDIDATE_SUBSETS {
        return Err(Error::SizeLimit {
            what: "candidate subsets",
            count: total,
            limit: MAX_CANDIDATE_SUBSETS,
        });
    }
    let mut out: Vec<RationalVector> = Vec::new();
    for k in 1..=rank.min(distinct.len()) {
        for subset in Combinations::new(distinct.len(), k) {
            let chosen: Vec<RationalVector> = subset.iter().map(|&i| distinct[i].clone()).collect();
            if RationalMatrix::from_rows(&chosen).rank() < k {
                continue;
            }
            let mut h = RationalMatrix::zeros(k, k);
            for a in 0..k {
                for b in 0..k {
                    h.set(a, b, gram.dual_inner(&chosen[a], &chosen[b]));
                }
            }
            let Some(c) = h.solve(&RationalVector::new(vec![Rational::one(); k])) else {
                continue;
            };
            if c.coords().iter().any(|x| *x < Rational::zero()) {
                continue;
            }
            let mut point = RationalVector::zeros(rank);
            for (x, chi) in c.coords().iter().zip(&chosen) {
                point.axpy(x, &crate::exact_geometry::transport(chi, gram)?);
            }
            if !out.contains(&point) {
                out.push(point);
            }
        }
    }
    Ok(out)
}

/// Dominant candidate labels of a module, sorted lexicographically.
pub fn candidate_labels(module: &WeightedModule, datum: &RootDatum) -> Result<Vec<RationalVector>> {
    let raw = raw_candidates(&module.nonzero_weights(), datum.gram())?;
    let mut out: Vec<RationalVector> = raw.iter().map(|p| datum.dominantize(p).0).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Whether the generic vector of `module` is semistable for `group`.
pub fn generic_semistable(group: &ReductiveGroup, module: &WeightedModule) -> Result<bool> {
    Ok(generic_semistable_traced(group, module, &mut Budget::default())?.semistable())
}

pub fn generic_semistable_traced(
    group: &ReductiveGroup,
    module: &WeightedModule,
    budget: &mut Budget,
) -> Result<SemistabilityTrace> {
    budget.spend()?;
    if group.is_torus() {
        let pts: Vec<RationalVector> = module.weights().iter().map(|(w, _)| w.clone()).collect();
        return Ok(SemistabilityTrace::Torus {
            origin_in_hull: origin_in_hull(&pts, &group.gram)?,
        });
    }
    let dim_v = module.dim();
    let mut candidates = Vec::new();
    for nu in raw_candidates(&module.nonzero_weights(), &group.gram)? {
        let sat = module.at_least(&nu, &Rational::one()).dim();
        let stratum_dim = group.dim() - group.parabolic_dim(&nu) + sat;
        let nonempty = if stratum_dim == dim_v {
            let trace = kn_trace(group, module, &nu, budget)?;
            let filled = trace.nonempty();
            let b = Some(Box::new(trace));
            candidates.push(CandidateCheck {
                label: nu,
                stratum_dim,
                module_dim: dim_v,
                nonempty: b,
            });
            if filled {
                break;
            }
            continue;
        } else {
            None
        };
        candidates.push(CandidateCheck {
            label: nu,
            stratum_dim,
            module_dim: dim_v,
            nonempty,
        });
    }
    Ok(SemistabilityTrace::Reductive { candidates })
}

/// The Kirwan–Ness test at `nu`: is the generic vector of the graded piece
/// `V_ν(1)` semistable for `M_ν^⊥`?
pub fn kn_trace(
    group: &ReductiveGroup,
    module: &WeightedModule,
    nu: &RationalVector,
    budget: &mut Budget,
) -> Result<KnTrace> {
    let graded = module.graded_piece(nu, &Rational::one());
    kn_trace_graded(group, &graded, nu, budget)
}

/// Same as [`kn_trace`] with the graded weights supplied by the caller.
pub fn kn_trace_graded(
    group: &ReductiveGroup,
    graded: &WeightedModule,
    nu: &RationalVector,
    budget: &mut Budget,
) -> Result<KnTrace> {
    let levi = LeviData::new(group, nu)?;
    let sub = levi.group(group.relative);
    if group.relative && !sub.is_torus() {
        return Err(Error::RelativeRecursion);
    }
    let projected = levi.project_module(graded);
    let semistability = if graded.is_empty() {
        SemistabilityTrace::Torus {
            origin_in_hull: false,
        }
    } else {
        generic_semistable_traced(&sub, &projected, budget)?
    };
    Ok(KnTrace {
        label: nu.clone(),
        graded_dim: graded.dim(),
        levi_roots: levi.levi_roots.len(),
        perp_rank: levi.perp_rank(),
        projected: projected.weights().to_vec(),
        semistability,
    })
}

/// Whether the stratum labelled by `label` is nonempty.
pub fn stratum_nonempty(label: &RationalVector, module: &WeightedModule, datum: &RootDatum) -> Result<bool> {
    Ok(kn_trace(&datum.group(), module, label, &mut Budget::default())?.nonempty())
}

/// Outcome of labelling one vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VectorLabel {
    Zero,
    /// The torus already sees `0` in the hull of the support.
    TorusSemistable,
    /// Optimal for the group, checked by the Kirwan–Ness test.
    Certified(KempfDatum),
    /// Torus bound only: the Levi at the label is not a torus, so the
    /// per-vector test is not decidable from weights.
    Flagged(KempfDatum),
}

/// Labels the vector with coordinates `coords` against
/// `module.basis_weights()`.
pub fn vector_label(coords: &[Rational], module: &WeightedModule, datum: &RootDatum) -> Result<VectorLabel> {
    let basis = module.basis_weights();
    if coords.len() != basis.len() {
        return Err(Error::LengthMismatch {
            expected: basis.len(),
            got: coords.len(),
        });
    }
    let support: Vec<RationalVector> = basis
        .iter()
        .zip(coords)
        .filter(|(_, c)| !c.is_zero())
        .map(|(w, _)| w.clone())
        .collect();
    if support.is_empty() {
        return Ok(VectorLabel::Zero);
    }
    if origin_in_hull(&support, datum.gram())? {
        return Ok(VectorLabel::TorusSemistable);
    }
    let kd = torus_optimal(&support, datum)?;
    let levi = levi_perp_group(datum, &kd.mu)?;
    if !levi.group(datum.is_relative()).is_torus() {
        return Ok(VectorLabel::Flagged(kd));
    }
    let graded: Vec<RationalVector> = support
        .iter()
        .filter(|w| w.dot(&kd.mu).is_one())
        .map(|w| levi.project(w))
        .collect();
    if origin_in_hull(&graded, &levi.perp_gram)? {
        Ok(VectorLabel::Certified(kd))
    } else {
        Ok(VectorLabel::Flagged(kd))
    }
}

fn levi_perp_group(datum: &RootDatum, mu: &RationalVector) -> Result<LeviData> {
    LeviData::new(&datum.group(), mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn v(c: &[i64]) -> RationalVector {
        RationalVector::from_ints(c)
    }

    fn r(s: &str) -> RationalVector {
        s.parse().unwrap()
    }

    #[test]
    fn torus_optimal_examples() {
        let a1 = RootDatum::build("A1").unwrap();
        let k = torus_optimal(&[v(&[2])], &a1).unwrap();
        assert_eq!((k.mu.clone(), k.lambda.clone(), k.m, k.q2.clone()), (r("(1/2)"), v(&[1]), 2, rat(1, 2)));
        let c2 = RootDatum::build("C2").unwrap();
        let k = torus_optimal(&[v(&[2, 0])], &c2).unwrap();
        assert_eq!((k.mu, k.lambda, k.m), (r("(1/2,0)"), v(&[1, 0]), 2));
        assert!(matches!(torus_optimal(&[], &c2), Err(Error::EmptySupport)));
        assert!(matches!(
            torus_optimal(&[v(&[0, 0])], &c2),
            Err(Error::ZeroConstraint { .. })
        ));
    }

    #[test]
    fn candidate_examples() {
        let a1 = RootDatum::build("A1").unwrap();
        assert_eq!(
            candidate_labels(&WeightedModule::adjoint(&a1), &a1).unwrap(),
            vec![r("(1/2)")]
        );
        let c2 = RootDatum::build("C2").unwrap();
        let c = candidate_labels(&WeightedModule::adjoint(&c2), &c2).unwrap();
        for want in ["(3/2,1/2)", "(1,0)", "(1/2,1/2)", "(1/2,0)"] {
            assert!(c.contains(&r(want)), "{want}");
        }
        assert!(candidate_labels(&WeightedModule::empty(2), &c2).unwrap().is_empty());
    }

    #[test]
    fn semistability_examples() {
        let torus = ReductiveGroup::torus(GramForm::identity(1));
        let pm = WeightedModule::from_weights(1, &[v(&[1]), v(&[-1])]).unwrap();
        assert!(generic_semistable(&torus, &pm).unwrap());
        let a1 = RootDatum::build("A1").unwrap();
        let std = WeightedModule::from_weights(1, &[v(&[1]), v(&[-1])]).unwrap();
        assert!(!generic_semistable(&a1.group(), &std).unwrap());
        assert!(generic_semistable(&a1.group(), &WeightedModule::adjoint(&a1)).unwrap());
    }

    #[test]
    fn stratum_nonempty_examples() {
        let a1 = RootDatum::build("A1").unwrap();
        assert!(stratum_nonempty(&r("(1/2)"), &WeightedModule::adjoint(&a1), &a1).unwrap());
        let c2 = RootDatum::build("C2").unwrap();
        let adj = WeightedModule::adjoint(&c2);
        assert!(stratum_nonempty(&r("(3/2,1/2)"), &adj, &c2).unwrap());
        assert!(stratum_nonempty(&r("(1/2,1/2)"), &adj, &c2).unwrap());
        assert!(stratum_nonempty(&r("(1/2,0)"), &adj, &c2).unwrap());
        assert!(!stratum_nonempty(&r("(1,0)"), &adj, &c2).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let c2 = RootDatum::build("C2").unwrap();
        let adj = WeightedModule::adjoint(&c2);
        let mut b = Budget::new(0);
        assert!(matches!(
            kn_trace(&c2.group(), &adj, &r("(1/2,1/2)"), &mut b),
            Err(Error::BudgetExceeded { limit: 0 })
        ));
    }

    #[test]
    fn vector_label_examples() {
        let a1 = RootDatum::build("A1").unwrap();
        let adj = WeightedModule::adjoint(&a1);
        // basis order: +2, -2, 0
        let root_vec = [int(1), int(0), int(0)];
        match vector_label(&root_vec, &adj, &a1).unwrap() {
            VectorLabel::Certified(k) => assert_eq!(k.mu, r("(1/2)")),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            vector_label(&[int(0), int(0), int(1)], &adj, &a1).unwrap(),
            VectorLabel::TorusSemistable
        );
        assert_eq!(vector_label(&[int(0), int(0), int(0)], &adj, &a1).unwrap(), VectorLabel::Zero);

        let c2 = RootDatum::build("C2").unwrap();
        let adj = WeightedModule::adjoint(&c2);
        let basis = adj.basis_weights();
        let coords: Vec<Rational> = basis
            .iter()
            .map(|w| if *w == v(&[1, -1]) || *w == v(&[0, 2]) { int(1) } else { int(0) })
            .collect();
        match vector_label(&coords, &adj, &c2).unwrap() {
            VectorLabel::Certified(k) => assert_eq!(k.mu, r("(3/2,1/2)")),
            other => panic!("{other:?}"),
        }
        // support {α, α+β}: the β-Levi is not a torus
        let coords: Vec<Rational> = basis
            .iter()
            .map(|w| if *w == v(&[1, -1]) || *w == v(&[1, 1]) { int(1) } else { int(0) })
            .collect();
        assert!(matches!(vector_label(&coords, &adj, &c2).unwrap(), VectorLabel::Flagged(_)));
    }
}
