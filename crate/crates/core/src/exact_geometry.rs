//! Exact convex subroutines on the cocharacter space.
//!
//! Characters act on cocharacters through the coordinate dot product; the
//! Gram form moves characters over to cocharacter space (`transport`). Both
//! solvers work by enumerating candidate active sets, which terminates
//! exactly and is cheap at the ranks this crate targets (rank at most 4).

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{
    binomial, is_nonnegative, Combinations, Rational, RationalMatrix, RationalVector,
};

const MAX_SUBSETS: u128 = 20_000_000;

/// Symmetric positive definite form on cocharacter space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramForm {
    matrix: RationalMatrix,
    inverse: RationalMatrix,
}

impl GramForm {
    pub fn new(matrix: RationalMatrix) -> Result<Self> {
        if !matrix.is_symmetric() {
            return Err(Error::GramNotSymmetric);
        }
        let n = matrix.rows();
        for k in 1..=n {
            let mut minor = RationalMatrix::zeros(k, k);
            for i in 0..k {
                for j in 0..k {
                    minor.set(i, j, matrix.get(i, j).clone());
                }
            }
            let d = minor.determinant();
            if d <= Rational::zero() {
                return Err(Error::GramNotPositiveDefinite {
                    index: k,
                    minor: d.to_string(),
                });
            }
        }
        let inverse = matrix.inverse().expect("positive definite matrix is invertible");
        Ok(Self { matrix, inverse })
    }

    pub fn identity(rank: usize) -> Self {
        Self::new(RationalMatrix::identity(rank)).expect("identity is positive definite")
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn scaled(&self, s: &Rational) -> Result<Self> {
        Self::new(self.matrix.scale(s))
    }

    /// `(a, b)` for cocharacters.
    pub fn inner(&self, a: &RationalVector, b: &RationalVector) -> Rational {
        a.dot(&self.matrix.mul_vec(b))
    }

    pub fn norm2(&self, a: &RationalVector) -> Rational {
        self.inner(a, a)
    }

    /// `(ι(χ), ι(ψ))`, the induced form on characters.
    pub fn dual_inner(&self, chi: &RationalVector, psi: &RationalVector) -> Rational {
        chi.dot(&self.inverse.mul_vec(psi))
    }

    fn transport_unchecked(&self, chi: &RationalVector) -> RationalVector {
        self.inverse.mul_vec(chi)
    }

    /// Restriction of the form to the span of `basis` (columns).
    pub fn restrict(&self, basis: &[RationalVector]) -> Result<Self> {
        let k = basis.len();
        let mut m = RationalMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, self.inner(&basis[i], &basis[j]));
            }
        }
        Self::new(m)
    }

    /// Gram-orthogonal complement of `span(against)`, as a deterministic basis
    /// of primitive integral vectors (Gram-Schmidt without normalisation,
    /// seeded by the standard basis).
    pub fn orthogonal_complement(&self, against: &[RationalVector]) -> Vec<RationalVector> {
        let n = self.rank();
        let mut ortho: Vec<RationalVector> = Vec::new();
        for v in against {
            if let Some(w) = self.reduce_against(v, &ortho) {
                ortho.push(w);
            }
        }
        let fixed = ortho.len();
        for i in 0..n {
            if ortho.len() == n {
                break;
            }
            if let Some(w) = self.reduce_against(&RationalVector::unit(n, i), &ortho) {
                ortho.push(w.primitive());
            }
        }
        ortho.split_off(fixed)
    }

    fn reduce_against(&self, v: &RationalVector, ortho: &[RationalVector]) -> Option<RationalVector> {
        let mut w = v.clone();
        for u in ortho {
            let c = self.inner(&w, u) / self.norm2(u);
            w.axpy(&-c, u);
        }
        (!w.is_zero()).then_some(w)
    }
}

/// `⟨χ, ν⟩`.
pub fn pairing(chi: &RationalVector, nu: &RationalVector) -> Result<Rational> {
    check_len(chi.len(), nu.len())?;
    Ok(chi.dot(nu))
}

/// The cocharacter `ι(χ)` with `(ι(χ), ν) = ⟨χ, ν⟩` for every `ν`.
pub fn transport(chi: &RationalVector, gram: &GramForm) -> Result<RationalVector> {
    check_len(gram.rank(), chi.len())?;
    Ok(gram.transport_unchecked(chi))
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::LengthMismatch { expected, got });
    }
    Ok(())
}

/// KKT certificate for the constrained min-norm point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinNormCertificate {
    pub point: RationalVector,
    /// Indices of constraints with pairing exactly one.
    pub active_set: Vec<usize>,
    /// One multiplier per entry of `active_set`.
    pub multipliers: Vec<Rational>,
}

impl MinNormCertificate {
    pub fn q2(&self, gram: &GramForm) -> Rational {
        gram.norm2(&self.point)
    }

    /// Rebuilds the point from the multipliers and rechecks every constraint.
    pub fn verify(&self, constraints: &[RationalVector], gram: &GramForm) -> bool {
        if self.active_set.len() != self.multipliers.len() {
            return false;
        }
        let mut rebuilt = RationalVector::zeros(gram.rank());
        for (&i, c) in self.active_set.iter().zip(&self.multipliers) {
            if !is_nonnegative(c) {
                return false;
            }
            rebuilt.axpy(c, &gram.transport_unchecked(&constraints[i]));
        }
        if rebuilt != self.point {
            return false;
        }
        constraints.iter().enumerate().all(|(i, chi)| {
            let p = chi.dot(&self.point);
            p >= Rational::one() && ((p == Rational::one()) == self.active_set.contains(&i))
        })
    }
}

/// Minimises `(μ, μ)` subject to `⟨χ, μ⟩ ≥ 1` for every constraint `χ`.
///
/// An empty constraint set gives `μ = 0` with an empty certificate.
pub fn min_norm_point(
    constraints: &[RationalVector],
    gram: &GramForm,
) -> Result<MinNormCertificate> {
    let rank = gram.rank();
    for chi in constraints {
        check_len(rank, chi.len())?;
    }
    if let Some(index) = constraints.iter().position(RationalVector::is_zero) {
        return Err(Error::ZeroConstraint { index });
    }
    if constraints.is_empty() {
        return Ok(MinNormCertificate {
            point: RationalVector::zeros(rank),
            active_set: vec![],
            multipliers: vec![],
        });
    }
    let (distinct, first_index) = dedup_with_index(constraints);
    let transported: Vec<RationalVector> =
        distinct.iter().map(|c| gram.transport_unchecked(c)).collect();

    let max_k = rank.min(distinct.len());
    let total: u128 = (1..=max_k).map(|k| binomial(distinct.len(), k)).sum();
    if total > MAX_SUBSETS {
        return Err(Error::SizeLimit {
            what: "active-set candidates",
            count: total,
            limit: MAX_SUBSETS,
        });
    }
    for k in 1..=max_k {
        for subset in Combinations::new(distinct.len(), k) {
            let Some((point, mult)) = solve_active(&subset, &distinct, &transported, gram) else {
                continue;
            };
            if !distinct.iter().all(|chi| chi.dot(&point) >= Rational::one()) {
                continue;
            }
            let mut active_set = Vec::new();
            let mut multipliers = Vec::new();
            for (i, chi) in constraints.iter().enumerate() {
                if chi.dot(&point) == Rational::one() {
                    active_set.push(i);
                    let m = subset
                        .iter()
                        .position(|&s| first_index[s] == i)
                        .map(|p| mult[p].clone())
                        .unwrap_or_else(Rational::zero);
                    multipliers.push(m);
                }
            }
            return Ok(MinNormCertificate {
                point,
                active_set,
                multipliers,
            });
        }
    }
    Err(Error::Infeasible)
}

/// Equality-constrained KKT solve on one active subset; `None` if the
/// transported generators are dependent or a multiplier is negative.
fn solve_active(
    subset: &[usize],
    distinct: &[RationalVector],
    transported: &[RationalVector],
    gram: &GramForm,
) -> Option<(RationalVector, Vec<Rational>)> {
    let k = subset.len();
    let mut h = RationalMatrix::zeros(k, k);
    for (a, &i) in subset.iter().enumerate() {
        for (b, &j) in subset.iter().enumerate() {
            h.set(a, b, distinct[i].dot(&transported[j]));
        }
    }
    let ones = RationalVector::new(vec![Rational::one(); k]);
    let c = h.solve(&ones)?;
    if !c.coords().iter().all(is_nonnegative) {
        return None;
    }
    let mut point = RationalVector::zeros(gram.rank());
    for (a, &i) in subset.iter().enumerate() {
        point.axpy(c.get(a), &transported[i]);
    }
    Some((point, c.into_coords()))
}

pub(crate) fn dedup_with_index(points: &[RationalVector]) -> (Vec<RationalVector>, Vec<usize>) {
    let mut distinct: Vec<RationalVector> = Vec::new();
    let mut first = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if !distinct.contains(p) {
            distinct.push(p.clone());
            first.push(i);
        }
    }
    (distinct, first)
}

/// The point of `conv(ι(points))` closest to the origin.
///
/// Enumerates affinely independent subsets of size at most `rank + 1`, takes
/// the min-norm point of each affine hull, and accepts the first one that has
/// nonnegative barycentric weights and satisfies the Wolfe optimality test
/// `(ι(χ), x) ≥ (x, x)` for every point.
pub fn hull_min_norm_point(points: &[RationalVector], gram: &GramForm) -> Result<RationalVector> {
    let rank = gram.rank();
    for p in points {
        check_len(rank, p.len())?;
    }
    if points.is_empty() {
        return Err(Error::EmptySupport);
    }
    let (distinct, _) = dedup_with_index(points);
    let transported: Vec<RationalVector> =
        distinct.iter().map(|c| gram.transport_unchecked(c)).collect();
    let max_k = (rank + 1).min(distinct.len());
    for k in 1..=max_k {
        for subset in Combinations::new(distinct.len(), k) {
            let mut m = RationalMatrix::zeros(k + 1, k + 1);
            for (a, &i) in subset.iter().enumerate() {
                for (b, &j) in subset.iter().enumerate() {
                    m.set(a, b, distinct[i].dot(&transported[j]));
                }
                m.set(a, k, -Rational::one());
                m.set(k, a, Rational::one());
            }
            let rhs = RationalVector::unit(k + 1, k);
            let Some(sol) = m.solve(&rhs) else { continue };
            if !sol.coords()[..k].iter().all(is_nonnegative) {
                continue;
            }
            let mut x = RationalVector::zeros(rank);
            for (a, &i) in subset.iter().enumerate() {
                x.axpy(sol.get(a), &transported[i]);
            }
            let xx = gram.norm2(&x);
            if distinct.iter().all(|chi| chi.dot(&x) >= xx) {
                return Ok(x);
            }
        }
    }
    unreachable!("a finite point set always has a min-norm point in its hull")
}

/// Whether the origin lies in the convex hull of the transported points.
pub fn origin_in_hull(points: &[RationalVector], gram: &GramForm) -> Result<bool> {
    if points.is_empty() {
        return Ok(false);
    }
    if points.iter().any(RationalVector::is_zero) {
        return Ok(true);
    }
    Ok(hull_min_norm_point(points, gram)?.is_zero())
}
