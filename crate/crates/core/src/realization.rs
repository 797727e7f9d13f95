//! Matrix realizations of `sl_n` and `sp_2n`, and the seeded sampler that
//! searches for the dense stratum of a span of root vectors.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instability::torus_optimal;
use crate::rational::{int, rat, Rational, RationalMatrix, RationalVector};
use crate::root_datum::RootDatum;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;
pub const DEFAULT_SAMPLES: usize = 64;
pub const DEFAULT_STEPS: usize = 6;

/// The adjoint action of the torus on `n x n` matrices, with one root
/// vector per root.
#[derive(Clone, Debug)]
pub struct MatrixRealization {
    size: usize,
    /// Character of the `i`-th standard basis vector.
    basis_weights: Vec<RationalVector>,
    root_vectors: Vec<(RationalVector, RationalMatrix)>,
}

impl MatrixRealization {
    /// Available for single-factor split data of type `A_n` and `C_n`.
    pub fn for_datum(datum: &RootDatum) -> Result<Self> {
        let no = || Error::NoRealization(datum.label().to_string());
        let [factor] = datum.factors() else {
            return Err(no());
        };
        let n = factor.n;
        let basis_weights: Vec<RationalVector> = match factor.family {
            // coroot coordinates: ⟨e_k, α̌_i⟩ = δ_ki - δ_k,i+1
            'A' => (0..=n)
                .map(|k| {
                    RationalVector::new(
                        (0..n)
                            .map(|i| int(i64::from(k == i) - i64::from(k == i + 1)))
                            .collect(),
                    )
                })
                .collect(),
            'C' => (0..n)
                .map(|i| RationalVector::unit(n, i))
                .chain((0..n).rev().map(|i| -&RationalVector::unit(n, i)))
                .collect(),
            _ => return Err(no()),
        };
        let size = basis_weights.len();
        let omega = (factor.family == 'C').then(|| symplectic_form(n));
        let mut root_vectors = Vec::new();
        for (root, _) in datum.roots() {
            let slots: Vec<(usize, usize)> = (0..size)
                .flat_map(|i| (0..size).map(move |j| (i, j)))
                .filter(|&(i, j)| i != j && &basis_weights[i] - &basis_weights[j] == root)
                .collect();
            let e = match &omega {
                None => {
                    let [(i, j)] = slots[..] else { return Err(no()) };
                    let mut e = RationalMatrix::zeros(size, size);
                    e.set(i, j, Rational::one());
                    e
                }
                Some(om) => symplectic_root_vector(&slots, om, size).ok_or_else(no)?,
            };
            root_vectors.push((root, e));
        }
        Ok(Self {
            size,
            basis_weights,
            root_vectors,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn root_vector(&self, root: &RationalVector) -> Option<&RationalMatrix> {
        self.root_vectors.iter().find(|(r, _)| r == root).map(|(_, e)| e)
    }

    pub fn root_vectors(&self) -> &[(RationalVector, RationalMatrix)] {
        &self.root_vectors
    }

    /// Torus weights of the off-diagonal support of `y`; `None` if a
    /// diagonal entry is nonzero.
    pub fn support(&self, y: &RationalMatrix) -> Option<Vec<RationalVector>> {
        let mut out: Vec<RationalVector> = Vec::new();
        for i in 0..self.size {
            for j in 0..self.size {
                if y.get(i, j).is_zero() {
                    continue;
                }
                if i == j {
                    return None;
                }
                let w = &self.basis_weights[i] - &self.basis_weights[j];
                if !out.contains(&w) {
                    out.push(w);
                }
            }
        }
        Some(out)
    }
}

fn symplectic_form(n: usize) -> RationalMatrix {
    let mut om = RationalMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        om.set(i, 2 * n - 1 - i, Rational::one());
        om.set(2 * n - 1 - i, i, -Rational::one());
    }
    om
}

fn symplectic_root_vector(slots: &[(usize, usize)], om: &RationalMatrix, size: usize) -> Option<RationalMatrix> {
    // unknowns: one per slot; equations: entries of X^T Ω + Ω X
    let mut eq = RationalMatrix::zeros(size * size, slots.len());
    for (s, &(i, j)) in slots.iter().enumerate() {
        let mut x = RationalMatrix::zeros(size, size);
        x.set(i, j, Rational::one());
        let c = x.transpose().mul(om).add(&om.mul(&x));
        for a in 0..size {
            for b in 0..size {
                eq.set(a * size + b, s, c.get(a, b).clone());
            }
        }
    }
    let [sol] = &eq.nullspace()[..] else { return None };
    let sol = sol.primitive();
    let mut e = RationalMatrix::zeros(size, size);
    for (x, &(i, j)) in sol.coords().iter().zip(slots) {
        e.set(i, j, x.clone());
    }
    Some(e)
}

fn exp_nilpotent(x: &RationalMatrix) -> RationalMatrix {
    let n = x.rows();
    let mut out = RationalMatrix::identity(n);
    let mut term = RationalMatrix::identity(n);
    for k in 1..=n {
        term = term.mul(x).scale(&rat(1, k as i64));
        if term.is_zero() {
            break;
        }
        out = out.add(&term);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplingOptions {
    pub seed: u64,
    pub samples: usize,
    pub steps: usize,
}

impl Default for SamplingOptions {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            steps: DEFAULT_STEPS,
        }
    }
}

/// Best-effort label from sampling. Never a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FallbackResult {
    pub mu: RationalVector,
    pub q2: Rational,
    pub seed: u64,
    pub samples: usize,
    pub evaluated: usize,
}

/// Samples elements of `span(E_γ : γ ∈ w_sub)`, conjugates them by random
/// products of root-group elements, and returns the smallest dominant torus
/// label seen.
pub fn sampling_fallback(
    w_sub: &[RationalVector],
    datum: &RootDatum,
    options: SamplingOptions,
) -> Result<FallbackResult> {
    let real = MatrixRealization::for_datum(datum)?;
    if w_sub.is_empty() {
        return Err(Error::EmptySupport);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let roots: Vec<&RationalMatrix> = real.root_vectors.iter().map(|(_, e)| e).collect();
    let mut best: Option<(Rational, RationalVector)> = None;
    let mut evaluated = 0;
    let mut consider = |y: &RationalMatrix, best: &mut Option<(Rational, RationalVector)>| -> Result<()> {
        let Some(support) = real.support(y) else { return Ok(()) };
        if support.is_empty() {
            return Ok(());
        }
        let Ok(kd) = torus_optimal(&support, datum) else { return Ok(()) };
        evaluated += 1;
        let (mu, _) = datum.dominantize(&kd.mu);
        let cand = (kd.q2, mu);
        if best.as_ref().is_none_or(|b| cand < *b) {
            *best = Some(cand);
        }
        Ok(())
    };
    for _ in 0..options.samples {
        let mut y = RationalMatrix::zeros(real.size, real.size);
        for w in w_sub {
            let e = real.root_vector(w).ok_or_else(|| Error::NoRealization(format!("root {w}")))?;
            let c: i64 = rng.random_range(1..=3) * if rng.random_bool(0.5) { 1 } else { -1 };
            y = y.add(&e.scale(&int(c)));
        }
        consider(&y, &mut best)?;
        for _ in 0..options.steps {
            let e = roots[rng.random_range(0..roots.len())];
            let comm = e.mul(&y).sub(&y.mul(e));
            if comm.is_zero() {
                continue;
            }
            let t = if rng.random_bool(0.5) {
                let spots: Vec<(usize, usize)> = (0..real.size)
                    .flat_map(|i| (0..real.size).map(move |j| (i, j)))
                    .filter(|&(i, j)| !y.get(i, j).is_zero() && !comm.get(i, j).is_zero())
                    .collect();
                if spots.is_empty() {
                    continue;
                }
                let (i, j) = spots[rng.random_range(0..spots.len())];
                -(y.get(i, j) / comm.get(i, j))
            } else {
                let choices = [rat(1, 1), rat(-1, 1), rat(2, 1), rat(-2, 1), rat(1, 2), rat(-1, 2)];
                choices[rng.random_range(0..choices.len())].clone()
            };
            let g = exp_nilpotent(&e.scale(&t));
            let g_inv = exp_nilpotent(&e.scale(&-t));
            y = g.mul(&y).mul(&g_inv);
            consider(&y, &mut best)?;
        }
    }
    let (q2, mu) = best.ok_or(Error::EmptySupport)?;
    Ok(FallbackResult {
        mu,
        q2,
        seed: options.seed,
        samples: options.samples,
        evaluated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> RationalVector {
        RationalVector::from_ints(c)
    }

    fn check_weights(datum: &RootDatum) {
        let real = MatrixRealization::for_datum(datum).unwrap();
        assert_eq!(real.root_vectors().len(), datum.roots().len());
        for (root, e) in real.root_vectors() {
            assert_eq!(real.support(e).unwrap(), vec![root.clone()]);
        }
    }

    #[test]
    fn realizations_carry_every_root() {
        for tag in ["A1", "A2", "A3", "C2", "C3"] {
            check_weights(&RootDatum::build(tag).unwrap());
        }
        for tag in ["B2", "G2", "A1xA1"] {
            assert!(matches!(
                MatrixRealization::for_datum(&RootDatum::build(tag).unwrap()),
                Err(Error::NoRealization(_))
            ));
        }
    }

    #[test]
    fn symplectic_root_vectors_preserve_the_form() {
        let c2 = RootDatum::build("C2").unwrap();
        let real = MatrixRealization::for_datum(&c2).unwrap();
        let om = symplectic_form(2);
        for (_, e) in real.root_vectors() {
            assert!(e.transpose().mul(&om).add(&om.mul(e)).is_zero());
        }
    }

    #[test]
    fn fallback_a1_is_immediate() {
        let a1 = RootDatum::build("A1").unwrap();
        let res = sampling_fallback(&[v(&[2])], &a1, SamplingOptions::default()).unwrap();
        assert_eq!(res.mu, "(1/2)".parse().unwrap());
    }

    #[test]
    fn fallback_c2_p_lambda_unipotent() {
        let c2 = RootDatum::build("C2").unwrap();
        let w = [v(&[1, -1]), v(&[1, 1]), v(&[2, 0])];
        let res = sampling_fallback(&w, &c2, SamplingOptions::default()).unwrap();
        assert_eq!(res.mu, "(1/2,1/2)".parse().unwrap());
        let again = sampling_fallback(&w, &c2, SamplingOptions::default()).unwrap();
        assert_eq!(res, again);
    }
}
