//! Instability over `F_64 = F_2[x]/(x^6 + x + 1)` by exhaustive search.
//!
//! Torus modules: a vector is unstable iff some integral cocharacter in a
//! box pairs strictly positively with every weight of its support.
//! `SL_2` modules `⊕ V_d` (binary forms): a vector is unstable iff all
//! degree-0 parts vanish and some point of `P^1(F_64)` is a root of every
//! nonzero form `f_i` with multiplicity greater than `d_i / 2`. Such a
//! point is unique, hence Galois-stable, hence rational.

use rand::Rng;

const MODULUS: u8 = 0b100_0011;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gf64(pub u8);

impl Gf64 {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    pub fn all() -> impl Iterator<Item = Self> {
        (0u8..64).map(Self)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn add(self, o: Self) -> Self {
        Self(self.0 ^ o.0)
    }

    pub fn mul(self, o: Self) -> Self {
        let (mut a, mut b, mut r) = (self.0, o.0, 0u8);
        while b != 0 {
            if b & 1 != 0 {
                r ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & 0b100_0000 != 0 {
                a ^= MODULUS;
            }
        }
        Self(r)
    }

    pub fn inv(self) -> Self {
        assert!(!self.is_zero());
        // a^62 = a^-1 in a group of order 63
        (0..62).fold(Self::ONE, |acc, _| acc.mul(self))
    }

    pub fn random(rng: &mut impl Rng) -> Self {
        Self(rng.random_range(0..64))
    }
}

fn pair(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Whether some `λ ∈ [-bound, bound]^rank` has `⟨χ, λ⟩ > 0` on all of
/// `support`. An empty support counts as unstable (the zero vector).
pub fn torus_unstable(support: &[Vec<i64>], rank: usize, bound: i64) -> bool {
    if support.is_empty() {
        return true;
    }
    let side = (2 * bound + 1) as usize;
    let total = side.pow(rank as u32);
    (0..total).any(|mut idx| {
        let lambda: Vec<i64> = (0..rank)
            .map(|_| {
                let c = (idx % side) as i64 - bound;
                idx /= side;
                c
            })
            .collect();
        support.iter().all(|chi| pair(chi, &lambda) > 0)
    })
}

/// Samples vectors of the torus module with these weights over `F_64`;
/// the generic vector is semistable iff some sample is.
pub fn torus_generic_semistable(weights: &[Vec<i64>], rank: usize, samples: usize, rng: &mut impl Rng) -> bool {
    (0..samples).any(|_| {
        let support: Vec<Vec<i64>> = weights
            .iter()
            .filter(|_| !Gf64::random(rng).is_zero())
            .cloned()
            .collect();
        !torus_unstable(&support, rank, 8)
    })
}

/// Multiplicity of the point `p` of `P^1` as a root of the binary form with
/// coefficients `c_i` of `x^{d-i} y^i`. The zero form gets `usize::MAX`.
pub fn root_multiplicity(coeffs: &[Gf64], point: Option<Gf64>) -> usize {
    if coeffs.iter().all(|c| c.is_zero()) {
        return usize::MAX;
    }
    let d = coeffs.len() - 1;
    match point {
        // [0:1]: the power of x dividing f
        None => d - coeffs.iter().rposition(|c| !c.is_zero()).expect("nonzero form"),
        // [1:t]: order of vanishing of g(u) = f(1, u) at u = t
        Some(t) => {
            let mut g: Vec<Gf64> = coeffs.to_vec();
            let mut mult = 0;
            loop {
                // synthetic division of g (coefficient of u^i is g[i]) by (u - t)
                let deg = g.len() - 1;
                let mut q = vec![Gf64::ZERO; deg];
                let mut carry = Gf64::ZERO;
                for i in (1..=deg).rev() {
                    carry = g[i].add(carry.mul(t));
                    q[i - 1] = carry;
                }
                let rem = g[0].add(carry.mul(t));
                if !rem.is_zero() || deg == 0 {
                    return mult;
                }
                mult += 1;
                g = q;
            }
        }
    }
}

/// Points of `P^1(F_64)`: `None` is `[0:1]`, `Some(t)` is `[1:t]`.
pub fn projective_line() -> impl Iterator<Item = Option<Gf64>> {
    std::iter::once(None).chain(Gf64::all().map(Some))
}

/// Instability of `(f_1, ..., f_k) ∈ ⊕ V_{d_i}`.
pub fn binary_forms_unstable(forms: &[Vec<Gf64>]) -> bool {
    if forms.iter().any(|f| f.len() == 1 && !f[0].is_zero()) {
        return false;
    }
    projective_line().any(|p| {
        forms.iter().filter(|f| f.len() > 1).all(|f| {
            let d = f.len() - 1;
            let m = root_multiplicity(f, p);
            m == usize::MAX || 2 * m > d
        })
    })
}

pub fn sl2_generic_semistable(degrees: &[usize], samples: usize, rng: &mut impl Rng) -> bool {
    (0..samples).any(|_| {
        let forms: Vec<Vec<Gf64>> = degrees
            .iter()
            .map(|&d| (0..=d).map(|_| Gf64::random(rng)).collect())
            .collect();
        !binary_forms_unstable(&forms)
    })
}
