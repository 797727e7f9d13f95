//! Brute-force constrained min-norm: try every equality subset.
//!
//! For each subset `S` of constraints, take the min-norm point of the
//! affine space `{⟨χ, μ⟩ = 1 : χ ∈ S}` and keep it if it satisfies every
//! constraint. The optimum is the smallest such point.

use num_traits::{One, Zero};

use crate::Q;

type Mat = Vec<Vec<Q>>;

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

fn mat_vec(m: &Mat, v: &[Q]) -> Vec<Q> {
    m.iter().map(|row| dot(row, v)).collect()
}

/// Gauss–Jordan on `[a | b]`; `None` if inconsistent, else one solution
/// (free variables set to zero).
fn solve_any(a: &Mat, b: &[Q]) -> Option<Vec<Q>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Mat = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Q::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

fn inverse(g: &Mat) -> Mat {
    let n = g.len();
    (0..n)
        .map(|j| {
            let e: Vec<Q> = (0..n).map(|i| if i == j { Q::one() } else { Q::zero() }).collect();
            solve_any(g, &e).expect("gram is invertible")
        })
        .collect::<Vec<_>>()
        .into_iter()
        .enumerate()
        .fold(vec![vec![Q::zero(); n]; n], |mut acc, (j, col)| {
            for (i, x) in col.into_iter().enumerate() {
                acc[i][j] = x;
            }
            acc
        })
}

/// Returns the optimal point and its squared norm, or `None` when no
/// point satisfies all constraints.
pub fn vertex_min_norm(constraints: &[Vec<Q>], gram: &Mat) -> Option<(Vec<Q>, Q)> {
    let n = gram.len();
    let k = constraints.len();
    assert!(k <= 20, "oracle is exponential in the number of constraints");
    let ginv = inverse(gram);
    let transported: Vec<Vec<Q>> = constraints.iter().map(|c| mat_vec(&ginv, c)).collect();
    let mut best: Option<(Vec<Q>, Q)> = None;
    for mask in 0u32..(1 << k) {
        let s: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
        // μ = Σ c_j ι(χ_j) over S, with ⟨χ_i, μ⟩ = 1 for i ∈ S
        let h: Mat = s
            .iter()
            .map(|&i| s.iter().map(|&j| dot(&constraints[i], &transported[j])).collect())
            .collect();
        let point = if s.is_empty() {
            vec![Q::zero(); n]
        } else {
            let Some(c) = solve_any(&h, &vec![Q::one(); s.len()]) else { continue };
            let mut p = vec![Q::zero(); n];
            for (cj, &j) in c.iter().zip(&s) {
                for (pi, tj) in p.iter_mut().zip(&transported[j]) {
                    *pi += cj * tj;
                }
            }
            p
        };
        if !constraints.iter().all(|c| dot(c, &point) >= Q::one()) {
            continue;
        }
        let q2 = dot(&point, &mat_vec(gram, &point));
        if best.as_ref().is_none_or(|(_, b)| q2 < *b) {
            best = Some((point, q2));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    #[test]
    fn a1_and_c2() {
        let (p, q2) = vertex_min_norm(&[vec![q(2, 1)]], &vec![vec![q(2, 1)]]).unwrap();
        assert_eq!((p, q2), (vec![q(1, 2)], q(1, 2)));
        let id = vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]];
        let (p, q2) = vertex_min_norm(&[vec![q(1, 1), q(-1, 1)], vec![q(0, 1), q(2, 1)]], &id).unwrap();
        assert_eq!((p, q2), (vec![q(3, 2), q(1, 2)], q(5, 2)));
        assert!(vertex_min_norm(&[vec![q(1, 1), q(0, 1)], vec![q(-1, 1), q(0, 1)]], &id).is_none());
    }
}
