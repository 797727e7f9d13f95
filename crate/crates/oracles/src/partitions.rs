//! Nilpotent orbits of `sl_n` and `sp_2n` by Jordan type.
//!
//! Labels are half the weighted Dynkin cocharacter `h`, written in the
//! engine's coordinates: simple-coroot coordinates for `sl_n`, `ε`
//! coordinates for `sp_2n`.

use crate::{q, Q};

/// Partitions of `n`, parts in decreasing order, in reverse lexicographic
/// order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut vec![], &mut out);
    out
}

pub fn transpose(p: &[usize]) -> Vec<usize> {
    let max = p.first().copied().unwrap_or(0);
    (1..=max).map(|i| p.iter().filter(|&&x| x >= i).count()).collect()
}

/// Eigenvalues of `h` on the standard module, sorted decreasing.
fn h_eigenvalues(p: &[usize]) -> Vec<i64> {
    let mut ev: Vec<i64> = p
        .iter()
        .flat_map(|&k| (0..k).map(move |j| k as i64 - 1 - 2 * j as i64))
        .collect();
    ev.sort_unstable_by(|a, b| b.cmp(a));
    ev
}

/// `h/2` for the `sl_n` orbit of Jordan type `p`, in coroot coordinates.
pub fn type_a_label(p: &[usize]) -> Vec<Q> {
    let ev = h_eigenvalues(p);
    let mut acc = 0i64;
    ev[..ev.len() - 1]
        .iter()
        .map(|h| {
            acc += h;
            q(acc, 2)
        })
        .collect()
}

/// `n² − Σ (p^T_i)²`.
pub fn type_a_orbit_dim(p: &[usize]) -> usize {
    let n: usize = p.iter().sum();
    n * n - transpose(p).iter().map(|c| c * c).sum::<usize>()
}

/// Partitions of `2n` in which odd parts occur with even multiplicity.
pub fn symplectic_partitions(two_n: usize) -> Vec<Vec<usize>> {
    partitions(two_n)
        .into_iter()
        .filter(|p| {
            p.iter()
                .filter(|&&k| k % 2 == 1)
                .all(|&k| p.iter().filter(|&&x| x == k).count() % 2 == 0)
        })
        .collect()
}

/// `h/2` for the `sp_2n` orbit of Jordan type `p`, in `ε` coordinates.
pub fn type_c_label(p: &[usize]) -> Vec<Q> {
    let ev = h_eigenvalues(p);
    let n = ev.len() / 2;
    ev[..n].iter().map(|&h| q(h, 2)).collect()
}

/// `2n² + n − ½ Σ (p^T_i)² − ½ #{odd parts}`.
pub fn type_c_orbit_dim(p: &[usize]) -> usize {
    let n = p.iter().sum::<usize>() / 2;
    let sq: usize = transpose(p).iter().map(|c| c * c).sum();
    let odd = p.iter().filter(|&&k| k % 2 == 1).count();
    2 * n * n + n - (sq + odd) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let counts: Vec<usize> = (1..=6).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11]);
        assert_eq!(symplectic_partitions(4).len(), 4);
        assert_eq!(symplectic_partitions(6).len(), 8);
    }

    #[test]
    fn small_labels() {
        assert_eq!(type_a_label(&[2]), vec![q(1, 2)]);
        assert_eq!(type_a_label(&[3]), vec![q(1, 1), q(1, 1)]);
        assert_eq!(type_c_label(&[4]), vec![q(3, 2), q(1, 2)]);
        assert_eq!(type_c_label(&[2, 1, 1]), vec![q(1, 2), q(0, 1)]);
    }

    #[test]
    fn small_dims() {
        assert_eq!(type_a_orbit_dim(&[2]), 2);
        assert_eq!(type_a_orbit_dim(&[1, 1]), 0);
        assert_eq!(type_c_orbit_dim(&[4]), 8);
        assert_eq!(type_c_orbit_dim(&[2, 2]), 6);
        assert_eq!(type_c_orbit_dim(&[2, 1, 1]), 4);
        assert_eq!(type_c_orbit_dim(&[1, 1, 1, 1]), 0);
    }
}
