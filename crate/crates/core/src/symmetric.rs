//! Characters of the symmetric group by the Murnaghan–Nakayama rule.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use crate::partition::Partition;

static CACHE: LazyLock<RwLock<HashMap<(Partition, Partition), i64>>> = LazyLock::new(Default::default);

/// `χ^λ(ρ)`, the Specht character of `λ` at cycle type `ρ`. Returns 0 when
/// the sizes disagree.
pub fn sn_character(lambda: &Partition, cycle_type: &Partition) -> i64 {
    if lambda.size() != cycle_type.size() {
        return 0;
    }
    if cycle_type.is_empty() {
        return 1;
    }
    let key = (lambda.clone(), cycle_type.clone());
    if let Some(&v) = CACHE.read().unwrap().get(&key) {
        return v;
    }
    let r = cycle_type.first();
    let rest = Partition::from_sorted(cycle_type.parts()[1..].to_vec());
    let value = remove_border_strips(lambda, r)
        .into_iter()
        .map(|(smaller, sign)| sign * sn_character(&smaller, &rest))
        .sum();
    CACHE.write().unwrap().insert(key, value);
    value
}

/// Every way to remove a border strip of length `r`, as `(λ \ strip, (-1)^height)`.
fn remove_border_strips(lambda: &Partition, r: usize) -> Vec<(Partition, i64)> {
    let len = lambda.len();
    // beta numbers λ_i + (len - 1 - i), strictly decreasing
    let beta: Vec<usize> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i)
        .collect();
    let mut out = Vec::new();
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beta.clone();
        moved[idx] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let parts = moved
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (len - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        out.push((Partition::from_sorted(parts), sign));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::factorial;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        for n in 1..=6 {
            for rho in Partition::all(n) {
                assert_eq!(sn_character(&Partition::row(n), &rho), 1);
                let sign = if (n - rho.len()) % 2 == 0 { 1 } else { -1 };
                assert_eq!(sn_character(&Partition::column(n), &rho), sign);
            }
        }
        assert_eq!(sn_character(&p(&[2, 1]), &p(&[3])), -1);
        assert_eq!(sn_character(&p(&[2, 1]), &p(&[1, 1, 1])), 2);
        assert_eq!(sn_character(&p(&[2, 1]), &p(&[2, 1])), 0);
    }

    #[test]
    fn degree_is_standard_tableaux() {
        for n in 0..=8 {
            for lambda in Partition::all(n) {
                let id = Partition::column(n);
                assert_eq!(sn_character(&lambda, &id) as u128, lambda.standard_tableaux());
            }
        }
    }

    #[test]
    fn row_orthogonality() {
        for n in 1..=7 {
            let parts = Partition::all(n);
            for a in &parts {
                for b in &parts {
                    // Σ_ρ χ^a(ρ) χ^b(ρ) / z_ρ = δ, scaled by n!
                    let s: i128 = parts
                        .iter()
                        .map(|rho| {
                            let class = (factorial(n) / rho.centralizer_order()) as i128;
                            class * (sn_character(a, rho) * sn_character(b, rho)) as i128
                        })
                        .sum();
                    let expect = if a == b { factorial(n) as i128 } else { 0 };
                    assert_eq!(s, expect, "{a} {b}");
                }
            }
        }
    }
}
