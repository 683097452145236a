//! Littlewood–Richardson coefficients.
//!
//! The general case enumerates LR skew tableaux: semistandard fillings of
//! `ν/λ` with content `μ` whose reading word (rows top to bottom, each row
//! right to left) is a lattice word. One-row and one-column factors go
//! through the Pieri rule instead. Results are memoized process-wide.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use crate::partition::{compositions, MultiPartition, Partition};

type Key = (Partition, Partition, Partition);

static COEFFICIENTS: LazyLock<RwLock<HashMap<Key, u64>>> = LazyLock::new(Default::default);
type Expansion = Vec<(Partition, u64)>;

static PRODUCTS: LazyLock<RwLock<HashMap<(Partition, Partition), Expansion>>> = LazyLock::new(Default::default);

/// `c^ν_{λ,μ}`, the multiplicity of `s_ν` in `s_λ s_μ`. Zero for any
/// degenerate triple.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.size() + mu.size() != nu.size() || !nu.contains(lambda) || !nu.contains(mu) {
        return 0;
    }
    if let Some(c) = pieri(lambda, mu, nu).or_else(|| pieri(mu, lambda, nu)) {
        return c;
    }
    let key = (lambda.clone(), mu.clone(), nu.clone());
    if let Some(&c) = COEFFICIENTS.read().unwrap().get(&key) {
        return c;
    }
    let c = lr_coefficient_by_tableaux(lambda, mu, nu);
    COEFFICIENTS.write().unwrap().insert(key, c);
    c
}

/// Pieri rule when `mu` is a single row or column; `None` otherwise.
fn pieri(lambda: &Partition, mu: &Partition, nu: &Partition) -> Option<u64> {
    let k = mu.size();
    if !nu.contains(lambda) || nu.size() != lambda.size() + k {
        return if mu.len() <= 1 || mu.first() == 1 {
            Some(0)
        } else {
            None
        };
    }
    let strip = if mu.len() <= 1 {
        // horizontal strip: at most one box per column
        (0..nu.len()).all(|i| nu.part(i + 1) <= lambda.part(i))
    } else if mu.first() == 1 {
        // vertical strip: at most one box per row
        (0..nu.len()).all(|i| nu.part(i) - lambda.part(i) <= 1)
    } else {
        return None;
    };
    Some(u64::from(strip))
}

/// Direct LR-tableau count with no fast paths and no cache.
pub fn lr_coefficient_by_tableaux(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.size() + mu.size() != nu.size() || !nu.contains(lambda) || !nu.contains(mu) {
        return 0;
    }
    let rows = nu.len();
    let mut cells = Vec::with_capacity(mu.size());
    for i in 0..rows {
        for j in (lambda.part(i)..nu.part(i)).rev() {
            cells.push((i, j));
        }
    }
    let mut grid = vec![vec![0usize; nu.first()]; rows];
    let mut counts = vec![0usize; mu.len() + 1];
    let mut search = Search {
        lambda,
        mu,
        nu,
        cells: &cells,
        grid: &mut grid,
        counts: &mut counts,
    };
    search.run(0)
}

struct Search<'a> {
    lambda: &'a Partition,
    mu: &'a Partition,
    nu: &'a Partition,
    cells: &'a [(usize, usize)],
    grid: &'a mut Vec<Vec<usize>>,
    counts: &'a mut Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, idx: usize) -> u64 {
        let Some(&(i, j)) = self.cells.get(idx) else {
            return 1;
        };
        let mut total = 0;
        for v in 1..=self.mu.len() {
            if self.counts[v] >= self.mu.part(v - 1) {
                continue;
            }
            if v > 1 && self.counts[v] >= self.counts[v - 1] {
                continue;
            }
            if j + 1 < self.nu.part(i) && v > self.grid[i][j + 1] {
                continue;
            }
            if i > 0 && j >= self.lambda.part(i - 1) && v <= self.grid[i - 1][j] {
                continue;
            }
            self.grid[i][j] = v;
            self.counts[v] += 1;
            total += self.run(idx + 1);
            self.counts[v] -= 1;
            self.grid[i][j] = 0;
        }
        total
    }
}

/// Schur expansion of `s_λ s_μ` as `(ν, c^ν_{λ,μ})` pairs with nonzero
/// coefficient, `ν` in [`Partition::all`] order.
pub fn lr_product(lambda: &Partition, mu: &Partition) -> Vec<(Partition, u64)> {
    let key = (lambda.clone(), mu.clone());
    if let Some(v) = PRODUCTS.read().unwrap().get(&key) {
        return v.clone();
    }
    let terms: Vec<(Partition, u64)> = Partition::all(lambda.size() + mu.size())
        .into_iter()
        .filter_map(|nu| {
            let c = lr_coefficient(lambda, mu, &nu);
            (c > 0).then_some((nu, c))
        })
        .collect();
    PRODUCTS.write().unwrap().insert(key, terms.clone());
    terms
}

/// Coproduct piece: all `(α, β, c^ν_{α,β})` with `|α| = k`, nonzero.
pub fn lr_splits(nu: &Partition, k: usize) -> Vec<(Partition, Partition, u64)> {
    if k > nu.size() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for alpha in Partition::all(k).into_iter().filter(|a| nu.contains(a)) {
        for beta in Partition::all(nu.size() - k).into_iter().filter(|b| nu.contains(b)) {
            let c = lr_coefficient(&alpha, &beta, nu);
            if c > 0 {
                out.push((alpha.clone(), beta, c));
            }
        }
    }
    out
}

/// Induction product of two multipartition labels: `ν` with coefficient
/// `Π_U c^{ν(U)}_{λ(U),μ(U)}`. Both labels must have the same number of
/// entries.
pub fn multi_lr_product(lambda: &MultiPartition, mu: &MultiPartition) -> Vec<(MultiPartition, u64)> {
    assert_eq!(lambda.num_irreducibles(), mu.num_irreducibles());
    let per_entry: Vec<Vec<(Partition, u64)>> = lambda
        .entries()
        .iter()
        .zip(mu.entries())
        .map(|(a, b)| lr_product(a, b))
        .collect();
    cartesian(&per_entry)
        .into_iter()
        .map(|(parts, c)| (MultiPartition::new(parts), c))
        .collect()
}

/// All `(α, β, Π_U c^{ν(U)}_{α(U),β(U)})` with `|α| = k`, nonzero.
pub fn multi_lr_splits(nu: &MultiPartition, k: usize) -> Vec<(MultiPartition, MultiPartition, u64)> {
    let m = nu.num_irreducibles();
    let mut out = Vec::new();
    for sizes in compositions(k, m) {
        if sizes.iter().zip(nu.entries()).any(|(&s, p)| s > p.size()) {
            continue;
        }
        let per_entry: Vec<Vec<((Partition, Partition), u64)>> = sizes
            .iter()
            .zip(nu.entries())
            .map(|(&s, p)| lr_splits(p, s).into_iter().map(|(a, b, c)| ((a, b), c)).collect())
            .collect();
        for (pairs, c) in cartesian(&per_entry) {
            let (alpha, beta): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
            out.push((MultiPartition::new(alpha), MultiPartition::new(beta), c));
        }
    }
    out
}

fn cartesian<T: Clone>(choices: &[Vec<(T, u64)>]) -> Vec<(Vec<T>, u64)> {
    let mut acc: Vec<(Vec<T>, u64)> = vec![(Vec::new(), 1)];
    for options in choices {
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for (prefix, c) in &acc {
            for (item, d) in options {
                let mut v = prefix.clone();
                v.push(item.clone());
                next.push((v, c * d));
            }
        }
        acc = next;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn small_examples() {
        assert_eq!(lr_coefficient(&p(&[2, 1]), &Partition::empty(), &p(&[2, 1])), 1);
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[2])), 1);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 2, 1])), 2);
        assert_eq!(lr_coefficient(&p(&[2]), &p(&[2]), &p(&[2, 1, 1])), 0);
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[3])), 0);
    }

    #[test]
    fn pieri_agrees_with_enumeration() {
        for total in 0..=8 {
            for nu in Partition::all(total) {
                for k in 0..=total {
                    for lambda in Partition::all(total - k) {
                        for mu in [Partition::row(k), Partition::column(k)] {
                            let fast = pieri(&lambda, &mu, &nu).unwrap();
                            let slow = lr_coefficient_by_tableaux(&lambda, &mu, &nu);
                            assert_eq!(fast, slow, "{lambda} {mu} {nu}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn symmetric_in_factors() {
        for total in 0..=8 {
            for nu in Partition::all(total) {
                for k in 0..=total {
                    for lambda in Partition::all(k) {
                        for mu in Partition::all(total - k) {
                            assert_eq!(lr_coefficient(&lambda, &mu, &nu), lr_coefficient(&mu, &lambda, &nu));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dimension_count() {
        // Σ_ν c f^ν = C(|λ|+|μ|, |λ|) f^λ f^μ
        for total in 0..=6 {
            for k in 0..=total {
                for lambda in Partition::all(k) {
                    for mu in Partition::all(total - k) {
                        let lhs: u128 = lr_product(&lambda, &mu)
                            .iter()
                            .map(|(nu, c)| *c as u128 * nu.standard_tableaux())
                            .sum();
                        let rhs =
                            crate::partition::binomial(total, k) * lambda.standard_tableaux() * mu.standard_tableaux();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn disjoint_components_multiply_componentwise() {
        let a = MultiPartition::single(2, 1, p(&[1]));
        let b = MultiPartition::single(2, 0, p(&[1]));
        let prod = multi_lr_product(&a, &b);
        assert_eq!(prod, vec![(MultiPartition::new(vec![p(&[1]), p(&[1])]), 1)]);
    }

    #[test]
    fn multi_splits_invert_products() {
        // c from products equals c from splits, over two irreducibles
        for total in 0..=4 {
            for nu in MultiPartition::all(2, total) {
                for k in 0..=total {
                    for (alpha, beta, c) in multi_lr_splits(&nu, k) {
                        let from_product: u64 = multi_lr_product(&alpha, &beta)
                            .into_iter()
                            .filter(|(x, _)| x == &nu)
                            .map(|(_, c)| c)
                            .sum();
                        assert_eq!(c, from_product);
                    }
                }
            }
        }
    }

    #[test]
    fn splits_match_coefficients() {
        let nu = p(&[3, 2, 1]);
        let splits = lr_splits(&nu, 3);
        let c: u64 = splits
            .iter()
            .filter(|(a, b, _)| a == &p(&[2, 1]) && b == &p(&[2, 1]))
            .map(|s| s.2)
            .sum();
        assert_eq!(c, 2);
    }
}
