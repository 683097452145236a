//! Elements and conjugacy classes of `S_n(G) = G^n ⋊ S_n`.
//!
//! An element `(f; σ)` has components `f: {0..n} -> G` and a permutation `σ`
//! stored as `perm[i] = σ(i)`. Multiplication is
//! `(f; σ)(f'; σ') = (i ↦ f(i) f'(σ⁻¹(i)); σσ')`, so the component of
//! `(f; σ)^r` at `i` is `f(i) f(σ⁻¹ i) ⋯ f(σ^{-(r-1)} i)`. For an `r`-cycle of
//! `σ` through `i` this is the cycle product; its `G`-class and the cycle
//! length together classify the element up to conjugacy.

use std::fmt;

use crate::group::GroupContext;
use crate::partition::{factorial, MultiPartition, Partition};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathElement {
    components: Vec<usize>,
    perm: Vec<usize>,
}

impl WreathElement {
    pub fn new(components: Vec<usize>, perm: Vec<usize>) -> Self {
        assert_eq!(components.len(), perm.len());
        debug_assert!({
            let mut seen = vec![false; perm.len()];
            perm.iter()
                .all(|&p| p < seen.len() && !std::mem::replace(&mut seen[p], true))
        });
        WreathElement { components, perm }
    }

    pub fn identity(ctx: &GroupContext, n: usize) -> Self {
        Self::new(vec![ctx.group().identity(); n], (0..n).collect())
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    fn inverse_perm(&self) -> Vec<usize> {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        inv
    }

    pub fn mul(&self, other: &Self, ctx: &GroupContext) -> Self {
        let g = ctx.group();
        let inv = self.inverse_perm();
        let components = (0..self.degree())
            .map(|i| g.mul(self.components[i], other.components[inv[i]]))
            .collect();
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        WreathElement { components, perm }
    }

    pub fn inverse(&self, ctx: &GroupContext) -> Self {
        let g = ctx.group();
        let components = (0..self.degree())
            .map(|i| g.inv(self.components[self.perm[i]]))
            .collect();
        WreathElement {
            components,
            perm: self.inverse_perm(),
        }
    }

    pub fn pow(&self, exponent: usize, ctx: &GroupContext) -> Self {
        let mut result = Self::identity(ctx, self.degree());
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, ctx);
            }
            base = base.mul(&base, ctx);
            e >>= 1;
        }
        result
    }

    /// `x w x⁻¹`.
    pub fn conjugate_by(&self, x: &Self, ctx: &GroupContext) -> Self {
        x.mul(self, ctx).mul(&x.inverse(ctx), ctx)
    }

    /// Cycle lengths of `σ` paired with the `G`-class of each cycle product.
    pub fn cycles(&self, ctx: &GroupContext) -> Vec<(usize, usize)> {
        let g = ctx.group();
        let inv = self.inverse_perm();
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut product = g.identity();
            let mut i = start;
            let mut len = 0;
            loop {
                seen[i] = true;
                product = g.mul(product, self.components[i]);
                len += 1;
                i = inv[i];
                if i == start {
                    break;
                }
            }
            out.push((len, ctx.classes().class_of(product)));
        }
        out
    }

    pub fn classify(&self, ctx: &GroupContext) -> WreathClassLabel {
        let mut lengths = vec![Vec::new(); ctx.classes().len()];
        for (len, class) in self.cycles(ctx) {
            lengths[class].push(len);
        }
        WreathClassLabel(MultiPartition::new(
            lengths.into_iter().map(Partition::from_unsorted).collect(),
        ))
    }
}

/// A conjugacy class of `S_n(G)`: for each class `c` of `G`, the partition
/// of cycle lengths whose cycle products lie in `c`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WreathClassLabel(MultiPartition);

impl WreathClassLabel {
    pub fn new(cycle_data: Vec<Partition>) -> Self {
        WreathClassLabel(MultiPartition::new(cycle_data))
    }

    pub fn cycle_data(&self) -> &[Partition] {
        self.0.entries()
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }

    /// The identity class `{1: (1^n)}` over `classes` conjugacy classes of `G`.
    pub fn identity(classes: usize, n: usize) -> Self {
        WreathClassLabel(MultiPartition::single(classes, 0, Partition::column(n)))
    }

    /// All class labels of `S_n(G)` in canonical order (identity class of
    /// `G` first, then by [`MultiPartition::all`]).
    pub fn all(ctx: &GroupContext, n: usize) -> Vec<WreathClassLabel> {
        MultiPartition::all(ctx.classes().len(), n)
            .into_iter()
            .map(WreathClassLabel)
            .collect()
    }

    /// `(cycle length, G-class)` for every cycle.
    pub fn cycles(&self) -> Vec<(usize, usize)> {
        self.cycle_data()
            .iter()
            .enumerate()
            .flat_map(|(c, p)| p.parts().iter().map(move |&r| (r, c)))
            .collect()
    }

    /// Centralizer order `Π_{c,r} m_{c,r}! (r |C_G(c)|)^{m_{c,r}}`.
    pub fn centralizer_order(&self, ctx: &GroupContext) -> u128 {
        let g = ctx.order() as u128;
        self.cycle_data()
            .iter()
            .enumerate()
            .map(|(c, p)| {
                let centralizer = g / ctx.classes().size(c) as u128;
                p.multiplicities()
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(r, &m)| factorial(m) * (r as u128 * centralizer).pow(m as u32))
                    .product::<u128>()
            })
            .product()
    }

    /// Class size by the centralizer formula.
    pub fn class_size(&self, ctx: &GroupContext) -> u128 {
        wreath_order(ctx, self.size()) / self.centralizer_order(ctx)
    }

    /// An element of the class: each `r`-cycle of class `c` becomes the cycle
    /// `i → i+1 → … → i+r-1 → i` with the representative of `c` on its
    /// first position and the identity elsewhere.
    pub fn representative(&self, ctx: &GroupContext) -> WreathElement {
        let n = self.size();
        let e = ctx.group().identity();
        let mut components = vec![e; n];
        let mut perm: Vec<usize> = (0..n).collect();
        let mut start = 0;
        for (r, c) in self.cycles() {
            for j in 0..r {
                perm[start + j] = start + (j + 1) % r;
            }
            components[start] = ctx.classes().representative(c);
            start += r;
        }
        WreathElement::new(components, perm)
    }

    /// Class of `w^i` for `w` in this class, by powering the representative.
    pub fn power(&self, i: usize, ctx: &GroupContext) -> WreathClassLabel {
        self.representative(ctx).pow(i, ctx).classify(ctx)
    }
}

impl fmt::Display for WreathClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for WreathClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `|G|^n n!`.
pub fn wreath_order(ctx: &GroupContext, n: usize) -> u128 {
    (ctx.order() as u128).pow(n as u32) * factorial(n)
}

/// Every element of `S_n(G)`, in a fixed order.
pub fn all_elements(ctx: &GroupContext, n: usize) -> impl Iterator<Item = WreathElement> + '_ {
    use itertools::Itertools;
    let m = ctx.order();
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let count = m.pow(n as u32);
    perms.into_iter().flat_map(move |perm| {
        (0..count).map(move |mut code| {
            let components = (0..n)
                .map(|_| {
                    let c = code % m;
                    code /= m;
                    c
                })
                .collect();
            WreathElement::new(components, perm.clone())
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin;
    use std::collections::{BTreeMap, HashSet};

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Conjugacy classes by explicit orbits under conjugation.
    fn brute_force_classes(ctx: &GroupContext, n: usize) -> Vec<HashSet<WreathElement>> {
        let elements: Vec<WreathElement> = all_elements(ctx, n).collect();
        let mut seen = HashSet::new();
        let mut classes = Vec::new();
        for w in &elements {
            if seen.contains(w) {
                continue;
            }
            let orbit: HashSet<WreathElement> = elements.iter().map(|x| w.conjugate_by(x, ctx)).collect();
            seen.extend(orbit.iter().cloned());
            classes.push(orbit);
        }
        classes
    }

    #[test]
    fn group_law() {
        let ctx = builtin("s3").unwrap();
        let elements: Vec<WreathElement> = all_elements(&ctx, 2).collect();
        assert_eq!(elements.len(), 72);
        let e = WreathElement::identity(&ctx, 2);
        for a in elements.iter().step_by(5) {
            assert_eq!(a.mul(&a.inverse(&ctx), &ctx), e);
            for b in elements.iter().step_by(7) {
                for c in elements.iter().step_by(11) {
                    assert_eq!(a.mul(&b.mul(c, &ctx), &ctx), a.mul(b, &ctx).mul(c, &ctx));
                }
            }
        }
    }

    #[test]
    fn classes_match_conjugation_orbits() {
        for (name, n) in [("z2", 2), ("z2", 3), ("z3", 2), ("s3", 2)] {
            let ctx = builtin(name).unwrap();
            let orbits = brute_force_classes(&ctx, n);
            let labels = WreathClassLabel::all(&ctx, n);
            assert_eq!(orbits.len(), labels.len(), "{name} n={n}");
            for orbit in &orbits {
                let mut found: Vec<WreathClassLabel> = orbit.iter().map(|w| w.classify(&ctx)).collect();
                found.dedup();
                assert_eq!(found.len(), 1, "classify is not constant on an orbit");
                let label = &found[0];
                assert_eq!(label.class_size(&ctx), orbit.len() as u128);
                assert_eq!(&label.representative(&ctx).classify(&ctx), label);
            }
        }
    }

    #[test]
    fn z2_examples() {
        let ctx = builtin("z2").unwrap();
        assert_eq!(WreathClassLabel::all(&ctx, 2).len(), 5);
        // {−:(1), +:(1)}
        let label = WreathClassLabel::new(vec![p(&[1]), p(&[1])]);
        assert_eq!(label.class_size(&ctx), 2);
        let id = WreathElement::identity(&ctx, 3);
        assert_eq!(id.classify(&ctx), WreathClassLabel::identity(2, 3));
        let total: u128 = WreathClassLabel::all(&ctx, 3).iter().map(|l| l.class_size(&ctx)).sum();
        assert_eq!(total, 48);
    }

    #[test]
    fn class_power_examples() {
        let ctx = builtin("z2").unwrap();
        let label = WreathClassLabel::new(vec![Partition::empty(), p(&[2])]);
        assert_eq!(label.power(1, &ctx), label);
        assert_eq!(
            label.power(2, &ctx),
            WreathClassLabel::new(vec![Partition::empty(), p(&[1, 1])])
        );
        // an explicit ((a,b), swap) with ab = −
        let w = WreathElement::new(vec![0, 1], vec![1, 0]);
        assert_eq!(w.classify(&ctx), label);
        assert_eq!(w.pow(2, &ctx), WreathElement::new(vec![1, 1], vec![0, 1]));
        // involution case: all cycles of length 1
        for l in WreathClassLabel::all(&ctx, 3) {
            if l.cycles().iter().all(|&(r, _)| r == 1) {
                assert_eq!(l.power(2, &ctx), WreathClassLabel::identity(2, 3));
            }
        }
    }

    #[test]
    fn class_sizes_sum_to_order() {
        for name in ["trivial", "z3", "klein", "s3"] {
            let ctx = builtin(name).unwrap();
            for n in 0..=4 {
                let total: u128 = WreathClassLabel::all(&ctx, n).iter().map(|l| l.class_size(&ctx)).sum();
                assert_eq!(total, wreath_order(&ctx, n), "{name} n={n}");
            }
        }
    }

    #[test]
    fn classify_counts_match_formula() {
        let ctx = builtin("s3").unwrap();
        let mut counts: BTreeMap<WreathClassLabel, u128> = BTreeMap::new();
        for w in all_elements(&ctx, 3) {
            *counts.entry(w.classify(&ctx)).or_default() += 1;
        }
        for (label, count) in counts {
            assert_eq!(label.class_size(&ctx), count);
        }
    }
}
