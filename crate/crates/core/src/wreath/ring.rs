//! The representation ring `R(S_n(G))`.
//!
//! Irreducibles are indexed by multipartitions over `Irr(G)`. `V(λ)` is
//! induced from `Π_U S_{|λ(U)|}(G)` with base representation
//! `U^{⊗|λ(U)|} ⊗ Specht(λ(U))` on each block, so its character at a class is
//! a sum over the ways to hand the cycles of the class out to the blocks:
//!
//! `χ^λ(ℓ) = Σ Π_{c,r} m_{c,r}! / Π_U m^U_{c,r}! · Π_U χ^{λ(U)}(type_U) Π χ_U(c)^{m^U_{c,r}}`.
//!
//! All character values are kept as integer vectors over the power basis of
//! `Z[ζ_N]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::cyclotomic::{Cyclotomic, CyclotomicField};
use crate::error::{Error, Result};
use crate::group::GroupContext;
use crate::lr::{multi_lr_product, multi_lr_splits};
use crate::partition::{compositions, factorial, MultiPartition, Partition};
use crate::symmetric::sn_character;

use super::element::{all_elements, wreath_order, WreathClassLabel};

/// Largest group order for which class sizes are counted element by element.
pub const ENUMERATION_LIMIT: u128 = 100_000;

type Value = Vec<i128>;

/// An integer combination of irreducibles of `S_n(G)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RepRingElement {
    n: usize,
    terms: BTreeMap<MultiPartition, i64>,
}

impl RepRingElement {
    pub fn zero(n: usize) -> Self {
        RepRingElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn irreducible(label: MultiPartition) -> Self {
        let n = label.size();
        RepRingElement {
            n,
            terms: BTreeMap::from([(label, 1)]),
        }
    }

    /// Panics if a label has the wrong size.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (MultiPartition, i64)>) -> Self {
        let mut x = Self::zero(n);
        for (label, c) in terms {
            x.add_term(label, c);
        }
        x
    }

    pub fn add_term(&mut self, label: MultiPartition, c: i64) {
        assert_eq!(label.size(), self.n, "label {label} does not have size {}", self.n);
        let entry = self.terms.entry(label);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                if c != 0 {
                    e.insert(c);
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<MultiPartition, i64> {
        &self.terms
    }

    pub fn coefficient(&self, label: &MultiPartition) -> i64 {
        self.terms.get(label).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// No negative coefficients.
    pub fn is_genuine(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (label, &c) in &other.terms {
            out.add_term(label.clone(), c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.n, self.terms.iter().map(|(l, &c)| (l.clone(), c * k)))
    }
}

impl fmt::Display for RepRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (label, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            let sep = if i > 0 { " " } else { "" };
            let space = if i > 0 { " " } else { "" };
            match c.abs() {
                1 => write!(f, "{sep}{sign}{space}V{label}")?,
                a => write!(f, "{sep}{sign}{space}{a} V{label}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RepRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of `R(S_k(G)) ⊗ R(S_{n-k}(G))`, as coefficients on `V(α) ⊠ V(β)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    pub k: usize,
    pub n: usize,
    pub terms: BTreeMap<(MultiPartition, MultiPartition), i64>,
}

impl TensorElement {
    pub fn coefficient(&self, left: &MultiPartition, right: &MultiPartition) -> i64 {
        self.terms.get(&(left.clone(), right.clone())).copied().unwrap_or(0)
    }
}

/// All irreducible labels of `S_n(G)`, unit irreducible first.
pub fn enumerate_irreps(ctx: &GroupContext, n: usize) -> Vec<MultiPartition> {
    MultiPartition::all(ctx.num_irreducibles(), n)
}

/// `n! Π_U dim(U)^{|λ(U)|} f^{λ(U)} / |λ(U)|!`.
pub fn dimension(ctx: &GroupContext, label: &MultiPartition) -> u128 {
    let mut d = factorial(label.size());
    for (u, p) in label.entries().iter().enumerate() {
        let k = p.size();
        d = d / factorial(k) * p.standard_tableaux() * (ctx.table().dimension(u) as u128).pow(k as u32);
    }
    d
}

/// `n - λ(1)_1`.
pub fn filtration_degree(label: &MultiPartition) -> usize {
    label.size() - label.unit().first()
}

/// Induction from `S_k(G) × S_{n-k}(G)`: `V(λ) ⊠ V(μ) ↦ Σ_ν Π_U c^{ν(U)}_{λ(U),μ(U)} V(ν)`.
pub fn induce(a: &RepRingElement, b: &RepRingElement, n: usize) -> Result<RepRingElement> {
    if a.n + b.n != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: a.n + b.n,
        });
    }
    let mut out = RepRingElement::zero(n);
    for (la, &ca) in &a.terms {
        for (lb, &cb) in &b.terms {
            if la.num_irreducibles() != lb.num_irreducibles() {
                return Err(Error::IndexMismatch {
                    left: la.num_irreducibles(),
                    right: lb.num_irreducibles(),
                });
            }
            for (nu, c) in multi_lr_product(la, lb) {
                out.add_term(nu, ca * cb * c as i64);
            }
        }
    }
    Ok(out)
}

/// Restriction to `S_k(G) × S_{n-k}(G)`.
pub fn restrict(x: &RepRingElement, k: usize) -> Result<TensorElement> {
    if k > x.n {
        return Err(Error::SizeMismatch { expected: x.n, got: k });
    }
    let mut terms: BTreeMap<(MultiPartition, MultiPartition), i64> = BTreeMap::new();
    for (nu, &c) in &x.terms {
        for (alpha, beta, d) in multi_lr_splits(nu, k) {
            *terms.entry((alpha, beta)).or_default() += c * d as i64;
        }
    }
    terms.retain(|_, c| *c != 0);
    Ok(TensorElement { k, n: x.n, terms })
}

/// `χ^λ(ℓ)` for a single label and class.
pub fn irreducible_character(ctx: &GroupContext, label: &MultiPartition, class: &WreathClassLabel) -> Cyclotomic {
    let order = ctx.field_order();
    let base = BaseValues::new(ctx, label.size());
    Cyclotomic::from_int_coefficients(order, &base.character(label, class))
}

/// Powers `χ_U(c)^k` of the base table over `Z[ζ_N]`.
struct BaseValues {
    field: Arc<CyclotomicField>,
    /// `powers[u][c][k]`
    powers: Vec<Vec<Vec<Value>>>,
}

impl BaseValues {
    fn new(ctx: &GroupContext, n: usize) -> Self {
        let field = CyclotomicField::get(ctx.field_order());
        let mut one = vec![0i128; field.degree()];
        one[0] = 1;
        let powers = (0..ctx.num_irreducibles())
            .map(|u| {
                (0..ctx.classes().len())
                    .map(|c| {
                        let v = ctx
                            .table()
                            .value(u, c)
                            .to_int_coefficients()
                            .expect("validated characters have integral coefficients");
                        let mut out = vec![one.clone()];
                        for k in 0..n {
                            out.push(field.mul_int(&out[k], &v));
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        BaseValues { field, powers }
    }

    fn character(&self, label: &MultiPartition, class: &WreathClassLabel) -> Value {
        // (r, c, multiplicity) for each distinct cycle type of the class
        let mut types = Vec::new();
        for (c, p) in class.cycle_data().iter().enumerate() {
            for (r, &m) in p.multiplicities().iter().enumerate().skip(1) {
                if m > 0 {
                    types.push((r, c, m));
                }
            }
        }
        let remaining: Vec<usize> = label.entries().iter().map(Partition::size).collect();
        let mut assignment = vec![Vec::new(); remaining.len()];
        let mut out = vec![0i128; self.field.degree()];
        self.distribute(label, &types, 0, remaining, &mut assignment, 1, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn distribute(
        &self,
        label: &MultiPartition,
        types: &[(usize, usize, usize)],
        t: usize,
        remaining: Vec<usize>,
        assignment: &mut Vec<Vec<(usize, usize, usize)>>,
        weight: i128,
        out: &mut Value,
    ) {
        let Some(&(r, c, m)) = types.get(t) else {
            debug_assert!(remaining.iter().all(|&x| x == 0));
            self.leaf(label, assignment, weight, out);
            return;
        };
        for split in compositions(m, remaining.len()) {
            if split.iter().zip(&remaining).any(|(&k, &left)| k * r > left) {
                continue;
            }
            let multinomial = factorial(m) / split.iter().map(|&k| factorial(k)).product::<u128>();
            let next: Vec<usize> = remaining.iter().zip(&split).map(|(&left, &k)| left - k * r).collect();
            for (u, &k) in split.iter().enumerate() {
                if k > 0 {
                    assignment[u].push((r, c, k));
                }
            }
            self.distribute(label, types, t + 1, next, assignment, weight * multinomial as i128, out);
            for (u, &k) in split.iter().enumerate() {
                if k > 0 {
                    assignment[u].pop();
                }
            }
        }
    }

    fn leaf(&self, label: &MultiPartition, assignment: &[Vec<(usize, usize, usize)>], weight: i128, out: &mut Value) {
        let mut value = vec![0i128; self.field.degree()];
        value[0] = weight;
        for (u, cycles) in assignment.iter().enumerate() {
            let lambda = label.get(u);
            let mut parts: Vec<usize> = cycles.iter().flat_map(|&(r, _, k)| std::iter::repeat_n(r, k)).collect();
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let sn = sn_character(lambda, &Partition::from_unsorted(parts)) as i128;
            if sn == 0 {
                return;
            }
            for x in value.iter_mut() {
                *x *= sn;
            }
            for &(_, c, k) in cycles {
                value = self.field.mul_int(&value, &self.powers[u][c][k]);
            }
        }
        for (o, v) in out.iter_mut().zip(value) {
            *o += v;
        }
    }
}

/// Character table and ring operations of `S_n(G)` for a fixed `G` and `n`.
pub struct RepRing {
    ctx: Arc<GroupContext>,
    n: usize,
    field: Arc<CyclotomicField>,
    order: u128,
    irreps: Vec<MultiPartition>,
    irrep_index: HashMap<MultiPartition, usize>,
    classes: Vec<WreathClassLabel>,
    class_index: HashMap<WreathClassLabel, usize>,
    class_sizes: Vec<u128>,
    /// `table[λ][ℓ]`
    table: Vec<Vec<Value>>,
    /// `weighted[λ][ℓ] = |ℓ| conj(χ^λ(ℓ))`
    weighted: Vec<Vec<Value>>,
    power_maps: RwLock<HashMap<usize, Arc<Vec<usize>>>>,
}

impl RepRing {
    pub fn new(ctx: Arc<GroupContext>, n: usize) -> Result<Self> {
        let field = CyclotomicField::get(ctx.field_order());
        let order = wreath_order(&ctx, n);
        let irreps = enumerate_irreps(&ctx, n);
        let classes = WreathClassLabel::all(&ctx, n);
        let class_index: HashMap<_, _> = classes.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let mut class_sizes: Vec<u128> = classes.iter().map(|l| l.class_size(&ctx)).collect();
        if order <= ENUMERATION_LIMIT {
            let mut counted = vec![0u128; classes.len()];
            for w in all_elements(&ctx, n) {
                counted[class_index[&w.classify(&ctx)]] += 1;
            }
            if counted != class_sizes {
                return Err(Error::InternalInconsistency(format!(
                    "class sizes of {}≀S{n} disagree with element counts",
                    ctx.name()
                )));
            }
            class_sizes = counted;
        }
        let base = BaseValues::new(&ctx, n);
        let table: Vec<Vec<Value>> = irreps
            .iter()
            .map(|lambda| classes.iter().map(|l| base.character(lambda, l)).collect())
            .collect();
        let weighted = table
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&class_sizes)
                    .map(|(v, &s)| field.conj_int(v).into_iter().map(|x| x * s as i128).collect())
                    .collect()
            })
            .collect();
        let irrep_index = irreps.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        Ok(RepRing {
            ctx,
            n,
            field,
            order,
            irreps,
            irrep_index,
            classes,
            class_index,
            class_sizes,
            table,
            weighted,
            power_maps: RwLock::default(),
        })
    }

    pub fn context(&self) -> &Arc<GroupContext> {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `|G|^n n!`.
    pub fn order(&self) -> u128 {
        self.order
    }

    /// Number of irreducibles.
    pub fn rank(&self) -> usize {
        self.irreps.len()
    }

    pub fn irreps(&self) -> &[MultiPartition] {
        &self.irreps
    }

    pub fn irrep_index(&self, label: &MultiPartition) -> Option<usize> {
        self.irrep_index.get(label).copied()
    }

    pub fn classes(&self) -> &[WreathClassLabel] {
        &self.classes
    }

    pub fn class_index(&self, label: &WreathClassLabel) -> Option<usize> {
        self.class_index.get(label).copied()
    }

    pub fn class_sizes(&self) -> &[u128] {
        &self.class_sizes
    }

    pub fn unit(&self) -> RepRingElement {
        RepRingElement::irreducible(MultiPartition::trivial(self.ctx.num_irreducibles(), self.n))
    }

    pub fn dimension(&self, label: &MultiPartition) -> u128 {
        dimension(&self.ctx, label)
    }

    /// `χ^λ` at class index `c`.
    pub fn character_value(&self, irrep: usize, class: usize) -> Cyclotomic {
        Cyclotomic::from_int_coefficients(self.ctx.field_order(), &self.table[irrep][class])
    }

    pub fn character_row(&self, irrep: usize) -> &[Vec<i128>] {
        &self.table[irrep]
    }

    /// Coordinates over the irreducible basis.
    pub fn to_vector(&self, x: &RepRingElement) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        for (label, &c) in x.terms() {
            v[self.irrep_index[label]] = c;
        }
        v
    }

    pub fn from_vector<T: Copy + Into<i128>>(&self, v: &[T]) -> RepRingElement {
        RepRingElement::from_terms(
            self.n,
            v.iter().enumerate().map(|(i, &c)| {
                let c: i128 = c.into();
                (self.irreps[i].clone(), c as i64)
            }),
        )
    }

    fn check_element(&self, x: &RepRingElement) -> Result<()> {
        if x.n != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                got: x.n,
            });
        }
        for label in x.terms.keys() {
            if label.num_irreducibles() != self.ctx.num_irreducibles() {
                return Err(Error::IndexMismatch {
                    left: label.num_irreducibles(),
                    right: self.ctx.num_irreducibles(),
                });
            }
        }
        Ok(())
    }

    /// Character values of `x`, one per class.
    pub fn character(&self, x: &RepRingElement) -> Result<Vec<Value>> {
        self.check_element(x)?;
        let mut out = vec![vec![0i128; self.field.degree()]; self.classes.len()];
        for (label, &c) in x.terms() {
            let row = &self.table[self.irrep_index[label]];
            for (o, v) in out.iter_mut().zip(row) {
                for (a, b) in o.iter_mut().zip(v) {
                    *a += c as i128 * b;
                }
            }
        }
        Ok(out)
    }

    /// Multiplicities of the irreducibles in a class function.
    pub fn decompose(&self, values: &[Value]) -> Result<RepRingElement> {
        let mut out = RepRingElement::zero(self.n);
        for (i, weights) in self.weighted.iter().enumerate() {
            let mut s = vec![0i128; self.field.degree()];
            for (f, w) in values.iter().zip(weights) {
                self.field.mul_add_int(f, w, &mut s);
            }
            if s[1..].iter().any(|&x| x != 0) || s[0] % self.order as i128 != 0 {
                return Err(Error::InternalInconsistency(format!(
                    "multiplicity of V{} is not an integer",
                    self.irreps[i]
                )));
            }
            out.add_term(self.irreps[i].clone(), (s[0] / self.order as i128) as i64);
        }
        Ok(out)
    }

    /// `a ⊗ b` by character inner products.
    pub fn tensor(&self, a: &RepRingElement, b: &RepRingElement) -> Result<RepRingElement> {
        let (ca, cb) = (self.character(a)?, self.character(b)?);
        let product: Vec<Value> = ca.iter().zip(&cb).map(|(x, y)| self.field.mul_int(x, y)).collect();
        self.decompose(&product)
    }

    /// Row `i` is the coordinate vector of `V(irreps[i]) ⊗ g`.
    pub fn multiplication_matrix(&self, g: &RepRingElement) -> Result<Vec<Vec<i64>>> {
        let cg = self.character(g)?;
        (0..self.rank())
            .map(|i| {
                let product: Vec<Value> = self.table[i]
                    .iter()
                    .zip(&cg)
                    .map(|(x, y)| self.field.mul_int(x, y))
                    .collect();
                Ok(self.to_vector(&self.decompose(&product)?))
            })
            .collect()
    }

    /// `c ↦ class of w^i` for `w` in class `c`.
    pub fn power_map(&self, i: usize) -> Arc<Vec<usize>> {
        if let Some(map) = self.power_maps.read().unwrap().get(&i) {
            return map.clone();
        }
        let map: Arc<Vec<usize>> = Arc::new(
            self.classes
                .iter()
                .map(|l| self.class_index[&l.power(i, &self.ctx)])
                .collect(),
        );
        self.power_maps.write().unwrap().entry(i).or_insert(map).clone()
    }

    pub fn class_power(&self, class: usize, i: usize) -> usize {
        self.power_map(i)[class]
    }

    /// `Λ^k x` for genuine `x`, by Newton's identity
    /// `k e_k = Σ_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i` with `p_i(w) = χ_x(w^i)`.
    pub fn exterior_power(&self, x: &RepRingElement, k: usize) -> Result<RepRingElement> {
        self.check_element(x)?;
        if !x.is_genuine() {
            return Err(Error::RequiresGenuineElement);
        }
        if k == 0 {
            return Ok(self.unit());
        }
        let dim: u128 = x.terms().iter().map(|(l, &c)| c as u128 * self.dimension(l)).sum();
        if k as u128 > dim {
            return Ok(RepRingElement::zero(self.n));
        }
        let chi = self.character(x)?;
        let deg = self.field.degree();
        let power_sums: Vec<Vec<Value>> = (1..=k)
            .map(|i| {
                let map = self.power_map(i);
                map.iter().map(|&c| chi[c].clone()).collect()
            })
            .collect();
        let mut one = vec![0i128; deg];
        one[0] = 1;
        let mut e: Vec<Vec<Value>> = vec![vec![one; self.classes.len()]];
        for j in 1..=k {
            let mut next = Vec::with_capacity(self.classes.len());
            for c in 0..self.classes.len() {
                let mut s = vec![0i128; deg];
                for i in 1..=j {
                    let term = self.field.mul_int(&e[j - i][c], &power_sums[i - 1][c]);
                    let sign = if i % 2 == 1 { 1 } else { -1 };
                    for (a, b) in s.iter_mut().zip(term) {
                        *a += sign * b;
                    }
                }
                if s.iter().any(|&a| a % j as i128 != 0) {
                    return Err(Error::InternalInconsistency(format!(
                        "Newton's identity is not integral at degree {j}"
                    )));
                }
                next.push(s.into_iter().map(|a| a / j as i128).collect());
            }
            e.push(next);
        }
        let result = self.decompose(&e[k])?;
        if !result.is_genuine() {
            return Err(Error::InternalInconsistency(format!(
                "Λ^{k} has a negative multiplicity"
            )));
        }
        Ok(result)
    }

    /// Exact row and column orthogonality, and `Σ dim² = |W|`.
    pub fn verify_table(&self) -> Result<()> {
        let deg = self.field.degree();
        let order = self.order as i128;
        for (i, row) in self.table.iter().enumerate() {
            for (j, weights) in self.weighted.iter().enumerate() {
                let mut s = vec![0i128; deg];
                for (a, b) in row.iter().zip(weights) {
                    self.field.mul_add_int(a, b, &mut s);
                }
                let expect = if i == j { order } else { 0 };
                if s[0] != expect || s[1..].iter().any(|&x| x != 0) {
                    return Err(Error::InternalInconsistency(format!(
                        "rows V{} and V{} are not orthonormal",
                        self.irreps[i], self.irreps[j]
                    )));
                }
            }
        }
        for a in 0..self.classes.len() {
            for b in 0..self.classes.len() {
                let mut s = vec![0i128; deg];
                for row in &self.table {
                    self.field.mul_add_int(&row[a], &self.field.conj_int(&row[b]), &mut s);
                }
                let expect = if a == b {
                    (self.order / self.class_sizes[a]) as i128
                } else {
                    0
                };
                if s[0] != expect || s[1..].iter().any(|&x| x != 0) {
                    return Err(Error::InternalInconsistency(format!(
                        "columns {} and {} are not orthogonal",
                        self.classes[a], self.classes[b]
                    )));
                }
            }
        }
        let squares: u128 = self.irreps.iter().map(|l| self.dimension(l).pow(2)).sum();
        if squares != self.order {
            return Err(Error::InternalInconsistency(format!(
                "sum of squared dimensions is {squares}, expected {}",
                self.order
            )));
        }
        let identity = self.class_index[&WreathClassLabel::identity(self.ctx.classes().len(), self.n)];
        for (i, l) in self.irreps.iter().enumerate() {
            let at_identity = &self.table[i][identity];
            if at_identity[0] != self.dimension(l) as i128 || at_identity[1..].iter().any(|&x| x != 0) {
                return Err(Error::InternalInconsistency(format!(
                    "degree of V{l} disagrees with its dimension"
                )));
            }
        }
        Ok(())
    }
}
