//! The graded ring `⊗_U Λ` in the Schur basis.
//!
//! A basis label is a multipartition `λ`, standing for `Π_U s_{λ(U)}` with
//! `s_{λ(U)}` in the copy of `Λ` attached to irreducible `U`. The product is
//! the induction product, whose structure constants are products of
//! Littlewood–Richardson coefficients taken entry by entry.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lr::multi_lr_product;
use crate::partition::{compositions, MultiPartition, Partition};

/// Integer combination of Schur-basis labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedRingElement {
    m: usize,
    terms: BTreeMap<MultiPartition, i64>,
}

impl GradedRingElement {
    pub fn zero(m: usize) -> Self {
        GradedRingElement {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(m: usize) -> Self {
        Self::basis(MultiPartition::empty(m))
    }

    pub fn basis(label: MultiPartition) -> Self {
        GradedRingElement {
            m: label.num_irreducibles(),
            terms: BTreeMap::from([(label, 1)]),
        }
    }

    pub fn num_irreducibles(&self) -> usize {
        self.m
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

    pub fn add_term(&mut self, label: MultiPartition, c: i64) {
        assert_eq!(label.num_irreducibles(), self.m);
        let total = self.coefficient(&label) + c;
        if total == 0 {
            self.terms.remove(&label);
        } else {
            self.terms.insert(label, total);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check(self, other)?;
        let mut out = self.clone();
        for (l, &c) in &other.terms {
            out.add_term(l.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero(self.m);
        for (l, &c) in &self.terms {
            out.add_term(l.clone(), c * k);
        }
        out
    }

    /// The degree when all labels share one size.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut sizes = self.terms.keys().map(MultiPartition::size);
        let first = sizes.next()?;
        sizes.all(|s| s == first).then_some(first)
    }
}

impl fmt::Display for GradedRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (label, &c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            if c.abs() != 1 {
                write!(f, "{}*", c.abs())?;
            }
            write!(f, "s{label}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GradedRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn check(a: &GradedRingElement, b: &GradedRingElement) -> Result<()> {
    if a.m != b.m {
        return Err(Error::IndexMismatch { left: a.m, right: b.m });
    }
    Ok(())
}

/// `[V(λ)]·[V(μ)] = Σ_ν Π_U c^{ν(U)}_{λ(U),μ(U)} [V(ν)]`, extended bilinearly.
pub fn induction_product(a: &GradedRingElement, b: &GradedRingElement) -> Result<GradedRingElement> {
    check(a, b)?;
    let mut out = GradedRingElement::zero(a.m);
    for (la, &ca) in &a.terms {
        for (lb, &cb) in &b.terms {
            for (nu, c) in multi_lr_product(la, lb) {
                out.add_term(nu, ca * cb * c as i64);
            }
        }
    }
    Ok(out)
}

/// `e_k = s_{(1^k)}` or `h_k = s_{(k)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EhFlavor {
    E,
    H,
}

impl EhFlavor {
    pub fn shape(self, k: usize) -> Partition {
        match self {
            EhFlavor::E => Partition::column(k),
            EhFlavor::H => Partition::row(k),
        }
    }

    /// All `2^m` assignments, `E` everywhere first.
    pub fn all_assignments(m: usize) -> Vec<Vec<EhFlavor>> {
        (0..1usize << m)
            .map(|mask| {
                (0..m)
                    .map(|u| if mask >> u & 1 == 0 { EhFlavor::E } else { EhFlavor::H })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for EhFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EhFlavor::E => "e",
            EhFlavor::H => "h",
        })
    }
}

impl FromStr for EhFlavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "e" => Ok(EhFlavor::E),
            "h" => Ok(EhFlavor::H),
            other => Err(Error::Parse(format!("expected e or h, got {other:?}"))),
        }
    }
}

/// A product of generators `e_k^{(U)}` / `h_k^{(U)}`, factors sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementaryMonomial {
    factors: Vec<(usize, usize, EhFlavor)>,
}

impl ElementaryMonomial {
    /// Panics on a zero degree.
    pub fn new(mut factors: Vec<(usize, usize, EhFlavor)>) -> Self {
        assert!(factors.iter().all(|&(_, k, _)| k > 0), "generator degrees are positive");
        factors.sort();
        ElementaryMonomial { factors }
    }

    /// The monomial `Π_U Π_i g^{(U)}_{μ(U)_i}` attached to a label.
    pub fn from_label(label: &MultiPartition, flavors: &[EhFlavor]) -> Self {
        Self::new(
            label
                .entries()
                .iter()
                .enumerate()
                .flat_map(|(u, p)| p.parts().iter().map(move |&k| (u, k, flavors[u])))
                .collect(),
        )
    }

    pub fn factors(&self) -> &[(usize, usize, EhFlavor)] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|f| f.1).sum()
    }

    /// Schur expansion over `m` irreducibles.
    pub fn to_element(&self, m: usize) -> GradedRingElement {
        self.factors.iter().fold(GradedRingElement::one(m), |acc, &(u, k, fl)| {
            let g = GradedRingElement::basis(MultiPartition::single(m, u, fl.shape(k)));
            induction_product(&acc, &g).expect("same index set")
        })
    }
}

impl fmt::Display for ElementaryMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (u, k, fl)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "{fl}{k}")?;
            if *u > 0 {
                write!(f, "[{u}]")?;
            }
        }
        Ok(())
    }
}

/// `s_λ` as a polynomial in `e_1, e_2, …` (dual Jacobi–Trudi,
/// `det[e_{λ'_i - i + j}]`), monomials on irreducible 0.
pub fn schur_to_elementary(lambda: &Partition) -> Vec<(ElementaryMonomial, i64)> {
    jacobi_trudi(&lambda.conjugate(), EhFlavor::E)
}

/// `s_λ` as a polynomial in `h_1, h_2, …` (`det[h_{λ_i - i + j}]`).
pub fn schur_to_homogeneous(lambda: &Partition) -> Vec<(ElementaryMonomial, i64)> {
    jacobi_trudi(lambda, EhFlavor::H)
}

fn jacobi_trudi(shape: &Partition, flavor: EhFlavor) -> Vec<(ElementaryMonomial, i64)> {
    let l = shape.len();
    let mut acc: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    let mut used = vec![false; l];
    let mut chosen = Vec::with_capacity(l);
    leibniz(shape, 0, &mut used, &mut chosen, 1, &mut acc);
    acc.into_iter()
        .filter(|&(_, c)| c != 0)
        .map(|(degrees, c)| {
            let factors = degrees.into_iter().map(|k| (0, k, flavor)).collect();
            (ElementaryMonomial::new(factors), c)
        })
        .collect()
}

/// Leibniz expansion of `det[g_{shape_i - i + j}]` skipping vanishing entries.
fn leibniz(
    shape: &Partition,
    row: usize,
    used: &mut [bool],
    chosen: &mut Vec<usize>,
    sign: i64,
    acc: &mut BTreeMap<Vec<usize>, i64>,
) {
    if row == used.len() {
        let mut degrees: Vec<usize> = chosen.iter().copied().filter(|&k| k > 0).collect();
        degrees.sort_unstable();
        *acc.entry(degrees).or_default() += sign;
        return;
    }
    for col in 0..used.len() {
        if used[col] {
            continue;
        }
        let index = shape.part(row) as isize - row as isize + col as isize;
        if index < 0 {
            continue;
        }
        // columns already used to the right of col flip the sign once each
        let inversions = used[col + 1..].iter().filter(|&&u| u).count();
        let s = if inversions % 2 == 0 { sign } else { -sign };
        used[col] = true;
        chosen.push(index as usize);
        leibniz(shape, row + 1, used, chosen, s, acc);
        chosen.pop();
        used[col] = false;
    }
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn bareiss_determinant(matrix: &[Vec<i64>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    &a[n - 1][n - 1] * sign
}

/// Transition data for one size vector `(|μ(U)|)_U` inside one degree.
#[derive(Clone, Debug, Serialize)]
pub struct BlockCheck {
    pub sizes: Vec<usize>,
    pub dimension: usize,
    pub determinant: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeCheck {
    pub degree: usize,
    pub dimension: usize,
    /// Determinant of the full degree-`d` transition matrix.
    pub determinant: String,
    pub unimodular: bool,
    pub blocks: Vec<BlockCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedReport {
    pub num_irreducibles: usize,
    pub flavors: Vec<EhFlavor>,
    pub degrees: Vec<DegreeCheck>,
}

impl GradedReport {
    pub fn passes(&self) -> bool {
        self.degrees.iter().all(|d| d.unimodular)
    }
}

/// Transition matrix of degree `d`: row `μ` is the Schur expansion of the
/// monomial attached to `μ`, columns in the same label order.
pub fn transition_matrix(m: usize, flavors: &[EhFlavor], d: usize) -> (Vec<MultiPartition>, Vec<Vec<i64>>) {
    let labels = MultiPartition::all(m, d);
    let index: BTreeMap<&MultiPartition, usize> = labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let rows = labels
        .iter()
        .map(|mu| {
            let mut row = vec![0; labels.len()];
            for (nu, &c) in ElementaryMonomial::from_label(mu, flavors).to_element(m).terms() {
                row[index[nu]] = c;
            }
            row
        })
        .collect();
    (labels, rows)
}

/// For each degree `1..=d_max`, whether the monomials in the chosen
/// generators form a `Z`-basis of the degree-`d` component. The matrix is
/// block diagonal in the size vector; any entry outside the blocks makes the
/// degree fail.
pub fn graded_generation_check(m: usize, flavors: &[EhFlavor], d_max: usize) -> Result<GradedReport> {
    if flavors.len() != m {
        return Err(Error::IndexMismatch {
            left: flavors.len(),
            right: m,
        });
    }
    let mut degrees = Vec::new();
    for d in 1..=d_max {
        let (labels, matrix) = transition_matrix(m, flavors, d);
        let sizes_of = |l: &MultiPartition| l.entries().iter().map(Partition::size).collect::<Vec<_>>();
        let mut block_diagonal = true;
        for (i, row) in matrix.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c != 0 && sizes_of(&labels[i]) != sizes_of(&labels[j]) {
                    block_diagonal = false;
                }
            }
        }
        let mut blocks = Vec::new();
        let mut total = BigInt::one();
        for sizes in compositions(d, m) {
            let members: Vec<usize> = (0..labels.len()).filter(|&i| sizes_of(&labels[i]) == sizes).collect();
            let sub: Vec<Vec<i64>> = members
                .iter()
                .map(|&i| members.iter().map(|&j| matrix[i][j]).collect())
                .collect();
            let det = bareiss_determinant(&sub);
            total *= &det;
            blocks.push(BlockCheck {
                sizes,
                dimension: members.len(),
                determinant: det.to_string(),
            });
        }
        if !block_diagonal {
            total = bareiss_determinant(&matrix);
        }
        let unimodular = total == BigInt::one() || total == -BigInt::one();
        degrees.push(DegreeCheck {
            degree: d,
            dimension: labels.len(),
            determinant: total.to_string(),
            unimodular,
            blocks,
        });
    }
    Ok(GradedReport {
        num_irreducibles: m,
        flavors: flavors.to_vec(),
        degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn s(entries: &[&[usize]]) -> GradedRingElement {
        GradedRingElement::basis(MultiPartition::new(entries.iter().map(|e| p(e)).collect()))
    }

    #[test]
    fn product_examples() {
        let one = s(&[&[1]]);
        let sq = induction_product(&one, &one).unwrap();
        assert_eq!(sq, s(&[&[2]]).add(&s(&[&[1, 1]])).unwrap());
        let x = s(&[&[2, 1], &[1]]);
        assert_eq!(induction_product(&x, &GradedRingElement::one(2)).unwrap(), x);
        let prod = induction_product(&s(&[&[], &[1]]), &s(&[&[1], &[]])).unwrap();
        assert_eq!(prod, s(&[&[1], &[1]]));
        assert!(matches!(
            induction_product(&s(&[&[1]]), &s(&[&[1], &[]])),
            Err(Error::IndexMismatch { .. })
        ));
    }

    #[test]
    fn commutative_and_associative() {
        for m in 1..=2 {
            let mut basis = Vec::new();
            for d in 0..=4 {
                basis.extend(MultiPartition::all(m, d).into_iter().map(GradedRingElement::basis));
            }
            let deg = |x: &GradedRingElement| x.homogeneous_degree().unwrap();
            for a in &basis {
                for b in &basis {
                    if deg(a) + deg(b) > 6 {
                        continue;
                    }
                    let ab = induction_product(a, b).unwrap();
                    assert_eq!(ab, induction_product(b, a).unwrap());
                    for c in &basis {
                        if deg(a) + deg(b) + deg(c) > 6 {
                            continue;
                        }
                        let left = induction_product(&ab, c).unwrap();
                        let right = induction_product(a, &induction_product(b, c).unwrap()).unwrap();
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_trudi_examples() {
        let e = |ks: &[usize]| ElementaryMonomial::new(ks.iter().map(|&k| (0, k, EhFlavor::E)).collect());
        assert_eq!(schur_to_elementary(&p(&[1])), vec![(e(&[1]), 1)]);
        assert_eq!(schur_to_elementary(&p(&[1, 1, 1])), vec![(e(&[3]), 1)]);
        let mut got = schur_to_elementary(&p(&[2, 1]));
        got.sort();
        let mut expect = vec![(e(&[1, 2]), 1), (e(&[3]), -1)];
        expect.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn round_trip() {
        for n in 0..=8 {
            for lambda in Partition::all(n) {
                let target = GradedRingElement::basis(MultiPartition::new(vec![lambda.clone()]));
                for expansion in [schur_to_elementary(&lambda), schur_to_homogeneous(&lambda)] {
                    let mut sum = GradedRingElement::zero(1);
                    for (mono, c) in expansion {
                        sum = sum.add(&mono.to_element(1).scale(c)).unwrap();
                    }
                    assert_eq!(sum, target, "{lambda}");
                }
            }
        }
    }

    #[test]
    fn bareiss_examples() {
        assert_eq!(bareiss_determinant(&[vec![2, 1], vec![1, 1]]), BigInt::one());
        assert_eq!(bareiss_determinant(&[vec![0, 1], vec![1, 0]]), -BigInt::one());
        assert_eq!(
            bareiss_determinant(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]),
            BigInt::from(6)
        );
        assert_eq!(bareiss_determinant(&[vec![1, 2], vec![2, 4]]), BigInt::zero());
    }

    #[test]
    fn degree_one_is_identity() {
        for m in 1..=3 {
            for flavors in EhFlavor::all_assignments(m) {
                let (_, matrix) = transition_matrix(m, &flavors, 1);
                for (i, row) in matrix.iter().enumerate() {
                    for (j, &x) in row.iter().enumerate() {
                        assert_eq!(x, i64::from(i == j));
                    }
                }
            }
        }
    }

    #[test]
    fn all_flavors_unimodular_small() {
        for m in 1..=3 {
            for flavors in EhFlavor::all_assignments(m) {
                let report = graded_generation_check(m, &flavors, 4).unwrap();
                assert!(report.passes(), "{flavors:?}");
            }
        }
    }
}
