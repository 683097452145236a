//! Integer lattices in Hermite normal form and subring closure.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wreath::{RepRing, RepRingElement};

/// Row-style Hermite normal form of an integer row lattice of rank `r`:
/// pivot columns strictly increase, pivots are positive, and entries above a
/// pivot lie in `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    rank: usize,
    rows: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    pub fn empty(rank: usize) -> Self {
        LatticeBasis { rank, rows: Vec::new() }
    }

    /// Ambient dimension.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Dimension of the span.
    pub fn span_rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("HNF rows are nonzero"))
            .collect()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rows.len() == self.rank
    }

    /// Index in `Z^r`: product of the pivots when full rank, `None` (infinite)
    /// otherwise.
    pub fn index(&self) -> Option<BigInt> {
        self.is_full_rank()
            .then(|| self.rows.iter().zip(self.pivots()).map(|(r, p)| r[p].clone()).product())
    }

    pub fn is_identity(&self) -> bool {
        self.is_full_rank()
            && self.rows.iter().enumerate().all(|(i, r)| {
                r.iter()
                    .enumerate()
                    .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
            })
    }

    /// Membership by back-substitution along the pivots.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.rank);
        let mut rest = v.to_vec();
        for (row, p) in self.rows.iter().zip(self.pivots()) {
            if rest[..p].iter().any(|x| !x.is_zero()) {
                return false;
            }
            let (q, r) = rest[p].div_rem(&row[p]);
            if !r.is_zero() {
                return false;
            }
            if !q.is_zero() {
                for (a, b) in rest.iter_mut().zip(row) {
                    *a -= &q * b;
                }
            }
        }
        rest.iter().all(Zero::is_zero)
    }
}

/// Canonical HNF of the row span of `rows`, each of length `rank`.
pub fn hnf(rank: usize, rows: impl IntoIterator<Item = Vec<BigInt>>) -> LatticeBasis {
    let mut m: Vec<Vec<BigInt>> = rows
        .into_iter()
        .inspect(|r| assert_eq!(r.len(), rank, "row length differs from lattice rank"))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for col in 0..rank {
        // gcd-combine every remaining row with a nonzero entry in this column
        let mut pivot: Option<Vec<BigInt>> = None;
        let mut rest = Vec::with_capacity(m.len());
        for row in m.drain(..) {
            if row[col].is_zero() {
                rest.push(row);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(row),
                Some(p) => {
                    let (a, b) = (&p[col], &row[col]);
                    let e = a.extended_gcd(b);
                    let (ga, gb) = (a / &e.gcd, b / &e.gcd);
                    let combined: Vec<BigInt> = p.iter().zip(&row).map(|(x, y)| &e.x * x + &e.y * y).collect();
                    let eliminated: Vec<BigInt> = p.iter().zip(&row).map(|(x, y)| &gb * x - &ga * y).collect();
                    if eliminated.iter().any(|x| !x.is_zero()) {
                        rest.push(eliminated);
                    }
                    pivot = Some(combined);
                }
            }
        }
        m = rest;
        if let Some(mut p) = pivot {
            if p[col].is_negative() {
                p.iter_mut().for_each(|x| *x = -&*x);
            }
            out.push(p);
        }
    }
    // reduce entries above each pivot
    for i in 0..out.len() {
        let col = out[i].iter().position(|x| !x.is_zero()).unwrap();
        for j in 0..i {
            let q = out[j][col].div_floor(&out[i][col]);
            if !q.is_zero() {
                let pivot_row = out[i].clone();
                for (a, b) in out[j].iter_mut().zip(&pivot_row) {
                    *a -= &q * b;
                }
            }
        }
    }
    LatticeBasis { rank, rows: out }
}

/// A ring with a finite `Z`-basis.
pub trait RingStructure {
    fn rank(&self) -> usize;
    fn unit(&self) -> Vec<BigInt>;
    /// Row `i` is `e_i · g` in coordinates.
    fn multiplication_matrix(&self, g: &[BigInt]) -> Result<Vec<Vec<BigInt>>>;
}

impl RingStructure for RepRing {
    fn rank(&self) -> usize {
        RepRing::rank(self)
    }

    fn unit(&self) -> Vec<BigInt> {
        self.to_vector(&RepRing::unit(self))
            .into_iter()
            .map(BigInt::from)
            .collect()
    }

    fn multiplication_matrix(&self, g: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
        let g: Vec<i64> = g
            .iter()
            .map(|x| i64::try_from(x).expect("generator coefficients fit in i64"))
            .collect();
        let matrix = RepRing::multiplication_matrix(self, &self.from_vector(&g))?;
        Ok(matrix
            .into_iter()
            .map(|row| row.into_iter().map(BigInt::from).collect())
            .collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Generates,
    Fails,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Generates => "generates",
            Verdict::Fails => "fails",
        })
    }
}

/// Outcome of a closure run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationReport {
    pub group: String,
    pub n: usize,
    pub theorem: String,
    pub generator_count: usize,
    pub verdict: Verdict,
    /// Decimal index, or `"inf"` when the span is not full rank.
    pub index: String,
    pub rank: usize,
    pub span_rank: usize,
    pub rounds: usize,
    pub elapsed_ms: u64,
}

/// The subring generated by `gens`: `L ← HNF(L ∪ L·g)` from `L = Z·1` until
/// stable. Returns the final lattice and the number of rounds that changed it.
pub fn subring_closure<R: RingStructure + ?Sized>(ring: &R, gens: &[Vec<BigInt>]) -> Result<(LatticeBasis, usize)> {
    let r = ring.rank();
    let matrices: Vec<Vec<Vec<BigInt>>> = gens
        .iter()
        .map(|g| ring.multiplication_matrix(g))
        .collect::<Result<_>>()?;
    let mut lattice = hnf(r, [ring.unit()]);
    let mut rounds = 0;
    loop {
        let mut rows = lattice.rows().to_vec();
        for m in &matrices {
            for row in lattice.rows() {
                rows.push(vec_times_matrix(row, m));
            }
        }
        let next = hnf(r, rows.iter().cloned());
        if !rows.iter().all(|v| next.contains(v)) {
            return Err(Error::InternalInconsistency("HNF lost a spanning vector".into()));
        }
        if next == lattice {
            return Ok((lattice, rounds));
        }
        lattice = next;
        rounds += 1;
    }
}

fn vec_times_matrix(v: &[BigInt], m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); m.first().map_or(0, Vec::len)];
    for (c, row) in v.iter().zip(m) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            *o += c * x;
        }
    }
    out
}

/// Runs [`subring_closure`] over `R(S_n(G))` and packages the report.
pub fn check_generation(ring: &RepRing, theorem: &str, gens: &[RepRingElement]) -> Result<GenerationReport> {
    let start = Instant::now();
    let vectors: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| ring.to_vector(g).into_iter().map(BigInt::from).collect())
        .collect();
    let (lattice, rounds) = subring_closure(ring, &vectors)?;
    Ok(GenerationReport {
        group: ring.context().name().to_string(),
        n: ring.n(),
        theorem: theorem.to_string(),
        generator_count: gens.len(),
        verdict: if lattice.is_identity() {
            Verdict::Generates
        } else {
            Verdict::Fails
        },
        index: lattice.index().map_or_else(|| "inf".to_string(), |i| i.to_string()),
        rank: lattice.rank(),
        span_rank: lattice.span_rank(),
        rounds,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin;
    use crate::wreath::{generator_family, EpsChoice, Flavor, Theorem};
    use proptest::prelude::*;
    use std::sync::Arc;

    fn rows(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn examples() {
        let a = hnf(2, rows(&[&[1, 0], &[0, 2]]));
        assert_eq!(a.rows(), rows(&[&[1, 0], &[0, 2]]).as_slice());
        assert_eq!(a.index(), Some(BigInt::from(2)));
        let b = hnf(2, rows(&[&[2, 0], &[0, 1], &[1, 1]]));
        assert!(b.is_identity());
        let c = hnf(3, Vec::new());
        assert_eq!(c.span_rank(), 0);
        assert_eq!(c.index(), None);
        let d = hnf(3, rows(&[&[0, 4, 6], &[0, 6, 4]]));
        assert_eq!(d.rows(), rows(&[&[0, 2, 8], &[0, 0, 10]]).as_slice());
    }

    #[test]
    fn unit_alone_fails() {
        let r = RepRing::new(Arc::new(builtin("trivial").unwrap()), 2).unwrap();
        let report = check_generation(&r, "custom", &[r.unit()]).unwrap();
        assert_eq!(report.verdict, Verdict::Fails);
        assert_eq!(report.span_rank, 1);
        assert_eq!(report.index, "inf");
    }

    #[test]
    fn hooks_generate_s4() {
        let r = RepRing::new(Arc::new(builtin("trivial").unwrap()), 4).unwrap();
        let gens = generator_family(&r, Theorem::Hooks, Flavor::Hook, &EpsChoice::default()).unwrap();
        let report = check_generation(&r, "marin-hooks", &gens).unwrap();
        assert_eq!(report.verdict, Verdict::Generates);
        assert_eq!(report.index, "1");
    }

    #[test]
    fn exterior_family_generates_b2() {
        let r = RepRing::new(Arc::new(builtin("z2").unwrap()), 2).unwrap();
        let gens = generator_family(&r, Theorem::TypeBExterior, Flavor::Hook, &EpsChoice::default_for(2)).unwrap();
        assert_eq!(check_generation(&r, "4.3", &gens).unwrap().verdict, Verdict::Generates);
        // some single removal breaks generation
        let broken = (0..gens.len()).any(|i| {
            let mut fewer = gens.clone();
            fewer.remove(i);
            check_generation(&r, "4.3", &fewer).unwrap().verdict == Verdict::Fails
        });
        assert!(broken);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5).prop_flat_map(|r| prop::collection::vec(prop::collection::vec(-6i64..7, r), 0..6))
    }

    proptest! {
        #[test]
        fn hnf_is_canonical_and_span_preserving(m in small_matrix()) {
            let r = m.first().map_or(1, Vec::len);
            let input = rows(&m.iter().map(Vec::as_slice).collect::<Vec<_>>());
            let h = hnf(r, input.clone());
            for v in &input {
                prop_assert!(h.contains(v));
            }
            prop_assert_eq!(hnf(r, h.rows().to_vec()), h.clone());
            let pivots = h.pivots();
            for (i, row) in h.rows().iter().enumerate() {
                prop_assert!(row[pivots[i]] > BigInt::zero());
                if i > 0 {
                    prop_assert!(pivots[i] > pivots[i - 1]);
                }
                for above in &h.rows()[..i] {
                    prop_assert!(above[pivots[i]] >= BigInt::zero() && above[pivots[i]] < row[pivots[i]]);
                }
            }
            // every HNF row lies in the input span: HNF of input ∪ rows is unchanged
            let mut both = input.clone();
            both.extend(h.rows().iter().cloned());
            prop_assert_eq!(hnf(r, both), h);
        }
    }
}
