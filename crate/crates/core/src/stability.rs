//! Stable-range checks on `R(S_n(G))` as `n` grows.
//!
//! For stable labels `λ, μ` and `s = |λ| + |μ|`, every check runs over the
//! window `n ∈ [s, s + 4]` and reports the onset: the smallest tested `n`
//! from which the property holds through the end of the window.
//!
//! * lead term of products: constituents of `V(λ_n) ⊗ V(μ_n)` have
//!   filtration degree at most `s`, and those of degree exactly `s` are the
//!   `V(ν_n)` with coefficient `Π_U c^{ν(U)}_{λ(U),μ(U)}`;
//! * lead term of restrictions: for `k = 1, 2`, `Res_k V(μ_n)` contains
//!   `V((k)) ⊠ V(μ_{n-k})` once and every other `V(α) ⊠ V(β)` has
//!   `|stable(β)| < |μ|`;
//! * the multiplicity of `V(ν_n)` in `V(λ_n) ⊗ V(μ_n)` for `|ν| ≤ 2`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::error::Result;
use crate::group::GroupContext;
use crate::lr::multi_lr_product;
use crate::partition::{MultiPartition, Partition};
use crate::wreath::{filtration_degree, restrict, RepRing, RepRingElement};

/// Width of the tested window above `|λ| + |μ|`.
pub const WINDOW: usize = 4;

/// Largest `|ν|` whose multiplicities are tracked.
pub const TRACKED_SIZE: usize = 2;

/// Representation rings of `S_n(G)` for one `G`, built on demand and shared.
pub struct RingFamily {
    ctx: Arc<GroupContext>,
    rings: Mutex<HashMap<usize, Arc<RepRing>>>,
}

impl RingFamily {
    pub fn new(ctx: Arc<GroupContext>) -> Self {
        RingFamily {
            ctx,
            rings: Mutex::default(),
        }
    }

    pub fn context(&self) -> &Arc<GroupContext> {
        &self.ctx
    }

    pub fn get(&self, n: usize) -> Result<Arc<RepRing>> {
        if let Some(r) = self.rings.lock().unwrap().get(&n) {
            return Ok(r.clone());
        }
        let ring = Arc::new(RepRing::new(self.ctx.clone(), n)?);
        Ok(self.rings.lock().unwrap().entry(n).or_insert(ring).clone())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PointCheck {
    pub n: usize,
    pub holds: bool,
    /// First violation found, if any.
    pub reason: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub points: Vec<PointCheck>,
    pub onset: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityTrack {
    pub nu: String,
    /// One value per `n` in the window.
    pub values: Vec<i64>,
    pub onset: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    pub group: String,
    pub lambda: String,
    pub mu: String,
    pub window: (usize, usize),
    pub product_lead_term: RelationCheck,
    pub restriction_lead_term: RelationCheck,
    pub multiplicities: Vec<MultiplicityTrack>,
}

impl StabilityReport {
    /// First `n` of the top half of the window.
    pub fn top_half_start(&self) -> usize {
        self.window.0 + WINDOW / 2
    }

    /// Both lead-term relations hold from their onset through the end of the
    /// window, and every tracked multiplicity is constant on the top half.
    pub fn passes(&self) -> bool {
        let top = self.top_half_start();
        self.product_lead_term.onset.is_some()
            && self.restriction_lead_term.onset.is_some()
            && self.multiplicities.iter().all(|m| m.onset.is_some_and(|n| n <= top))
    }
}

fn onset_of<T>(ns: &[usize], ok: &[T], same: impl Fn(&T, &T) -> bool) -> Option<usize> {
    let last = ok.len().checked_sub(1)?;
    let mut start = last;
    while start > 0 && same(&ok[start - 1], &ok[last]) {
        start -= 1;
    }
    Some(ns[start])
}

fn relation(points: Vec<PointCheck>) -> RelationCheck {
    let onset = match points.last() {
        Some(p) if p.holds => {
            let start = points.iter().rposition(|p| !p.holds).map_or(0, |i| i + 1);
            Some(points[start].n)
        }
        _ => None,
    };
    RelationCheck { points, onset }
}

fn product_lead_term(ring: &RepRing, lambda: &MultiPartition, mu: &MultiPartition) -> Result<PointCheck> {
    let n = ring.n();
    let fail = |reason: String| {
        Ok(PointCheck {
            n,
            holds: false,
            reason: Some(reason),
        })
    };
    let (Some(ln), Some(mn)) = (lambda.pad(n), mu.pad(n)) else {
        return fail("a padded factor is zero".into());
    };
    let top = lambda.size() + mu.size();
    let product = ring.tensor(&RepRingElement::irreducible(ln), &RepRingElement::irreducible(mn))?;
    let mut expected = RepRingElement::zero(n);
    for (nu, c) in multi_lr_product(lambda, mu) {
        match nu.pad(n) {
            Some(padded) => expected.add_term(padded, c as i64),
            None => return fail(format!("padded lead term {nu} is zero")),
        }
    }
    let mut lead = RepRingElement::zero(n);
    for (beta, &c) in product.terms() {
        let d = filtration_degree(beta);
        if d > top {
            return fail(format!("V{beta} has filtration degree {d} > {top}"));
        }
        if d == top {
            lead.add_term(beta.clone(), c);
        }
    }
    if lead != expected {
        return fail(format!("lead term {lead} differs from {expected}"));
    }
    Ok(PointCheck {
        n,
        holds: true,
        reason: None,
    })
}

fn restriction_lead_term(ring: &RepRing, mu: &MultiPartition) -> Result<PointCheck> {
    let n = ring.n();
    let m = mu.num_irreducibles();
    let fail = |reason: String| {
        Ok(PointCheck {
            n,
            holds: false,
            reason: Some(reason),
        })
    };
    let Some(mn) = mu.pad(n) else {
        return fail(format!("{mu} pads to zero"));
    };
    let x = RepRingElement::irreducible(mn);
    for k in 1..=TRACKED_SIZE.min(n) {
        let Some(lead) = mu.pad(n - k) else {
            return fail(format!("{mu} pads to zero at {}", n - k));
        };
        let trivial = MultiPartition::single(m, 0, Partition::row(k));
        let res = restrict(&x, k)?;
        let c = res.coefficient(&trivial, &lead);
        if c != 1 {
            return fail(format!("k={k}: lead coefficient {c}"));
        }
        for (alpha, beta) in res.terms.keys() {
            if (alpha, beta) != (&trivial, &lead) && beta.stable_label().size() >= mu.size() {
                return fail(format!("k={k}: V{alpha} ⊠ V{beta} is not lower"));
            }
        }
    }
    Ok(PointCheck {
        n,
        holds: true,
        reason: None,
    })
}

/// Runs every check for the pair `(λ, μ)` of stable labels.
pub fn check_stability(rings: &RingFamily, lambda: &MultiPartition, mu: &MultiPartition) -> Result<StabilityReport> {
    let m = rings.context().num_irreducibles();
    let s = lambda.size() + mu.size();
    let ns: Vec<usize> = (s..=s + WINDOW).collect();
    let tracked: Vec<MultiPartition> = (0..=TRACKED_SIZE).flat_map(|d| MultiPartition::all(m, d)).collect();
    let mut product_points = Vec::new();
    let mut restriction_points = Vec::new();
    let mut values = vec![Vec::with_capacity(ns.len()); tracked.len()];
    for &n in &ns {
        let ring = rings.get(n)?;
        product_points.push(product_lead_term(&ring, lambda, mu)?);
        restriction_points.push(restriction_lead_term(&ring, mu)?);
        let product = match (lambda.pad(n), mu.pad(n)) {
            (Some(a), Some(b)) => ring.tensor(&RepRingElement::irreducible(a), &RepRingElement::irreducible(b))?,
            _ => RepRingElement::zero(n),
        };
        for (nu, vals) in tracked.iter().zip(values.iter_mut()) {
            vals.push(nu.pad(n).map_or(0, |p| product.coefficient(&p)));
        }
    }
    let multiplicities = tracked
        .iter()
        .zip(values)
        .map(|(nu, values)| MultiplicityTrack {
            nu: nu.to_string(),
            onset: onset_of(&ns, &values, |a, b| a == b),
            values,
        })
        .collect();
    Ok(StabilityReport {
        group: rings.context().name().to_string(),
        lambda: lambda.to_string(),
        mu: mu.to_string(),
        window: (s, s + WINDOW),
        product_lead_term: relation(product_points),
        restriction_lead_term: relation(restriction_points),
        multiplicities,
    })
}

/// All stable labels over `m` irreducibles with size at most `max_size`.
pub fn stable_labels(m: usize, max_size: usize) -> Vec<MultiPartition> {
    (0..=max_size).flat_map(|d| MultiPartition::all(m, d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn trivial_box_times_box() {
        let rings = RingFamily::new(Arc::new(builtin("trivial").unwrap()));
        let one = MultiPartition::new(vec![p(&[1])]);
        let report = check_stability(&rings, &one, &one).unwrap();
        assert_eq!(report.window, (2, 6));
        for track in &report.multiplicities {
            assert_eq!(track.values[2..], [1, 1, 1], "{}", track.nu);
            assert!(track.onset.unwrap() <= 4);
        }
        let two = report.multiplicities.iter().find(|t| t.nu == "(2)").unwrap();
        assert_eq!(two.onset, Some(4));
        assert!(report.passes());
    }

    #[test]
    fn empty_label_is_stable_from_zero() {
        let rings = RingFamily::new(Arc::new(builtin("trivial").unwrap()));
        let empty = MultiPartition::empty(1);
        let report = check_stability(&rings, &empty, &empty).unwrap();
        assert_eq!(report.product_lead_term.onset, Some(0));
        let unit = report.multiplicities.iter().find(|t| t.nu == "∅").unwrap();
        assert_eq!(unit.values, vec![1; 5]);
        assert_eq!(unit.onset, Some(0));
    }

    #[test]
    fn onsets() {
        assert_eq!(onset_of(&[3, 4, 5], &[0, 1, 1], |a, b| a == b), Some(4));
        assert_eq!(onset_of(&[3, 4, 5], &[1, 1, 1], |a, b| a == b), Some(3));
        let pt = |n, holds| PointCheck { n, holds, reason: None };
        assert_eq!(relation(vec![pt(1, true), pt(2, false), pt(3, true)]).onset, Some(3));
        assert_eq!(relation(vec![pt(1, true), pt(2, false)]).onset, None);
    }
}
