use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use wreath_core::genring::{hnf, subring_closure, RingStructure};
use wreath_core::group::{builtin, GroupContext};
use wreath_core::lr::lr_coefficient;
use wreath_core::partition::{MultiPartition, Partition};
use wreath_core::wreath::{RepRing, RepRingElement, WreathElement};

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..6, 0..5).prop_map(Partition::from_unsorted)
}

fn multipartition(m: usize) -> impl Strategy<Value = MultiPartition> {
    prop::collection::vec(partition(), m).prop_map(MultiPartition::new)
}

fn s3() -> &'static Arc<GroupContext> {
    static CTX: OnceLock<Arc<GroupContext>> = OnceLock::new();
    CTX.get_or_init(|| Arc::new(builtin("s3").unwrap()))
}

fn s3_ring() -> &'static RepRing {
    static RING: OnceLock<RepRing> = OnceLock::new();
    RING.get_or_init(|| RepRing::new(s3().clone(), 3).unwrap())
}

fn wreath_element(order: usize, n: usize) -> impl Strategy<Value = WreathElement> {
    (
        prop::collection::vec(0..order, n),
        Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
    )
        .prop_map(|(components, perm)| WreathElement::new(components, perm))
}

proptest! {
    #[test]
    fn pad_then_strip_recovers_the_label(lambda in multipartition(3), extra in 0usize..8) {
        let n = lambda.size() + extra;
        match lambda.pad(n) {
            Some(padded) => {
                prop_assert_eq!(padded.size(), n);
                prop_assert_eq!(padded.stable_label(), lambda.clone());
                prop_assert!(extra >= lambda.unit().first());
            }
            None => prop_assert!(extra < lambda.unit().first()),
        }
    }

    #[test]
    fn lr_is_symmetric(lambda in partition(), mu in partition(), pick in any::<prop::sample::Index>()) {
        let targets = Partition::all(lambda.size() + mu.size());
        let nu = &targets[pick.index(targets.len())];
        prop_assert_eq!(lr_coefficient(&lambda, &mu, nu), lr_coefficient(&mu, &lambda, nu));
    }

    #[test]
    fn classes_are_conjugation_invariant(
        (w, x) in (1usize..=4).prop_flat_map(|n| (wreath_element(6, n), wreath_element(6, n)))
    ) {
        let ctx = s3();
        prop_assert_eq!(w.conjugate_by(&x, ctx).classify(ctx), w.classify(ctx));
        let wx = w.mul(&x, ctx);
        prop_assert_eq!(wx.classify(ctx), x.mul(&w, ctx).classify(ctx));
        prop_assert_eq!(w.inverse(ctx).mul(&w, ctx), WreathElement::identity(ctx, w.degree()));
    }

    #[test]
    fn tensor_products_commute(
        a in prop::collection::vec(-2i64..3, 22),
        b in prop::collection::vec(-2i64..3, 22),
    ) {
        let ring = s3_ring();
        prop_assume!(ring.rank() == 22);
        let (a, b) = (ring.from_vector(&a), ring.from_vector(&b));
        let ab = ring.tensor(&a, &b).unwrap();
        prop_assert_eq!(&ab, &ring.tensor(&b, &a).unwrap());
        let unit = ring.unit();
        prop_assert_eq!(ring.tensor(&a, &unit).unwrap(), a.clone());
        let dim = |x: &RepRingElement| -> i128 {
            x.terms().iter().map(|(l, &c)| c as i128 * ring.dimension(l) as i128).sum()
        };
        prop_assert_eq!(dim(&ab), dim(&a) * dim(&b));
    }

    #[test]
    fn closure_rounds_refine_the_lattice(mask in 1u32..(1 << 7)) {
        let ring = trivial_ring();
        let gens: Vec<Vec<BigInt>> = (0..7)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| {
                let mut v = vec![BigInt::zero(); 7];
                v[i] = BigInt::one();
                v
            })
            .collect();
        let matrices: Vec<_> = gens.iter().map(|g| RingStructure::multiplication_matrix(ring, g).unwrap()).collect();
        let mut lattice = hnf(7, [RingStructure::unit(ring)]);
        let mut previous_index: Option<BigInt> = None;
        let mut rounds = 0;
        loop {
            let mut rows = lattice.rows().to_vec();
            for m in &matrices {
                for row in lattice.rows() {
                    rows.push((0..7).map(|j| row.iter().zip(m).map(|(c, r)| c * &r[j]).sum()).collect());
                }
            }
            let next = hnf(7, rows);
            for row in lattice.rows() {
                prop_assert!(next.contains(row));
            }
            prop_assert!(next.span_rank() >= lattice.span_rank());
            if let (Some(prev), Some(index)) = (&previous_index, next.index()) {
                prop_assert!((prev % &index).is_zero());
            }
            if next == lattice {
                break;
            }
            previous_index = next.index();
            lattice = next;
            rounds += 1;
            prop_assert!(rounds <= 7 + 64);
        }
        let (reference, reference_rounds) = subring_closure(ring, &gens).unwrap();
        prop_assert_eq!(reference, lattice);
        prop_assert_eq!(reference_rounds, rounds);
    }
}

fn trivial_ring() -> &'static RepRing {
    static RING: OnceLock<RepRing> = OnceLock::new();
    RING.get_or_init(|| RepRing::new(Arc::new(builtin("trivial").unwrap()), 5).unwrap())
}
