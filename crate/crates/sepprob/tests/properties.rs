//! Property tests for the structural invariants.

use std::sync::Arc;

use proptest::prelude::*;

use sepprob::criteria::partial_transpose;
use sepprob::estimator::Counters;
use sepprob::linalg::{CMat, C64};
use sepprob::normal::inv_norm_cdf;
use sepprob::qrng::{SequenceSpec, SequenceState};
use sepprob::rmt::DensityMatrix;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Iterated advance and skip-ahead agree bit for bit from any index.
    #[test]
    fn skip_ahead_consistency(d in 1usize..8, start in any::<u64>(), steps in 0u64..40) {
        let spec = Arc::new(SequenceSpec::new(d, 0.5).unwrap());
        let mut st = SequenceState::at(spec.clone(), start);
        for _ in 0..steps {
            st.advance();
        }
        let mut want = vec![0u64; d];
        spec.point_fixed_at(start.wrapping_add(steps), &mut want);
        prop_assert_eq!(st.coords_fixed(), &want[..]);
    }

    /// Float coordinates always land in [0, 1).
    #[test]
    fn coordinates_in_unit_interval(d in 1usize..6, n in any::<u64>(), alpha0 in 0.0f64..1.0) {
        let spec = SequenceSpec::new(d, alpha0).unwrap();
        for c in spec.point_at(n) {
            prop_assert!((0.0..1.0).contains(&c));
        }
    }

    /// Counter merging is commutative and associative with zero identity.
    #[test]
    fn counters_merge_monoid(
        a in counters_strategy(),
        b in counters_strategy(),
        c in counters_strategy()
    ) {
        prop_assert_eq!(Counters::merge(&a, &b), Counters::merge(&b, &a));
        prop_assert_eq!(
            Counters::merge(&Counters::merge(&a, &b), &c),
            Counters::merge(&a, &Counters::merge(&b, &c))
        );
        prop_assert_eq!(Counters::merge(&a, &Counters::ZERO), a);
    }

    /// The partial transpose is an involution and preserves Hermiticity.
    #[test]
    fn partial_transpose_involution(
        entries in prop::collection::vec(-1.0f64..1.0, 2 * 36),
        dims in prop::sample::select(vec![(2usize, 2usize), (2, 3), (3, 2), (2, 4)])
    ) {
        let (na, nb) = dims;
        let n = na * nb;
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let re = entries[2 * (i * n + j) % entries.len()];
                let im = if i == j { 0.0 } else { entries[(2 * (i * n + j) + 1) % entries.len()] };
                m.set(i, j, C64::new(re, im));
                m.set(j, i, C64::new(re, -im));
            }
        }
        let rho = DensityMatrix { mat: m, n_a: na, n_b: nb };
        let pt = partial_transpose(&rho);
        prop_assert!(pt.hermiticity_defect() == 0.0);
        let back = partial_transpose(&DensityMatrix { mat: pt, n_a: na, n_b: nb });
        prop_assert_eq!(back, rho.mat);
    }

    /// Strict monotonicity of the inverse CDF.
    #[test]
    fn inverse_cdf_monotone(u1 in 1e-12f64..0.999999999999, du in 1e-9f64..0.5) {
        let u2 = (u1 + du).min(1.0 - 1e-12);
        prop_assume!(u2 > u1);
        let z1 = inv_norm_cdf(u1).unwrap();
        let z2 = inv_norm_cdf(u2).unwrap();
        prop_assert!(z2 > z1, "u1={} u2={} z1={} z2={}", u1, u2, z1, z2);
    }
}

fn counters_strategy() -> impl Strategy<Value = Counters> {
    (
        0u64..1 << 40,
        0u64..1 << 20,
        0u64..1 << 40,
        0u64..1 << 40,
        0u64..1 << 40,
        0u64..1 << 40,
    )
        .prop_map(|(total, skipped, ppt, det, re, be)| Counters {
            total,
            skipped,
            ppt,
            ppt_det_greater: det,
            realign_entangled: re,
            bound_entangled: be,
        })
}
