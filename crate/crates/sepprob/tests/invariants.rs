//! Cross-module invariants that need full pipelines or large sample counts.

use std::sync::Arc;

use sepprob::criteria::classify;
use sepprob::estimator::SamplePipeline;
use sepprob::normal::uniforms_to_normals;
use sepprob::qrng::{SequenceSpec, SequenceState};
use sepprob::rmt::{ginibre, induced_density, osz_density, Measure, NumberField, Scenario};

/// PPT is equivalent to separability at 4x4, and separable states satisfy
/// the realignment bound; over a million two-qubit draws no PPT state may be
/// flagged bound entangled (beyond the 1e-12 threshold slack).
#[test]
fn realignment_never_flags_ppt_two_qubit() {
    let scenario = Scenario::new(2, 2, NumberField::Complex, Measure::Induced { k: 0 }).unwrap();
    let spec = Arc::new(SequenceSpec::new(scenario.variate_count(), 0.5).unwrap());
    let mut pipeline = SamplePipeline::new(&scenario);
    let mut state = SequenceState::at(spec, 0);
    let mut bound = 0u64;
    let mut ppt = 0u64;
    for _ in 0..1_000_000u64 {
        if let Ok(v) = pipeline.sample(&state, true) {
            if v.ppt {
                ppt += 1;
            }
            if v.bound_entangled == Some(true) {
                bound += 1;
            }
        }
        state.advance();
    }
    assert!(ppt > 200_000, "PPT count implausibly low: {ppt}");
    assert_eq!(
        bound, 0,
        "{bound} PPT two-qubit states flagged bound entangled"
    );
}

/// The interpolation at x = 0 must coincide with the induced construction
/// for the same Ginibre block; the unitary factor is inert there.
#[test]
fn osz_at_zero_matches_induced() {
    let spec = Arc::new(SequenceSpec::new(64, 0.5).unwrap());
    let mut state = SequenceState::at(spec, 1);
    let mut coords = vec![0.0; 64];
    for _ in 0..50 {
        state.coords(&mut coords);
        let normals = uniforms_to_normals(&coords).unwrap();
        let a = ginibre(
            4,
            4,
            NumberField::Complex,
            &sepprob::normal::NormalBlock {
                values: normals.values[..32].to_vec(),
            },
        );
        let u = sepprob::rmt::haar_factor(
            4,
            NumberField::Complex,
            &sepprob::normal::NormalBlock {
                values: normals.values[32..].to_vec(),
            },
        )
        .unwrap();
        let via_osz = osz_density(&a, &u, 0.0, 2, 2).unwrap();
        let direct = induced_density(&a, 2, 2).unwrap();
        assert!(via_osz.mat.max_abs_diff(&direct.mat) <= 1e-14);
        state.advance();
    }
}

/// Verdicts coming out of the pipeline satisfy their internal implications.
#[test]
fn verdict_consistency_on_sampled_states() {
    let scenario = Scenario::new(2, 3, NumberField::Complex, Measure::Induced { k: 0 }).unwrap();
    let spec = Arc::new(SequenceSpec::new(scenario.variate_count(), 0.5).unwrap());
    let mut pipeline = SamplePipeline::new(&scenario);
    let mut state = SequenceState::at(spec, 1);
    for _ in 0..5_000 {
        let v = pipeline.sample(&state, true).unwrap();
        assert_eq!(v.ppt, v.min_pt_eigenvalue >= 0.0);
        if v.bound_entangled == Some(true) {
            assert!(v.ppt && v.realign_entangled == Some(true));
        }
        assert!(v.realign_norm.unwrap() > 0.0);
        state.advance();
    }
}

/// classify() (public, allocating) and the pipeline's internal path agree.
#[test]
fn public_classify_matches_pipeline() {
    let scenario = Scenario::new(2, 2, NumberField::Complex, Measure::Induced { k: 0 }).unwrap();
    let spec = Arc::new(SequenceSpec::new(scenario.variate_count(), 0.5).unwrap());
    let mut state = SequenceState::at(spec, 1);
    let mut coords = vec![0.0; 32];
    let mut pipeline = SamplePipeline::new(&scenario);
    for _ in 0..2_000 {
        let via_pipeline = pipeline.sample(&state, true).unwrap();
        state.coords(&mut coords);
        let normals = uniforms_to_normals(&coords).unwrap();
        let a = ginibre(4, 4, NumberField::Complex, &normals);
        let rho = induced_density(&a, 2, 2).unwrap();
        let direct = classify(&rho, true).unwrap();
        assert_eq!(direct.ppt, via_pipeline.ppt);
        assert_eq!(direct.realign_entangled, via_pipeline.realign_entangled);
        if direct.ppt {
            assert_eq!(direct.det_pt_greater, via_pipeline.det_pt_greater);
        }
        state.advance();
    }
}
