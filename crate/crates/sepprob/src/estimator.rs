//! Drive the sampling pipeline over an index range of the sequence.
//!
//! One sequence index is one sample; skipped (probability-zero failure)
//! samples still advance the index. Parallelism partitions each checkpoint
//! interval into contiguous index blocks, one per worker, positioned by
//! skip-ahead; integer counters merge associatively in block order, so the
//! outcome is a pure function of (scenario, sequence spec, index set) and
//! never of the thread count or schedule.
//!
//! Checkpoint rows go to CSV with the exact header in [`CSV_HEADER`]; the
//! scenario/spec parameters needed to resume ride in a JSON sidecar next to
//! the CSV (see [`sidecar_path`]). Floats are printed with Rust's shortest
//! round-trip formatting; fraction fields with a zero denominator are left
//! empty; `unix_time` is the only non-deterministic column.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::criteria::{classify_into, CriteriaScratch, Verdict};
use crate::linalg::{haar_from_ginibre, CMat, QrScratch};
use crate::normal::fill_normals;
use crate::qrng::{SequenceSpec, SequenceState};
use crate::rmt::{
    fill_ginibre, induced_density_into, osz_density_into, DensityMatrix, Measure, NumberField,
    Scenario,
};
use crate::{Error, SampleFailure};

/// Additive event tallies. `total` counts classified samples only; samples
/// lost to probability-zero numerical failures land in `skipped` and are
/// excluded from every denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Counters {
    pub total: u64,
    pub skipped: u64,
    pub ppt: u64,
    pub ppt_det_greater: u64,
    pub realign_entangled: u64,
    pub bound_entangled: u64,
}

impl Counters {
    pub const ZERO: Counters = Counters {
        total: 0,
        skipped: 0,
        ppt: 0,
        ppt_det_greater: 0,
        realign_entangled: 0,
        bound_entangled: 0,
    };

    /// Component-wise sum; associative and commutative.
    pub fn merge(a: &Counters, b: &Counters) -> Counters {
        Counters {
            total: a.total + b.total,
            skipped: a.skipped + b.skipped,
            ppt: a.ppt + b.ppt,
            ppt_det_greater: a.ppt_det_greater + b.ppt_det_greater,
            realign_entangled: a.realign_entangled + b.realign_entangled,
            bound_entangled: a.bound_entangled + b.bound_entangled,
        }
    }

    fn absorb(&mut self, v: &Verdict) {
        self.total += 1;
        if v.ppt {
            self.ppt += 1;
            if v.det_pt_greater {
                self.ppt_det_greater += 1;
            }
        }
        if v.realign_entangled == Some(true) {
            self.realign_entangled += 1;
        }
        if v.bound_entangled == Some(true) {
            self.bound_entangled += 1;
        }
    }

    pub fn p_ppt(&self) -> f64 {
        self.ppt as f64 / self.total as f64
    }

    /// Fraction of PPT samples with |rho^PT| > |rho|.
    pub fn det_greater_frac(&self) -> f64 {
        self.ppt_det_greater as f64 / self.ppt as f64
    }

    pub fn realign_frac(&self) -> f64 {
        self.realign_entangled as f64 / self.total as f64
    }

    pub fn bound_frac(&self) -> f64 {
        self.bound_entangled as f64 / self.total as f64
    }
}

/// Snapshot of a run at a checkpoint boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct Checkpoint {
    pub scenario: String,
    /// Sequence index after the last sample of this interval.
    pub n: u64,
    pub counters: Counters,
    /// p_ppt divided by the attached conjecture value, when one is attached.
    pub conjecture_ratio: Option<f64>,
    pub unix_time: u64,
}

/// Exact CSV header for checkpoint files.
pub const CSV_HEADER: &str = "scenario,n,total,skipped,ppt,ppt_det_greater,realign_entangled,bound_entangled,p_ppt,det_greater_frac,conjecture_ratio,unix_time";

fn fmt_frac(num: u64, den: u64) -> String {
    if den == 0 {
        String::new()
    } else {
        format!("{}", num as f64 / den as f64)
    }
}

impl Checkpoint {
    pub fn csv_row(&self) -> String {
        let c = &self.counters;
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.scenario,
            self.n,
            c.total,
            c.skipped,
            c.ppt,
            c.ppt_det_greater,
            c.realign_entangled,
            c.bound_entangled,
            fmt_frac(c.ppt, c.total),
            fmt_frac(c.ppt_det_greater, c.ppt),
            self.conjecture_ratio
                .map(|r| format!("{r}"))
                .unwrap_or_default(),
            self.unix_time,
        )
    }

    /// Parse one CSV data row (the inverse of [`Checkpoint::csv_row`]).
    pub fn parse_csv_row(line: &str) -> Result<Checkpoint, Error> {
        let bad = |detail: &str| Error::Malformed {
            what: "checkpoint row",
            detail: format!("{detail}: {line}"),
        };
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 12 {
            return Err(bad("expected 12 fields"));
        }
        let num = |i: usize| -> Result<u64, Error> {
            fields[i]
                .parse::<u64>()
                .map_err(|_| bad("bad integer field"))
        };
        let counters = Counters {
            total: num(2)?,
            skipped: num(3)?,
            ppt: num(4)?,
            ppt_det_greater: num(5)?,
            realign_entangled: num(6)?,
            bound_entangled: num(7)?,
        };
        let ratio = if fields[10].is_empty() {
            None
        } else {
            Some(
                fields[10]
                    .parse::<f64>()
                    .map_err(|_| bad("bad ratio field"))?,
            )
        };
        Ok(Checkpoint {
            scenario: fields[0].to_string(),
            n: num(1)?,
            counters,
            conjecture_ratio: ratio,
            unix_time: num(11)?,
        })
    }
}

/// Everything a run needs besides the index range.
#[derive(Debug, Clone)]
pub struct RunOptions {
    /// Scenario id recorded in checkpoints.
    pub scenario_id: String,
    /// Checkpoint every this many samples.
    pub interval: u64,
    /// Worker count; 0 means the available parallelism.
    pub threads: usize,
    /// Compute realignment verdicts as well.
    pub realign: bool,
    /// (name, value) of the conjecture the ratio column divides by.
    pub conjecture: Option<(String, f64)>,
    /// Counters carried in from a resumed run.
    pub base: Counters,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            scenario_id: "custom".to_string(),
            interval: 5_000_000,
            threads: 0,
            realign: false,
            conjecture: None,
            base: Counters::ZERO,
        }
    }
}

/// Result of [`run`]: final cumulative counters plus all checkpoints.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub counters: Counters,
    pub checkpoints: Vec<Checkpoint>,
}

/// Per-worker scratch holding the whole sample pipeline.
pub struct SamplePipeline {
    scenario: Scenario,
    split: usize,
    uniforms: Vec<f64>,
    normals: Vec<f64>,
    ginibre: CMat,
    unitary_seed: CMat,
    unitary: CMat,
    qr: QrScratch,
    mix: CMat,
    b: CMat,
    rho: DensityMatrix,
    criteria: CriteriaScratch,
}

impl SamplePipeline {
    pub fn new(scenario: &Scenario) -> Self {
        let n = scenario.total_dim();
        let (rows, cols) = scenario.ginibre_shape();
        let per = match scenario.field {
            NumberField::Real => 1,
            NumberField::Complex => 2,
        };
        let d = scenario.variate_count();
        SamplePipeline {
            scenario: *scenario,
            split: rows * cols * per,
            uniforms: vec![0.0; d],
            normals: vec![0.0; d],
            ginibre: CMat::zeros(rows, cols),
            unitary_seed: CMat::zeros(n, n),
            unitary: CMat::zeros(n, n),
            qr: QrScratch::new(n),
            mix: CMat::zeros(n, n),
            b: CMat::zeros(n, cols),
            rho: DensityMatrix {
                mat: CMat::zeros(n, n),
                n_a: scenario.n_a,
                n_b: scenario.n_b,
            },
            criteria: CriteriaScratch::new(scenario.n_a, scenario.n_b),
        }
    }

    /// Generate and classify the sample at the state's current index.
    pub fn sample(
        &mut self,
        state: &SequenceState,
        with_realign: bool,
    ) -> Result<Verdict, SampleFailure> {
        state.coords(&mut self.uniforms);
        fill_normals(&self.uniforms, &mut self.normals)?;
        fill_ginibre(
            &mut self.ginibre,
            self.scenario.field,
            &self.normals[..self.split],
        );
        match self.scenario.measure {
            Measure::Osz { x } => {
                fill_ginibre(
                    &mut self.unitary_seed,
                    self.scenario.field,
                    &self.normals[self.split..],
                );
                haar_from_ginibre(&mut self.unitary, &self.unitary_seed, &mut self.qr)?;
                osz_density_into(
                    &mut self.rho.mat,
                    &self.ginibre,
                    &self.unitary,
                    x,
                    &mut self.mix,
                    &mut self.b,
                )?;
            }
            Measure::Induced { .. } => {
                induced_density_into(&mut self.rho.mat, &self.ginibre)?;
            }
        }
        // det(rho) only matters for the partition of PPT samples, so it is
        // computed lazily; that skips one eigensolve on the (majority)
        // non-PPT draws of the higher-dimensional scenarios.
        classify_into(&self.rho, with_realign, &mut self.criteria, true)
    }
}

fn counters_for_block(
    scenario: &Scenario,
    spec: &Arc<SequenceSpec>,
    start: u64,
    end: u64,
    realign: bool,
) -> Counters {
    let mut pipeline = SamplePipeline::new(scenario);
    let mut state = SequenceState::at(spec.clone(), start);
    let mut c = Counters::ZERO;
    let mut i = start;
    while i < end {
        match pipeline.sample(&state, realign) {
            Ok(v) => c.absorb(&v),
            Err(_) => c.skipped += 1,
        }
        state.advance();
        i += 1;
    }
    c
}

fn run_chunk(
    scenario: &Scenario,
    spec: &Arc<SequenceSpec>,
    start: u64,
    end: u64,
    threads: usize,
    realign: bool,
) -> Counters {
    let len = end - start;
    let t = threads.max(1).min(len.max(1) as usize);
    if t == 1 {
        return counters_for_block(scenario, spec, start, end, realign);
    }
    let mut parts: Vec<Counters> = Vec::with_capacity(t);
    std::thread::scope(|scope| {
        let mut handles = Vec::with_capacity(t);
        for w in 0..t {
            let b0 = start + (len as u128 * w as u128 / t as u128) as u64;
            let b1 = start + (len as u128 * (w + 1) as u128 / t as u128) as u64;
            handles.push(scope.spawn(move || counters_for_block(scenario, spec, b0, b1, realign)));
        }
        for h in handles {
            parts.push(h.join().expect("worker panicked"));
        }
    });
    parts
        .iter()
        .fold(Counters::ZERO, |acc, c| Counters::merge(&acc, c))
}

fn now_unix() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Run the pipeline over [n_start, n_end), checkpointing every
/// `opts.interval` samples. `on_checkpoint` sees each checkpoint as it is
/// produced (the CLI streams rows to disk through it).
pub fn run<F>(
    scenario: &Scenario,
    spec: &SequenceSpec,
    n_start: u64,
    n_end: u64,
    opts: &RunOptions,
    mut on_checkpoint: F,
) -> Result<RunOutcome, Error>
where
    F: FnMut(&Checkpoint) -> Result<(), Error>,
{
    let want = scenario.variate_count();
    if spec.dimension() != want {
        return Err(Error::DimensionMismatch {
            seq_d: spec.dimension(),
            want,
        });
    }
    if opts.interval == 0 {
        return Err(Error::Domain("checkpoint interval must be positive"));
    }
    if n_start > n_end {
        return Err(Error::Domain("n_start must not exceed n_end"));
    }
    let threads = if opts.threads == 0 {
        std::thread::available_parallelism()
            .map(|p| p.get())
            .unwrap_or(1)
    } else {
        opts.threads
    };

    let spec_arc = Arc::new(spec.clone());
    let mut totals = opts.base;
    let mut checkpoints = Vec::new();
    let mut pos = n_start;
    while pos < n_end {
        let into_interval = (pos - n_start) % opts.interval;
        let chunk_end = (pos + (opts.interval - into_interval)).min(n_end);
        let chunk = run_chunk(scenario, &spec_arc, pos, chunk_end, threads, opts.realign);
        totals = Counters::merge(&totals, &chunk);
        pos = chunk_end;
        if (pos - n_start).is_multiple_of(opts.interval) {
            let cp = Checkpoint {
                scenario: opts.scenario_id.clone(),
                n: pos,
                counters: totals,
                conjecture_ratio: opts
                    .conjecture
                    .as_ref()
                    .map(|(_, value)| totals.p_ppt() / value),
                unix_time: now_unix(),
            };
            on_checkpoint(&cp)?;
            checkpoints.push(cp);
        }
    }
    Ok(RunOutcome {
        counters: totals,
        checkpoints,
    })
}

/// Scenario/spec parameters that ride alongside a checkpoint CSV so a run
/// can be reconstructed exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckpointMeta {
    pub scenario: String,
    pub params: Scenario,
    /// Sequence dimension (= variate count of the scenario).
    pub d: usize,
    pub alpha0: f64,
    pub realign: bool,
    pub conjecture: Option<String>,
    pub interval: u64,
}

/// Sidecar path for a checkpoint CSV: `<csv>.meta.json`.
pub fn sidecar_path(csv: &Path) -> PathBuf {
    let mut os = csv.as_os_str().to_os_string();
    os.push(".meta.json");
    PathBuf::from(os)
}

pub fn write_sidecar(csv: &Path, meta: &CheckpointMeta) -> Result<(), Error> {
    let body = serde_json::to_string_pretty(meta).map_err(|e| Error::Malformed {
        what: "checkpoint sidecar",
        detail: e.to_string(),
    })?;
    std::fs::write(sidecar_path(csv), body)?;
    Ok(())
}

/// A run reconstructed from a checkpoint CSV plus its sidecar.
#[derive(Debug, Clone)]
pub struct Resumed {
    pub meta: CheckpointMeta,
    /// Index to continue from (the checkpoint's `n`).
    pub n: u64,
    pub counters: Counters,
}

/// Load the last checkpoint row and the sidecar parameters.
pub fn resume(csv: &Path) -> Result<Resumed, Error> {
    let body = std::fs::read_to_string(csv)?;
    let mut lines = body.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or(Error::Malformed {
        what: "checkpoint csv",
        detail: "file is empty".to_string(),
    })?;
    if header != CSV_HEADER {
        return Err(Error::Malformed {
            what: "checkpoint csv",
            detail: format!("unexpected header `{header}`"),
        });
    }
    let last = lines.next_back().ok_or(Error::Malformed {
        what: "checkpoint csv",
        detail: "no checkpoint rows to resume from".to_string(),
    })?;
    let cp = Checkpoint::parse_csv_row(last)?;

    let meta_body = std::fs::read_to_string(sidecar_path(csv))?;
    let meta: CheckpointMeta = serde_json::from_str(&meta_body).map_err(|e| Error::Malformed {
        what: "checkpoint sidecar",
        detail: e.to_string(),
    })?;
    if meta.scenario != cp.scenario {
        return Err(Error::ScenarioMismatch {
            found: cp.scenario,
            requested: meta.scenario,
        });
    }
    Ok(Resumed {
        meta,
        n: cp.n,
        counters: cp.counters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rmt::{Measure, NumberField, Scenario};

    fn two_qubit_hs() -> Scenario {
        Scenario::new(2, 2, NumberField::Complex, Measure::Induced { k: 0 }).unwrap()
    }

    fn spec_for(s: &Scenario) -> SequenceSpec {
        SequenceSpec::new(s.variate_count(), 0.5).unwrap()
    }

    fn opts(interval: u64, threads: usize) -> RunOptions {
        RunOptions {
            scenario_id: "two-qubit-hs".into(),
            interval,
            threads,
            realign: false,
            conjecture: Some(("hs_two_qubit".into(), 8.0 / 33.0)),
            base: Counters::ZERO,
        }
    }

    #[test]
    fn empty_range_is_zero_counters_no_checkpoints() {
        let s = two_qubit_hs();
        let out = run(&s, &spec_for(&s), 5, 5, &opts(1000, 1), |_| Ok(())).unwrap();
        assert_eq!(out.counters, Counters::ZERO);
        assert!(out.checkpoints.is_empty());
    }

    #[test]
    fn counters_additive_over_split_ranges() {
        let s = two_qubit_hs();
        let spec = spec_for(&s);
        let o = opts(100_000, 1);
        let whole = run(&s, &spec, 0, 10_000, &o, |_| Ok(())).unwrap().counters;
        let a = run(&s, &spec, 0, 5_000, &o, |_| Ok(())).unwrap().counters;
        let b = run(&s, &spec, 5_000, 10_000, &o, |_| Ok(()))
            .unwrap()
            .counters;
        assert_eq!(whole, Counters::merge(&a, &b));
        assert_eq!(Counters::merge(&a, &b), Counters::merge(&b, &a));
        assert_eq!(Counters::merge(&a, &Counters::ZERO), a);
        assert_eq!(whole.total + whole.skipped, 10_000);
    }

    #[test]
    fn thread_count_does_not_change_counters() {
        let s = two_qubit_hs();
        let spec = spec_for(&s);
        let base = run(&s, &spec, 0, 30_000, &opts(10_000, 1), |_| Ok(())).unwrap();
        for threads in [2usize, 3, 8] {
            let out = run(&s, &spec, 0, 30_000, &opts(10_000, threads), |_| Ok(())).unwrap();
            assert_eq!(out.counters, base.counters, "threads={threads}");
            let strip = |cps: &[Checkpoint]| -> Vec<String> {
                cps.iter()
                    .map(|c| {
                        let row = c.csv_row();
                        row.rsplit_once(',').unwrap().0.to_string()
                    })
                    .collect()
            };
            assert_eq!(strip(&out.checkpoints), strip(&base.checkpoints));
        }
    }

    #[test]
    fn checkpoints_land_on_interval_boundaries() {
        let s = two_qubit_hs();
        let out = run(&s, &spec_for(&s), 0, 2_500, &opts(1_000, 2), |_| Ok(())).unwrap();
        let ns: Vec<u64> = out.checkpoints.iter().map(|c| c.n).collect();
        assert_eq!(ns, vec![1_000, 2_000]);
        // Final partial interval still counted in the totals.
        assert_eq!(out.counters.total + out.counters.skipped, 2_500);
        let ratio = out.checkpoints[0].conjecture_ratio.unwrap();
        assert!(ratio > 0.0 && ratio < 5.0);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let s = two_qubit_hs();
        let wrong = SequenceSpec::new(16, 0.5).unwrap();
        assert!(matches!(
            run(&s, &wrong, 0, 10, &opts(5, 1), |_| Ok(())),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn csv_row_round_trip() {
        let cp = Checkpoint {
            scenario: "two-qubit-hs".into(),
            n: 123456,
            counters: Counters {
                total: 123450,
                skipped: 6,
                ppt: 29_000,
                ppt_det_greater: 14_500,
                realign_entangled: 0,
                bound_entangled: 0,
            },
            conjecture_ratio: Some(0.98765432101),
            unix_time: 1_700_000_000,
        };
        let row = cp.csv_row();
        assert_eq!(row.split(',').count(), CSV_HEADER.split(',').count());
        let back = Checkpoint::parse_csv_row(&row).unwrap();
        assert_eq!(back, cp);
    }

    #[test]
    fn resume_reproduces_uninterrupted_run() {
        let dir = std::env::temp_dir().join(format!("sepprob-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let csv_path = dir.join("resume.csv");

        let s = two_qubit_hs();
        let spec = spec_for(&s);
        let o = opts(5_000, 2);

        // First half, streamed to CSV.
        let mut body = format!("{CSV_HEADER}\n");
        let first = run(&s, &spec, 0, 10_000, &o, |cp| {
            body.push_str(&cp.csv_row());
            body.push('\n');
            Ok(())
        })
        .unwrap();
        std::fs::write(&csv_path, &body).unwrap();
        let meta = CheckpointMeta {
            scenario: "two-qubit-hs".into(),
            params: s,
            d: s.variate_count(),
            alpha0: 0.5,
            realign: false,
            conjecture: Some("hs_two_qubit".into()),
            interval: 5_000,
        };
        write_sidecar(&csv_path, &meta).unwrap();

        // Resume and continue to 20_000.
        let resumed = resume(&csv_path).unwrap();
        assert_eq!(resumed.n, 10_000);
        assert_eq!(resumed.counters, first.counters);
        assert_eq!(resumed.meta, meta);

        let mut o2 = o.clone();
        o2.base = resumed.counters;
        let cont = run(&s, &spec, resumed.n, 20_000, &o2, |_| Ok(())).unwrap();

        let direct = run(&s, &spec, 0, 20_000, &o, |_| Ok(())).unwrap();
        assert_eq!(cont.counters, direct.counters);

        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn resume_errors() {
        let dir = std::env::temp_dir().join(format!("sepprob-test-err-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("bad.csv");

        std::fs::write(&p, "").unwrap();
        assert!(matches!(resume(&p), Err(Error::Malformed { .. })));

        std::fs::write(&p, format!("{CSV_HEADER}\n")).unwrap();
        assert!(matches!(resume(&p), Err(Error::Malformed { .. })));

        // Scenario id disagrees between row and sidecar.
        let mut body = format!("{CSV_HEADER}\n");
        body.push_str("other-scenario,10,10,0,2,1,0,0,0.2,0.5,,0\n");
        std::fs::write(&p, body).unwrap();
        let meta = CheckpointMeta {
            scenario: "two-qubit-hs".into(),
            params: two_qubit_hs(),
            d: 32,
            alpha0: 0.5,
            realign: false,
            conjecture: None,
            interval: 5,
        };
        write_sidecar(&p, &meta).unwrap();
        assert!(matches!(resume(&p), Err(Error::ScenarioMismatch { .. })));

        std::fs::remove_dir_all(&dir).ok();
    }
}
