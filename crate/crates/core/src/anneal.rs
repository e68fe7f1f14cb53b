//! Sampler backends that emulate a quantum annealer's interface: given a
//! QUBO and a read count, return bitstrings with energies and a
//! hardware-style timing breakdown.
//!
//! The reported sampling time comes from [`TimingConstants`] regardless of
//! how long the backend actually computed, mimicking how real hardware
//! reports its own clock; actual compute time is recorded separately and
//! never mixed into the modeled numbers. The default backend is
//! single-spin-flip simulated annealing over a geometric inverse-temperature
//! ladder; a uniform-random backend exists as an adversarial stand-in for
//! contract tests.

use std::fmt;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, VertexSet};
use crate::qubo::{Assignment, Qubo};

// ============================================================================
// Timing model
// ============================================================================

/// Per-read hardware time constants, in microseconds.
///
/// Defaults follow the published D-Wave 2X per-sample accounting: 20 μs
/// anneal, 41 μs readout, 309 μs inter-sample delay, so one read costs
/// 370 μs. Programming time defaults to 0 and is configurable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimingConstants {
    pub t_anneal_us: f64,
    pub t_readout_us: f64,
    pub t_delay_us: f64,
    pub t_program_us: f64,
}

impl Default for TimingConstants {
    fn default() -> Self {
        TimingConstants {
            t_anneal_us: 20.0,
            t_readout_us: 41.0,
            t_delay_us: 309.0,
            t_program_us: 0.0,
        }
    }
}

impl TimingConstants {
    /// Cost of one read: anneal + readout + delay.
    pub fn t_sample_us(&self) -> f64 {
        self.t_anneal_us + self.t_readout_us + self.t_delay_us
    }
}

/// Total modeled processor time for `total_reads` reads:
/// `total_reads × t_sample + t_program`.
pub fn modeled_qpu_time_us(total_reads: usize, constants: &TimingConstants) -> f64 {
    total_reads as f64 * constants.t_sample_us() + constants.t_program_us
}

/// Hardware-style accounting attached to every batch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimingBreakdown {
    pub programming_us: f64,
    pub per_read_us: f64,
    /// Always `reads × per_read_us`, independent of backend compute time.
    pub sampling_total_us: f64,
}

// ============================================================================
// Batches and schedules
// ============================================================================

/// Reads returned by one backend call, with exact recomputed energies, the
/// modeled timing breakdown, and the separately measured compute time.
#[derive(Clone, Debug)]
pub struct SampleBatch {
    pub reads: Vec<Assignment>,
    pub energies: Vec<f64>,
    pub timing: TimingBreakdown,
    /// Real time the backend spent computing. Kept apart from `timing` so the
    /// two accountings are never conflated.
    pub compute: Duration,
}

/// Simulated-annealing schedule: `sweeps` Metropolis sweeps over a geometric
/// inverse-temperature ladder from `beta_initial` to `beta_final`, repeated
/// `restarts` times per read (best kept).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SaSchedule {
    pub sweeps: usize,
    pub beta_initial: f64,
    pub beta_final: f64,
    pub restarts: usize,
}

impl Default for SaSchedule {
    fn default() -> Self {
        SaSchedule {
            sweeps: 1000,
            beta_initial: 0.1,
            beta_final: 10.0,
            restarts: 1,
        }
    }
}

impl SaSchedule {
    fn validate(&self) {
        assert!(self.sweeps >= 1, "at least one sweep required");
        assert!(self.restarts >= 1, "at least one restart required");
        assert!(
            self.beta_final >= self.beta_initial && self.beta_initial > 0.0,
            "need beta_final >= beta_initial > 0"
        );
    }

    fn beta_at(&self, sweep: usize) -> f64 {
        if self.sweeps <= 1 {
            return self.beta_final;
        }
        let t = sweep as f64 / (self.sweeps - 1) as f64;
        self.beta_initial * (self.beta_final / self.beta_initial).powf(t)
    }
}

// ============================================================================
// Backends
// ============================================================================

/// A sampling backend: draws one read at a time. Use [`sample`] to obtain a
/// full batch with energies and timing attached.
///
/// Backends hold no state between calls; a batch is a deterministic function
/// of (QUBO, read count, backend configuration, rng seed).
pub trait Backend: Send + Sync {
    fn name(&self) -> &'static str;
    fn timing(&self) -> &TimingConstants;
    fn draw(&self, q: &Qubo, rng: &mut ChaCha8Rng) -> Assignment;
}

/// Draws `num_reads` assignments from `backend`, recomputes each energy via
/// the one canonical code path, and fills the modeled timing breakdown.
pub fn sample(
    backend: &dyn Backend,
    q: &Qubo,
    num_reads: usize,
    rng: &mut ChaCha8Rng,
) -> SampleBatch {
    assert!(num_reads >= 1, "at least one read required");
    let start = Instant::now();
    let reads: Vec<Assignment> = (0..num_reads).map(|_| backend.draw(q, rng)).collect();
    let compute = start.elapsed();
    let energies = reads
        .iter()
        .map(|r| q.energy(r).expect("backend produced wrong-length read"))
        .collect();
    let constants = backend.timing();
    SampleBatch {
        reads,
        energies,
        timing: TimingBreakdown {
            programming_us: constants.t_program_us,
            per_read_us: constants.t_sample_us(),
            sampling_total_us: num_reads as f64 * constants.t_sample_us(),
        },
        compute,
    }
}

/// Default backend: simulated annealing.
#[derive(Clone, Debug, Default)]
pub struct SaBackend {
    pub schedule: SaSchedule,
    pub timing: TimingConstants,
}

impl Backend for SaBackend {
    fn name(&self) -> &'static str {
        "sa"
    }

    fn timing(&self) -> &TimingConstants {
        &self.timing
    }

    fn draw(&self, q: &Qubo, rng: &mut ChaCha8Rng) -> Assignment {
        let mut best: Option<(f64, Assignment)> = None;
        for _ in 0..self.schedule.restarts {
            let candidate = sa_anneal_one(q, &self.schedule, rng);
            let e = q.energy(&candidate).expect("anneal preserves length");
            match &best {
                Some((be, _)) if *be <= e => {}
                _ => best = Some((e, candidate)),
            }
        }
        best.expect("restarts >= 1").1
    }
}

/// Adversarial backend: uniform random bitstrings. Exists so contract tests
/// can prove the downstream pipeline never trusts a sampler's output.
#[derive(Clone, Debug, Default)]
pub struct RandomBackend {
    pub timing: TimingConstants,
}

impl Backend for RandomBackend {
    fn name(&self) -> &'static str {
        "random"
    }

    fn timing(&self) -> &TimingConstants {
        &self.timing
    }

    fn draw(&self, q: &Qubo, rng: &mut ChaCha8Rng) -> Assignment {
        let bits = (0..q.n_vars()).map(|_| rng.random_range(0..=1u8)).collect();
        Assignment::from_bits(bits).expect("bits are 0/1")
    }
}

/// One simulated anneal: single-spin-flip Metropolis sweeps over the
/// schedule's inverse-temperature ladder. Returns the best assignment seen
/// along the trajectory.
pub fn sa_anneal_one(q: &Qubo, schedule: &SaSchedule, rng: &mut impl Rng) -> Assignment {
    schedule.validate();
    let n = q.n_vars();
    if n == 0 {
        return Assignment::zeros(0);
    }
    let rows = q.interaction_rows();
    let mut state = Assignment::from_bits((0..n).map(|_| rng.random_range(0..=1u8)).collect())
        .expect("bits are 0/1");
    let mut energy = q.energy(&state).expect("length matches");
    let mut best = state.clone();
    let mut best_energy = energy;

    for sweep in 0..schedule.sweeps {
        let beta = schedule.beta_at(sweep);
        for i in 0..n {
            let bits = state.bits_mut();
            let local: f64 = q.linear()[i]
                + rows[i]
                    .iter()
                    .map(|&(j, w)| if bits[j] == 1 { w } else { 0.0 })
                    .sum::<f64>();
            let delta = if bits[i] == 1 { -local } else { local };
            if delta <= 0.0 || rng.random::<f64>() < (-beta * delta).exp() {
                bits[i] ^= 1;
                energy += delta;
                if energy < best_energy {
                    best_energy = energy;
                    best = state.clone();
                }
            }
        }
    }
    best
}

// ============================================================================
// Decoding
// ============================================================================

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecodeError {
    /// The batch's variable count does not match the graph.
    VariableCountMismatch { vars: usize, n: usize },
}

impl fmt::Display for DecodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecodeError::VariableCountMismatch { vars, n } => {
                write!(
                    f,
                    "batch reads have {vars} variables, graph has {n} vertices"
                )
            }
        }
    }
}

impl std::error::Error for DecodeError {}

/// Decodes a batch produced from a MIS QUBO of `g`: each read's support set
/// is kept iff it is independent in `g`; violating reads are counted, not
/// repaired.
pub fn decode_independent_sets(
    g: &Graph,
    batch: &SampleBatch,
) -> Result<(Vec<VertexSet>, usize), DecodeError> {
    decode_independent_sets_with(g, batch, false)
}

/// Decoding with an optional repair mode: when `repair` is set, a violating
/// read is salvaged by repeatedly dropping the higher-degree endpoint of a
/// violated edge (ties break toward the higher id) until the set is
/// independent. Default off; repaired reads no longer show up in the
/// rejected-round counts.
pub fn decode_independent_sets_with(
    g: &Graph,
    batch: &SampleBatch,
    repair: bool,
) -> Result<(Vec<VertexSet>, usize), DecodeError> {
    let mut valid = Vec::new();
    let mut invalid = 0usize;
    for read in &batch.reads {
        if read.len() != g.n() {
            return Err(DecodeError::VariableCountMismatch {
                vars: read.len(),
                n: g.n(),
            });
        }
        let set = read.support();
        if g.is_independent(&set) {
            valid.push(set);
        } else if repair {
            valid.push(repair_set(g, set));
        } else {
            invalid += 1;
        }
    }
    Ok((valid, invalid))
}

fn repair_set(g: &Graph, mut set: VertexSet) -> VertexSet {
    loop {
        let violated = g
            .edges()
            .iter()
            .find(|&&(u, v)| set.contains(u) && set.contains(v));
        match violated {
            None => return set,
            Some(&(u, v)) => {
                let drop = if g.degree(u) > g.degree(v) {
                    u
                } else if g.degree(v) > g.degree(u) {
                    v
                } else {
                    u.max(v)
                };
                set = set.difference(&VertexSet::singleton(drop));
            }
        }
    }
}

// ============================================================================
// Tests
// ============================================================================
