//! Greedy graph coloring by independent-set peeling.
//!
//! The driver repeatedly asks a sampler for independent sets of the residual
//! graph, colors the largest one, and removes it. Two interchangeable
//! samplers are provided: a classical Ramsey / clique-removal chain and a
//! QUBO sampler backed by simulated annealing that emulates a quantum
//! annealer's interface and time accounting. Around the solver sit an
//! instance generator for hard planted-colorable graphs at the colorability
//! phase transition, and a benchmark harness measuring success probability,
//! wallclock time, and time-to-solution.

pub use rand_chacha;

pub mod anneal;
pub mod classical;
pub mod color;
pub mod dimacs;
pub mod gen;
pub mod graph;
pub mod metrics;
pub mod plot;
pub mod qubo;
pub mod report;
pub mod sweep;

pub use anneal::{Backend, RandomBackend, SaBackend, SaSchedule, SampleBatch, TimingConstants};
pub use classical::{RamseyResult, SamplerParams};
pub use color::{Coloring, IsSampler, RunResult};
pub use gen::{InstanceSet, PlantedInstance};
pub use graph::{Graph, GraphError, VertexSet};
pub use qubo::{Assignment, Qubo};
pub use sweep::{BenchConfig, RunRecord, SamplerKind, SweepResult};
