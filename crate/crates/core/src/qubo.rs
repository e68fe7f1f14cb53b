//! QUBO construction and evaluation.
//!
//! A QUBO is an upper-triangular matrix of real weights; minimizing
//! `offset + Σ Q_ii·x_i + Σ_{i<j} Q_ij·x_i·x_j` over binary `x` is the
//! optimization target. Two builders are provided: the maximum-independent-set
//! objective (linear reward per vertex, penalty `α` per edge) and the exact
//! one-hot graph-coloring penalty. The latter is kept as a brute-force
//! verified reference only: it costs `k·n` variables and is never used as
//! the main solver. An exhaustive minimizer serves as the verification
//! oracle for small problems.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::graph::{Graph, VertexSet};

/// Exhaustive enumeration refuses problems larger than this.
pub const BRUTE_FORCE_VAR_CAP: usize = 24;

// ============================================================================
// Errors
// ============================================================================

#[derive(Clone, Debug, PartialEq)]
pub enum QuboError {
    /// Assignment length does not match the variable count.
    LengthMismatch { expected: usize, got: usize },
    /// Assignment entry other than 0 or 1.
    NonBinaryEntry { index: usize, value: u8 },
    /// The MIS penalty weight must be at least 2.
    PenaltyTooSmall { alpha: f64 },
    /// A coefficient index is outside `0..n_vars`.
    VariableOutOfRange { index: usize, n_vars: usize },
    /// Exhaustive enumeration refused: too many variables.
    TooManyVariables { n_vars: usize, cap: usize },
}

impl fmt::Display for QuboError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuboError::LengthMismatch { expected, got } => {
                write!(
                    f,
                    "assignment has {got} bits, QUBO has {expected} variables"
                )
            }
            QuboError::NonBinaryEntry { index, value } => {
                write!(f, "assignment entry {value} at index {index} is not 0/1")
            }
            QuboError::PenaltyTooSmall { alpha } => {
                write!(f, "MIS penalty weight {alpha} is below the minimum of 2")
            }
            QuboError::VariableOutOfRange { index, n_vars } => {
                write!(
                    f,
                    "variable index {index} out of range for {n_vars} variables"
                )
            }
            QuboError::TooManyVariables { n_vars, cap } => {
                write!(
                    f,
                    "{n_vars} variables exceed the exhaustive-scan cap of {cap}"
                )
            }
        }
    }
}

impl std::error::Error for QuboError {}

// ============================================================================
// Assignment
// ============================================================================

/// A binary vector over the QUBO's variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    bits: Vec<u8>,
}

impl Assignment {
    /// Validates entries are 0/1.
    pub fn from_bits(bits: Vec<u8>) -> Result<Assignment, QuboError> {
        for (index, &value) in bits.iter().enumerate() {
            if value > 1 {
                return Err(QuboError::NonBinaryEntry { index, value });
            }
        }
        Ok(Assignment { bits })
    }

    pub fn zeros(n: usize) -> Assignment {
        Assignment { bits: vec![0; n] }
    }

    /// Low `n` bits of `mask`, least significant bit first.
    pub fn from_mask(mask: u64, n: usize) -> Assignment {
        Assignment {
            bits: (0..n).map(|i| ((mask >> i) & 1) as u8).collect(),
        }
    }

    /// Indicator vector of a vertex set.
    pub fn indicator(set: &VertexSet, n: usize) -> Assignment {
        let mut bits = vec![0u8; n];
        for v in set.iter() {
            bits[v] = 1;
        }
        Assignment { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, i: usize) -> bool {
        self.bits[i] == 1
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Indices of the 1-bits, as a vertex set.
    pub fn support(&self) -> VertexSet {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .map(|(i, _)| i)
            .collect()
    }

    pub(crate) fn bits_mut(&mut self) -> &mut [u8] {
        &mut self.bits
    }
}

// ============================================================================
// Qubo
// ============================================================================

/// Upper-triangular QUBO: per-variable linear coefficients, canonical
/// `(i, j)` with `i < j` quadratic coefficients, and an explicit constant
/// offset. Zero quadratic entries are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Qubo {
    n_vars: usize,
    linear: Vec<f64>,
    quadratic: BTreeMap<(usize, usize), f64>,
    offset: f64,
}

impl Qubo {
    /// All-zero QUBO on `n_vars` variables.
    pub fn zero(n_vars: usize) -> Qubo {
        Qubo {
            n_vars,
            linear: vec![0.0; n_vars],
            quadratic: BTreeMap::new(),
            offset: 0.0,
        }
    }

    /// Builds from explicit terms. Quadratic keys are canonicalized to
    /// `i < j`; duplicate keys accumulate; zero entries are dropped.
    pub fn with_terms(
        linear: Vec<f64>,
        quadratic: impl IntoIterator<Item = ((usize, usize), f64)>,
        offset: f64,
    ) -> Result<Qubo, QuboError> {
        let n_vars = linear.len();
        let mut map: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for ((a, b), w) in quadratic {
            let (i, j) = (a.min(b), a.max(b));
            if i == j || j >= n_vars {
                return Err(QuboError::VariableOutOfRange { index: j, n_vars });
            }
            *map.entry((i, j)).or_insert(0.0) += w;
        }
        map.retain(|_, w| *w != 0.0);
        Ok(Qubo {
            n_vars,
            linear,
            quadratic: map,
            offset,
        })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn linear(&self) -> &[f64] {
        &self.linear
    }

    pub fn quadratic(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.quadratic
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Quadratic coefficient for the unordered pair `{a, b}` (0 if absent).
    pub fn quad_coeff(&self, a: usize, b: usize) -> f64 {
        let key = (a.min(b), a.max(b));
        self.quadratic.get(&key).copied().unwrap_or(0.0)
    }

    /// `offset + Σ Q_ii·x_i + Σ_{i<j} Q_ij·x_i·x_j`.
    pub fn energy(&self, x: &Assignment) -> Result<f64, QuboError> {
        if x.len() != self.n_vars {
            return Err(QuboError::LengthMismatch {
                expected: self.n_vars,
                got: x.len(),
            });
        }
        Ok(self.energy_bits(x.bits()))
    }

    /// Same as [`Qubo::energy`] on a raw bit slice; every energy reported by
    /// this crate goes through this one code path so recomputation is
    /// bit-exact.
    pub(crate) fn energy_bits(&self, bits: &[u8]) -> f64 {
        debug_assert_eq!(bits.len(), self.n_vars);
        let mut e = self.offset;
        for (i, &w) in self.linear.iter().enumerate() {
            if bits[i] == 1 {
                e += w;
            }
        }
        for (&(i, j), &w) in &self.quadratic {
            if bits[i] == 1 && bits[j] == 1 {
                e += w;
            }
        }
        e
    }

    /// Per-variable view of the quadratic terms, for samplers that need
    /// energy deltas: `rows[i]` lists `(j, w)` for every stored pair
    /// containing `i`.
    pub(crate) fn interaction_rows(&self) -> Vec<Vec<(usize, f64)>> {
        let mut rows = vec![Vec::new(); self.n_vars];
        for (&(i, j), &w) in &self.quadratic {
            rows[i].push((j, w));
            rows[j].push((i, w));
        }
        rows
    }
}

// ============================================================================
// Builders
// ============================================================================

/// Maximum-independent-set objective: linear −1 per vertex, `alpha` per edge.
///
/// Minima are exactly the indicator vectors of maximum independent sets, with
/// energy −|MIS|, for any `alpha ≥ 2`; raising the penalty past 2 changes
/// nothing about the minimizers.
pub fn mis_qubo(g: &Graph, alpha: f64) -> Result<Qubo, QuboError> {
    if alpha < 2.0 || alpha.is_nan() {
        return Err(QuboError::PenaltyTooSmall { alpha });
    }
    let linear = vec![-1.0; g.n()];
    let quadratic = g.edges().iter().map(|&(u, v)| ((u, v), alpha));
    Qubo::with_terms(linear, quadratic, 0.0)
}

/// Variable index of the one-hot bit "vertex `vertex` has color `color`"
/// in [`gc_qubo`]: `vertex·k + color`. Fixed so decoded colorings are
/// implementation-independent.
pub fn gc_variable_index(vertex: usize, k: usize, color: usize) -> usize {
    vertex * k + color
}

/// Exact graph-coloring penalty on `k·n` one-hot variables:
/// `Σ_i (1 − Σ_c b_ic)² + Σ_{(i,j)∈E} Σ_c b_ic·b_jc`.
///
/// Expanded per vertex: offset +1, linear −1 on each bit, +2 between
/// distinct colors of the same vertex; +1 between same-color endpoints of
/// every edge. Energy is 0 exactly on one-hot encodings of proper
/// k-colorings and ≥ 1 everywhere else (all penalties are integral). The
/// offset is stored explicitly so that property is literal.
pub fn gc_qubo(g: &Graph, k: usize) -> Qubo {
    assert!(k >= 1, "at least one color required");
    let n = g.n();
    let linear = vec![-1.0; n * k];
    let mut quadratic = Vec::new();
    for i in 0..n {
        for c in 0..k {
            for c2 in (c + 1)..k {
                quadratic.push((
                    (gc_variable_index(i, k, c), gc_variable_index(i, k, c2)),
                    2.0,
                ));
            }
        }
    }
    for &(u, v) in g.edges() {
        for c in 0..k {
            quadratic.push((
                (gc_variable_index(u, k, c), gc_variable_index(v, k, c)),
                1.0,
            ));
        }
    }
    Qubo::with_terms(linear, quadratic, n as f64).expect("indices in range by construction")
}

// ============================================================================
// Exhaustive minimization oracle
// ============================================================================

/// Scans all `2^n_vars` assignments; returns the exact minimum energy and
/// every minimizer, in ascending mask order.
///
/// Intended for QUBOs with small integer coefficients, where f64 energy
/// comparison is exact. Refuses more than [`BRUTE_FORCE_VAR_CAP`] variables.
pub fn brute_force_minima(q: &Qubo) -> Result<(f64, Vec<Assignment>), QuboError> {
    let n = q.n_vars();
    if n > BRUTE_FORCE_VAR_CAP {
        return Err(QuboError::TooManyVariables {
            n_vars: n,
            cap: BRUTE_FORCE_VAR_CAP,
        });
    }
    let total: u64 = 1u64 << n;
    let chunk: u64 = 1 << 14;
    let n_chunks = total.div_ceil(chunk);

    let per_chunk: Vec<(f64, Vec<u64>)> = (0..n_chunks)
        .into_par_iter()
        .map(|ci| {
            let lo = ci * chunk;
            let hi = (lo + chunk).min(total);
            let mut best = f64::INFINITY;
            let mut masks = Vec::new();
            let mut bits = vec![0u8; n];
            for mask in lo..hi {
                for (i, b) in bits.iter_mut().enumerate() {
                    *b = ((mask >> i) & 1) as u8;
                }
                let e = q.energy_bits(&bits);
                if e < best {
                    best = e;
                    masks.clear();
                    masks.push(mask);
                } else if e == best {
                    masks.push(mask);
                }
            }
            (best, masks)
        })
        .collect();

    let min_energy = per_chunk
        .iter()
        .map(|(e, _)| *e)
        .fold(f64::INFINITY, f64::min);
    let argmins = per_chunk
        .iter()
        .filter(|(e, _)| *e == min_energy)
        .flat_map(|(_, masks)| masks.iter().map(|&m| Assignment::from_mask(m, n)))
        .collect();
    Ok((min_energy, argmins))
}

// ============================================================================
// Tests
// ============================================================================
