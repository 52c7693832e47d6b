//! Exact simulation of the entangled strategy.
//!
//! The parties share `n` EPR pairs. Each applies the phase `(-1)^{x_i}` to
//! basis state `|i>` of its own register, then a Hadamard on every qubit, and
//! measures. Amplitudes stay integers: the physical amplitude is
//! `value / 2^(e/2)` for a tracked exponent `e`, so every probability is an
//! integer over a power of two.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::game::promise_classes;
use crate::hamming::Word;

pub const MAX_QUBITS: u32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Party {
    Alice,
    Bob,
}

/// Two `n`-qubit registers; `amp[i * 2^n + j]` is the amplitude of `|i>|j>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointState {
    qubits: u32,
    amp: Vec<i64>,
    exponent: u32,
}

impl JointState {
    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn amplitudes(&self) -> &[i64] {
        &self.amp
    }

    pub fn amplitude(&self, i: usize, j: usize) -> i64 {
        self.amp[i * self.dim() + j]
    }

    fn dim(&self) -> usize {
        1 << self.qubits
    }

    pub fn norm_squared(&self) -> u128 {
        self.amp
            .iter()
            .map(|&a| (a as i128 * a as i128) as u128)
            .sum()
    }

    pub fn is_normalized(&self) -> bool {
        self.norm_squared() == 1u128 << self.exponent
    }
}

pub fn prepare_epr(qubits: u32) -> Result<JointState> {
    if !(1..=MAX_QUBITS).contains(&qubits) {
        return Err(Error::usage(format!(
            "qubits per party must be in 1..={MAX_QUBITS}, got {qubits}"
        )));
    }
    let dim = 1usize << qubits;
    let mut amp = vec![0; dim * dim];
    for i in 0..dim {
        amp[i * dim + i] = 1;
    }
    Ok(JointState {
        qubits,
        amp,
        exponent: qubits,
    })
}

/// Multiplies `|i>` of one register by `(-1)^{x_i}`.
pub fn apply_phase(mut st: JointState, party: Party, x: Word) -> Result<JointState> {
    let dim = st.dim();
    if x.width() as usize != dim {
        return Err(Error::usage(format!(
            "phase word has {} bits, register needs {dim}",
            x.width()
        )));
    }
    for i in 0..dim {
        for j in 0..dim {
            let pos = match party {
                Party::Alice => i,
                Party::Bob => j,
            };
            if x.bit(pos as u32) {
                st.amp[i * dim + j] = -st.amp[i * dim + j];
            }
        }
    }
    Ok(st)
}

/// Unnormalized Walsh–Hadamard transform on one register; the exponent grows
/// by `n`.
pub fn apply_hadamard(mut st: JointState, party: Party) -> JointState {
    let dim = st.dim();
    let stride_of = |idx: usize| match party {
        Party::Alice => idx * dim,
        Party::Bob => idx,
    };
    for other in 0..dim {
        let base = match party {
            Party::Alice => other,
            Party::Bob => other * dim,
        };
        let mut h = 1;
        while h < dim {
            for start in (0..dim).step_by(2 * h) {
                for k in start..start + h {
                    let a = base + stride_of(k);
                    let b = base + stride_of(k + h);
                    let (x, y) = (st.amp[a], st.amp[b]);
                    st.amp[a] = x + y;
                    st.amp[b] = x - y;
                }
            }
            h *= 2;
        }
    }
    st.exponent += st.qubits;
    st
}

/// Probability of each answer pair as `numerator / 2^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeDistribution {
    qubits: u32,
    numerators: Vec<u128>,
    exponent: u32,
}

impl OutcomeDistribution {
    pub fn probability(&self, y_a: usize, y_b: usize) -> (u128, u128) {
        (
            self.numerators[(y_a << self.qubits) + y_b],
            1u128 << self.exponent,
        )
    }

    pub fn denominator(&self) -> u128 {
        1u128 << self.exponent
    }

    /// Numerator of `P(y_A = y_B)`.
    pub fn equal_numerator(&self) -> u128 {
        let dim = 1usize << self.qubits;
        (0..dim).map(|i| self.numerators[i * dim + i]).sum()
    }

    pub fn total_numerator(&self) -> u128 {
        self.numerators.iter().sum()
    }
}

pub fn outcome_distribution(st: &JointState) -> Result<OutcomeDistribution> {
    if !st.is_normalized() {
        return Err(Error::Invariant(format!(
            "squared amplitudes sum to {}, expected 2^{}",
            st.norm_squared(),
            st.exponent
        )));
    }
    Ok(OutcomeDistribution {
        qubits: st.qubits,
        numerators: st
            .amp
            .iter()
            .map(|&a| (a as i128 * a as i128) as u128)
            .collect(),
        exponent: st.exponent,
    })
}

/// Runs the protocol on questions `(x_A, x_B)` up to measurement.
pub fn run_protocol(qubits: u32, x_a: Word, x_b: Word) -> Result<OutcomeDistribution> {
    let st = prepare_epr(qubits)?;
    let st = apply_phase(st, Party::Alice, x_a)?;
    let st = apply_phase(st, Party::Bob, x_b)?;
    let st = apply_hadamard(st, Party::Alice);
    let st = apply_hadamard(st, Party::Bob);
    outcome_distribution(&st)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassResult {
    pub z: Word,
    pub equal: (u128, u128),
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProtocolReport {
    pub qubits: u32,
    pub classes: Vec<ClassResult>,
    /// Random `x_A` checked for `state(x_A, x_A XOR z) == state(0, z)`.
    pub invariance_samples: usize,
    pub invariance_failures: Vec<(Word, Word)>,
}

impl ProtocolReport {
    pub fn passed(&self) -> bool {
        self.classes.iter().all(|c| c.pass) && self.invariance_failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&ClassResult> {
        self.classes.iter().find(|c| !c.pass)
    }

    /// One line per class plus a summary line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.classes {
            let _ = writeln!(
                out,
                "z={} P(equal)={}/{} verdict={}",
                c.z,
                c.equal.0,
                c.equal.1,
                if c.pass { "pass" } else { "fail" }
            );
        }
        let passed = self.classes.iter().filter(|c| c.pass).count();
        let _ = writeln!(
            out,
            "summary n={} classes={} passed={} invariance={}/{} verdict={}",
            self.qubits,
            self.classes.len(),
            passed,
            self.invariance_samples - self.invariance_failures.len(),
            self.invariance_samples,
            if self.passed() { "pass" } else { "fail" }
        );
        out
    }
}

fn post_phase(qubits: u32, x_a: Word, x_b: Word) -> Result<JointState> {
    let st = apply_phase(prepare_epr(qubits)?, Party::Alice, x_a)?;
    apply_phase(st, Party::Bob, x_b)
}

/// Checks every promise class: `P(equal) = 1` when `z = 0` and `0` when
/// `z` has weight `N/2`.
pub fn verify_protocol(qubits: u32, seed: u64) -> Result<ProtocolReport> {
    if !(1..=4).contains(&qubits) {
        return Err(Error::usage(format!(
            "protocol check supports n in 1..=4, got {qubits}"
        )));
    }
    let width = 1u32 << qubits;
    let zero = Word::from_raw(0, width);
    let zs: Vec<Word> = promise_classes(width)?.collect();
    let classes = zs
        .par_iter()
        .map(|&z| {
            let d = run_protocol(qubits, zero, z)?;
            let equal = (d.equal_numerator(), d.denominator());
            let want = if z.bits() == 0 { equal.1 } else { 0 };
            Ok(ClassResult {
                z,
                equal,
                pass: equal.0 == want && d.total_numerator() == d.denominator(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut failures = Vec::new();
    let mut samples = 0;
    let mut check = |x_a: Word, z: Word| -> Result<()> {
        samples += 1;
        let x_b = Word::from_raw(x_a.bits() ^ z.bits(), width);
        if post_phase(qubits, x_a, x_b)? != post_phase(qubits, zero, z)? {
            failures.push((x_a, z));
        }
        Ok(())
    };
    if qubits <= 2 {
        for x in 0..1u32 << width {
            for &z in &zs {
                check(Word::from_raw(x, width), z)?;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..100 {
            let x = Word::from_raw(rng.gen_range(0..=u32::MAX >> (32 - width)), width);
            let z = zs[rng.gen_range(0..zs.len())];
            check(x, z)?;
        }
    }
    Ok(ProtocolReport {
        qubits,
        classes,
        invariance_samples: samples,
        invariance_failures: failures,
    })
}
