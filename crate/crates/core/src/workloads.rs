//! Circuit generators and the benchmark suites.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::circuit::{Circuit, Instruction};
use crate::error::QfeError;
use crate::gates::Gate;
use crate::measure::{Basis, RngStream};
use crate::pauli::PauliString;
use crate::state::QfeState;

/// Uniformly random circuit over `{X,Y,Z,H,S,CZ,CX,CY}`, plus
/// `{MZ,MX,MY}` when `measurements` is set. Two-qubit picks are redrawn on
/// a single-qubit register.
pub fn random_circuit(n: usize, len: usize, measurements: bool, rng: &mut RngStream) -> Circuit {
    let kinds = if measurements { 11 } else { 8 };
    let mut c = Circuit::new(n);
    while c.instructions.len() < len {
        let kind = rng.below(kinds);
        let j = rng.below(n);
        let ins = match kind {
            0 => Instruction::Gate(Gate::X(j)),
            1 => Instruction::Gate(Gate::Y(j)),
            2 => Instruction::Gate(Gate::Z(j)),
            3 => Instruction::Gate(Gate::H(j)),
            4 => Instruction::Gate(Gate::S(j)),
            5..=7 => {
                if n < 2 {
                    continue;
                }
                let mut k = rng.below(n - 1);
                if k >= j {
                    k += 1;
                }
                Instruction::Gate(match kind {
                    5 => Gate::Cz(j, k),
                    6 => Gate::Cx(j, k),
                    _ => Gate::Cy(j, k),
                })
            }
            8 => Instruction::Measure { qubit: j, basis: Basis::Z },
            9 => Instruction::Measure { qubit: j, basis: Basis::X },
            _ => Instruction::Measure { qubit: j, basis: Basis::Y },
        };
        c.push(ins);
    }
    c
}

/// `H 0` followed by `CX 0 i` for every other qubit.
pub fn ghz(n: usize) -> Circuit {
    let mut c = Circuit::new(n);
    c.push(Instruction::Gate(Gate::H(0)));
    for i in 1..n {
        c.push(Instruction::Gate(Gate::Cx(0, i)));
    }
    c
}

/// The observable `X0 Y1 Z2 X3`, truncated to the register size.
pub fn syndrome_observable(data: usize) -> PauliString {
    let letters = [Basis::X, Basis::Y, Basis::Z, Basis::X];
    PauliString::new((0..data.min(4)).map(|q| (q, letters[q])).collect())
        .expect("nonempty, distinct")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Ghz,
    Syndrome,
    Random,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ghz" => Ok(Suite::Ghz),
            "syndrome" => Ok(Suite::Syndrome),
            "random" => Ok(Suite::Random),
            _ => Err(format!("unknown suite '{s}' (expected ghz, syndrome or random)")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Ghz => "ghz",
            Suite::Syndrome => "syndrome",
            Suite::Random => "random",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub suite: Suite,
    pub size: usize,
    pub op_class: String,
    pub touches: u64,
    pub nanos: u128,
}

pub const BENCH_HEADER: &str = "suite,size,op_class,touches,nanos";

impl fmt::Display for BenchRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{}",
            self.suite, self.size, self.op_class, self.touches, self.nanos
        )
    }
}

#[derive(Default)]
struct Tally(BTreeMap<&'static str, (u64, u128)>);

impl Tally {
    fn time<T>(
        &mut self,
        class: &'static str,
        state: &mut QfeState,
        f: impl FnOnce(&mut QfeState) -> Result<T, QfeError>,
    ) -> Result<T, QfeError> {
        state.reset_touches();
        let t0 = Instant::now();
        let out = f(state)?;
        let dt = t0.elapsed().as_nanos();
        let e = self.0.entry(class).or_default();
        e.0 += state.touches();
        e.1 += dt;
        Ok(out)
    }
}

fn one_q_class(g: &Gate) -> &'static str {
    match g {
        Gate::Cz(..) | Gate::Cx(..) | Gate::Cy(..) => "2q",
        Gate::H(_) => "H",
        _ => "1q_diag",
    }
}

/// Runs one suite at one size and returns per-class touch and time totals.
pub fn run_bench(suite: Suite, size: usize, seed: u64) -> Result<Vec<BenchRow>, QfeError> {
    let mut rng = RngStream::from_seed(seed);
    let mut tally = Tally::default();
    match suite {
        Suite::Ghz => {
            let mut s = QfeState::new(size)?;
            tally.time("H", &mut s, |s| s.apply_h(0))?;
            for i in 1..size {
                tally.time("CX", &mut s, |s| s.apply_cx(0, i))?;
            }
            tally.time("MZ_random", &mut s, |s| s.measure_z(0, &mut rng))?;
            for i in 1..size {
                tally.time("MZ_deterministic", &mut s, |s| s.measure_z(i, &mut rng))?;
            }
        }
        Suite::Syndrome => {
            let mut s = QfeState::new(size + 1)?;
            tally.time("prep", &mut s, |s| {
                s.apply_h(0)?;
                (1..size).try_for_each(|i| s.apply_cx(0, i))
            })?;
            let obs = syndrome_observable(size);
            tally.time("MPP_first", &mut s, |s| {
                s.measure_pauli(&obs, size, &mut rng)
            })?;
            tally.time("MPP_repeat", &mut s, |s| {
                s.measure_pauli(&obs, size, &mut rng)
            })?;
        }
        Suite::Random => {
            let c = random_circuit(size, 4 * size, true, &mut rng);
            let mut s = QfeState::new(size)?;
            for ins in &c.instructions {
                match ins {
                    Instruction::Gate(g) => {
                        tally.time(one_q_class(g), &mut s, |s| s.apply(*g))?;
                    }
                    Instruction::Measure { qubit, basis } => {
                        tally.time("measure", &mut s, |s| s.measure(*qubit, *basis, &mut rng))?;
                    }
                    Instruction::Mpp { .. } => unreachable!("generator emits no MPP"),
                }
            }
        }
    }
    Ok(tally
        .0
        .into_iter()
        .map(|(class, (touches, nanos))| BenchRow {
            suite,
            size,
            op_class: class.to_string(),
            touches,
            nanos,
        })
        .collect())
}
