//! Circuit text format, execution, and measurement record files.
//!
//! A circuit file starts with `QUBITS <n>`, followed by one instruction per
//! line. `#` starts a comment and blank lines are ignored. Qubits are
//! 0-based.
//!
//! ```text
//! QUBITS 3
//! H 0
//! CX 0 1      # control, target
//! MZ 1
//! MPP 2 X0 Z1
//! ```

use std::fmt;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::error::QfeError;
use crate::gates::Gate;
use crate::measure::{Basis, BitSource, RngStream};
use crate::pauli::PauliString;
use crate::state::QfeState;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CircuitError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("line {line}: {error}")]
    Runtime { line: usize, error: QfeError },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Instruction {
    Gate(Gate),
    Measure { qubit: usize, basis: Basis },
    Mpp { ancilla: usize, pauli: PauliString },
}

impl Instruction {
    pub fn is_measurement(&self) -> bool {
        !matches!(self, Instruction::Gate(_))
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instruction::Gate(g) => match *g {
                Gate::X(j) => write!(f, "X {j}"),
                Gate::Y(j) => write!(f, "Y {j}"),
                Gate::Z(j) => write!(f, "Z {j}"),
                Gate::H(j) => write!(f, "H {j}"),
                Gate::S(j) => write!(f, "S {j}"),
                Gate::Sdg(j) => write!(f, "SDG {j}"),
                Gate::Cz(j, k) => write!(f, "CZ {j} {k}"),
                Gate::Cx(j, k) => write!(f, "CX {j} {k}"),
                Gate::Cy(j, k) => write!(f, "CY {j} {k}"),
            },
            Instruction::Measure { qubit, basis } => write!(f, "M{basis:?} {qubit}"),
            Instruction::Mpp { ancilla, pauli } => write!(f, "MPP {ancilla} {pauli}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    pub n: usize,
    pub instructions: Vec<Instruction>,
    /// Source line of each instruction (1-based); synthetic circuits use 0.
    pub lines: Vec<usize>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            instructions: Vec::new(),
            lines: Vec::new(),
        }
    }

    pub fn push(&mut self, ins: Instruction) {
        self.instructions.push(ins);
        self.lines.push(0);
    }

    pub fn has_measurements(&self) -> bool {
        self.instructions.iter().any(Instruction::is_measurement)
    }

    pub fn measurement_count(&self) -> usize {
        self.instructions.iter().filter(|i| i.is_measurement()).count()
    }

    /// Short hex digest of the canonical text form.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.to_string().as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    fn line_of(&self, i: usize) -> usize {
        self.lines.get(i).copied().unwrap_or(0)
    }

    /// Executes one shot and returns the outcomes in program order.
    pub fn run_shot<R: BitSource + ?Sized>(&self, rng: &mut R) -> Result<Vec<bool>, CircuitError> {
        let mut state = QfeState::new(self.n).map_err(|error| CircuitError::Runtime {
            line: 0,
            error,
        })?;
        self.run_on(&mut state, rng)
    }

    /// Executes the circuit on an existing state.
    pub fn run_on<R: BitSource + ?Sized>(
        &self,
        state: &mut QfeState,
        rng: &mut R,
    ) -> Result<Vec<bool>, CircuitError> {
        let mut out = Vec::with_capacity(self.measurement_count());
        for (i, ins) in self.instructions.iter().enumerate() {
            let res = match ins {
                Instruction::Gate(g) => state.apply(*g).map(|_| None),
                Instruction::Measure { qubit, basis } => state.measure(*qubit, *basis, rng).map(Some),
                Instruction::Mpp { ancilla, pauli } => {
                    state.measure_pauli(pauli, *ancilla, rng).map(Some)
                }
            };
            match res {
                Ok(Some(bit)) => out.push(bit),
                Ok(None) => {}
                Err(error) => {
                    return Err(CircuitError::Runtime {
                        line: self.line_of(i),
                        error,
                    })
                }
            }
        }
        Ok(out)
    }

    /// Runs `shots` independent shots, spreading them over `threads` worker
    /// threads. Each shot draws from its own stream keyed by `(seed, shot)`,
    /// so results do not depend on the thread count.
    pub fn run(&self, seed: u64, shots: u64, threads: usize) -> Result<RecordSet, CircuitError> {
        let threads = threads.max(1).min(shots.max(1) as usize);
        let per = shots.div_ceil(threads as u64).max(1);
        let chunks: Vec<Result<Vec<Vec<bool>>, CircuitError>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads as u64)
                .map(|t| {
                    let lo = (t * per).min(shots);
                    let hi = ((t + 1) * per).min(shots);
                    scope.spawn(move || {
                        (lo..hi)
                            .map(|shot| self.run_shot(&mut RngStream::for_shot(seed, shot)))
                            .collect()
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        });
        let mut outcomes = Vec::with_capacity(shots as usize);
        for chunk in chunks {
            outcomes.extend(chunk?);
        }
        Ok(RecordSet {
            seed,
            circuit_hash: self.hash(),
            measurements: self.measurement_count(),
            shots: outcomes,
        })
    }

    /// Applies the gates of a measurement-free circuit to `|0...0>`.
    pub fn final_state(&self) -> Result<QfeState, CircuitError> {
        let mut state = QfeState::new(self.n).map_err(|error| CircuitError::Runtime {
            line: 0,
            error,
        })?;
        for (i, ins) in self.instructions.iter().enumerate() {
            let Instruction::Gate(g) = ins else {
                return Err(CircuitError::Runtime {
                    line: self.line_of(i),
                    error: QfeError::UnexpectedMeasurement,
                });
            };
            state.apply(*g).map_err(|error| CircuitError::Runtime {
                line: self.line_of(i),
                error,
            })?;
        }
        Ok(state)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QUBITS {}", self.n)?;
        for ins in &self.instructions {
            writeln!(f, "{ins}")?;
        }
        Ok(())
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &body[s..i],
                    column: body[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

struct LineParser<'a> {
    line: usize,
    n: usize,
    tokens: Vec<Token<'a>>,
}

impl LineParser<'_> {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn arity(&self, k: usize) -> Result<(), ParseError> {
        if self.tokens.len() != k + 1 {
            let col = self
                .tokens
                .get(k + 1)
                .map_or(self.tokens[0].column, |t| t.column);
            return Err(self.err(
                col,
                format!(
                    "{} expects {k} operand{}, got {}",
                    self.tokens[0].text,
                    if k == 1 { "" } else { "s" },
                    self.tokens.len() - 1
                ),
            ));
        }
        Ok(())
    }

    fn index_at(&self, text: &str, column: usize) -> Result<usize, ParseError> {
        let q: usize = text
            .parse()
            .map_err(|_| self.err(column, format!("invalid qubit index '{text}'")))?;
        if q >= self.n {
            return Err(self.err(
                column,
                format!("qubit {q} out of range for {} qubits", self.n),
            ));
        }
        Ok(q)
    }

    fn qubit(&self, i: usize) -> Result<usize, ParseError> {
        let t = &self.tokens[i];
        self.index_at(t.text, t.column)
    }

    fn pair(&self, what: &str) -> Result<(usize, usize), ParseError> {
        self.arity(2)?;
        let (a, b) = (self.qubit(1)?, self.qubit(2)?);
        if a == b {
            return Err(self.err(self.tokens[2].column, format!("identical {what}")));
        }
        Ok((a, b))
    }

    fn instruction(&self) -> Result<Instruction, ParseError> {
        let op = self.tokens[0].text.to_ascii_uppercase();
        let one = |f: fn(usize) -> Gate| -> Result<Instruction, ParseError> {
            self.arity(1)?;
            Ok(Instruction::Gate(f(self.qubit(1)?)))
        };
        let meas = |basis| -> Result<Instruction, ParseError> {
            self.arity(1)?;
            Ok(Instruction::Measure {
                qubit: self.qubit(1)?,
                basis,
            })
        };
        match op.as_str() {
            "X" => one(Gate::X),
            "Y" => one(Gate::Y),
            "Z" => one(Gate::Z),
            "H" => one(Gate::H),
            "S" => one(Gate::S),
            "SDG" => one(Gate::Sdg),
            "CZ" => self.pair("qubits").map(|(a, b)| Instruction::Gate(Gate::Cz(a, b))),
            "CX" => self
                .pair("control and target")
                .map(|(a, b)| Instruction::Gate(Gate::Cx(a, b))),
            "CY" => self
                .pair("control and target")
                .map(|(a, b)| Instruction::Gate(Gate::Cy(a, b))),
            "MZ" => meas(Basis::Z),
            "MX" => meas(Basis::X),
            "MY" => meas(Basis::Y),
            "MPP" => self.mpp(),
            _ => Err(self.err(
                self.tokens[0].column,
                format!("unknown instruction '{}'", self.tokens[0].text),
            )),
        }
    }

    fn mpp(&self) -> Result<Instruction, ParseError> {
        if self.tokens.len() < 3 {
            return Err(self.err(
                self.tokens[0].column,
                "MPP expects an ancilla and at least one Pauli factor",
            ));
        }
        let ancilla = self.qubit(1)?;
        let mut terms = Vec::new();
        for t in &self.tokens[2..] {
            let mut chars = t.text.chars();
            let letter = match chars.next().map(|c| c.to_ascii_uppercase()) {
                Some('X') => Basis::X,
                Some('Y') => Basis::Y,
                Some('Z') => Basis::Z,
                _ => {
                    return Err(self.err(t.column, format!("invalid Pauli factor '{}'", t.text)))
                }
            };
            let q = self.index_at(chars.as_str(), t.column + 1)?;
            if q == ancilla {
                return Err(self.err(t.column, "ancilla in observable support"));
            }
            if terms.iter().any(|&(p, _)| p == q) {
                return Err(self.err(t.column, format!("qubit {q} repeated in observable")));
            }
            terms.push((q, letter));
        }
        let pauli = PauliString::new(terms).expect("checked above");
        Ok(Instruction::Mpp { ancilla, pauli })
    }
}

/// Parses circuit text.
pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let mut circuit: Option<Circuit> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let tokens = tokenize(raw);
        if tokens.is_empty() {
            continue;
        }
        let Some(c) = circuit.as_mut() else {
            if !tokens[0].text.eq_ignore_ascii_case("QUBITS") {
                return Err(ParseError {
                    line,
                    column: tokens[0].column,
                    message: "expected 'QUBITS <n>' header".into(),
                });
            }
            if tokens.len() != 2 {
                return Err(ParseError {
                    line,
                    column: tokens[0].column,
                    message: "QUBITS expects one operand".into(),
                });
            }
            let n = tokens[1].text.parse::<usize>().ok().filter(|&n| n > 0);
            let Some(n) = n else {
                return Err(ParseError {
                    line,
                    column: tokens[1].column,
                    message: format!("invalid qubit count '{}'", tokens[1].text),
                });
            };
            circuit = Some(Circuit::new(n));
            continue;
        };
        let lp = LineParser {
            line,
            n: c.n,
            tokens,
        };
        if lp.tokens[0].text.eq_ignore_ascii_case("QUBITS") {
            return Err(lp.err(lp.tokens[0].column, "duplicate QUBITS header"));
        }
        c.instructions.push(lp.instruction()?);
        c.lines.push(line);
    }
    circuit.ok_or(ParseError {
        line: text.lines().count().max(1),
        column: 1,
        message: "missing 'QUBITS <n>' header".into(),
    })
}

/// Outcomes of a multi-shot run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordSet {
    pub seed: u64,
    pub circuit_hash: String,
    /// Outcomes per shot.
    pub measurements: usize,
    /// One entry per shot, outcomes in program order.
    pub shots: Vec<Vec<bool>>,
}

impl fmt::Display for RecordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# qfesim records")?;
        writeln!(f, "# seed {}", self.seed)?;
        writeln!(f, "# shots {}", self.shots.len())?;
        writeln!(f, "# measurements {}", self.measurements)?;
        writeln!(f, "# circuit {}", self.circuit_hash)?;
        for shot in &self.shots {
            let line: Vec<&str> = shot.iter().map(|&b| if b { "1" } else { "0" }).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Parses the text written by `RecordSet`'s `Display` impl.
pub fn parse_records(text: &str) -> Result<RecordSet, ParseError> {
    let mut lines = text.lines().enumerate();
    let mut header = |key: &str| -> Result<String, ParseError> {
        let (i, l) = lines.next().ok_or(ParseError {
            line: 0,
            column: 1,
            message: format!("missing '{key}' header"),
        })?;
        let bad = || ParseError {
            line: i + 1,
            column: 1,
            message: format!("expected '# {key} ...' header"),
        };
        let rest = l.strip_prefix("# ").ok_or_else(bad)?;
        if key.is_empty() {
            return Ok(rest.to_string());
        }
        let value = rest
            .strip_prefix(key)
            .and_then(|v| v.strip_prefix(' '))
            .ok_or_else(bad)?;
        Ok(value.to_string())
    };
    let num = |s: String, line: usize| {
        s.parse::<u64>().map_err(|_| ParseError {
            line,
            column: 1,
            message: format!("invalid number '{s}'"),
        })
    };
    if header("")? != "qfesim records" {
        return Err(ParseError {
            line: 1,
            column: 1,
            message: "not a record file".into(),
        });
    }
    let seed = num(header("seed")?, 2)?;
    let shots = num(header("shots")?, 3)? as usize;
    let measurements = num(header("measurements")?, 4)? as usize;
    let circuit_hash = header("circuit")?;
    let mut out = Vec::with_capacity(shots);
    for (i, l) in lines.by_ref().take(shots) {
        let mut shot = Vec::with_capacity(measurements);
        for (k, tok) in l.split_whitespace().enumerate() {
            shot.push(match tok {
                "0" => false,
                "1" => true,
                _ => {
                    return Err(ParseError {
                        line: i + 1,
                        column: 2 * k + 1,
                        message: format!("invalid outcome '{tok}'"),
                    })
                }
            });
        }
        if shot.len() != measurements {
            return Err(ParseError {
                line: i + 1,
                column: 1,
                message: format!("expected {measurements} outcomes, got {}", shot.len()),
            });
        }
        out.push(shot);
    }
    if out.len() != shots {
        return Err(ParseError {
            line: text.lines().count(),
            column: 1,
            message: format!("expected {shots} shots, got {}", out.len()),
        });
    }
    Ok(RecordSet {
        seed,
        circuit_hash,
        measurements,
        shots: out,
    })
}
