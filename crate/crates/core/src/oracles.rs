//! Query-counting black boxes.
//!
//! Two databases over records `x ∈ [0, 2^n)`: the naive one answers the
//! membership test `f_a(x) = [x = a]`, the sophisticated one the binary inner
//! product `g_a(x) = popcount(x & a) mod 2`. Both respond to `(x, b)` with
//! `b ⊕ f(x)`, classically or as a controlled-NOT onto the ancilla qubit of an
//! `n + 1` qubit register.
//!
//! The hidden answer is private. Search drivers only see the
//! [`ClassicalOracle`] / [`QuantumOracle`] traits, which have no accessor for
//! it; verification code calls the inherent `reveal_answer` methods.

use crate::linalg::{kernels, Amplitude, PureState, MAX_QUBITS};
use crate::{Error, Result};

/// Number of database invocations, split by kind. `reflections` counts the
/// public `f_0` reflection used inside Grover diffusion, which is not a
/// database query.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct QueryLedger {
    pub classical_queries: u64,
    pub quantum_queries: u64,
    pub reflections: u64,
}

impl QueryLedger {
    pub fn database_queries(&self) -> u64 {
        self.classical_queries + self.quantum_queries
    }
}

pub trait ClassicalOracle {
    /// Guess-register width `n`.
    fn width(&self) -> usize;
    /// `(x, b) → b ⊕ f(x)`. Counts one classical query.
    fn query(&mut self, x: usize, b: bool) -> Result<bool>;
    fn ledger(&self) -> QueryLedger;
}

pub trait QuantumOracle {
    fn width(&self) -> usize;
    /// `|x, b⟩ → |x, b ⊕ f(x)⟩` on an `n + 1` qubit register. Counts one
    /// quantum query regardless of the superposition.
    fn apply(&mut self, state: &mut PureState) -> Result<()>;
    /// Diagonal action `|x⟩ → (-1)^{f(x)} |x⟩` on a `2^n`-level amplitude
    /// vector, the image of [`QuantumOracle::apply`] with the ancilla in
    /// `(|0⟩ - |1⟩)/√2`. Counts one quantum query.
    fn apply_phase(&mut self, levels: &mut [Amplitude]) -> Result<()>;
    fn ledger(&self) -> QueryLedger;
}

pub fn query_count<O: ClassicalOracle + ?Sized>(oracle: &O) -> QueryLedger {
    oracle.ledger()
}

fn check_oracle_params(n: usize, answer: usize) -> Result<()> {
    if n == 0 || n >= MAX_QUBITS {
        return Err(Error::InvalidParameter(format!(
            "oracle width {n} outside 1..{MAX_QUBITS}"
        )));
    }
    if answer >= 1 << n {
        return Err(Error::RecordOutOfRange {
            record: answer,
            size: 1 << n,
        });
    }
    Ok(())
}

fn check_record(x: usize, n: usize) -> Result<()> {
    if x >= 1 << n {
        return Err(Error::RecordOutOfRange {
            record: x,
            size: 1 << n,
        });
    }
    Ok(())
}

fn check_register(state: &PureState, n: usize) -> Result<()> {
    if state.num_qubits() != n + 1 {
        return Err(Error::WidthMismatch {
            expected: n + 1,
            found: state.num_qubits(),
        });
    }
    Ok(())
}

fn check_levels(levels: &[Amplitude], n: usize) -> Result<()> {
    if levels.len() != 1 << n {
        return Err(Error::InvalidParameter(format!(
            "expected {} levels, found {}",
            1usize << n,
            levels.len()
        )));
    }
    Ok(())
}

/// Membership database `f_a`.
#[derive(Debug, Clone)]
pub struct NaiveOracle {
    n: usize,
    answer: usize,
    ledger: QueryLedger,
}

impl NaiveOracle {
    pub fn new(n: usize, answer: usize) -> Result<Self> {
        check_oracle_params(n, answer)?;
        Ok(Self {
            n,
            answer,
            ledger: QueryLedger::default(),
        })
    }

    /// For verification harnesses only.
    pub fn reveal_answer(&self) -> usize {
        self.answer
    }

    pub fn width(&self) -> usize {
        self.n
    }

    pub fn ledger(&self) -> QueryLedger {
        self.ledger
    }
}

impl ClassicalOracle for NaiveOracle {
    fn width(&self) -> usize {
        self.n
    }

    fn query(&mut self, x: usize, b: bool) -> Result<bool> {
        check_record(x, self.n)?;
        self.ledger.classical_queries += 1;
        Ok(b ^ (x == self.answer))
    }

    fn ledger(&self) -> QueryLedger {
        self.ledger
    }
}

impl QuantumOracle for NaiveOracle {
    fn width(&self) -> usize {
        self.n
    }

    fn apply(&mut self, state: &mut PureState) -> Result<()> {
        check_register(state, self.n)?;
        self.ledger.quantum_queries += 1;
        state
            .amplitudes_mut()
            .swap(2 * self.answer, 2 * self.answer + 1);
        Ok(())
    }

    fn apply_phase(&mut self, levels: &mut [Amplitude]) -> Result<()> {
        check_levels(levels, self.n)?;
        self.ledger.quantum_queries += 1;
        levels[self.answer] = -levels[self.answer];
        Ok(())
    }

    fn ledger(&self) -> QueryLedger {
        self.ledger
    }
}

/// `x · a mod 2` over n-bit strings.
#[inline]
pub fn inner_product_bit(x: usize, a: usize) -> bool {
    (x & a).count_ones() % 2 == 1
}

/// Inner-product database `g_a`.
#[derive(Debug, Clone)]
pub struct SophisticatedOracle {
    n: usize,
    answer: usize,
    ledger: QueryLedger,
}

impl SophisticatedOracle {
    pub fn new(n: usize, answer: usize) -> Result<Self> {
        check_oracle_params(n, answer)?;
        Ok(Self {
            n,
            answer,
            ledger: QueryLedger::default(),
        })
    }

    /// For verification harnesses only.
    pub fn reveal_answer(&self) -> usize {
        self.answer
    }

    pub fn width(&self) -> usize {
        self.n
    }

    pub fn ledger(&self) -> QueryLedger {
        self.ledger
    }
}

impl ClassicalOracle for SophisticatedOracle {
    fn width(&self) -> usize {
        self.n
    }

    fn query(&mut self, x: usize, b: bool) -> Result<bool> {
        check_record(x, self.n)?;
        self.ledger.classical_queries += 1;
        Ok(b ^ inner_product_bit(x, self.answer))
    }

    fn ledger(&self) -> QueryLedger {
        self.ledger
    }
}

impl QuantumOracle for SophisticatedOracle {
    fn width(&self) -> usize {
        self.n
    }

    fn apply(&mut self, state: &mut PureState) -> Result<()> {
        check_register(state, self.n)?;
        self.ledger.quantum_queries += 1;
        let a = self.answer;
        kernels::flip_last_where(state.amplitudes_mut(), |x| inner_product_bit(x, a));
        Ok(())
    }

    fn apply_phase(&mut self, levels: &mut [Amplitude]) -> Result<()> {
        check_levels(levels, self.n)?;
        self.ledger.quantum_queries += 1;
        let a = self.answer;
        kernels::negate_where(levels, |x| inner_product_bit(x, a));
        Ok(())
    }

    fn ledger(&self) -> QueryLedger {
        self.ledger
    }
}

/// Membership database whose answer is fixed as late as possible: every
/// query of a fresh record misses until one unqueried record remains, which
/// then becomes the answer. Realizes the classical worst case.
#[derive(Debug, Clone)]
pub struct AdversarialNaiveOracle {
    n: usize,
    queried: Vec<bool>,
    unqueried: usize,
    answer: Option<usize>,
    ledger: QueryLedger,
}

impl AdversarialNaiveOracle {
    pub fn new(n: usize) -> Result<Self> {
        check_oracle_params(n, 0)?;
        Ok(Self {
            n,
            queried: vec![false; 1 << n],
            unqueried: 1 << n,
            answer: None,
            ledger: QueryLedger::default(),
        })
    }

    /// The answer once the adversary has been forced to commit.
    pub fn reveal_answer(&self) -> Option<usize> {
        self.answer
    }
}

impl ClassicalOracle for AdversarialNaiveOracle {
    fn width(&self) -> usize {
        self.n
    }

    fn query(&mut self, x: usize, b: bool) -> Result<bool> {
        check_record(x, self.n)?;
        self.ledger.classical_queries += 1;
        if let Some(a) = self.answer {
            return Ok(b ^ (x == a));
        }
        if !self.queried[x] {
            self.queried[x] = true;
            self.unqueried -= 1;
            if self.unqueried == 1 {
                self.answer = self.queried.iter().position(|q| !q);
            }
        }
        Ok(b)
    }

    fn ledger(&self) -> QueryLedger {
        self.ledger
    }
}

/// `f_0`-controlled-NOT on an `n + 1` qubit register: flips the ancilla when
/// the guess register is all zeros. Uses the public constant `a = 0`, so it
/// is not a database query.
pub fn zero_reflection_apply(state: &mut PureState) -> Result<()> {
    if state.num_qubits() < 2 {
        return Err(Error::InvalidParameter(
            "reflection needs a guess register and an ancilla".into(),
        ));
    }
    state.amplitudes_mut().swap(0, 1);
    Ok(())
}
