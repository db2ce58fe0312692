//! Outcomes of decision procedures.

use crate::coeff::Rational;
use crate::monomial::Term;
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    /// Passed every check up to a degree bound; never a certificate.
    BoundedPass,
    BudgetExceeded,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::BoundedPass => "bounded-pass",
            Status::BudgetExceeded => "budget-exceeded",
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Status::Pass | Status::BoundedPass)
    }
}

/// Exact check, or exhaustive enumeration up to a degree bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Bounded(u32),
}

/// Where a checked polynomial came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    /// `s_polynomial(i, j)`.
    SPair { i: usize, j: usize },
    /// `x^multiplier · f_entry`.
    Multiple { entry: usize, multiplier: Term },
}

/// A violated stably-ordered axiom with the data exhibiting it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StableViolation {
    /// `ψ(η) ≻ ψ(1)` fails.
    Positivity { eta: Term },
    /// Translation by `x_var` does not preserve the comparison of `eta` and `other`.
    Translation { eta: Term, other: Term, var: usize },
    /// `x^{η+α} ∈ cone(α')` but `ψ(η) ≻ ψ(η+α−α')` fails.
    ConeOverlap { head: Term, other_head: Term, eta: Term },
    /// `γ ∈ λ_α`, `η ∈ τ_α`, `x^{η+γ} ∈ cone(α')` but `ψ(η) ≻ ψ(η+γ−α')` fails.
    TailDescent { head: Term, tail: Term, other_head: Term, eta: Term },
}

impl StableViolation {
    /// Axiom number 1 to 4.
    pub fn axiom(&self) -> u8 {
        match self {
            StableViolation::Positivity { .. } => 1,
            StableViolation::Translation { .. } => 2,
            StableViolation::ConeOverlap { .. } => 3,
            StableViolation::TailDescent { .. } => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness<C = Rational> {
    DuplicateHead { entry: usize, head: Term },
    TailInCone { entry: usize, tail: Term },
    Uncovered { term: Term },
    /// `φ(α+η) ≻ φ(γ+η)` fails.
    Order { head: Term, tail: Term, multiplier: Term },
    Stable(StableViolation),
    /// A polynomial of the ideal whose full reduction left a nonzero remainder.
    Remainder { origin: Origin, remainder: Polynomial<C> },
    /// A nonzero polynomial of `⟨τF⟩` supported on the escalier.
    Intersection { poly: Polynomial<C> },
    Budget { origin: Origin, steps: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict<C = Rational> {
    pub status: Status,
    pub method: String,
    pub witness: Option<Witness<C>>,
    pub notes: Vec<String>,
}

impl<C> Verdict<C> {
    pub fn pass(method: impl Into<String>) -> Self {
        Verdict { status: Status::Pass, method: method.into(), witness: None, notes: Vec::new() }
    }

    pub fn bounded_pass(method: impl Into<String>) -> Self {
        Verdict { status: Status::BoundedPass, method: method.into(), witness: None, notes: Vec::new() }
    }

    pub fn fail(method: impl Into<String>, witness: Witness<C>) -> Self {
        Verdict { status: Status::Fail, method: method.into(), witness: Some(witness), notes: Vec::new() }
    }

    pub fn budget(method: impl Into<String>, origin: Origin, steps: u64) -> Self {
        Verdict {
            status: Status::BudgetExceeded,
            method: method.into(),
            witness: Some(Witness::Budget { origin, steps }),
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }
}
