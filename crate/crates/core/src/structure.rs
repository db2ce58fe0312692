//! Reduction structures `(M, λ, τ)`: heads, finite tail supports and
//! multiplier sets stored as complements of finitely generated semigroup
//! ideals.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::monomial::{
    box_terms, cone_cofactor, cover_box, deglex_cmp, first_uncovered, in_ideal, minimal_generators,
    terms_up_to_degree, Term, VariableSet, Vars,
};
use crate::ordering::{verify_ordered, verify_stably_ordered, OrderingFunction, TermOrder};
use crate::verdict::{Mode, Verdict, Witness};

/// `τ = T \ ⟨nonmult⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiplierSet {
    nonmult: Vec<Term>,
}

impl MultiplierSet {
    /// `τ = T`.
    pub fn all() -> MultiplierSet {
        MultiplierSet { nonmult: Vec::new() }
    }

    /// Minimalizes and sorts the generators.
    pub fn from_nonmult(terms: &[Term]) -> MultiplierSet {
        MultiplierSet { nonmult: minimal_generators(terms).into_terms() }
    }

    /// `τ = T[μ]`.
    pub fn from_variables(n: usize, mu: VariableSet) -> MultiplierSet {
        let nonmult: Vec<Term> = mu.complement(n).iter().map(|i| Term::var(n, i)).collect();
        MultiplierSet::from_nonmult(&nonmult)
    }

    pub fn nonmult(&self) -> &[Term] {
        &self.nonmult
    }

    pub fn contains(&self, eta: &Term) -> bool {
        !in_ideal(&self.nonmult, eta)
    }

    pub fn is_all(&self) -> bool {
        self.nonmult.is_empty()
    }

    /// `Some(μ)` when `τ = T[μ]`.
    pub fn multiplicative_variables(&self, n: usize) -> Option<VariableSet> {
        let mut non = VariableSet::empty();
        for t in &self.nonmult {
            if t.degree() != 1 {
                return None;
            }
            non.insert(t.max_variable().unwrap());
        }
        Some(non.complement(n))
    }

    /// `self ⊆ other`, i.e. `⟨other.nonmult⟩ ⊆ ⟨self.nonmult⟩`.
    pub fn is_subset_of(&self, other: &MultiplierSet) -> bool {
        other.nonmult.iter().all(|g| in_ideal(&self.nonmult, g))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub head: Term,
    /// Sorted increasingly in deglex, without repetitions.
    pub tail_support: Vec<Term>,
    pub multipliers: MultiplierSet,
}

impl Entry {
    pub fn new(head: Term, tail_support: Vec<Term>, multipliers: MultiplierSet) -> Entry {
        let mut tail_support = tail_support;
        tail_support.sort_by(deglex_cmp);
        tail_support.dedup();
        Entry { head, tail_support, multipliers }
    }

    /// `η` with `t = x^head·x^η`, `η ∈ τ`.
    pub fn cone_cofactor(&self, t: &Term) -> Option<Term> {
        cone_cofactor(&self.head, self.multipliers.nonmult(), t)
    }

    pub fn in_cone(&self, t: &Term) -> bool {
        self.cone_cofactor(t).is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    /// `φ(α+η) ≻ φ(γ+η)` for every head, tail term and multiplier.
    Ordered,
    /// The four stably-ordered axioms for `ψ`.
    StablyOrdered,
}

impl CertificateKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CertificateKind::Ordered => "ordered",
            CertificateKind::StablyOrdered => "stably-ordered",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub function: OrderingFunction,
    pub mode: Mode,
    /// Result of re-running the verification when the certificate was attached.
    pub verified: bool,
}

impl Certificate {
    pub fn is_exact(&self) -> bool {
        self.verified && self.mode == Mode::Exact
    }

    /// Certifies `φ(δ) ≻ φ(δ′) ⇒ φ(δ+ε) ≻ φ(δ′+ε) ⪰ φ(ε)`: exact ordering by
    /// a term order or a weight order.
    pub fn gives_translation_condition(&self) -> bool {
        self.kind == CertificateKind::Ordered && self.is_exact() && self.function.is_term_order()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionStructure {
    vars: Vars,
    entries: Vec<Entry>,
    tail_cap: Option<u32>,
    certificates: Vec<Certificate>,
}

impl ReductionStructure {
    pub fn new(vars: Vars, entries: Vec<Entry>) -> Result<ReductionStructure> {
        let n = vars.len();
        for (k, e) in entries.iter().enumerate() {
            let dims = std::iter::once(&e.head).chain(&e.tail_support).chain(e.multipliers.nonmult());
            for t in dims {
                if t.nvars() != n {
                    return Err(Error::Malformed(format!(
                        "entry {k}: term with {} variables in a structure over {n}",
                        t.nvars()
                    )));
                }
            }
        }
        if entries.is_empty() {
            return Err(Error::Malformed("no entries".into()));
        }
        Ok(ReductionStructure { vars, entries, tail_cap: None, certificates: Vec::new() })
    }

    pub fn with_tail_cap(mut self, cap: Option<u32>) -> Self {
        self.tail_cap = cap;
        self
    }

    pub fn tail_cap(&self) -> Option<u32> {
        self.tail_cap
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &Entry {
        &self.entries[i]
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn heads(&self) -> Vec<Term> {
        self.entries.iter().map(|e| e.head.clone()).collect()
    }

    pub fn position(&self, head: &Term) -> Option<usize> {
        self.entries.iter().position(|e| &e.head == head)
    }

    pub fn in_ideal(&self, t: &Term) -> bool {
        self.entries.iter().any(|e| e.head.divides(t))
    }

    /// Entries whose cone contains `t`, with cofactors.
    pub fn owners(&self, t: &Term) -> Vec<(usize, Term)> {
        self.entries.iter().enumerate().filter_map(|(k, e)| e.cone_cofactor(t).map(|eta| (k, eta))).collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.entries
            .iter()
            .flat_map(|e| std::iter::once(&e.head).chain(&e.tail_support))
            .map(Term::degree)
            .max()
            .unwrap_or(0)
    }

    /// Default bound for bounded verification: max degree over heads and tails plus `2n`.
    pub fn default_bound(&self) -> u32 {
        self.max_degree() + 2 * self.nvars() as u32
    }

    pub fn certificates(&self) -> &[Certificate] {
        &self.certificates
    }

    /// Verifies and records a certificate; unverified certificates are kept
    /// but never used.
    pub fn attach_certificate(&mut self, kind: CertificateKind, function: OrderingFunction, mode: Mode) -> Result<Verdict> {
        let verdict = match kind {
            CertificateKind::Ordered => verify_ordered(self, &function, mode)?,
            CertificateKind::StablyOrdered => verify_stably_ordered(self, &function, mode)?,
        };
        let verified = verdict.status.is_pass();
        self.certificates.retain(|c| !(c.kind == kind && c.function == function));
        self.certificates.push(Certificate { kind, function, mode, verified });
        Ok(verdict)
    }

    pub fn clear_certificates(&mut self) {
        self.certificates.clear();
    }

    /// A verified ordering certificate (exact or bounded).
    pub fn ordering_certificate(&self) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.kind == CertificateKind::Ordered && c.verified)
    }

    pub fn stable_certificate(&self) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.kind == CertificateKind::StablyOrdered && c.is_exact())
    }

    /// An exact certificate for the translation condition used by the
    /// S-polynomial criteria.
    pub fn translation_certificate(&self) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.gives_translation_condition())
    }

    /// Any verified evidence of noetherianity.
    pub fn noetherian_certificate(&self) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.verified)
    }

    /// Head distinctness, tails outside their cones, and `⋃ cone = (M)`.
    pub fn validate(&self, mode: Mode) -> Verdict {
        let method = match mode {
            Mode::Exact => "exact".to_string(),
            Mode::Bounded(d) => format!("bounded({d})"),
        };
        let mut seen = BTreeSet::new();
        for (k, e) in self.entries.iter().enumerate() {
            if !seen.insert(&e.head) {
                return Verdict::fail(method, Witness::DuplicateHead { entry: k, head: e.head.clone() });
            }
        }
        for (k, e) in self.entries.iter().enumerate() {
            if let Some(t) = e.tail_support.iter().find(|t| e.in_cone(t)) {
                return Verdict::fail(method, Witness::TailInCone { entry: k, tail: t.clone() });
            }
        }
        let uncovered = match mode {
            Mode::Exact => {
                let heads = self.heads();
                let nonmults: Vec<&[Term]> = self.entries.iter().map(|e| e.multipliers.nonmult()).collect();
                first_uncovered(self.nvars(), &heads, &nonmults)
            }
            Mode::Bounded(d) => terms_up_to_degree(self.nvars(), d)
                .into_iter()
                .find(|t| self.in_ideal(t) && self.owners(t).is_empty()),
        };
        match (uncovered, mode) {
            (Some(term), _) => Verdict::fail(method, Witness::Uncovered { term }),
            (None, Mode::Exact) => Verdict::pass(method),
            (None, Mode::Bounded(_)) => Verdict::bounded_pass(method),
        }
    }

    /// First pair of entries with intersecting cones. Two cones meet iff
    /// the lcm of their heads lies in both, because each cone is a
    /// translate of a down-closed set.
    pub fn overlapping_cones(&self) -> Option<(usize, usize)> {
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let l = self.entries[i].head.lcm(&self.entries[j].head);
                if self.entries[i].in_cone(&l) && self.entries[j].in_cone(&l) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn has_disjoint_cones(&self) -> bool {
        self.overlapping_cones().is_none()
    }

    pub fn has_maximal_cones(&self) -> bool {
        self.entries.iter().all(|e| e.multipliers.is_all())
    }

    /// `∀α ∀γ ∈ λ_α: α ≻ γ`; the first violating `(α, γ)` otherwise.
    pub fn order_violation(&self, order: &TermOrder) -> Option<(Term, Term)> {
        for e in &self.entries {
            for g in &e.tail_support {
                if order.cmp(&e.head, g) != std::cmp::Ordering::Greater {
                    return Some((e.head.clone(), g.clone()));
                }
            }
        }
        None
    }

    pub fn classify(&self, order: Option<&TermOrder>) -> ClassificationReport {
        let n = self.nvars();
        let heads = self.heads();
        let multiplicative: Vec<Option<VariableSet>> =
            self.entries.iter().map(|e| e.multipliers.multiplicative_variables(n)).collect();
        ClassificationReport {
            homogeneous: self.entries.iter().all(|e| e.tail_support.iter().all(|g| g.degree() == e.head.degree())),
            reduced_tails: self.entries.iter().all(|e| e.tail_support.iter().all(|g| !in_ideal(&heads, g))),
            maximal_cones: self.has_maximal_cones(),
            disjoint_cones: self.has_disjoint_cones(),
            multiplicative_variables: multiplicative.iter().all(Option::is_some),
            multiplicative,
            consistent_with: order.map(|o| self.order_violation(o).is_none()),
        }
    }

    /// `self ⊆ other`: same heads and tails, each `τ` contained in the other's.
    pub fn is_substructure_of(&self, other: &ReductionStructure) -> Result<bool> {
        if self.len() != other.len() || self.nvars() != other.nvars() {
            return Err(Error::Malformed("structures have different heads".into()));
        }
        for (a, b) in self.entries.iter().zip(&other.entries) {
            if a.head != b.head || a.tail_support != b.tail_support {
                return Err(Error::Malformed(format!("entries for {} differ in head or tail", a.head)));
            }
        }
        Ok(self.entries.iter().zip(&other.entries).all(|(a, b)| a.multipliers.is_subset_of(&b.multipliers)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub homogeneous: bool,
    pub reduced_tails: bool,
    pub maximal_cones: bool,
    pub disjoint_cones: bool,
    pub multiplicative_variables: bool,
    /// Per entry, `μ_α` when `τ_α = T[μ_α]`.
    pub multiplicative: Vec<Option<VariableSet>>,
    pub consistent_with: Option<bool>,
}

/// Reorders heads so that no head is a multiple of an earlier one, keeping
/// the input order wherever possible: multiples move before their divisors.
pub fn staggered_order(heads: &[Term]) -> Vec<usize> {
    let k = heads.len();
    let mut placed = vec![false; k];
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        // Lowest-index head whose proper multiples are all placed.
        let next = (0..k)
            .find(|&i| !placed[i] && (0..k).all(|j| placed[j] || j == i || !heads[i].divides(&heads[j])))
            .expect("divisibility is acyclic on distinct heads");
        placed[next] = true;
        out.push(next);
    }
    out
}

/// Disjoint-cone structure with `N′_{α_{r+1}} = mingens{max(α_i − α_{r+1}, 0) : i ≤ r}`.
///
/// Without `reorder`, a head that is a multiple of an earlier head is an
/// error; with it, entries are stably reordered first.
pub fn staggered_substructure(vars: Vars, entries: Vec<(Term, Vec<Term>)>, reorder: bool) -> Result<ReductionStructure> {
    let heads: Vec<Term> = entries.iter().map(|e| e.0.clone()).collect();
    for (i, a) in heads.iter().enumerate() {
        for b in &heads[..i] {
            if a == b {
                return Err(Error::Malformed(format!("repeated head {a}")));
            }
        }
    }
    let order: Vec<usize> = match heads.iter().enumerate().find_map(|(i, a)| {
        heads[i + 1..].iter().find(|b| a.divides(b)).map(|b| (a.clone(), b.clone()))
    }) {
        None => (0..heads.len()).collect(),
        Some(_) if reorder => staggered_order(&heads),
        Some((a, b)) => {
            return Err(Error::OrderingViolation(format!(
                "{} is a multiple of the earlier head {}",
                vars.format_term(&b),
                vars.format_term(&a)
            )))
        }
    };
    let mut slots: Vec<Option<(Term, Vec<Term>)>> = entries.into_iter().map(Some).collect();
    let ordered: Vec<(Term, Vec<Term>)> = order.iter().map(|&i| slots[i].take().unwrap()).collect();
    let mut out = Vec::with_capacity(ordered.len());
    for (r, (head, tail)) in ordered.iter().enumerate() {
        let gens: Vec<Term> = ordered[..r].iter().map(|(a, _)| a.saturating_sub(head)).collect();
        out.push(Entry::new(head.clone(), tail.clone(), MultiplierSet::from_nonmult(&gens)));
    }
    ReductionStructure::new(vars, out)
}

/// Assignment of every term of `(M)` to the earliest entry of a
/// noetherian substructure whose cone contains it.
#[derive(Clone, Debug)]
pub struct DisjointSelection {
    base: ReductionStructure,
}

impl DisjointSelection {
    /// `noetherian` must be a substructure of `rs` carrying verified evidence of noetherianity.
    pub fn new(rs: &ReductionStructure, noetherian: &ReductionStructure) -> Result<DisjointSelection> {
        if !noetherian.is_substructure_of(rs)? {
            return Err(Error::Precondition("the given structure is not a substructure".into()));
        }
        if noetherian.noetherian_certificate().is_none() {
            return Err(Error::MissingCertificate("the substructure has no verified ordering certificate".into()));
        }
        Ok(DisjointSelection { base: noetherian.clone() })
    }

    pub fn structure(&self) -> &ReductionStructure {
        &self.base
    }

    /// `(k, η)` with `δ = α_k + η` and `k` the earliest entry whose cone contains `δ`.
    pub fn owner(&self, delta: &Term) -> Option<(usize, Term)> {
        self.base.entries.iter().enumerate().find_map(|(k, e)| e.cone_cofactor(delta).map(|eta| (k, eta)))
    }

    /// `η ∈ τ̄_k`.
    pub fn contains(&self, k: usize, eta: &Term) -> bool {
        let delta = self.base.entries[k].head.mul(eta);
        matches!(self.owner(&delta), Some((j, _)) if j == k)
    }

    /// The selection as a structure with complement-form multiplier sets,
    /// when every `τ̄_k` is an order ideal. Decided exactly on the box of
    /// [`cover_box`], where every membership threshold lives.
    pub fn to_structure(&self) -> Option<ReductionStructure> {
        let n = self.base.nvars();
        let heads = self.base.heads();
        let nonmults: Vec<&[Term]> = self.base.entries.iter().map(|e| e.multipliers.nonmult()).collect();
        let caps = cover_box(n, &heads, &nonmults);
        let boxed = box_terms(&caps);
        let mut entries = Vec::with_capacity(self.base.len());
        for (k, e) in self.base.entries.iter().enumerate() {
            let outside: Vec<Term> = boxed.iter().filter(|eta| !self.contains(k, eta)).cloned().collect();
            let gens = minimal_generators(&outside).into_terms();
            if boxed.iter().any(|eta| self.contains(k, eta) == in_ideal(&gens, eta)) {
                return None;
            }
            entries.push(Entry::new(e.head.clone(), e.tail_support.clone(), MultiplierSet::from_nonmult(&gens)));
        }
        let mut rs = ReductionStructure::new(self.base.vars.clone(), entries).ok()?;
        rs.tail_cap = self.base.tail_cap;
        Some(rs)
    }
}
