//! The rewriting engine `g → g − c·x^η·f_α` with strategies, budgets and
//! replayable traces.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::MarkedSet;
use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::monomial::{degrevlex_cmp, Term};
use crate::ordering::{OrderingFunction, PhiValue};
use crate::poly::Polynomial;
use crate::structure::{DisjointSelection, ReductionStructure};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Which reducible term and which entry the next step uses.
#[derive(Clone, Debug, PartialEq)]
pub enum Strategy {
    /// Smallest entry index, then the largest term in degrevlex.
    FirstMatch,
    /// Largest `φ`-value, then as `FirstMatch`.
    MaxPhi(OrderingFunction),
    /// Uniform over all (term, entry) choices.
    Random(u64),
}

impl Strategy {
    pub fn name(&self) -> String {
        match self {
            Strategy::FirstMatch => "first-match".into(),
            Strategy::MaxPhi(_) => "max-phi".into(),
            Strategy::Random(seed) => format!("random({seed})"),
        }
    }
}

/// The cones a reduction may use: those of the structure, or a disjoint selection of them.
#[derive(Clone, Copy, Debug)]
pub enum Cones<'a> {
    Structure(&'a ReductionStructure),
    Selection(&'a DisjointSelection),
}

impl Cones<'_> {
    /// `(entry, η)` for every cone containing `t`.
    pub fn owners(&self, t: &Term) -> Vec<(usize, Term)> {
        match self {
            Cones::Structure(rs) => rs.owners(t),
            Cones::Selection(sel) => sel.owner(t).into_iter().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Step<C> {
    pub entry: usize,
    pub multiplier: Term,
    pub coefficient: C,
    /// `x^{η+α}`, present in the reduced polynomial with `coefficient`.
    pub term: Term,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionTrace<C> {
    pub steps: Vec<Step<C>>,
    pub remainder: Polynomial<C>,
}

impl<C: Coefficient> ReductionTrace<C> {
    /// Reapplies the steps to `g`, checking each one, and returns the result.
    pub fn replay(&self, ms: &MarkedSet<C>, g: &Polynomial<C>) -> Result<Polynomial<C>> {
        let mut h = g.clone();
        for (k, s) in self.steps.iter().enumerate() {
            let head = &ms.polys()[s.entry].head;
            if head.mul(&s.multiplier) != s.term || h.coeff(&s.term) != Some(&s.coefficient) {
                return Err(Error::Malformed(format!("step {k} does not apply")));
            }
            h.sub_scaled_shifted(&s.coefficient, &s.multiplier, ms.poly(s.entry));
        }
        Ok(h)
    }

    /// Steps with equal `(entry, η)` merged: `g − remainder = Σ c·x^η·f_entry`.
    pub fn representation(&self) -> Vec<(usize, Term, C)> {
        let mut out: Vec<(usize, Term, C)> = Vec::new();
        for s in &self.steps {
            match out.iter_mut().find(|(e, m, _)| *e == s.entry && *m == s.multiplier) {
                Some(slot) => slot.2 = slot.2.add_ref(&s.coefficient),
                None => out.push((s.entry, s.multiplier.clone(), s.coefficient.clone())),
            }
        }
        out.retain(|(_, _, c)| !c.is_zero());
        out
    }

    /// `g − remainder = Σ c·x^η·f` holds exactly.
    pub fn identity_holds(&self, ms: &MarkedSet<C>, g: &Polynomial<C>) -> bool {
        let mut sum = Polynomial::zero(g.nvars());
        for (e, m, c) in self.representation() {
            sum.sub_scaled_shifted(&c.neg_ref(), &m, ms.poly(e));
        }
        g.sub(&self.remainder) == sum
    }
}

/// The budget ran out before reaching a remainder.
#[derive(Clone, Debug, PartialEq)]
pub struct Exhausted<C> {
    pub steps: u64,
    pub current: Polynomial<C>,
}

/// Applies base steps to a polynomial under a fixed strategy.
pub struct Reducer<'a, C> {
    ms: &'a MarkedSet<C>,
    cones: Cones<'a>,
    strategy: &'a Strategy,
    rng: ChaCha8Rng,
}

impl<'a, C: Coefficient> Reducer<'a, C> {
    pub fn new(ms: &'a MarkedSet<C>, cones: Cones<'a>, strategy: &'a Strategy) -> Self {
        let seed = match strategy {
            Strategy::Random(s) => *s,
            _ => 0,
        };
        Reducer { ms, cones, strategy, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Chooses the next step, or `None` when `g` is reduced.
    pub fn choose(&mut self, g: &Polynomial<C>) -> Option<Step<C>> {
        let mut terms: Vec<&Term> = g.support().collect();
        terms.sort_by(|a, b| degrevlex_cmp(b, a));
        let (entry, multiplier, term) = match self.strategy {
            Strategy::FirstMatch => {
                let mut best: Option<(usize, Term, &Term)> = None;
                for t in terms {
                    if let Some((k, eta)) = self.cones.owners(t).into_iter().next() {
                        if best.as_ref().is_none_or(|b| k < b.0) {
                            best = Some((k, eta, t));
                        }
                    }
                }
                best?
            }
            Strategy::MaxPhi(phi) => {
                let mut best: Option<(usize, Term, &Term)> = None;
                for t in terms {
                    if let Some((k, eta)) = self.cones.owners(t).into_iter().next() {
                        let better = match &best {
                            None => true,
                            Some(b) => match phi.cmp_terms(t, b.2) {
                                Ordering::Greater => true,
                                Ordering::Equal => k < b.0,
                                Ordering::Less => false,
                            },
                        };
                        if better {
                            best = Some((k, eta, t));
                        }
                    }
                }
                best?
            }
            Strategy::Random(_) => {
                let all: Vec<(usize, Term, &Term)> = terms
                    .into_iter()
                    .flat_map(|t| self.cones.owners(t).into_iter().map(move |(k, eta)| (k, eta, t)))
                    .collect();
                if all.is_empty() {
                    return None;
                }
                let i = self.rng.gen_range(0..all.len());
                all.into_iter().nth(i).unwrap()
            }
        };
        let coefficient = g.coeff(term).unwrap().clone();
        Some(Step { entry, multiplier, coefficient, term: term.clone() })
    }

    pub fn apply(&self, g: &mut Polynomial<C>, step: &Step<C>) {
        g.sub_scaled_shifted(&step.coefficient, &step.multiplier, self.ms.poly(step.entry));
    }

    /// One base step: `Some((h, step))`, or `None` when `supp(g) ⊆ N(J)` for these cones.
    pub fn step(&mut self, g: &Polynomial<C>) -> Option<(Polynomial<C>, Step<C>)> {
        let step = self.choose(g)?;
        let mut h = g.clone();
        self.apply(&mut h, &step);
        Some((h, step))
    }

    /// Steps until reduced or until `budget` steps were taken.
    pub fn run(&mut self, g: &Polynomial<C>, budget: u64) -> std::result::Result<ReductionTrace<C>, Exhausted<C>> {
        let mut h = g.clone();
        let mut steps = Vec::new();
        while let Some(step) = self.choose(&h) {
            if steps.len() as u64 == budget {
                return Err(Exhausted { steps: budget, current: h });
            }
            self.apply(&mut h, &step);
            steps.push(step);
        }
        Ok(ReductionTrace { steps, remainder: h })
    }
}

impl<C: Coefficient> MarkedSet<C> {
    /// Full reduction with the cones of the structure.
    pub fn reduce(
        &self,
        g: &Polynomial<C>,
        strategy: &Strategy,
        budget: u64,
    ) -> std::result::Result<ReductionTrace<C>, Exhausted<C>> {
        Reducer::new(self, Cones::Structure(self.structure()), strategy).run(g, budget)
    }

    /// Full reduction with the cones of a disjoint selection.
    pub fn reduce_selected(
        &self,
        sel: &DisjointSelection,
        g: &Polynomial<C>,
        budget: u64,
    ) -> std::result::Result<ReductionTrace<C>, Exhausted<C>> {
        Reducer::new(self, Cones::Selection(sel), &Strategy::FirstMatch).run(g, budget)
    }

    /// The unique remainder of `g`; requires disjoint cones.
    pub fn canonical_form(&self, g: &Polynomial<C>, budget: u64) -> Result<Polynomial<C>> {
        if !self.structure().has_disjoint_cones() {
            return Err(Error::Precondition("canonical forms need disjoint cones or a passed confluence test".into()));
        }
        self.reduce(g, &Strategy::FirstMatch, budget)
            .map(|t| t.remainder)
            .map_err(|e| Error::BudgetExceeded { budget: e.steps, context: "canonical form".into() })
    }
}

/// `φ̄(f)` with terms outside `(M)` sent to the bottom element.
pub fn phi_bar<C: Coefficient>(phi: &OrderingFunction, rs: &ReductionStructure, f: &Polynomial<C>) -> Vec<PhiValue> {
    f.support().map(|t| if rs.in_ideal(t) { phi.eval(t) } else { PhiValue::Bottom }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marked::MarkedPolynomial;
    use crate::monomial::Vars;
    use crate::structure::{Entry, MultiplierSet};

    fn example6() -> (Vars, MarkedSet) {
        let v = Vars::default_for(2);
        let t = |s: &str| v.parse_term(s).unwrap();
        let rs = ReductionStructure::new(
            v.clone(),
            vec![
                Entry::new(t("x^2"), vec![t("x")], MultiplierSet::all()),
                Entry::new(t("x*y"), vec![], MultiplierSet::from_nonmult(&[t("x^2")])),
            ],
        )
        .unwrap();
        let p = |h: &str, f: &str| MarkedPolynomial::from_polynomial(t(h), Polynomial::parse(&v, f).unwrap()).unwrap();
        let ms = MarkedSet::new(rs, vec![p("x^2", "x^2 - x"), p("x*y", "x*y")]).unwrap();
        (v, ms)
    }

    #[test]
    fn two_reduction_paths() {
        let (v, ms) = example6();
        let g = Polynomial::parse(&v, "x^2*y - x*y").unwrap();
        let mut r = Reducer::new(&ms, Cones::Structure(ms.structure()), &Strategy::FirstMatch);
        let (h, step) = r.step(&g).unwrap();
        assert_eq!((step.entry, step.multiplier.clone()), (0, v.parse_term("y").unwrap()));
        assert!(h.is_zero());

        let trace = ms.reduce(&g, &Strategy::MaxPhi(OrderingFunction::Identity(crate::TermOrder::DegLex)), 10).unwrap();
        assert!(trace.remainder.is_zero());
        assert!(trace.identity_holds(&ms, &g));
        assert_eq!(trace.replay(&ms, &g).unwrap(), trace.remainder);
    }

    #[test]
    fn reduced_input_is_untouched() {
        let (v, ms) = example6();
        let g = Polynomial::parse(&v, "y^3 + x - 2").unwrap();
        let trace = ms.reduce(&g, &Strategy::FirstMatch, 5).unwrap();
        assert!(trace.steps.is_empty());
        assert_eq!(trace.remainder, g);
    }

    #[test]
    fn budget_exhaustion() {
        let v = Vars::default_for(1);
        let x = v.parse_term("x").unwrap();
        let rs = ReductionStructure::new(v.clone(), vec![Entry::new(x.clone(), vec![v.parse_term("x^2").unwrap()], MultiplierSet::all())])
            .unwrap();
        let f = MarkedPolynomial::from_polynomial(x, Polynomial::parse(&v, "x - x^2").unwrap()).unwrap();
        let ms = MarkedSet::new(rs, vec![f]).unwrap();
        let out = ms.reduce(&Polynomial::parse(&v, "x").unwrap(), &Strategy::FirstMatch, 50);
        assert_eq!(out.unwrap_err().steps, 50);
    }
}
