//! Marked polynomials and marked sets over a reduction structure.

mod criteria;
mod family;
mod pairs;
mod reduce;

pub use criteria::{
    basis_test, confluence_test, default_degree_bound, marked_basis_test, membership_degree_bound, stable_checks,
    BasisMethod, BasisOutcome, ConfluenceMethod, ConfluentSet, MarkedBasis,
};
pub use family::{family_equations, FamilyEquations};
pub use pairs::{pair_order, useful_pairs, PairMethod, PairReport, PairStatus, PruneReason};
pub use reduce::{phi_bar, Cones, Exhausted, ReductionTrace, Reducer, Step, Strategy, DEFAULT_BUDGET};

use crate::coeff::{Coefficient, Rational};
use crate::error::{Error, Result};
use crate::monomial::Term;
use crate::poly::Polynomial;
use crate::structure::ReductionStructure;

/// `x^head + tail`, with the head coefficient fixed to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkedPolynomial<C = Rational> {
    pub head: Term,
    pub tail: Polynomial<C>,
}

impl<C: Coefficient> MarkedPolynomial<C> {
    pub fn new(head: Term, tail: Polynomial<C>) -> Result<Self> {
        if tail.contains(&head) {
            return Err(Error::InvalidMarkedSet(format!("head {head} appears in its own tail")));
        }
        if tail.nvars() != head.nvars() {
            return Err(Error::DimensionMismatch { expected: head.nvars(), found: tail.nvars() });
        }
        Ok(MarkedPolynomial { head, tail })
    }

    /// Splits a polynomial whose `head` coefficient is 1.
    pub fn from_polynomial(head: Term, mut f: Polynomial<C>) -> Result<Self> {
        match f.remove_term(&head) {
            Some(c) if c == C::one() => MarkedPolynomial::new(head, f),
            _ => Err(Error::InvalidMarkedSet(format!("{head} does not appear with coefficient 1"))),
        }
    }

    pub fn monomial(head: Term) -> Self {
        let n = head.nvars();
        MarkedPolynomial { head, tail: Polynomial::zero(n) }
    }

    /// `x^head + tail` as a polynomial.
    pub fn full(&self) -> Polynomial<C> {
        let mut f = self.tail.clone();
        f.add_term(self.head.clone(), C::one());
        f
    }
}

/// One marked polynomial per entry of a reduction structure, aligned by index.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkedSet<C = Rational> {
    rs: ReductionStructure,
    polys: Vec<MarkedPolynomial<C>>,
    full: Vec<Polynomial<C>>,
}

impl<C: Coefficient> MarkedSet<C> {
    pub fn new(rs: ReductionStructure, polys: Vec<MarkedPolynomial<C>>) -> Result<Self> {
        if polys.len() != rs.len() {
            return Err(Error::InvalidMarkedSet(format!("{} polynomials for {} heads", polys.len(), rs.len())));
        }
        for (k, (p, e)) in polys.iter().zip(rs.entries()).enumerate() {
            if p.head != e.head {
                return Err(Error::InvalidMarkedSet(format!("polynomial {k} is marked on {} instead of {}", p.head, e.head)));
            }
            if let Some(t) = p.tail.support().find(|t| e.tail_support.binary_search_by(|g| crate::monomial::deglex_cmp(g, t)).is_err()) {
                return Err(Error::InvalidMarkedSet(format!(
                    "tail term {} of polynomial {k} is outside its tail support",
                    rs.vars().format_term(t)
                )));
            }
        }
        let full = polys.iter().map(MarkedPolynomial::full).collect();
        Ok(MarkedSet { rs, polys, full })
    }

    /// Marked set with every tail zero.
    pub fn monomial(rs: ReductionStructure) -> Self {
        let polys = rs.entries().iter().map(|e| MarkedPolynomial::monomial(e.head.clone())).collect();
        MarkedSet::new(rs, polys).expect("monomial marked sets are always valid")
    }

    pub fn structure(&self) -> &ReductionStructure {
        &self.rs
    }

    pub fn structure_mut(&mut self) -> &mut ReductionStructure {
        &mut self.rs
    }

    pub fn polys(&self) -> &[MarkedPolynomial<C>] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.rs.nvars()
    }

    /// `f_i` as a full polynomial.
    pub fn poly(&self, i: usize) -> &Polynomial<C> {
        &self.full[i]
    }

    /// `(lcm/x^{α_i})·f_i − (lcm/x^{α_j})·f_j`.
    pub fn s_polynomial(&self, i: usize, j: usize) -> Polynomial<C> {
        let (a, b) = (&self.polys[i].head, &self.polys[j].head);
        let l = a.lcm(b);
        let mut s = self.full[i].shift(&l.checked_div(a).unwrap());
        s.sub_scaled_shifted(&C::one(), &l.checked_div(b).unwrap(), &self.full[j]);
        s
    }

    /// Evaluates `T/T(i,k)·S(i,k) − T/T(i,j)·S(i,j) + T/T(k,j)·S(k,j)` with
    /// `T = lcm(T(i), T(j), T(k))`; it always vanishes.
    pub fn moller_identity_check(&self, i: usize, j: usize, k: usize) -> bool {
        let h = |x: usize| &self.polys[x].head;
        let t = h(i).lcm(h(j)).lcm(h(k));
        let part = |a: usize, b: usize| {
            let l = h(a).lcm(h(b));
            self.s_polynomial(a, b).shift(&t.checked_div(&l).unwrap())
        };
        part(i, k).sub(&part(i, j)).add(&part(k, j)).is_zero()
    }

    /// `x^η · f_i`.
    pub fn multiple(&self, i: usize, eta: &Term) -> Polynomial<C> {
        self.full[i].shift(eta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Vars;
    use crate::structure::{Entry, MultiplierSet};

    fn ms(vars: &Vars, spec: &[(&str, &str, &str)]) -> MarkedSet {
        let entries = spec
            .iter()
            .map(|(h, nm, f)| {
                let head = vars.parse_term(h).unwrap();
                let p = Polynomial::parse(vars, f).unwrap();
                let tail: Vec<Term> = p.support().filter(|t| **t != head).cloned().collect();
                Entry::new(head, tail, MultiplierSet::from_nonmult(&vars.parse_terms(nm).unwrap()))
            })
            .collect();
        let rs = ReductionStructure::new(vars.clone(), entries).unwrap();
        let polys = spec
            .iter()
            .map(|(h, _, f)| {
                MarkedPolynomial::from_polynomial(vars.parse_term(h).unwrap(), Polynomial::parse(vars, f).unwrap()).unwrap()
            })
            .collect();
        MarkedSet::new(rs, polys).unwrap()
    }

    #[test]
    fn s_polynomial_cancels_heads() {
        let v = Vars::default_for(3);
        let f = ms(&v, &[("x", "z", "x"), ("y", "", "y - z"), ("x*z", "", "x*z - z^2")]);
        assert_eq!(f.s_polynomial(0, 1), Polynomial::parse(&v, "x*z").unwrap());
        assert!(f.moller_identity_check(0, 1, 2));
        let v2 = Vars::default_for(2);
        let g = ms(&v2, &[("x^2", "", "x^2 - 1"), ("x*y", "", "x*y"), ("y^2", "", "y^2")]);
        assert_eq!(g.s_polynomial(0, 1), Polynomial::parse(&v2, "-y").unwrap());
    }

    #[test]
    fn rejects_bad_marking() {
        let v = Vars::default_for(2);
        let head = v.parse_term("x").unwrap();
        assert!(MarkedPolynomial::from_polynomial(head.clone(), Polynomial::parse(&v, "2*x + 1").unwrap()).is_err());
        let rs = ReductionStructure::new(v.clone(), vec![Entry::new(head.clone(), vec![], MultiplierSet::all())]).unwrap();
        let p = MarkedPolynomial::from_polynomial(head, Polynomial::parse(&v, "x + 1").unwrap()).unwrap();
        assert!(matches!(MarkedSet::new(rs, vec![p]), Err(Error::InvalidMarkedSet(_))));
    }
}
