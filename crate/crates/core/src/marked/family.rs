//! Equations on the coefficients `C[α][γ]` of the generic marked set whose
//! zeros are the marked bases, truncated at a degree bound.

use super::reduce::{Cones, Reducer, Strategy};
use super::{MarkedPolynomial, MarkedSet};
use crate::coeff::{Coefficient, FamilyPoly, Rational};
use crate::error::{Error, Result};
use crate::monomial::{terms_up_to_degree, Term};
use crate::poly::Polynomial;
use crate::structure::{DisjointSelection, ReductionStructure};

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyEquations {
    /// Parameter `k` is the coefficient of `params[k].1` in `f_{params[k].0}`.
    pub params: Vec<(usize, Term)>,
    /// `C[α][γ]` labels, aligned with `params`.
    pub names: Vec<String>,
    /// Monic, without repetitions, in generation order.
    pub equations: Vec<FamilyPoly>,
    pub bound: u32,
    pub strategy: &'static str,
}

impl FamilyEquations {
    /// The marked set with the parameters specialized to `values`.
    pub fn specialize(&self, rs: &ReductionStructure, values: &[Rational]) -> Result<MarkedSet> {
        if values.len() != self.params.len() {
            return Err(Error::DimensionMismatch { expected: self.params.len(), found: values.len() });
        }
        let n = rs.nvars();
        let mut tails: Vec<Polynomial> = vec![Polynomial::zero(n); rs.len()];
        for ((k, g), v) in self.params.iter().zip(values) {
            tails[*k].add_term(g.clone(), v.clone());
        }
        let polys = rs
            .entries()
            .iter()
            .zip(tails)
            .map(|(e, t)| MarkedPolynomial::new(e.head.clone(), t))
            .collect::<Result<Vec<_>>>()?;
        MarkedSet::new(rs.clone(), polys)
    }

    /// Values of all equations at a point.
    pub fn evaluate(&self, values: &[Rational]) -> Vec<Rational> {
        self.equations.iter().map(|e| e.eval(values)).collect()
    }
}

/// Reduces `x^η f_α` for every `η ∉ τ̄_α` with `deg(η+α) ≤ bound` over the
/// disjoint selection of `rs` and collects the remainder coefficients.
/// With disjoint cones `τ̄ = τ`; otherwise the selection refines `τ` so
/// that the check also covers maximal cones.
pub fn family_equations(rs: &ReductionStructure, bound: u32, budget: u64) -> Result<FamilyEquations> {
    let sel = DisjointSelection::new(rs, rs)?;
    let vars = rs.vars();
    let mut params = Vec::new();
    let mut names = Vec::new();
    let mut polys = Vec::with_capacity(rs.len());
    for (k, e) in rs.entries().iter().enumerate() {
        let mut tail = Polynomial::zero(rs.nvars());
        for g in &e.tail_support {
            tail.add_term(g.clone(), FamilyPoly::param(params.len() as u32));
            names.push(format!("C[{}][{}]", vars.format_term(&e.head), vars.format_term(g)));
            params.push((k, g.clone()));
        }
        polys.push(MarkedPolynomial::new(e.head.clone(), tail)?);
    }
    let ms = MarkedSet::new(rs.clone(), polys)?;
    let mut equations: Vec<FamilyPoly> = Vec::new();
    for (k, e) in rs.entries().iter().enumerate() {
        let Some(top) = bound.checked_sub(e.head.degree()) else { continue };
        for eta in terms_up_to_degree(rs.nvars(), top) {
            if sel.contains(k, &eta) {
                continue;
            }
            let g = ms.multiple(k, &eta);
            let trace = Reducer::new(&ms, Cones::Selection(&sel), &Strategy::FirstMatch).run(&g, budget).map_err(|x| {
                Error::BudgetExceeded {
                    budget: x.steps,
                    context: format!("{} * f[{}]", vars.format_term(&eta), vars.format_term(&e.head)),
                }
            })?;
            for (_, c) in trace.remainder.terms() {
                let m = c.monic();
                if !m.is_zero() && !equations.contains(&m) {
                    equations.push(m);
                }
            }
        }
    }
    Ok(FamilyEquations { params, names, equations, bound, strategy: "disjoint-selection" })
}
