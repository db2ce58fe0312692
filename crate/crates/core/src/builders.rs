//! Constructors for the standard families of reduction structures, each
//! returned with its certificates attached and verified.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::monomial::{
    border, finite_escalier, in_ideal, is_janet_complete, is_zero_dimensional, janet_completion, janet_like_completion,
    janet_multiplicative, lex_cmp, nonmultiplicative_powers, pommaret_completion, pommaret_multiplicative,
    terms_of_degree, terms_up_to_degree, Term, Vars,
};
use crate::ordering::{OrderingFunction, TermOrder};
use crate::structure::{staggered_substructure, CertificateKind, Entry, MultiplierSet, ReductionStructure};
use crate::verdict::Mode;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuilderKind {
    Groebner,
    GroebnerReduced,
    Staggered,
    Janet,
    JanetLike,
    /// Tails restricted to terms below the head.
    Pommaret,
    /// Tails are the whole escalier slice of the head's degree.
    PommaretFree,
    Border,
}

impl BuilderKind {
    pub const ALL: [BuilderKind; 8] = [
        BuilderKind::Groebner,
        BuilderKind::GroebnerReduced,
        BuilderKind::Staggered,
        BuilderKind::Janet,
        BuilderKind::JanetLike,
        BuilderKind::Pommaret,
        BuilderKind::PommaretFree,
        BuilderKind::Border,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BuilderKind::Groebner => "groebner",
            BuilderKind::GroebnerReduced => "groebner-reduced",
            BuilderKind::Staggered => "staggered",
            BuilderKind::Janet => "janet",
            BuilderKind::JanetLike => "janet-like",
            BuilderKind::Pommaret => "pommaret",
            BuilderKind::PommaretFree => "pommaret-free",
            BuilderKind::Border => "border",
        }
    }

    pub fn parse(s: &str) -> Result<BuilderKind> {
        BuilderKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown builder {s:?}")))
    }
}

/// List order of the border terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BorderOrder {
    /// Increasing in a term order; carries a stably-ordered certificate.
    Term(TermOrder),
    /// Increasing degree; within a degree the input generators in input
    /// order, then the remaining border terms increasing in lex.
    DegreeThenInput,
}

impl BorderOrder {
    pub fn parse(s: &str) -> Result<BorderOrder> {
        match s {
            "degree-then-input" => Ok(BorderOrder::DegreeThenInput),
            _ => Ok(BorderOrder::Term(TermOrder::parse(s)?)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BuilderSpec {
    pub kind: BuilderKind,
    pub vars: Vars,
    pub generators: Vec<Term>,
    pub order: Option<TermOrder>,
    pub border_order: BorderOrder,
    /// Maximum tail degree, required for infinite tails under orders that
    /// do not compare degree first.
    pub tail_cap: Option<u32>,
    /// Run the matching completion when the generators are not complete.
    pub complete: bool,
}

impl BuilderSpec {
    pub fn new(kind: BuilderKind, vars: Vars, generators: Vec<Term>) -> BuilderSpec {
        BuilderSpec {
            kind,
            vars,
            generators,
            order: None,
            border_order: BorderOrder::Term(TermOrder::Lex),
            tail_cap: None,
            complete: true,
        }
    }

    pub fn with_order(mut self, order: TermOrder) -> Self {
        self.order = Some(order);
        self
    }

    pub fn with_border_order(mut self, order: BorderOrder) -> Self {
        self.border_order = order;
        self
    }

    pub fn with_tail_cap(mut self, cap: u32) -> Self {
        self.tail_cap = Some(cap);
        self
    }

    pub fn without_completion(mut self) -> Self {
        self.complete = false;
        self
    }

    fn order(&self) -> Result<&TermOrder> {
        self.order.as_ref().ok_or_else(|| Error::Builder(format!("{} needs a term order", self.kind.name())))
    }
}

pub fn build(spec: &BuilderSpec) -> Result<ReductionStructure> {
    let n = spec.vars.len();
    if spec.generators.is_empty() {
        return Err(Error::Builder("no generators".into()));
    }
    for g in &spec.generators {
        if g.nvars() != n {
            return Err(Error::DimensionMismatch { expected: n, found: g.nvars() });
        }
    }
    for (i, g) in spec.generators.iter().enumerate() {
        if spec.generators[..i].contains(g) {
            return Err(Error::Builder(format!("repeated generator {}", spec.vars.format_term(g))));
        }
    }
    if let Some(o) = &spec.order {
        o.check_dim(n)?;
    }
    let rs = match spec.kind {
        BuilderKind::Groebner => groebner(spec, false)?,
        BuilderKind::GroebnerReduced => groebner(spec, true)?,
        BuilderKind::Staggered => staggered(spec)?,
        BuilderKind::Janet => janet(spec)?,
        BuilderKind::JanetLike => janet_like(spec)?,
        BuilderKind::Pommaret => pommaret(spec, true)?,
        BuilderKind::PommaretFree => pommaret(spec, false)?,
        BuilderKind::Border => border_structure(spec)?,
    };
    let v = rs.validate(Mode::Exact);
    if !v.is_pass() {
        return Err(Error::Builder(format!("{} produced an invalid structure: {:?}", spec.kind.name(), v.witness)));
    }
    Ok(rs)
}

/// Terms below `alpha` in `order`, up to the tail degree bound, kept by `keep`.
fn lower_terms(
    spec: &BuilderSpec,
    order: &TermOrder,
    alpha: &Term,
    finite_escalier_degree: Option<u32>,
    keep: impl Fn(&Term) -> bool,
) -> Result<Vec<Term>> {
    let d = match (spec.tail_cap, finite_escalier_degree) {
        (Some(c), _) => c,
        (None, _) if order.is_degree_compatible() => alpha.degree(),
        (None, Some(e)) => e,
        (None, None) => {
            return Err(Error::Builder(format!("order {order} does not compare degree first; give a tail degree cap")))
        }
    };
    Ok(terms_up_to_degree(alpha.nvars(), d)
        .into_iter()
        .filter(|g| order.cmp(g, alpha) == Ordering::Less && keep(g))
        .collect())
}

/// Largest escalier degree when the escalier is finite.
fn escalier_degree(n: usize, m: &[Term]) -> Option<u32> {
    if !is_zero_dimensional(n, m) {
        return None;
    }
    finite_escalier(n, m).ok().map(|e| e.iter().map(Term::degree).max().unwrap_or(0))
}

fn certify(rs: &mut ReductionStructure, kind: CertificateKind, order: &TermOrder) -> Result<()> {
    let v = rs.attach_certificate(kind.clone(), OrderingFunction::Identity(order.clone()), Mode::Exact)?;
    if v.is_pass() {
        Ok(())
    } else {
        Err(Error::Builder(format!("{} certificate for {order} failed: {:?}", kind.as_str(), v.witness)))
    }
}

fn groebner_tails(spec: &BuilderSpec, reduced: bool) -> Result<Vec<(Term, Vec<Term>)>> {
    let order = spec.order()?;
    let n = spec.vars.len();
    let m = &spec.generators;
    let esc = if reduced { escalier_degree(n, m) } else { None };
    m.iter()
        .map(|a| Ok((a.clone(), lower_terms(spec, order, a, esc, |g| !reduced || !in_ideal(m, g))?)))
        .collect()
}

fn groebner(spec: &BuilderSpec, reduced: bool) -> Result<ReductionStructure> {
    let entries = groebner_tails(spec, reduced)?
        .into_iter()
        .map(|(h, t)| Entry::new(h, t, MultiplierSet::all()))
        .collect();
    let mut rs = ReductionStructure::new(spec.vars.clone(), entries)?.with_tail_cap(spec.tail_cap);
    certify(&mut rs, CertificateKind::Ordered, spec.order()?)?;
    Ok(rs)
}

fn staggered(spec: &BuilderSpec) -> Result<ReductionStructure> {
    let order = spec.order()?;
    let mut entries = groebner_tails(spec, false)?;
    entries.sort_by(|a, b| order.cmp(&a.0, &b.0));
    let mut rs = staggered_substructure(spec.vars.clone(), entries, true)?.with_tail_cap(spec.tail_cap);
    certify(&mut rs, CertificateKind::Ordered, order)?;
    Ok(rs)
}

fn completed(spec: &BuilderSpec, is_complete: bool, completion: impl Fn() -> Result<Vec<Term>>, what: &str) -> Result<Vec<Term>> {
    if is_complete {
        Ok(spec.generators.clone())
    } else if spec.complete {
        completion()
    } else {
        Err(Error::Builder(format!("the generators are not {what}")))
    }
}

fn janet(spec: &BuilderSpec) -> Result<ReductionStructure> {
    let order = spec.order()?;
    let n = spec.vars.len();
    let m = completed(spec, is_janet_complete(n, &spec.generators), || janet_completion(n, &spec.generators), "Janet-complete")?;
    let mut entries = Vec::with_capacity(m.len());
    for a in &m {
        let tail: Vec<Term> = terms_of_degree(n, a.degree())
            .into_iter()
            .filter(|g| order.cmp(g, a) == Ordering::Less && !in_ideal(&m, g))
            .collect();
        let mu = janet_multiplicative(&m, a)?;
        entries.push(Entry::new(a.clone(), tail, MultiplierSet::from_variables(n, mu)));
    }
    let mut rs = ReductionStructure::new(spec.vars.clone(), entries)?;
    certify(&mut rs, CertificateKind::Ordered, order)?;
    Ok(rs)
}

fn janet_like(spec: &BuilderSpec) -> Result<ReductionStructure> {
    let order = spec.order()?;
    let n = spec.vars.len();
    let full = janet_like_completion(n, &spec.generators)?;
    let m = completed(spec, full.len() == spec.generators.len(), || Ok(full.clone()), "complete for the Janet-like division")?;
    let esc = escalier_degree(n, &m);
    let mut entries = Vec::with_capacity(m.len());
    for a in &m {
        let tail = lower_terms(spec, order, a, esc, |g| !in_ideal(&m, g))?;
        let nmp = nonmultiplicative_powers(&m, a)?;
        entries.push(Entry::new(a.clone(), tail, MultiplierSet::from_nonmult(&nmp)));
    }
    let mut rs = ReductionStructure::new(spec.vars.clone(), entries)?.with_tail_cap(spec.tail_cap);
    certify(&mut rs, CertificateKind::Ordered, order)?;
    Ok(rs)
}

fn pommaret(spec: &BuilderSpec, coherent: bool) -> Result<ReductionStructure> {
    let n = spec.vars.len();
    let full = pommaret_completion(n, &spec.generators)?;
    let is_complete = full.len() == spec.generators.len() && full.iter().all(|t| spec.generators.contains(t));
    let m = completed(spec, is_complete, || Ok(full.clone()), "Pommaret-complete")?;
    let order = if coherent { Some(spec.order()?) } else { None };
    let mut entries = Vec::with_capacity(m.len());
    for a in &m {
        let tail: Vec<Term> = terms_of_degree(n, a.degree())
            .into_iter()
            .filter(|g| !in_ideal(&m, g) && order.is_none_or(|o| o.cmp(g, a) == Ordering::Less))
            .collect();
        entries.push(Entry::new(a.clone(), tail, MultiplierSet::from_variables(n, pommaret_multiplicative(a))));
    }
    let mut rs = ReductionStructure::new(spec.vars.clone(), entries)?;
    certify(&mut rs, CertificateKind::StablyOrdered, &TermOrder::Lex)?;
    if let Some(o) = order {
        certify(&mut rs, CertificateKind::Ordered, o)?;
    }
    Ok(rs)
}

/// Border list in the requested order.
pub fn ordered_border(n: usize, generators: &[Term], order: &BorderOrder) -> Result<Vec<Term>> {
    let mut b = border(n, generators)?;
    match order {
        BorderOrder::Term(o) => b.sort_by(|x, y| o.cmp(x, y)),
        BorderOrder::DegreeThenInput => b.sort_by(|x, y| {
            let rank = |t: &Term| generators.iter().position(|g| g == t).unwrap_or(usize::MAX);
            x.degree().cmp(&y.degree()).then_with(|| rank(x).cmp(&rank(y))).then_with(|| lex_cmp(x, y))
        }),
    }
    Ok(b)
}

fn border_structure(spec: &BuilderSpec) -> Result<ReductionStructure> {
    let n = spec.vars.len();
    if !is_zero_dimensional(n, &spec.generators) {
        return Err(Error::NotZeroDimensional);
    }
    let b = ordered_border(n, &spec.generators, &spec.border_order)?;
    let esc = finite_escalier(n, &spec.generators)?;
    // Later border terms take precedence: N_{α_i} = mingens{max(α_j − α_i, 0) : j > i}.
    let entries: Vec<Entry> = b
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let gens: Vec<Term> = b[i + 1..].iter().map(|c| c.saturating_sub(a)).collect();
            Entry::new(a.clone(), esc.clone(), MultiplierSet::from_nonmult(&gens))
        })
        .collect();
    let mut rs = ReductionStructure::new(spec.vars.clone(), entries)?;
    if let BorderOrder::Term(o) = &spec.border_order {
        certify(&mut rs, CertificateKind::StablyOrdered, o)?;
    }
    Ok(rs)
}
