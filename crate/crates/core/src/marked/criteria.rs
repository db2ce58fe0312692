//! Decision procedures: confluence of the reduction and the marked-basis
//! property `(F) ⊕ ⟨N(J)⟩ = P`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::pairs::{pair_order, useful_pairs, PairMethod};
use super::reduce::{Cones, Reducer, Strategy};
use super::MarkedSet;
use crate::coeff::Rational;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseRow};
use crate::monomial::{degrevlex_cmp, terms_up_to_degree, Term};
use crate::poly::Polynomial;
use crate::structure::{DisjointSelection, ReductionStructure};
use crate::verdict::{Origin, Verdict, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConfluenceMethod {
    Auto,
    Disjoint,
    SPoly,
    /// `None` uses [`default_degree_bound`].
    DegreeBound(Option<u32>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisMethod {
    Auto,
    SPoly,
    Stable,
    DegreeBound(Option<u32>),
}

fn parse_bounded<T>(s: &str, bound: Option<u32>, named: &[(&str, T)], bounded: impl Fn(Option<u32>) -> T) -> Result<T>
where
    T: Copy,
{
    if s == "degree-bound" {
        return Ok(bounded(bound));
    }
    named
        .iter()
        .find(|(n, _)| *n == s)
        .map(|(_, m)| *m)
        .ok_or_else(|| Error::Parse(format!("unknown method {s:?}")))
}

impl ConfluenceMethod {
    pub fn parse(s: &str, bound: Option<u32>) -> Result<Self> {
        use ConfluenceMethod::*;
        parse_bounded(s, bound, &[("auto", Auto), ("disjoint", Disjoint), ("spoly", SPoly)], DegreeBound)
    }
}

impl BasisMethod {
    pub fn parse(s: &str, bound: Option<u32>) -> Result<Self> {
        use BasisMethod::*;
        parse_bounded(s, bound, &[("auto", Auto), ("spoly", SPoly), ("stable", Stable)], DegreeBound)
    }
}

/// Both verdicts of the automatic basis test: confluence is established
/// first because the basis characterizations assume it.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisOutcome {
    pub confluence: Option<Verdict>,
    pub basis: Verdict,
}

/// `max deg lcm(α, α′) + 1` over pairs of heads (`deg α + 1` for a single head).
pub fn default_degree_bound(rs: &ReductionStructure) -> u32 {
    let heads = rs.heads();
    let mut best = heads.iter().map(Term::degree).max().unwrap_or(0);
    for (i, a) in heads.iter().enumerate() {
        for b in &heads[i + 1..] {
            best = best.max(a.lcm(b).degree());
        }
    }
    best + 1
}

/// Reduces each polynomial to a remainder and reports the first nonzero one.
fn first_nonzero(
    ms: &MarkedSet,
    cones: Cones<'_>,
    method: &str,
    budget: u64,
    items: impl IntoIterator<Item = (Origin, Polynomial)>,
) -> Option<Verdict> {
    for (origin, g) in items {
        let mut r = Reducer::new(ms, cones, &Strategy::FirstMatch);
        match r.run(&g, budget) {
            Err(e) => return Some(Verdict::budget(method, origin, e.steps)),
            Ok(t) if !t.remainder.is_zero() => {
                return Some(Verdict::fail(method, Witness::Remainder { origin, remainder: t.remainder }))
            }
            Ok(_) => {}
        }
    }
    None
}

fn spairs<'a>(ms: &'a MarkedSet, pairs: &'a [(usize, usize)]) -> impl Iterator<Item = (Origin, Polynomial)> + 'a {
    pairs.iter().map(move |&(i, j)| (Origin::SPair { i, j }, ms.s_polynomial(i, j)))
}

/// Disjoint or maximal cones with an exact translation certificate: the
/// S-pair criteria decide the basis property.
fn pair_criteria_apply(rs: &ReductionStructure) -> bool {
    rs.translation_certificate().is_some() && (rs.has_disjoint_cones() || rs.has_maximal_cones())
}

fn disjoint_verdict(rs: &ReductionStructure) -> Verdict {
    let v = Verdict::pass("disjoint");
    if rs.noetherian_certificate().is_none() {
        v.with_note("noetherianity is not certified; the structure is assumed weakly noetherian")
    } else {
        v
    }
}

fn selection(rs: &ReductionStructure) -> Result<DisjointSelection> {
    DisjointSelection::new(rs, rs)
}

pub fn confluence_test(ms: &MarkedSet, method: ConfluenceMethod, budget: u64) -> Result<Verdict> {
    let rs = ms.structure();
    match method {
        ConfluenceMethod::Auto => {
            if rs.has_disjoint_cones() {
                Ok(disjoint_verdict(rs))
            } else if rs.has_maximal_cones() && rs.translation_certificate().is_some() {
                confluence_test(ms, ConfluenceMethod::SPoly, budget)
            } else {
                confluence_test(ms, ConfluenceMethod::DegreeBound(None), budget)
            }
        }
        ConfluenceMethod::Disjoint => match rs.overlapping_cones() {
            None => Ok(disjoint_verdict(rs)),
            Some((i, j)) => Err(Error::Precondition(format!("the cones of entries {i} and {j} intersect"))),
        },
        ConfluenceMethod::SPoly => {
            if rs.has_disjoint_cones() {
                return Ok(disjoint_verdict(rs));
            }
            let cones = Cones::Structure(rs);
            if rs.has_maximal_cones() && rs.translation_certificate().is_some() {
                let kept = useful_pairs(rs, PairMethod::Buchberger).kept();
                return Ok(first_nonzero(ms, cones, "spoly", budget, spairs(ms, &kept)).unwrap_or_else(|| Verdict::pass("spoly")));
            }
            // Pairs whose S-polynomial lies in ⟨τF⟩: a nonzero remainder
            // lies in ⟨τF⟩ ∩ ⟨N(J)⟩ and refutes confluence.
            let pairs: Vec<(usize, usize)> = pair_order(rs)
                .into_iter()
                .filter(|&(i, j)| {
                    let l = rs.entry(i).head.lcm(&rs.entry(j).head);
                    rs.entry(i).in_cone(&l) && rs.entry(j).in_cone(&l)
                })
                .collect();
            match first_nonzero(ms, cones, "spoly", budget, spairs(ms, &pairs)) {
                Some(v) => Ok(v),
                None => Err(Error::MissingCertificate(
                    "every testable S-polynomial reduces to zero, but confluence needs maximal cones with a term-order certificate".into(),
                )),
            }
        }
        ConfluenceMethod::DegreeBound(bound) => {
            let d = bound.unwrap_or_else(|| default_degree_bound(rs));
            let method = format!("degree-bound({d})");
            if rs.has_disjoint_cones() {
                return Ok(disjoint_verdict(rs));
            }
            let sel = selection(rs)?;
            let mut items = Vec::new();
            for (k, e) in rs.entries().iter().enumerate() {
                let top = d.saturating_sub(e.head.degree());
                if e.head.degree() > d {
                    continue;
                }
                for eta in terms_up_to_degree(rs.nvars(), top) {
                    if e.multipliers.contains(&eta) && !sel.contains(k, &eta) {
                        items.push((Origin::Multiple { entry: k, multiplier: eta.clone() }, ms.multiple(k, &eta)));
                    }
                }
            }
            Ok(first_nonzero(ms, Cones::Selection(&sel), &method, budget, items)
                .unwrap_or_else(|| Verdict::bounded_pass(method)))
        }
    }
}

/// Tests `(F) ⊕ ⟨N(J)⟩ = P`.
pub fn marked_basis_test(ms: &MarkedSet, method: BasisMethod, budget: u64) -> Result<BasisOutcome> {
    let rs = ms.structure();
    let basis = match method {
        BasisMethod::Auto => {
            let confluence = confluence_test(ms, ConfluenceMethod::Auto, budget).ok();
            let basis = if rs.stable_certificate().is_some() {
                basis_stable(ms, budget)?
            } else if pair_criteria_apply(rs) {
                basis_spoly(ms, budget)?
            } else {
                basis_degree_bound(ms, None)
            };
            return Ok(BasisOutcome { confluence, basis });
        }
        BasisMethod::SPoly => basis_spoly(ms, budget)?,
        BasisMethod::Stable => basis_stable(ms, budget)?,
        BasisMethod::DegreeBound(d) => basis_degree_bound(ms, d),
    };
    Ok(BasisOutcome { confluence: None, basis })
}

/// Short name for [`marked_basis_test`] returning only the basis verdict.
pub fn basis_test(ms: &MarkedSet, method: BasisMethod, budget: u64) -> Result<Verdict> {
    marked_basis_test(ms, method, budget).map(|o| o.basis)
}

fn basis_spoly(ms: &MarkedSet, budget: u64) -> Result<Verdict> {
    let rs = ms.structure();
    let cones = Cones::Structure(rs);
    if pair_criteria_apply(rs) {
        let kept = useful_pairs(rs, PairMethod::Buchberger).kept();
        return Ok(first_nonzero(ms, cones, "spoly", budget, spairs(ms, &kept)).unwrap_or_else(|| Verdict::pass("spoly")));
    }
    // Every S-polynomial lies in (F), so a nonzero remainder refutes the
    // basis property; zero remainders prove nothing here.
    let all = pair_order(rs);
    match first_nonzero(ms, cones, "spoly", budget, spairs(ms, &all)) {
        Some(v) => Ok(v.with_note("S-pair criteria not applicable: no translation certificate with disjoint or maximal cones")),
        None => Err(Error::MissingCertificate(
            "every S-polynomial reduces to zero, but the S-pair criteria need disjoint or maximal cones and a term-order certificate"
                .into(),
        )),
    }
}

fn basis_stable(ms: &MarkedSet, budget: u64) -> Result<Verdict> {
    let rs = ms.structure();
    if rs.stable_certificate().is_none() {
        return Err(Error::MissingCertificate("the stable test needs an exact stably-ordered certificate".into()));
    }
    let items: Vec<(Origin, Polynomial)> = stable_checks(rs)
        .into_iter()
        .map(|(k, eps)| {
            let g = ms.multiple(k, &eps);
            (Origin::Multiple { entry: k, multiplier: eps }, g)
        })
        .collect();
    Ok(first_nonzero(ms, Cones::Structure(rs), "stable", budget, items).unwrap_or_else(|| Verdict::pass("stable")))
}

/// The multiples `x^ε f_β`, `ε` a minimal nonmultiplier of `β`, that the
/// stable test reduces.
pub fn stable_checks(rs: &ReductionStructure) -> Vec<(usize, Term)> {
    rs.entries()
        .iter()
        .enumerate()
        .flat_map(|(k, e)| e.multipliers.nonmult().iter().map(move |eps| (k, eps.clone())))
        .collect()
}

/// Looks for a nonzero polynomial supported on `N(J)` in the span of all
/// multiples `x^η f_α` of degree at most `d`.
fn basis_degree_bound(ms: &MarkedSet, bound: Option<u32>) -> Verdict {
    let rs = ms.structure();
    let n = rs.nvars();
    let d = bound.unwrap_or_else(|| default_degree_bound(rs));
    let method = format!("degree-bound({d})");
    // Columns: terms of J first, so a pivot in N(J) means the whole row is in N(J).
    let mut cols = terms_up_to_degree(n, d);
    cols.sort_by(|a, b| rs.in_ideal(b).cmp(&rs.in_ideal(a)).then_with(|| degrevlex_cmp(b, a)));
    let index: std::collections::HashMap<&Term, usize> = cols.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let first_n = cols.iter().position(|t| !rs.in_ideal(t)).unwrap_or(cols.len());
    let mut ech = Echelon::new();
    for k in 0..ms.len() {
        let Some(fd) = ms.poly(k).degree() else { continue };
        if fd > d {
            continue;
        }
        for eta in terms_up_to_degree(n, d - fd) {
            let row: SparseRow = ms.multiple(k, &eta).terms().map(|(t, c)| (index[t], c.clone())).collect();
            if let Some(p) = ech.insert(row) {
                if p >= first_n {
                    let poly = Polynomial::from_terms(n, ech.row(p).unwrap().iter().map(|(&c, v)| (cols[c].clone(), v.clone())));
                    return Verdict::fail(method, Witness::Intersection { poly });
                }
            }
        }
    }
    Verdict::bounded_pass(method)
}

/// A marked set whose reduction is certified confluent.
pub struct ConfluentSet<'a> {
    ms: &'a MarkedSet,
    budget: u64,
}

impl<'a> ConfluentSet<'a> {
    /// Runs the automatic confluence test and requires an exact pass.
    pub fn certify(ms: &'a MarkedSet, budget: u64) -> Result<Self> {
        let v = confluence_test(ms, ConfluenceMethod::Auto, budget)?;
        if v.is_pass() {
            Ok(ConfluentSet { ms, budget })
        } else {
            Err(Error::Precondition(format!("confluence not established ({})", v.status.as_str())))
        }
    }

    /// The unique remainder of `g`.
    pub fn canonical_form(&self, g: &Polynomial) -> Result<Polynomial> {
        self.ms
            .reduce(g, &Strategy::FirstMatch, self.budget)
            .map(|t| t.remainder)
            .map_err(|e| Error::BudgetExceeded { budget: e.steps, context: "canonical form".into() })
    }
}

/// A marked set certified to be a marked basis with confluent reduction.
pub struct MarkedBasis<'a> {
    inner: ConfluentSet<'a>,
}

impl<'a> MarkedBasis<'a> {
    /// Runs the automatic basis test; both verdicts must be exact passes.
    pub fn certify(ms: &'a MarkedSet, budget: u64) -> Result<Self> {
        let out = marked_basis_test(ms, BasisMethod::Auto, budget)?;
        let confluent = out.confluence.as_ref().is_some_and(Verdict::is_pass);
        if !out.basis.is_pass() || !confluent {
            return Err(Error::Precondition(format!(
                "not certified as a marked basis (basis: {})",
                out.basis.status.as_str()
            )));
        }
        Ok(MarkedBasis { inner: ConfluentSet { ms, budget } })
    }

    pub fn marked_set(&self) -> &MarkedSet {
        self.inner.ms
    }

    pub fn canonical_form(&self, g: &Polynomial) -> Result<Polynomial> {
        self.inner.canonical_form(g)
    }

    /// `g ∈ (F)`.
    pub fn ideal_membership(&self, g: &Polynomial) -> Result<bool> {
        Ok(self.canonical_form(g)?.is_zero())
    }
}

/// `⌈2(d²/2 + d)^{2^{n−1}} + Σ_{j<n} (ud)^{2^j}⌉`: a degree from which
/// `(F)_{≤t} = ⟨τF⟩_{≤t}` is guaranteed.
pub fn membership_degree_bound(n: u32, d: u32, u: u32) -> Result<BigInt> {
    if n == 0 || d == 0 || u == 0 {
        return Err(Error::Precondition("n, d and u must be positive".into()));
    }
    let d_r = Rational::from_integer(BigInt::from(d));
    let base = &d_r * &d_r / Rational::from_integer(BigInt::from(2)) + &d_r;
    let mut first = base;
    for _ in 0..n - 1 {
        first = &first * &first;
    }
    let ud = BigInt::from(u) * BigInt::from(d);
    let mut sum = BigInt::zero();
    let mut p = ud;
    for _ in 0..n {
        sum += &p;
        p = &p * &p;
    }
    let total = first * Rational::from_integer(BigInt::from(2)) + Rational::from_integer(sum);
    Ok(total.ceil().to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Coefficient;
    use crate::marked::MarkedPolynomial;
    use crate::monomial::Vars;
    use crate::ordering::{OrderingFunction, TermOrder};
    use crate::structure::{CertificateKind, Entry, MultiplierSet};
    use crate::verdict::{Mode, Status};

    fn build(vars: &Vars, spec: &[(&str, &str, &str)]) -> MarkedSet {
        let mut entries = Vec::new();
        let mut polys = Vec::new();
        for (h, nm, f) in spec {
            let head = vars.parse_term(h).unwrap();
            let p = Polynomial::parse(vars, f).unwrap();
            let tail: Vec<Term> = p.support().filter(|t| **t != head).cloned().collect();
            entries.push(Entry::new(head.clone(), tail, MultiplierSet::from_nonmult(&vars.parse_terms(nm).unwrap())));
            polys.push(MarkedPolynomial::from_polynomial(head, p).unwrap());
        }
        MarkedSet::new(ReductionStructure::new(vars.clone(), entries).unwrap(), polys).unwrap()
    }

    #[test]
    fn degree_bound_formula() {
        assert_eq!(membership_degree_bound(1, 2, 2).unwrap(), BigInt::from(12));
        assert_eq!(membership_degree_bound(2, 2, 1).unwrap(), BigInt::from(38));
        // d = 1: 2·(3/2)^2 + (1 + 1) = 6.5 → 7.
        assert_eq!(membership_degree_bound(2, 1, 1).unwrap(), BigInt::from(7));
        assert!(membership_degree_bound(0, 1, 1).is_err());
    }

    #[test]
    fn maximal_cone_counterexample() {
        let v = Vars::default_for(2);
        let mut ms = build(&v, &[("x^2", "", "x^2 - 1"), ("x*y", "", "x*y"), ("y^2", "", "y^2")]);
        let expect = Witness::Remainder { origin: Origin::SPair { i: 0, j: 1 }, remainder: Polynomial::parse(&v, "-y").unwrap() };
        let uncertified = confluence_test(&ms, ConfluenceMethod::SPoly, 100).unwrap();
        assert_eq!(uncertified.witness, Some(expect.clone()));
        ms.structure_mut()
            .attach_certificate(CertificateKind::Ordered, OrderingFunction::Identity(TermOrder::DegLex), Mode::Exact)
            .unwrap();
        let v1 = confluence_test(&ms, ConfluenceMethod::Auto, 100).unwrap();
        assert_eq!(v1.status, Status::Fail);
        assert_eq!(v1.witness, Some(expect));
        let b = basis_test(&ms, BasisMethod::DegreeBound(Some(3)), 100).unwrap();
        assert_eq!(b.status, Status::Fail);
    }

    #[test]
    fn coprime_criterion_needs_certificate_without_certificate() {
        let v = Vars::default_for(3);
        let ms = build(&v, &[("x", "z", "x"), ("y", "", "y - z"), ("x*z", "", "x*z - z^2")]);
        let out = basis_test(&ms, BasisMethod::SPoly, 100).unwrap();
        assert_eq!(out.status, Status::Fail);
        match out.witness {
            Some(Witness::Remainder { remainder, .. }) => assert_eq!(remainder, Polynomial::parse(&v, "z^2").unwrap()),
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn monomial_sets_pass() {
        let v = Vars::default_for(2);
        let mut ms = build(&v, &[("x^2", "", "x^2"), ("x*y", "", "x*y"), ("y^3", "", "y^3")]);
        ms.structure_mut()
            .attach_certificate(CertificateKind::Ordered, OrderingFunction::Identity(TermOrder::DegRevLex), Mode::Exact)
            .unwrap();
        let out = marked_basis_test(&ms, BasisMethod::Auto, 100).unwrap();
        assert!(out.basis.is_pass());
        assert!(out.confluence.unwrap().is_pass());
        assert_eq!(basis_test(&ms, BasisMethod::DegreeBound(None), 100).unwrap().status, Status::BoundedPass);
        let b = MarkedBasis::certify(&ms, 100).unwrap();
        let g = Polynomial::parse(&v, "x^3*y + 1").unwrap();
        assert_eq!(b.canonical_form(&g).unwrap(), Polynomial::constant(2, <Rational as Coefficient>::one()));
        assert!(!b.ideal_membership(&Polynomial::constant(2, <Rational as Coefficient>::one())).unwrap());
    }
}
