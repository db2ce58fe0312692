//! Term orders, ordering functions `φ: T → W`, the multiset extension, and
//! verification of ordered and stably-ordered certificates.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::coeff::{rat, Coefficient, Rational};
use crate::error::{Error, Result};
use crate::monomial::{degrevlex_cmp, deglex_cmp, lex_cmp, terms_up_to_degree, Term};
use crate::poly::Polynomial;
use crate::structure::ReductionStructure;
use crate::verdict::{Mode, StableViolation, Verdict, Witness};

/// Integer matrix order: the first row with a nonzero difference decides.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixOrder {
    rows: Vec<Vec<i64>>,
}

impl MatrixOrder {
    /// Accepts full-rank matrices whose columns have a positive first
    /// nonzero entry; these are exactly the matrices giving a total,
    /// multiplicative well-order with 1 as minimum.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<MatrixOrder> {
        let n = rows.first().map(Vec::len).unwrap_or(0);
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidOrder("matrix rows must be nonempty and of equal length".into()));
        }
        for j in 0..n {
            match rows.iter().map(|r| r[j]).find(|&v| v != 0) {
                Some(v) if v > 0 => {}
                _ => {
                    return Err(Error::InvalidOrder(format!(
                        "column {} must have a positive first nonzero entry",
                        j + 1
                    )))
                }
            }
        }
        if rank(&rows) < n {
            return Err(Error::InvalidOrder("matrix must have full column rank".into()));
        }
        Ok(MatrixOrder { rows })
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn nvars(&self) -> usize {
        self.rows[0].len()
    }

    fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        for r in &self.rows {
            let dot = |t: &Term| -> i128 { r.iter().zip(t.exponents()).map(|(&w, &e)| w as i128 * e as i128).sum() };
            match dot(a).cmp(&dot(b)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }
}

fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect();
    let cols = m.first().map(Vec::len).unwrap_or(0);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !Zero::is_zero(&m[i][c])) else { continue };
        m.swap(r, p);
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !Zero::is_zero(&row[c]) {
                let f = &row[c] / &pivot[c];
                for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// A multiplicative well-order on terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Lex,
    DegLex,
    DegRevLex,
    Matrix(MatrixOrder),
}

impl TermOrder {
    /// `lex`, `deglex`, `degrevlex` or `matrix:[[..],[..]]`.
    pub fn parse(s: &str) -> Result<TermOrder> {
        let s = s.trim();
        match s {
            "lex" => Ok(TermOrder::Lex),
            "deglex" => Ok(TermOrder::DegLex),
            "degrevlex" => Ok(TermOrder::DegRevLex),
            _ => {
                let body = s
                    .strip_prefix("matrix:")
                    .ok_or_else(|| Error::InvalidOrder(format!("unknown order {s:?}")))?;
                let rows: Vec<Vec<i64>> = serde_json::from_str(body)
                    .map_err(|e| Error::InvalidOrder(format!("bad matrix {body:?}: {e}")))?;
                Ok(TermOrder::Matrix(MatrixOrder::new(rows)?))
            }
        }
    }

    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        match self {
            TermOrder::Lex => lex_cmp(a, b),
            TermOrder::DegLex => deglex_cmp(a, b),
            TermOrder::DegRevLex => degrevlex_cmp(a, b),
            TermOrder::Matrix(m) => m.cmp(a, b),
        }
    }

    /// Checked comparison.
    pub fn compare(&self, a: &Term, b: &Term) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::DimensionMismatch { expected: a.nvars(), found: b.nvars() });
        }
        self.check_dim(a.nvars())?;
        Ok(self.cmp(a, b))
    }

    pub fn check_dim(&self, n: usize) -> Result<()> {
        match self {
            TermOrder::Matrix(m) if m.nvars() != n => Err(Error::DimensionMismatch { expected: n, found: m.nvars() }),
            _ => Ok(()),
        }
    }

    /// Does the order compare total degree first?
    pub fn is_degree_compatible(&self) -> bool {
        match self {
            TermOrder::Lex => false,
            TermOrder::DegLex | TermOrder::DegRevLex => true,
            TermOrder::Matrix(m) => {
                let first = &m.rows()[0];
                first.iter().all(|&v| v == first[0])
            }
        }
    }

    /// Largest term of `p`.
    pub fn leading_term<'a, C: Coefficient>(&self, p: &'a Polynomial<C>) -> Option<&'a Term> {
        p.support().max_by(|a, b| self.cmp(a, b))
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::Lex => f.write_str("lex"),
            TermOrder::DegLex => f.write_str("deglex"),
            TermOrder::DegRevLex => f.write_str("degrevlex"),
            TermOrder::Matrix(m) => write!(f, "matrix:{}", serde_json::to_string(m.rows()).unwrap()),
        }
    }
}

/// Formulas available for table-valued ordering functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CustomFormula {
    /// `2·deg` on terms in at most one variable, `2·deg − 1` otherwise:
    /// `φ(x^m) = φ(y^m) = 2m`, `φ(x^{r+1}y^{s+1}) = 2r+2s+3`.
    AxisDiagonal,
    /// Total degree.
    Degree,
}

impl CustomFormula {
    pub fn parse(s: &str) -> Result<CustomFormula> {
        match s {
            "axis-diagonal" => Ok(CustomFormula::AxisDiagonal),
            "degree" => Ok(CustomFormula::Degree),
            _ => Err(Error::InvalidOrder(format!("unknown formula {s:?}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CustomFormula::AxisDiagonal => "axis-diagonal",
            CustomFormula::Degree => "degree",
        }
    }

    fn eval(&self, t: &Term) -> u64 {
        let d = t.degree() as u64;
        match self {
            CustomFormula::AxisDiagonal if t.support().len() <= 1 => 2 * d,
            CustomFormula::AxisDiagonal => 2 * d - 1,
            CustomFormula::Degree => d,
        }
    }
}

/// `φ: T → ℕ` given by a formula, with explicit values taking precedence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CustomTable {
    pub formula: CustomFormula,
    pub values: BTreeMap<Term, u64>,
}

impl CustomTable {
    pub fn new(formula: CustomFormula) -> CustomTable {
        CustomTable { formula, values: BTreeMap::new() }
    }

    pub fn eval(&self, t: &Term) -> u64 {
        self.values.get(t).copied().unwrap_or_else(|| self.formula.eval(t))
    }
}

/// Value of an ordering function; `Bottom` sits below every other value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PhiValue {
    Bottom,
    Term(Term),
    Nat(u64),
}

/// An ordering function `φ: T → W` with `W` well-founded.
#[derive(Clone, Debug, PartialEq)]
pub enum OrderingFunction {
    Identity(TermOrder),
    /// `w·t`, ties broken by a term order.
    AffineWeight { weight: Vec<Rational>, tiebreak: TermOrder },
    Custom(CustomTable),
}

impl OrderingFunction {
    pub fn weight(weight: Vec<Rational>, tiebreak: TermOrder) -> Result<OrderingFunction> {
        if weight.iter().any(|w| !w.is_positive()) {
            return Err(Error::InvalidOrder("weights must be positive".into()));
        }
        Ok(OrderingFunction::AffineWeight { weight, tiebreak })
    }

    /// The induced order on `T` is itself a term order.
    pub fn is_term_order(&self) -> bool {
        !matches!(self, OrderingFunction::Custom(_))
    }

    pub fn eval(&self, t: &Term) -> PhiValue {
        match self {
            OrderingFunction::Custom(c) => PhiValue::Nat(c.eval(t)),
            _ => PhiValue::Term(t.clone()),
        }
    }

    /// Compares values of this function.
    pub fn cmp_values(&self, a: &PhiValue, b: &PhiValue) -> Ordering {
        match (a, b) {
            (PhiValue::Bottom, PhiValue::Bottom) => Ordering::Equal,
            (PhiValue::Bottom, _) => Ordering::Less,
            (_, PhiValue::Bottom) => Ordering::Greater,
            (PhiValue::Nat(x), PhiValue::Nat(y)) => x.cmp(y),
            (PhiValue::Term(x), PhiValue::Term(y)) => self.cmp_terms(x, y),
            _ => panic!("values of different ordering functions"),
        }
    }

    /// `φ(a)` versus `φ(b)`.
    pub fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        match self {
            OrderingFunction::Identity(o) => o.cmp(a, b),
            OrderingFunction::AffineWeight { weight, tiebreak } => {
                let dot = |t: &Term| -> Rational {
                    weight.iter().zip(t.exponents()).map(|(w, &e)| w * rat(e as i64)).sum()
                };
                dot(a).cmp(&dot(b)).then_with(|| tiebreak.cmp(a, b))
            }
            OrderingFunction::Custom(c) => c.eval(a).cmp(&c.eval(b)),
        }
    }

    /// `φ̄(f)`: the multiset of values over the support.
    pub fn multiset<C: Coefficient>(&self, f: &Polynomial<C>) -> Vec<PhiValue> {
        f.support().map(|t| self.eval(t)).collect()
    }

    /// Checks a concrete dimension for matrix orders.
    pub fn check_dim(&self, n: usize) -> Result<()> {
        match self {
            OrderingFunction::Identity(o) => o.check_dim(n),
            OrderingFunction::AffineWeight { weight, tiebreak } => {
                if weight.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: weight.len() });
                }
                tiebreak.check_dim(n)
            }
            OrderingFunction::Custom(_) => Ok(()),
        }
    }
}

/// Result of comparing two multisets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultisetOrdering {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// Dershowitz-Manna comparison of `a` against `b` over a (partial) order.
///
/// After removing the common part, `b ≺≺ a` iff the rest of `a` is nonempty
/// and each remaining element of `b` lies below some remaining element of `a`.
pub fn multiset_compare<T>(a: &[T], b: &[T], cmp: impl Fn(&T, &T) -> Option<Ordering>) -> MultisetOrdering {
    let mut rest_b: Vec<&T> = b.iter().collect();
    let mut rest_a: Vec<&T> = Vec::new();
    for x in a {
        match rest_b.iter().position(|y| cmp(x, y) == Some(Ordering::Equal)) {
            Some(p) => {
                rest_b.swap_remove(p);
            }
            None => rest_a.push(x),
        }
    }
    let dominated = |lo: &[&T], hi: &[&T]| {
        !hi.is_empty() && lo.iter().all(|y| hi.iter().any(|x| cmp(x, y) == Some(Ordering::Greater)))
    };
    if rest_a.is_empty() && rest_b.is_empty() {
        MultisetOrdering::Equal
    } else if dominated(&rest_b, &rest_a) {
        MultisetOrdering::Greater
    } else if dominated(&rest_a, &rest_b) {
        MultisetOrdering::Less
    } else {
        MultisetOrdering::Incomparable
    }
}

fn mode_label(prefix: &str, mode: Mode) -> String {
    match mode {
        Mode::Exact => format!("{prefix}/exact"),
        Mode::Bounded(d) => format!("{prefix}/bounded({d})"),
    }
}

/// Checks `φ(α+η) ≻ φ(γ+η)` for every head `α`, tail term `γ` and `η ∈ τ_α`.
pub fn verify_ordered(rs: &ReductionStructure, phi: &OrderingFunction, mode: Mode) -> Result<Verdict> {
    phi.check_dim(rs.nvars())?;
    let method = mode_label("ordered", mode);
    match mode {
        Mode::Exact => {
            if !phi.is_term_order() {
                return Err(Error::ExactUnsupported);
            }
            // Multiplicativity of the induced order covers every η.
            for e in rs.entries() {
                for g in &e.tail_support {
                    if phi.cmp_terms(&e.head, g) != Ordering::Greater {
                        let w = Witness::Order { head: e.head.clone(), tail: g.clone(), multiplier: Term::one(rs.nvars()) };
                        return Ok(Verdict::fail(method, w));
                    }
                }
            }
            Ok(Verdict::pass(method))
        }
        Mode::Bounded(d) => {
            let etas = terms_up_to_degree(rs.nvars(), d);
            for e in rs.entries() {
                for eta in etas.iter().filter(|eta| e.multipliers.contains(eta)) {
                    let top = e.head.mul(eta);
                    for g in &e.tail_support {
                        if phi.cmp_terms(&top, &g.mul(eta)) != Ordering::Greater {
                            let w = Witness::Order { head: e.head.clone(), tail: g.clone(), multiplier: eta.clone() };
                            return Ok(Verdict::fail(method, w));
                        }
                    }
                }
            }
            Ok(Verdict::bounded_pass(method))
        }
    }
}

/// All violations of the stably-ordered axioms, at most one per axiom and
/// entry combination, in axiom order.
///
/// For term-order `ψ` the check is exact: axioms 1 and 2 hold automatically,
/// and the premises of axioms 3 and 4 are down-closed above the smallest `η`
/// making the cone membership possible, so testing that `η` decides them.
pub fn stable_violations(rs: &ReductionStructure, psi: &OrderingFunction, mode: Mode) -> Result<Vec<StableViolation>> {
    psi.check_dim(rs.nvars())?;
    let n = rs.nvars();
    let mut out = Vec::new();
    let entries = rs.entries();
    match (mode, psi.is_term_order()) {
        (Mode::Exact, false) => return Err(Error::ExactUnsupported),
        (Mode::Exact, true) => {
            for a in entries {
                for b in entries {
                    if a.head == b.head {
                        continue;
                    }
                    let eta = b.head.saturating_sub(&a.head);
                    if b.in_cone(&a.head.mul(&eta)) && psi.cmp_terms(&b.head, &a.head) != Ordering::Greater {
                        out.push(StableViolation::ConeOverlap { head: a.head.clone(), other_head: b.head.clone(), eta });
                    }
                }
            }
            for a in entries {
                for g in &a.tail_support {
                    for b in entries {
                        let eta = b.head.saturating_sub(g);
                        if a.multipliers.contains(&eta)
                            && b.in_cone(&g.mul(&eta))
                            && psi.cmp_terms(&b.head, g) != Ordering::Greater
                        {
                            out.push(StableViolation::TailDescent {
                                head: a.head.clone(),
                                tail: g.clone(),
                                other_head: b.head.clone(),
                                eta,
                            });
                        }
                    }
                }
            }
        }
        (Mode::Bounded(d), _) => {
            let etas = terms_up_to_degree(n, d);
            let one = Term::one(n);
            let gt = |x: &Term, y: &Term| psi.cmp_terms(x, y) == Ordering::Greater;
            if let Some(eta) = etas.iter().find(|e| !e.is_one() && !gt(e, &one)) {
                out.push(StableViolation::Positivity { eta: eta.clone() });
            }
            // Single-variable translations generate all translations.
            'outer: for x in &etas {
                for y in &etas {
                    for v in 0..n {
                        let xv = Term::var(n, v);
                        if gt(x, y) != gt(&x.mul(&xv), &y.mul(&xv)) {
                            out.push(StableViolation::Translation { eta: x.clone(), other: y.clone(), var: v });
                            break 'outer;
                        }
                    }
                }
            }
            for a in entries {
                for b in entries {
                    if a.head == b.head {
                        continue;
                    }
                    for eta in &etas {
                        let delta = a.head.mul(eta);
                        if let Some(rest) = b.cone_cofactor(&delta) {
                            if !gt(eta, &rest) {
                                out.push(StableViolation::ConeOverlap {
                                    head: a.head.clone(),
                                    other_head: b.head.clone(),
                                    eta: eta.clone(),
                                });
                                break;
                            }
                        }
                    }
                }
            }
            for a in entries {
                for g in &a.tail_support {
                    for b in entries {
                        for eta in etas.iter().filter(|e| a.multipliers.contains(e)) {
                            if let Some(rest) = b.cone_cofactor(&g.mul(eta)) {
                                if !gt(eta, &rest) {
                                    out.push(StableViolation::TailDescent {
                                        head: a.head.clone(),
                                        tail: g.clone(),
                                        other_head: b.head.clone(),
                                        eta: eta.clone(),
                                    });
                                    break;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort_by_key(StableViolation::axiom);
    Ok(out)
}

/// Checks the four stably-ordered axioms; a failure reports the first violation.
pub fn verify_stably_ordered(rs: &ReductionStructure, psi: &OrderingFunction, mode: Mode) -> Result<Verdict> {
    let violations = stable_violations(rs, psi, mode)?;
    let method = mode_label("stably-ordered", mode);
    Ok(match (violations.into_iter().next(), mode) {
        (Some(v), _) => Verdict::fail(method, Witness::Stable(v)),
        (None, Mode::Exact) => Verdict::pass(method),
        (None, Mode::Bounded(_)) => Verdict::bounded_pass(method),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Vars;
    use crate::structure::{Entry, MultiplierSet};

    fn t(s: &str) -> Term {
        Vars::default_for(2).parse_term(s).unwrap()
    }

    fn ts(s: &str) -> Vec<Term> {
        Vars::default_for(2).parse_terms(s).unwrap()
    }

    fn cubic_cycle() -> ReductionStructure {
        let tail = "x^2*y,x*y^2,x^2,x*y,y^2,x,y,1";
        let e = |h: &str, nm: &str, tl: &str| Entry::new(t(h), ts(tl), MultiplierSet::from_nonmult(&ts(nm)));
        ReductionStructure::new(
            Vars::default_for(2),
            vec![e("x^3", "y", tail), e("x*y", "", "x,y,1"), e("y^3", "x", tail)],
        )
        .unwrap()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(TermOrder::DegLex.compare(&t("x*y"), &t("x^2")).unwrap(), Ordering::Greater);
        assert_eq!(TermOrder::Lex.compare(&t("y"), &t("x^3")).unwrap(), Ordering::Greater);
        assert_eq!(TermOrder::DegRevLex.compare(&t("x*y"), &t("x*y")).unwrap(), Ordering::Equal);
        assert!(TermOrder::Lex.compare(&t("x"), &Term::one(3)).is_err());
        assert_eq!(TermOrder::DegRevLex.cmp(&t("y^2"), &t("x*y")), Ordering::Greater);
    }

    #[test]
    fn order_strings() {
        for s in ["lex", "deglex", "degrevlex", "matrix:[[1,1],[0,1]]"] {
            assert_eq!(TermOrder::parse(s).unwrap().to_string(), s);
        }
        assert!(TermOrder::parse("matrix:[[1,-1],[0,1]]").is_err());
        assert!(TermOrder::parse("matrix:[[1,1],[1,1]]").is_err());
        assert!(TermOrder::parse("revlex").is_err());
        let m = TermOrder::parse("matrix:[[1,1],[0,1]]").unwrap();
        assert!(m.is_degree_compatible());
        assert_eq!(m.cmp(&t("x*y"), &t("x^2")), Ordering::Greater);
    }

    #[test]
    fn multiset_examples() {
        let nat = |a: &u32, b: &u32| Some(a.cmp(b));
        assert_eq!(multiset_compare(&[3], &[2, 2, 1], nat), MultisetOrdering::Greater);
        assert_eq!(multiset_compare(&[3, 1], &[3, 0, 0], nat), MultisetOrdering::Greater);
        assert_eq!(multiset_compare(&[2, 2], &[2, 2], nat), MultisetOrdering::Equal);
        assert_eq!(multiset_compare(&[2, 2, 1], &[3], nat), MultisetOrdering::Less);
        assert_eq!(multiset_compare::<u32>(&[], &[0], nat), MultisetOrdering::Less);
    }

    #[test]
    fn ordered_examples() {
        let cubic_cycle = cubic_cycle();
        let phi = OrderingFunction::Custom(CustomTable::new(CustomFormula::AxisDiagonal));
        assert_eq!(verify_ordered(&cubic_cycle, &phi, Mode::Bounded(12)).unwrap().status, crate::verdict::Status::BoundedPass);
        assert_eq!(verify_ordered(&cubic_cycle, &phi, Mode::Exact), Err(Error::ExactUnsupported));

        let rs = ReductionStructure::new(
            Vars::default_for(2),
            vec![Entry::new(t("x*y"), ts("x^2,y^2"), MultiplierSet::all())],
        )
        .unwrap();
        let v = verify_ordered(&rs, &OrderingFunction::Identity(TermOrder::DegLex), Mode::Exact).unwrap();
        assert_eq!(v.witness, Some(Witness::Order { head: t("x*y"), tail: t("y^2"), multiplier: t("1") }));
    }

    #[test]
    fn stable_cubic_cycle_lex_fails_tail_descent() {
        let psi = OrderingFunction::Identity(TermOrder::Lex);
        let v = stable_violations(&cubic_cycle(), &psi, Mode::Exact).unwrap();
        assert!(v.contains(&StableViolation::TailDescent {
            head: t("x^3"),
            tail: t("x^2*y"),
            other_head: t("x*y"),
            eta: t("1"),
        }));
        // The larger multiplier x also violates the axiom: x^3*y ∈ cone(xy), x ⊁ x^2.
        let b = cubic_cycle();
        let xy = b.entry(1);
        assert!(xy.in_cone(&t("x^3*y")));
        assert!(psi.cmp_terms(&t("x"), &t("x^2")) != Ordering::Greater);
        let bounded = stable_violations(&cubic_cycle(), &psi, Mode::Bounded(4)).unwrap();
        assert!(bounded.iter().any(|v| v.axiom() == 4));
        assert!(!verify_stably_ordered(&cubic_cycle(), &psi, Mode::Exact).unwrap().is_pass());
    }
}
