//! Terms (power products), variable names, and monomial-ideal combinatorics:
//! minimal generators, escalier, border, quasi-stability and the Janet,
//! Janet-like and Pommaret divisions.
//!
//! Variables are ordered `x1 < x2 < ... < xn`; the last variable is the
//! largest and is compared first by lex-type orders.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A power product, stored as its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term(SmallVec<[u32; 4]>);

impl Term {
    /// The empty product in `n` variables.
    pub fn one(n: usize) -> Term {
        Term(SmallVec::from_elem(0, n))
    }

    pub fn new(exponents: impl AsRef<[u32]>) -> Term {
        Term(SmallVec::from_slice(exponents.as_ref()))
    }

    /// The variable `x_i` (0-based index).
    pub fn var(n: usize, i: usize) -> Term {
        let mut t = Term::one(n);
        t.0[i] = 1;
        t
    }

    /// `x_i^k`.
    pub fn pure_power(n: usize, i: usize, k: u32) -> Term {
        let mut t = Term::one(n);
        t.0[i] = k;
        t
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `self | other`.
    pub fn divides(&self, other: &Term) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Term) -> Term {
        assert_eq!(self.nvars(), other.nvars(), "term dimension mismatch");
        Term(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / d` when `d | self`.
    pub fn checked_div(&self, d: &Term) -> Option<Term> {
        if !d.divides(self) {
            return None;
        }
        Some(Term(self.0.iter().zip(d.0.iter()).map(|(a, b)| a - b).collect()))
    }

    /// Componentwise `max(self - other, 0)`; `u.saturating_sub(t)` is the
    /// smallest `η` with `u | t·η`.
    pub fn saturating_sub(&self, other: &Term) -> Term {
        assert_eq!(self.nvars(), other.nvars(), "term dimension mismatch");
        Term(self.0.iter().zip(other.0.iter()).map(|(a, b)| a.saturating_sub(*b)).collect())
    }

    pub fn lcm(&self, other: &Term) -> Term {
        assert_eq!(self.nvars(), other.nvars(), "term dimension mismatch");
        Term(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Term) -> Term {
        assert_eq!(self.nvars(), other.nvars(), "term dimension mismatch");
        Term(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    /// Componentwise minimum with `caps`.
    pub fn capped(&self, caps: &[u32]) -> Term {
        Term(self.0.iter().zip(caps.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    /// Index of the smallest variable dividing the term.
    pub fn min_variable(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    /// Index of the largest variable dividing the term.
    pub fn max_variable(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    /// Variables with positive exponent.
    pub fn support(&self) -> VariableSet {
        let mut s = VariableSet::empty();
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                s.insert(i);
            }
        }
        s
    }

    pub fn is_coprime(&self, other: &Term) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Formats with the default variable names for this dimension.
    pub fn display(&self) -> String {
        Vars::default_for(self.nvars()).format_term(self)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

/// Checked least common multiple.
pub fn lcm(t: &Term, u: &Term) -> Result<Term> {
    if t.nvars() != u.nvars() {
        return Err(Error::DimensionMismatch { expected: t.nvars(), found: u.nvars() });
    }
    Ok(t.lcm(u))
}

/// Checked `min(x^α)`; the term 1 has no variable.
pub fn min_variable(t: &Term) -> Result<usize> {
    t.min_variable().ok_or(Error::NoVariable)
}

/// Degree first, then lex with the largest variable compared first.
pub fn deglex_cmp(a: &Term, b: &Term) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| lex_cmp(a, b))
}

/// Lex with `x1 < ... < xn`: the last variable decides first.
pub fn lex_cmp(a: &Term, b: &Term) -> Ordering {
    for i in (0..a.nvars()).rev() {
        match a.exp(i).cmp(&b.exp(i)) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

/// Degree-reverse-lex with `x1 < ... < xn`: among terms of equal degree the
/// one with the smaller exponent in the smallest variable is larger.
pub fn degrevlex_cmp(a: &Term, b: &Term) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for i in 0..a.nvars() {
            match a.exp(i).cmp(&b.exp(i)) {
                Ordering::Equal => {}
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    })
}

/// Subset of `{x1, ..., xn}`, `n <= 64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VariableSet(u64);

impl VariableSet {
    pub fn empty() -> VariableSet {
        VariableSet(0)
    }

    pub fn all(n: usize) -> VariableSet {
        if n >= 64 {
            VariableSet(u64::MAX)
        } else {
            VariableSet((1u64 << n) - 1)
        }
    }

    pub fn from_indices(ix: impl IntoIterator<Item = usize>) -> VariableSet {
        let mut s = VariableSet::empty();
        for i in ix {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn bits(&self) -> u64 {
        self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..64).filter(move |&i| self.contains(i))
    }

    /// The variables of `{x1..xn}` not in the set.
    pub fn complement(&self, n: usize) -> VariableSet {
        VariableSet(!self.0 & VariableSet::all(n).0)
    }

    /// Is every variable of `t` in the set?
    pub fn admits(&self, t: &Term) -> bool {
        t.exponents().iter().enumerate().all(|(i, &e)| e == 0 || self.contains(i))
    }
}

impl fmt::Debug for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Variable names used for parsing and printing terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vars(Vec<String>);

impl Vars {
    pub fn new(names: Vec<String>) -> Result<Vars> {
        if names.is_empty() {
            return Err(Error::Parse("at least one variable is required".into()));
        }
        if names.len() > 64 {
            return Err(Error::Parse("at most 64 variables are supported".into()));
        }
        let mut seen = HashSet::new();
        for name in &names {
            let ok = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::Parse(format!("invalid variable name {name:?}")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::Parse(format!("duplicate variable name {name:?}")));
            }
        }
        Ok(Vars(names))
    }

    /// `x, y, z` for up to three variables, `x1 .. xn` beyond.
    pub fn default_for(n: usize) -> Vars {
        if n <= 3 {
            Vars(["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect())
        } else {
            Vars((1..=n).map(|i| format!("x{i}")).collect())
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    pub fn format_term(&self, t: &Term) -> String {
        if t.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in t.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.0[i].clone()),
                _ => parts.push(format!("{}^{}", self.0[i], e)),
            }
        }
        parts.join("*")
    }

    /// Parses `x^3*y`, `1`, `y * x^2` (whitespace-tolerant).
    pub fn parse_term(&self, s: &str) -> Result<Term> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty term".into()));
        }
        let mut exps = vec![0u32; self.len()];
        for factor in s.split('*') {
            let factor = factor.trim();
            if factor == "1" {
                continue;
            }
            let (name, e) = match factor.split_once('^') {
                Some((name, e)) => {
                    let e: u32 = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                    (name.trim(), e)
                }
                None => (factor, 1),
            };
            let i = self
                .index_of(name)
                .ok_or_else(|| Error::Parse(format!("unknown variable {name:?} in term {s:?}")))?;
            exps[i] = exps[i]
                .checked_add(e)
                .ok_or_else(|| Error::Parse(format!("exponent overflow in {s:?}")))?;
        }
        Ok(Term::new(exps))
    }

    /// Parses a comma-separated list of terms.
    pub fn parse_terms(&self, s: &str) -> Result<Vec<Term>> {
        s.split(',').filter(|p| !p.trim().is_empty()).map(|p| self.parse_term(p)).collect()
    }
}

/// Infers variable names from term strings: `x, y, z` when only those
/// letters occur, otherwise the distinct names in first-seen order.
pub fn infer_vars<'a>(terms: impl IntoIterator<Item = &'a str>) -> Result<Vars> {
    let mut names: Vec<String> = Vec::new();
    for t in terms {
        for factor in t.split('*') {
            let name = factor.split('^').next().unwrap_or("").trim();
            if name.is_empty() || name == "1" || name.chars().all(|c| c.is_ascii_digit()) {
                continue;
            }
            if !names.iter().any(|n| n == name) {
                names.push(name.to_string());
            }
        }
    }
    let xyz = ["x", "y", "z"];
    if !names.is_empty() && names.iter().all(|n| xyz.contains(&n.as_str())) {
        let k = names.iter().map(|n| xyz.iter().position(|v| v == n).unwrap()).max().unwrap() + 1;
        return Vars::new(xyz[..k.max(1)].iter().map(|s| s.to_string()).collect());
    }
    if names.is_empty() {
        return Vars::new(vec!["x".into()]);
    }
    // x1, x2, ... sorted by index so that `x2*x1` still yields x1 < x2.
    if names.iter().all(|n| n.len() > 1 && n.starts_with('x') && n[1..].parse::<usize>().is_ok()) {
        let k = names.iter().map(|n| n[1..].parse::<usize>().unwrap()).max().unwrap();
        return Vars::new((1..=k).map(|i| format!("x{i}")).collect());
    }
    Vars::new(names)
}

/// A finite ordered list of terms, flagged when it is interreduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermSet {
    terms: Vec<Term>,
    minimal: bool,
}

impl TermSet {
    /// Keeps the given order; the `minimal` flag is computed.
    pub fn new(terms: Vec<Term>) -> TermSet {
        let minimal = is_interreduced(&terms);
        TermSet { terms, minimal }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.terms.contains(t)
    }

    /// Membership in the semigroup ideal generated by the set.
    pub fn ideal_contains(&self, t: &Term) -> bool {
        in_ideal(&self.terms, t)
    }
}

fn is_interreduced(terms: &[Term]) -> bool {
    for (i, a) in terms.iter().enumerate() {
        for (j, b) in terms.iter().enumerate() {
            if i != j && a.divides(b) {
                return false;
            }
        }
    }
    true
}

/// Is `t` in the semigroup ideal generated by `gens`?
pub fn in_ideal(gens: &[Term], t: &Term) -> bool {
    gens.iter().any(|g| g.divides(t))
}

/// Interreduced generators, sorted by degree then lex.
pub fn minimal_generators(terms: &[Term]) -> TermSet {
    let mut sorted: Vec<Term> = terms.to_vec();
    sorted.sort_by(deglex_cmp);
    sorted.dedup();
    let mut kept: Vec<Term> = Vec::new();
    for t in sorted {
        // Divisors have degree <= t, so they were already seen.
        if !kept.iter().any(|k| k.divides(&t)) {
            kept.push(t);
        }
    }
    TermSet { terms: kept, minimal: true }
}

fn require_dim(terms: &[Term], n: usize) -> Result<()> {
    for t in terms {
        if t.nvars() != n {
            return Err(Error::DimensionMismatch { expected: n, found: t.nvars() });
        }
    }
    Ok(())
}

/// All terms of degree exactly `d` in `n` variables, increasing in deglex.
pub fn terms_of_degree(n: usize, d: u32) -> Vec<Term> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Term>) {
        if i == 0 {
            cur[0] = left;
            out.push(Term::new(&cur[..]));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i - 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(Term::one(0));
        }
        return out;
    }
    rec(n - 1, d, &mut cur, &mut out);
    out
}

/// All terms of degree `<= d`, increasing in deglex.
pub fn terms_up_to_degree(n: usize, d: u32) -> Vec<Term> {
    (0..=d).flat_map(|k| terms_of_degree(n, k)).collect()
}

/// All terms in the box `0 <= e_i <= caps[i]`.
pub fn box_terms(caps: &[u32]) -> Vec<Term> {
    let n = caps.len();
    let total: usize = caps.iter().map(|&c| c as usize + 1).product();
    let mut out = Vec::with_capacity(total);
    let mut cur = vec![0u32; n];
    loop {
        out.push(Term::new(&cur[..]));
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if cur[i] < caps[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// The escalier of `(M)` truncated at degree `dmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Escalier {
    pub terms: Vec<Term>,
    /// Whether the whole escalier is finite (`(M)` zero-dimensional).
    pub finite: bool,
}

/// Is the escalier finite, i.e. does every variable have a pure power in `(M)`?
pub fn is_zero_dimensional(n: usize, m: &[Term]) -> bool {
    (0..n).all(|i| m.iter().any(|t| t.exponents().iter().enumerate().all(|(j, &e)| j == i || e == 0)))
}

/// Terms of degree `<= dmax` outside `(M)`, increasing in deglex.
pub fn escalier(n: usize, m: &[Term], dmax: u32) -> Result<Escalier> {
    require_dim(m, n)?;
    let terms = terms_up_to_degree(n, dmax).into_iter().filter(|t| !in_ideal(m, t)).collect();
    Ok(Escalier { terms, finite: is_zero_dimensional(n, m) })
}

/// Pure-power exponents `p_i` with `x_i^{p_i}` the smallest pure power in `(M)`.
fn pure_power_bounds(n: usize, m: &[Term]) -> Option<Vec<u32>> {
    (0..n)
        .map(|i| {
            m.iter()
                .filter(|t| t.exponents().iter().enumerate().all(|(j, &e)| j == i || e == 0))
                .map(|t| t.exp(i))
                .min()
        })
        .collect()
}

/// The full (finite) escalier `N(J)` of a zero-dimensional ideal, increasing in deglex.
pub fn finite_escalier(n: usize, m: &[Term]) -> Result<Vec<Term>> {
    require_dim(m, n)?;
    let bounds = pure_power_bounds(n, m).ok_or(Error::NotZeroDimensional)?;
    if bounds.contains(&0) {
        return Ok(Vec::new());
    }
    let caps: Vec<u32> = bounds.iter().map(|b| b - 1).collect();
    let mut out: Vec<Term> = box_terms(&caps).into_iter().filter(|t| !in_ideal(m, t)).collect();
    out.sort_by(deglex_cmp);
    Ok(out)
}

/// `B(J) = (x1 N ∪ ... ∪ xn N) \ N`, increasing in deglex.
pub fn border(n: usize, m: &[Term]) -> Result<Vec<Term>> {
    let esc = finite_escalier(n, m)?;
    let nset: HashSet<&Term> = esc.iter().collect();
    let mut out: BTreeSet<Term> = BTreeSet::new();
    if esc.is_empty() {
        // J = T: the border is {1}.
        out.insert(Term::one(n));
    }
    for t in &esc {
        for i in 0..n {
            let u = t.mul(&Term::var(n, i));
            if !nset.contains(&u) {
                out.insert(u);
            }
        }
    }
    let mut v: Vec<Term> = out.into_iter().collect();
    v.sort_by(deglex_cmp);
    Ok(v)
}

/// A generator `τ` and variable `x_j > min(τ)` for which no `x_j^t τ/min(τ)` lies in `J`.
pub fn quasi_stability_violation(n: usize, m: &[Term]) -> Result<Option<(Term, usize)>> {
    require_dim(m, n)?;
    let gens = minimal_generators(m);
    let gens = gens.terms();
    for tau in gens {
        let Some(k) = tau.min_variable() else { continue };
        let base = tau.checked_div(&Term::var(n, k)).expect("min variable divides");
        for j in k + 1..n {
            let bound = gens.iter().map(|g| g.exp(j)).max().unwrap_or(0);
            let ok = (0..=bound).any(|t| in_ideal(gens, &base.mul(&Term::pure_power(n, j, t))));
            if !ok {
                return Ok(Some((tau.clone(), j)));
            }
        }
    }
    Ok(None)
}

pub fn is_quasi_stable(n: usize, m: &[Term]) -> Result<bool> {
    Ok(quasi_stability_violation(n, m)?.is_none())
}

/// Janet-multiplicative variables of `alpha` with respect to `m`.
pub fn janet_multiplicative(m: &[Term], alpha: &Term) -> Result<VariableSet> {
    if !m.contains(alpha) {
        return Err(Error::NotMember(alpha.display()));
    }
    Ok(janet_mult_unchecked(m, alpha))
}

fn janet_mult_unchecked(m: &[Term], alpha: &Term) -> VariableSet {
    let n = alpha.nvars();
    let mut mu = VariableSet::empty();
    for j in 0..n {
        let blocked = m.iter().any(|b| {
            (j + 1..n).all(|i| b.exp(i) == alpha.exp(i)) && b.exp(j) > alpha.exp(j)
        });
        if !blocked {
            mu.insert(j);
        }
    }
    mu
}

/// Nonmultiplicative powers `NMP(α, M)` of the Janet-like division.
pub fn nonmultiplicative_powers(m: &[Term], alpha: &Term) -> Result<Vec<Term>> {
    if !m.contains(alpha) {
        return Err(Error::NotMember(alpha.display()));
    }
    Ok(nmp_unchecked(m, alpha))
}

fn nmp_unchecked(m: &[Term], alpha: &Term) -> Vec<Term> {
    let n = alpha.nvars();
    let mut out = Vec::new();
    for i in 0..n {
        let k = m
            .iter()
            .filter(|b| (i + 1..n).all(|j| b.exp(j) == alpha.exp(j)) && b.exp(i) > alpha.exp(i))
            .map(|b| b.exp(i) - alpha.exp(i))
            .min();
        if let Some(k) = k {
            out.push(Term::pure_power(n, i, k));
        }
    }
    out
}

/// `t = α·η` with `η` avoiding every element of `nonmult`?
pub fn cone_cofactor(head: &Term, nonmult: &[Term], t: &Term) -> Option<Term> {
    let eta = t.checked_div(head)?;
    if in_ideal(nonmult, &eta) {
        None
    } else {
        Some(eta)
    }
}

/// Per-coordinate cap of the box in which coverage questions are decided:
/// max head exponent plus max nonmultiplier exponent.
pub fn cover_box(n: usize, heads: &[Term], nonmults: &[&[Term]]) -> Vec<u32> {
    (0..n)
        .map(|i| {
            let h = heads.iter().map(|t| t.exp(i)).max().unwrap_or(0);
            let v = nonmults.iter().flat_map(|ns| ns.iter()).map(|t| t.exp(i)).max().unwrap_or(0);
            h + v
        })
        .collect()
}

/// The deglex-smallest term of `(heads)` lying in no cone `head·(T \ ⟨nonmult⟩)`.
///
/// Every membership involved is a coordinatewise threshold test with
/// thresholds inside [`cover_box`], so capping an uncovered term into the box
/// keeps it uncovered and the box scan is exact.
pub fn first_uncovered(n: usize, heads: &[Term], nonmults: &[&[Term]]) -> Option<Term> {
    let caps = cover_box(n, heads, nonmults);
    box_terms(&caps)
        .into_iter()
        .filter(|t| in_ideal(heads, t))
        .filter(|t| !heads.iter().zip(nonmults).any(|(h, ns)| cone_cofactor(h, ns, t).is_some()))
        .min_by(deglex_cmp)
}

fn janet_nonmult(m: &[Term], alpha: &Term) -> Vec<Term> {
    let n = alpha.nvars();
    janet_mult_unchecked(m, alpha).complement(n).iter().map(|i| Term::var(n, i)).collect()
}

/// Do the Janet cones of `m` cover `(m)`? (They are always pairwise disjoint.)
pub fn is_janet_complete(n: usize, m: &[Term]) -> bool {
    let nonmults: Vec<Vec<Term>> = m.iter().map(|a| janet_nonmult(m, a)).collect();
    let refs: Vec<&[Term]> = nonmults.iter().map(|v| v.as_slice()).collect();
    first_uncovered(n, m, &refs).is_none()
}

/// Generic involutive completion: repeatedly adds the smallest (deglex)
/// prolongation `p·α` not lying in any current cone, where `prolongations`
/// yields candidate multipliers and `nonmult` the cone complement generators.
fn involutive_completion(
    m: &[Term],
    prolongations: impl Fn(&[Term], &Term) -> Vec<Term>,
    nonmult: impl Fn(&[Term], &Term) -> Vec<Term>,
    limit: usize,
) -> Result<Vec<Term>> {
    let mut set: Vec<Term> = Vec::new();
    for t in m {
        if !set.contains(t) {
            set.push(t.clone());
        }
    }
    loop {
        let nm: Vec<Vec<Term>> = set.iter().map(|a| nonmult(&set, a)).collect();
        let covered = |t: &Term| set.iter().zip(&nm).any(|(h, ns)| cone_cofactor(h, ns, t).is_some());
        let candidate = set
            .iter()
            .flat_map(|a| prolongations(&set, a).into_iter().map(move |p| a.mul(&p)))
            .filter(|t| !covered(t))
            .min_by(deglex_cmp);
        match candidate {
            None => return Ok(set),
            Some(t) => {
                if set.len() >= limit {
                    return Err(Error::CompletionLimit(limit));
                }
                set.push(t);
            }
        }
    }
}

const COMPLETION_LIMIT: usize = 10_000;

/// Janet completion: superset of `m` whose Janet cones tile `(m)`.
pub fn janet_completion(n: usize, m: &[Term]) -> Result<Vec<Term>> {
    require_dim(m, n)?;
    involutive_completion(m, janet_nonmult, janet_nonmult, COMPLETION_LIMIT)
}

/// Janet-like completion: fixed point of nonmultiplicative-power prolongations.
pub fn janet_like_completion(n: usize, m: &[Term]) -> Result<Vec<Term>> {
    require_dim(m, n)?;
    involutive_completion(m, nmp_unchecked, nmp_unchecked, COMPLETION_LIMIT)
}

/// Pommaret-multiplicative variables: `x_i <= min(α)`; all variables for `α = 1`.
pub fn pommaret_multiplicative(alpha: &Term) -> VariableSet {
    let n = alpha.nvars();
    match alpha.min_variable() {
        Some(k) => VariableSet::from_indices(0..=k),
        None => VariableSet::all(n),
    }
}

fn pommaret_nonmult(_: &[Term], alpha: &Term) -> Vec<Term> {
    let n = alpha.nvars();
    pommaret_multiplicative(alpha).complement(n).iter().map(|i| Term::var(n, i)).collect()
}

/// Pommaret completion of the minimal generators of a quasi-stable ideal.
pub fn pommaret_completion(n: usize, m: &[Term]) -> Result<Vec<Term>> {
    if let Some((tau, j)) = quasi_stability_violation(n, m)? {
        return Err(Error::NotQuasiStable { generator: tau.display(), variable: j });
    }
    let gens = minimal_generators(m).into_terms();
    involutive_completion(&gens, pommaret_nonmult, pommaret_nonmult, COMPLETION_LIMIT)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v2() -> Vars {
        Vars::default_for(2)
    }

    fn ts(s: &str) -> Vec<Term> {
        v2().parse_terms(s).unwrap()
    }

    fn t(s: &str) -> Term {
        v2().parse_term(s).unwrap()
    }

    fn same_set(a: &[Term], b: &[Term]) -> bool {
        let a: BTreeSet<_> = a.iter().collect();
        let b: BTreeSet<_> = b.iter().collect();
        a == b
    }

    #[test]
    fn parse_and_print() {
        let v = v2();
        assert_eq!(v.parse_term(" y * x ^ 3 ").unwrap(), Term::new([3, 1]));
        assert_eq!(v.format_term(&Term::new([3, 1])), "x^3*y");
        assert_eq!(v.format_term(&Term::one(2)), "1");
        assert_eq!(v.parse_term("1").unwrap(), Term::one(2));
        assert!(v.parse_term("w").is_err());
        assert!(v.parse_term("x^").is_err());
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(lcm(&t("x*y"), &t("x^2")).unwrap(), t("x^2*y"));
        assert_eq!(lcm(&t("y^2"), &t("x^2")).unwrap(), t("x^2*y^2"));
        assert_eq!(lcm(&t("1"), &t("x*y^3")).unwrap(), t("x*y^3"));
        assert!(lcm(&Term::one(2), &Term::one(3)).is_err());
    }

    #[test]
    fn min_variable_examples() {
        assert_eq!(min_variable(&t("x^2*y")).unwrap(), 0);
        assert_eq!(min_variable(&t("y^3")).unwrap(), 1);
        assert_eq!(pommaret_multiplicative(&t("y^3")), VariableSet::all(2));
        assert!(min_variable(&t("1")).is_err());
    }

    #[test]
    fn minimal_generators_examples() {
        let g = minimal_generators(&ts("x^2,x^3,y"));
        assert!(same_set(g.terms(), &ts("x^2,y")));
        assert!(g.is_minimal());
        assert_eq!(minimal_generators(&ts("y,y^2")).terms(), &ts("y")[..]);
        let g = minimal_generators(&ts("x^3,x*y,y^3,x*y^2,x^2*y^2"));
        assert!(same_set(g.terms(), &ts("x^3,x*y,y^3")));
    }

    #[test]
    fn escalier_examples() {
        let e = escalier(2, &ts("x^3,x*y,y^2"), 3).unwrap();
        assert!(same_set(&e.terms, &ts("1,x,x^2,y")));
        assert!(e.finite);
        let e = escalier(2, &ts("1"), 4).unwrap();
        assert!(e.terms.is_empty() && e.finite);
        let e = escalier(2, &ts("x"), 2).unwrap();
        assert!(same_set(&e.terms, &ts("1,y,y^2")));
        assert!(!e.finite);
    }

    #[test]
    fn border_examples() {
        assert!(same_set(&border(2, &ts("x^3,x*y,y^2")).unwrap(), &ts("x*y,y^2,x^3,x^2*y")));
        let b = border(2, &ts("x^3,x^2*y^2,y^3")).unwrap();
        assert!(same_set(&b, &ts("x^3,y^3,x^2*y^2,x^3*y,x*y^3")));
        assert_eq!(border(2, &ts("x,y")).unwrap(), ts("x,y"));
        assert!(border(2, &ts("x")).is_err());
    }

    #[test]
    fn quasi_stability_examples() {
        assert!(is_quasi_stable(2, &ts("x^3,x^2*y,y^3")).unwrap());
        assert!(!is_quasi_stable(2, &ts("x*y")).unwrap());
        assert!(is_quasi_stable(2, &ts("x,y")).unwrap());
    }

    #[test]
    fn janet_multiplicative_examples() {
        let m = ts("x^3,x*y,x^2*y,y^2");
        let mu = |s: &str| janet_multiplicative(&m, &t(s)).unwrap();
        assert_eq!(mu("x^3"), VariableSet::from_indices([0]));
        assert_eq!(mu("x*y"), VariableSet::empty());
        assert_eq!(mu("x^2*y"), VariableSet::from_indices([0]));
        assert_eq!(mu("y^2"), VariableSet::all(2));
        let m = ts("x^4,y^3");
        assert_eq!(janet_multiplicative(&m, &t("x^4")).unwrap(), VariableSet::from_indices([0]));
        assert_eq!(janet_multiplicative(&m, &t("y^3")).unwrap(), VariableSet::all(2));
        assert_eq!(janet_multiplicative(&ts("x*y"), &t("x*y")).unwrap(), VariableSet::all(2));
        assert!(janet_multiplicative(&m, &t("x")).is_err());
    }

    #[test]
    fn janet_completion_examples() {
        assert_eq!(janet_completion(2, &ts("x*y")).unwrap(), ts("x*y"));
        let c = janet_completion(2, &ts("x^4,y^3")).unwrap();
        assert!(same_set(&c, &ts("x^4,x^4*y,x^4*y^2,y^3")));
        // Already complete: x^3·T[x], xy·T[x] and y^2·T tile the ideal.
        assert_eq!(janet_completion(2, &ts("x^3,x*y,y^2")).unwrap(), ts("x^3,x*y,y^2"));
        assert!(is_janet_complete(2, &ts("x^3,x*y,x^2*y,y^2")));
    }

    #[test]
    fn nmp_examples() {
        let m = ts("x^4,y^3");
        assert_eq!(nonmultiplicative_powers(&m, &t("x^4")).unwrap(), ts("y^3"));
        assert!(nonmultiplicative_powers(&m, &t("y^3")).unwrap().is_empty());
        assert_eq!(nonmultiplicative_powers(&ts("x^3,x*y,y^2"), &t("x*y")).unwrap(), ts("y"));
        assert!(nonmultiplicative_powers(&ts("x^2*y"), &t("x^2*y")).unwrap().is_empty());
    }

    #[test]
    fn pommaret_completion_example() {
        let c = pommaret_completion(2, &ts("x^3,x^2*y,y^3")).unwrap();
        assert!(same_set(&c, &ts("x^3,x^2*y,x^2*y^2,y^3")));
        assert!(matches!(pommaret_completion(2, &ts("x*y")), Err(Error::NotQuasiStable { .. })));
    }

    #[test]
    fn orders_of_enumeration() {
        assert_eq!(terms_of_degree(2, 2), ts("x^2,x*y,y^2"));
        assert_eq!(terms_up_to_degree(3, 3).len(), 20);
        assert_eq!(box_terms(&[1, 2]).len(), 6);
        assert_eq!(deglex_cmp(&t("x*y"), &t("x^2")), Ordering::Greater);
        assert_eq!(lex_cmp(&t("y"), &t("x^3")), Ordering::Greater);
    }

    #[test]
    fn infer_names() {
        assert_eq!(infer_vars(["x^3", "x*y"]).unwrap(), Vars::default_for(2));
        assert_eq!(infer_vars(["z", "x"]).unwrap(), Vars::default_for(3));
        assert_eq!(infer_vars(["x3*x1"]).unwrap().len(), 3);
        assert_eq!(infer_vars(["a*b"]).unwrap().names(), &["a".to_string(), "b".to_string()]);
    }
}
