//! Coefficient rings: exact rationals, and polynomials with rational
//! coefficients in the family parameters `C[α][γ]`.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// An exact commutative ring with identity. Marked heads are monic, so
/// reduction never divides.
pub trait Coefficient: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Text form; `names` labels the family parameters when relevant.
    fn to_text(&self, names: &[String]) -> String;
    /// Whether the text form needs parentheses when used as a factor.
    fn is_compound(&self) -> bool {
        false
    }
    /// `Some(sign)` when the coefficient is a nonzero constant.
    fn constant_sign(&self) -> Option<bool>;
}

impl Coefficient for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn to_text(&self, _: &[String]) -> String {
        self.to_string()
    }
    fn constant_sign(&self) -> Option<bool> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.is_positive())
        }
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// A monomial in the family parameters: sorted `(parameter, exponent)` pairs.
pub type ParamMonomial = Vec<(u32, u32)>;

/// Polynomial over ℚ in the family parameters.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FamilyPoly {
    terms: BTreeMap<ParamMonomial, Rational>,
}

impl FamilyPoly {
    pub fn constant(c: Rational) -> FamilyPoly {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&c) {
            terms.insert(Vec::new(), c);
        }
        FamilyPoly { terms }
    }

    /// The parameter with index `i`.
    pub fn param(i: u32) -> FamilyPoly {
        let mut terms = BTreeMap::new();
        terms.insert(vec![(i, 1)], <Rational as One>::one());
        FamilyPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: ParamMonomial, c: Rational) {
        let e = self.terms.entry(m.clone()).or_insert_with(<Rational as Zero>::zero);
        *e += c;
        if Zero::is_zero(e) {
            self.terms.remove(&m);
        }
    }

    fn mul_monomials(a: &ParamMonomial, b: &ParamMonomial) -> ParamMonomial {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
        out
    }

    /// Evaluates at a point (indexed by parameter).
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = <Rational as Zero>::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for &(i, e) in m {
                v *= num_traits::pow(point[i as usize].clone(), e as usize);
            }
            acc += v;
        }
        acc
    }

    /// Divides by the leading coefficient (last monomial in storage order).
    pub fn monic(&self) -> FamilyPoly {
        match self.terms.values().next_back() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.recip();
                FamilyPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * &inv)).collect() }
            }
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().map(|p| p.1).sum()).max().unwrap_or(0)
    }
}

impl Coefficient for FamilyPoly {
    fn zero() -> Self {
        FamilyPoly::default()
    }
    fn one() -> Self {
        FamilyPoly::constant(<Rational as One>::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = FamilyPoly::default();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(FamilyPoly::mul_monomials(a, b), ca * cb);
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        FamilyPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
    fn to_text(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .iter()
                .map(|&(i, e)| {
                    let name = names.get(i as usize).cloned().unwrap_or_else(|| format!("c{i}"));
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", a, mono.join("*")));
            }
        }
        out
    }
    fn is_compound(&self) -> bool {
        self.terms.len() > 1 || self.terms.keys().any(|m| !m.is_empty())
    }
    fn constant_sign(&self) -> Option<bool> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && m.is_empty() => Some(c.is_positive()),
            _ => None,
        }
    }
}
