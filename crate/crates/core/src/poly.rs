//! Sparse polynomials `Term -> nonzero coefficient`.

use std::collections::BTreeMap;

use crate::coeff::{parse_rational, Coefficient, Rational};
use crate::error::{Error, Result};
use crate::monomial::{degrevlex_cmp, Term, Vars};

#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial<C = Rational> {
    nvars: usize,
    terms: BTreeMap<Term, C>,
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero(n: usize) -> Self {
        Polynomial { nvars: n, terms: BTreeMap::new() }
    }

    pub fn monomial(t: Term, c: C) -> Self {
        let mut p = Polynomial::zero(t.nvars());
        p.add_term(t, c);
        p
    }

    pub fn term(t: Term) -> Self {
        Polynomial::monomial(t, C::one())
    }

    pub fn constant(n: usize, c: C) -> Self {
        Polynomial::monomial(Term::one(n), c)
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Term, C)>) -> Self {
        let mut p = Polynomial::zero(n);
        for (t, c) in terms {
            p.add_term(t, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of terms; the zero polynomial has none.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: &Term) -> Option<&C> {
        self.terms.get(t)
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.terms.contains_key(t)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Term, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Term> {
        self.terms.keys()
    }

    /// Maximum total degree of the support; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Term::degree).max()
    }

    /// Adds `c·t`, dropping the entry if it cancels.
    pub fn add_term(&mut self, t: Term, c: C) {
        assert_eq!(t.nvars(), self.nvars, "term dimension mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(e) => {
                let s = e.add_ref(&c);
                if s.is_zero() {
                    self.terms.remove(&t);
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert(t, c);
            }
        }
    }

    pub fn remove_term(&mut self, t: &Term) -> Option<C> {
        self.terms.remove(t)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.neg_ref());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg_ref())
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Polynomial::zero(self.nvars);
        for (t, c) in &self.terms {
            out.add_term(t.clone(), c.mul_ref(k));
        }
        out
    }

    /// `x^η · self`.
    pub fn shift(&self, eta: &Term) -> Self {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(t, c)| (t.mul(eta), c.clone())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Polynomial::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.mul(b), ca.mul_ref(cb));
            }
        }
        out
    }

    /// `self -= k·x^η·f` in place.
    pub fn sub_scaled_shifted(&mut self, k: &C, eta: &Term, f: &Self) {
        for (t, c) in &f.terms {
            self.add_term(t.mul(eta), c.mul_ref(k).neg_ref());
        }
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let mut out = Polynomial::zero(self.nvars);
        for (t, c) in &self.terms {
            out.add_term(t.clone(), f(c));
        }
        out
    }

    /// Terms sorted decreasingly in degrevlex (printing order).
    pub fn sorted_terms(&self) -> Vec<(&Term, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| degrevlex_cmp(b.0, a.0));
        v
    }

    /// Canonical text: decreasing degrevlex, `c*term` products.
    pub fn format(&self, vars: &Vars, params: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (t, c)) in self.sorted_terms().into_iter().enumerate() {
            let (negative, mag) = match c.constant_sign() {
                Some(false) => (true, c.neg_ref()),
                _ => (false, c.clone()),
            };
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let one = mag == C::one();
            let mag_text = if mag.is_compound() {
                format!("({})", mag.to_text(params))
            } else {
                mag.to_text(params)
            };
            if t.is_one() {
                out.push_str(&mag_text);
            } else if one {
                out.push_str(&vars.format_term(t));
            } else {
                out.push_str(&format!("{}*{}", mag_text, vars.format_term(t)));
            }
        }
        out
    }
}

impl Polynomial<Rational> {
    /// Parses expressions such as `x^2*y - 3/2*x*y + 1` or `(x - y)^2`.
    pub fn parse(vars: &Vars, s: &str) -> Result<Self> {
        let mut p = Parser { src: s.as_bytes(), pos: 0, vars };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::Parse(format!("unexpected input at position {} in {s:?}", p.pos)));
        }
        Ok(out)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {}", self.pos))
    }

    fn n(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.n());
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let t = self.product()?;
            acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.power()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.digits().ok_or_else(|| self.err("expected exponent"))?;
            let e: u32 = e.parse().map_err(|_| self.err("bad exponent"))?;
            let mut out = Polynomial::constant(self.n(), <Rational as Coefficient>::one());
            for _ in 0..e {
                out = out.mul(&base);
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits().unwrap();
                let mut text = num;
                // A `/` directly followed by digits belongs to the number.
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    match self.digits() {
                        Some(d) => text = format!("{text}/{d}"),
                        None => self.pos = save,
                    }
                }
                let c = parse_rational(&text).ok_or_else(|| self.err("bad number"))?;
                Ok(Polynomial::constant(self.n(), c))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                let i = self
                    .vars
                    .index_of(&name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                Ok(Polynomial::term(Term::var(self.n(), i)))
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}
