//! Test-only oracles and generators: a textbook Buchberger completion and
//! a dense row-reduction normal form, both on their own polynomial
//! representation so they share no code with the library.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use redux::builders::{build, BorderOrder, BuilderKind, BuilderSpec};
use redux::monomial::minimal_generators;
use redux::{MarkedPolynomial, MarkedSet, Polynomial, Rational, ReductionStructure, Term, TermOrder, Vars};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn small_rational(r: &mut ChaCha8Rng) -> Rational {
    let num = loop {
        let v = r.gen_range(-5i64..=5);
        if v != 0 {
            break v;
        }
    };
    BigRational::new(BigInt::from(num), BigInt::from(r.gen_range(1i64..=3)))
}

/// Exponent vector with total degree exactly `d`.
pub fn random_exponents(r: &mut ChaCha8Rng, n: usize, d: u32) -> Vec<u32> {
    let mut e = vec![0u32; n];
    for _ in 0..d {
        e[r.gen_range(0..n)] += 1;
    }
    e
}

/// Zero-dimensional monomial ideal: a pure power of every variable plus a
/// few mixed generators, minimalized.
pub fn random_zero_dim_ideal(r: &mut ChaCha8Rng, n: usize, max_pure: u32, max_deg: u32) -> Vec<Term> {
    let mut gens = Vec::new();
    for i in 0..n {
        let mut e = vec![0u32; n];
        e[i] = r.gen_range(1..=max_pure);
        gens.push(Term::new(e));
    }
    for _ in 0..r.gen_range(0..=3) {
        let d = r.gen_range(2..=max_deg);
        gens.push(Term::new(random_exponents(r, n, d)));
    }
    minimal_generators(&gens).into_terms()
}

pub fn random_monomial_ideal(r: &mut ChaCha8Rng, n: usize, max_deg: u32) -> Vec<Term> {
    let k = r.gen_range(1..=4);
    let gens: Vec<Term> = (0..k)
        .map(|_| {
            let d = r.gen_range(1..=max_deg);
            Term::new(random_exponents(r, n, d))
        })
        .collect();
    minimal_generators(&gens).into_terms()
}

/// Random coefficients on a random part of every tail support.
pub fn random_marked_set(r: &mut ChaCha8Rng, rs: &ReductionStructure, density: f64) -> MarkedSet {
    let n = rs.nvars();
    let polys = rs
        .entries()
        .iter()
        .map(|e| {
            let mut tail = Polynomial::zero(n);
            for g in &e.tail_support {
                if r.gen_bool(density) {
                    tail.add_term(g.clone(), small_rational(r));
                }
            }
            MarkedPolynomial::new(e.head.clone(), tail).unwrap()
        })
        .collect();
    MarkedSet::new(rs.clone(), polys).unwrap()
}

pub fn random_polynomial(r: &mut ChaCha8Rng, n: usize, max_deg: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(n);
    for _ in 0..terms {
        let d = r.gen_range(0..=max_deg);
        p.add_term(Term::new(random_exponents(r, n, d)), small_rational(r));
    }
    p
}

/// A disjoint-cone structure from one of the builders, with certificates.
pub fn random_disjoint_structure(r: &mut ChaCha8Rng) -> ReductionStructure {
    loop {
        let n = r.gen_range(1..=3);
        let vars = Vars::default_for(n);
        let kinds = [
            BuilderKind::Staggered,
            BuilderKind::Janet,
            BuilderKind::JanetLike,
            BuilderKind::Pommaret,
            BuilderKind::Border,
        ];
        let kind = kinds[r.gen_range(0..kinds.len())];
        let gens = if kind == BuilderKind::Border || r.gen_bool(0.5) {
            random_zero_dim_ideal(r, n, 3, 3)
        } else {
            random_monomial_ideal(r, n, 3)
        };
        let orders = [TermOrder::DegLex, TermOrder::DegRevLex];
        let order = orders[r.gen_range(0..2)].clone();
        let spec = BuilderSpec::new(kind, vars, gens)
            .with_order(order.clone())
            .with_border_order(BorderOrder::Term(if r.gen_bool(0.5) { TermOrder::Lex } else { order }));
        if let Ok(rs) = build(&spec) {
            if rs.has_disjoint_cones() && rs.len() <= 12 {
                return rs;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Oracle polynomials: exponent vector -> coefficient.

pub type OPoly = BTreeMap<Vec<u32>, BigRational>;

/// Degree, then the highest variable (last index) first.
pub fn odeglex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            match a[i].cmp(&b[i]) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    })
}

pub fn to_oracle(p: &Polynomial) -> OPoly {
    p.terms().map(|(t, c)| (t.exponents().to_vec(), c.clone())).collect()
}

pub fn from_oracle(n: usize, p: &OPoly) -> Polynomial {
    Polynomial::from_terms(n, p.iter().map(|(e, c)| (Term::new(e.clone()), c.clone())))
}

fn lead(p: &OPoly) -> Option<(&Vec<u32>, &BigRational)> {
    p.iter().max_by(|a, b| odeglex(a.0, b.0))
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn add_scaled(p: &mut OPoly, k: &BigRational, shift: &[u32], f: &OPoly) {
    for (e, c) in f {
        let t: Vec<u32> = e.iter().zip(shift).map(|(a, b)| a + b).collect();
        let v = p.remove(&t).unwrap_or_else(BigRational::zero) + k * c;
        if !v.is_zero() {
            p.insert(t, v);
        }
    }
}

fn monic(p: &OPoly) -> OPoly {
    match lead(p) {
        None => OPoly::new(),
        Some((_, c)) => {
            let inv = c.recip();
            p.iter().map(|(e, c)| (e.clone(), c * &inv)).collect()
        }
    }
}

/// Full reduction of every term by the leading terms of `basis`.
fn full_reduce(p: &OPoly, basis: &[OPoly]) -> OPoly {
    let mut p = p.clone();
    let mut out = OPoly::new();
    while let Some((t, c)) = lead(&p).map(|(t, c)| (t.clone(), c.clone())) {
        match basis.iter().find(|b| divides(lead(b).unwrap().0, &t)) {
            Some(b) => {
                let (lt, lc) = lead(b).unwrap();
                let shift: Vec<u32> = t.iter().zip(lt).map(|(x, y)| x - y).collect();
                add_scaled(&mut p, &(-(&c / lc)), &shift, b);
            }
            None => {
                p.remove(&t);
                out.insert(t, c);
            }
        }
    }
    out
}

fn s_poly(f: &OPoly, g: &OPoly) -> OPoly {
    let (a, ca) = lead(f).unwrap();
    let (b, cb) = lead(g).unwrap();
    let l: Vec<u32> = a.iter().zip(b).map(|(x, y)| *x.max(y)).collect();
    let sa: Vec<u32> = l.iter().zip(a).map(|(x, y)| x - y).collect();
    let sb: Vec<u32> = l.iter().zip(b).map(|(x, y)| x - y).collect();
    let mut s = OPoly::new();
    add_scaled(&mut s, &ca.recip(), &sa, f);
    add_scaled(&mut s, &(-cb.recip()), &sb, g);
    s
}

/// Reduced Gröbner basis for deglex, monic, sorted by leading term.
pub fn reduced_groebner(gens: &[OPoly]) -> Vec<OPoly> {
    let mut basis: Vec<OPoly> = gens.iter().filter(|g| !g.is_empty()).map(monic).collect();
    let mut pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let lcm_degree = |f: &OPoly, g: &OPoly| -> u32 {
        lead(f).unwrap().0.iter().zip(lead(g).unwrap().0).map(|(x, y)| *x.max(y)).sum()
    };
    // Normal selection: smallest lcm degree first. Pairs with coprime leading
    // terms always reduce to zero and are skipped.
    while let Some(k) = (0..pairs.len()).min_by_key(|&k| lcm_degree(&basis[pairs[k].0], &basis[pairs[k].1])) {
        let (i, j) = pairs.swap_remove(k);
        let coprime = lead(&basis[i]).unwrap().0.iter().zip(lead(&basis[j]).unwrap().0).all(|(x, y)| *x == 0 || *y == 0);
        if coprime {
            continue;
        }
        let r = full_reduce(&s_poly(&basis[i], &basis[j]), &basis);
        if !r.is_empty() {
            let k = basis.len();
            basis.push(monic(&r));
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    // Minimal, then reduced.
    let mut minimal: Vec<OPoly> = Vec::new();
    for (k, b) in basis.iter().enumerate() {
        let lt = lead(b).unwrap().0;
        let redundant = basis.iter().enumerate().any(|(m, c)| {
            let lc = lead(c).unwrap().0;
            m != k && divides(lc, lt) && (lc != lt || m < k)
        });
        if !redundant {
            minimal.push(b.clone());
        }
    }
    let mut out: Vec<OPoly> = Vec::new();
    for k in 0..minimal.len() {
        let others: Vec<OPoly> = minimal.iter().enumerate().filter(|(m, _)| *m != k).map(|(_, b)| b.clone()).collect();
        let (lt, _) = lead(&minimal[k]).unwrap();
        let mut tail = minimal[k].clone();
        let head = tail.remove_entry(lt).unwrap();
        let mut reduced = full_reduce(&tail, &others);
        reduced.insert(head.0, head.1);
        out.push(reduced);
    }
    out.sort_by(|a, b| odeglex(lead(a).unwrap().0, lead(b).unwrap().0));
    out
}

pub fn leading_exponent(p: &OPoly) -> Vec<u32> {
    lead(p).unwrap().0.clone()
}

fn terms_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for e in &out {
            let used: u32 = e.iter().sum();
            for k in 0..=(d - used) {
                let mut f = e.clone();
                f.push(k);
                next.push(f);
            }
        }
        out = next;
    }
    out
}

/// Normal forms modulo the ideal of a deglex Gröbner basis, by row reduction
/// of every multiple up to a fixed degree with the columns of the
/// leading-term ideal eliminated first.
pub struct DegreeSlice {
    cols: Vec<Vec<u32>>,
    index: BTreeMap<Vec<u32>, usize>,
    in_ideal: Vec<bool>,
    pivots: Vec<(usize, Vec<BigRational>)>,
}

/// Subtracts `k·prow` from `row`, skipping zero entries of `prow`.
fn eliminate(row: &mut [BigRational], k: &BigRational, prow: &[BigRational]) {
    for (x, y) in row.iter_mut().zip(prow) {
        if !y.is_zero() {
            *x -= k * y;
        }
    }
}

impl DegreeSlice {
    /// Row-reduces every multiple of degree at most `d` of a deglex Groebner basis.
    pub fn new(n: usize, gb: &[OPoly], d: u32) -> Self {
        let lts: Vec<Vec<u32>> = gb.iter().map(leading_exponent).collect();
        let in_j = |t: &[u32]| lts.iter().any(|l| divides(l, t));
        let mut cols = terms_up_to(n, d);
        cols.sort_by(|a, b| (!in_j(a)).cmp(&!in_j(b)).then_with(|| odeglex(b, a)));
        let index: BTreeMap<Vec<u32>, usize> = cols.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let in_ideal = cols.iter().map(|t| in_j(t)).collect();
        let mut slice = DegreeSlice { cols, index, in_ideal, pivots: Vec::new() };
        for b in gb {
            let db: u32 = leading_exponent(b).iter().sum();
            if db > d {
                continue;
            }
            for eta in terms_up_to(n, d - db) {
                let mut m = OPoly::new();
                add_scaled(&mut m, &BigRational::one(), &eta, b);
                let row = slice.row(&m).expect("multiples of a deglex basis stay within the degree");
                slice.insert(row);
            }
        }
        slice
    }

    fn row(&self, p: &OPoly) -> Option<Vec<BigRational>> {
        let mut row = vec![BigRational::zero(); self.cols.len()];
        for (e, c) in p {
            row[*self.index.get(e)?] = c.clone();
        }
        Some(row)
    }

    fn reduce(&self, row: &mut [BigRational]) {
        for (c, prow) in &self.pivots {
            if !row[*c].is_zero() {
                let k = row[*c].clone();
                eliminate(row, &k, prow);
            }
        }
    }

    // Gauss-Jordan: the pivot rows stay fully reduced against each other.
    fn insert(&mut self, mut row: Vec<BigRational>) {
        self.reduce(&mut row);
        let Some(c) = row.iter().position(|x| !x.is_zero()) else { return };
        let inv = row[c].recip();
        for x in row.iter_mut() {
            *x *= &inv;
        }
        for (_, prow) in self.pivots.iter_mut() {
            if !prow[c].is_zero() {
                let k = prow[c].clone();
                eliminate(prow, &k, &row);
            }
        }
        self.pivots.push((c, row));
    }

    /// The part of `g` supported outside the ideal's initial terms, or None
    /// when `g` leaves the slice or an ideal term survives.
    pub fn normal_form(&self, g: &OPoly) -> Option<OPoly> {
        let mut v = self.row(g)?;
        self.reduce(&mut v);
        let mut out = OPoly::new();
        for ((t, c), inside) in self.cols.iter().zip(v).zip(&self.in_ideal) {
            if !c.is_zero() {
                if *inside {
                    return None;
                }
                out.insert(t.clone(), c);
            }
        }
        Some(out)
    }
}

/// Janet-multiplicative variable indices of `alpha` in `m`, straight from
/// the definition: `x_j` is multiplicative when no element agreeing with
/// `alpha` in every variable above `x_j` has a larger `x_j` exponent.
pub fn janet_oracle(m: &[Term], alpha: &Term) -> Vec<usize> {
    let n = alpha.nvars();
    (0..n)
        .filter(|&j| {
            m.iter().all(|b| {
                let same_above = (j + 1..n).all(|k| b.exp(k) == alpha.exp(k));
                !same_above || b.exp(j) <= alpha.exp(j)
            })
        })
        .collect()
}
