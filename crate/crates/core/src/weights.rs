//! Positive integer weights `w` with `w·α > w·γ` for every head `α` and tail
//! term `γ`, or a multiplicative cycle proving none exists.
//!
//! Feasibility of `{ (α−γ)·w ≥ 1, w_i ≥ 1 }` is decided by Fourier-Motzkin
//! elimination. Every derived row remembers the nonnegative combination of
//! input rows producing it, so an infeasible system yields integers `r_d`
//! and `s_i` with `Σ r_d (α_d − γ_d) + s = 0`, i.e. `Π x^{α_d r_d} · x^s = Π x^{γ_d r_d}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coeff::{rat, Rational};
use crate::monomial::{deglex_cmp, Term, Vars};
use crate::structure::ReductionStructure;

/// `Π heads^k · x^surplus = Π tails^k` with every `(head, tail)` taken
/// from the same entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCertificate {
    pub heads: Vec<(Term, u32)>,
    pub tails: Vec<(Term, u32)>,
    pub surplus: Term,
}

impl CycleCertificate {
    fn side(vars: &Vars, factors: &[(Term, u32)]) -> String {
        let parts: Vec<String> = factors
            .iter()
            .map(|(t, k)| {
                let s = vars.format_term(t);
                if *k == 1 {
                    s
                } else if t.degree() == 1 {
                    format!("{s}^{k}")
                } else {
                    format!("({s})^{k}")
                }
            })
            .collect();
        parts.join(" * ")
    }

    /// `(x*y)^2 = x^2 * y^2`.
    pub fn format(&self, vars: &Vars) -> String {
        let mut out = Self::side(vars, &self.heads);
        if !self.surplus.is_one() {
            write!(out, " * {}", vars.format_term(&self.surplus)).unwrap();
        }
        write!(out, " = {}", Self::side(vars, &self.tails)).unwrap();
        out
    }

    /// Both sides multiply out to the same term.
    pub fn holds(&self) -> bool {
        let n = self.surplus.nvars();
        let prod = |fs: &[(Term, u32)]| {
            fs.iter().fold(Term::one(n), |acc, (t, k)| (0..*k).fold(acc, |a, _| a.mul(t)))
        };
        prod(&self.heads).mul(&self.surplus) == prod(&self.tails)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Consistency {
    Weight(Vec<BigInt>),
    Cycle(CycleCertificate),
}

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<Rational>,
    rhs: Rational,
    /// Combination of input rows, indexed like the input.
    mult: Vec<Rational>,
    support: BTreeSet<usize>,
}

impl Row {
    fn normalize(&mut self) {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(Rational::abs) {
            for c in self.coeffs.iter_mut().chain(std::iter::once(&mut self.rhs)).chain(self.mult.iter_mut()) {
                *c /= &lead;
            }
        }
    }
}

/// Searches a weight for the (head, tail) pairs of `rs`.
pub fn find_consistent_weight(rs: &ReductionStructure) -> Consistency {
    let pairs: Vec<(Term, Term)> = rs
        .entries()
        .iter()
        .flat_map(|e| e.tail_support.iter().map(move |g| (e.head.clone(), g.clone())))
        .collect();
    consistent_weight_for_pairs(rs.nvars(), &pairs)
}

/// Same as [`find_consistent_weight`] on explicit `(α, γ)` pairs.
pub fn consistent_weight_for_pairs(n: usize, pairs: &[(Term, Term)]) -> Consistency {
    let diff = |(a, g): &(Term, Term)| -> Vec<i64> { (0..n).map(|i| a.exp(i) as i64 - g.exp(i) as i64).collect() };
    // A difference dominating another adds no constraint.
    let mut kept: Vec<(Vec<i64>, usize)> = Vec::new();
    let mut seen = BTreeSet::new();
    for (k, p) in pairs.iter().enumerate() {
        let d = diff(p);
        if seen.insert(d.clone()) {
            kept.push((d, k));
        }
    }
    let dominated = |d: &Vec<i64>, e: &Vec<i64>| d != e && d.iter().zip(e).all(|(a, b)| a >= b);
    let kept: Vec<(Vec<i64>, usize)> =
        kept.iter().filter(|(d, _)| !kept.iter().any(|(e, _)| dominated(d, e))).cloned().collect();

    let m = kept.len() + n;
    let mut rows = Vec::with_capacity(m);
    for (r, (d, _)) in kept.iter().enumerate() {
        rows.push(input_row(d.iter().map(|&v| rat(v)).collect(), m, r));
    }
    for i in 0..n {
        let mut c = vec![Rational::zero(); n];
        c[i] = Rational::one();
        rows.push(input_row(c, m, kept.len() + i));
    }

    let mut stages = vec![rows.clone()];
    for var in (0..n).rev() {
        let eliminated = n - var;
        let (mut next, mut pos, mut neg) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            match r.coeffs[var].cmp(&Rational::zero()) {
                std::cmp::Ordering::Greater => pos.push(r),
                std::cmp::Ordering::Less => neg.push(r),
                std::cmp::Ordering::Equal => next.push(r),
            }
        }
        for p in &pos {
            for q in &neg {
                let support: BTreeSet<usize> = p.support.union(&q.support).copied().collect();
                // Chernikov: a combination of more than `eliminated + 1`
                // input rows is implied by the others.
                if support.len() > eliminated + 1 {
                    continue;
                }
                let (a, b) = (-&q.coeffs[var], p.coeffs[var].clone());
                let comb = |x: &Rational, y: &Rational| &a * x + &b * y;
                let mut row = Row {
                    coeffs: p.coeffs.iter().zip(&q.coeffs).map(|(x, y)| comb(x, y)).collect(),
                    rhs: comb(&p.rhs, &q.rhs),
                    mult: p.mult.iter().zip(&q.mult).map(|(x, y)| comb(x, y)).collect(),
                    support,
                };
                row.coeffs[var] = Rational::zero();
                row.normalize();
                next.push(row);
            }
        }
        if let Some(bad) = next.iter().find(|r| r.coeffs.iter().all(Zero::is_zero) && r.rhs.is_positive()) {
            return Consistency::Cycle(cycle_from(n, pairs, &kept, bad));
        }
        next.retain(|r| !r.coeffs.iter().all(Zero::is_zero));
        rows = prune(next);
        stages.push(rows.clone());
    }

    // Back-substitution: stage `n - k` involves only w_0..w_k after w_{k+1..} are removed.
    let mut w: Vec<Rational> = Vec::with_capacity(n);
    for var in 0..n {
        let stage = &stages[n - 1 - var];
        let mut lower = Rational::one();
        let mut upper: Option<Rational> = None;
        for r in stage {
            if r.coeffs[var + 1..].iter().any(|c| !c.is_zero()) || r.coeffs[var].is_zero() {
                continue;
            }
            let known: Rational = r.coeffs[..var].iter().zip(&w).map(|(c, x)| c * x).sum();
            let bound = (&r.rhs - known) / &r.coeffs[var];
            if r.coeffs[var].is_positive() {
                lower = lower.max(bound);
            } else {
                upper = Some(upper.map_or(bound.clone(), |u: Rational| u.min(bound)));
            }
        }
        let ceil = lower.ceil();
        let pick = match &upper {
            Some(u) if &ceil > u => lower,
            _ => ceil,
        };
        w.push(pick);
    }
    let lcm = w.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = w.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Consistency::Weight(ints.into_iter().map(|x| x / &g).collect())
}

fn input_row(coeffs: Vec<Rational>, m: usize, index: usize) -> Row {
    let mut mult = vec![Rational::zero(); m];
    mult[index] = Rational::one();
    Row { coeffs, rhs: Rational::one(), mult, support: BTreeSet::from([index]) }
}

/// Keeps, per normalized direction, the row with the largest right-hand side.
fn prune(rows: Vec<Row>) -> Vec<Row> {
    let mut best: BTreeMap<Vec<Rational>, Row> = BTreeMap::new();
    for r in rows {
        match best.get(&r.coeffs) {
            Some(b) if b.rhs >= r.rhs => {}
            _ => {
                best.insert(r.coeffs.clone(), r);
            }
        }
    }
    best.into_values().collect()
}

fn cycle_from(n: usize, pairs: &[(Term, Term)], kept: &[(Vec<i64>, usize)], row: &Row) -> CycleCertificate {
    let lcm = row.mult.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = row.mult.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let ints: Vec<u32> = scaled.iter().map(|x| (x / &g).to_u32().expect("multiplier fits")).collect();
    let mut heads: Vec<(Term, u32)> = Vec::new();
    let mut tails: Vec<(Term, u32)> = Vec::new();
    let bump = |v: &mut Vec<(Term, u32)>, t: &Term, k: u32| match v.iter_mut().find(|(u, _)| u == t) {
        Some(e) => e.1 += k,
        None => v.push((t.clone(), k)),
    };
    for (r, (_, idx)) in kept.iter().enumerate() {
        if ints[r] > 0 {
            let (a, gm) = &pairs[*idx];
            bump(&mut heads, a, ints[r]);
            bump(&mut tails, gm, ints[r]);
        }
    }
    heads.sort_by(|a, b| deglex_cmp(&a.0, &b.0));
    tails.sort_by(|a, b| deglex_cmp(&a.0, &b.0));
    let surplus = Term::new((0..n).map(|i| ints[kept.len() + i]).collect::<Vec<u32>>());
    CycleCertificate { heads, tails, surplus }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Term {
        Vars::default_for(2).parse_term(s).unwrap()
    }

    #[test]
    fn weight_for_single_pair() {
        let c = consistent_weight_for_pairs(2, &[(t("x^2"), t("y^2"))]);
        assert_eq!(c, Consistency::Weight(vec![BigInt::from(2), BigInt::from(1)]));
    }

    #[test]
    fn cycle_for_swapped_pairs() {
        let c = consistent_weight_for_pairs(2, &[(t("x*y"), t("x^2")), (t("x*y"), t("y^2"))]);
        let Consistency::Cycle(cert) = c else { panic!("expected a cycle") };
        assert!(cert.holds());
        assert_eq!(cert.format(&Vars::default_for(2)), "(x*y)^2 = x^2 * y^2");
    }

    #[test]
    fn cycle_with_surplus() {
        let c = consistent_weight_for_pairs(2, &[(t("x"), t("x^2"))]);
        let Consistency::Cycle(cert) = c else { panic!("expected a cycle") };
        assert!(cert.holds());
        assert_eq!(cert.surplus, t("x"));
    }

    #[test]
    fn no_pairs_gives_unit_weight() {
        assert_eq!(consistent_weight_for_pairs(3, &[]), Consistency::Weight(vec![BigInt::one(); 3]));
    }
}
