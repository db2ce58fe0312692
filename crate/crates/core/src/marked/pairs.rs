//! Selection of the S-pairs that a basis test must reduce.

use crate::monomial::lex_cmp;
use crate::structure::ReductionStructure;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairMethod {
    /// Drop pairs whose lcm lies in neither cone.
    ConeFilter,
    /// Cone filter, then the coprime-heads and chain criteria.
    Buchberger,
}

impl PairMethod {
    pub fn parse(s: &str) -> Option<PairMethod> {
        match s {
            "cone-filter" => Some(PairMethod::ConeFilter),
            "buchberger" => Some(PairMethod::Buchberger),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PruneReason {
    ConeFilter,
    CoprimeHeads,
    /// `T(k) | T(i,j)` with both `{i,k}` and `{k,j}` earlier and not cone-filtered.
    Chain(usize),
}

impl PruneReason {
    pub fn label(&self) -> String {
        match self {
            PruneReason::ConeFilter => "cone-filter".into(),
            PruneReason::CoprimeHeads => "coprime-heads".into(),
            PruneReason::Chain(k) => format!("chain({k})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairStatus {
    Kept,
    Pruned(PruneReason),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReport {
    /// Every pair `i < j`, in the pair order.
    pub pairs: Vec<((usize, usize), PairStatus)>,
    /// Whether the coprime and chain criteria were applicable.
    pub criteria_applied: bool,
}

impl PairReport {
    pub fn kept(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().filter(|(_, s)| *s == PairStatus::Kept).map(|(p, _)| *p).collect()
    }

    pub fn pruned(&self) -> Vec<((usize, usize), PruneReason)> {
        self.pairs
            .iter()
            .filter_map(|(p, s)| match s {
                PairStatus::Pruned(r) => Some((*p, *r)),
                PairStatus::Kept => None,
            })
            .collect()
    }

    pub fn status(&self, i: usize, j: usize) -> Option<PairStatus> {
        let key = (i.min(j), i.max(j));
        self.pairs.iter().find(|(p, _)| *p == key).map(|(_, s)| *s)
    }
}

/// All pairs `i < j` ordered by degree of the lcm, then lex on the lcm,
/// then indices. A proper divisor of an lcm has smaller degree, so
/// divisibility of lcms is respected.
pub fn pair_order(rs: &ReductionStructure) -> Vec<(usize, usize)> {
    let heads = rs.heads();
    let mut pairs: Vec<(usize, usize)> = (0..heads.len()).flat_map(|i| (i + 1..heads.len()).map(move |j| (i, j))).collect();
    pairs.sort_by(|&(a, b), &(c, d)| {
        let l1 = heads[a].lcm(&heads[b]);
        let l2 = heads[c].lcm(&heads[d]);
        l1.degree().cmp(&l2.degree()).then_with(|| lex_cmp(&l1, &l2)).then_with(|| (a, b).cmp(&(c, d)))
    });
    pairs
}

/// Classifies every pair. The coprime and chain criteria are sound only
/// with disjoint or maximal cones and an exact translation certificate, and
/// are applied only then.
pub fn useful_pairs(rs: &ReductionStructure, method: PairMethod) -> PairReport {
    let order = pair_order(rs);
    let heads = rs.heads();
    let position = |p: (usize, usize)| order.iter().position(|&q| q == (p.0.min(p.1), p.0.max(p.1))).unwrap();
    let cone_filtered: Vec<bool> = order
        .iter()
        .map(|&(i, j)| {
            let l = heads[i].lcm(&heads[j]);
            !rs.entry(i).in_cone(&l) && !rs.entry(j).in_cone(&l)
        })
        .collect();
    let criteria_applied = method == PairMethod::Buchberger
        && rs.translation_certificate().is_some()
        && (rs.has_disjoint_cones() || rs.has_maximal_cones());
    let mut pairs = Vec::with_capacity(order.len());
    for (pos, &(i, j)) in order.iter().enumerate() {
        let status = if cone_filtered[pos] {
            PairStatus::Pruned(PruneReason::ConeFilter)
        } else if !criteria_applied {
            PairStatus::Kept
        } else if heads[i].is_coprime(&heads[j]) {
            PairStatus::Pruned(PruneReason::CoprimeHeads)
        } else {
            let l = heads[i].lcm(&heads[j]);
            let chain = (0..heads.len()).find(|&k| {
                if k == i || k == j || !heads[k].divides(&l) {
                    return false;
                }
                let (p, q) = (position((i, k)), position((k, j)));
                p < pos && q < pos && !cone_filtered[p] && !cone_filtered[q]
            });
            match chain {
                Some(k) => PairStatus::Pruned(PruneReason::Chain(k)),
                None => PairStatus::Kept,
            }
        };
        pairs.push(((i, j), status));
    }
    PairReport { pairs, criteria_applied }
}
