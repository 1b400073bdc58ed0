//! Exhaustive and random poset generation, and property checks run over
//! whole censuses.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::suspension;
use crate::dimension::{
    ceil_log2, contractible_embedding, extend_embedding_at_beat_point, two_dimension,
    DimCertificate,
};
use crate::error::{Error, Result};
use crate::homotopy::{beat_points, core, core_by};
use crate::iso::{canonical_form, is_isomorphic, CanonicalForm};
use crate::poset::Poset;

/// Largest size for labeled enumeration.
pub const LABELED_LIMIT: usize = 6;
/// Largest size for enumeration up to isomorphism.
pub const UNLABELED_LIMIT: usize = 7;

/// Number of random removal orders tried by the core-uniqueness check.
pub const CORE_ORDERS: usize = 10;

fn element_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{i}")).collect()
}

fn from_rows(rows: &[u64]) -> Poset {
    let n = rows.len();
    Poset::from_relation(element_names(n), |i, j| rows[j] >> i & 1 == 1)
        .expect("enumerated relations are partial orders")
}

fn is_down_closed(rows: &[u64], set: u64) -> bool {
    let mut rest = set;
    while rest != 0 {
        let x = rest.trailing_zeros() as usize;
        if rows[x] & !set != 0 {
            return false;
        }
        rest &= rest - 1;
    }
    true
}

/// All partial orders on `n` elements named `0 .. n-1`; with `up_to_iso`,
/// one representative per isomorphism class. The order is deterministic.
pub fn enumerate_posets(n: usize, up_to_iso: bool) -> Result<Vec<Poset>> {
    let limit = if up_to_iso {
        UNLABELED_LIMIT
    } else {
        LABELED_LIMIT
    };
    if n > limit {
        return Err(Error::TooLarge {
            what: "poset enumeration",
            size: n,
            limit,
        });
    }
    let rows = if up_to_iso {
        unlabeled_rows(n)
    } else {
        labeled_rows(n)
    };
    Ok(rows.iter().map(|r| from_rows(r)).collect())
}

/// Down-set rows of every labeled poset on `n` points. Each poset on
/// `0..=k` restricts to a unique poset on `0..k`; the new point is placed
/// by choosing its strict down-set `D` (down-closed) and strict up-set `U`
/// (up-closed, disjoint from `D`, every member above all of `D`).
fn labeled_rows(n: usize) -> Vec<Vec<u64>> {
    let mut level: Vec<Vec<u64>> = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::new();
        for rows in &level {
            for below in 0u64..(1 << k) {
                if !is_down_closed(rows, below) {
                    continue;
                }
                let candidates = (0..k)
                    .filter(|&u| below >> u & 1 == 0 && rows[u] & below == below)
                    .fold(0u64, |acc, u| acc | 1 << u);
                let mut above = 0u64;
                loop {
                    // up-closed: nothing outside `above` sits over a member
                    let up_closed = (0..k).all(|z| {
                        above >> z & 1 == 1 || rows[z] & above == 0
                    });
                    if up_closed {
                        let mut grown = rows.clone();
                        grown.push(below | 1 << k);
                        let mut members = above;
                        while members != 0 {
                            let u = members.trailing_zeros() as usize;
                            grown[u] |= below | 1 << k;
                            members &= members - 1;
                        }
                        next.push(grown);
                    }
                    if above == candidates {
                        break;
                    }
                    above = above.wrapping_sub(candidates) & candidates;
                }
            }
        }
        level = next;
    }
    level
}

/// One representative per isomorphism class, grown by adding a maximal
/// point over every down-closed subset and deduplicated by canonical form.
fn unlabeled_rows(n: usize) -> Vec<Vec<u64>> {
    let mut level: Vec<Vec<u64>> = vec![Vec::new()];
    for k in 0..n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for rows in &level {
            for below in 0u64..(1 << k) {
                if !is_down_closed(rows, below) {
                    continue;
                }
                let mut grown = rows.clone();
                grown.push(below | 1 << k);
                let form = canonical_form(&from_rows(&grown)).expect("within canonical limit");
                if seen.insert(form) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    level
}

/// A random poset: a DAG over a seeded shuffle of `0 .. n-1` where each
/// forward pair becomes a relation with probability `edge_prob`, then
/// closed transitively. Not uniform over posets.
pub fn random_poset(n: usize, edge_prob: f64, seed: u64) -> Poset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let prob = if edge_prob.is_nan() {
        0.0
    } else {
        edge_prob.clamp(0.0, 1.0)
    };
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(prob) {
                pairs.push((order[i], order[j]));
            }
        }
    }
    Poset::from_pairs(element_names(n), &pairs).expect("forward edges cannot form a cycle")
}

/// The property suites [`census_check`] can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    /// `ceil(log2 |X|) <= d(X) <= |X|`.
    Bounds,
    /// `d(X) - 1 <= d(X - x) <= d(X)` for every beat point `x`, with the
    /// one-coordinate extension verifying.
    BeatContinuity,
    /// `d(X) <= |X| - 1` for contractible `X`, and the core-replay
    /// embedding meets that width.
    ContractibleBound,
    /// `d(S(X)) = d(X) + 2`.
    Suspension,
    /// `d(Y) <= d(X)` for every induced subposet `Y`.
    Monotony,
    /// As many open sets as antichains.
    AntichainBijection,
    /// Cores under random removal orders are isomorphic.
    CoreUniqueness,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Bounds,
        Check::BeatContinuity,
        Check::ContractibleBound,
        Check::Suspension,
        Check::Monotony,
        Check::AntichainBijection,
        Check::CoreUniqueness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Bounds => "bounds",
            Check::BeatContinuity => "beat-continuity",
            Check::ContractibleBound => "contractible-bound",
            Check::Suspension => "suspension",
            Check::Monotony => "monotony",
            Check::AntichainBijection => "antichain-bijection",
            Check::CoreUniqueness => "core-uniqueness",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownCheck(s.into()))
    }
}

/// Parses a comma-separated list of check names.
pub fn parse_checks(list: &str) -> Result<Vec<Check>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(Check::from_str)
        .collect()
}

/// Result of one check over a census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub check: Check,
    /// Posets examined.
    pub posets: usize,
    /// Individual instances tested (beat points, subsets, removal orders,
    /// ...), which may differ from `posets`.
    pub instances: usize,
    pub counterexamples: Vec<Poset>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub size: usize,
    pub up_to_iso: bool,
    pub outcomes: Vec<CheckOutcome>,
}

impl CensusReport {
    pub fn is_clean(&self) -> bool {
        self.outcomes.iter().all(|o| o.counterexamples.is_empty())
    }
}

/// Memoized exact 2-dimension, keyed by canonical form.
#[derive(Debug, Default)]
pub struct DimensionCache {
    values: BTreeMap<CanonicalForm, usize>,
}

impl DimensionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(&mut self, p: &Poset) -> Result<usize> {
        let key = canonical_form(p)?;
        if let Some(&v) = self.values.get(&key) {
            return Ok(v);
        }
        let v = two_dimension(p)?.value;
        self.values.insert(key, v);
        Ok(v)
    }
}

/// Runs the named checks over every poset of size `n` (labeled, or up to
/// isomorphism).
pub fn census_check(n: usize, up_to_iso: bool, checks: &[Check]) -> Result<CensusReport> {
    let posets = enumerate_posets(n, up_to_iso)?;
    let mut cache = DimensionCache::new();
    let mut outcomes = Vec::with_capacity(checks.len());
    for &check in checks {
        let mut outcome = CheckOutcome {
            check,
            posets: posets.len(),
            instances: 0,
            counterexamples: Vec::new(),
        };
        for (i, p) in posets.iter().enumerate() {
            let (instances, ok) = run_check(check, p, i as u64, &mut cache)?;
            outcome.instances += instances;
            if !ok {
                outcome.counterexamples.push(p.clone());
            }
        }
        outcomes.push(outcome);
    }
    Ok(CensusReport {
        size: n,
        up_to_iso,
        outcomes,
    })
}

/// Runs one check on one poset, returning the number of instances tested
/// and whether all held.
pub fn run_check(
    check: Check,
    p: &Poset,
    seed: u64,
    cache: &mut DimensionCache,
) -> Result<(usize, bool)> {
    if p.is_empty() {
        return Ok((0, true));
    }
    let n = p.len();
    match check {
        Check::Bounds => {
            let cert = two_dimension(p)?;
            let ok = cert.verify() && ceil_log2(n) <= cert.value && cert.value <= n;
            Ok((1, ok))
        }
        Check::BeatContinuity => {
            let d = cache.value(p)?;
            let witnesses = beat_points(p);
            let mut ok = true;
            for w in &witnesses {
                let x = p.require(&w.point)?;
                let reduced = p.without(x);
                let sub: DimCertificate = two_dimension(&reduced)?;
                ok &= sub.value + 1 >= d && sub.value <= d;
                let lifted = extend_embedding_at_beat_point(p, w, &sub.witness)?;
                ok &= lifted.verify() && lifted.width() == sub.value + 1;
            }
            Ok((witnesses.len(), ok))
        }
        Check::ContractibleBound => {
            if core(p)?.core.len() != 1 {
                return Ok((0, true));
            }
            let d = cache.value(p)?;
            let e = contractible_embedding(p)?;
            Ok((1, d < n && e.verify() && e.width() < n))
        }
        Check::Suspension => {
            let d = cache.value(p)?;
            let ds = cache.value(&suspension(p, 1))?;
            Ok((1, ds == d + 2))
        }
        Check::Monotony => {
            let d = cache.value(p)?;
            let mut ok = true;
            let mut count = 0;
            for subset in 1u64..(1 << n) - 1 {
                let indices: Vec<usize> = (0..n).filter(|&i| subset >> i & 1 == 1).collect();
                ok &= cache.value(&p.restrict(&indices))? <= d;
                count += 1;
            }
            Ok((count, ok))
        }
        Check::AntichainBijection => {
            let c = p.topology_census()?;
            Ok((1, c.open_sets == c.antichains))
        }
        Check::CoreUniqueness => {
            let cores = random_cores(p, CORE_ORDERS, seed)?;
            let mut ok = true;
            for (i, a) in cores.iter().enumerate() {
                for b in &cores[i + 1..] {
                    ok &= is_isomorphic(a, b)?;
                }
            }
            Ok((cores.len(), ok))
        }
    }
}

/// Cores of `p` under `orders` random beat-point removal orders.
pub fn random_cores(p: &Poset, orders: usize, seed: u64) -> Result<Vec<Poset>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..orders)
        .map(|_| core_by(p, |cands| rng.gen_range(0..cands.len())).map(|t| t.core))
        .collect()
}
