//! Beat points, cores and contractibility of finite T0-spaces.
//!
//! Removing a beat point is a strong deformation retraction, so repeatedly
//! removing beat points reaches the core: a minimal finite space that is
//! unique up to isomorphism.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::poset::Poset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BeatKind {
    /// The strict up-set has a minimum.
    Up,
    /// The strict down-set has a maximum.
    Down,
}

impl BeatKind {
    pub fn dual(self) -> Self {
        match self {
            BeatKind::Up => BeatKind::Down,
            BeatKind::Down => BeatKind::Up,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BeatKind::Up => "up",
            BeatKind::Down => "down",
        }
    }
}

impl fmt::Display for BeatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for BeatKind {
    type Err = ();

    fn from_str(s: &str) -> core::result::Result<Self, ()> {
        match s {
            "up" => Ok(BeatKind::Up),
            "down" => Ok(BeatKind::Down),
            _ => Err(()),
        }
    }
}

/// A beat point together with the extremum that witnesses it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BeatPointWitness {
    pub point: String,
    pub kind: BeatKind,
    /// Minimum of the strict up-set (up-beat) or maximum of the strict
    /// down-set (down-beat).
    pub witness: String,
}

impl BeatPointWitness {
    /// Checks that this witness is valid in `p`, returning the indices of
    /// the point and its witness.
    pub fn validate(&self, p: &Poset) -> Result<(usize, usize)> {
        let x = p.require(&self.point)?;
        let y = p.require(&self.witness)?;
        if witness_of(p, x, self.kind) == Some(y) {
            Ok((x, y))
        } else {
            Err(Error::InvalidWitness(alloc::format!(
                "{} is not the {} witness of {}",
                self.witness,
                self.kind,
                self.point
            )))
        }
    }
}

/// Index-level witness of `x` of the given kind, if `x` is such a beat point.
pub(crate) fn witness_of(p: &Poset, x: usize, kind: BeatKind) -> Option<usize> {
    match kind {
        BeatKind::Up => {
            // minimum of {y > x}: the y > x lying below every z > x
            let count = p.above_count(x);
            if count == 0 {
                return None;
            }
            p.up_set(x)
                .filter(|&y| y != x)
                .find(|&y| p.above_count(y) + 1 == count)
        }
        BeatKind::Down => {
            let count = p.below_count(x);
            if count == 0 {
                return None;
            }
            p.down_set(x)
                .filter(|&y| y != x)
                .find(|&y| p.below_count(y) + 1 == count)
        }
    }
}

/// Every beat point of `p` in element order; a point that is both up- and
/// down-beat is reported twice, up first.
pub fn beat_points(p: &Poset) -> Vec<BeatPointWitness> {
    let mut out = Vec::new();
    for x in 0..p.len() {
        for kind in [BeatKind::Up, BeatKind::Down] {
            if let Some(y) = witness_of(p, x, kind) {
                out.push(BeatPointWitness {
                    point: p.name(x).into(),
                    kind,
                    witness: p.name(y).into(),
                });
            }
        }
    }
    out
}

/// Whether `p` has no beat points.
pub fn is_minimal_finite_space(p: &Poset) -> bool {
    (0..p.len()).all(|x| {
        witness_of(p, x, BeatKind::Up).is_none() && witness_of(p, x, BeatKind::Down).is_none()
    })
}

/// `p` without the named point.
pub fn remove_point(p: &Poset, name: &str) -> Result<Poset> {
    let x = p.require(name)?;
    Ok(p.without(x))
}

/// The removal sequence from a poset down to its core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreTrace {
    pub start: Poset,
    /// Removed beat points, each valid in the poset left by the previous
    /// removals.
    pub removals: Vec<BeatPointWitness>,
    pub core: Poset,
}

impl CoreTrace {
    /// The posets visited, from `start` to `core` inclusive.
    pub fn stages(&self) -> Vec<Poset> {
        let mut stages = Vec::with_capacity(self.removals.len() + 1);
        let mut current = self.start.clone();
        for w in &self.removals {
            let next = remove_point(&current, &w.point).expect("trace points exist");
            stages.push(core::mem::replace(&mut current, next));
        }
        stages.push(current);
        stages
    }
}

/// Reduces `p` to its core, removing at each step the first beat point in
/// element order.
pub fn core(p: &Poset) -> Result<CoreTrace> {
    core_by(p, |_| 0)
}

/// Reduces `p` to its core, letting `choose` pick which of the currently
/// available beat points (as listed by [`beat_points`]) to remove next.
/// Out-of-range choices are clamped to the last candidate.
pub fn core_by<F>(p: &Poset, mut choose: F) -> Result<CoreTrace>
where
    F: FnMut(&[BeatPointWitness]) -> usize,
{
    if p.is_empty() {
        return Err(Error::EmptyPoset);
    }
    let mut current = p.clone();
    let mut removals = Vec::new();
    loop {
        let candidates = beat_points(&current);
        if candidates.is_empty() {
            break;
        }
        let pick = choose(&candidates).min(candidates.len() - 1);
        let w = candidates[pick].clone();
        current = remove_point(&current, &w.point)?;
        removals.push(w);
    }
    Ok(CoreTrace {
        start: p.clone(),
        removals,
        core: current,
    })
}

/// Whether `p` is homotopy equivalent to a point, i.e. its core is a
/// single point.
pub fn is_contractible(p: &Poset) -> Result<bool> {
    Ok(core(p)?.core.len() == 1)
}
