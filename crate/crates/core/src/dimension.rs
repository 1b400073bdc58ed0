//! Embeddings into Boolean lattices and the exact 2-dimension.
//!
//! An embedding of width `n` labels every element with an `n`-bit mask so
//! that `x <= y` holds exactly when `mask(x)` is contained in `mask(y)`; that
//! is, it realizes the poset as a subspace of the `n`-fold product of the
//! Sierpinski space. Coordinate `i` is bit `i` of the mask and is printed as
//! the `i`-th character of a bitstring, so extending an embedding appends a
//! character on the right.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::homotopy::{self, BeatKind, BeatPointWitness};
use crate::poset::Poset;

/// Widest embedding the exhaustive search will attempt.
pub const SEARCH_WIDTH_LIMIT: usize = 30;

/// Masks are single machine words, which bounds both poset size and width on
/// every mask-carrying path.
pub const MASK_LIMIT: usize = 64;

/// Default largest poset handed to the exact solver.
pub const DEFAULT_SOLVER_LIMIT: usize = 12;

/// A labeling of the elements of a poset by `width`-bit masks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeEmbedding {
    poset: Poset,
    width: usize,
    masks: Vec<u64>,
}

impl CubeEmbedding {
    /// Wraps a labeling without checking it; see [`CubeEmbedding::verify`].
    /// `masks[i]` labels element `i` of `poset`.
    pub fn new(poset: Poset, width: usize, masks: Vec<u64>) -> Result<Self> {
        if width > MASK_LIMIT {
            return Err(Error::TooWide {
                width,
                limit: MASK_LIMIT,
            });
        }
        if masks.len() != poset.len() {
            return Err(Error::InvalidEmbedding(format!(
                "{} masks for {} elements",
                masks.len(),
                poset.len()
            )));
        }
        Ok(CubeEmbedding {
            poset,
            width,
            masks,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn mask_of(&self, name: &str) -> Option<u64> {
        self.poset.index_of(name).map(|i| self.masks[i])
    }

    /// The mask of element `i` as a bitstring, coordinate 0 first.
    pub fn bitstring(&self, i: usize) -> String {
        (0..self.width)
            .map(|b| if self.masks[i] >> b & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    fn fits(&self, mask: u64) -> bool {
        self.width >= 64 || mask >> self.width == 0
    }

    /// Whether the masks fit the width, are pairwise distinct, and satisfy
    /// `x <= y` exactly when `mask(x) & !mask(y) == 0`.
    pub fn verify(&self) -> bool {
        let n = self.poset.len();
        if self.masks.len() != n || !self.masks.iter().all(|&m| self.fits(m)) {
            return false;
        }
        for x in 0..n {
            for y in 0..n {
                let contained = self.masks[x] & !self.masks[y] == 0;
                if self.poset.leq(x, y) != contained {
                    return false;
                }
                if x != y && self.masks[x] == self.masks[y] {
                    return false;
                }
            }
        }
        true
    }

    /// The complemented masks, which embed the opposite poset.
    pub fn complement(&self) -> CubeEmbedding {
        let all = if self.width >= 64 {
            u64::MAX
        } else {
            (1u64 << self.width) - 1
        };
        CubeEmbedding {
            poset: self.poset.opposite(),
            width: self.width,
            masks: self.masks.iter().map(|m| !m & all).collect(),
        }
    }
}

/// Free-function form of [`CubeEmbedding::verify`].
pub fn verify_embedding(e: &CubeEmbedding) -> bool {
    e.verify()
}

/// An exact 2-dimension together with its evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimCertificate {
    pub value: usize,
    /// An embedding of width `value`.
    pub witness: CubeEmbedding,
    /// The search at width `value - 1` completed without an embedding, or
    /// `value` equals [`lower_bound`].
    pub exhausted_below: bool,
}

impl DimCertificate {
    /// Whether the witness verifies at the claimed width and the value is
    /// at least the lower bound.
    pub fn verify(&self) -> bool {
        self.witness.width() == self.value
            && self.witness.verify()
            && lower_bound(self.witness.poset()).is_ok_and(|lb| self.value >= lb)
    }
}

pub(crate) fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// `max(ceil(log2 |P|), height(P))`. An `n`-bit cube has `2^n` points, and a
/// chain of `h + 1` points needs `h` coordinates.
pub fn lower_bound(p: &Poset) -> Result<usize> {
    if p.is_empty() {
        return Err(Error::EmptyPoset);
    }
    Ok(ceil_log2(p.len()).max(p.height()))
}

fn check_mask_size(p: &Poset) -> Result<()> {
    if p.is_empty() {
        return Err(Error::EmptyPoset);
    }
    if p.len() > MASK_LIMIT {
        return Err(Error::TooLarge {
            what: "embedding",
            size: p.len(),
            limit: MASK_LIMIT,
        });
    }
    Ok(())
}

/// The width-`|P|` embedding whose coordinate `x` is the indicator of the
/// complement of `U_x`: bit `x` of `mask(y)` is set iff `y` is not below `x`.
pub fn canonical_embedding(p: &Poset) -> Result<CubeEmbedding> {
    check_mask_size(p)?;
    let n = p.len();
    let masks = (0..n)
        .map(|y| {
            (0..n)
                .filter(|&x| !p.leq(y, x))
                .fold(0u64, |m, x| m | 1 << x)
        })
        .collect();
    CubeEmbedding::new(p.clone(), n, masks)
}

/// Exhaustive search for an embedding of exactly `width` bits; `None` is a
/// proof that none exists.
///
/// Elements are labeled along a linear extension, so every element below the
/// current one already has a mask. Coordinates no mask uses yet are
/// interchangeable, so new coordinates are always introduced lowest index
/// first.
pub fn exists_embedding(p: &Poset, width: usize) -> Result<Option<CubeEmbedding>> {
    if width > SEARCH_WIDTH_LIMIT {
        return Err(Error::TooWide {
            width,
            limit: SEARCH_WIDTH_LIMIT,
        });
    }
    check_mask_size(p)?;
    if ceil_log2(p.len()) > width || p.height() > width {
        return Ok(None);
    }
    let mut search = Search::new(p, width);
    if !search.run(0, 0) {
        return Ok(None);
    }
    let mut masks = vec![0u64; p.len()];
    for (pos, &x) in search.order.iter().enumerate() {
        masks[x] = search.masks[pos];
    }
    let e = CubeEmbedding::new(p.clone(), width, masks)?;
    debug_assert!(e.verify());
    Ok(Some(e))
}

struct Search {
    width: usize,
    /// Poset index at each position.
    order: Vec<usize>,
    /// Per position: earlier positions strictly below it.
    below: Vec<u64>,
    /// Per position: earlier positions incomparable to it.
    incomparable: Vec<u64>,
    /// Per position: largest popcount its mask may have and still leave
    /// room for the longest chain above it.
    max_pop: Vec<u32>,
    masks: Vec<u64>,
}

impl Search {
    fn new(p: &Poset, width: usize) -> Self {
        let order = p.linear_extension();
        let n = order.len();
        let mut position = vec![0usize; n];
        for (pos, &x) in order.iter().enumerate() {
            position[x] = pos;
        }
        let above = p.heights_above();
        let mut below = vec![0u64; n];
        let mut incomparable = vec![0u64; n];
        for (pos, &x) in order.iter().enumerate() {
            for (earlier, &y) in order[..pos].iter().enumerate() {
                if p.leq(y, x) {
                    below[pos] |= 1 << earlier;
                } else {
                    incomparable[pos] |= 1 << earlier;
                }
            }
        }
        let max_pop = order
            .iter()
            .map(|&x| (width - above[x].min(width)) as u32)
            .collect();
        Search {
            width,
            order,
            below,
            incomparable,
            max_pop,
            masks: vec![0; n],
        }
    }

    /// Labels positions `pos..`, given that coordinates `0..used` are the
    /// ones in use so far.
    fn run(&mut self, pos: usize, used: usize) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let mut floor = 0u64;
        let mut below = self.below[pos];
        while below != 0 {
            floor |= self.masks[below.trailing_zeros() as usize];
            below &= below - 1;
        }
        let low = (1u64 << used) - 1;
        let free = low & !floor;
        let base_pop = floor.count_ones();
        for fresh in 0..=(self.width - used) {
            if base_pop + fresh as u32 > self.max_pop[pos] {
                break;
            }
            let high = ((1u64 << fresh) - 1) << used;
            let mut sub = 0u64;
            loop {
                let cand = floor | sub | high;
                if cand.count_ones() <= self.max_pop[pos] && self.admissible(pos, cand) {
                    self.masks[pos] = cand;
                    if self.run(pos + 1, used + fresh) {
                        return true;
                    }
                }
                if sub == free {
                    break;
                }
                sub = sub.wrapping_sub(free) & free;
            }
        }
        false
    }

    fn admissible(&self, pos: usize, cand: u64) -> bool {
        let mut below = self.below[pos];
        while below != 0 {
            if self.masks[below.trailing_zeros() as usize] == cand {
                return false;
            }
            below &= below - 1;
        }
        let mut inc = self.incomparable[pos];
        while inc != 0 {
            let m = self.masks[inc.trailing_zeros() as usize];
            if m & !cand == 0 || cand & !m == 0 {
                return false;
            }
            inc &= inc - 1;
        }
        true
    }
}

/// Size limits for [`two_dimension_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverLimits {
    pub max_size: usize,
}

impl Default for SolverLimits {
    fn default() -> Self {
        SolverLimits {
            max_size: DEFAULT_SOLVER_LIMIT,
        }
    }
}

/// The exact 2-dimension, searching widths upward from [`lower_bound`].
pub fn two_dimension(p: &Poset) -> Result<DimCertificate> {
    two_dimension_with(p, SolverLimits::default())
}

pub fn two_dimension_with(p: &Poset, limits: SolverLimits) -> Result<DimCertificate> {
    let start = lower_bound(p)?;
    if p.len() > limits.max_size.min(MASK_LIMIT) {
        return Err(Error::TooLarge {
            what: "exact 2-dimension",
            size: p.len(),
            limit: limits.max_size.min(MASK_LIMIT),
        });
    }
    // the canonical embedding has width |P|, so the loop ends by then
    for width in start..=p.len().min(SEARCH_WIDTH_LIMIT) {
        if let Some(witness) = exists_embedding(p, width)? {
            return Ok(DimCertificate {
                value: width,
                witness,
                exhausted_below: true,
            });
        }
    }
    unreachable!("the canonical embedding has width |P|")
}

/// Extends an embedding of `p` minus a beat point to all of `p`, adding one
/// coordinate.
///
/// For an up-beat point `x` with witness `y = min{z > x}` the new masks are
/// `mask(y)·0` at `x`, `mask(z)·0` for `z < x` and `mask(z)·1` elsewhere.
/// For a down-beat point the dual holds: `mask(y)·1` at `x` with
/// `y = max{z < x}`, `mask(z)·1` for `z > x` and `mask(z)·0` elsewhere.
pub fn extend_embedding_at_beat_point(
    p: &Poset,
    w: &BeatPointWitness,
    e: &CubeEmbedding,
) -> Result<CubeEmbedding> {
    let (x, y) = w.validate(p).map_err(|err| match err {
        Error::InvalidWitness(_) => err,
        other => Error::InvalidWitness(format!("{other}")),
    })?;
    let reduced = p.without(x);
    if e.poset().len() != reduced.len() {
        return Err(Error::InvalidEmbedding(format!(
            "embedding has {} elements, expected {}",
            e.poset().len(),
            reduced.len()
        )));
    }
    let sub_masks = reduced
        .names()
        .iter()
        .map(|s| {
            e.mask_of(s)
                .ok_or_else(|| Error::InvalidEmbedding(format!("no mask for {s}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let sub = CubeEmbedding::new(reduced, e.width(), sub_masks)?;
    if !sub.verify() {
        return Err(Error::InvalidEmbedding(format!(
            "masks do not embed the poset without {}",
            w.point
        )));
    }
    let width = e.width() + 1;
    if width > MASK_LIMIT {
        return Err(Error::TooWide {
            width,
            limit: MASK_LIMIT,
        });
    }
    let new_bit = 1u64 << e.width();
    let old = |z: usize| e.mask_of(p.name(z)).expect("checked above");
    let masks = (0..p.len())
        .map(|z| match w.kind {
            BeatKind::Up if z == x => old(y),
            BeatKind::Up if p.lt(z, x) => old(z),
            BeatKind::Up => old(z) | new_bit,
            BeatKind::Down if z == x => old(y) | new_bit,
            BeatKind::Down if p.lt(x, z) => old(z) | new_bit,
            BeatKind::Down => old(z),
        })
        .collect();
    let out = CubeEmbedding::new(p.clone(), width, masks)?;
    if !out.verify() {
        return Err(Error::InvalidEmbedding(format!(
            "extension at {} does not verify",
            w.point
        )));
    }
    Ok(out)
}

/// Embeds the core exactly, then replays the core trace backwards through
/// [`extend_embedding_at_beat_point`]. For a contractible poset the width is
/// the number of removals, at most `|P| - 1`.
///
/// Cores larger than the default solver limit are embedded canonically.
pub fn contractible_embedding(p: &Poset) -> Result<CubeEmbedding> {
    check_mask_size(p)?;
    let trace = homotopy::core(p)?;
    let stages = trace.stages();
    let core = stages.last().expect("stages include the core");
    let mut e = if core.len() == 1 {
        CubeEmbedding::new(core.clone(), 0, vec![0])?
    } else if core.len() <= DEFAULT_SOLVER_LIMIT {
        two_dimension(core)?.witness
    } else {
        canonical_embedding(core)?
    };
    for (stage, w) in stages.iter().zip(&trace.removals).rev() {
        e = extend_embedding_at_beat_point(stage, w, &e)?;
    }
    Ok(e)
}
