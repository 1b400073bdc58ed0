//! Standard posets and the non-Hausdorff cone and suspension.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poset::Poset;

/// Largest accepted hypercube dimension. The order is stored densely, so
/// `2^n` elements cost `4^n` bits.
pub const HYPERCUBE_LIMIT: usize = 12;

/// The named families of [`standard_poset`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardPoset {
    /// `c0 < c1 < ... < c{n-1}`.
    Chain(usize),
    /// `n` pairwise incomparable points `a0 .. a{n-1}`.
    Antichain(usize),
    /// The Boolean lattice of `n`-bit masks ordered by containment. The
    /// element for a mask is `b` followed by its bits, coordinate 0 first.
    Hypercube(usize),
    /// The two-point space `0 < 1`.
    Sierpinski,
}

pub fn standard_poset(kind: StandardPoset) -> Result<Poset> {
    match kind {
        StandardPoset::Chain(n) => Ok(chain(n)),
        StandardPoset::Antichain(n) => Ok(antichain(n)),
        StandardPoset::Hypercube(n) => hypercube(n),
        StandardPoset::Sierpinski => Ok(sierpinski()),
    }
}

pub fn chain(n: usize) -> Poset {
    let names = (0..n).map(|i| format!("c{i}")).collect();
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Poset::from_pairs(names, &pairs).expect("a chain is a poset")
}

pub fn antichain(n: usize) -> Poset {
    let names = (0..n).map(|i| format!("a{i}")).collect();
    Poset::from_pairs(names, &[]).expect("an antichain is a poset")
}

pub fn sierpinski() -> Poset {
    Poset::from_pairs(alloc::vec!["0".into(), "1".into()], &[(0, 1)])
        .expect("the Sierpinski space is a poset")
}

pub fn singleton(name: &str) -> Poset {
    Poset::from_pairs(alloc::vec![String::from(name)], &[]).expect("a point is a poset")
}

/// Name of the hypercube element for `mask`.
pub fn mask_name(mask: u64, width: usize) -> String {
    let mut s = String::with_capacity(width + 1);
    s.push('b');
    for i in 0..width {
        s.push(if mask >> i & 1 == 1 { '1' } else { '0' });
    }
    s
}

pub fn hypercube(n: usize) -> Result<Poset> {
    if n > HYPERCUBE_LIMIT {
        return Err(Error::TooLarge {
            what: "hypercube dimension",
            size: n,
            limit: HYPERCUBE_LIMIT,
        });
    }
    let size = 1usize << n;
    let names = (0..size as u64).map(|m| mask_name(m, n)).collect();
    Poset::from_relation(names, |i, j| i & !j == 0)
}

/// Smallest `k >= 1` such that no element is named `{prefix}{k}` for any of
/// the given prefixes.
fn fresh_index(p: &Poset, prefixes: &[char]) -> usize {
    p.names()
        .iter()
        .filter_map(|s| {
            let mut chars = s.chars();
            let first = chars.next()?;
            if !prefixes.contains(&first) {
                return None;
            }
            chars.as_str().parse::<usize>().ok()
        })
        .max()
        .map_or(1, |k| k + 1)
}

/// The non-Hausdorff cone: `p` with a new maximum named `*k`.
pub fn cone(p: &Poset) -> Poset {
    let k = fresh_index(p, &['*']);
    p.join(&singleton(&format!("*{k}")))
}

/// `folds`-fold non-Hausdorff suspension. Each fold adds two incomparable
/// points `+k` and `-k` above everything present. Zero folds returns `p`.
pub fn suspension(p: &Poset, folds: usize) -> Poset {
    let mut out = p.clone();
    for _ in 0..folds {
        let k = fresh_index(&out, &['+', '-']);
        let poles = Poset::from_pairs(alloc::vec![format!("+{k}"), format!("-{k}")], &[])
            .expect("two points form a poset");
        out = out.join(&poles);
    }
    out
}
