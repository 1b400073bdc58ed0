//! Order isomorphism by backtracking, plus a brute-force canonical form for
//! deduplicating small posets.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poset::Poset;

/// Default size guard for [`is_isomorphic`].
pub const ISO_LIMIT: usize = 10;

/// Largest poset [`canonical_form`] accepts (the code has to fit in 128 bits).
pub const CANONICAL_LIMIT: usize = 11;

/// Per-element invariant preserved by every isomorphism.
fn signatures(p: &Poset) -> Vec<(usize, usize, usize, usize)> {
    let below = p.heights_below();
    let above = p.heights_above();
    (0..p.len())
        .map(|i| (below[i], above[i], p.below_count(i), p.above_count(i)))
        .collect()
}

/// Whether `p` and `q` are order-isomorphic, for posets up to [`ISO_LIMIT`].
pub fn is_isomorphic(p: &Poset, q: &Poset) -> Result<bool> {
    is_isomorphic_within(p, q, ISO_LIMIT)
}

/// [`is_isomorphic`] with an explicit size guard.
pub fn is_isomorphic_within(p: &Poset, q: &Poset, limit: usize) -> Result<bool> {
    let size = p.len().max(q.len());
    if size > limit {
        return Err(Error::TooLarge {
            what: "isomorphism test",
            size,
            limit,
        });
    }
    Ok(find_isomorphism(p, q).is_some())
}

/// An isomorphism `p -> q` as an index assignment, if one exists.
pub fn find_isomorphism(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    if p.len() != q.len() {
        return None;
    }
    let sp = signatures(p);
    let sq = signatures(q);
    let mut a = sp.clone();
    let mut b = sq.clone();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return None;
    }
    let order = p.linear_extension();
    let mut image = vec![usize::MAX; p.len()];
    let mut used = vec![false; q.len()];
    if extend(p, q, &sp, &sq, &order, 0, &mut image, &mut used) {
        Some(image)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    p: &Poset,
    q: &Poset,
    sp: &[(usize, usize, usize, usize)],
    sq: &[(usize, usize, usize, usize)],
    order: &[usize],
    depth: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&x) = order.get(depth) else {
        return true;
    };
    for y in 0..q.len() {
        if used[y] || sp[x] != sq[y] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&a| {
            let fa = image[a];
            p.leq(a, x) == q.leq(fa, y) && p.leq(x, a) == q.leq(y, fa)
        });
        if !consistent {
            continue;
        }
        image[x] = y;
        used[y] = true;
        if extend(p, q, sp, sq, order, depth + 1, image, used) {
            return true;
        }
        used[y] = false;
    }
    image[x] = usize::MAX;
    false
}

/// A labeling-independent code: equal codes iff isomorphic posets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub size: usize,
    pub code: u128,
}

/// The minimum relation encoding over all relabelings that list elements in
/// ascending invariant order.
pub fn canonical_form(p: &Poset) -> Result<CanonicalForm> {
    let n = p.len();
    if n > CANONICAL_LIMIT {
        return Err(Error::TooLarge {
            what: "canonical form",
            size: n,
            limit: CANONICAL_LIMIT,
        });
    }
    let sig = signatures(p);
    let mut elems: Vec<usize> = (0..n).collect();
    elems.sort_by_key(|&i| (sig[i], i));
    // cells of equal signature; only permutations inside a cell are tried
    let mut cells: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || sig[elems[i]] != sig[elems[start]] {
            cells.push((start, i));
            start = i;
        }
    }
    let mut best = u128::MAX;
    let mut perm = elems.clone();
    permute_cells(&mut perm, &cells, 0, &mut |perm| {
        let code = encode(p, perm);
        if code < best {
            best = code;
        }
    });
    Ok(CanonicalForm { size: n, code: best })
}

fn encode(p: &Poset, perm: &[usize]) -> u128 {
    let mut code = 0u128;
    for &i in perm {
        for &j in perm {
            if i != j {
                code = code << 1 | u128::from(p.leq(i, j));
            }
        }
    }
    code
}

fn permute_cells(
    perm: &mut [usize],
    cells: &[(usize, usize)],
    cell: usize,
    visit: &mut dyn FnMut(&[usize]),
) {
    let Some(&(lo, hi)) = cells.get(cell) else {
        visit(perm);
        return;
    };
    heap_permutations(perm, lo, hi, hi - lo, &mut |perm| {
        permute_cells(perm, cells, cell + 1, visit)
    });
}

// Heap's algorithm over perm[lo..hi].
fn heap_permutations(
    perm: &mut [usize],
    lo: usize,
    hi: usize,
    k: usize,
    visit: &mut dyn FnMut(&mut [usize]),
) {
    if k <= 1 {
        visit(perm);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(perm, lo, hi, k - 1, visit);
        if k % 2 == 0 {
            perm.swap(lo + i, lo + k - 1);
        } else {
            perm.swap(lo, lo + k - 1);
        }
    }
    heap_permutations(perm, lo, hi, k - 1, visit);
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::string::String;

    fn chain_named(names: &[&str]) -> Poset {
        let pairs: Vec<(usize, usize)> = (1..names.len()).map(|i| (i - 1, i)).collect();
        Poset::from_pairs(names.iter().map(|s| String::from(*s)).collect(), &pairs).unwrap()
    }

    fn antichain(n: usize) -> Poset {
        Poset::from_pairs((0..n).map(|i| format!("{i}")).collect(), &[]).unwrap()
    }

    #[test]
    fn relabeled_chains_are_isomorphic() {
        let a = chain_named(&["a", "b", "c"]);
        let b = chain_named(&["z", "y", "x"]);
        assert!(is_isomorphic(&a, &b).unwrap());
        assert!(!is_isomorphic(&a, &antichain(3)).unwrap());
    }

    #[test]
    fn guard_is_enforced() {
        let big = antichain(11);
        assert!(matches!(
            is_isomorphic(&big, &big),
            Err(Error::TooLarge { .. })
        ));
        assert!(is_isomorphic_within(&big, &big, 11).unwrap());
    }

    #[test]
    fn fence_vs_diamond() {
        // two minima below two maxima, versus the 2x2 cube
        let fence = Poset::new(
            ["a", "b", "+", "-"],
            [("a", "+"), ("a", "-"), ("b", "+"), ("b", "-")],
        )
        .unwrap();
        let cube = Poset::new(["0", "x", "y", "1"], [("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")])
            .unwrap();
        assert!(!is_isomorphic(&fence, &cube).unwrap());
    }

    #[test]
    fn canonical_form_ignores_labels() {
        // N poset under two labelings
        let n1 = Poset::new(["a", "b", "c", "d"], [("a", "c"), ("b", "c"), ("b", "d")]).unwrap();
        let n2 = Poset::new(["w", "x", "y", "z"], [("z", "y"), ("x", "y"), ("x", "w")]).unwrap();
        assert_eq!(canonical_form(&n1).unwrap(), canonical_form(&n2).unwrap());
        let other = Poset::new(["a", "b", "c", "d"], [("a", "c"), ("b", "c"), ("a", "d")]).unwrap();
        assert_eq!(canonical_form(&n1).unwrap(), canonical_form(&other).unwrap());
        let z = Poset::new(["a", "b", "c", "d"], [("a", "c"), ("b", "c"), ("c", "d")]).unwrap();
        assert_ne!(canonical_form(&n1).unwrap(), canonical_form(&z).unwrap());
    }
}
