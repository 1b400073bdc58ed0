//! Posets of every admissible 2-dimension.
//!
//! For `ceil(log2 n) <= m <= n` there is an `n`-point poset of 2-dimension
//! exactly `m`, contractible when `m < n`. The case `m = n` is covered by
//! iterated suspensions of `S^0` and `D_3`. For `m < n` the builder walks a
//! sequence that starts inside the smallest hypercube holding `n` points and
//! repeatedly moves one point to the top; the dimension rises by at most one
//! per step and ends at `n - 1` on a chain, so every intermediate value is
//! hit.

use alloc::vec::Vec;

use crate::constructions::{antichain, hypercube, mask_name, singleton, suspension};
use crate::dimension::{ceil_log2, two_dimension_with, DimCertificate, SolverLimits};
use crate::error::{Error, Result};
use crate::poset::Poset;

/// Largest `n` accepted by [`construction_sequence`] and [`realize`].
pub const GENERATOR_LIMIT: usize = 10;

fn check_n(n: usize, m: usize) -> Result<()> {
    if !(2..=GENERATOR_LIMIT).contains(&n) {
        return Err(Error::OutOfRange { n, m });
    }
    Ok(())
}

/// The starting poset: the top of the `ceil(log2 n)`-cube together with the
/// `n - 1` numerically smallest masks, in ascending mask order.
pub fn initial_subcube(n: usize) -> Result<Poset> {
    check_n(n, 0)?;
    let k = ceil_log2(n);
    let cube = hypercube(k)?;
    let top = (1u64 << k) - 1;
    let mut masks: Vec<u64> = (0..(n as u64 - 1)).collect();
    masks.push(top);
    let names: Vec<_> = masks.iter().map(|&m| mask_name(m, k)).collect();
    cube.induced_subposet(names.iter().map(|s| s.as_str()))
}

/// `X_1, ..., X_n`: `X_1` is [`initial_subcube`] with maximum `u_1` (the top
/// mask); `X_{i+1}` removes `u_{i+1}` from `X_i` and puts it back as a new
/// maximum, where `u_2, ..., u_n` are the other points of `X_1` in ascending
/// mask order. Every `X_i` has a maximum and `X_n` is a chain.
pub fn construction_sequence(n: usize) -> Result<Vec<Poset>> {
    let first = initial_subcube(n)?;
    let top = first.maximum().expect("the subcube contains the top mask");
    let movers: Vec<usize> = (0..n).filter(|&i| i != top).collect();
    let mut sequence = Vec::with_capacity(n);
    sequence.push(first.clone());
    for &u in &movers {
        let name = first.name(u);
        let prev = sequence.last().expect("sequence starts nonempty");
        let rest = prev.without(prev.require(name)?);
        sequence.push(rest.join(&singleton(name)));
    }
    Ok(sequence)
}

/// An `n`-point poset with 2-dimension exactly `m`, together with the
/// solver's certificate.
pub fn realize_certified(n: usize, m: usize) -> Result<(Poset, DimCertificate)> {
    check_n(n, m)?;
    if m < ceil_log2(n) || m > n {
        return Err(Error::OutOfRange { n, m });
    }
    let limits = SolverLimits {
        max_size: GENERATOR_LIMIT,
    };
    if m == n {
        let p = if n % 2 == 0 {
            suspension(&antichain(2), (n - 2) / 2)
        } else {
            suspension(&antichain(3), (n - 3) / 2)
        };
        let cert = two_dimension_with(&p, limits)?;
        return Ok((p, cert));
    }
    for x in construction_sequence(n)? {
        let cert = two_dimension_with(&x, limits)?;
        if cert.value == m {
            return Ok((x, cert));
        }
    }
    unreachable!("the sequence takes every value from ceil(log2 n) to n - 1")
}

/// [`realize_certified`] without the certificate.
pub fn realize(n: usize, m: usize) -> Result<Poset> {
    realize_certified(n, m).map(|(p, _)| p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{chain, hypercube};
    use crate::dimension::two_dimension;
    use crate::homotopy::{beat_points, is_contractible, BeatKind};
    use crate::iso::is_isomorphic;

    #[test]
    fn two_point_sequence() {
        let seq = construction_sequence(2).unwrap();
        assert_eq!(seq.len(), 2);
        for x in &seq {
            assert!(is_isomorphic(x, &chain(2)).unwrap());
        }
    }

    #[test]
    fn four_point_sequence_endpoints() {
        let seq = construction_sequence(4).unwrap();
        assert!(is_isomorphic(&seq[0], &hypercube(2).unwrap()).unwrap());
        assert!(is_isomorphic(&seq[3], &chain(4)).unwrap());
        let dims: Vec<usize> = seq.iter().map(|x| two_dimension(x).unwrap().value).collect();
        assert_eq!(dims[0], 2);
        assert_eq!(dims[3], 3);
        for pair in dims.windows(2) {
            assert!(pair[1] <= pair[0] + 1);
        }
    }

    #[test]
    fn moved_point_is_a_down_beat_maximum() {
        let seq = construction_sequence(6).unwrap();
        for x in &seq[1..] {
            assert_eq!(x.len(), 6);
            let top = x.name(x.maximum().unwrap());
            assert!(beat_points(x)
                .iter()
                .any(|w| w.point == top && w.kind == BeatKind::Down));
        }
    }

    #[test]
    fn realize_examples() {
        let p = realize(4, 4).unwrap();
        assert!(is_isomorphic(&p, &suspension(&antichain(2), 1)).unwrap());
        let p = realize(5, 5).unwrap();
        assert!(is_isomorphic(&p, &suspension(&antichain(3), 1)).unwrap());
        let (p, cert) = realize_certified(5, 3).unwrap();
        assert_eq!((p.len(), cert.value), (5, 3));
        assert!(is_contractible(&p).unwrap());
        assert_eq!(realize(8, 2), Err(Error::OutOfRange { n: 8, m: 2 }));
        assert_eq!(realize(4, 5), Err(Error::OutOfRange { n: 4, m: 5 }));
        assert_eq!(realize(1, 0), Err(Error::OutOfRange { n: 1, m: 0 }));
        assert!(realize(11, 5).is_err());
    }
}
