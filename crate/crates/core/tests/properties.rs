use posetdim_core::census::{enumerate_posets, random_cores, random_poset};
use posetdim_core::constructions::{antichain, cone, singleton, suspension};
use posetdim_core::dimension::{
    canonical_embedding, contractible_embedding, extend_embedding_at_beat_point, two_dimension,
};
use posetdim_core::family::construction_sequence;
use posetdim_core::homotopy::{beat_points, core, is_contractible, BeatKind};
use posetdim_core::iso::{canonical_form, is_isomorphic};
use posetdim_core::{MonotoneMap, Poset};
use proptest::prelude::*;

fn small_poset(max: usize) -> impl Strategy<Value = Poset> {
    (1..=max, 0.0f64..=1.0, any::<u64>()).prop_map(|(n, p, seed)| random_poset(n, p, seed))
}

fn is_partial_order(p: &Poset) -> bool {
    let n = p.len();
    (0..n).all(|x| p.leq(x, x))
        && (0..n).all(|x| (0..n).all(|y| x == y || !(p.leq(x, y) && p.leq(y, x))))
        && (0..n).all(|x| {
            (0..n).all(|y| (0..n).all(|z| !(p.leq(x, y) && p.leq(y, z)) || p.leq(x, z)))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn built_posets_are_partial_orders(p in small_poset(9)) {
        prop_assert!(is_partial_order(&p));
        prop_assert!(is_partial_order(&p.opposite()));
    }

    #[test]
    fn covers_generate_the_order(p in small_poset(6)) {
        let rebuilt = Poset::from_pairs(p.names().to_vec(), &p.covers()).unwrap();
        prop_assert_eq!(&rebuilt, &p);
    }

    #[test]
    fn opposite_reverses_covers(p in small_poset(8)) {
        let op = p.opposite();
        prop_assert_eq!(&op.opposite(), &p);
        let mut reversed: Vec<_> = p.covers().into_iter().map(|(a, b)| (b, a)).collect();
        reversed.sort();
        let mut op_covers = op.covers();
        op_covers.sort();
        prop_assert_eq!(reversed, op_covers);
    }

    #[test]
    fn product_and_union_sizes(p in small_poset(5), q in small_poset(5)) {
        let prod = p.product(&q);
        prop_assert_eq!(prod.len(), p.len() * q.len());
        prop_assert!(is_partial_order(&prod));
        let union = p.disjoint_union(&q);
        prop_assert_eq!(union.len(), p.len() + q.len());
        // no cross comparabilities; each side restricts to itself
        for i in 0..p.len() {
            for j in p.len()..union.len() {
                prop_assert!(!union.comparable(i, j));
            }
        }
        let left: Vec<usize> = (0..p.len()).collect();
        prop_assert!(is_isomorphic(&union.restrict(&left), &p).unwrap());
        let right: Vec<usize> = (p.len()..union.len()).collect();
        prop_assert!(is_isomorphic(&union.restrict(&right), &q).unwrap());
    }

    #[test]
    fn linear_extension_refines_order(p in small_poset(9)) {
        let stats = p.structure_stats();
        let mut pos = vec![0; p.len()];
        for (k, &x) in stats.linear_extension.iter().enumerate() {
            pos[x] = k;
        }
        for x in 0..p.len() {
            for y in 0..p.len() {
                if p.lt(x, y) {
                    prop_assert!(pos[x] < pos[y]);
                }
            }
        }
        prop_assert_eq!(stats.linear_extension, p.linear_extension());
    }

    #[test]
    fn beat_points_dualize(p in small_poset(7)) {
        let mut direct: Vec<_> = beat_points(&p)
            .into_iter()
            .map(|w| (w.point, w.kind.dual(), w.witness))
            .collect();
        let mut dual: Vec<_> = beat_points(&p.opposite())
            .into_iter()
            .map(|w| (w.point, w.kind, w.witness))
            .collect();
        direct.sort();
        dual.sort();
        prop_assert_eq!(direct, dual);
    }

    #[test]
    fn core_is_idempotent(p in small_poset(8)) {
        let t = core(&p).unwrap();
        prop_assert!(beat_points(&t.core).is_empty());
        prop_assert_eq!(t.core.len() + t.removals.len(), p.len());
        prop_assert!(core(&t.core).unwrap().removals.is_empty());
        for (stage, w) in t.stages().iter().zip(&t.removals) {
            prop_assert!(w.validate(stage).is_ok());
        }
    }

    #[test]
    fn produced_embeddings_verify(p in small_poset(7)) {
        prop_assert!(canonical_embedding(&p).unwrap().verify());
        let cert = two_dimension(&p).unwrap();
        prop_assert!(cert.verify());
        let e = contractible_embedding(&p).unwrap();
        prop_assert!(e.verify());
        prop_assert!(e.width() >= cert.value);
        // complementing a witness embeds the opposite
        prop_assert!(cert.witness.complement().verify());
    }

    #[test]
    fn canonical_form_is_label_invariant(p in small_poset(7), seed in any::<u64>()) {
        // relabel by a seeded rotation of the element order
        let n = p.len();
        let shift = (seed as usize) % n;
        let order: Vec<usize> = (0..n).map(|i| (i + shift) % n).collect();
        let shuffled = p.restrict(&order);
        prop_assert_eq!(canonical_form(&p).unwrap(), canonical_form(&shuffled).unwrap());
        prop_assert!(is_isomorphic(&p, &shuffled).unwrap());
    }
}

#[test]
fn closure_of_covers_is_identity_on_all_small_posets() {
    for n in 1..=5 {
        for p in enumerate_posets(n, false).unwrap() {
            assert!(is_partial_order(&p));
            let rebuilt = Poset::from_pairs(p.names().to_vec(), &p.covers()).unwrap();
            assert_eq!(rebuilt, p);
        }
    }
    for p in enumerate_posets(6, true).unwrap() {
        let rebuilt = Poset::from_pairs(p.names().to_vec(), &p.covers()).unwrap();
        assert_eq!(rebuilt, p);
    }
}

#[test]
fn inclusions_of_subposets_are_initial_and_injective() {
    for n in 1..=5 {
        for p in enumerate_posets(n, true).unwrap() {
            for subset in 1u32..(1 << n) {
                let names: Vec<&str> = (0..n)
                    .filter(|&i| subset >> i & 1 == 1)
                    .map(|i| p.name(i))
                    .collect();
                let sub = p.induced_subposet(names.iter().copied()).unwrap();
                let inc = MonotoneMap::inclusion(&sub, &p).unwrap();
                assert!(inc.is_initial());
                assert!(inc.is_injective());
            }
        }
    }
}

#[test]
fn initial_maps_are_injective() {
    // every monotone map between small posets that is initial is injective
    let sources = enumerate_posets(3, true).unwrap();
    let targets = enumerate_posets(3, true).unwrap();
    for s in &sources {
        for t in &targets {
            for code in 0..27usize {
                let assignment = vec![code % 3, code / 3 % 3, code / 9];
                if let Ok(f) = MonotoneMap::new(s, t, assignment) {
                    if f.is_initial() {
                        assert!(f.is_injective());
                    }
                }
            }
        }
    }
}

#[test]
fn core_is_invariant_under_beat_point_removal() {
    for n in 1..=6 {
        for p in enumerate_posets(n, true).unwrap() {
            let c = core(&p).unwrap().core;
            for w in beat_points(&p) {
                let x = p.index_of(&w.point).unwrap();
                let c2 = core(&p.without(x)).unwrap().core;
                assert!(is_isomorphic(&c, &c2).unwrap(), "{p:?} removing {}", w.point);
            }
        }
    }
}

#[test]
fn maximum_implies_contractible() {
    for n in 1..=6 {
        for p in enumerate_posets(n, true).unwrap() {
            if p.maximum().is_some() || p.minimum().is_some() {
                assert!(is_contractible(&p).unwrap(), "{p:?}");
            }
        }
    }
}

#[test]
fn core_order_independence_on_five_points() {
    for (i, p) in enumerate_posets(5, true).unwrap().iter().enumerate() {
        let cores = random_cores(p, 10, i as u64).unwrap();
        for a in &cores {
            for b in &cores {
                assert!(is_isomorphic(a, b).unwrap());
            }
        }
    }
}

#[test]
fn cone_and_suspension_are_joins() {
    for n in 1..=6 {
        for p in enumerate_posets(n, true).unwrap() {
            let c = cone(&p);
            assert!(is_isomorphic(&c, &p.join(&singleton("pt"))).unwrap());
            assert!(is_contractible(&c).unwrap());
            let s = suspension(&p, 1);
            assert!(is_isomorphic(&s, &p.join(&antichain(2))).unwrap());
            let maxima: Vec<&str> = (0..s.len())
                .filter(|&i| s.is_maximal(i))
                .map(|i| s.name(i))
                .collect();
            assert_eq!(maxima, ["+1", "-1"]);
        }
    }
}

#[test]
fn topology_census_counts_agree() {
    for n in 1..=5 {
        for p in enumerate_posets(n, false).unwrap() {
            let c = p.topology_census().unwrap();
            assert_eq!(c.open_sets, c.antichains);
        }
    }
}

#[test]
fn opposite_has_the_same_dimension() {
    for n in 1..=5 {
        for p in enumerate_posets(n, true).unwrap() {
            let cert = two_dimension(&p).unwrap();
            let op = cert.witness.complement();
            assert!(op.verify());
            assert_eq!(two_dimension(&p.opposite()).unwrap().value, cert.value);
        }
    }
}

#[test]
fn monotony_over_subposets() {
    for n in 1..=5 {
        for p in enumerate_posets(n, true).unwrap() {
            let d = two_dimension(&p).unwrap().value;
            for subset in 1u32..(1 << n) {
                let idx: Vec<usize> = (0..n).filter(|&i| subset >> i & 1 == 1).collect();
                assert!(two_dimension(&p.restrict(&idx)).unwrap().value <= d);
            }
        }
    }
}

#[test]
fn extension_from_canonical_embeddings() {
    for n in 2..=5 {
        for p in enumerate_posets(n, false).unwrap() {
            for w in beat_points(&p) {
                let reduced = p.without(p.index_of(&w.point).unwrap());
                let e = canonical_embedding(&reduced).unwrap();
                let lifted = extend_embedding_at_beat_point(&p, &w, &e).unwrap();
                assert!(lifted.verify());
                assert_eq!(lifted.width(), e.width() + 1);
            }
        }
    }
}

#[test]
fn construction_sequences_behave() {
    for n in 2..=8 {
        let seq = construction_sequence(n).unwrap();
        assert_eq!(seq.len(), n);
        let dims: Vec<usize> = seq.iter().map(|x| two_dimension(x).unwrap().value).collect();
        let log = (usize::BITS - (n - 1).leading_zeros()) as usize;
        assert_eq!(dims[0], log);
        assert_eq!(dims[n - 1], n - 1);
        for pair in dims.windows(2) {
            assert!(pair[1] <= pair[0] + 1, "n={n}: {dims:?}");
        }
        for (i, x) in seq.iter().enumerate() {
            assert_eq!(x.len(), n);
            let top = x.maximum().expect("every stage has a maximum");
            if i > 0 {
                assert!(beat_points(x)
                    .iter()
                    .any(|w| w.point == x.name(top) && w.kind == BeatKind::Down));
            }
        }
        // the last stage is linear
        assert_eq!(seq[n - 1].height(), n - 1);
    }
}
