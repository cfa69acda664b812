//! Property tests for the algebraic laws: monoid and group structure of
//! tables, the correspondence with permutation families, the embedding
//! of single permutations, subset closure laws, and the numeric action.

use binop_core::affine::{affine_act, RealMatrix, RealVector};
use binop_core::binop::{BinOpTable, Carrier, PermFamily, Permutation};
use binop_core::group::FiniteGroup;
use binop_core::orbits::{apply_set, is_invariant, Subset};
use binop_core::BinaryActionTable;
use proptest::prelude::*;

fn table_strategy(n: usize) -> impl Strategy<Value = BinOpTable> {
    prop::collection::vec(0..n, n * n).prop_map(move |entries| {
        let rows = entries.chunks(n).map(|r| r.to_vec()).collect();
        BinOpTable::from_rows(rows).expect("entries in range")
    })
}

fn any_table() -> impl Strategy<Value = BinOpTable> {
    (1usize..=4).prop_flat_map(table_strategy)
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|image| Permutation::new(image).expect("shuffle of 0..n"))
}

fn family_strategy(n: usize) -> impl Strategy<Value = PermFamily> {
    prop::collection::vec(perm_strategy(n), n)
        .prop_map(|perms| PermFamily::new(perms).expect("n perms on n points"))
}

fn invertible_strategy(n: usize) -> impl Strategy<Value = BinOpTable> {
    family_strategy(n).prop_map(|family| BinOpTable::from_perm_family(&family))
}

/// Three tables on one shared carrier.
fn table_triple() -> impl Strategy<Value = (BinOpTable, BinOpTable, BinOpTable)> {
    (1usize..=4).prop_flat_map(|n| (table_strategy(n), table_strategy(n), table_strategy(n)))
}

proptest! {
    #[test]
    fn composition_is_associative((f, g, h) in table_triple()) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn identity_is_two_sided(f in any_table()) {
        let e = BinOpTable::identity(f.carrier());
        prop_assert_eq!(&f.compose(&e).unwrap(), &f);
        prop_assert_eq!(&e.compose(&f).unwrap(), &f);
    }

    #[test]
    fn inverses_are_two_sided(f in (1usize..=4).prop_flat_map(invertible_strategy)) {
        let e = BinOpTable::identity(f.carrier());
        let inv = f.invert().unwrap();
        prop_assert_eq!(f.compose(&inv).unwrap(), e.clone());
        prop_assert_eq!(inv.compose(&f).unwrap(), e);
    }

    #[test]
    fn inverse_is_involutive_and_antihomomorphic(
        (f, g) in (2usize..=4).prop_flat_map(|n| (invertible_strategy(n), invertible_strategy(n)))
    ) {
        prop_assert_eq!(&f.invert().unwrap().invert().unwrap(), &f);
        let product_inverse = f.compose(&g).unwrap().invert().unwrap();
        let reversed = g.invert().unwrap().compose(&f.invert().unwrap()).unwrap();
        prop_assert_eq!(product_inverse, reversed);
    }

    #[test]
    fn products_of_invertible_tables_are_invertible(
        (f, g) in (1usize..=4).prop_flat_map(|n| (invertible_strategy(n), invertible_strategy(n)))
    ) {
        prop_assert!(f.compose(&g).unwrap().is_invertible());
    }

    #[test]
    fn family_correspondence_is_a_homomorphism(
        (a, b) in (2usize..=4).prop_flat_map(|n| (family_strategy(n), family_strategy(n)))
    ) {
        // Pointwise composition of families maps to table composition.
        let composed_first = BinOpTable::from_perm_family(&a.compose(&b).unwrap());
        let composed_after = BinOpTable::from_perm_family(&a)
            .compose(&BinOpTable::from_perm_family(&b))
            .unwrap();
        prop_assert_eq!(composed_first, composed_after);
    }

    #[test]
    fn family_correspondence_round_trips(a in (1usize..=4).prop_flat_map(family_strategy)) {
        let table = BinOpTable::from_perm_family(&a);
        prop_assert_eq!(table.to_perm_family().unwrap(), a);
        let again = BinOpTable::from_perm_family(&table.to_perm_family().unwrap());
        prop_assert_eq!(again, table);
    }

    #[test]
    fn invertible_tables_round_trip_through_families(
        f in (1usize..=4).prop_flat_map(invertible_strategy)
    ) {
        prop_assert_eq!(&BinOpTable::from_perm_family(&f.to_perm_family().unwrap()), &f);
    }

    #[test]
    fn permutation_embedding_is_a_homomorphism(
        (s, t) in (2usize..=5).prop_flat_map(|n| (perm_strategy(n), perm_strategy(n)))
    ) {
        let embedded_product = BinOpTable::embed_permutation(&s.compose(&t).unwrap());
        let product_of_embedded = BinOpTable::embed_permutation(&s)
            .compose(&BinOpTable::embed_permutation(&t))
            .unwrap();
        prop_assert_eq!(embedded_product, product_of_embedded);
        prop_assert_eq!(
            BinOpTable::embed_permutation(&s.inverse()),
            BinOpTable::embed_permutation(&s).invert().unwrap()
        );
    }

    #[test]
    fn subsets_grow_under_the_full_group(
        (m, members) in (1usize..=6).prop_flat_map(|m| {
            (Just(m), prop::collection::btree_set(0..m, 0..=m))
        })
    ) {
        let action = BinaryActionTable::conjugation(FiniteGroup::cyclic(m).unwrap());
        let s = Subset::new(Carrier::new(m).unwrap(), members).unwrap();
        let everyone: Vec<usize> = action.group().elements().collect();
        let gs = apply_set(&action, &everyone, &s).unwrap();
        prop_assert!(s.is_subset_of(&gs));
        // For an abelian conjugation act[g] is translation by g, so GS
        // is empty or the whole carrier; either way it is invariant.
        prop_assert!(is_invariant(&action, &gs).unwrap());
    }

    #[test]
    fn apply_set_is_monotone(
        (m, a, b) in (1usize..=5).prop_flat_map(|m| {
            (
                Just(m),
                prop::collection::btree_set(0..m, 0..=m),
                prop::collection::btree_set(0..m, 0..=m),
            )
        })
    ) {
        let action = BinaryActionTable::conjugation(FiniteGroup::cyclic(m).unwrap());
        let carrier = Carrier::new(m).unwrap();
        let small = Subset::new(carrier, a.clone()).unwrap();
        let large = Subset::new(carrier, a.into_iter().chain(b)).unwrap();
        let everyone: Vec<usize> = action.group().elements().collect();
        let gs_small = apply_set(&action, &everyone, &small).unwrap();
        let gs_large = apply_set(&action, &everyone, &large).unwrap();
        prop_assert!(gs_small.is_subset_of(&gs_large));
    }

    #[test]
    fn numeric_composition_axiom_holds_to_tolerance(
        a in prop::array::uniform4(-1.0f64..=1.0),
        b in prop::array::uniform4(-1.0f64..=1.0),
        x in prop::array::uniform2(-1.0f64..=1.0),
        y in prop::array::uniform2(-1.0f64..=1.0),
    ) {
        let det = |m: &[f64; 4]| m[0] * m[3] - m[1] * m[2];
        prop_assume!(det(&a).abs() >= 1e-3 && det(&b).abs() >= 1e-3);
        let to_matrix = |m: &[f64; 4]| {
            RealMatrix::from_rows(vec![vec![m[0], m[1]], vec![m[2], m[3]]]).unwrap()
        };
        let (a, b) = (to_matrix(&a), to_matrix(&b));
        let x = RealVector::new(x.to_vec()).unwrap();
        let y = RealVector::new(y.to_vec()).unwrap();

        let nested = affine_act(&a, &x, &affine_act(&b, &x, &y).unwrap()).unwrap();
        let direct = affine_act(&a.matmul(&b).unwrap(), &x, &y).unwrap();
        prop_assert!(nested.max_norm_distance(&direct) <= 1e-9);

        let singleton = affine_act(&a, &x, &x).unwrap();
        prop_assert!(singleton.max_norm_distance(&x) <= 1e-12);
    }
}
