mod common;

use common::*;
use lattice_tax::formats::{parse_cxt, serialize_cxt};
use lattice_tax::{AttributeSet, FormalContext, ObjectSet};
use proptest::prelude::*;

fn subset_of(universe: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(any::<bool>(), universe)
        .prop_map(|bits| bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i).collect())
}

/// A table plus three attribute subsets and two object subsets over it.
fn with_subsets() -> impl Strategy<Value = (Table, usize, [Vec<usize>; 3], [Vec<usize>; 2])> {
    table_strategy(12, 12).prop_flat_map(|(t, m)| {
        let g = t.len();
        (Just(t), Just(m), [subset_of(m), subset_of(m), subset_of(m)], [subset_of(g), subset_of(g)])
    })
}

/// Checks the derivation identities and closure laws on the attribute side
/// of `ctx`; calling it on the transpose covers the object side.
fn check_side(ctx: &FormalContext, a1: &AttributeSet, a2: &AttributeSet, b: &ObjectSet) {
    let d = |x: &AttributeSet| ctx.derive_attributes(x).unwrap();
    let dd = |x: &ObjectSet| ctx.derive_objects(x).unwrap();
    let close = |x: &AttributeSet| ctx.closure_attributes(x).unwrap();

    let lo = a1.intersection(a2);
    // antitone
    assert!(d(a1).is_subset(&d(&lo)));
    // extensive
    assert!(a1.is_subset(&close(a1)));
    // triple prime
    assert_eq!(d(a1), d(&dd(&d(a1))));
    // union law
    assert_eq!(d(&a1.union(a2)), d(a1).intersection(&d(a2)));
    // Galois connection
    assert_eq!(a1.is_subset(&dd(b)), b.is_subset(&d(a1)));
    // closure operator
    assert_eq!(close(&close(a1)), close(a1));
    assert!(close(&lo).is_subset(&close(a1)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn derivations_match_oracle((t, m, [a, _, _], [b, _]) in with_subsets()) {
        let ctx = to_context(&t, m);
        prop_assert_eq!(ctx.derive_attributes(&attrs(&ctx, &a)).unwrap().to_vec(), common_objects(&t, &a));
        prop_assert_eq!(ctx.derive_objects(&objs(&ctx, &b)).unwrap().to_vec(), common_attributes(&t, m, &b));
        prop_assert_eq!(ctx.closure_attributes(&attrs(&ctx, &a)).unwrap().to_vec(), attribute_closure(&t, m, &a));
    }

    #[test]
    fn derivation_laws_both_sides((t, m, [a1, a2, _], [b1, b2]) in with_subsets()) {
        let ctx = to_context(&t, m);
        check_side(&ctx, &attrs(&ctx, &a1), &attrs(&ctx, &a2), &objs(&ctx, &b1));
        let tr = ctx.transpose();
        let as_attrs = |v: &[usize]| AttributeSet::from_indices(tr.attribute_count(), v.iter().copied()).unwrap();
        let as_objs = |v: &[usize]| ObjectSet::from_indices(tr.object_count(), v.iter().copied()).unwrap();
        check_side(&tr, &as_attrs(&b1), &as_attrs(&b2), &as_objs(&a1));
    }

    #[test]
    fn empty_set_conventions((t, m) in table_strategy(8, 8)) {
        let ctx = to_context(&t, m);
        prop_assert!(ctx.derive_objects(&ctx.empty_objects()).unwrap().is_full());
        prop_assert!(ctx.derive_attributes(&ctx.empty_attributes()).unwrap().is_full());
    }

    #[test]
    fn transpose_is_an_involution((t, m) in table_strategy(12, 12)) {
        let ctx = to_context(&t, m);
        prop_assert_eq!(ctx.transpose().transpose(), ctx);
    }

    #[test]
    fn cxt_round_trip((t, m) in table_strategy(12, 12)) {
        let ctx = to_context(&t, m);
        let text = serialize_cxt(&ctx);
        let (back, report) = parse_cxt(&text).unwrap();
        prop_assert!(report.is_clean());
        prop_assert_eq!(serialize_cxt(&back), text);
        prop_assert_eq!(back, ctx);
    }

    #[test]
    fn json_round_trip((t, m) in table_strategy(8, 8)) {
        let ctx = to_context(&t, m);
        let text = serde_json::to_string(&ctx).unwrap();
        prop_assert_eq!(serde_json::from_str::<FormalContext>(&text).unwrap(), ctx);
    }
}
