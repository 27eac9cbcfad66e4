mod common;

use std::collections::BTreeSet;

use common::*;
use lattice_tax::implication::{
    complete_exhaustive, duquenne_guigues_base, implication_closure, support, verify_base, BaseReport, ImplicationBase,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn dg_premises_are_the_pseudo_intents((t, m) in table_strategy(8, 8)) {
        let ctx = to_context(&t, m);
        let base = duquenne_guigues_base(&ctx);
        let premises: Vec<Vec<usize>> = base.iter().map(|i| i.premise().to_vec()).collect();
        let distinct: BTreeSet<_> = premises.iter().cloned().collect();
        prop_assert_eq!(distinct.len(), premises.len());
        prop_assert_eq!(distinct, pseudo_intents(&t, m));
        for pair in base.implications.windows(2) {
            prop_assert_eq!(pair[0].premise().lectic_cmp(pair[1].premise()), std::cmp::Ordering::Less);
        }
    }

    #[test]
    fn dg_is_sound_complete_minimal((t, m) in table_strategy(10, 10)) {
        let ctx = to_context(&t, m);
        let base = duquenne_guigues_base(&ctx);
        for imp in base.iter() {
            prop_assert!(imp.holds_in(&ctx).unwrap());
            prop_assert!(ctx.closure_attributes(imp.premise()).unwrap() != *imp.premise());
            let sup = support(&ctx, imp).unwrap();
            prop_assert_eq!(Some(sup), imp.support());
            prop_assert_eq!(sup, common_objects(&t, &imp.premise().to_vec()).len());
        }
        for x in subsets(m) {
            let x = attrs(&ctx, &x);
            prop_assert_eq!(implication_closure(&base.implications, &x), ctx.closure_attributes(&x).unwrap());
        }
        prop_assert_eq!(verify_base(&ctx, &base).unwrap(), BaseReport { sound: true, complete: true, minimal: true });
        for skip in 0..base.len() {
            let mut rest = base.implications.clone();
            rest.remove(skip);
            prop_assert!(!complete_exhaustive(&ctx, &rest));
        }
    }

    #[test]
    fn verify_flags_broken_bases((t, m) in table_strategy(8, 8)) {
        let ctx = to_context(&t, m);
        let dg = duquenne_guigues_base(&ctx);
        if !dg.is_empty() {
            let mut short = dg.clone();
            short.implications.pop();
            prop_assert!(!verify_base(&ctx, &short).unwrap().complete);
            let mut doubled = dg.clone();
            doubled.implications.push(dg.implications[0].clone());
            let report = verify_base(&ctx, &doubled).unwrap();
            prop_assert!(report.sound && report.complete && !report.minimal);
        }
        let empty = ImplicationBase::new(dg.provenance);
        prop_assert_eq!(verify_base(&ctx, &empty).unwrap().complete, dg.is_empty());
    }
}
