mod common;

use std::collections::BTreeSet;

use common::*;
use lattice_tax::bicluster::{density, is_formal_concept, mine_dense, oa_bicluster, rule_to_bicluster, RuleVariant};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn oa_biclusters_follow_the_definition((t, m) in table_strategy(10, 10)) {
        let ctx = to_context(&t, m);
        for g in 0..t.len() {
            for j in 0..m {
                if !t[g][j] {
                    prop_assert!(oa_bicluster(&ctx, g, j).is_err());
                    continue;
                }
                let b = oa_bicluster(&ctx, g, j).unwrap();
                let rows = common_objects(&t, &[j]);
                let cols = common_attributes(&t, m, &[g]);
                prop_assert_eq!(b.extent.to_vec(), rows.clone());
                prop_assert_eq!(b.intent.to_vec(), cols.clone());
                prop_assert!(b.extent.contains(g) && b.intent.contains(j));
                prop_assert_eq!(b.density.num as usize, crosses(&t, &rows, &cols));
                prop_assert_eq!(b.density.den as usize, rows.len() * cols.len());
                prop_assert!(b.density.num <= b.density.den);
                prop_assert_eq!(b.density.is_one(), is_formal_concept(&ctx, &b.extent, &b.intent));
                // (g″, g′) ≤ (m′, m″)
                let g_closure = ctx.closure_objects(&objs(&ctx, &[g])).unwrap();
                let m_closure = ctx.closure_attributes(&attrs(&ctx, &[j])).unwrap();
                prop_assert!(g_closure.is_subset(&b.extent));
                prop_assert!(m_closure.is_subset(&b.intent));
            }
        }
    }

    #[test]
    fn mining_is_monotone_and_bounded((t, m) in table_strategy(8, 8), lo in 0.0f64..=1.0, hi in 0.0f64..=1.0) {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let ctx = to_context(&t, m);
        let key = |v: Vec<lattice_tax::bicluster::OABicluster>| -> BTreeSet<(Vec<usize>, Vec<usize>)> {
            v.into_iter().map(|b| (b.extent.to_vec(), b.intent.to_vec())).collect()
        };
        let everything = mine_dense(&ctx, 0.0).unwrap();
        prop_assert!(everything.len() <= ctx.incidence_count());
        let loose = key(mine_dense(&ctx, lo).unwrap());
        let strict = key(mine_dense(&ctx, hi).unwrap());
        prop_assert!(strict.is_subset(&loose));
        for b in mine_dense(&ctx, hi).unwrap() {
            prop_assert!(b.density.to_f64() >= hi - 1e-12);
        }
    }

    #[test]
    fn intersection_variant_is_at_least_as_dense((t, m) in table_strategy(8, 8), seed in any::<u64>()) {
        use rand::{rngs::StdRng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(seed);
        let ctx = to_context(&t, m);
        let a = random_subset(&mut rng, m);
        let b = random_subset(&mut rng, m);
        let (a, b) = (attrs(&ctx, &a), attrs(&ctx, &b));
        let narrow = rule_to_bicluster(&ctx, &a, &b, RuleVariant::Intersection).unwrap();
        let wide = rule_to_bicluster(&ctx, &a, &b, RuleVariant::Union).unwrap();
        prop_assert!(narrow.rows.is_subset(&wide.rows));
        if !narrow.rows.is_empty() && !narrow.columns.is_empty() {
            let dn = density(&ctx, &narrow.rows, &narrow.columns).unwrap();
            let dw = density(&ctx, &wide.rows, &wide.columns).unwrap();
            prop_assert!(dn >= dw, "{} < {}", dn, dw);
            prop_assert!(dn.is_one());
        }
    }
}
