// Object-attribute biclusters, their exact densities and dense-bicluster mining.
//
// ```bash
// cargo run -p lattice-tax --example oa_biclusters
// ```

use lattice_tax::bicluster::{density, mine_dense, oa_bicluster, rule_to_bicluster, BiclusterJson, RuleVariant};
use lattice_tax::datasets::fca_related_biclustering;

pub fn run_example() -> lattice_tax::Result<()> {
    let ctx = fca_related_biclustering();

    let whole = density(&ctx, &ctx.all_objects(), &ctx.all_attributes())?;
    println!("whole table density {whole} ({:.3})", whole.to_f64());

    let g = ctx.object_index("OA-biclusters")?;
    let m = ctx.attribute_index("Type:const")?;
    let b = oa_bicluster(&ctx, g, m)?;
    println!("OA-bicluster of (OA-biclusters, Type:const): {} x {}, density {}", b.extent.len(), b.intent.len(), b.density);

    for rho in [1.0, 0.8, 0.0] {
        let found = mine_dense(&ctx, rho)?;
        println!("rho_min {rho}: {} distinct OA-biclusters", found.len());
    }
    let dense = mine_dense(&ctx, 0.8)?;
    println!("{}", serde_json::to_string_pretty(&dense.iter().map(|b| BiclusterJson::new(&ctx, b)).collect::<Vec<_>>()).unwrap());

    // an association rule read as a bicluster
    let premise = ctx.attributes_named(&["Closure:explicit"])?;
    let conclusion = ctx.attributes_named(&["Value type:binary"])?;
    let rule = rule_to_bicluster(&ctx, &premise, &conclusion, RuleVariant::Intersection)?;
    println!("rule bicluster rows {:?}", ctx.object_names(&rule.rows));
    Ok(())
}

fn main() {
    run_example().expect("oa biclusters example");
}
