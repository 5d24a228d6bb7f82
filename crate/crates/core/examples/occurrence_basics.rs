//! Finding patterns inside patterns and instances: a bijection, a value merge and a variable merge.

use csppat::catalog::demo;
use csppat::model::CspInstance;
use csppat::occurrence::{occurs, occurs_in_instance};

fn main() {
    let host = demo::host();
    for (name, chi) in [
        ("crossed", demo::crossed()),
        ("value merge", demo::value_merge()),
        ("variable merge", demo::variable_merge()),
    ] {
        let occ = occurs(&chi, &host).unwrap().expect("contained in the host");
        println!("{name}: varMap={:?} pointMap={:?}", occ.renaming.var_map, occ.renaming.point_map);
    }

    // x=0 conflicts with y=0, which conflicts with z=0: the negtrans pattern occurs
    let mut b = CspInstance::builder(vec![vec![0, 1]; 3]);
    b.disallow((0, 0), (1, 0)).disallow((1, 0), (2, 0));
    let chain = b.build().unwrap();
    let negtrans = csppat::catalog::negtrans();
    match occurs_in_instance(&negtrans, &chain).unwrap() {
        Some(o) => println!("negtrans in chain: varMap={:?}", o.renaming.var_map),
        None => println!("negtrans in chain: none"),
    }
}
