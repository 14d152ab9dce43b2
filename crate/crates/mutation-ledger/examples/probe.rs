//! Print Ext tables for pairs of named bundles on a roof.
//!
//!     cargo run -p mutation-ledger --example probe -- G2 "O(1,1)" "S^v(1,1)"

use ext_engine::{condition_dagger, ext_gp, ext_on_m_report, HomogeneousBundle};
use roof_catalog::BundleRef;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let roof = roof_catalog::roof(&args[0]).expect("roof");
    for pair in args[1..].chunks(2) {
        let a: BundleRef = pair[0].parse().expect("bundle");
        let b: BundleRef = pair[1].parse().expect("bundle");
        let ea = HomogeneousBundle::named(&roof, &a).expect("a");
        let eb = HomogeneousBundle::named(&roof, &b).expect("b");
        let r = ext_on_m_report(&roof, &ea, &eb).expect("ext");
        let d = condition_dagger(&roof, &ea, &eb).expect("dagger");
        println!("Ext_M({a},{b}) = {}", r.ext);
        println!("  ambient {} / twisted {}", r.untwisted.dims, r.twisted.dims);
        println!("  reverse ambient {}", ext_gp(&eb, &ea).expect("rev").dims);
        println!("  dagger {} : Ext(E2,E1) = {} ; Ext(E1 L,E2) = {}", d.holds, d.ext_e2_e1.dims, d.ext_e1l_e2.dims);
    }
}
