use std::collections::BTreeSet;

use lie_core::Weight;
use roof_catalog::{
    catalog_text, default_roofs, list_roofs, load_catalog, roof, BundleRef, CatalogRecord, Family, SHIPPED_CATALOG,
};

fn w(v: &[i64]) -> Weight {
    Weight::from(v)
}

#[test]
fn table_entries() {
    let ag = roof("AG4").unwrap();
    assert_eq!(ag.total_space().to_string(), "A4:x2,x3");
    assert_eq!(ag.sides()[0].to_string(), "A4:x2");
    assert_eq!(ag.sides()[1].to_string(), "A4:x3");
    assert_eq!(ag.r(), 3);
    let c2 = roof("C2").unwrap();
    assert_eq!(c2.total_space().to_string(), "C2:x1,x2");
    assert_eq!(c2.r(), 2);
    // IG(1,4) = P^3 and IG(2,4) a 3-dimensional quadric.
    assert_eq!(c2.sides()[0].dimension(), 3);
    assert_eq!(c2.sides()[1].dimension(), 3);
    let g2 = roof("G2").unwrap();
    assert_eq!(g2.total_space().to_string(), "G2:x1,x2");
    assert_eq!(g2.r(), 2);
    assert_eq!(roof("A2xA2").unwrap().r(), 3);
    assert_eq!(roof("AM3").unwrap().r(), 3);
    assert_eq!(roof("D5").unwrap().r(), 5);
    assert_eq!(roof("F4").unwrap().r(), 3);
    assert_eq!(roof("C5").unwrap().total_space().to_string(), "C5:x3,x4");
    assert!(roof("E6").is_err());
    assert!(roof("AG5").is_err());
    assert!(roof("C3").is_err());
}

#[test]
fn cy_pair_dimensions() {
    assert_eq!(roof("AG4").unwrap().cy_pair_dimension(), (3, 3));
    assert_eq!(roof("C2").unwrap().cy_pair_dimension(), (1, 1));
    for k in 1..=4 {
        assert_eq!(roof(&format!("A{k}xA{k}")).unwrap().cy_pair_dimension(), (-1, -1));
    }
    // Points for the Mukai flop roofs, threefolds for G2.
    assert_eq!(roof("AM4").unwrap().cy_pair_dimension(), (0, 0));
    assert_eq!(roof("G2").unwrap().cy_pair_dimension(), (3, 3));
}

#[test]
fn hyperplane_canonical_values() {
    let c2 = roof("C2").unwrap();
    assert_eq!(c2.bidegree(&c2.hyperplane_canonical()), Some((-1, -1)));
    for n in 2..=5 {
        let r = roof(&format!("AM{n}")).unwrap();
        assert_eq!(r.bidegree(&r.hyperplane_canonical()), Some((1 - n as i64, 1 - n as i64)));
    }
    let ag = roof("AG4").unwrap();
    assert_eq!(ag.bidegree(&ag.hyperplane_canonical()), Some((-2, -2)));
}

#[test]
fn index_invariant_on_every_roof() {
    for r in list_roofs(5).unwrap() {
        assert_eq!(r.total_space().canonical_weight(), r.l_weight().scale(-(r.r() as i64)), "{}", r.label());
        for s in r.sides() {
            assert_eq!(r.dimension(), s.dimension() + r.r() - 1);
        }
        assert!(r.total_space().bwb(&r.l_weight()).unwrap().degrees().eq([0]));
    }
}

#[test]
fn default_roofs_give_fourteen_side_spaces() {
    let roofs = default_roofs();
    let labels: Vec<&str> = roofs.iter().map(|r| r.label()).collect();
    assert_eq!(labels, ["A2xA2", "AM3", "AG4", "C2", "D4", "F4", "G2"]);
    let sides: BTreeSet<String> =
        roofs.iter().flat_map(|r| r.sides().iter().map(|s| s.to_string()).collect::<Vec<_>>()).collect();
    assert_eq!(sides.len(), 14);
}

#[test]
fn scripts_exist_for_exactly_five_families() {
    let with: Vec<String> =
        list_roofs(2).unwrap().into_iter().filter(|r| r.has_script()).map(|r| r.label().to_string()).collect();
    assert_eq!(with, ["A1xA1", "A2xA2", "AM2", "AG4", "C2", "G2"]);
    assert!(!Family::D(5).has_script());
    assert!(!Family::F4.has_script());
}

#[test]
fn universal_sequences_on_grassmannians() {
    let ag = roof("AG4").unwrap();
    for k in ["2", "3"] {
        let u = ag.named(&format!("U{k}")).unwrap();
        let q = ag.named(&format!("Q{k}")).unwrap();
        assert_eq!(u.rank + q.rank, 5);
        assert_eq!((u.det.0 + q.det.0, u.det.1 + q.det.1), (0, 0));
        let uv = ag.named(&format!("U{k}^v")).unwrap();
        assert_eq!(uv.det, (-u.det.0, -u.det.1));
    }
    assert_eq!(ag.named("U2^v").unwrap().pieces, vec![w(&[1, 0, 0, 0])]);
    assert_eq!(ag.named("U2").unwrap().pieces, vec![w(&[1, -1, 0, 0])]);
    assert_eq!(ag.named("Q2").unwrap().pieces, vec![w(&[0, 0, 0, 1])]);
    assert_eq!(ag.named("Q3^v").unwrap().pieces, vec![w(&[0, 0, -1, 1])]);
    let c2 = roof("C2").unwrap();
    assert_eq!(c2.named("U^v").unwrap().rank, 2);
    let g2 = roof("G2").unwrap();
    assert_eq!(g2.named("S").unwrap().rank, 4);
    assert!(g2.named("Q3").is_err());
}

#[test]
fn bundle_symbol_grammar() {
    let b: BundleRef = "U2^v(1,-2)".parse().unwrap();
    assert_eq!(b, BundleRef::new("U2^v", 1, -2));
    assert_eq!(b.to_string(), "U2^v(1,-2)");
    assert_eq!("O".parse::<BundleRef>().unwrap(), BundleRef::new("O", 0, 0));
    assert_eq!(" S ( 0 , 1 )".parse::<BundleRef>().unwrap(), BundleRef::new("S", 0, 1));
    for bad in ["", "(1,2)", "O(1)", "O(1,x)", "O(1,2", "2U"] {
        let e = bad.parse::<BundleRef>().unwrap_err().to_string();
        assert!(e.contains("position"), "{bad}: {e}");
    }
}

#[test]
fn shipped_catalog_matches_constructors() {
    let text = catalog_text(&list_roofs(5).unwrap());
    assert_eq!(SHIPPED_CATALOG, text);
    let recs = load_catalog(SHIPPED_CATALOG).unwrap();
    assert!(recs.iter().any(|r| matches!(r, CatalogRecord::Roof { label, .. } if label == "AG4")));
}

#[test]
fn tampered_catalog_is_rejected() {
    let bad = SHIPPED_CATALOG.replace("bundle AG4 U2 home=x2 rank=2", "bundle AG4 U2 home=x2 rank=3");
    assert_ne!(bad, SHIPPED_CATALOG);
    assert!(load_catalog(&bad).is_err());
    let bad = SHIPPED_CATALOG.replace("roof C2 space=C2:x1,x2 sides=C2:x1|C2:x2 r=2", "roof C2 space=C2:x1,x2 sides=C2:x1|C2:x2 r=3");
    assert!(load_catalog(&bad).is_err());
    assert!(load_catalog("roof C2").is_err());
    assert!(load_catalog("format 2\n").is_err());
}
