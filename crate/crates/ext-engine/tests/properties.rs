use bwb::GradedDims;
use ext_engine::{combine_positionally, ext_gp, ext_on_m_report, ExtOnM, HomogeneousBundle};
use proptest::prelude::*;
use roof_catalog::{roof, BundleRef, RoofDescriptor};
use tensor::decompose_product;

const ROOFS: [&str; 6] = ["C2", "AG4", "G2", "AM3", "A2xA2", "D4"];

fn pick(r: &RoofDescriptor, i: usize, a: i64, b: i64) -> HomogeneousBundle {
    let symbols: Vec<&str> = r.bundles().iter().map(|n| n.symbol.as_str()).collect();
    let s = symbols[i % symbols.len()];
    HomogeneousBundle::named(r, &BundleRef::new(s, a, b)).unwrap()
}

/// E1 page over the irreducible pieces on the total space itself.
fn via_pieces(e: &HomogeneousBundle, f: &HomogeneousBundle) -> (GradedDims, bool) {
    let mut contributions = Vec::new();
    for p in e.dual().graded_pieces(100_000).unwrap() {
        for q in f.graded_pieces(100_000).unwrap() {
            contributions.push(decompose_product(&p, &q).unwrap().cohomology());
        }
    }
    let c = combine_positionally(&contributions);
    (c.dims.dims_only(), c.is_exact())
}

fn bundle_pair() -> impl Strategy<Value = (usize, usize, usize, i64, i64, i64, i64)> {
    (0..ROOFS.len(), 0..8usize, 0..8usize, -3..=3i64, -3..=3i64, -3..=3i64, -3..=3i64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn serre_duality_on_total_space((ri, i, j, a, b, c, d) in bundle_pair()) {
        let r = roof(ROOFS[ri]).unwrap();
        let n = r.dimension() as i64;
        let e = pick(&r, i, a, b);
        let f = pick(&r, j, c, d);
        let x = ext_gp(&e, &f).unwrap();
        let y = ext_gp(&f, &e.twist(&r.total_space().canonical_weight()).unwrap()).unwrap();
        let sign = if n % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(x.dims.euler_characteristic(), sign * y.dims.euler_characteristic());
        if x.is_exact() && y.is_exact() {
            for k in 0..=n {
                prop_assert_eq!(x.dims.dim(k), y.dims.dim(n - k));
            }
        }
    }

    #[test]
    fn serre_duality_on_hyperplane((ri, i, j, a, b, c, d) in bundle_pair()) {
        let r = roof(ROOFS[ri]).unwrap();
        let n = r.dim_m() as i64;
        let e = pick(&r, i, a, b);
        let f = pick(&r, j, c, d);
        let x = ext_on_m_report(&r, &e, &f).unwrap();
        let y = ext_on_m_report(&r, &f, &e.twist(&r.hyperplane_canonical()).unwrap()).unwrap();
        if let ExtOnM::Exact { dims } = &x.ext {
            match &y.ext {
                ExtOnM::Exact { dims: dual } => {
                    for k in 0..=n {
                        prop_assert_eq!(dims.dim(k), dual.dim(n - k));
                    }
                }
                other => prop_assert!(false, "dual side not exact: {}", other),
            }
        }
    }

    #[test]
    fn euler_characteristic_balances((ri, i, j, a, b, c, d) in bundle_pair()) {
        let r = roof(ROOFS[ri]).unwrap();
        let x = ext_on_m_report(&r, &pick(&r, i, a, b), &pick(&r, j, c, d)).unwrap();
        let chi = x.untwisted.dims.euler_characteristic() - x.twisted.dims.euler_characteristic();
        match &x.ext {
            ExtOnM::Exact { dims } => prop_assert_eq!(dims.euler_characteristic(), chi),
            ExtOnM::Ambiguous { euler, .. } => prop_assert_eq!(*euler, chi),
        }
        if x.twisted.is_zero() {
            prop_assert_eq!(x.ext.exact().is_some(), x.untwisted.is_exact());
            if let Some(dims) = x.ext.exact() {
                prop_assert_eq!(dims.dims_only(), x.untwisted.dims.dims_only());
            }
        }
    }

    #[test]
    fn relative_route_agrees_with_pieces((ri, i, j, a, b, c, d) in bundle_pair()) {
        let r = roof(ROOFS[ri]).unwrap();
        let e = pick(&r, i, a, b);
        let f = pick(&r, j, c, d);
        let x = ext_gp(&e, &f).unwrap();
        let (y, exact) = via_pieces(&e, &f);
        prop_assert_eq!(x.dims.euler_characteristic(), y.euler_characteristic());
        if x.is_exact() && exact {
            prop_assert_eq!(x.dims.dims_only(), y);
        }
    }

    #[test]
    fn dual_and_twist_are_inverse((ri, i, a, b) in (0..ROOFS.len(), 0..8usize, -3..=3i64, -3..=3i64)) {
        let r = roof(ROOFS[ri]).unwrap();
        let e = pick(&r, i, a, b);
        prop_assert_eq!(e.dual().dual(), e.clone());
        let l = r.l_weight();
        prop_assert_eq!(e.twist(&l).unwrap().twist(&-&l).unwrap(), e.clone());
        prop_assert_eq!(e.dual().rank().unwrap(), e.rank().unwrap());
    }
}
