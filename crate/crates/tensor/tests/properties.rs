use bwb::{IrreducibleBundle, MarkedDiagram};
use lie_core::Weight;
use proptest::prelude::*;
use tensor::{decompose_product, exterior_power};

const SPACES: &[&str] = &["A4:x2", "A4:x3", "A4:x2,x3", "C2:x1", "C2:x2", "G2:x1", "G2:x2", "A5:x1,x3", "B3:x1"];

fn bundle(k: usize, coords: &[i64]) -> IrreducibleBundle {
    let sp: MarkedDiagram = SPACES[k].parse().unwrap();
    let mask = sp.levi_mask();
    let w: Vec<i64> = (0..sp.rank()).map(|i| if mask.contains(i) { coords[i].rem_euclid(2) } else { coords[i] }).collect();
    IrreducibleBundle::new(sp, Weight(w)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn tensor_rank_is_multiplicative(k in 0..SPACES.len(), a in proptest::collection::vec(-3i64..=3, 5), b in proptest::collection::vec(-3i64..=3, 5)) {
        let e = bundle(k, &a);
        let f = bundle(k, &b);
        let s = decompose_product(&e, &f).unwrap();
        prop_assert_eq!(s.rank().unwrap(), e.rank().unwrap() * f.rank().unwrap());
        // Character of the sum is the product of characters.
        let ce = tensor::BundleSum::single(&e).character(100_000).unwrap();
        let cf = tensor::BundleSum::single(&f).character(100_000).unwrap();
        let mut prod = lie_core::Character::new();
        for (x, m) in &ce { for (y, n) in &cf { *prod.entry(x + y).or_insert(0) += m * n; } }
        prop_assert_eq!(s.character(100_000).unwrap(), prod);
        // Commutativity.
        prop_assert_eq!(decompose_product(&f, &e).unwrap(), s);
    }

    #[test]
    fn top_exterior_power_is_determinant(k in 0..SPACES.len(), a in proptest::collection::vec(-3i64..=3, 5)) {
        let e = bundle(k, &a);
        let r = e.rank().unwrap() as usize;
        let top = exterior_power(&e, r).unwrap();
        prop_assert_eq!(top.terms().len(), 1);
        prop_assert_eq!(top.terms().keys().next().unwrap(), &e.det_weight().unwrap());
    }
}
