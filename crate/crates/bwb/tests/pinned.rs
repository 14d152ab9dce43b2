use bwb::{IrreducibleBundle, MarkedDiagram};
use lie_core::Weight;

fn space(s: &str) -> MarkedDiagram {
    s.parse().unwrap()
}

fn w(v: &[i64]) -> Weight {
    Weight::from(v)
}

#[test]
fn dimensions() {
    assert_eq!(space("A3:x1").dimension(), 3);
    assert_eq!(space("A4:x2").dimension(), 6);
    // Oracle: dim G(2,5) + dim of the P^2 fibre.
    assert_eq!(space("A4:x2,x3").dimension(), 2 * 3 + 2);
    assert_eq!(space("A5:x1,x3").dimension(), 11);
    assert_eq!(space("G2:x1").dimension(), 5);
    assert_eq!(space("G2:x2").dimension(), 5);
}

#[test]
fn levi_factors() {
    let s = space("A4:x2");
    assert_eq!(s.levi().1, 1);
    assert_eq!(s.levi().0.unwrap().to_string(), "A1xA2");
    let s = space("A4:x2,x3");
    assert_eq!(s.levi().0.unwrap().to_string(), "A1xA1");
    assert_eq!(s.levi().1, 2);
    let s = space("G2:x1,x2");
    assert!(s.levi().0.is_none());
    assert_eq!(s.levi_label(), "T2");
}

#[test]
fn projective_space_cohomology() {
    let p3 = space("A3:x1");
    let h = p3.bwb(&w(&[-4, 0, 0])).unwrap();
    assert!(h.is_concentrated(3, 1));
    for k in 1..=3 {
        assert!(p3.bwb(&w(&[-k, 0, 0])).unwrap().is_zero(), "O(-{k})");
    }
    assert!(p3.bwb(&w(&[0, 0, 0])).unwrap().is_concentrated(0, 1));
    assert!(p3.bwb(&w(&[2, 0, 0])).unwrap().is_concentrated(0, 10));
    assert!(p3.bwb(&w(&[-1, -1, 0])).is_err());
}

#[test]
fn structure_sheaf_is_point_cohomology() {
    for s in ["A4:x2", "A4:x3", "C2:x1", "C2:x2", "G2:x1", "G2:x2", "F4:x2", "F4:x3", "D5:x4", "D5:x5"] {
        let sp = space(s);
        let h = sp.bwb(&Weight::zero(sp.rank())).unwrap();
        assert!(h.is_concentrated(0, 1), "{s}");
    }
}

#[test]
fn canonical_weights() {
    assert_eq!(space("A5:x1,x3").canonical_weight(), w(&[-3, 0, -5, 0, 0]));
    assert_eq!(space("G2:x2").canonical_weight(), w(&[0, -3]));
    assert_eq!(space("G2:x1").canonical_weight(), w(&[-5, 0]));
    assert_eq!(space("A3:x1").canonical_weight(), w(&[-4, 0, 0]));
    assert_eq!(space("A4:x2").canonical_weight(), w(&[0, -5, 0, 0]));
}

#[test]
fn ranks_duals_and_determinants() {
    let g25 = space("A4:x2");
    let u2 = IrreducibleBundle::new(g25.clone(), w(&[1, -1, 0, 0])).unwrap();
    assert_eq!(u2.rank().unwrap(), 2);
    let u2v = u2.dual();
    assert_eq!(u2v.weight(), &w(&[1, 0, 0, 0]));
    assert_eq!(u2v.det_weight().unwrap(), w(&[0, 1, 0, 0]));
    assert_eq!(u2v.dual(), u2);

    let g35 = space("A4:x3");
    let q3 = IrreducibleBundle::new(g35, w(&[0, 0, 0, 1])).unwrap();
    assert_eq!(q3.rank().unwrap(), 2);

    let line = IrreducibleBundle::new(space("A4:x2,x3"), w(&[0, 2, -1, 0])).unwrap();
    assert_eq!(line.rank().unwrap(), 1);
    assert_eq!(line.det_weight().unwrap(), w(&[0, 2, -1, 0]));
    assert_eq!(line.dual().weight(), &w(&[0, -2, 1, 0]));

    // Q^∨ of G(3,6) twisted by O(1,2) on F(1,3,6).
    let f136 = space("A5:x1,x3");
    let qv = IrreducibleBundle::new(f136.clone(), w(&[0, 0, -1, 1, 0])).unwrap();
    let e = qv.twist(&f136.line_weight(&[1, 2]).unwrap()).unwrap();
    assert_eq!(e.weight(), &w(&[1, 0, 1, 1, 0]));
    assert_eq!(e.rank().unwrap(), 3);
    assert_eq!(e.det_weight().unwrap(), f136.line_weight(&[3, 5]).unwrap());
}

#[test]
fn pushforward_along_projective_bundle() {
    // F(2,3,5) -> G(2,5) has fibre P^2; O(0,-1) and O(0,-2) push forward to zero,
    // O(0,-3) to a line bundle in degree 2.
    let f = space("A4:x2,x3");
    let side = [1usize].into_iter().collect();
    assert!(f.pushforward(&w(&[0, 0, -1, 0]), &side).is_none());
    assert!(f.pushforward(&w(&[0, 0, -2, 0]), &side).is_none());
    let (hw, deg) = f.pushforward(&w(&[0, 0, -3, 0]), &side).unwrap();
    assert_eq!(deg, 2);
    assert!(space("A4:x2").is_p_dominant(&hw));
    let (hw, deg) = f.pushforward(&w(&[0, 1, 1, 0]), &side).unwrap();
    assert_eq!((hw, deg), (w(&[0, 1, 1, 0]), 0));
}

#[test]
fn parse_errors_name_the_position() {
    assert!("A4".parse::<MarkedDiagram>().is_err());
    let e = "A4:x2,x9".parse::<MarkedDiagram>().unwrap_err().to_string();
    assert!(e.contains("position"), "{e}");
    assert!("E6:x1".parse::<MarkedDiagram>().is_err());
}
