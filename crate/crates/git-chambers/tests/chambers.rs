mod oracle;

use git_chambers::{build_phase_system, feasible, int, parse_system, Constraint, InequalitySystem, Relation, TauSign};
use proptest::prelude::*;

fn system(nvars: usize, rows: &[oracle::Row]) -> InequalitySystem {
    let cs = rows
        .iter()
        .map(|(a, c, s)| {
            Constraint::new(a.iter().map(|&v| int(v)).collect(), int(*c), if *s { Relation::Greater } else { Relation::GreaterEq })
        })
        .collect();
    InequalitySystem::new((0..nvars).map(|i| format!("x{i}")).collect(), cs).unwrap()
}

fn check(sys: &InequalitySystem) -> bool {
    let r = feasible(sys);
    match (&r.witness, &r.contradiction) {
        (Some(w), None) => assert!(r.feasible && sys.satisfied_by(w)),
        (None, Some(c)) => assert!(!r.feasible && c.verify(sys)),
        _ => panic!("report carries neither a witness nor a contradiction"),
    }
    r.feasible
}

#[test]
fn trivial_contradiction() {
    let sys = parse_system("vars x\nx > 0\n-x >= 0\n").unwrap();
    assert!(!check(&sys));
    let sys = parse_system("vars x\nx >= 0\n-x >= 0\n").unwrap();
    assert!(check(&sys));
}

#[test]
fn general_point_is_semistable() {
    for k in [2, 3, 4] {
        for tau in [TauSign::Positive, TauSign::Negative] {
            let sys = build_phase_system(k, tau, 0).unwrap();
            assert_eq!(sys.constraints.len(), 1 + (k + 2) + (k + 1));
            assert!(!check(&sys), "k = {k}, {tau:?}");
        }
    }
}

#[test]
fn degenerate_columns_are_unstable() {
    for k in [2, 3, 4] {
        for tau in [TauSign::Positive, TauSign::Negative] {
            for l in 1..=k + 1 {
                let sys = build_phase_system(k, tau, l).unwrap();
                assert_eq!(sys.constraints.len(), 1 + (k + 2 - l) + (k + 1));
                assert!(check(&sys), "k = {k}, {tau:?}, l = {l}");
            }
        }
    }
}

#[test]
fn phase_system_text() {
    let sys = build_phase_system(2, TauSign::Negative, 0).unwrap();
    let text = sys.to_string();
    assert!(text.starts_with("vars a0 a1 a2 a3\n-a0 - a1 - a2 - a3 > 0\n-a0 >= 0\n"), "{text}");
    assert!(text.contains("3 a0 + 2 a1 + a2 + 2 a3 >= 0"), "{text}");
    assert_eq!(parse_system(&text).unwrap(), sys);
}

#[test]
fn phase_system_ranges() {
    assert!(build_phase_system(1, TauSign::Positive, 0).is_err());
    assert!(build_phase_system(2, TauSign::Positive, 4).is_err());
    assert!(build_phase_system(2, TauSign::Positive, 3).is_ok());
}

#[test]
fn parser_accepts_both_sides_and_fractions() {
    let sys = parse_system("# a comment\nvars p q\np <= 2 q - 1/2\n3*p + q > -1 # trailing\n").unwrap();
    assert_eq!(sys.constraints[0], Constraint::new(vec![int(-1), int(2)], int(-1) / int(2), Relation::GreaterEq));
    assert_eq!(sys.constraints[1], Constraint::new(vec![int(3), int(1)], int(1), Relation::Greater));
    for bad in ["p > 0\n", "vars p\np >> 0\n", "vars p\nr > 0\n", "vars p\np > 1/0\n", "vars p\np\n"] {
        assert!(parse_system(bad).is_err(), "{bad}");
    }
}

/// Fourier–Motzkin against the vertex oracle on 100 seeded random systems
/// with up to four variables.
#[test]
fn agrees_with_vertex_oracle() {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[7; 32]);
    let mut runner = TestRunner::new_with_rng(Config::default(), rng);
    let strat = (1usize..=4).prop_flat_map(|n| {
        (Just(n), prop::collection::vec((prop::collection::vec(-3i64..=3, n), -3i64..=3, any::<bool>()), 2..=6))
    });
    let (mut yes, mut no) = (0, 0);
    for _ in 0..100 {
        let (n, rows) = strat.new_tree(&mut runner).unwrap().current();
        let sys = system(n, &rows);
        let fm = check(&sys);
        assert_eq!(fm, oracle::feasible(n, &rows), "{sys}");
        if fm {
            yes += 1;
        } else {
            no += 1;
        }
    }
    assert!(yes >= 10 && no >= 10, "{yes} feasible, {no} infeasible");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rescaling_rows_keeps_feasibility(
        n in 1usize..=4,
        rows in prop::collection::vec((prop::collection::vec(-3i64..=3, 4), -3i64..=3, any::<bool>()), 1..=6),
        scale in prop::collection::vec(1i64..=5, 6),
    ) {
        let rows: Vec<oracle::Row> = rows.into_iter().map(|(a, c, s)| (a[..n].to_vec(), c, s)).collect();
        let sys = system(n, &rows);
        let mut scaled = sys.clone();
        for (c, s) in scaled.constraints.iter_mut().zip(&scale) {
            c.coeffs = c.coeffs.iter().map(|a| a * int(*s)).collect();
            c.constant = &c.constant * int(*s);
        }
        prop_assert_eq!(check(&sys), check(&scaled));
    }

    #[test]
    fn text_round_trip(
        n in 1usize..=4,
        rows in prop::collection::vec((prop::collection::vec(-3i64..=3, 4), -3i64..=3, any::<bool>()), 1..=6),
    ) {
        let rows: Vec<oracle::Row> = rows.into_iter().map(|(a, c, s)| (a[..n].to_vec(), c, s)).collect();
        let sys = system(n, &rows);
        prop_assert_eq!(parse_system(&sys.to_string()).unwrap(), sys);
    }
}
