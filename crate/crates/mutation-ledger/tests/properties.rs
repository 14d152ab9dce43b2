use mutation_ledger::{apply_step, parse_script, print_script, CollectionState, Direction, MutationStep, Options, Script, ScriptStep, SodObject};
use proptest::prelude::*;

fn c2_state(objs: &[(i64, i64)], cy: usize) -> CollectionState {
    let mut v: Vec<SodObject> = objs.iter().map(|&(a, b)| SodObject::named("O", a, b)).collect();
    v.insert(cy.min(v.len()), SodObject::cy("Y1"));
    CollectionState::new(roof_catalog::roof("C2").unwrap(), v).unwrap()
}

/// Named objects in order, with `None` where the CY block sits.
fn shape(s: &CollectionState) -> Vec<Option<String>> {
    s.objects().iter().map(|o| o.as_named().map(|r| r.to_string())).collect()
}

fn objs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-3i64..4, -3i64..4), 1..6)
}

fn step() -> impl Strategy<Value = MutationStep> {
    prop_oneof![
        (0usize..9).prop_map(MutationStep::LeftPair),
        (0usize..9).prop_map(MutationStep::RightPair),
        (0usize..9).prop_map(MutationStep::SwapOrthogonal),
        Just(MutationStep::SerreForward),
        Just(MutationStep::SerreBackward),
        (-4i64..5, -4i64..5).prop_map(|(a, b)| MutationStep::TwistAll(a, b)),
        Just(MutationStep::CyMutate(Direction::Left)),
        Just(MutationStep::CyMutate(Direction::Right)),
        (0usize..9).prop_map(|i| MutationStep::RewriteApply("c2-extension-R".into(), i)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn twists_cancel(o in objs(), cy in 0usize..6, a in -3i64..4, b in -3i64..4) {
        let s = c2_state(&o, cy);
        let (t, _) = apply_step(&s, &MutationStep::TwistAll(a, b), &Options::lenient()).unwrap();
        let (u, _) = apply_step(&t, &MutationStep::TwistAll(-a, -b), &Options::lenient()).unwrap();
        prop_assert_eq!(shape(&u), shape(&s));
        prop_assert_eq!(u.decorations().len(), 2);
        prop_assert_eq!(u.decorations()[0].clone(), format!("twist({},{})", -a, -b));
    }

    #[test]
    fn serre_round_trip(o in objs(), cy in 1usize..6) {
        // The CY block is not at the moved end in either direction.
        let cy = cy.min(o.len());
        let s = c2_state(&o, cy);
        prop_assume!(cy < o.len());
        let (t, _) = apply_step(&s, &MutationStep::SerreBackward, &Options::lenient()).unwrap();
        let (u, _) = apply_step(&t, &MutationStep::SerreForward, &Options::lenient()).unwrap();
        prop_assert_eq!(shape(&u), shape(&s));
        let (t, _) = apply_step(&s, &MutationStep::SerreForward, &Options::lenient()).unwrap();
        let (u, _) = apply_step(&t, &MutationStep::SerreBackward, &Options::lenient()).unwrap();
        prop_assert_eq!(shape(&u), shape(&s));
    }

    #[test]
    fn object_count_is_invariant(o in objs(), cy in 0usize..6, st in step()) {
        let s = c2_state(&o, cy);
        if let Ok((t, rec)) = apply_step(&s, &st, &Options::lenient()) {
            prop_assert_eq!(t.objects().len(), s.objects().len());
            prop_assert_eq!(rec.state.len(), s.objects().len());
            prop_assert_eq!(t.objects().iter().filter(|x| x.is_cy()).count(), 1);
        }
    }

    #[test]
    fn dsl_round_trip(steps in prop::collection::vec((step(), 0usize..3), 0..12), o in objs()) {
        let start: Vec<SodObject> = std::iter::once(SodObject::cy("Y1"))
            .chain(o.iter().map(|&(a, b)| SodObject::named("O", a, b)))
            .collect();
        let cites = ["", "phase one", "swap O(1,1) past O(2,1)"];
        let script = Script {
            roof: "C2".into(),
            start: start.clone(),
            target: start.iter().rev().cloned().map(|x| if x.is_cy() { SodObject::cy("Y2") } else { x }).collect(),
            target_steps: vec![],
            steps: steps.into_iter().map(|(step, c)| ScriptStep { step, citation: cites[c].into(), line: 0 }).collect(),
        };
        let text = print_script(&script);
        let mut back = parse_script(&text).unwrap();
        for s in &mut back.steps {
            s.line = 0;
        }
        prop_assert_eq!(back, script);
    }
}
