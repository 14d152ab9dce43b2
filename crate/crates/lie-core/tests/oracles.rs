//! Brute-force oracles for values the engine computes by formula.

use lie_core::{cartan, NodeMask, RootSystem, Series, Weight};

fn w(v: &[i64]) -> Weight {
    Weight::from(v)
}

/// Number of semistandard tableaux of shape `shape` with entries in 1..=n,
/// by direct enumeration cell by cell.
fn ssyt_count(shape: &[usize], n: usize) -> u64 {
    let cells: Vec<(usize, usize)> =
        shape.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    let mut grid = vec![vec![0usize; shape.first().copied().unwrap_or(0)]; shape.len()];
    fn go(k: usize, cells: &[(usize, usize)], grid: &mut Vec<Vec<usize>>, n: usize) -> u64 {
        if k == cells.len() {
            return 1;
        }
        let (r, c) = cells[k];
        let lo_row = if c > 0 { grid[r][c - 1] } else { 1 };
        let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
        let mut total = 0;
        for v in lo_row.max(lo_col)..=n {
            grid[r][c] = v;
            total += go(k + 1, cells, grid, n);
        }
        grid[r][c] = 0;
        total
    }
    go(0, &cells, &mut grid, n)
}

/// Partition of an A_{n} highest weight given in fundamental coordinates.
fn partition(lambda: &[i64]) -> Vec<usize> {
    let mut parts = vec![0usize; lambda.len()];
    for k in 0..lambda.len() {
        parts[k] = lambda[k..].iter().sum::<i64>() as usize;
    }
    while parts.last() == Some(&0) {
        parts.pop();
    }
    parts
}

#[test]
fn ssyt_oracle_sanity() {
    assert_eq!(ssyt_count(&[1], 6), 6);
    assert_eq!(ssyt_count(&[2], 3), 6);
    assert_eq!(ssyt_count(&[1, 1], 4), 6);
}

#[test]
fn weyl_dim_a5_matches_tableau_count() {
    let rs = RootSystem::simple(Series::A, 5).unwrap();
    let cases: [&[i64]; 3] = [&[1, 0, 0, 0, 0], &[1, 0, 0, 0, 1], &[1, 0, 1, 1, 0]];
    let frozen = [6u64, 35, 1050];
    for (lam, expect) in cases.iter().zip(frozen) {
        let oracle = ssyt_count(&partition(lam), 6);
        assert_eq!(oracle, expect, "oracle for {lam:?}");
        assert_eq!(rs.weyl_dim(&w(lam)).unwrap(), expect);
    }
    assert_eq!(1050 - 1 - 35, 1014);
}

#[test]
fn weyl_dim_type_a_random_against_tableaux() {
    for n in 1..=4usize {
        let rs = RootSystem::simple(Series::A, n).unwrap();
        for code in 0..(3u32.pow(n as u32)) {
            let mut lam = vec![0i64; n];
            let mut c = code;
            for x in lam.iter_mut() {
                *x = (c % 3) as i64;
                c /= 3;
            }
            let oracle = ssyt_count(&partition(&lam), n + 1);
            assert_eq!(rs.weyl_dim(&w(&lam)).unwrap(), oracle, "A{n} {lam:?}");
        }
    }
}

#[test]
fn adjoint_a2_zero_weight_multiplicity() {
    // Standard representation of sl3: weights of e1, e2, e3.
    let std_weights = [[1i64, 0], [-1, 1], [0, -1]];
    let mut zero = 0;
    for a in &std_weights {
        for b in &std_weights {
            if a[0] - b[0] == 0 && a[1] - b[1] == 0 {
                zero += 1;
            }
        }
    }
    // V ⊗ V* = adjoint ⊕ trivial.
    let oracle = zero - 1;
    assert_eq!(oracle, 2);
    let rs = RootSystem::simple(Series::A, 2).unwrap();
    let ch = rs.freudenthal_weights(&w(&[1, 1])).unwrap();
    assert_eq!(ch[&w(&[0, 0])], 2);
    assert_eq!(ch.values().sum::<u64>(), 8);
}

#[test]
fn reflections_pinned() {
    let a1 = RootSystem::simple(Series::A, 1).unwrap();
    assert_eq!(a1.reflect(&w(&[3]), 0).unwrap(), w(&[-3]));
    let a2 = RootSystem::simple(Series::A, 2).unwrap();
    assert_eq!(a2.reflect(&w(&[1, 0]), 0).unwrap(), w(&[-1, 1]));
    let g2 = RootSystem::simple(Series::G, 2).unwrap();
    for i in 0..2 {
        let rho = g2.rho();
        let expected = &rho - g2.simple_root(i);
        assert_eq!(g2.reflect(&rho, i).unwrap(), expected);
    }
    assert_eq!(g2.reflect(&w(&[1, 1]), 0).unwrap(), w(&[-1, 2]));
    assert!(a2.reflect(&w(&[1, 0]), 2).is_err());
}

#[test]
fn positive_root_counts_match_classical() {
    let mut types = vec![(Series::F, 4), (Series::G, 2)];
    for n in 1..=8 {
        types.push((Series::A, n));
    }
    for n in 2..=8 {
        types.push((Series::B, n));
        types.push((Series::C, n));
    }
    for n in 3..=8 {
        types.push((Series::D, n));
    }
    for (s, n) in types {
        let rs = RootSystem::simple(s, n).unwrap();
        assert_eq!(rs.positive_roots().len(), cartan::positive_root_count(s, n), "{s}{n}");
        assert!(rs.positive_roots().iter().all(|r| r.iter().all(|&c| c >= 0)));
    }
    let prod = RootSystem::product(&[(Series::A, 2), (Series::G, 2)]).unwrap();
    assert_eq!(prod.positive_roots().len(), 3 + 6);
}

#[test]
fn cartan_matrices_pinned() {
    let c2 = RootSystem::simple(Series::C, 2).unwrap();
    assert_eq!(c2.cartan(), &[vec![2, -2], vec![-1, 2]]);
    let g2 = RootSystem::simple(Series::G, 2).unwrap();
    assert_eq!(g2.cartan(), &[vec![2, -3], vec![-1, 2]]);
    assert_eq!(g2.symmetrizer(), &[1, 3]);
    let all: Vec<RootSystem> = ["A3", "B4", "C4", "D5", "F4", "G2", "C2"].iter().map(|s| s.parse().unwrap()).collect();
    for rs in all.iter().chain([&c2, &g2]) {
        let a = rs.cartan();
        let d = rs.symmetrizer();
        for i in 0..rs.rank() {
            for j in 0..rs.rank() {
                assert_eq!(d[i] * a[i][j], d[j] * a[j][i]);
            }
        }
    }
}

#[test]
fn rho_is_all_ones() {
    assert_eq!(RootSystem::simple(Series::A, 3).unwrap().rho(), w(&[1, 1, 1]));
    assert_eq!(RootSystem::simple(Series::G, 2).unwrap().rho(), w(&[1, 1]));
    let p: RootSystem = "A2xA2".parse().unwrap();
    assert_eq!(p.rho(), w(&[1, 1, 1, 1]));
}

#[test]
fn dominantize_pinned() {
    use lie_core::Dominantization::*;
    let a1 = RootSystem::simple(Series::A, 1).unwrap();
    assert_eq!(a1.dominantize(&w(&[1])), Regular { dominant: w(&[1]), length: 0 });
    assert_eq!(a1.dominantize(&w(&[0])), Singular);
    assert_eq!(a1.dominantize(&w(&[-3])), Regular { dominant: w(&[3]), length: 1 });
}

#[test]
fn freudenthal_small_cases() {
    let a1 = RootSystem::simple(Series::A, 1).unwrap();
    let ch = a1.freudenthal_weights(&w(&[2])).unwrap();
    let expect: Vec<(Weight, u64)> = vec![(w(&[-2]), 1), (w(&[0]), 1), (w(&[2]), 1)];
    assert_eq!(ch.into_iter().collect::<Vec<_>>(), expect);
    let a5 = RootSystem::simple(Series::A, 5).unwrap();
    let ch = a5.freudenthal_weights(&w(&[1, 0, 0, 0, 0])).unwrap();
    assert_eq!(ch.len(), 6);
    assert!(ch.values().all(|&m| m == 1));
}

#[test]
fn freudenthal_resource_bound() {
    let a5 = RootSystem::simple(Series::A, 5).unwrap();
    let err = a5.freudenthal_weights_on(&w(&[1, 0, 1, 1, 0]), &a5.all_nodes(), 1000);
    assert!(err.is_err());
}

#[test]
fn levi_subsystem_labels() {
    let a4 = RootSystem::simple(Series::A, 4).unwrap();
    let (levi, _) = a4.subsystem(&NodeMask::complement_of(4, [1])).unwrap();
    assert_eq!(levi.to_string(), "A1xA2");
    let (levi, _) = a4.subsystem(&NodeMask::complement_of(4, [1, 2])).unwrap();
    assert_eq!(levi.to_string(), "A1xA1");
    let g2 = RootSystem::simple(Series::G, 2).unwrap();
    assert!(g2.subsystem(&NodeMask::empty(2)).is_none());
    let f4 = RootSystem::simple(Series::F, 4).unwrap();
    let (levi, _) = f4.subsystem(&NodeMask::complement_of(4, [0])).unwrap();
    assert_eq!(levi.to_string(), "C3");
    let (levi, _) = f4.subsystem(&NodeMask::complement_of(4, [3])).unwrap();
    assert_eq!(levi.to_string(), "B3");
    let d5 = RootSystem::simple(Series::D, 5).unwrap();
    let (levi, _) = d5.subsystem(&NodeMask::complement_of(5, [0])).unwrap();
    assert_eq!(levi.to_string(), "D4");
}
