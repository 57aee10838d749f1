mod common;

use proptest::prelude::*;

use histqca::lattice::io::{default_offsets, format_configuration, format_rule, parse_configuration, parse_rule};
use histqca::lattice::{
    apply_rule, elementary_rule, game_of_life, lift_reversible, run_second_order, second_order_step, CellAlphabet,
    Configuration, LatticeGeometry, LocalRule, SubtractKind,
};

fn alphabets() -> Vec<CellAlphabet> {
    let mut out = Vec::new();
    for m in 1..=16 {
        out.push(CellAlphabet::modular(m).unwrap());
        if m.is_power_of_two() {
            out.push(CellAlphabet::new(m, SubtractKind::XorBits).unwrap());
        }
    }
    out
}

#[test]
fn subtraction_axioms_exhaustive() {
    for a in alphabets() {
        let m = a.size() as u8;
        for x in 0..m {
            assert_eq!(a.subtract(x, 0), x);
            for y in 0..m {
                assert_eq!(a.subtract(x, a.subtract(x, y)), y, "{a:?} {x} {y}");
            }
        }
    }
}

#[test]
fn xor_needs_power_of_two() {
    assert!(CellAlphabet::new(6, SubtractKind::XorBits).is_err());
}

fn assert_involution(rule: &LocalRule) {
    let lifted = lift_reversible(rule);
    let n = rule.alphabet().size() * rule.table().len();
    for i in 0..n {
        assert_eq!(lifted.apply_index(lifted.apply_index(i)), i);
    }
}

#[test]
fn lift_is_involution() {
    for n in 0..256 {
        assert_involution(&elementary_rule(n).unwrap());
    }
    assert_involution(&game_of_life());
    let sum3 = LocalRule::from_fn(CellAlphabet::modular(3).unwrap(), default_offsets(3, 1).unwrap(), |e| {
        (e.iter().map(|&s| s as u32).sum::<u32>() % 3) as u8
    })
    .unwrap();
    assert_involution(&sum3);
    let xor4 = LocalRule::from_fn(
        CellAlphabet::new(4, SubtractKind::XorBits).unwrap(),
        default_offsets(3, 1).unwrap(),
        |e| e[0] & e[2] ^ e[1],
    )
    .unwrap();
    assert_involution(&xor4);
}

#[test]
fn lifted_example_values() {
    let lifted = lift_reversible(&elementary_rule(110).unwrap());
    assert_eq!(lifted.apply(&[0, 1, 1, 0]).unwrap(), vec![1, 1, 1, 0]);
    assert_eq!(lifted.apply(&[1, 1, 1, 0]).unwrap(), vec![0, 1, 1, 0]);
}

/// Pair map `(P, C) ↦ (C, F(C) ⊖ P)` hits every pair exactly once.
fn assert_pair_bijection(rule: &LocalRule, l: usize) {
    let ring = LatticeGeometry::ring(l).unwrap();
    let a = rule.alphabet();
    let n = 1usize << l;
    let configs: Vec<Configuration> = (0..n).map(|i| Configuration::from_index(ring.clone(), a, i)).collect();
    let mut seen = vec![false; n * n];
    for p in &configs {
        for c in &configs {
            let next = second_order_step(p, c, rule).unwrap();
            let j = c.index() * n + next.index();
            assert!(!seen[j], "rule collides on ring {l}");
            seen[j] = true;
        }
    }
}

#[test]
fn second_order_pair_map_is_bijective() {
    for l in 3..=10 {
        assert_pair_bijection(&elementary_rule(110).unwrap(), l);
    }
    for n in [0, 30, 90, 184, 255] {
        assert_pair_bijection(&elementary_rule(n).unwrap(), 6);
    }
}

#[test]
fn shift_global_map_bijective() {
    let rule = elementary_rule(170).unwrap();
    for l in 1..=12 {
        let ring = LatticeGeometry::ring(l).unwrap();
        let mut seen = vec![false; 1 << l];
        for i in 0..1 << l {
            let img = apply_rule(
                &Configuration::from_index(ring.clone(), CellAlphabet::binary(), i),
                &rule,
            )
            .unwrap();
            assert!(!std::mem::replace(&mut seen[img.index()], true));
        }
    }
}

#[test]
fn life_blinker_and_oracle() {
    let torus = LatticeGeometry::torus(5, 5).unwrap();
    let blinker = Configuration::with_live_cells(torus.clone(), &[11, 12, 13]).unwrap();
    let once = apply_rule(&blinker, &game_of_life()).unwrap();
    assert_eq!(once.live_cells(), vec![7, 12, 17]);
    let mut rng_cells = 0x9e3779b97f4a7c15u64;
    let cells: Vec<u8> = (0..25)
        .map(|_| {
            rng_cells = rng_cells
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (rng_cells >> 63) as u8
        })
        .collect();
    let k = Configuration::new(torus, CellAlphabet::binary(), cells.clone()).unwrap();
    assert_eq!(
        apply_rule(&k, &game_of_life()).unwrap().cells(),
        common::life_step(&cells, 5, 5).as_slice()
    );
}

#[test]
fn parse_errors_report_positions() {
    let err = parse_configuration("010\n0a0\n", CellAlphabet::binary()).unwrap_err();
    assert_eq!(err.to_string(), "line 2, column 2: invalid cell symbol `a`");
    let err = parse_rule("2 3\n0 0 0 -> 0\n", SubtractKind::ModM, default_offsets(3, 1).unwrap()).unwrap_err();
    assert!(err.to_string().starts_with("line"), "{err}");
}

proptest! {
    #[test]
    fn elementary_matches_oracle(n in 0u32..256, cells in prop::collection::vec(0u8..2, 3..12)) {
        let k = Configuration::new(LatticeGeometry::ring(cells.len()).unwrap(), CellAlphabet::binary(), cells.clone()).unwrap();
        let out = apply_rule(&k, &elementary_rule(n).unwrap()).unwrap();
        let want = common::elementary_step(&cells, n);
        prop_assert_eq!(out.cells(), want.as_slice());
    }

    #[test]
    fn index_round_trip(m in 2usize..5, l in 1usize..7, seed in any::<u64>()) {
        let ring = LatticeGeometry::ring(l).unwrap();
        let a = CellAlphabet::modular(m).unwrap();
        let i = (seed as usize) % m.pow(l as u32);
        prop_assert_eq!(Configuration::from_index(ring, a, i).index(), i);
    }

    #[test]
    fn second_order_time_reversal(
        n in 0u32..256,
        prev in prop::collection::vec(0u8..2, 7),
        curr in prop::collection::vec(0u8..2, 7),
        steps in 0usize..30,
    ) {
        let ring = LatticeGeometry::ring(7).unwrap();
        let a = CellAlphabet::binary();
        let rule = elementary_rule(n).unwrap();
        let p0 = Configuration::new(ring.clone(), a, prev).unwrap();
        let c0 = Configuration::new(ring, a, curr).unwrap();
        let (p, c) = run_second_order(&p0, &c0, &rule, steps).unwrap();
        let (bp, bc) = run_second_order(&c, &p, &rule, steps).unwrap();
        prop_assert_eq!((bc, bp), (p0, c0));
    }

    #[test]
    fn rule_text_round_trip(m in 2usize..4, table_seed in any::<u64>()) {
        let a = CellAlphabet::modular(m).unwrap();
        let rule = LocalRule::from_fn(a, default_offsets(3, 1).unwrap(), |e| {
            let h = e.iter().fold(table_seed, |acc, &s| acc.wrapping_mul(31).wrapping_add(s as u64 + 1));
            (h % m as u64) as u8
        }).unwrap();
        let back = parse_rule(&format_rule(&rule), SubtractKind::ModM, default_offsets(3, 1).unwrap()).unwrap();
        prop_assert_eq!(back, rule);
    }

    #[test]
    fn configuration_text_round_trip(rows in 1usize..5, cols in 1usize..6, seed in any::<u64>()) {
        let geometry = if rows == 1 {
            LatticeGeometry::ring(cols).unwrap()
        } else {
            LatticeGeometry::torus(rows, cols).unwrap()
        };
        let a = CellAlphabet::modular(3).unwrap();
        let i = (seed as usize) % 3usize.pow((rows * cols) as u32);
        let k = Configuration::from_index(geometry, a, i);
        prop_assert_eq!(parse_configuration(&format_configuration(&k), a).unwrap(), k);
    }
}
