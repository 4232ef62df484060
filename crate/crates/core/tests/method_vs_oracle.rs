//! The decisive cross-validation: the structure-digraph solver and the
//! brute-force memoized solver are independent implementations, and they must
//! agree — on the game value, and position-by-position once each labeled
//! position is bucketed by its structure class and the parity of its size.

use gengame_core::{
    build_digraph, build_group, classify_position, compute_types, enumerate_labeled_positions,
    intersection_family, verify_parity_invariant, FiniteGroup, GameKind, GroupSpec, OracleConfig,
};

fn group(spec: GroupSpec) -> FiniteGroup {
    build_group(&spec).expect("corpus group must build")
}

fn corpus() -> Vec<FiniteGroup> {
    let mut gs: Vec<FiniteGroup> = (2..=12).map(|n| group(GroupSpec::Cyclic(n))).collect();
    gs.push(group(GroupSpec::Dihedral(3)));
    gs.push(group(GroupSpec::Dihedral(4)));
    gs.push(group(GroupSpec::Dihedral(5)));
    gs.push(group(GroupSpec::Quaternion8));
    gs.push(group(GroupSpec::Product(
        Box::new(GroupSpec::Cyclic(2)),
        Box::new(GroupSpec::Cyclic(2)),
    )));
    gs.push(group(GroupSpec::Product(
        Box::new(GroupSpec::Cyclic(2)),
        Box::new(GroupSpec::Cyclic(4)),
    )));
    gs.push(group(GroupSpec::Product(
        Box::new(GroupSpec::Cyclic(3)),
        Box::new(GroupSpec::Cyclic(3)),
    )));
    // Beyond the standard corpus: a larger cyclic group, an odd prime-power
    // nonabelian group, and the smallest Frobenius group.
    gs.push(group(GroupSpec::Cyclic(15)));
    gs.push(group(GroupSpec::Heisenberg(3)));
    gs.push(group(GroupSpec::Frobenius { p: 5, r: None }));
    gs
}

/// Every memoized position's brute-force grundy value must equal the `a` (even
/// size) or `b` (odd size) component of its structure class's type triple.
fn assert_position_values_match(g: &FiniteGroup, game: GameKind) {
    let fam = intersection_family(g).unwrap();
    let digraph = compute_types(build_digraph(g, &fam, game).unwrap());
    let mut cfg = OracleConfig::new();
    let table = enumerate_labeled_positions(g, game, &mut cfg).unwrap();
    assert!(!table.is_empty(), "{}: oracle explored nothing", g.name());
    for (pos, value) in table {
        let node_id = classify_position(g, &fam, game, &pos).unwrap();
        assert!(
            node_id < fam.len(),
            "{}: a memoized position classified as the generating sink",
            g.name()
        );
        let triple = digraph.node(node_id).triple;
        let expected = if pos.len() % 2 == 0 { triple.a } else { triple.b };
        assert_eq!(
            value,
            expected,
            "{} {}: position {:?} (class {}, size {}) — oracle {} vs class value {}",
            g.name(),
            game,
            pos,
            node_id,
            pos.len(),
            value,
            expected
        );
    }
    // Game value: the digraph's answer is the empty position's oracle value.
    let nim_structure = digraph.nim_value();
    let nim_oracle = gengame_core::bruteforce_nim(g, game, &mut cfg).unwrap();
    assert_eq!(
        nim_structure,
        nim_oracle,
        "{} {}: structure {} vs oracle {}",
        g.name(),
        game,
        nim_structure,
        nim_oracle
    );
}

#[test]
fn avoidance_values_agree_everywhere() {
    for g in corpus() {
        assert_position_values_match(&g, GameKind::Dng);
    }
}

#[test]
fn achievement_values_agree_everywhere() {
    for g in corpus() {
        assert_position_values_match(&g, GameKind::Gen);
    }
}

#[test]
fn parity_invariant_holds_across_the_corpus() {
    for g in corpus() {
        let fam = intersection_family(&g).unwrap();
        for game in [GameKind::Dng, GameKind::Gen] {
            let mut cfg = OracleConfig::new();
            let check = verify_parity_invariant(&g, game, &fam, &mut cfg).unwrap();
            assert!(
                check.is_consistent(),
                "{} {}: parity invariant violated: {:?}",
                g.name(),
                game,
                check
            );
        }
    }
}
