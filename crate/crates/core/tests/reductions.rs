mod common;

use common::*;
use proptest::prelude::*;
use tcaug_core::augmentation::{solve_exact, verify_solution};
use tcaug_core::octo::{replay, solve_octo};
use tcaug_core::reductions::source_formats::{format_dimacs, format_set_list, parse_dimacs, parse_edge_list, parse_set_list};
use tcaug_core::reductions::{
    covers_from_merges, dominating_set_from_connecting_set, hitting_set_from_connecting_set, merges_from_covers,
    reduce_3sat, reduce_dominating_set, reduce_dsc, reduce_hitting_set, CandidateMode, CnfInstance, Literal,
    SetSystemInstance, StaticGraphInstance,
};
use tcaug_core::{OctoOutcome, Semantics};

fn arb_static_graph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1..=5usize).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len)
            .prop_map(move |keep| (n, pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&p, _)| p).collect()))
    })
}

fn arb_sets(allow_empty: bool) -> impl Strategy<Value = (usize, Vec<Vec<usize>>)> {
    (1..=4usize, 1..=4usize).prop_flat_map(move |(n, m)| {
        let low = u32::from(!allow_empty);
        proptest::collection::vec(low..1u32 << n, m)
            .prop_map(move |masks| (n, masks.iter().map(|&s| (0..n).filter(|&e| s >> e & 1 == 1).collect()).collect()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dominating_set_round_trip((n, adj) in arb_static_graph()) {
        let gamma = min_dominating_set(n, &adj);
        let ds = StaticGraphInstance::new(n, adj.clone(), gamma).unwrap();
        let (p, gadget) = reduce_dominating_set(&ds, CandidateMode::Simple).unwrap();
        prop_assert_eq!(p.semantics(), Semantics::Strict);
        let s = solve_exact(&p).unwrap();
        prop_assert_eq!(s.cost(), Some(gamma));
        let back = dominating_set_from_connecting_set(&p, &gadget, &s.solution().unwrap().selected).unwrap();
        prop_assert_eq!(back.len(), gamma);
        let tight = solve_exact(&p.with_budget(gamma.checked_sub(1))).unwrap();
        prop_assert_eq!(tight.is_feasible_within_budget(), gamma == 0);
    }

    #[test]
    fn hitting_set_round_trip((n, sets) in arb_sets(false)) {
        let tau = min_hitting_set(n, &sets).unwrap();
        let hs = SetSystemInstance::new(n, sets.clone(), tau).unwrap();
        let (p, gadget) = reduce_hitting_set(&hs, CandidateMode::Simple).unwrap();
        let s = solve_exact(&p).unwrap();
        prop_assert_eq!(s.cost(), Some(tau));
        let back = hitting_set_from_connecting_set(&p, &gadget, &s.solution().unwrap().selected).unwrap();
        prop_assert!(back.len() <= tau);
        prop_assert!(sets.iter().all(|set| set.iter().any(|e| back.contains(e))));
    }

    #[test]
    fn dsc_round_trip((n, sets) in arb_sets(true)) {
        let covers = disjoint_covers(n, &sets);
        prop_assume!(!covers.is_empty());
        let k = covers.len();
        let inst = SetSystemInstance::new(n, sets.clone(), k).unwrap();
        let red = reduce_dsc(&inst).unwrap();
        prop_assert_eq!(red.budget, Some(sets.len() - k));
        let merges = merges_from_covers(&inst, &covers).unwrap();
        prop_assert!(replay(&red.matrix, &merges).unwrap().is_all_ones());
        match solve_octo(&red.matrix, red.budget).unwrap() {
            OctoOutcome::Solved(sol) => {
                prop_assert_eq!(sol.min_combinations, sets.len() - k);
                let back = covers_from_merges(&inst, &sol.sequence).unwrap();
                prop_assert!(back.len() >= k);
            }
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }
}

#[test]
fn dominating_set_layout() {
    let ds = StaticGraphInstance::new(3, vec![(0, 1), (1, 2)], 1).unwrap();
    let (p, g) = reduce_dominating_set(&ds, CandidateMode::Simple).unwrap();
    assert_eq!((g.x, g.y, p.base().n()), (3, 4, 5));
    assert_eq!(p.base().name(g.x), Some("x"));
    let f = g.connecting_set_from_dominating_set(&[1]).unwrap();
    assert!(verify_solution(&p, &f).unwrap());
    assert!(!verify_solution(&p, &g.connecting_set_from_dominating_set(&[0]).unwrap()).unwrap());
    assert!(g.connecting_set_from_dominating_set(&[7]).is_err());
}

#[test]
fn satisfiable_formula_meets_the_budget() {
    // (x0 | x1 | x2) & (!x0 | !x1 | x2)
    let cnf = CnfInstance::new(
        3,
        vec![
            [Literal::pos(0), Literal::pos(1), Literal::pos(2)],
            [Literal::neg(0), Literal::neg(1), Literal::pos(2)],
        ],
    )
    .unwrap();
    let (p, g) = reduce_3sat(&cnf).unwrap();
    assert_eq!(p.budget(), Some(6));
    let f = g.connecting_set_from_assignment(&[false, false, true]).unwrap();
    assert!(verify_solution(&p, &f).unwrap());
    assert_eq!(p.cost_of(&f), 6);
    let back = g.assignment_from_connecting_set(&p, &f).unwrap();
    assert!(cnf.satisfied_by(&back));
    assert!(reduce_3sat(&CnfInstance::new(1, vec![]).unwrap()).is_err());
}

#[test]
fn dsc_rejects_degenerate_inputs() {
    assert!(reduce_dsc(&SetSystemInstance::new(2, vec![vec![0]], 0).unwrap()).is_err());
    assert!(reduce_dsc(&SetSystemInstance::new(0, vec![vec![]], 1).unwrap()).is_err());
    let over = reduce_dsc(&SetSystemInstance::new(1, vec![vec![0]], 2).unwrap()).unwrap();
    assert_eq!(over.budget, None);
    assert_eq!(over.matrix.rows(), 2);
}

#[test]
fn source_formats_round_trip() {
    let cnf = parse_dimacs("c x\np cnf 3 1\n1 -2 3 0\n").unwrap();
    assert_eq!(cnf.clauses[0], [Literal::pos(0), Literal::neg(1), Literal::pos(2)]);
    assert_eq!(parse_dimacs(&format_dimacs(&cnf)).unwrap(), cnf);
    // both polarities of one variable in a clause
    assert!(parse_dimacs("p cnf 2 1\n1 -2 2 0\n").is_err());
    let (n, sets) = parse_set_list("U 3\nS 0: 0 1\nS 1: 2\n").unwrap();
    assert_eq!(parse_set_list(&format_set_list(n, &sets)).unwrap(), (n, sets));
    assert_eq!(parse_edge_list("2\n0 1\n").unwrap(), (2, vec![(0, 1)]));
}
