use tcaug_bench::{octo_matrix, pair_demand_instance, random_graph};
use tcaug_core::augmentation::solve_exact;
use tcaug_core::octo::solve_octo;
use tcaug_core::steiner_expansion::solve_tpca_via_expansion;

// The benchmarks are only meaningful if their instances need real work.

#[test]
fn pair_demand_fixtures_need_additions() {
    for cands in [8, 12, 16] {
        let p = pair_demand_instance(8, 3, cands, 3, 0);
        assert_eq!(p.candidates().len(), cands);
        let cost = solve_exact(&p).unwrap().cost();
        assert!(cost.is_some_and(|c| c > 0), "{cands} candidates: {cost:?}");
        assert_eq!(solve_tpca_via_expansion(&p).unwrap().cost(), cost);
    }
}

#[test]
fn octo_fixtures_have_no_zero_lines() {
    for k in [4, 5, 6] {
        let m = octo_matrix(k, k, 0.3, k as u64);
        let rows = m.to_rows();
        assert!(rows.iter().all(|r| r.contains(&true)));
        assert!((0..k).all(|j| rows.iter().any(|r| r[j])));
        assert!(solve_octo(&m, None).unwrap().min_combinations().is_some_and(|c| c > 0));
    }
}

#[test]
fn generators_are_deterministic() {
    assert_eq!(random_graph(30, 5, 0.1, 9), random_graph(30, 5, 0.1, 9));
    assert_eq!(octo_matrix(5, 4, 0.3, 2), octo_matrix(5, 4, 0.3, 2));
}
