mod common;

use common::*;
use proptest::prelude::*;
use tcaug_core::io::{format_cand, format_tg, parse_cand, parse_tg, GraphJson};
use tcaug_core::{Error, TemporalGraph};

proptest! {
    #[test]
    fn tg_round_trip(n in 1..=6usize, t in 1..=4u32, mask in any::<u64>(), declared in any::<bool>()) {
        let universe = all_edges(n, t);
        let edges = from_mask(&universe, mask);
        let mut g = TemporalGraph::from_triples(n, edges.iter().copied()).unwrap();
        if declared {
            g = g.with_lifespan(t).unwrap();
        }
        let back = parse_tg(&format_tg(&g)).unwrap();
        prop_assert_eq!(&back, &g);
        let json = serde_json::to_string(&GraphJson::from(&g)).unwrap();
        let parsed: GraphJson = serde_json::from_str(&json).unwrap();
        let h = TemporalGraph::try_from(parsed).unwrap();
        prop_assert_eq!(h.edges(), g.edges());
        prop_assert_eq!(h.lifespan(), g.lifespan());
        let cands: Vec<_> = g.edges().to_vec();
        prop_assert_eq!(parse_cand(&format_cand(&cands)).unwrap(), cands);
    }
}

#[test]
fn tg_accepts_multi_time_records_and_comments() {
    let g = parse_tg("# demo\nT 4\nV 3\nE 0 1 1 3  # two copies\nE 2 1 2\n").unwrap();
    assert_eq!(triples(&g), vec![(0, 1, 1), (1, 2, 2), (0, 1, 3)]);
    assert_eq!(g.lifespan(), 4);
}

#[test]
fn tg_errors_carry_line_numbers() {
    let cases = [
        ("V 2\nE 0 2 1\n", 2),
        ("V 2\nE 0 1 0\n", 2),
        ("V 2\nE 0 1 1\nE 1 0 1\n", 3),
        ("V 2\nX 1\n", 2),
        ("V 2\nE 0 1\n", 2),
    ];
    for (text, line) in cases {
        match parse_tg(text) {
            Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
    assert!(parse_tg("E 0 1 1\n").is_err());
    assert!(parse_tg("T 1\nV 2\nE 0 1 2\n").is_err());
}

#[test]
fn cand_rejects_duplicates() {
    assert!(parse_cand("E 0 1 1\nE 1 0 1\n").is_err());
    assert_eq!(parse_cand("E 2 0 1 2\n").unwrap().len(), 2);
}
