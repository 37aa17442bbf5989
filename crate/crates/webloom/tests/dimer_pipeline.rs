use webloom::catalog::{load_example_json, load_example_web};
use webloom::compatibility::WebUniverse;
use webloom::dimers::{enumerate_dimers, superimpose, web_of_triple_dimer, DimerConfig, PlabicGraph};
use webloom::webs::skein_reduce;
use webloom::CombMap;

fn example() -> (PlabicGraph, Vec<DimerConfig>) {
    let v = load_example_json("three_dimers").unwrap();
    let map: CombMap = serde_json::from_value(v["graph"].clone()).unwrap();
    let g = PlabicGraph::new(map).unwrap();
    let ds: Vec<Vec<usize>> = serde_json::from_value(v["dimers"].clone()).unwrap();
    let ds = ds.into_iter().map(|d| DimerConfig::new(&g, d).unwrap()).collect();
    (g, ds)
}

#[test]
fn three_dimers_have_the_drawn_boundaries() {
    let (g, ds) = example();
    let b: Vec<Vec<usize>> = ds.iter().map(|d| d.boundary(&g)).collect();
    assert_eq!(b, vec![vec![1, 2, 3, 8], vec![1, 4, 5, 6], vec![2, 3, 4, 7]]);
    for d in &ds {
        assert!(enumerate_dimers(&g, &d.boundary(&g)).contains(d));
    }
}

#[test]
fn triple_dimer_reduces_to_the_drawn_web() {
    let (g, ds) = example();
    let md = superimpose(&g, &ds).unwrap();
    assert_eq!(md.fold, 3);
    assert_eq!(md.boundary_condition(&g), vec![2, 2, 2, 2, 1, 1, 1, 1]);
    let w = web_of_triple_dimer(&g, &md).unwrap();
    let drawn = load_example_web("dimer_web").unwrap();
    assert_eq!(w.labeled_code(), drawn.labeled_code());
    assert!(!w.is_non_elliptic());

    let sum = skein_reduce(&w);
    assert!(!sum.is_empty());
    let universe = WebUniverse::for_boundary(&[2, 2, 2, 2, 1, 1, 1, 1], 12).unwrap();
    let slice: Vec<_> = universe.webs_with(&drawn.map().vertices()[..8].iter().map(|v| Some(v.color)).collect::<Vec<_>>()).iter().map(|w| w.labeled_code()).collect();
    for (code, coeff, term) in sum.terms() {
        assert!(coeff > 0);
        assert!(term.is_non_elliptic());
        assert!(slice.contains(code));
    }
    assert_eq!(sum.mass(), 2);
}

#[test]
fn zigzag_strands_are_a_fixed_point_free_permutation() {
    let (g, _) = example();
    let perm = g.zigzag_permutation().unwrap();
    let mut sorted = perm.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, (1..=8).collect::<Vec<_>>());
    assert!(perm.iter().enumerate().all(|(i, &t)| t != i + 1));
}
