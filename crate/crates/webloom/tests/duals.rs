use webloom::catalog::{load_catalog, load_example_web, CatalogDual};
use webloom::compatibility::{compatible_multiset, dual_matching, dual_web, WebUniverse};

const CAP: usize = 12;

#[test]
fn catalog_duals_are_reproduced() {
    for e in load_catalog().unwrap() {
        match &e.dual {
            CatalogDual::Matching(m) => {
                let d = dual_matching(&e.polynomial).unwrap();
                let terms: Vec<_> = d.terms.iter().collect();
                assert_eq!(terms.len(), 1, "{}", e.id);
                assert_eq!(terms[0].0, m, "{}", e.id);
                assert_eq!(terms[0].1.abs(), 1, "{}", e.id);
            }
            CatalogDual::Web(w) => {
                let lambda = e.polynomial.boundary_condition().unwrap();
                let u = WebUniverse::for_boundary(&lambda, CAP).unwrap();
                let d = dual_web(&e.polynomial, &u).unwrap();
                let terms: Vec<_> = d.terms().map(|(c, k, w)| (c.clone(), k, w.cycles_and_components())).collect();
                assert_eq!(terms.len(), 1, "{}", e.id);
                assert_eq!(terms[0].1.abs(), 1, "{}", e.id);
                assert_eq!(terms[0].0, w.labeled_code(), "{}", e.id);
            }
        }
    }
}

#[test]
fn worked_example_multisets() {
    let cat = load_catalog().unwrap();
    let p = &cat.iter().find(|e| e.id == "c1").unwrap().polynomial;
    let u = WebUniverse::for_boundary(&p.boundary_condition().unwrap(), CAP).unwrap();
    let named: Vec<_> = ["compat_i", "compat_ii", "compat_iii", "compat_iv"].iter().map(|n| load_example_web(n).unwrap().labeled_code()).collect();
    let expected: [&[usize]; 4] = [&[0], &[0, 2], &[0, 1], &[0, 1, 2, 3]];
    for (t, want) in p.terms.iter().zip(expected) {
        let m = compatible_multiset(t, &u).unwrap();
        let mut got: Vec<usize> = m.terms().map(|(c, k, _)| {
            assert_eq!(k, 1);
            named.iter().position(|x| x == c).expect("compatible web is one of (i)-(iv)")
        }).collect();
        got.sort_unstable();
        assert_eq!(got, want);
    }
    let d = dual_web(p, &u).unwrap();
    assert_eq!(d.terms().map(|(c, k, _)| (c.clone(), k)).collect::<Vec<_>>(), vec![(named[3].clone(), 1)]);
}
