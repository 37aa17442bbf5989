//! Property tests for identities that must hold on every input.

use std::sync::OnceLock;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use webloom::catalog::load_type_lists;
use webloom::plucker::random_matrix;
use webloom::render::render_web;
use webloom::{coloring_count, grow, Dihedral, KSubset, PluckerMonomial, PluckerPolynomial, RectTableau, RenderSpec, Web};

/// A uniformly random growth order of the `rows x cols` rectangle turned
/// into a standard tableau.
fn random_syt(rows: usize, cols: usize, seed: u64) -> RectTableau {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut filled: Vec<Vec<usize>> = vec![Vec::new(); rows];
    for x in 1..=rows * cols {
        let open: Vec<usize> = (0..rows).filter(|&r| filled[r].len() < cols && (r == 0 || filled[r - 1].len() > filled[r].len())).collect();
        let r = open[rng.gen_range(0..open.len())];
        filled[r].push(x);
    }
    RectTableau::from_rows(filled).unwrap()
}

fn mixed_webs() -> &'static Vec<Web> {
    static WEBS: OnceLock<Vec<Web>> = OnceLock::new();
    WEBS.get_or_init(|| load_type_lists().unwrap().into_iter().flatten().collect())
}

fn arb_subset(n: usize, k: usize) -> impl Strategy<Value = KSubset> {
    proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), k).prop_map(move |v| KSubset::new(n, v).unwrap())
}

fn arb_dihedral(n: usize) -> impl Strategy<Value = Dihedral> {
    proptest::sample::select(Dihedral::all(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn promotion_has_order_n(rows in 2usize..=4, cols in 1usize..=4, seed: u64) {
        let t = random_syt(rows, cols, seed);
        let mut p = t.clone();
        for _ in 0..rows * cols {
            p = p.promotion().unwrap();
        }
        prop_assert_eq!(p, t);
    }

    #[test]
    fn evacuation_is_an_involution(rows in 2usize..=4, cols in 1usize..=4, seed: u64) {
        let t = random_syt(rows, cols, seed);
        prop_assert_eq!(t.evacuation().unwrap().evacuation().unwrap(), t);
    }

    #[test]
    fn grown_graph_trips_are_promotion_permutations(cols in 1usize..=3, seed: u64) {
        let t = random_syt(4, cols, seed);
        let g = grow(&t).unwrap();
        prop_assert_eq!(g.graph.trip_perms().unwrap(), t.prom_perms().unwrap());
    }

    #[test]
    fn coloring_count_is_dihedrally_equivariant(
        idx in 0usize..182,
        g in arb_dihedral(8),
        i in arb_subset(8, 4),
        j in arb_subset(8, 4),
        k in arb_subset(8, 4),
    ) {
        let w = &mixed_webs()[idx % mixed_webs().len()];
        let before = coloring_count(w, &i, &j, &k);
        let after = coloring_count(&w.relabel(g), &i.relabel(g), &j.relabel(g), &k.relabel(g));
        prop_assert_eq!(before, after);
    }

    #[test]
    fn coloring_count_ignores_role_order(idx in 0usize..182, i in arb_subset(8, 4), j in arb_subset(8, 4), k in arb_subset(8, 4)) {
        let w = &mixed_webs()[idx % mixed_webs().len()];
        let base = coloring_count(w, &i, &j, &k);
        prop_assert_eq!(coloring_count(w, &j, &i, &k), base);
        prop_assert_eq!(coloring_count(w, &k, &j, &i), base);
        prop_assert_eq!(coloring_count(w, &i, &k, &j), base);
    }

    #[test]
    fn canonical_code_is_dihedral_invariant(idx in 0usize..182, g in arb_dihedral(8)) {
        let w = &mixed_webs()[idx % mixed_webs().len()];
        prop_assert_eq!(w.relabel(g).canonical_code(), w.canonical_code());
    }

    #[test]
    fn rendering_is_deterministic(idx in 0usize..182) {
        let w = &mixed_webs()[idx % mixed_webs().len()];
        let spec = RenderSpec::default();
        prop_assert_eq!(render_web(w, &spec), render_web(&w.clone(), &spec));
    }

    #[test]
    fn evaluation_is_linear_in_sign(a in arb_subset(8, 4), b in arb_subset(8, 4), seed: u64) {
        let p = PluckerPolynomial::new(4, 8, vec![PluckerMonomial::new(1, vec![a.clone(), b.clone()]), PluckerMonomial::new(-1, vec![b, a])]).unwrap();
        let m = random_matrix(4, 8, 5, seed);
        prop_assert!(num_traits::Zero::is_zero(&p.evaluate(&m).unwrap()));
        let single = PluckerPolynomial::new(4, 8, vec![p.terms[0].clone()]).unwrap();
        prop_assert_eq!(single.negated().evaluate(&m).unwrap(), -single.evaluate(&m).unwrap());
    }
}
