//! The acceptance suite: eleven end-to-end checks, each producing a pass or
//! fail verdict with a one-line detail. Tolerances are zero throughout since
//! all arithmetic is exact.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use crate::catalog::{load_catalog, load_example_json, load_example_web, load_type_lists, load_web_atlas, CatalogDual};
use crate::compatibility::{coloring_count, coloring_count_brute, compatible_multiset, dual_matching, dual_web, WebUniverse};
use crate::dimers::{superimpose, web_of_triple_dimer, DimerConfig, PlabicGraph};
use crate::growth::grow;
use crate::planar_map::CombMap;
use crate::plucker::{gr36_expressions, random_matrix};
use crate::tableaux::{all_standard, count_syt_u64, RectTableau};
use crate::webs::{enumerate_black_webs, enumerate_mixed_webs, min_interior_for_cycles, skein_reduce, Web, WebCensus};

/// Interior vertex cap for webs on eight mixed boundary vertices: the
/// 12-boundary cap less one vertex per contracted site.
pub const MIXED_INTERIOR_CAP: usize = 12;

/// Number of random matrices for the Gr(3,6) identity check.
pub const GR36_SAMPLES: u64 = 50;

/// Entry bound of those matrices.
pub const GR36_ENTRY_BOUND: i64 = 20;

/// Largest edge count for which the brute-force coloring oracle runs.
pub const ORACLE_MAX_EDGES: usize = 12;

/// The 12-boundary census, shared by the criteria that need it.
fn census12() -> &'static WebCensus {
    static CENSUS: OnceLock<WebCensus> = OnceLock::new();
    CENSUS.get_or_init(|| enumerate_black_webs(12).expect("12 is divisible by 3"))
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {:>2} {:<24} {:>8.2}s  {}", if self.pass { "PASS" } else { "FAIL" }, self.id, self.name, self.elapsed.as_secs_f64(), self.detail)
    }
}

type Check = fn() -> (bool, String);

pub const CRITERIA: [(usize, &str, Check); 11] = [
    (1, "counting", counting),
    (2, "black web enumeration", black_enumeration),
    (3, "mixed web enumeration", mixed_enumeration),
    (4, "promotion dynamics", promotion_dynamics),
    (5, "promotion permutations", promotion_permutations),
    (6, "growth correspondence", growth_correspondence),
    (7, "dual reproduction", dual_reproduction),
    (8, "dimer pipeline", dimer_pipeline),
    (9, "structural invariants", structural_invariants),
    (10, "exact algebra", exact_algebra),
    (11, "oracle equivalence", oracle_equivalence),
];

/// Run one criterion, turning a panic into a failure.
pub fn run(id: usize) -> Option<Verdict> {
    let &(id, name, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let (pass, detail) = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
        let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default();
        (false, format!("panicked: {msg}"))
    });
    Some(Verdict { id, name, pass, detail, elapsed: start.elapsed() })
}

pub fn run_all() -> Vec<Verdict> {
    CRITERIA.iter().filter_map(|c| run(c.0)).collect()
}

fn counting() -> (bool, String) {
    let big = count_syt_u64(4, 3);
    let small = count_syt_u64(4, 2);
    // brute force: every arrangement of 1..=8 in a 4x2 grid
    let mut brute = 0;
    let mut perm: Vec<usize> = (1..=8).collect();
    permute(&mut perm, 0, &mut |p| {
        let rows: Vec<Vec<usize>> = p.chunks(2).map(|c| c.to_vec()).collect();
        if RectTableau::from_rows(rows).is_ok_and(|t| t.is_standard()) {
            brute += 1;
        }
    });
    (big == 462 && small == 14 && brute == 14, format!("4x3: {big}, 4x2: {small}, 4x2 by brute force: {brute}"))
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

fn black_enumeration() -> (bool, String) {
    let census = census12();
    let found: BTreeSet<_> = census.classes.iter().map(|(w, _)| w.canonical_code()).collect();
    let atlas: BTreeSet<_> = load_web_atlas().expect("atlas loads").iter().map(|(w, _)| w.canonical_code()).collect();
    let pass = census.classes.len() == 32 && census.orbit_sum() == 462 && census.total() == 462 && found == atlas;
    (pass, format!("{} classes, orbit sum {}, {} labeled, {} of 32 atlas codes matched", census.classes.len(), census.orbit_sum(), census.total(), found.intersection(&atlas).count()))
}

fn mixed_enumeration() -> (bool, String) {
    let mixed = enumerate_mixed_webs(census12()).expect("contraction succeeds");
    let lists = load_type_lists().expect("type lists load");
    let mut missing = 0;
    let mut drawn_total = 0;
    for (t, list) in lists.iter().enumerate() {
        let found: BTreeSet<_> = mixed.webs.iter().filter(|(ty, _)| *ty == t + 1).map(|(_, w)| w.labeled_code()).collect();
        drawn_total += list.len();
        missing += list.iter().filter(|w| !found.contains(&w.labeled_code())).count();
    }
    let pass = mixed.len() == 182 && missing == 0;
    (
        pass,
        format!(
            "{} webs (by type {:?}, {} dihedral classes), expected 182; {} of {} reference webs found",
            mixed.len(),
            mixed.by_type(),
            mixed.dihedral_class_count(),
            drawn_total - missing,
            drawn_total
        ),
    )
}

fn promotion_dynamics() -> (bool, String) {
    let t = RectTableau::parse_short("14,25,37,68").expect("fixed tableau");
    let example = t.promotion().ok() == RectTableau::parse_short("13,24,56,78").ok() && t.evacuation().ok() == RectTableau::parse_short("13,26,47,58").ok();
    let mut bad = 0;
    let mut checked = 0;
    for (a, b) in [(4, 2), (4, 3)] {
        for x in all_standard(a, b) {
            checked += 1;
            let mut y = x.clone();
            for _ in 0..a * b {
                y = y.promotion().expect("standard");
            }
            if y != x || x.evacuation().and_then(|e| e.evacuation()).ok() != Some(x.clone()) {
                bad += 1;
            }
        }
    }
    (example && bad == 0, format!("worked example {}, {checked} tableaux, {bad} violations", if example { "reproduced" } else { "differs" }))
}

fn promotion_permutations() -> (bool, String) {
    let mut bad = 0;
    let mut literal = 0;
    let mut pairs = 0;
    for x in all_standard(4, 3) {
        let perms = x.prom_perms().expect("standard");
        let prom = x.promotion().and_then(|p| p.prom_perms()).expect("standard");
        let evac = x.evacuation().and_then(|e| e.prom_perms()).expect("standard");
        for i in 1..=3 {
            pairs += 1;
            let p = &perms[i - 1];
            let ok = p.rot() == prom[i - 1] && p.refl() == evac[3 - i] && *p == perms[3 - i].inverse() && p.aexc() == x.first_rows(i);
            bad += usize::from(!ok);
            literal += usize::from(p.refl() == evac[i - 1]);
        }
    }
    (bad == 0, format!("{pairs} (T, i) pairs, {bad} violations; reflection with unchanged index holds on {literal}"))
}

fn growth_correspondence() -> (bool, String) {
    let mut bad = Vec::new();
    let catalog = load_catalog().expect("catalog loads");
    for e in &catalog {
        match grow(&e.tableau) {
            Ok(g) if g.graph.trip_perms().ok() == e.tableau.standardize().prom_perms().ok() => {}
            _ => bad.push(e.id.clone()),
        }
    }
    let mut stuck = 0;
    let mut wrong = 0;
    for t in all_standard(4, 3) {
        match grow(&t) {
            Ok(g) => wrong += usize::from(g.graph.trip_perms().ok() != t.prom_perms().ok()),
            Err(_) => stuck += 1,
        }
    }
    (bad.is_empty() && stuck == 0 && wrong == 0, format!("catalog mismatches {bad:?}; 462 tableaux: {stuck} failed, {wrong} trip mismatches"))
}

fn dual_reproduction() -> (bool, String) {
    let catalog = load_catalog().expect("catalog loads");
    let mut bad = Vec::new();
    for e in &catalog {
        let ok = match &e.dual {
            CatalogDual::Matching(m) => {
                let d = dual_matching(&e.polynomial).expect("homogeneous");
                d.terms.len() == 1 && d.terms.get(m).is_some_and(|c| c.abs() == 1)
            }
            CatalogDual::Web(w) => {
                let lambda = e.polynomial.boundary_condition().expect("homogeneous");
                let u = WebUniverse::for_boundary(&lambda, MIXED_INTERIOR_CAP).expect("cubic boundary");
                let d = dual_web(&e.polynomial, &u).expect("homogeneous");
                d.len() == 1 && d.coefficient(&w.labeled_code()).abs() == 1
            }
        };
        if !ok {
            bad.push(e.id.clone());
        }
    }
    let worked = worked_example();
    (bad.is_empty() && worked, format!("{} of 17 duals reproduced {bad:?}; worked example {}", 17 - bad.len(), if worked { "gives {(iv)}" } else { "differs" }))
}

fn worked_example() -> bool {
    let Ok(catalog) = load_catalog() else { return false };
    let Some(p) = catalog.iter().find(|e| e.type_class == Some(1)).map(|e| &e.polynomial) else { return false };
    let Ok(u) = WebUniverse::for_boundary(&[2, 2, 2, 2, 1, 1, 1, 1], MIXED_INTERIOR_CAP) else { return false };
    let named: Vec<_> = ["compat_i", "compat_ii", "compat_iii", "compat_iv"].iter().map(|n| load_example_web(n).expect("example loads").labeled_code()).collect();
    let expected: [&[usize]; 4] = [&[0], &[0, 2], &[0, 1], &[0, 1, 2, 3]];
    let multisets_ok = p.terms.len() == 4
        && p.terms.iter().zip(expected).all(|(t, want)| {
            let m = compatible_multiset(t, &u).expect("three factors");
            let mut got: Vec<Option<usize>> = m.terms().map(|(c, _, _)| named.iter().position(|x| x == c)).collect();
            got.sort_unstable();
            m.terms().all(|(_, k, _)| k == 1) && got == want.iter().map(|&i| Some(i)).collect::<Vec<_>>()
        });
    let d = dual_web(p, &u).expect("homogeneous");
    multisets_ok && d.len() == 1 && d.coefficient(&named[3]) == 1
}

fn dimer_pipeline() -> (bool, String) {
    let v = load_example_json("three_dimers").expect("example loads");
    let map: CombMap = serde_json::from_value(v["graph"].clone()).expect("graph parses");
    let g = PlabicGraph::new(map).expect("plabic graph");
    let ds: Vec<Vec<usize>> = serde_json::from_value(v["dimers"].clone()).expect("dimers parse");
    let ds: Vec<DimerConfig> = ds.into_iter().map(|d| DimerConfig::new(&g, d).expect("dimer")).collect();
    let md = superimpose(&g, &ds).expect("same graph");
    let lambda = md.boundary_condition(&g);
    let web = web_of_triple_dimer(&g, &md).expect("triple dimer");
    let sum = skein_reduce(&web);
    let universe = WebUniverse::for_boundary(&[2, 2, 2, 2, 1, 1, 1, 1], MIXED_INTERIOR_CAP).expect("cubic boundary");
    let slice: BTreeSet<_> = universe.webs_with(&web.map().vertices()[..8].iter().map(|v| Some(v.color)).collect::<Vec<_>>()).iter().map(Web::labeled_code).collect();
    let nonneg = sum.terms().all(|(_, k, w)| k > 0 && w.is_non_elliptic());
    let inside = sum.terms().all(|(c, _, _)| slice.contains(c));
    let pass = lambda == [2, 2, 2, 2, 1, 1, 1, 1] && !sum.is_empty() && nonneg && inside;
    (pass, format!("boundary condition {lambda:?}; {} terms of total weight {}, nonnegative non-elliptic: {nonneg}, inside the atlas slice: {inside}", sum.len(), sum.mass()))
}

fn structural_invariants() -> (bool, String) {
    let mut checked = 0;
    let mut bad = 0;
    for n in [3, 6, 9, 12] {
        let small;
        let census = if n == 12 {
            census12()
        } else {
            small = enumerate_black_webs(n).expect("divisible by 3");
            &small
        };
        for w in &census.labeled {
            checked += 1;
            let v = w.interior_count();
            let (c, m) = w.cycles_and_components();
            let (white, black) = w.interior_colors();
            let ok = v + 2 * m == n + 2 * c && v >= min_interior_for_cycles(c) && white == black + n / 3;
            bad += usize::from(!ok);
        }
    }
    (bad == 0, format!("{checked} webs with 3 to 12 black boundary vertices, {bad} violations"))
}

fn exact_algebra() -> (bool, String) {
    let [a, b, c] = gr36_expressions();
    let mut disagree = 0;
    for seed in 0..GR36_SAMPLES {
        let m = random_matrix(3, 6, GR36_ENTRY_BOUND, seed);
        let x = a.evaluate(&m).expect("shape");
        disagree += usize::from(x != b.evaluate(&m).expect("shape") || x != c.evaluate(&m).expect("shape"));
    }
    let catalog = load_catalog().expect("catalog loads");
    let inhomogeneous = catalog.iter().filter(|e| e.polynomial.boundary_condition().is_err()).count();
    (disagree == 0 && inhomogeneous == 0 && catalog.len() == 17, format!("{GR36_SAMPLES} matrices, {disagree} disagreements; {inhomogeneous} of {} catalog polynomials inhomogeneous", catalog.len()))
}

fn oracle_equivalence() -> (bool, String) {
    let catalog = load_catalog().expect("catalog loads");
    let mut cases = 0;
    let mut bad = 0;
    for e in catalog.iter().filter(|e| matches!(e.dual, CatalogDual::Web(_))) {
        let lambda = e.polynomial.boundary_condition().expect("homogeneous");
        let u = WebUniverse::for_boundary(&lambda, MIXED_INTERIOR_CAP).expect("cubic boundary");
        let pattern: Vec<_> = lambda.iter().map(|&l| Some(if l == 2 { crate::Color::White } else { crate::Color::Black })).collect();
        for w in u.webs_with(&pattern).iter().filter(|w| w.map().edges().len() <= ORACLE_MAX_EDGES) {
            for t in &e.polynomial.terms {
                let f = &t.factors;
                for [i, j, k] in [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2]] {
                    cases += 1;
                    bad += usize::from(coloring_count(w, &f[i], &f[j], &f[k]) != coloring_count_brute(w, &f[i], &f[j], &f[k]));
                }
            }
        }
    }
    (bad == 0 && cases > 0, format!("{cases} (web, ordered triple) cases, {bad} disagreements"))
}
