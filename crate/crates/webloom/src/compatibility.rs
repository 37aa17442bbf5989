//! Compatibility of Plücker monomials with matchings (two factors) and webs
//! (three factors), edge-coloring counts, and the signed dual combinations
//! of Plücker polynomials.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::planar_map::{CanonicalCode, Color, Dihedral};
use crate::plucker::{KSubset, PluckerMonomial, PluckerPolynomial};
use crate::webs::{SignedWebSum, Web};

/// A matching on boundary vertices `1..=n` with isolated white vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Matching {
    pub n: usize,
    pub pairs: Vec<(usize, usize)>,
    pub isolated_white: Vec<usize>,
}

impl Matching {
    /// Normalize: each pair increasing, pairs and isolated vertices sorted.
    pub fn new(n: usize, pairs: Vec<(usize, usize)>, mut isolated_white: Vec<usize>) -> Result<Matching> {
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort_unstable();
        isolated_white.sort_unstable();
        let mut seen = vec![false; n + 1];
        for x in pairs.iter().flat_map(|&(a, b)| [a, b]).chain(isolated_white.iter().copied()) {
            if x == 0 || x > n || seen[x] {
                return Err(Error::Web(format!("matching vertex {x} is out of range or used twice")));
            }
            seen[x] = true;
        }
        Ok(Matching { n, pairs, isolated_white })
    }

    /// No two chords cross when the labels sit on a circle.
    pub fn is_non_crossing(&self) -> bool {
        self.pairs.iter().all(|&(a, b)| self.pairs.iter().all(|&(c, d)| !((a < c && c < b && b < d) || (c < a && a < d && d < b))))
    }

    pub fn relabel(&self, g: Dihedral) -> Matching {
        let pairs = self.pairs.iter().map(|&(a, b)| (g.apply(a, self.n), g.apply(b, self.n))).collect();
        let iso = self.isolated_white.iter().map(|&a| g.apply(a, self.n)).collect();
        Matching::new(self.n, pairs, iso).expect("relabeling is a bijection")
    }
}

/// Integer combination of matchings.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SignedMatchingSum {
    pub terms: BTreeMap<Matching, i64>,
}

impl SignedMatchingSum {
    pub fn add(&mut self, m: Matching, c: i64) {
        let e = self.terms.entry(m.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&m);
        }
    }
}

/// Every pair joins `I \ J` to `J \ I`, the isolated white vertices are
/// exactly `I ∩ J`, and every vertex of the symmetric difference is matched.
pub fn matching_compatible(m: &Matching, i: &KSubset, j: &KSubset) -> bool {
    let only_i = |x: usize| i.contains(x) && !j.contains(x);
    let only_j = |x: usize| j.contains(x) && !i.contains(x);
    let pairs_ok = m.pairs.iter().all(|&(a, b)| (only_i(a) && only_j(b)) || (only_j(a) && only_i(b)));
    let both: Vec<usize> = i.elems.iter().copied().filter(|&x| j.contains(x)).collect();
    let matched = m.pairs.len() * 2 == (1..=m.n).filter(|&x| only_i(x) || only_j(x)).count();
    pairs_ok && m.isolated_white == both && matched
}

/// All non-crossing matchings compatible with `P_I P_J`.
pub fn compatible_matchings(i: &KSubset, j: &KSubset) -> Vec<Matching> {
    let n = i.n;
    let pts: Vec<(usize, bool)> = (1..=n)
        .filter_map(|x| match (i.contains(x), j.contains(x)) {
            (true, false) => Some((x, true)),
            (false, true) => Some((x, false)),
            _ => None,
        })
        .collect();
    fn rec(pts: &[(usize, bool)]) -> Vec<Vec<(usize, usize)>> {
        if pts.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for k in (1..pts.len()).step_by(2) {
            if pts[k].1 == pts[0].1 {
                continue;
            }
            for inner in rec(&pts[1..k]) {
                for outer in rec(&pts[k + 1..]) {
                    let mut m = vec![(pts[0].0, pts[k].0)];
                    m.extend(inner.iter().copied());
                    m.extend(outer.iter().copied());
                    out.push(m);
                }
            }
        }
        out
    }
    let both: Vec<usize> = i.elems.iter().copied().filter(|&x| j.contains(x)).collect();
    rec(&pts).into_iter().map(|p| Matching::new(n, p, both.clone()).expect("disjoint pairs")).collect()
}

/// Signed sum of compatible non-crossing matchings over the terms.
pub fn dual_matching(p: &PluckerPolynomial) -> Result<SignedMatchingSum> {
    p.boundary_condition()?;
    let mut out = SignedMatchingSum::default();
    for t in &p.terms {
        let [i, j] = two_factors(t)?;
        for m in compatible_matchings(i, j) {
            out.add(m, t.sign);
        }
    }
    Ok(out)
}

fn two_factors(t: &PluckerMonomial) -> Result<[&KSubset; 2]> {
    match t.factors.as_slice() {
        [a, b] => Ok([a, b]),
        _ => Err(Error::Polynomial(format!("expected 2 factors, found {}", t.factors.len()))),
    }
}

fn three_factors(t: &PluckerMonomial) -> Result<[&KSubset; 3]> {
    match t.factors.as_slice() {
        [a, b, c] => Ok([a, b, c]),
        _ => Err(Error::Polynomial(format!("expected 3 factors, found {}", t.factors.len()))),
    }
}

/// What a boundary vertex must look like for a triple `(I, J, K)`: absent,
/// or its color and the color (0, 1, 2) of its single edge.
fn boundary_demand(x: usize, sets: [&KSubset; 3]) -> Option<(Color, u8)> {
    let inside = sets.map(|s| s.contains(x));
    match inside.iter().filter(|&&b| b).count() {
        1 => Some((Color::Black, inside.iter().position(|&b| b).unwrap() as u8)),
        2 => Some((Color::White, inside.iter().position(|&b| !b).unwrap() as u8)),
        _ => None,
    }
}

/// Boundary colors (or absence) a web needs for the triple.
pub fn boundary_pattern(i: &KSubset, j: &KSubset, k: &KSubset) -> Vec<Option<Color>> {
    (1..=i.n).map(|x| boundary_demand(x, [i, j, k]).map(|d| d.0)).collect()
}

/// Forced edge colors from the boundary, or `None` if the web's boundary
/// does not fit the triple.
fn forced_colors(w: &Web, sets: [&KSubset; 3]) -> Option<Vec<Option<u8>>> {
    let g = w.map();
    let mut color: Vec<Option<u8>> = vec![None; g.edges().len()];
    for x in 1..=g.n() {
        let rot = g.rotation(x);
        match boundary_demand(x, sets) {
            None => {
                if !rot.is_empty() {
                    return None;
                }
            }
            Some((c, col)) => {
                if rot.len() != 1 || g.color(x) != c {
                    return None;
                }
                let e = rot[0];
                if color[e].is_some_and(|old| old != col) {
                    return None;
                }
                color[e] = Some(col);
            }
        }
    }
    Some(color)
}

/// Number of edge colorings of `w` by three colors compatible with
/// `P_I P_J P_K`: the three edges at each interior vertex get distinct
/// colors and boundary edges get the colors dictated by the triple.
pub fn coloring_count(w: &Web, i: &KSubset, j: &KSubset, k: &KSubset) -> u64 {
    let sets = [i, j, k];
    let Some(mut color) = forced_colors(w, sets) else { return 0 };
    let g = w.map();
    // order free edges by a breadth-first sweep from the boundary
    let mut order = Vec::new();
    let mut placed = vec![false; g.edges().len()];
    let mut queue: std::collections::VecDeque<usize> = (1..=g.n()).collect();
    let mut visited = vec![false; g.vertex_count() + 1];
    while let Some(v) = queue.pop_front() {
        if visited[v] {
            continue;
        }
        visited[v] = true;
        for &e in g.rotation(v) {
            if !placed[e] {
                placed[e] = true;
                if color[e].is_none() {
                    order.push(e);
                }
            }
            queue.push_back(g.edge(e).other(v));
        }
    }
    for (e, p) in placed.iter().enumerate() {
        if !p && color[e].is_none() {
            order.push(e);
        }
    }
    let ok_at = |color: &[Option<u8>], v: usize| -> bool {
        if g.is_boundary(v) {
            return true;
        }
        let mut seen = [false; 3];
        for &e in g.rotation(v) {
            if let Some(c) = color[e] {
                if seen[c as usize] {
                    return false;
                }
                seen[c as usize] = true;
            }
        }
        true
    };
    if !(1..=g.vertex_count()).all(|v| ok_at(&color, v)) {
        return 0;
    }
    fn rec(idx: usize, order: &[usize], color: &mut Vec<Option<u8>>, check: &dyn Fn(&[Option<u8>], usize) -> bool, ends: &dyn Fn(usize) -> (usize, usize)) -> u64 {
        if idx == order.len() {
            return 1;
        }
        let e = order[idx];
        let (u, v) = ends(e);
        let mut total = 0;
        for c in 0..3 {
            color[e] = Some(c);
            if check(color, u) && check(color, v) {
                total += rec(idx + 1, order, color, check, ends);
            }
        }
        color[e] = None;
        total
    }
    let ends = |e: usize| (g.edge(e).u, g.edge(e).v);
    rec(0, &order, &mut color, &ok_at, &ends) * 3u64.pow(w.loops() as u32)
}

/// Brute-force count over all `3^E` colorings; the reference for
/// `coloring_count`.
pub fn coloring_count_brute(w: &Web, i: &KSubset, j: &KSubset, k: &KSubset) -> u64 {
    let g = w.map();
    let sets = [i, j, k];
    for x in 1..=g.n() {
        let demand = boundary_demand(x, sets);
        let rot = g.rotation(x);
        match demand {
            None if !rot.is_empty() => return 0,
            Some((c, _)) if rot.len() != 1 || g.color(x) != c => return 0,
            _ => {}
        }
    }
    let e_count = g.edges().len();
    let mut count = 0;
    let mut colors = vec![0u8; e_count];
    'outer: for code in 0..3u64.pow(e_count as u32) {
        let mut c = code;
        for slot in colors.iter_mut() {
            *slot = (c % 3) as u8;
            c /= 3;
        }
        for x in 1..=g.n() {
            if let Some((_, col)) = boundary_demand(x, sets) {
                if colors[g.rotation(x)[0]] != col {
                    continue 'outer;
                }
            }
        }
        for v in g.interior_ids() {
            let r = g.rotation(v);
            let mut seen = [false; 3];
            for &e in r {
                if seen[colors[e] as usize] {
                    continue 'outer;
                }
                seen[colors[e] as usize] = true;
            }
        }
        count += 1;
    }
    count * 3u64.pow(w.loops() as u32)
}

/// Labeled webs of a universe grouped by their boundary color pattern.
#[derive(Debug, Clone, Default)]
pub struct WebUniverse {
    by_pattern: BTreeMap<Vec<Option<Color>>, Vec<Web>>,
}

impl WebUniverse {
    /// All dihedral translates of the given class representatives.
    pub fn from_classes<'a>(classes: impl IntoIterator<Item = &'a Web>) -> WebUniverse {
        let mut seen: BTreeMap<CanonicalCode, Web> = BTreeMap::new();
        for w in classes {
            for g in Dihedral::all(w.n()) {
                let t = w.relabel(g);
                seen.entry(t.labeled_code()).or_insert(t);
            }
        }
        let mut by_pattern: BTreeMap<Vec<Option<Color>>, Vec<Web>> = BTreeMap::new();
        for w in seen.into_values() {
            let pat = (1..=w.n()).map(|x| (!w.map().rotation(x).is_empty()).then(|| w.map().color(x))).collect();
            by_pattern.entry(pat).or_default().push(w);
        }
        WebUniverse { by_pattern }
    }

    /// Every non-elliptic web on the boundary pattern of `lambda`: label `i`
    /// is black when `lambda[i-1] = 1` and white when it is 2.
    pub fn for_boundary(lambda: &[usize], max_interior: usize) -> Result<WebUniverse> {
        let colors: Vec<Color> = lambda
            .iter()
            .map(|&l| match l {
                1 => Ok(Color::Black),
                2 => Ok(Color::White),
                _ => Err(Error::Polynomial(format!("boundary condition {lambda:?} has an entry outside 1..=2"))),
            })
            .collect::<Result<_>>()?;
        let webs = crate::webs::enumerate_labeled(&colors, max_interior);
        let pattern = colors.into_iter().map(Some).collect();
        Ok(WebUniverse { by_pattern: BTreeMap::from([(pattern, webs)]) })
    }

    pub fn webs_with(&self, pattern: &[Option<Color>]) -> &[Web] {
        self.by_pattern.get(pattern).map_or(&[], |v| v.as_slice())
    }

    pub fn len(&self) -> usize {
        self.by_pattern.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Webs of the universe with multiplicity `a(I, J, K; W)` for one term.
pub fn compatible_multiset(term: &PluckerMonomial, universe: &WebUniverse) -> Result<SignedWebSum> {
    let [i, j, k] = three_factors(term)?;
    let pattern = boundary_pattern(i, j, k);
    let mut out = SignedWebSum::new();
    for w in universe.webs_with(&pattern) {
        let a = coloring_count(w, i, j, k);
        if a > 0 {
            out.add(w.clone(), a as i64);
        }
    }
    Ok(out)
}

/// Signed sum over the terms of their compatible multisets.
pub fn dual_web(p: &PluckerPolynomial, universe: &WebUniverse) -> Result<SignedWebSum> {
    p.boundary_condition()?;
    let parts: Vec<(i64, SignedWebSum)> = p.terms.par_iter().map(|t| compatible_multiset(t, universe).map(|s| (t.sign, s))).collect::<Result<_>>()?;
    let mut out = SignedWebSum::new();
    for (sign, s) in parts {
        out.add_sum(&s, sign);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar_map::build::star;

    fn ks(n: usize, s: &str) -> KSubset {
        KSubset::new(n, s.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()).unwrap()
    }

    #[test]
    fn matching_examples() {
        let m = Matching::new(8, vec![(2, 7), (3, 4), (5, 6)], vec![1]).unwrap();
        assert!(matching_compatible(&m, &ks(8, "1235"), &ks(8, "1467")));
        let bad = Matching::new(8, vec![(2, 3), (4, 7), (5, 6)], vec![1]).unwrap();
        assert!(!matching_compatible(&bad, &ks(8, "1235"), &ks(8, "1467")));
        let i = ks(8, "1234");
        let iso = Matching::new(8, vec![], vec![1, 2, 3, 4]).unwrap();
        assert!(matching_compatible(&iso, &i, &i));
        assert_eq!(compatible_matchings(&i, &i), vec![iso]);
    }

    #[test]
    fn quadratic_duals() {
        let p = PluckerPolynomial::parse("+P[1235]P[1467] -P[1234]P[1567]", 8).unwrap();
        let d = dual_matching(&p).unwrap();
        let expected = Matching::new(8, vec![(2, 7), (3, 4), (5, 6)], vec![1]).unwrap();
        assert_eq!(d.terms.into_iter().collect::<Vec<_>>(), vec![(expected, 1)]);
        let single = PluckerPolynomial::parse("+P[1234]P[1234]", 8).unwrap();
        let d = dual_matching(&single).unwrap();
        assert_eq!(d.terms.len(), 1);
        assert!(d.terms.keys().all(|m| m.pairs.is_empty()));
    }

    #[test]
    fn compatible_matchings_are_non_crossing_and_compatible() {
        let (i, j) = (ks(8, "1357"), ks(8, "2468"));
        let ms = compatible_matchings(&i, &j);
        assert_eq!(ms.len(), 14);
        assert!(ms.iter().all(|m| m.is_non_crossing() && matching_compatible(m, &i, &j)));
    }

    #[test]
    fn tripod_coloring() {
        let w = Web::new(star(3, &[1, 2, 3], Color::White)).unwrap();
        let (i, j, k) = (ks(3, "1"), ks(3, "2"), ks(3, "3"));
        assert_eq!(coloring_count(&w, &i, &j, &k), 1);
        assert_eq!(coloring_count_brute(&w, &i, &j, &k), 1);
        assert_eq!(coloring_count(&w, &i, &i, &k), 0);
        assert_eq!(coloring_count(&Web::new(star(3, &[1, 2, 3], Color::White)).unwrap(), &ks(3, "1"), &ks(3, "3"), &ks(3, "2")), 1);
    }
}
