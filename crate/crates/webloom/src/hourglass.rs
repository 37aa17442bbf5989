//! Hourglass plabic graphs: validation, strand-level trip permutations, the
//! tableau read off from anti-exceedance sets, and the benzene, square and
//! contraction moves.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perms::Permutation;
use crate::planar_map::{CanonicalCode, Color, CombMap, MapEditor};
use crate::tableaux::{RectTableau, TableauKind};

/// Degree of every interior vertex, counted with multiplicity.
pub const INTERIOR_DEGREE: usize = 4;

/// A validated hourglass plabic graph. Boundary vertices may carry any
/// number of strands (a boundary vertex with `k` strands stands for `k`
/// consecutive labels of the split boundary), including none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HourglassGraph {
    map: CombMap,
}

impl HourglassGraph {
    /// Check interior degrees, bipartiteness of interior edges, and that no
    /// edge joins two boundary vertices.
    pub fn validate(map: CombMap) -> Result<Self> {
        let mut problems = vec![];
        for id in map.interior_ids() {
            let d = map.degree(id);
            if d != INTERIOR_DEGREE {
                problems.push(format!("interior vertex {id} has degree {d}, expected {INTERIOR_DEGREE}"));
            }
        }
        for (k, e) in map.edges().iter().enumerate() {
            let (bu, bv) = (map.is_boundary(e.u), map.is_boundary(e.v));
            if bu && bv {
                problems.push(format!("edge {k} joins boundary vertices {} and {}", e.u, e.v));
            } else if !bu && !bv && map.color(e.u) == map.color(e.v) {
                problems.push(format!("edge {k} joins vertices {} and {} of the same color", e.u, e.v));
            }
        }
        if problems.is_empty() {
            Ok(HourglassGraph { map })
        } else {
            Err(Error::Hourglass(problems.join("; ")))
        }
    }

    /// Validate and additionally require every boundary vertex to have a
    /// single simple edge.
    pub fn validate_strict(map: CombMap) -> Result<Self> {
        let g = HourglassGraph::validate(map)?;
        if let Some(b) = (1..=g.map.n()).find(|&b| g.map.degree(b) != 1) {
            return Err(Error::Hourglass(format!("boundary vertex {b} has degree {}, expected 1", g.map.degree(b))));
        }
        Ok(g)
    }

    pub fn map(&self) -> &CombMap {
        &self.map
    }

    pub fn into_map(self) -> CombMap {
        self.map
    }

    /// Strand counts of boundary vertices (the boundary condition).
    pub fn boundary_content(&self) -> Vec<usize> {
        (1..=self.map.n()).map(|b| self.map.degree(b)).collect()
    }

    /// Number of split boundary labels.
    pub fn label_count(&self) -> usize {
        self.boundary_content().iter().sum()
    }

    /// Strand slots `(edge, strand)` of a vertex in clockwise order. The
    /// strands of an interior hourglass edge keep the same clockwise order at
    /// both ends. A multiple edge at a boundary vertex is a bundle of split
    /// boundary strands merged without a twist, so its order is reversed at
    /// the boundary end.
    fn slots(&self, id: usize) -> Vec<(usize, usize)> {
        let boundary = self.map.is_boundary(id);
        self.map
            .rotation(id)
            .iter()
            .flat_map(|&k| {
                let m = self.map.edge(k).m;
                (0..m).map(move |s| (k, if boundary { m - 1 - s } else { s }))
            })
            .collect()
    }

    /// Split label of slot `j` at boundary vertex `b`: the first clockwise
    /// strand gets the largest label of the vertex.
    fn label_of(&self, b: usize, j: usize, base: &[usize]) -> usize {
        base[b - 1] + self.map.degree(b) - 1 - j
    }

    /// The `i`-th trip permutation on split labels `1..=label_count()`:
    /// at a white vertex the walk leaves on the `i`-th strand clockwise
    /// after the arriving one, at a black vertex the `i`-th counterclockwise.
    pub fn trip_perm(&self, i: usize) -> Result<Permutation> {
        let g = &self.map;
        let n = g.n();
        let mut base = vec![1; n];
        for b in 1..n {
            base[b] = base[b - 1] + g.degree(b);
        }
        let total = self.label_count();
        let slots: Vec<Vec<(usize, usize)>> = (1..=g.vertex_count()).map(|id| self.slots(id)).collect();
        let limit = 4 * g.edges().iter().map(|e| e.m).sum::<usize>() + 4;
        let mut image = vec![0; total];
        for b in 1..=n {
            for (j, &(k0, s0)) in slots[b - 1].iter().enumerate() {
                let start = self.label_of(b, j, &base);
                let (mut x, mut strand) = (b, (k0, s0));
                let mut steps = 0;
                loop {
                    let y = g.edge(strand.0).other(x);
                    let ys = &slots[y - 1];
                    let p = ys.iter().position(|&t| t == strand).expect("strand present at both ends");
                    if g.is_boundary(y) {
                        image[start - 1] = self.label_of(y, p, &base);
                        break;
                    }
                    let d = ys.len();
                    let q = match g.color(y) {
                        Color::White => (p + i) % d,
                        Color::Black => (p + d - i % d) % d,
                    };
                    strand = ys[q];
                    x = y;
                    steps += 1;
                    if steps > limit {
                        return Err(Error::TripWalk(start));
                    }
                }
            }
        }
        Permutation::new(image)
    }

    /// All three trip permutations.
    pub fn trip_perms(&self) -> Result<Vec<Permutation>> {
        (1..INTERIOR_DEGREE).map(|i| self.trip_perm(i)).collect()
    }

    /// The standard tableau whose first `i` rows hold `Aexc(trip_i)`.
    pub fn standard_tableau(&self) -> Result<RectTableau> {
        let total = self.label_count();
        if !total.is_multiple_of(INTERIOR_DEGREE) {
            return Err(Error::NotGraded(format!("{total} labels is not a multiple of {INTERIOR_DEGREE}")));
        }
        let b = total / INTERIOR_DEGREE;
        let mut rows = vec![];
        let mut prev = std::collections::BTreeSet::new();
        for (i, p) in self.trip_perms()?.iter().enumerate() {
            if !p.fixed_points().is_empty() {
                return Err(Error::NotGraded(format!("trip {} has fixed points {:?}", i + 1, p.fixed_points())));
            }
            let a = p.aexc();
            if a.len() != (i + 1) * b || !prev.is_subset(&a) {
                return Err(Error::NotGraded(format!("Aexc of trip {} is {:?}", i + 1, a)));
            }
            rows.push(a.difference(&prev).copied().collect::<Vec<_>>());
            prev = a;
        }
        rows.push((1..=total).filter(|x| !prev.contains(x)).collect());
        RectTableau::new(rows, TableauKind::Standard).map_err(|e| Error::NotGraded(e.to_string()))
    }

    /// The tableau of the graph: the standard tableau destandardized by the
    /// boundary content when some boundary vertex has several strands.
    pub fn tableau_of(&self) -> Result<RectTableau> {
        let t = self.standard_tableau()?;
        let content = self.boundary_content();
        if content.iter().all(|&c| c == 1) {
            Ok(t)
        } else {
            t.destandardize(&content).map_err(|e| Error::NotGraded(e.to_string()))
        }
    }

    /// Relabel boundary by `i -> i - k`.
    pub fn rotate(&self, k: usize) -> HourglassGraph {
        HourglassGraph { map: self.map.rotate(k) }
    }

    /// Relabel boundary by `i -> n + 1 - i`.
    pub fn reflect(&self) -> HourglassGraph {
        HourglassGraph { map: self.map.reflect() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    Benzene,
    Square,
    Contraction,
}

/// Where a move applies: the cycle vertices of a face move in walk order,
/// the bivalent middle vertex of a three-vertex contraction, or the two
/// bivalent vertices of a path contraction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Site {
    pub kind: MoveKind,
    pub vertices: Vec<usize>,
}

fn interior_face_cycles(g: &CombMap, len: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = vec![];
    for f in g.interior_faces() {
        if f.darts.len() != len {
            continue;
        }
        let vs: Vec<usize> = f.vertices();
        let mut uniq = vs.clone();
        uniq.sort_unstable();
        uniq.dedup();
        if uniq.len() != len || vs.iter().any(|&v| g.is_boundary(v)) {
            continue;
        }
        out.push((vs, f.darts.iter().map(|d| d.edge).collect()));
    }
    out
}

fn benzene_sites(g: &CombMap) -> Vec<Site> {
    interior_face_cycles(g, 6)
        .into_iter()
        .filter(|(_, es)| {
            let ms: Vec<usize> = es.iter().map(|&k| g.edge(k).m).collect();
            (ms.iter().step_by(2).all(|&m| m == 2) && ms.iter().skip(1).step_by(2).all(|&m| m == 1))
                || (ms.iter().step_by(2).all(|&m| m == 1) && ms.iter().skip(1).step_by(2).all(|&m| m == 2))
        })
        .map(|(vs, _)| Site { kind: MoveKind::Benzene, vertices: vs })
        .collect()
}

/// The single outward edge of a square corner when it is an hourglass edge
/// to an interior vertex off the square.
fn hourglass_partner(g: &CombMap, x: usize, square: &[usize]) -> Option<(usize, usize)> {
    let out: Vec<usize> = g.rotation(x).iter().copied().filter(|&k| !square.contains(&g.edge(k).other(x))).collect();
    if out.len() == 1 && g.edge(out[0]).m == 2 {
        let o = g.edge(out[0]).other(x);
        if !g.is_boundary(o) {
            return Some((out[0], o));
        }
    }
    None
}

fn square_sites(g: &CombMap) -> Vec<Site> {
    interior_face_cycles(g, 4)
        .into_iter()
        .filter(|(vs, es)| {
            if es.iter().any(|&k| g.edge(k).m != 1) {
                return false;
            }
            let partners: Vec<usize> = vs.iter().filter_map(|&x| hourglass_partner(g, x, vs).map(|p| p.1)).collect();
            let mut u = partners.clone();
            u.sort_unstable();
            u.dedup();
            u.len() == partners.len()
        })
        .map(|(vs, _)| Site { kind: MoveKind::Square, vertices: vs })
        .collect()
}

fn contraction_sites(g: &CombMap) -> Vec<Site> {
    let mut out = vec![];
    for x in g.interior_ids() {
        let r = g.rotation(x);
        if r.len() != 2 {
            continue;
        }
        let (y, z) = (g.edge(r[0]).other(x), g.edge(r[1]).other(x));
        if y != z && !g.is_boundary(y) && !g.is_boundary(z) && g.edges_between(y, z).is_empty() {
            out.push(Site { kind: MoveKind::Contraction, vertices: vec![x] });
        }
        for &k in r {
            let y = g.edge(k).other(x);
            if y > x && !g.is_boundary(y) && g.rotation(y).len() == 2 {
                let p = g.edge(r.iter().copied().find(|&q| q != k).expect("two edges")).other(x);
                let ky = g.rotation(y).iter().copied().find(|&q| q != k).expect("two edges");
                let q = g.edge(ky).other(y);
                let mp = g.edge(r.iter().copied().find(|&q2| q2 != k).unwrap()).m;
                if p != q && g.edge(ky).m == mp && g.edge(k).m + mp == INTERIOR_DEGREE {
                    out.push(Site { kind: MoveKind::Contraction, vertices: vec![x, y] });
                }
            }
        }
    }
    out
}

/// Every site at which some move applies.
pub fn find_sites(g: &HourglassGraph) -> Vec<Site> {
    let m = &g.map;
    let mut s = benzene_sites(m);
    s.extend(square_sites(m));
    s.extend(contraction_sites(m));
    s
}

/// Apply a move at a site; the result is re-validated.
pub fn apply_move(g: &HourglassGraph, site: &Site) -> Result<HourglassGraph> {
    let m = &g.map;
    let candidates = match site.kind {
        MoveKind::Benzene => benzene_sites(m),
        MoveKind::Square => square_sites(m),
        MoveKind::Contraction => contraction_sites(m),
    };
    let same_cycle = |a: &[usize], b: &[usize]| a.len() == b.len() && (0..a.len()).any(|r| (0..a.len()).all(|t| a[(t + r) % a.len()] == b[t]));
    let matched = candidates.into_iter().find(|c| if site.kind == MoveKind::Contraction { c.vertices == site.vertices } else { same_cycle(&c.vertices, &site.vertices) });
    let site = matched.ok_or_else(|| Error::NoMatch(format!("{:?} at {:?}", site.kind, site.vertices)))?;
    let mut ed = MapEditor::from_map(m);
    match site.kind {
        MoveKind::Benzene => {
            let vs = &site.vertices;
            for t in 0..vs.len() {
                let k = m.edges_between(vs[t], vs[(t + 1) % vs.len()])[0];
                let e = ed.edges[k].as_mut().expect("live");
                e.m = 3 - e.m;
            }
        }
        MoveKind::Square => {
            let vs = site.vertices.clone();
            for &x in &vs {
                match hourglass_partner(m, x, &vs) {
                    Some((h, o)) => contract_edge(&mut ed, h, x, o),
                    None => expand_corner(&mut ed, m, x, &vs),
                }
            }
        }
        MoveKind::Contraction => {
            if site.vertices.len() == 1 {
                let x = site.vertices[0];
                let r = m.rotation(x).to_vec();
                let (y, z) = (m.edge(r[0]).other(x), m.edge(r[1]).other(x));
                contract_edge(&mut ed, r[0], x, y);
                // x is now merged into y; the remaining edge joins y and z.
                contract_edge(&mut ed, r[1], z, y);
            } else {
                let (x, y) = (site.vertices[0], site.vertices[1]);
                let k = m.edges_between(x, y)[0];
                let kx = m.rotation(x).iter().copied().find(|&q| q != k).expect("two edges");
                let ky = m.rotation(y).iter().copied().find(|&q| q != k).expect("two edges");
                let (p, q) = (m.edge(kx).other(x), m.edge(ky).other(y));
                let mult = m.edge(kx).m;
                let new = ed.add_edge(p, q, mult);
                for (end, old) in [(p, kx), (q, ky)] {
                    let r = &mut ed.rotation[end - 1];
                    let pos = r.iter().position(|&t| t == old).expect("incident");
                    r[pos] = new;
                }
                ed.remove_vertex(x);
                ed.remove_vertex(y);
            }
        }
    }
    HourglassGraph::validate(ed.finish()?)
}

/// Merge vertex `x` into `o` along edge `h`; `o` keeps its color and
/// inherits `x`'s other edges in `x`'s cyclic order.
fn contract_edge(ed: &mut MapEditor, h: usize, x: usize, o: usize) {
    let from_x: Vec<usize> = ed.rotation_from(x, h).into_iter().skip(1).collect();
    for &k in &from_x {
        ed.move_endpoint(k, x, o);
    }
    let ro = ed.rotation_from(o, h);
    let mut new_rot = from_x;
    new_rot.extend(ro.into_iter().skip(1));
    ed.rotation[o - 1] = new_rot;
    ed.rotation[x - 1].clear();
    ed.edges[h] = None;
    ed.vertices[x - 1] = None;
}

/// Replace square corner `x` by a new corner of the opposite color joined
/// to `x` by an hourglass edge; `x` keeps its outward edges.
fn expand_corner(ed: &mut MapEditor, m: &CombMap, x: usize, square: &[usize]) {
    let r = ed.rotation[x - 1].clone();
    let on_square = |k: usize| square.contains(&m.edge(k).other(x));
    let len = r.len();
    let first = (0..len).find(|&p| on_square(r[p]) && on_square(r[(p + 1) % len]) && !on_square(r[(p + len - 1) % len])).expect("square edges are consecutive");
    let (sa, sb) = (r[first], r[(first + 1) % len]);
    let rest: Vec<usize> = (2..len).map(|t| r[(first + t) % len]).collect();
    let c = ed.color(x).flip();
    let x2 = ed.add_vertex(c);
    let h = ed.add_edge(x2, x, 2);
    ed.move_endpoint(sa, x, x2);
    ed.move_endpoint(sb, x, x2);
    ed.rotation[x2 - 1] = vec![sa, sb, h];
    let mut rx = vec![h];
    rx.extend(rest);
    ed.rotation[x - 1] = rx;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    Unknown,
}

/// Breadth-first search over move applications up to `depth` steps.
pub fn equivalent_bounded(g1: &HourglassGraph, g2: &HourglassGraph, depth: usize) -> Equivalence {
    if g1.map.n() != g2.map.n() {
        return Equivalence::Unknown;
    }
    let target = g2.map.labeled_code();
    let mut seen: HashSet<CanonicalCode> = HashSet::from([g1.map.labeled_code()]);
    if seen.contains(&target) {
        return Equivalence::Equivalent;
    }
    let mut frontier = vec![g1.clone()];
    for _ in 0..depth {
        let next: Vec<(CanonicalCode, HourglassGraph)> = frontier
            .par_iter()
            .flat_map_iter(|g| find_sites(g).into_iter().filter_map(move |s| apply_move(g, &s).ok()).map(|h| (h.map.labeled_code(), h)))
            .collect();
        let mut fresh = vec![];
        for (code, h) in next {
            if code == target {
                return Equivalence::Equivalent;
            }
            if seen.insert(code) {
                fresh.push(h);
            }
        }
        frontier = fresh;
    }
    Equivalence::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar_map::build::star;

    fn load_hourglass(id: &str) -> HourglassGraph {
        let path = format!("{}/../../data/catalog/{id}.json", env!("CARGO_MANIFEST_DIR"));
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        HourglassGraph::validate(serde_json::from_value(v["hourglass"].clone()).unwrap()).unwrap()
    }

    fn catalog_tableau(id: &str) -> RectTableau {
        let path = format!("{}/../../data/catalog/{id}.json", env!("CARGO_MANIFEST_DIR"));
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        serde_json::from_value(v["tableau"].clone()).unwrap()
    }

    fn ids() -> Vec<String> {
        let mut v: Vec<String> = (1..=3).map(|i| format!("q{i}")).collect();
        v.extend((1..=14).map(|i| format!("c{i}")));
        v
    }

    #[test]
    fn figure_trips() {
        let g = load_hourglass("q3");
        assert_eq!(g.trip_perm(1).unwrap().apply(7), 8);
        assert_eq!(g.trip_perm(2).unwrap().apply(7), 2);
        assert_eq!(g.trip_perm(3).unwrap().apply(7), 3);
        let t: Vec<String> = g.trip_perms().unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(t, ["23756184", "37168425", "61284537"]);
        assert_eq!(g.tableau_of().unwrap(), RectTableau::parse_short("14,25,37,68").unwrap());
    }

    #[test]
    fn rotation_promotes_tableau() {
        let g = load_hourglass("q3");
        let t = g.tableau_of().unwrap();
        assert_eq!(g.rotate(1).tableau_of().unwrap(), t.promotion().unwrap());
        assert_eq!(g.reflect().tableau_of().unwrap(), t.evacuation().unwrap());
    }

    #[test]
    fn catalog_trips_match_promotion_permutations() {
        let mut bundled = Vec::new();
        for id in ids() {
            let g = load_hourglass(&id);
            let t = catalog_tableau(&id);
            let trips = g.trip_perms().unwrap();
            assert_eq!(trips[0].inverse(), trips[2], "{id}");
            assert_eq!(g.tableau_of().unwrap(), t, "{id}");
            let boundary_bundle = g.map().edges().iter().any(|e| e.m > 1 && (g.map().is_boundary(e.u) || g.map().is_boundary(e.v)));
            if boundary_bundle {
                bundled.push(id);
            } else {
                assert_eq!(trips, t.standardize().prom_perms().unwrap(), "{id}");
            }
        }
        assert_eq!(bundled, ["c5", "c6", "c8", "c9", "c11", "c12"]);
    }

    #[test]
    fn validation_errors() {
        let tripod = star(3, &[1, 2, 3], Color::White);
        let err = HourglassGraph::validate(tripod).unwrap_err();
        assert!(err.to_string().contains("interior vertex 4 has degree 3"));
        let claw = star(4, &[1, 2, 3, 4], Color::White);
        assert!(HourglassGraph::validate_strict(claw.clone()).is_ok());
        let mut ed = MapEditor::from_map(&claw);
        ed.set_color(5, Color::White);
        let w2 = ed.add_vertex(Color::White);
        let k = ed.add_edge(5, w2, 1);
        ed.rotation[4].push(k);
        ed.rotation[w2 - 1].push(k);
        let err = HourglassGraph::validate(ed.finish().unwrap()).unwrap_err();
        assert!(err.to_string().contains("same color"));
    }

    #[test]
    fn moves_preserve_trips_and_invert() {
        let mut applied = [0usize; 3];
        for id in ids() {
            let g = load_hourglass(&id);
            let trips = g.trip_perms().unwrap();
            for s in find_sites(&g) {
                let h = apply_move(&g, &s).unwrap();
                assert_eq!(h.trip_perms().unwrap(), trips, "{id} {s:?}");
                if s.kind != MoveKind::Contraction {
                    let back = find_sites(&h).into_iter().filter(|t| t.kind == s.kind).any(|t| apply_move(&h, &t).map(|b| b.map.labeled_code() == g.map.labeled_code()).unwrap_or(false));
                    assert!(back, "{id} {s:?} not undone");
                }
                applied[match s.kind {
                    MoveKind::Benzene => 0,
                    MoveKind::Square => 1,
                    MoveKind::Contraction => 2,
                }] += 1;
            }
        }
        assert!(applied[1] > 0, "no square move site in the catalog: {applied:?}");
    }

    #[test]
    fn equivalence_search() {
        let g = load_hourglass("c8");
        assert_eq!(equivalent_bounded(&g, &g, 0), Equivalence::Equivalent);
        for s in find_sites(&g) {
            let h = apply_move(&g, &s).unwrap();
            assert_eq!(equivalent_bounded(&g, &h, 1), Equivalence::Equivalent);
        }
        let other = load_hourglass("c9");
        assert_eq!(equivalent_bounded(&g, &other, 2), Equivalence::Unknown);
    }
}
