//! sl3 webs: validation, the non-elliptic predicate, skein reduction,
//! exhaustive enumeration of webs with black boundary, sink contraction and
//! classification of 4-black/4-white boundary arrangements.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::planar_map::{CanonicalCode, Color, CombMap, Dihedral, MapEditor, Vertex};

/// A web in the disk: trivalent properly bicolored interior, boundary
/// vertices of degree at most one, boundary-to-boundary edges (arrows) from a
/// black to a white boundary vertex, and a count of vertexless closed loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Web {
    map: CombMap,
    loops: usize,
}

impl Web {
    pub fn new(map: CombMap) -> Result<Web> {
        Web::with_loops(map, 0)
    }

    pub fn with_loops(map: CombMap, loops: usize) -> Result<Web> {
        for e in map.edges() {
            if e.m != 1 {
                return Err(Error::Web(format!("edge {}-{} has multiplicity {}", e.u, e.v, e.m)));
            }
            if map.color(e.u) == map.color(e.v) {
                return Err(Error::Web(format!("edge {}-{} joins two vertices of the same color", e.u, e.v)));
            }
        }
        for v in map.vertices() {
            let d = map.rotation(v.id).len();
            if v.boundary && d > 1 {
                return Err(Error::Web(format!("boundary vertex {} has degree {d}", v.id)));
            }
            if !v.boundary && d != 3 {
                return Err(Error::Web(format!("interior vertex {} has degree {d}", v.id)));
            }
        }
        Ok(Web { map, loops })
    }

    pub fn map(&self) -> &CombMap {
        &self.map
    }

    pub fn into_map(self) -> CombMap {
        self.map
    }

    pub fn loops(&self) -> usize {
        self.loops
    }

    pub fn n(&self) -> usize {
        self.map.n()
    }

    /// Boundary-to-boundary edges as `(black, white)` pairs.
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        let g = &self.map;
        g.edges()
            .iter()
            .filter(|e| g.is_boundary(e.u) && g.is_boundary(e.v))
            .map(|e| if g.color(e.u) == Color::Black { (e.u, e.v) } else { (e.v, e.u) })
            .collect()
    }

    pub fn interior_count(&self) -> usize {
        self.map.vertex_count() - self.map.n()
    }

    /// `(white, black)` interior vertex counts.
    pub fn interior_colors(&self) -> (usize, usize) {
        let white = self.map.interior_ids().filter(|&v| self.map.color(v) == Color::White).count();
        (white, self.interior_count() - white)
    }

    /// `(c, m)`: independent cycles and connected components.
    pub fn cycles_and_components(&self) -> (usize, usize) {
        let (m, c) = self.map.components_and_cycles();
        (c, m)
    }

    /// Boundary colors in label order.
    pub fn boundary_colors(&self) -> Vec<Color> {
        (1..=self.n()).map(|i| self.map.color(i)).collect()
    }

    /// No closed loops and no interior face with four or fewer sides.
    pub fn is_non_elliptic(&self) -> bool {
        self.loops == 0 && self.map.interior_faces().iter().all(|f| f.side_count() > 4)
    }

    pub fn labeled_code(&self) -> CanonicalCode {
        self.map.labeled_code()
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        self.map.canonical_code()
    }

    pub fn relabel(&self, g: Dihedral) -> Web {
        Web { map: self.map.relabel(g), loops: self.loops }
    }
}

/// Integer combination of webs keyed by their labeled code.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SignedWebSum {
    terms: BTreeMap<CanonicalCode, (i64, Web)>,
}

impl SignedWebSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(w: Web, coeff: i64) -> Self {
        let mut s = Self::new();
        s.add(w, coeff);
        s
    }

    /// Add `coeff * w`, dropping the term if it cancels.
    pub fn add(&mut self, w: Web, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let code = w.labeled_code();
        let entry = self.terms.entry(code.clone()).or_insert((0, w));
        entry.0 += coeff;
        if entry.0 == 0 {
            self.terms.remove(&code);
        }
    }

    pub fn add_sum(&mut self, other: &SignedWebSum, scale: i64) {
        for (c, w) in other.terms.values() {
            self.add(w.clone(), c * scale);
        }
    }

    pub fn coefficient(&self, code: &CanonicalCode) -> i64 {
        self.terms.get(code).map_or(0, |t| t.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CanonicalCode, i64, &Web)> {
        self.terms.iter().map(|(k, (c, w))| (k, *c, w))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of the coefficients.
    pub fn mass(&self) -> i64 {
        self.terms.values().map(|t| t.0).sum()
    }

    pub fn negated(&self) -> SignedWebSum {
        let mut s = SignedWebSum::new();
        s.add_sum(self, -1);
        s
    }
}

/// Which reducible face skein reduction rewrites first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionOrder {
    First,
    Last,
}

/// Reduce to a nonnegative combination of non-elliptic webs.
pub fn skein_reduce(w: &Web) -> SignedWebSum {
    skein_reduce_with(w, ReductionOrder::First)
}

/// Skein reduction: a closed loop is the scalar 3, a bigon is twice the
/// edge it collapses to, and a square is the sum of its two smoothings.
/// Bigons are removed before squares.
pub fn skein_reduce_with(w: &Web, order: ReductionOrder) -> SignedWebSum {
    let mut out = SignedWebSum::new();
    let mut work: Vec<(Web, i64)> = vec![(w.clone(), 1)];
    while let Some((web, coeff)) = work.pop() {
        let coeff = coeff * 3i64.pow(web.loops as u32);
        let web = Web { map: web.map, loops: 0 };
        let faces = web.map.interior_faces();
        let pick = |size: usize| {
            let mut it = faces.iter().filter(move |f| f.side_count() == size);
            match order {
                ReductionOrder::First => it.next(),
                ReductionOrder::Last => it.next_back(),
            }
            .cloned()
        };
        if let Some(f) = pick(2) {
            let (next, factor) = collapse_bigon(&web, f.vertices()[0], f.vertices()[1]);
            work.push((next, coeff * factor));
        } else if let Some(f) = pick(4) {
            let vs = f.vertices();
            for pairing in [0, 1] {
                work.push((smooth_square(&web, &vs, pairing), coeff));
            }
        } else {
            out.add(web, coeff);
        }
    }
    out
}

fn third_edge(g: &CombMap, x: usize, other: usize) -> usize {
    *g.rotation(x).iter().find(|&&k| g.edge(k).other(x) != other).expect("trivalent vertex leaves the bigon")
}

/// Remove a bigon `x = y`; returns the reduced web and the scalar factor.
fn collapse_bigon(w: &Web, x: usize, y: usize) -> (Web, i64) {
    let g = &w.map;
    let mut ed = MapEditor::from_map(g);
    let theta = g.rotation(x).iter().all(|&k| g.edge(k).other(x) == y);
    if theta {
        ed.remove_vertex(x);
        ed.remove_vertex(y);
        let map = ed.finish().expect("theta removal keeps the map valid");
        return (Web { map, loops: 0 }, 6);
    }
    let ex = third_edge(g, x, y);
    let ey = third_edge(g, y, x);
    let q = g.edge(ey).other(y);
    ed.rotation[q - 1].iter_mut().for_each(|k| {
        if *k == ey {
            *k = ex;
        }
    });
    ed.remove_edge(ey);
    ed.move_endpoint(ex, x, q);
    ed.rotation[x - 1].retain(|&k| k != ex);
    ed.remove_vertex(x);
    ed.remove_vertex(y);
    let map = ed.finish().expect("bigon collapse keeps the map valid");
    (Web { map, loops: 0 }, 2)
}

/// Replace the square on `vs` (in face order) by one of its smoothings:
/// pairing 0 joins the outer ends at `vs[0], vs[1]` and `vs[2], vs[3]`,
/// pairing 1 joins `vs[1], vs[2]` and `vs[3], vs[0]`.
fn smooth_square(w: &Web, vs: &[usize], pairing: usize) -> Web {
    let g = &w.map;
    let mut ed = MapEditor::from_map(g);
    let outer: Vec<usize> = vs
        .iter()
        .map(|&v| *g.rotation(v).iter().find(|&&k| !vs.contains(&g.edge(k).other(v))).expect("square vertex has an outer edge"))
        .collect();
    let mut loops = 0;
    for t in 0..2 {
        let i = (2 * t + pairing) % 4;
        let j = (i + 1) % 4;
        let (ei, ej) = (outer[i], outer[j]);
        if ei == ej {
            loops += 1;
            ed.remove_edge(ei);
            continue;
        }
        let oj = g.edge(ej).other(vs[j]);
        ed.rotation[oj - 1].iter_mut().for_each(|k| {
            if *k == ej {
                *k = ei;
            }
        });
        ed.remove_edge(ej);
        ed.move_endpoint(ei, vs[i], oj);
        ed.rotation[vs[i] - 1].retain(|&k| k != ei);
    }
    for &v in vs {
        ed.remove_vertex(v);
    }
    let map = ed.finish().expect("square smoothing keeps the map valid");
    Web { map, loops }
}

/// Lower bound on the interior vertex count of a non-elliptic web with `c`
/// independent cycles.
pub fn min_interior_for_cycles(c: usize) -> usize {
    match c {
        0 => 0,
        1 => 2 * c + 4,
        2 => 2 * c + 6,
        3 => 2 * c + 7,
        4 => 2 * c + 8,
        5 => 2 * c + 9,
        _ => 2 * c + 10,
    }
}

/// Largest interior vertex count explored for `n = 3k` black boundary
/// vertices: `n + 2c - 2` with `c = (k-1)(k-2)/2`, the number of hexagons in
/// the triangular web.
pub fn default_interior_cap(n: usize) -> usize {
    let k = n / 3;
    let c = k.saturating_sub(1) * k.saturating_sub(2) / 2;
    (n + 2 * c).saturating_sub(2).max(1)
}

/// Result of an enumeration: dihedral class representatives sorted by
/// canonical code, each with its orbit size, and the number of labeled webs
/// found.
#[derive(Debug, Clone)]
pub struct WebCensus {
    pub classes: Vec<(Web, usize)>,
    pub labeled: Vec<Web>,
}

impl WebCensus {
    pub fn total(&self) -> usize {
        self.labeled.len()
    }

    pub fn orbit_sum(&self) -> usize {
        self.classes.iter().map(|c| c.1).sum()
    }
}

/// Enumerate every non-elliptic web with `n` black boundary vertices of
/// degree one, up to the default interior cap.
pub fn enumerate_black_webs(n: usize) -> Result<WebCensus> {
    enumerate_black_webs_capped(n, default_interior_cap(n))
}

pub fn enumerate_black_webs_capped(n: usize, max_interior: usize) -> Result<WebCensus> {
    if n == 0 || !n.is_multiple_of(3) {
        return Err(Error::NotDivisibleByThree(n));
    }
    let labeled = enumerate_labeled(&vec![Color::Black; n], max_interior);
    let mut classes: BTreeMap<CanonicalCode, Web> = BTreeMap::new();
    for w in &labeled {
        classes.entry(w.canonical_code()).or_insert_with(|| w.clone());
    }
    let classes = classes.into_values().map(|w| {
        let o = w.map.orbit_size();
        (w, o)
    });
    Ok(WebCensus { classes: classes.collect(), labeled })
}

/// Every non-elliptic web whose boundary vertex `i` has degree one and color
/// `boundary[i - 1]`, with at most `max_interior` interior vertices, sorted by
/// labeled code.
pub fn enumerate_labeled(boundary: &[Color], max_interior: usize) -> Vec<Web> {
    let root = Peel::start(boundary, max_interior);
    let mut seeds = vec![root];
    // expand a few levels breadth-first to get independent subtrees
    for _ in 0..4 {
        let mut next = Vec::new();
        for s in seeds {
            if s.regions.is_empty() {
                next.push(s);
            } else {
                next.extend(s.children());
            }
        }
        seeds = next;
    }
    let mut labeled: Vec<Web> = seeds
        .into_par_iter()
        .flat_map_iter(|s| {
            let mut out = Vec::new();
            s.search(&mut out);
            out
        })
        .map(|m| Web::new(m).expect("enumerated web is valid"))
        .collect();
    labeled.sort_by_cached_key(|w| w.labeled_code());
    labeled
}

/// Length of the region boundary between consecutive stubs, or `None` when
/// it runs along the disk boundary.
type Gap = Option<usize>;

fn join(a: Gap, b: Gap, extra: usize) -> Gap {
    Some(a? + b? + extra)
}

#[derive(Debug, Clone, Copy)]
struct Stub {
    v: usize,
    slot: usize,
}

/// An unfilled disk: its stubs listed with the region on the right, and the
/// boundary path length after each stub.
#[derive(Debug, Clone)]
struct Region {
    stubs: Vec<Stub>,
    gaps: Vec<Gap>,
}

/// Search state of the peeling enumerator. The first stub of the last region
/// is always matched next, either to another stub of the region or to a new
/// vertex, so each labeled web is produced exactly once.
#[derive(Debug, Clone)]
struct Peel {
    n: usize,
    max_interior: usize,
    colors: Vec<Color>,
    rot: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    regions: Vec<Region>,
}

const EMPTY: usize = usize::MAX;

impl Peel {
    fn start(boundary: &[Color], max_interior: usize) -> Peel {
        let n = boundary.len();
        Peel {
            n,
            max_interior,
            colors: boundary.to_vec(),
            rot: vec![vec![EMPTY]; n],
            edges: Vec::new(),
            regions: vec![Region { stubs: (1..=n).map(|v| Stub { v, slot: 0 }).collect(), gaps: vec![None; n] }],
        }
    }

    fn color(&self, s: Stub) -> Color {
        self.colors[s.v - 1]
    }

    /// Stubs owned by black vertices minus those owned by white ones must
    /// vanish mod 3 for a region to be fillable.
    fn balanced(&self, r: &Region) -> bool {
        let black = r.stubs.iter().filter(|&&s| self.color(s) == Color::Black).count() as i64;
        (2 * black - r.stubs.len() as i64).rem_euclid(3) == 0
    }

    fn push_region(&mut self, r: Region) -> bool {
        if r.stubs.is_empty() {
            return true;
        }
        if !self.balanced(&r) {
            return false;
        }
        self.regions.push(r);
        true
    }

    fn connect(&mut self, a: Stub, b: Stub) {
        let k = self.edges.len();
        self.edges.push((a.v, b.v));
        self.rot[a.v - 1][a.slot] = k;
        self.rot[b.v - 1][b.slot] = k;
    }

    fn children(&self) -> Vec<Peel> {
        let mut out = Vec::new();
        let Some(r) = self.regions.last() else { return out };
        let s0 = r.stubs[0];
        let want = self.color(s0).flip();
        let len = r.stubs.len();
        for j in 1..len {
            if self.color(r.stubs[j]) != want {
                continue;
            }
            // closing gap of the part between the two stubs and of the rest
            let inner_close = join(r.gaps[j - 1], r.gaps[0], 1);
            let outer_close = join(r.gaps[len - 1], r.gaps[j], 1);
            let face_ok = |g: Gap| g.is_none_or(|s| s > 4);
            if (j == 1 && !face_ok(join(r.gaps[0], Some(0), 1))) || (j == len - 1 && !face_ok(join(r.gaps[len - 1], Some(0), 1))) {
                continue;
            }
            let mut c = self.clone();
            let r = c.regions.pop().unwrap();
            c.connect(s0, r.stubs[j]);
            let mut inner = Region { stubs: r.stubs[1..j].to_vec(), gaps: r.gaps[1..j].to_vec() };
            if let Some(last) = inner.gaps.last_mut() {
                *last = inner_close;
            }
            let mut rest = Region { stubs: r.stubs[j + 1..].to_vec(), gaps: r.gaps[j + 1..].to_vec() };
            if let Some(last) = rest.gaps.last_mut() {
                *last = outer_close;
            }
            if c.push_region(rest) && c.push_region(inner) {
                out.push(c);
            }
        }
        if self.colors.len() - self.n < self.max_interior {
            let mut c = self.clone();
            let mut r = c.regions.pop().unwrap();
            c.colors.push(want);
            c.rot.push(vec![EMPTY; 3]);
            let v = c.colors.len();
            c.connect(s0, Stub { v, slot: 0 });
            // clockwise at v: the edge to s0, then the stub nearer to the
            // next region stub, then the other one
            let (first, second) = (Stub { v, slot: 2 }, Stub { v, slot: 1 });
            let g0 = r.gaps[0].map(|g| g + 1);
            let last = len - 1;
            r.gaps[last] = r.gaps[last].map(|g| g + 1);
            r.stubs.splice(0..1, [first, second]);
            r.gaps.splice(0..1, [Some(0), g0]);
            if c.push_region(r) {
                out.push(c);
            }
        }
        out
    }

    fn search(self, out: &mut Vec<CombMap>) {
        if self.regions.is_empty() {
            out.push(self.finish());
            return;
        }
        for c in self.children() {
            c.search(out);
        }
    }

    fn finish(&self) -> CombMap {
        let vertices = self
            .colors
            .iter()
            .enumerate()
            .map(|(i, &color)| Vertex { id: i + 1, color, boundary: i < self.n, name: None })
            .collect();
        let edges = self.edges.iter().map(|&(u, v)| crate::planar_map::Edge { u, v, m: 1 }).collect();
        CombMap::new(self.n, vertices, edges, self.rot.clone()).expect("peeled web is a valid map")
    }
}

/// Contract each site `{i, i+1}` (cyclically adjacent boundary labels whose
/// black boundary vertices share a white neighbour) into one white boundary
/// vertex. A tripod toe pair becomes an arrow from the remaining toe. The
/// new vertex takes the position of the smaller label of its site (label 1
/// for the site `{1, n}`), and labels are then compacted clockwise.
pub fn contract_sinks(w: &Web, sites: &[(usize, usize)]) -> Result<Web> {
    let g = &w.map;
    let n = g.n();
    let mut used = vec![false; n + 1];
    let mut plan = Vec::new();
    for &(a, b) in sites {
        let (lo, hi) = if (a % n) + 1 == b { (a, b) } else if (b % n) + 1 == a { (b, a) } else {
            return Err(Error::Web(format!("site {{{a}, {b}}} is not a pair of adjacent boundary labels")));
        };
        if used[lo] || used[hi] {
            return Err(Error::Web(format!("site {{{a}, {b}}} overlaps another site")));
        }
        used[lo] = true;
        used[hi] = true;
        let nb = |v: usize| g.rotation(v).first().map(|&k| g.edge(k).other(v));
        let x = match (nb(lo), nb(hi)) {
            (Some(x), Some(y)) if x == y && !g.is_boundary(x) && g.color(x) == Color::White => x,
            _ => return Err(Error::Web(format!("site {{{a}, {b}}} is not a claw of a white vertex"))),
        };
        if g.color(lo) != Color::Black || g.color(hi) != Color::Black {
            return Err(Error::Web(format!("site {{{a}, {b}}} has a white boundary vertex")));
        }
        // the site {n, 1} keeps position 1
        let keep = if lo == n && hi == 1 { 1 } else { lo };
        plan.push((keep, lo, hi, x));
    }
    let mut ed = MapEditor::from_map(g);
    for &(keep, lo, hi, x) in &plan {
        let third = third_edge_of(g, x, lo, hi);
        let drop = if keep == lo { hi } else { lo };
        // the kept boundary vertex takes over the claw's third edge
        for k in g.rotation(keep).to_vec() {
            ed.remove_edge(k);
        }
        for k in g.rotation(drop).to_vec() {
            if ed.edges[k].is_some() {
                ed.remove_edge(k);
            }
        }
        ed.move_endpoint(third, x, keep);
        ed.rotation[x - 1].retain(|&k| k != third);
        ed.rotation[keep - 1] = vec![third];
        ed.remove_vertex(x);
        ed.set_color(keep, Color::White);
        ed.vertices[drop - 1] = None;
    }
    let map = compact_boundary(ed)?;
    Web::with_loops(map, w.loops)
}

fn third_edge_of(g: &CombMap, x: usize, a: usize, b: usize) -> usize {
    *g.rotation(x).iter().find(|&&k| {
        let o = g.edge(k).other(x);
        o != a && o != b
    })
    .expect("claw center is trivalent")
}

/// Renumber surviving boundary vertices `1..` in clockwise order and
/// interior vertices after them.
fn compact_boundary(ed: MapEditor) -> Result<CombMap> {
    let old_n = ed.n;
    let boundary: Vec<usize> = (1..=old_n).filter(|&i| ed.vertices[i - 1].is_some()).collect();
    let interior: Vec<usize> = (old_n + 1..=ed.vertices.len()).filter(|&i| ed.vertices[i - 1].is_some()).collect();
    let n = boundary.len();
    let mut out = MapEditor::new(n);
    let mut new_id = vec![0; ed.vertices.len() + 1];
    for (i, &b) in boundary.iter().enumerate() {
        new_id[b] = i + 1;
        out.set_color(i + 1, ed.color(b));
    }
    for &v in &interior {
        new_id[v] = out.add_vertex(ed.color(v));
    }
    let mut new_edge = vec![usize::MAX; ed.edges.len()];
    for (k, e) in ed.edges.iter().enumerate() {
        if let Some(e) = e {
            new_edge[k] = out.add_edge(new_id[e.u], new_id[e.v], e.m);
        }
    }
    for &v in boundary.iter().chain(&interior) {
        out.rotation[new_id[v] - 1] = ed.rotation[v - 1].iter().map(|&k| new_edge[k]).collect();
    }
    out.finish()
}

/// Boundary sites `{i, i+1}` whose two black boundary vertices hang from the
/// same white interior vertex.
pub fn claw_sites(w: &Web) -> Vec<(usize, usize)> {
    let g = &w.map;
    let n = g.n();
    let nb = |v: usize| g.rotation(v).first().map(|&k| g.edge(k).other(v));
    (1..=n)
        .filter_map(|i| {
            let j = i % n + 1;
            match (nb(i), nb(j)) {
                (Some(x), Some(y)) if x == y && !g.is_boundary(x) && g.color(i) == Color::Black && g.color(j) == Color::Black => Some((i, j)),
                _ => None,
            }
        })
        .collect()
}

/// The eight arrangements of four white and four black boundary vertices
/// (white labels), with label 1 white and label 8 black.
pub const ARRANGEMENTS: [[usize; 4]; 8] =
    [[1, 2, 3, 4], [1, 2, 3, 5], [1, 2, 3, 6], [1, 2, 4, 5], [1, 2, 4, 6], [1, 2, 4, 7], [1, 2, 5, 6], [1, 3, 5, 7]];

/// Type `t` in `1..=8` and a dihedral element `g` with `g` applied to the
/// white labels giving arrangement `t`.
pub fn classify_whites(whites: &[usize]) -> Result<(usize, Dihedral)> {
    if whites.len() != 4 {
        return Err(Error::Web(format!("expected 4 white boundary vertices, found {}", whites.len())));
    }
    for g in Dihedral::all(8) {
        let mut img: Vec<usize> = whites.iter().map(|&i| g.apply(i, 8)).collect();
        img.sort_unstable();
        if let Some(t) = ARRANGEMENTS.iter().position(|a| a[..] == img[..]) {
            return Ok((t + 1, g));
        }
    }
    Err(Error::Web(format!("white set {whites:?} matches no arrangement")))
}

pub fn classify_type(w: &Web) -> Result<(usize, Dihedral)> {
    if w.n() != 8 {
        return Err(Error::Web(format!("expected 8 boundary vertices, found {}", w.n())));
    }
    let whites: Vec<usize> = (1..=8).filter(|&i| w.map.color(i) == Color::White).collect();
    classify_whites(&whites)
}

/// The 4-black/4-white webs obtained by contracting four disjoint claw sites
/// of 12-boundary black webs, as labeled webs whose white boundary labels are
/// exactly one of the eight arrangements. Sorted by type then labeled code.
#[derive(Debug, Clone)]
pub struct MixedCensus {
    pub webs: Vec<(usize, Web)>,
}

impl MixedCensus {
    pub fn by_type(&self) -> [usize; 8] {
        let mut out = [0; 8];
        for (t, _) in &self.webs {
            out[t - 1] += 1;
        }
        out
    }

    pub fn len(&self) -> usize {
        self.webs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.webs.is_empty()
    }

    /// Number of classes under the full dihedral group, ignoring the type.
    pub fn dihedral_class_count(&self) -> usize {
        self.webs.iter().map(|(_, w)| w.canonical_code()).collect::<std::collections::BTreeSet<_>>().len()
    }
}

pub fn enumerate_mixed_webs(black: &WebCensus) -> Result<MixedCensus> {
    let found: Vec<(usize, CanonicalCode, Web)> = black
        .labeled
        .par_iter()
        .flat_map_iter(|w| {
            let sites = claw_sites(w);
            let mut out = Vec::new();
            for combo in choose_disjoint(&sites, 4, w.n()) {
                let c = contract_sinks(w, &combo).expect("claw sites contract");
                let whites: Vec<usize> = (1..=8).filter(|&i| c.map.color(i) == Color::White).collect();
                // the source is closed under the dihedral group, so keeping
                // only webs already in normal position loses nothing
                if let Some(t) = ARRANGEMENTS.iter().position(|a| a[..] == whites[..]) {
                    out.push((t + 1, c.labeled_code(), c));
                }
            }
            out.into_iter()
        })
        .collect();
    let mut webs: BTreeMap<(usize, CanonicalCode), Web> = BTreeMap::new();
    for (t, code, w) in found {
        webs.entry((t, code)).or_insert(w);
    }
    Ok(MixedCensus { webs: webs.into_iter().map(|((t, _), w)| (t, w)).collect() })
}

fn choose_disjoint(sites: &[(usize, usize)], k: usize, n: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(sites: &[(usize, usize)], k: usize, used: &mut Vec<bool>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for (i, &(a, b)) in sites.iter().enumerate() {
            if used[a] || used[b] {
                continue;
            }
            used[a] = true;
            used[b] = true;
            cur.push((a, b));
            rec(&sites[i + 1..], k, used, cur, out);
            cur.pop();
            used[a] = false;
            used[b] = false;
        }
    }
    let mut out = Vec::new();
    rec(sites, k, &mut vec![false; n + 1], &mut Vec::new(), &mut out);
    out
}
