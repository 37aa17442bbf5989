//! Disk-embedded bicolored multigraphs stored as rotation systems, with face
//! tracing, component counts, dihedral relabeling and canonical codes.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perms::wrap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    pub color: Color,
    pub boundary: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub m: usize,
}

impl Edge {
    /// The endpoint opposite to `x`.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// An element of the dihedral group acting on boundary labels `1..=n`:
/// first the optional reflection `i -> n + 1 - i`, then `shift` steps of
/// the rotation `i -> i - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Dihedral {
    pub shift: usize,
    pub reflect: bool,
}

impl Dihedral {
    pub const IDENTITY: Dihedral = Dihedral { shift: 0, reflect: false };

    pub fn rotation(shift: usize) -> Dihedral {
        Dihedral { shift, reflect: false }
    }

    pub fn reflection() -> Dihedral {
        Dihedral { shift: 0, reflect: true }
    }

    pub fn apply(&self, i: usize, n: usize) -> usize {
        let j = if self.reflect { n + 1 - i } else { i };
        wrap(j as i64 - self.shift as i64, n)
    }

    /// All `2n` elements, rotations first.
    pub fn all(n: usize) -> Vec<Dihedral> {
        let mut out: Vec<Dihedral> = (0..n).map(Dihedral::rotation).collect();
        out.extend((0..n).map(|s| Dihedral { shift: s, reflect: true }));
        out
    }

    /// The element `self` after `first`.
    pub fn compose(&self, first: &Dihedral, n: usize) -> Dihedral {
        let image_of = |i: usize| self.apply(first.apply(i, n), n);
        Dihedral::all(n)
            .into_iter()
            .find(|g| (1..=n).all(|i| g.apply(i, n) == image_of(i)))
            .expect("dihedral group is closed")
    }

    pub fn inverse(&self, n: usize) -> Dihedral {
        Dihedral::all(n).into_iter().find(|g| g.compose(self, n) == Dihedral::IDENTITY).expect("inverse exists")
    }

    /// Reduce the shift modulo `n`.
    pub fn normalized(&self, n: usize) -> Dihedral {
        Dihedral { shift: self.shift % n.max(1), reflect: self.reflect }
    }
}

impl fmt::Display for Dihedral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.shift, self.reflect) {
            (0, false) => write!(f, "id"),
            (0, true) => write!(f, "rho"),
            (k, false) => write!(f, "tau^{k}"),
            (k, true) => write!(f, "tau^{k}.rho"),
        }
    }
}

/// One directed side of an edge, leaving vertex `from`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dart {
    pub edge: usize,
    pub from: usize,
}

/// A face of the map together with the boundary circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Graph darts on the walk, in walk order.
    pub darts: Vec<Dart>,
    /// Number of boundary-circle arcs on the walk.
    pub arcs: usize,
    /// The region outside the disk.
    pub outer: bool,
}

impl Face {
    /// Number of distinct graph edges on the walk.
    pub fn side_count(&self) -> usize {
        let mut e: Vec<usize> = self.darts.iter().map(|d| d.edge).collect();
        e.sort_unstable();
        e.dedup();
        e.len()
    }

    /// A face strictly inside the disk, not touching the boundary circle.
    pub fn is_interior(&self) -> bool {
        !self.outer && self.arcs == 0
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.darts.iter().map(|d| d.from).collect()
    }
}

/// Canonical code of a map up to the dihedral action and isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(pub Vec<u32>);

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| format!("{x:x}")).collect();
        write!(f, "{}", parts.join("."))
    }
}

/// A combinatorial map in the disk. Vertex ids are `1..=V` with boundary
/// vertices `1..=n` in clockwise order; every rotation lists incident edge
/// indices clockwise, and boundary rotations start just after the gap facing
/// the outside of the disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MapJson", into = "MapJson")]
pub struct CombMap {
    n: usize,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    rotation: Vec<Vec<usize>>,
    name: Option<String>,
    flavor: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct MapJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    flavor: Option<String>,
    n: usize,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    rotation: BTreeMap<String, Vec<usize>>,
}

impl TryFrom<MapJson> for CombMap {
    type Error = Error;
    fn try_from(j: MapJson) -> Result<Self> {
        let mut vertices = j.vertices;
        vertices.sort_by_key(|v| v.id);
        let mut rotation = vec![Vec::new(); vertices.len()];
        for (k, r) in j.rotation {
            let id: usize = k.parse().map_err(|_| Error::Map(format!("bad rotation key {k:?}")))?;
            if id == 0 || id > rotation.len() {
                return Err(Error::Map(format!("rotation for unknown vertex {id}")));
            }
            rotation[id - 1] = r;
        }
        let mut g = CombMap::new(j.n, vertices, j.edges, rotation)?;
        g.name = j.name;
        g.flavor = j.flavor;
        Ok(g)
    }
}

impl From<CombMap> for MapJson {
    fn from(g: CombMap) -> Self {
        MapJson {
            name: g.name,
            flavor: g.flavor,
            n: g.n,
            rotation: g.rotation.iter().enumerate().map(|(i, r)| ((i + 1).to_string(), r.clone())).collect(),
            vertices: g.vertices,
            edges: g.edges,
        }
    }
}

impl CombMap {
    /// Build and check a map. `rotation[i]` belongs to vertex id `i + 1`.
    pub fn new(n: usize, vertices: Vec<Vertex>, edges: Vec<Edge>, rotation: Vec<Vec<usize>>) -> Result<Self> {
        let g = CombMap { n, vertices, edges, rotation, name: None, flavor: None };
        g.check()?;
        Ok(g)
    }

    fn check(&self) -> Result<()> {
        let nv = self.vertices.len();
        if self.n > nv {
            return Err(Error::Map(format!("{} boundary vertices but only {nv} vertices", self.n)));
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if v.id != i + 1 {
                return Err(Error::Map(format!("vertex ids must be 1..{nv}, found {}", v.id)));
            }
            if v.boundary != (v.id <= self.n) {
                return Err(Error::Map(format!("vertex {} boundary flag disagrees with n={}", v.id, self.n)));
            }
        }
        if self.rotation.len() != nv {
            return Err(Error::Map("rotation table size differs from vertex count".into()));
        }
        for (k, e) in self.edges.iter().enumerate() {
            if e.u == 0 || e.v == 0 || e.u > nv || e.v > nv {
                return Err(Error::Map(format!("edge {k} has an unknown endpoint")));
            }
            if e.u == e.v {
                return Err(Error::Map(format!("edge {k} is a loop at vertex {}", e.u)));
            }
            if e.m == 0 {
                return Err(Error::Map(format!("edge {k} has multiplicity 0")));
            }
        }
        let mut seen = vec![0usize; self.edges.len()];
        for (i, r) in self.rotation.iter().enumerate() {
            for &k in r {
                let e = self.edges.get(k).ok_or_else(|| Error::Map(format!("vertex {} lists unknown edge {k}", i + 1)))?;
                if e.u != i + 1 && e.v != i + 1 {
                    return Err(Error::Map(format!("vertex {} lists edge {k} which is not incident", i + 1)));
                }
                seen[k] += 1;
            }
        }
        if let Some(k) = seen.iter().position(|&c| c != 2) {
            return Err(Error::Map(format!("edge {k} appears {} times in rotations, expected 2", seen[k])));
        }
        let walks = self.trace().len();
        let comps = self.augmented_components();
        let lhs = nv as i64 - (self.edges.len() + self.arc_count()) as i64 + walks as i64;
        if lhs != 2 * comps as i64 {
            return Err(Error::Map(format!("rotation system is not planar in the disk (V-E+F={lhs}, components {comps})")));
        }
        Ok(())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_flavor(mut self, flavor: impl Into<String>) -> Self {
        self.flavor = Some(flavor.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn flavor(&self) -> Option<&str> {
        self.flavor.as_deref()
    }

    /// Number of boundary vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: usize) -> &Vertex {
        &self.vertices[id - 1]
    }

    pub fn color(&self, id: usize) -> Color {
        self.vertices[id - 1].color
    }

    pub fn is_boundary(&self, id: usize) -> bool {
        id <= self.n
    }

    pub fn interior_ids(&self) -> std::ops::RangeInclusive<usize> {
        self.n + 1..=self.vertices.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, k: usize) -> &Edge {
        &self.edges[k]
    }

    /// Clockwise incident edges of vertex `id`.
    pub fn rotation(&self, id: usize) -> &[usize] {
        &self.rotation[id - 1]
    }

    /// Total incident multiplicity.
    pub fn degree(&self, id: usize) -> usize {
        self.rotation(id).iter().map(|&k| self.edges[k].m).sum()
    }

    /// Number of incident edges, ignoring multiplicity.
    pub fn simple_degree(&self, id: usize) -> usize {
        self.rotation(id).len()
    }

    /// Neighbors in clockwise order, one per incident edge.
    pub fn neighbors(&self, id: usize) -> Vec<usize> {
        self.rotation(id).iter().map(|&k| self.edges[k].other(id)).collect()
    }

    /// Edges joining `a` and `b`.
    pub fn edges_between(&self, a: usize, b: usize) -> Vec<usize> {
        self.rotation(a).iter().copied().filter(|&k| self.edges[k].other(a) == b).collect()
    }

    fn arc_count(&self) -> usize {
        if self.n >= 2 {
            self.n
        } else {
            0
        }
    }

    /// Endpoints of augmented edge `k` (graph edges, then circle arcs from
    /// boundary `j` to `j + 1`).
    fn aug_ends(&self, k: usize) -> (usize, usize) {
        let ne = self.edges.len();
        if k < ne {
            (self.edges[k].u, self.edges[k].v)
        } else {
            let j = k - ne + 1;
            (j, j % self.n + 1)
        }
    }

    fn aug_rotation(&self, id: usize) -> Vec<usize> {
        let r = self.rotation(id);
        if id <= self.n && self.arc_count() > 0 {
            let ne = self.edges.len();
            let next_arc = ne + id - 1;
            let prev_arc = ne + (id + self.n - 2) % self.n;
            let mut out = Vec::with_capacity(r.len() + 2);
            out.push(next_arc);
            out.extend_from_slice(r);
            out.push(prev_arc);
            out
        } else {
            r.to_vec()
        }
    }

    /// Trace all face walks of the map with the boundary circle. Darts are
    /// encoded as `2k` (from `u` to `v`) and `2k + 1` (reverse).
    fn trace(&self) -> Vec<Vec<usize>> {
        let total = self.edges.len() + self.arc_count();
        let rots: Vec<Vec<usize>> = (1..=self.vertices.len()).map(|id| self.aug_rotation(id)).collect();
        let mut pos = vec![usize::MAX; 2 * total];
        for (i, r) in rots.iter().enumerate() {
            for (p, &k) in r.iter().enumerate() {
                let (u, _) = self.aug_ends(k);
                let d = if u == i + 1 { 2 * k } else { 2 * k + 1 };
                pos[d] = p;
            }
        }
        let tail = |d: usize| {
            let (u, v) = self.aug_ends(d / 2);
            if d.is_multiple_of(2) {
                u
            } else {
                v
            }
        };
        let mut seen = vec![false; 2 * total];
        let mut walks = vec![];
        for start in 0..2 * total {
            if seen[start] {
                continue;
            }
            let mut walk = vec![];
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                walk.push(d);
                let rev = d ^ 1;
                let h = tail(rev);
                let r = &rots[h - 1];
                let k = r[(pos[rev] + 1) % r.len()];
                let (u, _) = self.aug_ends(k);
                d = if u == h { 2 * k } else { 2 * k + 1 };
            }
            walks.push(walk);
        }
        walks
    }

    fn augmented_components(&self) -> usize {
        let nv = self.vertices.len();
        let mut uf = UnionFind::new(nv);
        for k in 0..self.edges.len() + self.arc_count() {
            let (u, v) = self.aug_ends(k);
            uf.union(u - 1, v - 1);
        }
        (0..nv).filter(|&i| uf.find(i) == i).count()
    }

    /// Faces of the map together with the boundary circle.
    pub fn faces(&self) -> Vec<Face> {
        let ne = self.edges.len();
        self.trace()
            .into_iter()
            .map(|walk| {
                let mut darts = vec![];
                let mut arcs = 0;
                let mut forward_arcs = 0;
                for &d in &walk {
                    let k = d / 2;
                    if k < ne {
                        let e = &self.edges[k];
                        darts.push(Dart { edge: k, from: if d % 2 == 0 { e.u } else { e.v } });
                    } else {
                        arcs += 1;
                        if d % 2 == 0 {
                            forward_arcs += 1;
                        }
                    }
                }
                let outer = self.arc_count() > 0 && darts.is_empty() && forward_arcs == arcs && arcs == self.arc_count();
                Face { darts, arcs, outer }
            })
            .collect()
    }

    /// Faces strictly inside the disk.
    pub fn interior_faces(&self) -> Vec<Face> {
        self.faces().into_iter().filter(|f| f.is_interior()).collect()
    }

    /// `(m, c)`: connected components among vertices with at least one edge,
    /// and independent cycles `E - V + m` of the underlying simple graph.
    pub fn components_and_cycles(&self) -> (usize, usize) {
        let nv = self.vertices.len();
        let mut uf = UnionFind::new(nv);
        let mut pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.u.min(e.v), e.u.max(e.v))).collect();
        pairs.sort_unstable();
        pairs.dedup();
        for &(u, v) in &pairs {
            uf.union(u - 1, v - 1);
        }
        let active: Vec<usize> = (0..nv).filter(|&i| !self.rotation[i].is_empty()).collect();
        let m = active.iter().filter(|&&i| uf.find(i) == i).count();
        let c = pairs.len() + m - active.len();
        (m, c)
    }

    /// Relabel boundary vertices by a dihedral element; a reflection also
    /// reverses every rotation.
    pub fn relabel(&self, g: Dihedral) -> CombMap {
        let n = self.n;
        let new_id = |id: usize| if id <= n { g.apply(id, n) } else { id };
        let mut vertices = self.vertices.clone();
        for v in vertices.iter_mut() {
            v.id = new_id(v.id);
        }
        vertices.sort_by_key(|v| v.id);
        let edges = self.edges.iter().map(|e| Edge { u: new_id(e.u), v: new_id(e.v), m: e.m }).collect();
        let mut rotation = vec![Vec::new(); self.vertices.len()];
        for (i, r) in self.rotation.iter().enumerate() {
            let mut r = r.clone();
            if g.reflect {
                r.reverse();
            }
            rotation[new_id(i + 1) - 1] = r;
        }
        CombMap { n, vertices, edges, rotation, name: self.name.clone(), flavor: self.flavor.clone() }
    }

    /// Apply `i -> i - k` to boundary labels.
    pub fn rotate(&self, k: usize) -> CombMap {
        self.relabel(Dihedral::rotation(k))
    }

    /// Apply `i -> n + 1 - i` to boundary labels.
    pub fn reflect(&self) -> CombMap {
        self.relabel(Dihedral::reflection())
    }

    /// Code of the map with fixed boundary labels, invariant under
    /// relabelings of interior vertices and edges.
    pub fn labeled_code(&self) -> CanonicalCode {
        self.code_under(Dihedral::IDENTITY)
    }

    fn code_under(&self, g: Dihedral) -> CanonicalCode {
        let n = self.n;
        let nv = self.vertices.len();
        let mut order: Vec<usize> = (1..=n).collect();
        order.sort_by_key(|&b| g.apply(b, n));
        let mut num = vec![u32::MAX; nv + 1];
        let mut enum_ = vec![u32::MAX; self.edges.len()];
        let mut start = vec![0usize; nv + 1];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for (i, &b) in order.iter().enumerate() {
            num[b] = i as u32;
            queue.push_back(b);
        }
        let mut next_num = n as u32;
        let mut next_edge = 0u32;
        let mut code = vec![n as u32, nv as u32, self.edges.len() as u32];
        let read = |id: usize, s: usize| -> Vec<usize> {
            let r = self.rotation(id);
            let len = r.len();
            if g.reflect {
                (0..len).map(|t| r[(s + len - t) % len]).collect()
            } else {
                (0..len).map(|t| r[(s + t) % len]).collect()
            }
        };
        let mut visit = |queue: &mut VecDeque<usize>, code: &mut Vec<u32>, num: &mut Vec<u32>, start: &mut Vec<usize>| {
            while let Some(x) = queue.pop_front() {
                let s = if x <= n { if g.reflect { self.rotation(x).len().saturating_sub(1) } else { 0 } } else { start[x] };
                let list = if x <= n && g.reflect {
                    let mut r = self.rotation(x).to_vec();
                    r.reverse();
                    r
                } else {
                    read(x, s)
                };
                let v = self.vertex(x);
                code.push(u32::from(v.color == Color::White) + 2 * u32::from(v.boundary));
                code.push(list.len() as u32);
                for k in list {
                    let e = &self.edges[k];
                    let y = e.other(x);
                    if num[y] == u32::MAX {
                        num[y] = next_num;
                        next_num += 1;
                        start[y] = self.rotation(y).iter().position(|&q| q == k).expect("incident");
                        queue.push_back(y);
                    }
                    if enum_[k] == u32::MAX {
                        enum_[k] = next_edge;
                        next_edge += 1;
                    }
                    code.push(num[y]);
                    code.push(enum_[k]);
                    code.push(e.m as u32);
                }
            }
        };
        visit(&mut queue, &mut code, &mut num, &mut start);
        // Components not attached to the boundary, each from its best start.
        loop {
            let rest: Vec<usize> = (n + 1..=nv).filter(|&x| num[x] == u32::MAX).collect();
            if rest.is_empty() {
                break;
            }
            let mut best: Option<(Vec<u32>, Vec<u32>, Vec<u32>, u32, u32)> = None;
            for &x in &rest {
                let choices = self.rotation(x).len().max(1);
                for s in 0..choices {
                    let mut num2 = num.clone();
                    let saved = enum_.clone();
                    let (nn, ne) = (next_num, next_edge);
                    num2[x] = nn;
                    let mut sub = vec![u32::MAX];
                    let mut start2 = start.clone();
                    start2[x] = s;
                    let mut q = VecDeque::from([x]);
                    // Local copy of the visitor with its own counters.
                    let mut nn2 = nn + 1;
                    let mut ne2 = ne;
                    let mut en2 = saved.clone();
                    while let Some(y) = q.pop_front() {
                        let list = read(y, start2[y]);
                        let v = self.vertex(y);
                        sub.push(u32::from(v.color == Color::White));
                        sub.push(list.len() as u32);
                        for k in list {
                            let e = &self.edges[k];
                            let z = e.other(y);
                            if num2[z] == u32::MAX {
                                num2[z] = nn2;
                                nn2 += 1;
                                start2[z] = self.rotation(z).iter().position(|&q2| q2 == k).expect("incident");
                                q.push_back(z);
                            }
                            if en2[k] == u32::MAX {
                                en2[k] = ne2;
                                ne2 += 1;
                            }
                            sub.push(num2[z]);
                            sub.push(en2[k]);
                            sub.push(e.m as u32);
                        }
                    }
                    if best.as_ref().is_none_or(|b| sub < b.0) {
                        best = Some((sub, num2, en2, nn2, ne2));
                    }
                }
            }
            let (sub, num2, en2, nn2, ne2) = best.expect("nonempty");
            code.extend(sub);
            num = num2;
            enum_ = en2;
            next_num = nn2;
            next_edge = ne2;
        }
        CanonicalCode(code)
    }

    /// Minimal code over all dihedral relabelings.
    pub fn canonical_code(&self) -> CanonicalCode {
        self.canonical_with_map().0
    }

    /// Minimal code and a dihedral element attaining it.
    pub fn canonical_with_map(&self) -> (CanonicalCode, Dihedral) {
        let n = self.n.max(1);
        Dihedral::all(n)
            .into_iter()
            .map(|g| (self.code_under(g), g))
            .min_by(|a, b| a.0.cmp(&b.0))
            .expect("group is nonempty")
    }

    /// Number of distinct labeled maps in the dihedral orbit.
    pub fn orbit_size(&self) -> usize {
        let mut codes: Vec<CanonicalCode> = Dihedral::all(self.n.max(1)).into_iter().map(|g| self.relabel(g).labeled_code()).collect();
        codes.sort();
        codes.dedup();
        codes.len()
    }

    /// Serialize with the compact data-file layout.
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("map serializes")
    }
}

/// Mutable editing view of a map; `finish` compacts ids and re-validates.
#[derive(Debug, Clone)]
pub struct MapEditor {
    pub n: usize,
    pub vertices: Vec<Option<Vertex>>,
    pub edges: Vec<Option<Edge>>,
    pub rotation: Vec<Vec<usize>>,
    name: Option<String>,
    flavor: Option<String>,
}

impl MapEditor {
    pub fn new(n: usize) -> Self {
        let mut ed = MapEditor { n, vertices: vec![], edges: vec![], rotation: vec![], name: None, flavor: None };
        for _ in 0..n {
            ed.add_vertex(Color::Black);
        }
        ed
    }

    pub fn from_map(g: &CombMap) -> Self {
        MapEditor {
            n: g.n,
            vertices: g.vertices.iter().cloned().map(Some).collect(),
            edges: g.edges.iter().copied().map(Some).collect(),
            rotation: g.rotation.clone(),
            name: g.name.clone(),
            flavor: g.flavor.clone(),
        }
    }

    /// Add a vertex; ids up to `n` are boundary vertices.
    pub fn add_vertex(&mut self, color: Color) -> usize {
        let id = self.vertices.len() + 1;
        self.vertices.push(Some(Vertex { id, color, boundary: id <= self.n, name: None }));
        self.rotation.push(vec![]);
        id
    }

    pub fn color(&self, id: usize) -> Color {
        self.vertices[id - 1].as_ref().expect("live vertex").color
    }

    pub fn set_color(&mut self, id: usize, c: Color) {
        self.vertices[id - 1].as_mut().expect("live vertex").color = c;
    }

    /// Add an edge without touching rotations.
    pub fn add_edge(&mut self, u: usize, v: usize, m: usize) -> usize {
        self.edges.push(Some(Edge { u, v, m }));
        self.edges.len() - 1
    }

    pub fn edge(&self, k: usize) -> Edge {
        self.edges[k].expect("live edge")
    }

    /// Delete an edge and remove it from both rotations.
    pub fn remove_edge(&mut self, k: usize) {
        let e = self.edges[k].take().expect("live edge");
        for x in [e.u, e.v] {
            self.rotation[x - 1].retain(|&q| q != k);
        }
    }

    pub fn remove_vertex(&mut self, id: usize) {
        for k in self.rotation[id - 1].clone() {
            if self.edges[k].is_some() {
                self.remove_edge(k);
            }
        }
        self.vertices[id - 1] = None;
    }

    /// Reattach edge `k` from endpoint `old` to `new` (rotation untouched).
    pub fn move_endpoint(&mut self, k: usize, old: usize, new: usize) {
        let e = self.edges[k].as_mut().expect("live edge");
        if e.u == old {
            e.u = new;
        } else {
            e.v = new;
        }
    }

    /// Rotation of `id` read cyclically starting at edge `k`.
    pub fn rotation_from(&self, id: usize, k: usize) -> Vec<usize> {
        let r = &self.rotation[id - 1];
        let p = r.iter().position(|&q| q == k).expect("edge in rotation");
        (0..r.len()).map(|t| r[(p + t) % r.len()]).collect()
    }

    /// Drop deleted items, renumber, and validate.
    pub fn finish(self) -> Result<CombMap> {
        let mut new_id = vec![0; self.vertices.len() + 1];
        let mut vertices = vec![];
        for (i, v) in self.vertices.iter().enumerate() {
            if let Some(v) = v {
                if i < self.n || !v.boundary {
                    let id = vertices.len() + 1;
                    new_id[i + 1] = id;
                    vertices.push(Vertex { id, boundary: id <= self.n, ..v.clone() });
                }
            } else if i < self.n {
                return Err(Error::Map(format!("boundary vertex {} was deleted", i + 1)));
            }
        }
        let mut new_edge = vec![usize::MAX; self.edges.len()];
        let mut edges = vec![];
        for (k, e) in self.edges.iter().enumerate() {
            if let Some(e) = e {
                new_edge[k] = edges.len();
                edges.push(Edge { u: new_id[e.u], v: new_id[e.v], m: e.m });
            }
        }
        let mut rotation = vec![Vec::new(); vertices.len()];
        for (i, r) in self.rotation.iter().enumerate() {
            if self.vertices[i].is_some() {
                rotation[new_id[i + 1] - 1] = r.iter().map(|&k| new_edge[k]).collect();
            }
        }
        let mut g = CombMap::new(self.n, vertices, edges, rotation)?;
        g.name = self.name;
        g.flavor = self.flavor;
        Ok(g)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Small constructors used by tests and examples across the crate.
pub mod build {
    use super::*;

    /// Star with one interior vertex of `color` joined to the listed boundary
    /// vertices of an `n`-boundary disk; boundary vertices get the opposite
    /// color.
    pub fn star(n: usize, legs: &[usize], color: Color) -> CombMap {
        stars(n, &[(legs, color)])
    }

    /// Several disjoint stars; each leg list must be increasing and the
    /// stars must not interleave.
    pub fn stars(n: usize, specs: &[(&[usize], Color)]) -> CombMap {
        let mut ed = MapEditor::new(n);
        for &(legs, color) in specs {
            let c = ed.add_vertex(color);
            for &b in legs {
                ed.set_color(b, color.flip());
            }
            // Clockwise around the center is increasing boundary label.
            for &b in legs {
                let k = ed.add_edge(b, c, 1);
                ed.rotation[b - 1].push(k);
                ed.rotation[c - 1].push(k);
            }
        }
        ed.finish().expect("stars are planar")
    }
}

#[cfg(test)]
mod tests {
    use super::build::*;
    use super::*;

    fn load(rel: &str) -> CombMap {
        let path = format!("{}/../../data/{rel}", env!("CARGO_MANIFEST_DIR"));
        let text = std::fs::read_to_string(&path).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        serde_json::from_value(v).unwrap()
    }

    fn hexagon_with_legs() -> CombMap {
        // Interior 6-cycle u1..u6 (alternating colors), leg from u_k to boundary k.
        let mut ed = MapEditor::new(6);
        let us: Vec<usize> = (0..6).map(|k| ed.add_vertex(if k % 2 == 0 { Color::White } else { Color::Black })).collect();
        let mut legs = vec![];
        for k in 0..6 {
            let c = ed.color(us[k]);
            ed.set_color(k + 1, c.flip());
            legs.push(ed.add_edge(k + 1, us[k], 1));
        }
        let cyc: Vec<usize> = (0..6).map(|k| ed.add_edge(us[k], us[(k + 1) % 6], 1)).collect();
        for k in 0..6 {
            ed.rotation[k].push(legs[k]);
            // Clockwise at u_k: leg (outward), next cycle edge, previous cycle edge.
            ed.rotation[us[k] - 1] = vec![legs[k], cyc[k], cyc[(k + 5) % 6]];
        }
        ed.finish().unwrap()
    }

    #[test]
    fn face_examples() {
        let t = star(3, &[1, 2, 3], Color::White);
        let f = t.faces();
        assert_eq!(f.iter().filter(|x| x.outer).count(), 1);
        assert_eq!(f.len(), 4);
        assert!(t.interior_faces().is_empty());

        let h = hexagon_with_legs();
        let inner = h.interior_faces();
        assert_eq!(inner.len(), 1);
        assert_eq!(inner[0].side_count(), 6);

        let empty = MapEditor::new(8).finish().unwrap();
        let f = empty.faces();
        assert_eq!(f.len(), 2);
        assert_eq!(f.iter().filter(|x| x.outer).count(), 1);
    }

    #[test]
    fn non_planar_rotation_rejected() {
        let h = hexagon_with_legs();
        let mut ed = MapEditor::from_map(&h);
        let id = 7;
        ed.rotation[id - 1].swap(1, 2);
        assert!(ed.finish().is_err());
    }

    #[test]
    fn components_examples() {
        assert_eq!(star(3, &[1, 2, 3], Color::White).components_and_cycles(), (1, 0));
        let two = stars(6, &[(&[1, 2, 3], Color::White), (&[4, 5, 6], Color::White)]);
        assert_eq!(two.components_and_cycles(), (2, 0));
        assert_eq!(load("atlas/W1.json").components_and_cycles(), (1, 3));
    }

    #[test]
    fn dihedral_group_laws() {
        for n in [3, 8, 12] {
            let all = Dihedral::all(n);
            assert_eq!(all.len(), 2 * n);
            for g in &all {
                assert_eq!(g.compose(&g.inverse(n), n), Dihedral::IDENTITY);
            }
        }
        // tau^5 after rho sends 2 -> 2 and 8 -> 4 on 8 labels.
        let g = Dihedral { shift: 5, reflect: true };
        assert_eq!(g.apply(2, 8), 2);
        assert_eq!(g.apply(8, 8), 4);
    }

    #[test]
    fn canonical_code_examples() {
        let a = star(8, &[1, 2, 3], Color::White);
        let b = star(8, &[2, 3, 4], Color::White);
        assert_eq!(a.canonical_code(), b.canonical_code());
        assert_ne!(a.labeled_code(), b.labeled_code());
        let c = star(8, &[1, 2, 4], Color::White);
        assert_ne!(a.canonical_code(), c.canonical_code());
        let w = load("atlas/W21.json");
        for k in 0..12 {
            assert_eq!(w.rotate(k).canonical_code(), w.canonical_code());
            assert_eq!(w.rotate(k).reflect().canonical_code(), w.canonical_code());
        }
    }

    #[test]
    fn relabel_preserves_face_sizes() {
        let w = load("atlas/W1.json");
        let sizes = |g: &CombMap| {
            let mut s: Vec<usize> = g.faces().iter().map(|f| f.side_count()).collect();
            s.sort();
            s
        };
        assert_eq!(sizes(&w), sizes(&w.rotate(5)));
        assert_eq!(sizes(&w), sizes(&w.reflect()));
        assert_eq!(w.reflect().reflect(), w);
        assert_eq!(w.rotate(12), w);
    }

    #[test]
    fn atlas_codes_are_distinct_and_orbits_sum() {
        let mut codes = vec![];
        let mut total = 0;
        for i in 1..=32 {
            let w = load(&format!("atlas/W{i}.json"));
            codes.push(w.canonical_code());
            total += w.orbit_size();
        }
        codes.sort();
        codes.dedup();
        assert_eq!(codes.len(), 32);
        assert_eq!(total, 462);
    }

    #[test]
    fn json_roundtrip() {
        let w = load("atlas/W7.json");
        let s = serde_json::to_string(&w).unwrap();
        let back: CombMap = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
    }
}
