//! Plabic graphs, zigzag paths, dimer configurations, their superimpositions
//! and the reduction of a triple dimer configuration to an sl3 web.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::planar_map::{Color, CombMap, MapEditor};
use crate::webs::Web;

/// A planar bicolored graph whose boundary vertices are black of degree one
/// and whose interior vertices all reach the boundary.
#[derive(Debug, Clone)]
pub struct PlabicGraph {
    map: CombMap,
}

impl PlabicGraph {
    pub fn new(map: CombMap) -> Result<PlabicGraph> {
        for i in 1..=map.n() {
            if map.color(i) != Color::Black || map.degree(i) != 1 {
                return Err(Error::Map(format!("boundary vertex {i} must be black of degree one")));
            }
        }
        let mut seen = vec![false; map.vertex_count() + 1];
        let mut stack: Vec<usize> = (1..=map.n()).collect();
        while let Some(v) = stack.pop() {
            if std::mem::replace(&mut seen[v], true) {
                continue;
            }
            stack.extend(map.neighbors(v));
        }
        if let Some(v) = map.interior_ids().find(|&v| !seen[v]) {
            return Err(Error::Map(format!("interior vertex {v} is not connected to the boundary")));
        }
        Ok(PlabicGraph { map })
    }

    pub fn map(&self) -> &CombMap {
        &self.map
    }

    pub fn n(&self) -> usize {
        self.map.n()
    }

    /// Follow the strand from boundary vertex `start`, turning to the next
    /// clockwise edge at white vertices and the next counterclockwise edge at
    /// black ones. Returns the terminal boundary label and the vertices
    /// visited.
    pub fn zigzag(&self, start: usize) -> Result<(usize, Vec<usize>)> {
        let g = &self.map;
        if start == 0 || start > g.n() {
            return Err(Error::Map(format!("{start} is not a boundary label")));
        }
        let mut path = vec![start];
        let mut edge = g.rotation(start)[0];
        let mut at = g.edge(edge).other(start);
        for _ in 0..=2 * g.edges().len() {
            path.push(at);
            if g.is_boundary(at) {
                return Ok((at, path));
            }
            let rot = g.rotation(at);
            let d = rot.len();
            let p = rot.iter().position(|&k| k == edge).expect("edge is incident");
            let q = match g.color(at) {
                Color::White => (p + 1) % d,
                Color::Black => (p + d - 1) % d,
            };
            edge = rot[q];
            at = g.edge(edge).other(at);
        }
        Err(Error::Map(format!("strand from {start} does not terminate")))
    }

    /// Terminal labels of the strands from `1..=n`, indexed by start - 1.
    pub fn zigzag_permutation(&self) -> Result<Vec<usize>> {
        (1..=self.n()).map(|i| self.zigzag(i).map(|t| t.0)).collect()
    }
}

/// A set of edges covering each interior vertex exactly once and each
/// boundary vertex at most once.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DimerConfig {
    pub edges: Vec<usize>,
}

impl DimerConfig {
    pub fn new(g: &PlabicGraph, mut edges: Vec<usize>) -> Result<DimerConfig> {
        edges.sort_unstable();
        let mut cover = vec![0usize; g.map.vertex_count() + 1];
        for &k in &edges {
            if k >= g.map.edges().len() {
                return Err(Error::Dimer(format!("edge {k} is not in the graph")));
            }
            let e = g.map.edge(k);
            cover[e.u] += 1;
            cover[e.v] += 1;
        }
        for v in 1..=g.map.vertex_count() {
            let ok = if g.map.is_boundary(v) { cover[v] <= 1 } else { cover[v] == 1 };
            if !ok {
                return Err(Error::Dimer(format!("vertex {v} is covered {} times", cover[v])));
            }
        }
        Ok(DimerConfig { edges })
    }

    /// Boundary labels covered by the configuration.
    pub fn boundary(&self, g: &PlabicGraph) -> Vec<usize> {
        let mut out: Vec<usize> = self.edges.iter().flat_map(|&k| [g.map.edge(k).u, g.map.edge(k).v]).filter(|&v| g.map.is_boundary(v)).collect();
        out.sort_unstable();
        out
    }
}

/// All dimer configurations whose covered boundary set is exactly `boundary`.
pub fn enumerate_dimers(g: &PlabicGraph, boundary: &[usize]) -> Vec<DimerConfig> {
    let m = &g.map;
    let mut covered = vec![false; m.vertex_count() + 1];
    let mut chosen = Vec::new();
    for i in 1..=m.n() {
        if boundary.contains(&i) {
            let k = m.rotation(i)[0];
            let w = m.edge(k).other(i);
            if covered[w] || m.is_boundary(w) {
                return Vec::new();
            }
            covered[w] = true;
            covered[i] = true;
            chosen.push(k);
        } else {
            // excluded boundary vertices are blocked
            covered[i] = true;
        }
    }
    fn rec(m: &CombMap, covered: &mut Vec<bool>, chosen: &mut Vec<usize>, out: &mut Vec<DimerConfig>) {
        // the uncovered interior vertex with the fewest options
        let mut best: Option<(usize, Vec<usize>)> = None;
        for v in m.interior_ids() {
            if covered[v] {
                continue;
            }
            let opts: Vec<usize> = m.rotation(v).iter().copied().filter(|&k| !covered[m.edge(k).other(v)]).collect();
            if best.as_ref().is_none_or(|b| opts.len() < b.1.len()) {
                let empty = opts.is_empty();
                best = Some((v, opts));
                if empty {
                    break;
                }
            }
        }
        let Some((v, opts)) = best else {
            let mut edges = chosen.clone();
            edges.sort_unstable();
            out.push(DimerConfig { edges });
            return;
        };
        for k in opts {
            let w = m.edge(k).other(v);
            covered[v] = true;
            covered[w] = true;
            chosen.push(k);
            rec(m, covered, chosen, out);
            chosen.pop();
            covered[v] = false;
            covered[w] = false;
        }
    }
    let mut out = Vec::new();
    rec(m, &mut covered, &mut chosen, &mut out);
    out.sort();
    out
}

/// Dimer configurations for every boundary subset of size `k`, keyed by the
/// subset.
pub fn enumerate_all_dimers(g: &PlabicGraph, k: usize) -> BTreeMap<Vec<usize>, Vec<DimerConfig>> {
    let n = g.n();
    let subsets: Vec<Vec<usize>> = (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (1..=n).filter(|&i| m >> (i - 1) & 1 == 1).collect()).collect();
    subsets
        .into_par_iter()
        .map(|s| {
            let d = enumerate_dimers(g, &s);
            (s, d)
        })
        .filter(|(_, d)| !d.is_empty())
        .collect()
}

/// Edge multiplicities of a superimposition of `fold` dimer configurations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiDimer {
    pub multiplicity: Vec<usize>,
    pub fold: usize,
}

pub fn superimpose(g: &PlabicGraph, ds: &[DimerConfig]) -> Result<MultiDimer> {
    let mut multiplicity = vec![0; g.map.edges().len()];
    for d in ds {
        for &k in &d.edges {
            *multiplicity.get_mut(k).ok_or_else(|| Error::Dimer(format!("edge {k} is not in the graph")))? += 1;
        }
    }
    Ok(MultiDimer { multiplicity, fold: ds.len() })
}

impl MultiDimer {
    /// Number of chosen edges at each boundary vertex, counted with
    /// multiplicity.
    pub fn boundary_condition(&self, g: &PlabicGraph) -> Vec<usize> {
        (1..=g.n()).map(|i| g.map.rotation(i).iter().map(|&k| self.multiplicity[k]).sum()).collect()
    }
}

/// The web of a triple dimer configuration: boundary vertices met twice are
/// white and once are black, bivalent cycles become loops, bivalent chains
/// between boundary vertices become arrows, and bivalent vertices inside
/// components with a trivalent vertex are contracted. Edges of multiplicity
/// three drop out. Two chains joining the same pair of vertices give a
/// doubled edge, stored as two parallel edges.
pub fn web_of_triple_dimer(g: &PlabicGraph, d: &MultiDimer) -> Result<Web> {
    let m = &g.map;
    if d.fold != 3 || d.multiplicity.len() != m.edges().len() {
        return Err(Error::Dimer(format!("expected a 3-fold configuration on this graph, found fold {}", d.fold)));
    }
    let live = |k: usize| matches!(d.multiplicity[k], 1 | 2);
    let degree = |v: usize| m.rotation(v).iter().filter(|&&k| live(k)).count();
    for v in m.interior_ids() {
        let total: usize = m.rotation(v).iter().map(|&k| d.multiplicity[k]).sum();
        if total != 3 {
            return Err(Error::Dimer(format!("interior vertex {v} is covered {total} times")));
        }
    }
    // web vertices: boundary plus trivalent interior vertices
    let mut ed = MapEditor::new(m.n());
    let lambda = d.boundary_condition(g);
    for i in 1..=m.n() {
        ed.set_color(i, if lambda[i - 1] == 2 { Color::White } else { Color::Black });
    }
    let mut image = vec![0usize; m.vertex_count() + 1];
    for i in 1..=m.n() {
        image[i] = i;
    }
    for v in m.interior_ids() {
        if degree(v) == 3 {
            image[v] = ed.add_vertex(m.color(v));
        }
    }
    let is_end = |v: usize| image[v] != 0;
    // walk each chain from both ends; a chain is identified by its first step
    let mut chain_edge: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut visited = vec![false; m.vertex_count() + 1];
    let mut rotations: Vec<Vec<usize>> = vec![Vec::new(); m.vertex_count() + 1];
    for v in (1..=m.vertex_count()).filter(|&v| is_end(v)) {
        for &k0 in m.rotation(v).iter().filter(|&&k| live(k)) {
            let (mut at, mut k) = (m.edge(k0).other(v), k0);
            while !is_end(at) {
                visited[at] = true;
                k = *m.rotation(at).iter().find(|&&j| j != k && live(j)).expect("bivalent vertex continues");
                at = m.edge(k).other(at);
            }
            let key_here = (v, k0);
            let key_there = (at, k);
            let id = match chain_edge.get(&key_there) {
                Some(&id) => id,
                None => {
                    let id = ed.add_edge(image[v], image[at], 1);
                    chain_edge.insert(key_here, id);
                    id
                }
            };
            rotations[v].push(id);
        }
    }
    for v in (1..=m.vertex_count()).filter(|&v| is_end(v)) {
        ed.rotation[image[v] - 1] = std::mem::take(&mut rotations[v]);
    }
    // remaining bivalent vertices lie on closed cycles
    let mut loops = 0;
    for v in m.interior_ids() {
        if degree(v) != 2 || visited[v] {
            continue;
        }
        loops += 1;
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            if std::mem::replace(&mut visited[x], true) {
                continue;
            }
            stack.extend(m.rotation(x).iter().filter(|&&k| live(k)).map(|&k| m.edge(k).other(x)));
        }
    }
    Web::with_loops(ed.finish()?, loops)
}
