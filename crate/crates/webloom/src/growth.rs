//! Growth of hourglass plabic graphs from 4-row rectangular tableaux.
//!
//! Strands labelled by the lattice word hang from the top boundary. Local
//! rewriting rules cap adjacent strands off or cross them, recording a
//! 4-valent crossing. When the frontier is empty each crossing becomes a
//! white vertex, a black vertex or a white-black hourglass pair according to
//! the orientation of its four ends, and the split boundary strands of each
//! letter are gathered back into one boundary vertex.
//!
//! Labels are signed: `k` is an unbarred strand of row `k` (oriented away
//! from the boundary), `-k` is the barred strand (oriented towards it).

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hourglass::HourglassGraph;
use crate::planar_map::{Color, MapEditor};
use crate::tableaux::RectTableau;

/// A signed strand label in `{±1, ±2, ±3, ±4}`.
pub type Label = i8;

/// Which neighbour of the rewritten pair a witness condition inspects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
}

/// Witness condition of a crossing rule. Starting next to the pair on
/// `side`, any number of strands labelled from `run` may be skipped, and the
/// following strand must carry a label from `accept`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub side: Side,
    pub run: Option<Vec<Label>>,
    pub accept: Vec<Label>,
}

/// One growth rule acting on two adjacent frontier strands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    Cap { family: usize, pair: [Label; 2] },
    Cross { family: usize, top: [Label; 2], bottom: [Label; 2], witness: Option<Witness> },
}

impl Rule {
    pub fn family(&self) -> usize {
        match self {
            Rule::Cap { family, .. } | Rule::Cross { family, .. } => *family,
        }
    }

    /// True for the rules whose witness may be preceded by a run of strands.
    pub fn is_long(&self) -> bool {
        matches!(self, Rule::Cross { witness: Some(Witness { run: Some(_), .. }), .. })
    }

    /// Number of elementary rules this entry stands for: one per admissible
    /// witness label.
    pub fn weight(&self) -> usize {
        match self {
            Rule::Cross { witness: Some(w), .. } => w.accept.len(),
            _ => 1,
        }
    }
}

#[derive(Deserialize)]
struct RuleJson {
    family: usize,
    #[serde(default)]
    cap: Option<[Label; 2]>,
    #[serde(default)]
    top: Option<[Label; 2]>,
    #[serde(default)]
    bottom: Option<[Label; 2]>,
    #[serde(default)]
    side: Option<Side>,
    #[serde(default)]
    witness: Option<Vec<Label>>,
    #[serde(default)]
    run: Option<Vec<Label>>,
}

impl RuleJson {
    fn into_rule(self) -> Rule {
        if let Some(pair) = self.cap {
            return Rule::Cap { family: self.family, pair };
        }
        let witness = self.witness.map(|accept| Witness { side: self.side.expect("witness side"), run: self.run, accept });
        Rule::Cross {
            family: self.family,
            top: self.top.expect("crossing top"),
            bottom: self.bottom.expect("crossing bottom"),
            witness,
        }
    }
}

const RULES_JSON: &str = include_str!("growth_rules.json");

/// The rule table in application order: caps, plain crossings, crossings
/// with a single witness, then crossings with a witness run.
pub fn rule_table() -> &'static [Rule] {
    static TABLE: OnceLock<Vec<Rule>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let raw: Vec<RuleJson> = serde_json::from_str(RULES_JSON).expect("embedded growth rules parse");
        raw.into_iter().map(RuleJson::into_rule).collect()
    })
}

/// Number of elementary rules outside the two long families.
pub fn short_rule_count() -> usize {
    rule_table().iter().filter(|r| !r.is_long()).map(Rule::weight).sum()
}

/// Corner of a crossing, listed clockwise from the top left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Corner {
    TL,
    TR,
    BR,
    BL,
}

const CORNERS: [Corner; 4] = [Corner::TL, Corner::TR, Corner::BR, Corner::BL];

/// Where the upper end of a frontier strand is attached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Port {
    /// Split boundary position (0-based standardized label).
    Boundary(usize),
    Crossing(usize, Corner),
}

#[derive(Debug, Clone, Copy)]
struct Strand {
    label: Label,
    port: Port,
}

#[derive(Debug, Clone)]
struct Crossing {
    top: [Label; 2],
    bottom: [Label; 2],
}

impl Crossing {
    /// True when the strand at this corner points into the crossing.
    fn is_in(&self, c: Corner) -> bool {
        match c {
            Corner::TL => self.top[0] > 0,
            Corner::TR => self.top[1] > 0,
            Corner::BL => self.bottom[0] < 0,
            Corner::BR => self.bottom[1] < 0,
        }
    }
}

/// Local realization of a crossing in the hourglass graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossingKind {
    White,
    Black,
    /// White vertex holding the two inward ends starting at corner `first_in`
    /// (clockwise), joined by an hourglass to a black vertex holding the rest.
    Hourglass { first_in: Corner },
}

/// Classify a crossing from its top and bottom labels.
pub fn resolve_crossing(top: [Label; 2], bottom: [Label; 2]) -> Result<CrossingKind> {
    let x = Crossing { top, bottom };
    let ins: Vec<bool> = CORNERS.iter().map(|&c| x.is_in(c)).collect();
    let count = ins.iter().filter(|&&b| b).count();
    match count {
        4 => Ok(CrossingKind::White),
        0 => Ok(CrossingKind::Black),
        2 => (0..4)
            .find(|&i| ins[i] && ins[(i + 1) % 4])
            .map(|i| CrossingKind::Hourglass { first_in: CORNERS[i] })
            .ok_or_else(|| Error::Crossing(format!("{top:?} over {bottom:?} alternates in and out"))),
        _ => Err(Error::Crossing(format!("{top:?} over {bottom:?} has {count} inward ends"))),
    }
}

/// One recorded rule application.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub pass: usize,
    pub position: usize,
    pub rule: usize,
    pub family: usize,
    pub frontier: Vec<Label>,
}

/// Result of growth: the hourglass graph and the rule applications in order.
#[derive(Debug, Clone)]
pub struct Growth {
    pub graph: HourglassGraph,
    pub trace: Vec<TraceStep>,
}

struct Frontier {
    strands: Vec<Strand>,
    crossings: Vec<Crossing>,
    segments: Vec<(Port, Port)>,
}

impl Frontier {
    fn labels(&self) -> Vec<Label> {
        self.strands.iter().map(|s| s.label).collect()
    }

    fn witness_ok(&self, p: usize, w: &Witness) -> bool {
        let labels = self.labels();
        let mut k: isize = match w.side {
            Side::R => p as isize + 2,
            Side::L => p as isize - 1,
        };
        let step: isize = if w.side == Side::R { 1 } else { -1 };
        let at = |k: isize| (k >= 0 && (k as usize) < labels.len()).then(|| labels[k as usize]);
        if let Some(run) = &w.run {
            while let Some(l) = at(k) {
                if !run.contains(&l) {
                    break;
                }
                k += step;
            }
        }
        at(k).is_some_and(|l| w.accept.contains(&l))
    }

    fn matches(&self, p: usize, rule: &Rule) -> bool {
        let pair = [self.strands[p].label, self.strands[p + 1].label];
        match rule {
            Rule::Cap { pair: lhs, .. } => pair == *lhs,
            Rule::Cross { top, witness, .. } => pair == *top && witness.as_ref().is_none_or(|w| self.witness_ok(p, w)),
        }
    }

    fn apply(&mut self, p: usize, rule: &Rule) {
        let (l, r) = (self.strands[p], self.strands[p + 1]);
        match rule {
            Rule::Cap { .. } => {
                self.segments.push((l.port, r.port));
                self.strands.drain(p..p + 2);
            }
            Rule::Cross { top, bottom, .. } => {
                let id = self.crossings.len();
                self.crossings.push(Crossing { top: *top, bottom: *bottom });
                self.segments.push((l.port, Port::Crossing(id, Corner::TL)));
                self.segments.push((r.port, Port::Crossing(id, Corner::TR)));
                self.strands[p] = Strand { label: bottom[0], port: Port::Crossing(id, Corner::BL) };
                self.strands[p + 1] = Strand { label: bottom[1], port: Port::Crossing(id, Corner::BR) };
            }
        }
    }
}

fn show(labels: &[Label]) -> String {
    labels.iter().map(|l| if *l < 0 { format!("{}'", -l) } else { l.to_string() }).collect::<Vec<_>>().join(" ")
}

/// Grow the hourglass plabic graph of a 4-row rectangular tableau.
///
/// A semistandard tableau is standardized first; the split strands of one
/// letter hang in increasing standardized order from left to right and are
/// gathered into one boundary vertex at the end.
pub fn grow(t: &RectTableau) -> Result<Growth> {
    let (a, b) = t.shape();
    if a != 4 {
        return Err(Error::FourRowsOnly);
    }
    let std = t.standardize();
    let ab = a * b;
    let mut row_of = vec![0usize; ab];
    let mut letter_of = vec![0usize; ab];
    for r in 0..a {
        for c in 0..b {
            row_of[std.get(r, c) - 1] = r + 1;
            letter_of[std.get(r, c) - 1] = t.get(r, c);
        }
    }
    let mut fr = Frontier {
        strands: (0..ab).map(|k| Strand { label: row_of[k] as Label, port: Port::Boundary(k) }).collect(),
        crossings: Vec::new(),
        segments: Vec::new(),
    };
    let rules = rule_table();
    let cap = 10 * ab * ab;
    let mut trace = Vec::new();
    let mut pass = 0;
    while !fr.strands.is_empty() {
        pass += 1;
        let mut applied = false;
        let mut p = 0;
        while p + 1 < fr.strands.len() {
            match rules.iter().position(|r| fr.matches(p, r)) {
                Some(ri) => {
                    fr.apply(p, &rules[ri]);
                    applied = true;
                    trace.push(TraceStep { pass, position: p, rule: ri, family: rules[ri].family(), frontier: fr.labels() });
                    if trace.len() > cap {
                        return Err(Error::StuckFrontier(format!("more than {cap} rule applications")));
                    }
                    if matches!(rules[ri], Rule::Cross { .. }) {
                        p += 2;
                    }
                }
                None => p += 1,
            }
        }
        if !applied {
            return Err(Error::StuckFrontier(show(&fr.labels())));
        }
    }
    let graph = assemble(&fr, &letter_of)?;
    Ok(Growth { graph, trace })
}

/// Build the hourglass graph from the finished crossing diagram.
fn assemble(fr: &Frontier, letter_of: &[usize]) -> Result<HourglassGraph> {
    let n = *letter_of.iter().max().unwrap_or(&0);
    let mut ed = MapEditor::new(n);
    // vertex and rotation slot of every port; hourglass edges are added directly
    let mut port_vertex: std::collections::HashMap<Port, usize> = std::collections::HashMap::new();
    let mut rotation_ports: Vec<Vec<Option<Port>>> = vec![Vec::new(); n];
    let mut hourglass_slots: Vec<(usize, usize)> = Vec::new();
    for (k, &letter) in letter_of.iter().enumerate() {
        port_vertex.insert(Port::Boundary(k), letter);
        // the rightmost split strand comes first clockwise
        rotation_ports[letter - 1].insert(0, Some(Port::Boundary(k)));
    }
    for (id, x) in fr.crossings.iter().enumerate() {
        let port = |c: Corner| Some(Port::Crossing(id, c));
        match resolve_crossing(x.top, x.bottom)? {
            kind @ (CrossingKind::White | CrossingKind::Black) => {
                let v = ed.add_vertex(if kind == CrossingKind::White { Color::White } else { Color::Black });
                for c in CORNERS {
                    port_vertex.insert(Port::Crossing(id, c), v);
                }
                rotation_ports.push(CORNERS.iter().map(|&c| port(c)).collect());
            }
            CrossingKind::Hourglass { first_in } => {
                let i = CORNERS.iter().position(|&c| c == first_in).unwrap();
                let w = ed.add_vertex(Color::White);
                let bl = ed.add_vertex(Color::Black);
                let corner = |j: usize| CORNERS[(i + j) % 4];
                for j in 0..2 {
                    port_vertex.insert(Port::Crossing(id, corner(j)), w);
                    port_vertex.insert(Port::Crossing(id, corner(j + 2)), bl);
                }
                rotation_ports.push(vec![port(corner(0)), port(corner(1)), None]);
                rotation_ports.push(vec![port(corner(2)), port(corner(3)), None]);
                hourglass_slots.push((w, bl));
            }
        }
    }
    let mut port_edge: std::collections::HashMap<Port, usize> = std::collections::HashMap::new();
    for &(p, q) in &fr.segments {
        let k = ed.add_edge(port_vertex[&p], port_vertex[&q], 1);
        port_edge.insert(p, k);
        port_edge.insert(q, k);
    }
    let mut hourglass_edge = std::collections::HashMap::new();
    for &(w, bl) in &hourglass_slots {
        let k = ed.add_edge(w, bl, 2);
        hourglass_edge.insert(w, k);
        hourglass_edge.insert(bl, k);
    }
    for (v0, ports) in rotation_ports.iter().enumerate() {
        ed.rotation[v0] = ports.iter().map(|p| p.map_or_else(|| hourglass_edge[&(v0 + 1)], |p| port_edge[&p])).collect();
    }
    merge_boundary_bundles(&mut ed);
    HourglassGraph::validate(ed.finish()?)
}

/// Merge consecutive boundary edges that end at the same vertex and are
/// consecutive there too into one edge of higher multiplicity.
fn merge_boundary_bundles(ed: &mut MapEditor) {
    loop {
        let mut found = None;
        'outer: for b in 1..=ed.n {
            let rot = ed.rotation[b - 1].clone();
            for w in rot.windows(2) {
                let (e1, e2) = (ed.edge(w[0]), ed.edge(w[1]));
                let (x1, x2) = (e1.other(b), e2.other(b));
                if x1 != x2 {
                    continue;
                }
                let at = &ed.rotation[x1 - 1];
                let i = at.iter().position(|&k| k == w[1]).unwrap();
                if at[(i + 1) % at.len()] == w[0] {
                    found = Some((w[0], w[1]));
                    break 'outer;
                }
            }
        }
        let Some((keep, gone)) = found else { return };
        let m = ed.edge(gone).m;
        if let Some(e) = ed.edges[keep].as_mut() {
            e.m += m;
        }
        ed.remove_edge(gone);
    }
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pass {} pos {} rule {} (family {}): {}", self.pass, self.position, self.rule, self.family, show(&self.frontier))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::all_standard;

    #[test]
    fn rule_table_counts() {
        let t = rule_table();
        assert_eq!(t.len(), 44);
        assert_eq!(short_rule_count(), 88);
        assert_eq!(t.iter().filter(|r| r.is_long()).count(), 8);
        let mut families: Vec<usize> = t.iter().map(Rule::family).collect();
        families.dedup();
        assert_eq!(families, (0..12).collect::<Vec<_>>());
    }

    #[test]
    fn crossing_classes() {
        assert_eq!(resolve_crossing([1, 2], [-3, -4]).unwrap(), CrossingKind::White);
        assert_eq!(resolve_crossing([-2, -1], [4, 3]).unwrap(), CrossingKind::Black);
        assert_eq!(resolve_crossing([1, 2], [2, 1]).unwrap(), CrossingKind::Hourglass { first_in: Corner::TL });
        assert_eq!(resolve_crossing([1, -2], [-2, 1]).unwrap(), CrossingKind::Hourglass { first_in: Corner::BL });
        assert!(resolve_crossing([1, -2], [2, -1]).is_err());
        assert!(resolve_crossing([1, 2], [-3, 4]).is_err());
    }

    #[test]
    fn column_grows_single_white_vertex() {
        let t = RectTableau::parse_short("1,2,3,4").unwrap();
        let g = grow(&t).unwrap().graph;
        assert_eq!(g.map().vertex_count(), 5);
        assert_eq!(g.map().color(5), Color::White);
        assert_eq!(g.map().rotation(5).len(), 4);
    }

    #[test]
    fn worked_example_trips() {
        let t = RectTableau::parse_short("14,25,37,68").unwrap();
        let g = grow(&t).unwrap().graph;
        let trips: Vec<String> = g.trip_perms().unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(trips, ["23756184", "37168425", "61284537"]);
    }

    #[test]
    fn two_columns_exhaustive() {
        for t in all_standard(4, 2) {
            let g = grow(&t).unwrap().graph;
            assert_eq!(g.trip_perms().unwrap(), t.prom_perms().unwrap(), "{}", t.short());
        }
    }

    #[test]
    fn three_columns_exhaustive() {
        let all = all_standard(4, 3);
        assert_eq!(all.len(), 462);
        for t in all {
            let g = grow(&t).unwrap().graph;
            assert_eq!(g.trip_perms().unwrap(), t.prom_perms().unwrap(), "{}", t.short());
            assert_eq!(g.standard_tableau().unwrap(), t);
        }
    }

    #[test]
    fn semistandard_catalog_tableaux() {
        for s in ["11,24,36,57", "112,234,366,578", "113,225,447,668"] {
            let t = RectTableau::parse_short(s).unwrap();
            let g = grow(&t).unwrap().graph;
            assert_eq!(g.trip_perms().unwrap(), t.standardize().prom_perms().unwrap(), "{s}");
            assert_eq!(g.tableau_of().unwrap(), t, "{s}");
        }
    }

    #[test]
    fn non_four_row_shape_rejected() {
        let t = RectTableau::parse_short("12,34,56").unwrap();
        assert!(matches!(grow(&t), Err(Error::FourRowsOnly)));
    }
}
