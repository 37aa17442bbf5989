use webloom::render::render_map;
use webloom::{load_catalog, RenderSpec};

#[test]
fn doubled_edge_is_drawn_as_one_bowtie() {
    let entry = load_catalog().unwrap().into_iter().find(|e| e.id == "q3").unwrap();
    let svg = render_map(entry.hourglass.map(), &RenderSpec::default());
    // one bowtie is two crossing strands and carries no multiplicity label
    assert_eq!(svg.matches("<polyline").count(), 2);
    let simple = entry.hourglass.map().edges().iter().filter(|e| e.m == 1).count();
    assert_eq!(svg.matches("<line").count(), simple);
}

#[test]
fn every_catalog_graph_renders() {
    for entry in load_catalog().unwrap() {
        let svg = render_map(entry.hourglass.map(), &RenderSpec::default());
        let doubled = entry.hourglass.map().edges().iter().filter(|e| e.m == 2).count();
        assert_eq!(svg.matches("<polyline").count(), 2 * doubled, "{}", entry.id);
        assert_eq!(svg.matches("<circle").count(), entry.hourglass.map().vertex_count() + 1, "{}", entry.id);
    }
}
