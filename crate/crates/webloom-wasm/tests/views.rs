use webloom_wasm::{dual_view, growth_view, tableau_report};

#[test]
fn report_lists_promotion_permutations() {
    let r = tableau_report("14,25,37,68").unwrap();
    assert!(r.contains("prom1: 23756184"));
    assert!(r.contains("prom3: 61284537"));
}

#[test]
fn growth_view_has_svg_and_trips() {
    let v = growth_view("14,25,37,68").unwrap();
    assert!(v.contains("<svg") && v.contains("</svg>"));
    assert!(v.contains("trip1: 23756184"));
    assert_eq!(growth_view("12,34,56").unwrap_err(), "4-row shapes only");
}

#[test]
fn dual_view_of_cubic_and_quadratic() {
    let cubic = "-P[2345]P[1357]P[1678] -P[2345]P[1378]P[1567] +P[2357]P[1367]P[1458] -P[1235]P[3457]P[1678]";
    let v = dual_view(cubic).unwrap();
    assert_eq!(v.matches("<figure>").count(), 1);
    assert!(v.contains("coefficient 1"));
    let quadratic = "P[1357]P[2468] - P[1358]P[2467]";
    assert!(dual_view(quadratic).unwrap().contains("<svg"));
    assert!(dual_view("P[12").is_err());
}
