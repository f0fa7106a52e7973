use reflekt::presentations::tables::{table5, table6};
use reflekt::presentations::{
    apply_rule, coset_enumerate, diagram_presentation, imprimitive_diagram, parse_rule,
    standard_diagram, Diagram, RewriteRule, DEFAULT_MAX_COSETS,
};
use reflekt::Error;

fn order_of(text: &str) -> usize {
    let (d, _) = Diagram::parse(text).unwrap();
    coset_enumerate(&diagram_presentation(&d).unwrap(), DEFAULT_MAX_COSETS).unwrap()
}

#[test]
fn coxeter_orders() {
    assert_eq!(order_of("node s 2; node t 2; bond s t 5"), 10);
    assert_eq!(order_of("node a 2\nnode b 2\nnode c 2\nbond a b 3\nbond b c 4"), 48);
    assert_eq!(order_of("node a 2; node b 2; node c 2; bond a b 3; bond b c 5"), 120);
    // unlinked nodes commute
    assert_eq!(order_of("node a 3; node b 5"), 15);
    assert_eq!(order_of("node s 3; node t 3; bond s t 3"), 24);
}

#[test]
fn twisted_orders() {
    for (e, f, order) in [(3, 3, 48), (4, 3, 96), (5, 3, 240)] {
        let text = format!("node s 2; node t 2; node u 2; twisted s t u e={e} f={f}");
        assert_eq!(order_of(&text), order, "e={e} f={f}");
    }
}

#[test]
fn imprimitive_family_orders() {
    for (m, p, n, order) in [(4, 2, 2, 16), (6, 3, 2, 24), (4, 2, 3, 192), (4, 4, 3, 96), (3, 1, 3, 162)] {
        let r = imprimitive_diagram(m, p, n).unwrap();
        assert_eq!(r.group.order(), order, "G({m},{p},{n})");
        let c = coset_enumerate(&diagram_presentation(&r.diagram).unwrap(), DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(c, order, "G({m},{p},{n})");
    }
}

#[test]
fn standard_diagrams_present_their_groups() {
    for name in ["A3", "B3", "H3", "G12", "G13"] {
        let r = standard_diagram(name).unwrap();
        let c = coset_enumerate(&diagram_presentation(&r.diagram).unwrap(), DEFAULT_MAX_COSETS).unwrap();
        assert_eq!(c, r.group.order(), "{name}");
    }
}

#[test]
fn display_round_trips() {
    let r = standard_diagram("G(4,2,4)").unwrap();
    let (d, _) = Diagram::parse(&r.diagram.to_string()).unwrap();
    assert_eq!(d.to_string(), r.diagram.to_string());
}

#[test]
fn rules_classify_and_apply() {
    let (d, rules) = Diagram::parse("node s 2; node t 2; node u 2; bond s t 3; bond t u 4; rule t u t u = u t u t").unwrap();
    assert_eq!(rules, vec!["tutu=utut".to_string()]);
    assert!(matches!(parse_rule(&d, "st=ts").unwrap(), RewriteRule::Commute(..)));
    assert!(matches!(parse_rule(&d, "s=t").unwrap(), RewriteRule::Identify(..)));
    assert!(matches!(parse_rule(&d, "tutu=utut").unwrap(), RewriteRule::Braid(..)));
    assert!(matches!(parse_rule(&d, "stu=uts").unwrap(), RewriteRule::Relation(..)));
    // B3 with t u = u t falls apart into A2 and a node
    let (d2, p) = apply_rule(&d, &parse_rule(&d, "tu=ut").unwrap()).unwrap();
    assert_eq!(coset_enumerate(&p, DEFAULT_MAX_COSETS).unwrap(), 12);
    assert_eq!(coset_enumerate(&diagram_presentation(&d2).unwrap(), DEFAULT_MAX_COSETS).unwrap(), 12);
}

#[test]
fn malformed_input_is_rejected() {
    for text in [
        "node s 2; bond s t 3",
        "node s 2; node s 3",
        "node s 2; node t 2; bond s t 1",
        "node s two",
        "vertex s 2",
    ] {
        assert!(matches!(Diagram::parse(text), Err(Error::MalformedDiagram(_))), "{text}");
    }
    let (d, _) = Diagram::parse("node s 2; node t 2; bond s t 3").unwrap();
    assert!(matches!(parse_rule(&d, "sx=xs"), Err(Error::RuleMismatch(_))));
    assert!(matches!(parse_rule(&d, "st"), Err(Error::RuleMismatch(_))));
}

#[test]
fn rank_three_and_four_table() {
    let rows = table5(3);
    let bad: Vec<_> = rows.iter().filter(|r| !r.ok).collect();
    assert!(bad.is_empty(), "{bad:#?}");
    assert!(rows.iter().filter(|r| r.skipped.is_none()).count() >= 8);
}

#[test]
fn rank_two_table() {
    let rows = table6(3);
    let bad: Vec<_> = rows.iter().filter(|r| !r.ok).collect();
    assert!(bad.is_empty(), "{bad:#?}");
    assert!(rows.len() > 20);
}
