use dhb::atlas::{basic_map, BasicMapId};
use dhb::compose::*;
use dhb::map::FixedPointVector;

#[test]
fn g1g() {
    let m = eval_str("G(1)G").unwrap();
    assert_eq!(m.n(), 84);
    assert_eq!(m.w_cycles().cycle_type().lengths(), &[1, 1, 1, 1, 2, 13, 13, 13, 13, 26]);
    assert_eq!(m.fixed_point_vector(), FixedPointVector::new(8, 0, 0));
}

#[test]
fn l2m() {
    let m = eval_str("L(2)M").unwrap();
    assert_eq!(m.n(), 210);
    assert_eq!(m.w_cycles().cycle_type().lengths(), &[1, 12, 14, 26, 42, 57, 58]);
    assert_eq!(m.prime_set().into_iter().collect::<Vec<_>>(), vec![2, 3, 7, 13, 19, 29]);
    assert_eq!(m.fixed_point_vector(), FixedPointVector::new(2, 0, 7));
    assert_eq!(m.genus().unwrap(), 0);
}

#[test]
fn self_join_raises_genus() {
    let g = basic_map(BasicMapId::G);
    let h = g.handles(1);
    let m = self_join(g, &h[0], &h[1]).unwrap();
    assert_eq!(m.n(), 42);
    assert_eq!(m.genus().unwrap(), 1);
    assert_eq!(m.fixed_point_vector(), FixedPointVector::new(2, 0, 0));
}

#[test]
fn merge_law_on_example_joins() {
    let g = basic_map(BasicMapId::G);
    let h = g.handles(1)[0];
    let m = k_compose(g, &h, g, &h).unwrap();
    assert!(merge_law_check(g, &h, g, &h, &m).passed);
    assert!(useful_persists(&[(g, 0), (g, 42)], &m));
}

#[test]
fn repeat_and_grouping() {
    assert_eq!(eval_str("G(1)G(1)G").unwrap(), eval_str("3G").unwrap());
    assert!(parse_expr("G(1)(G(1)G)").is_err());
    assert!(parse_expr("0G").is_err());
}

#[test]
fn parse_errors_have_positions() {
    let pos = |s: &str| match parse_expr(s) {
        Err(ComposeError::Parse { pos, .. }) => pos,
        other => panic!("{s:?}: {other:?}"),
    };
    assert_eq!(pos("L(2"), 3);
    assert_eq!(pos("L(4)M"), 2);
    assert_eq!(pos("O"), 0);
    assert_eq!(pos(""), 0);
    assert_eq!(pos("G(1)"), 4);
}

#[test]
fn missing_handle_is_reported() {
    // A has no (2)-handle
    assert!(matches!(eval_str("A(2)E"), Err(ComposeError::NoHandle { k: 2, .. })));
}
