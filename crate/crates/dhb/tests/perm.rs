use dhb::perm::*;
use num_bigint::BigUint;

fn p(text: &str, n: usize) -> Permutation {
    Permutation::parse_cycles(text, n).unwrap()
}

#[test]
fn right_action_products() {
    let a = p("(0 1)", 3);
    let b = p("(1 2)", 3);
    // a first, then b: 0 -> 1 -> 2
    let ab = a.compose(&b).unwrap();
    assert_eq!(ab.apply(0), 2);
    assert_eq!(ab, p("(0 2 1)", 3));
    assert_eq!(b.compose(&a).unwrap(), p("(0 1 2)", 3));
}

#[test]
fn cycle_notation_errors() {
    assert!(Permutation::parse_cycles("(0 1", 3).is_err());
    assert!(Permutation::parse_cycles("(0 0)", 3).is_err());
    assert!(Permutation::parse_cycles("(0 5)", 3).is_err());
    assert!(Permutation::parse_cycles("(0 1)(1 2)", 3).is_err());
    assert!(Permutation::parse_cycles("(a b)", 3).is_err());
    assert_eq!(Permutation::parse_cycles("()", 4).unwrap(), Permutation::identity(4));
}

#[test]
fn invariants_of_small_permutation() {
    let g = p("(0 1 2 3 4 5)(6 7)", 10);
    assert_eq!(g.cycle_type().lengths(), &[1, 1, 2, 6]);
    assert_eq!(g.fixed_points(), 2);
    assert_eq!(g.parity(), Sign::Even);
    assert_eq!(g.order(), BigUint::from(6u32));
    assert_eq!(g.power(6), Permutation::identity(10));
    assert_eq!(g.power(-1), g.inverse());
    assert_eq!(g.num_cycles(), 4);
}

#[test]
fn an_conjugacy_splits_classes() {
    // 5-cycles split into two A_5 classes; (0 1 2 3 4) and its square lie in different ones
    let c = p("(0 1 2 3 4)", 5);
    assert!(!an_conjugate(&c, &c.power(2)).unwrap());
    assert!(an_conjugate(&c, &c.power(4)).unwrap());
    let x = p("(0 1)(2 3)", 5);
    let y = p("(1 4)(0 2)", 5);
    let g = an_conjugator(&x, &y).unwrap().unwrap();
    assert!(g.parity().is_even());
    assert_eq!(x.conjugate_by(&g), y);
    assert!(an_conjugate(&p("(0 1)", 4), &p("(2 3)", 4)).is_err());
}

#[test]
fn stabilizer_chain_orders() {
    let s7 = [p("(0 1)", 7), p("(0 1 2 3 4 5 6)", 7)];
    assert_eq!(group_order(&s7).unwrap(), BigUint::from(5040u32));
    let a7 = [p("(0 1 2)", 7), p("(2 3 4 5 6)", 7)];
    assert_eq!(group_order(&a7).unwrap(), BigUint::from(2520u32));
    // PSL(2,7) on the 7 points of the Fano plane
    let l = [p("(0 1 2 3 4 5 6)", 7), p("(1 2 4)(3 6 5)", 7), p("(0 1)(3 6)", 7)];
    let order = group_order(&l).unwrap();
    assert_eq!(order, BigUint::from(168u32));
    let chain = StabChain::new(&l).unwrap();
    assert!(chain.contains(&p("(1 2 4)(3 6 5)", 7)));
    assert!(!chain.contains(&p("(0 1)", 7)));
}

#[test]
fn transitivity_and_orbits() {
    let g = [p("(0 1)(2 3)", 6), p("(1 2)", 6)];
    assert!(!is_transitive(&g, 6).unwrap());
    assert_eq!(orbit(&g, 6, 4), vec![4]);
    let mut o = orbit(&g, 6, 0);
    o.sort_unstable();
    assert_eq!(o, vec![0, 1, 2, 3]);
}

#[test]
fn enumeration_respects_cap() {
    let s5 = [p("(0 1)", 5), p("(0 1 2 3 4)", 5)];
    assert_eq!(enumerate_group(&s5, 200).unwrap().len(), 120);
    assert!(enumerate_group(&s5, 100).is_none());
}
