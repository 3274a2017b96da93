use dhb::compose::k_compose;
use dhb::construct::*;

const MINIMAL_PRIMES: [u64; 14] = [17, 43, 17, 17, 17, 43, 23, 17, 83, 17, 17, 17, 47, 23];

#[test]
fn v_maps_match_stored_rows() {
    for row in V_ROWS {
        let v = v_map(row.r).unwrap();
        assert_eq!(v.map.n(), row.degree, "r = {}", row.r);
        assert_eq!(v.map.w_cycles().cycle_type().lengths(), row.cycle_lengths().as_slice(), "r = {}", row.r);
        let w = v.map.w_cycles();
        let [a, b] = v.handle.points();
        assert_eq!((w.length_at(a), w.length_at(b)), (1, row.l), "r = {}", row.r);
    }
}

#[test]
fn stock_join_extends_l_by_13() {
    let u = stock_u(3).unwrap();
    let h = u.handles(1)[0];
    for row in V_ROWS {
        let v = v_map(row.r).unwrap();
        let w = k_compose(&u, &h, &v.map, &v.handle).unwrap();
        let b = v.handle.points()[1] + u.n() as u32;
        assert_eq!(w.w_cycles().length_at(b), row.l_prime, "r = {}", row.r);
        assert_eq!(row.l_prime, row.l + 13);
    }
}

#[test]
fn stock_degrees() {
    for s in 3..12 {
        let u = stock_u(s).unwrap();
        assert_eq!(u.n(), 14 * s as usize);
        assert!(u.genus().is_ok());
    }
}

#[test]
fn minimal_plans() {
    for r in 0..14u8 {
        let plan = ConstructionPlan::minimal(r).unwrap();
        let b = build_pair(&plan).unwrap();
        assert_eq!(b.pair.degree(), MINIMAL_DEGREES[r as usize], "{plan}");
        assert_eq!(b.prime, MINIMAL_PRIMES[r as usize], "{plan}");
        assert_eq!(b.pair.v_difference(), [4, 6, -7], "{plan}");
        for j in &b.base.joins {
            assert!(j.merge_law && j.useful_persisted, "{plan}: {j:?}");
        }
    }
}

#[test]
fn minimal_fixed_points_r0() {
    let b = build_pair(&ConstructionPlan::minimal(0).unwrap()).unwrap();
    assert_eq!(b.pair.w1.fixed_point_vector().as_array(), [10, 6, 0]);
    assert_eq!(b.pair.w2.fixed_point_vector().as_array(), [6, 0, 7]);
}

#[test]
fn small_cases() {
    let primes = [17, 5, 17, 17, 43, 17, 5, 19, 19, 47, 23];
    for (&(r, n), p) in SMALL_DEGREES.iter().zip(primes) {
        let b = small_case(r).unwrap();
        assert_eq!((b.pair.degree(), b.prime), (n, p), "r = {r}");
    }
    for (r, len, p) in [(4u8, 68, 17), (6, 70, 5), (10, 70, 5)] {
        let e = small_case(r).unwrap_err().to_string();
        assert!(e.contains(&format!("length {len}")) && e.contains(&format!("prime {p}")), "{e}");
    }
}

#[test]
fn s3_shortcuts() {
    let primes = [43, 23, 17, 17, 17];
    for (&(r, n), p) in S3_DEGREES.iter().zip(primes) {
        let b = build_pair(&ConstructionPlan::s3_shortcut(r).unwrap()).unwrap();
        assert_eq!((b.pair.degree(), b.prime), (n, p), "r = {r}");
    }
}

#[test]
fn general_degrees_follow_14s_plus_d() {
    for r in 0..14u8 {
        let s0 = ConstructionPlan::minimal(r).unwrap().s;
        for s in s0..s0 + 4 {
            let plan = ConstructionPlan::for_class(r, s).unwrap();
            let b = build_pair(&plan).unwrap();
            assert_eq!(b.pair.degree(), plan.expected_degree(), "{plan}");
            assert_eq!(b.pair.degree() % 14, r as usize, "{plan}");
            assert_eq!(b.prime, plan.expected_prime(), "{plan}");
        }
    }
}

#[test]
fn invalid_plans() {
    assert!(ConstructionPlan::for_class(14, 3).is_err());
    assert!(ConstructionPlan::new(0, 2, Variant::Standard).is_err());
    assert!(ConstructionPlan::new(3, 5, Variant::SmallN).is_err());
    assert!(ConstructionPlan::new(2, 3, Variant::R1Special).is_err());
}

#[test]
fn coprimality_names_the_offending_cycle() {
    let m = dhb::compose::eval_str("C(1)E").unwrap();
    let e = coprimality(&m, 2, 1).unwrap_err().to_string();
    assert_eq!(e, "W_1: coprimality: p = 2 is not coprime to cycle length 4");
}
