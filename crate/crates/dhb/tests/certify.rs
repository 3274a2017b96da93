use dhb::atlas::{basic_map, BasicMapId};
use dhb::certify::*;
use dhb::construct::{ConstructionPlan, MINIMAL_DEGREES};

fn failures(id: BasicMapId, p: u64) -> Vec<JordanFailure> {
    jordan_certify(basic_map(id), p).unwrap_err().failures
}

#[test]
fn jordan_on_basic_maps() {
    let cert = jordan_certify(basic_map(BasicMapId::H), 17).unwrap();
    assert_eq!(cert.n, 42);
    assert!(cert.verify(basic_map(BasicMapId::H)).is_ok());
    assert!(failures(BasicMapId::H, 15).contains(&JordanFailure::NotPrime { p: 15 }));
    assert!(failures(BasicMapId::G, 13).contains(&JordanFailure::RepeatedCycle { p: 13, count: 3 }));
    assert!(failures(BasicMapId::A, 13).contains(&JordanFailure::TooLarge { p: 13, n: 14 }));
    assert!(failures(BasicMapId::H, 5).contains(&JordanFailure::NoCycleOfLength { p: 5 }));
    let text = JordanError { failures: failures(BasicMapId::G, 13) }.to_string();
    assert!(text.contains("coprimality"), "{text}");
}

#[test]
fn jordan_certificate_rejects_wrong_map() {
    let cert = jordan_certify(basic_map(BasicMapId::H), 17).unwrap();
    assert!(cert.verify(basic_map(BasicMapId::K)).is_err());
}

#[test]
fn transitivity_witness() {
    for id in BasicMapId::ALL {
        let m = basic_map(id);
        assert!(TransitivityWitness::build(m).verify(m), "{id}");
    }
}

#[test]
fn minimal_certificates() {
    for r in 0..14u8 {
        let cert = certify_dhb(&ConstructionPlan::minimal(r).unwrap()).unwrap();
        assert_eq!(cert.degree, MINIMAL_DEGREES[r as usize]);
        assert!(cert.beauville.passed());
        assert_eq!(cert.beauville.v_difference, [4, 6, -7]);
        for e in &cert.beauville.positions {
            assert_eq!(e.resolution, Resolution::DistinctCycleTypes);
        }
        cert.verify().unwrap();
    }
}

#[test]
fn tampered_certificate_fails() {
    let mut cert = certify_dhb(&ConstructionPlan::minimal(0).unwrap()).unwrap();
    cert.prime = 13;
    assert!(cert.verify().is_err());
    let mut cert = certify_dhb(&ConstructionPlan::minimal(0).unwrap()).unwrap();
    cert.pair.w2 = cert.pair.w1.clone();
    assert!(cert.verify().is_err());
}

#[test]
fn beauville_fails_on_identical_triples() {
    let m = basic_map(BasicMapId::K);
    let e = beauville_check(m, m).unwrap();
    assert!(!e.passed());
    assert_eq!(e.first_failure(), Some(Position::X));
}

#[test]
fn oracle_agrees_on_smallest_minimal_plan() {
    let cert = certify_dhb(&ConstructionPlan::minimal(0).unwrap()).unwrap();
    assert_eq!(generation_oracle(&cert.pair.w1, ORACLE_CAP), Some(true));
    assert_eq!(generation_oracle(&cert.pair.w1, 100), None);
    // the monodromy group of A is PSL(2,13), not A_14
    assert_eq!(generation_oracle(basic_map(BasicMapId::A), ORACLE_CAP), Some(false));
}

#[test]
fn min_degree_168() {
    let r = min_degree_search(SearchBounds::default()).unwrap();
    assert_eq!(r.n, 168);
    let s = |genus, alpha, beta, gamma| SearchSignature { genus, alpha, beta, gamma };
    assert!(r.has_witness(s(0, 4, 6, 0), s(0, 0, 0, 7)));
    assert!(r.has_witness(s(0, 8, 3, 0), s(0, 0, 0, 7)));
    assert!(r.has_witness(s(1, 4, 3, 0), s(0, 0, 0, 7)));
    assert_eq!(r.witnesses.len(), 3);
    assert_eq!(s(0, 4, 6, 0).to_string(), "(0; 4,6,0)");
}

#[test]
fn min_degree_with_tight_bounds() {
    let tight = SearchBounds { g_max: 0, alpha_max: 1, beta_max: 1, gamma_max: 1 };
    assert!(matches!(min_degree_search(tight), Err(CertifyError::NoSolution(_))));
}

#[test]
fn cover_certificates() {
    assert_eq!(marker_tau_halves().unwrap(), [51, 52]);
    let degrees = [364, 659, 436, 409, 466, 481, 580, 371, 610, 527, 500, 501, 474, 489];
    for r in 0..14u8 {
        let c = certify_cover(&ConstructionPlan::minimal(r).unwrap()).unwrap();
        assert!(c.tau.iter().all(|t| t % 4 == 0), "r = {r}");
        let expected = match c.branch {
            CoverBranch::AttachEAndTwoA => [8, 3, -7],
            CoverBranch::InternalJoin => [8, 6, -7],
        };
        assert_eq!(c.v_difference, expected, "r = {r}");
        assert_eq!(c.dhb.degree, degrees[r as usize], "r = {r}");
        assert!(c.useful_persisted);
        c.verify().unwrap();
    }
}
