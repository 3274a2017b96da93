use std::collections::BTreeMap;

use dhb::certify::{certify_cover, certify_dhb, min_degree_search, SearchBounds};
use dhb::construct::{build_pair, ConstructionPlan};
use dhb::linlift::lift_plan;
use dhb::report::*;

fn report(payload: Payload, passed: bool) -> Report {
    Report::new("test", BTreeMap::new(), passed, vec![], payload)
}

fn round_trip(r: &Report) -> Report {
    let text = r.to_json();
    let back = Report::from_json(&text).unwrap();
    assert_eq!(&back, r);
    assert_eq!(back.to_json(), text);
    back
}

#[test]
fn certificate_round_trip_and_verify() {
    let cert = certify_dhb(&ConstructionPlan::minimal(7).unwrap()).unwrap();
    let r = round_trip(&report(Payload::Certificate { certificate: cert, group_order_oracle: None }, true));
    r.verify().unwrap();
}

#[test]
fn every_payload_kind_verifies() {
    let plan = ConstructionPlan::minimal(8).unwrap();
    let b = build_pair(&plan).unwrap();
    let payloads = vec![
        Payload::Construct { plan, prime: b.prime, degree: b.pair.degree(), pair: b.pair, joins: b.base.joins },
        Payload::Cover { certificate: certify_cover(&plan).unwrap() },
        Payload::MinDegree { result: min_degree_search(SearchBounds::default()).unwrap() },
        Payload::Lift { report: lift_plan(&plan, 3, 2).unwrap() },
        Payload::Verification { checked: 2, failures: vec![] },
    ];
    for p in payloads {
        round_trip(&report(p, true)).verify().unwrap();
    }
    round_trip(&report(Payload::Failure { error: "x".into() }, false)).verify().unwrap();
}

#[test]
fn wrong_verdict_is_caught() {
    let r = report(Payload::Failure { error: "x".into() }, true);
    assert!(matches!(r.verify(), Err(ReportError::Verify(_))));
}

#[test]
fn tampered_pair_is_caught() {
    let mut cert = certify_dhb(&ConstructionPlan::minimal(3).unwrap()).unwrap();
    std::mem::swap(&mut cert.pair.w1, &mut cert.pair.w2);
    let r = report(Payload::Certificate { certificate: cert, group_order_oracle: None }, true);
    assert!(r.verify().is_err());
}

#[test]
fn schema_is_checked() {
    let r = report(Payload::Failure { error: "x".into() }, false);
    let text = r.to_json().replace(SCHEMA, "dhb-report/0");
    assert!(matches!(Report::from_json(&text), Err(ReportError::Schema(_))));
    assert!(matches!(Report::from_json("{"), Err(ReportError::Json(_))));
}

#[test]
fn arrays_of_reports() {
    let a = report(Payload::Failure { error: "a".into() }, false);
    let b = report(Payload::Verification { checked: 0, failures: vec![] }, true);
    let text = serde_json::to_string(&vec![a.clone(), b.clone()]).unwrap();
    assert_eq!(Report::many_from_json(&text).unwrap(), vec![a.clone(), b]);
    assert_eq!(Report::many_from_json(&a.to_json()).unwrap(), vec![a]);
}
