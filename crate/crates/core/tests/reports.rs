use splitgam::report::{ClaimReport, Status};
use splitgam::verify::{verify, Bounds, CLAIMS};

fn strip_elapsed(mut r: ClaimReport) -> ClaimReport {
    r.elapsed_ms = None;
    r
}

#[test]
fn every_claim_round_trips_through_both_encodings() {
    let bounds = Bounds::new(3, 5);
    for claim in CLAIMS {
        let report = verify(claim, bounds).unwrap();
        assert!(report.check(), "{claim}: {:?}", report.problems());
        let text = ClaimReport::from_text(&report.to_text()).unwrap();
        assert_eq!(text, report, "{claim} text");
        let json = ClaimReport::from_json(&report.to_json()).unwrap();
        assert_eq!(json, report, "{claim} json");
    }
}

#[test]
fn reports_are_reproducible() {
    let a = strip_elapsed(verify("T-ESSP", Bounds::new(3, 5)).unwrap());
    let b = strip_elapsed(verify("T-ESSP", Bounds::new(3, 5)).unwrap());
    assert_eq!(a.to_text(), b.to_text());
}

#[test]
fn concatenated_reports_parse_back() {
    let a = verify("L-QK4", Bounds::default()).unwrap();
    let b = verify("L-ALLQ", Bounds::default()).unwrap();
    let text = a.to_text() + &b.to_text();
    let both = ClaimReport::parse_many(&text).unwrap();
    assert_eq!(both, vec![a.clone(), b.clone()]);
    let json = serde_json::to_string(&vec![a.clone(), b]).unwrap();
    assert_eq!(ClaimReport::parse_many(&json).unwrap().len(), 2);
    assert!(ClaimReport::from_text(&text).is_err());
}

#[test]
fn a_flipped_bit_in_a_stage_is_detected() {
    let mut report = verify("L-QK4", Bounds::default()).unwrap();
    let w = report
        .witnesses
        .iter_mut()
        .find(|w| !w.instance.steps.is_empty())
        .expect("a witness with a step");
    let rows = &mut w.instance.steps[0].result.rows;
    let first = rows[0].clone();
    let flipped: String = first
        .chars()
        .enumerate()
        .map(|(i, c)| if i == 0 { if c == '0' { '1' } else { '0' } } else { c })
        .collect();
    rows[0] = flipped;
    assert!(!report.check());
}

#[test]
fn status_and_counterexamples_must_agree() {
    let mut report = verify("L-QK4", Bounds::default()).unwrap();
    report.status = Status::Fail;
    assert!(!report.check());
}
