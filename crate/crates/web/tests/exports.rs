use densitymod_web::{classify_report, equivalence_report, form_report};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn classify_export() {
    let v = parse(&classify_report(2, "-1/2", 6).unwrap());
    assert_eq!(v["agreement"], true);
    assert_eq!(v["simple"], false);
    assert!(classify_report(5, "1/3", 6).is_err());
    assert!(classify_report(2, "1/3", 20).is_err());
    assert!(classify_report(2, "x", 6).is_err());
}

#[test]
fn form_export() {
    let v = parse(&form_report(2, "1/4", 4).unwrap());
    assert_eq!(v["kind"], "weights");
    assert_eq!(v["unitary"], true);
    assert_eq!(v["weights"][1][1], "3/1");
    let v = parse(&form_report(2, "1/3+1*i", 4).unwrap());
    assert_eq!(v["kind"], "none");
}

#[test]
fn equivalence_export() {
    let v = parse(&equivalence_report(2, "1/3", 30, 1).unwrap());
    assert_eq!(v["passed"], true);
    assert_eq!(v["grid"], 30);
}
