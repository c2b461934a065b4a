use a2web::exactmath::{rat, ExactMatrix};
use a2web::networks::PlanarNetwork;
use a2web::webcore::{CanonicalCode, Web};
use a2web::Error;

#[test]
fn matrix_round_trip() {
    let x = ExactMatrix::new(vec![vec![rat(1, 2), rat(-3, 1)], vec![rat(0, 1), rat(7, 5)]]).unwrap();
    let text = serde_json::to_string(&x).unwrap();
    assert_eq!(text, r#"[["1/2","-3"],["0","7/5"]]"#);
    let back: ExactMatrix = serde_json::from_str(&text).unwrap();
    assert_eq!(back, x);
    assert_eq!(serde_json::to_string(&back).unwrap(), text);
}

#[test]
fn matrix_accepts_integers_and_rejects_junk() {
    let x: ExactMatrix = serde_json::from_str(r#"[[1, "2/4"], [3, 4]]"#).unwrap();
    assert_eq!(x.get(0, 1), &rat(1, 2));
    assert!(serde_json::from_str::<ExactMatrix>(r#"[[1, "x"], [3, 4]]"#).is_err());
    assert!(serde_json::from_str::<ExactMatrix>(r#"[[1, 2], [3]]"#).is_err());
}

#[test]
fn web_code_round_trip() {
    let w = Web::from_word(3, &[1, 2, 1]).unwrap();
    let key = w.code().key();
    assert_eq!(CanonicalCode::from_key(&key).as_ref(), Some(w.code()));
    assert!(CanonicalCode::from_key("1.x.2").is_none());
}

#[test]
fn network_round_trip() {
    let net = PlanarNetwork::identity(3).unwrap();
    let text = net.to_json();
    let back = PlanarNetwork::from_json(&text).unwrap();
    assert_eq!(back.to_json(), text);
    assert_eq!(back.path_matrix().unwrap(), net.path_matrix().unwrap());
}

#[test]
fn crossing_network_is_rejected() {
    let text = r#"{
        "n": 2,
        "vertices": [
            {"id": 0, "x": 0.0, "y": 1.0}, {"id": 1, "x": 0.0, "y": 0.0},
            {"id": 2, "x": 2.0, "y": 1.0}, {"id": 3, "x": 2.0, "y": 0.0}
        ],
        "edges": [{"from": 0, "to": 3, "weight": 1}, {"from": 1, "to": 2, "weight": "1/2"}],
        "sources": [0, 1],
        "sinks": [2, 3]
    }"#;
    assert!(matches!(PlanarNetwork::from_json(text), Err(Error::InvalidNetwork(_) | Error::Domain(_))));
}

#[test]
fn malformed_network_reports_location() {
    match PlanarNetwork::from_json("{\"n\": 2,\n \"vertices\": [}") {
        Err(Error::Parse { location, .. }) => assert!(location.contains("line 2"), "{location}"),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn network_file_format() {
    let text = PlanarNetwork::identity(1).unwrap().to_json();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in ["n", "vertices", "edges", "sources", "sinks"] {
        assert!(v.get(key).is_some(), "{key} missing from {text}");
    }
}

#[test]
fn web_code_serializes_as_key() {
    let w = Web::generator_e1(2, 1).unwrap();
    let text = serde_json::to_string(w.code()).unwrap();
    assert_eq!(text, format!("\"{}\"", w.code().key()));
    let back: CanonicalCode = serde_json::from_str(&text).unwrap();
    assert_eq!(&back, w.code());
}
