use pn_bundles_web::ops;
use serde_json::Value;

#[test]
fn sequences_of_rank_four_degree_nine() {
    let v: Value = serde_json::from_str(&ops::bundle_sequences(3, 4, 9).unwrap()).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 6);
    for row in rows {
        let entries: Vec<i64> = serde_json::from_value(row["entries"].clone()).unwrap();
        assert_eq!(entries.iter().sum::<i64>(), 9);
        assert!(entries.iter().all(|&x| x > 0));
        assert!(row["pair"].as_str().unwrap().contains("n=3"));
    }
}

#[test]
fn lattice_svg_draws_every_node_and_cover() {
    let svg = ops::lattice_svg(3, "5,4", "-1", 2).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches(r#"<g class="node">"#).count(), 8);
    assert_eq!(svg.matches(r#"<g class="edge">"#).count(), 12);
    // the empty anchor means the normalized one, where the bound 2 leaves two pairs
    let normalized = ops::lattice_svg(3, "5,4", "", 2).unwrap();
    assert_eq!(normalized.matches(r#"<g class="node">"#).count(), 2);
}

#[test]
fn presentation_of_an_admissible_pair_is_a_bundle() {
    let v: Value = serde_json::from_str(&ops::presentation(3, "2", "0,0,0,1,1", 32003).unwrap()).unwrap();
    assert_eq!(v["admissible"], true);
    assert_eq!(v["is_bundle"], true);
    assert_eq!(v["entries"].as_array().unwrap().len(), 5);
    assert_eq!(v["col_twists"], serde_json::json!([-2]));

    let v: Value = serde_json::from_str(&ops::presentation(3, "1", "0,0,0,1", 32003).unwrap()).unwrap();
    assert_eq!(v["admissible"], false);
    assert_eq!(v["is_bundle"], false);
}

#[test]
fn bad_input_gives_messages() {
    assert!(ops::bundle_sequences(0, 4, 9).is_err());
    assert!(ops::bundle_sequences(3, 40, 9).is_err());
    assert!(ops::lattice_svg(3, "5,x", "", 2).unwrap_err().starts_with("sequence"));
    assert!(ops::lattice_svg(3, "5,4", "one", 2).unwrap_err().starts_with("anchor"));
    assert!(ops::presentation(3, "2", "0,0,0,1,1", 100).is_err());
    assert!(ops::presentation(3, "1^20", "0^24", 32003)
        .unwrap_err()
        .contains("too large"));
}
