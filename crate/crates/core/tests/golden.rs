use codiff_core::catalog;

const GOLDEN: &str = include_str!("../data/catalog.json");

#[test]
fn catalog_matches_golden_file() {
    let golden: serde_json::Value = serde_json::from_str(GOLDEN).unwrap();
    assert_eq!(catalog::export_json(), golden);
}
