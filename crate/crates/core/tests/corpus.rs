use rbundle::corpus::{classification_table, find, EXAMPLES};
use rbundle::format::{parse_input, InputDocument};
use rbundle::rbundle::{BoundaryClass, StabilizerClass};

#[test]
fn every_fixture_round_trips() {
    for ex in &EXAMPLES {
        let input = ex.input();
        let text = serde_json::to_string(&InputDocument::from_input(&input)).unwrap();
        assert_eq!(parse_input(&text).unwrap(), input, "{}", ex.name);
    }
}

#[test]
fn table_matches_expected_classes() {
    let table = classification_table().unwrap();
    for (row, ex) in table.iter().zip(EXAMPLES.iter()) {
        println!("{row:?}");
        assert_eq!(row.boundary_class, ex.boundary_class, "{}", ex.name);
        assert_eq!(
            row.contains_l,
            ex.boundary_class == BoundaryClass::WholeLine,
            "{}",
            ex.name
        );
    }
    let row = |n: &str| table.iter().find(|r| r.name == n).unwrap();
    assert_eq!(row("nodal").boundary, "u1^2 - u2^2");
    assert_eq!(row("cusp").boundary, "u1^2");
    assert_eq!(row("nodal").stabilizer_class, StabilizerClass::OrderTwo);
    assert_eq!(row("nodal").count_f7, 2);
    assert_eq!(
        row("nodal-two-lines").stabilizer_class,
        StabilizerClass::MultiplicativeGroup
    );
    assert_eq!(row("nodal-two-lines").count_f7, 6);
    assert_eq!(row("cusp").stabilizer_class, StabilizerClass::Trivial);
    assert_eq!(row("cusp").count_f7, 1);
    assert_eq!(row("cusp-two-lines").count_f7, 14);
    assert_eq!(row("triple-line").count_f7, 42);
}

#[test]
fn find_by_name() {
    assert!(find("cusp").is_some());
    assert!(find("quartic").is_none());
}
