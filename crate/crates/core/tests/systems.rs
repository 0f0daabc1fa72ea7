//! The system files shipped in `systems/` match the systems built in code.

use unireg_core::constructions::{power_system, ten_relation_system};
use unireg_core::freealg::{check_diamond, ReductionSystem};
use unireg_core::par::Exec;
use unireg_core::scalars::BaseField;

fn load(name: &str) -> ReductionSystem {
    let path = format!("{}/../../systems/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap();
    ReductionSystem::parse(&text).unwrap()
}

#[test]
fn ten_relations_file_matches() {
    let file = load("ten_relations.txt");
    let code = ten_relation_system(BaseField::Rationals);
    assert_eq!(file.to_file_string(), code.to_file_string());
    assert_eq!(file.show(&file.normal_form(&file.parse_poly("w*t").unwrap())), "r*a");
}

#[test]
fn powers_file_matches_and_is_confluent() {
    let file = load("powers4.txt");
    let code = power_system(&[1, 2, 3, 4], false).unwrap();
    assert_eq!(file.to_file_string(), code.to_file_string());
    assert!(check_diamond(&file, Exec::Sequential).is_confluent());
}

#[test]
fn square_zero_file() {
    let file = load("square_zero.txt");
    assert!(file.normal_form(&file.parse_poly("x^2").unwrap()).is_zero());
    assert!(check_diamond(&file, Exec::Sequential).is_confluent());
}
