#![allow(dead_code)]

use std::path::PathBuf;

use qcir::dsl;
use qcir_core::Circuit;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn fixture_path(name: &str) -> PathBuf {
    fixture_dir().join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn fixture(name: &str) -> Circuit {
    dsl::parse(&fixture_text(name)).unwrap_or_else(|e| panic!("{name}: {e:?}"))
}

/// Every well-formed fixture file name.
pub fn good_fixtures() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension().is_some_and(|x| x == dsl::EXTENSION))
                .then(|| p.file_name().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    names
}

/// Malformed fixtures and the line of their single error.
pub const MALFORMED: [(&str, usize); 10] = [
    ("01_unknown_statement.qcir", 4),
    ("02_bad_character.qcir", 5),
    ("03_unknown_gate.qcir", 5),
    ("04_duplicate_register.qcir", 4),
    ("05_register_out_of_range.qcir", 6),
    ("06_unknown_mode.qcir", 2),
    ("07_bad_number.qcir", 4),
    ("08_defgate_shape.qcir", 6),
    ("09_bias_out_of_range.qcir", 4),
    ("10_not_admissible.qcir", 5),
];
