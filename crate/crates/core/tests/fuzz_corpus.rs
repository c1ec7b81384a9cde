//! Replays the fuzz corpus seeds through the same entry points as the fuzz
//! targets, so the seeds stay meaningful on a stable toolchain.

use std::fs;
use std::path::PathBuf;

use ifg::algebra::{parse_team_list, Element};
use ifg::calc::Calculator;
use ifg::model::{Space, Structure, Team};
use ifg::syntax::parse;

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fuzz/corpus")
        .join(target);
    let mut paths: Vec<PathBuf> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .collect();
    paths.sort();
    assert!(!paths.is_empty(), "no seeds for {target}");
    paths.into_iter().map(|p| fs::read(p).unwrap()).collect()
}

fn split(data: &[u8]) -> (u8, &str) {
    let (&shape, rest) = data.split_first().expect("selector byte");
    (shape, std::str::from_utf8(rest).expect("UTF-8 seed"))
}

fn space(shape: u8) -> Space {
    Space::new(1 + (shape % 3) as usize, 1 + (shape / 3 % 2) as usize).unwrap()
}

#[test]
fn formula_seeds() {
    let mut parsed = 0;
    for data in seeds("formula") {
        let text = std::str::from_utf8(&data).unwrap();
        if let Ok(phi) = parse(text, None) {
            assert_eq!(parse(&phi.pretty(), Some(phi.vars)).unwrap(), phi);
            parsed += 1;
        }
    }
    assert!(parsed >= 4);
}

#[test]
fn structure_seeds() {
    let mut loaded = 0;
    for data in seeds("structure_json") {
        if let Ok(a) = Structure::from_json(std::str::from_utf8(&data).unwrap()) {
            assert_eq!(
                Structure::from_json(&a.to_json()).unwrap().universe(),
                a.universe()
            );
            loaded += 1;
        }
    }
    assert_eq!(loaded, 2);
}

#[test]
fn team_seeds() {
    let mut parsed = 0;
    for data in seeds("team") {
        let (shape, text) = split(&data);
        let s = space(shape);
        if let Ok(v) = Team::parse(text, &s) {
            assert_eq!(Team::parse(&v.format(&s), &s).unwrap(), v);
            parsed += 1;
        }
        let _ = parse_team_list(text, &s);
        let _ = s.parse_valuation(text);
    }
    assert_eq!(parsed, 3);
}

#[test]
fn element_seeds() {
    let mut parsed = 0;
    for data in seeds("element") {
        let (shape, text) = split(&data);
        let s = space(shape);
        if let Ok(x) = Element::parse(text, s) {
            assert_eq!(Element::parse(&x.format(), s).unwrap(), x);
            parsed += 1;
        }
    }
    assert!(parsed >= 3);
}

#[test]
fn calc_seeds() {
    let mut evaluated = 0;
    for data in seeds("calc") {
        let (shape, text) = split(&data);
        let a = Structure::builtin(if shape % 2 == 0 { "2" } else { "3" }).unwrap();
        evaluated += Calculator::with_structure(a, 1).unwrap().eval(text).is_ok() as usize;
    }
    assert_eq!(evaluated, 4);
}
