use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::marker::PhantomData;
use std::path::Path;

use serde::de::{Deserializer, MapAccess, Visitor};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A relation symbol's interpretation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Relation {
    pub arity: usize,
    pub tuples: BTreeSet<Vec<usize>>,
}

/// A finite structure with universe `{0..m-1}`, constants and relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Structure {
    universe: usize,
    constants: BTreeMap<String, usize>,
    relations: BTreeMap<String, Relation>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StructureFile {
    universe: usize,
    #[serde(default)]
    constants: UniqueMap<usize>,
    #[serde(default)]
    relations: UniqueMap<Relation>,
}

/// A JSON object that rejects repeated keys.
struct UniqueMap<T>(BTreeMap<String, T>);

impl<T> Default for UniqueMap<T> {
    fn default() -> Self {
        UniqueMap(BTreeMap::new())
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for UniqueMap<T> {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        struct V<T>(PhantomData<T>);
        impl<'de, T: Deserialize<'de>> Visitor<'de> for V<T> {
            type Value = UniqueMap<T>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object with distinct keys")
            }
            fn visit_map<A: MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                let mut out = BTreeMap::new();
                while let Some((k, v)) = map.next_entry::<String, T>()? {
                    if out.contains_key(&k) {
                        return Err(serde::de::Error::custom(format!("duplicate name `{k}`")));
                    }
                    out.insert(k, v);
                }
                Ok(UniqueMap(out))
            }
        }
        de.deserialize_map(V(PhantomData))
    }
}

/// Symbol names must be identifiers that the formula grammar reads as
/// symbols rather than variables or quantifiers.
fn check_symbol_name(name: &str) -> Result<()> {
    let mut chars = name.chars();
    let ok_start = chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    let ok_rest = chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    let is_var =
        name.len() > 1 && name.starts_with('v') && name[1..].chars().all(|c| c.is_ascii_digit());
    if !ok_start || !ok_rest || is_var || name == "E" || name == "A" {
        return Err(Error::Structure(format!(
            "`{name}` is not a usable symbol name"
        )));
    }
    Ok(())
}

impl Structure {
    pub fn new(
        universe: usize,
        constants: BTreeMap<String, usize>,
        relations: BTreeMap<String, Relation>,
    ) -> Result<Self> {
        if universe < 1 {
            return Err(Error::Structure("the universe must be nonempty".into()));
        }
        for (name, &c) in &constants {
            check_symbol_name(name)?;
            if c >= universe {
                return Err(Error::Structure(format!(
                    "constant `{name}` names {c}, outside a universe of size {universe}"
                )));
            }
        }
        for (name, rel) in &relations {
            check_symbol_name(name)?;
            if constants.contains_key(name) {
                return Err(Error::Structure(format!(
                    "`{name}` is declared both as a constant and a relation"
                )));
            }
            for t in &rel.tuples {
                if t.len() != rel.arity {
                    return Err(Error::Structure(format!(
                        "relation `{name}` of arity {} has tuple {t:?}",
                        rel.arity
                    )));
                }
                if let Some(&bad) = t.iter().find(|&&a| a >= universe) {
                    return Err(Error::Structure(format!(
                        "relation `{name}` mentions element {bad}, outside a universe of size {universe}"
                    )));
                }
            }
        }
        Ok(Structure {
            universe,
            constants,
            relations,
        })
    }

    /// The structure `{0..m-1}` with every element `i` named by `c<i>` and
    /// no relations.
    pub fn fully_named(m: usize) -> Result<Self> {
        let constants = (0..m).map(|i| (format!("c{i}"), i)).collect();
        Structure::new(m, constants, BTreeMap::new())
    }

    /// Builtin structures are named by their size: `"2"` is `{0, 1}` with
    /// constants `c0`, `c1`, and so on.
    pub fn builtin(name: &str) -> Option<Self> {
        let m: usize = name.parse().ok()?;
        if !(1..=16).contains(&m) || name.starts_with('0') || name.starts_with('+') {
            return None;
        }
        Structure::fully_named(m).ok()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: StructureFile = serde_json::from_str(text)?;
        Structure::new(file.universe, file.constants.0, file.relations.0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("structures always serialize")
    }

    /// A builtin name, or else a path to a JSON structure file.
    pub fn load(name_or_path: &str) -> Result<Self> {
        if let Some(s) = Structure::builtin(name_or_path) {
            return Ok(s);
        }
        let text = std::fs::read_to_string(Path::new(name_or_path))?;
        Structure::from_json(&text)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn constant(&self, name: &str) -> Option<usize> {
        self.constants.get(name).copied()
    }

    pub fn constants(&self) -> &BTreeMap<String, usize> {
        &self.constants
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.get(name)
    }

    pub fn relations(&self) -> &BTreeMap<String, Relation> {
        &self.relations
    }

    /// The least constant name for each element, if every element has one.
    pub fn naming(&self) -> Option<Vec<&str>> {
        let mut names: Vec<Option<&str>> = vec![None; self.universe];
        for (name, &c) in &self.constants {
            names[c].get_or_insert(name.as_str());
        }
        names.into_iter().collect()
    }

    pub fn is_fully_named(&self) -> bool {
        self.naming().is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins() {
        let two = Structure::builtin("2").unwrap();
        assert_eq!(two.universe(), 2);
        assert_eq!(two.constant("c0"), Some(0));
        assert_eq!(two.constant("c1"), Some(1));
        assert!(two.is_fully_named());
        let three = Structure::builtin("3").unwrap();
        assert_eq!(three.universe(), 3);
        assert_eq!(three.constants().len(), 3);
        assert_eq!(three.naming().unwrap(), vec!["c0", "c1", "c2"]);
        assert!(Structure::builtin("0").is_none());
        assert!(Structure::builtin("x").is_none());
    }

    #[test]
    fn json_structure() {
        let s = Structure::from_json(
            r#"{"universe": 3, "constants": {"a": 0, "b": 2},
                "relations": {"R": {"arity": 2, "tuples": [[0, 1], [1, 2]]}}}"#,
        )
        .unwrap();
        assert_eq!(s.constant("b"), Some(2));
        assert_eq!(s.relation("R").unwrap().tuples.len(), 2);
        assert!(!s.is_fully_named());
        let back = Structure::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn json_errors() {
        let bad = [
            r#"{"universe": 3, "constants": {"c": 5}}"#,
            r#"{"universe": 0}"#,
            r#"{"universe": 2, "constants": {"c": 0, "c": 1}}"#,
            r#"{"universe": 2, "relations": {"R": {"arity": 2, "tuples": [[0]]}}}"#,
            r#"{"universe": 2, "relations": {"R": {"arity": 1, "tuples": [[2]]}}}"#,
            r#"{"universe": 2, "constants": {"R": 0}, "relations": {"R": {"arity": 1, "tuples": []}}}"#,
            r#"{"universe": 2, "constants": {"v1": 0}}"#,
            r#"{"universe": 2, "constants": {"E": 0}}"#,
            r#"{"universe": 2, "colors": {}}"#,
        ];
        for text in bad {
            assert!(Structure::from_json(text).is_err(), "{text}");
        }
    }
}
