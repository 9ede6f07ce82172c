//! Algebra files: `{"kind", "order", "add", "mul", "labels"}` with row-major
//! tables of indices. Groups have no `"add"`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, FiniteGroup, FiniteSemiring, Table};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    add: Option<Vec<Vec<usize>>>,
    mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

pub fn to_json(a: &Algebra) -> String {
    serde_json::to_string_pretty(&to_value(a)).expect("plain data serializes")
}

pub fn to_value(a: &Algebra) -> serde_json::Value {
    let (add, mul) = match a {
        Algebra::Semiring(s) => (Some(s.add_table().rows()), s.mul_table().rows()),
        Algebra::Group(g) => (None, g.mul_table().rows()),
    };
    let file = AlgebraFile {
        kind: Some(a.kind().to_string()),
        order: Some(mul.len()),
        add,
        mul,
        labels: a.labels().map(|l| l.to_vec()),
    };
    serde_json::to_value(&file).expect("plain data serializes")
}

/// Parses and validates an algebra. Without `"kind"` the presence of `"add"`
/// decides between semiring and group.
pub fn from_json(text: &str) -> Result<Algebra> {
    from_value(serde_json::from_str(text)?)
}

pub fn from_value(value: serde_json::Value) -> Result<Algebra> {
    let file: AlgebraFile = serde_json::from_value(value)?;
    let kind = match (&file.kind, &file.add) {
        (Some(k), _) => k.as_str(),
        (None, Some(_)) => "semiring",
        (None, None) => "group",
    };
    let mul = Table::from_rows(&file.mul)?;
    if let Some(n) = file.order {
        if n != mul.order() {
            return Err(Error::Dimension(format!(
                "\"order\" is {n} but the multiplication table is {0}x{0}",
                mul.order()
            )));
        }
    }
    match kind {
        "semiring" => {
            let add = file
                .add
                .ok_or_else(|| Error::Invalid("semiring file without \"add\" table".into()))?;
            let add = Table::from_rows(&add)?;
            Ok(FiniteSemiring::new(add, mul, file.labels)?.into())
        }
        "group" => {
            if file.add.is_some() {
                return Err(Error::KindMismatch("group file with an \"add\" table".into()));
            }
            Ok(FiniteGroup::new(mul, file.labels)?.into())
        }
        other => Err(Error::KindMismatch(format!("unknown kind `{other}`"))),
    }
}

pub fn load_algebra(path: impl AsRef<Path>) -> Result<Algebra> {
    from_json(&fs::read_to_string(path)?)
}

pub fn store_algebra(a: &Algebra, path: impl AsRef<Path>) -> Result<()> {
    if let Some(dir) = path.as_ref().parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    fs::write(path, to_json(a) + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{group_q8, word_semiring_of};

    #[test]
    fn round_trip_semiring() {
        let s = word_semiring_of("abc", true, false).unwrap().semiring;
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scabc.json");
        store_algebra(&s.clone().into(), &path).unwrap();
        let back = load_algebra(&path).unwrap();
        assert_eq!(back.as_semiring().unwrap(), &s);
    }

    #[test]
    fn round_trip_group() {
        let g = group_q8().unwrap();
        let back = from_json(&to_json(&g.clone().into())).unwrap();
        assert_eq!(back.as_group().unwrap().mul_table(), g.mul_table());
    }

    #[test]
    fn group_without_kind() {
        let a = from_json(r#"{"mul": [[0, 1], [1, 0]]}"#).unwrap();
        assert_eq!(a.kind(), "group");
    }

    #[test]
    fn mismatched_tables() {
        let text = r#"{"kind": "semiring",
            "add": [[0,0,0],[0,1,0],[0,0,2]],
            "mul": [[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}"#;
        assert!(matches!(from_json(text), Err(Error::Dimension(_))));
    }

    #[test]
    fn invalid_tables_carry_the_report() {
        // multiplication is not associative: 1*1 = 2, 2*1 = 0, 1*2 = 1
        let text = r#"{"add": [[0,0,0],[0,1,0],[0,0,2]],
            "mul": [[0,0,0],[0,2,1],[0,0,0]]}"#;
        match from_json(text) {
            Err(Error::Invalid(msg)) => assert!(msg.contains("associat"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed() {
        assert!(matches!(from_json("{"), Err(Error::Json(_))));
    }
}
