//! The matrix file format: `{"std": rows, "dual": rows}` or `{"std": rows}`,
//! with entries given as integers or `"p/q"` strings in lowest terms.

use std::fmt;

use dualorder::kernel::int;
use dualorder::{DualMatrix, Rational, RealMatrix};
use serde::de::{self, Deserializer, Unexpected, Visitor};
use serde::Deserialize;

struct Entry(Rational);

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(EntryVisitor)
    }
}

struct EntryVisitor;

impl<'de> Visitor<'de> for EntryVisitor {
    type Value = Entry;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an integer or a string \"p/q\" in lowest terms with q > 0")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Entry, E> {
        Ok(Entry(int(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Entry, E> {
        self.visit_str(&v.to_string())
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Entry, E> {
        Err(E::invalid_type(Unexpected::Float(v), &self))
    }

    fn visit_str<E: de::Error>(self, s: &str) -> Result<Entry, E> {
        parse_entry(s).map(Entry).ok_or_else(|| E::invalid_value(Unexpected::Str(s), &self))
    }
}

/// Accepts exactly the canonical spellings `"n"` and `"p/q"` with `q > 0`
/// and `gcd(p, q) = 1`.
pub fn parse_entry(s: &str) -> Option<Rational> {
    let r: Rational = s.parse().ok()?;
    let canonical = if s.contains('/') {
        format!("{}/{}", r.numer(), r.denom())
    } else {
        r.to_string()
    };
    (canonical == s).then_some(r)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    std: Vec<Vec<Entry>>,
    #[serde(default)]
    dual: Option<Vec<Vec<Entry>>>,
}

/// A parsed matrix file. Files without a dual part hold a real matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFile {
    pub matrix: DualMatrix,
    pub has_dual: bool,
}

fn to_matrix(part: &str, rows: Vec<Vec<Entry>>) -> Result<RealMatrix, String> {
    let width = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || width == 0 {
        return Err(format!("\"{part}\" must have at least one row and one column"));
    }
    if let Some(i) = rows.iter().position(|r| r.len() != width) {
        return Err(format!(
            "\"{part}\" row {} has {} entries but row 1 has {width}",
            i + 1,
            rows[i].len()
        ));
    }
    let height = rows.len();
    let data = rows.into_iter().flatten().map(|e| e.0).collect();
    RealMatrix::new(height, width, data).map_err(|e| e.to_string())
}

impl MatrixFile {
    pub fn real(m: RealMatrix) -> Self {
        Self {
            matrix: DualMatrix::real(m),
            has_dual: false,
        }
    }

    pub fn dual(m: DualMatrix) -> Self {
        Self {
            matrix: m,
            has_dual: true,
        }
    }

    /// Parses a document. Syntax and entry errors carry line and column.
    pub fn parse(text: &str) -> Result<Self, String> {
        let raw: RawFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let std = to_matrix("std", raw.std)?;
        let Some(dual) = raw.dual else {
            return Ok(Self::real(std));
        };
        let dual = to_matrix("dual", dual)?;
        if dual.shape() != std.shape() {
            return Err(format!(
                "\"dual\" is {}x{} but \"std\" is {}x{}",
                dual.rows(),
                dual.cols(),
                std.rows(),
                std.cols()
            ));
        }
        Ok(Self::dual(DualMatrix::new(std, dual).map_err(|e| e.to_string())?))
    }

    /// Serializes with one matrix per line.
    pub fn render(&self) -> String {
        let rows = |m: &RealMatrix| serde_json::to_string(m).expect("matrices always serialize");
        let mut out = format!("{{\n  \"std\": {}", rows(self.matrix.std()));
        if self.has_dual {
            out += &format!(",\n  \"dual\": {}", rows(self.matrix.dual()));
        }
        out + "\n}\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dualorder::kernel::ratio;

    #[test]
    fn entries_must_be_canonical() {
        assert_eq!(parse_entry("3"), Some(int(3)));
        assert_eq!(parse_entry("-1/2"), Some(ratio(-1, 2)));
        for bad in ["2/4", "1/-2", "1/0", "+1", "1.5", "x", "03"] {
            assert_eq!(parse_entry(bad), None, "{bad}");
        }
    }

    #[test]
    fn real_and_dual_documents() {
        let f = MatrixFile::parse(r#"{"std": [[1, "1/2"], [0, 0]]}"#).unwrap();
        assert!(!f.has_dual);
        assert_eq!(f.matrix.std()[(0, 1)], ratio(1, 2));
        let d = MatrixFile::parse(r#"{"std": [[1]], "dual": [[2]]}"#).unwrap();
        assert_eq!(d.matrix.dual()[(0, 0)], int(2));
        assert_eq!(MatrixFile::parse(&d.render()).unwrap(), d);
    }

    #[test]
    fn errors_point_at_the_problem() {
        let err = MatrixFile::parse("{\"std\": [[1, 2],\n [3, 4.5]]}").unwrap_err();
        assert!(err.contains("line 2"), "{err}");
        assert!(err.contains("floating point"), "{err}");
        let err = MatrixFile::parse(r#"{"std": [[1, 2], [3]]}"#).unwrap_err();
        assert!(err.contains("row 2 has 1 entries"), "{err}");
        let err = MatrixFile::parse(r#"{"std": [[1]], "dual": [[1, 2]]}"#).unwrap_err();
        assert!(err.contains("1x2"), "{err}");
        assert!(MatrixFile::parse(r#"{"std": [[1]], "extra": 1}"#).is_err());
        assert!(MatrixFile::parse(r#"{"std": []}"#).is_err());
    }

    fn matrix(rows: usize, cols: usize, entries: &[(i64, i64)]) -> RealMatrix {
        RealMatrix::from_fn(rows, cols, |i, j| {
            let (n, d) = entries[i * cols + j];
            ratio(n, d)
        })
    }

    proptest::proptest! {
        #[test]
        fn render_then_parse_is_identity(
            rows in 1usize..5,
            cols in 1usize..5,
            entries in proptest::collection::vec((-1_000_000i64..1_000_000, 1i64..50), 32),
            with_dual: bool,
        ) {
            let std = matrix(rows, cols, &entries);
            let file = if with_dual {
                MatrixFile::dual(DualMatrix::new(std.clone(), matrix(rows, cols, &entries[16..])).unwrap())
            } else {
                MatrixFile::real(std)
            };
            proptest::prop_assert_eq!(MatrixFile::parse(&file.render()).unwrap(), file);
        }
    }
}
