//! The `.alg` file format: one JSON document per algebra.
//!
//! ```json
//! {
//!   "name": "M_2(Q_7)",
//!   "prime": 7,
//!   "dim": 4,
//!   "basis": ["E11", "E12", "E21", "E22"],
//!   "table": [[0, 0, 0, "1"], [0, 1, 1, "1"]],
//!   "unit": ["1", "0", "0", "1"],
//!   "involution": [["1", "0", "0", "0"], ["0", "0", "1", "0"], ["0", "1", "0", "0"], ["0", "0", "0", "1"]]
//! }
//! ```
//!
//! Indices are 0-based. A `table` entry `[i, j, k, c]` says that `e_i e_j`
//! has coefficient `c` on `e_k`. Coefficients are exact rationals written as
//! strings (`"3"`, `"-1/2"`); plain JSON integers are accepted too. Row `i`
//! of `involution` lists the coordinates of `e_i*`. `realization` gives one
//! square matrix per basis vector and `form` the generator `S` of the trace
//! form `(x, y) = Tr(x* S y)` on matrices of that size; without a
//! realization the left regular representation is used.

use std::path::Path;

use num_rational::BigRational;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{Algebra, AlgebraParts};
use crate::error::{Error, Result};
use crate::field::{parse_rational, Field};
use crate::linalg::UltraMatrix;

/// Exact rational coefficient, serialised as a string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn int(n: i64) -> Rat {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn new(n: i64, d: i64) -> Rat {
        Rat(BigRational::new(n.into(), d.into()))
    }

    pub fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(&self.0)
    }
}

impl From<BigRational> for Rat {
    fn from(q: BigRational) -> Rat {
        Rat(q)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Rat;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a rational as a string \"a/b\" or an integer")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<Rat, E> {
                parse_rational(s)
                    .map(Rat)
                    .ok_or_else(|| E::custom(format!("bad rational {s:?}")))
            }
            fn visit_i64<E: de::Error>(self, n: i64) -> std::result::Result<Rat, E> {
                Ok(Rat::int(n))
            }
            fn visit_u64<E: de::Error>(self, n: u64) -> std::result::Result<Rat, E> {
                Ok(Rat(BigRational::from_integer(n.into())))
            }
        }
        d.deserialize_any(V)
    }
}

pub type RatMatrix = Vec<Vec<Rat>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub name: String,
    pub prime: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<String>,
    pub table: Vec<(usize, usize, usize, Rat)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<Rat>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<RatMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<RatMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realization: Option<Vec<RatMatrix>>,
}

/// Pretty JSON with arrays of scalars kept on one line.
pub fn write_compact(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |n: usize| "  ".repeat(n);
    let flat = |xs: &[Value]| xs.iter().all(|x| !x.is_array() && !x.is_object());
    match v {
        Value::Array(xs) if xs.is_empty() || flat(xs) => {
            let items: Vec<String> = xs.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&items.join(", "));
            out.push(']');
        }
        Value::Array(xs) => {
            out.push_str("[\n");
            for (k, x) in xs.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_compact(x, indent + 1, out);
                out.push_str(if k + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m) => {
            out.push_str("{\n");
            for (k, (key, x)) in m.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_compact(x, indent + 1, out);
                out.push_str(if k + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

fn square(m: &RatMatrix, n: usize) -> bool {
    m.len() == n && m.iter().all(|r| r.len() == n)
}

impl AlgebraSpec {
    pub fn parse(text: &str) -> Result<AlgebraSpec> {
        let spec: AlgebraSpec = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn read(path: &Path) -> Result<AlgebraSpec> {
        AlgebraSpec::parse(&std::fs::read_to_string(path)?)
    }

    /// Canonical JSON: one line per table entry and matrix row.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("specs serialise");
        let mut s = String::new();
        write_compact(&v, 0, &mut s);
        s.push('\n');
        s
    }

    /// Shape checks that do not need arithmetic.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        let bad = |m: String| Err(Error::Validation(m));
        if self.prime <= 2
            || !(2..self.prime)
                .take_while(|d| d * d <= self.prime)
                .all(|d| !self.prime.is_multiple_of(d))
        {
            return bad(format!("prime must be an odd prime, got {}", self.prime));
        }
        if n == 0 {
            return bad("dim must be positive".into());
        }
        if !self.basis.is_empty() && self.basis.len() != n {
            return bad(format!(
                "{} basis labels for dimension {n}",
                self.basis.len()
            ));
        }
        for (i, j, k, _) in &self.table {
            if *i >= n || *j >= n || *k >= n {
                return bad(format!("table entry [{i}, {j}, {k}] out of range"));
            }
        }
        if let Some(u) = &self.unit {
            if u.len() != n {
                return bad("unit needs one coordinate per basis vector".into());
            }
        }
        if let Some(inv) = &self.involution {
            if !square(inv, n) {
                return bad(format!("involution must be {n}x{n}"));
            }
        }
        let m = match &self.realization {
            Some(r) => {
                let m = r.first().map_or(0, Vec::len);
                if r.len() != n || m == 0 || r.iter().any(|x| !square(x, m)) {
                    return bad("realization needs one square matrix per basis vector".into());
                }
                m
            }
            None => n,
        };
        if let Some(s) = &self.form {
            if !square(s, m) {
                return bad(format!("form generator must be {m}x{m}"));
            }
        }
        Ok(())
    }

    pub fn label(&self, i: usize) -> String {
        self.basis
            .get(i)
            .cloned()
            .unwrap_or_else(|| format!("e{}", i + 1))
    }

    /// Builds the algebra at the given precision (spec value, then default).
    pub fn build(&self, precision: Option<u32>) -> Result<Algebra> {
        let n = precision
            .or(self.precision)
            .unwrap_or(crate::field::DEFAULT_PRECISION);
        let guard = crate::field::DEFAULT_GUARD.min(n.saturating_sub(1)).max(1);
        let field = Field::with_precision(self.prime, n, guard)?;
        self.build_in(&field)
    }

    pub fn build_in(&self, field: &Field) -> Result<Algebra> {
        self.validate()?;
        if field.prime() != self.prime || !field.is_base() {
            return Err(Error::FieldMismatch);
        }
        let q = |r: &Rat| field.from_rational(&r.0);
        let mat = |m: &RatMatrix| {
            UltraMatrix::from_rows(field, m.iter().map(|r| r.iter().map(q).collect()).collect())
        };
        let mut parts = AlgebraParts::new(self.name.clone(), self.dim);
        parts.products = self
            .table
            .iter()
            .map(|(i, j, k, c)| (*i, *j, *k, q(c)))
            .collect();
        parts.unit = self.unit.as_ref().map(|u| u.iter().map(q).collect());
        // rows of the file are images; the matrix acts on columns
        parts.involution = self
            .involution
            .as_ref()
            .map(mat)
            .transpose()?
            .map(|m| m.transpose());
        parts.form = self.form.as_ref().map(mat).transpose()?;
        parts.realization = self
            .realization
            .as_ref()
            .map(|r| r.iter().map(mat).collect::<Result<Vec<_>>>())
            .transpose()?;
        Algebra::build(field, parts)
    }
}
