//! The JSON document format.
//!
//! ```json
//! {
//!   "field": "Q",
//!   "A":  {"z1": [0,1,0], "z2": [0,0,1], "q1": [0,0,1,0,0,1], "q2": [0,1,0,0,0,0]},
//!   "B":  {"l1": [0,0,0], "l2": [0,0,0], "c1": [1,0,0,0,0,0], "c2": [0,0,0,0,0,0]},
//!   "B2": {"l1": [0,0,0], "l2": [0,0,0], "c1": [0,0,0,0,0,0], "c2": [1,0,0,0,0,0]}
//! }
//! ```
//!
//! `field` is `"Q"` or `{"Fp": p}`. Linear forms list coefficients of
//! `[x0, x1, x2]`, quadrics of `[x0^2, x0x1, x0x2, x1^2, x1x2, x2^2]`.
//! Scalars are JSON integers or strings `"n"` / `"n/d"`; output always uses
//! canonical strings.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::dspace::{BinaryForm, D0Form, FormU, FormX};
use crate::foundation::{Field, Scalar};
use crate::moduli::{Certificate, Direction, GroupElement, NormalCoords, PointP2, SheafMatrix};
use crate::rbundle::{AutomorphismL, OrbitReport, PhiMatrix, SupportReport};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldTag {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarDoc {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub z1: Vec<ScalarDoc>,
    pub z2: Vec<ScalarDoc>,
    pub q1: Vec<ScalarDoc>,
    pub q2: Vec<ScalarDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirectionDoc {
    pub l1: Vec<ScalarDoc>,
    pub l2: Vec<ScalarDoc>,
    pub c1: Vec<ScalarDoc>,
    pub c2: Vec<ScalarDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub field: FieldTag,
    #[serde(rename = "A")]
    pub a: MatrixDoc,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<DirectionDoc>,
    #[serde(rename = "B2", default, skip_serializing_if = "Option::is_none")]
    pub b2: Option<DirectionDoc>,
}

/// A parsed and validated input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Input {
    pub name: Option<String>,
    pub description: Option<String>,
    pub field: Field,
    pub a: SheafMatrix,
    pub b: Option<Direction>,
    pub b2: Option<Direction>,
}

fn parse_field(tag: &FieldTag) -> Result<Field, Error> {
    match tag {
        FieldTag::Named(s) if s == "Q" => Ok(Field::Rational),
        FieldTag::Named(s) => Err(Error::Parse(format!(
            "field: unknown field {s:?}, expected \"Q\" or {{\"Fp\": p}}"
        ))),
        FieldTag::Prime { fp } => {
            Field::prime(*fp).map_err(|e| Error::Parse(format!("field: {e}")))
        }
    }
}

fn parse_form(
    field: Field,
    path: &str,
    degree: u32,
    entries: &[ScalarDoc],
) -> Result<FormX, Error> {
    let want = if degree == 1 { 3 } else { 6 };
    if entries.len() != want {
        return Err(Error::Parse(format!(
            "{path}: expected {want} coefficients, got {}",
            entries.len()
        )));
    }
    let coeffs = entries
        .iter()
        .enumerate()
        .map(|(i, e)| match e {
            ScalarDoc::Int(n) => Ok(field.from_i64(*n)),
            ScalarDoc::Text(s) => field
                .parse(s)
                .map_err(|err| Error::Parse(format!("{path}[{i}]: {err}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    FormX::new(degree, coeffs)
}

fn parse_direction(field: Field, name: &str, d: &DirectionDoc) -> Result<Direction, Error> {
    Direction::new(
        parse_form(field, &format!("{name}.l1"), 1, &d.l1)?,
        parse_form(field, &format!("{name}.l2"), 1, &d.l2)?,
        parse_form(field, &format!("{name}.c1"), 2, &d.c1)?,
        parse_form(field, &format!("{name}.c2"), 2, &d.c2)?,
    )
}

impl InputDocument {
    /// Parses JSON text; errors name the offending field.
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            if path == "." {
                Error::Parse(inner.to_string())
            } else {
                Error::Parse(format!("{path}: {inner}"))
            }
        })
    }

    pub fn resolve(&self) -> Result<Input, Error> {
        let field = parse_field(&self.field)?;
        let a = SheafMatrix::new(
            parse_form(field, "A.z1", 1, &self.a.z1)?,
            parse_form(field, "A.z2", 1, &self.a.z2)?,
            parse_form(field, "A.q1", 2, &self.a.q1)?,
            parse_form(field, "A.q2", 2, &self.a.q2)?,
        )?;
        Ok(Input {
            name: self.name.clone(),
            description: self.description.clone(),
            field,
            b: self
                .b
                .as_ref()
                .map(|d| parse_direction(field, "B", d))
                .transpose()?,
            b2: self
                .b2
                .as_ref()
                .map(|d| parse_direction(field, "B2", d))
                .transpose()?,
            a,
        })
    }

    /// The canonical document for an input; scalars become strings.
    pub fn from_input(input: &Input) -> Self {
        let docs = |f: &FormX| {
            f.coeffs()
                .iter()
                .map(|c| ScalarDoc::Text(c.to_string()))
                .collect()
        };
        let dir = |d: &Direction| DirectionDoc {
            l1: docs(&d.l1),
            l2: docs(&d.l2),
            c1: docs(&d.c1),
            c2: docs(&d.c2),
        };
        InputDocument {
            name: input.name.clone(),
            description: input.description.clone(),
            field: match input.field {
                Field::Rational => FieldTag::Named("Q".into()),
                Field::Prime(p) => FieldTag::Prime { fp: p },
            },
            a: MatrixDoc {
                z1: docs(&input.a.z1),
                z2: docs(&input.a.z2),
                q1: docs(&input.a.q1),
                q2: docs(&input.a.q2),
            },
            b: input.b.as_ref().map(dir),
            b2: input.b2.as_ref().map(dir),
        }
    }
}

pub fn parse_input(text: &str) -> Result<Input, Error> {
    InputDocument::from_json(text)?.resolve()
}

pub fn scalar(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

pub fn scalars<'a>(it: impl IntoIterator<Item = &'a Scalar>) -> Value {
    Value::Array(it.into_iter().map(scalar).collect())
}

pub fn form_x(f: &FormX) -> Value {
    json!({"coeffs": scalars(f.coeffs()), "poly": f.render()})
}

pub fn form_u(f: &FormU) -> Value {
    Value::String(f.render())
}

pub fn binary(f: &BinaryForm) -> Value {
    Value::String(f.render())
}

pub fn d0_form(f: &D0Form) -> Value {
    Value::String(f.render())
}

pub fn point(p: &PointP2) -> Value {
    scalars(p.coords())
}

pub fn matrix(a: &SheafMatrix) -> Value {
    json!({
        "z1": scalars(a.z1.coeffs()),
        "z2": scalars(a.z2.coeffs()),
        "q1": scalars(a.q1.coeffs()),
        "q2": scalars(a.q2.coeffs()),
        "display": a.to_string(),
    })
}

pub fn direction(b: &Direction) -> Value {
    json!({
        "l1": scalars(b.l1.coeffs()),
        "l2": scalars(b.l2.coeffs()),
        "c1": scalars(b.c1.coeffs()),
        "c2": scalars(b.c2.coeffs()),
    })
}

pub fn normal(n: &NormalCoords) -> Value {
    json!([scalar(&n.n1), scalar(&n.n2)])
}

pub fn group_element(g: &GroupElement) -> Value {
    let m = g.g();
    json!({
        "g": [[scalar(m.get(0, 0)), scalar(m.get(0, 1))], [scalar(m.get(1, 0)), scalar(m.get(1, 1))]],
        "lambda": scalar(g.lambda()),
        "mu": scalar(g.mu()),
        "z": scalars(g.z().coeffs()),
    })
}

pub fn certificate(c: &Certificate) -> Value {
    let m = &c.coordinate_change;
    let rows: Vec<Value> = (0..3).map(|r| scalars(m.row(r))).collect();
    json!({"coordinate_change": rows, "group": group_element(&c.group)})
}

pub fn phi(p: &PhiMatrix) -> Value {
    json!({
        "e11": p.e11().render(),
        "e12": p.e12().render(),
        "e21": p.e21().render(),
        "e22": p.e22().render(),
    })
}

pub fn automorphism(g: &AutomorphismL) -> Value {
    json!({"alpha": scalar(&g.alpha), "beta": scalar(&g.beta), "gamma": scalar(&g.gamma)})
}

pub fn support(r: &SupportReport) -> Value {
    json!({
        "c0": d0_form(&r.c0),
        "c1": form_u(&r.c1),
        "boundary": binary(&r.boundary),
        "boundary_class": r.boundary_class,
        "boundary_roots": r.boundary_roots.iter().map(point).collect::<Vec<_>>(),
        "conic_class": r.conic_class,
        "contains_L": r.contains_l,
        "q": point(&r.q),
        "p_B": r.p_b.as_ref().map(point),
    })
}

pub fn orbits(r: &OrbitReport) -> Value {
    json!({
        "stabilizer_class": r.stabilizer_class,
        "group_order": r.group_order,
        "stabilizer_generators": r.stabilizer_generators.iter().map(automorphism).collect::<Vec<_>>(),
        "orbit_description": r.orbit_description,
        "orbit_counts": r.orbit_counts,
        "p_B": r.p_b.as_ref().map(point),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const NODAL: &str = r#"{
        "field": "Q",
        "A": {"z1": [0,1,0], "z2": [0,0,1], "q1": [0,0,1,0,0,1], "q2": [0,1,0,0,0,0]},
        "B": {"l1": [0,0,0], "l2": [0,0,0], "c1": ["1/2",0,0,0,0,0], "c2": [0,0,0,0,0,0]}
    }"#;

    #[test]
    fn parses_and_round_trips() {
        let input = parse_input(NODAL).unwrap();
        assert_eq!(input.field, Field::Rational);
        assert_eq!(input.b.as_ref().unwrap().xi00().to_string(), "1/2");
        let doc = InputDocument::from_input(&input);
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(parse_input(&text).unwrap(), input);
        let again = InputDocument::from_json(&text).unwrap();
        assert_eq!(again, doc);
    }

    #[test]
    fn errors_name_the_field() {
        let short = NODAL.replace("\"q1\": [0,0,1,0,0,1]", "\"q1\": [0,0,1,0,0]");
        let err = parse_input(&short).unwrap_err().to_string();
        assert!(err.contains("A.q1"), "{err}");

        let missing = NODAL.replace("\"z2\": [0,0,1], ", "");
        let err = parse_input(&missing).unwrap_err().to_string();
        assert!(err.contains("z2"), "{err}");

        let bad = NODAL.replace("\"1/2\"", "\"x\"");
        let err = parse_input(&bad).unwrap_err().to_string();
        assert!(err.contains("B.c1[0]"), "{err}");

        let field = NODAL.replace("\"Q\"", "{\"Fp\": 9}");
        let err = parse_input(&field).unwrap_err().to_string();
        assert!(err.contains("field"), "{err}");
    }

    #[test]
    fn prime_field_reduces_inputs() {
        let text = NODAL.replace("\"Q\"", "{\"Fp\": 7}");
        let input = parse_input(&text).unwrap();
        assert_eq!(input.b.unwrap().xi00().to_string(), "4");
    }
}
