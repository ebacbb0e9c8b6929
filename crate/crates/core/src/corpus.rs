//! The built-in example corpus.
//!
//! Each example is a JSON fixture under `fixtures/` with a matrix `A` in `X8`
//! and two normal directions. Classification uses direction `B`.

use serde::Serialize;

use crate::format::{FieldTag, Input, InputDocument};
use crate::moduli::is_in_x8;
use crate::rbundle::{
    build_phi, stabilizer_orbits, support_report, BoundaryClass, ConicClass, StabilizerClass,
};
use crate::verify::ff_stabilizer_count;
use crate::Error;

/// Prime used for the brute-force stabilizer count in the table.
pub const COUNT_PRIME: u64 = 7;

#[derive(Clone, Copy, Debug)]
pub struct Example {
    pub name: &'static str,
    pub json: &'static str,
    pub boundary_class: BoundaryClass,
}

macro_rules! example {
    ($name:literal, $class:ident) => {
        Example {
            name: $name,
            json: include_str!(concat!("../fixtures/", $name, ".json")),
            boundary_class: BoundaryClass::$class,
        }
    };
}

pub const EXAMPLES: [Example; 11] = [
    example!("nodal", TwoPoints),
    example!("nodal-two-lines", TwoPoints),
    example!("cusp", OnePoint),
    example!("cusp-two-lines", OnePoint),
    example!("simple-three-lines", TwoPoints),
    example!("line-plus-conic", TwoPoints),
    example!("tangent-line-conic", OnePoint),
    example!("double-line", OnePoint),
    example!("three-lines-through-point", WholeLine),
    example!("line-plus-double-line", WholeLine),
    example!("triple-line", WholeLine),
];

pub fn find(name: &str) -> Option<&'static Example> {
    EXAMPLES.iter().find(|e| e.name == name)
}

impl Example {
    pub fn document(&self) -> InputDocument {
        InputDocument::from_json(self.json).expect("fixture parses")
    }

    pub fn input(&self) -> Input {
        self.document().resolve().expect("fixture resolves")
    }

    /// The same example with coefficients reduced mod `p`.
    pub fn input_mod(&self, p: u64) -> Result<Input, Error> {
        let mut doc = self.document();
        doc.field = FieldTag::Prime { fp: p };
        doc.resolve()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationRow {
    pub name: String,
    pub cubic: String,
    pub boundary: String,
    pub boundary_class: BoundaryClass,
    pub conic: String,
    pub conic_class: ConicClass,
    #[serde(rename = "contains_L")]
    pub contains_l: bool,
    pub stabilizer_class: StabilizerClass,
    /// Order over `Q`; `None` for infinite groups.
    pub stabilizer_order: Option<u64>,
    /// Brute-force stabilizer count over `F_7`.
    pub count_f7: u64,
}

pub fn classify(example: &Example) -> Result<ClassificationRow, Error> {
    let input = example.input();
    if !is_in_x8(&input.a)? {
        return Err(Error::NotInX8);
    }
    let b = input
        .b
        .as_ref()
        .ok_or_else(|| Error::Parse("B: missing".into()))?;
    let report = support_report(&build_phi(&input.a, b)?);
    let orbits = stabilizer_orbits(&report.c1)?;

    let reduced = example.input_mod(COUNT_PRIME)?;
    let rb = reduced.b.as_ref().expect("reduction keeps B");
    let c1_p = support_report(&build_phi(&reduced.a, rb)?).c1;
    let count = ff_stabilizer_count(&c1_p)?;

    Ok(ClassificationRow {
        name: example.name.to_string(),
        cubic: input.a.det().render(),
        boundary: report.boundary.render(),
        boundary_class: report.boundary_class,
        conic: report.c1.render(),
        conic_class: report.conic_class,
        contains_l: report.contains_l,
        stabilizer_class: orbits.stabilizer_class,
        stabilizer_order: orbits.group_order,
        count_f7: count.count,
    })
}

pub fn classification_table() -> Result<Vec<ClassificationRow>, Error> {
    EXAMPLES.iter().map(classify).collect()
}
