//! Published tables kept as data for comparison against machine output.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::expr::{Context, Expr};
use crate::field::VectorField;
use crate::lie_algebra::PARAM;

const BURGERS_G5: &str = include_str!("../fixtures/burgers_g5.json");

#[derive(Debug, Clone, Deserialize)]
pub struct FixtureSet {
    pub id: String,
    pub note: String,
    pub table1: Vec<Vec<String>>,
    pub table2: Vec<Vec<String>>,
    pub representatives: Vec<PrintedRepresentative>,
    pub projections: Vec<PrintedProjection>,
    pub table3: Vec<PrintedRow>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PrintedRepresentative {
    pub index: usize,
    pub coefficients: Vec<i64>,
    pub printed: BTreeMap<String, String>,
}

/// A printed projection `Z^z` and the signed representative indices listed with it.
#[derive(Debug, Clone, Deserialize)]
pub struct PrintedProjection {
    pub z: usize,
    pub from: Vec<i64>,
    pub printed: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Cell {
    pub latex: String,
    pub expr: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PrintedOperators {
    pub latex: String,
    pub fields: Vec<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PrintedRow {
    pub n: usize,
    pub z: String,
    pub invariant: Cell,
    pub f: Cell,
    pub g: Cell,
    pub operators: PrintedOperators,
}

/// Fixture set by identifier.
pub fn lookup(id: &str) -> Result<FixtureSet> {
    match id {
        "burgers-g5" => serde_json::from_str(BURGERS_G5)
            .map_err(|e| Error::Invalid(format!("fixture {id}: {e}"))),
        _ => Err(Error::Invalid(format!("unknown fixture set `{id}`"))),
    }
}

/// Context for table cells: the group parameter plus basis names as symbols.
pub fn table_context(names: &[String]) -> Result<Context> {
    let mut ctx = Context::new().group_parameter(PARAM)?;
    for n in names {
        ctx = ctx.constant(n)?;
    }
    Ok(ctx)
}

pub fn parse_table(cells: &[Vec<String>], names: &[String]) -> Result<Vec<Vec<Expr>>> {
    let ctx = table_context(names)?;
    cells
        .iter()
        .map(|row| row.iter().map(|c| Ok(ctx.parse(c)?)).collect())
        .collect()
}

pub fn parse_field(ctx: &Context, coords: &[&str], coeffs: &BTreeMap<String, String>) -> Result<VectorField> {
    VectorField::parse(ctx, coords, coeffs)
}
