//! JSON formats for fields, elements, lattices and reports.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bong::{BongLattice, Block};
use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::field::{FieldContext, FieldElement, FieldSpec, SquareClass};
use crate::space::SpaceInv;
use crate::universal::TestingEntry;

/// `{"val": v, "digits": [...]}` for `pi^v * sum digits[j] pi^j`, or a plain integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementLit {
    Int(i64),
    Digits { val: i64, digits: Vec<u32> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum LatticeSpec {
    H,
    A22rho,
    #[serde(rename = "piA22rho")]
    PiA22rho,
    #[serde(rename = "unary")]
    Unary { a: ElementLit },
    #[serde(rename = "binary_diag")]
    BinaryDiag { a: [ElementLit; 2] },
    #[serde(rename = "ternary_kappa")]
    TernaryKappa {
        delta: ElementLit,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        kappa: Option<ElementLit>,
    },
    #[serde(rename = "bong_literal")]
    BongLiteral { a: Vec<ElementLit> },
    #[serde(rename = "concat")]
    Concat { blocks: Vec<LatticeSpec> },
}

pub fn parse_field(text: &str) -> Result<FieldSpec> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("field: {e}")))
}

pub fn parse_lattice(text: &str) -> Result<LatticeSpec> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("lattice: {e}")))
}

pub fn element_from_lit(ctx: &FieldContext, lit: &ElementLit) -> Result<FieldElement> {
    match lit {
        ElementLit::Int(n) => Ok(ctx.from_int(*n)),
        ElementLit::Digits { val, digits } => ctx.from_digits(*val, digits),
    }
}

/// All known digits of `x`, trailing zeros dropped.
pub fn element_to_lit(ctx: &FieldContext, x: &FieldElement) -> ElementLit {
    match x.val() {
        None => ElementLit::Int(0),
        Some(v) => {
            let mut digits = ctx.digits(x, x.rel_prec().max(0) as usize);
            while digits.last() == Some(&0) {
                digits.pop();
            }
            ElementLit::Digits { val: v, digits }
        }
    }
}

pub fn block_from_spec(ctx: &FieldContext, spec: &LatticeSpec) -> Result<Block> {
    let el = |l: &ElementLit| element_from_lit(ctx, l);
    Ok(match spec {
        LatticeSpec::H => Block::H,
        LatticeSpec::A22rho => Block::A22Rho,
        LatticeSpec::PiA22rho => Block::PiA22Rho,
        LatticeSpec::Unary { a } => Block::Unary(el(a)?),
        LatticeSpec::BinaryDiag { a } => Block::BinaryDiag(el(&a[0])?, el(&a[1])?),
        LatticeSpec::TernaryKappa { delta, kappa } => {
            Block::TernaryKappa(el(delta)?, kappa.as_ref().map(el).transpose()?)
        }
        LatticeSpec::BongLiteral { a } => Block::Literal(a.iter().map(el).collect::<Result<_>>()?),
        LatticeSpec::Concat { blocks } => {
            Block::Concat(blocks.iter().map(|b| block_from_spec(ctx, b)).collect::<Result<_>>()?)
        }
    })
}

pub fn lattice_from_spec(ctx: &Arc<FieldContext>, spec: &LatticeSpec) -> Result<BongLattice> {
    crate::bong::make_block(ctx, &block_from_spec(ctx, spec)?)
}

pub fn lattice_to_spec(ctx: &FieldContext, l: &BongLattice) -> LatticeSpec {
    LatticeSpec::BongLiteral { a: l.entries().iter().map(|x| element_to_lit(ctx, x)).collect() }
}

pub fn ext_to_json(x: Ext) -> Value {
    match (x.is_inf(), x.as_int()) {
        (true, _) => json!("inf"),
        (false, Some(v)) => json!(v),
        (false, None) => json!(x.to_f64()),
    }
}

pub fn class_to_json(ctx: &FieldContext, c: SquareClass) -> Value {
    let (val, digits) = ctx.class_digits(c);
    json!({
        "label": ctx.class_label(c),
        "rep": {"val": val, "digits": digits},
        "parity": c.parity(),
        "d": ext_to_json(c.dval()),
    })
}

pub fn space_to_json(ctx: &FieldContext, v: &SpaceInv) -> Value {
    json!({
        "dim": v.dim,
        "det": class_to_json(ctx, v.det),
        "hasse": v.hasse,
        "hasse_convention": "prod_{i<j} (a_i, a_j)",
    })
}

pub fn invariants_to_json(ctx: &FieldContext, l: &BongLattice) -> Value {
    json!({
        "rank": l.rank(),
        "R": l.r_vec(),
        "alpha": l.alphas().iter().map(|&a| ext_to_json(a)).collect::<Vec<_>>(),
        "classes": l.classes().iter().map(|&c| ctx.class_label(c)).collect::<Vec<_>>(),
        "space": space_to_json(ctx, &l.space()),
        "integral": l.is_integral(),
        "bong": lattice_to_spec(ctx, l),
    })
}

pub fn testing_entry_to_json(ctx: &FieldContext, t: &TestingEntry) -> Value {
    json!({
        "nu": t.nu,
        "c": class_to_json(ctx, t.c),
        "jordan": t.jordan,
        "R": t.lattice.r_vec(),
        "bong": lattice_to_spec(ctx, &t.lattice),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn parse_lattice_kinds() {
        let spec = parse_lattice(
            r#"{"kind":"concat","blocks":[{"kind":"H"},{"kind":"unary","a":3},
                {"kind":"binary_diag","a":[1,{"val":1,"digits":[1,1]}]}]}"#,
        )
        .unwrap();
        let k = make_field(1, 1).unwrap();
        let l = lattice_from_spec(&k, &spec).unwrap();
        assert_eq!(l.r_vec(), &[0, -2, 0, 0, 1]);
    }

    #[test]
    fn lattice_roundtrip() {
        let k = make_field(2, 1).unwrap();
        let spec = parse_lattice(r#"{"kind":"concat","blocks":[{"kind":"A22rho"},{"kind":"piA22rho"}]}"#).unwrap();
        let l = lattice_from_spec(&k, &spec).unwrap();
        let text = serde_json::to_string(&lattice_to_spec(&k, &l)).unwrap();
        let back = lattice_from_spec(&k, &parse_lattice(&text).unwrap()).unwrap();
        assert!(l.same_bong(&back));
    }

    #[test]
    fn field_json() {
        let s = parse_field(r#"{"e":2,"f":1,"eis_poly":[[-2],[0],[1]]}"#).unwrap();
        assert_eq!(s.e, 2);
        assert!(parse_field(r#"{"e":"x"}"#).is_err());
    }
}
