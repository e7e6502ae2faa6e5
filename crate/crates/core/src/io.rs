//! JSON instance files.
//!
//! ```json
//! {"b": 25, "x_star": [1, 1, 0, 1, 0],
//!  "items": [{"p": 8, "c": 5, "u_bar": 3, "w": "3"}, ...]}
//! ```
//!
//! Caps default to 0 and weights to 1. Weights are strings such as `"1/2"`
//! or bare integers. Unknown fields are rejected. The norm is not part of the
//! file; parsed instances default to l1.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    BinarySolution, CostWeights, FkpInstance, InverseInstance, Item, ModificationBounds, Norm,
};
use crate::rational::Rational;

fn one() -> Rational {
    Rational::one()
}

fn is_zero(x: &i64) -> bool {
    *x == 0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ItemDoc {
    p: i64,
    c: i64,
    #[serde(default, skip_serializing_if = "is_zero")]
    u_bar: i64,
    #[serde(default, skip_serializing_if = "is_zero")]
    v_bar: i64,
    #[serde(default, skip_serializing_if = "is_zero")]
    lambda_bar: i64,
    #[serde(default, skip_serializing_if = "is_zero")]
    mu_bar: i64,
    #[serde(default = "one")]
    w: Rational,
    #[serde(default = "one")]
    w_cost: Rational,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    b: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x_star: Option<Vec<u8>>,
    items: Vec<ItemDoc>,
}

fn read_doc(text: &str) -> Result<InstanceDoc> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn items_of(doc: &InstanceDoc) -> Vec<Item> {
    doc.items
        .iter()
        .map(|it| Item {
            profit: it.p,
            cost: it.c,
        })
        .collect()
}

/// Reads a full inverse instance. `x_star` is required.
pub fn parse_instance(text: &str) -> Result<InverseInstance> {
    let doc = read_doc(text)?;
    let bits = doc.x_star.as_deref().ok_or_else(|| {
        Error::InvariantViolation("x_star is required for an inverse instance".into())
    })?;
    let items = &doc.items;
    let inv = InverseInstance {
        base: FkpInstance {
            items: items_of(&doc),
            budget: doc.b,
        },
        x_star: BinarySolution::from_bits(bits)?,
        bounds: ModificationBounds {
            u_bar: items.iter().map(|it| it.u_bar).collect(),
            v_bar: items.iter().map(|it| it.v_bar).collect(),
            lambda_bar: items.iter().map(|it| it.lambda_bar).collect(),
            mu_bar: items.iter().map(|it| it.mu_bar).collect(),
        },
        weights: CostWeights {
            w: items.iter().map(|it| it.w.clone()).collect(),
            w_cost: items.iter().map(|it| it.w_cost.clone()).collect(),
        },
        norm: Norm::L1,
    };
    inv.validate()?;
    Ok(inv)
}

/// Reads only the forward part (`b` and item profits/costs) of a document.
pub fn parse_fkp(text: &str) -> Result<FkpInstance> {
    let doc = read_doc(text)?;
    FkpInstance::new(items_of(&doc), doc.b)
}

pub fn serialize_instance(inv: &InverseInstance) -> String {
    let doc = InstanceDoc {
        b: inv.base.budget,
        x_star: Some(inv.x_star.to_bits()),
        items: (0..inv.len())
            .map(|i| ItemDoc {
                p: inv.base.items[i].profit,
                c: inv.base.items[i].cost,
                u_bar: inv.bounds.u_bar[i],
                v_bar: inv.bounds.v_bar[i],
                lambda_bar: inv.bounds.lambda_bar[i],
                mu_bar: inv.bounds.mu_bar[i],
                w: inv.weights.w[i].clone(),
                w_cost: inv.weights.w_cost[i].clone(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("instance documents always serialize")
}

pub fn serialize_fkp(inst: &FkpInstance) -> String {
    let doc = InstanceDoc {
        b: inst.budget,
        x_star: None,
        items: inst
            .items
            .iter()
            .map(|it| ItemDoc {
                p: it.profit,
                c: it.cost,
                u_bar: 0,
                v_bar: 0,
                lambda_bar: 0,
                mu_bar: 0,
                w: Rational::one(),
                w_cost: Rational::one(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("instance documents always serialize")
}

pub fn read_instance(path: impl AsRef<std::path::Path>) -> Result<InverseInstance> {
    parse_instance(&std::fs::read_to_string(path)?)
}

pub fn write_instance(path: impl AsRef<std::path::Path>, inv: &InverseInstance) -> Result<()> {
    std::fs::write(path, serialize_instance(inv) + "\n")?;
    Ok(())
}
