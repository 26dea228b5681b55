//! Canonical text forms; [`crate::parse`] reads them back.

use jlcalc::gkring::{multisegment_json, segment_json};
use jlcalc::transfer::SignedUnitaryProduct;
use jlcalc::{LineRegistry, Multisegment, Segment, Side, SpehUnit, UnitaryProduct, VirtualRep};
use num_traits::Zero;
use serde_json::{json, Value};

fn line_name(reg: &LineRegistry, seg: &Segment, side: Side) -> String {
    match side {
        Side::Split => reg.name(seg.line).to_string(),
        Side::Inner { .. } => format!("{}'", reg.name(seg.line)),
    }
}

pub fn segment(reg: &LineRegistry, seg: &Segment, side: Side) -> String {
    format!("{}:[{},{}]", line_name(reg, seg, side), seg.start, seg.end())
}

pub fn multisegment(reg: &LineRegistry, m: &Multisegment, side: Side) -> String {
    let parts: Vec<String> = m.iter().map(|s| segment(reg, s, side)).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn virtual_rep(reg: &LineRegistry, x: &VirtualRep) -> String {
    let mut out = String::new();
    for (i, (m, c)) in x.terms().enumerate() {
        let body = multisegment(reg, m, x.side());
        match (i, c < 0) {
            (0, _) => out.push_str(&format!("{c} * {body}")),
            (_, false) => out.push_str(&format!(" + {c} * {body}")),
            (_, true) => out.push_str(&format!(" - {} * {body}", -c)),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn unit(reg: &LineRegistry, u: &SpehUnit, side: Side) -> String {
    let mut out = String::new();
    if !u.twist.is_zero() {
        out.push_str(&format!("nu^({}) ", u.twist));
    }
    let name = if side == Side::Split { "u" } else { "u'" };
    out.push_str(&format!("{name}({},{})", segment(reg, &u.base, side), u.k));
    if let Some(a) = u.alpha {
        out.push_str(&format!("^(+-{a})"));
    }
    out
}

pub fn product(reg: &LineRegistry, p: &UnitaryProduct, side: Side) -> String {
    if p.is_empty() {
        return "1".into();
    }
    p.units().iter().map(|u| unit(reg, u, side)).collect::<Vec<_>>().join(" x ")
}

pub fn signed_product(reg: &LineRegistry, t: &SignedUnitaryProduct, d: u32) -> String {
    if t.is_zero() {
        return "0".into();
    }
    format!("{} * {}", t.sign, product(reg, &t.product, Side::Inner { d }))
}

pub fn side_json(side: Side) -> Value {
    match side {
        Side::Split => json!("split"),
        Side::Inner { d } => json!({ "inner": d }),
    }
}

pub fn multisegment_value(reg: &LineRegistry, m: &Multisegment, side: Side) -> Value {
    json!({ "side": side_json(side), "segments": multisegment_json(m, reg) })
}

pub fn virtual_value(reg: &LineRegistry, x: &VirtualRep) -> Value {
    json!({ "side": side_json(x.side()), "terms": x.to_json(reg) })
}

pub fn unit_value(reg: &LineRegistry, u: &SpehUnit) -> Value {
    json!({
        "base": segment_json(&u.base, reg),
        "k": u.k,
        "twist": u.twist.to_string(),
        "alpha": u.alpha.map(|a| a.to_string()),
    })
}

pub fn product_value(reg: &LineRegistry, p: &UnitaryProduct) -> Value {
    Value::Array(p.units().iter().map(|u| unit_value(reg, u)).collect())
}

pub fn signed_product_value(reg: &LineRegistry, t: &SignedUnitaryProduct) -> Value {
    json!({ "sign": t.sign, "units": product_value(reg, &t.product) })
}
