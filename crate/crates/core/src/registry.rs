//! Registry of cuspidal lines and the local numerical invariants attached to
//! them.
//!
//! A line stands for the set `{ν^a ρ}` generated by an abstract cuspidal
//! representation `ρ` of some `GL_p`. Nothing about `ρ` is modeled except its
//! size `p`, the line of its contragredient and whether it is an unramified
//! character (which only matters for `L`-functions).

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::{Error, Exponent, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineId(pub(crate) u32);

impl LineId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for LineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineInfo {
    pub id: LineId,
    pub name: String,
    /// Size of the group carrying the base cuspidal (`ρ ∈ C_p`).
    pub p: u32,
    /// Line of the contragredient of the base point.
    pub dual: LineId,
    /// Base point is an unramified character (`p = 1` only).
    pub unramified: bool,
}

/// Twist `ν^exp ρ` of the base point of a line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CuspidalPoint {
    pub line: LineId,
    pub exp: Exponent,
}

impl CuspidalPoint {
    pub fn new(line: LineId, exp: Exponent) -> Self {
        Self { line, exp }
    }
}

/// Local division algebra of dimension `d²` over the base field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraLocal {
    d: u32,
}

impl AlgebraLocal {
    pub fn new(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("d must be positive".into()));
        }
        Ok(Self { d })
    }

    pub fn d(self) -> u32 {
        self.d
    }

    pub fn is_split(self) -> bool {
        self.d == 1
    }
}

/// Smallest `s ≥ 1` such that `d | s·p`.
pub fn s_invariant(p: u32, d: u32) -> u32 {
    assert!(p >= 1 && d >= 1, "s_invariant needs positive arguments");
    d / d.gcd(&p)
}

/// Serialized form of one registry entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineSpec {
    pub name: String,
    pub p: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub unramified: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LineRegistry {
    lines: Vec<LineInfo>,
    by_name: HashMap<String, LineId>,
}

impl LineRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry holding the single self-dual line `rho` with `p = 1`, whose
    /// base point is the trivial (unramified) character.
    pub fn standard() -> Self {
        let mut reg = Self::new();
        let rho = reg.register_line("rho", 1, None).expect("fresh registry");
        reg.set_unramified(rho, true).expect("p = 1");
        reg
    }

    pub fn register_line(&mut self, name: &str, p: u32, dual: Option<LineId>) -> Result<LineId> {
        if p == 0 {
            return Err(Error::InvalidArgument(format!("line `{name}`: p must be positive")));
        }
        if self.by_name.contains_key(name) {
            return Err(Error::DuplicateLine(name.to_string()));
        }
        let id = LineId(self.lines.len() as u32);
        if let Some(other) = dual {
            let other_info = self.get(other)?;
            if other_info.dual != other {
                return Err(Error::DualConflict(other_info.name.clone()));
            }
            if other_info.p != p {
                return Err(Error::InvalidArgument(format!(
                    "contragredient lines must have equal p ({} vs {p})",
                    other_info.p
                )));
            }
        }
        self.lines.push(LineInfo {
            id,
            name: name.to_string(),
            p,
            dual: dual.unwrap_or(id),
            unramified: false,
        });
        if let Some(other) = dual {
            self.lines[other.index()].dual = id;
        }
        self.by_name.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn set_unramified(&mut self, id: LineId, flag: bool) -> Result<()> {
        let info = self.get(id)?;
        if flag && info.p != 1 {
            return Err(Error::InvalidArgument(format!(
                "line `{}` has p = {}; only p = 1 lines can be unramified characters",
                info.name, info.p
            )));
        }
        self.lines[id.index()].unramified = flag;
        Ok(())
    }

    pub fn get(&self, id: LineId) -> Result<&LineInfo> {
        self.lines
            .get(id.index())
            .ok_or_else(|| Error::UnknownLine(id.to_string()))
    }

    pub fn lookup(&self, name: &str) -> Result<LineId> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownLine(name.to_string()))
    }

    pub fn name(&self, id: LineId) -> &str {
        self.lines.get(id.index()).map_or("?", |l| l.name.as_str())
    }

    pub fn p(&self, id: LineId) -> Result<u32> {
        Ok(self.get(id)?.p)
    }

    pub fn dual(&self, id: LineId) -> Result<LineId> {
        Ok(self.get(id)?.dual)
    }

    pub fn lines(&self) -> impl Iterator<Item = &LineInfo> {
        self.lines.iter()
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// `h(ν^x ρ) = ν^{-x} h(ρ)`.
    pub fn contragredient_point(&self, pt: CuspidalPoint) -> Result<CuspidalPoint> {
        Ok(CuspidalPoint::new(self.dual(pt.line)?, -pt.exp))
    }

    pub fn from_specs(specs: &[LineSpec]) -> Result<Self> {
        let mut reg = Self::new();
        // Register everything self-dual first so that forward references work.
        for spec in specs {
            let id = reg.register_line(&spec.name, spec.p, None)?;
            if spec.unramified {
                reg.set_unramified(id, true)?;
            }
        }
        for spec in specs {
            let Some(dual_name) = &spec.dual else { continue };
            let a = reg.lookup(&spec.name)?;
            let b = reg.lookup(dual_name)?;
            let (da, db) = (reg.dual(a)?, reg.dual(b)?);
            if da == b && db == a {
                continue;
            }
            if da != a || db != b {
                return Err(Error::DualConflict(spec.name.clone()));
            }
            if reg.p(a)? != reg.p(b)? {
                return Err(Error::InvalidArgument(format!(
                    "contragredient lines `{}` and `{dual_name}` have different p",
                    spec.name
                )));
            }
            reg.lines[a.index()].dual = b;
            reg.lines[b.index()].dual = a;
        }
        Ok(reg)
    }

    pub fn to_specs(&self) -> Vec<LineSpec> {
        self.lines
            .iter()
            .map(|l| LineSpec {
                name: l.name.clone(),
                p: l.p,
                dual: (l.dual != l.id).then(|| self.name(l.dual).to_string()),
                unramified: l.unramified,
            })
            .collect()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let specs: Vec<LineSpec> =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_specs(&specs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_specs()).expect("plain data")
    }
}
