//! Formal `L`-functions and `ε′`-factors.
//!
//! `q`, `s`, `ψ` and the Rankin–Selberg base `L(·, ρ×ρ̃)` stay symbolic; only
//! shifts and exponents are computed.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::multiseg::{Multisegment, Segment};
use crate::registry::{s_invariant, CuspidalPoint, LineId, LineRegistry};
use crate::{q, qi, Error, Exponent, Result};

/// `∏_i (1 − q^{−s−a_i})^{−1}`, stored as the sorted shifts `a_i`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FormalLFactor(Vec<Exponent>);

impl FormalLFactor {
    pub fn new(shifts: impl IntoIterator<Item = Exponent>) -> Self {
        let mut v: Vec<Exponent> = shifts.into_iter().collect();
        v.sort();
        Self(v)
    }

    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn shifts(&self) -> &[Exponent] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn product(&self, other: &Self) -> Self {
        Self::new(self.0.iter().chain(other.0.iter()).copied())
    }
}

fn signed_term(var: &str, shift: Exponent) -> String {
    if shift.is_zero() {
        var.to_string()
    } else if shift > qi(0) {
        format!("{var}+{shift}")
    } else {
        format!("{var}-{}", -shift)
    }
}

impl fmt::Display for FormalLFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        // shifts are printed from the largest down
        for (i, a) in self.0.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "(1 - q^({}))^-1", signed_term("-s", -*a))?;
        }
        Ok(())
    }
}

/// `∏ ε′(s + a, ρ, ψ)` over split cuspidal points `ν^a ρ`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct EpsilonFactor(Vec<CuspidalPoint>);

impl EpsilonFactor {
    pub fn new(points: impl IntoIterator<Item = CuspidalPoint>) -> Self {
        let mut v: Vec<CuspidalPoint> = points.into_iter().collect();
        v.sort();
        Self(v)
    }

    pub fn terms(&self) -> &[CuspidalPoint] {
        &self.0
    }

    pub fn product(&self, other: &Self) -> Self {
        Self::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn shifts_on(&self, line: LineId) -> Vec<Exponent> {
        self.0.iter().filter(|p| p.line == line).map(|p| p.exp).collect()
    }

    pub fn render(&self, reg: &LineRegistry) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .rev()
            .map(|p| format!("eps'({}, {}, psi)", signed_term("s", p.exp), reg.name(p.line)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn check_step(seg: &Segment, d: u32, reg: &LineRegistry) -> Result<u32> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be positive".into()));
    }
    let s = s_invariant(reg.p(seg.line)?, d);
    if seg.step != s {
        return Err(Error::InvalidArgument(format!(
            "{seg} has step {} but cuspidals of this line have s = {s} for d = {d}",
            seg.step
        )));
    }
    Ok(s)
}

/// Split points of the block realizing an inner-form segment (the segment
/// itself when `d = 1`).
fn split_support(seg: &Segment, s: u32) -> impl Iterator<Item = CuspidalPoint> + '_ {
    let half = q(s as i64 - 1, 2);
    seg.points().flat_map(move |pt| {
        (0..s as i64).map(move |j| CuspidalPoint::new(pt.line, pt.exp - half + qi(j)))
    })
}

/// `L(s, σ′)` of an essentially square integrable `σ′ = T(ρ′,k)` of
/// `GL_m(D)`, `dim D = d²` (`d = 1`: split side).
///
/// Non-trivial only when the cuspidal is an unramified character, i.e. the
/// line is flagged unramified (hence `p = 1`); then the shift is the ending
/// of the split block, `end(σ′) + (d−1)/2`.
pub fn l_esi(seg: &Segment, d: u32, reg: &LineRegistry) -> Result<FormalLFactor> {
    let s = check_step(seg, d, reg)?;
    let info = reg.get(seg.line)?;
    if !info.unramified {
        return Ok(FormalLFactor::one());
    }
    Ok(FormalLFactor::new([seg.end() + q(s as i64 - 1, 2)]))
}

/// `ε′(s, σ′, ψ)` of an essentially square integrable representation.
pub fn eps_esi(seg: &Segment, d: u32, reg: &LineRegistry) -> Result<EpsilonFactor> {
    let s = check_step(seg, d, reg)?;
    Ok(EpsilonFactor::new(split_support(seg, s)))
}

pub fn l_irr(m: &Multisegment, d: u32, reg: &LineRegistry) -> Result<FormalLFactor> {
    m.iter().try_fold(FormalLFactor::one(), |acc, seg| Ok(acc.product(&l_esi(seg, d, reg)?)))
}

pub fn eps_irr(m: &Multisegment, d: u32, reg: &LineRegistry) -> Result<EpsilonFactor> {
    m.iter()
        .try_fold(EpsilonFactor::default(), |acc, seg| Ok(acc.product(&eps_esi(seg, d, reg)?)))
}

/// `∏ L(z + a, ρ×ρ̃)^{e(a)}`, stored as `a ↦ e(a)` without zero exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FormalRSProduct(BTreeMap<i64, i64>);

impl FormalRSProduct {
    pub fn new(entries: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut map = BTreeMap::new();
        for (a, e) in entries {
            *map.entry(a).or_insert(0) += e;
        }
        map.retain(|_, e| *e != 0);
        Self(map)
    }

    pub fn exponent(&self, shift: i64) -> i64 {
        self.0.get(&shift).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.0.iter().map(|(&a, &e)| (a, e))
    }

    /// Substitution `z ↦ z + t`.
    pub fn shifted(&self, t: i64) -> Self {
        Self::new(self.entries().map(|(a, e)| (a + t, e)))
    }

    pub fn times(&self, other: &Self) -> Self {
        Self::new(self.entries().chain(other.entries()))
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.entries().map(|(a, e)| (a, -e)))
    }

    /// Splits into (numerator, denominator).
    pub fn as_fraction(&self) -> (Self, Self) {
        let num = Self::new(self.entries().filter(|(_, e)| *e > 0));
        let den = Self::new(self.entries().filter(|(_, e)| *e < 0).map(|(a, e)| (a, -e)));
        (num, den)
    }
}

impl fmt::Display for FormalRSProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .entries()
            .map(|(a, e)| {
                let base = format!("L({})", signed_term("z", qi(a)));
                if e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `L(z, σ×σ̃)` for `σ` a Speh representation of multiplicity `s` over a
/// generic `ρ`, in terms of `L(·, ρ×ρ̃)`.
pub fn rs_lg(s: u32) -> FormalRSProduct {
    assert!(s >= 1, "multiplicity must be positive");
    let s = s as i64;
    let mut entries = vec![(0, s)];
    for j in 1..s {
        entries.push((s - j, j));
        entries.push((j - s, j));
    }
    FormalRSProduct::new(entries)
}

/// Normalizing factor of the intertwining operator, up to its `ε`-factor:
/// `(∏_{j=1}^s L(z−s+j), ∏_{j=1}^s L(z+j))`.
pub fn normalizing_factor(s: u32) -> (FormalRSProduct, FormalRSProduct) {
    assert!(s >= 1, "multiplicity must be positive");
    let s = s as i64;
    (
        FormalRSProduct::new((1..=s).map(|j| (j - s, 1))),
        FormalRSProduct::new((1..=s).map(|j| (j, 1))),
    )
}

/// `L(z, σ×σ̃) / L(1+z, σ×σ̃)` with `L(·, σ×σ̃)` expanded by [`rs_lg`].
pub fn rs_quotient(s: u32) -> (FormalRSProduct, FormalRSProduct) {
    let l = rs_lg(s);
    l.times(&l.shifted(1).inverse()).as_fraction()
}
