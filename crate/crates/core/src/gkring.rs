//! Grothendieck groups over the standard basis, Speh units and Tadić's
//! expansion formulas.
//!
//! A [`Multisegment`] is read either as the standard module `×_i Z(Δ_i)` (a
//! basis element of a [`VirtualRep`]) or as its Langlands quotient; the role
//! is fixed by the function consuming it.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::multiseg::{Multisegment, Segment};
use crate::perm::{sign, tadic_permutations};
use crate::registry::{LineId, LineRegistry};
use crate::{q, qi, Error, Exponent, Result};

/// Which group the labels live on: `GL_n(F)` or `GL_m(D)` with `dim D = d²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Split,
    Inner { d: u32 },
}

/// Integer combination of standard modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualRep {
    side: Side,
    terms: BTreeMap<Multisegment, i64>,
}

impl VirtualRep {
    pub fn zero(side: Side) -> Self {
        Self { side, terms: BTreeMap::new() }
    }

    pub fn basis(side: Side, m: Multisegment) -> Self {
        Self::term(side, 1, m)
    }

    pub fn term(side: Side, coeff: i64, m: Multisegment) -> Self {
        let mut v = Self::zero(side);
        v.add_term(coeff, m);
        v
    }

    pub fn from_terms(side: Side, terms: impl IntoIterator<Item = (i64, Multisegment)>) -> Self {
        let mut v = Self::zero(side);
        for (c, m) in terms {
            v.add_term(c, m);
        }
        v
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn add_term(&mut self, coeff: i64, m: Multisegment) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, m: &Multisegment) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Multisegment, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, factor: i64) -> Self {
        Self::from_terms(self.side, self.terms().map(|(m, c)| (c * factor, m.clone())))
    }

    pub fn neg(&self) -> Self {
        self.scaled(-1)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.side != other.side {
            return Err(Error::SideMismatch);
        }
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(c, m.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Bilinear extension of the union of multisegments.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.side != other.side {
            return Err(Error::SideMismatch);
        }
        let mut out = Self::zero(self.side);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(ca * cb, a.union(b));
            }
        }
        Ok(out)
    }

    /// `ν^x` applied to every term.
    pub fn twisted(&self, x: Exponent) -> Self {
        Self::from_terms(self.side, self.terms().map(|(m, c)| (c, m.twisted(x))))
    }

    /// Applies `f` to every basis label, dropping labels mapped to `None`.
    pub fn map_labels(
        &self,
        side: Side,
        mut f: impl FnMut(&Multisegment) -> Option<Multisegment>,
    ) -> Self {
        let mut out = Self::zero(side);
        for (m, c) in self.terms() {
            if let Some(image) = f(m) {
                out.add_term(c, image);
            }
        }
        out
    }

    pub fn to_json(&self, reg: &LineRegistry) -> Value {
        Value::Array(
            self.terms()
                .map(|(m, c)| json!({ "coeff": c, "multisegment": multisegment_json(m, reg) }))
                .collect(),
        )
    }
}

pub fn segment_json(s: &Segment, reg: &LineRegistry) -> Value {
    json!({
        "line": reg.name(s.line),
        "start": s.start.to_string(),
        "end": s.end().to_string(),
        "step": s.step,
    })
}

pub fn multisegment_json(m: &Multisegment, reg: &LineRegistry) -> Value {
    Value::Array(m.iter().map(|s| segment_json(s, reg)).collect())
}

/// `u(σ,k)` (step 1) or `u′(σ′,k)` (step `s`), twisted by `ν^twist`, or the
/// pair `π(u, α) = ν^α u × ν^{−α} u` when `alpha` is set. The `α`-twist is
/// measured in units of the step, like the parallelogram itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpehUnit {
    pub base: Segment,
    pub k: u32,
    pub twist: Exponent,
    pub alpha: Option<Exponent>,
}

impl SpehUnit {
    /// Unit built on `base`; the center of `base` is moved into the twist.
    pub fn new(base: Segment, k: u32, twist: Exponent) -> Self {
        assert!(k >= 1, "Speh units need k ≥ 1");
        let center = base.center();
        Self { base: base.twisted(-center), k, twist: twist + center, alpha: None }
    }

    pub fn with_alpha(self, alpha: Exponent) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Self { alpha: Some(alpha), ..self })
    }

    pub fn step(&self) -> u32 {
        self.base.step
    }

    fn parallelogram(&self, twist: Exponent) -> Multisegment {
        let step = qi(self.step() as i64);
        (0..self.k)
            .map(|i| {
                let shift = step * (q(self.k as i64 - 1, 2) - qi(i as i64));
                self.base.twisted(shift + twist)
            })
            .collect()
    }

    pub fn multisegment(&self) -> Multisegment {
        match self.alpha {
            None => self.parallelogram(self.twist),
            Some(a) => {
                let a = a * qi(self.step() as i64);
                self.parallelogram(self.twist + a).union(&self.parallelogram(self.twist - a))
            }
        }
    }

    /// The unit with every `π(u,α)` pair split into its two twisted halves.
    pub fn atoms(&self) -> Vec<SpehUnit> {
        match self.alpha {
            None => vec![*self],
            Some(a) => {
                let a = a * qi(self.step() as i64);
                let plain = Self { alpha: None, ..*self };
                vec![
                    Self { twist: self.twist - a, ..plain },
                    Self { twist: self.twist + a, ..plain },
                ]
            }
        }
    }

    pub fn twisted(&self, x: Exponent) -> Self {
        Self { twist: self.twist + x, ..*self }
    }
}

fn check_alpha(alpha: Exponent) -> Result<()> {
    if alpha.is_positive() && alpha < q(1, 2) {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange(alpha))
    }
}

impl fmt::Display for SpehUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if self.step() == 1 { "u" } else { "u'" };
        if !self.twist.is_zero() {
            write!(f, "nu^({})", self.twist)?;
        }
        write!(f, "{name}({}:[{},{}],{})", self.base.line, self.base.start, self.base.end(), self.k)?;
        if let Some(a) = self.alpha {
            write!(f, "^(+-{a})")?;
        }
        Ok(())
    }
}

/// Product of Speh units.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitaryProduct(Vec<SpehUnit>);

impl UnitaryProduct {
    pub fn new(units: impl IntoIterator<Item = SpehUnit>) -> Self {
        let mut v: Vec<SpehUnit> = units.into_iter().collect();
        v.sort();
        Self(v)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn units(&self) -> &[SpehUnit] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn multisegment(&self) -> Multisegment {
        Multisegment::new(self.0.iter().flat_map(|u| u.multisegment().segments().to_vec()))
    }

    pub fn product(&self, other: &Self) -> Self {
        Self::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn twisted(&self, x: Exponent) -> Self {
        Self::new(self.0.iter().map(|u| u.twisted(x)))
    }

    /// Canonical list of plain twisted units, with `π(u,α)` pairs split.
    pub fn atoms(&self) -> Vec<SpehUnit> {
        let mut v: Vec<SpehUnit> = self.0.iter().flat_map(SpehUnit::atoms).collect();
        v.sort();
        v
    }

    pub fn same_atoms(&self, other: &Self) -> bool {
        self.atoms() == other.atoms()
    }
}

impl fmt::Display for UnitaryProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, u) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{u}")?;
        }
        Ok(())
    }
}

/// Multisegment of `ν^twist u(σ,k)` with `σ = Z(ρ,l)` centered at 0.
pub fn speh_u(sigma_len: u32, line: LineId, k: u32, twist: Exponent) -> Multisegment {
    SpehUnit::new(Segment::centered(line, qi(0), sigma_len, 1), k, twist).multisegment()
}

/// Multisegment of `ν^twist u′(σ′,k)`; `σ′` is re-centered at 0 first.
pub fn speh_u_prime(sigma: &Segment, k: u32, twist: Exponent) -> Multisegment {
    let c = sigma.center();
    SpehUnit::new(*sigma, k, twist - c).multisegment()
}

/// Multisegment of `ν^twist ū(σ′,k)`: copies of `σ′` (re-centered at 0)
/// shifted by `(k−1)/2 − i` in plain `ν`-units.
pub fn speh_ubar(sigma: &Segment, k: u32, twist: Exponent) -> Multisegment {
    assert!(k >= 1, "Speh units need k ≥ 1");
    let base = sigma.twisted(-sigma.center());
    (0..k)
        .map(|i| base.twisted(q(k as i64 - 1, 2) - qi(i as i64) + twist))
        .collect()
}

/// Multisegment of `π(u, α)`.
pub fn pi_u_alpha(u: &SpehUnit, alpha: Exponent) -> Result<Multisegment> {
    Ok(SpehUnit { alpha: None, ..*u }.with_alpha(alpha)?.multisegment())
}

/// Units of `ū(σ′,k)` written as a product of `u′`'s. `σ′` keeps its own
/// center as a common twist.
pub fn ubar_factor(sigma: &Segment, k: u32) -> UnitaryProduct {
    assert!(k >= 1, "Speh units need k ≥ 1");
    let s = sigma.step;
    let (a, b) = (k / s, k % s);
    let block = |count: u32, len: u32| {
        (1..=count).map(move |i| {
            let shift = qi(i as i64) - q(count as i64 + 1, 2);
            SpehUnit::new(*sigma, len, shift)
        })
    };
    if b == 0 {
        return UnitaryProduct::new(block(s, a));
    }
    let mut units: Vec<SpehUnit> = block(b, a + 1).collect();
    if a > 0 {
        units.extend(block(s - b, a));
    }
    UnitaryProduct::new(units)
}

/// Tadić's alternating sum for the unit of `k` copies of a length-`l` segment
/// with the given step, centered at 0.
fn tadic_sum(side: Side, line: LineId, l: u32, k: u32, step: u32) -> VirtualRep {
    let step_q = qi(step as i64);
    let offset = q(k as i64 + l as i64, 2);
    let mut out = VirtualRep::zero(side);
    for w in tadic_permutations(k, l) {
        let segs = w.iter().enumerate().filter_map(|(pos, &wi)| {
            let i = pos as u32 + 1;
            let len = wi + l - i;
            (len > 0).then(|| Segment::new(line, step_q * (qi(i as i64) - offset), len, step))
        });
        out.add_term(sign(&w), Multisegment::new(segs));
    }
    out
}

/// Expansion of `u(σ,k)`, `σ = Z(ρ,l)` centered at 0, over standard modules.
pub fn expand_u(l: u32, line: LineId, k: u32) -> VirtualRep {
    assert!(l >= 1 && k >= 1, "expand_u needs positive l and k");
    tadic_sum(Side::Split, line, l, k, 1)
}

/// Expansion of `u′(σ′,k)` over standard modules of `GL_m(D)`; the result
/// keeps the center of `σ′`.
pub fn expand_u_prime(sigma: &Segment, k: u32, d: u32) -> VirtualRep {
    assert!(k >= 1, "expand_u_prime needs positive k");
    tadic_sum(Side::Inner { d }, sigma.line, sigma.len, k, sigma.step).twisted(sigma.center())
}

/// Expansion of a product of plain Speh units over standard modules.
pub fn expand_product(p: &UnitaryProduct, side: Side) -> VirtualRep {
    let mut out = VirtualRep::basis(side, Multisegment::empty());
    for atom in p.atoms() {
        let factor = tadic_sum(side, atom.base.line, atom.base.len, atom.k, atom.step())
            .twisted(atom.twist);
        out = out.product(&factor).expect("same side");
    }
    out
}

/// Expansion of `ū(σ′,k)` through its factorization into `u′`'s.
pub fn expand_ubar(sigma: &Segment, k: u32, d: u32) -> VirtualRep {
    expand_product(&ubar_factor(sigma, k), Side::Inner { d })
}

/// Writes `m` as a product of twist-0 Speh units and `π(u,α)` pairs, if
/// possible.
pub fn recognize_unitary(m: &Multisegment, limit: usize) -> Result<Option<UnitaryProduct>> {
    let size = m.support_size();
    if size > limit {
        return Err(Error::LimitExceeded { size, limit });
    }
    let mut found = Vec::new();
    Ok(recognize_rec(m.segments().to_vec(), &mut found).then(|| UnitaryProduct::new(found)))
}

fn remove_all(pool: &[Segment], items: &Multisegment) -> Option<Vec<Segment>> {
    let mut rest = pool.to_vec();
    for s in items {
        let pos = rest.iter().position(|x| x == s)?;
        rest.remove(pos);
    }
    Some(rest)
}

fn recognize_rec(pool: Vec<Segment>, found: &mut Vec<SpehUnit>) -> bool {
    let Some(first) = pool.first().copied() else { return true };
    let base = first.twisted(-first.center());
    let step = qi(first.step as i64);
    let pos = first.center() / step;
    let same_shape = pool.iter().filter(|s| s.len == first.len && s.step == first.step).count();
    for k in (1..=same_shape as u32).rev() {
        let half = q(k as i64 - 1, 2);
        let mut candidates = Vec::new();
        for i in 0..k {
            // `first` is copy i of the unit: pos = (k−1)/2 − i + x
            let x = pos - half + qi(i as i64);
            if x.is_zero() {
                candidates.push(SpehUnit::new(base, k, qi(0)));
            } else if x.abs() < q(1, 2) {
                let unit = SpehUnit::new(base, k, qi(0)).with_alpha(x.abs()).expect("in range");
                candidates.push(unit);
            }
        }
        for unit in candidates {
            if let Some(rest) = remove_all(&pool, &unit.multisegment()) {
                found.push(unit);
                if recognize_rec(rest, found) {
                    return true;
                }
                found.pop();
            }
        }
    }
    false
}
