//! Combinatorial Jacquet–Langlands transfer.
//!
//! A cuspidal `ρ′` of an inner form is realized through the split segment
//! `C⁻¹(ρ′) = Z(ρ, s)`: it is the point of its line at the center of that
//! block, and `ν_{ρ′} = ν^s`. The correspondence `C` then becomes "cut the
//! segment into consecutive blocks of length `s`", keeping the support.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::gkring::{expand_u, Side, SpehUnit, UnitaryProduct, VirtualRep};
use crate::multiseg::{is_lower, Multisegment, Segment};
use crate::registry::{s_invariant, LineId, LineRegistry};
use crate::{q, qi, Error, Exponent, Result};

/// A cuspidal `ρ′` of some `GL_x(D)`, seen through its split block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DCuspidal {
    pub line: LineId,
    pub p: u32,
    pub s: u32,
    pub center: Exponent,
}

impl DCuspidal {
    pub fn new(reg: &LineRegistry, line: LineId, d: u32, center: Exponent) -> Result<Self> {
        let p = reg.p(line)?;
        Ok(Self { line, p, s: s_invariant(p, d), center })
    }

    /// `C⁻¹(ρ′) = Z(ρ, s)`.
    pub fn block(&self) -> Segment {
        Segment::centered(self.line, self.center, self.s, 1)
    }

    /// `ρ′` as a length-one segment on the inner-form side.
    pub fn point(&self) -> Segment {
        Segment::new(self.line, self.center, 1, self.s)
    }

    /// `T(ρ′, k)` centered at the center of `ρ′`.
    pub fn steinberg(&self, k: u32) -> Segment {
        Segment::centered(self.line, self.center, k, self.s)
    }
}

fn line_s(reg: &LineRegistry, line: LineId, d: u32) -> Result<u32> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be positive".into()));
    }
    Ok(s_invariant(reg.p(line)?, d))
}

/// `C` on segments: a split segment of length `m` with `s | m` goes to the
/// inner-form segment of `m/s` cuspidals with the same support.
pub fn c_map(seg: &Segment, d: u32, reg: &LineRegistry) -> Result<Segment> {
    if seg.step != 1 {
        return Err(Error::InvalidArgument(format!("{seg} is not a split segment")));
    }
    let s = line_s(reg, seg.line, d)?;
    if !seg.len.is_multiple_of(s) {
        return Err(Error::NotTransferable { len: seg.len, s });
    }
    let first = seg.start + q(s as i64 - 1, 2);
    Ok(Segment::new(seg.line, first, seg.len / s, s))
}

/// Inverse of [`c_map`].
pub fn c_inv(seg: &Segment, d: u32, reg: &LineRegistry) -> Result<Segment> {
    let s = line_s(reg, seg.line, d)?;
    if seg.step != s {
        return Err(Error::InvalidArgument(format!(
            "{seg} has step {} but cuspidals of this line have s = {s} for d = {d}",
            seg.step
        )));
    }
    Ok(Segment::new(seg.line, seg.start - q(s as i64 - 1, 2), seg.len * s, 1))
}

pub fn is_d_compatible_segment(seg: &Segment, d: u32, reg: &LineRegistry) -> Result<bool> {
    Ok(seg.len.is_multiple_of(line_s(reg, seg.line, d)?))
}

/// A standard label is `d`-compatible iff each of its segments is.
pub fn is_d_compatible(m: &Multisegment, d: u32, reg: &LineRegistry) -> Result<bool> {
    for seg in m {
        if !is_d_compatible_segment(seg, d, reg)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn c_map_label(m: &Multisegment, d: u32, reg: &LineRegistry) -> Result<Option<Multisegment>> {
    if !is_d_compatible(m, d, reg)? {
        return Ok(None);
    }
    m.iter().map(|s| c_map(s, d, reg)).collect::<Result<Multisegment>>().map(Some)
}

/// `LJ` on the standard lattice.
pub fn lj_std(x: &VirtualRep, d: u32, reg: &LineRegistry) -> Result<VirtualRep> {
    if x.side() != Side::Split {
        return Err(Error::SideMismatch);
    }
    let mut out = VirtualRep::zero(Side::Inner { d });
    for (m, c) in x.terms() {
        if let Some(image) = c_map_label(m, d, reg)? {
            out.add_term(c, image);
        }
    }
    Ok(out)
}

/// `M_n`: factorwise `C⁻¹` of an inner-form standard label.
pub fn m_map(m: &Multisegment, d: u32, reg: &LineRegistry) -> Result<Multisegment> {
    m.iter().map(|s| c_inv(s, d, reg)).collect()
}

/// `Q_n(Lg(S′)) = Lg(M_n(S′))`.
pub fn q_map(m: &Multisegment, d: u32, reg: &LineRegistry) -> Result<Multisegment> {
    m_map(m, d, reg)
}

/// `a′ << b′`: comparison of the split labels `Q(a′) ≤ Q(b′)`.
pub fn ll_less(a: &Multisegment, b: &Multisegment, d: u32, reg: &LineRegistry) -> Result<bool> {
    Ok(is_lower(&q_map(a, d, reg)?, &q_map(b, d, reg)?))
}

/// `±` a product of inner-form Speh units, or zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedUnitaryProduct {
    pub sign: i8,
    pub product: UnitaryProduct,
}

impl SignedUnitaryProduct {
    pub fn zero() -> Self {
        Self { sign: 0, product: UnitaryProduct::empty() }
    }

    pub fn one() -> Self {
        Self { sign: 1, product: UnitaryProduct::empty() }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn times(&self, other: &Self) -> Self {
        let sign = self.sign * other.sign;
        if sign == 0 {
            return Self::zero();
        }
        Self { sign, product: self.product.product(&other.product) }
    }

    pub fn twisted(&self, x: Exponent) -> Self {
        Self { sign: self.sign, product: self.product.twisted(x) }
    }

    /// The virtual representation `sign · (expansion of the product)`.
    pub fn expand(&self, d: u32) -> VirtualRep {
        let side = Side::Inner { d };
        if self.sign == 0 {
            return VirtualRep::zero(side);
        }
        crate::gkring::expand_product(&self.product, side).scaled(self.sign as i64)
    }
}

fn block_units(
    count: u32,
    sigma: impl Fn() -> Segment,
    k: u32,
) -> impl Iterator<Item = SpehUnit> {
    (1..=count).map(move |i| SpehUnit::new(sigma(), k, qi(i as i64) - q(count as i64 + 1, 2)))
}

/// `ε` of the transfer of `u(Z^u(ρ,l),k)` when `s ∤ l`.
fn epsilon(s: u32, k: u32, l: u32) -> i8 {
    if s % 2 == 1 || ((k as u64 * l as u64) / s as u64).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `LJ(u(Z^u(ρ,l),k))` for `ρ` on `line`, by the formula symmetric in `k`
/// and `l`.
pub fn lj_u(l: u32, line: LineId, k: u32, d: u32, reg: &LineRegistry) -> Result<SignedUnitaryProduct> {
    if l == 0 || k == 0 {
        return Err(Error::InvalidArgument("l and k must be positive".into()));
    }
    let rho = DCuspidal::new(reg, line, d, qi(0))?;
    let s = rho.s;
    if !l.is_multiple_of(s) && !k.is_multiple_of(s) {
        return Ok(SignedUnitaryProduct::zero());
    }
    let b = k % s + l % s;
    let mut units: Vec<SpehUnit> =
        block_units(b, || rho.steinberg((l - 1) / s + 1), (k - 1) / s + 1).collect();
    if l / s > 0 && k / s > 0 {
        units.extend(block_units(s - b, || rho.steinberg(l / s), k / s));
    }
    let sign = if l.is_multiple_of(s) { 1 } else { epsilon(s, k, l) };
    Ok(SignedUnitaryProduct { sign, product: UnitaryProduct::new(units) })
}

/// The same transfer computed case by case: `ū(C(σ),k)` when `s | l`, the
/// stretched/shortened product when `s | k`.
pub fn lj_u_by_cases(
    l: u32,
    line: LineId,
    k: u32,
    d: u32,
    reg: &LineRegistry,
) -> Result<SignedUnitaryProduct> {
    let rho = DCuspidal::new(reg, line, d, qi(0))?;
    let s = rho.s;
    if l.is_multiple_of(s) {
        let sigma = c_map(&Segment::centered(line, qi(0), l, 1), d, reg)?;
        return Ok(SignedUnitaryProduct { sign: 1, product: crate::gkring::ubar_factor(&sigma, k) });
    }
    if !k.is_multiple_of(s) {
        return Ok(SignedUnitaryProduct::zero());
    }
    let (a, b) = (l / s, l % s);
    let kk = k / s;
    let plus = c_map(&Segment::centered(line, qi(0), (a + 1) * s, 1), d, reg)?;
    let mut units: Vec<SpehUnit> = block_units(b, || plus, kk).collect();
    if a > 0 {
        let minus = c_map(&Segment::centered(line, qi(0), a * s, 1), d, reg)?;
        units.extend(block_units(s - b, || minus, kk));
    }
    Ok(SignedUnitaryProduct { sign: epsilon(s, k, l), product: UnitaryProduct::new(units) })
}

/// Transfer of a split unitary product, unit by unit.
pub fn lj_unitary(p: &UnitaryProduct, d: u32, reg: &LineRegistry) -> Result<SignedUnitaryProduct> {
    let mut acc = SignedUnitaryProduct::one();
    for atom in p.atoms() {
        if atom.step() != 1 {
            return Err(Error::SideMismatch);
        }
        let t = lj_u(atom.base.len, atom.base.line, atom.k, d, reg)?;
        acc = acc.times(&t.twisted(atom.twist));
        if acc.is_zero() {
            return Ok(acc);
        }
    }
    Ok(acc)
}

/// `s_{γ,d}`: the least `s` with `d | p_i·s` for every factor of `γ` that is
/// not already `d`-compatible.
pub fn s_gamma(gamma: &[(Segment, Exponent)], d: u32, reg: &LineRegistry) -> Result<u32> {
    let mut s = 1u32;
    for (sigma, _) in gamma {
        if !is_d_compatible_segment(sigma, d, reg)? {
            s = s.lcm(&line_s(reg, sigma.line, d)?);
        }
    }
    Ok(s)
}

/// `LJ(Lg(γ,k))` for generic unitary data `γ = ∏ ν^{e_i} σ_i`.
pub fn lj_generic(
    gamma: &[(Segment, Exponent)],
    k: u32,
    d: u32,
    reg: &LineRegistry,
) -> Result<SignedUnitaryProduct> {
    check_generic(gamma)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if !k.is_multiple_of(s_gamma(gamma, d, reg)?) {
        return Ok(SignedUnitaryProduct::zero());
    }
    let mut acc = SignedUnitaryProduct::one();
    for (sigma, e) in gamma {
        let t = lj_u(sigma.len, sigma.line, k, d, reg)?;
        acc = acc.times(&t.twisted(*e + sigma.center()));
    }
    Ok(acc)
}

pub(crate) fn check_generic(gamma: &[(Segment, Exponent)]) -> Result<()> {
    for (sigma, e) in gamma {
        if sigma.step != 1 {
            return Err(Error::InvalidArgument(format!("{sigma} is not a split segment")));
        }
        if e.abs() >= q(1, 2) {
            return Err(Error::InvalidArgument(format!("twist {e} must satisfy |e| < 1/2")));
        }
    }
    Ok(())
}

/// Upper bound on search nodes visited by [`in_image_lju`].
pub const PREIMAGE_NODE_BUDGET: usize = 2_000_000;

/// Searches a split unitary product whose transfer is `±target`. Returns the
/// least witness in canonical order, `None` if there is none.
///
/// A unitary split representation is a product of units `u(σ,k)` and pairs
/// `π(u,α)`, and its transfer is the product of the transfers of the units,
/// so the search covers the units of `target` by transfers of single units
/// `ν^e u(Z^u(ρ,l),k)` with `e = 0` or paired `±e`, `0 < e < 1/2`. `limit`
/// caps the number of units of `target`.
pub fn in_image_lju(
    target: &UnitaryProduct,
    d: u32,
    reg: &LineRegistry,
    limit: usize,
) -> Result<Option<UnitaryProduct>> {
    let atoms = target.atoms();
    if atoms.len() > limit {
        return Err(Error::LimitExceeded { size: atoms.len(), limit });
    }
    for a in &atoms {
        if a.step() != line_s(reg, a.base.line, d)? {
            return Ok(None);
        }
    }
    let mut search = PreimageSearch { d, reg, nodes: 0, found: BTreeSet::new() };
    search.run(atoms, &mut Vec::new())?;
    Ok(search.found.into_iter().next())
}

struct PreimageSearch<'a> {
    d: u32,
    reg: &'a LineRegistry,
    nodes: usize,
    found: BTreeSet<UnitaryProduct>,
}

fn remove_atoms(pool: &[SpehUnit], items: &[SpehUnit]) -> Option<Vec<SpehUnit>> {
    let mut rest = pool.to_vec();
    for it in items {
        let pos = rest.iter().position(|x| x == it)?;
        rest.remove(pos);
    }
    Some(rest)
}

impl PreimageSearch<'_> {
    fn run(&mut self, pool: Vec<SpehUnit>, chosen: &mut Vec<SpehUnit>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > PREIMAGE_NODE_BUDGET {
            return Err(Error::LimitExceeded { size: self.nodes, limit: PREIMAGE_NODE_BUDGET });
        }
        let Some(first) = pool.first().copied() else {
            self.found.insert(UnitaryProduct::new(chosen.iter().copied()));
            return Ok(());
        };
        let s = first.step();
        let line = first.base.line;
        // a unit u′(T(ρ′,n),m) only comes from u(Z(ρ,l),k) with l < s(n+1), k < s(m+1)
        for l in 1..s * (first.base.len + 1) {
            for k in 1..s * (first.k + 1) {
                let t = lj_u(l, line, k, self.d, self.reg)?;
                if t.is_zero() {
                    continue;
                }
                let image = t.product.atoms();
                let twists: BTreeSet<Exponent> = image
                    .iter()
                    .filter(|a| a.base == first.base && a.k == first.k)
                    .map(|a| first.twist - a.twist)
                    .filter(|e| e.abs() < q(1, 2))
                    .collect();
                for e in twists {
                    let base = Segment::centered(line, qi(0), l, 1);
                    let (unit, needed): (SpehUnit, Vec<SpehUnit>) = if e.is_zero() {
                        (SpehUnit::new(base, k, qi(0)), image.clone())
                    } else {
                        let unit = SpehUnit::new(base, k, qi(0)).with_alpha(e.abs())?;
                        let mut v: Vec<SpehUnit> = image.iter().map(|a| a.twisted(e)).collect();
                        v.extend(image.iter().map(|a| a.twisted(-e)));
                        (unit, v)
                    };
                    if let Some(rest) = remove_atoms(&pool, &needed) {
                        let mut rest = rest;
                        rest.sort();
                        chosen.push(unit);
                        self.run(rest, chosen)?;
                        chosen.pop();
                    }
                }
            }
        }
        Ok(())
    }
}

/// `LJ` of the Tadić expansion of `u(Z(ρ,l),k)`, termwise.
pub fn lj_of_expansion(l: u32, line: LineId, k: u32, d: u32, reg: &LineRegistry) -> Result<VirtualRep> {
    lj_std(&expand_u(l, line, k), d, reg)
}
