//! Global bookkeeping for discrete series of `GL_{nd}` over a number field
//! and of its inner form `GL_n(D)`.
//!
//! Only labels are modeled: a cuspidal `ρ` is a name, a line and its local
//! generic components at the places where `D` ramifies.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::gkring::{SpehUnit, UnitaryProduct};
use crate::multiseg::{Multisegment, Segment};
use crate::registry::{LineId, LineRegistry};
use crate::transfer::{check_generic, lj_generic, s_gamma, SignedUnitaryProduct};
use crate::{q, qi, Error, Exponent, Result};

/// Local invariants `d_v` of a central division algebra at its ramified
/// places.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalAlgebra {
    places: BTreeMap<String, u32>,
}

impl GlobalAlgebra {
    pub fn new(places: impl IntoIterator<Item = (String, u32)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (name, d) in places {
            if d < 2 {
                return Err(Error::InvalidArgument(format!(
                    "place `{name}` has d_v = {d}; split places are left out"
                )));
            }
            if map.insert(name.clone(), d).is_some() {
                return Err(Error::InvalidArgument(format!("place `{name}` listed twice")));
            }
        }
        Ok(Self { places: map })
    }

    pub fn places(&self) -> impl Iterator<Item = (&str, u32)> {
        self.places.iter().map(|(k, &v)| (k.as_str(), v))
    }

    /// `d_v`, or 1 when `v` is split.
    pub fn d_at(&self, place: &str) -> u32 {
        self.places.get(place).copied().unwrap_or(1)
    }

    pub fn is_ramified(&self, place: &str) -> bool {
        self.places.contains_key(place)
    }

    /// `d = lcm_v d_v`.
    pub fn d(&self) -> u32 {
        self.places.values().fold(1, |acc, d| acc.lcm(d))
    }
}

/// A cuspidal automorphic `ρ` through its local generic components
/// `ρ_v = ∏ ν^{e_i} σ_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalCuspidalData {
    pub name: String,
    pub line: LineId,
    pub locals: BTreeMap<String, Vec<(Segment, Exponent)>>,
}

impl GlobalCuspidalData {
    pub fn new(
        name: &str,
        line: LineId,
        locals: impl IntoIterator<Item = (String, Vec<(Segment, Exponent)>)>,
    ) -> Result<Self> {
        let locals: BTreeMap<_, _> = locals.into_iter().collect();
        for gamma in locals.values() {
            check_generic(gamma)?;
        }
        Ok(Self { name: name.to_string(), line, locals })
    }

    fn local(&self, place: &str) -> Result<&[(Segment, Exponent)]> {
        self.locals
            .get(place)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::InvalidArgument(format!("no local data for `{}` at `{place}`", self.name)))
    }
}

/// `s_{ρ,D}`: lcm over the ramified places of `s_{ρ_v,d_v}`.
pub fn s_rho_d(rho: &GlobalCuspidalData, alg: &GlobalAlgebra, reg: &LineRegistry) -> Result<u32> {
    let mut s = 1u32;
    for (place, d) in alg.places() {
        s = s.lcm(&s_gamma(rho.local(place)?, d, reg)?);
    }
    Ok(s)
}

/// `MW(ρ,k)` transfers to the inner form iff `s_{ρ,D} | k`.
pub fn d_compatible_mw(
    rho: &GlobalCuspidalData,
    k: u32,
    alg: &GlobalAlgebra,
    reg: &LineRegistry,
) -> Result<bool> {
    Ok(k.is_multiple_of(s_rho_d(rho, alg, reg)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GlobalSide {
    Split,
    Inner,
}

/// `MW(ρ,k)` or `MW′(ρ′,k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiscreteSeriesLabel {
    pub side: GlobalSide,
    pub rho: String,
    pub k: u32,
}

impl DiscreteSeriesLabel {
    pub fn mw(rho: &str, k: u32) -> Self {
        Self { side: GlobalSide::Split, rho: rho.to_string(), k }
    }

    pub fn mw_prime(rho: &str, k: u32) -> Self {
        Self { side: GlobalSide::Inner, rho: rho.to_string(), k }
    }

    pub fn is_cuspidal(&self) -> bool {
        self.k == 1
    }
}

/// Name of the basic cuspidal `G⁻¹(MW(ρ, s_{ρ,D}))`.
pub fn basic_cuspidal_name(rho: &str) -> String {
    format!("{rho}'")
}

/// `G⁻¹`: `MW(ρ,k) ↦ MW′(ρ′, k/s_{ρ,D})`.
pub fn g_inverse(
    label: &DiscreteSeriesLabel,
    rho: &GlobalCuspidalData,
    alg: &GlobalAlgebra,
    reg: &LineRegistry,
) -> Result<DiscreteSeriesLabel> {
    if label.side != GlobalSide::Split || label.rho != rho.name {
        return Err(Error::InvalidArgument(format!("{label:?} is not a split label over `{}`", rho.name)));
    }
    let s = s_rho_d(rho, alg, reg)?;
    if !label.k.is_multiple_of(s) {
        return Err(Error::InvalidArgument(format!(
            "MW({}, {}) is not D-compatible: s_rho,D = {s} does not divide {}",
            rho.name, label.k, label.k
        )));
    }
    Ok(DiscreteSeriesLabel::mw_prime(&basic_cuspidal_name(&rho.name), label.k / s))
}

/// `G`: `MW′(ρ′,k) ↦ MW(ρ, k·s_{ρ,D})`.
pub fn g_map(
    label: &DiscreteSeriesLabel,
    rho: &GlobalCuspidalData,
    alg: &GlobalAlgebra,
    reg: &LineRegistry,
) -> Result<DiscreteSeriesLabel> {
    if label.side != GlobalSide::Inner || label.rho != basic_cuspidal_name(&rho.name) {
        return Err(Error::InvalidArgument(format!("{label:?} is not an inner label over `{}`", rho.name)));
    }
    Ok(DiscreteSeriesLabel::mw(&rho.name, label.k * s_rho_d(rho, alg, reg)?))
}

/// Local component at one place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalComponent {
    /// `Lg(ρ_v, k) = ∏ ν^{e_i} u(σ_i, k)` at a split place.
    Split(UnitaryProduct),
    /// `LJ_v` of that at a ramified place (sign 0 when not compatible).
    Inner(SignedUnitaryProduct),
}

impl LocalComponent {
    pub fn multisegment(&self) -> Multisegment {
        match self {
            Self::Split(p) => p.multisegment(),
            Self::Inner(t) => t.product.multisegment(),
        }
    }
}

/// Local component of `MW(ρ,k)` at `place`; at a ramified place this is
/// its transfer, i.e. the component of `G⁻¹(MW(ρ,k))`.
pub fn local_component(
    rho: &GlobalCuspidalData,
    k: u32,
    place: &str,
    alg: &GlobalAlgebra,
    reg: &LineRegistry,
) -> Result<LocalComponent> {
    let gamma = rho.local(place)?;
    if alg.is_ramified(place) {
        return Ok(LocalComponent::Inner(lj_generic(gamma, k, alg.d_at(place), reg)?));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    Ok(LocalComponent::Split(UnitaryProduct::new(
        gamma.iter().map(|(sigma, e)| SpehUnit::new(*sigma, k, *e)),
    )))
}

/// Local component of `MW′(ρ′,k)` at a ramified place.
pub fn local_component_prime(
    rho: &GlobalCuspidalData,
    k: u32,
    place: &str,
    alg: &GlobalAlgebra,
    reg: &LineRegistry,
) -> Result<LocalComponent> {
    local_component(rho, k * s_rho_d(rho, alg, reg)?, place, alg, reg)
}

/// Decomposes a multiset of integers into symmetric intervals `{−k..k}`,
/// returned as the radii `k` in decreasing order.
pub fn interval_decomposition(a: &[i64]) -> Option<Vec<i64>> {
    let points: Vec<Exponent> = a.iter().map(|&x| qi(x)).collect();
    centered_decomposition(&points)?
        .into_iter()
        .map(|r| r.is_integer().then(|| r.to_integer()))
        .collect()
}

/// Decomposes a multiset of exponents into symmetric strings
/// `{−r, −r+1, …, r}` with `r` all integral or all half-integral; returns the
/// radii in decreasing order. The number of strings of radius `r` must be
/// `f(r) − f(r+1)`, `f` the multiplicity function.
pub fn centered_decomposition(a: &[Exponent]) -> Option<Vec<Exponent>> {
    if a.is_empty() {
        return Some(Vec::new());
    }
    let mut f: BTreeMap<Exponent, i64> = BTreeMap::new();
    for &x in a {
        *f.entry(x).or_insert(0) += 1;
    }
    let frac = a[0] - a[0].floor();
    if frac != qi(0) && frac != q(1, 2) {
        return None;
    }
    let mult = |x: Exponent| f.get(&x).copied().unwrap_or(0);
    let max = *f.keys().next_back().unwrap();
    let mut radii = Vec::new();
    let mut r = max;
    while r >= qi(0) {
        let count = mult(r) - mult(r + 1);
        if count < 0 {
            return None;
        }
        radii.extend(std::iter::repeat_n(r, count as usize));
        r -= 1;
    }
    // reassemble and compare
    let mut rebuilt: Vec<Exponent> = radii
        .iter()
        .flat_map(|&r| {
            let n = (r * 2).to_integer();
            (0..=n).map(move |j| -r + qi(j))
        })
        .collect();
    rebuilt.sort();
    let mut sorted = a.to_vec();
    sorted.sort();
    (rebuilt == sorted).then_some(radii)
}

/// Exponents of the cuspidal support of `MW(ρ,k)`: `(k−1)/2 − i`.
fn mw_support(k: u32) -> impl Iterator<Item = Exponent> {
    (0..k).map(move |i| q(k as i64 - 1, 2) - qi(i as i64))
}

/// Whether two products of discrete series labels agree up to permutation,
/// decided from the cuspidal support as in the multiplicity-one argument:
/// labels are separated by cuspidal and by line/shifted line (parity of
/// `k`), then each exponent multiset is decomposed into symmetric strings.
pub fn match_discrete_products(x: &[DiscreteSeriesLabel], y: &[DiscreteSeriesLabel]) -> bool {
    type Groups = BTreeMap<(GlobalSide, String, bool), Vec<Exponent>>;
    fn groups(labels: &[DiscreteSeriesLabel]) -> Option<Groups> {
        let mut g: Groups = BTreeMap::new();
        for l in labels {
            if l.k == 0 {
                return None;
            }
            g.entry((l.side, l.rho.clone(), l.k % 2 == 0)).or_default().extend(mw_support(l.k));
        }
        Some(g)
    }
    let (Some(gx), Some(gy)) = (groups(x), groups(y)) else { return false };
    if gx.keys().ne(gy.keys()) {
        return false;
    }
    gx.iter().all(|(key, ex)| {
        let ey = &gy[key];
        match (centered_decomposition(ex), centered_decomposition(ey)) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    })
}

/// Number of partitions of an `n`-set into `l` unordered blocks of size
/// `n/l`: `n! / (l! (n/l)!^l)`.
pub fn levi_conjugate_count(n: u32, l: u32) -> Result<BigUint> {
    if n == 0 || l == 0 || !n.is_multiple_of(l) {
        return Err(Error::InvalidArgument(format!("{l} must be a positive divisor of {n}")));
    }
    let m = n / l;
    let fact = |x: u32| (1..=x).fold(BigUint::one(), |acc, i| acc * i);
    let denom = fact(l) * num_traits::pow(fact(m), l as usize);
    let (quot, rem) = fact(n).div_rem(&denom);
    debug_assert!(rem.is_zero());
    Ok(quot)
}

#[derive(Debug, Deserialize)]
struct PlaceSpec {
    name: String,
    d_v: u32,
}

#[derive(Debug, Deserialize)]
struct AlgebraSpec {
    places: Vec<PlaceSpec>,
}

/// `1`, `-1/2` or `"-1/2"`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum ExponentSpec {
    Int(i64),
    Text(String),
}

impl ExponentSpec {
    fn value(&self) -> Result<Exponent> {
        match self {
            ExponentSpec::Int(n) => Ok(qi(*n)),
            ExponentSpec::Text(t) => parse_exponent(t),
        }
    }
}

#[derive(Debug, Deserialize)]
struct LocalFactorSpec {
    segment: [ExponentSpec; 2],
    #[serde(default)]
    e: Option<ExponentSpec>,
}

#[derive(Debug, Deserialize)]
struct CuspidalSpec {
    name: String,
    line: String,
    locals: BTreeMap<String, Vec<LocalFactorSpec>>,
}

pub(crate) fn parse_exponent(text: &str) -> Result<Exponent> {
    let t = text.trim();
    let parsed = match t.split_once('/') {
        Some((n, d)) => n.trim().parse::<i64>().ok().zip(d.trim().parse::<i64>().ok()),
        None => t.parse::<i64>().ok().map(|n| (n, 1)),
    };
    match parsed {
        Some((_, 0)) | None => Err(Error::Malformed(format!("`{text}` is not a rational number"))),
        Some((n, d)) => Ok(q(n, d)),
    }
}

impl GlobalAlgebra {
    /// `{"places": [{"name": "v0", "d_v": 2}, …]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: AlgebraSpec = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::new(spec.places.into_iter().map(|p| (p.name, p.d_v)))
    }
}

impl GlobalCuspidalData {
    /// `{"name": "rho", "line": "rho", "locals": {"v0": [{"segment": ["-1","1"], "e": "0"}]}}`.
    pub fn from_json(text: &str, reg: &LineRegistry) -> Result<Self> {
        let spec: CuspidalSpec = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        let line = reg.lookup(&spec.line)?;
        let mut locals = Vec::new();
        for (place, factors) in spec.locals {
            let mut gamma = Vec::new();
            for f in factors {
                let a = f.segment[0].value()?;
                let b = f.segment[1].value()?;
                let e = f.e.as_ref().map(ExponentSpec::value).transpose()?.unwrap_or_default();
                gamma.push((Segment::from_bounds(line, a, b, 1)?, e));
            }
            locals.push((place, gamma));
        }
        Self::new(&spec.name, line, locals)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gkring::speh_u;

    fn setup() -> (LineRegistry, LineId) {
        let reg = LineRegistry::standard();
        let rho = reg.lookup("rho").unwrap();
        (reg, rho)
    }

    fn cusp(line: LineId) -> (Segment, Exponent) {
        (Segment::centered(line, qi(0), 1, 1), qi(0))
    }

    #[test]
    fn algebra_basics() {
        let alg = GlobalAlgebra::new([("v".to_string(), 2), ("w".to_string(), 3)]).unwrap();
        assert_eq!(alg.d(), 6);
        assert_eq!(alg.d_at("u"), 1);
        assert!(GlobalAlgebra::new([("v".to_string(), 1)]).is_err());
    }

    #[test]
    fn s_rho_d_examples() {
        let (reg, rho) = setup();
        let alg = GlobalAlgebra::new([("v".to_string(), 2)]).unwrap();
        let st2 = (Segment::centered(rho, qi(0), 2, 1), qi(0));
        let compatible = GlobalCuspidalData::new("pi", rho, [("v".to_string(), vec![st2])]).unwrap();
        assert_eq!(s_rho_d(&compatible, &alg, &reg).unwrap(), 1);
        let c = GlobalCuspidalData::new("pi", rho, [("v".to_string(), vec![cusp(rho)])]).unwrap();
        assert_eq!(s_rho_d(&c, &alg, &reg).unwrap(), 2);
        let alg2 = GlobalAlgebra::new([("v".to_string(), 2), ("w".to_string(), 3)]).unwrap();
        let c2 = GlobalCuspidalData::new(
            "pi",
            rho,
            [("v".to_string(), vec![cusp(rho)]), ("w".to_string(), vec![cusp(rho)])],
        )
        .unwrap();
        assert_eq!(s_rho_d(&c2, &alg2, &reg).unwrap(), 6);
        assert!(s_rho_d(&c, &alg2, &reg).is_err());
    }

    #[test]
    fn compatibility_and_g() {
        let (reg, rho) = setup();
        let alg = GlobalAlgebra::new([("v".to_string(), 2), ("w".to_string(), 3)]).unwrap();
        let c = GlobalCuspidalData::new(
            "pi",
            rho,
            [("v".to_string(), vec![cusp(rho)]), ("w".to_string(), vec![cusp(rho)])],
        )
        .unwrap();
        let s = 6;
        assert!(d_compatible_mw(&c, s, &alg, &reg).unwrap());
        assert!(!d_compatible_mw(&c, 1, &alg, &reg).unwrap());
        assert!(d_compatible_mw(&c, 2 * s, &alg, &reg).unwrap());
        let basic = g_inverse(&DiscreteSeriesLabel::mw("pi", s), &c, &alg, &reg).unwrap();
        assert_eq!(basic, DiscreteSeriesLabel::mw_prime("pi'", 1));
        assert!(basic.is_cuspidal());
        assert_eq!(
            g_inverse(&DiscreteSeriesLabel::mw("pi", 3 * s), &c, &alg, &reg).unwrap(),
            DiscreteSeriesLabel::mw_prime("pi'", 3)
        );
        assert!(g_inverse(&DiscreteSeriesLabel::mw("pi", s + 1), &c, &alg, &reg).is_err());
        for k in 1..=4 {
            let l = DiscreteSeriesLabel::mw_prime("pi'", k);
            assert_eq!(g_inverse(&g_map(&l, &c, &alg, &reg).unwrap(), &c, &alg, &reg).unwrap(), l);
        }
    }

    #[test]
    fn local_components() {
        let (reg, rho) = setup();
        let alg = GlobalAlgebra::new([("v".to_string(), 2)]).unwrap();
        let c = GlobalCuspidalData::new(
            "pi",
            rho,
            [("v".to_string(), vec![cusp(rho)]), ("u".to_string(), vec![cusp(rho)])],
        )
        .unwrap();
        let split = local_component(&c, 3, "u", &alg, &reg).unwrap();
        assert_eq!(split.multisegment(), speh_u(1, rho, 3, qi(0)));
        match local_component(&c, 2, "v", &alg, &reg).unwrap() {
            LocalComponent::Inner(t) => assert_ne!(t.sign, 0),
            other => panic!("{other:?}"),
        }
        match local_component(&c, 3, "v", &alg, &reg).unwrap() {
            LocalComponent::Inner(t) => assert_eq!(t.sign, 0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inner_component_is_union_of_twisted_cuspidal_components() {
        let (reg, rho) = setup();
        let alg = GlobalAlgebra::new([("v".to_string(), 2), ("w".to_string(), 3)]).unwrap();
        let st2 = (Segment::centered(rho, qi(0), 2, 1), qi(0));
        let c = GlobalCuspidalData::new(
            "pi",
            rho,
            [("v".to_string(), vec![cusp(rho)]), ("w".to_string(), vec![st2, (Segment::centered(rho, qi(0), 1, 1), q(1, 5))])],
        )
        .unwrap();
        let big_s = s_rho_d(&c, &alg, &reg).unwrap() as i64;
        for place in ["v", "w"] {
            let base = local_component_prime(&c, 1, place, &alg, &reg).unwrap().multisegment();
            for k in 1..=3i64 {
                let got = local_component_prime(&c, k as u32, place, &alg, &reg).unwrap().multisegment();
                let expected = (0..k).fold(Multisegment::empty(), |acc, i| {
                    acc.union(&base.twisted(qi(big_s) * (q(k - 1, 2) - qi(i))))
                });
                assert_eq!(got, expected, "place={place} k={k}");
            }
        }
    }

    #[test]
    fn interval_examples() {
        assert_eq!(interval_decomposition(&[0]), Some(vec![0]));
        assert_eq!(interval_decomposition(&[-1, 0, 0, 1]), Some(vec![1, 0]));
        assert_eq!(interval_decomposition(&[0, 1]), None);
        assert_eq!(interval_decomposition(&[]), Some(vec![]));
        assert_eq!(
            centered_decomposition(&[q(-1, 2), q(1, 2), q(-1, 2), q(1, 2)]),
            Some(vec![q(1, 2), q(1, 2)])
        );
    }

    #[test]
    fn matching_examples() {
        let a = [DiscreteSeriesLabel::mw("rho", 3), DiscreteSeriesLabel::mw("rho", 1)];
        let b = [DiscreteSeriesLabel::mw("rho", 2), DiscreteSeriesLabel::mw("rho", 2)];
        assert!(match_discrete_products(&a, &a));
        assert!(!match_discrete_products(&a, &b));
        let c = [DiscreteSeriesLabel::mw("rho", 1), DiscreteSeriesLabel::mw("rho", 3)];
        assert!(match_discrete_products(&a, &c));
        let d = [DiscreteSeriesLabel::mw("rho", 3), DiscreteSeriesLabel::mw("tau", 1)];
        assert!(!match_discrete_products(&a, &d));
    }

    #[test]
    fn levi_counts() {
        assert_eq!(levi_conjugate_count(4, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(levi_conjugate_count(7, 1).unwrap(), BigUint::from(1u32));
        assert_eq!(levi_conjugate_count(6, 3).unwrap(), BigUint::from(15u32));
        assert!(levi_conjugate_count(6, 4).is_err());
    }

    #[test]
    fn json_inputs() {
        let (reg, rho) = setup();
        let alg = GlobalAlgebra::from_json(r#"{"places":[{"name":"v0","d_v":2}]}"#).unwrap();
        assert_eq!(alg.d(), 2);
        let c = GlobalCuspidalData::from_json(
            r#"{"name":"pi","line":"rho","locals":{"v0":[{"segment":["-1","1"]},{"segment":["0","0"],"e":"1/4"}]}}"#,
            &reg,
        )
        .unwrap();
        assert_eq!(c.locals["v0"][0].0, Segment::centered(rho, qi(0), 3, 1));
        assert_eq!(c.locals["v0"][1].1, q(1, 4));
        assert!(GlobalCuspidalData::from_json(r#"{"name":"x","line":"nope","locals":{}}"#, &reg).is_err());
    }
}
