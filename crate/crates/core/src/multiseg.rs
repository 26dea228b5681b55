//! Segments, multisegments and the Zelevinsky order.
//!
//! One type serves both sides. On the split side segments have step 1; on the
//! inner-form side a segment of `D`-cuspidals `ρ′, ν_{ρ′}ρ′, …` is stored with
//! the step `s(ρ′)` and its points are the centers of the `D`-cuspidals, so
//! that `ν^x` acts on both sides by adding `x` to every point.
//!
//! Two points of one line are comparable only when their exponents differ by
//! a multiple of the step; the pair `(line, exponent mod step)` is called the
//! effective line of a point.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::registry::{CuspidalPoint, LineId, LineRegistry};
use crate::{qi, Error, Exponent, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub line: LineId,
    pub start: Exponent,
    pub len: u32,
    pub step: u32,
}

/// `x mod m` for a rational `x` and a positive integer `m`, in `[0, m)`.
pub(crate) fn rat_mod(x: Exponent, m: u32) -> Exponent {
    let m = qi(m as i64);
    x - m * (x / m).floor()
}

/// An effective line: all points `ν^{class + j·step}ρ`, `j ∈ ℤ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineClass {
    pub line: LineId,
    pub step: u32,
    pub class: Exponent,
}

impl LineClass {
    pub fn of_point(line: LineId, exp: Exponent, step: u32) -> Self {
        Self { line, step, class: rat_mod(exp, step) }
    }

    /// Integer coordinate of a point lying on this effective line.
    pub fn index_of(&self, exp: Exponent) -> i64 {
        let idx = (exp - self.class) / qi(self.step as i64);
        debug_assert!(idx.is_integer(), "point not on this effective line");
        idx.to_integer()
    }

    pub fn exponent_at(&self, index: i64) -> Exponent {
        self.class + qi(index * self.step as i64)
    }
}

impl Segment {
    /// Segment `{ν^{start + j·step}ρ : 0 ≤ j < len}`. Panics on zero length or step.
    pub fn new(line: LineId, start: Exponent, len: u32, step: u32) -> Self {
        assert!(len >= 1, "segments have positive length");
        assert!(step >= 1, "segments have positive step");
        Self { line, start, len, step }
    }

    pub fn split(line: LineId, start: Exponent, len: u32) -> Self {
        Self::new(line, start, len, 1)
    }

    /// Segment `[start, end]`; `end − start` must be a non-negative multiple of `step`.
    pub fn from_bounds(line: LineId, start: Exponent, end: Exponent, step: u32) -> Result<Self> {
        if step == 0 {
            return Err(Error::InvalidArgument("step must be positive".into()));
        }
        let span = (end - start) / qi(step as i64);
        if span.is_negative() {
            return Err(Error::Malformed(format!("segment start {start} exceeds end {end}")));
        }
        if !span.is_integer() {
            return Err(Error::Malformed(format!(
                "end {end} is not reachable from start {start} in steps of {step}"
            )));
        }
        Ok(Self::new(line, start, span.to_integer() as u32 + 1, step))
    }

    /// Segment of the given length whose center is `center`.
    pub fn centered(line: LineId, center: Exponent, len: u32, step: u32) -> Self {
        let start = center - qi((len as i64 - 1) * step as i64) / 2;
        Self::new(line, start, len, step)
    }

    pub fn end(&self) -> Exponent {
        self.start + qi((self.len as i64 - 1) * self.step as i64)
    }

    pub fn center(&self) -> Exponent {
        (self.start + self.end()) / 2
    }

    pub fn line_class(&self) -> LineClass {
        LineClass::of_point(self.line, self.start, self.step)
    }

    /// Index interval `[lo, hi]` on the effective line.
    pub fn index_range(&self) -> (i64, i64) {
        let lo = self.line_class().index_of(self.start);
        (lo, lo + self.len as i64 - 1)
    }

    pub fn from_index_range(class: LineClass, lo: i64, hi: i64) -> Self {
        debug_assert!(lo <= hi);
        Self::new(class.line, class.exponent_at(lo), (hi - lo + 1) as u32, class.step)
    }

    pub fn points(&self) -> impl Iterator<Item = CuspidalPoint> + '_ {
        (0..self.len as i64).map(move |j| {
            CuspidalPoint::new(self.line, self.start + qi(j * self.step as i64))
        })
    }

    pub fn ending(&self) -> CuspidalPoint {
        CuspidalPoint::new(self.line, self.end())
    }

    pub fn twisted(&self, x: Exponent) -> Self {
        Self { start: self.start + x, ..*self }
    }

    /// `[line: a..b] ↦ [dual(line): −b..−a]`.
    pub fn hermitian_dual(&self, reg: &LineRegistry) -> Result<Self> {
        Ok(Self { line: reg.dual(self.line)?, start: -self.end(), ..*self })
    }

    fn sort_key(&self) -> (LineId, u32, Exponent, Exponent, u32) {
        (self.line, self.step, rat_mod(self.start, self.step), self.start, self.len)
    }

    pub fn relation(&self, other: &Segment) -> SegmentRelation {
        segment_relation(self, other)
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:[{},{}]", self.line, self.start, self.end())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentRelation {
    Equal,
    Unlinked,
    LinkedAdjacent,
    LinkedOverlapping,
}

impl SegmentRelation {
    pub fn is_linked(self) -> bool {
        matches!(self, Self::LinkedAdjacent | Self::LinkedOverlapping)
    }
}

pub fn segment_relation(s1: &Segment, s2: &Segment) -> SegmentRelation {
    if s1 == s2 {
        return SegmentRelation::Equal;
    }
    if s1.line_class() != s2.line_class() {
        return SegmentRelation::Unlinked;
    }
    let (a_lo, a_hi) = s1.index_range();
    let (b_lo, b_hi) = s2.index_range();
    let contains = |lo: i64, hi: i64, lo2: i64, hi2: i64| lo <= lo2 && hi2 <= hi;
    if contains(a_lo, a_hi, b_lo, b_hi) || contains(b_lo, b_hi, a_lo, a_hi) {
        return SegmentRelation::Unlinked;
    }
    if a_lo > b_hi + 1 || b_lo > a_hi + 1 {
        return SegmentRelation::Unlinked;
    }
    if a_lo > b_hi || b_lo > a_hi {
        SegmentRelation::LinkedAdjacent
    } else {
        SegmentRelation::LinkedOverlapping
    }
}

/// A finite multiset of segments, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multisegment(Vec<Segment>);

/// Output of [`Multisegment::stats`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultisegmentStats {
    pub endings: Vec<CuspidalPoint>,
    pub ell: u32,
    pub support: Vec<CuspidalPoint>,
}

impl Multisegment {
    pub fn new(segments: impl IntoIterator<Item = Segment>) -> Self {
        let mut v: Vec<Segment> = segments.into_iter().collect();
        v.sort();
        Self(v)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn segments(&self) -> &[Segment] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Segment> {
        self.0.iter()
    }

    /// Multiset union.
    pub fn union(&self, other: &Multisegment) -> Multisegment {
        Multisegment::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn twisted(&self, x: Exponent) -> Multisegment {
        if x.is_zero() {
            return self.clone();
        }
        Multisegment::new(self.0.iter().map(|s| s.twisted(x)))
    }

    /// Cuspidal support, sorted.
    pub fn support(&self) -> Vec<CuspidalPoint> {
        let mut pts: Vec<CuspidalPoint> = self.0.iter().flat_map(|s| s.points()).collect();
        pts.sort();
        pts
    }

    pub fn support_size(&self) -> usize {
        self.0.iter().map(|s| s.len as usize).sum()
    }

    /// `E(M)`, sorted.
    pub fn endings(&self) -> Vec<CuspidalPoint> {
        let mut e: Vec<CuspidalPoint> = self.0.iter().map(Segment::ending).collect();
        e.sort();
        e
    }

    /// `ℓ(M)`: the maximal segment length, 0 for the empty multisegment.
    pub fn ell(&self) -> u32 {
        self.0.iter().map(|s| s.len).max().unwrap_or(0)
    }

    pub fn stats(&self) -> MultisegmentStats {
        MultisegmentStats { endings: self.endings(), ell: self.ell(), support: self.support() }
    }

    /// All multisegments obtained by one elementary operation.
    pub fn elementary_successors(&self) -> BTreeSet<Multisegment> {
        let mut out = BTreeSet::new();
        let segs = &self.0;
        for i in 0..segs.len() {
            for j in (i + 1)..segs.len() {
                let rel = segment_relation(&segs[i], &segs[j]);
                if !rel.is_linked() {
                    continue;
                }
                let class = segs[i].line_class();
                let (a_lo, a_hi) = segs[i].index_range();
                let (b_lo, b_hi) = segs[j].index_range();
                let mut rest: Vec<Segment> = segs
                    .iter()
                    .enumerate()
                    .filter(|&(t, _)| t != i && t != j)
                    .map(|(_, s)| *s)
                    .collect();
                rest.push(Segment::from_index_range(class, a_lo.min(b_lo), a_hi.max(b_hi)));
                if rel == SegmentRelation::LinkedOverlapping {
                    rest.push(Segment::from_index_range(class, a_lo.max(b_lo), a_hi.min(b_hi)));
                }
                out.insert(Multisegment::new(rest));
            }
        }
        out
    }

    /// Groups segments by effective line, in the order of the effective lines.
    pub fn rigid_parts(&self) -> BTreeMap<LineClass, Multisegment> {
        let mut parts: BTreeMap<LineClass, Vec<Segment>> = BTreeMap::new();
        for s in &self.0 {
            parts.entry(s.line_class()).or_default().push(*s);
        }
        parts.into_iter().map(|(k, v)| (k, Multisegment::new(v))).collect()
    }

    /// Standard decomposition into rigid multisegments.
    pub fn rigid_decomposition(&self) -> Vec<Multisegment> {
        self.rigid_parts().into_values().collect()
    }

    pub fn is_rigid(&self) -> bool {
        self.rigid_parts().len() <= 1
    }

    pub fn hermitian_dual(&self, reg: &LineRegistry) -> Result<Multisegment> {
        let segs = self
            .0
            .iter()
            .map(|s| s.hermitian_dual(reg))
            .collect::<Result<Vec<_>>>()?;
        Ok(Multisegment::new(segs))
    }

    pub fn is_hermitian(&self, reg: &LineRegistry) -> Result<bool> {
        Ok(&self.hermitian_dual(reg)? == self)
    }
}

impl FromIterator<Segment> for Multisegment {
    fn from_iter<T: IntoIterator<Item = Segment>>(iter: T) -> Self {
        Multisegment::new(iter)
    }
}

impl<'a> IntoIterator for &'a Multisegment {
    type Item = &'a Segment;
    type IntoIter = std::slice::Iter<'a, Segment>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

fn is_sub_multiset<T: Ord>(small: &[T], big: &[T]) -> bool {
    // both sorted
    let mut it = big.iter();
    'outer: for x in small {
        for y in it.by_ref() {
            match y.cmp(x) {
                Ordering::Less => continue,
                Ordering::Equal => continue 'outer,
                Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

/// Whether `lower` is reachable from `upper` by a sequence of elementary
/// operations (`lower ≤ upper`).
///
/// Elementary operations never mix effective lines, so the search runs
/// independently on every rigid part. Each search is a breadth-first search
/// pruned by the monotonicity of `ℓ` and `E`.
pub fn is_lower(lower: &Multisegment, upper: &Multisegment) -> bool {
    if lower.support() != upper.support() {
        return false;
    }
    let lower_parts = lower.rigid_parts();
    let upper_parts = upper.rigid_parts();
    if lower_parts.len() != upper_parts.len() {
        return false;
    }
    upper_parts.iter().all(|(class, up)| match lower_parts.get(class) {
        Some(low) => reachable_rigid(low, up),
        None => false,
    })
}

fn reachable_rigid(target: &Multisegment, from: &Multisegment) -> bool {
    if target == from {
        return true;
    }
    let target_ell = target.ell();
    let target_endings = target.endings();
    let admissible =
        |m: &Multisegment| m.ell() <= target_ell && is_sub_multiset(&target_endings, &m.endings());
    if !admissible(from) {
        return false;
    }
    let mut seen: HashSet<Multisegment> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(from.clone());
    queue.push_back(from.clone());
    while let Some(m) = queue.pop_front() {
        for next in m.elementary_successors() {
            if &next == target {
                return true;
            }
            if !seen.contains(&next) && admissible(&next) {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    false
}

/// Every multisegment reachable from `m` by zero or more elementary operations.
pub fn down_set(m: &Multisegment) -> HashSet<Multisegment> {
    let mut seen: HashSet<Multisegment> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(m.clone());
    queue.push_back(m.clone());
    while let Some(cur) = queue.pop_front() {
        for next in cur.elementary_successors() {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// All multisegments with the given cuspidal support whose segments have step
/// `step`.
pub fn enumerate_multisegments(
    support: &[CuspidalPoint],
    step: u32,
    limit: usize,
) -> Result<BTreeSet<Multisegment>> {
    if support.len() > limit {
        return Err(Error::LimitExceeded { size: support.len(), limit });
    }
    if step == 0 {
        return Err(Error::InvalidArgument("step must be positive".into()));
    }
    let mut groups: BTreeMap<LineClass, BTreeMap<i64, usize>> = BTreeMap::new();
    for pt in support {
        let class = LineClass::of_point(pt.line, pt.exp, step);
        *groups.entry(class).or_default().entry(class.index_of(pt.exp)).or_default() += 1;
    }
    let mut acc: Vec<Vec<Segment>> = vec![Vec::new()];
    for (class, mut counts) in groups {
        let mut parts = Vec::new();
        let mut current = Vec::new();
        partitions_on_line(class, &mut counts, None, &mut current, &mut parts);
        acc = acc
            .iter()
            .flat_map(|prefix| {
                parts.iter().map(move |p: &Vec<Segment>| {
                    let mut v = prefix.clone();
                    v.extend_from_slice(p);
                    v
                })
            })
            .collect();
    }
    Ok(acc.into_iter().map(Multisegment::new).collect())
}

/// Partitions the multiset `counts` of indices into intervals. The smallest
/// remaining index must start a segment; segments starting at the same index
/// are produced in non-decreasing length to avoid duplicates.
fn partitions_on_line(
    class: LineClass,
    counts: &mut BTreeMap<i64, usize>,
    last: Option<(i64, i64)>,
    current: &mut Vec<Segment>,
    out: &mut Vec<Vec<Segment>>,
) {
    let Some((&lo, _)) = counts.iter().next() else {
        out.push(current.clone());
        return;
    };
    let min_len = match last {
        Some((start, len)) if start == lo => len,
        _ => 1,
    };
    let mut max_len = 0;
    while counts.get(&(lo + max_len)).copied().unwrap_or(0) > 0 {
        max_len += 1;
    }
    for len in min_len..=max_len {
        for i in lo..lo + len {
            let c = counts.get_mut(&i).unwrap();
            *c -= 1;
            if *c == 0 {
                counts.remove(&i);
            }
        }
        current.push(Segment::from_index_range(class, lo, lo + len - 1));
        partitions_on_line(class, counts, Some((lo, len)), current, out);
        current.pop();
        for i in lo..lo + len {
            *counts.entry(i).or_default() += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qi};

    fn reg() -> (LineRegistry, LineId, LineId) {
        let mut reg = LineRegistry::new();
        let rho = reg.register_line("rho", 1, None).unwrap();
        let tau = reg.register_line("tau", 2, None).unwrap();
        (reg, rho, tau)
    }

    fn seg(line: LineId, a: Exponent, b: Exponent) -> Segment {
        Segment::from_bounds(line, a, b, 1).unwrap()
    }

    fn ms(line: LineId, bounds: &[(i64, i64)]) -> Multisegment {
        bounds.iter().map(|&(a, b)| seg(line, qi(a), qi(b))).collect()
    }

    #[test]
    fn relation_examples() {
        let (_, rho, _) = reg();
        assert_eq!(
            segment_relation(&seg(rho, qi(0), qi(0)), &seg(rho, qi(1), qi(1))),
            SegmentRelation::LinkedAdjacent
        );
        assert_eq!(
            segment_relation(&seg(rho, qi(0), qi(2)), &seg(rho, qi(1), qi(3))),
            SegmentRelation::LinkedOverlapping
        );
        assert_eq!(
            segment_relation(&seg(rho, qi(0), qi(1)), &seg(rho, q(1, 2), q(3, 2))),
            SegmentRelation::Unlinked
        );
        assert_eq!(
            segment_relation(&seg(rho, qi(0), qi(3)), &seg(rho, qi(1), qi(2))),
            SegmentRelation::Unlinked
        );
        assert_eq!(
            segment_relation(&seg(rho, qi(0), qi(0)), &seg(rho, qi(2), qi(2))),
            SegmentRelation::Unlinked
        );
    }

    #[test]
    fn relation_respects_step_classes() {
        let (_, rho, _) = reg();
        // D-side cuspidals with s = 2 at centers -1/2 and 1/2 live on distinct lines.
        let a = Segment::new(rho, q(-1, 2), 1, 2);
        let b = Segment::new(rho, q(1, 2), 1, 2);
        assert_eq!(segment_relation(&a, &b), SegmentRelation::Unlinked);
        let c = Segment::new(rho, q(3, 2), 1, 2);
        assert_eq!(segment_relation(&a, &c), SegmentRelation::LinkedAdjacent);
    }

    #[test]
    fn from_bounds_validates() {
        let (_, rho, _) = reg();
        assert!(Segment::from_bounds(rho, qi(1), qi(0), 1).is_err());
        assert!(Segment::from_bounds(rho, qi(0), q(1, 2), 1).is_err());
        assert!(Segment::from_bounds(rho, qi(0), qi(3), 2).is_err());
        let s = Segment::from_bounds(rho, q(-1, 2), q(1, 2), 1).unwrap();
        assert_eq!(s.len, 2);
        assert_eq!(s.center(), qi(0));
    }

    #[test]
    fn successor_examples() {
        let (_, rho, _) = reg();
        let succ = ms(rho, &[(0, 2), (1, 3)]).elementary_successors();
        assert_eq!(succ, BTreeSet::from([ms(rho, &[(0, 3), (1, 2)])]));
        let succ = ms(rho, &[(0, 0), (1, 1)]).elementary_successors();
        assert_eq!(succ, BTreeSet::from([ms(rho, &[(0, 1)])]));
        assert!(ms(rho, &[(0, 1), (0, 1)]).elementary_successors().is_empty());
    }

    #[test]
    fn order_examples() {
        let (_, rho, _) = reg();
        let m = ms(rho, &[(0, 1), (2, 3)]);
        assert!(is_lower(&m, &m));
        let joined = ms(rho, &[(0, 1)]);
        let split = ms(rho, &[(0, 0), (1, 1)]);
        assert!(is_lower(&joined, &split));
        assert!(!is_lower(&split, &joined));
        assert!(is_lower(&ms(rho, &[(0, 2), (1, 1)]), &ms(rho, &[(0, 1), (1, 2)])));
        // different supports
        assert!(!is_lower(&ms(rho, &[(0, 1)]), &ms(rho, &[(0, 0), (2, 2)])));
    }

    #[test]
    fn order_is_checked_per_rigid_part() {
        let (_, rho, tau) = reg();
        let upper = Multisegment::new([seg(rho, qi(0), qi(0)), seg(rho, qi(1), qi(1)), seg(tau, qi(0), qi(0))]);
        let lower = Multisegment::new([seg(rho, qi(0), qi(1)), seg(tau, qi(0), qi(0))]);
        assert!(is_lower(&lower, &upper));
        assert!(!is_lower(&upper, &lower));
    }

    #[test]
    fn stats_examples() {
        let (_, rho, _) = reg();
        let pt = |x: i64| CuspidalPoint::new(rho, qi(x));
        let st = ms(rho, &[(0, 1), (1, 3)]).stats();
        assert_eq!(st.endings, vec![pt(1), pt(3)]);
        assert_eq!(st.ell, 3);
        assert_eq!(st.support, vec![pt(0), pt(1), pt(1), pt(2), pt(3)]);
        let st = Multisegment::empty().stats();
        assert!(st.endings.is_empty() && st.support.is_empty());
        assert_eq!(st.ell, 0);
        let st = ms(rho, &[(-1, 0), (0, 1)]).stats();
        assert_eq!(st.endings, vec![pt(0), pt(1)]);
        assert_eq!(st.ell, 2);
        assert_eq!(st.support, vec![pt(-1), pt(0), pt(0), pt(1)]);
    }

    #[test]
    fn rigid_decomposition_examples() {
        let (_, rho, tau) = reg();
        let m = Multisegment::new([seg(rho, qi(0), qi(1)), seg(rho, q(1, 2), q(3, 2))]);
        assert_eq!(m.rigid_decomposition().len(), 2);
        let m = Multisegment::new([seg(rho, qi(0), qi(1)), seg(tau, qi(0), qi(1))]);
        assert_eq!(m.rigid_decomposition().len(), 2);
        let m = ms(rho, &[(0, 1), (1, 2)]);
        assert_eq!(m.rigid_decomposition(), vec![m.clone()]);
    }

    #[test]
    fn hermitian_examples() {
        let mut r = LineRegistry::new();
        let rho = r.register_line("rho", 1, None).unwrap();
        let a = r.register_line("a", 1, None).unwrap();
        let b = r.register_line("b", 1, Some(a)).unwrap();
        let m = ms(rho, &[(-1, 0), (0, 1)]);
        assert_eq!(m.hermitian_dual(&r).unwrap(), m);
        assert!(m.is_hermitian(&r).unwrap());
        let m = ms(rho, &[(0, 1)]);
        assert_eq!(m.hermitian_dual(&r).unwrap(), ms(rho, &[(-1, 0)]));
        assert!(!m.is_hermitian(&r).unwrap());
        let m = ms(a, &[(0, 0)]);
        assert_eq!(m.hermitian_dual(&r).unwrap(), ms(b, &[(0, 0)]));
    }

    #[test]
    fn enumerate_examples() {
        let (_, rho, _) = reg();
        let pts = |xs: &[i64]| xs.iter().map(|&x| CuspidalPoint::new(rho, qi(x))).collect::<Vec<_>>();
        let all = enumerate_multisegments(&pts(&[0, 1, 1]), 1, 10).unwrap();
        assert_eq!(
            all,
            BTreeSet::from([ms(rho, &[(0, 1), (1, 1)]), ms(rho, &[(0, 0), (1, 1), (1, 1)])])
        );
        assert_eq!(
            enumerate_multisegments(&pts(&[0]), 1, 10).unwrap(),
            BTreeSet::from([ms(rho, &[(0, 0)])])
        );
        assert_eq!(
            enumerate_multisegments(&pts(&[0, 2]), 1, 10).unwrap(),
            BTreeSet::from([ms(rho, &[(0, 0), (2, 2)])])
        );
        assert!(matches!(
            enumerate_multisegments(&pts(&[0, 1, 2]), 1, 2),
            Err(Error::LimitExceeded { size: 3, limit: 2 })
        ));
    }

    /// Independent oracle: every set partition of the support into runs,
    /// deduplicated through canonical form.
    fn brute_force_partitions(points: &[i64]) -> BTreeSet<Vec<(i64, i64)>> {
        fn go(rest: Vec<i64>, cur: Vec<(i64, i64)>, out: &mut BTreeSet<Vec<(i64, i64)>>) {
            if rest.is_empty() {
                let mut c = cur;
                c.sort();
                out.insert(c);
                return;
            }
            let n = rest.len();
            for mask in 1u32..(1 << n) {
                let mut chosen: Vec<i64> =
                    (0..n).filter(|i| mask & (1 << i) != 0).map(|i| rest[i]).collect();
                chosen.sort();
                if chosen.windows(2).any(|w| w[1] != w[0] + 1) {
                    continue;
                }
                if (0..n).any(|i| mask & (1 << i) == 0 && rest[i] < chosen[0]) {
                    continue; // first segment must contain the minimum
                }
                let left: Vec<i64> = (0..n).filter(|i| mask & (1 << i) == 0).map(|i| rest[i]).collect();
                let mut next = cur.clone();
                next.push((chosen[0], *chosen.last().unwrap()));
                go(left, next, out);
            }
        }
        let mut out = BTreeSet::new();
        go(points.to_vec(), Vec::new(), &mut out);
        out
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let (_, rho, _) = reg();
        for pts in [vec![0, 1, 1, 2], vec![0, 0, 1, 1, 2], vec![0, 1, 2, 2, 3, 3], vec![-1, 0, 0, 1, 1, 2]] {
            let support: Vec<_> = pts.iter().map(|&x| CuspidalPoint::new(rho, qi(x))).collect();
            let ours: BTreeSet<Vec<(i64, i64)>> = enumerate_multisegments(&support, 1, 10)
                .unwrap()
                .iter()
                .map(|m| {
                    let mut v: Vec<_> = m.iter().map(|s| s.index_range()).collect();
                    v.sort();
                    v
                })
                .collect();
            assert_eq!(ours, brute_force_partitions(&pts), "support {pts:?}");
        }
    }

    #[test]
    fn d_side_segments_step_through_centers() {
        let (_, rho, _) = reg();
        let s = Segment::centered(rho, qi(0), 2, 2);
        assert_eq!(s.start, qi(-1));
        assert_eq!(s.end(), qi(1));
        let pts: Vec<_> = s.points().map(|p| p.exp).collect();
        assert_eq!(pts, vec![qi(-1), qi(1)]);
    }
}
