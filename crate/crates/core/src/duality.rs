//! Zelevinsky–Aubert duality on irreducible labels (Mœglin–Waldspurger
//! algorithm) and the raw dual on standard modules.

use crate::gkring::{SpehUnit, UnitaryProduct, VirtualRep};
use crate::multiseg::{LineClass, Multisegment, Segment};
use crate::{q, qi, Error, Result};

/// Dual of a rigid multisegment.
pub fn mw_dual(m: &Multisegment) -> Result<Multisegment> {
    let parts = m.rigid_parts();
    if parts.len() > 1 {
        return Err(Error::NotRigid);
    }
    let Some((class, part)) = parts.into_iter().next() else {
        return Ok(Multisegment::empty());
    };
    Ok(mw_on_line(class, &part))
}

fn mw_on_line(class: LineClass, m: &Multisegment) -> Multisegment {
    let mut segs: Vec<(i64, i64)> = m.iter().map(Segment::index_range).collect();
    let mut out = Vec::new();
    while !segs.is_empty() {
        let top = segs.iter().map(|s| s.1).max().unwrap();
        // shortest among those ending at `top`: largest beginning
        let mut cur = pick_shortest(&segs, |s| s.1 == top).unwrap();
        let mut chain = vec![cur];
        loop {
            let (lo, hi) = segs[cur];
            match pick_shortest(&segs, |s| s.1 == hi - 1 && s.0 < lo) {
                Some(next) => {
                    cur = next;
                    chain.push(next);
                }
                None => break,
            }
        }
        let len = chain.len() as i64;
        out.push(Segment::from_index_range(class, top - len + 1, top));
        for &i in &chain {
            segs[i].1 -= 1;
        }
        segs.retain(|s| s.0 <= s.1);
    }
    Multisegment::new(out)
}

fn pick_shortest(segs: &[(i64, i64)], pred: impl Fn(&(i64, i64)) -> bool) -> Option<usize> {
    segs.iter()
        .enumerate()
        .filter(|(_, s)| pred(s))
        .max_by_key(|(_, s)| s.0)
        .map(|(i, _)| i)
}

/// Dual of an arbitrary irreducible label, computed part by part.
pub fn dual_irr(m: &Multisegment) -> Multisegment {
    m.rigid_parts()
        .into_iter()
        .fold(Multisegment::empty(), |acc, (class, part)| acc.union(&mw_on_line(class, &part)))
}

/// Signed cut-expansion of one segment: all ways to cut it into consecutive
/// pieces, sign `(−1)^{n−r}` for `r` pieces.
fn cut_expansion(seg: &Segment) -> Vec<(i64, Vec<Segment>)> {
    let class = seg.line_class();
    let (lo, hi) = seg.index_range();
    let n = seg.len as usize;
    let mut out = Vec::with_capacity(1 << (n - 1));
    for mask in 0u64..(1u64 << (n - 1)) {
        // bit j set: cut between lo+j and lo+j+1
        let mut pieces = Vec::new();
        let mut start = lo;
        for j in 0..(n as i64 - 1) {
            if mask & (1 << j) != 0 {
                pieces.push(Segment::from_index_range(class, start, lo + j));
                start = lo + j + 1;
            }
        }
        pieces.push(Segment::from_index_range(class, start, hi));
        let sign = if (n - pieces.len()).is_multiple_of(2) { 1 } else { -1 };
        out.push((sign, pieces));
    }
    out
}

/// Linear dual on the standard lattice, multiplicative over segments and
/// without sign normalization.
pub fn raw_dual_std(x: &VirtualRep) -> VirtualRep {
    let mut out = VirtualRep::zero(x.side());
    for (m, c) in x.terms() {
        let mut acc: Vec<(i64, Vec<Segment>)> = vec![(c, Vec::new())];
        for seg in m {
            let exp = cut_expansion(seg);
            acc = acc
                .iter()
                .flat_map(|(ca, sa)| {
                    exp.iter().map(move |(cb, sb)| {
                        let mut v = sa.clone();
                        v.extend_from_slice(sb);
                        (ca * cb, v)
                    })
                })
                .collect();
        }
        for (coef, segs) in acc {
            out.add_term(coef, Multisegment::new(segs));
        }
    }
    out
}

/// Closed form of the dual of `ū(τ′,l)`, `τ′` of `D`-length `k`: with
/// `l = a·s + b`, `b` factors `u′(T(ρ′,a+1),k)` and `s−b` factors
/// `u′(T(ρ′,a),k)` (the latter omitted when `a = 0`), twisted like the
/// blocks of `ū`.
pub fn ubar_dual_formula(tau: &Segment, l: u32) -> UnitaryProduct {
    assert!(l >= 1, "Speh units need l ≥ 1");
    let s = tau.step;
    let (a, b) = (l / s, l % s);
    let center = tau.center();
    let unit = |len: u32, shift| {
        let sigma = Segment::centered(tau.line, center, len, s);
        SpehUnit::new(sigma, tau.len, shift)
    };
    let block = |count: u32, len: u32| {
        (1..=count).map(move |i| unit(len, qi(i as i64) - q(count as i64 + 1, 2)))
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
