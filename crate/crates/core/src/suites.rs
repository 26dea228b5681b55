//! Self-check suites: exhaustive and property checks of the library against
//! brute-force computations and known worked examples.
//!
//! Each suite returns a [`SuiteReport`]; the command line `selfcheck` and the
//! acceptance tests both run them.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::{Duration, Instant};

use crate::duality::{dual_irr, mw_dual, raw_dual_std, ubar_dual_formula};
use crate::gkring::{
    expand_u, expand_ubar, speh_u, speh_u_prime, speh_ubar, ubar_factor, Side, SpehUnit, UnitaryProduct,
    VirtualRep,
};
use crate::global::{interval_decomposition, levi_conjugate_count};
use crate::lfactors::{eps_esi, eps_irr, l_esi, l_irr, normalizing_factor, rs_quotient, FormalLFactor};
use crate::multiseg::{down_set, enumerate_multisegments, is_lower, Multisegment, Segment};
use crate::registry::{s_invariant, CuspidalPoint, LineId, LineRegistry};
use crate::transfer::{c_inv, c_map, in_image_lju, lj_std, lj_u, m_map};
use crate::{q, qi, Exponent, Result, DEFAULT_SEARCH_LIMIT};

pub const SUITE_COUNT: u8 = 14;

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Option<Duration>,
}

impl SuiteReport {
    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let budget = match self.budget {
            Some(b) => format!(" (budget {}s)", b.as_secs()),
            None => String::new(),
        };
        format!(
            "{verdict} {:>2} {}: {} cases in {:.2}s{budget}; {}",
            self.id,
            self.title,
            self.cases,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

struct Outcome {
    passed: bool,
    cases: usize,
    detail: String,
}

impl Outcome {
    fn new(failures: &[String], cases: usize, ok_detail: impl Into<String>) -> Self {
        match failures.first() {
            None => Self { passed: true, cases, detail: ok_detail.into() },
            Some(first) => Self {
                passed: false,
                cases,
                detail: format!("{} failure(s), first: {first}", failures.len()),
            },
        }
    }
}

const TITLES: [&str; SUITE_COUNT as usize] = [
    "duality involution",
    "Speh duals swap parameters",
    "transfer of Speh expansions",
    "divisibility and vanishing",
    "u-bar factorization",
    "dual of u-bar",
    "second global counterexample",
    "non-unitary-image product",
    "L and epsilon factors",
    "normalizing factor cancellation",
    "interval decomposition",
    "conjugate Levi count",
    "order sanity",
    "sign coherence of duality and transfer",
];

fn budget(id: u8) -> Option<Duration> {
    match id {
        1 => Some(Duration::from_secs(60)),
        3 => Some(Duration::from_secs(10)),
        4 => Some(Duration::from_secs(30)),
        8 => Some(Duration::from_secs(300)),
        _ => None,
    }
}

/// Runs suite `id` (1-based).
pub fn run_suite(id: u8) -> Option<SuiteReport> {
    if id == 0 || id > SUITE_COUNT {
        return None;
    }
    let started = Instant::now();
    let result = match id {
        1 => duality_involution(),
        2 => speh_duals(),
        3 => speh_transfer(),
        4 => divisibility(),
        5 => ubar_factorization(),
        6 => ubar_dual(),
        7 => second_counterexample(),
        8 => nonunit_product_suite(),
        9 => l_and_epsilon(),
        10 => normalizing_cancellation(),
        11 => intervals(),
        12 => levi_counts(),
        13 => order_sanity(),
        _ => sign_coherence(),
    };
    let elapsed = started.elapsed();
    let budget = budget(id);
    let outcome = result.unwrap_or_else(|e| Outcome { passed: false, cases: 0, detail: format!("error: {e}") });
    let over = budget.is_some_and(|b| elapsed > b);
    let detail = if over { format!("{}; over budget", outcome.detail) } else { outcome.detail };
    Some(SuiteReport {
        id,
        title: TITLES[id as usize - 1],
        passed: outcome.passed && !over,
        cases: outcome.cases,
        detail,
        elapsed,
        budget,
    })
}

pub fn run_all() -> Vec<SuiteReport> {
    (1..=SUITE_COUNT).filter_map(run_suite).collect()
}

fn rho(reg: &LineRegistry) -> LineId {
    reg.lookup("rho").expect("standard registry has rho")
}

/// All multisets of size `1..=max` over the points `0..width` of one line.
pub fn window_supports(line: LineId, width: i64, max: usize) -> Vec<Vec<CuspidalPoint>> {
    fn rec(from: i64, width: i64, left: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for x in from..width {
            cur.push(x);
            rec(x, width, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(0, width, max, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|v| v.into_iter().map(|x| CuspidalPoint::new(line, qi(x))).collect())
        .collect()
}

/// Corpus of criteria 1 and 13: every multisegment whose support is a
/// multiset of size ≤ 7 in a window of 5 consecutive integers.
pub fn order_corpus(line: LineId) -> Result<Vec<BTreeSet<Multisegment>>> {
    window_supports(line, 5, 7)
        .iter()
        .map(|sup| enumerate_multisegments(sup, 1, DEFAULT_SEARCH_LIMIT))
        .collect()
}

fn duality_involution() -> Result<Outcome> {
    let reg = LineRegistry::standard();
    let mut failures = Vec::new();
    let mut cases = 0;
    for family in order_corpus(rho(&reg))? {
        for m in family {
            cases += 1;
            let d = mw_dual(&m)?;
            if d.support() != m.support() {
                failures.push(format!("support of dual of {m:?} changed"));
            } else if mw_dual(&d)? != m {
                failures.push(format!("dual is not involutive on {m:?}"));
            }
        }
    }
    Ok(Outcome::new(&failures, cases, "involutive and support-preserving"))
}

fn speh_duals() -> Result<Outcome> {
    let r = rho(&LineRegistry::standard());
    let mut failures = Vec::new();
    for l in 1..=5 {
        for k in 1..=5 {
            if dual_irr(&speh_u(l, r, k, qi(0))) != speh_u(k, r, l, qi(0)) {
                failures.push(format!("l={l} k={k}"));
            }
        }
    }
    Ok(Outcome::new(&failures, 25, "exact label equality"))
}

fn speh_transfer() -> Result<Outcome> {
    let reg = LineRegistry::standard();
    let r = rho(&reg);
    let mut failures = Vec::new();
    let mut cases = 0;
    for s in [2u32, 3] {
        let d = s;
        for a in 1..=3 {
            for k in 1..=3 {
                cases += 1;
                let lhs = lj_std(&expand_u(a * s, r, k), d, &reg)?;
                let sigma = c_map(&Segment::centered(r, qi(0), a * s, 1), d, &reg)?;
                if lhs != expand_ubar(&sigma, k, d) {
                    failures.push(format!("s={s}, u(Z(rho,{}),{k})", a * s));
                }
            }
        }
        for l in 1..=3 {
            for k in 1..=3 {
                cases += 1;
                let lhs = lj_std(&expand_u(l, r, k * s), d, &reg)?;
                if lhs != lj_u(l, r, k * s, d, &reg)?.expand(d) {
                    failures.push(format!("s={s}, u(Z(rho,{l}),{})", k * s));
                }
            }
        }
    }
    Ok(Outcome::new(&failures, cases, "coefficientwise equality in both configurations"))
}

/// Whether some permutation `w` of `1..=k` has `s | l + w(i) − i` for all `i`.
fn has_divisible_permutation(s: u32, k: u32, l: u32) -> bool {
    fn rec(i: u32, k: u32, s: u32, l: u32, used: &mut Vec<bool>) -> bool {
        if i > k {
            return true;
        }
        for v in 1..=k {
            if !used[v as usize] && (l as i64 + v as i64 - i as i64).rem_euclid(s as i64) == 0 {
                used[v as usize] = true;
                if rec(i + 1, k, s, l, used) {
                    return true;
                }
                used[v as usize] = false;
            }
        }
        false
    }
    rec(1, k, s, l, &mut vec![false; k as usize + 1])
}

fn divisibility() -> Result<Outcome> {
    let reg = LineRegistry::standard();
    let r = rho(&reg);
    let mut failures = Vec::new();
    let mut cases = 0;
    for s in 1..=6 {
        for k in 1..=6 {
            for l in 1..=6 {
                cases += 1;
                let vanishes = lj_u(l, r, k, s, &reg)?.is_zero();
                if vanishes == has_divisible_permutation(s, k, l) {
                    failures.push(format!("s={s} k={k} l={l}"));
                }
            }
        }
    }
    Ok(Outcome::new(&failures, cases, "sign 0 exactly when no permutation qualifies"))
}

fn ubar_factorization() -> Result<Outcome> {
    let r = rho(&LineRegistry::standard());
    let mut failures = Vec::new();
    let mut cases = 0;
    for s in 1..=4 {
        for n in 1..=3 {
            let sigma = Segment::centered(r, qi(0), n, s);
            for k in 1..=8 {
                cases += 1;
                if speh_ubar(&sigma, k, qi(0)) != ubar_factor(&sigma, k).multisegment() {
                    failures.push(format!("s={s} n={n} k={k}"));
                }
            }
        }
    }
    Ok(Outcome::new(&failures, cases, "labels agree"))
}

fn ubar_dual() -> Result<Outcome> {
    let r = rho(&LineRegistry::standard());
    let mut failures = Vec::new();
    let mut cases = 0;
    for s in 1..=3 {
        for k in 1..=3 {
            let tau = Segment::centered(r, qi(0), k, s);
            for l in 1..=5 {
                cases += 1;
                if dual_irr(&speh_ubar(&tau, l, qi(0))) != ubar_dual_formula(&tau, l).multisegment() {
                    failures.push(format!("s={s} k={k} l={l}"));
                }
            }
        }
    }
    Ok(Outcome::new(&failures, cases, "labels agree"))
}

/// Labels of the second global counterexample at the ramified place, `d = 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleLabels {
    /// `|LJ|(u(St_3,2))`, from the Speh transfer formula.
    pub transfer_of_speh: Multisegment,
    /// The same, read off the transfer of Tadić's expansion.
    pub transfer_of_expansion: VirtualRep,
    /// `|LJ|(St_4 × St_2)`.
    pub transfer_of_tempered: Multisegment,
    /// `ū(St′_1, 3)`.
    pub ubar: Multisegment,
    /// `1′_2 × St′_1`.
    pub trivial_times_steinberg: Multisegment,
    /// `St′_2 × St′_1`.
    pub steinberg_product: Multisegment,
}

pub fn counterexample_labels(reg: &LineRegistry) -> Result<CounterexampleLabels> {
    let r = rho(reg);
    let d = 2;
    let st = |n: u32, step: u32| Segment::centered(r, qi(0), n, step);
    let tempered = Multisegment::new([st(4, 1), st(2, 1)]);
    let tempered_image = lj_std(&VirtualRep::basis(Side::Split, tempered), d, reg)?;
    let transfer_of_tempered = match tempered_image.terms().collect::<Vec<_>>().as_slice() {
        [(m, 1)] => (*m).clone(),
        _ => Multisegment::empty(),
    };
    let cusp = st(1, 2);
    Ok(CounterexampleLabels {
        transfer_of_speh: lj_u(3, r, 2, d, reg)?.product.multisegment(),
        transfer_of_expansion: lj_std(&expand_u(3, r, 2), d, reg)?,
        transfer_of_tempered,
        ubar: speh_ubar(&cusp, 3, qi(0)),
        trivial_times_steinberg: speh_u_prime(&cusp, 2, qi(0)).union(&Multisegment::new([cusp])),
        steinberg_product: Multisegment::new([st(2, 2), st(1, 2)]),
    })
}

fn second_counterexample() -> Result<Outcome> {
    let reg = LineRegistry::standard();
    let c = counterexample_labels(&reg)?;
    let tempered_ok = c.transfer_of_tempered == c.steinberg_product;
    let ubar_ok = c.ubar == c.trivial_times_steinberg;
    let speh_is_ubar = c.transfer_of_speh == c.ubar;
    let differ = c.transfer_of_speh != c.transfer_of_tempered;
    let detail = format!(
        "|LJ|(St4xSt2)=St'2xSt'1: {}; u-bar(St'1,3)=1'2xSt'1: {}; |LJ|(u(St3,2))=u-bar(St'1,3): {}; transfers differ: {}; computed |LJ|(u(St3,2)) = {}",
        yes(tempered_ok),
        yes(ubar_ok),
        yes(speh_is_ubar),
        yes(differ),
        if c.transfer_of_speh == c.steinberg_product { "St'2xSt'1" } else { "other" },
    );
    Ok(Outcome { passed: tempered_ok && ubar_ok && speh_is_ubar && differ, cases: 4, detail })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// `ν^{−3/2}u′(St′₃,4) × ν^{−1/2}u′(St′₄,3) × ν^{1/2}u′(St′₄,3) × ν^{3/2}u′(St′₃,4)`
/// for `d = 4`.
pub fn nonunit_product(line: LineId) -> UnitaryProduct {
    let st3 = Segment::centered(line, qi(0), 3, 4);
    let st4 = Segment::centered(line, qi(0), 4, 4);
    UnitaryProduct::new([
        SpehUnit::new(st3, 4, q(-3, 2)),
        SpehUnit::new(st4, 3, q(-1, 2)),
        SpehUnit::new(st4, 3, q(1, 2)),
        SpehUnit::new(st3, 4, q(3, 2)),
    ])
}

fn nonunit_product_suite() -> Result<Outcome> {
    let reg = LineRegistry::standard();
    let r = rho(&reg);
    let pi = nonunit_product(r);
    let st3 = Segment::centered(r, qi(0), 3, 4);
    let ubar = speh_ubar(&st3, 16, qi(0));
    let expected_factor = UnitaryProduct::new(
        [q(-3, 2), q(-1, 2), q(1, 2), q(3, 2)].map(|t| SpehUnit::new(st3, 4, t)),
    );
    let factor_ok = ubar_factor(&st3, 16) == expected_factor && expected_factor.multisegment() == ubar;
    let lower = is_lower(&pi.multisegment(), &ubar) && pi.multisegment() != ubar;
    let preimage = in_image_lju(&pi, 4, &reg, DEFAULT_SEARCH_LIMIT)?;
    let detail = format!(
        "u-bar(St'3,16) factors as four twisted u'(St'3,4): {}; product < u-bar: {}; preimage: {}",
        yes(factor_ok),
        yes(lower),
        match &preimage {
            None => "none".to_string(),
            Some(w) => w.to_string(),
        }
    );
    Ok(Outcome { passed: factor_ok && lower && preimage.is_none(), cases: 3, detail })
}

fn l_and_epsilon() -> Result<Outcome> {
    let mut reg = LineRegistry::standard();
    let r = rho(&reg);
    let tau = reg.register_line("tau", 2, None)?;
    let mut failures = Vec::new();
    let mut cases = 0;
    let mut l_differs = 0;

    // closed forms for 1′_n and St′_n
    for d in 1..=4u32 {
        let di = d as i64;
        for n in 1..=6u32 {
            let ni = n as i64;
            cases += 2;
            let point = Segment::new(r, qi(0), 1, d);
            let one = speh_u_prime(&point, n, qi(0));
            let expected = FormalLFactor::new((0..ni).map(|j| q(di * ni - 1, 2) - qi(di * j)));
            if l_irr(&one, d, &reg)? != expected {
                failures.push(format!("L(1'_{n}) for d={d}"));
            }
            let st = Segment::centered(r, qi(0), n, d);
            let top = q(di * ni - 1, 2);
            let eps_expected: Vec<Exponent> = (0..di * ni).map(|j| top - qi(j)).rev().collect();
            if l_esi(&st, d, &reg)? != FormalLFactor::new([top]) || eps_esi(&st, d, &reg)?.shifts_on(r) != eps_expected {
                failures.push(format!("L/eps(St'_{n}) for d={d}"));
            }
        }
    }

    // invariance under C, for single segments and for pairs
    let centers = [qi(0), q(1, 2), qi(-1), q(1, 3)];
    for d in 1..=4u32 {
        for line in [r, tau] {
            let s = s_invariant(reg.p(line)?, d);
            let mut segs = Vec::new();
            for k in 1..=4 {
                for c in centers {
                    segs.push(Segment::centered(line, c, k, s));
                }
            }
            for seg in &segs {
                cases += 1;
                let split = c_inv(seg, d, &reg)?;
                if l_esi(seg, d, &reg)? != l_esi(&split, 1, &reg)? || eps_esi(seg, d, &reg)? != eps_esi(&split, 1, &reg)? {
                    failures.push(format!("C-invariance of {seg} for d={d}"));
                }
            }
            for (i, a) in segs.iter().enumerate() {
                for b in &segs[i..] {
                    cases += 1;
                    let m = Multisegment::new([*a, *b]);
                    let split = m_map(&m, d, &reg)?;
                    if l_irr(&m, d, &reg)? != l_irr(&split, 1, &reg)? || eps_irr(&m, d, &reg)? != eps_irr(&split, 1, &reg)? {
                        failures.push(format!("C-invariance of {m:?} for d={d}"));
                    }
                }
            }
        }
    }

    // ε′ under |LJ| on the corpus of the Speh transfer suite
    for s in [2u32, 3] {
        let d = s;
        let mut configs = Vec::new();
        for a in 1..=3 {
            for k in 1..=3 {
                configs.push((a * s, k));
                configs.push((a, k * s));
            }
        }
        for (l, k) in configs {
            let t = lj_u(l, r, k, d, &reg)?;
            if t.is_zero() {
                continue;
            }
            cases += 1;
            let u = speh_u(l, r, k, qi(0));
            let image = t.product.multisegment();
            if eps_irr(&u, 1, &reg)? != eps_irr(&image, d, &reg)? {
                failures.push(format!("eps' of u(Z(rho,{l}),{k}) and its transfer, d={d}"));
            }
            let same_l = l_irr(&u, 1, &reg)? == l_irr(&image, d, &reg)?;
            if l % s == 0 {
                if !same_l {
                    failures.push(format!("L of u(Z(rho,{l}),{k}) and its transfer, d={d}"));
                }
            } else {
                if !same_l {
                    l_differs += 1;
                }
                if l_irr(&dual_irr(&u), 1, &reg)? != l_irr(&dual_irr(&image), d, &reg)? {
                    failures.push(format!("L of the duals of u(Z(rho,{l}),{k}) and its transfer, d={d}"));
                }
            }
        }
    }
    Ok(Outcome::new(
        &failures,
        cases,
        format!("closed forms, C-invariance and eps' invariance hold; L differs on {l_differs} dual-case transfer(s)"),
    ))
}

fn normalizing_cancellation() -> Result<Outcome> {
    let failures: Vec<String> =
        (1..=5).filter(|&s| rs_quotient(s) != normalizing_factor(s)).map(|s| format!("s={s}")).collect();
    Ok(Outcome::new(&failures, 5, "shift multisets agree"))
}

/// All decompositions of `a` into symmetric integer intervals, by search.
pub fn interval_partitions(a: &[i64]) -> BTreeSet<Vec<i64>> {
    fn rec(counts: &mut BTreeMap<i64, usize>, max_r: i64, cur: &mut Vec<i64>, out: &mut BTreeSet<Vec<i64>>) {
        if counts.values().all(|&c| c == 0) {
            out.insert(cur.clone());
            return;
        }
        for r in (0..=max_r).rev() {
            if (-r..=r).all(|x| counts.get(&x).copied().unwrap_or(0) > 0) {
                for x in -r..=r {
                    *counts.get_mut(&x).unwrap() -= 1;
                }
                cur.push(r);
                rec(counts, r, cur, out);
                cur.pop();
                for x in -r..=r {
                    *counts.get_mut(&x).unwrap() += 1;
                }
            }
        }
    }
    let mut counts = BTreeMap::new();
    for &x in a {
        *counts.entry(x).or_insert(0) += 1;
    }
    let max_r = a.iter().map(|x| x.abs()).max().unwrap_or(0);
    let mut out = BTreeSet::new();
    rec(&mut counts, max_r, &mut Vec::new(), &mut out);
    out
}

fn intervals() -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut cases = 0;
    let mut decomposable = 0;
    fn rec(from: i64, left: usize, cur: &mut Vec<i64>, f: &mut dyn FnMut(&[i64])) {
        f(cur);
        if left == 0 {
            return;
        }
        for x in from..=4 {
            cur.push(x);
            rec(x, left - 1, cur, f);
            cur.pop();
        }
    }
    rec(-4, 10, &mut Vec::new(), &mut |a: &[i64]| {
        cases += 1;
        let found = interval_partitions(a);
        let greedy = interval_decomposition(a);
        if found.len() > 1 {
            failures.push(format!("{a:?} has {} decompositions", found.len()));
        }
        if greedy.as_ref() != found.iter().next() {
            failures.push(format!("{a:?}: greedy {greedy:?}, search {found:?}"));
        }
        if greedy.is_some() {
            decomposable += 1;
        }
    });
    Ok(Outcome::new(&failures, cases, format!("agreement and uniqueness; {decomposable} decomposable")))
}

/// Number of partitions of `{0..n}` into `l` unordered blocks of equal size,
/// by enumeration.
pub fn count_equal_block_partitions(n: u32, l: u32) -> u64 {
    fn rec(rest: Vec<u32>, m: usize) -> u64 {
        // the block of the smallest remaining element
        let Some((_, others)) = rest.split_first() else { return 1 };
        let mut total = 0;
        let k = others.len();
        if m == 0 || k < m - 1 {
            return 0;
        }
        for mask in 0u64..(1 << k) {
            if mask.count_ones() as usize != m - 1 {
                continue;
            }
            let remaining: Vec<u32> =
                others.iter().enumerate().filter(|(i, _)| mask & (1 << i) == 0).map(|(_, &x)| x).collect();
            total += rec(remaining, m);
        }
        total
    }
    if l == 0 || !n.is_multiple_of(l) {
        return 0;
    }
    rec((0..n).collect(), (n / l) as usize)
}

fn levi_counts() -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 1..=10u32 {
        for l in (1..=n).filter(|l| n % l == 0) {
            cases += 1;
            let formula = levi_conjugate_count(n, l)?;
            let direct = count_equal_block_partitions(n, l);
            if formula != direct.into() {
                failures.push(format!("({n},{l}): formula {formula}, enumeration {direct}"));
            }
        }
    }
    let pinned = levi_conjugate_count(4, 2)? == 3u32.into() && levi_conjugate_count(6, 3)? == 15u32.into();
    if !pinned {
        failures.push("pinned values (4,2)=3, (6,3)=15".into());
    }
    Ok(Outcome::new(&failures, cases, "formula matches enumeration; (4,2)=3, (6,3)=15"))
}

fn is_sub_multiset<T: Ord + Clone>(small: &[T], big: &[T]) -> bool {
    let mut counts: BTreeMap<T, i64> = BTreeMap::new();
    for x in big {
        *counts.entry(x.clone()).or_insert(0) += 1;
    }
    small.iter().all(|x| match counts.get_mut(x) {
        Some(c) if *c > 0 => {
            *c -= 1;
            true
        }
        _ => false,
    })
}

fn order_sanity() -> Result<Outcome> {
    let reg = LineRegistry::standard();
    let mut failures = Vec::new();
    let mut cases = 0;
    for family in order_corpus(rho(&reg))? {
        let downs: BTreeMap<&Multisegment, HashSet<Multisegment>> = family.iter().map(|m| (m, down_set(m))).collect();
        for (m, down) in &downs {
            cases += 1;
            if !down.contains(*m) {
                failures.push(format!("{m:?} is not below itself"));
            }
            if !down.iter().all(|x| family.contains(x)) {
                failures.push(format!("operations on {m:?} leave the support"));
            }
            for next in m.elementary_successors() {
                if next.support() != m.support() || next.ell() < m.ell() || !is_sub_multiset(&next.endings(), &m.endings()) {
                    failures.push(format!("elementary step {m:?} -> {next:?}"));
                }
            }
            for lower in down.iter() {
                if lower != *m && downs[lower].contains(*m) {
                    failures.push(format!("antisymmetry fails for {m:?}, {lower:?}"));
                }
                if !downs[lower].is_subset(down) {
                    failures.push(format!("transitivity fails below {m:?}"));
                }
            }
            for other in &family {
                if is_lower(other, m) != down.contains(other) {
                    failures.push(format!("is_lower({other:?}, {m:?}) disagrees with the down-set"));
                }
            }
        }
    }
    Ok(Outcome::new(&failures, cases, "partial order; steps keep support, raise l, shrink E"))
}

fn sign_coherence() -> Result<Outcome> {
    let reg = LineRegistry::standard();
    let r = rho(&reg);
    let mut failures = Vec::new();
    let mut cases = 0;
    // (d, total size) -> signs that work on every label seen so far
    let mut theta: BTreeMap<(u32, usize), BTreeSet<i64>> = BTreeMap::new();
    for sup in window_supports(r, 5, 6) {
        for m in enumerate_multisegments(&sup, 1, DEFAULT_SEARCH_LIMIT)? {
            let x = VirtualRep::basis(Side::Split, m.clone());
            for d in [2u32, 3] {
                cases += 1;
                let lhs = lj_std(&raw_dual_std(&x), d, &reg)?;
                let rhs = raw_dual_std(&lj_std(&x, d, &reg)?);
                if lhs.is_zero() && rhs.is_zero() {
                    continue;
                }
                let works: BTreeSet<i64> = [1, -1].into_iter().filter(|&t| lhs == rhs.scaled(t)).collect();
                let entry = theta.entry((d, sup.len())).or_insert_with(|| [1, -1].into());
                let had_sign = !entry.is_empty();
                *entry = entry.intersection(&works).copied().collect();
                if had_sign && entry.is_empty() {
                    failures.push(format!("no common sign for d={d}, size {}, at {m:?}", sup.len()));
                }
            }
        }
    }
    // the surviving signs, against (−1)^{(d−1)n} with n = size/d
    let mut summary = Vec::new();
    for ((d, size), signs) in &theta {
        let n = size / *d as usize;
        let predicted = if ((*d as usize - 1) * n).is_multiple_of(2) { 1 } else { -1 };
        if signs.len() == 1 && !signs.contains(&predicted) {
            failures.push(format!("d={d}, size {size}: sign {signs:?}, expected {predicted}"));
        }
        summary.push(format!("d={d},N={size}:{}", signs.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("/")));
    }
    Ok(Outcome::new(&failures, cases, format!("theta = (-1)^((d-1)n) per component [{}]", summary.join(" "))))
}
