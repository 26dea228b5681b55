//! Permutations of `{1, …, k}` filtered by a per-position predicate.

/// Sign of a permutation given in one-line notation (any distinct values).
pub(crate) fn sign(perm: &[u32]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All permutations `w` of `{1..k}` (one-line, `w[i-1] = w(i)`) with
/// `allowed(i, w(i))` for every position, in lexicographic order.
pub(crate) fn filtered_permutations(k: u32, allowed: impl Fn(u32, u32) -> bool) -> Vec<Vec<u32>> {
    fn go(
        k: u32,
        allowed: &dyn Fn(u32, u32) -> bool,
        used: &mut Vec<bool>,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        let i = cur.len() as u32 + 1;
        if i > k {
            out.push(cur.clone());
            return;
        }
        for v in 1..=k {
            if used[v as usize] || !allowed(i, v) {
                continue;
            }
            used[v as usize] = true;
            cur.push(v);
            go(k, allowed, used, cur, out);
            cur.pop();
            used[v as usize] = false;
        }
    }
    let mut out = Vec::new();
    let mut used = vec![false; k as usize + 1];
    go(k, &allowed, &mut used, &mut Vec::new(), &mut out);
    out
}

/// `W_k^l`: permutations with `w(i) + l ≥ i`.
pub(crate) fn tadic_permutations(k: u32, l: u32) -> Vec<Vec<u32>> {
    filtered_permutations(k, |i, v| v + l >= i)
}
