//! Subsets of a ground set `[n]` (n <= 64) as bitmasks. Element `i`
//! (1-based) lives in bit `i - 1`.

pub(crate) type Mask = u64;

pub(crate) const MAX_GROUND: usize = 64;

pub(crate) fn bit(i: usize) -> Mask {
    1u64 << (i - 1)
}

pub(crate) fn mask_of(elements: &[usize]) -> Mask {
    elements.iter().fold(0, |m, &i| m | bit(i))
}

pub(crate) fn full(n: usize) -> Mask {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// The elements of a mask in increasing order, 1-based.
pub(crate) fn elements(mut m: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize + 1);
        m &= m - 1;
    }
    out
}

pub(crate) fn size(m: Mask) -> usize {
    m.count_ones() as usize
}

/// Smallest element (1-based) of a nonempty mask.
pub(crate) fn min_element(m: Mask) -> usize {
    m.trailing_zeros() as usize + 1
}

/// Sign of `e_a ^ e_b` relative to `e_{a | b}` for disjoint `a`, `b`:
/// `true` when negative. Counts pairs `x in a, y in b` with `x > y`.
pub(crate) fn merge_is_negative(a: Mask, b: Mask) -> bool {
    let mut inversions = 0u32;
    let mut rest = a;
    while rest != 0 {
        let x = rest.trailing_zeros();
        inversions += (b & ((1u64 << x) - 1)).count_ones();
        rest &= rest - 1;
    }
    inversions % 2 == 1
}

/// All `k`-subsets of `[n]` as masks, in colexicographic order.
pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<Mask> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(0);
        return out;
    }
    let mut m: Mask = full(k);
    let limit = full(n);
    loop {
        out.push(m);
        // Gosper's hack
        let c = m & m.wrapping_neg();
        let r = m + c;
        if r > limit || r == 0 {
            break;
        }
        m = (((r ^ m) >> 2) / c) | r;
        if m > limit {
            break;
        }
    }
    out
}

/// Compares two masks as increasing tuples, lexicographically.
pub(crate) fn lex_cmp(a: Mask, b: Mask) -> std::cmp::Ordering {
    elements(a).cmp(&elements(b))
}
