//! Small helpers for vertex sets stored as `u64` bitmasks.

/// A subset of a vertex universe of at most 64 elements.
pub type Mask = u64;

pub const MAX_BITS: usize = 64;

#[inline]
pub fn full(n: usize) -> Mask {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

/// Indices of the set bits, ascending.
pub fn ones(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// All nonempty submasks of `m`, in decreasing numeric order.
pub fn nonempty_submasks(m: Mask) -> impl Iterator<Item = Mask> {
    let mut sub = m;
    let mut done = m == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = sub;
        if sub == 0 {
            done = true;
            return None;
        }
        sub = (sub - 1) & m;
        if sub == 0 {
            done = true;
        }
        Some(out)
    })
}

/// Order masks by their ascending lists of set bits, compared lexicographically.
pub fn lex_cmp(a: Mask, b: Mask) -> std::cmp::Ordering {
    ones(a).cmp(ones(b))
}
