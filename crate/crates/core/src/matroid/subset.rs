//! Bitmask subsets of a ground set `{0, …, n-1}`.

/// Subset of the ground set, bit `i` set iff element `i` is a member.
pub type Subset = u32;

/// Largest supported ground set.
pub const MAX_GROUND_SET: usize = 24;

pub fn full(n: usize) -> Subset {
    debug_assert!(n <= MAX_GROUND_SET);
    if n == 0 {
        0
    } else {
        (1u32 << n) - 1
    }
}

pub fn size(s: Subset) -> usize {
    s.count_ones() as usize
}

pub fn contains(s: Subset, x: usize) -> bool {
    s >> x & 1 == 1
}

pub fn is_subset(a: Subset, b: Subset) -> bool {
    a & !b == 0
}

pub fn from_elements(elems: impl IntoIterator<Item = usize>) -> Subset {
    elems.into_iter().fold(0, |acc, x| acc | 1 << x)
}

pub fn min_element(s: Subset) -> Option<usize> {
    (s != 0).then(|| s.trailing_zeros() as usize)
}

/// Members in increasing order.
pub fn elements(s: Subset) -> impl Iterator<Item = usize> {
    let mut rest = s;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(x)
        }
    })
}

/// All subsets of `universe` (including the empty set and `universe` itself), in
/// increasing numeric order.
pub fn subsets_of(universe: Subset) -> impl Iterator<Item = Subset> {
    // standard submask walk, reversed into ascending order
    let mut sub: Option<Subset> = Some(0);
    std::iter::from_fn(move || {
        let cur = sub?;
        sub = if cur == universe {
            None
        } else {
            Some((cur | !universe).wrapping_add(1) & universe)
        };
        Some(cur)
    })
}

/// All `k`-element subsets of `universe`, in increasing numeric order.
pub fn k_subsets(universe: Subset, k: usize) -> Vec<Subset> {
    let elems: Vec<usize> = elements(universe).collect();
    let m = elems.len();
    if k > m {
        return Vec::new();
    }
    let mut out = Vec::new();
    // Gosper's hack over positions, then scatter into the universe
    if k == 0 {
        return vec![0];
    }
    let mut c: u64 = (1u64 << k) - 1;
    let limit = 1u64 << m;
    while c < limit {
        let mut s = 0;
        let mut bits = c;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            s |= 1 << elems[i];
            bits &= bits - 1;
        }
        out.push(s);
        let low = c & c.wrapping_neg();
        let ripple = c + low;
        c = (((ripple ^ c) >> 2) / low) | ripple;
    }
    out.sort_unstable();
    out
}

/// Formats a subset as `{a,b,c}`.
pub fn format(s: Subset) -> String {
    let parts: Vec<String> = elements(s).map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Inverse of [`format`]; also accepts a bare comma-separated list.
pub fn parse(text: &str) -> Option<Subset> {
    let t = text.trim();
    let t = t
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .unwrap_or(t);
    let mut s: Subset = 0;
    for part in t.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let x: usize = part.parse().ok()?;
        if x >= MAX_GROUND_SET || contains(s, x) {
            return None;
        }
        s |= 1 << x;
    }
    Some(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_inverts_format() {
        for s in [0, 0b1, 0b101001, full(24)] {
            assert_eq!(parse(&format(s)), Some(s));
        }
        assert_eq!(parse("2, 0"), Some(0b101));
        assert_eq!(parse("{1,1}"), None);
        assert_eq!(parse("{x}"), None);
        assert_eq!(parse("{24}"), None);
    }

    #[test]
    fn k_subsets_count_and_order() {
        let all = k_subsets(full(5), 2);
        assert_eq!(all.len(), 10);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|&s| size(s) == 2));
        assert_eq!(k_subsets(0b1010, 1), vec![0b0010, 0b1000]);
        assert_eq!(k_subsets(full(3), 0), vec![0]);
        assert!(k_subsets(full(2), 3).is_empty());
    }

    #[test]
    fn submask_walk_is_complete() {
        let u = 0b10110;
        let subs: Vec<_> = subsets_of(u).collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|&s| is_subset(s, u)));
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(subsets_of(0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn element_roundtrip() {
        let s = from_elements([0, 3, 5]);
        assert_eq!(elements(s).collect::<Vec<_>>(), vec![0, 3, 5]);
        assert_eq!(format(s), "{0,3,5}");
        assert_eq!(format(0), "{}");
    }
}
