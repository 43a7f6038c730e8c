//! Exhaustive enumeration of tuples, maps and operation tables over small
//! carriers, plus the row-major indexing scheme shared by all tables.

/// Row-major index of `args` within a table over a carrier of size `n`.
///
/// The empty tuple indexes the single entry of a nullary table.
pub fn tuple_index(n: usize, args: &[usize]) -> usize {
    let mut idx = 0;
    for &a in args {
        debug_assert!(a < n);
        idx = idx * n + a;
    }
    idx
}

/// Inverse of [`tuple_index`]: the `k`-tuple at row-major position `idx`.
pub fn index_tuple(n: usize, k: usize, idx: usize) -> Vec<usize> {
    let mut args = vec![0; k];
    let mut rest = idx;
    for j in (0..k).rev() {
        args[j] = rest % n;
        rest /= n;
    }
    debug_assert_eq!(rest, 0);
    args
}

/// Number of entries of a `k`-ary table over a carrier of size `n`, i.e. `n^k`.
///
/// `n^0 = 1` even for the empty carrier: a nullary table always has one slot.
pub fn table_len(n: usize, k: usize) -> usize {
    n.pow(k as u32)
}

/// All `k`-tuples over `0..n` in row-major (lexicographic) order.
pub fn tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = if n == 0 && k > 0 { 0 } else { table_len(n, k) };
    (0..total).map(move |idx| index_tuple(n, k, idx))
}

/// All total maps `0..dom -> 0..cod`, as vectors of length `dom`, in
/// lexicographic order. For an empty domain the single empty map is yielded.
pub fn all_maps(dom: usize, cod: usize) -> impl Iterator<Item = Vec<usize>> {
    tuples(cod, dom)
}

/// Number of total maps `0..dom -> 0..cod` as a checked `u64`, or `None` on
/// overflow. Used to guard exhaustive searches.
pub fn map_count(dom: usize, cod: usize) -> Option<u64> {
    if dom == 0 {
        return Some(1);
    }
    if cod == 0 {
        return Some(0);
    }
    (cod as u64).checked_pow(u32::try_from(dom).ok()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_index_round_trip() {
        for k in 0..4 {
            for (pos, t) in tuples(3, k).enumerate() {
                assert_eq!(tuple_index(3, &t), pos);
                assert_eq!(index_tuple(3, k, pos), t);
            }
        }
    }

    #[test]
    fn tuple_counts() {
        assert_eq!(tuples(2, 3).count(), 8);
        assert_eq!(tuples(0, 2).count(), 0);
        assert_eq!(tuples(0, 0).count(), 1);
        assert_eq!(tuples(4, 0).count(), 1);
    }

    #[test]
    fn map_counts() {
        assert_eq!(all_maps(2, 3).count(), 9);
        assert_eq!(all_maps(0, 0).count(), 1);
        assert_eq!(all_maps(2, 0).count(), 0);
        assert_eq!(map_count(6, 6), Some(46656));
        assert_eq!(map_count(0, 0), Some(1));
    }
}
