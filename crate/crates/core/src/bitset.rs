//! Word-parallel helpers over adjacency rows stored as `u64` slices.

/// Number of 64-bit words needed for `n` bits.
#[inline]
pub const fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
pub fn get(row: &[u64], i: usize) -> bool {
    row[i >> 6] >> (i & 63) & 1 == 1
}

#[inline]
pub fn set(row: &mut [u64], i: usize) {
    row[i >> 6] |= 1u64 << (i & 63);
}

#[inline]
pub fn count(row: &[u64]) -> usize {
    row.iter().map(|w| w.count_ones() as usize).sum()
}

/// `|a ∩ b|`.
#[inline]
pub fn count_and(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

/// `|a ∩ b ∩ c|`.
#[inline]
pub fn count_and3(a: &[u64], b: &[u64], c: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .zip(c)
        .map(|((x, y), z)| (x & y & z).count_ones() as usize)
        .sum()
}

/// A row with the low `n` bits set.
pub fn full(n: usize) -> Vec<u64> {
    let mut row = vec![u64::MAX; words_for(n)];
    if n % 64 != 0 {
        if let Some(last) = row.last_mut() {
            *last = (1u64 << (n % 64)) - 1;
        }
    }
    row
}

/// Iterates over the indices of set bits in ascending order.
pub fn ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &word)| {
        let mut bits = word;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + t)
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_masks_tail_word() {
        assert_eq!(full(3), vec![0b111]);
        assert_eq!(full(64), vec![u64::MAX]);
        assert_eq!(count(&full(130)), 130);
    }

    #[test]
    fn ones_round_trips_set() {
        let mut row = vec![0u64; 3];
        for i in [0, 5, 63, 64, 129] {
            set(&mut row, i);
        }
        assert_eq!(ones(&row).collect::<Vec<_>>(), vec![0, 5, 63, 64, 129]);
        assert!(get(&row, 63) && !get(&row, 62));
    }
}
