//! Minimal fixed-width bit rows used by pair sets and hypergraph adjacency.

#[inline]
pub fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

#[inline]
pub fn get(words: &[u64], i: usize) -> bool {
    words[i / 64] >> (i % 64) & 1 == 1
}

#[inline]
pub fn set(words: &mut [u64], i: usize) {
    words[i / 64] |= 1 << (i % 64);
}

/// Indices of set bits, ascending.
pub fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut m = word;
        std::iter::from_fn(move || {
            (m != 0).then(|| {
                let b = m.trailing_zeros() as usize;
                m &= m - 1;
                w * 64 + b
            })
        })
    })
}

#[inline]
pub fn and_count(a: &[u64], b: &[u64]) -> u64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as u64)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_ones() {
        let mut w = vec![0u64; words_for(130)];
        for i in [0, 63, 64, 129] {
            set(&mut w, i);
        }
        assert!(get(&w, 63) && get(&w, 129) && !get(&w, 1));
        assert_eq!(ones(&w).collect::<Vec<_>>(), [0, 63, 64, 129]);
        assert_eq!(and_count(&w, &w), 4);
    }
}
