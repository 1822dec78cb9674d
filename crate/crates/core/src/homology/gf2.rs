//! Rank over the field with two elements using packed bit rows.

/// Rank of a 0/1 matrix whose rows list the columns holding a 1.
pub fn rank(ncols: usize, rows: &[Vec<usize>]) -> usize {
    let words = ncols.div_ceil(64);
    // pivots[c] holds a reduced row whose lowest set bit is c.
    let mut pivots: Vec<Option<Vec<u64>>> = vec![None; ncols];
    let mut rank = 0;
    for row in rows {
        let mut bits = vec![0u64; words];
        for &c in row {
            bits[c / 64] ^= 1 << (c % 64);
        }
        while let Some(c) = lowest_set_bit(&bits) {
            match &pivots[c] {
                Some(p) => {
                    for w in c / 64..words {
                        bits[w] ^= p[w];
                    }
                }
                None => {
                    pivots[c] = Some(bits);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn lowest_set_bit(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}
