//! Binomials and subset enumeration.

use num_bigint::BigUint;

use crate::bitset::BitSet;

/// `C(a, b)`, zero when `b > a`.
pub fn binomial(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::from(0u8);
    }
    let b = b.min(a - b);
    let mut acc = BigUint::from(1u8);
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// `C(a, b)` in machine arithmetic, zero when `b > a`. Panics on overflow,
/// which cannot happen for `a <= 63`.
pub fn binomial_u64(a: u64, b: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc * (a - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflows u64")
}

/// All `k`-subsets of `base` in colexicographic order.
pub fn k_subsets(base: BitSet, k: usize) -> KSubsets {
    let elems = base.to_vec();
    let len = elems.len();
    let state = if k > len {
        None
    } else if k == 0 {
        Some(0)
    } else {
        Some((1u64 << k) - 1)
    };
    KSubsets { elems, len, state }
}

pub struct KSubsets {
    elems: Vec<usize>,
    len: usize,
    // bitmask over indices into `elems`
    state: Option<u64>,
}

impl Iterator for KSubsets {
    type Item = BitSet;

    fn next(&mut self) -> Option<BitSet> {
        let cur = self.state?;
        let out = BitSet::from_iter(BitSet::from_bits(cur).iter().map(|i| self.elems[i]));
        // Gosper's hack: next integer with the same popcount.
        self.state = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let next = (((r ^ cur) >> 2) / c) | r;
            (next >> self.len == 0 && r != 0).then_some(next)
        };
        Some(out)
    }
}
