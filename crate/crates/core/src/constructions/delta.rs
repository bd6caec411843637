use crate::error::{Error, Result};

/// One plus the position of the most significant binary digit in which
/// `a - 1` and `b - 1` differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeltaIndex(pub u32);

impl DeltaIndex {
    pub fn value(self) -> u32 {
        self.0
    }
}

/// `delta(a, b)` for `a, b` in `1..=2^bits`.
pub fn delta_index(a: u64, b: u64, bits: u32) -> Result<DeltaIndex> {
    if a == b {
        return Err(Error::Argument(format!("delta({a}, {a}) is undefined")));
    }
    if bits == 0 || bits > 63 {
        return Err(Error::Argument(format!("bit width {bits} out of range")));
    }
    let top = 1u64 << bits;
    if a == 0 || b == 0 || a > top || b > top {
        return Err(Error::Argument(format!("arguments must lie in 1..={top}")));
    }
    let x = (a - 1) ^ (b - 1);
    Ok(DeltaIndex(64 - x.leading_zeros()))
}

/// A failure of the two structural properties of `delta` on `1..=2^bits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeltaViolation {
    /// `delta(a, b) == delta(b, c)` for `a < b < c`.
    Equal([u64; 3]),
    /// `delta(a, c) != max(delta(a, b), delta(b, c))` for `a < b < c`.
    NotMax([u64; 3]),
}

/// Checks both properties on every triple `a < b < c` in `1..=2^bits`. The
/// max property on triples implies it for every increasing chain.
pub fn check_delta_properties(bits: u32) -> Result<Option<DeltaViolation>> {
    if bits == 0 || bits > 10 {
        return Err(Error::Resource(format!(
            "exhaustive triple check supports 1..=10 bits, got {bits}"
        )));
    }
    let top = 1u64 << bits;
    for a in 1..=top {
        for b in a + 1..=top {
            let ab = delta_index(a, b, bits)?;
            for c in b + 1..=top {
                let bc = delta_index(b, c, bits)?;
                if ab == bc {
                    return Ok(Some(DeltaViolation::Equal([a, b, c])));
                }
                if delta_index(a, c, bits)? != ab.max(bc) {
                    return Ok(Some(DeltaViolation::NotMax([a, b, c])));
                }
            }
        }
    }
    Ok(None)
}

/// Zero-based variant used on point indices: digits of `i` and `j` directly.
pub(crate) fn delta_zero_based(i: usize, j: usize) -> u32 {
    debug_assert_ne!(i, j);
    usize::BITS - (i ^ j).leading_zeros()
}
