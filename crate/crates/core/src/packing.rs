//! Exponent vectors packed into a single `u128`.
//!
//! Variable 0 occupies the most significant field, so integer order on keys
//! is lexicographic order on exponent vectors. Keys measured from the lower
//! corner of a box can be added field by field without carries as long as
//! the sum stays inside the box.

pub(crate) struct Packing {
    shifts: Vec<u32>,
    masks: Vec<u128>,
}

impl Packing {
    /// Fields wide enough for the box `[lo, hi]`; `None` above 128 bits.
    pub(crate) fn new(lo: &[i32], hi: &[i32]) -> Option<Packing> {
        let n = lo.len();
        let widths: Vec<u32> = lo
            .iter()
            .zip(hi)
            .map(|(&l, &h)| 64 - ((h as i64 - l as i64) as u64).leading_zeros())
            .collect();
        if widths.iter().sum::<u32>() > 128 {
            return None;
        }
        let mut shifts = vec![0; n];
        let mut acc = 0;
        for v in (0..n).rev() {
            shifts[v] = acc;
            acc += widths[v];
        }
        let masks = widths
            .iter()
            .map(|&w| if w == 0 { 0 } else { (1u128 << w) - 1 })
            .collect();
        Some(Packing { shifts, masks })
    }

    /// Key of `e` measured from `base`.
    pub(crate) fn pack(&self, e: &[i32], base: &[i32]) -> u128 {
        e.iter()
            .zip(base)
            .zip(&self.shifts)
            .fold(0, |k, ((&x, &b), &s)| k | (((x - b) as u128) << s))
    }

    pub(crate) fn field(&self, key: u128, v: usize) -> u128 {
        (key >> self.shifts[v]) & self.masks[v]
    }

    /// Exponent vector of `key` measured from `base`.
    pub(crate) fn unpack(&self, key: u128, base: &[i32]) -> Vec<i32> {
        base.iter()
            .enumerate()
            .map(|(v, &b)| b + self.field(key, v) as i32)
            .collect()
    }
}
