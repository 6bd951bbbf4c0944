//! Bit-packed GF(2) kernels: one `u64` per row, column j at bit j.
//!
//! Used transparently by `rref` and by the hot enumeration sweeps when
//! p = 2 and the ambient dimension fits in a word. Results are required to
//! be bit-identical to the generic byte path.

pub(crate) fn pack_row(row: &[u8]) -> u64 {
    debug_assert!(row.len() <= 64);
    let mut bits = 0u64;
    for (j, &v) in row.iter().enumerate() {
        if v != 0 {
            bits |= 1 << j;
        }
    }
    bits
}

pub(crate) fn unpack_row(bits: u64, n: usize) -> Vec<u8> {
    (0..n).map(|j| ((bits >> j) & 1) as u8).collect()
}

/// Reduced row echelon form over GF(2). Returns the nonzero rows, pivots
/// strictly increasing; identical to the generic elimination order.
pub(crate) fn rref_packed(mut rows: Vec<u64>) -> Vec<u64> {
    rref_packed_in_place(&mut rows);
    rows
}

/// In-place variant for buffer reuse in the hot sweeps.
pub(crate) fn rref_packed_in_place(rows: &mut Vec<u64>) {
    let mut pivot_row = 0usize;
    for col in 0..64u32 {
        if pivot_row == rows.len() {
            break;
        }
        let mask = 1u64 << col;
        let Some(pr) = (pivot_row..rows.len()).find(|&r| rows[r] & mask != 0) else {
            continue;
        };
        rows.swap(pr, pivot_row);
        let pivot = rows[pivot_row];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && *row & mask != 0 {
                *row ^= pivot;
            }
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
}

/// Incremental echelon span with stack discipline; pushes reduce the new
/// row only, so rollback is a truncate.
#[derive(Debug, Clone, Default)]
pub(crate) struct PackedSpan {
    rows: Vec<(u64, u32)>, // (row, pivot bit)
}

impl PackedSpan {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn reduce(&self, mut v: u64) -> u64 {
        for &(row, piv) in &self.rows {
            if v & (1 << piv) != 0 {
                v ^= row;
            }
        }
        v
    }

    pub(crate) fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    /// Insert if independent; returns whether the rank grew.
    pub(crate) fn insert(&mut self, v: u64) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        self.rows.push((r, r.trailing_zeros()));
        true
    }

    pub(crate) fn truncate(&mut self, rank: usize) {
        self.rows.truncate(rank);
    }
}
