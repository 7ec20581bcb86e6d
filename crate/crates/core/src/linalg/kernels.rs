//! Strided amplitude-pair kernels.
//!
//! A single-qubit gate on a target with stride `s` acts independently on each
//! pair `(i, i + s)` where bit `s` of `i` is clear. Amplitudes are processed as
//! blocks of `2s`, each split into a low and a high half.

use super::Amplitude;

/// Dispatch to the parallel kernel when enabled and the register is large.
pub fn apply_2x2(amps: &mut [Amplitude], m: &[Amplitude; 4], stride: usize) {
    #[cfg(feature = "parallel")]
    {
        if amps.len() >= crate::par::PAR_THRESHOLD && crate::par::enabled() {
            return parallel::apply_2x2(amps, m, stride);
        }
    }
    sequential::apply_2x2(amps, m, stride)
}

/// Swap `amps[2x]` and `amps[2x + 1]` for every record `x` where `flip(x)`.
/// This is a controlled-NOT onto the last qubit.
pub fn flip_last_where<F>(amps: &mut [Amplitude], flip: F)
where
    F: Fn(usize) -> bool + Sync,
{
    #[cfg(feature = "parallel")]
    {
        if amps.len() >= crate::par::PAR_THRESHOLD && crate::par::enabled() {
            return parallel::flip_last_where(amps, flip);
        }
    }
    sequential::flip_last_where(amps, flip)
}

/// Multiply `amps[x]` by `-1` for every `x` where `flip(x)`.
pub fn negate_where<F>(amps: &mut [Amplitude], flip: F)
where
    F: Fn(usize) -> bool + Sync,
{
    #[cfg(feature = "parallel")]
    {
        if amps.len() >= crate::par::PAR_THRESHOLD && crate::par::enabled() {
            return parallel::negate_where(amps, flip);
        }
    }
    sequential::negate_where(amps, flip)
}

#[inline(always)]
fn mix(m: &[Amplitude; 4], lo: &mut Amplitude, hi: &mut Amplitude) {
    let (a, b) = (*lo, *hi);
    *lo = m[0] * a + m[1] * b;
    *hi = m[2] * a + m[3] * b;
}

pub mod sequential {
    use super::{mix, Amplitude};

    pub fn apply_2x2(amps: &mut [Amplitude], m: &[Amplitude; 4], stride: usize) {
        for block in amps.chunks_exact_mut(2 * stride) {
            let (lo, hi) = block.split_at_mut(stride);
            for (l, h) in lo.iter_mut().zip(hi.iter_mut()) {
                mix(m, l, h);
            }
        }
    }

    pub fn flip_last_where<F: Fn(usize) -> bool>(amps: &mut [Amplitude], flip: F) {
        for (x, pair) in amps.chunks_exact_mut(2).enumerate() {
            if flip(x) {
                pair.swap(0, 1);
            }
        }
    }

    pub fn negate_where<F: Fn(usize) -> bool>(amps: &mut [Amplitude], flip: F) {
        for (x, a) in amps.iter_mut().enumerate() {
            if flip(x) {
                *a = -*a;
            }
        }
    }
}

#[cfg(feature = "parallel")]
pub mod parallel {
    use super::{mix, Amplitude};
    use crate::par::REDUCE_CHUNK;
    use rayon::prelude::*;

    pub fn apply_2x2(amps: &mut [Amplitude], m: &[Amplitude; 4], stride: usize) {
        let block = 2 * stride;
        if block >= REDUCE_CHUNK {
            // Few large blocks: parallelize across the paired halves.
            for chunk in amps.chunks_exact_mut(block) {
                let (lo, hi) = chunk.split_at_mut(stride);
                lo.par_chunks_mut(REDUCE_CHUNK / 2)
                    .zip(hi.par_chunks_mut(REDUCE_CHUNK / 2))
                    .for_each(|(l, h)| {
                        for (a, b) in l.iter_mut().zip(h.iter_mut()) {
                            mix(m, a, b);
                        }
                    });
            }
        } else {
            amps.par_chunks_mut(REDUCE_CHUNK)
                .for_each(|c| super::sequential::apply_2x2(c, m, stride));
        }
    }

    pub fn flip_last_where<F: Fn(usize) -> bool + Sync>(amps: &mut [Amplitude], flip: F) {
        amps.par_chunks_mut(REDUCE_CHUNK)
            .enumerate()
            .for_each(|(c, chunk)| {
                let base = c * REDUCE_CHUNK / 2;
                for (x, pair) in chunk.chunks_exact_mut(2).enumerate() {
                    if flip(base + x) {
                        pair.swap(0, 1);
                    }
                }
            });
    }

    pub fn negate_where<F: Fn(usize) -> bool + Sync>(amps: &mut [Amplitude], flip: F) {
        amps.par_chunks_mut(REDUCE_CHUNK)
            .enumerate()
            .for_each(|(c, chunk)| {
                let base = c * REDUCE_CHUNK;
                for (x, a) in chunk.iter_mut().enumerate() {
                    if flip(base + x) {
                        *a = -*a;
                    }
                }
            });
    }
}
