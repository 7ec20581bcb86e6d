//! Thin switch between rayon and sequential iteration.
//!
//! Every reduction in this crate sums fixed-size chunk partials in index
//! order, so results are bit-identical with and without the `parallel`
//! feature and independent of the thread count.

/// Registers smaller than this many amplitudes are always processed serially.
pub const PAR_THRESHOLD: usize = 1 << 14;

/// Chunk length for deterministic partial sums.
pub const REDUCE_CHUNK: usize = 1 << 12;

/// True when the rayon path is compiled in and has more than one thread.
#[cfg(feature = "parallel")]
pub fn enabled() -> bool {
    rayon::current_num_threads() > 1
}

#[cfg(not(feature = "parallel"))]
pub fn enabled() -> bool {
    false
}

/// Sum `f` over chunks of `data`, adding chunk partials left to right.
pub fn chunked_sum<T, F>(data: &[T], f: F) -> f64
where
    T: Sync,
    F: Fn(&[T]) -> f64 + Sync,
{
    #[cfg(feature = "parallel")]
    {
        if data.len() >= PAR_THRESHOLD && enabled() {
            use rayon::prelude::*;
            let partials: Vec<f64> = data.par_chunks(REDUCE_CHUNK).map(&f).collect();
            return partials.iter().sum();
        }
    }
    data.chunks(REDUCE_CHUNK).map(f).sum()
}
