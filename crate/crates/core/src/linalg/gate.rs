use rand::Rng;
use rand_distr::StandardNormal;
use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use super::{Amplitude, EXACT_TOL};
use crate::{Error, Result};

/// A 2×2 unitary, stored row-major as `[m00, m01, m10, m11]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gate2 {
    entries: [Amplitude; 4],
}

impl Gate2 {
    /// Checked constructor: rejects matrices with `|G†G - I| > 1e-12` in any entry.
    pub fn new(entries: [Amplitude; 4]) -> Result<Self> {
        let gate = Self { entries };
        gate.check_unitary()?;
        Ok(gate)
    }

    /// Build without the unitarity check. Application still validates.
    pub fn new_unchecked(entries: [Amplitude; 4]) -> Self {
        Self { entries }
    }

    pub fn hadamard() -> Self {
        let h = Amplitude::new(FRAC_1_SQRT_2, 0.0);
        Self {
            entries: [h, h, h, -h],
        }
    }

    pub fn pauli_x() -> Self {
        let (o, l) = (Amplitude::new(0.0, 0.0), Amplitude::new(1.0, 0.0));
        Self {
            entries: [o, l, l, o],
        }
    }

    pub fn identity() -> Self {
        let (o, l) = (Amplitude::new(0.0, 0.0), Amplitude::new(1.0, 0.0));
        Self {
            entries: [l, o, o, l],
        }
    }

    /// Haar-distributed random unitary.
    pub fn haar_random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut v = [0.0f64; 4];
        loop {
            for x in &mut v {
                *x = rng.sample(StandardNormal);
            }
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 1e-6 {
                v.iter_mut().for_each(|x| *x /= n);
                break;
            }
        }
        let a = Amplitude::new(v[0], v[1]);
        let b = Amplitude::new(v[2], v[3]);
        let phase = Amplitude::from_polar(1.0, rng.random::<f64>() * TAU);
        Self {
            entries: [a, b, -phase * b.conj(), phase * a.conj()],
        }
    }

    pub fn entries(&self) -> &[Amplitude; 4] {
        &self.entries
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let [a, b, c, d] = self.entries;
        Self {
            entries: [a.conj(), c.conj(), b.conj(), d.conj()],
        }
    }

    /// Largest entry of `|G†G - I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let [a, b, c, d] = self.entries;
        let d00 = a.norm_sqr() + c.norm_sqr() - 1.0;
        let d11 = b.norm_sqr() + d.norm_sqr() - 1.0;
        let d01 = (a.conj() * b + c.conj() * d).norm();
        d00.abs().max(d11.abs()).max(d01)
    }

    pub fn check_unitary(&self) -> Result<()> {
        let deviation = self.unitarity_deviation();
        if deviation > EXACT_TOL || !deviation.is_finite() {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(())
    }
}
