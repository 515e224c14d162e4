//! Orthonormal multi-level 2-D Haar transform on `p × p` images (row-major),
//! Mallat layout: after the full decomposition the single scaling
//! coefficient sits at index 0 and detail bands are nested towards the
//! bottom-right.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use crate::error::{invalid, Result};

pub(crate) fn check_side(p: usize) -> Result<()> {
    if p < 2 || !p.is_power_of_two() {
        return Err(invalid(alloc::format!(
            "Haar side must be a power of two >= 2, got {p}"
        )));
    }
    Ok(())
}

fn analyze_line(buf: &mut [f64], scratch: &mut [f64]) {
    let half = buf.len() / 2;
    for j in 0..half {
        let (a, b) = (buf[2 * j], buf[2 * j + 1]);
        scratch[j] = (a + b) * FRAC_1_SQRT_2;
        scratch[half + j] = (a - b) * FRAC_1_SQRT_2;
    }
    buf.copy_from_slice(&scratch[..buf.len()]);
}

fn synthesize_line(buf: &mut [f64], scratch: &mut [f64]) {
    let half = buf.len() / 2;
    for j in 0..half {
        let (s, d) = (buf[j], buf[half + j]);
        scratch[2 * j] = (s + d) * FRAC_1_SQRT_2;
        scratch[2 * j + 1] = (s - d) * FRAC_1_SQRT_2;
    }
    buf.copy_from_slice(&scratch[..buf.len()]);
}

/// Image → wavelet coefficients, `log2(p)` levels.
pub fn forward(image: &[f64], p: usize, out: &mut [f64]) {
    debug_assert_eq!(image.len(), p * p);
    out.copy_from_slice(image);
    let mut line = vec![0.0; p];
    let mut scratch = vec![0.0; p];
    let mut s = p;
    while s >= 2 {
        for r in 0..s {
            analyze_line(&mut out[r * p..r * p + s], &mut scratch);
        }
        for c in 0..s {
            for r in 0..s {
                line[r] = out[r * p + c];
            }
            analyze_line(&mut line[..s], &mut scratch);
            for r in 0..s {
                out[r * p + c] = line[r];
            }
        }
        s /= 2;
    }
}

/// Wavelet coefficients → image; exact inverse (and adjoint) of [`forward`].
pub fn inverse(coeffs: &[f64], p: usize, out: &mut [f64]) {
    debug_assert_eq!(coeffs.len(), p * p);
    out.copy_from_slice(coeffs);
    let mut line = vec![0.0; p];
    let mut scratch = vec![0.0; p];
    let mut s = 2;
    while s <= p {
        for c in 0..s {
            for r in 0..s {
                line[r] = out[r * p + c];
            }
            synthesize_line(&mut line[..s], &mut scratch);
            for r in 0..s {
                out[r * p + c] = line[r];
            }
        }
        for r in 0..s {
            synthesize_line(&mut out[r * p..r * p + s], &mut scratch);
        }
        s *= 2;
    }
}

/// Parent links of the wavelet quad-tree over the Mallat layout: the scaling
/// coefficient is the root, the three coarsest detail coefficients are its
/// children, and every other detail coefficient `(r, c)` has parent
/// `(r/2, c/2)`.
pub fn quadtree_parents(p: usize) -> Result<Vec<Option<usize>>> {
    check_side(p)?;
    let mut parents = vec![None; p * p];
    for r in 0..p {
        for c in 0..p {
            if r == 0 && c == 0 {
                continue;
            }
            parents[r * p + c] = Some(if r < 2 && c < 2 {
                0
            } else {
                (r / 2) * p + c / 2
            });
        }
    }
    Ok(parents)
}
