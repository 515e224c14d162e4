use alloc::vec;

use super::Prox;
use crate::error::Result;
use crate::signal::Signal;

/// `Σ_{(i,j,w)} w |x_i − x_j|`
pub fn tv_value(x: &[f64], edges: &[(usize, usize, f64)]) -> f64 {
    edges.iter().map(|&(i, j, w)| w * (x[i] - x[j]).abs()).sum()
}

/// Exact `argmin_y ½‖y − x‖² + λ Σ|y_{i+1} − y_i|` by Condat's direct
/// (taut-string) algorithm.
pub fn tv1d_prox(x: &[f64], lambda: f64) -> Signal {
    let mut out = vec![0.0; x.len()];
    condat(x, lambda, &mut out);
    Signal::from(out)
}

fn condat(input: &[f64], lambda: f64, output: &mut [f64]) {
    let width = input.len();
    if width == 0 {
        return;
    }
    if width == 1 || lambda == 0.0 {
        output.copy_from_slice(input);
        return;
    }
    let (mut k, mut k0, mut kplus, mut kminus) = (0usize, 0usize, 0usize, 0usize);
    let mut vmin = input[0] - lambda;
    let mut vmax = input[0] + lambda;
    let mut umin = lambda;
    let mut umax = -lambda;
    loop {
        while k == width - 1 {
            if umin < 0.0 {
                // Segment value too high: close it with a downward jump.
                loop {
                    output[k0] = vmin;
                    k0 += 1;
                    if k0 > kminus {
                        break;
                    }
                }
                k = k0;
                kminus = k0;
                vmin = input[k];
                umin = lambda;
                umax = vmin + umin - vmax;
            } else if umax > 0.0 {
                loop {
                    output[k0] = vmax;
                    k0 += 1;
                    if k0 > kplus {
                        break;
                    }
                }
                k = k0;
                kplus = k0;
                vmax = input[k];
                umax = -lambda;
                umin = vmax + umax - vmin;
            } else {
                vmin += umin / (k - k0 + 1) as f64;
                output[k0..=k].fill(vmin);
                return;
            }
        }
        umin += input[k + 1] - vmin;
        if umin < -lambda {
            loop {
                output[k0] = vmin;
                k0 += 1;
                if k0 > kminus {
                    break;
                }
            }
            k = k0;
            kminus = k0;
            kplus = k0;
            vmin = input[k];
            vmax = vmin + 2.0 * lambda;
            umin = lambda;
            umax = -lambda;
            continue;
        }
        umax += input[k + 1] - vmax;
        if umax > lambda {
            loop {
                output[k0] = vmax;
                k0 += 1;
                if k0 > kplus {
                    break;
                }
            }
            k = k0;
            kminus = k0;
            kplus = k0;
            vmax = input[k];
            vmin = vmax - 2.0 * lambda;
            umin = lambda;
            umax = -lambda;
        } else {
            k += 1;
            if umin >= lambda {
                kminus = k;
                vmin += (umin - lambda) / (kminus - k0 + 1) as f64;
                umin = lambda;
            }
            if umax <= -lambda {
                kplus = k;
                vmax += (umax + lambda) / (kplus - k0 + 1) as f64;
                umax = -lambda;
            }
        }
    }
}

/// `λ Σ|x_{i+1} − x_i|` on a path.
#[derive(Debug, Clone, Copy)]
pub struct Tv1d {
    pub lambda: f64,
}

impl Prox for Tv1d {
    fn penalty(&self, x: &[f64]) -> f64 {
        self.lambda * x.windows(2).map(|w| (w[1] - w[0]).abs()).sum::<f64>()
    }

    fn prox(&self, x: &[f64], step: f64, out: &mut [f64]) -> Result<()> {
        condat(x, step * self.lambda, out);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_closed_form() {
        assert_eq!(tv1d_prox(&[2.0, 0.0], 0.5).as_slice(), &[1.5, 0.5]);
        assert_eq!(tv1d_prox(&[2.0, 0.0], 2.0).as_slice(), &[1.0, 1.0]);
    }

    #[test]
    fn constant_is_fixed() {
        for v in tv1d_prox(&[0.7; 5], 3.0).iter() {
            assert!((v - 0.7).abs() < 1e-15);
        }
    }

    #[test]
    fn large_lambda_gives_mean() {
        let x = [1.0, 4.0, -2.0, 5.0];
        let y = tv1d_prox(&x, 100.0);
        for v in y.iter() {
            assert!((v - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn tv_value_weighted() {
        assert_eq!(tv_value(&[1.0, 0.0, 2.0], &[(0, 1, 1.0), (1, 2, 0.5)]), 2.0);
    }
}
