use alloc::vec::Vec;

use super::minnorm::{min_norm_point, MinNormOptions, ShiftedScaled};
use super::{lovasz_extension, SetFunction};
use crate::error::{invalid, Error, Result};
use crate::prox::Prox;
use crate::signal::Signal;

const PROX_OPTIONS: MinNormOptions = MinNormOptions {
    max_iters: 20_000,
    tol: 1e-14,
    sfm_tol: None,
};

/// `argmin_y ½‖y − x‖² + λ r(y)` for the Lovász extension `r`, computed as
/// `x − Π_{λB(R)}(x)` with the min-norm-point algorithm.
pub fn prox_lovasz_extension(r: &SetFunction, x: &[f64], lambda: f64) -> Result<Vec<f64>> {
    check(r, x, lambda)?;
    if lambda == 0.0 {
        return Ok(x.to_vec());
    }
    let shifted = ShiftedScaled {
        r,
        scale: lambda,
        shift: x,
    };
    let out = min_norm_point(&shifted, &PROX_OPTIONS);
    if !out.converged {
        return Err(Error::NotConverged {
            iterations: out.iterations,
            gap: f64::NAN,
            best: out.point.iter().map(|v| -v).collect(),
        });
    }
    Ok(out.point.iter().map(|v| -v).collect())
}

/// Prox of the norm `r(|x|)` for non-decreasing `R`: the extension prox on
/// `|x|`, clamped at zero, with signs restored.
pub fn prox_lovasz_norm(r: &SetFunction, x: &[f64], lambda: f64) -> Result<Vec<f64>> {
    let abs: Vec<f64> = x.iter().map(|v| v.abs()).collect();
    let y = prox_lovasz_extension(r, &abs, lambda)?;
    Ok(y.iter()
        .zip(x)
        .map(|(&yi, &xi)| {
            if lambda == 0.0 {
                xi
            } else {
                yi.max(0.0).copysign(xi)
            }
        })
        .collect())
}

/// Norm prox when `R` is structurally non-decreasing, extension prox
/// otherwise. Symmetric functions such as cuts only get the extension prox.
pub fn prox_lovasz(r: &SetFunction, x: &[f64], lambda: f64) -> Result<Signal> {
    let y = if r.is_known_nondecreasing() {
        prox_lovasz_norm(r, x, lambda)?
    } else {
        prox_lovasz_extension(r, x, lambda)?
    };
    Ok(Signal::from(y))
}

fn check(r: &SetFunction, x: &[f64], lambda: f64) -> Result<()> {
    if x.len() != r.n() {
        return Err(invalid("signal length differs from the ground set"));
    }
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(invalid("lambda must be finite and non-negative"));
    }
    Ok(())
}

/// `λ r(x)` (or `λ r(|x|)` in norm mode) as a proximable penalty.
#[derive(Debug, Clone)]
pub struct LovaszProx {
    pub r: SetFunction,
    pub lambda: f64,
    pub norm: bool,
}

impl Prox for LovaszProx {
    fn penalty(&self, x: &[f64]) -> f64 {
        if self.norm {
            let abs: Vec<f64> = x.iter().map(|v| v.abs()).collect();
            self.lambda * lovasz_extension(&self.r, &abs)
        } else {
            self.lambda * lovasz_extension(&self.r, x)
        }
    }

    fn prox(&self, x: &[f64], step: f64, out: &mut [f64]) -> Result<()> {
        let y = if self.norm {
            prox_lovasz_norm(&self.r, x, step * self.lambda)?
        } else {
            prox_lovasz_extension(&self.r, x, step * self.lambda)?
        };
        out.copy_from_slice(&y);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::submodular::CutFunction;

    #[test]
    fn cardinality_gives_soft_threshold() {
        let y = prox_lovasz(&SetFunction::cardinality(2), &[2.0, -0.5], 1.0).unwrap();
        assert!((y[0] - 1.0).abs() < 1e-12 && y[1] == 0.0);
    }

    #[test]
    fn two_node_chain() {
        // TV prox of [2, 0] with λ = 0.5 fuses toward each other by 0.5.
        let r = SetFunction::cut(CutFunction::chain(2, 1.0).unwrap());
        let y = prox_lovasz_extension(&r, &[2.0, 0.0], 0.5).unwrap();
        assert!((y[0] - 1.5).abs() < 1e-12 && (y[1] - 0.5).abs() < 1e-12);
        let y = prox_lovasz_extension(&r, &[2.0, 0.0], 5.0).unwrap();
        assert!((y[0] - 1.0).abs() < 1e-12 && (y[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_lambda_is_identity() {
        let r = SetFunction::cut(CutFunction::chain(3, 1.0).unwrap());
        let x = [0.3, -1.25, 7.0];
        assert_eq!(prox_lovasz(&r, &x, 0.0).unwrap().as_slice(), &x);
    }
}
