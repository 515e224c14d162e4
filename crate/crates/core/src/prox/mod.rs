//! Proximal operators for structured convex penalties.

mod exclusive;
mod hierarchical;
mod l1;
mod latent;
mod tv;

pub use exclusive::{exclusive_norm, prox_sq_l1, sliding_windows, LatentExclusive};
pub use hierarchical::{hgl_prox, hgl_prox_groups, HierarchicalGroupLasso};
pub use l1::{block_soft_threshold, soft_threshold, GroupLasso, L1};
pub use latent::{build_latent, latent_group_prox, DuplicationMap, LatentGroupLasso, LatentKind};
pub use tv::{tv1d_prox, tv_value, Tv1d};

use crate::error::Result;

/// A penalty `g` together with its proximal map.
pub trait Prox {
    /// Value of the penalty, including its regularization weight.
    fn penalty(&self, x: &[f64]) -> f64;

    /// Writes `argmin_y ½‖y − x‖² + step · g(y)` into `out`.
    fn prox(&self, x: &[f64], step: f64, out: &mut [f64]) -> Result<()>;
}
