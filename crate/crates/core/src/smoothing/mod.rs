//! Noisy code distributions `T_r f_C` and how close they are to uniform:
//! Rényi divergences and `L_α` norms, closed-form `L_2` identities, the
//! rate lower bound, smoothing capacities and perfect-smoothing kernels.

mod capacity;
mod converse;
mod divergence;
mod l2;
mod noisy;
mod perfect;

pub use capacity::{
    capacity, capacity_curve, lower_bound, lower_bound_report, pi_rate, CapacityRow, NoiseFamily,
};
pub use converse::ball_code_divergence;
pub use divergence::{divergence_to_uniform, SmoothnessReport};
pub use l2::{l2_ball_forms, l2_closed_form, l2_dual_form, self_convolution};
pub use noisy::{kernel_spectrum_f64, smooth, smooth_exact, smooth_float, ExactFunction, MAX_FLOAT_N};
pub use perfect::{perfect_kernel_search, PackedFamily, PerfectKernel};
