//! Exact bounds on the number of `r`-edge-colorings that avoid a
//! monochromatic star `S_t`.
//!
//! * [`star`]: the star counts `f(a)` by four independent routes.
//! * [`shearer`]: the entropy upper bound on the growth rate `b_{r,S_t}`.
//! * [`count`]: exact coloring counts of small graphs.
//! * [`biclique`]: profile DP over complete bipartite graphs and lower-bound sweeps.
//! * [`verify`]: a replay of the reference values.

pub mod biclique;
pub mod combin;
pub mod count;
pub mod error;
pub mod graph;
pub mod moves;
pub mod numeric;
pub mod par;
pub mod params;
pub mod shearer;
pub mod star;
pub mod verify;

pub use biclique::{count_biclique, lower_bound_from_count, sweep_lower_bounds};
pub use count::{brute_force_count, count_star_free, Engine};
pub use error::{Error, Result};
pub use graph::{star_turan, DegreeProfile, Graph};
pub use moves::{ab_switch, degree_reduce, degree_step, DegreeMove};
pub use numeric::RealPower;
pub use par::Execution;
pub use params::ForbidParams;
pub use shearer::{upper_bound_b, BoundReport};
pub use star::{f_star, f_star_t3_closed, f_star_t3_profile_sum, f_star_two_colors, FMethod};
pub use verify::{Verifier, VerifyReport};
