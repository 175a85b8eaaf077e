//! Application solvers built on the order checkers: consumption-savings
//! comparative statics, a self-protection decision rule, a two-player
//! search-game equilibrium, and Hermite-Hadamard-type bounds.

pub mod game;
pub mod hh;
pub mod protection;
pub mod savings;

pub use game::{compare_game, diamond_equilibrium, Equilibrium, GameComparison, SearchGame};
pub use hh::{hh_bounds_check, uniform_pair_expectation_bridge, HhBounds, UniformBridgeReport};
pub use protection::{self_protection_verdict, ProtectionProblem, ProtectionVerdict, Recommendation};
pub use savings::{compare_savings, solve_savings, SavingsCertificate, SavingsComparison, SavingsProblem};
