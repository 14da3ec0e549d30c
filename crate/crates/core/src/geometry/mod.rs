//! Exact polyhedral machinery: simplex LP, double description, normal fan,
//! facet extraction, membership and linear minimization.

pub mod cone;
pub mod export;
pub mod fan;
pub mod hrep;
pub mod lp;
pub mod minkowski;
pub mod polytope;

pub use cone::{extreme_rays, Cone, Ray};
pub use fan::{facet_inequalities, fundamental_normal_cones};
pub use hrep::{remove_redundant, HRep, LinearConstraint};
pub use lp::{lp_solve, LinearProgram, LpSolution, LpStatus, Relation, Sense};
pub use polytope::{
    build_polytope, contraction_check, contraction_check_in, density_domain_check,
    distinct_permutations, member_hrep, member_majorization, minimize_linear, Membership,
    MixtureWitness, Polytope,
};
