//! Exact combinatorial invariants of three-dimensional affine normal
//! quasihomogeneous SL(2)-varieties: continued-fraction resolution data,
//! colored fans with orbit posets, weight-lattice enumeration, equivariant
//! ideal families with rewriting-based dimension counts, and tensor
//! coupling vectors — all over arbitrary-precision integers, with
//! brute-force oracles wired into a verification suite.

pub mod cg;
pub mod error;
pub mod exact;
pub mod fan;
pub mod ideal;
pub mod lattice;
pub mod pair;
pub mod pipeline;
pub mod report;
pub mod verify;

pub use cg::{cg_vector, lowering_action, TensorVector};
pub use error::Error;
pub use exact::{gcd, hj_expand, int, rem, HjExpansion, Int};
pub use fan::{
    base_rays, check_global_generation, embedding_fans, orbit_poset, resolution_fan,
    valuation_pairing, BaseRays, Color, ColoredCone, ColoredFan, EigenMonomial, GlobalGeneration,
    LatticeVector, OrbitPoset,
};
pub use ideal::{
    borel_fixed_points, build_ideal, complete_rewrite_system, normal_form, structural_membership,
    tangent_dimension, weight_space_dim, weight_space_dim_auto, Family, Gen3, Gen5, IdealSpec,
    Monomial5, ReducedRing, RewriteSystem, DEFAULT_COMPLETION_BUDGET,
};
pub use lattice::{
    big_f, c_min, check_generation, f_lambda, lambda_c, mu, omega_max, omega_min, theta,
    GenerationCheck, LambdaLabel, Monomial3, WeightLabel,
};
pub use pair::{
    derive_invariants, eln_sequences, is_toric, semigroup_generators, validate_pair,
    DerivedInvariants, PopovPair, SemigroupGenerators, SequenceTable,
};
pub use pipeline::Pipeline;
pub use report::{analyze, analyze_with_budget, AnalysisReport};
pub use verify::{
    sweep, sweep_pairs, verify_pair, Check, CheckStatus, Mutation, SweepFilter, SweepReport,
    VerifyOptions, VerifyReport,
};
