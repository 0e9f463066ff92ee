//! Commutative-algebra engine: exact sparse polynomials, Gröbner bases,
//! ideal quotients and saturation, independent-set scoring, a GTZ-style
//! primary decomposition with a certified primality check, and the
//! determinantal hyperedge ideals built from a symbolic 3×12 matrix.

pub mod decompose;
pub mod error;
pub mod factor;
pub mod field;
pub mod groebner;
pub mod hyperedge;
pub mod ideal;
pub mod indepset;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod ring;

pub use decompose::{
    apply_automorphism, coefficient_orbits, generate_group, gtz_decompose, gtz_decompose_with,
    is_maximal_zero_dim, primality_check, primality_check_at, primality_check_with, stabilizes,
    zero_dim_decompose, GtzOptions, MaximalityCertificate, MaximalityVerdict, PrimalityOptions,
    PrimalityStatus, PrimalityVerdict, PrimalityWitness, PrimaryComponent, Provenance,
    SymmetryAction, ZeroDimDecomposition,
};
pub use error::{AlgebraError, Result};
pub use factor::{factor_in_variable, Certificate, Factor, Factorization, Factorize};
pub use field::{Field, Fp, F32003, Q};
pub use groebner::{
    buchberger, leading_ideal, normal_form, staircase_size, vector_space_dimension, GroebnerBasis,
    QuotientDim,
};
pub use hyperedge::{
    all_maximal_minors_ideal, build_hyperedge_ideal, minor, partition_rule_monomials,
    symmetry_generators, verify_structure, GeneratorStructureReport, Hyperedge, HyperedgeSpec,
    PartitionRule, SymbolicMatrix,
};
pub use ideal::{Ideal, SaturationResult, SaturationStrategy};
pub use indepset::{
    is_independent, krull_dimension, maximal_independent_sets, rank_independent_sets,
    score_and_rank, score_independent_set, IndepSetReport,
};
pub use monomial::Monomial;
pub use order::{monomial_compare, Block, BlockKind, MonomialOrder};
pub use parse::{parse_generator_file, parse_polynomial, write_generator_file, GeneratorFile};
pub use poly::Polynomial;
pub use ring::PolyRing;

/// Polynomials over the rationals.
pub type QPoly = Polynomial<Q>;
/// Polynomials over `Z/32003Z`.
pub type FpPoly = Polynomial<F32003>;
