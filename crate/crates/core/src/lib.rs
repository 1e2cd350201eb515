//! Exact Schubert calculus on type A Peterson varieties.
//!
//! The crate evaluates restrictions of Peterson Schubert classes to the
//! circle-fixed points, both through Billey's subword formula and through
//! factored closed forms, and computes the equivariant and ordinary
//! Chevalley-Monk structure constants of the basis `{p_{v_A}}`.

pub mod billey;
pub mod classes;
pub mod error;
pub mod monk;
pub mod permutation;
pub mod poly;
pub mod subset;
pub mod verify;

pub use billey::{
    p_restriction, projected_restriction, root_factor, sigma_restriction, subword_embeddings,
    BilleyWord, RootFactor,
};
pub use classes::{
    diagonal_value, disjoint_product_check, minimality_check, pi_at, preimage_classes,
    restriction_closed_form, single_string_restriction, subword_count_closed_form, ClassLabel,
    Evaluation, PetersonClass,
};
pub use error::{Error, Result};
pub use monk::{
    monk_expand, monk_expand_with, ordinary_monk_expand, presentation, presentation_with,
    product_in_basis, product_in_basis_with, structure_constant, verify_monk, BasisExpansion,
    BasisTables, MonkExpansion, MonkReport, Relation,
};
pub use permutation::{Permutation, Word};
pub use poly::{divides, Monomial, RootPolynomial, TPolynomial};
pub use subset::{ConsecutiveString, IndexSubset};
