//! Free nilpotent groups `F_r / Gamma_{c+1}` through the truncated Magnus
//! embedding: word problem, lower central layers, Lyndon coordinates and
//! induced layer matrices.

mod endo;
mod layers;
mod lyndon;
mod series;
mod word;

pub use endo::EndoSpec;
pub use layers::{
    equals_mod_gamma, induced_layer_matrix, is_automorphism_free_nilpotent, layer_coordinates,
    lcs_degree, reid_free_nilpotent, FreeNilpotentReid, LayerFactor, LcsDegree,
};
pub use lyndon::{
    hirsch_length_free_nilpotent, is_lyndon, lie_bracket, lyndon_words_up_to,
    standard_factorization, witt_rank, Bracket, LyndonBasis,
};
pub use series::{magnus_expand, Monomial, Polynomial, TruncSeries};
pub use word::{rank2, FreeWord, Letter};

/// Default degree cap: enough for the eighth layer in rank 2.
pub const DEFAULT_CAP: usize = 9;
