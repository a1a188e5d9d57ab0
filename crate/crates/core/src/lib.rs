pub mod certify;
pub mod error;
pub mod garside;
pub mod laurent;
pub mod lk;
pub mod perm;
pub mod random;
pub mod rewrite;
pub mod slp;
pub mod suite;
pub mod word;

pub use error::{BraidError, Result};
pub use garside::{equal, is_identity, normal_form, CanonicalFactor, NormalForm};
pub use laurent::LaurentPoly2;
pub use lk::{equal_via_lk, lk_generator, lk_matrix, LkMatrix, LkOracle};
pub use perm::Permutation;
pub use word::{alpha_power, conjugate, shift_conjugate, sigma, sigma_pow, BraidWord, Letter, Sign};
