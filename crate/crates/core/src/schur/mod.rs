//! The Ringel datum of a matroid and everything computed from it: axioms, characters,
//! decomposition numbers, determinants, the Jantzen sum and dimension identities.

mod algebra;
mod axioms;
mod characters;
mod datum;
mod det;
mod krs;
mod report;

use thiserror::Error;

use crate::exterior::ExteriorError;
use crate::matroid::subset::{self, Subset};
use crate::matroid::{k4, Matroid, MatroidError};
use crate::xalg::XalgError;

pub use algebra::{
    algebra_dims, operator_model, AlgebraDims, OperatorModel, PairDim, DEFAULT_DIMENSION_CAP,
};
pub use axioms::check_axioms;
pub use characters::{
    bad_primes, cell_simple_character, cell_standard_character, decomposition_matrix,
    jantzen_check, jantzen_rhs, semisimple_test, simple_character, standard_character,
    tilting_character_check, tilting_filtration_check, BadPrimes, Character, DecompEntry,
    DecompMatrix, FormalSum, JantzenCheck, TiltingVerdict,
};
pub use datum::{build_datum, Piece, RingelDatum};
pub use det::{
    bv_predicted, compare_determinant, gram_det_u, DetComparison, DetFactor, DetFactorization,
};
pub use krs::{krs_checks, tutte_convolution};
pub use report::{CharacterRow, CharacterTable, Report};

pub use crate::exterior::identities::IdentityReport;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SchurError {
    #[error("weight {weight} of element {element} is not a unit mod {p}")]
    WeightNotUnit { p: u64, element: usize, weight: i64 },
    #[error("expected {expected} weights, found {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("{} is not a cyclic flat", subset::format(*.0))]
    FlatNotInPoset(Subset),
    #[error("decomposition system has no nonnegative solution at ({}, {})", subset::format(*.lower), subset::format(*.upper))]
    InconsistentSystem { lower: Subset, upper: Subset },
    #[error("weights on {} ∖ {} sum to zero", subset::format(*.upper), subset::format(*.lower))]
    ZeroWeightSum { lower: Subset, upper: Subset },
    #[error("dimension {dim} exceeds the cap {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Xalg(#[from] XalgError),
}

/// A named matroid for fixtures and self tests.
#[derive(Clone, Debug)]
pub struct NamedMatroid {
    pub name: String,
    pub matroid: Matroid,
}

/// `M_n = U_{1,n}` for `2 ≤ n ≤ 8`, `U_{2,n}` for `4 ≤ n ≤ 6`, `K_4`, and their duals
/// (`U_{2,3}` is the dual of `M_3`). All are connected and coloop-free.
pub fn library() -> Vec<NamedMatroid> {
    let mut primal = Vec::new();
    for n in 2..=8 {
        primal.push((format!("M{n}"), Matroid::uniform(1, n).expect("valid")));
    }
    for n in 4..=6 {
        primal.push((format!("U2,{n}"), Matroid::uniform(2, n).expect("valid")));
    }
    primal.push(("K4".to_string(), k4()));
    let mut out: Vec<NamedMatroid> = Vec::new();
    for (name, m) in primal {
        let dual = m.dual();
        out.push(NamedMatroid {
            name: name.clone(),
            matroid: m,
        });
        if !out.iter().any(|x| x.matroid == dual) {
            out.push(NamedMatroid {
                name: format!("{name}*"),
                matroid: dual,
            });
        }
    }
    out
}
