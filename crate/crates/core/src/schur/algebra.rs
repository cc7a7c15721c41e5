use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{RingelDatum, SchurError};
use crate::exterior::ExtVector;
use crate::matroid::subset::{self, Subset};
use crate::xalg::{centralizer_dimension, span_dimension, Field, Matrix, XalgError};

pub const DEFAULT_DIMENSION_CAP: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDim {
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
    pub dim: usize,
}

/// Dimensions of `R` and `Ř` from the cellular decompositions, with the nonzero blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDims {
    pub dim_r: usize,
    pub dim_r_check: usize,
    pub r_blocks: Vec<PairDim>,
    pub r_check_blocks: Vec<PairDim>,
}

pub fn algebra_dims<F: Field>(d: &RingelDatum<F>) -> AlgebraDims {
    let mut r_blocks = Vec::new();
    let mut r_check_blocks = Vec::new();
    for &e in d.flats() {
        for &f in d.flats() {
            let r: usize = d
                .flats_above(e | f)
                .map(|z| d.dim_u(e, z) * d.dim_u(f, z))
                .sum();
            let rc: usize = d
                .flats_below(e & f)
                .map(|z| d.dim_u_check(z, e) * d.dim_u_check(z, f))
                .sum();
            let block = |dim| PairDim {
                lower: subset::elements(e).collect(),
                upper: subset::elements(f).collect(),
                dim,
            };
            if r > 0 {
                r_blocks.push(block(r));
            }
            if rc > 0 {
                r_check_blocks.push(block(rc));
            }
        }
    }
    AlgebraDims {
        dim_r: r_blocks.iter().map(|b| b.dim).sum(),
        dim_r_check: r_check_blocks.iter().map(|b| b.dim).sum(),
        r_blocks,
        r_check_blocks,
    }
}

/// `R` and `Ř` as algebras of explicit matrices on `B = ⊕_{E ⊆ F} B(E,F)`.
///
/// For `u ∈ U(E,F)` the `R`-generators are `b ↦ u ∧ b` on `B(F,G) → B(E,G)` and
/// `b ↦ u ⊣ b` on `B(E,G) → B(F,G)`. For `ǔ ∈ Ǔ(F,G)` the `Ř`-generators are
/// `b ↦ b ∧ ǔ` on `B(E,F) → B(E,G)` and `b ↦ b ⊢ ǔ` on `B(E,G) → B(E,F)`.
#[derive(Clone, Debug)]
pub struct OperatorModel<F: Field> {
    pub dim: usize,
    offsets: BTreeMap<(Subset, Subset), usize>,
    pub r_gens: Vec<Matrix<F>>,
    pub r_check_gens: Vec<Matrix<F>>,
}

pub fn operator_model<F: Field>(
    d: &RingelDatum<F>,
    cap: usize,
) -> Result<OperatorModel<F>, SchurError> {
    let mut offsets = BTreeMap::new();
    let mut dim = 0;
    for p in d.pieces() {
        offsets.insert((p.lower, p.upper), dim);
        dim += p.dim();
    }
    if dim > cap {
        return Err(SchurError::DimensionTooLarge { dim, cap });
    }
    let mut model = OperatorModel {
        dim,
        offsets,
        r_gens: Vec::new(),
        r_check_gens: Vec::new(),
    };
    let ext = d.ext();

    for p in d.pieces() {
        let (e, f) = (p.lower, p.upper);
        for u in &p.u {
            let mut wedge = Matrix::zeros(d.field(), dim, dim);
            let mut contract = Matrix::zeros(d.field(), dim, dim);
            for g in d.flats_above(f) {
                model.fill(d, &mut wedge, (f, g), (e, g), |b| ext.wedge(u, b));
                model.fill(d, &mut contract, (e, g), (f, g), |b| {
                    ext.contract_left(u, b)
                });
            }
            model.r_gens.push(wedge);
            model.r_gens.push(contract);
        }
        let (f, g) = (e, p.upper);
        for uc in &p.u_check {
            let mut wedge = Matrix::zeros(d.field(), dim, dim);
            let mut contract = Matrix::zeros(d.field(), dim, dim);
            for e in d.flats_below(f) {
                model.fill(d, &mut wedge, (e, f), (e, g), |b| ext.wedge(b, uc));
                model.fill(d, &mut contract, (e, g), (e, f), |b| {
                    ext.contract_right(b, uc)
                });
            }
            model.r_check_gens.push(wedge);
            model.r_check_gens.push(contract);
        }
    }
    Ok(model)
}

impl<F: Field> OperatorModel<F> {
    /// Writes the block `source → target` of `op` into `m`.
    fn fill(
        &self,
        d: &RingelDatum<F>,
        m: &mut Matrix<F>,
        source: (Subset, Subset),
        target: (Subset, Subset),
        op: impl Fn(&ExtVector<F>) -> ExtVector<F>,
    ) {
        let (ps, pt) = (
            d.piece(source.0, source.1).expect("nested"),
            d.piece(target.0, target.1).expect("nested"),
        );
        let (os, ot) = (self.offsets[&source], self.offsets[&target]);
        for (j, &s) in ps.monomials.iter().enumerate() {
            let image = op(&d.ext().monomial(s));
            for (i, c) in pt.coords(d.field(), &image).into_iter().enumerate() {
                m.set(ot + i, os + j, c);
            }
        }
    }

    /// Offset of the piece `(lower, upper)` inside `B`.
    pub fn offset(&self, lower: Subset, upper: Subset) -> Option<usize> {
        self.offsets.get(&(lower, upper)).copied()
    }

    pub fn r_dimension(&self, field: &F) -> Result<usize, XalgError> {
        span_dimension(field, &self.r_gens, true)
    }

    pub fn r_check_dimension(&self, field: &F) -> Result<usize, XalgError> {
        span_dimension(field, &self.r_check_gens, true)
    }

    /// Dimension of the commutant of `Ř` in `End(B)`.
    pub fn centralizer_of_r_check(&self, field: &F) -> Result<usize, XalgError> {
        centralizer_dimension(field, self.dim, &self.r_check_gens)
    }

    /// Dimension of the commutant of `R` in `End(B)`.
    pub fn centralizer_of_r(&self, field: &F) -> Result<usize, XalgError> {
        centralizer_dimension(field, self.dim, &self.r_gens)
    }

    /// `(pairs checked, pairs failing to commute)` over all `R × Ř` generator pairs.
    pub fn commutation(&self) -> Result<(u64, u64), XalgError> {
        let mut failed = 0;
        for x in &self.r_gens {
            for y in &self.r_check_gens {
                if x.mul(y)? != y.mul(x)? {
                    failed += 1;
                }
            }
        }
        Ok(((self.r_gens.len() * self.r_check_gens.len()) as u64, failed))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::Matroid;
    use crate::schur::build_datum;
    use crate::xalg::Rationals;

    #[test]
    fn u12_dimensions() {
        let m = Matroid::uniform(1, 2).unwrap();
        let d = build_datum(&m, &[1, 1], &Rationals).unwrap();
        let dims = algebra_dims(&d);
        assert_eq!((dims.dim_r, dims.dim_r_check), (5, 5));
        let model = operator_model(&d, DEFAULT_DIMENSION_CAP).unwrap();
        assert_eq!(model.dim, 4);
        assert_eq!(model.r_dimension(&Rationals).unwrap(), 5);
        assert_eq!(model.centralizer_of_r_check(&Rationals).unwrap(), 5);
        let (checked, failed) = model.commutation().unwrap();
        assert!(checked > 0);
        assert_eq!(failed, 0);
    }

    #[test]
    fn double_centralizer_small_uniform() {
        for (r, n) in [(1, 3), (2, 3), (1, 4), (2, 4)] {
            let m = Matroid::uniform(r, n).unwrap();
            let d = build_datum(&m, &vec![1; n], &Rationals).unwrap();
            let dims = algebra_dims(&d);
            let model = operator_model(&d, DEFAULT_DIMENSION_CAP).unwrap();
            let f = &Rationals;
            assert_eq!(model.r_dimension(f).unwrap(), dims.dim_r, "U{r},{n}");
            assert_eq!(
                model.r_check_dimension(f).unwrap(),
                dims.dim_r_check,
                "U{r},{n}"
            );
            assert_eq!(
                model.centralizer_of_r_check(f).unwrap(),
                dims.dim_r,
                "U{r},{n}"
            );
            assert_eq!(
                model.centralizer_of_r(f).unwrap(),
                dims.dim_r_check,
                "U{r},{n}"
            );
            assert_eq!(model.commutation().unwrap().1, 0);
        }
    }

    #[test]
    fn dual_swaps_dimensions() {
        let m = Matroid::uniform(2, 5).unwrap();
        let a = algebra_dims(&build_datum(&m, &[1; 5], &Rationals).unwrap());
        let b = algebra_dims(&build_datum(&m.dual(), &[1; 5], &Rationals).unwrap());
        assert_eq!(a.dim_r_check, b.dim_r);
        assert_eq!(a.dim_r, b.dim_r_check);
    }

    #[test]
    fn cap_is_enforced() {
        let m = Matroid::uniform(2, 5).unwrap();
        let d = build_datum(&m, &[1; 5], &Rationals).unwrap();
        assert!(matches!(
            operator_model(&d, 3),
            Err(SchurError::DimensionTooLarge { cap: 3, .. })
        ));
    }
}
