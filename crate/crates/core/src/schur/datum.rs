use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::SchurError;
use crate::exterior::{ExtVector, Exterior, ExteriorError};
use crate::matroid::subset::{self, elements, Subset};
use crate::matroid::{CyclicFlatPoset, Matroid};
use crate::xalg::{kernel_basis, Field, Matrix};

/// The piece `B(M(F)/E)` for cyclic flats `E ⊆ F`, as ambient monomials, with its two
/// distinguished subspaces.
#[derive(Clone, Debug)]
pub struct Piece<F: Field> {
    pub lower: Subset,
    pub upper: Subset,
    /// rank of `M(F)/E`
    pub degree: usize,
    /// bases of `M(F)/E` as ambient subsets of `F∖E`, ascending
    pub monomials: Vec<Subset>,
    /// basis of `U(E,F) = ker ∂`
    pub u: Vec<ExtVector<F>>,
    /// basis of `Ǔ(E,F) = ker δ_{F∖E}`
    pub u_check: Vec<ExtVector<F>>,
    /// pairing restricted to `u`
    pub gram: Matrix<F>,
}

impl<F: Field> Piece<F> {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn ground(&self) -> Subset {
        self.upper & !self.lower
    }

    pub fn contains_monomial(&self, s: Subset) -> bool {
        self.monomials.binary_search(&s).is_ok()
    }

    /// Whether every term of `v` is a monomial of this piece.
    pub fn supports(&self, v: &ExtVector<F>) -> bool {
        v.support().all(|s| self.contains_monomial(s))
    }

    pub fn coords(&self, field: &F, v: &ExtVector<F>) -> Vec<F::Elem> {
        v.coords(field, &self.monomials)
    }
}

/// Everything built from a matroid, a weight function and a coefficient field: the
/// cyclic-flat poset and one [`Piece`] per nested pair.
#[derive(Clone, Debug)]
pub struct RingelDatum<F: Field> {
    matroid: Matroid,
    weights: Vec<i64>,
    ext: Exterior<F>,
    poset: CyclicFlatPoset,
    pieces: BTreeMap<(Subset, Subset), Piece<F>>,
}

/// Monomials one step below (`∂`) or above (`δ`) a list of monomials inside `ground`.
fn neighbours(monomials: &[Subset], ground: Subset, up: bool) -> Vec<Subset> {
    let mut out = BTreeSet::new();
    for &s in monomials {
        if up {
            out.extend(elements(ground & !s).map(|x| s | 1 << x));
        } else {
            out.extend(elements(s).map(|x| s & !(1 << x)));
        }
    }
    out.into_iter().collect()
}

fn kernel_vectors<F: Field>(
    field: &F,
    matrix: &Matrix<F>,
    monomials: &[Subset],
) -> Vec<ExtVector<F>> {
    kernel_basis(matrix)
        .columns()
        .into_iter()
        .map(|c| ExtVector::from_coords(field, monomials, &c))
        .collect()
}

pub(crate) fn build_piece<F: Field>(
    m: &Matroid,
    ext: &Exterior<F>,
    lower: Subset,
    upper: Subset,
) -> Piece<F> {
    let field = ext.field();
    let minor = m.minor(lower, upper).expect("nested flats");
    let mut monomials: Vec<Subset> = minor
        .matroid
        .bases()
        .iter()
        .map(|&b| minor.to_ambient(b))
        .collect();
    monomials.sort_unstable();
    let ground = upper & !lower;

    let below = neighbours(&monomials, ground, false);
    let d = ext.operator_matrix(&monomials, &below, |v| ext.boundary(v));
    let u = kernel_vectors(field, &d, &monomials);

    let above = neighbours(&monomials, ground, true);
    let dl = ext.operator_matrix(&monomials, &above, |v| ext.delta_on(ground, v));
    let u_check = kernel_vectors(field, &dl, &monomials);

    let gram = ext.gram(&u);
    Piece {
        lower,
        upper,
        degree: minor.matroid.rank(),
        monomials,
        u,
        u_check,
        gram,
    }
}

/// Builds every piece over `field`. Kernels are computed directly in the field.
pub fn build_datum<F: Field>(
    m: &Matroid,
    weights: &[i64],
    field: &F,
) -> Result<RingelDatum<F>, SchurError> {
    if weights.len() != m.ground_size() {
        return Err(SchurError::WeightCount {
            expected: m.ground_size(),
            found: weights.len(),
        });
    }
    let ext = Exterior::new(field, weights).map_err(|e| match e {
        ExteriorError::WeightNotUnit { element, weight, p } => {
            SchurError::WeightNotUnit { p, element, weight }
        }
        ExteriorError::ZeroWeight { element } => SchurError::WeightNotUnit {
            p: field.characteristic(),
            element,
            weight: 0,
        },
        other => SchurError::Exterior(other),
    })?;
    let poset = m.cyclic_flats();
    let pairs: Vec<(Subset, Subset)> = poset
        .nested_pairs()
        .into_iter()
        .map(|(i, j)| (poset.flats()[i], poset.flats()[j]))
        .collect();
    let pieces = pairs
        .par_iter()
        .map(|&(e, f)| ((e, f), build_piece(m, &ext, e, f)))
        .collect();
    Ok(RingelDatum {
        matroid: m.clone(),
        weights: weights.to_vec(),
        ext,
        poset,
        pieces,
    })
}

impl<F: Field> RingelDatum<F> {
    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn ext(&self) -> &Exterior<F> {
        &self.ext
    }

    pub fn field(&self) -> &F {
        self.ext.field()
    }

    pub fn poset(&self) -> &CyclicFlatPoset {
        &self.poset
    }

    /// Cyclic flats in a linear extension of inclusion.
    pub fn flats(&self) -> &[Subset] {
        self.poset.flats()
    }

    pub fn piece(&self, lower: Subset, upper: Subset) -> Option<&Piece<F>> {
        self.pieces.get(&(lower, upper))
    }

    pub fn pieces(&self) -> impl Iterator<Item = &Piece<F>> {
        self.pieces.values()
    }

    pub fn require_flat(&self, e: Subset) -> Result<(), SchurError> {
        if self.poset.contains(e) {
            Ok(())
        } else {
            Err(SchurError::FlatNotInPoset(e))
        }
    }

    /// `dim U(E,F)`, zero unless `E ⊆ F` are cyclic.
    pub fn dim_u(&self, e: Subset, f: Subset) -> usize {
        self.piece(e, f).map_or(0, |p| p.u.len())
    }

    /// `dim Ǔ(E,F)`, zero unless `E ⊆ F` are cyclic.
    pub fn dim_u_check(&self, e: Subset, f: Subset) -> usize {
        self.piece(e, f).map_or(0, |p| p.u_check.len())
    }

    /// `dim B(M(F)/E)`, zero unless `E ⊆ F` are cyclic.
    pub fn dim_piece(&self, e: Subset, f: Subset) -> usize {
        self.piece(e, f).map_or(0, |p| p.dim())
    }

    /// Rank of the pairing on `U(E,F)` over the datum's field.
    pub fn gram_rank(&self, e: Subset, f: Subset) -> usize {
        self.piece(e, f).map_or(0, |p| self.field().rank(&p.gram))
    }

    /// Cyclic flats containing `e`, in the poset order.
    pub fn flats_above(&self, e: Subset) -> impl Iterator<Item = Subset> + '_ {
        self.flats()
            .iter()
            .copied()
            .filter(move |&f| subset::is_subset(e, f))
    }

    /// Cyclic flats contained in `f`, in the poset order.
    pub fn flats_below(&self, f: Subset) -> impl Iterator<Item = Subset> + '_ {
        self.flats()
            .iter()
            .copied()
            .filter(move |&e| subset::is_subset(e, f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::k4;
    use crate::xalg::{PrimeField, Rationals};

    #[test]
    fn u12_kernels() {
        let m = Matroid::uniform(1, 2).unwrap();
        let d = build_datum(&m, &[3, 5], &Rationals).unwrap();
        let p = d.piece(0, 0b11).unwrap();
        assert_eq!(p.monomials, vec![0b01, 0b10]);
        assert_eq!(p.u.len(), 1);
        // U spanned by e0 - e1, Ǔ by a0 e0 + a1 e1
        let u = &p.u[0];
        let f = &Rationals;
        assert_eq!(
            f.add(&u.coefficient(f, 0b01), &u.coefficient(f, 0b10)),
            f.zero()
        );
        let uc = &p.u_check[0];
        assert_eq!(
            f.mul(&uc.coefficient(f, 0b01), &f.from_i64(5)),
            f.mul(&uc.coefficient(f, 0b10), &f.from_i64(3))
        );
        let bottom = d.piece(0, 0).unwrap();
        assert_eq!(bottom.monomials, vec![0]);
        assert_eq!((bottom.u.len(), bottom.u_check.len()), (1, 1));
    }

    #[test]
    fn dimensions_match_passive_bases() {
        for n in 2..6 {
            let m = Matroid::uniform(1, n).unwrap();
            let d = build_datum(&m, &vec![1; n], &Rationals).unwrap();
            assert_eq!(d.dim_u(0, m.ground()), n - 1);
            assert_eq!(d.dim_u_check(0, m.ground()), 1);
        }
        let g = k4();
        let d = build_datum(&g, &[1; 6], &Rationals).unwrap();
        assert_eq!(d.flats().len(), 6);
        assert_eq!(d.dim_u(0, g.ground()), 6);
        for pc in d.pieces() {
            let minor = g.minor(pc.lower, pc.upper).unwrap().matroid;
            assert_eq!(pc.u.len() as u64, minor.mu_plus_dual());
            assert_eq!(pc.u_check.len() as u64, minor.mu_plus());
        }
    }

    #[test]
    fn k4_gram_ranks_mod_p() {
        let g = k4();
        let top = g.ground();
        let triangle = subset::from_elements([0, 1, 3]);
        let expect = [(2, 1, 4, 2), (3, 0, 3, 1), (5, 1, 6, 2)];
        for (p, tri, full, upper) in expect {
            let f = PrimeField::new(p).unwrap();
            let d = build_datum(&g, &[1; 6], &f).unwrap();
            assert_eq!(d.gram_rank(0, triangle), tri, "p = {p}");
            assert_eq!(d.gram_rank(0, top), full, "p = {p}");
            assert_eq!(d.gram_rank(triangle, top), upper, "p = {p}");
            // kernels mod p have the characteristic-zero dimensions
            assert_eq!(d.dim_u(0, top), 6);
        }
    }

    #[test]
    fn rejects_non_unit_weights() {
        let f = PrimeField::new(3).unwrap();
        let m = Matroid::uniform(1, 2).unwrap();
        assert_eq!(
            build_datum(&m, &[1, 3], &f).unwrap_err(),
            SchurError::WeightNotUnit {
                p: 3,
                element: 1,
                weight: 3
            }
        );
        assert!(matches!(
            build_datum(&m, &[1], &Rationals),
            Err(SchurError::WeightCount { .. })
        ));
    }
}
