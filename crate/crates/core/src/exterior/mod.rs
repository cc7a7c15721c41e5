//! The weighted exterior algebra on a ground set `{0, …, n-1}`.
//!
//! Monomials `e_S` are indexed by bitmasks and always carry the ambient order, also
//! when they represent bases of a minor, so every sign below is a global one.

pub mod identities;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::matroid::subset::{self, elements, size, Subset};
use crate::matroid::Matroid;
use crate::xalg::{Field, Matrix};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("sets {} and {} overlap", subset::format(*.left), subset::format(*.right))]
    OverlappingSets { left: Subset, right: Subset },
    #[error("input is not homogeneous in degree and rank")]
    InhomogeneousInput,
    #[error("weight of element {element} is zero")]
    ZeroWeight { element: usize },
    #[error("weight {weight} of element {element} is not a unit mod {p}")]
    WeightNotUnit { element: usize, weight: i64, p: u64 },
    #[error("expected {expected} weights, found {found}")]
    WeightCount { expected: usize, found: usize },
}

/// `ε(S, T)` as a parity: true when the number of pairs `s > t` is odd. Assumes disjointness.
pub(crate) fn eps_odd(s: Subset, t: Subset) -> bool {
    let mut count = 0u32;
    for x in elements(t) {
        // members of S above x
        count += (s >> x >> 1).count_ones();
    }
    count % 2 == 1
}

/// `ε(S, T) = (-1)^{#{(s,t) ∈ S×T : s > t}}` for disjoint `S, T`.
pub fn eps_sign(s: Subset, t: Subset) -> Result<i32, ExteriorError> {
    if s & t != 0 {
        return Err(ExteriorError::OverlappingSets { left: s, right: t });
    }
    Ok(if eps_odd(s, t) { -1 } else { 1 })
}

/// Finitely supported linear combination of monomials. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtVector<F: Field> {
    terms: BTreeMap<Subset, F::Elem>,
}

impl<F: Field> Default for ExtVector<F> {
    fn default() -> Self {
        ExtVector {
            terms: BTreeMap::new(),
        }
    }
}

impl<F: Field> ExtVector<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(field: &F, s: Subset) -> Self {
        let mut v = Self::zero();
        v.add_term(field, s, field.one());
        v
    }

    pub fn from_terms(field: &F, terms: impl IntoIterator<Item = (Subset, F::Elem)>) -> Self {
        let mut v = Self::zero();
        for (s, c) in terms {
            v.add_term(field, s, c);
        }
        v
    }

    /// Vector with coordinates `coords` in the monomial list `basis`.
    pub fn from_coords(field: &F, basis: &[Subset], coords: &[F::Elem]) -> Self {
        Self::from_terms(field, basis.iter().copied().zip(coords.iter().cloned()))
    }

    /// Coordinates in the monomial list `basis`; terms outside it are ignored.
    pub fn coords(&self, field: &F, basis: &[Subset]) -> Vec<F::Elem> {
        basis
            .iter()
            .map(|s| self.terms.get(s).cloned().unwrap_or_else(|| field.zero()))
            .collect()
    }

    pub fn add_term(&mut self, field: &F, s: Subset, c: F::Elem) {
        if field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&s) {
            Some(old) => {
                let v = field.add(old, &c);
                if field.is_zero(&v) {
                    self.terms.remove(&s);
                } else {
                    *old = v;
                }
            }
            None => {
                self.terms.insert(s, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Subset, &F::Elem)> {
        self.terms.iter().map(|(&s, c)| (s, c))
    }

    pub fn coefficient(&self, field: &F, s: Subset) -> F::Elem {
        self.terms.get(&s).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn support(&self) -> impl Iterator<Item = Subset> + '_ {
        self.terms.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, field: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in other.terms() {
            out.add_term(field, s, c.clone());
        }
        out
    }

    pub fn sub(&self, field: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in other.terms() {
            out.add_term(field, s, field.neg(c));
        }
        out
    }

    pub fn scale(&self, field: &F, c: &F::Elem) -> Self {
        Self::from_terms(field, self.terms().map(|(s, x)| (s, field.mul(x, c))))
    }

    pub fn neg(&self, field: &F) -> Self {
        ExtVector {
            terms: self.terms().map(|(s, c)| (s, field.neg(c))).collect(),
        }
    }

    /// The common degree of all terms, `None` if mixed. Zero counts as degree 0.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.support().map(size);
        let first = it.next().unwrap_or(0);
        it.all(|d| d == first).then_some(first)
    }
}

/// Exterior algebra over a field with a weight function `a`, fixing the pairing
/// `⟨e_S, e_S⟩ = a(S)^{-1}`.
#[derive(Clone, Debug)]
pub struct Exterior<F: Field> {
    field: F,
    n: usize,
    weights: Vec<F::Elem>,
    inverses: Vec<F::Elem>,
}

impl<F: Field> Exterior<F> {
    /// Integer weights, one per ground element; each must be invertible in the field.
    pub fn new(field: &F, weights: &[i64]) -> Result<Self, ExteriorError> {
        let n = weights.len();
        if n > subset::MAX_GROUND_SET {
            return Err(ExteriorError::WeightCount {
                expected: subset::MAX_GROUND_SET,
                found: n,
            });
        }
        let mut elems = Vec::with_capacity(n);
        let mut inverses = Vec::with_capacity(n);
        for (i, &w) in weights.iter().enumerate() {
            if w == 0 {
                return Err(ExteriorError::ZeroWeight { element: i });
            }
            let e = field.from_i64(w);
            let Some(inv) = field.inv(&e) else {
                return Err(ExteriorError::WeightNotUnit {
                    element: i,
                    weight: w,
                    p: field.characteristic(),
                });
            };
            elems.push(e);
            inverses.push(inv);
        }
        Ok(Exterior {
            field: field.clone(),
            n,
            weights: elems,
            inverses,
        })
    }

    pub fn unit_weights(field: &F, n: usize) -> Self {
        Self::new(field, &vec![1; n]).expect("unit weights are invertible")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> Subset {
        subset::full(self.n)
    }

    pub fn weight(&self, i: usize) -> &F::Elem {
        &self.weights[i]
    }

    /// `a(S) = ∏_{s∈S} a(s)`.
    pub fn weight_of(&self, s: Subset) -> F::Elem {
        elements(s).fold(self.field.one(), |acc, i| {
            self.field.mul(&acc, &self.weights[i])
        })
    }

    /// `a(S)^{-1}`, which is also `⟨e_S, e_S⟩`.
    pub fn inverse_weight_of(&self, s: Subset) -> F::Elem {
        elements(s).fold(self.field.one(), |acc, i| {
            self.field.mul(&acc, &self.inverses[i])
        })
    }

    pub fn monomial(&self, s: Subset) -> ExtVector<F> {
        ExtVector::monomial(&self.field, s)
    }

    fn signed(&self, odd: bool, c: F::Elem) -> F::Elem {
        if odd {
            self.field.neg(&c)
        } else {
            c
        }
    }

    /// Bilinear map defined on pairs of monomials.
    fn bilinear(
        &self,
        x: &ExtVector<F>,
        y: &ExtVector<F>,
        on_monomials: impl Fn(Subset, Subset) -> Option<(Subset, F::Elem)>,
    ) -> ExtVector<F> {
        let f = &self.field;
        let mut out = ExtVector::zero();
        for (s, c) in x.terms() {
            for (t, d) in y.terms() {
                if let Some((u, k)) = on_monomials(s, t) {
                    out.add_term(f, u, f.mul(&f.mul(c, d), &k));
                }
            }
        }
        out
    }

    /// Linear map defined on monomials as a list of `(monomial, coefficient)` terms.
    fn linear(
        &self,
        x: &ExtVector<F>,
        on_monomial: impl Fn(Subset) -> Vec<(Subset, F::Elem)>,
    ) -> ExtVector<F> {
        let f = &self.field;
        let mut out = ExtVector::zero();
        for (s, c) in x.terms() {
            for (u, k) in on_monomial(s) {
                out.add_term(f, u, f.mul(c, &k));
            }
        }
        out
    }

    /// `e_S ∧ e_T = ε(S,T) e_{S∪T}` for disjoint supports, zero otherwise.
    pub fn wedge(&self, x: &ExtVector<F>, y: &ExtVector<F>) -> ExtVector<F> {
        self.bilinear(x, y, |s, t| {
            (s & t == 0).then(|| (s | t, self.field.sign(!eps_odd(s, t))))
        })
    }

    pub fn pair(&self, x: &ExtVector<F>, y: &ExtVector<F>) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (s, c) in x.terms() {
            if let Some(d) = y.terms.get(&s) {
                acc = f.add(&acc, &f.mul(&f.mul(c, d), &self.inverse_weight_of(s)));
            }
        }
        acc
    }

    /// Left contraction `x ⊣ y`, characterized by `⟨x ⊣ y, z⟩ = ⟨y, x ∧ z⟩`.
    pub fn contract_left(&self, x: &ExtVector<F>, y: &ExtVector<F>) -> ExtVector<F> {
        self.bilinear(x, y, |s, t| {
            subset::is_subset(s, t).then(|| {
                let rest = t & !s;
                (
                    rest,
                    self.signed(eps_odd(s, rest), self.inverse_weight_of(s)),
                )
            })
        })
    }

    /// Right contraction `y ⊢ x`, characterized by `⟨y ⊢ x, z⟩ = ⟨y, z ∧ x⟩`.
    pub fn contract_right(&self, y: &ExtVector<F>, x: &ExtVector<F>) -> ExtVector<F> {
        self.bilinear(y, x, |t, s| {
            subset::is_subset(s, t).then(|| {
                let rest = t & !s;
                (
                    rest,
                    self.signed(eps_odd(rest, s), self.inverse_weight_of(s)),
                )
            })
        })
    }

    /// `∂(e_S) = Σ_i (-1)^i e_{S∖{s_i}}`, with `s_1 < s_2 < …` and `i` counted from 1.
    pub fn boundary(&self, x: &ExtVector<F>) -> ExtVector<F> {
        self.linear(x, |s| boundary_terms(&self.field, s))
    }

    /// `δ(e) = Σ_s a(s) e_s ∧ e`.
    ///
    /// Note `⟨δx, y⟩ = -⟨x, ∂y⟩` with this sign; [`Self::delta_adjoint`] is the exact adjoint.
    pub fn delta(&self, x: &ExtVector<F>) -> ExtVector<F> {
        self.linear(x, |s| self.delta_terms(s))
    }

    /// The pairing-adjoint of `∂`, equal to `-δ`.
    pub fn delta_adjoint(&self, x: &ExtVector<F>) -> ExtVector<F> {
        self.delta(x).neg(&self.field)
    }

    /// `δ` of the ground set `g` (a subset of the ambient one): `e ↦ Σ_{s∈g} a(s) e_s ∧ e`.
    /// This is the differential of a minor whose ground set is `g`.
    pub fn delta_on(&self, g: Subset, x: &ExtVector<F>) -> ExtVector<F> {
        self.linear(x, |s| self.delta_terms_on(g, s))
    }

    fn delta_terms(&self, s: Subset) -> Vec<(Subset, F::Elem)> {
        self.delta_terms_on(self.ground(), s)
    }

    fn delta_terms_on(&self, g: Subset, s: Subset) -> Vec<(Subset, F::Elem)> {
        elements(g & !s)
            .map(|i| {
                let single = 1 << i;
                (
                    s | single,
                    self.signed(eps_odd(single, s), self.weights[i].clone()),
                )
            })
            .collect()
    }

    /// Keeps the terms of `op(x)` whose rank is `target(q)`, where `x` has bidegree `(p, q)`.
    fn split(
        &self,
        m: &Matroid,
        x: &ExtVector<F>,
        op: impl Fn(&ExtVector<F>) -> ExtVector<F>,
        rank_change: isize,
    ) -> Result<ExtVector<F>, ExteriorError> {
        let Some((_, q)) = bidegree(m, x) else {
            return Err(ExteriorError::InhomogeneousInput);
        };
        let target = q as isize + rank_change;
        let full = op(x);
        Ok(ExtVector {
            terms: full
                .terms
                .into_iter()
                .filter(|(s, _)| m.rank_of(*s) as isize == target)
                .collect(),
        })
    }

    /// Part of `∂` that lowers the rank by one.
    pub fn boundary_h(&self, m: &Matroid, x: &ExtVector<F>) -> Result<ExtVector<F>, ExteriorError> {
        self.split(m, x, |v| self.boundary(v), -1)
    }

    /// Part of `∂` that keeps the rank.
    pub fn boundary_v(&self, m: &Matroid, x: &ExtVector<F>) -> Result<ExtVector<F>, ExteriorError> {
        self.split(m, x, |v| self.boundary(v), 0)
    }

    /// Part of `δ` that raises the rank by one.
    pub fn delta_h(&self, m: &Matroid, x: &ExtVector<F>) -> Result<ExtVector<F>, ExteriorError> {
        self.split(m, x, |v| self.delta(v), 1)
    }

    /// Part of `δ` that keeps the rank.
    pub fn delta_v(&self, m: &Matroid, x: &ExtVector<F>) -> Result<ExtVector<F>, ExteriorError> {
        self.split(m, x, |v| self.delta(v), 0)
    }

    /// `𝔻(v) = v ⊣ e_I`, i.e. `𝔻(e_S) = ε(S, I∖S) a(S)^{-1} e_{I∖S}`.
    pub fn duality_d(&self, x: &ExtVector<F>) -> ExtVector<F> {
        self.duality_on(self.ground(), x)
    }

    /// The duality map of the ground set `g` (a subset of the ambient one): `v ↦ v ⊣ e_g`.
    pub fn duality_on(&self, g: Subset, x: &ExtVector<F>) -> ExtVector<F> {
        self.linear(x, |s| {
            if !subset::is_subset(s, g) {
                return Vec::new();
            }
            let rest = g & !s;
            vec![(
                rest,
                self.signed(eps_odd(s, rest), self.inverse_weight_of(s)),
            )]
        })
    }

    /// Matrix of a linear map between monomial spans, columns indexed by `domain`.
    pub fn operator_matrix(
        &self,
        domain: &[Subset],
        codomain: &[Subset],
        op: impl Fn(&ExtVector<F>) -> ExtVector<F>,
    ) -> Matrix<F> {
        let columns: Vec<Vec<F::Elem>> = domain
            .iter()
            .map(|&s| op(&self.monomial(s)).coords(&self.field, codomain))
            .collect();
        Matrix::from_columns(&self.field, codomain.len(), &columns)
    }

    /// Gram matrix of the pairing on a family of vectors.
    pub fn gram(&self, vectors: &[ExtVector<F>]) -> Matrix<F> {
        let k = vectors.len();
        let mut g = Matrix::zeros(&self.field, k, k);
        for i in 0..k {
            for j in i..k {
                let v = self.pair(&vectors[i], &vectors[j]);
                g.set(j, i, v.clone());
                g.set(i, j, v);
            }
        }
        g
    }
}

fn boundary_terms<F: Field>(field: &F, s: Subset) -> Vec<(Subset, F::Elem)> {
    elements(s)
        .enumerate()
        .map(|(i, x)| (s & !(1 << x), field.sign(i % 2 == 1)))
        .collect()
}

/// `(degree, rank)` shared by all terms, if any; zero has bidegree `(0, 0)`.
pub fn bidegree<F: Field>(m: &Matroid, x: &ExtVector<F>) -> Option<(usize, usize)> {
    let mut it = x.support().map(|s| (size(s), m.rank_of(s)));
    let first = it.next().unwrap_or((0, 0));
    it.all(|d| d == first).then_some(first)
}

/// Monomials `e_S` with `|S| = p` and `ρ(S) = q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPiece {
    pub degree: usize,
    pub rank: usize,
    /// ascending by mask
    pub monomials: Vec<Subset>,
}

/// The monomial basis of `Λ^p_q(M)`; for `p = q = r` these are the bases of `M`.
pub fn monomial_basis(m: &Matroid, p: usize, q: usize) -> GradedPiece {
    let monomials = subset::k_subsets(m.ground(), p)
        .into_iter()
        .filter(|&s| m.rank_of(s) == q)
        .collect();
    GradedPiece {
        degree: p,
        rank: q,
        monomials,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xalg::{PrimeField, Rationals};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn vec_of(terms: &[(Subset, i64)]) -> ExtVector<Rationals> {
        ExtVector::from_terms(&Rationals, terms.iter().map(|&(s, c)| (s, q(c, 1))))
    }

    #[test]
    fn eps_examples() {
        assert_eq!(eps_sign(0b10, 0b01), Ok(-1));
        assert_eq!(eps_sign(0, 0b1011), Ok(1));
        assert_eq!(eps_sign(0b0101, 0b1010), Ok(-1));
        assert!(matches!(
            eps_sign(0b11, 0b10),
            Err(ExteriorError::OverlappingSets { .. })
        ));
    }

    #[test]
    fn wedge_examples() {
        let ext = Exterior::unit_weights(&Rationals, 3);
        let e = |s| ext.monomial(s);
        assert_eq!(ext.wedge(&e(0b10), &e(0b01)), vec_of(&[(0b11, -1)]));
        assert!(ext.wedge(&e(0b01), &e(0b11)).is_zero());
        assert_eq!(ext.wedge(&e(0b001), &e(0b110)), vec_of(&[(0b111, 1)]));
    }

    #[test]
    fn pairing_examples() {
        let ext = Exterior::new(&Rationals, &[2, 1]).unwrap();
        assert_eq!(ext.pair(&ext.monomial(1), &ext.monomial(1)), q(1, 2));
        assert_eq!(ext.pair(&ext.monomial(1), &ext.monomial(2)), q(0, 1));
        let unit = Exterior::unit_weights(&Rationals, 3);
        assert_eq!(
            unit.pair(&unit.monomial(0b101), &unit.monomial(0b101)),
            q(1, 1)
        );
    }

    #[test]
    fn contraction_examples() {
        let ext = Exterior::unit_weights(&Rationals, 2);
        let e = |s| ext.monomial(s);
        assert_eq!(ext.contract_left(&e(0b01), &e(0b11)), e(0b10));
        assert!(ext.contract_left(&e(0b10), &e(0b01)).is_zero());
        let w = Exterior::new(&Rationals, &[3, 5]).unwrap();
        let b = w.monomial(0b11);
        assert_eq!(
            w.contract_left(&b, &b),
            ExtVector::from_terms(&Rationals, [(0, w.pair(&b, &b))])
        );
        // e_1 ⊣ e_01 picks up ε({1},{0}) = -1
        assert_eq!(
            w.contract_left(&w.monomial(0b10), &b),
            ExtVector::from_terms(&Rationals, [(0b01, q(-1, 5))])
        );
        assert_eq!(
            w.contract_right(&b, &w.monomial(0b01)),
            ExtVector::from_terms(&Rationals, [(0b10, q(-1, 3))])
        );
    }

    #[test]
    fn boundary_examples() {
        let ext = Exterior::unit_weights(&Rationals, 3);
        assert_eq!(
            ext.boundary(&ext.monomial(0b11)),
            vec_of(&[(0b01, 1), (0b10, -1)])
        );
        assert_eq!(ext.boundary(&ext.monomial(0b1)), vec_of(&[(0, -1)]));
        assert!(ext.boundary(&ext.boundary(&ext.monomial(0b111))).is_zero());
    }

    #[test]
    fn delta_examples() {
        let unit = Exterior::unit_weights(&Rationals, 2);
        assert_eq!(
            unit.delta(&unit.monomial(0)),
            vec_of(&[(0b01, 1), (0b10, 1)])
        );
        let w = Exterior::new(&Rationals, &[3, 7]).unwrap();
        assert_eq!(w.delta(&w.monomial(0b01)), vec_of(&[(0b11, -7)]));
        assert_eq!(w.delta_adjoint(&w.monomial(0b01)), vec_of(&[(0b11, 7)]));
    }

    #[test]
    fn duality_examples() {
        let w = Exterior::new(&Rationals, &[4, 9]).unwrap();
        assert_eq!(
            w.duality_d(&w.monomial(0b01)),
            ExtVector::from_terms(&Rationals, [(0b10, q(1, 4))])
        );
        assert_eq!(w.duality_d(&w.monomial(0)), w.monomial(0b11));
        // 𝔻 agrees with contraction against e_I
        for s in 0..4 {
            assert_eq!(
                w.duality_d(&w.monomial(s)),
                w.contract_left(&w.monomial(s), &w.monomial(0b11))
            );
        }
    }

    #[test]
    fn splittings_on_bases() {
        let m = Matroid::uniform(2, 3).unwrap();
        let ext = Exterior::new(&Rationals, &[2, 3, 5]).unwrap();
        let b = ext.monomial(0b011);
        assert_eq!(ext.boundary_h(&m, &b).unwrap(), ext.boundary(&b));
        assert!(ext.boundary_v(&m, &b).unwrap().is_zero());
        assert_eq!(ext.delta_v(&m, &b).unwrap(), ext.delta(&b));
        assert!(ext.delta_h(&m, &b).unwrap().is_zero());
        let mixed = ext.monomial(0b011).add(&Rationals, &ext.monomial(0b001));
        assert_eq!(
            ext.boundary_h(&m, &mixed),
            Err(ExteriorError::InhomogeneousInput)
        );
    }

    #[test]
    fn monomial_bases() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(
            monomial_basis(&u23, 2, 2).monomials,
            vec![0b011, 0b101, 0b110]
        );
        let u13 = Matroid::uniform(1, 3).unwrap();
        assert_eq!(monomial_basis(&u13, 2, 1).monomials.len(), 3);
        let g = crate::matroid::k4();
        assert_eq!(monomial_basis(&g, 3, 3).monomials.len(), g.bases().len());
    }

    #[test]
    fn weights_must_be_units() {
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(
            Exterior::new(&f3, &[1, 6]).unwrap_err(),
            ExteriorError::WeightNotUnit {
                element: 1,
                weight: 6,
                p: 3
            }
        );
        assert_eq!(
            Exterior::new(&Rationals, &[0]).unwrap_err(),
            ExteriorError::ZeroWeight { element: 0 }
        );
    }
}
