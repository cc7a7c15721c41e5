//! Tutte polynomial by basis activities, and the invariants read off from it.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::subset::{self, elements, min_element, Subset};
use super::{Matroid, MatroidError};

/// Polynomial in `x, y` with nonnegative integer coefficients, keyed by `(deg_x, deg_y)`.
/// Zero coefficients are never stored. Serialized as a list of `[i, j, coefficient]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<(usize, usize, u64)>", from = "Vec<(usize, usize, u64)>")]
pub struct TuttePoly {
    coefficients: BTreeMap<(usize, usize), u64>,
}

impl TuttePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn monomial(i: usize, j: usize, c: u64) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: u64) {
        if c != 0 {
            *self.coefficients.entry((i, j)).or_insert(0) += c;
        }
    }

    pub fn coefficient(&self, i: usize, j: usize) -> u64 {
        self.coefficients.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.coefficients.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn add(&self, other: &TuttePoly) -> TuttePoly {
        let mut out = self.clone();
        for ((i, j), c) in other.terms() {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn mul(&self, other: &TuttePoly) -> TuttePoly {
        let mut out = TuttePoly::zero();
        for ((i, j), a) in self.terms() {
            for ((k, l), b) in other.terms() {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap(&self) -> TuttePoly {
        TuttePoly {
            coefficients: self.terms().map(|((i, j), c)| ((j, i), c)).collect(),
        }
    }

    /// Integer evaluation.
    pub fn eval(&self, x: i64, y: i64) -> i128 {
        self.terms()
            .map(|((i, j), c)| c as i128 * (x as i128).pow(i as u32) * (y as i128).pow(j as u32))
            .sum()
    }

    /// `T(x, 0)`, keeping only the terms free of `y`.
    pub fn at_y_zero(&self) -> TuttePoly {
        TuttePoly {
            coefficients: self
                .coefficients
                .iter()
                .filter(|((_, j), _)| *j == 0)
                .map(|(&k, &c)| (k, c))
                .collect(),
        }
    }

    /// `T(0, y)`, keeping only the terms free of `x`.
    pub fn at_x_zero(&self) -> TuttePoly {
        self.swap().at_y_zero().swap()
    }
}

impl From<TuttePoly> for Vec<(usize, usize, u64)> {
    fn from(t: TuttePoly) -> Self {
        t.terms().map(|((i, j), c)| (i, j, c)).collect()
    }
}

impl From<Vec<(usize, usize, u64)>> for TuttePoly {
    fn from(v: Vec<(usize, usize, u64)>) -> Self {
        let mut t = TuttePoly::zero();
        for (i, j, c) in v {
            t.add_term(i, j, c);
        }
        t
    }
}

impl fmt::Display for TuttePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let power = |v: &str, d: usize| match d {
            0 => String::new(),
            1 => v.to_string(),
            _ => format!("{v}^{d}"),
        };
        let parts: Vec<String> = self
            .terms()
            .map(|((i, j), c)| {
                let mono = format!("{}{}", power("x", i), power("y", j));
                match (c, mono.is_empty()) {
                    (_, true) => c.to_string(),
                    (1, false) => mono,
                    _ => format!("{c}{mono}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Internal and external activity of a basis with respect to the ground-set order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActivityRecord {
    pub basis: Subset,
    pub internally_active: Subset,
    pub externally_active: Subset,
}

impl ActivityRecord {
    pub fn internally_passive(&self) -> bool {
        self.internally_active == 0
    }

    pub fn externally_passive(&self) -> bool {
        self.externally_active == 0
    }
}

impl Matroid {
    pub fn activities(&self, basis: Subset) -> Result<ActivityRecord, MatroidError> {
        if !self.is_basis(basis) {
            return Err(MatroidError::NotABasis(basis));
        }
        let internally_active = elements(basis)
            .filter(|&b| min_element(self.fundamental_bond(basis, b)) == Some(b))
            .fold(0, |acc, b| acc | 1 << b);
        let externally_active = elements(self.ground() & !basis)
            .filter(|&p| min_element(self.fundamental_circuit(basis, p)) == Some(p))
            .fold(0, |acc, p| acc | 1 << p);
        Ok(ActivityRecord {
            basis,
            internally_active,
            externally_active,
        })
    }

    fn all_activities(&self) -> impl Iterator<Item = ActivityRecord> + '_ {
        self.bases
            .iter()
            .map(|&b| self.activities(b).expect("listed bases are bases"))
    }

    /// `Σ_B x^{|int. active|} y^{|ext. active|}`.
    pub fn tutte(&self) -> TuttePoly {
        let mut t = TuttePoly::zero();
        for rec in self.all_activities() {
            t.add_term(
                subset::size(rec.internally_active),
                subset::size(rec.externally_active),
                1,
            );
        }
        t
    }

    /// Crapo's invariant: the coefficient of `x` in the Tutte polynomial.
    pub fn beta(&self) -> u64 {
        self.tutte().coefficient(1, 0)
    }

    /// `T(1, 0)`: the number of externally passive bases.
    pub fn mu_plus(&self) -> u64 {
        self.all_activities()
            .filter(ActivityRecord::externally_passive)
            .count() as u64
    }

    /// `T(0, 1)`: the number of internally passive bases, equal to `μ⁺` of the dual.
    pub fn mu_plus_dual(&self) -> u64 {
        self.all_activities()
            .filter(ActivityRecord::internally_passive)
            .count() as u64
    }
}

/// Tutte polynomial by deletion and contraction of the largest element; exponential,
/// kept as an independent check on the activity computation.
pub fn tutte_by_deletion_contraction(m: &Matroid) -> TuttePoly {
    let n = m.ground_size();
    if n == 0 {
        return TuttePoly::one();
    }
    let e = n - 1;
    let rest = m.ground() & !(1 << e);
    let single = 1 << e;
    if m.loops() & single != 0 {
        let del = m.restriction(rest).expect("valid restriction").matroid;
        return TuttePoly::monomial(0, 1, 1).mul(&tutte_by_deletion_contraction(&del));
    }
    if m.coloops() & single != 0 {
        let con = m
            .minor(single, m.ground())
            .expect("valid contraction")
            .matroid;
        return TuttePoly::monomial(1, 0, 1).mul(&tutte_by_deletion_contraction(&con));
    }
    let del = m.restriction(rest).expect("valid restriction").matroid;
    let con = m
        .minor(single, m.ground())
        .expect("valid contraction")
        .matroid;
    tutte_by_deletion_contraction(&del).add(&tutte_by_deletion_contraction(&con))
}

#[cfg(test)]
mod tests {
    use super::super::{k4, subset::from_elements};
    use super::*;

    fn library() -> Vec<Matroid> {
        vec![
            Matroid::uniform(1, 2).unwrap(),
            Matroid::uniform(1, 3).unwrap(),
            Matroid::uniform(2, 3).unwrap(),
            Matroid::uniform(2, 4).unwrap(),
            Matroid::uniform(0, 2).unwrap(),
            Matroid::uniform(2, 2).unwrap(),
            Matroid::uniform(0, 0).unwrap(),
            k4(),
            Matroid::from_graph(3, &[(0, 1), (0, 1), (1, 2), (2, 2)]).unwrap(),
            Matroid::uniform(1, 3)
                .unwrap()
                .direct_sum(&Matroid::uniform(2, 3).unwrap())
                .unwrap(),
        ]
    }

    #[test]
    fn activities_of_u13() {
        let m = Matroid::uniform(1, 3).unwrap();
        assert_eq!(m.activities(0b001).unwrap().externally_active, 0);
        assert_eq!(m.activities(0b001).unwrap().internally_active, 0b001);
        assert_eq!(m.activities(0b100).unwrap().externally_active, 0b011);
        assert_eq!(m.activities(0b011), Err(MatroidError::NotABasis(0b011)));
    }

    #[test]
    fn small_tutte_polynomials() {
        let u12 = Matroid::uniform(1, 2).unwrap();
        let mut expect = TuttePoly::monomial(1, 0, 1);
        expect.add_term(0, 1, 1);
        assert_eq!(u12.tutte(), expect);
        let u13 = Matroid::uniform(1, 3).unwrap();
        expect.add_term(0, 2, 1);
        assert_eq!(u13.tutte(), expect);
        assert_eq!(u13.tutte().to_string(), "y + y^2 + x");
        assert_eq!(Matroid::uniform(0, 0).unwrap().tutte(), TuttePoly::one());
    }

    #[test]
    fn json_is_a_list_of_terms() {
        let t = Matroid::uniform(1, 2).unwrap().tutte();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, "[[0,1,1],[1,0,1]]");
        assert_eq!(serde_json::from_str::<TuttePoly>(&json).unwrap(), t);
    }

    #[test]
    fn k4_invariants() {
        let g = k4();
        let t = g.tutte();
        assert_eq!(t.eval(1, 1), 16);
        assert_eq!(g.beta(), 2);
        assert_eq!(g.mu_plus_dual(), 6);
        assert_eq!(g.mu_plus(), 6);
        // x^3 + 3x^2 + 2x + 4xy + 2y + 3y^2 + y^3
        let expect = [
            ((3, 0), 1),
            ((2, 0), 3),
            ((1, 0), 2),
            ((1, 1), 4),
            ((0, 1), 2),
            ((0, 2), 3),
            ((0, 3), 1),
        ];
        let mut p = TuttePoly::zero();
        for ((i, j), c) in expect {
            p.add_term(i, j, c);
        }
        assert_eq!(t, p);
    }

    #[test]
    fn beta_and_mu_examples() {
        for n in 1..6 {
            let m = Matroid::uniform(1, n).unwrap();
            assert_eq!(m.beta(), 1);
            assert_eq!(m.mu_plus(), 1);
        }
        let lp = Matroid::uniform(0, 1).unwrap();
        assert_eq!(lp.beta(), 0);
        assert_eq!(lp.mu_plus(), 0);
        let with_loop = Matroid::from_graph(2, &[(0, 1), (1, 1)]).unwrap();
        assert_eq!(with_loop.mu_plus(), 0);
        let empty = Matroid::uniform(0, 0).unwrap();
        assert_eq!(
            (empty.beta(), empty.mu_plus(), empty.mu_plus_dual()),
            (0, 1, 1)
        );
    }

    #[test]
    fn activities_agree_with_deletion_contraction() {
        for m in library() {
            assert_eq!(m.tutte(), tutte_by_deletion_contraction(&m), "{m:?}");
        }
    }

    #[test]
    fn duality_and_specializations() {
        for m in library() {
            let t = m.tutte();
            assert_eq!(m.dual().tutte(), t.swap());
            assert_eq!(m.mu_plus() as i128, t.eval(1, 0));
            assert_eq!(m.mu_plus_dual() as i128, t.eval(0, 1));
            assert_eq!(m.mu_plus_dual(), m.dual().mu_plus());
            assert_eq!(t.eval(1, 1), m.bases().len() as i128);
            if m.ground_size() >= 2 {
                assert_eq!(m.beta(), m.dual().beta());
            }
        }
    }

    #[test]
    fn activity_sets_lie_where_they_should() {
        let g = k4();
        for &b in g.bases() {
            let rec = g.activities(b).unwrap();
            assert!(subset::is_subset(rec.internally_active, b));
            assert_eq!(rec.externally_active & b, 0);
        }
        let basis = from_elements([0, 1, 2]);
        assert_eq!(g.activities(basis).unwrap().internally_active, basis);
    }
}
