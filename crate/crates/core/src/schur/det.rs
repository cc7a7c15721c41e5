use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::characters::weight_sum;
use super::report::rational_string;
use super::SchurError;
use crate::exterior::Exterior;
use crate::matroid::subset::{self, Subset};
use crate::matroid::Matroid;
use crate::xalg::{
    determinant, integer_kernel_saturated, prime_divisors, valuation_rational, IntMatrix, Matrix,
    Rationals,
};

/// Determinant of the pairing on a ℤ-saturated basis of `U(M) = ker ∂ ⊂ B(M)`.
/// Well defined up to sign.
pub fn gram_det_u(m: &Matroid, weights: &[i64]) -> Result<BigRational, SchurError> {
    if weights.len() != m.ground_size() {
        return Err(SchurError::WeightCount {
            expected: m.ground_size(),
            found: weights.len(),
        });
    }
    let ext = Exterior::new(&Rationals, weights)?;
    let bases = m.bases();
    let mut below: Vec<Subset> = bases
        .iter()
        .flat_map(|&b| subset::elements(b).map(move |x| b & !(1 << x)))
        .collect();
    below.sort_unstable();
    below.dedup();

    // ∂ has entries ±1, so it is already an integer matrix
    let mut dmat = IntMatrix::zeros(below.len(), bases.len());
    for (j, &b) in bases.iter().enumerate() {
        for (i, x) in subset::elements(b).enumerate() {
            let row = below.binary_search(&(b & !(1 << x))).expect("listed");
            dmat.set(row, j, BigInt::from(if i % 2 == 0 { -1 } else { 1 }));
        }
    }
    let kernel = if below.is_empty() {
        IntMatrix::identity(bases.len())
    } else {
        integer_kernel_saturated(&dmat)
    };
    let k = kernel.cols();
    let mut gram = Matrix::zeros(&Rationals, k, k);
    let inv: Vec<BigRational> = bases.iter().map(|&b| ext.inverse_weight_of(b)).collect();
    for i in 0..k {
        for j in i..k {
            let mut acc = BigRational::zero();
            for (s, w) in inv.iter().enumerate() {
                let prod = kernel.get(s, i) * kernel.get(s, j);
                if !prod.is_zero() {
                    acc += w * BigRational::from_integer(prod);
                }
            }
            gram.set(j, i, acc.clone());
            gram.set(i, j, acc);
        }
    }
    Ok(determinant(&gram)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetFactor {
    pub flat: Vec<usize>,
    /// `Σ_{i ∈ I∖K} a(i)`
    pub base: i64,
    pub exponent: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetFactorization {
    pub factors: Vec<DetFactor>,
    #[serde(with = "rational_string")]
    pub product: BigRational,
}

/// `∏_{K ≠ I flat} (Σ_{i∈I∖K} a(i))^{β(M/K) · T_{M(K)}(0,1)}`, zero exponents dropped.
pub fn bv_predicted(m: &Matroid, weights: &[i64]) -> Result<DetFactorization, SchurError> {
    if weights.len() != m.ground_size() {
        return Err(SchurError::WeightCount {
            expected: m.ground_size(),
            found: weights.len(),
        });
    }
    let g = m.ground();
    let mut factors = Vec::new();
    let mut product = BigRational::one();
    for k in m.flats().into_iter().filter(|&k| k != g) {
        let beta = m.contraction(k)?.matroid.beta();
        if beta == 0 {
            continue;
        }
        let exponent = beta * m.restriction(k)?.matroid.mu_plus_dual();
        if exponent == 0 {
            continue;
        }
        let base = weight_sum(weights, g & !k);
        product *= BigRational::from_integer(num_traits::pow(base.clone(), exponent as usize));
        factors.push(DetFactor {
            flat: subset::elements(k).collect(),
            base: i64::try_from(base).expect("weight sums fit in i64"),
            exponent,
        });
    }
    Ok(DetFactorization { factors, product })
}

/// Gram determinant against the predicted product.
///
/// With unit weights the two agree in absolute value. With general weights they differ
/// by a sign and a monomial in the weights, so the comparison is on `p`-adic valuations at
/// primes dividing no weight, together with the requirement that the ratio involves only
/// primes dividing some weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetComparison {
    #[serde(with = "rational_string")]
    pub gram: BigRational,
    pub predicted: DetFactorization,
    pub abs_equal: bool,
    /// primes at which valuations were compared
    pub compared_primes: Vec<u64>,
    /// `p ↦ (ν_p(gram), ν_p(predicted))`, absent when either side vanishes
    pub valuations: BTreeMap<u64, (i64, i64)>,
    /// prime support of `gram / predicted`
    pub ratio_primes: Vec<u64>,
    pub weight_primes: Vec<u64>,
    pub holds: bool,
}

pub fn compare_determinant(
    m: &Matroid,
    weights: &[i64],
    primes: &[u64],
) -> Result<DetComparison, SchurError> {
    let gram = gram_det_u(m, weights)?;
    let predicted = bv_predicted(m, weights)?;
    let weight_primes: BTreeSet<u64> = weights
        .iter()
        .flat_map(|&w| prime_divisors(&BigInt::from(w)))
        .collect();
    let compared_primes: Vec<u64> = primes
        .iter()
        .copied()
        .filter(|p| !weight_primes.contains(p))
        .collect();
    let abs_equal = gram.abs() == predicted.product.abs();
    let mut valuations = BTreeMap::new();
    let mut ratio_primes = Vec::new();
    let holds = match (gram.is_zero(), predicted.product.is_zero()) {
        (true, true) => true,
        (false, false) => {
            for &p in &compared_primes {
                let a = valuation_rational(&gram, p).expect("nonzero");
                let b = valuation_rational(&predicted.product, p).expect("nonzero");
                valuations.insert(p, (a, b));
            }
            let ratio = &gram / &predicted.product;
            let mut support: BTreeSet<u64> = prime_divisors(ratio.numer()).into_iter().collect();
            support.extend(prime_divisors(ratio.denom()));
            ratio_primes = support.iter().copied().collect();
            valuations.values().all(|(a, b)| a == b)
                && support.is_subset(&weight_primes)
                && (!weights.iter().all(|&w| w.abs() == 1) || abs_equal)
        }
        _ => false,
    };
    Ok(DetComparison {
        gram,
        predicted,
        abs_equal,
        compared_primes,
        valuations,
        ratio_primes,
        weight_primes: weight_primes.into_iter().collect(),
        holds,
    })
}
