//! Self-checks of the exterior-algebra identities, exhaustive on monomials or on random
//! vectors. Used by the test suites and by the command-line self test.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{eps_odd, ExtVector, Exterior};
use crate::matroid::subset::{self, size, Subset};
use crate::matroid::Matroid;
use crate::xalg::{kernel_basis, Field};

const MAX_RECORDED_FAILURES: usize = 20;

/// Number of instances checked per identity, and the first few failures.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub checked: BTreeMap<String, u64>,
    pub failed: BTreeMap<String, u64>,
    pub examples: Vec<String>,
}

impl IdentityReport {
    pub fn record(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        *self.checked.entry(name.to_string()).or_insert(0) += 1;
        if !ok {
            *self.failed.entry(name.to_string()).or_insert(0) += 1;
            if self.examples.len() < MAX_RECORDED_FAILURES {
                self.examples.push(format!("{name}: {}", detail()));
            }
        }
    }

    pub fn record_counts(&mut self, name: &str, checked: u64, failed: u64) {
        *self.checked.entry(name.to_string()).or_insert(0) += checked;
        if failed > 0 {
            *self.failed.entry(name.to_string()).or_insert(0) += failed;
            if self.examples.len() < MAX_RECORDED_FAILURES {
                self.examples
                    .push(format!("{name}: {failed} of {checked} instances"));
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed.is_empty()
    }

    pub fn total_checked(&self) -> u64 {
        self.checked.values().sum()
    }

    pub fn merge(&mut self, other: IdentityReport) {
        for (k, v) in other.checked {
            *self.checked.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.failed {
            *self.failed.entry(k).or_insert(0) += v;
        }
        let room = MAX_RECORDED_FAILURES.saturating_sub(self.examples.len());
        self.examples.extend(other.examples.into_iter().take(room));
    }
}

fn sign_of<F: Field>(f: &F, odd: bool) -> F::Elem {
    f.sign(!odd)
}

/// Identities that do not involve a matroid, for one choice of arguments.
struct Checker<'a, F: Field> {
    ext: &'a Exterior<F>,
    report: IdentityReport,
}

impl<'a, F: Field> Checker<'a, F> {
    fn new(ext: &'a Exterior<F>) -> Self {
        Checker {
            ext,
            report: IdentityReport::default(),
        }
    }

    fn f(&self) -> &F {
        self.ext.field()
    }

    fn adjunctions(&mut self, x: &ExtVector<F>, y: &ExtVector<F>, z: &ExtVector<F>) {
        let e = self.ext;
        let lhs = e.pair(&e.contract_left(x, y), z);
        let rhs = e.pair(y, &e.wedge(x, z));
        self.report.record("adjunction_left", lhs == rhs, || {
            format!("{x:?} {y:?} {z:?}")
        });
        let lhs = e.pair(&e.contract_right(y, x), z);
        let rhs = e.pair(y, &e.wedge(z, x));
        self.report.record("adjunction_right", lhs == rhs, || {
            format!("{x:?} {y:?} {z:?}")
        });
        let assoc_l = e.wedge(&e.wedge(x, y), z);
        let assoc_r = e.wedge(x, &e.wedge(y, z));
        self.report
            .record("wedge_associative", assoc_l == assoc_r, || {
                format!("{x:?} {y:?} {z:?}")
            });
    }

    /// `x, x'` supported in `s`, `y, y'` in its complement; all homogeneous.
    fn split_products(
        &mut self,
        x: &ExtVector<F>,
        xp: &ExtVector<F>,
        y: &ExtVector<F>,
        yp: &ExtVector<F>,
    ) {
        let e = self.ext;
        let f = self.f().clone();
        let lhs = e.pair(&e.wedge(x, y), &e.wedge(xp, yp));
        let rhs = f.mul(&e.pair(x, xp), &e.pair(y, yp));
        self.report
            .record("pairing_multiplicative", lhs == rhs, || {
                format!("{x:?} {xp:?} {y:?} {yp:?}")
            });
        let (dx, dxp, dy) = (
            x.degree().unwrap_or(0),
            xp.degree().unwrap_or(0),
            y.degree().unwrap_or(0),
        );
        let lhs = e.contract_left(&e.wedge(x, y), &e.wedge(xp, yp));
        let odd = (dx.abs_diff(dxp) * dy) % 2 == 1;
        let rhs = e
            .wedge(&e.contract_left(x, xp), &e.contract_left(y, yp))
            .scale(&f, &sign_of(&f, odd));
        self.report.record("cor_3_2", lhs == rhs, || {
            format!("{x:?} {xp:?} {y:?} {yp:?}")
        });
    }

    fn differentials(&mut self, v: &ExtVector<F>, w: &ExtVector<F>) {
        let e = self.ext;
        let f = self.f().clone();
        self.report.record(
            "boundary_squared",
            e.boundary(&e.boundary(v)).is_zero(),
            || format!("{v:?}"),
        );
        self.report
            .record("delta_squared", e.delta(&e.delta(v)).is_zero(), || {
                format!("{v:?}")
            });
        let lhs = e.pair(&e.delta_adjoint(v), w);
        let rhs = e.pair(v, &e.boundary(w));
        self.report
            .record("delta_adjoint_of_boundary", lhs == rhs, || {
                format!("{v:?} {w:?}")
            });
        // the explicit formula for δ is the negative of that adjoint
        let lhs = e.pair(&e.delta(v), w);
        self.report
            .record("delta_formula_antiadjoint", lhs == f.neg(&rhs), || {
                format!("{v:?} {w:?}")
            });
        if let Some(k) = v.degree() {
            let lhs = e.boundary(&e.wedge(v, w));
            let rhs = e.wedge(&e.boundary(v), w).add(
                &f,
                &e.wedge(v, &e.boundary(w))
                    .scale(&f, &sign_of(&f, k % 2 == 1)),
            );
            self.report
                .record("leibniz", lhs == rhs, || format!("{v:?} {w:?}"));
        }
    }

    fn duality(&mut self, v: &ExtVector<F>, w: &ExtVector<F>) {
        let e = self.ext;
        let f = self.f().clone();
        let n = e.ground_size();
        let Some(k) = v.degree() else { return };
        let twice = e.duality_d(&e.duality_d(v));
        let factor = f.mul(
            &sign_of(&f, (k * (n - k)) % 2 == 1),
            &e.inverse_weight_of(e.ground()),
        );
        self.report
            .record("duality_squared", twice == v.scale(&f, &factor), || {
                format!("{v:?}")
            });
        // 𝔻 intertwines ∂ and δ up to sign, with δ the adjoint of ∂
        let lhs = e.delta_adjoint(&e.duality_d(v));
        let rhs = e
            .duality_d(&e.boundary(v))
            .scale(&f, &sign_of(&f, (k + 1) % 2 == 1));
        self.report
            .record("duality_intertwines_delta", lhs == rhs, || format!("{v:?}"));
        let lhs = e.boundary(&e.duality_d(v));
        let rhs = e
            .duality_d(&e.delta_adjoint(v))
            .scale(&f, &sign_of(&f, k % 2 == 1));
        self.report
            .record("duality_intertwines_boundary", lhs == rhs, || {
                format!("{v:?}")
            });
        // 𝔻 is self-adjoint up to sign, for w of complementary degree
        if w.degree() == Some(n - k) || w.is_zero() {
            let lhs = e.pair(&e.duality_d(v), w);
            let rhs = f.mul(
                &sign_of(&f, (k * (n - k)) % 2 == 1),
                &e.pair(v, &e.duality_d(w)),
            );
            self.report
                .record("duality_adjoint", lhs == rhs, || format!("{v:?} {w:?}"));
        }
    }
}

/// Every identity on every tuple of monomials. Cost grows like `8^n`; meant for `n ≤ 5`.
pub fn exhaustive<F: Field>(ext: &Exterior<F>) -> IdentityReport {
    let mut c = Checker::new(ext);
    let all: Vec<Subset> = subset::subsets_of(ext.ground()).collect();
    let mono = |s: Subset| ext.monomial(s);
    for &s in &all {
        for &t in &all {
            c.differentials(&mono(s), &mono(t));
            c.duality(&mono(s), &mono(t));
            for &u in &all {
                c.adjunctions(&mono(s), &mono(t), &mono(u));
            }
        }
    }
    for &split in &all {
        let inside: Vec<Subset> = subset::subsets_of(split).collect();
        let outside: Vec<Subset> = subset::subsets_of(ext.ground() & !split).collect();
        for &x in &inside {
            for &xp in &inside {
                for &y in &outside {
                    for &yp in &outside {
                        c.split_products(&mono(x), &mono(xp), &mono(y), &mono(yp));
                    }
                }
            }
        }
    }
    c.report
}

fn random_subset_of(rng: &mut impl Rng, universe: Subset, k: usize) -> Subset {
    let mut elems: Vec<usize> = subset::elements(universe).collect();
    elems.shuffle(rng);
    subset::from_elements(elems.into_iter().take(k))
}

/// Homogeneous vector of degree `k` supported in `universe`, with a few small coefficients.
fn random_vector<F: Field>(
    ext: &Exterior<F>,
    rng: &mut impl Rng,
    universe: Subset,
    k: usize,
) -> ExtVector<F> {
    let f = ext.field();
    let terms = rng.gen_range(1..=3);
    let mut v = ExtVector::zero();
    for _ in 0..terms {
        let s = random_subset_of(rng, universe, k.min(size(universe)));
        let c = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
        v.add_term(f, s, f.from_i64(c));
    }
    v
}

/// Every identity on `samples` random argument tuples.
pub fn randomized<F: Field>(
    ext: &Exterior<F>,
    rng: &mut impl Rng,
    samples: usize,
) -> IdentityReport {
    let n = ext.ground_size();
    let g = ext.ground();
    let mut c = Checker::new(ext);
    for _ in 0..samples {
        let (a, b, d) = (
            rng.gen_range(0..=n),
            rng.gen_range(0..=n),
            rng.gen_range(0..=n),
        );
        let x = random_vector(ext, rng, g, a);
        let y = random_vector(ext, rng, g, b);
        let z = random_vector(ext, rng, g, d);
        c.adjunctions(&x, &y, &z);
        c.differentials(&x, &y);
        let w = random_vector(ext, rng, g, n - a);
        c.duality(&x, &w);

        let split_size = rng.gen_range(0..=n);
        let split = random_subset_of(rng, g, split_size);
        let inner = size(split);
        let outer = n - inner;
        let (i1, i2) = (rng.gen_range(0..=inner), rng.gen_range(0..=inner));
        let (o1, o2) = (rng.gen_range(0..=outer), rng.gen_range(0..=outer));
        c.split_products(
            &random_vector(ext, rng, split, i1),
            &random_vector(ext, rng, split, i2),
            &random_vector(ext, rng, g & !split, o1),
            &random_vector(ext, rng, g & !split, o2),
        );
    }
    c.report
}

/// Sign in the splitting of 𝔻 along a flat `K` of rank `r'` in a matroid of rank `r`, as derived
/// from the product rule: `ε(K, I∖K)·(-1)^{(|K|-r')(n-|K|)}`.
pub fn flat_splitting_sign_odd(n: usize, k: Subset, rank_k: usize) -> bool {
    let complement = subset::full(n) & !k;
    eps_odd(k, complement) ^ (((size(k) - rank_k) * (n - size(k))) % 2 == 1)
}

/// The rank-only sign `ε(K, I∖K)·(-1)^{r'(r-r')}`.
pub fn flat_splitting_rank_sign_odd(n: usize, k: Subset, rank_k: usize, rank: usize) -> bool {
    let complement = subset::full(n) & !k;
    eps_odd(k, complement) ^ ((rank_k * (rank - rank_k)) % 2 == 1)
}

/// Identities relative to a matroid on the same ground set: the splittings of `∂, δ` on
/// `B(M)`, the Laplacian, duality between `B(M)` and `B(M*)`, and the splitting of 𝔻 along flats.
pub fn matroid_checks<F: Field>(ext: &Exterior<F>, m: &Matroid) -> IdentityReport {
    assert_eq!(ext.ground_size(), m.ground_size(), "ground sets differ");
    let f = ext.field().clone();
    let n = m.ground_size();
    let r = m.rank();
    let mut report = IdentityReport::default();
    let bases = m.bases().to_vec();
    let dual = m.dual();
    let dual_bases = dual.bases().to_vec();
    let total_weight = (0..n).fold(f.zero(), |acc, i| f.add(&acc, ext.weight(i)));

    for &b in &bases {
        let v = ext.monomial(b);
        let dh = ext.boundary_h(m, &v).expect("monomial is homogeneous");
        report.record("boundary_is_h_on_bases", dh == ext.boundary(&v), || {
            subset::format(b)
        });
        let dv = ext.delta_v(m, &v).expect("monomial is homogeneous");
        report.record("delta_is_v_on_bases", dv == ext.delta(&v), || {
            subset::format(b)
        });

        // Δ_h + Δ_v with δ the adjoint; on B(M) only two of the four terms survive
        let adj = |x: &ExtVector<F>| x.neg(&f);
        let lap_h = adj(&ext.delta_h(m, &dh).expect("homogeneous"));
        let lap_v = ext.boundary_v(m, &adj(&dv)).expect("homogeneous");
        let zero_h = ext.delta_h(m, &v).expect("homogeneous");
        let zero_v = ext.boundary_v(m, &v).expect("homogeneous");
        let laplacian = lap_h.add(&f, &lap_v);
        report.record(
            "laplacian",
            zero_h.is_zero() && zero_v.is_zero() && laplacian == v.scale(&f, &total_weight),
            || subset::format(b),
        );

        let d = ext.duality_d(&v);
        let in_dual = d.support().all(|s| dual.is_basis(s));
        report.record("duality_maps_bases", in_dual, || subset::format(b));
        for &c in &dual_bases {
            let w = ext.monomial(c);
            let lhs = ext.pair(&d, &w);
            let rhs = f.mul(
                &sign_of(&f, (r * (n - r)) % 2 == 1),
                &ext.pair(&v, &ext.duality_d(&w)),
            );
            report.record("duality_adjoint_bases", lhs == rhs, || {
                format!("{} {}", subset::format(b), subset::format(c))
            });
        }
    }

    // 𝔻 carries ker ∂ into ker δ of the dual and vice versa
    let ker = |op: &dyn Fn(&ExtVector<F>) -> ExtVector<F>, codomain: &[Subset]| {
        let mat = ext.operator_matrix(&bases, codomain, op);
        kernel_basis(&mat)
            .columns()
            .into_iter()
            .map(|c| ExtVector::from_coords(&f, &bases, &c))
            .collect::<Vec<_>>()
    };
    let below =
        crate::exterior::monomial_basis(m, r.saturating_sub(1), r.saturating_sub(1)).monomials;
    let above = crate::exterior::monomial_basis(m, (r + 1).min(n), r).monomials;
    let u = if r == 0 {
        bases.iter().map(|&b| ext.monomial(b)).collect()
    } else {
        ker(&|x| ext.boundary(x), &below)
    };
    let u_check = if r == n {
        bases.iter().map(|&b| ext.monomial(b)).collect()
    } else {
        ker(&|x| ext.delta(x), &above)
    };
    for x in &u {
        let ok = ext.delta(&ext.duality_d(x)).is_zero();
        report.record("duality_maps_u", ok, || format!("{x:?}"));
    }
    for x in &u_check {
        let ok = ext.boundary(&ext.duality_d(x)).is_zero();
        report.record("duality_maps_u_check", ok, || format!("{x:?}"));
    }

    let (checked, failed) =
        flat_splitting_counts(ext, m, |k, rank_k| flat_splitting_sign_odd(n, k, rank_k));
    report.record_counts("duality_splits_on_flats", checked, failed);
    report
}

/// Checks `𝔻(x ∧ y) = ± 𝔻^K(y) ∧ 𝔻_K(x)` over every flat `K`, every basis `x` of `M(K)`
/// and every basis `y` of `M/K`, with the sign supplied by `sign_odd(K, r')`.
/// Returns `(instances checked, instances failed)`.
pub fn flat_splitting_counts<F: Field>(
    ext: &Exterior<F>,
    m: &Matroid,
    sign_odd: impl Fn(Subset, usize) -> bool,
) -> (u64, u64) {
    let f = ext.field();
    let g = m.ground();
    let mut checked = 0;
    let mut failed = 0;
    for k in m.flats() {
        let rank_k = m.rank_of(k);
        let inner = m.restriction(k).expect("flat is a subset");
        let outer = m.minor(k, g).expect("flat is a subset");
        let sign = sign_of(f, sign_odd(k, rank_k));
        for &bx in inner.matroid.bases() {
            let x = ext.monomial(inner.to_ambient(bx));
            for &by in outer.matroid.bases() {
                let y = ext.monomial(outer.to_ambient(by));
                let lhs = ext.duality_d(&ext.wedge(&x, &y));
                let rhs = ext
                    .wedge(&ext.duality_on(g & !k, &y), &ext.duality_on(k, &x))
                    .scale(f, &sign);
                checked += 1;
                if lhs != rhs {
                    failed += 1;
                }
            }
        }
    }
    (checked, failed)
}

/// The flat splitting with the rank-only sign; reported separately because it does
/// not hold in general (see [`flat_splitting_sign_odd`]).
pub fn flat_splitting_rank_sign_counts<F: Field>(ext: &Exterior<F>, m: &Matroid) -> (u64, u64) {
    let (n, r) = (m.ground_size(), m.rank());
    flat_splitting_counts(ext, m, |k, rank_k| {
        flat_splitting_rank_sign_odd(n, k, rank_k, r)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::k4;
    use crate::xalg::{PrimeField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exhaustive_small_ground_sets() {
        for n in 0..=3 {
            let weights: Vec<i64> = (0..n as i64).map(|i| i + 2).collect();
            let ext = Exterior::new(&Rationals, &weights).unwrap();
            let report = exhaustive(&ext);
            assert!(report.passed(), "n = {n}: {:?}", report.examples);
        }
    }

    #[test]
    fn randomized_over_prime_field() {
        let f = PrimeField::new(7).unwrap();
        let ext = Exterior::new(&f, &[1, 2, 3, 4, 5, 6]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let report = randomized(&ext, &mut rng, 50);
        assert!(report.passed(), "{:?}", report.examples);
    }

    #[test]
    fn k4_matroid_checks() {
        let ext = Exterior::new(&Rationals, &[2, 3, 5, 7, 11, 13]).unwrap();
        let report = matroid_checks(&ext, &k4());
        assert!(report.passed(), "{:?}", report.examples);
        assert!(report.checked["duality_splits_on_flats"] > 0);
        let (checked, failed) = flat_splitting_rank_sign_counts(&ext, &k4());
        assert!(checked > 0 && failed > 0);
    }
}
