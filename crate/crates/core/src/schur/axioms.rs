use super::datum::Piece;
use super::RingelDatum;
use crate::exterior::identities::IdentityReport;
use crate::exterior::ExtVector;
use crate::matroid::subset::{self, size, Subset};
use crate::xalg::{orthogonal_complement, same_span, Field};

fn coords_of<F: Field>(d: &RingelDatum<F>, p: &Piece<F>, vs: &[ExtVector<F>]) -> Vec<Vec<F::Elem>> {
    vs.iter().map(|v| p.coords(d.field(), v)).collect()
}

fn inverse_weights<F: Field>(d: &RingelDatum<F>, p: &Piece<F>) -> Vec<F::Elem> {
    p.monomials
        .iter()
        .map(|&s| d.ext().inverse_weight_of(s))
        .collect()
}

/// Every axiom and structural lemma of the datum, on all pieces.
///
/// A3 is checked only on triples `(u, e_B, ǔ)` with `u ∈ U(E,F)`, `e_B` a monomial of
/// `B(E,G)` for `F ⊆ G` and `ǔ ∈ Ǔ(G,H)`; it is false on arbitrary triples.
pub fn check_axioms<F: Field>(d: &RingelDatum<F>) -> IdentityReport {
    let mut rep = IdentityReport::default();
    a1(d, &mut rep);
    a2(d, &mut rep);
    a3(d, &mut rep);
    subrings(d, &mut rep);
    orthogonality(d, &mut rep);
    perp_is_image_of_delta_h(d, &mut rep);
    contraction_stability(d, &mut rep);
    kernel_dimensions(d, &mut rep);
    rep
}

fn a1<F: Field>(d: &RingelDatum<F>, rep: &mut IdentityReport) {
    let f = d.field();
    for &e in d.flats() {
        let p = d.piece(e, e);
        let ok = p.is_some_and(|p| {
            p.monomials == [0]
                && p.u.len() == 1
                && p.u_check.len() == 1
                && f.is_one(&d.ext().pair(&d.ext().monomial(0), &d.ext().monomial(0)))
        });
        rep.record("a1_diagonal", ok, || format!("E = {}", subset::format(e)));
        for &g in d.flats() {
            let nested = subset::is_subset(e, g);
            rep.record("a1_triangular", d.piece(e, g).is_some() == nested, || {
                format!("({}, {})", subset::format(e), subset::format(g))
            });
        }
    }
}

fn a2<F: Field>(d: &RingelDatum<F>, rep: &mut IdentityReport) {
    let f = d.field();
    let ext = d.ext();
    for p in d.pieces() {
        let (e, top) = (p.lower, p.upper);
        let w = inverse_weights(d, p);

        // U(E,F)^⊥ = Σ_{E ⊆ G ⊊ F} B(E,G) ∧ Ǔ(G,F)
        let mut gens = Vec::new();
        for g in d
            .flats_above(e)
            .filter(|&g| g != top && subset::is_subset(g, top))
        {
            let (bg, ug) = (
                d.piece(e, g).expect("nested"),
                d.piece(g, top).expect("nested"),
            );
            for &s in &bg.monomials {
                for uc in &ug.u_check {
                    gens.push(ext.wedge(&ext.monomial(s), uc));
                }
            }
        }
        let perp = orthogonal_complement(f, &w, &coords_of(d, p, &p.u));
        let inside = gens.iter().all(|v| p.supports(v));
        let ok = inside && same_span(f, p.dim(), &perp, &coords_of(d, p, &gens));
        rep.record("a2_u_perp", ok, || {
            format!("({}, {})", subset::format(e), subset::format(top))
        });

        // Ǔ(E,F)^⊥ = Σ_{E ⊊ G ⊆ F} U(E,G) ∧ B(G,F)
        let mut gens = Vec::new();
        for g in d
            .flats_below(top)
            .filter(|&g| g != e && subset::is_subset(e, g))
        {
            let (ug, bg) = (
                d.piece(e, g).expect("nested"),
                d.piece(g, top).expect("nested"),
            );
            for u in &ug.u {
                for &s in &bg.monomials {
                    gens.push(ext.wedge(u, &ext.monomial(s)));
                }
            }
        }
        let perp = orthogonal_complement(f, &w, &coords_of(d, p, &p.u_check));
        let inside = gens.iter().all(|v| p.supports(v));
        let ok = inside && same_span(f, p.dim(), &perp, &coords_of(d, p, &gens));
        rep.record("a2_u_check_perp", ok, || {
            format!("({}, {})", subset::format(e), subset::format(top))
        });
    }
}

fn a3<F: Field>(d: &RingelDatum<F>, rep: &mut IdentityReport) {
    let ext = d.ext();
    for pu in d.pieces() {
        let (e, top) = (pu.lower, pu.upper);
        for g in d.flats_above(top) {
            let pb = d.piece(e, g).expect("nested");
            for h in d.flats_above(g) {
                let pc = d.piece(g, h).expect("nested");
                for u in &pu.u {
                    for &s in &pb.monomials {
                        let b = ext.monomial(s);
                        let ub = ext.contract_left(u, &b);
                        for uc in &pc.u_check {
                            let lhs = ext.wedge(&ub, uc);
                            let rhs = ext.contract_left(u, &ext.wedge(&b, uc));
                            rep.record("a3", lhs == rhs, || {
                                format!(
                                    "E={} F={} G={} H={} b={}",
                                    subset::format(e),
                                    subset::format(top),
                                    subset::format(g),
                                    subset::format(h),
                                    subset::format(s)
                                )
                            });
                        }
                    }
                }
            }
        }
    }
}

fn subrings<F: Field>(d: &RingelDatum<F>, rep: &mut IdentityReport) {
    let ext = d.ext();
    for p1 in d.pieces() {
        for g in d.flats_above(p1.upper) {
            let p2 = d.piece(p1.upper, g).expect("nested");
            let outer = d.piece(p1.lower, g).expect("nested");
            let ground = g & !p1.lower;
            for x in &p1.u {
                for y in &p2.u {
                    let w = ext.wedge(x, y);
                    let ok = outer.supports(&w) && ext.boundary(&w).is_zero();
                    rep.record("subring_u", ok, || {
                        format!(
                            "{} ⊆ {} ⊆ {}",
                            subset::format(p1.lower),
                            subset::format(p1.upper),
                            subset::format(g)
                        )
                    });
                }
            }
            for x in &p1.u_check {
                for y in &p2.u_check {
                    let w = ext.wedge(x, y);
                    let ok = outer.supports(&w) && ext.delta_on(ground, &w).is_zero();
                    rep.record("subring_u_check", ok, || {
                        format!(
                            "{} ⊆ {} ⊆ {}",
                            subset::format(p1.lower),
                            subset::format(p1.upper),
                            subset::format(g)
                        )
                    });
                }
            }
        }
    }
}

fn orthogonality<F: Field>(d: &RingelDatum<F>, rep: &mut IdentityReport) {
    let f = d.field();
    for p in d.pieces().filter(|p| p.lower != p.upper) {
        for u in &p.u {
            for uc in &p.u_check {
                rep.record(
                    "u_orthogonal_u_check",
                    f.is_zero(&d.ext().pair(u, uc)),
                    || format!("({}, {})", subset::format(p.lower), subset::format(p.upper)),
                );
            }
        }
    }
}

/// Independent sets of `M(F)/E` of size `k`, as ambient subsets of `F∖E`.
fn independent_in_minor<F: Field>(d: &RingelDatum<F>, p: &Piece<F>, k: usize) -> Vec<Subset> {
    let m = d.matroid();
    let base = m.rank_of(p.lower);
    subset::k_subsets(p.ground(), k)
        .into_iter()
        .filter(|&s| m.rank_of(s | p.lower) == base + size(s))
        .collect()
}

fn perp_is_image_of_delta_h<F: Field>(d: &RingelDatum<F>, rep: &mut IdentityReport) {
    let f = d.field();
    let ext = d.ext();
    for p in d.pieces().filter(|p| p.degree > 0) {
        let ground = p.ground();
        // terms of δ landing in the piece are exactly its rank-raising part
        let image: Vec<Vec<F::Elem>> = independent_in_minor(d, p, p.degree - 1)
            .into_iter()
            .map(|s| p.coords(f, &ext.delta_on(ground, &ext.monomial(s))))
            .collect();
        let perp = orthogonal_complement(f, &inverse_weights(d, p), &coords_of(d, p, &p.u));
        rep.record(
            "u_perp_is_image_delta_h",
            same_span(f, p.dim(), &perp, &image),
            || format!("({}, {})", subset::format(p.lower), subset::format(p.upper)),
        );
    }
}

fn contraction_stability<F: Field>(d: &RingelDatum<F>, rep: &mut IdentityReport) {
    let m = d.matroid();
    let ext = d.ext();
    for p in d.pieces() {
        for k in 0..=p.degree {
            for s in independent_in_minor(d, p, k) {
                let cl = m.closure(s | p.lower);
                let minor = m.minor(cl, p.upper).expect("closure inside a flat");
                let bases: Vec<Subset> = minor
                    .matroid
                    .bases()
                    .iter()
                    .map(|&b| minor.to_ambient(b))
                    .collect();
                for u in &p.u {
                    let v = ext.contract_left(&ext.monomial(s), u);
                    let ok = ext.boundary(&v).is_zero()
                        && v.support().all(|t| bases.binary_search(&t).is_ok());
                    rep.record("contraction_stability", ok, || {
                        format!(
                            "({}, {}) S = {}",
                            subset::format(p.lower),
                            subset::format(p.upper),
                            subset::format(s)
                        )
                    });
                }
            }
        }
    }
}

fn kernel_dimensions<F: Field>(d: &RingelDatum<F>, rep: &mut IdentityReport) {
    for p in d.pieces() {
        let minor = d.matroid().minor(p.lower, p.upper).expect("nested").matroid;
        let at = || format!("({}, {})", subset::format(p.lower), subset::format(p.upper));
        rep.record("kernel_dim_u", p.u.len() as u64 == minor.mu_plus_dual(), at);
        rep.record(
            "kernel_dim_u_check",
            p.u_check.len() as u64 == minor.mu_plus(),
            at,
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{k4, Matroid};
    use crate::schur::{build_datum, library};
    use crate::xalg::{PrimeField, Rationals};

    #[test]
    fn small_matroids_pass() {
        for m in [
            Matroid::uniform(1, 3).unwrap(),
            Matroid::uniform(2, 4).unwrap(),
            k4(),
        ] {
            let d = build_datum(&m, &vec![1; m.ground_size()], &Rationals).unwrap();
            let rep = check_axioms(&d);
            assert!(rep.passed(), "{:?}", rep.examples);
            for key in [
                "a1_diagonal",
                "a2_u_perp",
                "a3",
                "contraction_stability",
                "subring_u",
            ] {
                assert!(rep.checked[key] > 0, "{key}");
            }
        }
    }

    #[test]
    fn weighted_and_modular() {
        let g = k4();
        let d = build_datum(&g, &[1, 2, 3, -1, 4, 5], &Rationals).unwrap();
        let rep = check_axioms(&d);
        assert!(rep.passed(), "{:?}", rep.examples);
        let d = build_datum(&g, &[1; 6], &PrimeField::new(7).unwrap()).unwrap();
        assert!(check_axioms(&d).passed());
    }

    #[test]
    fn library_duals() {
        for nm in library()
            .into_iter()
            .filter(|x| x.matroid.ground_size() <= 5)
        {
            let m = &nm.matroid;
            let d = build_datum(m, &vec![1; m.ground_size()], &Rationals).unwrap();
            let rep = check_axioms(&d);
            assert!(rep.passed(), "{}: {:?}", nm.name, rep.examples);
        }
    }
}
