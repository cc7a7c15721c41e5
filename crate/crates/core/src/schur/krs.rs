use super::build_datum;
use crate::exterior::identities::IdentityReport;
use crate::matroid::subset;
use crate::matroid::{Matroid, TuttePoly};
use crate::xalg::Rationals;

/// `Σ_{A ⊆ I} T_{M(A)}(0,y) · T_{M/A}(x,0)`.
pub fn tutte_convolution(m: &Matroid) -> TuttePoly {
    let mut total = TuttePoly::zero();
    for a in subset::subsets_of(m.ground()) {
        let left = m
            .restriction(a)
            .expect("subset")
            .matroid
            .tutte()
            .at_x_zero();
        if left.is_zero() {
            continue;
        }
        let right = m
            .contraction(a)
            .expect("subset")
            .matroid
            .tutte()
            .at_y_zero();
        total = total.add(&left.mul(&right));
    }
    total
}

/// The three counting identities: bases as a sum over flats of passive-basis products,
/// its refinement over cyclic flats through `U ⊗ Ǔ`, and the Tutte convolution.
pub fn krs_checks(m: &Matroid) -> IdentityReport {
    let mut rep = IdentityReport::default();

    let flat_sum: u64 = m
        .flats()
        .into_iter()
        .map(|v| {
            m.restriction(v).expect("flat").matroid.mu_plus_dual()
                * m.contraction(v).expect("flat").matroid.mu_plus()
        })
        .sum();
    let count = m.bases().len() as u64;
    rep.record("krs_dimension", flat_sum == count, || {
        format!("{count} bases, flat sum {flat_sum}")
    });

    let d = build_datum(m, &vec![1; m.ground_size()], &Rationals).expect("unit weights");
    let (lo, hi) = (d.poset().smallest(), d.poset().largest());
    let refined: usize = d
        .flats()
        .iter()
        .map(|&e| d.dim_u(lo, e) * d.dim_u_check(e, hi))
        .sum();
    let whole = d.dim_piece(lo, hi);
    rep.record("krs_springer", refined == whole, || {
        format!("dim B = {whole}, Σ dim U·dim Ǔ = {refined}")
    });

    let conv = tutte_convolution(m);
    let t = m.tutte();
    rep.record("krs_tutte_convolution", conv == t, || {
        format!("{conv} ≠ {t}")
    });
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::k4;

    #[test]
    fn convolution_examples() {
        let m = Matroid::uniform(1, 2).unwrap();
        assert_eq!(tutte_convolution(&m), m.tutte());
        assert_eq!(tutte_convolution(&k4()), k4().tutte());
    }

    #[test]
    fn degenerate_and_k4() {
        for m in [
            Matroid::uniform(0, 1).unwrap(),
            Matroid::uniform(1, 1).unwrap(),
            Matroid::uniform(2, 5).unwrap(),
            k4(),
            k4().dual(),
        ] {
            let rep = krs_checks(&m);
            assert!(rep.passed(), "{:?}", rep.examples);
            assert_eq!(rep.checked.len(), 3);
        }
    }
}
