//! The acceptance fixtures: twelve criteria, each a list of named clauses.
//!
//! A clause marked `known_bad` is computed exactly as stated but cannot hold; the
//! criterion then reports FAIL without counting as an unexpected failure.

use std::time::{Duration, Instant};

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exterior::identities::{
    exhaustive, flat_splitting_rank_sign_counts, matroid_checks, randomized,
};
use crate::exterior::Exterior;
use crate::matroid::subset::{self, Subset};
use crate::matroid::{k4, Matroid};
use crate::schur::*;
use crate::xalg::{valuation, PrimeField, Rationals};

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub name: String,
    pub ok: bool,
    pub known_bad: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Criterion {
    pub id: u32,
    pub title: String,
    pub clauses: Vec<Clause>,
    pub notes: Vec<String>,
}

impl Criterion {
    fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.clauses.push(Clause {
            name: name.into(),
            ok,
            known_bad: false,
        });
    }

    /// A clause that is computed and reported but is known not to hold.
    fn check_known_bad(&mut self, name: impl Into<String>, ok: bool) {
        self.clauses.push(Clause {
            name: name.into(),
            ok,
            known_bad: true,
        });
    }

    fn within(&mut self, what: &str, start: Instant, budget: Duration) {
        let took = start.elapsed();
        self.check(
            format!("{what} took {took:.2?} (budget {budget:?})"),
            took <= budget,
        );
    }

    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.ok)
    }

    /// Failing clauses that are not known to be unattainable.
    pub fn unexpected(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| !c.ok && !c.known_bad)
    }

    /// `PASS criterion 3: K4 character table (20 checks)` followed by indented details.
    pub fn render(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let mut out = format!(
            "{verdict} criterion {}: {} ({} checks)\n",
            self.id,
            self.title,
            self.clauses.len()
        );
        for cl in self.clauses.iter().filter(|cl| !cl.ok) {
            let tag = if cl.known_bad { "known" } else { "UNEXPECTED" };
            out.push_str(&format!("    {tag}: {}\n", cl.name));
        }
        for n in &self.notes {
            out.push_str(&format!("    note: {n}\n"));
        }
        out
    }
}

fn unit(m: &Matroid) -> Vec<i64> {
    vec![1; m.ground_size()]
}

fn q_datum(m: &Matroid) -> RingelDatum<Rationals> {
    build_datum(m, &unit(m), &Rationals).expect("fixture")
}

fn p_datum(m: &Matroid, p: u64) -> RingelDatum<PrimeField> {
    build_datum(m, &unit(m), &PrimeField::new(p).expect("fixture")).expect("fixture")
}

fn ch(pairs: &[(Subset, u64)]) -> Character {
    Character::from_pairs(pairs.iter().copied())
}

fn c1() -> Criterion {
    let mut c = Criterion::default();
    for n in 2..=8 {
        let m = Matroid::uniform(1, n).expect("fixture");
        let top = m.ground();
        for p in [2, 3, 5, 7] {
            let start = Instant::now();
            let q = q_datum(&m);
            let d = p_datum(&m, p);
            let divides = (n as u64).is_multiple_of(p);
            let at = format!("M{n}, p={p}");
            c.check(
                format!("{at}: ch Δ(∅)"),
                standard_character(&q, 0).expect("fixture") == ch(&[(0, 1), (top, n as u64 - 1)]),
            );
            let expect_l = if divides { n as u64 - 2 } else { n as u64 - 1 };
            let l = simple_character(&d, 0).expect("fixture");
            let expect = if expect_l == 0 {
                ch(&[(0, 1)])
            } else {
                ch(&[(0, 1), (top, expect_l)])
            };
            c.check(format!("{at}: ch L(∅) = {}", l.display()), l == expect);
            let mult = decomposition_matrix(&d).expect("fixture").entry(0, top);
            c.check(
                format!("{at}: [Δ(∅):L(I)] = {mult}"),
                (mult == 1) == divides && mult <= 1,
            );
            c.within(&at, start, Duration::from_secs(1));
        }
    }
    c
}

fn c2() -> Criterion {
    let mut c = Criterion::default();
    for n in 2..=8 {
        let m = Matroid::uniform(1, n).expect("fixture").dual();
        let top = m.ground();
        for p in [2, 3, 5, 7] {
            let start = Instant::now();
            let q = q_datum(&m);
            let d = p_datum(&m, p);
            let divides = (n as u64).is_multiple_of(p);
            let at = format!("M{n}*, p={p}");
            c.check(
                format!("{at}: ch Δ(∅)"),
                standard_character(&q, 0).expect("fixture") == ch(&[(0, 1), (top, 1)]),
            );
            let l = simple_character(&d, 0).expect("fixture");
            let stated = if divides {
                ch(&[(0, 1), (top, 1)])
            } else {
                ch(&[(0, 1)])
            };
            c.check_known_bad(
                format!(
                    "{at}: ch L(∅) = {} (stated {})",
                    l.display(),
                    stated.display()
                ),
                l == stated,
            );
            let mult = decomposition_matrix(&d).expect("fixture").entry(0, top);
            c.check(
                format!("{at}: [Δ(∅):L(I)] = {mult}"),
                (mult == 1) == divides && mult <= 1,
            );
            c.within(&at, start, Duration::from_secs(1));
        }
    }
    c
}

fn c3() -> Criterion {
    let mut c = Criterion::default();
    let start = Instant::now();
    let g = k4();
    let top = g.ground();
    let q = q_datum(&g);
    c.check("six cyclic flats", q.flats().len() == 6);
    let tri: Vec<Subset> = q
        .flats()
        .iter()
        .copied()
        .filter(|&f| subset::size(f) == 3)
        .collect();
    c.check("four triangles", tri.len() == 4);
    let mut full: Vec<(Subset, u64)> = vec![(0, 1), (top, 6)];
    full.extend(tri.iter().map(|&t| (t, 1)));
    c.check(
        "ch Δ(∅)",
        standard_character(&q, 0).expect("fixture") == ch(&full),
    );
    for &t in &tri {
        c.check(
            format!("ch Δ({})", subset::format(t)),
            standard_character(&q, t).expect("fixture") == ch(&[(t, 1), (top, 2)]),
        );
    }
    for p in PRIMES {
        let d = p_datum(&g, p);
        let l = simple_character(&d, 0).expect("fixture");
        let expect = match p {
            2 => {
                let mut v = full.clone();
                v[1] = (top, 4);
                ch(&v)
            }
            3 => ch(&[(0, 1), (top, 3)]),
            _ => ch(&full),
        };
        c.check(format!("p={p}: ch L(∅) = {}", l.display()), l == expect);
        let mult = decomposition_matrix(&d).expect("fixture").entry(0, top);
        let want = match p {
            2 => 2,
            3 => 3,
            _ => 0,
        };
        c.check(format!("p={p}: [Δ(∅):L(I)] = {mult}"), mult == want);
    }
    c.within("K4 tables", start, Duration::from_secs(10));
    c
}

fn c4() -> Criterion {
    let mut c = Criterion::default();
    for nm in library() {
        let m = &nm.matroid;
        for p in PRIMES {
            let d = p_datum(m, p);
            let thm = semisimple_test(m, &unit(m), p);
            let decomp = decomposition_matrix(&d).expect("fixture").is_identity();
            c.check(
                format!(
                    "{} p={p}: criterion {thm}, decomposition identity {decomp}",
                    nm.name
                ),
                thm == decomp,
            );
        }
    }
    c
}

fn c5() -> Criterion {
    let mut c = Criterion::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for nm in library() {
        let m = &nm.matroid;
        let start = Instant::now();
        let cmp = compare_determinant(m, &unit(m), &PRIMES).expect("fixture");
        c.check(
            format!(
                "{}: |det| = {} against {}",
                nm.name,
                cmp.gram.abs(),
                cmp.predicted.product
            ),
            cmp.abs_equal && cmp.holds,
        );
        for _ in 0..3 {
            let w: Vec<i64> = (0..m.ground_size())
                .map(|_| rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 })
                .collect();
            let cmp = compare_determinant(m, &w, &PRIMES).expect("fixture");
            c.check(
                format!("{} weights {w:?}: valuations {:?}", nm.name, cmp.valuations),
                cmp.holds,
            );
        }
        c.within(&nm.name, start, Duration::from_secs(5));
    }
    // valuation form on every minor between cyclic flats, unit weights
    for nm in library() {
        let m = &nm.matroid;
        let poset = m.cyclic_flats();
        for (i, j) in poset.nested_pairs() {
            let (e, f) = (poset.flats()[i], poset.flats()[j]);
            let minor = m.minor(e, f).expect("fixture").matroid;
            if minor.ground_size() == 0 {
                continue;
            }
            let gram = gram_det_u(&minor, &unit(&minor)).expect("fixture");
            let pred = bv_predicted(&minor, &unit(&minor)).expect("fixture");
            let ok = PRIMES.iter().all(|&p| {
                let predicted: u64 = pred
                    .factors
                    .iter()
                    .map(|x| x.exponent * valuation(&x.base.into(), p).unwrap_or(0) as u64)
                    .sum();
                valuation(gram.numer(), p).unwrap_or(0) as u64 == predicted
                    && gram.denom() == &1.into()
            });
            c.check(
                format!(
                    "{} minor ({}, {})",
                    nm.name,
                    subset::format(e),
                    subset::format(f)
                ),
                ok,
            );
        }
    }
    c
}

fn c6() -> Criterion {
    let mut c = Criterion::default();
    let start = Instant::now();
    for nm in library() {
        let rep = check_axioms(&q_datum(&nm.matroid));
        for key in [
            "a1_diagonal",
            "a1_triangular",
            "a2_u_perp",
            "a2_u_check_perp",
            "a3",
            "subring_u",
            "subring_u_check",
            "u_orthogonal_u_check",
            "u_perp_is_image_delta_h",
            "contraction_stability",
        ] {
            let n = rep.checked.get(key).copied().unwrap_or(0);
            // pieces without a proper nonempty minor give no A3 or orthogonality instances
            let needs_instances = !matches!(key, "a3" | "u_orthogonal_u_check" | "subring_u_check");
            c.check(
                format!(
                    "{} {key}: {n} instances, {} failed",
                    nm.name,
                    rep.failed.get(key).unwrap_or(&0)
                ),
                !rep.failed.contains_key(key) && (n > 0 || !needs_instances),
            );
        }
        c.check(format!("{}: all checks", nm.name), rep.passed());
    }
    c.within("axiom suite", start, Duration::from_secs(60));
    c
}

fn c7() -> Criterion {
    let mut c = Criterion::default();
    let start = Instant::now();
    for (name, m) in [
        ("U1,2", Matroid::uniform(1, 2).expect("fixture")),
        ("U1,3", Matroid::uniform(1, 3).expect("fixture")),
        ("U2,3", Matroid::uniform(2, 3).expect("fixture")),
    ] {
        let d = q_datum(&m);
        let dims = algebra_dims(&d);
        let model = operator_model(&d, DEFAULT_DIMENSION_CAP).expect("fixture");
        let span = model.r_dimension(&Rationals).expect("fixture");
        let cent = model.centralizer_of_r_check(&Rationals).expect("fixture");
        let (pairs, bad) = model.commutation().expect("fixture");
        c.check(
            format!("{name}: dim span R = {span}, formula {}", dims.dim_r),
            span == dims.dim_r,
        );
        c.check(format!("{name}: dim End_Ř(B) = {cent}"), cent == dims.dim_r);
        c.check(
            format!("{name}: {pairs} generator pairs, {bad} not commuting"),
            bad == 0 && pairs > 0,
        );
        if name == "U1,2" {
            c.check("U1,2: dim R = 5", dims.dim_r == 5);
        }
    }
    c.within("double centralizer", start, Duration::from_secs(10));
    c
}

fn c8() -> Criterion {
    let mut c = Criterion::default();
    for nm in library() {
        let d = q_datum(&nm.matroid);
        for &e in d.flats() {
            let v = tilting_character_check(&d, e).expect("fixture");
            c.check_known_bad(
                format!(
                    "{} E={}: {} vs {}",
                    nm.name,
                    subset::format(e),
                    v.lhs.display(),
                    v.rhs.display()
                ),
                v.holds,
            );
            let w = tilting_filtration_check(&d, e).expect("fixture");
            c.check(
                format!("{} G={}: filtration of B_G", nm.name, subset::format(e)),
                w.holds,
            );
        }
    }
    c.notes
        .push("the Δ-filtration of B_G with fixed upper flat holds everywhere".into());
    c
}

fn c9() -> Criterion {
    let mut c = Criterion::default();
    for nm in library() {
        let m = &nm.matroid;
        let dual = m.dual();
        let full = m.ground();
        let mut mapped: Vec<Subset> = m
            .cyclic_flats()
            .flats()
            .iter()
            .map(|&f| full & !f)
            .collect();
        mapped.sort_unstable();
        let mut theirs = dual.cyclic_flats().flats().to_vec();
        theirs.sort_unstable();
        c.check(
            format!("{}: complement of cyclic flats", nm.name),
            mapped == theirs,
        );

        let (d, dd) = (q_datum(m), q_datum(&dual));
        let ok = d.pieces().all(|p| {
            p.u.len() == dd.dim_u_check(full & !p.upper, full & !p.lower)
                && p.u_check.len() == dd.dim_u(full & !p.upper, full & !p.lower)
        });
        c.check(format!("{}: dim U(M) = dim Ǔ(M*) piecewise", nm.name), ok);
        let (a, b) = (algebra_dims(&d), algebra_dims(&dd));
        c.check(
            format!(
                "{}: dim Ř(M) = {} = dim R(M*) = {}",
                nm.name, a.dim_r_check, b.dim_r
            ),
            a.dim_r_check == b.dim_r,
        );
    }
    c
}

fn c10() -> Criterion {
    let mut c = Criterion::default();
    let start = Instant::now();
    for nm in library() {
        let rep = krs_checks(&nm.matroid);
        c.check(
            format!("{}: {:?}", nm.name, rep.checked.keys().collect::<Vec<_>>()),
            rep.passed() && rep.checked.len() == 3,
        );
    }
    let g = k4();
    let flat_sum: u64 = g
        .flats()
        .into_iter()
        .map(|v| {
            g.restriction(v).expect("fixture").matroid.mu_plus_dual()
                * g.contraction(v).expect("fixture").matroid.mu_plus()
        })
        .sum();
    c.check(
        format!("K4: 16 = {flat_sum}"),
        flat_sum == 16 && g.bases().len() == 16,
    );
    c.within("KRS identities", start, Duration::from_secs(10));
    c
}

fn c11() -> Criterion {
    let mut c = Criterion::default();
    for nm in library() {
        let m = &nm.matroid;
        let q = q_datum(m);
        for p in PRIMES {
            let d = p_datum(m, p);
            for &e in q.flats() {
                let rhs = jantzen_rhs(&d, p, e).expect("fixture");
                let gap = standard_character(&q, e)
                    .expect("fixture")
                    .difference(&simple_character(&d, e).expect("fixture"));
                let dominated = q
                    .flats()
                    .iter()
                    .all(|&f| rhs.expanded.get(f) as i64 >= gap.get(&f).copied().unwrap_or(0));
                let zero_implies_equal = !rhs.is_zero() || gap.values().all(|&x| x == 0);
                c.check(
                    format!("{} p={p} E={}", nm.name, subset::format(e)),
                    dominated && zero_implies_equal,
                );
            }
        }
    }
    for n in 2..=8u64 {
        let m = Matroid::uniform(1, n as usize).expect("fixture");
        for p in PRIMES
            .into_iter()
            .filter(|&p| n % p == 0 && (n / p) % p != 0)
        {
            let (q, d) = (q_datum(&m), p_datum(&m, p));
            let rhs = jantzen_rhs(&d, p, 0).expect("fixture");
            let gap = standard_character(&q, 0)
                .expect("fixture")
                .difference(&simple_character(&d, 0).expect("fixture"));
            let equal = q
                .flats()
                .iter()
                .all(|&f| rhs.expanded.get(f) as i64 == gap.get(&f).copied().unwrap_or(0));
            c.check(format!("M{n} p={p}: equality"), equal);
        }
    }
    let g = k4();
    let (q, d) = (q_datum(&g), p_datum(&g, 2));
    let rhs = jantzen_rhs(&d, 2, 0).expect("fixture");
    let gap = standard_character(&q, 0)
        .expect("fixture")
        .difference(&simple_character(&d, 0).expect("fixture"));
    c.check(
        format!("K4 p=2: RHS = {}", rhs.expanded.display()),
        rhs.expanded == ch(&[(g.ground(), 2)])
            && gap.get(&g.ground()) == Some(&2)
            && gap.values().filter(|&&x| x != 0).count() == 1,
    );
    c
}

fn c12() -> Criterion {
    let mut c = Criterion::default();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let weights = |rng: &mut ChaCha8Rng, n: usize| -> Vec<i64> {
        (0..n)
            .map(|_| rng.gen_range(1..=7) * if rng.gen_bool(0.5) { 1 } else { -1 })
            .collect()
    };
    for n in 1..=5 {
        let w = weights(&mut rng, n);
        let rep = exhaustive(&Exterior::new(&Rationals, &w).expect("fixture"));
        c.check(
            format!("exhaustive n={n}: {} instances", rep.total_checked()),
            rep.passed() && rep.total_checked() > 0,
        );
    }
    for n in 1..=8 {
        let w = weights(&mut rng, n);
        let ext = Exterior::new(&Rationals, &w).expect("fixture");
        let rep = randomized(&ext, &mut rng, 200);
        c.check(
            format!("randomized n={n}: {} instances", rep.total_checked()),
            rep.passed(),
        );
    }
    let (mut rank_sign_checked, mut rank_sign_failed) = (0, 0);
    for nm in library()
        .into_iter()
        .filter(|x| x.matroid.ground_size() <= 6)
    {
        let m = &nm.matroid;
        let w = weights(&mut rng, m.ground_size());
        let ext = Exterior::new(&Rationals, &w).expect("fixture");
        let rep = matroid_checks(&ext, m);
        c.check(
            format!(
                "{} (Laplacian, h/v splitting, duality): {} instances",
                nm.name,
                rep.total_checked()
            ),
            rep.passed(),
        );
        let (k, f) = flat_splitting_rank_sign_counts(&ext, m);
        rank_sign_checked += k;
        rank_sign_failed += f;
    }
    c.notes.push(format!(
        "The splitting of 𝔻 along flats with the rank-only sign (-1)^{{r'(r-r')}} fails on {rank_sign_failed} of {rank_sign_checked} instances; the corrected sign is checked above"
    ));
    c
}

pub const TITLES: [&str; 12] = [
    "M_n characters and multiplicities",
    "M_n* characters and multiplicities",
    "K4 character table",
    "semisimplicity criterion against decomposition matrices",
    "determinant formula",
    "axiom suite",
    "double centralizer",
    "tilting filtration",
    "duality",
    "KRS identities",
    "Jantzen sum",
    "exterior-algebra identities",
];

/// Runs criterion `id` (1 to 12).
pub fn run(id: u32) -> Option<Criterion> {
    let f: fn() -> Criterion = match id {
        1 => c1,
        2 => c2,
        3 => c3,
        4 => c4,
        5 => c5,
        6 => c6,
        7 => c7,
        8 => c8,
        9 => c9,
        10 => c10,
        11 => c11,
        12 => c12,
        _ => return None,
    };
    let mut c = f();
    c.id = id;
    c.title = TITLES[id as usize - 1].to_string();
    Some(c)
}

/// All twelve criteria in order. Sequential, so the per-item timing budgets are
/// measured without contention.
pub fn run_all() -> Vec<Criterion> {
    (1..=12).filter_map(run).collect()
}
