use std::fmt::Write as _;

use anyhow::{anyhow, bail, Result};
use matroid_schur::exterior::identities::{exhaustive, matroid_checks};
use matroid_schur::exterior::Exterior;
use matroid_schur::matroid::subset::{self, Subset};
use matroid_schur::matroid::TuttePoly;
use matroid_schur::schur::{
    algebra_dims, bad_primes, build_datum, check_axioms, compare_determinant, decomposition_matrix,
    jantzen_check, krs_checks, operator_model, semisimple_test, simple_character,
    standard_character, CharacterTable, IdentityReport, Report, RingelDatum, SchurError,
};
use matroid_schur::selftest;
use matroid_schur::xalg::{format_rational, Field, PrimeField, Rationals};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::input::Loaded;

/// Primes used when a subcommand needs some and none were given.
pub const DEFAULT_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

pub struct Job {
    pub loaded: Loaded,
    pub weights: Vec<i64>,
    pub primes: Vec<u64>,
    pub flat: Option<Subset>,
    pub cap: usize,
}

/// What a subcommand produced. `passed` is false only when a checked identity failed.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub passed: bool,
}

impl Outcome {
    fn new(text: String, json: &impl Serialize, passed: bool) -> Result<Self> {
        Ok(Outcome {
            text,
            json: serde_json::to_value(json)?,
            passed,
        })
    }
}

impl Job {
    fn name(&self) -> &str {
        &self.loaded.name
    }

    fn rational(&self) -> Result<RingelDatum<Rationals>> {
        Ok(build_datum(
            &self.loaded.matroid,
            &self.weights,
            &Rationals,
        )?)
    }

    fn modular(&self, p: u64) -> Result<RingelDatum<PrimeField>> {
        Ok(build_datum(
            &self.loaded.matroid,
            &self.weights,
            &PrimeField::new(p)?,
        )?)
    }

    fn primes_or_default(&self) -> Vec<u64> {
        if self.primes.is_empty() {
            DEFAULT_PRIMES.to_vec()
        } else {
            self.primes.clone()
        }
    }

    /// Runs `f` once per prime on worker threads; results come back in prime order.
    fn per_prime<T: Send>(&self, f: impl Fn(u64) -> Result<T> + Sync) -> Result<Vec<T>> {
        self.primes.par_iter().map(|&p| f(p)).collect()
    }
}

fn field_label(p: Option<u64>) -> String {
    match p {
        Some(p) => format!("F_{p}"),
        None => "Q".to_string(),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn elements(s: Subset) -> Vec<usize> {
    subset::elements(s).collect()
}

/// Summary of a matroid. Keys are in alphabetical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Description {
    pub bases: usize,
    pub beta: u64,
    pub coloops: Vec<usize>,
    /// absent for the empty matroid
    pub connected: Option<bool>,
    pub cyclic_flats: Vec<Vec<usize>>,
    pub flats: usize,
    pub loops: Vec<usize>,
    pub mu_plus: u64,
    pub mu_plus_dual: u64,
    pub n: usize,
    pub name: String,
    pub rank: usize,
    pub tutte: TuttePoly,
}

pub fn describe(job: &Job) -> Result<Outcome> {
    let m = &job.loaded.matroid;
    let desc = Description {
        bases: m.bases().len(),
        beta: m.beta(),
        coloops: elements(m.coloops()),
        connected: m.is_connected().ok(),
        cyclic_flats: m
            .cyclic_flats()
            .flats()
            .iter()
            .map(|&f| elements(f))
            .collect(),
        flats: m.flats().len(),
        loops: elements(m.loops()),
        mu_plus: m.mu_plus(),
        mu_plus_dual: m.mu_plus_dual(),
        n: m.ground_size(),
        name: job.name().to_string(),
        rank: m.rank(),
        tutte: m.tutte(),
    };
    let list = |v: &[usize]| subset::format(subset::from_elements(v.iter().copied()));
    let mut text = String::new();
    let _ = writeln!(text, "matroid: {}", desc.name);
    let _ = writeln!(text, "n: {}", desc.n);
    let _ = writeln!(text, "rank: {}", desc.rank);
    let _ = writeln!(text, "bases: {}", desc.bases);
    let _ = writeln!(text, "loops: {}", list(&desc.loops));
    let _ = writeln!(text, "coloops: {}", list(&desc.coloops));
    let connected = desc.connected.map_or("n/a", yes_no);
    let _ = writeln!(text, "connected: {connected}");
    let _ = writeln!(text, "flats: {}", desc.flats);
    let cyclic: Vec<String> = desc.cyclic_flats.iter().map(|f| list(f)).collect();
    let _ = writeln!(
        text,
        "cyclic flats ({}): {}",
        cyclic.len(),
        cyclic.join(" ")
    );
    let _ = writeln!(text, "tutte: {}", desc.tutte);
    let _ = writeln!(text, "beta: {}", desc.beta);
    let _ = writeln!(text, "mu_plus: {}", desc.mu_plus);
    let _ = writeln!(text, "mu_plus_dual: {}", desc.mu_plus_dual);
    Outcome::new(text, &desc, true)
}

pub fn characters(job: &Job) -> Result<Outcome> {
    let q = job.rational()?;
    let mut standard = std::collections::BTreeMap::new();
    for &e in q.flats() {
        standard.insert(subset::format(e), standard_character(&q, e)?);
    }
    let (tables, reports) = if job.primes.is_empty() {
        let mut rep = Report::new(job.name(), &q);
        rep.standard_characters = standard;
        (vec![CharacterTable::build(&q, None)?], vec![rep])
    } else {
        job.per_prime(|p| {
            let d = job.modular(p)?;
            let mut rep = Report::new(job.name(), &d);
            rep.standard_characters = standard.clone();
            for &e in d.flats() {
                rep.simple_characters
                    .insert(subset::format(e), simple_character(&d, e)?);
            }
            Ok((CharacterTable::build(&q, Some(&d))?, rep))
        })?
        .into_iter()
        .unzip()
    };
    let text: Vec<String> = tables.iter().map(CharacterTable::render).collect();
    Outcome::new(text.join("\n"), &reports, true)
}

pub fn decomp(job: &Job) -> Result<Outcome> {
    fn one<F: Field>(job: &Job, d: &RingelDatum<F>) -> Result<Report> {
        let mut rep = Report::new(job.name(), d);
        rep.decomposition = Some(decomposition_matrix(d)?);
        Ok(rep)
    }
    let reports = if job.primes.is_empty() {
        vec![one(job, &job.rational()?)?]
    } else {
        job.per_prime(|p| one(job, &job.modular(p)?))?
    };
    let mut text = String::new();
    for rep in &reports {
        let dm = rep.decomposition.as_ref().expect("filled above");
        let _ = writeln!(
            text,
            "field {}: decomposition numbers (lower, upper) = multiplicity",
            field_label(rep.p)
        );
        for ((e, f), k) in dm.iter().filter(|&((e, f), k)| e != f && k > 0) {
            let _ = writeln!(
                text,
                "  ({}, {}) = {k}",
                subset::format(e),
                subset::format(f)
            );
        }
        let _ = writeln!(text, "  identity: {}", yes_no(dm.is_identity()));
    }
    Outcome::new(text, &reports, true)
}

pub fn semisimple(job: &Job) -> Result<Outcome> {
    let m = &job.loaded.matroid;
    let q = job.rational()?;
    let mut rep = Report::new(job.name(), &q);
    let bad = bad_primes(m, &job.weights);
    for p in job.primes_or_default() {
        rep.semisimple
            .insert(p, semisimple_test(m, &job.weights, p));
    }
    let mut text = String::new();
    if bad.every_prime {
        let _ = writeln!(text, "bad primes: all (some weight sum vanishes)");
    } else {
        let list: Vec<String> = bad.primes.iter().map(u64::to_string).collect();
        let _ = writeln!(text, "bad primes: {{{}}}", list.join(", "));
    }
    for (p, ok) in &rep.semisimple {
        let verdict = if *ok { "semisimple" } else { "not semisimple" };
        let _ = writeln!(text, "p = {p}: {verdict}");
    }
    rep.bad_primes = Some(bad);
    Outcome::new(text, &vec![rep], true)
}

pub fn det(job: &Job) -> Result<Outcome> {
    let q = job.rational()?;
    let cmp = compare_determinant(&job.loaded.matroid, &job.weights, &job.primes_or_default())?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "gram determinant on U: {}",
        format_rational(&cmp.gram)
    );
    let _ = writeln!(
        text,
        "predicted product: {}",
        format_rational(&cmp.predicted.product)
    );
    for f in &cmp.predicted.factors {
        let flat = subset::format(subset::from_elements(f.flat.iter().copied()));
        let _ = writeln!(text, "  flat {flat}: {}^{}", f.base, f.exponent);
    }
    let _ = writeln!(text, "equal in absolute value: {}", yes_no(cmp.abs_equal));
    for (p, (a, b)) in &cmp.valuations {
        let _ = writeln!(text, "  nu_{p}: {a} vs {b}");
    }
    let _ = writeln!(text, "holds: {}", yes_no(cmp.holds));
    let passed = cmp.holds;
    let mut rep = Report::new(job.name(), &q);
    rep.determinants.push(cmp);
    Outcome::new(text, &vec![rep], passed)
}

pub fn jantzen(job: &Job) -> Result<Outcome> {
    if job.primes.is_empty() {
        bail!("jantzen needs at least one --prime");
    }
    let reports = job.per_prime(|p| {
        let d = job.modular(p)?;
        let flats = match job.flat {
            Some(e) => vec![e],
            None => d.flats().to_vec(),
        };
        let mut rep = Report::new(job.name(), &d);
        for e in flats {
            rep.jantzen.push(jantzen_check(&d, e)?);
        }
        Ok(rep)
    })?;
    let mut text = String::new();
    for j in reports.iter().flat_map(|r| &r.jantzen) {
        let flat = subset::format(subset::from_elements(j.flat.iter().copied()));
        let gap: Vec<String> = j.gap.iter().map(|(f, k)| format!("{f}:{k}")).collect();
        let _ = writeln!(
            text,
            "p = {}, E = {flat}: sum {} = {}, gap {{{}}}, dominated: {}, equal: {}",
            j.p,
            j.rhs.coefficients.display(),
            j.rhs.expanded.display(),
            gap.join(", "),
            yes_no(j.dominated),
            yes_no(j.equal)
        );
    }
    let passed = reports.iter().all(Report::passed);
    Outcome::new(text, &reports, passed)
}

fn render_identities(title: &str, rep: &IdentityReport) -> String {
    let width = rep.checked.keys().map(String::len).max().unwrap_or(0);
    let mut text = format!("{title}\n");
    for (name, checked) in &rep.checked {
        let failed = rep.failed.get(name).copied().unwrap_or(0);
        let status = if failed == 0 { "ok" } else { "FAILED" };
        let _ = writeln!(
            text,
            "  {name:<width$}  {checked:>8} checked  {failed:>6} failed  {status}"
        );
    }
    for ex in &rep.examples {
        let _ = writeln!(text, "  failure: {ex}");
    }
    text
}

pub fn identities(job: &Job) -> Result<Outcome> {
    let m = &job.loaded.matroid;
    let q = job.rational()?;
    let mut ids = krs_checks(m);
    let ext = Exterior::new(&Rationals, &job.weights)?;
    ids.merge(matroid_checks(&ext, m));
    if m.ground_size() <= 5 {
        ids.merge(exhaustive(&ext));
    }
    let text = render_identities(&format!("identities over Q for {}", job.name()), &ids);
    let mut rep = Report::new(job.name(), &q);
    rep.identities = Some(ids);
    let passed = rep.passed();
    Outcome::new(text, &vec![rep], passed)
}

pub fn axioms(job: &Job) -> Result<Outcome> {
    fn one<F: Field>(job: &Job, d: &RingelDatum<F>) -> Report {
        let mut rep = Report::new(job.name(), d);
        rep.axioms = Some(check_axioms(d));
        rep
    }
    let mut reports = vec![one(job, &job.rational()?)];
    reports.extend(job.per_prime(|p| Ok(one(job, &job.modular(p)?)))?);
    let text: Vec<String> = reports
        .iter()
        .map(|r| {
            let title = format!("axioms over {} for {}", field_label(r.p), job.name());
            render_identities(&title, r.axioms.as_ref().expect("filled above"))
        })
        .collect();
    let passed = reports.iter().all(Report::passed);
    Outcome::new(text.join("\n"), &reports, passed)
}

pub fn dims(job: &Job) -> Result<Outcome> {
    let q = job.rational()?;
    let dims = algebra_dims(&q);
    let mut text = String::new();
    let _ = writeln!(text, "dim R = {}", dims.dim_r);
    let _ = writeln!(text, "dim Ř = {}", dims.dim_r_check);
    let mut rep = Report::new(job.name(), &q);
    match operator_model(&q, job.cap) {
        Ok(model) => {
            let f = &Rationals;
            let mut ids = IdentityReport::default();
            let span_r = model.r_dimension(f)?;
            let span_rc = model.r_check_dimension(f)?;
            let cent_rc = model.centralizer_of_r_check(f)?;
            let cent_r = model.centralizer_of_r(f)?;
            let (checked, failed) = model.commutation()?;
            let _ = writeln!(text, "operator model on B (dim {}):", model.dim);
            let _ = writeln!(text, "  span of R generators: {span_r}");
            let _ = writeln!(text, "  span of Ř generators: {span_rc}");
            let _ = writeln!(text, "  centralizer of Ř: {cent_rc}");
            let _ = writeln!(text, "  centralizer of R: {cent_r}");
            let _ = writeln!(
                text,
                "  non-commuting generator pairs: {failed} of {checked}"
            );
            let expect = |name: &str, got: usize, want: usize, ids: &mut IdentityReport| {
                ids.record(name, got == want, || format!("{got} vs {want}"));
            };
            expect("r_span", span_r, dims.dim_r, &mut ids);
            expect("r_check_span", span_rc, dims.dim_r_check, &mut ids);
            expect("centralizer_of_r_check", cent_rc, dims.dim_r, &mut ids);
            expect("centralizer_of_r", cent_r, dims.dim_r_check, &mut ids);
            ids.record_counts("commutation", checked, failed);
            rep.identities = Some(ids);
        }
        Err(SchurError::DimensionTooLarge { dim, cap }) => {
            let _ = writeln!(
                text,
                "operator model skipped: dim B = {dim} exceeds --cap {cap}"
            );
        }
        Err(e) => return Err(e.into()),
    }
    rep.algebra = Some(dims);
    let passed = rep.passed();
    Outcome::new(text, &vec![rep], passed)
}

pub fn selftest(criterion: Option<u32>) -> Result<Outcome> {
    let criteria = match criterion {
        Some(id) => {
            vec![selftest::run(id).ok_or_else(|| anyhow!("no criterion {id}; expected 1 to 12"))?]
        }
        None => selftest::run_all(),
    };
    let text: String = criteria.iter().map(|c| c.render()).collect();
    let passed = criteria.iter().all(|c| c.unexpected().next().is_none());
    Outcome::new(text, &criteria, passed)
}
