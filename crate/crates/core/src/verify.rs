//! Seeded verification suites.
//!
//! Every case draws from its own `ChaCha8Rng`, seeded with
//! `splitmix64(splitmix64(seed ^ fnv1a(suite)) + case)`. Cases run through
//! [`exec::map_collect`] and are merged in case order, so a report depends
//! only on `(suite, degree, seed, cases, generators)`.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::charseries::{
    adams, eulerian_family, eulerian_idempotent, eulerian_via_closed_form, eulerian_via_vandermonde,
    identity_series, sigma_hat, unipotence_check, TruncatedSeries,
};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::packedword::{enumerate_packed_words, pack, Composition, PackedWord};
use crate::qshuffle::{
    acts_identically, adams_on_indecomposables_check, car_coproduct_compatibility_check, convolution_of_operators,
    e1_kills_products_check, naturality_check, AElement, Monomial, Operator, QSElement, Substitution, TensorWord,
};
use crate::qsym::{self, QSymElement};
use crate::rational::{self, Rational};
use crate::wqsym::{crucial_factorization_check, WQSymElement};

pub const SUITES: &[&str] = &[
    "hopf",
    "internal",
    "crucial",
    "distributivity",
    "action",
    "convolution",
    "naturality",
    "adams",
    "eulerian",
    "car-compat",
    "e1-kernel",
    "generators",
];

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub degree: usize,
    pub seed: u64,
    pub cases: usize,
    /// Number of generators of `A` used by the quasi-shuffle samplers.
    pub generators: u16,
    pub exec: Exec,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { degree: 5, seed: 0, cases: 100, generators: 3, exec: Exec::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: usize,
    pub check: String,
    /// The inputs of the failing case, written in the `eval` syntax where one exists.
    pub reproducer: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub degree: usize,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub passed: bool,
    /// Not serialized, so that reports are reproducible byte for byte.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SuiteReport {
    pub fn summary_line(&self) -> String {
        format!(
            "{} {}: {} cases, {} failures (degree {}, seed {})",
            if self.passed { "PASS" } else { "FAIL" },
            self.suite,
            self.cases,
            self.failures.len(),
            self.degree,
            self.seed
        )
    }
}

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

pub fn case_seed(seed: u64, suite: &str, case: usize) -> u64 {
    splitmix64(splitmix64(seed ^ fnv1a(suite)).wrapping_add(case as u64))
}

pub fn case_rng(seed: u64, suite: &str, case: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(case_seed(seed, suite, case))
}

/// Random inputs shared by the suites and the integration tests.
pub mod sample {
    use super::*;

    pub fn coefficient(rng: &mut impl Rng) -> Rational {
        let c = [-2, -1, 1, 2][rng.gen_range(0..4)];
        rational::int(c)
    }

    /// A uniformly drawn word over `[1..n]`, packed.
    pub fn packed_word(rng: &mut impl Rng, n: usize) -> PackedWord {
        let w: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=n.max(1) as u32)).collect();
        pack(&w)
    }

    pub fn wqsym(rng: &mut impl Rng, n: usize, terms: usize) -> WQSymElement {
        WQSymElement::from_terms((0..terms).map(|_| (packed_word(rng, n), coefficient(rng))))
    }

    pub fn composition(rng: &mut impl Rng, weight: usize) -> Composition {
        let mut parts = Vec::new();
        let mut cur = 1;
        for _ in 1..weight {
            if rng.gen_bool(0.5) {
                parts.push(cur);
                cur = 1;
            } else {
                cur += 1;
            }
        }
        if weight > 0 {
            parts.push(cur);
        }
        Composition::new(&parts).expect("positive parts")
    }

    pub fn qsym(rng: &mut impl Rng, weight: usize, terms: usize) -> QSymElement {
        QSymElement::from_terms((0..terms).map(|_| (composition(rng, weight), coefficient(rng))))
    }

    /// A monomial of degree `1..=3` in the first `generators` generators.
    pub fn monomial(rng: &mut impl Rng, generators: u16) -> Monomial {
        let deg = rng.gen_range(1..=3);
        let mut m = Monomial::generator(rng.gen_range(0..generators));
        for _ in 1..deg {
            m = m.mul(&Monomial::generator(rng.gen_range(0..generators)));
        }
        m
    }

    pub fn tensor_word(rng: &mut impl Rng, n: usize, generators: u16) -> TensorWord {
        TensorWord((0..n).map(|_| monomial(rng, generators)).collect())
    }

    /// A homogeneous element of tensor degree `n`.
    pub fn qs(rng: &mut impl Rng, n: usize, generators: u16, terms: usize) -> QSElement {
        QSElement::from_terms((0..terms).map(|_| (tensor_word(rng, n, generators), coefficient(rng))))
    }

    /// Sends each generator to a random nonconstant element of `A`.
    pub fn substitution(rng: &mut impl Rng, generators: u16) -> Substitution {
        let mut images = std::collections::BTreeMap::new();
        for g in 0..generators {
            let terms = rng.gen_range(1..=2);
            let a = (0..terms).fold(AElement::zero(), |acc, _| {
                acc.add(&AElement::monomial(monomial(rng, generators), coefficient(rng)))
            });
            if !a.is_zero() {
                images.insert(g, a);
            }
        }
        Substitution::new(images)
    }
}

type CaseResult = Result<Vec<(String, String)>>;

struct Runner<'a> {
    name: &'a str,
    cfg: &'a SuiteConfig,
    cases: usize,
    failures: Vec<Failure>,
}

impl<'a> Runner<'a> {
    fn new(name: &'a str, cfg: &'a SuiteConfig) -> Self {
        Runner { name, cfg, cases: 0, failures: Vec::new() }
    }

    /// Runs `count` seeded cases; each returns its failed checks.
    fn seeded<F>(&mut self, count: usize, f: F) -> Result<()>
    where
        F: Fn(usize, &mut ChaCha8Rng) -> CaseResult + Sync + Send,
    {
        let base = self.cases;
        let idx: Vec<usize> = (base..base + count).collect();
        let (seed, name) = (self.cfg.seed, self.name);
        let results = exec::map_collect(self.cfg.exec, &idx, |&i| f(i, &mut case_rng(seed, name, i)));
        self.absorb(base, results)
    }

    /// Runs deterministic checks over `items`.
    fn each<T, F>(&mut self, items: &[T], f: F) -> Result<()>
    where
        T: Sync,
        F: Fn(&T) -> CaseResult + Sync + Send,
    {
        let base = self.cases;
        let results = exec::map_collect(self.cfg.exec, items, f);
        self.absorb(base, results)
    }

    fn absorb(&mut self, base: usize, results: Vec<CaseResult>) -> Result<()> {
        self.cases = base + results.len();
        for (k, r) in results.into_iter().enumerate() {
            for (check, reproducer) in r? {
                self.failures.push(Failure { case: base + k, check, reproducer });
            }
        }
        Ok(())
    }

    fn finish(self, started: Instant) -> SuiteReport {
        SuiteReport {
            suite: self.name.to_string(),
            seed: self.cfg.seed,
            degree: self.cfg.degree,
            cases: self.cases,
            passed: self.failures.is_empty(),
            failures: self.failures,
            wall_time: started.elapsed(),
        }
    }
}

fn fail(check: &str, reproducer: String) -> (String, String) {
    (check.to_string(), reproducer)
}

fn m(u: &PackedWord) -> WQSymElement {
    WQSymElement::basis(u.clone())
}

fn words_up_to(n: usize) -> Result<Vec<PackedWord>> {
    let mut out = Vec::new();
    for k in 0..=n {
        out.extend(enumerate_packed_words(k)?.iter().cloned());
    }
    Ok(out)
}

/// Runs one named suite.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let started = Instant::now();
    let mut r = Runner::new(name, cfg);
    match name {
        "hopf" => hopf(&mut r)?,
        "internal" => internal(&mut r)?,
        "crucial" => crucial(&mut r)?,
        "distributivity" => distributivity(&mut r)?,
        "action" => action(&mut r)?,
        "convolution" => convolution(&mut r)?,
        "naturality" => naturality(&mut r)?,
        "adams" => adams_suite(&mut r)?,
        "eulerian" => eulerian(&mut r)?,
        "car-compat" => car_compat(&mut r)?,
        "e1-kernel" => e1_kernel(&mut r)?,
        "generators" => generators(&mut r)?,
        _ => return Err(Error::Parse(format!("unknown suite {name:?}; expected one of {} or all", SUITES.join(", ")))),
    }
    Ok(r.finish(started))
}

/// Runs `name`, expanding `all` into every suite in order.
pub fn run(name: &str, cfg: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        SUITES.iter().map(|s| run_suite(s, cfg)).collect()
    } else {
        Ok(vec![run_suite(name, cfg)?])
    }
}

/// Coassociativity and `Δ(fg) = Δ(f)Δ(g)`: exhaustive through length 4, then
/// seeded pairs at total length `degree` when that exceeds 4.
fn hopf(r: &mut Runner) -> Result<()> {
    let exhaustive = r.cfg.degree.min(4);
    let words = words_up_to(exhaustive)?;
    r.each(&words, |u| {
        let d = m(u).coproduct();
        Ok(if d.coproduct_left() != d.coproduct_right() {
            vec![fail("coassociativity", format!("M{u}"))]
        } else {
            vec![]
        })
    })?;
    let pairs: Vec<(PackedWord, PackedWord)> = words
        .iter()
        .flat_map(|u| words.iter().filter(move |v| u.len() + v.len() <= exhaustive).map(move |v| (u.clone(), v.clone())))
        .collect();
    r.each(&pairs, |(u, v)| Ok(bialgebra_case(u, v)))?;
    let n = r.cfg.degree;
    if n > 4 {
        r.seeded(r.cfg.cases, move |_, rng| {
            let a = rng.gen_range(1..n);
            let (u, v) = (sample::packed_word(rng, a), sample::packed_word(rng, n - a));
            let mut out = bialgebra_case(&u, &v);
            let w = sample::packed_word(rng, n);
            let d = m(&w).coproduct();
            if d.coproduct_left() != d.coproduct_right() {
                out.push(fail("coassociativity", format!("M{w}")));
            }
            Ok(out)
        })?;
    }
    Ok(())
}

fn bialgebra_case(u: &PackedWord, v: &PackedWord) -> Vec<(String, String)> {
    let (f, g) = (m(u), m(v));
    if f.outer(&g).coproduct() != f.coproduct().product(&g.coproduct()) {
        vec![fail("bialgebra", format!("M{u} * M{v}"))]
    } else {
        vec![]
    }
}

/// Associativity of the internal product and both identities.
fn internal(r: &mut Runner) -> Result<()> {
    let n = r.cfg.degree;
    r.seeded(r.cfg.cases, move |_, rng| {
        let len = rng.gen_range(1..=n);
        let u = sample::packed_word(rng, len);
        let v = sample::packed_word(rng, u.breadth());
        let w = sample::packed_word(rng, v.breadth());
        let (f, g, h) = (m(&u), m(&v), m(&w));
        let mut out = vec![];
        if f.internal(&g).internal(&h) != f.internal(&g.internal(&h)) {
            out.push(fail("associativity", format!("M{u} @ M{v} @ M{w}")));
        }
        if WQSymElement::identity(u.len()).internal(&f) != f {
            out.push(fail("left identity", format!("M{u}")));
        }
        if f.internal(&WQSymElement::identity(u.breadth())) != f {
            out.push(fail("right identity", format!("M{u}")));
        }
        Ok(out)
    })
}

/// The factorization lemma on sequences of at most three packed words.
fn crucial(r: &mut Runner) -> Result<()> {
    let fixed = vec![vec![PackedWord::new(&[1, 1])?, PackedWord::new(&[2, 1])?]];
    r.each(&fixed, |us| Ok(crucial_case(us)))?;
    let n = r.cfg.degree;
    r.seeded(r.cfg.cases, move |_, rng| {
        let k = rng.gen_range(1..=3.min(n.max(1)));
        let total = rng.gen_range(k..=n.max(k));
        let mut lens = vec![1; k];
        for _ in k..total {
            lens[rng.gen_range(0..k)] += 1;
        }
        let us: Vec<PackedWord> = lens.iter().map(|&l| sample::packed_word(rng, l)).collect();
        Ok(crucial_case(&us))
    })
}

fn crucial_case(us: &[PackedWord]) -> Vec<(String, String)> {
    if crucial_factorization_check(us) {
        return vec![];
    }
    let repro: Vec<String> = us.iter().map(|u| format!("M{u}")).collect();
    vec![fail("factorization", repro.join(" , "))]
}

/// `(M_u•M_t)*(M_v•M_w) = (M_u*M_v)•(M_t*M_w)` with `l(v)=max(u)`, `l(w)=max(t)`.
fn distributivity(r: &mut Runner) -> Result<()> {
    let n = r.cfg.degree.max(2);
    r.seeded(r.cfg.cases, move |_, rng| {
        let a = rng.gen_range(1..n);
        let b = rng.gen_range(1..=n - a);
        let (u, t) = (sample::packed_word(rng, a), sample::packed_word(rng, b));
        let (v, w) = (sample::packed_word(rng, u.breadth()), sample::packed_word(rng, t.breadth()));
        let lhs = m(&u).bullet(&m(&t)).internal(&m(&v).bullet(&m(&w)));
        let rhs = m(&u).internal(&m(&v)).bullet(&m(&t).internal(&m(&w)));
        Ok(if lhs != rhs {
            vec![fail("distributivity", format!("(M{u} & M{t}) @ (M{v} & M{w})"))]
        } else {
            vec![]
        })
    })
}

/// Module law, compatibility of the action with products, and the
/// recognition harness.
fn action(r: &mut Runner) -> Result<()> {
    let fixed = [()];
    r.each(&fixed, |_| {
        // one generator: QS(A) restricted to the powers of g1 is QSym
        let x = QSElement::word(
            TensorWord([2, 1, 3, 2, 2].iter().map(|&e| Monomial::new(&[(0, e)]).unwrap()).collect()),
            rational::one(),
        );
        let got = x.act(&WQSymElement::basis(PackedWord::new(&[1, 2, 1, 2, 1])?));
        let want = QSElement::word(
            TensorWord(vec![Monomial::new(&[(0, 7)])?, Monomial::new(&[(0, 3)])?]),
            rational::one(),
        );
        let q = QSymElement::basis(Composition::new(&[2, 1, 3, 2, 2])?)
            .act(&WQSymElement::basis(PackedWord::new(&[1, 2, 1, 2, 1])?));
        Ok(if got != want || q != QSymElement::basis(Composition::new(&[7, 3])?) {
            vec![fail("fixed instance", "Q[2,1,3,2,2] @ M[1,2,1,2,1]".into())]
        } else {
            vec![]
        })
    })?;
    let (n, gens) = (r.cfg.degree.max(2), r.cfg.generators.max(1));
    r.seeded(r.cfg.cases, move |_, rng| {
        let mut out = vec![];
        let d = rng.gen_range(2..=n);
        let terms = rng.gen_range(1..=2);
        let x = sample::qs(rng, d, gens, terms);
        let a = rng.gen_range(1..d);
        let (f, g) = (sample::wqsym(rng, a, 2), sample::wqsym(rng, d - a, 2));
        let lhs = x.act(&f.outer(&g));
        let rhs = convolution_of_operators(&Operator::Element(f.clone()), &Operator::Element(g.clone()), &x)?;
        if lhs != rhs {
            out.push(fail("compatibility", format!("x = {x}; f = {f}; g = {g}")));
        }
        let u = sample::packed_word(rng, d);
        let v = sample::packed_word(rng, u.breadth());
        if x.act(&m(&u)).act(&m(&v)) != x.act(&m(&u).internal(&m(&v))) {
            out.push(fail("module law", format!("x = {x}; M{u} @ M{v}")));
        }
        let k = rng.gen_range(1..=3.min(n));
        let f = sample::wqsym(rng, k, 2);
        let pert = &f + &WQSymElement::basis(sample::packed_word(rng, k));
        if !acts_identically(&f, &f, k, gens) || acts_identically(&f, &pert, k, gens) {
            out.push(fail("recognition", format!("f = {f}; g = {pert}")));
        }
        Ok(out)
    })
}

/// Convolution of series operators through the action, and the
/// quasi-shuffle laws on `QS(A)`.
fn convolution(r: &mut Runner) -> Result<()> {
    let (n, gens) = (r.cfg.degree.max(1), r.cfg.generators.max(1));
    let ops: Vec<(&str, TruncatedSeries)> = vec![
        ("I", identity_series(n)),
        ("Psi(2)", adams(2, n)),
        ("e(1)", eulerian_idempotent(1, n)),
        ("sigma(1/2)", sigma_hat(&rational::frac(1, 2), n)),
    ];
    let ops = &ops;
    r.seeded(r.cfg.cases, move |_, rng| {
        let mut out = vec![];
        let d = rng.gen_range(1..=n.min(4));
        let x = sample::qs(rng, d, gens, 2);
        let (i, j) = (rng.gen_range(0..ops.len()), rng.gen_range(0..ops.len()));
        let (f, g) = (&ops[i].1, &ops[j].1);
        let lhs = x.act_series(&f.convolve(g))?;
        let rhs = convolution_of_operators(&Operator::Series(f.clone()), &Operator::Series(g.clone()), &x)?;
        if lhs != rhs {
            out.push(fail("series convolution", format!("x = {x}; {} * {}", ops[i].0, ops[j].0)));
        }
        let a = rng.gen_range(1..=2);
        let b = rng.gen_range(1..=2);
        let (y, z) = (sample::qs(rng, a, gens, 2), sample::qs(rng, b, gens, 1));
        let c = rng.gen_range(1..=2);
        let x1 = sample::qs(rng, c, gens, 2);
        if x1.quasi_shuffle(&y) != y.quasi_shuffle(&x1) {
            out.push(fail("commutativity", format!("x = {x1}; y = {y}")));
        }
        if x1.quasi_shuffle(&y).quasi_shuffle(&z) != x1.quasi_shuffle(&y.quasi_shuffle(&z)) {
            out.push(fail("associativity", format!("x = {x1}; y = {y}; z = {z}")));
        }
        if x1.quasi_shuffle(&y).deconcatenation() != x1.deconcatenation().quasi_shuffle(&y.deconcatenation()) {
            out.push(fail("hopf compatibility", format!("x = {x1}; y = {y}")));
        }
        Ok(out)
    })
}

fn naturality(r: &mut Runner) -> Result<()> {
    let (n, gens) = (r.cfg.degree.max(1), r.cfg.generators.max(1));
    r.seeded(r.cfg.cases, move |_, rng| {
        let d = rng.gen_range(1..=n.min(4));
        let x = sample::qs(rng, d, gens, 2);
        let u = sample::packed_word(rng, d);
        let f = sample::substitution(rng, gens);
        Ok(if !naturality_check(&f, &u, &x) {
            vec![fail("naturality", format!("x = {x}; M{u}; {f:?}"))]
        } else {
            vec![]
        })
    })
}

/// Adams operations on QSym against the coproduct oracle, as algebra maps,
/// under composition, and on indecomposables of `QS(A)`.
fn adams_suite(r: &mut Runner) -> Result<()> {
    let n = r.cfg.degree.clamp(1, 5);
    let gens = r.cfg.generators.max(1);
    let psi: Vec<TruncatedSeries> = (0..=9).map(|k| adams(k, n)).collect();
    let psi = &psi;
    r.seeded(r.cfg.cases, move |_, rng| {
        let mut out = vec![];
        let w = rng.gen_range(1..=n);
        let f = sample::qsym(rng, w, 2);
        let k = rng.gen_range(0..=3);
        if f.act_series(&psi[k])? != f.adams_by_coproduct(k) {
            out.push(fail("coproduct oracle", format!("({f}) @ Psi({k})")));
        }
        if n >= 2 {
            let a = rng.gen_range(1..n.min(4));
            let b = rng.gen_range(1..=n.min(4) - a);
            let (g, h) = (sample::qsym(rng, a, 2), sample::qsym(rng, b, 2));
            let l = rng.gen_range(1..=3);
            if g.product(&h).act_series(&psi[l])? != g.act_series(&psi[l])?.product(&h.act_series(&psi[l])?) {
                out.push(fail("algebra map", format!("(({g}) * ({h})) @ Psi({l})")));
            }
            let (k2, l2) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let wg = rng.gen_range(1..=n.min(4));
            let g = sample::qsym(rng, wg, 2);
            if g.act_series(&psi[k2])?.act_series(&psi[l2])? != g.act_series(&psi[k2 * l2])? {
                out.push(fail("composition", format!("({g}) @ Psi({k2}) @ Psi({l2})")));
            }
            let (p, q) = (sample::wqsym(rng, a, 2), sample::wqsym(rng, b, 2));
            let image = qsym::commutative_image;
            if image(&p.outer(&q)) != image(&p).product(&image(&q)) {
                out.push(fail("commutative image", format!("({p}) * ({q})")));
            }
        }
        let dx = rng.gen_range(1..=n.min(3));
        let x = sample::qs(rng, dx, gens, 2);
        if !adams_on_indecomposables_check(&x, &psi[2])? {
            out.push(fail("indecomposables", format!("x = {x}")));
        }
        Ok(out)
    })
}

/// Identities of the idempotent family; deterministic.
fn eulerian(r: &mut Runner) -> Result<()> {
    let n = r.cfg.degree.max(1);
    let small = n.min(4);
    let fam = eulerian_family(small);
    let fam = &fam;
    let pairs: Vec<(usize, usize)> = (0..=small).flat_map(|i| (0..=small).map(move |j| (i, j))).collect();
    r.each(&pairs, |&(i, j)| {
        let p = fam[i].internal(&fam[j]);
        let want = if i == j { fam[i].clone() } else { TruncatedSeries::zero(small) };
        Ok(if p != want { vec![fail("orthogonality", format!("e({i}) @ e({j})"))] } else { vec![] })
    })?;
    let full = eulerian_family(n);
    let full = &full;
    let checks: Vec<&str> = vec!["sum", "closed form", "vandermonde", "unipotence", "inverse"];
    r.each(&checks, |&c| {
        let ok = match c {
            "sum" => full.iter().fold(TruncatedSeries::zero(n), |a, e| a.add(e)) == identity_series(n),
            "closed form" => eulerian_via_closed_form(n) == full[1],
            "vandermonde" => eulerian_via_vandermonde(n) == *full,
            "unipotence" => (1..=n).map(|k| unipotence_check(k, n)).collect::<Result<Vec<_>>>()?.iter().all(|&b| b),
            _ => identity_series(n).inverse()?.convolve(&identity_series(n)) == TruncatedSeries::unit(n),
        };
        Ok(if ok { vec![] } else { vec![fail(c, format!("e(1) at cutoff {n}"))] })
    })?;
    let ks = [0usize, 1, 2, 3, 5];
    r.each(&ks, |&k| {
        let sum = (0..=small).fold(TruncatedSeries::zero(small), |acc, i| {
            acc.add(&fam[i].scale(&rational::int((k as i64).pow(i as u32))))
        });
        Ok(if sum != adams(k, small) { vec![fail("power expansion", format!("Psi({k})"))] } else { vec![] })
    })?;
    let kl: Vec<(usize, usize)> = (1..=3).flat_map(|k| (1..=3).map(move |l| (k, l))).collect();
    r.each(&kl, |&(k, l)| {
        let mut out = vec![];
        if adams(k, n).convolve(&adams(l, n)) != adams(k + l, n) {
            out.push(fail("outer powers", format!("Psi({k}) * Psi({l})")));
        }
        if adams(k, small).internal(&adams(l, small)) != adams(k * l, small) {
            out.push(fail("internal powers", format!("Psi({k}) @ Psi({l})")));
        }
        Ok(out)
    })
}

fn car_compat(r: &mut Runner) -> Result<()> {
    let (n, gens) = (r.cfg.degree.max(2), r.cfg.generators.max(1));
    let sigmas: Vec<(&str, TruncatedSeries)> = vec![
        ("I", identity_series(n)),
        ("Psi(2)", adams(2, n)),
        ("Psi(3)", adams(3, n)),
        ("e(1)", eulerian_idempotent(1, n)),
        ("e(2)", eulerian_idempotent(2, n)),
    ];
    let sigmas = &sigmas;
    r.seeded(r.cfg.cases, move |i, rng| {
        let (name, s) = &sigmas[i % sigmas.len()];
        let a = rng.gen_range(1..n);
        let b = rng.gen_range(1..=(n - a).min(3));
        let (x, y) = (sample::qs(rng, a.min(3), gens, 2), sample::qs(rng, b, gens, 2));
        Ok(if !car_coproduct_compatibility_check(s, &x, &y)? {
            vec![fail("car-coproduct", format!("x = {x}; y = {y}; sigma = {name}"))]
        } else {
            vec![]
        })
    })
}

fn e1_kernel(r: &mut Runner) -> Result<()> {
    let (n, gens) = (r.cfg.degree.max(2), r.cfg.generators.max(1));
    let e1 = eulerian_idempotent(1, n);
    let e1 = &e1;
    r.seeded(r.cfg.cases, move |_, rng| {
        let a = rng.gen_range(1..n);
        let b = rng.gen_range(1..=n - a);
        let (x, y) = (sample::qs(rng, a, gens, 2), sample::qs(rng, b, gens, 1));
        Ok(if !e1_kills_products_check(&x, &y, e1)? {
            vec![fail("kills products", format!("x = {x}; y = {y}"))]
        } else {
            vec![]
        })
    })
}

/// Rank of the Lyndon products and the projection properties of `e_1` on QSym.
fn generators(r: &mut Runner) -> Result<()> {
    let n = r.cfg.degree.clamp(1, qsym::MAX_REPORT_WEIGHT);
    let report = qsym::lyndon_generator_report_with(n, r.cfg.exec)?;
    r.each(&report, |g| {
        Ok(if !g.full_rank || g.dimension != 1 << (g.weight - 1) {
            vec![fail("full rank", format!("weight {}: rank {} of {}", g.weight, g.rank, g.dimension))]
        } else {
            vec![]
        })
    })?;
    let weights: Vec<usize> = (1..=n.min(5)).collect();
    r.each(&weights, |&w| {
        Ok(if !qsym::e1_projection_property_check(w)?.passed() {
            vec![fail("projection", format!("weight {w}"))]
        } else {
            vec![]
        })
    })
}
