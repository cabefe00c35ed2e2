//! Quasi-symmetric functions as the quasi-shuffle algebra over the positive
//! integers, in the monomial basis `M_I`.
//!
//! Packed words act on the right: `M_I * M_u = M_J` with
//! `j_r = sum_{u(s) = r} i_s` when `len(I) = len(u)`, and zero otherwise.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::charseries::{eulerian_idempotent, TruncatedSeries};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::packedword::{self, compositions_of, is_lyndon, lyndon_compositions, Composition, PackedWord};
use crate::param::ParamPoly;
use crate::rational::{self, Rational};
use crate::wqsym::{add_into, fmt_linear, WQSymElement};

/// Largest weight accepted by the generator report and projection checks.
pub const MAX_REPORT_WEIGHT: usize = 6;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct QSymElement {
    terms: BTreeMap<Composition, Rational>,
}

impl QSymElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `M_()`.
    pub fn unit() -> Self {
        Self::basis(Composition::empty())
    }

    pub fn basis(i: Composition) -> Self {
        Self::monomial(i, rational::one())
    }

    pub fn monomial(i: Composition, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        add_into(&mut terms, i, c);
        QSymElement { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Composition, Rational)>>(iter: I) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in iter {
            add_into(&mut terms, k, c);
        }
        QSymElement { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: &Composition) -> Rational {
        self.terms.get(i).cloned().unwrap_or_else(rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_weight(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Composition::weight)
    }

    pub fn max_length(&self) -> Option<usize> {
        self.terms.keys().map(Composition::len).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, a)| (k.clone(), a * c)))
    }

    /// Quasi-shuffle product: parts interleave, and overlapping parts add.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let xy = x * y;
                let mut buf = SmallVec::new();
                qsh_parts(a.parts(), b.parts(), &mut buf, &mut |p| {
                    add_into(&mut out, Composition::new(p).expect("positive"), xy.clone())
                });
            }
        }
        QSymElement { terms: out }
    }

    /// Right action of a finite WQSym element.
    pub fn act(&self, f: &WQSymElement) -> Self {
        let mut out = BTreeMap::new();
        for (i, x) in &self.terms {
            for (u, c) in f.terms() {
                if let Some(j) = act_on_composition(i, u) {
                    add_into(&mut out, j, x * c);
                }
            }
        }
        QSymElement { terms: out }
    }

    /// Right action of a series: `M_I` meets the component of degree `len(I)`.
    pub fn act_series(&self, s: &TruncatedSeries) -> Result<Self> {
        if let Some(l) = self.max_length().filter(|&l| l > s.cutoff()) {
            return Err(Error::CutoffExceeded { degree: l, cutoff: s.cutoff() });
        }
        let mut out = BTreeMap::new();
        for (i, x) in &self.terms {
            for (u, c) in s.component(i.len()).terms() {
                if let Some(j) = act_on_composition(i, u) {
                    add_into(&mut out, j, x * c);
                }
            }
        }
        Ok(QSymElement { terms: out })
    }

    /// `μ_k ∘ Δ^k`: sum over cuts of `I` into `k` consecutive (possibly empty)
    /// pieces of the product of the pieces. Computed entirely inside QSym.
    pub fn adams_by_coproduct(&self, k: usize) -> Self {
        let mut out = QSymElement::zero();
        for (i, c) in &self.terms {
            if k == 0 {
                if i.is_empty() {
                    out = &out + &QSymElement::unit().scale(c);
                }
                continue;
            }
            let mut cuts = vec![0usize; k + 1];
            cuts[k] = i.len();
            for_each_cut(i.len(), 1, k, &mut cuts, &mut |cuts| {
                let prod = (0..k).fold(QSymElement::unit(), |acc, j| {
                    acc.product(&QSymElement::basis(i.slice(cuts[j]..cuts[j + 1])))
                });
                out = &out + &prod.scale(c);
            });
        }
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(QSymJson {
            basis: "QSym-M".into(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| QSymTermJson {
                    composition: k.clone(),
                    coeff: rational::to_string_pq(c),
                })
                .collect(),
        })
        .expect("serializable")
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let parsed: QSymJson = serde_json::from_value(v.clone())?;
        if parsed.basis != "QSym-M" {
            return Err(Error::BasisMismatch(format!("expected basis QSym-M, found {}", parsed.basis)));
        }
        let mut terms = Vec::new();
        for t in parsed.terms {
            terms.push((t.composition, rational::parse(&t.coeff)?));
        }
        Ok(Self::from_terms(terms))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_json_value(&serde_json::from_str(s)?)
    }
}

#[derive(Serialize, Deserialize)]
struct QSymJson {
    basis: String,
    terms: Vec<QSymTermJson>,
}

#[derive(Serialize, Deserialize)]
struct QSymTermJson {
    composition: Composition,
    coeff: String,
}

fn for_each_cut(len: usize, j: usize, k: usize, cuts: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if j == k {
        f(cuts);
        return;
    }
    for c in cuts[j - 1]..=len {
        cuts[j] = c;
        for_each_cut(len, j + 1, k, cuts, f);
    }
}

fn qsh_parts(a: &[u32], b: &[u32], buf: &mut SmallVec<[u32; 8]>, emit: &mut dyn FnMut(&[u32])) {
    if a.is_empty() || b.is_empty() {
        let n = buf.len();
        buf.extend_from_slice(a);
        buf.extend_from_slice(b);
        emit(buf);
        buf.truncate(n);
        return;
    }
    buf.push(a[0]);
    qsh_parts(&a[1..], b, buf, emit);
    buf.pop();
    buf.push(b[0]);
    qsh_parts(a, &b[1..], buf, emit);
    buf.pop();
    buf.push(a[0] + b[0]);
    qsh_parts(&a[1..], &b[1..], buf, emit);
    buf.pop();
}

/// `M_I * M_u`, or `None` when `len(I) != len(u)`.
pub fn act_on_composition(i: &Composition, u: &PackedWord) -> Option<Composition> {
    if i.len() != u.len() {
        return None;
    }
    let mut parts: SmallVec<[u32; 8]> = smallvec::smallvec![0; u.breadth()];
    for (s, &r) in u.letters().iter().enumerate() {
        parts[r as usize - 1] += i.parts()[s];
    }
    Some(Composition::new(&parts).expect("surjective"))
}

impl fmt::Display for QSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_linear(f, self.terms.iter().map(|(k, c)| (k, c.clone())), "Q")
    }
}

impl fmt::Debug for QSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &QSymElement {
    type Output = QSymElement;
    fn add(self, rhs: &QSymElement) -> QSymElement {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            add_into(&mut out.terms, k.clone(), c.clone());
        }
        out
    }
}

impl Sub for &QSymElement {
    type Output = QSymElement;
    fn sub(self, rhs: &QSymElement) -> QSymElement {
        self + &rhs.scale(&rational::int(-1))
    }
}

/// `F(kX) = F * Ψ^k`.
pub fn qsym_adams(k: usize, f: &QSymElement, cutoff: usize) -> Result<QSymElement> {
    if let Some(w) = f.max_weight().filter(|&w| w > cutoff) {
        return Err(Error::CutoffExceeded { degree: w, cutoff });
    }
    f.act_series(&crate::charseries::adams(k, cutoff))
}

/// Abelianization: `M_u ↦ M_{ev(u)}`.
pub fn commutative_image(f: &WQSymElement) -> QSymElement {
    QSymElement::from_terms(f.terms().map(|(u, c)| (packedword::evaluation(u), c.clone())))
}

/// A WQSym element with coefficients in [`ParamPoly`], truncated at `cutoff`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParamOperator {
    cutoff: usize,
    terms: BTreeMap<PackedWord, ParamPoly>,
}

fn add_param<K: Ord>(map: &mut BTreeMap<K, ParamPoly>, k: K, p: ParamPoly) {
    if p.is_zero() {
        return;
    }
    let sum = match map.remove(&k) {
        Some(q) => q.add(&p),
        None => p,
    };
    if !sum.is_zero() {
        map.insert(k, sum);
    }
}

impl ParamOperator {
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PackedWord, &ParamPoly)> {
        self.terms.iter()
    }

    /// Outer product with parameter bookkeeping, at the smaller cutoff.
    pub fn product(&self, other: &Self) -> Self {
        let cutoff = self.cutoff.min(other.cutoff);
        let mut terms = BTreeMap::new();
        for (u, p) in &self.terms {
            for (v, q) in &other.terms {
                if u.len() + v.len() > cutoff {
                    continue;
                }
                let pq = p.mul(q);
                for w in packedword::quasi_shuffle_indices(u, v) {
                    add_param(&mut terms, w, pq.clone());
                }
            }
        }
        ParamOperator { cutoff, terms }
    }
}

/// `σ̂_t = sum_{n <= N} t^n M_{12...n}`.
pub fn sigma_hat_param(t: &ParamPoly, cutoff: usize) -> ParamOperator {
    let mut terms = BTreeMap::new();
    let mut power = ParamPoly::one();
    for n in 0..=cutoff {
        add_param(&mut terms, PackedWord::identity(n), power.clone());
        power = power.mul(t);
    }
    ParamOperator { cutoff, terms }
}

/// A QSym element with parameter-polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct ParamQSym {
    terms: BTreeMap<Composition, ParamPoly>,
}

impl ParamQSym {
    pub fn from_terms<I: IntoIterator<Item = (Composition, ParamPoly)>>(iter: I) -> Self {
        let mut terms = BTreeMap::new();
        for (k, p) in iter {
            add_param(&mut terms, k, p);
        }
        ParamQSym { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &ParamPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for ParamQSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, p)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({p})*Q{k}")?;
        }
        Ok(())
    }
}

/// `F * op` with parameter coefficients.
pub fn deformed_act(f: &QSymElement, op: &ParamOperator) -> Result<ParamQSym> {
    if let Some(l) = f.max_length().filter(|&l| l > op.cutoff) {
        return Err(Error::CutoffExceeded { degree: l, cutoff: op.cutoff });
    }
    let mut terms = BTreeMap::new();
    for (i, c) in f.terms() {
        for (u, p) in &op.terms {
            if let Some(j) = act_on_composition(i, u) {
                add_param(&mut terms, j, p.scale(c));
            }
        }
    }
    Ok(ParamQSym { terms })
}

/// Rank of a family of rational vectors by fraction-free (Bareiss) elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for r in rank + 1..m.len() {
            for c in col + 1..cols {
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

fn coordinates(f: &QSymElement, basis: &[Composition]) -> Vec<Rational> {
    basis.iter().map(|i| f.coeff(i)).collect()
}

/// Per-weight verdict of the free-generator check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorReport {
    pub weight: usize,
    pub lyndon: Vec<Composition>,
    pub rank: usize,
    pub dimension: usize,
    pub full_rank: bool,
}

/// Multisets of compositions from `pool` with total weight `n` (non-decreasing pool index).
fn multisets_of_weight(pool: &[Composition], n: usize) -> Vec<Vec<usize>> {
    fn rec(pool: &[Composition], start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            let w = pool[i].weight();
            if w <= left {
                cur.push(i);
                rec(pool, i, left - w, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(pool, 0, n, &mut Vec::new(), &mut out);
    out
}

/// For each weight `n <= max_weight`: the images `g_L = M_L * e_1` of the Lyndon
/// compositions, all products of them of total weight `n`, and the rank of that
/// family inside `QSym_n`.
pub fn lyndon_generator_report(max_weight: usize) -> Result<Vec<GeneratorReport>> {
    lyndon_generator_report_with(max_weight, Exec::default())
}

pub fn lyndon_generator_report_with(max_weight: usize, exec: Exec) -> Result<Vec<GeneratorReport>> {
    if max_weight > MAX_REPORT_WEIGHT {
        return Err(Error::ResourceLimit {
            what: "generator report weight",
            requested: max_weight,
            cap: MAX_REPORT_WEIGHT,
        });
    }
    let e1 = eulerian_idempotent(1, max_weight);
    let pool: Vec<Composition> = (1..=max_weight).flat_map(lyndon_compositions).collect();
    let gens: Vec<QSymElement> = pool
        .iter()
        .map(|l| QSymElement::basis(l.clone()).act_series(&e1))
        .collect::<Result<_>>()?;
    let weights: Vec<usize> = (1..=max_weight).collect();
    Ok(exec::map_collect(exec, &weights, |&n| {
        let basis = compositions_of(n);
        let rows: Vec<Vec<Rational>> = multisets_of_weight(&pool, n)
            .into_iter()
            .map(|ms| {
                let prod = ms.iter().fold(QSymElement::unit(), |acc, &i| acc.product(&gens[i]));
                coordinates(&prod, &basis)
            })
            .collect();
        let r = rank(&rows);
        GeneratorReport {
            weight: n,
            lyndon: lyndon_compositions(n),
            rank: r,
            dimension: basis.len(),
            full_rank: r == basis.len(),
        }
    }))
}

/// Outcome of [`e1_projection_property_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionCheck {
    pub idempotent: bool,
    pub kills_products: bool,
    pub image_rank: usize,
    pub lyndon_count: usize,
}

impl ProjectionCheck {
    pub fn passed(&self) -> bool {
        self.idempotent && self.kills_products && self.image_rank == self.lyndon_count
    }
}

/// In `QSym_n`: `F ↦ F * e_1` is idempotent, vanishes on products of
/// positive-weight elements, and its image has the Lyndon count as rank.
pub fn e1_projection_property_check(n: usize) -> Result<ProjectionCheck> {
    if n > MAX_REPORT_WEIGHT {
        return Err(Error::ResourceLimit { what: "projection check weight", requested: n, cap: MAX_REPORT_WEIGHT });
    }
    let e1 = eulerian_idempotent(1, n.max(1));
    let basis = compositions_of(n);
    let images: Vec<QSymElement> = basis
        .iter()
        .map(|i| QSymElement::basis(i.clone()).act_series(&e1))
        .collect::<Result<_>>()?;
    let mut idempotent = true;
    for img in &images {
        idempotent &= img.act_series(&e1)? == *img;
    }
    let mut kills_products = true;
    for a in 1..n {
        for i in compositions_of(a) {
            for j in compositions_of(n - a) {
                let p = QSymElement::basis(i.clone()).product(&QSymElement::basis(j));
                kills_products &= p.act_series(&e1)?.is_zero();
            }
        }
    }
    let rows: Vec<_> = images.iter().map(|f| coordinates(f, &basis)).collect();
    Ok(ProjectionCheck {
        idempotent,
        kills_products,
        image_rank: rank(&rows),
        lyndon_count: basis.iter().filter(|c| is_lyndon(c)).count(),
    })
}
