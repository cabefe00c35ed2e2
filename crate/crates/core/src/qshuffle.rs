//! Quasi-shuffle algebras over the free commutative algebra without unit.
//!
//! `A` is spanned by nonconstant monomials in generators `g1, g2, ...`.
//! Elements of `QS(A)` are stored on tensor words of monomials; tensors of
//! general elements of `A` are expanded by multilinearity on construction.
//! Packed words act on the right: a tensor word of length `n` times `M_u`
//! (with `len(u) = n`, `max(u) = k`) is the length-`k` tensor word whose
//! `i`-th factor is the product of the factors at positions `u^{-1}(i)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use num_traits::Zero;
use serde_json::{json, Value};
use smallvec::SmallVec;

use crate::charseries::TruncatedSeries;
use crate::error::{Error, Result};
use crate::packedword::{self, PackedWord};
use crate::rational::{self, Rational};
use crate::wqsym::{add_into, fmt_linear, WQSymElement};

/// A nonconstant monomial `g_{i1}^{e1} g_{i2}^{e2} ...` (generator indices are 0-based).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(SmallVec<[(u16, u16); 4]>);

impl Monomial {
    /// Builds a monomial from `(generator, exponent)` pairs; zero exponents are
    /// dropped and repeated generators merged. The result must be nonconstant.
    pub fn new(pairs: &[(u16, u16)]) -> Result<Self> {
        let mut m: BTreeMap<u16, u16> = BTreeMap::new();
        for &(g, e) in pairs {
            if e > 0 {
                *m.entry(g).or_default() += e;
            }
        }
        if m.is_empty() {
            return Err(Error::InvalidMap("constant monomial in a nonunital algebra".into()));
        }
        Ok(Monomial(m.into_iter().collect()))
    }

    pub fn generator(g: u16) -> Self {
        Monomial(smallvec::smallvec![(g, 1)])
    }

    pub fn pairs(&self) -> &[(u16, u16)] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&(_, e)| e as usize).sum()
    }

    pub fn max_generator(&self) -> u16 {
        self.0.iter().map(|&(g, _)| g).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            match (a.get(i), b.get(j)) {
                (Some(&x), Some(&y)) if x.0 == y.0 => {
                    out.push((x.0, x.1 + y.1));
                    i += 1;
                    j += 1;
                }
                (Some(&x), Some(&y)) if x.0 < y.0 => {
                    out.push(x);
                    i += 1;
                }
                (Some(_), Some(&y)) => {
                    out.push(y);
                    j += 1;
                }
                (Some(&x), None) => {
                    out.push(x);
                    i += 1;
                }
                (None, Some(&y)) => {
                    out.push(y);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(g, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "g{}", g + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An element of `A`: a combination of nonconstant monomials.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct AElement {
    terms: BTreeMap<Monomial, Rational>,
}

impl AElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        add_into(&mut terms, m, c);
        AElement { terms }
    }

    pub fn generator(g: u16) -> Self {
        Self::monomial(Monomial::generator(g), rational::one())
    }

    /// From raw `(pairs, coefficient)` terms; a constant term is rejected.
    pub fn from_raw(terms: &[(Vec<(u16, u16)>, Rational)]) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (pairs, c) in terms {
            add_into(&mut out, Monomial::new(pairs)?, c.clone());
        }
        Ok(AElement { terms: out })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &AElement) -> AElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_into(&mut out.terms, m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &AElement) -> AElement {
        let mut out = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                add_into(&mut out, a.mul(b), x * y);
            }
        }
        AElement { terms: out }
    }

    pub fn pow(&self, e: u16) -> AElement {
        assert!(e >= 1, "A has no unit");
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// A tensor word `a_1 ⊗ ... ⊗ a_n` of monomials, ordered by length then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TensorWord(pub Vec<Monomial>);

impl TensorWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[Monomial] {
        &self.0
    }

    /// Right action of the surjection `u`; `None` when `len(u) != len(self)`.
    pub fn act(&self, u: &PackedWord) -> Option<TensorWord> {
        if u.len() != self.len() {
            return None;
        }
        let mut out: Vec<Option<Monomial>> = vec![None; u.breadth()];
        for (j, &a) in u.letters().iter().enumerate() {
            let slot = &mut out[a as usize - 1];
            *slot = Some(match slot.take() {
                None => self.0[j].clone(),
                Some(m) => m.mul(&self.0[j]),
            });
        }
        Some(TensorWord(out.into_iter().map(|m| m.expect("surjective")).collect()))
    }

    fn concat(&self, other: &TensorWord) -> TensorWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        TensorWord(v)
    }
}

impl Ord for TensorWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for TensorWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TensorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "⊗")?;
            }
            if m.0.len() > 1 {
                write!(f, "({m})")?;
            } else {
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TensorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An element of the quasi-shuffle algebra `QS(A)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QSElement {
    terms: BTreeMap<TensorWord, Rational>,
}

impl QSElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The empty tensor word.
    pub fn unit() -> Self {
        Self::word(TensorWord::default(), rational::one())
    }

    pub fn word(w: TensorWord, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        add_into(&mut terms, w, c);
        QSElement { terms }
    }

    /// `g_{i1} ⊗ ... ⊗ g_{in}`.
    pub fn generators(gs: &[u16]) -> Self {
        Self::word(TensorWord(gs.iter().map(|&g| Monomial::generator(g)).collect()), rational::one())
    }

    /// `a_1 ⊗ ... ⊗ a_n`, expanded multilinearly.
    pub fn tensor(factors: &[AElement]) -> Self {
        let mut acc: BTreeMap<TensorWord, Rational> = BTreeMap::new();
        acc.insert(TensorWord::default(), rational::one());
        for a in factors {
            let mut next = BTreeMap::new();
            for (w, c) in &acc {
                for (m, x) in a.terms() {
                    let mut v = w.0.clone();
                    v.push(m.clone());
                    add_into(&mut next, TensorWord(v), c * x);
                }
            }
            acc = next;
        }
        QSElement { terms: acc }
    }

    pub fn from_terms<I: IntoIterator<Item = (TensorWord, Rational)>>(iter: I) -> Self {
        let mut terms = BTreeMap::new();
        for (w, c) in iter {
            add_into(&mut terms, w, c);
        }
        QSElement { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorWord, &Rational)> {
        self.terms.iter()
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

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(TensorWord::len)
    }

    pub fn homogeneous(&self, d: usize) -> Self {
        QSElement {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of the empty tensor word (the augmentation).
    pub fn counit(&self) -> Rational {
        self.terms.get(&TensorWord::default()).cloned().unwrap_or_else(rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, a)| (w.clone(), a * c)))
    }

    /// Bilinear concatenation of tensor words.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                add_into(&mut out, a.concat(b), x * y);
            }
        }
        QSElement { terms: out }
    }

    /// Right action of a finite WQSym element.
    pub fn act(&self, f: &WQSymElement) -> Self {
        let mut out = BTreeMap::new();
        for (w, x) in &self.terms {
            for (u, c) in f.terms() {
                if let Some(t) = w.act(u) {
                    add_into(&mut out, t, x * c);
                }
            }
        }
        QSElement { terms: out }
    }

    /// Right action of a truncated series: each tensor word of length `n` meets component `n`.
    pub fn act_series(&self, s: &TruncatedSeries) -> Result<Self> {
        if let Some(d) = self.max_degree().filter(|&d| d > s.cutoff()) {
            return Err(Error::CutoffExceeded { degree: d, cutoff: s.cutoff() });
        }
        let mut out = BTreeMap::new();
        for (w, x) in &self.terms {
            for (u, c) in s.component(w.len()).terms() {
                if let Some(t) = w.act(u) {
                    add_into(&mut out, t, x * c);
                }
            }
        }
        Ok(QSElement { terms: out })
    }

    pub fn act_op(&self, op: &Operator) -> Result<Self> {
        match op {
            Operator::Element(f) => Ok(self.act(f)),
            Operator::Series(s) => self.act_series(s),
        }
    }

    /// Quasi-shuffle product, by the first-letter recursion.
    pub fn quasi_shuffle(&self, other: &Self) -> Self {
        let mut out = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let xy = x * y;
                let mut buf = Vec::with_capacity(a.len() + b.len());
                qsh_words(&a.0, &b.0, &mut buf, &mut |w| add_into(&mut out, TensorWord(w.to_vec()), xy.clone()));
            }
        }
        QSElement { terms: out }
    }

    /// Deconcatenation coproduct.
    pub fn deconcatenation(&self) -> QSTensorSquare {
        let mut out = QSTensorSquare::default();
        for (w, c) in &self.terms {
            for i in 0..=w.len() {
                let (l, r) = w.0.split_at(i);
                add_into(&mut out.terms, (TensorWord(l.to_vec()), TensorWord(r.to_vec())), c.clone());
            }
        }
        out
    }

    /// Applies the algebra map defined by substituting generators.
    pub fn substitute(&self, f: &Substitution) -> Self {
        let mut out = BTreeMap::new();
        for (w, c) in &self.terms {
            let images: Vec<AElement> = w.0.iter().map(|m| f.apply(m)).collect();
            for (t, x) in QSElement::tensor(&images).terms {
                add_into(&mut out, t, c * x);
            }
        }
        QSElement { terms: out }
    }

    pub fn max_generator(&self) -> Option<u16> {
        self.terms
            .keys()
            .flat_map(|w| w.0.iter().map(Monomial::max_generator))
            .max()
    }

    pub fn to_json_value(&self) -> Value {
        let m = self.max_generator().map_or(0, |g| g as usize + 1);
        let names: Vec<String> = (1..=m).map(|i| format!("g{i}")).collect();
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let tensor: Vec<Value> = w
                    .0
                    .iter()
                    .map(|mono| {
                        let mut pairs: Vec<(String, u16)> =
                            mono.0.iter().map(|&(g, e)| (format!("g{}", g + 1), e)).collect();
                        pairs.sort();
                        json!(pairs)
                    })
                    .collect();
                json!({ "tensor": tensor, "coeff": rational::to_string_pq(c) })
            })
            .collect();
        json!({ "generators": names, "terms": terms })
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Json(m.to_string());
        let names: Vec<String> = serde_json::from_value(v.get("generators").cloned().ok_or_else(|| bad("missing generators"))?)?;
        let index = |name: &str| -> Result<u16> {
            names
                .iter()
                .position(|n| n == name)
                .map(|i| i as u16)
                .ok_or_else(|| Error::Json(format!("unknown generator {name:?}")))
        };
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
        let mut out = BTreeMap::new();
        for t in terms {
            let tensor: Vec<Vec<(String, u16)>> =
                serde_json::from_value(t.get("tensor").cloned().ok_or_else(|| bad("missing tensor"))?)?;
            let coeff = rational::parse(t.get("coeff").and_then(Value::as_str).ok_or_else(|| bad("missing coeff"))?)?;
            let mut word = Vec::with_capacity(tensor.len());
            for factor in tensor {
                let pairs = factor
                    .iter()
                    .map(|(n, e)| Ok((index(n)?, *e)))
                    .collect::<Result<Vec<_>>>()?;
                word.push(Monomial::new(&pairs).map_err(|e| Error::Json(e.to_string()))?);
            }
            add_into(&mut out, TensorWord(word), coeff);
        }
        Ok(QSElement { terms: out })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_json_value(&serde_json::from_str(s)?)
    }
}

fn qsh_words(a: &[Monomial], b: &[Monomial], buf: &mut Vec<Monomial>, emit: &mut dyn FnMut(&[Monomial])) {
    if a.is_empty() || b.is_empty() {
        let n = buf.len();
        buf.extend_from_slice(a);
        buf.extend_from_slice(b);
        emit(buf);
        buf.truncate(n);
        return;
    }
    buf.push(a[0].clone());
    qsh_words(&a[1..], b, buf, emit);
    buf.pop();
    buf.push(b[0].clone());
    qsh_words(a, &b[1..], buf, emit);
    buf.pop();
    buf.push(a[0].mul(&b[0]));
    qsh_words(&a[1..], &b[1..], buf, emit);
    buf.pop();
}

impl fmt::Display for QSElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_linear(f, self.terms.iter().map(|(w, c)| (w, c.clone())), "")
    }
}

impl fmt::Debug for QSElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &QSElement {
    type Output = QSElement;
    fn add(self, rhs: &QSElement) -> QSElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            add_into(&mut out.terms, w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &QSElement {
    type Output = QSElement;
    fn sub(self, rhs: &QSElement) -> QSElement {
        self + &rhs.scale(&rational::int(-1))
    }
}

/// An element of `QS(A) ⊗ QS(A)`.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct QSTensorSquare {
    terms: BTreeMap<(TensorWord, TensorWord), Rational>,
}

impl QSTensorSquare {
    pub fn terms(&self) -> impl Iterator<Item = (&TensorWord, &TensorWord, &Rational)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(a⊗b)(c⊗d) = (a ⊎ c) ⊗ (b ⊎ d)`.
    pub fn quasi_shuffle(&self, other: &Self) -> Self {
        let mut out = BTreeMap::new();
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                let left = QSElement::word(a.clone(), rational::one())
                    .quasi_shuffle(&QSElement::word(c.clone(), rational::one()));
                let right = QSElement::word(b.clone(), rational::one())
                    .quasi_shuffle(&QSElement::word(d.clone(), rational::one()));
                let xy = x * y;
                for (l, p) in left.terms() {
                    for (r, q) in right.terms() {
                        add_into(&mut out, (l.clone(), r.clone()), &xy * p * q);
                    }
                }
            }
        }
        QSTensorSquare { terms: out }
    }
}

/// Something that acts on `QS(A)` from the right.
#[derive(Clone, Debug)]
pub enum Operator {
    Element(WQSymElement),
    Series(TruncatedSeries),
}

impl From<WQSymElement> for Operator {
    fn from(f: WQSymElement) -> Self {
        Operator::Element(f)
    }
}

impl From<TruncatedSeries> for Operator {
    fn from(s: TruncatedSeries) -> Self {
        Operator::Series(s)
    }
}

/// `x ↦ ⊎ ∘ (f ⊗ g) ∘ Δ (x)`.
pub fn convolution_of_operators(f: &Operator, g: &Operator, x: &QSElement) -> Result<QSElement> {
    let mut out = QSElement::zero();
    for (a, b, c) in x.deconcatenation().terms() {
        let left = QSElement::word(a.clone(), c.clone()).act_op(f)?;
        let right = QSElement::word(b.clone(), rational::one()).act_op(g)?;
        out = &out + &left.quasi_shuffle(&right);
    }
    Ok(out)
}

/// An algebra map `A -> A` given on generators; unlisted generators are fixed.
#[derive(Clone, Debug, Default)]
pub struct Substitution {
    images: BTreeMap<u16, AElement>,
}

/// `(exponents, coefficient)` pairs of an element of `A`.
pub type RawAElement = Vec<(Vec<(u16, u16)>, Rational)>;

impl Substitution {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(images: BTreeMap<u16, AElement>) -> Self {
        Substitution { images }
    }

    /// Builds from raw monomial data, rejecting constant terms.
    pub fn from_raw(images: &[(u16, RawAElement)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (g, terms) in images {
            map.insert(*g, AElement::from_raw(terms)?);
        }
        Ok(Substitution { images: map })
    }

    pub fn image(&self, g: u16) -> AElement {
        self.images.get(&g).cloned().unwrap_or_else(|| AElement::generator(g))
    }

    pub fn apply(&self, m: &Monomial) -> AElement {
        let mut acc: Option<AElement> = None;
        for &(g, e) in m.pairs() {
            let p = self.image(g).pow(e);
            acc = Some(match acc {
                None => p,
                Some(a) => a.mul(&p),
            });
        }
        acc.expect("monomials are nonconstant")
    }
}

/// `T(f)(x · M_u) == T(f)(x) · M_u`.
pub fn naturality_check(f: &Substitution, u: &PackedWord, x: &QSElement) -> bool {
    let m = WQSymElement::basis(u.clone());
    x.substitute(f).act(&m) == x.act(&m).substitute(f)
}

/// `(x ⊎ y)·σ == sum (x·σ⁽¹⁾) ⊎ (y·σ⁽²⁾)` over the coproduct of `σ`.
pub fn car_coproduct_compatibility_check(sigma: &TruncatedSeries, x: &QSElement, y: &QSElement) -> Result<bool> {
    let (lhs, rhs) = car_coproduct_sides(sigma, x, y)?;
    Ok(lhs == rhs)
}

pub fn car_coproduct_sides(sigma: &TruncatedSeries, x: &QSElement, y: &QSElement) -> Result<(QSElement, QSElement)> {
    let dx = x.max_degree().unwrap_or(0);
    let dy = y.max_degree().unwrap_or(0);
    if dx + dy > sigma.cutoff() {
        return Err(Error::CutoffExceeded { degree: dx + dy, cutoff: sigma.cutoff() });
    }
    let lhs = x.quasi_shuffle(y).act_series(sigma)?;
    let mut rhs = QSElement::zero();
    for (u1, u2, c) in sigma.coproduct().terms() {
        let xa = x.homogeneous(u1.len());
        let yb = y.homogeneous(u2.len());
        if xa.is_zero() || yb.is_zero() {
            continue;
        }
        let left = xa.act(&WQSymElement::basis(u1.clone())).scale(c);
        let right = yb.act(&WQSymElement::basis(u2.clone()));
        rhs = &rhs + &left.quasi_shuffle(&right);
    }
    Ok((lhs, rhs))
}

/// `(x ⊎ y) · e_1 == 0` for `x`, `y` without constant term.
pub fn e1_kills_products_check(x: &QSElement, y: &QSElement, e1: &TruncatedSeries) -> Result<bool> {
    if !x.counit().is_zero() || !y.counit().is_zero() {
        return Err(Error::Precondition("arguments must lie in the augmentation ideal".into()));
    }
    Ok(x.quasi_shuffle(y).act_series(e1)?.is_zero())
}

/// Sum of `x' ⊎ x''` over the reduced deconcatenation (both legs nonempty).
pub fn reduced_coproduct_product(x: &QSElement) -> QSElement {
    let mut out = QSElement::zero();
    for (a, b, c) in x.deconcatenation().terms() {
        if a.is_empty() || b.is_empty() {
            continue;
        }
        let l = QSElement::word(a.clone(), c.clone());
        let r = QSElement::word(b.clone(), rational::one());
        out = &out + &l.quasi_shuffle(&r);
    }
    out
}

/// `x·Ψ² - 2x` equals the product of the reduced coproduct of `x`.
pub fn adams_on_indecomposables_check(x: &QSElement, psi2: &TruncatedSeries) -> Result<bool> {
    if !x.counit().is_zero() {
        return Err(Error::Precondition("argument must lie in the augmentation ideal".into()));
    }
    let lhs = &x.act_series(psi2)? - &x.scale(&rational::int(2));
    Ok(lhs == reduced_coproduct_product(x))
}

/// All tensor words `g_{i1} ⊗ ... ⊗ g_{in}` with `n <= max_degree` over `generators` generators.
pub fn generator_words(max_degree: usize, generators: u16) -> Vec<QSElement> {
    let mut out = vec![QSElement::unit()];
    let mut layer: Vec<Vec<u16>> = vec![vec![]];
    for _ in 0..max_degree {
        let mut next = Vec::with_capacity(layer.len() * generators as usize);
        for w in &layer {
            for g in 0..generators {
                let mut v = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        out.extend(next.iter().map(|w| QSElement::generators(w)));
        layer = next;
    }
    out
}

/// Recognition harness: `f` and `g` act identically on every generator tensor
/// word of degree `<= max_degree` over `generators` generators.
pub fn acts_identically(f: &WQSymElement, g: &WQSymElement, max_degree: usize, generators: u16) -> bool {
    let diff = f - g;
    if diff.max_degree().is_some_and(|d| d > max_degree) {
        return false;
    }
    generator_words(max_degree, generators)
        .iter()
        .all(|x| x.act(&diff).is_zero())
}

/// The universal test vector `g1 ⊗ ... ⊗ gn`; its image under `f` determines
/// the degree-`n` part of `f`.
pub fn universal_word(n: usize) -> QSElement {
    QSElement::generators(&(0..n as u16).collect::<Vec<_>>())
}

/// `S^{n,m}`-route for the quasi-shuffle of homogeneous elements.
pub fn quasi_shuffle_via_action(x: &QSElement, y: &QSElement) -> QSElement {
    let mut out = QSElement::zero();
    for (a, p) in x.terms() {
        for (b, q) in y.terms() {
            let s = crate::wqsym::embed_sym_hat(
                &packedword::Composition::new(
                    &[a.len() as u32, b.len() as u32]
                        .into_iter()
                        .filter(|&k| k > 0)
                        .collect::<Vec<_>>(),
                )
                .expect("positive"),
            );
            let w = QSElement::word(a.concat(b), p * q);
            out = &out + &w.act(&s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charseries::{adams, eulerian_idempotent, identity_series};
    use crate::rational::int;

    fn g(i: u16) -> AElement {
        AElement::generator(i)
    }

    fn pw(v: &[u32]) -> PackedWord {
        PackedWord::new(v).unwrap()
    }

    fn m(v: &[u32]) -> WQSymElement {
        WQSymElement::basis(pw(v))
    }

    fn t(fs: &[AElement]) -> QSElement {
        QSElement::tensor(fs)
    }

    #[test]
    fn action_examples() {
        let x = t(&[g(0), g(1), g(2)]);
        assert_eq!(x.act(&m(&[1, 2, 1])), t(&[g(0).mul(&g(2)), g(1)]));
        assert_eq!(x.act(&WQSymElement::identity(3)), x);
        assert!(t(&[g(0), g(1)]).act(&m(&[1])).is_zero());
    }

    #[test]
    fn quasi_shuffle_examples() {
        let (a, b) = (g(0), g(1));
        let want = &(&t(&[a.clone(), b.clone()]) + &t(&[b.clone(), a.clone()])) + &t(&[a.mul(&b)]);
        assert_eq!(t(std::slice::from_ref(&a)).quasi_shuffle(&t(std::slice::from_ref(&b))), want);
        let y = t(&[g(1), g(2)]);
        assert_eq!(QSElement::unit().quasi_shuffle(&y), y);

        let (a1, a2) = (g(0), g(1));
        let b = g(2);
        let want = [
            t(&[a1.clone(), a2.clone(), b.clone()]),
            t(&[a1.clone(), b.clone(), a2.clone()]),
            t(&[b.clone(), a1.clone(), a2.clone()]),
            t(&[a1.clone(), a2.mul(&b)]),
            t(&[a1.mul(&b), a2.clone()]),
        ]
        .iter()
        .fold(QSElement::zero(), |acc, x| &acc + x);
        assert_eq!(t(&[a1, a2]).quasi_shuffle(&t(&[b])), want);
    }

    #[test]
    fn quasi_shuffle_matches_module_form() {
        let x = t(&[g(0), g(1).add(&g(2))]);
        let y = t(&[g(1).mul(&g(0)), g(2)]);
        assert_eq!(x.quasi_shuffle(&y), quasi_shuffle_via_action(&x, &y));
    }

    #[test]
    fn deconcatenation_examples() {
        let a = t(&[g(0)]);
        let d = a.deconcatenation();
        assert_eq!(d.len(), 2);
        assert_eq!(QSElement::unit().deconcatenation().len(), 1);
        let ab = t(&[g(0), g(1)]);
        let cuts: Vec<(usize, usize)> = ab.deconcatenation().terms().map(|(l, r, _)| (l.len(), r.len())).collect();
        assert_eq!(cuts.len(), 3);
        assert!(cuts.contains(&(0, 2)) && cuts.contains(&(1, 1)) && cuts.contains(&(2, 0)));
    }

    #[test]
    fn convolution_examples() {
        let (a, b) = (g(0), g(1));
        let x = t(&[a.clone(), b.clone()]);
        let f: Operator = m(&[1]).into();
        let got = convolution_of_operators(&f, &f, &x).unwrap();
        let want = &(&t(&[a.clone(), b.clone()]) + &t(&[b.clone(), a.clone()])) + &t(&[a.mul(&b)]);
        assert_eq!(got, want);

        let h = m(&[2, 1]) + m(&[1, 1]);
        let unit: Operator = WQSymElement::unit().into();
        assert_eq!(convolution_of_operators(&unit, &h.clone().into(), &x).unwrap(), x.act(&h));

        let x3 = t(&[g(0), g(1), g(2)]);
        let got = convolution_of_operators(&m(&[1]).into(), &m(&[1, 2]).into(), &x3).unwrap();
        assert_eq!(got, x3.act(&m(&[1]).outer(&m(&[1, 2]))));
    }

    #[test]
    fn naturality_examples() {
        let x = t(&[g(0), g(0)]);
        assert!(naturality_check(&Substitution::identity(), &pw(&[1, 1]), &x));
        let f = Substitution::new([(0, g(0).add(&g(1).pow(2)))].into_iter().collect());
        assert!(naturality_check(&f, &pw(&[1, 1]), &x));
        assert!(Substitution::from_raw(&[(0, vec![(vec![], int(1))])]).is_err());
    }

    #[test]
    fn car_compatibility_examples() {
        let x = t(&[g(0)]);
        let y = t(&[g(1)]);
        assert!(car_coproduct_compatibility_check(&identity_series(2), &x, &y).unwrap());
        let (lhs, rhs) = car_coproduct_sides(&eulerian_idempotent(1, 2), &x, &y).unwrap();
        assert!(lhs.is_zero() && rhs.is_zero());
        assert!(car_coproduct_compatibility_check(&adams(2, 4), &t(&[g(0), g(1)]), &t(&[g(2), g(0)])).unwrap());
        assert!(car_coproduct_compatibility_check(&adams(2, 1), &x, &y).is_err());
    }

    #[test]
    fn e1_kills_products_examples() {
        let e1 = eulerian_idempotent(1, 6);
        assert!(e1_kills_products_check(&t(&[g(0)]), &t(&[g(1)]), &e1).unwrap());
        assert!(e1_kills_products_check(&QSElement::zero(), &t(&[g(1)]), &e1).unwrap());
        assert!(e1_kills_products_check(&QSElement::unit(), &t(&[g(1)]), &e1).is_err());
        // e1 is not zero on indecomposables
        assert!(!t(&[g(0)]).act_series(&e1).unwrap().is_zero());
    }

    #[test]
    fn adams_on_indecomposables_examples() {
        let psi2 = adams(2, 4);
        assert!(adams_on_indecomposables_check(&t(&[g(0)]), &psi2).unwrap());
        let x = t(&[g(0), g(1)]);
        assert_eq!(
            &x.act_series(&psi2).unwrap() - &x.scale(&int(2)),
            t(&[g(0)]).quasi_shuffle(&t(&[g(1)]))
        );
        assert!(adams_on_indecomposables_check(&x, &psi2).unwrap());
    }

    #[test]
    fn recognition_catches_perturbations() {
        let f = m(&[1, 2]) + m(&[2, 1, 1]);
        assert!(acts_identically(&f, &f.clone(), 3, 3));
        let g2 = &f + &m(&[1, 1, 2]);
        assert!(!acts_identically(&f, &g2, 3, 3));
    }

    #[test]
    fn json_round_trip() {
        let x = &t(&[g(0).mul(&g(2)).mul(&g(0)), g(1).pow(2)]) + &QSElement::unit().scale(&int(3));
        let s = x.to_json();
        assert!(s.contains(r#"[["g1",2],["g3",1]]"#), "{s}");
        assert_eq!(QSElement::from_json(&s).unwrap(), x);
        assert!(QSElement::from_json(r#"{"generators":["a"],"terms":[{"tensor":[[["b",1]]],"coeff":"1"}]}"#).is_err());
    }
}
