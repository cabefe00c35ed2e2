//! Word quasi-symmetric functions in the monomial basis `M_u`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::packedword::{
    self, compose_surjections, descents, quasi_shuffle_indices, shifted_concat, value_split,
    Composition, PackedWord,
};
use crate::rational::{self, Rational};

/// Below this many term pairs a product runs sequentially regardless of [`Exec`].
const PAR_THRESHOLD: usize = 512;

pub(crate) fn add_into<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub(crate) fn merge_into<K: Ord>(map: &mut BTreeMap<K, Rational>, other: BTreeMap<K, Rational>) {
    for (k, c) in other {
        add_into(map, k, c);
    }
}

/// A finite linear combination of `M_u` with nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct WQSymElement {
    terms: BTreeMap<PackedWord, Rational>,
}

impl WQSymElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `M_[]`.
    pub fn unit() -> Self {
        Self::basis(PackedWord::empty())
    }

    pub fn basis(u: PackedWord) -> Self {
        Self::monomial(u, rational::one())
    }

    pub fn monomial(u: PackedWord, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        add_into(&mut terms, u, c);
        WQSymElement { terms }
    }

    pub fn scalar(c: Rational) -> Self {
        Self::monomial(PackedWord::empty(), c)
    }

    /// `M_{12...n}`.
    pub fn identity(n: usize) -> Self {
        Self::basis(PackedWord::identity(n))
    }

    pub fn from_terms<I: IntoIterator<Item = (PackedWord, Rational)>>(iter: I) -> Self {
        let mut terms = BTreeMap::new();
        for (u, c) in iter {
            add_into(&mut terms, u, c);
        }
        WQSymElement { terms }
    }

    /// Sum of `M_u` over `words`, each with coefficient one.
    pub fn sum_of<'a, I: IntoIterator<Item = &'a PackedWord>>(words: I) -> Self {
        Self::from_terms(words.into_iter().map(|u| (u.clone(), rational::one())))
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&PackedWord, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<PackedWord, Rational> {
        self.terms
    }

    pub fn coeff(&self, u: &PackedWord) -> Rational {
        self.terms.get(u).cloned().unwrap_or_else(rational::zero)
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
        self.terms.keys().next_back().map(PackedWord::len)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut lens = self.terms.keys().map(PackedWord::len);
        match lens.next() {
            Some(d) => lens.all(|e| e == d),
            None => true,
        }
    }

    /// The part made of words of length `d`.
    pub fn homogeneous(&self, d: usize) -> Self {
        WQSymElement {
            terms: self
                .terms
                .iter()
                .filter(|(u, _)| u.len() == d)
                .map(|(u, c)| (u.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        WQSymElement {
            terms: self.terms.iter().map(|(u, a)| (u.clone(), a * c)).collect(),
        }
    }

    /// Product of the algebra: `M_u M_v = sum of M_w` over the shifted quasi-shuffle.
    pub fn outer(&self, other: &Self) -> Self {
        self.outer_with(other, Exec::default())
    }

    pub fn outer_with(&self, other: &Self, exec: Exec) -> Self {
        self.bilinear(other, exec, |u, v, c, out| {
            for w in quasi_shuffle_indices(u, v) {
                add_into(out, w, c.clone());
            }
        })
    }

    /// Internal product `M_u * M_v = M_{v . u}` if `len(v) == max(u)`, else 0.
    pub fn internal(&self, other: &Self) -> Self {
        self.internal_with(other, Exec::default())
    }

    pub fn internal_with(&self, other: &Self, exec: Exec) -> Self {
        let mut by_len: Vec<Vec<(&PackedWord, &Rational)>> = Vec::new();
        for (v, b) in &other.terms {
            if by_len.len() <= v.len() {
                by_len.resize_with(v.len() + 1, Vec::new);
            }
            by_len[v.len()].push((v, b));
        }
        let left: Vec<_> = self.terms.iter().collect();
        let work: usize = left
            .iter()
            .map(|(u, _)| by_len.get(u.breadth()).map_or(0, Vec::len))
            .sum();
        let exec = if work < PAR_THRESHOLD { Exec::Sequential } else { exec };
        let parts = exec::map_collect(exec, &left, |(u, a)| {
            let mut out = BTreeMap::new();
            if let Some(bucket) = by_len.get(u.breadth()) {
                for (v, b) in bucket {
                    let w = compose_surjections(u, v).expect("length matches breadth");
                    add_into(&mut out, w, *a * *b);
                }
            }
            out
        });
        let mut terms = BTreeMap::new();
        for p in parts {
            merge_into(&mut terms, p);
        }
        WQSymElement { terms }
    }

    /// Shifted concatenation `M_u . M_v = M_{u . v[max u]}`.
    pub fn bullet(&self, other: &Self) -> Self {
        self.bilinear(other, Exec::Sequential, |u, v, c, out| {
            add_into(out, shifted_concat(u, v), c);
        })
    }

    fn bilinear<F>(&self, other: &Self, exec: Exec, kernel: F) -> Self
    where
        F: Fn(&PackedWord, &PackedWord, Rational, &mut BTreeMap<PackedWord, Rational>) + Sync + Send,
    {
        let left: Vec<_> = self.terms.iter().collect();
        let exec = if left.len() * other.len() < PAR_THRESHOLD { Exec::Sequential } else { exec };
        let parts = exec::map_collect(exec, &left, |(u, a)| {
            let mut out = BTreeMap::new();
            for (v, b) in &other.terms {
                kernel(u, v, *a * b, &mut out);
            }
            out
        });
        let mut terms = BTreeMap::new();
        for p in parts {
            merge_into(&mut terms, p);
        }
        WQSymElement { terms }
    }

    /// `Δ(M_u) = sum_{i=0}^{max u} M_{u|[1,i]} ⊗ M_{pack(u|[i+1,max u])}`.
    pub fn coproduct(&self) -> TensorSquare {
        let mut t = TensorSquare::zero();
        for (u, c) in &self.terms {
            for i in 0..=u.breadth() {
                let (a, b) = value_split(u, i);
                t.add_term(a, b, c.clone());
            }
        }
        t
    }

    /// Counit: the coefficient of `M_[]`.
    pub fn counit(&self) -> Rational {
        self.coeff(&PackedWord::empty())
    }

    /// Maps each coefficient; zero results are dropped.
    pub fn map_coeffs<F: Fn(&PackedWord, &Rational) -> Rational>(&self, f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(u, c)| (u.clone(), f(u, c))))
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(ElementJson {
            basis: "WQSym-M".into(),
            terms: self
                .terms
                .iter()
                .map(|(u, c)| TermJson {
                    word: u.clone(),
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
        let parsed: ElementJson = serde_json::from_value(v.clone())?;
        if parsed.basis != "WQSym-M" {
            return Err(Error::BasisMismatch(format!(
                "expected basis WQSym-M, found {}",
                parsed.basis
            )));
        }
        let mut terms = Vec::with_capacity(parsed.terms.len());
        for t in parsed.terms {
            terms.push((t.word, rational::parse(&t.coeff)?));
        }
        Ok(Self::from_terms(terms))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_json_value(&serde_json::from_str(s)?)
    }
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    basis: String,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    word: PackedWord,
    coeff: String,
}

pub(crate) fn fmt_linear<K, I>(f: &mut fmt::Formatter<'_>, terms: I, prefix: &str) -> fmt::Result
where
    K: fmt::Display,
    I: IntoIterator<Item = (K, Rational)>,
{
    let mut first = true;
    for (k, c) in terms {
        let (neg, mag) = (c.is_negative(), c.abs());
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        if !mag.is_one() {
            write!(f, "{}*", rational::display(&mag))?;
        }
        write!(f, "{prefix}{k}")?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for WQSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_linear(f, self.terms.iter().map(|(u, c)| (u, c.clone())), "M")
    }
}

impl fmt::Debug for WQSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl AddAssign<&WQSymElement> for WQSymElement {
    fn add_assign(&mut self, rhs: &WQSymElement) {
        for (u, c) in &rhs.terms {
            add_into(&mut self.terms, u.clone(), c.clone());
        }
    }
}

impl SubAssign<&WQSymElement> for WQSymElement {
    fn sub_assign(&mut self, rhs: &WQSymElement) {
        for (u, c) in &rhs.terms {
            add_into(&mut self.terms, u.clone(), -c);
        }
    }
}

impl Add for &WQSymElement {
    type Output = WQSymElement;
    fn add(self, rhs: &WQSymElement) -> WQSymElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for WQSymElement {
    type Output = WQSymElement;
    fn add(mut self, rhs: WQSymElement) -> WQSymElement {
        self += &rhs;
        self
    }
}

impl Sub for &WQSymElement {
    type Output = WQSymElement;
    fn sub(self, rhs: &WQSymElement) -> WQSymElement {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for WQSymElement {
    type Output = WQSymElement;
    fn sub(mut self, rhs: WQSymElement) -> WQSymElement {
        self -= &rhs;
        self
    }
}

impl Neg for &WQSymElement {
    type Output = WQSymElement;
    fn neg(self) -> WQSymElement {
        WQSymElement {
            terms: self.terms.iter().map(|(u, c)| (u.clone(), -c)).collect(),
        }
    }
}

impl Neg for WQSymElement {
    type Output = WQSymElement;
    fn neg(self) -> WQSymElement {
        -&self
    }
}

/// An element of `WQSym ⊗ WQSym` stored on pairs of basis words.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct TensorSquare {
    terms: BTreeMap<(PackedWord, PackedWord), Rational>,
}

impl TensorSquare {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, a: PackedWord, b: PackedWord, c: Rational) {
        add_into(&mut self.terms, (a, b), c);
    }

    /// `f ⊗ g`.
    pub fn tensor(f: &WQSymElement, g: &WQSymElement) -> Self {
        let mut t = Self::zero();
        for (u, a) in f.terms() {
            for (v, b) in g.terms() {
                t.add_term(u.clone(), v.clone(), a * b);
            }
        }
        t
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PackedWord, &PackedWord, &Rational)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
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

    /// Product in the tensor-square algebra: `(a⊗b)(c⊗d) = ac ⊗ bd`.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                let left = quasi_shuffle_indices(a, c);
                let right = quasi_shuffle_indices(b, d);
                let xy = x * y;
                for l in &left {
                    for r in &right {
                        out.add_term(l.clone(), r.clone(), xy.clone());
                    }
                }
            }
        }
        out
    }

    /// `(Δ ⊗ id)`.
    pub fn coproduct_left(&self) -> TensorCube {
        let mut out = TensorCube::default();
        for ((a, b), c) in &self.terms {
            for i in 0..=a.breadth() {
                let (x, y) = value_split(a, i);
                add_into(&mut out.terms, (x, y, b.clone()), c.clone());
            }
        }
        out
    }

    /// `(id ⊗ Δ)`.
    pub fn coproduct_right(&self) -> TensorCube {
        let mut out = TensorCube::default();
        for ((a, b), c) in &self.terms {
            for i in 0..=b.breadth() {
                let (x, y) = value_split(b, i);
                add_into(&mut out.terms, (a.clone(), x, y), c.clone());
            }
        }
        out
    }
}

impl Add for &TensorSquare {
    type Output = TensorSquare;
    fn add(self, rhs: &TensorSquare) -> TensorSquare {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            add_into(&mut out.terms, k.clone(), c.clone());
        }
        out
    }
}

/// An element of the triple tensor power, used for coassociativity.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct TensorCube {
    terms: BTreeMap<(PackedWord, PackedWord, PackedWord), Rational>,
}

impl TensorCube {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Packed words of length `n` whose descent set satisfies `pred`.
fn words_with_descents<F: Fn(&std::collections::BTreeSet<usize>) -> bool>(
    n: usize,
    pred: F,
) -> Vec<PackedWord> {
    packedword::enumerate_packed_words_capped(n, usize::MAX)
        .expect("uncapped")
        .iter()
        .filter(|u| pred(&descents(u.letters())))
        .cloned()
        .collect()
}

/// Standard embedding: `S^I = sum over Des(u) ⊆ D(I)` of `M_u`.
pub fn embed_sym_standard(i: &Composition) -> WQSymElement {
    let d = i.descent_set();
    WQSymElement::sum_of(&words_with_descents(i.weight(), |des| des.is_subset(&d)))
}

/// Standard ribbon: `R_I = sum over Des(u) = D(I)` of `M_u`.
pub fn ribbon_standard(i: &Composition) -> WQSymElement {
    let d = i.descent_set();
    WQSymElement::sum_of(&words_with_descents(i.weight(), |des| *des == d))
}

/// `Ŝ^I = M_{12..i_1} M_{12..i_2} ... M_{12..i_k}` under `S_n ↦ M_{12...n}`.
pub fn embed_sym_hat(i: &Composition) -> WQSymElement {
    i.parts()
        .iter()
        .fold(WQSymElement::unit(), |acc, &p| acc.outer(&WQSymElement::identity(p as usize)))
}

/// `[n-1] \ {i_k, i_k + i_{k-1}, ...}`.
fn hat_descent_target(i: &Composition) -> std::collections::BTreeSet<usize> {
    let n = i.weight();
    let cut = i.reverse_descent_set();
    (1..n).filter(|d| !cut.contains(d)).collect()
}

/// Closed form of `Ŝ^I` as a sum over reversed words with a descent superset.
pub fn embed_sym_hat_closed_form(i: &Composition) -> WQSymElement {
    let target = hat_descent_target(i);
    let words = words_with_descents(i.weight(), |des| des.is_superset(&target));
    WQSymElement::sum_of(&words.iter().map(packedword::reverse).collect::<Vec<_>>())
}

/// `R̂_I = sum over Des(u) = [n-1] \ {i_k, i_k + i_{k-1}, ...}` of `M_{ǔ}`.
pub fn ribbon_hat(i: &Composition) -> WQSymElement {
    let target = hat_descent_target(i);
    let words = words_with_descents(i.weight(), |des| *des == target);
    WQSymElement::sum_of(&words.iter().map(packedword::reverse).collect::<Vec<_>>())
}

/// Checks `M_{u1} ... M_{ur} = (M_{u1} • ... • M_{ur}) * Ŝ^I` with `i_k = max(u_k)`.
pub fn crucial_factorization_check(us: &[PackedWord]) -> bool {
    let (lhs, rhs) = crucial_sides(us);
    lhs == rhs
}

/// Both sides of the factorization of an outer product through bullet and internal products.
pub fn crucial_sides(us: &[PackedWord]) -> (WQSymElement, WQSymElement) {
    let lhs = us
        .iter()
        .fold(WQSymElement::unit(), |acc, u| acc.outer(&WQSymElement::basis(u.clone())));
    let bullet = us
        .iter()
        .fold(PackedWord::empty(), |acc, u| shifted_concat(&acc, u));
    let parts: Vec<u32> = us.iter().map(|u| u.breadth() as u32).filter(|&k| k > 0).collect();
    let comp = Composition::new(&parts).expect("positive parts");
    let rhs = WQSymElement::basis(bullet).internal(&embed_sym_hat(&comp));
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn pw(v: &[u32]) -> PackedWord {
        PackedWord::new(v).unwrap()
    }

    fn m(v: &[u32]) -> WQSymElement {
        WQSymElement::basis(pw(v))
    }

    fn comp(v: &[u32]) -> Composition {
        Composition::new(v).unwrap()
    }

    fn sum(ws: &[&[u32]]) -> WQSymElement {
        ws.iter().fold(WQSymElement::zero(), |acc, w| acc + m(w))
    }

    #[test]
    fn outer_product_examples() {
        assert_eq!(
            m(&[1, 1]).outer(&m(&[2, 1])),
            sum(&[&[1, 1, 3, 2], &[1, 1, 2, 1], &[2, 2, 3, 1], &[2, 2, 2, 1], &[3, 3, 2, 1]])
        );
        let g = m(&[2, 1]).scale(&frac(3, 2)) + m(&[1]);
        assert_eq!(WQSymElement::unit().outer(&g), g);
        assert_eq!(
            m(&[1]).outer(&m(&[1, 2])),
            sum(&[&[1, 2, 3], &[1, 1, 2], &[2, 1, 3], &[2, 1, 2], &[3, 1, 2]])
        );
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let f = WQSymElement::sum_of(&*packedword::enumerate_packed_words(3).unwrap());
        let g = WQSymElement::sum_of(&*packedword::enumerate_packed_words(2).unwrap());
        assert_eq!(f.outer_with(&g, Exec::Sequential), f.outer_with(&g, Exec::Parallel));
        let h = WQSymElement::sum_of(&*packedword::enumerate_packed_words(4).unwrap());
        assert_eq!(
            h.internal_with(&f, Exec::Sequential),
            h.internal_with(&f, Exec::Parallel)
        );
    }

    #[test]
    fn coproduct_examples() {
        let mut want = TensorSquare::zero();
        want.add_term(PackedWord::empty(), pw(&[1, 2, 1]), int(1));
        want.add_term(pw(&[1, 1]), pw(&[1]), int(1));
        want.add_term(pw(&[1, 2, 1]), PackedWord::empty(), int(1));
        assert_eq!(m(&[1, 2, 1]).coproduct(), want);

        let mut unit = TensorSquare::zero();
        unit.add_term(PackedWord::empty(), PackedWord::empty(), int(1));
        assert_eq!(WQSymElement::unit().coproduct(), unit);

        for n in 0..6 {
            let mut want = TensorSquare::zero();
            for i in 0..=n {
                want.add_term(PackedWord::identity(i), PackedWord::identity(n - i), int(1));
            }
            assert_eq!(WQSymElement::identity(n).coproduct(), want);
        }
    }

    #[test]
    fn internal_product_examples() {
        assert_eq!(m(&[2, 1]).internal(&m(&[2, 1])), m(&[1, 2]));
        let v = m(&[1, 3, 2, 1]);
        assert_eq!(WQSymElement::identity(4).internal(&v), v);
        assert!(m(&[1, 1]).internal(&m(&[1, 2])).is_zero());
    }

    #[test]
    fn bullet_examples() {
        assert_eq!(m(&[1, 1]).bullet(&m(&[2, 1])), m(&[1, 1, 3, 2]));
        let g = m(&[2, 1]) - m(&[1]);
        assert_eq!(WQSymElement::unit().bullet(&g), g);
        assert_eq!(m(&[1]).bullet(&m(&[1])), m(&[1, 2]));
    }

    #[test]
    fn standard_embedding_examples() {
        assert_eq!(embed_sym_standard(&Composition::empty()), WQSymElement::unit());
        assert_eq!(embed_sym_standard(&comp(&[1, 1])), sum(&[&[1, 1], &[1, 2], &[2, 1]]));
        assert_eq!(
            embed_sym_standard(&comp(&[3])),
            sum(&[&[1, 1, 1], &[1, 1, 2], &[1, 2, 2], &[1, 2, 3]])
        );
        assert_eq!(ribbon_standard(&comp(&[1, 1])), m(&[2, 1]));
        assert_eq!(ribbon_standard(&comp(&[2])), sum(&[&[1, 1], &[1, 2]]));
        assert_eq!(ribbon_standard(&comp(&[3])), embed_sym_standard(&comp(&[3])));
    }

    #[test]
    fn hat_embedding_examples() {
        assert_eq!(embed_sym_hat(&comp(&[4])), WQSymElement::identity(4));
        assert_eq!(embed_sym_hat(&Composition::empty()), WQSymElement::unit());
        assert_eq!(
            embed_sym_hat(&comp(&[1, 2])),
            sum(&[&[1, 2, 3], &[1, 1, 2], &[2, 1, 3], &[2, 1, 2], &[3, 1, 2]])
        );
        assert_eq!(ribbon_hat(&comp(&[3])), WQSymElement::identity(3));
        assert_eq!(
            ribbon_hat(&comp(&[1, 1])),
            embed_sym_hat(&comp(&[1, 1])) - embed_sym_hat(&comp(&[2]))
        );
        assert_eq!(ribbon_hat(&Composition::empty()), WQSymElement::unit());
    }

    #[test]
    fn crucial_examples() {
        let (lhs, rhs) = crucial_sides(&[pw(&[1, 1]), pw(&[2, 1])]);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, m(&[1, 1]).outer(&m(&[2, 1])));
        assert!(crucial_factorization_check(&[pw(&[2, 1, 3, 1])]));
    }

    #[test]
    fn json_round_trip_and_format() {
        let f = m(&[1, 3, 1, 3, 2]).scale(&frac(-2, 4)) + m(&[1]);
        let s = f.to_json();
        assert_eq!(
            s,
            r#"{"basis":"WQSym-M","terms":[{"coeff":"1/1","word":[1]},{"coeff":"-1/2","word":[1,3,1,3,2]}]}"#
        );
        assert_eq!(WQSymElement::from_json(&s).unwrap(), f);
        assert!(WQSymElement::from_json(r#"{"basis":"QSym-M","terms":[]}"#).is_err());
        assert!(WQSymElement::from_json(r#"{"basis":"WQSym-M","terms":[{"coeff":"1","word":[2]}]}"#).is_err());
        assert_eq!(f.to_string(), "M[1] - 1/2*M[1,3,1,3,2]");
        assert_eq!(WQSymElement::zero().to_string(), "0");
    }

    #[test]
    fn zero_coefficients_are_pruned() {
        let f = m(&[1, 2]) - m(&[1, 2]);
        assert!(f.is_zero());
        assert!(m(&[1]).scale(&int(0)).is_zero());
    }
}
