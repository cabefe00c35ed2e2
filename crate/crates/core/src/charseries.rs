//! Degree-truncated series in the completion of WQSym.
//!
//! A [`TruncatedSeries`] stores homogeneous components of word length
//! `0..=cutoff`. Binary operations combine at the smaller cutoff.
//! Convolution is the outer product taken degree by degree; the identity
//! series `I = sum M_{12...n}` generates the characteristic subalgebra, whose
//! Adams operations are the convolution powers `Ψ^k = I^k` and whose
//! quasi-Eulerian idempotents are `e_i = log(I)^i / i!`.

use std::fmt;

use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::packedword::compositions_of;
use crate::rational::{self, Rational};
use crate::wqsym::{ribbon_hat, TensorSquare, WQSymElement};

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    cutoff: usize,
    components: Vec<WQSymElement>,
}

impl TruncatedSeries {
    pub fn zero(cutoff: usize) -> Self {
        TruncatedSeries {
            cutoff,
            components: vec![WQSymElement::zero(); cutoff + 1],
        }
    }

    /// The convolution unit `M_[]`.
    pub fn unit(cutoff: usize) -> Self {
        let mut s = Self::zero(cutoff);
        s.components[0] = WQSymElement::unit();
        s
    }

    /// Splits `f` into homogeneous components; terms above `cutoff` are an error.
    pub fn from_element(f: &WQSymElement, cutoff: usize) -> Result<Self> {
        if let Some(d) = f.max_degree().filter(|&d| d > cutoff) {
            return Err(Error::CutoffExceeded { degree: d, cutoff });
        }
        Ok(Self::truncate_element(f, cutoff))
    }

    /// Like [`from_element`](Self::from_element) but drops terms above `cutoff`.
    pub fn truncate_element(f: &WQSymElement, cutoff: usize) -> Self {
        let mut s = Self::zero(cutoff);
        for (u, c) in f.terms() {
            if u.len() <= cutoff {
                s.components[u.len()] += &WQSymElement::monomial(u.clone(), c.clone());
            }
        }
        s
    }

    /// Builds a series from components; component `d` must be homogeneous of degree `d`.
    pub fn from_components(cutoff: usize, components: Vec<WQSymElement>) -> Result<Self> {
        let mut s = Self::zero(cutoff);
        for (d, c) in components.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if d > cutoff {
                return Err(Error::CutoffExceeded { degree: d, cutoff });
            }
            if c.terms().any(|(u, _)| u.len() != d) {
                return Err(Error::Precondition(format!("component {d} is not homogeneous of degree {d}")));
            }
            s.components[d] = c;
        }
        Ok(s)
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn component(&self, d: usize) -> &WQSymElement {
        &self.components[d]
    }

    pub fn components(&self) -> &[WQSymElement] {
        &self.components
    }

    /// Sum of all components as a single (inhomogeneous) element.
    pub fn to_element(&self) -> WQSymElement {
        self.components.iter().fold(WQSymElement::zero(), |acc, c| acc + c.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(WQSymElement::is_zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.components[0].counit()
    }

    /// Restricts to a smaller cutoff.
    pub fn truncate(&self, cutoff: usize) -> Self {
        let cutoff = cutoff.min(self.cutoff);
        TruncatedSeries {
            cutoff,
            components: self.components[..=cutoff].to_vec(),
        }
    }

    fn zip_with<F: Fn(&WQSymElement, &WQSymElement) -> WQSymElement>(&self, other: &Self, f: F) -> Self {
        let cutoff = self.cutoff.min(other.cutoff);
        TruncatedSeries {
            cutoff,
            components: (0..=cutoff)
                .map(|d| f(&self.components[d], &other.components[d]))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries {
            cutoff: self.cutoff,
            components: self.components.iter().map(|x| x.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&rational::int(-1))
    }

    /// Convolution (outer) product: component `d` is `sum_{a+b=d} F_a G_b`.
    pub fn convolve(&self, other: &Self) -> Self {
        self.convolve_with(other, Exec::default())
    }

    pub fn convolve_with(&self, other: &Self, exec: Exec) -> Self {
        let cutoff = self.cutoff.min(other.cutoff);
        let degrees: Vec<usize> = (0..=cutoff).collect();
        let components = exec::map_collect(exec, &degrees, |&d| {
            let mut acc = WQSymElement::zero();
            for a in 0..=d {
                let (f, g) = (&self.components[a], &other.components[d - a]);
                if !f.is_zero() && !g.is_zero() {
                    acc += &f.outer_with(g, exec);
                }
            }
            acc
        });
        TruncatedSeries { cutoff, components }
    }

    /// Internal product. The right factor of `M_u * M_v` has length
    /// `max(u) <= len(u)`, so component `d` is `F_d * (G_0 + ... + G_d)`.
    pub fn internal(&self, other: &Self) -> Self {
        self.internal_with(other, Exec::default())
    }

    pub fn internal_with(&self, other: &Self, exec: Exec) -> Self {
        let cutoff = self.cutoff.min(other.cutoff);
        let degrees: Vec<usize> = (0..=cutoff).collect();
        let components = exec::map_collect(exec, &degrees, |&d| {
            let mut acc = WQSymElement::zero();
            for j in 0..=d {
                acc += &self.components[d].internal_with(&other.components[j], exec);
            }
            acc
        });
        TruncatedSeries { cutoff, components }
    }

    /// `k`-th convolution power.
    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::unit(self.cutoff);
        for _ in 0..k {
            acc = acc.convolve(self);
        }
        acc
    }

    /// `F - F_0`, the 0-connected part.
    fn without_constant(&self) -> Self {
        let mut s = self.clone();
        s.components[0] = WQSymElement::zero();
        s
    }

    /// Convolution inverse via the geometric series in `F/c - 1`, `c = F_0`.
    pub fn inverse(&self) -> Result<Self> {
        let c = self.constant_term();
        if c.is_zero() || self.components[0].len() != 1 {
            return Err(Error::NotInvertible);
        }
        let cinv = rational::one() / &c;
        let x = self.scale(&cinv).without_constant();
        let mut acc = Self::unit(self.cutoff);
        let mut power = Self::unit(self.cutoff);
        for k in 1..=self.cutoff {
            power = power.convolve(&x);
            let sign = if k % 2 == 1 { -1 } else { 1 };
            acc = acc.add(&power.scale(&rational::int(sign)));
        }
        Ok(acc.scale(&cinv))
    }

    /// `log(F) = sum_{n>=1} (-1)^{n+1} (F - 1)^n / n`; requires `F_0 = M_[]`.
    pub fn log(&self) -> Result<Self> {
        if self.components[0] != WQSymElement::unit() {
            return Err(Error::Precondition("log needs constant term 1".into()));
        }
        let x = self.without_constant();
        let mut acc = Self::zero(self.cutoff);
        let mut power = Self::unit(self.cutoff);
        for n in 1..=self.cutoff {
            power = power.convolve(&x);
            let sign = if n % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&power.scale(&rational::frac(sign, n as i64)));
        }
        Ok(acc)
    }

    /// `exp(F) = sum F^n / n!`; requires `F_0 = 0`.
    pub fn exp(&self) -> Result<Self> {
        if !self.components[0].is_zero() {
            return Err(Error::Precondition("exp needs zero constant term".into()));
        }
        let mut acc = Self::unit(self.cutoff);
        let mut power = Self::unit(self.cutoff);
        for n in 1..=self.cutoff {
            power = power.convolve(self);
            acc = acc.add(&power.scale(&(rational::one() / rational::factorial(n))));
        }
        Ok(acc)
    }

    /// `Δ` applied to every component.
    pub fn coproduct(&self) -> TensorSquare {
        self.components
            .iter()
            .fold(TensorSquare::zero(), |acc, c| &acc + &c.coproduct())
    }

    pub fn to_json_value(&self) -> Value {
        let mut comps = Map::new();
        for (d, c) in self.components.iter().enumerate() {
            if !c.is_zero() {
                comps.insert(d.to_string(), c.to_json_value());
            }
        }
        json!({ "cutoff": self.cutoff, "components": comps })
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Json(m.to_string());
        let cutoff = v
            .get("cutoff")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing cutoff"))? as usize;
        let comps = v
            .get("components")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing components"))?;
        let mut parts = vec![WQSymElement::zero(); cutoff + 1];
        for (k, c) in comps {
            let d: usize = k.parse().map_err(|_| bad("component key is not a degree"))?;
            if d > cutoff {
                return Err(Error::CutoffExceeded { degree: d, cutoff });
            }
            parts[d] = WQSymElement::from_json_value(c)?;
        }
        Self::from_components(cutoff, parts)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_json_value(&serde_json::from_str(s)?)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = self.to_element();
        if e.is_zero() {
            write!(f, "O({})", self.cutoff + 1)
        } else {
            write!(f, "{e} + O({})", self.cutoff + 1)
        }
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `I = sum_{d <= N} M_{12...d}`.
pub fn identity_series(cutoff: usize) -> TruncatedSeries {
    TruncatedSeries {
        cutoff,
        components: (0..=cutoff).map(WQSymElement::identity).collect(),
    }
}

/// `σ̂_t = sum t^d M_{12...d}` for a rational `t`.
pub fn sigma_hat(t: &Rational, cutoff: usize) -> TruncatedSeries {
    let mut power = rational::one();
    let mut components = Vec::with_capacity(cutoff + 1);
    for d in 0..=cutoff {
        components.push(WQSymElement::identity(d).scale(&power));
        power *= t;
    }
    TruncatedSeries { cutoff, components }
}

/// `Ψ^k = I^k`.
pub fn adams(k: usize, cutoff: usize) -> TruncatedSeries {
    identity_series(cutoff).pow(k)
}

/// `e_i = log(I)^i / i!`.
pub fn eulerian_idempotent(i: usize, cutoff: usize) -> TruncatedSeries {
    let log = identity_series(cutoff).log().expect("constant term of I is 1");
    log.pow(i).scale(&(rational::one() / rational::factorial(i)))
}

/// All of `e_0, ..., e_cutoff`, sharing one logarithm.
pub fn eulerian_family(cutoff: usize) -> Vec<TruncatedSeries> {
    let log = identity_series(cutoff).log().expect("constant term of I is 1");
    let mut out = Vec::with_capacity(cutoff + 1);
    let mut power = TruncatedSeries::unit(cutoff);
    for i in 0..=cutoff {
        if i > 0 {
            power = power.convolve(&log);
        }
        out.push(power.scale(&(rational::one() / rational::factorial(i))));
    }
    out
}

/// `e_1` from its ribbon expansion:
/// `sum_n 1/n sum_{I ⊨ n} (-1)^{l(I)-1} / binom(n-1, l(I)-1) R̂_I`.
pub fn eulerian_via_closed_form(cutoff: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(cutoff);
    for n in 1..=cutoff {
        let mut acc = WQSymElement::zero();
        for c in compositions_of(n) {
            let l = c.len();
            let sign = if (l - 1) % 2 == 0 { 1 } else { -1 };
            let coeff = rational::int(sign) / (rational::int(n as i64) * rational::binomial(n - 1, l - 1));
            acc += &ribbon_hat(&c).scale(&coeff);
        }
        s.components[n] = acc;
    }
    s
}

/// Recovers `e_0..e_N` from `Ψ^0..Ψ^N` by inverting `Ψ^k = sum_i k^i e_i`.
pub fn eulerian_via_vandermonde(cutoff: usize) -> Vec<TruncatedSeries> {
    let n = cutoff + 1;
    let psis: Vec<TruncatedSeries> = car_membership_basis(cutoff, cutoff);
    // Vandermonde V[k][i] = k^i; invert exactly by Gauss-Jordan.
    let mut v: Vec<Vec<Rational>> = (0..n)
        .map(|k| (0..n).map(|i| rational::int((k as i64).pow(i as u32))).collect())
        .collect();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|r| (0..n).map(|c| if r == c { rational::one() } else { rational::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !v[r][col].is_zero()).expect("Vandermonde is invertible");
        v.swap(col, piv);
        inv.swap(col, piv);
        let p = v[col][col].clone();
        for c in 0..n {
            v[col][c] = &v[col][c] / &p;
            inv[col][c] = &inv[col][c] / &p;
        }
        for r in 0..n {
            if r != col && !v[r][col].is_zero() {
                let f = v[r][col].clone();
                for c in 0..n {
                    let (a, b) = (&v[col][c] * &f, &inv[col][c] * &f);
                    v[r][c] -= a;
                    inv[r][c] -= b;
                }
            }
        }
    }
    // e = V^{-1} Ψ
    (0..n)
        .map(|i| {
            (0..n).fold(TruncatedSeries::zero(cutoff), |acc, k| {
                acc.add(&psis[k].scale(&inv[i][k]))
            })
        })
        .collect()
}

/// Checks that `(I - 1)^{n+1}` vanishes in all degrees `<= n`.
pub fn unipotence_check(n: usize, cutoff: usize) -> Result<bool> {
    if cutoff < n {
        return Err(Error::Precondition(format!("cutoff {cutoff} below degree {n}")));
    }
    let x = identity_series(cutoff).sub(&TruncatedSeries::unit(cutoff));
    let p = x.pow(n + 1);
    Ok((0..=n).all(|d| p.component(d).is_zero()))
}

/// `Ψ^0, ..., Ψ^max_power` at the given cutoff.
pub fn car_membership_basis(cutoff: usize, max_power: usize) -> Vec<TruncatedSeries> {
    let i = identity_series(cutoff);
    let mut out = Vec::with_capacity(max_power + 1);
    let mut acc = TruncatedSeries::unit(cutoff);
    for k in 0..=max_power {
        if k > 0 {
            acc = acc.convolve(&i);
        }
        out.push(acc.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::packedword::{enumerate_packed_words, PackedWord};
    use crate::rational::{frac, int};

    fn m(v: &[u32]) -> WQSymElement {
        WQSymElement::basis(PackedWord::new(v).unwrap())
    }

    fn lin(terms: &[(&[u32], i64)]) -> WQSymElement {
        terms
            .iter()
            .fold(WQSymElement::zero(), |acc, (w, c)| acc + m(w).scale(&int(*c)))
    }

    #[test]
    fn identity_series_examples() {
        assert_eq!(identity_series(0).to_element(), WQSymElement::unit());
        assert_eq!(
            identity_series(2).to_element(),
            WQSymElement::unit() + m(&[1]) + m(&[1, 2])
        );
        let i5 = identity_series(5);
        assert_eq!(i5.components().len(), 6);
        assert_eq!(i5.component(4), &m(&[1, 2, 3, 4]));
    }

    #[test]
    fn square_of_identity() {
        let sq = adams(2, 3);
        assert_eq!(sq.component(0), &WQSymElement::unit());
        assert_eq!(sq.component(1), &m(&[1]).scale(&int(2)));
        assert_eq!(sq.component(2), &lin(&[(&[1, 2], 3), (&[2, 1], 1), (&[1, 1], 1)]));
        let d3 = sq.component(3);
        assert_eq!(d3.coeff(&PackedWord::identity(3)), int(4));
        for w in [[1, 1, 2], [2, 1, 3], [3, 1, 2], [1, 2, 1], [1, 2, 2], [1, 3, 2], [2, 3, 1], [2, 1, 2]] {
            assert_eq!(d3.coeff(&PackedWord::new(&w).unwrap()), int(1), "{w:?}");
        }
        let i = identity_series(4);
        assert_eq!(i.convolve(&TruncatedSeries::unit(4)), i);
        let x = i.sub(&TruncatedSeries::unit(4));
        assert_eq!(x.convolve(&x).component(2), &lin(&[(&[1, 2], 1), (&[2, 1], 1), (&[1, 1], 1)]));
    }

    #[test]
    fn cutoffs_combine_at_minimum() {
        let s = identity_series(5).convolve(&identity_series(3));
        assert_eq!(s.cutoff(), 3);
        assert_eq!(identity_series(2).add(&identity_series(4)).cutoff(), 2);
    }

    #[test]
    fn inverse_examples() {
        let u = TruncatedSeries::unit(4);
        assert_eq!(u.inverse().unwrap(), u);
        let inv = identity_series(5).inverse().unwrap();
        assert_eq!(inv.component(1), &m(&[1]).scale(&int(-1)));
        assert_eq!(identity_series(5).convolve(&inv), TruncatedSeries::unit(5));
        assert_eq!(inv.convolve(&identity_series(5)), TruncatedSeries::unit(5));
        assert_eq!(TruncatedSeries::zero(3).inverse(), Err(Error::NotInvertible));
        let twice = identity_series(3).scale(&int(2));
        assert_eq!(twice.convolve(&twice.inverse().unwrap()), TruncatedSeries::unit(3));
    }

    #[test]
    fn log_exp_examples() {
        assert!(TruncatedSeries::unit(4).log().unwrap().is_zero());
        let i = identity_series(5);
        assert_eq!(i.log().unwrap().exp().unwrap(), i);
        assert_eq!(
            i.log().unwrap().component(2),
            &(m(&[1, 2]) - m(&[1, 1]) - m(&[2, 1])).scale(&frac(1, 2))
        );
        assert!(i.exp().is_err());
        assert!(i.scale(&int(2)).log().is_err());
    }

    #[test]
    fn adams_examples() {
        assert_eq!(adams(2, 4).component(1), &m(&[1]).scale(&int(2)));
        assert_eq!(adams(1, 4), identity_series(4));
        assert_eq!(adams(0, 4), TruncatedSeries::unit(4));
        assert_eq!(adams(3, 4), adams(1, 4).convolve(&adams(2, 4)));
    }

    #[test]
    fn third_idempotent_is_uniform() {
        let e3 = eulerian_idempotent(3, 3);
        let all = WQSymElement::sum_of(&*enumerate_packed_words(3).unwrap());
        assert_eq!(e3.component(3), &all.scale(&frac(1, 6)));
        assert_eq!(eulerian_idempotent(0, 3), TruncatedSeries::unit(3));
    }

    #[test]
    fn closed_form_low_degrees() {
        let c = eulerian_via_closed_form(3);
        assert_eq!(c.component(1), &m(&[1]));
        assert_eq!(
            c.component(2),
            &(m(&[1, 2]) - m(&[1, 1]) - m(&[2, 1])).scale(&frac(1, 2))
        );
        assert_eq!(c, eulerian_idempotent(1, 3));
    }

    #[test]
    fn unipotence_examples() {
        for n in [0, 2, 4] {
            assert!(unipotence_check(n, n).unwrap());
        }
        assert!(unipotence_check(3, 2).is_err());
    }

    #[test]
    fn car_basis_examples() {
        let b = car_membership_basis(3, 1);
        assert_eq!(b, vec![TruncatedSeries::unit(3), identity_series(3)]);
        let b = car_membership_basis(2, 2);
        assert_eq!(b[2], adams(2, 2));
        let via = eulerian_via_vandermonde(3);
        assert_eq!(via, eulerian_family(3));
    }

    #[test]
    fn json_round_trip() {
        let e = eulerian_idempotent(1, 3);
        assert_eq!(TruncatedSeries::from_json(&e.to_json()).unwrap(), e);
        assert!(TruncatedSeries::from_json(r#"{"cutoff":1,"components":{"2":{"basis":"WQSym-M","terms":[]}}}"#).is_err());
    }

    #[test]
    fn sigma_hat_at_one_is_identity() {
        assert_eq!(sigma_hat(&int(1), 4), identity_series(4));
        assert_eq!(sigma_hat(&int(0), 4), TruncatedSeries::unit(4));
    }
}
