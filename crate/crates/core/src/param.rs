//! Polynomials in the formal parameters `x`, `y`, `t` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::rational::{self, Rational};
use crate::wqsym::add_into;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    X,
    Y,
    T,
}

impl Param {
    fn name(self) -> &'static str {
        match self {
            Param::X => "x",
            Param::Y => "y",
            Param::T => "t",
        }
    }
}

/// Exponents of `(x, y, t)`.
pub type ParamMonomial = [u16; 3];

#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct ParamPoly {
    terms: BTreeMap<ParamMonomial, Rational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        add_into(&mut terms, [0, 0, 0], c);
        ParamPoly { terms }
    }

    pub fn one() -> Self {
        Self::constant(rational::one())
    }

    pub fn var(p: Param) -> Self {
        let mut e = [0; 3];
        e[p as usize] = 1;
        ParamPoly::term(e, rational::one())
    }

    pub fn term(e: ParamMonomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        add_into(&mut terms, e, c);
        ParamPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            add_into(&mut out.terms, *e, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                add_into(&mut out, [a[0] + b[0], a[1] + b[1], a[2] + b[2]], x * y);
            }
        }
        ParamPoly { terms: out }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = BTreeMap::new();
        for (e, x) in &self.terms {
            add_into(&mut out, *e, x * c);
        }
        ParamPoly { terms: out }
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Substitutes rational values for `(x, y, t)`.
    pub fn eval(&self, values: [&Rational; 3]) -> Rational {
        let mut acc = rational::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    v *= values[i];
                }
            }
            acc += v;
        }
        acc
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db) = (a.iter().sum::<u16>(), b.iter().sum::<u16>());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            let mono: Vec<String> = [Param::X, Param::Y, Param::T]
                .iter()
                .zip(e.iter())
                .filter(|(_, &k)| k > 0)
                .map(|(p, &k)| if k == 1 { p.name().to_string() } else { format!("{}^{k}", p.name()) })
                .collect();
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{}", rational::display(&mag))?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{}*{}", rational::display(&mag), mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl ParamPoly {
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == [0, 0, 0])
    }

    pub fn constant_part(&self) -> Rational {
        self.terms.get(&[0, 0, 0]).cloned().unwrap_or_else(Rational::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn arithmetic() {
        let x = ParamPoly::var(Param::X);
        let y = ParamPoly::var(Param::Y);
        let s = x.add(&y);
        let sq = s.mul(&s);
        assert_eq!(sq.to_string(), "x^2 + 2*x*y + y^2");
        assert_eq!(sq.eval([&int(2), &int(3), &int(0)]), int(25));
        assert!(x.add(&x.scale(&int(-1))).is_zero());
        assert_eq!(ParamPoly::var(Param::T).pow(3).to_string(), "t^3");
        assert!(ParamPoly::constant(int(4)).is_constant());
    }
}
