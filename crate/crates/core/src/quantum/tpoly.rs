//! Laurent polynomials in a single formal variable `t` with rational
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::symbolic::poly::rat;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl TPoly {
    pub fn zero() -> Self {
        TPoly::default()
    }

    pub fn one() -> Self {
        TPoly::monomial(rat(1), 0)
    }

    /// `t^e`.
    pub fn t_pow(e: i64) -> Self {
        TPoly::monomial(rat(1), e)
    }

    pub fn monomial(c: BigRational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        TPoly { terms }
    }

    pub fn constant(c: i64) -> Self {
        TPoly::monomial(rat(c), 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// `Some((c, e))` when the polynomial is the single term `c t^e`.
    pub fn as_monomial(&self) -> Option<(&BigRational, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        self.terms.iter().next().map(|(e, c)| (c, *e))
    }

    pub fn add(&self, o: &TPoly) -> TPoly {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn add_assign(&mut self, o: &TPoly) {
        for (e, c) in &o.terms {
            add_term(&mut self.terms, *e, c.clone());
        }
    }

    pub fn neg(&self) -> TPoly {
        TPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, o: &TPoly) -> TPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &TPoly) -> TPoly {
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                add_term(&mut terms, e1 + e2, c1 * c2);
            }
        }
        TPoly { terms }
    }

    /// Multiplication by `t^e`.
    pub fn shift(&self, e: i64) -> TPoly {
        if e == 0 {
            return self.clone();
        }
        TPoly {
            terms: self.terms.iter().map(|(x, c)| (x + e, c.clone())).collect(),
        }
    }

    /// Inverse of a single-term polynomial.
    pub fn unit_inverse(&self) -> Option<TPoly> {
        let (c, e) = self.as_monomial()?;
        Some(TPoly::monomial(c.recip(), -e))
    }

    /// `t ↦ t^{-1}`.
    pub fn invert_t(&self) -> TPoly {
        TPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Value at `t = 1`.
    pub fn at_one(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |a, c| a + c)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c.to_f64().unwrap_or(f64::NAN) * t.powi(*e as i32))
            .sum()
    }

    /// Renders with exponents expressed as powers of `q = t^{two_d}`.
    pub fn render_q(&self, two_d: i64) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let qp = q_power(*e, two_d);
            match (a.is_one(), qp.is_empty()) {
                (true, true) => out.push('1'),
                (true, false) => out.push_str(&qp),
                (false, true) => out.push_str(&a.to_string()),
                (false, false) => out.push_str(&format!("{a}*{qp}")),
            }
        }
        out
    }
}

/// `q^(e/two_d)` in lowest terms, empty for `e = 0`.
pub fn q_power(e: i64, two_d: i64) -> String {
    if e == 0 {
        return String::new();
    }
    let g = e.gcd(&two_d);
    let (n, d) = (e / g, two_d / g);
    match (n, d) {
        (1, 1) => "q".into(),
        (n, 1) => format!("q^{n}"),
        (n, d) => format!("q^({n}/{d})"),
    }
}

fn add_term(terms: &mut BTreeMap<i64, BigRational>, e: i64, c: BigRational) {
    if c.is_zero() {
        return;
    }
    let slot = terms.entry(e).or_insert_with(BigRational::zero);
    *slot += c;
    if slot.is_zero() {
        terms.remove(&e);
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_q(1).replace('q', "t"))
    }
}
