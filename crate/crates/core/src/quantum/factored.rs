//! Elements of the quantum torus fraction field kept as ordered products
//! `c(t) · X^α · f_1^{s_1} ⋯ f_m^{s_m}` with polynomial factors `f_j` and
//! signs `s_j = ±1`. Inverse factors are never expanded.

use std::fmt;
use std::sync::Arc;

use super::torus::{QTElem, QuantumTorus};
use super::tpoly::TPoly;
use crate::error::{Error, Result};
use crate::symbolic::RationalExpr;

#[derive(Clone, PartialEq)]
pub struct FactoredQTElem {
    torus: Arc<QuantumTorus>,
    scalar: TPoly,
    alpha: Vec<i64>,
    factors: Vec<(QTElem, i8)>,
}

impl FactoredQTElem {
    pub fn one(torus: &Arc<QuantumTorus>) -> Self {
        Self::monomial(torus, vec![0; torus.rank()], TPoly::one())
    }

    pub fn monomial(torus: &Arc<QuantumTorus>, alpha: Vec<i64>, scalar: TPoly) -> Self {
        FactoredQTElem {
            torus: torus.clone(),
            scalar,
            alpha,
            factors: Vec::new(),
        }
    }

    pub fn generator(torus: &Arc<QuantumTorus>, i: usize, power: i64) -> Self {
        let mut a = vec![0; torus.rank()];
        a[i] = power;
        Self::monomial(torus, a, TPoly::one())
    }

    /// Single-term elements become monomials, anything else one factor.
    pub fn from_qt(e: &QTElem) -> Self {
        let torus = e.torus();
        if let Some((a, c)) = e.as_monomial() {
            return Self::monomial(torus, a.clone(), c.clone());
        }
        if e.is_zero() {
            return Self::monomial(torus, vec![0; torus.rank()], TPoly::zero());
        }
        FactoredQTElem {
            torus: torus.clone(),
            scalar: TPoly::one(),
            alpha: vec![0; torus.rank()],
            factors: vec![(e.clone(), 1)],
        }
    }

    /// `f^{-1}` for a polynomial `f`.
    pub fn inverse_of(e: &QTElem) -> Result<Self> {
        Self::from_qt(e).inverse()
    }

    pub fn torus(&self) -> &Arc<QuantumTorus> {
        &self.torus
    }

    pub fn scalar(&self) -> &TPoly {
        &self.scalar
    }

    pub fn alpha(&self) -> &[i64] {
        &self.alpha
    }

    pub fn factors(&self) -> &[(QTElem, i8)] {
        &self.factors
    }

    pub fn is_monomial(&self) -> bool {
        self.factors.is_empty()
    }

    /// The element as a polynomial when it has no factors.
    pub fn as_polynomial(&self) -> Option<QTElem> {
        if !self.factors.is_empty() {
            return None;
        }
        Some(QTElem::monomial(
            &self.torus,
            self.alpha.clone(),
            self.scalar.clone(),
        ))
    }

    fn check(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.torus, &o.torus) || self.torus == o.torus {
            Ok(())
        } else {
            Err(Error::SeedMismatch)
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        // c_a X^α F_a · c_b X^β F_b = c_a c_b q^{⟨α,β⟩} X^{α+β} (X^{-β} F_a X^β) F_b
        let beta = &o.alpha;
        let mut factors: Vec<(QTElem, i8)> = self
            .factors
            .iter()
            .map(|(f, s)| (f.conjugate_by(beta), *s))
            .collect();
        factors.extend(o.factors.iter().cloned());
        let e = self.torus.pairing(&self.alpha, beta);
        Ok(FactoredQTElem {
            torus: self.torus.clone(),
            scalar: self.scalar.mul(&o.scalar).shift(e),
            alpha: self.alpha.iter().zip(beta).map(|(x, y)| x + y).collect(),
            factors: simplify(factors),
        })
    }

    /// Requires the scalar part to be a single `t`-term.
    pub fn inverse(&self) -> Result<Self> {
        let c = self
            .scalar
            .unit_inverse()
            .ok_or_else(|| Error::NotRepresentable("inverse of a non-unit scalar".into()))?;
        // (c X^α F)^{-1} = F^{-1} X^{-α} c^{-1} = c^{-1} X^{-α} (X^{α} F^{-1} X^{-α})
        let neg: Vec<i64> = self.alpha.iter().map(|x| -x).collect();
        let factors = self
            .factors
            .iter()
            .rev()
            .map(|(f, s)| (f.conjugate_by(&neg), -s))
            .collect();
        Ok(FactoredQTElem {
            torus: self.torus.clone(),
            scalar: c,
            alpha: neg,
            factors,
        })
    }

    pub fn powi(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(&self.torus);
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// Splits into the factors `[c, X^α, f_1^{s_1}, …]` in product order.
    pub fn pieces(&self) -> Vec<FactoredQTElem> {
        let mut out = vec![
            Self::monomial(&self.torus, vec![0; self.torus.rank()], self.scalar.clone()),
            Self::monomial(&self.torus, self.alpha.clone(), TPoly::one()),
        ];
        for (f, s) in &self.factors {
            out.push(FactoredQTElem {
                torus: self.torus.clone(),
                scalar: TPoly::one(),
                alpha: vec![0; self.torus.rank()],
                factors: vec![(f.clone(), *s)],
            });
        }
        out
    }

    /// The star antiautomorphism.
    pub fn star(&self) -> Result<Self> {
        let mut acc = Self::monomial(&self.torus, self.alpha.clone(), self.scalar.invert_t());
        for (f, s) in &self.factors {
            let piece = FactoredQTElem {
                torus: self.torus.clone(),
                scalar: TPoly::one(),
                alpha: vec![0; self.torus.rank()],
                factors: vec![(f.star(), *s)],
            };
            acc = piece.mul(&acc)?;
        }
        Ok(acc)
    }

    /// Cleared form `N, D` of `c X^α ∏ f^{±1}`, valid when all factors commute:
    /// the element equals `N · D^{-1}`.
    fn cleared(&self) -> (QTElem, QTElem) {
        let mut num = QTElem::monomial(&self.torus, self.alpha.clone(), self.scalar.clone());
        let mut den = QTElem::one(&self.torus);
        for (f, s) in &self.factors {
            if *s > 0 {
                num = num.mul(f).expect("same torus");
            } else {
                den = den.mul(f).expect("same torus");
            }
        }
        (num, den)
    }

    /// Exact equality by clearing denominators. Every factor on either side
    /// must commute with every other; otherwise the comparison is reported
    /// as not representable.
    pub fn equals(&self, o: &Self) -> Result<bool> {
        self.check(o)?;
        let all: Vec<&QTElem> = self
            .factors
            .iter()
            .chain(o.factors.iter())
            .map(|(f, _)| f)
            .collect();
        for a in 0..all.len() {
            for b in a + 1..all.len() {
                if !all[a].commutes_with(all[b]) {
                    return Err(Error::NotRepresentable(
                        "equality test with non-commuting factors".into(),
                    ));
                }
            }
        }
        let (n1, d1) = self.cleared();
        let (n2, d2) = o.cleared();
        Ok(n1.mul(&d2)? == n2.mul(&d1)?)
    }

    /// Specialization `t = 1`.
    pub fn at_q_one(&self) -> RationalExpr {
        let n = self.torus.rank();
        let mut acc = RationalExpr::laurent_monomial(n, &self.alpha)
            .mul(&RationalExpr::constant(n, self.scalar.at_one()));
        for (f, s) in &self.factors {
            let v = f.at_q_one();
            acc = if *s > 0 { acc.mul(&v) } else { acc.div(&v) };
        }
        acc
    }

    pub fn render(&self, names: &[String]) -> String {
        let mono = QTElem::monomial(&self.torus, self.alpha.clone(), self.scalar.clone());
        let mut out = mono.render(names);
        if out.contains(" + ") || out.contains(" - ") {
            out = format!("({out})");
        }
        for (f, s) in &self.factors {
            let body = f.render(names);
            if *s > 0 {
                out.push_str(&format!("*({body})"));
            } else {
                out.push_str(&format!("*({body})^-1"));
            }
        }
        out
    }
}

/// Cancels adjacent `f^{+1} f^{-1}` pairs.
fn simplify(factors: Vec<(QTElem, i8)>) -> Vec<(QTElem, i8)> {
    let mut out: Vec<(QTElem, i8)> = Vec::with_capacity(factors.len());
    for (f, s) in factors {
        if let Some((g, t)) = out.last() {
            if *t == -s && *g == f {
                out.pop();
                continue;
            }
        }
        out.push((f, s));
    }
    out
}

impl fmt::Debug for FactoredQTElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&self.torus.generator_names("X")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::Seed;

    fn a2() -> Arc<QuantumTorus> {
        QuantumTorus::new(&Seed::from_matrix(vec![vec![0, 1], vec![-1, 0]], vec![1, 1]).unwrap())
    }

    #[test]
    fn inverse_round_trip() {
        let t = a2();
        let f = QTElem::one(&t).add(&QTElem::generator(&t, 1, 1)).unwrap();
        let x = FactoredQTElem::generator(&t, 0, 1)
            .mul(&FactoredQTElem::from_qt(&f))
            .unwrap();
        let y = x.mul(&x.inverse().unwrap()).unwrap();
        assert!(y.equals(&FactoredQTElem::one(&t)).unwrap());
        assert!(y.is_monomial());
    }

    #[test]
    fn moving_monomials_past_factors() {
        // (1 + X_2) X_1 = X_1 (1 + q^-2 X_2) when ε̂_12 = 1
        let t = a2();
        let f = QTElem::one(&t).add(&QTElem::generator(&t, 1, 1)).unwrap();
        let lhs = FactoredQTElem::from_qt(&f)
            .mul(&FactoredQTElem::generator(&t, 0, 1))
            .unwrap();
        let g = QTElem::one(&t)
            .add(&QTElem::monomial(&t, vec![0, 1], TPoly::t_pow(-2 * t.two_d())))
            .unwrap();
        let rhs = FactoredQTElem::generator(&t, 0, 1)
            .mul(&FactoredQTElem::from_qt(&g))
            .unwrap();
        assert!(lhs.equals(&rhs).unwrap());
        assert_eq!(lhs.as_polynomial(), None);
        let expanded = f.mul(&QTElem::generator(&t, 0, 1)).unwrap();
        let (n, _) = rhs.cleared();
        assert_eq!(n, expanded);
    }

    #[test]
    fn non_commuting_factors_are_rejected() {
        let t = a2();
        let f = QTElem::one(&t).add(&QTElem::generator(&t, 0, 1)).unwrap();
        let g = QTElem::one(&t).add(&QTElem::generator(&t, 1, 1)).unwrap();
        let a = FactoredQTElem::inverse_of(&f).unwrap();
        let b = FactoredQTElem::inverse_of(&g).unwrap();
        assert!(matches!(a.equals(&b), Err(Error::NotRepresentable(_))));
    }
}
