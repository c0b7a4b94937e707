//! The seed quantum torus with Weyl-ordered monomials.
//!
//! All powers of `q` are written through `t = q^{1/(2D)}`. For integral
//! multipliers `D = lcm(d_i)`; in general `D` is the least integer making
//! every `D·ε̂_ij` and `D·d̂_i` integral.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::Rational64;

use super::tpoly::TPoly;
use crate::error::{Error, Result};
use crate::seed::Seed;
use crate::symbolic::poly::rat;
use crate::symbolic::RationalExpr;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuantumTorus {
    seed: Seed,
    two_d: i64,
    /// `form[i][j] = 2D·ε̂_ij`.
    form: Vec<Vec<i64>>,
    /// `2D·d̂_i`, the `t`-exponent of `q_i = q^{d̂_i}`.
    qhat: Vec<i64>,
}

impl QuantumTorus {
    pub fn new(seed: &Seed) -> Arc<Self> {
        let n = seed.rank();
        let mut dd = 1i64;
        for i in 0..n {
            dd = dd.lcm(seed.d_hat(i).denom());
            for j in 0..n {
                dd = dd.lcm(seed.eps_hat(i, j).denom());
            }
        }
        let two_d = 2 * dd;
        let scale = |r: Rational64| (r * Rational64::from_integer(two_d)).to_integer();
        Arc::new(QuantumTorus {
            seed: seed.clone(),
            two_d,
            form: (0..n)
                .map(|i| (0..n).map(|j| scale(seed.eps_hat(i, j))).collect())
                .collect(),
            qhat: (0..n).map(|i| scale(seed.d_hat(i))).collect(),
        })
    }

    pub fn seed(&self) -> &Seed {
        &self.seed
    }

    pub fn rank(&self) -> usize {
        self.seed.rank()
    }

    /// `t`-exponent of `q`.
    pub fn two_d(&self) -> i64 {
        self.two_d
    }

    /// `t`-exponent of `q_i = q^{d̂_i}`.
    pub fn q_hat(&self, i: usize) -> i64 {
        self.qhat[i]
    }

    pub fn form(&self, i: usize, j: usize) -> i64 {
        self.form[i][j]
    }

    /// `2D·⟨α, β⟩`.
    pub fn pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                s += self.form[i][j] * ai * bj;
            }
        }
        s
    }

    /// `t`-exponent `c` with `X^α = q^{c/(2D)} X_1^{α_1} ⋯ X_n^{α_n}`.
    pub fn ordering_exponent(&self, a: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                s -= self.form[i][j] * a[i] * a[j];
            }
        }
        s
    }

    pub fn generator_names(&self, prefix: &str) -> Vec<String> {
        self.seed
            .labels()
            .iter()
            .map(|l| format!("{prefix}{l}"))
            .collect()
    }
}

/// Finite sum `Σ c_α(t) X^α` of Weyl-ordered monomials.
#[derive(Clone, PartialEq, Eq)]
pub struct QTElem {
    torus: Arc<QuantumTorus>,
    terms: BTreeMap<Vec<i64>, TPoly>,
}

impl QTElem {
    pub fn zero(torus: &Arc<QuantumTorus>) -> Self {
        QTElem {
            torus: torus.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(torus: &Arc<QuantumTorus>, c: TPoly) -> Self {
        Self::monomial(torus, vec![0; torus.rank()], c)
    }

    pub fn one(torus: &Arc<QuantumTorus>) -> Self {
        Self::scalar(torus, TPoly::one())
    }

    pub fn monomial(torus: &Arc<QuantumTorus>, alpha: Vec<i64>, c: TPoly) -> Self {
        assert_eq!(alpha.len(), torus.rank());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(alpha, c);
        }
        QTElem {
            torus: torus.clone(),
            terms,
        }
    }

    /// `X_i^{power}`.
    pub fn generator(torus: &Arc<QuantumTorus>, i: usize, power: i64) -> Self {
        let mut a = vec![0; torus.rank()];
        a[i] = power;
        Self::monomial(torus, a, TPoly::one())
    }

    pub fn torus(&self) -> &Arc<QuantumTorus> {
        &self.torus
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &TPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some((α, c))` for a single term.
    pub fn as_monomial(&self) -> Option<(&Vec<i64>, &TPoly)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn same_torus(&self, o: &QTElem) -> Result<()> {
        if Arc::ptr_eq(&self.torus, &o.torus) || self.torus == o.torus {
            Ok(())
        } else {
            Err(Error::SeedMismatch)
        }
    }

    fn insert(terms: &mut BTreeMap<Vec<i64>, TPoly>, a: Vec<i64>, c: TPoly) {
        if c.is_zero() {
            return;
        }
        match terms.get_mut(&a) {
            Some(slot) => {
                slot.add_assign(&c);
                if slot.is_zero() {
                    terms.remove(&a);
                }
            }
            None => {
                terms.insert(a, c);
            }
        }
    }

    pub fn add(&self, o: &QTElem) -> Result<QTElem> {
        self.same_torus(o)?;
        let mut terms = self.terms.clone();
        for (a, c) in &o.terms {
            Self::insert(&mut terms, a.clone(), c.clone());
        }
        Ok(QTElem {
            torus: self.torus.clone(),
            terms,
        })
    }

    pub fn neg(&self) -> QTElem {
        self.map_coeffs(|c| c.neg())
    }

    pub fn sub(&self, o: &QTElem) -> Result<QTElem> {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &TPoly) -> QTElem {
        let mut terms = BTreeMap::new();
        for (a, x) in &self.terms {
            Self::insert(&mut terms, a.clone(), x.mul(c));
        }
        QTElem {
            torus: self.torus.clone(),
            terms,
        }
    }

    fn map_coeffs(&self, f: impl Fn(&TPoly) -> TPoly) -> QTElem {
        QTElem {
            torus: self.torus.clone(),
            terms: self.terms.iter().map(|(a, c)| (a.clone(), f(c))).collect(),
        }
    }

    /// Normal-ordered product, `X^α X^β = q^{⟨α,β⟩} X^{α+β}`.
    pub fn mul(&self, o: &QTElem) -> Result<QTElem> {
        self.same_torus(o)?;
        let mut terms = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let e = self.torus.pairing(a, b);
                let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                Self::insert(&mut terms, sum, ca.mul(cb).shift(e));
            }
        }
        Ok(QTElem {
            torus: self.torus.clone(),
            terms,
        })
    }

    pub fn pow(&self, n: u32) -> QTElem {
        let mut acc = QTElem::one(&self.torus);
        for _ in 0..n {
            acc = acc.mul(self).expect("same torus");
        }
        acc
    }

    /// The antiautomorphism fixing every `X_i` and sending `q ↦ q^{-1}`.
    /// Weyl-ordered monomials are fixed, so only coefficients change.
    pub fn star(&self) -> QTElem {
        self.map_coeffs(TPoly::invert_t)
    }

    /// `X^{-β} · self · X^{β}`, i.e. `c_γ X^γ ↦ q^{2⟨γ,β⟩} c_γ X^γ`.
    pub fn conjugate_by(&self, beta: &[i64]) -> QTElem {
        let mut terms = BTreeMap::new();
        for (g, c) in &self.terms {
            let e = 2 * self.torus.pairing(g, beta);
            terms.insert(g.clone(), c.shift(e));
        }
        QTElem {
            torus: self.torus.clone(),
            terms,
        }
    }

    /// Moves the element to another torus with identical exponent vectors,
    /// applying `f` to each monomial.
    pub fn map_monomials(
        &self,
        target: &Arc<QuantumTorus>,
        f: impl Fn(&[i64], &TPoly) -> (Vec<i64>, TPoly),
    ) -> QTElem {
        let mut terms = BTreeMap::new();
        for (a, c) in &self.terms {
            let (b, d) = f(a, c);
            Self::insert(&mut terms, b, d);
        }
        QTElem {
            torus: target.clone(),
            terms,
        }
    }

    /// Do `self` and `o` commute?
    pub fn commutes_with(&self, o: &QTElem) -> bool {
        match (self.mul(o), o.mul(self)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    /// Specialization `t = 1` into the commutative Laurent field.
    pub fn at_q_one(&self) -> RationalExpr {
        let n = self.torus.rank();
        let mut acc = RationalExpr::zero(n);
        for (a, c) in &self.terms {
            let m = RationalExpr::laurent_monomial(n, a)
                .mul(&RationalExpr::constant(n, c.at_one()));
            acc = acc.add(&m);
        }
        acc
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let two_d = self.torus.two_d;
        let mut parts = Vec::new();
        for (a, c) in self.terms.iter().rev() {
            let mono: Vec<String> = a
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], e)
                    }
                })
                .collect();
            let coeff = c.render_q(two_d);
            let part = if mono.is_empty() {
                coeff
            } else if c.is_one() {
                mono.join("*")
            } else if c.num_terms_is_one() {
                format!("{}*{}", coeff, mono.join("*"))
            } else {
                format!("({})*{}", coeff, mono.join("*"))
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

impl TPoly {
    fn num_terms_is_one(&self) -> bool {
        self.as_monomial().is_some()
    }
}

impl fmt::Debug for QTElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&self.torus.generator_names("X")))
    }
}

/// `c·t^e` as a scalar.
pub fn t_scalar(c: i64, e: i64) -> TPoly {
    TPoly::monomial(rat(c), e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus(eps: Vec<Vec<i64>>, d: Vec<i64>) -> Arc<QuantumTorus> {
        QuantumTorus::new(&Seed::from_matrix(eps, d).unwrap())
    }

    #[test]
    fn commutation_of_generators() {
        let t = torus(vec![vec![0, 1], vec![-1, 0]], vec![1, 1]);
        assert_eq!(t.two_d(), 2);
        let x1 = QTElem::generator(&t, 0, 1);
        let x2 = QTElem::generator(&t, 1, 1);
        let l = x1.mul(&x2).unwrap();
        let r = x2.mul(&x1).unwrap().scale(&TPoly::t_pow(2 * t.two_d()));
        assert_eq!(l, r);
    }

    #[test]
    fn inverse_monomials_and_unit() {
        let t = torus(vec![vec![0, 2, -1], vec![-1, 0, 1], vec![1, -2, 0]], vec![1, 2, 1]);
        let a = QTElem::monomial(&t, vec![2, -1, 3], TPoly::one());
        let b = QTElem::monomial(&t, vec![-2, 1, -3], TPoly::one());
        assert_eq!(a.mul(&b).unwrap(), QTElem::one(&t));
        assert_eq!(QTElem::one(&t).mul(&a).unwrap(), a);
    }

    #[test]
    fn defining_relation_in_normal_form() {
        let t = torus(vec![vec![0, 2, -1], vec![-1, 0, 1], vec![1, -2, 0]], vec![1, 2, 1]);
        for i in 0..3 {
            for j in 0..3 {
                let xi = QTElem::generator(&t, i, 1);
                let xj = QTElem::generator(&t, j, 1);
                let l = xi.mul(&xj).unwrap().scale(&TPoly::t_pow(-t.form(i, j)));
                let r = xj.mul(&xi).unwrap().scale(&TPoly::t_pow(-t.form(j, i)));
                assert_eq!(l, r);
            }
        }
    }

    #[test]
    fn star_examples() {
        let t = torus(vec![vec![0, 1], vec![-1, 0]], vec![1, 1]);
        let q = TPoly::t_pow(t.two_d());
        let x1 = QTElem::generator(&t, 0, 1);
        let x2 = QTElem::generator(&t, 1, 1);
        let lhs = x1.mul(&x2).unwrap().scale(&q).star();
        let rhs = x2.mul(&x1).unwrap().scale(&q.invert_t());
        assert_eq!(lhs, rhs);
        assert_eq!(QTElem::one(&t).star(), QTElem::one(&t));
        let rel_l = x1.mul(&x2).unwrap().scale(&TPoly::t_pow(-t.form(0, 1)));
        let rel_r = x2.mul(&x1).unwrap().scale(&TPoly::t_pow(-t.form(1, 0)));
        assert_eq!(rel_l.star(), rel_r.star());
    }

    #[test]
    fn seed_mismatch_is_reported() {
        let a = torus(vec![vec![0, 1], vec![-1, 0]], vec![1, 1]);
        let b = torus(vec![vec![0, -1], vec![1, 0]], vec![1, 1]);
        assert_eq!(
            QTElem::one(&a).mul(&QTElem::one(&b)),
            Err(Error::SeedMismatch)
        );
    }

    #[test]
    fn rational_multipliers_get_integral_exponents() {
        let s = Seed::from_matrix(vec![vec![0, 2], vec![-1, 0]], vec![1, 2]).unwrap();
        let l = QuantumTorus::new(&s.langlands_dual().unwrap());
        let direct = QuantumTorus::new(&s);
        assert_eq!(direct.two_d(), 4);
        assert!(l.two_d() % 2 == 0);
        assert_eq!(direct.q_hat(1), 2);
    }
}
