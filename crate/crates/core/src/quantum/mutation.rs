//! Quantum mutation of generators and its action on factored elements.

use std::sync::Arc;

use super::factored::FactoredQTElem;
use super::torus::{QTElem, QuantumTorus};
use super::tpoly::TPoly;
use crate::error::{Error, Result};
use crate::seed::{sgn, Label, Seed};

/// Pullback `μ_k^*: T_{s'} → Frac(T_s)`, stored as the images of the
/// generators `X'_i` of the mutated seed.
#[derive(Debug, Clone)]
pub struct QuantumMutation {
    pub k: usize,
    pub source: Arc<QuantumTorus>,
    pub target: Arc<QuantumTorus>,
    pub images: Vec<FactoredQTElem>,
}

/// Image of `X'_i` under `μ_k`:
/// `X_k^{-1}` for `i = k`, otherwise
/// `X_i ∏_{a=1}^{|ε_ik|} (1 + q_k^{2a-1} X_k^{-sgn ε_ik})^{-sgn ε_ik}`.
///
/// The outer exponent is `-sgn ε_ik` rather than `-ε_ik`: the `|ε_ik|`
/// factors already carry the multiplicity, and this is the form whose
/// `q = 1` limit is the classical X-mutation.
pub fn quantum_mutation_image_at(torus: &Arc<QuantumTorus>, k: usize, i: usize) -> FactoredQTElem {
    if i == k {
        return FactoredQTElem::generator(torus, k, -1);
    }
    let e = torus.seed().eps(i, k);
    let mut out = FactoredQTElem::generator(torus, i, 1);
    if e == 0 {
        return out;
    }
    let s = sgn(e);
    let qk = torus.q_hat(k);
    for a in 1..=e.abs() {
        let mut alpha = vec![0; torus.rank()];
        alpha[k] = -s;
        let f = QTElem::one(torus)
            .add(&QTElem::monomial(torus, alpha, TPoly::t_pow((2 * a - 1) * qk)))
            .expect("same torus");
        let piece = if s < 0 {
            FactoredQTElem::from_qt(&f)
        } else {
            FactoredQTElem::inverse_of(&f).expect("unit scalar")
        };
        out = out.mul(&piece).expect("same torus");
    }
    out
}

pub fn quantum_mutation_image(s: &Seed, k: &Label, i: &Label) -> Result<FactoredQTElem> {
    let k = s.index_of(k)?;
    let i = s.index_of(i)?;
    Ok(quantum_mutation_image_at(&QuantumTorus::new(s), k, i))
}

impl QuantumMutation {
    pub fn new(s: &Seed, k: usize) -> Self {
        let source = QuantumTorus::new(s);
        Self::on_torus(&source, k)
    }

    pub fn on_torus(source: &Arc<QuantumTorus>, k: usize) -> Self {
        let target = QuantumTorus::new(&source.seed().mutate_at(k));
        let images = (0..source.rank())
            .map(|i| quantum_mutation_image_at(source, k, i))
            .collect();
        QuantumMutation {
            k,
            source: source.clone(),
            target,
            images,
        }
    }

    /// Image of the Weyl monomial `X'^α`.
    pub fn monomial_image(&self, alpha: &[i64], c: &TPoly) -> Result<FactoredQTElem> {
        let e = self.target.ordering_exponent(alpha);
        let mut acc = FactoredQTElem::monomial(
            &self.source,
            vec![0; self.source.rank()],
            c.shift(e),
        );
        for (i, &a) in alpha.iter().enumerate() {
            if a != 0 {
                acc = acc.mul(&self.images[i].powi(a)?)?;
            }
        }
        Ok(acc)
    }

    /// Image of a polynomial; fails if some monomial maps outside the
    /// polynomial subring.
    pub fn poly_image(&self, f: &QTElem) -> Result<QTElem> {
        let mut acc = QTElem::zero(&self.source);
        for (a, c) in f.terms() {
            let img = self.monomial_image(a, c)?;
            let p = img.as_polynomial().ok_or_else(|| {
                Error::NotRepresentable("factor image is not a Laurent polynomial".into())
            })?;
            acc = acc.add(&p)?;
        }
        Ok(acc)
    }

    pub fn apply(&self, x: &FactoredQTElem) -> Result<FactoredQTElem> {
        if **x.torus() != *self.target {
            return Err(Error::SeedMismatch);
        }
        let mut acc = self.monomial_image(x.alpha(), x.scalar())?;
        for (f, s) in x.factors() {
            let img = FactoredQTElem::from_qt(&self.poly_image(f)?);
            let img = if *s > 0 { img } else { img.inverse()? };
            acc = acc.mul(&img)?;
        }
        Ok(acc)
    }
}

/// `μ_k ∘ μ_k = Id` on every generator, in the factored calculus.
pub fn check_quantum_involution(s: &Seed, k: &Label) -> Result<bool> {
    let k = s.index_of(k)?;
    let first = QuantumMutation::new(s, k);
    let second = QuantumMutation::on_torus(&first.target, k);
    for i in 0..s.rank() {
        let back = first.apply(&second.images[i])?;
        if !back.equals(&FactoredQTElem::generator(&first.source, i, 1))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The generator images satisfy the defining relations of the mutated torus:
/// `μ(X'_i) μ(X'_j) = q^{2ε̂'_ij} μ(X'_j) μ(X'_i)`.
pub fn check_mutation_preserves_relations(s: &Seed, k: &Label) -> Result<bool> {
    let k = s.index_of(k)?;
    let m = QuantumMutation::new(s, k);
    let n = s.rank();
    for i in 0..n {
        for j in i + 1..n {
            let l = m.images[i].mul(&m.images[j])?;
            let r = m.images[j].mul(&m.images[i])?;
            let q = FactoredQTElem::monomial(
                &m.source,
                vec![0; n],
                TPoly::t_pow(2 * m.target.form(i, j)),
            );
            if !l.equals(&q.mul(&r)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::tori::mutate_x_map_at;

    fn seeds() -> Vec<Seed> {
        vec![
            Seed::from_matrix(vec![vec![0]], vec![1]).unwrap(),
            Seed::from_matrix(vec![vec![0, 1], vec![-1, 0]], vec![1, 1]).unwrap(),
            Seed::from_matrix(vec![vec![0, 2], vec![-1, 0]], vec![1, 2]).unwrap(),
            Seed::from_matrix(vec![vec![0, 1, -1], vec![-1, 0, 2], vec![1, -2, 0]], vec![1, 1, 1])
                .unwrap(),
            Seed::from_matrix(vec![vec![0, 3], vec![-1, 0]], vec![1, 3]).unwrap(),
        ]
    }

    #[test]
    fn generator_images() {
        let s = Seed::from_matrix(vec![vec![0, -1], vec![1, 0]], vec![1, 1]).unwrap();
        let t = QuantumTorus::new(&s);
        let img = quantum_mutation_image_at(&t, 1, 1);
        assert!(img.equals(&FactoredQTElem::generator(&t, 1, -1)).unwrap());
        // ε_12 = -1: X_1 (1 + q X_2)
        let img = quantum_mutation_image_at(&t, 1, 0);
        let f = QTElem::one(&t)
            .add(&QTElem::monomial(&t, vec![0, 1], TPoly::t_pow(t.two_d())))
            .unwrap();
        let expect = FactoredQTElem::generator(&t, 0, 1).mul(&FactoredQTElem::from_qt(&f)).unwrap();
        assert!(img.equals(&expect).unwrap());
        let z = Seed::from_matrix(vec![vec![0, 0], vec![0, 0]], vec![1, 1]).unwrap();
        let tz = QuantumTorus::new(&z);
        assert!(quantum_mutation_image_at(&tz, 1, 0).is_monomial());
    }

    #[test]
    fn classical_limit_matches_x_mutation() {
        for s in seeds() {
            let t = QuantumTorus::new(&s);
            for k in 0..s.rank() {
                let classical = mutate_x_map_at(&s, k);
                for i in 0..s.rank() {
                    let q = quantum_mutation_image_at(&t, k, i).at_q_one();
                    assert_eq!(q, classical.images[i], "seed {s}, k={k}, i={i}");
                }
            }
        }
    }

    #[test]
    fn involution_and_relations() {
        for s in seeds() {
            for k in s.labels().to_vec() {
                assert!(check_quantum_involution(&s, &k).unwrap(), "{s} k={k}");
                assert!(check_mutation_preserves_relations(&s, &k).unwrap(), "{s} k={k}");
            }
        }
    }
}
