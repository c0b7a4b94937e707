//! Rational maps between seed X- and A-tori induced by mutations and
//! symmetries, word composition, and trivial-word detection.

use std::fmt;

use num_rational::BigRational;

use super::rational::{big, RationalExpr};
use crate::error::{Error, Result};
use crate::seed::{sgn, Label, Permutation, Seed};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    X,
    A,
}

impl Family {
    fn prefix(self) -> &'static str {
        match self {
            Family::X => "X",
            Family::A => "A",
        }
    }
}

/// Pullback of a cluster transformation `source → target`: `images[i]` is
/// the target coordinate `i` written in the source coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateMap {
    pub family: Family,
    pub source: Seed,
    pub target: Seed,
    pub images: Vec<RationalExpr>,
}

impl CoordinateMap {
    pub fn identity(family: Family, seed: &Seed) -> Self {
        let n = seed.rank();
        CoordinateMap {
            family,
            source: seed.clone(),
            target: seed.clone(),
            images: (0..n).map(|i| RationalExpr::var(n, i)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, r)| r.is_var(i))
    }

    /// `self` followed by `next` (requires `next.source == self.target`).
    pub fn then(&self, next: &CoordinateMap) -> CoordinateMap {
        debug_assert_eq!(self.family, next.family);
        CoordinateMap {
            family: self.family,
            source: self.source.clone(),
            target: next.target.clone(),
            images: next
                .images
                .iter()
                .map(|r| r.substitute(&self.images))
                .collect(),
        }
    }

    pub fn variable_names(&self) -> Vec<String> {
        self.source
            .labels()
            .iter()
            .map(|l| format!("{}{}", self.family.prefix(), l))
            .collect()
    }

    /// Evaluates at a strictly positive real point.
    pub fn eval_positive(&self, point: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.source.rank(), point.len())?;
        if let Some(i) = point.iter().position(|&x| !(x > 0.0)) {
            return Err(Error::NonPositivePoint(i));
        }
        Ok(self.images.iter().map(|r| r.eval_f64(point)).collect())
    }

    /// Exact evaluation at a positive rational point.
    pub fn eval_positive_rational(&self, point: &[BigRational]) -> Result<Vec<BigRational>> {
        check_dim(self.source.rank(), point.len())?;
        let zero = big(0);
        if let Some(i) = point.iter().position(|x| *x <= zero) {
            return Err(Error::NonPositivePoint(i));
        }
        Ok(self
            .images
            .iter()
            .map(|r| r.eval_rational(point).expect("subtraction-free map has no pole at positive points"))
            .collect())
    }

    /// Evaluation in logarithmic coordinates `x_i = log X_i`.
    pub fn eval_log(&self, log_point: &[f64]) -> Result<Vec<f64>> {
        let p: Vec<f64> = log_point.iter().map(|x| x.exp()).collect();
        Ok(self.eval_positive(&p)?.into_iter().map(f64::ln).collect())
    }
}

impl fmt::Display for CoordinateMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.variable_names();
        for (i, r) in self.images.iter().enumerate() {
            writeln!(
                f,
                "{}{}' = {}",
                self.family.prefix(),
                self.target.labels()[i],
                r.render(&names)
            )?;
        }
        Ok(())
    }
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// `X_k ↦ X_k^{-1}`, `X_i ↦ X_i (1 + X_k^{-sgn ε_ik})^{-ε_ik}`.
pub fn mutate_x_map(s: &Seed, k: &Label) -> Result<CoordinateMap> {
    let k = s.index_of(k)?;
    Ok(mutate_x_map_at(s, k))
}

pub fn mutate_x_map_at(s: &Seed, k: usize) -> CoordinateMap {
    let n = s.rank();
    let one = RationalExpr::one(n);
    let images = (0..n)
        .map(|i| {
            let xi = RationalExpr::var(n, i);
            if i == k {
                return xi.recip();
            }
            let e = s.eps(i, k);
            if e == 0 {
                return xi;
            }
            let xk = RationalExpr::var(n, k).powi(-sgn(e));
            xi.mul(&one.add(&xk).powi(-e))
        })
        .collect();
    CoordinateMap {
        family: Family::X,
        source: s.clone(),
        target: s.mutate_at(k),
        images,
    }
}

/// `A_k ↦ A_k^{-1}(∏_{ε_ki>0} A_i^{ε_ki} + ∏_{ε_ki<0} A_i^{-ε_ki})`.
pub fn mutate_a_map(s: &Seed, k: &Label) -> Result<CoordinateMap> {
    let k = s.index_of(k)?;
    Ok(mutate_a_map_at(s, k))
}

pub fn mutate_a_map_at(s: &Seed, k: usize) -> CoordinateMap {
    let n = s.rank();
    let images = (0..n)
        .map(|i| {
            if i != k {
                return RationalExpr::var(n, i);
            }
            let pos: Vec<i64> = (0..n).map(|j| s.eps(k, j).max(0)).collect();
            let neg: Vec<i64> = (0..n).map(|j| (-s.eps(k, j)).max(0)).collect();
            let sum = RationalExpr::laurent_monomial(n, &pos)
                .add(&RationalExpr::laurent_monomial(n, &neg));
            RationalExpr::var(n, k).recip().mul(&sum)
        })
        .collect();
    CoordinateMap {
        family: Family::A,
        source: s.clone(),
        target: s.mutate_at(k),
        images,
    }
}

/// `p^*X_k = ∏_i A_i^{ε_ki}`, as a map from A-coordinates to X-coordinates
/// of the same seed.
pub fn projection_p(s: &Seed) -> CoordinateMap {
    let n = s.rank();
    CoordinateMap {
        family: Family::A,
        source: s.clone(),
        target: s.clone(),
        images: (0..n)
            .map(|k| RationalExpr::laurent_monomial(n, &s.epsilon()[k]))
            .collect(),
    }
}

/// Map induced by a label bijection `σ`: `σ^*V_{σ(i)} = V_i`.
pub fn permutation_map(family: Family, s: &Seed, sigma: &Permutation) -> Result<CoordinateMap> {
    let p = sigma.indices(s)?;
    let n = s.rank();
    let mut images = vec![RationalExpr::zero(n); n];
    for i in 0..n {
        images[p[i]] = RationalExpr::var(n, i);
    }
    Ok(CoordinateMap {
        family,
        source: s.clone(),
        target: s.relabel(sigma)?,
        images,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum WordStep {
    Mutate(Label),
    /// Seed isomorphism along a label bijection; it transports `ε` and is
    /// not required to preserve it (see [`Seed::relabel`]).
    Permute(Permutation),
}

/// Parses `"m1,m2,s(1 2)"`. Mutation steps are `m<label>`; permutation steps
/// are `s` followed by cycle notation.
pub fn parse_word(text: &str) -> Result<Vec<WordStep>> {
    let mut steps = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        rest = rest.trim_start_matches([',', ' ']);
        if rest.is_empty() {
            break;
        }
        if let Some(r) = rest.strip_prefix('s') {
            let r = r.trim_start();
            let mut end = 0;
            let bytes = r.as_bytes();
            while end < bytes.len() && bytes[end] == b'(' {
                let close = r[end..]
                    .find(')')
                    .ok_or_else(|| Error::Parse(format!("unbalanced cycle in {text:?}")))?;
                end += close + 1;
            }
            if end == 0 {
                return Err(Error::Parse(format!("symmetry step without cycles in {text:?}")));
            }
            steps.push(WordStep::Permute(Permutation::parse_cycles(&r[..end])?));
            rest = &r[end..];
        } else if let Some(r) = rest.strip_prefix('m') {
            let end = r.find(',').unwrap_or(r.len());
            let label = r[..end].trim();
            if label.is_empty() {
                return Err(Error::Parse(format!("mutation step without label in {text:?}")));
            }
            steps.push(WordStep::Mutate(Label::parse(label)));
            rest = &r[end..];
        } else {
            return Err(Error::Parse(format!("unexpected word step at {rest:?}")));
        }
    }
    Ok(steps)
}

/// Composes the word left to right. Returns the pullback from the final
/// seed's coordinates into the initial ones, together with the final seed.
pub fn compose_word(s: &Seed, word: &[WordStep], family: Family) -> Result<(CoordinateMap, Seed)> {
    let mut acc = CoordinateMap::identity(family, s);
    for (index, step) in word.iter().enumerate() {
        let cur = &acc.target;
        let m = match step {
            WordStep::Mutate(k) => {
                let k = cur.index_of(k).map_err(|e| Error::InvalidWordStep {
                    index,
                    reason: e.to_string(),
                })?;
                match family {
                    Family::X => mutate_x_map_at(cur, k),
                    Family::A => mutate_a_map_at(cur, k),
                }
            }
            WordStep::Permute(sigma) => {
                permutation_map(family, cur, sigma).map_err(|e| Error::InvalidWordStep {
                    index,
                    reason: e.to_string(),
                })?
            }
        };
        acc = acc.then(&m);
    }
    let last = acc.target.clone();
    Ok((acc, last))
}

/// A-triviality: the word returns to `s` and induces the identity on the
/// seed A-torus.
pub fn is_trivial_word(s: &Seed, word: &[WordStep]) -> Result<bool> {
    Ok(triviality_report(s, word)?.a_trivial)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrivialityReport {
    pub a_trivial: bool,
    pub x_trivial: bool,
}

/// Both A- and X-triviality; errors if the word does not return to `s`.
pub fn triviality_report(s: &Seed, word: &[WordStep]) -> Result<TrivialityReport> {
    let (a_map, last) = compose_word(s, word, Family::A)?;
    if last != *s {
        return Err(Error::WordNotClosed);
    }
    let (x_map, _) = compose_word(s, word, Family::X)?;
    Ok(TrivialityReport {
        a_trivial: a_map.is_identity(),
        x_trivial: x_map.is_identity(),
    })
}

/// Logarithmic form of the X-mutation:
/// `x'_i = x_i − ε_ik log(1 + e^{−sgn(ε_ik) x_k})`, `x'_k = −x_k`.
pub fn log_x_mutation(s: &Seed, k: usize, x: &[f64]) -> Vec<f64> {
    (0..s.rank())
        .map(|i| {
            if i == k {
                -x[k]
            } else {
                let e = s.eps(i, k);
                x[i] - e as f64 * softplus(-(sgn(e) as f64) * x[k])
            }
        })
        .collect()
}

/// `log(1 + e^y)` without overflow.
pub fn softplus(y: f64) -> f64 {
    if y > 0.0 {
        y + (-y).exp().ln_1p()
    } else {
        y.exp().ln_1p()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn a2() -> Seed {
        Seed::from_matrix(vec![vec![0, 1], vec![-1, 0]], vec![1, 1]).unwrap()
    }

    fn names(m: &CoordinateMap) -> Vec<String> {
        m.variable_names()
    }

    #[test]
    fn x_mutation_images() {
        let m = mutate_x_map(&a2(), &2.into()).unwrap();
        assert_eq!(m.images[1].render(&names(&m)), "1/X2");
        // X_1 (1 + X_2^{-1})^{-1} = X_1 X_2 / (1 + X_2)
        assert_eq!(m.images[0].render(&names(&m)), "X1*X2/(X2 + 1)");
        let z = Seed::from_matrix(vec![vec![0, 0], vec![0, 0]], vec![1, 1]).unwrap();
        let m = mutate_x_map(&z, &1.into()).unwrap();
        assert!(m.images[1].is_var(1));
    }

    #[test]
    fn a_mutation_images() {
        let m = mutate_a_map(&a2(), &1.into()).unwrap();
        assert_eq!(m.images[0].render(&names(&m)), "(A2 + 1)/A1");
        assert!(m.images[1].is_var(1));
        let z = Seed::from_matrix(vec![vec![0, 0], vec![0, 0]], vec![1, 1]).unwrap();
        let m = mutate_a_map(&z, &1.into()).unwrap();
        assert_eq!(m.images[0].render(&names(&m)), "2/A1");
    }

    #[test]
    fn projection_examples() {
        let p = projection_p(&a2());
        assert_eq!(p.images[0].render(&names(&p)), "A2");
        assert_eq!(p.images[1].render(&names(&p)), "1/A1");
        let z = Seed::from_matrix(vec![vec![0, 0], vec![0, 0]], vec![1, 1]).unwrap();
        assert!(projection_p(&z).images.iter().all(|r| r.to_f64_constant() == Some(1.0)));
    }

    #[test]
    fn positive_evaluation() {
        let m = mutate_x_map(&a2(), &2.into()).unwrap();
        let v = m.eval_positive(&[1.0, 1.0]).unwrap();
        assert_eq!(v, vec![0.5, 1.0]);
        let exact = m
            .eval_positive_rational(&[big(1), big(1)])
            .unwrap();
        assert_eq!(exact[0], BigRational::new(1.into(), 2.into()));
        assert!(matches!(m.eval_positive(&[0.0, 1.0]), Err(Error::NonPositivePoint(0))));
        let id = CoordinateMap::identity(Family::X, &a2());
        assert_eq!(id.eval_positive(&[0.3, 7.0]).unwrap(), vec![0.3, 7.0]);
    }

    #[test]
    fn word_parsing() {
        let w = parse_word("m1,m2,m1,m2,m1,s(1 2)").unwrap();
        assert_eq!(w.len(), 6);
        assert_eq!(w[0], WordStep::Mutate(1.into()));
        assert!(matches!(w[5], WordStep::Permute(_)));
        assert!(parse_word("m1,q2").is_err());
    }

    #[test]
    fn double_mutation_is_trivial() {
        let s = Seed::from_matrix(
            vec![vec![0, 1, -1], vec![-1, 0, 2], vec![1, -2, 0]],
            vec![1, 1, 1],
        )
        .unwrap();
        let w = parse_word("m2,m2").unwrap();
        let r = triviality_report(&s, &w).unwrap();
        assert!(r.a_trivial && r.x_trivial);
    }

    #[test]
    fn pentagon_is_trivial() {
        let w = parse_word("m1,m2,m1,m2,m1,s(1 2)").unwrap();
        let r = triviality_report(&a2(), &w).unwrap();
        assert!(r.a_trivial);
        assert!(r.x_trivial);
        // non-returning prefix
        let w = parse_word("m1").unwrap();
        assert_eq!(is_trivial_word(&a2(), &w), Err(Error::WordNotClosed));
        // the ten-step alternating word closes without any relabeling
        let w = parse_word("m1,m2,m1,m2,m1,m2,m1,m2,m1,m2").unwrap();
        let r = triviality_report(&a2(), &w).unwrap();
        assert!(r.a_trivial && r.x_trivial);
        // closed but nontrivial: the transposition alone
        let w = parse_word("s(1 2)").unwrap();
        let sym = Seed::from_matrix(vec![vec![0, 0], vec![0, 0]], vec![1, 1]).unwrap();
        assert!(!is_trivial_word(&sym, &w).unwrap());
    }

    #[test]
    fn log_form_matches_exact_map() {
        let s = Seed::from_matrix(vec![vec![0, 2], vec![-1, 0]], vec![1, 2]).unwrap();
        for k in 0..2 {
            let m = mutate_x_map_at(&s, k);
            let x = [0.3, -1.7];
            let a = m.eval_log(&x).unwrap();
            let b = log_x_mutation(&s, k, &x);
            for (u, v) in a.iter().zip(&b) {
                assert!((u - v).abs() < 1e-12);
            }
        }
    }
}
