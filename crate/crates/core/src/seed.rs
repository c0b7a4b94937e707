//! Seeds `(I, ε, d)` and the discrete operations on them.
//!
//! Multipliers are stored as positive rationals so that the Langlands dual,
//! whose multipliers are `1/d_i`, stays representable. Every constructor that
//! takes integers produces integral multipliers; [`Seed::normalized`] rescales
//! rational multipliers back to coprime integers.

use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index label of a seed. Integer labels print as bare numbers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Name(String),
}

impl Label {
    pub fn parse(s: &str) -> Label {
        let s = s.trim();
        match s.parse::<i64>() {
            Ok(n) => Label::Int(n),
            Err(_) => Label::Name(s.to_string()),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(n) => write!(f, "{n}"),
            Label::Name(s) => f.write_str(s),
        }
    }
}

impl From<i64> for Label {
    fn from(n: i64) -> Self {
        Label::Int(n)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::parse(s)
    }
}

/// `sgn` with `sgn(0) = 0`.
pub fn sgn(x: i64) -> i64 {
    x.signum()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Seed {
    labels: Vec<Label>,
    epsilon: Vec<Vec<i64>>,
    d: Vec<Rational64>,
}

impl Seed {
    /// Validating constructor with integer multipliers.
    pub fn new(labels: Vec<Label>, epsilon: Vec<Vec<i64>>, d: Vec<i64>) -> Result<Self> {
        let d = d.into_iter().map(Rational64::from_integer).collect();
        Self::with_rational_d(labels, epsilon, d)
    }

    /// Shorthand for integer labels `1..=n`.
    pub fn from_matrix(epsilon: Vec<Vec<i64>>, d: Vec<i64>) -> Result<Self> {
        let labels = (1..=epsilon.len() as i64).map(Label::Int).collect();
        Self::new(labels, epsilon, d)
    }

    pub fn with_rational_d(
        labels: Vec<Label>,
        epsilon: Vec<Vec<i64>>,
        d: Vec<Rational64>,
    ) -> Result<Self> {
        let n = labels.len();
        if epsilon.len() != n {
            return Err(Error::MalformedSeed(format!(
                "{} labels but epsilon has {} rows",
                n,
                epsilon.len()
            )));
        }
        if let Some((i, row)) = epsilon.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::MalformedSeed(format!(
                "epsilon row {i} has length {}, expected {n}",
                row.len()
            )));
        }
        if d.len() != n {
            return Err(Error::MalformedSeed(format!(
                "{} labels but {} multipliers",
                n,
                d.len()
            )));
        }
        if let Some(i) = d.iter().position(|x| !x.is_positive()) {
            return Err(Error::MalformedSeed(format!("multiplier d[{i}] is not positive")));
        }
        for i in 0..n {
            for j in i + 1..n {
                if labels[i] == labels[j] {
                    return Err(Error::MalformedSeed(format!("duplicate label {}", labels[i])));
                }
            }
        }
        let seed = Seed { labels, epsilon, d };
        for i in 0..n {
            for j in 0..n {
                if seed.eps_hat(i, j) != -seed.eps_hat(j, i) {
                    return Err(Error::MalformedSeed(format!(
                        "epsilon_hat is not skew-symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(seed)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn epsilon(&self) -> &[Vec<i64>] {
        &self.epsilon
    }

    pub fn eps(&self, i: usize, j: usize) -> i64 {
        self.epsilon[i][j]
    }

    pub fn d(&self) -> &[Rational64] {
        &self.d
    }

    /// `d̂_i = 1/d_i`.
    pub fn d_hat(&self, i: usize) -> Rational64 {
        self.d[i].recip()
    }

    /// `ε̂_ij = ε_ij / d_j`.
    pub fn eps_hat(&self, i: usize, j: usize) -> Rational64 {
        Rational64::from_integer(self.epsilon[i][j]) / self.d[j]
    }

    pub fn d_hat_f64(&self, i: usize) -> f64 {
        let r = self.d_hat(i);
        *r.numer() as f64 / *r.denom() as f64
    }

    pub fn eps_hat_f64(&self, i: usize, j: usize) -> f64 {
        let r = self.eps_hat(i, j);
        *r.numer() as f64 / *r.denom() as f64
    }

    /// Integer multipliers, if every `d_i` is integral.
    pub fn d_integers(&self) -> Option<Vec<i64>> {
        self.d
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }

    pub fn index_of(&self, label: &Label) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.clone()))
    }

    /// Mutation in direction `k`. Labels are kept; `d` is unchanged.
    pub fn mutate(&self, k: &Label) -> Result<Seed> {
        let k = self.index_of(k)?;
        Ok(self.mutate_at(k))
    }

    pub fn mutate_at(&self, k: usize) -> Seed {
        let n = self.rank();
        let e = &self.epsilon;
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                out[i][j] = if i == k || j == k {
                    -e[i][j]
                } else if e[i][k] * e[k][j] > 0 {
                    e[i][j] + e[i][k].abs() * e[k][j]
                } else {
                    e[i][j]
                };
            }
        }
        Seed {
            labels: self.labels.clone(),
            epsilon: out,
            d: self.d.clone(),
        }
    }

    /// Applies a symmetry `σ`, given as the image of each label in order.
    /// Requires `ε_{σi,σj} = ε_ij` and `d_{σi} = d_i`.
    pub fn apply_symmetry(&self, sigma: &Permutation) -> Result<Seed> {
        let p = sigma.indices(self)?;
        let n = self.rank();
        for i in 0..n {
            if self.d[p[i]] != self.d[i] {
                return Err(Error::NotASymmetry(sigma.to_string()));
            }
            for j in 0..n {
                if self.epsilon[p[i]][p[j]] != self.epsilon[i][j] {
                    return Err(Error::NotASymmetry(sigma.to_string()));
                }
            }
        }
        Ok(self.relabel_indices(&p))
    }

    /// Transports the seed along a label bijection without checking that
    /// it preserves `ε`: the result has `ε'_{σi,σj} = ε_ij`, `d'_{σi} = d_i`.
    pub fn relabel(&self, sigma: &Permutation) -> Result<Seed> {
        let p = sigma.indices(self)?;
        Ok(self.relabel_indices(&p))
    }

    fn relabel_indices(&self, p: &[usize]) -> Seed {
        let n = self.rank();
        let mut eps = vec![vec![0i64; n]; n];
        let mut d = vec![Rational64::one(); n];
        for i in 0..n {
            d[p[i]] = self.d[i];
            for j in 0..n {
                eps[p[i]][p[j]] = self.epsilon[i][j];
            }
        }
        Seed {
            labels: self.labels.clone(),
            epsilon: eps,
            d,
        }
    }

    /// `(I, −ε, d)`.
    pub fn chiral_dual(&self) -> Seed {
        Seed {
            labels: self.labels.clone(),
            epsilon: self
                .epsilon
                .iter()
                .map(|r| r.iter().map(|x| -x).collect())
                .collect(),
            d: self.d.clone(),
        }
    }

    /// `(I, ε^∨, d^∨)` with `ε^∨_ij = (d_i/d_j) ε_ij`, `d^∨_i = 1/d_i`.
    /// The multipliers are left unnormalized; see [`Seed::normalized`].
    pub fn langlands_dual(&self) -> Result<Seed> {
        let n = self.rank();
        let mut eps = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let v = self.d[i] / self.d[j] * Rational64::from_integer(self.epsilon[i][j]);
                if !v.is_integer() {
                    return Err(Error::NonIntegralDual(i, j));
                }
                eps[i][j] = v.to_integer();
            }
        }
        Seed::with_rational_d(
            self.labels.clone(),
            eps,
            self.d.iter().map(|x| x.recip()).collect(),
        )
    }

    /// Rescales the multipliers to coprime positive integers. `ε` is
    /// unaffected since only ratios `d_i/d_j` enter its skew condition.
    pub fn normalized(&self) -> Seed {
        let den_lcm = self.d.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
        let scaled: Vec<i64> = self
            .d
            .iter()
            .map(|x| (x * Rational64::from_integer(den_lcm)).to_integer())
            .collect();
        let g = scaled.iter().fold(0i64, |acc, x| acc.gcd(x));
        let g = if g.is_zero() { 1 } else { g };
        Seed {
            labels: self.labels.clone(),
            epsilon: self.epsilon.clone(),
            d: scaled.into_iter().map(|x| Rational64::from_integer(x / g)).collect(),
        }
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Seed(labels=[")?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "], epsilon={:?}, d=[", self.epsilon)?;
        for (i, x) in self.d.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "])")
    }
}

/// A bijection of labels, stored as `(from, to)` pairs. Labels that do not
/// appear are fixed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Permutation {
    pairs: Vec<(Label, Label)>,
}

impl Permutation {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: Vec<(Label, Label)>) -> Self {
        Permutation { pairs }
    }

    /// Cycle notation, e.g. `(1 2)` or `(1 2 3)(4 5)`.
    pub fn parse_cycles(s: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced cycle in {s:?}")))?;
            let cycle: Vec<Label> = open[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(Label::parse)
                .collect();
            for (i, l) in cycle.iter().enumerate() {
                pairs.push((l.clone(), cycle[(i + 1) % cycle.len()].clone()));
            }
            rest = open[close + 1..].trim_start();
        }
        Ok(Permutation { pairs })
    }

    pub fn image(&self, l: &Label) -> Label {
        self.pairs
            .iter()
            .find(|(a, _)| a == l)
            .map(|(_, b)| b.clone())
            .unwrap_or_else(|| l.clone())
    }

    /// Index form: `p[i]` is the index of `σ(label_i)`.
    pub fn indices(&self, seed: &Seed) -> Result<Vec<usize>> {
        for (a, b) in &self.pairs {
            seed.index_of(a)?;
            seed.index_of(b)?;
        }
        let p: Vec<usize> = seed
            .labels()
            .iter()
            .map(|l| seed.index_of(&self.image(l)))
            .collect::<Result<_>>()?;
        let mut seen = vec![false; p.len()];
        for &x in &p {
            if seen[x] {
                return Err(Error::InvalidPermutation(self.to_string()));
            }
            seen[x] = true;
        }
        Ok(p)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return f.write_str("()");
        }
        for (a, b) in &self.pairs {
            write!(f, "{a}->{b} ")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Seed {
        Seed::from_matrix(vec![vec![0, 1], vec![-1, 0]], vec![1, 1]).unwrap()
    }

    #[test]
    fn constructs_valid_seeds() {
        a2();
        let s = Seed::from_matrix(vec![vec![0, 2], vec![-1, 0]], vec![1, 2]).unwrap();
        assert_eq!(s.eps_hat(0, 1), Rational64::from_integer(1));
        assert_eq!(s.eps_hat(1, 0), Rational64::from_integer(-1));
    }

    #[test]
    fn rejects_malformed_seeds() {
        assert!(matches!(
            Seed::from_matrix(vec![vec![0, 1], vec![1, 0]], vec![1, 1]),
            Err(Error::MalformedSeed(_))
        ));
        assert!(Seed::from_matrix(vec![vec![0, 1], vec![-1, 0]], vec![1, 0]).is_err());
        assert!(Seed::from_matrix(vec![vec![0, 1]], vec![1]).is_err());
        assert!(Seed::from_matrix(vec![vec![1]], vec![1]).is_err());
    }

    #[test]
    fn mutation_examples() {
        let s = a2().mutate(&1.into()).unwrap();
        assert_eq!(s.epsilon(), &[vec![0, -1], vec![1, 0]]);

        let s3 = Seed::from_matrix(
            vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]],
            vec![1, 1, 1],
        )
        .unwrap();
        let m = s3.mutate(&2.into()).unwrap();
        assert_eq!(m.epsilon(), &[vec![0, -1, 1], vec![1, 0, -1], vec![-1, 1, 0]]);
        assert!(matches!(s3.mutate(&7.into()), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn symmetries() {
        let s = a2();
        assert_eq!(s.apply_symmetry(&Permutation::identity()).unwrap(), s);
        let swap = Permutation::parse_cycles("(1 2)").unwrap();
        assert!(matches!(s.apply_symmetry(&swap), Err(Error::NotASymmetry(_))));
        let z = Seed::from_matrix(vec![vec![0, 0], vec![0, 0]], vec![1, 1]).unwrap();
        assert_eq!(z.apply_symmetry(&swap).unwrap(), z);
    }

    #[test]
    fn dualities() {
        let s = a2();
        assert_eq!(s.chiral_dual().epsilon(), &[vec![0, -1], vec![1, 0]]);
        assert_eq!(s.chiral_dual().chiral_dual(), s);
        assert_eq!(s.langlands_dual().unwrap().normalized(), s);

        let b2 = Seed::from_matrix(vec![vec![0, 2], vec![-1, 0]], vec![1, 2]).unwrap();
        let l = b2.langlands_dual().unwrap();
        assert_eq!(l.epsilon(), &[vec![0, 1], vec![-2, 0]]);
        assert_eq!(l.normalized().d_integers().unwrap(), vec![2, 1]);
        assert_eq!(l.d()[1], Rational64::new(1, 2));
    }

    #[test]
    fn langlands_dual_rejects_non_integral_entries() {
        // ε̂ = [[0, 1/2], [-1/2, 0]]; (d_1/d_2) ε_12 = 1/2.
        let s = Seed::from_matrix(vec![vec![0, 1], vec![-1, 0]], vec![2, 2]).unwrap();
        assert!(s.langlands_dual().is_ok());
        let s = Seed::from_matrix(vec![vec![0, 1], vec![-2, 0]], vec![1, 2]);
        // skew: ε̂_12 = 1/2, ε̂_21 = -2: rejected at construction already
        assert!(s.is_err());
    }

    #[test]
    fn cycle_parsing() {
        let p = Permutation::parse_cycles("(1 2 3)").unwrap();
        assert_eq!(p.image(&1.into()), 2.into());
        assert_eq!(p.image(&3.into()), 1.into());
        assert_eq!(p.image(&4.into()), 4.into());
        assert!(Permutation::parse_cycles("(1 2").is_err());
    }
}
