//! Left and right actions of the quantum torus `T_s` on Laurent polynomials
//! in the A-variables with coefficients in `ℚ[t^{±1}]`:
//! `X_i ∘ f = p^*X_i · t_i^-(f)` and `f ∘ X_i = p^*X_i · t_i^+(f)`, where
//! `t_i^±` rescales `A_i ↦ q^{±d̂_i} A_i` and `p^*X_i = ∏_j A_j^{ε_ij}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::torus::{QTElem, QuantumTorus};
use super::tpoly::TPoly;
use crate::error::{Error, Result};
use crate::seed::{Label, Seed};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Commutative Laurent polynomial `Σ c_γ(t) A^γ`.
#[derive(Clone, PartialEq, Eq)]
pub struct ALaurent {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, TPoly>,
}

impl ALaurent {
    pub fn zero(nvars: usize) -> Self {
        ALaurent {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(gamma: Vec<i64>, c: TPoly) -> Self {
        let mut out = Self::zero(gamma.len());
        out.insert(gamma, c);
        out
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], TPoly::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &TPoly)> {
        self.terms.iter()
    }

    fn insert(&mut self, g: Vec<i64>, c: TPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(g.clone()).or_default();
        slot.add_assign(&c);
        if slot.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in &o.terms {
            out.insert(g.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &TPoly) -> Self {
        let mut out = Self::zero(self.nvars);
        for (g, x) in &self.terms {
            out.insert(g.clone(), x.mul(c));
        }
        out
    }

    /// Multiplication by the monomial `A^γ`.
    pub fn mul_monomial(&self, gamma: &[i64]) -> Self {
        ALaurent {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (g.iter().zip(gamma).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// `A_i ↦ t^{e} A_i`.
    pub fn rescale(&self, i: usize, e: i64) -> Self {
        ALaurent {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (g.clone(), c.shift(e * g[i])))
                .collect(),
        }
    }
}

impl fmt::Debug for ALaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| format!("({c:?})*A^{g:?}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// The bimodule structure attached to a seed.
#[derive(Debug, Clone)]
pub struct Bimodule {
    torus: Arc<QuantumTorus>,
}

impl Bimodule {
    pub fn new(s: &Seed) -> Self {
        Bimodule {
            torus: QuantumTorus::new(s),
        }
    }

    pub fn torus(&self) -> &Arc<QuantumTorus> {
        &self.torus
    }

    /// `t_i^{sign}` with `sign = ±1`.
    pub fn t_map(&self, i: usize, sign: i64, f: &ALaurent) -> ALaurent {
        f.rescale(i, sign * self.torus.q_hat(i))
    }

    fn p_row(&self, i: usize, power: i64) -> Vec<i64> {
        self.torus.seed().epsilon()[i].iter().map(|e| e * power).collect()
    }

    /// Action of `X_i^{±1}` (`power = ±1`) on one side.
    pub fn act_generator(&self, side: Side, i: usize, power: i64, f: &ALaurent) -> ALaurent {
        // X_i^{-1} ∘ g = P_i^{-1} t_i^+(g), g ∘ X_i^{-1} = P_i^{-1} t_i^-(g)
        let sign = match side {
            Side::Left => -power,
            Side::Right => power,
        };
        self.t_map(i, sign, f).mul_monomial(&self.p_row(i, power))
    }

    /// Action of the Weyl monomial `X^α = q^{c} X_1^{α_1} ⋯ X_n^{α_n}`.
    pub fn act_monomial(&self, side: Side, alpha: &[i64], f: &ALaurent) -> ALaurent {
        let mut g = f.clone();
        let order: Vec<usize> = match side {
            // X_1^{a_1}(⋯(X_n^{a_n} ∘ f))
            Side::Left => (0..alpha.len()).rev().collect(),
            // ((f ∘ X_1^{a_1}) ∘ ⋯) ∘ X_n^{a_n}
            Side::Right => (0..alpha.len()).collect(),
        };
        for i in order {
            for _ in 0..alpha[i].unsigned_abs() {
                g = self.act_generator(side, i, alpha[i].signum(), &g);
            }
        }
        g.scale(&TPoly::t_pow(self.torus.ordering_exponent(alpha)))
    }

    pub fn act(&self, side: Side, x: &QTElem, f: &ALaurent) -> Result<ALaurent> {
        if **x.torus() != *self.torus {
            return Err(Error::SeedMismatch);
        }
        if f.nvars() != self.torus.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.torus.rank(),
                got: f.nvars(),
            });
        }
        let mut acc = ALaurent::zero(f.nvars());
        for (a, c) in x.terms() {
            acc = acc.add(&self.act_monomial(side, a, f).scale(c));
        }
        Ok(acc)
    }
}

pub fn bimodule_act(side: Side, s: &Seed, i: &Label, f: &ALaurent) -> Result<ALaurent> {
    let i = s.index_of(i)?;
    let b = Bimodule::new(s);
    let x = QTElem::generator(b.torus(), i, 1);
    b.act(side, &x, f)
}

/// Exponent vectors with `Σ|α_i| ≤ max_degree`.
pub fn exponents_up_to(n: usize, max_degree: u32) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &out {
            let used: u32 = v.iter().map(|x: &i64| x.unsigned_abs() as u32).sum();
            let r = (max_degree - used) as i64;
            for e in -r..=r {
                let mut w = v.clone();
                w.push(e);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BimoduleReport {
    pub left_homomorphism: bool,
    pub right_antihomomorphism: bool,
    pub actions_commute: bool,
    pub shifts_commute: bool,
    pub cases: usize,
}

impl BimoduleReport {
    pub fn pass(&self) -> bool {
        self.left_homomorphism
            && self.right_antihomomorphism
            && self.actions_commute
            && self.shifts_commute
    }
}

/// Checks the bimodule relations on all Weyl monomials of total degree at
/// most `max_degree`, acting on the A-monomials of degree at most one.
pub fn check_bimodule(s: &Seed, max_degree: u32) -> BimoduleReport {
    let b = Bimodule::new(s);
    let n = s.rank();
    let t = b.torus().clone();
    let alphas = exponents_up_to(n, max_degree);
    let fs: Vec<ALaurent> = exponents_up_to(n, 1)
        .into_iter()
        .map(|g| ALaurent::monomial(g, TPoly::one()))
        .collect();
    let mut r = BimoduleReport {
        left_homomorphism: true,
        right_antihomomorphism: true,
        actions_commute: true,
        shifts_commute: true,
        cases: 0,
    };
    for a in &alphas {
        for bb in &alphas {
            let sum: u32 = a.iter().chain(bb).map(|x| x.unsigned_abs() as u32).sum();
            if sum > max_degree {
                continue;
            }
            let xa = QTElem::monomial(&t, a.clone(), TPoly::one());
            let xb = QTElem::monomial(&t, bb.clone(), TPoly::one());
            let ab = xa.mul(&xb).expect("same torus");
            for f in &fs {
                r.cases += 1;
                let l1 = b.act(Side::Left, &xa, &b.act(Side::Left, &xb, f).unwrap()).unwrap();
                let l2 = b.act(Side::Left, &ab, f).unwrap();
                r.left_homomorphism &= l1 == l2;
                let r1 = b.act(Side::Right, &xb, &b.act(Side::Right, &xa, f).unwrap()).unwrap();
                let r2 = b.act(Side::Right, &ab, f).unwrap();
                r.right_antihomomorphism &= r1 == r2;
                let c1 = b.act(Side::Left, &xa, &b.act(Side::Right, &xb, f).unwrap()).unwrap();
                let c2 = b.act(Side::Right, &xb, &b.act(Side::Left, &xa, f).unwrap()).unwrap();
                r.actions_commute &= c1 == c2;
            }
        }
    }
    for f in &fs {
        let g = f.add(&ALaurent::one(n)).scale(&TPoly::t_pow(1).add(&TPoly::one()));
        for i in 0..n {
            for j in 0..n {
                for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    let u = b.t_map(i, si, &b.t_map(j, sj, &g));
                    let v = b.t_map(j, sj, &b.t_map(i, si, &g));
                    r.shifts_commute &= u == v;
                }
                // multiplication by p^*X_i commutes with t_i^±
                let p = b.p_row(i, 1);
                for sg in [1, -1] {
                    let u = b.t_map(i, sg, &g.mul_monomial(&p));
                    let v = b.t_map(i, sg, &g).mul_monomial(&p);
                    r.shifts_commute &= u == v;
                }
            }
        }
    }
    r
}
