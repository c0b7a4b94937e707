//! The three canonical isomorphisms between quantum tori of a seed, its
//! chiral dual, and their opposite algebras.
//!
//! * `Alpha`: `T_s → T_s^{op}` at `q^{-1}`, `X_i ↦ X_i`.
//! * `Iota`: `T_{s°} → T_s` at `q^{-1}`, `X°_i ↦ X_i^{-1}`.
//! * `Beta`: `T_s → T_{s°}^{op}`, `X_i ↦ (X°_i)^{-1}`.
//!
//! All three are realized on the underlying vector spaces; `Alpha` and
//! `Beta` reverse products.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::factored::FactoredQTElem;
use super::mutation::QuantumMutation;
use super::torus::{QTElem, QuantumTorus};
use super::tpoly::TPoly;
use crate::error::{Error, Result};
use crate::seed::{Label, Seed};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualityKind {
    Alpha,
    Iota,
    Beta,
}

impl DualityKind {
    pub const ALL: [DualityKind; 3] = [DualityKind::Alpha, DualityKind::Iota, DualityKind::Beta];

    fn reverses(self) -> bool {
        matches!(self, DualityKind::Alpha | DualityKind::Beta)
    }

    fn inverts_q(self) -> bool {
        matches!(self, DualityKind::Alpha | DualityKind::Iota)
    }

    fn inverts_x(self) -> bool {
        matches!(self, DualityKind::Iota | DualityKind::Beta)
    }
}

impl fmt::Display for DualityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DualityKind::Alpha => "alpha",
            DualityKind::Iota => "iota",
            DualityKind::Beta => "beta",
        })
    }
}

impl FromStr for DualityKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha" => Ok(DualityKind::Alpha),
            "iota" => Ok(DualityKind::Iota),
            "beta" => Ok(DualityKind::Beta),
            _ => Err(Error::Parse(format!("unknown duality {s:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Duality {
    pub kind: DualityKind,
    pub source: Arc<QuantumTorus>,
    pub target: Arc<QuantumTorus>,
}

impl Duality {
    /// The duality attached to seed `s` (for `Iota` the source is `T_{s°}`).
    pub fn new(kind: DualityKind, s: &Seed) -> Self {
        let plain = QuantumTorus::new(s);
        let chiral = QuantumTorus::new(&s.chiral_dual());
        let (source, target) = match kind {
            DualityKind::Alpha => (plain.clone(), plain),
            DualityKind::Iota => (chiral, plain),
            DualityKind::Beta => (plain, chiral),
        };
        Duality {
            kind,
            source,
            target,
        }
    }

    fn map_coeff(&self, c: &TPoly) -> TPoly {
        if self.kind.inverts_q() {
            c.invert_t()
        } else {
            c.clone()
        }
    }

    fn map_exponent(&self, a: &[i64]) -> Vec<i64> {
        if self.kind.inverts_x() {
            a.iter().map(|x| -x).collect()
        } else {
            a.to_vec()
        }
    }

    /// Termwise image; valid on any element since Weyl monomials map to
    /// Weyl monomials.
    pub fn apply_qt(&self, e: &QTElem) -> QTElem {
        e.map_monomials(&self.target, |a, c| (self.map_exponent(a), self.map_coeff(c)))
    }

    pub fn apply(&self, x: &FactoredQTElem) -> Result<FactoredQTElem> {
        let n = self.target.rank();
        let mut pieces = vec![
            FactoredQTElem::monomial(&self.target, vec![0; n], self.map_coeff(x.scalar())),
            FactoredQTElem::monomial(&self.target, self.map_exponent(x.alpha()), TPoly::one()),
        ];
        for (f, s) in x.factors() {
            let img = FactoredQTElem::from_qt(&self.apply_qt(f));
            pieces.push(if *s > 0 { img } else { img.inverse()? });
        }
        if self.kind.reverses() {
            pieces.reverse();
        }
        let mut acc = FactoredQTElem::one(&self.target);
        for p in &pieces {
            acc = acc.mul(p)?;
        }
        Ok(acc)
    }

    /// Product in the algebra the duality lands in (opposite when reversing).
    fn target_product(&self, a: &QTElem, b: &QTElem) -> Result<QTElem> {
        if self.kind.reverses() {
            b.mul(a)
        } else {
            a.mul(b)
        }
    }
}

/// Image of the `i`-th generator of the duality's source.
pub fn duality_image(kind: DualityKind, s: &Seed, i: &Label) -> Result<QTElem> {
    let i = s.index_of(i)?;
    let d = Duality::new(kind, s);
    Ok(d.apply_qt(&QTElem::generator(&d.source, i, 1)))
}

/// `D(x_i x_j) = D(x_i) · D(x_j)` in the target (opposite) algebra, for all
/// generator pairs and their inverses.
pub fn check_duality_preserves_relations(kind: DualityKind, s: &Seed) -> Result<bool> {
    let d = Duality::new(kind, s);
    let n = s.rank();
    for i in 0..n {
        for j in 0..n {
            for (pi, pj) in [(1, 1), (1, -1), (-1, 1)] {
                let xi = QTElem::generator(&d.source, i, pi);
                let xj = QTElem::generator(&d.source, j, pj);
                let lhs = d.apply_qt(&xi.mul(&xj)?);
                let rhs = d.target_product(&d.apply_qt(&xi), &d.apply_qt(&xj))?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualityCase {
    pub generator: Label,
    /// `sgn ε_ik` for the generator in the original seed.
    pub sign: i64,
    pub pass: bool,
}

/// `D ∘ μ_k = μ_k ∘ D` on each generator of the mutated source torus.
pub fn duality_mutation_cases(kind: DualityKind, s: &Seed, k: &Label) -> Result<Vec<DualityCase>> {
    let k = s.index_of(k)?;
    let d = Duality::new(kind, s);
    let d_mut = Duality::new(kind, &s.mutate_at(k));
    let mu_src = QuantumMutation::on_torus(&d.source, k);
    let mu_tgt = QuantumMutation::on_torus(&d.target, k);
    debug_assert_eq!(*mu_src.target, *d_mut.source);
    let mut out = Vec::new();
    for i in 0..s.rank() {
        let lhs = d.apply(&mu_src.images[i])?;
        let rhs = mu_tgt.apply(&d_mut.apply(&FactoredQTElem::generator(&d_mut.source, i, 1))?)?;
        out.push(DualityCase {
            generator: s.labels()[i].clone(),
            sign: s.eps(i, k).signum(),
            pass: lhs.equals(&rhs)?,
        });
    }
    Ok(out)
}

pub fn check_duality_commutes_with_mutation(kind: DualityKind, s: &Seed, k: &Label) -> Result<bool> {
    Ok(duality_mutation_cases(kind, s, k)?.iter().all(|c| c.pass))
}
