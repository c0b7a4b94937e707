//! Reduced multivariate rational functions over ℚ.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::{gcd, Poly};

/// `num / den` with `gcd(num, den) = 1` and `den` monic in lex order.
/// Equal functions therefore have equal representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalExpr {
    num: Poly,
    den: Poly,
}

impl RationalExpr {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let n = num.nvars();
        if num.is_zero() {
            return RationalExpr {
                num,
                den: Poly::one(n),
            };
        }
        let g = gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalExpr { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        RationalExpr {
            num: p,
            den: Poly::one(n),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Poly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Poly::one(nvars))
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::from_poly(Poly::constant(nvars, c))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_poly(Poly::var(nvars, i))
    }

    /// Laurent monomial `∏ x_i^{e_i}` with possibly negative exponents.
    pub fn laurent_monomial(nvars: usize, exps: &[i64]) -> Self {
        let pos: Vec<u32> = exps.iter().map(|&e| e.max(0) as u32).collect();
        let neg: Vec<u32> = exps.iter().map(|&e| (-e).max(0) as u32).collect();
        RationalExpr {
            num: Poly::monomial(nvars, pos, BigRational::one()),
            den: Poly::monomial(nvars, neg, BigRational::one()),
        }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        let lc = self.num.leading_coeff().recip();
        RationalExpr {
            num: self.den.scale(&lc),
            den: self.num.scale(&lc),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        // cross-cancel before multiplying to keep intermediate sizes small
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("divides");
        let d2 = o.den.div_exact(&g1).expect("divides");
        let n2 = o.num.div_exact(&g2).expect("divides");
        let d1 = self.den.div_exact(&g2).expect("divides");
        RationalExpr::new(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.recip())
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RationalExpr::new(self.num.add(&o.num), self.den.clone());
        }
        RationalExpr::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> Self {
        RationalExpr {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn powi(&self, e: i64) -> Self {
        let base = if e < 0 { self.recip() } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        // reduced stays reduced under powers
        RationalExpr {
            num: base.num.pow(k),
            den: base.den.pow(k),
        }
    }

    /// Substitutes `x_i ↦ images[i]`.
    pub fn substitute(&self, images: &[RationalExpr]) -> RationalExpr {
        let (nn, nd) = subst_poly(&self.num, images);
        let (dn, dd) = subst_poly(&self.den, images);
        RationalExpr::new(nn.mul(&dd), nd.mul(&dn))
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.num.eval_f64(point) / self.den.eval_f64(point)
    }

    /// `None` if the denominator vanishes at the point.
    pub fn eval_rational(&self, point: &[BigRational]) -> Option<BigRational> {
        let d = self.den.eval_rational(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rational(point) / d)
    }

    /// `true` iff the expression is the single variable `x_i`.
    pub fn is_var(&self, i: usize) -> bool {
        *self == RationalExpr::var(self.nvars(), i)
    }

    /// Equality by cross-multiplication; agrees with `==` on reduced forms.
    pub fn equals_cross(&self, o: &Self) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.den.is_one() {
            return self.num.render(names);
        }
        let num = if self.num.num_terms() > 1 {
            format!("({})", self.num.render(names))
        } else {
            self.num.render(names)
        };
        let den = self.den.render(names);
        if self.den.num_terms() > 1 || den.contains('*') {
            format!("{num}/({den})")
        } else {
            format!("{num}/{den}")
        }
    }

    pub fn to_f64_constant(&self) -> Option<f64> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        (n / d).to_f64()
    }
}

impl fmt::Debug for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars()).map(|i| format!("v{}", i + 1)).collect();
        f.write_str(&self.render(&names))
    }
}

/// `P(images)` as an unreduced pair `(N, D)` with `D = ∏ den_i^{deg_i P}`.
fn subst_poly(p: &Poly, images: &[RationalExpr]) -> (Poly, Poly) {
    let n = images.first().map(|r| r.nvars()).unwrap_or(p.nvars());
    let maxdeg: Vec<u32> = (0..p.nvars()).map(|v| p.degree_in(v)).collect();
    let den = images
        .iter()
        .zip(&maxdeg)
        .fold(Poly::one(n), |acc, (r, &k)| acc.mul(&r.den.pow(k)));
    let mut num = Poly::zero(n);
    for (e, c) in p.terms() {
        let mut t = Poly::constant(n, c.clone());
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                t = t.mul(&images[i].num.pow(k));
            }
            if maxdeg[i] > k {
                t = t.mul(&images[i].den.pow(maxdeg[i] - k));
            }
        }
        num = num.add(&t);
    }
    (num, den)
}

pub(crate) fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
