//! Rational functions over ℤ[λ] in a unique canonical form.
//!
//! Invariants: the denominator is nonzero, num/den share no polynomial
//! factor, the combined integer content of both parts is 1, and the
//! denominator has a positive leading coefficient. Structural equality
//! therefore coincides with mathematical equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            num: IntPoly,
            den: IntPoly,
        }
        let repr = Repr::deserialize(deserializer)?;
        RatFunc::new(repr.num, repr.den)
            .map_err(|e| D::Error::custom(format!("invalid rational function: {e}")))
    }
}

impl RatFunc {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: IntPoly, den: IntPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc {
                num: IntPoly::zero(),
                den: IntPoly::one(),
            };
        }
        let (mut num, mut den) = (num, den);
        if !num.is_constant() && !den.is_constant() {
            let g = num.gcd(&den).expect("nonzero operands");
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides");
                den = den.div_exact(&g).expect("gcd divides");
            }
        }
        Self::fix_content(num, den)
    }

    /// Content/sign normalization only; callers guarantee coprimality.
    fn fix_content(num: IntPoly, den: IntPoly) -> Self {
        let mut c = num.content().gcd(&den.content());
        if den.leading().expect("nonzero").is_negative() {
            c = -c;
        }
        RatFunc {
            num: num.div_scalar_exact(&c).expect("content divides"),
            den: den.div_scalar_exact(&c).expect("content divides"),
        }
    }

    pub fn from_poly(p: IntPoly) -> Self {
        Self::fix_content_or_zero(p, IntPoly::one())
    }

    fn fix_content_or_zero(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            RatFunc {
                num: IntPoly::zero(),
                den: IntPoly::one(),
            }
        } else {
            Self::fix_content(num, den)
        }
    }

    pub fn from_int(k: impl Into<BigInt>) -> Self {
        Self::from_poly(IntPoly::constant(k))
    }

    pub fn zero() -> Self {
        Self::from_poly(IntPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(IntPoly::one())
    }

    /// λ as a rational function.
    pub fn variable() -> Self {
        Self::from_poly(IntPoly::variable())
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = &self.num.mul(&other.den) + &other.num.mul(&self.den);
        Self::normalized(num, self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // Cross-reduce first so the final gcd is trivial.
        let (a, d2) = Self::reduce_pair(&self.num, &other.den);
        let (b, d1) = Self::reduce_pair(&other.num, &self.den);
        Self::fix_content(a.mul(&b), d1.mul(&d2))
    }

    fn reduce_pair(n: &IntPoly, d: &IntPoly) -> (IntPoly, IntPoly) {
        if n.is_constant() || d.is_constant() {
            return (n.clone(), d.clone());
        }
        let g = n.gcd(d).expect("nonzero operands");
        if g.is_one() {
            (n.clone(), d.clone())
        } else {
            (
                n.div_exact(&g).expect("gcd divides"),
                d.div_exact(&g).expect("gcd divides"),
            )
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        Ok(self.mul(&RatFunc {
            num: other.den.clone(),
            den: other.num.clone(),
        }
        .resign()))
    }

    /// Restores the positive-leading-denominator convention after a swap.
    fn resign(self) -> Self {
        if self.den.leading().expect("nonzero").is_negative() {
            RatFunc {
                num: self.num.neg(),
                den: self.den.neg(),
            }
        } else {
            self
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        Ok(RatFunc {
            num: self.den.clone(),
            den: self.num.clone(),
        }
        .resign())
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn powi(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let e = exp.unsigned_abs() as usize;
        // Inputs are reduced, so powers stay coprime; only content needs fixing.
        Ok(Self::fix_content_or_zero(base.num.pow(e), base.den.pow(e)))
    }

    /// Substitutes another rational function for λ.
    pub fn compose(&self, arg: &Self) -> Result<Self> {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let d = dn.max(dd);
        let num = compose_cleared(&self.num, arg, d);
        let den = compose_cleared(&self.den, arg, d);
        if den.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        Ok(Self::normalized(num, den))
    }

    /// Extracts the polynomial when the reduced denominator is constant.
    pub fn to_poly(&self) -> Result<IntPoly> {
        match self.den.degree() {
            Some(0) => self
                .num
                .div_scalar_exact(&self.den.coeff(0))
                .map_err(|_| Error::NotPolynomial),
            _ => Err(Error::NotPolynomial),
        }
    }

    /// Evaluates at a rational point; `None` on a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval_rational(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rational(x) / d)
    }
}

/// Σ_k c_k N^k Δ^(d−k) for p = Σ c_k λ^k and arg = N/Δ, with d fixed by the
/// caller so that numerator and denominator of a RatFunc composition share
/// the same clearing power.
fn compose_cleared(p: &IntPoly, arg: &RatFunc, d: usize) -> IntPoly {
    let mut acc = IntPoly::zero();
    let mut delta_pow = IntPoly::one();
    // Horner from the top degree down; multiply in Δ^(d−deg p) at the end.
    for k in (0..=d).rev() {
        acc = acc.mul(&arg.num);
        let c = p.coeff(k);
        if !c.is_zero() {
            acc = acc.add(&delta_pow.scale(&c));
        }
        if k > 0 {
            delta_pow = delta_pow.mul(&arg.den);
        }
    }
    acc
}

/// Evaluates a polynomial at a rational-function argument:
/// p(N/Δ) = (Σ_k c_k N^k Δ^(deg p − k)) / Δ^(deg p).
pub fn compose_poly_ratfunc(p: &IntPoly, arg: &RatFunc) -> RatFunc {
    let d = match p.degree() {
        None => return RatFunc::zero(),
        Some(d) => d,
    };
    let num = compose_cleared(p, arg, d);
    let den = arg.den.pow(d);
    RatFunc::new(num, den).expect("denominator is a power of a nonzero polynomial")
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::add(self, rhs)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::sub(self, rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::mul(self, rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &IntPoly| {
            let s = p.to_string();
            if s.contains(' ') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{} / {}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}
