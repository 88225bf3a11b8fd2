//! Structured block matrices with an all-ones coupling block, and exact
//! closed-form evaluation of their characteristic polynomials.
//!
//! Two families are supported: a general form with arbitrary diagonal
//! payloads, and four specializations (M1–M4) whose first two diagonal
//! blocks are scalar multiples of the identity. The closed forms are
//! verified against direct `charpoly` of the assembled matrix.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{
    charpoly, coronal, interpolate_rational, rational_coeffs_to_poly, IntMatrix,
};
use crate::poly::IntPoly;
use crate::ratfunc::{compose_poly_ratfunc, RatFunc};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn apply(self, m: IntMatrix) -> IntMatrix {
        match self {
            Sign::Plus => m,
            Sign::Minus => m.neg(),
        }
    }
}

/// Which of the four scalar-diagonal shapes to build.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BlockShape {
    /// J-coupling between the first and third block; third block t×t.
    M1,
    /// J-coupling between the second and third block; third block t×t.
    M2,
    /// Kronecker coupling I_r⊗J; third block I_r⊗(γI+F), size r·t.
    M3,
    /// Kronecker coupling I_s⊗J; third block I_s⊗(γI+F), size s·t.
    M4,
}

#[derive(Clone, Debug)]
pub enum BlockSpec {
    /// [[A, B, ±I_ℓ⊗J], [C, D, O], [±I_ℓ⊗Jᵀ, O, I_ℓ⊗E]] with ℓ ∈ {1, r}.
    General {
        a: IntMatrix,
        b: IntMatrix,
        c: IntMatrix,
        d: IntMatrix,
        e: IntMatrix,
        ell: usize,
        sign: Sign,
    },
    /// Scalar diagonal blocks αI_r, βI_s and third block built from γ and F.
    ScalarDiag {
        shape: BlockShape,
        alpha: i64,
        beta: i64,
        gamma: i64,
        b: IntMatrix,
        c: IntMatrix,
        f: IntMatrix,
        sign: Sign,
    },
}

struct Dims {
    r: usize,
    s: usize,
    t: usize,
}

impl BlockSpec {
    fn dims(&self) -> Result<Dims> {
        let (b, c, tt) = match self {
            BlockSpec::General { a, b, c, d, e, ell, .. } => {
                let r = b.rows();
                let s = b.cols();
                let t = e.rows();
                if !a.is_square() || a.rows() != r {
                    return Err(Error::DimensionMismatch("A must be r×r".into()));
                }
                if !d.is_square() || d.rows() != s {
                    return Err(Error::DimensionMismatch("D must be s×s".into()));
                }
                if !e.is_square() {
                    return Err(Error::DimensionMismatch("E must be square".into()));
                }
                if *ell != 1 && *ell != r {
                    return Err(Error::DimensionMismatch("ℓ must be 1 or r".into()));
                }
                if *ell == 0 || r % *ell != 0 {
                    return Err(Error::DimensionMismatch("ℓ must divide r".into()));
                }
                (b, c, t)
            }
            BlockSpec::ScalarDiag { b, c, f, .. } => {
                if !f.is_square() {
                    return Err(Error::DimensionMismatch("F must be square".into()));
                }
                (b, c, f.rows())
            }
        };
        let r = b.rows();
        let s = b.cols();
        if c.rows() != s || c.cols() != r {
            return Err(Error::DimensionMismatch(format!(
                "C must be {s}x{r}, got {}x{}",
                c.rows(),
                c.cols()
            )));
        }
        if r == 0 || s == 0 || tt == 0 {
            return Err(Error::DimensionMismatch("r, s, t must all be ≥ 1".into()));
        }
        Ok(Dims { r, s, t: tt })
    }

    /// Builds the explicit integer matrix laid out block by block.
    pub fn assemble(&self) -> Result<IntMatrix> {
        let Dims { r, s, t } = self.dims()?;
        match self {
            BlockSpec::General { a, b, c, d, e, ell, sign } => {
                let ell = *ell;
                let coupling = IntMatrix::identity(ell).kronecker(&IntMatrix::ones(r / ell, t));
                let third = IntMatrix::identity(ell).kronecker(e);
                IntMatrix::from_blocks(&[
                    vec![a.clone(), b.clone(), sign.apply(coupling.clone())],
                    vec![c.clone(), d.clone(), IntMatrix::zeros(s, ell * t)],
                    vec![
                        sign.apply(coupling.transpose()),
                        IntMatrix::zeros(ell * t, s),
                        third,
                    ],
                ])
            }
            BlockSpec::ScalarDiag { shape, alpha, beta, gamma, b, c, f, sign } => {
                let alpha_block = IntMatrix::identity(r).scale(&BigInt::from(*alpha));
                let beta_block = IntMatrix::identity(s).scale(&BigInt::from(*beta));
                let third_core = IntMatrix::identity(t)
                    .scale(&BigInt::from(*gamma))
                    .add(f)
                    .expect("same shape");
                match shape {
                    BlockShape::M1 => IntMatrix::from_blocks(&[
                        vec![alpha_block, b.clone(), sign.apply(IntMatrix::ones(r, t))],
                        vec![c.clone(), beta_block, IntMatrix::zeros(s, t)],
                        vec![
                            sign.apply(IntMatrix::ones(t, r)),
                            IntMatrix::zeros(t, s),
                            third_core,
                        ],
                    ]),
                    BlockShape::M2 => IntMatrix::from_blocks(&[
                        vec![alpha_block, b.clone(), IntMatrix::zeros(r, t)],
                        vec![c.clone(), beta_block, sign.apply(IntMatrix::ones(s, t))],
                        vec![
                            IntMatrix::zeros(t, r),
                            sign.apply(IntMatrix::ones(t, s)),
                            third_core,
                        ],
                    ]),
                    BlockShape::M3 => {
                        let coupling =
                            IntMatrix::identity(r).kronecker(&IntMatrix::ones(1, t));
                        IntMatrix::from_blocks(&[
                            vec![alpha_block, b.clone(), sign.apply(coupling.clone())],
                            vec![c.clone(), beta_block, IntMatrix::zeros(s, r * t)],
                            vec![
                                sign.apply(coupling.transpose()),
                                IntMatrix::zeros(r * t, s),
                                IntMatrix::identity(r).kronecker(&third_core),
                            ],
                        ])
                    }
                    BlockShape::M4 => {
                        let coupling =
                            IntMatrix::identity(s).kronecker(&IntMatrix::ones(1, t));
                        IntMatrix::from_blocks(&[
                            vec![alpha_block, b.clone(), IntMatrix::zeros(r, s * t)],
                            vec![c.clone(), beta_block, sign.apply(coupling.clone())],
                            vec![
                                IntMatrix::zeros(s * t, r),
                                sign.apply(coupling.transpose()),
                                IntMatrix::identity(s).kronecker(&third_core),
                            ],
                        ])
                    }
                }
            }
        }
    }

    /// Characteristic polynomial via the closed form for this shape.
    pub fn charpoly(&self) -> Result<IntPoly> {
        let Dims { r, s, t } = self.dims()?;
        match self {
            BlockSpec::General { a, b, c, d, e, ell, .. } => {
                general_blockcharpoly(a, b, c, d, e, *ell, r, s, t)
            }
            BlockSpec::ScalarDiag { shape, alpha, beta, gamma, b, c, f, .. } => {
                scalar_diag_blockcharpoly(*shape, *alpha, *beta, *gamma, b, c, f, r, s, t)
            }
        }
    }
}

/// Shift λ − k as a polynomial.
fn lambda_minus(k: i64) -> IntPoly {
    IntPoly::from_i64(&[-k, 1])
}

#[allow(clippy::too_many_arguments)]
fn scalar_diag_blockcharpoly(
    shape: BlockShape,
    alpha: i64,
    beta: i64,
    gamma: i64,
    b: &IntMatrix,
    c: &IntMatrix,
    f: &IntMatrix,
    r: usize,
    s: usize,
    _t: usize,
) -> Result<IntPoly> {
    let f_f = charpoly(f)?;
    let chi_f = coronal(f)?;
    let shift_gamma = RatFunc::from_poly(lambda_minus(gamma));
    // f_F(λ−γ) and χ_F(λ−γ)
    let f_f_shifted = compose_poly_ratfunc(&f_f, &shift_gamma)
        .to_poly()
        .expect("polynomial argument");
    let chi_f_shifted = chi_f.compose(&shift_gamma)?;

    // (λ−α)(λ−β) as a polynomial argument
    let quad = lambda_minus(alpha).mul(&lambda_minus(beta));

    let (prefactor_base, prefactor_exp, core, third_pow): (IntPoly, i64, RatFunc, usize) =
        match shape {
            BlockShape::M1 | BlockShape::M3 => {
                let bc = b.mul(c)?;
                let f_bc = charpoly(&bc)?;
                match shape {
                    BlockShape::M1 => {
                        let chi_bc = coronal(&bc)?;
                        let quad_arg = RatFunc::from_poly(quad.clone());
                        let f_bc_at = compose_poly_ratfunc(&f_bc, &quad_arg);
                        let chi_bc_at = chi_bc.compose(&quad_arg)?;
                        let bracket = RatFunc::one().sub(
                            &RatFunc::from_poly(lambda_minus(beta))
                                .mul(&chi_f_shifted)
                                .mul(&chi_bc_at),
                        );
                        (
                            lambda_minus(beta),
                            s as i64 - r as i64,
                            f_bc_at.mul(&bracket),
                            1,
                        )
                    }
                    _ => {
                        // M3: argument (λ−β)(λ−α−χ_F(λ−γ))
                        let arg = RatFunc::from_poly(lambda_minus(beta)).mul(
                            &RatFunc::from_poly(lambda_minus(alpha)).sub(&chi_f_shifted),
                        );
                        (
                            lambda_minus(beta),
                            s as i64 - r as i64,
                            compose_poly_ratfunc(&f_bc, &arg),
                            r,
                        )
                    }
                }
            }
            BlockShape::M2 | BlockShape::M4 => {
                let cb = c.mul(b)?;
                let f_cb = charpoly(&cb)?;
                match shape {
                    BlockShape::M2 => {
                        let chi_cb = coronal(&cb)?;
                        let quad_arg = RatFunc::from_poly(quad.clone());
                        let f_cb_at = compose_poly_ratfunc(&f_cb, &quad_arg);
                        let chi_cb_at = chi_cb.compose(&quad_arg)?;
                        let bracket = RatFunc::one().sub(
                            &RatFunc::from_poly(lambda_minus(alpha))
                                .mul(&chi_f_shifted)
                                .mul(&chi_cb_at),
                        );
                        (
                            lambda_minus(alpha),
                            r as i64 - s as i64,
                            f_cb_at.mul(&bracket),
                            1,
                        )
                    }
                    _ => {
                        // M4: argument (λ−α)(λ−β−χ_F(λ−γ))
                        let arg = RatFunc::from_poly(lambda_minus(alpha)).mul(
                            &RatFunc::from_poly(lambda_minus(beta)).sub(&chi_f_shifted),
                        );
                        (
                            lambda_minus(alpha),
                            r as i64 - s as i64,
                            compose_poly_ratfunc(&f_cb, &arg),
                            s,
                        )
                    }
                }
            }
        };

    let prefactor = RatFunc::from_poly(prefactor_base).powi(prefactor_exp)?;
    let third = RatFunc::from_poly(f_f_shifted).powi(third_pow as i64)?;
    prefactor.mul(&third).mul(&core).to_poly().map_err(|_| {
        Error::InternalInconsistency("block closed form did not reduce to a polynomial".into())
    })
}

#[allow(clippy::too_many_arguments)]
fn general_blockcharpoly(
    a: &IntMatrix,
    b: &IntMatrix,
    c: &IntMatrix,
    d: &IntMatrix,
    e: &IntMatrix,
    ell: usize,
    r: usize,
    s: usize,
    t: usize,
) -> Result<IntPoly> {
    let f_d = charpoly(d)?;
    let f_e = charpoly(e)?;
    let chi_e = coronal(e)?;
    let total = r + s + ell * t;

    // Sample f_M(λ0) = f_D·f_E^ℓ·det(λ0 I_r − A − χ_E(λ0)(I_ℓ⊗J) − B(λ0 I_s − D)⁻¹C)
    // at total+1 integer points clear of the poles, then interpolate.
    let mut xs: Vec<BigInt> = Vec::with_capacity(total + 1);
    let mut ys: Vec<BigRational> = Vec::with_capacity(total + 1);
    let mut candidate = BigInt::from(total as i64 + 1);
    while xs.len() < total + 1 {
        let x = candidate.clone();
        candidate += 1;
        let fd_val = f_d.eval(&x);
        let fe_val = f_e.eval(&x);
        if fd_val.is_zero() || fe_val.is_zero() {
            continue;
        }
        let chi_val = chi_e
            .eval(&BigRational::from(x.clone()))
            .expect("f_E(λ0) ≠ 0 rules out coronal poles");

        // G = λ0 I_r − A − χ_E(λ0)(I_ℓ⊗J_{r/ℓ}) − B(λ0 I_s − D)⁻¹ C over ℚ
        let block = r / ell;
        let mut g: Vec<Vec<BigRational>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let mut v = BigRational::from(-a.get(i, j).clone());
                        if i == j {
                            v += BigRational::from(x.clone());
                        }
                        if i / block == j / block {
                            v -= &chi_val;
                        }
                        v
                    })
                    .collect()
            })
            .collect();

        // solve (λ0 I_s − D)·X = C, then subtract B·X
        let mut lhs: Vec<Vec<BigRational>> = (0..s)
            .map(|i| {
                (0..s)
                    .map(|j| {
                        let mut v = BigRational::from(-d.get(i, j).clone());
                        if i == j {
                            v += BigRational::from(x.clone());
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let mut rhs: Vec<Vec<BigRational>> = (0..s)
            .map(|i| (0..r).map(|j| BigRational::from(c.get(i, j).clone())).collect())
            .collect();
        solve_in_place(&mut lhs, &mut rhs).ok_or_else(|| {
            Error::InternalInconsistency("singular system at a non-root sample point".into())
        })?;
        for i in 0..r {
            for j in 0..r {
                let mut acc = BigRational::zero();
                for k in 0..s {
                    let bv = b.get(i, k);
                    if !bv.is_zero() {
                        acc += BigRational::from(bv.clone()) * &rhs[k][j];
                    }
                }
                g[i][j] -= acc;
            }
        }

        let det_g = det_rational(&mut g);
        let fe_pow = num_traits::pow::pow(BigRational::from(fe_val), ell);
        ys.push(BigRational::from(fd_val) * fe_pow * det_g);
        xs.push(x);
    }

    rational_coeffs_to_poly(&interpolate_rational(&xs, &ys))
}

/// Gaussian elimination over ℚ solving A·X = B in place; `None` if singular.
fn solve_in_place(a: &mut [Vec<BigRational>], b: &mut [Vec<BigRational>]) -> Option<()> {
    let n = a.len();
    for k in 0..n {
        let pivot_row = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, pivot_row);
        b.swap(k, pivot_row);
        let pivot = a[k][k].clone();
        for j in 0..n {
            a[k][j] /= &pivot;
        }
        for j in 0..b[k].len() {
            b[k][j] /= &pivot;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let factor = a[i][k].clone();
            for j in 0..n {
                let v = a[k][j].clone() * &factor;
                a[i][j] -= v;
            }
            for j in 0..b[i].len() {
                let v = b[k][j].clone() * &factor;
                b[i][j] -= v;
            }
        }
    }
    Some(())
}

/// Determinant over ℚ by elimination; consumes the workspace.
fn det_rational(a: &mut [Vec<BigRational>]) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(pivot_row) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if pivot_row != k {
            a.swap(k, pivot_row);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = a[i][k].clone() / &pivot;
            for j in k..n {
                let v = a[k][j].clone() * &factor;
                a[i][j] -= v;
            }
        }
    }
    det
}
