//! Coronal calculus and the charpoly relations tying a (di)graph to its
//! line (di)graph and subdivision. Each operation computes a closed form
//! and, where cheap, re-derives it from the explicit matrices so that
//! callers get a checked identity rather than a bare formula.

use num_bigint::BigInt;

use crate::digraph::{Digraph, Graph};
use crate::error::{Error, Result};
use crate::matrix::{charpoly, coronal};
use crate::poly::IntPoly;
use crate::ratfunc::{compose_poly_ratfunc, RatFunc};

/// Coronal and charpoly of M' = aM + bJ + cI from those of M.
///
/// Substituting (λ−c)/a would leave ℤ[λ]; the aᵈᵉᵍ clearing is folded into
/// the rational-function composition, and the aⁿ⁻¹ prefactor restores an
/// integer polynomial at the end.
pub fn coronal_affine(
    chi: &RatFunc,
    f: &IntPoly,
    n: usize,
    a: i64,
    b: i64,
    c: i64,
) -> Result<(RatFunc, IntPoly)> {
    if a == 0 {
        return Err(Error::ZeroScale);
    }
    // φ = (λ − c)/a
    let phi = RatFunc::new(IntPoly::from_i64(&[-c, 1]), IntPoly::constant(a))?;
    let chi_at = chi.compose(&phi)?;
    let denom = RatFunc::from_int(a).sub(&RatFunc::from_int(b).mul(&chi_at));
    let chi_new = chi_at.div(&denom)?;
    let f_at = compose_poly_ratfunc(f, &phi);
    let scale = RatFunc::from_int(BigInt::from(a)).powi(n as i64 - 1)?;
    let f_new = scale.mul(&f_at).mul(&denom).to_poly().map_err(|_| {
        Error::InternalInconsistency("affine charpoly transform did not clear".into())
    })?;
    Ok((chi_new, f_new))
}

/// Coronal of any n×n matrix with constant row sums t: n/(λ−t).
pub fn coronal_rowsum(n: usize, t: i64) -> RatFunc {
    RatFunc::new(IntPoly::constant(n as i64), IntPoly::from_i64(&[-t, 1]))
        .expect("denominator is monic")
}

/// Coronal of BC from the coronal of CB, for B with constant column sums
/// t1 and C with constant row sums t2: χ_BC = n/λ + (t1·t2/λ)·χ_CB.
pub fn coronal_bc_relation(n: usize, t1: i64, t2: i64, chi_cb: &RatFunc) -> RatFunc {
    let lambda = IntPoly::variable();
    let first = RatFunc::new(IntPoly::constant(n as i64), lambda.clone()).expect("λ ≠ 0");
    let weight = RatFunc::new(IntPoly::constant(t1 * t2), lambda).expect("λ ≠ 0");
    first.add(&weight.mul(chi_cb))
}

/// Both sides of λⁿ·f_{A(L(D))} = λᵐ·f_{A(D)}, computed independently.
pub fn line_digraph_charpoly_relation(d: &Digraph) -> Result<(IntPoly, IntPoly)> {
    let line = d.line_digraph()?;
    let lhs = charpoly(&line.adjacency())?.shift_up(d.n());
    let rhs = charpoly(&d.adjacency())?.shift_up(d.m());
    Ok((lhs, rhs))
}

/// f of the subdivision digraph: λ^(m−n)·f_{A(D)}(λ²). The Laurent factor
/// always clears against the λ-power of the composed polynomial.
pub fn subdivision_charpoly(d: &Digraph) -> Result<IntPoly> {
    if d.m() == 0 {
        return Err(Error::EmptyArcSet);
    }
    let f = charpoly(&d.adjacency())?;
    laurent_scaled(f.compose_square(), d.m() as i64 - d.n() as i64)
}

/// Which identity route to evaluate for a subdivision graph.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GraphSubdivisionRoute {
    /// λ^(m−n)·f_Q(λ²)
    SignlessLaplacian,
    /// λ^(n−m)·f_{A(L(G))}(λ²−2)
    LineGraph,
}

pub fn subdivision_charpoly_graph(g: &Graph, route: GraphSubdivisionRoute) -> Result<IntPoly> {
    if g.m() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    let (n, m) = (g.n() as i64, g.m() as i64);
    match route {
        GraphSubdivisionRoute::SignlessLaplacian => {
            let f = charpoly(&g.signless_laplacian())?;
            laurent_scaled(f.compose_square(), m - n)
        }
        GraphSubdivisionRoute::LineGraph => {
            let f = charpoly(&g.line_graph()?.adjacency())?;
            laurent_scaled(f.compose(&IntPoly::from_i64(&[-2, 0, 1])), n - m)
        }
    }
}

/// p·λ^k for possibly negative k; errors if λ^(−k) does not divide p.
fn laurent_scaled(p: IntPoly, k: i64) -> Result<IntPoly> {
    let scaled = RatFunc::from_poly(p).mul(&RatFunc::variable().powi(k)?);
    scaled
        .to_poly()
        .map_err(|_| Error::InternalInconsistency("Laurent factor did not clear".into()))
}

/// Coronals and charpolys of A, L, Q and A(L(D)) for an r-out-regular
/// digraph with r > 0, with every cross relation re-checked.
#[derive(Clone, Debug)]
pub struct RegularIdentities {
    pub chi_a: RatFunc,
    pub chi_l: RatFunc,
    pub chi_q: RatFunc,
    pub chi_line: RatFunc,
    pub f_a: IntPoly,
    pub f_l: IntPoly,
    pub f_q: IntPoly,
    pub f_line: IntPoly,
}

pub fn regular_identities(d: &Digraph, r: usize) -> Result<RegularIdentities> {
    if r == 0 || !d.is_out_regular(r) {
        return Err(Error::NotOutRegular);
    }
    let n = d.n();
    let line = d.line_digraph()?;
    let out = RegularIdentities {
        chi_a: coronal(&d.adjacency())?,
        chi_l: coronal(&d.laplacian())?,
        chi_q: coronal(&d.signless_laplacian())?,
        chi_line: coronal(&line.adjacency())?,
        f_a: charpoly(&d.adjacency())?,
        f_l: charpoly(&d.laplacian())?,
        f_q: charpoly(&d.signless_laplacian())?,
        f_line: charpoly(&line.adjacency())?,
    };

    let fail = |what: &str| Error::InternalInconsistency(format!("regular identity failed: {what}"));
    let shift = |k: i64| RatFunc::from_poly(IntPoly::from_i64(&[k, 1]));

    // coronal chain: χ_A = χ_L(λ−r) = χ_Q(λ+r) = (1/r)·χ_{A(L)} = n/(λ−r)
    let expect = coronal_rowsum(n, r as i64);
    if out.chi_a != expect {
        return Err(fail("A-coronal"));
    }
    if out.chi_l.compose(&shift(-(r as i64)))? != expect {
        return Err(fail("L-coronal shift"));
    }
    if out.chi_q.compose(&shift(r as i64))? != expect {
        return Err(fail("Q-coronal shift"));
    }
    let r_rf = RatFunc::from_int(r as i64);
    if out.chi_line.div(&r_rf)? != expect {
        return Err(fail("line-digraph coronal"));
    }

    // charpoly chain: f_A = (−1)ⁿ·f_L(r−λ) = f_Q(λ+r) = λ^{n(1−r)}·f_{A(L)}
    let mut f_l_mirrored = out.f_l.compose(&IntPoly::from_i64(&[r as i64, -1]));
    if n % 2 == 1 {
        f_l_mirrored = f_l_mirrored.neg();
    }
    if f_l_mirrored != out.f_a {
        return Err(fail("L-charpoly mirror"));
    }
    if out.f_q.compose(&IntPoly::from_i64(&[r as i64, 1])) != out.f_a {
        return Err(fail("Q-charpoly shift"));
    }
    let exponent = n as i64 * (1 - r as i64);
    if laurent_scaled(out.f_line.clone(), exponent)? != out.f_a {
        return Err(fail("line-digraph charpoly"));
    }

    Ok(out)
}
