//! Closed-form characteristic polynomials for the subdivision products,
//! dispatched by product kind and matrix kind.
//!
//! Every formula is evaluated entirely in exact rational-function
//! arithmetic from the factors' charpolys and coronals, then reduced to an
//! integer polynomial. The reduction succeeding — every intermediate
//! denominator cancelling — is itself part of the contract: a residue
//! surfaces as `InternalInconsistency` instead of being rounded away.
//!
//! Laplacian and signless-Laplacian forms exist only for an out-regular
//! first factor (out-degree r, so m1 = n1·r); requests outside the
//! published forms are refused. The full dispatch, writing fX/χX for the
//! charpoly/coronal of matrix X of factor i and s(x) for a substituted
//! argument:
//!
//! | product        | matrix | factorization |
//! |----------------|--------|---------------|
//! | vertex join    | A | λ^(m1−n1) · fA1(λ²) · fA2 · \[1 − λ·χA1(λ²)·χA2\] |
//! | vertex join    | L | (−1)^n1 (λ−1)^(n1(r−1)) · fL2(λ−n1) · fL1(r−(λ−r−n2)(λ−1)) · \[1 − (λ−1)n1n2 / ((λ−n1)((λ−n2−r)(λ−1)−r))\] |
//! | vertex join    | Q | (λ−1)^(n1(r−1)) · fQ2(λ−n1) · fQ1(r+(λ−r−n2)(λ−1)) · \[1 − (λ−1)n1·χQ2(λ−n1) / ((λ−r−n2)(λ−1)−r)\] |
//! | arc join       | A | λ^(m1−n1) · fA1(λ²) · fA2 · \[1 − λ(λ²χA1(λ²)−n1)·χA2\] |
//! | arc join       | L | (−1)^n1 (λ−1−n2)^(n1(r−1)) · fL2(λ−n1r) · fL1(r−(λ−r)(λ−1−n2)) · \[1 − r(λ−r)n1n2 / ((λ−n1r)((λ−r)(λ−1−n2)−r))\] |
//! | arc join       | Q | (λ−1−n2)^(n1(r−1)) · fQ2(λ−n1r) · fQ1(r+(λ−r)(λ−1−n2)) · \[1 − n1r(λ−r)·χQ2(λ−n1r) / ((λ−r)(λ−1−n2)−r)\] |
//! | vertex corona  | A | λ^(m1−n1) · fA2^n1 · fA1(λ²−λχA2) |
//! | vertex corona  | L | (−1)^n1 (λ−1)^((r−1)n1) · fL1(−λ²+λ(n2+r+1)) · fL2(λ−1)^n1 |
//! | vertex corona  | Q | (λ−1)^((r−1)n1) · fQ1(r+(λ−1)(λ−r−n2−χQ2(λ−1))) · fQ2(λ−1)^n1 |
//! | arc corona     | A | (λ−χA2)^(m1−n1) · fA2^m1 · fA1(λ²−λχA2) |
//! | arc corona     | L | (−1)^n1 · b^((r−1)n1) · fL1(r−(λ−r)·b) · fL2(λ−1)^(n1r), b = λ−1−n2−n2/(λ−1) |
//! | arc corona     | Q | b^((r−1)n1) · fQ1(r+(λ−r)·b) · fQ2(λ−1)^(n1r), b = λ−1−n2−χQ2(λ−1) |
//!
//! Graph products (adjacency only, via the line graph of the first
//! factor, writing χℒ = χ of A(line graph of G1) at λ²−2):
//!
//! | product        | factorization |
//! |----------------|---------------|
//! | vertex join    | λ^(n1−m1−1) · fℒ1(λ²−2) · fA2 · \[λ − (n1 + 4χℒ)·χA2\] |
//! | edge join      | λ^(n1−m1) · fℒ1(λ²−2) · fA2 · \[1 − λ·χℒ·χA2\] |
//! | vertex corona  | (λ−χA2)^(n1−m1) · fA2^n1 · fℒ1(λ²−λχA2−2) |
//! | edge corona    | λ^(n1−m1) · fA2^m1 · fℒ1(λ²−λχA2−2) |

use crate::digraph::{Digraph, DigraphMatrixKind, Graph};
use crate::error::{Error, Result};
use crate::matrix::{charpoly, coronal};
use crate::poly::IntPoly;
use crate::products::{digraph_product, graph_product, ProductKind};
use crate::ratfunc::{compose_poly_ratfunc, RatFunc};

/// λ + k.
fn lambda_plus(k: i64) -> IntPoly {
    IntPoly::from_i64(&[k, 1])
}

fn lambda_rf() -> RatFunc {
    RatFunc::variable()
}

fn int(k: i64) -> RatFunc {
    RatFunc::from_int(k)
}

fn sign_for(n1: usize, f: IntPoly) -> IntPoly {
    if n1 % 2 == 1 {
        f.neg()
    } else {
        f
    }
}

fn to_poly_checked(f: RatFunc, what: &str) -> Result<IntPoly> {
    f.to_poly().map_err(|_| {
        Error::InternalInconsistency(format!("{what}: denominators did not cancel"))
    })
}

fn require_out_regular(d1: &Digraph) -> Result<usize> {
    match d1.out_regularity() {
        Some(r) if r > 0 => Ok(r),
        _ => Err(Error::NotOutRegular),
    }
}

/// Closed-form charpoly of a digraph product for the A, L or Q matrix.
pub fn closed_form_charpoly_digraph(
    kind: ProductKind,
    matrix: DigraphMatrixKind,
    d1: &Digraph,
    d2: &Digraph,
) -> Result<IntPoly> {
    if d1.m() == 0 {
        return Err(Error::EmptyArcSet);
    }
    match matrix {
        DigraphMatrixKind::Adjacency => adjacency_form(kind, d1, d2),
        DigraphMatrixKind::Laplacian => laplacian_form(kind, d1, d2),
        DigraphMatrixKind::SignlessLaplacian => signless_form(kind, d1, d2),
        _ => Err(Error::UnsupportedMatrixKind),
    }
}

fn adjacency_form(kind: ProductKind, d1: &Digraph, d2: &Digraph) -> Result<IntPoly> {
    let (n1, m1) = (d1.n() as i64, d1.m() as i64);
    let f_a1 = charpoly(&d1.adjacency())?;
    let f_a2 = charpoly(&d2.adjacency())?;
    let chi_a2 = coronal(&d2.adjacency())?;
    let lambda_sq = RatFunc::from_poly(IntPoly::monomial(1, 2));

    let out = match kind {
        ProductKind::SubdivisionVertexJoin | ProductKind::SubdivisionArcJoin => {
            let chi_a1_sq = coronal(&d1.adjacency())?.compose(&lambda_sq)?;
            let bracket = match kind {
                // 1 − λ·χ_{A1}(λ²)·χ_{A2}(λ)
                ProductKind::SubdivisionVertexJoin => RatFunc::one()
                    .sub(&lambda_rf().mul(&chi_a1_sq).mul(&chi_a2)),
                // 1 − λ·(λ²·χ_{A1}(λ²) − n1)·χ_{A2}(λ)
                _ => {
                    let inner = lambda_sq.mul(&chi_a1_sq).sub(&int(n1));
                    RatFunc::one().sub(&lambda_rf().mul(&inner).mul(&chi_a2))
                }
            };
            RatFunc::variable()
                .powi(m1 - n1)?
                .mul(&RatFunc::from_poly(f_a1.compose_square()))
                .mul(&RatFunc::from_poly(f_a2.clone()))
                .mul(&bracket)
        }
        ProductKind::SubdivisionVertexCorona | ProductKind::SubdivisionArcCorona => {
            // f_{A1}(λ² − λ·χ_{A2}(λ))
            let arg = lambda_sq.sub(&lambda_rf().mul(&chi_a2));
            let composed = compose_poly_ratfunc(&f_a1, &arg);
            match kind {
                ProductKind::SubdivisionVertexCorona => RatFunc::variable()
                    .powi(m1 - n1)?
                    .mul(&RatFunc::from_poly(f_a2.clone()).powi(d1.n() as i64)?)
                    .mul(&composed),
                _ => lambda_rf()
                    .sub(&chi_a2)
                    .powi(m1 - n1)?
                    .mul(&RatFunc::from_poly(f_a2.clone()).powi(m1)?)
                    .mul(&composed),
            }
        }
    };
    to_poly_checked(out, "adjacency product form")
}

fn laplacian_form(kind: ProductKind, d1: &Digraph, d2: &Digraph) -> Result<IntPoly> {
    let r = require_out_regular(d1)? as i64;
    let (n1, n2) = (d1.n() as i64, d2.n() as i64);
    let f_l1 = charpoly(&d1.laplacian())?;
    let f_l2 = charpoly(&d2.laplacian())?;

    let out = match kind {
        ProductKind::SubdivisionVertexJoin => {
            // (λ−1)^{n1(r−1)} · f_{L2}(λ−n1) · f_{L1}(r−(λ−r−n2)(λ−1))
            //   · [1 − (λ−1)n1n2 / ((λ−n1)((λ−n2−r)(λ−1)−r))]
            let arg = IntPoly::constant(r)
                .sub(&lambda_plus(-(r + n2)).mul(&lambda_plus(-1)));
            let den = lambda_plus(-n1)
                .mul(&lambda_plus(-(n2 + r)).mul(&lambda_plus(-1)).sub(&IntPoly::constant(r)));
            let bracket = RatFunc::one()
                .sub(&RatFunc::new(lambda_plus(-1).scale(&(n1 * n2).into()), den)?);
            RatFunc::from_poly(lambda_plus(-1))
                .powi(n1 * (r - 1))?
                .mul(&RatFunc::from_poly(f_l2.compose(&lambda_plus(-n1))))
                .mul(&RatFunc::from_poly(f_l1.compose(&arg)))
                .mul(&bracket)
        }
        ProductKind::SubdivisionArcJoin => {
            // (λ−1−n2)^{n1(r−1)} · f_{L2}(λ−n1r) · f_{L1}(r−(λ−r)(λ−1−n2))
            //   · [1 − r(λ−r)n1n2 / ((λ−n1r)((λ−r)(λ−1−n2)−r))]
            let core = lambda_plus(-r).mul(&lambda_plus(-1 - n2));
            let arg = IntPoly::constant(r).sub(&core);
            let den = lambda_plus(-(n1 * r)).mul(&core.sub(&IntPoly::constant(r)));
            let bracket = RatFunc::one()
                .sub(&RatFunc::new(lambda_plus(-r).scale(&(r * n1 * n2).into()), den)?);
            RatFunc::from_poly(lambda_plus(-1 - n2))
                .powi(n1 * (r - 1))?
                .mul(&RatFunc::from_poly(f_l2.compose(&lambda_plus(-(n1 * r)))))
                .mul(&RatFunc::from_poly(f_l1.compose(&arg)))
                .mul(&bracket)
        }
        ProductKind::SubdivisionVertexCorona => {
            // (λ−1)^{(r−1)n1} · f_{L1}(−λ²+λ(n2+r+1)) · [f_{L2}(λ−1)]^{n1}
            let arg = IntPoly::from_coeffs(vec![0.into(), (n2 + r + 1).into(), (-1).into()]);
            RatFunc::from_poly(lambda_plus(-1))
                .powi((r - 1) * n1)?
                .mul(&RatFunc::from_poly(f_l1.compose(&arg)))
                .mul(&RatFunc::from_poly(f_l2.compose(&lambda_plus(-1))).powi(n1)?)
        }
        ProductKind::SubdivisionArcCorona => {
            // base = λ−1−n2−n2/(λ−1);
            // (−1)^{n1}·base^{(r−1)n1} · f_{L1}(r−(λ−r)·base) · [f_{L2}(λ−1)]^{n1r}
            let base = RatFunc::new(
                lambda_plus(-1 - n2).mul(&lambda_plus(-1)).sub(&IntPoly::constant(n2)),
                lambda_plus(-1),
            )?;
            let arg = int(r).sub(&RatFunc::from_poly(lambda_plus(-r)).mul(&base));
            base.powi((r - 1) * n1)?
                .mul(&compose_poly_ratfunc(&f_l1, &arg))
                .mul(&RatFunc::from_poly(f_l2.compose(&lambda_plus(-1))).powi(n1 * r)?)
        }
    };
    let unsigned = to_poly_checked(out, "Laplacian product form")?;
    Ok(sign_for(d1.n(), unsigned))
}

fn signless_form(kind: ProductKind, d1: &Digraph, d2: &Digraph) -> Result<IntPoly> {
    let r = require_out_regular(d1)? as i64;
    let (n1, n2) = (d1.n() as i64, d2.n() as i64);
    let f_q1 = charpoly(&d1.signless_laplacian())?;
    let f_q2 = charpoly(&d2.signless_laplacian())?;
    let chi_q2 = coronal(&d2.signless_laplacian())?;

    let out = match kind {
        ProductKind::SubdivisionVertexJoin => {
            // (λ−1)^{n1(r−1)} · f_{Q2}(λ−n1) · f_{Q1}(r+(λ−r−n2)(λ−1))
            //   · [1 − (λ−1)·n1·χ_{Q2}(λ−n1) / ((λ−r−n2)(λ−1)−r)]
            let core = lambda_plus(-(r + n2)).mul(&lambda_plus(-1));
            let arg = IntPoly::constant(r).add(&core);
            let chi_shift = chi_q2.compose(&RatFunc::from_poly(lambda_plus(-n1)))?;
            let frac = RatFunc::from_poly(lambda_plus(-1).scale(&n1.into()))
                .mul(&chi_shift)
                .div(&RatFunc::from_poly(core.sub(&IntPoly::constant(r))))?;
            RatFunc::from_poly(lambda_plus(-1))
                .powi(n1 * (r - 1))?
                .mul(&RatFunc::from_poly(f_q2.compose(&lambda_plus(-n1))))
                .mul(&RatFunc::from_poly(f_q1.compose(&arg)))
                .mul(&RatFunc::one().sub(&frac))
        }
        ProductKind::SubdivisionArcJoin => {
            // (λ−1−n2)^{n1(r−1)} · f_{Q2}(λ−n1r) · f_{Q1}(r+(λ−r)(λ−1−n2))
            //   · [1 − n1r(λ−r)·χ_{Q2}(λ−n1r) / ((λ−r)(λ−1−n2)−r)]
            let core = lambda_plus(-r).mul(&lambda_plus(-1 - n2));
            let arg = IntPoly::constant(r).add(&core);
            let chi_shift = chi_q2.compose(&RatFunc::from_poly(lambda_plus(-(n1 * r))))?;
            let frac = RatFunc::from_poly(lambda_plus(-r).scale(&(n1 * r).into()))
                .mul(&chi_shift)
                .div(&RatFunc::from_poly(core.sub(&IntPoly::constant(r))))?;
            RatFunc::from_poly(lambda_plus(-1 - n2))
                .powi(n1 * (r - 1))?
                .mul(&RatFunc::from_poly(f_q2.compose(&lambda_plus(-(n1 * r)))))
                .mul(&RatFunc::from_poly(f_q1.compose(&arg)))
                .mul(&RatFunc::one().sub(&frac))
        }
        ProductKind::SubdivisionVertexCorona => {
            // (λ−1)^{(r−1)n1} · f_{Q1}(r+(λ−1)(λ−r−n2−χ_{Q2}(λ−1))) · [f_{Q2}(λ−1)]^{n1}
            let chi_shift = chi_q2.compose(&RatFunc::from_poly(lambda_plus(-1)))?;
            let inner = RatFunc::from_poly(lambda_plus(-(r + n2))).sub(&chi_shift);
            let arg = int(r).add(&RatFunc::from_poly(lambda_plus(-1)).mul(&inner));
            RatFunc::from_poly(lambda_plus(-1))
                .powi((r - 1) * n1)?
                .mul(&compose_poly_ratfunc(&f_q1, &arg))
                .mul(&RatFunc::from_poly(f_q2.compose(&lambda_plus(-1))).powi(n1)?)
        }
        ProductKind::SubdivisionArcCorona => {
            // base = λ−1−n2−χ_{Q2}(λ−1);
            // base^{(r−1)n1} · f_{Q1}(r+(λ−r)·base) · [f_{Q2}(λ−1)]^{n1r}
            let chi_shift = chi_q2.compose(&RatFunc::from_poly(lambda_plus(-1)))?;
            let base = RatFunc::from_poly(lambda_plus(-1 - n2)).sub(&chi_shift);
            let arg = int(r).add(&RatFunc::from_poly(lambda_plus(-r)).mul(&base));
            base.powi((r - 1) * n1)?
                .mul(&compose_poly_ratfunc(&f_q1, &arg))
                .mul(&RatFunc::from_poly(f_q2.compose(&lambda_plus(-1))).powi(n1 * r)?)
        }
    };
    to_poly_checked(out, "signless Laplacian product form")
}

/// Closed-form adjacency charpoly of a graph product. Only the adjacency
/// spectrum has a published general form for graphs.
pub fn closed_form_charpoly_graph(
    kind: ProductKind,
    g1: &Graph,
    g2: &Graph,
) -> Result<IntPoly> {
    if g1.m() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    let (n1, m1) = (g1.n() as i64, g1.m() as i64);
    let line1 = g1.line_graph()?;
    let f_line1 = charpoly(&line1.adjacency())?;
    let chi_line1 = coronal(&line1.adjacency())?;
    let f_a2 = charpoly(&g2.adjacency())?;
    let chi_a2 = coronal(&g2.adjacency())?;
    // λ² − 2
    let sq_minus_two = RatFunc::from_poly(IntPoly::from_i64(&[-2, 0, 1]));

    let out = match kind {
        ProductKind::SubdivisionVertexJoin => {
            // λ^{n1−m1−1}·f_{A(L1)}(λ²−2)·f_{A2}·[λ − (n1 + 4χ_{A(L1)}(λ²−2))·χ_{A2}]
            let chi_line_at = chi_line1.compose(&sq_minus_two)?;
            let bracket = lambda_rf().sub(
                &int(n1)
                    .add(&int(4).mul(&chi_line_at))
                    .mul(&chi_a2),
            );
            RatFunc::variable()
                .powi(n1 - m1 - 1)?
                .mul(&compose_poly_ratfunc(&f_line1, &sq_minus_two))
                .mul(&RatFunc::from_poly(f_a2.clone()))
                .mul(&bracket)
        }
        ProductKind::SubdivisionArcJoin => {
            // λ^{n1−m1}·f_{A(L1)}(λ²−2)·f_{A2}·(1 − λ·χ_{A(L1)}(λ²−2)·χ_{A2})
            let chi_line_at = chi_line1.compose(&sq_minus_two)?;
            let bracket = RatFunc::one().sub(&lambda_rf().mul(&chi_line_at).mul(&chi_a2));
            RatFunc::variable()
                .powi(n1 - m1)?
                .mul(&compose_poly_ratfunc(&f_line1, &sq_minus_two))
                .mul(&RatFunc::from_poly(f_a2.clone()))
                .mul(&bracket)
        }
        ProductKind::SubdivisionVertexCorona | ProductKind::SubdivisionArcCorona => {
            // argument λ² − λ·χ_{A2}(λ) − 2
            let arg = RatFunc::from_poly(IntPoly::from_i64(&[-2, 0, 1]))
                .sub(&lambda_rf().mul(&chi_a2));
            let composed = compose_poly_ratfunc(&f_line1, &arg);
            match kind {
                ProductKind::SubdivisionVertexCorona => lambda_rf()
                    .sub(&chi_a2)
                    .powi(n1 - m1)?
                    .mul(&RatFunc::from_poly(f_a2.clone()).powi(n1)?)
                    .mul(&composed),
                _ => RatFunc::variable()
                    .powi(n1 - m1)?
                    .mul(&RatFunc::from_poly(f_a2.clone()).powi(m1)?)
                    .mul(&composed),
            }
        }
    };
    to_poly_checked(out, "graph product form")
}

/// Shortcut forms for the two joins when both factors are out-regular:
/// the bracket collapses to 1 − w·λ·n1·n2/((λ²−r)(λ−s)) with w = 1 for the
/// vertex join and w = r for the arc join.
pub fn regular_corollary_charpoly(
    kind: ProductKind,
    n1: usize,
    r: usize,
    n2: usize,
    s: usize,
    f_a1: &IntPoly,
    f_a2: &IntPoly,
) -> Result<IntPoly> {
    if r < 1 {
        return Err(Error::InvalidParams("first factor needs out-degree ≥ 1".into()));
    }
    if f_a1.degree() != Some(n1) || f_a2.degree() != Some(n2) {
        return Err(Error::InvalidParams(
            "factor charpoly degrees must match vertex counts".into(),
        ));
    }
    let weight: i64 = match kind {
        ProductKind::SubdivisionVertexJoin => 1,
        ProductKind::SubdivisionArcJoin => r as i64,
        _ => {
            return Err(Error::InvalidParams(
                "regular shortcut exists only for the join products".into(),
            ))
        }
    };
    let (n1, r, n2, s) = (n1 as i64, r as i64, n2 as i64, s as i64);
    let den = IntPoly::from_i64(&[-r, 0, 1]).mul(&lambda_plus(-s));
    let bracket = RatFunc::one().sub(&RatFunc::new(
        IntPoly::monomial(weight * n1 * n2, 1),
        den,
    )?);
    let out = RatFunc::variable()
        .powi(n1 * (r - 1))?
        .mul(&RatFunc::from_poly(f_a1.compose_square()))
        .mul(&RatFunc::from_poly(f_a2.clone()))
        .mul(&bracket);
    to_poly_checked(out, "regular join shortcut")
}

/// Charpoly of the built digraph product, for cross-checking the forms.
pub fn direct_product_charpoly(
    kind: ProductKind,
    matrix: DigraphMatrixKind,
    d1: &Digraph,
    d2: &Digraph,
) -> Result<IntPoly> {
    let product = digraph_product(kind, d1, d2)?;
    charpoly(&product.matrix(matrix)?)
}

/// Adjacency charpoly of the built graph product.
pub fn direct_graph_product_charpoly(
    kind: ProductKind,
    g1: &Graph,
    g2: &Graph,
) -> Result<IntPoly> {
    let product = graph_product(kind, g1, g2)?;
    charpoly(&product.adjacency())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::charpoly_oracle;
    use num_traits::Zero;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    fn p2() -> Digraph {
        Digraph::new(2, [(0, 1)]).unwrap()
    }

    fn c3() -> Digraph {
        Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn k1() -> Digraph {
        Digraph::new(1, []).unwrap()
    }

    fn two_cycle() -> Digraph {
        Digraph::new(2, [(0, 1), (1, 0)]).unwrap()
    }

    #[test]
    fn vertex_join_p2_k1() {
        let kind = ProductKind::SubdivisionVertexJoin;
        let f =
            closed_form_charpoly_digraph(kind, DigraphMatrixKind::Adjacency, &p2(), &k1()).unwrap();
        assert_eq!(f, p(&[-1, 0, -2, 0, 1])); // λ⁴ − 2λ² − 1
        let product = digraph_product(kind, &p2(), &k1()).unwrap();
        assert_eq!(f, charpoly_oracle(&product.adjacency()).unwrap());
    }

    #[test]
    fn arc_join_p2_k1() {
        let kind = ProductKind::SubdivisionArcJoin;
        let f =
            closed_form_charpoly_digraph(kind, DigraphMatrixKind::Adjacency, &p2(), &k1()).unwrap();
        assert_eq!(f, p(&[0, 0, -1, 0, 1])); // λ⁴ − λ²
        let product = digraph_product(kind, &p2(), &k1()).unwrap();
        assert_eq!(f, charpoly_oracle(&product.adjacency()).unwrap());
    }

    #[test]
    fn vertex_corona_p2_k1() {
        let kind = ProductKind::SubdivisionVertexCorona;
        let f =
            closed_form_charpoly_digraph(kind, DigraphMatrixKind::Adjacency, &p2(), &k1()).unwrap();
        assert_eq!(f, p(&[0, 1, 0, -2, 0, 1])); // λ⁵ − 2λ³ + λ
        let product = digraph_product(kind, &p2(), &k1()).unwrap();
        assert_eq!(f, charpoly_oracle(&product.adjacency()).unwrap());
    }

    #[test]
    fn arc_corona_degenerates_for_single_arc() {
        let f_sac = closed_form_charpoly_digraph(
            ProductKind::SubdivisionArcCorona,
            DigraphMatrixKind::Adjacency,
            &p2(),
            &k1(),
        )
        .unwrap();
        let f_saj = closed_form_charpoly_digraph(
            ProductKind::SubdivisionArcJoin,
            DigraphMatrixKind::Adjacency,
            &p2(),
            &k1(),
        )
        .unwrap();
        assert_eq!(f_sac, f_saj);
    }

    #[test]
    fn all_kinds_match_direct_on_small_factors() {
        let factors = [p2(), c3(), two_cycle()];
        for d1 in &factors {
            for d2 in &factors {
                for kind in ProductKind::ALL {
                    let formula = closed_form_charpoly_digraph(
                        kind,
                        DigraphMatrixKind::Adjacency,
                        d1,
                        d2,
                    )
                    .unwrap();
                    let direct =
                        direct_product_charpoly(kind, DigraphMatrixKind::Adjacency, d1, d2)
                            .unwrap();
                    assert_eq!(formula, direct, "{kind:?} {} {}", d1.describe(), d2.describe());
                }
            }
        }
    }

    #[test]
    fn laplacian_and_signless_match_direct_for_regular_d1() {
        let regulars = [c3(), two_cycle()];
        let seconds = [k1(), p2(), two_cycle()];
        for d1 in &regulars {
            for d2 in &seconds {
                for kind in ProductKind::ALL {
                    for matrix in [
                        DigraphMatrixKind::Laplacian,
                        DigraphMatrixKind::SignlessLaplacian,
                    ] {
                        let formula =
                            closed_form_charpoly_digraph(kind, matrix, d1, d2).unwrap();
                        let direct = direct_product_charpoly(kind, matrix, d1, d2).unwrap();
                        assert_eq!(
                            formula,
                            direct,
                            "{kind:?} {matrix:?} {} {}",
                            d1.describe(),
                            d2.describe()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn laplacian_requires_out_regular() {
        let err = closed_form_charpoly_digraph(
            ProductKind::SubdivisionVertexJoin,
            DigraphMatrixKind::Laplacian,
            &p2(),
            &k1(),
        );
        assert!(matches!(err, Err(Error::NotOutRegular)));
    }

    #[test]
    fn unsupported_matrix_kinds_refused() {
        let err = closed_form_charpoly_digraph(
            ProductKind::SubdivisionVertexJoin,
            DigraphMatrixKind::OutDegree,
            &c3(),
            &k1(),
        );
        assert!(matches!(err, Err(Error::UnsupportedMatrixKind)));
    }

    #[test]
    fn regular_shortcut_matches_general_path() {
        // D1 = C3 (r = 1), D2 = K1 (s = 0)
        let f_a1 = charpoly(&c3().adjacency()).unwrap();
        let f_a2 = charpoly(&k1().adjacency()).unwrap();
        for kind in [
            ProductKind::SubdivisionVertexJoin,
            ProductKind::SubdivisionArcJoin,
        ] {
            let shortcut =
                regular_corollary_charpoly(kind, 3, 1, 1, 0, &f_a1, &f_a2).unwrap();
            let general = closed_form_charpoly_digraph(
                kind,
                DigraphMatrixKind::Adjacency,
                &c3(),
                &k1(),
            )
            .unwrap();
            assert_eq!(shortcut, general);
            let direct =
                direct_product_charpoly(kind, DigraphMatrixKind::Adjacency, &c3(), &k1())
                    .unwrap();
            assert_eq!(shortcut, direct);
        }
        // the C3 ∨̇ K1 polynomial, pinned after oracle confirmation
        let svj = regular_corollary_charpoly(
            ProductKind::SubdivisionVertexJoin,
            3,
            1,
            1,
            0,
            &f_a1,
            &f_a2,
        )
        .unwrap();
        assert_eq!(svj, p(&[0, -4, 0, -3, 0, -3, 0, 1])); // λ⁷−3λ⁵−3λ³−4λ
        let product =
            digraph_product(ProductKind::SubdivisionVertexJoin, &c3(), &k1()).unwrap();
        assert_eq!(svj, charpoly_oracle(&product.adjacency()).unwrap());
    }

    #[test]
    fn regular_shortcut_two_cycle_factor() {
        let d1 = two_cycle();
        let f_a1 = charpoly(&d1.adjacency()).unwrap();
        let f_a2 = charpoly(&k1().adjacency()).unwrap();
        let shortcut = regular_corollary_charpoly(
            ProductKind::SubdivisionVertexJoin,
            2,
            1,
            1,
            0,
            &f_a1,
            &f_a2,
        )
        .unwrap();
        let general = closed_form_charpoly_digraph(
            ProductKind::SubdivisionVertexJoin,
            DigraphMatrixKind::Adjacency,
            &d1,
            &k1(),
        )
        .unwrap();
        assert_eq!(shortcut, general);
    }

    #[test]
    fn graph_forms_match_direct() {
        let k2 = Graph::new(2, [(0, 1)]).unwrap();
        let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let triangle = Graph::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        for g1 in [&k2, &p3, &triangle] {
            for g2 in [&k2, &p3, &triangle] {
                for kind in ProductKind::ALL {
                    let formula = closed_form_charpoly_graph(kind, g1, g2).unwrap();
                    let direct = direct_graph_product_charpoly(kind, g1, g2).unwrap();
                    assert_eq!(formula, direct, "{kind:?} {} {}", g1.describe(), g2.describe());
                }
            }
        }
    }

    #[test]
    fn degree_equals_product_order() {
        let d1 = c3();
        let d2 = two_cycle();
        for kind in ProductKind::ALL {
            let f = closed_form_charpoly_digraph(
                kind,
                DigraphMatrixKind::Adjacency,
                &d1,
                &d2,
            )
            .unwrap();
            let product = digraph_product(kind, &d1, &d2).unwrap();
            assert_eq!(f.degree(), Some(product.n()));
        }
    }

    #[test]
    fn laplacian_form_vanishes_at_zero() {
        // Laplacian row sums are zero, so λ = 0 is always a root
        for kind in ProductKind::ALL {
            let f = closed_form_charpoly_digraph(
                kind,
                DigraphMatrixKind::Laplacian,
                &c3(),
                &two_cycle(),
            )
            .unwrap();
            assert!(f.coeff(0).is_zero(), "{kind:?}");
        }
    }
}
