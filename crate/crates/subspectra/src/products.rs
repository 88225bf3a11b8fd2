//! The four subdivision products of digraphs and their graph analogues.
//!
//! Vertex order in every product follows the block layout used by the
//! spectral formulas: original vertices of the first factor, then its
//! subdivision vertices, then the second factor (or its copies, one
//! contiguous range per owner, owners in canonical order).

use crate::digraph::{Digraph, Graph};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ProductKind {
    /// S(D1) plus D2, 2-cycles between V(D1) and every vertex of D2.
    SubdivisionVertexJoin,
    /// S(D1) plus D2, 2-cycles between I(D1) and every vertex of D2.
    SubdivisionArcJoin,
    /// S(D1) plus one copy of D2 per vertex of D1, 2-cycled to its owner.
    SubdivisionVertexCorona,
    /// S(D1) plus one copy of D2 per subdivision vertex, 2-cycled to it.
    SubdivisionArcCorona,
}

impl ProductKind {
    pub const ALL: [ProductKind; 4] = [
        ProductKind::SubdivisionVertexJoin,
        ProductKind::SubdivisionArcJoin,
        ProductKind::SubdivisionVertexCorona,
        ProductKind::SubdivisionArcCorona,
    ];

    /// Short name used by the CLI: svj, saj, svc, sac.
    pub fn short_name(self) -> &'static str {
        match self {
            ProductKind::SubdivisionVertexJoin => "svj",
            ProductKind::SubdivisionArcJoin => "saj",
            ProductKind::SubdivisionVertexCorona => "svc",
            ProductKind::SubdivisionArcCorona => "sac",
        }
    }

    pub fn from_short_name(s: &str) -> Result<Self> {
        Ok(match s {
            "svj" => ProductKind::SubdivisionVertexJoin,
            "saj" => ProductKind::SubdivisionArcJoin,
            "svc" => ProductKind::SubdivisionVertexCorona,
            "sac" => ProductKind::SubdivisionArcCorona,
            _ => return Err(Error::InvalidParams(format!("unknown product kind `{s}`"))),
        })
    }
}

fn check_factors(m1: usize, n2: usize) -> Result<()> {
    if m1 == 0 {
        return Err(Error::EmptyArcSet);
    }
    if n2 == 0 {
        return Err(Error::InvalidParams("second factor must be nonempty".into()));
    }
    Ok(())
}

/// Builds a subdivision product of two digraphs.
pub fn digraph_product(kind: ProductKind, d1: &Digraph, d2: &Digraph) -> Result<Digraph> {
    check_factors(d1.m(), d2.n())?;
    let n1 = d1.n();
    let m1 = d1.m();
    let n2 = d2.n();
    let mut arcs: Vec<(usize, usize)> = Vec::new();

    // S(D1): vertices 0..n1 are V(D1), n1..n1+m1 are I(D1)
    for (j, &(u, v)) in d1.arcs().iter().enumerate() {
        arcs.push((u, n1 + j));
        arcs.push((n1 + j, v));
    }

    let total = match kind {
        ProductKind::SubdivisionVertexJoin | ProductKind::SubdivisionArcJoin => {
            let base = n1 + m1;
            for &(u, v) in d2.arcs() {
                arcs.push((base + u, base + v));
            }
            let owners: Vec<usize> = match kind {
                ProductKind::SubdivisionVertexJoin => (0..n1).collect(),
                _ => (n1..n1 + m1).collect(),
            };
            for owner in owners {
                for w in 0..n2 {
                    arcs.push((owner, base + w));
                    arcs.push((base + w, owner));
                }
            }
            base + n2
        }
        ProductKind::SubdivisionVertexCorona | ProductKind::SubdivisionArcCorona => {
            let copies = match kind {
                ProductKind::SubdivisionVertexCorona => n1,
                _ => m1,
            };
            let owner_of = |copy: usize| match kind {
                ProductKind::SubdivisionVertexCorona => copy,
                _ => n1 + copy,
            };
            let base = n1 + m1;
            for copy in 0..copies {
                let copy_base = base + copy * n2;
                for &(u, v) in d2.arcs() {
                    arcs.push((copy_base + u, copy_base + v));
                }
                let owner = owner_of(copy);
                for w in 0..n2 {
                    arcs.push((owner, copy_base + w));
                    arcs.push((copy_base + w, owner));
                }
            }
            base + copies * n2
        }
    };
    Digraph::new(total, arcs)
}

/// Builds a subdivision product of two graphs; join/corona links are
/// single edges instead of 2-cycles.
pub fn graph_product(kind: ProductKind, g1: &Graph, g2: &Graph) -> Result<Graph> {
    check_factors(g1.m(), g2.n())?;
    let n1 = g1.n();
    let m1 = g1.m();
    let n2 = g2.n();
    let mut edges: Vec<(usize, usize)> = Vec::new();

    for (j, &(u, v)) in g1.edges().iter().enumerate() {
        edges.push((u, n1 + j));
        edges.push((n1 + j, v));
    }

    let total = match kind {
        ProductKind::SubdivisionVertexJoin | ProductKind::SubdivisionArcJoin => {
            let base = n1 + m1;
            for &(u, v) in g2.edges() {
                edges.push((base + u, base + v));
            }
            let owners: Vec<usize> = match kind {
                ProductKind::SubdivisionVertexJoin => (0..n1).collect(),
                _ => (n1..n1 + m1).collect(),
            };
            for owner in owners {
                for w in 0..n2 {
                    edges.push((owner, base + w));
                }
            }
            base + n2
        }
        ProductKind::SubdivisionVertexCorona | ProductKind::SubdivisionArcCorona => {
            let copies = match kind {
                ProductKind::SubdivisionVertexCorona => n1,
                _ => m1,
            };
            let owner_of = |copy: usize| match kind {
                ProductKind::SubdivisionVertexCorona => copy,
                _ => n1 + copy,
            };
            let base = n1 + m1;
            for copy in 0..copies {
                let copy_base = base + copy * n2;
                for &(u, v) in g2.edges() {
                    edges.push((copy_base + u, copy_base + v));
                }
                let owner = owner_of(copy);
                for w in 0..n2 {
                    edges.push((owner, copy_base + w));
                }
            }
            base + copies * n2
        }
    };
    Graph::new(total, edges)
}

/// Strong connectivity of a digraph product, as predicted by the
/// connectivity propositions (no product is built):
/// vertex join — always; arc join — iff δ⁺(D1) ≥ 1 and δ⁻(D1) ≥ 1;
/// coronas — iff D1 is strongly connected.
pub fn product_strongly_connected(
    kind: ProductKind,
    d1: &Digraph,
    d2: &Digraph,
) -> Result<bool> {
    check_factors(d1.m(), d2.n())?;
    Ok(match kind {
        ProductKind::SubdivisionVertexJoin => true,
        ProductKind::SubdivisionArcJoin => d1.min_out_degree() >= 1 && d1.min_in_degree() >= 1,
        ProductKind::SubdivisionVertexCorona | ProductKind::SubdivisionArcCorona => {
            d1.is_strongly_connected()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> Digraph {
        Digraph::new(2, [(0, 1)]).unwrap()
    }

    fn c3() -> Digraph {
        Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn k1() -> Digraph {
        Digraph::new(1, []).unwrap()
    }

    #[test]
    fn vertex_join_p2_k1() {
        // vertices: u0, u1, i (subdivision), w (second factor)
        let d = digraph_product(ProductKind::SubdivisionVertexJoin, &p2(), &k1()).unwrap();
        assert_eq!(d.n(), 4);
        assert_eq!(d.m(), 6);
        let expect = Digraph::new(
            4,
            [(0, 2), (2, 1), (0, 3), (3, 0), (1, 3), (3, 1)],
        )
        .unwrap();
        assert_eq!(d, expect);
    }

    #[test]
    fn arc_join_p2_k1() {
        let d = digraph_product(ProductKind::SubdivisionArcJoin, &p2(), &k1()).unwrap();
        assert_eq!(d.n(), 4);
        assert_eq!(d.m(), 4);
        let expect = Digraph::new(4, [(0, 2), (2, 1), (2, 3), (3, 2)]).unwrap();
        assert_eq!(d, expect);
    }

    #[test]
    fn arc_corona_degenerates_to_arc_join_for_single_arc() {
        let a = digraph_product(ProductKind::SubdivisionArcCorona, &p2(), &k1()).unwrap();
        let b = digraph_product(ProductKind::SubdivisionArcJoin, &p2(), &k1()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn arc_counts_match_closed_forms() {
        let d1 = c3();
        let d2 = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
        let (n1, m1, n2, m2) = (d1.n(), d1.m(), d2.n(), d2.m());
        let cases = [
            (ProductKind::SubdivisionVertexJoin, 2 * m1 + m2 + 2 * n1 * n2),
            (ProductKind::SubdivisionArcJoin, 2 * m1 + m2 + 2 * m1 * n2),
            (
                ProductKind::SubdivisionVertexCorona,
                2 * m1 + n1 * m2 + 2 * n1 * n2,
            ),
            (
                ProductKind::SubdivisionArcCorona,
                2 * m1 + m1 * m2 + 2 * m1 * n2,
            ),
        ];
        for (kind, want) in cases {
            assert_eq!(digraph_product(kind, &d1, &d2).unwrap().m(), want);
        }
    }

    #[test]
    fn empty_first_factor_rejected() {
        let empty = Digraph::new(3, []).unwrap();
        for kind in ProductKind::ALL {
            assert!(matches!(
                digraph_product(kind, &empty, &k1()),
                Err(Error::EmptyArcSet)
            ));
        }
    }

    #[test]
    fn connectivity_predictions() {
        assert!(
            product_strongly_connected(ProductKind::SubdivisionVertexJoin, &p2(), &k1()).unwrap()
        );
        // δ⁺(P2) = 0
        assert!(
            !product_strongly_connected(ProductKind::SubdivisionArcJoin, &p2(), &k1()).unwrap()
        );
        assert!(product_strongly_connected(
            ProductKind::SubdivisionVertexCorona,
            &c3(),
            &p2()
        )
        .unwrap());
        assert!(!product_strongly_connected(
            ProductKind::SubdivisionArcCorona,
            &p2(),
            &c3()
        )
        .unwrap());
    }

    #[test]
    fn connectivity_predictions_match_built_products() {
        let factors = [p2(), c3(), Digraph::new(2, [(0, 1), (1, 0)]).unwrap()];
        for d1 in &factors {
            for d2 in &factors {
                for kind in ProductKind::ALL {
                    let predicted = product_strongly_connected(kind, d1, d2).unwrap();
                    let built = digraph_product(kind, d1, d2).unwrap();
                    assert_eq!(predicted, built.is_strongly_connected());
                }
            }
        }
    }

    #[test]
    fn graph_products_build() {
        let k2 = Graph::new(2, [(0, 1)]).unwrap();
        let (n1, m1) = (k2.n(), k2.m());
        let (n2, m2) = (k2.n(), k2.m());
        let g = graph_product(ProductKind::SubdivisionVertexJoin, &k2, &k2).unwrap();
        // S(K2) = path on 3, plus K2, plus single join edges (not 2-cycles)
        assert_eq!(g.n(), n1 + m1 + n2);
        assert_eq!(g.m(), 2 * m1 + m2 + n1 * n2);
        let corona = graph_product(ProductKind::SubdivisionVertexCorona, &k2, &k2).unwrap();
        assert_eq!(corona.n(), n1 + m1 + n1 * n2);
        assert_eq!(corona.m(), 2 * m1 + n1 * m2 + n1 * n2);
    }
}
