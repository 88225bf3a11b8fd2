//! The built products must reproduce their block matrix layouts exactly:
//! the A, L and Q matrices of each product are assembled independently
//! from incidence blocks, J blocks and Kronecker blocks and compared
//! entry for entry, alongside the closed-form vertex/arc counts.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use subspectra::harness::{er_digraph, Prob};
use subspectra::products::{digraph_product, graph_product, ProductKind};
use subspectra::{Digraph, Graph, IntMatrix};

fn draw_pair(rng: &mut ChaCha12Rng) -> (Digraph, Digraph) {
    loop {
        let n1 = rng.gen_range(1..=5);
        let n2 = rng.gen_range(1..=4);
        let p = Prob::new(rng.gen_range(1..=9), 10).unwrap();
        let d1 = er_digraph(n1, p, rng);
        if d1.m() == 0 {
            continue;
        }
        let d2 = er_digraph(n2, Prob::new(rng.gen_range(0..=10), 10).unwrap(), rng);
        return (d1, d2);
    }
}

fn scaled_identity(n: usize, k: i64) -> IntMatrix {
    IntMatrix::identity(n).scale(&BigInt::from(k))
}

/// Expected block forms of A, L, Q for each product kind assembled from
/// the factors alone.
fn expected_blocks(kind: ProductKind, d1: &Digraph, d2: &Digraph) -> [IntMatrix; 3] {
    let (n1, m1, n2) = (d1.n(), d1.m(), d2.n());
    let b_out = d1.out_incidence().unwrap();
    let b_in_t = d1.in_incidence().unwrap().transpose();
    let a2 = d2.adjacency();
    let l2 = d2.laplacian();
    let q2 = d2.signless_laplacian();
    let dout1 = d1.out_degree_matrix();

    let blocks = |upper_right: IntMatrix,
                  middle_right: IntMatrix,
                  corner: IntMatrix,
                  top_extra: IntMatrix,
                  mid_extra: IntMatrix,
                  sign: i64|
     -> IntMatrix {
        // generic three-block-row assembly for A (sign +1) and L (−1)/Q (+1)
        let up = upper_right.scale(&BigInt::from(sign));
        let mid = middle_right.scale(&BigInt::from(sign));
        IntMatrix::from_blocks(&[
            vec![top_extra, b_out.scale(&BigInt::from(sign)), up.clone()],
            vec![
                b_in_t.scale(&BigInt::from(sign)),
                mid_extra,
                mid.clone(),
            ],
            vec![up.transpose(), mid.transpose(), corner],
        ])
        .unwrap()
    };

    match kind {
        ProductKind::SubdivisionVertexJoin => {
            let j = IntMatrix::ones(n1, n2);
            let o = IntMatrix::zeros(m1, n2);
            [
                blocks(
                    j.clone(),
                    o.clone(),
                    a2.clone(),
                    IntMatrix::zeros(n1, n1),
                    IntMatrix::zeros(m1, m1),
                    1,
                ),
                blocks(
                    j.clone(),
                    o.clone(),
                    scaled_identity(n2, n1 as i64).add(&l2).unwrap(),
                    dout1.add(&scaled_identity(n1, n2 as i64)).unwrap(),
                    IntMatrix::identity(m1),
                    -1,
                ),
                blocks(
                    j,
                    o,
                    scaled_identity(n2, n1 as i64).add(&q2).unwrap(),
                    dout1.add(&scaled_identity(n1, n2 as i64)).unwrap(),
                    IntMatrix::identity(m1),
                    1,
                ),
            ]
        }
        ProductKind::SubdivisionArcJoin => {
            let o = IntMatrix::zeros(n1, n2);
            let j = IntMatrix::ones(m1, n2);
            [
                blocks(
                    o.clone(),
                    j.clone(),
                    a2.clone(),
                    IntMatrix::zeros(n1, n1),
                    IntMatrix::zeros(m1, m1),
                    1,
                ),
                blocks(
                    o.clone(),
                    j.clone(),
                    scaled_identity(n2, m1 as i64).add(&l2).unwrap(),
                    dout1.clone(),
                    scaled_identity(m1, 1 + n2 as i64),
                    -1,
                ),
                blocks(
                    o,
                    j,
                    scaled_identity(n2, m1 as i64).add(&q2).unwrap(),
                    dout1,
                    scaled_identity(m1, 1 + n2 as i64),
                    1,
                ),
            ]
        }
        ProductKind::SubdivisionVertexCorona => {
            let coupling = IntMatrix::identity(n1).kronecker(&IntMatrix::ones(1, n2));
            let o = IntMatrix::zeros(m1, n1 * n2);
            let eye = IntMatrix::identity(n1);
            [
                blocks(
                    coupling.clone(),
                    o.clone(),
                    eye.kronecker(&a2),
                    IntMatrix::zeros(n1, n1),
                    IntMatrix::zeros(m1, m1),
                    1,
                ),
                blocks(
                    coupling.clone(),
                    o.clone(),
                    eye.kronecker(&l2.add(&IntMatrix::identity(n2)).unwrap()),
                    dout1.add(&scaled_identity(n1, n2 as i64)).unwrap(),
                    IntMatrix::identity(m1),
                    -1,
                ),
                blocks(
                    coupling,
                    o,
                    eye.kronecker(&q2.add(&IntMatrix::identity(n2)).unwrap()),
                    dout1.add(&scaled_identity(n1, n2 as i64)).unwrap(),
                    IntMatrix::identity(m1),
                    1,
                ),
            ]
        }
        ProductKind::SubdivisionArcCorona => {
            let coupling = IntMatrix::identity(m1).kronecker(&IntMatrix::ones(1, n2));
            let o = IntMatrix::zeros(n1, m1 * n2);
            let eye = IntMatrix::identity(m1);
            [
                blocks(
                    o.clone(),
                    coupling.clone(),
                    eye.kronecker(&a2),
                    IntMatrix::zeros(n1, n1),
                    IntMatrix::zeros(m1, m1),
                    1,
                ),
                blocks(
                    o.clone(),
                    coupling.clone(),
                    eye.kronecker(&l2.add(&IntMatrix::identity(n2)).unwrap()),
                    dout1.clone(),
                    scaled_identity(m1, 1 + n2 as i64),
                    -1,
                ),
                blocks(
                    o,
                    coupling,
                    eye.kronecker(&q2.add(&IntMatrix::identity(n2)).unwrap()),
                    dout1,
                    scaled_identity(m1, 1 + n2 as i64),
                    1,
                ),
            ]
        }
    }
}

#[test]
fn product_matrices_match_block_forms() {
    let mut rng = ChaCha12Rng::seed_from_u64(2024);
    for trial in 0..300 {
        let (d1, d2) = draw_pair(&mut rng);
        for kind in ProductKind::ALL {
            let product = digraph_product(kind, &d1, &d2).unwrap();
            let [expect_a, expect_l, expect_q] = expected_blocks(kind, &d1, &d2);
            assert_eq!(
                product.adjacency(),
                expect_a,
                "A blocks, trial {trial}, {kind:?}, {} | {}",
                d1.describe(),
                d2.describe()
            );
            assert_eq!(
                product.laplacian(),
                expect_l,
                "L blocks, trial {trial}, {kind:?}"
            );
            assert_eq!(
                product.signless_laplacian(),
                expect_q,
                "Q blocks, trial {trial}, {kind:?}"
            );
        }
    }
}

#[test]
fn product_counts_match_closed_forms() {
    let mut rng = ChaCha12Rng::seed_from_u64(77);
    for _ in 0..300 {
        let (d1, d2) = draw_pair(&mut rng);
        let (n1, m1, n2, m2) = (d1.n(), d1.m(), d2.n(), d2.m());
        let expect = [
            (
                ProductKind::SubdivisionVertexJoin,
                n1 + m1 + n2,
                2 * m1 + m2 + 2 * n1 * n2,
            ),
            (
                ProductKind::SubdivisionArcJoin,
                n1 + m1 + n2,
                2 * m1 + m2 + 2 * m1 * n2,
            ),
            (
                ProductKind::SubdivisionVertexCorona,
                n1 + m1 + n1 * n2,
                2 * m1 + n1 * m2 + 2 * n1 * n2,
            ),
            (
                ProductKind::SubdivisionArcCorona,
                n1 + m1 + m1 * n2,
                2 * m1 + m1 * m2 + 2 * m1 * n2,
            ),
        ];
        for (kind, want_n, want_m) in expect {
            let product = digraph_product(kind, &d1, &d2).unwrap();
            assert_eq!(product.n(), want_n, "{kind:?}");
            assert_eq!(product.m(), want_m, "{kind:?}");
        }
    }
}

#[test]
fn graph_product_adjacency_is_symmetric() {
    let g1 = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
    let g2 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
    for kind in ProductKind::ALL {
        let product = graph_product(kind, &g1, &g2).unwrap();
        let a = product.adjacency();
        assert_eq!(a.transpose(), a, "{kind:?}");
    }
}
