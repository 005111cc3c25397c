//! Cross-checks against independent brute-force oracles.

use convexcodes::code::{Codeword, NeuralCode, SimplicialComplex};
use convexcodes::generators::gen_cn;
use convexcodes::geometry::{
    int, is_feasible, ratio, Arrangement, LinearConstraint, Polyhedron, Rational, Topology,
};
use convexcodes::{code_of_arrangement, reduced_homology, BettiVector};
use proptest::prelude::*;

const P: u64 = 1_000_000_007;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][c], P - 2);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c] * inv % P;
                for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x = (*x + P - f * p % P) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced Betti numbers from the full boundary matrices, with the
/// augmentation map as the boundary of vertices.
fn betti_oracle(cpx: &SimplicialComplex) -> Vec<usize> {
    let faces: Vec<Codeword> = cpx.faces().into_iter().collect();
    let top = faces.iter().map(|f| f.len()).max().unwrap_or(0);
    let by_size: Vec<Vec<Codeword>> = (0..=top)
        .map(|k| faces.iter().copied().filter(|f| f.len() == k).collect())
        .collect();
    // ranks[k]: rank of the boundary from size-k faces to size-(k-1) faces
    let mut ranks = vec![0; top + 2];
    for k in 1..=top {
        let lower = &by_size[k - 1];
        let rows: Vec<Vec<u64>> = by_size[k]
            .iter()
            .map(|f| {
                let mut row = vec![0; lower.len()];
                for (pos, v) in f.iter().enumerate() {
                    let g = f.without(v);
                    let col = lower.iter().position(|&x| x == g).unwrap();
                    row[col] = if pos % 2 == 0 { 1 } else { P - 1 };
                }
                row
            })
            .collect();
        ranks[k] = rank_mod_p(rows);
    }
    (1..=top)
        .map(|k| by_size[k].len() - ranks[k] - ranks[k + 1])
        .collect()
}

fn words(ws: &[&str]) -> Vec<Codeword> {
    ws.iter()
        .map(|w| Codeword::from_digits(w).unwrap())
        .collect()
}

#[test]
fn hollow_triangle_oracle() {
    let cpx = SimplicialComplex::from_faces(3, words(&["12", "13", "23"])).unwrap();
    assert_eq!(betti_oracle(&cpx), vec![0, 1]);
    assert_eq!(reduced_homology(&cpx), BettiVector(vec![0, 1]));
}

#[test]
fn two_neuron_family_has_a_loop() {
    let cpx = gen_cn(2).unwrap().simplicial_complex();
    // a tetrahedron with two triangles hanging off opposite edges, meeting at 3
    let expected = vec![0, 1, 0, 0];
    assert_eq!(betti_oracle(&cpx), expected);
    assert_eq!(reduced_homology(&cpx).0, expected);
}

#[test]
fn family_complexes_match_oracle() {
    for n in 2..=4 {
        let cpx = gen_cn(n).unwrap().simplicial_complex();
        assert_eq!(reduced_homology(&cpx).0, betti_oracle(&cpx), "n = {n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn homology_matches_oracle(bits in (2usize..=7).prop_flat_map(|n| (Just(n), prop::collection::vec(1u64..(1 << n), 1..9)))) {
        let (n, facets) = bits;
        let cpx = SimplicialComplex::from_faces(n, facets.into_iter().map(Codeword::from_bits)).unwrap();
        prop_assert_eq!(reduced_homology(&cpx).0, betti_oracle(&cpx));
    }
}

/// Whether the closed system has a solution, by checking every pairwise
/// intersection of boundary lines. The system must be bounded.
fn vertex_oracle(cs: &[LinearConstraint]) -> bool {
    for (i, a) in cs.iter().enumerate() {
        for b in &cs[i + 1..] {
            let det = &a.coeffs[0] * &b.coeffs[1] - &a.coeffs[1] * &b.coeffs[0];
            if det == int(0) {
                continue;
            }
            let x = (&a.bound * &b.coeffs[1] - &b.bound * &a.coeffs[1]) / &det;
            let y = (&a.coeffs[0] * &b.bound - &b.coeffs[0] * &a.bound) / &det;
            if cs.iter().all(|c| c.is_satisfied(&[x.clone(), y.clone()])) {
                return true;
            }
        }
    }
    false
}

fn bounded(rows: &[(i64, i64, i64)]) -> Vec<LinearConstraint> {
    let mut cs: Vec<LinearConstraint> = rows
        .iter()
        .map(|&(a, b, c)| LinearConstraint::le(vec![int(a), int(b)], int(c)))
        .collect();
    for (a, b) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
        cs.push(LinearConstraint::le(vec![int(a), int(b)], int(20)));
    }
    cs
}

proptest! {
    #[test]
    fn closed_planar_feasibility_matches_vertices(rows in prop::collection::vec((-4i64..=4, -4i64..=4, -6i64..=6), 1..6)) {
        let cs = bounded(&rows);
        let fm = is_feasible(&cs, 2).unwrap();
        prop_assert_eq!(fm.is_some(), vertex_oracle(&cs));
        if let Some(w) = fm {
            prop_assert!(cs.iter().all(|c| c.is_satisfied(&w)));
        }
    }

    #[test]
    fn strict_rows_shrink_feasibility(rows in prop::collection::vec((-4i64..=4, -4i64..=4, -6i64..=6), 1..6)) {
        let weak = bounded(&rows);
        let strict: Vec<LinearConstraint> = weak.iter().map(LinearConstraint::interior).collect();
        if let Some(w) = is_feasible(&strict, 2).unwrap() {
            prop_assert!(strict.iter().all(|c| c.is_satisfied(&w)));
            prop_assert!(is_feasible(&weak, 2).unwrap().is_some());
        }
    }
}

type Box2 = (i64, i64, i64, i64);

fn boxes_strategy() -> impl Strategy<Value = Vec<Box2>> {
    prop::collection::vec(
        (-4i64..=4, 0i64..=4, -4i64..=4, 0i64..=4).prop_map(|(x, w, y, h)| (x, x + w, y, y + h)),
        1..=4,
    )
}

fn box_arrangement(boxes: &[Box2], topology: Topology) -> Arrangement {
    let sets = boxes
        .iter()
        .map(|&(x0, x1, y0, y1)| {
            Polyhedron::boxed(&[int(x0), int(y0)], &[int(x1), int(y1)]).unwrap()
        })
        .collect();
    Arrangement::new(2, topology, sets).unwrap()
}

/// Axis-parallel boxes with integer corners have constant membership on the
/// cells cut out by integer grid lines; every cell holds a half-integer point.
fn grid_oracle(arr: &Arrangement) -> NeuralCode {
    let mut seen = Vec::new();
    for i in -12..=12 {
        for j in -12..=12 {
            seen.push(arr.membership(&[ratio(i, 2), ratio(j, 2)]).unwrap());
        }
    }
    NeuralCode::new(arr.len(), seen).unwrap()
}

fn shuffled_with_redundancy(arr: &Arrangement, seed: u64) -> Arrangement {
    let sets = arr
        .sets()
        .iter()
        .enumerate()
        .map(|(k, set)| {
            let mut cs: Vec<LinearConstraint> = set.constraints().to_vec();
            // doubled, loosened copies of every row, plus the sum of the first two
            let extra: Vec<LinearConstraint> = cs
                .iter()
                .map(|c| {
                    let coeffs = c.coeffs.iter().map(|a| a * int(2)).collect();
                    LinearConstraint::new(
                        coeffs,
                        c.relation,
                        &c.bound * int(2) + int((seed % 3) as i64),
                    )
                })
                .collect();
            let sum = LinearConstraint::le(
                cs[0]
                    .coeffs
                    .iter()
                    .zip(&cs[1].coeffs)
                    .map(|(a, b)| a + b)
                    .collect(),
                &cs[0].bound + &cs[1].bound,
            );
            cs.extend(extra);
            cs.push(sum);
            let len = cs.len();
            cs.rotate_left((seed as usize + k) % len);
            cs.reverse();
            Polyhedron::new(2, cs).unwrap()
        })
        .collect();
    Arrangement::new(2, arr.topology(), sets).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn box_codes_match_grid(boxes in boxes_strategy(), open in any::<bool>()) {
        let t = if open { Topology::Open } else { Topology::Closed };
        let arr = box_arrangement(&boxes, t);
        prop_assert_eq!(code_of_arrangement(&arr).unwrap(), grid_oracle(&arr));
    }

    #[test]
    fn code_ignores_row_order_and_redundancy(boxes in boxes_strategy(), open in any::<bool>(), seed in any::<u64>()) {
        let t = if open { Topology::Open } else { Topology::Closed };
        let arr = box_arrangement(&boxes, t);
        let noisy = shuffled_with_redundancy(&arr, seed);
        prop_assert_eq!(code_of_arrangement(&noisy).unwrap(), code_of_arrangement(&arr).unwrap());
    }

    #[test]
    fn restriction_commutes_with_extraction(boxes in boxes_strategy(), keep in any::<u64>()) {
        let arr = box_arrangement(&boxes, Topology::Closed);
        let tau = Codeword::from_bits(keep).intersection(Codeword::full(arr.len()));
        let code = code_of_arrangement(&arr).unwrap();
        prop_assert_eq!(
            code_of_arrangement(&arr.restrict(tau).unwrap()).unwrap(),
            code.restrict(tau).unwrap()
        );
    }
}

#[test]
fn rational_bounds_are_exact() {
    // [0, 1/3] and [1/3, 1] touch at exactly one point when closed
    let seg = |lo: Rational, hi: Rational| Polyhedron::boxed(&[lo], &[hi]).unwrap();
    let closed = Arrangement::new(
        1,
        Topology::Closed,
        vec![seg(int(0), ratio(1, 3)), seg(ratio(1, 3), int(1))],
    )
    .unwrap();
    assert!(code_of_arrangement(&closed)
        .unwrap()
        .contains(Codeword::from_digits("12").unwrap()));
    let open = Arrangement::new(1, Topology::Open, closed.sets().to_vec()).unwrap();
    assert!(!code_of_arrangement(&open)
        .unwrap()
        .contains(Codeword::from_digits("12").unwrap()));
}
