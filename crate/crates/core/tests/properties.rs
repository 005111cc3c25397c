//! Algebraic and topological invariants on random codes and complexes.

use convexcodes::code::{Codeword, NeuralCode, Permutation, SimplicialComplex};
use convexcodes::formats::{parse_code, serialize_code};
use convexcodes::topology::{contractibility, link, reduced_homology};
use proptest::prelude::*;

fn code_strategy(max_n: usize) -> impl Strategy<Value = NeuralCode> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0u64..(1 << n), 0..12).prop_map(move |bits| {
            NeuralCode::new(n, bits.into_iter().map(Codeword::from_bits)).unwrap()
        })
    })
}

fn complex_strategy(max_n: usize) -> impl Strategy<Value = SimplicialComplex> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(1u64..(1 << n), 1..8).prop_map(move |bits| {
            SimplicialComplex::from_faces(n, bits.into_iter().map(Codeword::from_bits)).unwrap()
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::new(images).unwrap())
}

fn code_with_two_perms() -> impl Strategy<Value = (NeuralCode, Permutation, Permutation)> {
    code_strategy(7).prop_flat_map(|c| {
        let n = c.neurons();
        (Just(c), permutation(n), permutation(n))
    })
}

/// Reindexes `rho ⊆ tau` into the labels `1..|tau|` used after restricting to `tau`.
fn relabel(rho: Codeword, tau: Codeword) -> Codeword {
    let kept = tau.to_vec();
    Codeword::from_neurons(
        rho.iter()
            .map(|i| kept.iter().position(|&k| k == i).unwrap() + 1),
    )
    .unwrap()
}

proptest! {
    #[test]
    fn restriction_composes((c, tau_bits, rho_bits) in code_strategy(7)
        .prop_flat_map(|c| { let n = c.neurons(); (Just(c), 0u64..(1 << n), 0u64..(1 << n)) }))
    {
        let tau = Codeword::from_bits(tau_bits);
        let rho = Codeword::from_bits(rho_bits).intersection(tau);
        let twice = c.restrict(tau).unwrap().restrict(relabel(rho, tau)).unwrap();
        prop_assert_eq!(twice, c.restrict(rho).unwrap());
    }

    #[test]
    fn restriction_map_is_increasing((c, tau_bits) in code_strategy(7)
        .prop_flat_map(|c| { let n = c.neurons(); (Just(c), 0u64..(1 << n)) }))
    {
        let tau = Codeword::from_bits(tau_bits);
        let r = c.restrict_with_map(tau).unwrap();
        prop_assert_eq!(r.index_map.clone(), tau.to_vec());
        prop_assert_eq!(r.code.neurons(), tau.len());
        for w in c.words() {
            prop_assert!(r.code.contains(relabel(w.intersection(tau), tau)));
        }
    }

    #[test]
    fn permutation_is_a_group_action((c, p, q) in code_with_two_perms()) {
        let n = c.neurons();
        prop_assert_eq!(c.permute(&Permutation::identity(n)).unwrap(), c.clone());
        let stepwise = c.permute(&p).unwrap().permute(&q).unwrap();
        prop_assert_eq!(stepwise, c.permute(&q.after(&p).unwrap()).unwrap());
        prop_assert_eq!(c.permute(&p).unwrap().len(), c.len());
    }

    #[test]
    fn adding_a_face_keeps_the_complex((c, pick) in code_strategy(7).prop_flat_map(|c| (Just(c), any::<prop::sample::Index>()))) {
        let faces: Vec<Codeword> = c.simplicial_complex().faces().into_iter().collect();
        prop_assume!(!faces.is_empty());
        let sigma = pick.get(&faces);
        let added = c.add_codeword(*sigma).unwrap();
        prop_assert!(added.complex_preserved);
        prop_assert_eq!(added.code.simplicial_complex(), c.simplicial_complex());
    }

    #[test]
    fn link_matches_definition((cpx, pick) in complex_strategy(6).prop_flat_map(|k| (Just(k), any::<prop::sample::Index>()))) {
        let faces: Vec<Codeword> = cpx.faces().into_iter().collect();
        let sigma = *pick.get(&faces);
        let lk = link(&cpx, sigma).unwrap();
        for tau in Codeword::full(cpx.universe_size()).subsets() {
            let expected = tau.intersection(sigma).is_empty() && cpx.contains(tau.union(sigma));
            prop_assert_eq!(lk.contains(tau), expected, "tau = {}", tau);
        }
    }

    #[test]
    fn cones_are_contractible_and_acyclic(cpx in complex_strategy(6)) {
        let apex = cpx.universe_size() + 1;
        let cone = SimplicialComplex::from_faces(apex, cpx.facets().iter().map(|f| f.with(apex))).unwrap();
        prop_assert!(contractibility(&cone).is_contractible());
        prop_assert!(reduced_homology(&cone).is_zero());
    }

    #[test]
    fn euler_characteristic_matches_betti(cpx in complex_strategy(7)) {
        prop_assert_eq!(reduced_homology(&cpx).alternating_sum(), cpx.euler_characteristic() - 1);
    }

    #[test]
    fn contractibility_verdicts_are_consistent(cpx in complex_strategy(7)) {
        let status = contractibility(&cpx);
        prop_assert!(status.certificate_holds(&cpx));
        if status.is_contractible() {
            prop_assert!(reduced_homology(&cpx).is_zero());
        }
        if !reduced_homology(&cpx).is_zero() {
            prop_assert!(status.is_non_contractible());
        }
    }

    #[test]
    fn code_files_round_trip(c in code_strategy(12)) {
        let text = serialize_code(&c);
        let back = parse_code(&text).unwrap();
        prop_assert_eq!(serialize_code(&back), text);
        prop_assert_eq!(back, c);
    }
}
