use proptest::prelude::*;
use sco_core::group::{
    act_on_tuple, canonical_tuple, orbit_of_tuple, stabilizer_brute, stabilizer_cyclic_powers, unpack_tuple,
    DEFAULT_CLOSURE_CAP,
};
use sco_core::{CyclePower, CycleSpec, Permutation};

fn family(t: usize) -> Vec<CycleSpec> {
    let mut out = vec![CycleSpec::trivial(t)];
    if t >= 2 {
        out.push(CycleSpec::full_cycle(t, 1));
    }
    if t >= 3 {
        out.push(CycleSpec::full_cycle(t, 2));
    }
    if t >= 4 {
        let tr = |a: u32, b: u32| CyclePower { cycle: vec![a, b], power: 1 };
        out.push(CycleSpec::new(t, vec![tr(0, 1), tr(2, 3)]).unwrap());
    }
    out
}

#[test]
fn cyclic_stabilizer_matches_brute_force() {
    for t in 1..=6 {
        for spec in family(t) {
            let g = spec.group();
            for s in 1..=3usize {
                for code in 0..s.pow(t as u32) {
                    let tuple = unpack_tuple(code, s, t);
                    let (fast, _) = stabilizer_cyclic_powers(&spec, &tuple).unwrap();
                    let fast = fast.group();
                    let brute = stabilizer_brute(&g, &tuple, DEFAULT_CLOSURE_CAP).unwrap();
                    assert_eq!(
                        fast.elements(DEFAULT_CLOSURE_CAP).unwrap(),
                        brute.elements(DEFAULT_CLOSURE_CAP).unwrap(),
                        "{spec} at {tuple:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn minimal_exponents() {
    // (1 2 3 4) on (0,1,0,1) needs its square.
    let (stab, ds) = stabilizer_cyclic_powers(&CycleSpec::full_cycle(4, 1), &[0, 1, 0, 1]).unwrap();
    assert_eq!(ds, vec![2]);
    assert_eq!(stab.to_string(), "<(1 2 3 4)^2>");
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #[test]
    fn tuple_action_is_a_left_action(
        (a, b, tuple) in (1usize..8).prop_flat_map(|n| (perm(n), perm(n), proptest::collection::vec(0u32..4, n)))
    ) {
        let left = act_on_tuple(&a.compose(&b), &tuple).unwrap();
        let right = act_on_tuple(&a, &act_on_tuple(&b, &tuple).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let id = Permutation::identity(tuple.len());
        prop_assert_eq!(act_on_tuple(&id, &tuple).unwrap(), tuple.clone());
        let back = act_on_tuple(&a.inverse(), &act_on_tuple(&a, &tuple).unwrap()).unwrap();
        prop_assert_eq!(back, tuple);
    }

    #[test]
    fn canonical_tuple_is_the_orbit_minimum(
        tuple in (2usize..7).prop_flat_map(|n| proptest::collection::vec(0u32..3, n))
    ) {
        let spec = CycleSpec::full_cycle(tuple.len(), 1);
        let gens = spec.permutations();
        let (least, tau) = canonical_tuple(&gens, &tuple).unwrap();
        let orbit = orbit_of_tuple(&gens, &tuple).unwrap();
        prop_assert_eq!(orbit.iter().next().unwrap(), &least);
        prop_assert_eq!(act_on_tuple(&tau, &tuple).unwrap(), least);
    }
}
