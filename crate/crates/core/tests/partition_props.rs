//! Property tests for the partition layer.

use proptest::prelude::*;

use ppl_core::partition::{verify_partition_via, SolverRoute};
use ppl_core::{
    bny_partition_bruteforce, check_bny, gen, lambda_profile, ppc_partition_bruteforce,
    verify_partition, Budget, Digraph, Partition,
};

fn arb_digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, bits)| {
        let slots = gen::arc_slots(n);
        let arcs = slots
            .into_iter()
            .enumerate()
            .filter(|(j, _)| bits >> (j % 64) & 1 == 1)
            .map(|(_, a)| a);
        Digraph::new(n, arcs).expect("slot arcs are valid")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Sweeps always find a witness on small instances, the witness
    /// verifies through both solver routes, and the strong witness is
    /// also a weak one.
    #[test]
    fn sweep_witnesses_verify_on_both_routes(d in arb_digraph(6)) {
        let budget = Budget::default();
        let lambda = lambda_profile(&d, &budget).unwrap().lambda();
        for q in 1..lambda {
            let p = bny_partition_bruteforce(&d, q, &budget).unwrap();
            let primary = verify_partition(&d, &p, &budget).unwrap();
            let reference =
                verify_partition_via(&d, &p, SolverRoute::SubsetDp, &budget).unwrap();
            prop_assert_eq!(&primary, &reference);
            prop_assert!(primary.bny_holds());
            prop_assert!(primary.ppc_holds());

            // The weak sweep never lands later than the strong one.
            let weak = ppc_partition_bruteforce(&d, q, &budget).unwrap();
            let weak_mask: u64 = weak.side_a.iter().map(|&v| 1u64 << v).sum();
            let strong_mask: u64 = p.side_a.iter().map(|&v| 1u64 << v).sum();
            prop_assert!(weak_mask <= strong_mask);
        }
    }

    /// Moving any single vertex across a verifying partition leaves a
    /// pair that still partitions V and yields a definite verdict (the
    /// verifier never errors on well-formed input).
    #[test]
    fn verifier_total_on_well_formed_partitions(d in arb_digraph(6), flip in any::<u8>()) {
        let budget = Budget::default();
        let cert = check_bny(&d, &budget).unwrap();
        for p in cert.witnesses.values() {
            let mut a = p.side_a.clone();
            let mut b = p.side_b.clone();
            let v = usize::from(flip) % d.n();
            if let Some(pos) = a.iter().position(|&x| x == v) {
                b.push(a.remove(pos));
            } else {
                let pos = b.iter().position(|&x| x == v).unwrap();
                a.push(b.remove(pos));
            }
            let moved = Partition::new(a, b, p.q);
            let verdict = verify_partition(&d, &moved, &budget).unwrap();
            let reference =
                verify_partition_via(&d, &moved, SolverRoute::SubsetDp, &budget).unwrap();
            prop_assert_eq!(verdict, reference);
        }
    }

    /// Certificates are complete on every generated instance (a
    /// shrunken counterexample here would be a finding in itself).
    #[test]
    fn small_instances_always_certify(d in arb_digraph(7)) {
        let cert = check_bny(&d, &Budget::default()).unwrap();
        prop_assert!(cert.is_complete());
        prop_assert_eq!(cert.witnesses.len(), cert.q_max());
    }
}
