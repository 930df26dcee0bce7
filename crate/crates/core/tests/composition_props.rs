//! Structural properties of the composition builder and the text
//! formats, mostly as proptest invariants.

use proptest::prelude::*;

use ppl_core::{gen, textio, CompositionSpec, Digraph};

fn arb_digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (0..=max_n, any::<u64>()).prop_map(|(n, bits)| {
        let slots = gen::arc_slots(n);
        let arcs = slots
            .into_iter()
            .enumerate()
            .filter(|(j, _)| bits >> (j % 64) & 1 == 1)
            .map(|(_, a)| a);
        Digraph::new(n, arcs).expect("slot arcs are valid")
    })
}

fn arb_spec() -> impl Strategy<Value = CompositionSpec> {
    (1..=3usize)
        .prop_flat_map(|t| {
            (
                arb_digraph(3).prop_map(move |d| {
                    // Reuse the random digraph's arcs on exactly t vertices.
                    let arcs: Vec<_> = d
                        .arcs()
                        .iter()
                        .copied()
                        .filter(|&(u, v)| u < t && v < t)
                        .collect();
                    Digraph::new(t, arcs).unwrap()
                }),
                proptest::collection::vec(arb_digraph(3).prop_filter("nonempty", |d| d.n() > 0), t),
            )
        })
        .prop_map(|(outer, parts)| CompositionSpec::new(outer, parts).unwrap())
}

proptest! {
    #[test]
    fn order_and_arc_count_formulas(spec in arb_spec()) {
        let (q, labels) = spec.build().unwrap();
        let total: usize = spec.parts.iter().map(|p| p.n()).sum();
        prop_assert_eq!(q.n(), total);
        prop_assert_eq!(labels.len(), total);
        let inner: usize = spec.parts.iter().map(|p| p.arc_count()).sum();
        let cross: usize = spec
            .outer
            .arcs()
            .iter()
            .map(|&(i, p)| spec.parts[i].n() * spec.parts[p].n())
            .sum();
        prop_assert_eq!(q.arc_count(), inner + cross);
    }

    #[test]
    fn singleton_parts_reproduce_the_outer(outer in arb_digraph(4).prop_filter("t >= 1", |d| d.n() > 0)) {
        let parts = vec![Digraph::empty(1); outer.n()];
        let spec = CompositionSpec::new(outer.clone(), parts).unwrap();
        let (q, labels) = spec.build().unwrap();
        prop_assert_eq!(q, outer);
        prop_assert!(labels.iter().enumerate().all(|(i, l)| l.flat == i && l.part == i));
    }

    #[test]
    fn acyclic_outer_keeps_cycles_inside_parts(spec in arb_spec()) {
        // Rebuild with a forced-acyclic outer: keep only forward arcs.
        let t = spec.outer.n();
        let forward: Vec<_> = spec.outer.arcs().iter().copied().filter(|&(u, v)| u < v).collect();
        let outer = Digraph::new(t, forward).unwrap();
        let spec = CompositionSpec::new(outer, spec.parts).unwrap();
        let (q, _) = spec.build().unwrap();
        // Cross arcs alone are acyclic ...
        let (stripped_q, _) = spec.stripped().build().unwrap();
        prop_assert!(stripped_q.is_acyclic());
        // ... so Q is acyclic iff every part is.
        prop_assert_eq!(q.is_acyclic(), spec.parts.iter().all(|p| p.is_acyclic()));
    }

    #[test]
    fn digraph_text_round_trip(d in arb_digraph(6)) {
        let text = textio::serialize_digraph(&d);
        let back = textio::parse_digraph(&text).unwrap();
        prop_assert_eq!(back, d.clone());
        // Canonical form is a fixed point.
        prop_assert_eq!(textio::serialize_digraph(&d), text);
    }

    #[test]
    fn composition_json_round_trip(spec in arb_spec()) {
        let js = textio::serialize_composition(&spec);
        let back = textio::parse_composition(&js).unwrap();
        prop_assert_eq!(back, spec);
    }
}

#[test]
fn enumeration_cursor_is_stable() {
    // Instance k of the exhaustive stream must only depend on k.
    let budget = ppl_core::Budget::default();
    let from_iter: Vec<Digraph> = gen::all_digraphs(3, &budget).unwrap().collect();
    for (k, d) in from_iter.iter().enumerate() {
        assert_eq!(&gen::digraph_at(3, k as u128), d);
    }
    let mut resumed = gen::all_digraphs(3, &budget).unwrap();
    resumed.seek(40);
    assert_eq!(resumed.next().unwrap(), from_iter[40]);
}
