//! Mid-size campaign runs through the library API (the acceptance
//! suite holds the full-size versions).

use ppl_core::{Budget, PropertyKind};
use ppl_harness::job::{SearchJob, StreamSpec, TaskSpec};
use ppl_harness::runner::{run, RunConfig};

#[test]
fn thousand_random_tournaments_on_seven_vertices() {
    let job = SearchJob {
        stream: StreamSpec::RandomTournaments { n: 7 },
        task: TaskSpec::Property {
            property: PropertyKind::Bny,
        },
        seed: 7,
    };
    let cfg = RunConfig {
        count: Some(1000),
        ..RunConfig::default()
    };
    let summary = run(&job, &cfg, &Budget::default()).unwrap();
    assert_eq!(summary.processed, 1000);
    assert_eq!(summary.counterexamples, 0);
    assert_eq!(summary.pass, 1000);
}

#[test]
fn mixed_composition_search_stays_clean() {
    for family in [
        ppl_core::gen::OuterKind::Acyclic,
        ppl_core::gen::OuterKind::Semicomplete,
    ] {
        let job = SearchJob {
            stream: StreamSpec::RandomCompositions {
                profile: ppl_core::gen::CompositionProfile {
                    outer: family,
                    max_outer: 4,
                    max_part: 3,
                    max_total: 9,
                    arc_prob: 0.45,
                    arcless_parts: false,
                },
            },
            task: TaskSpec::Property {
                property: PropertyKind::Bny,
            },
            seed: 99,
        };
        let cfg = RunConfig {
            count: Some(150),
            ..RunConfig::default()
        };
        let summary = run(&job, &cfg, &Budget::default()).unwrap();
        assert_eq!(summary.pass, 150, "{family:?}: {summary:?}");
        assert_eq!(summary.case_exhaustions, 0);
        assert_eq!(summary.defects, 0);
    }
}

#[test]
fn weak_property_search_also_passes() {
    let job = SearchJob {
        stream: StreamSpec::RandomDigraphs {
            max_n: 7,
            arc_prob: None,
        },
        task: TaskSpec::Property {
            property: PropertyKind::Ppc,
        },
        seed: 3,
    };
    let cfg = RunConfig {
        count: Some(300),
        ..RunConfig::default()
    };
    let summary = run(&job, &cfg, &Budget::default()).unwrap();
    assert_eq!(summary.pass, 300);
    assert_eq!(summary.counterexamples, 0);
}
