use std::collections::BTreeSet;

use modelkit::queries::{self, GraphView};
use modelkit::transforms::*;
use modelkit::{model_equivalent, registry, serialize_model, validate, Model, ObjectId, TaskId, TaskOutput};
use modelkit_testkit::{oracle, random_graph1, GraphShape};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph(seed: u64) -> Model {
    random_graph1(&mut ChaCha8Rng::seed_from_u64(seed), GraphShape::small().sized(10, 16))
}

fn conforms(m: &Model) -> bool {
    let v = validate(m, registry().get(m.metamodel_name()).unwrap()).unwrap();
    v.is_empty()
}

fn counts(m: &Model) -> [usize; 4] {
    let g = GraphView::from_model(m);
    [
        queries::count_nodes(&g),
        g.edges.len(),
        queries::count_looping_edges(&g),
        queries::count_isolated_nodes(&g),
    ]
}

fn node_names(m: &Model, attr: &str) -> BTreeSet<(ObjectId, String)> {
    m.objects_of_class("Node")
        .map(|n| (n.id().clone(), n.attr(attr).unwrap_or_default().to_owned()))
        .collect()
}

proptest! {
    #[test]
    fn every_task_output_conforms(seed in any::<u64>()) {
        let m = graph(seed);
        prop_assert!(conforms(&m));
        for task in TaskId::ALL.into_iter().filter(|t| t.input() == modelkit::InputKind::Graph1) {
            if let TaskOutput::Model(out) = task.run(Some(&m)).unwrap() {
                prop_assert!(conforms(&out), "{} produced a nonconforming model", task);
            }
        }
    }

    #[test]
    fn reverse_is_an_involution(seed in any::<u64>()) {
        let m = graph(seed);
        let once = task_reverse_edges(&m).unwrap();
        prop_assert_eq!(counts(&once), counts(&m));
        prop_assert!(model_equivalent(&task_reverse_edges(&once).unwrap(), &m));
        let flipped: BTreeSet<_> = oracle::edge_pairs(&m).into_iter().map(|(s, t)| (t, s)).collect();
        prop_assert_eq!(oracle::edge_pairs(&once), flipped);
    }

    #[test]
    fn migrations_preserve_structure(seed in any::<u64>()) {
        let m = graph(seed);
        let g2 = task_migrate_to_graph2(&m).unwrap();
        prop_assert_eq!(&counts(&g2)[..2], &counts(&m)[..2]);
        prop_assert_eq!(node_names(&g2, "text"), node_names(&m, "name"));
        prop_assert!(g2.objects_of_class("Edge").all(|e| e.attr("text") == Some("")));
        prop_assert_eq!(oracle::edge_pairs(&g2), oracle::edge_pairs(&m));

        let g3 = task_migrate_to_graph3(&m).unwrap();
        prop_assert_eq!(g3.objects_of_class("Edge").count(), 0);
        prop_assert_eq!(node_names(&g3, "text"), node_names(&m, "name"));
        prop_assert_eq!(oracle::link_pairs(&g3), oracle::edge_pairs(&m));
    }

    #[test]
    fn deletion_laws(seed in any::<u64>()) {
        let m = graph(seed);
        let has_n1 = m.objects_of_class("Node").any(|n| n.attr("name") == Some("n1"));
        let nodes = counts(&m)[0];
        let plain = task_delete_n1(&m);
        let incident = task_delete_n1_incident(&m);
        if has_n1 {
            prop_assert_eq!(counts(&plain)[0], nodes - 1);
            prop_assert_eq!(counts(&incident)[0], nodes - 1);
            prop_assert_eq!(plain.objects_of_class("Edge").count(), m.objects_of_class("Edge").count());
        } else {
            prop_assert!(model_equivalent(&plain, &m));
            prop_assert!(model_equivalent(&incident, &m));
        }
        prop_assert_eq!(queries::count_dangling_edges(&GraphView::from_model(&incident)), 0);
    }

    #[test]
    fn transitive_matches_matrix_oracle(seed in any::<u64>()) {
        let m = graph(seed);
        let out = task_insert_transitive(&m).unwrap();
        prop_assert_eq!(oracle::edge_pairs(&out), oracle::relation_with_square(&m));
        let added = out.len() - m.len();
        prop_assert_eq!(added, oracle::new_pair_count(&m));
        for obj in m.objects().filter(|o| o.class_name() != "Graph") {
            prop_assert_eq!(Some(obj), out.object(obj.id().as_str()));
        }
    }

    #[test]
    fn transforms_do_not_touch_their_input(seed in any::<u64>()) {
        let m = graph(seed);
        let before = serialize_model(&m);
        for task in TaskId::ALL.into_iter().filter(|t| t.input() == modelkit::InputKind::Graph1) {
            task.run(Some(&m)).unwrap();
        }
        prop_assert_eq!(serialize_model(&m), before);
    }
}

#[test]
fn transitive_output_is_reproducible() {
    let m = graph(42);
    let a = serialize_model(&task_insert_transitive(&m).unwrap());
    let b = serialize_model(&task_insert_transitive(&m).unwrap());
    assert_eq!(a, b);
}
