use modelkit::{model_equivalent, Model, ObjectId};
use modelkit_testkit::{oracle, random_graph1, shuffled_renaming, GraphShape};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Up to 6 objects: one graph, at most 3 nodes and 2 edges.
fn tiny(rng: &mut ChaCha8Rng) -> Model {
    random_graph1(rng, GraphShape::small().sized(3, 2).with_dangling(0.2))
}

/// Randomly perturbs one slot so that the pair is sometimes inequivalent.
fn perturb(rng: &mut ChaCha8Rng, m: &Model) -> Model {
    let mut out = m.clone();
    let ids: Vec<ObjectId> = m.objects().map(|o| o.id().clone()).collect();
    let pick = ids[rng.random_range(0..ids.len())].clone();
    match m.object(pick.as_str()).unwrap().class_name() {
        "Node" => {
            out.set_attr(pick.as_str(), "name", "changed").unwrap();
        }
        "Edge" => {
            let target = ids[rng.random_range(0..ids.len())].clone();
            out.set_refs(pick.as_str(), "trg", [target]).unwrap();
        }
        _ => {
            let mut nodes: Vec<ObjectId> = m.object(pick.as_str()).unwrap().refs("nodes").to_vec();
            nodes.reverse();
            out.set_refs(pick.as_str(), "nodes", nodes).unwrap();
        }
    }
    out
}

#[test]
fn triangle_rotation_agrees_with_enumeration() {
    let make = |ids: [&str; 3], names: [&str; 3]| {
        let mut m = Model::new("graph1");
        for (id, name) in ids.iter().zip(names) {
            m.create_object(*id, "Node").unwrap();
            m.set_attr(id, "name", name).unwrap();
            m.add_root(id).unwrap();
        }
        for k in 0..3 {
            let e = format!("{}{}", ids[k], ids[(k + 1) % 3]);
            m.create_object(e.as_str(), "Edge").unwrap();
            m.set_refs(&e, "src", [ids[k]]).unwrap();
            m.set_refs(&e, "trg", [ids[(k + 1) % 3]]).unwrap();
            m.add_root(&e).unwrap();
        }
        m
    };
    let a = make(["a", "b", "c"], ["p", "q", "r"]);
    let b = make(["x", "y", "z"], ["q", "r", "p"]);
    let c = make(["x", "y", "z"], ["r", "q", "p"]);
    assert_eq!(model_equivalent(&a, &b), oracle::equivalent_by_enumeration(&a, &b));
    assert!(model_equivalent(&a, &b));
    assert_eq!(model_equivalent(&a, &c), oracle::equivalent_by_enumeration(&a, &c));
    assert!(!model_equivalent(&a, &c));
}

proptest! {
    #[test]
    fn agrees_with_exhaustive_enumeration(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = tiny(&mut rng);
        prop_assume!(a.len() <= 6);
        let b = if rng.random_bool(0.5) { perturb(&mut rng, &a) } else { a.clone() };
        let b = b.renamed(shuffled_renaming(&mut rng, &b));
        prop_assert_eq!(model_equivalent(&a, &b), oracle::equivalent_by_enumeration(&a, &b));
    }

    #[test]
    fn reflexive_and_symmetric(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_graph1(&mut rng, GraphShape::small().with_dangling(0.1));
        prop_assert!(model_equivalent(&a, &a));
        let b = a.renamed(shuffled_renaming(&mut rng, &a));
        prop_assert!(model_equivalent(&a, &b));
        prop_assert!(model_equivalent(&b, &a));
        let c = perturb(&mut rng, &a);
        prop_assert_eq!(model_equivalent(&a, &c), model_equivalent(&c, &a));
    }
}
