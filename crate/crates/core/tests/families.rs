use czf_core::family::{
    cactus_czf, cactus_solve, clique_construction_value, clique_solve, dismantlable_value, pendent_dismantle,
    tree_solve, unicyclic_solve, CactusInstance,
};
use czf_core::gen::{
    random_cactus, random_clique_construction, random_dismantlable, random_subset, random_tree, random_unicyclic,
};
use czf_core::oracle::{alpha_exact, cfms_preoccupied_exact, czf_exact};
use czf_core::search::cfms_run_preoccupied;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn tree_solver_matches_oracle_and_independence_number() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..120 {
        let n = rng.gen_range(2..=12);
        let t = random_tree(n, &mut rng);
        let r = tree_solve(&t).unwrap();
        assert_eq!(r.value, czf_exact(&t).unwrap().value, "{}", t.to_edge_list());
        assert_eq!(r.value, alpha_exact(&t).unwrap().value);
        r.replay(&t).unwrap();
    }
}

#[test]
fn unicyclic_solver_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..120 {
        let n = rng.gen_range(3..=12);
        let g = random_unicyclic(n, &mut rng);
        let r = unicyclic_solve(&g).unwrap();
        assert_eq!(r.value, czf_exact(&g).unwrap().value, "{}", g.to_edge_list());
        r.replay(&g).unwrap();
    }
}

#[test]
fn dismantling_value_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..120 {
        let k = rng.gen_range(1..=5);
        let iso = rng.gen_range(0..=2);
        let g = random_dismantlable(k, iso, 0.4, &mut rng);
        let o = pendent_dismantle(&g).unwrap();
        assert_eq!(
            dismantlable_value(&g, &o).unwrap(),
            czf_exact(&g).unwrap().value,
            "{}",
            g.to_edge_list()
        );
    }
}

#[test]
fn clique_construction_value_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..120 {
        let (g, c) = random_clique_construction(12, &mut rng);
        let v = clique_construction_value(&g, &c).unwrap();
        assert_eq!(v, czf_exact(&g).unwrap().value, "{}", g.to_edge_list());
        let r = clique_solve(&g).unwrap();
        assert_eq!(r.value, v);
        r.replay(&g).unwrap();
    }
}

#[test]
fn cactus_solver_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..120 {
        let n = rng.gen_range(1..=12);
        let g = random_cactus(n, &mut rng);
        let r = cactus_czf(&g).unwrap();
        assert_eq!(r.value, czf_exact(&g).unwrap().value, "{}", g.to_edge_list());
        r.replay(&g).unwrap();
    }
}

#[test]
fn cactus_with_preoccupied_matches_extended_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..150 {
        let n = rng.gen_range(1..=10);
        let g = random_cactus(n, &mut rng);
        let pre = random_subset(n, 0.3, &mut rng);
        let inst = CactusInstance::new(g.clone(), pre.clone()).unwrap();
        let plan = cactus_solve(&inst).unwrap();
        let (want, _) = cfms_preoccupied_exact(&g, &pre).unwrap();
        assert_eq!(plan.additional_searchers, want, "{}", inst.to_text());
        assert!(cfms_run_preoccupied(&g, &pre, &plan.strategy).unwrap().success);
    }
}
