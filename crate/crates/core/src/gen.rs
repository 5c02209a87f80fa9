//! Seeded random instances for cross-checks and experiments.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::family::CliqueConstruction;
use crate::graph::Graph;

fn relabel<R: Rng>(n: usize, edges: &[(usize, usize)], rng: &mut R) -> (Graph, Vec<usize>) {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let g = Graph::new(n, edges.iter().map(|&(a, b)| (perm[a], perm[b]))).expect("generated edges are valid");
    (g, perm)
}

fn tree_edges<R: Rng>(n: usize, rng: &mut R) -> Vec<(usize, usize)> {
    (1..n).map(|v| (rng.gen_range(0..v), v)).collect()
}

/// Uniformly labelled random recursive tree.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    relabel(n, &tree_edges(n, rng), rng).0
}

/// A random spanning tree plus each remaining pair with probability `p`.
pub fn random_connected<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = tree_edges(n, rng);
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    relabel(n, &edges, rng).0
}

/// A random tree plus one extra edge; `n >= 3`.
pub fn random_unicyclic<R: Rng>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 3, "a unicyclic graph needs three vertices");
    let t = random_tree(n, rng);
    loop {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b && !t.has_edge(a, b) {
            let edges = t.edges().iter().map(|e| (e.0, e.1)).chain([(a, b)]);
            return Graph::new(n, edges).expect("valid edges");
        }
    }
}

/// Grows a connected cactus from one vertex by hanging pendant vertices and
/// cycles of length 3 to 6 on existing vertices.
pub fn random_cactus<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    let mut count = 1;
    while count < n {
        let at = rng.gen_range(0..count);
        let room = n - count;
        if room >= 2 && rng.gen_bool(0.6) {
            let len = rng.gen_range(3..=room.min(5) + 1);
            let mut prev = at;
            for _ in 1..len {
                edges.push((prev, count));
                prev = count;
                count += 1;
            }
            edges.push((prev, at));
        } else {
            edges.push((at, count));
            count += 1;
        }
    }
    relabel(n, &edges, rng).0
}

/// Reverses a pendent-edge dismantling: starts from `isolated` vertices and
/// adds `k` pendent edges `ab`, joining `b` to a random set of earlier
/// vertices each time.
pub fn random_dismantlable<R: Rng>(k: usize, isolated: usize, p: f64, rng: &mut R) -> Graph {
    let n = 2 * k + isolated;
    let mut edges = Vec::new();
    let mut count = isolated;
    for _ in 0..k {
        let (a, b) = (count, count + 1);
        edges.push((a, b));
        for w in 0..count {
            if rng.gen_bool(p) {
                edges.push((b, w));
            }
        }
        count += 2;
    }
    relabel(n, &edges, rng).0
}

/// A random clique construction on at most `max_n` vertices (`max_n >= 2`)
/// together with the graph it builds.
pub fn random_clique_construction<R: Rng>(max_n: usize, rng: &mut R) -> (Graph, CliqueConstruction) {
    assert!(max_n >= 2, "the first clique needs two vertices");
    let first = rng.gen_range(2..=max_n.min(4));
    let mut cliques = vec![(0..first).collect::<Vec<usize>>()];
    let mut anchors = vec![rng.gen_range(0..first)];
    let mut attachments: Vec<Vec<usize>> = Vec::new();
    // cliques of the graph so far: every Z_i and every Z_{i+1} ∪ Y_i
    let mut known = cliques.clone();
    let mut count = first;
    while max_n - count >= 2 && rng.gen_bool(0.75) {
        let size = rng.gen_range(2..=(max_n - count).min(3));
        let host = known.choose(rng).expect("at least one clique");
        let y: Vec<usize> = host
            .iter()
            .copied()
            .filter(|v| !anchors.contains(v) && rng.gen_bool(0.6))
            .collect();
        let z: Vec<usize> = (count..count + size).collect();
        anchors.push(z[rng.gen_range(0..size)]);
        let mut joined = z.clone();
        joined.extend(&y);
        known.push(z.clone());
        known.push(joined);
        cliques.push(z);
        attachments.push(y);
        count += size;
    }
    let c = CliqueConstruction {
        cliques,
        anchors,
        attachments,
    };
    let edges: Vec<(usize, usize)> = c.edges().iter().map(|e| (e.0, e.1)).collect();
    let (g, perm) = relabel(count, &edges, rng);
    let map = |s: &Vec<usize>| s.iter().map(|&v| perm[v]).collect::<Vec<usize>>();
    let c = CliqueConstruction {
        cliques: c.cliques.iter().map(map).collect(),
        anchors: c.anchors.iter().map(|&v| perm[v]).collect(),
        attachments: c.attachments.iter().map(map).collect(),
    };
    (g, c)
}

/// Each vertex independently with probability `p`.
pub fn random_subset<R: Rng>(n: usize, p: f64, rng: &mut R) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{clique_construction_value, pendent_dismantle};
    use crate::graph::classify;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_produce_their_families() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 3..12 {
            assert!(classify(&random_tree(n, &mut rng)).is_tree);
            assert!(classify(&random_unicyclic(n, &mut rng)).is_unicyclic);
            let c = random_cactus(n, &mut rng);
            assert_eq!(c.n(), n);
            assert!(classify(&c).is_cactus);
            assert!(random_connected(n, 0.3, &mut rng).is_connected());
            assert!(pendent_dismantle(&random_dismantlable(n / 2, n % 3, 0.4, &mut rng)).is_some());
            let (g, con) = random_clique_construction(n, &mut rng);
            assert!(g.n() <= n);
            assert_eq!(clique_construction_value(&g, &con).unwrap(), g.n() - con.len());
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = random_connected(9, 0.3, &mut ChaCha8Rng::seed_from_u64(3));
        let b = random_connected(9, 0.3, &mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
    }
}
