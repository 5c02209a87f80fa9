use std::collections::VecDeque;

use super::{dismantle_solve, FamilyError};
use crate::graph::Graph;
use crate::report::ParameterResult;

/// Solves `h`, obtained from `g` by hanging a tree `T_v` at every vertex
/// `v`. Vertices `0..g.n()` of `h` are the vertices of `g`, and
/// `attachment[w]` names the vertex of `g` whose tree contains `w`.
///
/// Every `T_v` must have a leaf at odd distance from `v`. The value comes
/// from a pendent-edge dismantling of `h`; an input that meets the leaf
/// condition but still cannot be dismantled is reported as
/// [`FamilyError::NotDismantlable`].
pub fn attach_trees_solve(g: &Graph, h: &Graph, attachment: &[usize]) -> Result<ParameterResult, FamilyError> {
    let n = g.n();
    let bad = |m: String| Err(FamilyError::InvalidAttachment(m));
    if attachment.len() != h.n() || h.n() < n {
        return bad(format!("{} labels for {} vertices", attachment.len(), h.n()));
    }
    for (w, &v) in attachment.iter().enumerate() {
        if v >= n || (w < n && v != w) {
            return bad(format!("vertex {w} is attached to {v}"));
        }
    }
    for e in h.edges() {
        let base = e.0 < n && e.1 < n;
        if base && !g.has_edge(e.0, e.1) {
            return bad(format!("edge {e} joins two base vertices but is not in g"));
        }
        if !base && attachment[e.0] != attachment[e.1] {
            return bad(format!("edge {e} joins two different trees"));
        }
    }
    if let Some(e) = g.edges().iter().find(|e| !h.has_edge(e.0, e.1)) {
        return bad(format!("edge {e} of g is missing"));
    }

    let mut dist = vec![usize::MAX; h.n()];
    let mut size = vec![0usize; n];
    let mut tree_edges = vec![0usize; n];
    for w in 0..h.n() {
        size[attachment[w]] += 1;
    }
    for e in h.edges() {
        if !(e.0 < n && e.1 < n) {
            tree_edges[attachment[e.0]] += 1;
        }
    }
    let in_tree_degree = |w: usize| {
        h.neighbors(w)
            .iter()
            .filter(|&&x| !(w < n && x < n) && attachment[x] == attachment[w])
            .count()
    };
    for v in 0..n {
        let mut reached = 0;
        let mut odd_leaf = false;
        let mut queue = VecDeque::from([v]);
        dist[v] = 0;
        while let Some(x) = queue.pop_front() {
            reached += 1;
            if x != v && dist[x] % 2 == 1 && in_tree_degree(x) == 1 {
                odd_leaf = true;
            }
            for &y in h.neighbors(x) {
                if y >= n && attachment[y] == v && dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        if reached != size[v] || tree_edges[v] + 1 != size[v] {
            return bad(format!("the vertices attached to {v} do not form a tree"));
        }
        if !odd_leaf {
            return Err(FamilyError::NoOddLeaf(v));
        }
    }
    dismantle_solve(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, parse_edge_list, FamilySpec};

    /// `g` with one pendant vertex `v + n` on every vertex `v`.
    fn corona(g: &Graph) -> (Graph, Vec<usize>) {
        let n = g.n();
        let edges = g.edges().iter().map(|e| (e.0, e.1)).chain((0..n).map(|v| (v, v + n)));
        let h = Graph::new(2 * n, edges).unwrap();
        (h, (0..2 * n).map(|w| w % n).collect())
    }

    #[test]
    fn triangle_corona() {
        let k3 = generate(FamilySpec::Complete(3)).unwrap();
        let (h, att) = corona(&k3);
        let r = attach_trees_solve(&k3, &h, &att).unwrap();
        assert_eq!(r.value, 3);
        r.replay(&h).unwrap();
    }

    #[test]
    fn worked_example_corona() {
        let g = parse_edge_list("7 11\n0 1\n1 2\n3 4\n4 5\n0 3\n1 4\n2 5\n1 3\n5 6\n1 6\n0 2").unwrap();
        let (h, att) = corona(&g);
        let r = attach_trees_solve(&g, &h, &att).unwrap();
        assert_eq!(r.value, 7);
        r.replay(&h).unwrap();
    }

    #[test]
    fn single_vertex_with_pendant() {
        let (h, att) = corona(&Graph::empty(1));
        assert_eq!(attach_trees_solve(&Graph::empty(1), &h, &att).unwrap().value, 1);
    }

    #[test]
    fn missing_odd_leaf_names_the_vertex() {
        let k3 = generate(FamilySpec::Complete(3)).unwrap();
        // vertex 1 gets a path of length 2, so its only leaf is at distance 2
        let h = Graph::new(7, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (4, 5), (2, 6)]).unwrap();
        let att = vec![0, 1, 2, 0, 1, 1, 2];
        assert_eq!(attach_trees_solve(&k3, &h, &att), Err(FamilyError::NoOddLeaf(1)));
    }

    #[test]
    fn odd_leaf_alone_does_not_force_dismantlability() {
        // each T_v is v-a-b-c plus a leaf d on a: c is at odd distance, but
        // every dismantling of T_v strands v, so the triangle survives
        let k3 = generate(FamilySpec::Complete(3)).unwrap();
        let mut edges = vec![(0, 1), (1, 2), (0, 2)];
        let mut att = vec![0, 1, 2];
        for v in 0..3 {
            let a = 3 + 4 * v;
            edges.extend([(v, a), (a, a + 1), (a + 1, a + 2), (a, a + 3)]);
            att.extend([v; 4]);
        }
        let h = Graph::new(15, edges).unwrap();
        assert_eq!(attach_trees_solve(&k3, &h, &att), Err(FamilyError::NotDismantlable));
    }

    #[test]
    fn rejects_malformed_attachments() {
        let k3 = generate(FamilySpec::Complete(3)).unwrap();
        let (h, mut att) = corona(&k3);
        att[3] = 1;
        assert!(matches!(attach_trees_solve(&k3, &h, &att), Err(FamilyError::InvalidAttachment(_))));
    }
}
