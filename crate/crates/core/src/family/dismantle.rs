use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::FamilyError;
use crate::graph::{classify, Edge, Graph};
use crate::report::{Method, Parameter, ParameterResult, Witness};
use crate::search::greedy_completion;

/// Successive pendent edges whose deletion (both endpoints go) leaves a
/// graph with no edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DismantlingOrdering {
    pub edges: Vec<Edge>,
}

impl DismantlingOrdering {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Vertex deletions with live degrees.
struct Peel<'g> {
    g: &'g Graph,
    alive: Vec<bool>,
    deg: Vec<usize>,
}

impl<'g> Peel<'g> {
    fn new(g: &'g Graph) -> Peel<'g> {
        Peel {
            g,
            alive: vec![true; g.n()],
            deg: (0..g.n()).map(|v| g.degree(v)).collect(),
        }
    }

    fn neighbor(&self, v: usize) -> Option<usize> {
        self.g.neighbors(v).iter().copied().find(|&w| self.alive[w])
    }

    fn kill(&mut self, v: usize) {
        self.alive[v] = false;
        for &w in self.g.neighbors(v) {
            if self.alive[w] {
                self.deg[w] -= 1;
            }
        }
    }

    fn revive(&mut self, v: usize) {
        self.alive[v] = true;
        for &w in self.g.neighbors(v) {
            if self.alive[w] {
                self.deg[w] += 1;
            }
        }
    }

    fn pendent_edges(&self) -> BTreeSet<Edge> {
        (0..self.g.n())
            .filter(|&v| self.alive[v] && self.deg[v] == 1)
            .map(|v| Edge::new(v, self.neighbor(v).expect("degree one")))
            .collect()
    }

    fn is_null(&self) -> bool {
        (0..self.g.n()).all(|v| !self.alive[v] || self.deg[v] == 0)
    }

    fn leaf_of(&self, e: Edge) -> usize {
        if self.deg[e.0] == 1 {
            e.0
        } else {
            e.1
        }
    }
}

/// Searches for a pendent-edge dismantling ordering, trying the lowest
/// pendent edge first and backtracking over the alternatives.
pub fn pendent_dismantle(g: &Graph) -> Option<DismantlingOrdering> {
    pendent_dismantle_stats(g).0
}

/// As [`pendent_dismantle`], also returning how many choices were undone.
pub fn pendent_dismantle_stats(g: &Graph) -> (Option<DismantlingOrdering>, usize) {
    fn search(
        p: &mut Peel,
        order: &mut Vec<Edge>,
        failed: &mut HashSet<Vec<bool>>,
        backtracks: &mut usize,
    ) -> bool {
        let cands = p.pendent_edges();
        if cands.is_empty() {
            return p.is_null();
        }
        if failed.contains(&p.alive) {
            return false;
        }
        for e in cands {
            p.kill(e.0);
            p.kill(e.1);
            order.push(e);
            if search(p, order, failed, backtracks) {
                return true;
            }
            order.pop();
            p.revive(e.1);
            p.revive(e.0);
            *backtracks += 1;
        }
        failed.insert(p.alive.clone());
        false
    }
    let mut p = Peel::new(g);
    let mut order = Vec::new();
    let mut backtracks = 0;
    let found = search(&mut p, &mut order, &mut HashSet::new(), &mut backtracks);
    (found.then_some(DismantlingOrdering { edges: order }), backtracks)
}

/// Replays `o`, returning the degree-one endpoint of each deletion and the
/// surviving vertices.
fn replay_ordering(g: &Graph, o: &DismantlingOrdering) -> Result<(Vec<usize>, Vec<usize>), FamilyError> {
    let mut p = Peel::new(g);
    let mut leaves = Vec::with_capacity(o.len());
    for (i, &e) in o.edges.iter().enumerate() {
        let bad = |m: &str| FamilyError::InvalidOrdering(format!("step {i} ({e}): {m}"));
        if e.0 >= g.n() || e.1 >= g.n() || !g.has_edge(e.0, e.1) {
            return Err(bad("not an edge"));
        }
        if !p.alive[e.0] || !p.alive[e.1] {
            return Err(bad("endpoint already deleted"));
        }
        if p.deg[e.0] != 1 && p.deg[e.1] != 1 {
            return Err(bad("not pendent"));
        }
        leaves.push(p.leaf_of(e));
        p.kill(e.0);
        p.kill(e.1);
    }
    if !p.is_null() {
        return Err(FamilyError::InvalidOrdering("remaining graph still has edges".into()));
    }
    let rest = (0..g.n()).filter(|&v| p.alive[v]).collect();
    Ok((leaves, rest))
}

/// `n - k` for a valid ordering of length `k`.
pub fn dismantlable_value(g: &Graph, o: &DismantlingOrdering) -> Result<usize, FamilyError> {
    replay_ordering(g, o)?;
    Ok(g.n() - o.len())
}

/// Greedy completion of `placements`, failing if it does not clear `g`.
pub(crate) fn verified_strategy(
    g: &Graph,
    placements: &[usize],
    method: Method,
) -> Result<ParameterResult, FamilyError> {
    let (strategy, ok) = greedy_completion(g, &[], placements);
    if !ok {
        return Err(FamilyError::Internal(format!(
            "{} placements do not clear the graph",
            method.name()
        )));
    }
    Ok(ParameterResult {
        parameter: Parameter::Czf,
        value: placements.len(),
        method,
        witness: Witness::Strategy { strategy },
    })
}

/// Value and strategy from a dismantling ordering: a searcher on the leaf
/// of each deleted edge and on every vertex left over.
pub fn dismantle_solve(g: &Graph) -> Result<ParameterResult, FamilyError> {
    let o = pendent_dismantle(g).ok_or(FamilyError::NotDismantlable)?;
    let (mut placements, rest) = replay_ordering(g, &o)?;
    placements.extend(rest);
    let r = verified_strategy(g, &placements, Method::Dismantle)?;
    debug_assert_eq!(r.value, g.n() - o.len());
    Ok(r)
}

/// `{c0} ∪ {c_i : i odd, i <= L-2}` for a cycle listed in cyclic order.
pub(crate) fn cycle_pattern(order: &[usize]) -> Vec<usize> {
    let l = order.len();
    let mut out = vec![order[0]];
    out.extend((1..l.saturating_sub(1)).step_by(2).map(|i| order[i]));
    out
}

/// Peels pendent edges (lowest leaf first) until none is left. With `k`
/// deletions the value is `|V(H)| + k` when the remainder `H` has no edges,
/// and `n - floor(|C|/2) - k` when it still contains the cycle `C`.
pub fn unicyclic_solve(g: &Graph) -> Result<ParameterResult, FamilyError> {
    if !classify(g).is_unicyclic {
        return Err(FamilyError::NotUnicyclic);
    }
    let n = g.n();
    let mut p = Peel::new(g);
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| p.deg[v] == 1).collect();
    let mut placements = Vec::new();
    while let Some(v) = leaves.pop_first() {
        if !p.alive[v] || p.deg[v] != 1 {
            continue;
        }
        let u = p.neighbor(v).expect("degree one");
        placements.push(v);
        p.kill(v);
        p.kill(u);
        for &w in g.neighbors(u) {
            if p.alive[w] && p.deg[w] == 1 {
                leaves.insert(w);
            }
        }
    }
    let k = placements.len();
    let rest: Vec<usize> = (0..n).filter(|&v| p.alive[v]).collect();
    let (isolated, on_cycle): (Vec<usize>, Vec<usize>) = rest.iter().copied().partition(|&v| p.deg[v] == 0);
    placements.extend(&isolated);
    let value = if on_cycle.is_empty() {
        rest.len() + k
    } else {
        let mut order = vec![on_cycle[0]];
        let mut prev = usize::MAX;
        loop {
            let cur = *order.last().unwrap();
            let next = g
                .neighbors(cur)
                .iter()
                .copied()
                .find(|&w| p.alive[w] && w != prev && p.deg[w] == 2)
                .expect("cycle vertices have two live neighbours");
            if next == order[0] {
                break;
            }
            prev = cur;
            order.push(next);
        }
        placements.extend(cycle_pattern(&order));
        n - order.len() / 2 - k
    };
    let r = verified_strategy(g, &placements, Method::Unicyclic)?;
    if r.value != value {
        return Err(FamilyError::Internal(format!(
            "unicyclic formula gives {value} but the strategy uses {}",
            r.value
        )));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};

    fn c5_plus(edges: &[(usize, usize)], n: usize) -> Graph {
        let mut e = vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
        e.extend_from_slice(edges);
        Graph::new(n, e).unwrap()
    }

    #[test]
    fn c5_with_pendant_edge_dismantles() {
        let g = c5_plus(&[(0, 5)], 6);
        let o = pendent_dismantle(&g).unwrap();
        assert_eq!(o.len(), 3);
        assert_eq!(dismantlable_value(&g, &o).unwrap(), 3);
        let r = dismantle_solve(&g).unwrap();
        assert_eq!(r.value, 3);
        r.replay(&g).unwrap();
    }

    #[test]
    fn c5_with_pendant_path_does_not() {
        let g = c5_plus(&[(0, 5), (5, 6)], 7);
        assert_eq!(pendent_dismantle(&g), None);
        assert_eq!(dismantle_solve(&g), Err(FamilyError::NotDismantlable));
    }

    #[test]
    fn forests_dismantle() {
        let p4 = generate(FamilySpec::Path(4)).unwrap();
        let o = pendent_dismantle(&p4).unwrap();
        assert_eq!(o.len(), 2);
        assert_eq!(dismantlable_value(&p4, &o).unwrap(), 2);
        let t = Graph::new(9, [(0, 1), (1, 2), (1, 3), (3, 4), (4, 5), (0, 6), (6, 7), (7, 8)]).unwrap();
        let o = pendent_dismantle(&t).unwrap();
        assert_eq!(o.len(), 4);
        assert_eq!(dismantlable_value(&t, &o).unwrap(), 5);
    }

    #[test]
    fn invalid_orderings_are_rejected() {
        let p4 = generate(FamilySpec::Path(4)).unwrap();
        let bad = DismantlingOrdering { edges: vec![Edge(1, 2)] };
        assert!(matches!(dismantlable_value(&p4, &bad), Err(FamilyError::InvalidOrdering(_))));
        let short = DismantlingOrdering { edges: vec![Edge(0, 1)] };
        assert!(matches!(dismantlable_value(&p4, &short), Err(FamilyError::InvalidOrdering(_))));
    }

    #[test]
    fn unicyclic_examples() {
        let c4_path = Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5)]).unwrap();
        let r = unicyclic_solve(&c4_path).unwrap();
        assert_eq!(r.value, 3);
        r.replay(&c4_path).unwrap();
        let c4_leaf = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap();
        let r = unicyclic_solve(&c4_leaf).unwrap();
        assert_eq!(r.value, 3);
        r.replay(&c4_leaf).unwrap();
        let c6 = generate(FamilySpec::Cycle(6)).unwrap();
        let r = unicyclic_solve(&c6).unwrap();
        assert_eq!(r.value, 3);
        r.replay(&c6).unwrap();
        assert_eq!(
            unicyclic_solve(&generate(FamilySpec::Path(3)).unwrap()),
            Err(FamilyError::NotUnicyclic)
        );
    }

    #[test]
    fn pattern_sizes() {
        for l in 3..10 {
            let order: Vec<usize> = (0..l).collect();
            assert_eq!(cycle_pattern(&order).len(), l.div_ceil(2));
        }
    }
}
