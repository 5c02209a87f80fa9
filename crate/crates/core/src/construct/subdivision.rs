use super::ConstructError;
use crate::deduction::{is_successful, Layout};
use crate::family::cycle_pattern;
use crate::graph::{classify, subdivide_all, Graph};
use crate::report::{Method, Parameter, ParameterResult, Witness};
use crate::search::greedy_completion;

/// Live vertex set of the subdivided graph with current degrees.
struct Shrink<'g> {
    g: &'g Graph,
    alive: Vec<bool>,
    deg: Vec<usize>,
    placed: Vec<usize>,
}

impl<'g> Shrink<'g> {
    fn kill(&mut self, v: usize) {
        self.alive[v] = false;
        for &w in self.g.neighbors(v) {
            if self.alive[w] {
                self.deg[w] -= 1;
            }
        }
    }

    fn live_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.g.neighbors(v).iter().copied().filter(|&w| self.alive[w])
    }

    fn lowest(&self, deg: usize) -> Option<usize> {
        (0..self.g.n()).find(|&v| self.alive[v] && self.deg[v] == deg)
    }

    /// Places on isolated vertices and on leaves, deleting each leaf with
    /// its neighbour, until neither is left.
    fn prune(&mut self) {
        loop {
            if let Some(v) = self.lowest(0) {
                self.placed.push(v);
                self.kill(v);
            } else if let Some(v) = self.lowest(1) {
                let w = self.live_neighbors(v).next().expect("degree one");
                self.placed.push(v);
                self.kill(v);
                self.kill(w);
            } else {
                return;
            }
        }
    }

    fn is_empty(&self) -> bool {
        !self.alive.iter().any(|&a| a)
    }
}

/// `czf` of the graph obtained by subdividing every edge of the connected
/// graph `g` once: `|E(g)| + 1` for a tree and `|E(g)|` otherwise.
///
/// The witness layout is built on `subdivide_all(g)` by pruning leaves, then
/// either covering the remaining even cycle alternately or, around a base
/// vertex `v` two steps from a vertex of maximum degree, placing on `v` and
/// all but one of its middle neighbours before pruning again.
pub fn subdivision_value(g: &Graph) -> Result<ParameterResult, ConstructError> {
    if !g.is_connected() {
        return Err(ConstructError::NotConnected);
    }
    let value = if classify(g).is_tree { g.m() + 1 } else { g.m() };
    let sub = subdivide_all(g);
    let mut s = Shrink {
        g: &sub,
        alive: vec![true; sub.n()],
        deg: (0..sub.n()).map(|v| sub.degree(v)).collect(),
        placed: Vec::new(),
    };
    s.prune();
    if !s.is_empty() {
        let top = (0..sub.n()).filter(|&v| s.alive[v]).max_by_key(|&v| (s.deg[v], std::cmp::Reverse(v)));
        let u = top.expect("graph is not empty");
        if s.deg[u] == 2 {
            let start = u;
            let mut order = vec![start];
            let mut prev = usize::MAX;
            loop {
                let cur = *order.last().unwrap();
                let next = s.live_neighbors(cur).find(|&w| w != prev).expect("cycle");
                if next == start {
                    break;
                }
                prev = cur;
                order.push(next);
            }
            s.placed.extend(cycle_pattern(&order));
            for x in order {
                s.kill(x);
            }
        } else {
            let (v_mid, v) = s
                .live_neighbors(u)
                .flat_map(|m| s.live_neighbors(m).filter(move |&b| b != u).map(move |b| (m, b)))
                .min_by_key(|&(_, b)| b)
                .ok_or_else(|| ConstructError::Internal("no base vertex at distance two".into()))?;
            let others: Vec<usize> = s.live_neighbors(v).filter(|&w| w != v_mid).collect();
            s.placed.push(v);
            s.placed.extend(&others);
            let targets: Vec<usize> = others
                .iter()
                .map(|&w| s.live_neighbors(w).find(|&x| x != v).expect("middle vertices have two ends"))
                .collect();
            s.kill(v);
            s.kill(v_mid);
            for (&w, &x) in others.iter().zip(&targets) {
                s.kill(w);
                s.kill(x);
            }
            s.prune();
        }
    }
    if !s.is_empty() {
        return Err(ConstructError::Internal("a component without leaves survived".into()));
    }
    if s.placed.len() != value {
        return Err(ConstructError::Internal(format!(
            "procedure placed {} searchers, formula gives {value}",
            s.placed.len()
        )));
    }
    let layout = Layout::from_vertices(sub.n(), &s.placed);
    if !is_successful(&sub, &layout) || !greedy_completion(&sub, &[], &s.placed).1 {
        return Err(ConstructError::Internal("subdivision layout does not clear".into()));
    }
    let mut vertices = s.placed;
    vertices.sort_unstable();
    Ok(ParameterResult {
        parameter: Parameter::Czf,
        value,
        method: Method::Formula,
        witness: Witness::Layout { vertices },
    })
}
