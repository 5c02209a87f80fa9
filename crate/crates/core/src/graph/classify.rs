use super::Graph;

/// Structural facts used to pick a solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    pub is_connected: bool,
    pub is_forest: bool,
    pub is_tree: bool,
    /// Connected with exactly one cycle.
    pub is_unicyclic: bool,
    /// Every edge lies on at most one cycle.
    pub is_cactus_forest: bool,
    pub is_cactus: bool,
    pub is_cubic: bool,
    pub components: Vec<Vec<usize>>,
    /// The cycles of a cactus forest, each listed in cyclic order starting at
    /// the vertex closest to its DFS root. Empty unless `is_cactus_forest`.
    pub cycles: Vec<Vec<usize>>,
}

pub fn classify(g: &Graph) -> Structure {
    let components = g.components();
    let n = g.n();
    let m = g.m();
    let c = components.len();
    let is_connected = c <= 1;
    let is_forest = m + c == n;
    let is_tree = is_forest && c == 1;
    let is_unicyclic = is_connected && n > 0 && m == n;
    let is_cubic = n > 0 && (0..n).all(|v| g.degree(v) == 3);
    let cycles = cactus_cycles(g);
    let is_cactus_forest = cycles.is_some();
    Structure {
        is_connected,
        is_forest,
        is_tree,
        is_unicyclic,
        is_cactus_forest,
        is_cactus: is_cactus_forest && is_connected,
        is_cubic,
        components,
        cycles: cycles.unwrap_or_default(),
    }
}

/// Fundamental cycles of a DFS forest; `None` if two of them share an edge.
fn cactus_cycles(g: &Graph) -> Option<Vec<Vec<usize>>> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    // used[v]: the tree edge v-parent[v] is already on a cycle
    let mut used = vec![false; n];
    let mut cycles = Vec::new();
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if let Some(&w) = g.neighbors(v).get(*i) {
                *i += 1;
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = v;
                    stack.push((w, 0));
                } else if w != parent[v] && depth[w] < depth[v] {
                    let mut cyc = vec![v];
                    let mut x = v;
                    while x != w {
                        if used[x] {
                            return None;
                        }
                        used[x] = true;
                        x = parent[x];
                        cyc.push(x);
                    }
                    cyc.reverse();
                    cycles.push(cyc);
                }
            } else {
                stack.pop();
            }
        }
    }
    Some(cycles)
}
