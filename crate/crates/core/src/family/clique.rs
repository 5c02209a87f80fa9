use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::dismantle::verified_strategy;
use super::FamilyError;
use crate::bits::{iter_bits, low_mask, mask_of};
use crate::graph::{Edge, Graph};
use crate::report::{Method, ParameterResult};

/// Cliques `Z_1..Z_k` added one at a time; `Z_{i+1}` is fully joined to the
/// clique `Y_i` of earlier vertices, which avoids the anchors `u_1..u_i`.
/// `attachments[i]` holds `Y_{i+1}` (0-based), so there are `k - 1` of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueConstruction {
    pub cliques: Vec<Vec<usize>>,
    pub anchors: Vec<usize>,
    pub attachments: Vec<Vec<usize>>,
}

impl CliqueConstruction {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    /// The edge set the construction produces.
    pub fn edges(&self) -> BTreeSet<Edge> {
        let mut out = BTreeSet::new();
        for (i, z) in self.cliques.iter().enumerate() {
            for (j, &a) in z.iter().enumerate() {
                for &b in &z[j + 1..] {
                    out.insert(Edge::new(a, b));
                }
                if i > 0 {
                    for &y in &self.attachments[i - 1] {
                        out.insert(Edge::new(a, y));
                    }
                }
            }
        }
        out
    }

    pub fn validate(&self, g: &Graph) -> Result<(), FamilyError> {
        let bad = |m: String| Err(FamilyError::InvalidConstruction(m));
        let k = self.len();
        if k == 0 || self.anchors.len() != k || self.attachments.len() + 1 != k {
            return bad(format!(
                "{k} cliques, {} anchors, {} attachment sets",
                self.anchors.len(),
                self.attachments.len()
            ));
        }
        let mut owner = vec![usize::MAX; g.n()];
        for (i, z) in self.cliques.iter().enumerate() {
            if z.len() < 2 {
                return bad(format!("clique {i} has fewer than two vertices"));
            }
            for &v in z {
                if v >= g.n() {
                    return bad(format!("vertex {v} out of range"));
                }
                if owner[v] != usize::MAX {
                    return bad(format!("vertex {v} is in two cliques"));
                }
                owner[v] = i;
            }
            if !z.contains(&self.anchors[i]) {
                return bad(format!("anchor {} is not in clique {i}", self.anchors[i]));
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return bad(format!("vertex {v} is in no clique"));
        }
        for (i, y) in self.attachments.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &v in y {
                if v >= g.n() || owner[v] > i {
                    return bad(format!("attachment {i} uses vertex {v} before it exists"));
                }
                if self.anchors[..=i].contains(&v) {
                    return bad(format!("attachment {i} contains anchor {v}"));
                }
                if !seen.insert(v) {
                    return bad(format!("attachment {i} repeats vertex {v}"));
                }
            }
            for (j, &a) in y.iter().enumerate() {
                if y[j + 1..].iter().any(|&b| !g.has_edge(a, b)) {
                    return bad(format!("attachment {i} is not a clique"));
                }
            }
        }
        let built = self.edges();
        if built.len() != g.m() || g.edges().iter().any(|e| !built.contains(e)) {
            return bad("reconstruction does not reproduce the edge set".into());
        }
        Ok(())
    }
}

/// `|V| - k` for a valid construction of length `k`.
pub fn clique_construction_value(g: &Graph, c: &CliqueConstruction) -> Result<usize, FamilyError> {
    c.validate(g)?;
    Ok(g.n() - c.len())
}

/// Finds a construction by repeatedly removing a set of closed twins whose
/// other neighbours form a clique, last clique first.
pub fn find_clique_construction(g: &Graph) -> Option<CliqueConstruction> {
    let adj = g.adjacency_masks()?;
    if g.n() < 2 {
        return None;
    }
    type Step = (u64, usize, u64);

    fn is_clique(adj: &[u64], s: u64) -> bool {
        iter_bits(s).all(|v| (adj[v] | 1 << v) & s == s)
    }

    fn peel(adj: &[u64], rem: u64, forb: u64, memo: &mut HashSet<(u64, u64)>) -> Option<Vec<Step>> {
        if rem.count_ones() >= 2 && is_clique(adj, rem) && rem & !forb != 0 {
            return Some(vec![(rem, (rem & !forb).trailing_zeros() as usize, 0)]);
        }
        if memo.contains(&(rem, forb)) {
            return None;
        }
        let mut classes: BTreeMap<u64, u64> = BTreeMap::new();
        for v in iter_bits(rem) {
            *classes.entry((adj[v] | 1 << v) & rem).or_default() |= 1 << v;
        }
        for (&closed, &class) in &classes {
            let t: Vec<usize> = iter_bits(class).collect();
            if t.len() < 2 || t.len() > 16 {
                continue;
            }
            for bits in (1u64..1 << t.len()).rev() {
                if bits.count_ones() < 2 {
                    continue;
                }
                let z = mask_of(&iter_bits(bits).map(|i| t[i]).collect::<Vec<_>>());
                if z == rem || z & !forb == 0 {
                    continue;
                }
                let y = closed & !z;
                if !is_clique(adj, y) {
                    continue;
                }
                if let Some(mut rest) = peel(adj, rem & !z, forb | y, memo) {
                    rest.push((z, (z & !forb).trailing_zeros() as usize, y));
                    return Some(rest);
                }
            }
        }
        memo.insert((rem, forb));
        None
    }

    let steps = peel(&adj, low_mask(g.n()), 0, &mut HashSet::new())?;
    let c = CliqueConstruction {
        cliques: steps.iter().map(|s| iter_bits(s.0).collect()).collect(),
        anchors: steps.iter().map(|s| s.1).collect(),
        attachments: steps[1..].iter().map(|s| iter_bits(s.2).collect()).collect(),
    };
    debug_assert!(c.validate(g).is_ok());
    Some(c)
}

/// Value and strategy from a construction: a searcher on every vertex
/// except the anchors.
pub fn clique_solve(g: &Graph) -> Result<ParameterResult, FamilyError> {
    let c = find_clique_construction(g).ok_or(FamilyError::NotCliqueConstructable)?;
    let placements: Vec<usize> = (0..g.n()).filter(|v| !c.anchors.contains(v)).collect();
    verified_strategy(g, &placements, Method::Clique)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};

    #[test]
    fn complete_graph_is_one_clique() {
        let k4 = generate(FamilySpec::Complete(4)).unwrap();
        let c = CliqueConstruction {
            cliques: vec![vec![0, 1, 2, 3]],
            anchors: vec![0],
            attachments: vec![],
        };
        assert_eq!(clique_construction_value(&k4, &c).unwrap(), 3);
        let found = find_clique_construction(&k4).unwrap();
        assert_eq!(found.len(), 1);
        let r = clique_solve(&k4).unwrap();
        assert_eq!(r.value, 3);
        r.replay(&k4).unwrap();
    }

    #[test]
    fn two_triangles_on_an_attachment() {
        let c = CliqueConstruction {
            cliques: vec![vec![0, 1, 2], vec![3, 4, 5]],
            anchors: vec![0, 3],
            attachments: vec![vec![1]],
        };
        let g = Graph::new(6, c.edges().iter().map(|e| (e.0, e.1))).unwrap();
        assert_eq!(clique_construction_value(&g, &c).unwrap(), 4);
        let r = clique_solve(&g).unwrap();
        assert_eq!(r.value, 4);
        r.replay(&g).unwrap();
    }

    #[test]
    fn chained_edges() {
        let g = Graph::new(4, [(0, 1), (2, 3), (1, 2), (1, 3)]).unwrap();
        let c = CliqueConstruction {
            cliques: vec![vec![0, 1], vec![2, 3]],
            anchors: vec![0, 2],
            attachments: vec![vec![1]],
        };
        assert_eq!(clique_construction_value(&g, &c).unwrap(), 2);
        assert_eq!(find_clique_construction(&g).unwrap().len(), 2);
    }

    #[test]
    fn invalid_constructions() {
        let g = Graph::new(4, [(0, 1), (2, 3), (1, 2), (1, 3)]).unwrap();
        let anchor_in_y = CliqueConstruction {
            cliques: vec![vec![0, 1], vec![2, 3]],
            anchors: vec![1, 2],
            attachments: vec![vec![1]],
        };
        assert!(clique_construction_value(&g, &anchor_in_y).is_err());
        let wrong_edges = CliqueConstruction {
            cliques: vec![vec![0, 1], vec![2, 3]],
            anchors: vec![0, 2],
            attachments: vec![vec![0]],
        };
        assert!(clique_construction_value(&g, &wrong_edges).is_err());
        let singleton = CliqueConstruction {
            cliques: vec![vec![0, 1, 2], vec![3]],
            anchors: vec![0, 3],
            attachments: vec![vec![1]],
        };
        assert!(clique_construction_value(&g, &singleton).is_err());
    }

    #[test]
    fn paths_are_not_constructable() {
        assert!(find_clique_construction(&generate(FamilySpec::Path(3)).unwrap()).is_none());
        assert!(find_clique_construction(&generate(FamilySpec::Cycle(4)).unwrap()).is_none());
    }
}
