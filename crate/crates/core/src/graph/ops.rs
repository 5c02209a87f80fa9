use std::collections::BTreeMap;

use super::{Edge, EdgeRole, Graph, GraphError, Role};

/// A derived graph together with the vertex correspondence to its source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeled {
    pub graph: Graph,
    /// `old_to_new[v]` is the new id of source vertex `v`, if it survived.
    pub old_to_new: Vec<Option<usize>>,
    /// `new_to_old[w]` is the source vertex that became `w`.
    pub new_to_old: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeEdit {
    Add,
    Remove,
    Contract,
}

/// Subgraph induced by `keep`, relabeled in ascending order of `keep`.
/// Vertex roles are carried over; edge roles are kept for surviving edges.
pub fn induced_subgraph(g: &Graph, keep: &[bool]) -> Relabeled {
    let mut old_to_new = vec![None; g.n()];
    let mut new_to_old = Vec::new();
    for v in 0..g.n() {
        if keep[v] {
            old_to_new[v] = Some(new_to_old.len());
            new_to_old.push(v);
        }
    }
    let edges: Vec<_> = g
        .edges()
        .iter()
        .filter_map(|e| Some((old_to_new[e.0]?, old_to_new[e.1]?)))
        .collect();
    let mut graph = Graph::new(new_to_old.len(), edges).expect("induced edges are valid");
    if let Some(roles) = g.roles() {
        let r = new_to_old.iter().map(|&v| roles[v]).collect();
        graph = graph.with_roles(r).expect("length matches");
    }
    if let Some(er) = g.edge_roles() {
        let map = er
            .iter()
            .filter_map(|(e, r)| Some((Edge::new(old_to_new[e.0]?, old_to_new[e.1]?), *r)))
            .collect();
        graph = graph.with_edge_roles(map).expect("surviving edges only");
    }
    Relabeled {
        graph,
        old_to_new,
        new_to_old,
    }
}

/// `G ⊠ K2`: vertex `v` of the first copy keeps id `v`, its twin in the
/// second copy is `v + n`. All vertices are tagged base and the `n` twin
/// pairs are the base edges.
pub fn strong_product_k2(g: &Graph) -> Graph {
    let n = g.n();
    let mut edges = Vec::with_capacity(4 * g.m() + n);
    let mut roles = BTreeMap::new();
    for e in g.edges() {
        let (u, v) = (e.0, e.1);
        for (a, b) in [(u, v), (u + n, v + n), (u, v + n), (v, u + n)] {
            edges.push((a, b));
            roles.insert(Edge::new(a, b), EdgeRole::Plain);
        }
    }
    for v in 0..n {
        edges.push((v, v + n));
        roles.insert(Edge(v, v + n), EdgeRole::BaseEdge);
    }
    Graph::new(2 * n, edges)
        .expect("product edges are valid")
        .with_roles(vec![Role::Base; 2 * n])
        .expect("roles cover every vertex")
        .with_edge_roles(roles)
        .expect("roles cover every edge")
}

/// Replaces every edge `uv` (in edge order) by a path `u - w - v` through a
/// fresh middle vertex `w = n + index`.
pub fn subdivide_all(g: &Graph) -> Graph {
    let n = g.n();
    let mut edges = Vec::with_capacity(2 * g.m());
    for (i, e) in g.edges().iter().enumerate() {
        edges.push((e.0, n + i));
        edges.push((n + i, e.1));
    }
    let mut roles = vec![Role::Base; n];
    roles.extend(std::iter::repeat_n(Role::Middle, g.m()));
    Graph::new(n + g.m(), edges)
        .expect("subdivision edges are valid")
        .with_roles(roles)
        .expect("roles cover every vertex")
}

/// Deletes a pendent edge together with both of its endpoints.
pub fn delete_pendent_edge(g: &Graph, e: Edge) -> Result<Relabeled, GraphError> {
    if !g.has_edge(e.0, e.1) {
        return Err(GraphError::MissingEdge(e));
    }
    if g.degree(e.0) != 1 && g.degree(e.1) != 1 {
        return Err(GraphError::NotPendent(e));
    }
    let mut keep = vec![true; g.n()];
    keep[e.0] = false;
    keep[e.1] = false;
    Ok(induced_subgraph(g, &keep))
}

/// Adds, removes or contracts a single edge. Contraction keeps the smaller
/// endpoint, drops the larger one, and compacts labels; edge roles are
/// discarded by contraction.
pub fn edit_edge(g: &Graph, e: Edge, mode: EdgeEdit) -> Result<Relabeled, GraphError> {
    let e = Edge::new(e.0, e.1);
    for x in [e.0, e.1] {
        if x >= g.n() {
            return Err(GraphError::VertexOutOfRange { vertex: x, n: g.n() });
        }
    }
    if e.0 == e.1 {
        return Err(GraphError::SelfLoop(e.0));
    }
    let present = g.has_edge(e.0, e.1);
    let identity = || ((0..g.n()).map(Some).collect(), (0..g.n()).collect());
    match mode {
        EdgeEdit::Add | EdgeEdit::Remove => {
            if mode == EdgeEdit::Add && present {
                return Err(GraphError::DuplicateEdge(e));
            }
            if mode == EdgeEdit::Remove && !present {
                return Err(GraphError::MissingEdge(e));
            }
            let edges = g
                .edges()
                .iter()
                .filter(|&&f| f != e)
                .map(|f| (f.0, f.1))
                .chain((mode == EdgeEdit::Add).then_some((e.0, e.1)));
            let mut graph = Graph::new(g.n(), edges)?;
            if let Some(r) = g.roles() {
                graph = graph.with_roles(r.to_vec())?;
            }
            if let Some(er) = g.edge_roles() {
                let mut map = er.clone();
                map.remove(&e);
                if mode == EdgeEdit::Add {
                    map.insert(e, EdgeRole::Plain);
                }
                graph = graph.with_edge_roles(map)?;
            }
            let (old_to_new, new_to_old) = identity();
            Ok(Relabeled {
                graph,
                old_to_new,
                new_to_old,
            })
        }
        EdgeEdit::Contract => {
            if !present {
                return Err(GraphError::MissingEdge(e));
            }
            let (keep, gone) = (e.0, e.1);
            let old_to_new: Vec<Option<usize>> = (0..g.n())
                .map(|v| match v.cmp(&gone) {
                    std::cmp::Ordering::Less => Some(v),
                    std::cmp::Ordering::Equal => Some(keep),
                    std::cmp::Ordering::Greater => Some(v - 1),
                })
                .collect();
            let new_to_old: Vec<usize> = (0..g.n()).filter(|&v| v != gone).collect();
            let edges: Vec<_> = g
                .edges()
                .iter()
                .filter(|&&f| f != e)
                .map(|f| (old_to_new[f.0].unwrap(), old_to_new[f.1].unwrap()))
                .collect();
            let mut graph = Graph::new(g.n() - 1, edges)?;
            if let Some(r) = g.roles() {
                graph = graph.with_roles(new_to_old.iter().map(|&v| r[v]).collect())?;
            }
            let mut old_to_new = old_to_new;
            old_to_new[gone] = Some(keep);
            Ok(Relabeled {
                graph,
                old_to_new,
                new_to_old,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, FamilySpec};

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::new(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn strong_product_small_cases() {
        let k1 = strong_product_k2(&Graph::empty(1));
        assert_eq!((k1.n(), k1.m()), (2, 1));
        assert_eq!(k1.edge_role(Edge(0, 1)), EdgeRole::BaseEdge);

        let k2 = strong_product_k2(&g(2, &[(0, 1)]));
        assert_eq!((k2.n(), k2.m()), (4, 6));
        let base = k2
            .edges()
            .iter()
            .filter(|e| k2.edge_role(**e) == EdgeRole::BaseEdge)
            .count();
        assert_eq!(base, 2);
    }

    #[test]
    fn strong_product_of_triangle_by_enumeration() {
        let c3 = generate(FamilySpec::Cycle(3)).unwrap();
        let p = strong_product_k2(&c3);
        // brute force: (x,i) ~ (y,j) iff distinct and (x == y or x ~ y)
        let mut expected = 0;
        for a in 0..6 {
            for b in a + 1..6 {
                let (x, y) = (a % 3, b % 3);
                if x == y || c3.has_edge(x, y) {
                    expected += 1;
                    assert!(p.has_edge(a, b));
                }
            }
        }
        assert_eq!(expected, 15);
        assert_eq!(p.m(), 15);
        let base = p
            .edges()
            .iter()
            .filter(|e| p.edge_role(**e) == EdgeRole::BaseEdge)
            .count();
        assert_eq!(base, 3);
    }

    #[test]
    fn subdivision_shapes() {
        let p3 = subdivide_all(&g(2, &[(0, 1)]));
        assert_eq!(p3.edges(), &[Edge(0, 2), Edge(1, 2)]);
        assert_eq!(p3.role(2), Role::Middle);

        let c6 = subdivide_all(&generate(FamilySpec::Cycle(3)).unwrap());
        assert_eq!((c6.n(), c6.m()), (6, 6));
        assert!((0..6).all(|v| c6.degree(v) == 2));
        for e in c6.edges() {
            assert_ne!(c6.role(e.0), c6.role(e.1));
        }

        let p5 = subdivide_all(&generate(FamilySpec::Path(3)).unwrap());
        assert_eq!((p5.n(), p5.m()), (5, 4));
        assert!(p5.is_connected());
    }

    #[test]
    fn pendent_deletion() {
        let p3 = g(3, &[(0, 1), (1, 2)]);
        let r = delete_pendent_edge(&p3, Edge(0, 1)).unwrap();
        assert_eq!((r.graph.n(), r.graph.m()), (1, 0));
        assert_eq!(r.new_to_old, vec![2]);

        let p2 = g(2, &[(0, 1)]);
        assert_eq!(delete_pendent_edge(&p2, Edge(0, 1)).unwrap().graph.n(), 0);

        // C4 on 0..4 plus leaf 4 on 0; deleting {0,4} leaves the path 1-2-3
        let c4l = g(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]);
        let r = delete_pendent_edge(&c4l, Edge(0, 4)).unwrap();
        assert_eq!(r.graph, g(3, &[(0, 1), (1, 2)]));

        let c4 = generate(FamilySpec::Cycle(4)).unwrap();
        assert_eq!(
            delete_pendent_edge(&c4, Edge(0, 1)),
            Err(GraphError::NotPendent(Edge(0, 1)))
        );
    }

    #[test]
    fn edge_edits() {
        let c4 = generate(FamilySpec::Cycle(4)).unwrap();
        let diamond = edit_edge(&c4, Edge(0, 2), EdgeEdit::Add).unwrap().graph;
        assert_eq!(diamond.m(), 5);
        assert_eq!(diamond.degree(0), 3);

        let k3 = generate(FamilySpec::Complete(3)).unwrap();
        let k2 = edit_edge(&k3, Edge(1, 2), EdgeEdit::Contract).unwrap().graph;
        assert_eq!(k2, g(2, &[(0, 1)]));

        let p4 = generate(FamilySpec::Path(4)).unwrap();
        let split = edit_edge(&p4, Edge(1, 2), EdgeEdit::Remove).unwrap().graph;
        assert_eq!(split.components(), vec![vec![0, 1], vec![2, 3]]);

        assert!(edit_edge(&c4, Edge(0, 1), EdgeEdit::Add).is_err());
        assert!(edit_edge(&c4, Edge(0, 2), EdgeEdit::Remove).is_err());
        assert!(edit_edge(&c4, Edge(0, 2), EdgeEdit::Contract).is_err());
    }
}
