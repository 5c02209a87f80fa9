use super::FamilyError;
use crate::graph::{classify, Graph};
use crate::report::{Method, Parameter, ParameterResult, Witness};
use crate::search::{Action, Strategy};

/// Postorder pairing on each component of a forest: a vertex is paired with
/// its lowest unpaired child, if any. With `k` pairs the value is `n - k`;
/// the strategy places on every paired child and every unpaired vertex, then
/// slides each paired child to its parent in pairing order.
pub fn tree_solve(t: &Graph) -> Result<ParameterResult, FamilyError> {
    if !classify(t).is_forest {
        return Err(FamilyError::NotForest);
    }
    let n = t.n();
    let mut paired = vec![false; n];
    let mut seen = vec![false; n];
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        // (vertex, parent, next neighbour index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, parent, i) = *top;
            if let Some(&w) = t.neighbors(v).get(i) {
                top.2 += 1;
                if w != parent {
                    seen[w] = true;
                    stack.push((w, v, 0));
                }
                continue;
            }
            stack.pop();
            if let Some(&c) = t
                .neighbors(v)
                .iter()
                .find(|&&c| c != parent && !paired[c])
            {
                paired[v] = true;
                paired[c] = true;
                pairs.push((c, v));
            }
        }
    }
    let parents: Vec<bool> = {
        let mut p = vec![false; n];
        for &(_, u) in &pairs {
            p[u] = true;
        }
        p
    };
    let mut actions: Vec<Action> = (0..n).filter(|&v| !parents[v]).map(Action::Place).collect();
    actions.extend(pairs.iter().map(|&(c, u)| Action::Slide(c, u)));
    Ok(ParameterResult {
        parameter: Parameter::Czf,
        value: n - pairs.len(),
        method: Method::Tree,
        witness: Witness::Strategy {
            strategy: Strategy::new(actions),
        },
    })
}
