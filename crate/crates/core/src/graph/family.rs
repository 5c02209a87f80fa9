use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

/// Named graph family with its size parameter.
///
/// Labelings are canonical:
/// * `Star(n)` is `K_{1,n-1}` centred at 0.
/// * `Wheel(n)` has hub 0 and rim `1..n`.
/// * `StarPlusMatching(m)` has `a_i = i-1` and `b_i = m+i-1`; `a_1` is
///   universal and `a_i b_i` is an edge for `i >= 2`.
/// * `K4MinusStar(m)` has centre 0, free leaf 1, and gadget `j` on
///   `2+4j..2+4j+3`; the gadget's first vertex is the star leaf and the edge
///   between its first and last vertex is the missing one.
/// * `Bowtie` is two triangles `{0,1,2}` and `{0,3,4}` sharing vertex 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "size", rename_all = "snake_case")]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Star(usize),
    Wheel(usize),
    StarPlusMatching(usize),
    K4MinusStar(usize),
    Bowtie,
}

impl FamilySpec {
    /// Parses a family name as used on the command line.
    pub fn from_name(name: &str, size: usize) -> Result<FamilySpec, GraphError> {
        Ok(match name {
            "path" => FamilySpec::Path(size),
            "cycle" => FamilySpec::Cycle(size),
            "complete" => FamilySpec::Complete(size),
            "star" => FamilySpec::Star(size),
            "wheel" => FamilySpec::Wheel(size),
            "star_plus_matching" | "star-plus-matching" => FamilySpec::StarPlusMatching(size),
            "k4_minus_star" | "k4-minus-star" => FamilySpec::K4MinusStar(size),
            "bowtie" => FamilySpec::Bowtie,
            other => return Err(GraphError::Family(format!("unknown family `{other}`"))),
        })
    }

    fn minimum(self) -> (usize, usize) {
        match self {
            FamilySpec::Path(s)
            | FamilySpec::Complete(s)
            | FamilySpec::Star(s)
            | FamilySpec::StarPlusMatching(s)
            | FamilySpec::K4MinusStar(s) => (s, 1),
            FamilySpec::Cycle(s) => (s, 3),
            FamilySpec::Wheel(s) => (s, 4),
            FamilySpec::Bowtie => (1, 1),
        }
    }
}

pub fn generate(spec: FamilySpec) -> Result<Graph, GraphError> {
    let (size, min) = spec.minimum();
    if size < min {
        return Err(GraphError::Family(format!(
            "{spec:?}: size must be at least {min}"
        )));
    }
    let (n, edges): (usize, Vec<(usize, usize)>) = match spec {
        FamilySpec::Path(n) => (n, (1..n).map(|i| (i - 1, i)).collect()),
        FamilySpec::Cycle(n) => (n, (0..n).map(|i| (i, (i + 1) % n)).collect()),
        FamilySpec::Complete(n) => (
            n,
            (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect(),
        ),
        FamilySpec::Star(n) => (n, (1..n).map(|i| (0, i)).collect()),
        FamilySpec::Wheel(n) => {
            let rim = n - 1;
            let mut e: Vec<_> = (1..n).map(|i| (0, i)).collect();
            e.extend((0..rim).map(|i| (1 + i, 1 + (i + 1) % rim)));
            (n, e)
        }
        FamilySpec::StarPlusMatching(m) => {
            let mut e: Vec<_> = (1..2 * m).map(|x| (0, x)).collect();
            e.extend((1..m).map(|i| (i, m + i)));
            (2 * m, e)
        }
        FamilySpec::K4MinusStar(m) => {
            let mut e = vec![(0, 1)];
            for j in 0..m {
                let [x, y, z, w] = [2 + 4 * j, 3 + 4 * j, 4 + 4 * j, 5 + 4 * j];
                e.extend([(0, x), (x, y), (x, z), (y, z), (w, y), (w, z)]);
            }
            (4 * m + 2, e)
        }
        FamilySpec::Bowtie => (5, vec![(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]),
    };
    Graph::new(n, edges)
}
