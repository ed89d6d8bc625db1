use std::fmt;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

use super::matrix::IndicatorMatrix;

/// Strongly connected components of the directed graph on `0..n` with an
/// edge `a → b` wherever `edge(a, b)`. Members of each component are sorted.
pub(crate) fn strongly_connected(n: usize, edge: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut g = DiGraph::<(), ()>::with_capacity(n, n * n / 2);
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for a in 0..n {
        for b in 0..n {
            if a != b && edge(a, b) {
                g.add_edge(nodes[a], nodes[b], ());
            }
        }
    }
    tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|x| x.index()).collect();
            v.sort_unstable();
            v
        })
        .collect()
}

/// Ordered partition produced by the transitive closure; `classes[0]` is the
/// top class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Closure {
    pub classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl Closure {
    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Closure indicator: +1 when `i` sits in a strictly higher class.
    pub fn relation(&self, i: usize, j: usize) -> i8 {
        match self.class_of[i].cmp(&self.class_of[j]) {
            std::cmp::Ordering::Less => 1,
            std::cmp::Ordering::Greater => -1,
            std::cmp::Ordering::Equal => 0,
        }
    }

    pub fn as_indicator(&self, ind: &IndicatorMatrix) -> IndicatorMatrix {
        IndicatorMatrix::from_fn(ind.elements().clone(), |i, j| self.relation(i, j))
    }

    /// Five-way classification of the pair `(a, b)` given the raw relation.
    pub fn classify_pair(&self, ind: &IndicatorMatrix, a: usize, b: usize) -> PairClass {
        let same = self.class_of[a] == self.class_of[b];
        match (ind.get(a, b), same) {
            (0, _) => PairClass::Equivalent,
            (1, true) => PairClass::WeaklyBetter,
            (1, false) => PairClass::MuchBetter,
            (_, true) => PairClass::WeaklyWorse,
            (_, false) => PairClass::MuchWorse,
        }
    }
}

/// Minimal transitive coarsening of a sharp relation: elements on a common
/// cycle of the weak-preference graph collapse into one class, and the
/// classes are totally ordered.
pub fn transitive_closure(ind: &IndicatorMatrix) -> Closure {
    let n = ind.len();
    let mut classes = strongly_connected(n, |a, b| ind.get(a, b) >= 0);
    // Between two distinct components every pair points the same way, so a
    // representative's strict wins over outsiders fix the order.
    let score = |c: &Vec<usize>| {
        let r = c[0];
        (0..n)
            .filter(|&x| ind.get(r, x) > 0 && !c.contains(&x))
            .count()
    };
    classes.sort_by_cached_key(|c| (std::cmp::Reverse(score(c)), c[0]));
    let mut class_of = vec![0; n];
    for (k, c) in classes.iter().enumerate() {
        for &i in c {
            class_of[i] = k;
        }
    }
    Closure { classes, class_of }
}

/// Raw relation combined with the closure relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairClass {
    #[serde(rename = "≺≺")]
    MuchWorse,
    #[serde(rename = "≼")]
    WeaklyWorse,
    #[serde(rename = "∼")]
    Equivalent,
    #[serde(rename = "≽")]
    WeaklyBetter,
    #[serde(rename = "≻≻")]
    MuchBetter,
}

impl PairClass {
    pub fn symbol(self) -> &'static str {
        match self {
            PairClass::MuchWorse => "≺≺",
            PairClass::WeaklyWorse => "≼",
            PairClass::Equivalent => "∼",
            PairClass::WeaklyBetter => "≽",
            PairClass::MuchBetter => "≻≻",
        }
    }
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

pub fn classify_pair(ind: &IndicatorMatrix, a: usize, b: usize) -> PairClass {
    transitive_closure(ind).classify_pair(ind, a, b)
}
