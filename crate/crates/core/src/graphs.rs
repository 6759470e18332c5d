//! The four fertile constraint graphs on the state set {0, 1, 2}.
//!
//! State 0 is a vacant vertex, states 1 and 2 are the two occupied states.
//! A configuration is admissible for a graph when every tree edge carries a
//! pair of states that is an edge (or loop) of that graph.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::oracle::FiniteTree;

/// A single-site state in {0, 1, 2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct State(u8);

impl State {
    pub const VACANT: State = State(0);
    pub const ONE: State = State(1);
    pub const TWO: State = State(2);
    pub const ALL: [State; 3] = [State(0), State(1), State(2)];

    pub fn new(value: u8) -> Option<Self> {
        (value < 3).then_some(State(value))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_occupied(self) -> bool {
        self.0 != 0
    }
}

impl TryFrom<u8> for State {
    type Error = u8;

    fn try_from(value: u8) -> Result<Self, u8> {
        State::new(value).ok_or(value)
    }
}

impl From<State> for u8 {
    fn from(s: State) -> u8 {
        s.0
    }
}

pub type Adjacency = [[u8; 3]; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FertileGraph {
    /// Edges {0,0} {0,1} {0,2} {1,1} {2,2}.
    Loop,
    /// Edges {0,1} {0,2} {1,1} {2,2}.
    Rod,
    /// Edges {0,0} {0,1} {0,2} {1,1}.
    Key,
    /// Edges {0,0} {0,1} {1,2}.
    Whistle,
}

const LOOP: Adjacency = [[1, 1, 1], [1, 1, 0], [1, 0, 1]];
const ROD: Adjacency = [[0, 1, 1], [1, 1, 0], [1, 0, 1]];
const KEY: Adjacency = [[1, 1, 1], [1, 1, 0], [1, 0, 0]];
const WHISTLE: Adjacency = [[1, 1, 0], [1, 0, 1], [0, 1, 0]];

impl FertileGraph {
    pub const ALL: [FertileGraph; 4] = [
        FertileGraph::Loop,
        FertileGraph::Rod,
        FertileGraph::Key,
        FertileGraph::Whistle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FertileGraph::Loop => "loop",
            FertileGraph::Rod => "rod",
            FertileGraph::Key => "key",
            FertileGraph::Whistle => "whistle",
        }
    }

    pub fn adjacency(self) -> &'static Adjacency {
        adjacency_matrix(self)
    }

    /// Entry a_ij as a float, for use in the recursion.
    #[inline]
    pub fn a(self, i: usize, j: usize) -> f64 {
        f64::from(self.adjacency()[i][j])
    }

    /// Loop and rod are invariant under exchanging states 1 and 2.
    pub fn is_swap_symmetric(self) -> bool {
        matches!(self, FertileGraph::Loop | FertileGraph::Rod)
    }
}

pub fn adjacency_matrix(kind: FertileGraph) -> &'static Adjacency {
    match kind {
        FertileGraph::Loop => &LOOP,
        FertileGraph::Rod => &ROD,
        FertileGraph::Key => &KEY,
        FertileGraph::Whistle => &WHISTLE,
    }
}

#[inline]
pub fn is_admissible_pair(g: FertileGraph, s: State, t: State) -> bool {
    g.adjacency()[s.index()][t.index()] == 1
}

/// Checks every edge of `tree` against `g`. `sigma` is indexed by the
/// tree's vertex numbering (level order).
pub fn is_admissible_configuration(g: FertileGraph, tree: &FiniteTree, sigma: &[State]) -> bool {
    assert_eq!(
        sigma.len(),
        tree.num_vertices(),
        "configuration must assign a state to every vertex"
    );
    tree.edges()
        .all(|(parent, child)| is_admissible_pair(g, sigma[parent], sigma[child]))
}

impl fmt::Display for FertileGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownGraph(pub String);

impl fmt::Display for UnknownGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown graph '{}', expected one of: loop, rod, key, whistle",
            self.0
        )
    }
}

impl std::error::Error for UnknownGraph {}

impl FromStr for FertileGraph {
    type Err = UnknownGraph;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "loop" => Ok(FertileGraph::Loop),
            "rod" => Ok(FertileGraph::Rod),
            "key" => Ok(FertileGraph::Key),
            "whistle" => Ok(FertileGraph::Whistle),
            other => Err(UnknownGraph(other.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_set(g: FertileGraph) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for i in 0..3 {
            for j in i..3 {
                if g.adjacency()[i][j] == 1 {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    #[test]
    fn matrices_match_edge_lists() {
        assert_eq!(
            edge_set(FertileGraph::Loop),
            vec![(0, 0), (0, 1), (0, 2), (1, 1), (2, 2)]
        );
        assert_eq!(
            edge_set(FertileGraph::Rod),
            vec![(0, 1), (0, 2), (1, 1), (2, 2)]
        );
        assert_eq!(
            edge_set(FertileGraph::Key),
            vec![(0, 0), (0, 1), (0, 2), (1, 1)]
        );
        assert_eq!(
            edge_set(FertileGraph::Whistle),
            vec![(0, 0), (0, 1), (1, 2)]
        );
    }

    #[test]
    fn explicit_rows() {
        assert_eq!(
            adjacency_matrix(FertileGraph::Loop),
            &[[1, 1, 1], [1, 1, 0], [1, 0, 1]]
        );
        assert_eq!(
            adjacency_matrix(FertileGraph::Rod),
            &[[0, 1, 1], [1, 1, 0], [1, 0, 1]]
        );
        assert_eq!(
            adjacency_matrix(FertileGraph::Whistle),
            &[[1, 1, 0], [1, 0, 1], [0, 1, 0]]
        );
    }

    #[test]
    fn symmetric_and_no_isolated_state() {
        for g in FertileGraph::ALL {
            let a = g.adjacency();
            for (i, row) in a.iter().enumerate() {
                assert!(row.contains(&1), "{g}: state {i} isolated");
                for (j, &v) in row.iter().enumerate() {
                    assert_eq!(v, a[j][i]);
                    let (s, t) = (State::ALL[i], State::ALL[j]);
                    assert_eq!(is_admissible_pair(g, s, t), is_admissible_pair(g, t, s));
                }
            }
        }
    }

    #[test]
    fn admissible_pairs() {
        assert!(!is_admissible_pair(
            FertileGraph::Loop,
            State::ONE,
            State::TWO
        ));
        assert!(is_admissible_pair(
            FertileGraph::Key,
            State::VACANT,
            State::VACANT
        ));
        assert!(!is_admissible_pair(
            FertileGraph::Rod,
            State::VACANT,
            State::VACANT
        ));
    }

    #[test]
    fn configurations_on_trees() {
        let tree = FiniteTree::new(2, 2);
        let zeros = vec![State::VACANT; tree.num_vertices()];
        assert!(is_admissible_configuration(
            FertileGraph::Loop,
            &tree,
            &zeros
        ));
        assert!(!is_admissible_configuration(
            FertileGraph::Rod,
            &tree,
            &zeros
        ));

        let single = FiniteTree::new(3, 0);
        for g in FertileGraph::ALL {
            for s in State::ALL {
                assert!(is_admissible_configuration(g, &single, &[s]));
            }
        }
    }

    #[test]
    fn parse_names() {
        for g in FertileGraph::ALL {
            assert_eq!(g.name().parse::<FertileGraph>().unwrap(), g);
        }
        assert!("Loop".parse::<FertileGraph>().is_err());
        assert_eq!(State::new(3), None);
    }
}
