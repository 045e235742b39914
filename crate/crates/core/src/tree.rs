//! Rooted weighted bicolored plane trees and their weighted Dyck codes.
//!
//! A tree is walked clockwise from the left bank of the root edge; an edge
//! of weight `i` contributes `x_i` when first followed and `y_i` when
//! followed back. The root edge runs from the black root vertex to a white
//! vertex, so colors are determined by depth parity.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dyck::{DyckError, Step, Token, WeightedDyckWord};
use crate::partition::{Partition, Passport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("the single-vertex tree has no edges")]
    NoEdges,
    #[error("edge weights must be positive")]
    ZeroWeight,
    #[error("vertex at depth {depth} should be {expected:?}")]
    ColorMismatch { depth: usize, expected: Color },
    #[error(transparent)]
    Dyck(#[from] DyckError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

impl Color {
    fn at_depth(depth: usize) -> Color {
        if depth.is_multiple_of(2) {
            Color::Black
        } else {
            Color::White
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Node {
    depth: usize,
    parent_weight: u32,
    children: Vec<usize>,
}

/// A rooted weighted bicolored plane tree.
///
/// Nodes live in an arena in preorder; node 0 is the black root vertex and
/// its first child edge is the root edge. Each vertex lists the edges that
/// follow its parent edge in clockwise order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedTree {
    nodes: Vec<Node>,
}

impl RootedTree {
    pub fn from_dyck(word: &WeightedDyckWord) -> RootedTree {
        let mut nodes = vec![Node {
            depth: 0,
            parent_weight: 0,
            children: Vec::new(),
        }];
        let mut path = vec![0usize];
        for token in word.tokens() {
            match token.step {
                Step::Up => {
                    let parent = *path.last().expect("root stays on the path");
                    let id = nodes.len();
                    nodes.push(Node {
                        depth: path.len(),
                        parent_weight: token.weight,
                        children: Vec::new(),
                    });
                    nodes[parent].children.push(id);
                    path.push(id);
                }
                Step::Down => {
                    path.pop();
                }
            }
        }
        RootedTree { nodes }
    }

    pub fn to_dyck(&self) -> WeightedDyckWord {
        let mut tokens = Vec::with_capacity(2 * self.edge_count());
        // (node, index of the next child to visit)
        let mut stack = vec![(0usize, 0usize)];
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            if let Some(&child) = self.nodes[node].children.get(*next) {
                *next += 1;
                tokens.push(Token::up(self.nodes[child].parent_weight));
                stack.push((child, 0));
            } else {
                stack.pop();
                if node != 0 {
                    tokens.push(Token::down(self.nodes[node].parent_weight));
                }
            }
        }
        WeightedDyckWord::from_tokens_unchecked(tokens)
    }

    /// The tree without edges.
    pub fn single_vertex() -> RootedTree {
        RootedTree::from_dyck(&WeightedDyckWord::empty())
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_single_vertex(&self) -> bool {
        self.nodes.len() == 1
    }

    /// Total weight.
    pub fn weight(&self) -> usize {
        self.nodes.iter().map(|n| n.parent_weight as usize).sum()
    }

    /// Color of the root vertex; `None` for the uncolored single vertex.
    pub fn root_color(&self) -> Option<Color> {
        (!self.is_single_vertex()).then_some(Color::Black)
    }

    /// `(color, degree)` of every vertex, in preorder. Empty for the single vertex.
    pub fn vertices(&self) -> Vec<(Color, usize)> {
        if self.is_single_vertex() {
            return Vec::new();
        }
        self.nodes
            .iter()
            .map(|n| {
                let down: usize = n
                    .children
                    .iter()
                    .map(|&c| self.nodes[c].parent_weight as usize)
                    .sum();
                (Color::at_depth(n.depth), down + n.parent_weight as usize)
            })
            .collect()
    }

    pub fn vertex_count(&self, color: Color) -> usize {
        self.vertices().iter().filter(|(c, _)| *c == color).count()
    }

    pub fn degrees(&self, color: Color) -> Vec<usize> {
        self.vertices()
            .into_iter()
            .filter(|(c, _)| *c == color)
            .map(|(_, d)| d)
            .collect()
    }

    /// Edge weights in traversal order.
    pub fn edge_weights(&self) -> Vec<u32> {
        self.nodes[1..].iter().map(|n| n.parent_weight).collect()
    }

    pub fn passport(&self) -> Result<Passport, TreeError> {
        if self.is_single_vertex() {
            return Err(TreeError::NoEdges);
        }
        let alpha = Partition::new(self.degrees(Color::Black)).expect("degrees are positive");
        let beta = Partition::new(self.degrees(Color::White)).expect("degrees are positive");
        Ok(Passport::new(alpha, beta).expect("both color classes sum to the weight"))
    }

    pub fn weight_distribution(&self) -> Result<Partition, TreeError> {
        if self.is_single_vertex() {
            return Err(TreeError::NoEdges);
        }
        let weights = self
            .edge_weights()
            .into_iter()
            .map(|w| w as usize)
            .collect();
        Ok(Partition::new(weights).expect("edge weights are positive"))
    }

    /// Codes of the tree rooted at each of its edges, in traversal order.
    /// Each new root edge keeps the black-to-white orientation.
    pub fn reroot_all(&self) -> Vec<WeightedDyckWord> {
        let embedding = Embedding::new(self);
        (1..self.nodes.len())
            .map(|id| {
                let (black, white) = if Color::at_depth(self.nodes[id].depth) == Color::White {
                    (embedding.parent[id], id)
                } else {
                    (id, embedding.parent[id])
                };
                embedding.code_from(black, white)
            })
            .collect()
    }

    /// Minimum code over all re-rootings (length first, then lexicographic).
    pub fn canonical_code(&self) -> WeightedDyckWord {
        self.reroot_all()
            .into_iter()
            .min()
            .unwrap_or_else(WeightedDyckWord::empty)
    }

    /// Order of the color-preserving automorphism group: `m` divided by the
    /// number of distinct rooted codes.
    pub fn aut_order(&self) -> Result<usize, TreeError> {
        if self.is_single_vertex() {
            return Err(TreeError::NoEdges);
        }
        let distinct: HashSet<_> = self.reroot_all().into_iter().collect();
        Ok(orbit_quotient(self.edge_count(), distinct.len()))
    }

    pub fn to_node(&self) -> TreeNode {
        fn build(tree: &RootedTree, id: usize) -> TreeNode {
            let node = &tree.nodes[id];
            TreeNode {
                color: tree.root_color().map(|_| Color::at_depth(node.depth)),
                edges: node
                    .children
                    .iter()
                    .map(|&c| TreeEdge {
                        weight: tree.nodes[c].parent_weight,
                        child: build(tree, c),
                    })
                    .collect(),
            }
        }
        build(self, 0)
    }

    /// Rebuilds a tree from its nested form. Colors are optional on input but
    /// must alternate starting from a black root when present.
    pub fn from_node(root: &TreeNode) -> Result<RootedTree, TreeError> {
        let mut tokens = Vec::new();
        let mut stack: Vec<(&TreeNode, usize, usize, u32)> = vec![(root, 0, 0, 0)];
        while let Some(&mut (node, depth, ref mut next, weight)) = stack.last_mut() {
            if *next == 0 {
                if let Some(color) = node.color {
                    let expected = Color::at_depth(depth);
                    if color != expected {
                        return Err(TreeError::ColorMismatch { depth, expected });
                    }
                }
            }
            if let Some(edge) = node.edges.get(*next) {
                *next += 1;
                if edge.weight == 0 {
                    return Err(TreeError::ZeroWeight);
                }
                tokens.push(Token::up(edge.weight));
                stack.push((&edge.child, depth + 1, 0, edge.weight));
            } else {
                stack.pop();
                if depth > 0 {
                    tokens.push(Token::down(weight));
                }
            }
        }
        Ok(RootedTree::from_dyck(&WeightedDyckWord::validate(tokens)?))
    }

    /// JSON-friendly projection of the tree and its invariants.
    pub fn summary(&self) -> Result<TreeSummary, TreeError> {
        let passport = self.passport()?;
        Ok(TreeSummary {
            code: self.to_dyck().to_string(),
            weight: self.weight(),
            edges: self.edge_count(),
            black_vertices: self.vertex_count(Color::Black),
            white_vertices: self.vertex_count(Color::White),
            black_degrees: self.degrees(Color::Black),
            white_degrees: self.degrees(Color::White),
            passport: PassportSummary {
                alpha: passport.alpha().parts().to_vec(),
                beta: passport.beta().parts().to_vec(),
            },
            weight_distribution: self.weight_distribution()?.parts().to_vec(),
            aut_order: self.aut_order()?,
            canonical_code: self.canonical_code().to_string(),
            tree: self.to_node(),
        })
    }
}

fn orbit_quotient(edges: usize, orbits: usize) -> usize {
    assert!(
        orbits > 0 && edges.is_multiple_of(orbits),
        "{edges} edges split into {orbits} rooting classes of unequal size"
    );
    edges / orbits
}

/// Nested tree form used for JSON input and output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNode {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<Color>,
    #[serde(default)]
    pub edges: Vec<TreeEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeEdge {
    pub weight: u32,
    pub child: TreeNode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PassportSummary {
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeSummary {
    pub code: String,
    pub weight: usize,
    pub edges: usize,
    pub black_vertices: usize,
    pub white_vertices: usize,
    pub black_degrees: Vec<usize>,
    pub white_degrees: Vec<usize>,
    pub passport: PassportSummary,
    pub weight_distribution: Vec<usize>,
    pub aut_order: usize,
    pub canonical_code: String,
    pub tree: TreeNode,
}

/// Unrooted view: each vertex's incident edges in clockwise order.
struct Embedding {
    parent: Vec<usize>,
    /// (neighbor, weight, index of the reverse entry in the neighbor's list)
    adj: Vec<Vec<(usize, u32, usize)>>,
}

impl Embedding {
    fn new(tree: &RootedTree) -> Self {
        let count = tree.nodes.len();
        let mut parent = vec![usize::MAX; count];
        let mut adj: Vec<Vec<(usize, u32, usize)>> = vec![Vec::new(); count];
        // preorder: a node's parent entry is pushed before its children's
        for (id, node) in tree.nodes.iter().enumerate() {
            for &child in &node.children {
                parent[child] = id;
                let weight = tree.nodes[child].parent_weight;
                let at_parent = adj[id].len();
                adj[child].push((id, weight, at_parent));
                adj[id].push((child, weight, 0));
            }
        }
        Embedding { parent, adj }
    }

    /// Code of the tree rooted at the edge `black -> white`.
    fn code_from(&self, black: usize, white: usize) -> WeightedDyckWord {
        let start = self.adj[black]
            .iter()
            .position(|&(v, _, _)| v == white)
            .expect("root edge exists");
        let mut tokens = Vec::with_capacity(2 * (self.adj.len() - 1));
        // (vertex, first entry, entries left, weight of the edge we arrived by)
        let mut stack = vec![(black, start, self.adj[black].len(), 0u32)];
        while let Some(&mut (v, ref mut cursor, ref mut left, arrived)) = stack.last_mut() {
            if *left == 0 {
                stack.pop();
                if !stack.is_empty() {
                    tokens.push(Token::down(arrived));
                }
                continue;
            }
            let degree = self.adj[v].len();
            let (next, weight, back) = self.adj[v][*cursor % degree];
            *cursor += 1;
            *left -= 1;
            tokens.push(Token::up(weight));
            let next_degree = self.adj[next].len();
            stack.push((next, back + 1, next_degree - 1, weight));
        }
        WeightedDyckWord::from_tokens_unchecked(tokens)
    }
}

/// One isomorphism class of unrooted trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnrootedClass {
    pub canonical_code: WeightedDyckWord,
    pub aut_order: usize,
    pub edge_count: usize,
    pub weight: usize,
}

impl UnrootedClass {
    /// Number of non-isomorphic rootings, `m / |Aut|`.
    pub fn rooted_count(&self) -> usize {
        self.edge_count / self.aut_order
    }
}

/// Groups rooted codes into unrooted classes.
///
/// The input must be closed under re-rooting (for instance all words of a
/// given weight); each code is expanded once per class. Classes come back
/// sorted by canonical code.
pub fn classify<I>(words: I) -> Vec<UnrootedClass>
where
    I: IntoIterator<Item = WeightedDyckWord>,
{
    let mut seen: HashSet<WeightedDyckWord> = HashSet::new();
    let mut classes = BTreeMap::new();
    for word in words {
        if word.is_empty() || seen.contains(&word) {
            continue;
        }
        let tree = RootedTree::from_dyck(&word);
        let codes = tree.reroot_all();
        let edge_count = codes.len();
        let canonical = codes.iter().min().expect("at least one edge").clone();
        let mut distinct = 0;
        for code in codes {
            if seen.insert(code) {
                distinct += 1;
            }
        }
        classes.insert(
            canonical.clone(),
            UnrootedClass {
                canonical_code: canonical,
                aut_order: orbit_quotient(edge_count, distinct),
                edge_count,
                weight: tree.weight(),
            },
        );
    }
    classes.into_values().collect()
}

/// All unrooted trees of weight `n`, with automorphism orders.
pub fn unrooted_census(n: usize) -> Vec<UnrootedClass> {
    classify(crate::dyck::enumerate_words(n))
}
