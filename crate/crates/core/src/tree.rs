//! Unlabelled non-planar rooted trees and forests.
//!
//! Trees are hash-consed: every distinct shape is allocated exactly once per
//! process and a [`Tree`] is a copyable handle to it. Equality and hashing are
//! therefore O(1).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock, RwLock};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("tree parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

struct Node {
    id: u32,
    size: u32,
    children: Box<[Tree]>,
    sigma: Option<u64>,
    factorial: Option<u64>,
}

/// A canonical rooted tree. Children are kept in ascending canonical order.
#[derive(Clone, Copy)]
pub struct Tree(&'static Node);

struct Interner {
    map: HashMap<Box<[u32]>, Tree>,
    next: u32,
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(|| {
        RwLock::new(Interner {
            map: HashMap::new(),
            next: 0,
        })
    })
}

fn sigma_of(children: &[Tree]) -> Option<u64> {
    let mut acc: u64 = 1;
    let mut i = 0;
    while i < children.len() {
        let mut j = i;
        while j < children.len() && children[j] == children[i] {
            j += 1;
        }
        let k = (j - i) as u64;
        let s = children[i].0.sigma?;
        for m in 1..=k {
            acc = acc.checked_mul(m)?.checked_mul(s)?;
        }
        i = j;
    }
    Some(acc)
}

fn factorial_of(size: u32, children: &[Tree]) -> Option<u64> {
    children
        .iter()
        .try_fold(size as u64, |acc, c| acc.checked_mul(c.0.factorial?))
}

impl Tree {
    /// Interns the tree with the given children (in any order).
    pub fn new(mut children: Vec<Tree>) -> Tree {
        children.sort();
        let key: Box<[u32]> = children.iter().map(|c| c.0.id).collect();
        if let Some(t) = interner().read().expect("tree interner poisoned").map.get(&key) {
            return *t;
        }
        let mut table = interner().write().expect("tree interner poisoned");
        if let Some(t) = table.map.get(&key) {
            return *t;
        }
        let size = 1 + children.iter().map(|c| c.0.size).sum::<u32>();
        let node = Node {
            id: table.next,
            size,
            sigma: sigma_of(&children),
            factorial: factorial_of(size, &children),
            children: children.into_boxed_slice(),
        };
        table.next += 1;
        let tree = Tree(Box::leak(Box::new(node)));
        table.map.insert(key, tree);
        tree
    }

    /// The single-vertex tree •.
    pub fn leaf() -> Tree {
        static LEAF: OnceLock<Tree> = OnceLock::new();
        *LEAF.get_or_init(|| Tree::new(Vec::new()))
    }

    /// `[τ₁ … τₖ]`: a new root grafted onto every tree of the forest.
    pub fn b_plus(forest: &Forest) -> Tree {
        Tree::new(forest.trees().to_vec())
    }

    /// The chain (tall tree) with `n` vertices.
    pub fn chain(n: usize) -> Tree {
        assert!(n >= 1, "a tree has at least one vertex");
        (1..n).fold(Tree::leaf(), |t, _| Tree::new(vec![t]))
    }

    /// The bushy tree: a root with `n - 1` leaves.
    pub fn bushy(n: usize) -> Tree {
        assert!(n >= 1, "a tree has at least one vertex");
        Tree::new(vec![Tree::leaf(); n - 1])
    }

    pub fn id(self) -> u32 {
        self.0.id
    }

    pub fn size(self) -> usize {
        self.0.size as usize
    }

    pub fn children(self) -> &'static [Tree] {
        &self.0.children
    }

    /// The forest obtained by deleting the root.
    pub fn children_forest(self) -> Forest {
        Forest(self.0.children.to_vec())
    }

    pub fn is_leaf(self) -> bool {
        self.0.children.is_empty()
    }

    /// Symmetry factor σ(τ).
    pub fn sigma(self) -> u64 {
        self.0.sigma.expect("symmetry factor exceeds u64")
    }

    /// Tree factorial τ!.
    pub fn factorial(self) -> u64 {
        self.0.factorial.expect("tree factorial exceeds u64")
    }

    /// Parent array in depth-first preorder; the root has parent `None`.
    pub fn parents(self) -> Vec<Option<usize>> {
        fn walk(t: Tree, parent: Option<usize>, out: &mut Vec<Option<usize>>) {
            let me = out.len();
            out.push(parent);
            for &c in t.children() {
                walk(c, Some(me), out);
            }
        }
        let mut out = Vec::with_capacity(self.size());
        walk(self, None, &mut out);
        out
    }

    pub fn encoding(self) -> String {
        let mut s = String::with_capacity(2 * self.size());
        self.write_encoding(&mut s);
        s
    }

    fn write_encoding(self, out: &mut String) {
        out.push('(');
        for &c in self.children() {
            c.write_encoding(out);
        }
        out.push(')');
    }

    pub fn parse(text: &str) -> Result<Tree, ParseError> {
        let mut p = TreeParser::new(text);
        p.skip_ws();
        let t = p.tree()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(t)
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for Tree {}

impl Hash for Tree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.id.hash(state);
    }
}

impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.0
            .size
            .cmp(&other.0.size)
            .then_with(|| self.children().cmp(other.children()))
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree{}", self.encoding())
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encoding())
    }
}

impl std::str::FromStr for Tree {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Tree::parse(s)
    }
}

struct TreeParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> TreeParser<'a> {
    fn new(text: &'a str) -> Self {
        TreeParser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, message: &str) -> ParseError {
        ParseError {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn tree(&mut self) -> Result<Tree, ParseError> {
        if self.src.get(self.pos) != Some(&b'(') {
            return Err(self.error("expected '('"));
        }
        self.pos += 1;
        let mut children = Vec::new();
        loop {
            self.skip_ws();
            match self.src.get(self.pos) {
                Some(b'(') => children.push(self.tree()?),
                Some(b')') => {
                    self.pos += 1;
                    return Ok(Tree::new(children));
                }
                Some(_) => return Err(self.error("unexpected character")),
                None => return Err(self.error("unbalanced parentheses")),
            }
        }
    }
}

/// A commutative product of trees, stored sorted. The empty forest is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Forest(Vec<Tree>);

impl Forest {
    pub fn new(mut trees: Vec<Tree>) -> Forest {
        trees.sort();
        Forest(trees)
    }

    pub fn empty() -> Forest {
        Forest(Vec::new())
    }

    pub fn single(t: Tree) -> Forest {
        Forest(vec![t])
    }

    pub fn trees(&self) -> &[Tree] {
        &self.0
    }

    pub fn into_trees(self) -> Vec<Tree> {
        self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Total vertex count.
    pub fn size(&self) -> usize {
        self.0.iter().map(|t| t.size()).sum()
    }

    pub fn as_tree(&self) -> Option<Tree> {
        match self.0.as_slice() {
            [t] => Some(*t),
            _ => None,
        }
    }

    /// Juxtaposition, merging the two sorted lists.
    pub fn mul(&self, other: &Forest) -> Forest {
        if self.0.is_empty() {
            return other.clone();
        }
        if other.0.is_empty() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] <= other.0[j] {
                out.push(self.0[i]);
                i += 1;
            } else {
                out.push(other.0[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Forest(out)
    }

    pub fn push(&mut self, t: Tree) {
        let at = self.0.partition_point(|x| *x <= t);
        self.0.insert(at, t);
    }

    pub fn sigma(&self) -> u64 {
        let mut acc: u64 = 1;
        let mut i = 0;
        while i < self.0.len() {
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            for m in 1..=(j - i) as u64 {
                acc = acc
                    .checked_mul(m * self.0[i].sigma())
                    .expect("symmetry factor exceeds u64");
            }
            i = j;
        }
        acc
    }

    pub fn factorial(&self) -> u64 {
        self.0.iter().fold(1u64, |acc, t| {
            acc.checked_mul(t.factorial())
                .expect("tree factorial exceeds u64")
        })
    }

    /// Concatenated tree encodings; `1` for the empty forest.
    pub fn encoding(&self) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0.iter().map(|t| t.encoding()).collect()
    }

    pub fn parse(text: &str) -> Result<Forest, ParseError> {
        let trimmed = text.trim();
        if trimmed == "1" || trimmed.is_empty() {
            return Ok(Forest::empty());
        }
        let mut p = TreeParser::new(text);
        let mut trees = Vec::new();
        p.skip_ws();
        while p.pos < p.src.len() {
            trees.push(p.tree()?);
            p.skip_ws();
        }
        Ok(Forest::new(trees))
    }
}

impl Ord for Forest {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.0.len().cmp(&other.0.len()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Forest {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Forest{}", self.encoding())
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encoding())
    }
}

impl From<Tree> for Forest {
    fn from(t: Tree) -> Self {
        Forest::single(t)
    }
}

impl FromIterator<Tree> for Forest {
    fn from_iter<I: IntoIterator<Item = Tree>>(iter: I) -> Self {
        Forest::new(iter.into_iter().collect())
    }
}

type ByCount = RwLock<HashMap<usize, Arc<[Tree]>>>;

fn tree_cache() -> &'static ByCount {
    static CACHE: OnceLock<ByCount> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// All trees with exactly `n` vertices, in canonical order.
pub fn enumerate_trees(n: usize) -> Arc<[Tree]> {
    assert!(n >= 1, "trees have at least one vertex");
    if let Some(v) = tree_cache().read().expect("tree cache poisoned").get(&n) {
        return v.clone();
    }
    let mut trees: Vec<Tree> = forests_of_size(n - 1, usize::MAX)
        .into_iter()
        .map(|f| Tree::b_plus(&f))
        .collect();
    trees.sort();
    let trees: Arc<[Tree]> = trees.into();
    tree_cache()
        .write()
        .expect("tree cache poisoned")
        .insert(n, trees.clone());
    trees
}

/// All trees with between 1 and `n` vertices, grouped by size.
pub fn trees_up_to(n: usize) -> Vec<Tree> {
    (1..=n).flat_map(|k| enumerate_trees(k).to_vec()).collect()
}

/// Forests of total size `n` whose trees all have at most `max_part` vertices.
fn forests_of_size(n: usize, max_part: usize) -> Vec<Forest> {
    // Generate multisets as non-increasing sequences of (size, index) pairs.
    fn go(
        remaining: usize,
        bound: (usize, usize),
        current: &mut Vec<Tree>,
        out: &mut Vec<Forest>,
    ) {
        if remaining == 0 {
            out.push(Forest::new(current.clone()));
            return;
        }
        let top = remaining.min(bound.0);
        for size in (1..=top).rev() {
            let candidates = enumerate_trees(size);
            let limit = if size == bound.0 {
                bound.1 + 1
            } else {
                candidates.len()
            };
            for idx in (0..limit.min(candidates.len())).rev() {
                current.push(candidates[idx]);
                go(remaining - size, (size, idx), current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Forest::empty());
        return out;
    }
    let top = max_part.min(n);
    go(n, (top, usize::MAX - 1), &mut Vec::new(), &mut out);
    out
}
