//! Rooted trees as parent arrays, canonical shape keys, and the combinatorial
//! invariants built on them (matching number, leaves/quasipendants, fringe
//! counting, automorphisms).
//!
//! Trees are value types: every operation here is a pure function of its
//! inputs and trees can be shared freely across threads.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

/// Errors from tree construction and parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("empty parent list")]
    Empty,
    #[error("no root: every vertex has a parent")]
    NoRoot,
    #[error("multiple roots: vertices {0} and {1} both lack a parent")]
    MultipleRoots(usize, usize),
    #[error("parent index {parent} of vertex {vertex} is out of range for {n} vertices")]
    ParentOutOfRange { vertex: usize, parent: usize, n: usize },
    #[error("parent links contain a cycle through vertex {0}")]
    Cycle(usize),
    #[error("vertex index {vertex} is out of range for {n} vertices")]
    BadVertex { vertex: usize, n: usize },
    #[error("attach target vertex {0} listed twice")]
    DuplicateAttachVertex(usize),
    #[error("malformed tree input: {0}")]
    Parse(String),
}

/// A rooted tree on `n` vertices stored as a parent array.
///
/// The root has no parent. Trees produced by the growth processes in
/// [`crate::gen`] always have root 0 and `parent[i] < i`; trees parsed from
/// user input may have the root anywhere. Binary increasing trees carry an
/// extra left/right slot table so that plane (ordered) isomorphism can
/// distinguish a left-only child from a right-only child.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    parent: Vec<Option<u32>>,
    children: Vec<Vec<u32>>,
    root: u32,
    slots: Option<Vec<[Option<u32>; 2]>>,
}

impl RootedTree {
    /// Validates a parent array (exactly one `None`, all parents in range,
    /// no cycles) and builds the tree.
    pub fn from_parents(parents: &[Option<usize>]) -> Result<Self, TreeError> {
        let n = parents.len();
        if n == 0 {
            return Err(TreeError::Empty);
        }
        let mut root = None;
        for (v, p) in parents.iter().enumerate() {
            match p {
                None => match root {
                    None => root = Some(v),
                    Some(r) => return Err(TreeError::MultipleRoots(r, v)),
                },
                Some(p) => {
                    if *p >= n {
                        return Err(TreeError::ParentOutOfRange { vertex: v, parent: *p, n });
                    }
                }
            }
        }
        let root = root.ok_or(TreeError::NoRoot)?;
        // Walk each vertex to the root, marking visited prefixes. A vertex that
        // reappears on its own walk closes a cycle.
        let mut state = vec![0u8; n]; // 0 unseen, 1 on current walk, 2 done
        for start in 0..n {
            if state[start] == 2 {
                continue;
            }
            let mut path = Vec::new();
            let mut v = start;
            loop {
                if state[v] == 2 {
                    break;
                }
                if state[v] == 1 {
                    return Err(TreeError::Cycle(v));
                }
                state[v] = 1;
                path.push(v);
                match parents[v] {
                    Some(p) => v = p,
                    None => break,
                }
            }
            for u in path {
                state[u] = 2;
            }
        }
        let mut children = vec![Vec::new(); n];
        for (v, p) in parents.iter().enumerate() {
            if let Some(p) = p {
                children[*p].push(v as u32);
            }
        }
        Ok(RootedTree {
            parent: parents.iter().map(|p| p.map(|p| p as u32)).collect(),
            children,
            root: root as u32,
            slots: None,
        })
    }

    /// Single-vertex tree.
    pub fn singleton() -> Self {
        RootedTree {
            parent: vec![None],
            children: vec![Vec::new()],
            root: 0,
            slots: Some(vec![[None, None]]),
        }
    }

    /// Builds a plane binary tree from a slot table (`slots[v] = [left, right]`).
    /// Vertex 0 is the root; every other vertex must appear in exactly one
    /// slot and the parent links must be acyclic.
    pub fn from_binary_slots(slots: Vec<[Option<u32>; 2]>) -> Result<Self, TreeError> {
        let n = slots.len();
        if n == 0 {
            return Err(TreeError::Empty);
        }
        let mut parents: Vec<Option<usize>> = vec![None; n];
        for (v, [l, r]) in slots.iter().enumerate() {
            for c in [l, r].into_iter().flatten() {
                let c = *c as usize;
                if c >= n {
                    return Err(TreeError::BadVertex { vertex: c, n });
                }
                if parents[c].is_some() || c == 0 {
                    return Err(TreeError::Parse(format!(
                        "vertex {c} appears in more than one slot or is the root"
                    )));
                }
                parents[c] = Some(v);
            }
        }
        let mut tree = RootedTree::from_parents(&parents)?;
        // from_parents ordered children by vertex index; restore plane order
        for (v, [l, r]) in slots.iter().enumerate() {
            tree.children[v] = [l, r].into_iter().flatten().copied().collect();
        }
        tree.slots = Some(slots);
        Ok(tree)
    }

    pub(crate) fn from_slots(slots: Vec<[Option<u32>; 2]>) -> Self {
        RootedTree::from_binary_slots(slots).expect("growth process slots are valid")
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees n >= 1
    }

    pub fn root(&self) -> usize {
        self.root as usize
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v].map(|p| p as usize)
    }

    /// Children of `v` in plane order.
    pub fn children(&self, v: usize) -> &[u32] {
        &self.children[v]
    }

    /// Left/right child slots when the tree carries plane binary structure.
    pub fn slots(&self, v: usize) -> Option<[Option<u32>; 2]> {
        self.slots.as_ref().map(|s| s[v])
    }

    pub fn has_slots(&self) -> bool {
        self.slots.is_some()
    }

    /// Degree in the unrooted sense (children plus parent edge).
    pub fn degree(&self, v: usize) -> usize {
        self.children[v].len() + usize::from(self.parent[v].is_some())
    }

    /// Vertices in post order; the root is always last.
    pub fn post_order(&self) -> Vec<u32> {
        let n = self.len();
        let mut out = Vec::with_capacity(n);
        let mut stack = vec![(self.root, false)];
        while let Some((v, expanded)) = stack.pop() {
            if expanded {
                out.push(v);
            } else {
                stack.push((v, true));
                for &c in &self.children[v as usize] {
                    stack.push((c, false));
                }
            }
        }
        debug_assert_eq!(out.len(), n);
        out
    }

    /// Depth of every vertex (root has depth 0).
    pub fn depths(&self) -> Vec<u32> {
        let n = self.len();
        let mut depth = vec![0u32; n];
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            for &c in &self.children[v as usize] {
                depth[c as usize] = depth[v as usize] + 1;
                stack.push(c);
            }
        }
        depth
    }

    /// Size of the fringe subtree at every vertex.
    pub fn subtree_sizes(&self) -> Vec<u32> {
        let mut size = vec![1u32; self.len()];
        for v in self.post_order() {
            if let Some(p) = self.parent[v as usize] {
                size[p as usize] += size[v as usize];
            }
        }
        size
    }

    /// The fringe subtree rooted at `v` (vertex `v` and all descendants),
    /// relabeled to a standalone tree. Plane slot structure is preserved.
    pub fn fringe_subtree(&self, v: usize) -> Self {
        let mut order = Vec::new();
        let mut stack = vec![v as u32];
        while let Some(u) = stack.pop() {
            order.push(u);
            for &c in &self.children[u as usize] {
                stack.push(c);
            }
        }
        let mut remap = vec![u32::MAX; self.len()];
        for (i, &u) in order.iter().enumerate() {
            remap[u as usize] = i as u32;
        }
        let mut parent = vec![None; order.len()];
        let mut children = vec![Vec::new(); order.len()];
        for &u in &order {
            let nu = remap[u as usize] as usize;
            if u as usize != v {
                let p = remap[self.parent[u as usize].unwrap() as usize];
                parent[nu] = Some(p);
            }
            children[nu] = self.children[u as usize].iter().map(|&c| remap[c as usize]).collect();
        }
        let slots = self.slots.as_ref().map(|slots| {
            order
                .iter()
                .map(|&u| slots[u as usize].map(|s| s.map(|c| remap[c as usize])))
                .collect()
        });
        RootedTree { parent, children, root: remap[v], slots }
    }

    /// Root branches as standalone rooted trees.
    pub fn branches(&self) -> Vec<Self> {
        self.children[self.root as usize]
            .iter()
            .map(|&c| self.fringe_subtree(c as usize))
            .collect()
    }

    /// Joins `count` fresh copies of `pattern` below each listed vertex
    /// (each copy's root becomes a new child of the vertex).
    pub fn attach_copies(
        &self,
        assignments: &[(usize, usize)],
        pattern: &RootedTree,
    ) -> Result<Self, TreeError> {
        let n = self.len();
        let mut seen = vec![false; n];
        for &(v, _) in assignments {
            if v >= n {
                return Err(TreeError::BadVertex { vertex: v, n });
            }
            if seen[v] {
                return Err(TreeError::DuplicateAttachVertex(v));
            }
            seen[v] = true;
        }
        let mut parents: Vec<Option<usize>> =
            (0..n).map(|v| self.parent(v)).collect();
        for &(v, count) in assignments {
            for _ in 0..count {
                let offset = parents.len();
                for u in 0..pattern.len() {
                    parents.push(match pattern.parent(u) {
                        Some(p) => Some(offset + p),
                        None => Some(v),
                    });
                }
            }
        }
        RootedTree::from_parents(&parents)
    }

    /// Line format `n p2 p3 ... pn` with 1-based parents; vertex 1 is the root.
    pub fn from_line(line: &str) -> Result<Self, TreeError> {
        let mut toks = line.split_whitespace();
        let n: usize = toks
            .next()
            .ok_or_else(|| TreeError::Parse("empty line".into()))?
            .parse()
            .map_err(|_| TreeError::Parse("vertex count is not an integer".into()))?;
        if n == 0 {
            return Err(TreeError::Parse("vertex count must be at least 1".into()));
        }
        let mut parents = vec![None; n];
        for (v, slot) in parents.iter_mut().enumerate().skip(1) {
            let p: usize = toks
                .next()
                .ok_or_else(|| TreeError::Parse(format!("expected {} parents, got {}", n - 1, v - 1)))?
                .parse()
                .map_err(|_| TreeError::Parse("parent is not an integer".into()))?;
            if p == 0 {
                return Err(TreeError::Parse("parents are 1-based".into()));
            }
            *slot = Some(p - 1);
        }
        if toks.next().is_some() {
            return Err(TreeError::Parse("trailing tokens after parent list".into()));
        }
        RootedTree::from_parents(&parents)
    }

    /// Inverse of [`from_line`](Self::from_line). The tree is relabeled so the
    /// root comes first if it is not already vertex 0.
    pub fn to_line(&self) -> String {
        let t = self.rooted_at_zero();
        let mut s = t.len().to_string();
        for v in 1..t.len() {
            s.push(' ');
            s.push_str(&(t.parent(v).unwrap() + 1).to_string());
        }
        s
    }

    /// JSON form `{"n": n, "parents": [null, 0, ...]}` with 0-based parents.
    pub fn from_json(text: &str) -> Result<Self, TreeError> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| TreeError::Parse(e.to_string()))?;
        let n = v
            .get("n")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| TreeError::Parse("missing field \"n\"".into()))? as usize;
        let arr = v
            .get("parents")
            .and_then(|x| x.as_array())
            .ok_or_else(|| TreeError::Parse("missing field \"parents\"".into()))?;
        if arr.len() != n {
            return Err(TreeError::Parse(format!(
                "parents has length {}, expected n = {}",
                arr.len(),
                n
            )));
        }
        let mut parents = Vec::with_capacity(n);
        for x in arr {
            parents.push(match x {
                serde_json::Value::Null => None,
                _ => Some(x.as_u64().ok_or_else(|| {
                    TreeError::Parse("parent entries must be integers or null".into())
                })? as usize),
            });
        }
        RootedTree::from_parents(&parents)
    }

    pub fn to_json(&self) -> String {
        let t = self.rooted_at_zero();
        let parents: Vec<serde_json::Value> = (0..t.len())
            .map(|v| match t.parent(v) {
                Some(p) => serde_json::json!(p),
                None => serde_json::Value::Null,
            })
            .collect();
        serde_json::json!({"n": t.len(), "parents": parents}).to_string()
    }

    /// Parses either the line format or the JSON object form.
    pub fn parse(text: &str) -> Result<Self, TreeError> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            RootedTree::from_json(trimmed)
        } else {
            RootedTree::from_line(text)
        }
    }

    fn rooted_at_zero(&self) -> std::borrow::Cow<'_, Self> {
        if self.root == 0 {
            return std::borrow::Cow::Borrowed(self);
        }
        // relabel: root -> 0, everything else keeps relative order
        let n = self.len();
        let r = self.root as usize;
        let remap = |v: usize| -> usize {
            if v == r {
                0
            } else if v < r {
                v + 1
            } else {
                v
            }
        };
        let mut parents = vec![None; n];
        for v in 0..n {
            if let Some(p) = self.parent(v) {
                parents[remap(v)] = Some(remap(p));
            }
        }
        std::borrow::Cow::Owned(RootedTree::from_parents(&parents).expect("relabel of valid tree"))
    }
}

/// Isomorphism mode for canonical keys: plane trees keep child order,
/// unordered trees do not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IsoMode {
    Unordered,
    Ordered,
}

/// Canonical byte string for a rooted shape. Two trees get equal keys exactly
/// when they are isomorphic as rooted trees in the key's mode.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShapeKey {
    mode: IsoMode,
    bytes: Vec<u8>,
}

impl ShapeKey {
    pub fn mode(&self) -> IsoMode {
        self.mode
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Keys are printable ASCII (`(`, `)`, `_`).
    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.bytes).expect("keys are ASCII")
    }
}

impl fmt::Display for ShapeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// AHU canonical key of the whole tree.
///
/// Unordered mode sorts child keys lexicographically before concatenation.
/// Ordered mode keeps plane order; trees with maximum out-degree at most 2
/// are keyed with explicit left/right slots (`_` marks an empty slot), taking
/// the slot table into account when present and treating a single child as a
/// left child otherwise.
pub fn canonical_key(t: &RootedTree, mode: IsoMode) -> ShapeKey {
    let mut keys = all_fringe_keys(t, mode);
    ShapeKey { mode, bytes: std::mem::take(&mut keys[t.root()]) }
}

/// Canonical key of every fringe subtree, computed in one bottom-up pass.
fn all_fringe_keys(t: &RootedTree, mode: IsoMode) -> Vec<Vec<u8>> {
    let n = t.len();
    let binary = mode == IsoMode::Ordered && (0..n).all(|v| t.children(v).len() <= 2);
    let mut keys: Vec<Vec<u8>> = vec![Vec::new(); n];
    for v in t.post_order() {
        let v = v as usize;
        let mut key = Vec::with_capacity(2 + t.children(v).iter().map(|&c| keys[c as usize].len()).sum::<usize>());
        key.push(b'(');
        match mode {
            IsoMode::Unordered => {
                let mut child_keys: Vec<&[u8]> =
                    t.children(v).iter().map(|&c| keys[c as usize].as_slice()).collect();
                child_keys.sort_unstable();
                for ck in child_keys {
                    key.extend_from_slice(ck);
                }
            }
            IsoMode::Ordered if binary => {
                let [l, r] = match t.slots(v) {
                    Some(slots) => slots,
                    None => {
                        let ch = t.children(v);
                        [ch.first().copied(), ch.get(1).copied()]
                    }
                };
                for side in [l, r] {
                    match side {
                        Some(c) => key.extend_from_slice(&keys[c as usize]),
                        None => key.push(b'_'),
                    }
                }
            }
            IsoMode::Ordered => {
                for &c in t.children(v) {
                    key.extend_from_slice(&keys[c as usize]);
                }
            }
        }
        key.push(b')');
        keys[v] = key;
    }
    keys
}

/// A pattern tree together with its canonical keys in both modes.
#[derive(Debug, Clone)]
pub struct FringePattern {
    tree: RootedTree,
    unordered: ShapeKey,
    ordered: ShapeKey,
}

impl FringePattern {
    pub fn new(tree: RootedTree) -> Self {
        let unordered = canonical_key(&tree, IsoMode::Unordered);
        let ordered = canonical_key(&tree, IsoMode::Ordered);
        FringePattern { tree, unordered, ordered }
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn key(&self, mode: IsoMode) -> &ShapeKey {
        match mode {
            IsoMode::Unordered => &self.unordered,
            IsoMode::Ordered => &self.ordered,
        }
    }
}

/// Number of vertices whose fringe subtree is isomorphic to the pattern.
pub fn count_fringe(t: &RootedTree, pattern: &FringePattern, mode: IsoMode) -> usize {
    let target = pattern.key(mode).as_bytes();
    let sizes = t.subtree_sizes();
    let keys = all_fringe_keys(t, mode);
    (0..t.len())
        .filter(|&v| sizes[v] as usize == pattern.len() && keys[v] == target)
        .count()
}

/// Order of the automorphism group of the rooted unordered tree: the product
/// over vertices of the factorials of multiplicities of identical child
/// shapes.
pub fn automorphism_count(t: &RootedTree) -> BigUint {
    let keys = all_fringe_keys(t, IsoMode::Unordered);
    let mut aut = BigUint::one();
    for v in 0..t.len() {
        let mut child_keys: Vec<&[u8]> =
            t.children(v).iter().map(|&c| keys[c as usize].as_slice()).collect();
        child_keys.sort_unstable();
        let mut run = 1usize;
        for i in 1..=child_keys.len() {
            if i < child_keys.len() && child_keys[i] == child_keys[i - 1] {
                run += 1;
            } else {
                for m in 2..=run {
                    aut *= BigUint::from(m);
                }
                run = 1;
            }
        }
    }
    aut
}

/// Maximum matching size, by the leaf-driven greedy that is exact on trees:
/// in post order, match a vertex to an unmatched child whenever possible.
pub fn matching_number(t: &RootedTree) -> usize {
    let mut matched = vec![false; t.len()];
    let mut m = 0;
    for v in t.post_order() {
        let v = v as usize;
        if t.children(v).iter().any(|&c| !matched[c as usize]) {
            matched[v] = true;
            m += 1;
        }
    }
    m
}

/// Number of leaves and number of quasipendant vertices (vertices adjacent to
/// a leaf), in the unrooted sense. The single-vertex tree counts as one leaf
/// with no quasipendants.
pub fn leaves_quasipendants(t: &RootedTree) -> (usize, usize) {
    let n = t.len();
    if n == 1 {
        return (1, 0);
    }
    let is_leaf: Vec<bool> = (0..n).map(|v| t.degree(v) == 1).collect();
    let leaves = is_leaf.iter().filter(|&&b| b).count();
    let quasi = (0..n)
        .filter(|&v| {
            t.children(v).iter().any(|&c| is_leaf[c as usize])
                || t.parent(v).is_some_and(|p| is_leaf[p])
        })
        .count();
    (leaves, quasi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(parents: &[Option<usize>]) -> RootedTree {
        RootedTree::from_parents(parents).unwrap()
    }

    fn path(n: usize) -> RootedTree {
        let parents: Vec<Option<usize>> =
            (0..n).map(|v| if v == 0 { None } else { Some(v - 1) }).collect();
        tree(&parents)
    }

    fn star(leaves: usize) -> RootedTree {
        let mut parents = vec![None];
        parents.extend(std::iter::repeat_n(Some(0), leaves));
        tree(&parents)
    }

    #[test]
    fn build_singleton() {
        let t = tree(&[None]);
        assert_eq!(t.len(), 1);
        assert_eq!(t.root(), 0);
    }

    #[test]
    fn build_path3() {
        let t = tree(&[None, Some(0), Some(1)]);
        assert_eq!(t.children(0), &[1]);
        assert_eq!(t.children(1), &[2]);
        assert_eq!(t.depths(), vec![0, 1, 2]);
    }

    #[test]
    fn build_five_vertex_subtree_sizes() {
        // root with two children, each child of vertex 1
        let t = tree(&[None, Some(0), Some(0), Some(1), Some(1)]);
        let mut sizes = t.subtree_sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 1, 3, 5]);
    }

    #[test]
    fn build_errors() {
        assert_eq!(RootedTree::from_parents(&[]).unwrap_err(), TreeError::Empty);
        assert_eq!(
            RootedTree::from_parents(&[None, None]).unwrap_err(),
            TreeError::MultipleRoots(0, 1)
        );
        assert!(matches!(
            RootedTree::from_parents(&[None, Some(5)]).unwrap_err(),
            TreeError::ParentOutOfRange { .. }
        ));
        assert!(matches!(
            RootedTree::from_parents(&[None, Some(2), Some(1)]).unwrap_err(),
            TreeError::Cycle(_)
        ));
        assert_eq!(
            RootedTree::from_parents(&[Some(1), Some(0)]).unwrap_err(),
            TreeError::NoRoot
        );
    }

    #[test]
    fn canonical_key_isomorphic_paths() {
        let a = tree(&[None, Some(0), Some(1)]);
        let b = tree(&[Some(2), Some(0), None]); // same path rooted at its other end
        assert_eq!(
            canonical_key(&a, IsoMode::Unordered),
            canonical_key(&b, IsoMode::Unordered)
        );
    }

    #[test]
    fn canonical_key_child_order_invariance() {
        let a = tree(&[None, Some(0), Some(0), Some(1)]);
        let b = tree(&[None, Some(0), Some(0), Some(2)]);
        assert_eq!(
            canonical_key(&a, IsoMode::Unordered),
            canonical_key(&b, IsoMode::Unordered)
        );
    }

    #[test]
    fn ordered_key_distinguishes_binary_sides() {
        let left = RootedTree::from_slots(vec![[Some(1), None], [None, None]]);
        let right = RootedTree::from_slots(vec![[None, Some(1)], [None, None]]);
        assert_ne!(
            canonical_key(&left, IsoMode::Ordered),
            canonical_key(&right, IsoMode::Ordered)
        );
        assert_eq!(
            canonical_key(&left, IsoMode::Unordered),
            canonical_key(&right, IsoMode::Unordered)
        );
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(automorphism_count(&tree(&[None])), BigUint::from(1u32));
        assert_eq!(automorphism_count(&star(3)), BigUint::from(6u32));
        // root with a leaf child and a 2-path child: distinct shapes
        let t = tree(&[None, Some(0), Some(0), Some(2)]);
        assert_eq!(automorphism_count(&t), BigUint::from(1u32));
    }

    #[test]
    fn matching_examples() {
        assert_eq!(matching_number(&tree(&[None])), 0);
        assert_eq!(matching_number(&path(4)), 2);
        assert_eq!(matching_number(&star(3)), 1);
    }

    #[test]
    fn leaves_quasipendants_examples() {
        assert_eq!(leaves_quasipendants(&star(3)), (3, 1));
        assert_eq!(leaves_quasipendants(&path(4)), (2, 2));
        assert_eq!(leaves_quasipendants(&path(2)), (2, 2));
        assert_eq!(leaves_quasipendants(&tree(&[None])), (1, 0));
    }

    #[test]
    fn count_fringe_examples() {
        let single = FringePattern::new(RootedTree::singleton());
        let t = tree(&[None, Some(0), Some(0), Some(1), Some(1)]);
        // leaves of the rooted tree: 2, 3, 4
        assert_eq!(count_fringe(&t, &single, IsoMode::Unordered), 3);

        let p2 = FringePattern::new(path(2));
        let p3 = path(3);
        assert_eq!(count_fringe(&p3, &p2, IsoMode::Unordered), 1);

        let cherry = tree(&[None, Some(0), Some(0)]);
        let pat = FringePattern::new(cherry.clone());
        assert_eq!(count_fringe(&cherry, &pat, IsoMode::Unordered), 1);
    }

    #[test]
    fn attach_copies_examples() {
        let single = RootedTree::singleton();
        let star2 = single.attach_copies(&[(0, 2)], &single).unwrap();
        assert_eq!(
            canonical_key(&star2, IsoMode::Unordered),
            canonical_key(&star(2), IsoMode::Unordered)
        );

        let p2 = path(2);
        let p4 = p2.attach_copies(&[(0, 1), (1, 1)], &single).unwrap();
        assert_eq!(p4.len(), 4);
        assert_eq!(
            canonical_key(&p4, IsoMode::Unordered),
            canonical_key(&tree(&[None, Some(0), Some(0), Some(1)]), IsoMode::Unordered)
        );

        let spider = single.attach_copies(&[(0, 2)], &p2).unwrap();
        assert_eq!(spider.len(), 5);

        assert!(matches!(
            single.attach_copies(&[(3, 1)], &p2).unwrap_err(),
            TreeError::BadVertex { .. }
        ));
        assert!(matches!(
            p2.attach_copies(&[(0, 1), (0, 1)], &p2).unwrap_err(),
            TreeError::DuplicateAttachVertex(0)
        ));
    }

    #[test]
    fn line_format_round_trip() {
        let t = tree(&[None, Some(0), Some(0), Some(1)]);
        let line = t.to_line();
        assert_eq!(line, "4 1 1 2");
        assert_eq!(RootedTree::from_line(&line).unwrap(), t);
        assert_eq!(RootedTree::from_line("1").unwrap().len(), 1);
        assert!(RootedTree::from_line("3 1").is_err());
        assert!(RootedTree::from_line("0").is_err());
    }

    #[test]
    fn json_round_trip() {
        let t = tree(&[None, Some(0), Some(1)]);
        let j = t.to_json();
        assert_eq!(RootedTree::from_json(&j).unwrap(), t);
        let parsed = RootedTree::parse("{\"n\":2,\"parents\":[null,0]}").unwrap();
        assert_eq!(parsed.len(), 2);
    }

    #[test]
    fn fringe_sizes_match_depths() {
        let t = tree(&[None, Some(0), Some(0), Some(1), Some(1), Some(4)]);
        let sizes: u32 = t.subtree_sizes().iter().sum();
        let depths: u32 = t.depths().iter().map(|d| d + 1).sum();
        assert_eq!(sizes, depths);
    }
}
