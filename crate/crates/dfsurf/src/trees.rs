//! Finite rooted trees: levels, chains, ancestors, maximal subtrees and the
//! shape predicates (chain, comb, essential) the classification theorems
//! run on. Nodes carry stable string identifiers; child order is explicit
//! and every traversal is deterministic.

use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("the root is not a valid argument here")]
    RootArgument,
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("node `{child}` added under unknown parent `{parent}`")]
    UnknownParent { parent: String, child: String },
}

/// A finite rooted tree. Parent links are acyclic and spanning by
/// construction: nodes can only be added under an existing parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    ids: Vec<String>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    index: BTreeMap<String, usize>,
}

impl RootedTree {
    pub fn new(root_id: &str) -> Self {
        let mut index = BTreeMap::new();
        index.insert(root_id.to_string(), 0);
        RootedTree {
            ids: vec![root_id.to_string()],
            parent: vec![None],
            children: vec![Vec::new()],
            index,
        }
    }

    /// Adds a child under `parent`, appended to its child order.
    pub fn add_child(&mut self, parent: &str, child: &str) -> Result<(), TreeError> {
        if self.index.contains_key(child) {
            return Err(TreeError::DuplicateNode(child.to_string()));
        }
        let p = self
            .index
            .get(parent)
            .copied()
            .ok_or_else(|| TreeError::UnknownParent {
                parent: parent.to_string(),
                child: child.to_string(),
            })?;
        let ix = self.ids.len();
        self.ids.push(child.to_string());
        self.parent.push(Some(p));
        self.children.push(Vec::new());
        self.children[p].push(ix);
        self.index.insert(child.to_string(), ix);
        Ok(())
    }

    pub fn root(&self) -> &str {
        &self.ids[0]
    }

    pub fn contains(&self, node: &str) -> bool {
        self.index.contains_key(node)
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    fn ix(&self, node: &str) -> Result<usize, TreeError> {
        self.index
            .get(node)
            .copied()
            .ok_or_else(|| TreeError::UnknownNode(node.to_string()))
    }

    pub fn parent(&self, node: &str) -> Result<Option<&str>, TreeError> {
        Ok(self.parent[self.ix(node)?].map(|p| self.ids[p].as_str()))
    }

    pub fn children(&self, node: &str) -> Result<Vec<&str>, TreeError> {
        Ok(self.children[self.ix(node)?]
            .iter()
            .map(|&c| self.ids[c].as_str())
            .collect())
    }

    pub fn is_leaf(&self, node: &str) -> Result<bool, TreeError> {
        Ok(self.children[self.ix(node)?].is_empty())
    }

    /// Number of edges on the path from the root to `node`.
    pub fn level(&self, node: &str) -> Result<usize, TreeError> {
        let mut ix = self.ix(node)?;
        let mut level = 0;
        while let Some(p) = self.parent[ix] {
            ix = p;
            level += 1;
        }
        Ok(level)
    }

    pub fn height(&self) -> usize {
        self.leaves()
            .iter()
            .map(|l| self.level(l).unwrap())
            .max()
            .unwrap_or(0)
    }

    fn depth_first(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.ids.len());
        let mut stack = vec![0usize];
        while let Some(ix) = stack.pop() {
            order.push(ix);
            for &c in self.children[ix].iter().rev() {
                stack.push(c);
            }
        }
        order
    }

    /// All node ids in depth-first child order, root first.
    pub fn nodes(&self) -> Vec<&str> {
        self.depth_first()
            .into_iter()
            .map(|ix| self.ids[ix].as_str())
            .collect()
    }

    /// Leaves in depth-first child order.
    pub fn leaves(&self) -> Vec<&str> {
        self.depth_first()
            .into_iter()
            .filter(|&ix| self.children[ix].is_empty())
            .map(|ix| self.ids[ix].as_str())
            .collect()
    }

    /// Root-to-node path, inclusive on both ends.
    pub fn path_from_root(&self, node: &str) -> Result<Vec<&str>, TreeError> {
        let mut ix = self.ix(node)?;
        let mut path = vec![ix];
        while let Some(p) = self.parent[ix] {
            path.push(p);
            ix = p;
        }
        path.reverse();
        Ok(path.into_iter().map(|ix| self.ids[ix].as_str()).collect())
    }

    /// The node at the given level on the root path of `node`.
    pub fn ancestor_at_level(&self, node: &str, level: usize) -> Result<&str, TreeError> {
        let path = self.path_from_root(node)?;
        path.get(level)
            .copied()
            .ok_or_else(|| TreeError::UnknownNode(format!("{}@{}", node, level)))
    }

    /// True iff `anc` lies on the root path of `node` (inclusive).
    pub fn is_ancestor_or_self(&self, anc: &str, node: &str) -> Result<bool, TreeError> {
        Ok(self.path_from_root(node)?.contains(&anc))
    }

    /// First common ancestor in the poset sense: the deepest node lying on
    /// both root paths with the endpoints themselves excluded. Neither
    /// argument may be the root.
    pub fn first_common_ancestor(&self, e: &str, f: &str) -> Result<&str, TreeError> {
        if e == self.root() || f == self.root() {
            return Err(TreeError::RootArgument);
        }
        let pe = self.path_from_root(e)?;
        let pf = self.path_from_root(f)?;
        let pe = &pe[..pe.len() - 1];
        let pf = &pf[..pf.len() - 1];
        let mut last = self.root();
        for (a, b) in pe.iter().zip(pf) {
            if a == b {
                last = a;
            } else {
                break;
            }
        }
        Ok(last)
    }

    /// The maximal subtree rooted at `node`, levels re-based at 0. Node ids
    /// are preserved.
    pub fn maximal_subtree(&self, node: &str) -> Result<RootedTree, TreeError> {
        let root_ix = self.ix(node)?;
        let mut sub = RootedTree::new(&self.ids[root_ix]);
        let mut stack: Vec<usize> = self.children[root_ix].iter().rev().copied().collect();
        while let Some(ix) = stack.pop() {
            let p = self.parent[ix].unwrap();
            sub.add_child(&self.ids[p], &self.ids[ix]).unwrap();
            for &c in self.children[ix].iter().rev() {
                stack.push(c);
            }
        }
        Ok(sub)
    }

    /// True iff every node has at most one child.
    pub fn is_chain(&self) -> bool {
        self.children.iter().all(|c| c.len() <= 1)
    }

    /// True iff the tree with all leaves deleted is a chain (empty and
    /// single-node prunings count as chains).
    pub fn is_comb(&self) -> bool {
        (0..self.ids.len()).all(|ix| {
            let non_leaf_children = self.children[ix]
                .iter()
                .filter(|&&c| !self.children[c].is_empty())
                .count();
            non_leaf_children <= 1
        })
    }

    /// The root of the essential subtree and its level: the unique leaf for
    /// a chain, otherwise the first common ancestor of all leaves.
    pub fn essential_subtree_root(&self) -> (&str, usize) {
        let mut ix = 0;
        if self.is_chain() {
            while let Some(&c) = self.children[ix].first() {
                ix = c;
            }
        } else {
            while self.children[ix].len() == 1 {
                ix = self.children[ix][0];
            }
        }
        let id = self.ids[ix].as_str();
        let level = self.level(id).unwrap();
        (id, level)
    }

    /// A tree is essential when its root has a number of children other
    /// than one.
    pub fn is_essential(&self) -> bool {
        self.children[0].len() != 1
    }

    /// Shape-only canonical form (AHU-style): children keys sorted.
    pub fn shape_key(&self, node: &str) -> Result<String, TreeError> {
        let ix = self.ix(node)?;
        Ok(self.shape_key_ix(ix))
    }

    fn shape_key_ix(&self, ix: usize) -> String {
        let mut keys: Vec<String> = self.children[ix]
            .iter()
            .map(|&c| self.shape_key_ix(c))
            .collect();
        keys.sort();
        format!("({})", keys.join(""))
    }
}
