//! (Q[x], x)-labelled rooted trees: compatibility validation, the
//! weight/cochain duality, construction from ultrametric data, morphisms,
//! blow-downs, morphism factorization, essentialization and the equivalence
//! decision procedure.

mod equivalence;
mod morphism;
mod ultrametric;
mod weighted;

pub use equivalence::{decide_equivalence, EquivalenceWitness};
pub use morphism::{
    compose_morphisms, factor_morphism, glue_morphisms, identity_morphism, MorphismViolation,
    TreeMorphism,
};
pub use ultrametric::{build_from_ultrametric, extract_ultrametric, UltrametricData};
pub use weighted::WeightedTree;

use std::collections::BTreeMap;
use std::fmt;

use crate::exactalg::Poly;
use crate::trees::{RootedTree, TreeError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LabelledError {
    #[error("leaf `{0}` has no sigma label")]
    MissingSigma(String),
    #[error("`{0}` carries a sigma label but is not a leaf")]
    SigmaOnNonLeaf(String),
    #[error("cochain not reduced: deg sigma >= leaf level at `{0}`")]
    CochainNotReduced(String),
    #[error("edge into `{0}` has no weight")]
    MissingWeight(String),
    #[error("leaves disagree on the weight of the edge into `{0}`")]
    WeightConflict(String),
    #[error("fine condition violated: children of `{0}` share edge weight")]
    FineCondition(String),
    #[error("ultrametric condition ({condition}) violated: {detail}")]
    ConditionViolated { condition: u8, detail: String },
    #[error("cannot blow down at `{0}`: children must all be leaves")]
    NotCollapsible(String),
    #[error("chain overlap conflict at `{node}`: forced to both `{first}` and `{second}`")]
    OverlapConflict {
        node: String,
        first: String,
        second: String,
    },
    #[error("label congruence fails for leaf `{0}`")]
    CongruenceFailure(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// A compatibility violation found by `LabelledTree::validate`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub leaf_i: String,
    pub leaf_j: String,
    pub expected: usize,
    pub observed: Option<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.observed {
            Some(v) => write!(
                f,
                "leaves `{}`, `{}`: ord(sigma_j - sigma_i) = {} but ancestor level is {}",
                self.leaf_i, self.leaf_j, v, self.expected
            ),
            None => write!(
                f,
                "leaves `{}`, `{}`: equal labels but ancestor level is {}",
                self.leaf_i, self.leaf_j, self.expected
            ),
        }
    }
}

/// A labelled rooted tree: a shape plus one polynomial per leaf, the
/// cochain. Compatibility requires the x-adic valuation of each label
/// difference to equal the level of the leaves' first common ancestor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledTree {
    shape: RootedTree,
    sigma: BTreeMap<String, Poly>,
}

impl LabelledTree {
    /// Builds without validating compatibility; every leaf must carry a
    /// label and only leaves may carry one.
    pub fn new(
        shape: RootedTree,
        sigma: BTreeMap<String, Poly>,
    ) -> Result<Self, LabelledError> {
        for leaf in shape.leaves() {
            if !sigma.contains_key(leaf) {
                return Err(LabelledError::MissingSigma(leaf.to_string()));
            }
        }
        for node in sigma.keys() {
            if !shape.contains(node) || !shape.is_leaf(node)? {
                return Err(LabelledError::SigmaOnNonLeaf(node.clone()));
            }
        }
        Ok(LabelledTree { shape, sigma })
    }

    pub fn single_node(id: &str, sigma: Poly) -> Self {
        let shape = RootedTree::new(id);
        let mut map = BTreeMap::new();
        map.insert(id.to_string(), sigma);
        LabelledTree { shape, sigma: map }
    }

    pub fn shape(&self) -> &RootedTree {
        &self.shape
    }

    pub fn sigma(&self, leaf: &str) -> &Poly {
        &self.sigma[leaf]
    }

    pub fn leaves(&self) -> Vec<&str> {
        self.shape.leaves()
    }

    pub fn leaf_level(&self, leaf: &str) -> usize {
        self.shape.level(leaf).unwrap()
    }

    /// Gamma-compatibility check; an empty list means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        let leaves = self.leaves();
        for (a, &li) in leaves.iter().enumerate() {
            for &lj in leaves.iter().skip(a + 1) {
                // distinct leaves are never the root, so the ancestor exists
                let fca = self.shape.first_common_ancestor(li, lj).unwrap();
                let d = self.shape.level(fca).unwrap();
                let observed = (self.sigma(lj) - self.sigma(li)).ord_at_x();
                if observed != Some(d) {
                    violations.push(Violation {
                        leaf_i: li.to_string(),
                        leaf_j: lj.to_string(),
                        expected: d,
                        observed,
                    });
                }
            }
        }
        violations
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Truncates every label below its leaf level, producing the reduced
    /// representative of the congruence class.
    pub fn reduce(&self) -> LabelledTree {
        let mut sigma = BTreeMap::new();
        for (leaf, p) in &self.sigma {
            let m = self.shape.level(leaf).unwrap();
            sigma.insert(leaf.clone(), p.trunc_mod(m));
        }
        LabelledTree {
            shape: self.shape.clone(),
            sigma,
        }
    }

    /// Blow-down of the leaves at `e`: removes the children of `e` (which
    /// must all be leaves), making `e` a leaf labelled by the truncation of
    /// any former child's label. Returns the new tree and the collapse
    /// morphism from `self` onto it.
    pub fn blow_down(&self, e: &str) -> Result<(LabelledTree, TreeMorphism), LabelledError> {
        if !self.shape.contains(e) {
            return Err(TreeError::UnknownNode(e.to_string()).into());
        }
        let children = self.shape.children(e)?;
        if children.is_empty() || !children.iter().all(|c| self.shape.is_leaf(c).unwrap()) {
            return Err(LabelledError::NotCollapsible(e.to_string()));
        }
        let level_e = self.shape.level(e)?;
        let new_label = self.sigma(children[0]).trunc_mod(level_e);

        let mut shape = RootedTree::new(self.shape.root());
        let removed: Vec<String> = children.iter().map(|c| c.to_string()).collect();
        for node in self.shape.nodes() {
            if node == self.shape.root() || removed.iter().any(|r| r == node) {
                continue;
            }
            let parent = self.shape.parent(node)?.unwrap();
            shape.add_child(parent, node)?;
        }
        let mut sigma = BTreeMap::new();
        for leaf in shape.leaves() {
            if leaf == e {
                sigma.insert(leaf.to_string(), new_label.clone());
            } else {
                sigma.insert(leaf.to_string(), self.sigma(leaf).clone());
            }
        }
        let target = LabelledTree { shape, sigma };

        let mut node_map = BTreeMap::new();
        for node in self.shape.nodes() {
            let image = if removed.iter().any(|r| r == node) {
                e.to_string()
            } else {
                node.to_string()
            };
            node_map.insert(node.to_string(), image);
        }
        let morphism = TreeMorphism::new(self.clone(), target.clone(), node_map);
        Ok((target, morphism))
    }

    /// Essential data: the essential labelled subtree, the common truncation
    /// `c` and the level `m` of the essential root, so that
    /// sigma_i = c + x^m * es_sigma_i on every leaf. For a chain the
    /// essential subtree is the single leaf with label 0 and c is the whole
    /// label.
    pub fn essentialize(&self) -> (LabelledTree, Poly, usize) {
        if self.shape.is_chain() {
            let (leaf, m) = self.shape.essential_subtree_root();
            let c = self.sigma(leaf).clone();
            let es = LabelledTree::single_node(leaf, Poly::zero());
            return (es, c, m);
        }
        let (es_root, m) = self.shape.essential_subtree_root();
        let shape = self.shape.maximal_subtree(es_root).unwrap();
        let any_leaf = shape.leaves()[0].to_string();
        let c = self.sigma(&any_leaf).trunc_mod(m);
        let mut sigma = BTreeMap::new();
        for leaf in shape.leaves() {
            let reduced = (self.sigma(leaf) - &c)
                .div_exact_by_x_pow(m)
                .expect("leaves agree below the essential level on a valid tree");
            sigma.insert(leaf.to_string(), reduced);
        }
        (LabelledTree { shape, sigma }, c, m)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::exactalg::parse_poly;

    /// Broom with handle length r, n teeth of length m, given leaf labels
    /// (depth-first tooth order).
    pub fn broom(r: usize, m: usize, n: usize, labels: &[&str]) -> LabelledTree {
        assert_eq!(labels.len(), if m == 0 || n == 0 { 1 } else { n });
        let mut t = RootedTree::new("e0");
        let mut prev = "e0".to_string();
        for k in 1..=r {
            let id = format!("h{}", k);
            t.add_child(&prev, &id).unwrap();
            prev = id;
        }
        let mut sigma = BTreeMap::new();
        if m == 0 || n == 0 {
            sigma.insert(prev.clone(), parse_poly(labels[0]).unwrap());
            return LabelledTree::new(t, sigma).unwrap();
        }
        for i in 1..=n {
            let mut p = prev.clone();
            for k in 1..=m {
                let id = format!("b{}_{}", i, k);
                t.add_child(&p, &id).unwrap();
                p = id;
            }
            sigma.insert(p, parse_poly(labels[i - 1]).unwrap());
        }
        LabelledTree::new(t, sigma).unwrap()
    }

    /// The gamma_t family: root with a length-2 branch labelled 1 + t*x and
    /// a level-1 leaf labelled 0.
    pub fn gamma_t(t: i64) -> LabelledTree {
        let mut shape = RootedTree::new("r");
        shape.add_child("r", "a").unwrap();
        shape.add_child("a", "a1").unwrap();
        shape.add_child("r", "b").unwrap();
        let mut sigma = BTreeMap::new();
        sigma.insert("a1".to_string(), parse_poly(&format!("1 + {}*x", t)).unwrap());
        sigma.insert("b".to_string(), Poly::zero());
        LabelledTree::new(shape, sigma).unwrap()
    }

    /// The non-comb tree from the cyclic-quotient example: branches of
    /// height 2 labelled 1 and -1 plus a level-1 leaf labelled 0.
    pub fn z2_tree() -> LabelledTree {
        let mut shape = RootedTree::new("r");
        shape.add_child("r", "a").unwrap();
        shape.add_child("a", "a1").unwrap();
        shape.add_child("r", "b").unwrap();
        shape.add_child("r", "c").unwrap();
        shape.add_child("c", "c1").unwrap();
        let mut sigma = BTreeMap::new();
        sigma.insert("a1".to_string(), parse_poly("1").unwrap());
        sigma.insert("b".to_string(), Poly::zero());
        sigma.insert("c1".to_string(), parse_poly("-1").unwrap());
        LabelledTree::new(shape, sigma).unwrap()
    }

    /// The Bandman/Makar-Limanov tree: leaves 1 and -1 at level 1 and two
    /// level-2 leaves x and -x under the middle child e.
    pub fn bml_tree() -> LabelledTree {
        let mut shape = RootedTree::new("r");
        shape.add_child("r", "p").unwrap();
        shape.add_child("r", "e").unwrap();
        shape.add_child("e", "e1").unwrap();
        shape.add_child("e", "e2").unwrap();
        shape.add_child("r", "q").unwrap();
        let mut sigma = BTreeMap::new();
        sigma.insert("p".to_string(), parse_poly("1").unwrap());
        sigma.insert("e1".to_string(), parse_poly("x").unwrap());
        sigma.insert("e2".to_string(), parse_poly("-x").unwrap());
        sigma.insert("q".to_string(), parse_poly("-1").unwrap());
        LabelledTree::new(shape, sigma).unwrap()
    }
}
