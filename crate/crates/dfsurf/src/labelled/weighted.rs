//! The weight/cochain duality: a reduced cochain is the same data as a
//! rational weight on each edge, reading the coefficient of x^j off the
//! level-j edge of every leaf path. Fineness (siblings carry pairwise
//! distinct weights) corresponds exactly to compatibility of the cochain.

use std::collections::BTreeMap;

use crate::exactalg::{Poly, Rat};
use crate::trees::RootedTree;

use super::{LabelledError, LabelledTree};

/// A rational weight per edge; edges are keyed by their child node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedTree {
    shape: RootedTree,
    weight: BTreeMap<String, Rat>,
}

impl WeightedTree {
    pub fn new(shape: RootedTree, weight: BTreeMap<String, Rat>) -> Result<Self, LabelledError> {
        for node in shape.nodes() {
            if node == shape.root() {
                continue;
            }
            if !weight.contains_key(node) {
                return Err(LabelledError::MissingWeight(node.to_string()));
            }
        }
        Ok(WeightedTree { shape, weight })
    }

    pub fn shape(&self) -> &RootedTree {
        &self.shape
    }

    /// Weight of the edge from `child`'s parent down to `child`.
    pub fn weight(&self, child: &str) -> &Rat {
        &self.weight[child]
    }

    /// The fine condition: distinct children of a common parent carry
    /// distinct weights.
    pub fn is_fine(&self) -> bool {
        self.shape.nodes().iter().all(|node| {
            let children = self.shape.children(node).unwrap();
            for (i, a) in children.iter().enumerate() {
                for b in children.iter().skip(i + 1) {
                    if self.weight[*a] == self.weight[*b] {
                        return false;
                    }
                }
            }
            true
        })
    }

    /// Reads the cochain back off the weights: sigma_i = sum of
    /// w(level-j edge of leaf i's path) * x^j. Rejects non-fine trees.
    pub fn to_labelled(&self) -> Result<LabelledTree, LabelledError> {
        if let Some(parent) = self.first_fine_violation() {
            return Err(LabelledError::FineCondition(parent));
        }
        let mut sigma = BTreeMap::new();
        for leaf in self.shape.leaves() {
            let path = self.shape.path_from_root(leaf).unwrap();
            let coeffs: Vec<Rat> = path[1..]
                .iter()
                .map(|node| self.weight[*node].clone())
                .collect();
            sigma.insert(leaf.to_string(), Poly::from_coeffs(coeffs));
        }
        LabelledTree::new(self.shape.clone(), sigma)
    }

    fn first_fine_violation(&self) -> Option<String> {
        for node in self.shape.nodes() {
            let children = self.shape.children(node).unwrap();
            for (i, a) in children.iter().enumerate() {
                for b in children.iter().skip(i + 1) {
                    if self.weight[*a] == self.weight[*b] {
                        return Some(node.to_string());
                    }
                }
            }
        }
        None
    }
}

impl LabelledTree {
    /// The dual weighted tree of a reduced cochain: the level-j edge of
    /// leaf i's path carries coefficient j of sigma_i. Requires
    /// deg(sigma_i) < m_i on every leaf, and the shared-prefix coefficients
    /// of different leaves must agree (automatic on compatible trees).
    pub fn to_weighted(&self) -> Result<WeightedTree, LabelledError> {
        let mut weight: BTreeMap<String, Rat> = BTreeMap::new();
        for leaf in self.leaves() {
            let m = self.leaf_level(leaf);
            let p = self.sigma(leaf);
            if p.degree().is_some_and(|d| d >= m) {
                return Err(LabelledError::CochainNotReduced(leaf.to_string()));
            }
            let path = self.shape().path_from_root(leaf).unwrap();
            for (j, node) in path[1..].iter().enumerate() {
                let c = p.coeff(j);
                match weight.get(*node) {
                    Some(existing) if *existing != c => {
                        return Err(LabelledError::WeightConflict((*node).to_string()));
                    }
                    _ => {
                        weight.insert((*node).to_string(), c);
                    }
                }
            }
        }
        WeightedTree::new(self.shape().clone(), weight)
    }
}
