//! Morphisms of labelled trees: validation against the order/chain/fiber
//! conditions and the leaf congruence, gluing from per-leaf images,
//! composition, and the factorization of any morphism into a greedy
//! sequence of blow-downs followed by an injective embedding.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{LabelledError, LabelledTree};

/// A node map between labelled trees. Construction does not validate;
/// `validate` reports every broken condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeMorphism {
    source: LabelledTree,
    target: LabelledTree,
    node_map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismViolation {
    /// A source node has no image.
    NotTotal(String),
    /// An image is not a node of the target.
    UnknownImage { node: String, image: String },
    /// A leaf's image is not a leaf, so its chain cannot map onto a
    /// maximal chain.
    ImageNotLeaf { leaf: String, image: String },
    /// A source leaf sits strictly above its image, so the image of its
    /// chain cannot be maximal.
    LevelInequality { leaf: String },
    /// A node on a leaf chain lands off the truncated image chain.
    ChainMismatch {
        node: String,
        expected: String,
        found: String,
    },
    /// The preimage of a target node is neither a single node nor a
    /// maximal subtree.
    FiberNotSubtree { target: String },
    /// sigma'_i - sigma_{j(i)} is not divisible by x^{m_{j(i)}}.
    LeafCongruence { leaf: String },
}

impl fmt::Display for MorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismViolation::NotTotal(n) => write!(f, "node `{}` has no image", n),
            MorphismViolation::UnknownImage { node, image } => {
                write!(f, "node `{}` maps to unknown target node `{}`", node, image)
            }
            MorphismViolation::ImageNotLeaf { leaf, image } => {
                write!(f, "leaf `{}` maps to non-leaf `{}`", leaf, image)
            }
            MorphismViolation::LevelInequality { leaf } => {
                write!(f, "leaf `{}` sits above its image leaf", leaf)
            }
            MorphismViolation::ChainMismatch {
                node,
                expected,
                found,
            } => write!(
                f,
                "chain node `{}` must map to `{}` but maps to `{}`",
                node, expected, found
            ),
            MorphismViolation::FiberNotSubtree { target } => write!(
                f,
                "preimage of `{}` is neither a single node nor a maximal subtree",
                target
            ),
            MorphismViolation::LeafCongruence { leaf } => write!(
                f,
                "label of leaf `{}` is not congruent to its image's label",
                leaf
            ),
        }
    }
}

impl TreeMorphism {
    pub fn new(
        source: LabelledTree,
        target: LabelledTree,
        node_map: BTreeMap<String, String>,
    ) -> Self {
        TreeMorphism {
            source,
            target,
            node_map,
        }
    }

    pub fn source(&self) -> &LabelledTree {
        &self.source
    }

    pub fn target(&self) -> &LabelledTree {
        &self.target
    }

    pub fn node_map(&self) -> &BTreeMap<String, String> {
        &self.node_map
    }

    pub fn image(&self, node: &str) -> Option<&str> {
        self.node_map.get(node).map(|s| s.as_str())
    }

    pub fn is_injective(&self) -> bool {
        let images: BTreeSet<&String> = self.node_map.values().collect();
        images.len() == self.node_map.len()
    }

    /// Checks totality, the chain description tau(e'_{i,k}) =
    /// e_{j(i), min(k, m_{j(i)})} on every leaf path (this subsumes
    /// order-preservation and the maximal-chain condition), the fiber
    /// condition, and the leaf label congruence.
    pub fn validate(&self) -> Vec<MorphismViolation> {
        let mut violations = Vec::new();
        let src = self.source.shape();
        let tgt = self.target.shape();

        let mut total = true;
        for node in src.nodes() {
            match self.node_map.get(node) {
                None => {
                    violations.push(MorphismViolation::NotTotal(node.to_string()));
                    total = false;
                }
                Some(image) if !tgt.contains(image) => {
                    violations.push(MorphismViolation::UnknownImage {
                        node: node.to_string(),
                        image: image.clone(),
                    });
                    total = false;
                }
                Some(_) => {}
            }
        }
        if !total {
            return violations;
        }

        for leaf in src.leaves() {
            let image = &self.node_map[leaf];
            if !tgt.is_leaf(image).unwrap() {
                violations.push(MorphismViolation::ImageNotLeaf {
                    leaf: leaf.to_string(),
                    image: image.clone(),
                });
                continue;
            }
            let m_src = src.level(leaf).unwrap();
            let m_tgt = tgt.level(image).unwrap();
            if m_src < m_tgt {
                violations.push(MorphismViolation::LevelInequality {
                    leaf: leaf.to_string(),
                });
                continue;
            }
            let path = src.path_from_root(leaf).unwrap();
            for (k, node) in path.iter().enumerate() {
                let expected = tgt.ancestor_at_level(image, k.min(m_tgt)).unwrap();
                let found = &self.node_map[*node];
                if found != expected {
                    violations.push(MorphismViolation::ChainMismatch {
                        node: node.to_string(),
                        expected: expected.to_string(),
                        found: found.clone(),
                    });
                }
            }
            let diff = self.source.sigma(leaf) - self.target.sigma(image);
            if !diff.trunc_mod(m_tgt).is_zero() {
                violations.push(MorphismViolation::LeafCongruence {
                    leaf: leaf.to_string(),
                });
            }
        }

        // fiber condition
        let mut fibers: BTreeMap<&String, Vec<&str>> = BTreeMap::new();
        for node in src.nodes() {
            fibers.entry(&self.node_map[node]).or_default().push(node);
        }
        for (target_node, fiber) in fibers {
            if fiber.len() == 1 {
                continue;
            }
            let top = fiber
                .iter()
                .copied()
                .min_by_key(|n| src.level(n).unwrap())
                .unwrap();
            let is_subtree = fiber
                .iter()
                .all(|n| src.is_ancestor_or_self(top, n).unwrap())
                && fiber.len() == src.maximal_subtree(top).unwrap().node_count();
            if !is_subtree {
                violations.push(MorphismViolation::FiberNotSubtree {
                    target: target_node.clone(),
                });
            }
        }

        violations
    }
}

/// The identity morphism on a labelled tree.
pub fn identity_morphism(g: &LabelledTree) -> TreeMorphism {
    let node_map = g
        .shape()
        .nodes()
        .into_iter()
        .map(|n| (n.to_string(), n.to_string()))
        .collect();
    TreeMorphism::new(g.clone(), g.clone(), node_map)
}

/// Composes `second` after `first` (first: g'' -> g', second: g' -> g).
pub fn compose_morphisms(
    first: &TreeMorphism,
    second: &TreeMorphism,
) -> Result<TreeMorphism, LabelledError> {
    if first.target() != second.source() {
        return Err(LabelledError::InvalidMorphism(
            "composition targets do not match".to_string(),
        ));
    }
    let mut node_map = BTreeMap::new();
    for (node, mid) in first.node_map() {
        let image = second.image(mid).ok_or_else(|| {
            LabelledError::InvalidMorphism(format!("intermediate node `{}` has no image", mid))
        })?;
        node_map.insert(node.clone(), image.to_string());
    }
    Ok(TreeMorphism::new(
        first.source().clone(),
        second.target().clone(),
        node_map,
    ))
}

/// Builds the unique morphism restricting to the given leaf images: every
/// node at level k on the chain of leaf i maps to the level-min(k, m_{j(i)})
/// ancestor of the image leaf. Shared nodes forced to two different images
/// raise OverlapConflict; a failed label congruence raises
/// CongruenceFailure.
pub fn glue_morphisms(
    source: &LabelledTree,
    target: &LabelledTree,
    per_leaf_images: &BTreeMap<String, String>,
) -> Result<TreeMorphism, LabelledError> {
    let src = source.shape();
    let tgt = target.shape();
    let mut node_map: BTreeMap<String, String> = BTreeMap::new();
    for leaf in src.leaves() {
        let image = per_leaf_images
            .get(leaf)
            .ok_or_else(|| LabelledError::InvalidMorphism(format!("leaf `{}` has no image", leaf)))?;
        if !tgt.contains(image) || !tgt.is_leaf(image)? {
            return Err(LabelledError::InvalidMorphism(format!(
                "image `{}` of leaf `{}` is not a target leaf",
                image, leaf
            )));
        }
        let m_tgt = tgt.level(image)?;
        if !(source.sigma(leaf) - target.sigma(image))
            .trunc_mod(m_tgt)
            .is_zero()
        {
            return Err(LabelledError::CongruenceFailure(leaf.to_string()));
        }
        let path = src.path_from_root(leaf)?;
        for (k, node) in path.iter().enumerate() {
            let forced = tgt.ancestor_at_level(image, k.min(m_tgt))?.to_string();
            match node_map.get(*node) {
                Some(existing) if *existing != forced => {
                    return Err(LabelledError::OverlapConflict {
                        node: node.to_string(),
                        first: existing.clone(),
                        second: forced,
                    });
                }
                _ => {
                    node_map.insert(node.to_string(), forced);
                }
            }
        }
    }
    Ok(TreeMorphism::new(source.clone(), target.clone(), node_map))
}

/// Factors a valid morphism into blow-downs followed by an injective
/// embedding: repeatedly collapse, in depth-first order, a node whose
/// children are leaves and are all identified with it by the morphism.
pub fn factor_morphism(
    phi: &TreeMorphism,
) -> Result<(Vec<(String, TreeMorphism)>, TreeMorphism), LabelledError> {
    let violations = phi.validate();
    if !violations.is_empty() {
        return Err(LabelledError::InvalidMorphism(violations[0].to_string()));
    }
    let mut current = phi.source().clone();
    let mut residual: BTreeMap<String, String> = phi.node_map().clone();
    let mut blow_downs = Vec::new();
    loop {
        let shape = current.shape();
        let candidate = shape.nodes().into_iter().find(|&e| {
            let children = shape.children(e).unwrap();
            !children.is_empty()
                && children.iter().all(|c| {
                    shape.is_leaf(c).unwrap() && residual[*c] == residual[e]
                })
        });
        let Some(e) = candidate.map(|s| s.to_string()) else {
            break;
        };
        let removed: Vec<String> = shape
            .children(&e)
            .unwrap()
            .into_iter()
            .map(|c| c.to_string())
            .collect();
        let (next, tau) = current.blow_down(&e)?;
        for c in removed {
            residual.remove(&c);
        }
        blow_downs.push((e, tau));
        current = next;
    }
    let embedding = TreeMorphism::new(current, phi.target().clone(), residual);
    Ok((blow_downs, embedding))
}
