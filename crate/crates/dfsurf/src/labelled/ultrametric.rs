//! Construction of a labelled tree from ultrametric data (n, m, d, sigma):
//! leaf depths, pairwise first-common-ancestor levels and the cochain.
//! Chains are glued along shared prefixes in input order; synthesized node
//! ids are "n0", "n1", ... in creation order.

use std::collections::BTreeMap;

use crate::exactalg::Poly;
use crate::trees::RootedTree;

use super::{LabelledError, LabelledTree};

/// The data of a labelled tree presented as an ultrametric: n leaves, leaf
/// levels m, branching levels d and labels sigma. The diagonal of d is
/// ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UltrametricData {
    pub n: usize,
    pub m: Vec<usize>,
    pub d: Vec<Vec<usize>>,
    pub sigma: Vec<Poly>,
}

impl UltrametricData {
    /// Checks the three defining conditions, in order:
    /// (1) d symmetric with d_ij < min(m_i, m_j);
    /// (2) min(d_ij, d_ik) = min(d_ij, d_jk) for every triple;
    /// (3) ord_x(sigma_j - sigma_i) = d_ij.
    pub fn validate(&self) -> Result<(), LabelledError> {
        let n = self.n;
        if n == 0 || self.m.len() != n || self.d.len() != n || self.sigma.len() != n {
            return Err(LabelledError::ConditionViolated {
                condition: 1,
                detail: "n must be positive and m, d, sigma must have length n".to_string(),
            });
        }
        for (i, &mi) in self.m.iter().enumerate() {
            if mi == 0 {
                return Err(LabelledError::ConditionViolated {
                    condition: 1,
                    detail: format!("m_{} must be positive", i + 1),
                });
            }
            if self.d[i].len() != n {
                return Err(LabelledError::ConditionViolated {
                    condition: 1,
                    detail: format!("row {} of d has wrong length", i + 1),
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                if self.d[i][j] != self.d[j][i] {
                    return Err(LabelledError::ConditionViolated {
                        condition: 1,
                        detail: format!("d_{{{},{}}} is not symmetric", i + 1, j + 1),
                    });
                }
                if self.d[i][j] >= self.m[i].min(self.m[j]) {
                    return Err(LabelledError::ConditionViolated {
                        condition: 1,
                        detail: format!(
                            "d_{{{},{}}} = {} must be < min(m_i, m_j) = {}",
                            i + 1,
                            j + 1,
                            self.d[i][j],
                            self.m[i].min(self.m[j])
                        ),
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    if self.d[i][j].min(self.d[i][k]) != self.d[i][j].min(self.d[j][k]) {
                        return Err(LabelledError::ConditionViolated {
                            condition: 2,
                            detail: format!(
                                "triple ({}, {}, {}) breaks the ultrametric inequality",
                                i + 1,
                                j + 1,
                                k + 1
                            ),
                        });
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let ord = (&self.sigma[j] - &self.sigma[i]).ord_at_x();
                if ord != Some(self.d[i][j]) {
                    return Err(LabelledError::ConditionViolated {
                        condition: 3,
                        detail: format!(
                            "ord(sigma_{} - sigma_{}) = {:?} but d = {}",
                            j + 1,
                            i + 1,
                            ord,
                            self.d[i][j]
                        ),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Builds the unique labelled tree realizing the data: the chain of leaf i
/// is glued onto the partial tree along the prefix of an earlier leaf k
/// maximizing d_ik. Returns the tree and its leaves in input order.
pub fn build_from_ultrametric(u: &UltrametricData) -> Result<LabelledTree, LabelledError> {
    u.validate()?;
    let mut tree = RootedTree::new("n0");
    let mut next = 1usize;
    let mut paths: Vec<Vec<String>> = Vec::with_capacity(u.n);
    for i in 0..u.n {
        let attach = (0..i).max_by_key(|&k| u.d[i][k]);
        let mut path: Vec<String> = match attach {
            Some(k) => paths[k][..=u.d[i][k]].to_vec(),
            None => vec!["n0".to_string()],
        };
        while path.len() <= u.m[i] {
            let id = format!("n{}", next);
            next += 1;
            tree.add_child(path.last().unwrap(), &id).unwrap();
            path.push(id);
        }
        paths.push(path);
    }
    let mut sigma = BTreeMap::new();
    for (i, path) in paths.iter().enumerate() {
        sigma.insert(path[u.m[i]].clone(), u.sigma[i].clone());
    }
    LabelledTree::new(tree, sigma)
}

/// Re-extracts ultrametric data from a labelled tree, leaves taken in
/// depth-first order (or any explicitly supplied order).
pub fn extract_ultrametric(g: &LabelledTree, order: &[String]) -> UltrametricData {
    let n = order.len();
    let m: Vec<usize> = order.iter().map(|l| g.leaf_level(l)).collect();
    let mut d = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let fca = g
                .shape()
                .first_common_ancestor(&order[i], &order[j])
                .unwrap();
            d[i][j] = g.shape().level(fca).unwrap();
        }
    }
    let sigma = order.iter().map(|l| g.sigma(l).clone()).collect();
    UltrametricData { n, m, d, sigma }
}
