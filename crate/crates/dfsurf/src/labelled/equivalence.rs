//! Equivalence of labelled trees: both sides are essentialized, shape
//! isomorphisms between the essential subtrees are enumerated by
//! backtracking, and each candidate leaf pairing accumulates an exact
//! linear system in the unknowns a, b_0, ..., b_{H-1} which is re-solved
//! incrementally to prune inconsistent branches early.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exactalg::{solve_linear, Poly, Rat};

use super::LabelledTree;

/// A witness of equivalence: a shape isomorphism between the essential
/// subtrees (source essential leaf -> target essential leaf) and the affine
/// relabelling (a, b) with a != 0 such that
/// a * sigma'_i + b = sigma_{j(i)} mod x^{m_{j(i)}} on every pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub leaf_map: BTreeMap<String, String>,
    pub a: Rat,
    pub b: Poly,
}

impl EquivalenceWitness {
    /// Checks the witness against a pair of essential labelled trees.
    pub fn verify(&self, source_es: &LabelledTree, target_es: &LabelledTree) -> bool {
        if self.a.is_zero() {
            return false;
        }
        let src_leaves = source_es.leaves();
        if self.leaf_map.len() != src_leaves.len() {
            return false;
        }
        for leaf in src_leaves {
            let Some(image) = self.leaf_map.get(leaf) else {
                return false;
            };
            if !target_es.shape().contains(image) {
                return false;
            }
            let m = target_es.leaf_level(image);
            let lhs = source_es.sigma(leaf).scale(&self.a);
            let diff = &(&lhs + &self.b) - target_es.sigma(image);
            if !diff.trunc_mod(m).is_zero() {
                return false;
            }
        }
        true
    }
}

struct Search<'a> {
    src: &'a LabelledTree,
    tgt: &'a LabelledTree,
    /// number of b-coefficients available (1 in strict mode, else the
    /// target essential height)
    num_b: usize,
}

type Eqn = (Vec<Rat>, Rat);

impl<'a> Search<'a> {
    fn columns(&self) -> usize {
        1 + self.num_b
    }

    /// Equation row for: a * coeff_t(sigma'_src) + b_t = coeff_t(sigma_tgt).
    /// When t has no b-column (strict mode, t >= 1) the b term is dropped,
    /// which encodes b_t = 0.
    fn leaf_equations(&self, leaf_src: &str, leaf_tgt: &str) -> Vec<Eqn> {
        let m = self.tgt.leaf_level(leaf_tgt);
        let p_src = self.src.sigma(leaf_src);
        let p_tgt = self.tgt.sigma(leaf_tgt);
        (0..m)
            .map(|t| {
                let mut row = vec![Rat::zero(); self.columns()];
                row[0] = p_src.coeff(t);
                if t < self.num_b {
                    row[1 + t] = Rat::one();
                }
                (row, p_tgt.coeff(t))
            })
            .collect()
    }

    fn consistent(&self, eqs: &[Eqn]) -> bool {
        if eqs.is_empty() {
            return true;
        }
        let (rows, rhs): (Vec<Vec<Rat>>, Vec<Rat>) = eqs.iter().cloned().unzip();
        solve_linear(&rows, &rhs).is_some()
    }

    /// Processes the agenda of node pairings depth-first, branching over
    /// sibling matchings grouped by shape key.
    fn search(
        &self,
        mut agenda: Vec<(String, String)>,
        eqs: Vec<Eqn>,
        leaf_map: BTreeMap<String, String>,
    ) -> Option<EquivalenceWitness> {
        let Some((u_src, u_tgt)) = agenda.pop() else {
            return self.finish(&eqs, leaf_map);
        };
        let cs: Vec<String> = self
            .src
            .shape()
            .children(&u_src)
            .unwrap()
            .into_iter()
            .map(|c| c.to_string())
            .collect();
        let ct: Vec<String> = self
            .tgt
            .shape()
            .children(&u_tgt)
            .unwrap()
            .into_iter()
            .map(|c| c.to_string())
            .collect();
        if cs.is_empty() {
            // leaf pairing: accumulate its equations and prune on
            // inconsistency
            let mut eqs = eqs;
            eqs.extend(self.leaf_equations(&u_src, &u_tgt));
            if !self.consistent(&eqs) {
                return None;
            }
            let mut leaf_map = leaf_map;
            leaf_map.insert(u_src, u_tgt);
            return self.search(agenda, eqs, leaf_map);
        }
        if cs.len() != ct.len() {
            return None;
        }
        self.match_children(&cs, &ct, 0, &mut vec![false; ct.len()], agenda, eqs, leaf_map)
    }

    #[allow(clippy::too_many_arguments)]
    fn match_children(
        &self,
        cs: &[String],
        ct: &[String],
        i: usize,
        used: &mut Vec<bool>,
        agenda: Vec<(String, String)>,
        eqs: Vec<Eqn>,
        leaf_map: BTreeMap<String, String>,
    ) -> Option<EquivalenceWitness> {
        if i == cs.len() {
            return self.search(agenda, eqs, leaf_map);
        }
        let key_src = self.src.shape().shape_key(&cs[i]).unwrap();
        for j in 0..ct.len() {
            if used[j] {
                continue;
            }
            if self.tgt.shape().shape_key(&ct[j]).unwrap() != key_src {
                continue;
            }
            used[j] = true;
            let mut agenda2 = agenda.clone();
            agenda2.push((cs[i].clone(), ct[j].clone()));
            if let Some(w) =
                self.match_children(cs, ct, i + 1, used, agenda2, eqs.clone(), leaf_map.clone())
            {
                return Some(w);
            }
            used[j] = false;
        }
        None
    }

    /// Extracts a solution with a != 0, adjusting by a null-space vector
    /// when the particular solution has a = 0.
    fn finish(
        &self,
        eqs: &[Eqn],
        leaf_map: BTreeMap<String, String>,
    ) -> Option<EquivalenceWitness> {
        if eqs.is_empty() {
            return Some(EquivalenceWitness {
                leaf_map,
                a: Rat::one(),
                b: Poly::zero(),
            });
        }
        let (rows, rhs): (Vec<Vec<Rat>>, Vec<Rat>) = eqs.iter().cloned().unzip();
        let sol = solve_linear(&rows, &rhs)?;
        let mut u = sol.particular;
        if u[0].is_zero() {
            let shift = sol.nullspace.iter().find(|v| !v[0].is_zero())?;
            for (ui, vi) in u.iter_mut().zip(shift) {
                *ui = &*ui + vi;
            }
        }
        let a = u[0].clone();
        let b = Poly::from_coeffs(u[1..].to_vec());
        Some(EquivalenceWitness { leaf_map, a, b })
    }
}

/// Decides equivalence: essentialize both trees, then look for a shape
/// isomorphism of the essential subtrees together with an affine
/// relabelling (a, b), a != 0, matching the cochains leafwise below each
/// target leaf level. With `strict_constant_b` the polynomial b is
/// restricted to a constant.
pub fn decide_equivalence(
    target: &LabelledTree,
    source: &LabelledTree,
    strict_constant_b: bool,
) -> Option<EquivalenceWitness> {
    let (es_tgt, _, _) = target.essentialize();
    let (es_src, _, _) = source.essentialize();

    let mut levels_src: Vec<usize> = es_src.leaves().iter().map(|l| es_src.leaf_level(l)).collect();
    let mut levels_tgt: Vec<usize> = es_tgt.leaves().iter().map(|l| es_tgt.leaf_level(l)).collect();
    levels_src.sort_unstable();
    levels_tgt.sort_unstable();
    if levels_src != levels_tgt {
        return None;
    }
    if es_src.shape().shape_key(es_src.shape().root()).unwrap()
        != es_tgt.shape().shape_key(es_tgt.shape().root()).unwrap()
    {
        return None;
    }

    let height = es_tgt.shape().height();
    let num_b = if strict_constant_b { 1 } else { height.max(1) };
    let search = Search {
        src: &es_src,
        tgt: &es_tgt,
        num_b,
    };
    let agenda = vec![(
        es_src.shape().root().to_string(),
        es_tgt.shape().root().to_string(),
    )];
    search.search(agenda, Vec::new(), BTreeMap::new())
}
