//! Shared generators and independent oracles for the integration suites.
//! Trees are generated through the weighted presentation, so every sample is
//! valid by construction; the equivalence oracle re-derives the linear
//! system from scratch and enumerates leaf bijections exhaustively.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use dfsurf::exactalg::{rat, solve_linear, Poly, Rat};
use dfsurf::labelled::{
    extract_ultrametric, glue_morphisms, EquivalenceWitness, LabelledTree, TreeMorphism,
    WeightedTree,
};
use dfsurf::trees::RootedTree;

/// Random fine weighted tree with at most `max_leaves` leaves and height at
/// most `max_height`, returned as its labelled cochain.
pub fn random_tree(rng: &mut ChaCha8Rng, max_leaves: usize, max_height: usize) -> LabelledTree {
    let target_leaves = rng.gen_range(1..=max_leaves);
    let mut shape = RootedTree::new("n0");
    let mut next = 1usize;
    // splitting below a leaf keeps the leaf count; splitting below an
    // internal node adds a leaf
    let mut guard = 0;
    while shape.leaves().len() < target_leaves && guard < 200 {
        guard += 1;
        let nodes: Vec<String> = shape
            .nodes()
            .into_iter()
            .filter(|n| shape.level(n).unwrap() < max_height)
            .map(|n| n.to_string())
            .collect();
        if nodes.is_empty() {
            break;
        }
        let parent = nodes.choose(rng).unwrap().clone();
        let child = format!("n{}", next);
        next += 1;
        shape.add_child(&parent, &child).unwrap();
    }

    // distinct sibling weights from a fixed rational pool
    let mut weight: BTreeMap<String, Rat> = BTreeMap::new();
    let parents: Vec<String> = shape.nodes().into_iter().map(|n| n.to_string()).collect();
    for parent in parents {
        let children: Vec<String> = shape
            .children(&parent)
            .unwrap()
            .into_iter()
            .map(|c| c.to_string())
            .collect();
        let mut pool: Vec<Rat> = (-15..=15).map(|k| rat(k, 2)).collect();
        pool.shuffle(rng);
        for (child, w) in children.iter().zip(pool) {
            weight.insert(child.clone(), w);
        }
    }
    WeightedTree::new(shape, weight).unwrap().to_labelled().unwrap()
}

/// Random polynomial of degree at most `max_deg` with small rational
/// coefficients.
pub fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs: Vec<Rat> = (0..=deg).map(|_| rat(rng.gen_range(-4..=4), 1)).collect();
    Poly::from_coeffs(coeffs)
}

/// Applies the relabelling sigma_i -> a*sigma_i + b + x^{m_i}*r_i with
/// random per-leaf perturbations r_i; the result is equivalent to `g` and
/// again a valid tree.
pub fn transform_labels(
    g: &LabelledTree,
    a: &Rat,
    b: &Poly,
    rng: &mut ChaCha8Rng,
) -> LabelledTree {
    let mut sigma = BTreeMap::new();
    for leaf in g.leaves() {
        let m = g.leaf_level(leaf);
        let r = random_poly(rng, 2);
        let label = &(&g.sigma(leaf).scale(a) + b) + &r.mul_x_pow(m);
        sigma.insert(leaf.to_string(), label);
    }
    LabelledTree::new(g.shape().clone(), sigma).unwrap()
}

/// Replaces leaf `leaf` (level m) by children labelled sigma + c*x^m for
/// the given pairwise distinct offsets; this is the inverse of a blow-down.
pub fn sprout(g: &LabelledTree, leaf: &str, offsets: &[Rat]) -> LabelledTree {
    let mut shape = g.shape().clone();
    let m = g.leaf_level(leaf);
    let base = g.sigma(leaf).clone();
    let mut sigma: BTreeMap<String, Poly> = g
        .leaves()
        .iter()
        .map(|l| (l.to_string(), g.sigma(l).clone()))
        .collect();
    sigma.remove(leaf);
    for (i, c) in offsets.iter().enumerate() {
        let child = format!("{}_s{}", leaf, i);
        shape.add_child(leaf, &child).unwrap();
        sigma.insert(child.clone(), &base + &Poly::monomial(c.clone(), m));
    }
    LabelledTree::new(shape, sigma).unwrap()
}

/// Random valid morphism: a base tree is sprouted on one side to create
/// blow-down fibers (source) and on disjoint leaves on the other side to
/// make the embedding non-surjective (target).
pub fn random_morphism(rng: &mut ChaCha8Rng) -> TreeMorphism {
    let base = random_tree(rng, 6, 4);
    let base_leaves: Vec<String> = base.leaves().iter().map(|l| l.to_string()).collect();
    let mut pick = base_leaves.clone();
    pick.shuffle(rng);
    let n_src = rng.gen_range(0..=3.min(pick.len()));
    let src_sprouted: Vec<String> = pick[..n_src].to_vec();
    let rest = &pick[n_src..];
    let n_tgt = rng.gen_range(0..=1.min(rest.len()));
    let tgt_sprouted: Vec<String> = rest[..n_tgt].to_vec();

    let mut source = base.clone();
    for leaf in &src_sprouted {
        let k = rng.gen_range(2..=3);
        let offsets: Vec<Rat> = (0..k).map(|i| rat(i as i64, 1)).collect();
        source = sprout(&source, leaf, &offsets);
    }
    let mut target = base.clone();
    for leaf in &tgt_sprouted {
        // a zero offset keeps a child congruent to the old leaf; the source
        // leaf must descend one level with it to respect m_{j(i)} <= m'_i
        let offsets = vec![rat(0, 1), rat(1, 1)];
        target = sprout(&target, leaf, &offsets);
        source = extend_leaf(&source, leaf, 1);
    }

    let mut images: BTreeMap<String, String> = BTreeMap::new();
    for leaf in source.leaves() {
        let base_leaf = src_sprouted
            .iter()
            .chain(tgt_sprouted.iter())
            .find(|s| leaf.starts_with(&format!("{}_", s)))
            .cloned()
            .unwrap_or_else(|| leaf.to_string());
        let image = if tgt_sprouted.contains(&base_leaf) {
            format!("{}_s0", base_leaf)
        } else {
            base_leaf
        };
        images.insert(leaf.to_string(), image);
    }
    glue_morphisms(&source, &target, &images).unwrap()
}

/// The broom Gamma_{r,m,n}: a spine of length r followed by n chains of
/// length m, one per label. The labels must differ pairwise at order
/// exactly r.
pub fn build_broom(r: usize, m: usize, labels: &[Poly]) -> LabelledTree {
    assert!(m >= 1 && !labels.is_empty());
    let mut shape = RootedTree::new("e0");
    for k in 1..=r {
        shape.add_child(&format!("e{}", k - 1), &format!("e{}", k)).unwrap();
    }
    let top = format!("e{}", r);
    let mut sigma = BTreeMap::new();
    for (i, label) in labels.iter().enumerate() {
        let mut parent = top.clone();
        for k in 1..=m {
            let node = format!("b{}_{}", i, k);
            shape.add_child(&parent, &node).unwrap();
            parent = node;
        }
        sigma.insert(parent, label.clone());
    }
    LabelledTree::new(shape, sigma).unwrap()
}

/// The tree of the family gamma_t: one leaf of level 2 labelled 1 + t*x
/// and one leaf of level 1 labelled 0.
pub fn gamma_t(t: i64) -> LabelledTree {
    let mut shape = RootedTree::new("r");
    shape.add_child("r", "a").unwrap();
    shape.add_child("a", "a1").unwrap();
    shape.add_child("r", "b").unwrap();
    let mut sigma = BTreeMap::new();
    sigma.insert("a1".to_string(), Poly::from_i64(&[1, t]));
    sigma.insert("b".to_string(), Poly::zero());
    LabelledTree::new(shape, sigma).unwrap()
}

/// Pushes a leaf `extra` levels deeper along a chain; the label moves to
/// the new end, which preserves validity.
pub fn extend_leaf(g: &LabelledTree, leaf: &str, extra: usize) -> LabelledTree {
    let mut shape = g.shape().clone();
    let mut sigma: BTreeMap<String, Poly> = g
        .leaves()
        .iter()
        .map(|l| (l.to_string(), g.sigma(l).clone()))
        .collect();
    let label = sigma.remove(leaf).unwrap();
    let mut parent = leaf.to_string();
    for k in 1..=extra {
        let node = format!("{}_c{}", leaf, k);
        shape.add_child(&parent, &node).unwrap();
        parent = node;
    }
    sigma.insert(parent, label);
    LabelledTree::new(shape, sigma).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..n {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// Exhaustive equivalence oracle for small trees: enumerates every leaf
/// bijection between the essential subtrees, keeps those preserving leaf
/// levels and the ancestry ultrametric, and solves the interpolation system
/// a*sigma'_i + b = sigma_{j(i)} mod x^{m_{j(i)}} by Gaussian elimination.
pub fn brute_force_equivalence(
    target: &LabelledTree,
    source: &LabelledTree,
    strict_constant_b: bool,
) -> Option<EquivalenceWitness> {
    let (src_es, _, _) = source.essentialize();
    let (tgt_es, _, _) = target.essentialize();
    let src_leaves: Vec<String> = src_es.leaves().iter().map(|l| l.to_string()).collect();
    let tgt_leaves: Vec<String> = tgt_es.leaves().iter().map(|l| l.to_string()).collect();
    if src_leaves.len() != tgt_leaves.len() {
        return None;
    }
    let n = src_leaves.len();
    let u_src = extract_ultrametric(&src_es, &src_leaves);
    let u_tgt = extract_ultrametric(&tgt_es, &tgt_leaves);
    let height = tgt_es.shape().height().max(1);
    let num_b = if strict_constant_b { 1 } else { height };

    'perm: for p in permutations(n) {
        for i in 0..n {
            if u_src.m[i] != u_tgt.m[p[i]] {
                continue 'perm;
            }
            for j in 0..i {
                if u_src.d[i][j] != u_tgt.d[p[i]][p[j]] {
                    continue 'perm;
                }
            }
        }
        // unknowns (a, b_0, ..., b_{num_b-1})
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        let mut rhs: Vec<Rat> = Vec::new();
        for i in 0..n {
            let s = src_es.sigma(&src_leaves[i]);
            let t = tgt_es.sigma(&tgt_leaves[p[i]]);
            for k in 0..u_tgt.m[p[i]] {
                let mut row = vec![Rat::zero(); 1 + num_b];
                row[0] = s.coeff(k);
                if k < num_b {
                    row[1 + k] = rat(1, 1);
                }
                rows.push(row);
                rhs.push(t.coeff(k));
            }
        }
        let v = if rows.is_empty() {
            // no constraints (single nodes): the identity relabelling works
            let mut free = vec![Rat::zero(); 1 + num_b];
            free[0] = rat(1, 1);
            free
        } else {
            let Some(sol) = solve_linear(&rows, &rhs) else {
                continue 'perm;
            };
            let mut v = sol.particular.clone();
            if v[0].is_zero() {
                if let Some(dir) = sol.nullspace.iter().find(|d| !d[0].is_zero()) {
                    for (vi, di) in v.iter_mut().zip(dir) {
                        *vi += di.clone();
                    }
                } else {
                    continue 'perm;
                }
            }
            v
        };
        let witness = EquivalenceWitness {
            leaf_map: (0..n)
                .map(|i| (src_leaves[i].clone(), tgt_leaves[p[i]].clone()))
                .collect(),
            a: v[0].clone(),
            b: Poly::from_coeffs(v[1..].to_vec()),
        };
        if witness.verify(&src_es, &tgt_es) {
            return Some(witness);
        }
    }
    None
}
