//! The tree-to-surface dictionary: per-chart gluing data and Laurent
//! transition functions, the affineness criterion, canonical morphism and
//! morphism gluing data, the canonical-sheaf / Makar-Limanov / ODS
//! predicates, and explicit equation systems for brooms and combs with
//! symbolic chart verification.

use std::collections::BTreeMap;

use crate::exactalg::{LaurentPoly, MultiPoly, Poly, Rat, RatFunc};
use crate::labelled::{LabelledTree, TreeMorphism};
use crate::trees::RootedTree;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("not a broom: {0}")]
    NotABroom(String),
    #[error("invalid comb specification: {0}")]
    InvalidSpec(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
}

/// Chartwise gluing data of the surface S(gamma): one chart per leaf, in
/// the tree's depth-first leaf order, with Laurent transition functions
/// g_ij = x^{-m_i} (sigma_j - sigma_i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceDescriptor {
    pub leaves: Vec<String>,
    pub n: usize,
    pub h: usize,
    pub m: Vec<usize>,
    pub mu: Vec<usize>,
    pub sigma: Vec<Poly>,
    pub transition: Vec<Vec<LaurentPoly>>,
}

impl SurfaceDescriptor {
    /// g_ji = -x^{m_i - m_j} g_ij for every off-diagonal pair.
    pub fn antisymmetry_holds(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                if i == j {
                    continue;
                }
                let shifted = self.transition[i][j]
                    .mul_x_pow(self.m[i] as i64 - self.m[j] as i64);
                if self.transition[j][i] != -&shifted {
                    return false;
                }
            }
        }
        true
    }

    /// Chart consistency as a Laurent identity: substituting the chart
    /// change T_i = g_ij + x^{m_j - m_i} T_j into y_i = sigma_i + x^{m_i} T_i
    /// must reproduce y_j, which reduces to sigma_i + x^{m_i} g_ij = sigma_j.
    pub fn chart_consistency_holds(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                if i == j {
                    continue;
                }
                let lhs = &LaurentPoly::from_poly(&self.sigma[i])
                    + &self.transition[i][j].mul_x_pow(self.m[i] as i64);
                if lhs != LaurentPoly::from_poly(&self.sigma[j]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Computes the descriptor of S(gamma) for a valid labelled tree.
pub fn descriptor(g: &LabelledTree) -> SurfaceDescriptor {
    let leaves: Vec<String> = g.leaves().into_iter().map(|l| l.to_string()).collect();
    let n = leaves.len();
    let h = g.shape().height();
    let m: Vec<usize> = leaves.iter().map(|l| g.leaf_level(l)).collect();
    let mu: Vec<usize> = m.iter().map(|&mi| h - mi).collect();
    let sigma: Vec<Poly> = leaves.iter().map(|l| g.sigma(l).clone()).collect();
    let mut transition = vec![vec![LaurentPoly::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let diff = &sigma[j] - &sigma[i];
            transition[i][j] = LaurentPoly::from_poly_shifted(&diff, -(m[i] as i64));
        }
    }
    SurfaceDescriptor {
        leaves,
        n,
        h,
        m,
        mu,
        sigma,
        transition,
    }
}

/// S(gamma) is affine iff it has a single chart or every transition
/// function has a pole at x = 0.
pub fn is_affine(d: &SurfaceDescriptor) -> bool {
    if d.n == 1 {
        return true;
    }
    for i in 0..d.n {
        for j in 0..d.n {
            if i == j {
                continue;
            }
            if !matches!(d.transition[i][j].min_exponent(), Some(e) if e < 0) {
                return false;
            }
        }
    }
    true
}

/// The data (h, mu, sigma) of the canonical morphism S(gamma) -> A^1_X,
/// given in chart i by y = sigma_i + x^{m_i} T_i.
pub fn canonical_morphism_data(g: &LabelledTree) -> (usize, Vec<usize>, Vec<Poly>) {
    let d = descriptor(g);
    (d.h, d.mu, d.sigma)
}

/// The concrete data of the DFS morphism induced by a tree morphism:
/// per source leaf i (depth-first order) the image leaf j(i),
/// nu_i = mu_{j(i)} in the target, and the exact quotient
/// sigma''_i = (sigma'_i - sigma_{j(i)}) / x^{m_{j(i)}}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismGluingData {
    pub leaf_map: Vec<(String, String)>,
    pub nu: Vec<usize>,
    pub sigma_double_prime: Vec<Poly>,
}

pub fn morphism_gluing_data(phi: &TreeMorphism) -> Result<MorphismGluingData, SurfaceError> {
    let violations = phi.validate();
    if !violations.is_empty() {
        return Err(SurfaceError::InvalidMorphism(violations[0].to_string()));
    }
    let target = phi.target();
    let h_tgt = target.shape().height();
    let mut leaf_map = Vec::new();
    let mut nu = Vec::new();
    let mut sigma_double_prime = Vec::new();
    for leaf in phi.source().leaves() {
        let image = phi.image(leaf).unwrap().to_string();
        let m_tgt = target.leaf_level(&image);
        let diff = phi.source().sigma(leaf) - target.sigma(&image);
        let quotient = diff
            .div_exact_by_x_pow(m_tgt)
            .expect("valid morphism satisfies the leaf congruence");
        leaf_map.push((leaf.to_string(), image));
        nu.push(h_tgt - m_tgt);
        sigma_double_prime.push(quotient);
    }
    Ok(MorphismGluingData {
        leaf_map,
        nu,
        sigma_double_prime,
    })
}

/// The canonical sheaf of S(gamma) is trivial iff all leaves of the
/// essential tree sit at one level; this is also the criterion for a free
/// additive-group action.
pub fn canonical_sheaf_trivial(g: &LabelledTree) -> bool {
    let (es, _, _) = g.essentialize();
    let levels: Vec<usize> = es.leaves().iter().map(|l| es.leaf_level(l)).collect();
    levels.windows(2).all(|w| w[0] == w[1])
}

/// ML(S(gamma)) is trivial iff the essential tree is a comb.
pub fn ml_trivial(g: &LabelledTree) -> bool {
    let (es, _, _) = g.essentialize();
    es.shape().is_comb()
}

/// S(gamma) is an ordinary Danielewski surface S_{P,1} iff the essential
/// tree is a comb of height at most 1; equal to
/// ml_trivial && canonical_sheaf_trivial.
pub fn ods_characterization(g: &LabelledTree) -> bool {
    let (es, _, _) = g.essentialize();
    es.shape().is_comb() && es.shape().height() <= 1
}

/// One special-fiber component per leaf: the component's y-value at x = 0
/// is the constant term of sigma_i.
pub fn fiber_components(g: &LabelledTree) -> Vec<(String, Rat)> {
    g.leaves()
        .into_iter()
        .map(|l| (l.to_string(), g.sigma(l).constant_term()))
        .collect()
}

/// An embedded model: variables, defining relations and the rational chart
/// substitutions over the locus where the first variable is invertible.
#[derive(Debug, Clone)]
pub struct EquationSystem {
    pub variables: Vec<String>,
    pub relations: Vec<MultiPoly>,
    pub charts: BTreeMap<String, RatFunc>,
}

impl EquationSystem {
    /// Symbolic soundness: every relation vanishes identically under the
    /// chart substitutions.
    pub fn verify(&self) -> bool {
        self.relations
            .iter()
            .all(|r| matches!(r.substitute(&self.charts), Ok(v) if v.is_zero()))
    }

    /// JSON document {"charts": {...}, "relations": [...], "variables":
    /// [...]}; polynomials and rational functions use the text syntax.
    pub fn to_json(&self) -> serde_json::Value {
        let charts: serde_json::Map<String, serde_json::Value> = self
            .charts
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.to_string())))
            .collect();
        serde_json::json!({
            "charts": charts,
            "relations": self.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "variables": self.variables,
        })
    }
}

/// Embedding data for a broom: the defining equation x^m z = P(y) plus the
/// canonical morphism expression x^r y + c recovering the original
/// coordinate.
#[derive(Debug, Clone)]
pub struct BroomEquations {
    pub system: EquationSystem,
    pub canonical_morphism: MultiPoly,
    pub m: usize,
    pub r: usize,
}

fn x_pow(k: usize) -> MultiPoly {
    MultiPoly::var("x").pow(k as u32)
}

/// Emits A[y,z] / (x^m z - P(y)) with P(y) = prod (y - sigma~_i) for a tree
/// whose essential shape is a broom (root with n chains of equal length m);
/// chains count as the degenerate broom with m = 1. The chart map inverts x
/// and solves the relation for z.
pub fn emit_broom_equations(g: &LabelledTree) -> Result<BroomEquations, SurfaceError> {
    let (es, c, level) = g.essentialize();
    let (r, m, tilde): (usize, usize, Vec<Poly>) = if es.shape().node_count() == 1 {
        if level == 0 {
            // a single-node tree: S(gamma) is the trivial line bundle
            (0, 0, vec![Poly::zero()])
        } else {
            // chain of length L: the broom Gamma_{L-1,1,1}
            let leaf = g.leaves()[0];
            let cut = level - 1;
            let head = g.sigma(leaf).trunc_mod(cut);
            let tail = (g.sigma(leaf) - &head).div_exact_by_x_pow(cut).unwrap();
            return finish_broom(cut, 1, vec![tail], head);
        }
    } else {
        let shape = es.shape();
        let leaves = es.leaves();
        let m0 = es.leaf_level(leaves[0]);
        for l in &leaves {
            if es.leaf_level(l) != m0 {
                return Err(SurfaceError::NotABroom(
                    "leaves of the essential tree sit at different levels".to_string(),
                ));
            }
        }
        for child in shape.children(shape.root()).unwrap() {
            if !shape.maximal_subtree(child).unwrap().is_chain() {
                return Err(SurfaceError::NotABroom(format!(
                    "subtree at `{}` branches again",
                    child
                )));
            }
        }
        let tilde = leaves.iter().map(|l| es.sigma(l).clone()).collect();
        (level, m0, tilde)
    };
    finish_broom(r, m, tilde, c)
}

fn finish_broom(
    r: usize,
    m: usize,
    tilde: Vec<Poly>,
    c: Poly,
) -> Result<BroomEquations, SurfaceError> {
    let y = MultiPoly::var("y");
    let mut p = MultiPoly::one();
    for s in &tilde {
        p = &p * &(&y - &MultiPoly::from_poly(s));
    }
    let relation = &(&x_pow(m) * &MultiPoly::var("z")) - &p;

    let mut charts = BTreeMap::new();
    charts.insert("x".to_string(), RatFunc::var("x"));
    charts.insert("y".to_string(), RatFunc::var("y"));
    charts.insert(
        "z".to_string(),
        RatFunc::new(p, x_pow(m)).expect("x^m is nonzero"),
    );
    let system = EquationSystem {
        variables: vec!["x".to_string(), "y".to_string(), "z".to_string()],
        relations: vec![relation],
        charts,
    };
    let canonical = &(&x_pow(r) * &MultiPoly::var("y")) + &MultiPoly::from_poly(&c);
    Ok(BroomEquations {
        system,
        canonical_morphism: canonical,
        m,
        r,
    })
}

/// A comb presented by polynomials P_1, ..., P_n through their simple
/// roots; the first root of each P_i is the distinguished one continuing
/// the spine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombSpec {
    pub levels: Vec<Vec<Rat>>,
}

impl CombSpec {
    pub fn validate(&self) -> Result<(), SurfaceError> {
        if self.levels.is_empty() {
            return Err(SurfaceError::InvalidSpec("no polynomials given".to_string()));
        }
        for (i, roots) in self.levels.iter().enumerate() {
            if roots.is_empty() {
                return Err(SurfaceError::InvalidSpec(format!(
                    "P_{} has no roots",
                    i + 1
                )));
            }
            for (a, r) in roots.iter().enumerate() {
                if roots.iter().skip(a + 1).any(|s| s == r) {
                    return Err(SurfaceError::InvalidSpec(format!(
                        "P_{} has a repeated root",
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// prod (expr - root) over the given roots.
fn poly_from_roots(expr: &MultiPoly, roots: &[Rat]) -> MultiPoly {
    let mut p = MultiPoly::one();
    for r in roots {
        p = &p * &(expr - &MultiPoly::constant(r.clone()));
    }
    p
}

fn ratfunc_from_roots(expr: &RatFunc, roots: &[Rat]) -> RatFunc {
    let mut p = RatFunc::from_multipoly(MultiPoly::one());
    for r in roots {
        let shifted = expr - &RatFunc::from_multipoly(MultiPoly::constant(r.clone()));
        p = &p * &shifted;
    }
    p
}

/// Emits the full relation system of the surface S_{P_1,...,P_n} in the
/// variables X_0, ..., X_{n+1}:
///   X_0 X_{j+1} = prod_{i<j} R_i(X_i) * P_j(X_j)            (1 <= j <= n)
///   (X_{j-1} - l_{j-1,1}) X_{l+1}
///       = X_j * prod_{i=j..l-1} R_i(X_i) * P_l(X_l)         (2 <= j <= l <= n)
/// with R_i = P_i / (T - l_{i,1}), plus the labelled comb the surface
/// corresponds to.
pub fn emit_comb_equations(
    spec: &CombSpec,
) -> Result<(EquationSystem, LabelledTree), SurfaceError> {
    spec.validate()?;
    let n = spec.levels.len();
    let variables: Vec<String> = (0..=n + 1).map(|i| format!("X_{}", i)).collect();
    let xs: Vec<MultiPoly> = variables.iter().map(|v| MultiPoly::var(v)).collect();

    // R_i drops the distinguished (first) root of P_i
    let p_of = |i: usize, expr: &MultiPoly| poly_from_roots(expr, &spec.levels[i]);
    let r_of = |i: usize, expr: &MultiPoly| poly_from_roots(expr, &spec.levels[i][1..]);

    let mut relations = Vec::new();
    for j in 1..=n {
        let mut rhs = MultiPoly::one();
        for i in 1..j {
            rhs = &rhs * &r_of(i - 1, &xs[i]);
        }
        rhs = &rhs * &p_of(j - 1, &xs[j]);
        relations.push(&(&xs[0] * &xs[j + 1]) - &rhs);
    }
    for j in 2..=n {
        for l in j..=n {
            let lam = MultiPoly::constant(spec.levels[j - 2][0].clone());
            let lhs = &(&xs[j - 1] - &lam) * &xs[l + 1];
            let mut rhs = xs[j].clone();
            for i in j..l {
                rhs = &rhs * &r_of(i - 1, &xs[i]);
            }
            rhs = &rhs * &p_of(l - 1, &xs[l]);
            relations.push(&lhs - &rhs);
        }
    }

    // chart over the X_0-invertible locus: X_0 and X_1 free, every later
    // variable solved from the first relation family
    let mut chart_exprs: Vec<RatFunc> = vec![RatFunc::var("X_0"), RatFunc::var("X_1")];
    let inv_x0 = RatFunc::new(MultiPoly::one(), MultiPoly::var("X_0")).unwrap();
    for j in 1..=n {
        let mut rhs = RatFunc::from_multipoly(MultiPoly::one());
        for i in 1..j {
            rhs = &rhs * &ratfunc_from_roots(&chart_exprs[i], &spec.levels[i - 1][1..]);
        }
        rhs = &rhs * &ratfunc_from_roots(&chart_exprs[j], &spec.levels[j - 1]);
        chart_exprs.push(&rhs * &inv_x0);
    }
    let charts: BTreeMap<String, RatFunc> = variables
        .iter()
        .cloned()
        .zip(chart_exprs.into_iter())
        .collect();

    let system = EquationSystem {
        variables,
        relations,
        charts,
    };
    Ok((system, comb_tree(spec)))
}

/// The labelled comb of a comb spec: the spine follows the distinguished
/// roots; at depth i each non-distinguished root of P_i ends in a leaf, and
/// at depth n every root does. Labels are the partial sums
/// sum_t lambda_{t,1} x^{t-1} ending in the leaf's own root.
fn comb_tree(spec: &CombSpec) -> LabelledTree {
    let n = spec.levels.len();
    let mut shape = RootedTree::new("e0");
    let mut sigma = BTreeMap::new();
    let mut spine_prefix = Poly::zero();
    for (i, roots) in spec.levels.iter().enumerate() {
        let depth = i + 1;
        let parent = format!("e{}", i);
        for (j, root) in roots.iter().enumerate() {
            let leaf_label = &spine_prefix + &Poly::monomial(root.clone(), depth - 1);
            if j == 0 {
                let id = format!("e{}", depth);
                shape.add_child(&parent, &id).unwrap();
                if depth == n {
                    sigma.insert(id, leaf_label);
                }
            } else {
                let id = format!("l{}_{}", depth, j);
                shape.add_child(&parent, &id).unwrap();
                sigma.insert(id, leaf_label);
            }
        }
        spine_prefix = &spine_prefix + &Poly::monomial(roots[0].clone(), depth - 1);
    }
    LabelledTree::new(shape, sigma).expect("comb construction labels every leaf")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_multipoly, parse_poly, rat_int};
    use crate::labelled::fixtures::*;
    use crate::labelled::identity_morphism;

    #[test]
    fn intro_broom_descriptor_and_equation() {
        for j in 1..=3usize {
            let g = broom(0, j, 2, &["1", "-1"]);
            let d = descriptor(&g);
            assert_eq!(d.n, 2);
            assert_eq!(d.m, vec![j, j]);
            assert_eq!(d.mu, vec![0, 0]);
            assert_eq!(
                d.transition[0][1],
                LaurentPoly::monomial(rat_int(-2), -(j as i64))
            );
            assert!(d.antisymmetry_holds());
            assert!(d.chart_consistency_holds());
            assert!(is_affine(&d));

            let eq = emit_broom_equations(&g).unwrap();
            let expected =
                parse_multipoly(&format!("x^{}*z - (y^2 - 1)", j)).unwrap();
            assert_eq!(eq.system.relations, vec![expected]);
            assert!(eq.system.verify());
        }
    }

    #[test]
    fn single_leaf_descriptor() {
        let g = LabelledTree::single_node("pt", Poly::zero());
        let d = descriptor(&g);
        assert_eq!(d.n, 1);
        assert!(is_affine(&d));
        let (h, mu, sigma) = canonical_morphism_data(&g);
        assert_eq!((h, mu), (0, vec![0]));
        assert_eq!(sigma, vec![Poly::zero()]);
    }

    #[test]
    fn gamma_descriptor_pole_orders() {
        let g = gamma_t(1);
        let d = descriptor(&g);
        // leaf levels 2 and 1 give poles of order 2 and 1
        assert_eq!(d.m, vec![2, 1]);
        assert_eq!(d.transition[0][1].min_exponent(), Some(-2));
        assert_eq!(d.transition[1][0].min_exponent(), Some(-1));
        assert!(d.antisymmetry_holds());
        assert!(is_affine(&d));
    }

    #[test]
    fn hand_built_descriptor_without_pole_is_not_affine() {
        let one = LaurentPoly::monomial(rat_int(1), 0);
        let d = SurfaceDescriptor {
            leaves: vec!["a".to_string(), "b".to_string()],
            n: 2,
            h: 0,
            m: vec![0, 0],
            mu: vec![0, 0],
            sigma: vec![Poly::zero(), Poly::one()],
            transition: vec![
                vec![LaurentPoly::zero(), one.clone()],
                vec![-&one, LaurentPoly::zero()],
            ],
        };
        assert!(!is_affine(&d));
    }

    #[test]
    fn gluing_data_of_identity_and_blow_down() {
        let g = bml_tree();
        let id = identity_morphism(&g);
        let data = morphism_gluing_data(&id).unwrap();
        assert!(data.sigma_double_prime.iter().all(|p| p.is_zero()));

        let (_hat, tau) = g.blow_down("e").unwrap();
        let data = morphism_gluing_data(&tau).unwrap();
        // collapsed leaves e1 (x) and e2 (-x) over target label 0 at level 1
        let by_leaf: BTreeMap<&str, &Poly> = data
            .leaf_map
            .iter()
            .zip(&data.sigma_double_prime)
            .map(|((s, _), p)| (s.as_str(), p))
            .collect();
        assert_eq!(by_leaf["e1"], &Poly::one());
        assert_eq!(by_leaf["e2"], &parse_poly("-1").unwrap());
        assert_eq!(by_leaf["p"], &Poly::zero());
    }

    #[test]
    fn predicates_on_fixtures() {
        assert!(ml_trivial(&broom(0, 1, 3, &["0", "1", "2"])));
        assert!(canonical_sheaf_trivial(&broom(0, 2, 2, &["1", "-1"])));
        assert!(!ml_trivial(&z2_tree()));
        assert!(!canonical_sheaf_trivial(&gamma_t(1)));
        assert!(ml_trivial(&gamma_t(1)));
        assert!(ods_characterization(&broom(0, 1, 3, &["0", "1", "2"])));
        assert!(!ods_characterization(&broom(0, 2, 2, &["1", "-1"])));
        assert!(ods_characterization(&LabelledTree::single_node(
            "pt",
            Poly::zero()
        )));
        // chains are combs
        assert!(ml_trivial(&broom(3, 0, 0, &["1 + x"])));
        for g in [
            bml_tree(),
            z2_tree(),
            gamma_t(0),
            broom(0, 2, 2, &["1", "-1"]),
        ] {
            assert_eq!(
                ods_characterization(&g),
                ml_trivial(&g) && canonical_sheaf_trivial(&g)
            );
        }
    }

    #[test]
    fn broom_equations_special_cases() {
        // P = {0}, m = 1: the graph surface xz = y
        let g = broom(0, 1, 1, &["0"]);
        // a root with a single chain is not essential; feed the honest broom
        let eq = emit_broom_equations(&g).unwrap();
        assert_eq!(
            eq.system.relations,
            vec![parse_multipoly("x*z - y").unwrap()]
        );
        assert!(eq.system.verify());

        // chain: Gamma_{L-1,1,1} presentation
        let chain = broom(3, 0, 0, &["1 + x^2"]);
        let eq = emit_broom_equations(&chain).unwrap();
        assert_eq!((eq.r, eq.m), (2, 1));
        assert!(eq.system.verify());
        assert_eq!(
            eq.canonical_morphism,
            parse_multipoly("x^2*y + 1").unwrap()
        );

        // essentialization shifts the handle into the canonical morphism
        let shifted = broom(2, 1, 2, &["x^2", "-x^2"]);
        let eq = emit_broom_equations(&shifted).unwrap();
        assert_eq!((eq.r, eq.m), (2, 1));
        assert_eq!(
            eq.system.relations,
            vec![parse_multipoly("x*z - (y^2 - 1)").unwrap()]
        );
        assert_eq!(eq.canonical_morphism, parse_multipoly("x^2*y").unwrap());

        // non-broom rejection
        assert!(matches!(
            emit_broom_equations(&bml_tree()),
            Err(SurfaceError::NotABroom(_))
        ));
        assert!(matches!(
            emit_broom_equations(&gamma_t(0)),
            Err(SurfaceError::NotABroom(_))
        ));
    }

    #[test]
    fn broom_with_polynomial_labels_verifies() {
        let g = broom(0, 2, 2, &["x", "1 + x"]);
        let eq = emit_broom_equations(&g).unwrap();
        assert!(eq.system.verify());
    }

    #[test]
    fn bml_comb_system() {
        let spec = CombSpec {
            levels: vec![
                vec![rat_int(0), rat_int(1), rat_int(-1)],
                vec![rat_int(1), rat_int(-1)],
            ],
        };
        let (system, comb) = emit_comb_equations(&spec).unwrap();
        assert_eq!(system.variables, vec!["X_0", "X_1", "X_2", "X_3"]);
        assert_eq!(system.relations.len(), 3);
        // xz = y(y^2 - 1), xu = (y^2 - 1)(z^2 - 1), yu = z(z^2 - 1)
        let sub = |s: &str| {
            parse_multipoly(s)
                .unwrap()
        };
        assert_eq!(
            system.relations[0],
            sub("X_0*X_2 - X_1*(X_1^2 - 1)")
        );
        assert_eq!(
            system.relations[1],
            sub("X_0*X_3 - (X_1^2 - 1)*(X_2^2 - 1)")
        );
        assert_eq!(system.relations[2], sub("X_1*X_3 - X_2*(X_2^2 - 1)"));
        assert!(system.verify());

        // the comb: spine root -> e1 -> e2 with leaves 1, -1 at depth 1 and
        // 1 + x, 1 - x, and the spine leaf x at depth 2
        assert!(comb.shape().is_comb());
        assert!(comb.is_valid());
        assert_eq!(comb.leaves().len(), 4);
        assert_eq!(comb.sigma("l1_1"), &parse_poly("1").unwrap());
        assert_eq!(comb.sigma("l1_2"), &parse_poly("-1").unwrap());
        assert_eq!(comb.sigma("e2"), &parse_poly("x").unwrap());
        assert_eq!(comb.sigma("l2_1"), &parse_poly("-x").unwrap());
        assert_eq!(
            fiber_components(&comb).len(),
            (3 - 1) + 2
        );
    }

    #[test]
    fn single_poly_comb_is_the_bml_first_relation() {
        let spec = CombSpec {
            levels: vec![vec![rat_int(0), rat_int(1), rat_int(-1)]],
        };
        let (system, comb) = emit_comb_equations(&spec).unwrap();
        assert_eq!(system.relations.len(), 1);
        assert_eq!(
            system.relations[0],
            parse_multipoly("X_0*X_2 - X_1*(X_1^2 - 1)").unwrap()
        );
        assert!(system.verify());
        assert_eq!(comb.leaves().len(), 3);
        assert!(ods_characterization(&comb));
    }

    #[test]
    fn three_level_comb_verifies() {
        let spec = CombSpec {
            levels: vec![
                vec![rat_int(0), rat_int(1)],
                vec![crate::exactalg::rat(1, 2), rat_int(2), rat_int(-1)],
                vec![rat_int(3), rat_int(-3)],
            ],
        };
        let (system, comb) = emit_comb_equations(&spec).unwrap();
        // n relations of family 1 plus the triangular family 2
        assert_eq!(system.relations.len(), 3 + 3);
        assert!(system.verify());
        assert!(comb.is_valid());
        assert!(ml_trivial(&comb));
        assert_eq!(comb.leaves().len(), (2 - 1) + (3 - 1) + 2);
    }

    #[test]
    fn invalid_comb_specs_are_rejected() {
        assert!(matches!(
            emit_comb_equations(&CombSpec { levels: vec![] }),
            Err(SurfaceError::InvalidSpec(_))
        ));
        assert!(matches!(
            emit_comb_equations(&CombSpec {
                levels: vec![vec![rat_int(1), rat_int(1)]],
            }),
            Err(SurfaceError::InvalidSpec(_))
        ));
        assert!(matches!(
            emit_comb_equations(&CombSpec {
                levels: vec![vec![]],
            }),
            Err(SurfaceError::InvalidSpec(_))
        ));
    }

    #[test]
    fn json_shape_is_stable() {
        let g = broom(0, 2, 2, &["1", "-1"]);
        let eq = emit_broom_equations(&g).unwrap();
        let json = eq.system.to_json();
        assert_eq!(
            json["relations"],
            serde_json::json!(["x^2*z - y^2 + 1"])
        );
        assert_eq!(json["variables"], serde_json::json!(["x", "y", "z"]));
        let keys: Vec<&String> = json.as_object().unwrap().keys().collect();
        assert_eq!(keys, vec!["charts", "relations", "variables"]);
    }
}
