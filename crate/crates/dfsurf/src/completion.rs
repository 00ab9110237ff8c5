//! Combinatorial projective completion: SNC blow-up bookkeeping on curve
//! configurations, the replayed completion of S(gamma), the closed-form
//! boundary dual graph with self-intersections, the minimality check and
//! the boundary-chain test for Makar-Limanov triviality.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::labelled::LabelledTree;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CompletionError {
    #[error("invalid blow-up center: {0}")]
    InvalidCenter(String),
    #[error("duplicate curve `{0}`")]
    DuplicateCurve(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub name: String,
    pub self_intersection: i64,
    pub is_boundary: bool,
}

/// An SNC configuration of curves: self-intersections plus a symmetric
/// adjacency relation (transversal single-point intersections).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveConfig {
    curves: Vec<Curve>,
    adjacency: Vec<Vec<bool>>,
}

impl CurveConfig {
    pub fn new() -> Self {
        CurveConfig {
            curves: Vec::new(),
            adjacency: Vec::new(),
        }
    }

    pub fn add_curve(
        &mut self,
        name: &str,
        self_intersection: i64,
        is_boundary: bool,
    ) -> Result<usize, CompletionError> {
        if self.index(name).is_some() {
            return Err(CompletionError::DuplicateCurve(name.to_string()));
        }
        let ix = self.curves.len();
        self.curves.push(Curve {
            name: name.to_string(),
            self_intersection,
            is_boundary,
        });
        for row in &mut self.adjacency {
            row.push(false);
        }
        self.adjacency.push(vec![false; ix + 1]);
        Ok(ix)
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.curves.iter().position(|c| c.name == name)
    }

    pub fn curve(&self, name: &str) -> Option<&Curve> {
        self.index(name).map(|ix| &self.curves[ix])
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn set_adjacent(&mut self, a: &str, b: &str, adjacent: bool) {
        let (i, j) = (self.index(a).unwrap(), self.index(b).unwrap());
        assert_ne!(i, j, "no self-adjacency");
        self.adjacency[i][j] = adjacent;
        self.adjacency[j][i] = adjacent;
    }

    pub fn is_adjacent(&self, a: &str, b: &str) -> bool {
        match (self.index(a), self.index(b)) {
            (Some(i), Some(j)) => self.adjacency[i][j],
            _ => false,
        }
    }

    pub fn degree(&self, name: &str) -> usize {
        let i = self.index(name).unwrap();
        self.adjacency[i].iter().filter(|&&a| a).count()
    }

    /// The sub-configuration spanned by the boundary curves.
    pub fn boundary_restriction(&self) -> CurveConfig {
        let keep: Vec<usize> = (0..self.curves.len())
            .filter(|&i| self.curves[i].is_boundary)
            .collect();
        let mut out = CurveConfig::new();
        for &i in &keep {
            let c = &self.curves[i];
            out.add_curve(&c.name, c.self_intersection, true).unwrap();
        }
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate().skip(a + 1) {
                if self.adjacency[i][j] {
                    out.adjacency[a][b] = true;
                    out.adjacency[b][a] = true;
                }
            }
        }
        out
    }

    /// Order-independent view: per-curve data plus the edge set, keyed by
    /// names.
    pub fn snapshot(&self) -> (BTreeMap<String, (i64, bool)>, BTreeSet<(String, String)>) {
        let mut nodes = BTreeMap::new();
        for c in &self.curves {
            nodes.insert(c.name.clone(), (c.self_intersection, c.is_boundary));
        }
        let mut edges = BTreeSet::new();
        for i in 0..self.curves.len() {
            for j in (i + 1)..self.curves.len() {
                if self.adjacency[i][j] {
                    let (a, b) = (self.curves[i].name.clone(), self.curves[j].name.clone());
                    edges.insert(if a < b { (a, b) } else { (b, a) });
                }
            }
        }
        (nodes, edges)
    }

    /// True iff the configuration graph is a path: connected, acyclic and
    /// every curve meets at most two others.
    pub fn is_chain(&self) -> bool {
        let n = self.curves.len();
        if n == 0 {
            return true;
        }
        let edges: usize = (0..n)
            .map(|i| self.adjacency[i].iter().filter(|&&a| a).count())
            .sum::<usize>()
            / 2;
        if edges != n - 1 {
            return false;
        }
        if (0..n).any(|i| self.adjacency[i].iter().filter(|&&a| a).count() > 2) {
            return false;
        }
        // connectivity
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if self.adjacency[i][j] && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Graphviz DOT output: nodes labelled "name (s=k)" in stored order,
    /// edges in index order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph boundary {\n");
        for c in &self.curves {
            writeln!(
                out,
                "  \"{}\" [label=\"{} (s={})\"];",
                c.name, c.name, c.self_intersection
            )
            .unwrap();
        }
        for i in 0..self.curves.len() {
            for j in (i + 1)..self.curves.len() {
                if self.adjacency[i][j] {
                    writeln!(
                        out,
                        "  \"{}\" -- \"{}\";",
                        self.curves[i].name, self.curves[j].name
                    )
                    .unwrap();
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

impl Default for CurveConfig {
    fn default() -> Self {
        CurveConfig::new()
    }
}

/// A blow-up center: a free point on one curve, or the intersection point
/// of two adjacent curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowUpStep {
    pub centers: Vec<String>,
}

/// Blows up the given point: adds an exceptional (-1)-curve named
/// `new_name`, adjacent to every center curve; each center curve loses 1
/// from its self-intersection; a two-curve center separates the two curves.
pub fn blow_up_point(
    cfg: &CurveConfig,
    step: &BlowUpStep,
    new_name: &str,
    boundary: bool,
) -> Result<(CurveConfig, String), CompletionError> {
    if step.centers.is_empty() || step.centers.len() > 2 {
        return Err(CompletionError::InvalidCenter(
            "a center names one or two curves".to_string(),
        ));
    }
    for c in &step.centers {
        if cfg.index(c).is_none() {
            return Err(CompletionError::InvalidCenter(format!(
                "unknown curve `{}`",
                c
            )));
        }
    }
    if step.centers.len() == 2 {
        if step.centers[0] == step.centers[1] {
            return Err(CompletionError::InvalidCenter(
                "the two center curves must be distinct".to_string(),
            ));
        }
        if !cfg.is_adjacent(&step.centers[0], &step.centers[1]) {
            return Err(CompletionError::InvalidCenter(format!(
                "`{}` and `{}` do not meet",
                step.centers[0], step.centers[1]
            )));
        }
    }
    let mut out = cfg.clone();
    out.add_curve(new_name, -1, boundary)?;
    for c in &step.centers {
        let ix = out.index(c).unwrap();
        out.curves[ix].self_intersection -= 1;
        out.set_adjacent(c, new_name, true);
    }
    if step.centers.len() == 2 {
        out.set_adjacent(&step.centers[0], &step.centers[1], false);
    }
    Ok((out, new_name.to_string()))
}

/// One replayed blow-up with its exceptional curve's name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationStep {
    pub step: BlowUpStep,
    pub new_curve: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simulation {
    pub config: CurveConfig,
    pub steps: Vec<SimulationStep>,
}

/// Replays the completion of S(gamma) from the P^1-bundle picture
/// {F_0, C, F_inf}, C a section meeting both fibers: the tree is
/// essentialized, then for every node in breadth-first order one free point
/// per child is blown up on the node's curve (distinct sibling weights put
/// the centers at distinct free points). The root's curve is F_0; leaf
/// curves are the non-boundary affine fiber components.
pub fn simulate_completion(g: &LabelledTree) -> Simulation {
    let (es, _, _) = g.essentialize();
    let shape = es.shape();

    let mut cfg = CurveConfig::new();
    cfg.add_curve("F_inf", 0, true).unwrap();
    cfg.add_curve("C", 0, true).unwrap();
    cfg.add_curve("F_0", 0, true).unwrap();
    cfg.set_adjacent("C", "F_inf", true);
    cfg.set_adjacent("C", "F_0", true);

    // curve of the root is F_0 itself
    let curve_of = |node: &str| -> String {
        if node == shape.root() {
            "F_0".to_string()
        } else {
            node.to_string()
        }
    };

    let mut steps = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(shape.root().to_string());
    while let Some(node) = queue.pop_front() {
        let center = curve_of(&node);
        for child in shape.children(&node).unwrap() {
            // the section C is never a blow-up center
            assert_ne!(center, "C");
            let step = BlowUpStep {
                centers: vec![center.clone()],
            };
            let boundary = !shape.is_leaf(child).unwrap();
            let (next, new_curve) = blow_up_point(&cfg, &step, child, boundary).unwrap();
            cfg = next;
            steps.push(SimulationStep { step, new_curve });
            queue.push_back(child.to_string());
        }
    }
    Simulation { config: cfg, steps }
}

/// The closed-form boundary dual graph of the canonical completion:
/// the chain F_inf(0) - C(0) - F_0(-|Ch(root)|) continued by the internal
/// nodes of the essential tree, node e carrying -1 - |Ch(e)|; nodes appear
/// depth-first.
pub fn boundary_dual_graph(g: &LabelledTree) -> CurveConfig {
    let (es, _, _) = g.essentialize();
    let shape = es.shape();
    let mut cfg = CurveConfig::new();
    cfg.add_curve("F_inf", 0, true).unwrap();
    cfg.add_curve("C", 0, true).unwrap();
    let root_children = shape.children(shape.root()).unwrap().len() as i64;
    cfg.add_curve("F_0", -root_children, true).unwrap();
    cfg.set_adjacent("C", "F_inf", true);
    cfg.set_adjacent("C", "F_0", true);
    for node in shape.nodes() {
        if node == shape.root() || shape.is_leaf(node).unwrap() {
            continue;
        }
        let children = shape.children(node).unwrap().len() as i64;
        cfg.add_curve(node, -1 - children, true).unwrap();
        let parent = shape.parent(node).unwrap().unwrap();
        let parent_curve = if parent == shape.root() { "F_0" } else { parent };
        cfg.set_adjacent(node, parent_curve, true);
    }
    cfg
}

/// Minimality of the completion: no boundary (-1)-curve meets at most two
/// other boundary curves. Expects a boundary-only configuration.
pub fn is_minimal_completion(cfg: &CurveConfig) -> bool {
    cfg.curves().iter().all(|c| {
        c.self_intersection != -1 || cfg.degree(&c.name) > 2
    })
}

/// ML-triviality through the completion route: the boundary dual graph is
/// a chain.
pub fn ml_via_boundary(g: &LabelledTree) -> bool {
    boundary_dual_graph(g).is_chain()
}
