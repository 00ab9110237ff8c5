//! Line-based tree file formats and the auxiliary input files (ultrametric
//! data, leaf maps, comb specifications). '#' starts a comment; tokens are
//! whitespace-separated; child order is file order.

use std::collections::BTreeMap;

use crate::exactalg::{parse_poly, parse_rational, Rat};
use crate::labelled::{LabelledTree, UltrametricData, WeightedTree};
use crate::trees::RootedTree;

use super::CliError;

fn syntax(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Logical lines: comments stripped, blanks skipped, 1-based numbering kept.
fn logical_lines(text: &str) -> Vec<(usize, Vec<String>, String)> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let tokens: Vec<String> = line.split_whitespace().map(|t| t.to_string()).collect();
        if !tokens.is_empty() {
            out.push((i + 1, tokens, line.trim().to_string()));
        }
    }
    out
}

/// Parses either tree format and returns the validated labelled tree.
pub fn parse_tree_file(text: &str) -> Result<LabelledTree, CliError> {
    parse_tree_impl(text, true)
}

/// Like [`parse_tree_file`], but keeps cochain trees whose labels violate
/// the compatibility condition, so `validate` can report the violations.
pub fn parse_tree_file_lenient(text: &str) -> Result<LabelledTree, CliError> {
    parse_tree_impl(text, false)
}

fn parse_tree_impl(text: &str, check: bool) -> Result<LabelledTree, CliError> {
    let lines = logical_lines(text);
    let Some((first_no, first, _)) = lines.first() else {
        return Err(syntax(0, "empty file"));
    };
    if first[0] != "format" || first.len() != 2 {
        return Err(syntax(*first_no, "expected `format weighted` or `format cochain`"));
    }
    let weighted = match first[1].as_str() {
        "weighted" => true,
        "cochain" => false,
        other => return Err(syntax(*first_no, format!("unknown format `{}`", other))),
    };

    let mut tree: Option<RootedTree> = None;
    let mut weights: BTreeMap<String, Rat> = BTreeMap::new();
    let mut sigma: BTreeMap<String, crate::exactalg::Poly> = BTreeMap::new();
    for (no, tokens, raw) in lines.iter().skip(1) {
        match tokens[0].as_str() {
            "root" => {
                if tokens.len() != 2 {
                    return Err(syntax(*no, "usage: root <id>"));
                }
                if tree.is_some() {
                    return Err(syntax(*no, "duplicate root line"));
                }
                tree = Some(RootedTree::new(&tokens[1]));
            }
            "edge" => {
                let t = tree
                    .as_mut()
                    .ok_or_else(|| syntax(*no, "edge before root"))?;
                if weighted {
                    if tokens.len() != 4 {
                        return Err(syntax(*no, "usage: edge <parent> <child> <rational>"));
                    }
                    let w = parse_rational(&tokens[3])
                        .map_err(|e| syntax(*no, e.to_string()))?;
                    t.add_child(&tokens[1], &tokens[2])
                        .map_err(|e| syntax(*no, e.to_string()))?;
                    weights.insert(tokens[2].clone(), w);
                } else {
                    if tokens.len() != 3 {
                        return Err(syntax(*no, "usage: edge <parent> <child>"));
                    }
                    t.add_child(&tokens[1], &tokens[2])
                        .map_err(|e| syntax(*no, e.to_string()))?;
                }
            }
            "leaf" => {
                if weighted {
                    return Err(syntax(*no, "leaf lines belong to the cochain format"));
                }
                if tokens.len() < 4 || tokens[2] != "sigma" {
                    return Err(syntax(*no, "usage: leaf <id> sigma <polynomial>"));
                }
                let poly_text = raw
                    .splitn(4, char::is_whitespace)
                    .nth(3)
                    .unwrap_or("")
                    .trim();
                let p = parse_poly(poly_text).map_err(|e| syntax(*no, e.to_string()))?;
                sigma.insert(tokens[1].clone(), p);
            }
            other => return Err(syntax(*no, format!("unknown directive `{}`", other))),
        }
    }
    let tree = tree.ok_or_else(|| syntax(0, "missing root line"))?;

    if weighted {
        let w = WeightedTree::new(tree, weights).map_err(|e| CliError::Validation(e.to_string()))?;
        w.to_labelled()
            .map_err(|e| CliError::Validation(e.to_string()))
    } else {
        let g = LabelledTree::new(tree, sigma)
            .map_err(|e| CliError::Validation(e.to_string()))?;
        let violations = g.validate();
        if check && !violations.is_empty() {
            let msgs: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
            return Err(CliError::Validation(msgs.join("; ")));
        }
        Ok(g)
    }
}

/// Canonical cochain serialization: root, edges depth-first, then leaf
/// labels depth-first.
pub fn serialize_cochain(g: &LabelledTree) -> String {
    let shape = g.shape();
    let mut out = String::from("format cochain\n");
    out.push_str(&format!("root {}\n", shape.root()));
    for node in shape.nodes() {
        if let Some(parent) = shape.parent(node).unwrap() {
            out.push_str(&format!("edge {} {}\n", parent, node));
        }
    }
    for leaf in g.leaves() {
        out.push_str(&format!("leaf {} sigma {}\n", leaf, g.sigma(leaf)));
    }
    out
}

/// Canonical weighted serialization (requires a reduced cochain).
pub fn serialize_weighted(w: &WeightedTree) -> String {
    let shape = w.shape();
    let mut out = String::from("format weighted\n");
    out.push_str(&format!("root {}\n", shape.root()));
    for node in shape.nodes() {
        if let Some(parent) = shape.parent(node).unwrap() {
            out.push_str(&format!("edge {} {} {}\n", parent, node, w.weight(node)));
        }
    }
    out
}

/// Ultrametric data file: `n <int>`, `m <int> ...` (n entries),
/// `d <i> <j> <level>` per unordered pair, `sigma <i> <polynomial>` per
/// leaf; indices are 1-based.
pub fn parse_metric_file(text: &str) -> Result<UltrametricData, CliError> {
    let lines = logical_lines(text);
    let mut n: Option<usize> = None;
    let mut m: Vec<usize> = Vec::new();
    let mut d_entries: Vec<(usize, usize, usize)> = Vec::new();
    let mut sigma: BTreeMap<usize, crate::exactalg::Poly> = BTreeMap::new();
    for (no, tokens, raw) in &lines {
        match tokens[0].as_str() {
            "n" => {
                if tokens.len() != 2 {
                    return Err(syntax(*no, "usage: n <count>"));
                }
                n = Some(
                    tokens[1]
                        .parse()
                        .map_err(|_| syntax(*no, "n must be an integer"))?,
                );
            }
            "m" => {
                for t in &tokens[1..] {
                    m.push(t.parse().map_err(|_| syntax(*no, "m entries must be integers"))?);
                }
            }
            "d" => {
                if tokens.len() != 4 {
                    return Err(syntax(*no, "usage: d <i> <j> <level>"));
                }
                let i: usize = tokens[1]
                    .parse()
                    .map_err(|_| syntax(*no, "indices must be integers"))?;
                let j: usize = tokens[2]
                    .parse()
                    .map_err(|_| syntax(*no, "indices must be integers"))?;
                let v: usize = tokens[3]
                    .parse()
                    .map_err(|_| syntax(*no, "levels must be integers"))?;
                if i == 0 || j == 0 {
                    return Err(syntax(*no, "indices are 1-based"));
                }
                d_entries.push((i - 1, j - 1, v));
            }
            "sigma" => {
                if tokens.len() < 3 {
                    return Err(syntax(*no, "usage: sigma <i> <polynomial>"));
                }
                let i: usize = tokens[1]
                    .parse()
                    .map_err(|_| syntax(*no, "indices must be integers"))?;
                if i == 0 {
                    return Err(syntax(*no, "indices are 1-based"));
                }
                let poly_text = raw
                    .splitn(3, char::is_whitespace)
                    .nth(2)
                    .unwrap_or("")
                    .trim();
                let p = parse_poly(poly_text).map_err(|e| syntax(*no, e.to_string()))?;
                sigma.insert(i - 1, p);
            }
            other => return Err(syntax(*no, format!("unknown directive `{}`", other))),
        }
    }
    let n = n.ok_or_else(|| syntax(0, "missing `n` line"))?;
    if m.len() != n {
        return Err(CliError::Validation(format!(
            "expected {} leaf levels, found {}",
            n,
            m.len()
        )));
    }
    let mut d = vec![vec![0usize; n]; n];
    for (i, j, v) in d_entries {
        if i >= n || j >= n {
            return Err(CliError::Validation(format!(
                "pair ({}, {}) out of range",
                i + 1,
                j + 1
            )));
        }
        d[i][j] = v;
        d[j][i] = v;
    }
    let mut sig = Vec::with_capacity(n);
    for i in 0..n {
        let p = sigma.get(&i).ok_or_else(|| {
            CliError::Validation(format!("missing sigma for leaf {}", i + 1))
        })?;
        sig.push(p.clone());
    }
    Ok(UltrametricData {
        n,
        m,
        d,
        sigma: sig,
    })
}

/// Leaf map file: one `map <source-leaf> <target-leaf>` line per leaf.
pub fn parse_map_file(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (no, tokens, _) in logical_lines(text) {
        if tokens[0] != "map" || tokens.len() != 3 {
            return Err(syntax(no, "usage: map <source-leaf> <target-leaf>"));
        }
        out.insert(tokens[1].clone(), tokens[2].clone());
    }
    Ok(out)
}

/// Comb spec file: one `poly <root> <root> ...` line per level; the first
/// root is distinguished.
pub fn parse_comb_file(text: &str) -> Result<crate::surface::CombSpec, CliError> {
    let mut levels = Vec::new();
    for (no, tokens, _) in logical_lines(text) {
        if tokens[0] != "poly" || tokens.len() < 2 {
            return Err(syntax(no, "usage: poly <root> <root> ..."));
        }
        let mut roots = Vec::new();
        for t in &tokens[1..] {
            roots.push(parse_rational(t).map_err(|e| syntax(no, e.to_string()))?);
        }
        levels.push(roots);
    }
    Ok(crate::surface::CombSpec { levels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, rat_int};
    use crate::labelled::build_from_ultrametric;

    #[test]
    fn weighted_broom_reads_back() {
        let text = "format weighted\nroot r\nedge r a 1\nedge r b -1\n";
        let g = parse_tree_file(text).unwrap();
        assert_eq!(g.sigma("a"), &parse_poly("1").unwrap());
        assert_eq!(g.sigma("b"), &parse_poly("-1").unwrap());
        // round-trip through the weighted serializer
        let again = parse_tree_file(&serialize_weighted(&g.to_weighted().unwrap())).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn cochain_gamma_tree_reads_back() {
        let text = "format cochain\nroot r\nedge r a\nedge a a1\nleaf a1 sigma 1+2*x\nedge r b\nleaf b sigma 0\n";
        let g = parse_tree_file(text).unwrap();
        assert_eq!(g.sigma("a1"), &parse_poly("1 + 2*x").unwrap());
        assert_eq!(g.leaf_level("a1"), 2);
        let again = parse_tree_file(&serialize_cochain(&g)).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_tree_file("format weighted\nroot r\nedge r a 1\nedge r b 1\n"),
            Err(CliError::Validation(_))
        ));
        assert!(matches!(
            parse_tree_file("format cochain\nroot r\nedge r a\nleaf a sigma 1\nedge r b\nleaf b sigma 1\n"),
            Err(CliError::Validation(_))
        ));
        assert!(matches!(
            parse_tree_file("root r\n"),
            Err(CliError::Syntax { .. })
        ));
        assert!(matches!(
            parse_tree_file("format cochain\nedge r a\n"),
            Err(CliError::Syntax { .. })
        ));
    }

    #[test]
    fn comments_and_blanks_are_ignored() {
        let text = "# a broom\nformat weighted\n\nroot r # the root\nedge r a 1\nedge r b 2\n";
        let g = parse_tree_file(text).unwrap();
        assert_eq!(g.leaves().len(), 2);
    }

    #[test]
    fn metric_file_round_trip() {
        let text = "n 3\nm 1 1 1\nd 1 2 0\nd 1 3 0\nd 2 3 0\nsigma 1 0\nsigma 2 1\nsigma 3 2\n";
        let u = parse_metric_file(text).unwrap();
        assert_eq!(u.n, 3);
        let g = build_from_ultrametric(&u).unwrap();
        assert_eq!(g.leaves().len(), 3);
    }

    #[test]
    fn map_and_comb_files() {
        let m = parse_map_file("map a b\nmap c d\n").unwrap();
        assert_eq!(m["a"], "b");
        let spec = parse_comb_file("poly 0 1 -1\npoly 1 -1\n").unwrap();
        assert_eq!(spec.levels.len(), 2);
        assert_eq!(spec.levels[0][0], rat_int(0));
        assert_eq!(spec.levels[1], vec![rat_int(1), rat_int(-1)]);
    }
}
