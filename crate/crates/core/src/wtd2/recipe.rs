//! Plain-text recipe format.
//!
//! ```text
//! # comment
//! H:
//! x y
//! z t
//! MVC:
//! x,z -> vxz
//! STEP3:
//! x z
//! HPRIME:
//! u1 u2
//! u3
//! STEP4:
//! u1 x
//! ```
//!
//! Vertex names are whitespace-free tokens without `,`, `{`, `}`. `H:` and
//! `HPRIME:` take `a b` edge lines or lone `a` vertex lines; `h` vertices are
//! numbered by first appearance. `MVC:` lines are `a,b,... -> name`, braces
//! around the cover optional. `STEP3:` edges join two `h` vertices; `STEP4:`
//! lines are `w u` with `w` in `h'` and `u` in `h`. Every name outside `H:`
//! that introduces a vertex must be new. Sections may appear in any order,
//! each at most once.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{MvcVertex, W2Recipe};
use crate::bitset::VertexSet;
use crate::graph::{EdgeSet, Graph};

/// The recipe of the 11-vertex example: `h = 2K2`, four cover vertices,
/// step-3 edges `xz` and `yt`, and `h'` the path `u1 u2 u3`.
pub const TWO_K2_RECIPE: &str = "\
H:
x y
z t
MVC:
x,z -> v{x,z}
x,t -> v{x,t}
y,z -> v{y,z}
y,t -> v{y,t}
STEP3:
x z
y t
HPRIME:
u1 u2
u2 u3
STEP4:
u1 x
u1 t
u2 y
u2 z
u3 x
u3 z
u3 t
";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("recipe line {line}: {message}")]
pub struct RecipeParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Section {
    H,
    Mvc,
    Step3,
    HPrime,
    Step4,
}

fn err(line: usize, message: impl Into<String>) -> RecipeParseError {
    RecipeParseError {
        line,
        message: message.into(),
    }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && !s.contains([',', '{', '}']) && s != "->"
}

#[derive(Default)]
struct Names {
    ids: HashMap<String, usize>,
    order: Vec<String>,
}

impl Names {
    fn intern(&mut self, name: &str) -> usize {
        if let Some(&i) = self.ids.get(name) {
            return i;
        }
        self.ids.insert(name.to_string(), self.order.len());
        self.order.push(name.to_string());
        self.order.len() - 1
    }
}

pub fn parse_recipe(text: &str) -> Result<W2Recipe, RecipeParseError> {
    let mut section = None;
    let mut seen_sections = Vec::new();
    let mut h_names = Names::default();
    let mut h_edges = Vec::new();
    let mut mvc_raw: Vec<(usize, Vec<String>, String)> = Vec::new();
    let mut step3_raw = Vec::new();
    let mut hp_names = Names::default();
    let mut hp_edges = Vec::new();
    let mut step4_raw = Vec::new();
    let mut hp_seen = false;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let header = match line {
            "H:" => Some(Section::H),
            "MVC:" => Some(Section::Mvc),
            "STEP3:" => Some(Section::Step3),
            "HPRIME:" => Some(Section::HPrime),
            "STEP4:" => Some(Section::Step4),
            _ => None,
        };
        if let Some(h) = header {
            if seen_sections.contains(&h) {
                return Err(err(line_no, format!("section {line} repeated")));
            }
            seen_sections.push(h);
            hp_seen |= h == Section::HPrime;
            section = Some(h);
            continue;
        }
        let Some(sec) = section else {
            return Err(err(line_no, "content before the first section header"));
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        match sec {
            Section::H | Section::HPrime => {
                if toks.is_empty() || toks.len() > 2 || !toks.iter().all(|t| valid_name(t)) {
                    return Err(err(line_no, format!("expected `a b` or `a`, got {line:?}")));
                }
                if toks.len() == 2 && toks[0] == toks[1] {
                    return Err(err(line_no, format!("self-loop at {}", toks[0])));
                }
                if sec == Section::H {
                    let ids: Vec<usize> = toks.iter().map(|t| h_names.intern(t)).collect();
                    if ids.len() == 2 {
                        h_edges.push((line_no, ids[0], ids[1]));
                    }
                } else {
                    let ids: Vec<usize> = toks.iter().map(|t| hp_names.intern(t)).collect();
                    if ids.len() == 2 {
                        hp_edges.push((line_no, ids[0], ids[1]));
                    }
                }
            }
            Section::Mvc => {
                let (cover, name) = line
                    .split_once("->")
                    .ok_or_else(|| err(line_no, format!("expected `a,b -> name`, got {line:?}")))?;
                let cover = cover.trim();
                let cover = cover
                    .strip_prefix('{')
                    .and_then(|c| c.strip_suffix('}'))
                    .unwrap_or(cover);
                let members: Vec<String> = cover.split(',').map(|m| m.trim().to_string()).collect();
                if members.iter().any(|m| !valid_name(m)) {
                    return Err(err(line_no, format!("malformed cover {cover:?}")));
                }
                let name = name.trim();
                if name.is_empty() || name.contains(char::is_whitespace) {
                    return Err(err(line_no, format!("malformed vertex name {name:?}")));
                }
                mvc_raw.push((line_no, members, name.to_string()));
            }
            Section::Step3 | Section::Step4 => {
                if toks.len() != 2 {
                    return Err(err(line_no, format!("expected `a b`, got {line:?}")));
                }
                let entry = (line_no, toks[0].to_string(), toks[1].to_string());
                if sec == Section::Step3 {
                    step3_raw.push(entry);
                } else {
                    step4_raw.push(entry);
                }
            }
        }
    }

    let k = h_names.order.len();
    let mut h = Graph::empty(k).map_err(|e| err(0, e.to_string()))?;
    for (line_no, u, v) in h_edges {
        h.add_edge(u, v).map_err(|e| err(line_no, e.to_string()))?;
    }
    let h = h
        .with_labels(h_names.order.clone())
        .map_err(|e| err(0, e.to_string()))?;
    let h_id = |line_no: usize, name: &str| {
        h_names
            .ids
            .get(name)
            .copied()
            .ok_or_else(|| err(line_no, format!("{name:?} is not a vertex of H")))
    };

    let mut taken: Vec<String> = h_names.order.clone();
    let mut mvc_vertices = Vec::new();
    for (line_no, members, name) in mvc_raw {
        let mut cover = VertexSet::EMPTY;
        for m in &members {
            cover.insert(h_id(line_no, m)?);
        }
        if taken.contains(&name) {
            return Err(err(line_no, format!("vertex name {name:?} is already used")));
        }
        taken.push(name.clone());
        mvc_vertices.push(MvcVertex {
            cover,
            label: Some(name),
        });
    }

    let mut step3_edges = EdgeSet::new();
    for (line_no, a, b) in step3_raw {
        let (u, v) = (h_id(line_no, &a)?, h_id(line_no, &b)?);
        if u == v {
            return Err(err(line_no, format!("self-loop at {a}")));
        }
        step3_edges.insert(u, v);
    }

    let h_prime = if hp_seen {
        if let Some(clash) = hp_names.order.iter().find(|n| taken.contains(n)) {
            return Err(err(0, format!("HPRIME vertex {clash:?} reuses a name")));
        }
        let mut p = Graph::empty(hp_names.order.len()).map_err(|e| err(0, e.to_string()))?;
        for (line_no, u, v) in hp_edges {
            p.add_edge(u, v).map_err(|e| err(line_no, e.to_string()))?;
        }
        Some(
            p.with_labels(hp_names.order.clone())
                .map_err(|e| err(0, e.to_string()))?,
        )
    } else {
        None
    };

    let mut step4_edges = Vec::new();
    for (line_no, w, u) in step4_raw {
        let wi = hp_names
            .ids
            .get(&w)
            .copied()
            .filter(|_| hp_seen)
            .ok_or_else(|| err(line_no, format!("{w:?} is not a vertex of HPRIME")))?;
        let ui = h_id(line_no, &u)?;
        if !step4_edges.contains(&(wi, ui)) {
            step4_edges.push((wi, ui));
        }
    }

    Ok(W2Recipe {
        h,
        mvc_vertices,
        step3_edges,
        h_prime,
        step4_edges,
    })
}

/// Serializes a recipe. Reuses the recipe's own names when they are
/// distinct and well-formed, otherwise falls back to `h0.., s0.., p0..`.
pub fn write_recipe(recipe: &W2Recipe) -> String {
    let k = recipe.h.n();
    let m = recipe.mvc_vertices.len();
    let mut names = recipe.names();
    let mut sorted = names.clone();
    sorted.sort();
    sorted.dedup();
    let vertex_ok = |n: &String| valid_name(n) && !n.contains(char::is_whitespace);
    // cover vertex names sit after `->`, so only whitespace is off limits
    let cover_ok = |n: &String| !n.is_empty() && !n.contains(char::is_whitespace);
    let ok = sorted.len() == names.len()
        && names[..k].iter().chain(&names[k + m..]).all(vertex_ok)
        && names[k..k + m].iter().all(cover_ok);
    if !ok {
        names = (0..k)
            .map(|i| format!("h{i}"))
            .chain((0..m).map(|i| format!("s{i}")))
            .chain((0..names.len() - k - m).map(|i| format!("p{i}")))
            .collect();
    }

    let mut out = String::from("H:\n");
    for v in 0..k {
        if recipe.h.degree(v) == 0 {
            writeln!(out, "{}", names[v]).unwrap();
        }
    }
    for (u, v) in recipe.h.edges() {
        writeln!(out, "{} {}", names[u], names[v]).unwrap();
    }
    out.push_str("MVC:\n");
    for (i, mv) in recipe.mvc_vertices.iter().enumerate() {
        let cover: Vec<&str> = mv.cover.iter().map(|v| names[v].as_str()).collect();
        writeln!(out, "{} -> {}", cover.join(","), names[k + i]).unwrap();
    }
    if !recipe.step3_edges.is_empty() {
        out.push_str("STEP3:\n");
        for (u, v) in recipe.step3_edges.iter() {
            writeln!(out, "{} {}", names[u], names[v]).unwrap();
        }
    }
    if let Some(p) = &recipe.h_prime {
        let off = k + m;
        out.push_str("HPRIME:\n");
        for w in 0..p.n() {
            if p.degree(w) == 0 {
                writeln!(out, "{}", names[off + w]).unwrap();
            }
        }
        for (a, b) in p.edges() {
            writeln!(out, "{} {}", names[off + a], names[off + b]).unwrap();
        }
        if !recipe.step4_edges.is_empty() {
            out.push_str("STEP4:\n");
            let mut edges = recipe.step4_edges.clone();
            edges.sort_unstable();
            for (w, u) in edges {
                writeln!(out, "{} {}", names[off + w], names[u]).unwrap();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wtd2::construct_w2;

    #[test]
    fn two_k2_recipe_parses() {
        let r = parse_recipe(TWO_K2_RECIPE).unwrap();
        assert_eq!(r.h.n(), 4);
        assert_eq!(r.mvc_vertices.len(), 4);
        assert_eq!(r.step3_edges.len(), 2);
        assert_eq!(r.h_prime.as_ref().unwrap().n(), 3);
        assert_eq!(r.step4_edges.len(), 7);
    }

    #[test]
    fn round_trip() {
        let r = parse_recipe(TWO_K2_RECIPE).unwrap();
        let text = write_recipe(&r);
        let back = parse_recipe(&text).unwrap();
        assert_eq!(construct_w2(&back).unwrap(), construct_w2(&r).unwrap());
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = parse_recipe("H:\nx y\nMVC:\nx -> x\n").unwrap_err();
        assert_eq!(e.line, 4);
        let e = parse_recipe("x y\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_recipe("H:\nx y\nSTEP3:\nx q\n").unwrap_err();
        assert!(e.message.contains("\"q\""), "{e}");
        let e = parse_recipe("H:\nx y\nSTEP4:\nu x\n").unwrap_err();
        assert_eq!(e.line, 4);
    }

    #[test]
    fn unlabeled_recipe_round_trips() {
        let r = super::super::W2Recipe::minimal(crate::graph::named::path(2)).unwrap();
        let back = parse_recipe(&write_recipe(&r)).unwrap();
        assert_eq!(
            construct_w2(&back).unwrap().without_labels(),
            construct_w2(&r).unwrap().without_labels()
        );
    }
}
