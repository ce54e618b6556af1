//! The labelled graph Λ of a based arrangement and the group and Lie
//! algebra presentations read off a labelled graph.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::arrangement::{BasedArrangement, Sort};
use crate::error::{Error, Result};

/// Simple graph with vertex orders `δ` (0 = no label) and edge labels `ε`.
/// A missing edge stands for `ε = ∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledGraph {
    pub vertices: Vec<String>,
    pub vertex_labels: Vec<u32>,
    /// Keyed by `(i, j)` with `i < j`.
    pub edges: BTreeMap<(usize, usize), u32>,
}

impl LabelledGraph {
    pub fn new(vertices: Vec<String>) -> Self {
        let n = vertices.len();
        LabelledGraph {
            vertices,
            vertex_labels: vec![0; n],
            edges: BTreeMap::new(),
        }
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn set_edge(&mut self, i: usize, j: usize, label: u32) -> Result<()> {
        if i == j {
            return Err(Error::InvalidGraph(format!(
                "loop at `{}`",
                self.vertices[i]
            )));
        }
        if label < 2 {
            return Err(Error::InvalidGraph(format!("edge label {label} < 2")));
        }
        self.edges.insert((i.min(j), i.max(j)), label);
        Ok(())
    }

    pub fn edge(&self, i: usize, j: usize) -> Option<u32> {
        self.edges.get(&(i.min(j), i.max(j))).copied()
    }

    pub fn validate(&self) -> Result<()> {
        if self.vertex_labels.len() != self.vertices.len() {
            return Err(Error::InvalidGraph("vertex label count".into()));
        }
        if self.vertex_labels.contains(&1) {
            return Err(Error::InvalidGraph("vertex label 1".into()));
        }
        for (&(i, j), &l) in &self.edges {
            if i >= j || j >= self.vertices.len() || l < 2 {
                return Err(Error::InvalidGraph(format!("edge ({i}, {j}) label {l}")));
            }
        }
        Ok(())
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph lambda {\n");
        for (v, d) in self.vertices.iter().zip(&self.vertex_labels) {
            if *d == 0 {
                let _ = writeln!(s, "  \"{v}\";");
            } else {
                let _ = writeln!(s, "  \"{v}\" [xlabel=\"{d}\"];");
            }
        }
        for (&(i, j), l) in &self.edges {
            let _ = writeln!(
                s,
                "  \"{}\" -- \"{}\" [label=\"{l}\"];",
                self.vertices[i], self.vertices[j]
            );
        }
        s.push_str("}\n");
        s
    }
}

/// Vertices are the elements of `a` with `v00 ≡ l∞`, `vx ≡ l_y`,
/// `vy ≡ l_x`; edges are the incidences plus `[v10,v00]`, `[v01,v00]`,
/// `[v11,v00]`.
pub fn build_lambda(a: &BasedArrangement) -> Result<LabelledGraph> {
    let arr = &a.arrangement;
    let b = |t: &str| a.base_of(t).to_string();
    let same: HashMap<String, String> = [
        (b("linf"), b("v00")),
        (b("ly"), b("vx")),
        (b("lx"), b("vy")),
    ]
    .into_iter()
    .collect();
    let mut names = Vec::new();
    for (e, s) in arr.elements() {
        if s == Sort::Line && same.contains_key(e) {
            continue;
        }
        names.push(e.to_string());
    }
    let mut g = LabelledGraph::new(names);
    let idx: HashMap<&str, usize> = g
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let vertex = |e: &str| -> usize {
        let e = same.get(e).map(String::as_str).unwrap_or(e);
        idx[e]
    };
    let mut edges: BTreeMap<(usize, usize), u32> = BTreeMap::new();
    for (p, l) in arr.incidences() {
        let (i, j) = (vertex(p), vertex(l));
        if i == j {
            return Err(Error::IdentificationCollision(format!(
                "incidence ({p}, {l}) becomes a loop"
            )));
        }
        edges.insert((i.min(j), i.max(j)), 2);
    }
    let v00 = vertex(&b("v00"));
    let v11 = vertex(&b("v11"));
    for t in ["v10", "v01", "v11"] {
        let i = vertex(&b(t));
        edges.insert((i.min(v00), i.max(v00)), 2);
    }
    for (&(i, j), l) in edges.iter_mut() {
        let has = |v| i == v || j == v;
        let corner = has(v00) && (has(vertex(&b("v10"))) || has(vertex(&b("v01"))));
        *l = if has(v11) && has(v00) {
            6
        } else if has(v11) || corner {
            4
        } else {
            2
        };
    }
    g.edges = edges;
    g.vertex_labels = (0..g.vertices.len())
        .map(|i| if i == v11 { 3 } else { 2 })
        .collect();
    Ok(g)
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: usize) -> Self {
        Letter { gen, inv: false }
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }
}

pub type Word = Vec<Letter>;

fn power(gen: usize, k: i64) -> Word {
    let l = if k < 0 {
        Letter::new(gen).inverse()
    } else {
        Letter::new(gen)
    };
    vec![l; k.unsigned_abs() as usize]
}

/// Alternating word `a b a b …` with `len` letters.
pub fn alternating(a: usize, b: usize, len: u32) -> Word {
    (0..len)
        .map(|k| Letter::new(if k % 2 == 0 { a } else { b }))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Relation {
    /// `a b a … = b a b …`, `label` letters on each side.
    Artin {
        a: usize,
        b: usize,
        label: u32,
    },
    /// `a b = b a`.
    Commutator {
        a: usize,
        b: usize,
    },
    Words {
        lhs: Word,
        rhs: Word,
    },
}

impl Relation {
    pub fn words(&self) -> (Word, Word) {
        match *self {
            Relation::Artin { a, b, label } => (alternating(a, b, label), alternating(b, a, label)),
            Relation::Commutator { a, b } => (alternating(a, b, 2), alternating(b, a, 2)),
            Relation::Words { ref lhs, ref rhs } => (lhs.clone(), rhs.clone()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PresentationKind {
    Coxeter,
    Artin,
    Shephard,
    ExtendedArtin,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub kind: PresentationKind,
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
    /// `g^k = 1`.
    pub torsion: Vec<(usize, u32)>,
}

impl Presentation {
    pub fn generator(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// All relations as `lhs = rhs` pairs, torsion last as `g^k = 1`.
    pub fn relation_words(&self) -> Vec<(Word, Word)> {
        let mut out: Vec<(Word, Word)> = self.relations.iter().map(Relation::words).collect();
        for &(g, k) in &self.torsion {
            out.push((power(g, k as i64), Vec::new()));
        }
        out
    }

    pub fn render_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|l| {
                let n = &self.generators[l.gen];
                if l.inv {
                    format!("{n}^-1")
                } else {
                    n.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn render_relation(&self, r: &Relation) -> String {
        let g = &self.generators;
        match r {
            Relation::Artin { a, b, label } => format!("artin {} {} {label}", g[*a], g[*b]),
            Relation::Commutator { a, b } => format!("[{}, {}] = 1", g[*a], g[*b]),
            Relation::Words { lhs, rhs } => {
                format!("{} = {}", self.render_word(lhs), self.render_word(rhs))
            }
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.generators {
            writeln!(f, "gen {g}")?;
        }
        for &(g, k) in &self.torsion {
            writeln!(f, "ord {} {k}", self.generators[g])?;
        }
        for r in &self.relations {
            match r {
                Relation::Artin { .. } => writeln!(f, "{}", self.render_relation(r))?,
                _ => writeln!(f, "rel {}", self.render_relation(r))?,
            }
        }
        Ok(())
    }
}

fn artin_relations(g: &LabelledGraph) -> Vec<Relation> {
    g.edges
        .iter()
        .map(|(&(a, b), &label)| Relation::Artin { a, b, label })
        .collect()
}

pub fn artin_presentation(g: &LabelledGraph) -> Presentation {
    Presentation {
        kind: PresentationKind::Artin,
        generators: g.vertices.clone(),
        relations: artin_relations(g),
        torsion: Vec::new(),
    }
}

/// `g² = 1` for every generator and `(g_v g_w)^ε = 1` for every edge.
pub fn coxeter_presentation(g: &LabelledGraph) -> Presentation {
    Presentation {
        kind: PresentationKind::Coxeter,
        generators: g.vertices.clone(),
        relations: g
            .edges
            .iter()
            .map(|(&(a, b), &label)| Relation::Words {
                lhs: alternating(a, b, 2 * label),
                rhs: Vec::new(),
            })
            .collect(),
        torsion: (0..g.vertices.len()).map(|i| (i, 2)).collect(),
    }
}

/// Artin relations plus `g_v^δ(v) = 1` for every labelled vertex.
pub fn shephard_presentation(g: &LabelledGraph) -> Presentation {
    Presentation {
        kind: PresentationKind::Shephard,
        generators: g.vertices.clone(),
        relations: artin_relations(g),
        torsion: g
            .vertex_labels
            .iter()
            .enumerate()
            .filter(|(_, &d)| d >= 2)
            .map(|(i, &d)| (i, d))
            .collect(),
    }
}

/// Cartan entry `n_ij` for the extended Artin group.
fn cartan(g: &LabelledGraph, i: usize, j: usize) -> Result<i64> {
    if i == j {
        return Ok(2);
    }
    match g.edge(i, j) {
        None => Ok(-2),
        Some(2) => Ok(0),
        Some(4) => Ok(if i < j { -1 } else { -2 }),
        Some(l) => Err(Error::UnsupportedLabel(l)),
    }
}

/// Generators `g_1..g_m, τ_1..τ_m`: the Artin relations on the `g`, the `τ`
/// commuting, and for `i ≠ j` with `-n_ji = 2r` or `2r+1`
/// `g_i τ_j = τ_j τ_i^r g_i τ_i^-r` or `g_i τ_j = τ_j τ_i^(r+1) g_i^-1 τ_i^-r`.
pub fn extended_artin_presentation(g: &LabelledGraph) -> Result<Presentation> {
    let m = g.vertices.len();
    let mut generators = g.vertices.clone();
    generators.extend(g.vertices.iter().map(|v| format!("tau_{v}")));
    let tau = |i: usize| m + i;
    let mut relations = artin_relations(g);
    for i in 0..m {
        for j in (i + 1)..m {
            relations.push(Relation::Commutator {
                a: tau(i),
                b: tau(j),
            });
        }
    }
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let k = -cartan(g, j, i)?;
            let r = k / 2;
            if k == 0 {
                relations.push(Relation::Commutator { a: i, b: tau(j) });
                continue;
            }
            let gi = Letter::new(i);
            let lhs = vec![gi, Letter::new(tau(j))];
            let mut rhs = vec![Letter::new(tau(j))];
            if k % 2 == 0 {
                rhs.extend(power(tau(i), r));
                rhs.push(gi);
            } else {
                rhs.extend(power(tau(i), r + 1));
                rhs.push(gi.inverse());
            }
            rhs.extend(power(tau(i), -r));
            relations.push(Relation::Words { lhs, rhs });
        }
    }
    Ok(Presentation {
        kind: PresentationKind::ExtendedArtin,
        generators,
        relations,
        torsion: Vec::new(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LieRelation {
    /// `[X_i, X_j] = 0`.
    Bracket { i: usize, j: usize },
    /// `X_i = X_j`.
    Equal { i: usize, j: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiePresentation {
    pub generators: Vec<String>,
    pub relations: Vec<LieRelation>,
}

impl fmt::Display for LiePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.generators;
        for x in g {
            writeln!(f, "gen {x}")?;
        }
        for r in &self.relations {
            match *r {
                LieRelation::Bracket { i, j } => writeln!(f, "bracket {} {}", g[i], g[j])?,
                LieRelation::Equal { i, j } => writeln!(f, "equal {} {}", g[i], g[j])?,
            }
        }
        Ok(())
    }
}

/// Quadratic presentation of the Malcev Lie algebra: brackets vanish along
/// even edges, generators coincide along odd edges.
pub fn malcev_presentation(g: &LabelledGraph) -> LiePresentation {
    let relations = g
        .edges
        .iter()
        .map(|(&(i, j), &l)| {
            if l % 2 == 0 {
                LieRelation::Bracket { i, j }
            } else {
                LieRelation::Equal { i, j }
            }
        })
        .collect();
    LiePresentation {
        generators: g.vertices.iter().map(|v| format!("X_{v}")).collect(),
        relations,
    }
}

/// Number of generators after the odd-edge identifications.
pub fn malcev_rank(p: &LiePresentation) -> usize {
    let n = p.generators.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    for r in &p.relations {
        if let LieRelation::Equal { i, j } = *r {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::standard_triangle;

    fn two(label: Option<u32>) -> LabelledGraph {
        let mut g = LabelledGraph::new(vec!["a".into(), "b".into()]);
        if let Some(l) = label {
            g.set_edge(0, 1, l).unwrap();
        }
        g
    }

    #[test]
    fn lambda_of_triangle() {
        let g = build_lambda(&standard_triangle()).unwrap();
        assert_eq!(g.vertices.len(), 9);
        assert_eq!(g.edges.len(), 16);
        let i = |n| g.index(n).unwrap();
        assert_eq!(g.edge(i("v11"), i("v00")), Some(6));
        assert_eq!(g.edge(i("v10"), i("v00")), Some(4));
        assert_eq!(g.edge(i("v01"), i("v00")), Some(4));
        for l in ["ly1", "lx1", "ld"] {
            assert_eq!(g.edge(i("v11"), i(l)), Some(4));
        }
        let big = g.edges.values().filter(|&&l| l > 2).count();
        assert_eq!(big, 6);
        assert_eq!(g.vertex_labels[i("v11")], 3);
        assert_eq!(g.vertex_labels.iter().filter(|&&d| d == 2).count(), 8);
    }

    #[test]
    fn artin_label_four() {
        let p = artin_presentation(&two(Some(4)));
        let (l, r) = p.relations[0].words();
        assert_eq!(p.render_word(&l), "a b a b");
        assert_eq!(p.render_word(&r), "b a b a");
    }

    #[test]
    fn free_and_abelian() {
        assert!(artin_presentation(&two(None)).relations.is_empty());
        let mut g = LabelledGraph::new((0..4).map(|i| format!("v{i}")).collect());
        for i in 0..4 {
            for j in (i + 1)..4 {
                g.set_edge(i, j, 2).unwrap();
            }
        }
        assert_eq!(artin_presentation(&g).relations.len(), 6);
        let c = coxeter_presentation(&g);
        assert_eq!(c.torsion.len(), 4);
    }

    #[test]
    fn extended_label_two_commutes() {
        let p = extended_artin_presentation(&two(Some(2))).unwrap();
        let text: Vec<String> = p.relations.iter().map(|r| p.render_relation(r)).collect();
        assert!(text.contains(&"[a, tau_b] = 1".to_string()));
        assert!(text.contains(&"[b, tau_a] = 1".to_string()));
    }

    #[test]
    fn extended_no_edge_and_label_four() {
        let p = extended_artin_presentation(&two(None)).unwrap();
        let text: Vec<String> = p.relations.iter().map(|r| p.render_relation(r)).collect();
        assert!(text.contains(&"a tau_b = tau_b tau_a a tau_a^-1".to_string()));

        let p = extended_artin_presentation(&two(Some(4))).unwrap();
        let text: Vec<String> = p.relations.iter().map(|r| p.render_relation(r)).collect();
        assert!(text.contains(&"a tau_b = tau_b tau_a a tau_a^-1".to_string()));
        assert!(text.contains(&"b tau_a = tau_a tau_b b^-1".to_string()));

        assert_eq!(
            extended_artin_presentation(&two(Some(3))),
            Err(Error::UnsupportedLabel(3))
        );
    }

    #[test]
    fn malcev_rules() {
        let p = malcev_presentation(&two(Some(2)));
        assert_eq!(p.relations, vec![LieRelation::Bracket { i: 0, j: 1 }]);
        let p = malcev_presentation(&two(Some(3)));
        assert_eq!(p.relations, vec![LieRelation::Equal { i: 0, j: 1 }]);
        assert_eq!(malcev_rank(&p), 1);
        assert!(malcev_presentation(&two(None)).relations.is_empty());
    }

    #[test]
    fn text_format() {
        let g = build_lambda(&standard_triangle()).unwrap();
        let s = shephard_presentation(&g).to_string();
        assert!(s.contains("gen v00\n"));
        assert!(s.contains("ord v11 3\n"));
        assert!(s.contains("artin v00 v11 6\n"));
        assert!(g.to_dot().contains("\"v00\" -- \"v11\" [label=\"6\"]"));
    }
}
