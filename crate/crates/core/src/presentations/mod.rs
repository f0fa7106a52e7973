//! Diagrams for reflection groups, their presentations, the elementary
//! quotient rules and coset enumeration.
//!
//! Diagram files use one statement per line or `;`-separated:
//!
//! ```text
//! node s 2            # generator s of order 2
//! bond s t 3          # braid relation sts = tst
//! twisted s t u e=4 f=3
//! family s t1' t1 e=2 # circled relations of G(de,e,n), see Edge::Family
//! triangle t1' t1 t2  # (t1' t1 t2)^2 = (t2 t1' t1)^2
//! relation s t = t s  # any extra relation, letters separated by spaces
//! rule tu=ut          # rule to apply (read by `diagram quotient`)
//! ```
//!
//! Node pairs not joined by any statement commute.

pub mod tables;
pub mod todd_coxeter;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::MatGroup;
use crate::linalg::Mat;
use crate::quotients::{is_good, quotient_map_with, Equivariant};

pub use todd_coxeter::{coset_enumerate, DEFAULT_MAX_COSETS};

/// A word: letter `k > 0` is generator `k − 1`, `−k` its inverse.
pub type Word = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Node {
    pub label: String,
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Edge {
    /// Braid relation of length `m` between two nodes.
    Braid { a: usize, b: usize, m: u32 },
    /// The three-node twisted diagram with bonds `e` (s,t) and `f` (t,u).
    Twisted {
        s: usize,
        t: usize,
        u: usize,
        e: u32,
        f: u32,
    },
    /// The circled node set of the `G(de,e,n)` diagrams: `s·t1'·t1 =
    /// t1'·t1·s` and `t1·s·t1'·t1⋯ = s·t1'·t1·t1'⋯` (`e + 1` letters).
    Family {
        s: usize,
        t1p: usize,
        t1: usize,
        e: u32,
    },
    /// `(a b c)² = (c a b)²`.
    Triangle { a: usize, b: usize, c: usize },
}

impl Edge {
    fn nodes(&self) -> Vec<usize> {
        match *self {
            Edge::Braid { a, b, .. } => vec![a, b],
            Edge::Twisted { s, t, u, .. } => vec![s, t, u],
            Edge::Family { s, t1p, t1, .. } => vec![s, t1p, t1],
            Edge::Triangle { a, b, c } => vec![a, b, c],
        }
    }

    fn links(&self, x: usize, y: usize) -> bool {
        let n = self.nodes();
        n.contains(&x) && n.contains(&y)
    }

    fn map(&self, f: impl Fn(usize) -> usize) -> Edge {
        match *self {
            Edge::Braid { a, b, m } => Edge::Braid { a: f(a), b: f(b), m },
            Edge::Twisted { s, t, u, e, f: ff } => Edge::Twisted {
                s: f(s),
                t: f(t),
                u: f(u),
                e,
                f: ff,
            },
            Edge::Family { s, t1p, t1, e } => Edge::Family {
                s: f(s),
                t1p: f(t1p),
                t1: f(t1),
                e,
            },
            Edge::Triangle { a, b, c } => Edge::Triangle {
                a: f(a),
                b: f(b),
                c: f(c),
            },
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Diagram {
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    pub extra_relations: Vec<(Word, Word)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

/// An elementary quotient: the relation added to a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RewriteRule {
    /// `ab = ba`.
    Commute(String, String),
    /// `a = b`; `b` is removed.
    Identify(String, String),
    /// Braid relation of length `m` between `a` and `b`.
    Braid(String, String, u32),
    /// Any other relation.
    Relation(Vec<String>, Vec<String>),
}

fn alt(a: i32, b: i32, len: u32) -> Word {
    (0..len).map(|k| if k % 2 == 0 { a } else { b }).collect()
}

/// Alternating word of length `len` in `a, b` whose last letter is `b`.
fn alt_ending(a: i32, b: i32, len: u32) -> Word {
    let mut w = alt(b, a, len);
    w.reverse();
    w
}

pub fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|l| -l).collect()
}

/// `lhs · rhs⁻¹`.
pub fn relator(lhs: &[i32], rhs: &[i32]) -> Word {
    let mut w = lhs.to_vec();
    w.extend(inverse(rhs));
    w
}

fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    // cyclic reduction
    let mut start = 0;
    let mut end = out.len();
    while end - start >= 2 && out[start] == -out[end - 1] {
        start += 1;
        end -= 1;
    }
    out[start..end].to_vec()
}

impl Diagram {
    pub fn index(&self, label: &str) -> Result<usize> {
        self.nodes
            .iter()
            .position(|n| n.label == label)
            .ok_or_else(|| Error::MalformedDiagram(format!("unknown node `{label}`")))
    }

    fn check(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for n in &self.nodes {
            if !seen.insert(n.label.clone()) {
                return Err(Error::MalformedDiagram(format!("duplicate node `{}`", n.label)));
            }
            if n.order < 2 {
                return Err(Error::MalformedDiagram(format!(
                    "node `{}` has order {}",
                    n.label, n.order
                )));
            }
        }
        for e in &self.edges {
            let ns = e.nodes();
            if ns.iter().any(|&i| i >= self.nodes.len()) {
                return Err(Error::MalformedDiagram("edge to a missing node".into()));
            }
            let distinct: BTreeSet<_> = ns.iter().collect();
            if distinct.len() != ns.len() {
                return Err(Error::MalformedDiagram("edge repeats a node".into()));
            }
            match *e {
                Edge::Braid { m, .. } if m < 2 => {
                    return Err(Error::MalformedDiagram(format!("bond label {m} < 2")))
                }
                Edge::Twisted { e, f, .. } if e < 2 || f < 2 => {
                    return Err(Error::MalformedDiagram("twisted labels must be ≥ 2".into()))
                }
                Edge::Family { e, .. } if e < 2 => {
                    return Err(Error::MalformedDiagram("family needs e ≥ 2".into()))
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Parses the line-based format; `rule` statements are returned
    /// separately.
    pub fn parse(text: &str) -> Result<(Diagram, Vec<String>)> {
        let mut d = Diagram::default();
        let mut rules = Vec::new();
        let mut pending: Vec<Vec<String>> = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("");
            for stmt in line.split(';') {
                let toks: Vec<String> = stmt.split_whitespace().map(String::from).collect();
                if !toks.is_empty() {
                    pending.push(toks);
                }
            }
        }
        let bad = |s: &str| Error::MalformedDiagram(s.to_string());
        let num = |s: &str, key: &str| -> Result<u32> {
            let v = s.strip_prefix(key).unwrap_or(s);
            v.parse::<u32>()
                .map_err(|_| Error::MalformedDiagram(format!("expected a number, got `{s}`")))
        };
        for toks in &pending {
            if toks[0] == "node" {
                if toks.len() != 3 {
                    return Err(bad("usage: node LABEL ORDER"));
                }
                d.nodes.push(Node {
                    label: toks[1].clone(),
                    order: num(&toks[2], "")?,
                });
            }
        }
        for toks in &pending {
            match toks[0].as_str() {
                "node" => {}
                "bond" => {
                    if toks.len() != 4 {
                        return Err(bad("usage: bond A B M"));
                    }
                    let m = num(&toks[3], "")?;
                    d.edges.push(Edge::Braid {
                        a: d.index(&toks[1])?,
                        b: d.index(&toks[2])?,
                        m,
                    });
                }
                "twisted" => {
                    if toks.len() != 6 {
                        return Err(bad("usage: twisted S T U e=E f=F"));
                    }
                    d.edges.push(Edge::Twisted {
                        s: d.index(&toks[1])?,
                        t: d.index(&toks[2])?,
                        u: d.index(&toks[3])?,
                        e: num(&toks[4], "e=")?,
                        f: num(&toks[5], "f=")?,
                    });
                }
                "family" => {
                    if toks.len() != 5 {
                        return Err(bad("usage: family S T1' T1 e=E"));
                    }
                    let (s, t1p, t1) = (d.index(&toks[1])?, d.index(&toks[2])?, d.index(&toks[3])?);
                    let e = num(&toks[4], "e=")?;
                    d.edges.push(Edge::Family { s, t1p, t1, e });
                }
                "triangle" => {
                    if toks.len() != 4 {
                        return Err(bad("usage: triangle A B C"));
                    }
                    let (a, b, c) = (d.index(&toks[1])?, d.index(&toks[2])?, d.index(&toks[3])?);
                    d.edges.push(Edge::Triangle { a, b, c });
                }
                "relation" => {
                    let eq = toks
                        .iter()
                        .position(|t| t == "=")
                        .ok_or_else(|| bad("relation needs `=`"))?;
                    let word = |ts: &[String]| -> Result<Word> {
                        ts.iter().map(|t| Ok(d.index(t)? as i32 + 1)).collect()
                    };
                    let l = word(&toks[1..eq])?;
                    let r = word(&toks[eq + 1..])?;
                    d.extra_relations.push((l, r));
                }
                "rule" => rules.push(toks[1..].join("")),
                other => return Err(bad(&format!("unknown statement `{other}`"))),
            }
        }
        d.check()?;
        Ok((d, rules))
    }

    /// Whether some edge relates `x` and `y`; triangles carry their own
    /// bonds and do not count.
    fn linked(&self, x: usize, y: usize) -> bool {
        self.edges
            .iter()
            .any(|e| !matches!(e, Edge::Triangle { .. }) && e.links(x, y))
    }

    /// Connected components under the edges.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(c: &mut Vec<usize>, x: usize) -> usize {
            if c[x] != x {
                let r = find(c, c[x]);
                c[x] = r;
            }
            c[x]
        }
        for e in &self.edges {
            if let Edge::Braid { m: 2, .. } = e {
                continue;
            }
            let ns = e.nodes();
            for w in ns.windows(2) {
                let (a, b) = (find(&mut comp, w[0]), find(&mut comp, w[1]));
                comp[a.max(b)] = a.min(b);
            }
        }
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut roots: Vec<usize> = Vec::new();
        for i in 0..n {
            let r = find(&mut comp, i);
            match roots.iter().position(|&x| x == r) {
                Some(k) => out[k].push(i),
                None => {
                    roots.push(r);
                    out.push(vec![i]);
                }
            }
        }
        out
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = |i: usize| self.nodes[i].label.as_str();
        for n in &self.nodes {
            writeln!(f, "node {} {}", n.label, n.order)?;
        }
        for e in &self.edges {
            match *e {
                Edge::Braid { a, b, m } => writeln!(f, "bond {} {} {m}", l(a), l(b))?,
                Edge::Twisted { s, t, u, e, f: ff } => {
                    writeln!(f, "twisted {} {} {} e={e} f={ff}", l(s), l(t), l(u))?
                }
                Edge::Family { s, t1p, t1, e } => {
                    writeln!(f, "family {} {} {} e={e}", l(s), l(t1p), l(t1))?
                }
                Edge::Triangle { a, b, c } => writeln!(f, "triangle {} {} {}", l(a), l(b), l(c))?,
            }
        }
        for (a, b) in &self.extra_relations {
            let w = |x: &Word| {
                x.iter()
                    .map(|&k| l((k.unsigned_abs() - 1) as usize).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            writeln!(f, "relation {} = {}", w(a), w(b))?;
        }
        Ok(())
    }
}

/// The presentation symbolized by a diagram.
pub fn diagram_presentation(d: &Diagram) -> Result<Presentation> {
    d.check()?;
    let g = |i: usize| i as i32 + 1;
    let mut rels: Vec<Word> = Vec::new();
    for (i, n) in d.nodes.iter().enumerate() {
        rels.push(vec![g(i); n.order as usize]);
    }
    for e in &d.edges {
        match *e {
            Edge::Braid { a, b, m } => {
                rels.push(relator(&alt(g(a), g(b), m), &alt(g(b), g(a), m)));
            }
            Edge::Twisted { s, t, u, e, f } => {
                // ⋯tst·u·s = ⋯stst·u (e + 1 letters each side)
                let mut l = alt_ending(g(s), g(t), e - 1);
                l.extend([g(u), g(s)]);
                let mut r = alt_ending(g(s), g(t), e);
                r.push(g(u));
                rels.push(relator(&l, &r));
                // u·s·tut⋯ = s·tutu⋯ (f + 1 letters each side)
                let mut l = vec![g(u), g(s)];
                l.extend(alt(g(t), g(u), f - 1));
                let mut r = vec![g(s)];
                r.extend(alt(g(t), g(u), f));
                rels.push(relator(&l, &r));
            }
            Edge::Family { s, t1p, t1, e } => {
                rels.push(relator(&[g(s), g(t1p), g(t1)], &[g(t1p), g(t1), g(s)]));
                let mut l = vec![g(t1), g(s)];
                l.extend(alt(g(t1p), g(t1), e - 1));
                let mut r = vec![g(s)];
                r.extend(alt(g(t1p), g(t1), e));
                rels.push(relator(&l, &r));
            }
            Edge::Triangle { a, b, c } => {
                let l = [g(a), g(b), g(c), g(a), g(b), g(c)];
                let r = [g(c), g(a), g(b), g(c), g(a), g(b)];
                rels.push(relator(&l, &r));
                for x in [a, b] {
                    if !d
                        .edges
                        .iter()
                        .any(|e| matches!(*e, Edge::Braid { a: p, b: q, .. } if (p == x && q == c) || (p == c && q == x)))
                    {
                        rels.push(relator(&alt(g(x), g(c), 3), &alt(g(c), g(x), 3)));
                    }
                }
            }
        }
    }
    for i in 0..d.nodes.len() {
        for j in i + 1..d.nodes.len() {
            if !d.linked(i, j) {
                rels.push(relator(&[g(i), g(j)], &[g(j), g(i)]));
            }
        }
    }
    for (l, r) in &d.extra_relations {
        rels.push(relator(l, r));
    }
    Ok(Presentation {
        generators: d.nodes.iter().map(|n| n.label.clone()).collect(),
        relators: rels.iter().map(|r| free_reduce(r)).filter(|r| !r.is_empty()).collect(),
    })
}

/// Splits a word such as `st1'u` into node labels, longest match first.
pub fn tokenize(d: &Diagram, s: &str) -> Result<Vec<String>> {
    let mut labels: Vec<&str> = d.nodes.iter().map(|n| n.label.as_str()).collect();
    labels.sort_by_key(|l| std::cmp::Reverse(l.len()));
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let l = labels
            .iter()
            .find(|l| rest.starts_with(**l))
            .ok_or_else(|| Error::RuleMismatch(format!("cannot read `{rest}` as node labels")))?;
        out.push(l.to_string());
        rest = rest[l.len()..].trim_start();
    }
    Ok(out)
}

/// Reads `tu=ut`, `s=t`, `sts=tst` against the labels of a diagram.
pub fn parse_rule(d: &Diagram, s: &str) -> Result<RewriteRule> {
    let (l, r) = s
        .split_once('=')
        .ok_or_else(|| Error::RuleMismatch(format!("rule `{s}` has no `=`")))?;
    let l = tokenize(d, l)?;
    let r = tokenize(d, r)?;
    if l.len() == 1 && r.len() == 1 && l[0] != r[0] {
        return Ok(RewriteRule::Identify(l[0].clone(), r[0].clone()));
    }
    let alternating = |w: &[String], a: &str, b: &str| {
        w.iter()
            .enumerate()
            .all(|(k, x)| x == if k % 2 == 0 { a } else { b })
    };
    if l.len() == r.len() && l.len() >= 2 {
        let (a, b) = (l[0].clone(), l[1].clone());
        if a != b && alternating(&l, &a, &b) && alternating(&r, &b, &a) {
            return Ok(if l.len() == 2 {
                RewriteRule::Commute(a, b)
            } else {
                RewriteRule::Braid(a, b, l.len() as u32)
            });
        }
    }
    Ok(RewriteRule::Relation(l, r))
}

impl RewriteRule {
    /// The added relation as a pair of words in the labels.
    pub fn words(&self) -> (Vec<String>, Vec<String>) {
        match self {
            RewriteRule::Commute(a, b) => (vec![a.clone(), b.clone()], vec![b.clone(), a.clone()]),
            RewriteRule::Identify(a, b) => (vec![a.clone()], vec![b.clone()]),
            RewriteRule::Braid(a, b, m) => {
                let w = |x: &String, y: &String| {
                    (0..*m)
                        .map(|k| if k % 2 == 0 { x.clone() } else { y.clone() })
                        .collect()
                };
                (w(a, b), w(b, a))
            }
            RewriteRule::Relation(l, r) => (l.clone(), r.clone()),
        }
    }
}

fn word_of(d: &Diagram, labels: &[String]) -> Result<Word> {
    labels.iter().map(|l| Ok(d.index(l)? as i32 + 1)).collect()
}

/// Applies a rule at the site given by its node labels.
pub fn apply_rule(d: &Diagram, rule: &RewriteRule) -> Result<(Diagram, Presentation)> {
    let src = diagram_presentation(d)?;
    let (l, r) = rule.words();
    let lw = word_of(d, &l).map_err(|e| Error::RuleMismatch(e.to_string()))?;
    let rw = word_of(d, &r).map_err(|e| Error::RuleMismatch(e.to_string()))?;
    let mut pres = src.clone();
    pres.relators.push(free_reduce(&relator(&lw, &rw)));
    let mut out = d.clone();
    match rule {
        RewriteRule::Commute(a, b) => {
            let (a, b) = (d.index(a)?, d.index(b)?);
            let mut found = false;
            let mut edges = Vec::new();
            for e in &d.edges {
                match *e {
                    Edge::Braid { a: p, b: q, .. } if (p, q) == (a, b) || (p, q) == (b, a) => {
                        found = true;
                    }
                    Edge::Twisted { s, t, u, e, f }
                        if (s, u) == (a, b) || (s, u) == (b, a) =>
                    {
                        found = true;
                        edges.push(Edge::Braid { a: s, b: t, m: e });
                        edges.push(Edge::Braid { a: t, b: u, m: f });
                    }
                    Edge::Family { s, t1p, t1, e }
                        if (s == a && (t1 == b || t1p == b)) || (s == b && (t1 == a || t1p == a)) =>
                    {
                        found = true;
                        edges.push(Edge::Braid { a: t1p, b: t1, m: e });
                    }
                    _ => edges.push(e.clone()),
                }
            }
            if !found {
                return Err(Error::RuleMismatch(format!(
                    "no bond between {} and {} to remove",
                    d.nodes[a].label, d.nodes[b].label
                )));
            }
            out.edges = edges;
        }
        RewriteRule::Identify(a, b) => {
            let (ia, ib) = (d.index(a)?, d.index(b)?);
            let remap = |i: usize| {
                let i = if i == ib { ia } else { i };
                if i > ib {
                    i - 1
                } else {
                    i
                }
            };
            let mut nodes = d.nodes.clone();
            let ob = nodes[ib].order;
            let na = &mut nodes[ia];
            na.order = num_integer::gcd(na.order, ob);
            nodes.remove(ib);
            if nodes[remap(ia)].order < 2 {
                return Err(Error::RuleMismatch(
                    "identifying nodes of coprime orders leaves a trivial node".into(),
                ));
            }
            let mut edges: Vec<Edge> = Vec::new();
            for e in &d.edges {
                let ns = e.nodes();
                if ns.contains(&ia) && ns.contains(&ib) {
                    // collapses; its relation is now a consequence or kept
                    // by the presentation
                    continue;
                }
                let e2 = e.map(remap);
                if !edges.contains(&e2) {
                    edges.push(e2);
                }
            }
            let (edges, extra, forced) = merge_pairs(d, &nodes, edges, ia, ib, &remap);
            out.nodes = nodes;
            out.edges = edges;
            out.extra_relations = d
                .extra_relations
                .iter()
                .map(|(x, y)| {
                    let m = |w: &Word| -> Word {
                        w.iter()
                            .map(|&k| {
                                let i = remap((k.unsigned_abs() - 1) as usize) as i32 + 1;
                                if k < 0 {
                                    -i
                                } else {
                                    i
                                }
                            })
                            .collect()
                    };
                    (m(x), m(y))
                })
                .collect();
            out.extra_relations.extend(extra);
            pres = tietze_identify(&pres, ib, ia);
            // bonds with gcd 1 force further identifications; they follow
            // from the relations already present
            if let Some((x, y)) = forced {
                let (x, y) = (out.nodes[x].label.clone(), out.nodes[y].label.clone());
                let (d3, _) = apply_rule(&out, &RewriteRule::Identify(x, y))?;
                out = d3;
            }
        }
        RewriteRule::Braid(a, b, m) => {
            let (ia, ib) = (d.index(a)?, d.index(b)?);
            let pos = d.edges.iter().position(|e| {
                matches!(*e, Edge::Braid { a: p, b: q, .. } if (p, q) == (ia, ib) || (p, q) == (ib, ia))
            });
            let Some(pos) = pos else {
                return Err(Error::RuleMismatch("no bond at this site".into()));
            };
            let Edge::Braid { m: big, .. } = d.edges[pos] else {
                unreachable!()
            };
            if big % m != 0 {
                return Err(Error::RuleMismatch(format!(
                    "bond {big} is not a multiple of {m}"
                )));
            }
            out.edges[pos] = Edge::Braid { a: ia, b: ib, m: *m };
        }
        RewriteRule::Relation(..) => {
            out.extra_relations.push((lw, rw));
        }
    }
    Ok((out, simplify(&pres)))
}

/// Combines the relations that land on the same node pair when `b` is
/// merged into `a`. Returns the edges, extra relations, and a pair that
/// must be identified as well.
#[allow(clippy::type_complexity)]
fn merge_pairs(
    d: &Diagram,
    nodes: &[Node],
    mut edges: Vec<Edge>,
    ia: usize,
    ib: usize,
    remap: &dyn Fn(usize) -> usize,
) -> (Vec<Edge>, Vec<(Word, Word)>, Option<(usize, usize)>) {
    use std::collections::BTreeMap;
    // label of an original pair: bond length, 2 when unlinked, None for
    // edges other than plain bonds
    let label = |x: usize, y: usize| -> Option<u32> {
        let mut out = Some(2);
        for e in &d.edges {
            if e.links(x, y) {
                out = match *e {
                    Edge::Braid { m, .. } => Some(m),
                    Edge::Triangle { .. } => continue,
                    _ => return None,
                };
            }
        }
        out
    };
    let mut groups: BTreeMap<(usize, usize), Vec<Option<u32>>> = BTreeMap::new();
    let n = d.nodes.len();
    for x in 0..n {
        for y in x + 1..n {
            if (x == ia && y == ib) || (x == ib && y == ia) {
                continue;
            }
            let (p, q) = (remap(x), remap(y));
            if p == q {
                continue;
            }
            groups.entry((p.min(q), p.max(q))).or_default().push(label(x, y));
        }
    }
    let mut extra = Vec::new();
    let mut forced = None;
    for ((p, q), labels) in groups {
        if labels.len() < 2 || labels.iter().all(|l| *l == labels[0]) {
            continue;
        }
        let involutions = nodes[p].order == 2 && nodes[q].order == 2;
        if involutions && labels.iter().all(|l| l.is_some()) {
            let m = labels.iter().flatten().fold(0, |g, &m| num_integer::gcd(g, m));
            edges.retain(|e| !(matches!(e, Edge::Braid { .. }) && e.links(p, q)));
            if m >= 3 {
                edges.push(Edge::Braid { a: p, b: q, m });
            } else if m == 1 && forced.is_none() {
                forced = Some((p, q));
            }
        } else {
            let (gp, gq) = (p as i32 + 1, q as i32 + 1);
            for m in labels.into_iter().flatten() {
                extra.push((alt(gp, gq, m), alt(gq, gp, m)));
            }
        }
    }
    (edges, extra, forced)
}

/// Replaces generator `from` by `to` everywhere and deletes it.
fn tietze_identify(p: &Presentation, from: usize, to: usize) -> Presentation {
    let f = from as i32 + 1;
    let t = to as i32 + 1;
    let shift = |k: i32| -> i32 {
        let a = k.abs();
        let a = if a == f { t } else { a };
        let a = if a > f { a - 1 } else { a };
        if k < 0 {
            -a
        } else {
            a
        }
    };
    let mut gens = p.generators.clone();
    gens.remove(from);
    Presentation {
        generators: gens,
        relators: p
            .relators
            .iter()
            .map(|r| r.iter().map(|&k| shift(k)).collect())
            .collect(),
    }
}

/// Free and cyclic reduction, removal of empty and repeated relators.
pub fn simplify(p: &Presentation) -> Presentation {
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    let mut rels = Vec::new();
    for r in &p.relators {
        let w = free_reduce(r);
        if w.is_empty() {
            continue;
        }
        let inv = inverse(&w);
        if seen.contains(&w) || seen.contains(&inv) {
            continue;
        }
        seen.insert(w.clone());
        rels.push(w);
    }
    Presentation {
        generators: p.generators.clone(),
        relators: rels,
    }
}

impl Presentation {
    /// Evaluates a word on matrices.
    pub fn evaluate(&self, w: &[i32], mats: &[Mat], inverses: &[Mat]) -> Mat {
        let n = mats[0].rows();
        let mut acc = Mat::identity(n);
        for &k in w {
            let i = (k.unsigned_abs() - 1) as usize;
            acc = if k > 0 { &acc * &mats[i] } else { &acc * &inverses[i] };
        }
        acc
    }

    /// Whether every relator is the identity on the given matrices.
    pub fn satisfied_by(&self, mats: &[Mat]) -> Result<bool> {
        let inv: Vec<Mat> = mats.iter().map(|m| m.inverse()).collect::<Result<_>>()?;
        Ok(self
            .relators
            .iter()
            .all(|r| self.evaluate(r, mats, &inv).is_identity()))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |w: &Word| -> String {
            w.iter()
                .map(|&k| {
                    let g = &self.generators[(k.unsigned_abs() - 1) as usize];
                    if k < 0 {
                        format!("{g}^-1")
                    } else {
                        g.clone()
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(
            f,
            "< {} | {} >",
            self.generators.join(", "),
            self.relators.iter().map(word).collect::<Vec<_>>().join(", ")
        )
    }
}

/// Assigns reflections of `w` to the nodes so that the diagram's relators
/// hold and the group is generated, by backtracking.
pub fn realize(d: &Diagram, w: &MatGroup) -> Result<Option<Vec<Mat>>> {
    let pres = diagram_presentation(d)?;
    let classes = w.classify();
    let n = d.nodes.len();
    let cands: Vec<Vec<usize>> = d
        .nodes
        .iter()
        .map(|node| {
            w.reflection_ids()
                .into_iter()
                .filter(|&id| classes[id].order == node.order as u64)
                .collect()
        })
        .collect();
    let max_letter = |r: &Word| r.iter().map(|k| k.unsigned_abs() as usize).max().unwrap_or(0);
    let mut by_depth: Vec<Vec<&Word>> = vec![Vec::new(); n + 1];
    for r in &pres.relators {
        by_depth[max_letter(r)].push(r);
    }
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        k: usize,
        chosen: &mut Vec<usize>,
        cands: &[Vec<usize>],
        by_depth: &[Vec<&Word>],
        w: &MatGroup,
    ) -> Option<Vec<usize>> {
        if k == cands.len() {
            let gens: Vec<Mat> = chosen.iter().map(|&i| w.element(i).clone()).collect();
            let h = MatGroup::generate_in_dim(w.dim(), &gens).ok()?;
            return (h.order() == w.order()).then(|| chosen.clone());
        }
        for &c in &cands[k] {
            if chosen.contains(&c) {
                continue;
            }
            chosen.push(c);
            let ok = by_depth[k + 1].iter().all(|r| {
                let mut acc = 0usize;
                for &l in r.iter() {
                    let g = chosen[(l.unsigned_abs() - 1) as usize];
                    let m = if l > 0 { g } else { w.inverse_of(g) };
                    let p = w.element(acc) * w.element(m);
                    acc = w.id_of(&p).expect("closed");
                }
                acc == 0
            });
            if ok {
                if let Some(s) = rec(k + 1, chosen, cands, by_depth, w) {
                    return Some(s);
                }
            }
            chosen.pop();
        }
        None
    }
    Ok(rec(0, &mut chosen, &cands, &by_depth, w)
        .map(|ids| ids.iter().map(|&i| w.element(i).clone()).collect()))
}

/// Outcome of checking one elementary quotient against the matrix side.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientCheck {
    pub rule: String,
    pub diagram: String,
    pub presentation: String,
    pub presented_order: usize,
    pub kernel_order: usize,
    pub matrix_order: usize,
    pub diagram_order: usize,
    pub good: bool,
    pub relators_vanish: bool,
    pub ok: bool,
}

/// A diagram for `W̃` with matrices for its nodes.
#[derive(Clone, Debug)]
pub struct Realized {
    pub diagram: Diagram,
    pub matrices: Vec<Mat>,
    pub group: MatGroup,
}

impl Realized {
    pub fn new(diagram: Diagram, matrices: Vec<Mat>) -> Result<Realized> {
        let pres = diagram_presentation(&diagram)?;
        if !pres.satisfied_by(&matrices)? {
            return Err(Error::MalformedDiagram(
                "the matrices do not satisfy the diagram relations".into(),
            ));
        }
        let group = MatGroup::generate_in_dim(matrices[0].rows(), &matrices)?;
        Ok(Realized {
            diagram,
            matrices,
            group,
        })
    }
}

/// Applies a sequence of rules, comparing at each step the enumerated order
/// of the presentation with `|W̃|/|N|`, where `N` is the normal closure of
/// the added relations, and checking that the images of the generators in
/// the quotient reflection group satisfy the new presentation.
pub fn verify_chain(
    start: &Realized,
    rules: &[&str],
    max_cosets: usize,
) -> Result<Vec<QuotientCheck>> {
    let wt = &start.group;
    let mut d = start.diagram.clone();
    // generator labels of the current diagram mapped to node matrices
    let mut labels: Vec<String> = d.nodes.iter().map(|n| n.label.clone()).collect();
    let mut kernel_gens: Vec<Mat> = Vec::new();
    let mut pres = diagram_presentation(&d)?;
    let mut out = Vec::new();
    let node_matrix = |label: &str| -> Result<Mat> {
        let i = start.diagram.index(label)?;
        Ok(start.matrices[i].clone())
    };
    for text in rules {
        let rule = parse_rule(&d, text)?;
        let (l, r) = rule.words();
        let eval = |w: &[String]| -> Result<Mat> {
            let mut acc = Mat::identity(wt.dim());
            for x in w {
                acc = &acc * &node_matrix(x)?;
            }
            Ok(acc)
        };
        let rel = &eval(&l)? * &eval(&r)?.inverse()?;
        kernel_gens.push(rel);
        let (d2, p_step) = apply_rule(&d, &rule)?;
        // carry the accumulated presentation forward
        let (lw, rw) = (word_of(&d, &l)?, word_of(&d, &r)?);
        pres.relators.push(free_reduce(&relator(&lw, &rw)));
        if let RewriteRule::Identify(_, b) = &rule {
            let ib = labels.iter().position(|x| x == b).expect("label");
            let ia = labels
                .iter()
                .position(|x| *x == *match &rule {
                    RewriteRule::Identify(a, _) => a,
                    _ => unreachable!(),
                })
                .expect("label");
            pres = tietze_identify(&pres, ib, ia);
            labels.remove(ib);
        }
        pres = simplify(&pres);
        let presented_order = coset_enumerate(&pres, max_cosets)?;
        let diagram_order = coset_enumerate(&diagram_presentation(&d2)?, max_cosets)?;
        let step_order = coset_enumerate(&p_step, max_cosets)?;
        let n = wt.normal_closure(&kernel_gens)?;
        let matrix_order = wt.order() / n.order();
        let decision = is_good(wt, &n)?;
        let good = decision.good;
        let relators_vanish = if good {
            let q = quotient_map_with(wt, &n, decision)?;
            let eq = Equivariant::from_presentation(q.presentation.clone().expect("computed"))?;
            let mats: Vec<Mat> = labels
                .iter()
                .map(|x| eq.phi(&node_matrix(x)?))
                .collect::<Result<_>>()?;
            pres.satisfied_by(&mats)?
        } else {
            false
        };
        let ok = good
            && relators_vanish
            && presented_order == matrix_order
            && diagram_order == presented_order
            && step_order == presented_order;
        out.push(QuotientCheck {
            rule: text.to_string(),
            diagram: d2.to_string(),
            presentation: pres.to_string(),
            presented_order,
            kernel_order: n.order(),
            matrix_order,
            diagram_order,
            good,
            relators_vanish,
            ok,
        });
        d = d2;
    }
    Ok(out)
}

/// Checks a single rule applied to a realized diagram.
pub fn verify_diagram_quotient(
    start: &Realized,
    rule: &str,
    max_cosets: usize,
) -> Result<QuotientCheck> {
    Ok(verify_chain(start, &[rule], max_cosets)?.remove(0))
}

/// Standard diagrams of the catalog with matrices for their nodes.
pub fn standard_diagram(name: &str) -> Result<Realized> {
    use crate::catalog::{build, get_group};
    let chain = |orders: &[u32], bonds: &[u32], labels: &[&str]| {
        let mut d = Diagram::default();
        for (l, &o) in labels.iter().zip(orders) {
            d.nodes.push(Node {
                label: l.to_string(),
                order: o,
            });
        }
        for (i, &m) in bonds.iter().enumerate() {
            if m >= 3 {
                d.edges.push(Edge::Braid { a: i, b: i + 1, m });
            }
        }
        d
    };
    let (d, mats) = match name {
        "A2" => (chain(&[2, 2], &[3], &["s", "t"]), build::coxeter_a(2)),
        "A3" => (chain(&[2, 2, 2], &[3, 3], &["s", "t", "u"]), build::coxeter_a(3)),
        "B3" => (chain(&[2, 2, 2], &[4, 3], &["s", "t", "u"]), build::coxeter_b(3)),
        "H3" => (chain(&[2, 2, 2], &[5, 3], &["s", "t", "u"]), build::coxeter_h3()),
        "F4" => (
            chain(&[2, 2, 2, 2], &[3, 4, 3], &["s", "t", "u", "v"]),
            build::coxeter_f4(),
        ),
        "G12" | "G13" | "G22" => {
            let e = match name {
                "G12" => 3,
                "G13" => 4,
                _ => 5,
            };
            let (d, _) = Diagram::parse(&format!(
                "node s 2; node t 2; node u 2; twisted s t u e={e} f=3"
            ))?;
            let w = get_group(name, &[])?;
            let mats = realize(&d, &w)?.ok_or_else(|| {
                Error::Internal(format!("no reflections of {name} satisfy the diagram"))
            })?;
            (d, mats)
        }
        "G(4,2,4)" => return imprimitive_diagram(4, 2, 4),
        other => return Err(Error::UnknownName(format!("no standard diagram for {other}"))),
    };
    Realized::new(d, mats)
}

/// Diagram of `G(m, p, n)` with the matrices of the catalog generators:
/// a double bond for `p = 1`, the `t1', t1` fork for `p = m`, and the
/// circled family diagram otherwise.
pub fn imprimitive_diagram(m: u32, p: u32, n: usize) -> Result<Realized> {
    use crate::catalog::build;
    if m < 2 || p == 0 || m % p != 0 || n == 0 {
        return Err(Error::MalformedDiagram(format!("no group G({m},{p},{n})")));
    }
    let tail = |text: &mut String, first: &[&str]| {
        for k in 2..n {
            text.push_str(&format!(" node t{k} 2;"));
        }
        if n >= 3 {
            for f in first {
                text.push_str(&format!(" bond {f} t2 3;"));
            }
        }
        for k in 2..n.saturating_sub(1) {
            text.push_str(&format!(" bond t{k} t{} 3;", k + 1));
        }
    };
    let mut text = String::new();
    if n == 1 {
        if m / p < 2 {
            return Err(Error::MalformedDiagram("trivial group".into()));
        }
        text.push_str(&format!("node s {};", m / p));
    } else if p == 1 {
        text.push_str(&format!("node s {m}; node t1 2; bond s t1 4;"));
        tail(&mut text, &["t1"]);
    } else if p == m {
        text.push_str("node t1' 2; node t1 2;");
        if m >= 3 {
            text.push_str(&format!(" bond t1' t1 {m};"));
        }
        if n >= 3 && m >= 3 {
            text.push_str(" triangle t1' t1 t2;");
        }
        tail(&mut text, &["t1'", "t1"]);
    } else {
        text.push_str(&format!(
            "node s {}; node t1' 2; node t1 2; family s t1' t1 e={p};",
            m / p
        ));
        if n >= 3 {
            text.push_str(" triangle t1' t1 t2;");
        }
        tail(&mut text, &["t1'", "t1"]);
    }
    let (dg, _) = Diagram::parse(&text)?;
    let mats = if n == 1 {
        vec![Mat::diag(&[crate::CycNum::zeta(m / p)])]
    } else {
        build::imprimitive(m, p, n)
    };
    Realized::new(dg, mats)
}

/// Realizes a diagram inside a catalog group by searching its reflections.
pub fn realize_in_catalog(name: &str, diagram: &str) -> Result<Realized> {
    let (d, _) = Diagram::parse(diagram)?;
    let (n, params) = crate::catalog::parse_name(name)?;
    let w = crate::catalog::get_group(&n, &params)?;
    let mats = realize(&d, &w)?
        .ok_or_else(|| Error::Internal(format!("no reflections of {name} satisfy the diagram")))?;
    Realized::new(d, mats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(text: &str) -> usize {
        let (d, _) = Diagram::parse(text).unwrap();
        coset_enumerate(&diagram_presentation(&d).unwrap(), DEFAULT_MAX_COSETS).unwrap()
    }

    #[test]
    fn small_orders() {
        assert_eq!(order("node s 2; node t 2; bond s t 3"), 6);
        assert_eq!(order("node s 2; node t 2"), 4);
        assert_eq!(order("node s 3"), 3);
        assert_eq!(order("node s 2; node t 2; node u 2; bond s t 3; bond t u 4"), 48);
    }

    #[test]
    fn twisted_words() {
        let (d, _) = Diagram::parse("node s 2; node t 2; node u 2; twisted s t u e=4 f=3").unwrap();
        let p = diagram_presentation(&d).unwrap();
        // tstus (stst u)^-1 and ustu (stut)^-1, up to reduction
        let (s, t, u) = (1, 2, 3);
        assert!(p
            .relators
            .contains(&free_reduce(&relator(&[t, s, t, u, s], &[s, t, s, t, u]))));
        assert!(p
            .relators
            .contains(&free_reduce(&relator(&[u, s, t, u], &[s, t, u, t]))));
        assert_eq!(coset_enumerate(&p, DEFAULT_MAX_COSETS).unwrap(), 96);
    }

    #[test]
    fn rules_parse() {
        let (d, _) = Diagram::parse("node s 2; node t1' 2; node t1 2; family s t1' t1 e=2").unwrap();
        assert_eq!(
            parse_rule(&d, "st1=t1s").unwrap(),
            RewriteRule::Commute("s".into(), "t1".into())
        );
        assert_eq!(
            parse_rule(&d, "t1=t1'").unwrap(),
            RewriteRule::Identify("t1".into(), "t1'".into())
        );
        assert!(matches!(parse_rule(&d, "st1s=t1st1").unwrap(), RewriteRule::Braid(_, _, 3)));
    }

    #[test]
    fn malformed() {
        assert!(Diagram::parse("node s 2; node s 3").is_err());
        assert!(Diagram::parse("node s 2; bond s x 3").is_err());
        assert!(Diagram::parse("node s 2; node t 2; bond s t 1").is_err());
    }
}
