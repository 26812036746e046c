//! Named graphs and the construction expression grammar.
//!
//! ```text
//! expr  := atom | "join(" expr ("," expr)+ ")" | "union(" expr ("," expr)+ ")"
//! atom  := "K" n | "I" n | "P" n | "C" n | "S" t | "M" t | "F" t
//!        | "T(" n "," r ")" | "KP(" n ("," n)* ")" | "G6(" graph6 ")"
//! ```
//!
//! `S t` is the star with `t` leaves, `M t` the matching with `t` edges,
//! `F t` the friendship graph of `t` triangles sharing a vertex, and `T(n,r)`
//! the balanced complete `r`-partite graph. `G6(...)` embeds an arbitrary
//! graph so that extremal catalogs can be written as expressions.

use super::{from_graph6, to_graph6, Graph, MAX_ORDER};
use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionSpec {
    Complete(usize),
    Empty(usize),
    Path(usize),
    Cycle(usize),
    Star(usize),
    Matching(usize),
    Friendship(usize),
    Turan(usize, usize),
    Multipartite(Vec<usize>),
    Literal(Graph),
    Join(Box<ConstructionSpec>, Box<ConstructionSpec>),
    Union(Box<ConstructionSpec>, Box<ConstructionSpec>),
}

fn bad(msg: impl Into<String>) -> Error {
    Error::BadSpec { offset: 0, msg: msg.into() }
}

impl ConstructionSpec {
    pub fn join(a: ConstructionSpec, b: ConstructionSpec) -> Self {
        ConstructionSpec::Join(Box::new(a), Box::new(b))
    }

    pub fn union(a: ConstructionSpec, b: ConstructionSpec) -> Self {
        ConstructionSpec::Union(Box::new(a), Box::new(b))
    }

    /// The tersest expression for `g`: `K`/`I` atoms when they fit, else a
    /// `G6(...)` literal.
    pub fn literal(g: &Graph) -> Self {
        if g.order() > 0 && g.edge_count() == 0 {
            ConstructionSpec::Empty(g.order())
        } else if g.order() > 0 && g.is_complete() {
            ConstructionSpec::Complete(g.order())
        } else {
            ConstructionSpec::Literal(g.clone())
        }
    }

    pub fn order(&self) -> usize {
        use ConstructionSpec::*;
        match self {
            Complete(n) | Empty(n) | Path(n) | Cycle(n) | Turan(n, _) => *n,
            Star(t) => t + 1,
            Matching(t) => 2 * t,
            Friendship(t) => 2 * t + 1,
            Multipartite(parts) => parts.iter().sum(),
            Literal(g) => g.order(),
            Join(a, b) | Union(a, b) => a.order() + b.order(),
        }
    }

    pub fn build(&self) -> Result<Graph> {
        use ConstructionSpec::*;
        let n = self.order();
        if n > MAX_ORDER {
            return Err(Error::OversizeGraph(n));
        }
        Ok(match self {
            Complete(n) => positive(*n, "K").map(complete)?,
            Empty(n) => positive(*n, "I").map(Graph::new)?,
            Path(n) => positive(*n, "P").map(path)?,
            Cycle(n) => {
                if *n < 3 {
                    return Err(bad(format!("C{n}: a cycle needs at least 3 vertices")));
                }
                let mut g = path(*n);
                g.add_edge(0, n - 1);
                g
            }
            Star(t) => {
                positive(*t, "S")?;
                Graph::from_edges(t + 1, &(1..=*t).map(|v| (0, v)).collect::<Vec<_>>())
            }
            Matching(t) => {
                positive(*t, "M")?;
                Graph::from_edges(2 * t, &(0..*t).map(|i| (2 * i, 2 * i + 1)).collect::<Vec<_>>())
            }
            Friendship(t) => {
                positive(*t, "F")?;
                let mut g = Graph::new(2 * t + 1);
                for i in 0..*t {
                    let (a, b) = (2 * i + 1, 2 * i + 2);
                    g.add_edge(0, a);
                    g.add_edge(0, b);
                    g.add_edge(a, b);
                }
                g
            }
            Turan(n, r) => {
                positive(*n, "T(n,r) order")?;
                if *r == 0 {
                    return Err(bad("T(n,r) needs r >= 1"));
                }
                multipartite(&balanced_parts(*n, *r))
            }
            Multipartite(parts) => {
                if parts.is_empty() || parts.contains(&0) {
                    return Err(bad("KP parts must all be at least 1"));
                }
                multipartite(parts)
            }
            Literal(g) => g.clone(),
            Join(a, b) => a.build()?.join(&b.build()?)?,
            Union(a, b) => a.build()?.union(&b.build()?)?,
        })
    }
}

fn positive(n: usize, what: &str) -> Result<usize> {
    if n == 0 {
        Err(bad(format!("{what} needs a positive parameter")))
    } else {
        Ok(n)
    }
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    let all = g.vertex_mask();
    for v in 0..n {
        g.adj[v] = all & !(1 << v);
    }
    g
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, &(1..n).map(|v| (v - 1, v)).collect::<Vec<_>>())
}

/// Part sizes of T(n, r): as equal as possible, larger parts first.
pub fn balanced_parts(n: usize, r: usize) -> Vec<usize> {
    let r = r.min(n);
    (0..r).map(|i| n / r + usize::from(i < n % r)).collect()
}

pub fn multipartite(parts: &[usize]) -> Graph {
    let n: usize = parts.iter().sum();
    let mut g = Graph::new(n);
    let mut start = 0;
    let all = g.vertex_mask();
    for &p in parts {
        let part = (all >> start << start) & super::low_mask(start + p);
        for v in start..start + p {
            g.adj[v] = all & !part;
        }
        start += p;
    }
    g
}

impl fmt::Display for ConstructionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ConstructionSpec::*;
        match self {
            Complete(n) => write!(f, "K{n}"),
            Empty(n) => write!(f, "I{n}"),
            Path(n) => write!(f, "P{n}"),
            Cycle(n) => write!(f, "C{n}"),
            Star(t) => write!(f, "S{t}"),
            Matching(t) => write!(f, "M{t}"),
            Friendship(t) => write!(f, "F{t}"),
            Turan(n, r) => write!(f, "T({n},{r})"),
            Multipartite(parts) => {
                let parts: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "KP({})", parts.join(","))
            }
            Literal(g) => write!(f, "G6({})", to_graph6(g)),
            Join(a, b) => write!(f, "join({a},{b})"),
            Union(a, b) => write!(f, "union({a},{b})"),
        }
    }
}

impl FromStr for ConstructionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let spec = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(spec)
    }
}

/// Splits a comma-separated list of expressions at top-level commas.
pub fn parse_list(s: &str) -> Result<Vec<ConstructionSpec>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(parse_at(s, start, i)?);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !s[start..].trim().is_empty() || !out.is_empty() {
        out.push(parse_at(s, start, s.len())?);
    }
    Ok(out)
}

fn parse_at(s: &str, start: usize, end: usize) -> Result<ConstructionSpec> {
    s[start..end].parse().map_err(|e| match e {
        Error::BadSpec { offset, msg } => Error::BadSpec { offset: offset + start, msg },
        other => other,
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::BadSpec { offset: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::BadSpec { offset: start, msg: "number too large".into() })
    }

    fn numbers(&mut self) -> Result<Vec<usize>> {
        self.eat(b'(')?;
        let mut v = vec![self.number()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            v.push(self.number()?);
        }
        self.eat(b')')?;
        Ok(v)
    }

    fn word(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_alphabetic) {
            self.pos += 1;
        }
        if &self.src[start..self.pos] == b"G" && self.src.get(self.pos) == Some(&b'6') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn expr(&mut self) -> Result<ConstructionSpec> {
        let at = {
            self.skip_ws();
            self.pos
        };
        let word = self.word().to_string();
        let checked = |spec: ConstructionSpec| -> Result<ConstructionSpec> {
            if spec.order() > MAX_ORDER {
                return Err(Error::OversizeGraph(spec.order()));
            }
            spec.build().map_err(|e| match e {
                Error::BadSpec { msg, .. } => Error::BadSpec { offset: at, msg },
                other => other,
            })?;
            Ok(spec)
        };
        let spec = match word.as_str() {
            "join" | "union" | "JOIN" | "UNION" => {
                self.eat(b'(')?;
                let mut acc = self.expr()?;
                let mut count = 1;
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    let rhs = self.expr()?;
                    acc = if word.eq_ignore_ascii_case("join") {
                        ConstructionSpec::join(acc, rhs)
                    } else {
                        ConstructionSpec::union(acc, rhs)
                    };
                    count += 1;
                }
                self.eat(b')')?;
                if count < 2 {
                    return Err(Error::BadSpec { offset: at, msg: format!("{word} needs at least two operands") });
                }
                return checked(acc);
            }
            "K" | "I" | "P" | "C" | "S" | "M" | "F" => {
                let n = self.number()?;
                match word.as_str() {
                    "K" => ConstructionSpec::Complete(n),
                    "I" => ConstructionSpec::Empty(n),
                    "P" => ConstructionSpec::Path(n),
                    "C" => ConstructionSpec::Cycle(n),
                    "S" => ConstructionSpec::Star(n),
                    "M" => ConstructionSpec::Matching(n),
                    _ => ConstructionSpec::Friendship(n),
                }
            }
            "T" => {
                let args = self.numbers()?;
                if args.len() != 2 {
                    return Err(Error::BadSpec { offset: at, msg: "T takes exactly (n,r)".into() });
                }
                ConstructionSpec::Turan(args[0], args[1])
            }
            "KP" => ConstructionSpec::Multipartite(self.numbers()?),
            "G6" => {
                self.eat(b'(')?;
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(|b| (63..=126).contains(b)) {
                    self.pos += 1;
                }
                let body = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let g = from_graph6(body).map_err(|e| match e {
                    Error::Parse { offset, msg } => Error::BadSpec { offset: start + offset, msg },
                    other => other,
                })?;
                self.eat(b')')?;
                ConstructionSpec::Literal(g)
            }
            "" => return Err(self.error("expected a construction")),
            other => return Err(Error::BadSpec { offset: at, msg: format!("unknown atom '{other}'") }),
        };
        checked(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> Graph {
        s.parse::<ConstructionSpec>().unwrap().build().unwrap()
    }

    #[test]
    fn join_of_independent_sets() {
        let g = build("join(T(2,1),I6)");
        assert_eq!((g.order(), g.edge_count()), (8, 12));
        let g = build("join(T(2,1),I7)");
        assert_eq!((g.order(), g.edge_count()), (9, 14));
        let g = build("join(I2, I7)");
        assert_eq!((g.order(), g.edge_count()), (9, 14));
    }

    #[test]
    fn odd_k_complete_instance() {
        let g = build("join(K2,union(I5,K2))");
        assert_eq!((g.order(), g.edge_count()), (9, 16));
    }

    #[test]
    fn friendship_graph() {
        let f2 = build("F2");
        assert_eq!((f2.order(), f2.edge_count()), (5, 6));
        assert_eq!(f2.degrees(), vec![4, 2, 2, 2, 2]);
    }

    #[test]
    fn named_atoms() {
        assert_eq!(build("K4").edge_count(), 6);
        assert_eq!(build("P5").edge_count(), 4);
        assert_eq!(build("C4").edge_count(), 4);
        assert_eq!(build("S3").degrees(), vec![3, 1, 1, 1]);
        assert_eq!(build("M3").edge_count(), 3);
        assert_eq!(build("KP(2,2,2)").edge_count(), 12);
        assert_eq!(build("T(5,2)").edge_count(), 6);
        assert_eq!(build("T(4,9)"), complete(4));
        assert_eq!(build("G6(Bw)"), complete(3));
    }

    #[test]
    fn turan_graph_edges_match_part_products() {
        for n in 1..=12 {
            for r in 1..=13 {
                let parts = balanced_parts(n, r);
                let mut direct = 0;
                for i in 0..parts.len() {
                    for j in i + 1..parts.len() {
                        direct += parts[i] * parts[j];
                    }
                }
                assert_eq!(build(&format!("T({n},{r})")).edge_count(), direct);
            }
        }
    }

    #[test]
    fn malformed_specs() {
        assert!(matches!("T(5,0)".parse::<ConstructionSpec>(), Err(Error::BadSpec { offset: 0, .. })));
        assert!(matches!("K0".parse::<ConstructionSpec>(), Err(Error::BadSpec { .. })));
        assert!(matches!("C2".parse::<ConstructionSpec>(), Err(Error::BadSpec { .. })));
        assert!(matches!("join(K2)".parse::<ConstructionSpec>(), Err(Error::BadSpec { .. })));
        assert!(matches!("KP(2,0)".parse::<ConstructionSpec>(), Err(Error::BadSpec { .. })));
        assert!(matches!("Q3".parse::<ConstructionSpec>(), Err(Error::BadSpec { offset: 0, .. })));
        assert!(matches!("union(K2, X1)".parse::<ConstructionSpec>(), Err(Error::BadSpec { offset: 10, .. })));
        assert_eq!("union(K40,K40)".parse::<ConstructionSpec>(), Err(Error::OversizeGraph(80)));
        assert_eq!("K65".parse::<ConstructionSpec>(), Err(Error::OversizeGraph(65)));
    }

    #[test]
    fn display_round_trips() {
        for s in ["join(K2,union(I5,K2))", "T(5,2)", "KP(1,2,3)", "F3", "G6(DQc)", "union(M2,S2)"] {
            let spec: ConstructionSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn list_splits_at_top_level() {
        let specs = parse_list("P6, join(K2,I3),K4").unwrap();
        assert_eq!(specs.len(), 3);
        assert!(parse_list("").unwrap().is_empty());
        assert!(matches!(parse_list("P6,,K3"), Err(Error::BadSpec { offset: 3, .. })));
    }
}
