//! Finite groups given by a Cayley table or as a full symmetric group.
//!
//! Elements are indices `0..order`. The identity of a symmetric group is
//! index 0 (permutations are listed lexicographically); a Cayley table may
//! place it anywhere.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};

pub type Element = usize;

/// Largest supported degree for symmetric groups (8! elements).
pub const MAX_DEGREE: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Cayley {
        names: Vec<String>,
        table: Vec<Vec<Element>>,
    },
    /// `x·y = x∘y`: apply `y` first.
    Symmetric {
        degree: usize,
        perms: Vec<Vec<u8>>,
        index: HashMap<Vec<u8>, Element>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    repr: Repr,
    identity: Element,
    inverses: Vec<Element>,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn cayley(names: Vec<String>, table: Vec<Vec<Element>>) -> Result<FiniteGroup> {
        let n = names.len();
        let bad = |m: String| Err(Error::InvalidGroup(m));
        if n == 0 {
            return bad("a group needs at least one element".into());
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return bad(format!("table must be {n}x{n}"));
        }
        if table.iter().flatten().any(|&e| e >= n) {
            return bad("table entry outside the element list".into());
        }
        for i in 0..n {
            if names[..i].contains(&names[i]) {
                return bad(format!("duplicate element name {:?}", names[i]));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!("not associative at ({}, {}, {})", names[a], names[b], names[c]));
                    }
                }
            }
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x)) else {
            return bad("no identity element".into());
        };
        let mut inverses = Vec::with_capacity(n);
        for x in 0..n {
            match (0..n).find(|&y| table[x][y] == identity && table[y][x] == identity) {
                Some(y) => inverses.push(y),
                None => return bad(format!("{} has no inverse", names[x])),
            }
        }
        Ok(FiniteGroup {
            repr: Repr::Cayley { names, table },
            identity,
            inverses,
        })
    }

    /// `Z_n` with elements named `0..n-1`.
    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        let names = (0..n).map(|k| k.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::cayley(names, table)
    }

    /// The symmetric group on `{1, …, degree}`. `x·y` applies `y` first, so
    /// `(12)·(23) = (123)`.
    pub fn symmetric(degree: usize) -> Result<FiniteGroup> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::InvalidGroup(format!("degree must lie in 1..={MAX_DEGREE}")));
        }
        let mut perms = Vec::new();
        let mut p: Vec<u8> = (0..degree as u8).collect();
        loop {
            perms.push(p.clone());
            if !next_permutation(&mut p) {
                break;
            }
        }
        let index: HashMap<Vec<u8>, Element> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let inverses = perms
            .iter()
            .map(|p| {
                let mut q = vec![0u8; degree];
                for (i, &x) in p.iter().enumerate() {
                    q[x as usize] = i as u8;
                }
                index[&q]
            })
            .collect();
        Ok(FiniteGroup {
            repr: Repr::Symmetric { degree, perms, index },
            identity: 0,
            inverses,
        })
    }

    pub fn order(&self) -> usize {
        self.inverses.len()
    }

    pub fn identity(&self) -> Element {
        self.identity
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        0..self.order()
    }

    fn check(&self, x: Element) -> Result<()> {
        if x < self.order() {
            Ok(())
        } else {
            Err(Error::UnknownElement(x.to_string()))
        }
    }

    pub fn op(&self, x: Element, y: Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub fn inv(&self, x: Element) -> Result<Element> {
        self.check(x)?;
        Ok(self.inverses[x])
    }

    /// Unchecked product, for elements known to be valid.
    pub fn mul(&self, x: Element, y: Element) -> Element {
        match &self.repr {
            Repr::Cayley { table, .. } => table[x][y],
            Repr::Symmetric { perms, index, .. } => {
                let (p, q) = (&perms[x], &perms[y]);
                let r: Vec<u8> = q.iter().map(|&i| p[i as usize]).collect();
                index[&r]
            }
        }
    }

    pub fn inverse(&self, x: Element) -> Element {
        self.inverses[x]
    }

    pub fn product(&self, xs: impl IntoIterator<Item = Element>) -> Element {
        xs.into_iter().fold(self.identity, |acc, x| self.mul(acc, x))
    }

    pub fn name(&self, x: Element) -> String {
        match &self.repr {
            Repr::Cayley { names, .. } => names[x].clone(),
            Repr::Symmetric { perms, .. } => cycle_notation(&perms[x]),
        }
    }

    /// An element by name; for symmetric groups, cycle notation such as
    /// `(12)(34)`, `(1 2 3)` or `()`.
    pub fn parse(&self, text: &str) -> Result<Element> {
        let text = text.trim();
        match &self.repr {
            Repr::Cayley { names, .. } => names
                .iter()
                .position(|n| n == text)
                .ok_or_else(|| Error::UnknownElement(text.into())),
            Repr::Symmetric { degree, index, .. } => {
                let p = parse_cycles(text, *degree).ok_or_else(|| Error::UnknownElement(text.into()))?;
                Ok(index[&p])
            }
        }
    }

    /// Parses a JSON element: a name, or (for Cayley tables) an index.
    pub fn element_from_json(&self, v: &Value) -> Result<Element> {
        match v {
            Value::String(s) => self.parse(s),
            Value::Number(n) => {
                let by_name = self.parse(&n.to_string());
                match (by_name, n.as_u64()) {
                    (Ok(e), _) => Ok(e),
                    (Err(_), Some(k)) if (k as usize) < self.order() && self.is_cayley() => Ok(k as usize),
                    _ => Err(Error::UnknownElement(n.to_string())),
                }
            }
            other => Err(Error::UnknownElement(other.to_string())),
        }
    }

    fn is_cayley(&self) -> bool {
        matches!(self.repr, Repr::Cayley { .. })
    }

    pub fn from_json(v: &Value) -> Result<FiniteGroup> {
        let file: GroupFile = serde_json::from_value(v.clone())?;
        match file {
            GroupFile::Cayley { cayley } => {
                let names: Vec<String> = cayley.elements.iter().map(json_name).collect::<Result<_>>()?;
                let lookup = |v: &Value| -> Result<Element> {
                    let s = json_name(v)?;
                    if let Some(i) = names.iter().position(|n| *n == s) {
                        return Ok(i);
                    }
                    match v.as_u64() {
                        Some(k) if (k as usize) < names.len() => Ok(k as usize),
                        _ => Err(Error::UnknownElement(s)),
                    }
                };
                let table = cayley
                    .table
                    .iter()
                    .map(|row| row.iter().map(lookup).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                FiniteGroup::cayley(names, table)
            }
            GroupFile::Symmetric { perm_degree } => FiniteGroup::symmetric(perm_degree),
            GroupFile::Cyclic { cyclic } => FiniteGroup::cyclic(cyclic),
        }
    }

    pub fn parse_json(text: &str) -> Result<FiniteGroup> {
        FiniteGroup::from_json(&serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<FiniteGroup> {
        FiniteGroup::parse_json(&std::fs::read_to_string(path)?)
    }
}

fn json_name(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::InvalidGroup(format!(
            "element must be a string or number, got {other}"
        ))),
    }
}

#[derive(Deserialize)]
struct CayleyTable {
    elements: Vec<Value>,
    table: Vec<Vec<Value>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GroupFile {
    Cayley { cayley: CayleyTable },
    Symmetric { perm_degree: usize },
    Cyclic { cyclic: usize },
}

fn next_permutation(p: &mut [u8]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn cycle_notation(p: &[u8]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            let _ = write!(out, "{}", i + 1);
            i = p[i] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Product of cycles, rightmost applied first.
fn parse_cycles(text: &str, degree: usize) -> Option<Vec<u8>> {
    let mut perm: Vec<u8> = (0..degree as u8).collect();
    let mut rest = text.trim();
    while !rest.is_empty() {
        rest = rest.strip_prefix('(')?;
        let close = rest.find(')')?;
        let body = &rest[..close];
        rest = rest[close + 1..].trim_start();
        let points: Vec<usize> = if body.contains([' ', ',']) {
            body.split([' ', ','])
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().ok())
                .collect::<Option<_>>()?
        } else {
            body.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()?
        };
        if points.iter().any(|&k| k == 0 || k > degree) {
            return None;
        }
        let mut cycle: Vec<u8> = (0..degree as u8).collect();
        for (i, &a) in points.iter().enumerate() {
            let b = points[(i + 1) % points.len()];
            cycle[a - 1] = (b - 1) as u8;
        }
        if (0..degree)
            .map(|i| cycle[i])
            .collect::<std::collections::BTreeSet<_>>()
            .len()
            != degree
        {
            return None;
        }
        // perm := perm ∘ cycle
        perm = cycle.iter().map(|&i| perm[i as usize]).collect();
    }
    Some(perm)
}
