//! Stage diagrams for composed maker strategies.
//!
//! A maker who wins `s` independent games `(a_i, b_i)` in at most `l_i` moves
//! each can interleave them on disjoint subboards. The diagram tracks the
//! progress vector `p` (moves made in each game on the surviving subboards),
//! the supply vector `q` (alive subboards of each type needed on entry) and
//! the number of turns `n` spent in the stage that leaves `p`.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    /// Some game is complete.
    Winning(usize),
    /// Some game is one move from completion; the maker finishes it next turn.
    PreWinning(usize),
    Inner,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageVertex {
    pub p: Vec<u32>,
    pub q: Vec<u128>,
    /// Turns in the stage leaving this vertex (0 at winning vertices).
    pub n: u128,
    pub kind: VertexKind,
    /// Longest remaining turn count from here to a win.
    pub remaining: u128,
}

#[derive(Clone, Debug)]
pub struct StageDiagram {
    pub b: Vec<u64>,
    pub l: Vec<u32>,
    vertices: BTreeMap<Vec<u32>, StageVertex>,
}

fn overflow() -> Error {
    Error::ResourceLimit("stage diagram values overflow 128 bits".into())
}

pub fn build_diagram(b: &[u64], l: &[u32]) -> Result<StageDiagram> {
    if b.is_empty() || b.len() != l.len() {
        return Err(invalid("stage parameters", "b and l must be non-empty and of equal length"));
    }
    if let Some(i) = l.iter().position(|&x| x == 0) {
        return Err(invalid("stage parameters", format!("l[{}] = 0", i + 1)));
    }
    let mut d = StageDiagram {
        b: b.to_vec(),
        l: l.to_vec(),
        vertices: BTreeMap::new(),
    };
    d.eval(&vec![0; l.len()])?;
    Ok(d)
}

impl StageDiagram {
    pub fn s(&self) -> usize {
        self.l.len()
    }

    fn b_total(&self) -> u128 {
        self.b.iter().map(|&x| x as u128).sum()
    }

    pub fn kind(&self, p: &[u32]) -> VertexKind {
        if let Some(i) = (0..self.s()).find(|&i| p[i] == self.l[i]) {
            VertexKind::Winning(i)
        } else if let Some(i) = (0..self.s()).find(|&i| p[i] + 1 == self.l[i]) {
            VertexKind::PreWinning(i)
        } else {
            VertexKind::Inner
        }
    }

    pub fn children(&self, p: &[u32]) -> Vec<Vec<u32>> {
        if matches!(self.kind(p), VertexKind::Winning(_)) {
            return Vec::new();
        }
        (0..self.s())
            .map(|i| {
                let mut c = p.to_vec();
                c[i] += 1;
                c
            })
            .collect()
    }

    fn eval(&mut self, p: &[u32]) -> Result<()> {
        if self.vertices.contains_key(p) {
            return Ok(());
        }
        for c in self.children(p) {
            self.eval(&c)?;
        }
        let v = self.vertex_from_children(p)?;
        self.vertices.insert(p.to_vec(), v);
        Ok(())
    }

    /// Applies the recurrences to `p` using the stored children.
    pub fn vertex_from_children(&self, p: &[u32]) -> Result<StageVertex> {
        let s = self.s();
        let kind = self.kind(p);
        let unit = |i: usize| (0..s).map(|j| u128::from(j == i)).collect::<Vec<_>>();
        let (q, n, remaining) = match kind {
            VertexKind::Winning(i) => (unit(i), 0, 0),
            VertexKind::PreWinning(i) => (unit(i), 1, 1),
            VertexKind::Inner => {
                let kids: Vec<&StageVertex> = self.children(p).iter().map(|c| &self.vertices[c]).collect();
                let mut n: u128 = 1;
                for (i, k) in kids.iter().enumerate() {
                    let t = (k.q[i] - 1)
                        .checked_mul(self.b[i] as u128 + 1)
                        .ok_or_else(overflow)?;
                    n = n.checked_add(t).ok_or_else(overflow)?;
                }
                let step = n
                    .checked_mul(self.b_total() + s as u128)
                    .ok_or_else(overflow)?;
                let mut q = vec![n; s];
                for (i, qi) in q.iter_mut().enumerate() {
                    for (j, k) in kids.iter().enumerate() {
                        if j != i && k.q[i] > 0 {
                            *qi = (*qi).max(k.q[i].checked_add(step).ok_or_else(overflow)?);
                        }
                    }
                }
                let longest = kids.iter().map(|k| k.remaining).max().unwrap_or(0);
                (q, n, n.checked_add(longest).ok_or_else(overflow)?)
            }
        };
        Ok(StageVertex {
            p: p.to_vec(),
            q,
            n,
            kind,
            remaining,
        })
    }

    pub fn vertex(&self, p: &[u32]) -> Option<&StageVertex> {
        self.vertices.get(p)
    }

    pub fn vertices(&self) -> impl Iterator<Item = &StageVertex> {
        self.vertices.values()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Longest root-to-win path, summing the turns of each stage.
    pub fn total_turn_bound(&self) -> u128 {
        self.vertices[&vec![0; self.s()]].remaining
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let fmt_vec = |v: &[String]| format!("({})", v.join(","));
        writeln!(out, "{:<16} {:<28} {:>8}  kind", "p", "q", "n").unwrap();
        for v in self.vertices.values() {
            let p: Vec<String> = v.p.iter().map(|x| x.to_string()).collect();
            let q: Vec<String> = v.q.iter().map(|x| x.to_string()).collect();
            let kind = match v.kind {
                VertexKind::Winning(i) => format!("winning({})", i + 1),
                VertexKind::PreWinning(i) => format!("dashed({})", i + 1),
                VertexKind::Inner => "inner".to_string(),
            };
            writeln!(out, "{:<16} {:<28} {:>8}  {kind}", fmt_vec(&p), fmt_vec(&q), v.n).unwrap();
        }
        writeln!(out, "total bound: {}", self.total_turn_bound()).unwrap();
        out
    }
}

/// The counting step of a stage: `sum k_i (b_i + 1) >= n`.
pub fn stage_feasibility(n: u64, k: &[u64], b: &[u64]) -> bool {
    assert_eq!(k.len(), b.len(), "k and b must have equal length");
    let lhs: u128 = k.iter().zip(b).map(|(&k, &b)| k as u128 * (b as u128 + 1)).sum();
    lhs >= n as u128
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_game_of_length_one_is_one_turn() {
        let d = build_diagram(&[4], &[1]).unwrap();
        assert_eq!(d.total_turn_bound(), 1);
        assert_eq!(d.vertex(&[0]).unwrap().kind, VertexKind::PreWinning(0));
    }

    #[test]
    fn rejects_zero_length() {
        assert!(build_diagram(&[1, 2], &[3, 0]).is_err());
    }

    #[test]
    fn feasibility_arithmetic() {
        assert!(stage_feasibility(22, &[11, 0], &[1, 2]));
        assert!(!stage_feasibility(1, &[0, 0], &[5, 5]));
    }
}
