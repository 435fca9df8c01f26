//! Periodic pavings: the breaker's pairing strategies for `(1,b)` games.
//!
//! A paving relates cells in pairs. When the maker marks a cell the breaker
//! marks every unmarked cell related to it, so a paving where each cell has
//! at most `b` partners defeats every goal all of whose placements contain a
//! related pair.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use crate::board::{BoardKind, Cell};
use crate::bounds::{Verdict, Witness};
use crate::error::{invalid, Result};
use crate::polyform::{Placement, Polyform};
use crate::text::{parse_cells, read_file, Source};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Paving {
    board: BoardKind,
    period: [[i32; 2]; 2],
    /// Partners of each fundamental-domain representative.
    partners: BTreeMap<Cell, BTreeSet<Cell>>,
    name: String,
}

#[derive(Clone, Debug)]
pub struct PavingReport {
    pub verdict: Verdict,
    pub degree: usize,
    pub placements_checked: usize,
    /// Least pair-free placement, if any.
    pub counterexample: Option<Placement>,
}

impl Paving {
    /// `pairs` extend periodically along the lattice spanned by `period`.
    pub fn new(board: BoardKind, period: [[i32; 2]; 2], pairs: &[(Cell, Cell)]) -> Result<Paving> {
        let det = period[0][0] * period[1][1] - period[0][1] * period[1][0];
        if det == 0 {
            return Err(invalid("paving", "period vectors are linearly dependent"));
        }
        let mut p = Paving {
            board,
            period,
            partners: BTreeMap::new(),
            name: String::new(),
        };
        for &(u, v) in pairs {
            if !board.accepts(&u) || !board.accepts(&v) {
                return Err(invalid("paving", format!("pair {u} {v} is not on the {board} board")));
            }
            if u == v {
                return Err(invalid("paving", format!("pair relates {u} to itself")));
            }
            p.insert(u, v);
            p.insert(v, u);
        }
        Ok(p)
    }

    fn insert(&mut self, u: Cell, v: Cell) {
        let (r, (i, j)) = self.reduce(u);
        let t = self.lattice_vec(-i, -j);
        self.partners.entry(r).or_default().insert(v.shifted(t[0], t[1]));
    }

    fn lattice_vec(&self, i: i32, j: i32) -> [i32; 2] {
        [
            i * self.period[0][0] + j * self.period[1][0],
            i * self.period[0][1] + j * self.period[1][1],
        ]
    }

    /// Representative of `c` in the fundamental domain and the lattice
    /// coordinates `(i,j)` with `c = rep + i*v1 + j*v2`.
    fn reduce(&self, c: Cell) -> (Cell, (i32, i32)) {
        let [[a, b], [cc, d]] = self.period;
        let det = a * d - b * cc;
        let sign = det.signum();
        // floor of the real lattice coordinates of c
        let fi = ((c.x * d - c.y * cc) * sign).div_euclid(det * sign);
        let fj = ((c.y * a - c.x * b) * sign).div_euclid(det * sign);
        let t = self.lattice_vec(fi, fj);
        (c.shifted(-t[0], -t[1]), (fi, fj))
    }

    pub fn board(&self) -> BoardKind {
        self.board
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Cells related to `c`.
    pub fn partners(&self, c: Cell) -> BTreeSet<Cell> {
        let (r, (i, j)) = self.reduce(c);
        let t = self.lattice_vec(i, j);
        self.partners
            .get(&r)
            .into_iter()
            .flatten()
            .map(|v| v.shifted(t[0], t[1]))
            .collect()
    }

    pub fn related(&self, u: Cell, v: Cell) -> bool {
        self.partners(u).contains(&v)
    }

    /// Largest number of partners of any cell.
    pub fn degree(&self) -> usize {
        self.partners.keys().map(|&r| self.partners(r).len()).max().unwrap_or(0)
    }

    /// Representatives of the cells modulo the period lattice.
    pub fn fundamental_domain(&self) -> Vec<Cell> {
        let [[a, b], [c, d]] = self.period;
        let n = (a * d - b * c).abs();
        let mut reps = BTreeSet::new();
        for x in 0..n {
            for y in 0..n {
                let cells = match self.board {
                    BoardKind::Square => vec![Cell::sq(x, y)],
                    BoardKind::Triangular => vec![Cell::up(x, y), Cell::down(x, y)],
                };
                for cell in cells {
                    reps.insert(self.reduce(cell).0);
                }
            }
        }
        reps.into_iter().collect()
    }

    fn has_pair(&self, p: &[Cell]) -> bool {
        p.iter().any(|&u| {
            let ps = self.partners(u);
            p.iter().any(|v| ps.contains(v))
        })
    }

    /// Checks every placement whose least cell lies in `anchors`.
    fn scan(&self, goal: &Polyform, anchors: &[Cell]) -> (usize, Option<Placement>) {
        let mut checked = 0;
        let mut free: Option<Placement> = None;
        for img in goal.images() {
            let q = img.cells()[0];
            for r in anchors.iter().filter(|r| r.o == q.o) {
                let p: Placement = img.cells().iter().map(|c| c.shifted(r.x - q.x, r.y - q.y)).collect();
                checked += 1;
                if !self.has_pair(&p) && free.as_ref().is_none_or(|f| p < *f) {
                    free = Some(p);
                }
            }
        }
        (checked, free)
    }

    pub fn defeats(&self, goal: &Polyform) -> PavingReport {
        self.report(goal, &self.fundamental_domain())
    }

    /// Same check with anchors drawn from a `(2r+1) x (2r+1)` block of periods.
    pub fn defeats_over_block(&self, goal: &Polyform, r: i32) -> PavingReport {
        let base = self.fundamental_domain();
        let mut anchors = Vec::new();
        for i in -r..=r {
            for j in -r..=r {
                let t = self.lattice_vec(i, j);
                anchors.extend(base.iter().map(|c| c.shifted(t[0], t[1])));
            }
        }
        self.report(goal, &anchors)
    }

    fn report(&self, goal: &Polyform, anchors: &[Cell]) -> PavingReport {
        let degree = self.degree();
        if goal.board() != self.board {
            return PavingReport {
                verdict: Verdict::unknown("goal and paving are on different boards"),
                degree,
                placements_checked: 0,
                counterexample: None,
            };
        }
        let (checked, free) = self.scan(goal, anchors);
        let verdict = match &free {
            None => Verdict::breaker(Witness::Paving(format!("{} (degree {degree})", self.name))),
            Some(p) => {
                let cells: Vec<String> = p.iter().map(|c| c.to_string()).collect();
                Verdict::unknown(format!("pair-free placement {}", cells.join(" ")))
            }
        };
        PavingReport {
            verdict,
            degree,
            placements_checked: checked,
            counterexample: free,
        }
    }

    /// Reads the paving format: `board`, `period (x,y) (x,y)`, then `pair` lines.
    pub fn parse(name: &str, text: &str) -> Result<Paving> {
        let mut src = Source::new(name, text);
        let board = src.expect_board()?;
        let eof = src.eof_line();
        let pl = src.next_line().ok_or_else(|| src.err(eof, "expected `period`"))?;
        let vs = pl
            .text
            .strip_prefix("period")
            .ok_or_else(|| src.err(pl.no, "expected `period (x,y) (x,y)`"))
            .and_then(|r| parse_cells(BoardKind::Square, r).map_err(|e| src.err(pl.no, e)))?;
        let [v1, v2] = vs.as_slice() else {
            return Err(src.err(pl.no, "period needs exactly two vectors"));
        };
        let period = [[v1.x, v1.y], [v2.x, v2.y]];
        let mut pairs = Vec::new();
        let mut last = pl.no;
        while let Some(line) = src.next_line() {
            last = line.no;
            let cells = line
                .text
                .strip_prefix("pair")
                .ok_or_else(|| src.err(line.no, format!("expected `pair <cell> <cell>`, got `{}`", line.text)))
                .and_then(|r| parse_cells(board, r).map_err(|e| src.err(line.no, e)))?;
            match cells.as_slice() {
                [u, v] => pairs.push((*u, *v)),
                _ => return Err(src.err(line.no, "a pair needs exactly two cells")),
            }
        }
        let mut p = Paving::new(board, period, &pairs).map_err(|e| src.err(last, e.to_string()))?;
        p.name = Path::new(name)
            .file_stem()
            .map_or_else(|| name.to_string(), |s| s.to_string_lossy().into_owned());
        Ok(p)
    }

    pub fn load(path: &Path) -> Result<Paving> {
        Paving::parse(&path.display().to_string(), &read_file(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyform::named;

    fn vertical_dominoes() -> Paving {
        // (x,y) ~ (x,y+1) when x+y is odd
        Paving::new(BoardKind::Square, [[1, 1], [1, -1]], &[(Cell::sq(1, 0), Cell::sq(1, 1))]).unwrap()
    }

    #[test]
    fn periodic_partners() {
        let p = vertical_dominoes();
        assert_eq!(p.degree(), 1);
        assert!(p.related(Cell::sq(4, 5), Cell::sq(4, 6)));
        assert!(p.related(Cell::sq(4, 6), Cell::sq(4, 5)));
        assert!(!p.related(Cell::sq(4, 4), Cell::sq(4, 5)));
        assert_eq!(p.fundamental_domain().len(), 2);
    }

    #[test]
    fn empty_paving_has_degree_zero() {
        let p = Paving::new(BoardKind::Square, [[1, 0], [0, 1]], &[]).unwrap();
        assert_eq!(p.degree(), 0);
    }

    #[test]
    fn horizontal_domino_escapes_vertical_pairs() {
        let r = vertical_dominoes().defeats(&named("P21").unwrap());
        assert_eq!(r.verdict.status(), crate::bounds::Status::Unknown);
        let ce = r.counterexample.unwrap();
        assert!(!vertical_dominoes().related(ce[0], ce[1]));
    }

    #[test]
    fn rejects_bad_files() {
        assert!(Paving::parse("p", "board square\nperiod (1,0) (2,0)\n").is_err());
        let e = Paving::parse("p", "board square\nperiod (1,0) (0,1)\npair (0,0) (0,1)\npair (0,0)\n").unwrap_err();
        assert!(e.to_string().starts_with("p:4:"), "{e}");
        assert!(Paving::parse("p", "board square\nperiod (1,0) (0,1)\npair (0,0) (0,0)\n").is_err());
    }
}
