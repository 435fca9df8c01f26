//! Polyforms (animals), their canonical forms and placements.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use crate::board::{BoardKind, Cell, Symmetry};
use crate::error::{invalid, Result};
use crate::text::{parse_cells, read_file, Source};

/// An edge-connected finite cell set. Cells are kept sorted and in the
/// position they were given, so a `Polyform` doubles as a concrete placement.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polyform {
    board: BoardKind,
    cells: Vec<Cell>,
}

/// A concrete congruent copy of a polyform on the board, as a sorted cell list.
pub type Placement = Vec<Cell>;

impl Polyform {
    pub fn new(board: BoardKind, cells: impl IntoIterator<Item = Cell>) -> Result<Polyform> {
        let mut cells: Vec<Cell> = cells.into_iter().collect();
        cells.sort();
        cells.dedup();
        if cells.is_empty() {
            return Err(invalid("polyform", "no cells"));
        }
        if let Some(c) = cells.iter().find(|c| !board.accepts(c)) {
            return Err(invalid("polyform", format!("cell {c} is not a {board} cell")));
        }
        if !is_connected(board, &cells) {
            return Err(invalid("polyform", "cells are not edge-connected"));
        }
        Ok(Polyform { board, cells })
    }

    pub fn board(&self) -> BoardKind {
        self.board
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.binary_search(&c).is_ok()
    }

    pub fn transformed(&self, g: &Symmetry) -> Polyform {
        let mut cells: Vec<Cell> = self.cells.iter().map(|&c| g.apply(c)).collect();
        cells.sort();
        Polyform {
            board: self.board,
            cells,
        }
    }

    /// The translate whose least cell sits at `(0,0)`.
    pub fn normalized(&self) -> Polyform {
        let m = self.cells[0];
        Polyform {
            board: self.board,
            cells: self.cells.iter().map(|c| c.shifted(-m.x, -m.y)).collect(),
        }
    }

    pub fn canonical(&self) -> Polyform {
        self.images().into_iter().next().expect("at least the identity image")
    }

    /// Distinct normalized images under the point group, sorted.
    pub fn images(&self) -> Vec<Polyform> {
        let set: BTreeSet<Polyform> = self
            .board
            .point_group()
            .iter()
            .map(|g| self.transformed(g).normalized())
            .collect();
        set.into_iter().collect()
    }

    pub fn is_congruent(&self, other: &Polyform) -> bool {
        self.board == other.board && self.canonical() == other.canonical()
    }

    pub fn exterior_boundary(&self) -> BTreeSet<Cell> {
        self.cells
            .iter()
            .flat_map(|&c| self.board.neighbors(c))
            .filter(|c| !self.contains(*c))
            .collect()
    }

    pub fn site_perimeter(&self) -> usize {
        self.exterior_boundary().len()
    }

    /// Every placement whose cells intersect `region`, each once, sorted.
    pub fn placements_meeting<'a>(&self, region: impl IntoIterator<Item = &'a Cell>) -> Vec<Placement> {
        let region: Vec<Cell> = region.into_iter().copied().collect();
        let mut out = BTreeSet::new();
        for img in self.images() {
            for r in &region {
                for q in img.cells() {
                    if q.o != r.o {
                        continue;
                    }
                    let (dx, dy) = (r.x - q.x, r.y - q.y);
                    out.insert(img.cells.iter().map(|c| c.shifted(dx, dy)).collect::<Vec<_>>());
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn placements_containing(&self, c: Cell) -> Vec<Placement> {
        self.placements_meeting(&[c])
    }

    /// True when some placement of `self` fits inside `other`.
    pub fn is_subform(&self, other: &Polyform) -> bool {
        if self.board != other.board || self.size() > other.size() {
            return false;
        }
        let target = other.cells();
        other.cells.iter().any(|&anchor| {
            self.placements_containing(anchor)
                .iter()
                .any(|p| p.iter().all(|c| target.binary_search(c).is_ok()))
        })
    }

    /// Reads the polyform file format: a `board` line, then one cell per line.
    pub fn parse(name: &str, text: &str) -> Result<Polyform> {
        let mut src = Source::new(name, text);
        let board = src.expect_board()?;
        let mut cells = Vec::new();
        let mut last = 1;
        while let Some(line) = src.next_line() {
            let (no, t) = (line.no, line.text);
            last = no;
            let cs = parse_cells(board, t).map_err(|e| src.err(no, e))?;
            cells.extend(cs);
        }
        Polyform::new(board, cells).map_err(|e| src.err(last, e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Polyform> {
        Polyform::parse(&path.display().to_string(), &read_file(path)?)
    }

    pub fn to_file_string(&self) -> String {
        let mut s = format!("board {}\n", self.board);
        for c in &self.cells {
            s.push_str(&format!("{c}\n"));
        }
        s
    }
}

impl fmt::Display for Polyform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.cells.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", cells.join(" "))
    }
}

fn is_connected(board: BoardKind, cells: &[Cell]) -> bool {
    let mut seen = BTreeSet::from([cells[0]]);
    let mut stack = vec![cells[0]];
    while let Some(c) = stack.pop() {
        for n in board.neighbors(c) {
            if cells.binary_search(&n).is_ok() && seen.insert(n) {
                stack.push(n);
            }
        }
    }
    seen.len() == cells.len()
}

/// All free polyforms with `1..=max` cells, as canonical forms, by size then order.
pub fn enumerate(board: BoardKind, max: usize) -> Vec<Polyform> {
    let seed = match board {
        BoardKind::Square => Cell::sq(0, 0),
        BoardKind::Triangular => Cell::up(0, 0),
    };
    let mut level: BTreeSet<Polyform> = BTreeSet::from([Polyform {
        board,
        cells: vec![seed],
    }]);
    let mut out: Vec<Polyform> = Vec::new();
    for size in 1..=max {
        out.extend(level.iter().cloned());
        if size == max {
            break;
        }
        let mut next = BTreeSet::new();
        for p in &level {
            for c in p.exterior_boundary() {
                let grown = Polyform::new(board, p.cells.iter().copied().chain([c]))
                    .expect("growing by a boundary cell keeps connectivity");
                next.insert(grown.canonical());
            }
        }
        level = next;
    }
    out
}

/// The named animals of the threshold tables, at the coordinates the
/// certificates use. Triangle names start with `T`, square ones with `P`.
pub fn named(name: &str) -> Option<Polyform> {
    use crate::board::Cell as C;
    let tri = |cs: &[Cell]| Polyform::new(BoardKind::Triangular, cs.iter().copied()).ok();
    let sq = |cs: &[(i32, i32)]| Polyform::new(BoardKind::Square, cs.iter().map(|&(x, y)| C::sq(x, y))).ok();
    match name {
        "T11" => tri(&[C::up(0, 0)]),
        "T21" => tri(&[C::up(0, 0), C::down(0, 0)]),
        "T31" => tri(&[C::up(0, 0), C::down(0, 0), C::up(1, 0)]),
        "T41" => tri(&[C::up(0, 0), C::down(0, 0), C::up(1, 0), C::down(1, 0)]),
        "T42" => tri(&[C::up(0, 0), C::down(0, 0), C::down(-1, 1), C::up(0, 1)]),
        "T43" => tri(&[C::up(0, 0), C::down(0, 0), C::up(1, 0), C::up(0, 1)]),
        "P11" => sq(&[(1, 1)]),
        "P21" => sq(&[(1, 1), (1, 2)]),
        "P31" => sq(&[(1, 1), (1, 2), (1, 3)]),
        "P32" => sq(&[(1, 1), (1, 2), (2, 2)]),
        "P41" => sq(&[(1, 1), (1, 2), (1, 3), (1, 4)]),
        "P42" => sq(&[(2, 1), (1, 1), (1, 2), (1, 3)]),
        "P43" => sq(&[(1, 1), (1, 2), (2, 2), (1, 3)]),
        "P44" => sq(&[(1, 1), (1, 2), (2, 1), (2, 2)]),
        "P45" => sq(&[(1, 1), (1, 2), (2, 3), (2, 2)]),
        _ => None,
    }
}

pub const NAMES: [&str; 15] = [
    "T11", "T21", "T31", "T41", "T42", "T43", "P11", "P21", "P31", "P32", "P41", "P42", "P43", "P44",
    "P45",
];
