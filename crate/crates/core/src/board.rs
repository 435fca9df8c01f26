//! Square and triangular boards: cells, adjacency, parity and symmetries.
//!
//! Triangular cells are addressed as `(x,y,U)` / `(x,y,D)`. The Up triangle
//! `(x,y,U)` shares its three edges with `(x,y,D)`, `(x-1,y,D)` and
//! `(x,y-1,D)`. Symmetries act on an integer embedding of the cells: square
//! cells embed as themselves, triangles embed as three times their centroid in
//! the basis `u = (1,0)`, `v = (1/2, sqrt 3/2)`, so `(x,y,U) -> (3x+1, 3y+1)`
//! and `(x,y,D) -> (3x+2, 3y+2)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoardKind {
    Square,
    Triangular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orient {
    Up,
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

/// A board cell. `o` is `None` on the square board.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub x: i32,
    pub y: i32,
    pub o: Option<Orient>,
}

impl Cell {
    pub const fn sq(x: i32, y: i32) -> Cell {
        Cell { x, y, o: None }
    }

    pub const fn up(x: i32, y: i32) -> Cell {
        Cell {
            x,
            y,
            o: Some(Orient::Up),
        }
    }

    pub const fn down(x: i32, y: i32) -> Cell {
        Cell {
            x,
            y,
            o: Some(Orient::Down),
        }
    }

    pub fn board(&self) -> BoardKind {
        match self.o {
            None => BoardKind::Square,
            Some(_) => BoardKind::Triangular,
        }
    }

    pub fn shifted(&self, dx: i32, dy: i32) -> Cell {
        Cell {
            x: self.x + dx,
            y: self.y + dy,
            o: self.o,
        }
    }

    /// Parses `(x,y)` on the square board or `(x,y,U|D)` on the triangular one.
    pub fn parse(board: BoardKind, s: &str) -> std::result::Result<Cell, String> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| format!("malformed cell `{s}`"))?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let num = |t: &str| {
            t.parse::<i32>()
                .map_err(|_| format!("bad coordinate `{t}` in `{s}`"))
        };
        match (board, parts.as_slice()) {
            (BoardKind::Square, [x, y]) => Ok(Cell::sq(num(x)?, num(y)?)),
            (BoardKind::Triangular, [x, y, t]) => {
                let o = match *t {
                    "U" | "u" => Orient::Up,
                    "D" | "d" => Orient::Down,
                    _ => return Err(format!("bad orientation `{t}` in `{s}`")),
                };
                Ok(Cell {
                    x: num(x)?,
                    y: num(y)?,
                    o: Some(o),
                })
            }
            (BoardKind::Square, _) => Err(format!("square cell must be `(x,y)`, got `{s}`")),
            (BoardKind::Triangular, _) => {
                Err(format!("triangular cell must be `(x,y,U|D)`, got `{s}`"))
            }
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.o {
            None => write!(f, "({},{})", self.x, self.y),
            Some(Orient::Up) => write!(f, "({},{},U)", self.x, self.y),
            Some(Orient::Down) => write!(f, "({},{},D)", self.x, self.y),
        }
    }
}

impl fmt::Display for BoardKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoardKind::Square => "square",
            BoardKind::Triangular => "triangular",
        })
    }
}

impl FromStr for BoardKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "square" => Ok(BoardKind::Square),
            "triangular" => Ok(BoardKind::Triangular),
            _ => Err(format!("unknown board `{s}` (expected square or triangular)")),
        }
    }
}

impl BoardKind {
    /// Number of edge-neighbours of a cell.
    pub fn delta(self) -> usize {
        match self {
            BoardKind::Square => 4,
            BoardKind::Triangular => 3,
        }
    }

    pub fn accepts(self, c: &Cell) -> bool {
        c.board() == self
    }

    pub fn neighbors(self, c: Cell) -> Vec<Cell> {
        let Cell { x, y, .. } = c;
        match c.o {
            None => vec![
                Cell::sq(x - 1, y),
                Cell::sq(x + 1, y),
                Cell::sq(x, y - 1),
                Cell::sq(x, y + 1),
            ],
            Some(Orient::Up) => vec![Cell::down(x, y), Cell::down(x - 1, y), Cell::down(x, y - 1)],
            Some(Orient::Down) => vec![Cell::up(x, y), Cell::up(x + 1, y), Cell::up(x, y + 1)],
        }
    }

    pub fn adjacent(self, a: Cell, b: Cell) -> bool {
        self.neighbors(a).contains(&b)
    }

    /// Square: checkerboard colour. Triangular: Up is even, Down is odd.
    pub fn parity(self, c: Cell) -> Parity {
        match c.o {
            None if (c.x + c.y).rem_euclid(2) == 0 => Parity::Even,
            None => Parity::Odd,
            Some(Orient::Up) => Parity::Even,
            Some(Orient::Down) => Parity::Odd,
        }
    }

    /// The point group fixing the origin of the embedding: 8 elements on the
    /// square board, 12 on the triangular one.
    pub fn point_group(self) -> Vec<Symmetry> {
        let (rot, refl, order) = match self {
            BoardKind::Square => ([0, -1, 1, 0], [-1, 0, 0, 1], 4),
            BoardKind::Triangular => ([0, -1, 1, 1], [0, 1, 1, 0], 6),
        };
        let mut out = Vec::with_capacity(2 * order);
        let mut m = [1, 0, 0, 1];
        for _ in 0..order {
            out.push(Symmetry { board: self, m, t: [0, 0] });
            out.push(Symmetry {
                board: self,
                m: mat_mul(m, refl),
                t: [0, 0],
            });
            m = mat_mul(rot, m);
        }
        out
    }

    pub(crate) fn embed(self, c: Cell) -> [i32; 2] {
        match c.o {
            None => [c.x, c.y],
            Some(Orient::Up) => [3 * c.x + 1, 3 * c.y + 1],
            Some(Orient::Down) => [3 * c.x + 2, 3 * c.y + 2],
        }
    }

    pub(crate) fn unembed(self, p: [i32; 2]) -> Option<Cell> {
        match self {
            BoardKind::Square => Some(Cell::sq(p[0], p[1])),
            BoardKind::Triangular => {
                let (rx, ry) = (p[0].rem_euclid(3), p[1].rem_euclid(3));
                if rx != ry || rx == 0 {
                    return None;
                }
                let (x, y) = ((p[0] - rx) / 3, (p[1] - ry) / 3);
                Some(if rx == 1 { Cell::up(x, y) } else { Cell::down(x, y) })
            }
        }
    }

    /// Translation step of one cell unit in the embedding.
    pub(crate) fn unit(self) -> i32 {
        match self {
            BoardKind::Square => 1,
            BoardKind::Triangular => 3,
        }
    }
}

fn mat_mul(a: [i32; 4], b: [i32; 4]) -> [i32; 4] {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

/// An affine board symmetry `p -> m p + t` in embedding coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symmetry {
    board: BoardKind,
    m: [i32; 4],
    t: [i32; 2],
}

impl Symmetry {
    /// Builds a symmetry from a linear part (row-major) and a translation, both
    /// in embedding coordinates. Fails unless the map permutes the cells.
    pub fn new(board: BoardKind, m: [i32; 4], t: [i32; 2]) -> Result<Symmetry> {
        let det = m[0] * m[3] - m[1] * m[2];
        if det.abs() != 1 {
            return Err(invalid("symmetry", format!("linear part {m:?} is not unimodular")));
        }
        let s = Symmetry { board, m, t };
        if board == BoardKind::Triangular {
            let in_group = board.point_group().iter().any(|g| g.m == m);
            if !in_group || t[0].rem_euclid(3) != 0 || t[1].rem_euclid(3) != 0 {
                return Err(invalid(
                    "symmetry",
                    format!("{m:?} + {t:?} does not preserve the triangular lattice"),
                ));
            }
        } else {
            let in_group = board.point_group().iter().any(|g| g.m == m);
            if !in_group {
                return Err(invalid("symmetry", format!("{m:?} is not a square isometry")));
            }
        }
        Ok(s)
    }

    pub fn identity(board: BoardKind) -> Symmetry {
        Symmetry {
            board,
            m: [1, 0, 0, 1],
            t: [0, 0],
        }
    }

    /// Translation by `(dx, dy)` cells.
    pub fn translation(board: BoardKind, dx: i32, dy: i32) -> Symmetry {
        let u = board.unit();
        Symmetry {
            board,
            m: [1, 0, 0, 1],
            t: [u * dx, u * dy],
        }
    }

    pub fn board(&self) -> BoardKind {
        self.board
    }

    pub fn linear(&self) -> [i32; 4] {
        self.m
    }

    pub fn shift(&self) -> [i32; 2] {
        self.t
    }

    pub fn apply(&self, c: Cell) -> Cell {
        let p = self.board.embed(c);
        let q = [
            self.m[0] * p[0] + self.m[1] * p[1] + self.t[0],
            self.m[2] * p[0] + self.m[3] * p[1] + self.t[1],
        ];
        self.board
            .unembed(q)
            .expect("validated symmetry maps cells to cells")
    }

    /// Applies only the linear part to a cell offset `(dx, dy)` (square board).
    pub fn apply_vec(&self, d: [i32; 2]) -> [i32; 2] {
        [
            self.m[0] * d[0] + self.m[1] * d[1],
            self.m[2] * d[0] + self.m[3] * d[1],
        ]
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Symmetry) -> Symmetry {
        let t = self.apply_vec(other.t);
        Symmetry {
            board: self.board,
            m: mat_mul(self.m, other.m),
            t: [t[0] + self.t[0], t[1] + self.t[1]],
        }
    }

    pub fn inverse(&self) -> Symmetry {
        let [a, b, c, d] = self.m;
        let det = a * d - b * c;
        let mi = [d * det, -b * det, -c * det, a * det];
        let inv = Symmetry {
            board: self.board,
            m: mi,
            t: [0, 0],
        };
        let t = inv.apply_vec(self.t);
        Symmetry {
            t: [-t[0], -t[1]],
            ..inv
        }
    }

    pub fn with_shift_cells(&self, dx: i32, dy: i32) -> Symmetry {
        Symmetry::translation(self.board, dx, dy).compose(self)
    }
}

/// An inclusive rectangle of `(x, y)` coordinates. On the triangular board it
/// holds both orientations at every coordinate, i.e. a parallelogram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub board: BoardKind,
    pub x0: i32,
    pub x1: i32,
    pub y0: i32,
    pub y1: i32,
}

impl Window {
    pub fn new(board: BoardKind, x0: i32, x1: i32, y0: i32, y1: i32) -> Result<Window> {
        if x1 < x0 || y1 < y0 {
            return Err(invalid("window", format!("empty range x {x0}..={x1}, y {y0}..={y1}")));
        }
        Ok(Window { board, x0, x1, y0, y1 })
    }

    /// A `w` by `h` window anchored at the origin.
    pub fn sized(board: BoardKind, w: u32, h: u32) -> Result<Window> {
        if w == 0 || h == 0 {
            return Err(invalid("window", "dimensions must be positive"));
        }
        Window::new(board, 0, w as i32 - 1, 0, h as i32 - 1)
    }

    /// Parses `WxH`.
    pub fn parse(board: BoardKind, s: &str) -> Result<Window> {
        let (w, h) = s
            .split_once(['x', 'X'])
            .ok_or_else(|| invalid("window", format!("expected WxH, got `{s}`")))?;
        let num = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| invalid("window", format!("bad dimension `{t}`")))
        };
        Window::sized(board, num(w)?, num(h)?)
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.board.accepts(&c) && (self.x0..=self.x1).contains(&c.x) && (self.y0..=self.y1).contains(&c.y)
    }

    /// Cells in sorted order.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for x in self.x0..=self.x1 {
            for y in self.y0..=self.y1 {
                match self.board {
                    BoardKind::Square => out.push(Cell::sq(x, y)),
                    BoardKind::Triangular => {
                        out.push(Cell::up(x, y));
                        out.push(Cell::down(x, y));
                    }
                }
            }
        }
        out
    }
}
