//! Python bindings for the polygame crate.

use std::path::Path;

use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use polygame::bounds::{self, GameSpec, Verdict};
use polygame::catalog::{run_all, Catalog, RunOptions};
use polygame::paving::Paving;
use polygame::polyform::{self, Polyform};
use polygame::priority::{verify_breaker, HistorySpec, PriorityStrategy, VerifyOptions};
use polygame::proofseq::{verify_sequence, ProofSequence};
use polygame::solver::{solve as run_solver, SolveConfig};
use polygame::stages::build_diagram;
use polygame::{Cell, Error, Orient, Window};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Io { .. } => PyOSError::new_err(e.to_string()),
        Error::ResourceLimit(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

type PyCell = (i32, i32, Option<&'static str>);

fn cell_tuple(c: &Cell) -> PyCell {
    let o = c.o.map(|o| match o {
        Orient::Up => "U",
        Orient::Down => "D",
    });
    (c.x, c.y, o)
}

/// A polyomino or polyiamond.
#[pyclass(name = "Polyform", module = "pypolygame", frozen)]
struct PyPolyform {
    inner: Polyform,
}

#[pymethods]
impl PyPolyform {
    /// One of the catalog names, e.g. `P45` or `T31`.
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        polyform::named(name)
            .map(|inner| PyPolyform { inner })
            .ok_or_else(|| PyValueError::new_err(format!("unknown polyform `{name}`")))
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Polyform::load(Path::new(path)).map(|inner| PyPolyform { inner }).map_err(to_py)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Polyform::parse("<string>", text).map(|inner| PyPolyform { inner }).map_err(to_py)
    }

    #[getter]
    fn board(&self) -> String {
        self.inner.board().to_string()
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    fn cells(&self) -> Vec<PyCell> {
        self.inner.cells().iter().map(cell_tuple).collect()
    }

    /// Number of distinct congruent images under the board's point group.
    fn image_count(&self) -> usize {
        self.inner.images().len()
    }

    fn site_perimeter(&self) -> usize {
        self.inner.site_perimeter()
    }

    fn is_subform(&self, other: PyRef<'_, PyPolyform>) -> bool {
        self.inner.is_subform(&other.inner)
    }

    fn is_congruent(&self, other: PyRef<'_, PyPolyform>) -> bool {
        self.inner.is_congruent(&other.inner)
    }

    fn __repr__(&self) -> String {
        format!("Polyform({})", self.inner)
    }
}

/// Outcome of a check: `status` is `MakerWins`, `BreakerWins` or `Unknown`.
#[pyclass(name = "Verdict", module = "pypolygame", frozen, get_all)]
struct PyVerdict {
    status: String,
    witness: Option<String>,
    note: String,
}

impl From<&Verdict> for PyVerdict {
    fn from(v: &Verdict) -> Self {
        PyVerdict {
            status: v.status().to_string(),
            witness: v.witness().map(|w| w.to_string()),
            note: v.note().to_string(),
        }
    }
}

#[pymethods]
impl PyVerdict {
    fn __repr__(&self) -> String {
        format!("Verdict({})", self.status)
    }
}

fn game(a: u32, b: u32, c: Option<u32>) -> PyResult<GameSpec> {
    GameSpec::new(a, b, c).map_err(to_py)
}

#[pyfunction]
fn verify_proof(path: &str) -> PyResult<PyVerdict> {
    let seq = ProofSequence::load(Path::new(path)).map_err(to_py)?;
    Ok((&verify_sequence(&seq).verdict).into())
}

#[pyfunction]
fn verify_paving(paving: &str, goal: PyRef<'_, PyPolyform>) -> PyResult<PyVerdict> {
    let p = Paving::load(Path::new(paving)).map_err(to_py)?;
    Ok((&p.defeats(&goal.inner).verdict).into())
}

/// Returns the verdict, the number of positions explored and the terminal
/// positions up to symmetry as lists of `(cell, label)` pairs.
#[pyfunction]
#[pyo3(signature = (strategy, goal, history = true))]
#[allow(clippy::type_complexity)]
fn verify_priority(
    strategy: &str,
    goal: PyRef<'_, PyPolyform>,
    history: bool,
) -> PyResult<(PyVerdict, usize, Vec<Vec<(PyCell, char)>>)> {
    let strat = PriorityStrategy::load(Path::new(strategy)).map_err(to_py)?;
    let mut opts = VerifyOptions::new(&strat);
    if !history {
        opts.history = HistorySpec::none();
    }
    let r = verify_breaker(&goal.inner, &strat, &opts).map_err(to_py)?;
    let terminal = r
        .terminal
        .keys()
        .map(|p| p.iter().map(|(c, l)| (cell_tuple(c), *l)).collect())
        .collect();
    Ok(((&r.verdict).into(), r.positions, terminal))
}

/// Window search; returns the verdict and the number of turns of the forced
/// win, if one was found.
#[pyfunction]
#[pyo3(signature = (goal, a, b, c = None, window = None, max_turns = None))]
fn solve(
    py: Python<'_>,
    goal: PyRef<'_, PyPolyform>,
    a: u32,
    b: u32,
    c: Option<u32>,
    window: Option<&str>,
    max_turns: Option<u32>,
) -> PyResult<(PyVerdict, Option<u32>)> {
    let mut cfg = SolveConfig::new(goal.inner.clone(), game(a, b, c)?);
    if let Some(w) = window {
        cfg.window = Window::parse(goal.inner.board(), w).map_err(to_py)?;
    }
    if let Some(t) = max_turns {
        cfg.max_turns = t;
    }
    let r = py.detach(|| run_solver(&cfg)).map_err(to_py)?;
    Ok(((&r.verdict).into(), r.turns))
}

#[pyfunction]
fn surround_loser(a: u32, b: u32, goal: PyRef<'_, PyPolyform>) -> PyVerdict {
    (&bounds::surround_loser(a, b, &goal.inner)).into()
}

#[pyfunction]
fn twostep_winner(a: u32, b: u32, goal: PyRef<'_, PyPolyform>) -> PyVerdict {
    (&bounds::twostep_winner(a, b, &goal.inner)).into()
}

/// Largest total turn count of a multi-stage strategy.
#[pyfunction]
fn stage_bound(b: Vec<u64>, l: Vec<u32>) -> PyResult<u128> {
    Ok(build_diagram(&b, &l).map_err(to_py)?.total_turn_bound())
}

/// Checks a catalog file; returns whether every claim reproduced and the
/// text report.
#[pyfunction]
#[pyo3(signature = (path, cross_check = false))]
fn catalog_check(py: Python<'_>, path: &str, cross_check: bool) -> PyResult<(bool, String)> {
    let catalog = Catalog::load(Path::new(path)).map_err(to_py)?;
    let opts = RunOptions {
        cross_check,
        ..RunOptions::default()
    };
    let report = py.detach(|| run_all(&catalog, &opts)).map_err(to_py)?;
    Ok((report.ok(), report.to_string()))
}

#[pymodule]
fn pypolygame(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolyform>()?;
    m.add_class::<PyVerdict>()?;
    m.add_function(wrap_pyfunction!(verify_proof, m)?)?;
    m.add_function(wrap_pyfunction!(verify_paving, m)?)?;
    m.add_function(wrap_pyfunction!(verify_priority, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(surround_loser, m)?)?;
    m.add_function(wrap_pyfunction!(twostep_winner, m)?)?;
    m.add_function(wrap_pyfunction!(stage_bound, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_check, m)?)?;
    Ok(())
}
