//! Python bindings: a `Program` class over the core library.
//!
//! Sets of atoms cross the boundary as lists of names sorted by name;
//! lists of sets are sorted by size and then lexicographically.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use elemloop::classify::{classify, shift};
use elemloop::elementary::{elementary_loops_with, is_elementary_loop, Method};
use elemloop::graph::loops;
use elemloop::report::{analyze, name_sets, names, AnalyzeOptions, Classification};
use elemloop::semantics::{is_model, is_stable, stable_models};
use elemloop::stability::bounding_loops;
use elemloop::unfounded::{
    elementarily_unfounded_sets, loop_formula_text, stable_via_witness, StabilityCriterion,
};
use elemloop::{parse_str, render_program, AtomSet, Guard};

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Program", module = "elemloop_py", frozen)]
struct PyProgram {
    inner: elemloop::Program,
    guard: Guard,
}

impl PyProgram {
    fn set(&self, atoms: Vec<String>) -> PyResult<AtomSet> {
        self.inner.set_of(&atoms).map_err(value_error)
    }

    fn model(&self, atoms: Vec<String>) -> PyResult<AtomSet> {
        let x = self.set(atoms)?;
        if !is_model(&x, &self.inner) {
            return Err(PyValueError::new_err(format!(
                "{} is not a model",
                x.display(self.inner.table())
            )));
        }
        Ok(x)
    }
}

#[pymethods]
impl PyProgram {
    /// Parse program text. `max_atoms` bounds every exhaustive enumeration.
    #[new]
    #[pyo3(signature = (text, max_atoms = 20))]
    fn new(text: &str, max_atoms: usize) -> PyResult<Self> {
        Ok(Self {
            inner: parse_str(text).map_err(value_error)?,
            guard: Guard(max_atoms),
        })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        render_program(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Program({:?})", render_program(&self.inner))
    }

    fn atoms(&self) -> Vec<String> {
        names(&self.inner, &self.inner.atoms())
    }

    fn loops(&self) -> PyResult<Vec<Vec<String>>> {
        Ok(name_sets(
            &self.inner,
            &loops(&self.inner, self.guard).map_err(value_error)?,
        ))
    }

    #[pyo3(signature = (assume_hef = false))]
    fn elementary_loops(&self, assume_hef: bool) -> PyResult<Vec<Vec<String>>> {
        let method = if assume_hef {
            Method::AssumeHef
        } else {
            Method::Auto
        };
        let found = elementary_loops_with(&self.inner, method, self.guard).map_err(value_error)?;
        Ok(name_sets(&self.inner, &found))
    }

    fn is_elementary_loop(&self, atoms: Vec<String>) -> PyResult<bool> {
        is_elementary_loop(&self.inner, &self.set(atoms)?, self.guard).map_err(value_error)
    }

    fn loop_formula(&self, atoms: Vec<String>) -> PyResult<String> {
        Ok(loop_formula_text(&self.inner, &self.set(atoms)?))
    }

    fn stable_models(&self) -> PyResult<Vec<Vec<String>>> {
        Ok(name_sets(
            &self.inner,
            &stable_models(&self.inner, self.guard).map_err(value_error)?,
        ))
    }

    fn is_stable(&self, atoms: Vec<String>) -> PyResult<bool> {
        is_stable(&self.inner, &self.set(atoms)?, self.guard).map_err(value_error)
    }

    /// `(holds, witness)` for one criterion tag: a, b, bprime, c, d, e, eprime.
    #[pyo3(signature = (model, criterion = "a"))]
    fn check_model(
        &self,
        model: Vec<String>,
        criterion: &str,
    ) -> PyResult<(bool, Option<Vec<String>>)> {
        let c: StabilityCriterion = criterion.parse().map_err(value_error)?;
        let v = stable_via_witness(&self.inner, &self.model(model)?, c, self.guard)
            .map_err(value_error)?;
        Ok((v.holds, v.witness.map(|w| names(&self.inner, &w))))
    }

    fn elementarily_unfounded_sets(&self, model: Vec<String>) -> PyResult<Vec<Vec<String>>> {
        let found = elementarily_unfounded_sets(&self.inner, &self.model(model)?, self.guard)
            .map_err(value_error)?;
        Ok(name_sets(&self.inner, &found))
    }

    fn bounding_loops(&self, model: Vec<String>) -> PyResult<Vec<Vec<String>>> {
        Ok(name_sets(
            &self.inner,
            &bounding_loops(&self.inner, &self.model(model)?),
        ))
    }

    fn shift(&self) -> Self {
        Self {
            inner: shift(&self.inner),
            guard: self.guard,
        }
    }

    /// Class memberships as a dict: tight, e_tight, hcf, hef (None past the guard).
    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
        let c = Classification::new(&self.inner, &classify(&self.inner, self.guard));
        let d = pyo3::types::PyDict::new(py);
        d.set_item("tight", c.tight)?;
        d.set_item("e_tight", c.e_tight)?;
        d.set_item("hcf", c.hcf)?;
        d.set_item("hef", c.hef)?;
        Ok(d)
    }

    /// The full analysis report as JSON text.
    #[pyo3(signature = (assume_hef = false, baseline = false))]
    fn analyze_json(&self, assume_hef: bool, baseline: bool) -> PyResult<String> {
        let r = analyze(
            &self.inner,
            AnalyzeOptions {
                guard: self.guard,
                assume_hef,
                baseline,
            },
        )
        .map_err(value_error)?;
        serde_json::to_string(&r).map_err(value_error)
    }
}

#[pymodule]
fn elemloop_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyProgram>()?;
    Ok(())
}
