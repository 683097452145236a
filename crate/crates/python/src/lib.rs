//! Python module `wreath`: groups, representation rings of `S_n(G)` and the
//! generation checks. Ring elements cross the boundary as `{label: coeff}`
//! dicts; a bare label string stands for one irreducible and `"1"` for the unit.

use std::collections::BTreeMap;
use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde::Serialize;

use wreath_core::cyclotomic::Cyclotomic;
use wreath_core::error::Error;
use wreath_core::genring::check_generation;
use wreath_core::group::{builtin, GroupContext, GroupDescription};
use wreath_core::partition::{parse_multipartition, MultiPartition, Partition};
use wreath_core::stability::{check_stability, RingFamily};
use wreath_core::symfunc::{graded_generation_check, EhFlavor};
use wreath_core::wreath::{generator_family, EpsChoice, Flavor, RepRing, RepRingElement, Theorem};

create_exception!(wreath, InapplicableTheoremError, PyValueError);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::InapplicableTheorem { .. } => InapplicableTheoremError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_python<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn partition(parts: Vec<usize>) -> PyResult<Partition> {
    Partition::new(parts).map_err(py_err)
}

/// A finite group with its character table.
#[pyclass(frozen, name = "Group", module = "wreath")]
struct PyGroup {
    inner: Arc<GroupContext>,
}

#[pymethods]
impl PyGroup {
    /// Built-in group by name: trivial, z<m>, klein, s3, or a product such as z2xz3.
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        Ok(PyGroup {
            inner: Arc::new(builtin(name).map_err(py_err)?),
        })
    }

    /// Group from a JSON description (Cayley table and character table).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let ctx = GroupDescription::from_json(text)
            .and_then(|d| d.build())
            .map_err(py_err)?;
        Ok(PyGroup { inner: Arc::new(ctx) })
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn irreducibles(&self) -> Vec<String> {
        self.inner.irreducible_names().to_vec()
    }

    #[getter]
    fn is_abelian(&self) -> bool {
        self.inner.group().is_abelian()
    }

    fn to_json(&self) -> String {
        self.inner.to_description().to_json()
    }

    fn __repr__(&self) -> String {
        format!("Group({:?}, order={})", self.inner.name(), self.inner.order())
    }
}

/// `R(S_n(G))` with its character table.
#[pyclass(frozen, name = "RepRing", module = "wreath")]
struct PyRepRing {
    inner: Arc<RepRing>,
}

impl PyRepRing {
    fn label(&self, s: &str) -> PyResult<MultiPartition> {
        let ctx = self.inner.context();
        let label = if s.trim() == "1" {
            MultiPartition::trivial(ctx.num_irreducibles(), self.inner.n())
        } else {
            parse_multipartition(s, ctx.num_irreducibles()).map_err(py_err)?
        };
        if self.inner.irrep_index(&label).is_none() {
            return Err(py_err(Error::UnknownLabel(s.to_string())));
        }
        Ok(label)
    }

    fn element(&self, x: &Bound<'_, PyAny>) -> PyResult<RepRingElement> {
        if let Ok(s) = x.extract::<String>() {
            return Ok(RepRingElement::irreducible(self.label(&s)?));
        }
        let terms: BTreeMap<String, i64> = x.extract()?;
        let mut out = RepRingElement::zero(self.inner.n());
        for (s, c) in terms {
            out.add_term(self.label(&s)?, c);
        }
        Ok(out)
    }
}

fn terms(x: &RepRingElement) -> BTreeMap<String, i64> {
    x.terms().iter().map(|(l, &c)| (l.to_string(), c)).collect()
}

#[pymethods]
impl PyRepRing {
    #[new]
    fn new(py: Python<'_>, group: &PyGroup, n: usize) -> PyResult<Self> {
        let ctx = group.inner.clone();
        let ring = py.detach(|| RepRing::new(ctx, n)).map_err(py_err)?;
        Ok(PyRepRing { inner: Arc::new(ring) })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// `|G|^n n!`.
    #[getter]
    fn order(&self) -> u128 {
        self.inner.order()
    }

    #[getter]
    fn group(&self) -> PyGroup {
        PyGroup {
            inner: self.inner.context().clone(),
        }
    }

    fn irreducibles(&self) -> Vec<String> {
        self.inner.irreps().iter().map(ToString::to_string).collect()
    }

    fn classes(&self) -> Vec<String> {
        self.inner.classes().iter().map(ToString::to_string).collect()
    }

    fn class_sizes(&self) -> Vec<u128> {
        self.inner.class_sizes().to_vec()
    }

    fn dimension(&self, label: &str) -> PyResult<u128> {
        Ok(self.inner.dimension(&self.label(label)?))
    }

    /// Character values on the classes, as strings in `Q(ζ)`.
    fn character(&self, x: &Bound<'_, PyAny>) -> PyResult<Vec<String>> {
        let x = self.element(x)?;
        let order = self.inner.context().field_order();
        let values = self.inner.character(&x).map_err(py_err)?;
        Ok(values
            .iter()
            .map(|v| Cyclotomic::from_int_coefficients(order, v).to_string())
            .collect())
    }

    fn tensor(&self, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<BTreeMap<String, i64>> {
        let (a, b) = (self.element(a)?, self.element(b)?);
        Ok(terms(&self.inner.tensor(&a, &b).map_err(py_err)?))
    }

    fn exterior_power(&self, x: &Bound<'_, PyAny>, k: usize) -> PyResult<BTreeMap<String, i64>> {
        let x = self.element(x)?;
        Ok(terms(&self.inner.exterior_power(&x, k).map_err(py_err)?))
    }

    /// Raises `ValueError` if the table fails orthogonality or the degree sum.
    fn verify_table(&self) -> PyResult<()> {
        self.inner.verify_table().map_err(py_err)
    }

    /// Closure check of a named generator family.
    #[pyo3(signature = (theorem, eps = None, flavor = "hook"))]
    fn verify<'py>(
        &self,
        py: Python<'py>,
        theorem: &str,
        eps: Option<&str>,
        flavor: &str,
    ) -> PyResult<Bound<'py, PyAny>> {
        let theorem: Theorem = theorem.parse().map_err(py_err)?;
        let flavor: Flavor = flavor.parse().map_err(py_err)?;
        let ctx = self.inner.context();
        let eps = match eps {
            Some(s) => EpsChoice::parse(s, ctx.irreducible_names()).map_err(py_err)?,
            None => EpsChoice::default_for(ctx.num_irreducibles()),
        };
        let ring = &self.inner;
        let report = py
            .detach(|| {
                let gens = generator_family(ring, theorem, flavor, &eps)?;
                check_generation(ring, theorem.id(), &gens)
            })
            .map_err(py_err)?;
        to_python(py, &report)
    }

    /// Closure check of an explicit list of elements.
    fn check_generators<'py>(&self, py: Python<'py>, gens: Vec<Bound<'py, PyAny>>) -> PyResult<Bound<'py, PyAny>> {
        let gens = gens.iter().map(|g| self.element(g)).collect::<PyResult<Vec<_>>>()?;
        let ring = &self.inner;
        let report = py.detach(|| check_generation(ring, "custom", &gens)).map_err(py_err)?;
        to_python(py, &report)
    }

    fn __repr__(&self) -> String {
        format!(
            "RepRing({:?}, n={}, rank={})",
            self.inner.context().name(),
            self.inner.n(),
            self.inner.rank()
        )
    }
}

#[pyfunction]
fn lr_coefficient(lam: Vec<usize>, mu: Vec<usize>, nu: Vec<usize>) -> PyResult<u64> {
    Ok(wreath_core::lr::lr_coefficient(
        &partition(lam)?,
        &partition(mu)?,
        &partition(nu)?,
    ))
}

/// `χ^λ` of `S_n` at cycle type `ρ`.
#[pyfunction]
fn sn_character(lam: Vec<usize>, rho: Vec<usize>) -> PyResult<i64> {
    let (lam, rho) = (partition(lam)?, partition(rho)?);
    if lam.size() != rho.size() {
        return Err(py_err(Error::SizeMismatch {
            expected: lam.size(),
            got: rho.size(),
        }));
    }
    Ok(wreath_core::symmetric::sn_character(&lam, &rho))
}

/// Unimodularity of the e/h transition matrices; `flavors` is e.g. `"e,h,e"`.
#[pyfunction]
fn graded_check<'py>(py: Python<'py>, group: &PyGroup, flavors: &str, degree: usize) -> PyResult<Bound<'py, PyAny>> {
    let flavors = flavors
        .split(',')
        .map(|f| f.trim().parse::<EhFlavor>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(py_err)?;
    let m = group.inner.num_irreducibles();
    if flavors.len() != m {
        return Err(PyValueError::new_err(format!(
            "expected {m} flavors, got {}",
            flavors.len()
        )));
    }
    let report = graded_generation_check(m, &flavors, degree).map_err(py_err)?;
    let out = to_python(py, &report)?;
    out.cast::<PyDict>()?.set_item("passes", report.passes())?;
    Ok(out)
}

/// Onsets of the stable-range relations for stable labels `lam`, `mu`.
#[pyfunction]
fn stability<'py>(py: Python<'py>, group: &PyGroup, lam: &str, mu: &str) -> PyResult<Bound<'py, PyAny>> {
    let m = group.inner.num_irreducibles();
    let lam = parse_multipartition(lam, m).map_err(py_err)?;
    let mu = parse_multipartition(mu, m).map_err(py_err)?;
    let rings = RingFamily::new(group.inner.clone());
    let report = py.detach(|| check_stability(&rings, &lam, &mu)).map_err(py_err)?;
    let out = to_python(py, &report)?;
    out.cast::<PyDict>()?.set_item("passes", report.passes())?;
    Ok(out)
}

#[pymodule]
fn wreath(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyRepRing>()?;
    m.add_function(wrap_pyfunction!(lr_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(sn_character, m)?)?;
    m.add_function(wrap_pyfunction!(graded_check, m)?)?;
    m.add_function(wrap_pyfunction!(stability, m)?)?;
    m.add(
        "InapplicableTheoremError",
        m.py().get_type::<InapplicableTheoremError>(),
    )?;
    Ok(())
}
