//! Python bindings. Rationals cross the boundary as `fractions.Fraction`;
//! inputs accept anything whose `str` parses as `p` or `p/q`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyTuple;

use nullcone::exact_geometry::{min_norm_point as engine_min_norm, GramForm};
use nullcone::induction::{induce as engine_induce, Induced, InductionOptions, LeviStratum};
use nullcone::instability::{generic_semistable, torus_optimal, Budget, KempfDatum};
use nullcone::rational::parse_rational;
use nullcone::realization::SamplingOptions;
use nullcone::relative_spec::load_relative;
use nullcone::root_datum::{mu_p as engine_mu_p, simple_name, LatticeKind, ParabolicSpec, ReductiveGroup, RootDatum};
use nullcone::stratification::{enumerate_strata_with_budget, StratumLabel};
use nullcone::weighted_module::WeightedModule;
use nullcone::{Error, Rational, RationalMatrix, RationalVector};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } | Error::SizeLimit { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, x: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((x.to_string(),))
}

fn vector<'py>(py: Python<'py>, v: &RationalVector) -> PyResult<Bound<'py, PyTuple>> {
    let items = v.coords().iter().map(|x| fraction(py, x)).collect::<PyResult<Vec<_>>>()?;
    PyTuple::new(py, items)
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let s = obj.str()?.to_string();
    parse_rational(&s).ok_or_else(|| PyValueError::new_err(format!("not a rational: {s}")))
}

fn rational_vector(obj: &Bound<'_, PyAny>) -> PyResult<RationalVector> {
    obj.try_iter()?
        .map(|x| rational(&x?))
        .collect::<PyResult<Vec<_>>>()
        .map(RationalVector::new)
}

fn levi_spec(datum: &RootDatum, levi: &str) -> PyResult<ParabolicSpec> {
    let idx = datum.resolve_simple_names(levi).map_err(to_py)?;
    datum.parabolic(&idx).map_err(to_py)
}

/// A row of the stratum table.
#[pyclass(frozen, get_all, module = "nullcone")]
pub struct Stratum {
    mu: Py<PyTuple>,
    #[pyo3(name = "lambda_")]
    lam: Py<PyTuple>,
    m: u64,
    q2: Py<PyAny>,
    parabolic: Vec<String>,
    dim_saturation: usize,
    dim_stratum: usize,
    certified: bool,
    text: String,
}

impl Stratum {
    fn new(py: Python<'_>, s: &StratumLabel) -> PyResult<Self> {
        Ok(Self {
            mu: vector(py, &s.mu)?.unbind(),
            lam: vector(py, &s.lambda)?.unbind(),
            m: s.m,
            q2: fraction(py, &s.q2)?.unbind(),
            parabolic: s.parabolic.levi.iter().map(|&i| simple_name(i)).collect(),
            dim_saturation: s.dim_saturation,
            dim_stratum: s.dim_stratum,
            certified: s.certificate.is_some(),
            text: format!("Stratum(mu={}, m={}, q2={}, dim={})", s.mu, s.m, s.q2, s.dim_stratum),
        })
    }
}

#[pymethods]
impl Stratum {
    fn __repr__(&self) -> String {
        self.text.clone()
    }
}

/// Optimal virtual cocharacter of a torus support.
#[pyclass(frozen, get_all, module = "nullcone")]
pub struct Kempf {
    mu: Py<PyTuple>,
    #[pyo3(name = "lambda_")]
    lam: Py<PyTuple>,
    m: u64,
    q2: Py<PyAny>,
    active_set: Vec<usize>,
}

impl Kempf {
    fn new(py: Python<'_>, k: &KempfDatum) -> PyResult<Self> {
        Ok(Self {
            mu: vector(py, &k.mu)?.unbind(),
            lam: vector(py, &k.lambda)?.unbind(),
            m: k.m,
            q2: fraction(py, &k.q2)?.unbind(),
            active_set: k.certificate.active_set.clone(),
        })
    }
}

#[pymethods]
impl Kempf {
    fn __repr__(&self, py: Python<'_>) -> PyResult<String> {
        Ok(format!("Kempf(mu={}, m={})", self.mu.bind(py).repr()?, self.m))
    }
}

/// Outcome of inducing a Levi stratum.
#[pyclass(frozen, get_all, module = "nullcone")]
pub struct Induction {
    status: String,
    eta: Py<PyTuple>,
    blade_nonempty: bool,
    stratum: Option<Py<Stratum>>,
    fallback: Option<Py<PyTuple>>,
    diagnostics: Vec<String>,
}

#[pymethods]
impl Induction {
    fn __repr__(&self, py: Python<'_>) -> PyResult<String> {
        Ok(format!("Induction(status={:?}, eta={})", self.status, self.eta.bind(py).repr()?))
    }
}

/// A split or relative root datum with its Gram form and cocharacter lattice.
#[pyclass(frozen, name = "RootDatum", module = "nullcone")]
pub struct PyRootDatum {
    inner: RootDatum,
}

#[pymethods]
impl PyRootDatum {
    /// `RootDatum("C2", lattice="adjoint", scales=[1])`.
    #[new]
    #[pyo3(signature = (type_tag, lattice = None, scales = None))]
    fn new(type_tag: &str, lattice: Option<&str>, scales: Option<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        let mut d = RootDatum::build(type_tag).map_err(to_py)?;
        if let Some(l) = lattice {
            let kind = match l {
                "sc" => LatticeKind::SimplyConnected,
                "adjoint" => LatticeKind::Adjoint,
                other => return Err(PyValueError::new_err(format!("unknown lattice `{other}`"))),
            };
            d = d.with_lattice(kind).map_err(to_py)?;
        }
        if let Some(s) = scales {
            let s = s.iter().map(rational).collect::<PyResult<Vec<_>>>()?;
            d = d.with_factor_scales(&s).map_err(to_py)?;
        }
        Ok(Self { inner: d })
    }

    /// A built-in relative datum (`su21`, `bc1(m1,m2)`) or a description file.
    #[staticmethod]
    fn relative(spec: &str) -> PyResult<Self> {
        load_relative(spec).map(|inner| Self { inner }).map_err(to_py)
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label().to_string()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn is_relative(&self) -> bool {
        self.inner.is_relative()
    }

    fn simple_roots<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyTuple>>> {
        self.inner.simple_roots().iter().map(|r| vector(py, r)).collect()
    }

    /// Positive roots with their multiplicities.
    fn positive_roots<'py>(&self, py: Python<'py>) -> PyResult<Vec<(Bound<'py, PyTuple>, u32)>> {
        self.inner
            .positive_roots_with_mult()
            .iter()
            .map(|(r, m)| Ok((vector(py, r)?, *m)))
            .collect()
    }

    /// Root expression such as `2a+b` as a character.
    fn root<'py>(&self, py: Python<'py>, expr: &str) -> PyResult<Bound<'py, PyTuple>> {
        vector(py, &self.inner.parse_root_expr(expr).map_err(to_py)?)
    }

    #[pyo3(signature = (budget = nullcone::instability::DEFAULT_BUDGET))]
    fn strata(&self, py: Python<'_>, budget: u64) -> PyResult<Vec<Stratum>> {
        let table = enumerate_strata_with_budget(&self.inner, &mut Budget::new(budget)).map_err(to_py)?;
        table.rows.iter().map(|r| Stratum::new(py, r)).collect()
    }

    /// Candidates that satisfy the optimality conditions but have empty strata.
    fn rejected<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyTuple>>> {
        let table = enumerate_strata_with_budget(&self.inner, &mut Budget::new(nullcone::instability::DEFAULT_BUDGET))
            .map_err(to_py)?;
        table.rejected.iter().map(|r| vector(py, &r.mu)).collect()
    }

    /// `support` holds root expressions (`"2a+b"`) or coordinate sequences.
    fn optimal(&self, py: Python<'_>, support: Vec<Bound<'_, PyAny>>) -> PyResult<Kempf> {
        let chars = support
            .iter()
            .map(|s| match s.extract::<String>() {
                Ok(expr) => self.inner.parse_root_expr(&expr).map_err(to_py),
                Err(_) => rational_vector(s),
            })
            .collect::<PyResult<Vec<_>>>()?;
        Kempf::new(py, &torus_optimal(&chars, &self.inner).map_err(to_py)?)
    }

    /// `μ_P` for the standard parabolic with Levi simple roots `levi` (`"a,b"`).
    fn mu_p<'py>(&self, py: Python<'py>, levi: &str) -> PyResult<Bound<'py, PyTuple>> {
        let p = levi_spec(&self.inner, levi)?;
        vector(py, &engine_mu_p(&p, &self.inner).map_err(to_py)?)
    }

    #[pyo3(signature = (levi, stratum = None, seed = nullcone::realization::DEFAULT_SEED, samples = nullcone::realization::DEFAULT_SAMPLES))]
    fn induce(
        &self,
        py: Python<'_>,
        levi: &str,
        stratum: Option<Bound<'_, PyAny>>,
        seed: u64,
        samples: usize,
    ) -> PyResult<Induction> {
        let p = levi_spec(&self.inner, levi)?;
        let s = match stratum {
            None => LeviStratum::Trivial,
            Some(x) => LeviStratum::Label(rational_vector(&x)?),
        };
        let options = InductionOptions {
            sampling: SamplingOptions {
                seed,
                samples,
                ..SamplingOptions::default()
            },
            ..InductionOptions::default()
        };
        let res = engine_induce(&self.inner, &p, &s, &options).map_err(to_py)?;
        let (status, stratum, fallback) = match &res.induced {
            Induced::Certified(l) => ("certified", Some(Py::new(py, Stratum::new(py, l)?)?), None),
            Induced::Flagged { fallback } => (
                "flagged",
                None,
                match fallback {
                    Some(f) => Some(PyTuple::new(py, [vector(py, &f.mu)?.into_any(), fraction(py, &f.q2)?])?.unbind()),
                    None => None,
                },
            ),
        };
        Ok(Induction {
            status: status.into(),
            eta: vector(py, &res.eta)?.unbind(),
            blade_nonempty: res.blade_nonempty,
            stratum,
            fallback,
            diagnostics: res.diagnostics.clone(),
        })
    }

    fn __repr__(&self) -> String {
        format!("RootDatum({:?})", self.inner.label())
    }
}

/// Min-norm point of `{μ : ⟨χ, μ⟩ ≥ 1}` for the given Gram matrix
/// (identity by default); returns `(point, q2)`.
#[pyfunction]
#[pyo3(signature = (constraints, gram = None))]
fn min_norm_point<'py>(
    py: Python<'py>,
    constraints: Vec<Bound<'py, PyAny>>,
    gram: Option<Vec<Bound<'py, PyAny>>>,
) -> PyResult<(Bound<'py, PyTuple>, Bound<'py, PyAny>)> {
    let cons = constraints.iter().map(rational_vector).collect::<PyResult<Vec<_>>>()?;
    let rank = cons.first().map_or(0, RationalVector::len);
    let form = match gram {
        None => GramForm::identity(rank),
        Some(rows) => {
            let rows = rows.iter().map(rational_vector).collect::<PyResult<Vec<_>>>()?;
            GramForm::new(RationalMatrix::from_rows(&rows)).map_err(to_py)?
        }
    };
    let cert = engine_min_norm(&cons, &form).map_err(to_py)?;
    Ok((vector(py, &cert.point)?, fraction(py, &cert.q2(&form))?))
}

/// Whether a generic vector of the torus module with these weights is
/// semistable (identity Gram form).
#[pyfunction]
fn torus_semistable(weights: Vec<Bound<'_, PyAny>>, rank: usize) -> PyResult<bool> {
    let ws = weights.iter().map(rational_vector).collect::<PyResult<Vec<_>>>()?;
    let module = WeightedModule::from_weights(rank, &ws).map_err(to_py)?;
    generic_semistable(&ReductiveGroup::torus(GramForm::identity(rank)), &module).map_err(to_py)
}

#[pymodule]
#[pyo3(name = "nullcone")]
fn nullcone_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootDatum>()?;
    m.add_class::<Stratum>()?;
    m.add_class::<Kempf>()?;
    m.add_class::<Induction>()?;
    m.add_function(wrap_pyfunction!(min_norm_point, m)?)?;
    m.add_function(wrap_pyfunction!(torus_semistable, m)?)?;
    Ok(())
}
