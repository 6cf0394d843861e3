//! Python bindings. Exact values cross the boundary as strings in the same
//! grammar the CLI accepts; numeric values as floats or (re, im) pairs.

use curvemod::arith::parse::parse_rat;
use curvemod::arith::{act, factor_rational, hessian, solve, HomoForm, Rat};
use curvemod::divisor::{self, Divisor1, P1};
use curvemod::flex::{properness_test, virtual_flexes, Properness};
use curvemod::projective::{svd_decompose, ProjMap, C};
use curvemod::realcurves::{self, DualGraph, Validity};
use curvemod::{cli, cubic, singularity, stabilizer};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(curvemod_py, CurvemodError, PyValueError);

fn err(e: curvemod::Error) -> PyErr {
    CurvemodError::new_err(e.to_string())
}

fn rat(s: &str) -> PyResult<Rat> {
    parse_rat(s).map_err(err)
}

fn p1(s: &str) -> PyResult<P1> {
    P1::parse(s).map_err(err)
}

/// Homogeneous form in x, y, z with rational coefficients.
#[pyclass(name = "Form", module = "curvemod_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyForm {
    inner: HomoForm,
}

#[pymethods]
impl PyForm {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyForm { inner: HomoForm::parse(text).map_err(err)? })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Form('{}')", self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    fn hessian(&self) -> PyResult<String> {
        Ok(hessian(&self.inner).map_err(err)?.to_string())
    }

    /// Irreducible factors over Q with multiplicities.
    fn factor(&self) -> Vec<(PyForm, u32)> {
        factor_rational(&self.inner).components.into_iter().map(|(f, m)| (PyForm { inner: f }, m)).collect()
    }

    /// Image under g, given as three rows of rationals.
    fn act(&self, g: Vec<Vec<String>>) -> PyResult<PyForm> {
        let m = g.iter().map(|row| row.iter().map(|s| rat(s)).collect::<PyResult<Vec<_>>>()).collect::<PyResult<Vec<_>>>()?;
        if m.len() != 3 || m.iter().any(|r| r.len() != 3) {
            return Err(PyValueError::new_err("expected a 3x3 matrix"));
        }
        Ok(PyForm { inner: act(&m, &self.inner).map_err(err)? })
    }

    fn is_smooth(&self) -> PyResult<bool> {
        solve::is_smooth(self.inner.poly()).map_err(err)
    }

    /// Virtual flex points as (phi, [(re, im); 3]), conjugates listed separately.
    #[pyo3(signature = (cap = 4))]
    fn flexes(&self, cap: usize) -> PyResult<Vec<(u32, [(f64, f64); 3])>> {
        let v = virtual_flexes(&self.inner, cap).map_err(err)?;
        Ok(v.points().into_iter().map(|p| (p.phi, p.coords.map(|c| (c.re, c.im)))).collect())
    }

    /// (pMax, LMax, kappa interval or None)
    #[pyo3(signature = (cap = 4))]
    fn properness(&self, cap: usize) -> PyResult<(String, String, Option<(String, String)>)> {
        let (m, p) = properness_test(&self.inner, cap).map_err(err)?;
        let range = match p {
            Properness::Proper(lo, hi) => Some((lo.to_string(), hi.to_string())),
            Properness::Inconclusive => None,
        };
        Ok((m.p_max.to_string(), m.l_max.to_string(), range))
    }

    /// (point, mu, m, b, g, g+) for each singular point.
    #[pyo3(signature = (cap = 4))]
    fn singularities(&self, cap: usize) -> PyResult<Vec<(String, u64, u32, u64, u64, u64)>> {
        let r = singularity::singularity_reports(&self.inner, cap).map_err(err)?;
        Ok(r.into_iter().map(|(p, s)| (p.to_string(), s.mu, s.mult, s.branches, s.genus, s.genus_plus)).collect())
    }

    #[pyo3(signature = (cap = 4))]
    fn geometric_genus(&self, cap: usize) -> PyResult<u64> {
        Ok(singularity::geometric_genus(&self.inner, cap).map_err(err)?.geom_genus)
    }

    fn lie_dim(&self) -> PyResult<usize> {
        Ok(stabilizer::stab_lie(&self.inner).map_err(err)?.lie_dim)
    }

    /// "D(p,q,r)", "ND", or None when the stabilizer is finite.
    fn curve_type(&self) -> PyResult<Option<String>> {
        Ok(stabilizer::stab_lie(&self.inner).map_err(err)?.one_param_type.map(|t| t.to_string()))
    }
}

/// Effective divisor on the projective line, e.g. "2*<0> + <1> + <inf>".
#[pyclass(name = "Divisor", module = "curvemod_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDivisor {
    inner: Divisor1,
}

#[pymethods]
impl PyDivisor {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyDivisor { inner: Divisor1::parse(text).map_err(err)? })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Divisor('{}')", self.inner)
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    /// Shape invariant of a degree-4 divisor.
    fn j(&self) -> PyResult<String> {
        Ok(divisor::classify_deg4(&self.inner).map_err(err)?.j.to_string())
    }

    /// (tag, stabilizer order, J)
    fn classify(&self) -> PyResult<(String, u32, String)> {
        let c = divisor::classify_deg4(&self.inner).map_err(err)?;
        Ok((format!("{:?}", c.tag), c.stabilizer_order, c.j.to_string()))
    }

    fn membership(&self) -> String {
        format!("{:?}", divisor::moduli_membership(&self.inner))
    }

    fn theta(&self) -> PyResult<f64> {
        divisor::theta(&divisor::to_numeric(&self.inner)).map_err(err)
    }
}

#[pyfunction]
fn cross_ratio(x: &str, y: &str, z: &str, w: &str) -> PyResult<String> {
    Ok(divisor::cross_ratio(&p1(x)?, &p1(y)?, &p1(z)?, &p1(w)?).map_err(err)?.to_string())
}

#[pyfunction]
fn orbit(rho: &str) -> PyResult<Vec<String>> {
    Ok(divisor::cross_ratio_orbit(&p1(rho)?).map_err(err)?.iter().map(|v| v.to_string()).collect())
}

/// J of y^2 = x^3 + a x + b.
#[pyfunction]
fn weierstrass_j(a: &str, b: &str) -> PyResult<String> {
    Ok(cubic::WeierstrassForm::new(rat(a)?, rat(b)?).j().map_err(err)?.to_string())
}

/// Singular values of a 2x2 or 3x3 real matrix given row-major.
#[pyfunction]
fn singular_values(entries: Vec<f64>) -> PyResult<Vec<f64>> {
    let n = match entries.len() {
        4 => 2,
        9 => 3,
        _ => return Err(PyValueError::new_err("expected 4 or 9 entries")),
    };
    let m = (0..n).map(|i| (0..n).map(|j| C::new(entries[n * i + j], 0.0)).collect()).collect();
    Ok(svd_decompose(&ProjMap::numeric(m).map_err(err)?).map_err(err)?.a)
}

#[pyfunction]
fn harnack_bound(n: u64) -> PyResult<u64> {
    realcurves::harnack_bound(n).map_err(err)
}

/// (valid, reason) for a nesting graph in JSON.
#[pyfunction]
fn validate_arrangement(graph: &str, degree: u64) -> PyResult<(bool, Option<String>)> {
    let g = DualGraph::from_json(graph).map_err(err)?;
    Ok(match realcurves::validate_arrangement(&g, degree).map_err(err)? {
        Validity::Valid => (true, None),
        Validity::Violation(r) => (false, Some(r)),
    })
}

#[pyfunction]
fn isotopy_equal(a: &str, b: &str) -> PyResult<bool> {
    Ok(realcurves::isotopy_equal(&DualGraph::from_json(a).map_err(err)?, &DualGraph::from_json(b).map_err(err)?))
}

#[pyfunction]
fn period_p_exists(n: u64, p: u64) -> PyResult<bool> {
    stabilizer::period_p_exists(n, p).map_err(err)
}

/// (form, automorphism, smooth, invariant)
#[pyfunction]
fn witness_curve(n: u64, p: u64) -> PyResult<(PyForm, String, bool, bool)> {
    let w = stabilizer::witness_curve(n, p).map_err(err)?;
    let map = w.map_string();
    Ok((PyForm { inner: w.form }, map, w.smooth, w.invariant))
}

/// Run the command line front end; returns (exit code, stdout, stderr).
#[pyfunction]
fn run(args: Vec<String>) -> (i32, String, String) {
    let out = cli::run(std::iter::once("curvemod".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
pub fn curvemod_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CurvemodError", m.py().get_type::<CurvemodError>())?;
    m.add_class::<PyForm>()?;
    m.add_class::<PyDivisor>()?;
    m.add_function(wrap_pyfunction!(cross_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(orbit, m)?)?;
    m.add_function(wrap_pyfunction!(weierstrass_j, m)?)?;
    m.add_function(wrap_pyfunction!(singular_values, m)?)?;
    m.add_function(wrap_pyfunction!(harnack_bound, m)?)?;
    m.add_function(wrap_pyfunction!(validate_arrangement, m)?)?;
    m.add_function(wrap_pyfunction!(isotopy_equal, m)?)?;
    m.add_function(wrap_pyfunction!(period_p_exists, m)?)?;
    m.add_function(wrap_pyfunction!(witness_curve, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
