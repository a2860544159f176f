//! Python module `ssle`: rings, runs, predicates and experiment suites.

use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ssle_core::analysis;
use ssle_core::experiment::{self, ExperimentSpec, Protocol};
use ssle_core::lottery::{self, Bound as Side};
use ssle_core::orientation::{generate_two_hop_coloring, run_orientation};
use ssle_core::snapshot;
use ssle_core::{make_params, random_configuration, Configuration, SchedulerStream};

fn err(e: ssle_core::Error) -> PyErr {
    match e {
        ssle_core::Error::IndexOutOfRange { .. } => PyIndexError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn protocol(name: &str) -> PyResult<Protocol> {
    match name.to_ascii_uppercase().as_str() {
        "PPL" => Ok(Protocol::Ppl),
        "POR" => Ok(Protocol::Por),
        "LOTTERY" => Ok(Protocol::Lottery),
        _ => Err(PyValueError::new_err(format!("unknown protocol {name:?}"))),
    }
}

/// Protocol parameters for a ring of `n` agents.
#[pyclass(name = "Params", frozen)]
#[derive(Clone, Copy)]
struct PyParams(ssle_core::ProtocolParams);

#[pymethods]
impl PyParams {
    #[new]
    #[pyo3(signature = (n, kappa_max=None))]
    fn new(n: usize, kappa_max: Option<u32>) -> PyResult<Self> {
        let p = make_params(n).map_err(err)?;
        let p = match kappa_max {
            Some(k) => p.with_kappa_max(k).map_err(err)?,
            None => p,
        };
        Ok(Self(p))
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn psi(&self) -> u32 {
        self.0.psi()
    }

    #[getter]
    fn kappa_max(&self) -> u32 {
        self.0.kappa_max()
    }

    #[getter]
    fn zeta(&self) -> usize {
        self.0.zeta()
    }

    fn __repr__(&self) -> String {
        format!(
            "Params(n={}, psi={}, kappa_max={})",
            self.0.n(),
            self.0.psi(),
            self.0.kappa_max()
        )
    }
}

/// A ring configuration. Steps mutate it in place.
#[pyclass(name = "Ring")]
#[derive(Clone)]
struct PyRing(Configuration);

#[pymethods]
impl PyRing {
    /// Every field drawn uniformly from its range.
    #[staticmethod]
    #[pyo3(signature = (n, seed=0, kappa_max=None))]
    fn random(n: usize, seed: u64, kappa_max: Option<u32>) -> PyResult<Self> {
        let p = PyParams::new(n, kappa_max)?.0;
        Ok(Self(random_configuration(p, seed)))
    }

    /// A safe configuration with its leader at agent 0.
    #[staticmethod]
    #[pyo3(signature = (n, seed=0))]
    fn safe(n: usize, seed: u64) -> PyResult<Self> {
        let p = make_params(n).map_err(err)?;
        Ok(Self(analysis::construct_s_pl(p, seed)))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        snapshot::from_json(text).map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        snapshot::to_json(&self.0)
    }

    #[getter]
    fn params(&self) -> PyParams {
        PyParams(*self.0.params())
    }

    fn __len__(&self) -> usize {
        self.0.n()
    }

    /// Field map of agent `i`, as in a snapshot.
    fn agent<'py>(&self, py: Python<'py>, i: usize) -> PyResult<Bound<'py, PyAny>> {
        let n = self.0.n();
        if i >= n {
            return Err(err(ssle_core::Error::IndexOutOfRange { index: i, n }));
        }
        let v: serde_json::Value = serde_json::from_str(&self.to_json()).expect("own output");
        let json = py.import_bound("json")?;
        json.call_method1("loads", (v["agents"][i].to_string(),))
    }

    /// Interaction on the arc from agent `i` to its right neighbor.
    fn step(&mut self, i: usize) -> PyResult<()> {
        let n = self.0.n();
        if i >= n {
            return Err(err(ssle_core::Error::IndexOutOfRange { index: i, n }));
        }
        self.0.step_mut(i);
        Ok(())
    }

    /// Runs `steps` random interactions, or until the ring is safe when
    /// `until_safe` is set. Returns the number of steps taken.
    #[pyo3(signature = (steps, seed=0, until_safe=false))]
    fn run(&mut self, steps: u64, seed: u64, until_safe: bool) -> u64 {
        let mut s = SchedulerStream::new(self.0.n(), seed);
        let out = ssle_core::run(self.0.clone(), &mut s, steps, |c| {
            until_safe && analysis::in_s_pl(c)
        });
        self.0 = out.config;
        out.steps
    }

    fn leader_count(&self) -> usize {
        analysis::leader_count(&self.0)
    }

    fn unique_leader(&self) -> Option<usize> {
        analysis::unique_leader(&self.0)
    }

    fn is_perfect(&self) -> bool {
        analysis::is_perfect(&self.0)
    }

    fn in_c_pb(&self) -> bool {
        analysis::in_c_pb(&self.0)
    }

    fn in_c_dl(&self) -> bool {
        analysis::in_c_dl(&self.0)
    }

    fn in_s_pl(&self) -> bool {
        analysis::in_s_pl(&self.0)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Ring(n={}, leaders={})", self.0.n(), self.leader_count())
    }
}

/// Convergence sweep; returns one dict per trial with the CSV columns.
#[pyfunction]
#[pyo3(signature = (n_values, trials=10, seed=0, protocol="PPL", multiplier=1e4, kappa_max=None, workers=0))]
fn sweep<'py>(
    py: Python<'py>,
    n_values: Vec<usize>,
    trials: u64,
    seed: u64,
    protocol: &str,
    multiplier: f64,
    kappa_max: Option<u32>,
    workers: usize,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let mut spec = ExperimentSpec::new(self::protocol(protocol)?, n_values);
    spec.trials_per_n = trials;
    spec.base_seed = seed;
    spec.max_steps_multiplier = multiplier;
    spec.kappa_max_override = kappa_max;
    spec.workers = workers;
    let recs = py
        .allow_threads(|| experiment::run_convergence_sweep(&spec))
        .map_err(err)?;
    recs.into_iter()
        .map(|r| {
            let d = PyDict::new_bound(py);
            d.set_item("protocol", protocol.to_ascii_uppercase())?;
            d.set_item("n", r.n)?;
            d.set_item("psi", r.psi)?;
            d.set_item("kappa_max", r.kappa_max)?;
            d.set_item("seed", r.seed)?;
            d.set_item("steps", r.steps)?;
            d.set_item("converged", r.converged)?;
            d.set_item("final_leader_count", r.final_leader_count)?;
            d.set_item("violations", r.violations)?;
            Ok(d)
        })
        .collect()
}

/// Empirical failure rate of a lottery bound ("upper" or "lower").
#[pyfunction]
#[pyo3(signature = (k, c=1, bound="upper", trials=10_000, seed=0))]
fn lottery_failure_rate(
    py: Python<'_>,
    k: u32,
    c: u32,
    bound: &str,
    trials: u64,
    seed: u64,
) -> PyResult<f64> {
    let which = match bound {
        "upper" => Side::Upper,
        "lower" => Side::Lower,
        _ => return Err(PyValueError::new_err("bound must be 'upper' or 'lower'")),
    };
    py.allow_threads(|| lottery::estimate_bound(k, c, which, trials, seed))
        .map_err(err)
}

/// Orients a freshly colored ring. Returns (steps or None, segment increases).
#[pyfunction]
#[pyo3(signature = (n, seed=0, max_steps=None))]
fn orient(py: Python<'_>, n: usize, seed: u64, max_steps: Option<u64>) -> PyResult<(Option<u64>, u64)> {
    let config = generate_two_hop_coloring(n, seed).map_err(err)?;
    let max = max_steps.unwrap_or_else(|| experiment::cutoff(n, 1e4));
    let out = py.allow_threads(|| run_orientation(config, seed, max, 0));
    Ok((out.steps_to_oriented, out.monotonicity_violations))
}

#[pymodule]
fn ssle(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyParams>()?;
    m.add_class::<PyRing>()?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(lottery_failure_rate, m)?)?;
    m.add_function(wrap_pyfunction!(orient, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn protocol_names() {
        assert_eq!(protocol("ppl").unwrap(), Protocol::Ppl);
        assert_eq!(protocol("POR").unwrap(), Protocol::Por);
        assert_eq!(protocol("Lottery").unwrap(), Protocol::Lottery);
        assert!(protocol("raft").is_err());
    }

    #[test]
    fn params_wrapper() {
        let p = PyParams::new(64, None).unwrap();
        assert_eq!((p.psi(), p.kappa_max(), p.zeta()), (6, 192, 11));
        assert!(PyParams::new(64, Some(100)).is_err());
        assert!(PyParams::new(1, None).is_err());
    }
}
