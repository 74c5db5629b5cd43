use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use zeckgodel::logic::{self, TheoryConfig};
use zeckgodel::seqcode::{self, SeqCode};
use zeckgodel::syntax::text::{parse_formula_text, parse_syntax_text, parse_term_text};
use zeckgodel::syntax::{self, Alphabet};
use zeckgodel::zeckendorf::ZeckSupport;
use zeckgodel::{numeric, oracle, primecode, substitution, zeckendorf, Error};

create_exception!(pyzeckgodel, ZeckGodelError, PyValueError);

fn err(e: Error) -> PyErr {
    ZeckGodelError::new_err(format!("{}: {e}", e.code()))
}

fn alphabet(a: Option<&PyAlphabet>) -> Alphabet {
    a.map(|a| a.inner.clone()).unwrap_or_default()
}

fn theory(t: Option<&PyTheory>) -> TheoryConfig {
    t.map(|t| t.inner.clone()).unwrap_or_default()
}

/// Sequence code in support form; the number is materialized on demand.
#[pyclass(name = "SeqCode", module = "pyzeckgodel", frozen, skip_from_py_object, eq, hash)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PySeqCode {
    inner: SeqCode,
}

#[pymethods]
impl PySeqCode {
    #[staticmethod]
    fn from_number(n: BigUint) -> Self {
        Self { inner: SeqCode::from_number(n) }
    }

    #[staticmethod]
    fn from_support(indices: Vec<BigUint>) -> PyResult<Self> {
        Ok(Self { inner: SeqCode::from_support(ZeckSupport::new(indices).map_err(err)?) })
    }

    #[getter]
    fn support(&self) -> Vec<BigUint> {
        self.inner.support().indices().to_vec()
    }

    #[getter]
    fn max_index(&self) -> Option<BigUint> {
        self.inner.max_index().cloned()
    }

    #[getter]
    fn bits_estimate(&self) -> BigUint {
        self.inner.bits_estimate()
    }

    #[pyo3(signature = (limit = seqcode::DEFAULT_MATERIALIZE_LIMIT))]
    fn number(&self, limit: u64) -> PyResult<BigUint> {
        self.inner.to_number_with_limit(limit).map_err(err)
    }

    fn is_code(&self) -> bool {
        seqcode::is_code(&self.inner)
    }

    fn items(&self) -> PyResult<Vec<BigUint>> {
        seqcode::seq_decode(&self.inner).map_err(err)
    }

    fn symbol_at(&self, i: BigUint) -> BigUint {
        seqcode::symbol_at(&self.inner, &i)
    }

    fn concat(&self, other: &PySeqCode) -> PyResult<PySeqCode> {
        seqcode::concat(&self.inner, &other.inner).map(|inner| Self { inner }).map_err(err)
    }

    fn __len__(&self) -> usize {
        seqcode::len(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("SeqCode({})", self.inner.support())
    }
}

#[pyclass(name = "Alphabet", module = "pyzeckgodel", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAlphabet {
    inner: Alphabet,
}

#[pymethods]
impl PyAlphabet {
    #[new]
    fn new() -> Self {
        Self { inner: Alphabet::default() }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Alphabet::from_json(text).map(|inner| Self { inner }).map_err(err)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }
}

#[pyclass(name = "Theory", module = "pyzeckgodel", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyTheory {
    inner: TheoryConfig,
}

#[pymethods]
impl PyTheory {
    #[new]
    fn new() -> Self {
        Self { inner: TheoryConfig::default() }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        TheoryConfig::from_json(text).map(|inner| Self { inner }).map_err(err)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn is_axiom(&self, formula: &str) -> PyResult<bool> {
        Ok(logic::is_axiom(&parse_formula_text(formula).map_err(err)?, &self.inner))
    }
}

#[pyfunction]
fn fib(e: u64) -> PyResult<BigUint> {
    numeric::fib(e).map_err(err)
}

#[pyfunction]
fn cantor_pair(x: BigUint, y: BigUint) -> BigUint {
    numeric::cantor_pair(&x, &y)
}

#[pyfunction]
fn cantor_unpair(p: BigUint) -> (BigUint, BigUint) {
    numeric::cantor_unpair(&p)
}

#[pyfunction]
fn z_encode(indices: Vec<BigUint>) -> PyResult<BigUint> {
    zeckendorf::z_encode(&ZeckSupport::new(indices).map_err(err)?).map_err(err)
}

#[pyfunction]
fn z_decode(n: BigUint) -> Vec<BigUint> {
    zeckendorf::z_decode(&n).into_indices()
}

#[pyfunction]
fn seq_encode(items: Vec<BigUint>) -> PySeqCode {
    PySeqCode { inner: seqcode::seq_encode(&items) }
}

#[pyfunction]
#[pyo3(signature = (text, alphabet = None))]
fn encode(text: &str, alphabet: Option<&PyAlphabet>) -> PyResult<PySeqCode> {
    let x = parse_syntax_text(text).map_err(err)?;
    Ok(PySeqCode { inner: syntax::encode_syntax(&x, &self::alphabet(alphabet)) })
}

/// Prefix text of the term or formula coded by `code`.
#[pyfunction]
#[pyo3(signature = (code, alphabet = None))]
fn decode(code: &PySeqCode, alphabet: Option<&PyAlphabet>) -> PyResult<String> {
    syntax::decode_syntax(&code.inner, &self::alphabet(alphabet)).map(|x| x.to_string()).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (code, alphabet = None))]
fn is_wff_code(code: &PySeqCode, alphabet: Option<&PyAlphabet>) -> bool {
    syntax::is_wff_code(&code.inner, &self::alphabet(alphabet))
}

#[pyfunction]
#[pyo3(signature = (formula, term, var = 0, alphabet = None))]
fn substitute(formula: &str, term: &str, var: u64, alphabet: Option<&PyAlphabet>) -> PyResult<PySeqCode> {
    let a = self::alphabet(alphabet);
    let f = syntax::encode_formula(&parse_formula_text(formula).map_err(err)?, &a);
    let t = syntax::encode_term(&parse_term_text(term).map_err(err)?, &a);
    let req = substitution::SubRequest::new(f, t).with_var(var);
    substitution::sub_z(&req, &a).map(|inner| PySeqCode { inner }).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (code, alphabet = None))]
fn diag(code: &PySeqCode, alphabet: Option<&PyAlphabet>) -> PyResult<PySeqCode> {
    substitution::diag(&code.inner, &self::alphabet(alphabet)).map(|inner| PySeqCode { inner }).map_err(err)
}

fn fixed_point_dict<'py>(py: Python<'py>, fp: substitution::FixedPoint) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("psi", PySeqCode { inner: fp.psi })?;
    d.set_item("m", PySeqCode { inner: fp.m })?;
    d.set_item("theta", fp.theta.to_string())?;
    d.set_item("occurrences", fp.occurrences)?;
    d.set_item("numeral_length", fp.numeral_len)?;
    Ok(d)
}

/// `{"psi", "m", "theta", ...}` with `psi == diag(m)`.
#[pyfunction]
#[pyo3(signature = (formula, alphabet = None))]
fn fixed_point<'py>(py: Python<'py>, formula: &str, alphabet: Option<&PyAlphabet>) -> PyResult<Bound<'py, PyDict>> {
    let a = self::alphabet(alphabet);
    let f = syntax::encode_formula(&parse_formula_text(formula).map_err(err)?, &a);
    fixed_point_dict(py, substitution::fixed_point(&f, &a).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (theory = None, alphabet = None))]
fn godel_sentence<'py>(
    py: Python<'py>,
    theory: Option<&PyTheory>,
    alphabet: Option<&PyAlphabet>,
) -> PyResult<Bound<'py, PyDict>> {
    let fp = logic::godel_sentence(&self::theory(theory), &self::alphabet(alphabet)).map_err(err)?;
    fixed_point_dict(py, fp)
}

#[pyfunction]
#[pyo3(signature = (formulas, alphabet = None))]
fn encode_proof(formulas: Vec<String>, alphabet: Option<&PyAlphabet>) -> PyResult<PySeqCode> {
    let fs = formulas.iter().map(|s| parse_formula_text(s)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    syntax::encode_proof(&fs, &self::alphabet(alphabet)).map(|inner| PySeqCode { inner }).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (code, theory = None, alphabet = None))]
fn check_proof(code: &PySeqCode, theory: Option<&PyTheory>, alphabet: Option<&PyAlphabet>) -> bool {
    logic::check_proof(&code.inner, &self::theory(theory), &self::alphabet(alphabet))
}

/// Bounded proof search; the proof's formulas in prefix text, or `None`.
#[pyfunction]
#[pyo3(signature = (formula, bound, theory = None, alphabet = None))]
fn prove(
    formula: &str,
    bound: usize,
    theory: Option<&PyTheory>,
    alphabet: Option<&PyAlphabet>,
) -> PyResult<Option<Vec<String>>> {
    let f = parse_formula_text(formula).map_err(err)?;
    let p = logic::prov_bounded_formula(&f, bound, &self::theory(theory), &self::alphabet(alphabet));
    Ok(p.map(|p| p.steps.iter().map(|s| s.formula.to_string()).collect()))
}

#[pyfunction]
fn oracle_check(n: u64, m: u64, k: u64) -> PyResult<bool> {
    Ok(oracle::oracle_check(&oracle::OracleTriple::new(n, m, k).map_err(err)?))
}

#[pyfunction]
fn oracle_solve(n: u64, m: u64) -> PyResult<Option<u64>> {
    oracle::oracle_solve(n, m).map_err(err)
}

#[pyfunction]
fn mp_witness(n: u64) -> PyResult<(u64, u64, u64)> {
    oracle::mp_witness(n).map(|t| (t.n, t.m, t.k)).map_err(err)
}

#[pyfunction]
fn code_p(items: Vec<BigUint>) -> PyResult<BigUint> {
    primecode::code_p(&items).map_err(err)
}

#[pyfunction]
fn decode_p(n: BigUint) -> PyResult<Vec<BigUint>> {
    primecode::decode_p(&n).map_err(err)
}

/// The size report as a dict.
#[pyfunction]
#[pyo3(signature = (items, alphabet = None))]
fn compare_sizes<'py>(
    py: Python<'py>,
    items: Vec<BigUint>,
    alphabet: Option<&PyAlphabet>,
) -> PyResult<Bound<'py, PyDict>> {
    let r = primecode::compare_sizes(&items, &self::alphabet(alphabet)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("sequence_length", r.sequence_length)?;
    d.set_item("zeck_bits", r.zeck_bits)?;
    d.set_item("prime_bits", r.prime_bits)?;
    d.set_item("zeck_max_index", r.zeck_max_index)?;
    d.set_item("encode_zeck_ns", r.encode_zeck_ns)?;
    d.set_item("encode_prime_ns", r.encode_prime_ns)?;
    d.set_item("substitute_zeck_ns", r.substitute_zeck_ns)?;
    d.set_item("substitute_prime_ns", r.substitute_prime_ns)?;
    Ok(d)
}

#[pymodule]
fn pyzeckgodel(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ZeckGodelError", m.py().get_type::<ZeckGodelError>())?;
    m.add_class::<PySeqCode>()?;
    m.add_class::<PyAlphabet>()?;
    m.add_class::<PyTheory>()?;
    m.add_function(wrap_pyfunction!(fib, m)?)?;
    m.add_function(wrap_pyfunction!(cantor_pair, m)?)?;
    m.add_function(wrap_pyfunction!(cantor_unpair, m)?)?;
    m.add_function(wrap_pyfunction!(z_encode, m)?)?;
    m.add_function(wrap_pyfunction!(z_decode, m)?)?;
    m.add_function(wrap_pyfunction!(seq_encode, m)?)?;
    m.add_function(wrap_pyfunction!(encode, m)?)?;
    m.add_function(wrap_pyfunction!(decode, m)?)?;
    m.add_function(wrap_pyfunction!(is_wff_code, m)?)?;
    m.add_function(wrap_pyfunction!(substitute, m)?)?;
    m.add_function(wrap_pyfunction!(diag, m)?)?;
    m.add_function(wrap_pyfunction!(fixed_point, m)?)?;
    m.add_function(wrap_pyfunction!(godel_sentence, m)?)?;
    m.add_function(wrap_pyfunction!(encode_proof, m)?)?;
    m.add_function(wrap_pyfunction!(check_proof, m)?)?;
    m.add_function(wrap_pyfunction!(prove, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_check, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_solve, m)?)?;
    m.add_function(wrap_pyfunction!(mp_witness, m)?)?;
    m.add_function(wrap_pyfunction!(code_p, m)?)?;
    m.add_function(wrap_pyfunction!(decode_p, m)?)?;
    m.add_function(wrap_pyfunction!(compare_sizes, m)?)?;
    Ok(())
}
