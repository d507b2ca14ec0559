//! JSON interchange forms. Rational numbers and rational functions travel as
//! strings in the text grammar; matrices are row-major nested arrays.

use serde::{Deserialize, Serialize};

use crate::algebra::{parse_rat, Matrix, RatFunc, RatMatrix};
use crate::apset::ApSet;
use crate::error::{Error, Result};
use crate::orbit::{OrbitState, RegularFunction, Subvariety};
use crate::recurrence::{Equation, LinSystem};
use crate::zeros::{Decomposition, Status, Witness};

/// `{"order": n, "coeffs": ["h0", "h1", ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationJson {
    pub order: usize,
    pub coeffs: Vec<String>,
}

impl EquationJson {
    pub fn to_equation(&self) -> Result<Equation> {
        if self.coeffs.len() != self.order {
            return Err(Error::DimensionMismatch {
                expected: self.order,
                found: self.coeffs.len(),
            });
        }
        Equation::parse(&self.coeffs)
    }
}

impl From<&Equation> for EquationJson {
    fn from(eq: &Equation) -> Self {
        Self {
            order: eq.order(),
            coeffs: eq.coeffs().iter().map(RatFunc::to_string).collect(),
        }
    }
}

/// `{"n": n, "entries": [["..", ..], ..]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub n: usize,
    pub entries: Vec<Vec<String>>,
}

impl SystemJson {
    pub fn to_system(&self) -> Result<LinSystem> {
        if self.entries.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: self.entries.len(),
            });
        }
        LinSystem::parse(&self.entries)
    }
}

impl From<&LinSystem> for SystemJson {
    fn from(sys: &LinSystem) -> Self {
        Self {
            n: sys.dim(),
            entries: sys
                .matrix()
                .to_rows()
                .iter()
                .map(|r| r.iter().map(RatFunc::to_string).collect())
                .collect(),
        }
    }
}

pub fn rat_matrix_to_strings(m: &RatMatrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect()
}

pub fn rat_matrix_from_strings<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<RatMatrix> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|x| parse_rat(x.as_ref())).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(parsed)
}

/// `{"b": b, "B": [["..", ..], ..]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitStateJson {
    pub b: i64,
    #[serde(rename = "B")]
    pub mat: Vec<Vec<String>>,
}

impl OrbitStateJson {
    pub fn to_state(&self) -> Result<OrbitState> {
        OrbitState::new(self.b, rat_matrix_from_strings(&self.mat)?)
    }
}

impl From<&OrbitState> for OrbitStateJson {
    fn from(x: &OrbitState) -> Self {
        Self {
            b: x.b(),
            mat: rat_matrix_to_strings(x.matrix()),
        }
    }
}

/// `{"poly": "...", "detPower": m}`; the function is `poly / det(Z)^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularFunctionJson {
    pub poly: String,
    #[serde(rename = "detPower", default)]
    pub det_power: u32,
}

impl RegularFunctionJson {
    pub fn to_function(&self, n: usize) -> Result<RegularFunction> {
        let poly = RegularFunction::parse(&self.poly, n)?;
        Ok(RegularFunction::mul(&poly, &RegularFunction::inverse_det_power(n, self.det_power))
            .expect("same dimension"))
    }
}

impl From<&RegularFunction> for RegularFunctionJson {
    fn from(f: &RegularFunction) -> Self {
        Self {
            poly: f.numerator_text(),
            det_power: f.det_power(),
        }
    }
}

/// A generator given either as grammar text or in the object form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorJson {
    Text(String),
    Object(RegularFunctionJson),
}

impl GeneratorJson {
    pub fn to_function(&self, n: usize) -> Result<RegularFunction> {
        match self {
            GeneratorJson::Text(s) => RegularFunction::parse(s, n),
            GeneratorJson::Object(o) => o.to_function(n),
        }
    }
}

/// `{"generators": [..]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubvarietyJson {
    pub generators: Vec<GeneratorJson>,
}

impl SubvarietyJson {
    pub fn to_subvariety(&self, n: usize) -> Result<Subvariety> {
        Subvariety::new(
            self.generators
                .iter()
                .map(|g| g.to_function(n))
                .collect::<Result<_>>()?,
        )
    }
}

impl From<&Subvariety> for SubvarietyJson {
    fn from(y: &Subvariety) -> Self {
        Self {
            generators: y
                .generators()
                .iter()
                .map(|g| GeneratorJson::Object(g.into()))
                .collect(),
        }
    }
}

/// Zero-set analysis report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroReport {
    pub zero_set_window: (u64, u64),
    pub apset: ApSet,
    pub status: Status,
    pub periods_checked: u64,
    pub witnesses: Vec<Witness>,
}

impl ZeroReport {
    pub fn new(d: &Decomposition, witnesses: Vec<Witness>) -> Self {
        Self {
            zero_set_window: d.window,
            apset: d.apset.clone(),
            status: d.status,
            periods_checked: d.periods_checked,
            witnesses,
        }
    }
}
