//! Largest-particle distribution F₂(s) of the stationary Airy process, as a
//! Fredholm determinant and through the Hastings–McLeod solution of
//! Painlevé II.

use nalgebra::DMatrix;
use ode_solvers::dop_shared::OutputType;
use ode_solvers::{Dop853, System, Vector5};
use serde::{Deserialize, Serialize};

use super::CorrelationError;
use crate::airy::RealAiryTable;
use crate::kernels::airy_kernel;
use crate::quadrature::{adaptive, GaussLegendre};

/// Right end of the Painlevé II integration, where q is replaced by Ai.
pub const PAINLEVE_START: f64 = 8.0;
const PAINLEVE_RTOL: f64 = 1e-13;
// q(8) ≈ 5e-8; local errors above this excite the growing branch.
const PAINLEVE_ATOL: f64 = 1e-30;
/// |q| beyond this is treated as the unstable branch taking over.
const BLOW_UP: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GapMethod {
    Fredholm,
    Painleve,
}

/// Gap probability query: F₂(s) = P(largest particle < s).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GapQuery {
    pub s: f64,
    pub method: GapMethod,
    /// Gauss–Legendre nodes of the Nyström discretization.
    pub nodes: usize,
    /// Scale L of the map x = s + L(1+u)/(1-u).
    pub map_scale: f64,
}

impl GapQuery {
    pub fn new(s: f64, method: GapMethod) -> Self {
        Self { s, method, nodes: 64, map_scale: 4.0 }
    }
}

/// F₂(s) by the requested method.
pub fn tracy_widom(query: &GapQuery) -> Result<f64, CorrelationError> {
    if !query.s.is_finite() {
        return Err(CorrelationError::InvalidQuery(format!("s = {}", query.s)));
    }
    match query.method {
        GapMethod::Fredholm => fredholm(query.s, query.nodes, query.map_scale),
        GapMethod::Painleve => Ok(painleve_curve(&[query.s])?[0]),
    }
}

/// det(I - K_Ai) on L²(s, ∞), Nyström on the mapped Gauss–Legendre rule.
pub fn fredholm(s: f64, nodes: usize, map_scale: f64) -> Result<f64, CorrelationError> {
    if nodes < 8 {
        return Err(CorrelationError::InvalidQuery(format!("Nyström needs at least 8 nodes, got {nodes}")));
    }
    if !(map_scale > 0.0) {
        return Err(CorrelationError::InvalidQuery(format!("map scale must be positive, got {map_scale}")));
    }
    let rule = GaussLegendre::cached(nodes);
    let (xs, ws): (Vec<f64>, Vec<f64>) =
        rule.mapped(-1.0, 1.0).map(|(u, w)| (s + map_scale * (1.0 + u) / (1.0 - u), w * 2.0 * map_scale / ((1.0 - u) * (1.0 - u)))).unzip();
    let roots: Vec<f64> = ws.iter().map(|w| w.sqrt()).collect();
    let m = DMatrix::from_fn(nodes, nodes, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        delta - roots[i] * airy_kernel(xs[i], xs[j]) * roots[j]
    });
    Ok(m.determinant())
}

struct PainleveII;

// State (q, q', U, U', x) integrated in τ = PAINLEVE_START - x. Carrying x
// in the state keeps the system autonomous: the Dop853 in ode_solvers 0.6
// mishandles explicit time dependence and its dense output assumes x > 0.
impl System<f64, Vector5<f64>> for PainleveII {
    // q'' = xq + 2q³, U'' = q², F₂ = e^{-U}
    fn system(&self, _tau: f64, y: &Vector5<f64>, dy: &mut Vector5<f64>) {
        let (q, x) = (y[0], y[4]);
        dy[0] = -y[1];
        dy[1] = -(x * q + 2.0 * q * q * q);
        dy[2] = -y[3];
        dy[3] = -q * q;
        dy[4] = -1.0;
    }

    fn solout(&mut self, _tau: f64, y: &Vector5<f64>, _dy: &Vector5<f64>) -> bool {
        !(y[0].abs() < BLOW_UP)
    }
}

fn airy_mass(table: &RealAiryTable, x: f64) -> f64 {
    // ∫_x^∞ (y - x) Ai(y)² dy
    adaptive(x, x + 30.0, 8, 0.0, 1e-14, |y| (y - x) * table.ai(y).powi(2))
}

/// F₂ at each of `ss`, one backward Painlevé II integration per point.
pub fn painleve_curve(ss: &[f64]) -> Result<Vec<f64>, CorrelationError> {
    let table = RealAiryTable::global();
    let x0 = PAINLEVE_START;
    let (ai, aip) = table.eval(x0);
    // U'(x0) = -∫_{x0}^∞ Ai² = -(Ai'² - x0 Ai²)
    let start = Vector5::new(ai, aip, airy_mass(table, x0), -(aip * aip - x0 * ai * ai), x0);
    ss.iter()
        .map(|&s| {
            if !s.is_finite() {
                return Err(CorrelationError::InvalidQuery(format!("s = {s}")));
            }
            if s >= x0 {
                return Ok((-airy_mass(table, s)).exp());
            }
            let span = x0 - s;
            let mut solver = Dop853::from_param(
                PainleveII,
                0.0,
                span,
                span,
                start,
                PAINLEVE_RTOL,
                PAINLEVE_ATOL,
                0.9,
                0.0,
                0.333,
                6.0,
                span,
                0.0,
                100_000,
                u32::MAX,
                OutputType::Sparse,
            );
            solver.integrate().map_err(|e| CorrelationError::Ode(e.to_string()))?;
            let Some(y) = solver.y_out().last() else {
                return Err(CorrelationError::Ode("solver produced no output".into()));
            };
            if (y[4] - s).abs() > 1e-9 || !(y[0].abs() < BLOW_UP) || !y[2].is_finite() {
                return Err(CorrelationError::OdeBlowUp { x: y[4] });
            }
            Ok((-y[2]).exp())
        })
        .collect()
}
