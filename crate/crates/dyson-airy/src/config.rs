//! Point configurations: finite multisets of real points, optionally tagged
//! with an infinite generator that can be materialized at any truncation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::airy::{shared_zeros, AiryError};
use crate::scalar::Real;

/// Points closer than this are merged into one atom.
pub const MERGE_TOLERANCE: f64 = 1e-12;

/// Upper bound on materialized atoms when chasing a limit over truncations.
const MATERIALIZE_CAP: usize = 300_000;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("atom at {x} has multiplicity 0")]
    ZeroMultiplicity { x: f64 },
    #[error("atom position {x} is not finite")]
    NonFinite { x: f64 },
    #[error("generator parameter invalid: {0}")]
    InvalidGenerator(String),
    #[error("configuration JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Airy(#[from] AiryError),
}

/// One atom of a configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom<T> {
    pub x: T,
    pub mult: u32,
}

/// Named infinite configurations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "lowercase")]
pub enum Generator {
    /// Zeros of Ai; `n` zeros are materialized by default.
    Airy { n: usize },
    /// Integers -n..=n.
    Integers { n: usize },
    /// sgn(ℓ)|ℓ|^κ for |ℓ| <= n.
    Eta { kappa: f64, n: usize },
}

impl Generator {
    fn validate(&self) -> Result<(), ConfigError> {
        match *self {
            Generator::Airy { n: 0 } => Err(ConfigError::InvalidGenerator("airy needs n >= 1".into())),
            Generator::Integers { n: 0 } => Err(ConfigError::InvalidGenerator("integers needs n >= 1".into())),
            Generator::Eta { kappa, n } if !(kappa > 0.0) || n == 0 => {
                Err(ConfigError::InvalidGenerator(format!("eta needs kappa > 0 and n >= 1 (kappa = {kappa}, n = {n})")))
            }
            _ => Ok(()),
        }
    }

    /// Atoms of the generator inside [-l, l].
    fn window(&self, l: f64) -> Result<Vec<(f64, u32)>, ConfigError> {
        match *self {
            Generator::Airy { .. } => {
                // a_j ≈ -(3πj/2)^{2/3}
                let mut guess = ((2.0 / (3.0 * std::f64::consts::PI)) * l.powf(1.5)).ceil() as usize + 4;
                loop {
                    let table = shared_zeros(guess.max(1))?;
                    let zeros = table.first(guess);
                    if zeros.last().is_some_and(|&a| a < -l) {
                        return Ok(zeros.iter().filter(|a| a.abs() <= l).map(|&a| (a, 1)).collect());
                    }
                    guess = guess * 2 + 8;
                }
            }
            Generator::Integers { .. } => {
                let m = l.floor() as i64;
                Ok((-m..=m).map(|k| (k as f64, 1)).collect())
            }
            Generator::Eta { kappa, .. } => {
                let m = l.powf(1.0 / kappa).floor() as i64;
                Ok((-m..=m).map(|k| (eta_point(k, kappa), 1)).collect())
            }
        }
    }

    fn default_atoms(&self) -> Result<Vec<(f64, u32)>, ConfigError> {
        match *self {
            Generator::Airy { n } => Ok(shared_zeros(n)?.first(n).iter().map(|&a| (a, 1)).collect()),
            Generator::Integers { n } => {
                let n = n as i64;
                Ok((-n..=n).map(|k| (k as f64, 1)).collect())
            }
            Generator::Eta { kappa, n } => {
                let n = n as i64;
                Ok((-n..=n).map(|k| (eta_point(k, kappa), 1)).collect())
            }
        }
    }

    /// Window half-width for index truncation `n`, that sits
    /// between the n-th and (n+1)-th atom in |x|.
    pub(crate) fn ladder(&self, n: usize) -> Result<f64, ConfigError> {
        Ok(match *self {
            Generator::Airy { .. } => {
                let table = shared_zeros(n + 1)?;
                -(table.as_slice()[n - 1] + table.as_slice()[n]) / 2.0
            }
            Generator::Integers { .. } => n as f64 + 0.5,
            Generator::Eta { kappa, .. } => ((n as f64).powf(kappa) + ((n + 1) as f64).powf(kappa)) / 2.0,
        })
    }

    pub(crate) fn ladder_count(&self, n: usize) -> usize {
        match self {
            Generator::Airy { .. } => n,
            _ => 2 * n + 1,
        }
    }
}

fn eta_point(k: i64, kappa: f64) -> f64 {
    (k as f64).signum() * (k.unsigned_abs() as f64).powf(kappa)
}

/// Finite multiset of real points with an optional infinite generator.
///
/// Atoms are kept sorted in increasing position.
#[derive(Debug, Clone, PartialEq)]
pub struct PointConfiguration<T> {
    atoms: Vec<Atom<T>>,
    generator: Option<Generator>,
}

/// Point transforms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transform<T> {
    /// x ↦ x + u
    Shift(T),
    /// x ↦ x²
    Square,
    /// keep atoms in [lo, hi]
    Restrict { lo: T, hi: T },
}

impl<T: Real> PointConfiguration<T> {
    /// Builds a configuration, merging points within [`MERGE_TOLERANCE`].
    pub fn from_atoms<I: IntoIterator<Item = (T, u32)>>(atoms: I) -> Result<Self, ConfigError> {
        let mut raw: Vec<Atom<T>> = Vec::new();
        for (x, mult) in atoms {
            if !x.is_finite() {
                return Err(ConfigError::NonFinite { x: x.to_f64_lossy() });
            }
            if mult == 0 {
                return Err(ConfigError::ZeroMultiplicity { x: x.to_f64_lossy() });
            }
            raw.push(Atom { x, mult });
        }
        Ok(Self { atoms: merge(raw), generator: None })
    }

    /// Simple configuration with one atom per point.
    pub fn from_points(points: &[T]) -> Result<Self, ConfigError> {
        Self::from_atoms(points.iter().map(|&x| (x, 1)))
    }

    /// Single atom δ_x.
    pub fn delta(x: T) -> Self {
        Self { atoms: vec![Atom { x, mult: 1 }], generator: None }
    }

    /// Materializes a named configuration at its default truncation.
    pub fn builtin(generator: Generator) -> Result<Self, ConfigError> {
        generator.validate()?;
        let atoms = generator.default_atoms()?;
        let mut cfg = Self::from_atoms(atoms.into_iter().map(|(x, m)| (T::lit(x), m)))?;
        cfg.generator = Some(generator);
        Ok(cfg)
    }

    pub fn atoms(&self) -> &[Atom<T>] {
        &self.atoms
    }

    pub fn generator(&self) -> Option<Generator> {
        self.generator
    }

    /// Same atoms, no generator tag.
    pub fn without_generator(&self) -> Self {
        Self { atoms: self.atoms.clone(), generator: None }
    }

    /// Number of distinct atoms.
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// ξ(ℝ), counting multiplicity.
    pub fn mass(&self) -> usize {
        self.atoms.iter().map(|a| a.mult as usize).sum()
    }

    /// True when every multiplicity is 1.
    pub fn is_simple(&self) -> bool {
        self.atoms.iter().all(|a| a.mult == 1)
    }

    /// Multiplicity of the atom at `x` (within the merge tolerance).
    pub fn multiplicity_at(&self, x: T) -> u32 {
        let tol = T::lit(MERGE_TOLERANCE);
        self.atoms.iter().filter(|a| (a.x - x).abs() <= tol).map(|a| a.mult).sum()
    }

    /// Point positions repeated by multiplicity.
    pub fn points(&self) -> Vec<T> {
        self.atoms.iter().flat_map(|a| std::iter::repeat_n(a.x, a.mult as usize)).collect()
    }

    /// Applies a point transform. The result carries no generator.
    pub fn transform(&self, op: Transform<T>) -> Self {
        let atoms: Vec<Atom<T>> = match op {
            Transform::Shift(u) => self.atoms.iter().map(|a| Atom { x: a.x + u, mult: a.mult }).collect(),
            Transform::Square => self.atoms.iter().map(|a| Atom { x: a.x * a.x, mult: a.mult }).collect(),
            Transform::Restrict { lo, hi } => self.atoms.iter().filter(|a| a.x >= lo && a.x <= hi).copied().collect(),
        };
        Self { atoms: merge(atoms), generator: None }
    }

    /// ξ ∩ [-l, l]; generators are materialized on the whole window.
    pub fn window(&self, l: T) -> Result<Self, ConfigError> {
        match self.generator {
            Some(g) => {
                let atoms = g.window(l.to_f64_lossy())?;
                Self::from_atoms(atoms.into_iter().map(|(x, m)| (T::lit(x), m)))
            }
            None => Ok(self.transform(Transform::Restrict { lo: -l, hi: l })),
        }
    }

    /// M_α = (Σ_{x≠0, |x|≤L} mult/|x|^α)^{1/α}; no `l` means all atoms.
    pub fn m_alpha(&self, alpha: T, l: Option<T>) -> T {
        let sum = self
            .atoms
            .iter()
            .rev()
            .filter(|a| a.x != T::zero() && l.is_none_or(|l| a.x.abs() <= l))
            .fold(T::zero(), |acc, a| acc + T::lit(a.mult as f64) / a.x.abs().powf(alpha));
        if sum == T::zero() {
            T::zero()
        } else {
            sum.powf(T::one() / alpha)
        }
    }

    /// M_A: Σ over paired Airy zeros of 1/a minus Σ over atoms of mult/x.
    ///
    /// Finite configurations pair with the first N = ξ(ℝ) zeros (after
    /// restricting to [-l, l] when given); generators pair with the zeros
    /// inside the same window.
    pub fn m_a(&self, l: Option<T>) -> Result<T, ConfigError> {
        let own = match (self.generator, l) {
            (Some(_), Some(l)) => self.window(l)?,
            (None, Some(l)) => self.transform(Transform::Restrict { lo: -l, hi: l }),
            (_, None) => self.without_generator(),
        };
        let paired: Vec<f64> = match (self.generator, l) {
            (Some(_), Some(l)) => Generator::Airy { n: 1 }.window(l.to_f64_lossy())?.into_iter().map(|p| p.0).collect(),
            _ => {
                let n = own.mass();
                if n == 0 {
                    Vec::new()
                } else {
                    shared_zeros(n)?.first(n).to_vec()
                }
            }
        };
        let zeros: T = paired.iter().rev().fold(T::zero(), |acc, &a| acc + T::one() / T::lit(a));
        let atoms = own.atoms.iter().filter(|a| a.x != T::zero()).fold(T::zero(), |acc, a| acc + T::lit(a.mult as f64) / a.x);
        Ok(zeros - atoms)
    }

    /// M_1(τ_{-a²} ξ^{⟨2⟩}) = Σ_{x² ≠ a²} mult/|x² - a²|.
    pub fn squared_shift_moment(&self, a: T) -> T {
        let a2 = a * a;
        let tol = T::lit(MERGE_TOLERANCE);
        self.atoms.iter().fold(T::zero(), |acc, at| {
            let d = (at.x * at.x - a2).abs();
            if d <= tol {
                acc
            } else {
                acc + T::lit(at.mult as f64) / d
            }
        })
    }

    /// m(ξ, κ) = max_k ξ([g^κ(k), g^κ(k+1)]) over the materialized atoms.
    pub fn block_occupancy(&self, kappa: f64) -> u32 {
        let xs: Vec<f64> = self.atoms.iter().map(|a| a.x.to_f64_lossy()).collect();
        let mut prefix = Vec::with_capacity(xs.len() + 1);
        prefix.push(0u32);
        for a in &self.atoms {
            prefix.push(prefix.last().copied().unwrap_or(0) + a.mult);
        }
        let count = |lo: f64, hi: f64| {
            let i = xs.partition_point(|&x| x < lo - MERGE_TOLERANCE);
            let j = xs.partition_point(|&x| x <= hi + MERGE_TOLERANCE);
            prefix[j] - prefix[i]
        };
        let mut best = 0;
        for &x in &xs {
            let k = eta_cell(x, kappa);
            for cell in [k - 1, k] {
                best = best.max(count(eta_point(cell, kappa), eta_point(cell + 1, kappa)));
            }
        }
        best
    }
}

fn eta_cell(x: f64, kappa: f64) -> i64 {
    // inverse of g^κ, then floor
    let inv = x.signum() * x.abs().powf(1.0 / kappa);
    let mut k = inv.floor() as i64;
    while eta_point(k + 1, kappa) <= x {
        k += 1;
    }
    while eta_point(k, kappa) > x {
        k -= 1;
    }
    k
}

fn merge<T: Real>(mut atoms: Vec<Atom<T>>) -> Vec<Atom<T>> {
    atoms.sort_by(|a, b| a.x.partial_cmp(&b.x).expect("finite atoms"));
    let tol = T::lit(MERGE_TOLERANCE);
    let mut out: Vec<Atom<T>> = Vec::with_capacity(atoms.len());
    for a in atoms {
        match out.last_mut() {
            Some(last) if (a.x - last.x).abs() <= tol => last.mult += a.mult,
            _ => out.push(a),
        }
    }
    out
}

// --- JSON ---------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct AtomRecord {
    x: f64,
    #[serde(default = "one")]
    mult: u32,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum ConfigRecord {
    Atoms { atoms: Vec<AtomRecord> },
    Generated(Generator),
}

impl ConfigRecord {
    fn of(c: &PointConfiguration<f64>) -> Self {
        match c.generator {
            Some(g) => ConfigRecord::Generated(g),
            None => ConfigRecord::Atoms { atoms: c.atoms.iter().map(|a| AtomRecord { x: a.x, mult: a.mult }).collect() },
        }
    }

    fn build(self) -> Result<PointConfiguration<f64>, ConfigError> {
        match self {
            ConfigRecord::Atoms { atoms } => PointConfiguration::from_atoms(atoms.into_iter().map(|a| (a.x, a.mult))),
            ConfigRecord::Generated(g) => PointConfiguration::builtin(g),
        }
    }
}

impl Serialize for PointConfiguration<f64> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ConfigRecord::of(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PointConfiguration<f64> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        ConfigRecord::deserialize(deserializer)?.build().map_err(serde::de::Error::custom)
    }
}

impl PointConfiguration<f64> {
    /// Parses `{"atoms":[{"x":..,"mult":..}]}` or `{"generator":"airy","n":100}`.
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str::<ConfigRecord>(text)?.build()
    }

    /// Serializes back to the JSON layout accepted by [`Self::from_json`].
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ConfigRecord::of(self)).expect("plain data serializes")
    }
}

// --- limits over truncations --------------------------------------------

/// Outcome of chasing a functional over growing truncations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Limit {
    Converged { value: f64, rate: f64 },
    Divergent { last: f64, rate: f64 },
    Inconclusive { last: f64 },
}

impl Limit {
    pub fn value(&self) -> Option<f64> {
        match *self {
            Limit::Converged { value, .. } => Some(value),
            _ => None,
        }
    }

    /// Best available number: the limit, or the last partial value.
    pub fn best(&self) -> f64 {
        match *self {
            Limit::Converged { value, .. } => value,
            Limit::Divergent { last, .. } | Limit::Inconclusive { last } => last,
        }
    }
}

/// Iterated Aitken Δ² acceleration of a sequence sampled at truncations that
/// double. Divergence: the last two raw difference ratios are >= 0.95.
pub fn accelerate(seq: &[f64], tol: f64) -> Limit {
    let last = seq.last().copied().unwrap_or(f64::NAN);
    if seq.len() < 3 {
        return Limit::Inconclusive { last };
    }
    let ratios: Vec<f64> = seq
        .windows(3)
        .map(|w| {
            let (d1, d2) = (w[1] - w[0], w[2] - w[1]);
            if d1 == 0.0 {
                0.0
            } else {
                d2 / d1
            }
        })
        .collect();
    let rate = *ratios.last().expect("nonempty");
    if ratios[ratios.len().saturating_sub(2)..].iter().all(|r| *r >= 0.95) {
        return Limit::Divergent { last, rate };
    }
    let close = |a: f64, b: f64| (a - b).abs() <= tol * a.abs().max(1.0);
    let mut level = seq.to_vec();
    let mut best: Option<f64> = None;
    while level.len() >= 2 {
        let n = level.len();
        if close(level[n - 1], level[n - 2]) {
            best = Some(level[n - 1]);
        }
        if level.len() < 3 {
            break;
        }
        level = level.windows(3).map(aitken_step).collect();
    }
    match best {
        Some(value) => Limit::Converged { value, rate },
        None => Limit::Inconclusive { last },
    }
}

fn aitken_step(w: &[f64]) -> f64 {
    let (d1, d2) = (w[1] - w[0], w[2] - w[1]);
    let denom = d2 - d1;
    if denom == 0.0 || d2 == 0.0 {
        w[2]
    } else {
        w[2] - d2 * d2 / denom
    }
}

// --- admissibility ------------------------------------------------------

/// Bounds for the admissibility conditions. A `None` bound only asks for a
/// finite limit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Thresholds {
    pub c0: Option<f64>,
    pub alpha: f64,
    pub c1: Option<f64>,
    pub beta: f64,
    pub c2: Option<f64>,
    pub kappa: Option<f64>,
    /// Relative stabilization tolerance for generator limits.
    pub tolerance: f64,
    /// Index truncation of the first generator window.
    pub base_count: usize,
    /// Number of window doublings allowed.
    pub max_doublings: usize,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self { c0: None, alpha: 1.9, c1: None, beta: 0.25, c2: None, kappa: None, tolerance: 1e-6, base_count: 16, max_doublings: 14 }
    }
}

/// Atom attaining the supremum in the pairing condition.
#[derive(Debug, Clone, Serialize)]
pub struct BindingAtom {
    pub a: f64,
    pub weighted_moment: f64,
    /// The binding atom is the largest-|a| atom examined.
    pub at_edge: bool,
}

/// Result of [`check_conditions`].
#[derive(Debug, Clone, Serialize)]
pub struct ConditionReport {
    pub m_a: Limit,
    pub m_alpha: Vec<(f64, Limit)>,
    pub c0: Option<f64>,
    pub drift_pass: bool,
    pub alpha: f64,
    pub c1: Option<f64>,
    pub moment_pass: bool,
    pub beta: f64,
    pub c2: Option<f64>,
    pub pairing_sup: Limit,
    pub pairing_pass: bool,
    pub binding: Option<BindingAtom>,
    /// (κ, m(ξ, κ)) when a κ was requested.
    pub occupancy: Option<(f64, u32)>,
    pub inconclusive: bool,
    pub windows: Vec<f64>,
}

impl ConditionReport {
    /// Drift, moment and pairing conditions all hold.
    pub fn admissible(&self) -> bool {
        self.drift_pass && self.moment_pass && self.pairing_pass
    }
}

fn passes(limit: &Limit, bound: Option<f64>, absolute: bool) -> bool {
    match limit.value() {
        Some(v) => {
            let v = if absolute { v.abs() } else { v };
            bound.is_none_or(|c| v < c || (!absolute && v <= c))
        }
        None => false,
    }
}

/// Evaluates the drift, moment and pairing conditions and optionally the block occupancy.
pub fn check_conditions<T: Real>(xi: &PointConfiguration<T>, th: &Thresholds) -> Result<ConditionReport, ConfigError> {
    let finite = xi.without_generator();
    let as_f64 = |c: &PointConfiguration<T>| -> Result<PointConfiguration<f64>, ConfigError> {
        PointConfiguration::<f64>::from_atoms(c.atoms.iter().map(|a| (a.x.to_f64_lossy(), a.mult)))
    };
    let (m_a, m_alpha_lim, pairing, binding, occupancy, windows) = match xi.generator {
        None => {
            let f = as_f64(&finite)?;
            let m_a = Limit::Converged { value: f.m_a(None)?, rate: 0.0 };
            let m_al = Limit::Converged { value: f.m_alpha(th.alpha, None), rate: 0.0 };
            let (sup, bind) = pairing_sup(&f, &f, th.beta);
            let occupancy = th.kappa.map(|k| (k, f.block_occupancy(k)));
            (m_a, m_al, Limit::Converged { value: sup, rate: 0.0 }, bind, occupancy, Vec::new())
        }
        Some(g) => {
            let gen = PointConfiguration::<f64> { atoms: Vec::new(), generator: Some(g) };
            let mut windows = Vec::new();
            let mut n = th.base_count;
            for _ in 0..=th.max_doublings {
                if g.ladder_count(n) > MATERIALIZE_CAP {
                    break;
                }
                let l = g.ladder(n)?;
                // the Airy pairing needs every zero inside the window
                if 0.22 * l.powf(1.5) > MATERIALIZE_CAP as f64 {
                    break;
                }
                windows.push(l);
                n *= 2;
            }
            let views = windows.iter().map(|&l| gen.window(l)).collect::<Result<Vec<_>, _>>()?;
            let ma_seq = windows.iter().map(|&l| gen.m_a(Some(l))).collect::<Result<Vec<_>, _>>()?;
            let mal_seq: Vec<f64> = views.iter().map(|v| v.m_alpha(th.alpha, None).powf(th.alpha)).collect();
            let m_a = accelerate(&ma_seq, th.tolerance);
            let mal = match accelerate(&mal_seq, th.tolerance) {
                Limit::Converged { value, rate } => Limit::Converged { value: value.max(0.0).powf(1.0 / th.alpha), rate },
                other => other,
            };
            // candidate atoms from the smallest window, moments from every window
            let base = views.first().cloned().unwrap_or_else(|| gen.without_generator());
            let mut sup = f64::NEG_INFINITY;
            let mut bind = None;
            let mut sup_limit = Limit::Converged { value: 0.0, rate: 0.0 };
            let edge = base.atoms.iter().map(|a| a.x.abs()).fold(0.0, f64::max);
            for atom in &base.atoms {
                let seq: Vec<f64> = views.iter().map(|v| v.squared_shift_moment(atom.x)).collect();
                let lim = accelerate(&seq, th.tolerance);
                let w = atom.x.abs().max(1.0).powf(th.beta);
                let value = lim.best() * w;
                if lim.value().is_none() {
                    sup_limit = match lim {
                        Limit::Divergent { rate, .. } => Limit::Divergent { last: value, rate },
                        _ => Limit::Inconclusive { last: value },
                    };
                }
                if value > sup {
                    sup = value;
                    bind = Some(BindingAtom { a: atom.x, weighted_moment: value, at_edge: atom.x.abs() >= edge });
                }
            }
            if let Limit::Converged { .. } = sup_limit {
                sup_limit = Limit::Converged { value: sup.max(0.0), rate: 0.0 };
            }
            let occupancy = th.kappa.map(|k| (k, views.last().map_or(0, |v| v.block_occupancy(k))));
            (m_a, mal, sup_limit, bind, occupancy, windows)
        }
    };
    let drift_pass = passes(&m_a, th.c0, true);
    let moment_pass = passes(&m_alpha_lim, th.c1, false);
    let pairing_pass = passes(&pairing, th.c2, false);
    let inconclusive = [&m_a, &m_alpha_lim, &pairing].iter().any(|l| matches!(l, Limit::Inconclusive { .. }));
    Ok(ConditionReport {
        m_a,
        m_alpha: vec![(th.alpha, m_alpha_lim)],
        c0: th.c0,
        drift_pass,
        alpha: th.alpha,
        c1: th.c1,
        moment_pass,
        beta: th.beta,
        c2: th.c2,
        pairing_sup: pairing,
        pairing_pass,
        binding,
        occupancy,
        inconclusive,
        windows,
    })
}

fn pairing_sup(candidates: &PointConfiguration<f64>, support: &PointConfiguration<f64>, beta: f64) -> (f64, Option<BindingAtom>) {
    let edge = candidates.atoms.iter().map(|a| a.x.abs()).fold(0.0, f64::max);
    let mut sup = 0.0;
    let mut bind = None;
    for a in &candidates.atoms {
        let v = a.x.abs().max(1.0).powf(beta) * support.squared_shift_moment(a.x);
        if bind.is_none() || v > sup {
            sup = v;
            bind = Some(BindingAtom { a: a.x, weighted_moment: v, at_edge: a.x.abs() >= edge });
        }
    }
    (sup, bind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    type Cfg = PointConfiguration<f64>;

    #[test]
    fn shift_and_square() {
        let d = Cfg::delta(0.0).transform(Transform::Shift(3.0));
        assert_eq!(d.atoms(), &[Atom { x: 3.0, mult: 1 }]);
        let s = Cfg::from_points(&[-2.0, 2.0]).unwrap().transform(Transform::Square);
        assert_eq!(s.atoms(), &[Atom { x: 4.0, mult: 2 }]);
    }

    #[test]
    fn restrict_airy_window() {
        let a = Cfg::builtin(Generator::Airy { n: 10 }).unwrap();
        let r = a.transform(Transform::Restrict { lo: -5.0, hi: 0.0 });
        assert_eq!(r.len(), 2);
        assert_relative_eq!(r.atoms()[1].x, -2.338_107_410_459_767, epsilon = 1e-12);
        assert_relative_eq!(r.atoms()[0].x, -4.087_949_444_130_97, epsilon = 1e-12);
    }

    #[test]
    fn merging_and_multiplicity() {
        let c = Cfg::from_atoms([(1.0, 1), (1.0 + 1e-13, 2), (0.5, 1)]).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.mass(), 4);
        assert!(!c.is_simple());
        assert_eq!(c.multiplicity_at(1.0), 3);
        assert!(Cfg::from_atoms([(1.0, 0)]).is_err());
        assert!(Cfg::from_atoms([(f64::NAN, 1)]).is_err());
    }

    #[test]
    fn moments() {
        assert_eq!(Cfg::delta(0.0).m_alpha(2.0, None), 0.0);
        assert_relative_eq!(Cfg::from_points(&[1.0, 2.0]).unwrap().m_alpha(1.0, None), 1.5);
        let a = Cfg::builtin(Generator::Airy { n: 10_000 }).unwrap();
        let d1 = crate::airy::airy_constants::<f64>().d1;
        // raw truncation at 10^4 zeros is still ~2% low
        assert!((a.m_alpha(2.0, None) - d1.abs()).abs() < 0.02);
    }

    #[test]
    fn airy_pairing() {
        for n in [1, 3, 50] {
            let a = Cfg::builtin(Generator::Airy { n }).unwrap().without_generator();
            assert!(a.m_a(None).unwrap().abs() < 1e-14);
        }
        let a3 = Cfg::builtin(Generator::Airy { n: 3 }).unwrap().without_generator();
        let shifted = a3.transform(Transform::Shift(1e-6));
        let expect: f64 = a3.atoms().iter().map(|a| 1e-6 / (a.x * a.x)).sum();
        assert_relative_eq!(shifted.m_a(None).unwrap(), expect, max_relative = 1e-5);
    }

    #[test]
    fn builtins() {
        let z = Cfg::builtin(Generator::Integers { n: 1 }).unwrap();
        assert_eq!(z.points(), vec![-1.0, 0.0, 1.0]);
        let e = Cfg::builtin(Generator::Eta { kappa: 1.0, n: 4 }).unwrap();
        let i = Cfg::builtin(Generator::Integers { n: 4 }).unwrap();
        assert_eq!(e.points(), i.points());
        assert!(Cfg::builtin(Generator::Eta { kappa: 0.0, n: 4 }).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = Cfg::from_json(r#"{"atoms":[{"x":-2.338107,"mult":1},{"x":1.5}]}"#).unwrap();
        assert_eq!(c.mass(), 2);
        let g = Cfg::from_json(r#"{"generator":"airy","n":5}"#).unwrap();
        assert_eq!(g.generator(), Some(Generator::Airy { n: 5 }));
        assert_eq!(Cfg::from_json(&g.to_json()).unwrap(), g);
        assert!(Cfg::from_json(r#"{"generator":"cantor","n":5}"#).is_err());
    }

    #[test]
    fn aitken_geometric() {
        let seq: Vec<f64> = (0..8).map(|k| 2.0 - 0.5_f64.powi(k)).collect();
        assert_relative_eq!(accelerate(&seq, 1e-9).value().unwrap(), 2.0, epsilon = 1e-12);
        let grow: Vec<f64> = (0..8).map(|k| 2.0_f64.powf(0.5 * k as f64)).collect();
        assert!(matches!(accelerate(&grow, 1e-9), Limit::Divergent { .. }));
        let log: Vec<f64> = (0..8).map(|k| k as f64 * 2.0_f64.ln()).collect();
        assert!(matches!(accelerate(&log, 1e-9), Limit::Divergent { .. }));
    }

    #[test]
    fn airy_generator_admissible() {
        let a = Cfg::builtin(Generator::Airy { n: 100 }).unwrap();
        let r = check_conditions(&a, &Thresholds::default()).unwrap();
        assert!(r.drift_pass && r.moment_pass && r.pairing_pass, "{r:?}");
        assert!(r.m_a.value().unwrap().abs() < 1e-6);
    }

    #[test]
    fn integers_fail_pairing_condition() {
        let z = Cfg::builtin(Generator::Integers { n: 100 }).unwrap();
        let r = check_conditions(&z, &Thresholds::default()).unwrap();
        assert!(!r.drift_pass);
        assert!(matches!(r.m_a, Limit::Divergent { .. }), "{:?}", r.m_a);
    }

    #[test]
    fn eta_moment_condition() {
        let e = Cfg::builtin(Generator::Eta { kappa: 0.6, n: 100 }).unwrap();
        let th = Thresholds { alpha: 1.9, kappa: Some(0.6), ..Thresholds::default() };
        let r = check_conditions(&e, &th).unwrap();
        assert!(r.moment_pass, "{:?}", r.m_alpha);
        assert_eq!(r.occupancy.unwrap().1, 2);
    }

    #[test]
    fn finite_airy_constants_uniform() {
        let th = Thresholds { c0: Some(1e-9), c1: Some(1.0), c2: Some(1.0), ..Thresholds::default() };
        for n in [10, 100, 1000] {
            let a = Cfg::builtin(Generator::Airy { n }).unwrap().without_generator();
            let r = check_conditions(&a, &th).unwrap();
            assert!(r.drift_pass && r.moment_pass && r.pairing_pass, "n = {n}: {r:?}");
        }
    }
}
