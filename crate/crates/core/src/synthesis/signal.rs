use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lti_model::{vector_from_entries, Entry};
use crate::numerics::Vector;

/// Identifier of the composite quadrature rule the sample grid follows.
pub const RULE_ID: &str = "gauss-lobatto-5";

/// Points of the 5-point Gauss–Lobatto rule mapped to `[0, 1]`.
pub(crate) fn lobatto_offsets() -> [f64; 5] {
    let r = (3.0f64 / 7.0).sqrt();
    [0.0, (1.0 - r) / 2.0, 0.5, (1.0 + r) / 2.0, 1.0]
}

/// Matching weights on `[0, 1]`.
pub(crate) const LOBATTO_WEIGHTS: [f64; 5] = [1.0 / 20.0, 49.0 / 180.0, 16.0 / 45.0, 49.0 / 180.0, 1.0 / 20.0];

/// Lagrange basis values `L_i(x)` on the Lobatto offsets.
pub(crate) fn lagrange_weights(x: f64) -> [f64; 5] {
    let xs = lobatto_offsets();
    let mut out = [1.0; 5];
    for (i, o) in out.iter_mut().enumerate() {
        for (j, &xj) in xs.iter().enumerate() {
            if i != j {
                *o *= (x - xj) / (xs[i] - xj);
            }
        }
    }
    out
}

/// Composite 5-point Gauss–Lobatto grid on `[0, T]` with `4 * panels + 1` nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureGrid {
    pub horizon: f64,
    pub panels: usize,
}

impl QuadratureGrid {
    pub fn new(horizon: f64, panels: usize) -> Result<Self> {
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::Domain(format!("horizon must be positive, got {horizon}")));
        }
        if panels == 0 {
            return Err(Error::Domain("grid needs at least one panel".into()));
        }
        Ok(QuadratureGrid { horizon, panels })
    }

    /// Grid with the given total node count, which must be `4k + 1`, `k >= 1`.
    pub fn with_nodes(horizon: f64, nodes: usize) -> Result<Self> {
        if nodes < 5 || !(nodes - 1).is_multiple_of(4) {
            return Err(Error::Domain(format!(
                "node count must be 4k + 1 with k >= 1 for the {RULE_ID} rule, got {nodes}"
            )));
        }
        QuadratureGrid::new(horizon, (nodes - 1) / 4)
    }

    pub fn node_count(&self) -> usize {
        4 * self.panels + 1
    }

    pub fn step(&self) -> f64 {
        self.horizon / self.panels as f64
    }

    pub fn refined(&self) -> Self {
        QuadratureGrid {
            horizon: self.horizon,
            panels: 2 * self.panels,
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        let h = self.step();
        let xs = lobatto_offsets();
        let mut out = Vec::with_capacity(self.node_count());
        out.push(0.0);
        for k in 0..self.panels {
            let a = k as f64 * h;
            for &x in &xs[1..4] {
                out.push(a + x * h);
            }
            out.push(if k + 1 == self.panels { self.horizon } else { (k + 1) as f64 * h });
        }
        out
    }

    /// Quadrature weights aligned with [`nodes`](Self::nodes).
    pub fn weights(&self) -> Vec<f64> {
        let h = self.step();
        let mut out = vec![0.0; self.node_count()];
        for k in 0..self.panels {
            for (i, w) in LOBATTO_WEIGHTS.iter().enumerate() {
                out[4 * k + i] += w * h;
            }
        }
        out
    }
}

/// Open-loop input sampled on a composite Gauss–Lobatto grid.
///
/// Between samples the input is the degree-four polynomial interpolating the
/// five samples of the enclosing panel.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlSignal {
    grid: QuadratureGrid,
    nodes: Vec<f64>,
    samples: Vec<Vector>,
}

impl ControlSignal {
    pub fn new(grid: QuadratureGrid, samples: Vec<Vector>) -> Result<Self> {
        if samples.len() != grid.node_count() {
            return Err(Error::dimension("samples", "one sample per grid node", grid.node_count(), samples.len()));
        }
        let m = samples[0].len();
        for (k, s) in samples.iter().enumerate() {
            if s.len() != m {
                return Err(Error::dimension(format!("samples[{k}]"), "input width", m, s.len()));
            }
            if s.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
                return Err(Error::NonFinite {
                    field: "samples".into(),
                    row: k,
                    col: 0,
                });
            }
        }
        Ok(ControlSignal {
            nodes: grid.nodes(),
            grid,
            samples,
        })
    }

    /// Sample `f` at every node of `grid`.
    pub fn from_fn(grid: QuadratureGrid, f: impl FnMut(f64) -> Vector) -> Result<Self> {
        let samples = grid.nodes().into_iter().map(f).collect();
        ControlSignal::new(grid, samples)
    }

    pub fn constant(grid: QuadratureGrid, value: Vector) -> Result<Self> {
        ControlSignal::from_fn(grid, |_| value.clone())
    }

    pub fn grid(&self) -> QuadratureGrid {
        self.grid
    }

    pub fn horizon(&self) -> f64 {
        self.grid.horizon
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn samples(&self) -> &[Vector] {
        &self.samples
    }

    pub fn input_width(&self) -> usize {
        self.samples[0].len()
    }

    pub fn rule(&self) -> &'static str {
        RULE_ID
    }

    /// Samples of panel `k`.
    pub(crate) fn panel(&self, k: usize) -> &[Vector] {
        &self.samples[4 * k..4 * k + 5]
    }

    /// Interpolated input at time `t`, clamped to `[0, T]`.
    pub fn eval(&self, t: f64) -> Vector {
        let h = self.grid.step();
        let t = t.clamp(0.0, self.grid.horizon);
        let k = ((t / h).floor() as usize).min(self.grid.panels - 1);
        let x = (t - k as f64 * h) / h;
        let w = lagrange_weights(x);
        let mut out = Vector::zeros(self.input_width());
        for (s, wi) in self.panel(k).iter().zip(w) {
            out += s * Complex64::new(wi, 0.0);
        }
        out
    }

    /// Same input resampled on a grid with twice as many panels.
    pub fn refined(&self) -> ControlSignal {
        let grid = self.grid.refined();
        ControlSignal::from_fn(grid, |t| self.eval(t)).expect("interpolated samples are finite")
    }

    /// Quadrature estimate of `int_0^T |u(s)|^2 ds`.
    pub fn energy(&self) -> f64 {
        self.grid
            .weights()
            .iter()
            .zip(&self.samples)
            .map(|(w, u)| w * u.norm_squared())
            .sum()
    }

    pub fn scaled(&self, factor: f64) -> ControlSignal {
        ControlSignal {
            grid: self.grid,
            nodes: self.nodes.clone(),
            samples: self.samples.iter().map(|s| s.scale(factor)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let file = ControlFile {
            horizon: self.grid.horizon,
            nodes: self.nodes.clone(),
            samples: self
                .samples
                .iter()
                .map(|s| s.iter().map(|&z| Entry::from(z)).collect())
                .collect(),
            rule: Some(RULE_ID.to_string()),
        };
        serde_json::to_string_pretty(&file).expect("control file serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ControlFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if let Some(rule) = &file.rule {
            if rule != RULE_ID {
                return Err(Error::Parse(format!("unsupported quadrature rule '{rule}'")));
            }
        }
        let grid = QuadratureGrid::with_nodes(file.horizon, file.nodes.len())?;
        let expected = grid.nodes();
        for (k, (&got, &want)) in file.nodes.iter().zip(&expected).enumerate() {
            if (got - want).abs() > 1e-12 * grid.horizon.max(1.0) {
                return Err(Error::Parse(format!(
                    "node {k} = {got} does not match the {RULE_ID} grid (expected {want})"
                )));
            }
        }
        let samples = file.samples.into_iter().map(vector_from_entries).collect();
        ControlSignal::new(grid, samples)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        ControlSignal::from_json(&std::fs::read_to_string(path)?)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct ControlFile {
    #[serde(rename = "T")]
    horizon: f64,
    nodes: Vec<f64>,
    samples: Vec<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rule: Option<String>,
}
