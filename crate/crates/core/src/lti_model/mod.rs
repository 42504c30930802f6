//! The `(A, B, C)` triple, its JSON file format, random generators and the
//! parallel connection of several systems sharing one input.

mod io;
mod random;

pub use io::{from_json, read_system, to_json, vector_from_json, write_system};
pub(crate) use io::{vector_from_entries, Entry};
pub use random::{random_matrix, random_system, SystemKind};

use crate::error::{Error, Result};
use crate::numerics::{block_diag, check_finite, Matrix};

/// Linear time-invariant system `x' = Ax + Bu`, `y = Cx`.
#[derive(Debug, Clone, PartialEq)]
pub struct LtiSystem {
    a: Matrix,
    b: Matrix,
    c: Matrix,
    name: Option<String>,
}

/// Check the shape and finiteness invariants of a candidate triple.
pub fn validate(a: &Matrix, b: &Matrix, c: &Matrix) -> Result<()> {
    let shape = |m: &Matrix| format!("{}x{}", m.nrows(), m.ncols());
    if a.nrows() != a.ncols() {
        return Err(Error::dimension("A", "A not square", format!("{0}x{0}", a.nrows()), shape(a)));
    }
    let n = a.nrows();
    if n == 0 {
        return Err(Error::dimension("A", "state dimension must be at least 1", "n >= 1", shape(a)));
    }
    if b.nrows() != n {
        return Err(Error::dimension("B", "B row count != n", format!("{n}xm"), shape(b)));
    }
    if b.ncols() == 0 {
        return Err(Error::dimension("B", "input dimension must be at least 1", "m >= 1", shape(b)));
    }
    if c.ncols() != n {
        return Err(Error::dimension("C", "C column count != n", format!("px{n}"), shape(c)));
    }
    if c.nrows() == 0 {
        return Err(Error::dimension("C", "output dimension must be at least 1", "p >= 1", shape(c)));
    }
    check_finite("A", a)?;
    check_finite("B", b)?;
    check_finite("C", c)?;
    Ok(())
}

impl LtiSystem {
    pub fn new(a: Matrix, b: Matrix, c: Matrix) -> Result<Self> {
        validate(&a, &b, &c)?;
        Ok(LtiSystem { a, b, c, name: None })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn c(&self) -> &Matrix {
        &self.c
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// State dimension.
    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    /// Input dimension.
    pub fn m(&self) -> usize {
        self.b.ncols()
    }

    /// Output dimension.
    pub fn p(&self) -> usize {
        self.c.nrows()
    }

    /// Same system with the output map replaced.
    pub fn with_output(&self, c: Matrix) -> Result<Self> {
        LtiSystem::new(self.a.clone(), self.b.clone(), c)
    }

    /// `(T A T^-1, T B, C T^-1)`; the caller supplies `T` and its inverse.
    pub fn transformed(&self, t: &Matrix, t_inv: &Matrix) -> Result<Self> {
        LtiSystem::new(t * &self.a * t_inv, t * &self.b, &self.c * t_inv)
    }

    pub fn into_parts(self) -> (Matrix, Matrix, Matrix) {
        (self.a, self.b, self.c)
    }
}

/// Non-empty ordered list of systems to connect in parallel.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemCollection(Vec<LtiSystem>);

impl SystemCollection {
    pub fn new(systems: Vec<LtiSystem>) -> Result<Self> {
        if systems.is_empty() {
            return Err(Error::dimension("systems", "collection must not be empty", "N >= 1", 0));
        }
        Ok(SystemCollection(systems))
    }

    pub fn systems(&self) -> &[LtiSystem] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Common input width, or the first member that breaks it.
    pub fn input_width(&self) -> Result<usize> {
        let m = self.0[0].m();
        for (index, s) in self.0.iter().enumerate() {
            if s.m() != m {
                return Err(Error::InputWidthMismatch {
                    index,
                    expected: m,
                    found: s.m(),
                });
            }
        }
        Ok(m)
    }
}

/// Parallel connection: block-diagonal `A` and `C`, vertically stacked `B`.
pub fn parallel_connect(coll: &SystemCollection) -> Result<LtiSystem> {
    let m = coll.input_width()?;
    let systems = coll.systems();
    if let [single] = systems {
        return Ok(single.clone());
    }
    let a = block_diag(&systems.iter().map(|s| s.a()).collect::<Vec<_>>());
    let c = block_diag(&systems.iter().map(|s| s.c()).collect::<Vec<_>>());
    let mut b = Matrix::zeros(a.nrows(), m);
    let mut row = 0;
    for s in systems {
        b.view_mut((row, 0), (s.n(), m)).copy_from(s.b());
        row += s.n();
    }
    LtiSystem::new(a, b, c)
}
