use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::padic::{Ball, CosetGrid, PAdicVector};
use crate::prime::Prime;

/// A symbol `𝒜(ξ)`, locally constant away from the origin.
#[derive(Debug, Clone, PartialEq)]
pub enum Symbol {
    /// `|ξ|_p^α`.
    Power(Complex64),
    /// `|ξ|_p^{-n}` read as the principal-value distribution; on Lizorkin inputs it
    /// acts like `Power(-n)`.
    PrincipalValuePowerN,
    /// `ln |ξ|_p`.
    Log,
    /// `c` everywhere.
    Constant(Complex64),
    Tabulated(TabulatedSymbol),
    /// `𝒜(ξ) 𝓑(ξ)`.
    Product(Box<Symbol>, Box<Symbol>),
    /// `1 / 𝒜(ξ)`.
    Reciprocal(Box<Symbol>),
    /// `𝒜(-ξ)`, the symbol of the transposed operator.
    Reflected(Box<Symbol>),
}

/// Value of a symbol on one cell of a frequency grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SymbolCell {
    Value(Complex64),
    /// The cell holds the origin, where the symbol is not defined.
    Origin,
    /// A tabulated symbol has no value there.
    Uncovered,
}

/// `|ξ|_p^α` for `|ξ|_p = p^e`, as `exp(α e ln p)`.
pub(crate) fn norm_power(p: Prime, e: i64, alpha: Complex64) -> Complex64 {
    (alpha * (e as f64 * p.ln())).exp()
}

impl Symbol {
    pub fn power(alpha: Complex64) -> Self {
        Symbol::Power(alpha)
    }

    pub fn power_re(alpha: f64) -> Self {
        Symbol::Power(Complex64::new(alpha, 0.0))
    }

    pub fn product(a: Symbol, b: Symbol) -> Self {
        Symbol::Product(Box::new(a), Box::new(b))
    }

    pub fn reciprocal(a: Symbol) -> Self {
        Symbol::Reciprocal(Box::new(a))
    }

    pub fn reflected(a: Symbol) -> Self {
        Symbol::Reflected(Box::new(a))
    }

    /// Radius exponent `r` such that the symbol is constant on cosets of
    /// `p^{-r}Z_p^n` inside its domain; `None` for symbols depending only on `|ξ|_p`.
    pub fn resolution(&self) -> Option<i64> {
        match self {
            Symbol::Power(_) | Symbol::PrincipalValuePowerN | Symbol::Log | Symbol::Constant(_) => None,
            Symbol::Tabulated(t) => Some(t.resolution),
            Symbol::Product(a, b) => match (a.resolution(), b.resolution()) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, y) => x.or(y),
            },
            Symbol::Reciprocal(a) | Symbol::Reflected(a) => a.resolution(),
        }
    }

    pub fn is_radial(&self) -> bool {
        self.resolution().is_none()
    }

    fn radial_value(&self, p: Prime, n: usize, e: i64) -> Result<Complex64> {
        Ok(match self {
            Symbol::Power(alpha) => norm_power(p, e, *alpha),
            Symbol::PrincipalValuePowerN => norm_power(p, e, Complex64::new(-(n as f64), 0.0)),
            Symbol::Log => Complex64::new(e as f64 * p.ln(), 0.0),
            Symbol::Constant(c) => *c,
            Symbol::Product(a, b) => a.radial_value(p, n, e)? * b.radial_value(p, n, e)?,
            Symbol::Reciprocal(a) => reciprocal(a.radial_value(p, n, e)?)?,
            Symbol::Reflected(a) => a.radial_value(p, n, e)?,
            Symbol::Tabulated(_) => unreachable!("tabulated symbols are not radial"),
        })
    }

    /// `𝒜(ξ)`.
    pub fn eval(&self, xi: &PAdicVector) -> Result<Complex64> {
        let e = xi.norm_exponent().ok_or(Error::Origin)?;
        match self {
            Symbol::Tabulated(t) => t.eval(xi),
            Symbol::Product(a, b) if !self.is_radial() => Ok(a.eval(xi)? * b.eval(xi)?),
            Symbol::Reciprocal(a) if !self.is_radial() => reciprocal(a.eval(xi)?),
            Symbol::Reflected(a) if !self.is_radial() => a.eval(&xi.neg()),
            _ => self.radial_value(xi.prime(), xi.dim(), e),
        }
    }

    /// The symbol on every cell of `grid`. Cells must be no coarser than the
    /// symbol's resolution.
    pub fn on_grid(&self, grid: &CosetGrid) -> Result<Vec<SymbolCell>> {
        if let Some(r) = self.resolution() {
            if grid.cell_exp() > r {
                return Err(Error::InvalidRefinement { cell: grid.cell_exp(), radius: r });
            }
        }
        let p = grid.prime();
        let n = grid.dim();
        match self {
            Symbol::Tabulated(t) => t.on_grid(grid),
            Symbol::Product(a, b) if !self.is_radial() => {
                let x = a.on_grid(grid)?;
                let y = b.on_grid(grid)?;
                Ok(x.into_iter().zip(y).map(|(u, v)| combine(u, v, |s, t| Ok(s * t))).collect::<Result<_>>()?)
            }
            Symbol::Reciprocal(a) if !self.is_radial() => a
                .on_grid(grid)?
                .into_iter()
                .map(|c| match c {
                    SymbolCell::Value(v) => reciprocal(v).map(SymbolCell::Value),
                    other => Ok(other),
                })
                .collect(),
            Symbol::Reflected(a) if !self.is_radial() => {
                let mirror = CosetGrid::new(Ball::new(grid.support_exp(), grid.center().neg()), grid.cell_exp())?;
                let vals = a.on_grid(&mirror)?;
                (0..grid.len())
                    .map(|i| {
                        let j = mirror.index_of(&grid.representative(i).neg())?.expect("mirror covers the reflection");
                        Ok(vals[j])
                    })
                    .collect()
            }
            _ => grid
                .cell_norm_exponents()
                .into_iter()
                .map(|e| match e {
                    None => Ok(SymbolCell::Origin),
                    Some(e) => self.radial_value(p, n, e).map(SymbolCell::Value),
                })
                .collect(),
        }
    }
}

fn reciprocal(v: Complex64) -> Result<Complex64> {
    if v.norm() == 0.0 {
        return Err(Error::InvalidSymbol(format!("reciprocal of a vanishing symbol value {}", v)));
    }
    Ok(v.inv())
}

fn combine(
    u: SymbolCell,
    v: SymbolCell,
    op: impl Fn(Complex64, Complex64) -> Result<Complex64>,
) -> Result<SymbolCell> {
    Ok(match (u, v) {
        (SymbolCell::Value(a), SymbolCell::Value(b)) => SymbolCell::Value(op(a, b)?),
        (SymbolCell::Origin, _) | (_, SymbolCell::Origin) => SymbolCell::Origin,
        _ => SymbolCell::Uncovered,
    })
}

/// A symbol given by a table over the annulus `p^A ≤ |ξ|_p ≤ p^B`, constant on
/// cosets of radius `p^r` (`r < A`).
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedSymbol {
    inner_exp: i64,
    outer_exp: i64,
    resolution: i64,
    grid: CosetGrid,
    values: Vec<Complex64>,
}

impl TabulatedSymbol {
    /// `values` follows the canonical cell order of the grid on `B_B(0)` with cells
    /// of radius `p^r`; entries on cells below the annulus are ignored.
    pub fn new(
        p: Prime,
        n: usize,
        inner_exp: i64,
        outer_exp: i64,
        resolution: i64,
        values: Vec<Complex64>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if inner_exp > outer_exp {
            return Err(Error::InvalidSymbol(format!("empty annulus p^{} ≤ |ξ| ≤ p^{}", inner_exp, outer_exp)));
        }
        if resolution >= inner_exp {
            return Err(Error::InvalidSymbol(format!(
                "resolution p^{} must be finer than the inner radius p^{}",
                resolution, inner_exp
            )));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidSymbol("non-finite value".into()));
        }
        let grid = CosetGrid::centered(p, n, outer_exp, resolution)?;
        if values.len() != grid.len() {
            return Err(Error::CoefficientCount { expected: grid.len(), got: values.len() });
        }
        Ok(TabulatedSymbol { inner_exp, outer_exp, resolution, grid, values })
    }

    /// Tabulate `f` at the cell representatives of the annulus.
    pub fn from_fn(
        p: Prime,
        n: usize,
        inner_exp: i64,
        outer_exp: i64,
        resolution: i64,
        mut f: impl FnMut(&PAdicVector) -> Complex64,
    ) -> Result<Self> {
        let grid = CosetGrid::centered(p, n, outer_exp, resolution.min(inner_exp - 1))?;
        let norms = grid.cell_norm_exponents();
        let values = (0..grid.len())
            .map(|i| match norms[i] {
                Some(e) if e >= inner_exp => f(&grid.representative(i)),
                _ => Complex64::new(0.0, 0.0),
            })
            .collect();
        Self::new(p, n, inner_exp, outer_exp, resolution, values)
    }

    /// Tabulate another symbol on the annulus.
    pub fn from_symbol(sym: &Symbol, p: Prime, n: usize, inner_exp: i64, outer_exp: i64, resolution: i64) -> Result<Self> {
        let mut err = None;
        let t = Self::from_fn(p, n, inner_exp, outer_exp, resolution, |xi| match sym.eval(xi) {
            Ok(v) => v,
            Err(e) => {
                err.get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        })?;
        match err {
            Some(e) => Err(e),
            None => Ok(t),
        }
    }

    pub fn inner_exp(&self) -> i64 {
        self.inner_exp
    }

    pub fn outer_exp(&self) -> i64 {
        self.outer_exp
    }

    pub fn resolution(&self) -> i64 {
        self.resolution
    }

    pub fn grid(&self) -> &CosetGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Overwrite the value on one table cell.
    pub fn set(&mut self, cell: usize, v: Complex64) {
        self.values[cell] = v;
    }

    /// Table cell holding `ξ`, if `ξ` lies in the annulus.
    pub fn cell_of(&self, xi: &PAdicVector) -> Result<Option<usize>> {
        match xi.norm_exponent() {
            None => Err(Error::Origin),
            Some(e) if e < self.inner_exp || e > self.outer_exp => Ok(None),
            Some(_) => self.grid.index_of(xi),
        }
    }

    pub fn eval(&self, xi: &PAdicVector) -> Result<Complex64> {
        match self.cell_of(xi)? {
            Some(i) => Ok(self.values[i]),
            None => Err(Error::Coverage(Ball::new(self.resolution, xi.clone()))),
        }
    }

    fn on_grid(&self, grid: &CosetGrid) -> Result<Vec<SymbolCell>> {
        let map = grid.map_from(&self.grid)?;
        let norms = grid.cell_norm_exponents();
        Ok(map
            .into_iter()
            .zip(norms)
            .map(|(m, e)| match (m, e) {
                (_, None) => SymbolCell::Origin,
                (Some(i), Some(e)) if e >= self.inner_exp => SymbolCell::Value(self.values[i]),
                _ => SymbolCell::Uncovered,
            })
            .collect())
    }
}
