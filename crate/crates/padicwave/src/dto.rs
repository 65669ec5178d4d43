//! JSON shapes for test functions, symbols, wavelet indices, problems and
//! solutions, plus the short text forms accepted on the command line.

use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use padicwave_core::pseudodiff::{Symbol, TabulatedSymbol};
use padicwave_core::solver::Solution;
use padicwave_core::wavelets::{enumerate_indices, FrequencyIndex, TranslationIndex, WaveletIndex};
use padicwave_core::{Ball, CosetGrid, PAdicVector, Prime, TestFunction};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexDto {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexDto {
    fn from(z: Complex64) -> Self {
        ComplexDto { re: z.re, im: z.im }
    }
}

impl From<ComplexDto> for Complex64 {
    fn from(z: ComplexDto) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellDto {
    /// Per axis, base-p digits of `x_j - c_j` from position `-N` up, least
    /// significant first.
    pub cell: Vec<Vec<u64>>,
    pub re: f64,
    pub im: f64,
}

/// A test function on `B_N(center)` constant on cells of radius `p^l`.
///
/// `center` is omitted for functions supported on a ball around the origin;
/// otherwise it lists the canonical center as rationals (`"3/4"`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestFunctionDto {
    pub p: u64,
    pub n: usize,
    #[serde(rename = "N")]
    pub support_exp: i64,
    pub l: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<Vec<String>>,
    pub coeffs: Vec<CellDto>,
}

impl TestFunctionDto {
    pub fn from_function(f: &TestFunction) -> Self {
        let grid = f.grid();
        let center = (!grid.is_centered())
            .then(|| grid.center().components().iter().map(|c| c.to_string()).collect());
        let coeffs = f
            .values()
            .iter()
            .enumerate()
            .map(|(i, v)| CellDto { cell: grid.cell_digits(i), re: v.re, im: v.im })
            .collect();
        TestFunctionDto {
            p: grid.prime().get(),
            n: grid.dim(),
            support_exp: grid.support_exp(),
            l: grid.cell_exp(),
            center,
            coeffs,
        }
    }

    /// Cells not listed are zero; a cell listed twice is an error.
    pub fn to_function(&self) -> Result<TestFunction> {
        let p = Prime::new(self.p)?;
        let center = match &self.center {
            None => PAdicVector::zero(p, self.n),
            Some(c) => {
                if c.len() != self.n {
                    return Err(CliError::Parse(format!("center has {} components, n = {}", c.len(), self.n)));
                }
                let comps = c.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
                PAdicVector::new(p, comps)?
            }
        };
        let grid = CosetGrid::new(Ball::new(self.support_exp, center), self.l)?;
        let mut values = vec![Complex64::new(0.0, 0.0); grid.len()];
        let mut seen = vec![false; grid.len()];
        for c in &self.coeffs {
            let i = grid.index_from_digits(&c.cell)?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(CliError::Parse(format!("cell {:?} listed twice", c.cell)));
            }
            values[i] = Complex64::new(c.re, c.im);
        }
        Ok(TestFunction::new(grid, values)?)
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    s.trim().parse().map_err(|_| CliError::Parse(format!("not a rational number: {:?}", s)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WaveletIndexDto {
    pub gamma: i64,
    pub s: Vec<Vec<u64>>,
    #[serde(default)]
    pub a: Vec<Vec<u64>>,
}

impl WaveletIndexDto {
    pub fn from_index(idx: &WaveletIndex) -> Self {
        WaveletIndexDto { gamma: idx.gamma, s: idx.s.digits().to_vec(), a: idx.a.digits().to_vec() }
    }

    /// An empty `a` means translation zero.
    pub fn to_index(&self, p: Prime) -> Result<WaveletIndex> {
        let s = FrequencyIndex::from_digits(p, self.s.clone())?;
        let a = if self.a.is_empty() {
            TranslationIndex::zero(p, s.dim())
        } else {
            TranslationIndex::from_digits(p, self.a.clone())?
        };
        Ok(WaveletIndex::new(self.gamma, s, a)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnulusDto {
    #[serde(rename = "A")]
    pub inner: i64,
    #[serde(rename = "B")]
    pub outer: i64,
}

/// `kind` is one of `power`, `pv_power_n`, `log`, `constant`, `tabulated`.
/// Tabulated symbols list `values` over the grid on `B_B(0)` with cells of
/// radius `p^resolution`, in canonical cell order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolDto {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<ComplexDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<ComplexDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annulus: Option<AnnulusDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<ComplexDto>>,
}

impl SymbolDto {
    fn bare(kind: &str) -> Self {
        SymbolDto {
            kind: kind.to_string(),
            alpha: None,
            value: None,
            p: None,
            n: None,
            annulus: None,
            resolution: None,
            values: None,
        }
    }

    pub fn from_symbol(sym: &Symbol) -> Result<Self> {
        Ok(match sym {
            Symbol::Power(a) => SymbolDto { alpha: Some((*a).into()), ..Self::bare("power") },
            Symbol::PrincipalValuePowerN => Self::bare("pv_power_n"),
            Symbol::Log => Self::bare("log"),
            Symbol::Constant(c) => SymbolDto { value: Some((*c).into()), ..Self::bare("constant") },
            Symbol::Tabulated(t) => SymbolDto {
                p: Some(t.grid().prime().get()),
                n: Some(t.grid().dim()),
                annulus: Some(AnnulusDto { inner: t.inner_exp(), outer: t.outer_exp() }),
                resolution: Some(t.resolution()),
                values: Some(t.values().iter().map(|&v| v.into()).collect()),
                ..Self::bare("tabulated")
            },
            _ => return Err(CliError::Usage("composite symbols have no JSON form".into())),
        })
    }

    /// `p` and `n` fill in for a tabulated symbol that does not state them.
    pub fn to_symbol(&self, p: Option<Prime>, n: Option<usize>) -> Result<Symbol> {
        let missing = |what: &str| CliError::Parse(format!("{} symbol needs \"{}\"", self.kind, what));
        Ok(match self.kind.as_str() {
            "power" => Symbol::Power(self.alpha.ok_or_else(|| missing("alpha"))?.into()),
            "pv_power_n" => Symbol::PrincipalValuePowerN,
            "log" => Symbol::Log,
            "constant" => Symbol::Constant(self.value.ok_or_else(|| missing("value"))?.into()),
            "tabulated" => {
                let p = match self.p {
                    Some(q) => Prime::new(q)?,
                    None => p.ok_or_else(|| missing("p"))?,
                };
                let n = self.n.or(n).ok_or_else(|| missing("n"))?;
                let ann = self.annulus.ok_or_else(|| missing("annulus"))?;
                let r = self.resolution.ok_or_else(|| missing("resolution"))?;
                let values = self.values.as_ref().ok_or_else(|| missing("values"))?;
                let values = values.iter().map(|&v| v.into()).collect();
                Symbol::Tabulated(TabulatedSymbol::new(p, n, ann.inner, ann.outer, r, values)?)
            }
            other => return Err(CliError::Parse(format!("unknown symbol kind {:?}", other))),
        })
    }
}

/// Symbol from the command line: `power:<α>`, `pv`, `log`, `constant:<c>`, a
/// JSON object, or `@file.json`.
pub fn parse_symbol(text: &str, p: Option<Prime>, n: Option<usize>) -> Result<Symbol> {
    let text = text.trim();
    if let Some(path) = text.strip_prefix('@') {
        let body = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
        return serde_json::from_str::<SymbolDto>(&body)?.to_symbol(p, n);
    }
    if text.starts_with('{') {
        return serde_json::from_str::<SymbolDto>(text)?.to_symbol(p, n);
    }
    let (head, arg) = match text.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (text, None),
    };
    let arg = |name: &str| arg.ok_or_else(|| CliError::Parse(format!("{} needs a value: {}:<z>", name, name)));
    Ok(match head {
        "power" => Symbol::Power(parse_complex(arg("power")?)?),
        "constant" => Symbol::Constant(parse_complex(arg("constant")?)?),
        "pv" | "pv_power_n" => Symbol::PrincipalValuePowerN,
        "log" => Symbol::Log,
        _ => return Err(CliError::Parse(format!("unknown symbol {:?}", text))),
    })
}

/// `1.5`, `-2i`, `1+1i`, `0.5-2e-3i` or `re,im`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let bad = || CliError::Parse(format!("not a complex number: {:?}", text));
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some((re, im)) = t.split_once(',') {
        return Ok(Complex64::new(re.parse().map_err(|_| bad())?, im.parse().map_err(|_| bad())?));
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(t.parse().map_err(|_| bad())?, 0.0));
    };
    // split at the last sign that is not leading and not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let im_of = |s: &str| -> Result<f64> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            s => s.parse().map_err(|_| bad()),
        }
    };
    match split {
        Some(k) => Ok(Complex64::new(body[..k].parse().map_err(|_| bad())?, im_of(&body[k..])?)),
        None => Ok(Complex64::new(0.0, im_of(body)?)),
    }
}

/// `1,0;2` → `[[1, 0], [2]]`: axes separated by `;`, digits by `,`.
pub fn parse_digits(text: &str) -> Result<Vec<Vec<u64>>> {
    text.split(';')
        .map(|axis| {
            let axis = axis.trim();
            if axis.is_empty() {
                return Ok(Vec::new());
            }
            axis.split(',')
                .map(|d| d.trim().parse().map_err(|_| CliError::Parse(format!("bad digit {:?} in {:?}", d, text))))
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpanDto {
    pub gamma_min: i64,
    pub gamma_max: i64,
    pub m: Vec<u32>,
}

/// A problem `A u = f` over an explicit index list or over every index whose
/// wavelet meets the support of `rhs` in the given scale range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemDto {
    pub symbol: SymbolDto,
    pub rhs: TestFunctionDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub indices: Option<Vec<WaveletIndexDto>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span: Option<SpanDto>,
    pub tolerance: f64,
}

impl ProblemDto {
    pub fn parts(&self) -> Result<(Symbol, TestFunction, Vec<WaveletIndex>)> {
        let rhs = self.rhs.to_function()?;
        let p = rhs.prime();
        let symbol = self.symbol.to_symbol(Some(p), Some(rhs.dim()))?;
        let indices = match (&self.indices, &self.span) {
            (Some(list), None) => list.iter().map(|i| i.to_index(p)).collect::<Result<_>>()?,
            (None, Some(s)) => enumerate_indices(rhs.support(), s.gamma_min, s.gamma_max, &s.m)?,
            _ => return Err(CliError::Parse("a problem needs exactly one of \"indices\" and \"span\"".into())),
        };
        Ok((symbol, rhs, indices))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientDto {
    pub index: WaveletIndexDto,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionDto {
    pub solution: TestFunctionDto,
    pub coefficients: Vec<CoefficientDto>,
    pub residual: f64,
    pub dropped: Vec<WaveletIndexDto>,
}

impl SolutionDto {
    pub fn from_solution(s: &Solution) -> Self {
        SolutionDto {
            solution: TestFunctionDto::from_function(&s.solution),
            coefficients: s
                .coefficients
                .iter()
                .map(|(i, c)| CoefficientDto { index: WaveletIndexDto::from_index(i), re: c.re, im: c.im })
                .collect(),
            residual: s.residual,
            dropped: s.dropped.iter().map(WaveletIndexDto::from_index).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        let z = |s| parse_complex(s).unwrap();
        assert_eq!(z("1.5"), Complex64::new(1.5, 0.0));
        assert_eq!(z("1+1i"), Complex64::new(1.0, 1.0));
        assert_eq!(z("-2i"), Complex64::new(0.0, -2.0));
        assert_eq!(z("i"), Complex64::new(0.0, 1.0));
        assert_eq!(z("0.5-2e-3i"), Complex64::new(0.5, -2e-3));
        assert_eq!(z("1e-3+1e+2i"), Complex64::new(1e-3, 100.0));
        assert_eq!(z("3, -1"), Complex64::new(3.0, -1.0));
        assert!(parse_complex("1+xi").is_err());
    }

    #[test]
    fn digit_lists() {
        assert_eq!(parse_digits("1,0;2").unwrap(), vec![vec![1, 0], vec![2]]);
        assert_eq!(parse_digits("").unwrap(), vec![Vec::<u64>::new()]);
        assert!(parse_digits("1,x").is_err());
    }

    #[test]
    fn symbol_short_forms() {
        assert_eq!(parse_symbol("power:2", None, None).unwrap(), Symbol::Power(Complex64::new(2.0, 0.0)));
        assert_eq!(parse_symbol("log", None, None).unwrap(), Symbol::Log);
        assert_eq!(parse_symbol("pv", None, None).unwrap(), Symbol::PrincipalValuePowerN);
        assert!(parse_symbol("power", None, None).is_err());
        let json = r#"{"kind":"power","alpha":{"re":1.0,"im":1.0}}"#;
        assert_eq!(parse_symbol(json, None, None).unwrap(), Symbol::Power(Complex64::new(1.0, 1.0)));
    }

    #[test]
    fn function_round_trip_off_center() {
        let p = Prime::new(3).unwrap();
        let c = PAdicVector::from_ratios(p, &[(1, 9), (2, 3)]).unwrap();
        let f = TestFunction::indicator(&Ball::new(-1, c)).scale(Complex64::new(0.5, -1.0));
        let dto = TestFunctionDto::from_function(&f);
        assert!(dto.center.is_some());
        let json = serde_json::to_string(&dto).unwrap();
        let back: TestFunctionDto = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_function().unwrap(), f);
    }

    #[test]
    fn tabulated_symbol_round_trip() {
        let p = Prime::new(2).unwrap();
        let t = TabulatedSymbol::from_symbol(&Symbol::power_re(1.0), p, 1, -1, 1, -2).unwrap();
        let sym = Symbol::Tabulated(t);
        let dto = SymbolDto::from_symbol(&sym).unwrap();
        let json = serde_json::to_string(&dto).unwrap();
        let back: SymbolDto = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_symbol(None, None).unwrap(), sym);
    }

    #[test]
    fn duplicate_cells_rejected() {
        let f = TestFunction::omega(Prime::new(2).unwrap(), 1);
        let mut dto = TestFunctionDto::from_function(&f);
        dto.coeffs.push(dto.coeffs[0].clone());
        assert!(matches!(dto.to_function(), Err(CliError::Parse(_))));
    }
}
