//! Seeded random instances.
//!
//! Every draw goes through [`SeededRng`] in a fixed order, so a spec and seed
//! always give the same matrix, bit for bit. The draw order per kind:
//!
//! * `symmetric`: entries `(i, j)` for `i <= j`, row-major, mirrored.
//! * `cut`: a random proper subset (one coin per index, redrawn until proper).
//! * `balanced`: a symmetric matrix, then a cut count `m` in `1..=n`, then per
//!   cut a proper subset followed by its coefficient.
//! * `weak_sum`: `alpha` (n draws), `beta` (n draws), then the diagonal.
//! * perturbation: after the base, a row `i`, then a column among the other
//!   `n - 1`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::InstanceFile;
use crate::model::{build_cut_matrix, build_sum_matrix, IndexSubset, SquareMatrix};
use crate::rng::SeededRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseKind {
    Balanced,
    WeakSum,
    Symmetric,
    Cut,
}

impl FromStr for BaseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "balanced" => Ok(Self::Balanced),
            "weak_sum" | "weaksum" => Ok(Self::WeakSum),
            "symmetric" => Ok(Self::Symmetric),
            "cut" => Ok(Self::Cut),
            other => Err(Error::Domain(format!("unknown instance kind {other:?}"))),
        }
    }
}

/// Closed range of generated entries. Integer bounds give integer matrices,
/// so recognition on them is exact.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum EntryRange {
    Integer { lo: i64, hi: i64 },
    Real { lo: f64, hi: f64 },
}

impl Default for EntryRange {
    fn default() -> Self {
        EntryRange::Integer { lo: 0, hi: 9 }
    }
}

impl EntryRange {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            EntryRange::Integer { lo, hi } => lo <= hi,
            EntryRange::Real { lo, hi } => lo.is_finite() && hi.is_finite() && lo <= hi,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("invalid entry range {self}")))
        }
    }

    fn draw(&self, rng: &mut SeededRng) -> f64 {
        match *self {
            EntryRange::Integer { lo, hi } => rng.int_in(lo, hi) as f64,
            EntryRange::Real { lo, hi } => rng.real_in(lo, hi),
        }
    }

    /// A positive cut coefficient scaled to the range.
    fn draw_coefficient(&self, rng: &mut SeededRng) -> f64 {
        match *self {
            EntryRange::Integer { lo, hi } => {
                rng.int_in(1, lo.unsigned_abs().max(hi.unsigned_abs()).max(1) as i64) as f64
            }
            EntryRange::Real { lo, hi } => {
                let w = lo.abs().max(hi.abs());
                let w = if w > 0.0 { w } else { 1.0 };
                w * (1.0 - rng.unit())
            }
        }
    }
}

/// `LO:HI`; integer mode when both bounds parse as integers.
impl FromStr for EntryRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| Error::Domain(format!("range must look like LO:HI, found {s:?}")))?;
        let range = match (lo.trim().parse::<i64>(), hi.trim().parse::<i64>()) {
            (Ok(lo), Ok(hi)) => EntryRange::Integer { lo, hi },
            _ => {
                let parse = |t: &str| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Domain(format!("bad range bound {t:?}")))
                };
                EntryRange::Real {
                    lo: parse(lo)?,
                    hi: parse(hi)?,
                }
            }
        };
        range.validate()?;
        Ok(range)
    }
}

impl fmt::Display for EntryRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntryRange::Integer { lo, hi } => write!(f, "{lo}:{hi}"),
            EntryRange::Real { lo, hi } => write!(f, "{lo}:{hi}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorSpec {
    pub kind: BaseKind,
    pub n: usize,
    pub seed: u64,
    pub range: EntryRange,
    /// Bump one off-diagonal entry by this amount after building the base.
    pub perturb: Option<f64>,
}

impl GeneratorSpec {
    pub fn new(kind: BaseKind, n: usize, seed: u64) -> Self {
        Self {
            kind,
            n,
            seed,
            range: EntryRange::default(),
            perturb: None,
        }
    }

    pub fn with_range(mut self, range: EntryRange) -> Self {
        self.range = range;
        self
    }

    pub fn perturbed(mut self, magnitude: f64) -> Self {
        self.perturb = Some(magnitude);
        self
    }
}

fn random_proper_subset(n: usize, rng: &mut SeededRng) -> IndexSubset {
    loop {
        let mask: Vec<bool> = (0..n).map(|_| rng.coin()).collect();
        let subset = IndexSubset::from_mask(&mask);
        if !subset.is_empty() && subset.is_proper() {
            return subset;
        }
    }
}

fn symmetric(n: usize, range: &EntryRange, rng: &mut SeededRng) -> SquareMatrix {
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let x = range.draw(rng);
            data[i * n + j] = x;
            data[j * n + i] = x;
        }
    }
    SquareMatrix::from_parts(n, data)
}

fn cut(n: usize, rng: &mut SeededRng) -> Result<SquareMatrix> {
    if n < 2 {
        return SquareMatrix::zeros(n);
    }
    build_cut_matrix(&random_proper_subset(n, rng))
}

fn balanced(n: usize, range: &EntryRange, rng: &mut SeededRng) -> Result<SquareMatrix> {
    let mut a = symmetric(n, range, rng);
    if n < 2 {
        return Ok(a);
    }
    let cuts = 1 + rng.below(n as u64);
    for _ in 0..cuts {
        let subset = random_proper_subset(n, rng);
        let coefficient = range.draw_coefficient(rng);
        a = a.add_scaled(coefficient, &build_cut_matrix(&subset)?)?;
    }
    Ok(a)
}

fn weak_sum(n: usize, range: &EntryRange, rng: &mut SeededRng) -> Result<SquareMatrix> {
    let alpha: Vec<f64> = (0..n).map(|_| range.draw(rng)).collect();
    let beta: Vec<f64> = (0..n).map(|_| range.draw(rng)).collect();
    let base = build_sum_matrix(&alpha, &beta)?;
    let mut data = base.as_slice().to_vec();
    for i in 0..n {
        data[i * n + i] = range.draw(rng);
    }
    Ok(SquareMatrix::from_parts(n, data))
}

pub fn generate(spec: &GeneratorSpec) -> Result<InstanceFile> {
    let n = spec.n;
    if n == 0 {
        return Err(Error::Domain("instance order must be at least 1".into()));
    }
    spec.range.validate()?;
    if let Some(m) = spec.perturb {
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::Domain(format!("perturbation must be positive, found {m}")));
        }
        if n < 2 {
            return Err(Error::Domain(
                "perturbation needs an off-diagonal entry (n >= 2)".into(),
            ));
        }
    }

    let mut rng = SeededRng::new(spec.seed);
    let a = match spec.kind {
        BaseKind::Balanced => balanced(n, &spec.range, &mut rng)?,
        BaseKind::WeakSum => weak_sum(n, &spec.range, &mut rng)?,
        BaseKind::Symmetric => symmetric(n, &spec.range, &mut rng),
        BaseKind::Cut => cut(n, &mut rng)?,
    };
    let a = match spec.perturb {
        Some(m) => {
            let i = rng.below(n as u64) as usize;
            let mut j = rng.below(n as u64 - 1) as usize;
            if j >= i {
                j += 1;
            }
            let mut data = a.as_slice().to_vec();
            data[i * n + j] += m;
            SquareMatrix::from_parts(n, data)
        }
        None => a,
    };
    Ok(InstanceFile::single(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::emit_instance;
    use crate::recognize::{check_balanced_3cycle, recognize_weak_sum};
    use crate::DEFAULT_TOL;

    fn gen(spec: GeneratorSpec) -> SquareMatrix {
        generate(&spec).unwrap().a
    }

    #[test]
    fn deterministic() {
        for kind in [
            BaseKind::Balanced,
            BaseKind::WeakSum,
            BaseKind::Symmetric,
            BaseKind::Cut,
        ] {
            let spec = GeneratorSpec::new(kind, 6, 99).perturbed(0.5);
            let x = emit_instance(&generate(&spec).unwrap());
            let y = emit_instance(&generate(&spec).unwrap());
            assert_eq!(x, y);
        }
        let a = gen(GeneratorSpec::new(BaseKind::Symmetric, 5, 1));
        let b = gen(GeneratorSpec::new(BaseKind::Symmetric, 5, 2));
        assert_ne!(a, b);
    }

    #[test]
    fn balanced_integer_instances_are_exact() {
        for seed in 0..100 {
            let a =
                gen(GeneratorSpec::new(BaseKind::Balanced, 5, seed).with_range(EntryRange::Integer { lo: -4, hi: 7 }));
            assert!(a.as_slice().iter().all(|x| x.fract() == 0.0));
            match check_balanced_3cycle(&a, DEFAULT_TOL) {
                crate::recognize::BalanceVerdict::Balanced { max_residual } => assert_eq!(max_residual, 0.0),
                v => panic!("seed {seed}: {v:?}"),
            }
        }
    }

    #[test]
    fn cut_instances_are_balanced() {
        for seed in 0..100 {
            let a = gen(GeneratorSpec::new(BaseKind::Cut, 4, seed));
            assert!(check_balanced_3cycle(&a, DEFAULT_TOL).is_balanced());
            assert!(a.sum() > 0.0);
        }
    }

    #[test]
    fn weak_sum_accepted_and_perturbed_rejected() {
        for seed in 0..100 {
            let spec =
                GeneratorSpec::new(BaseKind::WeakSum, 4, seed).with_range(EntryRange::Real { lo: -3.0, hi: 3.0 });
            assert!(recognize_weak_sum(&gen(spec.clone()), DEFAULT_TOL).is_weak_sum());
            assert!(!recognize_weak_sum(&gen(spec.perturbed(1.0)), DEFAULT_TOL).is_weak_sum());
        }
    }

    #[test]
    fn perturbed_balanced_rejected() {
        for seed in 0..100 {
            let a = gen(GeneratorSpec::new(BaseKind::Balanced, 3, seed).perturbed(1.0));
            assert!(!check_balanced_3cycle(&a, DEFAULT_TOL).is_balanced());
        }
    }

    #[test]
    fn range_parsing_and_validation() {
        assert_eq!(
            "-2:5".parse::<EntryRange>().unwrap(),
            EntryRange::Integer { lo: -2, hi: 5 }
        );
        assert_eq!(
            "0:1.5".parse::<EntryRange>().unwrap(),
            EntryRange::Real { lo: 0.0, hi: 1.5 }
        );
        assert!("5:2".parse::<EntryRange>().is_err());
        assert!("5".parse::<EntryRange>().is_err());
        assert!(generate(&GeneratorSpec::new(BaseKind::Cut, 3, 0).perturbed(0.0)).is_err());
        assert!(generate(&GeneratorSpec::new(BaseKind::Cut, 1, 0).perturbed(1.0)).is_err());
        assert!(generate(&GeneratorSpec::new(BaseKind::Cut, 0, 0)).is_err());
        assert_eq!("weak-sum".parse::<BaseKind>().unwrap(), BaseKind::WeakSum);
    }
}
