//! Riccati–Padé eigensolver for the s-states of
//! `H_q = -∇² + q²/4 + λ/q`.
//!
//! With `u = qψ` and `f = 1/q - u'/u` the radial equation becomes the Riccati
//! equation `f' + 2f/q - f² + q²/4 + λ/q - ε = 0`. Expanding
//! `f = Σ f_j q^j` gives the recursion
//!
//! ```text
//! f₀ = -λ/2
//! f_{j+1} = (Σ_{i≤j} f_i f_{j-i} + ε δ_{j0} - δ_{j2}/4) / (j + 3)
//! ```
//!
//! and the eigenvalues are the limits, as `D` grows, of the roots of the
//! Hankel determinants `H_D^d(ε) = det[f_{i+j+d}]_{i,j=1..D}`.

use thiserror::Error;

use crate::harmonium_rr::{rr_ground, RrConfig, RrError};
use crate::numerics::{det_lu, newton_root_capped, BigReal, Matrix, Precision};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RpmError {
    #[error("coupling λ must be non-negative")]
    NegativeLambda,
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("series has {available} coefficients beyond f₀, Hankel order {order} with displacement {displacement} needs {needed}")]
    SeriesTooShort {
        available: usize,
        needed: usize,
        order: usize,
        displacement: usize,
    },
    #[error("no certified ground-state root up to Hankel order {max_order}")]
    NoConvergence { max_order: usize },
    #[error("root tracking lost the ground-state branch at Hankel order {order}")]
    RootLost { order: usize },
    #[error("initial guess: {0}")]
    Seed(#[from] RrError),
}

#[derive(Debug, Clone)]
pub struct RadialProblem {
    lambda: BigReal,
}

impl RadialProblem {
    pub fn new(lambda: BigReal) -> Result<Self, RpmError> {
        if lambda.is_negative() {
            Err(RpmError::NegativeLambda)
        } else {
            Ok(RadialProblem { lambda })
        }
    }

    pub fn lambda(&self) -> &BigReal {
        &self.lambda
    }
}

#[derive(Debug, Clone)]
pub struct RiccatiSeries {
    pub coeffs: Vec<BigReal>,
    /// `∂f_j/∂ε`
    pub dcoeffs: Vec<BigReal>,
    pub lambda: BigReal,
    pub eps: BigReal,
}

impl RiccatiSeries {
    /// Highest coefficient index `J`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Coefficients `f₀..f_J` and their `ε`-derivatives.
pub fn riccati_series(problem: &RadialProblem, eps: &BigReal, order: usize) -> RiccatiSeries {
    let p = eps.precision().max(problem.lambda.precision());
    let lambda = problem.lambda.with_precision(p);
    let eps = eps.with_precision(p);
    let mut f = Vec::with_capacity(order + 1);
    let mut df = Vec::with_capacity(order + 1);
    f.push(-(&lambda / 2));
    df.push(BigReal::zero(p));
    for j in 0..order {
        let mut s = BigReal::zero(p);
        let mut ds = BigReal::zero(p);
        for i in 0..=j {
            s += &f[i] * &f[j - i];
            ds += &f[i] * &df[j - i];
        }
        ds = ds * 2;
        match j {
            0 => {
                s += &eps;
                ds += BigReal::one(p);
            }
            2 => s -= BigReal::ratio(1, 4, p),
            _ => {}
        }
        let den = j as i64 + 3;
        f.push(s / den);
        df.push(ds / den);
    }
    RiccatiSeries {
        coeffs: f,
        dcoeffs: df,
        lambda,
        eps,
    }
}

/// `det[f_{i+j+d}]`, `i, j = 1..D`.
pub fn hankel_determinant(
    series: &RiccatiSeries,
    order: usize,
    displacement: usize,
) -> Result<BigReal, RpmError> {
    let needed = 2 * order + displacement;
    if series.order() < needed || order == 0 {
        return Err(RpmError::SeriesTooShort {
            available: series.order(),
            needed,
            order,
            displacement,
        });
    }
    let m = Matrix::from_fn(order, |i, j| {
        series.coeffs[i + j + 2 + displacement].clone()
    });
    Ok(det_lu(&m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RpmConfig {
    /// Hankel displacement `d`.
    pub displacement: usize,
    pub min_order: usize,
    pub max_order: usize,
    pub target_digits: u32,
    pub precision: Precision,
}

impl RpmConfig {
    /// Defaults: `d = 0`, orders `2..=30`, `P = max(50, 3 target)`.
    pub fn new(target_digits: u32) -> Self {
        RpmConfig {
            displacement: 0,
            min_order: 2,
            max_order: 30,
            target_digits,
            precision: Precision::for_target(target_digits),
        }
    }

    pub fn with_precision(mut self, precision: Precision) -> Self {
        self.precision = precision;
        self
    }

    pub fn validate(&self) -> Result<(), RpmError> {
        if self.target_digits == 0 {
            return Err(RpmError::InvalidConfig("target digits must be positive"));
        }
        if self.min_order < 2 {
            return Err(RpmError::InvalidConfig(
                "minimum Hankel order must be at least 2",
            ));
        }
        if self.max_order < self.min_order {
            return Err(RpmError::InvalidConfig(
                "maximum Hankel order below minimum",
            ));
        }
        if self.precision.decimal_digits() < 3 * self.target_digits {
            return Err(RpmError::InvalidConfig(
                "working precision must be at least three times the target digits",
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Rpm,
    Rr,
    Exact,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Rpm => "rpm",
            Method::Rr => "rr",
            Method::Exact => "exact",
        }
    }
}

/// Root (or Ritz value) obtained at one Hankel order (or basis size).
#[derive(Debug, Clone)]
pub struct OrderStep {
    pub order: usize,
    pub value: BigReal,
}

#[derive(Debug, Clone)]
pub struct EnergyResult {
    pub value: BigReal,
    pub certified_digits: u32,
    pub method: Method,
    pub orders_used: Vec<OrderStep>,
}

/// `floor(-log10(rel)) - 2`, clamped to `[0, P - 10]`.
pub fn certified_digits(rel: &BigReal, p: Precision) -> u32 {
    let cap = p.decimal_digits().saturating_sub(10);
    if rel.is_zero() {
        return cap;
    }
    let d = (-rel.log10()).floor().to_f64() - 2.0;
    (d.max(0.0) as u32).min(cap)
}

const NEWTON_CAP: usize = 60;

/// Ground-state eigenvalue of `H_q` by root tracking in the Hankel order.
pub fn rpm_ground(
    problem: &RadialProblem,
    config: &RpmConfig,
    guess: Option<&BigReal>,
) -> Result<EnergyResult, RpmError> {
    config.validate()?;
    let p = config.precision;
    let problem = RadialProblem {
        lambda: problem.lambda.with_precision(p),
    };

    // seed and the half-width of the window a root must fall in to count as
    // the ground-state branch
    let (seed, window) = match guess {
        Some(g) => {
            let g = g.with_precision(p);
            let w = (g.abs() / 4).max(BigReal::ratio(1, 4, p));
            (g, w)
        }
        None => {
            let rr10 = rr_ground(&problem, &RrConfig::new(10, p)?)?;
            let rr8 = rr_ground(&problem, &RrConfig::new(8, p)?)?;
            let w = ((&rr10 - &rr8).abs() * 100).max(BigReal::ratio(1, 4, p));
            (rr10, w)
        }
    };

    let h = BigReal::pow10(-(p.decimal_digits() as i32) / 2, p);
    let tol_floor = BigReal::pow10(-(config.target_digits as i32) - 6, p).max(p.tolerance(10));
    let threshold = BigReal::pow10(-(config.target_digits as i32) - 2, p);

    let mut steps: Vec<OrderStep> = Vec::new();
    let mut streak = 0;
    let mut last_rel: Option<BigReal> = None;
    for order in config.min_order..=config.max_order {
        let len = 2 * order + config.displacement;
        let hankel = |x: &BigReal| -> BigReal {
            let s = riccati_series(&problem, x, len);
            hankel_determinant(&s, order, config.displacement).expect("series sized for order")
        };
        let eval = |x: &BigReal| -> (BigReal, BigReal) {
            let hx = &h * &x.abs().max(BigReal::one(p));
            let d = (hankel(&(x + &hx)) - hankel(&(x - &hx))) / (&hx * 2);
            (hankel(x), d)
        };
        let start = steps
            .last()
            .map(|s| s.value.clone())
            .unwrap_or_else(|| seed.clone());
        let tol = &tol_floor * &start.abs().max(BigReal::one(p));
        let on_branch = |r: &BigReal| (r - &seed).abs() <= window;

        let mut root = newton_root_capped(eval, &start, &tol, None, NEWTON_CAP)
            .ok()
            .filter(on_branch);
        if root.is_none() {
            let half = match steps.len() {
                0 | 1 => window.clone(),
                n => (&steps[n - 1].value - &steps[n - 2].value).abs() * 10,
            };
            if !half.is_zero() {
                let bracket = (&start - &half, &start + &half);
                root = newton_root_capped(eval, &start, &tol, Some(bracket), 4 * NEWTON_CAP)
                    .ok()
                    .filter(on_branch);
            }
        }
        let Some(root) = root else {
            if steps.len() >= 2 {
                return Err(RpmError::RootLost { order });
            }
            // low orders may have no root near the ground state yet
            streak = 0;
            continue;
        };

        if let Some(prev) = steps.last() {
            let rel = if root.is_zero() {
                (&root - &prev.value).abs()
            } else {
                ((&root - &prev.value) / &root).abs()
            };
            streak = if rel < threshold { streak + 1 } else { 0 };
            last_rel = Some(rel);
        }
        steps.push(OrderStep { order, value: root });
        if streak >= 2 {
            break;
        }
    }

    if steps.is_empty() {
        return Err(RpmError::RootLost {
            order: config.min_order,
        });
    }
    if streak < 2 {
        return Err(RpmError::NoConvergence {
            max_order: config.max_order,
        });
    }
    let rel = last_rel.expect("streak implies a difference");
    Ok(EnergyResult {
        value: steps.last().expect("non-empty").value.clone(),
        certified_digits: certified_digits(&rel, p),
        method: Method::Rpm,
        orders_used: steps,
    })
}
