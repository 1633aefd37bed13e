//! Piecewise-affine full-branch maps of `[0,1]` with Lebesgue measure.
//!
//! `h`, conditional expectations and the criteria are evaluated pointwise from
//! the branch structure: the preimages of `y` are `z_b = (y − c_b)/s_b` for each
//! branch `b` whose image contains `y`, weighted by `1/|s_b|`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::{FiniteMeasureSpace, PointMap};
use crate::par::Execution;
use crate::property::Property;

const EDGE_TOL: f64 = 1e-12;

/// One affine piece `x ↦ slope·x + intercept` on `[start, end)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Branch {
    pub start: f64,
    pub end: f64,
    pub slope: f64,
    pub intercept: f64,
}

impl Branch {
    pub fn apply(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }

    /// Image interval as `(lo, hi)`.
    pub fn image(&self) -> (f64, f64) {
        let (p, q) = (self.apply(self.start), self.apply(self.end));
        (p.min(q), p.max(q))
    }

    fn preimage(&self, y: f64) -> Option<f64> {
        let (lo, hi) = self.image();
        (y >= lo - EDGE_TOL && y <= hi + EDGE_TOL)
            .then(|| ((y - self.intercept) / self.slope).clamp(self.start, self.end))
    }
}

/// A map of `[0,1]` assembled from finitely many monotone affine branches
/// whose domains tile `[0,1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchMap {
    name: String,
    branches: Vec<Branch>,
}

impl BranchMap {
    pub fn new(name: impl Into<String>, branches: Vec<Branch>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidBranchMap(msg));
        if branches.is_empty() {
            return bad("no branches".into());
        }
        let mut edge = 0.0;
        for (k, b) in branches.iter().enumerate() {
            if !(b.slope.is_finite() && b.intercept.is_finite()) || b.slope == 0.0 {
                return bad(format!("branch {k} has slope {}", b.slope));
            }
            if (b.start - edge).abs() > EDGE_TOL || b.end <= b.start {
                return bad(format!(
                    "branch {k} covers [{}, {}) but should start at {edge}",
                    b.start, b.end
                ));
            }
            let (lo, hi) = b.image();
            if lo < -EDGE_TOL || hi > 1.0 + EDGE_TOL {
                return bad(format!("branch {k} maps onto [{lo}, {hi}] ⊄ [0,1]"));
            }
            edge = b.end;
        }
        if (edge - 1.0).abs() > EDGE_TOL {
            return bad(format!("branches end at {edge}, not 1"));
        }
        Ok(Self {
            name: name.into(),
            branches,
        })
    }

    /// `x ↦ 2x` on `[0,½)`, `x ↦ 2x − 1` on `[½,1]`.
    pub fn doubling() -> Self {
        Self::new(
            "doubling",
            vec![
                Branch { start: 0.0, end: 0.5, slope: 2.0, intercept: 0.0 },
                Branch { start: 0.5, end: 1.0, slope: 2.0, intercept: -1.0 },
            ],
        )
        .expect("doubling map is valid")
    }

    /// `x ↦ 1 − 2x` on `[0,½)`, `x ↦ 2x − 1` on `[½,1]`.
    pub fn tent() -> Self {
        Self::new(
            "tent",
            vec![
                Branch { start: 0.0, end: 0.5, slope: -2.0, intercept: 1.0 },
                Branch { start: 0.5, end: 1.0, slope: 2.0, intercept: -1.0 },
            ],
        )
        .expect("tent map is valid")
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "doubling" => Ok(Self::doubling()),
            "tent" => Ok(Self::tent()),
            other => Err(Error::Input(format!(
                "unknown example '{other}' (expected doubling or tent)"
            ))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    fn branch_of(&self, x: f64) -> &Branch {
        self.branches
            .iter()
            .find(|b| x < b.end)
            .unwrap_or_else(|| self.branches.last().expect("nonempty"))
    }

    pub fn apply(&self, x: f64) -> f64 {
        self.branch_of(x).apply(x)
    }

    /// Preimages of `y` with their weights `1/|s|`.
    pub fn preimages(&self, y: f64) -> Vec<(f64, f64)> {
        self.branches
            .iter()
            .filter_map(|b| b.preimage(y).map(|z| (z, 1.0 / b.slope.abs())))
            .collect()
    }
}

/// Values sampled at the midpoints `x_k = (k + ½)/N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridFunction {
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Input(format!(
                "grid needs at least 2 points, got {}",
                values.len()
            )));
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Input(format!("grid value {k} is not finite")));
        }
        Ok(Self { values })
    }

    pub fn sample(n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(grid_points(n).into_iter().map(f).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Piecewise-linear interpolation through the samples, extended linearly
    /// past the outermost midpoints.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.values.len();
        let t = x * n as f64 - 0.5;
        let k = (t.floor().max(0.0) as usize).min(n - 2);
        let frac = t - k as f64;
        self.values[k] + frac * (self.values[k + 1] - self.values[k])
    }
}

/// Midpoints `(k + ½)/N`.
pub fn grid_points(n: usize) -> Vec<f64> {
    (0..n).map(|k| (k as f64 + 0.5) / n as f64).collect()
}

/// Weight functions on `[0,1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum WeightFn {
    Const { value: f64 },
    /// `e^{rate·x}`.
    Exp { rate: f64 },
    /// `a + b·x`.
    Affine { a: f64, b: f64 },
    /// `values[k]` on `[breaks[k−1], breaks[k])`, with `breaks` strictly
    /// increasing inside `(0,1)` and one more value than breaks.
    Piecewise { breaks: Vec<f64>, values: Vec<f64> },
    Grid { grid: GridFunction },
}

impl WeightFn {
    pub fn piecewise(breaks: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.len() != breaks.len() + 1 {
            return Err(Error::Input(format!(
                "piecewise weight needs {} values for {} breaks, got {}",
                breaks.len() + 1,
                breaks.len(),
                values.len()
            )));
        }
        let ordered = breaks.windows(2).all(|w| w[0] < w[1]);
        if !ordered || breaks.iter().any(|b| !(0.0..=1.0).contains(b)) {
            return Err(Error::Input(
                "piecewise breaks must increase within [0,1]".into(),
            ));
        }
        Ok(WeightFn::Piecewise { breaks, values })
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            WeightFn::Const { value } => *value,
            WeightFn::Exp { rate } => (rate * x).exp(),
            WeightFn::Affine { a, b } => a + b * x,
            WeightFn::Piecewise { breaks, values } => {
                values[breaks.partition_point(|&b| b <= x)]
            }
            WeightFn::Grid { grid } => grid.eval(x),
        }
    }
}

/// `h(x) = Σ 1/|s|` over branches whose image contains `x`.
pub fn h_interval(m: &BranchMap, x: f64) -> f64 {
    m.preimages(x).iter().map(|(_, w)| w).sum()
}

/// `(E(f) ∘ φ⁻¹)(y)`: the weighted fiber average over `φ⁻¹(y)`, zero off the
/// image.
pub fn push_interval(m: &BranchMap, f: &dyn Fn(f64) -> f64, y: f64) -> f64 {
    let pre = m.preimages(y);
    let mass: f64 = pre.iter().map(|(_, w)| w).sum();
    if mass == 0.0 {
        return 0.0;
    }
    pre.iter().map(|&(z, w)| w * f(z)).sum::<f64>() / mass
}

/// `E(f)(x) = (E(f) ∘ φ⁻¹)(φ(x))`.
pub fn cond_exp_interval(m: &BranchMap, f: &dyn Fn(f64) -> f64, x: f64) -> f64 {
    push_interval(m, f, m.apply(x))
}

/// `J = h · E(u) ∘ φ⁻¹`.
pub fn j_interval(m: &BranchMap, u: &dyn Fn(f64) -> f64, x: f64) -> f64 {
    h_interval(m, x) * push_interval(m, u, x)
}

/// Outcome of a pointwise criterion on the sample grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalVerdict {
    pub property: Property,
    pub verdict: bool,
    #[serde(with = "crate::report::residual_serde")]
    pub residual: f64,
    /// Grid point of the largest violation.
    pub witness_x: f64,
    /// The grid point nearest 0 and the violation there.
    pub probe_x: f64,
    #[serde(with = "crate::report::residual_serde")]
    pub probe_residual: f64,
    pub grid: usize,
}

/// Pointwise violation of `property` at `x`, assuming `u > 0`.
fn violation(property: Property, m: &BranchMap, u: &dyn Fn(f64) -> f64, x: f64) -> f64 {
    let ux = u(x);
    let h = |y: f64| h_interval(m, y);
    let j = j_interval(m, u, x);
    match property {
        Property::Isometry => (j - ux).abs(),
        Property::Unitary => {
            let y = m.apply(x);
            (j - ux).abs().max((u(y) * h(y) - ux).abs())
        }
        Property::PartialIsometry => {
            if j.abs() > EDGE_TOL {
                (j - ux).abs()
            } else {
                0.0
            }
        }
        Property::SelfAdjoint => {
            if j.abs() > EDGE_TOL && (m.apply(m.apply(x)) - x).abs() > 1e-9 {
                f64::INFINITY
            } else {
                (j - ux).abs()
            }
        }
        Property::Normal => {
            let y = m.apply(x);
            let lhs = h(y) / u(y) * ux;
            let rhs = j / ux;
            (lhs - rhs).abs()
        }
        Property::Quasinormal => {
            let g = |z: f64| j_interval(m, u, z) / u(z);
            let lhs = g(x) * h(x);
            let rhs = push_interval(m, &g, x) * h(x);
            (lhs - rhs).abs()
        }
        Property::Hyponormal => unreachable!("rejected before evaluation"),
    }
}

/// Evaluates the criterion for `property` with `A = M_u` at every midpoint of
/// an `n`-point grid.
pub fn crit_interval(
    property: Property,
    m: &BranchMap,
    u: &WeightFn,
    n: usize,
    tol: f64,
    exec: Execution,
) -> Result<IntervalVerdict> {
    if property == Property::Hyponormal {
        return Err(Error::Input(
            "no measure-theoretic criterion exists for hyponormal".into(),
        ));
    }
    if n < 2 {
        return Err(Error::Input(format!("grid needs at least 2 points, got {n}")));
    }
    let xs = grid_points(n);
    if let Some(&x) = xs.iter().find(|&&x| u.eval(x).is_nan() || u.eval(x) <= 0.0) {
        return Err(Error::Input(format!(
            "weight must be positive on the grid; u({x}) = {}",
            u.eval(x)
        )));
    }
    let uf = |x: f64| u.eval(x);
    let profile = exec.map_indexed(n, |k| violation(property, m, &uf, xs[k]));
    let (at, residual) = profile
        .iter()
        .copied()
        .enumerate()
        .fold((0, 0.0), |best, (k, v)| if v > best.1 { (k, v) } else { best });
    Ok(IntervalVerdict {
        property,
        verdict: residual <= tol,
        residual,
        witness_x: xs[at],
        probe_x: xs[0],
        probe_residual: profile[0],
        grid: n,
    })
}

/// Finite model of the fiber structure on an `n`-point grid: atom `k` sits at
/// `x_k` with mass proportional to `1/|s(x_k)|`, and every atom is sent to the
/// first atom of its fiber, so conditional expectations agree with the
/// interval ones at the grid points.
pub fn discretize(m: &BranchMap, n: usize) -> Result<(FiniteMeasureSpace, PointMap)> {
    let xs = grid_points(n);
    let weights: Vec<f64> = xs
        .iter()
        .map(|&x| 1.0 / (n as f64 * m.branch_of(x).slope.abs()))
        .collect();
    let space = FiniteMeasureSpace::new(weights)?;
    let images: Vec<f64> = xs.iter().map(|&x| m.apply(x)).collect();
    let targets = (0..n)
        .map(|k| {
            (0..n)
                .find(|&l| (images[l] - images[k]).abs() <= 1e-9)
                .expect("k lies in its own fiber")
        })
        .collect();
    let phi = PointMap::new(&space, targets)?;
    Ok((space, phi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_examples() {
        let d = BranchMap::doubling();
        let t = BranchMap::tent();
        for x in grid_points(64) {
            assert_eq!(h_interval(&d, x), 1.0);
            assert_eq!(h_interval(&t, x), 1.0);
        }
        let half = BranchMap::new(
            "half",
            vec![Branch { start: 0.0, end: 1.0, slope: 0.5, intercept: 0.0 }],
        )
        .unwrap();
        assert_eq!(h_interval(&half, 0.3), 2.0);
        assert_eq!(h_interval(&half, 0.7), 0.0);
    }

    #[test]
    fn cond_exp_examples() {
        let id = |x: f64| x;
        assert!((cond_exp_interval(&BranchMap::doubling(), &id, 0.25) - 0.5).abs() < 1e-15);
        assert!((cond_exp_interval(&BranchMap::tent(), &id, 0.25) - 0.5).abs() < 1e-15);
        let flip = BranchMap::new(
            "flip",
            vec![Branch { start: 0.0, end: 1.0, slope: -1.0, intercept: 1.0 }],
        )
        .unwrap();
        let f = |x: f64| x * x + 3.0;
        for x in grid_points(16) {
            assert!((cond_exp_interval(&flip, &f, x) - f(x)).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_bad_branch_maps() {
        let gap = vec![
            Branch { start: 0.0, end: 0.4, slope: 2.0, intercept: 0.0 },
            Branch { start: 0.5, end: 1.0, slope: 2.0, intercept: -1.0 },
        ];
        assert!(BranchMap::new("gap", gap).is_err());
        let escape = vec![Branch { start: 0.0, end: 1.0, slope: 2.0, intercept: 0.0 }];
        assert!(BranchMap::new("escape", escape).is_err());
        let flat = vec![Branch { start: 0.0, end: 1.0, slope: 0.0, intercept: 0.5 }];
        assert!(BranchMap::new("flat", flat).is_err());
        assert!(BranchMap::by_name("baker").is_err());
    }

    #[test]
    fn grid_function_interpolates() {
        let g = GridFunction::sample(8, |x| 3.0 * x - 1.0).unwrap();
        for x in [0.0, 0.01, 0.33, 0.5, 0.97, 1.0] {
            assert!((g.eval(x) - (3.0 * x - 1.0)).abs() < 1e-14);
        }
        assert!(GridFunction::new(vec![1.0]).is_err());
        assert!(GridFunction::new(vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn weight_catalog() {
        assert_eq!(WeightFn::Const { value: 2.0 }.eval(0.3), 2.0);
        assert_eq!(WeightFn::Exp { rate: 1.0 }.eval(1.0), std::f64::consts::E);
        assert_eq!(WeightFn::Affine { a: 1.0, b: 2.0 }.eval(0.5), 2.0);
        let p = WeightFn::piecewise(vec![0.5], vec![1.0, 3.0]).unwrap();
        assert_eq!((p.eval(0.2), p.eval(0.5), p.eval(0.9)), (1.0, 3.0, 3.0));
        assert!(WeightFn::piecewise(vec![0.5], vec![1.0]).is_err());
        assert!(WeightFn::piecewise(vec![0.6, 0.2], vec![1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn doubling_constant_weight_is_unitary() {
        let one = WeightFn::Const { value: 1.0 };
        for p in [Property::Isometry, Property::Unitary, Property::Normal] {
            let v = crit_interval(p, &BranchMap::doubling(), &one, 1024, 1e-12, Execution::Sequential)
                .unwrap();
            assert!(v.verdict, "{p}");
            assert!(v.residual <= 1e-12);
        }
    }

    #[test]
    fn doubling_exponential_weight_is_not_normal() {
        let v = crit_interval(
            Property::Normal,
            &BranchMap::doubling(),
            &WeightFn::Exp { rate: 1.0 },
            1024,
            1e-9,
            Execution::Sequential,
        )
        .unwrap();
        assert!(!v.verdict);
        let expected = (1.0 + 0.5f64.exp()) / 2.0 - 1.0;
        assert!((v.probe_residual - expected).abs() < 1e-3);
        assert_eq!(v.probe_x, 0.5 / 1024.0);
    }

    #[test]
    fn tent_constant_weight_is_unitary() {
        let one = WeightFn::Const { value: 1.0 };
        let v = crit_interval(Property::Unitary, &BranchMap::tent(), &one, 256, 1e-12, Execution::Sequential)
            .unwrap();
        assert!(v.verdict);
        let s = crit_interval(Property::SelfAdjoint, &BranchMap::tent(), &one, 256, 1e-12, Execution::Sequential)
            .unwrap();
        assert!(!s.verdict && s.residual.is_infinite());
    }

    #[test]
    fn rejects_nonpositive_weight_and_hyponormal() {
        let d = BranchMap::doubling();
        let neg = WeightFn::Affine { a: -1.0, b: 1.0 };
        assert!(crit_interval(Property::Isometry, &d, &neg, 16, 1e-9, Execution::Sequential).is_err());
        let one = WeightFn::Const { value: 1.0 };
        assert!(crit_interval(Property::Hyponormal, &d, &one, 16, 1e-9, Execution::Sequential).is_err());
    }

    #[test]
    fn discretization_reproduces_expectations() {
        for m in [BranchMap::doubling(), BranchMap::tent()] {
            for n in [8, 16] {
                let (space, phi) = discretize(&m, n).unwrap();
                let f = |x: f64| x.powi(3) - x + 0.25;
                let xs = grid_points(n);
                let sampled: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
                let e = phi
                    .cond_expectation(&crate::measure::MeasurableFunction::from_real(&space, &sampled).unwrap())
                    .unwrap();
                for (k, &x) in xs.iter().enumerate() {
                    assert!((e.get(k).re - cond_exp_interval(&m, &f, x)).abs() < 1e-12);
                }
            }
        }
    }
}
