//! Finite atomic measure spaces and the measure-theoretic objects built on them:
//! point maps, their fiber partitions, Radon–Nikodym derivatives of pushforward
//! measures and conditional expectations onto preimage σ-algebras.
//!
//! Atoms are indexed `0..n`. A σ-algebra on a finite space is identified with the
//! partition into its atoms, so `φ⁻¹(F)` is the partition of `X` into the nonempty
//! fibers `φ⁻¹({j})`.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative cutoff used by [`MeasurableFunction::support_default`].
pub const DEFAULT_SUPPORT_TOL: f64 = 1e-10;

/// A finite measure space with strictly positive atom masses.
#[derive(Clone, Debug)]
pub struct FiniteMeasureSpace {
    weights: Arc<[f64]>,
}

impl FiniteMeasureSpace {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptySpace);
        }
        if let Some((index, &mass)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w > 0.0))
        {
            return Err(Error::NonPositiveMass { index, mass });
        }
        Ok(Self {
            weights: weights.into(),
        })
    }

    /// `n` atoms of mass `1/n` each.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(vec![1.0 / n as f64; n])
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn mass(&self, atom: usize) -> f64 {
        self.weights[atom]
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub(crate) fn check_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }
}

impl PartialEq for FiniteMeasureSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.weights, &other.weights) || self.weights == other.weights
    }
}

/// A complex-valued function on the atoms of a [`FiniteMeasureSpace`].
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurableFunction {
    space: FiniteMeasureSpace,
    values: Vec<Complex64>,
}

impl MeasurableFunction {
    pub fn new(space: &FiniteMeasureSpace, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::DimensionMismatch {
                expected: space.len(),
                got: values.len(),
            });
        }
        Ok(Self {
            space: space.clone(),
            values,
        })
    }

    pub fn from_real(space: &FiniteMeasureSpace, values: &[f64]) -> Result<Self> {
        Self::new(space, values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn constant(space: &FiniteMeasureSpace, c: f64) -> Self {
        Self {
            space: space.clone(),
            values: vec![Complex64::new(c, 0.0); space.len()],
        }
    }

    pub fn zeros(space: &FiniteMeasureSpace) -> Self {
        Self::constant(space, 0.0)
    }

    /// Characteristic function of the single atom `k`.
    pub fn indicator(space: &FiniteMeasureSpace, k: usize) -> Self {
        let mut f = Self::zeros(space);
        f.values[k] = Complex64::new(1.0, 0.0);
        f
    }

    pub(crate) fn from_parts(space: FiniteMeasureSpace, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(space.len(), values.len());
        Self { space, values }
    }

    pub fn space(&self) -> &FiniteMeasureSpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, i: usize) -> Complex64 {
        self.values[i]
    }

    /// Real parts of the values.
    pub fn re(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.re).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest imaginary part in absolute value.
    pub fn max_imag(&self) -> f64 {
        self.values.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn map(&self, op: impl Fn(Complex64) -> Complex64) -> Self {
        Self::from_parts(self.space.clone(), self.values.iter().map(|&z| op(z)).collect())
    }

    pub fn zip_with(
        &self,
        other: &Self,
        op: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        self.space.check_same(&other.space)?;
        Ok(Self::from_parts(
            self.space.clone(),
            self.values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        ))
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// `f ∘ φ`.
    pub fn compose(&self, phi: &PointMap) -> Result<Self> {
        self.space.check_same(&phi.space)?;
        Ok(Self::from_parts(
            self.space.clone(),
            phi.targets.iter().map(|&t| self.values[t]).collect(),
        ))
    }

    /// Atoms where `|f(i)| > tol`.
    pub fn support(&self, tol: f64) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, z)| z.norm() > tol)
            .map(|(i, _)| i)
            .collect()
    }

    /// Support with cutoff `DEFAULT_SUPPORT_TOL · max |f|`.
    pub fn support_default(&self) -> Vec<usize> {
        self.support(DEFAULT_SUPPORT_TOL * self.max_abs())
    }

    /// `∫ f dμ`.
    pub fn integral(&self) -> Complex64 {
        self.values
            .iter()
            .zip(self.space.weights())
            .map(|(&z, &w)| z * w)
            .sum()
    }
}

/// A transformation of the atoms, `i ↦ φ(i)`.
///
/// Every point map on a finite space with strictly positive masses is
/// non-singular, so no further condition is checked.
#[derive(Clone, Debug, PartialEq)]
pub struct PointMap {
    space: FiniteMeasureSpace,
    targets: Vec<usize>,
}

impl PointMap {
    pub fn new(space: &FiniteMeasureSpace, targets: Vec<usize>) -> Result<Self> {
        let n = space.len();
        if targets.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: targets.len(),
            });
        }
        if let Some((atom, &target)) = targets.iter().enumerate().find(|(_, &t)| t >= n) {
            return Err(Error::TargetOutOfRange { atom, target, n });
        }
        Ok(Self {
            space: space.clone(),
            targets,
        })
    }

    pub fn identity(space: &FiniteMeasureSpace) -> Self {
        Self {
            space: space.clone(),
            targets: (0..space.len()).collect(),
        }
    }

    pub fn constant(space: &FiniteMeasureSpace, target: usize) -> Result<Self> {
        Self::new(space, vec![target; space.len()])
    }

    pub fn space(&self) -> &FiniteMeasureSpace {
        &self.space
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn apply(&self, i: usize) -> usize {
        self.targets[i]
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn after(&self, other: &PointMap) -> Result<PointMap> {
        self.space.check_same(&other.space)?;
        Ok(PointMap {
            space: self.space.clone(),
            targets: other.targets.iter().map(|&t| self.targets[t]).collect(),
        })
    }

    pub fn in_range(&self) -> Vec<bool> {
        let mut hit = vec![false; self.targets.len()];
        for &t in &self.targets {
            hit[t] = true;
        }
        hit
    }

    pub fn is_bijective(&self) -> bool {
        self.in_range().into_iter().all(|b| b)
    }

    /// Preimage lists `φ⁻¹({j})` for every atom `j` (possibly empty).
    pub fn preimages(&self) -> Vec<Vec<usize>> {
        let mut pre = vec![Vec::new(); self.targets.len()];
        for (i, &t) in self.targets.iter().enumerate() {
            pre[t].push(i);
        }
        pre
    }

    /// Atoms of the σ-algebra `φ⁻¹(F)`: the nonempty fibers of φ.
    pub fn fibers(&self) -> Partition {
        let blocks = self
            .preimages()
            .into_iter()
            .filter(|b| !b.is_empty())
            .collect();
        Partition::from_blocks_unchecked(self.targets.len(), blocks)
    }

    /// `h_φ(j) = μ(φ⁻¹{j}) / μ{j}`; zero exactly off the range of φ.
    pub fn radon_nikodym(&self) -> MeasurableFunction {
        let w = self.space.weights();
        let mut pushed = vec![0.0; w.len()];
        for (i, &t) in self.targets.iter().enumerate() {
            pushed[t] += w[i];
        }
        MeasurableFunction::from_parts(
            self.space.clone(),
            pushed
                .iter()
                .zip(w)
                .map(|(p, m)| Complex64::new(p / m, 0.0))
                .collect(),
        )
    }

    /// Fiber means `j ↦ Σ_{i∈φ⁻¹j} μ_i f(i) / μ(φ⁻¹j)`, `None` off the range.
    fn fiber_means(&self, f: &MeasurableFunction) -> Vec<Option<Complex64>> {
        let w = self.space.weights();
        let mut sums = vec![Complex64::new(0.0, 0.0); w.len()];
        let mut mass = vec![0.0; w.len()];
        for (i, &t) in self.targets.iter().enumerate() {
            sums[t] += f.values[i] * w[i];
            mass[t] += w[i];
        }
        sums.into_iter()
            .zip(mass)
            .map(|(s, m)| if m > 0.0 { Some(s / m) } else { None })
            .collect()
    }

    /// Conditional expectation `E(f | φ⁻¹(F))`: the μ-weighted average of `f`
    /// over the fiber containing each atom.
    pub fn cond_expectation(&self, f: &MeasurableFunction) -> Result<MeasurableFunction> {
        self.space.check_same(&f.space)?;
        let means = self.fiber_means(f);
        Ok(MeasurableFunction::from_parts(
            self.space.clone(),
            self.targets
                .iter()
                .map(|&t| means[t].expect("every atom lies in its own fiber"))
                .collect(),
        ))
    }

    /// `E(g) ∘ φ⁻¹`, extended by zero off the range of φ.
    pub fn push_inverse(&self, g: &MeasurableFunction) -> Result<MeasurableFunction> {
        self.space.check_same(&g.space)?;
        Ok(MeasurableFunction::from_parts(
            self.space.clone(),
            self.fiber_means(g)
                .into_iter()
                .map(|m| m.unwrap_or_default())
                .collect(),
        ))
    }
}

/// A partition of `{0, …, n−1}` into disjoint nonempty blocks.
///
/// Blocks are stored in canonical form: each block sorted, blocks ordered by
/// their smallest element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &a in block {
                if a >= n {
                    return Err(Error::InvalidPartition(format!("atom {a} out of range")));
                }
                if std::mem::replace(&mut seen[a], true) {
                    return Err(Error::InvalidPartition(format!("atom {a} in two blocks")));
                }
            }
        }
        if let Some(a) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("atom {a} not covered")));
        }
        Ok(Self::from_blocks_unchecked(n, blocks))
    }

    /// All singletons: the partition of the full σ-algebra.
    pub fn discrete(n: usize) -> Self {
        Self::from_blocks_unchecked(n, (0..n).map(|i| vec![i]).collect())
    }

    fn from_blocks_unchecked(n: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        let mut block_of = vec![0; n];
        for (k, b) in blocks.iter().enumerate() {
            for &a in b {
                block_of[a] = k;
            }
        }
        Self { blocks, block_of }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn n_atoms(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_of(&self, atom: usize) -> usize {
        self.block_of[atom]
    }

    /// True iff every block of `self` lies inside a single block of `other`,
    /// i.e. σ(other) ⊆ σ(self).
    pub fn refines(&self, other: &Partition) -> bool {
        self.n_atoms() == other.n_atoms()
            && self.blocks.iter().all(|b| {
                let k = other.block_of[b[0]];
                b.iter().all(|&a| other.block_of[a] == k)
            })
    }
}
