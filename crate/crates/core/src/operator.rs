//! Dense operators on `L²(μ)` for a finite atomic `μ`.
//!
//! Operators are stored as plain matrices; the weighting lives in [`mu_inner`]
//! and [`OperatorMatrix::mu_adjoint`]. Entry `(i, j)` is the coefficient of
//! input atom `j` in output atom `i`, so `C_φ` is literally a 0/1 matrix.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, hermitian_jacobi, CMatrix};
use crate::measure::{FiniteMeasureSpace, MeasurableFunction, PointMap};

/// Default relative cutoff for ranks, eigenvalue truncation and symmetry checks.
pub const DEFAULT_TOL: f64 = 1e-10;

/// `⟨f, g⟩_μ = Σ μ_i f_i conj(g_i)`.
pub fn mu_inner(f: &MeasurableFunction, g: &MeasurableFunction) -> Result<Complex64> {
    f.space().check_same(g.space())?;
    Ok(linalg::weighted_dot(f.space().weights(), f.values(), g.values()))
}

pub fn mu_norm(f: &MeasurableFunction) -> f64 {
    linalg::weighted_dot(f.space().weights(), f.values(), f.values())
        .re
        .max(0.0)
        .sqrt()
}

#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    space: FiniteMeasureSpace,
    entries: CMatrix,
}

impl OperatorMatrix {
    pub fn new(space: &FiniteMeasureSpace, entries: CMatrix) -> Result<Self> {
        let n = space.len();
        if entries.nrows() != n || entries.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: if entries.nrows() != n {
                    entries.nrows()
                } else {
                    entries.ncols()
                },
            });
        }
        Ok(Self {
            space: space.clone(),
            entries,
        })
    }

    /// Builds an operator from real row-major entries.
    pub fn from_real_rows(space: &FiniteMeasureSpace, rows: &[f64]) -> Result<Self> {
        let n = space.len();
        if rows.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: rows.len(),
            });
        }
        Self::new(
            space,
            CMatrix::from_fn(n, n, |i, j| Complex64::new(rows[i * n + j], 0.0)),
        )
    }

    /// Matrix of a linear map given by its action on functions.
    pub fn from_action(
        space: &FiniteMeasureSpace,
        action: impl Fn(&MeasurableFunction) -> Result<MeasurableFunction>,
    ) -> Result<Self> {
        let n = space.len();
        let mut m = CMatrix::zeros(n, n);
        for j in 0..n {
            let col = action(&MeasurableFunction::indicator(space, j))?;
            for (i, &z) in col.values().iter().enumerate() {
                m[(i, j)] = z;
            }
        }
        Self::new(space, m)
    }

    pub fn identity(space: &FiniteMeasureSpace) -> Self {
        let n = space.len();
        Self {
            space: space.clone(),
            entries: CMatrix::identity(n, n),
        }
    }

    pub fn zero(space: &FiniteMeasureSpace) -> Self {
        let n = space.len();
        Self {
            space: space.clone(),
            entries: CMatrix::zeros(n, n),
        }
    }

    pub(crate) fn from_parts(space: FiniteMeasureSpace, entries: CMatrix) -> Self {
        Self { space, entries }
    }

    pub fn space(&self) -> &FiniteMeasureSpace {
        &self.space
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[(i, j)]
    }

    pub fn apply(&self, f: &MeasurableFunction) -> Result<MeasurableFunction> {
        self.space.check_same(f.space())?;
        let v = nalgebra::DVector::from_column_slice(f.values());
        let out = &self.entries * v;
        Ok(MeasurableFunction::from_parts(
            self.space.clone(),
            out.iter().copied().collect(),
        ))
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::from_parts(self.space.clone(), &self.entries * Complex64::new(c, 0.0))
    }

    /// The adjoint for `⟨·,·⟩_μ`: `D⁻¹ Tᴴ D`.
    pub fn mu_adjoint(&self) -> Self {
        let w = self.space.weights();
        let n = self.dim();
        let m = CMatrix::from_fn(n, n, |i, j| self.entries[(j, i)].conj() * (w[j] / w[i]));
        Self::from_parts(self.space.clone(), m)
    }

    /// The flat-metric image `D^{1/2} T D^{-1/2}`, unitarily equivalent to `T`
    /// acting on `L²(μ)`.
    pub fn flat(&self) -> CMatrix {
        let w = self.space.weights();
        let n = self.dim();
        CMatrix::from_fn(n, n, |i, j| self.entries[(i, j)] * (w[i] / w[j]).sqrt())
    }

    fn from_flat(space: &FiniteMeasureSpace, flat: &CMatrix) -> Self {
        let w = space.weights();
        let n = flat.nrows();
        Self::from_parts(
            space.clone(),
            CMatrix::from_fn(n, n, |i, j| flat[(i, j)] * (w[j] / w[i]).sqrt()),
        )
    }

    /// Hilbert–Schmidt norm on `L²(μ)`.
    pub fn hs_norm(&self) -> f64 {
        self.flat().norm()
    }

    /// `‖T − T*‖ / ‖T‖` in the Hilbert–Schmidt norm (0 for the zero operator).
    pub fn asymmetry(&self) -> f64 {
        let h = self.flat();
        let norm = h.norm();
        if norm == 0.0 {
            0.0
        } else {
            (&h - h.adjoint()).norm() / norm
        }
    }

    /// Spectral decomposition of a μ-self-adjoint operator.
    ///
    /// The operator is conjugated to the Hermitian matrix `D^{1/2} T D^{-1/2}`,
    /// diagonalized by cyclic Jacobi, and the eigenvectors mapped back by
    /// `D^{-1/2}`, which makes them μ-orthonormal.
    pub fn spectral_decomposition(&self, tol: f64) -> Result<SpectralDecomposition> {
        let asymmetry = self.asymmetry();
        if asymmetry > tol {
            return Err(Error::NotSelfAdjoint { asymmetry });
        }
        let eig = hermitian_jacobi(&self.flat());
        let w = self.space.weights();
        let n = self.dim();
        let vectors = (0..n)
            .map(|k| {
                MeasurableFunction::from_parts(
                    self.space.clone(),
                    (0..n).map(|i| eig.vectors[(i, k)] / w[i].sqrt()).collect(),
                )
            })
            .collect();
        Ok(SpectralDecomposition {
            space: self.space.clone(),
            values: eig.values,
            vectors,
        })
    }

    fn positive_spectrum(&self, tol: f64) -> Result<SpectralDecomposition> {
        let sd = self.spectral_decomposition(tol)?;
        let scale = sd.values.iter().map(|l| l.abs()).fold(0.0, f64::max);
        let lmin = sd.values.first().copied().unwrap_or(0.0);
        if lmin < -tol * scale {
            return Err(Error::NotPositive { eigenvalue: lmin });
        }
        Ok(sd)
    }

    /// True when μ-self-adjoint with spectrum `≥ −tol·max|λ|`.
    pub fn is_positive(&self, tol: f64) -> bool {
        self.positive_spectrum(tol).is_ok()
    }

    /// Moore–Penrose inverse of a positive operator by spectral truncation:
    /// eigenvalues at or below `tol · λ_max` are treated as zero.
    pub fn moore_penrose(&self, tol: f64) -> Result<Self> {
        let sd = self.positive_spectrum(tol)?;
        let lmax = sd.values.last().copied().unwrap_or(0.0);
        Ok(sd.functional_calculus(|l| if l > tol * lmax { 1.0 / l } else { 0.0 }))
    }

    /// Positive square root of a positive operator.
    pub fn sqrt(&self, tol: f64) -> Result<Self> {
        let sd = self.positive_spectrum(tol)?;
        Ok(sd.functional_calculus(|l| l.max(0.0).sqrt()))
    }

    /// `|T| = (T*T)^{1/2}` with the μ-adjoint.
    pub fn abs(&self, tol: f64) -> Result<Self> {
        (&self.mu_adjoint() * self).sqrt(tol)
    }

    /// `R(T)`, spanned by the columns.
    pub fn range(&self, tol: f64) -> Subspace {
        let cols = linalg::columns(&self.entries)
            .into_iter()
            .map(|c| MeasurableFunction::from_parts(self.space.clone(), c))
            .collect::<Vec<_>>();
        Subspace::span(&self.space, &cols, tol)
    }

    /// `N(T) = R(T*)^⊥`.
    pub fn nullspace(&self, tol: f64) -> Subspace {
        self.mu_adjoint().range(tol).ortho_complement()
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.range(tol).dim()
    }
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.space, rhs.space, "operators on different spaces");
        OperatorMatrix::from_parts(self.space.clone(), &self.entries * &rhs.entries)
    }
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn add(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.space, rhs.space, "operators on different spaces");
        OperatorMatrix::from_parts(self.space.clone(), &self.entries + &rhs.entries)
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn sub(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.space, rhs.space, "operators on different spaces");
        OperatorMatrix::from_parts(self.space.clone(), &self.entries - &rhs.entries)
    }
}

/// `(C_φ f)(i) = f(φ(i))`.
pub fn composition_operator(phi: &PointMap) -> OperatorMatrix {
    let n = phi.space().len();
    let mut m = CMatrix::zeros(n, n);
    for (i, &t) in phi.targets().iter().enumerate() {
        m[(i, t)] = Complex64::new(1.0, 0.0);
    }
    OperatorMatrix::from_parts(phi.space().clone(), m)
}

/// `(M_u f)(i) = u(i) f(i)`.
pub fn multiplication_operator(u: &MeasurableFunction) -> OperatorMatrix {
    OperatorMatrix::from_parts(u.space().clone(), linalg::diag(u.values()))
}

/// `W = M_u C_φ`, `(W f)(i) = u(i) f(φ(i))`.
pub fn weighted_composition_operator(
    u: &MeasurableFunction,
    phi: &PointMap,
) -> Result<OperatorMatrix> {
    u.space().check_same(phi.space())?;
    Ok(&multiplication_operator(u) * &composition_operator(phi))
}

/// `T = Σ λ_k ⟨·, v_k⟩_μ v_k` with μ-orthonormal `v_k`, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    space: FiniteMeasureSpace,
    pub values: Vec<f64>,
    pub vectors: Vec<MeasurableFunction>,
}

impl SpectralDecomposition {
    /// `Σ g(λ_k) ⟨·, v_k⟩_μ v_k`.
    pub fn functional_calculus(&self, g: impl Fn(f64) -> f64) -> OperatorMatrix {
        let n = self.space.len();
        let w = self.space.weights();
        let mut flat = CMatrix::zeros(n, n);
        for (l, v) in self.values.iter().zip(&self.vectors) {
            let gl = g(*l);
            if gl == 0.0 {
                continue;
            }
            // back in flat coordinates the eigenvector is D^{1/2} v
            let u = nalgebra::DVector::from_iterator(
                n,
                v.values().iter().zip(w).map(|(&z, &wi)| z * wi.sqrt()),
            );
            flat += (&u * u.adjoint()) * Complex64::new(gl, 0.0);
        }
        OperatorMatrix::from_flat(&self.space, &flat)
    }

    pub fn reconstruct(&self) -> OperatorMatrix {
        self.functional_calculus(|l| l)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }
}

/// A subspace of `L²(μ)` held as a μ-orthonormal basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    space: FiniteMeasureSpace,
    basis: Vec<MeasurableFunction>,
}

impl Subspace {
    /// Span of `vectors`; dependent vectors (relative residual `≤ tol`) are dropped.
    pub fn span(space: &FiniteMeasureSpace, vectors: &[MeasurableFunction], tol: f64) -> Self {
        let raw: Vec<Vec<Complex64>> = vectors.iter().map(|v| v.values().to_vec()).collect();
        let (basis, _) = linalg::weighted_gram_schmidt(space.weights(), &raw, tol);
        Self {
            space: space.clone(),
            basis: basis
                .into_iter()
                .map(|b| MeasurableFunction::from_parts(space.clone(), b))
                .collect(),
        }
    }

    pub fn zero(space: &FiniteMeasureSpace) -> Self {
        Self {
            space: space.clone(),
            basis: Vec::new(),
        }
    }

    pub fn whole(space: &FiniteMeasureSpace) -> Self {
        Self::zero(space).ortho_complement()
    }

    pub fn space(&self) -> &FiniteMeasureSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MeasurableFunction] {
        &self.basis
    }

    /// μ-orthogonal complement, completed from the standard atoms.
    pub fn ortho_complement(&self) -> Self {
        let n = self.space.len();
        let mut cands: Vec<Vec<Complex64>> = self.basis.iter().map(|b| b.values().to_vec()).collect();
        for k in 0..n {
            // scaled so every atom has unit μ-norm, keeping the cutoff meaningful
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[k] = Complex64::new(1.0 / self.space.mass(k).sqrt(), 0.0);
            cands.push(e);
        }
        let (basis, used) = linalg::weighted_gram_schmidt(self.space.weights(), &cands, 1e-8);
        let keep = self.basis.len();
        Self {
            space: self.space.clone(),
            basis: basis
                .into_iter()
                .zip(used)
                .filter(|(_, k)| *k >= keep)
                .map(|(b, _)| MeasurableFunction::from_parts(self.space.clone(), b))
                .collect(),
        }
    }

    /// Orthogonal projection `P = Σ ⟨·, b_k⟩_μ b_k`.
    pub fn projection(&self) -> OperatorMatrix {
        let n = self.space.len();
        let w = self.space.weights();
        let mut m = CMatrix::zeros(n, n);
        for b in &self.basis {
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] += b.get(i) * b.get(j).conj() * w[j];
                }
            }
        }
        OperatorMatrix::from_parts(self.space.clone(), m)
    }

    /// Basis vectors as the columns of an `n × dim` matrix.
    pub fn basis_matrix(&self) -> CMatrix {
        let n = self.space.len();
        CMatrix::from_fn(n, self.dim(), |i, k| self.basis[k].get(i))
    }

    /// Distance-based membership: `‖f − P f‖ ≤ tol·‖f‖`.
    pub fn contains(&self, f: &MeasurableFunction, tol: f64) -> Result<bool> {
        let pf = self.projection().apply(f)?;
        Ok(mu_norm(&f.sub(&pf)?) <= tol * mu_norm(f).max(f64::MIN_POSITIVE))
    }

    /// `self ⊆ other`, checked basis vector by basis vector.
    pub fn is_within(&self, other: &Subspace, tol: f64) -> Result<bool> {
        for b in &self.basis {
            if !other.contains(b, tol)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::FiniteMeasureSpace;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn close(a: &OperatorMatrix, rows: &[f64], tol: f64) -> bool {
        let b = OperatorMatrix::from_real_rows(a.space(), rows).unwrap();
        (a.entries() - b.entries()).norm() <= tol
    }

    #[test]
    fn mu_inner_examples() {
        let u2 = FiniteMeasureSpace::uniform(2).unwrap();
        let ones = MeasurableFunction::constant(&u2, 1.0);
        assert_eq!(mu_inner(&ones, &ones).unwrap(), c(1.0));
        let s = FiniteMeasureSpace::new(vec![1.0 / 3.0, 2.0 / 3.0]).unwrap();
        let f = MeasurableFunction::from_real(&s, &[3.0, 0.0]).unwrap();
        let g = MeasurableFunction::constant(&s, 1.0);
        assert!((mu_inner(&f, &g).unwrap() - c(1.0)).norm() < 1e-15);
        let e0 = MeasurableFunction::indicator(&s, 0);
        let e1 = MeasurableFunction::indicator(&s, 1);
        assert_eq!(mu_inner(&e0, &e1).unwrap(), c(0.0));
    }

    #[test]
    fn mu_adjoint_examples() {
        let u2 = FiniteMeasureSpace::uniform(2).unwrap();
        let t = OperatorMatrix::new(
            &u2,
            CMatrix::from_row_slice(2, 2, &[c(1.0), Complex64::new(0.0, 2.0), c(3.0), c(4.0)]),
        )
        .unwrap();
        assert_eq!(t.mu_adjoint().entries(), &t.entries().adjoint());

        let s = FiniteMeasureSpace::new(vec![1.0 / 3.0, 2.0 / 3.0]).unwrap();
        let k = composition_operator(&PointMap::constant(&s, 0).unwrap());
        assert!(close(&k.mu_adjoint(), &[1.0, 2.0, 0.0, 0.0], 1e-15));

        let d = multiplication_operator(&MeasurableFunction::from_real(&s, &[1.5, -2.0]).unwrap());
        assert_eq!(d.mu_adjoint(), d);
    }

    #[test]
    fn constructions() {
        let u2 = FiniteMeasureSpace::uniform(2).unwrap();
        let id = PointMap::identity(&u2);
        assert_eq!(composition_operator(&id), OperatorMatrix::identity(&u2));
        let swap = PointMap::new(&u2, vec![1, 0]).unwrap();
        assert!(close(&composition_operator(&swap), &[0.0, 1.0, 1.0, 0.0], 0.0));
        let k = PointMap::constant(&u2, 0).unwrap();
        assert!(close(&composition_operator(&k), &[1.0, 0.0, 1.0, 0.0], 0.0));

        let one = MeasurableFunction::constant(&u2, 1.0);
        assert_eq!(multiplication_operator(&one), OperatorMatrix::identity(&u2));
        let u = MeasurableFunction::from_real(&u2, &[0.0, 3.0]).unwrap();
        let mu = multiplication_operator(&u);
        assert!(close(&mu, &[0.0, 0.0, 0.0, 3.0], 0.0));
        assert_eq!(mu.rank(DEFAULT_TOL), 1);

        let u12 = MeasurableFunction::from_real(&u2, &[1.0, 2.0]).unwrap();
        let w = weighted_composition_operator(&u12, &swap).unwrap();
        assert!(close(&w, &[0.0, 1.0, 2.0, 0.0], 0.0));
        assert_eq!(
            weighted_composition_operator(&one, &k).unwrap(),
            composition_operator(&k)
        );
        assert_eq!(
            weighted_composition_operator(&u12, &id).unwrap(),
            multiplication_operator(&u12)
        );
    }

    #[test]
    fn spectral_examples() {
        let u2 = FiniteMeasureSpace::uniform(2).unwrap();
        let d = OperatorMatrix::from_real_rows(&u2, &[1.0, 0.0, 0.0, 2.0]).unwrap();
        let sd = d.spectral_decomposition(DEFAULT_TOL).unwrap();
        assert_eq!(sd.values, vec![1.0, 2.0]);
        let swap = OperatorMatrix::from_real_rows(&u2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let sd = swap.spectral_decomposition(DEFAULT_TOL).unwrap();
        assert!((sd.values[0] + 1.0).abs() < 1e-15 && (sd.values[1] - 1.0).abs() < 1e-15);
        let ones = OperatorMatrix::from_real_rows(&u2, &[1.0, 1.0, 1.0, 1.0]).unwrap();
        let sd = ones.spectral_decomposition(DEFAULT_TOL).unwrap();
        assert!(sd.values[0].abs() < 1e-15 && (sd.values[1] - 2.0).abs() < 1e-15);
        assert!((sd.reconstruct().entries() - ones.entries()).norm() < 1e-14);
    }

    #[test]
    fn spectral_rejects_non_selfadjoint() {
        let s = FiniteMeasureSpace::new(vec![0.2, 0.8]).unwrap();
        let swap = composition_operator(&PointMap::new(&s, vec![1, 0]).unwrap());
        assert!(matches!(
            swap.spectral_decomposition(DEFAULT_TOL),
            Err(Error::NotSelfAdjoint { .. })
        ));
    }

    #[test]
    fn moore_penrose_examples() {
        let u2 = FiniteMeasureSpace::uniform(2).unwrap();
        let d = OperatorMatrix::from_real_rows(&u2, &[2.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(close(&d.moore_penrose(DEFAULT_TOL).unwrap(), &[0.5, 0.0, 0.0, 0.0], 1e-15));
        let id = OperatorMatrix::identity(&u2);
        assert!(close(&id.moore_penrose(DEFAULT_TOL).unwrap(), &[1.0, 0.0, 0.0, 1.0], 1e-15));
        let ones = OperatorMatrix::from_real_rows(&u2, &[1.0, 1.0, 1.0, 1.0]).unwrap();
        assert!(close(
            &ones.moore_penrose(DEFAULT_TOL).unwrap(),
            &[0.25, 0.25, 0.25, 0.25],
            1e-14
        ));
        let neg = OperatorMatrix::from_real_rows(&u2, &[1.0, 0.0, 0.0, -1.0]).unwrap();
        assert!(matches!(
            neg.moore_penrose(DEFAULT_TOL),
            Err(Error::NotPositive { .. })
        ));
    }

    #[test]
    fn sqrt_and_abs_examples() {
        let u2 = FiniteMeasureSpace::uniform(2).unwrap();
        let a = OperatorMatrix::from_real_rows(&u2, &[4.0, 0.0, 0.0, 9.0]).unwrap();
        assert!(close(&a.sqrt(DEFAULT_TOL).unwrap(), &[2.0, 0.0, 0.0, 3.0], 1e-14));
        let k = composition_operator(&PointMap::constant(&u2, 0).unwrap());
        let r2 = 2f64.sqrt();
        assert!(close(&k.abs(DEFAULT_TOL).unwrap(), &[r2, 0.0, 0.0, 0.0], 1e-14));
        let swap = composition_operator(&PointMap::new(&u2, vec![1, 0]).unwrap());
        assert!(close(&swap.abs(DEFAULT_TOL).unwrap(), &[1.0, 0.0, 0.0, 1.0], 1e-14));
        let neg = OperatorMatrix::from_real_rows(&u2, &[-1.0, 0.0, 0.0, 1.0]).unwrap();
        assert!(neg.sqrt(DEFAULT_TOL).is_err());
    }

    #[test]
    fn subspace_examples() {
        let u2 = FiniteMeasureSpace::uniform(2).unwrap();
        let k = composition_operator(&PointMap::constant(&u2, 0).unwrap());
        let ns = k.nullspace(DEFAULT_TOL);
        assert_eq!(ns.dim(), 1);
        let b = &ns.basis()[0];
        assert!(b.get(0).norm() < 1e-15 && b.get(1).norm() > 0.5);

        let d = OperatorMatrix::from_real_rows(&u2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let r = d.range(DEFAULT_TOL);
        assert_eq!(r.dim(), 1);
        assert!(r.basis()[0].get(1).norm() < 1e-15);

        let s = FiniteMeasureSpace::new(vec![1.0 / 3.0, 2.0 / 3.0]).unwrap();
        let e0 = Subspace::span(&s, &[MeasurableFunction::indicator(&s, 0)], DEFAULT_TOL);
        let comp = e0.ortho_complement();
        assert_eq!(comp.dim(), 1);
        assert!(comp.basis()[0].get(0).norm() < 1e-15);
        assert_eq!(Subspace::whole(&s).dim(), 2);
    }

    #[test]
    fn projection_is_orthogonal_idempotent() {
        let s = FiniteMeasureSpace::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let v = MeasurableFunction::new(
            &s,
            vec![c(1.0), Complex64::new(0.0, 1.0), c(-2.0), c(0.5)],
        )
        .unwrap();
        let w = MeasurableFunction::from_real(&s, &[0.0, 1.0, 1.0, 1.0]).unwrap();
        let sub = Subspace::span(&s, &[v, w], DEFAULT_TOL);
        let p = sub.projection();
        assert!((&(&p * &p) - &p).hs_norm() < 1e-12);
        assert!((&p.mu_adjoint() - &p).hs_norm() < 1e-12);
        let q = sub.ortho_complement().projection();
        assert!((&(&p + &q) - &OperatorMatrix::identity(&s)).hs_norm() < 1e-12);
    }
}
