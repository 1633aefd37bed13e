//! Geometry induced by a positive operator `A`: the semi-inner product
//! `⟨f, g⟩_A = ⟨Af, g⟩`, A-orthocomplements, the A-adjoint `T♯ = A†T*A`,
//! Douglas range-inclusion checks, and matrix-level predicates for every
//! A-relative operator class.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, hermitian_jacobi, CMatrix};
use crate::measure::MeasurableFunction;
use crate::operator::{mu_inner, mu_norm, OperatorMatrix, Subspace};
use crate::property::Property;

/// A positive operator `A` together with the data derived from it.
#[derive(Clone, Debug)]
pub struct SemiInnerProduct {
    a: OperatorMatrix,
    sqrt: OperatorMatrix,
    pinv: OperatorMatrix,
    range: Subspace,
    tol: f64,
}

impl SemiInnerProduct {
    /// Fails with [`Error::NotSelfAdjoint`] or [`Error::NotPositive`] unless `A`
    /// is positive within `tol`.
    pub fn new(a: OperatorMatrix, tol: f64) -> Result<Self> {
        let sqrt = a.sqrt(tol)?;
        let pinv = a.moore_penrose(tol)?;
        let range = a.range(tol);
        Ok(Self {
            a,
            sqrt,
            pinv,
            range,
            tol,
        })
    }

    pub fn operator(&self) -> &OperatorMatrix {
        &self.a
    }

    pub fn sqrt(&self) -> &OperatorMatrix {
        &self.sqrt
    }

    pub fn pinv(&self) -> &OperatorMatrix {
        &self.pinv
    }

    pub fn range(&self) -> &Subspace {
        &self.range
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn a_inner(&self, f: &MeasurableFunction, g: &MeasurableFunction) -> Result<Complex64> {
        mu_inner(&self.a.apply(f)?, g)
    }

    /// `‖f‖_A = ‖A^{1/2} f‖`.
    pub fn a_norm(&self, f: &MeasurableFunction) -> Result<f64> {
        Ok(mu_norm(&self.sqrt.apply(f)?))
    }

    /// `L^{⊥_A} = (A L)^⊥`.
    pub fn a_orthocomplement(&self, l: &Subspace) -> Result<Subspace> {
        let images = l
            .basis()
            .iter()
            .map(|b| self.a.apply(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace::span(self.a.space(), &images, self.tol).ortho_complement())
    }

    /// Membership in `B_A(H)`: `R(T*A) ⊆ R(A)`, tested as
    /// `rank([A | T*A]) = rank(A)`.
    pub fn admits_a_adjoint(&self, t: &OperatorMatrix) -> bool {
        let tsa = &t.mu_adjoint() * &self.a;
        let n = self.a.dim();
        let joined = CMatrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.a.get(i, j)
            } else {
                tsa.get(i, j - n)
            }
        });
        let cols: Vec<MeasurableFunction> = linalg::columns(&joined)
            .into_iter()
            .map(|c| MeasurableFunction::new(self.a.space(), c).expect("column length is n"))
            .collect();
        Subspace::span(self.a.space(), &cols, self.tol).dim() == self.range.dim()
    }

    /// The A-adjoint `T♯ = A† T* A`, the reduced solution of `AX = T*A`.
    pub fn sharp(&self, t: &OperatorMatrix) -> Result<OperatorMatrix> {
        if !self.admits_a_adjoint(t) {
            return Err(Error::NoAAdjoint);
        }
        let ts = t.mu_adjoint();
        let sharp = &(&self.pinv * &ts) * &self.a;
        let lhs = &self.a * &sharp;
        let rhs = &ts * &self.a;
        let scale = rhs.hs_norm().max(self.a.hs_norm() * t.hs_norm()).max(f64::MIN_POSITIVE);
        let defect = (&lhs - &rhs).hs_norm() / scale;
        if defect > 1e-8 {
            return Err(Error::Verification(format!(
                "A·T♯ differs from T*·A by {defect:.3e}"
            )));
        }
        Ok(sharp)
    }

    /// `‖T‖_A = sup_{ξ ∈ R(A)} ‖Tξ‖_A / ‖ξ‖_A`, the square root of the top
    /// eigenvalue of the pencil `(V*T*ATV, V*AV)` over a basis `V` of `R(A)`.
    pub fn a_operator_seminorm(&self, t: &OperatorMatrix) -> f64 {
        let k = self.range.dim();
        if k == 0 {
            return 0.0;
        }
        let w = self.a.space().weights();
        let v = self.range.basis_matrix();
        let dv = CMatrix::from_fn(v.nrows(), k, |i, j| v[(i, j)] * w[i]);
        let form = &(&t.mu_adjoint() * &self.a) * t;
        let num = dv.adjoint() * form.entries() * &v;
        let den = dv.adjoint() * self.a.entries() * &v;
        let den_eig = hermitian_jacobi(&den);
        let whiten = CMatrix::from_fn(k, k, |i, j| {
            den_eig.vectors[(i, j)] / den_eig.values[j].max(f64::MIN_POSITIVE).sqrt()
        });
        let pencil = whiten.adjoint() * num * &whiten;
        let top = hermitian_jacobi(&pencil)
            .values
            .last()
            .copied()
            .unwrap_or(0.0);
        top.max(0.0).sqrt()
    }

    fn residual_scale(&self, t: &OperatorMatrix) -> f64 {
        let a = self.a.hs_norm();
        let a = if a > 0.0 { a } else { 1.0 };
        a * t.hs_norm().powi(2).max(1.0)
    }

    /// Matrix-level verdict on whether `T` belongs to the A-relative class
    /// `property`. Residuals are Hilbert–Schmidt norms normalized by
    /// `‖A‖·max(1, ‖T‖²)`.
    pub fn oracle_is(&self, property: Property, t: &OperatorMatrix, tol: f64) -> Result<ClassVerdict> {
        let a = &self.a;
        let ts = t.mu_adjoint();
        let scale = self.residual_scale(t);
        let verdict = |defect: &OperatorMatrix, sharp_variant: Option<SharpVariant>| {
            let residual = defect.hs_norm() / scale;
            ClassVerdict {
                property,
                verdict: residual <= tol,
                residual,
                witness: largest_entry(defect),
                sharp_variant,
            }
        };
        let tsat = &(&ts * a) * t;
        Ok(match property {
            Property::SelfAdjoint => verdict(&(&(a * t) - &(&ts * a)), None),
            Property::Normal => {
                let s = self.sharp(t)?;
                verdict(&(&(t * &s) - &(&s * t)), None)
            }
            Property::Quasinormal => {
                let s = self.sharp(t)?;
                verdict(&(&(&(t * &s) * t) - &(&(&s * t) * t)), None)
            }
            Property::Isometry => verdict(&(&tsat - a), None),
            Property::Unitary => {
                let first = &tsat - a;
                let second = &(&(t * a) * &ts) - a;
                let sharp_variant = self.sharp(t).ok().map(|s| {
                    let alt = &(&(t * a) * &s) - a;
                    let residual = first.hs_norm().max(alt.hs_norm()) / scale;
                    SharpVariant {
                        verdict: residual <= tol,
                        residual,
                    }
                });
                let defect = if first.hs_norm() >= second.hs_norm() {
                    first
                } else {
                    second
                };
                let residual = defect.hs_norm() / scale;
                ClassVerdict {
                    property,
                    verdict: residual <= tol,
                    residual,
                    witness: largest_entry(&defect),
                    sharp_variant,
                }
            }
            Property::PartialIsometry => {
                let null = (&self.sqrt * t).nullspace(self.tol);
                let k = self.a_orthocomplement(&null)?;
                let form = &tsat - a;
                let b = k.basis_matrix();
                let w = a.space().weights();
                let db = CMatrix::from_fn(b.nrows(), b.ncols(), |i, j| b[(i, j)] * w[i]);
                let compression = db.adjoint() * form.entries() * &b;
                let residual = compression.norm() / scale;
                ClassVerdict {
                    property,
                    verdict: residual <= tol,
                    residual,
                    witness: format!("compression to N_A(T)^⊥A of dimension {}", k.dim()),
                    sharp_variant: None,
                }
            }
            Property::Hyponormal => {
                let diff = &tsat - &(&(t * a) * &ts);
                let sd = diff.spectral_decomposition(1e-8)?;
                let lmin = sd.min_eigenvalue();
                let residual = (-lmin).max(0.0) / scale;
                ClassVerdict {
                    property,
                    verdict: residual <= tol,
                    residual,
                    witness: format!("smallest eigenvalue of T*AT − TAT* is {lmin:.6e}"),
                    sharp_variant: None,
                }
            }
        })
    }
}

fn largest_entry(m: &OperatorMatrix) -> String {
    let flat = m.flat();
    let mut best = (0, 0, 0.0);
    for i in 0..flat.nrows() {
        for j in 0..flat.ncols() {
            let v = flat[(i, j)].norm();
            if v > best.2 {
                best = (i, j, v);
            }
        }
    }
    format!("largest defect at entry ({}, {}) = {:.6e}", best.0, best.1, best.2)
}

/// Outcome of an A-relative class test.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassVerdict {
    pub property: Property,
    pub verdict: bool,
    #[serde(with = "crate::report::residual_serde")]
    pub residual: f64,
    pub witness: String,
    /// For unitarity: the verdict when `TAT♯ = A` replaces `TAT* = A`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sharp_variant: Option<SharpVariant>,
}

impl ClassVerdict {
    /// True when the T♯-based unitarity convention gives a different answer.
    pub fn conventions_diverge(&self) -> bool {
        self.sharp_variant
            .as_ref()
            .is_some_and(|s| s.verdict != self.verdict)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SharpVariant {
    pub verdict: bool,
    #[serde(with = "crate::report::residual_serde")]
    pub residual: f64,
}

/// The three conditions of Douglas' range-inclusion theorem, each computed
/// independently on the flat matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DouglasReport {
    /// `R(B) ⊆ R(A)` via `rank([A|B]) = rank(A)`.
    pub range_incl: bool,
    /// `BB* ⪯ λAA*` for some `λ`.
    pub majorization: bool,
    /// Smallest feasible `λ`, when one exists.
    pub lambda: Option<f64>,
    /// `AC = B` solvable, checked by substituting `C = A⁺B`.
    pub factorization: bool,
    pub factorization_residual: f64,
}

impl DouglasReport {
    pub fn agree(&self) -> bool {
        self.range_incl == self.majorization && self.majorization == self.factorization
    }
}

/// Relative cutoff for treating a projected or residual Douglas quantity as zero.
const DOUGLAS_ZERO: f64 = 1e-8;

pub fn douglas_check(a: &CMatrix, b: &CMatrix, tol: f64) -> DouglasReport {
    let n = a.nrows();
    let joined = CMatrix::from_fn(n, a.ncols() + b.ncols(), |i, j| {
        if j < a.ncols() {
            a[(i, j)]
        } else {
            b[(i, j - a.ncols())]
        }
    });
    let range_incl = linalg::rank(&joined, tol) == linalg::rank(a, tol);

    let lambda = majorization_constant(a, b, tol);

    let c = linalg::pinv_flat(a, tol);
    let ac = a * (c * b);
    let bnorm = b.norm();
    let factorization_residual = if bnorm > 0.0 {
        (ac - b).norm() / bnorm
    } else {
        0.0
    };
    DouglasReport {
        range_incl,
        majorization: lambda.is_some(),
        lambda,
        factorization: factorization_residual <= DOUGLAS_ZERO,
        factorization_residual,
    }
}

/// Smallest `λ` with `BB* ⪯ λAA*`, from the generalized eigenproblem of the
/// pencil `(BB*, AA*)` restricted to the nonzero eigenspace of `AA*`.
fn majorization_constant(a: &CMatrix, b: &CMatrix, tol: f64) -> Option<f64> {
    let aa = a * a.adjoint();
    let bb = b * b.adjoint();
    let eig = hermitian_jacobi(&aa);
    let lmax = eig.values.last().copied().unwrap_or(0.0);
    let n = aa.nrows();
    let (kept, dropped): (Vec<usize>, Vec<usize>) =
        (0..n).partition(|&k| lmax > 0.0 && eig.values[k] > tol * lmax);
    // BB* must vanish on N(AA*)
    let bnorm = bb.norm();
    if bnorm > 0.0 && !dropped.is_empty() {
        let null = CMatrix::from_fn(n, dropped.len(), |i, j| eig.vectors[(i, dropped[j])]);
        let leak = (null.adjoint() * &bb * &null).norm();
        if leak > DOUGLAS_ZERO * bnorm {
            return None;
        }
    }
    if kept.is_empty() {
        return Some(0.0);
    }
    let whiten = CMatrix::from_fn(n, kept.len(), |i, j| {
        eig.vectors[(i, kept[j])] / eig.values[kept[j]].sqrt()
    });
    let pencil = whiten.adjoint() * bb * &whiten;
    let top = hermitian_jacobi(&pencil).values.last().copied().unwrap_or(0.0);
    Some(top.max(0.0))
}

/// The reduced solution `W = A⁺B` of `AX = B` with its defining properties
/// checked.
#[derive(Clone, Debug)]
pub struct ReducedSolution {
    pub w: CMatrix,
    /// `‖AW − B‖ / ‖B‖`.
    pub residual: f64,
    /// `R(W) ⊆ R(A*)`.
    pub range_ok: bool,
    /// `N(W) = N(B)`.
    pub null_ok: bool,
}

pub fn douglas_reduced_solution(a: &CMatrix, b: &CMatrix, tol: f64) -> Result<ReducedSolution> {
    let n = a.nrows();
    let joined = CMatrix::from_fn(n, a.ncols() + b.ncols(), |i, j| {
        if j < a.ncols() {
            a[(i, j)]
        } else {
            b[(i, j - a.ncols())]
        }
    });
    let rank_a = linalg::rank(a, tol);
    let rank_ab = linalg::rank(&joined, tol);
    if rank_ab != rank_a {
        return Err(Error::RangeInclusion { rank_a, rank_ab });
    }
    let w = linalg::pinv_flat(a, tol) * b;
    let bnorm = b.norm();
    let residual = if bnorm > 0.0 {
        (a * &w - b).norm() / bnorm
    } else {
        (a * &w).norm()
    };
    let ah = a.adjoint();
    let range_ok = linalg::rank(&hcat(&ah, &w), tol) == linalg::rank(&ah, tol);
    // equal null spaces ⟺ equal row spaces
    let (wh, bh) = (w.adjoint(), b.adjoint());
    let rank_w = linalg::rank(&wh, tol);
    let null_ok = rank_w == linalg::rank(&bh, tol) && linalg::rank(&hcat(&wh, &bh), tol) == rank_w;
    if residual > DOUGLAS_ZERO || !range_ok || !null_ok {
        return Err(Error::Verification(format!(
            "reduced solution check failed: residual {residual:.3e}, range {range_ok}, null {null_ok}"
        )));
    }
    Ok(ReducedSolution {
        w,
        residual,
        range_ok,
        null_ok,
    })
}

pub(crate) fn hcat(x: &CMatrix, y: &CMatrix) -> CMatrix {
    CMatrix::from_fn(x.nrows(), x.ncols() + y.ncols(), |i, j| {
        if j < x.ncols() {
            x[(i, j)]
        } else {
            y[(i, j - x.ncols())]
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{FiniteMeasureSpace, PointMap};
    use crate::operator::{composition_operator, multiplication_operator, DEFAULT_TOL};

    fn space2() -> FiniteMeasureSpace {
        FiniteMeasureSpace::uniform(2).unwrap()
    }

    fn rows(r: &[f64]) -> CMatrix {
        let n = (r.len() as f64).sqrt() as usize;
        CMatrix::from_fn(n, n, |i, j| Complex64::new(r[i * n + j], 0.0))
    }

    fn op(r: &[f64]) -> OperatorMatrix {
        OperatorMatrix::from_real_rows(&space2(), r).unwrap()
    }

    fn semi(r: &[f64]) -> SemiInnerProduct {
        SemiInnerProduct::new(op(r), DEFAULT_TOL).unwrap()
    }

    fn swap() -> OperatorMatrix {
        composition_operator(&PointMap::new(&space2(), vec![1, 0]).unwrap())
    }

    fn constant_map() -> OperatorMatrix {
        composition_operator(&PointMap::constant(&space2(), 0).unwrap())
    }

    #[test]
    fn a_norm_examples() {
        let s = space2();
        let f = MeasurableFunction::new(&s, vec![Complex64::new(1.0, 1.0), Complex64::new(2.0, 0.0)])
            .unwrap();
        let g = MeasurableFunction::from_real(&s, &[0.5, -1.0]).unwrap();
        let id = semi(&[1.0, 0.0, 0.0, 1.0]);
        assert!((id.a_inner(&f, &g).unwrap() - mu_inner(&f, &g).unwrap()).norm() < 1e-15);

        let deg = semi(&[1.0, 0.0, 0.0, 0.0]);
        let f = MeasurableFunction::from_real(&s, &[0.0, 5.0]).unwrap();
        assert_eq!(deg.a_norm(&f).unwrap(), 0.0);

        let d = semi(&[1.0, 0.0, 0.0, 2.0]);
        let ones = MeasurableFunction::constant(&s, 1.0);
        assert!((d.a_norm(&ones).unwrap().powi(2) - 1.5).abs() < 1e-14);
    }

    #[test]
    fn a_orthocomplement_examples() {
        let s = space2();
        let e1 = Subspace::span(&s, &[MeasurableFunction::indicator(&s, 1)], DEFAULT_TOL);
        let id = semi(&[1.0, 0.0, 0.0, 1.0]);
        let c = id.a_orthocomplement(&e1).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(c.basis()[0].get(1).norm() < 1e-15);
        let deg = semi(&[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(deg.a_orthocomplement(&e1).unwrap().dim(), 2);
        let mu = SemiInnerProduct::new(
            multiplication_operator(&MeasurableFunction::constant(&s, 1.0)),
            DEFAULT_TOL,
        )
        .unwrap();
        let c = mu.a_orthocomplement(&e1).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(c.basis()[0].get(1).norm() < 1e-15);
    }

    #[test]
    fn douglas_examples() {
        let a = rows(&[1.0, 0.0, 0.0, 0.0]);
        let b = rows(&[0.0, 1.0, 0.0, 0.0]);
        let r = douglas_check(&a, &b, DEFAULT_TOL);
        assert!(r.range_incl && r.majorization && r.factorization);
        assert!((r.lambda.unwrap() - 1.0).abs() < 1e-12);

        let b = rows(&[0.0, 0.0, 0.0, 1.0]);
        let r = douglas_check(&a, &b, DEFAULT_TOL);
        assert!(!r.range_incl && !r.majorization && !r.factorization);

        let a = rows(&[2.0, 1.0, 0.0, 3.0]);
        let b = rows(&[5.0, -1.0, 7.0, 0.5]);
        let r = douglas_check(&a, &b, DEFAULT_TOL);
        assert!(r.range_incl && r.majorization && r.factorization);
    }

    #[test]
    fn reduced_solution_examples() {
        let a = rows(&[1.0, 0.0, 0.0, 0.0]);
        let w = douglas_reduced_solution(&a, &a, DEFAULT_TOL).unwrap();
        assert!((&w.w - &a).norm() < 1e-15);

        let b = rows(&[0.0, 1.0, 0.0, 0.0]);
        let w = douglas_reduced_solution(&a, &b, DEFAULT_TOL).unwrap();
        assert!((&w.w - &b).norm() < 1e-15);
        assert!(w.range_ok && w.null_ok);

        let b = rows(&[0.0, 0.0, 0.0, 1.0]);
        assert!(matches!(
            douglas_reduced_solution(&a, &b, DEFAULT_TOL),
            Err(Error::RangeInclusion { rank_a: 1, rank_ab: 2 })
        ));
    }

    #[test]
    fn admits_a_adjoint_examples() {
        let inv = semi(&[2.0, 0.0, 0.0, 3.0]);
        assert!(inv.admits_a_adjoint(&swap()));
        assert!(inv.admits_a_adjoint(&constant_map()));
        let deg = semi(&[1.0, 0.0, 0.0, 0.0]);
        assert!(!deg.admits_a_adjoint(&swap()));
        let zero = semi(&[0.0, 0.0, 0.0, 0.0]);
        assert!(zero.admits_a_adjoint(&swap()));
    }

    #[test]
    fn sharp_examples() {
        let id = semi(&[1.0, 0.0, 0.0, 1.0]);
        let k = constant_map();
        assert_eq!(id.sharp(&k).unwrap(), k.mu_adjoint());

        let d = semi(&[1.0, 0.0, 0.0, 2.0]);
        let s = d.sharp(&swap()).unwrap();
        assert!((s.entries() - rows(&[0.0, 2.0, 0.5, 0.0])).norm() < 1e-14);
        let at = d.operator() * &s;
        assert!((at.entries() - rows(&[0.0, 2.0, 1.0, 0.0])).norm() < 1e-14);

        let deg = semi(&[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(deg.sharp(&swap()), Err(Error::NoAAdjoint));
    }

    #[test]
    fn seminorm_examples() {
        let id = semi(&[1.0, 0.0, 0.0, 1.0]);
        assert!((id.a_operator_seminorm(&swap()) - 1.0).abs() < 1e-12);
        assert!((id.a_operator_seminorm(&constant_map()) - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(id.a_operator_seminorm(&OperatorMatrix::zero(&space2())), 0.0);
    }

    #[test]
    fn oracle_examples_swap() {
        let a = SemiInnerProduct::new(
            multiplication_operator(&MeasurableFunction::constant(&space2(), 1.0)),
            DEFAULT_TOL,
        )
        .unwrap();
        for p in [Property::SelfAdjoint, Property::Isometry, Property::Unitary, Property::Normal] {
            assert!(a.oracle_is(p, &swap(), 1e-8).unwrap().verdict, "{p}");
        }
        let a12 = SemiInnerProduct::new(
            multiplication_operator(&MeasurableFunction::from_real(&space2(), &[1.0, 2.0]).unwrap()),
            DEFAULT_TOL,
        )
        .unwrap();
        assert!(!a12.oracle_is(Property::SelfAdjoint, &swap(), 1e-8).unwrap().verdict);
    }

    #[test]
    fn oracle_examples_constant_map() {
        let id = semi(&[1.0, 0.0, 0.0, 1.0]);
        let k = constant_map();
        assert!(!id.oracle_is(Property::Normal, &k, 1e-8).unwrap().verdict);
        assert!(!id.oracle_is(Property::Quasinormal, &k, 1e-8).unwrap().verdict);
        let s = id.sharp(&k).unwrap();
        let lhs = &(&k * &s) * &k;
        let rhs = &(&s * &k) * &k;
        assert!((lhs.entries() - rows(&[2.0, 0.0, 2.0, 0.0])).norm() < 1e-14);
        assert!((rhs.entries() - rows(&[2.0, 0.0, 0.0, 0.0])).norm() < 1e-14);
        let pi = id.oracle_is(Property::PartialIsometry, &k, 1e-8).unwrap();
        assert!(!pi.verdict);
        // The form (J − u)μ is 1/2 on the indicator of atom 0; on the μ-unit
        // vector √2·e_0 it is 1. Normalized by ‖A‖·‖T‖² = √2 · 2.
        assert!((pi.residual - 1.0 / (2f64.sqrt() * 2.0)).abs() < 1e-12);
    }

    #[test]
    fn oracle_requires_a_adjoint_for_normality() {
        let deg = semi(&[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(
            deg.oracle_is(Property::Normal, &swap(), 1e-8),
            Err(Error::NoAAdjoint)
        );
        assert!(deg.oracle_is(Property::Isometry, &swap(), 1e-8).is_ok());
    }

    #[test]
    fn hyponormal_definitional_check() {
        let id = semi(&[1.0, 0.0, 0.0, 1.0]);
        // T*T − TT* = [[1, −1], [−1, −1]] has eigenvalues ±√2
        let v = id.oracle_is(Property::Hyponormal, &constant_map(), 1e-8).unwrap();
        assert!(!v.verdict);
        assert!(id.oracle_is(Property::Hyponormal, &swap(), 1e-8).unwrap().verdict);
    }

    #[test]
    fn rejects_non_positive_a() {
        assert!(matches!(
            SemiInnerProduct::new(swap(), DEFAULT_TOL),
            Err(Error::NotPositive { .. })
        ));
    }
}
