//! Measure-theoretic characterizations of `C_φ` being A-selfadjoint, A-normal,
//! A-quasinormal, an A-isometry, an A-partial isometry or A-unitary, for
//! `A = M_u` with `u ≥ 0` and for a positive `A = C_ψ`.
//!
//! Everything is computed from `h_φ`, conditional expectations and the weight
//! `J = h_φ · E(u) ∘ φ⁻¹`; no operator matrices are formed except the compression
//! used by the partial-isometry form.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::measure::{MeasurableFunction, PointMap};
use crate::operator::{composition_operator, Subspace, DEFAULT_TOL};
use crate::property::Property;

/// Outcome of a formula-level criterion with the intermediate functions that
/// produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionVerdict {
    pub property: Property,
    pub verdict: bool,
    #[serde(with = "crate::report::residual_serde")]
    pub residual: f64,
    /// Atom of the largest violation, if any atom is singled out.
    pub witness_atom: Option<usize>,
    pub witness: String,
    pub components: BTreeMap<String, Vec<f64>>,
}

/// `J = h_φ · E(u) ∘ φ⁻¹`.
pub fn j_weight(u: &MeasurableFunction, phi: &PointMap) -> Result<MeasurableFunction> {
    phi.radon_nikodym().mul(&phi.push_inverse(u)?)
}

/// `(1/u) χ_{S(u)}`.
fn inverse_on_support(u: &MeasurableFunction) -> MeasurableFunction {
    let cutoff = crate::measure::DEFAULT_SUPPORT_TOL * u.max_abs();
    u.map(|z| {
        if z.norm() > cutoff {
            Complex64::new(1.0, 0.0) / z
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

fn check_weight(u: &MeasurableFunction, phi: &PointMap) -> Result<()> {
    u.space().check_same(phi.space())?;
    let scale = u.max_abs().max(1.0);
    if u.max_imag() > DEFAULT_TOL * scale {
        return Err(Error::Input("weight u must be real-valued".into()));
    }
    if let Some(i) = u.values().iter().position(|z| z.re < -DEFAULT_TOL * scale) {
        return Err(Error::Input(format!(
            "weight u must be nonnegative (u({i}) = {})",
            u.get(i).re
        )));
    }
    Ok(())
}

/// Largest `|a − b|` and where it occurs.
fn sup_distance(a: &MeasurableFunction, b: &MeasurableFunction) -> (f64, usize) {
    a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y).norm())
        .enumerate()
        .fold((0.0, 0), |best, (i, d)| if d > best.0 { (d, i) } else { best })
}

struct Context {
    h: MeasurableFunction,
    j: MeasurableFunction,
    components: BTreeMap<String, Vec<f64>>,
}

impl Context {
    fn new(u: &MeasurableFunction, phi: &PointMap) -> Result<Self> {
        check_weight(u, phi)?;
        let h = phi.radon_nikodym();
        let j = j_weight(u, phi)?;
        let mut components = BTreeMap::new();
        components.insert("u".to_string(), u.re());
        components.insert("h".to_string(), h.re());
        components.insert("J".to_string(), j.re());
        Ok(Self { h, j, components })
    }

    fn finish(
        mut self,
        property: Property,
        residual: f64,
        witness_atom: Option<usize>,
        witness: String,
        tol: f64,
        extra: Vec<(&str, &MeasurableFunction)>,
    ) -> CriterionVerdict {
        for (name, f) in extra {
            self.components.insert(name.to_string(), f.re());
        }
        CriterionVerdict {
            property,
            verdict: residual <= tol,
            residual,
            witness_atom,
            witness,
            components: self.components,
        }
    }
}

/// `φ` restricted to `S_J` has period two and `J = u`.
pub fn crit_selfadjoint(u: &MeasurableFunction, phi: &PointMap, tol: f64) -> Result<CriterionVerdict> {
    let ctx = Context::new(u, phi)?;
    let support = ctx.j.support_default();
    let defect = support
        .iter()
        .copied()
        .find(|&i| phi.apply(phi.apply(i)) != i);
    let (dist, at) = sup_distance(&ctx.j, u);
    let (residual, atom, witness) = match defect {
        Some(i) => (
            f64::INFINITY,
            i,
            format!("φ(φ({i})) = {} ≠ {i} with {i} ∈ S_J", phi.apply(phi.apply(i))),
        ),
        None => (dist, at, format!("max |J − u| = {dist:.6e} at atom {at}")),
    };
    let chi: Vec<f64> = (0..u.len())
        .map(|i| if support.contains(&i) { 1.0 } else { 0.0 })
        .collect();
    let chi = MeasurableFunction::from_real(u.space(), &chi)?;
    Ok(ctx.finish(
        Property::SelfAdjoint,
        residual,
        Some(atom),
        witness,
        tol,
        vec![("chi_S_J", &chi)],
    ))
}

/// `((1/u)χ_{S(u)} h) ∘ φ · u = (1/u)χ_{S(u)} · J`.
pub fn crit_normal(u: &MeasurableFunction, phi: &PointMap, tol: f64) -> Result<CriterionVerdict> {
    let ctx = Context::new(u, phi)?;
    let inv = inverse_on_support(u);
    let g = inv.mul(&ctx.h)?;
    let lhs = g.compose(phi)?.mul(u)?;
    let rhs = inv.mul(&ctx.j)?;
    let (residual, at) = sup_distance(&lhs, &rhs);
    Ok(ctx.finish(
        Property::Normal,
        residual,
        Some(at),
        format!("max |LHS − RHS| = {residual:.6e} at atom {at}"),
        tol,
        vec![("lhs", &lhs), ("rhs", &rhs)],
    ))
}

/// `(1/u)χ_{S(u)} J · h = ((1/u)χ_{S(u)} J) ∘ φ⁻¹ · h`.
pub fn crit_quasinormal(u: &MeasurableFunction, phi: &PointMap, tol: f64) -> Result<CriterionVerdict> {
    let ctx = Context::new(u, phi)?;
    let g = inverse_on_support(u).mul(&ctx.j)?;
    let lhs = g.mul(&ctx.h)?;
    let rhs = phi.push_inverse(&g)?.mul(&ctx.h)?;
    let (residual, at) = sup_distance(&lhs, &rhs);
    Ok(ctx.finish(
        Property::Quasinormal,
        residual,
        Some(at),
        format!("max |LHS − RHS| = {residual:.6e} at atom {at}"),
        tol,
        vec![("lhs", &lhs), ("rhs", &rhs)],
    ))
}

/// `u = J`.
pub fn crit_isometry(u: &MeasurableFunction, phi: &PointMap, tol: f64) -> Result<CriterionVerdict> {
    let ctx = Context::new(u, phi)?;
    let (residual, at) = sup_distance(&ctx.j, u);
    Ok(ctx.finish(
        Property::Isometry,
        residual,
        Some(at),
        format!("max |J − u| = {residual:.6e} at atom {at}"),
        tol,
        vec![],
    ))
}

/// `∫ (J − u)|f|² dμ = 0` for every `f ∈ (u·L²(X∖S_J))^⊥`, checked as the
/// vanishing of the compression of `f ↦ Σ μ_i (J − u)_i |f_i|²` to that subspace.
pub fn crit_partial_isometry(
    u: &MeasurableFunction,
    phi: &PointMap,
    tol: f64,
) -> Result<CriterionVerdict> {
    let ctx = Context::new(u, phi)?;
    let space = u.space();
    let support = ctx.j.support_default();
    let outside: Vec<MeasurableFunction> = (0..u.len())
        .filter(|i| !support.contains(i))
        .map(|k| MeasurableFunction::indicator(space, k).mul(u))
        .collect::<Result<_>>()?;
    let k = Subspace::span(space, &outside, DEFAULT_TOL).ortho_complement();
    let b = k.basis_matrix();
    let w = space.weights();
    let diff = ctx.j.sub(u)?;
    let form = CMatrix::from_fn(b.nrows(), b.ncols(), |i, c| b[(i, c)] * (w[i] * diff.get(i)));
    let compression = b.adjoint() * form;
    let residual = compression.norm();
    Ok(ctx.finish(
        Property::PartialIsometry,
        residual,
        None,
        format!(
            "compression of (J − u) to (u·L²(X∖S_J))^⊥ (dimension {}) has norm {residual:.6e}",
            k.dim()
        ),
        tol,
        vec![("J_minus_u", &diff)],
    ))
}

/// `u = J = (u · h_φ) ∘ φ`.
pub fn crit_unitary(u: &MeasurableFunction, phi: &PointMap, tol: f64) -> Result<CriterionVerdict> {
    let ctx = Context::new(u, phi)?;
    let uh_phi = u.mul(&ctx.h)?.compose(phi)?;
    let (d1, a1) = sup_distance(&ctx.j, u);
    let (d2, a2) = sup_distance(&uh_phi, u);
    let (residual, at, what) = if d1 >= d2 {
        (d1, a1, "|J − u|")
    } else {
        (d2, a2, "|(u·h)∘φ − u|")
    };
    Ok(ctx.finish(
        Property::Unitary,
        residual,
        Some(at),
        format!("max {what} = {residual:.6e} at atom {at}"),
        tol,
        vec![("uh_circ_phi", &uh_phi)],
    ))
}

/// Dispatches to the criterion for `property` with `A = M_u`.
pub fn criterion(
    property: Property,
    u: &MeasurableFunction,
    phi: &PointMap,
    tol: f64,
) -> Result<CriterionVerdict> {
    match property {
        Property::SelfAdjoint => crit_selfadjoint(u, phi, tol),
        Property::Normal => crit_normal(u, phi, tol),
        Property::Quasinormal => crit_quasinormal(u, phi, tol),
        Property::Isometry => crit_isometry(u, phi, tol),
        Property::Unitary => crit_unitary(u, phi, tol),
        Property::PartialIsometry => crit_partial_isometry(u, phi, tol),
        Property::Hyponormal => Err(Error::Input(
            "no measure-theoretic criterion exists for hyponormal".into(),
        )),
    }
}

/// `ψ⁻¹(Σ) ⊆ φ⁻¹(Σ)`: every φ-fiber lies inside one ψ-fiber.
pub fn sigma_containment(psi: &PointMap, phi: &PointMap) -> bool {
    phi.fibers().refines(&psi.fibers())
}

/// Criteria relative to a positive composition operator `A = C_ψ`, which then
/// equals `M_{√h_ψ}`. Fails if `C_ψ` is not positive on `L²(μ)`.
pub fn crit_cpsi(
    property: Property,
    psi: &PointMap,
    phi: &PointMap,
    tol: f64,
) -> Result<CriterionVerdict> {
    match property {
        Property::SelfAdjoint
        | Property::Isometry
        | Property::PartialIsometry
        | Property::Unitary => {}
        other => {
            return Err(Error::Input(format!(
                "no C_ψ-relative criterion for {other}"
            )))
        }
    }
    psi.space().check_same(phi.space())?;
    // positivity, with the offending eigenvalue or asymmetry in the error
    composition_operator(psi).sqrt(DEFAULT_TOL)?;
    let u = psi.radon_nikodym().map(|z| Complex64::new(z.re.max(0.0).sqrt(), 0.0));
    let mut verdict = criterion(property, &u, phi, tol)?;
    if property == Property::Unitary {
        let contained = sigma_containment(psi, phi);
        verdict
            .components
            .insert("sigma_containment".into(), vec![if contained { 1.0 } else { 0.0 }]);
        if !contained {
            verdict.verdict = false;
            verdict.residual = f64::INFINITY;
            verdict.witness = format!(
                "ψ⁻¹(Σ) ⊄ φ⁻¹(Σ): φ-fibers {:?} do not refine ψ-fibers {:?}",
                phi.fibers().blocks(),
                psi.fibers().blocks()
            );
        }
    }
    Ok(verdict)
}
