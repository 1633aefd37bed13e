//! Scenario checks, exhaustive searches, interval examples and Douglas demos,
//! each producing a deterministic report.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::criteria::{crit_cpsi, criterion, CriterionVerdict};
use crate::error::{Error, Result};
use crate::interval::{
    cond_exp_interval, crit_interval, grid_points, BranchMap, GridFunction, WeightFn,
};
use crate::linalg::{self, CMatrix};
use crate::measure::{FiniteMeasureSpace, MeasurableFunction, PointMap};
use crate::operator::{composition_operator, multiplication_operator, OperatorMatrix, DEFAULT_TOL};
use crate::par::Execution;
use crate::property::Property;
use crate::report::{
    CheckRecord, CheckReport, Disagreement, DouglasRunReport, DouglasTrial, ExampleReport,
    Finding, Meta, Mode, SearchReport, REPORT_VERSION,
};
use crate::semihilbert::{douglas_check, douglas_reduced_solution, ClassVerdict, SemiInnerProduct};

pub const DEFAULT_CHECK_TOL: f64 = 1e-9;
/// Largest `n` accepted by [`run_search`]; `7⁷` maps is already 823543.
pub const MAX_SEARCH_N: usize = 6;
/// Tolerance for the Douglas demo and its reduced-solution checks.
pub const DOUGLAS_TOL: f64 = 1e-9;

/// A weight given either by its values or by a closed form. Closed forms are
/// evaluated at the atom coordinates `(i + ½)/n` on finite spaces.
#[derive(Clone, Debug, PartialEq)]
pub enum WeightSpec {
    Values(Vec<Complex64>),
    Form(WeightFn),
}

impl WeightSpec {
    /// Parses `1,2,3`, `const:c`, `exp`, `exp:r`, `affine:a:b` or
    /// `piecewise:b1,b2:v1,v2,v3`.
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = |why: &str| Error::Input(format!("u: cannot parse '{spec}': {why}"));
        let num = |s: &str| -> Result<f64> {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| bad(&format!("'{s}' is not a finite number")))
        };
        let list = |s: &str| -> Result<Vec<f64>> {
            if s.trim().is_empty() {
                return Ok(Vec::new());
            }
            s.split(',').map(num).collect()
        };
        let parts: Vec<&str> = spec.trim().split(':').collect();
        let form = match parts.as_slice() {
            ["const", c] => WeightFn::Const { value: num(c)? },
            ["exp"] => WeightFn::Exp { rate: 1.0 },
            ["exp", r] => WeightFn::Exp { rate: num(r)? },
            ["affine", a, b] => WeightFn::Affine { a: num(a)?, b: num(b)? },
            ["piecewise", breaks, values] => WeightFn::piecewise(list(breaks)?, list(values)?)?,
            [values] if values.contains(',') || values.trim().parse::<f64>().is_ok() => {
                let v = list(values)?;
                return Ok(WeightSpec::Values(
                    v.into_iter().map(|x| Complex64::new(x, 0.0)).collect(),
                ));
            }
            _ => return Err(bad("expected a list or const:c, exp[:r], affine:a:b, piecewise:breaks:values")),
        };
        Ok(WeightSpec::Form(form))
    }

    /// Values on the `n` atoms.
    pub fn on_atoms(&self, n: usize) -> Result<Vec<Complex64>> {
        match self {
            WeightSpec::Values(v) if v.len() == n => Ok(v.clone()),
            WeightSpec::Values(v) => Err(Error::Input(format!(
                "u: has {} entries but the space has {n} atoms",
                v.len()
            ))),
            WeightSpec::Form(f) => Ok(grid_points(n)
                .into_iter()
                .map(|x| Complex64::new(f.eval(x), 0.0))
                .collect()),
        }
    }

    /// A weight on `[0,1]`; value lists become grid samples.
    pub fn on_interval(&self) -> Result<WeightFn> {
        match self {
            WeightSpec::Form(f) => Ok(f.clone()),
            WeightSpec::Values(v) => {
                if v.iter().any(|z| z.im != 0.0) {
                    return Err(Error::Input("u: interval weights must be real".into()));
                }
                Ok(WeightFn::Grid {
                    grid: GridFunction::new(v.iter().map(|z| z.re).collect())?,
                })
            }
        }
    }
}

/// Parses `uniform` or a comma-separated list of atom masses.
pub fn parse_mu_spec(spec: &str, n: usize) -> Result<Vec<f64>> {
    let spec = spec.trim();
    if spec == "uniform" {
        return Ok(vec![1.0 / n as f64; n]);
    }
    let masses = spec
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Input(format!("mu: '{s}' is not a number")))
        })
        .collect::<Result<Vec<f64>>>()?;
    if masses.len() != n {
        return Err(Error::Input(format!(
            "mu: has {} entries but n = {n}",
            masses.len()
        )));
    }
    FiniteMeasureSpace::new(masses.clone()).map_err(|e| Error::Input(format!("mu: {e}")))?;
    Ok(masses)
}

/// A validated scenario file.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub weights: Vec<f64>,
    pub phi: Vec<usize>,
    pub psi: Option<Vec<usize>>,
    pub u: Option<WeightSpec>,
    pub checks: Vec<Property>,
    pub tol: f64,
    pub mode: Mode,
}

fn field_err(field: &str, why: impl std::fmt::Display) -> Error {
    Error::Input(format!("{field}: {why}"))
}

fn real_field(field: &str, v: &Value) -> Result<f64> {
    v.as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| field_err(field, format!("expected a finite number, got {v}")))
}

fn map_field(obj: &Map<String, Value>, field: &str, n: usize) -> Result<Option<Vec<usize>>> {
    let Some(v) = obj.get(field) else {
        return Ok(None);
    };
    if v.is_null() {
        return Ok(None);
    }
    let items = v
        .as_array()
        .ok_or_else(|| field_err(field, "expected an array of atom indices"))?;
    if items.len() != n {
        return Err(field_err(
            field,
            format!("has {} entries but weights has {n}", items.len()),
        ));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let t = t
                .as_u64()
                .ok_or_else(|| field_err(field, format!("entry {i} is not a nonnegative integer")))?
                as usize;
            if t >= n {
                return Err(field_err(field, format!("entry {i} targets atom {t} but n = {n}")));
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        let root: Value = serde_json::from_str(text)
            .map_err(|e| Error::Input(format!("scenario is not valid JSON: {e}")))?;
        let obj = root
            .as_object()
            .ok_or_else(|| Error::Input("scenario: expected a JSON object".into()))?;
        const KNOWN: [&str; 8] = ["v", "weights", "phi", "psi", "u", "checks", "tol", "mode"];
        if let Some(k) = obj.keys().find(|k| !KNOWN.contains(&k.as_str())) {
            return Err(field_err(k, "unknown field"));
        }

        match obj.get("v").map(|v| v.as_u64()) {
            Some(Some(1)) => {}
            None => return Err(field_err("v", "missing schema version")),
            Some(_) => return Err(field_err("v", format!("unsupported version {}", obj["v"]))),
        }

        let weights = obj
            .get("weights")
            .ok_or_else(|| field_err("weights", "missing"))?
            .as_array()
            .ok_or_else(|| field_err("weights", "expected an array of masses"))?
            .iter()
            .map(|w| real_field("weights", w))
            .collect::<Result<Vec<f64>>>()?;
        FiniteMeasureSpace::new(weights.clone()).map_err(|e| field_err("weights", e))?;
        let n = weights.len();

        let phi = map_field(obj, "phi", n)?.ok_or_else(|| field_err("phi", "missing"))?;
        let psi = map_field(obj, "psi", n)?;

        let u = match obj.get("u") {
            None | Some(Value::Null) => None,
            Some(Value::Array(items)) => {
                if items.len() != n {
                    return Err(field_err(
                        "u",
                        format!("has {} entries but weights has {n}", items.len()),
                    ));
                }
                let values = items
                    .iter()
                    .map(|z| match z {
                        Value::Array(pair) if pair.len() == 2 => Ok(Complex64::new(
                            real_field("u", &pair[0])?,
                            real_field("u", &pair[1])?,
                        )),
                        other => Ok(Complex64::new(real_field("u", other)?, 0.0)),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Some(WeightSpec::Values(values))
            }
            Some(Value::Object(form)) => {
                let name = form
                    .get("form")
                    .and_then(Value::as_str)
                    .ok_or_else(|| field_err("u.form", "expected \"exp\" or \"const\""))?;
                let param = match form.get("param") {
                    None => None,
                    Some(p) => Some(real_field("u.param", p)?),
                };
                Some(WeightSpec::Form(match (name, param) {
                    ("exp", p) => WeightFn::Exp { rate: p.unwrap_or(1.0) },
                    ("const", Some(c)) => WeightFn::Const { value: c },
                    ("const", None) => return Err(field_err("u.param", "const needs a value")),
                    (other, _) => {
                        return Err(field_err(
                            "u.form",
                            format!("unknown form '{other}' (expected exp or const)"),
                        ))
                    }
                }))
            }
            Some(other) => {
                return Err(field_err("u", format!("expected an array or a form object, got {other}")))
            }
        };
        if u.is_some() && psi.is_some() {
            return Err(field_err("u", "cannot be combined with psi (A = C_ψ fixes the weight)"));
        }

        let checks = obj
            .get("checks")
            .ok_or_else(|| field_err("checks", "missing"))?
            .as_array()
            .ok_or_else(|| field_err("checks", "expected an array of property names"))?
            .iter()
            .map(|c| {
                c.as_str()
                    .ok_or_else(|| field_err("checks", format!("{c} is not a string")))?
                    .parse::<Property>()
                    .map_err(|e| field_err("checks", e))
            })
            .collect::<Result<Vec<_>>>()?;
        if checks.is_empty() {
            return Err(field_err("checks", "must not be empty"));
        }

        let tol = match obj.get("tol") {
            None => DEFAULT_CHECK_TOL,
            Some(t) => real_field("tol", t)?,
        };
        if tol <= 0.0 {
            return Err(field_err("tol", "must be positive"));
        }
        let mode = match obj.get("mode") {
            None => Mode::default(),
            Some(m) => m
                .as_str()
                .ok_or_else(|| field_err("mode", "expected a string"))?
                .parse()?,
        };

        Ok(Self {
            weights,
            phi,
            psi,
            u,
            checks,
            tol,
            mode,
        })
    }
}

/// Matrix verdict, treating `T ∉ B_A(H)` as outside every class that needs
/// the A-adjoint.
pub fn matrix_verdict(
    sip: &SemiInnerProduct,
    property: Property,
    t: &OperatorMatrix,
    tol: f64,
) -> Result<ClassVerdict> {
    match sip.oracle_is(property, t, tol) {
        Err(Error::NoAAdjoint) => Ok(ClassVerdict {
            property,
            verdict: false,
            residual: f64::INFINITY,
            witness: "T has no A-adjoint: R(T*A) ⊄ R(A)".into(),
            sharp_variant: None,
        }),
        other => other,
    }
}

fn criterion_supports_cpsi(p: Property) -> bool {
    matches!(
        p,
        Property::SelfAdjoint | Property::Isometry | Property::PartialIsometry | Property::Unitary
    )
}

pub fn run_check(scenario: &Scenario) -> Result<CheckReport> {
    let space = FiniteMeasureSpace::new(scenario.weights.clone())?;
    let n = space.len();
    let phi = PointMap::new(&space, scenario.phi.clone())?;
    let psi = scenario
        .psi
        .as_ref()
        .map(|t| PointMap::new(&space, t.clone()))
        .transpose()?;
    let u = match (&scenario.u, &psi) {
        (Some(spec), _) => Some(MeasurableFunction::new(&space, spec.on_atoms(n)?)?),
        (None, None) => Some(MeasurableFunction::constant(&space, 1.0)),
        (None, Some(_)) => None,
    };
    let a = match (&psi, &u) {
        (Some(psi), _) => composition_operator(psi),
        (None, Some(u)) => multiplication_operator(u),
        (None, None) => unreachable!("u defaults to 1 without psi"),
    };
    let t = composition_operator(&phi);
    let tol = scenario.tol;
    let mode = scenario.mode;
    let sip = if mode.matrix() {
        Some(SemiInnerProduct::new(a, DEFAULT_TOL))
    } else {
        None
    };

    let mut findings = Vec::new();
    if let Some(psi) = &psi {
        findings.push(Finding::new(
            "cpsi_degenerate",
            "on a finite space with positive masses C_ψ is positive only for ψ = identity, so A = C_ψ reduces to the identity whenever it is admissible",
            json!({ "psi": psi.targets(), "psi_is_identity": psi.targets().iter().enumerate().all(|(i, &t)| i == t) }),
        ));
    }

    let mut records = Vec::with_capacity(scenario.checks.len());
    for &property in &scenario.checks {
        let mut rec = CheckRecord {
            property: property.name().to_string(),
            ..CheckRecord::default()
        };
        let mut witnesses = Vec::new();

        if let Some(sip) = &sip {
            match sip.as_ref().map_err(Clone::clone).and_then(|s| matrix_verdict(s, property, &t, tol)) {
                Ok(v) => {
                    rec.matrix_verdict = Some(v.verdict);
                    rec.matrix_residual = Some(v.residual);
                    witnesses.push(format!("matrix: {}", v.witness));
                    if v.conventions_diverge() {
                        let sv = v.sharp_variant.as_ref().expect("divergence implies a variant");
                        findings.push(Finding::new(
                            "unitary_convention",
                            "TAT* = A and TAT♯ = A give different unitarity verdicts",
                            json!({ "adjoint_verdict": v.verdict, "sharp_verdict": sv.verdict, "sharp_residual": sv.residual }),
                        ));
                    }
                }
                Err(e) => rec.errors.push(format!("matrix: {e}")),
            }
        }

        if mode.formula() {
            let outcome: Option<Result<CriterionVerdict>> = match (&psi, &u) {
                (Some(psi), _) if criterion_supports_cpsi(property) => {
                    Some(crit_cpsi(property, psi, &phi, tol))
                }
                (Some(_), _) => {
                    rec.note = Some(format!("no C_ψ-relative criterion for {property}; matrix only"));
                    None
                }
                (None, Some(_)) if property == Property::Hyponormal => {
                    rec.note = Some("no measure-theoretic criterion for hyponormal; matrix only".into());
                    None
                }
                (None, Some(u)) => Some(criterion(property, u, &phi, tol)),
                (None, None) => unreachable!(),
            };
            match outcome {
                Some(Ok(v)) => {
                    rec.formula_verdict = Some(v.verdict);
                    rec.formula_residual = Some(v.residual);
                    witnesses.push(format!("formula: {}", v.witness));
                    rec.components = v.components;
                }
                Some(Err(e)) => rec.errors.push(format!("formula: {e}")),
                None => {}
            }
        }

        if let (Some(m), Some(f)) = (rec.matrix_verdict, rec.formula_verdict) {
            rec.agree = Some(m == f);
        }
        rec.witness = witnesses.join("; ");
        records.push(rec);
    }

    Ok(CheckReport {
        v: REPORT_VERSION,
        kind: "check".into(),
        meta: Meta::new(tol),
        mode,
        n,
        records,
        findings,
    })
}

/// Targets of map number `index` in base-`n` enumeration.
pub fn map_from_index(index: usize, n: usize) -> Vec<usize> {
    let mut k = index;
    (0..n)
        .map(|_| {
            let d = k % n;
            k /= n;
            d
        })
        .collect()
}

pub struct SearchRequest {
    pub n: usize,
    pub property: Property,
    pub u: WeightSpec,
    pub mu: Vec<f64>,
    pub tol: f64,
}

/// Classifies all `nⁿ` maps on `n` atoms by matrix and formula predicates.
pub fn run_search(req: &SearchRequest, exec: Execution) -> Result<SearchReport> {
    let n = req.n;
    if n == 0 || n > MAX_SEARCH_N {
        return Err(Error::Input(format!(
            "n: search enumerates nⁿ maps and accepts 1 ≤ n ≤ {MAX_SEARCH_N}, got {n}; use check on individual scenarios for larger spaces"
        )));
    }
    let space = FiniteMeasureSpace::new(req.mu.clone()).map_err(|e| Error::Input(format!("mu: {e}")))?;
    if space.len() != n {
        return Err(Error::Input(format!("mu: has {} entries but n = {n}", space.len())));
    }
    let u_vals = req.u.on_atoms(n)?;
    let u = MeasurableFunction::new(&space, u_vals)?;
    let sip = SemiInnerProduct::new(multiplication_operator(&u), DEFAULT_TOL)
        .map_err(|e| Error::Input(format!("u: M_u is not positive ({e})")))?;
    let strict = u.values().iter().all(|z| z.re > 0.0 && z.im == 0.0);
    let has_formula = property_has_formula(req.property);

    let total = n.pow(n as u32);
    let rows = exec.map_indexed(total, |index| -> Result<(bool, Option<CriterionVerdict>, ClassVerdict)> {
        let phi = PointMap::new(&space, map_from_index(index, n))?;
        let m = matrix_verdict(&sip, req.property, &composition_operator(&phi), req.tol)?;
        let f = if has_formula {
            Some(criterion(req.property, &u, &phi, req.tol)?)
        } else {
            None
        };
        Ok((m.verdict, f, m))
    });

    let mut members = Vec::new();
    let mut formula_count = 0;
    let mut disagreements = Vec::new();
    let mut findings = Vec::new();
    for (index, row) in rows.into_iter().enumerate() {
        let (mv, f, m) = row?;
        if mv {
            members.push(index);
        }
        if let Some(f) = f {
            if f.verdict {
                formula_count += 1;
            }
            if f.verdict != mv {
                let phi = map_from_index(index, n);
                let d = Disagreement {
                    map_index: index,
                    phi: phi.clone(),
                    matrix_verdict: mv,
                    formula_verdict: f.verdict,
                    matrix_residual: m.residual,
                    formula_residual: f.residual,
                    witness: format!("matrix: {}; formula: {}", m.witness, f.witness),
                };
                findings.push(Finding::new(
                    "criterion_disagreement",
                    format!("{} verdicts differ for φ = {phi:?}", req.property),
                    serde_json::to_value(&d).expect("disagreement serializes"),
                ));
                disagreements.push(d);
            }
        }
    }
    let representatives = members.iter().take(5).map(|&k| map_from_index(k, n)).collect();

    Ok(SearchReport {
        v: REPORT_VERSION,
        kind: "search".into(),
        meta: Meta::new(req.tol),
        n,
        property: req.property.name().into(),
        mu: req.mu.clone(),
        u: u.re(),
        total_maps: total,
        matrix_count: members.len(),
        formula_count: has_formula.then_some(formula_count),
        members,
        representatives,
        disagreements,
        strict,
        findings,
    })
}

fn property_has_formula(p: Property) -> bool {
    Property::WITH_CRITERION.contains(&p)
}

impl SearchReport {
    /// Disagreements count as failures only for strictly positive weights.
    pub fn failed(&self) -> bool {
        self.strict && !self.disagreements.is_empty()
    }
}

/// Largest gap between the tent-map expectation computed from fibers and the
/// form `½{f(−x) + f(x)}` on `(½, 1]`, alongside the gap to
/// `½{f(1 − x) + f(x)}`.
pub fn tent_closed_form_gap(grid: usize) -> (f64, f64) {
    let tent = BranchMap::tent();
    let f = |x: f64| 1.0 + x + x * x;
    let mut literal: f64 = 0.0;
    let mut mirrored: f64 = 0.0;
    for x in grid_points(grid).into_iter().filter(|&x| x > 0.5) {
        let e = cond_exp_interval(&tent, &f, x);
        literal = literal.max((e - 0.5 * (f(-x) + f(x))).abs());
        mirrored = mirrored.max((e - 0.5 * (f(1.0 - x) + f(x))).abs());
    }
    (literal, mirrored)
}

pub struct ExampleRequest {
    pub name: String,
    pub u: WeightSpec,
    pub grid: usize,
    pub properties: Vec<Property>,
    pub tol: f64,
}

pub fn run_example(req: &ExampleRequest, exec: Execution) -> Result<ExampleReport> {
    let map = BranchMap::by_name(&req.name)?;
    if req.properties.is_empty() {
        return Err(Error::Input("properties: must not be empty".into()));
    }
    let u = req.u.on_interval()?;
    let results = req
        .properties
        .iter()
        .map(|&p| crit_interval(p, &map, &u, req.grid, req.tol, exec))
        .collect::<Result<Vec<_>>>()?;
    let mut findings = Vec::new();
    if map.name() == "tent" {
        let (literal, mirrored) = tent_closed_form_gap(req.grid);
        findings.push(Finding::new(
            "closed_form_discrepancy",
            "for x ∈ (½, 1] the fiber of φ(x) is {1 − x, x}, so E(f)(x) = ½{f(1 − x) + f(x)}; the form ½{f(−x) + f(x)} evaluates f outside [0,1]",
            json!({ "test_function": "1 + x + x^2", "gap_to_stated_form": literal, "gap_to_mirrored": mirrored }),
        ));
    }
    Ok(ExampleReport {
        v: REPORT_VERSION,
        kind: "example".into(),
        meta: Meta::new(req.tol),
        name: map.name().into(),
        u,
        grid: req.grid,
        results,
        findings,
    })
}

fn random_complex(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

/// `A†` from nalgebra's SVD, independent of the spectral kernels.
pub fn svd_pinv(a: &CMatrix) -> CMatrix {
    let m: DMatrix<Complex64> = a.clone();
    m.pseudo_inverse(1e-10 * a.norm().max(f64::MIN_POSITIVE))
        .expect("pseudo-inverse with nonnegative epsilon")
}

fn douglas_trial(seed: u64, index: usize) -> DouglasTrial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(index as u64));
    let inclusion = index.is_multiple_of(2);
    let n = rng.gen_range(2..=6);
    let rank_a = if inclusion {
        rng.gen_range(1..=n)
    } else {
        rng.gen_range(1..n)
    };
    let g = random_complex(&mut rng, n, rank_a);
    let a = &g * g.adjoint();
    let m = rng.gen_range(1..=n);
    let mut b = &a * random_complex(&mut rng, n, m);
    if !inclusion {
        // push one column out of R(A) = R(G) along N(A)
        let w = vec![1.0; n];
        let candidates: Vec<Vec<Complex64>> = linalg::columns(&g)
            .into_iter()
            .chain(linalg::columns(&random_complex(&mut rng, n, n)))
            .collect();
        let (basis, used) = linalg::weighted_gram_schmidt(&w, &candidates, 1e-8);
        let escape = basis
            .iter()
            .zip(&used)
            .find(|(_, &k)| k >= rank_a)
            .map(|(v, _)| v.clone())
            .expect("rank_a < n leaves room outside R(A)");
        let col = rng.gen_range(0..m);
        for i in 0..n {
            b[(i, col)] += escape[i];
        }
    }

    let check = douglas_check(&a, &b, DOUGLAS_TOL);
    let mut trial = DouglasTrial {
        index,
        n,
        rank_a,
        columns_b: m,
        constructed_inclusion: inclusion,
        ok: check.agree() && check.range_incl == inclusion,
        check,
        reduced_residual: None,
        reduced_vs_svd: None,
        error: None,
    };
    if inclusion {
        match douglas_reduced_solution(&a, &b, DOUGLAS_TOL) {
            Ok(sol) => {
                let gap = (&sol.w - svd_pinv(&a) * &b).camax();
                trial.reduced_residual = Some(sol.residual);
                trial.reduced_vs_svd = Some(gap);
                trial.ok &= sol.residual <= DOUGLAS_TOL && gap <= DOUGLAS_TOL;
            }
            Err(e) => {
                trial.ok = false;
                trial.error = Some(e.to_string());
            }
        }
    }
    trial
}

/// Random positive `A` with `B = AC` on even trials and `B` with a column
/// outside `R(A)` on odd trials.
pub fn run_douglas(seed: u64, trials: usize, exec: Execution) -> Result<DouglasRunReport> {
    if trials == 0 {
        return Err(Error::Input("trials: must be at least 1".into()));
    }
    let trials = exec.map_indexed(trials, |k| douglas_trial(seed, k));
    let violations = trials.iter().filter(|t| !t.ok).count();
    Ok(DouglasRunReport {
        v: REPORT_VERSION,
        kind: "douglas".into(),
        meta: Meta::new(DOUGLAS_TOL),
        seed,
        trials,
        violations,
    })
}

/// Serializes any report as pretty JSON with a trailing newline.
pub fn render<T: serde::Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scenario(text: &str) -> Result<Scenario> {
        Scenario::from_json(text)
    }

    #[test]
    fn swap_unitary_agrees() {
        let s = scenario(r#"{"v":1,"weights":[0.5,0.5],"phi":[1,0],"u":[1,1],"checks":["unitary"],"tol":1e-9,"mode":"both"}"#).unwrap();
        let r = run_check(&s).unwrap();
        let rec = &r.records[0];
        assert_eq!(rec.matrix_verdict, Some(true));
        assert_eq!(rec.formula_verdict, Some(true));
        assert_eq!(rec.agree, Some(true));
    }

    #[test]
    fn constant_map_all_false_and_agreeing() {
        let s = scenario(r#"{"v":1,"weights":[0.5,0.5],"phi":[0,0],"u":[1,1],"checks":["normal","quasinormal","partial_isometry"]}"#).unwrap();
        let r = run_check(&s).unwrap();
        assert_eq!(r.disagreements(), 0);
        for rec in &r.records {
            assert_eq!(rec.matrix_verdict, Some(false), "{}", rec.property);
            assert_eq!(rec.formula_verdict, Some(false), "{}", rec.property);
        }
    }

    #[test]
    fn validation_names_the_field() {
        let cases = [
            (r#"{"v":1,"weights":[0.5,0.5],"phi":[1,0],"u":[1,1,1],"checks":["unitary"]}"#, "u:"),
            (r#"{"v":1,"weights":[0.5,0.5],"phi":[1,2],"checks":["unitary"]}"#, "phi:"),
            (r#"{"v":1,"weights":[0.5,0.5],"phi":[1,0],"checks":[]}"#, "checks:"),
            (r#"{"v":1,"weights":[0.5,0.5],"phi":[1,0],"checks":["unitary"],"tol":0}"#, "tol:"),
            (r#"{"v":2,"weights":[0.5,0.5],"phi":[1,0],"checks":["unitary"]}"#, "v:"),
            (r#"{"v":1,"weights":[0.5,-1],"phi":[1,0],"checks":["unitary"]}"#, "weights:"),
            (r#"{"v":1,"weights":[0.5,0.5],"phi":[1,0],"checks":["unitary"],"extra":1}"#, "extra:"),
            (r#"{"v":1,"weights":[0.5,0.5],"phi":[1,0],"checks":["bogus"]}"#, "checks:"),
            (r#"{"v":1,"weights":[0.5,0.5],"phi":[1,0],"u":{"form":"sin"},"checks":["unitary"]}"#, "u.form:"),
            (r#"{"v":1,"weights":[0.5,0.5],"phi":[1,0],"psi":[0,1],"u":[1,1],"checks":["unitary"]}"#, "u:"),
        ];
        for (text, field) in cases {
            let msg = scenario(text).unwrap_err().to_string();
            assert!(msg.contains(field), "{msg} should name {field}");
        }
    }

    #[test]
    fn complex_and_form_weights_parse() {
        let s = scenario(r#"{"v":1,"weights":[0.5,0.5],"phi":[1,0],"u":[[1,0],2],"checks":["isometry"]}"#).unwrap();
        assert_eq!(s.u, Some(WeightSpec::Values(vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)])));
        let s = scenario(r#"{"v":1,"weights":[0.5,0.5],"phi":[1,0],"u":{"form":"const","param":3},"checks":["isometry"]}"#).unwrap();
        assert_eq!(s.u.unwrap().on_atoms(2).unwrap(), vec![Complex64::new(3.0, 0.0); 2]);
    }

    #[test]
    fn cpsi_scenarios() {
        let s = scenario(r#"{"v":1,"weights":[0.5,0.5],"phi":[1,0],"psi":[0,1],"checks":["selfadjoint","unitary","normal"]}"#).unwrap();
        let r = run_check(&s).unwrap();
        assert_eq!(r.records[0].agree, Some(true));
        assert_eq!(r.records[1].agree, Some(true));
        assert!(r.records[2].note.is_some());
        assert_eq!(r.findings[0].kind, "cpsi_degenerate");
        let s = scenario(r#"{"v":1,"weights":[0.5,0.5],"phi":[1,0],"psi":[1,0],"checks":["isometry"]}"#).unwrap();
        let r = run_check(&s).unwrap();
        assert_eq!(r.records[0].errors.len(), 2);
        assert_eq!(r.records[0].agree, None);
    }

    #[test]
    fn weight_specs() {
        assert_eq!(WeightSpec::parse("1,2").unwrap().on_atoms(2).unwrap()[1], Complex64::new(2.0, 0.0));
        assert_eq!(WeightSpec::parse("3").unwrap().on_atoms(1).unwrap()[0].re, 3.0);
        assert_eq!(WeightSpec::parse("exp").unwrap(), WeightSpec::Form(WeightFn::Exp { rate: 1.0 }));
        assert_eq!(WeightSpec::parse("affine:1:2").unwrap(), WeightSpec::Form(WeightFn::Affine { a: 1.0, b: 2.0 }));
        assert!(WeightSpec::parse("piecewise:0.5:1,2").is_ok());
        assert!(WeightSpec::parse("sin").is_err());
        assert!(WeightSpec::parse("1,2").unwrap().on_atoms(3).is_err());
        assert_eq!(parse_mu_spec("uniform", 4).unwrap(), vec![0.25; 4]);
        assert!(parse_mu_spec("0.5,0.5", 3).is_err());
        assert!(parse_mu_spec("0.5,0", 2).is_err());
    }

    #[test]
    fn search_examples() {
        let req = |n, p| SearchRequest {
            n,
            property: p,
            u: WeightSpec::Form(WeightFn::Const { value: 1.0 }),
            mu: vec![1.0 / n as f64; n],
            tol: 1e-8,
        };
        let r = run_search(&req(2, Property::SelfAdjoint), Execution::Sequential).unwrap();
        assert_eq!(r.total_maps, 4);
        let mut members: Vec<_> = r.members.iter().map(|&k| map_from_index(k, 2)).collect();
        members.sort();
        assert_eq!(members, vec![vec![0, 1], vec![1, 0]]);
        let r = run_search(&req(3, Property::Unitary), Execution::Parallel).unwrap();
        assert_eq!(r.matrix_count, 6);
        assert!(r.disagreements.is_empty());
        assert!(run_search(&req(7, Property::Unitary), Execution::Sequential).is_err());
    }

    #[test]
    fn example_reports() {
        let req = ExampleRequest {
            name: "doubling".into(),
            u: WeightSpec::parse("exp").unwrap(),
            grid: 1024,
            properties: vec![Property::Normal],
            tol: 1e-9,
        };
        let r = run_example(&req, Execution::Sequential).unwrap();
        assert!(!r.results[0].verdict);
        assert!((r.results[0].probe_residual - 0.32436).abs() < 1e-3);
        let tent = ExampleRequest { name: "tent".into(), ..req };
        let r = run_example(&tent, Execution::Sequential).unwrap();
        assert_eq!(r.findings[0].kind, "closed_form_discrepancy");
        let (literal, mirrored) = tent_closed_form_gap(1024);
        assert!(literal > 0.1 && mirrored < 1e-12);
        let bad = ExampleRequest {
            name: "baker".into(),
            u: WeightSpec::parse("exp").unwrap(),
            grid: 16,
            properties: vec![Property::Normal],
            tol: 1e-9,
        };
        assert!(run_example(&bad, Execution::Sequential).is_err());
    }

    #[test]
    fn douglas_demo_is_clean_and_deterministic() {
        let a = run_douglas(7, 20, Execution::Parallel).unwrap();
        assert_eq!(a.violations, 0, "{}", render(&a));
        let b = run_douglas(7, 20, Execution::Sequential).unwrap();
        assert_eq!(render(&a), render(&b));
        assert!(run_douglas(7, 0, Execution::Sequential).is_err());
    }

    #[test]
    fn reports_round_trip() {
        let s = scenario(r#"{"v":1,"weights":[0.2,0.3,0.5],"phi":[1,2,0],"u":[1,2,3],"checks":["selfadjoint","normal","hyponormal","partial_isometry"]}"#).unwrap();
        let r = run_check(&s).unwrap();
        let back: CheckReport = serde_json::from_str(&render(&r)).unwrap();
        assert_eq!(back, r);
    }
}
