//! One function per subcommand; each returns a [`Report`] or an input error.

use num_traits::Zero;
use serde::Deserialize;
use serde_json::{json, Value};

use kirwan::dataset::{self, Dataset, BUILTIN_NAMES};
use kirwan::kernels::{check_theorem_secondmain, full_kernel, partition, ChamberStrategy, DegreeTruncatedModel};
use kirwan::localization::{
    abbv_sum, is_generic, kappa_s_integral, kappa_t_integral, AdaptedBasis, CircleDirection, HamiltonianSpace,
    RestrictedClass, ResidueFrame,
};
use kirwan::residue::{res_laurent, res_partial_fractions, VariableOrdering};
use kirwan::symcore::{parse_poly, parse_rational, LinearForm, Poly, RationalSection, Variables};
use kirwan::weyl::{check_theorem_nonabelian, firstchar_kernel, kappa_k_integral, WeylData};
use kirwan::{Error, Result};

use crate::report::{q, subspace, vector, Report};

fn loaded(spec: &str, command: &str) -> Result<(Dataset, Report)> {
    let d = dataset::load(spec)?;
    let mut r = Report::new(command);
    r.digest = Some(d.digest.clone());
    r.param("dataset", spec);
    Ok((d, r))
}

/// Products of non-unit generators of degree at most `max`, with names.
pub fn generator_products(space: &HamiltonianSpace, max: u32) -> Vec<(String, RestrictedClass)> {
    let gens: Vec<_> = space.generators().iter().filter(|g| g.degree > 0).collect();
    let mut out = Vec::new();
    let mut stack = vec![(0usize, Vec::<&str>::new(), RestrictedClass::one(space))];
    while let Some((start, names, p)) = stack.pop() {
        for (i, g) in gens.iter().enumerate().skip(start).rev() {
            if p.degree() + g.degree <= max {
                let mut n = names.clone();
                n.push(&g.name);
                stack.push((i, n, p.mul(&g.class)));
            }
        }
        let label = if names.is_empty() { "1".to_string() } else { names.join("*") };
        out.push((label, p));
    }
    out.sort_by(|a, b| a.1.degree().cmp(&b.1.degree()).then_with(|| a.0.cmp(&b.0)));
    out
}

/// Structural checks happen on load; then ABBV on generator products.
pub fn validate(spec: &str, max_degree: Option<u32>) -> Result<Report> {
    let (d, mut r) = loaded(spec, "validate")?;
    let space = &d.space;
    let top = max_degree.unwrap_or(space.dim_m());
    r.param("max_degree", top);
    r.result("components", space.components().len());
    r.result("torus_rank", space.nvars());
    r.result("weyl_order", d.weyl.as_ref().map(|w| w.order()));
    r.check("structural", true);

    let names = space.variables().names();
    let mut polynomial = true;
    let mut vanishing = true;
    let mut rows = Vec::new();
    for (label, class) in generator_products(space, top) {
        let s = abbv_sum(space, &class)?;
        let entry = match &s.polynomial {
            Some(p) => {
                let below = class.degree() < space.dim_m();
                if below && !p.is_zero() {
                    vanishing = false;
                }
                json!({ "class": label, "degree": class.degree(), "sum": p.display_with(names), "polynomial": true })
            }
            None => {
                polynomial = false;
                json!({
                    "class": label,
                    "degree": class.degree(),
                    "sum": s.sum.display_with(names),
                    "polynomial": false,
                })
            }
        };
        rows.push(entry);
    }
    r.result("abbv", rows);
    r.check("abbv_polynomial", polynomial);
    r.check("abbv_vanishes_below_dim_M", vanishing);
    Ok(r)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExpressionFile {
    variables: Vec<String>,
    numerator: String,
    #[serde(default)]
    denominator: Vec<FactorFile>,
    variable: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorFile {
    form: Vec<i64>,
    power: u32,
}

pub fn parse_expression(text: &str) -> Result<(Variables, RationalSection, usize)> {
    let f: ExpressionFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let vars = Variables::new(f.variables)?;
    let n = vars.count();
    let num = parse_poly(&f.numerator, vars.names()).map_err(|e| Error::Parse(format!("numerator: {e}")))?;
    let mut factors = Vec::new();
    for (i, fac) in f.denominator.iter().enumerate() {
        if fac.form.len() != n {
            return Err(Error::Parse(format!("denominator[{i}].form: expected {n} entries")));
        }
        factors.push((LinearForm::from_i64(&fac.form), fac.power));
    }
    let var = vars
        .names()
        .iter()
        .position(|v| *v == f.variable)
        .ok_or_else(|| Error::Parse(format!("variable: unknown name {:?}", f.variable)))?;
    Ok((vars, RationalSection::scalar(num, factors)?, var))
}

pub fn residue(path: &str) -> Result<Report> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    let (vars, h, var) = parse_expression(&text)?;
    let names = vars.names();
    let mut r = Report::new("residue");
    r.digest = Some(dataset::digest(&text));
    r.param("expression", path);
    r.param("variable", names[var].clone());
    r.result("input", h.display_with(names));
    let pf = res_partial_fractions(&h, var)?;
    let laurent = res_laurent(&h, var)?;
    r.result("partial_fractions", pf.display_with(names));
    r.result("laurent", laurent.display_with(names));
    r.check("methods_agree", pf.equals(&laurent));
    Ok(r)
}

#[derive(Clone, Debug, Default)]
pub struct FrameOptions {
    pub ordering: Option<String>,
    pub delta: Option<String>,
}

pub fn frame(space: &HamiltonianSpace, opts: &FrameOptions) -> Result<ResidueFrame> {
    let n = space.nvars();
    let mut frame = match &opts.ordering {
        Some(o) => ResidueFrame::new(AdaptedBasis::identity(n), VariableOrdering::parse(o, None)?)?,
        None => ResidueFrame::suggest(space)?,
    };
    if let Some(d) = &opts.delta {
        let delta = parse_rational(d).map_err(|e| Error::Parse(format!("--delta: {e}")))?;
        frame.ordering = frame.ordering.with_delta(delta)?;
    }
    Ok(frame)
}

fn frame_json(f: &ResidueFrame) -> Value {
    json!({
        "basis": f.basis.matrix().iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "ordering": f.ordering.order(),
        "delta": q(f.ordering.delta()),
    })
}

fn require_generic_circle(space: &HamiltonianSpace, xi: &CircleDirection) -> Result<()> {
    let cert = is_generic(space, xi)?;
    if !cert.generic {
        return Err(Error::NotGeneric(format!("circle {xi}: {}", cert.violations.join("; "))));
    }
    Ok(())
}

/// A product of generator names, variable names and rationals, e.g. `2*X^2*a1`.
pub fn parse_class(space: &HamiltonianSpace, text: &str) -> Result<RestrictedClass> {
    let n = space.nvars();
    let mut acc = RestrictedClass::one(space);
    for raw in text.split('*') {
        let factor = raw.trim();
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => {
                let e = e.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                (b.trim(), e)
            }
            None => (factor, 1),
        };
        let one = if let Some(g) = space.generator(base) {
            g.class.clone()
        } else if let Some(i) = space.variables().names().iter().position(|v| v == base) {
            RestrictedClass::from_poly(space, &Poly::var(n, i))?
        } else if let Ok(c) = parse_rational(base) {
            RestrictedClass::one(space).scale(&c)
        } else {
            return Err(Error::Parse(format!("unknown factor {base:?} in class {text:?}")));
        };
        for _ in 0..exp {
            acc = acc.mul(&one);
        }
    }
    Ok(acc)
}

fn unit_name(space: &HamiltonianSpace) -> String {
    space.generators().iter().find(|g| g.degree == 0).map(|g| g.name.clone()).unwrap_or_else(|| "1".into())
}

#[derive(Clone, Debug)]
pub enum KernelMode {
    Circle(String),
    Full,
    Nonabelian,
}

#[derive(Clone, Debug)]
pub struct KernelOptions {
    pub mode: KernelMode,
    pub max_degree: u32,
    pub frame: FrameOptions,
    pub chamber_box: u32,
    pub calibrate: Option<String>,
}

fn slices_json(model: &DegreeTruncatedModel, degrees: &[u32]) -> Value {
    let mut m = serde_json::Map::new();
    for &d in degrees {
        m.insert(d.to_string(), json!(model.labels(d)));
    }
    Value::Object(m)
}

pub fn kernel(spec: &str, opts: &KernelOptions) -> Result<Report> {
    let (d, mut r) = loaded(spec, "kernel")?;
    let space = &d.space;
    r.param("max_degree", opts.max_degree);
    let calibrate = opts.calibrate.clone().unwrap_or_else(|| unit_name(space));
    r.param("calibration_class", calibrate.clone());
    let reference = parse_class(space, &calibrate)?;
    match &opts.mode {
        KernelMode::Circle(text) => {
            let xi = CircleDirection::parse(text)?;
            require_generic_circle(space, &xi)?;
            r.param("mode", "circle");
            r.param("xi", xi.to_string_list());
            let model = DegreeTruncatedModel::new(space, opts.max_degree)?;
            let degrees = model.degrees();
            let sides = partition(space, &xi)?;
            r.result(
                "partition",
                space.components().iter().zip(&sides.0).map(|(c, s)| json!([c.name(), s.symbol()])).collect::<Vec<_>>(),
            );
            r.result("slices", slices_json(&model, &degrees));
            let ks = kappa_s_integral(space, &reference, &xi)?;
            let adapted: Vec<String> = (0..space.nvars()).map(|i| format!("Y'{i}")).collect();
            r.result("calibration_value", ks.value.display_with(&adapted));
            let report = check_theorem_secondmain(&model, &xi, &degrees)?;
            let rows: Vec<Value> = report
                .degrees
                .iter()
                .map(|g| {
                    json!({
                        "degree": g.degree,
                        "slice_dim": g.slice_dim,
                        "k_minus": subspace(&g.k_minus),
                        "k_plus": subspace(&g.k_plus),
                        "kernel": subspace(&g.kernel),
                        "direct_sum": g.direct,
                        "kernel_stable": g.kernel_stable,
                        "equal": g.equal,
                        "witness": g.witness.as_ref().map(|w| vector(w)),
                    })
                })
                .collect();
            if report.degrees.iter().any(|g| !g.kernel_stable) {
                r.warnings.push("residue kernel changed when the testing set was enlarged".into());
            }
            r.result("degrees", rows);
            r.check("kernel_equals_tw_sum", report.pass());
        }
        KernelMode::Full => {
            r.param("mode", "full");
            let frame = frame(space, &opts.frame)?;
            r.param("frame", frame_json(&frame));
            r.param("chamber_box", opts.chamber_box);
            let model = DegreeTruncatedModel::new(space, opts.max_degree)?;
            let degrees = model.degrees();
            r.result("slices", slices_json(&model, &degrees));
            r.result("calibration_value", q(&kappa_t_integral(space, &reference, &frame)?));
            let report =
                full_kernel(&model, &frame, &degrees, ChamberStrategy::Auto { box_radius: opts.chamber_box })?;
            r.warnings.extend(report.chambers.warnings.iter().cloned());
            r.result("chambers_exact", report.chambers.exact);
            r.result(
                "chambers",
                report
                    .contributions
                    .iter()
                    .map(|c| {
                        json!({
                            "xi": c.xi.to_string_list(),
                            "dims": c.dims.iter().map(|(d, m, p)| json!({"degree": d, "k_minus": m, "k_plus": p})).collect::<Vec<_>>(),
                        })
                    })
                    .collect::<Vec<_>>(),
            );
            let rows: Vec<Value> = report
                .degrees
                .iter()
                .map(|g| {
                    json!({
                        "degree": g.degree,
                        "slice_dim": g.slice_dim,
                        "kernel_t": subspace(&g.kernel_t),
                        "chamber_sum": subspace(&g.chamber_sum),
                        "equal": g.equal,
                        "witness": g.witness.as_ref().map(|w| vector(w)),
                    })
                })
                .collect();
            r.result("degrees", rows);
            r.check("kernel_t_equals_chamber_sum", report.pass());
        }
        KernelMode::Nonabelian => {
            r.param("mode", "nonabelian");
            let weyl = d
                .weyl
                .as_ref()
                .ok_or_else(|| Error::Structural("--nonabelian needs a dataset with Weyl data".into()))?;
            let frame = frame(space, &opts.frame)?;
            r.param("frame", frame_json(&frame));
            let model = DegreeTruncatedModel::with_headroom(space, opts.max_degree, weyl.d_degree())?;
            let degrees = model.degrees();
            r.result("weyl_order", weyl.order());
            r.result("d", weyl.d_poly().display_with(space.variables().names()));
            r.result("slices", slices_json(&model, &degrees));
            let calibration = calibration_k(space, weyl, &reference, &frame, &mut r.warnings)?;
            r.result("calibration_value", calibration);
            let na = check_theorem_nonabelian(&model, weyl, &frame, &degrees)?;
            let fc = firstchar_kernel(&model, weyl, &frame, &degrees)?;
            let rows: Vec<Value> = na
                .degrees
                .iter()
                .zip(&fc.degrees)
                .map(|(g, f)| {
                    json!({
                        "degree": g.degree,
                        "invariant_dim": g.invariant_dim,
                        "kappa_k_kernel": subspace(&g.kappa_k_kernel),
                        "d_pullback": subspace(&g.d_pullback),
                        "d2_pullback": subspace(&g.d2_pullback),
                        "equal": g.equal,
                        "firstchar_span": subspace(&f.span),
                        "firstchar_equal": f.equal,
                        "kernel_t_dim": f.kernel_t_dim,
                    })
                })
                .collect();
            r.result("degrees", rows);
            r.check("three_subspaces_agree", na.pass());
            r.check("firstchar_span", fc.pass());
        }
    }
    Ok(r)
}

fn calibration_k(
    space: &HamiltonianSpace,
    weyl: &WeylData,
    reference: &RestrictedClass,
    frame: &ResidueFrame,
    warnings: &mut Vec<String>,
) -> Result<Value> {
    if !weyl.is_invariant(reference)? {
        warnings.push("calibration class is not W-invariant; no κ_K value".into());
        return Ok(Value::Null);
    }
    Ok(q(&kappa_k_integral(space, weyl, reference, frame)?))
}

#[derive(Clone, Debug)]
pub struct IntegrateOptions {
    pub class: String,
    pub circle: Option<String>,
    pub nonabelian: bool,
    pub frame: FrameOptions,
    pub calibrate: Option<String>,
}

/// One κ value, raw and divided by the value of the calibration class.
pub fn integrate(spec: &str, opts: &IntegrateOptions) -> Result<Report> {
    let (d, mut r) = loaded(spec, "integrate")?;
    let space = &d.space;
    let calibrate = opts.calibrate.clone().unwrap_or_else(|| unit_name(space));
    r.param("class", opts.class.clone());
    r.param("calibration_class", calibrate.clone());
    let eta = parse_class(space, &opts.class)?;
    let reference = parse_class(space, &calibrate)?;
    let abbv = abbv_sum(space, &eta)?;
    r.result("abbv", abbv.sum.display_with(space.variables().names()));

    if let Some(text) = &opts.circle {
        let xi = CircleDirection::parse(text)?;
        require_generic_circle(space, &xi)?;
        r.param("xi", xi.to_string_list());
        let value = kappa_s_integral(space, &eta, &xi)?;
        let refv = kappa_s_integral(space, &reference, &xi)?;
        let adapted: Vec<String> = (0..space.nvars()).map(|i| format!("Y'{i}")).collect();
        r.result(
            "adapted_basis",
            value.basis.matrix().iter().map(|row| row.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        );
        r.result("kappa_s", value.value.display_with(&adapted));
        r.result("calibration_value", refv.value.display_with(&adapted));
        let c = (refv.value.is_constant() && !refv.value.is_zero()).then(|| refv.value.constant_term());
        match c {
            Some(c) => r.result("calibrated", value.value.scale(&c.recip()).display_with(&adapted)),
            None => r.warnings.push("calibration value is not a nonzero constant".into()),
        }
        return Ok(r);
    }

    let frame = frame(space, &opts.frame)?;
    r.param("frame", frame_json(&frame));
    let (value, refv) = if opts.nonabelian {
        let weyl = d
            .weyl
            .as_ref()
            .ok_or_else(|| Error::Structural("--nonabelian needs a dataset with Weyl data".into()))?;
        (kappa_k_integral(space, weyl, &eta, &frame)?, kappa_k_integral(space, weyl, &reference, &frame)?)
    } else {
        (kappa_t_integral(space, &eta, &frame)?, kappa_t_integral(space, &reference, &frame)?)
    };
    r.result(if opts.nonabelian { "kappa_k" } else { "kappa_t" }, q(&value));
    r.result("calibration_value", q(&refv));
    if refv.is_zero() {
        r.warnings.push("calibration value is zero".into());
    } else {
        r.result("calibrated", q(&(value / refv)));
    }
    Ok(r)
}

pub fn example(name: Option<&str>) -> Result<String> {
    match name {
        None => Ok(BUILTIN_NAMES.iter().map(|n| format!("builtin:{n}\n")).collect()),
        Some(n) => dataset::builtin_source(n)
            .map(str::to_string)
            .ok_or_else(|| Error::Parse(format!("unknown example {n:?}; known: {}", BUILTIN_NAMES.join(", ")))),
    }
}
