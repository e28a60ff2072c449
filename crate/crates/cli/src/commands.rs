use std::path::Path;

use serde_json::{json, Value};

use quadlie_core::duality::{
    chevalley_eilenberg, eta_check, free_product_via_models, homotopy_lie_algebra, profree_check,
    ProfreeCertificate,
};
use quadlie_core::exactlin::{format_rational, SparseVec};
use quadlie_core::json::{parse_combination, poly_json, FiniteCdgaJson, LieJson, SullivanJson};
use quadlie_core::lie::{lower_central_series, nilpotent_quotient, LieAlgebra};
use quadlie_core::sullivan::{
    acyclic_closure, cohomology, minimal_model, verify_quasi_isomorphism, wedge_graded_cohomology,
    wedge_of_spheres_model, FiniteCdga, MinimalModel, SullivanAlgebra, Truncation,
};
use quadlie_core::uea::{bch, TruncatedUEA};
use quadlie_core::Error;

use crate::report::Report;
use crate::Cli;

pub enum Failure {
    /// Unreadable or ill-formed input, unknown verb, missing flags: exit 2.
    Malformed(String),
    /// The computation ran and refused or failed: exit 1.
    Diagnostic(Box<Report>),
}

struct Ctx<'a> {
    cli: &'a Cli,
    truncation: Option<Truncation>,
}

impl Ctx<'_> {
    fn report(&self, ok: bool, result: Value, certificate: Option<Value>) -> Report {
        Report {
            verb: self.cli.verb.clone(),
            truncation: self.truncation.map(|t| t.to_string()),
            ok,
            result,
            certificate,
            error: None,
        }
    }

    /// Maps a core error to an exit status: structural input problems are
    /// malformed input, everything else is a diagnostic failure.
    fn fail(&self, e: Error) -> Failure {
        match e {
            Error::Invalid(msg) => Failure::Malformed(msg),
            other => {
                let mut r = self.report(false, Value::Null, None);
                r.error = Some(other.to_string());
                Failure::Diagnostic(Box::new(r))
            }
        }
    }

    fn truncation(&self) -> Result<Truncation, Failure> {
        self.truncation
            .ok_or_else(|| Failure::Malformed(format!("{} needs --truncation N=..,K=..", self.cli.verb)))
    }

    fn input(&self, k: usize) -> Result<Value, Failure> {
        let path = self.cli.inputs.get(k).ok_or_else(|| {
            Failure::Malformed(format!("{} needs {} input file(s)", self.cli.verb, k + 1))
        })?;
        read_json(path)
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Malformed(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

/// Accepts a bare schema object or a report whose result holds one under `key`.
fn unwrap_report(v: Value, key: &str) -> Value {
    match v.get("result").and_then(|r| r.get(key)) {
        Some(inner) if v.get("verb").is_some() => inner.clone(),
        _ => v,
    }
}

fn parse<T: serde::de::DeserializeOwned>(v: Value, what: &str) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| Failure::Malformed(format!("not a {what}: {e}")))
}

fn parse_truncation(text: &str) -> Result<Truncation, Failure> {
    let bad = || Failure::Malformed(format!("bad truncation {text:?}, expected N=<int>,K=<int>"));
    let (mut n, mut k) = (None, None);
    for part in text.split(',') {
        let (key, value) = part.split_once('=').ok_or_else(bad)?;
        let value: usize = value.trim().parse().map_err(|_| bad())?;
        match key.trim() {
            "N" => n = Some(value),
            "K" => k = Some(value),
            _ => return Err(bad()),
        }
    }
    Truncation::new(n.ok_or_else(bad)?, k.ok_or_else(bad)?)
        .map_err(|e| Failure::Malformed(e.to_string()))
}

pub fn execute(cli: &Cli) -> Result<Report, Failure> {
    let truncation = cli.truncation.as_deref().map(parse_truncation).transpose()?;
    let mut ctx = Ctx { cli, truncation };
    match cli.verb.as_str() {
        "validate" => validate(&ctx),
        "lcs" => lcs(&ctx),
        "ce" => ce(&ctx),
        "hla" => hla(&ctx),
        "cohomology" => {
            with_file_truncation(&mut ctx)?;
            cohomology_verb(&ctx)
        }
        "wedge-h" => {
            with_file_truncation(&mut ctx)?;
            wedge_h(&ctx)
        }
        "minimal-model" => minimal_model_verb(&ctx),
        "wedge-model" => wedge_model(&ctx),
        "profree" => {
            with_file_truncation(&mut ctx)?;
            profree(&ctx)
        }
        "free-product" => free_product(&ctx),
        "bch" => bch_verb(&ctx),
        "exp" => exp(&ctx),
        "acyclic-closure" => {
            with_file_truncation(&mut ctx)?;
            acyclic(&ctx)
        }
        "eta-check" => eta(&ctx),
        other => Err(Failure::Malformed(format!("unknown verb {other:?}"))),
    }
}

/// A Sullivan input file may carry its own truncation; the flag wins.
fn with_file_truncation(ctx: &mut Ctx) -> Result<(), Failure> {
    if ctx.truncation.is_some() {
        return Ok(());
    }
    if let Ok(v) = ctx.input(0) {
        if let Ok(j) = serde_json::from_value::<SullivanJson>(unwrap_report(v, "algebra")) {
            ctx.truncation = j.truncation().map_err(|e| Failure::Malformed(e.to_string()))?;
        }
    }
    Ok(())
}

fn load_lie(ctx: &Ctx, k: usize) -> Result<LieAlgebra, Failure> {
    let j: LieJson = parse(unwrap_report(ctx.input(k)?, "lie"), "Lie algebra")?;
    j.to_lie().map_err(|e| ctx.fail(e))
}

fn load_sullivan(ctx: &Ctx) -> Result<SullivanAlgebra, Failure> {
    let j: SullivanJson = parse(unwrap_report(ctx.input(0)?, "algebra"), "Sullivan algebra")?;
    j.to_sullivan().map_err(|e| ctx.fail(e))
}

fn load_finite(ctx: &Ctx) -> Result<FiniteCdga, Failure> {
    let j: FiniteCdgaJson = parse(unwrap_report(ctx.input(0)?, "cdga"), "finite cdga")?;
    j.to_cdga().map_err(|e| ctx.fail(e))
}

fn lie_summary(l: &LieAlgebra) -> Value {
    let lcs = lower_central_series(l);
    json!({
        "nilpotent": lcs.nilpotent,
        "class": if lcs.nilpotent { Some(lcs.class()) } else { None },
        "layer_dims": lcs.layer_dims(),
    })
}

fn validate(ctx: &Ctx) -> Result<Report, Failure> {
    let v = ctx.input(0)?;
    if v.get("brackets").is_some() || (v.get("basis").is_some() && v.get("products").is_none()) {
        let l = load_lie(ctx, 0)?;
        let violation = l.validate().err().map(|v| v.to_string());
        let mut result = lie_summary(&l);
        result["kind"] = json!("lie");
        result["dim"] = json!(l.dim());
        result["violation"] = json!(violation);
        return Ok(ctx.report(violation.is_none(), result, None));
    }
    if v.get("generators").is_some() {
        let a = load_sullivan(ctx)?;
        let r = a.validate();
        let result = json!({
            "kind": "sullivan",
            "generators": a.len(),
            "quadratic": r.quadratic,
            "minimal": r.minimal,
            "filtration_dims": r.filtration_dims,
            "problem": r.problem.map(|(g, why)| format!("{g}: {why}")),
        });
        return Ok(ctx.report(r.ok, result, None));
    }
    let a = load_finite(ctx)?;
    let result = json!({
        "kind": "finite-cdga",
        "dim": a.dim() + 1,
        "h0": a.h0_dim(),
    });
    Ok(ctx.report(true, result, None))
}

fn lcs(ctx: &Ctx) -> Result<Report, Failure> {
    let l = load_lie(ctx, 0)?;
    let series = lower_central_series(&l);
    let mut result = lie_summary(&l);
    result["term_dims"] = json!(series.terms.iter().map(|t| t.dim()).collect::<Vec<_>>());
    Ok(ctx.report(series.nilpotent, result, None))
}

fn ce(ctx: &Ctx) -> Result<Report, Failure> {
    let l = load_lie(ctx, 0)?;
    let a = chevalley_eilenberg(&l).map_err(|e| ctx.fail(e))?;
    let result = json!({
        "algebra": SullivanJson::from_sullivan(&a, None),
        "quadratic": a.is_quadratic(),
        "filtration_dims": a.filtration().dims(),
    });
    Ok(ctx.report(true, result, None))
}

fn hla(ctx: &Ctx) -> Result<Report, Failure> {
    let k = ctx
        .cli
        .k
        .or(ctx.truncation.map(|t| t.k))
        .ok_or_else(|| Failure::Malformed("hla needs --K".into()))?;
    let a = load_sullivan(ctx)?;
    let h = homotopy_lie_algebra(&a, k).map_err(|e| ctx.fail(e))?;
    let gens = a.generators();
    let result = json!({
        "K": k,
        "lie": LieJson::from_lie(&h.lie),
        "layer_dims": lower_central_series(&h.lie).layer_dims(),
        "filtration_layers": h.layer_dims,
        "dual_vectors": h.dual_vectors.iter().map(|v| {
            quadlie_core::lie::format_combination(v, |i| gens.name(i).to_string())
        }).collect::<Vec<_>>(),
    });
    Ok(ctx.report(true, result, None))
}

fn cohomology_verb(ctx: &Ctx) -> Result<Report, Failure> {
    let t = ctx.truncation()?;
    let v = ctx.input(0)?;
    if v.get("products").is_some() {
        let a = load_finite(ctx)?;
        let mut dims = vec![a.h0_dim()];
        let mut reps = vec![vec!["1".to_string()]];
        for deg in 1..=t.n.min(a.max_degree().max(0) as usize) {
            let r = a.cohomology_representatives(deg as i32, None);
            dims.push(r.len());
            reps.push(
                r.iter()
                    .map(|v| quadlie_core::lie::format_combination(v, |i| a.basis().name(i).to_string()))
                    .collect(),
            );
        }
        let result = json!({ "dims": dims, "representatives": reps });
        return Ok(ctx.report(true, result, None));
    }
    let a = load_sullivan(ctx)?;
    let h = cohomology(&a, &t);
    let result = json!({
        "dims": h.dims(),
        "weight_bound": h.weight_bound,
        "representatives": h.degrees.iter().map(|d| {
            d.representatives.iter().map(|p| a.format(p)).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
    });
    Ok(ctx.report(true, result, None))
}

fn wedge_h(ctx: &Ctx) -> Result<Report, Failure> {
    let t = ctx.truncation()?;
    let a = load_sullivan(ctx)?;
    let h = wedge_graded_cohomology(&a, &t).map_err(|e| ctx.fail(e))?;
    let result = json!({
        "weight_bound": h.weight_bound,
        "dims": h.dims.iter().map(|(&(n, k), &d)| json!({"degree": n, "wedge": k, "dim": d})).collect::<Vec<_>>(),
        "h1_basis": h.h1_basis.iter().map(|(n, p)| json!({"degree": n, "class": a.format(p)})).collect::<Vec<_>>(),
        "higher": h.higher.iter().map(|(n, k, p)| json!({"degree": n, "wedge": k, "class": a.format(p)})).collect::<Vec<_>>(),
    });
    Ok(ctx.report(true, result, None))
}

fn certificate_json(c: &ProfreeCertificate) -> Value {
    json!({
        "verdict": c.verdict,
        "window": c.truncation.to_string(),
        "weight_bound": c.weight_bound,
        "scope": if c.verdict { "within window" } else { "absolute" },
        "witness": c.witness.as_ref().map(|w| json!({
            "degree": w.degree,
            "wedge": w.wedge,
            "class": w.rendered,
        })),
        "wedge_dims": c.dims.iter().map(|(n, k, d)| json!({"degree": n, "wedge": k, "dim": d})).collect::<Vec<_>>(),
    })
}

fn model_result(ctx: &Ctx, mm: &MinimalModel, a: &FiniteCdga) -> Result<Report, Failure> {
    let t = mm.truncation;
    let qi = verify_quasi_isomorphism(mm, a);
    let quadratic = mm.model.is_quadratic();
    let profree = match mm.model.quadratic_part() {
        Ok(q) => Some(profree_check(&q, &t).map_err(|e| ctx.fail(e))?),
        Err(_) => None,
    };
    let gens = mm.model.generators();
    let result = json!({
        "algebra": SullivanJson::from_sullivan(&mm.model, Some(&t)),
        "minimal": mm.model.is_minimal(),
        "quadratic": quadratic,
        "sigma": (0..mm.model.len()).map(|i| json!({
            "gen": gens.name(i),
            "image": quadlie_core::lie::format_combination(&mm.sigma[i], |k| a.basis().name(k).to_string()),
        })).collect::<Vec<_>>(),
        "quadratic_part_profree": profree.as_ref().map(|c| c.verdict),
    });
    let certificate = json!({
        "quasi_isomorphism": qi.holds,
        "degrees": qi.degrees.iter().map(|d| json!({
            "degree": d.degree,
            "model": d.model_dim,
            "target": d.target_dim,
            "injective": d.injective,
            "surjective": d.surjective,
        })).collect::<Vec<_>>(),
        "profree": profree.as_ref().map(certificate_json),
    });
    Ok(ctx.report(qi.holds && mm.model.is_minimal(), result, Some(certificate)))
}

fn minimal_model_verb(ctx: &Ctx) -> Result<Report, Failure> {
    let t = ctx.truncation()?;
    let a = load_finite(ctx)?;
    let mm = minimal_model(&a, &t).map_err(|e| ctx.fail(e))?;
    model_result(ctx, &mm, &a)
}

fn wedge_model(ctx: &Ctx) -> Result<Report, Failure> {
    let t = ctx.truncation()?;
    let spheres = ctx
        .cli
        .spheres
        .as_deref()
        .ok_or_else(|| Failure::Malformed("wedge-model needs --spheres, e.g. 1,1".into()))?;
    let degrees = spheres
        .split(',')
        .map(|s| s.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Failure::Malformed(format!("bad sphere list {spheres:?}")))?;
    let a = quadlie_core::sullivan::wedge_of_spheres_cohomology(&degrees).map_err(|e| ctx.fail(e))?;
    let mm = wedge_of_spheres_model(&degrees, &t).map_err(|e| ctx.fail(e))?;
    model_result(ctx, &mm, &a)
}

fn profree(ctx: &Ctx) -> Result<Report, Failure> {
    let t = ctx.truncation()?;
    let a = load_sullivan(ctx)?;
    let c = profree_check(&a, &t).map_err(|e| ctx.fail(e))?;
    let result = json!({
        "profree": c.verdict,
        "witness": c.witness.as_ref().map(|w| w.rendered.clone()),
    });
    Ok(ctx.report(c.verdict, result, Some(certificate_json(&c))))
}

fn free_product(ctx: &Ctx) -> Result<Report, Failure> {
    let t = ctx.truncation()?;
    let l = load_lie(ctx, 0)?;
    let r = load_lie(ctx, 1)?;
    let c = free_product_via_models(&l, &r, &t).map_err(|e| ctx.fail(e))?;
    let result = json!({
        "lie": LieJson::from_lie(&c.direct.lie),
        "via_models": LieJson::from_lie(&c.models.lie),
        "layer_dims": c.direct_layers,
        "via_models_layer_dims": c.models_layers,
    });
    let certificate = json!({
        "isomorphic": c.isomorphic,
        "problem": c.problem,
        "comparison": c.comparison.as_ref().map(|m| {
            (0..m.source.dim()).map(|j| json!({
                "from": m.source.basis().name(j),
                "to": m.target.format_vector(&m.apply(&SparseVec::unit(j))),
            })).collect::<Vec<_>>()
        }),
    });
    Ok(ctx.report(c.isomorphic, result, Some(certificate)))
}

fn element(ctx: &Ctx, l: &LieAlgebra, text: Option<&str>, flag: &str) -> Result<SparseVec, Failure> {
    let text = text.ok_or_else(|| Failure::Malformed(format!("{} needs --{flag}", ctx.cli.verb)))?;
    parse_combination(l.basis(), text).map_err(|e| ctx.fail(e))
}

fn bch_verb(ctx: &Ctx) -> Result<Report, Failure> {
    let class = ctx
        .cli
        .class
        .ok_or_else(|| Failure::Malformed("bch needs --class".into()))?;
    let l = load_lie(ctx, 0)?;
    let x = element(ctx, &l, ctx.cli.x.as_deref(), "x")?;
    let y = element(ctx, &l, ctx.cli.y.as_deref(), "y")?;
    let lcs = quadlie_core::lie::require_nilpotent(&l).map_err(|e| ctx.fail(e))?;
    let (q, rho) = nilpotent_quotient(&l, lcs.term(class + 1).subspace()).map_err(|e| ctx.fail(e))?;
    let z = bch(&q, &rho.apply(&x), &rho.apply(&y)).map_err(|e| ctx.fail(e))?;
    let result = json!({
        "class": class,
        "value": q.format_vector(&z),
        "coordinates": z.iter().map(|(k, c)| json!({"name": q.basis().name(k), "coeff": format_rational(c)})).collect::<Vec<_>>(),
    });
    Ok(ctx.report(true, result, None))
}

fn exp(ctx: &Ctx) -> Result<Report, Failure> {
    let n = ctx
        .cli
        .word_bound
        .ok_or_else(|| Failure::Malformed("exp needs --word-bound".into()))?;
    let l = load_lie(ctx, 0)?;
    let x = element(ctx, &l, ctx.cli.x.as_deref(), "x")?;
    let u = TruncatedUEA::new(&l, n).map_err(|e| ctx.fail(e))?;
    let ux = u.from_lie(&x);
    let g = u.exp(&ux).map_err(|e| ctx.fail(e))?;
    let log = u.log(g.element()).map_err(|e| ctx.fail(e))?;
    let round_trip = log == ux;
    let result = json!({
        "word_bound": n,
        "exp": u.format(g.element()),
        "dim": u.dim(),
    });
    let certificate = json!({ "group_like": true, "log_exp_is_identity": round_trip });
    Ok(ctx.report(round_trip, result, Some(certificate)))
}

fn acyclic(ctx: &Ctx) -> Result<Report, Failure> {
    let t = ctx.truncation()?;
    let a = load_sullivan(ctx)?;
    let ac = acyclic_closure(&a, t.n, t.k as u32).map_err(|e| ctx.fail(e))?;
    let total = ac.total();
    let gens = total.generators();
    let result = json!({
        "algebra": SullivanJson::from_sullivan(total, Some(&t)),
        "base": ac.extension.base_index.iter().map(|&i| gens.name(i)).collect::<Vec<_>>(),
        "fibre": ac.extension.fibre_index.iter().map(|&i| gens.name(i)).collect::<Vec<_>>(),
        "differential": ac.extension.fibre_index.iter().map(|&i| json!({
            "gen": gens.name(i),
            "value": total.format(total.d_generator(i)),
            "terms": poly_json(gens, total.d_generator(i)),
        })).collect::<Vec<_>>(),
    });
    let certificate = json!({
        "acyclic": true,
        "window": format!("degree <= {}, weight <= {}", ac.max_degree, ac.max_weight),
    });
    Ok(ctx.report(true, result, Some(certificate)))
}

fn eta(ctx: &Ctx) -> Result<Report, Failure> {
    let n = ctx
        .cli
        .word_bound
        .ok_or_else(|| Failure::Malformed("eta-check needs --word-bound".into()))?;
    let l = load_lie(ctx, 0)?;
    let r = eta_check(&l, n).map_err(|e| ctx.fail(e))?;
    let result = json!({
        "word_bound": n,
        "blocks": r.blocks.iter().map(|b| json!({
            "weight": b.weight,
            "rows": b.rows,
            "cols": b.cols,
            "matrix": (0..b.rows.len()).map(|i| (0..b.cols.len()).map(|j| format_rational(&b.matrix.get(i, j))).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "nonsingular": b.nonsingular,
        })).collect::<Vec<_>>(),
    });
    let certificate = json!({
        "isomorphism": r.holds,
        "holonomy_checks": r.holonomy_checks,
        "holonomy_filtration_ok": r.holonomy_ok,
    });
    Ok(ctx.report(r.holds, result, Some(certificate)))
}
