use std::fs;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Map, Value};
use ttk::alexander::{alexander_json, alexander_polynomial, degree_span_formula};
use ttk::kernel::{
    check_script, gen_final_contradiction, gen_lemma_ineq, gen_prop_fixedpoint_family, gen_prop_key0_family,
    mirror_order, CheckOutcome, ProofScript,
};
use ttk::knot::{genus as knot_genus, is_lspace, lspace_surgery_threshold, KnotSpec, SurgerySlope};
use ttk::oracle::cache::QuotientCache;
use ttk::oracle::certify_longitudes;
use ttk::presentation::{families, presentation_ab, presentation_xy, Family};
use ttk::Error;

use crate::Config;

pub enum Failure {
    /// Bad input: exit code 2.
    Usage(String),
    /// The computation itself failed: exit code 1.
    Run(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::InvalidSpec(_)
            | Error::InvalidSlope(..)
            | Error::NotLSpace(_)
            | Error::NoClosedForm(_)
            | Error::SlopeBelowThreshold { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Run(e.to_string()),
        }
    }
}

pub struct Record {
    pub json: Value,
    pub text: String,
}

pub struct Report {
    pub records: Vec<Record>,
    pub ok: bool,
}

impl Report {
    fn new() -> Self {
        Report { records: Vec::new(), ok: true }
    }

    fn push(&mut self, json: Value, text: String) {
        self.records.push(Record { json, text });
    }
}

type Outcome = Result<Report, Failure>;

/// Adds `"spec"` first when several specs are requested.
fn tagged(config: &Config, spec: &KnotSpec, fields: Value) -> Value {
    if config.specs.len() == 1 {
        return fields;
    }
    let mut out = Map::new();
    out.insert("spec".into(), json!(spec.to_string()));
    if let Value::Object(m) = fields {
        out.extend(m);
    }
    Value::Object(out)
}

/// L-space specs; a lone non-L-space spec is an input error.
fn lspace_specs(config: &Config, report: &mut Report) -> Result<Vec<KnotSpec>, Failure> {
    let mut out = Vec::new();
    for spec in &config.specs {
        if is_lspace(spec).is_some() {
            out.push(*spec);
        } else if config.specs.len() == 1 {
            return Err(Error::NotLSpace(spec.to_string()).into());
        } else {
            report.push(
                json!({"spec": spec.to_string(), "lspace": false}),
                format!("{spec}: not an L-space knot"),
            );
        }
    }
    Ok(out)
}

pub fn present(config: &Config) -> Outcome {
    let mut report = Report::new();
    for spec in &config.specs {
        let xy = presentation_xy(spec)?;
        let ab = presentation_ab(spec)?;
        let mut text = vec![
            spec.to_string(),
            format!("generators {}", xy.alphabet.names().join(" ")),
            format!("{} = {}", xy.relator_lhs, xy.relator_rhs),
        ];
        for (name, w) in &xy.derived {
            text.push(format!("{name} = {w}"));
        }
        text.push(format!("in a, b: {} = {}", ab.relator_lhs, ab.relator_rhs));
        report.push(
            json!({"spec": spec.to_string(), "xy": xy.to_json(), "ab": ab.to_json()}),
            text.join("\n"),
        );
    }
    Ok(report)
}

pub fn alexander(config: &Config) -> Outcome {
    let mut report = Report::new();
    for spec in &config.specs {
        let res = alexander_polynomial(spec)?;
        let formula = degree_span_formula(spec);
        report.ok &= res.degree_span == formula && res.normalized.is_some();
        let shown = res
            .normalized
            .as_ref()
            .map(|n| n.to_string())
            .unwrap_or_else(|| format!("{} (not normalizable)", res.raw));
        report.push(
            alexander_json(spec, &res),
            format!("{spec}: {shown}, span {} (formula {formula})", res.degree_span),
        );
    }
    Ok(report)
}

pub fn genus(config: &Config) -> Outcome {
    let mut report = Report::new();
    for spec in lspace_specs(config, &mut report)? {
        let g = knot_genus(&spec)?;
        let threshold = lspace_surgery_threshold(&spec)?;
        report.push(
            tagged(config, &spec, json!({"genus": g, "threshold": threshold})),
            format!("{spec}: genus {g}, threshold {threshold}"),
        );
    }
    Ok(report)
}

pub fn lspace_range(config: &Config) -> Outcome {
    let slope = config
        .slope
        .ok_or_else(|| Failure::Usage("lspace-range needs --slope".into()))?;
    let mut report = Report::new();
    for spec in lspace_specs(config, &mut report)? {
        let threshold = lspace_surgery_threshold(&spec)?;
        let in_range = slope.at_least(threshold);
        let relation = if in_range { ">=" } else { "<" };
        report.push(
            tagged(config, &spec, json!({"threshold": threshold, "in_range": in_range})),
            format!("{spec}: {slope} {relation} {threshold}"),
        );
    }
    Ok(report)
}

pub fn verify_longitude(config: &Config) -> Outcome {
    let mut report = Report::new();
    for spec in &config.specs {
        if families(spec).is_empty() {
            if config.specs.len() == 1 {
                return Err(Error::NoClosedForm(spec.to_string()).into());
            }
            continue;
        }
        let r = certify_longitudes(spec, &config.budget)?;
        report.ok &= r.all_equal();
        let mut text = vec![format!("{spec}: max depth {}", r.max_depth())];
        let identities: Vec<Value> = r
            .identities
            .iter()
            .map(|i| {
                let status = format!("{:?}", i.status).to_lowercase();
                text.push(format!("  {} {}: {status}", i.family.name(), i.identity));
                json!({
                    "family": i.family.name(),
                    "identity": i.identity,
                    "status": status,
                    "depth": i.depth,
                    "certificate": i.certificate.as_ref().map(|c| c.digest()),
                })
            })
            .collect();
        report.push(
            json!({
                "spec": spec.to_string(),
                "all_equal": r.all_equal(),
                "max_depth": r.max_depth(),
                "identities": identities,
            }),
            text.join("\n"),
        );
    }
    Ok(report)
}

pub fn quotients(config: &Config) -> Outcome {
    let cache = match &config.cache {
        Some(dir) => QuotientCache::new(dir),
        None => QuotientCache::from_env(),
    };
    let degree = config.budget.quotient_degree;
    let mut report = Report::new();
    for spec in &config.specs {
        let pres = presentation_xy(spec)?;
        let qs = cache.quotients(&pres, degree)?;
        let mut text = vec![format!("{spec}: {} quotients up to degree {degree}", qs.len())];
        for q in &qs {
            let images: Vec<String> = q.images.iter().map(|(g, p)| format!("{g} -> {:?}", p.0)).collect();
            text.push(format!("  degree {}: {}", q.degree, images.join(", ")));
        }
        report.push(
            json!({
                "spec": spec.to_string(),
                "presentation": pres.digest(),
                "max_degree": degree,
                "count": qs.len(),
                "quotients": serde_json::to_value(&qs).map_err(|e| Failure::Run(e.to_string()))?,
            }),
            text.join("\n"),
        );
    }
    Ok(report)
}

/// One generated script, or why it was not generated.
struct Job {
    spec: KnotSpec,
    name: &'static str,
    family: Option<Family>,
    slope: Option<SurgerySlope>,
    script: Result<ProofScript, Error>,
}

fn outcome_fields(outcome: &CheckOutcome) -> (bool, Value) {
    match outcome {
        CheckOutcome::Verified => (true, json!({"status": "verified"})),
        CheckOutcome::Rejected { step, reason } => {
            (false, json!({"status": "rejected", "step": step, "reason": reason}))
        }
    }
}

fn jobs(config: &Config, spec: &KnotSpec, all: bool) -> Result<Vec<Job>, Failure> {
    let mut out = Vec::new();
    let job = |name, family, slope, script| Job { spec: *spec, name, family, slope, script };
    let with_key = all || config.slope.is_some();
    let with_rest = all || config.slope.is_none();
    if with_rest {
        out.push(job("lemma", None, None, gen_lemma_ineq(spec, config.n_max)));
    }
    let fams = families(spec);
    if fams.is_empty() {
        out.push(job("fixedpoint", None, None, Err(Error::NoClosedForm(spec.to_string()))));
    }
    for f in fams {
        if with_rest {
            let fp = gen_prop_fixedpoint_family(spec, f);
            let mirrored = fp.as_ref().map(mirror_order).map_err(|e| Error::Consistency(e.to_string()));
            out.push(job("fixedpoint", Some(f), None, fp));
            if all {
                out.push(job("fixedpoint_mirrored", Some(f), None, mirrored));
            }
        }
        if with_key {
            let slope = match config.slope {
                Some(s) => s,
                None => SurgerySlope::new(lspace_surgery_threshold(spec)?, 1)?,
            };
            let key = gen_prop_key0_family(spec, &slope, f);
            if let Err(e @ Error::SlopeBelowThreshold { .. }) = &key {
                return Err(Failure::Usage(e.to_string()));
            }
            out.push(job("key", Some(f), Some(slope), key));
        }
    }
    if with_rest {
        out.push(job("final", None, None, gen_final_contradiction(spec)));
    }
    Ok(out)
}

fn file_name(job: &Job) -> String {
    let s = job.spec;
    let mut name = format!("l{}m{}p{}q{}-{}", s.l, s.m, s.p, s.q(), job.name);
    if let Some(f) = job.family {
        name += &format!("-{}", f.name());
    }
    if let Some(slope) = job.slope {
        name += &format!("-{}_{}", slope.r(), slope.s());
    }
    name + ".json"
}

pub fn check_proofs(config: &Config, all: bool, script: Option<&Path>, emit: Option<&Path>) -> Outcome {
    let mut report = Report::new();
    if let Some(path) = script {
        let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let script = ProofScript::from_json(&text)?;
        let (ok, fields) = outcome_fields(&check_script(&script)?);
        report.ok &= ok;
        let mut json = json!({"script": script.title, "steps": script.steps.len()});
        json.as_object_mut().unwrap().extend(fields.as_object().unwrap().clone());
        report.push(json, format!("{}: {}", script.title, if ok { "verified" } else { "rejected" }));
    }
    let mut all_jobs = Vec::new();
    for spec in lspace_specs(config, &mut report)? {
        all_jobs.extend(jobs(config, &spec, all)?);
    }
    if let Some(dir) = emit {
        fs::create_dir_all(dir).map_err(|e| Failure::Run(e.to_string()))?;
    }
    let checked: Vec<Result<Option<CheckOutcome>, Error>> = all_jobs
        .par_iter()
        .map(|j| j.script.as_ref().ok().map(check_script).transpose())
        .collect();
    for (job, checked) in all_jobs.iter().zip(checked) {
        let mut json = json!({"spec": job.spec.to_string(), "script": job.name});
        let obj = json.as_object_mut().unwrap();
        if let Some(f) = job.family {
            obj.insert("family".into(), json!(f.name()));
        }
        if let Some(s) = job.slope {
            obj.insert("slope".into(), json!(s.to_string()));
        }
        let label = match (job.family, job.slope) {
            (Some(f), Some(s)) => format!("{} {} {} at {s}", job.spec, job.name, f.name()),
            (Some(f), None) => format!("{} {} {}", job.spec, job.name, f.name()),
            _ => format!("{} {}", job.spec, job.name),
        };
        let text = match (&job.script, checked?) {
            (Ok(script), Some(outcome)) => {
                if let Some(dir) = emit {
                    fs::write(dir.join(file_name(job)), script.to_json()).map_err(|e| Failure::Run(e.to_string()))?;
                }
                let (ok, fields) = outcome_fields(&outcome);
                report.ok &= ok;
                obj.insert("steps".into(), json!(script.steps.len()));
                obj.extend(fields.as_object().unwrap().clone());
                match outcome {
                    CheckOutcome::Verified => format!("{label}: verified ({} steps)", script.steps.len()),
                    CheckOutcome::Rejected { step, reason } => format!("{label}: rejected at step {step}: {reason}"),
                }
            }
            (Err(Error::NoClosedForm(_)), _) => {
                obj.insert("status".into(), json!("not_applicable"));
                obj.insert("reason".into(), json!("no closed-form longitude"));
                format!("{label}: not applicable (no closed-form longitude)")
            }
            (Err(e), _) => {
                report.ok = false;
                obj.insert("status".into(), json!("error"));
                obj.insert("reason".into(), json!(e.to_string()));
                format!("{label}: error: {e}")
            }
            (Ok(_), None) => unreachable!("generated scripts are checked"),
        };
        report.push(json, text);
    }
    Ok(report)
}

struct SweepLine {
    check: String,
    pass: bool,
    detail: Option<String>,
    ms: u128,
}

fn timed(check: impl Into<String>, f: impl FnOnce() -> Result<(bool, Option<String>), Error>) -> SweepLine {
    let start = Instant::now();
    let (pass, detail) = f().unwrap_or_else(|e| (false, Some(e.to_string())));
    SweepLine { check: check.into(), pass, detail, ms: start.elapsed().as_millis() }
}

fn script_check(script: Result<ProofScript, Error>) -> Result<(bool, Option<String>), Error> {
    match check_script(&script?)? {
        CheckOutcome::Verified => Ok((true, None)),
        CheckOutcome::Rejected { step, reason } => Ok((false, Some(format!("step {step}: {reason}")))),
    }
}

fn sweep_spec(config: &Config, spec: &KnotSpec) -> Vec<SweepLine> {
    let mut out = vec![timed("alexander", || {
        let res = alexander_polynomial(spec)?;
        let formula = degree_span_formula(spec);
        Ok((res.degree_span == formula, Some(format!("span {} formula {formula}", res.degree_span))))
    })];
    if is_lspace(spec).is_none() {
        return out;
    }
    out.push(timed("genus", || {
        let g = knot_genus(spec)?;
        let span = alexander_polynomial(spec)?.degree_span;
        Ok((2 * g == span, Some(format!("genus {g} span {span}"))))
    }));
    if !families(spec).is_empty() {
        out.push(timed("longitude", || {
            let r = certify_longitudes(spec, &config.budget)?;
            Ok((r.all_equal(), Some(format!("max depth {}", r.max_depth()))))
        }));
    }
    out.push(timed("lemma", || script_check(gen_lemma_ineq(spec, config.n_max))));
    for f in families(spec) {
        out.push(timed(format!("fixedpoint {}", f.name()), || {
            script_check(gen_prop_fixedpoint_family(spec, f))
        }));
        out.push(timed(format!("fixedpoint_mirrored {}", f.name()), || {
            script_check(gen_prop_fixedpoint_family(spec, f).map(|s| mirror_order(&s)))
        }));
        out.push(timed(format!("key {}", f.name()), || {
            let slope = match config.slope {
                Some(s) => s,
                None => SurgerySlope::new(lspace_surgery_threshold(spec)?, 1)?,
            };
            script_check(gen_prop_key0_family(spec, &slope, f))
        }));
    }
    out.push(timed("final", || script_check(gen_final_contradiction(spec))));
    out
}

pub fn sweep(config: &Config, timing: bool) -> Outcome {
    let per_spec: Vec<Vec<SweepLine>> = config.specs.par_iter().map(|s| sweep_spec(config, s)).collect();
    let mut report = Report::new();
    for (spec, lines) in config.specs.iter().zip(per_spec) {
        for line in lines {
            report.ok &= line.pass;
            let status = if line.pass { "pass" } else { "fail" };
            let mut json = json!({"spec": spec.to_string(), "check": line.check, "status": status});
            let obj = json.as_object_mut().unwrap();
            if let Some(d) = &line.detail {
                obj.insert("detail".into(), json!(d));
            }
            if timing {
                obj.insert("ms".into(), json!(line.ms as u64));
            }
            let detail = line.detail.map(|d| format!(" ({d})")).unwrap_or_default();
            report.push(json, format!("{spec} {}: {status}{detail}", line.check));
        }
    }
    Ok(report)
}
