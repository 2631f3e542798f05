//! Report assembly and rendering: the full analysis of one pair, JSON
//! with a versioned schema (integers beyond the 53-bit safe range are
//! serialized as strings), and plain-text summaries.

use num::ToPrimitive;
use serde_json::{json, Value};

use crate::error::Error;
use crate::exact::Int;
use crate::fan::{ColoredFan, LatticeVector, OrbitPoset};
use crate::ideal::{borel_fixed_points, tangent_dimension, Gen5, IdealSpec, Monomial5};
use crate::pair::PopovPair;
use crate::pipeline::Pipeline;
use crate::verify::{
    consistency_checks, Check, CheckStatus, SweepReport, VerifyReport,
};

const SAFE_RANGE: i64 = 1 << 53;

/// Integers within the 53-bit safe range serialize as numbers, anything
/// larger as a decimal string.
pub fn int_json(v: &Int) -> Value {
    match v.to_i64() {
        Some(x) if x.abs() < SAFE_RANGE => json!(x),
        _ => json!(v.to_string()),
    }
}

fn ints_json(vs: &[Int]) -> Value {
    Value::Array(vs.iter().map(int_json).collect())
}

fn ray_json(v: &LatticeVector) -> Value {
    json!([int_json(&v.x1), int_json(&v.x2)])
}

fn fan_json(fan: &ColoredFan) -> Value {
    json!({
        "rays": fan.rays.iter().map(ray_json).collect::<Vec<_>>(),
        "cones": fan.cones.iter().map(|c| json!({
            "rays": c.rays,
            "colors": c.colors.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "label": c.label,
        })).collect::<Vec<_>>(),
    })
}

fn poset_json(poset: &OrbitPoset) -> Value {
    json!({
        "orbits": poset.orbits,
        "closure": poset.closure,
    })
}

fn mono5_json(m: &Monomial5) -> Value {
    Value::Array(m.0.iter().map(int_json).collect())
}

fn gen5_json(g: &Gen5) -> Value {
    match g {
        Gen5::Mono(m) => json!({"monomial": mono5_json(m)}),
        Gen5::Diff(a, b) => json!({"difference": [mono5_json(a), mono5_json(b)]}),
    }
}

fn ideal_json(spec: &IdealSpec) -> Value {
    let mut v = json!({
        "name": spec.name(),
        "ring": spec.ring.vars(),
        "generators": spec.generators.iter().map(gen5_json).collect::<Vec<_>>(),
        "display": spec.generators.iter().map(|g| g.display()).collect::<Vec<_>>(),
    });
    if let Some(fg) = &spec.f_generators {
        v["invariant_presentation"] =
            Value::Array(fg.iter().map(|g| json!(g.display())).collect());
    }
    v
}

fn check_json(c: &Check) -> Value {
    json!({
        "name": c.name,
        "status": c.status.to_string(),
        "cases": c.cases,
        "detail": c.detail,
    })
}

/// The assembled report for one pair. The smooth case carries only the
/// classification and a notice; everything else gets the full data set
/// plus the structural consistency checks re-run at assembly time.
#[derive(Debug, Clone)]
pub struct AnalysisReport {
    pub pair: PopovPair,
    pub notice: Option<String>,
    pub data: Option<AnalysisData>,
}

#[derive(Debug, Clone)]
pub struct AnalysisData {
    pub pipeline: Pipeline,
    pub fixed_point_count: usize,
    pub tangent_dimensions: Vec<usize>,
    pub consistency: Vec<Check>,
    pub resolution_note: Option<String>,
}

impl AnalysisReport {
    pub fn passed(&self) -> bool {
        self.data.as_ref().is_none_or(|d| {
            d.consistency.iter().all(|c| c.status != CheckStatus::Fail)
        })
    }

    pub fn to_json(&self) -> Value {
        let mut root = json!({
            "schema": "1",
            "pair": {
                "p": int_json(&self.pair.p),
                "q": int_json(&self.pair.q),
                "m": int_json(&self.pair.m),
                "smooth": self.pair.smooth,
            },
        });
        if let Some(notice) = &self.notice {
            root["notice"] = json!(notice);
        }
        let Some(data) = &self.data else {
            return root;
        };
        let pl = &data.pipeline;
        root["toric"] = json!(pl.toric);
        root["invariants"] = json!({
            "k": int_json(&pl.inv.k),
            "a": int_json(&pl.inv.a),
            "b": int_json(&pl.inv.b),
            "alpha": int_json(&pl.inv.alpha),
            "beta": int_json(&pl.inv.beta),
            "t": int_json(&pl.inv.t),
        });
        root["expansion"] = json!({
            "b": int_json(&pl.hj.b),
            "t": int_json(&pl.hj.t),
            "coeffs": ints_json(&pl.hj.coeffs),
            "p_convergents": ints_json(&pl.hj.pconv),
            "q_convergents": ints_json(&pl.hj.qconv),
            "remainder_chain": ints_json(&pl.hj.tchain),
        });
        root["sequences"] = json!({
            "e": ints_json(&pl.seq.e),
            "l": ints_json(&pl.seq.l),
            "n": ints_json(&pl.seq.n),
        });
        root["semigroup"] = json!({
            "generators": pl.sg.gens.iter()
                .map(|(a, b)| json!([int_json(a), int_json(b)]))
                .collect::<Vec<_>>(),
            "scan_bound": int_json(&pl.sg.scan_bound),
        });
        root["rays"] = json!({
            "D": ray_json(&pl.base.d),
            "S-": ray_json(&pl.base.s_minus),
            "S+": ray_json(&pl.base.s_plus),
            "D'": ray_json(&pl.base.d_prime),
        });
        root["fans"] = json!({
            "E": fan_json(&pl.fans.e),
            "E-": fan_json(&pl.fans.e_minus),
            "E+": fan_json(&pl.fans.e_plus),
            "E'": fan_json(&pl.fans.e_prime),
            "resolution": fan_json(&pl.resolution),
        });
        root["orbit_poset"] = poset_json(&pl.poset);
        root["global_generation"] = json!({
            "condition_a": pl.global_generation.condition_a,
            "condition_b": pl.global_generation.condition_b,
            "failures": pl.global_generation.failures,
        });
        root["ideals"] = Value::Array(pl.ideals.iter().map(ideal_json).collect());
        root["fixed_point_count"] = json!(data.fixed_point_count);
        root["tangent_dimensions"] = json!(data.tangent_dimensions);
        root["consistency"] = Value::Array(data.consistency.iter().map(check_json).collect());
        if let Some(note) = &data.resolution_note {
            root["resolution_note"] = json!(note);
        }
        root
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let p = &self.pair;
        out.push_str(&format!(
            "pair: p = {}, q = {}, m = {}{}\n",
            p.p,
            p.q,
            p.m,
            if p.smooth { " (smooth)" } else { "" }
        ));
        if let Some(notice) = &self.notice {
            out.push_str(&format!("notice: {notice}\n"));
            return out;
        }
        let data = self.data.as_ref().unwrap();
        let pl = &data.pipeline;
        out.push_str(&format!("toric: {}\n", pl.toric));
        out.push_str(&format!(
            "invariants: k = {}, a = {}, b = {}, alpha = {}, beta = {}, t = {}\n",
            pl.inv.k, pl.inv.a, pl.inv.b, pl.inv.alpha, pl.inv.beta, pl.inv.t
        ));
        out.push_str(&format!(
            "expansion of {}/{}: coefficients {:?}, depth {}\n",
            pl.hj.b,
            pl.hj.t,
            pl.hj.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            pl.depth(),
        ));
        out.push_str(&format!(
            "sequences:\n  e = {:?}\n  l = {:?}\n  n = {:?}\n",
            pl.seq.e.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            pl.seq.l.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            pl.seq.n.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        ));
        out.push_str(&format!(
            "semigroup generators: {}\n",
            pl.sg
                .gens
                .iter()
                .map(|(a, b)| format!("({a}, {b})"))
                .collect::<Vec<_>>()
                .join(", ")
        ));
        out.push_str(&format!(
            "resolution rays: {}\n",
            pl.resolution
                .rays
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ));
        if let Some(note) = &data.resolution_note {
            out.push_str(&format!("resolution: {note}\n"));
        }
        out.push_str("ideals:\n");
        for spec in &pl.ideals {
            out.push_str(&format!(
                "  {} = ({})\n",
                spec.name(),
                spec.generators
                    .iter()
                    .map(|g| g.display())
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
        }
        out.push_str(&format!(
            "fixed points: {}, tangent dimensions: {:?}\n",
            data.fixed_point_count, data.tangent_dimensions
        ));
        out.push_str("consistency:\n");
        for c in &data.consistency {
            out.push_str(&format!("  {}\n", check_line(c)));
        }
        out
    }
}

fn check_line(c: &Check) -> String {
    let mut line = format!("{:<28} {:>7}  ({} cases)", c.name, c.status.to_string(), c.cases);
    if !c.detail.is_empty() {
        line.push_str(&format!("  -- {}", c.detail));
    }
    line
}

/// Full analysis with the default completion budget.
pub fn analyze(pair: &PopovPair) -> Result<AnalysisReport, Error> {
    analyze_with_budget(pair, crate::ideal::DEFAULT_COMPLETION_BUDGET)
}

pub fn analyze_with_budget(pair: &PopovPair, budget: usize) -> Result<AnalysisReport, Error> {
    if pair.smooth {
        return Ok(AnalysisReport {
            pair: pair.clone(),
            notice: Some(
                "height 1 is the smooth case; there is nothing to resolve and the \
                 resolution pipeline does not apply"
                    .into(),
            ),
            data: None,
        });
    }
    let pl = Pipeline::new(pair)?;
    let fixed_points = borel_fixed_points(pair, &pl.inv, &pl.hj, &pl.seq, &pl.sg, budget)?;
    let mut tangent_dimensions = Vec::new();
    for i in 1..=pl.depth() + 1 {
        tangent_dimensions.push(tangent_dimension(
            pair, &pl.inv, &pl.hj, &pl.seq, &pl.sg, i, budget,
        )?);
    }
    let consistency = consistency_checks(&pl, budget)?;
    let resolution_note = pl
        .toric
        .then(|| "already smooth after the weighted blow-up (depth 0)".to_string());
    Ok(AnalysisReport {
        pair: pair.clone(),
        notice: None,
        data: Some(AnalysisData {
            fixed_point_count: fixed_points.len(),
            tangent_dimensions,
            consistency,
            resolution_note,
            pipeline: pl,
        }),
    })
}

pub fn verify_json(report: &VerifyReport) -> Value {
    json!({
        "schema": "1",
        "pair": {
            "p": int_json(&report.pair.p),
            "q": int_json(&report.pair.q),
            "m": int_json(&report.pair.m),
        },
        "toric": report.toric,
        "depth": report.depth,
        "passed": report.passed(),
        "checks": report.checks.iter().map(check_json).collect::<Vec<_>>(),
    })
}

pub fn verify_text(report: &VerifyReport) -> String {
    let mut out = format!(
        "verify p = {}, q = {}, m = {} (toric: {}, depth: {})\n",
        report.pair.p, report.pair.q, report.pair.m, report.toric, report.depth
    );
    for c in &report.checks {
        out.push_str(&check_line(c));
        out.push('\n');
    }
    out.push_str(&format!(
        "result: {}\n",
        if report.passed() { "pass" } else { "FAIL" }
    ));
    out
}

pub fn sweep_json(report: &SweepReport) -> Value {
    json!({
        "schema": "1",
        "passed": report.passed(),
        "rows": report.rows.iter().map(|r| json!({
            "p": r.p,
            "q": r.q,
            "m": r.m,
            "toric": r.toric,
            "depth": r.depth,
            "passed": r.passed,
            "failed_checks": r.failed_checks,
        })).collect::<Vec<_>>(),
    })
}

pub fn sweep_text(report: &SweepReport) -> String {
    let mut out = String::from("  q   p   m  toric  depth  result\n");
    for r in &report.rows {
        out.push_str(&format!(
            "{:>3} {:>3} {:>3}  {:<5}  {:>5}  {}{}\n",
            r.q,
            r.p,
            r.m,
            r.toric,
            r.depth,
            if r.passed { "pass" } else { "FAIL" },
            if r.failed_checks.is_empty() {
                String::new()
            } else {
                format!("  ({})", r.failed_checks.join(", "))
            }
        ));
    }
    let failed = report.rows.iter().filter(|r| !r.passed).count();
    out.push_str(&format!(
        "{} pair(s), {} failed\n",
        report.rows.len(),
        failed
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_smooth_notice() {
        let pair = PopovPair::new(3, 3, 5).unwrap();
        let report = analyze(&pair).unwrap();
        assert!(report.data.is_none());
        assert!(report.notice.is_some());
        let v = report.to_json();
        assert_eq!(v["schema"], "1");
        assert_eq!(v["pair"]["smooth"], true);
    }

    #[test]
    fn analyze_1_4_2_fields() {
        let pair = PopovPair::new(1, 4, 2).unwrap();
        let report = analyze(&pair).unwrap();
        assert!(report.passed());
        let v = report.to_json();
        assert_eq!(v["toric"], false);
        assert_eq!(v["invariants"]["b"], 3);
        assert_eq!(v["fixed_point_count"], 2);
        assert_eq!(v["tangent_dimensions"], json!([3, 3]));
        assert_eq!(
            v["fans"]["resolution"]["rays"],
            json!([[0, 1], [-1, 1], [-3, 2]])
        );
        assert_eq!(v["semigroup"]["generators"], json!([[2, 0], [5, 1], [8, 2]]));
    }

    #[test]
    fn analyze_toric_note() {
        let pair = PopovPair::new(1, 2, 1).unwrap();
        let report = analyze(&pair).unwrap();
        let v = report.to_json();
        assert_eq!(v["toric"], true);
        assert_eq!(v["fixed_point_count"], 1);
        assert!(v["resolution_note"].as_str().unwrap().contains("smooth"));
    }

    #[test]
    fn json_is_deterministic() {
        let pair = PopovPair::new(1, 4, 2).unwrap();
        let a = serde_json::to_string(&analyze(&pair).unwrap().to_json()).unwrap();
        let b = serde_json::to_string(&analyze(&pair).unwrap().to_json()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn big_integers_serialize_as_strings() {
        let big: Int = Int::from(1i64 << 53) * 3;
        assert_eq!(int_json(&big), json!(big.to_string()));
        assert_eq!(int_json(&Int::from(12)), json!(12));
    }
}
