//! Plain-text rendering of a report.

use std::fmt::Write;

use serde_json::Value;

fn dim(v: &Value) -> String {
    if let Some(e) = v.get("exact") {
        match e {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    } else if let Some(a) = v.get("at_least") {
        format!(">= {a}")
    } else {
        v.to_string()
    }
}

fn opt(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn pairs(v: &Value) -> String {
    let Some(a) = v.as_array() else { return "-".into() };
    if a.is_empty() {
        return "0".into();
    }
    a.iter().map(|p| format!("{}:{}", p[0], p[1])).collect::<Vec<_>>().join(" ")
}

fn dimension_report(out: &mut String, label: &str, r: &Value) {
    let _ = writeln!(out, "{label} = {}", dim(&r["status"]));
    if let Some(lb) = r.get("lower_bound").filter(|v| !v.is_null()) {
        let _ = writeln!(out, "  sharper lower bound {lb}");
    }
    let _ = writeln!(out, "  stage  anchor  total  member  gens  cohomology");
    for s in r["stages"].as_array().into_iter().flatten() {
        let _ = writeln!(
            out,
            "  {:>5}  {:>6}  {:>5}  {:>6}  {:>4}  {}",
            opt(&s["index"]),
            opt(&s["anchor"]),
            opt(&s["total_dim"]),
            opt(&s["member"]),
            opt(&s["generators"]),
            pairs(&s["cohomology"])
        );
    }
    for t in r["transcript"].as_array().into_iter().flatten() {
        let _ = writeln!(out, "  # {}", opt(t));
    }
}

fn tables(out: &mut String, r: &Value, head: &str) {
    let ts = r["tables"].as_array().cloned().unwrap_or_default();
    let _ = write!(out, "{head:>4}");
    for t in &ts {
        let _ = write!(out, "  {:>8}", opt(&t["route"]));
    }
    out.push('\n');
    if let Some(first) = ts.first() {
        for (k, row) in first["dims"].as_array().into_iter().flatten().enumerate() {
            let _ = write!(out, "{:>4}", opt(&row[0]));
            for t in &ts {
                let _ = write!(out, "  {:>8}", opt(&t["dims"][k][1]));
            }
            out.push('\n');
        }
    }
    let _ = writeln!(out, "routes agree: {}", r["routes_agree"]);
}

pub fn text(report: &Value) -> String {
    let mut out = String::new();
    let name = report["command"]["name"].as_str().unwrap_or("");
    let inst = &report["instances"];
    let _ = writeln!(
        out,
        "algebra {} over GF({}), digest {}",
        opt(&inst["algebra"]["reference"]),
        inst["prime"],
        opt(&inst["algebra"]["digest"])
    );
    for m in inst["modules"].as_array().into_iter().flatten() {
        let _ = writeln!(out, "{} {} digest {}", opt(&m["role"]), opt(&m["reference"]), opt(&m["digest"]));
    }
    let r = &report["result"];
    match name {
        "validate" => {
            let _ = writeln!(out, "algebra valid: {}", r["valid"]);
            for v in r["algebra"]["violations"].as_array().into_iter().flatten() {
                let _ = writeln!(out, "  {} at {}", opt(&v["axiom"]), opt(&v["witness"]));
            }
            for m in r["modules"].as_array().into_iter().flatten() {
                let n = m["validation"]["violations"].as_array().map_or(0, |v| v.len());
                let _ = writeln!(out, "module {}: {} violation(s)", opt(&m["name"]), n);
            }
        }
        "cohomology" => {
            let a = &r["algebra"];
            let _ = writeln!(out, "H(R): {}", pairs(&a["cohomology"]));
            let _ = writeln!(out, "dim H0 = {}, radical {}, simples {}", a["h0_dim"], a["h0_radical_dim"], a["simples"]);
            if !r["module"].is_null() {
                let m = &r["module"];
                let _ = writeln!(out, "H(M): {}  sup {} inf {}", pairs(&m["dims"]), opt(&m["sup"]), opt(&m["inf"]));
            }
        }
        "pd" | "injdim" | "fd" => dimension_report(&mut out, name, r),
        "gldim" => {
            let g = &r["gldim"];
            let _ = writeln!(out, "gldim = {}", dim(&g["status"]));
            let _ = writeln!(out, "max injdim of simples = {}", dim(&g["injective_status"]));
            for (k, (p, i)) in g["projective"]
                .as_array()
                .into_iter()
                .flatten()
                .zip(g["injective"].as_array().into_iter().flatten())
                .enumerate()
            {
                let _ = writeln!(out, "  S_{k}: pd {}  injdim {}", dim(&p["status"]), dim(&i["status"]));
            }
            let _ = writeln!(out, "semisimple zero check: {}", r["semisimple_zero"]["holds"]);
        }
        "gorenstein" => {
            let _ = writeln!(out, "injdim_R R = {}", dim(&r["right"]["status"]));
            let _ = writeln!(out, "injdim_Rop Rop = {}", dim(&r["left"]["status"]));
            let _ = writeln!(out, "gorenstein: {}  sides agree: {}", r["gorenstein"], r["agree"]);
        }
        "resolve" => {
            let _ = writeln!(out, "{} resolution, {} step(s), terminal {}", opt(&r["kind"]), r["steps"], r["terminal"]);
            let _ = writeln!(out, "  stage   sup   inf  total  gens  member  cohomology");
            for s in r["stages"].as_array().into_iter().flatten() {
                let member = s["certificate"].get("member").map_or("-".to_string(), |v| v.to_string());
                let _ = writeln!(
                    out,
                    "  {:>5}  {:>4}  {:>4}  {:>5}  {:>4}  {:>6}  {}",
                    opt(&s["index"]),
                    opt(&s["sup"]),
                    opt(&s["inf"]),
                    opt(&s["total_dim"]),
                    opt(&s["generators"]),
                    member,
                    pairs(&s["cohomology"])
                );
            }
        }
        "hom" => tables(&mut out, r, "n"),
        "tor" => tables(&mut out, r, "n"),
        "selftest" => {
            for c in r["checks"].as_array().into_iter().flatten() {
                let mark = if c["passed"] == Value::Bool(true) { "pass" } else { "FAIL" };
                let _ = writeln!(out, "{mark}  {}  {}", opt(&c["name"]), opt(&c["detail"]));
            }
            let _ = writeln!(out, "{} passed, {} failed", r["passed"], r["failed"]);
        }
        "emit" => {
            out.clear();
            out.push_str(r["text"].as_str().unwrap_or(""));
        }
        _ => {
            let _ = writeln!(out, "{r}");
        }
    }
    if let Some(t) = report.get("timing_ms") {
        let _ = writeln!(out, "time {t} ms");
    }
    out
}
