//! Command-line front end: instance documents, builtin references, commands
//! and versioned JSON reports.

pub mod format;
pub mod refs;
mod render;
pub mod selftest;

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use dgres_core::derived::{
    hom_table_via_ifij, hom_table_via_sppj, ifij_for_hom, ltensor, rhom, spft_for_tor, sppj_for_hom,
    tor_table_via_spft, Table,
};
use dgres_core::dgcore::{DgAlgebra, DgModule};
use dgres_core::resolve::{
    fd, gldim, gorenstein_check, injdim_with, pd_with, semisimple_zero_check, Dim, IfijResolution,
    MembershipCertificate, SppjResolution, StepMode, StopRule,
};

pub use format::{emit, parse, Document, ParseError, ParseOptions};

pub const SCHEMA: &str = "dgres-report/1";
pub const DEFAULT_ALGEBRA: &str = "koszul(x; k[x]/(x^2))";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Sppj,
    Ifij,
    Spft,
}

/// Closed window `a:b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window(pub i32, pub i32);

fn parse_window(s: &str) -> std::result::Result<Window, String> {
    let (a, b) = s.split_once(':').ok_or("window must look like a:b")?;
    let a: i32 = a.trim().parse().map_err(|_| format!("bad window start '{a}'"))?;
    let b: i32 = b.trim().parse().map_err(|_| format!("bad window end '{b}'"))?;
    if a > b {
        return Err(format!("empty window {a}:{b}"));
    }
    Ok(Window(a, b))
}

#[derive(Clone, Debug, Parser, Serialize)]
#[command(name = "dgres", version, about = "Homological dimensions over finite-dimensional DG-algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// instance document
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// builtin algebra reference, used when the document has no algebra
    #[arg(long, global = true)]
    pub algebra: Option<String>,
    #[arg(long, global = true)]
    pub prime: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// iteration bound for resolutions
    #[arg(long, global = true, default_value_t = 16)]
    pub cap: usize,
    #[arg(long, global = true, env = "DGRES_SEED")]
    pub seed: Option<u64>,
    /// exit with status 2 when a dimension is only bounded below
    #[arg(long, global = true)]
    pub require_exact: bool,
    /// add wall-clock timing to the report
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Debug, clap::Args, Serialize)]
pub struct ModuleArg {
    /// document module name or builtin reference
    #[arg(long, default_value = "regular")]
    pub module: String,
}

#[derive(Clone, Debug, clap::Args, Serialize)]
pub struct DimArgs {
    #[command(flatten)]
    pub module: ModuleArg,
    #[arg(long, action = ArgAction::Set, default_value_t = true)]
    pub minimal: bool,
}

#[derive(Clone, Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// check the algebra and module axioms
    Validate {
        #[arg(long)]
        module: Option<String>,
    },
    /// cohomology of the algebra and a module
    Cohomology {
        #[arg(long)]
        module: Option<String>,
    },
    /// projective dimension
    Pd(DimArgs),
    /// injective dimension
    Injdim(DimArgs),
    /// flat dimension
    Fd(ModuleArg),
    /// global dimension from the simple heart modules
    Gldim,
    /// build an sppj, ifij or spft resolution
    Resolve {
        #[command(flatten)]
        module: ModuleArg,
        #[arg(long, value_enum, default_value_t = Kind::Sppj)]
        kind: Kind,
        #[arg(long, action = ArgAction::Set, default_value_t = true)]
        minimal: bool,
        /// extra zero-mapped generators per step
        #[arg(long, default_value_t = 0)]
        pad: usize,
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// dimensions of H^n RHom(module, target) on a window
    Hom {
        #[command(flatten)]
        module: ModuleArg,
        #[arg(long)]
        target: String,
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true, default_value = "-6:10")]
        window: Window,
    },
    /// dimensions of H^{-n}(module ⊗^L left) on a window
    Tor {
        #[command(flatten)]
        module: ModuleArg,
        /// left module, a builtin reference over the opposite algebra
        #[arg(long, default_value = "regular")]
        left: String,
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true, default_value = "0:8")]
        window: Window,
    },
    /// injective dimension of R on both sides
    Gorenstein,
    /// run the invariant battery
    Selftest,
    /// print the canonical text form of the instances
    Emit {
        #[arg(long)]
        module: Option<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Cohomology { .. } => "cohomology",
            Command::Pd(_) => "pd",
            Command::Injdim(_) => "injdim",
            Command::Fd(_) => "fd",
            Command::Gldim => "gldim",
            Command::Resolve { .. } => "resolve",
            Command::Hom { .. } => "hom",
            Command::Tor { .. } => "tor",
            Command::Gorenstein => "gorenstein",
            Command::Selftest => "selftest",
            Command::Emit { .. } => "emit",
        }
    }
}

/// Printed output and exit status.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

pub fn digest(text: &str) -> String {
    let h = Sha256::digest(text.as_bytes());
    h.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

struct Ctx {
    doc: Document,
    cap: usize,
    /// instances touched by the command, for the report
    used: Vec<(String, Arc<DgModule>, String)>,
}

impl Ctx {
    fn algebra(&self) -> &Arc<DgAlgebra> {
        &self.doc.algebra
    }

    fn module_over(&mut self, reference: &str, r: &Arc<DgAlgebra>, role: &str) -> Result<Arc<DgModule>> {
        let m = if Arc::ptr_eq(r, &self.doc.algebra) {
            match self.doc.module(reference) {
                Some(m) => m.clone(),
                None => Arc::new(
                    refs::module(reference, r, &self.doc.named())
                        .map_err(|e| anyhow!("--{role} '{reference}', column {}: {}", e.offset + 1, e.message))?,
                ),
            }
        } else {
            Arc::new(
                refs::module(reference, r, &Default::default())
                    .map_err(|e| anyhow!("--{role} '{reference}', column {}: {}", e.offset + 1, e.message))?,
            )
        };
        self.used.push((role.to_string(), m.clone(), reference.to_string()));
        Ok(m)
    }

    fn module(&mut self, reference: &str, role: &str) -> Result<Arc<DgModule>> {
        let r = self.doc.algebra.clone();
        self.module_over(reference, &r, role)
    }
}

fn load(cli: &Cli) -> Result<Document> {
    let seed = cli.seed.unwrap_or(dgres_core::dgcore::DEFAULT_SEED);
    let (text, algebra) = match &cli.input {
        Some(p) => {
            let t = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            (t, cli.algebra.clone())
        }
        None => (String::new(), Some(cli.algebra.clone().unwrap_or_else(|| DEFAULT_ALGEBRA.to_string()))),
    };
    let opts = ParseOptions { seed, prime: cli.prime, algebra };
    let doc = parse(&text, &opts).map_err(|e| match &cli.input {
        Some(p) => anyhow!("{}: {e}", p.display()),
        None => anyhow!("{e}"),
    })?;
    if let (Some(p), Some(q)) = (cli.prime, cli.input.as_ref().map(|_| doc.prime)) {
        if p != q {
            bail!("--prime {p} disagrees with the document prime {q}");
        }
    }
    Ok(doc)
}

fn mode(minimal: bool, pad: usize) -> StepMode {
    match (minimal, pad) {
        (_, k) if k > 0 => StepMode::Padded(k),
        (true, _) => StepMode::Minimal,
        (false, _) => StepMode::NonMinimal,
    }
}

/// Cohomology concentrated in degree 0: the module lies in the heart.
fn in_heart(m: &DgModule) -> bool {
    m.sup() == Some(0) && m.inf() == Some(0)
}

fn certificate_json(c: &MembershipCertificate) -> Value {
    serde_json::to_value(c).unwrap()
}

fn sppj_json(res: &SppjResolution) -> Value {
    let stages: Vec<Value> = res
        .modules
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let step = res.steps.get(i);
            json!({
                "index": i,
                "sup": m.sup(),
                "inf": m.inf(),
                "total_dim": m.total_dim(),
                "cohomology": m.cohomology().summary().dims,
                "generators": step.map(|s| s.generators),
                "free_minimal": step.map(|s| s.free_minimal),
                "free_sup": res.free_sup(i),
                "certificate": res.certificates.get(i).map(certificate_json),
            })
        })
        .collect();
    json!({ "steps": res.steps.len(), "terminal": res.terminal, "stages": stages })
}

fn ifij_json(res: &IfijResolution) -> Value {
    let stages: Vec<Value> = res
        .modules
        .iter()
        .enumerate()
        .map(|(i, m)| {
            json!({
                "index": i,
                "sup": m.sup(),
                "inf": m.inf(),
                "total_dim": m.total_dim(),
                "cohomology": m.cohomology().summary().dims,
                "injective_inf": res.injective_inf(i),
                "injective_total_dim": res.steps.get(i).map(|s| s.injective.total_dim()),
                "certificate": res.certificates.get(i).map(certificate_json),
            })
        })
        .collect();
    json!({ "steps": res.steps.len(), "terminal": res.terminal, "stages": stages })
}

fn tables_json(tables: &[Table]) -> Value {
    let agree = tables.windows(2).all(|w| w[0].agrees(&w[1]));
    json!({ "tables": tables, "routes_agree": agree })
}

/// Execute a command; the value is the `result` section plus the dimensions it reports.
fn execute(cli: &Cli, ctx: &mut Ctx) -> Result<(Value, Vec<Dim>, i32)> {
    let cap = ctx.cap;
    let r = ctx.algebra().clone();
    Ok(match &cli.command {
        Command::Validate { module } => {
            let rep = r.validate();
            let mut mods = Vec::new();
            let names: Vec<String> = match module {
                Some(m) => vec![m.clone()],
                None => ctx.doc.modules.iter().map(|m| m.name.clone()).collect(),
            };
            for n in names {
                let m = ctx.module(&n, "module")?;
                mods.push(json!({ "name": n, "validation": m.validate() }));
            }
            let ok = rep.is_ok();
            (json!({ "algebra": rep, "modules": mods, "valid": ok }), vec![], if ok { 0 } else { 1 })
        }
        Command::Cohomology { module } => {
            let h0 = r.h0()?;
            let alg = json!({
                "cohomology": r.degrees().filter(|&i| r.h_dim(i) > 0).map(|i| (i, r.h_dim(i))).collect::<Vec<_>>(),
                "h0_dim": h0.dim(),
                "h0_radical_dim": h0.radical()?.dim(),
                "simples": h0.simples()?.iter().map(|s| s.dim()).collect::<Vec<_>>(),
                "generators": r.generators(),
            });
            let m = match module {
                Some(s) => Some(ctx.module(s, "module")?.cohomology().summary()),
                None => None,
            };
            (json!({ "algebra": alg, "module": m }), vec![], 0)
        }
        Command::Pd(a) => {
            let m = ctx.module(&a.module.module, "module")?;
            let rep = pd_with(&m, cap, mode(a.minimal, 0))?;
            let d = rep.status;
            (serde_json::to_value(&rep)?, vec![d], 0)
        }
        Command::Injdim(a) => {
            let m = ctx.module(&a.module.module, "module")?;
            let rep = injdim_with(&m, cap, mode(a.minimal, 0))?;
            let d = rep.status;
            (serde_json::to_value(&rep)?, vec![d], 0)
        }
        Command::Fd(a) => {
            let m = ctx.module(&a.module, "module")?;
            let rep = fd(&m, cap)?;
            let d = rep.status;
            (serde_json::to_value(&rep)?, vec![d], 0)
        }
        Command::Gldim => {
            let rep = gldim(&r, cap)?;
            let zero = semisimple_zero_check(&r)?;
            let dims = vec![rep.status, rep.injective_status];
            (json!({ "gldim": rep, "semisimple_zero": zero }), dims, 0)
        }
        Command::Resolve { module, kind, minimal, pad, max_steps } => {
            let m = ctx.module(&module.module, "module")?;
            let steps = max_steps.unwrap_or(cap);
            let md = mode(*minimal, *pad);
            let v = match kind {
                Kind::Sppj => sppj_json(&SppjResolution::build(&m, md, steps, StopRule::Projective)?),
                Kind::Spft => sppj_json(&SppjResolution::build(&m, md, steps, StopRule::Flat)?),
                Kind::Ifij => ifij_json(&IfijResolution::build(&m, md, steps, true)?),
            };
            let mut v = v;
            v["kind"] = serde_json::to_value(kind)?;
            v["mode"] = serde_json::to_value(md)?;
            (v, vec![], 0)
        }
        Command::Hom { module, target, window } => {
            let m = ctx.module(&module.module, "module")?;
            let n = ctx.module(target, "target")?;
            let w = (window.0, window.1);
            let mut tables = vec![rhom(&m, &n, w)?];
            if !m.is_acyclic() && in_heart(&n) {
                let res = sppj_for_hom(&m, w.1)?;
                tables.push(hom_table_via_sppj(&n.h_module(0)?, &res, w)?);
            }
            if !n.is_acyclic() && in_heart(&m) {
                let res = ifij_for_hom(&n, w.1)?;
                tables.push(hom_table_via_ifij(&m.h_module(0)?, &res, w)?);
            }
            let v = tables_json(&tables);
            let code = if v["routes_agree"] == Value::Bool(true) { 0 } else { 1 };
            (v, vec![], code)
        }
        Command::Tor { module, left, window } => {
            let m = ctx.module(&module.module, "module")?;
            let op = r.opposite();
            let l = ctx.module_over(left, &op, "left")?;
            let w = (window.0, window.1);
            let mut tables = vec![ltensor(&m, &l, w)?];
            if !m.is_acyclic() && in_heart(&l) {
                let res = spft_for_tor(&m, w.1)?;
                let q = l.h_module(0)?.with_algebra(r.h0()?.opposite());
                tables.push(tor_table_via_spft(&q, &res, w)?);
            }
            let v = tables_json(&tables);
            let code = if v["routes_agree"] == Value::Bool(true) { 0 } else { 1 };
            (v, vec![], code)
        }
        Command::Gorenstein => {
            let rep = gorenstein_check(&r, cap)?;
            let dims = vec![rep.right.status, rep.left.status];
            (serde_json::to_value(&rep)?, dims, 0)
        }
        Command::Selftest => {
            let checks = selftest::run(cap.min(8), cli.seed.unwrap_or(dgres_core::dgcore::DEFAULT_SEED));
            let failed = checks.iter().filter(|c| !c.passed).count();
            let v = json!({ "passed": checks.len() - failed, "failed": failed, "checks": checks });
            (v, vec![], if failed == 0 { 0 } else { 1 })
        }
        Command::Emit { module } => {
            let mut text = emit(&ctx.doc);
            if let Some(s) = module {
                if ctx.doc.module(s).is_none() {
                    let m = ctx.module(s, "module")?;
                    text.push_str(&format::emit_module("M", &m));
                }
            }
            (json!({ "text": text }), vec![], 0)
        }
    })
}

fn dims_json(m: &DgModule) -> Value {
    json!({ "lo": m.lo(), "dims": m.dims() })
}

/// Parse arguments, run, and render; `Err` is an error exit with status 1.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let t0 = Instant::now();
    let doc = load(cli)?;
    let mut ctx = Ctx { doc, cap: cli.cap, used: Vec::new() };
    let (result, dims, mut code) = execute(cli, &mut ctx)?;
    let elapsed = t0.elapsed();
    if code == 0 && cli.require_exact && dims.iter().any(|d| !d.is_exact()) {
        code = 2;
    }
    let r = ctx.algebra();
    let alg_text = format!("prime {}\n{}", ctx.doc.prime, format::emit_algebra(r));
    let modules: Vec<Value> = ctx
        .used
        .iter()
        .map(|(role, m, reference)| {
            json!({
                "role": role,
                "reference": reference,
                "digest": digest(&format!("{alg_text}{}", format::emit_module("M", m))),
                "shape": dims_json(m),
            })
        })
        .collect();
    let mut report = json!({
        "schema": SCHEMA,
        "command": { "name": cli.command.name(), "args": cli.command, "cap": cli.cap, "seed": cli.seed, "require_exact": cli.require_exact },
        "instances": {
            "prime": ctx.doc.prime,
            "algebra": {
                "reference": ctx.doc.algebra_source,
                "digest": digest(&alg_text),
                "dims": r.degrees().map(|i| (i, r.dim(i))).collect::<Vec<_>>(),
            },
            "modules": modules,
        },
        "result": result,
        "exact": dims.iter().all(|d| d.is_exact()),
    });
    if cli.timing {
        report["timing_ms"] = json!(elapsed.as_secs_f64() * 1e3);
    }
    let stdout = match cli.format {
        OutputFormat::Json => serde_json::to_string_pretty(&report)? + "\n",
        OutputFormat::Text => render::text(&report),
    };
    Ok(Outcome { stdout, code })
}

/// Entry point shared by the binary and the tests.
pub fn main_with<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let s = e.render().to_string();
            return if code == 0 { (s, String::new(), 0) } else { (String::new(), s, 1) };
        }
    };
    match run(&cli) {
        Ok(o) => (o.stdout, String::new(), o.code),
        Err(e) => (String::new(), format!("error: {e:#}\n"), 1),
    }
}
