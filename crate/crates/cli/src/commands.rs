use std::error::Error;
use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use qcluster::grid::{grid_selftest, GridSpec};
use qcluster::intertwiner::{
    adjudicate, kernel_g, kernel_g_hat, verify_intertwiner, GridParams, KernelConvention, KernelSpec,
};
use qcluster::io::{seed_from_json, seed_to_json, SCHEMA_VERSION};
use qcluster::quantum::{run_suite, suite_seeds, QuantumMutation, Suite};
use qcluster::special::{default_sweep, phi, qdilog, QuadratureConfig, SweepRow};
use qcluster::symbolic::tori::{mutate_a_map, mutate_x_map, parse_word, triviality_report};
use qcluster::{Label, Seed};

use crate::{Cli, Command, ConventionArg, Format, GridCmd, IntertwineCmd, QdilogCmd, QtorusCmd, SeedCmd, ToriCmd};

type Res<T> = Result<T, Box<dyn Error>>;

pub struct Output {
    pub text: String,
    /// False when a verification threshold was violated.
    pub pass: bool,
}

fn ok(text: String) -> Res<Output> {
    Ok(Output { text, pass: true })
}

pub fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(p) => fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn read_seed(p: &Path) -> Res<Seed> {
    let text = fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
    Ok(seed_from_json(&text)?)
}

fn format_or(cli: &Cli, default: Format, allowed: &[Format]) -> Res<Format> {
    let f = cli.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(format!("format {f:?} is not available for this command").into())
    }
}

fn pretty(mut v: Value) -> String {
    if let Value::Object(m) = &mut v {
        m.insert("schema".into(), json!(SCHEMA_VERSION));
    }
    serde_json::to_string_pretty(&v).expect("values serialize") + "\n"
}

fn floats(s: &str) -> Res<Vec<f64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|e| format!("bad number {t:?}: {e}").into()))
        .collect()
}

fn positive(name: &str, x: f64) -> Res<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(format!("{name} must be positive, got {x}").into())
    }
}

fn convention(c: ConventionArg) -> KernelConvention {
    match c {
        ConventionArg::PaperG => KernelConvention::PaperG,
        ConventionArg::PaperGhat => KernelConvention::PaperGhat,
    }
}

pub fn run(cli: &Cli) -> Res<Output> {
    match &cli.command {
        Command::Seed(c) => seed_cmd(cli, c),
        Command::Tori(c) => tori_cmd(cli, c),
        Command::Qtorus(c) => qtorus_cmd(cli, c),
        Command::Qdilog(c) => qdilog_cmd(cli, c),
        Command::Grid(GridCmd::Selftest(g)) => grid_cmd(cli, g),
        Command::Intertwine(c) => intertwine_cmd(cli, c),
    }
}

fn seed_cmd(cli: &Cli, c: &SeedCmd) -> Res<Output> {
    format_or(cli, Format::Json, &[Format::Json])?;
    let out = match c {
        SeedCmd::Mutate(a) => read_seed(&a.file)?.mutate(&Label::parse(&a.k))?,
        SeedCmd::Dual { file, kind } => {
            let s = read_seed(file)?;
            if kind == "chiral" {
                s.chiral_dual()
            } else {
                s.langlands_dual()?
            }
        }
    };
    ok(seed_to_json(&out))
}

fn tori_cmd(cli: &Cli, c: &ToriCmd) -> Res<Output> {
    match c {
        ToriCmd::XMutate(a) | ToriCmd::AMutate(a) => {
            let s = read_seed(&a.file)?;
            let k = Label::parse(&a.k);
            let m = match c {
                ToriCmd::XMutate(_) => mutate_x_map(&s, &k)?,
                _ => mutate_a_map(&s, &k)?,
            };
            match format_or(cli, Format::Text, &[Format::Text, Format::Json])? {
                Format::Json => {
                    let names = m.variable_names();
                    let images: Vec<String> = m.images.iter().map(|r| r.render(&names)).collect();
                    ok(pretty(json!({ "target": seed_to_json(&m.target), "images": images })))
                }
                _ => ok(m.to_string()),
            }
        }
        ToriCmd::CheckWord { file, word } => {
            let s = read_seed(file)?;
            let w = parse_word(word)?;
            let (a, x, closed) = match triviality_report(&s, &w) {
                Ok(r) => (r.a_trivial, r.x_trivial, true),
                Err(qcluster::Error::WordNotClosed) => (false, false, false),
                Err(e) => return Err(e.into()),
            };
            match format_or(cli, Format::Text, &[Format::Text, Format::Json])? {
                Format::Json => ok(pretty(json!({ "closed": closed, "a_trivial": a, "x_trivial": x }))),
                _ => ok(format!("{a}\n")),
            }
        }
    }
}

fn qtorus_cmd(cli: &Cli, c: &QtorusCmd) -> Res<Output> {
    match c {
        QtorusCmd::Mutate(a) => {
            format_or(cli, Format::Text, &[Format::Text])?;
            let s = read_seed(&a.file)?;
            let k = s.index_of(&Label::parse(&a.k))?;
            let m = QuantumMutation::new(&s, k);
            let names = m.source.generator_names("X");
            let mut out = String::new();
            for (l, img) in s.labels().iter().zip(&m.images) {
                out.push_str(&format!("X{l}' = {}\n", img.render(&names)));
            }
            ok(out)
        }
        QtorusCmd::Verify { suite, file, random } => {
            let suite: Suite = suite.parse()?;
            let seeds = match file {
                Some(p) => vec![read_seed(p)?],
                None => suite_seeds(&mut ChaCha8Rng::seed_from_u64(cli.rng_seed), *random),
            };
            let cases = run_suite(suite, &seeds);
            let pass = cases.iter().all(|c| c.pass);
            let text = match format_or(cli, Format::Text, &[Format::Text, Format::Csv, Format::Json])? {
                Format::Json => pretty(json!({
                    "cases": cases.iter().map(|c| json!({ "name": c.name, "pass": c.pass })).collect::<Vec<_>>(),
                    "pass": pass,
                })),
                Format::Csv => {
                    let mut t = String::from("case,pass\n");
                    for c in &cases {
                        t.push_str(&format!("\"{}\",{}\n", c.name.replace('"', "'"), c.pass));
                    }
                    t
                }
                Format::Text => cases.iter().map(|c| format!("{c}\n")).collect(),
            };
            Ok(Output { text, pass })
        }
    }
}

fn sweep_json(r: &SweepRow) -> Value {
    json!({
        "identity": r.identity.to_string(),
        "z": [r.z.re, r.z.im],
        "hbar": r.hbar,
        "residual": r.residual,
        "threshold": r.threshold,
        "pass": r.pass,
    })
}

fn qdilog_cmd(cli: &Cli, c: &QdilogCmd) -> Res<Output> {
    let cfg = QuadratureConfig::default();
    match c {
        QdilogCmd::Eval { which, z, hbar } => {
            positive("hbar", *hbar)?;
            let parts = floats(z)?;
            if parts.len() != 2 {
                return Err(format!("--z expects re,im, got {z:?}").into());
            }
            let z = Complex64::new(parts[0], parts[1]);
            let v = if which == "phi" { phi(z, *hbar, &cfg)? } else { qdilog(z, *hbar, &cfg)? };
            match format_or(cli, Format::Csv, &[Format::Csv, Format::Json])? {
                Format::Json => ok(pretty(json!({
                    "which": which, "z": [z.re, z.im], "hbar": hbar,
                    "value": [v.value.re, v.value.im], "abs_err": v.abs_err,
                }))),
                _ => ok(format!(
                    "which,z_re,z_im,hbar,value_re,value_im,abs_err\n{which},{},{},{hbar},{:.16e},{:.16e},{:.1e}\n",
                    z.re, z.im, v.value.re, v.value.im, v.abs_err
                )),
            }
        }
        QdilogCmd::Verify { .. } => {
            let rows = default_sweep(&cfg)?;
            let pass = rows.iter().all(|r| r.pass);
            let text = match format_or(cli, Format::Csv, &[Format::Csv, Format::Json])? {
                Format::Json => pretty(json!({
                    "rows": rows.iter().map(sweep_json).collect::<Vec<_>>(),
                    "pass": pass,
                })),
                _ => {
                    let mut t = String::from(SweepRow::CSV_HEADER);
                    t.push('\n');
                    for r in &rows {
                        t.push_str(&r.csv());
                        t.push('\n');
                    }
                    t
                }
            };
            Ok(Output { text, pass })
        }
    }
}

fn grid_spec(s: &Seed, g: &crate::GridOpts) -> Res<GridSpec> {
    positive("hbar", g.hbar)?;
    positive("L", g.l)?;
    if !g.n.is_power_of_two() {
        return Err(format!("--n must be a power of two, got {}", g.n).into());
    }
    Ok(GridSpec::uniform(s.rank(), g.l, g.n)?)
}

fn grid_cmd(cli: &Cli, g: &crate::GridOpts) -> Res<Output> {
    let s = read_seed(&g.seed)?;
    let spec = grid_spec(&s, g)?;
    let rows = grid_selftest(&s, g.hbar, &spec, &mut ChaCha8Rng::seed_from_u64(cli.rng_seed))?;
    let pass = rows.iter().all(|r| r.pass);
    let text = match format_or(cli, Format::Csv, &[Format::Csv, Format::Json])? {
        Format::Json => pretty(json!({
            "hbar": g.hbar, "n": g.n, "L": g.l,
            "rows": serde_json::to_value(&rows)?,
            "pass": pass,
        })),
        _ => {
            let mut t = String::from("check,residual,threshold,pass\n");
            for r in &rows {
                t.push_str(&format!("{},{:.3e},{:.1e},{}\n", r.name, r.residual, r.threshold, r.pass));
            }
            t
        }
    };
    Ok(Output { text, pass })
}

fn intertwine_cmd(cli: &Cli, c: &IntertwineCmd) -> Res<Output> {
    match c {
        IntertwineCmd::Verify { grid, k, convention: conv, gaussians } => {
            format_or(cli, Format::Json, &[Format::Json])?;
            let s = read_seed(&grid.seed)?;
            grid_spec(&s, grid)?;
            let ks = KernelSpec::new(&s, &Label::parse(k), grid.hbar, convention(*conv))?;
            let params = GridParams {
                points: grid.n,
                half_width: grid.l,
                gaussians: *gaussians,
                rng_seed: cli.rng_seed,
            };
            let r = verify_intertwiner(&ks, &params)?;
            let pass = r.pass;
            let mut v = serde_json::to_value(&r)?;
            let max = r.intertwining.iter().map(|c| c.residual).fold(0.0, f64::max);
            v["max_intertwining_residual"] = json!(max);
            v["thresholds"] = json!({
                "intertwining": qcluster::tolerances::INTERTWINING,
                "control_factor": qcluster::tolerances::NEGATIVE_CONTROL_FACTOR,
                "unitarity": qcluster::tolerances::UNITARITY,
                "kernel_pde": qcluster::tolerances::KERNEL_PDE,
            });
            Ok(Output { text: pretty(v), pass })
        }
        IntertwineCmd::Adjudicate { seed, hbar, n, l } => {
            format_or(cli, Format::Json, &[Format::Json])?;
            positive("hbar", *hbar)?;
            positive("L", *l)?;
            if !n.is_power_of_two() {
                return Err(format!("--n must be a power of two, got {n}").into());
            }
            let seeds = if seed.is_empty() {
                vec![
                    Seed::from_matrix(vec![vec![0, 1], vec![-1, 0]], vec![1, 1])?,
                    Seed::from_matrix(vec![vec![0, 2], vec![-1, 0]], vec![1, 2])?,
                ]
            } else {
                seed.iter().map(|p| read_seed(p)).collect::<Res<Vec<_>>>()?
            };
            let params = GridParams {
                points: *n,
                half_width: *l,
                rng_seed: cli.rng_seed,
                ..GridParams::default()
            };
            let adj = adjudicate(&seeds, *hbar, &params)?;
            let pass = adj.winner.is_some();
            Ok(Output { text: pretty(serde_json::to_value(&adj)?), pass })
        }
        IntertwineCmd::Kernel { seed, k, hbar, c, a, convention: conv, delta } => {
            positive("hbar", *hbar)?;
            let s = read_seed(seed)?;
            let ks = KernelSpec::new(&s, &Label::parse(k), *hbar, convention(*conv))?;
            let a = floats(a)?;
            let mut rows = Vec::new();
            for x in floats(c)? {
                let v = match conv {
                    ConventionArg::PaperGhat => kernel_g_hat(&ks, x, &a)?,
                    ConventionArg::PaperG => {
                        positive("delta", *delta)?;
                        kernel_g(&ks, x, &a, *delta)?.extrapolated
                    }
                };
                rows.push((x, v));
            }
            match format_or(cli, Format::Csv, &[Format::Csv, Format::Json])? {
                Format::Json => ok(pretty(json!({
                    "seed": seed_to_json(&s), "k": k, "hbar": hbar, "convention": ks.convention.to_string(),
                    "a_others": a,
                    "values": rows.iter().map(|(x, v)| json!({ "c": x, "re": v.re, "im": v.im })).collect::<Vec<_>>(),
                }))),
                _ => {
                    let mut t = String::from("c,re,im\n");
                    for (x, v) in rows {
                        t.push_str(&format!("{x},{:.16e},{:.16e}\n", v.re, v.im));
                    }
                    ok(t)
                }
            }
        }
    }
}
