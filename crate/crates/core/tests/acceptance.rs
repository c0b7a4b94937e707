use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qcluster::grid::{grid_selftest, GridSpec};
use qcluster::intertwiner::{
    adjudicate, pde_sweep, verify_intertwiner, GridParams, KernelConvention, KernelSpec,
};
use qcluster::quantum::{run_suite, suite_seeds, Suite};
use qcluster::sample::random_seed;
use qcluster::special::{default_sweep, Identity, QuadratureConfig};
use qcluster::symbolic::tori::{parse_word, triviality_report};
use qcluster::Seed;

struct Outcome {
    pass: bool,
    detail: String,
}

fn a2() -> Seed {
    Seed::from_matrix(vec![vec![0, 1], vec![-1, 0]], vec![1, 1]).unwrap()
}

fn b2() -> Seed {
    Seed::from_matrix(vec![vec![0, 2], vec![-1, 0]], vec![1, 2]).unwrap()
}

fn seed_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 0..100 {
        let s = random_seed(&mut rng, 1 + n % 6, 3);
        for k in 0..s.rank() {
            checked += 1;
            let m = s.mutate_at(k);
            let ok_inv = m.mutate_at(k) == s;
            let ok_chiral = m.chiral_dual() == s.chiral_dual().mutate_at(k);
            let ok_ll = match (m.langlands_dual(), s.langlands_dual()) {
                (Ok(a), Ok(b)) => a == b.mutate_at(k),
                _ => false,
            };
            if !(ok_inv && ok_chiral && ok_ll) {
                bad.push(format!("seed {n} k={}", k + 1));
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("{checked} (seed, k) cases, failures {bad:?}"),
    }
}

fn classical_tori() -> Outcome {
    let mut fails = Vec::new();
    let s3 = Seed::from_matrix(vec![vec![0, 1, -1], vec![-1, 0, 2], vec![1, -2, 0]], vec![1, 1, 1]).unwrap();
    for s in [a2(), b2(), s3] {
        for l in s.labels() {
            let w = parse_word(&format!("m{l},m{l}")).unwrap();
            match triviality_report(&s, &w) {
                Ok(r) if r.a_trivial && r.x_trivial => {}
                other => fails.push(format!("{s} m{l}m{l}: {other:?}")),
            }
        }
    }
    let pentagon = parse_word("m1,m2,m1,m2,m1,s(1 2)").unwrap();
    match triviality_report(&a2(), &pentagon) {
        Ok(r) if r.a_trivial => {}
        other => fails.push(format!("pentagon: {other:?}")),
    }
    Outcome {
        pass: fails.is_empty(),
        detail: format!("double mutations on 3 seeds and the A2 pentagon; failures {fails:?}"),
    }
}

fn quantum_torus() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let seeds = suite_seeds(&mut rng, 4);
    let mut total = 0;
    let mut failed = Vec::new();
    for suite in [Suite::Involution, Suite::Duality, Suite::Bimodule] {
        for c in run_suite(suite, &seeds) {
            total += 1;
            if !c.pass {
                failed.push(c.name);
            }
        }
    }
    Outcome {
        pass: failed.is_empty(),
        detail: format!("{total} cases over {} seeds, failures {failed:?}", seeds.len()),
    }
}

fn special_functions() -> Outcome {
    let rows = match default_sweep(&QuadratureConfig::default()) {
        Ok(r) => r,
        Err(e) => {
            return Outcome {
                pass: false,
                detail: e.to_string(),
            }
        }
    };
    let mut worst_a: f64 = 0.0;
    let mut worst_b: f64 = 0.0;
    let mut worst_d: f64 = 0.0;
    for r in &rows {
        match r.identity {
            Identity::A2 | Identity::A3 | Identity::A4 | Identity::A5 | Identity::A5b => {
                worst_a = worst_a.max(r.residual)
            }
            Identity::B2 | Identity::B3 | Identity::B4 | Identity::B5 | Identity::B5b => {
                worst_b = worst_b.max(r.residual)
            }
            Identity::B => worst_d = worst_d.max(r.residual),
            _ => {}
        }
    }
    let failed: Vec<String> = rows.iter().filter(|r| !r.pass).map(|r| r.csv()).collect();
    Outcome {
        pass: failed.is_empty() && worst_a <= 1e-8 && worst_b <= 1e-6 && worst_d <= 1e-5,
        detail: format!(
            "{} rows; max A {worst_a:.1e}, max B {worst_b:.1e}, derivative {worst_d:.1e}; failures {failed:?}",
            rows.len()
        ),
    }
}

fn heisenberg_grid() -> Outcome {
    let spec = GridSpec::uniform(2, 12.0, 256).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    match grid_selftest(&a2(), 1.0, &spec, &mut rng) {
        Ok(rows) => {
            let worst = rows
                .iter()
                .filter(|r| r.threshold == 1e-6)
                .map(|r| r.residual)
                .fold(0.0, f64::max);
            let failed: Vec<&str> = rows.iter().filter(|r| !r.pass).map(|r| r.name.as_str()).collect();
            Outcome {
                pass: failed.is_empty(),
                detail: format!("{} rows, max relative residual {worst:.1e}, failures {failed:?}", rows.len()),
            }
        }
        Err(e) => Outcome {
            pass: false,
            detail: e.to_string(),
        },
    }
}

fn kernel_pde() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut ratios = Vec::new();
    let mut pass = true;
    for s in [a2(), b2()] {
        for k in s.labels() {
            let ks = KernelSpec::new(&s, k, 1.0, KernelConvention::PaperGhat).unwrap();
            match pde_sweep(&ks, &QuadratureConfig::default(), 7) {
                Ok(cases) => {
                    for c in cases {
                        worst = worst.max(c.residual_a.max(c.residual_c.unwrap_or(0.0)));
                        ratios.push(c.halving_ratio);
                        pass &= c.pass;
                    }
                }
                Err(_) => pass = false,
            }
        }
    }
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(0.0, f64::max);
    Outcome {
        pass,
        detail: format!("{} points, max residual {worst:.1e}, halving ratios in [{lo:.2}, {hi:.2}]", ratios.len()),
    }
}

fn intertwining() -> Outcome {
    let grid = GridParams::default();
    let mut pass = true;
    let mut worst: f64 = 0.0;
    let mut weakest: f64 = f64::INFINITY;
    let mut norms = (f64::INFINITY, 0.0f64);
    let s = a2();
    for k in s.labels() {
        let ks = KernelSpec::new(&s, k, 1.0, KernelConvention::PaperGhat).unwrap();
        match verify_intertwiner(&ks, &grid) {
            Ok(r) => {
                pass &= r.unitarity_pass && r.intertwining_pass;
                for c in &r.intertwining {
                    worst = worst.max(c.residual);
                    weakest = weakest.min(c.control / c.residual.max(1e-300));
                }
                for n in &r.norm_ratios {
                    norms = (norms.0.min(*n), norms.1.max(*n));
                }
            }
            Err(_) => pass = false,
        }
    }
    pass &= norms.0 >= 0.999 && norms.1 <= 1.001;
    Outcome {
        pass,
        detail: format!(
            "max residual {worst:.1e}, min control factor {weakest:.1e}, norm ratios in [{:.6}, {:.6}]",
            norms.0, norms.1
        ),
    }
}

fn adjudication() -> Outcome {
    match adjudicate(&[a2(), b2()], 1.0, &GridParams::default()) {
        Ok(adj) => {
            let mut lines = Vec::new();
            for r in &adj.results {
                for rep in &r.reports {
                    let it = rep.intertwining.iter().map(|c| c.residual).fold(0.0, f64::max);
                    let pde = rep
                        .pde
                        .iter()
                        .map(|c| c.residual_a.max(c.residual_c.unwrap_or(0.0)))
                        .fold(0.0, f64::max);
                    lines.push(format!(
                        "    {} {} k={}: intertwining {it:.2e}, pde {pde:.2e}, pass {}",
                        r.convention, rep.seed, rep.direction, rep.pass
                    ));
                }
            }
            Outcome {
                pass: adj.winner.is_some(),
                detail: format!("winner {:?}\n{}", adj.winner, lines.join("\n")),
            }
        }
        Err(e) => Outcome {
            pass: false,
            detail: e.to_string(),
        },
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 8] = [
        ("seed algebra", Duration::from_secs(1), seed_algebra),
        ("classical tori", Duration::from_secs(5), classical_tori),
        ("quantum torus", Duration::from_secs(30), quantum_torus),
        ("special functions", Duration::from_secs(120), special_functions),
        ("heisenberg grid", Duration::from_secs(60), heisenberg_grid),
        ("kernel pde", Duration::from_secs(60), kernel_pde),
        ("intertwining", Duration::from_secs(120), intertwining),
        ("convention adjudication", Duration::from_secs(240), adjudication),
    ];
    let mut all = true;
    for (n, (name, budget, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = run();
        let el = t.elapsed();
        let pass = out.pass && el <= *budget;
        all &= pass;
        println!(
            "{} {}. {name} ({:.2}s, budget {}s): {}",
            if pass { "PASS" } else { "FAIL" },
            n + 1,
            el.as_secs_f64(),
            budget.as_secs(),
            out.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
