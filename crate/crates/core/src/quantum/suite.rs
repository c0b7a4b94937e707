//! Named verification suites over a list of seeds.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;

use super::bimodule::check_bimodule;
use super::duality::{check_duality_preserves_relations, duality_mutation_cases, DualityKind};
use super::mutation::{check_mutation_preserves_relations, check_quantum_involution, QuantumMutation};
use crate::error::{Error, Result};
use crate::sample::random_seed;
use crate::seed::Seed;
use crate::symbolic::tori::mutate_x_map_at;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Duality,
    Involution,
    Bimodule,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "duality" => Ok(Suite::Duality),
            "involution" => Ok(Suite::Involution),
            "bimodule" => Ok(Suite::Bimodule),
            _ => Err(Error::Parse(format!("unknown suite {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub name: String,
    pub pass: bool,
}

impl fmt::Display for CaseResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.pass { "PASS" } else { "FAIL" }, self.name)
    }
}

/// Fixed small seeds followed by `random` seeds of rank 1 to 3.
pub fn suite_seeds<R: Rng + ?Sized>(rng: &mut R, random: usize) -> Vec<Seed> {
    let mut out = vec![
        Seed::from_matrix(vec![vec![0]], vec![1]).unwrap(),
        Seed::from_matrix(vec![vec![0, 1], vec![-1, 0]], vec![1, 1]).unwrap(),
        Seed::from_matrix(vec![vec![0, 2], vec![-1, 0]], vec![1, 2]).unwrap(),
        Seed::from_matrix(vec![vec![0, 1, -1], vec![-1, 0, 2], vec![1, -2, 0]], vec![1, 1, 1])
            .unwrap(),
    ];
    for i in 0..random {
        out.push(random_seed(rng, 1 + i % 3, 2));
    }
    out
}

fn ok(r: Result<bool>) -> bool {
    r.unwrap_or(false)
}

fn seed_cases(suite: Suite, idx: usize, s: &Seed) -> Vec<CaseResult> {
    let mut out = Vec::new();
    let tag = format!("seed#{idx} eps={:?}", s.epsilon());
    match suite {
        Suite::Involution => {
            for (k, label) in s.labels().iter().enumerate() {
                out.push(CaseResult {
                    name: format!("{tag} k={label} involution"),
                    pass: ok(check_quantum_involution(s, label)),
                });
                out.push(CaseResult {
                    name: format!("{tag} k={label} relations"),
                    pass: ok(check_mutation_preserves_relations(s, label)),
                });
                let m = QuantumMutation::new(s, k);
                let classical = mutate_x_map_at(s, k);
                out.push(CaseResult {
                    name: format!("{tag} k={label} classical-limit"),
                    pass: m
                        .images
                        .iter()
                        .zip(&classical.images)
                        .all(|(q, c)| q.at_q_one() == *c),
                });
            }
        }
        Suite::Duality => {
            for kind in DualityKind::ALL {
                out.push(CaseResult {
                    name: format!("{tag} {kind} relations"),
                    pass: ok(check_duality_preserves_relations(kind, s)),
                });
                for label in s.labels() {
                    match duality_mutation_cases(kind, s, label) {
                        Ok(cases) => {
                            for c in cases {
                                out.push(CaseResult {
                                    name: format!(
                                        "{tag} {kind} k={label} i={} sgn={}",
                                        c.generator, c.sign
                                    ),
                                    pass: c.pass,
                                });
                            }
                        }
                        Err(e) => out.push(CaseResult {
                            name: format!("{tag} {kind} k={label} error: {e}"),
                            pass: false,
                        }),
                    }
                }
            }
        }
        Suite::Bimodule => {
            let r = check_bimodule(s, 3);
            for (what, pass) in [
                ("left-homomorphism", r.left_homomorphism),
                ("right-antihomomorphism", r.right_antihomomorphism),
                ("actions-commute", r.actions_commute),
                ("shifts-commute", r.shifts_commute),
            ] {
                out.push(CaseResult {
                    name: format!("{tag} {what} ({} cases)", r.cases),
                    pass,
                });
            }
        }
    }
    out
}

pub fn run_suite(suite: Suite, seeds: &[Seed]) -> Vec<CaseResult> {
    seeds
        .par_iter()
        .enumerate()
        .map(|(i, s)| seed_cases(suite, i, s))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}
