//! JSON seed files: `{"schema": 1, "labels": [...], "epsilon": [[...]], "d": [...]}`.
//!
//! `schema` is optional on input. Integral multipliers are written as
//! numbers, rational ones (Langlands duals before normalization) as `"p/q"`.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed::{Label, Seed};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum Multiplier {
    Int(i64),
    Ratio(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SeedFile {
    #[serde(default = "default_schema")]
    schema: u32,
    labels: Vec<Label>,
    epsilon: Vec<Vec<i64>>,
    d: Vec<Multiplier>,
}

fn default_schema() -> u32 {
    SCHEMA_VERSION
}

fn parse_multiplier(m: &Multiplier) -> Result<Rational64> {
    match m {
        Multiplier::Int(n) => Ok(Rational64::from_integer(*n)),
        Multiplier::Ratio(s) => {
            let (p, q) = match s.split_once('/') {
                Some((p, q)) => (p.trim(), q.trim()),
                None => (s.trim(), "1"),
            };
            let p: i64 = p.parse().map_err(|_| Error::Parse(format!("bad multiplier {s:?}")))?;
            let q: i64 = q.parse().map_err(|_| Error::Parse(format!("bad multiplier {s:?}")))?;
            if q == 0 {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational64::new(p, q))
        }
    }
}

pub fn seed_from_json(text: &str) -> Result<Seed> {
    let file: SeedFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("seed JSON: {e}")))?;
    if file.schema != SCHEMA_VERSION {
        return Err(Error::Parse(format!("unsupported schema {}", file.schema)));
    }
    let d = file.d.iter().map(parse_multiplier).collect::<Result<Vec<_>>>()?;
    Seed::with_rational_d(file.labels, file.epsilon, d)
}

/// Canonical compact-array JSON form used for golden files.
pub fn seed_to_json(seed: &Seed) -> String {
    let d = seed
        .d()
        .iter()
        .map(|x| {
            if x.is_integer() {
                Multiplier::Int(x.to_integer())
            } else {
                Multiplier::Ratio(format!("{}/{}", x.numer(), x.denom()))
            }
        })
        .collect::<Vec<_>>();
    let file = SeedFile {
        schema: SCHEMA_VERSION,
        labels: seed.labels().to_vec(),
        epsilon: seed.epsilon().to_vec(),
        d,
    };
    let rows: Vec<String> = file
        .epsilon
        .iter()
        .map(|r| serde_json::to_string(r).expect("integer rows serialize"))
        .collect();
    format!(
        "{{\n  \"schema\": {},\n  \"labels\": {},\n  \"epsilon\": [{}],\n  \"d\": {}\n}}\n",
        file.schema,
        serde_json::to_string(&file.labels).expect("labels serialize"),
        rows.join(", "),
        serde_json::to_string(&file.d).expect("multipliers serialize"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_minimal_file() {
        let s = seed_from_json(r#"{"labels":[1,2],"epsilon":[[0,1],[-1,0]],"d":[1,1]}"#).unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(s.labels()[0], Label::Int(1));
    }

    #[test]
    fn canonical_round_trip() {
        let s = Seed::from_matrix(vec![vec![0, 2], vec![-1, 0]], vec![1, 2]).unwrap();
        let text = seed_to_json(&s);
        assert_eq!(seed_from_json(&text).unwrap(), s);
        let l = s.langlands_dual().unwrap();
        let text = seed_to_json(&l);
        assert!(text.contains("\"1/2\""));
        assert_eq!(seed_from_json(&text).unwrap(), l);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(seed_from_json("{}").is_err());
        assert!(seed_from_json(r#"{"labels":[1,2],"epsilon":[[0,1],[1,0]],"d":[1,1]}"#).is_err());
        assert!(seed_from_json(r#"{"schema":7,"labels":[1],"epsilon":[[0]],"d":[1]}"#).is_err());
    }
}
