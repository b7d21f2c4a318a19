use std::fs;
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use bgft::sampling::{gaussian_coefficients, seeded_rng};
use bgft::C64;

use crate::config::ExperimentConfig;

pub fn parse(text: &str) -> Result<Vec<C64>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [re, im] = fields[..] else {
            return Err(anyhow!("line {}: expected `re im`, got {line:?}", i + 1));
        };
        let parse = |s: &str| s.parse::<f64>().map_err(|_| anyhow!("line {}: bad number {s:?}", i + 1));
        out.push(C64::new(parse(re)?, parse(im)?));
    }
    Ok(out)
}

pub fn load(path: &Path) -> Result<Vec<C64>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading signal {}", path.display()))?;
    parse(&text).with_context(|| format!("parsing signal {}", path.display()))
}

pub fn render(x: &[C64]) -> String {
    x.iter().map(|z| format!("{:e} {:e}\n", z.re, z.im)).collect()
}

/// The signal file if given, else `n` seeded standard complex normal entries.
pub fn input(path: Option<&Path>, cfg: &ExperimentConfig) -> Result<Vec<C64>> {
    match path {
        Some(p) => load(p),
        None => {
            let n = cfg.build_graph()?.n();
            Ok(gaussian_coefficients(n, &mut seeded_rng(cfg.seed)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let x = vec![C64::new(0.1, -2.5e-300), C64::new(1.0 / 3.0, 0.0)];
        assert_eq!(parse(&render(&x)).unwrap(), x);
    }

    #[test]
    fn reports_bad_lines() {
        let err = parse("1 2\n# note\n3\n").unwrap_err().to_string();
        assert!(err.contains("line 3"), "{err}");
    }
}
