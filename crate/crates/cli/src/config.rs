//! JSON run configuration and the small literal grammars used on top of it.
//!
//! Complex numbers are two-element arrays [re, im]; Φ is a per-axis array of
//! two such pairs. Parsing is strict: unknown keys are rejected. Initial
//! states use the literal syntax `site:(c₁,…,c₂ₙ)` with complex entries
//! like `0.5`, `-i` or `1+2i`; several such terms may be joined with `;`.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sswalk::{Complex64, Sign, WalkParameters};

use crate::CliError;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsConfig {
    pub n: usize,
    pub p: Vec<f64>,
    pub q: Vec<[f64; 2]>,
    pub phi: Vec<[[f64; 2]; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub params: ParamsConfig,
    /// Torus period for `spectrum` (default 400).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus: Option<i64>,
    /// Steps for `evolve` (default 100) and the Cesàro horizon for
    /// `measure` (default 4000).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    /// "+" or "-" (default "+").
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<String>,
    /// Clip serialized sites of `evolve` to |xⱼ| ≤ radius.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<i64>,
    /// Site range "A..B" for `measure` (default "-20..20").
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sites: Option<String>,
    /// Probe point for `probe`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    /// Divergence-probe refinement levels (default 4).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<usize>,
    /// Near-±1 exclusion tolerance for `spectrum` (default 1e-6).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exclusion: Option<f64>,
    /// Anchor list "a,b;a,b;…" for the n ≥ 2 birth family.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchors: Option<String>,
    /// Initial state literal (default "0:(0,1)"-style delta at the origin).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_state: Option<String>,
    /// p grid for `sweep` (default 0.1, 0.2, …, 0.9 on axis 1).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep_p: Option<Vec<f64>>,
    /// Output path (default depends on the command).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn walk_parameters(&self) -> Result<WalkParameters, CliError> {
        let cfg = &self.params;
        if cfg.p.len() != cfg.n || cfg.q.len() != cfg.n || cfg.phi.len() != cfg.n {
            return Err(CliError::Config(format!(
                "params.n = {} but p/q/phi have lengths {}/{}/{}",
                cfg.n,
                cfg.p.len(),
                cfg.q.len(),
                cfg.phi.len()
            )));
        }
        let q = cfg.q.iter().map(|z| Complex64::new(z[0], z[1])).collect();
        let phi = cfg
            .phi
            .iter()
            .map(|pair| {
                [
                    Complex64::new(pair[0][0], pair[0][1]),
                    Complex64::new(pair[1][0], pair[1][1]),
                ]
            })
            .collect();
        WalkParameters::new(cfg.p.clone(), q, phi).map_err(CliError::from)
    }
}

pub fn parse_sign(text: &str) -> Result<Sign, CliError> {
    match text.trim() {
        "+" | "plus" => Ok(Sign::Plus),
        "-" | "minus" => Ok(Sign::Minus),
        other => Err(CliError::Config(format!(
            "sign must be '+' or '-', got {other:?}"
        ))),
    }
}

pub fn parse_sites(text: &str) -> Result<(i64, i64), CliError> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| CliError::Config(format!("site range must look like A..B, got {text:?}")))?;
    let lo: i64 = a
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("bad site bound {a:?}")))?;
    let hi: i64 = b
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("bad site bound {b:?}")))?;
    if lo > hi {
        return Err(CliError::Config(format!("empty site range {text:?}")));
    }
    Ok((lo, hi))
}

pub fn parse_anchors(text: &str) -> Result<Vec<(i64, i64)>, CliError> {
    text.split(';')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            let (a, b) = part.split_once(',').ok_or_else(|| {
                CliError::Config(format!("anchor must look like a,b, got {part:?}"))
            })?;
            let a = a.trim().parse().map_err(|_| {
                CliError::Config(format!("bad anchor coordinate {a:?}"))
            })?;
            let b = b.trim().parse().map_err(|_| {
                CliError::Config(format!("bad anchor coordinate {b:?}"))
            })?;
            Ok((a, b))
        })
        .collect()
}

/// One complex literal: `2`, `-0.5`, `i`, `-i`, `3i`, `1+2i`, `1e-2-3e1i`.
pub fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(CliError::Config("empty complex literal".into()));
    }
    let bad = |_| CliError::Config(format!("bad complex literal {text:?}"));
    if let Some(body) = s.strip_suffix(['i', 'I']) {
        // find the sign splitting re from im (not leading, not an exponent)
        let bytes = body.as_bytes();
        let mut split = None;
        for pos in (1..bytes.len()).rev() {
            let c = bytes[pos] as char;
            if (c == '+' || c == '-') && !matches!(bytes[pos - 1] as char, 'e' | 'E') {
                split = Some(pos);
                break;
            }
        }
        let (re_part, im_part) = match split {
            Some(pos) => (&body[..pos], &body[pos..]),
            None => ("", body),
        };
        let im = match im_part {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => other.parse().map_err(bad)?,
        };
        let re = if re_part.is_empty() {
            0.0
        } else {
            re_part.parse().map_err(bad)?
        };
        Ok(Complex64::new(re, im))
    } else {
        Ok(Complex64::new(s.parse().map_err(bad)?, 0.0))
    }
}

/// `site:(c₁,…,c₂ₙ)` terms joined by `;`, summed into amplitude assignments.
pub fn parse_state_literal(
    text: &str,
    n: usize,
) -> Result<Vec<(Vec<i64>, Vec<Complex64>)>, CliError> {
    let mut terms = Vec::new();
    for part in text.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (site_text, comp_text) = part
            .split_once(':')
            .ok_or_else(|| CliError::Config(format!("state term {part:?} is missing ':'")))?;
        let site: Vec<i64> = site_text
            .split(',')
            .map(|c| {
                c.trim()
                    .parse()
                    .map_err(|_| CliError::Config(format!("bad site coordinate {c:?}")))
            })
            .collect::<Result<_, _>>()?;
        if site.len() != n {
            return Err(CliError::Config(format!(
                "site {site_text:?} has {} coordinates, expected {n}",
                site.len()
            )));
        }
        let inner = comp_text
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| {
                CliError::Config(format!("components {comp_text:?} must be parenthesized"))
            })?;
        let comps: Vec<Complex64> = inner
            .split(',')
            .map(parse_complex)
            .collect::<Result<_, _>>()?;
        if comps.len() != 2 * n {
            return Err(CliError::Config(format!(
                "state term {part:?} has {} components, expected {}",
                comps.len(),
                2 * n
            )));
        }
        terms.push((site, comps));
    }
    if terms.is_empty() {
        return Err(CliError::Config("empty state literal".into()));
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("2.5").unwrap(), Complex64::new(2.5, 0.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("1+2i").unwrap(), Complex64::new(1.0, 2.0));
        assert_eq!(parse_complex("1e-2-3e1i").unwrap(), Complex64::new(0.01, -30.0));
        assert_eq!(parse_complex("4i").unwrap(), Complex64::new(0.0, 4.0));
        assert!(parse_complex("huh").is_err());
    }

    #[test]
    fn state_literals() {
        let terms = parse_state_literal("0:(0,1)", 1).unwrap();
        assert_eq!(terms[0].0, vec![0]);
        assert_eq!(terms[0].1[1], Complex64::new(1.0, 0.0));
        let terms = parse_state_literal("1,-2:(1,0,0,i)", 2).unwrap();
        assert_eq!(terms[0].0, vec![1, -2]);
        assert!(parse_state_literal("0:(1)", 1).is_err());
    }

    #[test]
    fn ranges_and_anchors() {
        assert_eq!(parse_sites("-3..4").unwrap(), (-3, 4));
        assert!(parse_sites("5..1").is_err());
        assert_eq!(parse_anchors("0,0;1,2").unwrap(), vec![(0, 0), (1, 2)]);
    }
}
