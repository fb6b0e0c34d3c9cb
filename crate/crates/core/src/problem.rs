//! Line-oriented problem files.
//!
//! ```text
//! # comment
//! p = 3
//! vars = x, y, z, w
//! order = grevlex
//! e = 1
//! u = (x^2 - y*z)^2 * w^2 * x * (x+1)
//! I = x^2 - y*z
//! mode = auto
//! ```
//!
//! `I` and `J` may repeat, one generator per line. `p` and `vars` are always
//! required; `order` defaults to grevlex and `I` to the zero ideal.

use crate::algorithm::{CompatProblem, Mode};
use crate::error::{Error, Result};
use crate::frobenius::{require_compatible, PhiMap};
use crate::groebner::Ideal;
use crate::parse::parse_polynomial_at;
use crate::poly::Polynomial;
use crate::ring::{MonomialOrder, Ring, RingDescriptor};

/// A parsed file, before the compatibility check.
#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub ring: Ring,
    pub e: Option<u32>,
    pub u: Option<Polynomial>,
    pub ideal: Ideal,
    pub j: Option<Ideal>,
    pub mode: Option<Mode>,
}

struct Line<'a> {
    no: usize,
    key: &'a str,
    value: &'a str,
    /// 1-based column where `value` starts.
    col: usize,
}

fn split_lines(text: &str) -> Result<Vec<Line<'_>>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let no = idx + 1;
        let body = raw.split('#').next().unwrap();
        if body.trim().is_empty() {
            continue;
        }
        let Some(eq) = body.find('=') else {
            let col = body.len() - body.trim_start().len() + 1;
            return Err(Error::Parse {
                line: no,
                column: col,
                message: "expected `key = value`".into(),
            });
        };
        let key = body[..eq].trim();
        let value_raw = &body[eq + 1..];
        let lead = value_raw.len() - value_raw.trim_start().len();
        let col = body[..eq + 1 + lead].chars().count() + 1;
        out.push(Line {
            no,
            key,
            value: value_raw.trim(),
            col,
        });
    }
    Ok(out)
}

fn parse_int<T: std::str::FromStr>(line: &Line) -> Result<T> {
    line.value.parse().map_err(|_| Error::Parse {
        line: line.no,
        column: line.col,
        message: format!("`{}` expects an integer, found `{}`", line.key, line.value),
    })
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<ProblemFile> {
        let lines = split_lines(text)?;
        let mut p: Option<u64> = None;
        let mut vars: Option<Vec<String>> = None;
        let mut order = MonomialOrder::GrevLex;
        let mut e: Option<u32> = None;
        let mut mode: Option<Mode> = None;
        let mut deferred: Vec<&Line> = Vec::new();
        let mut seen: Vec<&str> = Vec::new();
        for line in &lines {
            if !matches!(line.key, "I" | "J") {
                if seen.contains(&line.key) {
                    return Err(Error::Parse {
                        line: line.no,
                        column: 1,
                        message: format!("duplicate key `{}`", line.key),
                    });
                }
                seen.push(line.key);
            }
            match line.key {
                "p" => p = Some(parse_int(line)?),
                "e" => e = Some(parse_int(line)?),
                "vars" => {
                    vars = Some(
                        line.value
                            .split(',')
                            .map(|v| v.trim().to_string())
                            .collect(),
                    );
                }
                "order" => {
                    order = match line.value {
                        "lex" => MonomialOrder::Lex,
                        "grevlex" => MonomialOrder::GrevLex,
                        other => {
                            return Err(Error::Parse {
                                line: line.no,
                                column: line.col,
                                message: format!("unknown order `{other}`"),
                            })
                        }
                    }
                }
                "mode" => {
                    mode = Some(Mode::parse(line.value).ok_or_else(|| Error::Parse {
                        line: line.no,
                        column: line.col,
                        message: format!("unknown mode `{}`", line.value),
                    })?)
                }
                "u" | "I" | "J" => deferred.push(line),
                other => {
                    return Err(Error::Parse {
                        line: line.no,
                        column: 1,
                        message: format!("unknown key `{other}`"),
                    })
                }
            }
        }
        let p = p.ok_or_else(|| Error::MissingKey("p".into()))?;
        let vars = vars.ok_or_else(|| Error::MissingKey("vars".into()))?;
        let ring = RingDescriptor::new(p, vars, order)?;
        let mut u = None;
        let mut igens = Vec::new();
        let mut jgens = Vec::new();
        for line in deferred {
            let f = parse_polynomial_at(&ring, line.value, line.no, line.col)?;
            match line.key {
                "u" => u = Some(f),
                "I" => igens.push(f),
                _ => jgens.push(f),
            }
        }
        Ok(ProblemFile {
            ideal: Ideal::new(&ring, igens),
            j: (!jgens.is_empty()).then(|| Ideal::new(&ring, jgens)),
            ring,
            e,
            u,
            mode,
        })
    }

    /// `φ`, with `e` optionally overridden.
    pub fn phi(&self, e: Option<u32>) -> Result<PhiMap> {
        let e = e.or(self.e).ok_or_else(|| Error::MissingKey("e".into()))?;
        let u = self
            .u
            .clone()
            .ok_or_else(|| Error::MissingKey("u".into()))?;
        PhiMap::new(u, e)
    }

    /// The validated problem: `u ∈ (I^{[q]} : I)` is checked here.
    pub fn compat_problem(&self, e: Option<u32>) -> Result<CompatProblem> {
        let phi = self.phi(e)?;
        require_compatible(&phi, &self.ideal)?;
        let mut problem = CompatProblem::new(phi, self.ideal.clone());
        problem.mode = self.mode.unwrap_or_default();
        problem.j_override = self.j.clone();
        Ok(problem)
    }
}

/// Parse and validate in one step.
pub fn parse_problem(text: &str) -> Result<CompatProblem> {
    ProblemFile::parse(text)?.compat_problem(None)
}
