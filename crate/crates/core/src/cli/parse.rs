//! Value syntax for command-line parameters: `a+bi` complex numbers,
//! inclusive `a..b` ranges and comma-separated lists.

use num_complex::Complex64;

/// A malformed parameter; the CLI reports it with exit status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn bad(name: &str, raw: &str, why: &str) -> UsageError {
    UsageError(format!("invalid value '{raw}' for --{name}: {why}"))
}

fn real(name: &str, s: &str) -> Result<f64, UsageError> {
    let v: f64 = s.trim().parse().map_err(|_| bad(name, s, "expected a real number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad(name, s, "value must be finite"))
    }
}

/// `a+bi`, `a-bi`, `bi`, `i`, `-i` or a plain real; no whitespace.
pub fn parse_complex(name: &str, s: &str) -> Result<Complex64, UsageError> {
    if s.is_empty() || s.chars().any(char::is_whitespace) {
        return Err(bad(name, s, "expected a+bi without whitespace"));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(real(name, s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => real(name, t).map_err(|_| bad(name, s, "expected a+bi"))?,
    };
    let re = if re.is_empty() {
        0.0
    } else {
        real(name, re).map_err(|_| bad(name, s, "expected a+bi"))?
    };
    Ok(Complex64::new(re, im))
}

fn split_list<'a>(name: &str, s: &'a str) -> Result<Vec<&'a str>, UsageError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.iter().any(|p| p.trim().is_empty()) {
        return Err(bad(name, s, "empty list element"));
    }
    Ok(parts)
}

/// Nonnegative integers: `n`, `a..b` (inclusive) or `a,b,c`.
pub fn parse_indices(name: &str, s: &str) -> Result<Vec<usize>, UsageError> {
    let idx = |t: &str| -> Result<usize, UsageError> {
        t.trim().parse().map_err(|_| bad(name, s, "expected a nonnegative integer"))
    };
    let mut out = Vec::new();
    for part in split_list(name, s)? {
        if let Some((a, b)) = part.split_once("..") {
            out.extend(idx(a)?..=idx(b)?);
        } else {
            out.push(idx(part)?);
        }
    }
    Ok(out)
}

/// Reals: `x`, `a..b` (unit steps from `a`, inclusive of `b`) or `a,b,c`.
pub fn parse_reals(name: &str, s: &str) -> Result<Vec<f64>, UsageError> {
    let mut out = Vec::new();
    for part in split_list(name, s)? {
        match part.split_once("..") {
            Some((a, b)) if !a.is_empty() => {
                let (a, b) = (real(name, a)?, real(name, b)?);
                let steps = (b - a).floor();
                if steps >= 0.0 {
                    if steps > 1e6 {
                        return Err(bad(name, s, "range too long"));
                    }
                    out.extend((0..=steps as usize).map(|k| a + k as f64));
                }
            }
            _ => out.push(real(name, part)?),
        }
    }
    Ok(out)
}

pub fn parse_complexes(name: &str, s: &str) -> Result<Vec<Complex64>, UsageError> {
    split_list(name, s)?.into_iter().map(|p| parse_complex(name, p.trim())).collect()
}
