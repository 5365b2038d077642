//! Reference formulas the measured quantities are compared against.
//! `ln` is natural; `log_b` with `b = 1/(1-p)` is spelled out.

use super::Theorem;
use crate::error::{Error, Result};

fn undefined(what: &str, n: usize, r: f64, p: f64) -> Error {
    Error::UndefinedFormula(format!("{what} at n={n}, r={r}, p={p}"))
}

/// `log_{1/(1-p)} x`.
fn log_base_inv_complement(x: f64, p: f64) -> f64 {
    x.ln() / -(1.0 - p).ln()
}

/// Formula value for `theorem` at `(n, r, p)`:
///
/// * clique: `2 ln((1-p) n r²) / (1-p)`, needs `(1-p) n r² > 1`;
/// * independence: `r⁻² log_{1/(1-p)}(n r²)`;
/// * chromatic: `n r² / log_{1/(1-p)}(n r²)`, both need `0 < p < 1` and `n r² > 1`;
/// * diameter: `1/r + ln n / ln(n r² p)`, needs `n r² p > 1`.
pub fn formula_value(theorem: Theorem, n: usize, r: f64, p: f64) -> Result<f64> {
    let nf = n as f64;
    let nr2 = nf * r * r;
    match theorem {
        Theorem::Clique => {
            let x = (1.0 - p) * nr2;
            if p >= 1.0 || x <= 1.0 {
                return Err(undefined("clique formula needs (1-p)nr^2 > 1", n, r, p));
            }
            Ok(2.0 * x.ln() / (1.0 - p))
        }
        Theorem::Alpha | Theorem::Chi => {
            if !(p > 0.0 && p < 1.0) || nr2 <= 1.0 {
                return Err(undefined("log base 1/(1-p) of nr^2 needs 0<p<1 and nr^2>1", n, r, p));
            }
            let l = log_base_inv_complement(nr2, p);
            Ok(if theorem == Theorem::Alpha {
                l / (r * r)
            } else {
                nr2 / l
            })
        }
        Theorem::Diam => {
            let x = nr2 * p;
            if x <= 1.0 || n < 2 {
                return Err(undefined("diameter formula needs nr^2p > 1", n, r, p));
            }
            Ok(1.0 / r + nf.ln() / x.ln())
        }
        other => Err(Error::UndefinedFormula(format!(
            "no reference formula for {}",
            other.tag()
        ))),
    }
}

/// `measured / formula_value(theorem, n, r, p)`.
pub fn formula_ratio(theorem: Theorem, n: usize, r: f64, p: f64, measured: f64) -> Result<f64> {
    Ok(measured / formula_value(theorem, n, r, p)?)
}

/// Why the clique theorem's own regime `1 - p <= ln⁻³ n` cannot be run at
/// this `(n, r)`: the clique sizes it predicts.
pub fn literal_clique_regime(n: usize, r: f64) -> String {
    let ln = (n as f64).ln();
    let gap = ln.powi(-3);
    let p = 1.0 - gap;
    match formula_value(Theorem::Clique, n, r, p) {
        Ok(w) if w <= 1000.0 => format!(
            "clique regime 1-p <= ln^-3 n = {gap:.3e} is attainable here: predicted clique {w:.0}"
        ),
        Ok(w) => format!(
            "UNATTAINABLE: clique regime 1-p <= ln^-3 n = {gap:.3e} predicts cliques of size {w:.0} > 1000; running a relaxed regime"
        ),
        Err(_) => format!(
            "UNATTAINABLE: clique regime 1-p <= ln^-3 n = {gap:.3e} needs (1-p)nr^2 > 1, i.e. nr^2 > ln^3 n = {:.0}; running a relaxed regime",
            ln.powi(3)
        ),
    }
}
