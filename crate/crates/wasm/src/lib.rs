//! Browser bindings: each export takes plain arguments and returns a JSON
//! string, so the page needs no generated glue beyond the entry points.

use lyndon_core::stats::{exact_r_distribution, montecarlo_r, LimitLaw, MonteCarloConfig};
use lyndon_core::{factorization_tree, standard_right_factor, Alphabet, Error, Word};
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest length the page may enumerate exactly.
pub const MAX_EXACT_N: usize = 24;
/// Keeps one Monte Carlo call under a few seconds in the browser.
pub const MAX_DRAW_LETTERS: usize = 50_000_000;
const HISTOGRAM_BINS: usize = 40;

/// Standard factorization tree of a Lyndon word, with its right factor.
pub fn tree_value(word: &str, q: Option<usize>) -> Result<Value, Error> {
    let w = Word::parse(word.trim(), q)?;
    let tree = factorization_tree(&w)?;
    let f = standard_right_factor(&w)?;
    Ok(json!({
        "word": w,
        "q": w.alphabet().size(),
        "u": f.u,
        "v": f.v,
        "R": f.r_len,
        "r": f.ratio(),
        "height": tree.height(),
        "tree": tree,
    }))
}

/// Exact law of `R / n` over all Lyndon words of length `n` next to the
/// limit law, as step functions on the common support.
pub fn exact_value(n: usize, q: usize) -> Result<Value, Error> {
    if n > MAX_EXACT_N {
        return Err(Error::InvalidArgument(format!(
            "exact distribution is limited to n <= {MAX_EXACT_N} here"
        )));
    }
    let d = exact_r_distribution(n, Alphabet::new(q)?)?;
    let law = LimitLaw::new(q);
    let mut cdf = 0.0;
    let points: Vec<Value> = d
        .support
        .iter()
        .map(|(r, p)| {
            let p = p.to_f64().unwrap_or(f64::NAN);
            cdf += p;
            let x = *r as f64 / n as f64;
            json!({ "R": r, "x": x, "p": p, "cdf": cdf, "limit_cdf": law.cdf(x) })
        })
        .collect();
    Ok(json!({
        "n": n,
        "q": q,
        "lyndon_count": d.lyndon_count,
        "atom": d.atom().to_string(),
        "atom_value": d.atom().to_f64(),
        "limit_atom": law.atom(),
        "mean": d.mean().to_f64(),
        "limit_mean": law.moment(1),
        "points": points,
    }))
}

/// Monte Carlo histogram of `r_n` below 1, the atom frequency and the
/// distribution of `d_n` over good words.
pub fn montecarlo_value(n: usize, q: usize, samples: usize, seed: u64) -> Result<Value, Error> {
    if n.saturating_mul(samples) > MAX_DRAW_LETTERS {
        return Err(Error::InvalidArgument(format!(
            "n * samples must stay below {MAX_DRAW_LETTERS} in the browser"
        )));
    }
    let report = montecarlo_r(&MonteCarloConfig::new(n, q, samples, seed).record_samples(true))?;
    let mut r_hist = vec![0usize; HISTOGRAM_BINS];
    let mut d_hist = vec![0usize; HISTOGRAM_BINS];
    let bin = |x: f64| ((x * HISTOGRAM_BINS as f64) as usize).min(HISTOGRAM_BINS - 1);
    for s in &report.records {
        if !s.is_atom {
            r_hist[bin(s.r)] += 1;
        }
        if let Some(d) = s.d_n {
            d_hist[bin(d)] += 1;
        }
    }
    Ok(json!({
        "n": n,
        "q": q,
        "samples": report.sample_count,
        "seed": seed,
        "generator": report.generator,
        "bins": HISTOGRAM_BINS,
        "r_histogram": r_hist,
        "dn_histogram": d_hist,
        "atom_freq": report.atom_freq,
        "limit_atom": report.limit_atom,
        "ks_continuous": report.ks_continuous,
        "good_fraction": report.good_fraction,
        "dn_count": report.dn_count,
        "dn_ks": report.dn_ks,
        "mean": report.moments[0],
        "limit_mean": report.limit_moments[0],
    }))
}

fn to_js(r: Result<Value, Error>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e.to_string()))
}

/// `q = 0` infers the alphabet from the word.
#[wasm_bindgen]
pub fn factor_tree(word: &str, q: usize) -> Result<String, JsError> {
    to_js(tree_value(word, (q > 0).then_some(q)))
}

#[wasm_bindgen]
pub fn exact_distribution(n: usize, q: usize) -> Result<String, JsError> {
    to_js(exact_value(n, q))
}

#[wasm_bindgen]
pub fn monte_carlo(n: usize, q: usize, samples: usize, seed: u64) -> Result<String, JsError> {
    to_js(montecarlo_value(n, q, samples, seed))
}
