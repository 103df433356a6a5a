//! Sign-of-return words and their Shannon entropy.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Grid indices `round(k tau / dt)` for `k = 0, 1, ...` inside `0..n`.
fn sample_indices(n: usize, tau: f64, dt: f64) -> Vec<usize> {
    let ratio = tau / dt;
    (0u64..)
        .map(|k| (k as f64 * ratio).round() as usize)
        .take_while(|&i| i < n)
        .collect()
}

fn check_sampling(series: &[f64], tau: f64, dt: f64) -> Result<()> {
    if dt.is_nan() || dt <= 0.0 || tau.is_nan() || tau < dt {
        return Err(Error::domain(format!(
            "return lag {tau} must be at least the sampling step {dt}"
        )));
    }
    if let Some(x) = series.iter().find(|&&x| !(x > 0.0 && x.is_finite())) {
        return Err(Error::domain(format!(
            "returns need positive values, found {x}"
        )));
    }
    Ok(())
}

/// `log10(Y((k+1) tau) / Y(k tau))`, sampling at the nearest grid point.
pub fn log_returns(series: &[f64], tau: f64, dt: f64) -> Result<Vec<f64>> {
    check_sampling(series, tau, dt)?;
    let idx = sample_indices(series.len(), tau, dt);
    Ok(idx
        .windows(2)
        .map(|w| series[w[1]].log10() - series[w[0]].log10())
        .collect())
}

/// Signs of the log returns as `-1`/`+1`. A zero return counts as `+1`.
pub fn sign_returns(series: &[f64], tau: f64, dt: f64) -> Result<Vec<i8>> {
    check_sampling(series, tau, dt)?;
    let idx = sample_indices(series.len(), tau, dt);
    // log10 is monotone, so the sign of the ratio equals the sign of the
    // difference; comparing directly avoids rounding near 1.
    Ok(idx
        .windows(2)
        .map(|w| if series[w[1]] < series[w[0]] { -1 } else { 1 })
        .collect())
}

/// Empirical entropy in bits of the length-`k` words starting at positions
/// `0..starts`.
fn word_entropy(signs: &[i8], k: usize, starts: usize) -> f64 {
    if k > 64 {
        let mut words: HashMap<&[i8], u64> = HashMap::new();
        for i in 0..starts {
            *words.entry(&signs[i..i + k]).or_insert(0) += 1;
        }
        return entropy_from_counts(words.into_values(), starts);
    }
    // words packed into the low k bits, most recent sign lowest
    let code = |s: i8| u64::from(s > 0);
    let mask = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let mut word = signs[..k - 1].iter().fold(0u64, |w, &s| (w << 1) | code(s));
    let mut next_word = |i: usize| {
        word = ((word << 1) | code(signs[i + k - 1])) & mask;
        word
    };
    if k <= 20 {
        let mut counts = vec![0u64; 1 << k];
        for i in 0..starts {
            counts[next_word(i) as usize] += 1;
        }
        entropy_from_counts(counts.into_iter(), starts)
    } else {
        let mut counts: HashMap<u64, u64> = HashMap::new();
        for i in 0..starts {
            *counts.entry(next_word(i)).or_insert(0) += 1;
        }
        entropy_from_counts(counts.into_values(), starts)
    }
}

fn entropy_from_counts(counts: impl Iterator<Item = u64>, total: usize) -> f64 {
    let m = total as f64;
    let h = counts
        .filter(|&c| c > 0)
        .map(|c| {
            let p = c as f64 / m;
            -p * p.log2()
        })
        .sum::<f64>();
    h.max(0.0)
}

/// `H_K = -sum_x p_x log2 p_x` over the words `x` of length `k` occurring in
/// `signs`, with `p_x` the fraction of the `n - k + 1` overlapping windows.
pub fn combinatorial_entropy(signs: &[i8], k: usize) -> Result<f64> {
    if k == 0 || k > signs.len() {
        return Err(Error::domain(format!(
            "word length {k} must be between 1 and the sequence length {}",
            signs.len()
        )));
    }
    Ok(word_entropy(signs, k, signs.len() - k + 1))
}

/// `H_1 ..= H_kmax`, all counted over the same `n - kmax + 1` start
/// positions. Each shorter word distribution is then a marginal of the
/// longer one, so the table is non-decreasing in `K`.
pub fn entropy_table(signs: &[i8], kmax: usize) -> Result<Vec<f64>> {
    if kmax == 0 || kmax > signs.len() {
        return Err(Error::domain(format!(
            "word length {kmax} must be between 1 and the sequence length {}",
            signs.len()
        )));
    }
    let starts = signs.len() - kmax + 1;
    Ok((1..=kmax).map(|k| word_entropy(signs, k, starts)).collect())
}
