use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::special::ln_gamma;

/// Nodes and weights of the n-point rule for ∫_0^∞ t^γ e^{-t} g(t) dt.
#[derive(Clone, Debug)]
pub struct LaguerreRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub gamma: f64,
}

type Cache = Mutex<HashMap<(usize, u64), Arc<LaguerreRule>>>;

/// The rule for (n, γ); built once and shared.
pub fn laguerre_rule(n: usize, gamma: f64) -> Result<Arc<LaguerreRule>> {
    static RULES: OnceLock<Cache> = OnceLock::new();
    if !(1..=512).contains(&n) {
        return Err(Error::domain(format!(
            "Laguerre rule size must be in 1..=512, got {n}"
        )));
    }
    if !(gamma > -1.0) || !gamma.is_finite() {
        return Err(Error::domain(format!(
            "Laguerre exponent must be > -1, got {gamma}"
        )));
    }
    let key = (n, gamma.to_bits());
    let cache = RULES.get_or_init(Default::default);
    if let Some(rule) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return Ok(Arc::clone(rule));
    }
    let rule = Arc::new(build(n, gamma)?);
    let mut map = cache.lock().unwrap_or_else(|e| e.into_inner());
    Ok(Arc::clone(map.entry(key).or_insert(rule)))
}

/// L_n^{(γ)}(z) and L_{n-1}^{(γ)}(z) by the three-term recurrence, up to a
/// common positive factor; the pair is rescaled when it nears overflow.
fn laguerre(n: usize, gamma: f64, z: f64) -> (f64, f64) {
    let mut p1 = 1.0;
    let mut p2 = 0.0;
    for j in 1..=n {
        let jf = j as f64;
        let p3 = p2;
        p2 = p1;
        p1 = ((2.0 * jf - 1.0 + gamma - z) * p2 - (jf - 1.0 + gamma) * p3) / jf;
        if p1.abs() > 1e250 {
            p1 *= 1e-250;
            p2 *= 1e-250;
        }
    }
    (p1, p2)
}

fn newton_step(n: usize, gamma: f64, z: f64) -> f64 {
    let (p1, p2) = laguerre(n, gamma, z);
    let nf = n as f64;
    p1 / ((nf * p1 - (nf + gamma) * p2) / z)
}

/// 1 / Σ_{k<n} L_k(z)² / h_k with h_k = Γ(k+γ+1)/k!. Unlike the
/// derivative formula this is insensitive to rounding in the node.
fn christoffel(n: usize, gamma: f64, z: f64, h0: f64) -> f64 {
    let mut p1 = 1.0;
    let mut p2 = 0.0;
    let mut h = h0;
    let mut sum = 1.0 / h0;
    for j in 1..n {
        let jf = j as f64;
        let p3 = p2;
        p2 = p1;
        p1 = ((2.0 * jf - 1.0 + gamma - z) * p2 - (jf - 1.0 + gamma) * p3) / jf;
        h *= (jf + gamma) / jf;
        sum += p1 * p1 / h;
        if sum == f64::INFINITY {
            // e^{-z} is below the smallest subnormal this far out
            return 0.0;
        }
    }
    1.0 / sum
}

fn build(n: usize, gamma: f64) -> Result<LaguerreRule> {
    let nf = n as f64;
    let h0 = ln_gamma(gamma + 1.0)?.exp();
    let mut nodes: Vec<f64> = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let mut z = 0.0;
    for i in 0..n {
        // Initial guesses after Stroud and Secrest.
        z = match i {
            0 => (1.0 + gamma) * (3.0 + 0.92 * gamma) / (1.0 + 2.4 * nf + 1.8 * gamma),
            1 => z + (15.0 + 6.25 * gamma) / (1.0 + 0.9 * gamma + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + ((1.0 + 2.55 * ai) / (1.9 * ai) + 1.26 * ai * gamma / (1.0 + 3.5 * ai))
                    * (z - nodes[i - 2])
                    / (1.0 + 0.3 * gamma)
            }
        };
        // Newton to a loose tolerance, then two polishing steps since the
        // update stalls at rounding level for the large nodes.
        let mut polish = None;
        for _ in 0..100 {
            let step = newton_step(n, gamma, z);
            z -= step;
            if step.abs() <= 1e-11 * z.abs() {
                polish = Some(2);
                break;
            }
        }
        if let Some(k) = polish {
            for _ in 0..k {
                z -= newton_step(n, gamma, z);
            }
        }
        if polish.is_none() || !z.is_finite() || (i > 0 && z <= nodes[i - 1]) {
            return Err(Error::Convergence {
                what: "Gauss-Laguerre nodes",
                terms: n,
            });
        }
        nodes.push(z);
        weights.push(christoffel(n, gamma, z, h0));
    }
    // pin the zeroth moment; removes the accumulated rounding in the weights
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w *= h0 / total;
    }
    Ok(LaguerreRule {
        nodes,
        weights,
        gamma,
    })
}
