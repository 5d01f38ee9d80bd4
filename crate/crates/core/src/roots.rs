//! Roots of polynomials inside ℚ(ζ_N).
//!
//! Candidates are located numerically at every embedding, assembled into
//! power-basis coordinates, rounded to nearby rationals and then accepted only
//! after exact substitution. A root that is missed numerically is therefore
//! reported as absent, never invented.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::field::{euler_phi, poly_eval, FieldElement};

const MAX_DENOMINATOR: i64 = 1_000_000;
const RATIONAL_TOL: f64 = 1e-9;
const MAX_COMBINATIONS: usize = 200_000;

/// Closest rational with bounded denominator, if it is within tolerance of `x`.
pub fn rational_approx(x: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > MAX_DENOMINATOR as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let approx = h1 as f64 / k1 as f64;
        if (approx - x).abs() <= RATIONAL_TOL * (1.0 + x.abs()) * 1e-2 {
            break;
        }
        let frac = r - a;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    if k1 == 0 {
        return None;
    }
    let approx = h1 as f64 / k1 as f64;
    if (approx - x).abs() > RATIONAL_TOL * (1.0 + x.abs()) {
        return None;
    }
    Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)))
}

fn horner(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

/// All complex roots (with multiplicity) of a polynomial, lowest degree first.
pub fn complex_roots(p: &[Complex64]) -> Vec<Complex64> {
    let mut p: Vec<Complex64> = p.to_vec();
    while p.last().is_some_and(|c| c.norm() == 0.0) {
        p.pop();
    }
    let deg = p.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = p[deg];
    for c in p.iter_mut() {
        *c /= lead;
    }
    let dp: Vec<Complex64> = (1..=deg).map(|k| p[k] * k as f64).collect();
    let bound = 1.0 + p[..deg].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(bound * 0.5 + 0.1, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / deg as f64))
        .collect();
    // Aberth iteration
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let pv = horner(&p, z[i]);
            let dv = horner(&dp, z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dv;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..deg {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        s += Complex64::new(1.0, 0.0) / d;
                    }
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm());
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    // Newton polish
    for zi in z.iter_mut() {
        for _ in 0..5 {
            let dv = horner(&dp, *zi);
            if dv.norm() == 0.0 {
                break;
            }
            let step = horner(&p, *zi) / dv;
            if !step.is_finite() {
                break;
            }
            *zi -= step;
        }
    }
    z
}

/// Embedding representatives k (coprime to N, k <= N/2); for N <= 2 just {1}.
fn embedding_reps(n: u32) -> Vec<i64> {
    if n <= 2 {
        return vec![1];
    }
    (1..=(n as i64) / 2).filter(|k| k.gcd(&(n as i64)) == 1).collect()
}

/// Distinct roots of `poly` (lowest degree first) in ℚ(ζ_N), sorted.
pub fn roots_in_field(poly: &[FieldElement], n: u32) -> Vec<FieldElement> {
    let mut poly: Vec<FieldElement> = poly.to_vec();
    while poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
    if poly.len() <= 1 {
        return Vec::new();
    }
    let n = poly.iter().fold(n, |m, c| m.lcm(&c.conductor()));
    let reps = embedding_reps(n);
    let phi = euler_phi(n);
    let per_embedding: Vec<Vec<Complex64>> = reps
        .iter()
        .map(|&k| {
            let cp: Vec<Complex64> = poly.iter().map(|c| c.to_complex_at(k)).collect();
            complex_roots(&cp)
        })
        .collect();
    let mut found: Vec<FieldElement> = Vec::new();
    let mut accept = |cand: FieldElement| {
        if !found.contains(&cand) && poly_eval(&poly, &cand).is_zero() {
            found.push(cand);
        }
    };
    if n <= 2 {
        for z in &per_embedding[0] {
            if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
                continue;
            }
            if let Some(q) = rational_approx(z.re) {
                accept(FieldElement::from_rational(q));
            }
        }
        found.sort();
        return found;
    }
    // Real system: for each embedding k, Σ_j c_j exp(2πi jk/N) = z_k.
    let mut sys = nalgebra::DMatrix::<f64>::zeros(phi, phi);
    for (e, &k) in reps.iter().enumerate() {
        for j in 0..phi {
            let ang = 2.0 * std::f64::consts::PI * ((j as i64 * k) % n as i64) as f64 / n as f64;
            sys[(2 * e, j)] = ang.cos();
            sys[(2 * e + 1, j)] = ang.sin();
        }
    }
    let lu = sys.lu();
    let counts: Vec<usize> = per_embedding.iter().map(|r| r.len()).collect();
    let total: usize = counts.iter().product();
    if total == 0 || total > MAX_COMBINATIONS {
        return Vec::new();
    }
    let mut idx = vec![0usize; reps.len()];
    for _ in 0..total {
        let mut rhs = nalgebra::DVector::<f64>::zeros(phi);
        for (e, &i) in idx.iter().enumerate() {
            let z = per_embedding[e][i];
            rhs[2 * e] = z.re;
            rhs[2 * e + 1] = z.im;
        }
        if let Some(sol) = lu.solve(&rhs) {
            let coeffs: Option<Vec<BigRational>> = sol.iter().map(|&x| rational_approx(x)).collect();
            if let Some(c) = coeffs {
                accept(FieldElement::canonicalize(n, &c));
            }
        }
        for e in 0..idx.len() {
            idx[e] += 1;
            if idx[e] < counts[e] {
                break;
            }
            idx[e] = 0;
        }
    }
    found.sort();
    found
}

/// Square roots of `c` in ℚ(ζ_N) (both signs, sorted), empty if none exist.
pub fn square_roots(c: &FieldElement, n: u32) -> Vec<FieldElement> {
    if c.is_zero() {
        return vec![FieldElement::zero()];
    }
    if let Some(q) = c.as_rational() {
        if q.is_positive() {
            if let (Some(a), Some(b)) = (int_sqrt(q.numer()), int_sqrt(q.denom())) {
                let r = FieldElement::from_rational(BigRational::new(a, b));
                let mut v = vec![r.clone(), -r];
                v.sort();
                return v;
            }
            if n == 1 {
                return Vec::new();
            }
        }
    }
    roots_in_field(&[-c, FieldElement::zero(), FieldElement::one()], n)
}

fn int_sqrt(x: &BigInt) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.sqrt();
    if &(&r * &r) == x {
        Some(r)
    } else {
        None
    }
}

/// Approximate f64 value of a rational, for diagnostics.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
