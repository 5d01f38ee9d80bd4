//! Colored framed links as braid closures, and the surgery invariant.
//!
//! Conventions, fixed here and nowhere else:
//! - σ_i acts on positions (i, i+1) carrying (V, W) by c_{V,W}, and σ_i⁻¹ by c⁻¹_{W,V};
//! - the closure of f is the scalar quantum trace (dim H_t)⁻¹ Tr(uν·f) on the truncated product,
//!   which closes every strand at once;
//! - a component with self-writhe w and framing f is multiplied by θ^{f−w}, θ the scalar of ν on its color;
//! - the surgery invariant is I(L)/(Δ₊^{b₊}Δ₋^{b₋}) with I(L) = Σ_λ Π dim_q(V_λ) F(L, λ),
//!   Δ_± = Σ θ_i^{±1} dim_q(V_i)² and b_± the signs in the spectrum of the linking matrix.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use thiserror::Error;

use crate::field::FieldElement;
use crate::linalg::Matrix;
use crate::modular::{modularity_verdict, ModularError};
use crate::qt::{braiding_ambient, braiding_inverse_ambient, quantum_trace, QtData, QtError, RibbonData};
use crate::rep::{irreducibles, tensor_many, HModule, RepError, TensorModule};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvariantError {
    #[error("cannot parse braid word: {0}")]
    Parse(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("coloring is not constant on link component {0}")]
    InconsistentColoring(usize),
    #[error("ν does not act by a scalar on color {0}")]
    TwistNotScalar(usize),
    #[error("quantum groupoid is not connected")]
    NotConnected,
    #[error("modularity verdict is negative")]
    NotModular,
    #[error("Gauss sum Δ{0} vanishes")]
    DegenerateGaussSum(char),
    #[error(transparent)]
    Modular(#[from] ModularError),
    #[error(transparent)]
    Qt(#[from] QtError),
}

impl From<RepError> for InvariantError {
    fn from(e: RepError) -> Self {
        InvariantError::Qt(e.into())
    }
}

/// A braid on `strands` strands; ±i stands for σ_i^{±1}.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BraidWord {
    pub strands: usize,
    pub word: Vec<i32>,
    /// Palette index per strand at the bottom of the braid.
    pub colors: Vec<usize>,
    /// Per component, in the order of [`BraidWord::components`]; missing entries are 0.
    pub framing: Vec<i64>,
}

impl BraidWord {
    pub fn new(strands: usize, word: Vec<i32>) -> Result<Self, InvariantError> {
        if let Some(g) = word.iter().find(|g| **g == 0 || g.unsigned_abs() as usize >= strands.max(1)) {
            return Err(InvariantError::IndexOutOfRange(format!("σ_{} on {strands} strands", g.unsigned_abs())));
        }
        Ok(BraidWord {
            strands,
            word,
            colors: vec![0; strands],
            framing: Vec::new(),
        })
    }

    pub fn with_colors(mut self, colors: Vec<usize>) -> Result<Self, InvariantError> {
        if colors.len() != self.strands {
            return Err(InvariantError::IndexOutOfRange(format!(
                "{} colors for {} strands",
                colors.len(),
                self.strands
            )));
        }
        self.colors = colors;
        Ok(self)
    }

    pub fn with_framing(mut self, framing: Vec<i64>) -> Result<Self, InvariantError> {
        let k = self.components().len();
        if framing.len() > k {
            return Err(InvariantError::IndexOutOfRange(format!(
                "{} framings for {k} components",
                framing.len()
            )));
        }
        self.framing = framing;
        Ok(self)
    }

    pub fn framing_of(&self, component: usize) -> i64 {
        self.framing.get(component).copied().unwrap_or(0)
    }

    /// strand_at[p] after the whole word, strands named by their starting position.
    fn final_positions(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for g in &self.word {
            let i = g.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        at
    }

    /// Cycles of the closure, each starting from its smallest strand; ordered by that strand.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let at = self.final_positions();
        let mut next = vec![0; self.strands];
        for (p, &s) in at.iter().enumerate() {
            next[s] = p;
        }
        let mut seen = vec![false; self.strands];
        let mut out = Vec::new();
        for s in 0..self.strands {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut t = s;
            while !seen[t] {
                seen[t] = true;
                cyc.push(t);
                t = next[t];
            }
            out.push(cyc);
        }
        out
    }

    pub fn component_of_strands(&self) -> Vec<usize> {
        let mut of = vec![0; self.strands];
        for (k, c) in self.components().iter().enumerate() {
            for &s in c {
                of[s] = k;
            }
        }
        of
    }

    /// Colors at the positions after the word.
    pub fn final_colors(&self) -> Vec<usize> {
        self.final_positions().iter().map(|&s| self.colors[s]).collect()
    }

    pub fn coloring_consistent(&self) -> Result<(), InvariantError> {
        for (k, c) in self.components().iter().enumerate() {
            if c.iter().any(|&s| self.colors[s] != self.colors[c[0]]) {
                return Err(InvariantError::InconsistentColoring(k));
            }
        }
        Ok(())
    }

    /// Signed crossings as (strand, strand, sign).
    fn crossings(&self) -> Vec<(usize, usize, i64)> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        let mut out = Vec::with_capacity(self.word.len());
        for g in &self.word {
            let i = g.unsigned_abs() as usize - 1;
            out.push((at[i], at[i + 1], g.signum() as i64));
            at.swap(i, i + 1);
        }
        out
    }

    /// Sum of crossing signs within each component (the blackboard framing).
    pub fn writhes(&self) -> Vec<i64> {
        let of = self.component_of_strands();
        let mut w = vec![0; self.components().len()];
        for (a, b, s) in self.crossings() {
            if of[a] == of[b] {
                w[of[a]] += s;
            }
        }
        w
    }

    /// Framings on the diagonal, linking numbers off it.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let of = self.component_of_strands();
        let k = self.components().len();
        let mut m = vec![vec![0i64; k]; k];
        for (a, b, s) in self.crossings() {
            let (i, j) = (of[a], of[b]);
            if i != j {
                m[i][j] += s;
                m[j][i] += s;
            }
        }
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                if i != j {
                    *x /= 2;
                }
            }
            row[i] = self.framing_of(i);
        }
        m
    }

    /// All crossings reversed; framings negated.
    pub fn mirror(&self) -> Self {
        BraidWord {
            strands: self.strands,
            word: self.word.iter().map(|g| -g).collect(),
            colors: self.colors.clone(),
            framing: self.framing.iter().map(|f| -f).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            strands: self.strands,
            word: self.word.iter().rev().map(|g| -g).collect(),
            colors: self.final_colors(),
            framing: self.framing.clone(),
        }
    }

    /// self followed by other; colors are those of self.
    pub fn then(&self, other: &BraidWord) -> Self {
        BraidWord {
            strands: self.strands.max(other.strands),
            word: self.word.iter().chain(&other.word).copied().collect(),
            colors: self.colors.clone(),
            framing: Vec::new(),
        }
    }
}

impl FromStr for BraidWord {
    type Err = InvariantError;

    /// Tokens "s1", "s2^-1", "s1^3", an optional "f=(0,1)" framing, and an optional "m=4" strand count.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |t: &str| InvariantError::Parse(format!("unexpected token {t:?}"));
        let mut word = Vec::new();
        let mut framing = Vec::new();
        let mut strands = None;
        let mut tokens = Vec::new();
        // keep "f=(0, 1)" together
        let mut rest = s.trim();
        while !rest.is_empty() {
            if let Some(r) = rest.strip_prefix("f=(") {
                let end = r.find(')').ok_or_else(|| InvariantError::Parse("unclosed framing".into()))?;
                for f in r[..end].split(',').map(str::trim).filter(|f| !f.is_empty()) {
                    framing.push(f.parse::<i64>().map_err(|_| bad(f))?);
                }
                rest = r[end + 1..].trim_start();
                continue;
            }
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            tokens.push(&rest[..end]);
            rest = rest[end..].trim_start();
        }
        for t in tokens {
            if let Some(m) = t.strip_prefix("m=") {
                strands = Some(m.parse::<usize>().map_err(|_| bad(t))?);
                continue;
            }
            let body = t.strip_prefix('s').ok_or_else(|| bad(t))?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, e)) => (i, e.parse::<i32>().map_err(|_| bad(t))?),
                None => (body, 1),
            };
            let i = idx.parse::<i32>().map_err(|_| bad(t))?;
            if i < 1 {
                return Err(bad(t));
            }
            for _ in 0..exp.unsigned_abs() {
                word.push(i * exp.signum());
            }
        }
        let needed = word.iter().map(|g| g.unsigned_abs() as usize + 1).max().unwrap_or(1);
        let b = BraidWord::new(strands.unwrap_or(needed), word)?;
        b.with_framing(framing)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = vec![format!("m={}", self.strands)];
        for g in &self.word {
            if *g > 0 {
                parts.push(format!("s{g}"));
            } else {
                parts.push(format!("s{}^-1", -g));
            }
        }
        if !self.framing.is_empty() {
            let fs: Vec<String> = self.framing.iter().map(|x| x.to_string()).collect();
            parts.push(format!("f=({})", fs.join(",")));
        }
        write!(f, "{}", parts.join(" "))
    }
}

fn color<'a>(palette: &'a [HModule], c: usize) -> Result<&'a HModule, InvariantError> {
    palette
        .get(c)
        .ok_or_else(|| InvariantError::IndexOutOfRange(format!("color {c} of a palette of {}", palette.len())))
}

/// `op` applied to the factors at positions (i, i+1) of each column of `x`.
fn apply_local(op: &Matrix, ranks: &[usize], i: usize, x: &Matrix) -> Matrix {
    let mid = ranks[i] * ranks[i + 1];
    let right: usize = ranks[i + 2..].iter().product();
    let mut out = Matrix::zeros(x.rows(), x.cols());
    for col in 0..x.cols() {
        for row in 0..x.rows() {
            let v = &x[(row, col)];
            if v.is_zero() {
                continue;
            }
            let (l, m, r) = (row / (mid * right), (row / right) % mid, row % right);
            for m2 in 0..mid {
                let o = &op[(m2, m)];
                if !o.is_zero() {
                    out[((l * mid + m2) * right + r, col)] += &(o * v);
                }
            }
        }
    }
    out
}

/// The braid as a map from the truncated product of the bottom colors to that of the top colors.
pub fn braid_endomorphism(b: &BraidWord, qt: &QtData, palette: &[HModule]) -> Result<Matrix, InvariantError> {
    if b.strands == 0 {
        return Ok(Matrix::identity(1));
    }
    let mut cols = b.colors.clone();
    let mut products: HashMap<Vec<usize>, TensorModule> = HashMap::new();
    let mut product = |cols: &[usize]| -> Result<TensorModule, InvariantError> {
        if let Some(t) = products.get(cols) {
            return Ok(t.clone());
        }
        let mods = cols.iter().map(|&c| color(palette, c)).collect::<Result<Vec<_>, _>>()?;
        let t = tensor_many(&qt.h, &mods)?;
        products.insert(cols.to_vec(), t.clone());
        Ok(t)
    };
    let mut cur = product(&cols)?;
    let mut total = Matrix::identity(cur.module.rank);
    for g in &b.word {
        let i = g.unsigned_abs() as usize - 1;
        let (v, w) = (&palette[cols[i]], &palette[cols[i + 1]]);
        let local = if *g > 0 {
            braiding_ambient(qt, v, w)
        } else {
            braiding_inverse_ambient(qt, w, v)
        };
        let ranks: Vec<usize> = cols.iter().map(|&c| palette[c].rank).collect();
        let moved = apply_local(&local, &ranks, i, &cur.embed);
        cols.swap(i, i + 1);
        let next = product(&cols)?;
        total = next.project.mul(&moved).mul(&total);
        cur = next;
    }
    Ok(total)
}

/// The scalar of ν on a palette entry.
fn twist_scalar(ribbon: &RibbonData, v: &HModule, c: usize) -> Result<FieldElement, InvariantError> {
    let m = v.act(&ribbon.nu);
    let t = m[(0, 0)].clone();
    if m != Matrix::identity(v.rank).scale(&t) {
        return Err(InvariantError::TwistNotScalar(c));
    }
    Ok(t)
}

fn power(x: &FieldElement, e: i64) -> FieldElement {
    x.pow(e).expect("twist scalars are invertible")
}

/// Closure of a colored framed braid; the unknot with framing 0 gives dim_q(V).
pub fn link_invariant(b: &BraidWord, qt: &QtData, ribbon: &RibbonData, palette: &[HModule]) -> Result<FieldElement, InvariantError> {
    let h = &qt.h;
    if !h.is_connected() {
        return Err(InvariantError::NotConnected);
    }
    if b.strands == 0 {
        return Ok(FieldElement::one());
    }
    b.coloring_consistent()?;
    let e = braid_endomorphism(b, qt, palette)?;
    let mods: Vec<&HModule> = b.colors.iter().map(|&c| &palette[c]).collect();
    let t = tensor_many(h, &mods)?;
    let mut value = quantum_trace(qt, ribbon, &t.module, &e)?;
    let comps = b.components();
    for (k, w) in b.writhes().into_iter().enumerate() {
        let shift = b.framing_of(k) - w;
        if shift != 0 {
            let c = b.colors[comps[k][0]];
            value = &value * &power(&twist_scalar(ribbon, &palette[c], c)?, shift);
        }
    }
    Ok(value)
}

/// Numbers of positive and negative eigenvalues of an integer symmetric matrix.
pub fn signature(m: &[Vec<i64>]) -> (usize, usize) {
    let k = m.len();
    if k == 0 {
        return (0, 0);
    }
    let a = DMatrix::from_fn(k, k, |i, j| m[i][j] as f64);
    let eig = a.symmetric_eigen().eigenvalues;
    let pos = eig.iter().filter(|x| **x > 1e-9).count();
    let neg = eig.iter().filter(|x| **x < -1e-9).count();
    (pos, neg)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurgeryValue {
    pub value: FieldElement,
    /// Σ_λ Π dim_q(V_λ) F(L, λ) before normalization.
    pub unnormalized: FieldElement,
    pub gauss_plus: FieldElement,
    pub gauss_minus: FieldElement,
    pub signature: (usize, usize),
}

/// Surgery invariant of the 3-manifold given by the framed closure; colors in `surgery` are ignored.
pub fn rt_invariant(surgery: &BraidWord, qt: &QtData, ribbon: &RibbonData) -> Result<SurgeryValue, InvariantError> {
    let h = &qt.h;
    let verdict = modularity_verdict(qt, ribbon)?;
    if !verdict.verdict {
        return Err(InvariantError::NotModular);
    }
    let irr = irreducibles(h)?;
    let palette: Vec<HModule> = irr.into_iter().map(|i| i.module).collect();
    let dims = palette
        .iter()
        .map(|v| quantum_trace(qt, ribbon, v, &Matrix::identity(v.rank)))
        .collect::<Result<Vec<_>, _>>()?;
    let thetas = palette
        .iter()
        .enumerate()
        .map(|(c, v)| twist_scalar(ribbon, v, c))
        .collect::<Result<Vec<_>, _>>()?;
    let mut gp = FieldElement::zero();
    let mut gm = FieldElement::zero();
    for (d, t) in dims.iter().zip(&thetas) {
        let d2 = d * d;
        gp += &(&d2 * t);
        gm += &(&d2 * &power(t, -1));
    }
    if gp.is_zero() {
        return Err(InvariantError::DegenerateGaussSum('+'));
    }
    if gm.is_zero() {
        return Err(InvariantError::DegenerateGaussSum('-'));
    }
    let comps = surgery.components();
    let k = comps.len();
    let p = palette.len();
    let mut total = FieldElement::zero();
    let mut lambda = vec![0usize; k];
    loop {
        let mut colors = vec![0; surgery.strands];
        for (c, comp) in comps.iter().enumerate() {
            for &s in comp {
                colors[s] = lambda[c];
            }
        }
        let colored = BraidWord {
            colors,
            ..surgery.clone()
        };
        let mut term = link_invariant(&colored, qt, ribbon, &palette)?;
        for &l in &lambda {
            term = &term * &dims[l];
        }
        total += &term;
        // next coloring
        let mut pos = 0;
        while pos < k {
            lambda[pos] += 1;
            if lambda[pos] < p {
                break;
            }
            lambda[pos] = 0;
            pos += 1;
        }
        if pos == k {
            break;
        }
    }
    let (bp, bm) = signature(&surgery.linking_matrix());
    let norm = &power(&gp, bp as i64) * &power(&gm, bm as i64);
    Ok(SurgeryValue {
        value: &total / &norm,
        unnormalized: total,
        gauss_plus: gp,
        gauss_minus: gm,
        signature: (bp, bm),
    })
}
