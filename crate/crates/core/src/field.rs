//! Exact arithmetic in cyclotomic fields ℚ(ζ_N).
//!
//! Elements are stored in the power basis 1, ζ, …, ζ^{φ(N)-1} reduced modulo
//! the N-th cyclotomic polynomial. Rational values are always normalized to
//! conductor 1, so constants mix freely with elements of any conductor.
//! Elements of two different conductors are combined in ℚ(ζ_lcm).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse field element at column {column}: {message}")]
    Parse { column: usize, message: String },
}

/// Reduction data for one conductor.
struct Cyclotomic {
    degree: usize,
    /// `reduction[k]` holds x^k mod Φ_N for 0 <= k < N.
    reduction: Vec<Vec<BigRational>>,
}

// Write-once memo of Φ_N tables. Entries are never mutated after insertion,
// so every public operation stays a pure function of its inputs.
fn table_cache() -> &'static RwLock<HashMap<u32, Arc<Cyclotomic>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Cyclotomic>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn cyclotomic(n: u32) -> Arc<Cyclotomic> {
    if let Some(t) = table_cache().read().unwrap().get(&n) {
        return t.clone();
    }
    let phi = cyclotomic_polynomial(n);
    let degree = phi.len() - 1;
    let mut reduction = Vec::with_capacity(n as usize);
    let mut cur: Vec<BigInt> = vec![BigInt::zero(); degree];
    if degree > 0 {
        cur[0] = BigInt::one();
    }
    for _ in 0..n {
        reduction.push(cur.iter().cloned().map(BigRational::from_integer).collect());
        // multiply by x and reduce with the monic Φ_N
        let top = cur[degree - 1].clone();
        let mut next = vec![BigInt::zero(); degree];
        for i in (1..degree).rev() {
            next[i] = cur[i - 1].clone();
        }
        if !top.is_zero() {
            for (i, slot) in next.iter_mut().enumerate() {
                *slot -= &top * &phi[i];
            }
        }
        cur = next;
    }
    let table = Arc::new(Cyclotomic { degree, reduction });
    table_cache()
        .write()
        .unwrap()
        .entry(n)
        .or_insert(table)
        .clone()
}

/// Integer coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "conductor must be positive");
    let mut p: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let q = cyclotomic_polynomial(d);
            p = exact_div_monic(&p, &q);
        }
    }
    p
}

fn exact_div_monic(p: &[BigInt], q: &[BigInt]) -> Vec<BigInt> {
    let mut rem = p.to_vec();
    let dq = q.len() - 1;
    let dp = p.len() - 1;
    let mut quot = vec![BigInt::zero(); dp - dq + 1];
    for i in (0..=dp - dq).rev() {
        let c = rem[i + dq].clone();
        if c.is_zero() {
            continue;
        }
        for j in 0..=dq {
            rem[i + j] -= &c * &q[j];
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()));
    quot
}

pub fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// An element of ℚ(ζ_N).
#[derive(Clone, Debug)]
pub struct FieldElement {
    n: u32,
    // trailing zeros trimmed; empty means zero
    c: Vec<BigRational>,
}

fn trim(mut c: Vec<BigRational>) -> Vec<BigRational> {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    c
}

impl FieldElement {
    fn normalized(n: u32, c: Vec<BigRational>) -> Self {
        let c = trim(c);
        let n = if c.len() <= 1 { 1 } else { n };
        FieldElement { n, c }
    }

    pub fn zero() -> Self {
        FieldElement { n: 1, c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(k: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::normalized(1, vec![r])
    }

    /// ζ_N^k for any integer k.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let t = cyclotomic(n);
        Self::normalized(n, t.reduction[e].clone())
    }

    pub fn zeta(n: u32) -> Self {
        Self::zeta_pow(n, 1)
    }

    /// Reduce Σ raw[k] ζ_N^k (any length) to canonical form.
    pub fn canonicalize(n: u32, raw: &[BigRational]) -> Self {
        let t = cyclotomic(n);
        let mut buckets = vec![BigRational::zero(); n as usize];
        for (k, v) in raw.iter().enumerate() {
            if !v.is_zero() {
                buckets[k % n as usize] += v;
            }
        }
        Self::normalized(n, reduce_buckets(&t, buckets))
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Power-basis coefficients, padded to length φ(N).
    pub fn coefficients(&self) -> Vec<BigRational> {
        let d = euler_phi(self.n);
        let mut v = self.c.clone();
        v.resize(d, BigRational::zero());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.c.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.c.len() <= 1
    }

    /// Express in the power basis of conductor `m`, which must be a multiple of ours.
    pub fn lift(&self, m: u32) -> Self {
        if self.n == m || self.is_rational() {
            return self.clone();
        }
        assert!(m % self.n == 0, "cannot lift conductor {} to {}", self.n, m);
        let step = (m / self.n) as usize;
        let t = cyclotomic(m);
        let mut buckets = vec![BigRational::zero(); m as usize];
        for (k, v) in self.c.iter().enumerate() {
            buckets[(k * step) % m as usize] += v;
        }
        Self::normalized(m, reduce_buckets(&t, buckets))
    }

    fn aligned(&self, other: &Self) -> (u32, Self, Self) {
        if self.n == other.n || other.is_rational() {
            return (self.n, self.clone(), other.clone());
        }
        if self.is_rational() {
            return (other.n, self.clone(), other.clone());
        }
        let m = self.n.lcm(&other.n);
        (m, self.lift(m), other.lift(m))
    }

    /// Complex conjugation ζ ↦ ζ^{N-1}.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// The Galois automorphism ζ ↦ ζ^k (k coprime to N).
    pub fn galois(&self, k: i64) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        let n = self.n as i64;
        let t = cyclotomic(self.n);
        let mut buckets = vec![BigRational::zero(); self.n as usize];
        for (j, v) in self.c.iter().enumerate() {
            buckets[((j as i64) * k).rem_euclid(n) as usize] += v;
        }
        Self::normalized(self.n, reduce_buckets(&t, buckets))
    }

    pub fn inverse(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Self::from_rational(self.c[0].recip()));
        }
        // Solve (multiplication by self) y = 1 over ℚ.
        let d = cyclotomic(self.n).degree;
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(d);
        for j in 0..d {
            let p = self * &Self::zeta_pow(self.n, j as i64);
            let mut c = p.c;
            c.resize(d, BigRational::zero());
            cols.push(c);
        }
        let mut a: Vec<Vec<BigRational>> = (0..d)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..d).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for col in 0..d {
            let piv = (col..d)
                .find(|&r| !a[r][col].is_zero())
                .expect("nonzero element of a field is invertible");
            a.swap(col, piv);
            let inv = a[col][col].recip();
            for x in a[col].iter_mut() {
                *x *= &inv;
            }
            let prow = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, p) in row.iter_mut().zip(prow.iter()) {
                        if !p.is_zero() {
                            *x -= &f * p;
                        }
                    }
                }
            }
        }
        let sol: Vec<BigRational> = a.into_iter().map(|mut r| r.pop().unwrap()).collect();
        Ok(Self::normalized(self.n, sol))
    }

    pub fn pow(&self, e: i64) -> Result<Self, FieldError> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Value under the embedding ζ_N ↦ exp(2πi/N).
    pub fn to_complex(&self) -> Complex64 {
        self.to_complex_at(1)
    }

    /// Value under the embedding ζ_N ↦ exp(2πik/N).
    pub fn to_complex_at(&self, k: i64) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for (j, v) in self.c.iter().enumerate() {
            let x = v.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * ((j as i64 * k).rem_euclid(self.n as i64)) as f64
                / self.n as f64;
            s += Complex64::from_polar(x, ang);
        }
        s
    }

    /// Render as "c0 + c1*z + ... (mod Phi_N)"; conductor 1 omits the suffix.
    pub fn to_string_in(&self, n: u32) -> String {
        let e = if n % self.n == 0 { self.lift(n) } else { self.clone() };
        let mut out = String::new();
        for (k, v) in e.c.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let neg = v.is_negative();
            let mag = v.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let zpart = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if k == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&zpart);
            } else {
                out.push_str(&format!("{mag}*{zpart}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        let shown = if e.is_rational() { 1 } else { e.n };
        if shown > 1 {
            out.push_str(&format!(" (mod Phi_{shown})"));
        }
        out
    }

    /// Parse the textual form; `default_conductor` is used when the string has no suffix.
    pub fn parse_with(s: &str, default_conductor: Option<u32>) -> Result<Self, FieldError> {
        parse(s, default_conductor)
    }
}

fn reduce_buckets(t: &Cyclotomic, mut buckets: Vec<BigRational>) -> Vec<BigRational> {
    let d = t.degree;
    let mut res: Vec<BigRational> = buckets.drain(..d.min(buckets.len())).collect();
    res.resize(d, BigRational::zero());
    for (off, b) in buckets.into_iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        let row = &t.reduction[d + off];
        for (r, x) in res.iter_mut().zip(row.iter()) {
            if !x.is_zero() {
                *r += &b * x;
            }
        }
    }
    res
}

fn add_vecs(a: &[BigRational], b: &[BigRational], sign: bool) -> Vec<BigRational> {
    let len = a.len().max(b.len());
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let x = a.get(i);
        let y = b.get(i);
        let v = match (x, y) {
            (Some(x), Some(y)) => {
                if sign {
                    x + y
                } else {
                    x - y
                }
            }
            (Some(x), None) => x.clone(),
            (None, Some(y)) => {
                if sign {
                    y.clone()
                } else {
                    -y
                }
            }
            (None, None) => unreachable!(),
        };
        out.push(v);
    }
    out
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.n == o.n || o.is_rational() || self.is_rational() {
            let n = self.n.max(o.n);
            return FieldElement::normalized(n, add_vecs(&self.c, &o.c, true));
        }
        let (n, a, b) = self.aligned(o);
        FieldElement::normalized(n, add_vecs(&a.c, &b.c, true))
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        if o.is_zero() {
            return self.clone();
        }
        if self.n == o.n || o.is_rational() || self.is_rational() {
            let n = self.n.max(o.n);
            return FieldElement::normalized(n, add_vecs(&self.c, &o.c, false));
        }
        let (n, a, b) = self.aligned(o);
        FieldElement::normalized(n, add_vecs(&a.c, &b.c, false))
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        if self.is_zero() || o.is_zero() {
            return FieldElement::zero();
        }
        if o.is_rational() {
            let s = &o.c[0];
            if s.is_one() {
                return self.clone();
            }
            return FieldElement::normalized(self.n, self.c.iter().map(|x| x * s).collect());
        }
        if self.is_rational() {
            return o * self;
        }
        let (n, a, b) = if self.n == o.n {
            (self.n, std::borrow::Cow::Borrowed(self), std::borrow::Cow::Borrowed(o))
        } else {
            let (n, a, b) = self.aligned(o);
            (n, std::borrow::Cow::Owned(a), std::borrow::Cow::Owned(b))
        };
        let t = cyclotomic(n);
        let nn = n as usize;
        let mut buckets = vec![BigRational::zero(); nn];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                buckets[(i + j) % nn] += x * y;
            }
        }
        FieldElement::normalized(n, reduce_buckets(&t, buckets))
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            n: self.n,
            c: self.c.iter().map(|x| -x).collect(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    /// Panics on division by zero; use [`FieldElement::inverse`] to handle it.
    fn div(self, o: &FieldElement) -> FieldElement {
        self * &o.inverse().expect("division by zero")
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $f(self, o: FieldElement) -> FieldElement {
                (&self).$f(&o)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $f(self, o: &FieldElement) -> FieldElement {
                (&self).$f(o)
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $f(self, o: FieldElement) -> FieldElement {
                self.$f(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, o: &FieldElement) {
        if o.is_zero() {
            return;
        }
        if self.n == o.n || o.is_rational() {
            let n = self.n.max(o.n);
            if self.c.len() < o.c.len() {
                self.c.resize(o.c.len(), BigRational::zero());
            }
            for (x, y) in self.c.iter_mut().zip(o.c.iter()) {
                *x += y;
            }
            let c = std::mem::take(&mut self.c);
            *self = FieldElement::normalized(n, c);
        } else {
            *self = &*self + o;
        }
    }
}

impl AddAssign for FieldElement {
    fn add_assign(&mut self, o: FieldElement) {
        *self += &o;
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, o: &FieldElement) {
        *self += &(-o);
    }
}

impl SubAssign for FieldElement {
    fn sub_assign(&mut self, o: FieldElement) {
        *self += &(-o);
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, o: &FieldElement) {
        *self = &*self * o;
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, o: &Self) -> bool {
        if self.n == o.n || self.is_rational() || o.is_rational() {
            return self.c == o.c;
        }
        let (_, a, b) = self.aligned(o);
        a.c == b.c
    }
}

impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for FieldElement {
    /// Lexicographic on power-basis coefficients in a common conductor.
    fn cmp(&self, o: &Self) -> Ordering {
        let (_, a, b) = self.aligned(o);
        let len = a.c.len().max(b.c.len());
        let z = BigRational::zero();
        for i in 0..len {
            let x = a.c.get(i).unwrap_or(&z);
            let y = b.c.get(i).unwrap_or(&z);
            match x.cmp(y) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }
}

impl Default for FieldElement {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for FieldElement {
    fn from(k: i64) -> Self {
        Self::from_integer(k)
    }
}

impl From<BigRational> for FieldElement {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl std::iter::Sum for FieldElement {
    fn sum<I: Iterator<Item = FieldElement>>(iter: I) -> Self {
        let mut acc = FieldElement::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in(self.n))
    }
}

impl FromStr for FieldElement {
    type Err = FieldError;
    fn from_str(s: &str) -> Result<Self, FieldError> {
        parse(s, None)
    }
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, FieldError> {
        Err(FieldError::Parse {
            column: self.pos + 1,
            message: message.into(),
        })
    }
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }
    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }
    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
    fn eat_word(&mut self, w: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(w.as_bytes()) {
            self.pos += w.len();
            true
        } else {
            false
        }
    }
    fn integer(&mut self) -> Result<BigInt, FieldError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(txt.parse::<BigInt>().unwrap())
    }
}

fn parse(s: &str, default_conductor: Option<u32>) -> Result<FieldElement, FieldError> {
    let mut lx = Lexer {
        s: s.as_bytes(),
        pos: 0,
    };
    let mut terms: Vec<(BigRational, u64)> = Vec::new();
    let mut first = true;
    loop {
        let mut negative = false;
        if lx.eat(b'-') {
            negative = true;
        } else if lx.eat(b'+') {
        } else if !first {
            break;
        }
        first = false;
        let mut coef = BigRational::one();
        let mut has_coef = false;
        if lx.peek().is_some_and(|c| c.is_ascii_digit()) {
            let p = lx.integer()?;
            let q = if lx.eat(b'/') {
                let q = lx.integer()?;
                if q.is_zero() {
                    return lx.err("zero denominator");
                }
                q
            } else {
                BigInt::one()
            };
            coef = BigRational::new(p, q);
            has_coef = true;
        }
        let mut exp = 0u64;
        let star = has_coef && lx.eat(b'*');
        if lx.eat(b'z') {
            exp = 1;
            if lx.eat(b'^') {
                exp = lx
                    .integer()?
                    .to_u64()
                    .ok_or(FieldError::Parse {
                        column: lx.pos,
                        message: "exponent too large".into(),
                    })?;
            }
        } else if star || !has_coef {
            return lx.err("expected a rational coefficient or z");
        }
        if negative {
            coef = -coef;
        }
        terms.push((coef, exp));
        if lx.peek().is_none() || lx.peek() == Some(b'(') {
            break;
        }
    }
    let mut conductor = default_conductor;
    if lx.eat(b'(') {
        if !lx.eat_word("mod") || !lx.eat_word("Phi_") {
            return lx.err("expected \"mod Phi_N\"");
        }
        let n = lx.integer()?;
        let n = n.to_u32().filter(|&n| n >= 1).ok_or(FieldError::Parse {
            column: lx.pos,
            message: "conductor must be a positive integer".into(),
        })?;
        if !lx.eat(b')') {
            return lx.err("expected ')'");
        }
        conductor = Some(n);
    }
    if lx.peek().is_some() {
        return lx.err("unexpected trailing input");
    }
    let uses_z = terms.iter().any(|(_, e)| *e > 0);
    let n = match conductor {
        Some(n) => n,
        None if uses_z => {
            return Err(FieldError::Parse {
                column: 1,
                message: "z used without \"(mod Phi_N)\"".into(),
            })
        }
        None => 1,
    };
    let mut raw = vec![BigRational::zero(); n as usize];
    for (c, e) in terms {
        raw[(e % n as u64) as usize] += c;
    }
    Ok(FieldElement::canonicalize(n, &raw))
}

/// Exact polynomial over the field, lowest degree first.
pub fn poly_eval(p: &[FieldElement], x: &FieldElement) -> FieldElement {
    let mut acc = FieldElement::zero();
    for c in p.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Human-readable polynomial in the variable `x`.
pub fn poly_to_string(p: &[FieldElement]) -> String {
    let mut parts = Vec::new();
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let xs = match k {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{k}"),
        };
        if k == 0 {
            parts.push(format!("({c})"));
        } else if c.is_one() {
            parts.push(xs);
        } else {
            parts.push(format!("({c})*{xs}"));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn cyclotomic_polys() {
        let p = cyclotomic_polynomial(12);
        let want: Vec<BigInt> = [1, 0, -1, 0, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(p, want);
        assert_eq!(euler_phi(5), 4);
        assert_eq!(euler_phi(1), 1);
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let z = FieldElement::zeta(4);
        assert_eq!(&z * &z, FieldElement::from_integer(-1));
    }

    #[test]
    fn zeta5_fourth_power_reduces() {
        let z4 = FieldElement::zeta_pow(5, 4);
        assert_eq!(z4.coefficients(), vec![r(-1, 1), r(-1, 1), r(-1, 1), r(-1, 1)]);
    }

    #[test]
    fn trivial_canonicalize() {
        let x = FieldElement::canonicalize(7, &[r(1, 1), r(0, 1)]);
        assert_eq!(x, FieldElement::one());
        assert_eq!(x.conductor(), 1);
    }

    #[test]
    fn inverses() {
        assert_eq!(
            FieldElement::from_integer(2).inverse().unwrap(),
            FieldElement::from_ratio(1, 2)
        );
        let i = FieldElement::zeta(4);
        assert_eq!(i.inverse().unwrap(), -&i);
        assert_eq!(FieldElement::zero().inverse(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn mixed_conductors() {
        let a = FieldElement::zeta(3);
        let b = FieldElement::zeta(4);
        let p = &a * &b;
        assert_eq!(p.conductor(), 12);
        assert_eq!(p, FieldElement::zeta_pow(12, 7));
        assert_eq!(FieldElement::zeta(6).lift(12), FieldElement::zeta_pow(12, 2));
        assert_eq!(FieldElement::zeta(6), FieldElement::zeta_pow(12, 2));
    }

    #[test]
    fn display_and_parse() {
        let x = &FieldElement::from_ratio(1, 2) - &FieldElement::zeta_pow(5, 2);
        let s = x.to_string();
        assert_eq!(s, "1/2 - z^2 (mod Phi_5)");
        assert_eq!(s.parse::<FieldElement>().unwrap(), x);
        assert_eq!("-3/4".parse::<FieldElement>().unwrap(), FieldElement::from_ratio(-3, 4));
        assert_eq!(
            "1 + 1*z^4 (mod Phi_5)".parse::<FieldElement>().unwrap().to_string(),
            "-z - z^2 - z^3 (mod Phi_5)"
        );
        assert!(matches!(
            "1 + ".parse::<FieldElement>(),
            Err(FieldError::Parse { .. })
        ));
        assert!("z".parse::<FieldElement>().is_err());
        assert_eq!(FieldElement::parse_with("z^2", Some(4)).unwrap(), FieldElement::from_integer(-1));
    }

    #[test]
    fn conjugation_matches_embedding() {
        let x = &FieldElement::from_ratio(2, 3) + &(&FieldElement::from_integer(5) * &FieldElement::zeta_pow(12, 3));
        let a = x.to_complex();
        let b = x.conj().to_complex();
        assert!((a.conj() - b).norm() < 1e-12);
        assert_eq!(x.conj().conj(), x);
    }
}
