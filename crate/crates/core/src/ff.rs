//! Exact arithmetic in GF(p^k).
//!
//! Elements are residues of polynomials over GF(p) modulo a monic irreducible
//! modulus. A [`FieldElem`] packs the coefficient tuple `(c_0, …, c_{k-1})`
//! into the integer `Σ c_i p^i`; that integer is also the canonical scan
//! order used by every deterministic search in this crate (moduli, primitive
//! elements, square roots).
//!
//! Fields up to 2^20 elements carry exp/log tables; larger fields fall back to
//! schoolbook polynomial multiplication.

use std::fmt;
use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};
use crate::linalg;

/// Hard cap on field size.
pub const FIELD_CAP: u64 = 1 << 31;
const TABLE_CAP: u64 = 1 << 20;

/// An element of some [`FieldCtx`]: base-`p` packed coefficients.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// The canonical integer `Σ c_i p^i`.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    /// `exp[i] = g^i` for `0 ≤ i < 2(q-1)`.
    exp: Vec<u32>,
    /// `log[x]` for `x ≠ 0`.
    log: Vec<u32>,
}

/// GF(p^k) with a fixed modulus and a cached primitive element.
pub struct FieldCtx {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    pow_p: Vec<u32>,
    order_primes: Vec<u64>,
    primitive: FieldElem,
    tables: Option<Tables>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx({})", self.descriptor())
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

// ---------------------------------------------------------------------------
// Polynomials over GF(p), little-endian coefficient vectors.

fn poly_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let df = f.len() - 1;
    let lead_inv = arith::pow_mod(f[df], p - 2, p);
    while r.len() > df {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            let shift = top - df;
            for (i, &fi) in f.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - c * fi % p) % p;
            }
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_rem(&out, f, p)
}

fn poly_powmod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = poly_rem(a, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &base, f, p);
        }
        base = poly_mulmod(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// `x^(p^d) mod f`.
fn frobenius_power_of_x(f: &[u64], d: u32, p: u64) -> Vec<u64> {
    let mut h = vec![0, 1];
    for _ in 0..d {
        h = poly_powmod(&h, p, f, p);
    }
    h
}

/// Rabin's test: a monic `f` of degree `k` is irreducible over GF(p) iff
/// `x^(p^k) ≡ x mod f` and `gcd(x^(p^(k/r)) - x, f) = 1` for each prime `r | k`.
pub fn is_irreducible_poly(f: &[u64], p: u64) -> bool {
    let k = (f.len() - 1) as u32;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x_minus = |h: Vec<u64>| {
        let mut h = h;
        if h.len() < 2 {
            h.resize(2, 0);
        }
        h[1] = (h[1] + p - 1) % p;
        poly_trim(&mut h);
        h
    };
    if !x_minus(frobenius_power_of_x(f, k, p)).is_empty() {
        return false;
    }
    for r in arith::prime_divisors(k as u64) {
        let h = x_minus(frobenius_power_of_x(f, k / r as u32, p));
        if poly_gcd(&h, f, p).len() != 1 {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------

impl FieldCtx {
    /// Builds GF(p^k). Without a modulus, the first irreducible monic
    /// polynomial in canonical order of its lower coefficients is used.
    pub fn new(p: u64, k: u32, modulus: Option<&[u64]>) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::BadModulus(k));
        }
        let q = arith::checked_pow(p, k)
            .filter(|&q| q <= FIELD_CAP)
            .ok_or(Error::FieldTooLarge((p as u128).saturating_pow(k)))?;
        let modulus: Vec<u64> = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 || m[k as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::BadModulus(k));
                }
                if !is_irreducible_poly(m, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                m.to_vec()
            }
            None => (0..q)
                .map(|low| {
                    let mut f: Vec<u64> = (0..k).map(|i| low / p.pow(i) % p).collect();
                    f.push(1);
                    f
                })
                .find(|f| is_irreducible_poly(f, p))
                .expect("an irreducible polynomial of every degree exists"),
        };
        let mut ctx = FieldCtx {
            p: p as u32,
            k,
            q: q as u32,
            modulus: modulus.iter().map(|&c| c as u32).collect(),
            pow_p: (0..k).map(|i| p.pow(i) as u32).collect(),
            order_primes: arith::prime_divisors(q - 1),
            primitive: FieldElem::ONE,
            tables: None,
        };
        ctx.primitive = (1..q as u32)
            .map(FieldElem)
            .find(|&x| ctx.element_order(x).ok() == Some(q - 1))
            .expect("multiplicative group of a finite field is cyclic");
        if q <= TABLE_CAP {
            ctx.build_tables();
        }
        Ok(ctx)
    }

    /// GF(p).
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// GF(q) for a prime power `q`.
    pub fn of_size(q: u64) -> Result<Self> {
        let (p, k) = arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, k, None)
    }

    fn build_tables(&mut self) {
        let n = (self.q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; self.q as usize];
        let mut x = FieldElem::ONE;
        for i in 0..n {
            exp[i] = x.0;
            exp[i + n] = x.0;
            log[x.0 as usize] = i as u32;
            x = self.mul_poly(x, self.primitive);
        }
        self.tables = Some(Tables { exp, log });
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Field size `q = p^k`.
    pub fn size(&self) -> u64 {
        self.q as u64
    }

    /// Monic modulus, little-endian, length `k + 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Cached generator of the multiplicative group.
    pub fn primitive(&self) -> FieldElem {
        self.primitive
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// The prime-subfield element `c mod p`.
    pub fn from_int(&self, c: i64) -> FieldElem {
        FieldElem(c.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_index(&self, i: u32) -> Result<FieldElem> {
        if i < self.q {
            Ok(FieldElem(i))
        } else {
            Err(Error::Parse(format!(
                "{i} is not an element of GF({})",
                self.q
            )))
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if coeffs.len() != self.k as usize {
            return Err(Error::Parse(format!(
                "expected {} coefficients, got {}",
                self.k,
                coeffs.len()
            )));
        }
        let mut v = 0u32;
        for (i, &c) in coeffs.iter().enumerate() {
            if c >= self.p as u64 {
                return Err(Error::Parse(format!(
                    "coefficient {c} not reduced mod {}",
                    self.p
                )));
            }
            v += c as u32 * self.pow_p[i];
        }
        Ok(FieldElem(v))
    }

    pub fn coeffs(&self, x: FieldElem) -> Vec<u32> {
        let mut v = x.0;
        (0..self.k)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.k == 1 {
            return FieldElem((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out) = (a.0, b.0, 0u32);
        for &pw in &self.pow_p {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * pw;
            x /= self.p;
            y /= self.p;
        }
        FieldElem(out)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.k == 1 {
            return FieldElem((self.p - a.0) % self.p);
        }
        let (mut x, mut out) = (a.0, 0u32);
        for &pw in &self.pow_p {
            out += (self.p - x % self.p) % self.p * pw;
            x /= self.p;
        }
        FieldElem(out)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    /// Multiplication by a prime-subfield scalar `c`.
    pub fn scale(&self, c: u32, a: FieldElem) -> FieldElem {
        if self.k == 1 {
            return FieldElem(((c as u64 * a.0 as u64) % self.p as u64) as u32);
        }
        let (mut x, mut out) = (a.0, 0u32);
        for &pw in &self.pow_p {
            out += (x % self.p) * c % self.p * pw;
            x /= self.p;
        }
        FieldElem(out)
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        if self.k == 1 {
            return FieldElem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        match &self.tables {
            Some(t) => FieldElem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_poly(a, b),
        }
    }

    fn mul_poly(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.p as u64;
        let f: Vec<u64> = self.modulus.iter().map(|&c| c as u64).collect();
        let av: Vec<u64> = self.coeffs(a).into_iter().map(u64::from).collect();
        let bv: Vec<u64> = self.coeffs(b).into_iter().map(u64::from).collect();
        let r = poly_mulmod(&av, &bv, &f, p);
        FieldElem(
            r.iter()
                .zip(&self.pow_p)
                .map(|(&c, &pw)| c as u32 * pw)
                .sum(),
        )
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return FieldElem::ONE;
        }
        if a.0 == 0 {
            return FieldElem::ZERO;
        }
        let n = (self.q - 1) as u64;
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize] as u64;
            return FieldElem(t.exp[((l as u128 * (e % n) as u128) % n as u128) as usize]);
        }
        let mut e = e % n;
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::ZeroElement);
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Least `e ≥ 1` with `x^e = 1`, by prime-by-prime descent from `q - 1`.
    pub fn element_order(&self, x: FieldElem) -> Result<u64> {
        if x.0 == 0 {
            return Err(Error::ZeroElement);
        }
        let mut e = self.q as u64 - 1;
        for &r in &self.order_primes {
            while e % r == 0 && self.pow(x, e / r) == FieldElem::ONE {
                e /= r;
            }
        }
        Ok(e)
    }

    /// `x^(base_size^j)`, where `base_size = p^d` with `d | k`.
    pub fn frobenius(&self, x: FieldElem, base_size: u64, j: u64) -> Result<FieldElem> {
        match arith::prime_power(base_size) {
            Some((p, d)) if p == self.p as u64 && self.k % d == 0 => {}
            _ => {
                return Err(Error::NotSubfield {
                    small: base_size,
                    big: self.size(),
                })
            }
        }
        if x.0 == 0 {
            return Ok(x);
        }
        let n = self.q as u64 - 1;
        let e = arith::pow_mod(base_size, j, n);
        Ok(self.pow(x, if e == 0 { n } else { e }))
    }

    pub fn is_square(&self, x: FieldElem) -> bool {
        if x.0 == 0 || self.p == 2 {
            return true;
        }
        self.pow(x, (self.q as u64 - 1) / 2) == FieldElem::ONE
    }

    /// The square root of `x` that comes first in canonical order
    /// (Tonelli–Shanks), or `None` for a non-square. Odd characteristic only.
    pub fn sqrt(&self, x: FieldElem) -> Option<FieldElem> {
        if x.0 == 0 {
            return Some(x);
        }
        if !self.is_square(x) {
            return None;
        }
        let q1 = self.q as u64 - 1;
        let s = q1.trailing_zeros();
        let odd = q1 >> s;
        let z = self
            .elements()
            .skip(1)
            .find(|&z| !self.is_square(z))
            .expect("odd-order field has non-squares");
        let mut m = s;
        let mut c = self.pow(z, odd);
        let mut t = self.pow(x, odd);
        let mut r = self.pow(x, odd.div_ceil(2));
        while t != FieldElem::ONE {
            let mut i = 0;
            let mut tt = t;
            while tt != FieldElem::ONE {
                tt = self.mul(tt, tt);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.mul(b, b);
            }
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r.min(self.neg(r)))
    }

    /// `(e, f)` with `e² + f² = -1`: `e` is the first element in canonical
    /// order for which `-1 - e²` is a square, `f` its first square root.
    pub fn sum_of_two_squares_minus_one(&self) -> Result<(FieldElem, FieldElem)> {
        if self.p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        let minus_one = self.neg(FieldElem::ONE);
        self.elements()
            .find_map(|e| {
                let target = self.sub(minus_one, self.mul(e, e));
                self.sqrt(target).map(|f| (e, f))
            })
            .ok_or_else(|| {
                Error::Precondition("-1 is a sum of two squares in odd characteristic".into())
            })
    }

    /// Text form: comma-separated little-endian coefficients, e.g. `1,2`.
    pub fn format_elem(&self, x: FieldElem) -> String {
        self.coeffs(x)
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let coeffs = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.from_coeffs(&coeffs)
    }

    /// Field descriptor `p^k/m_0,…,m_k` (modulus little-endian, leading 1 included).
    pub fn descriptor(&self) -> String {
        let m: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        format!("{}^{}/{}", self.p, self.k, m.join(","))
    }

    pub fn from_descriptor(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad field descriptor {s:?}"));
        let (pk, m) = s.split_once('/').ok_or_else(bad)?;
        let (p, k) = pk.split_once('^').ok_or_else(bad)?;
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let k: u32 = k.trim().parse().map_err(|_| bad())?;
        let m = m
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(p, k, Some(&m))
    }
}

// ---------------------------------------------------------------------------

/// An injective ring map GF(p^a) → GF(p^b), `a | b`.
#[derive(Debug, Clone)]
pub struct Embedding {
    small: Arc<FieldCtx>,
    big: Arc<FieldCtx>,
    /// Images of `X^j`, `j < a`, where `X` is the residue of the variable.
    images: Vec<FieldElem>,
}

impl Embedding {
    /// Sends `X` to the first root of the small modulus in the big field
    /// (candidates `0, γ^0, γ^1, …` with `γ` generating the order-`(p^a - 1)`
    /// subgroup).
    pub fn new(small: Arc<FieldCtx>, big: Arc<FieldCtx>) -> Result<Self> {
        if small.p != big.p || big.k % small.k != 0 {
            return Err(Error::NotSubfield {
                small: small.size(),
                big: big.size(),
            });
        }
        let eval = |y: FieldElem| {
            small.modulus.iter().rev().fold(FieldElem::ZERO, |acc, &c| {
                big.add(big.mul(acc, y), FieldElem(c))
            })
        };
        let gamma = big.pow(big.primitive, (big.size() - 1) / (small.size() - 1));
        let root = std::iter::once(FieldElem::ZERO)
            .chain((0..small.size() - 1).map(|i| big.pow(gamma, i)))
            .find(|&y| eval(y).is_zero())
            .ok_or(Error::NotSubfield {
                small: small.size(),
                big: big.size(),
            })?;
        let images = (0..small.k as u64).map(|j| big.pow(root, j)).collect();
        Ok(Embedding { small, big, images })
    }

    pub fn small(&self) -> &Arc<FieldCtx> {
        &self.small
    }

    pub fn big(&self) -> &Arc<FieldCtx> {
        &self.big
    }

    pub fn map(&self, x: FieldElem) -> FieldElem {
        self.small
            .coeffs(x)
            .iter()
            .zip(&self.images)
            .fold(FieldElem::ZERO, |acc, (&c, &img)| {
                self.big.add(acc, self.big.scale(c, img))
            })
    }

    /// Inverse image of `y`, if `y` lies in the embedded subfield.
    pub fn preimage(&self, y: FieldElem) -> Option<FieldElem> {
        if self.small.size() <= 1 << 16 {
            return self.small.elements().find(|&x| self.map(x) == y);
        }
        let gfp = FieldCtx::prime(self.small.p()).ok()?;
        let k_small = self.small.k as usize;
        let k_big = self.big.k as usize;
        let a: Vec<Vec<FieldElem>> = (0..k_big)
            .map(|r| {
                (0..k_small)
                    .map(|j| FieldElem(self.big.coeffs(self.images[j])[r]))
                    .collect()
            })
            .collect();
        let b: Vec<FieldElem> = self.big.coeffs(y).into_iter().map(FieldElem).collect();
        let c = linalg::solve(&gfp, &a, &b)?;
        let coeffs: Vec<u64> = c.iter().map(|x| x.0 as u64).collect();
        self.small.from_coeffs(&coeffs).ok()
    }
}

/// GF(q^s) viewed as an `s`-dimensional GF(q)-space with basis
/// `1, θ, …, θ^(s-1)`, `θ` the top field's primitive element.
#[derive(Debug, Clone)]
pub struct Extension {
    embedding: Embedding,
    degree: usize,
    /// Inverse of the GF(p)-matrix whose rows are `θ^i · X^j`.
    coord_inverse: Vec<Vec<FieldElem>>,
}

impl Extension {
    pub fn new(base: Arc<FieldCtx>, top: Arc<FieldCtx>) -> Result<Self> {
        let embedding = Embedding::new(base.clone(), top.clone())?;
        let kb = base.k as usize;
        let degree = (top.k / base.k) as usize;
        let gfp = FieldCtx::prime(base.p())?;
        let theta = top.primitive;
        let mut rows = Vec::with_capacity(degree * kb);
        for i in 0..degree {
            let ti = top.pow(theta, i as u64);
            for img in &embedding.images {
                let v = top.mul(ti, *img);
                rows.push(top.coeffs(v).into_iter().map(FieldElem).collect::<Vec<_>>());
            }
        }
        let coord_inverse = linalg::invert(&gfp, &rows).ok_or(Error::Singular)?;
        Ok(Extension {
            embedding,
            degree,
            coord_inverse,
        })
    }

    pub fn base(&self) -> &Arc<FieldCtx> {
        &self.embedding.small
    }

    pub fn top(&self) -> &Arc<FieldCtx> {
        &self.embedding.big
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    /// `s = [GF(q^s) : GF(q)]`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coordinates of `y` over the base field in the basis `θ^i`.
    pub fn coords(&self, y: FieldElem) -> Vec<FieldElem> {
        let top = self.top();
        let base = self.base();
        let p = base.p as u64;
        let digits = top.coeffs(y);
        let n = digits.len();
        let mut c = vec![0u64; n];
        for (r, &d) in digits.iter().enumerate() {
            if d == 0 {
                continue;
            }
            for (col, slot) in c.iter_mut().enumerate() {
                *slot = (*slot + d as u64 * self.coord_inverse[r][col].0 as u64) % p;
            }
        }
        let kb = base.k as usize;
        c.chunks(kb)
            .map(|chunk| base.from_coeffs(chunk).expect("reduced coefficients"))
            .collect()
    }

    /// Row-major `s×s` matrix over the base field of `v ↦ v·α` (row vectors).
    pub fn mult_matrix(&self, alpha: FieldElem) -> Vec<FieldElem> {
        let top = self.top();
        let theta = top.primitive;
        (0..self.degree)
            .flat_map(|i| self.coords(top.mul(top.pow(theta, i as u64), alpha)))
            .collect()
    }

    /// Row-major `s×s` matrix of the `q`-power Frobenius map.
    pub fn frobenius_matrix(&self) -> Vec<FieldElem> {
        let top = self.top();
        let theta = top.primitive;
        let q = self.base().size();
        (0..self.degree)
            .flat_map(|i| self.coords(top.pow(top.pow(theta, i as u64), q)))
            .collect()
    }
}
