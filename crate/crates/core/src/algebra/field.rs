//! Prime-power fields `F_q`, `q = p^m`, in a polynomial basis over `F_p`.
//!
//! An element is packed into an integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`
//! holding its coefficient vector modulo a monic irreducible polynomial of
//! degree `m`. Multiplication goes through discrete log / antilog tables
//! built once per field.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps a packed representation without range checking.
    ///
    /// Use [`FieldSpec::element`] when the value comes from outside.
    pub const fn from_rep_unchecked(rep: u32) -> Self {
        FieldElement(rep)
    }

    pub const fn rep(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct FieldData {
    p: u32,
    m: u32,
    q: u32,
    /// Low-to-high coefficients including the leading 1; empty for prime fields.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A validated finite field. Cheap to clone; equality compares `(p, m, modulus)`.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldData>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({})", self.serialize())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// Builds `F_{p^m}`. Without a modulus, the smallest monic irreducible of
    /// degree `m` is used, ordering candidates by their packed integer value
    /// (constant coefficient least significant).
    ///
    /// A supplied modulus lists coefficients low to high and must include the
    /// leading 1, so it has `m + 1` entries. It is ignored when `m == 1`
    /// except that it must then be empty or a monic linear polynomial.
    pub fn new(p: u64, m: u32, modulus: Option<&[u64]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
        if q > MAX_FIELD_ORDER as u128 {
            return Err(Error::FieldTooLarge { p, m });
        }
        let p = p as u32;
        let modulus = if m == 1 {
            if let Some(coeffs) = modulus {
                if !coeffs.is_empty() && coeffs.len() != 2 {
                    return Err(Error::DegreeMismatch {
                        degree: m,
                        expected: 2,
                        got: coeffs.len(),
                    });
                }
            }
            Vec::new()
        } else {
            match modulus {
                Some(coeffs) => {
                    let expected = m as usize + 1;
                    if coeffs.len() != expected {
                        return Err(Error::DegreeMismatch {
                            degree: m,
                            expected,
                            got: coeffs.len(),
                        });
                    }
                    let coeffs = coeffs
                        .iter()
                        .map(|&c| {
                            if c >= p as u64 {
                                Err(Error::ElementOutOfRange { value: c, q: p })
                            } else {
                                Ok(c as u32)
                            }
                        })
                        .collect::<Result<Vec<_>>>()?;
                    if coeffs[m as usize] != 1 {
                        return Err(Error::NotMonic);
                    }
                    if !prime_poly::is_irreducible(&coeffs, p) {
                        return Err(Error::Reducible(p));
                    }
                    coeffs
                }
                None => prime_poly::smallest_irreducible(m as usize, p),
            }
        };
        Ok(Self::build(p, m, q as u32, modulus))
    }

    /// `F_p` for a prime `p`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    fn build(p: u32, m: u32, q: u32, modulus: Vec<u32>) -> Self {
        let mut data = FieldData {
            p,
            m,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let order = q - 1;
        // Find the smallest generator of the multiplicative group.
        let factors = prime_factors(order as u64);
        let generator = (1..q)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&l| slow_pow(&data, g, (order as u64 / l) as u32) != 1)
            })
            .expect("multiplicative group of a field is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for e in 0..order {
            exp.push(x);
            log[x as usize] = e;
            x = slow_mul(&data, x, generator);
        }
        data.exp = exp;
        data.log = log;
        FieldSpec(Arc::new(data))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Low-to-high modulus coefficients (empty for prime fields).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn element(&self, rep: u64) -> Result<FieldElement> {
        if rep >= self.0.q as u64 {
            return Err(Error::ElementOutOfRange {
                value: rep,
                q: self.0.q,
            });
        }
        Ok(FieldElement(rep as u32))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.0.q).map(FieldElement)
    }

    /// Embeds an integer via its residue mod `p`.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.0.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let d = &*self.0;
        if d.p == 2 {
            FieldElement(a.0 ^ b.0)
        } else if d.m == 1 {
            FieldElement((a.0 + b.0) % d.p)
        } else {
            FieldElement(digitwise(d, a.0, b.0, |x, y| (x + y) % d.p))
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let d = &*self.0;
        if d.p == 2 || a.0 == 0 {
            a
        } else if d.m == 1 {
            FieldElement(d.p - a.0)
        } else {
            FieldElement(digitwise(d, a.0, 0, |x, _| (d.p - x) % d.p))
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let d = &*self.0;
        let order = d.q - 1;
        let e = d.log[a.0 as usize] + d.log[b.0 as usize];
        let e = if e >= order { e - order } else { e };
        FieldElement(d.exp[e as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let d = &*self.0;
        let order = d.q - 1;
        let e = (order - d.log[a.0 as usize]) % order;
        Ok(FieldElement(d.exp[e as usize]))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let d = &*self.0;
        let order = (d.q - 1) as u64;
        let idx = (d.log[a.0 as usize] as u64 * (e % order)) % order;
        FieldElement(d.exp[idx as usize])
    }

    /// `"p m modulus_coeffs..."`, coefficients low to high.
    pub fn serialize(&self) -> String {
        let mut s = format!("{} {}", self.0.p, self.0.m);
        for c in &self.0.modulus {
            s.push(' ');
            s.push_str(&c.to_string());
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let nums = text
            .split_whitespace()
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|e| Error::Parse(format!("field spec {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if nums.len() < 2 {
            return Err(Error::Parse(format!(
                "field spec {text:?} needs at least p and m"
            )));
        }
        let m = u32::try_from(nums[1]).map_err(|_| Error::Parse("degree too large".into()))?;
        let modulus = &nums[2..];
        Self::new(
            nums[0],
            m,
            if modulus.is_empty() {
                None
            } else {
                Some(modulus)
            },
        )
    }
}

fn digitwise(d: &FieldData, a: u32, b: u32, f: impl Fn(u32, u32) -> u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut place = 1;
    for _ in 0..d.m {
        out += f(a % d.p, b % d.p) * place;
        a /= d.p;
        b /= d.p;
        place *= d.p;
    }
    out
}

fn unpack(d: &FieldData, mut a: u32) -> Vec<u32> {
    (0..d.m)
        .map(|_| {
            let c = a % d.p;
            a /= d.p;
            c
        })
        .collect()
}

fn pack(d: &FieldData, coeffs: &[u32]) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * d.p + c)
}

/// Schoolbook product reduced modulo the field polynomial. Only used to
/// build the log tables.
fn slow_mul(d: &FieldData, a: u32, b: u32) -> u32 {
    if d.m == 1 {
        return ((a as u64 * b as u64) % d.p as u64) as u32;
    }
    let m = d.m as usize;
    let (a, b) = (unpack(d, a), unpack(d, b));
    let mut prod = vec![0u32; 2 * m - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % d.p;
        }
    }
    for top in (m..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for k in 0..=m {
            let sub = c * d.modulus[k] % d.p;
            let idx = top - m + k;
            prod[idx] = (prod[idx] + d.p - sub) % d.p;
        }
    }
    pack(d, &prod[..m])
}

fn slow_pow(d: &FieldData, a: u32, mut e: u32) -> u32 {
    let mut base = a;
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(d, acc, base);
        }
        base = slow_mul(d, base, base);
        e >>= 1;
    }
    acc
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Irreducibility over the prime field `F_p`, polynomials as low-to-high
/// coefficient vectors.
pub(crate) mod prime_poly {
    /// Remainder of `a` modulo a monic `b`, as `deg b` coefficients.
    fn rem_monic(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let db = b.len() - 1;
        let mut r = a.to_vec();
        for top in (db..r.len()).rev() {
            let c = r[top];
            if c == 0 {
                continue;
            }
            for (k, &bk) in b.iter().enumerate() {
                let idx = top - db + k;
                r[idx] = (r[idx] + p - c * bk % p) % p;
            }
        }
        r.truncate(db);
        r
    }

    /// Exhaustive trial division by every monic polynomial of degree
    /// `1..=deg/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.iter().rposition(|&c| c != 0).unwrap_or(0);
        let f = &f[..=deg];
        if deg == 0 {
            return false;
        }
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for low in 0..count {
                let mut g = Vec::with_capacity(d + 1);
                let mut x = low;
                for _ in 0..d {
                    g.push((x % p as u64) as u32);
                    x /= p as u64;
                }
                g.push(1);
                let r = rem_monic(f, &g, p);
                if r.iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }

    pub fn smallest_irreducible(m: usize, p: u32) -> Vec<u32> {
        let count = (p as u64).pow(m as u32);
        for low in 0..count {
            let mut f = Vec::with_capacity(m + 1);
            let mut x = low;
            for _ in 0..m {
                f.push((x % p as u64) as u32);
                x /= p as u64;
            }
            f.push(1);
            if is_irreducible(&f, p) {
                return f;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }
}
