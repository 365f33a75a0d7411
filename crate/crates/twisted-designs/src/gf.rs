//! Exact arithmetic in GF(p^e) for p ∈ {2, 3} with odd exponent e = 2n+1.
//!
//! These are the fields carrying the Suzuki groups Sz(2^{2n+1}) and the small
//! Ree groups over 3^{2n+1}, together with the twist endomorphism x ↦ x^m,
//! m = p^{n+1}, whose square is the Frobenius x ↦ x^p.
//!
//! Elements are dense coefficient vectors in a fixed modulus basis, packed
//! into a `u16` in base p. All binary operations are table-driven; the shipped
//! fields are tiny (q ≤ 243), so the tables are built eagerly at construction
//! and the modulus is re-checked for irreducibility every time.

use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Orders supported per characteristic. Covers every scale the constructions
/// and the sieve replays run at, and keeps exhaustive self-tests cheap.
pub const SUPPORTED: [(u16, u8); 6] = [(3, 1), (3, 3), (3, 5), (2, 3), (2, 5), (2, 7)];

/// Default cap on `enumerate`.
pub const DEFAULT_ENUM_CAP: u32 = 1 << 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GfError {
    #[error("unsupported field GF({p}^{e}); supported: 3^1, 3^3, 3^5, 2^3, 2^5, 2^7")]
    Unsupported { p: u16, e: u8 },
    #[error("no supported field of order {0}")]
    UnsupportedOrder(u32),
    #[error("modulus {0} is not irreducible over GF({1})")]
    ReducibleModulus(String, u16),
    #[error("field mismatch: GF({0}) element combined with GF({1}) element")]
    SpecMismatch(u32, u32),
    #[error("zero is not invertible")]
    ZeroInverse,
    #[error("zero cannot be raised to a negative power")]
    ZeroNegativePower,
    #[error("field order {q} exceeds enumeration cap {cap}")]
    CapExceeded { q: u32, cap: u32 },
}

/// Identifies the (p, e) pair an element belongs to. Packed so elements stay
/// `Copy` without holding a reference to their field.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldId {
    pub p: u16,
    pub e: u8,
}

impl FieldId {
    pub fn q(&self) -> u32 {
        (self.p as u32).pow(self.e as u32)
    }
}

/// An element of GF(p^e): e coefficients over GF(p) packed base-p, least
/// significant digit = constant term.
#[derive(Copy, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    repr: u16,
    field: FieldId,
}

impl FieldElement {
    pub fn repr(&self) -> u16 {
        self.repr
    }

    pub fn field(&self) -> FieldId {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.repr == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({}^{})", self.repr, self.field.p, self.field.e)
    }
}

/// A fully tabled finite field GF(p^e), e = 2n+1 odd.
pub struct FieldSpec {
    id: FieldId,
    p: u16,
    n: u8,
    e: u8,
    q: u32,
    /// Twist degree m = p^{n+1}; m² = pq, so the twist applied twice is the
    /// Frobenius x ↦ x^p.
    m: u32,
    /// Modulus coefficients c₀..c_{e-1} of x^i; the leading x^e is implicit.
    modulus: Vec<u8>,
    mul_t: Vec<u16>,
    inv_t: Vec<u16>,
    twist_t: Vec<u16>,
}

/// Fixed moduli per (p, e): the classical primitive polynomials
/// x+1, x³+2x+1, x⁵+2x+1 (p = 3) and x³+x+1, x⁵+x²+1, x⁷+x+1 (p = 2).
/// Pinning them makes point labelings bit-exact across runs and platforms.
fn fixed_modulus(p: u16, e: u8) -> Option<Vec<u8>> {
    match (p, e) {
        (3, 1) => Some(vec![1]),
        (3, 3) => Some(vec![1, 2, 0]),
        (3, 5) => Some(vec![1, 2, 0, 0, 0]),
        (2, 3) => Some(vec![1, 1, 0]),
        (2, 5) => Some(vec![1, 0, 1, 0, 0]),
        (2, 7) => Some(vec![1, 1, 0, 0, 0, 0, 0]),
        _ => None,
    }
}

impl FieldSpec {
    /// The field GF(p^{2n+1}).
    pub fn new(p: u16, n: u8) -> Result<Arc<FieldSpec>, GfError> {
        let e = 2 * n + 1;
        let modulus = fixed_modulus(p, e).ok_or(GfError::Unsupported { p, e })?;
        Self::with_modulus(p, n, modulus)
    }

    /// The supported field of the given order, if any.
    pub fn for_order(q: u32) -> Result<Arc<FieldSpec>, GfError> {
        for (p, e) in SUPPORTED {
            if (p as u32).pow(e as u32) == q {
                return Self::new(p, (e - 1) / 2);
            }
        }
        Err(GfError::UnsupportedOrder(q))
    }

    fn with_modulus(p: u16, n: u8, modulus: Vec<u8>) -> Result<Arc<FieldSpec>, GfError> {
        let e = 2 * n + 1;
        let q = (p as u32).pow(e as u32);
        if !SUPPORTED.contains(&(p, e)) {
            return Err(GfError::Unsupported { p, e });
        }
        if !poly_irreducible(p, &modulus) {
            return Err(GfError::ReducibleModulus(format!("{modulus:?}"), p));
        }
        let mut spec = FieldSpec {
            id: FieldId { p, e },
            p,
            n,
            e,
            q,
            m: (p as u32).pow(n as u32 + 1),
            modulus,
            mul_t: Vec::new(),
            inv_t: Vec::new(),
            twist_t: Vec::new(),
        };
        spec.build_tables();
        Ok(Arc::new(spec))
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let mut mul = vec![0u16; q * q];
        for a in 0..q as u16 {
            for b in a..q as u16 {
                let v = self.mul_poly(a, b);
                mul[a as usize * q + b as usize] = v;
                mul[b as usize * q + a as usize] = v;
            }
        }
        self.mul_t = mul;
        let mut inv = vec![0u16; q];
        for a in 1..q as u16 {
            // a^(q-2)
            inv[a as usize] = self.pow_raw_internal(a, self.q as u64 - 2);
        }
        self.inv_t = inv;
        let mut tw = vec![0u16; q];
        for a in 0..q as u16 {
            tw[a as usize] = self.pow_raw_internal(a, self.m as u64);
        }
        self.twist_t = tw;
    }

    fn digits(&self, mut a: u16) -> Vec<u8> {
        let mut d = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            d.push((a % self.p) as u8);
            a /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u8]) -> u16 {
        let mut v = 0u32;
        for &c in d.iter().rev() {
            v = v * self.p as u32 + c as u32;
        }
        v as u16
    }

    fn mul_poly(&self, a: u16, b: u16) -> u16 {
        let (p, e) = (self.p as i32, self.e as usize);
        let da = self.digits(a);
        let db = self.digits(b);
        let mut res = vec![0i32; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            if x != 0 {
                for (j, &y) in db.iter().enumerate() {
                    res[i + j] = (res[i + j] + x as i32 * y as i32) % p;
                }
            }
        }
        for i in (e..res.len()).rev() {
            let c = res[i];
            if c != 0 {
                res[i] = 0;
                for (j, &mj) in self.modulus.iter().enumerate() {
                    res[i - e + j] = ((res[i - e + j] - c * mj as i32) % p + p) % p;
                }
            }
        }
        let digits: Vec<u8> = res[..e].iter().map(|&x| x as u8).collect();
        self.undigits(&digits)
    }

    fn pow_raw_internal(&self, a: u16, mut k: u64) -> u16 {
        let mut r = 1u16;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul_poly_or_table(r, base);
            }
            base = self.mul_poly_or_table(base, base);
            k >>= 1;
        }
        r
    }

    fn mul_poly_or_table(&self, a: u16, b: u16) -> u16 {
        if self.mul_t.is_empty() {
            self.mul_poly(a, b)
        } else {
            self.mul_raw(a, b)
        }
    }

    pub fn id(&self) -> FieldId {
        self.id
    }

    pub fn p(&self) -> u16 {
        self.p
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn e(&self) -> u8 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Twist degree m = p^{n+1}.
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { repr: 0, field: self.id }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { repr: 1, field: self.id }
    }

    /// Element from its packed representation (base-p digit vector as integer).
    pub fn element(&self, repr: u16) -> FieldElement {
        assert!((repr as u32) < self.q, "representation out of range");
        FieldElement { repr, field: self.id }
    }

    /// The residue class of the polynomial x. For the shipped moduli this is a
    /// primitive element (checked in tests by exhaustive order computation).
    pub fn generator(&self) -> FieldElement {
        if self.e == 1 {
            // prime field: 2 generates GF(3)^*
            self.element(2)
        } else {
            self.element(self.p)
        }
    }

    fn check(&self, x: FieldElement) -> Result<(), GfError> {
        if x.field != self.id {
            return Err(GfError::SpecMismatch(x.field.q(), self.q));
        }
        Ok(())
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement, GfError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.element(self.add_raw(x.repr, y.repr)))
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement, GfError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.element(self.add_raw(x.repr, self.neg_raw(y.repr))))
    }

    pub fn neg(&self, x: FieldElement) -> Result<FieldElement, GfError> {
        self.check(x)?;
        Ok(self.element(self.neg_raw(x.repr)))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement, GfError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.element(self.mul_raw(x.repr, y.repr)))
    }

    /// Multiplicative inverse; zero input signals non-invertibility.
    pub fn inv(&self, x: FieldElement) -> Result<FieldElement, GfError> {
        self.check(x)?;
        if x.repr == 0 {
            return Err(GfError::ZeroInverse);
        }
        Ok(self.element(self.inv_t[x.repr as usize]))
    }

    /// x^k with signed exponent; negative exponents go through the inverse.
    pub fn pow(&self, x: FieldElement, k: i64) -> Result<FieldElement, GfError> {
        self.check(x)?;
        if x.repr == 0 && k < 0 {
            return Err(GfError::ZeroNegativePower);
        }
        Ok(self.element(self.pow_raw(x.repr, k)))
    }

    /// The twist endomorphism x ↦ x^m.
    pub fn twist(&self, x: FieldElement) -> Result<FieldElement, GfError> {
        self.check(x)?;
        Ok(self.element(self.twist_raw(x.repr)))
    }

    /// All q elements: 0 first, then ascending in the packed representation,
    /// which is lexicographic on the coefficient string c_{e-1}…c₁c₀.
    pub fn enumerate(&self, cap: u32) -> Result<Vec<FieldElement>, GfError> {
        if self.q > cap {
            return Err(GfError::CapExceeded { q: self.q, cap });
        }
        Ok((0..self.q as u16).map(|r| self.element(r)).collect())
    }

    /// Coefficient string "c_{e-1}…c₁c₀", most significant first.
    pub fn render(&self, x: FieldElement) -> String {
        let d = self.digits(x.repr);
        d.iter().rev().map(|c| char::from(b'0' + c)).collect()
    }

    // ---- raw (table) layer used by the matrix/permutation engines ----

    #[inline]
    pub fn add_raw(&self, a: u16, b: u16) -> u16 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a as u32, b as u32);
        let mut out = 0u32;
        let mut mult = 1u32;
        for _ in 0..self.e {
            out += ((a + b) % 3) * mult;
            a /= 3;
            b /= 3;
            mult *= 3;
        }
        out as u16
    }

    #[inline]
    pub fn neg_raw(&self, a: u16) -> u16 {
        if self.p == 2 {
            return a;
        }
        let mut a = a as u32;
        let mut out = 0u32;
        let mut mult = 1u32;
        for _ in 0..self.e {
            out += ((3 - a % 3) % 3) * mult;
            a /= 3;
            mult *= 3;
        }
        out as u16
    }

    #[inline]
    pub fn mul_raw(&self, a: u16, b: u16) -> u16 {
        self.mul_t[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn inv_raw(&self, a: u16) -> u16 {
        debug_assert!(a != 0);
        self.inv_t[a as usize]
    }

    #[inline]
    pub fn twist_raw(&self, a: u16) -> u16 {
        self.twist_t[a as usize]
    }

    pub fn pow_raw(&self, a: u16, k: i64) -> u16 {
        if k < 0 {
            debug_assert!(a != 0);
            return self.pow_raw_internal(self.inv_t[a as usize], (-k) as u64);
        }
        self.pow_raw_internal(a, k as u64)
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.e)
    }
}

/// Irreducibility over GF(p) by exhaustive trial division up to degree e/2.
/// The shipped degrees are ≤ 7, so the candidate space is tiny.
fn poly_irreducible(p: u16, modulus: &[u8]) -> bool {
    let e = modulus.len();
    if e == 1 {
        return true; // linear
    }
    // full coefficient vector of the monic modulus, degree e
    let mut f: Vec<i32> = modulus.iter().map(|&c| c as i32).collect();
    f.push(1);
    let p = p as i32;
    for d in 1..=e / 2 {
        // monic candidates of degree d: d free coefficients
        let count = (p as u64).pow(d as u32);
        for mut idx in 0..count {
            let mut g = vec![0i32; d + 1];
            g[d] = 1;
            for gi in g.iter_mut().take(d) {
                *gi = (idx % p as u64) as i32;
                idx /= p as u64;
            }
            if poly_rem_is_zero(&f, &g, p) {
                return false;
            }
        }
    }
    true
}

/// Remainder of f by a monic g over GF(p), testing for exact divisibility.
fn poly_rem_is_zero(f: &[i32], g: &[i32], p: i32) -> bool {
    let mut r: Vec<i32> = f.iter().map(|&x| ((x % p) + p) % p).collect();
    let dg = g.len() - 1;
    while r.len() >= g.len() {
        let dr = r.len() - 1;
        let lead = r[dr];
        if lead != 0 {
            for (j, &gj) in g.iter().enumerate() {
                let pos = dr - dg + j;
                r[pos] = ((r[pos] - lead * gj) % p + p) % p;
            }
        }
        r.pop();
    }
    r.iter().all(|&x| x == 0)
}
