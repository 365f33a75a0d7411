//! Matrix models: 7×7 generators of ²G₂(q) and 4×4 generators of ²B₂(q).
//!
//! The unipotent entries are closed-form polynomials in (α, β, γ) and their
//! twists, solved once from two constraints that pin them completely: every
//! entry must carry the torus weight dictated by the diagonal below, and the
//! map must be a homomorphism for the triple law. The torus is
//!
//!   h(k) = diag(k^{−(m+2)}, k^{−(m+1)}, k^{−1}, 1, k, k^{m+1}, k^{m+2})
//!
//! which is the unique diagonal shape (up to reordering) realizing the
//! K-action (α,β,γ)^k = (kα, k^{1+m}β, k^{2+m}γ) on a faithful 7-dimensional
//! module. None of this is trusted as shipped: `build_generators` re-runs the
//! full validation gate (τ² = 1, τ inverts K, K-conjugation identity,
//! homomorphism against the abstract oracle) and refuses to hand out
//! generators that fail any part of it.

use crate::gf::FieldSpec;
use crate::unipotent::{
    self, Family, ReeTriple, SuzukiPair, UnipotentError,
};
use std::fmt;
use std::ops::Range;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GateError {
    #[error(transparent)]
    Unipotent(#[from] UnipotentError),
    #[error(transparent)]
    Field(#[from] crate::gf::GfError),
    #[error("generator validation gate failed: {0}")]
    GateFailed(String),
}

/// Square matrix over a fixed field, dimension 4 or 7, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    pub n: usize,
    a: [u16; 49],
}

impl Mat {
    pub fn zero(n: usize) -> Mat {
        Mat { n, a: [0; 49] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n);
        for i in 0..n {
            m.a[i * n + i] = 1;
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u16 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u16) {
        self.a[i * self.n + j] = v;
    }

    pub fn mul(&self, f: &FieldSpec, other: &Mat) -> Mat {
        debug_assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Mat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let x = self.get(i, k);
                if x != 0 {
                    for j in 0..n {
                        let y = other.get(k, j);
                        if y != 0 {
                            let cur = out.get(i, j);
                            out.set(i, j, f.add_raw(cur, f.mul_raw(x, y)));
                        }
                    }
                }
            }
        }
        out
    }

    /// Image of a column vector.
    pub fn apply(&self, f: &FieldSpec, v: &[u16]) -> Vec<u16> {
        let n = self.n;
        let mut out = vec![0u16; n];
        for (j, &vj) in v.iter().enumerate() {
            if vj != 0 {
                for i in 0..n {
                    let x = self.get(i, j);
                    if x != 0 {
                        out[i] = f.add_raw(out[i], f.mul_raw(x, vj));
                    }
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.n)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat{}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                write!(f, "{:4}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug)]
pub enum GenLabel {
    /// x(α, β, γ) or x(a, b).
    Unipotent(String),
    /// h(t) for the torus parameter t.
    Torus(String),
    /// The Weyl involution τ.
    Weyl,
}

#[derive(Clone)]
pub struct MatrixGenerator {
    pub mat: Mat,
    pub label: GenLabel,
}

/// Validated generator package for one group.
pub struct Generators {
    pub family: Family,
    pub field: Arc<FieldSpec>,
    pub mats: Vec<MatrixGenerator>,
    /// Indices of the α-coordinate unipotent generators x(b,0,0) / x(b,0).
    pub alpha: Range<usize>,
    /// β-coordinate generators x(0,b,0); for Suzuki these are the Z(Q)
    /// generators x(0,b).
    pub beta: Range<usize>,
    /// γ-coordinate generators x(0,0,b); empty for Suzuki.
    pub gamma: Range<usize>,
    pub torus: usize,
    pub weyl: usize,
}

impl Generators {
    pub fn dim(&self) -> usize {
        match self.family {
            Family::Ree => 7,
            Family::Suzuki => 4,
        }
    }

    /// All unipotent generator indices.
    pub fn unipotent_range(&self) -> Range<usize> {
        self.alpha.start..self.gamma.end.max(self.beta.end)
    }

    /// Point-stabilizer generators: unipotents plus the torus.
    pub fn stabilizer_indices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.unipotent_range().collect();
        v.push(self.torus);
        v
    }
}

/// 7×7 matrix of the Ree unipotent x(α, β, γ).
pub fn ree_matrix(f: &FieldSpec, x: &ReeTriple) -> Mat {
    let m = f.m() as i64;
    let a = x.alpha.repr();
    let b = x.beta.repr();
    let c = x.gamma.repr();
    let mul = |x: u16, y: u16| f.mul_raw(x, y);
    let neg = |x: u16| f.neg_raw(x);
    let pw = |x: u16, k: i64| f.pow_raw(x, k);

    let am = f.twist_raw(a); // α^m
    let bm = f.twist_raw(b); // β^m
    let cm = f.twist_raw(c); // γ^m

    let mut t = Mat::identity(7);
    let mut set = |i: usize, j: usize, v: u16| t.set(i - 1, j - 1, v);

    set(1, 2, a);
    set(1, 3, neg(b));
    set(1, 4, f.add_raw(neg(c), mul(a, b)));
    // −β^m − αγ − α^{m+3}
    set(1, 5, neg(f.add_raw(f.add_raw(bm, mul(a, c)), pw(a, m + 3))));
    // γ^m + βγ + αβ² + α^{2m+3}
    set(
        1,
        6,
        f.add_raw(
            f.add_raw(cm, mul(b, c)),
            f.add_raw(mul(a, mul(b, b)), pw(a, 2 * m + 3)),
        ),
    );
    // −γ² − αβγ − ββ^m − α^{m+3}β + αγ^m + α^{2m+4}
    let mut e17 = neg(mul(c, c));
    e17 = f.add_raw(e17, neg(mul(a, mul(b, c))));
    e17 = f.add_raw(e17, neg(mul(b, bm)));
    e17 = f.add_raw(e17, neg(mul(pw(a, m + 3), b)));
    e17 = f.add_raw(e17, mul(a, cm));
    e17 = f.add_raw(e17, pw(a, 2 * m + 4));
    set(1, 7, e17);

    set(2, 3, am);
    set(2, 4, f.add_raw(b, pw(a, m + 1)));
    set(2, 5, neg(f.add_raw(c, pw(a, m + 2))));
    // β² − α^mγ − α^{m+1}β
    set(
        2,
        6,
        f.add_raw(
            mul(b, b),
            neg(f.add_raw(mul(am, c), mul(pw(a, m + 1), b))),
        ),
    );
    // γ^m − βγ − α^{m+1}γ − α^{m+2}β + α^mβ^m − α^{2m+3}
    let mut e27 = cm;
    e27 = f.add_raw(e27, neg(mul(b, c)));
    e27 = f.add_raw(e27, neg(mul(pw(a, m + 1), c)));
    e27 = f.add_raw(e27, neg(mul(pw(a, m + 2), b)));
    e27 = f.add_raw(e27, mul(am, bm));
    e27 = f.add_raw(e27, neg(pw(a, 2 * m + 3)));
    set(2, 7, e27);

    set(3, 4, a);
    set(3, 5, neg(mul(a, a)));
    set(3, 6, neg(f.add_raw(c, mul(a, b))));
    // β^m − αγ − α²β + α^{m+3}
    set(
        3,
        7,
        f.add_raw(
            f.add_raw(bm, pw(a, m + 3)),
            neg(f.add_raw(mul(a, c), mul(mul(a, a), b))),
        ),
    );

    set(4, 5, a);
    set(4, 6, neg(b));
    set(4, 7, f.add_raw(neg(c), mul(a, b)));

    set(5, 6, am);
    set(5, 7, f.add_raw(b, pw(a, m + 1)));

    set(6, 7, a);
    t
}

/// Torus element h(k) with the weight diagonal (−(m+2), −(m+1), −1, 0, 1, m+1, m+2).
pub fn ree_torus_matrix(f: &FieldSpec, k: u16) -> Mat {
    debug_assert!(k != 0);
    let m = f.m() as i64;
    let exps = [-(m + 2), -(m + 1), -1, 0, 1, m + 1, m + 2];
    let mut t = Mat::zero(7);
    for (i, &e) in exps.iter().enumerate() {
        t.set(i, i, f.pow_raw(k, e));
    }
    t
}

/// The Weyl involution: antidiagonal with a −1 in the middle (det 1, τ² = 1).
pub fn ree_weyl_matrix(f: &FieldSpec) -> Mat {
    let mut t = Mat::zero(7);
    for i in 0..7 {
        t.set(i, 6 - i, if i == 3 { f.neg_raw(1) } else { 1 });
    }
    t
}

/// 4×4 matrix of the Suzuki unipotent x(a, b).
pub fn suzuki_matrix(f: &FieldSpec, x: &SuzukiPair) -> Mat {
    let th = f.m() as i64;
    let a = x.a.repr();
    let b = x.b.repr();
    let mut t = Mat::identity(4);
    let ath = f.twist_raw(a);
    t.set(0, 1, a);
    t.set(0, 2, f.add_raw(f.mul_raw(ath, a), b)); // a^{1+θ} + b
    // a^{2+θ} + ab + b^θ
    let mut e14 = f.mul_raw(f.mul_raw(ath, a), a);
    e14 = f.add_raw(e14, f.mul_raw(a, b));
    e14 = f.add_raw(e14, f.twist_raw(b));
    t.set(0, 3, e14);
    t.set(1, 2, ath);
    t.set(1, 3, b);
    t.set(2, 3, a);
    t
}

/// Suzuki torus: diag(t^{−(σ+1)}, t^{−σ}, t^σ, t^{σ+1}) with σ = m/2 = 2ⁿ.
pub fn suzuki_torus_matrix(f: &FieldSpec, t: u16) -> Mat {
    debug_assert!(t != 0);
    let s = (f.m() / 2) as i64;
    let exps = [-(s + 1), -s, s, s + 1];
    let mut out = Mat::zero(4);
    for (i, &e) in exps.iter().enumerate() {
        out.set(i, i, f.pow_raw(t, e));
    }
    out
}

pub fn suzuki_weyl_matrix(_f: &FieldSpec) -> Mat {
    let mut t = Mat::zero(4);
    for i in 0..4 {
        t.set(i, 3 - i, 1);
    }
    t
}

/// Matrix image of an abstract unipotent element; the homomorphism property
/// against the abstract law is part of the validation gate.
pub fn map_unipotent_ree(f: &FieldSpec, x: &ReeTriple) -> Mat {
    ree_matrix(f, x)
}

pub fn map_unipotent_suzuki(f: &FieldSpec, x: &SuzukiPair) -> Mat {
    suzuki_matrix(f, x)
}

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Build and gate-check the generator set for a family over the given field.
///
/// Generator order: α-coordinate unipotents over the field basis, then β,
/// then (Ree only) γ, then the torus h(g) for the primitive generator g,
/// then τ. This order is part of the deterministic point labeling.
pub fn build_generators(field: &Arc<FieldSpec>, family: Family) -> Result<Generators, GateError> {
    if field.p() != family.characteristic() {
        return Err(GateError::Unipotent(UnipotentError::WrongCharacteristic(
            family,
            family.characteristic(),
            field.p(),
        )));
    }
    let mut mats = Vec::new();
    let (alpha, beta, gamma);
    match family {
        Family::Ree => {
            let gens = unipotent::ree_coordinate_generators(field, u32::MAX)?;
            let e = field.e() as usize;
            for (i, g) in gens.iter().enumerate() {
                let which = ["x(b,0,0)", "x(0,b,0)", "x(0,0,b)"][i / e];
                mats.push(MatrixGenerator {
                    mat: ree_matrix(field, g),
                    label: GenLabel::Unipotent(format!("{which} b=x^{}", i % e)),
                });
            }
            alpha = 0..e;
            beta = e..2 * e;
            gamma = 2 * e..3 * e;
            mats.push(MatrixGenerator {
                mat: ree_torus_matrix(field, field.generator().repr()),
                label: GenLabel::Torus(format!("h({})", field.render(field.generator()))),
            });
            mats.push(MatrixGenerator { mat: ree_weyl_matrix(field), label: GenLabel::Weyl });
        }
        Family::Suzuki => {
            let gens = unipotent::suzuki_coordinate_generators(field, u32::MAX)?;
            let e = field.e() as usize;
            for (i, g) in gens.iter().enumerate() {
                let which = ["x(b,0)", "x(0,b)"][i / e];
                mats.push(MatrixGenerator {
                    mat: suzuki_matrix(field, g),
                    label: GenLabel::Unipotent(format!("{which} b=x^{}", i % e)),
                });
            }
            alpha = 0..e;
            beta = e..2 * e;
            gamma = 2 * e..2 * e;
            mats.push(MatrixGenerator {
                mat: suzuki_torus_matrix(field, field.generator().repr()),
                label: GenLabel::Torus(format!("h({})", field.render(field.generator()))),
            });
            mats.push(MatrixGenerator { mat: suzuki_weyl_matrix(field), label: GenLabel::Weyl });
        }
    }
    let torus = mats.len() - 2;
    let weyl = mats.len() - 1;
    let gens = Generators {
        family,
        field: Arc::clone(field),
        mats,
        alpha,
        beta,
        gamma,
        torus,
        weyl,
    };
    validate_generators(&gens)?;
    Ok(gens)
}

/// The mandatory validation gate. Aborting on failure (rather than patching)
/// is the contract: the matrix transcriptions are only trusted because this
/// passes.
pub fn validate_generators(gens: &Generators) -> Result<(), GateError> {
    let f = &gens.field;
    let n = gens.dim();
    let tau = &gens.mats[gens.weyl].mat;
    let fail = |msg: String| Err(GateError::GateFailed(msg));

    // τ² = 1
    if !tau.mul(f, tau).is_identity() {
        return fail("tau^2 != identity".into());
    }

    // τ inverts K: τ h(t) τ = h(t)^{-1} for the generator and random t
    let mut state = 0xabcdef12345u64;
    let torus_of = |t: u16| match gens.family {
        Family::Ree => ree_torus_matrix(f, t),
        Family::Suzuki => suzuki_torus_matrix(f, t),
    };
    for trial in 0..12 {
        let t = if trial == 0 {
            f.generator().repr()
        } else {
            1 + (splitmix(&mut state) % (f.q() as u64 - 1)) as u16
        };
        let h = torus_of(t);
        let hinv = torus_of(f.inv_raw(t));
        if tau.mul(f, &h).mul(f, tau) != hinv {
            return fail(format!("tau does not invert h({t})"));
        }
    }

    // homomorphism + K-conjugation identity against the abstract oracle
    let q = f.q() as u64;
    let exhaustive = q <= 8;
    let trials: Box<dyn Iterator<Item = (u64, u64)>> = if exhaustive {
        match gens.family {
            Family::Ree => Box::new((0..q * q * q).flat_map(move |i| {
                (0..q * q * q).map(move |j| (i, j))
            })),
            Family::Suzuki => Box::new(
                (0..q * q).flat_map(move |i| (0..q * q).map(move |j| (i, j))),
            ),
        }
    } else {
        let mut s = 0x5eedu64;
        let span = match gens.family {
            Family::Ree => q * q * q,
            Family::Suzuki => q * q,
        };
        Box::new((0..2000).map(move |_| {
            (splitmix(&mut s) % span, splitmix(&mut s) % span)
        }))
    };
    for (ci, cj) in trials {
        match gens.family {
            Family::Ree => {
                let dec = |mut c: u64| {
                    let a = (c % q) as u16;
                    c /= q;
                    let b = (c % q) as u16;
                    let g = (c / q % q) as u16;
                    ReeTriple {
                        alpha: f.element(a),
                        beta: f.element(b),
                        gamma: f.element(g),
                    }
                };
                let (x, y) = (dec(ci), dec(cj));
                let lhs = ree_matrix(f, &x).mul(f, &ree_matrix(f, &y));
                let rhs = ree_matrix(f, &unipotent::ree_mul(f, x, y)?);
                if lhs != rhs {
                    return fail(format!("unipotent map not a homomorphism at {x:?} {y:?}"));
                }
            }
            Family::Suzuki => {
                let dec = |c: u64| SuzukiPair {
                    a: f.element((c % q) as u16),
                    b: f.element((c / q % q) as u16),
                };
                let (x, y) = (dec(ci), dec(cj));
                let lhs = suzuki_matrix(f, &x).mul(f, &suzuki_matrix(f, &y));
                let rhs = suzuki_matrix(f, &unipotent::suzuki_mul(f, x, y)?);
                if lhs != rhs {
                    return fail(format!("unipotent map not a homomorphism at {x:?} {y:?}"));
                }
            }
        }
    }

    // K-conjugation: h(t)^{-1} x h(t) = x^{(t)} with the coordinate formula
    let mut s = 0xfeed5u64;
    for _ in 0..300 {
        let t = 1 + (splitmix(&mut s) % (q - 1)) as u16;
        let h = torus_of(t);
        let hinv = torus_of(f.inv_raw(t));
        match gens.family {
            Family::Ree => {
                let x = ReeTriple {
                    alpha: f.element((splitmix(&mut s) % q) as u16),
                    beta: f.element((splitmix(&mut s) % q) as u16),
                    gamma: f.element((splitmix(&mut s) % q) as u16),
                };
                let lhs = hinv.mul(f, &ree_matrix(f, &x)).mul(f, &h);
                let rhs = ree_matrix(f, &unipotent::k_conj_ree(f, x, f.element(t))?);
                if lhs != rhs {
                    return fail(format!("K-conjugation identity fails at t={t} x={x:?}"));
                }
            }
            Family::Suzuki => {
                let x = SuzukiPair {
                    a: f.element((splitmix(&mut s) % q) as u16),
                    b: f.element((splitmix(&mut s) % q) as u16),
                };
                let lhs = hinv.mul(f, &suzuki_matrix(f, &x)).mul(f, &h);
                let rhs = suzuki_matrix(f, &unipotent::k_conj_suzuki(f, x, f.element(t))?);
                if lhs != rhs {
                    return fail(format!("K-conjugation identity fails at t={t} x={x:?}"));
                }
            }
        }
    }

    // unipotents are unitriangular and invertible by construction; check the
    // identity maps to the identity
    let id_mat = match gens.family {
        Family::Ree => ree_matrix(f, &unipotent::ree_identity(f)),
        Family::Suzuki => suzuki_matrix(f, &unipotent::suzuki_identity(f)),
    };
    if !id_mat.is_identity() {
        return fail("identity element does not map to the identity matrix".into());
    }
    let _ = n;
    Ok(())
}
