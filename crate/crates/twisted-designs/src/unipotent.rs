//! Abstract models of the Sylow p-subgroups Q of the small Ree and Suzuki
//! groups, with the K-action of the torus 𝔽_q^* and the distinguished
//! subgroups Q₁, Q₂, Q′, Z(Q).
//!
//! The Ree Q is the set of all q³ triples (α, β, γ) over GF(3^{2n+1}) under
//!
//!   (α₁,β₁,γ₁)(α₂,β₂,γ₂)
//!     = (α₁+α₂, β₁+β₂ − α₁α₂^m, γ₁+γ₂ − α₁²α₂^m − α₂β₁ + α₁α₂^{m+1})
//!
//! with m = 3^{n+1}. This is the unique associative completion of the
//! γ-coordinate among the K-equivariant monomial candidates (the widely
//! reproduced variant with a −α₁^m α₂^m term fails associativity and is not
//! even K-equivariant). The K-action is (α,β,γ)^k = (kα, k^{1+m}β, k^{2+m}γ).
//!
//! The Suzuki Q is the set of q² pairs (a, b) over GF(2^{2n+1}) under
//! (a₁,b₁)(a₂,b₂) = (a₁+a₂, b₁+b₂+a₁^θ a₂), θ the p = 2 twist, with K acting
//! as (a,b) ↦ (ta, t^{1+θ}b). These pairs serve as the oracle the 4×4 and 7×7
//! matrix realizations are validated against.

use crate::gf::{FieldElement, FieldSpec, GfError};
use std::collections::{HashMap, HashSet};
use thiserror::Error;

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    Ree,
    Suzuki,
}

impl Family {
    pub fn characteristic(&self) -> u16 {
        match self {
            Family::Ree => 3,
            Family::Suzuki => 2,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UnipotentError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("torus parameter must be nonzero")]
    ZeroTorusParameter,
    #[error("subgroup {0:?} is not defined for family {1:?}")]
    BadTag(SubgroupTag, Family),
    #[error("family {0:?} requires characteristic {1}, field has characteristic {2}")]
    WrongCharacteristic(Family, u16, u16),
}

/// Element of the Ree Sylow 3-subgroup as a coordinate triple.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct ReeTriple {
    pub alpha: FieldElement,
    pub beta: FieldElement,
    pub gamma: FieldElement,
}

/// Element of the Suzuki Sylow 2-subgroup as a coordinate pair.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct SuzukiPair {
    pub a: FieldElement,
    pub b: FieldElement,
}

/// Distinguished subgroups of Q.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum SubgroupTag {
    /// {(0,0,γ)} — the center of the Ree Q.
    Q1,
    /// {(0,β,0)}.
    Q2,
    /// Q′ = Φ(Q) = Q₁ × Q₂ = {(0,β,γ)}.
    Qprime,
    /// Z(Q): Q₁ for Ree, {(0,b)} for Suzuki.
    ZQ,
    FullQ,
}

fn check_family(spec: &FieldSpec, family: Family) -> Result<(), UnipotentError> {
    let want = family.characteristic();
    if spec.p() != want {
        return Err(UnipotentError::WrongCharacteristic(family, want, spec.p()));
    }
    Ok(())
}

pub fn ree_identity(spec: &FieldSpec) -> ReeTriple {
    ReeTriple { alpha: spec.zero(), beta: spec.zero(), gamma: spec.zero() }
}

pub fn suzuki_identity(spec: &FieldSpec) -> SuzukiPair {
    SuzukiPair { a: spec.zero(), b: spec.zero() }
}

/// The Ree triple product.
pub fn ree_mul(spec: &FieldSpec, x: ReeTriple, y: ReeTriple) -> Result<ReeTriple, UnipotentError> {
    check_family(spec, Family::Ree)?;
    let m = spec.m() as i64;
    let a1 = x.alpha;
    let a2 = y.alpha;
    let a2m = spec.pow(a2, m)?;
    let alpha = spec.add(a1, a2)?;
    let beta = spec.sub(spec.add(x.beta, y.beta)?, spec.mul(a1, a2m)?)?;
    let mut gamma = spec.add(x.gamma, y.gamma)?;
    gamma = spec.sub(gamma, spec.mul(spec.mul(a1, a1)?, a2m)?)?;
    gamma = spec.sub(gamma, spec.mul(a2, x.beta)?)?;
    gamma = spec.add(gamma, spec.mul(a1, spec.mul(a2m, a2)?)?)?;
    Ok(ReeTriple { alpha, beta, gamma })
}

/// Closed-form inverse of the Ree product (derived by substitution, then
/// verified by multiplying back; see the unit tests).
pub fn ree_inv(spec: &FieldSpec, x: ReeTriple) -> Result<ReeTriple, UnipotentError> {
    check_family(spec, Family::Ree)?;
    let m = spec.m() as i64;
    let alpha = spec.neg(x.alpha)?;
    let am1 = spec.pow(x.alpha, m + 1)?;
    let beta = spec.sub(spec.neg(x.beta)?, am1)?;
    // gamma' = -gamma - alpha*beta + alpha^{m+2}  (coefficient 1 - k1 = -1... )
    // With the law's gamma corrections (-1, 0, 0) the a^{m+2} coefficient is
    // (1 - k1 + k2 - k3) = 2 in GF(3), i.e. -1.
    let am2 = spec.pow(x.alpha, m + 2)?;
    let mut gamma = spec.neg(x.gamma)?;
    gamma = spec.sub(gamma, spec.mul(x.alpha, x.beta)?)?;
    gamma = spec.add(gamma, am2)?;
    Ok(ReeTriple { alpha, beta, gamma })
}

/// (α,β,γ)^k = (kα, k^{1+m}β, k^{2+m}γ), k ≠ 0.
pub fn k_conj_ree(
    spec: &FieldSpec,
    x: ReeTriple,
    k: FieldElement,
) -> Result<ReeTriple, UnipotentError> {
    check_family(spec, Family::Ree)?;
    if k.is_zero() {
        return Err(UnipotentError::ZeroTorusParameter);
    }
    let m = spec.m() as i64;
    Ok(ReeTriple {
        alpha: spec.mul(k, x.alpha)?,
        beta: spec.mul(spec.pow(k, 1 + m)?, x.beta)?,
        gamma: spec.mul(spec.pow(k, 2 + m)?, x.gamma)?,
    })
}

/// (a₁,b₁)(a₂,b₂) = (a₁+a₂, b₁+b₂+a₁^θ a₂).
pub fn suzuki_mul(
    spec: &FieldSpec,
    x: SuzukiPair,
    y: SuzukiPair,
) -> Result<SuzukiPair, UnipotentError> {
    check_family(spec, Family::Suzuki)?;
    let a = spec.add(x.a, y.a)?;
    let b = spec.add(spec.add(x.b, y.b)?, spec.mul(spec.twist(x.a)?, y.a)?)?;
    Ok(SuzukiPair { a, b })
}

pub fn suzuki_inv(spec: &FieldSpec, x: SuzukiPair) -> Result<SuzukiPair, UnipotentError> {
    check_family(spec, Family::Suzuki)?;
    // char 2: (a, b)^-1 = (a, b + a^{1+θ})
    let b = spec.add(x.b, spec.mul(spec.twist(x.a)?, x.a)?)?;
    Ok(SuzukiPair { a: x.a, b })
}

/// (a,b)^t = (ta, t^{1+θ}b), t ≠ 0.
pub fn k_conj_suzuki(
    spec: &FieldSpec,
    x: SuzukiPair,
    t: FieldElement,
) -> Result<SuzukiPair, UnipotentError> {
    check_family(spec, Family::Suzuki)?;
    if t.is_zero() {
        return Err(UnipotentError::ZeroTorusParameter);
    }
    let m = spec.m() as i64;
    Ok(SuzukiPair {
        a: spec.mul(t, x.a)?,
        b: spec.mul(spec.pow(t, 1 + m)?, x.b)?,
    })
}

/// Generic element wrapper so subgroup listings work for both families.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Element {
    Ree(ReeTriple),
    Suzuki(SuzukiPair),
}

/// Exact element set of a tagged subgroup, in lexicographic coordinate order.
pub fn members(
    tag: SubgroupTag,
    spec: &FieldSpec,
    family: Family,
    cap: u32,
) -> Result<Vec<Element>, UnipotentError> {
    check_family(spec, family)?;
    let els = spec.enumerate(cap)?;
    let zero = spec.zero();
    let mut out = Vec::new();
    match (family, tag) {
        (Family::Ree, SubgroupTag::Q1) | (Family::Ree, SubgroupTag::ZQ) => {
            for &g in &els {
                out.push(Element::Ree(ReeTriple { alpha: zero, beta: zero, gamma: g }));
            }
        }
        (Family::Ree, SubgroupTag::Q2) => {
            for &b in &els {
                out.push(Element::Ree(ReeTriple { alpha: zero, beta: b, gamma: zero }));
            }
        }
        (Family::Ree, SubgroupTag::Qprime) => {
            for &b in &els {
                for &g in &els {
                    out.push(Element::Ree(ReeTriple { alpha: zero, beta: b, gamma: g }));
                }
            }
        }
        (Family::Ree, SubgroupTag::FullQ) => {
            for &a in &els {
                for &b in &els {
                    for &g in &els {
                        out.push(Element::Ree(ReeTriple { alpha: a, beta: b, gamma: g }));
                    }
                }
            }
        }
        (Family::Suzuki, SubgroupTag::ZQ) => {
            for &b in &els {
                out.push(Element::Suzuki(SuzukiPair { a: zero, b }));
            }
        }
        (Family::Suzuki, SubgroupTag::FullQ) => {
            for &a in &els {
                for &b in &els {
                    out.push(Element::Suzuki(SuzukiPair { a, b }));
                }
            }
        }
        (fam, tag) => return Err(UnipotentError::BadTag(tag, fam)),
    }
    Ok(out)
}

/// Center (exhaustive commuting test against the coordinate generators) and
/// derived subgroup of Q, both as exact element sets.
///
/// The derived subgroup is computed as the closure of the generator
/// commutators {[x, g] : x ∈ Q, g generator} under multiplication and
/// conjugation by generators. That set D is contained in Q′ (it consists of
/// commutators and their products/conjugates), is normal (closed under
/// conjugation by a generating set), and Q/D is abelian because every [gᵢ,gⱼ]
/// lies in D — so D = Q′ exactly.
pub fn compute_center_and_derived(
    spec: &FieldSpec,
    family: Family,
    cap: u32,
) -> Result<(Vec<Element>, Vec<Element>), UnipotentError> {
    check_family(spec, family)?;
    match family {
        Family::Ree => {
            let all = members(SubgroupTag::FullQ, spec, family, cap)?;
            let gens = ree_coordinate_generators(spec, cap)?;
            // center
            let mut center = Vec::new();
            'outer: for &el in &all {
                let Element::Ree(x) = el else { unreachable!() };
                for &g in &gens {
                    if ree_mul(spec, x, g)? != ree_mul(spec, g, x)? {
                        continue 'outer;
                    }
                }
                center.push(el);
            }
            // derived
            let mut set: HashSet<ReeTriple> = HashSet::new();
            for &el in &all {
                let Element::Ree(x) = el else { unreachable!() };
                let xi = ree_inv(spec, x)?;
                for &g in &gens {
                    let gi = ree_inv(spec, g)?;
                    let comm = ree_mul(spec, ree_mul(spec, xi, gi)?, ree_mul(spec, x, g)?)?;
                    set.insert(comm);
                }
            }
            loop {
                let snapshot: Vec<ReeTriple> = set.iter().copied().collect();
                let before = set.len();
                for &x in &snapshot {
                    for &y in &snapshot {
                        set.insert(ree_mul(spec, x, y)?);
                    }
                    for &g in &gens {
                        let gi = ree_inv(spec, g)?;
                        set.insert(ree_mul(spec, ree_mul(spec, gi, x)?, g)?);
                    }
                }
                if set.len() == before {
                    break;
                }
            }
            let mut derived: Vec<ReeTriple> = set.into_iter().collect();
            derived.sort_by_key(|t| (t.alpha.repr(), t.beta.repr(), t.gamma.repr()));
            Ok((center, derived.into_iter().map(Element::Ree).collect()))
        }
        Family::Suzuki => {
            let all = members(SubgroupTag::FullQ, spec, family, cap)?;
            let gens = suzuki_coordinate_generators(spec, cap)?;
            let mut center = Vec::new();
            'souter: for &el in &all {
                let Element::Suzuki(x) = el else { unreachable!() };
                for &g in &gens {
                    if suzuki_mul(spec, x, g)? != suzuki_mul(spec, g, x)? {
                        continue 'souter;
                    }
                }
                center.push(el);
            }
            let mut set: HashSet<SuzukiPair> = HashSet::new();
            for &el in &all {
                let Element::Suzuki(x) = el else { unreachable!() };
                let xi = suzuki_inv(spec, x)?;
                for &g in &gens {
                    let gi = suzuki_inv(spec, g)?;
                    let comm =
                        suzuki_mul(spec, suzuki_mul(spec, xi, gi)?, suzuki_mul(spec, x, g)?)?;
                    set.insert(comm);
                }
            }
            loop {
                let snapshot: Vec<SuzukiPair> = set.iter().copied().collect();
                let before = set.len();
                for &x in &snapshot {
                    for &y in &snapshot {
                        set.insert(suzuki_mul(spec, x, y)?);
                    }
                }
                if set.len() == before {
                    break;
                }
            }
            let mut derived: Vec<SuzukiPair> = set.into_iter().collect();
            derived.sort_by_key(|t| (t.a.repr(), t.b.repr()));
            Ok((center, derived.into_iter().map(Element::Suzuki).collect()))
        }
    }
}

/// Coordinate generators x(b,0,0), x(0,b,0), x(0,0,b) over a field basis.
pub fn ree_coordinate_generators(
    spec: &FieldSpec,
    _cap: u32,
) -> Result<Vec<ReeTriple>, UnipotentError> {
    check_family(spec, Family::Ree)?;
    let zero = spec.zero();
    let mut gens = Vec::new();
    for i in 0..spec.e() {
        let b = spec.element((spec.p() as u16).pow(i as u32));
        gens.push(ReeTriple { alpha: b, beta: zero, gamma: zero });
    }
    for i in 0..spec.e() {
        let b = spec.element((spec.p() as u16).pow(i as u32));
        gens.push(ReeTriple { alpha: zero, beta: b, gamma: zero });
    }
    for i in 0..spec.e() {
        let b = spec.element((spec.p() as u16).pow(i as u32));
        gens.push(ReeTriple { alpha: zero, beta: zero, gamma: b });
    }
    Ok(gens)
}

pub fn suzuki_coordinate_generators(
    spec: &FieldSpec,
    _cap: u32,
) -> Result<Vec<SuzukiPair>, UnipotentError> {
    check_family(spec, Family::Suzuki)?;
    let zero = spec.zero();
    let mut gens = Vec::new();
    for i in 0..spec.e() {
        let b = spec.element((spec.p() as u16).pow(i as u32));
        gens.push(SuzukiPair { a: b, b: zero });
    }
    for i in 0..spec.e() {
        let b = spec.element((spec.p() as u16).pow(i as u32));
        gens.push(SuzukiPair { a: zero, b });
    }
    Ok(gens)
}

/// Orbit partition of the nonidentity elements of a tagged subgroup under the
/// K-conjugation action, keyed by orbit representative (minimal coordinate
/// tuple). Only the K-invariant abelian tags Q1, Q2, ZQ are supported.
pub fn k_orbits(
    tag: SubgroupTag,
    spec: &FieldSpec,
    family: Family,
    cap: u32,
) -> Result<Vec<Vec<Element>>, UnipotentError> {
    if !matches!(tag, SubgroupTag::Q1 | SubgroupTag::Q2 | SubgroupTag::ZQ) {
        return Err(UnipotentError::BadTag(tag, family));
    }
    let els = members(tag, spec, family, cap)?;
    let g = spec.generator();
    let mut seen: HashMap<Element, bool> = HashMap::new();
    let mut orbits = Vec::new();
    for &el in &els {
        let is_identity = match el {
            Element::Ree(t) => t == ree_identity(spec),
            Element::Suzuki(t) => t == suzuki_identity(spec),
        };
        if is_identity || seen.contains_key(&el) {
            continue;
        }
        let mut orbit = Vec::new();
        let mut x = el;
        loop {
            if seen.insert(x, true).is_some() {
                break;
            }
            orbit.push(x);
            x = match x {
                Element::Ree(t) => Element::Ree(k_conj_ree(spec, t, g)?),
                Element::Suzuki(t) => Element::Suzuki(k_conj_suzuki(spec, t, g)?),
            };
            if x == el {
                break;
            }
        }
        orbits.push(orbit);
    }
    Ok(orbits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::DEFAULT_ENUM_CAP as CAP;
    use std::sync::Arc;

    fn gf(q: u32) -> Arc<FieldSpec> {
        FieldSpec::for_order(q).unwrap()
    }

    fn triple(spec: &FieldSpec, a: u16, b: u16, c: u16) -> ReeTriple {
        ReeTriple { alpha: spec.element(a), beta: spec.element(b), gamma: spec.element(c) }
    }

    fn all_triples(spec: &FieldSpec) -> Vec<ReeTriple> {
        let els = spec.enumerate(CAP).unwrap();
        let mut v = Vec::new();
        for &a in &els {
            for &b in &els {
                for &g in &els {
                    v.push(ReeTriple { alpha: a, beta: b, gamma: g });
                }
            }
        }
        v
    }

    #[test]
    fn q1_times_q2_merges_coordinates() {
        // (0,0,γ)(0,β,0) = (0,β,γ)
        let f = gf(27);
        for b in [1u16, 5, 20] {
            for c in [2u16, 7, 26] {
                let x = triple(&f, 0, 0, c);
                let y = triple(&f, 0, b, 0);
                assert_eq!(ree_mul(&f, x, y).unwrap(), triple(&f, 0, b, c));
            }
        }
    }

    #[test]
    fn identity_laws() {
        let f = gf(27);
        let e = ree_identity(&f);
        for v in [triple(&f, 1, 2, 3), triple(&f, 26, 0, 13)] {
            assert_eq!(ree_mul(&f, v, e).unwrap(), v);
            assert_eq!(ree_mul(&f, e, v).unwrap(), v);
        }
    }

    #[test]
    fn square_of_alpha_generator_over_gf3() {
        // (1,0,0)·(1,0,0) = (2,2,0) over GF(3)
        let f = gf(3);
        let x = triple(&f, 1, 0, 0);
        assert_eq!(ree_mul(&f, x, x).unwrap(), triple(&f, 2, 2, 0));
    }

    #[test]
    fn associativity_exhaustive_gf3_random_gf27() {
        let f3 = gf(3);
        let all = all_triples(&f3);
        for &x in &all {
            for &y in &all {
                for &z in &all {
                    let l = ree_mul(&f3, ree_mul(&f3, x, y).unwrap(), z).unwrap();
                    let r = ree_mul(&f3, x, ree_mul(&f3, y, z).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
        let f = gf(27);
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 27) as u16
        };
        for _ in 0..100_000 {
            let x = triple(&f, next(), next(), next());
            let y = triple(&f, next(), next(), next());
            let z = triple(&f, next(), next(), next());
            let l = ree_mul(&f, ree_mul(&f, x, y).unwrap(), z).unwrap();
            let r = ree_mul(&f, x, ree_mul(&f, y, z).unwrap()).unwrap();
            assert_eq!(l, r);
        }
    }

    #[test]
    fn inverse_closed_form() {
        let f3 = gf(3);
        assert_eq!(ree_inv(&f3, ree_identity(&f3)).unwrap(), ree_identity(&f3));
        for v in all_triples(&f3) {
            assert_eq!(ree_mul(&f3, v, ree_inv(&f3, v).unwrap()).unwrap(), ree_identity(&f3));
            assert_eq!(ree_mul(&f3, ree_inv(&f3, v).unwrap(), v).unwrap(), ree_identity(&f3));
        }
        let f = gf(27);
        // inv(0,β,γ) = (0,−β,−γ)
        let v = triple(&f, 0, 7, 11);
        let iv = ree_inv(&f, v).unwrap();
        assert_eq!(iv.alpha, f.zero());
        assert_eq!(iv.beta, f.neg(f.element(7)).unwrap());
        assert_eq!(iv.gamma, f.neg(f.element(11)).unwrap());
        let mut state = 12345u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 27) as u16
        };
        for _ in 0..100 {
            let v = triple(&f, next(), next(), next());
            assert_eq!(ree_mul(&f, v, ree_inv(&f, v).unwrap()).unwrap(), ree_identity(&f));
        }
    }

    #[test]
    fn k_conj_examples_and_automorphism() {
        let f3 = gf(3);
        // k = 1 fixes everything
        for v in all_triples(&f3) {
            assert_eq!(k_conj_ree(&f3, v, f3.one()).unwrap(), v);
        }
        // q = 3, k = 2, m = 3: exponents 1+m = 4 and 2+m = 5 give
        // 2^4 = 1 and 2^5 = 2 in GF(3), so (α,β,γ) ↦ (2α, β, 2γ).
        let v = triple(&f3, 1, 1, 1);
        assert_eq!(k_conj_ree(&f3, v, f3.element(2)).unwrap(), triple(&f3, 2, 1, 2));

        // automorphism property: exhaustive at q = 3, random at q = 27
        for k in 1..3u16 {
            let k = f3.element(k);
            for x in all_triples(&f3) {
                for y in all_triples(&f3) {
                    let l = k_conj_ree(&f3, ree_mul(&f3, x, y).unwrap(), k).unwrap();
                    let r = ree_mul(
                        &f3,
                        k_conj_ree(&f3, x, k).unwrap(),
                        k_conj_ree(&f3, y, k).unwrap(),
                    )
                    .unwrap();
                    assert_eq!(l, r);
                }
            }
        }
        let f = gf(27);
        let mut state = 777u64;
        let mut next = move || {
            state = state.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
            ((state >> 33) % 27) as u16
        };
        for _ in 0..10_000 {
            let k = f.element(1 + next() % 26);
            let x = triple(&f, next(), next(), next());
            let y = triple(&f, next(), next(), next());
            let l = k_conj_ree(&f, ree_mul(&f, x, y).unwrap(), k).unwrap();
            let r =
                ree_mul(&f, k_conj_ree(&f, x, k).unwrap(), k_conj_ree(&f, y, k).unwrap()).unwrap();
            assert_eq!(l, r);
        }
        assert_eq!(
            k_conj_ree(&f, triple(&f, 1, 1, 1), f.zero()).unwrap_err(),
            UnipotentError::ZeroTorusParameter
        );
    }

    #[test]
    fn cube_law_lands_in_q1() {
        // x³ ∈ Q₁ for every x ∈ Q, hence every element order divides 9
        for q in [3u32, 27] {
            let f = gf(q);
            for v in all_triples(&f) {
                let sq = ree_mul(&f, v, v).unwrap();
                let cube = ree_mul(&f, sq, v).unwrap();
                assert!(cube.alpha.is_zero() && cube.beta.is_zero(), "q={q} v={v:?}");
                let nine = ree_mul(&f, ree_mul(&f, cube, cube).unwrap(), cube).unwrap();
                assert_eq!(nine, ree_identity(&f));
            }
        }
    }

    #[test]
    fn suzuki_law_and_closure() {
        let f = gf(8);
        let e = suzuki_identity(&f);
        let pair = |a: u16, b: u16| SuzukiPair { a: f.element(a), b: f.element(b) };
        assert_eq!(suzuki_mul(&f, pair(3, 5), e).unwrap(), pair(3, 5));
        // a-coordinates zero: (0,b1)(0,b2) = (0, b1+b2)
        assert_eq!(suzuki_mul(&f, pair(0, 3), pair(0, 6)).unwrap(), pair(0, 5));
        // closure of all q² pairs has size 64
        let mut set = HashSet::new();
        for a1 in 0..8u16 {
            for b1 in 0..8u16 {
                for a2 in 0..8u16 {
                    for b2 in 0..8u16 {
                        set.insert(suzuki_mul(&f, pair(a1, b1), pair(a2, b2)).unwrap());
                    }
                }
            }
        }
        assert_eq!(set.len(), 64);
        // inverses
        for a in 0..8u16 {
            for b in 0..8u16 {
                let x = pair(a, b);
                assert_eq!(suzuki_mul(&f, x, suzuki_inv(&f, x).unwrap()).unwrap(), e);
            }
        }
    }

    #[test]
    fn suzuki_k_action() {
        let f = gf(8);
        let pair = |a: u16, b: u16| SuzukiPair { a: f.element(a), b: f.element(b) };
        for a in 0..8u16 {
            for b in 0..8u16 {
                assert_eq!(k_conj_suzuki(&f, pair(a, b), f.one()).unwrap(), pair(a, b));
            }
        }
        // automorphism property, exhaustive at q = 8
        for t in 1..8u16 {
            let t = f.element(t);
            for a1 in 0..8u16 {
                for b1 in 0..8u16 {
                    for a2 in 0..8u16 {
                        for b2 in 0..8u16 {
                            let x = pair(a1, b1);
                            let y = pair(a2, b2);
                            let l = k_conj_suzuki(&f, suzuki_mul(&f, x, y).unwrap(), t).unwrap();
                            let r = suzuki_mul(
                                &f,
                                k_conj_suzuki(&f, x, t).unwrap(),
                                k_conj_suzuki(&f, y, t).unwrap(),
                            )
                            .unwrap();
                            assert_eq!(l, r);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn members_counts() {
        let f27 = gf(27);
        assert_eq!(members(SubgroupTag::Q1, &f27, Family::Ree, CAP).unwrap().len(), 27);
        assert_eq!(members(SubgroupTag::Q2, &f27, Family::Ree, CAP).unwrap().len(), 27);
        assert_eq!(members(SubgroupTag::Qprime, &f27, Family::Ree, CAP).unwrap().len(), 729);
        let f3 = gf(3);
        let q1: Vec<_> = members(SubgroupTag::Q1, &f3, Family::Ree, CAP).unwrap();
        assert_eq!(
            q1,
            vec![
                Element::Ree(triple(&f3, 0, 0, 0)),
                Element::Ree(triple(&f3, 0, 0, 1)),
                Element::Ree(triple(&f3, 0, 0, 2)),
            ]
        );
        let f8 = gf(8);
        assert_eq!(members(SubgroupTag::ZQ, &f8, Family::Suzuki, CAP).unwrap().len(), 8);
        assert!(matches!(
            members(SubgroupTag::Q2, &f8, Family::Suzuki, CAP),
            Err(UnipotentError::BadTag(SubgroupTag::Q2, Family::Suzuki))
        ));
    }

    #[test]
    fn center_and_derived_structure() {
        // Ree: Z(Q) = Q1, Q' = Q1 × Q2 (elementary abelian)
        for q in [3u32, 27] {
            let f = gf(q);
            let (center, derived) = compute_center_and_derived(&f, Family::Ree, CAP).unwrap();
            let q1: HashSet<_> =
                members(SubgroupTag::Q1, &f, Family::Ree, CAP).unwrap().into_iter().collect();
            let qp: HashSet<_> =
                members(SubgroupTag::Qprime, &f, Family::Ree, CAP).unwrap().into_iter().collect();
            assert_eq!(center.iter().copied().collect::<HashSet<_>>(), q1, "q={q}");
            assert_eq!(derived.iter().copied().collect::<HashSet<_>>(), qp, "q={q}");
            // elementary abelian: exponent 3 and commutative
            for &x in derived.iter().take(40) {
                let Element::Ree(t) = x else { unreachable!() };
                let cube =
                    ree_mul(&f, ree_mul(&f, t, t).unwrap(), t).unwrap();
                assert_eq!(cube, ree_identity(&f));
            }
        }
        // Suzuki q = 8: center = {(0,b)} of size 8
        let f8 = gf(8);
        let (center, _derived) = compute_center_and_derived(&f8, Family::Suzuki, CAP).unwrap();
        let zq: HashSet<_> =
            members(SubgroupTag::ZQ, &f8, Family::Suzuki, CAP).unwrap().into_iter().collect();
        assert_eq!(center.into_iter().collect::<HashSet<_>>(), zq);
    }

    #[test]
    fn k_orbit_partitions() {
        let f27 = gf(27);
        // Q1 \ {1}: one orbit of length 26
        let o = k_orbits(SubgroupTag::Q1, &f27, Family::Ree, CAP).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].len(), 26);
        // Q2 \ {1}: two orbits of length 13 (kernel of k ↦ k^{1+m} = k^10 has order 2)
        let o = k_orbits(SubgroupTag::Q2, &f27, Family::Ree, CAP).unwrap();
        assert_eq!(o.len(), 2);
        assert!(o.iter().all(|orb| orb.len() == 13));
        // Suzuki q = 8: ZQ \ {1} is a single orbit of length 7
        let f8 = gf(8);
        let o = k_orbits(SubgroupTag::ZQ, &f8, Family::Suzuki, CAP).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].len(), 7);
    }

    #[test]
    fn q_prime_is_k_invariant_and_abelian() {
        let f = gf(27);
        let g = f.generator();
        let qp = members(SubgroupTag::Qprime, &f, Family::Ree, CAP).unwrap();
        let qpset: HashSet<_> = qp.iter().copied().collect();
        for &el in &qp {
            let Element::Ree(t) = el else { unreachable!() };
            assert!(qpset.contains(&Element::Ree(k_conj_ree(&f, t, g).unwrap())));
        }
        for &x in qp.iter().take(60) {
            for &y in qp.iter().take(60) {
                let (Element::Ree(a), Element::Ree(b)) = (x, y) else { unreachable!() };
                assert_eq!(ree_mul(&f, a, b).unwrap(), ree_mul(&f, b, a).unwrap());
            }
        }
    }

    #[test]
    fn wrong_family_rejected() {
        let f8 = gf(8);
        let t = ReeTriple { alpha: f8.zero(), beta: f8.zero(), gamma: f8.zero() };
        assert!(matches!(
            ree_mul(&f8, t, t),
            Err(UnipotentError::WrongCharacteristic(Family::Ree, 3, 2))
        ));
    }
}
