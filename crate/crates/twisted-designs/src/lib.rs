//! Construction and exact verification of the flag-transitive non-symmetric
//! 2-designs with gcd(r, λ) = 1 living on the doubly transitive actions of
//! the small Ree groups ²G₂(q), q = 3^{2n+1}, and the Suzuki groups ²B₂(q),
//! q = 2^{2n+1} — four Ree designs (two 2-(q³+1, q, q−1) designs, one
//! 2-(q³+1, q², q²−1) design, and the Ree unital 2-(q³+1, q+1, 1)) plus the
//! Suzuki 2-(q²+1, q, q−1) design — together with the exact big-integer
//! feasibility sieve used to rule out the other candidate parameter sets.
//!
//! The pipeline: finite fields with the twist endomorphism (`gf`), abstract
//! unipotent subgroup models (`unipotent`), matrix generators realized as
//! permutation actions of degree q³+1 / q²+1 (`perm_engine`), block-orbit
//! design construction (`designs`), exact verification (`verify`), and the
//! divisibility/inequality sieve (`sieve`).

pub mod designs;
pub mod gf;
pub mod perm_engine;
pub mod sieve;
pub mod unipotent;
pub mod verify;
