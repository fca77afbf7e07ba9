use num_bigint::BigUint;
use num_traits::One;

use crate::error::Error;
use crate::geometry::Semantics;

/// Vertex counts that always suffice for a planar realization on `n` sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexBudget {
    pub n: usize,
    pub semantics: Semantics,
    pub per_polygon: BigUint,
    pub total: BigUint,
}

pub fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

fn pow(base: u32, e: usize) -> BigUint {
    BigUint::from(base).pow(e as u32)
}

/// `3^n (n-1)! |P|`: no figure of an inclusion-minimal realization pinned at
/// `reps` points has more vertices than this.
pub fn per_polygon_bound(n: usize, reps: usize) -> BigUint {
    if n == 0 {
        return BigUint::from(0u32);
    }
    pow(3, n) * factorial(n - 1) * BigUint::from(reps)
}

/// Size of the pinned point set the bounds assume: `2^n` for closed
/// realizations, `4(n+1) 2^n` for open ones.
pub fn representative_bound(n: usize, semantics: Semantics) -> BigUint {
    match semantics {
        Semantics::Closed => pow(2, n),
        Semantics::Open => BigUint::from(4 * (n + 1)) * pow(2, n),
    }
}

/// Closed: `3^n (n-1)! 2^n` per polygon and `6^n n!` in total.
/// Open: `3^n (n-1)! 4(n+1) 2^n` per polygon and `4 · 6^n (n+1)!` in total.
pub fn vertex_bound(n: usize, semantics: Semantics) -> Result<VertexBudget, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let reps = representative_bound(n, semantics);
    let per_polygon = pow(3, n) * factorial(n - 1) * reps;
    let total = match semantics {
        Semantics::Closed => pow(6, n) * factorial(n),
        Semantics::Open => BigUint::from(4u32) * pow(6, n) * factorial(n + 1),
    };
    Ok(VertexBudget {
        n,
        semantics,
        per_polygon,
        total,
    })
}
