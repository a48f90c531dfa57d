//! Frobenius-Perron dimensions in `Z[phi]`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::FusionRing;
use crate::error::{Error, Result};
use crate::quadint::{QuadInt, PHI_F64};

/// Above this rank the numeric cross-check is a residual test of the exact
/// character instead of an independent power iteration.
const POWER_ITERATION_RANK_LIMIT: usize = 64;
const CROSS_CHECK_TOLERANCE: f64 = 1e-9;
const LATTICE_TOLERANCE: f64 = 1e-6;
const LATTICE_SEARCH: i64 = 64;

/// The Frobenius-Perron dimensions of the basis, exactly.
///
/// Seeds the unit (1), invertible elements (1) and Fibonacci elements (phi),
/// then propagates through products with a single unknown summand. Elements
/// the propagation misses are fitted from the numeric Perron vector to the
/// nearest golden integer. The result is then checked to be a character on
/// every basis pair and compared with the numeric Perron vector.
pub fn fp_dims(ring: &FusionRing) -> Result<Vec<QuadInt>> {
    let rank = ring.rank();
    let mut dims: Vec<Option<QuadInt>> = vec![None; rank];
    dims[ring.unit()] = Some(QuadInt::ONE);
    for a in 0..rank {
        if ring.is_invertible(a) {
            dims[a] = Some(QuadInt::ONE);
        } else if ring.is_fib_like(a) {
            dims[a] = Some(QuadInt::PHI);
        }
    }
    propagate(ring, &mut dims)?;

    let numeric = if rank <= POWER_ITERATION_RANK_LIMIT || dims.iter().any(Option::is_none) {
        Some(perron_vector(ring))
    } else {
        None
    };
    if dims.iter().any(Option::is_none) {
        let numeric = numeric.as_ref().expect("computed above");
        for a in 0..rank {
            if dims[a].is_none() {
                dims[a] = Some(nearest_golden(numeric[a]).ok_or_else(|| {
                    Error::NoGoldenDimensions(format!(
                        "{} has dimension {:.9} with no nearby golden integer",
                        ring.label(a),
                        numeric[a]
                    ))
                })?);
            }
        }
    }
    let dims: Vec<QuadInt> = dims.into_iter().map(|d| d.expect("filled")).collect();

    check_character(ring, &dims)?;
    for (a, d) in dims.iter().enumerate() {
        if !d.is_positive() {
            return Err(Error::NoGoldenDimensions(format!("{} has nonpositive dimension {d}", ring.label(a))));
        }
    }
    match numeric {
        Some(v) => {
            for (a, d) in dims.iter().enumerate() {
                if (d.to_f64() - v[a]).abs() > CROSS_CHECK_TOLERANCE * d.to_f64().max(1.0) {
                    return Err(Error::NoGoldenDimensions(format!(
                        "exact dimension {d} of {} disagrees with Perron vector {:.12}",
                        ring.label(a),
                        v[a]
                    )));
                }
            }
        }
        None => residual_check(ring, &dims)?,
    }
    Ok(dims)
}

fn propagate(ring: &FusionRing, dims: &mut [Option<QuadInt>]) -> Result<()> {
    let rank = ring.rank();
    let mut known: Vec<usize> = (0..rank).filter(|&a| dims[a].is_some()).collect();
    let mut frontier = known.clone();
    while let Some(x) = frontier.pop() {
        // products of the new element with every known one, on both sides
        let mut i = 0;
        while i < known.len() {
            let y = known[i];
            i += 1;
            for (p, q) in [(x, y), (y, x)] {
                if let Some((c, value)) = solve_single(ring, dims, p, q)? {
                    dims[c] = Some(value);
                    known.push(c);
                    frontier.push(c);
                }
            }
        }
        if known.len() == rank {
            break;
        }
    }
    Ok(())
}

fn solve_single(ring: &FusionRing, dims: &[Option<QuadInt>], p: usize, q: usize) -> Result<Option<(usize, QuadInt)>> {
    let mut unknown = None;
    let mut rest = dims[p].expect("known") * dims[q].expect("known");
    for (c, m) in ring.fusion(p, q) {
        match dims[c] {
            Some(d) => rest = rest - d.scale(m as i64),
            None if unknown.is_none() => unknown = Some((c, m)),
            None => return Ok(None),
        }
    }
    let Some((c, m)) = unknown else { return Ok(None) };
    let value = rest.div_exact(m as i64).ok_or_else(|| {
        Error::NoGoldenDimensions(format!("{} x {} forces a non-integral dimension", ring.label(p), ring.label(q)))
    })?;
    Ok(Some((c, value)))
}

fn check_character(ring: &FusionRing, dims: &[QuadInt]) -> Result<()> {
    let rank = ring.rank();
    for a in 0..rank {
        for b in 0..rank {
            let sum: QuadInt = ring.fusion(a, b).map(|(c, m)| dims[c].scale(m as i64)).sum();
            if sum != dims[a] * dims[b] {
                return Err(Error::NoGoldenDimensions(format!(
                    "d({}) d({}) = {} but the product has dimension {sum}",
                    ring.label(a),
                    ring.label(b),
                    dims[a] * dims[b]
                )));
            }
        }
    }
    Ok(())
}

fn residual_check(ring: &FusionRing, dims: &[QuadInt]) -> Result<()> {
    let v: Vec<f64> = dims.iter().map(|d| d.to_f64()).collect();
    for a in 0..ring.rank() {
        for b in 0..ring.rank() {
            let lhs = v[a] * v[b];
            let rhs: f64 = ring.fusion(a, b).map(|(c, m)| m as f64 * v[c]).sum();
            if (lhs - rhs).abs() > CROSS_CHECK_TOLERANCE * lhs.max(1.0) {
                return Err(Error::NoGoldenDimensions(format!(
                    "numeric residual {:.3e} at ({}, {})",
                    lhs - rhs,
                    ring.label(a),
                    ring.label(b)
                )));
            }
        }
    }
    Ok(())
}

fn nearest_golden(v: f64) -> Option<QuadInt> {
    let mut found = None;
    for y in -LATTICE_SEARCH..=LATTICE_SEARCH {
        let x = round(v - y as f64 * PHI_F64);
        if (x + y as f64 * PHI_F64 - v).abs() < LATTICE_TOLERANCE {
            if found.is_some() {
                return None;
            }
            found = Some(QuadInt::new(x as i64, y));
        }
    }
    found
}

fn round(v: f64) -> f64 {
    // no `f64::round` without std; inputs are far below 2^52
    let t = v as i64 as f64;
    let frac = v - t;
    if frac >= 0.5 {
        t + 1.0
    } else if frac <= -0.5 {
        t - 1.0
    } else {
        t
    }
}

/// Sum of squared dimensions.
pub fn global_dim(ring: &FusionRing) -> Result<QuadInt> {
    Ok(fp_dims(ring)?.iter().map(|&d| d * d).sum())
}

/// Numeric Perron vector normalized to 1 at the unit.
///
/// Power iteration on `d -> d + sum_a d L_a`, the left action of the regular
/// element; every basis dimension is a common left eigenvector of the `L_a`.
pub fn perron_vector(ring: &FusionRing) -> Vec<f64> {
    let rank = ring.rank();
    let mut v = vec![1.0f64; rank];
    let mut next = vec![0.0f64; rank];
    for _ in 0..10_000 {
        next.copy_from_slice(&v);
        for (_, b, c, m) in ring.triples() {
            // (d L_a)_b = sum_c d_c N_ab^c
            next[b] += m as f64 * v[c];
        }
        let norm = next[ring.unit()];
        for x in next.iter_mut() {
            *x /= norm;
        }
        let delta = v.iter().zip(&next).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        core::mem::swap(&mut v, &mut next);
        if delta < 1e-14 {
            break;
        }
    }
    v
}
