//! The convergent subspace: compositions with `s1 + ... + sj > j` for every
//! `j`, and the weight bookkeeping showing it is closed under the extended
//! shuffle product.

use crate::error::{Error, Result};
use crate::shuffle::ext_shuffle;
use crate::Composition;

/// Modified partial weight: `w_j` when the next entry is positive or `j` is
/// the depth, `w_{j+1}` when the next entry is `<= 0`. Zero for the unit at
/// every index.
pub fn tilde_w(c: &Composition, j: usize) -> Result<i64> {
    if c.is_unit() {
        return Ok(0);
    }
    let depth = c.depth();
    if j > depth {
        return Err(Error::IndexOutOfRange { index: j, depth });
    }
    if j == depth || c.entries()[j] > 0 {
        c.partial_weight(j)
    } else {
        c.partial_weight(j + 1)
    }
}

/// First `(j, w_j)` with `w_j <= j`, if any.
pub fn first_divergent_index(c: &Composition) -> Option<(usize, i64)> {
    let mut w = 0;
    for (i, &s) in c.entries().iter().enumerate() {
        w += s;
        let j = i + 1;
        if w <= j as i64 {
            return Some((j, w));
        }
    }
    None
}

pub fn is_convergent(c: &Composition) -> bool {
    first_divergent_index(c).is_none()
}

pub fn ensure_convergent(c: &Composition) -> Result<()> {
    match first_divergent_index(c) {
        None => Ok(()),
        Some((index, weight)) => Err(Error::NotConvergent {
            composition: c.to_string(),
            index,
            weight,
        }),
    }
}

/// `min { w̃_i(a) + w̃_j(b) : i + j = k }`, a lower bound for `w_k` of every
/// term of `a ⧢ b`.
pub fn product_weight_lower_bound(a: &Composition, b: &Composition, k: usize) -> Result<i64> {
    let (m, p) = (a.depth(), b.depth());
    if k < 1 || k > m + p {
        return Err(Error::IndexOutOfRange { index: k, depth: m + p });
    }
    let lo = k.saturating_sub(p);
    let hi = k.min(m);
    (lo..=hi)
        .map(|i| Ok(tilde_w(a, i)? + tilde_w(b, k - i)?))
        .try_fold(i64::MAX, |acc, x: Result<i64>| x.map(|x| acc.min(x)))
}

/// Runs the product of two convergent compositions and reports whether every
/// term is convergent. A `false` means the product implementation is wrong,
/// since the convergent subspace is a subalgebra.
pub fn check_closure(a: &Composition, b: &Composition) -> Result<bool> {
    ensure_convergent(a)?;
    ensure_convergent(b)?;
    Ok(ext_shuffle(a, b).keys().all(is_convergent))
}
