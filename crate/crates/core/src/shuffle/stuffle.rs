//! The stuffle (quasi-shuffle) product
//!
//! `[s1, s'] * [t1, t'] = [s1, s' * [t1, t']] + [t1, [s1, s'] * t'] + [s1 + t1, s' * t']`
//!
//! with the empty composition as unit. It is the product of nested series
//! `Σ_{n1 > ... > nk}` and makes sense for arbitrary integer entries.

use std::collections::HashMap;

use crate::free_algebra::lincomb::LinComb;
use crate::Composition;

pub fn stuffle(a: &Composition, b: &Composition) -> LinComb<Composition> {
    let mut memo = HashMap::new();
    suffix_stuffle(a.entries(), b.entries(), &mut memo)
}

pub fn stuffle_lin(x: &LinComb<Composition>, y: &LinComb<Composition>) -> LinComb<Composition> {
    let mut out = LinComb::zero();
    for (a, ca) in x {
        for (b, cb) in y {
            out.add_scaled(&stuffle(a, b), &(ca * cb));
        }
    }
    out
}

fn suffix_stuffle<'a>(
    a: &'a [i64],
    b: &'a [i64],
    memo: &mut HashMap<(usize, usize), LinComb<Composition>>,
) -> LinComb<Composition> {
    let (Some((&s1, a_tail)), Some((&t1, b_tail))) = (a.split_first(), b.split_first()) else {
        let rest = if a.is_empty() { b } else { a };
        return LinComb::basis(Composition::from(rest));
    };
    let key = (a.len(), b.len());
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let prefix = |head: i64, x: LinComb<Composition>| x.map_basis(|c| Composition::prepend(head, c));
    let mut out = prefix(s1, suffix_stuffle(a_tail, b, memo));
    out += &prefix(t1, suffix_stuffle(a, b_tail, memo));
    out += &prefix(s1 + t1, suffix_stuffle(a_tail, b_tail, memo));
    memo.insert(key, out.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lc(terms: &[(&[i64], i64)]) -> LinComb<Composition> {
        terms.iter().map(|&(e, k)| (Composition::from(e), k)).collect()
    }

    #[test]
    fn examples() {
        let c = |e: &[i64]| Composition::from(e);
        assert_eq!(
            stuffle(&c(&[2]), &c(&[3])),
            lc(&[(&[2, 3], 1), (&[3, 2], 1), (&[5], 1)])
        );
        assert_eq!(stuffle(&c(&[0]), &c(&[0])), lc(&[(&[0, 0], 2), (&[0], 1)]));
        assert_eq!(stuffle(&Composition::unit(), &c(&[-1])), lc(&[(&[-1], 1)]));
        assert_eq!(stuffle(&c(&[2]), &c(&[2])), lc(&[(&[2, 2], 2), (&[4], 1)]));
    }

    fn comp() -> impl Strategy<Value = Composition> {
        prop::collection::vec(-3i64..4, 0..4).prop_map(Composition::new)
    }

    proptest! {
        #[test]
        fn commutative(a in comp(), b in comp()) {
            prop_assert_eq!(stuffle(&a, &b), stuffle(&b, &a));
        }

        #[test]
        fn associative(a in comp(), b in comp(), c in comp()) {
            let left = stuffle_lin(&stuffle(&a, &b), &LinComb::basis(c.clone()));
            let right = stuffle_lin(&LinComb::basis(a), &stuffle(&b, &c));
            prop_assert_eq!(left, right);
        }

        #[test]
        fn weight_is_additive(a in comp(), b in comp()) {
            let w = a.weight() + b.weight();
            prop_assert!(stuffle(&a, &b).keys().all(|v| v.weight() == w));
        }
    }
}
