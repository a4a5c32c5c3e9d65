//! Double-shuffle relations on the convergent region.
//!
//! For convergent `a`, `b` both the stuffle and the extended shuffle expand
//! `ζ(a) ζ(b)`, so `a * b - a ⧢ b` lies in the kernel of `ζ` whenever all of
//! its terms are convergent.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::convergence::{ensure_convergent, is_convergent};
use crate::error::{Error, Result};
use crate::free_algebra::lincomb::LinComb;
use crate::shuffle::{ext_shuffle, stuffle::stuffle};
use crate::zeta::ZetaEvaluator;
use crate::Composition;

#[derive(Clone, Debug, PartialEq)]
pub struct DoubleShuffleRelation {
    pub a: Composition,
    pub b: Composition,
    /// `a * b - a ⧢ b`.
    pub relation: LinComb<Composition>,
    /// Terms of `a * b` outside the convergent region. The shuffle side never
    /// contributes here.
    pub divergent_terms: Vec<Composition>,
}

pub fn double_shuffle_relation(a: &Composition, b: &Composition) -> Result<DoubleShuffleRelation> {
    if a.is_unit() || b.is_unit() {
        return Err(Error::UnitArgument);
    }
    ensure_convergent(a)?;
    ensure_convergent(b)?;
    let stuffled = stuffle(a, b);
    let shuffled = ext_shuffle(a, b);
    let mut divergent_terms: Vec<Composition> = stuffled
        .keys()
        .chain(shuffled.keys())
        .filter(|c| !is_convergent(c))
        .cloned()
        .collect();
    divergent_terms.sort();
    divergent_terms.dedup();
    Ok(DoubleShuffleRelation {
        a: a.clone(),
        b: b.clone(),
        relation: stuffled - shuffled,
        divergent_terms,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelationBounds {
    pub max_depth: usize,
    pub min_entry: i64,
    pub max_entry: i64,
}

impl RelationBounds {
    /// Nonunit convergent compositions inside the bounds, in canonical order.
    pub fn convergent_compositions(&self) -> Vec<Composition> {
        let mut out = Vec::new();
        if self.min_entry > self.max_entry {
            return out;
        }
        let mut layer = vec![Vec::<i64>::new()];
        for _ in 0..self.max_depth {
            layer = layer
                .iter()
                .flat_map(|prefix| {
                    (self.min_entry..=self.max_entry).map(move |s| {
                        let mut next = prefix.clone();
                        next.push(s);
                        next
                    })
                })
                .filter(|e| {
                    // Convergence only constrains partial weights, so a
                    // divergent prefix can never be extended.
                    is_convergent(&Composition::from(e.as_slice()))
                })
                .collect();
            out.extend(layer.iter().map(|e| Composition::from(e.as_slice())));
        }
        out.sort();
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertifiedRelation {
    pub a: Composition,
    pub b: Composition,
    pub relation: LinComb<Composition>,
    /// `|ζ(relation)|`.
    pub residual: f64,
    pub est_error: f64,
    pub converged: bool,
}

impl CertifiedRelation {
    pub fn to_json(&self) -> Value {
        json!({
            "a": self.a.entries(),
            "b": self.b.entries(),
            "relation": self.relation.to_json(),
            "residual": self.residual,
            "est_error": self.est_error,
            "converged": self.converged,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RelationSet {
    /// Relations whose residual is below `tol + est_error`.
    pub relations: Vec<CertifiedRelation>,
    /// Pairs whose stuffle expansion leaves the convergent region.
    pub skipped: Vec<DoubleShuffleRelation>,
    /// Relations that failed the numeric check; nonempty only on a bug or an
    /// unconverged evaluation.
    pub failed: Vec<CertifiedRelation>,
    pub symmetry: SymmetryReport,
}

/// Whether `a ⧢ b = b ⧢ a` over unordered pairs of distinct compositions.
/// The stuffle is commutative, so this is also whether the relation for
/// `(a, b)` equals the one for `(b, a)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymmetryReport {
    pub pairs: usize,
    pub asymmetric: Vec<(Composition, Composition)>,
}

impl SymmetryReport {
    pub fn measure(comps: &[Composition]) -> Self {
        let pairs: Vec<_> = comps
            .iter()
            .enumerate()
            .flat_map(|(i, a)| comps[i + 1..].iter().map(move |b| (a, b)))
            .collect();
        let asymmetric = pairs
            .par_iter()
            .filter(|(a, b)| ext_shuffle(a, b) != ext_shuffle(b, a))
            .map(|&(a, b)| (a.clone(), b.clone()))
            .collect();
        SymmetryReport {
            pairs: pairs.len(),
            asymmetric,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pairs": self.pairs,
            "asymmetric": self.asymmetric.iter().map(|(a, b)| json!([a.entries(), b.entries()])).collect::<Vec<_>>(),
        })
    }
}

impl RelationSet {
    pub fn to_json(&self) -> Value {
        json!({
            "relations": self.relations.iter().map(CertifiedRelation::to_json).collect::<Vec<_>>(),
            "skipped": self.skipped.iter().map(|s| json!({
                "a": s.a.entries(),
                "b": s.b.entries(),
                "divergent_terms": s.divergent_terms.iter().map(|c| c.entries().to_vec()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "failed": self.failed.iter().map(CertifiedRelation::to_json).collect::<Vec<_>>(),
            "symmetry": self.symmetry.to_json(),
        })
    }
}

enum Outcome {
    Certified(CertifiedRelation),
    Skipped(DoubleShuffleRelation),
    Failed(CertifiedRelation),
}

/// All ordered pairs of convergent compositions within `bounds`, each turned
/// into a double-shuffle relation and checked numerically at `tol`. Output is
/// sorted by pair. Commutativity of `⧢` on the same compositions is measured
/// alongside.
pub fn enumerate_relations(bounds: &RelationBounds, tol: f64, evaluator: &ZetaEvaluator) -> Result<RelationSet> {
    let comps = bounds.convergent_compositions();
    let pairs: Vec<(&Composition, &Composition)> =
        comps.iter().flat_map(|a| comps.iter().map(move |b| (a, b))).collect();
    let outcomes = pairs
        .par_iter()
        .map(|&(a, b)| -> Result<Outcome> {
            let rel = double_shuffle_relation(a, b)?;
            if !rel.divergent_terms.is_empty() {
                return Ok(Outcome::Skipped(rel));
            }
            let z = evaluator.zeta_of_lincomb(&rel.relation, tol)?;
            let certified = CertifiedRelation {
                a: rel.a,
                b: rel.b,
                relation: rel.relation,
                residual: z.value.abs(),
                est_error: z.est_error,
                converged: z.converged,
            };
            if certified.residual < tol + certified.est_error {
                Ok(Outcome::Certified(certified))
            } else {
                Ok(Outcome::Failed(certified))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut set = RelationSet {
        symmetry: SymmetryReport::measure(&comps),
        ..RelationSet::default()
    };
    for outcome in outcomes {
        match outcome {
            Outcome::Certified(r) => set.relations.push(r),
            Outcome::Skipped(r) => set.skipped.push(r),
            Outcome::Failed(r) => set.failed.push(r),
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shuffle::word::{rho_decode, rho_encode, word_shuffle};

    fn c<const N: usize>(e: [i64; N]) -> Composition {
        Composition::from(e)
    }

    fn lc(terms: &[(&[i64], i64)]) -> LinComb<Composition> {
        terms.iter().map(|&(e, k)| (Composition::from(e), k)).collect()
    }

    #[test]
    fn two_two() {
        let r = double_shuffle_relation(&c([2]), &c([2])).unwrap();
        assert_eq!(r.relation, lc(&[(&[4], 1), (&[3, 1], -4)]));
        assert!(r.divergent_terms.is_empty());
    }

    #[test]
    fn two_three_against_word_oracle() {
        let r = double_shuffle_relation(&c([2]), &c([3])).unwrap();
        let words = word_shuffle(&rho_encode(&c([2])).unwrap(), &rho_encode(&c([3])).unwrap());
        let shuffled = words.map_basis(|w| rho_decode(w).unwrap());
        let expect = lc(&[(&[5], 1), (&[2, 3], 1), (&[3, 2], 1)]) - shuffled;
        assert_eq!(r.relation, expect);
    }

    #[test]
    fn preconditions() {
        assert_eq!(
            double_shuffle_relation(&Composition::unit(), &c([2])),
            Err(Error::UnitArgument)
        );
        assert!(matches!(
            double_shuffle_relation(&c([1]), &c([2])),
            Err(Error::NotConvergent { .. })
        ));
    }

    #[test]
    fn stuffle_stays_convergent_on_sampled_pairs() {
        // Every stuffle term is a sub-sum of the product series, whose summands
        // are all positive, so no pair in these bounds should be skipped.
        let comps = RelationBounds {
            max_depth: 2,
            min_entry: -2,
            max_entry: 5,
        }
        .convergent_compositions();
        for a in &comps {
            for b in &comps {
                let r = double_shuffle_relation(a, b).unwrap();
                assert!(r.divergent_terms.is_empty(), "{a} {b}: {:?}", r.divergent_terms);
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let ev = ZetaEvaluator::default();
        let one = enumerate_relations(
            &RelationBounds {
                max_depth: 1,
                min_entry: 2,
                max_entry: 2,
            },
            1e-4,
            &ev,
        )
        .unwrap();
        assert_eq!(one.relations.len(), 1);
        assert_eq!(one.relations[0].relation, lc(&[(&[4], 1), (&[3, 1], -4)]));

        let set = enumerate_relations(
            &RelationBounds {
                max_depth: 1,
                min_entry: 2,
                max_entry: 3,
            },
            1e-4,
            &ev,
        )
        .unwrap();
        assert_eq!(set.relations.len(), 4);
        assert!(set
            .relations
            .iter()
            .any(|r| r.relation == lc(&[(&[4], 1), (&[3, 1], -4)])));
        assert!(set.failed.is_empty());
        for r in &set.relations {
            assert!(r.residual < 1e-4 + r.est_error);
        }

        let empty = enumerate_relations(
            &RelationBounds {
                max_depth: 0,
                min_entry: 2,
                max_entry: 3,
            },
            1e-4,
            &ev,
        )
        .unwrap();
        assert_eq!(empty, RelationSet::default());
        let inverted = enumerate_relations(
            &RelationBounds {
                max_depth: 2,
                min_entry: 3,
                max_entry: 2,
            },
            1e-4,
            &ev,
        )
        .unwrap();
        assert_eq!(inverted, RelationSet::default());
    }

    #[test]
    fn symmetry_is_measured() {
        let report = SymmetryReport::measure(&[c([2]), c([3]), c([2, 1])]);
        assert_eq!(report.pairs, 3);
        assert!(report.asymmetric.is_empty());
        let report = SymmetryReport::measure(&[c([0]), c([-1])]);
        assert_eq!(report.asymmetric, vec![(c([0]), c([-1]))]);
    }

    #[test]
    fn convergent_compositions_in_bounds() {
        let comps = RelationBounds {
            max_depth: 2,
            min_entry: -1,
            max_entry: 4,
        }
        .convergent_compositions();
        assert_eq!(comps.len(), 18);
        assert!(comps.contains(&c([4, -1])));
        assert!(!comps.contains(&c([3, -1])));
        assert!(comps.windows(2).all(|w| w[0] < w[1]));
    }
}
