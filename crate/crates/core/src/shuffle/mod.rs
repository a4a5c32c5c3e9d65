//! The extended shuffle product and its classical and quasi-shuffle
//! companions.

pub mod stuffle;
pub mod word;

use std::cell::RefCell;
use std::collections::HashMap;

use crate::free_algebra::lincomb::LinComb;
use crate::free_algebra::operators::shift_positive_depth;
use crate::free_algebra::Basis;
use crate::Composition;

/// Memoized terms kept per thread before the cache behind the free functions
/// is dropped.
const THREAD_MEMO_LIMIT: usize = 1 << 21;

/// The five regions of the `(s1, t1)` plane that select the recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Region {
    /// `s1 = 0`: peel the left head.
    LeftZero,
    /// `s1 > 0, t1 = 0`: peel the right head.
    RightZero,
    /// `s1 > 0, t1 > 0`: `I`-recursion on `s1 + t1`.
    BothPositive,
    /// `s1 > 0, t1 < 0`: `J`-recursion on `|t1|`.
    RightNegative,
    /// `s1 < 0`: `J`-recursion on `|s1|`.
    LeftNegative,
}

impl Region {
    fn of(s1: i64, t1: i64) -> Region {
        match (s1.signum(), t1.signum()) {
            (0, _) => Region::LeftZero,
            (1, 0) => Region::RightZero,
            (1, 1) => Region::BothPositive,
            (1, _) => Region::RightNegative,
            _ => Region::LeftNegative,
        }
    }
}

/// Well-founded measure for the recursion: total depth first, then the
/// region's own counter. Peeling regions score 0 since they drop the depth.
fn measure<B: Basis>(a: &B, b: &B) -> (usize, u64) {
    let depth = a.depth() + b.depth();
    let (Some(s1), Some(t1)) = (a.lead(), b.lead()) else {
        return (depth, 0);
    };
    let local = match Region::of(s1, t1) {
        Region::LeftZero | Region::RightZero => 0,
        Region::BothPositive => (s1 + t1) as u64,
        Region::RightNegative => t1.unsigned_abs(),
        Region::LeftNegative => s1.unsigned_abs(),
    };
    (depth, local)
}

/// Evaluates the extended shuffle product on basis elements, memoizing every
/// basis pair it visits.
///
/// The same recursion serves compositions and Chen symbols: it only reads and
/// shifts the exponent of the leading letter and moves whole letters around.
#[derive(Debug)]
pub struct Shuffler<B: Basis> {
    memo: HashMap<(B, B), LinComb<B>>,
    terms: usize,
}

impl<B: Basis> Default for Shuffler<B> {
    fn default() -> Self {
        Shuffler {
            memo: HashMap::new(),
            terms: 0,
        }
    }
}

impl<B: Basis> Shuffler<B> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cached_pairs(&self) -> usize {
        self.memo.len()
    }

    /// Total number of terms over all memoized products.
    pub fn cached_terms(&self) -> usize {
        self.terms
    }

    pub fn clear(&mut self) {
        self.memo.clear();
        self.terms = 0;
    }

    pub fn product(&mut self, a: &B, b: &B) -> LinComb<B> {
        if a.is_unit() {
            return LinComb::basis(b.clone());
        }
        if b.is_unit() {
            return LinComb::basis(a.clone());
        }
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let out = self.expand(a, b);
        self.terms += out.len();
        self.memo.insert(key, out.clone());
        out
    }

    /// Bilinear extension of [`Shuffler::product`].
    pub fn product_lin(&mut self, x: &LinComb<B>, y: &LinComb<B>) -> LinComb<B> {
        let mut out = LinComb::zero();
        for (a, ca) in x {
            for (b, cb) in y {
                out.add_scaled(&self.product(a, b), &(ca * cb));
            }
        }
        out
    }

    fn expand(&mut self, a: &B, b: &B) -> LinComb<B> {
        let s1 = a.lead().expect("positive depth");
        let t1 = b.lead().expect("positive depth");
        let parent = measure(a, b);
        let sub = |this: &mut Self, x: &B, y: &B| {
            debug_assert!(measure(x, y) < parent, "recursion measure must decrease");
            this.product(x, y)
        };
        match Region::of(s1, t1) {
            Region::LeftZero => {
                let (head, tail) = a.split_head().expect("positive depth");
                sub(self, &tail, b).map_basis(|w| B::concat(&head, w))
            }
            Region::RightZero => {
                let (head, tail) = b.split_head().expect("positive depth");
                sub(self, a, &tail).map_basis(|w| B::concat(&head, w))
            }
            Region::BothPositive => {
                let mut inner = sub(self, a, &b.shift_lead(-1));
                inner += &sub(self, &a.shift_lead(-1), b);
                shift_positive_depth(&inner, 1)
            }
            Region::RightNegative => {
                let b_up = b.shift_lead(1);
                let lowered = shift_positive_depth(&sub(self, a, &b_up), -1);
                lowered - sub(self, &a.shift_lead(-1), &b_up)
            }
            Region::LeftNegative => {
                let a_up = a.shift_lead(1);
                let lowered = shift_positive_depth(&sub(self, &a_up, b), -1);
                lowered - sub(self, &a_up, &b.shift_lead(-1))
            }
        }
    }
}

thread_local! {
    static COMPOSITION_SHUFFLER: RefCell<Shuffler<Composition>> = RefCell::new(Shuffler::new());
}

pub(crate) fn with_thread_shuffler<B: Basis, R>(
    key: &'static std::thread::LocalKey<RefCell<Shuffler<B>>>,
    f: impl FnOnce(&mut Shuffler<B>) -> R,
) -> R {
    key.with(|cell| {
        let mut shuffler = cell.borrow_mut();
        if shuffler.cached_terms() > THREAD_MEMO_LIMIT {
            shuffler.clear();
        }
        f(&mut shuffler)
    })
}

/// `[a] ⧢ [b]`. Every term has depth `depth(a) + depth(b)`.
pub fn ext_shuffle(a: &Composition, b: &Composition) -> LinComb<Composition> {
    with_thread_shuffler(&COMPOSITION_SHUFFLER, |s| s.product(a, b))
}

pub fn ext_shuffle_lin(x: &LinComb<Composition>, y: &LinComb<Composition>) -> LinComb<Composition> {
    with_thread_shuffler(&COMPOSITION_SHUFFLER, |s| s.product_lin(x, y))
}

/// True iff every term has positive depth and a positive first entry.
pub fn is_leading_positive(x: &LinComb<Composition>) -> bool {
    x.keys().all(|c| c.first().is_some_and(|s| s > 0))
}
