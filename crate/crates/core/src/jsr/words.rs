//! Word enumeration over a matrix family.
//!
//! Products are accumulated as [`ScaledMat`] (a matrix times a power of two)
//! so that long words neither overflow nor underflow. Two searches are
//! provided:
//!
//! * [`NecklaceSearch`] walks the prenecklace tree (the recursive
//!   Fredricksen-Kessler-Maiorana generator), sharing prefix products between
//!   siblings and evaluating the spectral radius only at Lyndon words. Every
//!   cyclic class of words has exactly one Lyndon representative or is a power
//!   of a shorter one, and `ρ` is invariant under rotation, so this covers all
//!   words up to the requested length.
//! * [`NormSearch`] walks every word and records, per length, the largest
//!   spectral norm.
//!
//! Both searches can be split into independent subtrees ([`Prefix`]) and the
//! partial results merged with associative, order-independent reductions.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::mat2::pow2_normalized;
use crate::{Mat2, MatrixFamily};

const RESCALE_EXP: i32 = 512;
const HI: f64 = 1.340_780_792_994_259_7e154; // 2^512
const LO: f64 = 7.458_340_731_200_207e-155; // 2^-512

/// `m · 2^exp2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledMat {
    pub m: Mat2,
    pub exp2: i64,
}

impl ScaledMat {
    pub const IDENTITY: ScaledMat = ScaledMat { m: Mat2::IDENTITY, exp2: 0 };

    /// Normalized so the largest entry lies in `[0.5, 1)`.
    pub fn from_mat(m: &Mat2) -> Self {
        let s = m.max_abs();
        if s == 0.0 {
            return Self { m: *m, exp2: 0 };
        }
        let (_, e) = libm::frexp(s);
        let m = Mat2::new(libm::scalbn(m.a, -e), libm::scalbn(m.b, -e), libm::scalbn(m.c, -e), libm::scalbn(m.d, -e));
        Self { m, exp2: e as i64 }
    }

    pub fn mul(&self, rhs: &ScaledMat) -> Self {
        let mut out = ScaledMat { m: self.m * rhs.m, exp2: self.exp2 + rhs.exp2 };
        let f = out.m.frobenius();
        if f > HI {
            out.m = out.m.scale(LO);
            out.exp2 += RESCALE_EXP as i64;
        } else if f != 0.0 && f < LO {
            out.m = out.m.scale(HI);
            out.exp2 -= RESCALE_EXP as i64;
        }
        out
    }

    /// `self^n` by repeated squaring; `n = 0` gives the identity.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::IDENTITY;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `log2 ρ`, `-inf` for a zero spectral radius.
    pub fn log2_radius(&self) -> f64 {
        log2_of(self.m.spectral_radius(), self.exp2)
    }

    /// `log2 ‖·‖₂`, `-inf` for the zero matrix.
    pub fn log2_norm(&self) -> f64 {
        log2_of(self.m.spectral_norm(), self.exp2)
    }

    /// The represented matrix; may overflow to infinity or flush to zero.
    pub fn to_mat(&self) -> Mat2 {
        let (m, e) = pow2_normalized(&self.m);
        let e = (e as i64 + self.exp2).clamp(-4000, 4000) as i32;
        Mat2::new(libm::scalbn(m.a, e), libm::scalbn(m.b, e), libm::scalbn(m.c, e), libm::scalbn(m.d, e))
    }
}

fn log2_of(x: f64, exp2: i64) -> f64 {
    if x == 0.0 {
        f64::NEG_INFINITY
    } else {
        libm::log2(x) + exp2 as f64
    }
}

/// Best word found so far: `log2 ρ(M_w) / |w|` and the word.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub log2_value: f64,
    pub word: Vec<usize>,
}

impl Candidate {
    /// Placeholder that loses against any real word.
    pub fn none() -> Self {
        Self { log2_value: f64::NEG_INFINITY, word: Vec::new() }
    }

    pub fn value(&self) -> f64 {
        if self.word.is_empty() {
            0.0
        } else {
            libm::exp2(self.log2_value)
        }
    }

    /// Larger value wins; ties go to the shorter word, then the
    /// lexicographically smaller one. Associative and commutative.
    pub fn beats(&self, other: &Candidate) -> bool {
        if self.word.is_empty() {
            return false;
        }
        if other.word.is_empty() {
            return true;
        }
        match self.log2_value.total_cmp(&other.log2_value) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => match self.word.len().cmp(&other.word.len()) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => self.word < other.word,
            },
        }
    }

    pub fn merge(self, other: Candidate) -> Candidate {
        if other.beats(&self) {
            other
        } else {
            self
        }
    }
}

/// A node of a search tree: a word, its product, and (for necklace search)
/// the length of its longest Lyndon prefix period.
#[derive(Clone, Debug, PartialEq)]
pub struct Prefix {
    pub word: Vec<usize>,
    pub period: usize,
    pub product: ScaledMat,
}

impl Prefix {
    pub fn root() -> Self {
        Self { word: Vec::new(), period: 1, product: ScaledMat::IDENTITY }
    }
}

/// Result of exploring one or more subtrees of the necklace search.
#[derive(Clone, Debug, PartialEq)]
pub struct LyndonOutcome {
    pub best: Candidate,
    /// Matrix products formed.
    pub products: u64,
}

impl LyndonOutcome {
    pub fn empty() -> Self {
        Self { best: Candidate::none(), products: 0 }
    }

    pub fn merge(self, other: LyndonOutcome) -> LyndonOutcome {
        LyndonOutcome { best: self.best.merge(other.best), products: self.products + other.products }
    }
}

/// Running maximum of `ρ(M_w)^{1/|w|}` over Lyndon words up to `max_depth`.
#[derive(Clone, Debug)]
pub struct NecklaceSearch {
    members: Vec<ScaledMat>,
    max_depth: usize,
}

impl NecklaceSearch {
    pub fn new(fam: &MatrixFamily, max_depth: usize) -> Self {
        Self { members: fam.members().iter().map(ScaledMat::from_mat).collect(), max_depth }
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    /// Whole tree, serially.
    pub fn run(&self) -> LyndonOutcome {
        self.explore(&Prefix::root())
    }

    /// Evaluate every node strictly below `node`.
    pub fn explore(&self, node: &Prefix) -> LyndonOutcome {
        let mut out = LyndonOutcome::empty();
        let mut word = node.word.clone();
        self.descend(&mut word, node.period, &node.product, self.max_depth, &mut out, &mut |_| {});
        out
    }

    /// Evaluate nodes down to `split_depth` and return the nodes at exactly
    /// that depth, whose subtrees are left for [`NecklaceSearch::explore`].
    pub fn split(&self, split_depth: usize) -> (LyndonOutcome, Vec<Prefix>) {
        let mut out = LyndonOutcome::empty();
        let mut frontier = Vec::new();
        let limit = split_depth.min(self.max_depth);
        let keep = limit < self.max_depth;
        let mut word = Vec::new();
        self.descend(&mut word, 1, &ScaledMat::IDENTITY, limit, &mut out, &mut |p: &Prefix| {
            if keep && p.word.len() == limit {
                frontier.push(p.clone());
            }
        });
        (out, frontier)
    }

    fn descend(
        &self,
        word: &mut Vec<usize>,
        period: usize,
        product: &ScaledMat,
        limit: usize,
        out: &mut LyndonOutcome,
        visit: &mut dyn FnMut(&Prefix),
    ) {
        let t = word.len() + 1;
        if t > limit {
            return;
        }
        let start = if t > period { word[t - period - 1] } else { 0 };
        for j in start..self.members.len() {
            let p = if j == start { period } else { t };
            let next = product.mul(&self.members[j]);
            out.products += 1;
            word.push(j);
            if p == t {
                let log2_value = next.log2_radius() / t as f64;
                let better = out.best.word.is_empty()
                    || log2_value > out.best.log2_value
                    || (log2_value == out.best.log2_value
                        && (t < out.best.word.len() || (t == out.best.word.len() && word[..] < out.best.word[..])));
                if better {
                    out.best = Candidate { log2_value, word: word.clone() };
                }
            }
            if t == limit {
                visit(&Prefix { word: word.clone(), period: p, product: next });
            } else {
                self.descend(word, p, &next, limit, out, visit);
            }
            word.pop();
        }
    }
}

/// Per-length maxima of `log2 ‖M_w‖₂` over all words.
#[derive(Clone, Debug, PartialEq)]
pub struct NormOutcome {
    /// Entry `n - 1` holds the maximum over words of length `n`.
    pub max_log2_norm: Vec<f64>,
    pub products: u64,
}

impl NormOutcome {
    pub fn empty(depth: usize) -> Self {
        Self { max_log2_norm: vec![f64::NEG_INFINITY; depth], products: 0 }
    }

    pub fn merge(mut self, other: NormOutcome) -> NormOutcome {
        for (x, y) in self.max_log2_norm.iter_mut().zip(other.max_log2_norm) {
            if y > *x {
                *x = y;
            }
        }
        self.products += other.products;
        self
    }

    /// `min_n max_{|w| = n} ‖M_w‖^{1/n}`, and the length attaining it.
    pub fn bound(&self) -> (f64, usize) {
        let mut best = (f64::INFINITY, 0);
        for (i, &l) in self.max_log2_norm.iter().enumerate() {
            let v = if l == f64::NEG_INFINITY { 0.0 } else { libm::exp2(l / (i + 1) as f64) };
            if v < best.0 {
                best = (v, i + 1);
            }
        }
        best
    }
}

/// Exhaustive walk over all words up to `depth`, tracking spectral norms.
#[derive(Clone, Debug)]
pub struct NormSearch {
    members: Vec<ScaledMat>,
    depth: usize,
}

impl NormSearch {
    pub fn new(fam: &MatrixFamily, depth: usize) -> Self {
        Self { members: fam.members().iter().map(ScaledMat::from_mat).collect(), depth }
    }

    pub fn run(&self) -> NormOutcome {
        self.explore(&Prefix::root())
    }

    pub fn explore(&self, node: &Prefix) -> NormOutcome {
        let mut out = NormOutcome::empty(self.depth);
        let mut len = node.word.len();
        self.descend(&mut len, &node.product, self.depth, &mut out, &mut |_, _| {});
        out
    }

    pub fn split(&self, split_depth: usize) -> (NormOutcome, Vec<Prefix>) {
        let mut out = NormOutcome::empty(self.depth);
        let limit = split_depth.min(self.depth);
        let keep = limit < self.depth;
        let mut frontier = Vec::new();
        // Words are reconstructed from the visiting order: the walk is
        // lexicographic, so the i-th frontier node spells i in base K+1.
        let k = self.members.len();
        let mut len = 0;
        self.descend(&mut len, &ScaledMat::IDENTITY, limit, &mut out, &mut |idx, product| {
            if keep {
                let mut word = vec![0; limit];
                let mut x = idx;
                for slot in word.iter_mut().rev() {
                    *slot = x % k;
                    x /= k;
                }
                frontier.push(Prefix { word, period: 1, product: *product });
            }
        });
        (out, frontier)
    }

    fn descend(
        &self,
        len: &mut usize,
        product: &ScaledMat,
        limit: usize,
        out: &mut NormOutcome,
        visit: &mut dyn FnMut(usize, &ScaledMat),
    ) {
        let mut counter = 0usize;
        self.descend_inner(len, product, limit, out, visit, &mut counter);
    }

    fn descend_inner(
        &self,
        len: &mut usize,
        product: &ScaledMat,
        limit: usize,
        out: &mut NormOutcome,
        visit: &mut dyn FnMut(usize, &ScaledMat),
        counter: &mut usize,
    ) {
        let t = *len + 1;
        if t > limit {
            return;
        }
        for member in &self.members {
            let next = product.mul(member);
            out.products += 1;
            let l = next.log2_norm();
            if l > out.max_log2_norm[t - 1] {
                out.max_log2_norm[t - 1] = l;
            }
            if t == limit {
                visit(*counter, &next);
                *counter += 1;
            } else {
                *len += 1;
                self.descend_inner(len, &next, limit, out, visit, counter);
                *len -= 1;
            }
        }
    }
}

/// Number of Lyndon words of length `n` over `k` letters (Möbius inversion).
pub fn lyndon_count(k: u64, n: u32) -> Option<u128> {
    if n == 0 {
        return Some(0);
    }
    let (mut pos, mut neg) = (0u128, 0u128);
    for d in 1..=n {
        if !n.is_multiple_of(d) {
            continue;
        }
        let mu = mobius(d);
        if mu == 0 {
            continue;
        }
        let term = (k as u128).checked_pow(n / d)?;
        if mu > 0 {
            pos = pos.checked_add(term)?;
        } else {
            neg = neg.checked_add(term)?;
        }
    }
    Some((pos - neg) / n as u128)
}

fn mobius(mut n: u32) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Products formed by [`NecklaceSearch`] to `depth`: one per prenecklace of
/// length `1..=depth`, and there are `Σ_{i<=n} L(i)` prenecklaces of length `n`.
pub fn necklace_cost(k: usize, depth: usize) -> Option<u128> {
    let mut pre = 0u128;
    let mut total = 0u128;
    for n in 1..=depth {
        pre = pre.checked_add(lyndon_count(k as u64, u32::try_from(n).ok()?)?)?;
        total = total.checked_add(pre)?;
    }
    Some(total)
}

/// Products formed by [`NormSearch`] to `depth`: `Σ_{n<=depth} k^n`.
pub fn norm_cost(k: usize, depth: usize) -> Option<u128> {
    let mut total = 0u128;
    let mut level = 1u128;
    for _ in 0..depth {
        level = level.checked_mul(k as u128)?;
        total = total.checked_add(level)?;
    }
    Some(total)
}

/// Deepest level `<= requested` whose cumulative cost fits in `budget`.
pub fn affordable_depth(cost: fn(usize, usize) -> Option<u128>, k: usize, requested: usize, budget: u64) -> usize {
    let mut d = 0;
    while d < requested {
        match cost(k, d + 1) {
            Some(c) if c <= budget as u128 => d += 1,
            _ => break,
        }
    }
    d
}
