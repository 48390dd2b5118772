//! Buchberger's algorithm for homogeneous ideals, plus the combinatorics of
//! leading-term ideals: Krull dimension, Hilbert series and polynomial.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::polyring::{graded_basis, Monomial, Polynomial};
use crate::scalar::{Rational, Scalar};

/// Largest supported number of variables.
pub const MAX_VARS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    GrevLex,
    Lex,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdealError {
    #[error("generator {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("generator {index} has {got} variables, expected {expected}")]
    VariableCount { index: usize, expected: usize, got: usize },
    #[error("at most {MAX_VARS} variables are supported, got {0}")]
    TooManyVariables(usize),
    #[error("generator {0} has a negative exponent")]
    NegativeExponent(usize),
}

/// Homogeneous ideal of `F[x_0..x_{nvars-1}]`.
#[derive(Clone)]
pub struct Ideal<F> {
    nvars: usize,
    generators: Vec<Polynomial<F>>,
    order: MonomialOrder,
}

impl<F: Scalar> Ideal<F> {
    /// Zero generators are dropped.
    pub fn new(nvars: usize, generators: Vec<Polynomial<F>>, order: MonomialOrder) -> Result<Self, IdealError> {
        if nvars > MAX_VARS {
            return Err(IdealError::TooManyVariables(nvars));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.nvars() != nvars {
                return Err(IdealError::VariableCount { index: i, expected: nvars, got: g.nvars() });
            }
            if !g.is_homogeneous() {
                return Err(IdealError::NotHomogeneous(i));
            }
            if g.terms().any(|(m, _)| !m.is_section()) {
                return Err(IdealError::NegativeExponent(i));
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { nvars, generators, order })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        Ideal { order, ..self.clone() }
    }

    pub fn groebner_basis(&self) -> GroebnerBasis<F> {
        buchberger(self)
    }

    /// Whether the projective zero set in `P^(nvars-1)` is empty.
    ///
    /// Stops Buchberger as soon as the partial basis already has a pure
    /// power of every variable among its leading terms.
    pub fn has_empty_locus(&self) -> bool {
        let ctx = Ctx { nvars: self.nvars, order: self.order };
        let (basis, early) = run_buchberger(ctx, &self.generators, true);
        early || leading_dimension(ctx.nvars, basis.iter().map(|g| g.last().unwrap().0)) <= 0
    }
}

impl<F: Scalar> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ideal").field("generators", &self.generators).field("order", &self.order).finish()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Exp {
    e: [u16; MAX_VARS],
    deg: u32,
}

impl Exp {
    fn from_monomial(m: &Monomial) -> Self {
        let mut e = [0u16; MAX_VARS];
        for (slot, &x) in e.iter_mut().zip(m.exponents()) {
            *slot = u16::try_from(x).expect("exponent out of range");
        }
        Exp { e, deg: m.degree() as u32 }
    }

    fn to_monomial(self, nvars: usize) -> Monomial {
        Monomial::new(self.e[..nvars].iter().map(|&x| x as i32).collect())
    }

    fn divides(&self, other: &Exp) -> bool {
        self.deg <= other.deg && self.e.iter().zip(&other.e).all(|(a, b)| a <= b)
    }

    fn lcm(&self, other: &Exp) -> Exp {
        let mut e = [0u16; MAX_VARS];
        let mut deg = 0;
        for i in 0..MAX_VARS {
            e[i] = self.e[i].max(other.e[i]);
            deg += e[i] as u32;
        }
        Exp { e, deg }
    }

    fn mul(&self, other: &Exp) -> Exp {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(&other.e) {
            *a += b;
        }
        Exp { e, deg: self.deg + other.deg }
    }

    /// `self / other`, assuming divisibility.
    fn quo(&self, other: &Exp) -> Exp {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(&other.e) {
            *a -= b;
        }
        Exp { e, deg: self.deg - other.deg }
    }

    fn coprime(&self, other: &Exp) -> bool {
        self.e.iter().zip(&other.e).all(|(a, b)| *a == 0 || *b == 0)
    }

    fn support_mask(&self) -> u32 {
        self.e.iter().enumerate().filter(|(_, &x)| x > 0).fold(0, |acc, (i, _)| acc | 1 << i)
    }
}

#[derive(Clone, Copy)]
struct Ctx {
    nvars: usize,
    order: MonomialOrder,
}

impl Ctx {
    fn cmp(&self, a: &Exp, b: &Exp) -> Ordering {
        match self.order {
            MonomialOrder::GrevLex => a.deg.cmp(&b.deg).then_with(|| {
                for i in (0..self.nvars).rev() {
                    if a.e[i] != b.e[i] {
                        return b.e[i].cmp(&a.e[i]);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Lex => {
                for i in 0..self.nvars {
                    if a.e[i] != b.e[i] {
                        return a.e[i].cmp(&b.e[i]);
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Terms in ascending order, leading term last, no zero coefficients.
type Terms<F> = Vec<(Exp, F)>;

fn to_terms<F: Scalar>(ctx: Ctx, p: &Polynomial<F>) -> Terms<F> {
    let mut t: Terms<F> = p.terms().map(|(m, c)| (Exp::from_monomial(m), c.clone())).collect();
    t.sort_by(|a, b| ctx.cmp(&a.0, &b.0));
    t
}

fn to_polynomial<F: Scalar>(ctx: Ctx, t: &Terms<F>) -> Polynomial<F> {
    Polynomial::from_terms(ctx.nvars, t.iter().map(|(e, c)| (e.to_monomial(ctx.nvars), c.clone())))
}

fn make_monic<F: Scalar>(t: &mut Terms<F>) {
    let lc = t.last().expect("nonzero polynomial").1.clone();
    if lc.is_one() {
        return;
    }
    let inv = lc.inverse();
    for (_, c) in t.iter_mut() {
        *c = c.clone() * inv.clone();
    }
}

/// `p - c * x^m * g`, all ascending.
fn sub_scaled<F: Scalar>(ctx: Ctx, p: &[(Exp, F)], c: &F, m: &Exp, g: &[(Exp, F)]) -> Terms<F> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    while i < p.len() || j < g.len() {
        let shifted = (j < g.len()).then(|| g[j].0.mul(m));
        let ord = match (i < p.len(), &shifted) {
            (true, Some(s)) => ctx.cmp(&p[i].0, s),
            (true, None) => Ordering::Less,
            (false, _) => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((shifted.unwrap(), -(c.clone() * g[j].1.clone())));
                j += 1;
            }
            Ordering::Equal => {
                let v = p[i].1.clone() - c.clone() * g[j].1.clone();
                if !v.is_zero() {
                    out.push((p[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

struct Reducer<'a, F> {
    polys: &'a [Terms<F>],
    leads: Vec<(Exp, u32)>,
}

impl<'a, F: Scalar> Reducer<'a, F> {
    fn new(polys: &'a [Terms<F>]) -> Self {
        let leads = polys
            .iter()
            .map(|g| {
                let lm = g.last().unwrap().0;
                (lm, lm.support_mask())
            })
            .collect();
        Reducer { polys, leads }
    }

    fn find_divisor(&self, m: &Exp, skip: Option<usize>) -> Option<usize> {
        let mask = m.support_mask();
        self.leads
            .iter()
            .enumerate()
            .find(|(k, (lm, lmask))| Some(*k) != skip && lmask & !mask == 0 && lm.divides(m))
            .map(|(k, _)| k)
    }

    /// Full reduction: no term of the result is divisible by a leading term.
    fn reduce(&self, ctx: Ctx, mut p: Terms<F>, skip: Option<usize>) -> Terms<F> {
        let mut rem: Terms<F> = Vec::new();
        while let Some((m, c)) = p.last().cloned() {
            match self.find_divisor(&m, skip) {
                Some(k) => {
                    let g = &self.polys[k];
                    let (lm, lc) = g.last().unwrap();
                    let q = m.quo(lm);
                    let coeff = if lc.is_one() { c } else { c / lc.clone() };
                    p = sub_scaled(ctx, &p, &coeff, &q, g);
                }
                None => {
                    p.pop();
                    rem.push((m, c));
                }
            }
        }
        rem.reverse();
        rem
    }
}

fn s_polynomial<F: Scalar>(ctx: Ctx, f: &Terms<F>, g: &Terms<F>) -> Terms<F> {
    let (fm, fc) = f.last().unwrap();
    let (gm, gc) = g.last().unwrap();
    let l = fm.lcm(gm);
    // (gc * l/fm) f - (fc * l/gm) g, with monic inputs both coefficients are 1
    let scaled: Terms<F> = f.iter().map(|(e, c)| (e.mul(&l.quo(fm)), c.clone() * gc.clone())).collect();
    let mut out = sub_scaled(ctx, &scaled, fc, &l.quo(gm), g);
    // leading terms cancel exactly
    debug_assert!(out.last().is_none_or(|(e, _)| ctx.cmp(e, &l) == Ordering::Less));
    out.retain(|(_, c)| !c.is_zero());
    out
}

fn pure_power_check(nvars: usize, leads: impl Iterator<Item = Exp>) -> bool {
    let mut seen = 0u32;
    for lm in leads {
        if lm.deg == 0 {
            return true;
        }
        let mask = lm.support_mask();
        if mask.count_ones() == 1 {
            seen |= mask;
        }
    }
    seen.count_ones() as usize == nvars
}

fn run_buchberger<F: Scalar>(ctx: Ctx, generators: &[Polynomial<F>], stop_if_empty: bool) -> (Vec<Terms<F>>, bool) {
    let mut gens: Vec<Terms<F>> =
        generators.iter().filter(|g| !g.is_zero()).map(|g| to_terms(ctx, g)).collect();
    gens.sort_by(|a, b| ctx.cmp(&a.last().unwrap().0, &b.last().unwrap().0));

    let mut basis: Vec<Terms<F>> = Vec::new();
    let mut heap: BinaryHeap<Reverse<(u32, u64, usize, usize)>> = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut seq = 0u64;

    let mut push = |basis: &mut Vec<Terms<F>>, mut h: Terms<F>, heap: &mut BinaryHeap<_>, pending: &mut HashSet<_>| {
        make_monic(&mut h);
        let t = basis.len();
        let lm = h.last().unwrap().0;
        for (k, g) in basis.iter().enumerate() {
            let l = g.last().unwrap().0.lcm(&lm);
            heap.push(Reverse((l.deg, seq, k, t)));
            seq += 1;
            pending.insert((k, t));
        }
        basis.push(h);
    };

    for g in gens {
        let r = Reducer::new(&basis).reduce(ctx, g, None);
        if !r.is_empty() {
            push(&mut basis, r, &mut heap, &mut pending);
        }
    }
    if stop_if_empty && pure_power_check(ctx.nvars, basis.iter().map(|g| g.last().unwrap().0)) {
        return (basis, true);
    }

    while let Some(Reverse((_, _, i, j))) = heap.pop() {
        pending.remove(&(i, j));
        let li = basis[i].last().unwrap().0;
        let lj = basis[j].last().unwrap().0;
        if li.coprime(&lj) {
            continue;
        }
        let l = li.lcm(&lj);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].last().unwrap().0.divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(ctx, &basis[i], &basis[j]);
        let r = Reducer::new(&basis).reduce(ctx, s, None);
        if !r.is_empty() {
            push(&mut basis, r, &mut heap, &mut pending);
            if stop_if_empty && pure_power_check(ctx.nvars, basis.iter().map(|g| g.last().unwrap().0)) {
                return (basis, true);
            }
        }
    }
    (basis, false)
}

/// Reduced Gröbner basis, sorted by ascending leading monomial.
#[derive(Clone)]
pub struct GroebnerBasis<F> {
    nvars: usize,
    order: MonomialOrder,
    terms: Vec<Terms<F>>,
    basis: Vec<Polynomial<F>>,
    leading: Vec<Monomial>,
}

/// Reduced Gröbner basis of `ideal` with respect to its monomial order.
pub fn buchberger<F: Scalar>(ideal: &Ideal<F>) -> GroebnerBasis<F> {
    let ctx = Ctx { nvars: ideal.nvars, order: ideal.order };
    let (mut basis, _) = run_buchberger(ctx, &ideal.generators, false);

    basis.sort_by(|a, b| ctx.cmp(&a.last().unwrap().0, &b.last().unwrap().0));
    // minimal: drop elements whose leading monomial is divisible by an earlier one
    let mut minimal: Vec<Terms<F>> = Vec::new();
    for g in basis {
        let lm = g.last().unwrap().0;
        if !minimal.iter().any(|h| h.last().unwrap().0.divides(&lm)) {
            minimal.push(g);
        }
    }
    let reduced: Vec<Terms<F>> = (0..minimal.len())
        .map(|k| {
            let mut g = minimal[k].clone();
            let lead = g.pop().unwrap();
            let mut tail = Reducer::new(&minimal).reduce(ctx, g, Some(k));
            tail.push(lead);
            tail
        })
        .collect();

    let basis: Vec<Polynomial<F>> = reduced.iter().map(|t| to_polynomial(ctx, t)).collect();
    let leading = reduced.iter().map(|t| t.last().unwrap().0.to_monomial(ctx.nvars)).collect();
    GroebnerBasis { nvars: ctx.nvars, order: ctx.order, terms: reduced, basis, leading }
}

impl<F: Scalar> GroebnerBasis<F> {
    fn ctx(&self) -> Ctx {
        Ctx { nvars: self.nvars, order: self.order }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn polynomials(&self) -> &[Polynomial<F>] {
        &self.basis
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.leading.iter().any(|m| m.degree() == 0)
    }

    /// Normal form of `p` modulo the ideal.
    pub fn reduce(&self, p: &Polynomial<F>) -> Polynomial<F> {
        let ctx = self.ctx();
        let r = Reducer::new(&self.terms).reduce(ctx, to_terms(ctx, p), None);
        to_polynomial(ctx, &r)
    }

    pub fn contains(&self, p: &Polynomial<F>) -> bool {
        self.reduce(p).is_zero()
    }

    /// S-polynomials of all pairs reduce to zero.
    pub fn is_groebner(&self) -> bool {
        let ctx = self.ctx();
        let red = Reducer::new(&self.terms);
        (0..self.terms.len()).all(|i| {
            (i + 1..self.terms.len()).all(|j| {
                red.reduce(ctx, s_polynomial(ctx, &self.terms[i], &self.terms[j]), None).is_empty()
            })
        })
    }

    /// Leading monomials do not divide any monomial of another element and
    /// leading coefficients are one.
    pub fn is_reduced(&self) -> bool {
        self.basis.iter().enumerate().all(|(i, g)| {
            g.leading_term_in(self.order).1.is_one()
                && self.leading.iter().enumerate().all(|(j, lm)| {
                    i == j || g.terms().all(|(m, _)| !lm.divides(m))
                })
        })
    }

    pub fn dimension(&self) -> DimensionReport {
        dimension(self)
    }

    pub fn hilbert_polynomial(&self) -> HilbertPolynomial {
        hilbert_polynomial(self)
    }
}

impl<F: Scalar> fmt::Debug for GroebnerBasis<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.basis.iter().map(ToString::to_string)).finish()
    }
}

trait LeadingIn<F> {
    fn leading_term_in(&self, order: MonomialOrder) -> (Monomial, F);
}

impl<F: Scalar> LeadingIn<F> for Polynomial<F> {
    fn leading_term_in(&self, order: MonomialOrder) -> (Monomial, F) {
        let ctx = Ctx { nvars: self.nvars(), order };
        let t = to_terms(ctx, self);
        let (e, c) = t.last().expect("nonzero polynomial").clone();
        (e.to_monomial(self.nvars()), c)
    }
}

/// Affine Krull dimension of `S / in(I)`: the largest set of variables
/// containing the support of no leading monomial. `-1` for the unit ideal.
fn leading_dimension(nvars: usize, leads: impl Iterator<Item = Exp>) -> i64 {
    let masks: Vec<u32> = leads.map(|e| e.support_mask()).collect();
    if masks.contains(&0) {
        return -1;
    }
    let mut best = 0i64;
    for s in 0u32..(1u32 << nvars) {
        let size = s.count_ones() as i64;
        if size > best && masks.iter().all(|&m| m & !s != 0) {
            best = size;
        }
    }
    best
}

/// Dimension data of `V(I) ⊆ P^(nvars-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    /// Ambient projective dimension `n`.
    pub ambient: usize,
    /// Krull dimension of `S/I`; `-1` when `I = S`.
    pub affine_dim: i64,
    /// `None` when the projective locus is empty.
    pub projective_dim: Option<usize>,
    pub codim: Option<usize>,
    /// Length of a zero-dimensional locus, from the Hilbert polynomial.
    pub length: Option<u64>,
}

impl DimensionReport {
    pub fn is_empty(&self) -> bool {
        self.projective_dim.is_none()
    }
}

impl fmt::Display for DimensionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.projective_dim, self.codim) {
            (Some(d), Some(c)) => {
                write!(f, "dimension {d}, codimension {c} in P^{}", self.ambient)?;
                if let Some(l) = self.length {
                    write!(f, ", length {l}")?;
                }
                Ok(())
            }
            _ => write!(f, "empty in P^{}", self.ambient),
        }
    }
}

pub fn dimension<F: Scalar>(g: &GroebnerBasis<F>) -> DimensionReport {
    let ambient = g.nvars - 1;
    let affine_dim = leading_dimension(g.nvars, g.terms.iter().map(|t| t.last().unwrap().0));
    if affine_dim <= 0 {
        return DimensionReport { ambient, affine_dim, projective_dim: None, codim: None, length: None };
    }
    let pd = (affine_dim - 1) as usize;
    let length = if pd == 0 {
        let hp = hilbert_polynomial(g);
        let c = hp.eval(0);
        Some(u64::try_from(c.to_integer()).expect("length is a nonnegative integer"))
    } else {
        None
    };
    DimensionReport { ambient, affine_dim, projective_dim: Some(pd), codim: Some(ambient - pd), length }
}

/// Number of standard monomials of degree `d`, i.e. `dim (S/I)_d`.
pub fn hilbert_function<F: Scalar>(g: &GroebnerBasis<F>, d: i64) -> usize {
    graded_basis(g.nvars - 1, d)
        .iter()
        .filter(|m| !g.leading.iter().any(|lm| lm.divides(m)))
        .count()
}

/// Univariate polynomial with rational coefficients, constant term first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HilbertPolynomial {
    coeffs: Vec<Rational>,
}

impl HilbertPolynomial {
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: i64) -> Rational {
        let t = Rational::from_integer(BigInt::from(t));
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * &t + c)
    }

    fn trimmed(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        HilbertPolynomial { coeffs }
    }
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let var = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            match (a.is_one(), i) {
                (true, 0) | (false, 0) => write!(f, "{a}")?,
                (true, _) => write!(f, "{var}")?,
                (false, _) => write!(f, "{a}*{var}")?,
            }
        }
        Ok(())
    }
}

fn minimalize(mut gens: Vec<Exp>) -> Vec<Exp> {
    gens.sort_by_key(|e| e.deg);
    gens.dedup();
    let mut out: Vec<Exp> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, y) in b.iter().enumerate() {
        a[i + shift] += y;
    }
}

/// Numerator `N(t)` of the Hilbert series `N(t) / (1-t)^nvars` of `S/(gens)`.
///
/// Pivots on a power of the most frequent variable:
/// `N(I) = N(I + p) + t^deg(p) N(I : p)`.
fn hilbert_numerator(nvars: usize, gens: Vec<Exp>) -> Vec<i64> {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.deg == 0) {
        return vec![0];
    }
    let coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.coprime(b)));
    if coprime {
        return gens.iter().fold(vec![1], |acc, g| {
            let mut f = vec![0; g.deg as usize + 1];
            f[0] = 1;
            f[g.deg as usize] = -1;
            poly_mul(&acc, &f)
        });
    }
    let var = (0..nvars).max_by_key(|&v| gens.iter().filter(|g| g.e[v] > 0).count()).unwrap();
    let exp = gens.iter().filter(|g| g.e[var] > 0).map(|g| g.e[var]).min().unwrap();
    let mut pivot = Exp { e: [0; MAX_VARS], deg: exp as u32 };
    pivot.e[var] = exp;

    let mut with_pivot = gens.clone();
    with_pivot.push(pivot);
    let colon: Vec<Exp> = gens
        .iter()
        .map(|g| {
            let mut h = *g;
            let d = h.e[var].min(exp);
            h.e[var] -= d;
            h.deg -= d as u32;
            h
        })
        .collect();
    let mut out = hilbert_numerator(nvars, with_pivot);
    let rest = hilbert_numerator(nvars, colon);
    poly_add_shifted(&mut out, &rest, exp as usize);
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

/// Hilbert polynomial of `S/I`, computed from the leading-term ideal.
pub fn hilbert_polynomial<F: Scalar>(g: &GroebnerBasis<F>) -> HilbertPolynomial {
    let mut num = hilbert_numerator(g.nvars, g.terms.iter().map(|t| t.last().unwrap().0).collect());
    if num.iter().all(|&c| c == 0) {
        return HilbertPolynomial { coeffs: Vec::new() };
    }
    // strip factors of (1 - t)
    let mut dim = g.nvars;
    while dim > 0 && num.iter().sum::<i64>() == 0 {
        let mut q = vec![0i64; num.len() - 1];
        let mut acc = 0;
        for (i, slot) in q.iter_mut().enumerate() {
            acc += num[i];
            *slot = acc;
        }
        num = q;
        dim -= 1;
    }
    if dim == 0 {
        return HilbertPolynomial { coeffs: Vec::new() };
    }
    // HP(s) = Σ_i q_i * binom(s - i + dim - 1, dim - 1)
    let mut total = vec![Rational::zero(); dim];
    let mut fact = BigInt::one();
    for j in 1..dim {
        fact *= BigInt::from(j);
    }
    for (i, &q) in num.iter().enumerate() {
        if q == 0 {
            continue;
        }
        let mut prod = vec![Rational::one()];
        for j in 1..dim {
            // multiply by (s + (j - i))
            let shift = Rational::from_integer(BigInt::from(j as i64 - i as i64));
            let mut next = vec![Rational::zero(); prod.len() + 1];
            for (k, c) in prod.iter().enumerate() {
                next[k] += c * &shift;
                next[k + 1] += c;
            }
            prod = next;
        }
        let scale = Rational::new(BigInt::from(q), fact.clone());
        for (k, c) in prod.into_iter().enumerate() {
            total[k] += c * &scale;
        }
    }
    HilbertPolynomial::trimmed(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{minors, LinearForm, LinearFormMatrix};
    use crate::scalar::{Fp, F101};
    use proptest::prelude::*;

    type Q = Rational;

    fn var(nv: usize, i: usize) -> Polynomial<Q> {
        Polynomial::var(nv, i)
    }

    fn ideal(nv: usize, gens: Vec<Polynomial<Q>>) -> Ideal<Q> {
        Ideal::new(nv, gens, MonomialOrder::GrevLex).unwrap()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let g = ideal(4, vec![var(4, 0), var(4, 1)]).groebner_basis();
        let shown: Vec<String> = g.polynomials().iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["x1", "x0"]);
        let d = g.dimension();
        assert_eq!(d.projective_dim, Some(1));
        assert_eq!(d.codim, Some(2));
    }

    #[test]
    fn principal_ideal() {
        let f = var(4, 0).mul(&var(4, 3)).sub(&var(4, 1).mul(&var(4, 2)));
        let g = ideal(4, vec![f.clone()]).groebner_basis();
        assert_eq!(g.polynomials().len(), 1);
        // monic under grevlex: leading x1*x2 with coefficient -1 gets normalized
        assert_eq!(g.polynomials()[0], f.scale(&Q::from_i64(-1)));
    }

    #[test]
    fn irrelevant_ideal_is_empty() {
        for n in 1..5 {
            let g = ideal(n + 1, (0..=n).map(|i| var(n + 1, i)).collect()).groebner_basis();
            assert!(g.dimension().is_empty());
            assert!(g.hilbert_polynomial().is_zero());
        }
    }

    #[test]
    fn zero_ideal_is_everything() {
        let g = ideal(4, vec![]).groebner_basis();
        let d = g.dimension();
        assert_eq!(d.projective_dim, Some(3));
        assert_eq!(d.codim, Some(0));
        let unit = ideal(3, vec![Polynomial::constant(3, Q::from_i64(5))]).groebner_basis();
        assert!(unit.is_unit_ideal());
        assert_eq!(unit.dimension().affine_dim, -1);
    }

    #[test]
    fn hilbert_polynomials_of_small_ideals() {
        let g = ideal(3, vec![var(3, 0), var(3, 1)]).groebner_basis();
        assert_eq!(g.hilbert_polynomial().to_string(), "1");
        let g = ideal(3, vec![var(3, 0)]).groebner_basis();
        assert_eq!(g.hilbert_polynomial().to_string(), "t + 1");
        let g = ideal(3, vec![var(3, 0), var(3, 1).mul(&var(3, 1))]).groebner_basis();
        assert_eq!(g.hilbert_polynomial().to_string(), "2");
        assert_eq!(g.dimension().length, Some(2));
        // twisted cubic-free sanity: a plane conic has HP 2t + 1
        let conic = var(3, 0).mul(&var(3, 1)).sub(&var(3, 2).mul(&var(3, 2)));
        assert_eq!(ideal(3, vec![conic]).groebner_basis().hilbert_polynomial().to_string(), "2*t + 1");
    }

    #[test]
    fn membership() {
        let g = ideal(3, vec![var(3, 0), var(3, 1)]).groebner_basis();
        assert!(g.contains(&var(3, 0).mul(&var(3, 2)).add(&var(3, 1))));
        assert!(!g.contains(&var(3, 2)));
    }

    fn ex4_alpha() -> LinearFormMatrix<Q> {
        // 0-indexed transcription of the 5x2 matrix on P^4
        let e = |i: usize, c: i64| LinearForm::<Q>::var(5, i, Q::from_i64(c));
        let z = LinearForm::<Q>::zero(5);
        let entries = vec![
            e(1, -1), e(4, -1),
            e(0, 1), e(2, 1),
            e(3, -1), e(1, -1),
            e(2, 1), z.clone(),
            z, e(0, 1),
        ];
        LinearFormMatrix::new(4, 5, 2, entries).unwrap()
    }

    #[test]
    fn ex4_minors_cut_a_conic() {
        let ms = minors(&ex4_alpha(), 2);
        assert_eq!(ms.len(), 10);
        let i = ideal(5, ms);
        let g = i.groebner_basis();
        assert!(g.is_groebner() && g.is_reduced());
        let d = g.dimension();
        assert_eq!(d.projective_dim, Some(1));
        // x0^2, x2^2 and x1^2 - x3*x4 are in the ideal: a smooth conic
        assert_eq!(g.hilbert_polynomial().to_string(), "2*t + 1");
        let lex = i.with_order(MonomialOrder::Lex).groebner_basis();
        assert_eq!(lex.dimension().projective_dim, Some(1));
        assert!(lex.is_groebner());
    }

    fn random_forms(seed: u64, nv: usize, count: usize, deg: usize) -> Vec<Polynomial<F101>> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let basis = graded_basis(nv - 1, deg as i64);
                let picks = rng.gen_range(1..=3);
                Polynomial::from_terms(
                    nv,
                    (0..picks).map(|_| (basis[rng.gen_range(0..basis.len())].clone(), F101::sample(&mut rng))),
                )
            })
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn reduced_basis_is_canonical(seed in 0u64..10_000, nv in 2usize..5, count in 1usize..4) {
            let gens = random_forms(seed, nv, count, 2);
            let a = Ideal::new(nv, gens.clone(), MonomialOrder::GrevLex).unwrap().groebner_basis();
            prop_assert!(a.is_groebner());
            prop_assert!(a.is_reduced());
            let mut permuted: Vec<_> = gens.iter().rev().cloned().collect();
            for (k, p) in permuted.iter_mut().enumerate() {
                *p = p.scale(&F101::from_i64(k as i64 + 2));
            }
            let b = Ideal::new(nv, permuted, MonomialOrder::GrevLex).unwrap().groebner_basis();
            prop_assert_eq!(a.polynomials(), b.polynomials());
            for g in &gens {
                prop_assert!(a.contains(g));
            }
        }

        #[test]
        fn dimension_is_order_independent(seed in 0u64..10_000, nv in 2usize..5, count in 1usize..4) {
            let gens = random_forms(seed, nv, count, 2);
            let i = Ideal::new(nv, gens, MonomialOrder::GrevLex).unwrap();
            let a = i.groebner_basis().dimension();
            let lex = i.with_order(MonomialOrder::Lex).groebner_basis();
            prop_assert!(lex.is_groebner() && lex.is_reduced());
            prop_assert_eq!(a.projective_dim, lex.dimension().projective_dim);
            prop_assert_eq!(i.has_empty_locus(), a.is_empty());
        }

        #[test]
        fn hilbert_polynomial_matches_monomial_count(seed in 0u64..10_000, nv in 2usize..5, count in 1usize..4) {
            let gens = random_forms(seed, nv, count, 2);
            let g = Ideal::new(nv, gens, MonomialOrder::GrevLex).unwrap().groebner_basis();
            let hp = g.hilbert_polynomial();
            let affine = g.dimension().affine_dim;
            prop_assert_eq!(hp.degree().map(|d| d as i64), if affine >= 1 { Some(affine - 1) } else { None });
            // quadrics in <= 4 variables: Hilbert function is polynomial from degree 8 on
            for d in 8..11 {
                prop_assert_eq!(hp.eval(d), Rational::from_integer(BigInt::from(hilbert_function(&g, d))));
            }
        }
    }

    #[test]
    fn works_over_other_primes() {
        type F7 = Fp<7>;
        let x = |i| Polynomial::<F7>::var(3, i);
        let i = Ideal::new(3, vec![x(0).mul(&x(1)), x(1).mul(&x(2)), x(0).mul(&x(2))], MonomialOrder::GrevLex).unwrap();
        let g = i.groebner_basis();
        // three coordinate points of P^2
        assert_eq!(g.dimension().length, Some(3));
    }
}
