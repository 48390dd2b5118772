//! Linear monads `0 → O(-1)^v → O^w → O(1)^u → 0` on `P^n`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactalg::Matrix;
use crate::groebner::{DimensionReport, HilbertPolynomial, Ideal, MonomialOrder};
use crate::polyring::{graded_basis, minors, LinearForm, LinearFormMatrix, Polynomial};
use crate::scalar::{FieldTag, Scalar};

/// `alpha` is `w × v`, `beta` is `u × w`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearMonad<F> {
    n: usize,
    v: usize,
    w: usize,
    u: usize,
    alpha: LinearFormMatrix<F>,
    beta: LinearFormMatrix<F>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub complex_ok: bool,
    pub beta_surjective: bool,
    pub alpha_generically_injective: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.complex_ok && self.beta_surjective && self.alpha_generically_injective
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        write!(
            f,
            "beta*alpha = 0: {}, beta surjective: {}, alpha generically injective: {}",
            yes_no(self.complex_ok),
            yes_no(self.beta_surjective),
            yes_no(self.alpha_generically_injective)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SheafClass {
    LocallyFree,
    ReflexiveNotLocallyFree,
    TorsionFreeNotReflexive,
    NotTorsionFree,
}

impl SheafClass {
    pub fn from_codim(codim: Option<usize>) -> Self {
        match codim {
            None => SheafClass::LocallyFree,
            Some(c) if c >= 3 => SheafClass::ReflexiveNotLocallyFree,
            Some(2) => SheafClass::TorsionFreeNotReflexive,
            Some(_) => SheafClass::NotTorsionFree,
        }
    }

    pub fn is_locally_free(self) -> bool {
        self == SheafClass::LocallyFree
    }

    pub fn is_reflexive(self) -> bool {
        matches!(self, SheafClass::LocallyFree | SheafClass::ReflexiveNotLocallyFree)
    }

    pub fn is_torsion_free(self) -> bool {
        self != SheafClass::NotTorsionFree
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SheafClass::LocallyFree => "locally-free",
            SheafClass::ReflexiveNotLocallyFree => "reflexive-not-locally-free",
            SheafClass::TorsionFreeNotReflexive => "torsion-free-not-reflexive",
            SheafClass::NotTorsionFree => "not-torsion-free",
        }
    }
}

impl fmt::Display for SheafClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone)]
pub struct ClassificationReport<F> {
    /// Nonzero `v × v` minors of alpha.
    pub ideal: Vec<Polynomial<F>>,
    pub locus: DimensionReport,
    pub locus_hilbert: HilbertPolynomial,
    /// `None` when the degeneration locus is empty.
    pub codim: Option<usize>,
    pub class: SheafClass,
    pub rank: i64,
    pub c1: i64,
}

impl<F: Scalar> fmt::Debug for ClassificationReport<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClassificationReport")
            .field("ideal", &self.ideal)
            .field("locus", &self.locus)
            .field("codim", &self.codim)
            .field("class", &self.class)
            .field("rank", &self.rank)
            .field("c1", &self.c1)
            .finish()
    }
}

/// Total Chern class, `coeffs[k]` multiplies `H^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernClass {
    pub coeffs: Vec<i64>,
}

impl ChernClass {
    pub fn c(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }
}

impl fmt::Display for ChernClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            }
            first = false;
            let a = c.unsigned_abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    write!(f, "H")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct DualReport<F> {
    pub monad: LinearMonad<F>,
    /// Whether the dual monad's cohomology is the dual sheaf; only
    /// guaranteed when the original sheaf is locally free.
    pub represents_dual: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FloystadReport {
    pub condition_i: bool,
    pub condition_ii: bool,
    pub exists: bool,
    /// `None` means the degeneration locus is expected to be empty.
    pub expected_codim: Option<usize>,
}

pub const GALLERY: &[&str] = &["dnoi", "ex-ref", "p5", "ex4", "nc-p2", "nc-p3"];

impl<F: Scalar> LinearMonad<F> {
    pub fn new(
        n: usize,
        v: usize,
        w: usize,
        u: usize,
        alpha: LinearFormMatrix<F>,
        beta: LinearFormMatrix<F>,
    ) -> Result<Self> {
        if n < 1 {
            return Err(Error::DimensionMismatch("n must be at least 1".into()));
        }
        if w < 1 {
            return Err(Error::DimensionMismatch("w must be at least 1".into()));
        }
        if alpha.n() != n || beta.n() != n {
            return Err(Error::DimensionMismatch(format!(
                "matrices live on P^{} and P^{}, expected P^{n}",
                alpha.n(),
                beta.n()
            )));
        }
        if (alpha.rows(), alpha.cols()) != (w, v) {
            return Err(Error::DimensionMismatch(format!(
                "alpha is {}x{}, expected {w}x{v}",
                alpha.rows(),
                alpha.cols()
            )));
        }
        if (beta.rows(), beta.cols()) != (u, w) {
            return Err(Error::DimensionMismatch(format!(
                "beta is {}x{}, expected {u}x{w}",
                beta.rows(),
                beta.cols()
            )));
        }
        Ok(LinearMonad { n, v, w, u, alpha, beta })
    }

    /// `O^w` with nothing on either side.
    pub fn trivial(n: usize, w: usize) -> Self {
        LinearMonad {
            n,
            v: 0,
            w,
            u: 0,
            alpha: LinearFormMatrix::zeros(n, w, 0),
            beta: LinearFormMatrix::zeros(n, 0, w),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn alpha(&self) -> &LinearFormMatrix<F> {
        &self.alpha
    }

    pub fn beta(&self) -> &LinearFormMatrix<F> {
        &self.beta
    }

    pub fn field(&self) -> FieldTag {
        F::field()
    }

    pub fn rank(&self) -> i64 {
        self.w as i64 - self.v as i64 - self.u as i64
    }

    pub fn c1(&self) -> i64 {
        self.v as i64 - self.u as i64
    }

    pub fn is_complex(&self) -> bool {
        self.beta.compose(&self.alpha).iter().flatten().all(Polynomial::is_zero)
    }

    pub fn beta_is_surjective(&self) -> bool {
        let ideal = Ideal::new(self.n + 1, minors(&self.beta, self.u), MonomialOrder::GrevLex)
            .expect("minors are homogeneous");
        ideal.has_empty_locus()
    }

    pub fn alpha_is_generically_injective(&self) -> bool {
        if self.v == 0 {
            return true;
        }
        if self.v > self.w {
            return false;
        }
        // full rank at a point forces a nonzero maximal minor
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..3 {
            let point: Vec<F> = (0..=self.n).map(|_| F::sample(&mut rng)).collect();
            if evaluate(&self.alpha, &point).rank() == self.v {
                return true;
            }
        }
        minors(&self.alpha, self.v).iter().any(|m| !m.is_zero())
    }

    pub fn validate(&self) -> ValidationReport {
        ValidationReport {
            complex_ok: self.is_complex(),
            beta_surjective: self.beta_is_surjective(),
            alpha_generically_injective: self.alpha_is_generically_injective(),
        }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidMonad(report))
        }
    }

    pub fn degeneration_ideal(&self) -> Ideal<F> {
        let gens = minors(&self.alpha, self.v).into_iter().filter(|m| !m.is_zero()).collect();
        Ideal::new(self.n + 1, gens, MonomialOrder::GrevLex).expect("minors are homogeneous")
    }

    pub fn classify(&self) -> Result<ClassificationReport<F>> {
        self.ensure_valid()?;
        Ok(self.classify_unchecked())
    }

    pub(crate) fn classify_unchecked(&self) -> ClassificationReport<F> {
        let ideal = self.degeneration_ideal();
        let gb = ideal.groebner_basis();
        let locus = gb.dimension();
        let locus_hilbert = gb.hilbert_polynomial();
        let codim = locus.codim;
        ClassificationReport {
            ideal: ideal.generators().to_vec(),
            locus,
            locus_hilbert,
            codim,
            class: SheafClass::from_codim(codim),
            rank: self.rank(),
            c1: self.c1(),
        }
    }

    pub fn chern_total(&self) -> ChernClass {
        chern_total(self.n, self.v, self.u)
    }

    pub fn euler_characteristic(&self, k: i64) -> i64 {
        let p = |t: i64| line_bundle_euler(self.n, t);
        self.w as i64 * p(k) - self.v as i64 * p(k - 1) - self.u as i64 * p(k + 1)
    }

    pub fn dual(&self) -> Self {
        LinearMonad {
            n: self.n,
            v: self.u,
            w: self.w,
            u: self.v,
            alpha: self.beta.transpose(),
            beta: self.alpha.transpose(),
        }
    }

    pub fn dual_report(&self) -> Result<DualReport<F>> {
        let class = self.classify()?.class;
        Ok(DualReport { monad: self.dual(), represents_dual: class.is_locally_free() })
    }

    /// Restricts to the hyperplane `x_index = 0`, renumbering the remaining
    /// variables.
    pub fn restrict_hyperplane(&self, index: usize) -> Result<(Self, ValidationReport)> {
        if self.n < 2 {
            return Err(Error::UnsupportedDimension("hyperplane restriction"));
        }
        if index > self.n {
            return Err(Error::DimensionMismatch(format!("variable x{index} does not exist on P^{}", self.n)));
        }
        let restricted = LinearMonad {
            n: self.n - 1,
            v: self.v,
            w: self.w,
            u: self.u,
            alpha: self.alpha.drop_variable(index),
            beta: self.beta.drop_variable(index),
        };
        let report = restricted.validate();
        if report.is_valid() {
            Ok((restricted, report))
        } else {
            Err(Error::InvalidRestriction { index, report })
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("summands live on P^{} and P^{}", self.n, other.n)));
        }
        Ok(LinearMonad {
            n: self.n,
            v: self.v + other.v,
            w: self.w + other.w,
            u: self.u + other.u,
            alpha: self.alpha.block_diag(&other.alpha),
            beta: self.beta.block_diag(&other.beta),
        })
    }
}

fn evaluate<F: Scalar>(m: &LinearFormMatrix<F>, point: &[F]) -> Matrix<F> {
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out[(i, j)] = m
                .get(i, j)
                .coeffs()
                .iter()
                .zip(point)
                .fold(F::zero(), |acc, (c, x)| acc + c.clone() * x.clone());
        }
    }
    out
}

/// `χ(O(t))` on `P^n`, i.e. `(t+1)(t+2)…(t+n)/n!`.
pub fn line_bundle_euler(n: usize, t: i64) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for j in 1..=n as i128 {
        num *= t as i128 + j;
        den *= j;
    }
    (num / den) as i64
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// `(1-H)^(-v) (1+H)^(-u)` truncated at `H^(n+1)`.
pub fn chern_total(n: usize, v: usize, u: usize) -> ChernClass {
    let (v, u) = (v as i64, u as i64);
    let a: Vec<i64> = (0..=n as i64).map(|k| if v == 0 { (k == 0) as i64 } else { binomial(v + k - 1, k) }).collect();
    let b: Vec<i64> = (0..=n as i64)
        .map(|k| {
            let mag = if u == 0 { (k == 0) as i64 } else { binomial(u + k - 1, k) };
            if k % 2 == 0 { mag } else { -mag }
        })
        .collect();
    let coeffs = (0..=n).map(|k| (0..=k).map(|i| a[i] * b[k - i]).sum()).collect();
    ChernClass { coeffs }
}

/// Existence of a linear monad with the given shape.
///
/// Condition (i): `w ≥ 2u + n − 1` and `w ≥ v + u`.
/// Condition (ii): `w ≥ v + u + n`, in which case the locus is empty.
pub fn floystad_exists(n: usize, v: usize, w: usize, u: usize) -> FloystadReport {
    let condition_i = w + 1 >= 2 * u + n && w >= v + u;
    let condition_ii = w >= v + u + n;
    let exists = condition_i || condition_ii;
    let expected = w as i64 - v as i64 - u as i64 + 1;
    let expected_codim = if condition_ii || expected > n as i64 || expected < 0 {
        None
    } else {
        Some(expected as usize)
    };
    FloystadReport { condition_i, condition_ii, exists, expected_codim }
}

enum Attempt<F> {
    Found(LinearMonad<F>),
    /// The solutions of `beta ∘ alpha = 0` cannot hold `v` independent columns.
    KernelTooSmall,
    Rejected,
}

fn linear_var_order(n: usize) -> Vec<usize> {
    graded_basis(n, 1)
        .iter()
        .map(|m| m.exponents().iter().position(|&e| e == 1).unwrap())
        .collect()
}

/// Random combination of kernel vectors of a `multiply_matrix(_, 1)`, read
/// back as `len` linear forms.
fn combine_kernel<F: Scalar>(n: usize, len: usize, kernel: &[Vec<F>], rng: &mut ChaCha8Rng) -> Vec<LinearForm<F>> {
    let nv = n + 1;
    let var_of = linear_var_order(n);
    let mut acc = vec![F::zero(); len * nv];
    for vec in kernel {
        let c = F::sample(rng);
        if c.is_zero() {
            continue;
        }
        for (slot, x) in acc.iter_mut().zip(vec) {
            *slot = slot.clone() + c.clone() * x.clone();
        }
    }
    (0..len)
        .map(|i| {
            let mut coeffs = vec![F::zero(); nv];
            for s in 0..nv {
                coeffs[var_of[s]] = acc[i * nv + s].clone();
            }
            LinearForm::new(coeffs)
        })
        .collect()
}

fn attempt<F: Scalar>(n: usize, v: usize, w: usize, u: usize, rng: &mut ChaCha8Rng) -> Attempt<F> {
    let nv = n + 1;
    let beta = LinearFormMatrix::from_fn(n, u, w, |_, _| LinearForm::new((0..nv).map(|_| F::sample(rng)).collect()));
    let candidate = LinearMonad { n, v, w, u, alpha: LinearFormMatrix::zeros(n, w, v), beta };
    if !candidate.beta_is_surjective() {
        return Attempt::Rejected;
    }
    let kernel = crate::polyring::multiply_matrix(&candidate.beta, 1).kernel_basis();
    if kernel.len() < v {
        return Attempt::KernelTooSmall;
    }
    let mut alpha = LinearFormMatrix::zeros(n, w, v);
    for j in 0..v {
        for (i, f) in combine_kernel(n, w, &kernel, rng).into_iter().enumerate() {
            alpha.set(i, j, f);
        }
    }
    let m = LinearMonad { alpha, ..candidate };
    debug_assert!(m.is_complex());
    if m.alpha_is_generically_injective() {
        Attempt::Found(m)
    } else {
        Attempt::Rejected
    }
}

/// `w × u` block matrix `[T_p; T_q]` where `T_p` multiplies a polynomial of
/// degree `< u` in an auxiliary variable `t` by `p = x_0 + … + x_a t^a`, and
/// `T_q` by `q = x_{a+1} + … + x_n t^b`, `a + b = n - 1`. Rows past
/// `2u + n - 1` are zero. Injective at every point of `P^n`.
fn kronecker_block<F: Scalar>(n: usize, w: usize, u: usize) -> LinearFormMatrix<F> {
    let a = (n - 1) / 2;
    let b = n - 1 - a;
    let nv = n + 1;
    LinearFormMatrix::from_fn(n, w, u, |i, j| {
        let (offset, first, top) = if i < u + a {
            (i, 0, a)
        } else if i < 2 * u + n - 1 {
            (i - u - a, a + 1, b)
        } else {
            return LinearForm::zero(nv);
        };
        match offset.checked_sub(j) {
            Some(d) if d <= top => LinearForm::var(nv, first + d, F::one()),
            _ => LinearForm::zero(nv),
        }
    })
}

/// Needs `w >= 2u + n - 1`. beta is the transpose of [`kronecker_block`],
/// so surjective everywhere, and alpha is drawn from its linear syzygies.
/// A random change of coordinates is applied at the end.
fn kronecker_attempt<F: Scalar>(n: usize, v: usize, w: usize, u: usize, rng: &mut ChaCha8Rng) -> Attempt<F> {
    if w < 2 * u + n - 1 {
        return Attempt::KernelTooSmall;
    }
    let block = kronecker_block::<F>(n, w, u);
    let kernel = crate::polyring::multiply_matrix(&block.transpose(), 1).kernel_basis();
    if kernel.len() < v {
        return Attempt::KernelTooSmall;
    }
    let mut alpha = LinearFormMatrix::zeros(n, w, v);
    for j in 0..v {
        for (i, f) in combine_kernel(n, w, &kernel, rng).into_iter().enumerate() {
            alpha.set(i, j, f);
        }
    }
    let g = loop {
        let g = Matrix::from_vec(n + 1, n + 1, (0..(n + 1) * (n + 1)).map(|_| F::sample(rng)).collect());
        if g.rank() == n + 1 {
            break g;
        }
    };
    let m = LinearMonad { n, v, w, u, alpha: substitute(&alpha, &g), beta: substitute(&block.transpose(), &g) };
    debug_assert!(m.is_complex() && m.beta_is_surjective());
    if m.alpha_is_generically_injective() {
        Attempt::Found(m)
    } else {
        Attempt::Rejected
    }
}

/// `x_i ↦ Σ_j g_ij x_j` in every entry.
fn substitute<F: Scalar>(m: &LinearFormMatrix<F>, g: &Matrix<F>) -> LinearFormMatrix<F> {
    let nv = g.rows();
    LinearFormMatrix::from_fn(m.n(), m.rows(), m.cols(), |i, j| {
        let c = m.get(i, j).coeffs();
        LinearForm::new(
            (0..nv).map(|t| (0..nv).fold(F::zero(), |acc, s| acc + c[s].clone() * g.row(s)[t].clone())).collect(),
        )
    })
}

/// Seeded sampler: draws beta until surjective, then alpha from the
/// solutions of `beta ∘ alpha = 0` until generically injective.
///
/// When a generic beta leaves too few solutions, the same procedure runs on
/// the dual shape `(u, w, v)` and the result is dualized. If that also fails,
/// beta is taken from a fixed family that is surjective everywhere (see
/// [`kronecker_block`]), which covers every shape with `w >= 2u + n - 1`.
pub fn random_monad<F: Scalar>(
    n: usize,
    v: usize,
    w: usize,
    u: usize,
    seed: u64,
    max_tries: usize,
) -> Result<LinearMonad<F>> {
    if n < 1 || w < 1 {
        return Err(Error::DimensionMismatch("need n >= 1 and w >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..max_tries {
        match attempt(n, v, w, u, &mut rng) {
            Attempt::Found(m) => return Ok(m),
            Attempt::KernelTooSmall => {
                if let Attempt::Found(d) = attempt::<F>(n, u, w, v, &mut rng) {
                    let m = d.dual();
                    if m.beta_is_surjective() {
                        return Ok(m);
                    }
                }
                if let Attempt::Found(m) = kronecker_attempt(n, v, w, u, &mut rng) {
                    return Ok(m);
                }
            }
            Attempt::Rejected => {}
        }
    }
    Err(Error::ExhaustedTries(max_tries))
}

/// `beta = (x_0 … x_n)` and `alpha = A x` for antisymmetric `A`.
pub fn nullcorrelation<F: Scalar>(n: usize, a: &Matrix<F>) -> Result<LinearMonad<F>> {
    if a.rows() != n + 1 || a.cols() != n + 1 {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{}, expected {}x{}",
            a.rows(),
            a.cols(),
            n + 1,
            n + 1
        )));
    }
    if a.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    for i in 0..=n {
        for j in 0..=n {
            if !(a[(i, j)].clone() + a[(j, i)].clone()).is_zero() {
                return Err(Error::NotAntisymmetric);
            }
        }
    }
    let nv = n + 1;
    let alpha = LinearFormMatrix::from_fn(n, nv, 1, |i, _| LinearForm::new(a.row(i).to_vec()));
    let beta = LinearFormMatrix::from_fn(n, 1, nv, |_, j| LinearForm::var(nv, j, F::one()));
    LinearMonad::new(n, 1, nv, 1, alpha, beta)
}

pub fn random_antisymmetric<F: Scalar, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix<F> {
    let mut a = Matrix::zeros(n + 1, n + 1);
    for i in 0..=n {
        for j in i + 1..=n {
            let c = F::sample(rng);
            a[(j, i)] = -c.clone();
            a[(i, j)] = c;
        }
    }
    a
}

/// Projective dimension of the space of antisymmetric `(n+1)×(n+1)`
/// matrices up to scale.
pub fn moduli_dimension_nullcorrelation(n: usize) -> usize {
    n * (n + 1) / 2 - 1
}

pub fn gallery<F: Scalar>(name: &str) -> Result<LinearMonad<F>> {
    let form = |n: usize, terms: &[(usize, i64)]| {
        let mut c = vec![0i64; n + 1];
        for &(i, a) in terms {
            c[i] = a;
        }
        LinearForm::<F>::from_i64(&c)
    };
    let column = |n: usize, entries: Vec<LinearForm<F>>| {
        let rows = entries.len();
        LinearFormMatrix::new(n, rows, 1, entries).expect("consistent shape")
    };
    let row = |n: usize, entries: Vec<LinearForm<F>>| {
        let cols = entries.len();
        LinearFormMatrix::new(n, 1, cols, entries).expect("consistent shape")
    };
    let coords = |n: usize| (0..=n).map(|i| form(n, &[(i, 1)])).collect::<Vec<_>>();
    let m = match name {
        "dnoi" => {
            let alpha = column(3, vec![form(3, &[(0, 1)]), form(3, &[(1, 1)]), form(3, &[]), form(3, &[])]);
            let beta = row(3, vec![form(3, &[(1, -1)]), form(3, &[(0, 1)]), form(3, &[(2, 1)]), form(3, &[(3, 1)])]);
            LinearMonad::new(3, 1, 4, 1, alpha, beta)
        }
        "ex-ref" => {
            let alpha = column(
                3,
                vec![form(3, &[(0, 1)]), form(3, &[(1, 1)]), form(3, &[]), form(3, &[]), form(3, &[(2, 1)])],
            );
            let beta = row(
                3,
                vec![form(3, &[(1, -1)]), form(3, &[(0, 1)]), form(3, &[(2, 1)]), form(3, &[(3, 1)]), form(3, &[])],
            );
            LinearMonad::new(3, 1, 5, 1, alpha, beta)
        }
        "p5" => {
            let alpha = column(
                5,
                vec![
                    form(5, &[(1, -1)]),
                    form(5, &[(0, 1)]),
                    form(5, &[(3, -1)]),
                    form(5, &[(2, 1)]),
                    form(5, &[]),
                    form(5, &[]),
                ],
            );
            LinearMonad::new(5, 1, 6, 1, alpha, row(5, coords(5)))
        }
        "ex4" => {
            let e = |i: usize, c: i64| form(4, &[(i, c)]);
            let z = || form(4, &[]);
            let entries = vec![e(1, -1), e(4, -1), e(0, 1), e(2, 1), e(3, -1), e(1, -1), e(2, 1), z(), z(), e(0, 1)];
            let alpha = LinearFormMatrix::new(4, 5, 2, entries).expect("consistent shape");
            LinearMonad::new(4, 2, 5, 1, alpha, row(4, coords(4)))
        }
        "nc-p2" => {
            let alpha = column(2, vec![form(2, &[(0, 1)]), form(2, &[(1, 1)]), form(2, &[])]);
            let beta = row(2, vec![form(2, &[(1, -1)]), form(2, &[(0, 1)]), form(2, &[(2, 1)])]);
            LinearMonad::new(2, 1, 3, 1, alpha, beta)
        }
        "nc-p3" => {
            let a = Matrix::from_i64_rows(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]);
            nullcorrelation(3, &a)
        }
        _ => return Err(Error::UnknownGallery(name.to_string())),
    };
    Ok(m.expect("gallery shapes are consistent"))
}
