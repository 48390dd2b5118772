//! `h^p(E(k))` for the cohomology sheaf `E` of a linear monad, by exact
//! ranks of the multiplication maps on sections and on `H^n`.

use std::fmt;

use crate::error::{Error, Result};
use crate::monad::{LinearMonad, SheafClass};
use crate::polyring::{graded_dim, multiply_matrix, serre_dim, serre_multiply_matrix};
use crate::scalar::Scalar;

/// The three ranks that determine every `h^p(E(k))`.
#[derive(Clone, Copy, Debug)]
struct TwistRanks {
    /// `B_k` on sections.
    b: usize,
    /// `A''_k` on Serre bases.
    a_top: usize,
    /// `B''_k` on Serre bases.
    b_top: usize,
}

fn ranks<F: Scalar>(m: &LinearMonad<F>, k: i64) -> TwistRanks {
    let rank = |mat: crate::exactalg::Matrix<F>| if mat.rows() == 0 || mat.cols() == 0 { 0 } else { mat.rank() };
    TwistRanks {
        b: if k >= 0 && m.u() > 0 { rank(multiply_matrix(m.beta(), k)) } else { 0 },
        a_top: if m.v() > 0 { rank(serre_multiply_matrix(m.alpha(), k - 1)) } else { 0 },
        b_top: if m.u() > 0 { rank(serre_multiply_matrix(m.beta(), k)) } else { 0 },
    }
}

/// All `h^p(E(k))`, `p = 0..=n`, for a validated monad with `n ≥ 2`.
fn column<F: Scalar>(m: &LinearMonad<F>, k: i64) -> Vec<usize> {
    let n = m.n();
    let (v, w, u) = (m.v() as i64, m.w() as i64, m.u() as i64);
    let s = |d: i64| graded_dim(n, d) as i64;
    let h = |d: i64| serre_dim(n, d) as i64;
    let r = ranks(m, k);
    let (rb, ra, rbt) = (r.b as i64, r.a_top as i64, r.b_top as i64);

    let ker_a_top = v * h(k - 1) - ra;
    let mut col = vec![0i64; n + 1];
    col[0] = w * s(k) - rb - v * s(k - 1);
    col[1] = u * s(k + 1) - rb;
    if n == 2 {
        col[1] += ker_a_top;
    } else {
        col[n - 1] = ker_a_top;
    }
    col[n] = w * h(k) - rbt - ra;
    col.into_iter()
        .map(|x| usize::try_from(x).expect("cohomology dimensions are nonnegative for valid monads"))
        .collect()
}

fn check_dimension<F: Scalar>(m: &LinearMonad<F>) -> Result<()> {
    if m.n() < 2 {
        return Err(Error::UnsupportedDimension("cohomology"));
    }
    Ok(())
}

pub fn h_p<F: Scalar>(m: &LinearMonad<F>, p: usize, k: i64) -> Result<usize> {
    check_dimension(m)?;
    if p > m.n() {
        return Err(Error::DegreeOutOfRange { p, n: m.n() });
    }
    m.ensure_valid()?;
    Ok(column(m, k)[p])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub n: usize,
    pub k_min: i64,
    pub k_max: i64,
    /// `h[p][k - k_min]`.
    pub h: Vec<Vec<usize>>,
    pub chi: Vec<i64>,
    /// `h^1(E(-1))` when `v = u` and `-1` lies in the window.
    pub charge: Option<usize>,
    /// Natural cohomology for each `k` in `[-n, -1]`.
    pub natural: Vec<bool>,
}

impl CohomologyTable {
    pub fn get(&self, p: usize, k: i64) -> usize {
        self.h[p][(k - self.k_min) as usize]
    }

    pub fn column(&self, k: i64) -> Vec<usize> {
        (0..=self.n).map(|p| self.get(p, k)).collect()
    }

    pub fn twists(&self) -> impl Iterator<Item = i64> {
        self.k_min..=self.k_max
    }

    /// Whether every column satisfies `Σ (-1)^p h^p = χ`.
    pub fn euler_consistent(&self) -> bool {
        self.twists().zip(&self.chi).all(|(k, &chi)| {
            let alt: i64 = self.column(k).iter().enumerate().map(|(p, &x)| if p % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
            alt == chi
        })
    }
}

impl fmt::Display for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .h
            .iter()
            .flatten()
            .map(|x| x.to_string().len())
            .chain(self.chi.iter().map(|x| x.to_string().len()))
            .chain(self.twists().map(|k| k.to_string().len()))
            .max()
            .unwrap_or(1);
        write!(f, "{:>6}", "k")?;
        for k in self.twists() {
            write!(f, " {k:>width$}")?;
        }
        writeln!(f)?;
        for p in (0..=self.n).rev() {
            write!(f, "{:>6}", format!("h^{p}"))?;
            for x in &self.h[p] {
                write!(f, " {x:>width$}")?;
            }
            writeln!(f)?;
        }
        write!(f, "{:>6}", "chi")?;
        for x in &self.chi {
            write!(f, " {x:>width$}")?;
        }
        writeln!(f)?;
        if let Some(c) = self.charge {
            writeln!(f, "charge {c}")?;
        }
        Ok(())
    }
}

fn is_natural(col: &[usize]) -> bool {
    col.iter().filter(|&&x| x != 0).count() <= 1
}

pub fn cohomology_table<F: Scalar>(m: &LinearMonad<F>, k_min: i64, k_max: i64) -> Result<CohomologyTable> {
    check_dimension(m)?;
    if k_min > k_max {
        return Err(Error::EmptyWindow { k_min, k_max });
    }
    m.ensure_valid()?;
    Ok(table_unchecked(m, k_min, k_max))
}

fn table_unchecked<F: Scalar>(m: &LinearMonad<F>, k_min: i64, k_max: i64) -> CohomologyTable {
    let n = m.n();
    let cols: Vec<Vec<usize>> = (k_min..=k_max).map(|k| column(m, k)).collect();
    let h = (0..=n).map(|p| cols.iter().map(|c| c[p]).collect()).collect();
    let chi = (k_min..=k_max).map(|k| m.euler_characteristic(k)).collect();
    let charge = (m.v() == m.u() && (k_min..=k_max).contains(&-1)).then(|| cols[(-1 - k_min) as usize][1]);
    let natural = (-(n as i64)..=-1)
        .map(|k| if (k_min..=k_max).contains(&k) { is_natural(&cols[(k - k_min) as usize]) } else { is_natural(&column(m, k)) })
        .collect();
    CohomologyTable { n, k_min, k_max, h, chi, charge, natural }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstantonFailure {
    C1Nonzero(i64),
    NotTorsionFree,
    /// `h^p(E(k)) = h` should vanish.
    Cohomology { p: usize, k: i64, h: usize },
}

impl fmt::Display for InstantonFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstantonFailure::C1Nonzero(c) => write!(f, "c1 = {c} is not zero"),
            InstantonFailure::NotTorsionFree => write!(f, "not torsion-free"),
            InstantonFailure::Cohomology { p, k, h } => write!(f, "h^{p}(E({k})) = {h}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstantonReport {
    pub is_instanton_candidate: bool,
    /// `-χ(E(-1))`.
    pub charge: i64,
    pub c1: i64,
    pub rank: i64,
    pub class: SheafClass,
    /// `(p, k, h^p(E(k)))` for each computed vanishing condition.
    pub checked: Vec<(usize, i64, usize)>,
    /// Middle degrees `2 ≤ p ≤ n-2` vanish for every linear monad; they are
    /// not recomputed.
    pub middle_degrees_structural: bool,
    pub failures: Vec<InstantonFailure>,
}

pub fn instanton_check<F: Scalar>(m: &LinearMonad<F>) -> Result<InstantonReport> {
    check_dimension(m)?;
    m.ensure_valid()?;
    let n = m.n();
    let class = m.classify_unchecked().class;
    let mut conditions = vec![(0, -1), (n, -(n as i64))];
    if n >= 3 {
        conditions.push((1, -2));
        conditions.push((n - 1, 1 - n as i64));
    }
    let checked: Vec<(usize, i64, usize)> = conditions.into_iter().map(|(p, k)| (p, k, column(m, k)[p])).collect();

    let mut failures = Vec::new();
    if m.c1() != 0 {
        failures.push(InstantonFailure::C1Nonzero(m.c1()));
    }
    if !class.is_torsion_free() {
        failures.push(InstantonFailure::NotTorsionFree);
    }
    for &(p, k, h) in &checked {
        if h != 0 {
            failures.push(InstantonFailure::Cohomology { p, k, h });
        }
    }
    Ok(InstantonReport {
        is_instanton_candidate: failures.is_empty(),
        charge: -m.euler_characteristic(-1),
        c1: m.c1(),
        rank: m.rank(),
        class,
        checked,
        middle_degrees_structural: n >= 4,
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityProbe {
    pub h0_e_minus1: usize,
    pub h0_e: usize,
    /// Only computed when `E` is locally free.
    pub h0_dual_minus1: Option<usize>,
    pub h0_dual: Option<usize>,
    /// `max(0, w - u(n+1))`.
    pub lower_bound_h0: usize,
    pub class: SheafClass,
    pub rank: i64,
    pub instanton: bool,
    pub charge: i64,
    /// Instanton with `rank > (n-1) * charge`: no stable sheaf exists.
    pub stability_excluded: bool,
    pub semistable: Option<bool>,
    pub stable: Option<bool>,
    pub caveats: Vec<String>,
}

pub fn stability_probe<F: Scalar>(m: &LinearMonad<F>) -> Result<StabilityProbe> {
    let inst = instanton_check(m)?;
    let n = m.n();
    let class = inst.class;
    let lf = class.is_locally_free();
    let h0_e_minus1 = column(m, -1)[0];
    let h0_e = column(m, 0)[0];
    let (h0_dual_minus1, h0_dual) = if lf {
        let d = m.dual();
        (Some(column(&d, -1)[0]), Some(column(&d, 0)[0]))
    } else {
        (None, None)
    };
    let lower_bound_h0 = m.w().saturating_sub(m.u() * (n + 1));
    let charge = inst.charge;
    let rank = inst.rank;
    let instanton = inst.is_instanton_candidate;
    let stability_excluded = instanton && rank > (n as i64 - 1) * charge;

    let mut caveats = Vec::new();
    let mut semistable = None;
    let mut stable = None;
    if h0_e_minus1 > 0 || h0_dual_minus1.is_some_and(|h| h > 0) {
        semistable = Some(false);
        stable = Some(false);
    } else if instanton && rank == 2 && (n == 2 || n == 3) {
        semistable = Some(true);
        if lf {
            stable = Some(h0_e == 0 && h0_dual == Some(0));
        } else {
            caveats.push("not locally free: h^0(E) = 0 does not decide stability here".to_string());
        }
    }
    if class.is_torsion_free() && m.c1() == 0 && h0_e > 0 {
        stable = Some(false);
    }
    if stability_excluded {
        stable = Some(false);
    }
    if !lf {
        caveats.push("dual cohomology skipped: the dual monad does not represent E* when E is not locally free".to_string());
    }
    Ok(StabilityProbe {
        h0_e_minus1,
        h0_e,
        h0_dual_minus1,
        h0_dual,
        lower_bound_h0,
        class,
        rank,
        instanton,
        charge,
        stability_excluded,
        semistable,
        stable,
        caveats,
    })
}

/// `h^p(E(k)) = h^{n-p}(E*(-k-n-1))` for all `p`, the right side computed
/// on the dual monad.
pub fn serre_duality_check<F: Scalar>(m: &LinearMonad<F>, k: i64) -> Result<bool> {
    check_dimension(m)?;
    m.ensure_valid()?;
    if !m.classify_unchecked().class.is_locally_free() {
        return Err(Error::NotLocallyFree);
    }
    let n = m.n();
    let lhs = column(m, k);
    let rhs = column(&m.dual(), -k - n as i64 - 1);
    Ok((0..=n).all(|p| lhs[p] == rhs[n - p]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::{gallery, random_monad, GALLERY};
    use crate::scalar::{Rational, F101};

    type Q = Rational;

    fn g(name: &str) -> LinearMonad<Q> {
        gallery(name).unwrap()
    }

    #[test]
    fn dnoi_values() {
        let m = g("dnoi");
        assert_eq!(h_p(&m, 1, -1).unwrap(), 1);
        assert_eq!(h_p(&m, 2, -3).unwrap(), 1);
        assert_eq!(h_p(&m, 0, 1).unwrap(), 5);
        assert!(matches!(h_p(&m, 4, 0), Err(Error::DegreeOutOfRange { p: 4, n: 3 })));
    }

    #[test]
    fn dnoi_table() {
        let t = cohomology_table(&g("dnoi"), -4, 1).unwrap();
        let cols: Vec<Vec<usize>> = t.twists().map(|k| t.column(k)).collect();
        assert_eq!(
            cols,
            [vec![0, 0, 2, 2], vec![0, 0, 1, 0], vec![0; 4], vec![0, 1, 0, 0], vec![0; 4], vec![5, 0, 0, 0]]
        );
        assert_eq!(t.chi, [0, 1, 0, -1, 0, 5]);
        assert!(t.euler_consistent());
        assert_eq!(t.charge, Some(1));
        assert_eq!(t.natural, [true, true, true]);
    }

    #[test]
    fn trivial_bundle() {
        for n in 2..5 {
            let t = cohomology_table(&LinearMonad::<Q>::trivial(n, 1), 0, 0).unwrap();
            let mut expected = vec![0; n + 1];
            expected[0] = 1;
            assert_eq!(t.column(0), expected);
            assert!(serre_duality_check(&LinearMonad::<Q>::trivial(n, 1), -2).unwrap());
        }
    }

    #[test]
    fn rejects_p1_and_bad_windows() {
        let m = random_monad::<F101>(1, 1, 3, 1, 0, 50).unwrap();
        assert_eq!(h_p(&m, 0, 0), Err(Error::UnsupportedDimension("cohomology")));
        assert!(matches!(cohomology_table(&g("dnoi"), 1, 0), Err(Error::EmptyWindow { .. })));
    }

    #[test]
    fn h0_image_dimension_matches_rank() {
        // dim im A_k = v * dim S_{k-1}, checked by explicit rank
        for name in GALLERY {
            let m = g(name);
            for k in 0..3 {
                let a = multiply_matrix(m.alpha(), k - 1);
                let expected = m.v() * graded_dim(m.n(), k - 1);
                let r = if a.cols() == 0 { 0 } else { a.rank() };
                assert_eq!(r, expected, "{name} k={k}");
            }
        }
    }

    #[test]
    fn instantons() {
        let r = instanton_check(&g("dnoi")).unwrap();
        assert!(r.is_instanton_candidate);
        assert_eq!((r.charge, r.rank), (1, 2));
        let r = instanton_check(&g("ex4")).unwrap();
        assert!(!r.is_instanton_candidate);
        assert!(r.failures.contains(&InstantonFailure::C1Nonzero(1)));
        let r = instanton_check(&g("nc-p3")).unwrap();
        assert!(r.is_instanton_candidate);
        assert_eq!(r.charge, 1);
        assert!(r.class.is_locally_free());
        assert!(r.checked.iter().all(|&(_, _, h)| h == 0));
    }

    #[test]
    fn stability() {
        let s = stability_probe(&g("nc-p3")).unwrap();
        assert_eq!((s.semistable, s.stable), (Some(true), Some(true)));
        assert_eq!((s.h0_e, s.h0_dual), (0, Some(0)));

        let s = stability_probe(&g("dnoi")).unwrap();
        assert_eq!((s.semistable, s.stable), (Some(true), None));
        assert!(!s.caveats.is_empty());
        assert_eq!(s.h0_dual, None);

        let s = stability_probe(&g("nc-p2")).unwrap();
        assert_eq!((s.h0_e, s.h0_e_minus1), (0, 0));

        for name in GALLERY {
            let s = stability_probe(&g(name)).unwrap();
            assert!(s.h0_e >= s.lower_bound_h0);
        }
    }

    #[test]
    fn serre_duality() {
        let m = g("nc-p3");
        assert!(serre_duality_check(&m, -1).unwrap());
        assert_eq!(h_p(&m, 1, -1).unwrap(), 1);
        assert_eq!(h_p(&m.dual(), 2, -3).unwrap(), 1);
        assert_eq!(serre_duality_check(&g("p5"), 0), Err(Error::NotLocallyFree));
    }

    #[test]
    fn euler_consistency_on_random_monads() {
        for seed in 0..12u64 {
            let n = 2 + (seed % 3) as usize;
            let v = 1 + (seed % 2) as usize;
            let u = (seed % 3) as usize;
            let w = v + u + n;
            let m = random_monad::<F101>(n, v, w, u, seed, 50).unwrap();
            let t = cohomology_table(&m, -(n as i64) - 2, 2).unwrap();
            assert!(t.euler_consistent(), "seed {seed}");
        }
    }
}
