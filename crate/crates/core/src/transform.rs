//! Cauchy transforms `(K mu)(w) = int mu(d zeta) / (1 - w conj(zeta))` of
//! atomic measures and the functions `h` built from them.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::poly_eval;
use crate::measure::AtomicMeasure;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A function holomorphic on (a neighborhood of) the region where it is
/// sampled. Used by the contour-integration zero finder.
pub trait Holomorphic {
    fn value(&self, w: Complex64) -> Complex64;
    fn derivative(&self, w: Complex64) -> Complex64;
}

fn check_disk(w: Complex64) -> Result<()> {
    let r = w.norm();
    if r < 1.0 {
        Ok(())
    } else {
        Err(Error::OutsideDisk { modulus: r })
    }
}

fn cauchy_sum(mu: &AtomicMeasure, w: Complex64) -> Complex64 {
    mu.atoms().iter().map(|&(p, c)| c / (ONE - w * p.value().conj())).sum::<Complex64>() + mu.lebesgue()
}

fn cauchy_sum_derivative(mu: &AtomicMeasure, w: Complex64) -> Complex64 {
    mu.atoms()
        .iter()
        .map(|&(p, c)| {
            let zb = p.value().conj();
            let d = ONE - w * zb;
            c * zb / (d * d)
        })
        .sum()
}

/// `(K mu)(w)` for `|w| < 1`.
pub fn eval_k(mu: &AtomicMeasure, w: Complex64) -> Result<Complex64> {
    check_disk(w)?;
    Ok(cauchy_sum(mu, w))
}

/// `n`-th Taylor coefficient of `K mu` at 0: `int conj(zeta)^n d mu`.
pub fn taylor_moment(mu: &AtomicMeasure, n: u32) -> Complex64 {
    let atoms: Complex64 = mu.atoms().iter().map(|&(p, c)| c * p.value().conj().powu(n)).sum();
    if n == 0 {
        atoms + mu.lebesgue()
    } else {
        atoms
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `h = K mu`.
    Direct,
    /// `h = 1 + w (K sigma)(w)`, so that `B h = K sigma` and `h(0) = 1`.
    Shifted,
}

/// A holomorphic function on the disk determined by an atomic measure.
#[derive(Clone, Debug, PartialEq)]
pub struct CauchyFunction {
    pub source: AtomicMeasure,
    pub mode: Mode,
}

impl CauchyFunction {
    pub fn direct(mu: AtomicMeasure) -> Self {
        Self { source: mu, mode: Mode::Direct }
    }

    pub fn shifted(sigma: AtomicMeasure) -> Self {
        Self { source: sigma, mode: Mode::Shifted }
    }

    pub fn value_at_zero(&self) -> Complex64 {
        match self.mode {
            Mode::Direct => self.source.mass(),
            Mode::Shifted => ONE,
        }
    }

    pub fn eval_h(&self, w: Complex64) -> Result<Complex64> {
        check_disk(w)?;
        Ok(self.value(w))
    }

    pub fn eval_h_derivative(&self, w: Complex64) -> Result<Complex64> {
        check_disk(w)?;
        Ok(self.derivative(w))
    }

    /// Exact rational representation `N(w) / D(w)` with
    /// `D(w) = prod_j (1 - w conj(zeta_j))`.
    pub fn rational_form(&self) -> RationalForm {
        let points: Vec<Complex64> = self.source.atoms().iter().map(|(p, _)| p.value()).collect();
        let denominator = product_poly(points.iter().map(|z| z.conj()));
        // K mu * D = lebesgue * D + sum_j c_j prod_{k != j} (1 - w conj(zeta_k))
        let mut kd = denominator.iter().map(|&a| a * self.source.lebesgue()).collect::<Vec<_>>();
        for (j, &(_, c)) in self.source.atoms().iter().enumerate() {
            let partial = product_poly(points.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, z)| z.conj()));
            add_scaled(&mut kd, &partial, c);
        }
        let numerator = match self.mode {
            Mode::Direct => kd,
            Mode::Shifted => {
                let mut n = denominator.clone();
                let mut shifted = vec![ZERO];
                shifted.extend(kd);
                add_scaled(&mut n, &shifted, ONE);
                n
            }
        };
        let mut numerator = numerator;
        while numerator.len() > 1 && numerator.last() == Some(&ZERO) {
            numerator.pop();
        }
        RationalForm { numerator, poles: points, denominator }
    }
}

impl Holomorphic for CauchyFunction {
    fn value(&self, w: Complex64) -> Complex64 {
        match self.mode {
            Mode::Direct => cauchy_sum(&self.source, w),
            Mode::Shifted => ONE + w * cauchy_sum(&self.source, w),
        }
    }

    fn derivative(&self, w: Complex64) -> Complex64 {
        match self.mode {
            Mode::Direct => cauchy_sum_derivative(&self.source, w),
            Mode::Shifted => cauchy_sum(&self.source, w) + w * cauchy_sum_derivative(&self.source, w),
        }
    }
}

/// Coefficients (ascending) of `prod (1 - w a_k)`.
fn product_poly(factors: impl Iterator<Item = Complex64>) -> Vec<Complex64> {
    let mut poly = vec![ONE];
    for a in factors {
        let mut next = vec![ZERO; poly.len() + 1];
        for (k, &p) in poly.iter().enumerate() {
            next[k] += p;
            next[k + 1] -= p * a;
        }
        poly = next;
    }
    poly
}

fn add_scaled(acc: &mut Vec<Complex64>, other: &[Complex64], s: Complex64) {
    if acc.len() < other.len() {
        acc.resize(other.len(), ZERO);
    }
    for (a, &b) in acc.iter_mut().zip(other) {
        *a += s * b;
    }
}

/// `h = numerator / denominator` with poles at the atom points.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalForm {
    /// Ascending coefficients.
    pub numerator: Vec<Complex64>,
    /// Atom points; the denominator vanishes exactly there.
    pub poles: Vec<Complex64>,
    /// Ascending coefficients of `prod_j (1 - w conj(zeta_j))`.
    pub denominator: Vec<Complex64>,
}

impl RationalForm {
    pub fn eval(&self, w: Complex64) -> Complex64 {
        poly_eval(&self.numerator, w) / poly_eval(&self.denominator, w)
    }
}
