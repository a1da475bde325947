//! Pisot numbers of arbitrary degree with certified root enclosures.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::ball::{Ball, ComplexBall};
use crate::error::{Error, Result};

/// Default number of fractional bits for certified values.
pub const DEFAULT_BITS: u32 = 128;

/// A Pisot number given by its monic integer minimal polynomial.
#[derive(Debug, Clone)]
pub struct GeneralPisot {
    /// `c_0, ..., c_{d-1}, 1`, lowest degree first.
    pub coeffs: Vec<i64>,
    pub alpha: Ball,
    /// The remaining roots, all strictly inside the unit disk.
    pub conjugates: Vec<ComplexBall>,
    pub bits: u32,
}

fn eval_f64(coeffs: &[i64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c as f64)
}

fn eval_ball(coeffs: &[i64], z: &ComplexBall) -> ComplexBall {
    let mut acc = ComplexBall::from_i64(0, z.bits);
    for &c in coeffs.iter().rev() {
        acc = acc.mul(z).add(&ComplexBall::from_i64(c, z.bits));
    }
    acc
}

fn derivative(coeffs: &[i64]) -> Vec<i64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * i as i64)
        .collect()
}

fn durand_kerner(coeffs: &[i64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..d).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..2000 {
        let prev = z.clone();
        for i in 0..d {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let zi = z[i];
            z[i] = zi - eval_f64(coeffs, zi) / den;
        }
        let moved = z
            .iter()
            .zip(&prev)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if moved < 1e-16 {
            break;
        }
    }
    z
}

/// Certified enclosures of all roots of a monic integer polynomial with
/// simple roots. Each returned disk contains exactly one root.
pub fn isolate_roots(coeffs: &[i64], bits: u32) -> Result<Vec<ComplexBall>> {
    if coeffs.len() < 2 || *coeffs.last().unwrap() != 1 {
        return Err(Error::InvalidParameter(
            "polynomial must be monic of degree at least 1".into(),
        ));
    }
    let d = coeffs.len() - 1;
    let work = bits + 32;
    let dp = derivative(coeffs);
    let mut z: Vec<ComplexBall> = durand_kerner(coeffs)
        .into_iter()
        .map(|c| ComplexBall::from_f64(c.re, c.im, work))
        .collect();
    let rounds = 4 + (work as f64 / 40.0).log2().ceil().max(0.0) as usize;
    for _ in 0..rounds {
        for zi in z.iter_mut() {
            let f = eval_ball(coeffs, zi);
            let fp = eval_ball(&dp, zi);
            if let Some(step) = f.center().div(&fp.center()) {
                *zi = zi.sub(&step).center();
            }
        }
    }
    // Inclusion disks of radius d * |p(z_i) / prod_{j != i} (z_i - z_j)|.
    let mut radii = Vec::with_capacity(d);
    for i in 0..d {
        let mut den = ComplexBall::from_i64(1, work);
        for j in 0..d {
            if i != j {
                den = den.mul(&z[i].sub(&z[j]));
            }
        }
        let w = eval_ball(coeffs, &z[i])
            .div(&den)
            .ok_or_else(|| Error::RootIsolation("coincident approximations".into()))?;
        radii.push(w.abs_hi() * BigRational::from_integer(BigInt::from(d)));
    }
    let mut disks: Vec<(ComplexBall, BigRational)> =
        z.iter().zip(radii).map(|(c, r)| (c.clone(), r)).collect();
    let disjoint = |a: &(ComplexBall, BigRational), b: &(ComplexBall, BigRational)| {
        a.0.sub(&b.0).abs_lo() > &a.1 + &b.1
    };
    for i in 0..d {
        for j in i + 1..d {
            if !disjoint(&disks[i], &disks[j]) {
                return Err(Error::RootIsolation(
                    "inclusion disks overlap; repeated roots or too little precision".into(),
                ));
            }
        }
    }
    // Snap nearly real centers onto the axis when that keeps isolation.
    for i in 0..d {
        let im = BigRational::new(disks[i].0.im.clone(), BigInt::one() << work as usize);
        let im_abs = if im < BigRational::zero() { -im } else { im };
        if im_abs > disks[i].1 {
            continue;
        }
        let mut c = disks[i].0.clone();
        c.im = BigInt::zero();
        let cand = (c, &disks[i].1 + &im_abs);
        if (0..d).all(|j| j == i || disjoint(&cand, &disks[j])) {
            disks[i] = cand;
        }
    }
    Ok(disks
        .into_iter()
        .map(|(c, r)| {
            let mut b = c.center();
            let ulps = (r * BigRational::from_integer(BigInt::one() << work as usize))
                .ceil()
                .to_integer();
            b.rad = ulps + 1;
            b
        })
        .collect())
}

impl GeneralPisot {
    /// Builds from `c_0, ..., c_{d-1}, 1`. Fails unless exactly one root lies
    /// outside the closed unit disk and it is real and greater than 1.
    pub fn new(coeffs: &[i64], bits: u32) -> Result<Self> {
        if coeffs.len() < 3 {
            return Err(Error::InvalidParameter(
                "general Pisot polynomials need degree at least 2".into(),
            ));
        }
        if coeffs[0] == 0 {
            return Err(Error::NotPisot("zero constant term".into()));
        }
        let roots = isolate_roots(coeffs, bits)?;
        let one = BigRational::one();
        let mut dominant = None;
        let mut rest = Vec::new();
        for r in roots {
            if r.abs_hi() < one {
                rest.push(r);
            } else if r.im.is_zero() && r.re_ball().lo() > one && dominant.is_none() {
                dominant = Some(r);
            } else {
                return Err(Error::NotPisot(format!(
                    "root {r:?} is neither the dominant real root nor inside the unit disk"
                )));
            }
        }
        let alpha = dominant
            .ok_or_else(|| Error::NotPisot("no real root greater than 1".into()))?
            .re_ball();
        Ok(GeneralPisot {
            coeffs: coeffs.to_vec(),
            alpha,
            conjugates: rest,
            bits: bits + 32,
        })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The plastic number, real root of `x^3 - x - 1`.
    pub fn plastic(bits: u32) -> Self {
        Self::new(&[-1, -1, 0, 1], bits).expect("plastic number is Pisot")
    }

    pub fn alpha_complex(&self) -> ComplexBall {
        ComplexBall::real(&self.alpha)
    }

    /// All roots with the dominant one first.
    pub fn all_roots(&self) -> Vec<ComplexBall> {
        let mut v = vec![self.alpha_complex()];
        v.extend(self.conjugates.iter().cloned());
        v
    }

    fn conjugate_weights(&self) -> Result<Vec<ComplexBall>> {
        let c = &self.conjugates;
        let mut out = Vec::with_capacity(c.len());
        for j in 0..c.len() {
            let mut w = ComplexBall::from_i64(1, self.bits);
            for k in 0..c.len() {
                if k != j {
                    w = w.mul(&c[j].div(&c[j].sub(&c[k])).ok_or_else(overlap)?);
                }
            }
            out.push(w);
        }
        Ok(out)
    }

    /// Weights `tau_q` with `eps(xi alpha^n) = sum_q s_{n+q} tau_q`.
    pub fn tau_weights(&self, qs: std::ops::RangeInclusive<i64>) -> Result<Vec<(i64, Ball)>> {
        let a = self.alpha_complex();
        let w = self.conjugate_weights()?;
        // w_j / (alpha - alpha_j), then powers stepped one q at a time.
        let coef: Vec<ComplexBall> = self
            .conjugates
            .iter()
            .zip(&w)
            .map(|(aj, wj)| wj.div(&a.sub(aj)).ok_or_else(overlap))
            .collect::<Result<_>>()?;
        let (lo, hi) = (*qs.start(), *qs.end());
        let mut out = Vec::new();
        if lo <= hi.min(0) {
            // q <= 0: sum_j coef_j alpha_j^{-q}, starting from q = lo.
            let mut pw: Vec<ComplexBall> = self
                .conjugates
                .iter()
                .map(|aj| aj.powi(-lo).ok_or_else(overlap))
                .collect::<Result<_>>()?;
            let inv: Vec<ComplexBall> = self
                .conjugates
                .iter()
                .map(|aj| aj.recip().ok_or_else(overlap))
                .collect::<Result<_>>()?;
            for q in lo..=hi.min(0) {
                let mut acc = ComplexBall::from_i64(0, self.bits);
                for j in 0..pw.len() {
                    acc = acc.add(&coef[j].mul(&pw[j]));
                    pw[j] = pw[j].mul(&inv[j]);
                }
                out.push((q, acc.re_ball()));
            }
        }
        if hi >= 1 {
            // q >= 1: alpha^{-q} sum_j coef_j.
            let total = coef
                .iter()
                .fold(ComplexBall::from_i64(0, self.bits), |acc, c| acc.add(c))
                .re_ball();
            let inv = self.alpha.recip().ok_or_else(overlap)?;
            let start = lo.max(1);
            let mut pw = inv.pow(start as u32);
            for q in start..=hi {
                out.push((q, total.mul(&pw)));
                pw = pw.mul(&inv);
            }
        }
        Ok(out)
    }

    /// `R_q = sum_j w_j (alpha^{-q} - alpha_j^{-q}) / (alpha - alpha_j)`.
    pub fn r_coefficient(&self, q: i64) -> Result<ComplexBall> {
        let a = self.alpha_complex();
        let w = self.conjugate_weights()?;
        let aq = a.powi(-q).ok_or_else(overlap)?;
        let mut acc = ComplexBall::from_i64(0, self.bits);
        for (j, aj) in self.conjugates.iter().enumerate() {
            let num = aq.sub(&aj.powi(-q).ok_or_else(overlap)?);
            acc = acc.add(&w[j].mul(&num).div(&a.sub(aj)).ok_or_else(overlap)?);
        }
        Ok(acc)
    }

    /// `(C, rho)` with `|tau_q| <= C rho^{|q|}` for every `q` (and `q >= 1`
    /// uses `rho = 1/alpha`).
    pub fn tau_tail_constants(&self) -> Result<(BigRational, BigRational)> {
        let a = self.alpha_complex();
        let w = self.conjugate_weights()?;
        let mut c = BigRational::zero();
        let mut rho = self.alpha.recip().ok_or_else(overlap)?.abs_hi();
        for (j, aj) in self.conjugates.iter().enumerate() {
            let t = w[j].div(&a.sub(aj)).ok_or_else(overlap)?;
            c += t.abs_hi();
            let m = aj.abs_hi();
            if m > rho {
                rho = m;
            }
        }
        Ok((c, rho))
    }
}

fn overlap() -> Error {
    Error::RootIsolation("enclosure contains a zero divisor".into())
}

/// Complete homogeneous symmetric polynomial `h_m` of distinct values,
/// extended to negative `m` by `sum_j prod_{k != j} X_j/(X_j - X_k) X_j^m`.
pub fn complete_homogeneous(m: i64, xs: &[ComplexBall]) -> Result<ComplexBall> {
    let bits = xs
        .first()
        .map(|x| x.bits)
        .ok_or_else(|| Error::InvalidParameter("no variables".into()))?;
    let mut acc = ComplexBall::from_i64(0, bits);
    for (j, xj) in xs.iter().enumerate() {
        let mut w = xj.powi(m).ok_or_else(overlap)?;
        for (k, xk) in xs.iter().enumerate() {
            if k != j {
                let f = xj.div(&xj.sub(xk)).ok_or_else(|| {
                    Error::InvalidParameter("variables must be pairwise distinct".into())
                })?;
                w = w.mul(&f);
            }
        }
        acc = acc.add(&w);
    }
    Ok(acc)
}

/// Nearest integer to a ball, if the ball is within `tol` of it.
pub fn near_integer(z: &ComplexBall, tol: f64) -> Option<i64> {
    let (re, im) = z.to_f64();
    let r = re.round();
    let rad = z.rad_rational().to_f64().unwrap_or(f64::INFINITY);
    ((re - r).abs() + im.abs() + rad < tol).then_some(r as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cb(x: f64, y: f64) -> ComplexBall {
        ComplexBall::from_f64(x, y, 96)
    }

    #[test]
    fn plastic_roots() {
        let p = GeneralPisot::plastic(128);
        assert!((p.alpha.to_f64() - 1.324_717_957_244_746).abs() < 1e-14);
        assert_eq!(p.conjugates.len(), 2);
        for c in &p.conjugates {
            assert!((c.abs_hi().to_f64().unwrap() - 0.868_836_961_832_998_9).abs() < 1e-12);
        }
        assert!(p.alpha.rad_f64() < 1e-35);
    }

    #[test]
    fn quadratic_roots_match_surd() {
        let p = GeneralPisot::new(&[1, -4, 1], 128).unwrap();
        let exact = crate::algebra::PisotQuadraticUnit::plus(4).unwrap().alpha();
        assert!(p.alpha.contains_surd(&exact));
    }

    #[test]
    fn rejects_non_pisot() {
        assert!(GeneralPisot::new(&[-2, 0, 1], 64).is_err());
        assert!(GeneralPisot::new(&[1, 0, 1], 64).is_err());
        assert!(GeneralPisot::new(&[-1, 0, 0, 1], 64).is_err());
    }

    #[test]
    fn two_variable_negative_index() {
        let (x1, x2) = (cb(0.75, 0.0), cb(-0.3, 0.2));
        let h = complete_homogeneous(-2, &[x1.clone(), x2.clone()]).unwrap();
        let expect = x1.mul(&x2).recip().unwrap().neg();
        assert!(h.sub(&expect).abs_hi() < BigRational::new(1.into(), (1i64 << 50).into()));
        let h1 = complete_homogeneous(-1, &[x1, x2]).unwrap();
        assert!(h1.abs_hi() < BigRational::new(1.into(), (1i64 << 50).into()));
    }
}
