//! The `s`-interpolation between a basis `y(0)` of `F₀^×` and a basis `z`:
//! cochains over `ℚ(s)` that agree with the `y(0)`-based ones at `s = 0`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cycle::CycleSum;
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::VAR_S;
use crate::ratfunc::RatFunc;
use crate::rational::{fmt_rational, Rational};
use crate::registry::MultBasisRegistry;

use super::concrete::ConcreteDga;
use super::{factorial, Dga, PolylogAlgebra};

pub const DEFAULT_TORSION_CAP: u32 = 24;

fn constant_of(x: &RatFunc) -> Result<Rational> {
    x.constant_value()
        .ok_or_else(|| Error::DegenerateArguments(format!("{x} is not a constant")))
}

/// Exponents `c` with `x = ± Π b_j^{c_j}` in `ℚ^× ⊗ ℚ`.
pub fn solve_exponents(x: &Rational, basis: &[Rational]) -> Result<Vec<Rational>> {
    if x.is_zero() || basis.iter().any(|b| b.is_zero()) {
        return Err(Error::ZeroElement);
    }
    let as_field = |q: &Rational| RatFunc::constant(q.clone());
    let mut reg = MultBasisRegistry::new();
    for q in basis.iter().chain(std::iter::once(x)) {
        reg.register(&as_field(q))?;
    }
    let vec_of = |q: &Rational| -> Result<Vec<Rational>> {
        let e = reg.try_expand(&as_field(q))?.expect("registered");
        Ok((0..reg.len()).map(|j| e.vector.get(j)).collect())
    };
    let cols: Vec<Vec<Rational>> = basis.iter().map(vec_of).collect::<Result<_>>()?;
    let target = vec_of(x)?;
    let a: Vec<Vec<Rational>> = (0..reg.len())
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    linalg::solve(&a, &target).ok_or_else(|| {
        Error::DegenerateArguments(format!(
            "{} is not in the span of the basis",
            fmt_rational(x)
        ))
    })
}

fn pow_rational(q: &Rational, e: &BigInt) -> Rational {
    let k = e.abs().to_u32().expect("small exponent");
    let p = num_traits::pow(q.clone(), k as usize);
    if e.is_negative() {
        p.recip()
    } else {
        p
    }
}

/// Least `m > 0` with `y^m = Π z_j^{m c_j}` exactly, `m c_j` integral.
pub fn torsion_order(y: &Rational, z: &[Rational], c: &[Rational], cap: u32) -> Result<u32> {
    for m in 1..=cap {
        let mr = Rational::from_integer(m.into());
        let exps: Vec<Rational> = c.iter().map(|cj| cj * &mr).collect();
        if exps.iter().any(|e| !e.is_integer()) {
            continue;
        }
        let mut prod = Rational::one();
        for (zj, e) in z.iter().zip(&exps) {
            prod *= pow_rational(zj, &e.to_integer());
        }
        if num_traits::pow(y.clone(), m as usize) == prod {
            return Ok(m);
        }
    }
    Err(Error::TorsionOrderNotFound {
        elem: fmt_rational(y),
        cap,
    })
}

/// Per-basis-element data of the interpolation.
#[derive(Clone, Debug)]
pub struct YData {
    pub y0: Rational,
    pub c: Vec<Rational>,
    pub m: u32,
    /// `r(y_l(0), z)(s)`.
    pub r_yz: CycleSum,
    /// `p(Y_l)(s)`.
    pub p_y: CycleSum,
    /// `[y_l(0)(s)]`.
    pub bracket: CycleSum,
    /// `Y_l(s)`.
    pub y_s: RatFunc,
}

pub struct HomotopyFamily<'a> {
    pub alg: &'a ConcreteDga,
    pub z: Vec<Rational>,
    pub y: Vec<YData>,
}

/// `a + (b − a)s`.
fn linear_in_s(a: &Rational, b: &Rational) -> RatFunc {
    let s = RatFunc::var(VAR_S);
    RatFunc::constant(a.clone()).add(&s.scale(&(b - a)))
}

impl<'a> HomotopyFamily<'a> {
    pub fn new(alg: &'a ConcreteDga, y0: &[Rational], z: &[Rational], cap: u32) -> Result<Self> {
        let z_s: Vec<RatFunc> = z.iter().map(|zj| linear_in_s(&Rational::one(), zj)).collect();
        let mut ys = Vec::with_capacity(y0.len());
        for w in y0 {
            let c = solve_exponents(w, z)?;
            let m = torsion_order(w, z, &c, cap)?;
            let mr = Rational::from_integer(m.into());
            let inv_m = mr.recip();
            let wf = RatFunc::constant(w.clone());
            let y_s = linear_in_s(w, &Rational::one());

            let mut factors = Vec::new();
            let mut pi = RatFunc::one();
            for (zj, cj) in z_s.iter().zip(&c) {
                let e = (cj * &mr).to_integer().to_i64().expect("small exponent");
                if e != 0 {
                    pi = pi.mul(&zj.pow(e).expect("z_j(s) is nonzero"));
                    factors.push((zj.clone(), e));
                }
            }
            let w_m = wf.pow(m as i64).expect("nonzero");

            let mut r_yz = CycleSum::zero();
            let mut p_y = CycleSum::zero();
            for k in 1..m as i64 {
                r_yz.add_scaled(&alg.u(&wf.pow(k + 1).expect("nonzero"), &wf)?, &inv_m);
                p_y.add_scaled(&alg.u(&y_s.pow(k + 1).expect("nonzero"), &y_s)?, &inv_m);
            }
            r_yz.add_scaled(&alg.u(&w_m, &pi)?, &-inv_m.clone());
            r_yz.add_scaled(&alg.peel(&pi, &factors)?, &inv_m);

            let mut bracket = alg.point(&w_m.div(&pi).expect("nonzero"))?.scale(&inv_m);
            for (zj, cj) in z_s.iter().zip(&c) {
                if !cj.is_zero() {
                    bracket.add_scaled(&alg.point(zj)?, cj);
                }
            }
            bracket = bracket.add(&alg.point(&y_s)?);
            bracket.add_scaled(&alg.point(&y_s.pow(m as i64).expect("nonzero"))?, &-inv_m);

            ys.push(YData {
                y0: w.clone(),
                c,
                m,
                r_yz,
                p_y,
                bracket,
                y_s,
            });
        }
        Ok(HomotopyFamily {
            alg,
            z: z.to_vec(),
            y: ys,
        })
    }

    fn y0_values(&self) -> Vec<Rational> {
        self.y.iter().map(|d| d.y0.clone()).collect()
    }

    /// Integral exponents `e` with `x = ± Π y_l(0)^{e_l}`.
    pub fn y_expansion(&self, x: &Rational) -> Result<Vec<i64>> {
        let e = solve_exponents(x, &self.y0_values())?;
        e.iter()
            .map(|q| {
                if q.is_integer() {
                    Ok(q.to_integer().to_i64().expect("small exponent"))
                } else {
                    Err(Error::DegenerateArguments(format!(
                        "{} has a fractional exponent over y(0)",
                        fmt_rational(x)
                    )))
                }
            })
            .collect()
    }

    /// `r(x, y(0))`, the chain over the basis `y(0)` itself.
    pub fn r_y(&self, x: &Rational) -> Result<CycleSum> {
        let e = self.y_expansion(x)?;
        let factors: Vec<(RatFunc, i64)> = self
            .y
            .iter()
            .zip(&e)
            .map(|(d, &k)| (RatFunc::constant(d.y0.clone()), k))
            .collect();
        self.alg.peel(&RatFunc::constant(x.clone()), &factors)
    }

    /// `x[y(0)] = Σ e_l (y_l(0))`.
    pub fn x_y(&self, x: &Rational) -> Result<CycleSum> {
        let e = self.y_expansion(x)?;
        let mut out = CycleSum::zero();
        for (d, &k) in self.y.iter().zip(&e) {
            out.add_scaled(
                &self.alg.point(&RatFunc::constant(d.y0.clone()))?,
                &Rational::from_integer(k.into()),
            );
        }
        Ok(out)
    }

    /// `r(x, y(0))(s) = r(x, y(0)) + Σ_l e_l (r(y_l(0), z)(s) − p(Y_l)(s))`.
    pub fn r_s(&self, x: &Rational) -> Result<CycleSum> {
        let e = self.y_expansion(x)?;
        let mut out = self.r_y(x)?;
        for (d, &k) in self.y.iter().zip(&e) {
            let kq = Rational::from_integer(k.into());
            out.add_scaled(&d.r_yz.sub(&d.p_y), &kq);
        }
        Ok(out)
    }

    /// `x[y(0)](s) = Σ_l e_l [y_l(0)(s)]`.
    pub fn x_y_s(&self, x: &Rational) -> Result<CycleSum> {
        let e = self.y_expansion(x)?;
        let mut out = CycleSum::zero();
        for (d, &k) in self.y.iter().zip(&e) {
            out.add_scaled(&d.bracket, &Rational::from_integer(k.into()));
        }
        Ok(out)
    }

    /// `P̃₂(x, y(0))(s)`.
    pub fn tilde_p2_s(&self, x: &Rational) -> Result<CycleSum> {
        let xf = RatFunc::constant(x.clone());
        let one_minus = Rational::one() - x;
        let mut out = self.alg.rho(2, &xf)?;
        out = out.add(&self.alg.mul(&self.alg.rho(1, &xf)?, &self.r_s(x)?)?);
        out = out.sub(&self.alg.mul(&self.r_s(&one_minus)?, &self.x_y_s(x)?)?);
        Ok(out)
    }

    /// `P̃₂(x, y(0))` with the unparametrized chains.
    pub fn tilde_p2_fixed(&self, x: &Rational) -> Result<CycleSum> {
        let xf = RatFunc::constant(x.clone());
        let one_minus = Rational::one() - x;
        let mut out = self.alg.rho(2, &xf)?;
        out = out.add(&self.alg.mul(&self.alg.rho(1, &xf)?, &self.r_y(x)?)?);
        out = out.sub(&self.alg.mul(&self.r_y(&one_minus)?, &self.x_y(x)?)?);
        Ok(out)
    }

    /// `P_n(x, y(0))(s)` for `n ≥ 3`; `P̃₂` for `n = 2`.
    pub fn big_p_s(&self, n: usize, x: &Rational) -> Result<CycleSum> {
        if n == 2 {
            return self.tilde_p2_s(x);
        }
        let xf = RatFunc::constant(x.clone());
        let r = self.r_s(x)?;
        let mut out = self.alg.rho(n, &xf)?;
        let mut r_pow = r.clone();
        for k in 1..n {
            if r_pow.is_zero() {
                break;
            }
            let term = self.alg.mul(&self.alg.rho(n - k, &xf)?, &r_pow)?;
            out.add_scaled(&term, &factorial(k).recip());
            if k + 1 < n {
                r_pow = self.alg.mul(&r_pow, &r)?;
            }
        }
        Ok(out)
    }

    /// Defect of `d P̃₂(x, y(0))(s) = ρ₁(x)[y(0)](s)·x[y(0)](s)`.
    pub fn dps2_defect(&self, x: &Rational) -> Result<CycleSum> {
        let lhs = self.alg.d(&self.tilde_p2_s(x)?)?;
        let rhs = self
            .alg
            .mul(&self.x_y_s(&(Rational::one() - x))?, &self.x_y_s(x)?)?;
        Ok(lhs.sub(&rhs))
    }

    /// Defect of `d P_n(x, y(0))(s) = P_{n−1}(x, y(0))(s)·x[y(0)](s)`.
    pub fn dpsn_defect(&self, n: usize, x: &Rational) -> Result<CycleSum> {
        let lhs = self.alg.d(&self.big_p_s(n, x)?)?;
        let rhs = self.alg.mul(&self.big_p_s(n - 1, x)?, &self.x_y_s(x)?)?;
        Ok(lhs.sub(&rhs))
    }

    /// Defect of `d r(x, y(0))(s) = (x) − x[y(0)](s)`.
    pub fn dr_defect(&self, x: &Rational) -> Result<CycleSum> {
        let lhs = self.alg.d(&self.r_s(x)?)?;
        let rhs = self
            .alg
            .point(&RatFunc::constant(x.clone()))?
            .sub(&self.x_y_s(x)?);
        Ok(lhs.sub(&rhs))
    }

    /// `c(s)` at a constant value of `s`.
    pub fn at(&self, c: &CycleSum, s: &Rational) -> Result<CycleSum> {
        self.alg.engine().specialize(c, VAR_S, s)
    }
}

/// `y(0)` values from `ℚ(t)` basis elements specialized at `t = 0`.
pub fn specialize_basis(ys: &[RatFunc]) -> Result<Vec<Rational>> {
    ys.iter()
        .map(|y| {
            let v = crate::registry::specialize_field(y, &Rational::zero(), true)?;
            constant_of(&v)
        })
        .collect()
}
