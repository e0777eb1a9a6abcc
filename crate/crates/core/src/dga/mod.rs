//! The cycle DGA and its formal presentation.
//!
//! [`Dga`] abstracts over a graded-commutative DGA with a distinguished basis;
//! [`PolylogAlgebra`] adds the named generators and builds the polylogarithm
//! cochains generically, so every identity can be checked in both the
//! concrete (cycle) and the formal (generator) algebra.

pub mod concrete;
pub mod dchains;
pub mod formal;
pub mod homotopy;

use std::cell::RefCell;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::ratfunc::RatFunc;
use crate::rational::Rational;
use crate::registry::{Expansion, MultBasisRegistry};

pub use concrete::ConcreteDga;
pub use formal::{FormalDga, Gen, Mono};

pub trait Dga {
    type Basis: Clone + Ord + Debug;

    fn basis_degree(&self, b: &Self::Basis) -> i64;
    fn basis_weight(&self, b: &Self::Basis) -> usize;
    fn d_basis(&self, b: &Self::Basis) -> Result<LinComb<Self::Basis>>;
    fn mul_basis(&self, a: &Self::Basis, b: &Self::Basis) -> Result<LinComb<Self::Basis>>;
    fn render_basis(&self, b: &Self::Basis) -> String;

    /// Short form used for letters of bar words.
    fn render_letter(&self, b: &Self::Basis) -> String {
        self.render_basis(b)
    }

    fn d(&self, x: &LinComb<Self::Basis>) -> Result<LinComb<Self::Basis>> {
        x.map_linear(|b| self.d_basis(b))
    }

    fn mul(
        &self,
        x: &LinComb<Self::Basis>,
        y: &LinComb<Self::Basis>,
    ) -> Result<LinComb<Self::Basis>> {
        let mut out = LinComb::zero();
        for (a, c) in x.iter() {
            for (b, e) in y.iter() {
                out.add_scaled(&self.mul_basis(a, b)?, &(c * e));
            }
        }
        Ok(out)
    }

    /// Product of a non-empty list of factors, left to right.
    fn product(&self, factors: &[LinComb<Self::Basis>]) -> Result<LinComb<Self::Basis>> {
        let (first, rest) = factors
            .split_first()
            .ok_or_else(|| Error::DegreeMismatch("empty product has no unit".to_string()))?;
        let mut acc = first.clone();
        for f in rest {
            if acc.is_zero() {
                break;
            }
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// `x^k` for `k ≥ 1`.
    fn pow(&self, x: &LinComb<Self::Basis>, k: usize) -> Result<LinComb<Self::Basis>> {
        self.product(&vec![x.clone(); k])
    }

    /// Degree of a homogeneous element; `None` for zero.
    fn degree(&self, x: &LinComb<Self::Basis>) -> Option<i64> {
        x.basis().next().map(|b| self.basis_degree(b))
    }

    fn weight(&self, x: &LinComb<Self::Basis>) -> Option<usize> {
        x.basis().next().map(|b| self.basis_weight(b))
    }

    fn is_homogeneous(&self, x: &LinComb<Self::Basis>) -> bool {
        let mut it = x.basis();
        match it.next() {
            None => true,
            Some(b0) => {
                let (d0, w0) = (self.basis_degree(b0), self.basis_weight(b0));
                it.all(|b| self.basis_degree(b) == d0 && self.basis_weight(b) == w0)
            }
        }
    }

    fn render(&self, x: &LinComb<Self::Basis>) -> String {
        crate::cycle::render_terms(x.iter().map(|(b, c)| (self.render_basis(b), c.clone())).collect())
    }
}

/// The named generators and the cochains built from them.
pub trait PolylogAlgebra: Dga {
    fn point(&self, x: &RatFunc) -> Result<LinComb<Self::Basis>>;
    fn rho(&self, k: usize, x: &RatFunc) -> Result<LinComb<Self::Basis>>;
    /// A chain `r(x, z)` with `d r = (x) − x[z]`.
    fn r(&self, x: &RatFunc) -> Result<LinComb<Self::Basis>>;
    fn registry(&self) -> &RefCell<MultBasisRegistry>;

    fn expand(&self, x: &RatFunc) -> Result<Expansion> {
        if let Some(e) = self.registry().borrow().try_expand(x)? {
            return Ok(e);
        }
        self.registry().borrow_mut().expand(x)
    }

    /// `x[z] = Σ_j c_j (z_j)`.
    fn expansion(&self, x: &RatFunc) -> Result<LinComb<Self::Basis>> {
        let e = self.expand(x)?;
        let mut out = LinComb::zero();
        for (j, c) in e.vector.entries() {
            let z = self.registry().borrow().symbol_value(j);
            out.add_scaled(&self.point(&z)?, c);
        }
        Ok(out)
    }

    /// `ρ₂(x) + ρ₁(x)·r(x,z) − r(ρ₁(x),z)·x[z]`, where `r(ρ₁(x), z)` is the
    /// chain of the field element `1 − x`.
    fn tilde_p2(&self, x: &RatFunc) -> Result<LinComb<Self::Basis>> {
        check_polylog_arg(x)?;
        let mut out = self.rho(2, x)?;
        out = out.add(&self.mul(&self.rho(1, x)?, &self.r(x)?)?);
        let r1 = self.r(&x.one_minus())?;
        out = out.sub(&self.mul(&r1, &self.expansion(x)?)?);
        Ok(out)
    }

    /// `P_n(x) = Σ_{k=0}^{n−1} (1/k!) ρ_{n−k}(x) r(x,z)^k` for `n ≥ 3`.
    fn big_p(&self, n: usize, x: &RatFunc) -> Result<LinComb<Self::Basis>> {
        if n < 3 {
            return Err(Error::DegreeMismatch(format!("P_n needs n >= 3, got {n}")));
        }
        check_polylog_arg(x)?;
        let r = self.r(x)?;
        let mut out = self.rho(n, x)?;
        let mut r_pow = r.clone();
        for k in 1..n {
            if r_pow.is_zero() {
                break;
            }
            let term = self.mul(&self.rho(n - k, x)?, &r_pow)?;
            out.add_scaled(&term, &factorial(k).recip());
            if k + 1 < n {
                r_pow = self.mul(&r_pow, &r)?;
            }
        }
        Ok(out)
    }

    /// `P̃₂` for `n = 2`, `P_n` otherwise.
    fn polylog_cochain(&self, n: usize, x: &RatFunc) -> Result<LinComb<Self::Basis>> {
        if n == 2 {
            self.tilde_p2(x)
        } else {
            self.big_p(n, x)
        }
    }
}

fn check_polylog_arg(x: &RatFunc) -> Result<()> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    if x.is_one() {
        return Err(Error::DegenerateArguments("x = 1".to_string()));
    }
    Ok(())
}

pub fn factorial(k: usize) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= BigInt::from(i);
    }
    Rational::from_integer(acc)
}

pub fn binomial(n: usize, k: usize) -> Rational {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Leibniz defect `d(zw) − dz·w − (−1)^{deg z} z·dw`; zero iff the rule holds.
pub fn leibniz_defect<A: Dga>(
    alg: &A,
    z: &LinComb<A::Basis>,
    w: &LinComb<A::Basis>,
) -> Result<LinComb<A::Basis>> {
    let zw = alg.mul(z, w)?;
    let lhs = alg.d(&zw)?;
    let a = alg.mul(&alg.d(z)?, w)?;
    let b = alg.mul(z, &alg.d(w)?)?;
    let sign = match alg.degree(z) {
        Some(d) if d.rem_euclid(2) == 1 => -Rational::one(),
        _ => Rational::one(),
    };
    let mut out = lhs.sub(&a);
    out.add_scaled(&b, &-sign);
    Ok(out)
}

/// Defect of the ρ relation `dρ_k(x) − ρ_{k−1}(x)·(x)`.
pub fn rho_defect<A: PolylogAlgebra>(alg: &A, k: usize, x: &RatFunc) -> Result<LinComb<A::Basis>> {
    let lhs = alg.d(&alg.rho(k, x)?)?;
    if k == 1 {
        return Ok(lhs);
    }
    let rhs = alg.mul(&alg.rho(k - 1, x)?, &alg.point(x)?)?;
    Ok(lhs.sub(&rhs))
}

/// Defect of `d P̃₂(x,z) = ρ₁(x)[z]·x[z]`.
pub fn eq2_defect<A: PolylogAlgebra>(alg: &A, x: &RatFunc) -> Result<LinComb<A::Basis>> {
    let lhs = alg.d(&alg.tilde_p2(x)?)?;
    let rhs = alg.mul(&alg.expansion(&x.one_minus())?, &alg.expansion(x)?)?;
    Ok(lhs.sub(&rhs))
}

/// Defect of `d P_n = P_{n−1}·x[z]` (`P̃₂·x[z]` for `n = 3`).
pub fn eq3_defect<A: PolylogAlgebra>(alg: &A, n: usize, x: &RatFunc) -> Result<LinComb<A::Basis>> {
    let lhs = alg.d(&alg.big_p(n, x)?)?;
    let prev = alg.polylog_cochain(n - 1, x)?;
    let rhs = alg.mul(&prev, &alg.expansion(x)?)?;
    Ok(lhs.sub(&rhs))
}

/// A registry containing `x` and `1 − x` for every listed element.
pub fn registry_for(xs: &[RatFunc]) -> Result<MultBasisRegistry> {
    let mut reg = MultBasisRegistry::new();
    for x in xs {
        reg.register(x)?;
        let y = x.one_minus();
        if !y.is_zero() {
            reg.register(&y)?;
        }
    }
    Ok(reg)
}
