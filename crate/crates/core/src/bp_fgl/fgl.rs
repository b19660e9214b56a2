use num_bigint::BigInt;
use num_rational::BigRational;

use super::series::TruncSeries;
use super::vpoly::{VMono, VPoly};
use crate::error::{Error, Result};
use crate::group_rep::is_prime;

/// The truncated `p`-typical formal group law.
///
/// The logarithm is `Σ l_n x^{p^n}` with `l_0 = 1` and
/// `p l_n = Σ_{i<n} l_i v_{n-i}^{p^i}`; the exponential is its
/// compositional inverse and `F(x, y) = exp(log x + log y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FglContext {
    pub(crate) p: u64,
    pub(crate) max_degree: u32,
    pub(crate) k: usize,
    pub(crate) log: TruncSeries,
    pub(crate) exp: TruncSeries,
    pub(crate) fgl: TruncSeries,
}

/// Logarithm coefficients `l_0, …, l_N` with `p^N ≤ max_degree`.
pub fn log_coefficients(p: u64, max_degree: u32, k: usize) -> Vec<VPoly> {
    let p_inv = BigRational::new(BigInt::from(1), BigInt::from(p));
    let mut l = vec![VPoly::one()];
    let mut n = 1;
    while p.pow(n as u32) <= max_degree as u64 {
        let mut acc = VPoly::zero();
        for (i, li) in l.iter().enumerate() {
            let idx = n - i;
            if idx > k {
                continue;
            }
            let v_term = VPoly::term(
                VMono::v(idx, p.pow(i as u32) as u32),
                BigRational::from_integer(1.into()),
            );
            acc = acc.add(&li.mul(&v_term));
        }
        l.push(acc.scale(&p_inv));
        n += 1;
    }
    l
}

fn internal(what: &str) -> Error {
    Error::Internal(format!("formal group law invariant failed: {what}"))
}

/// Builds the formal group law and checks its invariants.
pub fn build_fgl(p: u64, max_degree: u32, k: usize) -> Result<FglContext> {
    if !is_prime(p) {
        return Err(Error::Config(format!("p = {p} is not prime")));
    }
    if (max_degree as u64) < p + 2 {
        return Err(Error::Config(format!(
            "truncation degree {max_degree} is below p + 2 = {}",
            p + 2
        )));
    }
    if p.checked_pow(k as u32 + 1)
        .is_some_and(|q| q - 1 <= max_degree as u64)
    {
        return Err(Error::Config(format!(
            "K = {k} generators is too few for degree {max_degree}: need p^(K+1) - 1 > D"
        )));
    }
    let x = TruncSeries::var(&["x"], max_degree, 0);
    let mut log = x.zero_like();
    for (n, ln) in log_coefficients(p, max_degree, k).into_iter().enumerate() {
        log.add_term(vec![p.pow(n as u32) as u32], ln);
    }

    // exp = x - (log - x)∘exp, each pass fixes one more degree
    let correction = log.sub(&x)?;
    let mut exp = x.clone();
    for _ in 0..max_degree {
        let next = x.sub(&correction.compose(&[exp.clone()])?)?;
        if next == exp {
            break;
        }
        exp = next;
    }

    let names = ["x", "y"];
    let x2 = TruncSeries::var(&names, max_degree, 0);
    let y2 = TruncSeries::var(&names, max_degree, 1);
    let sum_of_logs = log.compose(&[x2])?.add(&log.compose(&[y2])?)?;
    let fgl = exp.compose(&[sum_of_logs])?;

    let ctx = FglContext {
        p,
        max_degree,
        k,
        log,
        exp,
        fgl,
    };
    ctx.verify()?;
    Ok(ctx)
}

impl FglContext {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn log(&self) -> &TruncSeries {
        &self.log
    }

    pub fn exp(&self) -> &TruncSeries {
        &self.exp
    }

    /// `F(x, y)`.
    pub fn law(&self) -> &TruncSeries {
        &self.fgl
    }

    /// Identity laws, homogeneity, integrality, and `[p]x ∈ (p, v_1, …)`.
    pub fn verify(&self) -> Result<()> {
        let d = self.max_degree;
        let p = self.p;
        let x = TruncSeries::var(&["x"], d, 0);
        if self.exp.compose(std::slice::from_ref(&self.log))? != x {
            return Err(internal("exp(log x) = x"));
        }
        if self.log.compose(std::slice::from_ref(&self.exp))? != x {
            return Err(internal("log(exp x) = x"));
        }
        for (name, s) in [("log", &self.log), ("exp", &self.exp), ("F", &self.fgl)] {
            if !s.is_homogeneous(p, 1) {
                return Err(internal(&format!("{name} is homogeneous of degree 2")));
            }
        }
        if !self.fgl.is_integral() {
            return Err(internal("F has integral coefficients"));
        }

        if self.fgl.compose(&[x.clone(), x.zero_like()])? != x {
            return Err(internal("F(x, 0) = x"));
        }
        let names = ["x", "y"];
        let (x2, y2) = (
            TruncSeries::var(&names, d, 0),
            TruncSeries::var(&names, d, 1),
        );
        if self.fgl.compose(&[y2, x2])? != self.fgl {
            return Err(internal("F(x, y) = F(y, x)"));
        }
        let names3 = ["x", "y", "z"];
        let v: Vec<TruncSeries> = (0..3).map(|i| TruncSeries::var(&names3, d, i)).collect();
        let left = self.fgl.compose(&[
            self.fgl.compose(&[v[0].clone(), v[1].clone()])?,
            v[2].clone(),
        ])?;
        let right = self.fgl.compose(&[
            v[0].clone(),
            self.fgl.compose(&[v[1].clone(), v[2].clone()])?,
        ])?;
        if left != right {
            return Err(internal("F(F(x, y), z) = F(x, F(y, z))"));
        }

        let p_series = self.multiple_via_log(p, &x)?;
        if !p_series.is_integral() {
            return Err(internal("[p]x has integral coefficients"));
        }
        if !p_series.terms().values().all(|c| c.in_ideal_i(p)) {
            return Err(internal("[p]x has coefficients in (p, v_1, ...)"));
        }
        Ok(())
    }

    fn check_operand(&self, a: &TruncSeries) -> Result<()> {
        if a.max_degree() > self.max_degree {
            return Err(Error::Contract(format!(
                "series truncated at {} exceeds the law's truncation {}",
                a.max_degree(),
                self.max_degree
            )));
        }
        Ok(())
    }

    /// `a +_F b`.
    pub fn formal_sum(&self, a: &TruncSeries, b: &TruncSeries) -> Result<TruncSeries> {
        self.check_operand(a)?;
        self.check_operand(b)?;
        self.fgl.compose(&[a.clone(), b.clone()])
    }

    /// `[m]a` as `exp(m · log a)`.
    pub fn multiple_via_log(&self, m: u64, a: &TruncSeries) -> Result<TruncSeries> {
        self.check_operand(a)?;
        let scaled = self
            .log
            .compose(std::slice::from_ref(a))?
            .scale(&BigRational::from_integer(m.into()));
        self.exp.compose(&[scaled])
    }

    /// `[m]a` as `a +_F a +_F … +_F a`.
    pub fn multiple_iterated(&self, m: u64, a: &TruncSeries) -> Result<TruncSeries> {
        let mut acc = a.zero_like();
        for _ in 0..m {
            acc = self.formal_sum(&acc, a)?;
        }
        Ok(acc)
    }

    /// `[m]a`, computed both ways; disagreement is an internal error.
    pub fn multiple(&self, m: u64, a: &TruncSeries) -> Result<TruncSeries> {
        let via_log = self.multiple_via_log(m, a)?;
        let iterated = self.multiple_iterated(m, a)?;
        if via_log != iterated {
            return Err(Error::Internal(format!(
                "[{m}]x differs between exp(m log x) and iterated formal sums"
            )));
        }
        Ok(via_log)
    }

    /// Integrality and homogeneity of `[m]x` for each `m`, with both
    /// evaluation strategies compared.
    pub fn verify_multiples(&self, ms: &[u64]) -> Result<()> {
        let x = TruncSeries::var(&["x"], self.max_degree, 0);
        for &m in ms {
            let s = self.multiple(m, &x)?;
            if !s.is_integral() {
                return Err(internal(&format!("[{m}]x has integral coefficients")));
            }
            if !s.is_homogeneous(self.p, 1) {
                return Err(internal(&format!("[{m}]x is homogeneous")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn log_coefficients_follow_the_recursion() {
        let l = log_coefficients(5, 30, 2);
        assert_eq!(l.len(), 3);
        assert_eq!(l[1], VPoly::term(VMono::v(1, 1), q(1, 5)));
        // p l_2 = v_2 + l_1 v_1^p
        let expected =
            VPoly::term(VMono::v(2, 1), q(1, 5)).add(&VPoly::term(VMono::v(1, 6), q(1, 25)));
        assert_eq!(l[2], expected);
    }

    #[test]
    fn build_small_law() {
        let ctx = build_fgl(5, 8, 2).unwrap();
        let x = TruncSeries::var(&["x"], 8, 0);
        let zero = x.zero_like();
        assert_eq!(ctx.formal_sum(&x, &zero).unwrap(), x);
        assert_eq!(ctx.multiple(1, &x).unwrap(), x);
        assert!(ctx.multiple(0, &x).unwrap().is_zero());
        // F(x, y) = x + y - v1 Σ_{0<j<p} (1/p) C(p, j) x^j y^{p-j} + …
        let c = ctx.law().coefficient(&[1, 4]);
        assert_eq!(c, VPoly::term(VMono::v(1, 1), q(-1, 1)));
        let c = ctx.law().coefficient(&[2, 3]);
        assert_eq!(c, VPoly::term(VMono::v(1, 1), q(-2, 1)));
    }

    #[test]
    fn configuration_errors() {
        assert!(matches!(build_fgl(5, 6, 2), Err(Error::Config(_))));
        assert!(matches!(build_fgl(6, 9, 2), Err(Error::Config(_))));
        assert!(matches!(build_fgl(5, 30, 1), Err(Error::Config(_))));
        assert!(build_fgl(5, 8, 1).is_ok());
    }

    #[test]
    fn operand_truncation_checked() {
        let ctx = build_fgl(5, 8, 2).unwrap();
        let big = TruncSeries::var(&["x"], 9, 0);
        assert!(matches!(
            ctx.formal_sum(&big, &big),
            Err(Error::Contract(_))
        ));
    }
}
