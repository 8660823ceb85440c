//! A one-object multiplicative category whose trivial class is an ideal.
//!
//! The category has a single object; its endomorphisms are the positive
//! integers and composition is multiplication.  The maps declared trivial are
//! the multiples of 10.  That collection is absorbing (a multiple of 10 times
//! anything is a multiple of 10) but it is not the trivial class induced by
//! any class of objects, so the usual kernel/cokernel machinery has to be
//! interpreted directly:
//!
//! * the kernel of `n` is the least `k` with `n * k` trivial, and every other
//!   such `k'` must be a multiple of `k` (so `k` is universal);
//! * the cokernel is defined symmetrically and coincides with the kernel
//!   because multiplication commutes;
//! * a normal epi is a map that arises as a cokernel.
//!
//! Everything here is computed by brute force over a finite range of arrows,
//! which keeps the module an independent oracle for the closed forms the
//! tests freeze (`kernel(n) = 10 / gcd(n, 10)`, normal epis = divisors of 10,
//! and the failure of the normal-epi/trivial-kernel factorisation at 25).

use std::collections::BTreeSet;

use crate::core::{Error, Result};

/// Every multiple of this base is a trivial arrow.
pub const IDEAL_BASE: u64 = 10;

/// Default search range for the free-function wrappers.
pub const DEFAULT_ARROW_BOUND: u64 = 1000;

/// Outcome of factoring an arrow as a normal epi followed by an arrow with
/// trivial kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealFactorisation {
    /// `q * m` recovers the arrow, `q` is a normal epi and `kernel(m)` is
    /// trivial.
    Found { q: u64, m: u64 },
    /// No factorisation exists.  The first factor is forced to be the
    /// cokernel of the kernel (recorded as `forced_q`), which pins the second
    /// factor `forced_m`, whose kernel is not trivial.
    Obstructed {
        forced_q: u64,
        forced_m: u64,
        kernel_of_m: u64,
    },
}

/// The one-object category of positive integers under multiplication with
/// the multiples of [`IDEAL_BASE`] as trivial arrows, searched up to a bound.
#[derive(Clone, Debug)]
pub struct IdealCategory {
    bound: u64,
}

impl IdealCategory {
    /// A category whose brute-force searches range over `1..=bound`.
    ///
    /// The bound must be at least [`IDEAL_BASE`] so that kernels (which never
    /// exceed the base) stay inside the search range.
    pub fn new(bound: u64) -> Result<Self> {
        if bound < IDEAL_BASE {
            return Err(Error::InvalidInput(format!(
                "arrow bound {bound} is below the ideal base {IDEAL_BASE}"
            )));
        }
        Ok(IdealCategory { bound })
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Composition of endomorphisms: ordinary multiplication.
    pub fn compose(&self, m: u64, n: u64) -> u64 {
        m * n
    }

    /// Whether the arrow is trivial, i.e. lies in the ideal.
    pub fn in_ideal(&self, n: u64) -> bool {
        n % IDEAL_BASE == 0
    }

    /// The kernel of `n`: the least `k` with `n * k` trivial.
    ///
    /// Universality is checked, not assumed: every `k'` in range with
    /// `n * k'` trivial must be a multiple of the returned `k`.
    pub fn kernel(&self, n: u64) -> Result<u64> {
        self.check_arrow(n)?;
        let k = (1..=self.bound)
            .find(|k| self.in_ideal(n * k))
            .ok_or_else(|| {
                Error::InvalidInput(format!("no trivialiser of {n} within {}", self.bound))
            })?;
        for other in 1..=self.bound {
            if self.in_ideal(n * other) && other % k != 0 {
                return Err(Error::BackendBug(format!(
                    "kernel of {n}: {other} trivialises it but is not a multiple of {k}"
                )));
            }
        }
        Ok(k)
    }

    /// The cokernel of `n`: the least `q` with `q * n` trivial.
    ///
    /// Multiplication commutes, so this coincides with [`Self::kernel`]; the
    /// search is still run independently from the other side.
    pub fn cokernel(&self, n: u64) -> Result<u64> {
        self.check_arrow(n)?;
        (1..=self.bound)
            .find(|q| self.in_ideal(q * n))
            .ok_or_else(|| {
                Error::InvalidInput(format!("no cotrivialiser of {n} within {}", self.bound))
            })
    }

    /// Arrows in range that arise as cokernels, i.e. the normal epis.
    pub fn normal_epis(&self) -> Result<BTreeSet<u64>> {
        let mut out = BTreeSet::new();
        for n in 1..=self.bound {
            out.insert(self.cokernel(n)?);
        }
        Ok(out)
    }

    /// Whether the kernel of `n` is itself trivial.
    pub fn has_trivial_kernel(&self, n: u64) -> Result<bool> {
        Ok(self.in_ideal(self.kernel(n)?))
    }

    /// The pullback of `m` along `n`: with `d = gcd(m, n)` the legs are
    /// `m / d` over `n`'s side (the pulled-back copy of `m`) and `n / d`
    /// over `m`'s side, so the square commutes as `(m/d)·n = (n/d)·m = lcm`,
    /// and any other commuting pair factors through it.
    pub fn pullback(&self, m: u64, n: u64) -> Result<(u64, u64)> {
        self.check_arrow(m)?;
        self.check_arrow(n)?;
        let d = gcd(m, n);
        Ok((m / d, n / d))
    }

    /// Factor `n` as a normal epi `q` followed by an arrow `m` with trivial
    /// kernel, or report why that is impossible.
    ///
    /// The trivial class is absorbing, so in any such factorisation `q` must
    /// be the cokernel of the kernel of `n`; that forces `m = n / q`, and the
    /// factorisation exists exactly when the kernel of that `m` is trivial.
    pub fn factorise(&self, n: u64) -> Result<IdealFactorisation> {
        let q = self.cokernel(self.kernel(n)?)?;
        if n % q != 0 {
            return Err(Error::BackendBug(format!(
                "forced first factor {q} does not divide {n}"
            )));
        }
        let m = n / q;
        let kernel_of_m = self.kernel(m)?;
        if self.in_ideal(kernel_of_m) {
            Ok(IdealFactorisation::Found { q, m })
        } else {
            Ok(IdealFactorisation::Obstructed {
                forced_q: q,
                forced_m: m,
                kernel_of_m,
            })
        }
    }

    /// Exhaustive search over every splitting `n = q * m`, ignoring the
    /// forced-factor argument.  Used to cross-check [`Self::factorise`].
    pub fn factorise_by_search(&self, n: u64) -> Result<Option<(u64, u64)>> {
        self.check_arrow(n)?;
        let epis = self.normal_epis()?;
        for q in 1..=n {
            if n % q != 0 || !epis.contains(&q) {
                continue;
            }
            let m = n / q;
            if self.in_ideal(self.kernel(m)?) {
                return Ok(Some((q, m)));
            }
        }
        Ok(None)
    }

    fn check_arrow(&self, n: u64) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "arrows are positive integers; 0 is not an arrow".into(),
            ));
        }
        if n > self.bound {
            return Err(Error::InvalidInput(format!(
                "arrow {n} exceeds the search bound {}",
                self.bound
            )));
        }
        Ok(())
    }
}

/// Kernel of `n` in the default-bounded category.  Panics only on internal
/// inconsistency; `n` must lie in `1..=`[`DEFAULT_ARROW_BOUND`].
pub fn ideal_kernel(n: u64) -> Result<u64> {
    IdealCategory::new(DEFAULT_ARROW_BOUND)?.kernel(n)
}

/// Cokernel of `n` in the default-bounded category.
pub fn ideal_cokernel(n: u64) -> Result<u64> {
    IdealCategory::new(DEFAULT_ARROW_BOUND)?.cokernel(n)
}

/// The normal epis of the default-bounded category.
pub fn ideal_normal_epis() -> Result<BTreeSet<u64>> {
    IdealCategory::new(DEFAULT_ARROW_BOUND)?.normal_epis()
}

/// Normal-epi/trivial-kernel factorisation of `n` in the default-bounded
/// category.
pub fn ideal_factorise(n: u64) -> Result<IdealFactorisation> {
    IdealCategory::new(DEFAULT_ARROW_BOUND)?.factorise(n)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernels_match_the_closed_form_everywhere_in_range() {
        let cat = IdealCategory::new(DEFAULT_ARROW_BOUND).unwrap();
        for n in 1..=DEFAULT_ARROW_BOUND {
            let k = cat.kernel(n).unwrap();
            assert_eq!(k, IDEAL_BASE / gcd(n, IDEAL_BASE), "kernel of {n}");
        }
    }

    #[test]
    fn kernel_and_cokernel_coincide_pointwise() {
        let cat = IdealCategory::new(DEFAULT_ARROW_BOUND).unwrap();
        for n in 1..=DEFAULT_ARROW_BOUND {
            assert_eq!(cat.kernel(n).unwrap(), cat.cokernel(n).unwrap());
        }
    }

    #[test]
    fn frozen_kernel_values() {
        assert_eq!(ideal_kernel(25).unwrap(), 2);
        assert_eq!(ideal_kernel(3).unwrap(), 10);
        assert_eq!(ideal_kernel(10).unwrap(), 1);
        assert_eq!(ideal_kernel(4).unwrap(), 5);
    }

    #[test]
    fn normal_epis_are_the_divisors_of_the_base() {
        let epis = ideal_normal_epis().unwrap();
        let expected: BTreeSet<u64> = [1, 2, 5, 10].into_iter().collect();
        assert_eq!(epis, expected);
        // Equivalent characterisation: n is its own kernel's cokernel.
        let cat = IdealCategory::new(DEFAULT_ARROW_BOUND).unwrap();
        for n in 1..=DEFAULT_ARROW_BOUND {
            let fixed = cat.cokernel(cat.kernel(n).unwrap()).unwrap() == n;
            assert_eq!(fixed, expected.contains(&n), "fixed-point test at {n}");
        }
    }

    #[test]
    fn twenty_five_has_no_factorisation() {
        match ideal_factorise(25).unwrap() {
            IdealFactorisation::Obstructed {
                forced_q,
                forced_m,
                kernel_of_m,
            } => {
                assert_eq!(forced_q, 5);
                assert_eq!(forced_m, 5);
                assert_eq!(kernel_of_m, 2);
            }
            other => panic!("expected an obstruction for 25, got {other:?}"),
        }
    }

    #[test]
    fn forced_factor_argument_agrees_with_exhaustive_search() {
        let cat = IdealCategory::new(200).unwrap();
        for n in 1..=200 {
            let forced = cat.factorise(n).unwrap();
            let searched = cat.factorise_by_search(n).unwrap();
            match (forced, searched) {
                (IdealFactorisation::Found { q, m }, Some((sq, sm))) => {
                    assert_eq!((q, m), (sq, sm), "factorisation of {n}");
                }
                (IdealFactorisation::Obstructed { .. }, None) => {}
                (f, s) => panic!("factorisation of {n} disagrees: {f:?} vs {s:?}"),
            }
        }
    }

    #[test]
    fn found_factorisations_are_sound() {
        let cat = IdealCategory::new(500).unwrap();
        let epis = cat.normal_epis().unwrap();
        for n in 1..=500 {
            if let IdealFactorisation::Found { q, m } = cat.factorise(n).unwrap() {
                assert_eq!(cat.compose(q, m), n);
                assert!(epis.contains(&q), "first factor {q} of {n} is a normal epi");
                assert!(cat.has_trivial_kernel(m).unwrap());
            }
        }
    }

    #[test]
    fn ideal_is_absorbing() {
        let cat = IdealCategory::new(DEFAULT_ARROW_BOUND).unwrap();
        for a in 1..=100u64 {
            for b in 1..=100u64 {
                if cat.in_ideal(a) {
                    assert!(cat.in_ideal(cat.compose(a, b)));
                    assert!(cat.in_ideal(cat.compose(b, a)));
                }
            }
        }
    }

    #[test]
    fn normal_monos_are_stable_under_pullback() {
        // Kernels and cokernels coincide, so the normal monos are again the
        // divisors of the base; pulling one back along anything must land
        // back in that set.
        let cat = IdealCategory::new(DEFAULT_ARROW_BOUND).unwrap();
        let monos = cat.normal_epis().unwrap();
        for &m in &monos {
            for n in 1..=200 {
                let (pulled, _) = cat.pullback(m, n).unwrap();
                assert!(
                    monos.contains(&pulled),
                    "pullback of {m} along {n} gave {pulled}"
                );
            }
        }
    }

    #[test]
    fn pullback_squares_commute_minimally() {
        let cat = IdealCategory::new(DEFAULT_ARROW_BOUND).unwrap();
        for m in 1..=40u64 {
            for n in 1..=40u64 {
                let (a, b) = cat.pullback(m, n).unwrap();
                // The square commutes: both composites equal lcm(m, n).
                assert_eq!(a * n, b * m);
                // Any other commuting pair factors through it.
                for c in 1..=40u64 {
                    for d in 1..=40u64 {
                        if c * n == d * m {
                            assert_eq!(c % a, 0);
                            assert_eq!(d % b, 0);
                            assert_eq!(c / a, d / b);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn arrows_outside_the_range_are_rejected() {
        let cat = IdealCategory::new(50).unwrap();
        assert!(matches!(cat.kernel(0), Err(Error::InvalidInput(_))));
        assert!(matches!(cat.kernel(51), Err(Error::InvalidInput(_))));
        assert!(matches!(
            IdealCategory::new(5),
            Err(Error::InvalidInput(_))
        ));
    }
}
