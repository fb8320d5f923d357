use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use crate::dinv::Summation;
use crate::error::{Error, Result};
use crate::expr::{Expression, Monomial};
use crate::oracle::{zero_test, OracleVerdict, ZeroTestConfig};
use crate::rational::{int, Rational};
use crate::variational::{lie_bracket_with, Orientation};

use super::builtin::{builtin, BuiltinName};
use super::report::{Check, Outcome, SymbolicVerdict, VerificationReport};
use super::time::TimePolynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub zero_test: ZeroTestConfig,
    /// `Polynomial` by default: brackets with `N = -x/2` produce `Δ⁻¹(1) = n`.
    pub summation: Summation,
    /// `ad_N X`: `[X, N]` when `Right`.
    pub n_orientation: Orientation,
    /// `ad_{N2} X`: `[X, N2]` when `Right`.
    pub n2_orientation: Orientation,
    /// `H_{j+1} = [W, H_j]` when `Left`.
    pub hierarchy_orientation: Orientation,
    pub time_cap: usize,
    pub depth_cap: usize,
    pub term_ceiling: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            zero_test: ZeroTestConfig::default(),
            summation: Summation::Polynomial,
            n_orientation: Orientation::Right,
            n2_orientation: Orientation::Right,
            hierarchy_orientation: Orientation::Left,
            time_cap: 16,
            depth_cap: 4,
            term_ceiling: 500_000,
        }
    }
}

/// Commuting flows generated from `K` by the master symmetry.
#[derive(Clone, Debug)]
pub struct Hierarchy {
    pub members: Vec<Expression>,
    pub orientation: Orientation,
    pub report: VerificationReport,
}

#[derive(Clone, Debug)]
pub struct TimeSymmetry {
    pub polynomial: TimePolynomial,
    /// `ad_K^k G0` for `k = 0..=degree`.
    pub chain: Vec<Expression>,
    /// The check that `ad_K^{degree+1} G0` vanishes.
    pub termination: Check,
}

#[derive(Clone, Debug, Default)]
pub struct Suite {
    config: SuiteConfig,
}

impl Suite {
    pub fn new(config: SuiteConfig) -> Self {
        Suite { config }
    }

    pub fn config(&self) -> &SuiteConfig {
        &self.config
    }

    fn report(&self, label: impl Into<String>) -> VerificationReport {
        VerificationReport::new(label, self.config.zero_test.clone())
    }

    fn guard(&self, e: Expression) -> Result<Expression> {
        if e.len() > self.config.term_ceiling {
            return Err(Error::DepthBlowup {
                terms: e.len(),
                ceiling: self.config.term_ceiling,
            });
        }
        Ok(e)
    }

    /// `[a, b]` under the configured summation, with the term ceiling enforced.
    pub fn bracket(&self, a: &Expression, b: &Expression) -> Result<Expression> {
        self.guard(lie_bracket_with(a, b, self.config.summation)?)
    }

    pub fn ad(
        &self,
        a: &Expression,
        x: &Expression,
        k: usize,
        orientation: Orientation,
    ) -> Result<Expression> {
        let mut acc = x.clone();
        for _ in 0..k {
            if acc.is_zero() {
                break;
            }
            acc = match orientation {
                Orientation::Left => self.bracket(a, &acc)?,
                Orientation::Right => self.bracket(&acc, a)?,
            };
        }
        Ok(acc)
    }

    /// Syntactic zero first, then the oracle.
    pub fn check_zero(&self, label: impl Into<String>, e: &Expression) -> Result<Check> {
        self.identity(label.into(), e, false)
    }

    fn identity(&self, label: String, e: &Expression, syntactic_only: bool) -> Result<Check> {
        let (symbolic, oracle) = if e.is_zero() {
            (SymbolicVerdict::SyntacticZero, None)
        } else {
            (
                SymbolicVerdict::NonzeroNormalForm { terms: e.len() },
                Some(zero_test(e, &self.config.zero_test)?),
            )
        };
        Ok(Check {
            label,
            outcome: Outcome::Identity {
                symbolic,
                oracle,
                syntactic_only,
            },
        })
    }

    /// Membership in the coefficient-free space. Terms carrying `x^a n^b` are
    /// grouped by `(a, b)`; each block, with the coefficient stripped, must
    /// vanish (syntactically, or exactly under the oracle).
    fn membership(&self, label: String, e: &Expression) -> Result<Check> {
        let mut blocks: BTreeMap<(u32, u32), Vec<Monomial>> = BTreeMap::new();
        for t in e.terms() {
            if t.xdeg() > 0 || t.ndeg() > 0 {
                blocks
                    .entry((t.xdeg(), t.ndeg()))
                    .or_default()
                    .push(t.clone().with_degrees(0, 0));
            }
        }
        let carrying: usize = blocks.values().map(Vec::len).sum();
        if carrying == 0 {
            return Ok(Check {
                label,
                outcome: Outcome::Condition {
                    holds: true,
                    detail: format!("no term of {} carries x or n", e.len()),
                },
            });
        }
        let mut verdict = OracleVerdict::ExactZero;
        for block in blocks.into_values() {
            let v = zero_test(&Expression::from_terms(block), &self.config.zero_test)?;
            if !v.is_exact_zero() {
                verdict = v;
                break;
            }
        }
        Ok(Check {
            label,
            outcome: Outcome::Identity {
                symbolic: SymbolicVerdict::NonzeroNormalForm { terms: carrying },
                oracle: Some(verdict),
                syntactic_only: false,
            },
        })
    }

    /// `[K, G] = 0`.
    pub fn is_symmetry(&self, k: &Expression, g: &Expression) -> Result<VerificationReport> {
        let mut report = self.report("generalised symmetry");
        let b = self.bracket(k, g)?;
        report.checks.push(self.check_zero("[K,G] = 0", &b)?);
        Ok(report)
    }

    /// `[K, [K, W]] = 0` and `[W, K]` free of explicit `x`, `n`.
    pub fn is_master_symmetry(&self, k: &Expression, w: &Expression) -> Result<VerificationReport> {
        let mut report = self.report("master symmetry");
        let wk = self.bracket(w, k)?;
        report
            .checks
            .push(self.membership("[W,K] has no explicit x, n".into(), &wk)?);
        let kkw = self.bracket(k, &-&wk)?;
        report.checks.push(self.check_zero("[K,[K,W]] = 0", &kkw)?);
        report.notes.push(format!("[W,K] has {} terms", wk.len()));
        Ok(report)
    }

    /// The master symmetry checks for the builtin `W`, plus `[W, K] = -2 G3`.
    pub fn master_symmetry_report(&self) -> Result<VerificationReport> {
        let k = builtin(BuiltinName::K);
        let w = builtin(BuiltinName::W);
        let mut report = self.is_master_symmetry(&k, &w)?;
        let wk = self.bracket(&w, &k)?;
        let g3 = builtin(BuiltinName::G3).scale(&int(2));
        report
            .checks
            .push(self.check_zero("[W,K] + 2 G3 = 0", &(&wk + &g3))?);
        Ok(report)
    }

    /// `[M,N] = H`, `[H,N] = -2N`, `[H,M] = 2M`, each as an exact cancellation
    /// of normal forms.
    pub fn sl2_verify(&self) -> Result<VerificationReport> {
        let m = builtin(BuiltinName::M);
        let n = builtin(BuiltinName::N);
        let h = builtin(BuiltinName::H);
        let mut report = self.report("sl(2) relations");
        let rel = [
            ("[M,N] - H", &self.bracket(&m, &n)? - &h),
            ("[H,N] + 2N", &self.bracket(&h, &n)? + &n.scale(&int(2))),
            ("[H,M] - 2M", &self.bracket(&h, &m)? - &m.scale(&int(2))),
        ];
        for (label, e) in rel {
            report.checks.push(self.identity(label.into(), &e, true)?);
        }
        Ok(report)
    }

    fn cap(&self, m: usize) -> Result<()> {
        if m > self.config.depth_cap {
            return Err(Error::DepthCap {
                requested: m,
                cap: self.config.depth_cap,
            });
        }
        Ok(())
    }

    /// `ad_{N2}^m K`.
    pub fn master_power(&self, m: usize) -> Result<Expression> {
        self.cap(m)?;
        self.ad(
            &builtin(BuiltinName::N2),
            &builtin(BuiltinName::K),
            m,
            self.config.n2_orientation,
        )
    }

    /// `[H, ad_{N2}^m K] = (m + 2) ad_{N2}^m K`.
    pub fn weight_verify(&self, m: usize) -> Result<VerificationReport> {
        let x = self.master_power(m)?;
        let h = builtin(BuiltinName::H);
        let lhs = self.bracket(&h, &x)?;
        let weight = int(m as i64 + 2);
        let mut report = self.report(format!("weight m={m}"));
        report.checks.push(self.check_zero(
            format!("[H, ad_N2^{m} K] - {weight} ad_N2^{m} K"),
            &(&lhs - &x.scale(&weight)),
        )?);
        report
            .notes
            .push(format!("ad_N2^{m} K has {} terms", x.len()));
        Ok(report)
    }

    /// `ad_K^{l+1}(ad_N^l ad_{N2}^m K) = 0` for `0 <= l <= m + 2`.
    pub fn nilpotency_verify(&self, m: usize, l: usize) -> Result<VerificationReport> {
        if l > m + 2 {
            return Err(Error::InvalidArgument(format!(
                "l = {l} is outside 0..={}",
                m + 2
            )));
        }
        let x = self.master_power(m)?;
        let y = self.ad(&builtin(BuiltinName::N), &x, l, self.config.n_orientation)?;
        let z = self.ad(&builtin(BuiltinName::K), &y, l + 1, Orientation::Left)?;
        let mut report = self.report(format!("nilpotency m={m} l={l}"));
        report
            .checks
            .push(self.check_zero(format!("ad_K^{} ad_N^{l} ad_N2^{m} K = 0", l + 1), &z)?);
        report
            .notes
            .push(format!("ad_N^{l} ad_N2^{m} K has {} terms", y.len()));
        Ok(report)
    }

    /// `[K, H_2, ...]` with `H_{j+1} = [W, H_j]` (or `[H_j, W]`), each checked
    /// for membership and all pairs checked to commute.
    pub fn hierarchy(&self, depth: usize) -> Result<Hierarchy> {
        if depth == 0 {
            return Err(Error::InvalidArgument(
                "hierarchy depth must be positive".into(),
            ));
        }
        self.cap(depth)?;
        let w = builtin(BuiltinName::W);
        let orientation = self.config.hierarchy_orientation;
        let mut members = vec![builtin(BuiltinName::K)];
        while members.len() < depth {
            let last = members.last().expect("non-empty");
            let next = match orientation {
                Orientation::Left => self.bracket(&w, last)?,
                Orientation::Right => self.bracket(last, &w)?,
            };
            members.push(next);
        }
        let mut report = self.report(format!("hierarchy depth={depth}"));
        for (i, h) in members.iter().enumerate() {
            report
                .checks
                .push(self.membership(format!("H{} has no explicit x, n", i + 1), h)?);
            report
                .notes
                .push(format!("H{} has {} terms", i + 1, h.len()));
        }
        if let Some(h2) = members.get(1) {
            let c = match orientation {
                Orientation::Left => int(-2),
                Orientation::Right => int(2),
            };
            let g3 = builtin(BuiltinName::G3);
            report
                .checks
                .push(self.check_zero(format!("H2 - ({c}) G3 = 0"), &(h2 - &g3.scale(&c)))?);
            report.notes.push(format!("H2 = {c} * G3"));
        }
        for i in 0..members.len() {
            for j in (i + 1)..members.len() {
                let b = self.bracket(&members[i], &members[j])?;
                report
                    .checks
                    .push(self.check_zero(format!("[H{},H{}] = 0", i + 1, j + 1), &b)?);
            }
        }
        Ok(Hierarchy {
            members,
            orientation,
            report,
        })
    }

    /// `exp(-t ad_K) G0`, truncated at the first `k` with `ad_K^{k+1} G0 = 0`.
    /// An oracle `zero-mod-n-constant` verdict does not terminate the series.
    pub fn time_symmetry(&self, g0: &Expression, cap: usize) -> Result<TimeSymmetry> {
        let k = builtin(BuiltinName::K);
        let mut chain = vec![g0.clone()];
        let termination = loop {
            let step = chain.len();
            let next = self.bracket(&k, chain.last().expect("non-empty"))?;
            let check = self.check_zero(format!("ad_K^{step} G0 = 0"), &next)?;
            if check.passed() {
                break check;
            }
            if step > cap {
                return Err(Error::NotNilpotent { cap });
            }
            chain.push(next);
        };
        let mut factorial = Rational::one();
        let terms = chain.iter().enumerate().map(|(i, a)| {
            if i > 0 {
                factorial *= int(i as i64);
            }
            let sign = if i % 2 == 0 { int(1) } else { int(-1) };
            (i as u32, a.scale(&(sign / &factorial)))
        });
        let polynomial = TimePolynomial::new(terms.collect::<Vec<_>>());
        Ok(TimeSymmetry {
            polynomial,
            chain,
            termination,
        })
    }

    /// `∂P/∂t = [P, K]`, coefficient by coefficient in `t`.
    pub fn verify_time_symmetry(&self, p: &TimePolynomial) -> Result<VerificationReport> {
        let k = builtin(BuiltinName::K);
        let dt = p.derivative();
        let mut report = self.report("time-dependent symmetry");
        let top = p.degree().unwrap_or(0);
        for j in 0..=top {
            let bracket = self.bracket(&p.coefficient(j), &k)?;
            let residual = &dt.coefficient(j) - &bracket;
            report
                .checks
                .push(self.check_zero(format!("t^{j}: dP/dt - [P,K] = 0"), &residual)?);
        }
        Ok(report)
    }
}
