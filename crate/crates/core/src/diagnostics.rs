//! Instance checks of inequalities and equivalences for Hilbert coefficients
//! of the integral-closure filtration.
//!
//! The ambient ring is a polynomial ring (Cohen-Macaulay, analytically
//! unramified), so every check whose hypotheses are met must come out as
//! `holds` or `equality`. A `violated` status points at a bug in this crate.
//!
//! Checks that need a minimal reduction of `{closure(I^n)}` are restricted to
//! parameter ideals, where `I` itself is one. Reduction numbers are only ever
//! verified up to a bound `n_max`.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hilbert::{
    hilbert_data, series, series_numerator, Filtration, HilbertData, HilbertSamples,
};
use crate::monomial::{ExponentVector, MonomialIdeal};
use crate::newton::{closure_with, NewtonPolyhedron};

pub const DEFAULT_NMAX: u32 = 8;

/// Largest `n` used for the containment checks run by [`diagnose`].
pub const CONTAINMENT_RANGE: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// The inequality or containment holds strictly.
    Holds,
    /// The bound is attained, or the identity holds.
    Equality,
    Violated,
    /// The hypotheses are not met for this input.
    HypothesisNotMet,
    /// A needed quantity could not be determined in the sampled range.
    Inconclusive,
}

impl Status {
    pub fn is_ok(self) -> bool {
        !matches!(self, Status::Violated)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Holds => "holds",
            Status::Equality => "equality",
            Status::Violated => "violated",
            Status::HypothesisNotMet => "hypothesis not met",
            Status::Inconclusive => "inconclusive",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub detail: Value,
}

impl Check {
    fn new(id: &str, status: Status, detail: Value) -> Self {
        Check {
            id: id.to_string(),
            status,
            detail,
        }
    }

    fn inequality(id: &str, lhs: i64, rhs: i64, detail: Value) -> Self {
        let status = match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => Status::Holds,
            std::cmp::Ordering::Equal => Status::Equality,
            std::cmp::Ordering::Less => Status::Violated,
        };
        Check::new(id, status, detail)
    }

    /// Turns a `violated` status into an error.
    pub fn ensure(self) -> Result<Check> {
        if self.status == Status::Violated {
            return Err(Error::violation(&self.id, self.detail.to_string()));
        }
        Ok(self)
    }
}

/// Smallest `r` with `closure(I^{n+1}) = I closure(I^n)` for all `r <= n <= n_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ReductionBound {
    Verified { value: u32, n_max: u32 },
    NotReached { n_max: u32 },
}

impl ReductionBound {
    /// `Some(true)` if `r <= k` is verified, `Some(false)` if refuted inside the
    /// range. Always decidable for `k < n_max`.
    pub fn at_most(self, k: u32) -> bool {
        match self {
            ReductionBound::Verified { value, .. } => value <= k,
            ReductionBound::NotReached { .. } => false,
        }
    }

    pub fn value(self) -> Option<u32> {
        match self {
            ReductionBound::Verified { value, .. } => Some(value),
            ReductionBound::NotReached { .. } => None,
        }
    }
}

impl fmt::Display for ReductionBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionBound::Verified { value, n_max } => {
                write!(f, "{value} (verified up to n = {n_max})")
            }
            ReductionBound::NotReached { n_max } => write!(f, "not reached by n = {n_max}"),
        }
    }
}

/// Powers `I^n` and closures `closure(I^n)` for `1 <= n <= top`.
#[derive(Clone, Debug)]
pub struct ClosureTower {
    ideal: MonomialIdeal,
    powers: Vec<MonomialIdeal>,
    closures: Vec<MonomialIdeal>,
}

impl ClosureTower {
    pub fn new(ideal: &MonomialIdeal, top: u32) -> Result<Self> {
        let q = NewtonPolyhedron::build(ideal)?;
        let top = top.max(2);
        let mut powers = vec![ideal.clone()];
        let mut closures = Vec::with_capacity(top as usize);
        for n in 1..=top {
            if n > 1 {
                let next = powers[n as usize - 2].product(ideal)?;
                powers.push(next);
            }
            closures.push(closure_with(&q, n)?);
        }
        Ok(ClosureTower {
            ideal: ideal.clone(),
            powers,
            closures,
        })
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn top(&self) -> u32 {
        self.closures.len() as u32
    }

    pub fn power(&self, n: u32) -> &MonomialIdeal {
        &self.powers[n as usize - 1]
    }

    pub fn closure(&self, n: u32) -> &MonomialIdeal {
        &self.closures[n as usize - 1]
    }

    /// `closure(I^{n+1}) = I · closure(I^n)`, with `closure(I^0) = R`.
    fn recursion_holds(&self, n: u32) -> Result<bool> {
        if n == 0 {
            return Ok(*self.closure(1) == self.ideal);
        }
        Ok(*self.closure(n + 1) == self.ideal.product(self.closure(n))?)
    }

    pub fn reduction_bound(&self, n_max: u32) -> Result<ReductionBound> {
        assert!(n_max < self.top(), "tower too short for n_max");
        let mut r = None;
        for n in (0..=n_max).rev() {
            if self.recursion_holds(n)? {
                r = Some(n);
            } else {
                break;
            }
        }
        Ok(match r {
            Some(value) => ReductionBound::Verified { value, n_max },
            None => ReductionBound::NotReached { n_max },
        })
    }
}

/// Lengths entering the bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lengths {
    /// `λ(R/I)`
    pub ideal: u64,
    /// `λ(R/closure(I))`
    pub closure: u64,
    /// `λ(closure(I)/I)`
    pub closure_over_ideal: u64,
    /// `λ(closure(I^2)/I closure(I))`
    pub closure_square_over_product: u64,
}

impl Lengths {
    fn compute(tower: &ClosureTower) -> Result<Self> {
        let i = tower.ideal();
        let bar = tower.closure(1);
        let bar2 = tower.closure(2);
        let ideal = i.colength()?;
        let closure = bar.colength()?;
        let product = i.product(bar)?;
        Ok(Lengths {
            ideal,
            closure,
            closure_over_ideal: bar.quotient_length(i)?,
            closure_square_over_product: bar2.quotient_length(&product)?,
        })
    }

    /// `λ(closure(I)/I) + λ(closure(I^2)/I closure(I))`.
    pub fn itoh_bound(&self) -> i64 {
        (self.closure_over_ideal + self.closure_square_over_product) as i64
    }
}

/// Everything the parameter-ideal checks share.
pub struct ParameterContext {
    pub tower: ClosureTower,
    pub n_max: u32,
    pub lengths: Lengths,
    pub normal: Option<(HilbertSamples, HilbertData)>,
    pub reduction: ReductionBound,
}

impl ParameterContext {
    pub fn new(ideal: &MonomialIdeal, n_max: u32) -> Result<Self> {
        if !ideal.is_parameter() {
            return Err(Error::NotParameter);
        }
        let top = (n_max + 1).max(CONTAINMENT_RANGE + ideal.dim() as u32);
        let tower = ClosureTower::new(ideal, top)?;
        let lengths = Lengths::compute(&tower)?;
        let normal = hilbert_data(ideal, Filtration::Normal).ok();
        let reduction = tower.reduction_bound(n_max)?;
        Ok(ParameterContext {
            tower,
            n_max,
            lengths,
            normal,
            reduction,
        })
    }

    fn ideal(&self) -> &MonomialIdeal {
        self.tower.ideal()
    }

    fn dim(&self) -> usize {
        self.ideal().dim()
    }

    fn e_bar(&self) -> Option<&HilbertData> {
        self.normal.as_ref().map(|(_, data)| data)
    }

    /// `closure(I^{n+2}) = I^n closure(I^2)` for `1 <= n <= n_max - 1`.
    fn square_recursion(&self) -> Result<bool> {
        for n in 1..self.n_max {
            let rhs = self.tower.power(n).product(self.tower.closure(2))?;
            if *self.tower.closure(n + 2) != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Numerator check `(1-t)^d F(t) = λ(R/closure(I)) + [e0 - λ(R/closure(I)) - c] t + c t^2`.
    fn series_matches(&self, linear: i64, quadratic: i64) -> Option<(bool, Vec<i64>)> {
        let (samples, data) = self.normal.as_ref()?;
        let numerator = series_numerator(&series(samples), data.dim);
        let mut expected = vec![self.lengths.closure as i64, linear, quadratic];
        expected.resize(numerator.len(), 0);
        let ok = numerator == expected;
        Some((ok, numerator))
    }

    pub fn itoh_e1(&self) -> Result<Check> {
        let Some(e) = self.e_bar() else {
            return Ok(inconclusive("itoh-e1"));
        };
        let e1 = e.e(1);
        let bound = self.lengths.itoh_bound();
        let mut check = Check::inequality(
            "itoh-e1",
            e1,
            bound,
            json!({
                "e1_bar": e1,
                "closure_over_ideal": self.lengths.closure_over_ideal,
                "closure_square_over_product": self.lengths.closure_square_over_product,
                "reduction_bound": self.reduction,
            }),
        );
        if check.status == Status::Violated {
            return Ok(check);
        }
        let r_le_2 = self.reduction.at_most(2);
        let lemma = self.square_recursion()?;
        let equality = check.status == Status::Equality;
        if equality != r_le_2 || lemma != r_le_2 {
            check.status = Status::Violated;
            check.detail["lemma_square_recursion"] = json!(lemma);
            check.detail["reason"] = json!("equality does not match r <= 2");
        }
        Ok(check)
    }

    pub fn itoh_e2(&self) -> Result<Check> {
        if self.dim() < 2 {
            return Ok(Check::new(
                "itoh-e2",
                Status::HypothesisNotMet,
                json!({"reason": "needs d >= 2"}),
            ));
        }
        let Some(e) = self.e_bar() else {
            return Ok(inconclusive("itoh-e2"));
        };
        let (e0, e1, e2) = (e.e(0), e.e(1), e.e(2));
        let rhs = e1 - self.lengths.closure_over_ideal as i64;
        let mut check = Check::inequality(
            "itoh-e2",
            e2,
            rhs,
            json!({"e2_bar": e2, "e1_bar_minus_length": rhs, "reduction_bound": self.reduction}),
        );
        if check.status == Status::Violated {
            return Ok(check);
        }
        let r_le_2 = self.reduction.at_most(2);
        if (check.status == Status::Equality) != r_le_2 {
            check.status = Status::Violated;
            check.detail["reason"] = json!("equality does not match r <= 2");
            return Ok(check);
        }
        if r_le_2 {
            let c = self.lengths.closure_square_over_product as i64;
            let linear = e0 - self.lengths.closure as i64 - c;
            if let Some((ok, numerator)) = self.series_matches(linear, c) {
                check.detail["series_numerator"] = json!(numerator);
                if !ok {
                    check.status = Status::Violated;
                    check.detail["reason"] = json!("series numerator differs from closed form");
                }
            }
        }
        Ok(check)
    }

    pub fn classify_e2(&self) -> Result<(E2Class, Check)> {
        let Some(e) = self.e_bar() else {
            return Ok((E2Class::Unknown, inconclusive("classify-e2")));
        };
        let (e0, e1, e2) = (e.e(0), e.e(1), e.e(2));
        let lambda = self.lengths.closure as i64;
        let mut detail = json!({"e2_bar": e2, "reduction_bound": self.reduction});
        let one_criterion = e1 == e0 - lambda + 1;
        let (class, ok) = match e2 {
            0 => (E2Class::Zero, self.reduction.at_most(1) && !one_criterion),
            1 => {
                // the numerator sums to e0, which fixes the linear coefficient
                let series_ok = match self.series_matches(e0 - lambda - 1, 1) {
                    Some((ok, numerator)) => {
                        detail["series_numerator"] = json!(numerator);
                        ok
                    }
                    None => true,
                };
                let exactly_two = self.reduction.value() == Some(2);
                (E2Class::One, one_criterion && exactly_two && series_ok)
            }
            e2 if e2 < 0 => (E2Class::Unknown, false),
            _ => (
                E2Class::AtLeastTwo,
                !one_criterion && !self.reduction.at_most(1),
            ),
        };
        detail["class"] = json!(class);
        let status = if ok {
            Status::Equality
        } else {
            Status::Violated
        };
        Ok((class, Check::new("classify-e2", status, detail)))
    }

    /// `λ(R/closure(I^{n+1})) <= λ(R/I) C(n+d,d) - [λ(Ī/I)+λ(Ī²/IĪ)] C(n+d-1,d-1) + λ(Ī²/IĪ) C(n+d-2,d-2)`.
    pub fn ipro1(&self, n: u32) -> Result<Check> {
        let d = self.dim() as i64;
        let n64 = n as i64;
        let c = self.lengths.closure_square_over_product as i64;
        let rhs = self.lengths.ideal as i64 * binom(n64 + d, d)
            - self.lengths.itoh_bound() * binom(n64 + d - 1, d - 1)
            + c * binom(n64 + d - 2, d - 2);
        let lhs = self.tower.closure(n + 1).colength()? as i64;
        Ok(Check::inequality(
            "ipro1",
            rhs,
            lhs,
            json!({"n": n, "length": lhs, "bound": rhs}),
        ))
    }

    /// Equality in `ipro1` for every `1 <= n <= n_max` iff `r <= 2`; then `e_i = 0` for `i >= 3`.
    pub fn ipro1_all(&self) -> Result<Check> {
        let mut all_equal = true;
        let mut per_n = Vec::new();
        for n in 0..=self.n_max {
            let check = self.ipro1(n)?;
            if check.status == Status::Violated {
                return Ok(check);
            }
            if n >= 1 && check.status != Status::Equality {
                all_equal = false;
            }
            per_n.push(json!([n, check.status]));
        }
        let r_le_2 = self.reduction.at_most(2);
        let mut detail = json!({"per_n": per_n, "reduction_bound": self.reduction});
        let mut ok = all_equal == r_le_2;
        if r_le_2 {
            if let Some(e) = self.e_bar() {
                let tail: Vec<i64> = e.e.iter().skip(3).copied().collect();
                detail["higher_e_bar"] = json!(tail);
                ok &= tail.iter().all(|&x| x == 0);
            }
        }
        let status = match (ok, all_equal) {
            (false, _) => Status::Violated,
            (true, true) => Status::Equality,
            (true, false) => Status::Holds,
        };
        Ok(Check::new("ipro1", status, detail))
    }

    /// `Σ λ((Īⁿ+I)/I) <= ē1 <= Σ λ(Īⁿ/IĪⁿ⁻¹)`.
    pub fn huckaba_marley(&self) -> Result<Check> {
        let Some(e) = self.e_bar() else {
            return Ok(inconclusive("huckaba-marley"));
        };
        let e1 = e.e(1);
        let i = self.ideal();
        let base = i.colength()?;
        let mut lower = 0i64;
        let mut lower_terms = Vec::new();
        let mut lower_stable = false;
        for n in 1..=self.n_max + 1 {
            let bar = self.tower.closure(n);
            let term = base - bar.sum(i)?.colength()?;
            lower += term as i64;
            lower_terms.push(term);
            if term == 0 && bar.is_subset_of(i)? {
                // closures decrease, so every later term vanishes too
                lower_stable = true;
                break;
            }
        }
        let mut upper = 0i64;
        let mut upper_terms = Vec::new();
        for n in 1..=self.n_max + 1 {
            let product_colength = if n == 1 {
                i.colength()?
            } else {
                i.product(self.tower.closure(n - 1))?.colength()?
            };
            let term = product_colength - self.tower.closure(n).colength()?;
            upper += term as i64;
            upper_terms.push(term);
        }
        let upper_stable = self.reduction.value().is_some();
        let detail = json!({
            "lower": lower,
            "upper": upper,
            "e1_bar": e1,
            "lower_terms": lower_terms,
            "upper_terms": upper_terms,
            "truncated": !(lower_stable && upper_stable),
        });
        let status = if lower > e1 {
            if lower_stable {
                Status::Violated
            } else {
                Status::Inconclusive
            }
        } else if e1 > upper {
            if upper_stable {
                Status::Violated
            } else {
                Status::Inconclusive
            }
        } else if lower == e1 && e1 == upper {
            Status::Equality
        } else {
            Status::Holds
        };
        Ok(Check::new("huckaba-marley", status, detail))
    }

    /// `λ(R/Ī) >= ē0 - ē1`, with equality iff `r <= 1`.
    pub fn colength_vs_e0_e1(&self) -> Check {
        let Some(e) = self.e_bar() else {
            return inconclusive("colength-e0-e1");
        };
        let rhs = e.e(0) - e.e(1);
        let mut check = Check::inequality(
            "colength-e0-e1",
            self.lengths.closure as i64,
            rhs,
            json!({"closure_colength": self.lengths.closure, "e0_minus_e1": rhs, "reduction_bound": self.reduction}),
        );
        if check.status.is_ok() && (check.status == Status::Equality) != self.reduction.at_most(1) {
            check.status = Status::Violated;
        }
        check
    }

    /// `ē1 = 0` forces `r = 0` and `Īⁿ = Iⁿ`.
    pub fn e1_zero(&self) -> Result<Check> {
        let Some(e) = self.e_bar() else {
            return Ok(inconclusive("e1-zero"));
        };
        if e.e(1) != 0 {
            return Ok(Check::new(
                "e1-zero",
                Status::HypothesisNotMet,
                json!({"e1_bar": e.e(1)}),
            ));
        }
        let mut normal = self.reduction.value() == Some(0);
        for n in 1..=self.n_max {
            normal &= self.tower.power(n) == self.tower.closure(n);
        }
        let status = if normal {
            Status::Equality
        } else {
            Status::Violated
        };
        Ok(Check::new(
            "e1-zero",
            status,
            json!({"reduction_bound": self.reduction}),
        ))
    }

    /// Equality in `itoh-e1`, equality in `ipro1` for all `n`, and `r <= 2` agree.
    pub fn r2_equivalence(&self) -> Result<Check> {
        let Some(e) = self.e_bar() else {
            return Ok(inconclusive("r2-equivalence"));
        };
        let itoh = e.e(1) == self.lengths.itoh_bound();
        let ipro = self.ipro1_all()?.status == Status::Equality;
        let r = self.reduction.at_most(2);
        let status = if itoh == ipro && ipro == r {
            Status::Equality
        } else {
            Status::Violated
        };
        Ok(Check::new(
            "r2-equivalence",
            status,
            json!({"itoh_e1_equality": itoh, "ipro1_equality": ipro, "r_at_most_2": r}),
        ))
    }
}

fn inconclusive(id: &str) -> Check {
    Check::new(
        id,
        Status::Inconclusive,
        json!({"reason": "normal Hilbert polynomial not reached in sampled range"}),
    )
}

fn binom(m: i64, k: i64) -> i64 {
    if k < 0 || m < k || m < 0 {
        return 0;
    }
    let mut out = 1i64;
    for t in 0..k {
        out = out * (m - t) / (t + 1);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum E2Class {
    /// `ē2 = 0`, equivalently `r <= 1`.
    Zero,
    /// `ē2 = 1`, equivalently `ē1 = ē0 - λ(R/Ī) + 1`; then `r = 2` and the
    /// series numerator is `λ(R/Ī) + [ē0 - λ(R/Ī) - 1] t + t^2`.
    One,
    /// No classification claimed.
    AtLeastTwo,
    Unknown,
}

fn require_parameter(ideal: &MonomialIdeal) -> Result<()> {
    if !ideal.is_parameter() {
        return Err(Error::NotParameter);
    }
    Ok(())
}

/// `I^n ∩ closure(I^{n+1}) = I^n closure(I)` for a parameter ideal.
pub fn huneke_itoh(ideal: &MonomialIdeal, n: u32) -> Result<Check> {
    require_parameter(ideal)?;
    let tower = ClosureTower::new(ideal, n + 1)?;
    huneke_itoh_in(&tower, n)
}

fn huneke_itoh_in(tower: &ClosureTower, n: u32) -> Result<Check> {
    let power = tower.power(n);
    let lhs = power.intersect(tower.closure(n + 1))?;
    let rhs = power.product(tower.closure(1))?;
    equality_check("huneke-itoh", n, &lhs, &rhs)
}

fn equality_check(id: &str, n: u32, lhs: &MonomialIdeal, rhs: &MonomialIdeal) -> Result<Check> {
    if lhs == rhs {
        return Ok(Check::new(id, Status::Equality, json!({"n": n})));
    }
    let witness: Option<ExponentVector> = match lhs.containment_witness(rhs)? {
        Some(w) => Some(w),
        None => rhs.containment_witness(lhs)?,
    };
    Ok(Check::new(
        id,
        Status::Violated,
        json!({"n": n, "lhs": lhs.rows(), "rhs": rhs.rows(), "witness": witness}),
    ))
}

/// `closure(I^{n+d}) ⊆ I^{n+1}`.
pub fn briancon_skoda(ideal: &MonomialIdeal, n: u32) -> Result<Check> {
    let d = ideal.dim() as u32;
    let tower = ClosureTower::new(ideal, n + d)?;
    briancon_skoda_in(&tower, n)
}

fn briancon_skoda_in(tower: &ClosureTower, n: u32) -> Result<Check> {
    let d = tower.ideal().dim() as u32;
    let closure = tower.closure(n + d);
    let power = tower.power(n + 1);
    Ok(match closure.containment_witness(power)? {
        None => Check::new("briancon-skoda", Status::Holds, json!({"n": n})),
        Some(w) => Check::new(
            "briancon-skoda",
            Status::Violated,
            json!({"n": n, "witness": w}),
        ),
    })
}

pub fn itoh_e1(ideal: &MonomialIdeal, n_max: u32) -> Result<Check> {
    ParameterContext::new(ideal, n_max)?.itoh_e1()
}

pub fn itoh_e2(ideal: &MonomialIdeal, n_max: u32) -> Result<Check> {
    ParameterContext::new(ideal, n_max)?.itoh_e2()
}

pub fn classify_e2(ideal: &MonomialIdeal, n_max: u32) -> Result<(E2Class, Check)> {
    ParameterContext::new(ideal, n_max)?.classify_e2()
}

pub fn ipro1(ideal: &MonomialIdeal, n: u32) -> Result<Check> {
    ParameterContext::new(ideal, n.max(1))?.ipro1(n)
}

pub fn reduction_number_bounded(ideal: &MonomialIdeal, n_max: u32) -> Result<ReductionBound> {
    require_parameter(ideal)?;
    ClosureTower::new(ideal, n_max + 1)?.reduction_bound(n_max)
}

pub fn huckaba_marley_bounds(ideal: &MonomialIdeal, n_max: u32) -> Result<Check> {
    ParameterContext::new(ideal, n_max)?.huckaba_marley()
}

/// If `e1 = ē1` for a parameter ideal, every power `I^n` (`n <= n_max`) must be
/// integrally closed. Other ideals are checked too, but a non-closed power only
/// yields `hypothesis not met`.
pub fn e1_equality_normality(ideal: &MonomialIdeal, n_max: u32) -> Result<Check> {
    let ordinary = hilbert_data(ideal, Filtration::Ordinary).ok();
    let normal = hilbert_data(ideal, Filtration::Normal).ok();
    let tower = ClosureTower::new(ideal, n_max)?;
    e1_equality_normality_in(
        &tower,
        ordinary.as_ref().map(|x| &x.1),
        normal.as_ref().map(|x| &x.1),
        n_max,
    )
}

fn e1_equality_normality_in(
    tower: &ClosureTower,
    ordinary: Option<&HilbertData>,
    normal: Option<&HilbertData>,
    n_max: u32,
) -> Result<Check> {
    let (Some(e), Some(e_bar)) = (ordinary, normal) else {
        return Ok(inconclusive("mtv-normality"));
    };
    if e.e(1) != e_bar.e(1) {
        return Ok(Check::new(
            "mtv-normality",
            Status::HypothesisNotMet,
            json!({"e1": e.e(1), "e1_bar": e_bar.e(1)}),
        ));
    }
    for n in 1..=n_max {
        if tower.power(n) != tower.closure(n) {
            // the normality conclusion is only claimed for parameter ideals;
            // Marley's ideal has e1 = e1_bar = 18 without being closed
            let status = if tower.ideal().is_parameter() {
                Status::Violated
            } else {
                Status::HypothesisNotMet
            };
            return Ok(Check::new(
                "mtv-normality",
                status,
                json!({"e1": e.e(1), "n": n, "power": tower.power(n).rows(), "closure": tower.closure(n).rows()}),
            ));
        }
    }
    Ok(Check::new(
        "mtv-normality",
        Status::Equality,
        json!({"e1": e.e(1), "closed_up_to": n_max}),
    ))
}

/// Checks valid for every m-primary ideal: `e0 = ē0`, `ē1 >= e1`, `ē_i >= 0`
/// for `i < d`, `ē3 >= 0`, and `P̄(0) = 0`.
pub fn coefficient_checks(
    ordinary: Option<&HilbertData>,
    normal: Option<&HilbertData>,
) -> Vec<Check> {
    let mut checks = Vec::new();
    let Some(e_bar) = normal else {
        checks.push(inconclusive("normal-coefficients"));
        return checks;
    };
    let d = e_bar.dim;
    if let Some(e) = ordinary {
        checks.push(Check::new(
            "e0-closure-invariant",
            if e.e(0) == e_bar.e(0) {
                Status::Equality
            } else {
                Status::Violated
            },
            json!({"e0": e.e(0), "e0_bar": e_bar.e(0)}),
        ));
        checks.push(Check::inequality(
            "e1-bar-ge-e1",
            e_bar.e(1),
            e.e(1),
            json!({"e1": e.e(1), "e1_bar": e_bar.e(1)}),
        ));
    }
    let negative: Vec<usize> = (0..d).filter(|&i| e_bar.e(i) < 0).collect();
    checks.push(Check::new(
        "nonnegativity",
        if negative.is_empty() {
            Status::Holds
        } else {
            Status::Violated
        },
        json!({"e_bar": e_bar.e, "negative_indices": negative}),
    ));
    if d >= 3 {
        checks.push(Check::inequality(
            "itoh-e3",
            e_bar.e(3),
            0,
            json!({"e3_bar": e_bar.e(3)}),
        ));
    }
    let at_zero = e_bar.evaluate(0);
    checks.push(Check::new(
        "normal-constant-term",
        if at_zero == 0.into() {
            Status::Equality
        } else {
            Status::Violated
        },
        json!({"value_at_zero": at_zero.to_string()}),
    ));
    checks
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsReport {
    pub ideal: crate::io::IdealJson,
    pub lengths: Lengths,
    pub e: Option<Vec<i64>>,
    pub e_bar: Option<Vec<i64>>,
    pub checks: Vec<Check>,
    pub reduction_bound: Option<ReductionBound>,
    /// Observations that are logged but not asserted.
    pub notes: Vec<String>,
}

impl DiagnosticsReport {
    pub fn violations(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Violated)
    }

    /// Errors on the first violated check.
    pub fn ensure_consistent(&self) -> Result<()> {
        match self.violations().next() {
            None => Ok(()),
            Some(c) => Err(Error::violation(&c.id, c.detail.to_string())),
        }
    }
}

/// Runs every applicable check on `ideal`.
pub fn diagnose(ideal: &MonomialIdeal, n_max: u32) -> Result<DiagnosticsReport> {
    let d = ideal.dim() as u32;
    let ordinary = hilbert_data(ideal, Filtration::Ordinary).ok();
    let ordinary_data = ordinary.as_ref().map(|x| &x.1);
    let mut notes = Vec::new();
    let mut checks = Vec::new();

    let (lengths, reduction_bound, normal) = if ideal.is_parameter() {
        let ctx = ParameterContext::new(ideal, n_max)?;
        for n in 1..=CONTAINMENT_RANGE {
            checks.push(huneke_itoh_in(&ctx.tower, n)?);
        }
        for n in 0..=CONTAINMENT_RANGE {
            checks.push(briancon_skoda_in(&ctx.tower, n)?);
        }
        checks.push(ctx.itoh_e1()?);
        checks.push(ctx.itoh_e2()?);
        checks.push(ctx.classify_e2()?.1);
        checks.push(ctx.ipro1_all()?);
        checks.push(ctx.huckaba_marley()?);
        checks.push(ctx.colength_vs_e0_e1());
        checks.push(ctx.e1_zero()?);
        checks.push(ctx.r2_equivalence()?);
        checks.push(e1_equality_normality_in(
            &ctx.tower,
            ordinary_data,
            ctx.e_bar(),
            n_max,
        )?);
        if d >= 3 {
            if let Some(e) = ctx.e_bar() {
                notes.push(format!(
                    "e3_bar = {}, r <= 2: {} (vanishing coincidence logged only)",
                    e.e(3),
                    ctx.reduction.at_most(2)
                ));
            }
        }
        (ctx.lengths, Some(ctx.reduction), ctx.normal)
    } else {
        let top = n_max.max(CONTAINMENT_RANGE + d);
        let tower = ClosureTower::new(ideal, top)?;
        for n in 0..=CONTAINMENT_RANGE {
            checks.push(briancon_skoda_in(&tower, n)?);
        }
        let normal = hilbert_data(ideal, Filtration::Normal).ok();
        checks.push(e1_equality_normality_in(
            &tower,
            ordinary_data,
            normal.as_ref().map(|x| &x.1),
            n_max,
        )?);
        (Lengths::compute(&tower)?, None, normal)
    };
    let normal_data = normal.as_ref().map(|x| &x.1);
    checks.extend(coefficient_checks(ordinary_data, normal_data));

    Ok(DiagnosticsReport {
        ideal: crate::io::IdealJson::from(ideal),
        lengths,
        e: ordinary_data.map(|h| h.e.clone()),
        e_bar: normal_data.map(|h| h.e.clone()),
        checks,
        reduction_bound,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x2y3() -> MonomialIdeal {
        MonomialIdeal::parameter(&[2, 3]).unwrap()
    }

    fn m(d: usize) -> MonomialIdeal {
        MonomialIdeal::maximal(d).unwrap()
    }

    #[test]
    fn huneke_itoh_examples() {
        assert_eq!(huneke_itoh(&x2y3(), 1).unwrap().status, Status::Equality);
        assert_eq!(huneke_itoh(&m(2), 1).unwrap().status, Status::Equality);
        let p = MonomialIdeal::parameter(&[3, 3, 3]).unwrap();
        assert_eq!(huneke_itoh(&p, 1).unwrap().status, Status::Equality);
        let marley =
            MonomialIdeal::from_rows(&[[3, 0, 0], [0, 3, 0], [0, 0, 3], [1, 1, 1]]).unwrap();
        assert!(matches!(huneke_itoh(&marley, 1), Err(Error::NotParameter)));
    }

    #[test]
    fn briancon_skoda_examples() {
        assert_eq!(briancon_skoda(&x2y3(), 0).unwrap().status, Status::Holds);
        for n in 0..3 {
            assert_eq!(briancon_skoda(&m(2), n).unwrap().status, Status::Holds);
        }
        let marley = MonomialIdeal::from_rows(&[
            [3, 0, 0],
            [0, 3, 0],
            [0, 0, 3],
            [2, 1, 0],
            [1, 2, 0],
            [0, 1, 2],
            [1, 1, 1],
        ])
        .unwrap();
        assert_eq!(briancon_skoda(&marley, 0).unwrap().status, Status::Holds);
    }

    #[test]
    fn itoh_bounds_for_x2_y3() {
        let ctx = ParameterContext::new(&x2y3(), DEFAULT_NMAX).unwrap();
        assert_eq!(ctx.lengths.closure_over_ideal, 1);
        assert_eq!(ctx.lengths.closure_square_over_product, 0);
        assert_eq!(
            ctx.reduction,
            ReductionBound::Verified { value: 1, n_max: 8 }
        );
        assert_eq!(ctx.itoh_e1().unwrap().status, Status::Equality);
        let e2 = ctx.itoh_e2().unwrap();
        assert_eq!(e2.status, Status::Equality);
        let numerator: Vec<i64> =
            serde_json::from_value(e2.detail["series_numerator"].clone()).unwrap();
        assert_eq!(numerator[..3], [5, 1, 0]);
        assert!(numerator[3..].iter().all(|&c| c == 0));
        let (class, check) = ctx.classify_e2().unwrap();
        assert_eq!(class, E2Class::Zero);
        assert_eq!(check.status, Status::Equality);
        assert_eq!(ctx.ipro1(1).unwrap().status, Status::Equality);
        assert_eq!(ctx.ipro1(1).unwrap().detail["bound"], json!(16));
        let hm = ctx.huckaba_marley().unwrap();
        assert_eq!(hm.status, Status::Equality);
        assert_eq!(hm.detail["lower"], json!(1));
        assert_eq!(hm.detail["upper"], json!(1));
    }

    #[test]
    fn maximal_ideal_is_tight_everywhere() {
        let ctx = ParameterContext::new(&m(2), DEFAULT_NMAX).unwrap();
        assert_eq!(ctx.reduction.value(), Some(0));
        for check in [
            ctx.itoh_e1().unwrap(),
            ctx.itoh_e2().unwrap(),
            ctx.ipro1_all().unwrap(),
            ctx.huckaba_marley().unwrap(),
            ctx.e1_zero().unwrap(),
        ] {
            assert_eq!(check.status, Status::Equality, "{check:?}");
        }
    }

    #[test]
    fn reduction_numbers() {
        assert_eq!(
            reduction_number_bounded(&x2y3(), 8).unwrap().value(),
            Some(1)
        );
        assert_eq!(reduction_number_bounded(&m(2), 8).unwrap().value(), Some(0));
        // closure of (x^3, y^3, z^3) is m^3; m^6 != I m^3 but m^9 = I m^6
        let p = MonomialIdeal::parameter(&[3, 3, 3]).unwrap();
        assert_eq!(reduction_number_bounded(&p, 8).unwrap().value(), Some(2));
    }

    #[test]
    fn itoh_on_d3_and_x4_y5() {
        for ideal in [
            MonomialIdeal::parameter(&[3, 3, 3]).unwrap(),
            MonomialIdeal::parameter(&[4, 5]).unwrap(),
        ] {
            let ctx = ParameterContext::new(&ideal, DEFAULT_NMAX).unwrap();
            assert!(ctx.itoh_e1().unwrap().status.is_ok());
            assert!(ctx.itoh_e2().unwrap().status.is_ok());
            for n in 1..=3 {
                assert!(ctx.ipro1(n).unwrap().status.is_ok());
            }
            assert!(ctx.huckaba_marley().unwrap().status.is_ok());
        }
    }

    #[test]
    fn mtv_normality() {
        let m2 = MonomialIdeal::from_rows(&[[2, 0], [1, 1], [0, 2]]).unwrap();
        let check = e1_equality_normality(&m2, 6).unwrap();
        assert_eq!(check.status, Status::Equality);
        assert_eq!(
            e1_equality_normality(&m(2), 6).unwrap().status,
            Status::Equality
        );
        assert_eq!(
            e1_equality_normality(&x2y3(), 6).unwrap().status,
            Status::HypothesisNotMet
        );
    }

    #[test]
    fn full_report() {
        let report = diagnose(&x2y3(), DEFAULT_NMAX).unwrap();
        report.ensure_consistent().unwrap();
        assert_eq!(report.e_bar, Some(vec![6, 1, 0]));
        assert_eq!(report.e, Some(vec![6, 0, 0]));
        let marley = MonomialIdeal::from_rows(&[
            [3, 0, 0],
            [0, 3, 0],
            [0, 0, 3],
            [2, 1, 0],
            [1, 2, 0],
            [0, 1, 2],
            [1, 1, 1],
        ])
        .unwrap();
        let report = diagnose(&marley, 4).unwrap();
        report.ensure_consistent().unwrap();
        assert_eq!(report.e, Some(vec![27, 18, 4, -1]));
        assert!(report.reduction_bound.is_none());
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(4, 2), 6);
        assert_eq!(binom(3, 0), 1);
        assert_eq!(binom(1, -1), 0);
        assert_eq!(binom(-1, 0), 0);
    }
}
