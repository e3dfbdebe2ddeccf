//! Formulas for complete ideals in dimension two: Lipman's normal Hilbert
//! polynomial, the mixed multiplicity `e1(I|J)`, lengths of
//! `closure(I^r J^s)`, and the Hoskin-Deligne formula for point bases.

use num_integer::binomial;
use num_rational::BigRational;
use serde::Serialize;

use crate::ehrhart::NormalEhrhart;
use crate::error::{Error, Result};
use crate::hilbert::{hilbert_data, Filtration};
use crate::io::BasisJson;
use crate::monomial::MonomialIdeal;
use crate::newton::{integral_closure, normal_colength, NewtonPolyhedron};

fn require_plane(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: ideal.dim(),
        });
    }
    ideal.pure_bounds()?;
    Ok(())
}

fn c2(n: u64) -> i64 {
    if n < 2 {
        0
    } else {
        binomial(n, 2) as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthRow {
    pub n: u32,
    pub predicted: i64,
    pub observed: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoDimReport {
    pub e0: i64,
    pub e1: i64,
    pub e2: i64,
    pub closure_colength: u64,
    pub table: Vec<LengthRow>,
}

/// `λ(R/closure(I^n)) = e C(n+1,2) - (e - λ(R/closure(I))) n`, checked for `1 <= n <= n_max`.
pub fn lipman_polynomial(ideal: &MonomialIdeal, n_max: u32) -> Result<TwoDimReport> {
    require_plane(ideal)?;
    let (_, data) = hilbert_data(ideal, Filtration::Normal)?;
    let e = data.e(0);
    if data.e(2) != 0 {
        return Err(Error::violation(
            "lipman-e2",
            format!("e2_bar = {}", data.e(2)),
        ));
    }
    let volume =
        NormalEhrhart::new(ideal)?.difference.coefficient(2) * BigRational::from_integer(2.into());
    if volume != BigRational::from_integer(e.into()) {
        return Err(Error::violation(
            "lipman-volume",
            format!("e0_bar = {e} but 2 (vol S - vol P) = {volume}"),
        ));
    }
    let closure_colength = normal_colength(ideal, 1)?;
    let e1 = e - closure_colength as i64;
    if data.e(1) != e1 {
        return Err(Error::violation(
            "lipman-e1",
            format!("e1_bar = {} but e - λ(R/closure(I)) = {e1}", data.e(1)),
        ));
    }
    let mut table = Vec::new();
    for n in 1..=n_max {
        let predicted = e * c2(n as u64 + 1) - e1 * n as i64;
        let observed = normal_colength(ideal, n)? as i64;
        if predicted != observed {
            return Err(Error::violation(
                "lipman",
                format!("n = {n}: predicted {predicted}, observed {observed}"),
            ));
        }
        table.push(LengthRow {
            n,
            predicted,
            observed,
        });
    }
    Ok(TwoDimReport {
        e0: e,
        e1,
        e2: 0,
        closure_colength,
        table,
    })
}

/// `closure(I) closure(J) = closure(IJ)` in dimension two.
fn zariski_product(
    i_bar: &MonomialIdeal,
    j_bar: &MonomialIdeal,
    i: &MonomialIdeal,
    j: &MonomialIdeal,
) -> Result<MonomialIdeal> {
    let product = i_bar.product(j_bar)?;
    let closed = integral_closure(&i.product(j)?)?;
    if product != closed {
        return Err(Error::violation(
            "zariski-product",
            format!("closure(I) closure(J) = {product} but closure(IJ) = {closed}"),
        ));
    }
    Ok(product)
}

/// `e1(I|J) = λ(R/closure(I) closure(J)) - λ(R/closure(I)) - λ(R/closure(J))`.
pub fn mixed_e1(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<i64> {
    require_plane(i)?;
    require_plane(j)?;
    let i_bar = integral_closure(i)?;
    let j_bar = integral_closure(j)?;
    let product = zariski_product(&i_bar, &j_bar, i, j)?;
    Ok(product.colength()? as i64 - i_bar.colength()? as i64 - j_bar.colength()? as i64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixedLength {
    pub r: u32,
    pub s: u32,
    pub e_i: i64,
    pub e_j: i64,
    pub mixed_e1: i64,
    pub predicted: i64,
    pub observed: i64,
}

/// Precomputed data for a pair `(I, J)`, reused across exponents `(r, s)`.
pub struct MixedPair {
    i: MonomialIdeal,
    j: MonomialIdeal,
    e_i: i64,
    e_j: i64,
    len_i: i64,
    len_j: i64,
    mixed: i64,
}

impl MixedPair {
    pub fn new(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<Self> {
        require_plane(i)?;
        require_plane(j)?;
        let e_i = hilbert_data(i, Filtration::Normal)?.1.e(0);
        let e_j = hilbert_data(j, Filtration::Normal)?.1.e(0);
        Ok(MixedPair {
            i: i.clone(),
            j: j.clone(),
            e_i,
            e_j,
            len_i: normal_colength(i, 1)? as i64,
            len_j: normal_colength(j, 1)? as i64,
            mixed: mixed_e1(i, j)?,
        })
    }

    pub fn predicted(&self, r: u32, s: u32) -> i64 {
        let (r64, s64) = (r as i64, s as i64);
        self.e_i * c2(r as u64)
            + r64 * s64 * self.mixed
            + self.e_j * c2(s as u64)
            + r64 * self.len_i
            + s64 * self.len_j
    }

    /// `λ(R/closure(I^r J^s))` from the Newton polyhedron of `I^r J^s`.
    pub fn observed(&self, r: u32, s: u32) -> Result<i64> {
        let product = match (r, s) {
            (0, 0) => return Ok(0),
            (r, 0) => self.i.power(r)?,
            (0, s) => self.j.power(s)?,
            (r, s) => self.i.power(r)?.product(&self.j.power(s)?)?,
        };
        let q = NewtonPolyhedron::build(&product)?;
        Ok(crate::newton::normal_colength_with(&q, 1) as i64)
    }

    pub fn length(&self, r: u32, s: u32) -> Result<MixedLength> {
        let predicted = self.predicted(r, s);
        let observed = self.observed(r, s)?;
        if predicted != observed {
            return Err(Error::violation(
                "mixed-length",
                format!("r = {r}, s = {s}: predicted {predicted}, observed {observed}"),
            ));
        }
        Ok(MixedLength {
            r,
            s,
            e_i: self.e_i,
            e_j: self.e_j,
            mixed_e1: self.mixed,
            predicted,
            observed,
        })
    }
}

/// `λ(R/closure(I^r J^s)) = e(I)C(r,2) + rs e1(I|J) + e(J)C(s,2) + rλ(R/Ī) + sλ(R/J̄)`.
pub fn mixed_length(i: &MonomialIdeal, j: &MonomialIdeal, r: u32, s: u32) -> Result<MixedLength> {
    MixedPair::new(i, j)?.length(r, s)
}

/// Orders and residue degrees `(o_T, d_T)` of the base points of a complete ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointBasis {
    entries: Vec<(u64, u64)>,
}

impl PointBasis {
    pub fn new(entries: Vec<(u64, u64)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidPointBasis("empty basis".into()));
        }
        if let Some(&(o, d)) = entries.iter().find(|&&(o, d)| o == 0 || d == 0) {
            return Err(Error::InvalidPointBasis(format!(
                "entries must be positive, got ({o}, {d})"
            )));
        }
        Ok(PointBasis { entries })
    }

    pub fn from_json(json: &BasisJson) -> Result<Self> {
        PointBasis::new(json.basis.clone())
    }

    pub fn entries(&self) -> &[(u64, u64)] {
        &self.entries
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HoskinDeligne {
    pub length: i64,
    pub e0: i64,
    pub e1: i64,
    pub e2: i64,
}

pub fn hoskin_deligne(basis: &PointBasis) -> Result<HoskinDeligne> {
    let mut out = HoskinDeligne {
        length: 0,
        e0: 0,
        e1: 0,
        e2: 0,
    };
    for &(o, d) in basis.entries() {
        let d = d as i64;
        out.length += c2(o + 1) * d;
        out.e0 += (o * o) as i64 * d;
        out.e1 += c2(o) * d;
    }
    if out.e1 != out.e0 - out.length {
        return Err(Error::violation(
            "hoskin-deligne",
            format!("e1 = {} but e0 - length = {}", out.e1, out.e0 - out.length),
        ));
    }
    Ok(out)
}
