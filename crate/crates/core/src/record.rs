//! Serializable form of a computed character.

use serde::{Deserialize, Serialize};

use crate::affine::{AdmissibleDescriptor, DescriptorRecord};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::roots::RootSystem;
use crate::series::{GradedSeries, Support, Term};

/// A rational as separate integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frac {
    pub num: i64,
    pub den: i64,
}

impl Frac {
    fn from_rational(r: &Rational) -> Result<Frac> {
        let (num, den) = r.to_i64_pair().ok_or_else(|| Error::InvalidInput(format!("{r} does not fit in i64")))?;
        Ok(Frac { num, den })
    }

    fn to_rational(&self) -> Result<Rational> {
        if self.den == 0 {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(Rational::new(self.num, self.den))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordMeta {
    pub algebra: String,
    pub u: i64,
    pub descriptor: DescriptorRecord,
    pub order: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TermRecord {
    pub q_num: i64,
    pub q_den: i64,
    pub weight_coords: Vec<Frac>,
    pub coeff_num: i64,
    pub coeff_den: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OutputRecord {
    pub meta: RecordMeta,
    /// Ascending in `q`, then lexicographic in the weight.
    pub terms: Vec<TermRecord>,
    pub t_exp: Frac,
    /// Exponent of `i`.
    pub unit_power: u8,
    /// Absolute degree below which the terms are complete; absent if exact.
    pub trunc: Option<Frac>,
}

impl OutputRecord {
    pub fn new(d: &AdmissibleDescriptor, order: i64, series: &GradedSeries) -> Result<OutputRecord> {
        let mut terms = series.terms();
        terms.sort_by(|a, b| a.q.cmp(&b.q).then_with(|| a.w.cmp(&b.w)));
        let terms = terms
            .iter()
            .map(|t| {
                let q = Frac::from_rational(&t.q)?;
                let c = Frac::from_rational(&t.coeff)?;
                let w = t.w.iter().map(Frac::from_rational).collect::<Result<Vec<_>>>()?;
                Ok(TermRecord { q_num: q.num, q_den: q.den, weight_coords: w, coeff_num: c.num, coeff_den: c.den })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OutputRecord {
            meta: RecordMeta { algebra: d.rs.cartan_type.to_string(), u: d.u, descriptor: d.to_record(), order },
            terms,
            t_exp: Frac::from_rational(series.t_exp())?,
            unit_power: series.unit(),
            trunc: series.trunc().map(Frac::from_rational).transpose()?,
        })
    }

    /// Rebuilds the series over the algebra's weight space.
    pub fn to_series(&self) -> Result<GradedSeries> {
        let rs = RootSystem::parse(&self.meta.algebra)?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.weight_coords.len() != rs.rank() {
                return Err(Error::InvalidInput(format!("weights need {} coordinates", rs.rank())));
            }
            let w = t.weight_coords.iter().map(Frac::to_rational).collect::<Result<Vec<_>>>()?;
            let q = Frac { num: t.q_num, den: t.q_den }.to_rational()?;
            let coeff = Frac { num: t.coeff_num, den: t.coeff_den }.to_rational()?;
            terms.push(Term { q, w, coeff });
        }
        let trunc = self.trunc.as_ref().map(Frac::to_rational).transpose()?;
        Ok(GradedSeries::from_terms(
            rs.weight_space(),
            terms,
            trunc,
            self.t_exp.to_rational()?,
            self.unit_power,
            Support::Unknown,
        ))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records always serialize")
    }

    pub fn from_json(s: &str) -> Result<OutputRecord> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("bad record: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{boundary_character, sl2_descriptor};
    use crate::rational::q;

    #[test]
    fn round_trip() {
        let d = sl2_descriptor(3, 1).unwrap();
        let s = boundary_character(&d, &q(10, 1)).unwrap().series;
        let rec = OutputRecord::new(&d, 10, &s).unwrap();
        let json = rec.to_json();
        assert!(!json.contains('/'));
        let back = OutputRecord::from_json(&json).unwrap();
        assert_eq!(back, rec);
        assert_eq!(back.to_json(), json);
        let s2 = back.to_series().unwrap();
        assert_eq!(s2.terms(), s.terms());
        assert_eq!((s2.trunc(), s2.t_exp(), s2.unit()), (s.trunc(), s.t_exp(), s.unit()));
        let qs: Vec<(i64, i64)> = rec.terms.iter().map(|t| (t.q_num, t.q_den)).collect();
        assert!(qs.windows(2).all(|p| q(p[0].0, p[0].1) <= q(p[1].0, p[1].1)));
    }
}
