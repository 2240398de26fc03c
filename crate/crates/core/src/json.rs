//! JSON schemas for the published wire formats. Rationals are [num, den]
//! integer pairs, lowest degree first for polynomial coefficients.
//! Integers are emitted as JSON numbers with arbitrary precision.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::mixed::{HermitianDiagonal, MixedElement, SkewHermitianDiagonal};
use crate::numberfield::{FieldElement, NumberField};
use crate::poly::Polynomial;
use crate::quat::{PureQuaternion, Quaternion, QuaternionAlgebra};
use crate::rational::Rat;
use crate::signpol::PolarizationMap;
use crate::witt::QuadraticForm;

/// An arbitrary-precision integer carried as a JSON number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let n = serde_json::Number::from_str(&self.0.to_string())
            .map_err(serde::ser::Error::custom)?;
        n.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(deserializer)?;
        let big = BigInt::from_str(&n.to_string())
            .map_err(|_| D::Error::custom(format!("expected an integer, got {n}")))?;
        Ok(JsonInt(big))
    }
}

/// A rational as a [numerator, denominator] pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatPair(pub JsonInt, pub JsonInt);

impl RatPair {
    pub fn from_rat(r: &Rat) -> Self {
        RatPair(JsonInt(r.numer().clone()), JsonInt(r.denom().clone()))
    }

    pub fn to_rat(&self) -> Result<Rat> {
        if self.1 .0 == BigInt::from(0) {
            return Err(Error::Parse {
                pos: 0,
                msg: "zero denominator".into(),
            });
        }
        Ok(Rat::new(self.0 .0.clone(), self.1 .0.clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub poly: Vec<RatPair>,
}

impl PolyJson {
    pub fn from_polynomial(p: &Polynomial) -> Self {
        PolyJson {
            poly: p.coeffs().iter().map(RatPair::from_rat).collect(),
        }
    }

    pub fn to_polynomial(&self) -> Result<Polynomial> {
        let coeffs = self
            .poly
            .iter()
            .map(|r| r.to_rat())
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_coeffs(coeffs))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub coeffs: Vec<RatPair>,
}

impl ElementJson {
    pub fn from_element(e: &FieldElement) -> Self {
        ElementJson {
            coeffs: e.coeffs().iter().map(RatPair::from_rat).collect(),
        }
    }

    pub fn to_element(&self, field: &Arc<NumberField>) -> Result<FieldElement> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|r| r.to_rat())
            .collect::<Result<Vec<_>>>()?;
        Ok(FieldElement::new(field, coeffs))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub entries: Vec<ElementJson>,
}

impl FormJson {
    pub fn from_form(q: &QuadraticForm) -> Self {
        FormJson {
            entries: q.entries().iter().map(ElementJson::from_element).collect(),
        }
    }

    pub fn to_form(&self, field: &Arc<NumberField>) -> Result<QuadraticForm> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.to_element(field))
            .collect::<Result<Vec<_>>>()?;
        QuadraticForm::diagonal(field, entries)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolJson {
    pub a: ElementJson,
    pub b: ElementJson,
}

impl SymbolJson {
    pub fn to_algebra(&self, field: &Arc<NumberField>) -> Result<Arc<QuaternionAlgebra>> {
        QuaternionAlgebra::new(field, self.a.to_element(field)?, self.b.to_element(field)?)
    }

    pub fn from_algebra(algebra: &QuaternionAlgebra) -> Self {
        SymbolJson {
            a: ElementJson::from_element(algebra.a()),
            b: ElementJson::from_element(algebra.b()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuatJson {
    pub x: [ElementJson; 4],
}

impl QuatJson {
    pub fn from_quaternion(q: &Quaternion) -> Self {
        let c = q.coords();
        QuatJson {
            x: [
                ElementJson::from_element(&c[0]),
                ElementJson::from_element(&c[1]),
                ElementJson::from_element(&c[2]),
                ElementJson::from_element(&c[3]),
            ],
        }
    }

    pub fn from_pure(z: &PureQuaternion) -> Self {
        Self::from_quaternion(&z.as_quaternion())
    }

    pub fn to_quaternion(&self, algebra: &Arc<QuaternionAlgebra>) -> Result<Quaternion> {
        let field = algebra.field();
        Quaternion::new(
            algebra,
            [
                self.x[0].to_element(field)?,
                self.x[1].to_element(field)?,
                self.x[2].to_element(field)?,
                self.x[3].to_element(field)?,
            ],
        )
    }

    pub fn to_pure(&self, algebra: &Arc<QuaternionAlgebra>) -> Result<PureQuaternion> {
        let q = self.to_quaternion(algebra)?;
        if !q.coords()[0].is_zero() {
            return Err(Error::NotPure);
        }
        q.pure_part()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedJson {
    pub scalar: FormJson,
    #[serde(default)]
    pub herm: Vec<ElementJson>,
    #[serde(default)]
    pub skew: Vec<QuatJson>,
}

impl MixedJson {
    pub fn from_mixed(x: &MixedElement) -> Self {
        MixedJson {
            scalar: FormJson::from_form(x.scalar()),
            herm: x
                .herm()
                .entries()
                .iter()
                .map(ElementJson::from_element)
                .collect(),
            skew: x.skew().entries().iter().map(QuatJson::from_pure).collect(),
        }
    }

    pub fn to_mixed(&self, algebra: &Arc<QuaternionAlgebra>) -> Result<MixedElement> {
        let field = algebra.field();
        let scalar = self.scalar.to_form(field)?;
        let herm = HermitianDiagonal::new(
            algebra,
            self.herm
                .iter()
                .map(|e| e.to_element(field))
                .collect::<Result<Vec<_>>>()?,
        )?;
        let skew = SkewHermitianDiagonal::new(
            algebra,
            self.skew
                .iter()
                .map(|z| z.to_pure(algebra))
                .collect::<Result<Vec<_>>>()?,
        )?;
        MixedElement::new(algebra, scalar, herm, skew)
    }
}

/// Polarization labels keyed by ordering index (as strings, per the JSON
/// object model).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizationJson {
    pub labels: BTreeMap<String, i8>,
}

impl PolarizationJson {
    pub fn from_polarization(p: &PolarizationMap) -> Self {
        PolarizationJson {
            labels: p
                .labels()
                .iter()
                .map(|(&i, &v)| (i.to_string(), v))
                .collect(),
        }
    }

    pub fn to_polarization(&self) -> Result<PolarizationMap> {
        let mut labels = BTreeMap::new();
        for (k, &v) in &self.labels {
            let idx: usize = k.parse().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("bad ordering index '{k}'"),
            })?;
            labels.insert(idx, v);
        }
        PolarizationMap::new(labels)
    }
}

/// Serializes any of the report types deterministically.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::rational::rat;

    #[test]
    fn poly_roundtrip() {
        let p = parse_polynomial("t^2-2").unwrap();
        let j = PolyJson::from_polynomial(&p);
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(text, r#"{"poly":[[-2,1],[0,1],[1,1]]}"#);
        let back: PolyJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_polynomial().unwrap(), p);
    }

    #[test]
    fn element_roundtrip_with_big_numbers() {
        let k = NumberField::new(parse_polynomial("t^2-2").unwrap()).unwrap();
        let huge = Rat::new(
            BigInt::from_str("123456789012345678901234567890").unwrap(),
            BigInt::from(7),
        );
        let e = FieldElement::new(&k, vec![huge, rat(1, 3)]);
        let j = ElementJson::from_element(&e);
        let text = serde_json::to_string(&j).unwrap();
        let back: ElementJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_element(&k).unwrap(), e);
    }

    #[test]
    fn mixed_roundtrip() {
        let q = NumberField::rationals();
        let alg = QuaternionAlgebra::from_ints(&q, -1, 3).unwrap();
        let x = MixedElement::new(
            &alg,
            QuadraticForm::from_ints(&q, &[1, -2]).unwrap(),
            HermitianDiagonal::from_ints(&alg, &[5]).unwrap(),
            SkewHermitianDiagonal::new(&alg, vec![PureQuaternion::from_ints(&alg, 1, 0, 0)])
                .unwrap(),
        )
        .unwrap();
        let j = MixedJson::from_mixed(&x);
        let text = serde_json::to_string(&j).unwrap();
        let back: MixedJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_mixed(&alg).unwrap(), x);
    }

    #[test]
    fn rejects_non_integer_numbers() {
        let r: std::result::Result<JsonInt, _> = serde_json::from_str("1.5");
        assert!(r.is_err());
    }

    #[test]
    fn pure_quaternion_schema_rejects_scalar_part() {
        let q = NumberField::rationals();
        let alg = QuaternionAlgebra::from_ints(&q, -1, -1).unwrap();
        let qj = QuatJson::from_quaternion(&Quaternion::one(&alg));
        assert!(matches!(qj.to_pure(&alg), Err(Error::NotPure)));
    }

    #[test]
    fn polarization_roundtrip() {
        let pol = PolarizationMap::new(BTreeMap::from([(0usize, 1i8), (1, -1)])).unwrap();
        let j = PolarizationJson::from_polarization(&pol);
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(text, r#"{"labels":{"0":1,"1":-1}}"#);
        let back: PolarizationJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_polarization().unwrap(), pol);
    }
}
