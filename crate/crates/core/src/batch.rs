//! Batch evaluation over many elements and orderings. Every cell of a
//! signature table is an independent pure computation, so these loops are
//! data-parallel; the `par_*` variants fan out with rayon when the
//! `parallel` feature is enabled.

use std::collections::BTreeMap;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::Result;
use crate::mixed::MixedElement;
use crate::signpol::{PolarizationMap, SignatureContext, SignaturePair};

/// Signature pairs for each element at every ordering, rows in input
/// order, columns in ordering order.
pub fn signature_table(
    ctx: &SignatureContext,
    elements: &[MixedElement],
) -> Result<Vec<Vec<SignaturePair>>> {
    elements.iter().map(|x| ctx.pair_row(x)).collect()
}

/// Total signatures of each element under a polarization covering X(K).
pub fn total_signature_table(
    ctx: &SignatureContext,
    elements: &[MixedElement],
    pol: &PolarizationMap,
) -> Result<Vec<BTreeMap<usize, i64>>> {
    elements.iter().map(|x| ctx.total_signature(x, pol)).collect()
}

#[cfg(feature = "parallel")]
pub fn par_signature_table(
    ctx: &SignatureContext,
    elements: &[MixedElement],
) -> Result<Vec<Vec<SignaturePair>>> {
    elements.par_iter().map(|x| ctx.pair_row(x)).collect()
}

#[cfg(feature = "parallel")]
pub fn par_total_signature_table(
    ctx: &SignatureContext,
    elements: &[MixedElement],
    pol: &PolarizationMap,
) -> Result<Vec<BTreeMap<usize, i64>>> {
    elements
        .par_iter()
        .map(|x| ctx.total_signature(x, pol))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixed::{HermitianDiagonal, SkewHermitianDiagonal};
    use crate::numberfield::{FieldElement, NumberField};
    use crate::parse::parse_polynomial;
    use crate::quat::{PureQuaternion, QuaternionAlgebra};
    use crate::signpol::DEFAULT_SEARCH_BUDGET;
    use crate::witt::QuadraticForm;

    fn sample() -> (SignatureContext, Vec<MixedElement>) {
        let k = NumberField::new(parse_polynomial("t^2-2").unwrap()).unwrap();
        let theta = FieldElement::generator(&k);
        let alg = QuaternionAlgebra::new(&k, FieldElement::from_int(&k, -1), theta).unwrap();
        let mut ctx = SignatureContext::new(&alg).unwrap();
        ctx.ensure_reference(DEFAULT_SEARCH_BUDGET).unwrap();
        let elements = vec![
            MixedElement::from_scalar(&alg, QuadraticForm::from_ints(&k, &[1, 1]).unwrap())
                .unwrap(),
            MixedElement::from_herm(HermitianDiagonal::from_ints(&alg, &[1]).unwrap()),
            MixedElement::from_skew(
                SkewHermitianDiagonal::new(&alg, vec![PureQuaternion::from_ints(&alg, 1, 0, 0)])
                    .unwrap(),
            ),
        ];
        (ctx, elements)
    }

    #[test]
    fn table_shape_and_values() {
        let (ctx, elements) = sample();
        let table = signature_table(&ctx, &elements).unwrap();
        assert_eq!(table.len(), 3);
        assert_eq!(table[0].len(), 2);
        assert_eq!(table[0][0], SignaturePair { plus: 2, minus: 2 });
        // hermitian unit detected only at the nonsplit ordering (index 0)
        assert_eq!(table[1][0], SignaturePair { plus: 2, minus: -2 });
        assert_eq!(table[1][1], SignaturePair { plus: 0, minus: 0 });
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_matches_sequential() {
        let (ctx, elements) = sample();
        assert_eq!(
            signature_table(&ctx, &elements).unwrap(),
            par_signature_table(&ctx, &elements).unwrap()
        );
        let pol = PolarizationMap::constant(0..2, 1);
        assert_eq!(
            total_signature_table(&ctx, &elements, &pol).unwrap(),
            par_total_signature_table(&ctx, &elements, &pol).unwrap()
        );
    }
}
