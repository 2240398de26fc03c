//! Exact computations in the mixed Witt ring of a quaternion algebra with
//! its canonical involution over a real number field: orderings and
//! signatures, the two signature maps per ordering, the characteristic-0
//! prime spectrum as a double cover of the ordering space, and
//! polarizations built from principal sets and reference forms.

pub mod batch;
pub mod brauer;
pub mod error;
pub mod json;
pub mod mixed;
pub mod numberfield;
pub mod parse;
pub mod poly;
pub mod quat;
pub mod rational;
pub mod signpol;
pub mod witt;

pub use brauer::{BrauerClass2, QuaternionSymbol};
pub use error::{Error, Result};
pub use mixed::{HermitianDiagonal, MixedElement, SkewHermitianDiagonal, SplitMixedElement};
pub use numberfield::{FieldElement, NumberField, Ordering};
pub use poly::Polynomial;
pub use quat::{PureQuaternion, Quaternion, QuaternionAlgebra};
pub use rational::Rat;
pub use signpol::{
    OrderingPartition, PolarizationMap, ReferenceForm, SignatureContext, SignaturePair,
    SpectrumLabel, SpectrumReport,
};
pub use witt::{Place, QuadraticForm, WeakEquivalence};
