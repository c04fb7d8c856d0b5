//! Elliptic surfaces in short Weierstrass form over K(t): invariants, Tate
//! fiber classification, generic-fiber point arithmetic, section intersection
//! numbers, Neron-Severi Gram assembly and pushforward isometries, the
//! quartic-to-Weierstrass transformation, Moebius machinery and exact
//! function-field identities.

pub mod ffield;
pub mod intersect;
pub mod model;
pub mod quartic;
pub mod section;
pub mod tate;

pub use intersect::{
    build_pushforward_matrix, component_of_section_at, ns_class_of_divisor, ns_gram_assemble,
    section_intersections, section_zero_intersection, Component, DivisorSpec, NSBasisSpec,
    PushforwardSpec,
};
pub use model::{model_invariants, ModelInvariants, Place, WeierstrassModel};
pub use quartic::{
    admissible_moebius, base_change, generic_fiber_automorphisms, quartic_to_weierstrass,
    weierstrass_isomorphism, MoebiusMap, QuarticToWeierstrass, WeierstrassScaling, P1,
};
pub use section::{
    is_on_curve, point_add, point_neg, section_eps, section_from_polys, translation_by,
    two_torsion, SurfaceSection,
};
pub use tate::{
    fiber_configuration, trivial_lattice_and_mw, FiberConfig, KodairaType, LocalFiberData,
    MordellWeil, RootLabel,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    ZeroDiscriminant,
    NonMinimalModel,
    NotOnCurve,
    UnsupportedSectionShape,
    IdenticalSections,
    UnsupportedFiberType,
    PoleAtPlace,
    SingularGram,
    NonIntegralClass,
    IsometryCheckFailed,
    SingularQuartic,
    PointNotOnCurve,
    TooFewCriticalValues,
    UnsupportedForm,
    DivisionByZeroElement,
    DegreeBoundExceeded,
    UnsupportedCharacteristic,
    PlaceNotInBasis,
    Lattice(qlattice::Error),
    Core(exactcore::Error),
}

impl From<exactcore::Error> for Error {
    fn from(e: exactcore::Error) -> Self {
        Error::Core(e)
    }
}

impl From<qlattice::Error> for Error {
    fn from(e: qlattice::Error) -> Self {
        Error::Lattice(e)
    }
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::ZeroDiscriminant => write!(f, "discriminant vanishes identically"),
            Error::NonMinimalModel => write!(f, "model is not minimal at a place"),
            Error::NotOnCurve => write!(f, "point does not satisfy the Weierstrass equation"),
            Error::UnsupportedSectionShape => {
                write!(f, "section coordinates outside the supported polynomial shape")
            }
            Error::IdenticalSections => write!(f, "sections coincide"),
            Error::UnsupportedFiberType => write!(f, "component test limited to I1, I2, III"),
            Error::PoleAtPlace => write!(f, "section has a pole at the place"),
            Error::SingularGram => write!(f, "gram matrix is singular"),
            Error::NonIntegralClass => write!(f, "divisor class has disallowed denominators"),
            Error::IsometryCheckFailed => write!(f, "pushforward matrix is not an isometry"),
            Error::SingularQuartic => write!(f, "quartic is not squarefree"),
            Error::PointNotOnCurve => write!(f, "point does not lie on the quartic"),
            Error::TooFewCriticalValues => write!(f, "need at least 3 critical values"),
            Error::UnsupportedForm => write!(f, "operation requires a short-form model"),
            Error::DivisionByZeroElement => write!(f, "division by a zero function-field element"),
            Error::DegreeBoundExceeded => write!(f, "coefficient degree exceeds the K3 bounds"),
            Error::UnsupportedCharacteristic => {
                write!(f, "residue characteristic 2 or 3 not supported")
            }
            Error::PlaceNotInBasis => write!(f, "image place missing from the basis"),
            Error::Lattice(e) => write!(f, "{e}"),
            Error::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
