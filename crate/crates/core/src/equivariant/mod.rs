//! Free involutions, quotients, the double-cover class and mod-2 degrees.

mod certificate;
mod degree;
mod involution;

pub use certificate::{verify_essential_cycle, Check, EssentialCycleCertificate, TargetMap, VerificationReport};
pub use degree::{deg2, gauss_deg2, is_mod2_cycle, is_pseudomanifold, SphereMap};
pub use involution::{
    check_involution, cover_from_class, double_cover_class, fixed_simplices, parse_involution, quotient_complex,
    Involution, QuotientPresentation,
};
