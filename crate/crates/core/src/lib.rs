//! Finite planes, exact minimum affine blocking sets, and executable
//! audits of the counting arguments that bound them.

pub mod algebra;
pub mod planes;
pub mod blocking;
pub mod knots;
pub mod oracle;
