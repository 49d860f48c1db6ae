pub mod form;
pub mod jet;
pub mod quadrature;

pub use form::{lie_vf, Form, FiberMap, FiberProduct, Term, VectorField};
pub use jet::Jet;
pub use quadrature::{PointSet, SphereQuadrature};
