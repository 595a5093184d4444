pub mod hyperboloid;
pub mod quadrature;
pub mod record;
pub mod rootlattice;
pub mod transform;
pub mod verify;
