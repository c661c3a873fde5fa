//! Relative convolution operators induced by Lie algebras, sampled on grids.

pub mod bch;
pub mod coherent;
pub mod dirac;
pub mod error;
pub mod grid;
pub mod lie;
pub mod linop;
pub mod quantize;
pub mod relconv;
pub mod weyl;

pub use bch::{bch_compose, group_inverse, BchResult, BchSeries};
pub use coherent::{CoherentSystem, GroupDescriptor, Haar, Representation};
pub use dirac::{clifford_generators, dirac_mass_synthesize, dirac_synthesize, CliffordRep};
pub use error::{Error, Result};
pub use grid::{fourier, Axis, Grid, GridFunction};
pub use lie::{quotient, Ideal, LieAlgebra, Quotient};
pub use linop::{flow, frame_operator, FrameSpec, LinOp};
pub use quantize::{close_under_bracket, poisson_bracket, realize, PolyObservable};
pub use relconv::{assemble, compose_kernels, effective_decompose, push_automorphism, Assembly, Quadrature};
pub use weyl::{weyl_quantize, WeylOp};
