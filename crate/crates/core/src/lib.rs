//! Exact computation of Khovanov homology, Lee homology and the Rasmussen
//! invariant, and grid knot Floer homology, from planar diagram codes.

pub mod algebra;
pub mod diagram;
pub mod gridhfk;
pub mod khovanov;
pub mod lee;
pub mod skein;
