//! Gröbner bases for inhomogeneous submodules of graded modules over graded
//! rings.
//!
//! * [`graded`]: degrees, graded elements, shifted free modules and the
//!   [`HomogeneousKernel`](graded::HomogeneousKernel) contract.
//! * [`poly`]: rational polynomial rings graded by total degree, the concrete
//!   kernel.
//! * [`engine`]: syzygy probes, generalized division, the Buchberger loop,
//!   relation modules, presentations and quotients.
//! * [`oracle`]: brute-force truncated verification by exact linear algebra.
//! * [`cli`]: problem files, command dispatch and output formats.

pub mod cli;
pub mod engine;
pub mod graded;
pub mod oracle;
pub mod poly;
