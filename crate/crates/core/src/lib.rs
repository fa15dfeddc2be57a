//! Inductive SLOCC classification of pure states on two to four qubits.
//!
//! Three-qubit states are classified by polynomial criteria ([`tri`]). A
//! four-qubit state is split on a distinguished qubit as
//! `|0>|phi0> + |1>|phi1>`; the entanglement types realised on the pencil
//! `x*phi0 + y*phi1` ([`pencil`]) then select one of ten superclasses
//! ([`quad`]). Exact arithmetic over the Gaussian rationals is available
//! for inputs with rational amplitudes ([`exact`]).
//!
//! Amplitude index `i` is the bit string `q1 q2 ... qn` with qubit 1 most
//! significant. States are never normalised implicitly.

pub mod canonical;
pub mod error;
pub mod exact;
pub mod fuzz;
pub mod io;
pub mod oracle;
pub mod pencil;
pub mod qstate;
pub mod quad;
pub mod scalar;
pub mod tri;

pub use error::{Error, Result};
pub use pencil::{analyze_span, quartic, quartic_roots, ProjectivePoint, QuarticForm, SpanProfile};
pub use qstate::{apply_slocc, decompose, LocalOperator, PureState, SloccOp};
pub use quad::{classify4, classify4_all, QuadClass, QuadTag};
pub use tri::{classify3, TriClass};

/// Default relative tolerance.
pub const DEFAULT_EPS: f64 = 1e-9;
