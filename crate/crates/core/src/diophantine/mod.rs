//! Exact arithmetic on slopes: continued fractions, convergents, Liouville
//! witnesses, and small-divisor gap scans.

pub mod cf;
pub mod gap;
pub mod slope;
pub mod witness;

pub use cf::{cf_expand, convergents, Convergent};
pub use gap::{estimate_exponent, gap, gap_via_convergents, ExponentFit, SmallDivisorGap};
pub use slope::Slope;
pub use witness::{certify_family_pair, find_family_pairs, find_witness_definition, ApproximationWitness, BoundForm, WitnessSearch};
