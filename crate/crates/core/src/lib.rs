//! Construction and verification of cyclic curves `y^n = f(x)` whose reduced
//! automorphism group is a prescribed finite subgroup of PGL2.

pub mod field;
pub mod poly;
pub mod moebius;
pub mod report;
pub mod invariants;
pub mod loci;
pub mod equations;
