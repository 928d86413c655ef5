pub mod exact;
pub mod group;
pub mod lattice;
pub mod monodromy;
pub mod poly;
pub mod skew;
pub mod checks;
pub mod cherednik;
