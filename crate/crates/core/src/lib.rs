pub mod clifford;
pub mod grouprep;
pub mod jacobi;
pub mod matrix;
pub mod partitions;
pub mod qchevalley;
pub mod sampling;
pub mod scalars;
pub mod superpotential;
pub mod weyl;
