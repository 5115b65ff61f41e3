pub mod acceptance;
pub mod adhm;
pub mod corpus;
pub mod exact;
pub mod filtration;
pub mod moduli;
pub mod report;
pub mod torus;
pub mod young;
