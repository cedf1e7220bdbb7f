pub mod exactalg;
pub mod weights;
pub mod tensorops;
pub mod relations;
pub mod fmatrix;
pub mod models;
pub mod cli;
