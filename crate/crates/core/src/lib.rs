pub mod bernoulli;
pub mod complex;
pub mod diffpoly;
pub mod mp;
pub mod specfun;
pub mod asym;
pub mod decomp;
pub mod voronin;
pub mod cli;
