pub mod asymptotics;
pub mod commands;
pub mod cone;
pub mod known;
pub mod linalg;
pub mod nullity;
pub mod probe;
pub mod ratio;
pub mod reproduce;
pub mod subset;
