pub mod cyclotomic;
pub mod error;
pub mod genring;
pub mod group;
pub mod lr;
pub mod partition;
pub mod stability;
pub mod symfunc;
pub mod symmetric;
pub mod wreath;
