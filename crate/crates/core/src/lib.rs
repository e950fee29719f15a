pub mod algebra;
pub mod certificate;
pub mod cli;
pub mod cyclotomic;
pub mod factor;
pub mod oracle;
pub mod sieve;
pub mod structure;
