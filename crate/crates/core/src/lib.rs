pub mod ellis;
pub mod oracle;
pub mod semigroup;
pub mod substitution;
