pub mod oracle;
pub mod sweep;
