pub mod analysis;
pub mod cli;
pub mod downgrade;
pub mod jonq;
pub mod oracle;
pub mod poly;
