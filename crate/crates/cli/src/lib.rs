//! Command-line front end: catalogs, classification, rigidity and Schur
//! verdicts, table regeneration and partition conversions, rendered as
//! JSON, CSV or markdown.

pub mod cache;
pub mod commands;
pub mod config;
pub mod golden;
pub mod parse;
pub mod report;
pub mod tables;
