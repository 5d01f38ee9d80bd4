#![allow(dead_code)]

pub mod braids;
pub mod oracle;
