pub mod group;
pub mod linalg;
pub mod module;
pub mod cohomology;
pub mod sha;
pub mod presentation;
pub mod oracle;
pub mod document;
