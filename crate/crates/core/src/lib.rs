pub mod algebra;
pub mod expr;
pub mod rewrite;
pub mod classify;
pub mod series;
pub mod norms;
pub mod experiments;
