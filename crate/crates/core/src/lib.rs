//! Craig-Lyndon interpolation from clausal tableaux, with hyper conversion
//! and range-restriction / Horn preservation.

pub mod logic;
pub mod symbol;
pub mod syntax;
pub mod normalize;
pub mod tableau;
pub mod hyper;
pub mod restriction;
pub mod interpolate;
pub mod proof;
pub mod models;
pub mod gen;
pub mod batch;
pub mod stats;
