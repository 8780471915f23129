pub mod arith;
pub mod classify;
pub mod corpus;
pub mod linalg;
pub mod phimod;
