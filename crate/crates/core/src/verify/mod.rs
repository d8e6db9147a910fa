pub mod brute;
pub mod corpus;
pub mod criteria;
pub mod gen;
