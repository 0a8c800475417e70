pub mod algebra;
pub mod constructions;
pub mod corpus;
pub mod character;
pub mod fusion;
pub mod spec;
pub mod group;
pub mod stable;
pub mod reproduce;
pub mod verify;
