//! Rule-based Hindi→English shallow-transfer translation.
//!
//! The pipeline runs: [`text`] normalization and tokenization, [`morph`]
//! tagging against a [`lexicon`], CYK parsing ([`cyk`]) over a CNF
//! [`grammar`], structural [`transfer`], and English [`generate`]ion, with
//! [`translit`]eration for out-of-vocabulary words. [`engine`] wires the
//! stages together.
//!
//! The crate is `no_std` and needs only `alloc`. Every resource format is
//! parsed from in-memory text; file access lives in the companion crate.

#![no_std]

extern crate alloc;

pub mod cyk;
pub mod engine;
pub mod generate;
pub mod grammar;
pub mod lexicon;
pub mod morph;
pub mod tags;
pub mod text;
pub mod transfer;
pub mod translit;

pub use tags::{Number, PosTag};
