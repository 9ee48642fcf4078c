#![allow(dead_code)]

pub mod codec;
pub mod formulas;
pub mod net;
pub mod signals;
