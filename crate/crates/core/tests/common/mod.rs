#![allow(dead_code)]

pub mod fox;
