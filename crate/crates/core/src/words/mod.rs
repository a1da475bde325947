//! Finite, eventually periodic and bi-infinite words.

pub mod balance;
pub mod christoffel;
pub mod morphism;
pub mod recode;
pub mod symmetry;
pub mod word;

pub use balance::{
    forbidden_scan, is_balanced, is_balanced_periodic, BalanceReport, ForbiddenHit, ForbiddenKind,
};
pub use christoffel::{
    central_word, characteristic_word, christoffel, christoffel_class, is_conjugate,
    mechanical_word,
};
pub use morphism::{fibonacci, fixed_point, thue_morse};
pub use recode::{phi, phi_inverse, phi_one_sided, Recoded};
pub use symmetry::{iota_bi, iota_periodic, iota_window, IotaReport};
pub use word::{
    binary_string, parse_binary, parse_digits, primitive_root, BiEpWord, Digit, EpWord,
};
