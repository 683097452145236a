//! Wreath products `S_n(G) = G ≀ S_n` and their representation rings.

mod element;
mod families;
mod ring;

pub use crate::symmetric::sn_character;
pub use element::{all_elements, wreath_order, WreathClassLabel, WreathElement};
pub use families::{generator_family, Eps, EpsChoice, Flavor, Theorem};
pub use ring::{
    dimension, enumerate_irreps, filtration_degree, induce, irreducible_character, restrict, RepRing, RepRingElement,
    TensorElement, ENUMERATION_LIMIT,
};
