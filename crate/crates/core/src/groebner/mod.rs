//! Gröbner bases, ideals, and the operations built on them.

mod basis;
mod colon;
mod ideal;

pub use basis::{buchberger, buchberger_bounded, normal_form, GroebnerBasis};
pub use colon::{
    colon_by_variable, colon_ideal, colon_ideal_module, colon_irrelevant, colon_via_t_trick,
    intersection, is_saturated, saturate_irrelevant, TTrickColon,
};
pub use ideal::Ideal;
