use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::PrimeField;
use super::order::MonomialOrder;
use crate::error::{Error, Result};

/// Everything polynomials of one computation share: the base field, the
/// variable names (in order `X_0 > X_1 > ...`), the active monomial order,
/// and the seed behind every randomized choice.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct RingContext {
    field: PrimeField,
    names: Vec<String>,
    order: MonomialOrder,
    seed: u64,
}

/// Cheaply clonable handle to a [`RingContext`].
#[derive(Clone)]
pub struct Ring(Arc<RingContext>);

impl Ring {
    pub fn new(
        characteristic: u64,
        names: Vec<String>,
        order: MonomialOrder,
        seed: u64,
    ) -> Result<Ring> {
        let field = PrimeField::new(characteristic)?;
        if names.is_empty() {
            return Err(Error::usage("a ring needs at least one variable"));
        }
        if names.len() > 63 {
            return Err(Error::usage("at most 63 variables are supported"));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::usage(format!("duplicate variable name '{a}'")));
            }
        }
        if let MonomialOrder::Elimination { block } = order {
            if block > names.len() {
                return Err(Error::usage("elimination block larger than the ring"));
            }
        }
        Ok(Ring(Arc::new(RingContext {
            field,
            names,
            order,
            seed,
        })))
    }

    /// `k[x_0..x_{n}]` with default characteristic, deg-rev-lex and seed 0.
    pub fn with_vars(names: &[&str]) -> Ring {
        Ring::new(
            super::field::DEFAULT_CHARACTERISTIC as u64,
            names.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::DegRevLex,
            0,
        )
        .expect("valid default ring")
    }

    /// `k[x0..x{count-1}]`.
    pub fn numbered(count: usize) -> Ring {
        let names: Vec<String> = (0..count).map(|i| format!("x{i}")).collect();
        Ring::new(
            super::field::DEFAULT_CHARACTERISTIC as u64,
            names,
            MonomialOrder::DegRevLex,
            0,
        )
        .expect("valid default ring")
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.0.field
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.field.characteristic()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.names.len()
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    #[inline]
    pub fn seed(&self) -> u64 {
        self.0.seed
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        Ring::new(
            self.characteristic() as u64,
            self.0.names.clone(),
            order,
            self.0.seed,
        )
        .expect("order valid for existing ring")
    }

    pub fn with_seed(&self, seed: u64) -> Ring {
        Ring(Arc::new(RingContext {
            field: self.0.field,
            names: self.0.names.clone(),
            order: self.0.order,
            seed,
        }))
    }

    /// A ring with extra variables prepended and appended.
    pub fn extended(&self, prepend: &[&str], append: &[&str], order: MonomialOrder) -> Ring {
        let fresh = |base: &str| {
            let mut name = base.to_string();
            while self.var_index(&name).is_some() {
                name.push('_');
            }
            name
        };
        let mut names: Vec<String> = prepend.iter().map(|s| fresh(s)).collect();
        names.extend(self.0.names.iter().cloned());
        names.extend(append.iter().map(|s| fresh(s)));
        Ring::new(self.characteristic() as u64, names, order, self.0.seed)
            .expect("extension of a valid ring")
    }

    /// A deterministic random stream derived from the ring seed. Distinct
    /// `stream` labels give independent sequences.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.0.seed);
        rng.set_stream(stream);
        rng
    }

    pub fn same(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{}[{}] ({})",
            self.characteristic(),
            self.0.names.join(","),
            self.0.order
        )
    }
}

/// Stream labels for [`Ring::rng`], one per randomized procedure.
pub mod streams {
    pub const COORDINATE_CHANGE: u64 = 1;
    pub const REGULAR_SEQUENCE: u64 = 2;
    pub const KERNEL_ELEMENT: u64 = 3;
    pub const KOSZUL_PAIR: u64 = 4;
    pub const LINEAR_FORM: u64 = 5;
    pub const TEST_DATA: u64 = 99;
}
