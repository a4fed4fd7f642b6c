//! Scalar abstractions.
//!
//! Probabilities only need ring operations, so they are generic over
//! [`Probability`], which covers `f32`, `f64` and exact rationals
//! ([`num_rational::BigRational`]). Quantities that need `exp` or `sqrt`
//! (distances, standard errors) use [`Real`].

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive, Num, ToPrimitive};

pub trait Probability: Num + Clone + PartialOrd + ToPrimitive + Debug + Send + Sync {}

impl<T> Probability for T where T: Num + Clone + PartialOrd + ToPrimitive + Debug + Send + Sync {}

pub trait Real: Float + FromPrimitive + Debug + Send + Sync {}

impl<T> Real for T where T: Float + FromPrimitive + Debug + Send + Sync {}
