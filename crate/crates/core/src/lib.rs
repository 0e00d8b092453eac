//! The transmuted Lindley-geometric (TLG) lifetime distribution.
//!
//! TLG applies the quadratic rank transmutation `u ↦ u + λu(1 − u)` to the
//! Lindley-geometric law, giving the three-parameter family `(θ, p, λ)`
//! with cdf `G·(1 + λ − λG)` where `G` is the LG cdf. The crate provides
//!
//! - closed-form densities, cdfs, survival, hazard and quantiles
//!   ([`dist`]), and a generic transmutation combinator ([`transmute`]);
//! - random variates ([`sampling`]);
//! - series moments and the moment generating function ([`moments`]);
//! - order statistic densities and moments ([`order_stats`]);
//! - maximum likelihood and least-squares fitting with observed-information
//!   standard errors ([`estimation`]);
//! - K-S, AIC and AICC model comparison ([`model_select`]).
//!
//! ```
//! use tlg_core::dist::{tlg_cdf, TlgParams};
//!
//! let params = TlgParams::new(0.171, 0.657, -0.954).unwrap();
//! assert_eq!(tlg_cdf(&params, 0.0), 0.0);
//! assert!(tlg_cdf(&params, 10.0) > 0.5);
//! ```

pub mod curves;
pub mod data;
pub mod dist;
pub mod error;
pub mod estimation;
pub mod model_select;
pub mod moments;
pub mod optim;
pub mod order_stats;
pub mod quadrature;
pub mod sampling;
pub mod transmute;

pub use data::Dataset;
pub use dist::{LgParams, LindleyParams, TlgParams};
pub use error::{Error, Result};
pub use estimation::{FitResult, Method, Model};
pub use moments::{MomentSet, SeriesConfig};
pub use optim::OptimizerOptions;
pub use order_stats::OrderSpec;
pub use sampling::RandomSource;
