//! Performance analysis of dual-hop mixed RF-VLC relaying.
//!
//! An outdoor RF backhaul of `K` base stations reaches a relay; the base
//! station is chosen from outdated channel estimates (correlation `rho`)
//! over i.i.d. Nakagami-m fading. The relay forwards over an indoor
//! line-of-sight VLC hop to a user placed uniformly under a Lambertian LED
//! lamp. The relay either amplifies with a fixed gain (AF) or decodes and
//! forwards (DF).
//!
//! Modules:
//! - [`specfun`]: incomplete gamma/beta, generalized exponential integral,
//!   the `G^{2,1}_{2,2}` Meijer function, modified Bessel `I_nu`.
//! - [`rf_link`]: statistics of the selected RF link.
//! - [`vlc_link`]: Lambertian LoS channel and user-SNR distribution.
//! - [`perf`]: exact and asymptotic outage probability and average BER.
//! - [`mcsim`]: Monte Carlo simulator used to cross-check [`perf`].
//!
//! All quantities are linear (not dB) throughout the library.

pub mod error;
pub mod mcsim;
pub mod perf;
pub mod rf_link;
pub mod specfun;
pub mod vlc_link;

pub use error::{Error, Result};
pub use mcsim::{Estimate, SimConfig};
pub use perf::{AsymptoticRegime, Link, Modulation, PerfPoint, RelayScheme};
pub use rf_link::{RfConfig, TermExpansion};
pub use vlc_link::{VlcConfig, VlcDerived};
