pub mod exactfield;
pub mod symbolalg;
pub mod nilgroup;
pub mod heisenspec;
pub mod freecert;
pub mod mnseries;
pub mod battery;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
