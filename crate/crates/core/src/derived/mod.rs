//! Semifree resolutions, derived Hom and tensor on finite windows, and the
//! same numbers read off sppj, ifij and spft resolutions.

mod semifree;
mod tables;

pub use semifree::{semifree, SemifreeResolution, SemifreeSummary};
pub use tables::{
    concentration_scan, heart_battery, hom_table_via_ifij, hom_table_via_sppj, ifij_for_hom, ltensor, rhom,
    slot_arithmetic_holds, sppj_for_hom, spft_for_tor, tor_table_via_spft, ConcentrationReport, HomTable, Route,
    Table, TorTable,
};

#[cfg(test)]
mod tests;
