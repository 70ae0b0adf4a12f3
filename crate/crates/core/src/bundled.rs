//! Example networks shipped with the crate.

use crate::netmodel::{mode_for_path, parse_network, NetError, ReactionNetwork};

/// `(file name, contents)` of every bundled network.
pub const NETWORKS: &[(&str, &str)] = &[
    ("eq31.crn", include_str!("../networks/eq31.crn")),
    ("lotka.crn", include_str!("../networks/lotka.crn")),
    ("thomas.crn", include_str!("../networks/thomas.crn")),
    ("ssystem.gcrn", include_str!("../networks/ssystem.gcrn")),
    ("gac-a.crn", include_str!("../networks/gac-a.crn")),
    ("gac-b.crn", include_str!("../networks/gac-b.crn")),
];

/// Looks a bundled network up by file name, with or without the extension.
pub fn source(name: &str) -> Option<(&'static str, &'static str)> {
    let base = name.rsplit('/').next().unwrap_or(name);
    NETWORKS
        .iter()
        .copied()
        .find(|(file, _)| *file == base || file.split('.').next() == Some(base))
}

pub fn load(name: &str) -> Option<Result<ReactionNetwork, NetError>> {
    source(name).map(|(file, text)| parse_network(text, mode_for_path(file)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netmodel::Mode;

    #[test]
    fn all_bundled_parse() {
        for (file, _) in NETWORKS {
            let net = load(file).unwrap().unwrap();
            assert_eq!(net.mode() == Mode::Generalized, file.ends_with(".gcrn"));
        }
        assert_eq!(load("gac-b").unwrap().unwrap().dim(), 3);
        assert_eq!(load("examples/eq31.crn").unwrap().unwrap().reactions().len(), 6);
        assert!(load("nope").is_none());
    }
}
