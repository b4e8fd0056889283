//! Parameter bundles reproducing the six figure scenarios.
//!
//! Couplings, mixedness and oscillator preparations follow the figure
//! captions. Time ranges are not given there; every preset uses `[0, 30]` with
//! 3001 points except the long-time preset 3, which uses `[0, 100]` with
//! 10001 points. Where a caption leaves `p` unspecified (qubit2 decoupled) it
//! is set to 0; the entropy does not depend on it in that case.

use crate::scenario::{
    ClosedFormSpec, CouplingSpec, EnvironmentSpec, GridSpec, OracleSpec, OscillatorSpec, Scenario,
};

pub const PRESET_IDS: [&str; 8] = ["1", "2a", "2b", "2c", "3", "4", "5", "6"];

fn scenario(
    oscillator: OscillatorSpec,
    p: f64,
    lambda2: f64,
    t_end: f64,
    points: usize,
) -> Scenario {
    Scenario {
        oscillator,
        environment: EnvironmentSpec { p },
        couplings: CouplingSpec {
            lambda1: 1.0,
            lambda2,
        },
        grid: GridSpec {
            t_start: 0.0,
            t_end,
            points,
        },
        oracle: OracleSpec::default(),
        closed_form: ClosedFormSpec::default(),
    }
}

/// Scenario for one preset id (`"1"`, `"2a"`..`"2c"`, `"3"`..`"6"`).
pub fn preset(id: &str) -> Option<Scenario> {
    use OscillatorSpec::*;
    let s = match id {
        "1" => scenario(Mixture01 { f: 0.5 }, 0.0, 0.0, 30.0, 3001),
        "2a" => scenario(Number { n: 1 }, 0.0, 0.1, 30.0, 3001),
        "2b" => scenario(Number { n: 1 }, 0.1, 0.1, 30.0, 3001),
        "2c" => scenario(Number { n: 1 }, 0.5, 0.1, 30.0, 3001),
        "3" => scenario(Number { n: 1 }, 0.5, 0.1, 100.0, 10001),
        "4" => scenario(Binomial { m: 100, q: 0.1 }, 0.0, 0.0, 30.0, 3001),
        "5" => scenario(Binomial { m: 7, q: 0.85 }, 0.0, 0.0, 30.0, 3001),
        "6" => scenario(Binomial { m: 11, q: 0.95 }, 0.5, 0.1, 30.0, 3001),
        _ => return None,
    };
    Some(s)
}

/// Presets making up figure `id` (three panels for figure 2, one otherwise).
pub fn figure_presets(id: u8) -> Option<Vec<(&'static str, Scenario)>> {
    let names: &[&'static str] = match id {
        1 => &["1"],
        2 => &["2a", "2b", "2c"],
        3 => &["3"],
        4 => &["4"],
        5 => &["5"],
        6 => &["6"],
        _ => return None,
    };
    Some(
        names
            .iter()
            .map(|n| (*n, preset(n).expect("known preset")))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::Model;

    #[test]
    fn captions() {
        let s = preset("2c").unwrap();
        assert_eq!(s.oscillator, OscillatorSpec::Number { n: 1 });
        assert_eq!(
            (s.environment.p, s.couplings.lambda1, s.couplings.lambda2),
            (0.5, 1.0, 0.1)
        );

        let s = preset("4").unwrap();
        assert_eq!(s.oscillator, OscillatorSpec::Binomial { m: 100, q: 0.1 });
        assert_eq!((s.couplings.lambda1, s.couplings.lambda2), (1.0, 0.0));

        let s = preset("5").unwrap();
        assert_eq!(s.oscillator, OscillatorSpec::Binomial { m: 7, q: 0.85 });
        assert_eq!(s.couplings.lambda2, 0.0);

        let s = preset("6").unwrap();
        assert_eq!(s.oscillator, OscillatorSpec::Binomial { m: 11, q: 0.95 });
        assert_eq!((s.environment.p, s.couplings.lambda2), (0.5, 0.1));

        let s = preset("3").unwrap();
        let mut c = preset("2c").unwrap();
        assert!(s.grid.t_end > c.grid.t_end);
        c.grid = s.grid;
        assert_eq!(s, c);
    }

    #[test]
    fn figure_one_is_the_mixture() {
        let s = preset("1").unwrap();
        assert!(matches!(s.resolve().unwrap(), Model::Mixture01 { f, .. } if f == 0.5));
    }

    #[test]
    fn every_preset_resolves() {
        for id in PRESET_IDS {
            assert!(preset(id).unwrap().resolve().is_ok(), "{id}");
        }
        assert!(preset("7").is_none());
        assert_eq!(figure_presets(2).unwrap().len(), 3);
        assert!(figure_presets(0).is_none());
        assert!(figure_presets(7).is_none());
    }
}
