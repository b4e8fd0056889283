//! Brute-force reference dynamics on the truncated `qubit1 ⊗ qubit2 ⊗
//! oscillator` space.
//!
//! Nothing here uses the closed forms: the full Hamiltonian is assembled from
//! Kronecker products of ladder and Pauli matrices, diagonalized once, and the
//! initial density matrix is propagated exactly. The only approximation is the
//! oscillator truncation, and because the Hamiltonian conserves the total
//! excitation number it is exact as long as `n_max` leaves two spare levels
//! above the highest populated Fock state.
//!
//! Basis ordering: qubit1 slowest, oscillator fastest. Qubit index 0 is the
//! excited state, 1 the ground state, so
//! `index(q1, q2, n) = (2 q1 + q2)(n_max + 1) + n`.

use nalgebra::{DMatrix, DVector, Matrix2, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{TimeGrid, TimeSeries};
use crate::states::{number_state, Couplings, EnvironmentMixture, FockDistribution, SystemConfig};

pub const EXCITED: usize = 0;
pub const GROUND: usize = 1;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Truncation, common resonant frequency and couplings for the oracle.
/// `omega = 0` selects the interaction picture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub n_max: usize,
    pub omega: f64,
    pub couplings: Couplings,
}

impl OracleConfig {
    pub fn new(n_max: usize, omega: f64, couplings: Couplings) -> Self {
        Self {
            n_max,
            omega,
            couplings,
        }
    }

    /// Smallest exact truncation for `config`, in the interaction picture.
    pub fn for_config(config: &SystemConfig) -> Self {
        Self::new(
            required_n_max(config.oscillator.cutoff()),
            0.0,
            config.couplings,
        )
    }

    pub fn dim(&self) -> usize {
        4 * (self.n_max + 1)
    }

    pub fn index(&self, q1: usize, q2: usize, n: usize) -> usize {
        (2 * q1 + q2) * (self.n_max + 1) + n
    }

    fn require(&self, cutoff: usize) -> Result<()> {
        let required = required_n_max(cutoff);
        if self.n_max < required {
            Err(Error::TruncationTooSmall {
                n_max: self.n_max,
                required,
            })
        } else {
            Ok(())
        }
    }
}

/// Two levels above the highest populated Fock state.
pub fn required_n_max(cutoff: usize) -> usize {
    cutoff + 2
}

fn annihilation(levels: usize) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(levels, levels);
    for n in 1..levels {
        a[(n - 1, n)] = (n as f64).sqrt();
    }
    a
}

/// `|e><g|` with the excited state first.
fn raising() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0])
}

fn pauli_z() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0])
}

fn kron3(a: &DMatrix<f64>, b: &DMatrix<f64>, c: &DMatrix<f64>) -> DMatrix<f64> {
    a.kronecker(b).kronecker(c)
}

/// `ω a†a + (ω/2)(σ1z + σ2z) + Σ λi (a σi⁺ + a† σi⁻)` on the truncated space.
pub fn build_hamiltonian(cfg: &OracleConfig) -> Result<DMatrix<f64>> {
    if cfg.n_max < required_n_max(0) {
        return Err(Error::TruncationTooSmall {
            n_max: cfg.n_max,
            required: required_n_max(0),
        });
    }
    let levels = cfg.n_max + 1;
    let id2 = DMatrix::<f64>::identity(2, 2);
    let id_osc = DMatrix::<f64>::identity(levels, levels);
    let a = annihilation(levels);
    let ad = a.transpose();
    let sp = raising();
    let sm = sp.transpose();
    let sz = pauli_z();

    let free = kron3(&id2, &id2, &(&ad * &a)) * cfg.omega
        + (kron3(&sz, &id2, &id_osc) + kron3(&id2, &sz, &id_osc)) * (0.5 * cfg.omega);
    let q1 = (kron3(&sp, &id2, &a) + kron3(&sm, &id2, &ad)) * cfg.couplings.lambda1();
    let q2 = (kron3(&id2, &sp, &a) + kron3(&id2, &sm, &ad)) * cfg.couplings.lambda2();
    Ok(free + q1 + q2)
}

/// Total excitation number `a†a + (σ1z + 1)/2 + (σ2z + 1)/2`.
pub fn excitation_operator(cfg: &OracleConfig) -> DMatrix<f64> {
    let levels = cfg.n_max + 1;
    let id2 = DMatrix::<f64>::identity(2, 2);
    let id_osc = DMatrix::<f64>::identity(levels, levels);
    let a = annihilation(levels);
    let excited = (pauli_z() + &id2) * 0.5;
    kron3(&id2, &id2, &(a.transpose() * &a))
        + kron3(&excited, &id2, &id_osc)
        + kron3(&id2, &excited, &id_osc)
}

/// Dense density matrix in the documented basis ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    pub matrix: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn from_ensemble(ensemble: &Ensemble) -> Self {
        let dim = ensemble.dim();
        let mut matrix = DMatrix::from_element(dim, dim, ZERO);
        for (w, psi) in &ensemble.states {
            matrix += psi * psi.adjoint() * Complex64::new(*w, 0.0);
        }
        Self { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    pub fn hermiticity_error(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.matrix.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(|a, b| a.total_cmp(b));
        ev
    }

    /// Numerical rank: eigenvalues above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.eigenvalues().iter().filter(|e| **e > tol).count()
    }
}

/// A finite mixture of pure states `Σ w |ψ><ψ|`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    pub states: Vec<(f64, DVector<Complex64>)>,
}

impl Ensemble {
    pub fn dim(&self) -> usize {
        self.states.first().map_or(0, |(_, psi)| psi.len())
    }
}

/// Initial state for the oracle: qubit1 excited, the oscillator in a mixture
/// of real pure states, qubit2 in a diagonal mixture.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleInitial {
    pub oscillator: Vec<(f64, FockDistribution)>,
    pub env: EnvironmentMixture,
}

impl OracleInitial {
    pub fn pure(oscillator: FockDistribution, env: EnvironmentMixture) -> Self {
        Self {
            oscillator: vec![(1.0, oscillator)],
            env,
        }
    }

    /// Oscillator in `f |0><0| + (1 - f) |1><1|`.
    pub fn vacuum_one_mixture(f: f64, env: EnvironmentMixture) -> Result<Self> {
        if !(0.0..=1.0).contains(&f) {
            return Err(Error::InvalidProbability(f));
        }
        Ok(Self {
            oscillator: vec![(f, number_state(0)), (1.0 - f, number_state(1))],
            env,
        })
    }

    pub fn cutoff(&self) -> usize {
        self.oscillator
            .iter()
            .map(|(_, d)| d.cutoff())
            .max()
            .unwrap_or(0)
    }

    pub fn ensemble(&self, cfg: &OracleConfig) -> Result<Ensemble> {
        cfg.require(self.cutoff())?;
        let p = self.env.p();
        let mut states = Vec::new();
        for (w_osc, dist) in &self.oscillator {
            for (q2, w_env) in [(EXCITED, p), (GROUND, 1.0 - p)] {
                let w = w_osc * w_env;
                if w == 0.0 {
                    continue;
                }
                let mut psi = DVector::from_element(cfg.dim(), ZERO);
                for (n, b) in dist.amplitudes().iter().enumerate() {
                    psi[cfg.index(EXCITED, q2, n)] = Complex64::new(*b, 0.0);
                }
                states.push((w, psi));
            }
        }
        Ok(Ensemble { states })
    }
}

impl From<&SystemConfig> for OracleInitial {
    fn from(config: &SystemConfig) -> Self {
        Self::pure(config.oscillator.clone(), config.env)
    }
}

/// `ρ(0) = |e><e| ⊗ |φ><φ| ⊗ (p |e><e| + (1-p) |g><g|)`, held as a dense matrix.
pub fn initial_density(config: &SystemConfig, cfg: &OracleConfig) -> Result<DensityMatrix> {
    let ensemble = OracleInitial::from(config).ensemble(cfg)?;
    Ok(DensityMatrix::from_ensemble(&ensemble))
}

/// Eigendecomposition of a real symmetric Hamiltonian, reused for every time.
#[derive(Debug, Clone)]
pub struct Propagator {
    energies: DVector<f64>,
    vectors: DMatrix<f64>,
}

impl Propagator {
    pub fn new(h: &DMatrix<f64>) -> Result<Self> {
        if !h.is_square() {
            return Err(Error::DimensionMismatch(h.nrows(), h.ncols()));
        }
        let asym = (h - h.transpose()).amax();
        if asym > 1e-12 * h.amax().max(1.0) {
            return Err(Error::NonHermitian(asym));
        }
        let eig = SymmetricEigen::new(h.clone());
        if eig.eigenvalues.iter().any(|e| !e.is_finite()) {
            return Err(Error::NonHermitian(f64::NAN));
        }
        Ok(Self {
            energies: eig.eigenvalues,
            vectors: eig.eigenvectors,
        })
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn energies(&self) -> &DVector<f64> {
        &self.energies
    }

    fn phases(&self, t: f64) -> DVector<Complex64> {
        self.energies.map(|e| Complex64::from_polar(1.0, -e * t))
    }

    /// `e^{-iHt}` as a dense matrix.
    pub fn unitary(&self, t: f64) -> DMatrix<Complex64> {
        let v = self.vectors.map(|x| Complex64::new(x, 0.0));
        let phased = &v * DMatrix::from_diagonal(&self.phases(t));
        phased * v.transpose()
    }

    /// `ρ(t) = e^{-iHt} ρ0 e^{iHt}`.
    pub fn evolve(&self, rho0: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
        if rho0.dim() != self.dim() {
            return Err(Error::DimensionMismatch(rho0.dim(), self.dim()));
        }
        if t == 0.0 {
            return Ok(rho0.clone());
        }
        let u = self.unitary(t);
        Ok(DensityMatrix {
            matrix: &u * &rho0.matrix * u.adjoint(),
        })
    }

    /// Coordinates of `psi0` in the eigenbasis, for repeated evolution.
    pub fn coords(&self, psi0: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        if psi0.len() != self.dim() {
            return Err(Error::DimensionMismatch(psi0.len(), self.dim()));
        }
        let vt = self.vectors.transpose();
        let re = &vt * psi0.map(|z| z.re);
        let im = &vt * psi0.map(|z| z.im);
        Ok(re.zip_map(&im, Complex64::new))
    }

    /// `e^{-iHt} psi0` from eigenbasis coordinates of `psi0`.
    pub fn evolve_coords(&self, coords: &DVector<Complex64>, t: f64) -> DVector<Complex64> {
        let y = coords.component_mul(&self.phases(t));
        let re = &self.vectors * y.map(|z| z.re);
        let im = &self.vectors * y.map(|z| z.im);
        re.zip_map(&im, Complex64::new)
    }

    /// `e^{-iHt} psi0`.
    pub fn evolve_state(&self, psi0: &DVector<Complex64>, t: f64) -> Result<DVector<Complex64>> {
        if t == 0.0 {
            return Ok(psi0.clone());
        }
        Ok(self.evolve_coords(&self.coords(psi0)?, t))
    }
}

/// One-shot `e^{-iHt} ρ0 e^{iHt}`. Reuse a [`Propagator`] for many times.
pub fn evolve(rho0: &DensityMatrix, h: &DMatrix<f64>, t: f64) -> Result<DensityMatrix> {
    Propagator::new(h)?.evolve(rho0, t)
}

/// Trace over qubit2 and the oscillator.
pub fn reduce_qubit1(rho: &DensityMatrix) -> Matrix2<Complex64> {
    let block = rho.dim() / 2;
    let mut out = Matrix2::from_element(ZERO);
    for a in 0..2 {
        for b in 0..2 {
            out[(a, b)] = (0..block)
                .map(|k| rho.matrix[(a * block + k, b * block + k)])
                .sum();
        }
    }
    out
}

fn add_reduced_pure(out: &mut Matrix2<Complex64>, psi: &DVector<Complex64>, w: f64) {
    let block = psi.len() / 2;
    let (e, g) = (psi.rows(0, block), psi.rows(block, block));
    let ee: f64 = e.iter().map(|z| z.norm_sqr()).sum();
    let gg: f64 = g.iter().map(|z| z.norm_sqr()).sum();
    let eg: Complex64 = e.iter().zip(g.iter()).map(|(x, y)| x * y.conj()).sum();
    out[(0, 0)] += ee * w;
    out[(1, 1)] += gg * w;
    out[(0, 1)] += eg * w;
    out[(1, 0)] += eg.conj() * w;
}

/// `1 - Tr ρ²` of a 2×2 density matrix.
pub fn linear_entropy_2x2(rho: &Matrix2<Complex64>) -> f64 {
    1.0 - rho.iter().map(|z| z.norm_sqr()).sum::<f64>()
}

/// Reduced dynamics of qubit1 for one preparation: the Hamiltonian is
/// diagonalized once and each pure component of the initial ensemble is
/// propagated separately. Agrees with the dense [`Propagator::evolve`] path.
#[derive(Debug, Clone)]
pub struct OracleRun {
    propagator: Propagator,
    states: Vec<(f64, DVector<Complex64>)>,
    cfg: OracleConfig,
}

impl OracleRun {
    pub fn new(initial: &OracleInitial, cfg: &OracleConfig) -> Result<Self> {
        let ensemble = initial.ensemble(cfg)?;
        let propagator = Propagator::new(&build_hamiltonian(cfg)?)?;
        let states = ensemble
            .states
            .iter()
            .map(|(w, psi)| Ok((*w, propagator.coords(psi)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            propagator,
            states,
            cfg: *cfg,
        })
    }

    pub fn config(&self) -> &OracleConfig {
        &self.cfg
    }

    pub fn propagator(&self) -> &Propagator {
        &self.propagator
    }

    pub fn reduced(&self, t: f64) -> Matrix2<Complex64> {
        let mut rho = Matrix2::from_element(ZERO);
        for (w, coords) in &self.states {
            add_reduced_pure(&mut rho, &self.propagator.evolve_coords(coords, t), *w);
        }
        rho
    }

    pub fn linear_entropy(&self, t: f64) -> f64 {
        linear_entropy_2x2(&self.reduced(t))
    }

    pub fn series(&self, grid: &TimeGrid) -> Result<TimeSeries> {
        TimeSeries::sample(grid, |t| self.linear_entropy(t))
    }
}

/// Linear entropy of qubit1 on `grid` for an arbitrary oracle preparation.
pub fn oracle_series(
    initial: &OracleInitial,
    cfg: &OracleConfig,
    grid: &TimeGrid,
) -> Result<TimeSeries> {
    OracleRun::new(initial, cfg)?.series(grid)
}

/// `ζ(t)` on the configuration's grid, computed only through
/// build → evolve → reduce → purity.
pub fn oracle_entropy_series(config: &SystemConfig, cfg: &OracleConfig) -> Result<TimeSeries> {
    if cfg.couplings != config.couplings {
        return Err(Error::Unsupported(
            "oracle couplings differ from the scenario couplings".into(),
        ));
    }
    oracle_series(&OracleInitial::from(config), cfg, &config.grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jc_closed::{jc_mixture_entropy, jc_number_entropy};
    use crate::states::binomial_state;

    fn couplings(l1: f64, l2: f64) -> Couplings {
        Couplings::new(l1, l2).unwrap()
    }

    fn config(osc: FockDistribution, p: f64, l2: f64, points: usize) -> SystemConfig {
        SystemConfig::new(
            osc,
            EnvironmentMixture::new(p).unwrap(),
            couplings(1.0, l2),
            TimeGrid::new(0.0, 10.0, points).unwrap(),
        )
        .unwrap()
    }

    fn max_abs(m: &DMatrix<f64>) -> f64 {
        m.amax()
    }

    #[test]
    fn hamiltonian_structure() {
        let zero = OracleConfig::new(4, 0.0, couplings(0.0, 0.0));
        assert_eq!(max_abs(&build_hamiltonian(&zero).unwrap()), 0.0);

        let cfg = OracleConfig::new(5, 0.0, couplings(0.7, 0.0));
        let h = build_hamiltonian(&cfg).unwrap();
        for n in 0..5 {
            let e = cfg.index(EXCITED, GROUND, n);
            let g = cfg.index(GROUND, GROUND, n + 1);
            assert!((h[(e, g)] - 0.7 * ((n + 1) as f64).sqrt()).abs() < 1e-15);
            assert_eq!(h[(e, g)], h[(g, e)]);
        }
        assert_eq!(
            h[(cfg.index(EXCITED, GROUND, 0), cfg.index(GROUND, GROUND, 2))],
            0.0
        );

        let cfg = OracleConfig::new(6, 1.3, couplings(1.0, 0.4));
        let h = build_hamiltonian(&cfg).unwrap();
        let n = excitation_operator(&cfg);
        assert!(max_abs(&(&h * &n - &n * &h)) <= 1e-12);
        assert_eq!(h, h.transpose());
    }

    #[test]
    fn truncation_is_checked() {
        let c = couplings(1.0, 0.1);
        assert!(matches!(
            build_hamiltonian(&OracleConfig::new(1, 0.0, c)),
            Err(Error::TruncationTooSmall { required: 2, .. })
        ));
        let cfg = config(number_state(3), 0.5, 0.1, 11);
        let small = OracleConfig::new(4, 0.0, c);
        assert_eq!(
            initial_density(&cfg, &small),
            Err(Error::TruncationTooSmall {
                n_max: 4,
                required: 5
            })
        );
        assert!(initial_density(&cfg, &OracleConfig::for_config(&cfg)).is_ok());
    }

    #[test]
    fn initial_density_rank_and_trace() {
        let cfg = config(binomial_state(4, 0.3).unwrap(), 0.0, 0.1, 11);
        let rho = initial_density(&cfg, &OracleConfig::for_config(&cfg)).unwrap();
        assert!((rho.trace().re - 1.0).abs() < 1e-12);
        assert_eq!(rho.rank(1e-10), 1);
        assert!((rho.purity() - 1.0).abs() < 1e-12);

        let cfg = config(number_state(1), 0.5, 0.1, 11);
        let oc = OracleConfig::for_config(&cfg);
        let rho = initial_density(&cfg, &oc).unwrap();
        assert_eq!(rho.rank(1e-10), 2);
        let a = oc.index(EXCITED, EXCITED, 1);
        let b = oc.index(EXCITED, GROUND, 1);
        assert_eq!(rho.matrix[(a, a)].re, 0.5);
        assert_eq!(rho.matrix[(b, b)].re, 0.5);
        assert_eq!(rho.matrix[(a, b)].norm(), 0.0);
        assert!((rho.purity() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn evolution_preserves_trace_hermiticity_and_spectrum() {
        let cfg = config(binomial_state(3, 0.6).unwrap(), 0.3, 0.4, 11);
        let oc = OracleConfig::new(7, 1.0, cfg.couplings);
        let rho0 = initial_density(&cfg, &oc).unwrap();
        let h = build_hamiltonian(&oc).unwrap();
        let prop = Propagator::new(&h).unwrap();
        assert_eq!(prop.evolve(&rho0, 0.0).unwrap(), rho0);
        let ev0 = rho0.eigenvalues();
        for t in [0.37, 2.0, 11.5] {
            let rho = prop.evolve(&rho0, t).unwrap();
            assert!((rho.trace() - Complex64::new(1.0, 0.0)).norm() < 1e-10);
            assert!(rho.hermiticity_error() < 1e-10);
            for (a, b) in rho.eigenvalues().iter().zip(&ev0) {
                assert!((a - b).abs() < 1e-10);
            }
        }
        let h0 = DMatrix::zeros(oc.dim(), oc.dim());
        let rho = evolve(&rho0, &h0, 3.0).unwrap();
        assert!((&rho.matrix - &rho0.matrix)
            .iter()
            .all(|z| z.norm() < 1e-14));
    }

    #[test]
    fn propagator_rejects_bad_input() {
        let mut h = DMatrix::<f64>::zeros(4, 4);
        h[(0, 1)] = 1.0;
        assert!(matches!(Propagator::new(&h), Err(Error::NonHermitian(_))));
        assert!(matches!(
            Propagator::new(&DMatrix::zeros(4, 3)),
            Err(Error::DimensionMismatch(4, 3))
        ));
        let prop = Propagator::new(&DMatrix::zeros(4, 4)).unwrap();
        let rho = DensityMatrix {
            matrix: DMatrix::identity(8, 8),
        };
        assert!(matches!(
            prop.evolve(&rho, 1.0),
            Err(Error::DimensionMismatch(8, 4))
        ));
    }

    #[test]
    fn partial_trace() {
        let oc = OracleConfig::new(2, 0.0, couplings(1.0, 0.0));
        let mut psi = DVector::from_element(oc.dim(), ZERO);
        psi[oc.index(GROUND, EXCITED, 2)] = Complex64::new(1.0, 0.0);
        let rho = DensityMatrix::from_ensemble(&Ensemble {
            states: vec![(1.0, psi.clone())],
        });
        let r = reduce_qubit1(&rho);
        assert_eq!(r[(1, 1)].re, 1.0);
        assert_eq!(linear_entropy_2x2(&r), 0.0);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut bell = DVector::from_element(oc.dim(), ZERO);
        bell[oc.index(EXCITED, GROUND, 0)] = Complex64::new(s, 0.0);
        bell[oc.index(GROUND, GROUND, 1)] = Complex64::new(0.0, s);
        let rho = DensityMatrix::from_ensemble(&Ensemble {
            states: vec![(1.0, bell.clone())],
        });
        let r = reduce_qubit1(&rho);
        assert!(
            (r - Matrix2::identity().map(|x: f64| Complex64::new(x * 0.5, 0.0))).norm() < 1e-15
        );
        assert!((linear_entropy_2x2(&r) - 0.5).abs() < 1e-15);

        let mut acc = Matrix2::from_element(ZERO);
        add_reduced_pure(&mut acc, &bell, 1.0);
        assert!((acc - r).norm() < 1e-15);
    }

    #[test]
    fn jc_vacuum_limit() {
        let cfg = config(number_state(0), 0.5, 0.0, 401);
        let z = oracle_entropy_series(&cfg, &OracleConfig::for_config(&cfg)).unwrap();
        for (t, v) in z.iter() {
            assert!((v - jc_number_entropy(0, 1.0, t)).abs() < 1e-10, "t={t}");
        }
    }

    #[test]
    fn mixture_matches_jc_closed_form() {
        let grid = TimeGrid::new(0.0, 20.0, 401).unwrap();
        let env = EnvironmentMixture::new(0.0).unwrap();
        for f in [0.0, 0.3, 1.0] {
            let initial = OracleInitial::vacuum_one_mixture(f, env).unwrap();
            let cfg = OracleConfig::new(required_n_max(initial.cutoff()), 0.0, couplings(1.0, 0.0));
            let z = oracle_series(&initial, &cfg, &grid).unwrap();
            for (t, v) in z.iter() {
                assert!((v - jc_mixture_entropy(f, 1.0, t)).abs() < 1e-10);
            }
        }
        assert!(OracleInitial::vacuum_one_mixture(1.5, env).is_err());
    }

    #[test]
    fn frame_and_truncation_invariance() {
        let cfg = config(binomial_state(5, 0.7).unwrap(), 0.5, 0.3, 201);
        let initial = OracleInitial::from(&cfg);
        let base = OracleConfig::for_config(&cfg);
        let reference = oracle_series(&initial, &base, &cfg.grid).unwrap();
        for omega in [1.0, 5.0] {
            let oc = OracleConfig { omega, ..base };
            let z = oracle_series(&initial, &oc, &cfg.grid).unwrap();
            assert!(z.max_abs_diff(&reference).unwrap() < 1e-10);
        }
        let wide = OracleConfig {
            n_max: 2 * base.n_max,
            ..base
        };
        let z = oracle_series(&initial, &wide, &cfg.grid).unwrap();
        assert!(z.max_abs_diff(&reference).unwrap() < 1e-12);
    }

    #[test]
    fn dense_and_ensemble_paths_agree() {
        let cfg = config(binomial_state(3, 0.5).unwrap(), 0.1, 0.5, 11);
        let oc = OracleConfig::for_config(&cfg);
        let rho0 = initial_density(&cfg, &oc).unwrap();
        let run = OracleRun::new(&OracleInitial::from(&cfg), &oc).unwrap();
        for t in cfg.grid.times() {
            let dense = reduce_qubit1(&run.propagator().evolve(&rho0, t).unwrap());
            assert!((dense - run.reduced(t)).norm() < 1e-12);
        }
        let bad = OracleConfig {
            couplings: couplings(1.0, 0.2),
            ..oc
        };
        assert!(matches!(
            oracle_entropy_series(&cfg, &bad),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn symmetric_coupling_gap() {
        let l = 0.8;
        let oc = OracleConfig::new(10, 0.0, couplings(l, l));
        let h = build_hamiltonian(&oc).unwrap();
        let energies = Propagator::new(&h).unwrap().energies().clone();
        for n in [0usize, 1, 2, 5] {
            let d_plus = l * (2.0 * (2 * n + 3) as f64).sqrt();
            let hit = energies.iter().any(|e| (e - d_plus).abs() < 1e-10);
            assert!(hit, "n={n}");
        }
    }
}
