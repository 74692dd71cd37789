//! Period groups, discreteness, and the fibration/unimodularity decision
//! table for transversely homogeneous foliations.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{self, Matrix};
use crate::scalar::{self, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TischlerError {
    #[error("a period group needs at least one constant")]
    NoConstants,
    #[error("period has {found} coefficients, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("matrix is not hyperbolic: trace {trace} must exceed 2")]
    NotHyperbolic { trace: Scalar },
    #[error("matrix has determinant {det}, expected 1")]
    NotUnimodularMatrix { det: Scalar },
    #[error("expected a 2x2 matrix")]
    NotTwoByTwo,
}

/// A finitely generated subgroup of ℝ, each generator a ℚ-combination of
/// named constants assumed linearly independent over ℚ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodGroup {
    constants: Vec<String>,
    generators: Vec<Vec<Scalar>>,
}

impl PeriodGroup {
    pub fn new(constants: Vec<String>, generators: Vec<Vec<Scalar>>) -> Result<Self, TischlerError> {
        if constants.is_empty() {
            return Err(TischlerError::NoConstants);
        }
        if let Some(g) = generators.iter().find(|g| g.len() != constants.len()) {
            return Err(TischlerError::LengthMismatch {
                expected: constants.len(),
                found: g.len(),
            });
        }
        Ok(PeriodGroup { constants, generators })
    }

    pub fn constants(&self) -> &[String] {
        &self.constants
    }

    pub fn generators(&self) -> &[Vec<Scalar>] {
        &self.generators
    }

    /// Renders `Σ qᵢ·constᵢ`, e.g. `log_lambda`, `1/21*c`, `2*a + -1*b`, or `0`.
    pub fn render(&self, v: &[Scalar]) -> String {
        let terms: Vec<String> = v
            .iter()
            .zip(&self.constants)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, name)| {
                if c.is_one() {
                    name.clone()
                } else {
                    format!("{}*{}", scalar::render(c), name)
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Rank over ℚ of the generator vectors.
pub fn q_rank(p: &PeriodGroup) -> usize {
    linalg::vectors_rank(p.constants.len(), &p.generators)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discreteness {
    pub discrete: bool,
    pub q_rank: usize,
    /// Cyclic generator over the constants, when discrete and nonzero.
    pub generator: Option<Vec<Scalar>>,
}

/// Discrete iff the ℚ-span is at most one-dimensional. In rank one every
/// generator is a rational multiple of a fixed direction, and the group is
/// cyclic on the gcd of those multiples.
pub fn is_discrete(p: &PeriodGroup) -> Discreteness {
    let rank = q_rank(p);
    if rank > 1 {
        return Discreteness {
            discrete: false,
            q_rank: rank,
            generator: None,
        };
    }
    let Some(direction) = p.generators.iter().find(|g| !linalg::is_zero_vec(g)) else {
        return Discreteness {
            discrete: true,
            q_rank: 0,
            generator: None,
        };
    };
    let pivot = direction.iter().position(|c| !c.is_zero()).expect("nonzero vector");
    let multiples: Vec<Scalar> = p
        .generators
        .iter()
        .map(|g| &g[pivot] / &direction[pivot])
        .collect();
    let g = scalar::rational_gcd(&multiples);
    Discreteness {
        discrete: true,
        q_rank: 1,
        generator: Some(direction.iter().map(|c| c * &g).collect()),
    }
}

/// True if every generator is an integer multiple of `generator`.
pub fn divides_all(p: &PeriodGroup, generator: &[Scalar]) -> bool {
    let Some(pivot) = generator.iter().position(|c| !c.is_zero()) else {
        return p.generators.iter().all(|g| linalg::is_zero_vec(g));
    };
    p.generators.iter().all(|g| {
        let m = &g[pivot] / &generator[pivot];
        m.is_integer() && g.iter().zip(generator).all(|(a, b)| *a == &m * b)
    })
}

/// The hypothesis flags of the fibration and unimodularity theorems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoliationProfile {
    pub g0_unimodular: bool,
    pub gamma_closure_unimodular: bool,
    pub gamma_identity_unimodular: bool,
    pub k_compact: bool,
    pub k_strongly_unimodular: bool,
    pub fibers_finite_components: bool,
    pub manifold_compact: bool,
    pub periods: Option<PeriodGroup>,
}

impl FoliationProfile {
    pub const FLAG_NAMES: [&'static str; 7] = [
        "g0_unimodular",
        "gamma_closure_unimodular",
        "gamma_identity_unimodular",
        "k_compact",
        "k_strongly_unimodular",
        "fibers_finite_components",
        "manifold_compact",
    ];

    pub fn from_flags(flags: [bool; 7]) -> Self {
        let [g0, gc, ge, kc, ks, ff, mc] = flags;
        FoliationProfile {
            g0_unimodular: g0,
            gamma_closure_unimodular: gc,
            gamma_identity_unimodular: ge,
            k_compact: kc,
            k_strongly_unimodular: ks,
            fibers_finite_components: ff,
            manifold_compact: mc,
            periods: None,
        }
    }

    /// Flags in [`Self::FLAG_NAMES`] order.
    pub fn flags(&self) -> [bool; 7] {
        [
            self.g0_unimodular,
            self.gamma_closure_unimodular,
            self.gamma_identity_unimodular,
            self.k_compact,
            self.k_strongly_unimodular,
            self.fibers_finite_components,
            self.manifold_compact,
        ]
    }

    pub fn with_periods(mut self, periods: PeriodGroup) -> Self {
        self.periods = Some(periods);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VerdictKind {
    FoliationUnimodular,
    ManifoldFibers,
    LeafClosuresFiber,
    BlumenthalBundleFibers,
    HypothesesNotMet,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub certificate: Vec<String>,
    /// Rendered cyclic generator of the periods, when known and discrete.
    pub period_generator: Option<String>,
}

impl Verdict {
    fn new(kind: VerdictKind, certificate: Vec<String>) -> Self {
        Verdict {
            kind,
            certificate,
            period_generator: None,
        }
    }
}

fn standing(profile: &FoliationProfile) -> Option<Verdict> {
    let mut missing = Vec::new();
    if !profile.manifold_compact {
        missing.push("manifold is not compact".to_string());
    }
    if !profile.k_compact {
        missing.push("isotropy group K0# is not compact".to_string());
    }
    (!missing.is_empty()).then(|| Verdict::new(VerdictKind::HypothesesNotMet, missing))
}

/// Unimodularity theorem first, falling through to the trichotomy.
pub fn unimodularity_verdict(profile: &FoliationProfile) -> Verdict {
    if let Some(v) = standing(profile) {
        return v;
    }
    if profile.g0_unimodular
        && profile.gamma_closure_unimodular
        && profile.k_strongly_unimodular
        && profile.fibers_finite_components
    {
        return Verdict::new(
            VerdictKind::FoliationUnimodular,
            vec![
                "G0# unimodular, closure of Gamma0 unimodular, (K0)# strongly unimodular, developing map fibers with finitely many components".into(),
                "theorem: the foliation is unimodular (top basic cohomology is R)".into(),
            ],
        );
    }
    trichotomy_verdict(profile)
}

/// Which of `M`, the leaf closures or the Blumenthal total space fibers
/// over the circle.
pub fn trichotomy_verdict(profile: &FoliationProfile) -> Verdict {
    if let Some(v) = standing(profile) {
        return v;
    }
    if !profile.fibers_finite_components {
        return Verdict::new(
            VerdictKind::HypothesesNotMet,
            vec!["fibers of the developing map may have infinitely many components".into()],
        );
    }
    let mut verdict = if !profile.g0_unimodular {
        Verdict::new(
            VerdictKind::ManifoldFibers,
            vec![
                "G0# is not unimodular".into(),
                "proposition: G0# not unimodular implies M fibers over S1 (Tischler on log of the modular function)".into(),
            ],
        )
    } else if !profile.gamma_closure_unimodular && !profile.gamma_identity_unimodular {
        Verdict::new(
            VerdictKind::LeafClosuresFiber,
            vec![
                "G0# unimodular; closure of Gamma0 and its identity component both non-unimodular".into(),
                "proposition: each leaf closure fibers over S1".into(),
            ],
        )
    } else if !profile.gamma_closure_unimodular {
        Verdict::new(
            VerdictKind::BlumenthalBundleFibers,
            vec![
                "G0# unimodular; closure of Gamma0 non-unimodular with unimodular identity component".into(),
                "proposition: the total space of the Blumenthal bundle fibers over S1".into(),
            ],
        )
    } else if profile.k_strongly_unimodular {
        return unimodularity_verdict(profile);
    } else {
        return Verdict::new(
            VerdictKind::HypothesesNotMet,
            vec!["G0# and closure of Gamma0 unimodular but (K0)# not strongly unimodular".into()],
        );
    };
    if let Some(periods) = &profile.periods {
        let d = is_discrete(periods);
        verdict.certificate.push(format!(
            "periods: q_rank {}, {}",
            d.q_rank,
            if d.discrete { "discrete" } else { "dense" }
        ));
        verdict.period_generator = d.generator.map(|g| periods.render(&g));
    }
    verdict
}

/// The Carrière flow on the hyperbolic torus bundle of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarriereData {
    pub trace: Scalar,
    /// Coefficients `[1, −tr A, 1]` of `x² − (tr A)x + 1`.
    pub minimal_polynomial: [Scalar; 3],
    /// `log m(s, t) = t · χ(H) · log_lambda`; this is `χ(H)`.
    pub log_modular_coefficient: Scalar,
    pub profile: FoliationProfile,
}

impl CarriereData {
    pub fn minimal_polynomial_string(&self) -> String {
        let b = -&self.minimal_polynomial[1];
        format!("x^2 - {}x + 1", scalar::render(&b))
    }
}

/// Builds the profile of the Carrière flow. The model group is the affine
/// group of the line, whose modular character is read off `ga1`; the
/// holonomy closure `ℤ × ℝ` is abelian and `K` is trivial. The holonomy
/// generator along the base circle has `t = 1`, the fiber translations
/// `t = 0`, so the periods of `log m ∘ h` are multiples of `log_lambda`.
pub fn carriere_profile(a: &Matrix) -> Result<CarriereData, TischlerError> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(TischlerError::NotTwoByTwo);
    }
    let det = a.det();
    if !det.is_one() {
        return Err(TischlerError::NotUnimodularMatrix { det });
    }
    let trace = a.trace();
    if trace <= scalar::int(2) {
        return Err(TischlerError::NotHyperbolic { trace });
    }
    let ga = crate::catalog::ga1();
    let chi = ga.modular_character();
    let h = chi.values()[0].clone();
    let holonomy_t = [scalar::zero(), scalar::zero(), scalar::one()];
    let periods = PeriodGroup::new(
        vec!["log_lambda".into()],
        holonomy_t.iter().map(|t| vec![t * &h]).collect(),
    )
    .expect("one constant");
    let profile = FoliationProfile {
        g0_unimodular: chi.is_zero(),
        gamma_closure_unimodular: true,
        gamma_identity_unimodular: true,
        k_compact: true,
        k_strongly_unimodular: true,
        fibers_finite_components: true,
        manifold_compact: true,
        periods: Some(periods),
    };
    Ok(CarriereData {
        minimal_polynomial: [scalar::one(), -trace.clone(), scalar::one()],
        trace,
        log_modular_coefficient: h,
        profile,
    })
}
