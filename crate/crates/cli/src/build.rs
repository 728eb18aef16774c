//! Turns configuration specs into library objects.

use std::collections::BTreeMap;
use std::str::FromStr;

use braidforge::algebra::{series_constructor, BlockRep, SeriesParams};
use braidforge::arith::{sample, LaurentPoly, Rational, Ring, RingMatrix};
use braidforge::invariants::{
    Bracket, CharpolyClass, CharpolyFamily, GroupTrace, LabelRule, LabelScheme, LinkInvariant, SequenceSource,
    TensorTrace, DEFAULT_MAX_LEN,
};
use braidforge::tensor::{tensor_from_matrix_pair, BraidTensor};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::{InvariantKind, MatrixText, Representation, RingKind, RunConfig, SchemeRule, Series, TensorKind};
use crate::Failure;

/// Entry bound for random draws.
const BOUND: i64 = 5;
/// Calibration samples for the group trace.
const CALIBRATION_SAMPLES: usize = 8;
const DEFAULT_LAMBDA: &str = "2";

pub trait Elem: Ring + FromStr<Err = braidforge::Error> {}
impl<R: Ring + FromStr<Err = braidforge::Error>> Elem for R {}

pub fn elem<R: Elem>(text: &str) -> Result<R, Failure> {
    Ok(text.parse::<R>()?)
}

pub fn matrix<R: Elem>(rows: &MatrixText) -> Result<RingMatrix<R>, Failure> {
    let rows = rows
        .iter()
        .map(|row| row.iter().map(|e| elem::<R>(e)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RingMatrix::from_rows(rows)?)
}

/// The representation an invariant uses when none is configured.
pub fn default_representation(kind: InvariantKind, m: usize) -> Representation {
    match kind {
        InvariantKind::TensorTrace => Representation::Tensor { tensor: TensorKind::Family, m },
        InvariantKind::CharpolyClass => Representation::Scheme { rule: SchemeRule::Inverse, m, lambda: None },
        InvariantKind::CharpolyFamily => Representation::Scheme { rule: SchemeRule::TInverse, m, lambda: None },
        InvariantKind::GroupTrace => {
            Representation::Scheme { rule: SchemeRule::ConjugatedU, m, lambda: Some(DEFAULT_LAMBDA.into()) }
        }
        InvariantKind::Bracket => Representation::Series {
            series: Series::I,
            ring: RingKind::Rational,
            b: Some(vec![vec!["1".into()]]),
            alpha: None,
            beta: None,
        },
    }
}

pub fn series_rep<R: Elem>(
    series: Series,
    b: Option<&MatrixText>,
    alpha: Option<&str>,
    beta: Option<&str>,
) -> Result<BlockRep<R>, Failure> {
    let need_b = || -> Result<RingMatrix<R>, Failure> {
        matrix(b.ok_or_else(|| Failure::config(format!("series {series:?} needs a B matrix")))?)
    };
    let params = match series {
        Series::I => SeriesParams::I(need_b()?),
        Series::II => SeriesParams::II(need_b()?),
        Series::III => SeriesParams::III(need_b()?),
        Series::VI => {
            let get = |x: Option<&str>, name: &str| -> Result<R, Failure> {
                elem(x.ok_or_else(|| Failure::config(format!("series VI needs {name}")))?)
            };
            SeriesParams::VI { alpha: get(alpha, "alpha")?, beta: get(beta, "beta")? }
        }
    };
    Ok(series_constructor(params)?)
}

/// `(a, T·a⁻¹)` with `a` drawn from the seed.
pub fn family_tensor(m: usize, seed: u64) -> Result<BraidTensor<LaurentPoly>, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a: RingMatrix<LaurentPoly> = sample::invertible(&mut rng, m, BOUND);
    let b = a.inverse()?.scale(&LaurentPoly::t());
    Ok(tensor_from_matrix_pair(&a, &b)?)
}

pub fn tensor(kind: TensorKind, m: usize, seed: u64) -> Result<BraidTensor<LaurentPoly>, Failure> {
    if m == 0 {
        return Err(Failure::config("m must be at least 1"));
    }
    Ok(match kind {
        TensorKind::Identity => BraidTensor::identity(m),
        TensorKind::Swap => BraidTensor::swap(m),
        TensorKind::Family => family_tensor(m, seed)?,
    })
}

pub fn scheme<R: Elem>(rule: SchemeRule, m: usize, lambda: Option<&str>, seed: u64) -> Result<LabelScheme<R>, Failure> {
    if m == 0 {
        return Err(Failure::config("m must be at least 1"));
    }
    let u = || -> Result<RingMatrix<R>, Failure> { Ok(RingMatrix::scalar(m, elem(lambda.unwrap_or(DEFAULT_LAMBDA))?)) };
    let rule = match rule {
        SchemeRule::Inverse => LabelRule::Inverse,
        SchemeRule::TInverse => LabelRule::ScaledInverse(
            elem("T").map_err(|_| Failure::config("the t-inverse rule needs Laurent entries"))?,
        ),
        SchemeRule::ConjugatedU => LabelRule::ConjugatedU(u()?),
        SchemeRule::ConjugatedUVerbatim => LabelRule::ConjugatedUVerbatim(u()?),
    };
    Ok(LabelScheme::new(SequenceSource::Random { m, seed, bound: BOUND }, rule))
}

/// An invariant ready to evaluate, with the parameters that went into it.
pub struct Built {
    pub invariant: Box<dyn LinkInvariant>,
    pub parameters: BTreeMap<String, String>,
}

pub fn invariant(config: &RunConfig) -> Result<Built, Failure> {
    let kind = config.invariant.ok_or_else(|| Failure::config("no invariant selected"))?;
    let rep = config.representation.as_ref().ok_or_else(|| Failure::config("no representation"))?;
    let mismatch = || Failure::config(format!("{} cannot use this representation", kind.id()));
    let mut parameters = BTreeMap::from([("seed".to_string(), config.seed.to_string())]);

    let invariant: Box<dyn LinkInvariant> = match kind {
        InvariantKind::TensorTrace => {
            let Representation::Tensor { tensor: k, m } = rep else { return Err(mismatch()) };
            let inv = TensorTrace::single(tensor(*k, *m, config.seed)?)?;
            parameters.extend(inv.parameters());
            Box::new(inv)
        }
        InvariantKind::CharpolyClass => {
            let Representation::Scheme { rule, m, lambda } = rep else { return Err(mismatch()) };
            parameters.insert("t".into(), config.t.to_string());
            parameters.insert("m".into(), m.to_string());
            if *rule == SchemeRule::TInverse {
                let scheme = scheme::<LaurentPoly>(*rule, *m, lambda.as_deref(), config.seed)?;
                Box::new(CharpolyClass { scheme, power: config.t })
            } else {
                let scheme = scheme::<Rational>(*rule, *m, lambda.as_deref(), config.seed)?;
                Box::new(CharpolyClass { scheme, power: config.t })
            }
        }
        InvariantKind::CharpolyFamily => {
            let Representation::Scheme { rule, m, lambda } = rep else { return Err(mismatch()) };
            parameters.insert("t".into(), config.t.to_string());
            parameters.insert("m".into(), m.to_string());
            let scheme = scheme::<LaurentPoly>(*rule, *m, lambda.as_deref(), config.seed)?;
            Box::new(CharpolyFamily { scheme, power: config.t })
        }
        InvariantKind::GroupTrace => {
            let Representation::Scheme { rule, m, lambda } = rep else { return Err(mismatch()) };
            let scheme = scheme::<Rational>(*rule, *m, lambda.as_deref(), config.seed)?;
            let inv = GroupTrace::new(scheme, CALIBRATION_SAMPLES, config.seed, false)?;
            parameters.insert("m".into(), m.to_string());
            parameters.extend(inv.parameters());
            Box::new(inv)
        }
        InvariantKind::Bracket => {
            let block = match rep {
                Representation::Series { series, ring: RingKind::Rational, b, alpha, beta } => {
                    series_rep::<Rational>(*series, b.as_ref(), alpha.as_deref(), beta.as_deref())?
                }
                Representation::Blocks { ring: RingKind::Rational, a, b, c, d } => {
                    BlockRep::new(matrix(a)?, matrix(b)?, matrix(c)?, matrix(d)?)?
                }
                _ => return Err(Failure::config("the bracket needs a rational block representation")),
            };
            let inv = Bracket::new(block, Rational::from_int(config.t), DEFAULT_MAX_LEN)?;
            parameters.extend(inv.parameters());
            Box::new(inv)
        }
    };
    Ok(Built { invariant, parameters })
}
