//! Exact vector configurations (arrangements of linear forms), their
//! underlying matroids, and a catalog of realizations of matroids built
//! from Latin squares, each with a checkable list of claims.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::bits::{self, Mask};
use crate::latin::{self, LatinError, LatinHypercube, LatinSquare};
use crate::matroid::{matroid_from_top_circuits, CircuitFamily, Matroid, MatroidError};
use crate::oscohomology::{self, CohomologyError, CohomologyReport, Weight};
use crate::scalar::{euler_phi, format_rational, parse_rational, rat, Cyclotomic, Field, Matrix, Rational, ScalarError};

#[derive(Debug, Error)]
pub enum RealizationError {
    #[error("loop: vector {0} is zero")]
    Loop(usize),
    #[error("vector {index} has length {found}, expected {expected}")]
    Length { index: usize, found: usize, expected: usize },
    #[error("vectors span rank {found}, expected {expected}")]
    Rank { found: usize, expected: usize },
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("invalid configuration JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Latin(#[from] LatinError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// `n` nonzero vectors of length `r` spanning `F^r`; vector `i` is the
/// linear form of hyperplane `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration<F> {
    rank: usize,
    vectors: Vec<Vec<F>>,
}

impl<F: Field> Configuration<F> {
    pub fn new(rank: usize, vectors: Vec<Vec<F>>) -> Result<Self, RealizationError> {
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != rank {
                return Err(RealizationError::Length {
                    index: i + 1,
                    found: v.len(),
                    expected: rank,
                });
            }
            if v.iter().all(|x| x.is_zero()) {
                return Err(RealizationError::Loop(i + 1));
            }
        }
        let found = Matrix::from_rows(vectors.clone())?.rank()?;
        if found != rank {
            return Err(RealizationError::Rank { found, expected: rank });
        }
        Ok(Configuration { rank, vectors })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<F>] {
        &self.vectors
    }

    fn subset_rank(&self, s: Mask) -> Result<usize, ScalarError> {
        let rows = bits::elements(s)
            .iter()
            .map(|&i| self.vectors[i - 1].clone())
            .collect();
        Matrix::from_rows(rows)?.rank()
    }

    /// Minimal linearly dependent subsets, searched by size up to `r + 1`.
    pub fn underlying_matroid(&self) -> Result<Matroid, RealizationError> {
        let n = self.vectors.len();
        if n > bits::MAX_GROUND {
            return Err(MatroidError::TooLarge(n).into());
        }
        let mut circuits: Vec<Mask> = Vec::new();
        for k in 1..=(self.rank + 1).min(n) {
            let candidates: Vec<Mask> = bits::k_subsets(n, k)
                .into_iter()
                .filter(|&s| circuits.iter().all(|&c| c & !s != 0))
                .collect();
            let found: Vec<Mask> = if k > self.rank {
                candidates
            } else {
                candidates
                    .into_par_iter()
                    .map(|s| self.subset_rank(s).map(|r| (s, r < k)))
                    .collect::<Result<Vec<_>, _>>()?
                    .into_iter()
                    .filter(|&(_, dep)| dep)
                    .map(|(s, _)| s)
                    .collect()
            };
            circuits.extend(found);
        }
        Ok(Matroid::from_circuit_masks(n, circuits))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Configuration<G> {
        Configuration {
            rank: self.rank,
            vectors: self.vectors.iter().map(|v| v.iter().map(&f).collect()).collect(),
        }
    }
}

impl Configuration<Rational> {
    /// The same vectors viewed over `Q(zeta_n)`.
    pub fn to_cyclotomic(&self, n: u32) -> Result<Configuration<Cyclotomic>, ScalarError> {
        let vectors = self
            .vectors
            .iter()
            .map(|v| v.iter().map(|q| Cyclotomic::from_rational(q.clone()).embed(n)).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        Ok(Configuration { rank: self.rank, vectors })
    }
}

/// A configuration over either supported field.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyConfiguration {
    Rational(Configuration<Rational>),
    Cyclotomic { conductor: u32, config: Configuration<Cyclotomic> },
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(untagged)]
pub enum FieldTag {
    Named(String),
    Cyclotomic { cyclotomic: u32 },
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct ConfigurationJson {
    pub field: FieldTag,
    pub rank: usize,
    pub vectors: Vec<Vec<Value>>,
}

fn cyclotomic_coeff_strings(x: &Cyclotomic, n: u32) -> Result<Vec<String>, ScalarError> {
    let e = x.embed(n)?;
    let mut out: Vec<String> = e.coeffs().iter().map(format_rational).collect();
    out.resize(euler_phi(n), "0".into());
    Ok(out)
}

fn scalar_string(v: &Value) -> Result<String, RealizationError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) if n.is_i64() => Ok(n.to_string()),
        other => Err(RealizationError::Json(format!("expected a rational string, found {other}"))),
    }
}

impl AnyConfiguration {
    pub fn rank(&self) -> usize {
        match self {
            AnyConfiguration::Rational(c) => c.rank(),
            AnyConfiguration::Cyclotomic { config, .. } => config.rank(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnyConfiguration::Rational(c) => c.len(),
            AnyConfiguration::Cyclotomic { config, .. } => config.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn field_name(&self) -> String {
        match self {
            AnyConfiguration::Rational(_) => "Q".into(),
            AnyConfiguration::Cyclotomic { conductor, .. } => format!("Q(zeta_{conductor})"),
        }
    }

    pub fn underlying_matroid(&self) -> Result<Matroid, RealizationError> {
        match self {
            AnyConfiguration::Rational(c) => c.underlying_matroid(),
            AnyConfiguration::Cyclotomic { config, .. } => config.underlying_matroid(),
        }
    }

    pub fn to_json(&self) -> Result<ConfigurationJson, RealizationError> {
        Ok(match self {
            AnyConfiguration::Rational(c) => ConfigurationJson {
                field: FieldTag::Named("Q".into()),
                rank: c.rank,
                vectors: c
                    .vectors
                    .iter()
                    .map(|v| v.iter().map(|q| Value::String(format_rational(q))).collect())
                    .collect(),
            },
            AnyConfiguration::Cyclotomic { conductor, config } => ConfigurationJson {
                field: FieldTag::Cyclotomic { cyclotomic: *conductor },
                rank: config.rank,
                vectors: config
                    .vectors
                    .iter()
                    .map(|v| {
                        v.iter()
                            .map(|x| {
                                cyclotomic_coeff_strings(x, *conductor)
                                    .map(|cs| Value::Array(cs.into_iter().map(Value::String).collect()))
                            })
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            },
        })
    }

    pub fn from_json(j: &ConfigurationJson) -> Result<Self, RealizationError> {
        match &j.field {
            FieldTag::Named(s) if s == "Q" => {
                let vectors = j
                    .vectors
                    .iter()
                    .map(|v| {
                        v.iter()
                            .map(|x| Ok(parse_rational(&scalar_string(x)?)?))
                            .collect::<Result<Vec<_>, RealizationError>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(AnyConfiguration::Rational(Configuration::new(j.rank, vectors)?))
            }
            FieldTag::Named(s) => Err(RealizationError::Json(format!("unknown field {s:?}"))),
            FieldTag::Cyclotomic { cyclotomic: n } => {
                let n = *n;
                if n == 0 {
                    return Err(ScalarError::InvalidConductor(0).into());
                }
                let vectors = j
                    .vectors
                    .iter()
                    .map(|v| {
                        v.iter()
                            .map(|x| {
                                let coeffs = match x {
                                    Value::Array(cs) => cs
                                        .iter()
                                        .map(|c| Ok(parse_rational(&scalar_string(c)?)?))
                                        .collect::<Result<Vec<_>, RealizationError>>()?,
                                    other => vec![parse_rational(&scalar_string(other)?)?],
                                };
                                Ok(Cyclotomic::new(n, coeffs)?.embed(n)?)
                            })
                            .collect::<Result<Vec<_>, RealizationError>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(AnyConfiguration::Cyclotomic {
                    conductor: n,
                    config: Configuration::new(j.rank, vectors)?,
                })
            }
        }
    }
}

/// Expected value of a cohomology dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Expectation {
    Exactly(usize),
    AtLeast(usize),
}

impl Expectation {
    pub fn holds(&self, v: usize) -> bool {
        match *self {
            Expectation::Exactly(x) => v == x,
            Expectation::AtLeast(x) => v >= x,
        }
    }
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expectation::Exactly(x) => write!(f, "= {x}"),
            Expectation::AtLeast(x) => write!(f, ">= {x}"),
        }
    }
}

/// A combinatorial claim about the underlying matroid of an entry.
#[derive(Clone, Debug)]
pub enum Claim {
    /// Same circuits with the same labels.
    Equals { description: String, matroid: Matroid },
    /// Isomorphic up to relabelling.
    Isomorphic { description: String, matroid: Matroid },
    /// The circuits of size `k` are exactly `sets`.
    CircuitsOfSize { k: usize, sets: Vec<Vec<usize>> },
    /// Each listed set is dependent.
    Dependent { sets: Vec<Vec<usize>> },
    /// The simplification has this many elements.
    SimpleSize(usize),
}

/// A configuration together with the matroid it should realize and the
/// cohomology it should exhibit for a chosen weight.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub configuration: AnyConfiguration,
    pub claims: Vec<Claim>,
    pub weight: Weight<Rational>,
    pub cohomology: Vec<(usize, Expectation)>,
    pub experimental: bool,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ClaimResult {
    pub claim: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub entry: String,
    pub field: String,
    pub experimental: bool,
    pub claims: Vec<ClaimResult>,
    pub cohomology: Option<CohomologyReport>,
    pub passed: bool,
}

fn q(v: i64) -> Rational {
    rat(v)
}

fn qvec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x)).collect()
}

fn rational_config(rank: usize, rows: &[&[i64]]) -> Result<AnyConfiguration, RealizationError> {
    Ok(AnyConfiguration::Rational(Configuration::new(
        rank,
        rows.iter().map(|r| qvec(r)).collect(),
    )?))
}

fn block_weight(m: usize, values: &[i64]) -> Weight<Rational> {
    Weight::from_blocks(m, &qvec(values))
}

fn sets(list: &[&[usize]]) -> Vec<Vec<usize>> {
    list.iter().map(|s| s.to_vec()).collect()
}

/// Names accepted by [`catalog`], in listing order.
pub fn catalog_names() -> Vec<&'static str> {
    vec![
        "near-pencil",
        "ceva",
        "pappus",
        "hessian",
        "monomial(3)",
        "monomial(4)",
        "higher-A(2,3)",
        "higher-B",
        "kirkman",
        "steiner",
        "b3",
    ]
}

fn parse_args(name: &str, prefix: &str) -> Option<Vec<String>> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() {
        return Some(Vec::new());
    }
    let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
    Some(inner.split(',').map(|s| s.trim().to_string()).collect())
}

/// Looks up a catalog entry. Names are case-insensitive; `monomial(m)`
/// takes the order `m >= 2` and `higher-A(b,c)` two rationals (default
/// `(2,3)`).
pub fn catalog(name: &str) -> Result<CatalogEntry, RealizationError> {
    let lower = name.trim().to_ascii_lowercase();
    match lower.as_str() {
        "near-pencil" => return near_pencil(),
        "ceva" => return ceva(),
        "pappus" => return pappus(),
        "hessian" => return hessian(),
        "higher-b" => return higher_b(),
        "kirkman" => return kirkman(),
        "steiner" => return steiner(),
        "b3" => return b3(),
        _ => {}
    }
    if let Some(args) = parse_args(&lower, "monomial") {
        let m = match args.as_slice() {
            [m] => m.parse::<usize>().ok(),
            _ => None,
        }
        .ok_or_else(|| RealizationError::Parameters(format!("{name}: expected monomial(m)")))?;
        return monomial(m);
    }
    if let Some(args) = parse_args(&lower, "higher-a") {
        let (b, c) = match args.as_slice() {
            [] => (q(2), q(3)),
            [b, c] => (parse_rational(b)?, parse_rational(c)?),
            _ => {
                return Err(RealizationError::Parameters(format!("{name}: expected higher-A(b,c)")));
            }
        };
        return higher_a(b, c);
    }
    Err(RealizationError::UnknownEntry(name.to_string()))
}

/// Three lines through one point in the plane.
pub fn near_pencil() -> Result<CatalogEntry, RealizationError> {
    let k = LatinSquare::new(vec![vec![1]])?;
    Ok(CatalogEntry {
        name: "near-pencil".into(),
        description: "three concurrent lines; M[K] for the square of order 1".into(),
        configuration: rational_config(2, &[&[1, 0], &[0, 1], &[1, 1]])?,
        claims: vec![Claim::Equals {
            description: "M[K], K of order 1 (U_{2,3})".into(),
            matroid: k.build_matroid()?,
        }],
        weight: block_weight(1, &[1, 1, -2]),
        cohomology: vec![(0, Expectation::Exactly(0)), (1, Expectation::Exactly(1))],
        experimental: false,
    })
}

/// The six lines of the Ceva configuration, labelled so that the dependent
/// triples are `C[K]` for the square of order 2.
pub fn ceva() -> Result<CatalogEntry, RealizationError> {
    let k = LatinSquare::cyclic(2);
    Ok(CatalogEntry {
        name: "ceva".into(),
        description: "Ceva configuration: six lines with four triple points".into(),
        configuration: rational_config(
            3,
            &[&[1, -1, 0], &[0, 0, 1], &[1, 0, -1], &[0, 1, 0], &[0, 1, -1], &[1, 0, 0]],
        )?,
        claims: vec![Claim::Equals {
            description: "M[K], K the square of order 2".into(),
            matroid: k.build_matroid()?,
        }],
        weight: block_weight(2, &[1, 1, -2]),
        cohomology: vec![(0, Expectation::Exactly(0)), (1, Expectation::Exactly(1))],
        experimental: false,
    })
}

/// Nine lines of the Pappus configuration; exactly the nine triples of `C[K]`
/// (K cyclic of order 3) are concurrent.
pub fn pappus() -> Result<CatalogEntry, RealizationError> {
    let k = LatinSquare::cyclic(3);
    Ok(CatalogEntry {
        name: "pappus".into(),
        description: "Pappus configuration: nine lines with nine triple points".into(),
        configuration: rational_config(
            3,
            &[
                &[0, 0, 1],
                &[0, 1, 1],
                &[19, 2, 7],
                &[1, 0, 1],
                &[21, 3, 10],
                &[2, 1, 1],
                &[3, 0, 1],
                &[7, 1, 1],
                &[2, 1, 3],
            ],
        )?,
        claims: vec![Claim::Equals {
            description: "M[K], K cyclic of order 3".into(),
            matroid: k.build_matroid()?,
        }],
        weight: block_weight(3, &[1, 1, -2]),
        cohomology: vec![(0, Expectation::Exactly(0)), (1, Expectation::Exactly(1))],
        experimental: false,
    })
}

/// The two orthogonal squares of order 3 realized by the Hessian lines.
pub fn hessian_squares() -> Vec<LatinSquare> {
    vec![
        LatinSquare::new(vec![vec![1, 2, 3], vec![3, 1, 2], vec![2, 3, 1]]).expect("Latin"),
        LatinSquare::new(vec![vec![1, 2, 3], vec![2, 3, 1], vec![3, 1, 2]]).expect("Latin"),
    ]
}

/// The twelve lines of the Hessian configuration over `Q(omega)`,
/// `omega = exp(2 pi i / 3)`.
pub fn hessian() -> Result<CatalogEntry, RealizationError> {
    let z = |k: i64| Cyclotomic::zeta_pow(3, k);
    let one = z(0)?;
    let zero = Cyclotomic::new(3, vec![])?;
    let (w, w2) = (z(1)?, z(2)?);
    let rows = vec![
        vec![one.clone(), zero.clone(), zero.clone()],
        vec![zero.clone(), one.clone(), zero.clone()],
        vec![zero.clone(), zero.clone(), one.clone()],
        vec![one.clone(), one.clone(), one.clone()],
        vec![one.clone(), w2.clone(), w.clone()],
        vec![one.clone(), w.clone(), w2.clone()],
        vec![one.clone(), w.clone(), w.clone()],
        vec![one.clone(), one.clone(), w2.clone()],
        vec![one.clone(), w2.clone(), one.clone()],
        vec![one.clone(), w2.clone(), w2.clone()],
        vec![one.clone(), w.clone(), one.clone()],
        vec![one.clone(), one.clone(), w.clone()],
    ];
    let rows = rows
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.embed(3)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let ks = hessian_squares();
    let mols = latin::build_matroid_mols(&ks)?;
    let triples = mols.circuits_of_size(3).members().to_vec();
    Ok(CatalogEntry {
        name: "hessian".into(),
        description: "Hessian configuration: twelve lines, nine quadruple points".into(),
        configuration: AnyConfiguration::Cyclotomic {
            conductor: 3,
            config: Configuration::new(3, rows)?,
        },
        claims: vec![
            Claim::Isomorphic {
                description: "M[K1, K2] for the orthogonal pair of order 3".into(),
                matroid: mols,
            },
            Claim::CircuitsOfSize { k: 3, sets: triples },
        ],
        weight: block_weight(3, &[1, 1, 1, -3]),
        cohomology: vec![(0, Expectation::Exactly(0)), (1, Expectation::Exactly(2))],
        experimental: false,
    })
}

/// The square recording `zeta^p * zeta^q = zeta^r` for exponents in
/// `1..=m`.
pub fn monomial_square(m: usize) -> Result<LatinSquare, LatinError> {
    let cells = (0..m * m).map(|f| (f / m + f % m + 1) % m + 1).collect();
    LatinSquare::from_cells(m, cells)
}

/// The `3m` forms `x_i - zeta^k x_j` of `(x1^m - x2^m)(x1^m - x3^m)(x2^m - x3^m)`:
/// elements `1..m` are `x1 - zeta^p x2`, `m+1..2m` are `x2 - zeta^q x3`
/// and `2m+1..3m` are `x1 - zeta^r x3`.
pub fn monomial(m: usize) -> Result<CatalogEntry, RealizationError> {
    if m < 2 {
        return Err(RealizationError::Parameters(format!("monomial({m}) needs m >= 2")));
    }
    let n = u32::try_from(m).map_err(|_| RealizationError::Parameters("order too large".into()))?;
    let zero = Cyclotomic::new(n, vec![])?.embed(n)?;
    let one = Cyclotomic::zeta_pow(n, 0)?.embed(n)?;
    let neg = |k: usize| -> Result<Cyclotomic, ScalarError> { Ok(-Cyclotomic::zeta_pow(n, k as i64)?.embed(n)?) };
    let mut rows = Vec::with_capacity(3 * m);
    for p in 1..=m {
        rows.push(vec![one.clone(), neg(p)?, zero.clone()]);
    }
    for q in 1..=m {
        rows.push(vec![zero.clone(), one.clone(), neg(q)?]);
    }
    for r in 1..=m {
        rows.push(vec![one.clone(), zero.clone(), neg(r)?]);
    }
    let k = monomial_square(m)?;
    let blocks = vec![Matroid::uniform(2, m)?; 3];
    let expected = latin::degenerate_with_blocks(std::slice::from_ref(&k), &blocks)?;
    Ok(CatalogEntry {
        name: format!("monomial({m})"),
        description: format!("monomial arrangement A({m},{m},3) over Q(zeta_{m})"),
        configuration: AnyConfiguration::Cyclotomic {
            conductor: n,
            config: Configuration::new(3, rows)?,
        },
        claims: vec![Claim::Equals {
            description: format!("M[K; U(2,{m}), U(2,{m}), U(2,{m})]"),
            matroid: expected,
        }],
        weight: block_weight(m, &[1, 1, -2]),
        cohomology: vec![(0, Expectation::Exactly(0)), (1, Expectation::AtLeast(1))],
        experimental: false,
    })
}

/// The order-2 cube with `k = 1 + (i1 + i2 + i3 - 3 mod 2)`.
pub fn parity_cube() -> LatinHypercube {
    LatinHypercube::linear(3, 2, &[1, 1, 1]).expect("parity cube is Latin")
}

/// Eight hyperplanes in rank 4 realizing `M[K]` for the order-2 cube:
/// `x1 x2 x3 x4 (x1+x2+x3+x4)(x1+bc x2+b x3+c x4)(x1+c x2+x3+c x4)(x1+b x2+b x3+x4)`.
/// Requires `0, 1, b, c, bc` pairwise distinct.
pub fn higher_a(b: Rational, c: Rational) -> Result<CatalogEntry, RealizationError> {
    let bc = &b * &c;
    let vals = [q(0), q(1), b.clone(), c.clone(), bc.clone()];
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            if vals[i] == vals[j] {
                return Err(RealizationError::Parameters(
                    "0, 1, b, c, bc must be pairwise distinct".into(),
                ));
            }
        }
    }
    let (o, z) = (q(1), q(0));
    let rows = vec![
        vec![o.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), o.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), o.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), o.clone()],
        vec![o.clone(), o.clone(), o.clone(), o.clone()],
        vec![o.clone(), bc, b.clone(), c.clone()],
        vec![o.clone(), c.clone(), o.clone(), c.clone()],
        vec![o.clone(), b.clone(), b.clone(), o.clone()],
    ];
    Ok(CatalogEntry {
        name: format!("higher-A({},{})", format_rational(&b), format_rational(&c)),
        description: "eight hyperplanes in rank 4 realizing the order-2 cube matroid".into(),
        configuration: AnyConfiguration::Rational(Configuration::new(4, rows)?),
        claims: vec![Claim::Equals {
            description: "M[K], K the order-2 cube".into(),
            matroid: parity_cube().build_matroid()?,
        }],
        weight: block_weight(2, &[1, 1, 1, -3]),
        cohomology: vec![
            (0, Expectation::Exactly(0)),
            (1, Expectation::Exactly(0)),
            (2, Expectation::AtLeast(1)),
        ],
        experimental: false,
    })
}

/// `(x1-x2)(x1+x2)(x2-x3)(x2+x3)(x3-x4)(x3+x4)(x4-x1)(x4+x1)`: a degeneration
/// of the order-2 cube matroid with four extra 4-circuits.
pub fn higher_b() -> Result<CatalogEntry, RealizationError> {
    let cube = parity_cube().circuit_family()?;
    let extra = CircuitFamily::new(8, 4, sets(&[&[1, 2, 3, 4], &[1, 2, 7, 8], &[3, 4, 5, 6], &[5, 6, 7, 8]]))?;
    let four = cube.union(&extra)?;
    let mut claims = vec![
        Claim::CircuitsOfSize { k: 3, sets: Vec::new() },
        Claim::CircuitsOfSize {
            k: 4,
            sets: four.members().to_vec(),
        },
    ];
    if let Ok(m) = matroid_from_top_circuits(&four, 3, 8) {
        claims.push(Claim::Equals {
            description: "the 3-generic rank-4 matroid with these 4-circuits".into(),
            matroid: m,
        });
    }
    Ok(CatalogEntry {
        name: "higher-B".into(),
        description: "eight hyperplanes in rank 4 with four extra dependent quadruples".into(),
        configuration: rational_config(
            4,
            &[
                &[1, -1, 0, 0],
                &[1, 1, 0, 0],
                &[0, 1, -1, 0],
                &[0, 1, 1, 0],
                &[0, 0, 1, -1],
                &[0, 0, 1, 1],
                &[-1, 0, 0, 1],
                &[1, 0, 0, 1],
            ],
        )?,
        claims,
        weight: block_weight(2, &[1, 1, 1, -3]),
        cohomology: vec![(2, Expectation::AtLeast(1))],
        experimental: false,
    })
}

fn big_rational_config(rows: &[[&str; 3]]) -> Result<AnyConfiguration, RealizationError> {
    let vectors = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AnyConfiguration::Rational(Configuration::new(3, vectors)?))
}

/// Twelve lines realizing `M[K1]`, K1 cyclic of order 4. The coordinates
/// come from cosets of a subgroup of order 4 in the rational points of an
/// elliptic curve, labelled so the dependent triples are exactly `C[K1]`.
pub fn kirkman() -> Result<CatalogEntry, RealizationError> {
    let k = LatinSquare::cyclic(4);
    Ok(CatalogEntry {
        name: "kirkman".into(),
        description: "twelve lines with sixteen triple points realizing M[K1], K1 cyclic of order 4".into(),
        configuration: big_rational_config(&[
            ["-22527120", "86867200", "16194277"],
            ["78000153", "250915280", "4019679"],
            ["24664080", "44772651", "21253933"],
            ["5606480", "-12199911", "512000"],
            ["6", "5", "8"],
            ["70", "525", "1"],
            ["-105", "882", "125"],
            ["210", "-196", "27"],
            ["63007442339099510", "-125520479609888475", "6101300742206489"],
            ["-3005396274428154", "12597503683177685", "2225616756664328"],
            ["43437202271031870", "152629030591575524", "1999090319542317"],
            ["60792853462595415", "101523789103253202", "53704245183624125"],
        ])?,
        claims: vec![Claim::Equals {
            description: "M[K1], K1 cyclic of order 4".into(),
            matroid: k.build_matroid()?,
        }],
        weight: block_weight(4, &[1, 1, -2]),
        cohomology: vec![(0, Expectation::Exactly(0)), (1, Expectation::Exactly(1))],
        experimental: true,
    })
}

/// Twelve lines realizing `M[K2]`, K2 the Klein table of order 4, from
/// cosets of a Klein four-subgroup on a rational elliptic curve.
pub fn steiner() -> Result<CatalogEntry, RealizationError> {
    let k = LatinSquare::elementary_abelian(4)?;
    Ok(CatalogEntry {
        name: "steiner".into(),
        description: "twelve lines with sixteen triple points realizing M[K2], K2 the Klein table".into(),
        configuration: big_rational_config(&[
            ["-3168", "-4680", "1331"],
            ["484", "-715", "64"],
            ["-975", "5940", "2197"],
            ["5070", "30888", "125"],
            ["-6", "-27", "8"],
            ["24", "-108", "1"],
            ["-2", "4", "1"],
            ["9", "18", "1"],
            ["111652968", "-50546916", "18191447"],
            ["-55196862", "-24988419", "18821096"],
            ["4845663", "96332166", "12167"],
            ["-161874", "3218068", "3581577"],
        ])?,
        claims: vec![Claim::Equals {
            description: "M[K2], K2 the Klein table".into(),
            matroid: k.build_matroid()?,
        }],
        weight: block_weight(4, &[1, 1, -2]),
        cohomology: vec![(0, Expectation::Exactly(0)), (1, Expectation::Exactly(1))],
        experimental: true,
    })
}

/// The reflection arrangement `B3`, `xyz(x^2-y^2)(x^2-z^2)(y^2-z^2)`, with
/// three lines doubled so that it degenerates the Klein-table matroid:
/// elements `{1,2}`, `{5,6}`, `{11,12}` are parallel.
pub fn b3() -> Result<CatalogEntry, RealizationError> {
    let k2 = LatinSquare::elementary_abelian(4)?;
    Ok(CatalogEntry {
        name: "b3".into(),
        description: "B3 arrangement with three doubled lines, a degeneration of M[K2]".into(),
        configuration: rational_config(
            3,
            &[
                &[1, 0, 0],
                &[1, 0, 0],
                &[0, 1, 1],
                &[0, 1, -1],
                &[0, 1, 0],
                &[0, 1, 0],
                &[1, 0, 1],
                &[1, 0, -1],
                &[1, -1, 0],
                &[1, 1, 0],
                &[0, 0, 1],
                &[0, 0, 1],
            ],
        )?,
        claims: vec![
            Claim::CircuitsOfSize {
                k: 2,
                sets: sets(&[&[1, 2], &[5, 6], &[11, 12]]),
            },
            Claim::Dependent {
                sets: k2.circuit_family()?.members().to_vec(),
            },
            Claim::SimpleSize(9),
        ],
        weight: block_weight(4, &[1, 1, -2]),
        cohomology: vec![(1, Expectation::AtLeast(1))],
        experimental: true,
    })
}

fn describe_sets(v: &[Vec<usize>]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|s| s.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
        .collect();
    format!("{{{}}}", parts.join(" "))
}

fn check_claim(claim: &Claim, m: &Matroid) -> ClaimResult {
    match claim {
        Claim::Equals { description, matroid } => ClaimResult {
            claim: format!("underlying matroid equals {description}"),
            passed: m == matroid,
            detail: format!("{} circuits, expected {}", m.num_circuits(), matroid.num_circuits()),
        },
        Claim::Isomorphic { description, matroid } => {
            let iso = m.isomorphic(matroid);
            ClaimResult {
                claim: format!("underlying matroid is isomorphic to {description}"),
                passed: iso.is_some(),
                detail: match iso {
                    Some(p) => format!("bijection {p:?}"),
                    None => "no isomorphism".into(),
                },
            }
        }
        Claim::CircuitsOfSize { k, sets } => {
            let got = m.circuits_of_size(*k).members().to_vec();
            let mut want = sets.clone();
            for s in want.iter_mut() {
                s.sort_unstable();
            }
            want.sort();
            ClaimResult {
                claim: format!("{k}-circuits are exactly {} sets", want.len()),
                passed: got == want,
                detail: format!("found {}", describe_sets(&got)),
            }
        }
        Claim::Dependent { sets } => {
            let bad: Vec<Vec<usize>> = sets.iter().filter(|s| m.is_independent(s)).cloned().collect();
            ClaimResult {
                claim: format!("{} listed sets are dependent", sets.len()),
                passed: bad.is_empty(),
                detail: if bad.is_empty() {
                    "all dependent".into()
                } else {
                    format!("independent: {}", describe_sets(&bad))
                },
            }
        }
        Claim::SimpleSize(k) => {
            let (s, _) = m.simplification();
            ClaimResult {
                claim: format!("simplification has {k} elements"),
                passed: s.n() == *k,
                detail: format!("{} elements", s.n()),
            }
        }
    }
}

/// Recomputes the underlying matroid, checks every claim and the expected
/// cohomology dimensions. Failures are recorded in the report, not raised.
pub fn verify(entry: &CatalogEntry) -> VerificationReport {
    let mut claims = Vec::new();
    let mut report_h = None;
    match entry.configuration.underlying_matroid() {
        Err(e) => claims.push(ClaimResult {
            claim: "underlying matroid".into(),
            passed: false,
            detail: e.to_string(),
        }),
        Ok(m) => {
            let axioms = if m.n() <= 14 { m.check_circuit_axioms() } else { Ok(()) };
            claims.push(ClaimResult {
                claim: "circuit axioms".into(),
                passed: axioms.is_ok(),
                detail: axioms.err().unwrap_or_else(|| format!("{} circuits, rank {}", m.num_circuits(), m.rank())),
            });
            for c in &entry.claims {
                claims.push(check_claim(c, &m));
            }
            match oscohomology::cohomology(&m, &entry.weight) {
                Err(e) => claims.push(ClaimResult {
                    claim: "cohomology".into(),
                    passed: false,
                    detail: e.to_string(),
                }),
                Ok(r) => {
                    for &(p, exp) in &entry.cohomology {
                        let got = r.h(p);
                        claims.push(ClaimResult {
                            claim: format!("dim H^{p} {exp}"),
                            passed: exp.holds(got),
                            detail: format!("dim H^{p} = {got}"),
                        });
                    }
                    report_h = Some(r);
                }
            }
        }
    }
    let passed = claims.iter().all(|c| c.passed);
    VerificationReport {
        entry: entry.name.clone(),
        field: entry.configuration.field_name(),
        experimental: entry.experimental,
        claims,
        cohomology: report_h,
        passed,
    }
}

/// Distinct triples among the given index sets; used to describe 3-circuit
/// families generated by larger collinear sets.
pub fn triples_within(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out: HashSet<Vec<usize>> = HashSet::new();
    for s in sets {
        for t in bits::k_subsets(s.len(), 3) {
            let mut v: Vec<usize> = bits::elements(t).iter().map(|&i| s[i - 1]).collect();
            v.sort_unstable();
            out.insert(v);
        }
    }
    let mut v: Vec<Vec<usize>> = out.into_iter().collect();
    v.sort();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn near_pencil_matroid() {
        let e = near_pencil().unwrap();
        let m = e.configuration.underlying_matroid().unwrap();
        assert_eq!(m.circuits(), vec![vec![1, 2, 3]]);
    }

    #[test]
    fn zero_vector_is_a_loop() {
        let r = Configuration::new(2, vec![qvec(&[0, 0]), qvec(&[1, 0])]);
        assert!(matches!(r, Err(RealizationError::Loop(1))));
    }

    #[test]
    fn unknown_names() {
        assert!(matches!(catalog("nope"), Err(RealizationError::UnknownEntry(_))));
        assert!(catalog("monomial(x)").is_err());
        assert!(catalog("higher-A(1,3)").is_err());
        assert!(catalog("HIGHER-a").is_ok());
    }

    #[test]
    fn json_round_trip() {
        for name in ["ceva", "hessian"] {
            let e = catalog(name).unwrap();
            let j = e.configuration.to_json().unwrap();
            let text = serde_json::to_string(&j).unwrap();
            let back: ConfigurationJson = serde_json::from_str(&text).unwrap();
            assert_eq!(AnyConfiguration::from_json(&back).unwrap(), e.configuration);
        }
    }
}
