//! Linear maps between matrix algebras.
//!
//! A map `T: C^{n x n} -> C^{m x m}` is stored as its Choi matrix
//! `sum_ij E_ij ⊗ T(E_ij)`, an `(n m) x (n m)` matrix whose `m x m` block
//! `(i, j)` is `T(E_ij)`. Every other representation (closed forms, Kraus
//! operators, serialized specs) is converted into this one on entry.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{hermitian_eig, CMatrix, Tolerance, C64, ZERO};

#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    dim_in: usize,
    dim_out: usize,
    choi2: CMatrix,
}

impl LinearMap {
    /// Wraps a Choi matrix with block `(i, j)` equal to `T(E_ij)`.
    pub fn from_choi2(choi2: CMatrix, dim_in: usize, dim_out: usize) -> Result<Self> {
        let d = dim_in * dim_out;
        if dim_in == 0 || dim_out == 0 || choi2.shape() != (d, d) {
            return Err(Error::DimensionMismatch(format!(
                "Choi matrix {}x{} does not match n={dim_in}, m={dim_out}",
                choi2.rows(),
                choi2.cols()
            )));
        }
        Ok(Self {
            dim_in,
            dim_out,
            choi2,
        })
    }

    /// Tabulates `action` on the matrix units. `action` must be linear and
    /// return `m x m` matrices.
    pub fn from_action(
        dim_in: usize,
        dim_out: usize,
        action: impl Fn(&CMatrix) -> CMatrix,
    ) -> Result<Self> {
        let (n, m) = (dim_in, dim_out);
        let mut choi2 = CMatrix::zeros(n * m, n * m);
        for i in 0..n {
            for j in 0..n {
                let image = action(&CMatrix::unit(n, n, i, j));
                if image.shape() != (m, m) {
                    return Err(Error::DimensionMismatch(format!(
                        "action returned {}x{}, expected {m}x{m}",
                        image.rows(),
                        image.cols()
                    )));
                }
                for p in 0..m {
                    for q in 0..m {
                        choi2[(i * m + p, j * m + q)] = image[(p, q)];
                    }
                }
            }
        }
        Ok(Self {
            dim_in,
            dim_out,
            choi2,
        })
    }

    pub fn zero(dim_in: usize, dim_out: usize) -> Self {
        let d = dim_in * dim_out;
        Self {
            dim_in,
            dim_out,
            choi2: CMatrix::zeros(d, d),
        }
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn choi2(&self) -> &CMatrix {
        &self.choi2
    }

    pub fn into_choi2(self) -> CMatrix {
        self.choi2
    }

    /// `T(E_ij)`, block `(i, j)` of the Choi matrix.
    pub fn image_of_unit(&self, i: usize, j: usize) -> CMatrix {
        let m = self.dim_out;
        self.choi2.block(i * m, j * m, m, m)
    }

    /// `T(A) = sum_ij A_ij T(E_ij)`.
    pub fn apply(&self, a: &CMatrix) -> Result<CMatrix> {
        let (n, m) = (self.dim_in, self.dim_out);
        if a.shape() != (n, n) {
            return Err(Error::DimensionMismatch(format!(
                "map acts on {n}x{n} matrices, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let mut out = CMatrix::zeros(m, m);
        for i in 0..n {
            for j in 0..n {
                let s = a[(i, j)];
                if s == ZERO {
                    continue;
                }
                for p in 0..m {
                    for q in 0..m {
                        out[(p, q)] += s * self.choi2[(i * m + p, j * m + q)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// `(1_k ⊗ T)(A)`: applies `T` to each `n x n` block of a `kn x kn` matrix.
    pub fn apply_extended(&self, k: usize, a: &CMatrix) -> Result<CMatrix> {
        let (n, m) = (self.dim_in, self.dim_out);
        if k == 0 || a.shape() != (k * n, k * n) {
            return Err(Error::DimensionMismatch(format!(
                "extension by k={k} acts on {0}x{0} matrices, got {1}x{2}",
                k * n,
                a.rows(),
                a.cols()
            )));
        }
        let mut out = CMatrix::zeros(k * m, k * m);
        for alpha in 0..k {
            for beta in 0..k {
                let image = self.apply(&a.block(alpha * n, beta * n, n, n))?;
                for p in 0..m {
                    for q in 0..m {
                        out[(alpha * m + p, beta * m + q)] = image[(p, q)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// The map `1_k ⊗ T` from `C^{kn x kn}` to `C^{km x km}`.
    ///
    /// Input index `alpha * n + i` pairs ancilla level `alpha` with system
    /// index `i`; the output side uses `alpha * m + p`.
    pub fn ancilla_extend(&self, k: usize) -> Self {
        assert!(k >= 1, "ancilla dimension must be at least 1");
        let (n, m) = (self.dim_in, self.dim_out);
        let (kn, km) = (k * n, k * m);
        let mut choi2 = CMatrix::zeros(kn * km, kn * km);
        for alpha in 0..k {
            for beta in 0..k {
                // only blocks e_ab ⊗ T(E_ij) placed at ancilla (a, b) survive
                for i in 0..n {
                    for j in 0..n {
                        let row0 = (alpha * n + i) * km + alpha * m;
                        let col0 = (beta * n + j) * km + beta * m;
                        for p in 0..m {
                            for q in 0..m {
                                choi2[(row0 + p, col0 + q)] = self.choi2[(i * m + p, j * m + q)];
                            }
                        }
                    }
                }
            }
        }
        Self {
            dim_in: kn,
            dim_out: km,
            choi2,
        }
    }

    /// `alpha * self + beta * other`.
    pub fn combine(&self, alpha: C64, other: &Self, beta: C64) -> Result<Self> {
        if (self.dim_in, self.dim_out) != (other.dim_in, other.dim_out) {
            return Err(Error::DimensionMismatch("maps of different shape".into()));
        }
        Ok(Self {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            choi2: &self.choi2.scale(alpha) + &other.choi2.scale(beta),
        })
    }

    pub fn identity(n: usize) -> Self {
        ZooMap::Identity
            .build(n, &[])
            .expect("identity takes no parameters")
    }

    pub fn transposition(n: usize) -> Self {
        ZooMap::Transposition
            .build(n, &[])
            .expect("transposition takes no parameters")
    }

    pub fn reduction(n: usize) -> Self {
        ZooMap::Reduction
            .build(n, &[])
            .expect("reduction takes no parameters")
    }

    /// `A -> (1 - p) A + p Tr(A) I / n`.
    pub fn depolarizing(n: usize, p: f64) -> Result<Self> {
        ZooMap::Depolarizing.build(n, &[p])
    }

    pub fn from_kraus(kraus: &KrausSet) -> Self {
        let op0 = &kraus.operators[0];
        let (m, n) = op0.shape();
        let d = n * m;
        let mut choi2 = CMatrix::zeros(d, d);
        // block (i, j)[p, q] = sum_K K[p, i] conj(K[q, j])
        for op in &kraus.operators {
            let column: Vec<C64> = (0..n)
                .flat_map(|i| (0..m).map(move |p| (i, p)))
                .map(|(i, p)| op[(p, i)])
                .collect();
            for (r, a) in column.iter().enumerate() {
                for (c, b) in column.iter().enumerate() {
                    choi2[(r, c)] += a * b.conj();
                }
            }
        }
        Self {
            dim_in: n,
            dim_out: m,
            choi2,
        }
    }
}

/// Kraus operators `K_l` of the map `A -> sum_l K_l A K_l*`.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausSet {
    operators: Vec<CMatrix>,
}

impl KrausSet {
    pub fn new(operators: Vec<CMatrix>) -> Result<Self> {
        let first = operators
            .first()
            .ok_or_else(|| Error::EmptyInput("Kraus set needs at least one operator".into()))?;
        let shape = first.shape();
        if operators.iter().any(|k| k.shape() != shape) {
            return Err(Error::DimensionMismatch(
                "Kraus operators must share one shape".into(),
            ));
        }
        Ok(Self { operators })
    }

    pub fn operators(&self) -> &[CMatrix] {
        &self.operators
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }
}

/// Kraus decomposition from the spectrum of the Choi matrix.
///
/// Eigenvalues in `[-tol.abs_eps, tol.abs_eps]` are treated as zero; anything
/// below `-tol.abs_eps` means the map is not completely positive.
pub fn to_kraus(t: &LinearMap, tol: &Tolerance) -> Result<KrausSet> {
    let (n, m) = (t.dim_in, t.dim_out);
    if t.choi2.hermiticity_defect() > tol.abs_eps {
        // a non-hermitian Choi matrix cannot be PSD
        let eig = hermitian_part_min(&t.choi2)?;
        return Err(Error::NotCompletelyPositive { eigenvalue: eig });
    }
    let eig = hermitian_eig(&t.choi2, tol)?;
    let lowest = eig.min();
    if lowest < -tol.abs_eps {
        return Err(Error::NotCompletelyPositive { eigenvalue: lowest });
    }
    let mut operators = Vec::new();
    for (col, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda <= tol.abs_eps {
            continue;
        }
        let s = lambda.sqrt();
        operators.push(CMatrix::from_fn(m, n, |p, i| {
            eig.eigenvectors[(i * m + p, col)] * s
        }));
    }
    if operators.is_empty() {
        // zero map
        operators.push(CMatrix::zeros(m, n));
    }
    KrausSet::new(operators)
}

fn hermitian_part_min(c: &CMatrix) -> Result<f64> {
    let h = (c + &c.adjoint()).scale(C64::new(0.5, 0.0));
    Ok(hermitian_eig(&h, &Tolerance::default())?.min())
}

/// Named maps available without an explicit matrix description.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZooMap {
    Identity,
    Transposition,
    Reduction,
    Depolarizing,
}

impl ZooMap {
    pub const ALL: [ZooMap; 4] = [
        ZooMap::Identity,
        ZooMap::Transposition,
        ZooMap::Reduction,
        ZooMap::Depolarizing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ZooMap::Identity => "identity",
            ZooMap::Transposition => "transposition",
            ZooMap::Reduction => "reduction",
            ZooMap::Depolarizing => "depolarizing",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            ZooMap::Identity => "A -> A; completely positive",
            ZooMap::Transposition => {
                "A -> A^t; positive but not 2-positive, the partial-transpose entanglement witness"
            }
            ZooMap::Reduction => {
                "A -> Tr(A) I - A; positive, not completely positive for n >= 2 (reduction criterion)"
            }
            ZooMap::Depolarizing => {
                "A -> (1-p) A + p Tr(A) I/n with p in [0,1] (default 1); completely positive"
            }
        }
    }

    fn check_params(self, params: &[f64]) -> Result<f64> {
        match self {
            ZooMap::Depolarizing => match params {
                [] => Ok(1.0),
                [p] if (0.0..=1.0).contains(p) => Ok(*p),
                [p] => Err(Error::MalformedSpec(format!(
                    "depolarizing parameter {p} outside [0, 1]"
                ))),
                _ => Err(Error::MalformedSpec(
                    "depolarizing takes exactly one parameter".into(),
                )),
            },
            _ if params.is_empty() => Ok(0.0),
            _ => Err(Error::MalformedSpec(format!(
                "{} takes no parameters",
                self.name()
            ))),
        }
    }

    /// Closed form of the map applied to `a`.
    pub fn closed_form(self, a: &CMatrix, params: &[f64]) -> Result<CMatrix> {
        let p = self.check_params(params)?;
        let n = a.rows();
        let tr = a.trace();
        Ok(match self {
            ZooMap::Identity => a.clone(),
            ZooMap::Transposition => a.transpose(),
            ZooMap::Reduction => &CMatrix::identity(n).scale(tr) - a,
            ZooMap::Depolarizing => {
                &a.scale(C64::new(1.0 - p, 0.0)) + &CMatrix::identity(n).scale(tr * (p / n as f64))
            }
        })
    }

    pub fn build(self, n: usize, params: &[f64]) -> Result<LinearMap> {
        if n == 0 {
            return Err(Error::DimensionMismatch("zoo maps need n >= 1".into()));
        }
        self.check_params(params)?;
        LinearMap::from_action(n, n, |a| {
            self.closed_form(a, params)
                .expect("parameters already checked")
        })
    }
}

impl fmt::Display for ZooMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ZooMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ZooMap::ALL
            .into_iter()
            .find(|z| z.name() == s)
            .ok_or_else(|| Error::UnknownZooName(s.to_string()))
    }
}

/// Serializable description of a map.
#[derive(Clone, Debug, PartialEq)]
pub enum MapSpec {
    Choi2 {
        n: usize,
        m: usize,
        choi2: CMatrix,
    },
    Kraus {
        n: usize,
        m: usize,
        operators: Vec<CMatrix>,
    },
    Zoo {
        map: ZooMap,
        n: usize,
        params: Vec<f64>,
    },
}

impl MapSpec {
    pub fn dims(&self) -> (usize, usize) {
        match self {
            MapSpec::Choi2 { n, m, .. } | MapSpec::Kraus { n, m, .. } => (*n, *m),
            MapSpec::Zoo { n, .. } => (*n, *n),
        }
    }

    /// Parses the JSON document form documented in [`crate::cli`].
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MapSpecDoc =
            serde_json::from_str(text).map_err(|e| Error::MalformedSpec(e.to_string()))?;
        doc.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&MapSpecDoc::from(self)).expect("spec serializes")
    }

    pub(crate) fn to_doc(&self) -> MapSpecDoc {
        MapSpecDoc::from(self)
    }
}

/// Zoo spec for `name` on `C^{n x n}`.
pub fn zoo(name: &str, n: usize, params: &[f64]) -> Result<MapSpec> {
    let map: ZooMap = name.parse()?;
    if n == 0 {
        return Err(Error::MalformedSpec("n must be at least 1".into()));
    }
    map.check_params(params)?;
    Ok(MapSpec::Zoo {
        map,
        n,
        params: params.to_vec(),
    })
}

pub fn from_spec(spec: &MapSpec) -> Result<LinearMap> {
    match spec {
        MapSpec::Choi2 { n, m, choi2 } => LinearMap::from_choi2(choi2.clone(), *n, *m),
        MapSpec::Kraus { n, m, operators } => {
            let kraus = KrausSet::new(operators.clone())
                .map_err(|e| Error::MalformedSpec(e.to_string()))?;
            if kraus.operators[0].shape() != (*m, *n) {
                return Err(Error::DimensionMismatch(format!(
                    "Kraus operators must be {m}x{n}"
                )));
            }
            Ok(LinearMap::from_kraus(&kraus))
        }
        MapSpec::Zoo { map, n, params } => map.build(*n, params),
    }
}

/// On-disk layout of a [`MapSpec`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpecDoc {
    pub kind: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub choi2: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kraus: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zoo: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<f64>>,
}

pub(crate) fn to_pairs(entries: &[C64]) -> Vec<[f64; 2]> {
    entries.iter().map(|z| [z.re, z.im]).collect()
}

pub(crate) fn from_pairs(pairs: &[[f64; 2]]) -> Vec<C64> {
    pairs.iter().map(|&[re, im]| C64::new(re, im)).collect()
}

impl From<&MapSpec> for MapSpecDoc {
    fn from(spec: &MapSpec) -> Self {
        let empty = MapSpecDoc {
            kind: String::new(),
            n: 0,
            m: None,
            choi2: None,
            kraus: None,
            zoo: None,
            params: None,
        };
        match spec {
            MapSpec::Choi2 { n, m, choi2 } => MapSpecDoc {
                kind: "choi2".into(),
                n: *n,
                m: Some(*m),
                choi2: Some(to_pairs(choi2.as_slice())),
                ..empty
            },
            MapSpec::Kraus { n, m, operators } => MapSpecDoc {
                kind: "kraus".into(),
                n: *n,
                m: Some(*m),
                kraus: Some(operators.iter().map(|k| to_pairs(k.as_slice())).collect()),
                ..empty
            },
            MapSpec::Zoo { map, n, params } => MapSpecDoc {
                kind: "zoo".into(),
                n: *n,
                m: Some(*n),
                zoo: Some(map.name().into()),
                params: Some(params.clone()),
                ..empty
            },
        }
    }
}

impl TryFrom<MapSpecDoc> for MapSpec {
    type Error = Error;

    fn try_from(doc: MapSpecDoc) -> Result<Self> {
        let malformed = |msg: &str| Error::MalformedSpec(msg.to_string());
        if doc.n == 0 {
            return Err(malformed("`n` must be at least 1"));
        }
        match doc.kind.as_str() {
            "choi2" => {
                let m = doc.m.ok_or_else(|| malformed("choi2 spec needs `m`"))?;
                if doc.kraus.is_some() || doc.zoo.is_some() || doc.params.is_some() {
                    return Err(malformed("choi2 spec carries foreign fields"));
                }
                let entries = doc
                    .choi2
                    .ok_or_else(|| malformed("choi2 spec needs `choi2`"))?;
                let d = doc.n * m;
                let choi2 = CMatrix::new(d, d, from_pairs(&entries)).map_err(|_| {
                    Error::DimensionMismatch(format!(
                        "choi2 has {} entries, expected {}",
                        entries.len(),
                        d * d
                    ))
                })?;
                Ok(MapSpec::Choi2 { n: doc.n, m, choi2 })
            }
            "kraus" => {
                let m = doc.m.ok_or_else(|| malformed("kraus spec needs `m`"))?;
                if doc.choi2.is_some() || doc.zoo.is_some() || doc.params.is_some() {
                    return Err(malformed("kraus spec carries foreign fields"));
                }
                let ops = doc
                    .kraus
                    .ok_or_else(|| malformed("kraus spec needs `kraus`"))?;
                if ops.is_empty() {
                    return Err(malformed("kraus list is empty"));
                }
                let operators = ops
                    .iter()
                    .map(|k| {
                        CMatrix::new(m, doc.n, from_pairs(k)).map_err(|_| {
                            Error::DimensionMismatch(format!(
                                "Kraus operator has {} entries, expected {}",
                                k.len(),
                                m * doc.n
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(MapSpec::Kraus {
                    n: doc.n,
                    m,
                    operators,
                })
            }
            "zoo" => {
                if doc.choi2.is_some() || doc.kraus.is_some() {
                    return Err(malformed("zoo spec carries foreign fields"));
                }
                if doc.m.is_some_and(|m| m != doc.n) {
                    return Err(malformed("zoo maps have m = n"));
                }
                let name = doc.zoo.ok_or_else(|| malformed("zoo spec needs `zoo`"))?;
                zoo(&name, doc.n, &doc.params.unwrap_or_default())
            }
            other => Err(Error::MalformedSpec(format!("unknown kind `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::tensor;
    use crate::random::{gaussian_matrix, rng_from_seed};

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn unit_trace_identity(n: usize) -> CMatrix {
        CMatrix::identity(n).scale(c(1.0 / n as f64))
    }

    #[test]
    fn identity_fixes_random_matrices() {
        let mut rng = rng_from_seed(1);
        let id = LinearMap::identity(3);
        for _ in 0..5 {
            let a = gaussian_matrix(&mut rng, 3, 3);
            assert!((&id.apply(&a).unwrap() - &a).max_abs() < 1e-15);
        }
    }

    #[test]
    fn transposition_swaps_off_diagonal() {
        let (a, b, cc, d) = (c(1.0), C64::new(2.0, 1.0), c(-3.0), C64::new(0.0, 4.0));
        let x = CMatrix::from_rows(&[vec![a, b], vec![cc, d]]);
        let y = LinearMap::transposition(2).apply(&x).unwrap();
        assert_eq!(y, CMatrix::from_rows(&[vec![a, cc], vec![b, d]]));
    }

    #[test]
    fn reduction_of_identity_in_dimension_two() {
        let r = LinearMap::reduction(2);
        assert_eq!(
            r.apply(&CMatrix::identity(2)).unwrap(),
            CMatrix::identity(2)
        );
    }

    #[test]
    fn apply_checks_dimensions() {
        let r = LinearMap::reduction(2);
        assert!(matches!(
            r.apply(&CMatrix::identity(3)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn identity_choi_is_rank_one_with_trace_two() {
        let t = from_spec(&zoo("identity", 2, &[]).unwrap()).unwrap();
        let mut want = CMatrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                let e = CMatrix::unit(2, 2, i, j);
                want = &want + &tensor(&e, &e);
            }
        }
        assert_eq!(t.choi2(), &want);
        assert_eq!(t.choi2().trace(), c(2.0));
        let eig = hermitian_eig(t.choi2(), &Tolerance::default()).unwrap();
        assert_eq!(
            eig.eigenvalues.iter().filter(|l| l.abs() > 1e-12).count(),
            1
        );
    }

    #[test]
    fn kraus_identity_is_identity_map() {
        let spec = MapSpec::Kraus {
            n: 2,
            m: 2,
            operators: vec![CMatrix::identity(2)],
        };
        assert_eq!(from_spec(&spec).unwrap(), LinearMap::identity(2));
    }

    #[test]
    fn transposition_choi_is_swap() {
        let t = from_spec(&zoo("transposition", 2, &[]).unwrap()).unwrap();
        let swap = CMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
        ]);
        assert_eq!(t.choi2(), &swap);
    }

    #[test]
    fn to_kraus_of_identity_is_single_scaled_identity() {
        let k = to_kraus(&LinearMap::identity(2), &Tolerance::default()).unwrap();
        assert_eq!(k.len(), 1);
        let op = &k.operators()[0];
        // proportional to I with |phase| = 1
        assert!(op[(0, 1)].norm() < 1e-12 && op[(1, 0)].norm() < 1e-12);
        assert!((op[(0, 0)] - op[(1, 1)]).norm() < 1e-12);
        assert!((op[(0, 0)].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn to_kraus_of_complete_depolarizer_has_four_orthogonal_operators() {
        let t = LinearMap::depolarizing(2, 1.0).unwrap();
        assert!((t.choi2() - &CMatrix::identity(4).scale(c(0.5))).max_abs() < 1e-15);
        let k = to_kraus(&t, &Tolerance::default()).unwrap();
        assert_eq!(k.len(), 4);
        // eigenbasis is degenerate, so check the Gram matrix instead of E_ij / sqrt 2
        for (a, ka) in k.operators().iter().enumerate() {
            for (b, kb) in k.operators().iter().enumerate() {
                let g = crate::numerics::frobenius_inner(ka, kb).unwrap();
                let want = if a == b { 0.5 } else { 0.0 };
                assert!((g - c(want)).norm() < 1e-12);
            }
        }
        assert!((LinearMap::from_kraus(&k).choi2() - t.choi2()).max_abs() < 1e-12);
    }

    #[test]
    fn to_kraus_rejects_transposition() {
        match to_kraus(&LinearMap::transposition(2), &Tolerance::default()) {
            Err(Error::NotCompletelyPositive { eigenvalue }) => {
                assert!((eigenvalue + 1.0).abs() < 1e-12)
            }
            other => panic!("expected NotCompletelyPositive, got {other:?}"),
        }
    }

    #[test]
    fn ancilla_extend_trivial_cases() {
        let mut rng = rng_from_seed(5);
        let t = LinearMap::from_choi2(gaussian_matrix(&mut rng, 6, 6), 2, 3).unwrap();
        assert_eq!(t.ancilla_extend(1), t);
        assert_eq!(
            LinearMap::identity(2).ancilla_extend(3),
            LinearMap::identity(6)
        );
    }

    #[test]
    fn ancilla_extend_acts_blockwise() {
        let mut rng = rng_from_seed(6);
        let t = LinearMap::from_choi2(gaussian_matrix(&mut rng, 6, 6), 2, 3).unwrap();
        let a = gaussian_matrix(&mut rng, 4, 4);
        let direct = t.ancilla_extend(2).apply(&a).unwrap();
        let blockwise = t.apply_extended(2, &a).unwrap();
        assert!((&direct - &blockwise).max_abs() < 1e-13);
    }

    #[test]
    fn extended_transposition_breaks_positivity_on_max_entangled_projector() {
        let omega = crate::numerics::CVector::from_real(&[1.0, 0.0, 0.0, 1.0]);
        let p = omega.outer(&omega).scale(c(0.5));
        let out = LinearMap::transposition(2)
            .ancilla_extend(2)
            .apply(&p)
            .unwrap();
        let eig = hermitian_eig(&out, &Tolerance::default()).unwrap();
        assert!((eig.min() + 0.5).abs() < 1e-12);
    }

    #[test]
    fn zoo_examples() {
        let mut rng = rng_from_seed(7);
        let id = from_spec(&zoo("identity", 3, &[]).unwrap()).unwrap();
        let a = gaussian_matrix(&mut rng, 3, 3);
        assert!((&id.apply(&a).unwrap() - &a).max_abs() < 1e-15);

        let r = from_spec(&zoo("reduction", 3, &[]).unwrap()).unwrap();
        let out = r.apply(&CMatrix::unit(3, 3, 0, 0)).unwrap();
        assert_eq!(out, CMatrix::diag_real(&[0.0, 1.0, 1.0]));

        let d = from_spec(&zoo("depolarizing", 2, &[1.0]).unwrap()).unwrap();
        let mut a = gaussian_matrix(&mut rng, 2, 2);
        let tr = a.trace();
        a = a.scale(tr.inv());
        let out = d.apply(&a).unwrap();
        assert!((&out - &unit_trace_identity(2)).max_abs() < 1e-13);
    }

    #[test]
    fn zoo_rejects_bad_input() {
        assert!(matches!(zoo("swap", 2, &[]), Err(Error::UnknownZooName(_))));
        assert!(matches!(
            zoo("depolarizing", 2, &[1.5]),
            Err(Error::MalformedSpec(_))
        ));
        assert!(matches!(
            zoo("identity", 2, &[0.1]),
            Err(Error::MalformedSpec(_))
        ));
    }

    #[test]
    fn spec_documents_roundtrip() {
        let mut rng = rng_from_seed(8);
        let specs = [
            zoo("depolarizing", 3, &[0.25]).unwrap(),
            MapSpec::Choi2 {
                n: 2,
                m: 3,
                choi2: gaussian_matrix(&mut rng, 6, 6),
            },
            MapSpec::Kraus {
                n: 3,
                m: 2,
                operators: vec![
                    gaussian_matrix(&mut rng, 2, 3),
                    gaussian_matrix(&mut rng, 2, 3),
                ],
            },
        ];
        for spec in specs {
            let back = MapSpec::from_json(&spec.to_json()).unwrap();
            assert_eq!(back, spec);
        }
    }

    #[test]
    fn malformed_documents_are_rejected() {
        let cases = [
            r#"{"kind":"choi2","n":2,"m":2,"choi2":[[1,0]]}"#,
            r#"{"kind":"kraus","n":2,"m":2,"kraus":[]}"#,
            r#"{"kind":"zoo","n":2,"m":3,"zoo":"identity"}"#,
            r#"{"kind":"magic","n":2}"#,
            r#"{"kind":"zoo","n":2,"zoo":"identity","extra":1}"#,
            r#"not json"#,
        ];
        for text in cases {
            assert!(MapSpec::from_json(text).is_err(), "accepted {text}");
        }
        assert!(matches!(
            MapSpec::from_json(r#"{"kind":"zoo","n":2,"zoo":"nope"}"#),
            Err(Error::UnknownZooName(_))
        ));
    }
}
