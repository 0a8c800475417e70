//! The determinant identity `|X X̄ᵀ|_p = Π |C_S(s)|`, its group-case
//! refinement and induction certificates between nested fusion systems.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::det::det_int;
use crate::algebra::matrix::RowSolver;
use crate::algebra::{det_exact, p_part, AlgebraError, CyclotomicInt, IntMatrix};
use crate::character::{dixon_character_table, CharacterError, ClassFunction};
use crate::fusion::{FusionData, FusionError};
use crate::group::{class_fusion_map, sylow_subgroup, FiniteGroup, GroupError};
use crate::stable::{
    decomposition_matrix, is_stable, stable_character_basis, Ambient, StableError, StableLattice,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Stable(#[from] StableError),
    #[error("det(X X̄ᵀ) = {0} is not a nonnegative rational integer")]
    NonIntegralDeterminant(String),
    #[error("basis has {rows} rows but F has {k} classes")]
    BasisSize { rows: usize, k: usize },
}

/// Decimal-string serde for big integers.
pub mod decimal {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// `X[i][j] = b_i(s_j)` for a stable basis `b` and fully centralised representatives `s`.
#[derive(Clone, Debug)]
pub struct CharacterTableMatrix {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    /// Fusion column used for each matrix column.
    pub columns: Vec<usize>,
    pub values: Vec<Vec<CyclotomicInt>>,
}

impl CharacterTableMatrix {
    pub fn size(&self) -> usize {
        self.values.len()
    }

    /// `X · conj(X)ᵀ`.
    pub fn gram(&self) -> Vec<Vec<CyclotomicInt>> {
        let n = self.size();
        let conj: Vec<Vec<CyclotomicInt>> = self
            .values
            .iter()
            .map(|r| r.iter().map(CyclotomicInt::conj).collect())
            .collect();
        let mut m = vec![Vec::with_capacity(n); n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = CyclotomicInt::zero(self.values[i][0].order());
                for (a, b) in self.values[i].iter().zip(&conj[j]) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                m[i].push(acc);
            }
        }
        m
    }

    /// `conj(X)ᵀ · X`, the column Gram matrix.
    pub fn column_gram(&self) -> Vec<Vec<CyclotomicInt>> {
        let n = self.size();
        let order = self.values.first().map_or(1, |r| r[0].order());
        let mut m = vec![vec![CyclotomicInt::zero(order); n]; n];
        for (s, row) in m.iter_mut().enumerate() {
            for (t, entry) in row.iter_mut().enumerate() {
                for r in &self.values {
                    if !r[s].is_zero() && !r[t].is_zero() {
                        *entry += &(&r[s].conj() * &r[t]);
                    }
                }
            }
        }
        m
    }

    pub fn det(&self) -> Result<CyclotomicInt, VerifyError> {
        let unit = CyclotomicInt::one(self.values.first().map_or(1, |r| r[0].order()));
        Ok(det_exact(&self.values, &unit)?)
    }
}

/// Evaluates the rows of `basis` (ambient coordinates) at the fully
/// centralised representatives of `fusion`, or at `columns` if given.
pub fn character_table_matrix(
    ambient: &Ambient,
    basis: &IntMatrix,
    fusion: &FusionData,
    columns: Option<&[usize]>,
) -> CharacterTableMatrix {
    let cols: Vec<usize> = match columns {
        Some(c) => c.to_vec(),
        None => fusion.classes().iter().map(|c| c.rep).collect(),
    };
    let funcs: Vec<ClassFunction> = basis.rows_iter().map(|r| ambient.evaluate(r)).collect();
    CharacterTableMatrix {
        row_labels: basis
            .rows_iter()
            .map(|r| coordinate_label(&ambient.labels, r))
            .collect(),
        col_labels: cols.iter().map(|&c| fusion.columns[c].label.clone()).collect(),
        values: funcs
            .iter()
            .map(|f| cols.iter().map(|&c| f.values[c].clone()).collect())
            .collect(),
        columns: cols,
    }
}

/// Renders `Σ x_i label_i`, for example `X.1+2*X.3`.
pub fn coordinate_label(labels: &[String], coords: &[BigInt]) -> String {
    let mut out = String::new();
    for (c, l) in coords.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let a = c.abs();
        if !a.is_one() {
            out.push_str(&format!("{a}*"));
        }
        out.push_str(l);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    Counterexample,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepInfo {
    pub word: String,
    pub order: Option<u64>,
    #[serde(rename = "cS")]
    pub cs: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub input: String,
    pub p: u64,
    #[serde(rename = "k_F")]
    pub k_f: usize,
    pub reps: Vec<RepInfo>,
    #[serde(with = "decimal")]
    pub lhs_det: BigInt,
    #[serde(with = "decimal")]
    pub lhs_p_part: BigInt,
    #[serde(with = "decimal")]
    pub rhs_product: BigInt,
    pub verdict: Verdict,
    pub saturation_certified: bool,
    pub note: String,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Verified && self.checks.iter().all(|c| c.passed)
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: p = {}, k(F) = {}, det(X X̄ᵀ) = {}, p-part = {}, Π|C_S(s)| = {}, verdict = {}{}",
            self.input,
            self.p,
            self.k_f,
            self.lhs_det,
            self.lhs_p_part,
            self.rhs_product,
            match self.verdict {
                Verdict::Verified => "verified",
                Verdict::Counterexample => "counterexample",
                Verdict::Error => "error",
            },
            if self.note.is_empty() {
                String::new()
            } else {
                format!(" ({})", self.note)
            }
        )
    }
}

/// `det(X X̄ᵀ)`, asserted to be a nonnegative rational integer.
pub fn gram_determinant(x: &CharacterTableMatrix) -> Result<BigInt, VerifyError> {
    let m = x.gram();
    let integral: Option<Vec<Vec<BigInt>>> = m
        .iter()
        .map(|r| r.iter().map(|v| v.as_integer().cloned()).collect())
        .collect();
    let det_m = match integral {
        Some(rows) => det_int(&IntMatrix::from_rows_with_cols(&rows, x.size()))?,
        None => {
            let unit = CyclotomicInt::one(m[0][0].order());
            let d = det_exact(&m, &unit)?;
            d.as_integer()
                .cloned()
                .ok_or_else(|| VerifyError::NonIntegralDeterminant(d.to_string()))?
        }
    };
    if det_m.is_negative() {
        return Err(VerifyError::NonIntegralDeterminant(det_m.to_string()));
    }
    Ok(det_m)
}

/// Runs the determinant comparison for a given stable basis.
pub fn verify_with_basis(
    label: &str,
    fusion: &FusionData,
    ambient: &Ambient,
    basis: &IntMatrix,
    columns: Option<&[usize]>,
) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    if basis.nrows() != fusion.k() {
        return Err(VerifyError::BasisSize {
            rows: basis.nrows(),
            k: fusion.k(),
        });
    }
    let x = character_table_matrix(ambient, basis, fusion, columns);
    let lhs = gram_determinant(&x)?;
    let rhs = fusion.centralizer_product();
    let reps = fusion
        .classes()
        .iter()
        .map(|c| RepInfo {
            word: fusion.columns[c.rep].label.clone(),
            order: fusion.columns[c.rep].rep_order,
            cs: c.cs_order,
        })
        .collect();
    let (lhs_p, verdict, note) = if lhs.is_zero() {
        (
            BigInt::zero(),
            Verdict::Error,
            "X is singular: the basis is not independent".to_string(),
        )
    } else {
        let lp = p_part(&lhs, fusion.p)?;
        if lp == rhs {
            (lp, Verdict::Verified, String::new())
        } else if fusion.saturation_certified {
            (lp, Verdict::Counterexample, "p-parts differ".to_string())
        } else {
            (
                lp,
                Verdict::Counterexample,
                "saturation not certified: a counterexample to the identity, not to the conjecture"
                    .to_string(),
            )
        }
    };
    Ok(VerificationReport {
        input: label.to_string(),
        p: fusion.p,
        k_f: fusion.k(),
        reps,
        lhs_det: lhs,
        lhs_p_part: lhs_p,
        rhs_product: rhs,
        verdict,
        saturation_certified: fusion.saturation_certified,
        note,
        checks: Vec::new(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Computes `Ch(S)^F` and compares `|X X̄ᵀ|_p` with `Π |C_S(s)|`.
pub fn verify_conjecture(
    label: &str,
    fusion: &FusionData,
    ambient: &Ambient,
) -> Result<(VerificationReport, StableLattice), VerifyError> {
    let start = Instant::now();
    let lattice = stable_character_basis(ambient, fusion)?;
    let mut report = verify_with_basis(label, fusion, ambient, &lattice.basis, None)?;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok((report, lattice))
}

/// Extra data from the group case.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupCaseReport {
    pub report: VerificationReport,
    pub group_order: u64,
    pub sylow_order: u64,
    #[serde(with = "decimal")]
    pub det_c: BigInt,
    #[serde(with = "decimal")]
    pub centralizer_product_g: BigInt,
}

/// `F = F_S(G)` for a Sylow `S`: the determinant identity, `det(X X̄ᵀ)·det C =
/// Π |C_G(s)|` and `gcd(det C, p) = 1`.
pub fn verify_group_case(label: &str, g: &FiniteGroup, p: u64) -> Result<GroupCaseReport, VerifyError> {
    let start = Instant::now();
    let s = Arc::new(sylow_subgroup(g, p)?);
    let fusion = FusionData::from_group(g, s.clone(), p)?;
    let irr_s = dixon_character_table(&s)?;
    let irr_g = dixon_character_table(g)?;
    let ambient = Ambient::from_table(&irr_s);
    let (mut report, lattice) = verify_conjecture(label, &fusion, &ambient)?;
    let map = class_fusion_map(g, &s)?;
    let dec = decomposition_matrix(&irr_g, &irr_s, &map, &lattice)?;
    let gc = g.classes();
    let cg_product = fusion
        .classes()
        .iter()
        .fold(BigInt::one(), |acc, c| acc * BigInt::from(gc.get(map[c.rep]).centralizer_order));
    report.checks.push(Check::new(
        "restrictions_in_lattice",
        dec.integral,
        "every χ|_S is an integral combination of the stable basis",
    ));
    let lhs_times_c = &report.lhs_det * &dec.det_c;
    report.checks.push(Check::new(
        "group_identity",
        lhs_times_c == cg_product,
        format!("det(X X̄ᵀ)·det C = {lhs_times_c}, Π|C_G(s)| = {cg_product}"),
    ));
    report.checks.push(Check::new(
        "det_c_coprime",
        dec.det_c.gcd(&BigInt::from(p)).is_one(),
        format!("det C = {}", dec.det_c),
    ));
    let dx = dec.d.mul(&lattice.basis)?;
    let reproduces = irr_g.irreducibles.iter().enumerate().all(|(i, chi)| {
        let f = ambient.evaluate(dx.row(i));
        map.iter().enumerate().all(|(c, &gcl)| (&f.values[c] - &chi.values[gcl]).is_zero())
    });
    report.checks.push(Check::new(
        "dx_reproduces_values",
        reproduces,
        "D·X equals the restricted values",
    ));
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(GroupCaseReport {
        report,
        group_order: g.order(),
        sylow_order: s.order(),
        det_c: dec.det_c,
        centralizer_product_g: cg_product,
    })
}

/// Input to the induction criterion for `N ⊊ F`.
#[derive(Clone, Debug)]
pub struct InductionCertificate {
    pub label: String,
    pub base: FusionData,
    pub target: FusionData,
    /// `B_N` in ambient coordinates.
    pub basis_n: IntMatrix,
    pub labels_n: Vec<String>,
    /// `B_F` as integer combinations of `B_N`.
    pub basis_f: IntMatrix,
    pub labels_f: Vec<String>,
    /// Index of `η` in `B_N`.
    pub eta: usize,
    pub u: String,
    pub z: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateReport {
    pub label: String,
    pub checks: Vec<Check>,
    pub det_n: String,
    pub det_f: String,
    /// The bijection `Φ` as pairs (index in `B_N`, index in `B_F`).
    pub phi: Vec<(usize, usize)>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect()
    }
}

/// Checks each hypothesis of the induction criterion separately and, when the
/// hypotheses hold, the resulting determinant relation and basis property.
pub fn check_induction_certificate(
    cert: &InductionCertificate,
    ambient: &Ambient,
) -> Result<CertificateReport, VerifyError> {
    let n_fus = &cert.base;
    let f_fus = &cert.target;
    let p = f_fus.p;
    let mut checks = Vec::new();

    let lattice_n = stable_character_basis(ambient, n_fus)?;
    checks.push(Check::new(
        "base_basis",
        lattice_n.is_basis(&cert.basis_n)?,
        "B_N is a basis of Ch(S)^N",
    ));

    checks.push(Check::new(
        "class_count",
        f_fus.k() + 1 == n_fus.k(),
        format!("k(F) = {}, k(N) = {}", f_fus.k(), n_fus.k()),
    ));

    let cu = n_fus.column_of_word(&cert.u)?;
    let cz = n_fus.column_of_word(&cert.z)?;
    let s_order = n_fus.s_order;
    checks.push(Check::new(
        "z_central",
        n_fus.columns[cz].cs_order == s_order && n_fus.columns[cz].size == 1,
        format!("|C_S(z)| = {}", n_fus.columns[cz].cs_order),
    ));
    checks.push(Check::new(
        "u_z_fusion",
        n_fus.class_of_column(cu) != n_fus.class_of_column(cz)
            && f_fus.class_of_column(cu) == f_fus.class_of_column(cz),
        "u and z are fused in F but not in N",
    ));
    checks.push(Check::new(
        "centralizer_u",
        n_fus.columns[cu].cs_order == p * p,
        format!("|C_S(u)| = {}", n_fus.columns[cu].cs_order),
    ));

    // B_F in ambient coordinates.
    let bf_amb = cert.basis_f.mul(&cert.basis_n)?;
    let kf = f_fus.k();
    checks.push(Check::new(
        "b_f_size",
        cert.basis_f.nrows() == kf,
        format!("|B_F| = {}", cert.basis_f.nrows()),
    ));
    checks.push(Check::new(
        "b_f_independent",
        bf_amb.rank() == cert.basis_f.nrows(),
        "B_F is linearly independent",
    ));
    let unstable: Vec<usize> = (0..bf_amb.nrows())
        .filter(|&i| !is_stable(&ambient.evaluate(bf_amb.row(i)), f_fus))
        .collect();
    checks.push(Check::new(
        "b_f_stable",
        unstable.is_empty(),
        if unstable.is_empty() {
            "every member of B_F is F-stable".to_string()
        } else {
            format!("unstable members: {unstable:?}")
        },
    ));

    let phi = multiplicity_one_matching(&cert.basis_f, cert.eta);
    checks.push(Check::new(
        "phi_bijection",
        phi.is_some(),
        "bijection B_N \\ {η} → B_F with multiplicity-one coefficients",
    ));

    let eta = ambient.evaluate(cert.basis_n.row(cert.eta));
    let diff = &eta.values[cu] - &eta.values[cz];
    let pp = BigInt::from(p);
    let diff_ok = diff.as_integer().is_some_and(|d| d.abs() == pp);
    checks.push(Check::new(
        "eta_difference",
        diff_ok,
        format!("η(u) − η(z) = {diff}"),
    ));

    let lattice_f = stable_character_basis(ambient, f_fus)?;
    let containment = eta_containment(&lattice_n, &lattice_f, cert.basis_n.row(cert.eta))?;
    checks.push(Check::new(
        "containment",
        containment.0,
        containment.1,
    ));

    let mut det_n = String::new();
    let mut det_f = String::new();
    if checks.iter().all(|c| c.passed) {
        let xn = character_table_matrix(ambient, &cert.basis_n, n_fus, None);
        let xf = character_table_matrix(ambient, &bf_amb, f_fus, None);
        let dn = xn.det()?;
        let df = xf.det()?;
        let scaled = df.scale(&pp);
        let rel = (&dn - &scaled).is_zero() || (&dn + &scaled).is_zero();
        det_n = dn.to_string();
        det_f = df.to_string();
        checks.push(Check::new(
            "determinant_relation",
            rel,
            format!("det X_N = {det_n}, det X_F = {det_f}"),
        ));
        checks.push(Check::new(
            "b_f_basis",
            lattice_f.is_basis(&bf_amb)?,
            "B_F is a basis of Ch(S)^F",
        ));
    }
    Ok(CertificateReport {
        label: cert.label.clone(),
        checks,
        det_n,
        det_f,
        phi: phi.unwrap_or_default(),
    })
}

/// A perfect matching between `B_N \ {η}` and the rows of `coeffs` using
/// entries equal to 1.
fn multiplicity_one_matching(coeffs: &IntMatrix, eta: usize) -> Option<Vec<(usize, usize)>> {
    let rows = coeffs.nrows();
    let cols: Vec<usize> = (0..coeffs.ncols()).filter(|&c| c != eta).collect();
    if cols.len() != rows {
        return None;
    }
    let one = BigInt::one();
    let mut row_of: Vec<Option<usize>> = vec![None; cols.len()];
    fn augment(
        r: usize,
        coeffs: &IntMatrix,
        cols: &[usize],
        one: &BigInt,
        seen: &mut [bool],
        row_of: &mut [Option<usize>],
    ) -> bool {
        for (ci, &c) in cols.iter().enumerate() {
            if seen[ci] || coeffs.get(r, c) != one {
                continue;
            }
            seen[ci] = true;
            if row_of[ci].is_none_or(|r2| augment(r2, coeffs, cols, one, seen, row_of)) {
                row_of[ci] = Some(r);
                return true;
            }
        }
        false
    }
    for r in 0..rows {
        let mut seen = vec![false; cols.len()];
        if !augment(r, coeffs, &cols, &one, &mut seen, &mut row_of) {
            return None;
        }
    }
    let mut out: Vec<(usize, usize)> = cols
        .iter()
        .zip(&row_of)
        .map(|(&c, r)| (c, r.expect("perfect matching")))
        .collect();
    out.sort_unstable();
    Some(out)
}

/// Whether `Ch(S)^F ⊕ ⟨η⟩` is a direct sum of full rank inside `Ch(S)^N`.
/// The index is reported; it is 1 whenever `η(u) − η(z) = ±p`, since
/// `Ch(S)^F` is the kernel of `x ↦ x(u) − x(z)` on `Ch(S)^N`.
fn eta_containment(
    lattice_n: &StableLattice,
    lattice_f: &StableLattice,
    eta: &[BigInt],
) -> Result<(bool, String), VerifyError> {
    let mut rows: Vec<Vec<BigInt>> = lattice_f.basis.to_rows();
    rows.push(eta.to_vec());
    let sum = IntMatrix::from_rows_with_cols(&rows, lattice_n.ambient.dim());
    if sum.rank() != rows.len() || rows.len() != lattice_n.rank {
        return Ok((false, "Ch(S)^F + ⟨η⟩ is not a direct sum of full rank".into()));
    }
    let solver = RowSolver::new(&lattice_n.basis)?;
    let mut coords = Vec::with_capacity(rows.len());
    for r in &rows {
        match solver.solve(r) {
            Some(c) => coords.push(c),
            None => return Ok((false, "Ch(S)^F + ⟨η⟩ is not contained in Ch(S)^N".into())),
        }
    }
    let index = det_int(&IntMatrix::from_rows_with_cols(&coords, lattice_n.rank))?.abs();
    Ok((true, format!("index {index}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupElement;

    fn perm_group(gens: &[&[usize]]) -> FiniteGroup {
        let gens: Vec<GroupElement> = gens.iter().map(|g| GroupElement::permutation(g).unwrap()).collect();
        FiniteGroup::generate(gens[0].kind(), gens).unwrap()
    }

    #[test]
    fn c8_example_counterexample() {
        let s = Arc::new(perm_group(&[&[1, 2, 3, 4, 5, 6, 7, 0]]));
        let t = dixon_character_table(&s).unwrap();
        let base = FusionData::of_group_itself(s, 2).unwrap();
        let (f, _) = base.apply_merges(&[("g0^2".into(), "g0^6".into())]).unwrap();
        let (report, lattice) = verify_conjecture("C8", &f, &Ambient::from_table(&t)).unwrap();
        assert_eq!(lattice.rank, 7);
        assert_eq!(report.lhs_det, BigInt::from(1u64 << 22));
        assert_eq!(report.rhs_product, BigInt::from(1u64 << 21));
        assert_eq!(report.verdict, Verdict::Counterexample);
    }

    #[test]
    fn symmetric_four_at_two() {
        let g = perm_group(&[&[1, 2, 3, 0], &[1, 0, 2, 3]]);
        let r = verify_group_case("S4", &g, 2).unwrap();
        assert!(r.report.passed(), "{:?}", r.report);
    }

    #[test]
    fn trivial_sylow() {
        let g = perm_group(&[&[1, 2, 0]]);
        let r = verify_group_case("C3", &g, 2).unwrap();
        assert_eq!(r.report.k_f, 1);
        assert!(r.report.passed());
    }

    #[test]
    fn report_json_roundtrip() {
        let g = perm_group(&[&[1, 2, 0], &[1, 0, 2]]);
        let r = verify_group_case("S3", &g, 3).unwrap();
        let s = serde_json::to_string(&r.report).unwrap();
        assert!(s.contains("\"lhs_det\":\""));
        let back: VerificationReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r.report);
    }
}
