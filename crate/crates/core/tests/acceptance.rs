//! One pass/fail line per acceptance criterion, written straight to stderr so
//! the lines appear even when test output is captured.

use std::collections::BTreeSet;
use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fuschar::algebra::{lattice_volume_index, IntMatrix};
use fuschar::character::{dixon_character_table, induce_character, restrict_character};
use fuschar::constructions::exotic::{verify_exotic, ExoticName};
use fuschar::constructions::tables::{
    reproduce_orbit_lemma, reproduce_table1, reproduce_table2, reproduce_table3, reproduce_table4, reproduce_table5,
    reproduce_table6, TableReport,
};
use fuschar::constructions::{build_group, count_n_v_psi, ConstructionParams, GammaVariant, GroupKind};
use fuschar::corpus::builtin_group;
use fuschar::fusion::FusionData;
use fuschar::group::{class_fusion_map, sylow_subgroup, FiniteGroup};
use fuschar::reproduce::{example27, transitive_case};
use fuschar::stable::{indecomposables_bounded, stable_character_basis, Ambient};
use fuschar::verify::{character_table_matrix, verify_group_case, verify_with_basis, Verdict};

type Outcome = Result<String, String>;

fn line(n: u32, outcome: &Outcome, elapsed: Duration) {
    let (tag, detail) = match outcome {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    let mut err = std::io::stderr().lock();
    writeln!(err, "criterion {n:>2}: {tag} ({:.1} s) {detail}", elapsed.as_secs_f64()).ok();
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let r = example27().map_err(e)?;
    let v = &r.verification;
    ensure(r.rank == 7, || format!("rank {}", r.rank))?;
    ensure(r.listed_basis_spans, || "listed basis does not span".into())?;
    ensure(v.lhs_det == BigInt::one() << 22, || format!("lhs {}", v.lhs_det))?;
    ensure(v.rhs_product == BigInt::one() << 21, || format!("rhs {}", v.rhs_product))?;
    ensure(v.verdict == Verdict::Counterexample && !v.saturation_certified, || {
        format!("verdict {:?}", v.verdict)
    })?;
    ensure(v.note.contains("saturation not certified"), || v.note.clone())?;
    ensure(start.elapsed() < Duration::from_secs(1), || "slower than 1 s".into())?;
    Ok("C8 with a^2 ~ a^6: rank 7, det = 2^22, Π = 2^21, counterexample (saturation not certified)".into())
}

/// `conj(X)ᵀ X = diag(|C_S(s)|)` and `det(X X̄ᵀ) = Π |C_S(s)|` for `B = Irr(S)`.
fn column_orthogonality(label: &str, s: Arc<FiniteGroup>, p: u64) -> Result<(), String> {
    let fusion = FusionData::of_group_itself(s.clone(), p).map_err(e)?;
    let ambient = Ambient::from_table(&dixon_character_table(&s).map_err(e)?);
    let basis = IntMatrix::identity(ambient.dim());
    let x = character_table_matrix(&ambient, &basis, &fusion, None);
    let g = x.column_gram();
    let cs: Vec<u64> = fusion.classes().iter().map(|c| c.cs_order).collect();
    for (i, row) in g.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let want = if i == j { cs[i] as i64 } else { 0 };
            ensure(v.as_i64() == Some(want), || format!("{label}: entry ({i},{j}) = {v}"))?;
        }
    }
    let r = verify_with_basis(label, &fusion, &ambient, &basis, None).map_err(e)?;
    ensure(r.lhs_det == fusion.centralizer_product() && r.verdict == Verdict::Verified, || {
        format!("{label}: det {} vs {}", r.lhs_det, r.rhs_product)
    })
}

fn prime_power(n: u64) -> Option<u64> {
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

fn criterion2() -> Outcome {
    let mut names: Vec<String> = vec!["Q8".into()];
    names.extend([4, 8, 16, 32, 64].iter().map(|n| format!("D{n}")));
    names.extend((2..=64u64).filter(|&n| prime_power(n).is_some()).map(|n| format!("C{n}")));
    for name in &names {
        let g = builtin_group(name).map_err(e)?;
        let p = prime_power(g.order()).ok_or_else(|| format!("{name} is not a p-group"))?;
        column_orthogonality(name, Arc::new(g), p)?;
    }
    for p in [3, 5] {
        let (_, s) = build_group(&ConstructionParams::new(p).map_err(e)?, GroupKind::Sylow).map_err(e)?;
        column_orthogonality(&format!("V⋊U at p = {p}"), s, p)?;
    }
    Ok(format!("{} p-groups plus V⋊U at p = 3, 5: column Gram matrix is diag(|C_S(s)|)", names.len() + 2))
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn criterion3() -> Outcome {
    let start = Instant::now();
    let mut names: Vec<String> = ["S3", "S4", "S5", "S6", "A4", "A5", "SL2(3)", "GL2(3)"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    names.extend((2..=32).map(|n| format!("D{}", 2 * n)));
    let mut runs = 0;
    for name in &names {
        let g = builtin_group(name).map_err(e)?;
        for p in prime_divisors(g.order()) {
            let r = verify_group_case(name, &g, p).map_err(e)?;
            let failed: Vec<&str> = r.report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
            ensure(r.report.passed(), || format!("{name} at p = {p}: {} {failed:?}", r.report.summary()))?;
            ensure(r.det_c.clone() * &r.report.lhs_det == r.centralizer_product_g, || {
                format!("{name} at p = {p}: identity fails")
            })?;
            runs += 1;
        }
    }
    ensure(start.elapsed() < Duration::from_secs(300), || "slower than 5 min".into())?;
    Ok(format!("{runs} (group, prime) cases: p-parts agree, det(XX̄ᵀ)·det C = Π|C_G(s)|, p ∤ det C"))
}

fn criterion4() -> Outcome {
    let r = transitive_case("Heis7", 7).map_err(e)?;
    ensure(r.x == vec![vec![1, 1], vec![342, -1]], || format!("X = {:?}", r.x))?;
    let seven_six = BigInt::from(7u64.pow(6));
    ensure(r.verification.lhs_det == seven_six && r.verification.rhs_product == seven_six, || {
        r.verification.summary()
    })?;
    ensure(r.reproduces(), || r.verification.summary())?;
    Ok("7^{1+2}, transitive: X = [[1,1],[342,-1]], |det X|² = 7^6 = 7^3·7^3".into())
}

fn table_ok(r: &TableReport) -> Result<(), String> {
    ensure(r.matched(), || format!("{} {:?}", r.summary(), r.discrepancies))
}

fn criterion5() -> Outcome {
    let cases = [
        (3, GammaVariant::Full),
        (5, GammaVariant::Full),
        (7, GammaVariant::Full),
        (3, GammaVariant::Index2),
        (7, GammaVariant::Index2),
        (5, GammaVariant::Star4),
    ];
    for (p, v) in cases {
        let r = reproduce_orbit_lemma(p, v).map_err(e)?;
        table_ok(&r)?;
        ensure(r.rows_matched == r.rows_expected && r.rows_expected > 0, || r.summary())?;
    }
    Ok("Γ-orbit sizes and stabiliser orders: Full at p = 3, 5, 7; Γ_(2) at p = 3, 7; Γ*_(4) at p = 5".into())
}

fn criterion6() -> Outcome {
    // Independent literal values at p = 5, rows v1, v2, v1 + εv3.
    let literal = [[20, 40, 0], [40, 16, 24], [0, 24, 36]];
    let v = [[1, 0, 0], [0, 1, 0], [1, 0, 2]];
    let f = [[1, 0, 0], [0, 1, 0], [1, 0, 2]];
    for i in 0..3 {
        for j in 0..3 {
            let got = count_n_v_psi(5, v[i], f[j]);
            ensure(got == literal[i][j], || format!("n at p = 5, ({i},{j}) = {got}"))?;
        }
    }
    let mut slow = Duration::ZERO;
    for p in [3, 5, 7] {
        let start = Instant::now();
        let r = reproduce_table3(p).map_err(e)?;
        if p == 7 {
            slow = start.elapsed();
        }
        table_ok(&r)?;
    }
    ensure(slow < Duration::from_secs(10), || format!("p = 7 took {slow:?}"))?;
    Ok("all nine n_{v,ψ} match at p = 3, 5, 7 (p = 5: 20, 40, 0, 40, 16, 24, 0, 24, 36)".into())
}

/// Table 2 differences that are known properties of the published statement:
/// the stated class count, and rows that do not exist at `p = 3`.
fn table2_expected_discrepancy(p: u64, row: &str) -> bool {
    row == "class count" || (p == 3 && (row.starts_with("theta_(p+1)") || row.starts_with("chi(psi_010,rho_2)")))
}

fn criterion7() -> Outcome {
    table_ok(&reproduce_table1(5).map_err(e)?.0)?;
    let mut notes = Vec::new();
    for p in [3, 5] {
        let (r, _, _) = reproduce_table2(p).map_err(e)?;
        ensure(r.checks.iter().all(|c| c.passed), || r.summary())?;
        let unexpected: Vec<_> = r
            .discrepancies
            .iter()
            .filter(|d| !table2_expected_discrepancy(p, &d.row))
            .collect();
        ensure(unexpected.is_empty(), || format!("table 2 at p = {p}: {unexpected:?}"))?;
        notes.push(format!("table 2 at p = {p}: {}/{} rows", r.rows_matched, r.rows_expected));
        table_ok(&reproduce_table4(p).map_err(e)?)?;
    }
    table_ok(&reproduce_table5().map_err(e)?.0)?;
    let t6 = reproduce_table6();
    table_ok(&t6)?;
    for name in ["distinct_roots", "vieta_sum", "vieta_product"] {
        ensure(t6.checks.iter().any(|c| c.name == name && c.passed), || format!("table 6 lacks {name}"))?;
    }
    Ok(format!(
        "tables 1 (p = 5), 4 (p = 3, 5), 5, 6 matched; {}; class count differs as reported",
        notes.join(", ")
    ))
}

fn criterion8() -> Outcome {
    let p3 = [ExoticName::GPrune, ExoticName::OpF1, ExoticName::F1, ExoticName::F3492];
    let p5 = [
        ExoticName::GPrune,
        ExoticName::OpF1,
        ExoticName::F1,
        ExoticName::F547(2),
        ExoticName::F547(4),
        ExoticName::F547(6),
        ExoticName::F547(9),
        ExoticName::F547(5),
        ExoticName::F547(7),
        ExoticName::F547(8),
        ExoticName::F547(10),
    ];
    let mut timings = Vec::new();
    for (p, names, limit) in [(3, &p3[..], 60), (5, &p5[..], 900)] {
        let start = Instant::now();
        let mut certs = 0;
        for &name in names {
            let r = verify_exotic(name, p).map_err(e)?;
            ensure(r.passed(), || r.summary())?;
            certs += r.certificates.len();
        }
        let t = start.elapsed();
        ensure(t < Duration::from_secs(limit), || format!("p = {p} suite took {t:?}"))?;
        timings.push(format!("p = {p}: {} systems, {certs} certificates, {:.1} s", names.len(), t.as_secs_f64()));
    }
    Ok(timings.join("; "))
}

/// A random unimodular matrix from elementary row operations.
fn unimodular(n: usize, rng: &mut ChaCha8Rng) -> IntMatrix {
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect();
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            if rng.gen_bool(0.5) {
                rows[i].iter_mut().for_each(|x| *x = -&*x);
            } else {
                rows.swap(i, (i + 1) % n);
            }
            continue;
        }
        let c = BigInt::from(rng.gen_range(-2i64..=2));
        let add: Vec<BigInt> = rows[j].iter().map(|x| x * &c).collect();
        rows[i].iter_mut().zip(add).for_each(|(x, a)| *x += a);
    }
    IntMatrix::from_rows_with_cols(&rows, n)
}

fn criterion9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    // Frobenius reciprocity on random subgroup pairs.
    let mut pairs = 0;
    for name in ["S4", "A5", "GL2(3)", "D16", "SL2(3)"] {
        let g = builtin_group(name).map_err(e)?;
        let irr_g = dixon_character_table(&g).map_err(e)?;
        for _ in 0..3 {
            let gens = (0..rng.gen_range(1..=2))
                .map(|_| g.element(rng.gen_range(0..g.order() as usize)).clone())
                .collect();
            let h = g.subgroup(gens).map_err(e)?;
            let irr_h = dixon_character_table(&h).map_err(e)?;
            let map = class_fusion_map(&g, &h).map_err(e)?;
            for theta in &irr_h.irreducibles {
                let ind = induce_character(theta, &h, &g).map_err(e)?;
                for chi in &irr_g.irreducibles {
                    let lhs = irr_g.inner_product_int(&ind, chi).map_err(e)?;
                    let rhs = irr_h.inner_product_int(theta, &restrict_character(chi, &map)).map_err(e)?;
                    ensure(lhs == rhs, || format!("{name}: reciprocity fails"))?;
                }
            }
            pairs += 1;
        }
    }
    // Basis and representative independence, integrality.
    let mut instances = 0;
    for (name, merges) in [
        ("C8", vec![("g0^2", "g0^6")]),
        ("D16", vec![]),
        ("Q8", vec![("g0", "g1")]),
        ("C9", vec![("g0^3", "g0^6")]),
    ] {
        let s = Arc::new(builtin_group(name).map_err(e)?);
        let p = prime_power(s.order()).expect("p-group");
        let merges: Vec<(String, String)> = merges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        let fusion = FusionData::of_group_itself(s.clone(), p).map_err(e)?.apply_merges(&merges).map_err(e)?.0;
        let ambient = Ambient::from_table(&dixon_character_table(&s).map_err(e)?);
        let lattice = stable_character_basis(&ambient, &fusion).map_err(e)?;
        let base = verify_with_basis(name, &fusion, &ambient, &lattice.basis, None).map_err(e)?;
        for _ in 0..50 {
            let u = unimodular(lattice.rank, &mut rng);
            let b = u.mul(&lattice.basis).map_err(e)?;
            let r = verify_with_basis(name, &fusion, &ambient, &b, None).map_err(e)?;
            ensure(r.lhs_det == base.lhs_det, || format!("{name}: det changed under U"))?;
            let cols: Vec<usize> = fusion
                .classes()
                .iter()
                .map(|c| c.columns[rng.gen_range(0..c.columns.len())])
                .collect();
            let r = verify_with_basis(name, &fusion, &ambient, &lattice.basis, Some(&cols)).map_err(e)?;
            ensure(r.lhs_det == base.lhs_det, || format!("{name}: det changed under shuffle"))?;
            ensure(r.lhs_det >= BigInt::zero(), || "negative determinant".into())?;
        }
        instances += 1;
    }
    // Index against Smith invariants for random sublattice pairs.
    for _ in 0..100 {
        let r = rng.gen_range(1..=5);
        let random = |rng: &mut ChaCha8Rng| loop {
            let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..r).map(|_| rng.gen_range(-4..=4)).collect()).collect();
            let m = IntMatrix::from_rows_with_cols(&rows, r);
            if m.rank() == r {
                return m;
            }
        };
        let l = random(&mut rng);
        let t = random(&mut rng);
        let m = t.mul(&l).map_err(e)?;
        let idx = lattice_volume_index(&l, &m).map_err(e)?;
        let det_t = fuschar::algebra::det::det_int(&t).map_err(e)?;
        ensure(idx.index == num_traits::Signed::abs(&det_t), || "index differs from |det T|".into())?;
        ensure(idx.vol_m == &idx.index * &idx.vol_l, || "Vol(M) ≠ |L:M|·Vol(L)".into())?;
    }
    Ok(format!(
        "reciprocity on {pairs} subgroup pairs; 50 unimodular transforms and shuffles on {instances} systems; 100 sublattice pairs"
    ))
}

/// `χ|_S = e·(sum of a G-orbit on Irr(S))`; the orbit sum is `χ|_S / e`.
fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |a, x| num_integer::Integer::gcd(&a, x));
    v.iter().map(|x| x / &g).collect()
}

fn criterion10() -> Outcome {
    let mut cases: Vec<(String, u64)> = vec![("S3".into(), 3), ("A4".into(), 2)];
    for n in 3..=32u64 {
        for p in prime_divisors(n).into_iter().filter(|&p| p > 2) {
            cases.push((format!("D{}", 2 * n), p));
        }
    }
    let mut literal_fails = Vec::new();
    for (name, p) in &cases {
        let (name, p) = (name.as_str(), *p);
        let g = builtin_group(name).map_err(e)?;
        let s = Arc::new(sylow_subgroup(&g, p).map_err(e)?);
        let fusion = FusionData::from_group(&g, s.clone(), p).map_err(e)?;
        let irr_s = dixon_character_table(&s).map_err(e)?;
        let irr_g = dixon_character_table(&g).map_err(e)?;
        let ambient = Ambient::from_table(&irr_s);
        let lattice = stable_character_basis(&ambient, &fusion).map_err(e)?;
        let map = class_fusion_map(&g, &s).map_err(e)?;
        let restrictions: BTreeSet<Vec<BigInt>> = irr_g
            .irreducibles
            .iter()
            .map(|chi| irr_s.decompose(&restrict_character(chi, &map)))
            .collect::<Result<_, _>>()
            .map_err(e)?;
        let orbit_sums: BTreeSet<Vec<BigInt>> = restrictions.iter().map(|r| primitive(r)).collect();
        let bound = irr_g
            .irreducibles
            .iter()
            .map(|c| c.degree_i64().unwrap_or(0) as u64)
            .max()
            .unwrap_or(1);
        let ind = indecomposables_bounded(&lattice, bound, 1 << 20).map_err(e)?;
        let found: BTreeSet<Vec<BigInt>> = ind.characters.iter().cloned().collect();
        ensure(found == orbit_sums, || format!("{name} at p = {p}: Ind ≠ {{χ|_S / e}}"))?;
        ensure(found.len() == fusion.k(), || format!("{name} at p = {p}: |Ind| ≠ k(F)"))?;
        if found != restrictions {
            literal_fails.push(format!("{name}/p={p}"));
        }
    }
    let literal: Vec<&str> = ["S3/p=3", "A4/p=2", "D6/p=3", "D18/p=3", "D50/p=5", "D54/p=3"].to_vec();
    ensure(literal.iter().all(|c| !literal_fails.iter().any(|f| f == c)), || {
        format!("multiplicity-free cases fail: {literal_fails:?}")
    })?;
    Ok(format!(
        "{} normal-Sylow cases: Ind(F) = {{χ|_S / e_χ}} and |Ind| = k(F); Ind = {{χ|_S}} literally except where some χ|_S has multiplicity > 1: {}",
        cases.len(),
        literal_fails.join(", ")
    ))
}

#[test]
fn acceptance() {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion1),
        (2, criterion2),
        (3, criterion3),
        (4, criterion4),
        (5, criterion5),
        (6, criterion6),
        (7, criterion7),
        (8, criterion8),
        (9, criterion9),
        (10, criterion10),
    ];
    let mut failed = Vec::new();
    for (n, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        line(n, &outcome, start.elapsed());
        if outcome.is_err() {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

/// The p = 7 stretch target: `cargo test --test acceptance -- --ignored`.
#[test]
#[ignore = "builds groups of order about 7·10^5"]
fn acceptance_large_p7() {
    let start = Instant::now();
    let outcome = (|| -> Outcome {
        for name in [ExoticName::GPrune, ExoticName::F1, ExoticName::OpF1] {
            let r = verify_exotic(name, 7).map_err(e)?;
            ensure(r.passed(), || r.summary())?;
        }
        Ok("G_prune, F1 and Op_F1 verified at p = 7".into())
    })();
    line(8, &outcome, start.elapsed());
    assert!(outcome.is_ok());
}
