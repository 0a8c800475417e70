//! Built-in groups and batch verification of the group case.

use serde::{Deserialize, Serialize};

use crate::group::{FiniteGroup, GroupElement, GroupError};
use crate::verify::{verify_group_case, GroupCaseReport};

fn perm(images: &[usize]) -> GroupElement {
    GroupElement::permutation(images).expect("built-in permutations are valid")
}

fn cycle(n: usize, points: &[usize]) -> GroupElement {
    let mut images: Vec<usize> = (0..n).collect();
    for (i, &a) in points.iter().enumerate() {
        images[a] = points[(i + 1) % points.len()];
    }
    perm(&images)
}

fn mat(p: u64, rows: &[&[i64]]) -> GroupElement {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    GroupElement::matrix(p, &rows).expect("built-in matrices are invertible")
}

fn generated(gens: Vec<GroupElement>) -> Result<FiniteGroup, GroupError> {
    let kind = gens[0].kind();
    FiniteGroup::generate(kind, gens)
}

fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    let all: Vec<usize> = (0..n).collect();
    generated(vec![cycle(n, &[0, 1]), cycle(n, &all)])
}

fn alternating(n: usize) -> Result<FiniteGroup, GroupError> {
    let gens = (2..n).map(|k| cycle(n, &[0, 1, k])).collect();
    generated(gens)
}

fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    let all: Vec<usize> = (0..n).collect();
    generated(vec![cycle(n, &all)])
}

/// Dihedral group of order `2n`.
fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 2 {
        return generated(vec![perm(&[1, 0, 3, 2]), perm(&[2, 3, 0, 1])]);
    }
    let all: Vec<usize> = (0..n).collect();
    let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    generated(vec![cycle(n, &all), perm(&reflection)])
}

/// Upper unitriangular 3×3 matrices over `F_p`, extraspecial of order `p³`.
fn heisenberg(p: u64) -> Result<FiniteGroup, GroupError> {
    generated(vec![
        mat(p, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]),
        mat(p, &[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]]),
    ])
}

/// Names accepted by [`builtin_group`], in corpus order.
pub fn builtin_names() -> Vec<String> {
    let mut names: Vec<String> = ["S3", "S4", "S5", "S6", "A4", "A5", "SL2(3)", "GL2(3)", "Q8"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    names.extend((2..=32).map(|n| format!("D{}", 2 * n)));
    names.extend((1..=64).map(|n| format!("C{n}")));
    names.push("Heis7".into());
    names
}

/// Built-in group by name: `Sn` (n ≤ 7), `A4`, `A5`, `SL2(3)`, `GL2(3)`,
/// `Q8`, `D2n` (order 2n ≤ 64), `Cn` (n ≤ 255), `Heis7` (extraspecial `7^{1+2}`).
pub fn builtin_group(name: &str) -> Result<FiniteGroup, GroupError> {
    let unknown = || GroupError::Invalid(format!("unknown built-in group {name:?}"));
    let number = |prefix: &str| -> Option<usize> { name.strip_prefix(prefix)?.parse().ok() };
    match name {
        "A4" => alternating(4),
        "A5" => alternating(5),
        "SL2(3)" => generated(vec![mat(3, &[&[1, 1], &[0, 1]]), mat(3, &[&[0, -1], &[1, 0]])]),
        "GL2(3)" => generated(vec![
            mat(3, &[&[1, 1], &[0, 1]]),
            mat(3, &[&[0, -1], &[1, 0]]),
            mat(3, &[&[-1, 0], &[0, 1]]),
        ]),
        "Q8" => generated(vec![mat(3, &[&[0, -1], &[1, 0]]), mat(3, &[&[1, 1], &[1, -1]])]),
        "Heis7" => heisenberg(7),
        _ => {
            if let Some(n) = number("S").filter(|n| (1..=7).contains(n)) {
                symmetric(n.max(2))
            } else if let Some(m) = number("D").filter(|m| m % 2 == 0 && (4..=64).contains(m)) {
                dihedral(m / 2)
            } else if let Some(n) = number("C").filter(|n| (1..=255).contains(n)) {
                cyclic(n)
            } else {
                Err(unknown())
            }
        }
    }
}

/// Prime divisors of `n` in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
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

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub label: String,
    pub p: u64,
    pub passed: bool,
    pub summary: String,
    pub error: Option<String>,
    /// The complete report, kept for reproduction when an entry fails.
    pub bundle: Option<GroupCaseReport>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusReport {
    pub entries: Vec<CorpusEntry>,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
}

impl CorpusReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.errors == 0
    }
}

/// Group and primes for one corpus item; `None` primes means every prime divisor.
pub struct CorpusItem {
    pub label: String,
    pub group: Result<FiniteGroup, GroupError>,
    pub primes: Option<Vec<u64>>,
}

/// The built-in corpus: the named groups at every prime divisor of their order.
pub fn builtin_corpus() -> Vec<CorpusItem> {
    let mut names: Vec<String> = ["S3", "S4", "S5", "S6", "A4", "A5", "SL2(3)", "GL2(3)", "Q8"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    names.extend((2..=32).map(|n| format!("D{}", 2 * n)));
    names.extend([8, 9, 12, 16, 27, 32].iter().map(|n| format!("C{n}")));
    names
        .into_iter()
        .map(|label| CorpusItem {
            group: builtin_group(&label),
            label,
            primes: None,
        })
        .collect()
}

/// Runs the group-case verification on every item and prime; errors are
/// recorded per entry and do not stop the run.
pub fn run_group_corpus(items: Vec<CorpusItem>) -> CorpusReport {
    let mut entries = Vec::new();
    for item in items {
        let g = match item.group {
            Ok(g) => g,
            Err(e) => {
                entries.push(CorpusEntry {
                    label: item.label,
                    p: 0,
                    passed: false,
                    summary: String::new(),
                    error: Some(e.to_string()),
                    bundle: None,
                });
                continue;
            }
        };
        let primes = item.primes.unwrap_or_else(|| prime_divisors(g.order()));
        for p in primes {
            let label = format!("{} at p = {p}", item.label);
            entries.push(match verify_group_case(&item.label, &g, p) {
                Ok(r) => {
                    let passed = r.report.passed();
                    CorpusEntry {
                        label,
                        p,
                        passed,
                        summary: r.report.summary(),
                        error: None,
                        bundle: (!passed).then_some(r),
                    }
                }
                Err(e) => CorpusEntry {
                    label,
                    p,
                    passed: false,
                    summary: String::new(),
                    error: Some(e.to_string()),
                    bundle: None,
                },
            });
        }
    }
    let passed = entries.iter().filter(|e| e.passed).count();
    let errors = entries.iter().filter(|e| e.error.is_some()).count();
    CorpusReport {
        failed: entries.len() - passed - errors,
        passed,
        errors,
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_orders() {
        let cases = [
            ("S3", 6),
            ("S6", 720),
            ("A4", 12),
            ("A5", 60),
            ("SL2(3)", 24),
            ("GL2(3)", 48),
            ("Q8", 8),
            ("D4", 4),
            ("D64", 64),
            ("C1", 1),
            ("C64", 64),
            ("Heis7", 343),
        ];
        for (name, order) in cases {
            assert_eq!(builtin_group(name).unwrap().order(), order, "{name}");
        }
        assert!(builtin_group("D7").is_err());
        assert!(builtin_group("X").is_err());
    }

    #[test]
    fn q8_is_not_dihedral() {
        let q = builtin_group("Q8").unwrap();
        let involutions = q.elements().iter().filter(|x| x.order() == 2).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn errors_are_isolated() {
        let items = vec![
            CorpusItem {
                label: "broken".into(),
                group: Err(GroupError::TooLarge { cap: 1 }),
                primes: None,
            },
            CorpusItem {
                label: "S3".into(),
                group: builtin_group("S3"),
                primes: None,
            },
            CorpusItem {
                label: "C5 at 3".into(),
                group: builtin_group("C5"),
                primes: Some(vec![3]),
            },
        ];
        let report = run_group_corpus(items);
        assert_eq!(report.errors, 1);
        assert_eq!(report.passed, 3);
        assert!(!report.all_passed());
    }
}
