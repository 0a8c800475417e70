//! Orbits of `Γ` on `V` and on `Irr(V)`, and the counts `n_{v,ψ}` behind the
//! values of the induced characters `χ(ψ, ρ)`.

use serde::{Deserialize, Serialize};

use super::groups::{affine_parts, apply, apply_column, gamma_group, r_matrix, Mat3};
use super::{ConstructionError, ConstructionParams};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitInfo {
    /// Coordinates in the basis `x², xy, y²`.
    pub rep: [u64; 3],
    pub label: String,
    pub size: u64,
    pub stabilizer_order: u64,
    pub stabilizer_abelian: bool,
}

/// Which action to analyse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Action {
    /// `v ↦ vγ` on `V`.
    OnV,
    /// `f ↦ γ fᵀ`, the action on the characters `ψ_f(t) = ω^{t·f}`.
    OnCharacters,
}

/// Preferred representatives, in order: `x², xy, λxy, x²+εy², λ(x²+εy²)`.
pub fn named_representatives(params: &ConstructionParams) -> Vec<([u64; 3], String)> {
    let p = params.p;
    let l = params.lambda;
    let e = params.epsilon;
    vec![
        ([1, 0, 0], "x^2".into()),
        ([0, 1, 0], "xy".into()),
        ([0, l, 0], format!("{l}xy")),
        ([1, 0, e], format!("x^2+{e}y^2")),
        ([l, 0, l * e % p], format!("{l}(x^2+{e}y^2)")),
    ]
}

pub fn gamma_matrices(params: &ConstructionParams) -> Result<Vec<Mat3>, ConstructionError> {
    let g = gamma_group(params)?;
    Ok(g.elements()
        .iter()
        .map(|x| {
            let mut m = [[0u64; 3]; 3];
            for (i, row) in m.iter_mut().enumerate() {
                for (j, v) in row.iter_mut().enumerate() {
                    *v = x.entry(i, j) as u64;
                }
            }
            m
        })
        .collect())
}

fn mat_mul(p: u64, a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0u64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum::<u64>() % p;
        }
    }
    out
}

fn index(p: u64, v: &[u64; 3]) -> usize {
    ((v[0] * p + v[1]) * p + v[2]) as usize
}

fn vector(p: u64, i: usize) -> [u64; 3] {
    let i = i as u64;
    [i / (p * p), (i / p) % p, i % p]
}

/// The non-trivial orbits of `Γ` under the chosen action, sorted by
/// stabiliser order descending and then by representative.
pub fn gamma_orbit_analysis(
    params: &ConstructionParams,
    action: Action,
) -> Result<Vec<OrbitInfo>, ConstructionError> {
    let p = params.p;
    let mats = gamma_matrices(params)?;
    let act = |m: &Mat3, v: &[u64; 3]| match action {
        Action::OnV => apply(p, v, m),
        Action::OnCharacters => apply_column(p, m, v),
    };
    let n = (p * p * p) as usize;
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 1..n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let v = vector(p, start);
        let mut members: Vec<usize> = mats.iter().map(|m| index(p, &act(m, &v))).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            orbit_of[m] = id;
        }
        orbits.push(members);
    }
    let named = named_representatives(params);
    let mut out = Vec::with_capacity(orbits.len());
    for members in orbits {
        let (rep, label) = named
            .iter()
            .find(|(v, _)| members.binary_search(&index(p, v)).is_ok())
            .cloned()
            .unwrap_or_else(|| {
                let v = vector(p, members[0]);
                (v, format!("{v:?}"))
            });
        let stab: Vec<&Mat3> = mats.iter().filter(|m| act(m, &rep) == rep).collect();
        let abelian = stab
            .iter()
            .all(|a| stab.iter().all(|b| mat_mul(p, a, b) == mat_mul(p, b, a)));
        assert_eq!(stab.len() * members.len(), mats.len(), "orbit-stabiliser");
        out.push(OrbitInfo {
            rep,
            label,
            size: members.len() as u64,
            stabilizer_order: stab.len() as u64,
            stabilizer_abelian: abelian,
        });
    }
    out.sort_by(|a, b| b.stabilizer_order.cmp(&a.stabilizer_order).then(a.rep.cmp(&b.rep)));
    Ok(out)
}

/// Representatives `(a, b, c, d)` of `PGL_2(p)`: invertible, first nonzero entry 1.
pub fn pgl2_representatives(p: u64) -> Vec<[u64; 4]> {
    let mut out = Vec::with_capacity((p * p * p - p) as usize);
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let first = [a, b, c, d].into_iter().find(|&x| x != 0);
                    if first != Some(1) {
                        continue;
                    }
                    if !(a * d + p * p - b * c).is_multiple_of(p) {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// `n_{v,ψ_f} = #{A ∈ PGL_2(p) : v R(A) fᵀ = 0}`.
pub fn count_n_v_psi(p: u64, v: [u64; 3], f: [u64; 3]) -> u64 {
    pgl2_representatives(p)
        .into_iter()
        .filter(|a| {
            let w = apply(p, &v, &r_matrix(p, a[0], a[1], a[2], a[3]));
            (0..3).map(|i| w[i] * f[i]).sum::<u64>() % p == 0
        })
        .count() as u64
}

/// `p · ρ(1) · (n − p² + 1) / |I|`, if the division is exact.
pub fn induced_value_formula(p: u64, n: u64, stabilizer_order: u64, rho_degree: u64) -> Option<i64> {
    let num = p as i64 * rho_degree as i64 * (n as i64 - (p * p) as i64 + 1);
    let d = stabilizer_order as i64;
    (num % d == 0).then(|| num / d)
}

/// Elements of `I_Γ(ψ_f) = {γ : γ fᵀ = fᵀ}` inside `N = V ⋊ Γ`, as indices.
pub fn inertia_linear_parts(n: &crate::group::FiniteGroup, p: u64, f: [u64; 3]) -> Vec<usize> {
    (0..n.elements().len())
        .filter(|&i| {
            let (m, t) = affine_parts(n.element(i));
            t == [0, 0, 0] && apply_column(p, &m, &f) == f
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pgl2_count() {
        for p in [3, 5, 7] {
            assert_eq!(pgl2_representatives(p).len() as u64, p * p * p - p);
        }
    }

    #[test]
    fn formula_at_identity_is_degree() {
        let p = 5;
        let deg = induced_value_formula(p, p * p * p - p, p * (p - 1), 1).unwrap();
        assert_eq!(deg, (p * p - 1) as i64);
        assert_eq!(induced_value_formula(p, p * (p - 1), p * (p - 1), 1), Some(-1));
    }
}
