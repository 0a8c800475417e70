//! The groups `S = V ⋊ ⟨u⟩`, `N = V ⋊ Γ` and `N_b = S ⋊ ⟨b⟩` as affine
//! matrix groups. An affine map `x ↦ xM + t` on row vectors is encoded as the
//! 4×4 matrix `[[M, 0], [t, 1]]`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{ConstructionError, ConstructionParams};
use crate::algebra::arith::{inv_mod, is_square_mod, pow_mod};
use crate::group::{FiniteGroup, GroupElement};

pub type Mat3 = [[u64; 3]; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupKind {
    /// `S` itself.
    #[serde(rename = "S")]
    Sylow,
    /// `V ⋊ Γ_(e)` or its twisted form, as fixed by the parameters.
    #[serde(rename = "N_gamma")]
    NGamma,
    /// `S ⋊ ⟨b⟩`.
    #[serde(rename = "N_b")]
    NB,
}

/// Matrix of `f ↦ f(ax + by, cx + dy)` on the basis `x², xy, y²`.
pub fn r_matrix(p: u64, a: u64, b: u64, c: u64, d: u64) -> Mat3 {
    let m = |x: u64| x % p;
    [
        [m(a * a), m(2 * a * b), m(b * b)],
        [m(a * c), m(a * d + b * c), m(b * d)],
        [m(c * c), m(2 * c * d), m(d * d)],
    ]
}

pub fn scale_mat(p: u64, m: &Mat3, s: u64) -> Mat3 {
    let mut out = *m;
    for row in out.iter_mut() {
        for x in row.iter_mut() {
            *x = *x * s % p;
        }
    }
    out
}

/// `v M` for a row vector `v`.
pub fn apply(p: u64, v: &[u64; 3], m: &Mat3) -> [u64; 3] {
    let mut out = [0u64; 3];
    for (j, o) in out.iter_mut().enumerate() {
        *o = (0..3).map(|i| v[i] * m[i][j]).sum::<u64>() % p;
    }
    out
}

/// `M fᵀ` for a column vector `f`.
pub fn apply_column(p: u64, m: &Mat3, f: &[u64; 3]) -> [u64; 3] {
    let mut out = [0u64; 3];
    for (i, o) in out.iter_mut().enumerate() {
        *o = (0..3).map(|j| m[i][j] * f[j]).sum::<u64>() % p;
    }
    out
}

/// Image of `(μ, A)` in `GL(V)`: `μ · det(A)⁻¹ · [χ(det A)] · R(A)`, with the
/// sign character included only for the twisted family.
pub fn gamma_linear(params: &ConstructionParams, a: [u64; 4], mu: u64) -> Mat3 {
    let p = params.p;
    let det = (a[0] * a[3] + p * p - a[1] * a[2] % p) % p;
    assert_ne!(det, 0, "singular matrix in gamma_linear");
    let mut s = mu % p * inv_mod(det, p) % p;
    if params.star && !is_square_mod(det, p) {
        s = (p - s) % p;
    }
    scale_mat(p, &r_matrix(p, a[0], a[1], a[2], a[3]), s)
}

/// Generators of `Γ_(e)` (or its twisted form) as 3×3 matrices.
pub fn gamma_generators(params: &ConstructionParams) -> Vec<Mat3> {
    let p = params.p;
    let l = params.lambda;
    let mut gens = vec![
        gamma_linear(params, [l, 0, 0, 1], 1),
        gamma_linear(params, [1, 1, 0, 1], 1),
        gamma_linear(params, [1, 0, 1, 1], 1),
    ];
    let scalar = pow_mod(l, params.e, p);
    if scalar != 1 {
        gens.push(gamma_linear(params, [1, 0, 0, 1], scalar));
    }
    gens
}

fn mat3_element(p: u64, m: &Mat3) -> Result<GroupElement, ConstructionError> {
    let rows: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
    Ok(GroupElement::matrix(p, &rows)?)
}

/// `Γ` as a group of 3×3 matrices acting on row vectors.
pub fn gamma_group(params: &ConstructionParams) -> Result<FiniteGroup, ConstructionError> {
    let gens = gamma_generators(params)
        .iter()
        .map(|m| mat3_element(params.p, m))
        .collect::<Result<Vec<_>, _>>()?;
    let g = FiniteGroup::generate(gens[0].kind(), gens)?;
    if g.order() != params.gamma_order() {
        return Err(ConstructionError::Inadmissible(format!(
            "generated Γ has order {}, expected {}",
            g.order(),
            params.gamma_order()
        )));
    }
    Ok(g)
}

/// The affine map `x ↦ xM + t`.
pub fn affine(p: u64, m: &Mat3, t: &[u64; 3]) -> Result<GroupElement, ConstructionError> {
    let mut rows = vec![vec![0i64; 4]; 4];
    for i in 0..3 {
        for j in 0..3 {
            rows[i][j] = m[i][j] as i64;
        }
        rows[3][i] = t[i] as i64;
    }
    rows[3][3] = 1;
    Ok(GroupElement::matrix(p, &rows)?)
}

pub fn identity3() -> Mat3 {
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
}

/// Linear part and translation of an affine element.
pub fn affine_parts(g: &GroupElement) -> (Mat3, [u64; 3]) {
    let mut m = [[0u64; 3]; 3];
    let mut t = [0u64; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = g.entry(i, j) as u64;
        }
        t[i] = g.entry(3, i) as u64;
    }
    (m, t)
}

pub fn translation(p: u64, v: [u64; 3]) -> Result<GroupElement, ConstructionError> {
    affine(p, &identity3(), &v)
}

/// The elements `z, u, v1, v2, v3` (and `b`) under their names.
pub fn named_elements(params: &ConstructionParams) -> Result<Vec<(&'static str, GroupElement)>, ConstructionError> {
    let p = params.p;
    let b = params.b;
    let zero = [0, 0, 0];
    let u = affine(p, &r_matrix(p, 1, 0, 1, 1), &zero)?;
    let b_mat = [[b % p, 0, 0], [0, b * b % p, 0], [0, 0, pow_mod(b, 3, p)]];
    Ok(vec![
        ("z", translation(p, [1, 0, 0])?),
        ("u", u),
        ("v1", translation(p, [1, 0, 0])?),
        ("v2", translation(p, [0, 1, 0])?),
        ("v3", translation(p, [0, 0, 1])?),
        ("b", affine(p, &b_mat, &zero)?),
    ])
}

fn named_group(
    params: &ConstructionParams,
    gens: Vec<GroupElement>,
) -> Result<FiniteGroup, ConstructionError> {
    let mut g = FiniteGroup::generate(gens[0].kind(), gens)?;
    for (name, x) in named_elements(params)? {
        if g.contains(&x) {
            g.set_name(name, x)?;
        }
    }
    Ok(g)
}

/// Builds the requested group together with its subgroup `S`, which carries
/// the names `z, u, v1, v2, v3`.
pub fn build_group(
    params: &ConstructionParams,
    kind: GroupKind,
) -> Result<(FiniteGroup, Arc<FiniteGroup>), ConstructionError> {
    let p = params.p;
    let named = named_elements(params)?;
    let get = |n: &str| named.iter().find(|(m, _)| *m == n).unwrap().1.clone();
    let s_gens = vec![get("v1"), get("v2"), get("v3"), get("u")];
    let g_gens = match kind {
        GroupKind::Sylow => s_gens.clone(),
        GroupKind::NB => {
            let mut v = s_gens.clone();
            v.push(get("b"));
            v
        }
        GroupKind::NGamma => {
            let mut v = vec![get("v1"), get("v2"), get("v3")];
            for m in gamma_generators(params) {
                v.push(affine(p, &m, &[0, 0, 0])?);
            }
            v
        }
    };
    let g = named_group(params, g_gens)?;
    let s = Arc::new(g.subgroup(s_gens)?);
    let p4 = p.pow(4);
    if s.order() != p4 {
        return Err(ConstructionError::Inadmissible(format!("|S| = {}, expected {p4}", s.order())));
    }
    let expected = match kind {
        GroupKind::Sylow => p4,
        GroupKind::NB => p4 * (p - 1),
        GroupKind::NGamma => p.pow(3) * params.gamma_order(),
    };
    if g.order() != expected {
        return Err(ConstructionError::Inadmissible(format!(
            "group has order {}, expected {expected}",
            g.order()
        )));
    }
    Ok((g, s))
}

/// `Σ_i c_i v_i` as a translation word such as `v1*v3^2`.
pub fn translation_word(v: [u64; 3]) -> String {
    let parts: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| if c == 1 { format!("v{}", i + 1) } else { format!("v{}^{c}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::GammaVariant;

    #[test]
    fn r_is_a_right_action() {
        let p = 7;
        let a = [2, 3, 5, 1];
        let b = [1, 4, 6, 3];
        let ab = [
            (a[0] * b[0] + a[1] * b[2]) % p,
            (a[0] * b[1] + a[1] * b[3]) % p,
            (a[2] * b[0] + a[3] * b[2]) % p,
            (a[2] * b[1] + a[3] * b[3]) % p,
        ];
        let ra = r_matrix(p, a[0], a[1], a[2], a[3]);
        let rb = r_matrix(p, b[0], b[1], b[2], b[3]);
        let rab = r_matrix(p, ab[0], ab[1], ab[2], ab[3]);
        let v = [3, 1, 4];
        assert_eq!(apply(p, &apply(p, &v, &ra), &rb), apply(p, &v, &rab));
    }

    #[test]
    fn sylow_and_normalisers_p3() {
        let params = ConstructionParams::new(3).unwrap();
        let (s, s2) = build_group(&params, GroupKind::Sylow).unwrap();
        assert_eq!(s.order(), 81);
        assert_eq!(s2.order(), 81);
        let z = s.named("z").unwrap();
        assert_eq!(s.centralizer_order(z), 81);
        let u = s.named("u").unwrap();
        assert_eq!(s.centralizer_order(u), 9);
        let (n, _) = build_group(&params, GroupKind::NGamma).unwrap();
        assert_eq!(n.order(), 1296);
        let (nb, _) = build_group(&params, GroupKind::NB).unwrap();
        assert_eq!(nb.order(), 162);
    }

    #[test]
    fn gamma_orders() {
        for (p, v) in [(5, GammaVariant::Star4), (7, GammaVariant::Index2), (5, GammaVariant::Full)] {
            let params = ConstructionParams::with_variant(p, v).unwrap();
            assert_eq!(gamma_group(&params).unwrap().order(), params.gamma_order());
        }
    }

    #[test]
    fn words() {
        assert_eq!(translation_word([1, 0, 2]), "v1*v3^2");
        assert_eq!(translation_word([0, 0, 0]), "1");
    }
}
