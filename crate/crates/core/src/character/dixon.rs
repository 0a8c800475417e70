//! Character tables by the Dixon–Schneider method.
//!
//! Class multiplication coefficients `a_{jrs} = #{x ∈ C_j : x⁻¹ g_s ∈ C_r}`
//! define commuting matrices `M_j` whose common right eigenvectors over
//! `F_ℓ` are the central characters `ω_χ`. Values are lifted back to
//! `Z[ζ_e]` through eigenvalue multiplicities computed from power maps.

use num_bigint::BigInt;
use rayon::prelude::*;

use super::modular::Fp;
use super::table::{CharacterTable, ClassFunction, ClassInfo};
use super::CharacterError;
use crate::algebra::arith::prime_congruent_one;
use crate::algebra::CyclotomicInt;
use crate::group::FiniteGroup;

struct ClassAlgebra {
    k: usize,
    /// `a[(j * k + r) * k + s]`
    coeffs: Vec<u32>,
}

impl ClassAlgebra {
    fn build(g: &FiniteGroup) -> ClassAlgebra {
        let cs = g.classes();
        let k = cs.len();
        let n = g.elements().len();
        let inverse: Vec<u32> = (0..n)
            .into_par_iter()
            .map(|i| g.index_of(&g.element(i).inverse()).expect("inverse in group") as u32)
            .collect();
        let slabs: Vec<Vec<u32>> = (0..k)
            .into_par_iter()
            .map(|s| {
                let gs = g.element(cs.get(s).rep);
                let mut slab = vec![0u32; k * k];
                for x in 0..n {
                    let j = cs.class_of(x);
                    let y = g.element(inverse[x] as usize).mul(gs);
                    let r = cs.class_of(g.index_of(&y).expect("product in group"));
                    slab[j * k + r] += 1;
                }
                slab
            })
            .collect();
        let mut coeffs = vec![0u32; k * k * k];
        for (s, slab) in slabs.iter().enumerate() {
            for jr in 0..k * k {
                coeffs[jr * k + s] = slab[jr];
            }
        }
        ClassAlgebra { k, coeffs }
    }

    /// `M_j v` over `F_ℓ`.
    fn apply(&self, f: Fp, j: usize, v: &[u64]) -> Vec<u64> {
        let k = self.k;
        (0..k)
            .map(|r| {
                let row = &self.coeffs[(j * k + r) * k..(j * k + r + 1) * k];
                row.iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &x)| (acc + a as u64 * x) % f.l)
            })
            .collect()
    }
}

/// Splits `F_ℓ^k` into the one-dimensional common eigenspaces of all `M_j`.
fn split_eigenspaces(alg: &ClassAlgebra, f: Fp) -> Result<Vec<Vec<u64>>, CharacterError> {
    let k = alg.k;
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect()];
    for j in 1..k {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::with_capacity(spaces.len());
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            next.extend(split_space(alg, f, j, space)?);
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(CharacterError::SplitFailure);
    }
    Ok(spaces.into_iter().map(|mut s| s.pop().unwrap()).collect())
}

fn split_space(
    alg: &ClassAlgebra,
    f: Fp,
    j: usize,
    mut basis: Vec<Vec<u64>>,
) -> Result<Vec<Vec<Vec<u64>>>, CharacterError> {
    let pivots = f.rref(&mut basis);
    let d = basis.len();
    // Column i of `a` holds the coordinates of M_j w_i.
    let images: Vec<Vec<u64>> = basis.iter().map(|w| alg.apply(f, j, w)).collect();
    let a: Vec<Vec<u64>> = (0..d)
        .map(|l| (0..d).map(|i| images[i][pivots[l]]).collect())
        .collect();
    let roots = f.roots(&f.charpoly(&a));
    if roots.len() == 1 {
        return Ok(vec![basis]);
    }
    let mut parts = Vec::with_capacity(roots.len());
    let mut total = 0;
    for lambda in roots {
        let shifted: Vec<Vec<u64>> = a
            .iter()
            .enumerate()
            .map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .map(|(c, &x)| if r == c { f.sub(x, lambda) } else { x })
                    .collect()
            })
            .collect();
        let kernel = f.right_kernel(&shifted);
        total += kernel.len();
        let vectors: Vec<Vec<u64>> = kernel
            .iter()
            .map(|y| {
                let mut v = vec![0u64; alg.k];
                for (yi, w) in y.iter().zip(&basis) {
                    if *yi == 0 {
                        continue;
                    }
                    for (x, &wx) in v.iter_mut().zip(w) {
                        *x = f.add(*x, f.mul(*yi, wx));
                    }
                }
                v
            })
            .collect();
        parts.push(vectors);
    }
    if total != d {
        return Err(CharacterError::SplitFailure);
    }
    Ok(parts)
}

/// Computes the irreducible characters of `g`, sorted by degree and then by values.
pub fn dixon_character_table(g: &FiniteGroup) -> Result<CharacterTable, CharacterError> {
    let cs = g.classes();
    let k = cs.len();
    let order = g.order();
    let e = g.exponent();
    let bound = 2 * ((order as f64).sqrt().ceil() as u64);
    let l = prime_congruent_one(e, bound).ok_or(CharacterError::PrimeSearch)?;
    let f = Fp::new(l);
    let z = f.pow(f.primitive_root(), (l - 1) / e);

    let classes: Vec<ClassInfo> = cs
        .classes()
        .iter()
        .map(|c| ClassInfo {
            size: c.size as u64,
            centralizer_order: c.centralizer_order,
            rep_order: c.rep_order,
            rep_word: g.word(c.rep),
        })
        .collect();
    let conductor = e as u32;

    let alg = ClassAlgebra::build(g);
    let omegas = split_eigenspaces(&alg, f)?;
    let inverse_class: Vec<usize> = (0..k).map(|c| cs.inverse_class(g, c)).collect();
    let power_maps: Vec<Vec<usize>> = (0..k)
        .map(|c| {
            let o = cs.get(c).rep_order as i64;
            (0..o).map(|t| cs.power_class(g, c, t)).collect()
        })
        .collect();
    let sizes: Vec<u64> = classes.iter().map(|c| c.size % l).collect();

    let mut irreducibles = Vec::with_capacity(k);
    for mut w in omegas {
        if w[0] == 0 {
            return Err(CharacterError::SplitFailure);
        }
        let inv0 = f.inv(w[0]);
        for x in w.iter_mut() {
            *x = f.mul(*x, inv0);
        }
        // |G| / χ(1)² = Σ_r ω_r ω_{r'} / h_r
        let mut s = 0u64;
        for r in 0..k {
            let t = f.mul(f.mul(w[r], w[inverse_class[r]]), f.inv(sizes[r]));
            s = f.add(s, t);
        }
        let deg_sq = f.mul(order % l, f.inv(s));
        let max_deg = (order as f64).sqrt().floor() as u64 + 1;
        let degree = (1..=max_deg)
            .find(|&d| d * d % l == deg_sq && d * d <= order)
            .ok_or(CharacterError::SplitFailure)?;
        let values_mod: Vec<u64> = (0..k)
            .map(|r| f.mul(f.mul(w[r], degree), f.inv(sizes[r])))
            .collect();
        let mut values = Vec::with_capacity(k);
        for r in 0..k {
            let o = cs.get(r).rep_order;
            let zo = f.pow(z, e / o);
            let inv_o = f.inv(o % l);
            let mut coeffs = vec![0i64; conductor as usize];
            for jj in 0..o {
                let mut m = 0u64;
                for t in 0..o {
                    let root = f.pow(zo, (o - (jj * t) % o) % o);
                    m = f.add(m, f.mul(values_mod[power_maps[r][t as usize]], root));
                }
                let m = f.mul(m, inv_o);
                if m > degree {
                    return Err(CharacterError::LiftFailure);
                }
                coeffs[(jj * (e / o)) as usize] += m as i64;
            }
            let v = CyclotomicInt::from_coeffs(conductor, coeffs);
            if reduce_mod(&v, f, z) != values_mod[r] {
                return Err(CharacterError::LiftFailure);
            }
            values.push(v);
        }
        irreducibles.push(ClassFunction::new(values));
    }
    irreducibles.sort_by(|a, b| {
        a.degree_i64()
            .cmp(&b.degree_i64())
            .then_with(|| a.values.cmp(&b.values))
    });
    let table = CharacterTable {
        group_order: order,
        conductor,
        classes,
        irreducibles,
    };
    table.check_row_orthogonality()?;
    Ok(table)
}

/// Image of a cyclotomic integer under `ζ_e ↦ z` in `F_ℓ`.
fn reduce_mod(v: &CyclotomicInt, f: Fp, z: u64) -> u64 {
    let l = BigInt::from(f.l);
    v.coeffs().iter().enumerate().fold(0u64, |acc, (i, c)| {
        let c = ((c % &l + &l) % &l).try_into().unwrap_or(0u64);
        f.add(acc, f.mul(c, f.pow(z, i as u64)))
    })
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
    fn cyclic_two() {
        let g = perm_group(&[&[1, 0]]);
        let t = dixon_character_table(&g).unwrap();
        let vals: Vec<Vec<i64>> = t
            .irreducibles
            .iter()
            .map(|c| c.values.iter().map(|v| v.as_i64().unwrap()).collect())
            .collect();
        assert_eq!(vals, vec![vec![1, -1], vec![1, 1]]);
    }

    #[test]
    fn symmetric_three() {
        let g = perm_group(&[&[1, 2, 0], &[1, 0, 2]]);
        let t = dixon_character_table(&g).unwrap();
        let degrees: Vec<i64> = t.irreducibles.iter().map(|c| c.degree_i64().unwrap()).collect();
        assert_eq!(degrees, vec![1, 1, 2]);
        t.check_column_orthogonality().unwrap();
    }

    #[test]
    fn quaternion_and_cyclic() {
        // Q8 as permutations on 8 points
        let i = [2, 3, 1, 0, 6, 7, 5, 4];
        let j = [4, 5, 7, 6, 1, 0, 2, 3];
        let g = perm_group(&[&i, &j]);
        assert_eq!(g.order(), 8);
        let t = dixon_character_table(&g).unwrap();
        t.check_column_orthogonality().unwrap();
        let c7 = perm_group(&[&[1, 2, 3, 4, 5, 6, 0]]);
        let t7 = dixon_character_table(&c7).unwrap();
        assert_eq!(t7.irreducibles.len(), 7);
        t7.check_column_orthogonality().unwrap();
    }

    #[test]
    fn alternating_five() {
        let g = perm_group(&[&[1, 2, 3, 4, 0], &[1, 2, 0, 3, 4]]);
        assert_eq!(g.order(), 60);
        let t = dixon_character_table(&g).unwrap();
        let degrees: Vec<i64> = t.irreducibles.iter().map(|c| c.degree_i64().unwrap()).collect();
        assert_eq!(degrees, vec![1, 3, 3, 4, 5]);
        t.check_column_orthogonality().unwrap();
    }
}
