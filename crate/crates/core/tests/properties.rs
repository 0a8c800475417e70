use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

use fuschar::algebra::det::det_int;
use fuschar::algebra::{lattice_volume_index, CyclotomicInt, IntMatrix};
use fuschar::character::{dixon_character_table, induce_character, restrict_character, CharacterTable};
use fuschar::corpus::builtin_group;
use fuschar::fusion::FusionData;
use fuschar::group::{class_fusion_map, FiniteGroup};
use fuschar::stable::{stable_character_basis, Ambient, StableLattice};
use fuschar::verify::{verify_with_basis, VerificationReport};

struct Instance {
    fusion: FusionData,
    ambient: Ambient,
    lattice: StableLattice,
    base: VerificationReport,
}

fn instance(name: &str, p: u64, merges: &[(&str, &str)]) -> Instance {
    let s = Arc::new(builtin_group(name).unwrap());
    let merges: Vec<(String, String)> = merges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    let fusion = FusionData::of_group_itself(s.clone(), p)
        .unwrap()
        .apply_merges(&merges)
        .unwrap()
        .0;
    let ambient = Ambient::from_table(&dixon_character_table(&s).unwrap());
    let lattice = stable_character_basis(&ambient, &fusion).unwrap();
    let base = verify_with_basis(name, &fusion, &ambient, &lattice.basis, None).unwrap();
    Instance {
        fusion,
        ambient,
        lattice,
        base,
    }
}

fn instances() -> &'static [Instance] {
    static CELL: OnceLock<Vec<Instance>> = OnceLock::new();
    CELL.get_or_init(|| {
        vec![
            instance("C8", 2, &[("g0^2", "g0^6")]),
            instance("D16", 2, &[]),
            instance("Q8", 2, &[("g0", "g1")]),
            instance("C9", 3, &[("g0^3", "g0^6")]),
            instance("Heis7", 7, &[]),
        ]
    })
}

struct GroupData {
    g: FiniteGroup,
    irr: CharacterTable,
}

fn groups() -> &'static [GroupData] {
    static CELL: OnceLock<Vec<GroupData>> = OnceLock::new();
    CELL.get_or_init(|| {
        ["S4", "A5", "GL2(3)", "D20", "SL2(3)"]
            .iter()
            .map(|n| {
                let g = builtin_group(n).unwrap();
                let irr = dixon_character_table(&g).unwrap();
                GroupData { g, irr }
            })
            .collect()
    })
}

/// A unimodular matrix from a sequence of elementary operations.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect();
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            rows[i].iter_mut().for_each(|x| *x = -&*x);
        } else {
            let add: Vec<BigInt> = rows[j].iter().map(|x| x * c).collect();
            rows[i].iter_mut().zip(add).for_each(|(x, a)| *x += a);
        }
    }
    IntMatrix::from_rows_with_cols(&rows, n)
}

fn square(n: usize, entries: &[i64]) -> IntMatrix {
    let rows: Vec<Vec<i64>> = entries.chunks(n).take(n).map(<[i64]>::to_vec).collect();
    IntMatrix::from_rows_with_cols(&rows, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn determinant_is_basis_independent(
        k in 0usize..5,
        ops in prop::collection::vec((0usize..16, 0usize..16, -3i64..=3), 0..24),
    ) {
        let inst = &instances()[k];
        let u = unimodular(inst.lattice.rank, &ops);
        let b = u.mul(&inst.lattice.basis).unwrap();
        let r = verify_with_basis("transformed", &inst.fusion, &inst.ambient, &b, None).unwrap();
        prop_assert_eq!(&r.lhs_det, &inst.base.lhs_det);
        prop_assert_eq!(r.verdict, inst.base.verdict);
    }

    #[test]
    fn determinant_is_representative_independent(
        k in 0usize..5,
        picks in prop::collection::vec(any::<prop::sample::Index>(), 64),
    ) {
        let inst = &instances()[k];
        let cols: Vec<usize> = inst
            .fusion
            .classes()
            .iter()
            .zip(picks.iter().cycle())
            .map(|(c, i)| c.columns[i.index(c.columns.len())])
            .collect();
        let r = verify_with_basis("shuffled", &inst.fusion, &inst.ambient, &inst.lattice.basis, Some(&cols)).unwrap();
        prop_assert_eq!(&r.lhs_det, &inst.base.lhs_det);
        prop_assert!(!r.lhs_det.is_negative());
    }

    #[test]
    fn frobenius_reciprocity(
        k in 0usize..5,
        gens in prop::collection::vec(any::<prop::sample::Index>(), 1..3),
    ) {
        let data = &groups()[k];
        let g = &data.g;
        let gens = gens.iter().map(|i| g.element(i.index(g.order() as usize)).clone()).collect();
        let h = g.subgroup(gens).unwrap();
        let irr_h = dixon_character_table(&h).unwrap();
        let map = class_fusion_map(g, &h).unwrap();
        for theta in &irr_h.irreducibles {
            let ind = induce_character(theta, &h, g).unwrap();
            for chi in &data.irr.irreducibles {
                let lhs = data.irr.inner_product_int(&ind, chi).unwrap();
                let rhs = irr_h.inner_product_int(theta, &restrict_character(chi, &map)).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn sublattice_index_matches_smith_form(
        n in 1usize..=5,
        l in prop::collection::vec(-6i64..=6, 25),
        t in prop::collection::vec(-4i64..=4, 25),
    ) {
        let l = square(n, &l);
        let t = square(n, &t);
        prop_assume!(l.rank() == n && t.rank() == n);
        let m = t.mul(&l).unwrap();
        let idx = lattice_volume_index(&l, &m).unwrap();
        prop_assert_eq!(&idx.index, &det_int(&t).unwrap().abs());
        let smith: BigInt = t.smith_diagonal().iter().product();
        prop_assert_eq!(&idx.index, &smith.abs());
        prop_assert_eq!(&idx.vol_m, &(&idx.index * &idx.vol_l));
    }

    #[test]
    fn cyclotomic_norm_is_self_conjugate_and_nonzero(
        n in prop::sample::select(vec![3u32, 4, 5, 8, 9, 12]),
        coeffs in prop::collection::vec(-5i64..=5, 12),
    ) {
        let x = CyclotomicInt::from_coeffs(n, coeffs.clone());
        let norm = &x * &x.conj();
        prop_assert_eq!(norm.conj(), norm.clone());
        if x.is_zero() {
            prop_assert!(norm.is_zero());
        } else {
            prop_assert!(!norm.is_zero());
        }
    }
}
