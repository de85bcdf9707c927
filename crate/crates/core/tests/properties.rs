use proptest::prelude::*;
use tensq_core::abgrp::{
    determinant, quotient_structure, quotient_structure_sparse, smith_normal_form, Int, IntMatrix, SparseMatrix,
    SparseRow,
};
use tensq_core::fpgrp::parse_presentation;
use tensq_core::presentations::{exterior_and_schur, Factor, Presentation, Word};
use tensq_core::validate;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-12i128..=12, rows * cols).prop_map(move |flat| {
        let rows: Vec<&[Int]> = flat.chunks(cols).collect();
        IntMatrix::from_rows(cols, &rows).unwrap()
    })
}

fn sized_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| matrix(r, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_is_a_divisibility_chain(a in sized_matrix()) {
        let snf = smith_normal_form(&a).unwrap();
        let left = snf.left.as_ref().unwrap();
        prop_assert_eq!(left.mul(&a).unwrap().mul(&snf.right).unwrap(), snf.diag.clone());
        let d = snf.diagonal();
        for w in d.windows(2) {
            prop_assert!(w[0] >= 0);
            if w[0] == 0 {
                prop_assert_eq!(w[1], 0);
            } else {
                prop_assert_eq!(w[1] % w[0], 0);
            }
        }
    }

    #[test]
    fn square_quotient_order_is_abs_det(a in (1usize..=4).prop_flat_map(|n| matrix(n, n))) {
        let det = determinant(&a).unwrap();
        let (q, _) = quotient_structure(&a, a.cols()).unwrap();
        if det == 0 {
            prop_assert!(!q.is_finite());
        } else {
            prop_assert_eq!(q.order(), Some(det.unsigned_abs() as u64));
        }
    }

    #[test]
    fn sparse_and_dense_quotients_agree(a in sized_matrix()) {
        let mut sp = SparseMatrix::new(a.cols());
        for i in 0..a.rows() {
            sp.push(SparseRow::from_entries(a.row(i).iter().copied().enumerate()));
        }
        let (dense, _) = quotient_structure(&a, a.cols()).unwrap();
        let (sparse, _) = quotient_structure_sparse(&sp).unwrap();
        prop_assert_eq!(dense, sparse);
    }

    #[test]
    fn native_text_round_trips(
        ngens in 1usize..=4,
        raw in prop::collection::vec(prop::collection::vec((0usize..4, -9i64..=9), 1..6), 0..6),
    ) {
        let gens: Vec<String> = (0..ngens).map(|i| format!("g{i}")).collect();
        let relators: Vec<Word> = raw
            .into_iter()
            .map(|fs| {
                let factors = fs
                    .into_iter()
                    .filter(|&(_, e)| e != 0)
                    .map(|(g, e)| Factor { generator: g % ngens, exponent: e })
                    .collect();
                Word::from_factors(factors).unwrap()
            })
            .filter(|w| !w.is_empty())
            .collect();
        let pres = Presentation::new(gens, relators).unwrap();
        let text = pres.to_native();
        let back = parse_presentation(&text).unwrap();
        prop_assert_eq!(back.to_native(), text);
    }

    #[test]
    fn exterior_divides_tensor(m in (1i64..=20).prop_map(|k| 2 * k + 1), n in 1i64..=12, r in 0i64..41, s in 0i64..41) {
        // most draws are invalid tuples, which validation rejects
        if let Ok(p) = validate(m, n, r % m, s % m) {
            let rep = exterior_and_schur(&p).unwrap();
            let t = rep.tensor.order().unwrap();
            let e = rep.exterior.order().unwrap();
            prop_assert_eq!(t % e, 0);
            prop_assert_eq!(t / e, rep.delta_order);
        }
    }
}
