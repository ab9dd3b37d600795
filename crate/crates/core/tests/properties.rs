use flagcode::algebra::{FieldSpec, MatrixFq, Subspace};
use flagcode::construction::{build_code, Flag, SandwichParams};
use flagcode::decoder::{accumulate, erase};
use flagcode::metrics::{flag_distance, subspace_distance};
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(vec![
        (2u64, 1u32),
        (3, 1),
        (2, 2),
        (5, 1),
        (7, 1),
        (2, 3),
        (3, 2),
    ])
    .prop_map(|(p, m)| FieldSpec::new(p, m, None).unwrap())
}

fn matrix_strategy(max_rows: usize, max_cols: usize) -> impl Strategy<Value = MatrixFq> {
    (field_strategy(), 1..=max_rows, 1..=max_cols).prop_flat_map(|(field, rows, cols)| {
        let q = field.q();
        prop::collection::vec(0..q, rows * cols).prop_map(move |reps| {
            let entries = reps
                .iter()
                .map(|&x| field.element(x as u64).unwrap())
                .collect();
            MatrixFq::from_entries(&field, rows, cols, entries).unwrap()
        })
    })
}

fn binary_matrix(rows: usize, cols: usize) -> impl Strategy<Value = MatrixFq> {
    prop::collection::vec(0u32..2, rows * cols).prop_map(move |bits| {
        let f2 = FieldSpec::prime(2).unwrap();
        let entries = bits
            .iter()
            .map(|&b| f2.element(b as u64).unwrap())
            .collect();
        MatrixFq::from_entries(&f2, rows, cols, entries).unwrap()
    })
}

/// Random full flag in `F_2^n` from a random invertible matrix.
fn binary_flag(n: usize) -> impl Strategy<Value = Flag> {
    binary_matrix(n, n)
        .prop_filter("invertible", move |m| m.rank() == n)
        .prop_map(|m| Flag::from_generator(&m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rref_is_idempotent(a in matrix_strategy(6, 7)) {
        let once = a.rref();
        let twice = once.matrix.rref();
        prop_assert_eq!(&twice.matrix, &once.matrix);
        prop_assert_eq!(twice.rank, a.rank());
        prop_assert_eq!(twice.pivots, once.pivots);
    }

    #[test]
    fn row_operations_preserve_rowspace(a in matrix_strategy(5, 6), seed in any::<u64>()) {
        // T built from a seeded elementary-operation walk stays invertible
        let field = a.field().clone();
        let rows = a.rows();
        let mut t = MatrixFq::identity(&field, rows);
        let mut s = seed;
        for _ in 0..12 {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let (i, j) = ((s >> 33) as usize % rows, (s >> 45) as usize % rows);
            let c = field.element((s >> 20) % field.q() as u64).unwrap();
            if i != j {
                for col in 0..rows {
                    let v = field.add(t.get(i, col), field.mul(c, t.get(j, col)));
                    t.set(i, col, v);
                }
            }
        }
        let b = t.mul(&a).unwrap();
        prop_assert_eq!(b.rref().matrix, a.rref().matrix);
        prop_assert_eq!(Subspace::rowspace(&a), Subspace::rowspace(&b));
    }

    #[test]
    fn dimension_identity(a in binary_matrix(3, 6), b in binary_matrix(4, 6)) {
        let (u, v) = (Subspace::rowspace(&a), Subspace::rowspace(&b));
        let sum = u.sum(&v).unwrap();
        prop_assert_eq!(sum.dim() + u.intersect_dim(&v).unwrap(), u.dim() + v.dim());
        prop_assert!(sum.contains(&u).unwrap() && sum.contains(&v).unwrap());
        prop_assert_eq!(subspace_distance(&u, &v).unwrap(), subspace_distance(&v, &u).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn flag_distance_is_a_metric(a in binary_flag(5), b in binary_flag(5), c in binary_flag(5)) {
        let d = |x: &Flag, y: &Flag| flag_distance(x, y).unwrap();
        prop_assert_eq!(d(&a, &a), 0);
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
        prop_assert_eq!(d(&a, &b) == 0, a == b);
    }

    #[test]
    fn field_inverse_and_pow(field in field_strategy(), x in 1u64..1000) {
        let a = field.element(x % (field.q() as u64 - 1) + 1).unwrap();
        let one = field.element(1).unwrap();
        prop_assert_eq!(field.mul(a, field.inv(a).unwrap()), one);
        prop_assert_eq!(field.pow(a, field.q() as u64 - 1), one);
    }

    #[test]
    fn erasure_output_is_nested_in_sent(idx in 0usize..9, e in (0usize..=1, 0usize..=2, 0usize..=3, 0usize..=4), seed in any::<u64>()) {
        let code = build_code(&SandwichParams::new(FieldSpec::prime(2).unwrap(), 2, 1, None).unwrap()).unwrap();
        let sent = &code.flags()[idx];
        let e = [e.0, e.1, e.2, e.3];
        let received = erase(sent, &e, seed).unwrap();
        for i in 1..5 {
            prop_assert!(sent.get(i).contains(received.get(i)).unwrap());
            prop_assert_eq!(received.get(i).dim(), i - e[i - 1]);
        }
        let acc = accumulate(&received, 2);
        for i in 1..4 {
            prop_assert!(acc.get(i + 1).contains(acc.get(i)).unwrap());
        }
    }
}
