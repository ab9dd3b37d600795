use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use flagcode::algebra::FieldSpec;
use flagcode::construction::{build_code, SandwichParams};
use flagcode::decoder::{decode, erase};
use flagcode::metrics::min_flag_distance;

const CASES: [(usize, usize); 3] = [(2, 1), (3, 2), (4, 3)];

fn params(k1: usize, r: usize) -> SandwichParams {
    SandwichParams::new(FieldSpec::prime(2).unwrap(), k1, r, None).unwrap()
}

fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_code");
    for (k1, r) in CASES {
        let p = params(k1, r);
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{k1}_{r}")),
            &p,
            |b, p| b.iter(|| build_code(black_box(p)).unwrap()),
        );
    }
    group.finish();
}

fn distance(c: &mut Criterion) {
    let mut group = c.benchmark_group("min_flag_distance");
    group.sample_size(10);
    for (k1, r) in CASES {
        let code = build_code(&params(k1, r)).unwrap();
        group.bench_function(format!("{k1}_{r}"), |b| {
            b.iter(|| min_flag_distance(black_box(code.flags())).unwrap())
        });
    }
    group.finish();
}

fn decoding(c: &mut Criterion) {
    let code = build_code(&params(3, 2)).unwrap();
    let flag = &code.flags()[11];
    let mut group = c.benchmark_group("decode_3_2");
    for (step, e) in [
        ("step1", [0, 0, 0, 0, 0, 0, 0]),
        ("step2", [1, 2, 3, 1, 0, 0, 0]),
        ("step3", [1, 2, 3, 4, 5, 1, 7]),
    ] {
        let received = erase(flag, &e, 5).unwrap();
        group.bench_function(step, |b| {
            b.iter(|| decode(&code, black_box(&received)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, construction, distance, decoding);
criterion_main!(benches);
