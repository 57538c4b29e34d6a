//! The fixture documents shipped in `fixtures/`, built from the library's
//! standard examples so the files can be regenerated.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relhoch::{fixtures, Algebra, Bimodule, Field, Matrix, RingMap};
use serde_json::{json, Value};

use crate::document::{RawDocument, RawTask};

fn task(op: &str, args: &[&str]) -> RawTask {
    RawTask {
        op: op.into(),
        args: args.iter().map(|s| s.to_string()).collect(),
        nmax: None,
        mode: None,
        depth: None,
        expect: None,
    }
}

trait TaskExt {
    fn nmax(self, n: usize) -> Self;
    fn mode(self, m: u8) -> Self;
    fn expect(self, v: Value) -> Self;
}

impl TaskExt for RawTask {
    fn nmax(mut self, n: usize) -> Self {
        self.nmax = Some(n);
        self
    }

    fn mode(mut self, m: u8) -> Self {
        self.mode = Some(m);
        self
    }

    fn expect(mut self, v: Value) -> Self {
        self.expect = Some(v);
        self
    }
}

/// Document with `k`, `B`, the unit map `k -> B`, `B` as a `B`-`k` and a
/// `B`-`B` bimodule.
fn over_ground(b: Algebra) -> RawDocument {
    let field = b.field();
    let b = Arc::new(b);
    let k = Algebra::ground(field);
    let unit = RingMap::unit_map(b.clone());
    let mut doc = RawDocument::empty(field);
    doc.add_algebra("k", &k);
    doc.add_algebra("B", &b);
    doc.add_ring_map("unit", "k", "B", &unit);
    doc.add_bimodule("B_over_k", "B", "k", &fixtures::regular_over_ground((*b).clone()));
    doc.add_bimodule("B", "B", "B", &Bimodule::regular(b));
    doc
}

fn fx1() -> RawDocument {
    let mut doc = RawDocument::empty(Field::Rationals);
    let m = fixtures::fx1(Field::Rationals);
    doc.add_algebra("k", m.left_algebra());
    doc.add_bimodule("M", "k", "k", &m);
    doc.tasks = vec![
        task("generator", &["M"]).expect(json!(true)),
        task("separable", &["M"]).expect(json!(true)),
        task("hdim", &["M"]).expect(json!("0")),
        task("hochschild", &["M", "M"]).expect(json!([1, 0, 0])),
        task("homotopy", &["M"]).expect(json!(true)),
    ];
    doc
}

fn fx2() -> RawDocument {
    let mut doc = over_ground(Algebra::product_of_fields(Field::Rationals, 2));
    doc.tasks = vec![
        task("generator", &["B_over_k"]).expect(json!(true)),
        task("separable", &["B_over_k"]).expect(json!(true)),
        task("smooth", &["B_over_k"]).expect(json!(true)),
        task("hdim", &["B_over_k"]).nmax(3).expect(json!("0")),
        task("rel_projective", &["B", "B_over_k"]).expect(json!(true)),
        task("hochschild", &["B_over_k", "B"]).expect(json!([2, 0, 0])),
        task("separable_extension", &["unit"]).expect(json!(true)),
        task("smooth_extension", &["unit"]).expect(json!(true)),
        task("report", &["B_over_k"]).nmax(3),
    ];
    doc
}

fn fx3() -> RawDocument {
    let mut doc = over_ground(Algebra::truncated_polynomial(Field::Rationals, 2));
    doc.add_bimodule("k_over_B", "B", "k", &fixtures::trivial_over_dual_numbers(Field::Rationals));
    doc.tasks = vec![
        task("separable", &["B_over_k"]).expect(json!(false)),
        task("smooth", &["B_over_k"]).expect(json!(false)),
        task("hdim", &["B_over_k"]).nmax(3).expect(json!("> 3")),
        task("generator", &["B_over_k"]).expect(json!(true)),
        task("rel_projective", &["B", "B_over_k"]).expect(json!(false)),
        task("hochschild", &["B_over_k", "B"]).expect(json!([2, 1, 1])),
        task("rel_hochschild", &["unit", "B"]).expect(json!([2, 1, 1])),
        task("separable_extension", &["unit"]).expect(json!(false)),
        task("smooth_extension", &["unit"]).expect(json!(false)),
        task("morita", &["B_over_k", "B"]).expect(json!(true)),
        task("generator", &["k_over_B"]).expect(json!(false)),
        task("static", &["k_over_B"]).expect(json!(true)),
        task("sugano", &["k_over_B"]).expect(json!(true)),
        task("sugano", &["B"]).expect(json!(true)),
        task("syzygy", &["B_over_k"]).expect(json!(2)),
        task("report", &["B_over_k"]).nmax(3),
    ];
    doc
}

fn fx4() -> RawDocument {
    let mut doc = over_ground(Algebra::upper_triangular(Field::Rationals, 2));
    doc.tasks = vec![
        task("separable", &["B_over_k"]).expect(json!(false)),
        task("smooth", &["B_over_k"]).expect(json!(true)),
        task("hdim", &["B_over_k"]).nmax(3).expect(json!("1")),
        task("hochschild", &["B_over_k", "B"]).expect(json!([1, 0, 0])),
        task("smooth_extension", &["unit"]).expect(json!(true)),
        task("smooth_product", &["B", "B_over_k"]).mode(2).expect(json!(true)),
        task("static", &["B"]).expect(json!(true)),
        task("report", &["B_over_k"]).nmax(3),
    ];
    doc
}

fn fx5() -> RawDocument {
    let f = Field::Rationals;
    let m = fixtures::fx5(f);
    let mut doc = RawDocument::empty(f);
    doc.add_algebra("k", m.right_algebra());
    doc.add_algebra("B", m.left_algebra());
    doc.add_bimodule("M", "B", "k", &m);
    doc.add_bimodule("B", "B", "B", &Bimodule::regular(m.left_algebra().clone()));
    doc.add_bimodule("k", "k", "k", &Bimodule::regular(m.right_algebra().clone()));
    doc.tasks = vec![
        task("separable", &["M"]).expect(json!(true)),
        task("smooth", &["M"]).expect(json!(true)),
        task("hdim", &["M"]).nmax(3).expect(json!("0")),
        task("hochschild", &["M", "B"]).expect(json!([1, 0, 0])),
        task("morita", &["M", "B"]).expect(json!(true)),
        task("phi", &["M", "B"]).expect(json!(true)),
        task("sugano", &["M"]).expect(json!(true)),
        task("static", &["M"]).expect(json!(true)),
        task("smooth_product", &["M", "k"]).mode(1).expect(json!(true)),
        task("report", &["M"]).nmax(3),
    ];
    doc
}

fn fx6() -> RawDocument {
    let f = Field::Rationals;
    let inc = fixtures::diagonal_inclusion(f);
    let m = fixtures::fx6(f);
    let mut doc = RawDocument::empty(f);
    doc.add_algebra("A", inc.source());
    doc.add_algebra("B", inc.target());
    doc.add_ring_map("inc", "A", "B", &inc);
    doc.add_bimodule("M", "B", "A", &m);
    doc.add_bimodule("B", "B", "B", &Bimodule::regular(inc.target().clone()));
    doc.tasks = vec![
        task("morita", &["M", "B"]).expect(json!(true)),
        task("rel_hochschild", &["inc", "B"]).expect(json!([1, 0, 0])),
        task("separable_extension", &["inc"]).expect(json!(true)),
        task("separable", &["M"]).expect(json!(true)),
        task("report", &["M"]),
    ];
    doc
}

fn prime() -> RawDocument {
    let f = Field::Prime(3);
    let mut doc = over_ground(Algebra::truncated_polynomial(f, 2));
    doc.tasks = vec![
        task("separable", &["B_over_k"]).expect(json!(false)),
        task("hdim", &["B_over_k"]).nmax(2).expect(json!("> 2")),
        task("hochschild", &["B_over_k", "B"]).expect(json!([2, 1, 1])),
    ];
    doc
}

/// Small algebras over `F_2`.
fn characteristic_two() -> RawDocument {
    let f = Field::Prime(2);
    let mut doc = over_ground(Algebra::truncated_polynomial(f, 2));
    doc.add_algebra("P", &Algebra::product_of_fields(f, 2));
    doc.add_bimodule("P_over_k", "P", "k", &fixtures::fx2(f));
    doc.tasks = vec![
        task("separable", &["B_over_k"]).expect(json!(false)),
        task("smooth", &["B_over_k"]).expect(json!(false)),
        task("separable", &["P_over_k"]).expect(json!(true)),
        task("report", &["P_over_k"]),
    ];
    doc
}

/// Random invertible matrix, a product of elementary operations.
pub fn random_invertible(field: Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut p = Matrix::identity(field, n);
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let mut e = Matrix::identity(field, n);
        e.set(i, j, field.from_int(rng.gen_range(-2..3)));
        p = p.mul(&e);
    }
    p
}

/// Standard fixtures in random bases and direct sums, from a fixed seed.
pub fn randomized_bimodules(seed: u64) -> Vec<(String, Bimodule)> {
    let f = Field::Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (name, m) in [
        ("FX2", fixtures::fx2(f)),
        ("FX3", fixtures::fx3(f)),
        ("FX4", fixtures::fx4(f)),
        ("FX5", fixtures::fx5(f)),
    ] {
        let p = random_invertible(f, m.dim(), &mut rng);
        out.push((format!("{name}_rebased"), m.change_basis(&p).expect("invertible")));
    }
    let fx3 = fixtures::fx3(f);
    let fx5 = fixtures::fx5(f);
    out.push(("FX3_plus_FX3".into(), fx3.direct_sum(&fx3).expect("same algebras")));
    out.push(("FX5_plus_FX5".into(), fx5.direct_sum(&fx5).expect("same algebras")));
    let sum = fixtures::fx2(f).direct_sum(&fixtures::fx2(f)).expect("same algebras");
    let p = random_invertible(f, sum.dim(), &mut rng);
    out.push(("FX2_plus_FX2_rebased".into(), sum.change_basis(&p).expect("invertible")));
    out
}

pub const RANDOM_SEED: u64 = 0x5eed_2024;

fn randomized() -> RawDocument {
    let mut doc = RawDocument::empty(Field::Rationals);
    let f = Field::Rationals;
    doc.add_algebra("k", &Algebra::ground(f));
    doc.add_algebra("KxK", &Algebra::product_of_fields(f, 2));
    doc.add_algebra("Dual", &Algebra::truncated_polynomial(f, 2));
    doc.add_algebra("Tri", &Algebra::upper_triangular(f, 2));
    doc.add_algebra("M2", &Algebra::matrix_algebra(f, 2));
    let left_name = |name: &str| match &name[..3] {
        "FX2" => "KxK",
        "FX3" => "Dual",
        "FX4" => "Tri",
        _ => "M2",
    };
    for (name, m) in randomized_bimodules(RANDOM_SEED) {
        doc.add_bimodule(&name, left_name(&name), "k", &m);
        doc.tasks.push(task("report", &[&name]).nmax(1));
    }
    doc
}

/// `(file stem, document)` for every shipped fixture.
pub fn documents() -> Vec<(&'static str, RawDocument)> {
    vec![
        ("fx1", fx1()),
        ("fx2", fx2()),
        ("fx3", fx3()),
        ("fx4", fx4()),
        ("fx5", fx5()),
        ("fx6", fx6()),
        ("prime", prime()),
        ("char2", characteristic_two()),
        ("randomized", randomized()),
    ]
}
