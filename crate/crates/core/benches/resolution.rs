use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pathres::fixtures::{BASIC_ORDER_ONE, POLYNOMIAL_XY};
use pathres::koszul::{koszul_resolution, KoszulOptions};
use pathres::problem::{parse_problem, Problem};
use pathres::resolution::{build_resolution, Presentation, ResolutionOptions};
use pathres::{Exec, QuotientAlgebra};

/// A source `s`, `n` middle vertices and a sink `t`; the `n` two-arrow
/// paths from `s` to `t` are identified in a chain, and each path continues
/// along a loop-free tail.
fn fan(n: usize) -> String {
    let mut s = String::from("vertices: s, t, u");
    for i in 1..=n {
        s += &format!(", m{i}");
    }
    s += "\narrows:\n";
    for i in 1..=n {
        s += &format!("  x{i}: s -> m{i}\n  y{i}: m{i} -> t\n");
    }
    s += "  z: t -> u\nfield: Q\nrelations:\n";
    for i in 1..n {
        s += &format!("  x{i}*y{i} - x{}*y{}\n", i + 1, i + 1);
    }
    s += &format!("  y{n}*z\n");
    let sources: Vec<String> = (1..=n).map(|i| format!("m{i}")).collect();
    let entries: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    s += &format!("module: targets(s) sources({}) matrix([{}])\n", sources.join(", "), entries.join(", "));
    s
}

fn setup(text: &str) -> (Problem, QuotientAlgebra, Presentation) {
    let p = parse_problem(text).unwrap();
    let q = QuotientAlgebra::from_relations(p.algebra.clone(), &p.relations, None, None).unwrap();
    let m = p.module.clone().unwrap();
    let pres = Presentation::new(&q, m.targets, m.sources, m.matrix).unwrap();
    (p, q, pres)
}

fn modes() -> [(&'static str, Exec); 2] {
    [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)]
}

fn resolutions(c: &mut Criterion) {
    let mut group = c.benchmark_group("resolve");
    let cases = [("example", BASIC_ORDER_ONE.to_string()), ("fan8", fan(8)), ("fan16", fan(16))];
    for (name, text) in &cases {
        let (_, q, pres) = setup(text);
        for (mode, exec) in modes() {
            let opts = ResolutionOptions { steps: 6, verify: false, exec, ..ResolutionOptions::default() };
            group.bench_with_input(BenchmarkId::new(mode, name), &opts, |b, opts| {
                b.iter(|| build_resolution(&q, &pres, opts).unwrap())
            });
        }
    }
    group.finish();
}

fn koszul(c: &mut Criterion) {
    let mut group = c.benchmark_group("koszul");
    let (p, q, pres) = setup(POLYNOMIAL_XY);
    for (mode, exec) in modes() {
        let opts = KoszulOptions { exec, ..KoszulOptions::default() };
        group.bench_function(mode, |b| b.iter(|| koszul_resolution(&q, &p.relations, &pres, &opts).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, resolutions, koszul);
criterion_main!(benches);
