use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qturan::harness::{run, Command, InputSource, RunConfig};

fn workers() -> Vec<usize> {
    let max = std::thread::available_parallelism().map_or(1, |n| n.get());
    if max > 1 {
        vec![1, max]
    } else {
        vec![1]
    }
}

fn bench_command(c: &mut Criterion, name: &str, command: Command, input: InputSource) {
    let mut group = c.benchmark_group(name);
    group.sample_size(10);
    for threads in workers() {
        let mut cfg = RunConfig::new(command, input.clone());
        cfg.threads = threads;
        group.bench_with_input(BenchmarkId::from_parameter(threads), &cfg, |b, cfg| {
            b.iter(|| run(cfg).unwrap())
        });
    }
    group.finish();
}

fn benches(c: &mut Criterion) {
    bench_command(c, "verify-enumerate-7", Command::Verify, InputSource::Enumerate { min: 7, max: 7 });
    bench_command(
        c,
        "random-signed-2000",
        Command::RandomSigned,
        InputSource::Random { n_max: 10, trials: 2000, seed: 1 },
    );
    bench_command(
        c,
        "counterexample-4-50",
        Command::Counterexample,
        InputSource::Family { n_min: 4, n_max: 50 },
    );
}

criterion_group!(parallel, benches);
criterion_main!(parallel);
