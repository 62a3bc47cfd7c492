//! Acceptance criteria. Runs without the libtest harness so every
//! criterion prints exactly one PASS/FAIL line; exits non-zero on failure.

use std::alloc::{GlobalAlloc, Layout, System};
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use delta_partitions::oracle::{bell_number, naive_delta_partitions};
use delta_partitions::{
    count, enumerate, Enumerator, Params, PruneCheck, SearchState, SearchStats,
};
use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct CountingAlloc;

static ALLOCATIONS: AtomicU64 = AtomicU64::new(0);
static ALLOCATED_BYTES: AtomicU64 = AtomicU64::new(0);

unsafe impl GlobalAlloc for CountingAlloc {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        ALLOCATIONS.fetch_add(1, Ordering::Relaxed);
        ALLOCATED_BYTES.fetch_add(layout.size() as u64, Ordering::Relaxed);
        unsafe { System.alloc(layout) }
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        unsafe { System.dealloc(ptr, layout) }
    }

    unsafe fn realloc(&self, ptr: *mut u8, layout: Layout, new_size: usize) -> *mut u8 {
        ALLOCATIONS.fetch_add(1, Ordering::Relaxed);
        ALLOCATED_BYTES.fetch_add(new_size as u64, Ordering::Relaxed);
        unsafe { System.realloc(ptr, layout, new_size) }
    }
}

#[global_allocator]
static GLOBAL: CountingAlloc = CountingAlloc;

fn allocations() -> (u64, u64) {
    (
        ALLOCATIONS.load(Ordering::Relaxed),
        ALLOCATED_BYTES.load(Ordering::Relaxed),
    )
}

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(elapsed: Duration, limit: Duration) -> Check {
    ensure!(elapsed < limit, "took {elapsed:?}, limit {limit:?}");
    Ok(format!("{elapsed:.2?}"))
}

fn smart(n: usize, delta: usize) -> (Vec<Vec<usize>>, SearchStats) {
    let mut out = Vec::new();
    let stats = enumerate(Params::new(n, delta).unwrap(), |v| out.push(v.to_vec())).unwrap();
    (out, stats)
}

fn golden_trace() -> Check {
    let start = Instant::now();
    let (parts, _) = smart(4, 1);
    let elapsed = start.elapsed();
    let expected = vec![
        vec![1, 1, 1, 1],
        vec![1, 1, 2, 2],
        vec![1, 2, 1, 2],
        vec![1, 2, 2, 1],
    ];
    ensure!(parts == expected, "got {parts:?}");
    within(elapsed, Duration::from_millis(1))
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut instances = 0;
    for n in 1..=10 {
        for delta in 0..n {
            let (parts, _) = smart(n, delta);
            let naive = naive_delta_partitions(n, delta).unwrap().partitions;
            ensure!(
                parts == naive,
                "n={n} delta={delta}: {} vs {} strings",
                parts.len(),
                naive.len()
            );
            instances += 1;
        }
    }
    within(start.elapsed(), Duration::from_secs(60)).map(|t| format!("{instances} instances, {t}"))
}

fn bell_counts() -> Check {
    let start = Instant::now();
    for n in 1..=12 {
        let got = count(Params::new(n, 0).unwrap()).unwrap();
        ensure!(got == bell_number(n), "n={n}: {got} != {}", bell_number(n));
    }
    ensure!(
        bell_number(12) == BigUint::from(4_213_597u32),
        "B_12 = {}",
        bell_number(12)
    );
    within(start.elapsed(), Duration::from_secs(30))
}

fn best_case_linearity() -> Check {
    for n in 1..=20 {
        let stats = enumerate(Params::new(n, n - 1).unwrap(), |_| {}).unwrap();
        ensure!(
            stats.nodes == n as u64 && stats.solutions == 1,
            "n={n}: {stats:?}"
        );
    }
    let n = 100_000;
    let start = Instant::now();
    let stats = enumerate(Params::new(n, n - 1).unwrap(), |v| {
        assert!(v.labels().iter().all(|&l| l == 1))
    })
    .unwrap();
    let elapsed = start.elapsed();
    ensure!(
        stats.nodes == n as u64 && stats.solutions == 1,
        "n={n}: {stats:?}"
    );
    within(elapsed, Duration::from_secs(1)).map(|t| format!("n=100000 in {t}"))
}

fn linear_space() -> Check {
    let word = std::mem::size_of::<usize>() as u64;
    let instances = [
        (100_000usize, 99_999usize),
        (100_000, 50_000),
        (12, 2),
        (11, 0),
        (10, 3),
    ];
    for (n, delta) in instances {
        let (calls_before, bytes_before) = allocations();
        let mut it = Enumerator::new(Params::new(n, delta).unwrap());
        let (calls_setup, bytes_setup) = allocations();

        // labels (n) + block sizes (n + 1) + frame stack (n frames of two words)
        ensure!(
            it.capacity() <= 3 * n + 1,
            "n={n}: capacity {} > 3n+1",
            it.capacity()
        );
        let setup_bytes = bytes_setup - bytes_before;
        ensure!(
            setup_bytes <= 4 * (n as u64 + 1) * word,
            "n={n}: setup allocated {setup_bytes} bytes"
        );
        ensure!(
            calls_setup - calls_before <= 3,
            "n={n}: {} setup allocations",
            calls_setup - calls_before
        );

        let mut solutions = 0u64;
        while it.next_solution().is_some() {
            solutions += 1;
        }
        let (calls_after, _) = allocations();
        ensure!(
            calls_after == calls_setup,
            "n={n} delta={delta}: {} allocations during traversal",
            calls_after - calls_setup
        );
        ensure!(solutions == it.stats().solutions, "solution count drift");
        ensure!(
            it.capacity() <= 3 * n + 1,
            "n={n}: capacity grew to {}",
            it.capacity()
        );
    }
    Ok("no allocation after setup; state <= 3n+1 slots".to_owned())
}

fn counter_coherence() -> Check {
    let mut rng = StdRng::seed_from_u64(0xdec0de);
    let mut nodes = 0u64;
    for _ in 0..10_000 {
        let n = rng.random_range(1..=12);
        let delta = rng.random_range(0..=n);
        let limit = rng.random_range(1..=1_500);
        let mut it = Enumerator::new(Params::new(n, delta).unwrap())
            .with_counter_checks(true)
            .with_node_limit(limit);
        let outcome =
            panic::catch_unwind(AssertUnwindSafe(|| while it.next_solution().is_some() {}));
        ensure!(
            outcome.is_ok(),
            "counter mismatch during traversal n={n} delta={delta}"
        );
        nodes += it.stats().nodes;

        // random descent following the same branching rules
        let mut s = SearchState::with_size(n, delta).unwrap();
        s.assign(1);
        loop {
            if let Err(e) = s.check_counters() {
                return Err(e.to_string());
            }
            ensure!(
                (s.deficit() == 0) == (s.small_block_count() == 0),
                "M/β coupling broken"
            );
            let candidates: Vec<usize> = match s.prune_check() {
                PruneCheck::Prune => break,
                PruneCheck::Forced(beta) => beta,
                PruneCheck::Continue if s.is_complete() => break,
                PruneCheck::Continue => (1..=s.max_label() + 1).collect(),
            };
            s.assign(candidates[rng.random_range(0..candidates.len())]);
            nodes += 1;
        }
        while s.assigned() > 0 {
            s.unassign();
            if let Err(e) = s.check_counters() {
                return Err(e.to_string());
            }
        }
    }
    Ok(format!("10000 traversals, {nodes} nodes recounted"))
}

fn pruning_dominance() -> Check {
    let start = Instant::now();
    let mut report = Vec::new();
    for (n, delta) in [(8, 2), (10, 3)] {
        let smart_nodes = enumerate(Params::new(n, delta).unwrap(), |_| {})
            .unwrap()
            .nodes;
        let naive_nodes = naive_delta_partitions(n, delta).unwrap().stats.nodes;
        ensure!(
            smart_nodes < naive_nodes,
            "n={n} delta={delta}: {smart_nodes} >= {naive_nodes}"
        );
        report.push(format!("({n},{delta}): {smart_nodes} < {naive_nodes}"));
    }
    within(start.elapsed(), Duration::from_secs(10))
        .map(|t| format!("{} in {t}", report.join(", ")))
}

fn worst_case_envelope() -> Check {
    for n in 1..=10 {
        let nodes = enumerate(Params::new(n, 0).unwrap(), |_| {}).unwrap().nodes;
        let bound = bell_number(n) * BigUint::from(n);
        ensure!(BigUint::from(nodes) <= bound, "n={n}: {nodes} > {bound}");
    }
    Ok("nodes <= n*B_n for n=1..10".to_owned())
}

fn deterministic_cli() -> Check {
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_dpart"))
            .args(args)
            .output()
            .expect("spawn dpart")
    };
    for args in [
        ["enum", "--n", "9", "--delta", "1", "--format", "rgs"],
        ["enum", "--n", "8", "--delta", "0", "--format", "blocks"],
        ["enum", "--n", "8", "--delta", "2", "--format", "jsonl"],
    ] {
        let (a, b) = (run(&args), run(&args));
        ensure!(a.status.success() && b.status.success(), "{args:?} failed");
        ensure!(!a.stdout.is_empty(), "{args:?} produced no output");
        ensure!(a.stdout == b.stdout, "{args:?}: outputs differ");
    }
    Ok("three formats byte-identical".to_owned())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("AC1 golden trace n=4 delta=1", golden_trace),
        ("AC2 oracle equivalence n<=10", oracle_equivalence),
        ("AC3 Bell counts n=1..12", bell_counts),
        ("AC4 best-case linearity", best_case_linearity),
        ("AC5 linear space", linear_space),
        ("AC6 counter coherence", counter_coherence),
        ("AC7 pruning dominance", pruning_dominance),
        ("AC8 worst-case envelope", worst_case_envelope),
        ("AC9 deterministic enum output", deterministic_cli),
    ];

    let mut failed = 0;
    for (name, check) in criteria {
        let result = panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".to_owned()));
        match result {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
