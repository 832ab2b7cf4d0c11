//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails. Pass criterion numbers as arguments to run a
//! subset, e.g. `cargo test --test acceptance -- 2 4`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use blackpeg::bench::{bench, trial_seed, BenchConfig};
use blackpeg::game::{run_game, CodewordSource, GameConfig, ZeroFinderArg};
use blackpeg::record::summarize;
use blackpeg_core::infotree::{TokenState, TreeShape};
use blackpeg_core::reduction::{find_disjoint_singles, find_zero_deterministic, find_zero_randomized, RawOracle};
use blackpeg_core::solver::{combine3, decode3, run_signed_solver_on, PermutationOracle};
use blackpeg_core::{black_pegs, signed_black_pegs, white_pegs, Color, Error, Phase, SignedQuery};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Pinned thresholds.
const GAME_SEEDS: [u64; 3] = [1, 2, 3];
const SIGNED_RANDOM_TRIALS: usize = 200;
const BENCH_TRIALS: usize = 50;
const MAX_QUERIES_PER_POSITION: usize = 50;
const MAX_DOUBLING_RATIO: f64 = 2.2;
const TRIPLE_TRIALS: usize = 10_000;
const ZERO_TRIALS: usize = 1000;
const MAX_MEAN_ZERO_QUERIES: f64 = 4.0;
const SINGLES_TRIALS: usize = 100;
const SINGLES_RATE_SLACK: f64 = 0.05;
const MAX_SINGLES_PER_POSITION: f64 = 3.2;
const COLOR_TRIALS: usize = 50;
const WHITE_TRIALS: usize = 500;

type Check = fn() -> Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn permutations(n: usize) -> Vec<Vec<Color>> {
    fn go(prefix: &mut Vec<Color>, used: &mut [bool], out: &mut Vec<Vec<Color>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for c in 0..used.len() {
            if !used[c] {
                used[c] = true;
                prefix.push(c as Color + 1);
                go(prefix, used, out);
                prefix.pop();
                used[c] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Every string of length `n` over `1..=k`.
fn all_codewords(n: usize, k: Color) -> Vec<Vec<Color>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..=k).map(move |c| {
                    let mut w = w.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// Honest black-peg oracle that keeps answering after a win.
struct Plain {
    code: Vec<Color>,
    queries: usize,
}

impl RawOracle for Plain {
    fn n(&self) -> usize {
        self.code.len()
    }

    fn ask(&mut self, q: &[Color], _: Phase) -> Result<usize, Error> {
        self.queries += 1;
        black_pegs(&self.code, q)
    }
}

fn c1_exhaustive_small_games() -> Result<String, String> {
    let mut games = 0;
    for n in 2..=4 {
        for code in all_codewords(n, n as Color) {
            for seed in GAME_SEEDS {
                for zf in [ZeroFinderArg::Det, ZeroFinderArg::Rand] {
                    let mut cfg = GameConfig::new(n, n as Color);
                    cfg.seed = seed;
                    cfg.zero_finder = zf;
                    cfg.codeword = CodewordSource::Explicit(code.clone());
                    let r = run_game(&cfg).map_err(|e| format!("{code:?} seed {seed}: {e}"))?;
                    ensure(r.solution.0 == code, || format!("{code:?}: got {:?}", r.solution.0))?;
                    games += 1;
                }
            }
        }
    }
    Ok(format!("{games} games, all solved"))
}

fn signed_check(perm: &[Color]) -> Result<(), String> {
    let n = perm.len();
    let shape = TreeShape::new(n).map_err(|e| e.to_string())?;
    let n_t = shape.n_t();
    let mut tokens = TokenState::new(&shape).with_witness(perm).map_err(|e| e.to_string())?;
    let mut oracle = PermutationOracle::new(perm.to_vec()).map_err(|e| e.to_string())?;
    let sol = run_signed_solver_on(&shape, &mut tokens, &mut oracle).map_err(|e| format!("{perm:?}: {e}"))?;
    let s = sol.stats;
    ensure(sol.permutation == perm, || format!("{perm:?}: got {:?}", sol.permutation))?;
    ensure(s.preprocess <= 3 * n_t, || format!("{perm:?}: preprocess {} > 3 n_T", s.preprocess))?;
    ensure(s.solve <= 6 * n_t, || format!("{perm:?}: solve {} > 6 n_T", s.solve))?;
    ensure(s.total() <= 9 * n_t && oracle.queries() == s.total(), || format!("{perm:?}: total {}", s.total()))
}

fn c2_signed_solver_budgets() -> Result<String, String> {
    let mut count = 0;
    for n in [4, 8] {
        for p in permutations(n) {
            signed_check(&p)?;
            count += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in [16, 64, 256] {
        for _ in 0..SIGNED_RANDOM_TRIALS {
            let mut p: Vec<Color> = (1..=n as Color).collect();
            p.shuffle(&mut rng);
            signed_check(&p)?;
            count += 1;
        }
    }
    Ok(format!("{count} permutations within 3/6/9 n_T"))
}

fn c3_linear_scaling() -> Result<String, String> {
    let sizes: Vec<usize> = (6..=12).map(|e| 1 << e).collect();
    let records = bench(&BenchConfig::new(sizes, BENCH_TRIALS, 3)).map_err(|e| e.to_string())?;
    let summary = summarize(&records);
    for s in &summary {
        ensure(s.max_total <= MAX_QUERIES_PER_POSITION * s.n, || {
            format!("n={}: max {} > {MAX_QUERIES_PER_POSITION} n", s.n, s.max_total)
        })?;
    }
    let mut worst: f64 = 0.0;
    for w in summary.windows(2) {
        let ratio = w[1].mean_total / w[0].mean_total;
        worst = worst.max(ratio);
        ensure(ratio <= MAX_DOUBLING_RATIO, || format!("n={} -> {}: ratio {ratio:.3}", w[0].n, w[1].n))?;
    }
    let last = summary.last().unwrap();
    Ok(format!(
        "max per-doubling ratio {worst:.3}, mean/n at n={} is {:.2}",
        last.n,
        last.mean_total / last.n as f64
    ))
}

fn c4_combine_decode() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for t in 0..TRIPLE_TRIALS {
        let n = rng.gen_range(2..=32);
        let mut perm: Vec<Color> = (1..=n as Color).collect();
        perm.shuffle(&mut rng);
        let token = rng.gen_range(1..=n as i32);
        let (mut e1, mut e2, mut es) = (vec![], vec![], vec![]);
        for pos in 0..n {
            match rng.gen_range(0..4) {
                0 => e1.push((pos, rng.gen_range(-(n as i32)..=n as i32))),
                1 => e2.push((pos, rng.gen_range(-(n as i32)..=n as i32))),
                2 => es.push((pos, token)),
                _ => {}
            }
        }
        e1.retain(|&(_, v)| v != 0);
        e2.retain(|&(_, v)| v != 0);
        let q1 = SignedQuery::from_sparse(n, e1).unwrap();
        let q2 = SignedQuery::from_sparse(n, e2).unwrap();
        let s = SignedQuery::from_sparse(n, es).unwrap();
        let (w1, w2) = combine3(&q1, &q2, &s).map_err(|e| e.to_string())?;
        let b = |q: &SignedQuery| signed_black_pegs(&perm, q).unwrap();
        let want = (b(&q1), b(&q2), b(&s));
        let got = decode3(b(&w1), b(&w2));
        ensure(got == want, || format!("trial {t}: decoded {got:?}, expected {want:?}"))?;
    }
    Ok(format!("{TRIPLE_TRIALS} triples decoded exactly"))
}

fn c5_zero_finders() -> Result<String, String> {
    let mut cases = 0;
    for n in 1..=4 {
        for k in 2..=4 {
            for code in all_codewords(n, k) {
                let mut o = Plain { code: code.clone(), queries: 0 };
                let z = find_zero_deterministic(&mut o, k).map_err(|e| format!("{code:?}: {e}"))?;
                ensure(o.queries == n + 1 && z.cost == n + 1, || format!("{code:?}: {} queries", o.queries))?;
                ensure(black_pegs(&code, &z.query).unwrap() == 0, || format!("{code:?}: z={:?}", z.query))?;
                cases += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 100;
    let mut total = 0;
    for _ in 0..ZERO_TRIALS {
        let code: Vec<Color> = (0..n).map(|_| rng.gen_range(1..=n as Color)).collect();
        let mut o = Plain { code: code.clone(), queries: 0 };
        let z = find_zero_randomized(&mut o, &mut rng).map_err(|e| e.to_string())?;
        ensure(black_pegs(&code, &z.query).unwrap() == 0, || "randomized zero scores".into())?;
        total += o.queries;
    }
    let mean = total as f64 / ZERO_TRIALS as f64;
    ensure(mean <= MAX_MEAN_ZERO_QUERIES, || format!("randomized mean {mean:.3}"))?;
    Ok(format!("{cases} exhaustive cases with n+1 queries; randomized mean {mean:.3} at n={n}"))
}

fn c6_disjoint_singles() -> Result<String, String> {
    let n = 256;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut samples = 0;
    for _ in 0..SINGLES_TRIALS {
        let code: Vec<Color> = (0..n).map(|_| rng.gen_range(1..=n as Color)).collect();
        let mut o = Plain { code: code.clone(), queries: 0 };
        let singles = find_disjoint_singles(&mut o, &mut rng).map_err(|e| e.to_string())?;
        ensure(o.queries == singles.samples, || "sample count".into())?;
        let mut used = vec![vec![false; n + 1]; n];
        for j in 1..=n as Color {
            let q = singles.single(j);
            ensure(black_pegs(&code, &q).unwrap() == 1, || format!("single {j} does not score 1"))?;
            for (pos, &c) in q.iter().enumerate() {
                ensure(!std::mem::replace(&mut used[pos][c as usize], true), || "singles overlap".into())?;
            }
        }
        samples += singles.samples;
    }
    let rate = (n * SINGLES_TRIALS) as f64 / samples as f64;
    let mean = samples as f64 / SINGLES_TRIALS as f64;
    let floor = (-1f64).exp() - SINGLES_RATE_SLACK;
    ensure(rate >= floor, || format!("acceptance rate {rate:.3} < {floor:.3}"))?;
    ensure(mean <= MAX_SINGLES_PER_POSITION * n as f64, || format!("mean samples {mean:.1}"))?;
    Ok(format!("acceptance rate {rate:.3}, mean {:.2} n samples", mean / n as f64))
}

fn c7_other_color_counts() -> Result<String, String> {
    let mut notes = Vec::new();
    for (n, k) in [(64usize, 8 as Color), (16, 100)] {
        let budget = if k as usize > n { k as usize + MAX_QUERIES_PER_POSITION * n } else { MAX_QUERIES_PER_POSITION * n };
        let mut worst = 0;
        for t in 0..COLOR_TRIALS {
            let mut cfg = GameConfig::new(n, k);
            cfg.seed = trial_seed(7, t);
            let r = run_game(&cfg).map_err(|e| format!("n={n} k={k}: {e}"))?;
            ensure(r.solution.0 == r.codeword, || format!("n={n} k={k}: wrong solution"))?;
            worst = worst.max(r.counts.total());
        }
        ensure(worst <= budget, || format!("n={n} k={k}: {worst} > {budget}"))?;
        notes.push(format!("n={n} k={k} max {worst} <= {budget}"));
    }
    Ok(notes.join("; "))
}

fn c8_determinism() -> Result<String, String> {
    let exe = env!("CARGO_BIN_EXE_blackpeg");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |args: &[&str]| -> Result<(), String> {
        let out = Command::new(exe).args(args).output().map_err(|e| e.to_string())?;
        ensure(out.status.success(), || {
            format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr))
        })
    };
    let read = |name: &str| std::fs::read(dir.path().join(name)).map_err(|e| e.to_string());
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let mut compared = 0;
    for tag in ["a", "b"] {
        run(&["solve", "--n", "32", "--k", "20", "--seed", "9", "--zero-finder", "rand", "--transcript", &path(&format!("t_{tag}.jsonl"))])?;
        run(&["solve", "--codeword", "3,1,4,1,5,9,2,6,5", "--k", "9", "--seed", "9", "--transcript", &path(&format!("c_{tag}.jsonl"))])?;
        for format in ["csv", "jsonl"] {
            run(&["bench", "--n-list", "8,16,64", "--trials", "5", "--seed", "9", "--format", format, "--out", &path(&format!("b_{tag}.{format}"))])?;
        }
    }
    for name in ["t_{}.jsonl", "c_{}.jsonl", "b_{}.csv", "b_{}.jsonl"] {
        let a = read(&name.replace("{}", "a"))?;
        let b = read(&name.replace("{}", "b"))?;
        ensure(!a.is_empty() && a == b, || format!("{name} differs between runs"))?;
        compared += 1;
    }
    Ok(format!("{compared} file pairs byte-identical"))
}

fn c9_white_pegs() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for t in 0..WHITE_TRIALS {
        let n = rng.gen_range(1..=6);
        let k = rng.gen_range(1..=6);
        let c: Vec<Color> = (0..n).map(|_| rng.gen_range(1..=k)).collect();
        let q: Vec<Color> = (0..n).map(|_| rng.gen_range(1..=k)).collect();
        let black = black_pegs(&c, &q).unwrap();
        let best = permutations(n)
            .iter()
            .map(|p| p.iter().enumerate().filter(|&(i, &j)| c[i] == q[j as usize - 1]).count())
            .max()
            .unwrap();
        let white = white_pegs(&c, &q).unwrap();
        ensure(white == best - black, || format!("trial {t}: c={c:?} q={q:?} white {white}, oracle {}", best - black))?;
    }
    Ok(format!("{WHITE_TRIALS} random pairs match the permutation oracle"))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, Duration, Check); 9] = [
        (1, "exhaustive games n = k <= 4", Duration::from_secs(10), c1_exhaustive_small_games),
        (2, "signed solver budgets", Duration::from_secs(60), c2_signed_solver_budgets),
        (3, "linear query growth n = 64..4096", Duration::from_secs(300), c3_linear_scaling),
        (4, "combine/decode round trip", Duration::from_secs(60), c4_combine_decode),
        (5, "zero-string finders", Duration::from_secs(60), c5_zero_finders),
        (6, "disjoint singles sampling", Duration::from_secs(60), c6_disjoint_singles),
        (7, "fewer and more colors than positions", Duration::from_secs(60), c7_other_color_counts),
        (8, "reproducible transcripts and bench files", Duration::from_secs(60), c8_determinism),
        (9, "white pegs against brute force", Duration::from_secs(60), c9_white_pegs),
    ];
    let selected: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        if !selected.is_empty() && !selected.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".into()))
            .and_then(|detail| {
                let took = start.elapsed();
                ensure(took <= limit, || format!("took {took:.1?}, limit {limit:?}")).map(|_| detail)
            });
        let took = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {id} {name}: {detail} ({took:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL {id} {name}: {why} ({took:.1}s)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
