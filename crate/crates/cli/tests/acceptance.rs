//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use lespec::instances::{catalog, ideal_lattice_le_module};
use lespec::verifier::{run_all, StatementId, Verdict, VerificationReport};
use lespec::{Error, FiniteRing, Ideal, LeModule, ModuleSpectrum, NaturalMap, PointSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MUTATION_SEED: u64 = 0x5eed_0001;
const MUTATIONS: usize = 400;
const MIN_CAUGHT: usize = 50;
const AXIOM_BUDGET: Duration = Duration::from_secs(5);
const GALOIS_BUDGET: Duration = Duration::from_secs(10);
const TOPOLOGY_BUDGET: Duration = Duration::from_secs(30);
const VERIFY_BUDGET: Duration = Duration::from_secs(120);
const MAX_BRUTE_FORCE_POINTS: usize = 12;

type Outcome = Result<String, String>;

struct Fixture {
    modules: Vec<(String, LeModule)>,
    report: VerificationReport,
}

fn main() -> ExitCode {
    let catalog_start = Instant::now();
    let built: Result<Vec<(String, LeModule)>, String> = catalog()
        .into_iter()
        .map(|d| d.build().map(|m| (d.name.clone(), m)).map_err(|e| format!("{}: {e}", d.name)))
        .collect();
    let catalog_time = catalog_start.elapsed();

    let mut failed = 0;
    let mut report = |n: usize, title: &str, outcome: Outcome| {
        match &outcome {
            Ok(detail) => println!("PASS criterion {n}: {title} ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {n}: {title} ({detail})");
            }
        }
    };

    let modules = match built {
        Ok(m) => m,
        Err(e) => {
            report(1, "axiom validation", Err(format!("catalog does not validate: {e}")));
            return ExitCode::FAILURE;
        }
    };
    let fixture = Fixture {
        report: run_all(&modules),
        modules,
    };

    report(1, "axiom validation and mutation detection", criterion_axioms(&fixture, catalog_time));
    report(2, "Galois connection", criterion_galois(&fixture));
    report(3, "closed-set identities", criterion_topology(&fixture));
    report(4, "basic opens", criterion_basis(&fixture));
    report(5, "natural map", criterion_natural_map(&fixture));
    report(6, "equivalence batteries", criterion_batteries(&fixture));
    report(7, "irreducible components", criterion_components(&fixture));
    report(8, "reference spectra", criterion_reference());
    report(9, "reproducible verify", criterion_reproducible());

    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}

fn within(start: Instant, budget: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    if t <= budget {
        Ok(t)
    } else {
        Err(format!("took {t:?}, budget {budget:?}"))
    }
}

fn require_verified(fx: &Fixture, ids: &[StatementId]) -> Result<usize, String> {
    let mut verified = 0;
    for (name, _) in &fx.modules {
        for &id in ids {
            match fx.report.verdict(name, id) {
                Some(Verdict::Verified { .. }) => verified += 1,
                Some(Verdict::NotApplicable { .. }) => {}
                Some(v) => return Err(format!("{name} {}: {v:?}", id.tag())),
                None => return Err(format!("{name} {}: missing", id.tag())),
            }
        }
    }
    Ok(verified)
}

// ---------------------------------------------------------------------------
// Criterion 1

/// Tables of one candidate structure; the lattice order stays fixed.
#[derive(Clone)]
struct Tables {
    ring_add: Vec<Vec<usize>>,
    ring_mul: Vec<Vec<usize>>,
    leq: Vec<Vec<bool>>,
    add: Vec<Vec<usize>>,
    zero: usize,
    action: Vec<Vec<usize>>,
}

impl Tables {
    fn join(&self, x: usize, y: usize) -> usize {
        let n = self.leq.len();
        let upper: Vec<usize> = (0..n).filter(|&u| self.leq[x][u] && self.leq[y][u]).collect();
        *upper
            .iter()
            .find(|&&u| upper.iter().all(|&v| self.leq[u][v]))
            .expect("lattice")
    }

    fn ring_zero(&self) -> Option<usize> {
        let k = self.ring_add.len();
        (0..k).find(|&z| (0..k).all(|x| self.ring_add[z][x] == x))
    }

    fn ring_one(&self) -> Option<usize> {
        let k = self.ring_mul.len();
        (0..k).find(|&u| (0..k).all(|x| self.ring_mul[u][x] == x))
    }

    /// Whether `witness` exhibits a failure of the named ring axiom.
    fn ring_witness_fails(&self, axiom: &str, w: &[usize]) -> bool {
        let (a, m) = (&self.ring_add, &self.ring_mul);
        let k = a.len();
        match (axiom, w) {
            ("add-commutative", &[x, y]) => a[x][y] != a[y][x],
            ("add-associative", &[x, y, z]) => a[a[x][y]][z] != a[x][a[y][z]],
            ("add-identity", &[]) => self.ring_zero().is_none(),
            ("add-inverse", &[x]) => self.ring_zero().is_some_and(|z| (0..k).all(|y| a[x][y] != z)),
            ("mul-commutative", &[x, y]) => m[x][y] != m[y][x],
            ("mul-associative", &[x, y, z]) => m[m[x][y]][z] != m[x][m[y][z]],
            ("distributive", &[x, y, z]) => m[x][a[y][z]] != a[m[x][y]][m[x][z]],
            ("mul-identity", &[]) => self.ring_one().is_none(),
            _ => false,
        }
    }

    /// Whether `witness` exhibits a failure of the named module axiom.
    fn module_witness_fails(&self, axiom: &str, w: &[usize]) -> bool {
        let (p, act, zero) = (&self.add, &self.action, self.zero);
        let (Some(r0), Some(r1)) = (self.ring_zero(), self.ring_one()) else {
            return false;
        };
        let (ra, rm) = (&self.ring_add, &self.ring_mul);
        match (axiom, w) {
            ("monoid", &[a, b]) => p[a][b] != p[b][a] || (a == zero && p[a][b] != b),
            ("monoid", &[a, b, c]) => p[p[a][b]][c] != p[a][p[b][c]],
            ("S", &[m, x, y]) => p[m][self.join(x, y)] != self.join(p[m][x], p[m][y]),
            ("M1", &[r, a, b]) => act[r][p[a][b]] != p[act[r][a]][act[r][b]],
            ("M2", &[s, t, m]) => !self.leq[act[ra[s][t]][m]][p[act[s][m]][act[t][m]]],
            ("M3", &[s, t, m]) => act[rm[s][t]][m] != act[s][act[t][m]],
            ("M4", &[r, m]) => {
                (r == r1 && act[r][m] != m) || (r == r0 && act[r][m] != zero) || (m == zero && act[r][m] != zero)
            }
            ("M5", &[r, x, y]) => act[r][self.join(x, y)] != self.join(act[r][x], act[r][y]),
            _ => false,
        }
    }

    /// Full axiom scan, sharing nothing with the library's checker.
    fn is_valid_le_module(&self) -> bool {
        let n = self.leq.len();
        let k = self.ring_add.len();
        let (Some(r0), Some(r1)) = (self.ring_zero(), self.ring_one()) else {
            return false;
        };
        let (p, act, zero) = (&self.add, &self.action, self.zero);
        let (ra, rm) = (&self.ring_add, &self.ring_mul);
        let ring_ok = (0..k).all(|x| (0..k).any(|y| ra[x][y] == r0))
            && (0..k).all(|x| {
                (0..k).all(|y| {
                    ra[x][y] == ra[y][x]
                        && rm[x][y] == rm[y][x]
                        && (0..k).all(|z| {
                            ra[ra[x][y]][z] == ra[x][ra[y][z]]
                                && rm[rm[x][y]][z] == rm[x][rm[y][z]]
                                && rm[x][ra[y][z]] == ra[rm[x][y]][rm[x][z]]
                        })
                })
            });
        let monoid = (0..n).all(|a| {
            p[zero][a] == a
                && (0..n).all(|b| p[a][b] == p[b][a] && (0..n).all(|c| p[p[a][b]][c] == p[a][p[b][c]]))
        });
        let s = (0..n).all(|m| {
            (0..n).all(|x| (0..n).all(|y| p[m][self.join(x, y)] == self.join(p[m][x], p[m][y])))
        });
        let action = (0..k).all(|r| {
            act[r][zero] == zero
                && (0..n).all(|a| {
                    (0..n).all(|b| {
                        act[r][p[a][b]] == p[act[r][a]][act[r][b]]
                            && act[r][self.join(a, b)] == self.join(act[r][a], act[r][b])
                    })
                })
                && (0..k).all(|t| {
                    (0..n).all(|m| {
                        self.leq[act[ra[r][t]][m]][p[act[r][m]][act[t][m]]] && act[rm[r][t]][m] == act[r][act[t][m]]
                    })
                })
        });
        let unit = (0..n).all(|m| act[r1][m] == m && act[r0][m] == zero);
        ring_ok && monoid && s && action && unit
    }
}

fn criterion_axioms(fx: &Fixture, catalog_time: Duration) -> Outcome {
    let start = Instant::now();
    let base = ideal_lattice_le_module(&FiniteRing::zn(6).unwrap()).map_err(|e| e.to_string())?;
    let tables = Tables {
        ring_add: base.ring().add_table(),
        ring_mul: base.ring().mul_table(),
        leq: base.lattice().leq_table(),
        add: base.add_table(),
        zero: base.zero(),
        action: base.action_table(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(MUTATION_SEED);
    let (mut caught, mut still_valid) = (0, 0);
    let mut axioms_seen = BTreeSet::new();
    for i in 0..MUTATIONS {
        let mut t = tables.clone();
        let (table, range) = match rng.gen_range(0..4) {
            0 => (&mut t.ring_add, 6),
            1 => (&mut t.ring_mul, 6),
            2 => (&mut t.add, base.size()),
            _ => (&mut t.action, base.size()),
        };
        let row = rng.gen_range(0..table.len());
        let col = rng.gen_range(0..table[row].len());
        let old = table[row][col];
        table[row][col] = (old + rng.gen_range(1..range)) % range;
        let cell = format!("mutation {i} at ({row},{col})");

        let result = FiniteRing::from_tables(&t.ring_add, &t.ring_mul).and_then(|ring| {
            let lat = base.lattice().clone();
            LeModule::from_tables(ring, lat, &t.add, t.zero, &t.action)
        });
        match result {
            Ok(_) => {
                if !t.is_valid_le_module() {
                    return Err(format!("{cell}: accepted an invalid structure"));
                }
                still_valid += 1;
            }
            Err(Error::AxiomViolation { axiom, witness }) => {
                let name = axiom.name();
                let confirmed = t.ring_witness_fails(name, &witness) || t.module_witness_fails(name, &witness);
                if !confirmed {
                    return Err(format!("{cell}: {name} witness {witness:?} does not fail"));
                }
                if t.is_valid_le_module() {
                    return Err(format!("{cell}: rejected a valid structure"));
                }
                axioms_seen.insert(name);
                caught += 1;
            }
            Err(e) => return Err(format!("{cell}: unexpected error {e}")),
        }
    }
    if caught < MIN_CAUGHT {
        return Err(format!("only {caught} mutations caught, need {MIN_CAUGHT}"));
    }
    let t = within(start, AXIOM_BUDGET)?;
    Ok(format!(
        "{} catalog instances valid in {catalog_time:?}; {caught} mutations rejected with confirmed witnesses, \
         {still_valid} still valid; axioms hit {axioms_seen:?}; {t:?}",
        fx.modules.len()
    ))
}

// ---------------------------------------------------------------------------
// Criterion 2

/// `Ie` as the least submodule element above every `ae`, found by scanning.
fn ideal_action_oracle(m: &LeModule, ideal: &Ideal) -> usize {
    let subs = submodule_oracle(m);
    let above: Vec<usize> = subs
        .iter()
        .copied()
        .filter(|&n| ideal.members().iter().all(|&a| m.leq(m.act(a, m.top()), n)))
        .collect();
    *above
        .iter()
        .find(|&&n| above.iter().all(|&l| m.leq(n, l)))
        .expect("least element")
}

fn submodule_oracle(m: &LeModule) -> Vec<usize> {
    m.lattice()
        .elements()
        .filter(|&n| m.leq(m.add(n, n), n) && m.ring().elements().all(|r| m.leq(m.act(r, n), n)))
        .collect()
}

fn colon_oracle(m: &LeModule, n: usize) -> BTreeSet<usize> {
    m.ring().elements().filter(|&r| m.leq(m.act(r, m.top()), n)).collect()
}

fn criterion_galois(fx: &Fixture) -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for (name, m) in &fx.modules {
        let subs = submodule_oracle(m);
        if subs != m.submodule_elements() {
            return Err(format!("{name}: submodule elements differ from scan"));
        }
        for ideal in m.ideals() {
            let ie = ideal_action_oracle(m, ideal);
            if ie != m.ideal_action(ideal) {
                return Err(format!("{name}: {ideal}e differs from least upper bound scan"));
            }
            for &n in &subs {
                let colon = colon_oracle(m, n);
                let lhs = m.leq(ie, n);
                let rhs = ideal.members().iter().all(|a| colon.contains(a));
                if lhs != rhs || !m.galois_holds(ideal, n) {
                    return Err(format!("{name}: {ideal} and n = {n}"));
                }
                pairs += 1;
            }
        }
    }
    require_verified(fx, &[StatementId::L2_1])?;
    let t = within(start, GALOIS_BUDGET)?;
    Ok(format!("{pairs} (ideal, submodule element) pairs; {t:?}"))
}

// ---------------------------------------------------------------------------
// Criterion 3

fn prime_oracle(m: &LeModule) -> Vec<usize> {
    let subs = submodule_oracle(m);
    subs.iter()
        .copied()
        .filter(|&p| {
            let colon = colon_oracle(m, p);
            p != m.top()
                && m.ring().elements().all(|r| {
                    subs.iter().all(|&n| !m.leq(m.act(r, n), p) || colon.contains(&r) || m.leq(n, p))
                })
        })
        .collect()
}

fn vstar_oracle(m: &LeModule, primes: &[usize], n: usize) -> PointSet {
    let cn = colon_oracle(m, n);
    primes.iter().copied().filter(|&p| cn.is_subset(&colon_oracle(m, p))).collect()
}

fn v_oracle(primes: &[usize], m: &LeModule, n: usize) -> PointSet {
    primes.iter().copied().filter(|&p| m.leq(n, p)).collect()
}

fn criterion_topology(fx: &Fixture) -> Outcome {
    let start = Instant::now();
    let ids = [StatementId::P3_1, StatementId::L3_2, StatementId::P3_4, StatementId::T3_5];
    let verified = require_verified(fx, &ids)?;
    for (name, m) in &fx.modules {
        let primes = prime_oracle(m);
        if primes != m.spectrum() {
            return Err(format!("{name}: spectrum differs from definition scan"));
        }
        let star: BTreeSet<PointSet> =
            submodule_oracle(m).into_iter().map(|n| vstar_oracle(m, &primes, n)).collect();
        let prime: BTreeSet<PointSet> =
            m.ideals().iter().map(|i| v_oracle(&primes, m, ideal_action_oracle(m, i))).collect();
        if star != prime {
            return Err(format!("{name}: V*-family and V(Ie)-family differ"));
        }
        if star != ModuleSpectrum::new(m).star_family() {
            return Err(format!("{name}: library V*-family differs from oracle"));
        }
    }
    let t = within(start, TOPOLOGY_BUDGET)?;
    Ok(format!("{verified} verdicts verified, 0 violations; {t:?}"))
}

// ---------------------------------------------------------------------------
// Criterion 4

fn criterion_basis(fx: &Fixture) -> Outcome {
    let verified = require_verified(fx, &[StatementId::L5_2, StatementId::T5_3])?;
    for (name, m) in &fx.modules {
        let primes = prime_oracle(m);
        let all: PointSet = primes.iter().copied().collect();
        let basic = |r: usize| -> PointSet {
            let v = vstar_oracle(m, &primes, m.act(r, m.top()));
            all.difference(&v).copied().collect()
        };
        let spec = ModuleSpectrum::new(m);
        for r in m.ring().elements() {
            if basic(r) != spec.basic_open(r) {
                return Err(format!("{name}: X_{r} differs from oracle"));
            }
        }
        for n in submodule_oracle(m) {
            let open: PointSet = all.difference(&vstar_oracle(m, &primes, n)).copied().collect();
            let covered: PointSet = m
                .ring()
                .elements()
                .map(basic)
                .filter(|x| x.is_subset(&open))
                .flatten()
                .collect();
            if covered != open {
                return Err(format!("{name}: complement of V*({n}) is not a union of basic opens"));
            }
        }
    }
    Ok(format!("{verified} verdicts verified"))
}

// ---------------------------------------------------------------------------
// Criterion 5

fn criterion_natural_map(fx: &Fixture) -> Outcome {
    let verified = require_verified(fx, &[StatementId::P4_1, StatementId::P5_1, StatementId::T4_3])?;
    let mut surjective = 0;
    for (name, m) in &fx.modules {
        let spec = ModuleSpectrum::new(m);
        let Ok(psi) = NaturalMap::new(&spec) else { continue };
        let ann: BTreeSet<usize> =
            m.ring().elements().filter(|&r| m.lattice().elements().all(|x| m.act(r, x) == m.zero())).collect();
        for &p in spec.points() {
            let colon = colon_oracle(m, p);
            if !ann.is_subset(&colon) {
                return Err(format!("{name}: Ann(M) ⊄ ({p}:e)"));
            }
            let image: BTreeSet<usize> = colon.iter().map(|&r| psi.projection()[r]).collect();
            let target = &psi.quotient_spectrum().points[psi.apply(p)];
            if image != *target.members() {
                return Err(format!("{name}: ψ({p}) is not the image of ({p}:e)"));
            }
        }
        if psi.is_surjective() {
            surjective += 1;
            if !matches!(fx.report.verdict(name, StatementId::T4_3), Some(Verdict::Verified { .. })) {
                return Err(format!("{name}: T4.3 not evaluated on a surjective ψ"));
            }
        }
    }
    Ok(format!("{verified} verdicts verified; ψ surjective on {surjective} instances"))
}

// ---------------------------------------------------------------------------
// Criterion 6

fn criterion_batteries(fx: &Fixture) -> Outcome {
    let ids = [StatementId::P4_2, StatementId::T4_5, StatementId::T7_1, StatementId::P6_2, StatementId::T7_4];
    let (mut verified, mut not_met, mut not_applicable) = (0, 0, 0);
    for (name, _) in &fx.modules {
        for &id in &ids {
            match fx.report.verdict(name, id) {
                Some(Verdict::Verified { clauses }) => {
                    if clauses.as_ref().is_some_and(|tv| !tv.all_equal()) {
                        return Err(format!("{name} {}: clauses disagree", id.tag()));
                    }
                    verified += 1;
                }
                Some(Verdict::HypothesisNotMet { .. }) => not_met += 1,
                Some(Verdict::NotApplicable { .. }) => not_applicable += 1,
                other => return Err(format!("{name} {}: {other:?}", id.tag())),
            }
        }
    }
    let z2 = fx
        .modules
        .iter()
        .find(|(n, _)| n == "Z2xZ2-over-Z2")
        .map(|(_, m)| ModuleSpectrum::new(m))
        .ok_or("Z2xZ2-over-Z2 missing")?;
    if z2.zariski().is_t1() || z2.at_most_one_per_prime() {
        return Err("Z2xZ2-over-Z2 should fail T1 and the one-point-per-prime condition".into());
    }
    let falsified = fx.report.summary.falsified;
    if falsified != 0 {
        return Err(format!("{falsified} falsified entries in the full report"));
    }
    Ok(format!(
        "falsified 0; verified {verified}, hypothesis not met {not_met}, not applicable {not_applicable}"
    ))
}

// ---------------------------------------------------------------------------
// Criterion 7

fn criterion_components(fx: &Fixture) -> Outcome {
    let verified = require_verified(fx, &[StatementId::T6_6, StatementId::C6_3])?;
    let mut compared = 0;
    for (name, m) in &fx.modules {
        let space = ModuleSpectrum::new(m).zariski();
        if space.points().len() > MAX_BRUTE_FORCE_POINTS {
            continue;
        }
        let mut fast = space.irreducible_components();
        fast.sort();
        if fast != space.irreducible_components_brute_force() {
            return Err(format!("{name}: components differ from brute force"));
        }
        compared += 1;
    }
    Ok(format!("{verified} verdicts verified; components match brute force on {compared} spectra"))
}

// ---------------------------------------------------------------------------
// Criterion 8

fn distinct_prime_divisors(n: usize) -> usize {
    (2..=n).filter(|&p| n.is_multiple_of(p) && (2..p).all(|d| p % d != 0)).count()
}

fn criterion_reference() -> Outcome {
    let expected = [(4, 1), (6, 2), (12, 2), (30, 3)];
    for (n, size) in expected {
        let m = ideal_lattice_le_module(&FiniteRing::zn(n).unwrap()).map_err(|e| e.to_string())?;
        let got = ModuleSpectrum::new(&m).points().len();
        if got != size || got != distinct_prime_divisors(n) {
            return Err(format!("|Spec| for Z{n} is {got}, expected {size}"));
        }
    }
    let props = |n| {
        let m = ideal_lattice_le_module(&FiniteRing::zn(n).unwrap()).unwrap();
        ModuleSpectrum::new(&m).zariski().properties()
    };
    let z6 = props(6);
    let discrete = {
        let m = ideal_lattice_le_module(&FiniteRing::zn(6).unwrap()).unwrap();
        let space = ModuleSpectrum::new(&m).zariski();
        space.points().iter().all(|&p| space.is_open(&PointSet::from([p])))
    };
    if !discrete || z6.connected {
        return Err("Z6 should be discrete and disconnected".into());
    }
    let z4 = props(4);
    if !z4.connected || !z4.spectral {
        return Err("Z4 should be connected and spectral".into());
    }
    Ok("|Spec| = 1, 2, 2, 3 for Z4, Z6, Z12, Z30; Z6 discrete, disconnected; Z4 connected, spectral".into())
}

// ---------------------------------------------------------------------------
// Criterion 9

fn criterion_reproducible() -> Outcome {
    let start = Instant::now();
    let run = || -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_lespec"))
            .args(["--format", "structured", "verify"])
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("verify exited with {}", out.status));
        }
        Ok(out.stdout)
    };
    let first = run()?;
    let second = run()?;
    if first != second {
        return Err("the two runs differ".into());
    }
    let parsed: serde_json::Value = serde_json::from_slice(&first).map_err(|e| e.to_string())?;
    let entries = parsed["entries"].as_array().map_or(0, Vec::len);
    let t = within(start, VERIFY_BUDGET)?;
    Ok(format!("{} bytes, {entries} entries, identical across runs; {t:?}", first.len()))
}
