//! Acceptance suite: one line per criterion, with the time budget of each.

use rayon::prelude::*;
use schurlab::ci::{cayley, is_ci_subset, is_dci_group, OracleTable, SCAN_CAP};
use schurlab::cli::dispatch;
use schurlab::lemmas::{run_check, Scope};
use schurlab::nets::build_net;
use schurlab::nets::Pcp;
use schurlab::rational::{
    analyze_matrix, matrix_to_partition, primitive_rational_search, Corner, MatrixVerdict, RatContext,
};
use schurlab::sring::{complete_traces, enumerate_srings, SchurRing, ENUMERATION_CAP};
use schurlab::{Elem, Group};
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::io::Write;
use std::time::{Duration, Instant};

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn grp(s: &str) -> Group {
    Group::parse(s).unwrap()
}

// ---------- independent oracles ----------

/// Naive S-ring axioms for a partition given as a class index per element.
fn naive_is_sring(g: &Group, class: &[usize]) -> bool {
    let n = g.order();
    let k = class.iter().max().unwrap() + 1;
    if (1..n).any(|x| class[x] == class[0]) {
        return false;
    }
    let mut members = vec![Vec::new(); k];
    for x in 0..n {
        members[class[x]].push(x);
    }
    // inverse closure
    for c in &members {
        let inv = class[g.neg(c[0])];
        if c.iter().any(|&x| class[g.neg(x)] != inv) {
            return false;
        }
    }
    // X*Y is constant on every class
    for a in &members {
        for b in &members {
            let mut coeff = vec![0u32; n];
            for &x in a {
                for &y in b {
                    coeff[g.add(x, y)] += 1;
                }
            }
            if (0..n).any(|z| coeff[z] != coeff[members[class[z]][0]]) {
                return false;
            }
        }
    }
    true
}

/// Every partition of the non-identity elements, as restricted growth strings.
fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for c in 1..=max + 1 {
            cur.push(c);
            go(i + 1, n, cur, max.max(c), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, &mut vec![0], 0, &mut out);
    out
}

fn naive_count(g: &Group) -> usize {
    all_partitions(g.order()).iter().filter(|c| naive_is_sring(g, c)).count()
}

/// Whether some bijection fixing 0 maps the basic relations of `a` onto
/// those of `b`, by trying every permutation.
fn naive_isomorphic(a: &SchurRing, b: &SchurRing) -> bool {
    let g = a.group();
    let n = g.order();
    if a.rank() != b.rank() {
        return false;
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let mut found = false;
    permute(&mut rest, 0, &mut |perm| {
        let mut phi = vec![0];
        phi.extend_from_slice(perm);
        let mut sigma: BTreeMap<usize, usize> = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                let ca = a.class_of(g.sub(y, x));
                let cb = b.class_of(g.sub(phi[y], phi[x]));
                if *sigma.entry(ca).or_insert(cb) != cb {
                    return false;
                }
            }
        }
        found = sigma.values().collect::<BTreeSet<_>>().len() == sigma.len();
        found
    });
    found
}

fn permute(v: &mut Vec<usize>, i: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if i == v.len() {
        return f(v);
    }
    for j in i..v.len() {
        v.swap(i, j);
        if permute(v, i + 1, f) {
            v.swap(i, j);
            return true;
        }
        v.swap(i, j);
    }
    false
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn primitive_root(p: u64) -> u64 {
    (2..p).find(|&r| (1..p - 1).all(|e| (0..e).fold(1, |acc, _| acc * r % p) != 1)).unwrap()
}

fn convolution_coefficient(g: &Group, y: &[Elem], h: Elem) -> i64 {
    let mut c = 0;
    for &a in y {
        for &b in y {
            if g.add(a, b) == h {
                c += 1;
            }
        }
    }
    c
}

fn naive_radical(g: &Group, set: &[Elem]) -> Vec<Elem> {
    let s: HashSet<Elem> = set.iter().copied().collect();
    g.elements().filter(|&r| set.iter().all(|&x| s.contains(&g.add(x, r)))).collect()
}

// ---------- criteria ----------

fn c1_enumeration_counts() -> Check {
    let mut parts = Vec::new();
    for (name, expected) in [("Z4", 3), ("Z5", 3), ("C2xC2", 5)] {
        let g = grp(name);
        let rings = enumerate_srings(&g, ENUMERATION_CAP).map_err(|e| e.to_string())?;
        for r in &rings {
            ensure(SchurRing::validate_partition(&g, r.classes()).is_ok(), format!("{name}: invalid partition"))?;
        }
        let oracle = naive_count(&g);
        ensure(
            rings.len() == expected && oracle == expected,
            format!("{name}: {} enumerated, {oracle} by oracle", rings.len()),
        )?;
        parts.push(format!("{name}={}", rings.len()));
    }
    Ok(parts.join(" "))
}

fn c2_prime_cyclic_cyclotomic() -> Check {
    let mut parts = Vec::new();
    for p in [3u64, 5, 7] {
        let g = Group::new(&[p]).unwrap();
        let rings = enumerate_srings(&g, ENUMERATION_CAP).map_err(|e| e.to_string())?;
        let r = primitive_root(p);
        let mut cyc = Vec::new();
        for d in divisors(p - 1) {
            let m = (0..(p - 1) / d).fold(1, |acc, _| acc * r % p);
            cyc.push(SchurRing::cyclotomic(&g, &[g.power_map(m as i64)]).map_err(|e| e.to_string())?);
        }
        ensure(rings.len() == cyc.len(), format!("Z{p}: {} S-rings, {} subgroups of Aut", rings.len(), cyc.len()))?;
        for a in &rings {
            ensure(cyc.contains(a), format!("Z{p}: S-ring {:?} is not cyclotomic", a.classes()))?;
        }
        parts.push(format!("Z{p}={}", rings.len()));
    }
    Ok(parts.join(" "))
}

fn c3_two_p_srings() -> Check {
    let g = grp("C3xC3");
    let rings = enumerate_srings(&g, ENUMERATION_CAP).map_err(|e| e.to_string())?;
    let p_rings: Vec<&SchurRing> =
        rings.iter().filter(|a| a.classes().iter().all(|c| [1, 3, 9].contains(&c.len()))).collect();
    let mut reps: Vec<&SchurRing> = Vec::new();
    for a in p_rings {
        if !reps.iter().any(|r| naive_isomorphic(a, r)) {
            reps.push(a);
        }
    }
    let mut ranks: Vec<usize> = reps.iter().map(|r| r.rank()).collect();
    ranks.sort_unstable();
    // the group ring has rank 9 and C3 wr C3 has 3 + 2 classes
    ensure(ranks == vec![5, 9], format!("classes of ranks {ranks:?}"))?;
    let wreath = reps.iter().find(|r| r.rank() == 5).unwrap();
    let sizes: Vec<usize> = wreath.classes().iter().map(|c| c.len()).collect();
    ensure(
        sizes.iter().filter(|&&s| s == 1).count() == 3 && sizes.iter().filter(|&&s| s == 3).count() == 2,
        "wreath shape",
    )?;
    let lemma = run_check("EqP2P", &Scope { p: Some(3), ..Scope::default() }).map_err(|e| e.to_string())?;
    ensure(lemma.failed == 0 && lemma.passed == 1, "library check disagrees")?;
    Ok(format!("{} classes, ranks {ranks:?}", reps.len()))
}

fn c4_prop_w_sweep() -> Check {
    let names = ["Z6", "Z10", "Z12", "Z15"];
    let mut primitive = 0;
    for name in names {
        let g = grp(name);
        for a in enumerate_srings(&g, ENUMERATION_CAP).map_err(|e| e.to_string())? {
            let proper_a_subgroup = g.elements().skip(1).any(|x| {
                let h = g.generated(&[x]);
                h.order() < g.order() && a.is_a_set(h.members())
            });
            if !proper_a_subgroup {
                primitive += 1;
                ensure(a.rank() == 2, format!("{name}: primitive S-ring of rank {}", a.rank()))?;
            }
        }
    }
    let groups = Some(names.iter().map(|n| grp(n)).collect());
    let r = run_check("PropW", &Scope { groups, ..Scope::default() }).map_err(|e| e.to_string())?;
    ensure(r.failed == 0, format!("{} failures", r.failed))?;
    Ok(format!("{primitive} primitive S-rings, 0 failures"))
}

fn c5_trace_rank() -> Check {
    let mut parts = Vec::new();
    for (name, expected) in [("C2xC2xC3xC3", 20), ("C3xC3", 5)] {
        let g = grp(name);
        let rank = complete_traces(&g).rank();
        // one trace class per cyclic subgroup
        let cyclic: BTreeSet<Vec<Elem>> = g.elements().map(|x| g.generated(&[x]).members().to_vec()).collect();
        let formula: u64 = g.primes().iter().map(|&p| p + 2).product();
        ensure(
            rank == expected && cyclic.len() == expected && formula == expected as u64,
            format!("{name}: rank {rank}"),
        )?;
        parts.push(format!("{name}={rank}"));
    }
    Ok(parts.join(" "))
}

fn c6_babai_equivalence() -> Check {
    let mut groups: Vec<Group> = Vec::new();
    for n in 2..=8 {
        groups.extend(Group::abelian_groups(n).unwrap());
    }
    groups.push(grp("Z9"));
    let mut total = 0;
    for g in &groups {
        let oracle = OracleTable::new(g).map_err(|e| e.to_string())?;
        let n = g.order();
        let disagreements: Vec<Vec<Elem>> = (0u64..1 << (n - 1))
            .into_par_iter()
            .filter_map(|mask| {
                let set: Vec<Elem> = (1..n).filter(|x| mask >> (x - 1) & 1 == 1).collect();
                let fast = is_ci_subset(g, &set).unwrap().ci;
                (fast != oracle.is_ci(&set).unwrap()).then_some(set)
            })
            .collect();
        if let Some(set) = disagreements.first() {
            return Err(format!("{}: disagreement at {set:?}", g.name()));
        }
        total += 1usize << (n - 1);
    }
    Ok(format!("{} groups, {total} connection sets, 0 disagreements", groups.len()))
}

fn cyclic_dci_classification(n: u64) -> bool {
    // n = a b with a | 4 and b square-free odd
    let a = [4, 2, 1].into_iter().find(|a| n.is_multiple_of(*a)).unwrap();
    let b = n / a;
    b % 2 == 1 && (2..=b).all(|d| !b.is_multiple_of(d * d))
}

fn c7_dci_scans() -> Check {
    let mut parts = Vec::new();
    for (name, n) in [("Z6", 6u64), ("Z8", 8), ("Z9", 9)] {
        let g = grp(name);
        let r = is_dci_group(&g, SCAN_CAP, None).map_err(|e| e.to_string())?;
        let expected = [true, false, false][parts.len()];
        ensure(r.dci == expected, format!("{name}: dci = {}", r.dci))?;
        ensure(r.dci == cyclic_dci_classification(n), format!("{name}: classification disagrees"))?;
        if !r.dci {
            let s = r.least_non_ci.clone().unwrap();
            let w = r.witness.clone().ok_or(format!("{name}: no witness"))?;
            let t = w.other_set.clone();
            // the map is an isomorphism Cay(G, T) -> Cay(G, S)
            let (cs, ct) = (cayley(&g, &s).unwrap(), cayley(&g, &t).unwrap());
            let iso = &w.isomorphism;
            let is_iso = g.elements().all(|x| g.elements().all(|y| ct.has_arc(x, y) == cs.has_arc(iso[x], iso[y])));
            ensure(is_iso, format!("{name}: witness map is not an isomorphism"))?;
            let aut = g.automorphism_group(64).unwrap().elements();
            let mut sorted_t = t.clone();
            sorted_t.sort_unstable();
            ensure(aut.iter().all(|a| a.image_set(&s) != sorted_t), format!("{name}: T is an automorphic image of S"))?;
            parts.push(format!("{name}=non-DCI (S={s:?}, T={t:?})"));
        } else {
            parts.push(format!("{name}=DCI"));
        }
    }
    Ok(parts.join(" "))
}

fn six_three_pcp() -> Pcp {
    let g = grp("C6xC6");
    let subs = [[1, 0], [0, 1], [1, 1]].iter().map(|c| g.generated(&[g.elem(c)])).collect();
    Pcp::new(&g, subs).unwrap()
}

fn c8_net_srg() -> Check {
    let net = build_net(&six_three_pcp()).map_err(|e| e.to_string())?;
    let srg = net.srg_check().map_err(|e| e.to_string())?;
    let params = (srg.v, srg.degree, srg.lambda, srg.mu);
    ensure(params == (36, 15, 6, 6), format!("parameters {params:?}"))?;
    ensure(srg.matches_formula == Some(true), "formula mismatch")?;
    // A^2 = 9I + 6J by direct multiplication
    let a = net.collinearity_graph().map_err(|e| e.to_string())?;
    for x in 0..36 {
        for y in 0..36 {
            let sq = (0..36).filter(|&z| a.adjacent(x, z) && a.adjacent(z, y)).count();
            let expected = 6 + if x == y { 9 } else { 0 };
            ensure(sq == expected, format!("A^2[{x}][{y}] = {sq}"))?;
        }
    }
    let cliques = net.line_clique_check().map_err(|e| e.to_string())?;
    ensure(cliques.n_cliques == 18 && cliques.max_clique == 6 && cliques.all_lines, "clique check")?;
    Ok("SRG(36,15,6,6), A^2 = 9I + 6J, 18 six-cliques, all lines".into())
}

fn c9_rational_oracles() -> Check {
    let (p, q) = (3u64, 5u64);
    let ctx = RatContext::new(p, q).map_err(|e| e.to_string())?;
    let g = ctx.group();
    let mut parts = Vec::new();
    for which in [Corner::M1, Corner::M2, Corner::M3, Corner::M4, Corner::M5, Corner::M6] {
        let r = analyze_matrix(which, p, q).map_err(|e| e.to_string())?;
        ensure(r.formula_checks.iter().all(|(_, ok)| *ok), format!("{which:?}: formula check failed"))?;
        match (which, &r.verdict) {
            (Corner::M2 | Corner::M5, MatrixVerdict::CoefficientClash { h, h_prime, c_h, c_h_prime, gap, .. }) => {
                let parts_m = matrix_to_partition(&ctx, &which.matrix(p, q)).map_err(|e| e.to_string())?;
                let y = &parts_m[2];
                let (a, b) = (convolution_coefficient(g, y, *h), convolution_coefficient(g, y, *h_prime));
                let expected = if which == Corner::M2 { (q - p) * (p * q - 2) } else { (q - p) * p * q } as i64;
                ensure(
                    parts_m[2..].iter().any(|c| c.contains(h) && c.contains(h_prime)),
                    "h and h' in different classes",
                )?;
                ensure(
                    (a, b) == (*c_h, *c_h_prime) && a - b == *gap && *gap == expected,
                    format!("{which:?}: gap {gap}"),
                )?;
                parts.push(format!("{which:?} gap={gap}"));
            }
            (
                Corner::M1 | Corner::M3 | Corner::M4 | Corner::M6,
                MatrixVerdict::NontrivialRadical { set, radical, .. },
            ) => {
                let rad = naive_radical(g, set);
                ensure(rad == *radical && rad.len() > 1 && rad.len() < g.order(), format!("{which:?}: radical"))?;
                parts.push(format!("{which:?} |rad|={}", rad.len()));
            }
            (_, v) => return Err(format!("{which:?}: unexpected verdict {v:?}")),
        }
    }
    Ok(parts.join(" "))
}

fn c10_rational_search() -> Check {
    let (p, q) = (3u64, 5u64);
    let report = primitive_rational_search(p, q).map_err(|e| e.to_string())?;
    let g = RatContext::new(p, q).unwrap().group().clone();
    for s in &report.survivors {
        ensure(s.rank >= 3, format!("{}: rank {}", s.matrix, s.rank))?;
        let hs = s.pcp_basic_set.as_ref().ok_or(format!("{}: no basic set H_1# u ... u H_m#", s.matrix))?;
        let mut union: BTreeSet<Elem> = BTreeSet::new();
        for (i, h) in hs.iter().enumerate() {
            ensure(h.len() == 15 && g.subgroup_from_members(h).is_some(), "not a subgroup of order 15")?;
            for other in &hs[i + 1..] {
                ensure(h.iter().filter(|x| other.contains(x)).count() == 1, "subgroups meet non-trivially")?;
            }
            union.extend(h.iter().copied().filter(|&x| x != 0));
        }
        let union: Vec<Elem> = union.into_iter().collect();
        ensure(s.sring.classes().contains(&union), format!("{}: union is not a basic set", s.matrix))?;
    }
    Ok(format!("{} matrices, {} survivors, all with a PCP basic set", report.matrices, report.survivors.len()))
}

const SWEEP: [&str; 9] =
    ["LemmaSylow", "LemmaCentre", "PropMS1", "PropMS2", "PropKM2", "PropDW", "LemmaRank2", "LemmaTrivial", "PropHM"];

fn c11_lemma_sweeps() -> Check {
    let mut instances = 0;
    for id in SWEEP {
        let r = run_check(id, &Scope::default()).map_err(|e| e.to_string())?;
        ensure(r.failed == 0, format!("{id}: {} failures", r.failed))?;
        instances += r.instances;
    }
    Ok(format!("{} statements, {instances} instances, 0 failures", SWEEP.len()))
}

fn c12_determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let pcp = dir.path().join("pcp.json");
    std::fs::write(&pcp, six_three_pcp().to_json().to_string()).unwrap();
    let cache = dir.path().join("cache");
    let pcp = pcp.to_str().unwrap().to_string();
    let mut commands: Vec<Vec<String>> = Vec::new();
    let mut add = |s: &str| commands.push(s.split(' ').map(String::from).collect());
    for g in ["Z4", "Z5", "C2xC2", "C3xC3"] {
        add(&format!("sring enumerate --group {g}"));
    }
    add("lemma run --id LemmaMix --groups Z3,Z5,Z7");
    add("lemma run --id EqP2P --p 3");
    add("lemma run --id PropW --groups Z6,Z10,Z12,Z15");
    for g in ["Z6", "Z8", "Z9"] {
        add(&format!("ci scan --group {g}"));
    }
    add("ci check --group Z8 --set 1,2,5");
    add(&format!("net verify --pcp {pcp}"));
    add("net search --group C6xC6 --k 3");
    for m in ["M1", "M2", "M3", "M4", "M5", "M6"] {
        add(&format!("rat analyze --p 3 --q 5 --matrix {m}"));
    }
    add("rat search --p 3 --q 5");
    for id in SWEEP {
        add(&format!("lemma run --id {id}"));
    }
    let run = |extra: &[&str], cmd: &[String]| {
        let mut args: Vec<String> = vec!["schurlab".into()];
        args.extend(extra.iter().map(|s| s.to_string()));
        args.extend(cmd.iter().cloned());
        dispatch(args)
    };
    let cache_arg = cache.to_str().unwrap();
    for cmd in &commands {
        let first = run(&["--no-cache"], cmd);
        ensure(first.code == 0, format!("`{}` exited with {}: {}", cmd.join(" "), first.code, first.stderr))?;
        let second = run(&["--no-cache", "--jobs", "2"], cmd);
        let cold = run(&["--cache", cache_arg], cmd);
        let warm = run(&["--cache", cache_arg], cmd);
        for other in [&second, &cold, &warm] {
            ensure(other.stdout.as_bytes() == first.stdout.as_bytes(), format!("`{}` output differs", cmd.join(" ")))?;
        }
    }
    Ok(format!("{} commands, byte-identical across reruns, thread counts and cache hits", commands.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, &str, u64, fn() -> Check); 12] = [
        ("1", "S-ring enumeration counts", 3, c1_enumeration_counts),
        ("2", "S-rings over Z_p are cyclotomic", 5, c2_prime_cyclic_cyclotomic),
        ("3", "two p-S-rings over C_3^2", 10, c3_two_p_srings),
        ("4", "primitive S-rings over Z_6, Z_10, Z_12, Z_15 have rank 2", 60, c4_prop_w_sweep),
        ("5", "rank of the trace S-ring", 1, c5_trace_rank),
        ("6", "Babai criterion agrees with brute force", 600, c6_babai_equivalence),
        ("7", "DCI scans of Z_6, Z_8, Z_9", 600, c7_dci_scans),
        ("8", "(6,3)-net strongly regular with 18 line cliques", 30, c8_net_srg),
        ("9", "corner matrices at (3,5)", 30, c9_rational_oracles),
        ("10", "primitive rational search at (3,5)", 300, c10_rational_search),
        ("11", "lemma sweeps over default scopes", 600, c11_lemma_sweeps),
        ("12", "determinism of CLI output", 1800, c12_determinism),
    ];
    let mut stderr = std::io::stderr();
    let mut failed = Vec::new();
    for (id, name, budget, f) in criteria {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(budget);
        let (status, detail) = match (&result, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over the {budget}s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed.push(id);
        }
        // written to the raw handle so the lines survive output capture
        if id == "1" {
            writeln!(stderr).unwrap();
        }
        writeln!(stderr, "[{status}] criterion {id:>2}: {name} ({:.2}s of {budget}s): {detail}", elapsed.as_secs_f64())
            .unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
